"""Builder strategies.

All four winning constructions share one shape: grow a chain of star
centres over a shrinking focus set, keeping per-step colour bookkeeping,
then (if no early win appeared) fill a small complete graph on what is
left.  The biclique builder instead plays two complete bipartite blocks
and extracts its win with the dense-subgraph lemma, claiming the final
copy explicitly.

Budgets are never computed here; every strategy declares the matching
``bounds.budget_*`` value so the two can't drift apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .bounds import (DEFAULT_PARAMS, BoundParams, RamseyOracle,
                     bipartite_sizes, budget_main, budget_specifics,
                     load_default_table, verify_bipartite_chain)
from .engine import ClaimWin, DrawEdge, EngineError, GameBoard, Infeasible
from .kst import KstInstance, extract_krs

__all__ = [
    "ParameterInfeasibleError",
    "ChaseBuilder",
    "AdaptiveBuilder",
    "MulticolorChaseBuilder",
    "BipartiteBuilder",
    "PreconditionCheck",
    "ADAPTIVE_PRESETS",
]


class ParameterInfeasibleError(ValueError):
    """Parameters demand a board larger than the configured cap."""

    def __init__(self, required_n: int, required_p: int, cap: int):
        super().__init__(
            "requires an initial focus set of %d vertices (fill size %d), "
            "above the cap of %d" % (required_n, required_p, cap))
        self.required_n = required_n
        self.required_p = required_p
        self.cap = cap


def _default_oracle() -> RamseyOracle:
    return RamseyOracle(load_default_table())


# fractions for the small-t adaptive presets; the asymptotic constants
# (1/100, 99/100, 1/100) only appear as verify_main_chain defaults, where
# budgets are evaluated without running a game
ADAPTIVE_PRESETS: dict[int, tuple[Fraction, Fraction, Fraction]] = {
    2: (Fraction(1, 2), Fraction(3, 4), Fraction(1, 2)),
    3: (Fraction(1, 4), Fraction(1, 2), Fraction(1, 3)),
    4: (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)),
}


# ======================================================================
# Star-chain machinery shared by the clique builders
# ======================================================================


class _StarChainBuilder:
    """Chain of stars over a shrinking focus set, then a residual fill.

    Subclasses define the follow rule (which colour's repliers to keep)
    and the stop rule.  The engine's exact win check ends matches early;
    exhausting the fill without a win means a broken oracle value and
    raises rather than passing silently.
    """

    q: int
    ident: str
    declared_budget: int | None

    def __init__(self, q: int, n: int, m_cap: int, p: int):
        self.q = q
        self._n = n
        self._m_cap = m_cap
        self._p = p
        self._stage = "star"
        self._step = 1
        self._V: tuple[int, ...] = tuple(range(n))
        self._centre = 0
        self._j = 1
        self._history: tuple[int, ...] = ()
        self._sizes: tuple[int, ...] = (n,)
        self._fill_pairs: tuple[tuple[int, int], ...] = ()
        self._fj = 0
        self.debug_log: list[dict] = []
        self._last_note = "opening"

    # --- subclass hooks -------------------------------------------------
    def _follow(self, counts: list[int], star_size: int) -> tuple[int, str]:
        """Colour whose repliers become the next focus set, plus a branch tag."""
        raise NotImplementedError

    def _stop_now(self) -> str | None:
        """Non-None (a reason tag) once the chain should move to the fill."""
        raise NotImplementedError

    # --- chain mechanics --------------------------------------------------
    def _finish_star(self, board: GameBoard) -> None:
        star_size = len(self._V) - 1
        replies = board.edges[-star_size:]
        counts = [0] * (self.q + 1)
        for _u, _v, c in replies:
            counts[c] += 1
        followed, branch = self._follow(counts, star_size)
        v_next = tuple(v for (_u, _w, c), v in zip(replies, self._V[1:])
                       if c == followed)
        self._history += (followed,)
        self._sizes += (len(v_next),)
        self.debug_log.append({
            "step": self._step, "centre": self._centre,
            "counts": counts[1:], "followed": followed, "branch": branch,
            "focus_size": len(v_next)})
        self._step += 1
        self._V = v_next
        reason = self._stop_now()
        if reason is not None:
            self._enter_fill(reason)
        elif len(self._V) < 2:
            raise EngineError(
                "focus set collapsed to %d vertices before the stop rule; "
                "initial size %d is too small" % (len(self._V), self._n))
        else:
            self._centre = self._V[0]
            self._j = 1

    def _enter_fill(self, reason: str) -> None:
        if len(self._V) < self._p:
            raise EngineError(
                "stop rule fired with %d focus vertices but the fill needs %d"
                % (len(self._V), self._p))
        self._stage = "fill"
        self._fill_set = self._V[: self._p]
        self._fill_pairs = tuple(combinations(self._fill_set, 2))
        self._fj = 0
        self._stop_reason = reason
        self.debug_log.append({"stop": reason, "fill_on": self._fill_set})

    def next_move(self, board: GameBoard) -> DrawEdge | ClaimWin | Infeasible:
        while True:
            if self._stage == "star":
                if self._j == len(self._V):
                    self._finish_star(board)
                    continue
                u, v = self._centre, self._V[self._j]
                self._j += 1
                self._last_note = ("chain step %d: spoke %d/%d from centre %d"
                                   % (self._step, self._j - 1, len(self._V) - 1, u))
                return DrawEdge(u, v)
            if self._stage == "fill":
                if self._fj == len(self._fill_pairs):
                    raise EngineError(
                        "residual fill on %d vertices exhausted without a win; "
                        "an oracle table value must be below the true Ramsey "
                        "number" % self._p)
                a, b = self._fill_pairs[self._fj]
                self._fj += 1
                self._last_note = ("fill edge %d/%d on the residual K_%d"
                                   % (self._fj, len(self._fill_pairs), self._p))
                return DrawEdge(a, b)
            raise EngineError("builder in unexpected stage %r" % self._stage)

    def rationale(self) -> str:
        return self._last_note

    # --- exhaustive-search support ---------------------------------------
    def snapshot(self):
        return (self._stage, self._step, self._V, self._centre, self._j,
                self._history, self._sizes, self._fill_pairs, self._fj,
                len(self.debug_log), self._last_note)

    def restore(self, snap) -> None:
        (self._stage, self._step, self._V, self._centre, self._j,
         self._history, self._sizes, self._fill_pairs, self._fj,
         dlen, self._last_note) = snap
        del self.debug_log[dlen:]

    def dedup_signature(self, board: GameBoard):
        """Hashable key determining the whole continuation subtree.

        Sound because (a) focus-set members are interchangeable — the win
        condition after any reply depends only on how many earlier chain
        letters match the reply colour — and (b) the fill's structure is
        captured verbatim by its reply colour sequence.
        """
        if self._stage == "star":
            got = self._j - 1
            counts = [0] * (self.q + 1)
            if got:
                for _u, _v, c in board.edges[-got:]:
                    counts[c] += 1
            return ("star", self._step, len(self._V), self._j,
                    self._history, tuple(counts[1:]))
        fill_replies = tuple(c for _u, _v, c in board.edges[-self._fj:]) \
            if self._fj else ()
        return ("fill", self._history, self._fj, fill_replies)


class ChaseBuilder(_StarChainBuilder):
    """Majority chase forcing a two-colour mono K_t.

    Each star keeps the majority-colour repliers; after m = ceil(3t/2)
    steps some colour has enough chain letters that a small residual
    complete graph finishes the job.
    """

    def __init__(self, t: int, oracle: RamseyOracle | None = None):
        if t < 2:
            raise ValueError("need t >= 2")
        oracle = oracle or _default_oracle()
        self.t = t
        self.budget = budget_specifics(t, oracle)
        super().__init__(q=2, n=self.budget.n, m_cap=self.budget.m,
                         p=self.budget.p)
        self.ident = "chase:t=%d" % t
        self.declared_budget = self.budget.total

    def _follow(self, counts: list[int], star_size: int) -> tuple[int, str]:
        followed = max(range(1, self.q + 1), key=lambda c: (counts[c], -c))
        if counts[followed] * self.q < star_size:
            raise EngineError("majority reply count below star_size/q")
        return followed, "majority"

    def _stop_now(self) -> str | None:
        return "chain-complete" if self._step > self._m_cap else None


class AdaptiveBuilder(_StarChainBuilder):
    """String-following chase with retention parameter alpha.

    The string s records followed colours.  With a strict string majority,
    the majority colour is followed exactly when its reply count reaches
    (1-alpha)(|V|-1); otherwise the other colour is followed.  Tied strings
    follow the larger reply side.  The chain stops once one letter appears
    ceil(mu t) times or both letters appear ceil(nu t) times.
    """

    def __init__(self, t: int, alpha, mu, nu,
                 oracle: RamseyOracle | None = None,
                 vertex_cap: int = 200_000):
        if t < 2:
            raise ValueError("need t >= 2")
        oracle = oracle or _default_oracle()
        self.t = t
        self.budget = budget_main(t, alpha, mu, nu, oracle)
        self.alpha, self.mu, self.nu = (self.budget.alpha, self.budget.mu,
                                        self.budget.nu)
        self.cmu = math.ceil(self.mu * t)
        self.cnu = math.ceil(self.nu * t)
        if self.budget.n > vertex_cap:
            raise ParameterInfeasibleError(self.budget.n, self.budget.p,
                                           vertex_cap)
        super().__init__(q=2, n=self.budget.n, m_cap=self.budget.m,
                         p=self.budget.p)
        self.ident = "adaptive:t=%d,alpha=%s,mu=%s,nu=%s" % (
            t, self.alpha, self.mu, self.nu)
        self.declared_budget = self.budget.total

    def _follow(self, counts: list[int], star_size: int) -> tuple[int, str]:
        r_cnt = sum(1 for x in self._history if x == 1)
        b_cnt = len(self._history) - r_cnt
        if r_cnt == b_cnt:
            followed = max((1, 2), key=lambda c: (counts[c], -c))
            return followed, "tie-larger-neighbourhood"
        maj = 1 if r_cnt > b_cnt else 2
        threshold = (1 - self.alpha) * star_size
        if counts[maj] >= threshold:
            return maj, "majority-retained"
        other = 3 - maj
        return other, "minority-switch"

    def _stop_now(self) -> str | None:
        r_cnt = sum(1 for x in self._history if x == 1)
        b_cnt = len(self._history) - r_cnt
        if max(r_cnt, b_cnt) >= self.cmu:
            return "mu-stop"
        if min(r_cnt, b_cnt) >= self.cnu:
            return "nu-stop"
        if self._step > self._m_cap:
            raise EngineError("chain exceeded its maximum length without "
                              "triggering the stop rule")
        return None


class MulticolorChaseBuilder(_StarChainBuilder):
    """q-colour majority chase for mono K_t.

    Majority retention loses only a factor q per step.  The chain is
    capped at q(t-2)+1 steps — by then some colour has t-1 chain letters,
    which together with any surviving focus vertex is already a mono K_t —
    so longer configured chain lengths only ever shrink to this horizon.
    """

    def __init__(self, q: int, t: int, oracle: RamseyOracle | None = None,
                 max_steps: int | None = None):
        if q < 2 or t < 2:
            raise ValueError("need q >= 2 and t >= 2")
        oracle = oracle or _default_oracle()
        self.t = t
        if max_steps is None:
            max_steps = math.ceil(q * t * (q - 1) / q)
        forced_horizon = q * (t - 2) + 1
        chain_cap = min(max_steps, forced_horizon)
        p = _residual_fill_size(q, t, chain_cap, oracle)
        n = q ** chain_cap * p
        super().__init__(q=q, n=n, m_cap=chain_cap, p=p)
        self.ident = "mchase:q=%d,t=%d" % (q, t)
        self.declared_budget = chain_cap * n + p * (p - 1) // 2

    def _follow(self, counts: list[int], star_size: int) -> tuple[int, str]:
        followed = max(range(1, self.q + 1), key=lambda c: (counts[c], -c))
        if counts[followed] * self.q < star_size:
            raise EngineError("majority reply count below star_size/q")
        return followed, "majority"

    def _stop_now(self) -> str | None:
        return "chain-complete" if self._step > self._m_cap else None


def _residual_fill_size(q: int, t: int, chain_cap: int,
                        oracle: RamseyOracle) -> int:
    """Worst oracle bound over letter-count tuples that reach the fill.

    A tuple reaches the fill only if no colour hit t-1 letters (the chain
    would already have produced the clique), so parts are capped at t-2.
    """
    best = 1

    def rec(remaining: int, parts: list[int], max_part: int) -> None:
        nonlocal best
        if len(parts) == q - 1:
            last = remaining
            if 0 <= last <= max_part:
                tup = parts + [last]
                vals = tuple(t - a for a in tup)
                best = max(best, oracle.lookup(*vals)[0])
            return
        lo = 0
        for a in range(min(remaining, max_part), lo - 1, -1):
            rec(remaining - a, parts + [a], a)

    if chain_cap <= q * (t - 2):
        rec(chain_cap, [], t - 2)
    return best


# ======================================================================
# Bipartite (biclique) builder
# ======================================================================


@dataclass(frozen=True)
class PreconditionCheck:
    name: str
    holds: bool
    kind: str  # "threshold" (gates the run) or "chain" (advisory, asymptotic)
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "kind": self.kind,
                "detail": self.detail}


class BipartiteBuilder:
    """Two complete bipartite blocks force a mono K_{t,t} in q colours.

    Phase 1 draws M x N and extracts, in the densest colour, s1 = 3qt^2
    vertices of M sharing r1 = t - 2 ceil(log_q t) common neighbours in N.
    Phase 2 draws those s1 vertices against a fresh N'.  Whichever side of
    the density threshold 1/q - eps the same colour lands on, one more
    extraction yields an explicit mono K_{t,t}, claimed to the engine with
    its embedding.  All thresholds are checked exactly up front; a failed
    check is reported, never ignored.
    """

    def __init__(self, q: int, t: int, seed: int = 0,
                 params: BoundParams = DEFAULT_PARAMS):
        if q < 2 or t < 2:
            raise ValueError("need q >= 2 and t >= 2")
        self.q = q
        self.t = t
        self.seed = seed
        self.ident = "bipartite:q=%d,t=%d" % (q, t)
        self.sizes = bipartite_sizes(q, t, params) if t >= q else None
        self._params = params
        self._checks = self._compute_checks()
        self._failed = tuple(c.name for c in self._checks
                             if c.kind == "threshold" and not c.holds)
        self.declared_budget = (math.ceil(self.sizes.budget)
                                if self.sizes is not None else 0)
        self._stage = "phase1" if not self._failed else "infeasible"
        self._cursor = 0
        self._last_note = "opening"
        # board vertices are allotted lazily in drawing order, so the fixed
        # internal layout below never collides with the fresh-vertex rule
        self._board_of: dict[int, int] = {}
        # populated at phase transitions
        self._cstar: int | None = None
        self._n_common: tuple[int, ...] = ()
        self._m_prime: tuple[int, ...] = ()

    # --- preconditions ----------------------------------------------------
    def _compute_checks(self) -> tuple[PreconditionCheck, ...]:
        q, t = self.q, self.t
        checks: list[PreconditionCheck] = []

        def add(name: str, holds: bool, lhs, rhs) -> None:
            checks.append(PreconditionCheck(
                name, bool(holds), "threshold",
                "lhs=%s rhs=%s" % (lhs, rhs)))

        if self.sizes is None:
            add("t >= q (log_q t >= 1)", False, t, q)
            return tuple(checks)
        z = self.sizes
        eps = z.eps
        add("t - 2 ceil(log_q t) >= 1", z.r1 >= 1, z.r1, 1)
        add("eps > 0", eps > 0, eps, 0)
        if z.r1 >= 1 and eps > 0:
            add("|N| >= 2 q r1^2", z.n_size >= 2 * q * z.r1 ** 2,
                z.n_size, 2 * q * z.r1 ** 2)
            add("|M| >= 2 q^r1 s1", z.m_size >= 2 * q ** z.r1 * z.s1,
                z.m_size, 2 * q ** z.r1 * z.s1)
            lo = Fraction(1, q) - eps
            hi = Fraction(1, q) + eps / (q - 1)
            add("|M'| >= 2 (1/q - eps)^-1 t^2",
                z.m2_size >= 2 * (1 / lo) * t * t,
                z.m2_size, 2 * (1 / lo) * t * t)
            add("|N'| >= 2 (1/q - eps)^-t s2",
                z.n2_size >= 2 * (1 / lo) ** t * z.s2,
                z.n2_size, float(2 * (1 / lo) ** t * z.s2))
            add("|M'| >= 2 (1/q + eps/(q-1))^-1 t^2",
                z.m2_size >= 2 * (1 / hi) * t * t,
                z.m2_size, 2 * (1 / hi) * t * t)
            add("|N'| >= 2 (1/q + eps/(q-1))^-t t",
                z.n2_size >= 2 * (1 / hi) ** t * t,
                z.n2_size, float(2 * (1 / hi) ** t * t))
            phase_edges = z.m_size * z.n_size + z.m2_size * z.n2_size
            add("phase edges <= 48 q^(t+2) t^(3-1/q) log^(1/q) t",
                phase_edges <= z.budget, phase_edges, z.budget)
        # advisory: the asymptotic lemma links, reported for transparency
        try:
            report = verify_bipartite_chain(self.q, self.t, self._params)
            for link in report.links:
                checks.append(PreconditionCheck(
                    link.name, link.holds, "chain", link.note or ""))
        except Exception:
            pass  # chain diagnostics must never block the threshold report
        return tuple(checks)

    def precondition_report(self) -> tuple[PreconditionCheck, ...]:
        return self._checks

    def failed_preconditions(self) -> tuple[str, ...]:
        return self._failed

    # --- vertex layout ----------------------------------------------------
    # internally M = [0, m_size), N = [m_size, m_size+n_size), N' next block
    def _n_base(self) -> int:
        return self.sizes.m_size

    def _n2_base(self) -> int:
        return self.sizes.m_size + self.sizes.n_size

    def _emit(self, board: GameBoard, lu: int, lv: int) -> DrawEdge:
        nxt = board.n
        for w in (lu, lv):
            if w not in self._board_of:
                self._board_of[w] = nxt
                nxt += 1
        return DrawEdge(self._board_of[lu], self._board_of[lv])

    def _logical_edges(self, edges: list[tuple[int, int, int]],
                       split: int) -> list[tuple[int, int, int]]:
        """Map board edges back to (left, right, colour) with left < split."""
        inv = {b: l for l, b in self._board_of.items()}
        out = []
        for u, v, c in edges:
            a, b = inv[u], inv[v]
            out.append((a, b, c) if a < split else (b, a, c))
        return out

    # --- play ---------------------------------------------------------------
    def next_move(self, board: GameBoard) -> DrawEdge | ClaimWin | Infeasible:
        z = self.sizes
        if self._stage == "infeasible":
            self._last_note = "thresholds unsatisfied: %s" % ", ".join(self._failed)
            return Infeasible(reasons=self._failed)
        if self._stage == "phase1":
            total = z.m_size * z.n_size
            if self._cursor < total:
                k = self._cursor
                self._cursor += 1
                self._last_note = "phase-1 block edge %d/%d" % (k + 1, total)
                return self._emit(board, k // z.n_size,
                                  self._n_base() + k % z.n_size)
            self._extract_phase1(board)
            self._stage = "phase2"
            self._cursor = 0
        if self._stage == "phase2":
            total = z.m2_size * z.n2_size
            if self._cursor < total:
                k = self._cursor
                self._cursor += 1
                self._last_note = "phase-2 block edge %d/%d" % (k + 1, total)
                return self._emit(board, self._m_prime[k // z.n2_size],
                                  self._n2_base() + k % z.n2_size)
            claim = self._final_claim(board)
            self._stage = "done"
            return claim
        raise EngineError("builder already claimed its win")

    def rationale(self) -> str:
        return self._last_note

    # --- extractions --------------------------------------------------------
    def _extract_phase1(self, board: GameBoard) -> None:
        z = self.sizes
        total = z.m_size * z.n_size
        counts = [0] * (self.q + 1)
        rows = [0] * z.n_size  # per N-vertex bitmask over M, filled below
        edges = self._logical_edges(board.edges[:total], self._n_base())
        for _u, _v, c in edges:
            counts[c] += 1
        cstar = max(range(1, self.q + 1), key=lambda c: (counts[c], -c))
        for u, v, c in edges:
            if c == cstar:
                rows[v - self._n_base()] |= 1 << u
        inst = KstInstance(m=z.n_size, n=z.m_size, epsilon=Fraction(1, self.q),
                           r=z.r1, s=z.s1, adj=tuple(rows))
        if not inst.meets_thresholds():
            raise EngineError("phase-1 extraction thresholds violated at "
                              "runtime despite the precondition check")
        res = extract_krs(inst, seed=self.seed)
        self._cstar = cstar
        self._n_common = tuple(self._n_base() + a for a in res.a_set)
        self._m_prime = res.b_set  # internal indices into M
        self._last_note = ("phase-1 extraction: colour %d, %d common "
                           "neighbours over %d block vertices"
                           % (cstar, z.r1, z.s1))

    def _final_claim(self, board: GameBoard) -> ClaimWin:
        z = self.sizes
        q, t = self.q, self.t
        total = z.m2_size * z.n2_size
        edges = self._logical_edges(board.edges[-total:], self._n2_base())
        counts = [0] * (q + 1)
        for _u, _v, c in edges:
            counts[c] += 1
        eps = z.eps
        dens_star = Fraction(counts[self._cstar], total)
        m_index = {u: i for i, u in enumerate(self._m_prime)}
        if dens_star >= Fraction(1, q) - eps:
            colour = self._cstar
            eps2 = Fraction(1, q) - eps
            r2, s2 = t, z.s2
        else:
            rest = [(counts[c], -c) for c in range(1, q + 1) if c != self._cstar]
            colour = -max(rest)[1]
            eps2 = Fraction(1, q) + eps / (q - 1)
            r2, s2 = t, t
            if Fraction(counts[colour], total) < eps2:
                raise EngineError("no colour reaches either density branch — "
                                  "pigeonhole violated, arithmetic bug")
        rows = [0] * z.m2_size  # per M'-vertex bitmask over N'
        for u, v, c in edges:
            if c == colour:
                rows[m_index[u]] |= 1 << (v - self._n2_base())
        inst = KstInstance(m=z.m2_size, n=z.n2_size, epsilon=eps2,
                           r=r2, s=s2, adj=tuple(rows))
        if not inst.meets_thresholds():
            raise EngineError("phase-2 extraction thresholds violated at "
                              "runtime despite the precondition check")
        res = extract_krs(inst, seed=self.seed + 1)
        left = tuple(self._m_prime[i] for i in res.a_set)
        if colour == self._cstar:
            right = self._n_common + tuple(self._n2_base() + b
                                           for b in res.b_set)
            self._last_note = ("claim: dense branch, colour %d, right side = "
                               "%d phase-1 + %d phase-2 vertices"
                               % (colour, len(self._n_common), z.s2))
        else:
            right = tuple(self._n2_base() + b for b in res.b_set)
            self._last_note = ("claim: sparse branch, colour %d, full "
                               "biclique inside phase 2" % colour)
        if len(right) != t or len(left) != t:
            raise EngineError("claim assembly produced wrong side sizes")
        embedding = {i: self._board_of[left[i]] for i in range(t)}
        embedding.update({t + j: self._board_of[right[j]] for j in range(t)})
        return ClaimWin(color=colour, embedding=embedding)
