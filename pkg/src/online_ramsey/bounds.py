"""Ramsey-number upper bounds, strategy edge budgets, and inequality chains.

Everything that can be exact is exact: binomial and multinomial bounds are
big integers, strategy budgets are computed with integer/rational arithmetic
(ceilings applied to every count), and density thresholds are rationals.
The inequality chains behind the asymptotic budget claims are re-verified
numerically in the log2 domain at 50-digit working precision; a link counts
as holding only with margin above ``1e-12``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import comb, factorial

import mpmath

__all__ = [
    "BoundParams",
    "BoundDomainError",
    "es_bound",
    "multinomial_bound",
    "diagonal_bound_log2",
    "RamseyOracle",
    "load_default_table",
    "SpecificsBudget",
    "budget_specifics",
    "MainBudget",
    "budget_main",
    "BipartiteSizes",
    "bipartite_sizes",
    "budget_bipartite",
    "Link",
    "BoundReport",
    "verify_main_chain",
    "verify_specifics_chain",
    "verify_bipartite_chain",
]


class BoundDomainError(ValueError):
    pass


@dataclass(frozen=True)
class BoundParams:
    """Numeric policy: diagonal-improvement constant, precision, margin."""

    c_diag: Fraction = Fraction(0)
    dps: int = 50
    log_margin: float = 1e-12


DEFAULT_PARAMS = BoundParams()


def _frac(x) -> Fraction:
    """Exact rational from int/Fraction/str; floats go through repr."""
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# ======================================================================
# Closed-form upper bounds
# ======================================================================


def es_bound(k: int, l: int, classical: bool = False) -> int:
    """Binomial two-colour bound: C(k+l, k), or C(k+l-2, k-1) in classical mode.

    One colour needing a single vertex (or fewer) makes the bound trivially 1.
    """
    if k <= 1 or l <= 1:
        return 1
    if classical:
        return comb(k + l - 2, k - 1)
    return comb(k + l, k)


def multinomial_bound(ks: tuple[int, ...] | list[int]) -> int:
    """Multicolour analogue: (sum ks)! / prod(ks!); trivial below 1."""
    ks = tuple(ks)
    if any(k < 1 for k in ks) or len(ks) == 0:
        return 1
    total = factorial(sum(ks))
    for k in ks:
        total //= factorial(k)
    return total


def diagonal_bound_log2(k: int, l: int, c: Fraction | int | float | str = 0,
                        params: BoundParams = DEFAULT_PARAMS) -> mpmath.mpf:
    """log2 of the near-diagonal refinement k^(-c ln k / ln ln k) * C(k+l, k).

    Only defined on the near-diagonal band l/2 <= k <= 2l (and k >= 3 so the
    iterated logarithm is positive).  With c = 0 it is just log2 C(k+l, k).
    """
    if not (2 * k >= l and k <= 2 * l):
        raise BoundDomainError("diagonal bound needs l/2 <= k <= 2l, got (%d, %d)" % (k, l))
    if k < 3:
        raise BoundDomainError("diagonal bound needs k >= 3")
    cf = _frac(c)
    with mpmath.workdps(params.dps):
        lb = _log2_binom(k + l, k)
        if cf == 0:
            return lb
        lnk = mpmath.log(k)
        penalty = mpmath.mpf(cf.numerator) / cf.denominator \
            * lnk * lnk / (mpmath.log(lnk) * mpmath.log(2))
        return lb - penalty


def _log2_binom(n: int, k: int) -> mpmath.mpf:
    return (mpmath.loggamma(n + 1) - mpmath.loggamma(k + 1)
            - mpmath.loggamma(n - k + 1)) / mpmath.log(2)


# ======================================================================
# Ramsey number oracle
# ======================================================================


def load_default_table() -> dict[tuple[int, ...], tuple[int, str]]:
    raw = json.loads(resources.files("online_ramsey.data")
                     .joinpath("ramsey_table.json").read_text())
    table: dict[tuple[int, ...], tuple[int, str]] = {}
    for key, ent in raw.items():
        ks = tuple(sorted(int(x) for x in key.split(",")))
        table[ks] = (int(ent["value"]), str(ent["status"]))
    return table


class RamseyOracle:
    """Best available integer upper bound on r(k1, ..., kq).

    Resolution order: trivial cases, the table of exactly known small
    values, then the classical binomial/multinomial formula (optionally
    sharpened by the near-diagonal factor when ``params.c_diag > 0``).
    ``lookup`` also reports which route produced the value.
    """

    def __init__(self, table: dict[tuple[int, ...], tuple[int, str]] | None = None,
                 params: BoundParams = DEFAULT_PARAMS, use_table: bool = True):
        if table is None and use_table:
            table = load_default_table()
        self.table = table or {}
        self.params = params
        self.use_table = use_table

    def lookup(self, *ks: int) -> tuple[int, str]:
        if len(ks) == 1:
            ks = (ks[0], ks[0])
        if len(ks) < 2:
            raise ValueError("need at least one clique size")
        key = tuple(sorted(ks))
        if any(k <= 1 for k in key):
            return 1, "trivial"
        if len(key) == 2 and key[0] == 2:
            return key[1], "trivial"
        if self.use_table and key in self.table:
            value, status = self.table[key]
            return value, "table:%s" % status
        if len(key) == 2:
            k, l = key
            value = es_bound(k, l, classical=True)
            if self.params.c_diag > 0 and 2 * k >= l and k <= 2 * l and k >= 3:
                with mpmath.workdps(self.params.dps):
                    sharp = diagonal_bound_log2(k, l, self.params.c_diag, self.params)
                    cand = int(mpmath.ceil(mpmath.power(2, sharp)))
                value = min(value, cand)
            return value, "formula"
        return multinomial_bound(key), "formula"

    def __call__(self, *ks: int) -> int:
        return self.lookup(*ks)[0]


# ======================================================================
# Strategy edge budgets
# ======================================================================


@dataclass(frozen=True)
class SpecificsBudget:
    """Clique-chase budget pieces: fill size p, star width n, chain length m."""

    t: int
    p: int
    n: int
    m: int
    total: int
    loose_total: int  # coarser chain form t * 2^(m+1) * p + C(p, 2)

    def as_dict(self) -> dict:
        return {"t": self.t, "p": self.p, "n": self.n, "m": self.m,
                "total": self.total, "loose_total": self.loose_total}


def budget_specifics(t: int, oracle: RamseyOracle | None = None) -> SpecificsBudget:
    """Worst-case edge budget of the two-colour clique chase at K_t.

    m = ceil(3t/2) chain steps, a star of width n = 2^m * p per step, and a
    final complete fill on p vertices, where p covers every residual pair
    r(t-a, t-b) over chain-colour splits a + b = m (sub-trivial residuals
    count 1).  Total is m*n + C(p, 2).
    """
    if t < 2:
        raise BoundDomainError("chase needs t >= 2")
    oracle = oracle or RamseyOracle()
    m = (3 * t + 1) // 2
    p = 1
    for a in range(m + 1):
        b = m - a
        ka, kb = t - a, t - b
        if ka <= 1 or kb <= 1:
            val = 1
        else:
            val = oracle(ka, kb)
        p = max(p, val)
    n = (1 << m) * p
    total = m * n + p * (p - 1) // 2
    loose = t * (1 << (m + 1)) * p + p * (p - 1) // 2
    return SpecificsBudget(t=t, p=p, n=n, m=m, total=total, loose_total=loose)


@dataclass(frozen=True)
class MainBudget:
    """Adaptive-chase budget pieces for parameters (alpha, mu, nu)."""

    t: int
    alpha: Fraction
    mu: Fraction
    nu: Fraction
    p: int
    n: int
    m: int
    total: int

    def as_dict(self) -> dict:
        return {"t": self.t, "alpha": str(self.alpha), "mu": str(self.mu),
                "nu": str(self.nu), "p": self.p, "n": self.n, "m": self.m,
                "total": self.total,
                "total_log2": math.log2(self.total) if self.total > 0 else 0.0}


def budget_main(t: int, alpha, mu, nu, oracle: RamseyOracle | None = None) -> MainBudget:
    """Worst-case edge budget of the adaptive chase.

    Stop counts are ceil(mu*t) / ceil(nu*t); the final fill covers
    p = max(r(ceil((1-mu) t), t), r(ceil((1-nu) t))); the star width is
    n = ceil((2/alpha)^ceil(nu t) * (1-alpha)^-ceil(mu t)) * p, all exact.
    """
    if t < 2:
        raise BoundDomainError("adaptive chase needs t >= 2")
    alpha, mu, nu = _frac(alpha), _frac(mu), _frac(nu)
    if not (0 < alpha < 1):
        raise BoundDomainError("need 0 < alpha < 1")
    if not (0 < nu <= mu < 1):
        raise BoundDomainError("need 0 < nu <= mu < 1")
    oracle = oracle or RamseyOracle()
    cmu = _ceil_frac(mu * t)
    cnu = _ceil_frac(nu * t)
    k_mu = _ceil_frac((1 - mu) * t)
    k_nu = _ceil_frac((1 - nu) * t)
    p = max(oracle(k_mu, t), oracle(k_nu, k_nu))
    base = (2 / alpha) ** cnu * (1 - alpha) ** (-cmu)
    n = _ceil_frac(base) * p
    m = max(1, cmu + cnu - 1)
    total = m * n + p * (p - 1) // 2
    return MainBudget(t=t, alpha=alpha, mu=mu, nu=nu, p=p, n=n, m=m, total=total)


@dataclass(frozen=True)
class BipartiteSizes:
    """All derived quantities of the q-colour biclique builder at K_{t,t}."""

    q: int
    t: int
    m_size: int        # first block, drawn complete against n_size
    n_size: int
    r1: int            # first extraction: joint-neighbour count in N
    s1: int            # first extraction: block size in M (equals m2_size)
    n2_size: int       # second block
    m2_size: int
    s2: int            # second extraction (low-density branch) support size
    eps: Fraction      # rationalised density slack, 0 < eps <= exact value
    budget: float      # 48 q^(t+2) t^(3-1/q) log_q(t)^(1/q)
    budget_log2: float

    def as_dict(self) -> dict:
        return {"q": self.q, "t": self.t, "M": self.m_size, "N": self.n_size,
                "r1": self.r1, "s1": self.s1, "N2": self.n2_size,
                "M2": self.m2_size, "s2": self.s2,
                "eps": [self.eps.numerator, self.eps.denominator],
                "budget": self.budget, "budget_log2": self.budget_log2}


def bipartite_sizes(q: int, t: int, params: BoundParams = DEFAULT_PARAMS) -> BipartiteSizes:
    if q < 2 or t < 2:
        raise BoundDomainError("biclique builder needs q >= 2, t >= 2")
    with mpmath.workdps(params.dps):
        L = mpmath.log(t) / mpmath.log(q)
        ceil_L = int(mpmath.ceil(L))
        m_size = int(mpmath.ceil(6 * mpmath.power(q, t + 1) * L))
        n_size = 2 * q * t * t
        r1 = t - 2 * ceil_L
        s1 = 3 * q * t * t
        n2_size = int(mpmath.ceil(12 * mpmath.power(q, t)
                                  * mpmath.power(t, 1 - mpmath.mpf(1) / q)
                                  * mpmath.power(L, mpmath.mpf(1) / q)))
        s2 = 2 * ceil_L
        if L > 1 and mpmath.log(L) > 0:
            eps_exact = (q - 1) * (L - mpmath.log(L) / mpmath.log(q)) / (q * q * t)
        else:
            eps_exact = mpmath.mpf(0)
        # floor to a positive rational no larger than the exact value, so the
        # runtime dichotomy stays valid and thresholds stay exactly checkable
        eps = Fraction(int(eps_exact * 10 ** 12), 10 ** 12)
        budget_log2 = (math.log2(48) + (t + 2) * math.log2(q)
                       + (3 - 1 / q) * math.log2(t)
                       + (1 / q) * math.log2(float(L)) if L > 0 else 0.0)
        budget = float(48 * mpmath.power(q, t + 2)
                       * mpmath.power(t, 3 - mpmath.mpf(1) / q)
                       * mpmath.power(L, mpmath.mpf(1) / q)) if L > 0 else 0.0
    return BipartiteSizes(q=q, t=t, m_size=m_size, n_size=n_size, r1=r1, s1=s1,
                          n2_size=n2_size, m2_size=s1, s2=s2, eps=eps,
                          budget=budget, budget_log2=budget_log2)


def budget_bipartite(q: int, t: int, params: BoundParams = DEFAULT_PARAMS) -> float:
    """Closed-form edge budget 48 q^(t+2) t^(3-1/q) (log_q t)^(1/q)."""
    return bipartite_sizes(q, t, params).budget


# ======================================================================
# Inequality-chain verification
# ======================================================================


@dataclass(frozen=True)
class Link:
    name: str
    lhs_log2: float
    rhs_log2: float
    holds: bool
    margin: float
    note: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs_log2": self.lhs_log2,
                "rhs_log2": self.rhs_log2, "holds": self.holds,
                "margin": self.margin, "note": self.note}


@dataclass(frozen=True)
class BoundReport:
    chain: str
    params: dict
    links: tuple[Link, ...]

    @property
    def all_hold(self) -> bool:
        return all(l.holds for l in self.links)

    def link(self, name: str) -> Link:
        for l in self.links:
            if l.name == name:
                return l
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {"v": 1, "chain": self.chain, "params": self.params,
                "all_hold": self.all_hold,
                "links": [l.as_dict() for l in self.links]}

    def format_table(self) -> str:
        width = max([len(l.name) for l in self.links] + [4])
        rows = ["%-*s  %14s  %14s  %6s  %s" % (width, "link", "lhs_log2",
                                               "rhs_log2", "holds", "note")]
        for l in self.links:
            rows.append("%-*s  %14.6g  %14.6g  %6s  %s"
                        % (width, l.name, l.lhs_log2, l.rhs_log2,
                           "yes" if l.holds else "NO", l.note))
        rows.append("chain %s: %s" % (self.chain,
                                      "all links hold" if self.all_hold
                                      else "SOME LINKS FAIL"))
        return "\n".join(rows)


def _mk_link(name: str, lhs, rhs, params: BoundParams, note: str = "") -> Link:
    lhs_f, rhs_f = float(lhs), float(rhs)
    margin = rhs_f - lhs_f
    return Link(name=name, lhs_log2=lhs_f, rhs_log2=rhs_f,
                holds=margin > params.log_margin, margin=margin, note=note)


def _log2_add(a, b):
    """log2(2^a + 2^b) computed stably."""
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + mpmath.log(1 + mpmath.power(2, lo - hi)) / mpmath.log(2)


def verify_specifics_chain(t: int, params: BoundParams = DEFAULT_PARAMS) -> BoundReport:
    """Numeric links behind the clique-chase budget at K_t.

    Checks the binomial fill bound against 2^(2t-m), the off-diagonal
    product refinement, the near-diagonal comparison (with params.c_diag),
    and the final closed-form budget comparison, all in log2 domain.
    """
    if t < 2:
        raise BoundDomainError("t >= 2 required")
    c = params.c_diag
    links: list[Link] = []
    with mpmath.workdps(params.dps):
        m = (3 * t + 1) // 2
        w = 2 * t - m  # residual vertex total over any chain split
        mid = w // 2
        lb_mid = _log2_binom(w, mid) if w >= 1 else mpmath.mpf(0)
        links.append(_mk_link(
            "fill-binomial <= 2^(2t-m)", lb_mid, mpmath.mpf(w), params,
            note="max split at (%d, %d)" % (mid, w - mid)))

        # off-diagonal refinement, over splits with ka <= kb / 2
        log53 = math.log2(5.0 / 3.0)
        worst = None  # (margin, ka, kb)
        for ka in range(2, w - 1):
            kb = w - ka
            if kb < 2 or ka > kb / 2:
                continue
            lhs = math.lgamma(w + 1) - math.lgamma(ka + 1) - math.lgamma(kb + 1)
            lhs /= math.log(2)
            rhs = ka + 0.75 * kb + log53 * (kb / 4.0)
            marg = rhs - lhs
            if worst is None or marg < worst[0]:
                worst = (marg, ka, kb)
        if worst is None:
            links.append(Link("offdiag-product-estimate", 0.0, 0.0, True, float("inf"),
                              note="vacuous: no split with ka <= kb/2"))
            links.append(Link("product-estimate <= diag-refined 2^(2t-m)",
                              0.0, 0.0, True, float("inf"),
                              note="vacuous: no split with ka <= kb/2"))
        else:
            _, ka, kb = worst
            lhs = _log2_binom(w, ka)
            rhs = ka + mpmath.mpf(3) * kb / 4 + mpmath.log(mpmath.mpf(5) / 3) / mpmath.log(2) * kb / 4
            links.append(_mk_link("offdiag-product-estimate", lhs, rhs, params,
                                  note="worst split (%d, %d)" % (ka, kb)))
            diag_pen = mpmath.mpf(0)
            if c > 0:
                lnt = mpmath.log(t)
                diag_pen = mpmath.mpf(c.numerator) / c.denominator \
                    * lnt * lnt / (mpmath.log(lnt) * mpmath.log(2))
            links.append(_mk_link(
                "product-estimate <= diag-refined 2^(2t-m)",
                rhs, mpmath.mpf(w) - diag_pen, params,
                note="c_diag=%s" % (c,)))

        # final budget comparison with the generic (table-free) fill size
        p_log2 = lb_mid
        lhs_total = _log2_add(mpmath.log(t) / mpmath.log(2) + (m + 1) + p_log2,
                              2 * p_log2)
        diag_pen = mpmath.mpf(0)
        if c > 0:
            lnt = mpmath.log(t)
            diag_pen = mpmath.mpf(c.numerator) / c.denominator \
                * lnt * lnt / (mpmath.log(lnt) * mpmath.log(2))
        rhs_total = _log2_add(1 + mpmath.log(t) / mpmath.log(2) - diag_pen + 2 * t,
                              mpmath.mpf(t))
        links.append(_mk_link(
            "t 2^(m+1) p + p^2 <= 2 t^(1-o(1)) 4^t + 2^t", lhs_total, rhs_total, params))
    return BoundReport(chain="specifics", params={"t": t, "c_diag": str(c)},
                       links=tuple(links))


def verify_main_chain(t: int, alpha=Fraction(1, 100), mu=Fraction(99, 100),
                      nu=Fraction(1, 100),
                      params: BoundParams = DEFAULT_PARAMS) -> BoundReport:
    """Numeric links behind the adaptive-chase budget at K_t.

    The final comparison models the diagonal Ramsey number by its classical
    sqrt(2)^t lower bound and takes p at the 1.001^-t r(t) hypothesis point.
    """
    if t < 2:
        raise BoundDomainError("t >= 2 required")
    alpha, mu, nu = _frac(alpha), _frac(mu), _frac(nu)
    links: list[Link] = []
    with mpmath.workdps(params.dps):
        ln2 = mpmath.log(2)
        k = _ceil_frac(nu * t)
        nn = t + k
        lhs = _log2_binom(nn, k)
        rhs = k * mpmath.log(mpmath.e * nn / k) / ln2
        links.append(_mk_link("binom((1+nu)t, nu t) <= (e(1+nu)/nu)^(nu t)",
                              lhs, rhs, params))

        af = mpmath.mpf(alpha.numerator) / alpha.denominator
        nuf = mpmath.mpf(nu.numerator) / nu.denominator
        lhs = (nuf * mpmath.log(2 / af) - mpmath.log(1 - af)) / ln2
        rhs = mpmath.log(mpmath.mpf("1.066")) / ln2
        links.append(_mk_link("(2/alpha)^nu / (1-alpha) <= 1.066", lhs, rhs, params,
                              note="per-step growth constant"))

        lhs = (mpmath.log(4 * t) + t * mpmath.log(mpmath.mpf("1.066"))) / ln2
        rhs = mpmath.mpf(t) / 2
        links.append(_mk_link("4t (1.066)^t <= sqrt(2)^t", lhs, rhs, params,
                              note="uses r(t) >= sqrt(2)^t"))

        r_log2 = mpmath.mpf(t) / 2
        p_log2 = r_log2 - t * mpmath.log(mpmath.mpf("1.001")) / ln2
        lhs_total = _log2_add(r_log2 - 2 + p_log2, 2 * p_log2 - 1)
        rhs_total = -t * mpmath.log(mpmath.mpf("1.001")) / ln2 + 2 * r_log2 - 1
        links.append(_mk_link(
            "(r/4) p + p^2/2 <= 1.001^-t r^2/2  [p = 1.001^-t r, r = sqrt(2)^t]",
            lhs_total, rhs_total, params))
    return BoundReport(chain="main",
                       params={"t": t, "alpha": str(alpha), "mu": str(mu),
                               "nu": str(nu), "c_diag": str(params.c_diag)},
                       links=tuple(links))


def verify_bipartite_chain(q: int, t: int,
                           params: BoundParams = DEFAULT_PARAMS) -> BoundReport:
    """Numeric links behind the q-colour biclique budget at K_{t,t}.

    All logarithms are base q.  Includes the structural preconditions the
    builder itself checks (joint-neighbour count positive, both extraction
    thresholds in both phases) and the closed-form edge total.
    """
    sz = bipartite_sizes(q, t, params)
    links: list[Link] = []
    with mpmath.workdps(params.dps):
        lnq = mpmath.log(q)
        L = mpmath.log(t) / lnq
        eps = mpmath.mpf(sz.eps.numerator) / sz.eps.denominator
        ln2 = mpmath.log(2)

        links.append(_mk_link("t - 2 ceil(log t) >= 1", mpmath.mpf(1),
                              mpmath.mpf(sz.r1), params,
                              note="r1 = %d" % sz.r1))
        # margin rule wants strict lhs < rhs; encode ">= 1" as 1 <= r1 + tiny
        links[-1] = Link(links[-1].name, float(1), float(sz.r1),
                         sz.r1 >= 1, float(sz.r1 - 1), note="r1 = %d" % sz.r1)

        links.append(Link("eps > 0", 0.0, float(eps), sz.eps > 0,
                          float(eps), note="eps ~ %.3g" % float(eps)))

        if sz.eps > 0 and Fraction(1, q) - sz.eps > 0:
            lo = Fraction(1, q) - sz.eps
            hi = Fraction(1, q) + sz.eps / (q - 1)
            lo_m = mpmath.mpf(lo.numerator) / lo.denominator
            hi_m = mpmath.mpf(hi.numerator) / hi.denominator

            lhs = -t * mpmath.log(lo_m) / ln2
            rhs = (mpmath.log(3) + t * lnq
                   + (1 - mpmath.mpf(1) / q) * mpmath.log(t / L)) / ln2
            links.append(_mk_link(
                "(1/q - eps)^-t <= 3 q^t (t/log t)^(1-1/q)", lhs, rhs, params))

            lhs = t * mpmath.log(1 + 2 * L * L / (t * t)) / ln2
            rhs = mpmath.log(3) / ln2
            links.append(_mk_link("(1 + 2 log^2 t / t^2)^t <= 3", lhs, rhs, params,
                                  note="lhs value %.4g" % float(mpmath.power(2, lhs))))

            lhs = -t * mpmath.log(hi_m) / ln2
            rhs = (mpmath.log(3) + t * lnq
                   + mpmath.mpf(1) / q * mpmath.log(L / t)) / ln2
            links.append(_mk_link(
                "(1/q + eps/(q-1))^-t <= 3 q^t (log t/t)^(1/q)", lhs, rhs, params))

            # phase-1 extraction thresholds at density 1/q
            lhs = mpmath.log(2 * q * max(sz.r1, 1) ** 2) / ln2
            rhs = mpmath.log(sz.n_size) / ln2
            links.append(_mk_link("phase1 |N| >= 2 q r1^2", lhs, rhs, params))
            lhs = (mpmath.log(2) + max(sz.r1, 0) * lnq + mpmath.log(sz.s1)) / ln2
            rhs = mpmath.log(sz.m_size) / ln2
            links.append(_mk_link("phase1 |M| >= 2 q^r1 s1", lhs, rhs, params))

            # phase-2 thresholds, both density branches
            lhs = mpmath.log(2) / ln2 - mpmath.log(lo_m) / ln2 + 2 * mpmath.log(t) / ln2
            rhs = mpmath.log(sz.m2_size) / ln2
            links.append(_mk_link("phase2 |M'| >= 2 (1/q-eps)^-1 t^2", lhs, rhs, params))
            lhs = mpmath.log(2) / ln2 - t * mpmath.log(lo_m) / ln2 \
                + mpmath.log(max(sz.s2, 1)) / ln2
            rhs = mpmath.log(sz.n2_size) / ln2
            links.append(_mk_link("phase2 |N'| >= 2 (1/q-eps)^-t s2", lhs, rhs, params))
            lhs = mpmath.log(2) / ln2 - mpmath.log(hi_m) / ln2 + 2 * mpmath.log(t) / ln2
            rhs = mpmath.log(sz.m2_size) / ln2
            links.append(_mk_link("phase2 |M'| >= 2 (1/q+eps/(q-1))^-1 t^2",
                                  lhs, rhs, params))
            lhs = mpmath.log(2) / ln2 - t * mpmath.log(hi_m) / ln2 + mpmath.log(t) / ln2
            rhs = mpmath.log(sz.n2_size) / ln2
            links.append(_mk_link("phase2 |N'| >= 2 (1/q+eps/(q-1))^-t t",
                                  lhs, rhs, params))

        lhs = _log2_add(mpmath.log(sz.m_size) / ln2 + mpmath.log(sz.n_size) / ln2,
                        mpmath.log(sz.m2_size) / ln2 + mpmath.log(sz.n2_size) / ln2)
        rhs = (mpmath.log(48) + (t + 2) * lnq
               + (3 - mpmath.mpf(1) / q) * mpmath.log(t)
               + mpmath.mpf(1) / q * mpmath.log(L)) / ln2
        links.append(_mk_link(
            "|M||N| + |M'||N'| <= 48 q^(t+2) t^(3-1/q) log^(1/q) t",
            lhs, rhs, params))
    return BoundReport(chain="bipartite", params={"q": q, "t": t},
                       links=tuple(links))
