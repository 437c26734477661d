"""Dense-bipartite complete-subgraph extraction.

Given one colour class of a bipartite graph between parts A (size m) and
B (size n) with density at least eps, and sizes satisfying

    m >= 2 eps^-1 r^2      and      n >= 2 eps^-r s,

an averaging argument guarantees a complete K_{r,s} with the r-set inside
A and the s-set inside B.  ``extract_krs`` makes that argument
algorithmic: sample an r-subset of a neighbourhood with probability
proportional to its support, check the support directly, and fall back to
a deterministic enumeration after a retry cap.  Output validity is always
verified edge by edge before returning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

__all__ = [
    "KstError",
    "KstNotFound",
    "KstInstance",
    "KstResult",
    "kst_thresholds",
    "extract_krs",
]


class KstError(ValueError):
    pass


class KstNotFound(KstError):
    """Extraction failed; carries the measured density as a diagnostic."""

    def __init__(self, message: str, density: Fraction):
        super().__init__("%s (measured density %s)" % (message, density))
        self.density = density


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def _ceil(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


def kst_thresholds(eps, r: int, s: int) -> tuple[int, int]:
    """Exact ceilinged part sizes (2 eps^-1 r^2, 2 eps^-r s)."""
    eps = _frac(eps)
    if not (0 < eps <= 1):
        raise KstError("eps must be in (0, 1], got %s" % eps)
    if r < 1 or s < 1:
        raise KstError("need r, s >= 1")
    m_min = _ceil(2 * (1 / eps) * r * r)
    n_min = _ceil(2 * (1 / eps) ** r * s)
    return (m_min, n_min)


@dataclass(frozen=True)
class KstInstance:
    """One colour class between A (indices 0..m-1) and B (0..n-1).

    ``adj[a]`` is the bitmask over B of the A-vertex a's neighbours.
    """

    m: int
    n: int
    epsilon: Fraction
    r: int
    s: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.m:
            raise KstError("adj must have one bitrow per A-vertex")
        if self.m < 1 or self.n < 1:
            raise KstError("parts must be nonempty")
        mask = (1 << self.n) - 1
        for row in self.adj:
            if row < 0 or row & ~mask:
                raise KstError("bitrow addresses vertices outside B")

    @property
    def edge_count(self) -> int:
        return sum(int.bit_count(row) for row in self.adj)

    def density(self) -> Fraction:
        return Fraction(self.edge_count, self.m * self.n)

    def meets_thresholds(self) -> bool:
        m_min, n_min = kst_thresholds(self.epsilon, self.r, self.s)
        return (self.m >= m_min and self.n >= n_min
                and self.density() >= self.epsilon)

    def b_rows(self) -> list[int]:
        """Transposed adjacency: bitmask over A per B-vertex."""
        rows = [0] * self.n
        for a, row in enumerate(self.adj):
            rem = row
            while rem:
                low = rem & -rem
                rows[low.bit_length() - 1] |= 1 << a
                rem ^= low
        return rows

    def to_json_dict(self) -> dict:
        return {"m": self.m, "n": self.n,
                "epsilon": [self.epsilon.numerator, self.epsilon.denominator],
                "r": self.r, "s": self.s, "adj": list(self.adj)}

    @staticmethod
    def from_json_dict(d: dict) -> "KstInstance":
        num, den = d["epsilon"]
        adj = []
        for row in d["adj"]:
            if isinstance(row, list):  # 0/1 row form also accepted
                row = sum(1 << i for i, bit in enumerate(row) if bit)
            adj.append(int(row))
        return KstInstance(m=int(d["m"]), n=int(d["n"]),
                           epsilon=Fraction(int(num), int(den)),
                           r=int(d["r"]), s=int(d["s"]), adj=tuple(adj))


@dataclass(frozen=True)
class KstResult:
    a_set: tuple[int, ...]
    b_set: tuple[int, ...]
    rounds: int
    used_fallback: bool


def _mask_bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _verify(inst: KstInstance, a_set: tuple[int, ...], b_set: tuple[int, ...]) -> None:
    for a in a_set:
        row = inst.adj[a]
        for b in b_set:
            if not (row >> b & 1):
                raise AssertionError("extraction produced a non-edge (%d, %d)" % (a, b))


def _support_pick(brows: list[int], a_subset_mask: int, s: int) -> tuple[int, ...] | None:
    """First s B-vertices adjacent to every vertex of the A-subset."""
    found: list[int] = []
    for b, row in enumerate(brows):
        if row & a_subset_mask == a_subset_mask:
            found.append(b)
            if len(found) == s:
                return tuple(found)
    return None


def extract_krs(inst: KstInstance, seed: int = 0,
                retry_cap: int | None = None) -> KstResult:
    """Explicit K_{r,s}: r vertices of A and s of B, pairwise adjacent.

    Randomized rounds sample B-vertices weighted by C(degree, r) and test a
    uniform r-subset of the neighbourhood; this draws A-subsets with
    probability proportional to their support, so at-threshold instances
    succeed quickly.  After ``retry_cap`` rounds (default 64*s) a
    deterministic sweep enumerates r-subsets of the best vertex's
    neighbourhood in decreasing-support order.
    """
    r, s = inst.r, inst.s
    if retry_cap is None:
        retry_cap = 64 * s
    brows = inst.b_rows()
    degrees = [int.bit_count(row) for row in inst.adj]  # degree of each A-vertex
    bdeg = [int.bit_count(row) for row in brows]

    # weights over B: number of r-subsets inside each neighbourhood
    weights = [comb(d, r) if d >= r else 0 for d in bdeg]
    total = sum(weights)
    rng = random.Random(seed)
    rounds = 0
    if total > 0:
        cum: list[int] = []
        acc = 0
        for w in weights:
            acc += w
            cum.append(acc)
        import bisect

        for rounds in range(1, retry_cap + 1):
            x = rng.randrange(total)
            v = bisect.bisect_right(cum, x)
            nbrs = _mask_bits(brows[v])
            a_subset = tuple(sorted(rng.sample(nbrs, r)))
            a_mask = 0
            for a in a_subset:
                a_mask |= 1 << a
            got = _support_pick(brows, a_mask, s)
            if got is not None:
                _verify(inst, a_subset, got)
                return KstResult(a_subset, got, rounds, used_fallback=False)

    # deterministic fallback: r-subsets of the highest-degree B-vertex's
    # neighbourhood, trying well-supported A-vertices first
    if any(d >= r for d in bdeg):
        v_star = max(range(inst.n), key=lambda b: bdeg[b])
        nbrs = _mask_bits(brows[v_star])
        nbrs.sort(key=lambda a: (-degrees[a], a))
        for a_subset in combinations(nbrs, r):
            a_mask = 0
            for a in a_subset:
                a_mask |= 1 << a
            got = _support_pick(brows, a_mask, s)
            if got is not None:
                ordered = tuple(sorted(a_subset))
                _verify(inst, ordered, got)
                return KstResult(ordered, got, rounds, used_fallback=True)

    raise KstNotFound(
        "no K_{%d,%d} found within retry cap %d plus fallback" % (r, s, retry_cap),
        density=inst.density())
