"""Tests for the dense-bipartite complete-subgraph extractor."""

from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from online_ramsey.kst import (
    KstError,
    KstInstance,
    KstNotFound,
    KstResult,
    extract_krs,
    kst_thresholds,
)

# ======================================================================
# Helpers
# ======================================================================


def assert_valid(inst: KstInstance, res: KstResult) -> None:
    assert len(res.a_set) == inst.r and len(set(res.a_set)) == inst.r
    assert len(res.b_set) == inst.s and len(set(res.b_set)) == inst.s
    for a in res.a_set:
        assert 0 <= a < inst.m
        for b in res.b_set:
            assert 0 <= b < inst.n
            assert inst.adj[a] >> b & 1, "missing edge (%d, %d)" % (a, b)


def brute_exists(inst: KstInstance) -> bool:
    """Reference existence check over every r-subset of A."""
    for a_subset in combinations(range(inst.m), inst.r):
        common = (1 << inst.n) - 1
        for a in a_subset:
            common &= inst.adj[a]
        if int.bit_count(common) >= inst.s:
            return True
    return False


def random_at_threshold(rng: random.Random, eps: Fraction, r: int, s: int) -> KstInstance:
    """Uniform edge placement with density exactly eps at minimum sizes."""
    m, n = kst_thresholds(eps, r, s)
    edges = m * n * eps
    assert edges.denominator == 1
    cells = [(a, b) for a in range(m) for b in range(n)]
    rng.shuffle(cells)
    rows = [0] * m
    for a, b in cells[: int(edges)]:
        rows[a] |= 1 << b
    return KstInstance(m=m, n=n, epsilon=eps, r=r, s=s, adj=tuple(rows))


# ======================================================================
# Thresholds
# ======================================================================


def test_threshold_examples():
    assert kst_thresholds(Fraction(1, 2), 2, 3) == (16, 24)
    assert kst_thresholds(1, 3, 1) == (18, 2)
    assert kst_thresholds(Fraction(1, 3), 2, 2) == (24, 36)


def test_threshold_accepts_float_and_string():
    assert kst_thresholds(0.5, 2, 3) == (16, 24)
    assert kst_thresholds("1/2", 2, 3) == (16, 24)


def test_threshold_domain():
    with pytest.raises(KstError):
        kst_thresholds(0, 2, 2)
    with pytest.raises(KstError):
        kst_thresholds(Fraction(3, 2), 2, 2)
    with pytest.raises(KstError):
        kst_thresholds(Fraction(-1, 2), 2, 2)
    with pytest.raises(KstError):
        kst_thresholds(Fraction(1, 2), 0, 2)
    with pytest.raises(KstError):
        kst_thresholds(Fraction(1, 2), 2, 0)


@given(st.fractions(min_value=Fraction(1, 20), max_value=1),
       st.integers(1, 6), st.integers(1, 6))
def test_threshold_monotonicity(eps: Fraction, r: int, s: int):
    m0, n0 = kst_thresholds(eps, r, s)
    m1, n1 = kst_thresholds(eps, r + 1, s)
    assert m1 >= m0 and n1 >= n0
    m2, n2 = kst_thresholds(eps, r, s + 1)
    assert m2 >= m0 and n2 >= n0
    m3, n3 = kst_thresholds(eps / 2, r, s)
    assert m3 >= m0 and n3 >= n0


def test_threshold_exact_ceilings():
    # 2 * (5/3) * 9 = 30 exactly; 2 * (5/3)^3 * 2 = 500/27 -> 19
    assert kst_thresholds(Fraction(3, 5), 3, 2) == (30, 19)


# ======================================================================
# Instances
# ======================================================================


def test_instance_validation():
    with pytest.raises(KstError):
        KstInstance(m=2, n=2, epsilon=Fraction(1, 2), r=1, s=1, adj=(3,))
    with pytest.raises(KstError):
        KstInstance(m=0, n=2, epsilon=Fraction(1, 2), r=1, s=1, adj=())
    with pytest.raises(KstError):
        KstInstance(m=1, n=2, epsilon=Fraction(1, 2), r=1, s=1, adj=(4,))
    with pytest.raises(KstError):
        KstInstance(m=1, n=2, epsilon=Fraction(1, 2), r=1, s=1, adj=(-1,))


def test_instance_counts_and_density():
    inst = KstInstance(m=2, n=3, epsilon=Fraction(1, 2), r=1, s=1,
                       adj=(0b101, 0b010))
    assert inst.edge_count == 3
    assert inst.density() == Fraction(1, 2)
    assert inst.meets_thresholds() is False  # m < 2 * 2 * 1


def test_instance_meets_thresholds_exactly():
    rng = random.Random(7)
    inst = random_at_threshold(rng, Fraction(1, 2), 2, 2)
    assert inst.density() == Fraction(1, 2)
    assert inst.meets_thresholds()


def test_b_rows_is_the_transpose():
    rng = random.Random(3)
    rows = tuple(rng.randrange(1 << 6) for _ in range(5))
    inst = KstInstance(m=5, n=6, epsilon=Fraction(1, 2), r=1, s=1, adj=rows)
    brows = inst.b_rows()
    for a in range(5):
        for b in range(6):
            assert (rows[a] >> b & 1) == (brows[b] >> a & 1)


def test_instance_json_round_trip():
    inst = KstInstance(m=2, n=3, epsilon=Fraction(2, 5), r=1, s=2,
                       adj=(0b110, 0b011))
    doc = json.loads(json.dumps(inst.to_json_dict()))
    assert KstInstance.from_json_dict(doc) == inst


def test_instance_json_accepts_binary_rows():
    doc = {"m": 2, "n": 3, "epsilon": [1, 2], "r": 1, "s": 1,
           "adj": [[0, 1, 1], [1, 1, 0]]}
    inst = KstInstance.from_json_dict(doc)
    assert inst.adj == (0b110, 0b011)


# ======================================================================
# Extraction
# ======================================================================


def test_extract_from_complete_bipartite():
    adj = tuple((1 << 24) - 1 for _ in range(16))
    inst = KstInstance(m=16, n=24, epsilon=Fraction(1, 2), r=2, s=3, adj=adj)
    assert inst.meets_thresholds()
    res = extract_krs(inst)
    assert_valid(inst, res)
    assert not res.used_fallback


def test_extract_two_block_below_threshold():
    """Validity-only exercise on a tiny pattern that misses the thresholds."""
    adj = (0b0011, 0b0011, 0b1100, 0b1100)
    inst = KstInstance(m=4, n=4, epsilon=Fraction(1, 2), r=2, s=2, adj=adj)
    assert not inst.meets_thresholds()
    assert brute_exists(inst)
    res = extract_krs(inst)
    assert_valid(inst, res)
    assert set(res.a_set) in ({0, 1}, {2, 3})
    assert set(res.b_set) == ({0, 1} if set(res.a_set) == {0, 1} else {2, 3})


def test_extract_deterministic_for_fixed_seed():
    rng = random.Random(11)
    inst = random_at_threshold(rng, Fraction(1, 2), 2, 2)
    first = extract_krs(inst, seed=5)
    again = extract_krs(inst, seed=5)
    assert first == again


@pytest.mark.parametrize("r,s", [(2, 2), (2, 3), (3, 2)])
def test_extract_at_threshold_sample(r: int, s: int):
    rng = random.Random(100 * r + s)
    for trial in range(25):
        inst = random_at_threshold(rng, Fraction(1, 2), r, s)
        res = extract_krs(inst, seed=trial)
        assert_valid(inst, res)


def test_extract_outputs_are_sorted():
    rng = random.Random(2)
    inst = random_at_threshold(rng, Fraction(1, 2), 2, 3)
    res = extract_krs(inst, seed=9)
    assert list(res.a_set) == sorted(res.a_set)
    assert list(res.b_set) == sorted(res.b_set)


def test_extract_zero_retry_cap_uses_fallback():
    adj = tuple((1 << 24) - 1 for _ in range(16))
    inst = KstInstance(m=16, n=24, epsilon=Fraction(1, 2), r=2, s=3, adj=adj)
    res = extract_krs(inst, retry_cap=0)
    assert res.used_fallback
    assert res.rounds == 0
    assert_valid(inst, res)


def test_extract_not_found_on_matching():
    # a perfect matching has no two A-vertices with a common neighbour
    inst = KstInstance(m=2, n=2, epsilon=Fraction(1, 2), r=2, s=1,
                       adj=(0b01, 0b10))
    assert not brute_exists(inst)
    with pytest.raises(KstNotFound) as exc:
        extract_krs(inst)
    assert exc.value.density == Fraction(1, 2)
    assert "measured density" in str(exc.value)


def test_extract_not_found_on_empty_class():
    inst = KstInstance(m=3, n=3, epsilon=Fraction(1, 3), r=1, s=1,
                       adj=(0, 0, 0))
    with pytest.raises(KstNotFound) as exc:
        extract_krs(inst)
    assert exc.value.density == 0


@given(st.integers(0, 10 ** 6))
def test_extract_agrees_with_brute_force_on_random_small(seed: int):
    """Existence decided by the extractor matches exhaustive search."""
    rng = random.Random(seed)
    m, n = rng.randint(2, 5), rng.randint(2, 5)
    adj = tuple(rng.randrange(1 << n) for _ in range(m))
    r = rng.randint(1, min(3, m))
    s = rng.randint(1, min(3, n))
    inst = KstInstance(m=m, n=n, epsilon=Fraction(1, 100), r=r, s=s, adj=adj)
    if brute_exists(inst):
        assert_valid(inst, extract_krs(inst, seed=seed))
    else:
        with pytest.raises(KstNotFound):
            extract_krs(inst, seed=seed)
