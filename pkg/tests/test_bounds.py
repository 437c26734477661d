"""Tests for closed-form bounds, edge budgets, and inequality-chain reports."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from online_ramsey.bounds import (
    BoundDomainError,
    BoundParams,
    RamseyOracle,
    bipartite_sizes,
    budget_bipartite,
    budget_main,
    budget_specifics,
    diagonal_bound_log2,
    es_bound,
    load_default_table,
    multinomial_bound,
    verify_bipartite_chain,
    verify_main_chain,
    verify_specifics_chain,
)
from online_ramsey.builders import ADAPTIVE_PRESETS

# ======================================================================
# Closed-form bounds
# ======================================================================


def test_es_bound_trivial_clamp():
    for k in range(1, 10):
        assert es_bound(1, k) == 1
        assert es_bound(k, 1) == 1
        assert es_bound(0, k) == 1
    assert es_bound(1, 1, classical=True) == 1


def test_es_bound_small_values():
    assert es_bound(3, 3) == 20
    assert es_bound(3, 3, classical=True) == 6
    assert es_bound(5, 5, classical=True) == comb(8, 4) == 70
    assert es_bound(4, 4, classical=True) == 20


@given(st.integers(2, 40), st.integers(2, 40))
def test_es_bound_matches_binomials(k: int, l: int):
    assert es_bound(k, l) == comb(k + l, k)
    assert es_bound(k, l, classical=True) == comb(k + l - 2, k - 1)
    # both forms are symmetric in (k, l)
    assert es_bound(k, l) == es_bound(l, k)
    assert es_bound(k, l, classical=True) == es_bound(l, k, classical=True)


def test_multinomial_trivial_cases():
    assert multinomial_bound(()) == 1
    assert multinomial_bound((0, 5)) == 1
    assert multinomial_bound([3, -1, 4]) == 1
    assert multinomial_bound((7,)) == 1


def test_multinomial_known_values():
    assert multinomial_bound((2, 2, 2)) == 90
    assert multinomial_bound((3, 3, 3)) == 1680


@given(st.lists(st.integers(1, 12), min_size=2, max_size=4))
def test_multinomial_identity_and_symmetry(ks: list[int]):
    val = multinomial_bound(ks)
    prod = 1
    for k in ks:
        prod *= factorial(k)
    # exact coefficient identity, and order can't matter
    assert val * prod == factorial(sum(ks))
    assert multinomial_bound(sorted(ks, reverse=True)) == val


@given(st.integers(2, 25), st.integers(2, 25))
def test_multinomial_two_colours_is_es_bound(k: int, l: int):
    assert multinomial_bound((k, l)) == es_bound(k, l)


def test_diagonal_bound_domain():
    with pytest.raises(BoundDomainError):
        diagonal_bound_log2(3, 7)  # below the l/2 <= k band
    with pytest.raises(BoundDomainError):
        diagonal_bound_log2(10, 4)  # above the k <= 2l band
    with pytest.raises(BoundDomainError):
        diagonal_bound_log2(2, 2)  # iterated log undefined


def test_diagonal_bound_zero_c_is_plain_binomial():
    for k, l in [(3, 3), (5, 5), (10, 10), (8, 12), (12, 8)]:
        assert abs(float(diagonal_bound_log2(k, l)) - math.log2(comb(k + l, k))) < 1e-9


def test_diagonal_bound_penalty_value():
    base = float(diagonal_bound_log2(10, 10))
    sharp = float(diagonal_bound_log2(10, 10, Fraction(1, 4)))
    penalty = 0.25 * math.log(10) ** 2 / (math.log(math.log(10)) * math.log(2))
    assert abs((base - sharp) - penalty) < 1e-9
    assert sharp < base


@given(st.integers(3, 30), st.fractions(min_value=0, max_value=2))
def test_diagonal_bound_monotone_in_c(k: int, c: Fraction):
    lo = float(diagonal_bound_log2(k, k, c))
    hi = float(diagonal_bound_log2(k, k, c + Fraction(1, 8)))
    assert hi < lo


# ======================================================================
# Ramsey oracle
# ======================================================================


def test_oracle_trivial_routes():
    orc = RamseyOracle()
    assert orc.lookup(1, 9) == (1, "trivial")
    assert orc.lookup(2, 7) == (7, "trivial")
    assert orc.lookup(7, 2) == (7, "trivial")
    assert orc.lookup(2, 2) == (2, "trivial")
    assert orc.lookup(1, 3, 3) == (1, "trivial")


def test_oracle_table_routes():
    orc = RamseyOracle()
    assert orc.lookup(3, 3) == (6, "table:verified")
    assert orc.lookup(4, 4) == (18, "table:literature")
    assert orc.lookup(3, 5) == (14, "table:literature")
    assert orc.lookup(5, 3) == orc.lookup(3, 5)
    # a single size means the diagonal number
    assert orc.lookup(3) == orc.lookup(3, 3)


def test_oracle_formula_fallback():
    orc = RamseyOracle()
    assert orc.lookup(5, 5) == (70, "formula")
    assert orc.lookup(3, 3, 3) == (1680, "formula")
    bare = RamseyOracle(use_table=False)
    assert bare.table == {}
    assert bare.lookup(3, 3) == (6, "formula")  # classical C(4,2) happens to be exact
    assert bare.lookup(4, 4) == (20, "formula")


def test_oracle_rejects_empty_and_returns_ints():
    orc = RamseyOracle()
    with pytest.raises(ValueError):
        orc.lookup()
    assert orc(4, 4) == orc.lookup(4, 4)[0]
    assert isinstance(orc(5, 5), int)


def test_oracle_diagonal_sharpening():
    plain = RamseyOracle(use_table=False)
    sharp = RamseyOracle(use_table=False, params=BoundParams(c_diag=Fraction(1, 2)))
    classical = es_bound(10, 10, classical=True)
    assert plain(10, 10) == classical
    assert sharp(10, 10) < classical
    # off the near-diagonal band the sharpening never applies
    assert sharp(3, 9) == es_bound(3, 9, classical=True)


def test_default_table_shape():
    table = load_default_table()
    assert all(key == tuple(sorted(key)) for key in table)
    assert all(isinstance(v, int) and isinstance(s, str) for v, s in table.values())
    assert table[(3, 3)] == (6, "verified")


@given(st.lists(st.integers(1, 6), min_size=2, max_size=3))
def test_oracle_dominated_by_formula(ks: list[int]):
    """Table values never exceed the closed-form bound they refine."""
    orc = RamseyOracle()
    val = orc(*ks)
    assert 1 <= val <= multinomial_bound(ks)


# ======================================================================
# Strategy edge budgets
# ======================================================================


def test_budget_specifics_domain():
    with pytest.raises(BoundDomainError):
        budget_specifics(1)


def test_budget_specifics_small_totals():
    assert budget_specifics(3).total == 160
    assert budget_specifics(4).total == 384
    assert budget_specifics(5).total == 2048
    assert budget_specifics(6).total == 4608


def test_budget_specifics_t12_frozen():
    b = budget_specifics(12)
    assert (b.p, b.n, b.m) == (6, 1572864, 18)
    assert b.total == 28311567
    assert b.loose_total == 37748751


def test_budget_specifics_p_covers_every_split():
    """Recompute the fill size independently from the oracle."""
    orc = RamseyOracle()
    for t in (3, 7, 12):
        b = budget_specifics(t, orc)
        m = (3 * t + 1) // 2
        want = 1
        for a in range(m + 1):
            ka, kb = t - a, t - (m - a)
            want = max(want, 1 if ka <= 1 or kb <= 1 else orc(ka, kb))
        assert b.p == want


@pytest.mark.parametrize("t", [2, 3, 5, 9, 12, 20])
def test_budget_specifics_structure(t: int):
    b = budget_specifics(t)
    assert b.m == (3 * t + 1) // 2
    assert b.n == (1 << b.m) * b.p
    assert b.total == b.m * b.n + b.p * (b.p - 1) // 2
    assert b.loose_total == t * (1 << (b.m + 1)) * b.p + b.p * (b.p - 1) // 2
    assert b.loose_total >= b.total
    doc = b.as_dict()
    assert doc["total"] == b.total and doc["t"] == t


def test_budget_main_domain():
    with pytest.raises(BoundDomainError):
        budget_main(1, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(BoundDomainError):
        budget_main(4, 0, Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(BoundDomainError):
        budget_main(4, 1, Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(BoundDomainError):
        budget_main(4, Fraction(1, 2), Fraction(1, 4), Fraction(1, 2))  # nu > mu
    with pytest.raises(BoundDomainError):
        budget_main(4, Fraction(1, 2), 1, Fraction(1, 2))


def test_budget_main_preset_totals():
    want = {2: (1, 16, 2, 32), 3: (3, 45, 2, 93), 4: (6, 90, 2, 195)}
    for t, (alpha, mu, nu) in ADAPTIVE_PRESETS.items():
        b = budget_main(t, alpha, mu, nu)
        assert (b.p, b.n, b.m, b.total) == want[t]


def test_budget_main_exact_arithmetic():
    """Star width follows the exact rational formula, ceilings included."""
    b = budget_main(3, Fraction(1, 4), Fraction(1, 2), Fraction(1, 3))
    orc = RamseyOracle()
    cmu, cnu = 2, 1
    p = max(orc(2, 3), orc(2, 2))
    base = (Fraction(2) / Fraction(1, 4)) ** cnu * (1 - Fraction(1, 4)) ** (-cmu)
    n = math.ceil(base) * p
    assert (b.p, b.n) == (p, n)
    assert b.total == b.m * b.n + b.p * (b.p - 1) // 2
    assert b.as_dict()["total_log2"] == pytest.approx(math.log2(b.total))


def test_budget_main_accepts_mixed_numeric_types():
    ref = budget_main(3, Fraction(1, 4), Fraction(1, 2), Fraction(1, 3))
    alt = budget_main(3, 0.25, "1/2", Fraction(1, 3))
    assert alt == ref


def test_bipartite_sizes_domain():
    with pytest.raises(BoundDomainError):
        bipartite_sizes(1, 7)
    with pytest.raises(BoundDomainError):
        bipartite_sizes(2, 1)


def test_bipartite_sizes_two_colour_t7_frozen():
    s = bipartite_sizes(2, 7)
    assert (s.m_size, s.n_size) == (4313, 196)
    assert (s.r1, s.s1) == (1, 294)
    assert (s.n2_size, s.m2_size, s.s2) == (6810, 294, 6)
    assert s.m2_size == s.s1
    assert s.eps > 0


def test_bipartite_sizes_three_colour_structure():
    s = bipartite_sizes(3, 9)
    # log_3 9 = 2 exactly, so the extraction parameters are crisp
    assert s.r1 == 9 - 2 * 2 == 5
    assert s.s2 == 4
    assert s.n_size == 2 * 3 * 81
    assert s.s1 == 3 * 3 * 81


def test_bipartite_eps_is_floored_rational():
    s = bipartite_sizes(2, 7)
    assert 10 ** 12 % s.eps.denominator == 0
    # floor must not overshoot the exact slack
    import mpmath

    with mpmath.workdps(50):
        L = mpmath.log(7) / mpmath.log(2)
        exact = float((2 - 1) * (L - mpmath.log(L) / mpmath.log(2)) / (4 * 7))
    assert float(s.eps) <= exact
    assert float(s.eps) > exact - 2e-12
    assert bipartite_sizes(2, 2).eps == 0  # log_2 2 = 1 leaves no slack


def test_bipartite_budget_closed_form():
    s = bipartite_sizes(2, 7)
    L = math.log2(7)
    want = 48 * 2 ** 9 * 7 ** 2.5 * L ** 0.5
    assert s.budget == pytest.approx(want, rel=1e-9)
    assert budget_bipartite(2, 7) == s.budget
    assert s.budget_log2 == pytest.approx(math.log2(s.budget), rel=1e-9)
    doc = s.as_dict()
    assert doc["eps"] == [s.eps.numerator, s.eps.denominator]


# ======================================================================
# Inequality-chain reports
# ======================================================================


def test_specifics_chain_domain():
    with pytest.raises(BoundDomainError):
        verify_specifics_chain(1)


def test_specifics_chain_holds_at_12():
    rep = verify_specifics_chain(12)
    assert rep.chain == "specifics"
    assert rep.all_hold
    assert [l.name for l in rep.links] == [
        "fill-binomial <= 2^(2t-m)",
        "offdiag-product-estimate",
        "product-estimate <= diag-refined 2^(2t-m)",
        "t 2^(m+1) p + p^2 <= 2 t^(1-o(1)) 4^t + 2^t",
    ]


def test_specifics_chain_vacuous_at_2():
    rep = verify_specifics_chain(2)
    assert rep.all_hold
    assert any("vacuous" in l.note for l in rep.links)


def test_specifics_chain_diagonal_penalty_breaks_small_t():
    rep = verify_specifics_chain(12, BoundParams(c_diag=Fraction(1, 4)))
    assert not rep.all_hold
    assert rep.params["c_diag"] == "1/4"
    assert not rep.link("product-estimate <= diag-refined 2^(2t-m)").holds


@pytest.mark.parametrize("t", [2, 3, 12, 30])
def test_specifics_chain_margin_consistency(t: int):
    for l in verify_specifics_chain(t).links:
        assert l.holds == (l.margin > 1e-12)


def test_main_chain_domain_and_params():
    with pytest.raises(BoundDomainError):
        verify_main_chain(1)
    rep = verify_main_chain(1000, alpha=Fraction(1, 50))
    assert rep.params["alpha"] == "1/50"
    assert rep.params["mu"] == "99/100"


def test_main_chain_crossover():
    """The closing comparison is asymptotic; its break-even point is exact."""
    below = verify_main_chain(693)
    above = verify_main_chain(694)
    assert not below.all_hold
    assert [l.name for l in below.links if not l.holds] == [
        "(r/4) p + p^2/2 <= 1.001^-t r^2/2  [p = 1.001^-t r, r = sqrt(2)^t]",
    ]
    assert above.all_hold


def test_bipartite_chain_precondition_failures():
    for t in (4, 5, 6):
        rep = verify_bipartite_chain(2, t)
        link = rep.link("t - 2 ceil(log t) >= 1")
        assert link.holds == (t - 2 * math.ceil(math.log2(t)) >= 1)
        if t in (4, 5, 6):
            assert not link.holds or t == 7
    assert verify_bipartite_chain(2, 5).link("t - 2 ceil(log t) >= 1").note == "r1 = -1"


def test_bipartite_chain_t6_known_failure_value():
    rep = verify_bipartite_chain(2, 6)
    link = rep.link("(1 + 2 log^2 t / t^2)^t <= 3")
    assert not link.holds
    assert 2 ** link.lhs_log2 == pytest.approx(6.647, rel=0.01)


def test_bipartite_chain_degenerate_t2():
    rep = verify_bipartite_chain(2, 2)
    assert len(rep.links) == 3  # density links are skipped when eps = 0
    assert not rep.link("eps > 0").holds


def test_bipartite_chain_holds_at_large_t():
    assert verify_bipartite_chain(2, 128).all_hold
    assert verify_bipartite_chain(3, 128).all_hold


def test_report_helpers_and_json():
    rep = verify_specifics_chain(12)
    with pytest.raises(KeyError):
        rep.link("no-such-link")
    doc = rep.to_json_dict()
    assert doc["v"] == 1 and doc["all_hold"] is True
    again = json.loads(json.dumps(doc))
    assert again == doc
    table = verify_bipartite_chain(2, 6).format_table()
    assert "chain bipartite: SOME LINKS FAIL" in table
    assert "NO" in table
