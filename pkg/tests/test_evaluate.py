from __future__ import annotations

from fractions import Fraction

import pytest

from stratacalc.strata import StratumSpec, dimension
from stratacalc.evaluate import (Evaluator, FixtureCollisionError,
                                 FixtureRegistry, UnevaluatableError,
                                 default_registry)


EV = Evaluator()


def C(g, mu):
    return StratumSpec.connected(g, mu)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def test_genus0_single_pole_closed_form():
    # int xi^{n-2} = (-1 - sum a)^{n-2}
    assert EV.xi_top(C(0, (1, 1, 1, -5))) == -4
    assert EV.xi_top(C(0, (0, 0, -2))) == 1
    assert EV.xi_top(C(0, (2, 3, 1, 1, -9))) == (-8) ** 2


def test_genus1_closed_forms_match_fixture_table():
    reg = default_registry()
    assert EV.xi_top(C(1, (2, -2))) == Fraction(-1, 8)
    assert reg.lookup(C(1, (2, -2))) == Fraction(-1, 8)
    assert EV.xi_top(C(1, (2, 1, -3))) == Fraction(5, 8)
    assert reg.lookup(C(1, (2, 1, -3))) == Fraction(5, 8)
    assert EV.xi_top(C(1, (1, 1, -2))) == 0
    assert reg.lookup(C(1, (1, 1, -2))) == 0


def test_holomorphic_rules():
    assert EV.xi_top(C(1, (0,))) == Fraction(1, 24)
    assert EV.xi_top(C(2, (2,))) == Fraction(-1, 640)
    assert EV.xi_top(C(2, (1, 1))) == 0
    assert EV.xi_top(C(3, (2, 1, 1))) == 0


def test_meromorphic_fixtures():
    assert EV.xi_top(C(2, (5, -3))) == Fraction(-21, 20)
    assert EV.xi_top(C(2, (8, -2, -2, -2))) == Fraction(-4527, 32)


def test_psi_top_genus0():
    spec = C(0, (1, 1, 1, 1, -6))
    assert EV.psi_top(spec, {(0, 0): 1, (0, 1): 1}) == 2
    assert EV.psi_top(spec, {(0, 0): 2}) == 1
    m04 = C(0, (1, 1, -2, -2))
    assert EV.psi_top(m04, {(0, 0): 1}) == 1


def test_psi_top_disconnected_vanishes():
    spec = StratumSpec.make([(0, (1, 1, -4)), (0, (1, 1, -4))])
    assert EV.psi_top(spec, {(0, 0): 1}) == 0


def test_degree_mismatch_is_zero():
    spec = C(0, (1, 1, 1, -5))
    assert EV.integral(spec, {}, 0) == 0
    assert EV.integral(spec, {(0, 0): 5}, 0) == 0


# ---------------------------------------------------------------------------
# recursion routes
# ---------------------------------------------------------------------------

def test_genus0_two_pole_value():
    # bottom stratum of the k=5 family divisors: int xi = -k
    for k, a in [(5, 2), (4, 1), (6, 3)]:
        b = k + 1 - a
        assert EV.xi_top(C(0, (1, k, -a - 1, -b - 1))) == -k


def test_disconnected_xi_value():
    bot = StratumSpec.make([(0, (1, 1, -4)), (0, (2, 2, -6))])
    assert EV.xi_top(bot) == -1


def test_route_independence():
    """Expanding xi at different marked points gives the same value."""
    spec = C(0, (2, 1, 1, -3, -3))
    d = dimension(spec).projectivized
    vals = set()
    for pt in spec.points():
        ev = Evaluator()
        vals.add(ev._expand_xi(spec, {}, d, point=pt))
    assert len(vals) == 1
    assert vals.pop() == EV.xi_top(spec)


def test_genus0_closed_form_agrees_with_recursion():
    """Single-pole strata evaluated through the generic expansion."""
    for mu in [(1, 1, 1, -5), (1, 1, 1, 1, -6), (3, 1, 2, -8)]:
        spec = C(0, mu)
        d = dimension(spec).projectivized
        ev = Evaluator()
        expanded = ev._expand_xi(spec, {}, d)
        assert expanded == EV.xi_top(spec), mu


def test_residue_constrained_removal():
    # (1,1,-2,-2) with one residue killed: a single point
    spec = StratumSpec.make([(0, (1, 1, -2, -2))], [({(0, 2)}, True)])
    assert dimension(spec).projectivized == 0
    ev = Evaluator()
    assert ev.integral(spec, {}, 0) == 1
    # redundant part drops out: pairing both poles repeats the residue theorem
    spec = StratumSpec.make([(0, (1, 1, -2, -2))], [({(0, 2), (0, 3)}, True)])
    assert dimension(spec).projectivized == 1
    assert ev.xi_top(spec) == EV.xi_top(C(0, (1, 1, -2, -2)))


# ---------------------------------------------------------------------------
# fixtures and caching
# ---------------------------------------------------------------------------

def test_fixture_registration_rules():
    reg = FixtureRegistry()
    spec = C(1, (0,))
    reg.register(spec, Fraction(1, 24), "table")
    reg.register(spec, Fraction(1, 24), "table again")  # idempotent
    with pytest.raises(FixtureCollisionError):
        reg.register(spec, Fraction(1, 25), "conflicting")


def test_fixture_lookup_is_order_insensitive():
    reg = default_registry()
    assert reg.lookup(C(2, (-3, 5))) == Fraction(-21, 20)


def test_fail_loud_names_the_key():
    ev = Evaluator(FixtureRegistry())
    with pytest.raises(UnevaluatableError) as err:
        ev.xi_top(C(3, (4,)))
    assert "xi^d" in str(err.value)


def test_unknown_meromorphic_fails_loud():
    ev = Evaluator(default_registry())
    with pytest.raises(UnevaluatableError):
        ev.xi_top(C(3, (7, -3)))


def test_cache_transparency():
    spec = C(0, (1, 1, 2, 2, -8))
    warm = Evaluator()
    a = warm.xi_top(spec)
    b = warm.xi_top(spec)  # memoized path
    cold = Evaluator()
    assert a == b == cold.xi_top(spec)


def test_extra_fixture_loading():
    reg = default_registry()
    reg.load_json_obj([{
        "spec": C(3, (7, -3)).to_json_obj(),
        "integrand": {"xi_power": 3},
        "value": "1/7",
        "provenance": "test",
    }])
    ev = Evaluator(reg)
    assert ev.xi_top(C(3, (7, -3))) == Fraction(1, 7)


def test_psi_fixture_registration_and_lookup():
    reg = FixtureRegistry()
    spec = C(2, (1, 1))
    reg.register(spec, Fraction(3, 7), "test", psi={(0, 0): 4})
    assert reg.lookup(spec, (((0, 0), 4),)) == Fraction(3, 7)
    ev = Evaluator(reg)
    assert ev.integral(spec, {(0, 0): 4}, 0) == Fraction(3, 7)


def test_single_pole_recursion_sweep():
    """Closed form and generic expansion agree for single-pole rational
    strata across a systematic family of signatures."""
    import itertools
    checked = 0
    for n_zeros, max_sum in ((3, 8), (4, 6), (5, 4), (6, 2)):
        for zeros in itertools.combinations_with_replacement(
                range(0, max_sum + 1), n_zeros):
            if sum(zeros) > max_sum:
                continue
            mu = tuple(sorted(zeros, reverse=True)) + (-2 - sum(zeros),)
            spec = C(0, mu)
            d = dimension(spec).projectivized
            assert Evaluator()._expand_xi(spec, {}, d) == EV.xi_top(spec), mu
            checked += 1
    assert checked > 60
