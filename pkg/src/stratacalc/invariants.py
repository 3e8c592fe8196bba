"""Headline invariants: orbifold Euler characteristics, the first Chern
class and Chern polynomial of the logarithmic cotangent bundle, closed
forms for hyperelliptic components, and cross-check ledgers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .exact import Rational, binomial, rational_str
from .strata import StratumSpec, dimension, require_valid
from . import levelgraphs as lg
from . import tautring as tr
from .evaluate import Evaluator, UnevaluatableError, default_evaluator


@dataclass
class EulerRow:
    encoding: str
    levels_below: int
    kappa_product: int
    top_dim_unproj: int
    aut: int
    level_factors: list[Rational]
    contribution: Rational
    zero_rule: str | None = None


@dataclass
class EulerReport:
    spec: StratumSpec
    chi: Rational
    rows: list[EulerRow]

    def to_json_obj(self) -> dict:
        return {
            "spec": self.spec.to_json_obj(),
            "chi": rational_str(self.chi),
            "rows": [{
                "graph": r.encoding, "L": r.levels_below,
                "K": r.kappa_product, "N_top": r.top_dim_unproj,
                "aut": r.aut,
                "level_factors": [rational_str(x) for x in r.level_factors],
                "contribution": rational_str(r.contribution),
                **({"zero_rule": r.zero_rule} if r.zero_rule else {}),
            } for r in self.rows],
        }


def _vanishing_rule(sub: StratumSpec) -> str | None:
    if not sub.is_connected():
        return "disconnected pushforward vanishing"
    if sub.is_holomorphic() and len(sub.components[0][1]) >= 2:
        return "holomorphic non-minimal vanishing"
    return None


def euler_characteristic(spec: StratumSpec,
                         evaluator: Evaluator | None = None) -> EulerReport:
    """Dimension-weighted sum over all level graphs of the products of the
    top xi-power integrals of the level strata."""
    require_valid(spec)
    ev = evaluator or default_evaluator()
    d = dimension(spec).projectivized
    rows: list[EulerRow] = []
    total = Fraction(0)
    for L in range(0, d + 1):
        for g in lg.enumerate_LGL(spec, L):
            pd = lg.prong_data(g)
            conds = lg.induced_conditions(g, spec)
            top, _ = lg.level_stratum(g, spec, 0, conds)
            ntop = dimension(top).unprojectivized
            factors: list[Rational] = []
            zero_rule = None
            prod = Fraction(pd.kappa_product * ntop, pd.aut_order)
            for lev in range(0, -L - 1, -1):
                sub, _ = lg.level_stratum(g, spec, lev, conds)
                dsub = dimension(sub).projectivized
                try:
                    val = ev.integral(sub, {}, dsub)
                except UnevaluatableError as err:
                    frame = ("level " + str(lev) + " of a boundary graph of "
                             + spec.canonical_key())
                    raise UnevaluatableError(err.key, err.chain + [frame]) \
                        from None
                factors.append(val)
                prod *= val
                if val == 0 and zero_rule is None:
                    zero_rule = _vanishing_rule(sub)
            total += prod
            rows.append(EulerRow(repr(lg.canonical_encoding(g)), L,
                                 pd.kappa_product, ntop, pd.aut_order,
                                 factors, prod, zero_rule))
    chi = Fraction(-1) ** d * total
    return EulerReport(spec, chi, rows)


# ---------------------------------------------------------------------------
# Chern classes
# ---------------------------------------------------------------------------

def c1_log_cotangent(spec: StratumSpec) -> tr.TautClass:
    """N xi + sum over divisors of (N - N_top) ell [D]."""
    require_valid(spec)
    dims = dimension(spec)
    if dims.projectivized == 0:
        return tr.TautClass.zero(spec)
    n_unproj = dims.unprojectivized
    out = tr.TautClass.xi(spec).scale(n_unproj)
    for g in lg.enumerate_LG1(spec):
        top, _ = lg.level_stratum(g, spec, 0)
        ntop = dimension(top).unprojectivized
        out.add_term(g, (), (n_unproj - ntop) * lg.prong_data(g).ell)
    return out


def _top_dims_of_deltas(spec: StratumSpec, g: lg.LevelGraph) -> list[int]:
    """Unprojectivized top-level dimensions of the two-level
    undegenerations delta_i(g), i = 1..L."""
    out = []
    for i in range(1, g.n_levels_below + 1):
        gi = lg.delta(g, i)
        top, _ = lg.level_stratum(gi, spec, 0)
        out.append(dimension(top).unprojectivized)
    return out


def chern_class_terms(spec: StratumSpec, degree: int) -> tr.TautClass:
    """The degree-d part of the Chern polynomial of the logarithmic
    cotangent bundle, as a sum over level graphs of binomial-weighted
    xi-powers and normal-bundle powers."""
    require_valid(spec)
    n_unproj = dimension(spec).unprojectivized
    d = n_unproj - 1
    out = tr.TautClass.zero(spec)
    for L in range(0, min(degree, d) + 1):
        for g in lg.enumerate_LGL(spec, L):
            pd = lg.prong_data(g)
            rvals = [n_unproj - ntop for ntop in _top_dims_of_deltas(spec, g)]
            for ks in _k_tuples(L, degree):
                k0 = ks[0]
                coeff = binomial(n_unproj - sum(ks[1:]), k0)
                if not coeff:
                    continue
                poly = {tr._decor({("xi", 0): k0} if k0 else {}): Fraction(coeff)}
                ok = True
                for i in range(1, L + 1):
                    ki = ks[i]
                    b = binomial(rvals[i - 1] - sum(ks[i + 1:]), ki)
                    if not b:
                        ok = False
                        break
                    ell_i = pd.ell_levels[i - 1]
                    nu_scaled = tr.poly_scale(tr.nu_poly(g, i), ell_i)
                    poly = tr.poly_scale(
                        tr.poly_mul(poly, tr.poly_pow(nu_scaled, ki - 1)), b)
                if not ok:
                    continue
                for dec, c in poly.items():
                    out.add_term(g, dec, c * pd.ell)
    return out


@dataclass
class ChernReport:
    spec: StratumSpec
    classes: list[tr.TautClass]       # degree 0 .. d
    top_value: Rational               # integral of c_d
    chi: Rational
    duality_holds: bool

    def to_json_obj(self) -> dict:
        return {
            "spec": self.spec.to_json_obj(),
            "classes": [c.to_json_obj() for c in self.classes],
            "top_value": rational_str(self.top_value),
            "chi": rational_str(self.chi),
            "duality_holds": self.duality_holds,
        }


def chern_polynomial(spec: StratumSpec,
                     evaluator: Evaluator | None = None) -> ChernReport:
    """All graded pieces of the Chern polynomial, with the top piece
    evaluated and compared against the Euler characteristic."""
    ev = evaluator or default_evaluator()
    d = dimension(spec).projectivized
    classes = [chern_class_terms(spec, k) for k in range(d + 1)]
    top_value = tr.integrate(classes[d], ev)
    chi = euler_characteristic(spec, ev).chi
    return ChernReport(spec, classes, top_value, chi,
                       top_value == Fraction(-1) ** d * chi)


def _k_tuples(L: int, degree: int):
    """Tuples (k_0, k_1, ..., k_L), k_0 >= 0, k_i >= 1, summing to degree."""
    if L == 0:
        yield (degree,)
        return
    for rest in itertools.product(range(1, degree + 1), repeat=L):
        s = sum(rest)
        if s <= degree:
            yield (degree - s,) + rest


def chern_character(spec: StratumSpec, max_degree: int) -> list[tr.TautClass]:
    """Graded pieces (degree 0..max_degree) of the Chern character of the
    logarithmic cotangent bundle, from the graph sum with inverse Todd
    factors of the twisted normal bundles."""
    require_valid(spec)
    n_unproj = dimension(spec).unprojectivized
    d = n_unproj - 1
    pieces = [tr.TautClass.zero(spec) for _ in range(max_degree + 1)]

    def add_poly(g, poly, scalar):
        for dec, c in poly.items():
            k = g.n_levels_below + tr.decor_degree(dec)
            if k <= max_degree and c * scalar:
                pieces[k].add_term(g, dec, c * scalar)

    for L in range(0, min(max_degree, d) + 1):
        for g in lg.enumerate_LGL(spec, L):
            pd = lg.prong_data(g)
            if L == 0:
                # N e^xi - 1
                for j in range(0, max_degree + 1):
                    dec = tr._decor({("xi", 0): j} if j else {})
                    c = Fraction(n_unproj, factorial(j))
                    if j == 0:
                        c -= 1
                    if c:
                        pieces[j].add_term(g, dec, c)
                continue
            top_last, _ = lg.level_stratum(lg.delta(g, L), spec, 0)
            coeff = (n_unproj - dimension(top_last).unprojectivized) * pd.ell
            if not coeff:
                continue
            poly = tr.poly_one()
            for i in range(1, L + 1):
                ell_i = pd.ell_levels[i - 1]
                m = tr.poly_scale(tr.nu_poly(g, i), ell_i)
                # td(line with c1 = -m)^{-1} = sum_j m^j / (j+1)!
                td_inv = {(): Fraction(1)}
                mp = tr.poly_one()
                for j in range(1, max_degree - L + 1):
                    mp = tr.poly_mul(mp, m)
                    td_inv = tr.poly_add(
                        td_inv, tr.poly_scale(mp, Fraction(1, factorial(j + 1))))
                poly = tr.poly_mul(poly, td_inv)
            # e^{xi} factor, xi restricted to the top level
            expxi = {(): Fraction(1)}
            for j in range(1, max_degree - L + 1):
                expxi = tr.poly_add(
                    expxi, {tr._decor({("xi", 0): j}): Fraction(1, factorial(j))})
            add_poly(g, tr.poly_mul(poly, expxi), coeff)
    return pieces


# ---------------------------------------------------------------------------
# closed forms and cross-checks
# ---------------------------------------------------------------------------

def hyperelliptic_chi(genus: int, variant: str = "minimal") -> Rational:
    """Euler characteristic of the hyperelliptic component of the minimal
    stratum (2g-2), or of the bi-zero stratum (g-1, g-1)."""
    if genus < 2:
        raise ValueError("hyperelliptic components need genus >= 2")
    if variant == "minimal":
        return Fraction(-1, 4 * genus * (2 * genus + 1))
    if variant == "bi-zero":
        return Fraction(1, (2 * genus + 1) * (2 * genus + 2))
    raise ValueError("variant must be 'minimal' or 'bi-zero'")


# chi values of holomorphic strata used by the cross-check ledger
CHI_HOLOMORPHIC = {
    (0,): Fraction(-1, 12), (2,): Fraction(-1, 40), (1, 1): Fraction(1, 30),
    (4,): Fraction(-55, 504), (3, 1): Fraction(16, 63),
    (2, 2): Fraction(15, 56), (2, 1, 1): Fraction(-6, 7),
    (1, 1, 1, 1): Fraction(11, 3), (6,): Fraction(-1169, 720),
    (5, 1): Fraction(27, 5), (4, 2): Fraction(76, 15),
    (3, 3): Fraction(188, 45), (4, 1, 1): Fraction(-200, 9),
    (3, 2, 1): Fraction(-96, 5), (2, 2, 2): Fraction(-187, 10),
    (8,): Fraction(-4671, 88),
}

# chi values of genus-2 strata with poles used by the cross-check ledger
CHI_MEROMORPHIC = {
    (4, -2): Fraction(-19, 24), (3, 1, -2): Fraction(28, 15),
    (2, 2, -2): Fraction(17, 10), (2, 1, 1, -2): Fraction(-6),
    (1, 1, 1, 1, -2): Fraction(26),
    (4, -1, -1): Fraction(-8, 5), (3, 1, -1, -1): Fraction(-4),
    (2, 2, -1, -1): Fraction(-4), (2, 1, 1, -1, -1): Fraction(14),
    (1, 1, 1, 1, -1, -1): Fraction(-63),
}


def _sym_weight(mu: Sequence[int]) -> Fraction:
    """1 / |Sym| for the multiplicities of the repeated zero orders."""
    w = Fraction(1)
    for val in set(mu):
        mult = sum(1 for x in mu if x == val)
        w /= factorial(mult)
    return w


@dataclass
class CrossCheckResult:
    name: str
    lhs: Rational
    rhs: Rational

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def cross_check(chi_holo=None, chi_mero=None) -> list[CrossCheckResult]:
    """Consistency identities tying the chi tables together.

    First, the genus-3 holomorphic strata with unlabeled zeros glue to the
    projectivized Hodge bundle over the genus-3 moduli space.  Second, the
    strata of the Hodge bundle over the 1-pointed genus-2 moduli space
    twisted by twice the marked point add up to chi(P^2) * chi(M_{2,1});
    the point-forgetting fibration contributes a factor 2-2g-n per extra
    unconstrained marked point.
    """
    H = dict(CHI_HOLOMORPHIC)
    H.update(chi_holo or {})
    M = dict(CHI_MEROMORPHIC)
    M.update(chi_mero or {})
    out = []
    lhs = sum(_sym_weight(mu) * H[mu]
              for mu in [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])
    out.append(CrossCheckResult("genus-3 Hodge bundle gluing",
                                lhs, Fraction(3, 1008)))
    lhs = sum(_sym_weight(mu) * M[mu]
              for mu in [(4, -2), (3, 1, -2), (2, 2, -2), (2, 1, 1, -2),
                         (1, 1, 1, 1, -2)])
    # strata with the marked point a zero of order 0, 1 or 2:
    # (2,0): factor 2-2g-n = -3 over (2); (1,1,0): factor -4 over (1,1)
    lhs += -3 * H[(2,)]
    lhs += -4 * _sym_weight((1, 1)) * H[(1, 1)]
    lhs += H[(2,)]            # marked point is the double zero
    lhs += H[(1, 1)]          # marked point is one of two simple zeros
    out.append(CrossCheckResult("twisted Hodge bundle over M_{2,1}",
                                lhs, Fraction(1, 40)))
    return out
