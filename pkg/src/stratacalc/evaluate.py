"""Exact evaluation of top-degree tautological integrals on generalized
strata: closed forms, the psi/xi boundary recursion, and a fixture registry
for the values the recursion cannot reach.

The engine computes integrals of mixed monomials psi^a * xi^b of top degree.
The two moves are the divisor relation

    xi = (m_p + 1) psi_p - sum_{p on lower level} ell_Gamma [D_Gamma]

used forwards (trading xi for psi, on genus-0 and disconnected strata) and
backwards (trading psi for xi, on positive genus), plus the evaluation of a
boundary term as a product of level integrals weighted by
K / (|Aut| * ell).  Every failure surfaces the exact missing key.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .exact import Rational, multinomial, rational_str
from .strata import Point, StratumSpec, dimension, require_valid
from . import levelgraphs as lg


class UnevaluatableError(RuntimeError):
    """No closed form, recursion route, or fixture applies."""

    def __init__(self, key: str, chain: list[str] | None = None):
        self.key = key
        self.chain = chain or [key]
        super().__init__("cannot evaluate: " + " <- ".join(self.chain))


class FixtureCollisionError(ValueError):
    pass


def _xi_key(spec: StratumSpec) -> str:
    return "xi^d on " + spec.canonical_key()


def _psi_key(spec: StratumSpec, psi: tuple) -> str:
    return f"psi{list(psi)} on " + spec.canonical_key()


class FixtureRegistry:
    """Maps (canonical spec, integrand) to exact values, with provenance."""

    def __init__(self) -> None:
        self._entries: dict[str, tuple[Rational, str]] = {}

    def register(self, spec: StratumSpec, value: Rational, provenance: str,
                 psi: Mapping[Point, int] | None = None) -> None:
        key = _xi_key(spec) if psi is None else _psi_key(
            spec, tuple(sorted(psi.items())))
        value = Fraction(value)
        if key in self._entries:
            old, oldprov = self._entries[key]
            if old != value:
                raise FixtureCollisionError(
                    f"fixture collision for {key}: {rational_str(old)} "
                    f"({oldprov}) vs {rational_str(value)} ({provenance})")
            return
        self._entries[key] = (value, provenance)

    def lookup(self, spec: StratumSpec, psi: tuple = ()) -> Rational | None:
        key = _xi_key(spec) if not psi else _psi_key(spec, psi)
        hit = self._entries.get(key)
        return hit[0] if hit else None

    def provenance(self, spec: StratumSpec) -> str | None:
        hit = self._entries.get(_xi_key(spec))
        return hit[1] if hit else None

    def load_json_obj(self, items: Sequence[dict]) -> None:
        for item in items:
            spec = StratumSpec.from_json_obj(item["spec"])
            integrand = item.get("integrand", {})
            psi = None
            if "psi" in integrand:
                psi = {tuple(int(x) for x in k.split(".")): int(v)
                       for k, v in integrand["psi"].items()}
            self.register(spec, Fraction(item["value"]),
                          item.get("provenance", "user fixture"), psi)

    def items(self):
        return sorted(self._entries.items())


_TABLE_XI_TOP = [
    # connected strata, orders sorted descending; minimal holomorphic strata
    # and small meromorphic strata
    ((1, (0,)), Fraction(1, 24), "xi-top table, mu=(0)"),
    ((2, (2,)), Fraction(-1, 640), "xi-top table, mu=(2)"),
    ((3, (4,)), Fraction(-305, 580608), "xi-top table, mu=(4)"),
    ((4, (6,)), Fraction(-87983, 199065600), "xi-top table, mu=(6)"),
    ((0, (0, 0, -2)), Fraction(1), "xi-top table, mu=(0,0,-2)"),
    ((1, (2, -2)), Fraction(-1, 8), "xi-top table, mu=(2,-2)"),
    ((1, (1, 1, -2)), Fraction(0), "xi-top table, mu=(1,1,-2)"),
    ((2, (4, -2)), Fraction(23, 1152),
     "xi-top table, mu=(4,-2); sign ambiguous in source, excluded from checks"),
    ((2, (3, 1, -2)), Fraction(0), "xi-top table, mu=(3,1,-2)"),
    ((1, (2, 1, -3)), Fraction(5, 8), "xi-top table, mu=(2,1,-3)"),
    ((2, (5, -3)), Fraction(-21, 20), "xi-top table, mu=(5,-3)"),
    ((2, (8, -2, -2, -2)), Fraction(-4527, 32), "xi-top table, mu=(8,-2,-2,-2)"),
]


def default_registry() -> FixtureRegistry:
    reg = FixtureRegistry()
    for (g, mu), val, prov in _TABLE_XI_TOP:
        reg.register(StratumSpec.connected(g, mu), val, prov)
    return reg


# ---------------------------------------------------------------------------
# the evaluator
# ---------------------------------------------------------------------------

PsiMap = Mapping[Point, int]


def _psi_tuple(psi: PsiMap) -> tuple:
    return tuple(sorted((pt, e) for pt, e in psi.items() if e))


class Evaluator:
    """Memoized exact integration of psi/xi monomials on generalized strata."""

    def __init__(self, registry: FixtureRegistry | None = None):
        self.registry = registry if registry is not None else default_registry()
        self._memo: dict[tuple, Rational] = {}

    # -- public surface ----------------------------------------------------

    def xi_top(self, spec: StratumSpec) -> Rational:
        require_valid(spec)
        d = dimension(spec).projectivized
        return self.integral(spec, {}, d)

    def psi_top(self, spec: StratumSpec, psi: PsiMap) -> Rational:
        require_valid(spec)
        return self.integral(spec, psi, 0)

    def integral(self, spec: StratumSpec, psi: PsiMap, xi: int) -> Rational:
        """Integral of prod psi_p^{a_p} * xi^b over the compactified
        stratum; zero when the degree is not the dimension."""
        pt = _psi_tuple(psi)
        key = (spec, pt, xi)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        try:
            val = self._integral(spec, dict(pt), xi)
        except UnevaluatableError as err:
            frame = _xi_key(spec) if not pt else _psi_key(spec, pt)
            if err.chain[-1] != frame:
                raise UnevaluatableError(err.key, err.chain + [frame]) from None
            raise
        self._memo[key] = val
        return val

    def stratum_divisor_integral(self, spec: StratumSpec, graph: lg.LevelGraph,
                                 psi: PsiMap, top_xi: int) -> Rational:
        """Integral over D_Gamma of the restriction of psi^a xi^{top_xi}:
        K/(|Aut| ell) times the product of level integrals."""
        pd = lg.prong_data(graph)
        conds = lg.induced_conditions(graph, spec)
        legv = graph.leg_vertex()
        out = Fraction(pd.kappa_product, pd.aut_order * pd.ell)
        for lev in range(0, -graph.n_levels_below - 1, -1):
            sub, pmap = lg.level_stratum(graph, spec, lev, conds)
            tag_pos = {t: (cj, pj) for cj, tags in enumerate(pmap)
                       for pj, t in enumerate(tags)}
            sub_psi: dict[Point, int] = {}
            for p, e in psi.items():
                if not e:
                    continue
                if legv[p] in graph.vertices_at(lev):
                    sub_psi[tag_pos[("leg", p)]] = e
            sub_xi = top_xi if lev == 0 else 0
            factor = self.integral(sub, sub_psi, sub_xi)
            if factor == 0:
                return Fraction(0)
            out *= factor
        return out

    # -- dispatch ------------------------------------------------------------

    def _integral(self, spec: StratumSpec, psi: dict[Point, int], xi: int) -> Rational:
        require_valid(spec)
        d = dimension(spec).projectivized
        deg = sum(psi.values()) + xi
        if deg != d or d < 0:
            return Fraction(0)
        if d == 0:
            return Fraction(1)
        if spec.constrained_parts():
            return self._remove_condition(spec, psi, xi)
        if not spec.is_connected():
            if xi == 0:
                return Fraction(0)
            return self._expand_xi(spec, psi, xi)
        genus, orders = spec.components[0]
        if spec.is_holomorphic() and not psi:
            if len(orders) == 1:
                return self._fixture(spec, psi)
            return Fraction(0)
        if genus == 0:
            if xi == 0:
                return Fraction(multinomial(len(orders) - 3, list(
                    psi.get((0, p), 0) for p in range(len(orders)))))
            poles = [o for o in orders if o < 0]
            if len(poles) == 1 and not psi:
                return Fraction(poles[0] + 1) ** d
            return self._expand_xi(spec, psi, xi)
        # positive genus
        if psi:
            hit = self.registry.lookup(spec, _psi_tuple(psi)) if xi == 0 else None
            if hit is not None:
                return hit
            return self._reverse_psi(spec, psi, xi)
        closed = self._genus1_closed(genus, orders, d)
        if closed is not None:
            return closed
        return self._fixture(spec, psi)

    @staticmethod
    def _genus1_closed(genus: int, orders: tuple[int, ...], d: int) -> Rational | None:
        if genus != 1:
            return None
        mu = tuple(sorted(orders, reverse=True))
        if len(mu) == 2 and mu[1] == -mu[0] and mu[0] >= 2 and d == 1:
            k = mu[0]
            return Fraction(-(k - 1) * (k * k - 1), 24)
        if len(mu) == 3 and mu[1] == 1 and mu[2] == -mu[0] - 1 and mu[0] >= 1 and d == 2:
            k = mu[0]
            return Fraction(k ** 4 - 1, 24)
        return None

    def _fixture(self, spec: StratumSpec, psi: dict[Point, int]) -> Rational:
        val = self.registry.lookup(spec, _psi_tuple(psi))
        if val is None:
            key = _xi_key(spec) if not psi else _psi_key(spec, _psi_tuple(psi))
            raise UnevaluatableError(key)
        return val

    # -- recursion moves -----------------------------------------------------

    def _pick_expansion_point(self, spec: StratumSpec) -> Point:
        pts = spec.points()
        return min(pts, key=lambda p: (spec.order(p), p))

    def _expand_xi(self, spec: StratumSpec, psi: dict[Point, int], xi: int,
                   point: Point | None = None) -> Rational:
        """Trade one xi for a psi-class plus boundary terms."""
        assert xi >= 1
        p = self._pick_expansion_point(spec) if point is None else point
        m = spec.order(p)
        bumped = dict(psi)
        bumped[p] = bumped.get(p, 0) + 1
        total = (m + 1) * self.integral(spec, bumped, xi - 1)
        legv_low = self._divisors_with_point_low(spec, p)
        for graph, ell in legv_low:
            term = self.stratum_divisor_integral(spec, graph, psi, xi - 1)
            if term:
                total -= ell * term
        return total

    def _reverse_psi(self, spec: StratumSpec, psi: dict[Point, int], xi: int) -> Rational:
        """Trade one psi for a xi, on positive-genus strata."""
        p = next(pt for pt, e in sorted(psi.items()) if e)
        m = spec.order(p)
        reduced = dict(psi)
        reduced[p] -= 1
        if not reduced[p]:
            del reduced[p]
        total = self.integral(spec, reduced, xi + 1)
        for graph, ell in self._divisors_with_point_low(spec, p):
            term = self.stratum_divisor_integral(spec, graph, reduced, xi)
            if term:
                total += ell * term
        return total / (m + 1)

    def _divisors_with_point_low(self, spec: StratumSpec, p: Point):
        out = []
        for graph in lg.enumerate_LG1(spec):
            if graph.levels[graph.leg_vertex()[p]] == -1:
                out.append((graph, lg.prong_data(graph).ell))
        return out

    # -- residue condition removal -------------------------------------------

    def _remove_condition(self, spec: StratumSpec, psi: dict[Point, int], xi: int) -> Rational:
        part = spec.constrained_parts()[-1]
        spec0 = spec.drop_part(part)
        if dimension(spec0).projectivized == dimension(spec).projectivized:
            return self.integral(spec0, psi, xi)
        total = -self.integral(spec0, psi, xi + 1)
        for graph in removal_divisors(spec0, part):
            ell = lg.prong_data(graph).ell
            term = self.stratum_divisor_integral(spec0, graph, psi, xi)
            if term:
                total -= ell * term
        return total


def removal_divisors(spec0: StratumSpec, part) -> list[lg.LevelGraph]:
    """Boundary divisors entering the residue-removal relation: graphs
    where every leg of the part sits on the lower level, plus graphs where
    the condition induced on the top level is no extra condition."""
    spec_with = StratumSpec(spec0.components, spec0.residue_parts + (part,))
    out = []
    for graph in lg.enumerate_LG1(spec0):
        legv = graph.leg_vertex()
        all_low = all(graph.levels[legv[pt]] == -1 for pt in part.points)
        if all_low:
            out.append(graph)
            continue
        top_with, _ = lg.level_stratum(graph, spec_with, 0)
        top_without, _ = lg.level_stratum(graph, spec0, 0)
        if dimension(top_with).residue_rank == dimension(top_without).residue_rank:
            out.append(graph)
    return out


_DEFAULT: Evaluator | None = None


def default_evaluator() -> Evaluator:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Evaluator()
    return _DEFAULT


def xi_top(spec: StratumSpec, evaluator: Evaluator | None = None) -> Rational:
    return (evaluator or default_evaluator()).xi_top(spec)


def psi_top(spec: StratumSpec, psi: PsiMap, evaluator: Evaluator | None = None) -> Rational:
    return (evaluator or default_evaluator()).psi_top(spec, psi)
