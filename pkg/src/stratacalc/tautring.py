"""The tautological-ring calculus on compactified generalized strata.

Classes are exact-rational combinations of decorated boundary strata
(Gamma, monomial), where the monomial mixes per-level tautological-line
classes xi^{[i]}, per-level boundary classes lam^{[i]} (the weighted sum of
the one-step degenerations of level i), and psi-classes at marked points or
edge half-points.  A term stands for the pushforward to the ambient stratum
of the class on D_Gamma whose pullback to the level-product cover is the
product of the per-level pieces; its integral is
K/(|Aut| ell) times the product of the level integrals.

Products are computed by the excess-intersection formula: common divisors
contribute normal-bundle factors

    nu_i = (-xi^{[-i+1]} - lam^{[-i+1]} + xi^{[-i]}) / ell_i,

new passages come from explicit level splittings, and lam-classes expand
recursively into deeper strata until only evaluable generators remain.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping

from .exact import Rational, rational_str
from .strata import Point, ResiduePart, StratumSpec, dimension, require_valid
from . import levelgraphs as lg
from .evaluate import Evaluator, default_evaluator, removal_divisors

# decoration symbols
#   ("psi", tag)   tag = ("leg", point) | ("ein", ei) | ("eout", ei)
#   ("xi", level)  the level tautological class
#   ("lam", level) sum of ell_new [D] over one-step splits of the level
Symbol = tuple
Decor = tuple  # sorted tuple of (Symbol, exponent)
Poly = dict    # Decor -> Fraction


def _decor(d: Mapping[Symbol, int]) -> Decor:
    return tuple(sorted(((s, e) for s, e in d.items() if e), key=lg.tuple_key))


def _dmul(a: Decor, b: Decor) -> Decor:
    out = dict(a)
    for s, e in b:
        out[s] = out.get(s, 0) + e
    return _decor(out)


def poly_one() -> Poly:
    return {(): Fraction(1)}


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = _dmul(da, db)
            out[d] = out.get(d, Fraction(0)) + ca * cb
    return {d: c for d, c in out.items() if c}


def poly_scale(a: Poly, c: Rational) -> Poly:
    return {d: x * Fraction(c) for d, x in a.items() if x * Fraction(c)}


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for d, c in b.items():
        out[d] = out.get(d, Fraction(0)) + c
    return {d: c for d, c in out.items() if c}


def poly_pow(a: Poly, n: int) -> Poly:
    out = poly_one()
    for _ in range(n):
        out = poly_mul(out, a)
    return out


def decor_degree(d: Decor) -> int:
    return sum(e for _, e in d)


def nu_poly(g: lg.LevelGraph, passage: int) -> Poly:
    """First Chern class of the normal bundle of D_Gamma inside the stratum
    where the given level passage is undone."""
    pd = lg.prong_data(g)
    ell_i = pd.ell_levels[passage - 1]
    top, bot = -passage + 1, -passage
    return {
        _decor({("xi", top): 1}): Fraction(-1, ell_i),
        _decor({("lam", top): 1}): Fraction(-1, ell_i),
        _decor({("xi", bot): 1}): Fraction(1, ell_i),
    }


# ---------------------------------------------------------------------------
# canonical decorated form
# ---------------------------------------------------------------------------

def canonical_decorated(g: lg.LevelGraph, decor: Decor) -> tuple[lg.LevelGraph, Decor]:
    """Canonical representative of an isomorphism class of decorated graphs;
    decorations on interchangeable parallel edges are ordered canonically."""
    ein = {}
    eout = {}
    rest = {}
    for s, e in decor:
        if s[0] == "psi" and s[1][0] == "ein":
            ein[s[1][1]] = e
        elif s[0] == "psi" and s[1][0] == "eout":
            eout[s[1][1]] = e
        else:
            rest[s] = e

    keys = lg._vertex_keys(g)
    groups: dict[tuple, list[int]] = {}
    for v in range(g.n_vertices):
        groups.setdefault(lg.tuple_key(keys[v]), []).append(v)
    ordered_groups = [groups[k] for k in sorted(groups)]
    best = None
    best_edges = None
    for perm_choices in itertools.product(
            *[itertools.permutations(grp) for grp in ordered_groups]):
        order = [v for grp in perm_choices for v in grp]
        pos = {v: i for i, v in enumerate(order)}
        verts = tuple((g.levels[v], g.genera[v]) for v in order)
        legs = tuple(sorted((pt, pos[v]) for pt, v in g.legs))
        erecs = sorted(
            ((pos[u], pos[v], k, ein.get(i, 0), eout.get(i, 0), i)
             for i, (u, v, k) in enumerate(g.edges)),
            key=lambda r: r[:5])
        enc = (verts, legs, tuple(r[:5] for r in erecs),
               tuple(sorted(rest.items(), key=lg.tuple_key)))
        if best is None or enc < best:
            best = enc
            best_edges = erecs
    assert best is not None and best_edges is not None
    verts, legs, erecs, rest_t = best
    new_graph = lg.LevelGraph(tuple(v[1] for v in verts),
                              tuple(v[0] for v in verts), legs,
                              tuple(r[:3] for r in erecs))
    nd = dict(rest)
    for new_i, r in enumerate(erecs):
        if r[3]:
            nd[("psi", ("ein", new_i))] = r[3]
        if r[4]:
            nd[("psi", ("eout", new_i))] = r[4]
    return new_graph, _decor(nd)


# ---------------------------------------------------------------------------
# TautClass
# ---------------------------------------------------------------------------

class TautClass:
    """Exact-rational combination of decorated boundary-stratum classes of
    a fixed ambient generalized stratum."""

    def __init__(self, spec: StratumSpec,
                 terms: Mapping[tuple[lg.LevelGraph, Decor], Rational] | None = None):
        self.spec = spec
        self._dim = dimension(spec).projectivized
        self.terms: dict[tuple[lg.LevelGraph, Decor], Fraction] = {}
        if terms:
            for (g, d), c in terms.items():
                self.add_term(g, d, c)

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero(spec: StratumSpec) -> "TautClass":
        return TautClass(spec)

    @staticmethod
    def one(spec: StratumSpec) -> "TautClass":
        out = TautClass(spec)
        out.add_term(lg.trivial_graph(spec), (), 1)
        return out

    @staticmethod
    def xi(spec: StratumSpec, power: int = 1) -> "TautClass":
        out = TautClass(spec)
        out.add_term(lg.trivial_graph(spec), _decor({("xi", 0): power}), 1)
        return out

    @staticmethod
    def psi(spec: StratumSpec, point: Point, power: int = 1) -> "TautClass":
        out = TautClass(spec)
        out.add_term(lg.trivial_graph(spec),
                     _decor({("psi", ("leg", point)): power}), 1)
        return out

    @staticmethod
    def boundary(spec: StratumSpec, graph: lg.LevelGraph) -> "TautClass":
        out = TautClass(spec)
        out.add_term(graph, (), 1)
        return out

    def add_term(self, g: lg.LevelGraph, decor: Decor, coeff: Rational) -> None:
        coeff = Fraction(coeff)
        if not coeff:
            return
        # classes of degree above the dimension vanish
        if g.n_levels_below + decor_degree(decor) > self._dim:
            return
        key = canonical_decorated(g, decor)
        new = self.terms.get(key, Fraction(0)) + coeff
        if new:
            self.terms[key] = new
        else:
            self.terms.pop(key, None)

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "TautClass") -> "TautClass":
        if other.spec != self.spec:
            raise ValueError("mixed ambient strata")
        out = TautClass(self.spec, self.terms)
        for (g, d), c in other.terms.items():
            out.add_term(g, d, c)
        return out

    def __sub__(self, other: "TautClass") -> "TautClass":
        return self + other.scale(-1)

    def scale(self, c: Rational) -> "TautClass":
        out = TautClass(self.spec)
        for (g, d), x in self.terms.items():
            out.add_term(g, d, x * Fraction(c))
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def degree_part(self, k: int) -> "TautClass":
        """Terms of pure codimension k (graph depth plus decoration degree)."""
        out = TautClass(self.spec)
        for (g, d), c in self.terms.items():
            if g.n_levels_below + decor_degree(d) == k:
                out.add_term(g, d, c)
        return out

    def max_degree(self) -> int:
        return max((g.n_levels_below + decor_degree(d)
                    for (g, d) in self.terms), default=0)

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> list:
        out = []
        for (g, d), c in sorted(self.terms.items(),
                                key=lambda kv: lg.tuple_key((lg.canonical_encoding(kv[0][0]), kv[0][1]))):
            psi = {}
            other = {}
            for s, e in d:
                if s[0] == "psi":
                    psi[repr(s[1])] = e
                else:
                    other[f"{s[0]}[{s[1]}]"] = e
            out.append({"graph": repr(lg.canonical_encoding(g)),
                        "psi": psi, "classes": other,
                        "coeff": rational_str(c)})
        return out


# ---------------------------------------------------------------------------
# decoration transfer under one-step splits
# ---------------------------------------------------------------------------

def _transfer_under_split(decor: Decor, lev: int, edge_map: dict[int, int]) -> Poly:
    """Rewrite a decoration on Gamma as a polynomial on a one-step
    degeneration that splits the given level (levels below shift down)."""
    out = poly_one()
    for s, e in decor:
        if s[0] == "psi":
            tag = s[1]
            if tag[0] == "leg":
                sym = s
            else:
                sym = ("psi", (tag[0], edge_map[tag[1]]))
            out = poly_mul(out, {_decor({sym: e}): Fraction(1)})
        elif s[0] == "xi":
            x = s[1]
            nx = x if x >= lev else x - 1
            out = poly_mul(out, {_decor({("xi", nx): e}): Fraction(1)})
        elif s[0] == "lam":
            x = s[1]
            if x > lev:
                out = poly_mul(out, {_decor({("lam", x): e}): Fraction(1)})
            elif x < lev:
                out = poly_mul(out, {_decor({("lam", x - 1): e}): Fraction(1)})
            else:
                # restriction of the level class to a splitting of the level
                sub = {
                    _decor({("lam", lev - 1): 1}): Fraction(1),
                    _decor({("xi", lev - 1): 1}): Fraction(1),
                    _decor({("xi", lev): 1}): Fraction(-1),
                }
                out = poly_mul(out, poly_pow(sub, e))
        else:
            raise ValueError(f"unknown symbol {s}")
    return out


def _splits_deduped(g: lg.LevelGraph, spec: StratumSpec, lev: int,
                    base_decor: Decor):
    """One-step splits of a level, deduplicated by the isomorphism class of
    the split decorated with the transferred base decoration."""
    seen = {}
    for cand, emap in lg.split_level_decorated(g, spec, lev):
        marked = {}
        for s, e in base_decor:
            if s[0] == "psi" and s[1][0] != "leg":
                marked[("psi", (s[1][0], emap[s[1][1]]))] = e
            elif s == ("lam", lev):
                marked[("lamsplit", lev)] = e
            else:
                marked[s] = e
        key = canonical_decorated(cand, _decor(marked))
        if key not in seen:
            seen[key] = (cand, emap)
    return list(seen.values())


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------

def integrate_term(spec: StratumSpec, g: lg.LevelGraph, decor: Decor,
                   evaluator: Evaluator | None = None) -> Rational:
    """Integral over the ambient stratum of one decorated term."""
    ev = evaluator or default_evaluator()
    lam_syms = [s for s, e in decor if s[0] == "lam"]
    if lam_syms:
        lev = lam_syms[0][1]
        reduced = dict(decor)
        reduced[("lam", lev)] -= 1
        base = _decor(reduced)
        total = Fraction(0)
        for cand, emap in _splits_deduped(g, spec, lev, base):
            pdc = lg.prong_data(cand)
            ell_new = pdc.ell_levels[-lev]
            poly = _transfer_under_split(base, lev, emap)
            for d2, c2 in poly.items():
                if c2:
                    total += ell_new * c2 * integrate_term(spec, cand, d2, ev)
        return total
    # pure psi/xi decoration: product of level integrals
    pd = lg.prong_data(g)
    conds = lg.induced_conditions(g, spec)
    legv = g.leg_vertex()
    total = Fraction(pd.kappa_product, pd.aut_order * pd.ell)
    for lev in range(0, -g.n_levels_below - 1, -1):
        sub, pmap = lg.level_stratum(g, spec, lev, conds)
        tag_pos = {t: (cj, pj) for cj, tags in enumerate(pmap)
                   for pj, t in enumerate(tags)}
        psi: dict[Point, int] = {}
        xi = 0
        for s, e in decor:
            if s[0] == "xi":
                if s[1] == lev:
                    xi += e
            else:
                tag = s[1]
                if tag[0] == "leg":
                    at_level = g.levels[legv[tag[1]]] == lev
                elif tag[0] == "ein":
                    at_level = g.levels[g.edges[tag[1]][1]] == lev
                else:
                    at_level = g.levels[g.edges[tag[1]][0]] == lev
                if at_level:
                    pt = tag_pos[tag if tag[0] != "leg" else ("leg", tag[1])]
                    psi[pt] = psi.get(pt, 0) + e
        factor = ev.integral(sub, psi, xi)
        if not factor:
            return Fraction(0)
        total *= factor
    return total


def integrate(cls: TautClass, evaluator: Evaluator | None = None,
              top_only: bool = True) -> Rational:
    """Sum of the integrals of all (top-degree) terms; terms of lower
    degree integrate to zero by convention."""
    ev = evaluator or default_evaluator()
    d = dimension(cls.spec).projectivized
    total = Fraction(0)
    for (g, dec), c in cls.terms.items():
        if top_only and g.n_levels_below + decor_degree(dec) != d:
            continue
        total += c * integrate_term(cls.spec, g, dec, ev)
    return total


def evaluate_generator(spec: StratumSpec, g: lg.LevelGraph,
                       psi_exponents: Mapping[Symbol, int],
                       evaluator: Evaluator | None = None) -> Rational:
    """Integral of an additive generator: a graph decorated with per-level
    psi-monomials (keys are point tags as in the decoration symbols)."""
    decor = _decor({("psi", tag): e for tag, e in psi_exponents.items()})
    deg = g.n_levels_below + decor_degree(decor)
    if deg != dimension(spec).projectivized:
        raise ValueError("generator degree differs from ambient dimension")
    return integrate_term(spec, g, decor, evaluator)


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def _lam_normalize(cls: TautClass) -> TautClass:
    """Expand every lam-symbol into boundary generators."""
    out = TautClass(cls.spec)
    queue = list(cls.terms.items())
    while queue:
        (g, decor), coeff = queue.pop()
        lam_syms = [s for s, e in decor if s[0] == "lam"]
        if not lam_syms:
            out.add_term(g, decor, coeff)
            continue
        lev = lam_syms[0][1]
        reduced = dict(decor)
        reduced[("lam", lev)] -= 1
        base = _decor(reduced)
        for cand, emap in _splits_deduped(g, cls.spec, lev, base):
            pdc = lg.prong_data(cand)
            ell_new = pdc.ell_levels[-lev]
            poly = _transfer_under_split(base, lev, emap)
            for d2, c2 in poly.items():
                queue.append(((cand, d2), coeff * ell_new * c2))
    return out


def _block_xi_level(part_levels: list[int], xi_level: int) -> int:
    """Top fine level of the block of merged levels indexed by a coarse
    xi-level: part_levels[i] is the coarse level of fine level -i."""
    for fine, coarse in enumerate(part_levels):
        if coarse == xi_level:
            return -fine
    raise ValueError("coarse level not found")


def _transfer_from_undegeneration(decor: Decor, fine: lg.LevelGraph,
                                  coarse_levels: list[int],
                                  edge_corr: dict[int, int]) -> Decor:
    """Rewrite a lam-free decoration living on a coarse undegeneration of
    ``fine`` as a decoration on ``fine``.

    coarse_levels[j] is the coarse level of fine level -j; edge_corr maps
    coarse edge indices to fine edge indices.
    """
    nd: dict[Symbol, int] = {}
    for s, e in decor:
        if s[0] == "psi":
            tag = s[1]
            if tag[0] == "leg":
                sym = s
            else:
                sym = ("psi", (tag[0], edge_corr[tag[1]]))
        elif s[0] == "xi":
            sym = ("xi", _block_xi_level(coarse_levels, s[1]))
        else:
            raise ValueError("lam in transfer; normalize first")
        nd[sym] = nd.get(sym, 0) + e
    return _decor(nd)


def _undegeneration_structures(fine: lg.LevelGraph, passages: tuple[int, ...],
                               coarse: lg.LevelGraph):
    """All ways delta_I(fine) is isomorphic to ``coarse``: yields
    (coarse_levels, edge correspondence coarse index -> fine index)."""
    contracted, emap = lg.undegenerate_with_edgemap(fine, passages)
    inv = {}
    for old, new in emap.items():
        inv[new] = old
    out = []
    for vmap, iso_emap in lg.graph_isomorphisms(coarse, contracted):
        edge_corr = {ce: inv[iso_emap[ce]] for ce in range(len(coarse.edges))}
        keep = sorted(set(passages))
        levels = [-sum(1 for i in keep if -j <= -i)
                  for j in range(fine.n_levels_below + 1)]
        out.append((levels, edge_corr))
    return out


def multiply_term_by_bounded(spec: StratumSpec, g1: lg.LevelGraph, d1: Decor,
                             g2: lg.LevelGraph, d2: Decor) -> TautClass:
    """Product of a decorated term with a lam-free generator, by the excess
    intersection formula."""
    out = TautClass(spec)
    L1, L2 = g1.n_levels_below, g2.n_levels_below
    if L2 == 0:
        nd = dict(d1)
        for s, e in d2:
            if s[0] == "psi":
                sym = s
            elif s[0] == "xi":
                sym = ("xi", 0)
            else:
                raise ValueError("lam in product operand")
            nd[sym] = nd.get(sym, 0) + e
        out.add_term(g1, _decor(nd), 1)
        return out
    d_amb = dimension(spec).projectivized
    for c in range(0, min(L1, L2) + 1):
        L = L1 + L2 - c
        if L > d_amb:
            continue
        candidates = _degenerations_of(spec, g1, d1, L - L1)
        for fine, fine_decor, i1 in candidates:
            passage_sets = [s for s in itertools.combinations(range(1, L + 1), L2)
                            if set(s) | set(i1) == set(range(1, L + 1))
                            and len(set(s) & set(i1)) == c]
            for i2 in passage_sets:
                structs = _undegeneration_structures(fine, i2, g2)
                if not structs:
                    continue
                weight = Fraction(1, len(structs))
                for levels, ecorr in structs:
                    td = _transfer_from_undegeneration(d2, fine, levels, ecorr)
                    nu = poly_one()
                    for k in set(i1) & set(i2):
                        nu = poly_mul(nu, nu_poly(fine, k))
                    for dd, cc in poly_mul(
                            {_dmul(fine_decor, td): Fraction(1)}, nu).items():
                        out.add_term(fine, dd, cc * weight)
    return out


def _degenerations_of(spec: StratumSpec, g: lg.LevelGraph, decor: Decor,
                      extra: int):
    """Iterated one-step splits of g with transferred decoration; returns
    (graph, decoration, original passage positions) triples, deduplicated
    by decorated isomorphism class.

    The original passages of g are tracked through the splits so the caller
    can distinguish old from new level passages.
    """
    start_passages = tuple(range(1, g.n_levels_below + 1))
    current = {canonical_decorated(g, decor): (g, decor, start_passages)}
    for _ in range(extra):
        nxt: dict = {}
        for graph, dec, passages in current.values():
            if any(s[0] == "lam" for s, _ in dec):
                raise ValueError("lam in degeneration search; normalize first")
            for lev in range(0, -graph.n_levels_below - 1, -1):
                for cand, emap in lg.split_level_decorated(graph, spec, lev):
                    poly = _transfer_under_split(dec, lev, emap)
                    new_passages = tuple(p if -p + 1 > lev else p + 1
                                         for p in passages)
                    for dd, cc in poly.items():
                        if cc != 1:
                            raise ValueError("unexpected transfer coefficient")
                        key = (canonical_decorated(cand, dd), new_passages)
                        if key not in nxt:
                            nxt[key] = (cand, dd, new_passages)
        current = nxt
    return list(current.values())


def multiply(a: TautClass, b: TautClass, evaluator: Evaluator | None = None) -> TautClass:
    """Excess-intersection product of two tautological classes."""
    if a.spec != b.spec:
        raise ValueError("mixed ambient strata")
    an = _lam_normalize(a)
    bn = _lam_normalize(b)
    out = TautClass(a.spec)
    for (g1, d1), c1 in an.terms.items():
        for (g2, d2), c2 in bn.terms.items():
            part = multiply_term_by_bounded(a.spec, g1, d1, g2, d2)
            for (gg, dd), cc in part.terms.items():
                out.add_term(gg, dd, cc * c1 * c2)
    return out


# ---------------------------------------------------------------------------
# named classes
# ---------------------------------------------------------------------------

def xi_as_psi(spec: StratumSpec, point: Point) -> TautClass:
    """xi = (m+1) psi_p  -  sum over divisors with p on the lower level of
    ell_Gamma [D_Gamma]."""
    require_valid(spec)
    m = spec.order(point)
    out = TautClass.psi(spec, point).scale(m + 1)
    for g in lg.enumerate_LG1(spec):
        if g.levels[g.leg_vertex()[point]] == -1:
            out.add_term(g, (), -lg.prong_data(g).ell)
    return out


def normal_bundle(spec: StratumSpec, g: lg.LevelGraph, passage: int) -> TautClass:
    """c1 of the normal bundle of D_Gamma inside the boundary stratum where
    the given passage is undone, as a class supported on D_Gamma."""
    out = TautClass(spec)
    for d, c in nu_poly(g, passage).items():
        out.add_term(g, d, c)
    return out


def normal_bundle_via_edge(spec: StratumSpec, g: lg.LevelGraph, edge: int) -> TautClass:
    """The divisor normal bundle computed through one edge: psi-classes at
    the two edge branches plus a correction over the strata where the edge
    becomes long.

    When the divisor has automorphisms moving the edge, the long-edge locus
    is a fraction of the full boundary stratum: each degeneration is
    weighted by the proportion of its labeled splittings in which the
    chosen edge spans all three levels.
    """
    if g.n_levels_below != 1:
        raise ValueError("edge route applies to divisors only")
    pd = lg.prong_data(g)
    kappa = g.edges[edge][2]
    out = TautClass(spec)
    out.add_term(g, _decor({("psi", ("eout", edge)): 1}), Fraction(-kappa, pd.ell))
    out.add_term(g, _decor({("psi", ("ein", edge)): 1}), Fraction(-kappa, pd.ell))
    counts: dict[tuple, list] = {}
    for lev in (0, -1):
        labeled: dict[tuple, tuple] = {}
        for cand, emap in lg.split_level_decorated(g, spec, lev):
            # pin the old edges with unique marker exponents so labeled
            # splittings are distinguished exactly up to isomorphism
            marks = {("psi", ("ein", emap[ei])): 1000 + ei for ei in emap}
            lab_key = canonical_decorated(cand, _decor(marks))
            if lab_key not in labeled:
                labeled[lab_key] = (cand, emap)
        for cand, emap in labeled.values():
            enc = lg.canonical_encoding(cand)
            ei = emap[edge]
            u, v, _ = cand.edges[ei]
            is_long = cand.levels[u] == 0 and cand.levels[v] == -2
            rec = counts.setdefault(enc, [cand, lev, 0, 0])
            rec[3] += 1
            if is_long:
                rec[2] += 1
    for cand, lev, n_long, n_total in counts.values():
        if not n_long:
            continue
        a = 1 if lev == 0 else 2
        ell_a = lg.prong_data(cand).ell_levels[a - 1]
        out.add_term(cand, (), Fraction(-ell_a * n_long, pd.ell * n_total))
    return out


def remove_residue_condition(spec: StratumSpec, part: ResiduePart) -> TautClass:
    """The class of the residue-constrained stratum inside the stratum
    without the chosen part.  Returns the fundamental class when dropping
    the part does not change the dimension."""
    require_valid(spec)
    if part not in spec.residue_parts or not part.constrained:
        raise ValueError("part is not a constrained part of the spec")
    spec0 = spec.drop_part(part)
    if dimension(spec0).projectivized == dimension(spec).projectivized:
        return TautClass.one(spec0)
    out = TautClass.xi(spec0).scale(-1)
    for g in removal_divisors(spec0, part):
        out.add_term(g, (), -lg.prong_data(g).ell)
    return out
