"""Enhanced level graphs indexing the boundary strata of a generalized
stratum: enumeration, canonical labeling, undegeneration, prong arithmetic,
and the induced generalized strata on the individual levels.

Conventions.  Levels are 0, -1, ..., -L; level passage i (1 <= i <= L) sits
between levels -i+1 and -i.  Non-horizontal edges carry an enhancement
kappa >= 1 and always descend strictly.  Marked points are labeled; graph
automorphisms fix every leg.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .exact import lcm_list, orbit_count
from .strata import Point, ResiduePart, SpecError, StratumSpec, dimension, forced_zero_residues, require_valid

# point tags inside a level stratum
LegTag = tuple  # ("leg", Point) | ("ein", edge index) | ("eout", edge index)


@dataclass(frozen=True)
class LevelGraph:
    """An enhanced level graph over a fixed ambient stratum.

    genera[v], levels[v] per vertex; legs maps each ambient marked point to
    its vertex; edges are (upper vertex, lower vertex, kappa).
    """

    genera: tuple[int, ...]
    levels: tuple[int, ...]
    legs: tuple[tuple[Point, int], ...]
    edges: tuple[tuple[int, int, int], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    @property
    def n_levels_below(self) -> int:
        return -min(self.levels) if self.levels else 0

    def leg_vertex(self) -> dict[Point, int]:
        return dict(self.legs)

    def vertices_at(self, level: int) -> list[int]:
        return [v for v in range(self.n_vertices) if self.levels[v] == level]

    def is_trivial(self) -> bool:
        return self.n_levels_below == 0


@dataclass(frozen=True)
class ProngData:
    ell_levels: tuple[int, ...]  # lcm of kappas over each level passage
    ell: int                     # product of the per-passage lcms
    kappa_product: int           # K: product of kappas over all edges
    orbits: int                  # g: prong-matching equivalence classes
    twist_index: int             # e = [Tw : Tw^s]
    aut_order: int


class EnumerationError(RuntimeError):
    """Internal-consistency failure during graph enumeration."""


# ---------------------------------------------------------------------------
# canonical labeling
# ---------------------------------------------------------------------------

def _vertex_keys(g: LevelGraph) -> list[tuple]:
    legs_of: dict[int, list[Point]] = {v: [] for v in range(g.n_vertices)}
    for pt, v in g.legs:
        legs_of[v].append(pt)
    keys = [(g.levels[v], g.genera[v], tuple(sorted(legs_of[v])))
            for v in range(g.n_vertices)]
    # Weisfeiler-Lehman style refinement with edge profiles
    for _ in range(g.n_vertices):
        prof: list[list] = [[] for _ in range(g.n_vertices)]
        for (u, v, k) in g.edges:
            prof[u].append((1, k, keys[v]))
            prof[v].append((-1, k, keys[u]))
        new = [(keys[v], tuple(sorted(prof[v]))) for v in range(g.n_vertices)]
        if len(set(new)) == len(set(keys)):
            keys = new
            break
        keys = new
    return keys


def _encode(g: LevelGraph, order: Sequence[int]) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    verts = tuple((g.levels[v], g.genera[v]) for v in order)
    legs = tuple(sorted((pt, pos[v]) for pt, v in g.legs))
    edges = tuple(sorted((pos[u], pos[v], k) for (u, v, k) in g.edges))
    return (verts, legs, edges)


_CANON_CACHE: dict[LevelGraph, tuple] = {}


def canonical_encoding(g: LevelGraph) -> tuple:
    """A complete isomorphism invariant: minimal encoding over all vertex
    orderings compatible with the refined invariant classes."""
    hit = _CANON_CACHE.get(g)
    if hit is not None:
        return hit
    keys = _vertex_keys(g)
    groups: dict[tuple, list[int]] = {}
    for v in range(g.n_vertices):
        groups.setdefault(tuple_key(keys[v]), []).append(v)
    ordered_groups = [groups[k] for k in sorted(groups)]
    best = None
    for perm_choices in itertools.product(
            *[itertools.permutations(grp) for grp in ordered_groups]):
        order = [v for grp in perm_choices for v in grp]
        enc = _encode(g, order)
        if best is None or enc < best:
            best = enc
    assert best is not None
    _CANON_CACHE[g] = best
    return best


def tuple_key(x) -> tuple:
    """Stable sort key for nested heterogeneous tuples."""
    if isinstance(x, tuple):
        return tuple(tuple_key(y) for y in x)
    if isinstance(x, (int, str)):
        return (type(x).__name__, x)
    return (type(x).__name__, repr(x))


def canonicalize(g: LevelGraph) -> LevelGraph:
    verts, legs, edges = canonical_encoding(g)
    return LevelGraph(tuple(v[1] for v in verts), tuple(v[0] for v in verts),
                      legs, edges)


_AUT_CACHE: dict[LevelGraph, int] = {}


def automorphism_order(g: LevelGraph) -> int:
    """Order of the automorphism group fixing all legs and preserving
    levels, genera and enhancements.  Counts vertex bijections times the
    permutations of parallel edges of equal enhancement."""
    hit = _AUT_CACHE.get(g)
    if hit is not None:
        return hit
    keys = _vertex_keys(g)
    groups: dict[tuple, list[int]] = {}
    for v in range(g.n_vertices):
        groups.setdefault(tuple_key(keys[v]), []).append(v)

    mult: dict[tuple[int, int, int], int] = {}
    for e in g.edges:
        mult[e] = mult.get(e, 0) + 1

    count = 0
    group_list = list(groups.values())
    for perm_choices in itertools.product(
            *[itertools.permutations(grp) for grp in group_list]):
        sigma: dict[int, int] = {}
        for grp, perm in zip(group_list, perm_choices):
            for a, b in zip(grp, perm):
                sigma[a] = b
        image: dict[tuple[int, int, int], int] = {}
        for (u, v, k), m in mult.items():
            key = (sigma[u], sigma[v], k)
            image[key] = image.get(key, 0) + m
        if image == mult:
            count += 1
    par = 1
    for m in mult.values():
        for j in range(2, m + 1):
            par *= j
    _AUT_CACHE[g] = count * par
    return count * par


# ---------------------------------------------------------------------------
# prong arithmetic
# ---------------------------------------------------------------------------

def _crossing_matrix(g: LevelGraph) -> list[list[int]]:
    """0/1 rows (one per level passage) marking the edges crossing it."""
    L = g.n_levels_below
    rows = []
    for i in range(1, L + 1):
        rows.append([1 if (g.levels[u] >= -i + 1 and g.levels[v] <= -i) else 0
                     for (u, v, _) in g.edges])
    return rows


_PRONG_CACHE: dict[LevelGraph, ProngData] = {}


def prong_data(g: LevelGraph) -> ProngData:
    hit = _PRONG_CACHE.get(g)
    if hit is not None:
        return hit
    L = g.n_levels_below
    kappas = [k for (_, _, k) in g.edges]
    if any(k < 1 for k in kappas):
        raise SpecError("horizontal edges have no prong data")
    rows = _crossing_matrix(g)
    ells = tuple(lcm_list([k for k, flag in zip(kappas, row) if flag]) if any(row) else 1
                 for row in rows)
    ell = 1
    for x in ells:
        ell *= x
    bigk = 1
    for k in kappas:
        bigk *= k
    orbits = orbit_count(kappas, rows) if kappas else 1
    # e = [Tw : Tw^s] = [R : Tw^s] / [R : Tw] = prod(ell_i) * orbits / K
    twist = ell * orbits // bigk if bigk else 1
    assert L == 0 or ell * orbits % bigk == 0
    out = ProngData(ells, ell, bigk, orbits, twist, automorphism_order(g))
    _PRONG_CACHE[g] = out
    return out


# ---------------------------------------------------------------------------
# undegeneration
# ---------------------------------------------------------------------------

def undegenerate(g: LevelGraph, passages: Iterable[int]) -> LevelGraph:
    """delta_I: contract every level passage outside I and renormalize.

    I = {1..L} is the identity; I = {} collapses to the trivial graph.
    """
    keep = sorted(set(passages))
    L = g.n_levels_below
    if any(i < 1 or i > L for i in keep):
        raise ValueError("passage index out of range")

    def new_level(old: int) -> int:
        return -sum(1 for i in keep if old <= -i)

    nl = [new_level(x) for x in g.levels]
    # union-find over contracted edges
    parent = list(range(g.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    contracted = []
    for (u, v, k) in g.edges:
        if nl[u] == nl[v]:
            contracted.append((u, v))
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    reps = sorted({find(v) for v in range(g.n_vertices)})
    idx = {r: i for i, r in enumerate(reps)}
    genera = [0] * len(reps)
    counts = [0] * len(reps)
    for v in range(g.n_vertices):
        genera[idx[find(v)]] += g.genera[v]
        counts[idx[find(v)]] += 1
    loops = [0] * len(reps)
    for (u, v) in contracted:
        loops[idx[find(u)]] += 1
    for i in range(len(reps)):
        genera[i] += loops[i] - (counts[i] - 1)
    levels = tuple(nl[r] for r in reps)
    legs = tuple(sorted((pt, idx[find(v)]) for pt, v in g.legs))
    edges = tuple(sorted((idx[find(u)], idx[find(v)], k)
                         for (u, v, k) in g.edges if nl[u] != nl[v]))
    return canonicalize(LevelGraph(tuple(genera), levels, legs, edges))


def delta(g: LevelGraph, i: int) -> LevelGraph:
    """The i-th two-level undegeneration."""
    return undegenerate(g, [i])


def undegenerate_with_edgemap(g: LevelGraph, passages: Iterable[int]
                              ) -> tuple[LevelGraph, dict[int, int]]:
    """Like :func:`undegenerate` but uncanonicalized, returning the map
    from surviving old edge indices to new edge indices."""
    keep = sorted(set(passages))
    L = g.n_levels_below

    def new_level(old: int) -> int:
        return -sum(1 for i in keep if old <= -i)

    nl = [new_level(x) for x in g.levels]
    parent = list(range(g.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    contracted = []
    for (u, v, k) in g.edges:
        if nl[u] == nl[v]:
            contracted.append((u, v))
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    reps = sorted({find(v) for v in range(g.n_vertices)})
    idx = {r: i for i, r in enumerate(reps)}
    genera = [0] * len(reps)
    counts = [0] * len(reps)
    for v in range(g.n_vertices):
        genera[idx[find(v)]] += g.genera[v]
        counts[idx[find(v)]] += 1
    for (u, v) in contracted:
        genera[idx[find(u)]] += 1
    for i in range(len(reps)):
        genera[i] -= counts[i] - 1
    levels = tuple(nl[r] for r in reps)
    legs = tuple(sorted((pt, idx[find(v)]) for pt, v in g.legs))
    edges = []
    edge_map: dict[int, int] = {}
    for ei, (u, v, k) in enumerate(g.edges):
        if nl[u] != nl[v]:
            edge_map[ei] = len(edges)
            edges.append((idx[find(u)], idx[find(v)], k))
    return LevelGraph(tuple(genera), levels, legs, tuple(edges)), edge_map


def graph_isomorphisms(a: LevelGraph, b: LevelGraph
                       ) -> list[tuple[dict[int, int], dict[int, int]]]:
    """All isomorphisms a -> b (fixing legs, preserving level, genus and
    enhancement) as (vertex map, edge index map) pairs."""
    if canonical_encoding(a) != canonical_encoding(b):
        return []
    a_keys = [tuple_key(k) for k in _vertex_keys(a)]
    b_keys = [tuple_key(k) for k in _vertex_keys(b)]
    b_by_key: dict[tuple, list[int]] = {}
    for v, k in enumerate(b_keys):
        b_by_key.setdefault(k, []).append(v)
    out = []
    groups: dict[tuple, list[int]] = {}
    for v, k in enumerate(a_keys):
        groups.setdefault(k, []).append(v)
    keys_sorted = sorted(groups)
    if any(len(groups[k]) != len(b_by_key.get(k, [])) for k in keys_sorted):
        return []

    b_edge_groups: dict[tuple[int, int, int], list[int]] = {}
    for ei, e in enumerate(b.edges):
        b_edge_groups.setdefault(e, []).append(ei)

    for choice in itertools.product(
            *[itertools.permutations(b_by_key[k]) for k in keys_sorted]):
        vmap: dict[int, int] = {}
        for k, perm in zip(keys_sorted, choice):
            for av, bv in zip(groups[k], perm):
                vmap[av] = bv
        a_edge_groups: dict[tuple[int, int, int], list[int]] = {}
        for ei, (u, v, kk) in enumerate(a.edges):
            a_edge_groups.setdefault((vmap[u], vmap[v], kk), []).append(ei)
        if {k: len(v) for k, v in a_edge_groups.items()} != \
                {k: len(v) for k, v in b_edge_groups.items()}:
            continue
        # one edge matching per parallel-class permutation
        class_keys = sorted(a_edge_groups, key=tuple_key)
        for eperm in itertools.product(
                *[itertools.permutations(b_edge_groups[k]) for k in class_keys]):
            emap: dict[int, int] = {}
            for k, perm in zip(class_keys, eperm):
                for ae, be in zip(a_edge_groups[k], perm):
                    emap[ae] = be
            out.append((vmap, emap))
    return out


# ---------------------------------------------------------------------------
# level strata and induced residue conditions
# ---------------------------------------------------------------------------

def _constrained_part_of(spec: StratumSpec) -> dict[Point, frozenset[Point]]:
    out: dict[Point, frozenset[Point]] = {}
    for part in spec.constrained_parts():
        for pt in part.points:
            out[pt] = part.points
    return out


_COND_CACHE: dict[tuple[LevelGraph, StratumSpec], dict] = {}


def induced_conditions(g: LevelGraph, spec: StratumSpec) -> dict[int, list[frozenset[LegTag]]]:
    """Residue conditions induced on each level by the residue-condition
    variant of the global residue condition.

    For every level and every connected component Y of the auxiliary graph
    above it (graph vertices plus one node per constrained part, joined to
    the vertices carrying its points), unless Y contains a pole with a free
    residue, the residues at the ends of edges descending from Y to this
    exact level sum to zero.
    """
    hit = _COND_CACHE.get((g, spec))
    if hit is not None:
        return hit
    part_of = _constrained_part_of(spec)
    legv = g.leg_vertex()
    vert_legs: dict[int, list[Point]] = {v: [] for v in range(g.n_vertices)}
    for pt, v in g.legs:
        vert_legs[v].append(pt)
    parts = list({p for p in part_of.values()})
    parts.sort(key=lambda s: sorted(s))

    out: dict[int, list[frozenset[LegTag]]] = {}
    levels_present = sorted(set(g.levels), reverse=True)
    n = g.n_vertices
    for lev in levels_present:
        # auxiliary nodes: vertices above lev (ids 0..n-1) and parts (n+j)
        included = [v for v in range(n) if g.levels[v] > lev]
        nodes = set(included) | {n + j for j in range(len(parts))}
        parent = {x: x for x in nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for (u, v, _) in g.edges:
            if u in parent and v in parent:
                union(u, v)
        for j, pts in enumerate(parts):
            for pt in pts:
                v = legv[pt]
                if g.levels[v] > lev:
                    union(n + j, v)
        comps: dict[int, dict] = {}
        for x in nodes:
            comps.setdefault(find(x), {"verts": [], "parts": []})
            if x < n:
                comps[find(x)]["verts"].append(x)
            else:
                comps[find(x)]["parts"].append(x - n)
        for comp in comps.values():
            escape = False
            for v in comp["verts"]:
                for pt in vert_legs[v]:
                    m = spec.order(pt)
                    if m >= 0:
                        continue
                    if m == -1 or pt not in part_of or len(part_of[pt]) >= 2:
                        escape = True
                        break
                if escape:
                    break
            if escape:
                continue
            cond: set[LegTag] = set()
            for ei, (u, v, _) in enumerate(g.edges):
                if u in comp["verts"] and g.levels[v] == lev:
                    cond.add(("ein", ei))
            for j in comp["parts"]:
                for pt in parts[j]:
                    if g.levels[legv[pt]] == lev:
                        cond.add(("leg", pt))
            if cond:
                out.setdefault(lev, []).append(frozenset(cond))
    _COND_CACHE[(g, spec)] = out
    return out


def level_stratum(g: LevelGraph, spec: StratumSpec, lev: int,
                  conditions: dict[int, list[frozenset[LegTag]]] | None = None,
                  ) -> tuple[StratumSpec, list[list[LegTag]]]:
    """The generalized stratum at a level of the graph.

    Returns the spec (one component per vertex at the level) and the point
    map: point_map[component][point index] is the tag of that marked point
    (an ambient leg, an incoming edge pole, or an outgoing edge zero).
    """
    verts = g.vertices_at(lev)
    if not verts:
        raise ValueError(f"no vertices at level {lev}")
    if conditions is None:
        conditions = induced_conditions(g, spec)
    vert_legs: dict[int, list[Point]] = {v: [] for v in verts}
    for pt, v in g.legs:
        if v in vert_legs:
            vert_legs[v].append(pt)
    comps: list[tuple[int, tuple[int, ...]]] = []
    point_map: list[list[LegTag]] = []
    tag_pos: dict[LegTag, Point] = {}
    for cj, v in enumerate(verts):
        tags: list[LegTag] = [("leg", pt) for pt in sorted(vert_legs[v])]
        tags += [("ein", ei) for ei, (u, w, k) in enumerate(g.edges) if w == v]
        tags += [("eout", ei) for ei, (u, w, k) in enumerate(g.edges) if u == v]
        orders = []
        for t in tags:
            if t[0] == "leg":
                orders.append(spec.order(t[1]))
            elif t[0] == "ein":
                orders.append(-g.edges[t[1]][2] - 1)
            else:
                orders.append(g.edges[t[1]][2] - 1)
        for pj, t in enumerate(tags):
            tag_pos[t] = (cj, pj)
        comps.append((g.genera[v], tuple(orders)))
        point_map.append(tags)
    parts = []
    for cond in conditions.get(lev, ()):
        pts = frozenset(tag_pos[t] for t in cond)
        parts.append(ResiduePart(pts, True))
    return StratumSpec(tuple(comps), tuple(parts)), point_map


def level_dims(g: LevelGraph, spec: StratumSpec) -> list[tuple[int, int]]:
    """Per-level (projectivized, unprojectivized) dimensions, top first."""
    conds = induced_conditions(g, spec)
    out = []
    for lev in range(0, -g.n_levels_below - 1, -1):
        sub, _ = level_stratum(g, spec, lev, conds)
        dd = dimension(sub)
        out.append((dd.projectivized, dd.unprojectivized))
    return out


# ---------------------------------------------------------------------------
# realizability
# ---------------------------------------------------------------------------

def _structural_issues(g: LevelGraph, spec: StratumSpec) -> list[str]:
    issues = []
    legv = g.leg_vertex()
    if set(legv) != set(spec.points()):
        issues.append("legs do not match spec points")
    # per-vertex degree and stability
    special = [0] * g.n_vertices
    degsum = [0] * g.n_vertices
    for pt, v in g.legs:
        special[v] += 1
        degsum[v] += spec.order(pt)
    for (u, v, k) in g.edges:
        if k < 1:
            issues.append("nonpositive enhancement")
        if g.levels[u] <= g.levels[v]:
            issues.append("edge does not descend")
        special[u] += 1
        special[v] += 1
        degsum[u] += k - 1
        degsum[v] += -k - 1
    for v in range(g.n_vertices):
        if degsum[v] != 2 * g.genera[v] - 2:
            issues.append(f"vertex {v}: degree equation fails")
        if 2 * g.genera[v] - 2 + special[v] <= 0:
            issues.append(f"vertex {v}: unstable")
    L = g.n_levels_below
    for lev in range(0, -L - 1, -1):
        if not g.vertices_at(lev):
            issues.append(f"level {lev} empty")
    # connectivity and genus per ambient component
    parent = list(range(g.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v, _) in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    comp_of_piece: dict[int, int] = {}
    for pt, v in g.legs:
        r = find(v)
        if r in comp_of_piece and comp_of_piece[r] != pt[0]:
            issues.append("a connected piece carries legs of two components")
        comp_of_piece[r] = pt[0]
    pieces: dict[int, list[int]] = {}
    for v in range(g.n_vertices):
        pieces.setdefault(find(v), []).append(v)
    if len(pieces) != spec.n_components:
        issues.append("piece count differs from component count")
    for r, vs in pieces.items():
        if r not in comp_of_piece:
            issues.append("piece without legs")
            continue
        ci = comp_of_piece[r]
        ne = sum(1 for (u, v, _) in g.edges if find(u) == r)
        btotal = sum(g.genera[v] for v in vs) + ne - (len(vs) - 1)
        if btotal != spec.components[ci][0]:
            issues.append(f"piece of component {ci}: genus mismatch")
    return issues


def _genus0_zero_residue_ok(sub: StratumSpec, cj: int, forced: set[Point]) -> bool:
    """Existence of a differential on a genus-0 component all of whose pole
    residues vanish.  Zero residues on a rational curve force an exact
    differential; with poles of orders p_i the antiderivative has degree
    d = sum(p_i - 1), and a marked zero of order a needs a <= d - 1 when
    there are at least two poles.  Exact for <= 2 poles, a necessary
    condition only for more.
    """
    genus, orders = sub.components[cj]
    if genus != 0:
        return True
    poles = [-o for o in orders if o < 0]
    zero_pts = [o for o in orders if o > 0]
    np_ = len(poles)
    if np_ == 0:
        return False  # genus 0 needs a pole; unreachable for valid specs
    pole_pts = [(cj, pj) for pj, o in enumerate(orders) if o < 0]
    if not all(pt in forced for pt in pole_pts):
        return True
    d = sum(p - 1 for p in poles)
    if np_ == 1:
        return True
    return all(a <= d - 1 for a in zero_pts)


def realizability_issues(g: LevelGraph, spec: StratumSpec) -> list[str]:
    """Full realizability predicate: structural invariants, nonnegative
    level dimensions, no simple pole with identically vanishing residue,
    and the genus-0 zero-residue obstruction."""
    issues = _structural_issues(g, spec)
    if issues:
        return issues
    conds = induced_conditions(g, spec)
    nsum = 0
    for lev in range(0, -g.n_levels_below - 1, -1):
        sub, _ = level_stratum(g, spec, lev, conds)
        dd = dimension(sub)
        nsum += dd.unprojectivized
        if dd.projectivized < 0:
            issues.append(f"level {lev}: negative dimension")
            continue
        forced = forced_zero_residues(sub)
        for pt in forced:
            if sub.order(pt) == -1:
                issues.append(f"level {lev}: simple pole with zero residue")
        for cj in range(sub.n_components):
            if not _genus0_zero_residue_ok(sub, cj, forced):
                issues.append(f"level {lev}: genus-0 zero-residue obstruction")
    if not issues:
        total = dimension(spec).unprojectivized
        if nsum != total:
            raise EnumerationError(
                f"level dimension sum {nsum} != stratum dimension {total}")
    return issues


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def trivial_graph(spec: StratumSpec) -> LevelGraph:
    legs = tuple(sorted((pt, pt[0]) for pt in spec.points()))
    return LevelGraph(tuple(g for g, _ in spec.components),
                      tuple(0 for _ in spec.components), legs, ())


@lru_cache(maxsize=None)
def _kappa_bundles(s: int, max_edges: int) -> tuple[tuple[int, ...], ...]:
    """Multisets (kappa_1 >= kappa_2 >= ...) with sum(kappa_i + 1) == s."""
    out = []

    def rec(remaining, maxk, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if len(acc) >= max_edges:
            return
        k = min(maxk, remaining - 1)
        while k >= 1:
            rec(remaining - k - 1, k, acc + [k])
            k -= 1

    rec(s, s, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _piece_splits_by_orders(genus: int, orders: tuple[int, ...]):
    """Connected two-level splittings of one smooth surface piece, with
    legs referenced by index into ``orders``.

    Returns tuples (tops, bots, edges): tops/bots are ((genus, leg index
    tuple), ...) and edges (top slot, bottom slot, kappa).  Stability caps
    the vertex count at n + 2*genus - 2.
    """
    n = len(orders)
    max_v = n + 2 * genus - 2
    results = []
    for V in range(2, max_v + 1):
        for t in range(1, V):
            b = V - t
            for gvec in _genus_vectors_up_to(genus, V):
                b1 = genus - sum(gvec)
                E = b1 + V - 1
                if E < max(t, b):
                    continue
                for assign in itertools.product(range(V), repeat=n):
                    legsum = [0] * V
                    legct = [0] * V
                    for li, slot in enumerate(assign):
                        legsum[slot] += orders[li]
                        legct[slot] += 1
                    # bottom vertices: sum over edges of (kappa+1) is fixed
                    svals = [legsum[t + i] + 2 - 2 * gvec[t + i] for i in range(b)]
                    if any(s < 2 for s in svals) or sum(svals) < 2 * E:
                        continue
                    need = [2 * gvec[i] - 2 - legsum[i] for i in range(t)]
                    if any(x < 0 for x in need) or sum(svals) - 2 * E != sum(need):
                        continue
                    bundle_opts = [_kappa_bundles(s, E) for s in svals]
                    for bundles in itertools.product(*bundle_opts):
                        if sum(len(bl) for bl in bundles) != E:
                            continue
                        if any(2 * gvec[t + i] - 2 + legct[t + i] + len(bundles[i]) <= 0
                               for i in range(b)):
                            continue
                        edge_list = [(bi, k) for bi, bl in enumerate(bundles)
                                     for k in bl]
                        for tops in itertools.product(range(t), repeat=E):
                            ksum = [0] * t
                            deg = [0] * t
                            for (bi, k), ti in zip(edge_list, tops):
                                ksum[ti] += k - 1
                                deg[ti] += 1
                            if any(deg[i] == 0 or ksum[i] != need[i]
                                   or 2 * gvec[i] - 2 + legct[i] + deg[i] <= 0
                                   for i in range(t)):
                                continue
                            edges = tuple((ti, bi, k)
                                          for (bi, k), ti in zip(edge_list, tops))
                            if not _split_connected(t, b, edges):
                                continue
                            tops_data = tuple(
                                (gvec[i], tuple(li for li, s in enumerate(assign) if s == i))
                                for i in range(t))
                            bots_data = tuple(
                                (gvec[t + i], tuple(li for li, s in enumerate(assign) if s == t + i))
                                for i in range(b))
                            results.append((tops_data, bots_data, edges))
    return tuple(results)


def _piece_splits(genus: int, legs: list[tuple[LegTag, int]]):
    """Connected two-level splittings of one smooth surface piece.

    legs: (tag, order) pairs.  Returns (tops, bots, edges) with tops/bots
    lists of (genus, leg tag list) and edges (ti, bi, kappa).
    """
    orders = tuple(o for _, o in legs)
    out = []
    for tops_data, bots_data, edges in _piece_splits_by_orders(genus, orders):
        tops = [(gv, [legs[li][0] for li in lis]) for gv, lis in tops_data]
        bots = [(gv, [legs[li][0] for li in lis]) for gv, lis in bots_data]
        out.append((tops, bots, list(edges)))
    return out


def _genus_vectors_up_to(total: int, nv: int):
    """Genus assignments with sum <= total; the difference goes to the
    first Betti number of the local graph."""
    if nv == 0:
        yield ()
        return
    for g0 in range(total + 1):
        for rest in _genus_vectors_up_to(total - g0, nv - 1):
            yield (g0,) + rest


def _split_connected(t: int, b: int, edges: list[tuple[int, int, int]]) -> bool:
    parent = list(range(t + b))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (ti, bi, _) in edges:
        ru, rv = find(ti), find(t + bi)
        if ru != rv:
            parent[ru] = rv
    return len({find(x) for x in range(t + b)}) == 1


def split_level_decorated(g: LevelGraph, spec: StratumSpec, lev: int,
                          ) -> list[tuple[LevelGraph, dict[int, int]]]:
    """All realizable one-step degenerations splitting the given level,
    each with the map from old edge indices to new edge indices.

    Not canonicalized and not deduplicated; distinct entries correspond to
    distinct labeled splittings of the level stratum.
    """
    verts = g.vertices_at(lev)
    vert_legs: dict[int, list[Point]] = {v: [] for v in verts}
    for pt, v in g.legs:
        if v in vert_legs:
            vert_legs[v].append(pt)

    def vertex_points(v: int) -> list[tuple[LegTag, int]]:
        pts: list[tuple[LegTag, int]] = [(("leg", pt), spec.order(pt))
                                         for pt in sorted(vert_legs[v])]
        for ei, (u, w, k) in enumerate(g.edges):
            if w == v:
                pts.append((("ein", ei), -k - 1))
            if u == v:
                pts.append((("eout", ei), k - 1))
        return pts

    options: list[list] = []
    for v in verts:
        opts: list = [("top", None), ("bot", None)]
        for s in _piece_splits(g.genera[v], vertex_points(v)):
            opts.append(("split", s))
        options.append(opts)

    out = []
    for choice in itertools.product(*options):
        has_top = any(c[0] == "top" or c[0] == "split" for c in choice)
        has_bot = any(c[0] == "bot" or c[0] == "split" for c in choice)
        if not (has_top and has_bot):
            continue
        cand = _assemble_split(g, spec, lev, verts, choice)
        if cand is None:
            continue
        graph, edge_map = cand
        if not realizability_issues(graph, spec):
            out.append((graph, edge_map))
    return out


def split_level(g: LevelGraph, spec: StratumSpec, lev: int) -> list[LevelGraph]:
    """Canonical representatives of the one-step degenerations splitting
    the given level (duplicates possible across calls)."""
    return [canonicalize(graph)
            for graph, _ in split_level_decorated(g, spec, lev)]


def _assemble_split(g: LevelGraph, spec: StratumSpec, lev: int,
                    verts: list[int], choice) -> tuple[LevelGraph, dict[int, int]] | None:
    # new level numbering: levels above stay, lev -> lev (upper) and lev-1
    # (lower), levels below shift down by one
    def map_level(x: int) -> int:
        return x if x >= lev else x - 1

    genera: list[int] = []
    levels: list[int] = []
    legs: dict[Point, int] = {}
    tag_vertex: dict[LegTag, int] = {}
    new_edges: list[tuple[int, int, int]] = []

    old_to_new: dict[int, int] = {}
    for v in range(g.n_vertices):
        if v in verts:
            continue
        old_to_new[v] = len(genera)
        genera.append(g.genera[v])
        levels.append(map_level(g.levels[v]))
    for pt, v in g.legs:
        if v not in verts:
            legs[pt] = old_to_new[v]

    for v, c in zip(verts, choice):
        kind, data = c
        if kind in ("top", "bot"):
            nv = len(genera)
            genera.append(g.genera[v])
            levels.append(lev if kind == "top" else lev - 1)
            for pt, w in g.legs:
                if w == v:
                    legs[pt] = nv
            for ei, (u, w, k) in enumerate(g.edges):
                if w == v:
                    tag_vertex[("ein", ei)] = nv
                if u == v:
                    tag_vertex[("eout", ei)] = nv
        else:
            tops_data, bots_data, sedges = data
            base_top = len(genera)
            for gv, tags in tops_data:
                nv = len(genera)
                genera.append(gv)
                levels.append(lev)
                for tag in tags:
                    if tag[0] == "leg":
                        legs[tag[1]] = nv
                    else:
                        tag_vertex[tag] = nv
            base_bot = len(genera)
            for gv, tags in bots_data:
                nv = len(genera)
                genera.append(gv)
                levels.append(lev - 1)
                for tag in tags:
                    if tag[0] == "leg":
                        legs[tag[1]] = nv
                    else:
                        tag_vertex[tag] = nv
            for (ti, bi, k) in sedges:
                new_edges.append((base_top + ti, base_bot + bi, k))

    edge_map: dict[int, int] = {}
    for ei, (u, w, k) in enumerate(g.edges):
        nu = old_to_new[u] if u not in verts else tag_vertex[("eout", ei)]
        nw = old_to_new[w] if w not in verts else tag_vertex[("ein", ei)]
        edge_map[ei] = len(new_edges)
        new_edges.append((nu, nw, k))

    cand = LevelGraph(tuple(genera), tuple(levels),
                      tuple(sorted(legs.items())), tuple(new_edges))
    if any(cand.levels[u] <= cand.levels[v] for (u, v, _) in cand.edges):
        return None
    return cand, edge_map


_ENUM_CACHE: dict[tuple, tuple[LevelGraph, ...]] = {}


def enumerate_LGL(spec: StratumSpec, L: int) -> tuple[LevelGraph, ...]:
    """All realizable enhanced level graphs with L levels below zero and no
    horizontal edges, as canonical representatives sorted by encoding."""
    require_valid(spec)
    key = (spec, L)
    if key in _ENUM_CACHE:
        return _ENUM_CACHE[key]
    if L < 0:
        raise ValueError("negative number of levels")
    d = dimension(spec).projectivized
    if L > d:
        _ENUM_CACHE[key] = ()
        return ()
    if L == 0:
        triv = canonicalize(trivial_graph(spec))
        issues = realizability_issues(triv, spec)
        if issues:
            raise SpecError("ambient stratum not realizable: " + "; ".join(issues))
        _ENUM_CACHE[key] = (triv,)
        return _ENUM_CACHE[key]
    prev = enumerate_LGL(spec, L - 1)
    found: dict[tuple, LevelGraph] = {}
    for g in prev:
        for lev in range(0, -g.n_levels_below - 1, -1):
            for cand in split_level(g, spec, lev):
                found.setdefault(canonical_encoding(cand), cand)
    graphs = tuple(found[k] for k in sorted(found, key=tuple_key))
    _ENUM_CACHE[key] = graphs
    return graphs


def enumerate_LG1(spec: StratumSpec) -> tuple[LevelGraph, ...]:
    return enumerate_LGL(spec, 1)


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------

def lg1_numbering(spec: StratumSpec) -> dict[tuple, int]:
    """The fixed global numbering of LG_1: canonical encodings in sorted
    order, numbered from 0."""
    return {canonical_encoding(g): i for i, g in enumerate(enumerate_LG1(spec))}


def profile(g: LevelGraph, spec: StratumSpec) -> tuple[int, ...]:
    numbering = lg1_numbering(spec)
    out = []
    for i in range(1, g.n_levels_below + 1):
        enc = canonical_encoding(delta(g, i))
        if enc not in numbering:
            raise EnumerationError("undegeneration missing from LG_1 list")
        out.append(numbering[enc])
    return tuple(out)


def profile_order_check(spec: StratumSpec, max_L: int | None = None) -> None:
    """Prop.-style consistency of profiles: no repeated entries, and each
    unordered index set occurs with a single ordering."""
    d = dimension(spec).projectivized
    top = d if max_L is None else min(d, max_L)
    for L in range(2, top + 1):
        seen: dict[frozenset, tuple] = {}
        for g in enumerate_LGL(spec, L):
            p = profile(g, spec)
            if len(set(p)) != len(p):
                raise EnumerationError(f"repeated index in profile {p}")
            key = frozenset(p)
            if key in seen and seen[key] != p:
                raise EnumerationError(
                    f"profiles {seen[key]} and {p} share an index set")
            seen[key] = p


def dimension_profile(g: LevelGraph, spec: StratumSpec) -> list[int]:
    """Projectivized dimensions of the level strata, top level first."""
    return [d for d, _ in level_dims(g, spec)]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def graph_report(g: LevelGraph, spec: StratumSpec) -> dict:
    pd = prong_data(g)
    conds = induced_conditions(g, spec)
    levels = []
    for lev in range(0, -g.n_levels_below - 1, -1):
        sub, pmap = level_stratum(g, spec, lev, conds)
        dd = dimension(sub)
        levels.append({"level": lev, "spec": sub.to_json_obj(),
                       "dim": dd.projectivized, "dim_unproj": dd.unprojectivized})
    return {
        "vertices": [{"genus": gv, "level": lv}
                     for gv, lv in zip(g.genera, g.levels)],
        "legs": [[list(pt), v] for pt, v in g.legs],
        "edges": [[u, v, k] for (u, v, k) in g.edges],
        "prongs": {"ell": pd.ell, "ell_levels": list(pd.ell_levels),
                   "kappa_product": pd.kappa_product, "orbits": pd.orbits,
                   "twist_index": pd.twist_index, "aut": pd.aut_order},
        "profile": list(profile(g, spec)),
        "levels": levels,
    }


def horizontal_divisor_present(spec: StratumSpec) -> bool:
    """Whether the boundary contains the horizontal divisor (an irreducible
    curve with one non-separating horizontal node); bookkeeping only."""
    return any(g >= 1 for g, _ in spec.components)
