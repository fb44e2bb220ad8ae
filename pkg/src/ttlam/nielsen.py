"""Periodic points, eigenrays, subdivision, and fixed-path (INP) detection.

An expanding train track map fixes a sparse set of points: periodic vertices,
and isolated interior points of edges where some iterate maps an edge over
itself.  At every periodic point each gate carries exactly one *eigenray*, an
infinite legal ray with f^k(rho) = rho.  A periodic indivisible Nielsen path
(INP) is a reduced path eta with exactly one illegal turn and [f^t(eta)] =
eta; its two legal halves extend to eigenrays sharing an exactly equal
infinite tail, which is what the detector looks for.

Interior periodic points are tracked symbolically as occurrences: the point
fixed by f^T on edge e "at index i" is the unique fixed point of the inverse
branch of f^T through the i-th dart of f^T(e).  All comparisons, orbit steps
and refinements stay in exact integer arithmetic (occurrence indices plus
bigint matrix-power lengths), so no floating point enters the subdivision.
"""

from dataclasses import dataclass
from math import lcm

from .errors import (
    ConvergenceError,
    MapError,
    NotPrimitiveError,
    SubdivisionError,
)
from .graph import Graph, Path, edge_index, reverse_path, turn
from .graph_map import GraphSelfMap
from .spectral import matrix_power_lengths, pf_data
from .train_track import gates, is_legal_turn, require_train_track


# -- periodic vertices and darts ---------------------------------------------

def _cycle_periods(step: tuple[int, ...]) -> dict[int, int]:
    """For a finite self-map given as a table, the elements lying on cycles
    and their minimal periods."""
    n = len(step)
    out: dict[int, int] = {}
    for x in range(n):
        y = x
        for k in range(1, n + 1):
            y = step[y]
            if y == x:
                out[x] = k
                break
    return out


@dataclass(frozen=True)
class PeriodicData:
    """Vertices periodic under f and darts periodic under Df, with periods."""

    vertex_period: tuple[tuple[int, int], ...]
    dart_period: tuple[tuple[int, int], ...]

    def periodic_vertices(self) -> list[int]:
        return [v for v, _ in self.vertex_period]

    def eigen_darts(self) -> list[int]:
        return [d for d, _ in self.dart_period]

    def vertex_period_of(self, v: int) -> int | None:
        return dict(self.vertex_period).get(v)

    def dart_period_of(self, d: int) -> int | None:
        return dict(self.dart_period).get(d)


def periodic_structures(f: GraphSelfMap) -> PeriodicData:
    vp = _cycle_periods(f.vertex_image)
    dp = _cycle_periods(f.derivative_table)
    return PeriodicData(
        tuple(sorted(vp.items())),
        tuple(sorted(dp.items())),
    )


# -- eigenrays ----------------------------------------------------------------

def eigenray_prefix(f: GraphSelfMap, dart: int, n: int, max_rounds: int = 10_000) -> Path:
    """First n darts of the unique f-invariant ray in the direction `dart`.

    The dart must be Df-periodic with some period k; iterating f^k on the
    one-dart path then yields strictly nested prefixes of the ray.
    """
    pd = periodic_structures(f)
    k = pd.dart_period_of(dart)
    if k is None:
        raise MapError(f"dart {f.graph.dart_name(dart)} is not Df-periodic; no eigenray")
    f.require_expanding()
    p: Path = (dart,)
    stalls = 0
    for _ in range(max_rounds):
        if len(p) >= n:
            return p[:n]
        q = f.iterate(p, k)
        if q[: len(p)] != p:
            raise ConvergenceError("eigenray iteration lost the prefix property")
        if len(q) == len(p):
            stalls += 1
            if stalls > f.graph.num_darts:
                raise ConvergenceError("eigenray prefix stopped growing")
        else:
            stalls = 0
        p = q
    raise ConvergenceError(f"eigenray prefix did not reach {n} darts in {max_rounds} rounds")


# -- occurrences of an edge inside its own iterated image ----------------------

@dataclass(frozen=True)
class Occurrence:
    """Edge e appears (as a dart) at position `index` inside f^exponent(e)."""

    edge: int
    exponent: int
    index: int
    reversed_: bool
    kind: str  # "initial-vertex" | "terminal-vertex" | "interior"


def occurrences(f: GraphSelfMap, t: int) -> list[Occurrence]:
    """All self-occurrences at exponent t, classified by the fixed point they
    carry.

    A forward occurrence at index 0 (resp. the final index) pins the fixed
    point of the inverse branch to the initial (resp. terminal) vertex.  A
    reversed occurrence always pins it strictly inside the edge: the branch
    is orientation-reversing, so its fixed point cannot sit at an endpoint.
    """
    out = []
    for e in range(f.graph.num_edges):
        p = f.iterate((2 * e,), t)
        last = len(p) - 1
        for i, d in enumerate(p):
            if d == 2 * e:
                if i == 0:
                    kind = "initial-vertex"
                elif i == last:
                    kind = "terminal-vertex"
                else:
                    kind = "interior"
                out.append(Occurrence(e, t, i, False, kind))
            elif d == 2 * e + 1:
                out.append(Occurrence(e, t, i, True, "interior"))
    return out


@dataclass(frozen=True)
class PeriodicPoint:
    """Interior periodic point as an orientation-preserving occurrence.

    The point is the unique fixed point of the inverse branch of f^exponent
    through the `index`-th dart of f^exponent(edge); `period` is its minimal
    period as a point of the graph.
    """

    edge: int
    exponent: int
    index: int
    period: int

    def descriptor(self) -> tuple[int, int, int]:
        return (self.edge, self.exponent, self.index)


def reversed_to_preserving(f: GraphSelfMap, e: int, t: int, i: int) -> tuple[int, int, int]:
    """Convert a reversed occurrence at exponent t to the orientation-
    preserving descriptor of the same point at exponent 2t.

    With P = f^t(e) and P[i] = reverse of e, the point lands at index
    |f^t(P[:i])| + (|P| - 1 - i) inside f^{2t}(e).
    """
    p = f.iterate((2 * e,), t)
    if p[i] != 2 * e + 1:
        raise MapError("not a reversed occurrence")
    lens_t = matrix_power_lengths(f, t)
    offset = sum(lens_t[edge_index(d)] for d in p[:i])
    j = offset + (len(p) - 1 - i)
    lens_2t = matrix_power_lengths(f, 2 * t)
    if not (0 < j < lens_2t[e] - 1):
        raise MapError("reversed occurrence did not convert to an interior one")
    return (e, 2 * t, j)


def refine_index(f: GraphSelfMap, e: int, t: int, i: int, factor: int) -> int:
    """Occurrence index of the same point at exponent t*factor.

    i_{(k+1)t} = |f^{kt}(P[:i])| + i_{kt} with P = f^t(e); the prefix stays
    at the base exponent, so only exact iterated lengths are needed.  Lengths
    at kt advance by one multiplication with M^t per step.
    """
    if factor < 1:
        raise MapError("refinement factor must be >= 1")
    if factor == 1:
        return i
    p = f.iterate((2 * e,), t)
    counts = [0] * f.graph.num_edges
    for d in p[:i]:
        counts[edge_index(d)] += 1
    n = f.graph.num_edges
    from .spectral import transition_power

    mt = transition_power(f, t)
    # lens[j] = |f^{kt}(edge j)|, starting at k = 1
    lens = [sum(mt[r][j] for r in range(n)) for j in range(n)]
    idx = i
    for _ in range(factor - 1):
        idx += sum(counts[j] * lens[j] for j in range(n))
        lens = [sum(lens[r] * mt[r][j] for r in range(n)) for j in range(n)]
    return idx


def point_image(f: GraphSelfMap, e: int, t: int, i: int) -> tuple[int, int, int]:
    """Where f sends the interior fixed point (e, t, i).

    Returns (new_edge, new_index, dart_pos): the image point as a descriptor
    at the same exponent, plus the position of the dart of f(e) it lies on
    (needed when cutting edge images during subdivision).

    Writing P = f^t(e), Q = f(e) and ell = |f(P[:i])|, the image point sits
    on the unique dart Q[k] whose f^t-block [C_k, C_k + L_k) inside f^t(Q)
    contains position ell + k; reversed darts mirror the in-block index.
    """
    p = f.iterate((2 * e,), t)
    if p[i] != 2 * e:
        raise MapError("descriptor is not an orientation-preserving occurrence")
    ell = sum(len(f.edge_image[edge_index(d)]) for d in p[:i])
    q = f.edge_image[e]
    lens = matrix_power_lengths(f, t)
    cum = 0
    for k, g in enumerate(q):
        ge = edge_index(g)
        lk = lens[ge]
        pos = ell + k
        if cum <= pos < cum + lk:
            rel = pos - cum
            new_index = (lk - 1 - rel) if (g & 1) else rel
            if not (0 < new_index < lk - 1):
                raise MapError("image of an interior fixed point landed on a vertex")
            check = f.iterate((2 * ge,), t)
            if check[new_index] != 2 * ge:
                raise MapError("point image descriptor failed verification")
            return ge, new_index, k
        cum += lk
    raise MapError("fixed point image not located inside f(e)")


def point_orbit(f: GraphSelfMap, e: int, t: int, i: int, cap: int = 10_000) -> tuple[PeriodicPoint, ...]:
    """Forward orbit of an interior fixed point of f^t, as descriptors at the
    shared exponent t; closes exactly because descriptors at one exponent are
    unique per point."""
    seq = [(e, i)]
    ce, ci = e, i
    for _ in range(cap):
        ce, ci, _ = point_image(f, ce, t, ci)
        if (ce, ci) == (e, i):
            period = len(seq)
            return tuple(PeriodicPoint(a, t, b, period) for a, b in seq)
        seq.append((ce, ci))
    raise ConvergenceError("point orbit did not close")


def interior_periodic_points(f: GraphSelfMap, max_period: int = 6) -> tuple[PeriodicPoint, ...]:
    """All interior points of period <= max_period, deduplicated exactly.

    Orientation-preserving occurrences are found at their period; reversed
    ones at twice it.  Every discovered descriptor is refined to the common
    exponent 2*lcm(1..max_period) for duplicate elimination.
    """
    if max_period < 1:
        raise MapError("max_period must be >= 1")
    t_canon = 2 * lcm(*range(1, max_period + 1))
    found: dict[tuple[int, int], PeriodicPoint] = {}
    for t in range(1, max_period + 1):
        for occ in occurrences(f, t):
            if occ.kind != "interior":
                continue
            if occ.reversed_:
                e, texp, i = reversed_to_preserving(f, occ.edge, t, occ.index)
            else:
                e, texp, i = occ.edge, t, occ.index
            key = (e, refine_index(f, e, texp, i, t_canon // texp))
            if key in found:
                continue
            orbit = point_orbit(f, e, texp, i)
            found[key] = orbit[0]
    pts = sorted(found.items(), key=lambda kv: (kv[1].period, kv[0]))
    return tuple(p for _, p in pts)


# -- subdivision at a periodic orbit -------------------------------------------

@dataclass(frozen=True)
class SubdivisionResult:
    """Map on the refined graph, with the orbit bookkeeping that produced it."""

    map: GraphSelfMap
    orbit: tuple[PeriodicPoint, ...]
    new_vertices: tuple[str, ...]
    edge_split: dict[str, tuple[str, ...]]


def subdivide_at(f: GraphSelfMap, point: PeriodicPoint) -> SubdivisionResult:
    """Subdivide the graph at the full orbit of one interior periodic point
    and carry f to the refined graph.

    Each edge holding r orbit points splits into r+1 edges named e.1..e.r+1;
    each orbit point becomes a vertex named e*j.  The rebuilt map is checked
    to stay an expanding train track map.
    """
    g = f.graph
    t = point.exponent
    orbit = point_orbit(f, point.edge, t, point.index)
    by_edge: dict[int, list[PeriodicPoint]] = {}
    for p in orbit:
        by_edge.setdefault(p.edge, []).append(p)
    for e in by_edge:
        by_edge[e].sort(key=lambda p: p.index)

    # ranks: descriptor -> (edge, 1-based rank within edge)
    rank: dict[tuple[int, int], int] = {}
    for e, pts in by_edge.items():
        for j, p in enumerate(pts, start=1):
            rank[(p.edge, p.index)] = j

    vertex_name_of: dict[tuple[int, int], str] = {
        (p.edge, p.index): f"{g.edge_names[p.edge]}*{rank[(p.edge, p.index)]}"
        for p in orbit
    }
    new_vertex_names = list(g.vertex_names) + [vertex_name_of[(p.edge, p.index)] for p in orbit]

    edge_split: dict[str, tuple[str, ...]] = {}
    new_edges: list[tuple[str, str, str]] = []
    for e in range(g.num_edges):
        name = g.edge_names[e]
        pts = by_edge.get(e, [])
        if not pts:
            edge_split[name] = (name,)
            new_edges.append((name, g.vertex_names[g.origin(2 * e)], g.vertex_names[g.terminus(2 * e)]))
            continue
        chain = (
            [g.vertex_names[g.origin(2 * e)]]
            + [vertex_name_of[(p.edge, p.index)] for p in pts]
            + [g.vertex_names[g.terminus(2 * e)]]
        )
        names = tuple(f"{name}.{j}" for j in range(1, len(pts) + 2))
        edge_split[name] = names
        for j, sub in enumerate(names):
            new_edges.append((sub, chain[j], chain[j + 1]))

    new_graph = Graph.build(tuple(new_vertex_names), new_edges)

    sub_dart: dict[str, int] = {new_graph.edge_names[i]: 2 * i for i in range(new_graph.num_edges)}

    def rewrite(d: int) -> list[int]:
        name = g.edge_names[edge_index(d)]
        fwd = [sub_dart[s] for s in edge_split[name]]
        if d & 1:
            return [x ^ 1 for x in reversed(fwd)]
        return fwd

    # vertex images
    vindex = {n: i for i, n in enumerate(new_graph.vertex_names)}
    new_vimg = [0] * new_graph.num_vertices
    for v in range(g.num_vertices):
        new_vimg[vindex[g.vertex_names[v]]] = vindex[g.vertex_names[f.vertex_image[v]]]
    for p in orbit:
        ie, ii, _ = point_image(f, p.edge, t, p.index)
        new_vimg[vindex[vertex_name_of[(p.edge, p.index)]]] = vindex[vertex_name_of[(ie, ii)]]

    # edge images, cut at the images of the orbit points
    new_images: dict[str, Path] = {}
    for e in range(g.num_edges):
        w: list[int] = []
        for d in f.edge_image[e]:
            w.extend(rewrite(d))
        pts = by_edge.get(e, [])
        cuts = [0]
        for p in pts:
            ie, ii, k = point_image(f, p.edge, t, p.index)
            s = rank[(ie, ii)]
            r_c = len(by_edge[ie])
            gdart = f.edge_image[e][k]
            local = ((r_c + 1) - s) if (gdart & 1) else s
            before = sum(len(edge_split[g.edge_names[edge_index(q)]]) for q in f.edge_image[e][:k])
            cuts.append(before + local)
        cuts.append(len(w))
        if any(a >= b for a, b in zip(cuts, cuts[1:])):
            raise SubdivisionError("orbit images are not ordered along the edge image")
        for j, sub in enumerate(edge_split[g.edge_names[e]]):
            new_images[sub] = tuple(w[cuts[j] : cuts[j + 1]])

    new_map = GraphSelfMap(
        new_graph,
        tuple(new_vimg),
        tuple(new_images[name] for name in new_graph.edge_names),
    )
    if not new_map.is_expanding:
        raise SubdivisionError("subdivided map lost expansion")
    require_train_track(new_map)
    return SubdivisionResult(
        map=new_map,
        orbit=orbit,
        new_vertices=tuple(vertex_name_of[(p.edge, p.index)] for p in orbit),
        edge_split=edge_split,
    )


# -- INP detection --------------------------------------------------------------

@dataclass(frozen=True)
class NielsenPath:
    """Reduced path with exactly one illegal turn and [f^period(path)] = path.

    `tip_index` marks the illegal turn: it sits between path[tip_index - 1]
    and path[tip_index].  Stored in canonical orientation (lexicographically
    smaller of the path and its reverse).
    """

    path: Path
    period: int
    tip_index: int
    closed: bool

    def halves(self) -> tuple[Path, Path]:
        """Legal halves (alpha-bar, beta) with the tip between them."""
        return self.path[: self.tip_index], self.path[self.tip_index :]


def _canonical_inp(path: Path, tip: int) -> tuple[Path, int]:
    rev = reverse_path(path)
    if rev < path:
        return rev, len(path) - tip
    return path, tip


def _default_window(f: GraphSelfMap, max_pf_len: float | None) -> int:
    try:
        pf = pf_data(f)
    except NotPrimitiveError:
        return 64
    if max_pf_len is None:
        max_pf_len = 4.0 * pf.vol_pf / (pf.lam - 1.0)
    need = int(max_pf_len / pf.min_pf_length) + 1
    return max(64, need)


def _scan_ray_pairs(
    f: GraphSelfMap,
    window: int,
    max_period: int,
    pf=None,
) -> tuple[set[tuple[Path, int]], list[tuple[Path, int]], list[str]]:
    """One pass of eigenray tail matching at a fixed window size.

    Returns (verified INPs as (canonical path, period), failed full-window
    candidates, notes).  Candidates require: tails agree to the window end,
    the preceding darts differ, both stems are nonempty, and the junction
    turn is illegal; verification is the exact identity [f^s(eta)] = eta.
    A genuine INP expands both halves by the same overflow, forcing equal
    PF-lengths; unequal-stem coincidences are discarded as impossible rather
    than held against conclusiveness.
    """
    pd = periodic_structures(f)
    gate_table = gates(f)
    eigen = pd.eigen_darts()
    rays = {d: eigenray_prefix(f, d, window) for d in eigen}
    min_agree = max(16, window // 2)
    verified: set[tuple[Path, int]] = set()
    failed: list[tuple[Path, int]] = []
    notes: list[str] = []
    seen: set[Path] = set()
    for a in range(len(eigen)):
        for b in range(a + 1, len(eigen)):
            r1, r2 = rays[eigen[a]], rays[eigen[b]]
            n1, n2 = len(r1), len(r2)
            for delta in range(-(n2 - min_agree), n1 - min_agree + 1):
                lo = max(0, delta)
                hi = min(n1, n2 + delta)
                if hi - lo < min_agree + 1:
                    continue
                mismatch = -1
                for i in range(hi - 1, lo - 1, -1):
                    if r1[i] != r2[i - delta]:
                        mismatch = i
                        break
                if mismatch < 0:
                    # windows nested from the very start: not INP-shaped
                    continue
                m1 = mismatch + 1
                m2 = m1 - delta
                if m1 < 1 or m2 < 1 or hi - m1 < min_agree:
                    continue
                eta = r1[:m1] + reverse_path(r2[:m2])
                canon, tip = _canonical_inp(eta, m1)
                if canon in seen:
                    continue
                seen.add(canon)
                if pf is not None:
                    l1 = sum(pf.pf_lengths[edge_index(d)] for d in r1[:m1])
                    l2 = sum(pf.pf_lengths[edge_index(d)] for d in r2[:m2])
                    if abs(l1 - l2) > 1e-6 * max(l1, l2):
                        continue
                if is_legal_turn(f, turn(r1[m1 - 1] ^ 1, r2[m2 - 1] ^ 1), gate_table):
                    failed.append((canon, tip))
                    notes.append(
                        f"tail coincidence with legal junction at window {window}: "
                        f"{f.graph.path_str(canon)}"
                    )
                    continue
                for s in range(1, max_period + 1):
                    if f.iterate(canon, s) == canon:
                        verified.add((canon, s))
                        break
                else:
                    failed.append((canon, tip))
                    notes.append(
                        f"unverified tail candidate at window {window}: {f.graph.path_str(canon)}"
                    )
    return verified, failed, notes


def _detect_on(
    f: GraphSelfMap,
    window: int,
    max_period: int,
    retries: int = 2,
) -> tuple[tuple[NielsenPath, ...], bool, list[str]]:
    """Scan with growing windows until no unverified candidates remain."""
    try:
        pf = pf_data(f)
    except NotPrimitiveError:
        pf = None
    notes: list[str] = []
    w = window
    for attempt in range(retries + 1):
        verified, failed, ns = _scan_ray_pairs(f, w, max_period, pf)
        if attempt == retries or not failed:
            notes.extend(ns)
            inps = []
            for canon, s in sorted(verified):
                tip = _tip_of(f, canon)
                inps.append(
                    NielsenPath(
                        path=canon,
                        period=s,
                        tip_index=tip,
                        closed=f.graph.is_closed(canon),
                    )
                )
            return tuple(inps), not failed, notes
        w *= 2
    raise AssertionError("unreachable")


def _tip_of(f: GraphSelfMap, path: Path) -> int:
    gate_table = gates(f)
    tips = [
        i
        for i in range(1, len(path))
        if gate_table.same_gate(path[i - 1] ^ 1, path[i])
    ]
    if len(tips) != 1:
        raise MapError("path does not have exactly one illegal turn")
    return tips[0]


@dataclass(frozen=True)
class InpReport:
    """Everything the INP search established, including the subdivided pass."""

    inps: tuple[NielsenPath, ...]
    conclusive: bool
    window: int
    notes: tuple[str, ...]
    subdivision: SubdivisionResult | None
    subdivided_inps: tuple[NielsenPath, ...]

    def closed_inps(self) -> tuple[NielsenPath, ...]:
        return tuple(p for p in self.inps + self.subdivided_inps if p.closed)


def detect_inps(
    f: GraphSelfMap,
    max_period: int = 6,
    max_pf_len: float | None = None,
    window: int | None = None,
    subdivide: bool = True,
) -> InpReport:
    """Find periodic indivisible Nielsen paths of period <= max_period.

    Vertex-based INPs come from matching eigenray tails at periodic
    vertices.  INPs anchored at interior periodic points are caught by
    subdividing at the smallest-period interior orbit and re-running the
    vertex scan on the refined map.  Every reported path is verified exactly;
    `conclusive` is False only when a full-window tail coincidence resisted
    both verification and window growth.
    """
    require_train_track(f)
    w = window if window is not None else _default_window(f, max_pf_len)
    inps, conclusive, notes = _detect_on(f, w, max_period)
    sub: SubdivisionResult | None = None
    sub_inps: tuple[NielsenPath, ...] = ()
    if subdivide:
        pts = interior_periodic_points(f, max_period)
        if pts:
            sub = subdivide_at(f, pts[0])
            w2 = window if window is not None else _default_window(sub.map, max_pf_len)
            sub_inps, c2, n2 = _detect_on(sub.map, w2, max_period)
            conclusive = conclusive and c2
            notes = notes + n2
    return InpReport(
        inps=inps,
        conclusive=conclusive,
        window=w,
        notes=tuple(notes),
        subdivision=sub,
        subdivided_inps=sub_inps,
    )


@dataclass(frozen=True)
class StabilityReport:
    """Atoroidality verdict: a closed INP is an invariant conjugacy class."""

    status: str  # "pass" | "fail" | "inconclusive"
    reason: str
    inps: InpReport


def stability_check(f: GraphSelfMap, **kwargs) -> StabilityReport:
    rep = detect_inps(f, **kwargs)
    closed = rep.closed_inps()
    if closed:
        shown = f.graph.path_str(closed[0].path)
        return StabilityReport(
            status="fail",
            reason=f"closed indivisible fixed path {shown}: invariant conjugacy class (surface-type)",
            inps=rep,
        )
    if not rep.conclusive:
        return StabilityReport(
            status="inconclusive",
            reason="unverified eigenray tail coincidences remain",
            inps=rep,
        )
    if rep.inps or rep.subdivided_inps:
        return StabilityReport(
            status="pass",
            reason="indivisible fixed paths exist but none is closed",
            inps=rep,
        )
    return StabilityReport(status="pass", reason="no indivisible fixed paths found", inps=rep)
