"""Laminary languages, singular leaves, duality and illegality profiles.

The attracting lamination of an expanding train track map is described here
through finite data: the *leaf language* (all length-n factors of iterated
edge images, closed under reversal), eigenray *equivalence classes* (gates
joined through used turns, which certify branch points and the iwip
property), and *singular leaves* (lines through an unused legal turn or an
indivisible fixed path, which close the gap between the leaf language and
the full dual lamination of the limit tree).

Everything here is window-based and exact: languages are finite sets of dart
tuples, and every reported structure can be re-checked by direct iteration.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceededError, IncompatibleGraphsError, MapError
from .graph import Path, Turn, reverse_path, turn
from .graph_map import GraphSelfMap
from .nielsen import InpReport, detect_inps, eigenray_prefix, periodic_structures
from .spectral import matrix_power_lengths, pf_data
from .train_track import Gates, gates, ilt_count, legal_segments


# -- leaf language --------------------------------------------------------------

def leaf_language(
    f: GraphSelfMap,
    n: int,
    max_iter: int = 400,
    max_total: int = 2_000_000,
    stable_rounds: int = 2,
) -> frozenset[Path]:
    """All length-n factors of iterated edge images, closed under reversal.

    Iterates every edge simultaneously and harvests sliding windows until no
    new factor shows up for `stable_rounds` consecutive rounds.  The language
    is finite so this terminates; the caps guard against runaway growth.
    """
    if n < 1:
        raise MapError("window length must be >= 1")
    f.require_expanding()
    words: set[Path] = set()
    paths: list[Path] = [(2 * e,) for e in range(f.graph.num_edges)]
    stable = 0
    for _ in range(max_iter):
        paths = [f.apply(p) for p in paths]
        if sum(len(p) for p in paths) > max_total:
            raise BudgetExceededError("iterated edge images exceeded the length budget")
        grew = False
        for p in paths:
            for i in range(len(p) - n + 1):
                w = p[i : i + n]
                if w not in words:
                    words.add(w)
                    words.add(reverse_path(w))
                    grew = True
        # stability only counts once every image is long enough to harvest from
        if grew or min(len(p) for p in paths) < n:
            stable = 0
        else:
            stable += 1
            if stable >= stable_rounds:
                return frozenset(words)
    raise BudgetExceededError(f"leaf language did not stabilize in {max_iter} rounds")


# -- uniform recurrence -----------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceReport:
    """Witness that the whole factor language recurs in every deep image.

    `witness` is the first iterate T such that every length-m language word
    occurs (up to flip) in f^t(e) for every edge e and every checked t >= T.
    """

    m: int
    witness: int  # -1 when no such iterate was found below the cap
    conclusive: bool
    factors: int


def _occurs(hay: Path, needle: Path) -> bool:
    flipped = reverse_path(needle)
    k = len(needle)
    return any(
        hay[i : i + k] == needle or hay[i : i + k] == flipped
        for i in range(len(hay) - k + 1)
    )


def uniform_recurrence_check(
    f: GraphSelfMap,
    m: int,
    cap: int = 25,
    margin: int = 3,
    max_total: int = 2_000_000,
) -> RecurrenceReport:
    """Find the iterate from which every edge image carries the full language.

    A flip of a factor counts as an occurrence: leaves are unoriented.  The
    scan runs to cap + margin rounds; the witness must hold on every round
    after it, so the extra margin rounds double as a persistence check.
    """
    lang = leaf_language(f, m, max_total=max_total)
    # one representative per flip pair keeps the scan half as large
    reps = []
    seen = set()
    for w in sorted(lang):
        if w in seen:
            continue
        seen.add(w)
        seen.add(reverse_path(w))
        reps.append(w)
    paths: list[Path] = [(2 * e,) for e in range(f.graph.num_edges)]
    witness = -1
    for t in range(1, cap + margin + 1):
        paths = [f.apply(p) for p in paths]
        if sum(len(p) for p in paths) > max_total:
            raise BudgetExceededError("recurrence paths exceeded the length budget")
        ok = all(_occurs(p, w) for p in paths for w in reps)
        if ok and witness < 0:
            witness = t
        elif not ok:
            witness = -1
    conclusive = 0 < witness <= cap
    return RecurrenceReport(m=m, witness=witness, conclusive=conclusive, factors=len(lang))


# -- eigenray equivalence and branch points ----------------------------------------

@dataclass(frozen=True)
class EquivalenceReport:
    """Gates at periodic vertices, glued along used turns.

    Classes are tuples of gate ids; `dart_classes` spells each class out as
    the sorted darts of its gates.  One single class over the whole graph is
    the certificate used by the iwip check; two or more classes certify a
    reducible (NOT-iwip) map.
    """

    classes: tuple[tuple[int, ...], ...]
    dart_classes: tuple[tuple[int, ...], ...]
    num_classes: int
    gate_table: Gates


def eigenray_equivalence(f: GraphSelfMap) -> EquivalenceReport:
    from .train_track import used_turns

    gt = gates(f)
    pd = periodic_structures(f)
    periodic = set(pd.periodic_vertices())
    nodes = [gid for gid in range(len(gt.members)) if gt.vertex_of_gate[gid] in periodic]
    parent = {gid: gid for gid in nodes}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d1, d2 in used_turns(f):
        g1, g2 = gt.gate_of[d1], gt.gate_of[d2]
        if g1 in parent and g2 in parent:
            r1, r2 = find(g1), find(g2)
            if r1 != r2:
                parent[r1] = r2
    buckets: dict[int, list[int]] = {}
    for gid in nodes:
        buckets.setdefault(find(gid), []).append(gid)
    classes = tuple(sorted(tuple(sorted(b)) for b in buckets.values()))
    dart_classes = tuple(
        tuple(sorted(d for gid in cls for d in gt.members[gid])) for cls in classes
    )
    return EquivalenceReport(
        classes=classes,
        dart_classes=dart_classes,
        num_classes=len(classes),
        gate_table=gt,
    )


@dataclass(frozen=True)
class BranchReport:
    """Branch points of the limit tree: equivalence classes with >= 3 gates.

    An INP with distinct endpoint vertices glues two classes into one branch
    point; the traversal direction pair merges, so degrees add up to
    n1 + n2 - 1.  Closed fixed paths glue a class to itself and are listed
    separately without a merged degree.
    """

    degrees: tuple[int, ...]  # per equivalence class, sorted descending
    branch_degrees: tuple[int, ...]  # only classes with degree >= 3
    inp_merges: tuple[tuple[str, int], ...]  # (path string, merged degree)


def branch_point_classes(f: GraphSelfMap, inps: InpReport | None = None) -> BranchReport:
    eq = eigenray_equivalence(f)
    degrees = tuple(sorted((len(cls) for cls in eq.classes), reverse=True))
    merges = []
    if inps is not None:
        gt = eq.gate_table
        class_of_gate = {}
        for idx, cls in enumerate(eq.classes):
            for gid in cls:
                class_of_gate[gid] = idx
        for inp in inps.inps:
            p = f.graph.origin(inp.path[0])
            q = f.graph.terminus(inp.path[-1])
            if p == q:
                continue
            g1 = gt.gate_of[inp.path[0]]
            g2 = gt.gate_of[inp.path[-1] ^ 1]
            c1 = class_of_gate.get(g1)
            c2 = class_of_gate.get(g2)
            if c1 is None or c2 is None or c1 == c2:
                continue
            merged = len(eq.classes[c1]) + len(eq.classes[c2]) - 1
            merges.append((f.graph.path_str(inp.path), merged))
    return BranchReport(
        degrees=degrees,
        branch_degrees=tuple(d for d in degrees if d >= 3),
        inp_merges=tuple(sorted(merges)),
    )


# -- singular leaves ------------------------------------------------------------------

@dataclass(frozen=True)
class SingularReport:
    """Leaves of the dual lamination beyond the leaf-language closure.

    turn-type: an unused legal turn between two eigen darts at a periodic
    vertex; the leaf runs down one eigenray, through the turn, up the other.
    inp-type: a line crossing an indivisible fixed path, entering and leaving
    through legal turns at its endpoints.
    """

    turn_pairs: tuple[Turn, ...]
    inp_triples: tuple[tuple[int, Path, int], ...]  # (entry dart, inp path, exit dart)
    conclusive: bool


def singular_leaves(f: GraphSelfMap, inps: InpReport | None = None) -> SingularReport:
    from .train_track import used_turns

    gt = gates(f)
    pd = periodic_structures(f)
    used = used_turns(f)
    periodic = set(pd.periodic_vertices())
    eigen = [d for d in pd.eigen_darts() if f.graph.origin(d) in periodic]
    pairs = []
    for i, d1 in enumerate(eigen):
        for d2 in eigen[i + 1 :]:
            if f.graph.origin(d1) != f.graph.origin(d2):
                continue
            t = turn(d1, d2)
            if t in used or t[0] == t[1]:
                continue
            if not gt.same_gate(d1, d2):
                pairs.append(t)
    triples = []
    if inps is None:
        inps = detect_inps(f)
    conclusive = inps.conclusive
    for inp in inps.inps:
        p_first = inp.path[0]
        p_last = inp.path[-1]
        entries = [
            d
            for d in eigen
            if f.graph.origin(d) == f.graph.origin(p_first)
            and d != p_first
            and not gt.same_gate(d, p_first)
        ]
        exits = [
            d
            for d in eigen
            if f.graph.origin(d) == f.graph.terminus(p_last)
            and d != (p_last ^ 1)
            and not gt.same_gate(d, p_last ^ 1)
        ]
        for din in entries:
            for dout in exits:
                triples.append((din, inp.path, dout))
    return SingularReport(
        turn_pairs=tuple(sorted(pairs)),
        inp_triples=tuple(sorted(triples)),
        conclusive=conclusive,
    )


def leaf_window(f: GraphSelfMap, item, n: int) -> Path:
    """A 2n-or-longer window of a singular leaf, centered on its connector.

    turn-type item (d1, d2): reverse(ray d1 prefix) + ray d2 prefix.
    inp-type item (din, path, dout): reverse(ray din) + path + ray dout.
    """
    if isinstance(item, tuple) and len(item) == 2 and all(isinstance(x, int) for x in item):
        d1, d2 = item
        return reverse_path(eigenray_prefix(f, d1, n)) + eigenray_prefix(f, d2, n)
    din, mid, dout = item
    return reverse_path(eigenray_prefix(f, din, n)) + tuple(mid) + eigenray_prefix(f, dout, n)


# -- dual language ---------------------------------------------------------------------

def dual_language(
    f_minus: GraphSelfMap,
    n: int,
    inps: InpReport | None = None,
    max_total: int = 2_000_000,
) -> frozenset[Path]:
    """Length-n factor language of the full dual lamination, computed on the
    inverse-direction map: the leaf language plus every factor of the
    singular leaves (flip closed)."""
    words = set(leaf_language(f_minus, n, max_total=max_total))
    sing = singular_leaves(f_minus, inps)
    items = list(sing.turn_pairs) + list(sing.inp_triples)
    for item in items:
        w = leaf_window(f_minus, item, n)
        for i in range(len(w) - n + 1):
            fac = w[i : i + n]
            words.add(fac)
            words.add(reverse_path(fac))
    return frozenset(words)


# -- illegality profile -------------------------------------------------------------------

@dataclass(frozen=True)
class IllegalityProfile:
    """How long the legal stretches of a word collection get, measured in the
    gate structure of a reference map."""

    max_run: int
    histogram: tuple[tuple[int, int], ...]  # (run length, count), sorted
    c_illegal: int
    all_below: bool
    words: int


def illegality_profile(f_ref: GraphSelfMap, words: Iterable[Path]) -> IllegalityProfile:
    gt = gates(f_ref)
    pf = pf_data(f_ref)
    hist: dict[int, int] = {}
    max_run = 0
    count = 0
    for w in words:
        count += 1
        if not f_ref.graph.is_edge_path(w):
            raise IncompatibleGraphsError("word is not an edge path on the reference graph")
        for run in legal_segments(f_ref, w, gt):
            hist[run] = hist.get(run, 0) + 1
            max_run = max(max_run, run)
    return IllegalityProfile(
        max_run=max_run,
        histogram=tuple(sorted(hist.items())),
        c_illegal=pf.c_illegal,
        all_below=max_run < pf.c_illegal,
        words=count,
    )


def illegality_between(f_ref: GraphSelfMap, f_src: GraphSelfMap, n: int, dual: bool = True) -> IllegalityProfile:
    """Profile the (dual or plain leaf) language of f_src against the gates
    of f_ref; both maps must live on the same marked graph."""
    if (
        f_ref.graph.edge_names != f_src.graph.edge_names
        or f_ref.graph.vertex_names != f_src.graph.vertex_names
        or f_ref.graph.dart_origin != f_src.graph.dart_origin
    ):
        raise IncompatibleGraphsError("maps live on different graphs")
    words = dual_language(f_src, n) if dual else leaf_language(f_src, n)
    return illegality_profile(f_ref, sorted(words))


# -- iterated illegal-turn contraction --------------------------------------------------------

@dataclass(frozen=True)
class ContractionReport:
    """Chopped ILT series of a word under iteration.

    Each step applies f, freely reduces, chops `chop` darts from both ends
    (emptying short words), and records the remaining illegal-turn count.
    `block` is the smallest s with every |f^s(e)| > c_illegal: the scale on
    which the count is guaranteed to drop until it reaches <= 1.
    """

    series: tuple[int, ...]
    chop: int
    block: int
    reached_le_one: bool
    step_reached: int  # first index with series value <= 1, or -1


def contraction_block(f: GraphSelfMap, cap: int = 400) -> int:
    pf = pf_data(f)
    for s in range(1, cap + 1):
        if min(matrix_power_lengths(f, s)) > pf.c_illegal:
            return s
    raise BudgetExceededError("no contraction block below the cap")


def ilt_contraction(
    f: GraphSelfMap,
    word: Sequence[int],
    steps: int | None = None,
    chop: int | None = None,
) -> ContractionReport:
    """Drive a word toward the lamination: iterate, trim boundary effects,
    count illegal turns.

    The series is non-increasing: applying f never raises the count and
    chopping only removes turns.  With the default boundary trim C(f), the
    count provably reaches <= 1 and the empty word records 0.
    """
    from .graph import path_reduce

    gt = gates(f)
    if chop is None:
        chop = f.cancellation_bound
    w = path_reduce(word)
    if len(w) <= 2 * chop and chop > 0:
        raise MapError(f"word of length {len(w)} is consumed by a boundary trim of {chop}")
    block = contraction_block(f)
    series = [ilt_count(f, w, gt)]
    if steps is None:
        steps = block * (series[0] + 2)
    for _ in range(steps):
        w = f.apply(w)
        w = w[chop : len(w) - chop] if chop else w
        series.append(ilt_count(f, w, gt))
    reached = next((i for i, v in enumerate(series) if v <= 1), -1)
    return ContractionReport(
        series=tuple(series),
        chop=chop,
        block=block,
        reached_le_one=reached >= 0,
        step_reached=reached,
    )
