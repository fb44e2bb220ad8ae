"""Finite graphs with oriented darts, and reduced edge paths.

A graph is stored as a list of vertices plus a list of (unoriented) edges.
Edge ``i`` contributes two darts: ``2*i`` traverses the edge forward and
``2*i + 1`` traverses it backward, so reversal is a single xor.  Paths are
tuples of dart ids; a path is *reduced* (also: tight) when no dart is
immediately followed by its own reversal.

Turns are unordered pairs of darts sharing an origin vertex.  They are kept
canonical as ``(min, max)`` so that dict/set membership never depends on the
order a turn was encountered in.
"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GraphError

Dart = int
Path = tuple[int, ...]
Turn = tuple[int, int]


def reverse_dart(d: Dart) -> Dart:
    """Opposite orientation of the same edge."""
    return d ^ 1

def edge_index(d: Dart) -> int:
    """Index of the unoriented edge underlying a dart."""
    return d >> 1

def is_forward(d: Dart) -> bool:
    return (d & 1) == 0


@dataclass(frozen=True)
class Graph:
    """Connected graph with named vertices and edges.

    ``dart_origin[d]`` is the vertex a dart points away from; the terminal
    vertex of ``d`` is the origin of ``d ^ 1``.  Construction goes through
    :meth:`build`, which takes human-oriented (name, origin, terminus)
    triples and freezes everything into tuples.
    """

    vertex_names: tuple[str, ...]
    edge_names: tuple[str, ...]
    dart_origin: tuple[int, ...]

    @staticmethod
    def build(vertices: Sequence[str], edges: Sequence[tuple[str, str, str]]) -> "Graph":
        vnames = tuple(vertices)
        if len(set(vnames)) != len(vnames):
            raise GraphError("duplicate vertex name")
        vindex = {v: i for i, v in enumerate(vnames)}
        enames = []
        origin = []
        for name, o, t in edges:
            if name in enames:
                raise GraphError(f"duplicate edge name {name!r}")
            for v in (o, t):
                if v not in vindex:
                    raise GraphError(f"edge {name!r} uses unknown vertex {v!r}")
            enames.append(name)
            origin.append(vindex[o])
            origin.append(vindex[t])
        return Graph(vnames, tuple(enames), tuple(origin))

    # -- size ---------------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_names)

    @property
    def num_edges(self) -> int:
        return len(self.edge_names)

    @property
    def num_darts(self) -> int:
        return 2 * len(self.edge_names)

    def darts(self) -> range:
        return range(self.num_darts)

    # -- incidence ----------------------------------------------------------

    def origin(self, d: Dart) -> int:
        return self.dart_origin[d]

    def terminus(self, d: Dart) -> int:
        return self.dart_origin[d ^ 1]

    def darts_at(self, v: int) -> tuple[int, ...]:
        return tuple(d for d in self.darts() if self.dart_origin[d] == v)

    def valence(self, v: int) -> int:
        return sum(1 for d in self.darts() if self.dart_origin[d] == v)

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges

    def rank(self) -> int:
        """Rank of the fundamental group (free group rank)."""
        return 1 - self.euler_characteristic()

    # -- names --------------------------------------------------------------

    def dart_name(self, d: Dart) -> str:
        name = self.edge_names[d >> 1]
        return name if (d & 1) == 0 else name + "~"

    def dart_by_name(self, token: str) -> Dart:
        rev = token.endswith("~")
        name = token[:-1] if rev else token
        try:
            i = self.edge_names.index(name)
        except ValueError:
            raise GraphError(f"unknown edge {name!r}") from None
        return 2 * i + (1 if rev else 0)

    def path_str(self, path: Iterable[int]) -> str:
        return " ".join(self.dart_name(d) for d in path)

    def parse_path(self, text: str) -> Path:
        toks = text.split()
        return tuple(self.dart_by_name(t) for t in toks)

    # -- path predicates ----------------------------------------------------

    def is_edge_path(self, path: Sequence[int]) -> bool:
        """Darts chain: terminus of each equals origin of the next."""
        for d in path:
            if not (0 <= d < self.num_darts):
                return False
        for a, b in zip(path, path[1:]):
            if self.terminus(a) != self.origin(b):
                return False
        return True

    def check_edge_path(self, path: Sequence[int]) -> None:
        if not self.is_edge_path(path):
            raise GraphError(f"not an edge path: {list(path)}")

    def is_closed(self, path: Sequence[int]) -> bool:
        return bool(path) and self.origin(path[0]) == self.terminus(path[-1])


# -- reduction and turns ----------------------------------------------------

def path_reduce(path: Iterable[int]) -> Path:
    """Free reduction: cancel adjacent dart/reverse pairs until none remain.

    Single left-to-right pass with a stack; linear in the input length.
    """
    out: list[int] = []
    for d in path:
        if out and out[-1] == (d ^ 1):
            out.pop()
        else:
            out.append(d)
    return tuple(out)


def is_reduced(path: Sequence[int]) -> bool:
    return all(b != (a ^ 1) for a, b in zip(path, path[1:]))


def reverse_path(path: Sequence[int]) -> Path:
    return tuple((d ^ 1) for d in reversed(path))


def cyclic_reduce(path: Sequence[int]) -> Path:
    """Reduce, then strip matching first/last darts until cyclically reduced."""
    p = list(path_reduce(path))
    while len(p) >= 2 and p[0] == (p[-1] ^ 1):
        p = p[1:-1]
    return tuple(p)


def turn(d1: Dart, d2: Dart) -> Turn:
    """Canonical unordered pair."""
    return (d1, d2) if d1 <= d2 else (d2, d1)


def is_degenerate_turn(t: Turn) -> bool:
    return t[0] == t[1]


def turns_of_path(path: Sequence[int]) -> Iterator[Turn]:
    """Turns crossed while traversing the path: at each interior vertex the
    pair (incoming reversed, outgoing)."""
    for a, b in zip(path, path[1:]):
        yield turn(a ^ 1, b)


def turns_crossed(path: Sequence[int]) -> set[Turn]:
    return set(turns_of_path(path))


def crosses_turn(path: Sequence[int], t: Turn) -> bool:
    """Whether the path crosses the turn (in either direction of travel)."""
    return t in turns_crossed(path)


def all_turns(graph: Graph, include_degenerate: bool = False) -> list[Turn]:
    """Every turn of the graph, grouped implicitly by origin vertex."""
    out = []
    nd = graph.num_darts
    for d1 in range(nd):
        start = d1 if include_degenerate else d1 + 1
        for d2 in range(start, nd):
            if graph.dart_origin[d1] == graph.dart_origin[d2]:
                out.append((d1, d2))
    return out


def validate_graph(graph: Graph) -> list[str]:
    """Structural complaints; empty list means the graph is usable.

    The dart encoding makes the reversal involution total and fixed-point
    free by construction, so only connectivity and valence can go wrong.
    """
    problems = []
    if graph.num_vertices == 0:
        return ["graph has no vertices"]
    if len(graph.dart_origin) != 2 * len(graph.edge_names):
        problems.append("dart table length disagrees with edge count")
        return problems
    for d in graph.darts():
        if not (0 <= graph.dart_origin[d] < graph.num_vertices):
            problems.append(f"dart {d} has out-of-range origin")
            return problems
    # connectivity by union-find over edge endpoints
    parent = list(range(graph.num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(graph.num_edges):
        a, b = find(graph.dart_origin[2 * i]), find(graph.dart_origin[2 * i + 1])
        if a != b:
            parent[a] = b
    roots = {find(v) for v in range(graph.num_vertices)}
    if len(roots) > 1:
        problems.append(f"graph is disconnected ({len(roots)} components)")
    for v in range(graph.num_vertices):
        val = graph.valence(v)
        if val == 0:
            problems.append(f"vertex {graph.vertex_names[v]} is isolated")
        elif val == 1:
            problems.append(f"vertex {graph.vertex_names[v]} has valence 1")
    return problems
