"""Graph self-maps: vertices to vertices, edges to reduced edge paths.

A map is stored by its action on forward darts only; the image of a backward
dart is the reversed image of its partner.  Composition-style questions (what
does the n-th iterate do to a path?) always pass through free reduction, so
iterated images are reduced edge paths by construction.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import MapError, NotExpandingError
from .graph import (
    Graph,
    Path,
    is_reduced,
    path_reduce,
    reverse_path,
)


@dataclass(frozen=True)
class GraphSelfMap:
    """A homotopy-class representative f: G -> G.

    ``edge_image[i]`` is the reduced edge path crossed by f(edge i), recorded
    on forward darts.  ``vertex_image[v]`` is the image vertex.  Immutability
    keeps derived tables (derivative, incidence) safely cacheable.
    """

    graph: Graph
    vertex_image: tuple[int, ...]
    edge_image: tuple[Path, ...]

    def __post_init__(self):
        g = self.graph
        if len(self.vertex_image) != g.num_vertices:
            raise MapError("vertex image table has wrong length")
        for v, w in enumerate(self.vertex_image):
            if not (0 <= w < g.num_vertices):
                raise MapError(f"vertex {g.vertex_names[v]} maps out of range")
        if len(self.edge_image) != g.num_edges:
            raise MapError("edge image table has wrong length")
        for i, img in enumerate(self.edge_image):
            name = g.edge_names[i]
            if not img:
                raise MapError(f"edge {name!r} has empty image (map not a homotopy equivalence candidate)")
            if not g.is_edge_path(img):
                raise MapError(f"image of edge {name!r} is not an edge path")
            if not is_reduced(img):
                raise MapError(f"image of edge {name!r} is not reduced")
            o, t = g.origin(2 * i), g.terminus(2 * i)
            if g.origin(img[0]) != self.vertex_image[o]:
                raise MapError(f"image of edge {name!r} starts at the wrong vertex")
            if g.terminus(img[-1]) != self.vertex_image[t]:
                raise MapError(f"image of edge {name!r} ends at the wrong vertex")

    @staticmethod
    def build(graph: Graph, images: dict[str, str]) -> "GraphSelfMap":
        """Build from edge-name -> path-literal, inferring vertex images."""
        if set(images) != set(graph.edge_names):
            missing = set(graph.edge_names) - set(images)
            extra = set(images) - set(graph.edge_names)
            raise MapError(f"edge images missing {sorted(missing)} / unknown {sorted(extra)}")
        edge_image = []
        vimg: dict[int, int] = {}
        for i, name in enumerate(graph.edge_names):
            img = graph.parse_path(images[name])
            if not img:
                raise MapError(f"edge {name!r} has empty image")
            if not is_reduced(img):
                raise MapError(f"image of edge {name!r} is not reduced")
            graph.check_edge_path(img)
            edge_image.append(img)
            for v, w in ((graph.origin(2 * i), graph.origin(img[0])),
                         (graph.terminus(2 * i), graph.terminus(img[-1]))):
                if vimg.setdefault(v, w) != w:
                    raise MapError(f"vertex {graph.vertex_names[v]} gets conflicting images")
        for v in range(graph.num_vertices):
            if v not in vimg:
                raise MapError(f"vertex {graph.vertex_names[v]} touched by no edge")
        vertex_image = tuple(vimg[v] for v in range(graph.num_vertices))
        return GraphSelfMap(graph, vertex_image, tuple(edge_image))

    # -- action on darts and paths -------------------------------------------

    def dart_image(self, d: int) -> Path:
        """Image of a single dart as a reduced edge path."""
        img = self.edge_image[d >> 1]
        return img if (d & 1) == 0 else reverse_path(img)

    def apply(self, path: Sequence[int]) -> Path:
        """f(path), freely reduced."""
        out: list[int] = []
        for d in path:
            for e in self.dart_image(d):
                if out and out[-1] == (e ^ 1):
                    out.pop()
                else:
                    out.append(e)
        return tuple(out)

    def iterate(self, path: Sequence[int], n: int) -> Path:
        """[f^n(path)], reduced after every application."""
        if n < 0:
            raise MapError("negative iterate")
        p = path_reduce(path)
        for _ in range(n):
            p = self.apply(p)
        return p

    def derivative(self, d: int) -> int:
        """Df: the first dart crossed by the image of d."""
        return self.dart_image(d)[0]

    @cached_property
    def derivative_table(self) -> tuple[int, ...]:
        return tuple(self.derivative(d) for d in self.graph.darts())

    # -- basic properties -----------------------------------------------------

    @cached_property
    def is_expanding(self) -> bool:
        """Every edge eventually maps over more than one edge.

        Follow Df from each dart while the image stays a single dart; if the
        walk survives num_darts steps it has cycled among length-1 edges.
        """
        nd = self.graph.num_darts
        for d0 in range(nd):
            d = d0
            steps = 0
            while len(self.dart_image(d)) == 1:
                d = self.dart_image(d)[0]
                steps += 1
                if steps > nd:
                    return False
        return True

    def require_expanding(self) -> None:
        if not self.is_expanding:
            witness = self.non_expanding_witness()
            raise NotExpandingError(f"iterated images of edge {witness!r} never grow")

    def non_expanding_witness(self) -> str | None:
        """Name of an edge trapped in a cycle of length-1 images, if any."""
        nd = self.graph.num_darts
        for d0 in range(nd):
            d = d0
            steps = 0
            while len(self.dart_image(d)) == 1:
                d = self.dart_image(d)[0]
                steps += 1
                if steps > nd:
                    return self.graph.edge_names[d0 >> 1]
        return None

    @cached_property
    def cancellation_bound(self) -> int:
        """C(f): max cancellation when f is applied across one vertex.

        For a reduced path crossing the turn (d1~, d2), the cancellation in
        f(..d1) * f(d2..) is the common prefix of f(d1~) and f(d2), so the
        bound is twice the longest such prefix over non-degenerate turns.
        """
        g = self.graph
        best = 0
        for d1 in g.darts():
            for d2 in range(d1 + 1, g.num_darts):
                if g.origin(d1) != g.origin(d2):
                    continue
                a, b = self.dart_image(d1), self.dart_image(d2)
                k = 0
                while k < len(a) and k < len(b) and a[k] == b[k]:
                    k += 1
                best = max(best, k)
        return 2 * best

    def image_lengths(self) -> tuple[int, ...]:
        return tuple(len(img) for img in self.edge_image)

    def describe(self) -> str:
        g = self.graph
        lines = []
        for i, name in enumerate(g.edge_names):
            lines.append(f"{name} -> {g.path_str(self.edge_image[i])}")
        return "\n".join(lines)


def compose(outer: GraphSelfMap, inner: GraphSelfMap) -> GraphSelfMap:
    """outer . inner on a shared graph, with reduced edge images."""
    if outer.graph != inner.graph:
        raise MapError("composition requires identical graphs")
    g = outer.graph
    vertex_image = tuple(outer.vertex_image[w] for w in inner.vertex_image)
    edge_image = tuple(outer.apply(inner.edge_image[i]) for i in range(g.num_edges))
    for i, img in enumerate(edge_image):
        if not img:
            raise MapError(f"composite collapses edge {g.edge_names[i]!r}")
    return GraphSelfMap(g, vertex_image, edge_image)
