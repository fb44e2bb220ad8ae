"""Graph self-maps: construction, images, iteration, cancellation."""

import pytest
from hypothesis import given, strategies as st

from ttlam import Graph, GraphSelfMap, MapError, NotExpandingError, compose

from oracles import apply_map, random_reduced_word

import random


def test_build_infers_vertex_image(rose2, fib):
    assert fib.vertex_image == (0,)
    assert fib.edge_image == ((0, 2), (0,))


def test_build_rejects_unreduced(rose2):
    with pytest.raises(MapError):
        GraphSelfMap.build(rose2, {"a": "a a~ b", "b": "a"})


def test_build_rejects_empty_image(rose2):
    with pytest.raises(MapError):
        GraphSelfMap.build(rose2, {"a": "", "b": "a"})


def test_build_rejects_endpoint_conflict(theta):
    # q -> q~ forces the image of u to be w, while p -> q forces it to be u
    with pytest.raises(MapError):
        GraphSelfMap.build(theta, {"p": "q", "q": "q~", "r": "r"})


def test_dart_image_reverses(fib):
    assert fib.dart_image(0) == (0, 2)
    assert fib.dart_image(1) == (3, 1)
    assert fib.dart_image(2) == (0,)
    assert fib.dart_image(3) == (1,)


def test_apply_reduces(fib, rose2):
    # f(a) = a b, f(b~) = a~, and the concatenation a b a~ is already reduced
    assert fib.apply(rose2.parse_path("a b~")) == rose2.parse_path("a b a~")
    # a~ a collapses entirely
    assert fib.apply((1, 0)) == ()


def test_iterate_known_values(fib, rose2):
    # frozen: f^3(a) = a b a a b, f^4(a) = a b a a b a b a
    assert fib.iterate((0,), 3) == rose2.parse_path("a b a a b")
    assert fib.iterate((0,), 4) == rose2.parse_path("a b a a b a b a")


def test_iterate_additive(fib):
    w = (0, 2, 0)
    assert fib.iterate(fib.iterate(w, 2), 3) == fib.iterate(w, 5)


def test_derivative_table_trib(trib, rose3):
    # Df: a->b, b->c, c->a, a~->b~, b~->c~, c~->b~
    name = rose3.dart_name
    table = trib.derivative_table
    got = {name(d): name(table[d]) for d in range(6)}
    assert got == {"a": "b", "b": "c", "c": "a", "a~": "b~", "b~": "c~", "c~": "b~"}


def test_expanding(fib, trib, trib_inv, reducible):
    for f in (fib, trib, trib_inv, reducible):
        assert f.is_expanding
        assert f.non_expanding_witness() is None


def test_non_expanding_witness(rose2):
    ident = GraphSelfMap.build(rose2, {"a": "a", "b": "b"})
    assert not ident.is_expanding
    assert ident.non_expanding_witness() == "a"
    with pytest.raises(NotExpandingError):
        ident.require_expanding()


def test_cancellation_bound_values(fib, trib, trib_inv, reducible):
    assert fib.cancellation_bound == 2
    assert trib.cancellation_bound == 2
    assert reducible.cancellation_bound == 4
    assert trib_inv.cancellation_bound >= 0


def test_cancellation_inequality(all_maps):
    # |[f(w)]| >= sum |f(w_i)| - (len(w) - 1) * C(f)
    rng = random.Random(11)
    for f in all_maps.values():
        g = f.graph
        for _ in range(200):
            w = random_reduced_word(g, rng.randrange(2, 40), rng)
            image_len = sum(len(f.dart_image(d)) for d in w)
            assert len(f.apply(w)) >= image_len - (len(w) - 1) * f.cancellation_bound


def test_apply_matches_oracle(all_maps):
    rng = random.Random(5)
    for f in all_maps.values():
        for _ in range(150):
            w = random_reduced_word(f.graph, rng.randrange(1, 60), rng)
            assert f.apply(w) == apply_map(f, w)


def test_compose_inverse_pair(trib, trib_inv, rose3):
    both = compose(trib, trib_inv)
    for e in range(3):
        assert both.edge_image[e] == (2 * e,)
    other = compose(trib_inv, trib)
    for e in range(3):
        assert other.edge_image[e] == (2 * e,)


@given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6))
def test_iterate_composes(fib, s, t):
    w = (0, 2)
    assert fib.iterate(w, s + t) == fib.iterate(fib.iterate(w, s), t)
