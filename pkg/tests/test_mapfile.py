"""Map file parsing, serialization, and error reporting."""

import pytest
from hypothesis import given, strategies as st

from ttlam import ParseError, parse_map_file, serialize_map_file

GOOD = """\
# comment line
graph demo
vertex v
edge a v v
edge b v v
map
a -> a b
b -> a
assert iwip
"""


def test_parse_good():
    mf = parse_map_file(GOOD)
    assert mf.name == "demo"
    assert mf.assertions == ("iwip",)
    assert mf.map.graph.edge_names == ("a", "b")
    assert mf.map.edge_image == ((0, 2), (0,))


def test_parse_tilde_and_inverse():
    text = GOOD.replace("a -> a b", "a -> b~ a")
    mf = parse_map_file(text)
    assert mf.map.edge_image[0] == (3, 0)


def test_parse_inverse_of():
    text = GOOD + "assert inverse-of other\n"
    mf = parse_map_file(text)
    assert mf.asserts_inverse_of() == "other"


def test_parse_errors_carry_line_numbers():
    bad = GOOD.replace("edge b v v", "edge b v w")
    with pytest.raises(ParseError) as err:
        parse_map_file(bad)
    assert "line 5" in str(err.value)


def test_parse_rejects_duplicate_image():
    bad = GOOD + "a -> b\n"
    with pytest.raises(ParseError):
        parse_map_file(bad)


def test_parse_rejects_missing_image():
    bad = GOOD.replace("b -> a\n", "")
    with pytest.raises(ParseError):
        parse_map_file(bad)


def test_parse_rejects_junk_before_sections():
    with pytest.raises(ParseError):
        parse_map_file("edge a v v\ngraph g\n")


def test_parse_rejects_unreduced_image():
    bad = GOOD.replace("a -> a b", "a -> b b~ a")
    with pytest.raises(ParseError) as err:
        parse_map_file(bad)
    assert "line" in str(err.value)


def test_roundtrip_fixture_files(map_files):
    for mf in map_files.values():
        text = serialize_map_file(mf)
        again = parse_map_file(text)
        assert again.name == mf.name
        assert again.assertions == mf.assertions
        assert again.map.edge_image == mf.map.edge_image
        assert again.map.graph.edge_names == mf.map.graph.edge_names
        assert serialize_map_file(again) == text


def test_fixture_names(map_files):
    assert map_files["tribonacci-inv"].asserts_inverse_of() == "tribonacci"
    assert map_files["fibonacci"].asserts_inverse_of() is None
    assert map_files["reducible"].assertions == ()


images_st = st.sampled_from(
    [
        {"a": "a b", "b": "a"},
        {"a": "b", "b": "a b"},
        {"a": "b a", "b": "a"},
        {"a": "a b a", "b": "a b"},
        {"a": "b~ a", "b": "a~"},
    ]
)


@given(images_st)
def test_roundtrip_generated(images):
    lines = ["graph g", "vertex v", "edge a v v", "edge b v v", "map"]
    lines += [f"{e} -> {w}" for e, w in images.items()]
    mf = parse_map_file("\n".join(lines) + "\n")
    assert parse_map_file(serialize_map_file(mf)).map.edge_image == mf.map.edge_image
