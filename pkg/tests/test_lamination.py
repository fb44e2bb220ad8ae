"""Leaf languages, recurrence, equivalence classes, singular leaves, duality."""

import pytest

from ttlam import (
    branch_point_classes,
    contraction_block,
    detect_inps,
    dual_language,
    eigenray_equivalence,
    illegality_between,
    illegality_profile,
    ilt_contraction,
    leaf_language,
    leaf_window,
    singular_leaves,
    uniform_recurrence_check,
)

from oracles import harvest_factors


def test_leaf_language_fib_n2(fib, rose2):
    got = {rose2.path_str(w) for w in leaf_language(fib, 2)}
    assert got == {"a b", "b a", "a a", "b~ a~", "a~ b~", "a~ a~"}


def test_leaf_language_n1_full_alphabet(all_maps):
    # primitivity forces every dart's edge into the alphabet
    for f in all_maps.values():
        lang = leaf_language(f, 1)
        assert {w[0] >> 1 for w in lang} == set(range(f.graph.num_edges))


def test_leaf_language_matches_fixed_horizon(trib, trib_inv):
    for f in (trib, trib_inv):
        for n in (2, 3, 5):
            assert leaf_language(f, n) == harvest_factors(f, n, rounds=40)


def test_leaf_language_trib_inv_n3_regression(trib_inv):
    assert len(leaf_language(trib_inv, 3)) == 18


def test_leaf_language_flip_closed(trib):
    lang = leaf_language(trib, 4)
    for w in lang:
        assert tuple(x ^ 1 for x in reversed(w)) in lang


def test_recurrence_all_iwip(fib, trib, trib_inv):
    for f in (fib, trib, trib_inv):
        for m in (2, 3, 4):
            rep = uniform_recurrence_check(f, m)
            assert rep.conclusive
            assert 0 < rep.witness <= 25


def test_recurrence_m1_matches_matrix_positivity(fib):
    import numpy as np

    from ttlam import transition_matrix

    rep = uniform_recurrence_check(fib, 1)
    m = transition_matrix(fib)
    t = 1
    p = m.copy()
    while not (p > 0).all():
        p = p @ m
        t += 1
    assert rep.witness == t


def test_equivalence_single_class(fib, trib, trib_inv):
    for f in (fib, trib, trib_inv):
        assert eigenray_equivalence(f).num_classes == 1


def test_equivalence_reducible_split(reducible, rose3):
    eq = eigenray_equivalence(reducible)
    assert eq.num_classes == 2
    names = [
        frozenset(rose3.dart_name(d) for d in cls) for cls in eq.dart_classes
    ]
    assert frozenset({"c"}) in names


def test_branch_degrees_trib_inv(trib_inv):
    # one class of three gates: a single degree-3 branch point downstairs
    rep = branch_point_classes(trib_inv)
    assert rep.degrees == (3,)
    assert rep.branch_degrees == (3,)


def test_branch_degrees_trib(trib):
    rep = branch_point_classes(trib)
    assert rep.degrees == (5,)


def test_singular_trib(trib, rose3):
    rep = singular_leaves(trib)
    assert rep.conclusive
    name = rose3.dart_name
    got = {tuple(name(d) for d in t) for t in rep.turn_pairs}
    assert got == {("a", "b"), ("a", "c"), ("b", "c"), ("b~", "c~")}
    assert rep.inp_triples == ()


def test_singular_trib_inv_empty(trib_inv):
    rep = singular_leaves(trib_inv)
    assert rep.conclusive
    assert rep.turn_pairs == ()
    assert rep.inp_triples == ()


def test_singular_fib_inp_lines(fib):
    rep = singular_leaves(fib)
    assert rep.conclusive
    assert len(rep.inp_triples) == 4  # entries {a, b~} x exits {a, a~}


def test_singular_windows_almost_legal(trib):
    from ttlam import gates, ilt_count, is_reduced, turns_of_path
    from ttlam.train_track import used_turns

    gt = gates(trib)
    used = used_turns(trib)
    rep = singular_leaves(trib)
    for n in (8, 16, 32):
        for pair in rep.turn_pairs:
            w = leaf_window(trib, pair, n)
            assert is_reduced(w)
            assert ilt_count(trib, w, gt) == 0
            unused = [t for t in turns_of_path(w) if t not in used]
            assert len(unused) == 1
            assert unused[0] == pair


def test_dual_equals_leaf_when_no_singulars(trib_inv):
    for n in (4, 8, 16):
        assert dual_language(trib_inv, n) == leaf_language(trib_inv, n)


def test_dual_strictly_larger_with_singulars(trib):
    # the forward tribonacci map has unused legal turns, so its own dual
    # closure picks up genuinely new words
    for n in (4, 8):
        assert leaf_language(trib, n) < dual_language(trib, n)


def test_illegality_profile_dual_vs_forward(trib, trib_inv):
    prof = illegality_between(trib, trib_inv, 16)
    assert prof.max_run <= 4
    assert prof.c_illegal == 17
    assert prof.all_below
    assert prof.words == len(dual_language(trib_inv, 16))


def test_illegality_profile_rejects_bad_words(trib):
    from ttlam import IncompatibleGraphsError

    with pytest.raises(IncompatibleGraphsError):
        illegality_profile(trib, [(99, 3)])


def test_forward_language_is_legal_for_itself(trib):
    # leaves of the forward lamination are legal: every window is one run
    lang = leaf_language(trib, 12)
    prof = illegality_profile(trib, sorted(lang))
    assert prof.histogram == ((12, len(lang)),)


def test_contraction_block_trib(trib):
    b = contraction_block(trib)
    from ttlam import matrix_power_lengths, pf_data

    c = pf_data(trib).c_illegal
    assert min(matrix_power_lengths(trib, b)) > c
    assert min(matrix_power_lengths(trib, b - 1)) <= c


def test_contraction_series_drops(trib, trib_inv):
    w = sorted(dual_language(trib_inv, 32))[0]
    rep = ilt_contraction(trib, w, steps=20)
    assert all(x >= y for x, y in zip(rep.series, rep.series[1:]))
    assert rep.reached_le_one


def test_contraction_inp_word_stays_one(fib, rose2):
    rep = ilt_contraction(fib, rose2.parse_path("a~ b~ a b"), steps=12, chop=0)
    assert rep.series == tuple([1] * 13)
    assert rep.step_reached == 0


def test_contraction_legal_word_stays_zero(trib):
    w = trib.iterate((0,), 8)
    rep = ilt_contraction(trib, w, steps=6)
    assert set(rep.series) == {0}


def test_contraction_rejects_consumed_word(trib, rose3):
    from ttlam import MapError

    with pytest.raises(MapError):
        ilt_contraction(trib, rose3.parse_path("a b"), steps=3)
