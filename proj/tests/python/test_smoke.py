"""Smoke tests for the python bindings."""

import pytest

import topofree as tf


def star_sierpinski():
    return tf.FinSpace(points=["*", "u", "v"], le=[("u", "v")])


def test_finspace_basics():
    s = tf.FinSpace(points=["0", "1"], le=[("1", "0")])
    assert s.minimal_open("1") == ["1"]
    assert s.minimal_open("0") == ["0", "1"]
    assert s.is_connected()
    assert len(s) == 2

    d = tf.FinSpace(points=["a", "b"], le=[])
    assert not d.is_connected()
    assert d.path_components() == [["a"], ["b"]]
    assert not s.is_homeomorphic(d)


def test_word_reduction():
    assert tf.reduce_word("a b b^-1 a^-1 a c") == "a c"
    assert tf.reduce_word("a a^-1") == "1"


def test_classify_and_rewriters():
    x = star_sierpinski()
    res = tf.classify(x, "*")
    assert not res["connected"]
    assert res["a1"] == ["*"]
    assert res["e2"] == "u"

    word = "u v^-1 u"
    there = tf.graev_to_markov(x, "*", word)
    back = tf.markov_to_graev(x, "*", there)
    assert back == word


def test_openness():
    x = star_sierpinski()
    not_open = tf.decide_open(x, "*", "u")
    assert not not_open["open"]
    assert not_open["witness"] == "u v^-1"
    assert not tf.stratum_open_check(x, "*", "u", 6)

    is_open = tf.decide_open(x, "*", "u u; u v; u v^-1")
    assert is_open["open"]
    assert is_open["component_index"] == 2
    assert tf.stratum_open_check(x, "*", "u u; u v; u v^-1", 6)


def test_subgroup_basis_classic():
    x = tf.FinSpace(points=["*", "p", "q"], le=[])
    res = tf.subgroup_basis(x, "*", "p; q p q^-1; q q")
    assert res["all_pass"]
    assert res["index"] == 2
    assert sorted(res["generator_words"].values()) == ["p", "q p q^-1", "q q"]


def test_subgroup_basis_flagship_and_certificate():
    x = star_sierpinski()
    res = tf.subgroup_basis(x, "*", "u u; u v; u v^-1")
    assert res["all_pass"]
    assert res["index"] == 2
    assert len(res["generator_words"]) == 3

    q = res["space"]
    comps = q.path_components()
    non_base = [c for c in comps if res["basepoint"] not in c]
    assert len(non_base) == 1
    assert len(non_base[0]) == 2
    a, b = non_base[0]
    # The surviving copy is a Sierpinski pair: exactly one strict relation.
    assert q.leq(a, b) != q.leq(b, a)

    ok, checks = tf.verify_certificate(res["certificate"])
    assert ok
    names = [name for name, _, _ in checks]
    assert "subgroup-equality" in names


def test_not_open_raises():
    x = star_sierpinski()
    with pytest.raises(tf.TopofreeError):
        tf.subgroup_basis(x, "*", "u")
