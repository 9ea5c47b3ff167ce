from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import balanced_strings
from postlie.forests import (
    ForestSyntaxError,
    GraftSpec,
    VertexRef,
    chain,
    corolla,
    enumerate_forests,
    enumerate_trees,
    forest_key,
    forests_up_to,
    global_vertices,
    graft_at,
    horizontal,
    is_horizontal,
    multi_graft,
    parse_forest,
    parse_tree,
    render,
    resolve,
    size,
    vertex_paths,
)

trees = st.recursive(st.just(()), lambda kids: st.lists(kids, max_size=3).map(tuple), max_leaves=6)
forests = st.lists(trees, max_size=3).map(tuple)


def catalan(n):
    return comb(2 * n, n) // (n + 1)


@pytest.mark.parametrize("n", range(9))
def test_forest_counts_are_catalan(n):
    got = enumerate_forests(n)
    assert len(got) == catalan(n)
    assert [render(F) for F in got] == sorted(balanced_strings(n))


@pytest.mark.parametrize("n", range(1, 8))
def test_tree_counts(n):
    assert len(enumerate_trees(n)) == catalan(n - 1)


def test_enumeration_sorted_and_distinct():
    forests_ = list(forests_up_to(6))
    keys = [forest_key(F) for F in forests_]
    assert keys == sorted(keys)
    assert len(set(forests_)) == len(forests_)
    assert len(forests_) == 1 + 2 + 5 + 14 + 42 + 132


@given(forests)
def test_parse_render_roundtrip(F):
    assert parse_forest(render(F)) == F
    assert size(F) == render(F).count("(")


def test_parse_examples():
    assert parse_forest("") == ()
    assert parse_forest("()") == ((),)
    assert parse_forest("(())()") == (((),), ())
    assert parse_forest("() (())") == parse_forest("()(())")
    assert parse_tree("(()())") == corolla(2)


@pytest.mark.parametrize("bad", ["(()", "())", ")(", "(a)", "( ())", "(x"])
def test_parse_errors(bad):
    with pytest.raises(ForestSyntaxError):
        parse_forest(bad)


def test_parse_tree_needs_one_tree():
    with pytest.raises(ForestSyntaxError):
        parse_tree("()()")


def test_shapes():
    assert render((chain(3),)) == "((()))"
    assert render((corolla(3),)) == "(()()())"
    assert is_horizontal(horizontal(3))
    assert is_horizontal(((),))
    assert not is_horizontal(())
    assert not is_horizontal(((), ((),)))


def test_canonical_order_is_left_first_preorder():
    T = parse_tree("((())())")
    assert vertex_paths(T) == ((), (0,), (0, 0), (1,))
    F = parse_forest("()(()())")
    assert global_vertices(F) == [VertexRef(0, 0), VertexRef(1, 0), VertexRef(1, 1), VertexRef(1, 2)]
    assert resolve(F, VertexRef(1, 2)) == (1,)
    with pytest.raises(IndexError):
        resolve(F, VertexRef(1, 3))
    with pytest.raises(IndexError):
        resolve(F, VertexRef(2, 0))


def test_graft_inserts_on_the_left():
    assert graft_at(((),), ((),), VertexRef(0, 0)) == parse_forest("(())")
    # 2-chain grafted at the middle vertex of the 3-chain
    assert render(graft_at(parse_forest("(())"), parse_forest("((()))"), VertexRef(0, 1))) == "(((())()))"
    # single vertex and 2-chain grafted together at the leaf of a 2-chain
    assert render(graft_at(parse_forest("()(())"), parse_forest("(())"), VertexRef(0, 1))) == "((()(())))"


def test_multi_graft_example():
    E = parse_forest("(())()()(()())")
    F = parse_forest("(())()()")
    spec = GraftSpec(1, ((VertexRef(0, 0), 2), (VertexRef(1, 0), 1)))
    assert render(multi_graft(E, F, spec)) == "(()())((())()())(())()"


def test_multi_graft_pure_concatenation():
    E, F = parse_forest("()(())"), parse_forest("(())")
    assert multi_graft(E, F, GraftSpec(2, ())) == E + F


def test_multi_graft_rejects_bad_specs():
    E, F = parse_forest("()()"), parse_forest("(())")
    with pytest.raises(ValueError):
        multi_graft(E, F, GraftSpec(1, ()))
    with pytest.raises(ValueError):
        multi_graft(E, F, GraftSpec(0, ((VertexRef(0, 0), 1), (VertexRef(0, 0), 1))))
    with pytest.raises(ValueError):
        multi_graft(E, F, GraftSpec(0, ((VertexRef(0, 0), 0), (VertexRef(0, 1), 2))))
    with pytest.raises(IndexError):
        multi_graft(E, F, GraftSpec(0, ((VertexRef(0, 5), 2),)))


@given(forests, forests, st.data())
def test_multi_graft_keeps_vertices(E, F, data):
    verts = global_vertices(F)
    k = data.draw(st.integers(0, min(len(E), len(verts))))
    chosen = data.draw(st.lists(st.sampled_from(verts), unique=True, min_size=k, max_size=k)) if k else []
    n0 = len(E) if not k else data.draw(st.integers(0, len(E) - k))
    counts = [1] * k
    if k:
        counts[-1] += len(E) - k - n0
    G = multi_graft(E, F, GraftSpec(n0, tuple(zip(chosen, counts))))
    assert size(G) == size(E) + size(F)
    assert len(G) == n0 + len(F)
    assert G[:n0] == E[len(E) - n0:]
