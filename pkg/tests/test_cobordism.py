from __future__ import annotations

import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from rigcat.cobordism import (
    BoundaryMismatch,
    Cob1Mor,
    MatchingError,
    cob_coev,
    cob_compose,
    cob_dual,
    cob_enumerate_homs,
    cob_ev,
    cob_identity,
    cob_symmetry,
    cob_tensor,
    matchings,
    word,
)

signs = st.lists(st.sampled_from([1, -1]), max_size=4).map(tuple)


@st.composite
def cobordisms(draw, source=None):
    w1 = draw(signs) if source is None else source
    # a target with the same signed count: the surplus plus some +/- pairs, shuffled
    extra = draw(st.integers(0, 2 if len(w1) < 4 else 0))
    total = sum(w1)
    letters = [1] * (max(total, 0) + extra) + [-1] * (max(-total, 0) + extra)
    w2 = tuple(draw(st.permutations(letters)))
    pairs = draw(st.sampled_from(matchings(w1, w2)))
    return Cob1Mor(w1, w2, pairs, draw(st.integers(0, 2)))


@st.composite
def composable(draw, n=2):
    f = draw(cobordisms())
    chain = [f]
    for _ in range(n - 1):
        chain.append(draw(cobordisms(source=chain[-1].target)))
    return chain


def glue_oracle(g: Cob1Mor, f: Cob1Mor) -> Cob1Mor:
    """Compose by connected components of the glued graph, ignoring orientation."""
    G = nx.Graph()
    for a, b in f.pairs:
        G.add_edge(("f",) + a, ("f",) + b)
    for a, b in g.pairs:
        G.add_edge(("g",) + a, ("g",) + b)
    for k in range(len(f.target)):
        G.add_edge(("f", "t", k), ("g", "s", k))
    pairs, circles = [], 0
    for comp in nx.connected_components(G):
        outer = sorted((n[1], n[2]) for n in comp if (n[0], n[1]) in {("f", "s"), ("g", "t")})
        if outer:
            assert len(outer) == 2
            pairs.append(tuple(outer))
        else:
            circles += 1
    return Cob1Mor(f.source, g.target, pairs, f.circles + g.circles + circles)


def test_coev_then_cap_makes_one_circle():
    coev = Cob1Mor((), word("-+"), [(("t", 0), ("t", 1))])
    cap = Cob1Mor(word("-+"), (), [(("s", 0), ("s", 1))])
    assert cob_compose(cap, coev) == Cob1Mor((), (), [], 1)


@pytest.mark.parametrize("w", ["+", "-", "+-", "-++", "+--+"])
def test_zigzags(w):
    w = word(w)
    d = cob_dual(w)
    zig = cob_compose(cob_tensor(cob_ev(w), cob_identity(w)), cob_tensor(cob_identity(w), cob_coev(w)))
    zag = cob_compose(cob_tensor(cob_identity(d), cob_ev(w)), cob_tensor(cob_coev(w), cob_identity(d)))
    assert zig == cob_identity(w)
    assert zag == cob_identity(d)


def test_dual_of_plus_minus():
    assert cob_dual(word("+-")) == (1, -1)
    assert cob_dual(word("+")) == (-1,)


def test_enumeration_examples():
    assert [m.circles for m in cob_enumerate_homs((), (), 3)] == [0, 1, 2, 3]
    assert len(cob_enumerate_homs(word("+"), word("+"), 2)) == 3
    assert cob_enumerate_homs(word("+"), word("-"), 5) == []


def test_invalid_matchings_are_rejected():
    with pytest.raises(MatchingError):
        Cob1Mor(word("+"), word("-"), [(("s", 0), ("t", 0))])
    with pytest.raises(MatchingError):
        Cob1Mor(word("+-"), (), [(("s", 0), ("s", 0))])
    with pytest.raises(BoundaryMismatch):
        cob_compose(cob_identity("+"), cob_identity("-"))


@settings(max_examples=200, deadline=None)
@given(composable(2))
def test_composition_matches_graph_oracle(chain):
    f, g = chain
    assert cob_compose(g, f) == glue_oracle(g, f)


@settings(max_examples=150, deadline=None)
@given(composable(3))
def test_associativity(chain):
    f, g, h = chain
    assert cob_compose(h, cob_compose(g, f)) == cob_compose(cob_compose(h, g), f)


@settings(max_examples=100, deadline=None)
@given(cobordisms())
def test_identity_laws(f):
    assert cob_compose(cob_identity(f.target), f) == f
    assert cob_compose(f, cob_identity(f.source)) == f


@settings(max_examples=100, deadline=None)
@given(composable(2), composable(2))
def test_interchange(c1, c2):
    (f, g), (f2, g2) = c1, c2
    lhs = cob_compose(cob_tensor(g, g2), cob_tensor(f, f2))
    rhs = cob_tensor(cob_compose(g, f), cob_compose(g2, f2))
    assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(cobordisms(), cobordisms())
def test_symmetry_natural_and_involutive(f, g):
    lhs = cob_compose(cob_symmetry(f.target, g.target), cob_tensor(f, g))
    rhs = cob_compose(cob_tensor(g, f), cob_symmetry(f.source, g.source))
    assert lhs == rhs
    s = cob_symmetry(f.source, g.source)
    assert cob_compose(cob_symmetry(g.source, f.source), s) == cob_identity(f.source + g.source)


@settings(max_examples=60, deadline=None)
@given(signs)
def test_dual_is_involutive_and_zigzag_holds(w):
    assert cob_dual(cob_dual(w)) == w
    zig = cob_compose(cob_tensor(cob_ev(w), cob_identity(w)), cob_tensor(cob_identity(w), cob_coev(w)))
    assert zig == cob_identity(w)


@settings(max_examples=60, deadline=None)
@given(signs, signs, st.integers(0, 2))
def test_enumeration_counts(w1, w2, k):
    homs = cob_enumerate_homs(w1, w2, k)
    pos = sum(1 for s in w1 if s > 0) + sum(1 for s in w2 if s < 0)
    neg = len(w1) + len(w2) - pos
    expected = math.factorial(pos) * (k + 1) if pos == neg else 0
    assert len(homs) == expected
    assert len(set(homs)) == len(homs)
