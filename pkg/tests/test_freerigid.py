from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from rigcat.acceptance import corpus_path
from rigcat.cobordism import Cob1Mor, cob_enumerate_homs
from rigcat.fincat import Functor
from rigcat.freerigid import (
    BrauerMor,
    Evaluation,
    FreeRigid,
    GeneratorMap,
    IllTypedDual,
    LabelTypeMismatch,
    cycle_rotation_classes,
    forget_labels,
    fr_end_unit,
    fr_fully_faithful_check,
    fr_hom_from_unit,
    fr_law_check,
    fr_loop_rotation_check,
    fr_rigidity_check,
    fr_universal_map,
    fr_vs_cob,
    lword,
    multiset_count,
)
from rigcat.moncat import DualData, find_dual

CATEGORIES = ["terminal", "walking_arrow", "walking_iso", "z2", "idempotent"]


@pytest.fixture(scope="module")
def frs(corpus):
    return {name: FreeRigid(corpus[name]) for name in CATEGORIES}


def trace_oracle(fr: FreeRigid, g: BrauerMor, f: BrauerMor) -> BrauerMor:
    """Compose by walking a directed graph of labeled strands."""
    C = fr.C

    def node(side, point, piece):
        kind, k = point
        if piece == "f":
            return ("in", k) if kind == "s" else ("mid", k)
        return ("mid", k) if kind == "s" else ("out", k)

    def weight(point, m):
        kind, k = point
        return m.source[k][1] if kind == "s" else -m.target[k][1]

    G = nx.DiGraph()
    for piece, m in (("f", f), ("g", g)):
        for a, b, label in m.strands:
            start, end = (a, b) if weight(a, m) > 0 else (b, a)
            G.add_edge(node(piece, start, piece), node(piece, end, piece), label=label)
    strands, loops = [], []
    outer = {"in": "s", "out": "t"}
    for n in sorted(G.nodes):
        if n[0] == "mid" or G.in_degree(n):
            continue
        labels, cur = [], n
        while G.out_degree(cur):
            (nxt,) = G.successors(cur)
            labels.append(G.edges[cur, nxt]["label"])
            cur = nxt
        strands.append(((outer[n[0]], n[1]), (outer[cur[0]], cur[1]), C.compose_path(labels)))
    seen = {v for comp in nx.weakly_connected_components(G) if any(v[0] != "mid" for v in comp) for v in comp}
    for comp in nx.weakly_connected_components(G):
        if comp & seen:
            continue
        start = min(comp)
        labels, cur = [], start
        while True:
            (nxt,) = G.successors(cur)
            labels.append(G.edges[cur, nxt]["label"])
            cur = nxt
            if cur == start:
                break
        loops.append(fr.traces.class_of[C.compose_path(labels)])
    return fr.make(f.source, g.target, strands, list(f.loops) + list(g.loops) + loops)


@pytest.fixture(scope="module")
def loop_free_by_source(frs):
    out = {}
    for name, fr in frs.items():
        table: dict = {}
        for v, w in itertools.product(fr.words(2), repeat=2):
            for m in fr.loop_free_hom(v, w):
                table.setdefault(v, []).append(m)
        out[name] = table
    return out


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(CATEGORIES), st.data())
def test_composition_matches_strand_oracle(frs, loop_free_by_source, name, data):
    fr, table = frs[name], loop_free_by_source[name]
    v = data.draw(st.sampled_from(sorted(table)))
    f = data.draw(st.sampled_from(table[v]))
    if f.target not in table:
        return
    g = data.draw(st.sampled_from(table[f.target]))
    loops = data.draw(st.lists(st.sampled_from(sorted(fr.traces.classes)), max_size=2))
    f = BrauerMor(f.source, f.target, f.strands, tuple(sorted(loops)))
    assert fr.compose(g, f) == trace_oracle(fr, g, f)


def test_terminal_matches_cobordisms(frs):
    fr = frs["terminal"]
    cup = fr.coev(lword([("*", 1)]))
    cap = fr.ev(lword([("*", 1)]))
    loop = fr.compose(fr.compose(cap, fr.symmetry(lword([("*", -1)]), lword([("*", 1)]))), cup)
    assert forget_labels(loop) == Cob1Mor((), (), [], 1)


def test_identity_loop_over_arrow(frs):
    fr = frs["walking_arrow"]
    w = lword([("x", -1), ("x", 1)])
    cup = fr.make((), w, [(("t", 0), ("t", 1), "id_x")])
    cap = fr.make(w, (), [(("s", 0), ("s", 1), "id_x")])
    assert fr.compose(cap, cup).loops == ("id_x",)


def test_idempotent_labeled_loop(frs):
    fr = frs["idempotent"]
    w = lword([("*", -1), ("*", 1)])
    cup = fr.make((), w, [(("t", 0), ("t", 1), "id_*")])
    cap = fr.make(w, (), [(("s", 0), ("s", 1), "e")])
    assert fr.compose(cap, cup).loops == (fr.traces.class_of["e"],)


def test_ill_typed_label_is_rejected(frs):
    fr = frs["walking_arrow"]
    with pytest.raises(LabelTypeMismatch):
        fr.make(lword([("x", 1)]), lword([("y", 1)]), [(("s", 0), ("t", 0), "id_x")])
    with pytest.raises(LabelTypeMismatch):
        fr.make(lword([("y", 1)]), lword([("x", 1)]), [(("s", 0), ("t", 0), "a")])


def test_dual_tensor_identity(frs):
    fr = frs["walking_arrow"]
    assert fr.dual(lword([("x", 1)])) == lword([("x", -1)])
    w = lword([("x", 1), ("y", -1)])
    assert fr.tensor(fr.identity(w[:1]), fr.identity(w[1:])) == fr.identity(w)


def test_symmetry_naturality_on_arrow(frs):
    fr = frs["walking_arrow"]
    morphisms = [m for v, w in itertools.product(fr.words(1), repeat=2) for m in fr.loop_free_hom(v, w)]
    for f, g in itertools.product(morphisms, repeat=2):
        lhs = fr.compose(fr.symmetry(f.target, g.target), fr.tensor(f, g))
        rhs = fr.compose(fr.tensor(g, f), fr.symmetry(f.source, g.source))
        assert lhs == rhs


@pytest.mark.parametrize(
    "name,pos,neg,loops,size",
    [
        ("terminal", ["*"], ["*"], 0, 1),
        ("walking_arrow", ["y"], ["x"], 0, 1),
        ("walking_arrow", ["x"], ["y"], 0, 0),
        ("walking_arrow", ["x"], [], 3, 0),
        ("z2", ["*", "*"], ["*", "*"], 1, 2 * 2 * 2 * 3),
    ],
)
def test_hom_from_unit_examples(corpus, name, pos, neg, loops, size):
    rep = fr_hom_from_unit(corpus[name], pos, neg, loops)
    assert rep.ok and rep.size == size


def test_arrow_cup_is_labeled_a(corpus):
    rep = fr_hom_from_unit(corpus["walking_arrow"], ["y"], ["x"], 0)
    assert [s[2] for m in rep.morphisms for s in m.strands] == ["a"]


@pytest.mark.parametrize("name,bound,count", [("terminal", 3, 4), ("z2", 2, 6), ("walking_iso", 2, 3), ("z2", 0, 1)])
def test_end_unit_counts(corpus, name, bound, count):
    rep = fr_end_unit(corpus[name], bound)
    assert rep.ok and len(rep.elements) == count
    if name == "terminal":
        assert len(rep.elements) == len(cob_enumerate_homs((), (), bound))


@given(st.integers(0, 6), st.integers(0, 5))
def test_multiset_count_is_stars_and_bars(n, k):
    brute = sum(1 for r in range(k + 1) for _ in itertools.combinations_with_replacement(range(n), r))
    assert multiset_count(n, k) == brute
    if n:
        assert multiset_count(n, k) == math.comb(n + k, k)


def test_vs_cob_small():
    rep = fr_vs_cob(2, 2)
    assert rep.ok
    assert rep.summary()["hom_sizes"]["+-|"] == 3


def test_fully_faithful_examples(corpus, loader):
    ident = fr_fully_faithful_check(Functor.identity(corpus["walking_arrow"]), 2, 1)
    assert ident.hypotheses and ident.ok
    iso = fr_fully_faithful_check(loader.functor(corpus_path("functor_terminal_iso")), 2, 1)
    assert iso.hypotheses and iso.ok
    z2 = fr_fully_faithful_check(loader.functor(corpus_path("functor_terminal_z2")), 2, 1)
    assert z2.faithful and not z2.trace_bijective
    assert ((), (), 2, 3) == tuple(z2.mismatches[0][:4])


def test_loop_rotation(corpus):
    for name in ("walking_arrow", "z2", "walking_iso"):
        rep = fr_loop_rotation_check(corpus[name], 2, 40)
        assert rep.ok and rep.pairs == 40


def test_rotation_classes_of_iso_loop(frs):
    fr = frs["walking_iso"]
    assert len(cycle_rotation_classes(fr, ["f", "g"])) == 1


@pytest.mark.parametrize("name", ["terminal", "idempotent"])
def test_laws_exhaustive(corpus, name):
    rep = fr_law_check(corpus[name], 2, 1)
    assert rep.ok, rep.failures[:3]


@pytest.mark.parametrize("name", CATEGORIES)
def test_rigidity(corpus, name):
    assert fr_rigidity_check(corpus[name], 2).ok


def test_universal_map_into_cyclic_group(loader, corpus):
    M = loader.monoidal(corpus_path("z3_monoidal"))
    F0 = GeneratorMap({"*": "g"}, {"id_*": "id_g"})
    rep = fr_universal_map(corpus["terminal"], M, F0, {"g": find_dual(M, "g")}, 2)
    assert rep.ok
    assert set(rep.loop_values.values()) == {"id_e"}


def test_universal_map_into_brauer_category_is_identity(frs):
    fr = frs["terminal"]
    gen = lword([("*", 1)])
    F0 = GeneratorMap({"*": gen}, {"id_*": fr.identity(gen)})
    duals = {gen: fr.dual_data(gen)}
    rep = fr_universal_map(fr.C, fr, F0, duals, 2)
    assert rep.ok
    ev = Evaluation(fr, fr, F0, duals)
    for v, w in itertools.product(fr.words(2), repeat=2):
        for m in fr.hom(v, w, 1):
            assert ev(m) == m


def test_ill_typed_duals_are_rejected(loader, corpus):
    M = loader.monoidal(corpus_path("z3_monoidal"))
    F0 = GeneratorMap({"*": "g"}, {"id_*": "id_g"})
    with pytest.raises(IllTypedDual):
        Evaluation(FreeRigid(corpus["terminal"]), M, F0, {"g": DualData("g", "g", "id_e", "id_e")})
