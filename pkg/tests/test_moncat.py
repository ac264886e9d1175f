from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rigcat.fincat import FinCat, Functor, isomorphic, terminal_category
from rigcat.moncat import (
    DualData,
    LaxMonFunctor,
    StrictMonCat,
    SymmetryViolation,
    TensorViolation,
    all_duals,
    check_rigid,
    discrete_group_monoidal,
    dual_failures,
    duals_unique_up_to_iso,
    find_dual,
    lax_functor_failures,
    validate_monoidal,
)
from rigcat.acceptance import corpus_path


def cyclic_one_object(n: int, symmetry: int) -> StrictMonCat:
    """One object; endomorphisms the cyclic group of order n; tensor of morphisms is the group law."""
    elems = [str(k) for k in range(n)]
    C = FinCat.build(
        ["*"],
        {e: ("*", "*") for e in elems},
        {"*": "0"},
        {(a, b): str((int(a) + int(b)) % n) for a in elems for b in elems},
        name=f"C{n}",
    )
    tmor = {(a, b): str((int(a) + int(b)) % n) for a in elems for b in elems}
    return StrictMonCat(C, {("*", "*"): "*"}, tmor, "*", {("*", "*"): str(symmetry)})


def test_terminal_monoidal_is_valid_and_rigid():
    T = terminal_category()
    M = validate_monoidal(StrictMonCat(T, {("*", "*"): "*"}, {("id", "id"): "id"}, "*", {("*", "*"): "id"}))
    assert check_rigid(M).ok
    assert find_dual(M, "*") == DualData("*", "*", "id", "id")


def test_cyclic_group_corpus(loader):
    M = loader.monoidal(corpus_path("z3_monoidal"))
    rep = check_rigid(M)
    assert rep.ok
    assert find_dual(M, "g") == DualData("g", "gg", "id_e", "id_e")
    assert find_dual(M, "e") == DualData("e", "e", "id_e", "id_e")


def test_non_involutive_symmetry_is_rejected():
    with pytest.raises(SymmetryViolation) as err:
        validate_monoidal(cyclic_one_object(3, 1))
    assert "identity" in str(err.value)


def test_symmetry_with_unit_must_be_identity():
    M = cyclic_one_object(2, 1)  # involutive, but the only object is the unit
    with pytest.raises(SymmetryViolation):
        validate_monoidal(M)
    validate_monoidal(cyclic_one_object(2, 0))


def test_missing_tensor_entry_is_rejected():
    M = discrete_group_monoidal([0, 1], lambda a, b: (a + b) % 2, 0)
    broken = dict(M.tensor_objects)
    del broken[(1, 1)]
    with pytest.raises(TensorViolation):
        validate_monoidal(StrictMonCat(M.base, broken, M.tensor_morphisms, 0, M.symmetries))


def test_join_monoidal_arrow_is_not_rigid(loader):
    M = loader.monoidal(corpus_path("arrow_join_monoidal"))
    rep = check_rigid(M)
    assert not rep.ok
    assert rep.duals["y"] is None and rep.duals["x"] is not None


# random commutative monoids on {0..n-1}: duals must be exactly the invertible elements

OPS = {
    "add": lambda n: (lambda a, b: (a + b) % n, 0),
    "max": lambda n: (max, 0),
    "min": lambda n: (min, n - 1),
    "mul": lambda n: (lambda a, b: (a * b) % n, 1 % n),
}


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.sampled_from(sorted(OPS)))
def test_duals_are_invertible_elements(n, op_name):
    op, unit = OPS[op_name](n)
    M = discrete_group_monoidal(range(n), op, unit)
    for x in range(n):
        inverses = [y for y in range(n) if op(x, y) == unit]
        d = find_dual(M, x)
        assert (d is not None) == bool(inverses)
        if d is not None:
            assert d.dual == min(inverses)
            assert not dual_failures(M, d)
            assert {e.dual for e in all_duals(M, x)} == set(inverses)
            assert duals_unique_up_to_iso(M, x)


def test_dual_check_rejects_wrong_witness(loader):
    M = loader.monoidal(corpus_path("z3_monoidal"))
    assert dual_failures(M, DualData("g", "g", "id_e", "id_e"))


def test_duals_unique_up_to_iso_in_corpus(loader):
    for name in ("z3_monoidal", "z2_monoidal", "arrow_join_monoidal"):
        M = loader.monoidal(corpus_path(name))
        for x in M.objects:
            found = all_duals(M, x)
            for a, b in itertools.combinations(found, 2):
                assert isomorphic(M.base, a.dual, b.dual)


def test_lax_functor_doubling_on_z3():
    M = discrete_group_monoidal(range(3), lambda a, b: (a + b) % 3, 0)
    C = M.base
    double = Functor(C, C, {x: 2 * x % 3 for x in range(3)}, {C.id(x): C.id(2 * x % 3) for x in range(3)})
    mu = {(x, y): C.id((2 * x + 2 * y) % 3) for x in range(3) for y in range(3)}
    assert lax_functor_failures(LaxMonFunctor(M, M, double, mu, C.id(0))) == []
    shift = Functor(C, C, {x: (x + 1) % 3 for x in range(3)}, {C.id(x): C.id((x + 1) % 3) for x in range(3)})
    mu = {(x, y): C.id((x + y + 2) % 3) for x in range(3) for y in range(3)}
    assert lax_functor_failures(LaxMonFunctor(M, M, shift, mu, C.id(1)))
