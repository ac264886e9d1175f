"""Strict symmetric monoidal structure on finite categories, duals, rigidity.

Associators and unitors are identities, so every coherence law is an
equality of identifiers and is checked by enumeration.

Duality convention: ``ev: x (x) x* -> 1`` and ``coev: 1 -> x* (x) x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterator, Mapping, Protocol

from .fincat import CategoryError, FinCat, Functor, Mor, Obj, functor_failures, isomorphic


class MonoidalViolation(CategoryError):
    pass


class TensorViolation(MonoidalViolation):
    pass


class SymmetryViolation(MonoidalViolation):
    pass


class CoherenceViolation(MonoidalViolation):
    pass


class MonoidalTarget(Protocol):
    """What evaluation and duality checks need from a strict symmetric monoidal category."""

    unit: Hashable

    def tensor_obj(self, x, y): ...
    def tensor(self, f, g): ...
    def compose(self, g, f): ...
    def identity(self, x): ...
    def symmetry(self, x, y): ...
    def dom(self, f): ...
    def cod(self, f): ...


@dataclass(frozen=True, eq=False)
class StrictMonCat:
    base: FinCat
    tensor_objects: Mapping[tuple[Obj, Obj], Obj]
    tensor_morphisms: Mapping[tuple[Mor, Mor], Mor]
    unit: Obj
    symmetries: Mapping[tuple[Obj, Obj], Mor]

    @property
    def name(self) -> str:
        return self.base.name

    @property
    def objects(self) -> tuple:
        return self.base.objects

    def tensor_obj(self, x: Obj, y: Obj) -> Obj:
        return self.tensor_objects[(x, y)]

    def tensor(self, f: Mor, g: Mor) -> Mor:
        return self.tensor_morphisms[(f, g)]

    def compose(self, g: Mor, f: Mor) -> Mor:
        return self.base.compose(g, f)

    def identity(self, x: Obj) -> Mor:
        return self.base.id(x)

    def symmetry(self, x: Obj, y: Obj) -> Mor:
        return self.symmetries[(x, y)]

    def dom(self, f: Mor) -> Obj:
        return self.base.src(f)

    def cod(self, f: Mor) -> Obj:
        return self.base.dst(f)

    def hom(self, x: Obj, y: Obj) -> tuple:
        return self.base.hom(x, y)


def monoidal_failures(M: StrictMonCat, first_only: bool = False) -> list[tuple[type, str, object]]:
    """Every violated strict symmetric monoidal law as ``(error class, message, witness)``."""
    C = M.base
    out: list[tuple[type, str, object]] = []
    name = C.name

    def fail(kind: type, msg: str, witness: object) -> bool:
        out.append((kind, f"{name}: {msg}", witness))
        return first_only

    objs, mors = C.objects, list(C.morphisms)
    if M.unit not in C.identities:
        fail(TensorViolation, f"unit {M.unit!r} is not an object", M.unit)
        return out
    for x, y in itertools.product(objs, repeat=2):
        if M.tensor_objects.get((x, y)) not in C.identities:
            if fail(TensorViolation, f"tensor of objects {x!r}, {y!r} is missing or unknown", (x, y)):
                return out
        s = M.symmetries.get((x, y))
        if s not in C.morphisms:
            if fail(SymmetryViolation, f"symmetry at {x!r}, {y!r} is missing or unknown", (x, y)):
                return out
    for f, g in itertools.product(mors, repeat=2):
        if M.tensor_morphisms.get((f, g)) not in C.morphisms:
            if fail(TensorViolation, f"tensor of morphisms {f!r}, {g!r} is missing or unknown", (f, g)):
                return out
    if out:
        return out

    T, t = M.tensor_obj, M.tensor
    for x in objs:
        if T(M.unit, x) != x or T(x, M.unit) != x:
            if fail(TensorViolation, f"unit law fails on object {x!r}", x):
                return out
    for x, y, z in itertools.product(objs, repeat=3):
        if T(T(x, y), z) != T(x, T(y, z)):
            if fail(TensorViolation, f"tensor not associative on objects {x!r}, {y!r}, {z!r}", (x, y, z)):
                return out
    u = C.id(M.unit)
    for f in mors:
        if t(u, f) != f or t(f, u) != f:
            if fail(TensorViolation, f"unit law fails on morphism {f!r}", f):
                return out
    for f, g in itertools.product(mors, repeat=2):
        if C.morphisms[t(f, g)] != (T(C.src(f), C.src(g)), T(C.dst(f), C.dst(g))):
            if fail(TensorViolation, f"{f!r} (x) {g!r} has the wrong endpoints", (f, g)):
                return out
    for f, g, h in itertools.product(mors, repeat=3):
        if t(t(f, g), h) != t(f, t(g, h)):
            if fail(TensorViolation, f"tensor not associative on {f!r}, {g!r}, {h!r}", (f, g, h)):
                return out
    for x, y in itertools.product(objs, repeat=2):
        if t(C.id(x), C.id(y)) != C.id(T(x, y)):
            if fail(TensorViolation, f"id_{x!r} (x) id_{y!r} is not an identity", (x, y)):
                return out
    pairs = list(C.composable_pairs())
    for (f2, f), (g2, g) in itertools.product(pairs, repeat=2):
        if t(C.compose(f2, f), C.compose(g2, g)) != C.compose(t(f2, g2), t(f, g)):
            if fail(TensorViolation, f"interchange fails for ({f2!r} o {f!r}) (x) ({g2!r} o {g!r})", (f2, f, g2, g)):
                return out

    s = M.symmetry
    for x, y in itertools.product(objs, repeat=2):
        if C.morphisms[s(x, y)] != (T(x, y), T(y, x)):
            if fail(SymmetryViolation, f"symmetry at {x!r}, {y!r} has the wrong endpoints", (x, y)):
                return out
            continue
        if C.compose(s(y, x), s(x, y)) != C.id(T(x, y)):
            if fail(SymmetryViolation, f"s({y!r},{x!r}) o s({x!r},{y!r}) is not the identity", (x, y)):
                return out
    for x in objs:
        if s(x, M.unit) != C.id(x) or s(M.unit, x) != C.id(x):
            if fail(SymmetryViolation, f"symmetry with the unit is not the identity at {x!r}", x):
                return out
    for f, g in itertools.product(mors, repeat=2):
        (x, x2), (y, y2) = C.morphisms[f], C.morphisms[g]
        if C.compose(s(x2, y2), t(f, g)) != C.compose(t(g, f), s(x, y)):
            if fail(SymmetryViolation, f"symmetry not natural at {f!r}, {g!r}", (f, g)):
                return out
    for x, y, z in itertools.product(objs, repeat=3):
        lhs = s(x, T(y, z))
        rhs = C.compose(t(C.id(y), s(x, z)), t(s(x, y), C.id(z)))
        if lhs != rhs:
            if fail(SymmetryViolation, f"hexagon fails at {x!r}, {y!r}, {z!r}", (x, y, z)):
                return out
    return out


def validate_monoidal(M: StrictMonCat) -> StrictMonCat:
    failures = monoidal_failures(M, first_only=True)
    if failures:
        kind, msg, witness = failures[0]
        raise kind(msg, witness)
    return M


def discrete_group_monoidal(elements, op, unit, name: str = "group") -> StrictMonCat:
    """Discrete category on a commutative monoid, tensor given by ``op``."""
    from .fincat import discrete_category

    elements = list(elements)
    C = discrete_category(elements, name=name)
    return validate_monoidal(
        StrictMonCat(
            C,
            {(a, b): op(a, b) for a in elements for b in elements},
            {(C.id(a), C.id(b)): C.id(op(a, b)) for a in elements for b in elements},
            unit,
            {(a, b): C.id(op(a, b)) for a in elements for b in elements},
        )
    )


# -- duals -------------------------------------------------------------------------


@dataclass(frozen=True)
class DualData:
    obj: Hashable
    dual: Hashable
    ev: Hashable
    coev: Hashable


def dual_failures(M: MonoidalTarget, d: DualData) -> list[str]:
    """Re-check typing and both zig-zag identities of ``d`` in ``M``."""
    x, y = d.obj, d.dual
    out = []
    if (M.dom(d.ev), M.cod(d.ev)) != (M.tensor_obj(x, y), M.unit):
        out.append(f"ev for {x!r} is not a map {x!r}(x){y!r} -> unit")
    if (M.dom(d.coev), M.cod(d.coev)) != (M.unit, M.tensor_obj(y, x)):
        out.append(f"coev for {x!r} is not a map unit -> {y!r}(x){x!r}")
    if out:
        return out
    ix, iy = M.identity(x), M.identity(y)
    zig = M.compose(M.tensor(d.ev, ix), M.tensor(ix, d.coev))
    if zig != ix:
        out.append(f"(ev (x) id) o (id (x) coev) != id at {x!r}")
    zag = M.compose(M.tensor(iy, d.ev), M.tensor(d.coev, iy))
    if zag != iy:
        out.append(f"(id (x) ev) o (coev (x) id) != id at dual {y!r}")
    return out


def _duals(M: StrictMonCat, x: Obj) -> Iterator[DualData]:
    for y in sorted(M.objects):
        for ev in M.hom(M.tensor_obj(x, y), M.unit):
            for coev in M.hom(M.unit, M.tensor_obj(y, x)):
                d = DualData(x, y, ev, coev)
                if not dual_failures(M, d):
                    yield d


def all_duals(M: StrictMonCat, x: Obj) -> list[DualData]:
    """Every valid dual triple for ``x``, in lexicographic order."""
    return list(_duals(M, x))


def find_dual(M: StrictMonCat, x: Obj) -> DualData | None:
    """The lexicographically least dual triple, or ``None``."""
    return next(_duals(M, x), None)


IDEMPOTENT_CAVEAT = (
    "duals are searched in the category itself, not its idempotent completion; "
    "an object reported without a dual may acquire one after splitting idempotents"
)


@dataclass
class RigidityReport:
    category: str
    duals: dict = field(default_factory=dict)
    caveat: str = IDEMPOTENT_CAVEAT

    @property
    def ok(self) -> bool:
        return all(d is not None for d in self.duals.values())

    @property
    def failures(self) -> list[str]:
        return [f"{self.category}: no dual for {x!r}" for x, d in self.duals.items() if d is None]

    def summary(self) -> dict:
        return {
            "category": self.category,
            "rigid": self.ok,
            "duals": {
                str(x): None if d is None else {"dual": d.dual, "ev": d.ev, "coev": d.coev}
                for x, d in self.duals.items()
            },
            "caveat": self.caveat,
        }


def check_rigid(M: StrictMonCat) -> RigidityReport:
    return RigidityReport(M.name, {x: find_dual(M, x) for x in sorted(M.objects)})


def duals_unique_up_to_iso(M: StrictMonCat, x: Obj) -> bool:
    found = all_duals(M, x)
    return all(isomorphic(M.base, found[0].dual, d.dual) for d in found[1:])


# -- lax monoidal functors -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LaxMonFunctor:
    """``mu[(x, y)]: F x (x) F y -> F(x (x) y)`` and ``unit_mor: 1 -> F 1``."""

    source: StrictMonCat
    target: StrictMonCat
    underlying: Functor
    mu: Mapping[tuple[Obj, Obj], Mor]
    unit_mor: Mor


def lax_functor_failures(L: LaxMonFunctor) -> list[str]:
    out = list(functor_failures(L.underlying))
    if out:
        return out
    M, N, F = L.source, L.target, L.underlying
    C, D = M.base, N.base
    T, t = N.tensor_obj, N.tensor
    for x, y in itertools.product(C.objects, repeat=2):
        m = L.mu.get((x, y))
        if D.morphisms.get(m) != (T(F.obj(x), F.obj(y)), F.obj(M.tensor_obj(x, y))):
            out.append(f"mu at {x!r}, {y!r} is missing or mistyped")
    if D.morphisms.get(L.unit_mor) != (N.unit, F.obj(M.unit)):
        out.append("unit map is missing or mistyped")
    if out:
        return out
    for f, g in itertools.product(C.morphisms, repeat=2):
        (x, x2), (y, y2) = C.morphisms[f], C.morphisms[g]
        lhs = D.compose(L.mu[(x2, y2)], t(F.mor(f), F.mor(g)))
        rhs = D.compose(F.mor(M.tensor(f, g)), L.mu[(x, y)])
        if lhs != rhs:
            out.append(f"mu not natural at {f!r}, {g!r}")
    for x, y, z in itertools.product(C.objects, repeat=3):
        Fx, Fy, Fz = (D.id(F.obj(v)) for v in (x, y, z))
        lhs = D.compose(L.mu[(M.tensor_obj(x, y), z)], t(L.mu[(x, y)], Fz))
        rhs = D.compose(L.mu[(x, M.tensor_obj(y, z))], t(Fx, L.mu[(y, z)]))
        if lhs != rhs:
            out.append(f"mu not associative at {x!r}, {y!r}, {z!r}")
    for x in C.objects:
        Fx = D.id(F.obj(x))
        if D.compose(L.mu[(M.unit, x)], t(L.unit_mor, Fx)) != Fx:
            out.append(f"left unit coherence fails at {x!r}")
        if D.compose(L.mu[(x, M.unit)], t(Fx, L.unit_mor)) != Fx:
            out.append(f"right unit coherence fails at {x!r}")
    for x, y in itertools.product(C.objects, repeat=2):
        lhs = D.compose(F.mor(M.symmetry(x, y)), L.mu[(x, y)])
        rhs = D.compose(L.mu[(y, x)], N.symmetry(F.obj(x), F.obj(y)))
        if lhs != rhs:
            out.append(f"mu not symmetric at {x!r}, {y!r}")
    return out
