"""Oplax colimits of diagrams of finite categories, via the Grothendieck construction.

Objects of the total category are pairs ``(i, x)`` with ``x`` in the fiber
over ``i``; a morphism ``(i, x) -> (j, y)`` is a pair ``(f, phi)`` with
``f: i -> j`` in the index and ``phi: F(f)(x) -> y`` in the fiber over ``j``.
Composition is ``(g, psi) o (f, phi) = (g o f, psi o F(g)(phi))``.

Morphism ids are triples ``(f, x, phi)``: the pair alone does not determine
its source when ``F(f)`` identifies objects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .fincat import FinCat, Functor, Mor, Obj, functor_failures, validate_category
from .moncat import CoherenceViolation, StrictMonCat, monoidal_failures


class DiagramError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OplaxDiagram:
    index: FinCat
    fibers: Mapping[Obj, FinCat]
    transitions: Mapping[Mor, Functor]

    def F(self, f: Mor) -> Functor:
        return self.transitions[f]


def diagram_failures(D: OplaxDiagram) -> list[str]:
    I = D.index
    out = []
    for i in I.objects:
        if i not in D.fibers:
            out.append(f"no fiber over {i!r}")
    for f, (i, j) in I.morphisms.items():
        F = D.transitions.get(f)
        if F is None:
            out.append(f"no transition functor for {f!r}")
        elif F.source is not D.fibers.get(i) or F.target is not D.fibers.get(j):
            out.append(f"transition for {f!r} does not run between the fibers over {i!r} and {j!r}")
        else:
            out += [f"transition {f!r}: {msg}" for msg in functor_failures(F)]
    if out:
        return out
    for i in I.objects:
        F, C = D.F(I.id(i)), D.fibers[i]
        if dict(F.object_map) != {x: x for x in C.objects} or dict(F.morphism_map) != {m: m for m in C.morphisms}:
            out.append(f"transition along id_{i} is not the identity")
    for g, f in I.composable_pairs():
        gf, Ff, Fg = D.F(I.compose(g, f)), D.F(f), D.F(g)
        C = D.fibers[I.src(f)]
        if any(gf.obj(x) != Fg.obj(Ff.obj(x)) for x in C.objects) or any(
            gf.mor(m) != Fg.mor(Ff.mor(m)) for m in C.morphisms
        ):
            out.append(f"transition not functorial at {g!r} o {f!r}")
    return out


def validate_diagram(D: OplaxDiagram) -> OplaxDiagram:
    failures = diagram_failures(D)
    if failures:
        raise DiagramError(failures[0])
    return D


@dataclass(frozen=True, eq=False)
class GrothCat:
    diagram: OplaxDiagram
    category: FinCat
    projection: Functor


def grothendieck(D: OplaxDiagram, name: str = "grothendieck") -> GrothCat:
    validate_diagram(D)
    I = D.index
    objects = [(i, x) for i in I.objects for x in D.fibers[i].objects]
    morphisms = {}
    for f, (i, j) in I.morphisms.items():
        F, Cj = D.F(f), D.fibers[j]
        for x in D.fibers[i].objects:
            for y in Cj.objects:
                for phi in Cj.hom(F.obj(x), y):
                    morphisms[(f, x, phi)] = ((i, x), (j, y))
    identities = {(i, x): (I.id(i), x, D.fibers[i].id(x)) for i, x in objects}
    composition = {}
    for (f, x, phi), (a, b) in morphisms.items():
        for (g, y, psi), (b2, c) in morphisms.items():
            if b2 != b:
                continue
            k = I.dst(g)
            composition[((g, y, psi), (f, x, phi))] = (
                I.compose(g, f),
                x,
                D.fibers[k].compose(psi, D.F(g).mor(phi)),
            )
    total = validate_category(FinCat(tuple(objects), morphisms, identities, composition, name))
    proj = Functor(
        total,
        I,
        {(i, x): i for i, x in objects},
        {m: m[0] for m in morphisms},
        name=f"p_{name}",
    )
    return GrothCat(D, total, proj)


@dataclass
class HomFormulaReport:
    source: tuple
    target: tuple
    total_hom: int = 0
    fiberwise: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "source": list(self.source),
            "target": list(self.target),
            "total_hom": self.total_hom,
            "fiberwise": {str(f): n for f, n in self.fiberwise.items()},
            "failures": self.failures,
        }


def hom_formula_check(D: OplaxDiagram, i: Obj, x: Obj, j: Obj, y: Obj, G: GrothCat | None = None) -> HomFormulaReport:
    """Compare ``Hom((i,x),(j,y))`` with the disjoint union over ``f: i -> j``
    of ``Hom(F(f)x, y)``.

    The comparison sends ``phi`` in the ``f`` summand to
    ``(id_j, phi) o (f, id_{F(f)x})``, computed with the composition table of the total
    category, so a bookkeeping error in composition shows up as a failure.
    """
    G = G or grothendieck(D)
    T, I = G.category, D.index
    rep = HomFormulaReport((i, x), (j, y))
    left = set(T.hom((i, x), (j, y)))
    rep.total_hom = len(left)
    image = []
    for f in I.hom(i, j):
        F, Cj = D.F(f), D.fibers[j]
        summand = Cj.hom(F.obj(x), y)
        rep.fiberwise[f] = len(summand)
        fx = F.obj(x)
        cocone = (f, x, Cj.id(fx))
        for phi in summand:
            image.append(T.compose((I.id(j), fx, phi), cocone))
    if len(set(image)) != len(image):
        rep.failures.append(f"comparison map not injective on {(i, x)} -> {(j, y)}")
    if set(image) != left:
        missing = sorted(left - set(image), key=repr)
        rep.failures.append(
            f"comparison map not surjective on {(i, x)} -> {(j, y)}; missed {missing[:3]}"
        )
    return rep


def hom_formula_all(D: OplaxDiagram) -> list[HomFormulaReport]:
    G = grothendieck(D)
    return [
        hom_formula_check(D, i, x, j, y, G)
        for (i, x), (j, y) in itertools.product(G.category.objects, repeat=2)
    ]


# -- cocone --------------------------------------------------------------------------


@dataclass
class CoconeReport:
    inclusions: dict = field(default_factory=dict)
    components: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "inclusions": sorted(map(str, self.inclusions)),
            "components": {str(k): str(v) for k, v in sorted(self.components.items(), key=repr)},
            "failures": self.failures,
        }


def unit_cocone(D: OplaxDiagram, G: GrothCat | None = None) -> CoconeReport:
    """Inclusions of the fibers and the comparison cells ``(f, x, id): (i, x) -> (j, F(f)x)``.

    The cell for ``f: i -> j`` is a natural transformation from the inclusion
    of the fiber over ``i`` to the inclusion over ``j`` precomposed with F(f).
    """
    G = G or grothendieck(D)
    T, I = G.category, D.index
    rep = CoconeReport()
    for i in I.objects:
        C = D.fibers[i]
        inc = Functor(
            C,
            T,
            {x: (i, x) for x in C.objects},
            {m: (I.id(i), C.src(m), m) for m in C.morphisms},
            name=f"iota_{i}",
        )
        rep.inclusions[i] = inc
        rep.failures += functor_failures(inc)
        for x in C.objects:
            if G.projection.obj(inc.obj(x)) != i:
                rep.failures.append(f"projection of iota_{i}({x!r}) is not {i!r}")
        for m in C.morphisms:
            if G.projection.mor(inc.mor(m)) != I.id(i):
                rep.failures.append(f"projection of iota_{i}({m!r}) is not id_{i}")
    for f, (i, j) in I.morphisms.items():
        F, C = D.F(f), D.fibers[i]
        for x in C.objects:
            rep.components[(f, x)] = (f, x, D.fibers[j].id(F.obj(x)))
        for m, (x, x2) in C.morphisms.items():
            lhs = T.compose(rep.inclusions[j].mor(F.mor(m)), rep.components[(f, x)])
            rhs = T.compose(rep.components[(f, x2)], rep.inclusions[i].mor(m))
            if lhs != rhs:
                rep.failures.append(f"cell for {f!r} not natural at {m!r}")
    for i in I.objects:
        for x in D.fibers[i].objects:
            if rep.components[(I.id(i), x)] != T.id((i, x)):
                rep.failures.append(f"cell for id_{i} is not the identity at {x!r}")
    for g, f in I.composable_pairs():
        for x in D.fibers[I.src(f)].objects:
            fx = D.F(f).obj(x)
            lhs = rep.components[(I.compose(g, f), x)]
            rhs = T.compose(rep.components[(g, fx)], rep.components[(f, x)])
            if lhs != rhs:
                rep.failures.append(f"cells do not compose at {g!r} o {f!r}, {x!r}")
    return rep


# -- monoidal structure ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LaxMonDiagram:
    """A diagram over a strict symmetric monoidal index with strict lax structure.

    ``mu_objects[(i, j)][(x, y)]`` and ``mu_morphisms[(i, j)][(phi, psi)]``
    give the functor ``F(i) x F(j) -> F(i (x) j)``.  ``swap[(i, j)][(x, y)]``
    is the morphism ``F(s_ij)(mu(x, y)) -> mu(y, x)`` in ``F(j (x) i)``;
    when omitted it must be an identity.
    """

    diagram: OplaxDiagram
    index: StrictMonCat
    mu_objects: Mapping
    mu_morphisms: Mapping
    unit_fiber: Obj
    swap: Mapping | None = None

    def mu(self, i, j, x, y):
        return self.mu_objects[(i, j)][(x, y)]

    def mu_mor(self, i, j, phi, psi):
        return self.mu_morphisms[(i, j)][(phi, psi)]

    def swap_mor(self, i, j, x, y):
        if self.swap is not None and (i, j) in self.swap:
            return self.swap[(i, j)][(x, y)]
        k = self.index.tensor_obj(j, i)
        return self.diagram.fibers[k].id(self.mu(j, i, y, x))


def lax_diagram_failures(L: LaxMonDiagram) -> list[str]:
    D, M = L.diagram, L.index
    I = D.index
    out = []
    if M.base is not I:
        return ["monoidal index does not sit over the diagram's index"]
    for i, j in itertools.product(I.objects, repeat=2):
        Ci, Cj, Ck = D.fibers[i], D.fibers[j], D.fibers[M.tensor_obj(i, j)]
        for x, y in itertools.product(Ci.objects, Cj.objects):
            if L.mu_objects.get((i, j), {}).get((x, y)) not in Ck.identities:
                out.append(f"mu_{i},{j} missing or unknown on objects {x!r}, {y!r}")
        for p, q in itertools.product(Ci.morphisms, Cj.morphisms):
            r = L.mu_morphisms.get((i, j), {}).get((p, q))
            if r not in Ck.morphisms:
                out.append(f"mu_{i},{j} missing or unknown on morphisms {p!r}, {q!r}")
            elif Ck.morphisms[r] != (L.mu(i, j, Ci.src(p), Cj.src(q)), L.mu(i, j, Ci.dst(p), Cj.dst(q))):
                out.append(f"mu_{i},{j}({p!r}, {q!r}) has the wrong endpoints")
    if L.unit_fiber not in D.fibers[M.unit].identities:
        out.append(f"unit object {L.unit_fiber!r} is not in the fiber over the unit")
    if out:
        return out
    for i, j in itertools.product(I.objects, repeat=2):
        Ci, Cj, Ck = D.fibers[i], D.fibers[j], D.fibers[M.tensor_obj(i, j)]
        for x, y in itertools.product(Ci.objects, Cj.objects):
            if L.mu_mor(i, j, Ci.id(x), Cj.id(y)) != Ck.id(L.mu(i, j, x, y)):
                out.append(f"mu_{i},{j} does not preserve identities at {x!r}, {y!r}")
        for (p2, p), (q2, q) in itertools.product(Ci.composable_pairs(), Cj.composable_pairs()):
            if L.mu_mor(i, j, Ci.compose(p2, p), Cj.compose(q2, q)) != Ck.compose(
                L.mu_mor(i, j, p2, q2), L.mu_mor(i, j, p, q)
            ):
                out.append(f"mu_{i},{j} not functorial at {p2!r} o {p!r}, {q2!r} o {q!r}")
    if out:
        return out
    for f, g in itertools.product(I.morphisms, repeat=2):
        (i, i2), (j, j2) = I.morphisms[f], I.morphisms[g]
        Ff, Fg, Ffg = D.F(f), D.F(g), D.F(M.tensor(f, g))
        Ci, Cj = D.fibers[i], D.fibers[j]
        for x, y in itertools.product(Ci.objects, Cj.objects):
            if Ffg.obj(L.mu(i, j, x, y)) != L.mu(i2, j2, Ff.obj(x), Fg.obj(y)):
                out.append(f"mu not natural on objects at {f!r}, {g!r}, {x!r}, {y!r}")
        for p, q in itertools.product(Ci.morphisms, Cj.morphisms):
            if Ffg.mor(L.mu_mor(i, j, p, q)) != L.mu_mor(i2, j2, Ff.mor(p), Fg.mor(q)):
                out.append(f"mu not natural on morphisms at {f!r}, {g!r}, {p!r}, {q!r}")
    for i, j, k in itertools.product(I.objects, repeat=3):
        ij, jk = M.tensor_obj(i, j), M.tensor_obj(j, k)
        Ci, Cj, Ck = D.fibers[i], D.fibers[j], D.fibers[k]
        for x, y, z in itertools.product(Ci.objects, Cj.objects, Ck.objects):
            if L.mu(ij, k, L.mu(i, j, x, y), z) != L.mu(i, jk, x, L.mu(j, k, y, z)):
                out.append(f"mu not associative at {x!r}, {y!r}, {z!r}")
        for p, q, r in itertools.product(Ci.morphisms, Cj.morphisms, Ck.morphisms):
            if L.mu_mor(ij, k, L.mu_mor(i, j, p, q), r) != L.mu_mor(i, jk, p, L.mu_mor(j, k, q, r)):
                out.append(f"mu not associative at {p!r}, {q!r}, {r!r}")
    e, u = L.unit_fiber, M.unit
    Cu = D.fibers[u]
    for i in I.objects:
        Ci = D.fibers[i]
        for x in Ci.objects:
            if L.mu(u, i, e, x) != x or L.mu(i, u, x, e) != x:
                out.append(f"unit object is not a strict unit at {x!r}")
        for p in Ci.morphisms:
            if L.mu_mor(u, i, Cu.id(e), p) != p or L.mu_mor(i, u, p, Cu.id(e)) != p:
                out.append(f"unit object is not a strict unit at {p!r}")
    return out


def monoidal_grothendieck(L: LaxMonDiagram, name: str = "grothendieck") -> StrictMonCat:
    """Strict symmetric monoidal structure on the total category.

    ``(i, x) (x) (j, y) = (i (x) j, mu(x, y))``, morphisms tensor as
    ``(f (x) g, mu(x, y), mu(phi, psi))`` (strict naturality of mu makes this typed),
    the unit is ``(1, unit_fiber)`` and the symmetry is ``(s_ij, mu(x, y), swap)``.
    """
    failures = lax_diagram_failures(L)
    if failures:
        raise CoherenceViolation(failures[0], failures)
    G = grothendieck(L.diagram, name=name)
    T, M = G.category, L.index
    tensor_objects = {}
    for (i, x), (j, y) in itertools.product(T.objects, repeat=2):
        tensor_objects[((i, x), (j, y))] = (M.tensor_obj(i, j), L.mu(i, j, x, y))
    tensor_morphisms = {}
    for (f, x, phi), (g, y, psi) in itertools.product(T.morphisms, repeat=2):
        i, j = M.base.src(f), M.base.src(g)
        i2, j2 = M.base.dst(f), M.base.dst(g)
        tensor_morphisms[((f, x, phi), (g, y, psi))] = (
            M.tensor(f, g),
            L.mu(i, j, x, y),
            L.mu_mor(i2, j2, phi, psi),
        )
    symmetries = {}
    for (i, x), (j, y) in itertools.product(T.objects, repeat=2):
        symmetries[((i, x), (j, y))] = (M.symmetry(i, j), L.mu(i, j, x, y), L.swap_mor(i, j, x, y))
    out = StrictMonCat(T, tensor_objects, tensor_morphisms, (M.unit, L.unit_fiber), symmetries)
    problems = monoidal_failures(out, first_only=True)
    if problems:
        kind, msg, witness = problems[0]
        raise CoherenceViolation(f"total category is not strict symmetric monoidal: {msg}", witness)
    return out
