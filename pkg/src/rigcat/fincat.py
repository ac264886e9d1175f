"""Finite categories given by explicit tables.

A :class:`FinCat` stores every morphism, every identity and every composite.
Nothing is computed lazily, so every law can be checked by enumeration.
Identifiers are arbitrary hashable, mutually comparable values: strings for
categories read from files, tuples for constructed ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping

Obj = Hashable
Mor = Hashable


class CategoryError(ValueError):
    """Base class for malformed category data. ``witness`` names the culprit."""

    def __init__(self, message: str, witness: object = None) -> None:
        super().__init__(message)
        self.witness = witness


class DanglingReference(CategoryError):
    pass


class IdentityViolation(CategoryError):
    pass


class AssocViolation(CategoryError):
    pass


class MissingComposite(CategoryError):
    pass


class FunctorViolation(CategoryError):
    pass


@dataclass(frozen=True, eq=False)
class FinCat:
    """A finite category.

    ``morphisms`` maps a morphism id to its ``(source, target)`` pair and
    ``composition`` maps ``(g, f)`` to the id of ``g o f``.  Build through
    :meth:`build` (validated) or :func:`validate_category`.
    """

    objects: tuple
    morphisms: Mapping[Mor, tuple[Obj, Obj]]
    identities: Mapping[Obj, Mor]
    composition: Mapping[tuple[Mor, Mor], Mor]
    name: str = "C"
    _homs: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        homs: dict[tuple[Obj, Obj], list[Mor]] = {}
        for m, (x, y) in self.morphisms.items():
            homs.setdefault((x, y), []).append(m)
        for key in homs:
            homs[key].sort()
        self._homs.update({k: tuple(v) for k, v in homs.items()})

    @classmethod
    def build(
        cls,
        objects: Iterable[Obj],
        morphisms: Mapping[Mor, tuple[Obj, Obj]],
        identities: Mapping[Obj, Mor],
        composition: Mapping[tuple[Mor, Mor], Mor],
        name: str = "C",
    ) -> FinCat:
        """Assemble tables, filling in composites with identities, then validate."""
        return validate_category(
            cls.raw(objects, morphisms, identities, composition, name=name)
        )

    @classmethod
    def raw(
        cls,
        objects: Iterable[Obj],
        morphisms: Mapping[Mor, tuple[Obj, Obj]],
        identities: Mapping[Obj, Mor],
        composition: Mapping[tuple[Mor, Mor], Mor],
        name: str = "C",
    ) -> FinCat:
        """Assemble tables without validating.

        Composites with identities that are absent from ``composition`` are
        filled in, so tables only need to list the nontrivial ones.
        """
        comp = dict(composition)
        morphisms = dict(morphisms)
        for x, i in identities.items():
            if i not in morphisms:
                continue
            for m, (a, b) in morphisms.items():
                if b == x:
                    comp.setdefault((i, m), m)
                if a == x:
                    comp.setdefault((m, i), m)
        return cls(tuple(objects), morphisms, dict(identities), comp, name)

    def hom(self, x: Obj, y: Obj) -> tuple:
        return self._homs.get((x, y), ())

    def src(self, f: Mor) -> Obj:
        return self.morphisms[f][0]

    def dst(self, f: Mor) -> Obj:
        return self.morphisms[f][1]

    def id(self, x: Obj) -> Mor:
        return self.identities[x]

    def compose(self, g: Mor, f: Mor) -> Mor:
        """``g o f``: first ``f``, then ``g``."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise MissingComposite(
                f"{self.name}: no composite recorded for {g!r} o {f!r}", (g, f)
            ) from None

    def compose_path(self, path: Iterable[Mor], start: Obj | None = None) -> Mor:
        """Compose morphisms listed in the order they are applied."""
        result = None if start is None else self.id(start)
        for m in path:
            result = m if result is None else self.compose(m, result)
        if result is None:
            raise ValueError("empty path needs a start object")
        return result

    def endomorphisms(self) -> Iterator[Mor]:
        for x in self.objects:
            yield from self.hom(x, x)

    def composable_pairs(self) -> Iterator[tuple[Mor, Mor]]:
        """All ``(g, f)`` with ``dst f == src g``."""
        for f, (_, y) in self.morphisms.items():
            for z in self.objects:
                for g in self.hom(y, z):
                    yield g, f

    def is_iso(self, f: Mor) -> bool:
        x, y = self.morphisms[f]
        return any(
            self.compose(g, f) == self.id(x) and self.compose(f, g) == self.id(y)
            for g in self.hom(y, x)
        )

    def __len__(self) -> int:
        return len(self.morphisms)

    def __repr__(self) -> str:
        return f"FinCat({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def validate_category(cat: FinCat) -> FinCat:
    """Check every category axiom by enumeration; return ``cat`` or raise."""
    name = cat.name
    objs = set(cat.objects)
    if len(objs) != len(cat.objects):
        dup = next(x for x in cat.objects if cat.objects.count(x) > 1)
        raise DanglingReference(f"{name}: object {dup!r} declared twice", dup)
    for m, (x, y) in cat.morphisms.items():
        for end in (x, y):
            if end not in objs:
                raise DanglingReference(
                    f"{name}: morphism {m!r} refers to undeclared object {end!r}", m
                )
    for x in cat.objects:
        if x not in cat.identities:
            raise DanglingReference(f"{name}: object {x!r} has no identity", x)
    for x, i in cat.identities.items():
        if x not in objs:
            raise DanglingReference(f"{name}: identity declared for unknown object {x!r}", x)
        if i not in cat.morphisms:
            raise DanglingReference(f"{name}: identity {i!r} of {x!r} is not a morphism", i)
        if cat.morphisms[i] != (x, x):
            raise IdentityViolation(f"{name}: identity {i!r} is not an endomorphism of {x!r}", i)
    for (g, f), gf in cat.composition.items():
        for m in (g, f, gf):
            if m not in cat.morphisms:
                raise DanglingReference(
                    f"{name}: composite {g!r} o {f!r} refers to unknown morphism {m!r}", m
                )
        if cat.dst(f) != cat.src(g):
            raise DanglingReference(
                f"{name}: composite {g!r} o {f!r} declared for a non-composable pair", (g, f)
            )
        if cat.morphisms[gf] != (cat.src(f), cat.dst(g)):
            raise DanglingReference(
                f"{name}: {g!r} o {f!r} = {gf!r} lies outside "
                f"hom({cat.src(f)!r}, {cat.dst(g)!r})",
                (g, f, gf),
            )
    for g, f in cat.composable_pairs():
        if (g, f) not in cat.composition:
            raise MissingComposite(f"{name}: composite {g!r} o {f!r} is missing", (g, f))
    for f, (x, y) in cat.morphisms.items():
        if cat.compose(cat.id(y), f) != f or cat.compose(f, cat.id(x)) != f:
            raise IdentityViolation(f"{name}: identity law fails for {f!r}", f)
    for g, f in cat.composable_pairs():
        gf = cat.compose(g, f)
        for h in _out_of(cat, cat.dst(g)):
            if cat.compose(h, gf) != cat.compose(cat.compose(h, g), f):
                raise AssocViolation(
                    f"{name}: ({h!r} o {g!r}) o {f!r} != {h!r} o ({g!r} o {f!r})", (h, g, f)
                )
    return cat


def _out_of(cat: FinCat, x: Obj) -> Iterator[Mor]:
    for y in cat.objects:
        yield from cat.hom(x, y)


def terminal_category(obj: Obj = "*", name: str = "terminal") -> FinCat:
    return FinCat.build([obj], {"id": (obj, obj)}, {obj: "id"}, {}, name=name)


def discrete_category(objects: Iterable[Obj], name: str = "discrete") -> FinCat:
    objects = list(objects)
    return FinCat.build(
        objects,
        {("id", x): (x, x) for x in objects},
        {x: ("id", x) for x in objects},
        {},
        name=name,
    )


def isomorphic(cat: FinCat, x: Obj, y: Obj) -> bool:
    return any(cat.is_iso(f) for f in cat.hom(x, y))


# -- functors -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCat
    target: FinCat
    object_map: Mapping[Obj, Obj]
    morphism_map: Mapping[Mor, Mor]
    name: str = "F"

    def obj(self, x: Obj) -> Obj:
        return self.object_map[x]

    def mor(self, f: Mor) -> Mor:
        return self.morphism_map[f]

    @classmethod
    def identity(cls, cat: FinCat) -> Functor:
        return cls(
            cat,
            cat,
            {x: x for x in cat.objects},
            {m: m for m in cat.morphisms},
            name=f"id_{cat.name}",
        )

    def then(self, other: Functor) -> Functor:
        """``other o self``."""
        return Functor(
            self.source,
            other.target,
            {x: other.obj(self.obj(x)) for x in self.source.objects},
            {m: other.mor(self.mor(m)) for m in self.source.morphisms},
            name=f"{other.name}.{self.name}",
        )


def functor_failures(F: Functor) -> list[str]:
    """Every way in which ``F`` fails to be a functor; empty when it is one."""
    C, D = F.source, F.target
    out = []
    for x in C.objects:
        if x not in F.object_map:
            out.append(f"{F.name}: object {x!r} is not mapped")
        elif F.object_map[x] not in D.identities:
            out.append(f"{F.name}: {x!r} maps to unknown object {F.object_map[x]!r}")
    for m in C.morphisms:
        if m not in F.morphism_map:
            out.append(f"{F.name}: morphism {m!r} is not mapped")
        elif F.morphism_map[m] not in D.morphisms:
            out.append(f"{F.name}: {m!r} maps to unknown morphism {F.morphism_map[m]!r}")
    if out:
        return out
    for m, (x, y) in C.morphisms.items():
        if D.morphisms[F.mor(m)] != (F.obj(x), F.obj(y)):
            out.append(f"{F.name}: image of {m!r} has the wrong endpoints")
    for x in C.objects:
        if F.mor(C.id(x)) != D.id(F.obj(x)):
            out.append(f"{F.name}: identity of {x!r} is not preserved")
    if out:
        return out
    for g, f in C.composable_pairs():
        if F.mor(C.compose(g, f)) != D.compose(F.mor(g), F.mor(f)):
            out.append(f"{F.name}: composite {g!r} o {f!r} is not preserved")
    return out


def validate_functor(F: Functor) -> Functor:
    failures = functor_failures(F)
    if failures:
        raise FunctorViolation(failures[0], F.name)
    return F


def is_full(F: Functor) -> bool:
    C, D = F.source, F.target
    return all(
        {F.mor(m) for m in C.hom(x, y)} == set(D.hom(F.obj(x), F.obj(y)))
        for x in C.objects
        for y in C.objects
    )


def is_faithful(F: Functor) -> bool:
    C = F.source
    return all(
        len({F.mor(m) for m in C.hom(x, y)}) == len(C.hom(x, y))
        for x in C.objects
        for y in C.objects
    )


# -- trace classes ----------------------------------------------------------------


class _UnionFind:
    def __init__(self, items: Iterable[Hashable]) -> None:
        self.parent = {x: x for x in items}

    def find(self, x: Hashable) -> Hashable:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: Hashable, b: Hashable) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # the smaller id becomes the root so representatives are least elements
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra


@dataclass(frozen=True, eq=False)
class TraceSet:
    """Endomorphisms of ``base`` modulo ``g o f ~ f o g``.

    A class is named by its least member; ``classes`` maps that name to the
    sorted members.
    """

    base: FinCat
    class_of: Mapping[Mor, Mor]
    classes: Mapping[Mor, tuple]

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[Mor]:
        return iter(sorted(self.classes))


def trace_set(cat: FinCat) -> TraceSet:
    uf = _UnionFind(cat.endomorphisms())
    for x, y in itertools.product(cat.objects, repeat=2):
        for f in cat.hom(x, y):
            for g in cat.hom(y, x):
                uf.union(cat.compose(g, f), cat.compose(f, g))
    class_of = {e: uf.find(e) for e in uf.parent}
    classes: dict[Mor, list[Mor]] = {}
    for e, c in class_of.items():
        classes.setdefault(c, []).append(e)
    return TraceSet(cat, class_of, {c: tuple(sorted(v)) for c, v in sorted(classes.items())})


# -- adjunctions --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Adjunction:
    """``left -| right`` with ``unit[c]: c -> R L c`` and ``counit[d]: L R d -> d``."""

    left: Functor
    right: Functor
    unit: Mapping[Obj, Mor]
    counit: Mapping[Obj, Mor]


@dataclass
class AdjunctionReport:
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {"ok": self.ok, "failures": list(self.failures)}


def comma_terminals(F: Functor, d: Obj) -> list[tuple[Obj, Mor]]:
    """Terminal objects ``(c, h: F c -> d)`` of the comma category ``(F | d)``, sorted."""
    C, D = F.source, F.target
    comma = [(c, h) for c in C.objects for h in D.hom(F.obj(c), d)]
    terminals = []
    for c, h in comma:
        if all(
            sum(1 for k in C.hom(c2, c) if D.compose(h, F.mor(k)) == h2) == 1
            for c2, h2 in comma
        ):
            terminals.append((c, h))
    return sorted(terminals)


def find_right_adjoint(F: Functor) -> Adjunction | None:
    """Right adjoint of ``F`` built from terminal objects of comma categories.

    Returns ``None`` as soon as some comma category has no terminal object.
    """
    C, D = F.source, F.target
    choice: dict[Obj, tuple[Obj, Mor]] = {}
    for d in D.objects:
        terminals = comma_terminals(F, d)
        if not terminals:
            return None
        choice[d] = terminals[0]

    def lift(c2: Obj, h2: Mor, d: Obj) -> Mor:
        # the unique k: c2 -> G d with counit_d o F k = h2
        c, h = choice[d]
        (k,) = [k for k in C.hom(c2, c) if D.compose(h, F.mor(k)) == h2]
        return k

    obj_map = {d: choice[d][0] for d in D.objects}
    mor_map = {}
    for u, (d, d2) in D.morphisms.items():
        c, h = choice[d]
        mor_map[u] = lift(c, D.compose(u, h), d2)
    G = Functor(D, C, obj_map, mor_map, name=f"{F.name}^R")
    unit = {c: lift(c, D.id(F.obj(c)), F.obj(c)) for c in C.objects}
    counit = {d: choice[d][1] for d in D.objects}
    return Adjunction(F, G, unit, counit)


def check_adjunction(adj: Adjunction) -> AdjunctionReport:
    F, G = adj.left, adj.right
    C, D = F.source, F.target
    report = AdjunctionReport()
    report.failures += functor_failures(F) + functor_failures(G)
    if report.failures:
        return report
    for c in C.objects:
        eta = adj.unit.get(c)
        if eta is None or C.morphisms.get(eta) != (c, G.obj(F.obj(c))):
            report.failures.append(f"unit component at {c!r} is missing or mistyped")
    for d in D.objects:
        eps = adj.counit.get(d)
        if eps is None or D.morphisms.get(eps) != (F.obj(G.obj(d)), d):
            report.failures.append(f"counit component at {d!r} is missing or mistyped")
    if report.failures:
        return report
    for k, (c, c2) in C.morphisms.items():
        lhs = C.compose(G.mor(F.mor(k)), adj.unit[c])
        rhs = C.compose(adj.unit[c2], k)
        if lhs != rhs:
            report.failures.append(f"unit not natural at {k!r}")
    for u, (d, d2) in D.morphisms.items():
        lhs = D.compose(u, adj.counit[d])
        rhs = D.compose(adj.counit[d2], F.mor(G.mor(u)))
        if lhs != rhs:
            report.failures.append(f"counit not natural at {u!r}")
    for c in C.objects:
        z = D.compose(adj.counit[F.obj(c)], F.mor(adj.unit[c]))
        if z != D.id(F.obj(c)):
            report.failures.append(f"triangle identity eps_F o F(eta) fails at {c!r}")
    for d in D.objects:
        z = C.compose(G.mor(adj.counit[d]), adj.unit[G.obj(d)])
        if z != C.id(G.obj(d)):
            report.failures.append(f"triangle identity G(eps) o eta_G fails at {d!r}")
    return report
