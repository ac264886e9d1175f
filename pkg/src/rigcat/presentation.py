"""Finite categories from generators and relations.

Words are tuples of generator names in the order they are applied, so
``("f", "g")`` is ``g o f``.  Normal forms are shortlex-least words (shortest,
then lexicographic in the sorted generator order) and are found by
Knuth-Bendix completion of the relations as a string rewriting system.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Hashable, Iterable, Mapping, Sequence

from .fincat import CategoryError, FinCat, validate_category

Word = tuple


class BoundExceeded(CategoryError):
    """A hom set grew past ``size_bound`` (``witness`` is the ``(x, y)`` pair)."""


class PresentationError(CategoryError):
    pass


def word_id(word: Word, obj: Hashable) -> str:
    """Identifier of a normal-form word: ``id_x`` or names joined by ``;``."""
    return f"id_{obj}" if not word else ";".join(word)


class _Rewriter:
    def __init__(self, rank: Mapping[str, int]) -> None:
        self.rank = rank
        self.rules: dict[Word, Word] = {}

    def key(self, w: Word) -> tuple:
        return (len(w), [self.rank[a] for a in w])

    def reduce(self, w: Word) -> Word:
        changed = True
        while changed:
            changed = False
            for lhs, rhs in self.rules.items():
                n = len(lhs)
                for i in range(len(w) - n + 1):
                    if w[i : i + n] == lhs:
                        w = w[:i] + rhs + w[i + n :]
                        changed = True
                        break
                if changed:
                    break
        return w

    def reducible_suffix(self, w: Word) -> bool:
        return any(len(l) <= len(w) and w[len(w) - len(l) :] == l for l in self.rules)

    def add(self, a: Word, b: Word, pending: deque) -> bool:
        a, b = self.reduce(a), self.reduce(b)
        if a == b:
            return False
        if self.key(a) < self.key(b):
            a, b = b, a
        # interreduce: rules whose left side now reduces go back to the queue
        for lhs in list(self.rules):
            if _contains(lhs, a):
                pending.append((lhs, self.rules.pop(lhs)))
        self.rules[a] = b
        for lhs, rhs in list(self.rules.items()):
            if lhs != a:
                self.rules[lhs] = self.reduce(rhs)
        return True

    def critical_pairs(self) -> Iterable[tuple[Word, Word]]:
        items = sorted(self.rules.items(), key=lambda kv: self.key(kv[0]))
        for (l1, r1), (l2, r2) in itertools.product(items, repeat=2):
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    yield r1 + l2[k:], l1[:-k] + r2


def _contains(w: Word, sub: Word) -> bool:
    n = len(sub)
    return any(w[i : i + n] == sub for i in range(len(w) - n + 1))


def close_presentation(
    objects: Sequence[Hashable],
    generators: Mapping[str, tuple[Hashable, Hashable]],
    relations: Iterable[tuple[Sequence[str], Sequence[str]]],
    size_bound: int,
    name: str = "C",
) -> FinCat:
    """Quotient of the free category on ``generators`` by ``relations``.

    Raises :class:`BoundExceeded` if some hom set has more than ``size_bound``
    elements, or if completion runs past the length any finite answer within
    that bound could need.
    """
    if size_bound < 1:
        raise ValueError("size_bound must be at least 1")
    objects = list(objects)
    for g, (x, y) in generators.items():
        for end in (x, y):
            if end not in objects:
                raise PresentationError(f"{name}: generator {g!r} refers to unknown object {end!r}", g)
    rank = {g: i for i, g in enumerate(sorted(generators))}
    rw = _Rewriter(rank)
    pending: deque = deque()
    for lhs, rhs in relations:
        lhs, rhs = tuple(lhs), tuple(rhs)
        ends = [_endpoints(w, generators, name) for w in (lhs, rhs) if w]
        if not ends:
            continue
        if len(ends) == 2 and ends[0] != ends[1]:
            raise PresentationError(f"{name}: relation {lhs} = {rhs} equates non-parallel words", (lhs, rhs))
        if len(ends) == 1 and ends[0][0] != ends[0][1]:
            raise PresentationError(f"{name}: relation {lhs} = {rhs} equates a non-endomorphism with an identity", (lhs, rhs))
        pending.append((lhs, rhs))

    # a finite answer has at most `total` morphisms, and every left side of
    # the reduced complete system is an irreducible word plus one letter
    total = len(objects) ** 2 * size_bound
    while True:
        while pending:
            a, b = pending.popleft()
            rw.add(a, b, pending)
            longest = max((len(l) for l in rw.rules), default=0)
            if longest > 2 * total + 2:
                lhs = max(rw.rules, key=len)
                raise BoundExceeded(
                    f"{name}: completion diverges (rule of length {len(lhs)})",
                    _endpoints(lhs, generators, name),
                )
        for a, b in rw.critical_pairs():
            if rw.reduce(a) != rw.reduce(b):
                pending.append((a, b))
        if not pending:
            break

    normal: dict[tuple, list[Word]] = {(x, y): [] for x in objects for y in objects}
    end_of: dict[tuple[Hashable, Word], Hashable] = {}
    for x in objects:
        frontier = [()]
        normal[(x, x)].append(())
        end_of[(x, ())] = x
        while frontier:
            nxt = []
            for w in frontier:
                here = end_of[(x, w)]
                for g in sorted(generators, key=rank.__getitem__):
                    if generators[g][0] != here:
                        continue
                    w2 = w + (g,)
                    if rw.reducible_suffix(w2):
                        continue
                    y = generators[g][1]
                    end_of[(x, w2)] = y
                    normal[(x, y)].append(w2)
                    if len(normal[(x, y)]) > size_bound:
                        raise BoundExceeded(
                            f"{name}: hom({x!r}, {y!r}) exceeds size bound {size_bound}", (x, y)
                        )
                    nxt.append(w2)
            frontier = nxt

    morphisms = {}
    word_of = {}
    for (x, y), words in normal.items():
        for w in words:
            mid = word_id(w, x)
            morphisms[mid] = (x, y)
            word_of[mid] = (x, w)
    identities = {x: word_id((), x) for x in objects}
    composition = {}
    for f, (x, y) in morphisms.items():
        for g, (y2, z) in morphisms.items():
            if y2 != y:
                continue
            nf = rw.reduce(word_of[f][1] + word_of[g][1])
            composition[(g, f)] = word_id(nf, x)
    return validate_category(FinCat(tuple(objects), morphisms, identities, composition, name))


def _endpoints(w: Word, generators: Mapping[str, tuple], name: str) -> tuple:
    for g in w:
        if g not in generators:
            raise PresentationError(f"{name}: unknown generator {g!r}", g)
    for a, b in zip(w, w[1:]):
        if generators[a][1] != generators[b][0]:
            raise PresentationError(f"{name}: word {w} is not a path", w)
    return generators[w[0]][0], generators[w[-1]][1]
