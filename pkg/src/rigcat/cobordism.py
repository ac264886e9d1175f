"""Oriented 1-dimensional cobordisms up to diffeomorphism.

A morphism between signed words is a perfect matching of boundary points
plus a number of closed circles.  Boundary points are ``("s", k)`` for the
k-th source letter and ``("t", l)`` for the l-th target letter.

Strand direction: a point has weight ``+sign`` on the source side and
``-sign`` on the target side.  Every strand joins a weight ``+1`` point to a
weight ``-1`` point and is read as flowing from the former to the latter, so
positive letters flow from source to target.

Only the circle *count* is kept: the space of closed 1-manifolds is
collapsed to its set of components.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

Point = tuple[str, int]
SignedWord = tuple[int, ...]


class BoundaryMismatch(ValueError):
    pass


class MatchingError(ValueError):
    pass


def word(spec: str | Iterable[int]) -> SignedWord:
    """``word("+-")`` -> ``(1, -1)``."""
    if isinstance(spec, str):
        try:
            return tuple({"+": 1, "-": -1}[c] for c in spec)
        except KeyError as exc:
            raise ValueError(f"bad sign {exc.args[0]!r} in word {spec!r}") from None
    return tuple(int(s) for s in spec)


def word_str(w: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in w)


def weight(point: Point, source: Sequence[int], target: Sequence[int]) -> int:
    side, k = point
    return source[k] if side == "s" else -target[k]


def points(source: Sequence, target: Sequence) -> list[Point]:
    return [("s", k) for k in range(len(source))] + [("t", l) for l in range(len(target))]


def canonical_pairs(pairs: Iterable[tuple[Point, Point]]) -> tuple[tuple[Point, Point], ...]:
    return tuple(sorted(tuple(sorted(p)) for p in pairs))


def check_matching(source: Sequence[int], target: Sequence[int], pairs) -> None:
    seen: list[Point] = [p for pair in pairs for p in pair]
    expected = points(source, target)
    if sorted(seen) != expected:
        raise MatchingError(
            f"pairs {list(pairs)} are not a perfect matching of "
            f"{word_str(source)} -> {word_str(target)}"
        )
    for a, b in pairs:
        if weight(a, source, target) + weight(b, source, target) != 0:
            raise MatchingError(f"pair {a}-{b} joins points of the same orientation")


@dataclass(frozen=True)
class Cob1Mor:
    source: SignedWord
    target: SignedWord
    pairs: tuple[tuple[Point, Point], ...]
    circles: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "source", word(self.source))
        object.__setattr__(self, "target", word(self.target))
        object.__setattr__(self, "pairs", canonical_pairs(self.pairs))
        if self.circles < 0:
            raise MatchingError("circle count must be non-negative")
        check_matching(self.source, self.target, self.pairs)

    def __str__(self) -> str:
        pairs = " ".join(f"{a[0]}{a[1]}-{b[0]}{b[1]}" for a, b in self.pairs)
        return f"{word_str(self.source)}->{word_str(self.target)} [{pairs}] o{self.circles}"


def directed(pairs, source, target) -> Iterator[tuple[Point, Point, int]]:
    """Each pair as ``(start, end, index)`` with ``start`` of weight +1."""
    for i, (a, b) in enumerate(pairs):
        if weight(a, source, target) > 0:
            yield a, b, i
        else:
            yield b, a, i


def glue(f_edges, g_edges):
    """Glue directed edges of ``f`` (below) and ``g`` (above) along the middle word.

    Edges are ``(start, end, payload)`` in each piece's own point names.
    Returns ``(paths, cycles)``: ``paths`` are ``(start, end, payloads)``
    between outer points, named as in the composite; ``cycles`` are payload
    lists of closed paths in flow order, each started at its least middle point.
    """
    out: dict[tuple, tuple] = {}
    starts = []
    for a, b, pay in f_edges:
        node = ("a", a[1]) if a[0] == "s" else ("m", a[1])
        out[node] = (("a", b[1]) if b[0] == "s" else ("m", b[1]), pay)
        if node[0] == "a":
            starts.append(node)
    for a, b, pay in g_edges:
        node = ("m", a[1]) if a[0] == "s" else ("c", a[1])
        out[node] = (("m", b[1]) if b[0] == "s" else ("c", b[1]), pay)
        if node[0] == "c":
            starts.append(node)

    paths = []
    used = set()
    for start in sorted(starts):
        node, payloads = start, []
        while True:
            node, pay = out[node]
            payloads.append(pay)
            if node[0] != "m":
                break
            used.add(node)
        paths.append((_outer_name(start), _outer_name(node), payloads))
    cycles = []
    if len(used) < len(out) - len(starts):
        for start in sorted(n for n in out if n[0] == "m" and n not in used):
            if start in used:
                continue
            node, payloads = start, []
            while True:
                used.add(node)
                node, pay = out[node]
                payloads.append(pay)
                if node == start:
                    break
            cycles.append(payloads)
    return paths, cycles


def _outer_name(node: tuple) -> Point:
    return ("s", node[1]) if node[0] == "a" else ("t", node[1])


def cob_compose(g: Cob1Mor, f: Cob1Mor) -> Cob1Mor:
    """``g o f``: glue ``g`` on top of ``f``."""
    if f.target != g.source:
        raise BoundaryMismatch(
            f"cannot compose: {word_str(f.target)} != {word_str(g.source)}"
        )
    fe = [(a, b, None) for a, b, _ in directed(f.pairs, f.source, f.target)]
    ge = [(a, b, None) for a, b, _ in directed(g.pairs, g.source, g.target)]
    paths, cycles = glue(fe, ge)
    return Cob1Mor(
        f.source,
        g.target,
        [(a, b) for a, b, _ in paths],
        f.circles + g.circles + len(cycles),
    )


def _shift(p: Point, ds: int, dt: int) -> Point:
    return (p[0], p[1] + (ds if p[0] == "s" else dt))


def cob_tensor(f: Cob1Mor, g: Cob1Mor) -> Cob1Mor:
    ds, dt = len(f.source), len(f.target)
    return Cob1Mor(
        f.source + g.source,
        f.target + g.target,
        list(f.pairs) + [(_shift(a, ds, dt), _shift(b, ds, dt)) for a, b in g.pairs],
        f.circles + g.circles,
    )


def cob_identity(w) -> Cob1Mor:
    w = word(w)
    return Cob1Mor(w, w, [(("s", k), ("t", k)) for k in range(len(w))])


def cob_symmetry(w1, w2) -> Cob1Mor:
    w1, w2 = word(w1), word(w2)
    n1, n2 = len(w1), len(w2)
    pairs = [(("s", k), ("t", n2 + k)) for k in range(n1)]
    pairs += [(("s", n1 + k), ("t", k)) for k in range(n2)]
    return Cob1Mor(w1 + w2, w2 + w1, pairs)


def cob_dual(w) -> SignedWord:
    return tuple(-s for s in reversed(word(w)))


def cob_ev(w) -> Cob1Mor:
    """``w (x) w* -> empty``, nested caps."""
    w = word(w)
    n = len(w)
    return Cob1Mor(w + cob_dual(w), (), [(("s", k), ("s", 2 * n - 1 - k)) for k in range(n)])


def cob_coev(w) -> Cob1Mor:
    """``empty -> w* (x) w``, nested cups."""
    w = word(w)
    n = len(w)
    return Cob1Mor((), cob_dual(w) + w, [(("t", k), ("t", 2 * n - 1 - k)) for k in range(n)])


def matchings(source: Sequence[int], target: Sequence[int]) -> list[tuple]:
    """All orientation-compatible perfect matchings, canonical and sorted."""
    pos = [p for p in points(source, target) if weight(p, source, target) > 0]
    neg = [p for p in points(source, target) if weight(p, source, target) < 0]
    if len(pos) != len(neg):
        return []
    return sorted(canonical_pairs(zip(pos, perm)) for perm in itertools.permutations(neg))


def cob_enumerate_homs(w1, w2, max_circles: int) -> list[Cob1Mor]:
    if max_circles < 0:
        raise ValueError("max_circles must be non-negative")
    w1, w2 = word(w1), word(w2)
    return [
        Cob1Mor(w1, w2, m, c)
        for m in matchings(w1, w2)
        for c in range(max_circles + 1)
    ]


def all_words(maxlen: int) -> list[SignedWord]:
    """Signed words of length at most ``maxlen``, shortest first."""
    return [w for n in range(maxlen + 1) for w in itertools.product((1, -1), repeat=n)]


def compose_all(morphisms: Sequence[Cob1Mor], op: Callable = cob_compose) -> Cob1Mor:
    """Compose a path given in application order."""
    result = morphisms[0]
    for m in morphisms[1:]:
        result = op(m, result)
    return result
