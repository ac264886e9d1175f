"""The labeled oriented Brauer category on a finite category ``C``.

Objects are words of ``(object, sign)`` letters.  A morphism is an
orientation-compatible matching of boundary points (same conventions as
:mod:`rigcat.cobordism`) in which each strand carries a morphism of ``C``
from the object at its weight +1 end to the object at its weight -1 end,
together with a multiset of closed loops.  A loop is remembered only by the
trace class of its composite endomorphism, which is what makes the loop
label independent of where one starts reading it.

This is the free rigid symmetric monoidal category on ``C`` before
idempotent completion.  Hom sets are infinite because of loops, so every
enumeration takes a loop bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .cobordism import (
    BoundaryMismatch,
    Cob1Mor,
    MatchingError,
    all_words,
    check_matching,
    cob_compose,
    cob_enumerate_homs,
    cob_tensor,
    directed,
    glue,
    matchings,
    word_str,
)
from .fincat import CategoryError, FinCat, Functor, Mor, Obj, is_faithful, is_full, terminal_category, trace_set
from .moncat import DualData, MonoidalTarget, dual_failures

Letter = tuple[Hashable, int]
LabeledWord = tuple[Letter, ...]

IDEMPOTENT_CAVEAT = (
    "Brauer model without idempotent completion; the free rigid category may "
    "differ from it by splitting idempotents"
)


class LabelTypeMismatch(CategoryError):
    pass


class IllTypedDual(CategoryError):
    pass


def lword(spec: Iterable) -> LabeledWord:
    """Normalize letters given as ``(obj, "+")``, ``(obj, 1)`` or ``"obj+"``."""
    out = []
    for item in spec:
        if isinstance(item, str):
            obj, sign = item[:-1], item[-1]
        else:
            obj, sign = item
        if sign in ("+", 1):
            out.append((obj, 1))
        elif sign in ("-", -1):
            out.append((obj, -1))
        else:
            raise ValueError(f"bad sign {sign!r} in letter {item!r}")
    return tuple(out)


def signs(w: LabeledWord) -> tuple[int, ...]:
    return tuple(s for _, s in w)


def lword_str(w: LabeledWord) -> str:
    return " ".join(f"{x}{'+' if s > 0 else '-'}" for x, s in w) or "()"


def dual_word(w: LabeledWord) -> LabeledWord:
    return tuple((x, -s) for x, s in reversed(w))


@dataclass(frozen=True)
class BrauerMor:
    source: LabeledWord
    target: LabeledWord
    strands: tuple
    loops: tuple = ()

    def __post_init__(self) -> None:
        strands = tuple(sorted((*sorted((a, b)), lab) for a, b, lab in self.strands))
        object.__setattr__(self, "strands", strands)
        object.__setattr__(self, "loops", tuple(sorted(self.loops)))

    @property
    def pairs(self) -> tuple:
        return tuple((a, b) for a, b, _ in self.strands)

    def edges(self) -> tuple:
        """Strands as ``(start, end, label)`` in flow direction (cached)."""
        try:
            return self.__dict__["_edges"]
        except KeyError:
            s, t = signs(self.source), signs(self.target)
            edges = tuple(
                (a, b, self.strands[i][2]) for a, b, i in directed(self.pairs, s, t)
            )
            object.__setattr__(self, "_edges", edges)
            return edges

    def __str__(self) -> str:
        body = " ".join(f"{a[0]}{a[1]}-{b[0]}{b[1]}:{lab}" for a, b, lab in self.strands)
        loops = ",".join(map(str, self.loops))
        return f"{lword_str(self.source)} -> {lword_str(self.target)} [{body}] loops[{loops}]"


def _canonical(source, target, strands, loops) -> BrauerMor:
    # fast path for data already in canonical order
    m = object.__new__(BrauerMor)
    object.__setattr__(m, "source", source)
    object.__setattr__(m, "target", target)
    object.__setattr__(m, "strands", strands)
    object.__setattr__(m, "loops", loops)
    return m


def _letter(p, source, target) -> Letter:
    return source[p[1]] if p[0] == "s" else target[p[1]]


class FreeRigid:
    """Operations of the Brauer category on ``C``; satisfies :class:`MonoidalTarget`."""

    unit: LabeledWord = ()

    def __init__(self, C: FinCat) -> None:
        self.C = C
        self.traces = trace_set(C)

    # -- construction and checking -----------------------------------------------

    def check(self, m: BrauerMor) -> BrauerMor:
        C = self.C
        for x, _ in m.source + m.target:
            if x not in C.identities:
                raise LabelTypeMismatch(f"{C.name}: unknown object {x!r} in boundary word", x)
        s, t = signs(m.source), signs(m.target)
        check_matching(s, t, m.pairs)
        for a, b, lab in m.strands:
            start, end, _ = next(directed([(a, b)], s, t))
            want = (_letter(start, m.source, m.target)[0], _letter(end, m.source, m.target)[0])
            if C.morphisms.get(lab) != want:
                raise LabelTypeMismatch(
                    f"{C.name}: strand {a}-{b} labeled {lab!r}, expected a morphism "
                    f"{want[0]!r} -> {want[1]!r}",
                    lab,
                )
        for c in m.loops:
            if c not in self.traces.classes:
                raise LabelTypeMismatch(f"{C.name}: {c!r} does not name a trace class", c)
        return m

    def make(self, source, target, strands, loops=()) -> BrauerMor:
        loops = [self.traces.class_of.get(c, c) for c in loops]
        return self.check(BrauerMor(lword(source), lword(target), tuple(strands), tuple(loops)))

    # -- monoidal structure ------------------------------------------------------

    def tensor_obj(self, v: LabeledWord, w: LabeledWord) -> LabeledWord:
        return tuple(v) + tuple(w)

    def dom(self, f: BrauerMor) -> LabeledWord:
        return f.source

    def cod(self, f: BrauerMor) -> LabeledWord:
        return f.target

    def identity(self, w: LabeledWord) -> BrauerMor:
        return BrauerMor(w, w, tuple((("s", k), ("t", k), self.C.id(x)) for k, (x, _) in enumerate(w)))

    def compose(self, g: BrauerMor, f: BrauerMor) -> BrauerMor:
        return self.compose_traced(g, f)[0]

    def compose_traced(self, g: BrauerMor, f: BrauerMor) -> tuple[BrauerMor, list[list[Mor]]]:
        """``g o f`` and, for each loop it closes, the strand labels in flow order."""
        if f.target != g.source:
            raise BoundaryMismatch(
                f"cannot compose: {lword_str(f.target)} != {lword_str(g.source)}"
            )
        C = self.C
        paths, cycles = glue(f.edges(), g.edges())
        strands = []
        for a, b, labels in paths:
            lab = labels[0] if len(labels) == 1 else C.compose_path(labels)
            strands.append((a, b, lab) if a < b else (b, a, lab))
        strands.sort()
        loops = f.loops + g.loops
        if cycles:
            loops += tuple(self.traces.class_of[C.compose_path(labels)] for labels in cycles)
        if f.loops and g.loops or cycles:
            loops = tuple(sorted(loops))
        return _canonical(f.source, g.target, tuple(strands), loops), cycles

    def tensor(self, f: BrauerMor, g: BrauerMor) -> BrauerMor:
        ds, dt = len(f.source), len(f.target)

        def shift(p):
            return (p[0], p[1] + (ds if p[0] == "s" else dt))

        strands = f.strands + tuple((shift(a), shift(b), lab) for a, b, lab in g.strands)
        return BrauerMor(f.source + g.source, f.target + g.target, strands, f.loops + g.loops)

    def symmetry(self, v: LabeledWord, w: LabeledWord) -> BrauerMor:
        n1, n2 = len(v), len(w)
        strands = [(("s", k), ("t", n2 + k), self.C.id(x)) for k, (x, _) in enumerate(v)]
        strands += [(("s", n1 + k), ("t", k), self.C.id(x)) for k, (x, _) in enumerate(w)]
        return BrauerMor(tuple(v) + tuple(w), tuple(w) + tuple(v), tuple(strands))

    def dual(self, w: LabeledWord) -> LabeledWord:
        return dual_word(w)

    def ev(self, w: LabeledWord) -> BrauerMor:
        """``w (x) w* -> ()`` with identity labels."""
        n = len(w)
        strands = tuple((("s", k), ("s", 2 * n - 1 - k), self.C.id(x)) for k, (x, _) in enumerate(w))
        return BrauerMor(tuple(w) + dual_word(w), (), strands)

    def coev(self, w: LabeledWord) -> BrauerMor:
        """``() -> w* (x) w`` with identity labels."""
        n = len(w)
        strands = tuple((("t", n + k), ("t", n - 1 - k), self.C.id(x)) for k, (x, _) in enumerate(w))
        return BrauerMor((), dual_word(w) + tuple(w), strands)

    def dual_data(self, w: LabeledWord) -> DualData:
        return DualData(w, dual_word(w), self.ev(w), self.coev(w))

    # -- enumeration ----------------------------------------------------------------

    def loop_multisets(self, max_loops: int) -> list[tuple]:
        classes = sorted(self.traces.classes)
        return [
            combo
            for k in range(max_loops + 1)
            for combo in itertools.combinations_with_replacement(classes, k)
        ]

    def loop_free_hom(self, v: LabeledWord, w: LabeledWord) -> list[BrauerMor]:
        C = self.C
        out = []
        for pairs in matchings(signs(v), signs(w)):
            choices = []
            for a, b, _ in directed(pairs, signs(v), signs(w)):
                choices.append(C.hom(_letter(a, v, w)[0], _letter(b, v, w)[0]))
            for labels in itertools.product(*choices):
                out.append(BrauerMor(v, w, tuple((a, b, lab) for (a, b), lab in zip(pairs, labels))))
        return out

    def hom(self, v: LabeledWord, w: LabeledWord, max_loops: int) -> list[BrauerMor]:
        if max_loops < 0:
            raise ValueError("max_loops must be non-negative")
        multisets = self.loop_multisets(max_loops)
        return [
            BrauerMor(m.source, m.target, m.strands, loops)
            for m in self.loop_free_hom(v, w)
            for loops in multisets
        ]

    def words(self, maxlen: int) -> list[LabeledWord]:
        letters = [(x, s) for x in sorted(self.C.objects) for s in (1, -1)]
        return [w for n in range(maxlen + 1) for w in itertools.product(letters, repeat=n)]


def multiset_count(n_classes: int, max_loops: int) -> int:
    """Number of multisets of size at most ``max_loops`` over ``n_classes`` elements."""
    if n_classes == 0:
        return 1
    return math.comb(n_classes + max_loops, max_loops)


def cycle_rotation_classes(fr: FreeRigid, labels: Sequence[Mor]) -> set:
    """Trace class of a closed path read from every starting strand."""
    C = fr.C
    n = len(labels)
    return {fr.traces.class_of[C.compose_path(list(labels[i:]) + list(labels[:i]))] for i in range(n)}


# -- reports ------------------------------------------------------------------------


@dataclass
class HomFromUnitReport:
    category: str
    positive: list
    negative: list
    max_loops: int
    size: int = 0
    loop_free: int = 0
    formula_loop_free: int = 0
    multisets: int = 0
    by_bijection: dict = field(default_factory=dict)
    morphisms: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    caveat: str = IDEMPOTENT_CAVEAT

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "category": self.category,
            "positive": self.positive,
            "negative": self.negative,
            "max_loops": self.max_loops,
            "size": self.size,
            "loop_free": self.loop_free,
            "formula_loop_free": self.formula_loop_free,
            "loop_multisets": self.multisets,
            "by_bijection": {",".join(map(str, k)): v for k, v in self.by_bijection.items()},
            "morphisms": [str(m) for m in self.morphisms],
            "failures": self.failures,
            "caveat": self.caveat,
        }


def fr_hom_from_unit(C: FinCat, pos: Sequence[Obj], neg: Sequence[Obj], max_loops: int) -> HomFromUnitReport:
    """Hom from the empty word to ``m_1+ ... m_i+ n_1- ... n_j-``, with its decomposition.

    Each loop-free morphism is a bijection ``sigma`` pairing the i-th positive
    letter with the ``sigma(i)``-th negative one, plus labels in
    ``Hom(n_sigma(i), m_i)``.  The decomposition is checked against an
    independent enumeration of that indexing set.
    """
    fr = FreeRigid(C)
    i, j = len(pos), len(neg)
    target = tuple((m, 1) for m in pos) + tuple((n, -1) for n in neg)
    rep = HomFromUnitReport(C.name, list(pos), list(neg), max_loops)
    rep.morphisms = fr.hom((), target, max_loops)
    loop_free = fr.loop_free_hom((), target)
    rep.size, rep.loop_free = len(rep.morphisms), len(loop_free)
    rep.multisets = multiset_count(len(fr.traces), max_loops)

    decomposed = {}
    for m in loop_free:
        sigma = [None] * i
        labels = [None] * i
        for a, b, lab in m.strands:
            # a < b: the positive letter sits first in the target word
            p, q = a[1], b[1] - i
            sigma[p], labels[p] = q, lab
        decomposed[m] = (tuple(sigma), tuple(labels))
    formula = set()
    if i == j:
        for sigma in itertools.permutations(range(j)):
            homs = [C.hom(neg[sigma[p]], pos[p]) for p in range(i)]
            for labels in itertools.product(*homs):
                formula.add((sigma, labels))
                rep.by_bijection[sigma] = rep.by_bijection.get(sigma, 0) + 1
    rep.formula_loop_free = len(formula)

    image = set(decomposed.values())
    if len(image) != len(decomposed):
        rep.failures.append("decomposition map is not injective")
    if image != formula:
        rep.failures.append(
            f"decomposition image ({len(image)}) differs from bijection-indexed set ({len(formula)})"
        )
    if rep.size != rep.formula_loop_free * rep.multisets:
        rep.failures.append(
            f"hom size {rep.size} != {rep.formula_loop_free} x {rep.multisets}"
        )
    if i != j and loop_free:
        rep.failures.append("loop-free morphisms exist although i != j")
    return rep


@dataclass
class EndUnitReport:
    category: str
    max_loops: int
    trace_classes: int = 0
    elements: list = field(default_factory=list)
    expected: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "category": self.category,
            "max_loops": self.max_loops,
            "trace_classes": self.trace_classes,
            "count": len(self.elements),
            "expected": self.expected,
            "elements": [list(map(str, m.loops)) for m in self.elements],
            "failures": self.failures,
        }


def fr_end_unit(C: FinCat, max_loops: int) -> EndUnitReport:
    """Endomorphisms of the empty word with at most ``max_loops`` loops, as a monoid."""
    fr = FreeRigid(C)
    rep = EndUnitReport(C.name, max_loops, len(fr.traces))
    rep.elements = fr.hom((), (), max_loops)
    rep.expected = multiset_count(len(fr.traces), max_loops)
    if len(rep.elements) != rep.expected:
        rep.failures.append(f"{len(rep.elements)} elements, expected {rep.expected}")
    one = fr.identity(())
    for a in rep.elements:
        if fr.compose(a, one) != a or fr.compose(one, a) != a:
            rep.failures.append(f"unit law fails at {a}")
        if a.strands:
            rep.failures.append(f"closed endomorphism {a} has strands")
    for a, b in itertools.product(rep.elements, repeat=2):
        ab = fr.compose(a, b)
        if ab != fr.compose(b, a):
            rep.failures.append(f"not commutative at {a}, {b}")
        if ab.loops != tuple(sorted(a.loops + b.loops)):
            rep.failures.append(f"product of {a}, {b} is not multiset union")
    for a, b, c in itertools.product(rep.elements, repeat=3):
        if fr.compose(fr.compose(a, b), c) != fr.compose(a, fr.compose(b, c)):
            rep.failures.append(f"not associative at {a}, {b}, {c}")
    return rep


# -- comparison with cobordisms -----------------------------------------------------


@dataclass
class VsCobReport:
    maxlen: int
    bound: int
    word_pairs: int = 0
    morphisms: int = 0
    compositions: int = 0
    tensors: int = 0
    hom_sizes: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "maxlen": self.maxlen,
            "bound": self.bound,
            "word_pairs": self.word_pairs,
            "morphisms": self.morphisms,
            "compositions_checked": self.compositions,
            "tensors_checked": self.tensors,
            "hom_sizes": {f"{word_str(a)}|{word_str(b)}": n for (a, b), n in sorted(self.hom_sizes.items())},
            "failures": self.failures[:50],
        }


def forget_labels(m: BrauerMor) -> Cob1Mor:
    """Brauer morphism over the terminal category -> cobordism (loops become circles)."""
    return Cob1Mor(signs(m.source), signs(m.target), m.pairs, len(m.loops))


def fr_vs_cob(maxlen: int, max_circles: int) -> VsCobReport:
    """Check the Brauer category on a point against the cobordism category.

    Compares hom sets between all words of length at most ``maxlen`` with at
    most ``max_circles`` loops, then composition and tensor on them.
    """
    if maxlen < 0 or max_circles < 0:
        raise ValueError("bounds must be non-negative")
    pt = terminal_category()
    fr = FreeRigid(pt)
    obj = pt.objects[0]
    rep = VsCobReport(maxlen, max_circles)
    words = all_words(maxlen)
    homs: dict[tuple, list[BrauerMor]] = {}
    for a, b in itertools.product(words, repeat=2):
        la, lb = tuple((obj, s) for s in a), tuple((obj, s) for s in b)
        ours = fr.hom(la, lb, max_circles)
        theirs = cob_enumerate_homs(a, b, max_circles)
        rep.word_pairs += 1
        if not ours and not theirs:
            continue
        homs[(a, b)] = ours
        rep.hom_sizes[(a, b)] = len(ours)
        rep.morphisms += len(ours)
        image = [forget_labels(m) for m in ours]
        if len(set(image)) != len(image) or set(image) != set(theirs):
            rep.failures.append(
                f"hom {word_str(a)} -> {word_str(b)}: {len(set(image))} images vs {len(theirs)} cobordisms"
            )
    cob_of = {m: forget_labels(m) for ms in homs.values() for m in ms}
    for (a, b), fs in homs.items():
        for c in words:
            for g in homs.get((b, c), ()):
                for f in fs:
                    rep.compositions += 1
                    if forget_labels(fr.compose(g, f)) != cob_compose(cob_of[g], cob_of[f]):
                        rep.failures.append(f"composition mismatch: {g} o {f}")
    morphs = sorted(cob_of, key=str)
    for f, g in itertools.product(morphs, repeat=2):
        if len(f.source) + len(g.source) > maxlen or len(f.target) + len(g.target) > maxlen:
            continue
        rep.tensors += 1
        if forget_labels(fr.tensor(f, g)) != cob_tensor(cob_of[f], cob_of[g]):
            rep.failures.append(f"tensor mismatch: {f} (x) {g}")
    return rep


# -- transfer of full faithfulness -----------------------------------------------------


@dataclass
class FullyFaithfulReport:
    functor: str
    maxlen: int
    max_loops: int
    full: bool = False
    faithful: bool = False
    trace_well_defined: bool = False
    trace_bijective: bool = False
    trace_sizes: tuple = (0, 0)
    homs_checked: int = 0
    mismatches: list = field(default_factory=list)
    caveat: str = IDEMPOTENT_CAVEAT

    @property
    def hypotheses(self) -> bool:
        return self.full and self.faithful and self.trace_well_defined and self.trace_bijective

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def failures(self) -> list[str]:
        out = []
        if not (self.full and self.faithful):
            out.append(f"{self.functor} is not {'full' if not self.full else 'faithful'}")
        if not self.trace_bijective:
            out.append(
                f"{self.functor}: trace map {self.trace_sizes[0]} -> {self.trace_sizes[1]} classes is not bijective"
            )
        out += [
            f"hom {lword_str(v)} -> {lword_str(w)}: {n} vs {n2} elements, injective={inj}"
            for v, w, n, n2, inj in self.mismatches
        ]
        return out

    def summary(self) -> dict:
        return {
            "functor": self.functor,
            "maxlen": self.maxlen,
            "max_loops": self.max_loops,
            "full": self.full,
            "faithful": self.faithful,
            "trace_well_defined": self.trace_well_defined,
            "trace_bijective": self.trace_bijective,
            "trace_sizes": list(self.trace_sizes),
            "homs_checked": self.homs_checked,
            "hom_bijective": self.ok,
            "mismatches": [
                {"source": lword_str(v), "target": lword_str(w), "size": n, "image_hom_size": n2, "injective": inj}
                for v, w, n, n2, inj in self.mismatches
            ],
            "caveat": self.caveat,
        }


def fr_fully_faithful_check(F: Functor, maxlen: int, max_loops: int) -> FullyFaithfulReport:
    """Compare Brauer hom sets over ``C`` with those over ``D`` along ``F``."""
    C, D = F.source, F.target
    frC, frD = FreeRigid(C), FreeRigid(D)
    rep = FullyFaithfulReport(F.name, maxlen, max_loops)
    rep.full, rep.faithful = is_full(F), is_faithful(F)
    trace_map: dict = {}
    well_defined = True
    for e in C.endomorphisms():
        c, image = frC.traces.class_of[e], frD.traces.class_of[F.mor(e)]
        if trace_map.setdefault(c, image) != image:
            well_defined = False
    rep.trace_well_defined = well_defined
    rep.trace_sizes = (len(frC.traces), len(frD.traces))
    rep.trace_bijective = well_defined and set(trace_map.values()) == set(frD.traces.classes) and len(
        set(trace_map.values())
    ) == len(trace_map)

    def push_word(w):
        return tuple((F.obj(x), s) for x, s in w)

    def push(m: BrauerMor) -> BrauerMor:
        return BrauerMor(
            push_word(m.source),
            push_word(m.target),
            tuple((a, b, F.mor(lab)) for a, b, lab in m.strands),
            tuple(trace_map[c] for c in m.loops),
        )

    words = frC.words(maxlen)
    for v, w in itertools.product(words, repeat=2):
        ours = frC.hom(v, w, max_loops)
        theirs = frD.hom(push_word(v), push_word(w), max_loops)
        if not ours and not theirs:
            continue
        rep.homs_checked += 1
        image = [push(m) for m in ours]
        injective = len(set(image)) == len(image)
        if not injective or set(image) != set(theirs):
            rep.mismatches.append((v, w, len(ours), len(theirs), injective))
    return rep


# -- evaluation in a rigid target ---------------------------------------------------------


@dataclass(frozen=True)
class GeneratorMap:
    """Object and morphism assignment ``C -> M`` when ``M`` is not a :class:`FinCat`."""

    object_map: Mapping
    morphism_map: Mapping

    def obj(self, x):
        return self.object_map[x]

    def mor(self, f):
        return self.morphism_map[f]


class Evaluation:
    """The strict monoidal functor out of the Brauer category determined by ``F0`` and duals."""

    def __init__(self, fr: FreeRigid, M: MonoidalTarget, F0, duals: Mapping) -> None:
        self.fr, self.M, self.F0 = fr, M, F0
        self.duals = {}
        for x in fr.C.objects:
            y = F0.obj(x)
            if y not in duals:
                raise IllTypedDual(f"no dual supplied for {y!r} (image of {x!r})", y)
            d = duals[y]
            problems = dual_failures(M, d)
            if d.obj != y or problems:
                raise IllTypedDual(f"dual data for {y!r} is invalid: {'; '.join(problems) or 'wrong object'}", y)
            self.duals[y] = d

    def letter(self, letter: Letter):
        x, s = letter
        y = self.F0.obj(x)
        return y if s > 0 else self.duals[y].dual

    def obj(self, w: LabeledWord):
        M = self.M
        out = M.unit
        for letter in w:
            out = M.tensor_obj(out, self.letter(letter))
        return out

    def _tensor_all(self, maps: Sequence):
        M = self.M
        out = M.identity(M.unit)
        for m in maps:
            out = M.tensor(out, m)
        return out

    def mate(self, lab: Mor):
        """``F0(lab)^dual: x* -> y*`` for ``lab: y -> x``."""
        M, C = self.M, self.fr.C
        y, x = (self.F0.obj(v) for v in C.morphisms[lab])
        dy, dx = self.duals[y], self.duals[x]
        step1 = M.tensor(dy.coev, M.identity(dx.dual))
        step2 = self._tensor_all([M.identity(dy.dual), self.F0.mor(lab), M.identity(dx.dual)])
        step3 = M.tensor(M.identity(dy.dual), dx.ev)
        return M.compose(step3, M.compose(step2, step1))

    def permutation(self, objs: Sequence, order: Sequence[int]):
        """Morphism sending factor ``order[p]`` of ``objs`` to position ``p``."""
        M = self.M
        current = list(range(len(objs)))
        result = M.identity(self._obj_list(objs))
        # bubble sort by rank in ``order``; each swap is an adjacent symmetry
        rank = {old: p for p, old in enumerate(order)}
        changed = True
        while changed:
            changed = False
            for k in range(len(current) - 1):
                if rank[current[k]] > rank[current[k + 1]]:
                    facs = [objs[i] for i in current]
                    swap = self._tensor_all(
                        [M.identity(o) for o in facs[:k]]
                        + [M.symmetry(facs[k], facs[k + 1])]
                        + [M.identity(o) for o in facs[k + 2 :]]
                    )
                    result = M.compose(swap, result)
                    current[k], current[k + 1] = current[k + 1], current[k]
                    changed = True
        return result

    def _obj_list(self, objs: Sequence):
        out = self.M.unit
        for o in objs:
            out = self.M.tensor_obj(out, o)
        return out

    def scalar(self, cls: Mor):
        """Value of a loop: ``ev o s o (id (x) F0 e) o coev`` for the class representative ``e``."""
        M, C = self.M, self.fr.C
        x = self.F0.obj(C.src(cls))
        d = self.duals[x]
        m = M.compose(M.tensor(M.identity(d.dual), self.F0.mor(cls)), d.coev)
        m = M.compose(M.symmetry(d.dual, x), m)
        return M.compose(d.ev, m)

    def __call__(self, f: BrauerMor):
        M = self.M
        S, T = f.source, f.target
        s_signs, t_signs = signs(S), signs(T)
        cups, caps, through = [], [], []
        for a, b, lab in f.strands:
            start, end, _ = next(directed([(a, b)], s_signs, t_signs))
            kinds = (a[0], b[0])
            if kinds == ("s", "s"):
                caps.append((start, end, lab))
            elif kinds == ("t", "t"):
                cups.append((start, end, lab))
            else:
                through.append((start, end, lab))

        # middle word: source letters, then one dual pair per cup
        W: list = list(self.letter(l) for l in S)
        per_pos: list = [None] * len(S)
        dest: dict[int, int] = {}
        cap_slots: list[tuple[int, int, Hashable]] = []
        coevs = []
        for start, end, lab in through:
            if start[0] == "s":  # positive letter flowing up
                k, l = start[1], end[1]
                per_pos[k] = self.F0.mor(lab)
            else:  # negative letter: label runs from target to source
                k, l = end[1], start[1]
                per_pos[k] = self.mate(lab)
            dest[k] = l
        for start, end, lab in caps:
            # start is the positive source letter, end the negative one
            per_pos[start[1]] = self.F0.mor(lab)
            per_pos[end[1]] = M.identity(W[end[1]])
            cap_slots.append((start[1], end[1], self.F0.obj(self.fr.C.dst(lab))))
        for start, end, lab in cups:
            # start is the negative target letter, end the positive one
            n = self.F0.obj(self.fr.C.src(lab))
            d = self.duals[n]
            coevs.append(d.coev)
            k = len(W)
            W += [d.dual, n]
            per_pos += [M.identity(d.dual), self.F0.mor(lab)]
            dest[k], dest[k + 1] = start[1], end[1]

        step1 = M.tensor(M.identity(self.obj(S)), self._tensor_all(coevs))
        step2 = self._tensor_all(per_pos)
        after = [M.cod(m) for m in per_pos]
        order = [p for a, b, _ in sorted(cap_slots) for p in (a, b)]
        order += sorted(dest, key=dest.__getitem__)
        step3 = self.permutation(after, order)
        evs = [self.duals[y].ev for _, _, y in sorted(cap_slots)]
        step4 = M.tensor(self._tensor_all(evs), M.identity(self.obj(T)))
        result = M.compose(step4, M.compose(step3, M.compose(step2, step1)))
        for cls in f.loops:
            result = M.tensor(self.scalar(cls), result)
        return result


@dataclass
class UniversalReport:
    diagram_bound: int
    max_loops: int
    morphisms: int = 0
    compositions: int = 0
    tensors: int = 0
    loop_values: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    caveat: str = IDEMPOTENT_CAVEAT

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "diagram_bound": self.diagram_bound,
            "max_loops": self.max_loops,
            "morphisms": self.morphisms,
            "compositions_checked": self.compositions,
            "tensors_checked": self.tensors,
            "loop_values": {str(k): str(v) for k, v in self.loop_values.items()},
            "failures": self.failures[:50],
            "caveat": self.caveat,
        }


def fr_universal_map(
    C: FinCat,
    M: MonoidalTarget,
    F0,
    duals: Mapping,
    diagram_bound: int,
    max_loops: int = 1,
) -> UniversalReport:
    """Evaluate Brauer diagrams in ``M`` and check functoriality and monoidality.

    ``F0`` needs ``obj``/``mor`` (a :class:`Functor` or :class:`GeneratorMap`);
    ``duals`` maps each image object to its :class:`DualData`.
    """
    fr = FreeRigid(C)
    ev = Evaluation(fr, M, F0, duals)
    rep = UniversalReport(diagram_bound, max_loops)
    for cls in sorted(fr.traces.classes):
        rep.loop_values[cls] = ev.scalar(cls)
        # every member of the class must give the same scalar
        for e in fr.traces.classes[cls]:
            if ev.scalar(e) != rep.loop_values[cls]:
                rep.failures.append(f"loop value depends on representative: {e!r} vs {cls!r}")
    words = fr.words(diagram_bound)
    homs = {}
    for v, w in itertools.product(words, repeat=2):
        ms = fr.hom(v, w, max_loops)
        if ms:
            homs[(v, w)] = ms
    values = {}
    for (v, w), ms in homs.items():
        for m in ms:
            values[m] = ev(m)
            rep.morphisms += 1
            if (M.dom(values[m]), M.cod(values[m])) != (ev.obj(v), ev.obj(w)):
                rep.failures.append(f"value of {m} has the wrong type")
    for v in words:
        if ev(fr.identity(v)) != M.identity(ev.obj(v)):
            rep.failures.append(f"identity on {lword_str(v)} not preserved")
        for w in words:
            if len(v) + len(w) <= diagram_bound:
                if ev(fr.symmetry(v, w)) != M.symmetry(ev.obj(v), ev.obj(w)):
                    rep.failures.append(f"symmetry on {lword_str(v)}, {lword_str(w)} not preserved")
    for (u, v), fs in homs.items():
        for w in words:
            for g in homs.get((v, w), ()):
                for f in fs:
                    rep.compositions += 1
                    if ev(fr.compose(g, f)) != M.compose(values[g], values[f]):
                        rep.failures.append(f"composition not preserved: {g} o {f}")
    loop_free = [m for ms in homs.values() for m in ms if len(m.loops) <= max_loops]
    for f, g in itertools.product(loop_free, repeat=2):
        if len(f.source) + len(g.source) > diagram_bound or len(f.target) + len(g.target) > diagram_bound:
            continue
        rep.tensors += 1
        if ev(fr.tensor(f, g)) != M.tensor(values[f], values[g]):
            rep.failures.append(f"tensor not preserved: {f} (x) {g}")
    return rep


# -- laws and rigidity -------------------------------------------------------------------


@dataclass
class LawReport:
    category: str
    maxlen: int
    max_loops: int
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "category": self.category,
            "maxlen": self.maxlen,
            "max_loops": self.max_loops,
            "checked": dict(sorted(self.checked.items())),
            "failures": self.failures[:50],
        }


def fr_law_check(C: FinCat, maxlen: int, max_loops: int) -> LawReport:
    """Category, interchange and symmetry laws on a truncation of the Brauer category."""
    fr = FreeRigid(C)
    rep = LawReport(C.name, maxlen, max_loops)
    words = fr.words(maxlen)
    homs = {}
    for v, w in itertools.product(words, repeat=2):
        ms = fr.hom(v, w, max_loops)
        if ms:
            homs[(v, w)] = ms
    memo: dict = {}

    def comp(g: BrauerMor, f: BrauerMor) -> BrauerMor:
        key = (g, f)
        if key not in memo:
            memo[key] = fr.compose(g, f)
        return memo[key]

    count = dict.fromkeys(["identity", "associativity", "additivity", "interchange", "symmetry", "labels"], 0)
    for ms in homs.values():
        for f in ms:
            count["labels"] += 1
            try:
                fr.check(f)
            except (LabelTypeMismatch, MatchingError) as exc:
                rep.failures.append(str(exc))
            count["identity"] += 1
            if fr.compose(fr.identity(f.target), f) != f or fr.compose(f, fr.identity(f.source)) != f:
                rep.failures.append(f"identity law fails at {f}")
    # loops are carried additively; with this checked on every composable pair,
    # triples with loops on at most one factor cover associativity in general
    loop_free_of = {f: BrauerMor(f.source, f.target, f.strands) for ms in homs.values() for f in ms}
    by_source: dict = {}
    for (v, w), ms in homs.items():
        by_source.setdefault(v, []).append((w, ms))
    for (u, v), fs in homs.items():
        for w, gs in by_source.get(v, ()):
            for g in gs:
                gf = {f: comp(g, f) for f in fs}
                for x, hs in by_source.get(w, ()):
                    for h in hs:
                        hg = comp(h, g)
                        for f in fs:
                            if sum(bool(m.loops) for m in (f, g, h)) > 1:
                                continue
                            count["associativity"] += 1
                            if comp(h, gf[f]) != comp(hg, f):
                                rep.failures.append(f"associativity fails at {h}, {g}, {f}")
    for (u, v), fs in homs.items():
        for w, gs in by_source.get(v, ()):
            for f in fs:
                for g in gs:
                    count["additivity"] += 1
                    base = fr.compose(loop_free_of[g], loop_free_of[f])
                    want = BrauerMor(base.source, base.target, base.strands, base.loops + f.loops + g.loops)
                    if comp(g, f) != want:
                        rep.failures.append(f"loops not carried additively at {g} o {f}")
    # interchange on pairs of composable pairs whose tensors stay within the bound;
    # loops ride along additively, so at most one factor of each pair carries them
    by_len: dict = {}
    for (u, v), fs in homs.items():
        for w, gs in by_source.get(v, ()):
            for f in fs:
                for g in gs:
                    if not (f.loops and g.loops):
                        by_len.setdefault((len(u), len(v), len(w)), []).append((g, f, comp(g, f)))
    for k1, k2 in itertools.product(by_len, repeat=2):
        if any(a + b > maxlen for a, b in zip(k1, k2)):
            continue
        for (g, f, gf), (g2, f2, gf2) in itertools.product(by_len[k1], by_len[k2]):
            count["interchange"] += 1
            lhs = fr.compose(fr.tensor(g, g2), fr.tensor(f, f2))
            rhs = fr.tensor(gf, gf2)
            if lhs != rhs:
                rep.failures.append(f"interchange fails at {g}, {f}, {g2}, {f2}")
    for v, w in itertools.product(words, repeat=2):
        if len(v) + len(w) > maxlen:
            continue
        count["symmetry"] += 1
        s, s_back = fr.symmetry(v, w), fr.symmetry(w, v)
        if fr.compose(s_back, s) != fr.identity(v + w):
            rep.failures.append(f"symmetry not involutive at {lword_str(v)}, {lword_str(w)}")
    loop_free = [m for ms in homs.values() for m in ms if not m.loops]
    for f, g in itertools.product(loop_free, repeat=2):
        if len(f.source) + len(g.source) > maxlen or len(f.target) + len(g.target) > maxlen:
            continue
        count["symmetry"] += 1
        lhs = fr.compose(fr.symmetry(f.target, g.target), fr.tensor(f, g))
        rhs = fr.compose(fr.tensor(g, f), fr.symmetry(f.source, g.source))
        if lhs != rhs:
            rep.failures.append(f"symmetry not natural at {f}, {g}")
    rep.checked = count
    return rep


@dataclass
class FrRigidityReport:
    category: str
    maxlen: int
    words: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {"category": self.category, "maxlen": self.maxlen, "words": self.words, "failures": self.failures}


def fr_rigidity_check(C: FinCat, maxlen: int) -> FrRigidityReport:
    """Both zig-zag identities for every labeled word up to ``maxlen``."""
    fr = FreeRigid(C)
    rep = FrRigidityReport(C.name, maxlen)
    for w in fr.words(maxlen):
        rep.words += 1
        rep.failures += [f"{lword_str(w)}: {p}" for p in dual_failures(fr, fr.dual_data(w))]
    return rep


@dataclass
class LoopRotationReport:
    category: str
    maxlen: int
    limit: int
    pairs: int = 0
    loops: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "category": self.category,
            "maxlen": self.maxlen,
            "limit": self.limit,
            "pairs": self.pairs,
            "loops": self.loops,
            "failures": self.failures,
        }


def loop_producing_pairs(fr: FreeRigid, maxlen: int) -> Iterator[tuple[BrauerMor, BrauerMor]]:
    """Composable loop-free ``(g, f)`` whose composite closes at least one loop, in a fixed order."""
    words = fr.words(maxlen)
    for w in words:
        if not w:
            continue
        into = [f for v in words for f in fr.loop_free_hom(v, w)]
        out = [g for u in words for g in fr.loop_free_hom(w, u)]
        for f in into:
            for g in out:
                if fr.compose(g, f).loops:
                    yield g, f


def fr_loop_rotation_check(C: FinCat, maxlen: int, limit: int) -> LoopRotationReport:
    """Closed loops give one trace class from every starting strand, and that class is recorded."""
    fr = FreeRigid(C)
    rep = LoopRotationReport(C.name, maxlen, limit)
    for g, f in itertools.islice(loop_producing_pairs(fr, maxlen), limit):
        rep.pairs += 1
        composite, cycles = fr.compose_traced(g, f)
        found = []
        for labels in cycles:
            rep.loops += 1
            classes = cycle_rotation_classes(fr, labels)
            if len(classes) != 1:
                rep.failures.append(f"{g} o {f}: loop {labels} has rotation classes {sorted(classes, key=repr)}")
            found += classes
        if composite.loops != tuple(sorted(found)):
            rep.failures.append(f"{g} o {f}: recorded loops {composite.loops} differ from traced {sorted(found)}")
    if rep.pairs < limit:
        rep.failures.append(f"only {rep.pairs} loop-producing pairs up to length {maxlen}, wanted {limit}")
    return rep
