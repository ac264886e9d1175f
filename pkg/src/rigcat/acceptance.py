"""The acceptance suite, run against the bundled example corpus."""

from __future__ import annotations

import itertools
import time
from importlib.resources import files
from pathlib import Path
from typing import Callable

from .fincat import validate_category
from .formats import Loader
from .freerigid import (
    fr_end_unit,
    fr_fully_faithful_check,
    fr_hom_from_unit,
    fr_law_check,
    fr_loop_rotation_check,
    fr_rigidity_check,
    fr_vs_cob,
)
from .grothendieck import grothendieck, hom_formula_all, monoidal_grothendieck, unit_cocone
from .moncat import check_rigid, validate_monoidal
from .report import Section, render_records

CATEGORY_FILES = (
    "terminal",
    "walking_arrow",
    "walking_iso",
    "z2",
    "idempotent",
    "z3_monoidal",
    "z2_monoidal",
    "arrow_join_monoidal",
)
MONOIDAL_FILES = ("z3_monoidal", "z2_monoidal", "arrow_join_monoidal")
DIAGRAM_FILES = ("diagram_chain", "diagram_swap")
LAX_DIAGRAM_FILES = ("diagram_lax",)
FUNCTOR_FILES = ("functor_terminal_iso", "functor_terminal_z2", "functor_point_arrow")
LAW_CHECK_FILES = ("terminal", "walking_arrow", "walking_iso", "z2")


def corpus_dir() -> Path:
    return Path(str(files("rigcat").joinpath("corpus")))


def corpus_path(name: str) -> Path:
    return corpus_dir() / f"{name}.json"


def criterion_hom_formula(loader: Loader) -> Section:
    data, failures = {}, []
    for name in DIAGRAM_FILES:
        reports = hom_formula_all(loader.diagram(corpus_path(name)))
        data[name] = {"pairs": len(reports), "morphisms": sum(r.total_hom for r in reports)}
        failures += [f for r in reports for f in r.failures]
    return Section("1 grothendieck hom formula", not failures, data, failures, limit=5)


def criterion_vs_cob(loader: Loader) -> Section:
    rep = fr_vs_cob(3, 2)
    data = rep.summary()
    data.pop("failures", None)
    return Section("2 labeled diagrams over the terminal category vs cobordisms", rep.ok, data, rep.failures, limit=30)


def criterion_end_unit(loader: Loader) -> Section:
    data, failures = {}, []
    pinned = {("terminal", 3): 4, ("z2", 2): 6}
    for name in CATEGORY_FILES:
        bound = 3 if name == "terminal" else 2
        rep = fr_end_unit(loader.category(corpus_path(name)), bound)
        data[name] = {"bound": bound, "classes": rep.trace_classes, "count": len(rep.elements), "expected": rep.expected}
        failures += [f"{name}: {f}" for f in rep.failures]
        want = pinned.get((name, bound))
        if want is not None and len(rep.elements) != want:
            failures.append(f"{name}: {len(rep.elements)} elements at bound {bound}, pinned value {want}")
    return Section("3 endomorphisms of the unit", not failures, data, failures, limit=1)


def _object_sequences(objects, maxlen: int) -> list[tuple]:
    return [s for n in range(maxlen + 1) for s in itertools.product(sorted(objects), repeat=n)]


def criterion_hom_decomposition(loader: Loader) -> Section:
    data, failures = {}, []
    for name in CATEGORY_FILES:
        C = loader.category(corpus_path(name))
        seqs = _object_sequences(C.objects, 2)
        checked = total = 0
        for pos in seqs:
            for neg in seqs:
                rep = fr_hom_from_unit(C, list(pos), list(neg), 1)
                checked += 1
                total += rep.size
                failures += [f"{name} {list(pos)}|{list(neg)}: {f}" for f in rep.failures]
        data[name] = {"boundaries": checked, "morphisms": total}
    return Section("4 bijection-indexed hom decomposition", not failures, data, failures, limit=30)


def criterion_loop_rotation(loader: Loader) -> Section:
    data, failures, pairs = {}, [], 0
    for name, limit in (("walking_arrow", 100), ("z2", 50), ("z3_monoidal", 50)):
        rep = fr_loop_rotation_check(loader.category(corpus_path(name)), 2, limit)
        data[name] = {"pairs": rep.pairs, "loops": rep.loops}
        pairs += rep.pairs
        failures += [f"{name}: {f}" for f in rep.failures]
    data["total_pairs"] = pairs
    if pairs < 200:
        failures.append(f"only {pairs} loop-producing pairs checked")
    return Section("5 loop trace classes are rotation invariant", not failures, data, failures, limit=10)


def criterion_rigidity(loader: Loader) -> Section:
    data, failures = {}, []
    for name in CATEGORY_FILES:
        rep = fr_rigidity_check(loader.category(corpus_path(name)), 2)
        data[name] = {"words": rep.words}
        failures += [f"{name}: {f}" for f in rep.failures]
    rig = check_rigid(loader.monoidal(corpus_path("z3_monoidal")))
    data["z3_monoidal_rigid"] = rig.ok
    failures += [f"z3_monoidal: {f}" for f in rig.failures]
    return Section("6 rigidity of labeled diagrams and of the cyclic group", not failures, data, failures, limit=10)


def criterion_fully_faithful(loader: Loader) -> Section:
    data, failures = {}, []
    iso = fr_fully_faithful_check(loader.functor(corpus_path("functor_terminal_iso")), 2, 1)
    data["terminal_to_iso"] = {"hypotheses": iso.hypotheses, "homs_checked": iso.homs_checked, "ok": iso.ok}
    if not (iso.hypotheses and iso.ok):
        failures += [f"terminal_to_iso: {f}" for f in iso.failures] or ["terminal_to_iso: hypotheses not met"]
    z2 = fr_fully_faithful_check(loader.functor(corpus_path("functor_terminal_z2")), 2, 1)
    empty = [(n, n2) for v, w, n, n2, _ in z2.mismatches if v == () and w == ()]
    data["terminal_to_z2"] = {
        "hypotheses": z2.hypotheses,
        "mismatches": len(z2.mismatches),
        "end_of_unit": [list(e) for e in empty],
    }
    if z2.hypotheses:
        failures.append("terminal_to_z2: hypotheses unexpectedly met")
    if empty != [(2, 3)]:
        failures.append(f"terminal_to_z2: End of unit sizes {empty}, predicted [(2, 3)]")
    return Section("7 transfer of full faithfulness", not failures, data, failures, limit=10)


def criterion_validity(loader: Loader) -> Section:
    data, failures = {}, []
    for name in CATEGORY_FILES:
        C = validate_category(loader.category(corpus_path(name)))
        data[name] = {"objects": len(C.objects), "morphisms": len(C.morphisms)}
    for name in MONOIDAL_FILES:
        validate_monoidal(loader.monoidal(corpus_path(name)))
    for name in FUNCTOR_FILES:
        loader.functor(corpus_path(name))
    for name in DIAGRAM_FILES:
        D = loader.diagram(corpus_path(name))
        G = grothendieck(D)
        cocone = unit_cocone(D, G)
        failures += [f"{name}: {f}" for f in cocone.failures]
        data[name] = {"objects": len(G.category.objects), "morphisms": len(G.category.morphisms)}
    for name in LAX_DIAGRAM_FILES:
        M = monoidal_grothendieck(loader.diagram(corpus_path(name)))
        data[name] = {"objects": len(M.objects), "morphisms": len(M.base.morphisms), "rigid": check_rigid(M).ok}
    for name in LAW_CHECK_FILES:
        rep = fr_law_check(loader.category(corpus_path(name)), 2, 1)
        data[f"laws_{name}"] = rep.checked
        failures += [f"laws {name}: {f}" for f in rep.failures]
    return Section("8 validity of corpus and constructed categories", not failures, data, failures, limit=30)


CRITERIA: tuple[Callable[[Loader], Section], ...] = (
    criterion_hom_formula,
    criterion_vs_cob,
    criterion_end_unit,
    criterion_hom_decomposition,
    criterion_loop_rotation,
    criterion_rigidity,
    criterion_fully_faithful,
    criterion_validity,
)


def run_criteria() -> list[Section]:
    """Criteria 1 to 8, each timed, with a fresh loader per criterion."""
    out = []
    for number, criterion in enumerate(CRITERIA, start=1):
        start = time.perf_counter()
        try:
            s = criterion(Loader())
        except Exception as exc:  # a crash is a failed criterion, not a crashed suite
            name = criterion.__name__.removeprefix("criterion_").replace("_", " ")
            s = Section(f"{number} {name}", False, {}, [f"{type(exc).__name__}: {exc}"])
        s.seconds = time.perf_counter() - start
        out.append(s)
    return out


def run_acceptance_suite() -> list[Section]:
    """All criteria; the last one reruns 1 to 8 and compares the records byte for byte."""
    start = time.perf_counter()
    sections = run_criteria()
    first = render_records("acceptance", sections)
    second = render_records("acceptance", run_criteria())
    same = first == second
    det = Section(
        "9 deterministic records output",
        same,
        {"bytes": len(first.encode()), "identical": same},
        [] if same else ["two runs produced different records"],
        limit=120,
    )
    det.seconds = time.perf_counter() - start
    return sections + [det]
