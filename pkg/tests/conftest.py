from __future__ import annotations

import itertools

import pytest

from rigcat.acceptance import CATEGORY_FILES, corpus_path
from rigcat.fincat import FinCat, Functor, functor_failures
from rigcat.formats import Loader

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def loader() -> Loader:
    return Loader()


@pytest.fixture(scope="session")
def corpus(loader) -> dict[str, FinCat]:
    return {name: loader.category(corpus_path(name)) for name in CATEGORY_FILES}


def all_functors(C: FinCat, D: FinCat) -> list[Functor]:
    """Every functor C -> D, by brute force over object and morphism assignments."""
    out = []
    for images in itertools.product(D.objects, repeat=len(C.objects)):
        omap = dict(zip(C.objects, images))
        names = list(C.morphisms)
        choices = [D.hom(omap[C.src(m)], omap[C.dst(m)]) for m in names]
        for mors in itertools.product(*choices):
            F = Functor(C, D, omap, dict(zip(names, mors)))
            if not functor_failures(F):
                out.append(F)
    return out
