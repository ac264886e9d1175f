"""Finite, checkable shadows of rigid symmetric monoidal constructions.

Finite categories and functors, strict symmetric monoidal categories and
duals, the Grothendieck construction, oriented 1-dimensional cobordisms and
labeled oriented Brauer diagrams over a finite category.
"""

from __future__ import annotations

from .cobordism import Cob1Mor, cob_compose, cob_coev, cob_ev, cob_identity, cob_symmetry, cob_tensor
from .fincat import (
    CategoryError,
    FinCat,
    Functor,
    check_adjunction,
    find_right_adjoint,
    trace_set,
    validate_category,
    validate_functor,
)
from .formats import Loader, ParseError
from .freerigid import (
    BrauerMor,
    FreeRigid,
    fr_end_unit,
    fr_fully_faithful_check,
    fr_hom_from_unit,
    fr_universal_map,
    fr_vs_cob,
)
from .grothendieck import LaxMonDiagram, OplaxDiagram, grothendieck, hom_formula_check, monoidal_grothendieck, unit_cocone
from .moncat import DualData, StrictMonCat, check_rigid, find_dual, validate_monoidal
from .presentation import close_presentation

__all__ = [
    "BrauerMor",
    "CategoryError",
    "Cob1Mor",
    "DualData",
    "FinCat",
    "FreeRigid",
    "Functor",
    "LaxMonDiagram",
    "Loader",
    "OplaxDiagram",
    "ParseError",
    "StrictMonCat",
    "check_adjunction",
    "check_rigid",
    "close_presentation",
    "cob_coev",
    "cob_compose",
    "cob_ev",
    "cob_identity",
    "cob_symmetry",
    "cob_tensor",
    "find_dual",
    "find_right_adjoint",
    "fr_end_unit",
    "fr_fully_faithful_check",
    "fr_hom_from_unit",
    "fr_universal_map",
    "fr_vs_cob",
    "grothendieck",
    "hom_formula_check",
    "monoidal_grothendieck",
    "trace_set",
    "unit_cocone",
    "validate_category",
    "validate_functor",
    "validate_monoidal",
]
