"""Command-line entry point.

Exit status is 0 when the report has no failures, 1 when a check fails and 2
for usage, parse and bound errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import acceptance
from .cobordism import BoundaryMismatch, cob_compose, cob_tensor
from .fincat import CategoryError, check_adjunction, comma_terminals, find_right_adjoint, trace_set
from .formats import Loader, ParseError, load_universal
from .freerigid import (
    FreeRigid,
    fr_end_unit,
    fr_fully_faithful_check,
    fr_hom_from_unit,
    fr_law_check,
    fr_rigidity_check,
    fr_universal_map,
    fr_vs_cob,
)
from .grothendieck import LaxMonDiagram, grothendieck, hom_formula_all, monoidal_grothendieck, unit_cocone
from .moncat import check_rigid, find_dual
from .report import Section, render, section


class UnknownCommand(ValueError):
    pass


class BoundViolation(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    maxlen: int = 2
    loops: int = 1
    bound: int = 2
    size_bound: int = 64
    diagram_bound: int = 2
    pos: list[str] = field(default_factory=list)
    neg: list[str] = field(default_factory=list)
    category: str | None = None
    tensor: bool = False
    format: str = "text"
    out: str | None = None
    seed: int | None = None  # reserved; every operation is deterministic

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UnknownCommand(f"unknown command {self.command!r}; try one of {', '.join(COMMANDS)}")
        for name in ("maxlen", "loops", "bound", "size_bound", "diagram_bound"):
            if getattr(self, name) < 0:
                raise BoundViolation(f"--{name.replace('_', '-')} must be non-negative, got {getattr(self, name)}")
        for path in self.inputs + ([self.category] if self.category else []):
            if not Path(path).is_file():
                raise ParseError(path, "file", "not found")


# -- commands -------------------------------------------------------------------------


def _detect(data: dict) -> str:
    if "index" in data:
        return "diagram"
    if "category" in data:
        return "universal"
    if "labels" in data:
        return "labeled"
    if "pairs" in data:
        return "cobordism"
    if "source" in data and "objects" in data:
        return "functor"
    if {"tensor_objects", "unit"} & set(data):
        return "monoidal"
    return "category"


def cmd_validate(cfg: RunConfig, loader: Loader) -> list[Section]:
    out = []
    for path in cfg.inputs:
        data, _, _ = loader.read(path)
        kind = _detect(data)
        try:
            if kind == "category":
                C = loader.category(path)
                info = {"objects": len(C.objects), "morphisms": len(C.morphisms)}
            elif kind == "monoidal":
                M = loader.monoidal(path)
                info = {"objects": len(M.objects), "morphisms": len(M.base.morphisms), "unit": M.unit}
            elif kind == "functor":
                F = loader.functor(path)
                info = {"source": F.source.name, "target": F.target.name}
            elif kind == "diagram":
                D = loader.diagram(path)
                if isinstance(D, LaxMonDiagram):
                    M = monoidal_grothendieck(D)
                    info = {"objects": len(M.objects), "morphisms": len(M.base.morphisms), "monoidal": True}
                else:
                    G = grothendieck(D)
                    info = {"objects": len(G.category.objects), "morphisms": len(G.category.morphisms)}
            elif kind == "cobordism":
                info = {"morphism": str(loader.cobordism(path))}
            elif kind == "universal":
                spec = load_universal(loader, path)
                info = {"category": spec.category.name, "target": spec.target.name}
            else:
                if not cfg.category:
                    raise ParseError(path, "labels", "a labeled diagram needs --category")
                fr = FreeRigid(loader.category(cfg.category))
                info = {"morphism": str(loader.labeled(path, fr))}
        except CategoryError as exc:
            witness = getattr(exc, "witness", None)
            out.append(Section(f"validate {path}", False, {"kind": kind, "witness": witness}, [str(exc)]))
            continue
        out.append(Section(f"validate {path}", True, {"kind": kind, **info}))
    return out


def cmd_trace(cfg: RunConfig, loader: Loader) -> list[Section]:
    out = []
    for path in cfg.inputs:
        T = trace_set(loader.category(path))
        data = {"classes": len(T), "members": {str(k): list(map(str, v)) for k, v in sorted(T.classes.items())}}
        out.append(Section(f"trace {path}", True, data))
    return out


def cmd_adjoint(cfg: RunConfig, loader: Loader) -> list[Section]:
    out = []
    for path in cfg.inputs:
        F = loader.functor(path)
        adj = find_right_adjoint(F)
        if adj is None:
            missing = [d for d in F.target.objects if not comma_terminals(F, d)]
            out.append(
                Section(
                    f"adjoint {path}",
                    False,
                    {"exists": False, "no_terminal_in_comma_over": missing},
                    [f"{F.name} has no right adjoint: comma category over {missing[0]!r} has no terminal object"],
                )
            )
            continue
        rep = check_adjunction(adj)
        data = {
            "exists": True,
            "objects": {str(d): adj.right.obj(d) for d in F.target.objects},
            "morphisms": {str(u): adj.right.mor(u) for u in F.target.morphisms},
            "unit": {str(c): m for c, m in adj.unit.items()},
            "counit": {str(d): m for d, m in adj.counit.items()},
        }
        out.append(Section(f"adjoint {path}", rep.ok, data, rep.failures))
    return out


def cmd_rigid(cfg: RunConfig, loader: Loader) -> list[Section]:
    return [section(f"rigid {p}", check_rigid(loader.monoidal(p))) for p in cfg.inputs]


def cmd_grothendieck(cfg: RunConfig, loader: Loader) -> list[Section]:
    out = []
    for path in cfg.inputs:
        D = loader.diagram(path)
        lax = D if isinstance(D, LaxMonDiagram) else None
        D = lax.diagram if lax else D
        reports = hom_formula_all(D)
        data = {
            "pairs": len(reports),
            "homs": {f"{r.source}->{r.target}": r.total_hom for r in reports if r.total_hom},
        }
        out.append(Section(f"hom formula {path}", all(r.ok for r in reports), data, [f for r in reports for f in r.failures]))
        out.append(section(f"cocone {path}", unit_cocone(D)))
        if lax:
            out.append(section(f"monoidal {path}", check_rigid(monoidal_grothendieck(lax))))
    return out


def cmd_compose(cfg: RunConfig, loader: Loader) -> list[Section]:
    if len(cfg.inputs) != 2:
        raise BoundViolation("compose takes exactly two files: G F (for G o F)")
    g_path, f_path = cfg.inputs
    try:
        if cfg.category:
            fr = FreeRigid(loader.category(cfg.category))
            g, f = loader.labeled(g_path, fr), loader.labeled(f_path, fr)
            result = fr.tensor(g, f) if cfg.tensor else fr.compose(g, f)
        else:
            g, f = loader.cobordism(g_path), loader.cobordism(f_path)
            result = cob_tensor(g, f) if cfg.tensor else cob_compose(g, f)
    except BoundaryMismatch as exc:
        return [Section("compose", False, {}, [f"{g_path}, {f_path}: {exc}"])]
    op = "tensor" if cfg.tensor else "compose"
    return [Section(op, True, {"result": str(result)})]


def _objects(spec: list[str]) -> list[str]:
    return [x for item in spec for x in item.split(",") if x]


def cmd_hom(cfg: RunConfig, loader: Loader) -> list[Section]:
    C = loader.category(cfg.inputs[0])
    rep = fr_hom_from_unit(C, _objects(cfg.pos), _objects(cfg.neg), cfg.loops)
    return [section("hom", rep)]


def cmd_end_unit(cfg: RunConfig, loader: Loader) -> list[Section]:
    return [section(f"end-unit {p}", fr_end_unit(loader.category(p), cfg.loops)) for p in cfg.inputs]


def cmd_vs_cob(cfg: RunConfig, loader: Loader) -> list[Section]:
    return [section("vs-cob", fr_vs_cob(cfg.maxlen, cfg.bound))]


def cmd_ff_check(cfg: RunConfig, loader: Loader) -> list[Section]:
    return [section(f"ff-check {p}", fr_fully_faithful_check(loader.functor(p), cfg.maxlen, cfg.loops)) for p in cfg.inputs]


def cmd_laws(cfg: RunConfig, loader: Loader) -> list[Section]:
    return [section(f"laws {p}", fr_law_check(loader.category(p), cfg.maxlen, cfg.loops)) for p in cfg.inputs]


def cmd_fr_rigid(cfg: RunConfig, loader: Loader) -> list[Section]:
    return [section(f"fr-rigid {p}", fr_rigidity_check(loader.category(p), cfg.maxlen)) for p in cfg.inputs]


def cmd_universal(cfg: RunConfig, loader: Loader) -> list[Section]:
    out = []
    for path in cfg.inputs:
        spec = load_universal(loader, path)
        duals = {}
        for y in sorted(set(spec.generators.object_map.values()), key=repr):
            d = find_dual(spec.target, y)
            if d is None:
                out.append(Section(f"universal {path}", False, {}, [f"{y!r} has no dual in {spec.target.name}"]))
                break
            duals[y] = d
        else:
            rep = fr_universal_map(spec.category, spec.target, spec.generators, duals, cfg.diagram_bound, cfg.loops)
            out.append(section(f"universal {path}", rep))
    return out


def cmd_acceptance(cfg: RunConfig, loader: Loader) -> list[Section]:
    return acceptance.run_acceptance_suite()


COMMANDS: dict[str, Callable[[RunConfig, Loader], list[Section]]] = {
    "validate": cmd_validate,
    "trace": cmd_trace,
    "adjoint": cmd_adjoint,
    "rigid": cmd_rigid,
    "grothendieck": cmd_grothendieck,
    "compose": cmd_compose,
    "hom": cmd_hom,
    "end-unit": cmd_end_unit,
    "vs-cob": cmd_vs_cob,
    "ff-check": cmd_ff_check,
    "laws": cmd_laws,
    "fr-rigid": cmd_fr_rigid,
    "universal": cmd_universal,
    "acceptance": cmd_acceptance,
}

NEEDS_INPUT = {"validate", "trace", "adjoint", "rigid", "grothendieck", "compose", "hom", "end-unit", "ff-check", "laws", "fr-rigid", "universal"}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Dispatch one command; returns the exit status and the rendered report."""
    cfg.validate()
    if cfg.command in NEEDS_INPUT and not cfg.inputs:
        raise BoundViolation(f"{cfg.command} needs at least one input file")
    sections = COMMANDS[cfg.command](cfg, Loader())
    status = 0 if all(s.passed for s in sections) else 1
    return status, render(cfg.command, sections, cfg.format)


# -- argument parsing -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="rigcat", description="Finite shadows of rigid symmetric monoidal constructions.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, help: str, files: str | None = "+", **bounds) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[common])
        if files:
            p.add_argument("inputs", nargs=files, metavar="FILE")
        for flag, (default, text) in bounds.items():
            p.add_argument(f"--{flag.replace('_', '-')}", type=int, default=default, help=text)
        return p

    p = add("validate", "load and exhaustively validate input files")
    p.add_argument("--category", help="category file for labeled diagrams")
    add("trace", "trace classes (g o f ~ f o g) of a category")
    add("adjoint", "search for a right adjoint of a functor")
    add("rigid", "find duals for every object of a monoidal category")
    add("grothendieck", "hom formula and cocone checks for a diagram")
    p = add("compose", "compose (or tensor) two cobordisms or labeled diagrams: G o F", files=2)
    p.add_argument("--category", help="category file; labeled diagrams instead of cobordisms")
    p.add_argument("--tensor", action="store_true", help="tensor instead of composing")
    p = add("hom", "enumerate diagrams from the unit to a boundary", files=1, loops=(0, "loop bound"))
    p.add_argument("--pos", action="append", default=[], help="objects with positive orientation (comma separated)")
    p.add_argument("--neg", action="append", default=[], help="objects with negative orientation (comma separated)")
    add("end-unit", "endomorphisms of the empty word", loops=(2, "loop bound"))
    add("vs-cob", "compare with cobordisms over the terminal category", files=None,
        maxlen=(3, "longest word"), bound=(2, "circle bound"))
    add("ff-check", "transfer of full faithfulness along a functor", maxlen=(2, "longest word"), loops=(1, "loop bound"))
    add("laws", "category and monoidal laws on a truncation", maxlen=(2, "longest word"), loops=(1, "loop bound"))
    add("fr-rigid", "zig-zag identities for every word", maxlen=(2, "longest word"))
    add("universal", "evaluate diagrams in a monoidal target", diagram_bound=(2, "longest word"), loops=(1, "loop bound"))
    add("acceptance", "run the acceptance suite on the bundled corpus", files=None)
    return parser


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    values = {k: v for k, v in vars(ns).items() if v is not None}
    cfg = RunConfig(command=values.pop("command"))
    for key, value in values.items():
        setattr(cfg, key, list(value) if key == "inputs" else value)
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except SystemExit as exc:  # argparse has already printed usage
        return int(exc.code or 0) and 2
    try:
        status, text = run(cfg)
    except (ParseError, UnknownCommand, BoundViolation) as exc:
        print(f"rigcat: error: {exc}", file=sys.stderr)
        return 2
    except CategoryError as exc:
        witness = getattr(exc, "witness", None)
        suffix = f" (witness: {json.dumps(witness, default=str)})" if witness is not None else ""
        print(f"rigcat: error: invalid input: {exc}{suffix}", file=sys.stderr)
        return 2
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
