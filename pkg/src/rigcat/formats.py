"""JSON file formats.

Category::

    {"name": "arrow", "objects": ["x", "y"],
     "morphisms": [{"id": "a", "src": "x", "dst": "y"}, ...],
     "identities": {"x": "id_x", ...},
     "composition": [["g", "f", "g.f"], ...]}

Identity morphisms must be listed; composites with identities may be left out.

Presentation: ``objects``, ``generators`` (same shape as ``morphisms``),
``relations`` (pairs of generator lists in the order applied) and an
optional ``size_bound`` (default 64).

Monoidal category: a category or presentation plus ``tensor_objects``
(``[x, y, x(x)y]`` triples), ``tensor_morphisms`` (``[f, g, f(x)g]``;
pairs of identities may be left out), ``unit`` and ``symmetry``
(``[x, y, s]``; identity symmetries may be left out).

Functor: ``source``, ``target`` (file references), ``objects`` and
``morphisms`` maps; identities may be left out of ``morphisms``.

Diagram: ``index`` (category or monoidal reference), ``fibers`` (index object
to reference) and ``transitions`` (index morphism to ``{"objects", "morphisms"}``;
identities may be left out).  A lax monoidal diagram adds ``mu`` (list of
``{"i", "j", "objects": [[x, y, z]], "morphisms": [[p, q, r]]}``),
``unit_fiber`` and optionally ``swap`` (``{"i", "j", "components": [[x, y, m]]}``).

Universal map: ``category`` and ``target`` (a monoidal category) references
and ``objects``/``morphisms`` maps from the category into the target;
identities may be left out.

Cobordism: ``source``/``target`` sign strings, ``pairs`` of point names
``"s0"``/``"t3"``, ``circles``.  A labeled diagram adds ``labels`` (point name
to object of C), a third entry per pair naming the strand label, and
``loops`` (morphism ids, read as their trace classes).

A reference is a path relative to the referring file, or an inline object.
Unknown keys are rejected everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .cobordism import Cob1Mor, MatchingError, word
from .fincat import CategoryError, FinCat, Functor, validate_functor
from .freerigid import BrauerMor, FreeRigid, GeneratorMap, LabelTypeMismatch
from .grothendieck import LaxMonDiagram, OplaxDiagram, validate_diagram
from .moncat import StrictMonCat, validate_monoidal
from .presentation import close_presentation


class ParseError(ValueError):
    def __init__(self, file: str, location: str, message: str) -> None:
        super().__init__(f"{file}: {location}: {message}")
        self.file, self.location = file, location


CATEGORY_KEYS = {"name", "objects", "morphisms", "identities", "composition"}
PRESENTATION_KEYS = {"name", "objects", "generators", "relations", "size_bound"}
MONOIDAL_KEYS = {"tensor_objects", "tensor_morphisms", "unit", "symmetry"}
FUNCTOR_KEYS = {"name", "source", "target", "objects", "morphisms"}
DIAGRAM_KEYS = {"name", "index", "fibers", "transitions", "mu", "unit_fiber", "swap"}
COBORDISM_KEYS = {"source", "target", "pairs", "circles"}
LABELED_KEYS = {"source", "target", "pairs", "labels", "loops"}
UNIVERSAL_KEYS = {"category", "target", "objects", "morphisms"}


class Loader:
    """Reads files, resolving references and sharing each loaded file once."""

    def __init__(self) -> None:
        self._cache: dict[tuple[Path, str], Any] = {}

    # -- plumbing ------------------------------------------------------------------

    def read(self, path: str | Path) -> tuple[dict, str, Path]:
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ParseError(str(path), "file", "not found") from None
        except json.JSONDecodeError as exc:
            raise ParseError(str(path), f"line {exc.lineno} column {exc.colno}", exc.msg) from None
        if not isinstance(data, dict):
            raise ParseError(str(path), "top level", "expected a JSON object")
        return data, str(path), path.parent

    def _resolve(self, ref, base: Path, where: str, origin: str, kind: str):
        if isinstance(ref, str):
            path = (base / ref).resolve()
            if (path, kind) not in self._cache:
                data, name, parent = self.read(path)
                self._cache[path, kind] = getattr(self, f"_{kind}")(data, name, parent)
            return self._cache[path, kind]
        if isinstance(ref, dict):
            return getattr(self, f"_{kind}")(ref, f"{origin}:{where}", base)
        raise ParseError(origin, where, "expected a file path or an inline object")

    @staticmethod
    def _keys(data: dict, allowed: set, required: set, file: str) -> None:
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise ParseError(file, "top level", f"unknown key(s) {', '.join(map(repr, unknown))}")
        missing = sorted(required - set(data))
        if missing:
            raise ParseError(file, "top level", f"missing key(s) {', '.join(map(repr, missing))}")

    # -- categories ------------------------------------------------------------------

    def category(self, path) -> FinCat:
        return self._resolve(str(Path(path).resolve()), Path("."), "file", str(path), "category_any")

    def monoidal(self, path) -> StrictMonCat:
        return self._resolve(str(Path(path).resolve()), Path("."), "file", str(path), "monoidal_any")

    def _category_any(self, data: dict, file: str, base: Path) -> FinCat:
        if MONOIDAL_KEYS & set(data):
            return self._monoidal_any(data, file, base).base
        return self._plain_category(data, file)

    def _plain_category(self, data: dict, file: str) -> FinCat:
        if "generators" in data:
            self._keys(data, PRESENTATION_KEYS, {"objects", "generators"}, file)
            gens = {}
            for k, g in enumerate(data["generators"]):
                self._keys(g, {"id", "src", "dst"}, {"id", "src", "dst"}, f"{file}: generators[{k}]")
                gens[g["id"]] = (g["src"], g["dst"])
            rels = []
            for k, r in enumerate(data.get("relations", [])):
                if not (isinstance(r, list) and len(r) == 2):
                    raise ParseError(file, f"relations[{k}]", "expected [lhs, rhs]")
                rels.append((r[0], r[1]))
            return self._wrap(
                file,
                lambda: close_presentation(
                    data["objects"], gens, rels, data.get("size_bound", 64), name=data.get("name", file)
                ),
            )
        self._keys(data, CATEGORY_KEYS, {"objects", "morphisms", "identities"}, file)
        morphisms = {}
        for k, m in enumerate(data["morphisms"]):
            if not isinstance(m, dict):
                raise ParseError(file, f"morphisms[{k}]", "expected an object")
            self._keys(m, {"id", "src", "dst"}, {"id", "src", "dst"}, f"{file}: morphisms[{k}]")
            if m["id"] in morphisms:
                raise ParseError(file, f"morphisms[{k}]", f"duplicate morphism id {m['id']!r}")
            morphisms[m["id"]] = (m["src"], m["dst"])
        composition = {}
        for k, t in enumerate(data.get("composition", [])):
            if not (isinstance(t, list) and len(t) == 3):
                raise ParseError(file, f"composition[{k}]", "expected [g, f, g o f]")
            g, f, gf = t
            if composition.setdefault((g, f), gf) != gf:
                raise ParseError(file, f"composition[{k}]", f"conflicting composites for {g!r} o {f!r}")
        return self._wrap(
            file,
            lambda: FinCat.build(
                data["objects"], morphisms, data["identities"], composition, name=data.get("name", file)
            ),
        )

    @staticmethod
    def _wrap(file: str, build):
        try:
            return build()
        except CategoryError as exc:
            # keep the category error type (and its witness) but name the file
            exc.args = (f"{file}: {exc.args[0]}",)
            raise

    def _monoidal_any(self, data: dict, file: str, base: Path) -> StrictMonCat:
        plain = {k: v for k, v in data.items() if k not in MONOIDAL_KEYS}
        if "unit" not in data:
            raise ParseError(file, "top level", "missing key 'unit'")
        C = self._plain_category(plain, file)
        tobj = {}
        for k, t in enumerate(data.get("tensor_objects", [])):
            if not (isinstance(t, list) and len(t) == 3):
                raise ParseError(file, f"tensor_objects[{k}]", "expected [x, y, x(x)y]")
            tobj[(t[0], t[1])] = t[2]
        tmor = {}
        for k, t in enumerate(data.get("tensor_morphisms", [])):
            if not (isinstance(t, list) and len(t) == 3):
                raise ParseError(file, f"tensor_morphisms[{k}]", "expected [f, g, f(x)g]")
            tmor[(t[0], t[1])] = t[2]
        for (x, y), xy in tobj.items():
            if x in C.identities and y in C.identities and xy in C.identities:
                tmor.setdefault((C.id(x), C.id(y)), C.id(xy))
        sym = {}
        for k, t in enumerate(data.get("symmetry", [])):
            if not (isinstance(t, list) and len(t) == 3):
                raise ParseError(file, f"symmetry[{k}]", "expected [x, y, s]")
            sym[(t[0], t[1])] = t[2]
        for (x, y), xy in tobj.items():
            if (x, y) not in sym and tobj.get((y, x)) == xy and xy in C.identities:
                sym[(x, y)] = C.id(xy)
        M = StrictMonCat(C, tobj, tmor, data["unit"], sym)
        return self._wrap(file, lambda: validate_monoidal(M))

    # -- functors ---------------------------------------------------------------------------

    def functor(self, path) -> Functor:
        data, file, base = self.read(path)
        return self._functor(data, file, base)

    def _functor(self, data: dict, file: str, base: Path) -> Functor:
        self._keys(data, FUNCTOR_KEYS, {"source", "target", "objects"}, file)
        C = self._resolve(data["source"], base, "source", file, "category_any")
        D = self._resolve(data["target"], base, "target", file, "category_any")
        return self._functor_tables(C, D, data["objects"], data.get("morphisms", {}), data.get("name", "F"), file)

    def _functor_tables(self, C, D, objects, morphisms, name, file) -> Functor:
        mor = dict(morphisms)
        for x, y in objects.items():
            if x in C.identities and y in D.identities:
                mor.setdefault(C.id(x), D.id(y))
        F = Functor(C, D, dict(objects), mor, name=name)
        return self._wrap(file, lambda: validate_functor(F))

    # -- diagrams ----------------------------------------------------------------------------

    def diagram(self, path) -> OplaxDiagram | LaxMonDiagram:
        data, file, base = self.read(path)
        self._keys(data, DIAGRAM_KEYS, {"index", "fibers"}, file)
        lax = "mu" in data or "unit_fiber" in data
        if lax:
            M = self._resolve(data["index"], base, "index", file, "monoidal_any")
            I = M.base
        else:
            I = self._resolve(data["index"], base, "index", file, "category_any")
        fibers = {}
        for i in I.objects:
            if i not in data["fibers"]:
                raise ParseError(file, "fibers", f"no fiber for index object {i!r}")
            fibers[i] = self._resolve(data["fibers"][i], base, f"fibers.{i}", file, "category_any")
        extra = sorted(set(data["fibers"]) - set(I.objects))
        if extra:
            raise ParseError(file, "fibers", f"unknown index object(s) {extra}")
        transitions = {}
        given = data.get("transitions", {})
        for f, (i, j) in I.morphisms.items():
            if f in given:
                t = given[f]
                self._keys(t, {"objects", "morphisms"}, {"objects"}, f"{file}: transitions.{f}")
                transitions[f] = self._functor_tables(
                    fibers[i], fibers[j], t["objects"], t.get("morphisms", {}), f"F({f})", file
                )
            elif f == I.id(i):
                transitions[f] = Functor.identity(fibers[i])
            else:
                raise ParseError(file, "transitions", f"no transition functor for {f!r}")
        D = self._wrap(file, lambda: validate_diagram(OplaxDiagram(I, fibers, transitions)))
        if not lax:
            return D
        if "unit_fiber" not in data:
            raise ParseError(file, "top level", "lax monoidal diagram needs 'unit_fiber'")
        mu_obj: dict = {}
        mu_mor: dict = {}
        for k, entry in enumerate(data.get("mu", [])):
            where = f"{file}: mu[{k}]"
            self._keys(entry, {"i", "j", "objects", "morphisms"}, {"i", "j", "objects"}, where)
            i, j = entry["i"], entry["j"]
            objs = mu_obj.setdefault((i, j), {})
            for x, y, z in entry["objects"]:
                objs[(x, y)] = z
            mors = mu_mor.setdefault((i, j), {})
            for p, q, r in entry.get("morphisms", []):
                mors[(p, q)] = r
            if i in fibers and j in fibers:
                Ci, Cj = fibers[i], fibers[j]
                Ck = fibers.get(M.tensor_obj(i, j)) if (i, j) in M.tensor_objects else None
                for (x, y), z in objs.items():
                    if Ck is not None and x in Ci.identities and y in Cj.identities and z in Ck.identities:
                        mors.setdefault((Ci.id(x), Cj.id(y)), Ck.id(z))
        swap = {}
        for k, entry in enumerate(data.get("swap", [])):
            self._keys(entry, {"i", "j", "components"}, {"i", "j", "components"}, f"{file}: swap[{k}]")
            swap[(entry["i"], entry["j"])] = {(x, y): m for x, y, m in entry["components"]}
        return LaxMonDiagram(D, M, mu_obj, mu_mor, data["unit_fiber"], swap or None)

    # -- cobordisms and labeled diagrams ----------------------------------------------------------

    @staticmethod
    def _point(name: str, file: str, where: str):
        if not (isinstance(name, str) and len(name) >= 2 and name[0] in "st" and name[1:].isdigit()):
            raise ParseError(file, where, f"bad point reference {name!r}; expected like 's0' or 't3'")
        return (name[0], int(name[1:]))

    def cobordism(self, path) -> Cob1Mor:
        data, file, _ = self.read(path)
        return self.cobordism_data(data, file)

    def cobordism_data(self, data: dict, file: str) -> Cob1Mor:
        self._keys(data, COBORDISM_KEYS, {"source", "target", "pairs"}, file)
        try:
            pairs = [
                tuple(self._point(p, file, f"pairs[{k}]") for p in pair)
                for k, pair in enumerate(data["pairs"])
            ]
            return Cob1Mor(word(data["source"]), word(data["target"]), pairs, data.get("circles", 0))
        except (MatchingError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(file, "pairs", str(exc)) from None

    def labeled(self, path, fr: FreeRigid) -> BrauerMor:
        data, file, _ = self.read(path)
        return self.labeled_data(data, file, fr)

    def labeled_data(self, data: dict, file: str, fr: FreeRigid) -> BrauerMor:
        self._keys(data, LABELED_KEYS, {"source", "target", "pairs", "labels"}, file)
        src, tgt = word(data["source"]), word(data["target"])
        labels = data["labels"]

        def letter_obj(side, n):
            key = f"{side}{n}"
            if key not in labels:
                raise ParseError(file, "labels", f"no object given for point {key!r}")
            return labels[key]

        source = tuple((letter_obj("s", k), s) for k, s in enumerate(src))
        target = tuple((letter_obj("t", k), s) for k, s in enumerate(tgt))
        strands = []
        for k, pair in enumerate(data["pairs"]):
            if not (isinstance(pair, list) and len(pair) in (2, 3)):
                raise ParseError(file, f"pairs[{k}]", "expected [p, q] or [p, q, label]")
            a, b = (self._point(p, file, f"pairs[{k}]") for p in pair[:2])
            if len(pair) == 3:
                lab = pair[2]
            else:
                ends = {labels.get(f"{p[0]}{p[1]}") for p in (a, b)}
                if len(ends) != 1:
                    raise ParseError(file, f"pairs[{k}]", "strand joins different objects; give a label")
                lab = fr.C.id(ends.pop())
            strands.append((a, b, lab))
        try:
            return fr.make(source, target, strands, data.get("loops", []))
        except (MatchingError, LabelTypeMismatch) as exc:
            raise ParseError(file, "pairs", str(exc)) from None


@dataclass(frozen=True)
class UniversalSpec:
    category: FinCat
    target: StrictMonCat
    generators: GeneratorMap


def load_universal(loader: Loader, path) -> UniversalSpec:
    data, file, base = loader.read(path)
    loader._keys(data, UNIVERSAL_KEYS, {"category", "target", "objects"}, file)
    C = loader._resolve(data["category"], base, "category", file, "category_any")
    M = loader._resolve(data["target"], base, "target", file, "monoidal_any")
    objects, morphisms = dict(data["objects"]), dict(data.get("morphisms", {}))
    for x, y in objects.items():
        if x not in C.identities:
            raise ParseError(file, "objects", f"{x!r} is not an object of {C.name}")
        if y not in M.base.identities:
            raise ParseError(file, "objects", f"{y!r} is not an object of {M.name}")
        morphisms.setdefault(C.id(x), M.identity(y))
    missing = sorted(set(C.morphisms) - set(morphisms), key=repr)
    if missing or set(C.objects) - set(objects):
        raise ParseError(file, "morphisms", f"assignment is not total; missing {missing[:3]}")
    return UniversalSpec(C, M, GeneratorMap(objects, morphisms))


def dump_category(C: FinCat) -> dict:
    """Inverse of the category format, for string identifiers."""
    return {
        "name": C.name,
        "objects": list(C.objects),
        "morphisms": [{"id": m, "src": x, "dst": y} for m, (x, y) in C.morphisms.items()],
        "identities": dict(C.identities),
        "composition": [[g, f, gf] for (g, f), gf in C.composition.items()],
    }
