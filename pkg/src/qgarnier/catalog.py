"""The seven Garnier types: charts, reference Hamiltonians, errata registry.

Each type is loaded from a human-auditable text file in ``data/``.  The
stored images are faithful transcriptions of the source formulas,
including suspected misprints; corrections live exclusively in the
errata registry (:mod:`qgarnier.errata`) and are applied on demand via
``Transformation.fixed_forward`` / ``fixed_backward``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .parser import parse_weyl
from .weyl import WeylElement

__all__ = [
    "SYSTEM_NAMES",
    "UnknownSystem",
    "GarnierType",
    "Transformation",
    "ReferenceHamiltonian",
    "ErratumEntry",
    "get_type",
    "transformations",
    "reference_hamiltonian",
    "errata",
    "all_types",
]

SYSTEM_NAMES = ("G11111", "G1112", "G113", "G122", "G14", "G23", "G5")

_DATA_FILES = {
    "G11111": "g11111.txt",
    "G1112": "g1112.txt",
    "G113": "g113.txt",
    "G122": "g122.txt",
    "G14": "g14.txt",
    "G23": "g23.txt",
    "G5": "g5.txt",
}

FORWARD_VARS = ("q1", "p1", "q2", "p2")
BACKWARD_VARS = ("x1", "y1", "x2", "y2")


class UnknownSystem(KeyError):
    """No Garnier type with the requested name."""


@dataclass(frozen=True)
class ErratumEntry:
    """One documented misprint in the source formulas.

    ``location`` names the catalog coordinate (transformation/Hamiltonian,
    direction, variable or term); ``printed`` quotes the source text
    verbatim; ``detection`` names the verifier that flags it.  If the
    intended reading is decidable, ``corrected`` holds it as an
    expression string; ``variants`` lists candidate readings when not.
    """

    system: str
    location: str
    printed: str
    nature: str
    detection: str
    corrected: Optional[str] = None
    variants: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Transformation:
    """One canonical chart: forward images of q,p in the new variables
    x,y, and backward images of x,y in the old ones, as printed."""

    system: str
    index: int
    forward: Dict[str, WeylElement]
    backward: Dict[str, WeylElement]

    @property
    def id(self) -> Tuple[str, int]:
        return (self.system, self.index)

    @property
    def t_dependent(self) -> frozenset:
        """Time symbols occurring in any stored image (computed, not asserted)."""
        out = set()
        for img in list(self.forward.values()) + list(self.backward.values()):
            for s in img.terms.values():
                for tv in ("t1", "t2"):
                    if _uses_symbol(s, tv):
                        out.add(tv)
        return frozenset(out)

    def _with_fixes(self, images: Dict[str, WeylElement], direction: str):
        from . import errata as _errata
        fixed = dict(images)
        for (sysname, idx, dirn, var), expr in _errata.CORRECTIONS.items():
            if sysname == self.system and idx == self.index and dirn == direction:
                fixed[var] = parse_weyl(expr)
        return fixed

    @property
    def fixed_forward(self) -> Dict[str, WeylElement]:
        """Forward images with registered errata corrections applied."""
        return self._with_fixes(self.forward, "forward")

    @property
    def fixed_backward(self) -> Dict[str, WeylElement]:
        """Backward images with registered errata corrections applied."""
        return self._with_fixes(self.backward, "backward")


def _uses_symbol(scalar, name: str) -> bool:
    from .field import LinForm, SYMBOLS
    i = SYMBOLS.index(name)
    rats = []
    if isinstance(scalar, LinForm):
        rats.append(scalar.constant)
        rats.extend(c for _, c in scalar.coeffs)
    else:
        rats.append(scalar)
    for r in rats:
        for p in (r.num, r.den):
            if any(exps[i] for exps, _ in p.terms()):
                return True
    return False


@dataclass(frozen=True)
class ReferenceHamiltonian:
    system: str
    flow: int
    element: WeylElement

    @property
    def id(self) -> Tuple[str, int]:
        return (self.system, self.flow)


@dataclass(frozen=True)
class GarnierType:
    name: str
    parameters: Tuple[str, ...]
    transformations: Tuple[Transformation, ...]
    hamiltonians: Dict[int, ReferenceHamiltonian] = field(compare=False)

    @property
    def transformation_count(self) -> int:
        return len(self.transformations)


_SECTION = re.compile(r"^(type|params|transformation|hamiltonian)\b")


def _parse_file(name: str, text: str) -> GarnierType:
    lines = text.splitlines()
    params: Tuple[str, ...] = ()
    transformations: List[Transformation] = []
    hamiltonians: Dict[int, ReferenceHamiltonian] = {}

    cur_index = None
    cur_fwd: Dict[str, WeylElement] = {}
    cur_bwd: Dict[str, WeylElement] = {}
    ham_flow = None
    ham_lines: List[str] = []

    def flush_transformation():
        nonlocal cur_index, cur_fwd, cur_bwd
        if cur_index is not None:
            transformations.append(
                Transformation(name, cur_index, cur_fwd, cur_bwd))
        cur_index, cur_fwd, cur_bwd = None, {}, {}

    def flush_hamiltonian():
        nonlocal ham_flow, ham_lines
        if ham_flow is not None:
            element = parse_weyl(" ".join(ham_lines))
            hamiltonians[ham_flow] = ReferenceHamiltonian(name, ham_flow, element)
        ham_flow, ham_lines = None, []

    for raw in lines:
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line[0].isspace():
            if ham_flow is None:
                raise ValueError(f"unexpected continuation line: {raw!r}")
            ham_lines.append(line.strip())
            continue
        head, *rest = line.split(None, 1)
        if head == "type":
            if rest[0].strip() != name:
                raise ValueError(f"type mismatch in {name} data file")
        elif head == "params":
            params = tuple(rest[0].split())
        elif head == "transformation":
            flush_transformation()
            flush_hamiltonian()
            cur_index = int(rest[0])
        elif head == "hamiltonian":
            flush_transformation()
            flush_hamiltonian()
            ham_flow = int(rest[0])
        elif head in ("forward", "backward"):
            var, expr = rest[0].split("=", 1)
            var = var.strip()
            target = cur_fwd if head == "forward" else cur_bwd
            expected = FORWARD_VARS if head == "forward" else BACKWARD_VARS
            if var not in expected:
                raise ValueError(f"unexpected {head} variable {var!r} in {name}")
            # backward images are stored under the canonical slot names
            slot = FORWARD_VARS[BACKWARD_VARS.index(var)] if head == "backward" else var
            target[slot] = parse_weyl(expr)
        else:
            raise ValueError(f"unrecognized line in {name} data file: {raw!r}")
    flush_transformation()
    flush_hamiltonian()

    for tr in transformations:
        for images in (tr.forward, tr.backward):
            if set(images) != set(FORWARD_VARS):
                raise ValueError(f"incomplete chart {tr.id}")
    return GarnierType(name, params, tuple(transformations), hamiltonians)


_CACHE: Dict[str, GarnierType] = {}


def get_type(name: str) -> GarnierType:
    """Look up a Garnier type by name (e.g. ``"G11111"``)."""
    if name not in _DATA_FILES:
        raise UnknownSystem(name)
    if name not in _CACHE:
        text = resources.files("qgarnier.data").joinpath(_DATA_FILES[name]).read_text()
        _CACHE[name] = _parse_file(name, text)
    return _CACHE[name]


def all_types() -> List[GarnierType]:
    return [get_type(n) for n in SYSTEM_NAMES]


def transformations(t) -> Tuple[Transformation, ...]:
    if isinstance(t, str):
        t = get_type(t)
    return t.transformations


def reference_hamiltonian(t, flow: int) -> ReferenceHamiltonian:
    if isinstance(t, str):
        t = get_type(t)
    return t.hamiltonians[flow]


def errata(t) -> List[ErratumEntry]:
    """The curated misprint registry for a type (possibly empty)."""
    from . import errata as _errata
    name = t if isinstance(t, str) else t.name
    if name not in _DATA_FILES:
        raise UnknownSystem(name)
    return [e for e in _errata.ENTRIES if e.system == name]
