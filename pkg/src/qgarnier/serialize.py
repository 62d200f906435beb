"""Canonical JSON and LaTeX renderings of algebra elements and reports.

The JSON form of an element is a list of ``{"exp": [i1, i2, i3, i4],
"coeff": "<canonical rational string>"}`` objects sorted by exponent
quadruple; it round-trips bit-exactly through the expression parser.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List

from .derive import DerivationReport
from .field import LinForm, Rat, poly_str
from .parser import parse_rat
from .verify import CheckReport, HamiltonianDiff
from .weyl import VARS, WeylElement

__all__ = [
    "element_to_json",
    "element_from_json",
    "element_to_latex",
    "report_to_json",
    "check_to_json",
    "diff_to_json",
]


def _coeff_str(s) -> str:
    if isinstance(s, LinForm):
        if not s.is_constant():
            raise ValueError("cannot serialize an unknown-bearing coefficient")
        s = s.constant
    return str(s)


def element_to_json(e: WeylElement) -> List[dict]:
    return [{"exp": list(mono), "coeff": _coeff_str(e.terms[mono])}
            for mono in sorted(e.terms)]


def element_from_json(data: List[dict]) -> WeylElement:
    terms = {}
    for item in data:
        terms[tuple(item["exp"])] = parse_rat(item["coeff"])
    return WeylElement(terms)


_LATEX_SYMS = {
    "h": "h", "eta": r"\eta", "t1": "t_{1}", "t2": "t_{2}",
    **{f"a{i}": rf"\alpha_{{{i}}}" for i in range(1, 7)},
}
_LATEX_VARS = {"q1": "q_{1}", "p1": "p_{1}", "q2": "q_{2}", "p2": "p_{2}"}


def _poly_latex(p) -> str:
    s = poly_str(p)
    s = re.sub(r"\^(-?\d+)", r"^{\1}", s)
    for name in sorted(_LATEX_SYMS, key=len, reverse=True):
        s = re.sub(rf"\b{name}\b", lambda _m, t=_LATEX_SYMS[name]: t, s)
    return s.replace("*", " ")


def _rat_latex(r: Rat) -> str:
    if r.den == r.den.ring.one:
        return _poly_latex(r.num)
    return rf"\frac{{{_poly_latex(r.num)}}}{{{_poly_latex(r.den)}}}"


def _mono_latex(mono) -> str:
    parts = []
    for name, e in zip(VARS, mono):
        if not e:
            continue
        v = _LATEX_VARS[name]
        parts.append(v if e == 1 else f"{v}^{{{e}}}")
    return "".join(parts)


def element_to_latex(e: WeylElement) -> str:
    """Normal-ordered monomials in graded (then lex) order, highest first."""
    if not e.terms:
        return "0"
    order = sorted(e.terms, key=lambda m: (-sum(m), tuple(-x for x in m)))
    pieces = []
    for mono in order:
        s = e.terms[mono]
        if isinstance(s, LinForm):
            s = s.constant
        body = _mono_latex(mono)
        coeff = _rat_latex(s)
        neg = coeff.startswith("-")
        if neg:
            coeff = coeff[1:]
        if body and coeff == "1":
            coeff = ""
        elif body and len(s.num.terms()) > 1 and s.den == s.den.ring.one:
            coeff = f"({coeff})"
        pieces.append(("-" if neg else "+", f"{coeff}{body}" if body else coeff))
    sign, body = pieces[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def report_to_json(rep: DerivationReport) -> dict:
    return {
        "system": rep.system,
        "flow": rep.flow,
        "flow_convention": rep.flow_convention.value,
        "stages": [{"name": s.name, "conditions": s.conditions,
                    "rank": s.rank, "nullity": s.nullity}
                   for s in rep.stages],
        "unique": rep.unique,
        "normalization": rep.normalization,
        "solution": {str(u): str(v) for u, v in sorted(rep.solution.items())
                     if v},
        "residual_free": [
            {str(u): str(v) for u, v in sorted(vec.items()) if v}
            for vec in rep.residual_free],
        "hamiltonian": element_to_json(rep.hamiltonian),
    }


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, WeylElement):
        return element_to_json(w)
    if isinstance(w, dict):
        return {" ".join(map(str, k)) if isinstance(k, tuple) else str(k):
                (element_to_json(v) if isinstance(v, WeylElement) else str(v))
                for k, v in w.items()}
    return str(w)


def check_to_json(rep: CheckReport) -> dict:
    out = {"check": rep.check, "subject": rep.subject, "verdict": rep.verdict}
    if rep.witness is not None:
        out["witness"] = _witness_json(rep.witness)
    if rep.erratum is not None:
        out["erratum"] = {"system": rep.erratum.system,
                          "location": rep.erratum.location}
    return out


def diff_to_json(d: HamiltonianDiff) -> dict:
    return {
        "empty": d.empty,
        "missing": {" ".join(map(str, m)): str(c) for m, c in sorted(d.missing.items())},
        "extra": {" ".join(map(str, m)): str(c) for m, c in sorted(d.extra.items())},
        "changed": {" ".join(map(str, m)): [str(a), str(b)]
                    for m, (a, b) in sorted(d.changed.items())},
        "scalar_ratio": None if d.scalar_ratio is None else str(d.scalar_ratio),
        "registered": [" ".join(map(str, m)) for m in d.registered],
        "unregistered": [" ".join(map(str, m)) for m in d.unregistered],
    }
