"""Exact coefficient field QQ(h, a1..a6, eta, t1, t2) and affine-linear forms.

Polynomials are sparse sympy ring elements over QQ in the ten fixed
parameter symbols, with graded-lex term order.  ``Rat`` is a reduced,
canonically normalized fraction of two such polynomials and is the scalar
type for everything downstream.  ``LinForm`` is an affine-linear
combination of ansatz unknowns with ``Rat`` coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

__all__ = [
    "SYMBOLS",
    "RING",
    "GENS",
    "Rat",
    "Unknown",
    "LinForm",
    "ZeroDenominator",
    "DivisionByZero",
    "PoleAtPoint",
    "rat",
    "sym",
    "poly_str",
]

#: The fixed, totally ordered parameter symbols.  No others exist.
SYMBOLS = ("h", "a1", "a2", "a3", "a4", "a5", "a6", "eta", "t1", "t2")

RING, *GENS = ring(",".join(SYMBOLS), QQ, order=grlex)

_SYM_INDEX = {name: i for i, name in enumerate(SYMBOLS)}


class ZeroDenominator(ZeroDivisionError):
    """Fraction constructed with a zero denominator."""


class DivisionByZero(ZeroDivisionError):
    """Division of field elements by zero."""


class PoleAtPoint(ZeroDivisionError):
    """Specialization hit a zero of the denominator."""


def _to_poly(x) -> PolyElement:
    if isinstance(x, PolyElement):
        return x
    if isinstance(x, (int, Fraction)):
        return RING.ground_new(QQ(x.numerator, x.denominator) if isinstance(x, Fraction) else QQ(x))
    raise TypeError(f"cannot coerce {x!r} to a polynomial")


def _normalize_pair(num: PolyElement, den: PolyElement):
    """Reduce num/den and normalize: den primitive, positive leading coeff."""
    if not den:
        raise ZeroDenominator("zero denominator")
    if not num:
        return RING.zero, RING.one
    g = num.gcd(den)
    num, den = num.quo(g), den.quo(g)
    content, den_prim = den.primitive()
    if den_prim.LC < 0:
        content, den_prim = -content, -den_prim
    num = num * (QQ(1) / QQ(content))
    return num, den_prim


class Rat:
    """A reduced rational function over the parameter symbols.

    Immutable; equality and hashing are syntactic on the canonical form.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, _normalized=False):
        num = _to_poly(num)
        den = _to_poly(den)
        if not _normalized:
            num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, num: PolyElement, den: PolyElement) -> "Rat":
        return cls(num, den, _normalized=True)

    # -- predicates ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Rat":
        if isinstance(x, Rat):
            return x
        if isinstance(x, (int, Fraction, PolyElement)):
            return Rat(x)
        return NotImplemented

    def __add__(self, other):
        other = Rat._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return Rat(self.num + other.num, self.den)
        return Rat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Rat._raw(-self.num, self.den)

    def __sub__(self, other):
        other = Rat._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Rat._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return RAT_ZERO
        return Rat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Rat._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise DivisionByZero("division by zero rational function")
        return Rat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return Rat._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            if not self.num:
                raise DivisionByZero("inverse of zero")
            return Rat(self.den ** (-n), self.num ** (-n))
        return Rat._raw(self.num ** n, self.den ** n)

    def inv(self) -> "Rat":
        return self ** -1

    # -- calculus -----------------------------------------------------

    def diff(self, v: str) -> "Rat":
        """Exact partial derivative with respect to a parameter symbol."""
        i = _SYM_INDEX[v]
        x = GENS[i]
        dnum = self.num.diff(x)
        dden = self.den.diff(x)
        if not dden:
            return Rat(dnum, self.den)
        return Rat(dnum * self.den - self.num * dden, self.den * self.den)

    def specialize(self, bindings: Mapping[str, Union[int, Fraction, "Rat"]]) -> "Rat":
        """Partially evaluate at the given symbol bindings; unbound symbols survive."""
        vals = {_SYM_INDEX[k]: Rat._coerce(v) for k, v in bindings.items()}
        num = _poly_specialize(self.num, vals)
        den = _poly_specialize(self.den, vals)
        if not den:
            raise PoleAtPoint(f"denominator {self.den} vanishes under {dict(bindings)}")
        return num / den

    # -- comparison / output -----------------------------------------

    def __eq__(self, other):
        other = Rat._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        ns = poly_str(self.num)
        if self.den == RING.one:
            return ns
        ds = poly_str(self.den)
        if len(self.num.terms()) > 1 or ns.startswith("-"):
            ns = f"({ns})"
        if len(self.den.terms()) > 1 or not self.den.is_term:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"Rat({self})"


RAT_ZERO = Rat(0)
RAT_ONE = Rat(1)


def rat(x) -> Rat:
    """Coerce an int, Fraction, polynomial or Rat to a Rat."""
    r = Rat._coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot coerce {x!r}")
    return r


def sym(name: str) -> Rat:
    """The parameter symbol with the given name, as a field element."""
    return Rat(GENS[_SYM_INDEX[name]])


def _poly_specialize(p: PolyElement, vals: Mapping[int, Rat]) -> Rat:
    out = RAT_ZERO
    for exps, coeff in p.terms():
        term = Rat(RING.ground_new(coeff))
        for i, e in enumerate(exps):
            if not e:
                continue
            base = vals.get(i)
            if base is None:
                term = term * Rat(GENS[i] ** e)
            else:
                term = term * base ** e
        out = out + term
    return out


def _monomial_str(exps) -> str:
    parts = []
    for name, e in zip(SYMBOLS, exps):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def poly_str(p: PolyElement) -> str:
    """Canonical text form: graded-lex descending terms, explicit ``^``."""
    if not p:
        return "0"
    pieces = []
    for exps, coeff in sorted(p.terms(), key=lambda t: grlex(t[0]), reverse=True):
        mono = _monomial_str(exps)
        c = Fraction(coeff.numerator, coeff.denominator)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        pieces.append((sign, body))
    sign, body = pieces[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


class Unknown(NamedTuple):
    """One ansatz coefficient k_{i1,i2,i3,i4} for Hamiltonian 1 or 2."""

    index: tuple
    tag: int

    def __str__(self):
        return f"k{self.tag}[{','.join(map(str, self.index))}]"


@dataclass(frozen=True)
class LinForm:
    """Affine-linear combination of unknowns over the field.

    ``coeffs`` never stores a zero coefficient.  A LinForm with no
    unknowns is interchangeable with its constant.
    """

    constant: Rat
    coeffs: tuple  # sorted tuple of (Unknown, Rat)

    @staticmethod
    def make(constant=RAT_ZERO, coeffs: Union[Mapping, Iterable, None] = None) -> "LinForm":
        items = dict(coeffs or {})
        cleaned = tuple(sorted(((u, c) for u, c in items.items() if c),
                               key=lambda uc: (uc[0].tag, uc[0].index)))
        return LinForm(rat(constant), cleaned)

    @staticmethod
    def from_unknown(u: Unknown) -> "LinForm":
        return LinForm(RAT_ZERO, ((u, RAT_ONE),))

    def coeff_map(self) -> dict:
        return dict(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs) or bool(self.constant)

    def __add__(self, other):
        if isinstance(other, LinForm):
            m = self.coeff_map()
            for u, c in other.coeffs:
                m[u] = m.get(u, RAT_ZERO) + c
            return LinForm.make(self.constant + other.constant, m)
        if isinstance(other, (Rat, int, Fraction)):
            return LinForm(self.constant + other, self.coeffs)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return LinForm(-self.constant, tuple((u, -c) for u, c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, LinForm):
            return self + (-other)
        if isinstance(other, (Rat, int, Fraction)):
            return LinForm(self.constant - other, self.coeffs)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Rat) -> "LinForm":
        if not c:
            return LINFORM_ZERO
        return LinForm(self.constant * c, tuple((u, k * c) for u, k in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (Rat, int, Fraction)):
            return self.scale(rat(other))
        return NotImplemented

    __rmul__ = __mul__

    def apply(self, solution: Mapping[Unknown, Rat]) -> "LinForm":
        """Back-substitute bound unknowns; unbound unknowns survive."""
        const = self.constant
        left = {}
        for u, c in self.coeffs:
            if u in solution:
                const = const + c * solution[u]
            else:
                left[u] = c
        return LinForm.make(const, left)

    def unknowns(self):
        return [u for u, _ in self.coeffs]

    def __str__(self):
        parts = []
        for u, c in self.coeffs:
            parts.append(f"({c})*{u}")
        if self.constant or not parts:
            parts.append(f"({self.constant})")
        return " + ".join(parts)


LINFORM_ZERO = LinForm.make()
