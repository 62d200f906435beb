"""Localized Weyl algebra in two canonical pairs.

Elements are finite sums of normal-ordered Laurent monomials
``q1^a1 p1^b1 q2^a2 p2^b2`` (q's left of p's per index, index 1 left of
index 2) with scalar coefficients from the parameter field, optionally
affine-linear in ansatz unknowns.  The product is driven by a closed
reordering formula for ``p^b q^c`` derived from ``[q, p] = h`` and the
inverse commutators ``[p, q^-1] = h q^-2``, ``[p^-1, q] = h p^-2``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

from .field import (
    GENS,
    LINFORM_ZERO,
    LinForm,
    RAT_ONE,
    RAT_ZERO,
    Rat,
    rat,
)

__all__ = [
    "WeylElement",
    "Scalar",
    "NonTerminatingReorder",
    "NonlinearUnknowns",
    "NonInvertible",
    "NonInvertibleImage",
    "reorder",
    "q1",
    "p1",
    "q2",
    "p2",
    "scalar",
    "monomial",
]

Scalar = Union[Rat, LinForm]

_H = GENS[0]

VARS = ("q1", "p1", "q2", "p2")


class NonTerminatingReorder(ValueError):
    """Normal ordering of ``p^b q^c`` with both exponents negative."""


class NonlinearUnknowns(ValueError):
    """A product would be quadratic in ansatz unknowns."""


class NonInvertible(ValueError):
    """Inverse requested of a non-invertible element."""


class NonInvertibleImage(NonInvertible):
    """Substitution needs the inverse of a non-invertible image."""


def _gbinom(n: int, k: int) -> Fraction:
    """Generalized binomial C(n, k) = n(n-1)...(n-k+1)/k! for integer n."""
    num = 1
    den = 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return Fraction(num, den)


@lru_cache(maxsize=None)
def reorder(b: int, c: int):
    """Normal form of the word ``p^b q^c`` in one canonical pair.

    Returns a tuple of ``(coeff, q_exp, p_exp)`` with polynomial
    coefficients in h:

        p^b q^c = sum_k (-h)^k k! C(b,k) C(c,k) q^(c-k) p^(b-k)

    where k runs to the smaller of the non-negative exponents.
    """
    if b < 0 and c < 0:
        raise NonTerminatingReorder(f"cannot normal-order p^{b} q^{c}")
    if b >= 0 and c >= 0:
        kmax = min(b, c)
    else:
        kmax = b if b >= 0 else c
    out = []
    fact = 1
    for k in range(kmax + 1):
        if k:
            fact *= k
        w = _gbinom(b, k) * _gbinom(c, k) * fact
        if not w:
            continue
        coeff = Rat(((-_H) ** k) * rat(w).num)
        out.append((coeff, c - k, b - k))
    return tuple(out)


def _scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, LinForm):
        if isinstance(b, LinForm):
            if a.is_constant():
                return b.scale(a.constant)
            if b.is_constant():
                return a.scale(b.constant)
            raise NonlinearUnknowns("product of two unknown-bearing scalars")
        return a.scale(b)
    if isinstance(b, LinForm):
        return b.scale(a)
    return a * b


def _scalar_add(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, LinForm) or isinstance(b, LinForm):
        if not isinstance(a, LinForm):
            a = LinForm(a, ())
        if not isinstance(b, LinForm):
            b = LinForm(b, ())
        return a + b
    return a + b


def _as_rat(s: Scalar) -> Rat:
    if isinstance(s, LinForm):
        if not s.is_constant():
            raise NonlinearUnknowns("unknown-bearing scalar where a field element is required")
        return s.constant
    return s


class WeylElement:
    """Finite sum of normal-ordered Laurent monomials with scalar coefficients.

    Immutable; ``terms`` maps exponent quadruples (a1, b1, a2, b2) to
    nonzero scalars.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping, None] = None):
        cleaned = {}
        if terms:
            for mono, s in terms.items():
                if s:
                    cleaned[tuple(mono)] = s
        object.__setattr__(self, "terms", cleaned)

    # -- constructors -------------------------------------------------

    @staticmethod
    def scalar(s) -> "WeylElement":
        if isinstance(s, LinForm):
            return WeylElement({(0, 0, 0, 0): s})
        return WeylElement({(0, 0, 0, 0): rat(s)})

    @staticmethod
    def monomial(exps, coeff=RAT_ONE) -> "WeylElement":
        if not isinstance(coeff, LinForm):
            coeff = rat(coeff)
        return WeylElement({tuple(exps): coeff})

    @staticmethod
    def generator(name: str) -> "WeylElement":
        i = VARS.index(name)
        exps = [0, 0, 0, 0]
        exps[i] = 1
        return WeylElement.monomial(exps)

    # -- predicates ---------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0, 0, 0)}

    def is_k_free(self) -> bool:
        return all(not isinstance(s, LinForm) or s.is_constant()
                   for s in self.terms.values())

    def total_degree(self) -> int:
        """Largest exponent sum over monomials (0 for the zero element)."""
        if not self.terms:
            return 0
        return max(sum(m) for m in self.terms)

    # -- ring structure -----------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, WeylElement):
            return x
        if isinstance(x, (Rat, LinForm, int, Fraction)):
            return WeylElement.scalar(x)
        return NotImplemented

    def __add__(self, other):
        other = WeylElement._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for mono, s in other.terms.items():
            if mono in terms:
                terms[mono] = _scalar_add(terms[mono], s)
            else:
                terms[mono] = s
        return WeylElement(terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement({m: -s for m, s in self.terms.items()})

    def __sub__(self, other):
        other = WeylElement._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "WeylElement":
        if not c:
            return ZERO
        return WeylElement({m: _scalar_mul(s, c) for m, s in self.terms.items()})

    def __mul__(self, other):
        other = WeylElement._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = {}
        for (A1, B1, A2, B2), sa in self.terms.items():
            for (a1, b1, a2, b2), sb in other.terms.items():
                s = _scalar_mul(sa, sb)
                if not s:
                    continue
                for c1, qe1, pe1 in reorder(B1, a1):
                    for c2, qe2, pe2 in reorder(B2, a2):
                        mono = (A1 + qe1, pe1 + b1, A2 + qe2, pe2 + b2)
                        piece = _scalar_mul(s, c1 * c2)
                        if mono in acc:
                            acc[mono] = _scalar_add(acc[mono], piece)
                        else:
                            acc[mono] = piece
        return WeylElement(acc)

    def __rmul__(self, other):
        other = WeylElement._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def commutator(self, other: "WeylElement") -> "WeylElement":
        return self * other - other * self

    def __pow__(self, n: int) -> "WeylElement":
        if n >= 0:
            out = ONE
            base = self
            for _ in range(n):
                out = out * base
            return out
        return self._monomial_inverse() ** (-n)

    def _monomial_inverse(self) -> "WeylElement":
        if len(self.terms) != 1:
            raise NonInvertible("inverse of a non-monomial element")
        (mono, s), = self.terms.items()
        a1, b1, a2, b2 = mono
        if (a1 and b1) or (a2 and b2):
            raise NonInvertible(f"same-index mixed monomial {mono} is not invertible")
        c = _as_rat(s)
        if not c:
            raise NonInvertible("zero coefficient")
        return WeylElement.monomial((-a1, -b1, -a2, -b2), c.inv())

    def __truediv__(self, other):
        other = WeylElement._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other._monomial_inverse()

    # -- structural operations ---------------------------------------

    def substitute(self, images: Mapping[str, "WeylElement"]) -> "WeylElement":
        """Multiplicative extension of a generator substitution.

        Each monomial maps to the ordered product of image powers
        (q1-image, p1-image, q2-image, p2-image), times its coefficient.
        """
        cache = {}

        def img_pow(name, e):
            key = (name, e)
            if key not in cache:
                base = images[name]
                try:
                    cache[key] = base ** e
                except NonInvertible as exc:
                    raise NonInvertibleImage(
                        f"image of {name} is not invertible: {exc}") from exc
            return cache[key]

        out = ZERO
        for mono, s in self.terms.items():
            piece = ONE
            for name, e in zip(VARS, mono):
                if e:
                    piece = piece * img_pow(name, e)
            out = out + piece.scale(s)
        return out

    def pole_split(self):
        """Split into (polar, holomorphic): terms with any negative exponent vs the rest."""
        polar = {}
        holo = {}
        for mono, s in self.terms.items():
            (polar if any(e < 0 for e in mono) else holo)[mono] = s
        return WeylElement(polar), WeylElement(holo)

    def t_derivative(self, v: str) -> "WeylElement":
        """Coefficient-wise partial derivative with respect to t1 or t2."""
        if v not in ("t1", "t2"):
            raise ValueError(f"time variable must be t1 or t2, got {v!r}")
        out = {}
        for mono, s in self.terms.items():
            if isinstance(s, LinForm):
                ds = LinForm.make(s.constant.diff(v),
                                  {u: c.diff(v) for u, c in s.coeffs})
            else:
                ds = s.diff(v)
            if ds:
                out[mono] = ds
        return WeylElement(out)

    def specialize(self, bindings) -> "WeylElement":
        """Coefficient-wise specialization of parameter symbols."""
        out = {}
        for mono, s in self.terms.items():
            if isinstance(s, LinForm):
                ns = LinForm.make(s.constant.specialize(bindings),
                                  {u: c.specialize(bindings) for u, c in s.coeffs})
            else:
                ns = s.specialize(bindings)
            if ns:
                out[mono] = ns
        return WeylElement(out)

    def apply_solution(self, solution: Mapping) -> "WeylElement":
        """Back-substitute unknowns; LinForm coefficients that become
        constant collapse to plain field elements."""
        out = {}
        for mono, s in self.terms.items():
            if isinstance(s, LinForm):
                s = s.apply(solution)
                if s.is_constant():
                    s = s.constant
            if s:
                out[mono] = s
        return WeylElement(out)

    def coefficient(self, mono) -> Scalar:
        return self.terms.get(tuple(mono), RAT_ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items())

    # -- comparison / output -----------------------------------------

    def __eq__(self, other):
        other = WeylElement._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        for mono, s in self.terms.items():
            a, b = s, other.terms[mono]
            if isinstance(a, LinForm) or isinstance(b, LinForm):
                if not isinstance(a, LinForm):
                    a = LinForm(a, ())
                if not isinstance(b, LinForm):
                    b = LinForm(b, ())
            if a != b:
                return False
        return True

    def __hash__(self):
        return hash(frozenset(
            (m, s if isinstance(s, LinForm) else s) for m, s in self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, s in self.sorted_terms():
            factors = [f"{n}^{e}" if e != 1 else n
                       for n, e in zip(VARS, mono) if e]
            body = "*".join(factors) if factors else "1"
            parts.append(f"({s})*{body}" if factors else f"({s})")
        return " + ".join(parts)

    def __repr__(self):
        return f"WeylElement({self})"


ZERO = WeylElement()
ONE = WeylElement.scalar(1)

q1 = WeylElement.generator("q1")
p1 = WeylElement.generator("p1")
q2 = WeylElement.generator("q2")
p2 = WeylElement.generator("p2")

scalar = WeylElement.scalar
monomial = WeylElement.monomial
