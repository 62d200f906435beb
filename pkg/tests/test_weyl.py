import random

import pytest

from oracles import reorder_oracle
from util import DEFAULT_SEED, random_element, random_terminating_triple

from qgarnier.field import LinForm, RAT_ONE, Rat, Unknown, sym
from qgarnier.weyl import (
    NonInvertible,
    NonInvertibleImage,
    NonTerminatingReorder,
    NonlinearUnknowns,
    WeylElement,
    monomial,
    p1,
    p2,
    q1,
    q2,
    reorder,
    scalar,
)

h = sym("h")
H = scalar(h)


class TestReorder:
    def test_single_exchange(self):
        # p q = q p - h
        assert dict(((qe, pe), c) for c, qe, pe in reorder(1, 1)) == \
            {(1, 1): RAT_ONE, (0, 0): -h}

    def test_square(self):
        # p^2 q^2 = q^2 p^2 - 4 h q p + 2 h^2
        got = {(qe, pe): c for c, qe, pe in reorder(2, 2)}
        assert got == {(2, 2): RAT_ONE, (1, 1): -4 * h, (0, 0): 2 * h * h}

    def test_inverse_power(self):
        # p q^-1 = q^-1 p + h q^-2
        got = {(qe, pe): c for c, qe, pe in reorder(1, -1)}
        assert got == {(-1, 1): RAT_ONE, (-2, 0): h}

    def test_matches_single_step_oracle(self):
        for b in range(-4, 5):
            for c in range(-4, 5):
                if b < 0 and c < 0:
                    continue
                got = {(qe, pe): w for w, qe, pe in reorder(b, c)}
                assert got == reorder_oracle(b, c), (b, c)

    def test_both_negative_rejected(self):
        with pytest.raises(NonTerminatingReorder):
            reorder(-1, -2)


class TestCanonicalRelations:
    def test_commutators(self):
        for a, b, want in [
            (q1, p1, H), (q2, p2, H),
            (q1, p2, WeylElement()), (q2, p1, WeylElement()),
            (q1, q2, WeylElement()), (p1, p2, WeylElement()),
        ]:
            assert a.commutator(b) == want

    def test_inverse_commutators(self):
        # [p, q^-1] = h q^-2 and [p^-1, q] = h p^-2, in both pairs
        assert p1.commutator(q1 ** -1) == monomial((-2, 0, 0, 0), h)
        assert (p1 ** -1).commutator(q1) == monomial((0, -2, 0, 0), h)
        assert p2.commutator(q2 ** -1) == monomial((0, 0, -2, 0), h)
        assert (p2 ** -1).commutator(q2) == monomial((0, 0, 0, -2), h)

    def test_square_of_sum(self):
        assert (q1 + p1) ** 2 == q1 ** 2 + 2 * q1 * p1 + p1 ** 2 - H


class TestRingStructure:
    def test_associativity_seeded(self):
        rng = random.Random(DEFAULT_SEED)
        for _ in range(100):
            a, b, c = random_terminating_triple(rng)
            assert ((a * b) * c - a * (b * c)).is_zero()

    def test_distributivity_seeded(self):
        rng = random.Random(DEFAULT_SEED + 1)
        for _ in range(25):
            a, b, c = random_terminating_triple(rng)
            assert (a * (b + c) - a * b - a * c).is_zero()

    def test_scalar_center(self):
        x = monomial((1, 2, -1, 0), 3)
        assert H * x == x * H


class TestInverse:
    def test_monomial_inverse(self):
        x = monomial((1, 0, 0, 1), Rat(2))
        assert x * x ** -1 == WeylElement.scalar(1)
        assert x ** -1 * x == WeylElement.scalar(1)

    def test_mixed_pair_not_invertible(self):
        with pytest.raises(NonInvertible):
            (q1 * p1) ** -1

    def test_sum_not_invertible(self):
        with pytest.raises(NonInvertible):
            (q1 + q2) ** -1

    def test_division(self):
        assert (q1 * q2) / q2 == q1


class TestStructuralOps:
    def test_pole_split(self):
        e = monomial((-1, 0, 2, 1)) + monomial((1, 1, 0, 0)) + monomial((0, 0, 0, -2))
        polar, holo = e.pole_split()
        assert set(polar.terms) == {(-1, 0, 2, 1), (0, 0, 0, -2)}
        assert set(holo.terms) == {(1, 1, 0, 0)}
        assert polar + holo == e

    def test_t_derivative(self):
        t1 = sym("t1")
        e = monomial((1, 0, 0, 0), t1 * t1) + monomial((0, 1, 0, 0), sym("a1"))
        assert e.t_derivative("t1") == monomial((1, 0, 0, 0), 2 * t1)
        with pytest.raises(ValueError):
            e.t_derivative("a1")

    def test_specialize(self):
        e = monomial((1, 0, 0, 0), h) + monomial((0, 0, 1, 0), 1 + h)
        assert e.specialize({"h": 0}) == q2

    def test_substitute_homomorphism_sample(self):
        images = {"q1": q1 ** -1,
                  "p1": -(q1 ** 2) * p1 - q1 * q2 * p2 - q1.scale(sym("a1")),
                  "q2": q2 / q1, "p2": q1 * p2}
        rng = random.Random(DEFAULT_SEED + 2)
        for _ in range(10):
            a = random_element(rng, max_terms=2, span=1, laurent=False)
            b = random_element(rng, max_terms=2, span=1, laurent=False)
            assert (a * b).substitute(images) == \
                a.substitute(images) * b.substitute(images)

    def test_substitute_non_invertible_image(self):
        with pytest.raises(NonInvertibleImage):
            (q1 ** -1).substitute({"q1": q1 + p2, "p1": p1, "q2": q2, "p2": p2})

    def test_nonlinear_unknowns(self):
        u = LinForm.from_unknown(Unknown((0, 0, 0, 0), 1))
        e = WeylElement.scalar(u)
        with pytest.raises(NonlinearUnknowns):
            e * e

    def test_apply_solution(self):
        u = Unknown((1, 0, 0, 0), 1)
        e = monomial((1, 0, 0, 0), LinForm.from_unknown(u))
        assert e.apply_solution({u: 2 * h}) == q1.scale(2 * h)
        assert e.apply_solution({u: Rat(0)}).is_zero()
