"""Shared helpers for the test suite."""

import random
from fractions import Fraction

from qgarnier.weyl import NonTerminatingReorder, WeylElement, monomial

#: Fixed default seed so unseeded runs are reproducible.
DEFAULT_SEED = 20250214


def random_pair_exps(rng: random.Random, span: int = 2):
    """One canonical pair's (q_exp, p_exp), never both negative."""
    a = rng.randint(-span, span)
    b = rng.randint(-span, span)
    if a < 0 and b < 0:
        if rng.random() < 0.5:
            a = -a
        else:
            b = -b
    return a, b


def random_element(rng: random.Random, max_terms: int = 3, span: int = 2,
                   laurent: bool = True) -> WeylElement:
    """A small random Laurent element with integer coefficients."""
    e = WeylElement()
    for _ in range(rng.randint(1, max_terms)):
        if laurent:
            a1, b1 = random_pair_exps(rng, span)
            a2, b2 = random_pair_exps(rng, span)
        else:
            a1, b1, a2, b2 = (rng.randint(0, span) for _ in range(4))
        coeff = rng.choice([-3, -2, -1, 1, 2, 3, Fraction(1, 2), Fraction(-5, 3)])
        e = e + monomial((a1, b1, a2, b2), coeff)
    return e


def random_terminating_triple(rng: random.Random):
    """Three random Laurent elements whose iterated products stay inside
    the localization (mixed-sign monomial meetings are resampled)."""
    while True:
        a, b, c = (random_element(rng) for _ in range(3))
        try:
            (a * b) * c
            a * (b * c)
        except NonTerminatingReorder:
            continue
        return a, b, c
