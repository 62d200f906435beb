import random

import pytest

from util import DEFAULT_SEED, random_element

from qgarnier import catalog
from qgarnier.field import PoleAtPoint, Rat, sym
from qgarnier.verify import (
    check_canonical,
    check_commutativity,
    check_flatness,
    check_roundtrip,
    classical_limit,
    compare_reference,
)
from qgarnier.weyl import WeylElement, p1, q1, scalar

h, t2 = sym("h"), sym("t2")


def _all_references():
    for name in catalog.SYSTEM_NAMES:
        for flow in (1, 2):
            yield catalog.reference_hamiltonian(name, flow)


class TestCompareReference:
    def test_reflexive(self):
        for ref in _all_references():
            d = compare_reference(ref.element, ref)
            assert d.empty and d.within_errata, ref.id

    def test_scalar_ratio(self):
        ref = catalog.reference_hamiltonian("G5", 1)
        d = compare_reference(ref.element.scale(Rat(2)), ref)
        assert not d.empty
        assert d.scalar_ratio == Rat(2)

    def test_unregistered_diff(self):
        ref = catalog.reference_hamiltonian("G5", 1)
        d = compare_reference(ref.element + q1 ** 5, ref)
        assert not d.within_errata
        assert d.unregistered == ((5, 0, 0, 0),)

    def test_rejects_unknown_coefficients(self):
        from qgarnier.derive import build_ansatz
        ref = catalog.reference_hamiltonian("G5", 1)
        with pytest.raises(ValueError):
            compare_reference(build_ansatz(1).element, ref)


class TestCommutativityFlatness:
    def test_commutativity_fail_witness(self):
        rep = check_commutativity(q1, p1)
        assert rep.verdict == "fail"
        assert rep.witness == scalar(h)

    def test_random_pair_generically_fails(self):
        rng = random.Random(DEFAULT_SEED + 7)
        rep = check_commutativity(random_element(rng, laurent=False),
                                  random_element(rng, laurent=False))
        assert rep.verdict == "fail" and not rep.witness.is_zero()

    def test_flatness_fail_witness(self):
        rep = check_flatness(q1.scale(t2), WeylElement())
        assert rep.verdict == "fail"
        assert rep.witness == q1

    def test_t_free_pair_trivially_flat(self):
        assert check_flatness(q1 * p1, q1 ** 2).verdict == "pass"


class TestChartChecks:
    def test_printed_charts_pass_or_expected_fail(self):
        for name in catalog.SYSTEM_NAMES:
            for r in catalog.transformations(name):
                for rep in (check_canonical(r, "forward"),
                            check_canonical(r, "backward"),
                            check_roundtrip(r)):
                    assert rep.ok, rep.subject
                    if rep.verdict == "expected-fail":
                        assert rep.erratum is not None
                        assert rep.erratum.system == name

    def test_corrected_charts_all_pass(self):
        for name in catalog.SYSTEM_NAMES:
            for r in catalog.transformations(name):
                assert check_canonical(r, "forward", corrected=True).verdict == "pass"
                assert check_canonical(r, "backward", corrected=True).verdict == "pass"
                assert check_roundtrip(r, corrected=True).verdict == "pass"

    def test_bad_direction_rejected(self):
        r = catalog.transformations("G5")[0]
        with pytest.raises(ValueError):
            check_canonical(r, "sideways")


class TestClassicalLimit:
    def test_reference_specialization(self):
        ref = catalog.reference_hamiltonian("G113", 1).element
        limited = classical_limit(ref)
        assert set(limited.terms) <= set(ref.terms)
        for mono, coeff in limited.terms.items():
            assert coeff == ref.terms[mono].specialize({"h": 0})

    def test_h_multiple_vanishes(self):
        assert classical_limit(q1.scale(h)).is_zero()

    def test_pole_at_h0(self):
        with pytest.raises(PoleAtPoint):
            classical_limit(q1.scale(h.inv()))
