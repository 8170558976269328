from fractions import Fraction

from gl2struct.binform import BinaryForm
from gl2struct.reduction import (
    COORD_RING,
    X8_CONSTANT,
    symmetry_count,
    verify_x8_reduction,
    x8_coframe,
    x8_scale_from_structure_rules,
)
from gl2struct.roottype import enumerate_types, sample_representative


def test_coframe_entries():
    cf = x8_coframe()
    a = COORD_RING.gen("a")
    x4 = COORD_RING.gen("xi4")
    assert cf["phi0"].coefficient("da") == a ** -1
    assert cf["w4"].coefficient("dxi4") == a ** 8
    assert cf["w-2"].coefficient("dxi2") == (12 * COORD_RING.gen("b") ** 2 - X8_CONSTANT * x4) * a ** 20


def test_reduced_equations_hold():
    assert verify_x8_reduction()
    assert verify_x8_reduction(detail=True) == {}


def test_mutation_breaks_reduction():
    diffs = verify_x8_reduction(x8_coframe(drop_xi4_term=True), detail=True)
    assert diffs and "w-2" in diffs
    assert "phi0" not in diffs and "w4" not in diffs


def test_wrong_constant_breaks_reduction():
    assert not verify_x8_reduction(x8_coframe(constant=2 * X8_CONSTANT))


def test_consistent_with_full_structure_equations():
    # T = s x^8 with lam = -16 phi0, phi2 = 0 reproduces the reduced system at s = 1
    assert x8_scale_from_structure_rules() == {"scale": Fraction(1), "consistent": True}


def test_symmetry_counts():
    assert symmetry_count(BinaryForm.zero(8)) == 9
    assert symmetry_count(BinaryForm.monomial(8, 0)) == 7
    counts = {symmetry_count(sample_representative(rt).expand()) for rt in enumerate_types(include_zero=False)}
    assert counts | {9} == set(range(8)) | {9}
    assert 8 not in counts
