from fractions import Fraction

import pytest

from gl2struct import linalg
from gl2struct.binform import BinaryForm, GL2Element, discriminant, gl2_act
from gl2struct.leafcheck import (
    RatioNotConstant,
    random_distinct_octics,
    random_repeated_octics,
    tangent_basis,
    verify_det_disc_ratio,
    verify_leaf_tangency,
    verify_rank_law,
)
from gl2struct.roottype import FactoredOctic, RootType, enumerate_types, sample_representative
from gl2struct.structeq import jmatrix, symbolic_J

# det J(v) / Res(dv/dx, dv/dy), measured once on exact samples and frozen
DET_DISC_RATIO = Fraction(19349176320000)


def test_tangent_basis_eighth_power():
    f = FactoredOctic(1, ((2, 3, 8),))
    basis = tangent_basis(f)
    assert all(b.degree == 8 for b in basis)
    assert linalg.rank([list(b.coeffs) for b in basis]) == 2
    v = f.expand()
    assert linalg.rank([list(b.coeffs) for b in basis] + [list(v.coeffs)]) == 2


def test_tangent_basis_x4y4():
    basis = tangent_basis(FactoredOctic(1, ((1, 0, 4), (0, 1, 4))))
    assert linalg.rank([list(b.coeffs) for b in basis]) == 3


def test_rank_law_examples():
    assert verify_rank_law(FactoredOctic(1, ((1, -1, 8),)))
    assert linalg.rank(jmatrix(FactoredOctic(1, ((1, -1, 8),)).expand())) == 2
    eight = FactoredOctic(1, tuple((1, -k, 1) for k in range(8)))
    assert linalg.rank(jmatrix(eight.expand())) == 9
    assert linalg.rank(jmatrix(sample_representative(RootType((4,), (2,))).expand())) == 4
    assert linalg.rank(jmatrix(BinaryForm.zero(8))) == 0


@pytest.mark.parametrize("rt", enumerate_types(include_zero=False), ids=lambda rt: rt.label)
def test_leaf_tangency_all_types(rt):
    rep = verify_leaf_tangency(sample_representative(rt))
    assert rep.verdict, rep.to_json()
    assert rep.rank_J == rt.dimension


def test_tangency_mutation_control():
    J = [list(r) for r in symbolic_J()]
    for row in J:
        row[7] = row[7] * 0  # zero the phi0 column
    rep = verify_leaf_tangency(sample_representative(RootType((1,) * 8)), J=tuple(map(tuple, J)))
    assert not rep.verdict


def test_det_disc_ratio():
    samples = random_distinct_octics(20, seed=0)
    repeated = random_repeated_octics(10, seed=1)
    assert verify_det_disc_ratio(samples, repeated) == DET_DISC_RATIO


def test_det_disc_cross_multiplied_and_degree_14():
    v, w = random_distinct_octics(2, seed=5)
    dj = lambda u: linalg.det(jmatrix(u))
    assert dj(v) * discriminant(w) == dj(w) * discriminant(v)
    t = Fraction(3, 2)
    assert dj(v * t) == dj(v) * t ** 14
    assert discriminant(v * t) == discriminant(v) * t ** 14
    x8 = BinaryForm.monomial(8, 0)
    assert dj(x8) == 0 and discriminant(x8) == 0


def test_ratio_failure_signal():
    samples = random_distinct_octics(2, seed=0)
    J = [list(r) for r in symbolic_J()]
    J[0][0] = J[0][0] + J[1][1]
    with pytest.raises(RatioNotConstant):
        verify_det_disc_ratio(samples + random_distinct_octics(3, seed=9), J=tuple(map(tuple, J)))
    with pytest.raises(ValueError):
        verify_det_disc_ratio(samples[:1])


def test_rank_constant_on_orbits():
    v = sample_representative(RootType((3, 1), (1, 1))).expand()
    g = GL2Element.of(1, 2, -1, 3)
    assert linalg.rank(jmatrix(gl2_act(g, v))) == linalg.rank(jmatrix(v))
