import random
from fractions import Fraction

import pytest
import sympy as sp

from gl2struct import linalg
from gl2struct.binform import BinaryForm
from gl2struct.csp3 import (
    NAMED_PDES,
    ChartBreakdown,
    CSp3Element,
    NotConformalSymplectic,
    RelationNotFound,
    act_lagrangian,
    check_conformal_symplectic,
    check_relation,
    classify_planar_type,
    cone_from_symbol,
    eta_dkp,
    eta_flat,
    exp_nilpotent,
    is_hyperbolic,
    named_pde,
    on_locus_point,
    pde_symbol,
    project,
    reconstruct_relation,
    section_rank,
)
from gl2struct.polyring import PolyRing

I6 = linalg.identity(6)
Z3 = [[0] * 3 for _ in range(3)]
I3 = linalg.identity(3)


def _sym(rng, size=4):
    a = [[Fraction(rng.randint(-size, size), rng.randint(1, 3)) for _ in range(3)] for _ in range(3)]
    return [[a[i][j] + a[j][i] for j in range(3)] for i in range(3)]


def _random_element(rng):
    """Product of generators: translations, shears and a scaled GL(3) block."""
    S = _sym(rng)
    lower = CSp3Element.from_blocks(S, I3, Z3, I3)  # (I 0 / S I)
    T = _sym(rng, 2)
    upper = CSp3Element.from_blocks(Z3, I3, T, I3)  # (I T / 0 I)
    while True:
        M = [[Fraction(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
        if linalg.det(M) != 0:
            break
    lam = Fraction(rng.choice([1, 2, -3]))
    Minv_t = linalg.transpose(linalg.inverse(M))
    diag = CSp3Element.from_blocks(Z3, M, Z3, [[lam * x for x in r] for r in Minv_t])
    return lower @ upper @ diag


def test_identity_and_rejection():
    assert check_conformal_symplectic(I6) == 1
    bad = [row[:] for row in I6]
    bad[0][1] = 1
    with pytest.raises(NotConformalSymplectic):
        check_conformal_symplectic(bad)


def test_lambda_multiplicative_and_action_composes():
    rng = random.Random(2)
    for _ in range(10):
        g, h = _random_element(rng), _random_element(rng)
        assert (g @ h).lam == g.lam * h.lam
        U = _sym(rng)
        try:
            lhs = act_lagrangian(g @ h, U)
            rhs = act_lagrangian(g, act_lagrangian(h, U))
        except ChartBreakdown:
            continue
        assert lhs == rhs
        assert lhs == linalg.transpose(lhs)


def test_fiber_fixes_origin_and_project():
    rng = random.Random(4)
    g = CSp3Element.from_blocks(Z3, I3, _sym(rng), I3)
    assert act_lagrangian(g, Z3) == Z3
    h = _random_element(rng)
    assert project(h) == act_lagrangian(h, Z3)
    assert project(I6) == Z3
    # (0 I / -I 0): B = 0, so U = 0 leaves the chart
    swap = CSp3Element.from_blocks([[-x for x in r] for r in I3], Z3, I3, Z3)
    with pytest.raises(ChartBreakdown):
        act_lagrangian(swap, Z3)


def test_exp_nilpotent():
    assert exp_nilpotent([[0] * 6 for _ in range(6)]) == I6
    v = [Fraction(k, 3) for k in (1, -2, 4, 5, -1)]
    flat = eta_flat(v)
    assert exp_nilpotent(flat) == [[I6[i][j] + flat[i][j] for j in range(6)] for i in range(6)]
    with pytest.raises(ValueError):
        exp_nilpotent(I6)


def test_eta_patterns():
    v = [Fraction(k) for k in (1, 2, 3, 4, 5)]
    f = eta_flat(v)
    assert f[3][1] == v[1] and f[3][2] == v[2] == f[4][1]
    assert eta_dkp(v)[2][0] == -v[4]


def test_exp_eta_dkp_closed_form():
    R = PolyRing(["v-4", "v-2", "v0", "v2", "v4"])
    vm4, vm2, v0, v2, v4 = R.gens()
    E = exp_nilpotent(eta_dkp(list(R.gens())))
    z, o = R.zero, R.one
    h = Fraction(1, 2)
    want = [
        [o, z, z, z, z, z],
        [z, o, z, z, z, z],
        [-v4, z, o, z, z, z],
        [vm4 - v4 ** 3 * Fraction(1, 6), vm2 + v4 * v2 * h, v0 + v4 ** 2 * h, o, z, v4],
        [vm2 - v4 * v2 * h, v0, v2, z, o, z],
        [v0 - v4 ** 2 * h, v2, v4, z, z, o],
    ]
    for i in range(6):
        for j in range(6):
            assert E[i][j] == want[i][j], (i, j)


def test_exp_eta_dkp_is_conformal_symplectic_and_projects_to_dkp_chart():
    rng = random.Random(5)
    for _ in range(5):
        v = [Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(5)]
        g = exp_nilpotent(eta_dkp(v))
        assert check_conformal_symplectic(g) == 1
        vm4, vm2, v0, v2, v4 = v
        U = project(g)
        assert U[0][0] == vm4 - v4 ** 3 / 6 + (v0 + v4 ** 2 / 2) * v4
        assert U[0][1] == vm2 + v4 * v2 / 2
        assert U[2][2] == v4


def test_reconstruct_wave_and_dkp():
    wave = reconstruct_relation(eta_flat, max_degree=1)
    assert str(wave) == "U22 - U13 = 0"
    dkp = reconstruct_relation(eta_dkp, max_degree=2)
    assert str(dkp) == "U22 - U13 + 1/2*U33^2 = 0"
    assert check_relation(wave, eta_flat, count=200) == 0
    assert check_relation(dkp, eta_dkp, count=200) == 0
    with pytest.raises(RelationNotFound):
        reconstruct_relation(eta_flat, max_degree=0)


def test_symbols():
    U0 = [[Fraction(0)] * 3 for _ in range(3)]
    A = pde_symbol(named_pde("wave"), U0)
    assert A == [[0, 0, Fraction(-1, 2)], [0, 1, 0], [Fraction(-1, 2), 0, 0]]
    assert is_hyperbolic(A)
    assert pde_symbol(named_pde("dkp1"), U0) == A
    assert pde_symbol(named_pde("laplace"), U0) == I3
    assert not is_hyperbolic(I3)
    assert not is_hyperbolic([[1, 0, 0], [0, -1, 0], [0, 0, 0]])


def test_symbol_against_sympy_hessian_convention():
    U = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(5), Fraction(-1)], [Fraction(3), Fraction(-1), Fraction(1, 2)]]
    F = named_pde("71")
    syms = sp.symbols("u11 u12 u13 u22 u23 u33")
    vals = dict(zip(syms, [1, 2, 3, 5, -1, sp.Rational(1, 2)]))
    idx = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (1, 1): 3, (1, 2): 4, (2, 2): 5}
    A = pde_symbol(F, U)
    for (i, j), k in idx.items():
        ref = sp.diff(F, syms[k]).subs(vals) * (1 if i == j else sp.Rational(1, 2))
        assert A[i][j] == Fraction(int(sp.numer(ref)), int(sp.denom(ref)))


@pytest.mark.parametrize("name", ["wave", "dkp1", "71", "62", "611"])
def test_named_pdes_hyperbolic(name):
    rng = random.Random(17)
    F = named_pde(name)
    for _ in range(10):
        U = on_locus_point(name, rng)
        assert is_hyperbolic(pde_symbol(F, U))


def test_laplace_rejected():
    rng = random.Random(3)
    U = on_locus_point("laplace", rng)
    assert not is_hyperbolic(pde_symbol(named_pde("laplace"), U))
    assert set(NAMED_PDES) >= {"wave", "dkp1", "71", "62", "611"}


def test_cone_wave_exact():
    A = [[0, 0, Fraction(-1, 2)], [0, 1, 0], [Fraction(-1, 2), 0, 0]]
    cs = cone_from_symbol(A)
    assert cs.exact
    assert cs.q == ((1, 0, 0), (0, 1, 0), (0, 0, 1))  # (s^2, s t, t^2)
    assert not any(cs.residual(A))
    assert section_rank(cs) == 5


def test_cone_random_hyperbolic():
    rng = random.Random(6)
    for _ in range(10):
        P = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        if linalg.det(P) == 0:
            continue
        D = [[1, 0, 0], [0, 1, 0], [0, 0, -rng.randint(1, 3)]]
        A = linalg.matmul(linalg.transpose(P), linalg.matmul(D, P))
        cs = cone_from_symbol(A)
        res = cs.residual(A)
        if cs.exact:
            assert not any(res)
        else:
            assert max(abs(float(r)) for r in res) < 1e-9
        assert section_rank(cs) == 5
    with pytest.raises(ValueError):
        cone_from_symbol(I3)


def test_cone_float_symbol():
    rng = random.Random(1)
    U = on_locus_point("611", rng)
    A = pde_symbol(named_pde("611"), U)
    cs = cone_from_symbol(A)
    assert section_rank(cs) == 5
    scale = max(abs(float(x)) for r in A for x in r)
    assert max(abs(float(r)) for r in cs.residual(A)) < 1e-9 * max(1.0, scale) * 10


def test_planar_types():
    assert classify_planar_type(BinaryForm.monomial(7, 1)) == "MongeAmpere"
    assert classify_planar_type(BinaryForm.monomial(8, 0)) == "Goursat"
    q = BinaryForm(2, (1, 0, 1))
    assert classify_planar_type(q * q * q * q) == "Generic"
