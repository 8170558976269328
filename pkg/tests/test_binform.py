from fractions import Fraction
from math import comb

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from gl2struct import linalg
from gl2struct.binform import (
    BinaryForm,
    GL2Element,
    discriminant,
    form_from_json,
    form_to_json,
    from_monomial,
    gl2_act,
    pair,
    pairing_table,
    sl2_act,
    to_monomial,
)
from gl2struct.leafcheck import random_distinct_octics

from conftest import small_q


def forms(n):
    return st.lists(small_q, min_size=n + 1, max_size=n + 1).map(lambda c: BinaryForm(n, tuple(c)))


degrees = st.integers(0, 10)


@st.composite
def pair_case(draw):
    m = draw(degrees)
    n = draw(degrees)
    p = draw(st.integers(0, min(m, n)))
    return draw(forms(m)), draw(forms(n)), p


def _sympy_transvectant(u, v, p):
    x, y = sp.symbols("x y")

    def expr(f):
        return sum(sp.Rational(c.numerator, c.denominator) * x ** (f.degree - k) * y ** k
                   for k, c in enumerate(to_monomial(f)))

    U, V = expr(u), expr(v)
    out = sum((-1) ** k * sp.binomial(p, k) * sp.diff(U, x, p - k, y, k) * sp.diff(V, x, k, y, p - k)
              for k in range(p + 1)) / sp.factorial(p)
    out = sp.Poly(sp.expand(out), x, y) if out != 0 else None
    deg = u.degree + v.degree - 2 * p
    mono = [Fraction(0)] * (deg + 1)
    if out is not None:
        for (a, b), c in out.terms():
            mono[b] = Fraction(int(c.p), int(c.q))
    return from_monomial(mono)


def test_basis_layout():
    v = BinaryForm(4, (1, 2, 3, 4, 5))
    assert to_monomial(v) == [1, 8, 18, 16, 5]
    assert v[-4] == 1 and v[4] == 5 and v[0] == 3
    assert from_monomial(to_monomial(v)) == v
    with pytest.raises(KeyError):
        v[1]
    with pytest.raises(ValueError):
        BinaryForm(3, (1, 2))


def test_monomial_helper_and_str():
    assert str(BinaryForm.monomial(8, 0)) == "x^8"
    assert str(BinaryForm.from_linear_factors([(1, -1, 2)])) == "x^2 - 2*x*y + y^2"


@given(pair_case())
def test_pairing_matches_sympy_transvectant(case):
    u, v, p = case
    if u.degree + v.degree > 12:
        return
    assert pair(u, v, p) == _sympy_transvectant(u, v, p)


@given(pair_case())
def test_pairing_symmetry(case):
    u, v, p = case
    assert pair(u, v, p) == pair(v, u, p) * (-1) ** p


@given(pair_case(), st.sampled_from("XYH"))
def test_pairing_sl2_equivariant(case, gen):
    u, v, p = case
    lhs = sl2_act(gen, pair(u, v, p))
    rhs = pair(sl2_act(gen, u), v, p) + pair(u, sl2_act(gen, v), p)
    assert lhs == rhs


@given(pair_case(), st.tuples(small_q, small_q, small_q, small_q))
def test_pairing_gl2_equivariant(case, entries):
    u, v, p = case
    a, b, c, d = entries
    if a * d - b * c == 0:
        return
    g = GL2Element.of(a, b, c, d)
    assert pair(gl2_act(g, u), gl2_act(g, v), p) == gl2_act(g, pair(u, v, p)) * g.det ** p


@pytest.mark.parametrize("n", range(11))
def test_top_pairing_nondegenerate(n):
    table = pairing_table(n, n, n)
    gram = [[table.get((i, j), 0) for j in range(n + 1)] for i in range(n + 1)]
    assert linalg.rank(gram) == n + 1
    # antidiagonal: <e_i, e_{n-i}>_n only
    assert all(i + j == n for i, j in table)


def test_sl2_relations():
    v = BinaryForm(6, tuple(range(1, 8)))
    X = lambda w: sl2_act("X", w)
    Y = lambda w: sl2_act("Y", w)
    H = lambda w: sl2_act("H", w)
    # X = y d/dx moves weight from x to y, so it lowers the H-eigenvalue
    assert H(X(v)) - X(H(v)) == X(v) * -2
    assert H(Y(v)) - Y(H(v)) == Y(v) * 2
    assert X(Y(v)) - Y(X(v)) == H(v)


@given(st.tuples(*[small_q] * 4), st.tuples(*[small_q] * 4), forms(5))
def test_gl2_action_is_homomorphism(e1, e2, v):
    if e1[0] * e1[3] == e1[1] * e1[2] or e2[0] * e2[3] == e2[1] * e2[2]:
        return
    g, h = GL2Element.of(*e1), GL2Element.of(*e2)
    assert gl2_act(g @ h, v) == gl2_act(g, gl2_act(h, v))


def test_gl2_convention():
    g = GL2Element.of(2, 3, 5, 7)
    x = BinaryForm.monomial(1, 0)
    y = BinaryForm.monomial(0, 1)
    assert to_monomial(gl2_act(g, x)) == [2, 5]
    assert to_monomial(gl2_act(g, y)) == [3, 7]
    with pytest.raises(ValueError):
        GL2Element.of(1, 2, 2, 4)


def test_discriminant_against_sympy():
    # Res(dv/dx, dv/dy) = 8^6 * disc(v(x, 1)) for octics
    x = sp.symbols("x")
    for v in random_distinct_octics(8, seed=11):
        if v[-8] == 0:
            continue  # degree drop in the dehomogenized polynomial
        p = sum(sp.Rational(c.numerator, c.denominator) * x ** (8 - k) for k, c in enumerate(to_monomial(v)))
        ref = sp.discriminant(sp.Poly(p, x))
        assert discriminant(v) == Fraction(int(sp.numer(ref)), int(sp.denom(ref))) * 8 ** 6


def test_discriminant_vanishes_on_repeated_roots():
    v = BinaryForm.from_linear_factors([(1, 1, 2), (1, -2, 1), (3, 1, 5)])
    assert discriminant(v) == 0
    assert discriminant(BinaryForm.monomial(7, 1)) == 0
    with pytest.raises(ValueError):
        discriminant(BinaryForm.zero(6))


def test_json_round_trip():
    v = BinaryForm(8, tuple(Fraction(k, 3) for k in range(9)))
    assert form_from_json(form_to_json(v)) == v
    w = form_from_json({"degree": 2, "basis": "monomial", "coeffs": [1, 2, 1]})
    assert w.coeffs == (1, 1, 1)
    with pytest.raises(ValueError):
        form_from_json({"degree": 3, "coeffs": [1, 2, 1]})
    assert comb(8, 4) * v[0] == to_monomial(v)[4]
