"""Binary forms V_n with exact rational coefficients.

A form of degree n is stored in the binomial-scaled basis

    v(x, y) = sum_k v_{2k-n} * C(n, k) * x^(n-k) * y^k,

so the coefficient tuple is ordered (v_{-n}, v_{-n+2}, ..., v_n).  For V_4
this reads v_{-4} x^4 + 4 v_{-2} x^3 y + 6 v_0 x^2 y^2 + 4 v_2 x y^3 + v_4 y^4.

Group convention: ``gl2_act(g, v)(x, y) = v((x, y) @ g)``, i.e. x -> g11 x + g21 y
and y -> g12 x + g22 y.  With this choice ``gl2_act(g @ h) = gl2_act(g) o gl2_act(h)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .linalg import det
from .polyring import as_fraction

__all__ = [
    "BinaryForm",
    "GL2Element",
    "pair",
    "pairing_table",
    "sl2_act",
    "gl2_act",
    "to_monomial",
    "from_monomial",
    "discriminant",
    "sylvester_matrix",
    "form_to_json",
    "form_from_json",
]


@dataclass(frozen=True)
class BinaryForm:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        coeffs = tuple(as_fraction(c) for c in self.coeffs)
        if len(coeffs) != self.degree + 1:
            raise ValueError(f"V_{self.degree} needs {self.degree + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (0,) * (degree + 1))

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1) -> "BinaryForm":
        """The form coeff * x^a * y^b."""
        mono = [0] * (a + b + 1)
        mono[b] = coeff
        return from_monomial(mono)

    @classmethod
    def from_linear_factors(cls, factors: Iterable[tuple], scale=1) -> "BinaryForm":
        """Product of (g x + h y)^m over ``(g, h, m)`` triples."""
        out = cls((0), (scale,))
        for g, h, m in factors:
            lin = from_monomial([g, h])
            for _ in range(m):
                out = out * lin
        return out

    # -- accessors ------------------------------------------------------
    def __getitem__(self, weight: int) -> Fraction:
        """Coefficient by weight, e.g. ``v[-8]`` is v_{-8}."""
        k, r = divmod(weight + self.degree, 2)
        if r or not 0 <= k <= self.degree:
            raise KeyError(weight)
        return self.coeffs[k]

    @property
    def weights(self) -> range:
        return range(-self.degree, self.degree + 1, 2)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- vector space / algebra -----------------------------------------
    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if other.degree != self.degree:
            raise ValueError("adding forms of different degree")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "BinaryForm":
        if isinstance(other, BinaryForm):
            a, b = to_monomial(self), to_monomial(other)
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if ca:
                    for j, cb in enumerate(b):
                        out[i + j] += ca * cb
            return from_monomial(out)
        c = as_fraction(other)
        return BinaryForm(self.degree, tuple(c * x for x in self.coeffs))

    __rmul__ = __mul__

    def __call__(self, x, y):
        return sum(c * x ** (self.degree - k) * y ** k for k, c in enumerate(to_monomial(self)))

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(to_monomial(self)):
            if not c:
                continue
            a, b = self.degree - k, k
            mono = "*".join(p for p in (_power("x", a), _power("y", b)) if p)
            cs = str(c) if c.denominator == 1 else f"({c})"
            if not mono:
                terms.append(cs)
            else:
                terms.append(mono if c == 1 else "-" + mono if c == -1 else f"{cs}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _power(name: str, k: int) -> str:
    return "" if k == 0 else name if k == 1 else f"{name}^{k}"


# ---------------------------------------------------------------------------
# basis conversion


def to_monomial(u: BinaryForm) -> list[Fraction]:
    """Monomial coefficients: entry k multiplies x^(n-k) y^k."""
    n = u.degree
    return [c * comb(n, k) for k, c in enumerate(u.coeffs)]


def from_monomial(mono: Sequence) -> BinaryForm:
    mono = [as_fraction(c) for c in mono]
    if not mono:
        raise ValueError("empty coefficient list")
    n = len(mono) - 1
    return BinaryForm(n, tuple(c / comb(n, k) for k, c in enumerate(mono)))


# ---------------------------------------------------------------------------
# Clebsch-Gordan pairings


def _falling(a: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= a - i
    return out


@lru_cache(maxsize=None)
def pairing_table(m: int, n: int, p: int) -> dict[tuple[int, int], Fraction]:
    """Structure constants of <., .>_p : V_m x V_n -> V_{m+n-2p}.

    The pairing of basis vectors e_i (of V_m) and f_j (of V_n) is a single
    multiple c_ij of the basis vector with index i + j - p.
    """
    if not 0 <= p <= min(m, n):
        raise ValueError(f"pairing order p={p} out of range for V_{m} x V_{n}")
    big = m + n - 2 * p
    table = {}
    for i in range(m + 1):
        for j in range(n + 1):
            kk = i + j - p
            if not 0 <= kk <= big:
                continue
            total = 0
            for k in range(p + 1):
                # d^p/dx^(p-k) dy^k of x^(m-i) y^i, times d^p/dx^k dy^(p-k) of x^(n-j) y^j
                du = _falling(m - i, p - k) * _falling(i, k)
                dv = _falling(n - j, k) * _falling(j, p - k)
                if du and dv:
                    total += (-1) ** k * comb(p, k) * du * dv
            if total:
                c = Fraction(total * comb(m, i) * comb(n, j), factorial(p) * comb(big, kk))
                table[(i, j)] = c
    return table


def pair(u: BinaryForm, v: BinaryForm, p: int) -> BinaryForm:
    """<u, v>_p in the binomial-scaled basis."""
    table = pairing_table(u.degree, v.degree, p)
    out = [Fraction(0)] * (u.degree + v.degree - 2 * p + 1)
    for (i, j), c in table.items():
        a, b = u.coeffs[i], v.coeffs[j]
        if a and b:
            out[i + j - p] += c * a * b
    return BinaryForm(u.degree + v.degree - 2 * p, tuple(out))


# ---------------------------------------------------------------------------
# group actions


def sl2_act(gen: str, u: BinaryForm) -> BinaryForm:
    """Apply X = y d/dx, Y = -x d/dy or H = x d/dx - y d/dy."""
    n = u.degree
    mono = to_monomial(u)
    out = [Fraction(0)] * (n + 1)
    for k, c in enumerate(mono):
        if not c:
            continue
        a, b = n - k, k
        if gen == "X":
            if a:
                out[k + 1] += a * c
        elif gen == "Y":
            if b:
                out[k - 1] -= b * c
        elif gen == "H":
            out[k] += (a - b) * c
        else:
            raise ValueError(f"unknown sl(2) generator {gen!r}")
    return from_monomial(out)


@dataclass(frozen=True)
class GL2Element:
    matrix: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        m = ((as_fraction(a), as_fraction(b)), (as_fraction(c), as_fraction(d)))
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0:
            raise ValueError("singular matrix is not in GL(2)")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def of(cls, a, b, c, d) -> "GL2Element":
        return cls(((a, b), (c, d)))

    def __matmul__(self, other: "GL2Element") -> "GL2Element":
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        return GL2Element(((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)))

    @property
    def det(self) -> Fraction:
        (a, b), (c, d) = self.matrix
        return a * d - b * c


def gl2_act(g: GL2Element | Sequence[Sequence], u: BinaryForm) -> BinaryForm:
    if not isinstance(g, GL2Element):
        g = GL2Element(tuple(tuple(r) for r in g))
    (g11, g12), (g21, g22) = g.matrix
    xs = from_monomial([g11, g21])  # image of x
    ys = from_monomial([g12, g22])  # image of y
    n = u.degree
    out = BinaryForm.zero(n)
    mono = to_monomial(u)
    xp = [BinaryForm(0, (1,))]
    yp = [BinaryForm(0, (1,))]
    for _ in range(n):
        xp.append(xp[-1] * xs)
        yp.append(yp[-1] * ys)
    for k, c in enumerate(mono):
        if c:
            out = out + (xp[n - k] * yp[k]) * c
    return out


# ---------------------------------------------------------------------------
# discriminant


def sylvester_matrix(f: Sequence[Fraction], g: Sequence[Fraction]) -> list[list[Fraction]]:
    """Sylvester matrix of two binary forms given by monomial coefficients."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(f) + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(g) + [Fraction(0)] * (size - n - 1 - i))
    return rows


def partials(v: BinaryForm) -> tuple[list[Fraction], list[Fraction]]:
    """Monomial coefficients of dv/dx and dv/dy."""
    n = v.degree
    mono = to_monomial(v)
    dx = [(n - k) * c for k, c in enumerate(mono[:-1])]
    dy = [k * c for k, c in enumerate(mono) if k]
    return dx, dy


def discriminant(v: BinaryForm) -> Fraction:
    """Resultant of dv/dx and dv/dy (14 x 14 Sylvester determinant for octics)."""
    if v.degree != 8:
        raise ValueError("discriminant is defined here for octics")
    dx, dy = partials(v)
    return det(sylvester_matrix(dx, dy))


# ---------------------------------------------------------------------------
# JSON


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def form_to_json(v: BinaryForm) -> dict:
    return {"degree": v.degree, "basis": "binomial", "coeffs": [_frac_str(c) for c in v.coeffs]}


def form_from_json(data: dict | str) -> BinaryForm:
    if isinstance(data, str):
        data = json.loads(data)
    basis = data.get("basis", "binomial")
    coeffs = [Fraction(c) if isinstance(c, (str, int)) else Fraction(c).limit_denominator() for c in data["coeffs"]]
    if basis == "binomial":
        form = BinaryForm(int(data["degree"]), tuple(coeffs))
    elif basis == "monomial":
        form = from_monomial(coeffs)
    else:
        raise ValueError(f"unknown basis {basis!r}")
    if form.degree != int(data["degree"]):
        raise ValueError("degree does not match coefficient count")
    return form
