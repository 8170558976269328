"""Conformal-symplectic side: CSp(3) acting on Hessian values.

Elements are 6x6 matrices in the block layout (B C / A D).  They act on
symmetric 3x3 matrices U by U -> (A + D U)(B + C U)^-1, and Pi(g) = g(0)
= A B^-1.  A Hessian hydrodynamic PDE F(U) = 0 is recovered by sampling
Pi(exp(eta(v))) and fitting the polynomial relation among the entries of U.

Matrices are lists of rows.  Entries may be Fractions, or anything with
ring operations (``Poly`` from :mod:`gl2struct.polyring`) where only
products and sums are needed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Sequence

import numpy as np
import sympy as sp

from . import linalg
from .binform import BinaryForm
from .polyring import Poly, PolyRing

__all__ = [
    "NotConformalSymplectic",
    "ChartBreakdown",
    "RelationNotFound",
    "AmbiguousRelation",
    "CSp3Element",
    "check_conformal_symplectic",
    "act_lagrangian",
    "project",
    "exp_nilpotent",
    "eta_flat",
    "eta_dkp",
    "U_NAMES",
    "U_RING",
    "PdeRelation",
    "reconstruct_relation",
    "check_relation",
    "U_of",
    "section_rank",
    "NAMED_PDES",
    "named_pde",
    "on_locus_point",
    "pde_symbol",
    "is_hyperbolic",
    "ConeSection",
    "cone_from_symbol",
    "classify_planar_type",
]


class NotConformalSymplectic(ValueError):
    pass


class ChartBreakdown(ZeroDivisionError):
    pass


class RelationNotFound(LookupError):
    pass


class AmbiguousRelation(LookupError):
    pass


Matrix = list[list]


def _blocks(g: Sequence[Sequence]) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    if len(g) != 6 or any(len(r) != 6 for r in g):
        raise ValueError("expected a 6x6 matrix")
    B = [list(r[:3]) for r in g[:3]]
    C = [list(r[3:]) for r in g[:3]]
    A = [list(r[:3]) for r in g[3:]]
    D = [list(r[3:]) for r in g[3:]]
    return A, B, C, D


def _sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _tmul(a: Matrix, b: Matrix) -> Matrix:
    return linalg.matmul(linalg.transpose(a), b)


def check_conformal_symplectic(g: Sequence[Sequence]) -> Fraction:
    """The multiplier lambda of g, or NotConformalSymplectic.

    The relations are A^t B = B^t A, D^t C = C^t D, D^t B - C^t A = lambda I.
    """
    g = [[Fraction(x) for x in row] for row in g]
    A, B, C, D = _blocks(g)
    if any(_sub(_tmul(A, B), _tmul(B, A))[i][j] for i in range(3) for j in range(3)):
        raise NotConformalSymplectic("A^t B - B^t A is not zero")
    if any(_sub(_tmul(D, C), _tmul(C, D))[i][j] for i in range(3) for j in range(3)):
        raise NotConformalSymplectic("D^t C - C^t D is not zero")
    m = _sub(_tmul(D, B), _tmul(C, A))
    lam = m[0][0]
    if lam == 0 or any(m[i][j] != (lam if i == j else 0) for i in range(3) for j in range(3)):
        raise NotConformalSymplectic("D^t B - C^t A is not a nonzero multiple of the identity")
    return lam


@dataclass(frozen=True)
class CSp3Element:
    matrix: tuple[tuple[Fraction, ...], ...]
    lam: Fraction

    @classmethod
    def from_matrix(cls, g: Sequence[Sequence]) -> "CSp3Element":
        lam = check_conformal_symplectic(g)
        return cls(tuple(tuple(Fraction(x) for x in r) for r in g), lam)

    @classmethod
    def from_blocks(cls, A, B, C, D) -> "CSp3Element":
        top = [list(b) + list(c) for b, c in zip(B, C)]
        bottom = [list(a) + list(d) for a, d in zip(A, D)]
        return cls.from_matrix(top + bottom)

    def __matmul__(self, other: "CSp3Element") -> "CSp3Element":
        return CSp3Element.from_matrix(linalg.matmul(self.matrix, other.matrix))

    @property
    def blocks(self) -> tuple[Matrix, Matrix, Matrix, Matrix]:
        return _blocks(self.matrix)


def _as_matrix(g) -> Matrix:
    return [list(r) for r in (g.matrix if isinstance(g, CSp3Element) else g)]


def _check_symmetric(U: Sequence[Sequence]) -> Matrix:
    U = [[Fraction(x) for x in r] for r in U]
    if len(U) != 3 or any(len(r) != 3 for r in U) or any(U[i][j] != U[j][i] for i in range(3) for j in range(3)):
        raise ValueError("U must be a symmetric 3x3 matrix")
    return U


def act_lagrangian(g, U: Sequence[Sequence]) -> Matrix:
    """g(U) = (A + D U)(B + C U)^-1."""
    A, B, C, D = _blocks([[Fraction(x) for x in r] for r in _as_matrix(g)])
    U = _check_symmetric(U)
    num = _add(A, linalg.matmul(D, U))
    den = _add(B, linalg.matmul(C, U))
    try:
        inv = linalg.inverse(den)
    except ZeroDivisionError:
        raise ChartBreakdown("B + C U is singular") from None
    return linalg.matmul(num, inv)


def project(g) -> Matrix:
    """Pi(g) = A B^-1."""
    A, B, _, _ = _blocks([[Fraction(x) for x in r] for r in _as_matrix(g)])
    try:
        return linalg.matmul(A, linalg.inverse(B))
    except ZeroDivisionError:
        raise ChartBreakdown("B is singular") from None


def exp_nilpotent(M: Sequence[Sequence]) -> Matrix:
    """Terminating exponential series of a nilpotent 6x6 matrix (generic entries)."""
    n = len(M)
    M = [list(r) for r in M]
    one = linalg.identity(n)
    out = [[one[i][j] + M[i][j] for j in range(n)] for i in range(n)]
    power = M
    for k in range(2, n + 1):
        power = linalg.matmul(power, M)
        if not any(x for row in power for x in row):
            return out
        fact = math.factorial(k)
        out = [[out[i][j] + power[i][j] / fact for j in range(n)] for i in range(n)]
    if any(x for row in linalg.matmul(power, M) for x in row):
        raise ValueError("matrix is not nilpotent")
    return out


def _zero(v):
    return v[0] * 0


def eta_flat(v: Sequence) -> Matrix:
    """(0 0 / alpha 0) with alpha the Hankel matrix of (v-4, v-2, v0, v2, v4)."""
    z = _zero(v)
    alpha = [[v[i + j] for j in range(3)] for i in range(3)]
    return [[z] * 6 for _ in range(3)] + [alpha[i] + [z] * 3 for i in range(3)]


def eta_dkp(v: Sequence) -> Matrix:
    """The {8} generator: eta_flat plus the entries -v4 at (3,1) and v4 at (4,6)."""
    m = eta_flat(v)
    m[2][0] = -v[4]
    m[3][5] = v[4]
    return m


# ---------------------------------------------------------------------------
# relation fitting

U_NAMES = ("U11", "U12", "U13", "U22", "U23", "U33")
U_RING = PolyRing(U_NAMES)
_U_INDEX = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (1, 1): 3, (1, 2): 4, (2, 2): 5}
# leading-term order: lowest degree first, then U33 > U23 > U22 > U13 > U12 > U11
_LEAD_ORDER = (5, 4, 3, 2, 1, 0)


def _u_entries(U: Sequence[Sequence]) -> list[Fraction]:
    return [U[i][j] for (i, j) in _U_INDEX]


@dataclass(frozen=True)
class PdeRelation:
    poly: Poly

    def __call__(self, U: Sequence[Sequence]):
        return self.poly.evaluate(_u_entries(U))

    @property
    def degree(self) -> int:
        return self.poly.total_degree()

    def __str__(self) -> str:
        terms = sorted(self.poly.terms.items(), key=lambda t: _term_key(t[0]))
        parts = []
        for e, c in terms:
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(U_NAMES, e) if k)
            mag = abs(c)
            coef = "" if mag == 1 and mono else str(mag)
            body = f"{coef}*{mono}" if coef and mono else coef or mono
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return (text[2:] if text.startswith("+ ") else "-" + text[2:]) + " = 0" if parts else "0 = 0"


def _term_key(e: tuple) -> tuple:
    return (sum(e), tuple(-e[i] for i in _LEAD_ORDER))


def _monomials(degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(6), d):
            e = [0] * 6
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def _sample_params(rng: random.Random) -> list[Fraction]:
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(5)]


def U_of(eta_builder: Callable, v: Sequence[Fraction]) -> Matrix:
    return project(exp_nilpotent(eta_builder(list(v))))


def reconstruct_relation(eta_builder: Callable, sample_count: int | None = None, max_degree: int = 2,
                         seed: int = 0) -> PdeRelation:
    """Lowest-degree polynomial relation among the entries of Pi(exp(eta(v))).

    ``sample_count`` defaults to twice the monomial count at ``max_degree``.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    total = len(_monomials(max_degree))
    n = max(sample_count or 0, 2 * total)
    rng = random.Random(seed)
    points = [_u_entries(U_of(eta_builder, _sample_params(rng))) for _ in range(n)]
    for degree in range(max_degree + 1):
        monos = _monomials(degree)
        rows = [[_mono_value(p, e) for e in monos] for p in points]
        kernel = linalg.nullspace(rows, len(monos))
        if not kernel:
            continue
        if len(kernel) > 1:
            raise AmbiguousRelation(f"{len(kernel)} independent relations of degree {degree}")
        vec = kernel[0]
        poly = U_RING.from_dict({e: c for e, c in zip(monos, vec) if c})
        lead = min(poly.terms, key=_term_key)
        return PdeRelation(poly / poly.terms[lead])
    raise RelationNotFound(f"no relation of degree <= {max_degree}")


def _mono_value(point: Sequence[Fraction], e: tuple) -> Fraction:
    out = Fraction(1)
    for x, k in zip(point, e):
        if k:
            out *= x ** k
    return out


def check_relation(relation: PdeRelation, eta_builder: Callable, count: int = 1000, seed: int = 1) -> int:
    """Number of fresh sample points where the relation fails (0 means exact vanishing)."""
    rng = random.Random(seed)
    failures = 0
    for _ in range(count):
        if relation(U_of(eta_builder, _sample_params(rng))) != 0:
            failures += 1
    return failures


# ---------------------------------------------------------------------------
# named PDEs and their symbols

_u = sp.symbols("u11 u12 u13 u22 u23 u33")
u11, u12, u13, u22, u23, u33 = _u

NAMED_PDES: dict[str, tuple[str, sp.Expr]] = {
    # name: (root type, F with F = 0 the PDE)
    "wave": ("{0}", u22 - u13),
    "dkp1": ("{8}", u22 - u13 + sp.Rational(1, 2) * u33 ** 2),
    "71": ("{7,1}", u22 - (u13 - sp.Rational(1, 48) * u33 + sp.Rational(1, 2) * u33 * u23)),
    "62": ("{6,2}", u22 - (u13 + 7 * u23 / (5 * u33 - 14))),
    "611": ("{6,1,1}", u22 - (
        u13
        + 7 * u23 * (u23 - u33) / (5 * u33 - 14)
        + 49 * (-u33 ** 2 + 14 * u33 - 28) / (12 * (5 * u33 - 14))
        - sp.Rational(49, 6) * (-(5 * u33 - 14) / 14) ** sp.Rational(2, 5)
    )),
    "laplace": ("", u11 + u22 + u33),
}


def named_pde(name: str) -> sp.Expr:
    try:
        return NAMED_PDES[name][1]
    except KeyError:
        raise KeyError(f"unknown PDE {name!r}; known: {', '.join(NAMED_PDES)}") from None


def on_locus_point(name: str, rng: random.Random) -> Matrix:
    """A rational U on the PDE locus, solving for U22 (u33 kept below the pole at 14/5)."""
    F = named_pde(name)
    vals = {s: Fraction(rng.randint(-20, 20), rng.randint(1, 8)) for s in (u11, u12, u13, u23)}
    vals[u33] = Fraction(rng.randint(-16, 10), 8)  # at most 5/4 < 14/5
    sub = {s: sp.Rational(v.numerator, v.denominator) for s, v in vals.items()}
    sol = sp.solve(sp.Eq(F.subs(sub), 0), u22)
    if len(sol) != 1:
        raise ValueError(f"cannot solve {name} for u22")
    val = sol[0]
    vals[u22] = val
    return [[vals[u11], vals[u12], vals[u13]], [vals[u12], val, vals[u23]], [vals[u13], vals[u23], vals[u33]]]


def _to_exact(x: sp.Expr):
    x = sp.nsimplify(x) if isinstance(x, sp.Float) else x
    if isinstance(x, sp.Rational):
        return Fraction(int(x.p), int(x.q))
    return float(sp.N(x, 30))


def pde_symbol(F, U: Sequence[Sequence]) -> Matrix:
    """(a_ij) with a_ii = dF/dU_ii and a_ij = 1/2 dF/dU_ij (i != j), evaluated at U.

    ``F`` is a sympy expression in u11..u33, a :class:`PdeRelation`, or a
    registered name.  Entries are Fractions when exact, floats otherwise.
    """
    if isinstance(F, str):
        F = named_pde(F)
    if isinstance(F, PdeRelation):
        F = sp.Add(*[sp.Rational(c.numerator, c.denominator) * sp.Mul(*[s ** k for s, k in zip(_u, e)])
                     for e, c in F.poly.terms.items()])
    sub = {}
    for (i, j), k in _U_INDEX.items():
        x = U[i][j]
        sub[_u[k]] = sp.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else sp.sympify(x)
    A = [[None] * 3 for _ in range(3)]
    for (i, j), k in _U_INDEX.items():
        dF = sp.diff(F, _u[k]).subs(sub)
        if dF.has(sp.zoo, sp.nan, sp.oo):
            raise ZeroDivisionError(f"F is singular at U (d/d{_u[k]})")
        entry = _to_exact(sp.simplify(dF) if i == j else sp.simplify(dF / 2))
        A[i][j] = A[j][i] = entry
    return A


def _inertia_exact(A: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a rational symmetric matrix."""
    a = [[Fraction(x) for x in r] for r in A]
    # characteristic polynomial t^3 - c2 t^2 + c1 t - c0 of a real symmetric matrix is
    # real-rooted, so Descartes' rule counts the roots exactly
    c2 = a[0][0] + a[1][1] + a[2][2]
    c1 = (a[0][0] * a[1][1] - a[0][1] ** 2) + (a[0][0] * a[2][2] - a[0][2] ** 2) + (a[1][1] * a[2][2] - a[1][2] ** 2)
    c0 = linalg.det(a)
    coeffs = [Fraction(1), -c2, c1, -c0]
    zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zero += 1
    pos = _descartes(coeffs)
    neg = _descartes([c * (-1) ** (len(coeffs) - 1 - k) for k, c in enumerate(coeffs)])
    return pos, neg, zero


def _descartes(coeffs: Sequence[Fraction]) -> int:
    signs = [1 if c > 0 else -1 for c in coeffs if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def is_hyperbolic(A: Sequence[Sequence], tol: float = 1e-9) -> bool:
    """Nonsingular with split signature (2,1) or (1,2).

    Exact for rational entries; float entries use eigenvalues with relative
    tolerance ``tol``.
    """
    if all(isinstance(x, (int, Fraction)) for r in A for x in r):
        pos, neg, zero = _inertia_exact([list(r) for r in A])
    else:
        m = np.array([[float(x) for x in r] for r in A])
        if not np.allclose(m, m.T, atol=tol * max(1.0, np.abs(m).max())):
            return False
        ev = np.linalg.eigvalsh(m)
        scale = max(1.0, np.abs(ev).max())
        pos = int(np.sum(ev > tol * scale))
        neg = int(np.sum(ev < -tol * scale))
        zero = 3 - pos - neg
    return zero == 0 and {pos, neg} == {1, 2}


# ---------------------------------------------------------------------------
# hyperbolic sections of the Veronese cone


@dataclass(frozen=True)
class ConeSection:
    """q(s, t) = (q1, q2, q3), each a quadratic form in (s, t).

    ``q`` holds monomial coefficients (s^2, s t, t^2) per component, as
    Fractions on the exact path and floats otherwise.
    """

    q: tuple[tuple, tuple, tuple]
    exact: bool

    def quartics(self) -> list[list]:
        """Monomial coefficients (s^4 .. t^4) of the six entries of q q^t, upper triangle row-wise."""
        out = []
        for i in range(3):
            for j in range(i, 3):
                a, b = self.q[i], self.q[j]
                c = [0] * 5
                for k in range(3):
                    for m in range(3):
                        c[k + m] = c[k + m] + a[k] * b[m]
                out.append(c)
        return out

    def residual(self, A: Sequence[Sequence]) -> list:
        """Monomial coefficients of tr(A q q^t) = q^t A q."""
        quart = self.quartics()
        idx = [(i, j) for i in range(3) for j in range(i, 3)]
        out = [0] * 5
        for (i, j), c in zip(idx, quart):
            w = A[i][j] if i == j else 2 * A[i][j]
            out = [o + w * x for o, x in zip(out, c)]
        return out

    def to_json(self) -> dict:
        fmt = (lambda c: f"{c.numerator}/{c.denominator}") if self.exact else float
        return {"basis": ["s^2", "s*t", "t^2"], "q": [[fmt(c) for c in comp] for comp in self.q], "exact": self.exact}


def _isotropic(A: Matrix, height: int = 4) -> list[Fraction] | None:
    cands = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    rng = range(-height, height + 1)
    cands += sorted(([a, b, c] for a in rng for b in rng for c in rng if (a, b, c) != (0, 0, 0)),
                    key=lambda z: (max(map(abs, z)), sum(map(abs, z))))
    for z in cands:
        if sum(A[i][j] * z[i] * z[j] for i in range(3) for j in range(3)) == 0:
            return [Fraction(x) for x in z]
    return None


def cone_from_symbol(A: Sequence[Sequence]) -> ConeSection:
    """Rational parametrization of the conic q^t A q = 0 (A hyperbolic).

    Exact path: with a rational isotropic z0 and w = s e_j + t e_k,
    q = Q(w) z0 - 2 B(z0, w) w.  Otherwise a float congruence
    diagonalization A = P^t D P, D = diag(1, 1, -1) up to sign, gives
    q = P^-1 (s^2 - t^2, 2 s t, s^2 + t^2).
    """
    if not is_hyperbolic(A):
        raise ValueError("symbol is not hyperbolic")
    exact = all(isinstance(x, (int, Fraction)) for r in A for x in r)
    if exact:
        A = [[Fraction(x) for x in r] for r in A]
        z0 = _isotropic(A)
        if z0 is not None:
            i0 = next(i for i in range(3) if z0[i])
            j, k = [m for m in range(3) if m != i0]
            # w = s e_j + t e_k; Q(w) = A_jj s^2 + 2 A_jk s t + A_kk t^2; B(z0, w) = (A z0)_j s + (A z0)_k t
            Az = [sum(A[r][c] * z0[c] for c in range(3)) for r in range(3)]
            Qw = (A[j][j], 2 * A[j][k], A[k][k])
            q = []
            for r in range(3):
                comp = [Qw[m] * z0[r] for m in range(3)]
                if r == j:
                    comp[0] -= 2 * Az[j]
                    comp[1] -= 2 * Az[k]
                if r == k:
                    comp[1] -= 2 * Az[j]
                    comp[2] -= 2 * Az[k]
                q.append(tuple(comp))
            return ConeSection(tuple(q), True)
    m = np.array([[float(x) for x in r] for r in A])
    ev, vec = np.linalg.eigh(m)
    # put the lone-sign eigenvalue last
    signs = np.sign(ev)
    lone = int(np.argmin(signs)) if np.sum(signs > 0) == 2 else int(np.argmax(signs))
    order = [i for i in range(3) if i != lone] + [lone]
    ev, vec = ev[order], vec[:, order]
    P = np.diag(np.sqrt(np.abs(ev))) @ vec.T
    Pinv = np.linalg.inv(P)
    base = np.array([[1.0, 0.0, -1.0], [0.0, 2.0, 0.0], [1.0, 0.0, 1.0]])  # rows: s^2-t^2, 2st, s^2+t^2
    q = Pinv @ base
    return ConeSection(tuple(tuple(float(x) for x in row) for row in q), False)


def section_rank(cs: ConeSection) -> int:
    quart = cs.quartics()
    if cs.exact:
        return linalg.rank(quart)
    return int(np.linalg.matrix_rank(np.array(quart, dtype=float), tol=1e-9))


# ---------------------------------------------------------------------------
# planar type


def classify_planar_type(v: BinaryForm) -> str:
    """Monge-Ampere, Goursat or generic, by whether v_-8 and v_8 vanish."""
    if v.degree != 8:
        raise ValueError("planar type is defined for octics")
    zeros = (v[-8] == 0) + (v[8] == 0)
    return ("Generic", "Goursat", "MongeAmpere")[zeros]
