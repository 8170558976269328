"""Structure equations of 2,3-integrable GL(2)-structures of degree 4.

Coframe order is (w-4, w-2, w0, w2, w4, lam, phi-2, phi0, phi2); the
torsion T in V_8 has coordinates T-8, ..., T8.  The equations are

    d omega = -<phi, omega>_1 - <lam, omega>_0 + <T, <omega, omega>_1>_5
    d lam   = 0
    d phi   = -1/2 <phi, phi>_1 - 2080 <<T,T>_8, <omega,omega>_3>_0
              + 64 <<T,T>_6, <omega,omega>_3>_2 - 88/7 <<T,T>_6, <omega,omega>_1>_4
              + 24/7 <<T,T>_4, <omega,omega>_1>_6
    d T     = J(T) (omega, lam, phi)

with J(T) assembled from the column listings below.  The listed omega
columns have the common factor 9216 taken out; it is put back here.  With
the pairing normalization of :mod:`gl2struct.binform` this is the only
scale for which d^2 = 0 (see ``tests/test_structeq.py``).
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .binform import BinaryForm, pair, pairing_table
from .exteriorsym import Coframe, Form, Rules, VForm, d, pair_forms
from .polyring import Poly, PolyRing

__all__ = [
    "T_NAMES",
    "COFRAME_NAMES",
    "T_RING",
    "COFRAME",
    "OMEGA_SCALE",
    "symbolic_J",
    "jmatrix",
    "structure_rules",
    "verify_closure",
    "ClosureReport",
    "mutate_J",
    "mutation_sweep",
    "parse_entry",
    "first_structure_torsion",
    "connection_matrix",
    "absorption_constants",
    "FullTorsion",
    "bisecant_obstruction",
    "CurvatureComponents",
    "curvature_components",
]

WEIGHTS8 = tuple(range(-8, 9, 2))
T_NAMES = tuple(f"T{w}" for w in WEIGHTS8)
COFRAME_NAMES = ("w-4", "w-2", "w0", "w2", "w4", "lam", "phi-2", "phi0", "phi2")
T_RING = PolyRing(T_NAMES)
COFRAME = Coframe(COFRAME_NAMES, T_RING)
OMEGA_SCALE = Fraction(9216)  # J_omega = OMEGA_SCALE * listing

# Listing of J(T), column by column, omega columns without their common factor.
_OMEGA_COLUMNS = {
    "w-4": r"""
        280T_{-8}T_{4}-280T_{-6}T_{2}
        -245T_{-4}T_{2}+70T_{-8}T_{6}+175T_{-6}T_{4}
        70T_{-4}T_{4}-210T_{-2}T_{2}+130T_{-6}T_{6}+10T_{-8}T_{8}
        -175T_{0}T_{2}-35T_{-2}T_{4}+35T_{-6}T_{8}+175T_{-4}T_{6}
        84T_{-4}T_{8}+196T_{-2}T_{6}-140T_{2}^2-140T_{0}T_{4}
        -350T_{2}T_{4}+175T_{0}T_{6}+175T_{-2}T_{8}
        350T_{0}T_{8}-350T_{4}^2
        700T_{2}T_{8}-700T_{6}T_{4}
        -1400T_{6}^2+1400T_{8}T_{4}
    """,
    "w-2": r"""
        -1400T_{-8}T_{2}+1400T_{-6}T_{0}
        -385T_{-8}T_{4}-840T_{-6}T_{2}+1225T_{-4}T_{0}
        -280T_{-4}T_{2}+1050T_{-2}T_{0}-70T_{-8}T_{6}-700T_{-6}T_{4}
        -910T_{-4}T_{4}+280T_{-2}T_{2}+875T_{0}^2-240T_{-6}T_{6}-5T_{-8}T_{8}
        1540T_{0}T_{2}-952T_{-2}T_{4}-28T_{-6}T_{8}-560T_{-4}T_{6}
        -105T_{-4}T_{8}-1120T_{-2}T_{6}+1400T_{2}^2-175T_{0}T_{4}
        2100T_{2}T_{4}-1750T_{0}T_{6}-350T_{-2}T_{8}
        2450T_{4}^2-1050T_{0}T_{8}-1400T_{2}T_{6}
        -2800T_{2}T_{8}+2800T_{6}T_{4}
    """,
    "w0": r"""
        -2800T_{-6}T_{-2}+2800T_{-8}T_{0}
        -2450T_{-4}T_{-2}+875T_{-8}T_{2}+1575T_{-6}T_{0}
        210T_{-8}T_{4}-2100T_{-2}^2+1540T_{-6}T_{2}+350T_{-4}T_{0}
        1890T_{-4}T_{2}-2625T_{-2}T_{0}+35T_{-8}T_{6}+700T_{-6}T_{4}
        1568T_{-4}T_{4}+336T_{-2}T_{2}-2100T_{0}^2+192T_{-6}T_{6}+4T_{-8}T_{8}
        -2625T_{0}T_{2}+1890T_{-2}T_{4}+35T_{-6}T_{8}+700T_{-4}T_{6}
        210T_{-4}T_{8}+1540T_{-2}T_{6}-2100T_{2}^2+350T_{0}T_{4}
        -2450T_{2}T_{4}+1575T_{0}T_{6}+875T_{-2}T_{8}
        2800T_{0}T_{8}-2800T_{2}T_{6}
    """,
    "w2": r"""
        2800T_{-4}T_{-6}-2800T_{-2}T_{-8}
        -1400T_{-6}T_{-2}-1050T_{-8}T_{0}+2450T_{-4}^2
        2100T_{-4}T_{-2}-350T_{-8}T_{2}-1750T_{-6}T_{0}
        -105T_{-8}T_{4}+1400T_{-2}^2-1120T_{-6}T_{2}-175T_{-4}T_{0}
        -952T_{-4}T_{2}+1540T_{-2}T_{0}-28T_{-8}T_{6}-560T_{-6}T_{4}
        -910T_{-4}T_{4}+280T_{-2}T_{2}+875T_{0}^2-240T_{-6}T_{6}-5T_{-8}T_{8}
        1050T_{0}T_{2}-280T_{-2}T_{4}-70T_{-6}T_{8}-700T_{-4}T_{6}
        1225T_{0}T_{4}-385T_{-4}T_{8}-840T_{-2}T_{6}
        1400T_{0}T_{6}-1400T_{-2}T_{8}
    """,
    "w4": r"""
        1400T_{-4}T_{-8}-1400T_{-6}^2
        -700T_{-4}T_{-6}+700T_{-2}T_{-8}
        -350T_{-4}^2+350T_{-8}T_{0}
        -350T_{-4}T_{-2}+175T_{-8}T_{2}+175T_{-6}T_{0}
        84T_{-8}T_{4}-140T_{-2}^2+196T_{-6}T_{2}-140T_{-4}T_{0}
        -35T_{-4}T_{2}-175T_{-2}T_{0}+35T_{-8}T_{6}+175T_{-6}T_{4}
        70T_{-4}T_{4}-210T_{-2}T_{2}+130T_{-6}T_{6}+10T_{-8}T_{8}
        70T_{-6}T_{8}-245T_{-2}T_{4}+175T_{-4}T_{6}
        -280T_{-2}T_{6}+280T_{-4}T_{8}
    """,
}

_LINEAR_COLUMNS = {
    "lam": "T_{-8} T_{-6} T_{-4} T_{-2} T_{0} T_{2} T_{4} T_{6} T_{8}",
    "phi-2": "-16T_{-6} -14T_{-4} -12T_{-2} -10T_{0} -8T_{2} -6T_{4} -4T_{6} -2T_{8} 0",
    "phi0": "16T_{-8} 12T_{-6} 8T_{-4} 4T_{-2} 0 -4T_{2} -8T_{4} -12T_{6} -16T_{8}",
    "phi2": "0 2T_{-8} 4T_{-6} 6T_{-4} 8T_{-2} 10T_{0} 12T_{2} 14T_{4} 16T_{6}",
}

_TERM = re.compile(r"([+-]?)(\d*)((?:T_\{-?\d+\}(?:\^\d+)?)*)")
_FACTOR = re.compile(r"T_\{(-?\d+)\}(?:\^(\d+))?")


def parse_entry(text: str) -> Poly:
    """Parse one listing entry such as ``-140T_{2}^2-140T_{0}T_{4}``."""
    text = text.replace(" ", "")
    out = T_RING.zero
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {pos}")
        sign, digits, factors = m.groups()
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        exp = [0] * len(T_NAMES)
        for w, k in _FACTOR.findall(factors):
            exp[T_NAMES.index(f"T{int(w)}")] += int(k) if k else 1
        if not factors and not digits:
            raise ValueError(f"empty term in {text!r}")
        out = out + T_RING.monomial(exp, coeff)
        pos = m.end()
    return out


@lru_cache(maxsize=None)
def symbolic_J(omega_scale: Fraction = OMEGA_SCALE) -> tuple[tuple[Poly, ...], ...]:
    """J(T) as a 9x9 tuple of polynomials, rows T-8..T8, columns in coframe order.

    ``omega_scale`` multiplies the listed omega columns; anything other than
    the default is only useful for showing that closure pins it down.
    """
    omega_scale = Fraction(omega_scale)
    columns = []
    for name in COFRAME_NAMES[:5]:
        entries = _OMEGA_COLUMNS[name].split()
        if len(entries) != 9:
            raise AssertionError(f"column {name} has {len(entries)} entries")
        columns.append([parse_entry(e) * omega_scale for e in entries])
    for name in COFRAME_NAMES[5:]:
        entries = _LINEAR_COLUMNS[name].split()
        columns.append([parse_entry(e) if e != "0" else T_RING.zero for e in entries])
    return tuple(tuple(columns[j][i] for j in range(9)) for i in range(9))


def _as_form8(T) -> BinaryForm:
    if isinstance(T, BinaryForm):
        if T.degree != 8:
            raise ValueError("torsion lives in V_8")
        return T
    return BinaryForm(8, tuple(T))


def jmatrix(T, J=None) -> list[list[Fraction]]:
    """Evaluate J at a torsion value (an octic or its nine coordinates)."""
    T = _as_form8(T)
    J = symbolic_J() if J is None else J
    return [[entry.evaluate(T.coeffs) if entry.terms else Fraction(0) for entry in row] for row in J]


# ---------------------------------------------------------------------------
# structure equations


def _torsion_vform() -> VForm:
    return VForm.from_scalars(COFRAME, T_RING.gens())


def _omega() -> VForm:
    return VForm.from_generators(COFRAME, COFRAME_NAMES[:5])


def _phi() -> VForm:
    return VForm.from_generators(COFRAME, COFRAME_NAMES[6:])


def _lam() -> VForm:
    return VForm.from_generators(COFRAME, ["lam"])


@dataclass
class StructureRules(Rules):
    J: tuple = field(default=None)

    @property
    def d_omega(self) -> VForm:
        return VForm([self.generators[i] for i in range(5)], 2)

    @property
    def d_phi(self) -> VForm:
        return VForm([self.generators[i] for i in range(6, 9)], 2)


def torsion_pairings(T: VForm) -> dict[int, VForm]:
    return {p: pair_forms(T, T, p) for p in (4, 6, 8)}


def structure_rules(J=None) -> StructureRules:
    """Build d on the nine generators and the nine torsion coordinates."""
    J = symbolic_J() if J is None else J
    T, om, ph, lam = _torsion_vform(), _omega(), _phi(), _lam()
    ww1 = pair_forms(om, om, 1)
    ww3 = pair_forms(om, om, 3)
    d_omega = -pair_forms(ph, om, 1) - pair_forms(lam, om, 0) + pair_forms(T, ww1, 5)
    tt = torsion_pairings(T)
    d_phi = (
        pair_forms(ph, ph, 1) * Fraction(-1, 2)
        + pair_forms(tt[8], ww3, 0) * -2080
        + pair_forms(tt[6], ww3, 2) * 64
        + pair_forms(tt[6], ww1, 4) * Fraction(-88, 7)
        + pair_forms(tt[4], ww1, 6) * Fraction(24, 7)
    )
    gens = {}
    for i in range(5):
        gens[i] = d_omega.components[i]
    gens[5] = COFRAME.zero()
    for i in range(3):
        gens[6 + i] = d_phi.components[i]
    theta = [COFRAME.gen(i) for i in range(9)]
    dT = {}
    for i in range(9):
        acc = COFRAME.zero()
        for j in range(9):
            if J[i][j].terms:
                acc = acc + theta[j] * J[i][j]
        dT[i] = acc
    return StructureRules(COFRAME, gens, dT, J=J)


@dataclass
class ClosureReport:
    residuals: dict[str, Form]

    @property
    def status(self) -> dict[str, str]:
        return {k: "zero" if v.is_zero() else "nonzero" for k, v in self.residuals.items()}

    @property
    def closed(self) -> bool:
        return all(v.is_zero() for v in self.residuals.values())

    def nonzero(self) -> list[str]:
        return [k for k, v in self.residuals.items() if not v.is_zero()]


def _specialize(form: Form, values: dict[str, object]) -> Form:
    return form.map_coefficients(lambda c: c.subs(values))


def verify_closure(rules: StructureRules | None = None, *, only: Sequence[str] | None = None,
                   stop_on_failure: bool = False, workers: int = 1,
                   torsion_values: dict[str, object] | None = None) -> ClosureReport:
    """d(d(x)) for the nine generators and the nine torsion coordinates.

    ``torsion_values`` specializes the residuals afterwards (e.g. T = 0).
    """
    rules = structure_rules() if rules is None else rules
    jobs = []
    for i, name in enumerate(COFRAME_NAMES):
        jobs.append((f"d({name})", rules.generators[i]))
    for i, name in enumerate(T_NAMES):
        jobs.append((f"d({name})", rules.variables[i]))
    if only is not None:
        jobs = [j for j in jobs if j[0] in only or j[0][2:-1] in only]

    def run(job):
        key, first = job
        res = d(first, rules)
        if torsion_values:
            res = _specialize(res, torsion_values)
        return key, res

    residuals: dict[str, Form] = {}
    if workers > 1 and not stop_on_failure:
        with ThreadPoolExecutor(workers) as pool:
            for key, res in pool.map(run, jobs):
                residuals[key] = res
    else:
        for job in jobs:
            key, res = run(job)
            residuals[key] = res
            if stop_on_failure and not res.is_zero():
                break
    return ClosureReport(residuals)


def mutate_J(i: int, j: int, J=None) -> tuple:
    """J with entry (i, j) negated."""
    J = symbolic_J() if J is None else J
    rows = [list(r) for r in J]
    rows[i][j] = -rows[i][j]
    return tuple(tuple(r) for r in rows)


def mutation_sweep(J=None) -> dict[tuple[int, int], bool]:
    """For every nonzero entry of J, whether negating it breaks closure.

    Negating a zero entry changes nothing, so only nonzero entries are tried.
    """
    J = symbolic_J() if J is None else J
    out = {}
    for i in range(9):
        for j in range(9):
            if J[i][j].terms:
                rep = verify_closure(structure_rules(mutate_J(i, j, J)), stop_on_failure=True)
                out[(i, j)] = not rep.closed
    return out


# ---------------------------------------------------------------------------
# connection matrix


def connection_matrix(phi: Sequence, lam) -> list[list]:
    """5x5 matrix M(phi, lam) with <phi, omega>_1 + <lam, omega>_0 = M omega.

    Entries are whatever ``phi``/``lam`` are (Fractions, Polys, ...).  This
    is 2 phi_-2 X - 2 phi_0 H + 2 phi_2 Y + lam I_5 with X, Y, H acting on
    the coframe side, which puts phi_-2 above the diagonal (X = y d/dx on
    coefficient vectors would put it below).
    """
    table = pairing_table(2, 4, 1)
    zero = lam * 0
    m = [[zero for _ in range(5)] for _ in range(5)]
    for (i, j), c in table.items():
        m[i + j - 1][j] = m[i + j - 1][j] + phi[i] * c
    for k in range(5):
        m[k][k] = m[k][k] + lam
    return m


# ---------------------------------------------------------------------------
# absorption constants of the equivalence method


def absorption_constants() -> dict[str, Fraction]:
    """Solve the skewing identities for a2, b2, a4, b4, a6, b6, c4, d4."""
    ring = PolyRing([f"P{n}_{k}" for n in (2, 4, 6) for k in range(n + 1)] + [f"Q4_{k}" for k in range(5)])
    frame = Coframe(COFRAME_NAMES[:5], ring)
    om = VForm.from_generators(frame, COFRAME_NAMES[:5])
    ww1 = pair_forms(om, om, 1)
    ww3 = pair_forms(om, om, 3)

    def sym(prefix: str, n: int) -> VForm:
        return VForm.from_scalars(frame, [ring.gen(f"{prefix}_{k}") for k in range(n + 1)])

    systems = {
        # P_n enters as <<P_n, omega>_j, omega>_1 = a <P_n, ww3>_{...} + b <P_n, ww1>_{...}
        ("a2", "b2"): (pair_forms(pair_forms(sym("P2", 2), om, 2), om, 1),
                       pair_forms(sym("P2", 2), ww3, 0), pair_forms(sym("P2", 2), ww1, 2)),
        ("a4", "b4"): (pair_forms(pair_forms(sym("P4", 4), om, 3), om, 1),
                       pair_forms(sym("P4", 4), ww3, 1), pair_forms(sym("P4", 4), ww1, 3)),
        ("a6", "b6"): (pair_forms(pair_forms(sym("P6", 6), om, 4), om, 1),
                       pair_forms(sym("P6", 6), ww3, 2), pair_forms(sym("P6", 6), ww1, 4)),
        ("c4", "d4"): (pair_forms(pair_forms(sym("Q4", 4), om, 4), om, 0),
                       pair_forms(sym("Q4", 4), ww3, 1), pair_forms(sym("Q4", 4), ww1, 3)),
    }
    result = {}
    for names, (lhs, first, second) in systems.items():
        rows, rhs = [], []
        for k in range(lhs.n + 1):
            keys = set(lhs.components[k].terms) | set(first.components[k].terms) | set(second.components[k].terms)
            for mask in keys:
                polys = [f.components[k].terms.get(mask, ring.zero) for f in (lhs, first, second)]
                exps = set().union(*(p.terms for p in polys))
                for e in exps:
                    c0, c1, c2 = (p.terms.get(e, Fraction(0)) for p in polys)
                    rows.append([c1, c2])
                    rhs.append(c0)
        sol = linalg.solve(rows, rhs)
        if sol is None:
            raise ArithmeticError(f"inconsistent absorption system for {names}")
        if linalg.rank(rows) != 2:
            raise ArithmeticError(f"absorption constants {names} are not uniquely determined")
        result.update(zip(names, sol))
    return {k: result[k] for k in ("a2", "b2", "a4", "b4", "a6", "b6", "c4", "d4")}


# ---------------------------------------------------------------------------
# bi-secant torsion obstruction


@dataclass(frozen=True)
class FullTorsion:
    T2: BinaryForm
    T6: BinaryForm
    T8: BinaryForm
    T10: BinaryForm

    def __post_init__(self):
        for name, n in (("T2", 2), ("T6", 6), ("T8", 8), ("T10", 10)):
            if getattr(self, name).degree != n:
                raise ValueError(f"{name} must lie in V_{n}")

    @classmethod
    def only(cls, **parts: BinaryForm) -> "FullTorsion":
        base = {f"T{n}": BinaryForm.zero(n) for n in (2, 6, 8, 10)}
        base.update(parts)
        return cls(**base)


def bisecant_obstruction(ft: FullTorsion) -> tuple[Fraction, Fraction, Fraction]:
    """(tau^-2, tau^0, tau^2): the omega^-4 ^ omega^4 torsion of the bi-secant system."""
    t2, t6, t8, t10 = ft.T2, ft.T6, ft.T8, ft.T10
    tau_m2 = 48 * t2[-2] + 8640 * t6[-2] + 322560 * t8[-2] - 4838400 * t10[-2]
    tau_0 = -96 * t2[0] + 23040 * t6[0] - 4838400 * t10[0]
    tau_2 = 48 * t2[2] + 8640 * t6[2] - 322560 * t8[2] - 4838400 * t10[2]
    return tau_m2, tau_0, tau_2


def first_structure_torsion(ft: FullTorsion) -> VForm:
    """<T2,<w,w>_1>_2 + <T6,<w,w>_1>_4 + <T8,<w,w>_1>_5 + <T10,<w,w>_1>_6 with constant T."""
    om = _omega()
    ww1 = pair_forms(om, om, 1)
    out = None
    for form, p in ((ft.T2, 2), (ft.T6, 4), (ft.T8, 5), (ft.T10, 6)):
        piece = pair_forms(VForm.from_scalars(COFRAME, form.coeffs), ww1, p)
        out = piece if out is None else out + piece
    return out


# ---------------------------------------------------------------------------
# curvature


@dataclass(frozen=True)
class CurvatureComponents:
    Q4: BinaryForm
    Q8: BinaryForm
    S4: BinaryForm
    S8: BinaryForm
    R20: Fraction


def curvature_components(T: BinaryForm) -> CurvatureComponents:
    T = _as_form8(T)
    q4 = pair(T, T, 6)
    q8 = pair(T, T, 4)
    return CurvatureComponents(
        Q4=q4,
        Q8=q8,
        S4=q4 * Fraction(8, 21),
        S8=q8 * Fraction(24, 7),
        R20=-2080 * pair(T, T, 8).coeffs[0],
    )
