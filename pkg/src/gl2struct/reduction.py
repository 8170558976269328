"""Symmetry reduction for the torsion value x^8.

On the sub-bundle where T = x^8 the structure equations lose all T
dependence and integrate in closed form.  The coordinates are
xi-4, xi-2, xi0, xi2, xi4 together with a (appearing with negative
powers) and b.  :func:`verify_x8_reduction` differentiates the explicit
coframe and compares with the seven reduced equations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .binform import BinaryForm
from .exteriorsym import Coframe, Form, Rules, d, substitute_generators, wedge
from .polyring import PolyRing
from .roottype import classify_exact

__all__ = [
    "X8_CONSTANT",
    "COORD_RING",
    "COORD_FRAME",
    "COORDS",
    "FORM_NAMES",
    "ReducedCoframe",
    "x8_coframe",
    "x8_reduced_equations",
    "verify_x8_reduction",
    "x8_scale_from_structure_rules",
    "symmetry_count",
]

X8_CONSTANT = 322560
COORDS = ("xi-4", "xi-2", "xi0", "xi2", "xi4", "a", "b")
COORD_RING = PolyRing(COORDS)
COORD_FRAME = Coframe(tuple("d" + c for c in COORDS), COORD_RING)
COORD_RULES = Rules(
    COORD_FRAME,
    {i: COORD_FRAME.zero() for i in range(len(COORDS))},
    {i: COORD_FRAME.gen(i) for i in range(len(COORDS))},
)
FORM_NAMES = ("w-4", "w-2", "w0", "w2", "w4", "phi-2", "phi0")


@dataclass(frozen=True)
class ReducedCoframe:
    forms: dict[str, Form]

    def __getitem__(self, name: str) -> Form:
        return self.forms[name]


def x8_coframe(constant: int = X8_CONSTANT, drop_xi4_term: bool = False) -> ReducedCoframe:
    """The integrated coframe; ``drop_xi4_term`` removes -constant*xi4 dxi2 from w-2."""
    R, F = COORD_RING, COORD_FRAME
    xm4, xm2, x0, x2, x4, a, b = R.gens()
    dxm4, dxm2, dx0, dx2, dx4, da, db = (F.gen(i) for i in range(7))
    k = constant
    w4 = dx4 * a ** 8
    w2 = (dx2 - dx4 * (2 * b)) * a ** 12
    w0 = (dx0 - dx2 * (4 * b) + dx4 * (4 * b ** 2)) * a ** 16
    inner_m2 = dxm2 - dx0 * (6 * b) + dx2 * (12 * b ** 2) - dx4 * (8 * b ** 3)
    if not drop_xi4_term:
        inner_m2 = inner_m2 - dx2 * (k * x4)
    wm2 = inner_m2 * a ** 20
    wm4 = (dxm4 - dxm2 * (8 * b) + dx0 * (24 * b ** 2) - dx2 * (32 * b ** 3) + dx4 * (16 * b ** 4)
           + dx2 * (8 * k * x4 * b) - dx0 * (2 * k * x4)) * a ** 24
    return ReducedCoframe({
        "phi0": da * a ** -1,
        "phi-2": db * a ** 4,
        "w4": w4,
        "w2": w2,
        "w0": w0,
        "w-2": wm2,
        "w-4": wm4,
    })


def x8_reduced_equations(cf: ReducedCoframe, constant: int = X8_CONSTANT) -> dict[str, Form]:
    """Right-hand sides of the seven reduced structure equations."""
    f = cf.forms
    p0, pm2 = f["phi0"], f["phi-2"]
    return {
        "w-4": p0 * f["w-4"] * 24 - pm2 * f["w-2"] * 8 + f["w0"] * f["w4"] * (2 * constant),
        "w-2": p0 * f["w-2"] * 20 - pm2 * f["w0"] * 6 + f["w2"] * f["w4"] * constant,
        "w0": p0 * f["w0"] * 16 - pm2 * f["w2"] * 4,
        "w2": p0 * f["w2"] * 12 - pm2 * f["w4"] * 2,
        "w4": p0 * f["w4"] * 8,
        "phi0": COORD_FRAME.zero(),
        "phi-2": wedge(p0, pm2) * 4,
    }


def verify_x8_reduction(cf: ReducedCoframe | None = None, *, detail: bool = False):
    """Compare d of each coframe element with its reduced structure equation.

    Returns a bool, or with ``detail`` the dict of mismatches (name -> d(form) - rhs).
    """
    cf = x8_coframe() if cf is None else cf
    rhs = x8_reduced_equations(cf)
    diffs = {}
    for name in FORM_NAMES:
        diff = d(cf[name], COORD_RULES) - rhs[name]
        if not diff.is_zero():
            diffs[name] = diff
    return diffs if detail else not diffs


def x8_scale_from_structure_rules() -> dict:
    """Check the reduced equations against the full rules with T = s x^8.

    dT = 0 on the reduced bundle forces lam = -16 phi0 and phi2 = 0.  The
    structure equations are specialized to T = (s, 0, ..., 0) and compared
    with the reduced right-hand sides written in the same coframe; each
    matching coefficient is linear in s.  Returns ``{"scale": s,
    "consistent": bool}`` where ``scale`` is the unique s that matches (or
    None if the system is inconsistent).
    """
    from .structeq import COFRAME, T_NAMES, structure_rules

    rules = structure_rules()
    F = COFRAME
    images = {F.index("lam"): F.gen("phi0") * -16, F.index("phi2"): F.zero()}
    kill = {n: 0 for n in T_NAMES if n != "T-8"}

    def reduce(form: Form) -> Form:
        return substitute_generators(form, images).map_coefficients(lambda c: c.subs(kill))

    g = {n: F.gen(n) for n in ("w-4", "w-2", "w0", "w2", "w4", "phi-2", "phi0")}
    k = X8_CONSTANT
    expected = {
        "w-4": g["phi0"] * g["w-4"] * 24 - g["phi-2"] * g["w-2"] * 8 + g["w0"] * g["w4"] * (2 * k),
        "w-2": g["phi0"] * g["w-2"] * 20 - g["phi-2"] * g["w0"] * 6 + g["w2"] * g["w4"] * k,
        "w0": g["phi0"] * g["w0"] * 16 - g["phi-2"] * g["w2"] * 4,
        "w2": g["phi0"] * g["w2"] * 12 - g["phi-2"] * g["w4"] * 2,
        "w4": g["phi0"] * g["w4"] * 8,
        "phi0": F.zero(),
        "phi-2": g["phi0"] * g["phi-2"] * 4,
    }
    s_index = F.ring.index("T-8")
    scale = None
    consistent = True
    for name, rhs in expected.items():
        diff = reduce(rules.generators[F.index(name)]) - rhs
        for coeff in diff.terms.values():
            # coeff = alpha * s + beta
            alpha = coeff.diff(s_index).constant_term() if coeff.total_degree() <= 1 else None
            beta = coeff.constant_term()
            if alpha is None or (coeff - coeff.ring.gen(s_index) * alpha - beta).terms:
                consistent = False
                continue
            if alpha == 0:
                consistent = False
                continue
            s = -beta / alpha
            if scale is None:
                scale = s
            elif s != scale:
                consistent = False
    # dlam = 0 must reduce to d(-16 phi0) = 0, which is the phi0 equation above
    return {"scale": scale, "consistent": consistent}


def symmetry_count(v: BinaryForm) -> int:
    """9 minus the dimension of the root type of v."""
    return 9 - classify_exact(v).dimension
