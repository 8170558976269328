"""Tangent-space checks behind the root-type classification of torsion leaves.

For an octic v, the columns of J(v) span the tangent space of the leaf
through v.  The tangent space of the root-type stratum [v] is spanned by
moving each distinct factor independently plus rescaling v.  The checks
here compare the two spans exactly and test the determinant law
det J(v) = c * disc(v).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .binform import BinaryForm, discriminant, from_monomial
from .roottype import FactoredOctic, RootType, classify_exact
from .structeq import jmatrix

__all__ = [
    "TangencyReport",
    "tangent_basis",
    "verify_leaf_tangency",
    "verify_rank_law",
    "verify_det_disc_ratio",
    "RatioNotConstant",
    "random_distinct_octics",
    "random_repeated_octics",
]


class RatioNotConstant(AssertionError):
    pass


@dataclass(frozen=True)
class TangencyReport:
    root_type: RootType
    k: int
    rank_J: int
    rank_tangent: int
    rank_joint: int

    @property
    def verdict(self) -> bool:
        return self.rank_J == self.rank_tangent == self.rank_joint == self.k + 1

    def to_json(self) -> dict:
        return {
            "rootType": self.root_type.label,
            "k": self.k,
            "rankJ": self.rank_J,
            "rankTangent": self.rank_tangent,
            "rankJoint": self.rank_joint,
            "verdict": self.verdict,
        }


def _product(forms: Sequence[BinaryForm]) -> BinaryForm:
    out = BinaryForm(0, (1,))
    for f in forms:
        out = out * f
    return out


def tangent_basis(f: FactoredOctic) -> list[BinaryForm]:
    """Spanning set of T_v[v]: per-factor motions plus v itself.

    Multiplicity prefactors are dropped; they do not change the span.
    """
    factors = f.factors()
    x, y = from_monomial([1, 0]), from_monomial([0, 1])
    out = []
    for idx, (fac, m) in enumerate(factors):
        rest = [g for j, (g, k) in enumerate(factors) for _ in range(k - (j == idx))]
        base = _product(rest) * f.scale
        if fac.degree == 1:
            out += [x * base, y * base]
        else:
            out += [x * y * base, y * y * base]
    out.append(f.expand())
    return out


def _columns_to_rows(cols: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    return [list(r) for r in zip(*cols)]


def verify_leaf_tangency(f: FactoredOctic, J=None) -> TangencyReport:
    v = f.expand()
    jm = jmatrix(v, J)
    tangent = [list(t.coeffs) for t in tangent_basis(f)]
    tangent_rows = _columns_to_rows(tangent)
    joint = [row + trow for row, trow in zip(jm, tangent_rows)]
    rt = f.root_type
    return TangencyReport(rt, rt.distinct_roots, linalg.rank(jm), linalg.rank(tangent_rows), linalg.rank(joint))


def verify_rank_law(f: FactoredOctic | BinaryForm, J=None) -> bool:
    v = f.expand() if isinstance(f, FactoredOctic) else f
    rt = classify_exact(v)
    expected = 0 if rt.is_trivial else rt.distinct_roots + 1
    return linalg.rank(jmatrix(v, J)) == expected


def verify_det_disc_ratio(samples: Sequence[BinaryForm], repeated: Sequence[BinaryForm] = (), J=None) -> Fraction:
    """The constant c with det J(v) = c disc(v) over all samples.

    Also checks det J = disc = 0 on the ``repeated`` samples.
    """
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    c = None
    for v in samples:
        disc = discriminant(v)
        if disc == 0:
            raise ValueError(f"sample {v} has a repeated root")
        ratio = linalg.det(jmatrix(v, J)) / disc
        if c is None:
            c = ratio
        elif ratio != c:
            raise RatioNotConstant(f"det J / disc = {ratio} differs from {c}")
    for v in repeated:
        dj, dd = linalg.det(jmatrix(v, J)), discriminant(v)
        if dj != 0 or dd != 0:
            raise RatioNotConstant(f"repeated-root sample {v}: det J = {dj}, disc = {dd}")
    return c


def _rand_q(rng: random.Random, size: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_distinct_octics(n: int, seed: int = 0) -> list[BinaryForm]:
    """Seeded random rational octics with nonzero discriminant."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        v = BinaryForm(8, tuple(_rand_q(rng) for _ in range(9)))
        if discriminant(v) != 0:
            out.append(v)
    return out


def random_repeated_octics(n: int, seed: int = 0) -> list[BinaryForm]:
    """Seeded random octics w^2 * u with w linear or quadratic."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        d = rng.choice((1, 2))
        w = BinaryForm(d, tuple(_rand_q(rng) for _ in range(d + 1)))
        u = BinaryForm(8 - 2 * d, tuple(_rand_q(rng) for _ in range(9 - 2 * d)))
        v = w * w * u
        if not w.is_zero() and not u.is_zero():
            out.append(v)
    return out
