"""Root types of real binary octics.

A nonzero real octic factors over C into linear forms; the root type records
the multiplicities, marking complex-conjugate pairs.  Labels follow the
brace notation, e.g. ``{4,[2,2]}`` for x^4 (x^2 + y^2)^2; ``{0}`` is the
zero form.

Two classifiers are provided.  :func:`classify_exact` works over Q with a
square-free decomposition and Sturm counts.  :func:`classify_numeric` works
on floats, clustering numerically computed roots.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import networkx as nx
import numpy as np

from .binform import BinaryForm, from_monomial, to_monomial
from .polyring import as_fraction

__all__ = [
    "RootType",
    "FactoredOctic",
    "IndeterminateClassification",
    "classify_exact",
    "classify_numeric",
    "enumerate_types",
    "dimension",
    "degeneration_poset",
    "degeneration_graph",
    "open_types",
    "poset_to_dot",
    "sample_representative",
    "degeneration_path",
    "witness_edge",
]


class IndeterminateClassification(ValueError):
    """Numeric root clustering is too close to the tolerance to call."""


# ---------------------------------------------------------------------------
# RootType


@dataclass(frozen=True, order=True)
class RootType:
    real: tuple[int, ...] = ()
    complex_pairs: tuple[int, ...] = ()

    def __post_init__(self):
        real = tuple(sorted((int(r) for r in self.real), reverse=True))
        pairs = tuple(sorted((int(r) for r in self.complex_pairs), reverse=True))
        if any(r <= 0 for r in real + pairs):
            raise ValueError("multiplicities must be positive")
        total = sum(real) + 2 * sum(pairs)
        if total not in (0, 8):
            raise ValueError(f"multiplicities add up to {total}, not 8")
        object.__setattr__(self, "real", real)
        object.__setattr__(self, "complex_pairs", pairs)

    @classmethod
    def zero(cls) -> "RootType":
        return cls()

    @property
    def is_trivial(self) -> bool:
        return not self.real and not self.complex_pairs

    @property
    def distinct_roots(self) -> int:
        return len(self.real) + 2 * len(self.complex_pairs)

    @property
    def dimension(self) -> int:
        return 0 if self.is_trivial else self.distinct_roots + 1

    @property
    def label(self) -> str:
        if self.is_trivial:
            return "{0}"
        # descending; at equal multiplicity the bracketed pair goes first
        items = [(p, 1, f"[{p},{p}]") for p in self.complex_pairs] + [(r, 0, str(r)) for r in self.real]
        items.sort(key=lambda t: (-t[0], -t[1]))
        return "{" + ",".join(s for _, _, s in items) + "}"

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"RootType({self.label})"

    @classmethod
    def parse(cls, text: str) -> "RootType":
        """Inverse of :attr:`label`; also accepts spaces and the bare ``0``."""
        body = text.strip().replace(" ", "")
        if body.startswith("{") and body.endswith("}"):
            body = body[1:-1]
        if body in ("", "0"):
            return cls()
        real, pairs = [], []
        i = 0
        while i < len(body):
            if body[i] == "[":
                j = body.index("]", i)
                a, b = body[i + 1:j].split(",")
                if a != b:
                    raise ValueError(f"conjugate pair with unequal multiplicities in {text!r}")
                pairs.append(int(a))
                i = j + 1
            else:
                j = body.find(",", i)
                j = len(body) if j < 0 else j
                real.append(int(body[i:j]))
                i = j
            if i < len(body):
                if body[i] != ",":
                    raise ValueError(f"cannot parse root type {text!r}")
                i += 1
        return cls(tuple(real), tuple(pairs))

    def to_json(self) -> dict:
        return {"real": list(self.real), "complexPairs": list(self.complex_pairs)}

    @classmethod
    def from_json(cls, data: dict | str) -> "RootType":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data.get("real", ())), tuple(data.get("complexPairs", ())))


def dimension(rt: RootType) -> int:
    return rt.dimension


# ---------------------------------------------------------------------------
# FactoredOctic


@dataclass(frozen=True)
class FactoredOctic:
    """scale * prod (g x + h y)^m * prod (x^2 + b x y + c y^2)^m."""

    scale: Fraction
    linear: tuple[tuple[Fraction, Fraction, int], ...] = ()
    quadratic: tuple[tuple[Fraction, Fraction, int], ...] = ()

    def __post_init__(self):
        scale = as_fraction(self.scale)
        if scale == 0:
            raise ValueError("scale must be nonzero")
        lin = tuple((as_fraction(g), as_fraction(h), int(m)) for g, h, m in self.linear)
        quad = tuple((as_fraction(b), as_fraction(c), int(m)) for b, c, m in self.quadratic)
        if sum(m for *_, m in lin) + 2 * sum(m for *_, m in quad) != 8:
            raise ValueError("factor degrees must add up to 8")
        for g, h, m in lin:
            if m <= 0 or (g == 0 and h == 0):
                raise ValueError("bad linear factor")
        for (g1, h1, _), (g2, h2, _) in combinations(lin, 2):
            if g1 * h2 == g2 * h1:
                raise ValueError("proportional linear factors")
        for b, c, m in quad:
            if m <= 0 or b * b - 4 * c >= 0:
                raise ValueError("quadratic factor is not irreducible over R")
        if len({(b, c) for b, c, _ in quad}) != len(quad):
            raise ValueError("repeated quadratic factor")
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "quadratic", quad)

    @property
    def root_type(self) -> RootType:
        return RootType(tuple(m for *_, m in self.linear), tuple(m for *_, m in self.quadratic))

    def factors(self) -> list[tuple[BinaryForm, int]]:
        """Distinct real-irreducible factors with multiplicities."""
        out = [(from_monomial([g, h]), m) for g, h, m in self.linear]
        out += [(from_monomial([1, b, c]), m) for b, c, m in self.quadratic]
        return out

    def expand(self) -> BinaryForm:
        v = BinaryForm(0, (self.scale,))
        for f, m in self.factors():
            for _ in range(m):
                v = v * f
        return v

    def to_json(self) -> dict:
        s = lambda c: f"{c.numerator}/{c.denominator}"
        return {
            "scale": s(self.scale),
            "linear": [[s(g), s(h), m] for g, h, m in self.linear],
            "quadratic": [[s(b), s(c), m] for b, c, m in self.quadratic],
        }


# ---------------------------------------------------------------------------
# univariate polynomials over Q, coefficient lists from low to high degree


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[i + k] -= c * bi
        a.pop()
        _trim(a)
    return _trim(q), a


def _monic(p: list[Fraction]) -> list[Fraction]:
    return [c / p[-1] for c in p] if p else p


def _gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a)


def _deriv(p: list[Fraction]) -> list[Fraction]:
    return _trim([i * c for i, c in enumerate(p)][1:])


def _squarefree_decomposition(p: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: [(a_i, i)] with p = lead * prod a_i^i, a_i square-free and coprime."""
    out = []
    dp = _deriv(p)
    a = _gcd(p, dp)
    b = _divmod(p, a)[0]
    c = _divmod(dp, a)[0]
    d = _trim([ci - bi for ci, bi in _zip0(c, _deriv(b))])
    i = 1
    while len(b) > 1:
        a = _gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = _divmod(b, a)[0]
        c = _divmod(d, a)[0]
        d = _trim([ci - bi for ci, bi in _zip0(c, _deriv(b))])
        i += 1
    return out


def _zip0(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def _sturm_sequence(p: list[Fraction]) -> list[list[Fraction]]:
    seq = [p, _deriv(p)]
    while seq[-1]:
        r = _divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(signs: Iterable[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def real_root_count(p: list[Fraction]) -> int:
    """Number of distinct real roots of p (Sturm's theorem on the whole line)."""
    seq = _sturm_sequence(_trim(list(p)))
    at_pos = [(1 if s[-1] > 0 else -1) for s in seq]
    at_neg = [(1 if s[-1] > 0 else -1) * (-1 if (len(s) - 1) % 2 else 1) for s in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


# ---------------------------------------------------------------------------
# exact classification


def _as_octic(v) -> BinaryForm:
    if not isinstance(v, BinaryForm):
        v = BinaryForm(8, tuple(v))
    if v.degree != 8:
        raise ValueError("root types are defined for octics (degree 8)")
    return v


def classify_exact(v: BinaryForm) -> RootType:
    v = _as_octic(v)
    if v.is_zero():
        return RootType()
    mono = to_monomial(v)  # mono[k] multiplies x^(8-k) y^k
    # dehomogenize at y = 1: p(t) = sum mono[k] t^(8-k); low-to-high list
    p = _trim(list(reversed(mono)))
    at_infinity = 8 - (len(p) - 1)
    real, pairs = [], []
    if at_infinity:
        real.append(at_infinity)
    if len(p) > 1:
        for factor, mult in _squarefree_decomposition(p):
            deg = len(factor) - 1
            n_real = real_root_count(factor)
            real.extend([mult] * n_real)
            pairs.extend([mult] * ((deg - n_real) // 2))
    return RootType(tuple(real), tuple(pairs))


# ---------------------------------------------------------------------------
# numeric classification

# rotation applied before dehomogenizing, chosen so no root sits near infinity
_ANGLES = (0.0, 0.4142135623730951, 0.7853981633974483, 1.1780972450961724, 2.0344439357957027, 2.748893571891069)


def _rotated_monomial(coeffs: np.ndarray, theta: float) -> np.ndarray:
    """Monomial coefficients of v(cos x - sin y, sin x + cos y)."""
    c, s = math.cos(theta), math.sin(theta)
    xs = np.array([c, -s])  # x -> c x - s y
    ys = np.array([s, c])   # y -> s x + c y
    out = np.zeros(9)
    for k, a in enumerate(coeffs):
        if a == 0:
            continue
        term = np.array([a])
        for _ in range(8 - k):
            term = np.convolve(term, xs)
        for _ in range(k):
            term = np.convolve(term, ys)
        out += term
    return out


def _chordal(a: complex, b: complex) -> float:
    return abs(a - b) / math.sqrt((1 + abs(a) ** 2) * (1 + abs(b) ** 2))


def classify_numeric(v, eps: float = 1e-8) -> RootType:
    """Classify a float octic by clustering its roots.

    A cluster of m roots counts as one root of multiplicity m when its
    chordal diameter is at most eps**(1/m) (a multiple root perturbed by
    eps splits at that scale).  Clusters whose diameter is within a factor
    2 of the threshold raise :class:`IndeterminateClassification`.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if isinstance(v, BinaryForm):
        if v.degree != 8:
            raise ValueError("root types are defined for octics (degree 8)")
        mono = np.array([float(c) for c in to_monomial(v)])
    else:
        coeffs = np.asarray(v, dtype=float)
        if coeffs.shape != (9,):
            raise ValueError("expected the nine binomial coordinates of an octic")
        mono = coeffs * np.array([math.comb(8, k) for k in range(9)])
    norm = float(np.max(np.abs(mono)))
    if norm == 0.0:
        return RootType()
    mono = mono / norm
    best = max(_ANGLES, key=lambda th: abs(_rotated_monomial(mono, th)[0]))
    rot = _rotated_monomial(mono, best)
    roots = list(np.roots(rot))
    if len(roots) != 8:
        raise IndeterminateClassification("rotation failed to remove roots at infinity")

    remaining = list(range(8))
    clusters: list[list[int]] = []
    for m in range(8, 1, -1):
        tol = eps ** (1.0 / m)
        while len(remaining) >= m:
            best_set, best_diam = None, math.inf
            for i in remaining:
                near = sorted(remaining, key=lambda j: _chordal(roots[i], roots[j]))[:m]
                diam = max(_chordal(roots[a], roots[b]) for a, b in combinations(near, 2))
                if diam < best_diam:
                    best_set, best_diam = near, diam
            if best_diam <= tol:
                if best_diam > tol / 2:
                    raise IndeterminateClassification(
                        f"cluster of {m} roots has diameter {best_diam:.3g}, threshold {tol:.3g}")
                clusters.append(best_set)
                remaining = [j for j in remaining if j not in best_set]
            else:
                if best_diam < 2 * tol:
                    raise IndeterminateClassification(
                        f"cluster of {m} roots has diameter {best_diam:.3g}, threshold {tol:.3g}")
                break
    clusters.extend([[j] for j in remaining])

    real, complex_clusters = [], []
    for cl in clusters:
        z = complex(np.mean([roots[j] for j in cl]))
        if abs(z.imag) > eps:
            complex_clusters.append((z, len(cl)))
        else:
            real.append(len(cl))
    pairs = []
    used = set()
    for i, (z, m) in enumerate(complex_clusters):
        if i in used or z.imag < 0:
            continue
        partner = min(
            (j for j, (w, k) in enumerate(complex_clusters) if j not in used and j != i and w.imag < 0 and k == m),
            key=lambda j: abs(complex_clusters[j][0] - z.conjugate()),
            default=None,
        )
        if partner is None:
            raise IndeterminateClassification("complex cluster without a conjugate partner")
        used.update((i, partner))
        pairs.append(m)
    if len(used) != len(complex_clusters):
        raise IndeterminateClassification("unmatched complex clusters")
    return RootType(tuple(real), tuple(pairs))


# ---------------------------------------------------------------------------
# enumeration


def _partitions(n: int, largest: int | None = None) -> list[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def enumerate_types(include_zero: bool = True) -> tuple[RootType, ...]:
    """All root types of octics, sorted by dimension (then label)."""
    out = []
    for p in range(5):
        for pairs in _partitions(p):
            for real in _partitions(8 - 2 * p):
                out.append(RootType(real, pairs))
    if include_zero:
        out.append(RootType())
    return tuple(sorted(out, key=lambda t: (-t.dimension, t.label)))


def open_types() -> list[RootType]:
    return [t for t in enumerate_types() if t.dimension == 9]


# ---------------------------------------------------------------------------
# degeneration poset


def _moves(rt: RootType) -> list[tuple[str, RootType, tuple]]:
    """One-step root collisions out of rt: (move, target, involved parts)."""
    real, pairs = list(rt.real), list(rt.complex_pairs)
    out = []

    def without(seq, *idx):
        return [x for k, x in enumerate(seq) if k not in idx]

    for i, j in combinations(range(len(real)), 2):
        out.append(("merge-real", RootType(tuple(without(real, i, j) + [real[i] + real[j]]), tuple(pairs)),
                    (real[i], real[j])))
    for i in range(len(pairs)):
        out.append(("pair-to-real", RootType(tuple(real + [2 * pairs[i]]), tuple(without(pairs, i))), (pairs[i],)))
    for i, j in combinations(range(len(pairs)), 2):
        out.append(("merge-pairs", RootType(tuple(real), tuple(without(pairs, i, j) + [pairs[i] + pairs[j]])),
                    (pairs[i], pairs[j])))
    for i in range(len(real)):
        for j in range(len(pairs)):
            out.append(("pair-onto-real",
                        RootType(tuple(without(real, i) + [real[i] + 2 * pairs[j]]), tuple(without(pairs, j))),
                        (real[i], pairs[j])))
    return out


@lru_cache(maxsize=None)
def degeneration_graph() -> nx.DiGraph:
    """Hasse diagram of "closure contains"; an edge u -> w means w is in the closure of u.

    Each cover edge carries the ``move`` (and involved parts) realizing it.
    """
    moves = nx.DiGraph()
    for t in enumerate_types(include_zero=False):
        for move, target, parts in _moves(t):
            if not moves.has_edge(t, target):
                moves.add_edge(t, target, move=move, parts=parts)
    moves.add_edge(RootType((8,)), RootType(), move="scale-to-zero", parts=())
    hasse = nx.transitive_reduction(moves)
    hasse.add_nodes_from(enumerate_types())
    for u, w in hasse.edges:
        hasse.edges[u, w].update(moves.edges[u, w])
    return hasse


def degeneration_poset() -> set[tuple[RootType, RootType]]:
    """Cover edges (upper, lower)."""
    return set(degeneration_graph().edges)


def poset_to_dot(graph: nx.DiGraph | None = None) -> str:
    graph = degeneration_graph() if graph is None else graph
    lines = ["digraph root_types {", "  rankdir=TB;", '  node [fontname="Helvetica"];']
    by_dim: dict[int, list[RootType]] = {}
    for t in graph.nodes:
        by_dim.setdefault(t.dimension, []).append(t)
    for dim in sorted(by_dim, reverse=True):
        lines.append("  { rank=same;")
        for t in sorted(by_dim[dim], key=lambda r: r.label):
            shape = "ellipse" if dim == 9 else "box" if t.real == (8,) else "hexagon"
            lines.append(f'    "{t.label}" [label="{t.label}\\ndim={dim}", shape={shape}];')
        lines.append("  }")
    for u, w in sorted(graph.edges, key=lambda e: (-e[0].dimension, e[0].label, e[1].label)):
        lines.append(f'  "{u.label}" -> "{w.label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# representatives and degeneration paths

_REAL_POINTS = (1, 0, -1, 2, -2, 3, -3, 4)
_QUADRATICS = ((0, 1), (1, 1), (1, 2), (1, 3))


def _linear(root) -> tuple[Fraction, Fraction]:
    """(g, h) with g x + h y vanishing at x/y = root."""
    return Fraction(1), -Fraction(root)


def sample_representative(rt: RootType) -> FactoredOctic:
    """Deterministic rational octic of type rt.

    Real roots sit at small integers; complex pairs are roots of
    x^2 + b x y + c y^2 from a fixed list.  When complex pairs are present
    the real roots start at 0 so that e.g. {4,[2,2]} is x^4 (x^2 + y^2)^2.
    """
    if rt.is_trivial:
        raise ValueError("the zero form has no factorization")
    points = _REAL_POINTS if not rt.complex_pairs else (0,) + tuple(p for p in _REAL_POINTS if p != 0)
    linear = [(*_linear(points[i]), m) for i, m in enumerate(rt.real)]
    quadratic = [(*_QUADRATICS[i], m) for i, m in enumerate(rt.complex_pairs)]
    return FactoredOctic(Fraction(1), tuple(linear), tuple(quadratic))


# pools kept away from the collision site at 0 used by degeneration_path
_PATH_REAL = (1, -1, 2, -2, 3, -3, 4, -4)
_PATH_QUAD = ((-2, 2), (2, 2), (-4, 5), (4, 5))  # roots 1±i, -1±i, 2±i, -2±i


def _path_factors(upper: RootType, lower: RootType, t: Fraction) -> tuple[list, list]:
    for move, target, parts in _moves(upper):
        if target == lower:
            break
    else:
        raise ValueError(f"{lower} is not one collision away from {upper}")
    real, pairs = list(upper.real), list(upper.complex_pairs)
    lin, quad = [], []
    if move == "merge-real":
        r, s = parts
        real.remove(r)
        real.remove(s)
        lin += [(*_linear(0), r), (*_linear(t), s)]
    elif move == "pair-to-real":
        (p,) = parts
        pairs.remove(p)
        quad.append((Fraction(0), t * t, p))  # x^2 + t^2 y^2
    elif move == "merge-pairs":
        p, q = parts
        pairs.remove(p)
        pairs.remove(q)
        quad += [(Fraction(0), Fraction(1), p), (-2 * t, t * t + 1, q)]  # x^2+y^2 and (x-ty)^2+y^2
    else:  # pair-onto-real
        r, p = parts
        real.remove(r)
        pairs.remove(p)
        lin.append((*_linear(0), r))
        quad.append((Fraction(0), t * t, p))
    lin += [(*_linear(_PATH_REAL[i]), m) for i, m in enumerate(real)]
    quad += [(*_PATH_QUAD[i], m) for i, m in enumerate(pairs)]
    return lin, quad


def degeneration_path(upper: RootType, lower: RootType, t) -> FactoredOctic:
    """Member of ``upper`` at parameter t != 0 whose t -> 0 limit lies in ``lower``.

    Works for any single collision move; raises ValueError otherwise.
    """
    lin, quad = _path_factors(upper, lower, Fraction(t))
    return FactoredOctic(Fraction(1), tuple(lin), tuple(quad))


def _limit_form(upper: RootType, lower: RootType) -> BinaryForm:
    """The t = 0 end of :func:`degeneration_path`, where factors coincide."""
    lin, quad = _path_factors(upper, lower, Fraction(0))
    v = BinaryForm(0, (1,))
    for g, h, m in lin:
        for _ in range(m):
            v = v * from_monomial([g, h])
    for b, c, m in quad:
        for _ in range(m):
            v = v * from_monomial([1, b, c])
    return v


@dataclass(frozen=True)
class EdgeWitness:
    upper: RootType
    lower: RootType
    path_types: tuple[RootType, ...]
    limit_type: RootType

    @property
    def ok(self) -> bool:
        return all(t == self.upper for t in self.path_types) and self.limit_type == self.lower


def witness_edge(upper: RootType, lower: RootType, eps: float = 1e-6) -> EdgeWitness:
    """Classify a path inside ``upper`` exactly and its limit numerically."""
    if lower.is_trivial:
        path = [FactoredOctic(Fraction(s), ((1, -1, 8),)) for s in (1, Fraction(1, 10), Fraction(1, 1000))]
        limit = BinaryForm.zero(8)
    else:
        path = [degeneration_path(upper, lower, s) for s in (Fraction(1, 2), Fraction(1, 10), Fraction(1, 1000))]
        limit = _limit_form(upper, lower)
    path_types = tuple(classify_exact(f.expand()) for f in path)
    floats = [float(c) for c in limit.coeffs]
    return EdgeWitness(upper, lower, path_types, classify_numeric(floats, eps))
