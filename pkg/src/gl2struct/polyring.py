"""Sparse multivariate polynomials with exact rational coefficients.

Exponents may be negative, so the same class serves as a Laurent ring
(the symmetry-reduction coordinates need ``a**-1``).  A polynomial is a
dict mapping exponent tuples to nonzero :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

__all__ = ["PolyRing", "Poly", "as_fraction"]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class PolyRing:
    """Polynomial ring Q[x_1, ..., x_k] (Laurent where exponents go negative)."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        self.nvars = len(self.names)
        self._zero_exp = (0,) * self.nvars
        self._index = {name: i for i, name in enumerate(self.names)}

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)})"

    def index(self, name: str) -> int:
        return self._index[name]

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return Poly(self, {self._zero_exp: Fraction(1)})

    def const(self, c) -> "Poly":
        c = as_fraction(c)
        return Poly(self, {self._zero_exp: c} if c else {})

    def gen(self, name_or_index) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self._index[name_or_index]
        exp = [0] * self.nvars
        exp[i] = 1
        return Poly(self, {tuple(exp): Fraction(1)})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exp: Sequence[int], coeff=1) -> "Poly":
        c = as_fraction(coeff)
        return Poly(self, {tuple(exp): c} if c else {})

    def from_dict(self, terms: Mapping[tuple, object]) -> "Poly":
        out = {}
        for exp, c in terms.items():
            c = as_fraction(c)
            if c:
                out[tuple(exp)] = c
        return Poly(self, out)


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is not self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = as_fraction(other)
            if not c:
                return Poly(self.ring, {})
            return Poly(self.ring, {e: v * c for e, v in self.terms.items()})
        if other.ring is not self.ring:
            raise ValueError("polynomials from different rings")
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e)
                out[e] = ca * cb if s is None else s + ca * cb
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self.terms.items()
            return Poly(self.ring, {tuple(x * k for x in e): c ** k})
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, c) -> "Poly":
        return self * (Fraction(1) / as_fraction(c))

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring is other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {self.ring._zero_exp}

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring._zero_exp, Fraction(0))

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def diff(self, var) -> "Poly":
        i = var if isinstance(var, int) else self.ring.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * k
        return Poly(self.ring, out)

    def subs(self, values: Mapping[str, object]) -> "Poly":
        """Substitute rational constants or polynomials for some variables."""
        idx = {self.ring.index(k): v for k, v in values.items()}
        out = self.ring.zero
        for e, c in self.terms.items():
            keep = list(e)
            term = self.ring.const(c)
            for i, v in idx.items():
                if e[i]:
                    keep[i] = 0
                    term = term * (v ** e[i] if isinstance(v, Poly) else self.ring.const(as_fraction(v) ** e[i]))
            out = out + term * Poly(self.ring, {tuple(keep): Fraction(1)})
        return out

    def evaluate(self, values: Sequence) -> object:
        """Evaluate at a point given in ring variable order (any field type)."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    # -- display --------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}"
                for name, k in zip(self.ring.names, e)
                if k
            )
            if not mono:
                pieces.append(_fmt(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{_fmt(c)}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self})"


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"({c})"

