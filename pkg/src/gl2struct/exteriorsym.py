"""Exterior calculus on an abstract coframe.

A :class:`Coframe` fixes an ordered list of generator 1-forms and a
coefficient ring (a :class:`~gl2struct.polyring.PolyRing`).  A :class:`Form`
is a sparse sum ``coeff * (g_i1 ^ ... ^ g_ik)`` with wedge monomials stored
as bitmasks, always in canonical (sorted, repeat-free) order.

Exterior derivatives need rules: ``d`` of every generator (a 2-form) and
``d`` of every coefficient-ring variable (a 1-form).  See :class:`Rules`.

Polynomial-valued forms (values in V_n) are handled by :class:`VForm`, and
:func:`pair_forms` is the Clebsch-Gordan pairing with products replaced by
wedges.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .binform import pairing_table
from .polyring import Poly, PolyRing

__all__ = [
    "Coframe",
    "Form",
    "VForm",
    "Rules",
    "wedge",
    "d",
    "pair_forms",
    "is_zero",
    "substitute_generators",
    "MissingRuleError",
]


class MissingRuleError(KeyError):
    pass


class Coframe:
    """Ordered generators plus the coefficient ring they are defined over."""

    def __init__(self, names: Sequence[str], ring: PolyRing):
        self.names = tuple(names)
        self.ring = ring
        self.n = len(self.names)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __repr__(self) -> str:
        return f"Coframe({', '.join(self.names)} over {self.ring!r})"

    def index(self, name: str) -> int:
        return self._index[name]

    def gen(self, name_or_index) -> "Form":
        i = name_or_index if isinstance(name_or_index, int) else self._index[name_or_index]
        return Form(self, {1 << i: self.ring.one})

    def zero(self) -> "Form":
        return Form(self, {})

    def scalar(self, coeff) -> "Form":
        """A 0-form."""
        c = coeff if isinstance(coeff, Poly) else self.ring.const(coeff)
        return Form(self, {0: c} if c else {})


@lru_cache(maxsize=None)
def _wedge_sign(a: int, b: int) -> int:
    """Sign of moving the generators of mask b past those of mask a (0 if they overlap)."""
    if a & b:
        return 0
    swaps = 0
    j = 0
    bb = b
    while bb:
        if bb & 1:
            swaps += bin(a >> (j + 1)).count("1")
        bb >>= 1
        j += 1
    return -1 if swaps & 1 else 1


class Form:
    __slots__ = ("frame", "terms")

    def __init__(self, frame: Coframe, terms: dict[int, Poly]):
        self.frame = frame
        self.terms = terms

    # -- structure ------------------------------------------------------
    def degrees(self) -> set[int]:
        return {bin(m).count("1") for m in self.terms}

    @property
    def degree(self) -> int | None:
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("inhomogeneous form")
        return degs.pop() if degs else None

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, *names: str) -> Poly:
        mask = 0
        for name in names:
            mask |= 1 << self.frame.index(name)
        # generators given out of canonical order pick up the permutation sign
        sign = 1
        seen = 0
        for name in names:
            bit = 1 << self.frame.index(name)
            sign *= _wedge_sign(seen, bit) or 0
            seen |= bit
        c = self.terms.get(mask, self.frame.ring.zero)
        return c * sign

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "Form"):
        if other.frame is not self.frame:
            raise ValueError("forms on different coframes")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s.terms:
                    out[m] = s
                else:
                    del out[m]
        return Form(self.frame, out)

    def __neg__(self) -> "Form":
        return Form(self.frame, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, c) -> "Form":
        """Multiply by a 0-form coefficient (Poly or rational)."""
        if isinstance(c, Form):
            return wedge(self, c)
        if not isinstance(c, Poly):
            c = self.frame.ring.const(c)
        if not c.terms:
            return Form(self.frame, {})
        out = {}
        for m, v in self.terms.items():
            p = v * c
            if p.terms:
                out[m] = p
        return Form(self.frame, out)

    __rmul__ = __mul__

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.frame is other.frame and self.terms == other.terms

    def map_coefficients(self, fn) -> "Form":
        out = {}
        for m, c in self.terms.items():
            p = fn(c)
            if p.terms:
                out[m] = p
        return Form(self.frame, out)

    # -- display --------------------------------------------------------
    def mono_name(self, mask: int) -> str:
        if not mask:
            return "1"
        return "^".join(self.frame.names[i] for i in range(self.frame.n) if mask >> i & 1)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: [i for i in range(self.frame.n) if m >> i & 1]):
            parts.append(f"({self.terms[m]})*{self.mono_name(m)}")
        return " + ".join(parts)

    __repr__ = __str__


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    out: dict[int, Poly] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            s = _wedge_sign(ma, mb)
            if not s:
                continue
            p = ca * cb
            if s < 0:
                p = -p
            m = ma | mb
            prev = out.get(m)
            out[m] = p if prev is None else prev + p
    return Form(a.frame, {m: c for m, c in out.items() if c.terms})


def is_zero(e: Form) -> bool:
    return e.is_zero()


def substitute_generators(e: Form, images: Mapping[int, Form]) -> Form:
    """Replace generators by 1-forms (generators not in ``images`` are kept)."""
    frame = e.frame
    out = frame.zero()
    for mask, c in e.terms.items():
        piece = frame.scalar(c)
        for i in range(frame.n):
            if mask >> i & 1:
                piece = wedge(piece, images.get(i, frame.gen(i)))
        out = out + piece
    return out


# ---------------------------------------------------------------------------
# exterior derivative


@dataclass
class Rules:
    """d of each generator (by index) and of each coefficient variable (by index)."""

    frame: Coframe
    generators: Mapping[int, Form]
    variables: Mapping[int, Form]

    def d_generator(self, i: int) -> Form:
        try:
            return self.generators[i]
        except KeyError:
            raise MissingRuleError(f"no rule for d({self.frame.names[i]})") from None

    def d_variable(self, i: int) -> Form:
        try:
            return self.variables[i]
        except KeyError:
            raise MissingRuleError(f"no rule for d({self.frame.ring.names[i]})") from None


def d_coefficient(c: Poly, rules: Rules) -> Form:
    frame = rules.frame
    out = frame.zero()
    for i in sorted(c.variables()):
        out = out + rules.d_variable(i) * c.diff(i)
    return out


def d(e: Form, rules: Rules) -> Form:
    """Leibniz-extended exterior derivative."""
    frame = e.frame
    if rules.frame is not frame:
        raise ValueError("rules belong to a different coframe")
    out = frame.zero()
    for mask, c in e.terms.items():
        mono = Form(frame, {mask: frame.ring.one})
        if not c.is_constant():
            out = out + wedge(d_coefficient(c, rules), mono)
        # d(g1 ^ ... ^ gk) = sum (-1)^pos g1 ^ .. ^ d(g_pos) ^ .. ^ gk
        pos = 0
        for i in range(frame.n):
            if not mask >> i & 1:
                continue
            before = mask & ((1 << i) - 1)
            after = mask & ~((1 << (i + 1)) - 1)
            dg = rules.d_generator(i)
            if dg.terms:
                piece = wedge(wedge(Form(frame, {before: c}), dg), Form(frame, {after: frame.ring.one}))
                out = out - piece if pos & 1 else out + piece
            pos += 1
    return out


# ---------------------------------------------------------------------------
# polynomial-valued forms


class VForm:
    """A V_n-valued differential form: n+1 component forms of equal degree."""

    __slots__ = ("n", "components", "form_degree")

    def __init__(self, components: Sequence[Form], form_degree: int):
        self.components = tuple(components)
        self.n = len(self.components) - 1
        self.form_degree = form_degree
        for comp in self.components:
            deg = comp.degree
            if deg is not None and deg != form_degree:
                raise ValueError(f"component of degree {deg} in a {form_degree}-form")

    @property
    def frame(self) -> Coframe:
        return self.components[0].frame

    @classmethod
    def from_scalars(cls, frame: Coframe, values: Sequence) -> "VForm":
        """A 0-form valued in V_n from coefficient-ring values."""
        return cls([frame.scalar(v) for v in values], 0)

    @classmethod
    def from_generators(cls, frame: Coframe, names: Sequence[str]) -> "VForm":
        return cls([frame.gen(nm) for nm in names], 1)

    def __getitem__(self, weight: int) -> Form:
        k, r = divmod(weight + self.n, 2)
        if r or not 0 <= k <= self.n:
            raise KeyError(weight)
        return self.components[k]

    def __add__(self, other: "VForm") -> "VForm":
        if other.n != self.n or other.form_degree != self.form_degree:
            raise ValueError("adding forms with different value space or degree")
        return VForm([a + b for a, b in zip(self.components, other.components)], self.form_degree)

    def __neg__(self) -> "VForm":
        return VForm([-a for a in self.components], self.form_degree)

    def __sub__(self, other: "VForm") -> "VForm":
        return self + (-other)

    def __mul__(self, c) -> "VForm":
        return VForm([a * c for a in self.components], self.form_degree)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VForm):
            return NotImplemented
        return self.n == other.n and self.components == other.components


def pair_forms(u: VForm, v: VForm, p: int) -> VForm:
    """<u, v>_p with wedge products; values in V_{m+n-2p}, form degree r+s."""
    table = pairing_table(u.n, v.n, p)
    frame = u.frame
    big = u.n + v.n - 2 * p
    out = [frame.zero() for _ in range(big + 1)]
    for (i, j), c in table.items():
        a, b = u.components[i], v.components[j]
        if a.terms and b.terms:
            out[i + j - p] = out[i + j - p] + wedge(a, b) * c
    return VForm(out, u.form_degree + v.form_degree)
