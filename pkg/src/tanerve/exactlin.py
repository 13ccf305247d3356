"""
Exact scalars, sparse tensors over a quiver basis, and exact kernels.

Scalars are ``fractions.Fraction`` over Q or :class:`ModP` over F_p; both
support the usual arithmetic operators, so the rest of the package is
written against plain ``+ - * /``.

A vector in a graded quiver is a dict mapping basis ids to nonzero
scalars.  A tensor is a dict mapping tuples of basis ids to nonzero
scalars; the object path and the degree vector of a tensor are read off
the ids, so they never need to be stored separately.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence


# --------------------------------------------------------------------------
# fields


class ModP:
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return ModP(other, self.p) / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} mod {self.p}"


class Field:
    """Q or F_p.  Calling the field coerces ints and strings into it."""

    def __init__(self, p: int = 0):
        if p and (p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1))):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def name(self) -> str:
        return f"Fp:{self.p}" if self.p else "Q"

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if self.p:
            if isinstance(x, ModP):
                return x
            if isinstance(x, Fraction):
                return ModP(x.numerator, self.p) / ModP(x.denominator, self.p)
            return ModP(int(x), self.p)
        if isinstance(x, ModP):
            raise TypeError("cannot coerce an F_p element into Q")
        return Fraction(x)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        text = text.strip()
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad scalar {text!r}") from None
        return self(value)

    def format(self, x) -> str:
        if isinstance(x, ModP):
            return str(x.v)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


Q = Field()


def field_from_spec(spec: str) -> Field:
    """'Q' or 'Fp:<p>'."""
    spec = spec.strip()
    if spec in ("Q", "QQ"):
        return Q
    if spec.startswith("Fp:"):
        return Field(int(spec[3:]))
    raise ValueError(f"unknown field {spec!r}; expected 'Q' or 'Fp:<p>'")


# --------------------------------------------------------------------------
# sparse vectors and tensors


def add_into(acc: dict, vec: Mapping, coeff=1) -> dict:
    """acc += coeff * vec, dropping zeros."""
    for key, val in vec.items():
        new = acc.get(key, 0) + coeff * val
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)
    return acc


def scale(vec: Mapping, coeff) -> dict:
    if not coeff:
        return {}
    return {k: coeff * v for k, v in vec.items()}


def is_zero(vec: Mapping) -> bool:
    return not any(vec.values())


def tensor(x: Mapping[tuple, object], y: Mapping[tuple, object]) -> dict:
    """Bilinear concatenation of label tuples; object matching is the
    caller's job (it is implied by the ids being composable)."""
    out = {}
    for lx, cx in x.items():
        for ly, cy in y.items():
            key = lx + ly
            val = out.get(key, 0) + cx * cy
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


class SignConvention(enum.Enum):
    """How (id^r (x) op (x) id^t) acts on element tensors.

    KOSZUL passes the operator over the preceding factors with the sign
    (-1)^{|op| * sum of their degrees}, degrees taken in A.  SHIFTED does
    the same with suspended degrees (a factor of A-degree d counts d + 1).
    PLAIN introduces no sign.
    """

    KOSZUL = "koszul"
    SHIFTED = "koszul-shifted"
    PLAIN = "plain"

    def passing(self, op_degree: int, degrees: Sequence[int]) -> int:
        if self is SignConvention.PLAIN:
            return 0
        total = sum(degrees)
        if self is SignConvention.SHIFTED:
            total += len(degrees)
        return op_degree * total


def apply_graded_op(
    op: Callable[[tuple], Mapping],
    op_degree: int,
    slot: int,
    arity: int,
    x: Mapping[tuple, object],
    degree_of: Callable[[Hashable], int],
    convention: SignConvention = SignConvention.KOSZUL,
) -> dict:
    """Apply id^{slot} (x) op (x) id^{...} to the tensor x.

    ``slot`` is 0-based, so slot 0 never introduces a sign.  ``op`` maps a
    tuple of ``arity`` ids to a vector (dict id -> scalar).
    """
    out: dict = {}
    for labels, c in x.items():
        if len(labels) < slot + arity:
            raise ValueError(f"tensor {labels} too short for slot {slot} arity {arity}")
        value = op(labels[slot : slot + arity])
        if not value:
            continue
        e = convention.passing(op_degree, [degree_of(l) for l in labels[:slot]])
        c = -c if e % 2 else c
        head, tail = labels[:slot], labels[slot + arity :]
        for z, cz in value.items():
            key = head + (z,) + tail
            val = out.get(key, 0) + c * cz
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


# --------------------------------------------------------------------------
# linear systems and exact kernels


class LinearSystem:
    """Sparse matrix with hashable row keys and integer column indices."""

    def __init__(self, ncols: int, field: Field = Q):
        self.ncols = ncols
        self.field = field
        self.rows: dict[Hashable, dict[int, object]] = {}

    def add(self, row: Hashable, col: int, value) -> None:
        if not 0 <= col < self.ncols:
            raise IndexError(f"column {col} out of range [0, {self.ncols})")
        r = self.rows.setdefault(row, {})
        new = r.get(col, 0) + value
        if new:
            r[col] = new
        else:
            r.pop(col, None)

    def nonzero_rows(self) -> list[dict[int, object]]:
        return [r for r in self.rows.values() if r]

    def apply(self, vec: Mapping[int, object]) -> dict:
        out = {}
        for key, row in self.rows.items():
            s = sum((c * vec[j] for j, c in row.items() if j in vec), 0)
            if s:
                out[key] = s
        return out


class RowReducer:
    """Incremental Gauss-Jordan elimination with leftmost pivots.

    Stored rows are kept fully reduced: each has a 1 in its pivot column
    and zeros in every other pivot column.  With ``track=True`` each
    stored row also remembers which combination of inserted rows made it.
    """

    def __init__(self, field: Field = Q, track: bool = False):
        self.field = field
        self.track = track
        self.pivots: dict[Hashable, dict] = {}
        self.combos: dict[Hashable, dict] = {}
        self.order: list[Hashable] = []
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping, combo: dict | None = None):
        row = dict(row)
        for col in [c for c in row if c in self.pivots]:
            c = row.get(col)
            if c:
                add_into(row, self.pivots[col], -c)
                if combo is not None:
                    add_into(combo, self.combos[col], -c)
        return row

    def insert(self, row: Mapping) -> Hashable | None:
        """Insert a row; returns its pivot column or None if dependent."""
        combo = {self._count: self.field.one} if self.track else None
        self._count += 1
        row = self.reduce(row, combo)
        if not row:
            return None
        col = min(row)
        inv = self.field.one / row[col]
        row = scale(row, inv)
        if combo is not None:
            combo = scale(combo, inv)
        for other in self.pivots:
            c = self.pivots[other].get(col)
            if c:
                add_into(self.pivots[other], row, -c)
                if combo is not None:
                    add_into(self.combos[other], combo, -c)
        self.pivots[col] = row
        if combo is not None:
            self.combos[col] = combo
        self.order.append(col)
        return col


def kernel_basis(system: LinearSystem) -> list[dict[int, object]]:
    """Exact null space basis, one vector per free column in increasing order.

    The vector for free column f has a 1 in position f and is supported
    on f together with pivot columns.
    """
    red = RowReducer(system.field)
    for row in system.nonzero_rows():
        red.insert(row)
    one = system.field.one
    basis = []
    for f in range(system.ncols):
        if f in red.pivots:
            continue
        vec = {f: one}
        for col, row in red.pivots.items():
            c = row.get(f)
            if c:
                vec[col] = -c
        basis.append(vec)
    return basis


def rank(rows: Iterable[Mapping], field: Field = Q) -> int:
    red = RowReducer(field)
    for r in rows:
        red.insert(r)
    return red.rank
