"""Exact field arithmetic and dense matrices.

Two kinds of field are supported: the rationals, whose elements are
plain :class:`fractions.Fraction` values, and prime fields GF(p) for an
odd prime p, whose elements are :class:`Mod` residues.  A :class:`Field`
object is the descriptor that knows how to build, parse and render
elements of its kind; nothing in this module ever rounds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, "Mod"]

_SCALAR_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


class FieldError(ValueError):
    """Raised for malformed scalars and descriptor mismatches."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise FieldError(f"modulus {n} is too large for the deterministic primality test")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Mod:
    """A residue modulo an odd prime ``p``.

    Plain ``int`` operands are coerced into the field; a ``Mod`` with a
    different modulus (or any other numeric type) is rejected.
    """

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldError(f"mixing GF({self.p}) with GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        raise FieldError(f"cannot combine GF({self.p}) element with {type(other).__name__}")

    def __add__(self, other):
        return Mod(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Mod(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Mod(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return Mod(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def inverse(self) -> Mod:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Mod(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Mod(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Mod(self._coerce(other), self.p) / self

    def __neg__(self):
        return Mod(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Mod(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Field:
    """Field descriptor: ``Field.rational()`` or ``Field.prime(p)``."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.modulus is not None:
                raise FieldError("the rational field takes no modulus")
        elif self.kind == "prime":
            p = self.modulus
            if not isinstance(p, int) or p < 3 or not is_prime(p):
                raise FieldError(f"modulus must be an odd prime, got {p!r}")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> Field:
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls("prime", p)

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "rational" else self.modulus

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction, Mod or scalar string into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "rational":
            if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
                return Fraction(x)
            raise FieldError(f"cannot coerce {x!r} into Q")
        if isinstance(x, Mod):
            if x.p != self.modulus:
                raise FieldError(f"GF({x.p}) element offered to GF({self.modulus})")
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Mod(x, self.modulus)
        if isinstance(x, Fraction):
            if x.denominator % self.modulus == 0:
                raise FieldError(f"denominator {x.denominator} is not invertible mod {self.modulus}")
            return Mod(x.numerator, self.modulus) / x.denominator
        raise FieldError(f"cannot coerce {x!r} into GF({self.modulus})")

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def contains(self, x) -> bool:
        if self.kind == "rational":
            return isinstance(x, Fraction)
        return isinstance(x, Mod) and x.p == self.modulus

    def parse(self, text: str) -> Scalar:
        m = _SCALAR_RE.match(text.strip()) if isinstance(text, str) else None
        if m is None:
            raise FieldError(f"malformed scalar {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise FieldError(f"zero denominator in {text!r}")
        if self.kind == "rational":
            return Fraction(num, den)
        if den % self.modulus == 0:
            raise FieldError(f"denominator of {text!r} is not invertible mod {self.modulus}")
        return Mod(num, self.modulus) / den

    def render(self, x: Scalar) -> str:
        x = self(x)
        if self.kind == "rational":
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x.value)

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.modulus}

    @classmethod
    def from_json(cls, obj) -> Field:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FieldError(f"bad field descriptor {obj!r}")
        if obj["kind"] == "rational":
            return cls.rational()
        if obj["kind"] == "prime":
            return cls.prime(obj.get("p"))
        raise FieldError(f"unknown field kind {obj['kind']!r}")

    def __str__(self):
        return "Q" if self.kind == "rational" else f"GF({self.modulus})"


class MatrixError(ValueError):
    pass


class Matrix:
    """Immutable dense matrix over a :class:`Field`.

    Rows and columns are indexed from 0.  ``X[i, j]`` reads an entry and
    ``X @ Y`` multiplies; ``+``, ``-`` and scalar ``*`` act entrywise.
    """

    __slots__ = ("field", "rows", "cols", "_e")

    def __init__(self, field: Field, entries: Iterable[Iterable]):
        rows = tuple(tuple(field(x) for x in row) for row in entries)
        if not rows:
            raise MatrixError("matrix must have at least one row")
        width = len(rows[0])
        if width == 0 or any(len(r) != width for r in rows):
            raise MatrixError("ragged or empty rows")
        self.field = field
        self.rows = len(rows)
        self.cols = width
        self._e = rows

    @classmethod
    def _raw(cls, field: Field, rows: tuple) -> Matrix:
        # entries already coerced
        m = object.__new__(cls)
        m.field, m.rows, m.cols, m._e = field, len(rows), len(rows[0]), rows
        return m

    @classmethod
    def zeros(cls, field: Field, n: int, m: int | None = None) -> Matrix:
        z = field.zero
        return cls._raw(field, tuple((z,) * (n if m is None else m) for _ in range(n)))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        return cls.diag(field, [1] * n)

    @classmethod
    def diag(cls, field: Field, values: Sequence) -> Matrix:
        n = len(values)
        z = field.zero
        return cls._raw(field, tuple(
            tuple(field(values[i]) if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def unit(cls, field: Field, n: int, i: int) -> Matrix:
        """The coordinate projector with a single 1 at (i, i)."""
        return cls.diag(field, [1 if k == i else 0 for k in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._e)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._e]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def _check_same(self, other: Matrix):
        if not isinstance(other, Matrix):
            raise MatrixError(f"expected a Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise MatrixError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise MatrixError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(self.field, tuple(
            tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._e, other._e)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise MatrixError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._raw(self.field, tuple(
            tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._e, other._e)))

    def __neg__(self) -> Matrix:
        return Matrix._raw(self.field, tuple(tuple(-x for x in r) for r in self._e))

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix._raw(self.field, tuple(tuple(c * x for x in r) for r in self._e))

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            raise MatrixError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if self.cols != other.rows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.field.zero
        cols = list(zip(*other._e))
        out = []
        for r in self._e:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for col in cols:
                s = z
                for k, x in nz:
                    y = col[k]
                    if y:
                        s = s + x * y
                row.append(s)
            out.append(tuple(row))
        return Matrix._raw(self.field, tuple(out))

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product, with ``v`` a sequence of scalars."""
        if len(v) != self.cols:
            raise MatrixError(f"vector of length {len(v)} for {self.shape} matrix")
        v = [self.field(x) for x in v]
        z = self.field.zero
        out = []
        for r in self._e:
            s = z
            for x, y in zip(r, v):
                s = s + x * y
            out.append(s)
        return tuple(out)

    def transpose(self) -> Matrix:
        return Matrix._raw(self.field, tuple(zip(*self._e)))

    def trace(self):
        if self.rows != self.cols:
            raise MatrixError(f"trace of non-square {self.shape} matrix")
        s = self.field.zero
        for i in range(self.rows):
            s = s + self._e[i][i]
        return s

    def is_zero(self) -> bool:
        return not any(x for r in self._e for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self._e == other._e

    def __hash__(self):
        return hash((self.field, self._e))

    def _echelon(self, augment: Matrix | None = None):
        """Forward elimination with first-nonzero pivoting in column order.

        Returns the reduced working rows and the list of pivot columns.
        """
        rows = [list(r) for r in self._e]
        if augment is not None:
            rows = [r + list(a) for r, a in zip(rows, augment._e)]
        pivots: list[int] = []
        pr = 0
        for col in range(self.cols):
            found = next((i for i in range(pr, self.rows) if rows[i][col]), None)
            if found is None:
                continue
            rows[pr], rows[found] = rows[found], rows[pr]
            inv = 1 / rows[pr][col]
            rows[pr] = [x * inv for x in rows[pr]]
            for i in range(self.rows):
                if i != pr and rows[i][col]:
                    f = rows[i][col]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[pr])]
            pivots.append(col)
            pr += 1
            if pr == self.rows:
                break
        return rows, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def inverse(self) -> Matrix:
        if self.rows != self.cols:
            raise MatrixError(f"inverse of non-square {self.shape} matrix")
        n = self.rows
        rows, pivots = self._echelon(Matrix.identity(self.field, n))
        if len(pivots) < n:
            raise MatrixError("matrix is singular")
        return Matrix._raw(self.field, tuple(tuple(r[n:]) for r in rows))

    def power(self, k: int) -> Matrix:
        out = Matrix.identity(self.field, self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def render(self) -> list[list[str]]:
        return [[self.field.render(x) for x in r] for r in self._e]

    def __repr__(self):
        body = "; ".join(" ".join(r) for r in self.render())
        return f"Matrix[{self.field}]({body})"


def parse_scalar(text: str, field: Field) -> Scalar:
    return field.parse(text)


def render_scalar(x: Scalar, field: Field) -> str:
    return field.render(x)


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    return x @ y


def mat_add(x: Matrix, y: Matrix) -> Matrix:
    return x + y


def mat_sub(x: Matrix, y: Matrix) -> Matrix:
    return x - y


def mat_scale(x: Matrix, c) -> Matrix:
    return x.scale(c)


def mat_rank(x: Matrix) -> int:
    return x.rank()


def mat_trace(x: Matrix):
    return x.trace()
