"""Exact scalars and dense matrices over the rationals and prime fields.

Two fields are supported: ``QQ`` (values are :class:`fractions.Fraction`)
and ``GF(p)`` (values are Python ints in ``range(p)``).  A :class:`Matrix`
stores raw field values together with its field, so hot loops never pay for
wrapper objects; :class:`FieldScalar` is the tagged scalar handed out at API
boundaries.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import FieldMismatch


class Field:
    tag: str

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"Field({self.tag!r})"

    def check_same(self, other: "Field") -> None:
        if self != other:
            raise FieldMismatch(f"cannot combine {self.tag} with {other.tag}")


class Rationals(Field):
    tag = "Q"
    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0

    def coerce(self, x):
        if isinstance(x, FieldScalar):
            self.check_same(x.field)
            return x.value
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x.strip())
        raise TypeError(f"cannot coerce {type(x).__name__} into Q exactly")

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def encode(self, x) -> str:
        return str(x)

    def random(self, rng, box: int = 5):
        return Fraction(int(rng.integers(-box, box + 1)))


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.tag = f"Fp:{p}"
        self.zero = 0
        self.one = 1 % p
        self.characteristic = p

    def coerce(self, x):
        if isinstance(x, FieldScalar):
            self.check_same(x.field)
            return x.value
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self.coerce(Fraction(x.strip()))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.tag}")

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def encode(self, x) -> str:
        return str(x)

    def random(self, rng, box: int = 5):
        return int(rng.integers(0, self.p))

    def elements(self):
        return range(self.p)


def _is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(tag: str) -> Field:
    """Parse ``"Q"`` or ``"Fp:<p>"`` into a field."""
    tag = tag.strip()
    if tag in ("Q", "QQ"):
        return QQ
    if tag.startswith("Fp:"):
        try:
            p = int(tag[3:])
        except ValueError:
            raise ValueError(f"malformed field tag {tag!r}") from None
        return GF(p)
    raise ValueError(f"malformed field tag {tag!r}")


# Scalar arithmetic on raw values.  Fractions and ints share +,-,* so the
# only field-specific step is the reduction mod p.

def _reduce(field: Field, x):
    return x % field.p if isinstance(field, PrimeField) else x


@dataclass(frozen=True)
class FieldScalar:
    value: object
    field: Field

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def _other(self, other):
        if isinstance(other, FieldScalar):
            self.field.check_same(other.field)
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldScalar(_reduce(self.field, self.value + self._other(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldScalar(_reduce(self.field, self.value - self._other(other)), self.field)

    def __rsub__(self, other):
        return FieldScalar(_reduce(self.field, self._other(other) - self.value), self.field)

    def __mul__(self, other):
        return FieldScalar(_reduce(self.field, self.value * self._other(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        inv = self.field.inv(self._other(other))
        return FieldScalar(_reduce(self.field, self.value * inv), self.field)

    def __neg__(self):
        return FieldScalar(_reduce(self.field, -self.value), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.field.tag, self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.encode(self.value)


class Matrix:
    """Immutable dense matrix over ``QQ`` or ``GF(p)``."""

    __slots__ = ("rows", "cols", "field", "_data")

    def __init__(self, data: Sequence[Sequence], field: Field, cols: int | None = None):
        coerce = field.coerce
        rows = tuple(tuple(coerce(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self.field = field
        self._data = rows

    @classmethod
    def _raw(cls, rows: tuple, cols: int, field: Field) -> "Matrix":
        m = object.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m.field = field
        m._data = rows
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field) -> "Matrix":
        z = field.zero
        return cls._raw(tuple((z,) * cols for _ in range(rows)), cols, field)

    @classmethod
    def identity(cls, n: int, field: Field) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n, field)

    @classmethod
    def elementary(cls, n: int, a: int, b: int, field: Field) -> "Matrix":
        """The n x n matrix unit with a single 1 in position (a, b)."""
        z, o = field.zero, field.one
        return cls._raw(
            tuple(tuple(o if (i, j) == (a, b) else z for j in range(n)) for i in range(n)), n, field
        )

    @classmethod
    def diag(cls, values: Sequence, field: Field) -> "Matrix":
        n = len(values)
        vals = [field.coerce(v) for v in values]
        z = field.zero
        return cls._raw(tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), n, field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: Field, rows: int | None = None) -> "Matrix":
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls([[c[i] for c in columns] for i in range(rows)], field, cols=len(columns))

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence, field: Field) -> "Matrix":
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)], field, cols=cols)

    # -- access ---------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._data)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def entries(self) -> list:
        """Row-major flat list of raw entries."""
        return [x for row in self._data for x in row]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        return hash((self.field.tag, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.encode(x) for x in r) for r in self._data)
        return f"Matrix[{self.rows}x{self.cols}, {self.field.tag}]({body})"

    def is_zero(self) -> bool:
        return not any(x for row in self._data for x in row)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "Matrix") -> None:
        self.field.check_same(other.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        f = self.field
        return Matrix._raw(
            tuple(tuple(_reduce(f, x + y) for x, y in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols, f)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        f = self.field
        return Matrix._raw(
            tuple(tuple(_reduce(f, x - y) for x, y in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols, f)

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix._raw(tuple(tuple(_reduce(f, -x) for x in r) for r in self._data), self.cols, f)

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix._raw(tuple(tuple(_reduce(f, c * x) for x in r) for r in self._data), self.cols, f)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        z = f.zero
        cols_b = list(zip(*other._data)) if other.rows else [()] * other.cols
        out = []
        for row in self._data:
            out.append(tuple(_reduce(f, sum((a * b for a, b in zip(row, col) if a), z)) for col in cols_b))
        return Matrix._raw(tuple(out), other.cols, f)

    def apply(self, vector: Sequence) -> tuple:
        """Matrix-vector product on raw coordinates."""
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} for {self.cols} columns")
        f = self.field
        z = f.zero
        return tuple(_reduce(f, sum((a * b for a, b in zip(row, vector) if a), z)) for row in self._data)

    @property
    def T(self) -> "Matrix":
        if self.rows == 0:
            return Matrix._raw(tuple(() for _ in range(self.cols)), 0, self.field)
        return Matrix._raw(tuple(zip(*self._data)), self.rows, self.field)

    def trace(self):
        f = self.field
        return _reduce(f, sum((self._data[i][i] for i in range(min(self.rows, self.cols))), f.zero))

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return Matrix._raw(self._data + other._data, self.cols, self.field)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return Matrix._raw(tuple(a + b for a, b in zip(self._data, other._data)), self.cols + other.cols, self.field)

    # -- linear algebra -------------------------------------------------
    def rref(self) -> tuple["Matrix", int, list[int]]:
        return rref(self)

    def rank(self) -> int:
        return rref(self)[1]

    def kernel_basis(self) -> list[tuple]:
        return kernel_basis(self)

    def solve(self, b: Sequence):
        return solve(self, b)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices are invertible")
        n = self.rows
        aug = self.hstack(Matrix.identity(n, self.field))
        R, rank, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(tuple(row[n:] for row in R._data[:n]), n, self.field)

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        enc = self.field.encode
        return {"rows": self.rows, "cols": self.cols, "field": self.field.tag,
                "entries": [enc(x) for x in self.entries()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        field = parse_field(obj["field"])
        return cls.from_flat(int(obj["rows"]), int(obj["cols"]), list(obj["entries"]), field)


def _eliminate(field: Field, rows: list[list], ncols: int) -> list[int]:
    """In-place Gauss-Jordan elimination; returns pivot columns."""
    pivots = []
    prime = isinstance(field, PrimeField)
    p = field.p if prime else None
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r]
        inv = field.inv(piv[c])
        if prime:
            piv = [x * inv % p for x in piv]
        else:
            piv = [x * inv for x in piv]
        rows[r] = piv
        nz = [k for k in range(c, ncols) if piv[k]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            a = row[c]
            if not a:
                continue
            if prime:
                for k in nz:
                    row[k] = (row[k] - a * piv[k]) % p
            else:
                for k in nz:
                    row[k] = row[k] - a * piv[k]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns.

    Pivoting picks the first nonzero entry at or below the current row in the
    leftmost unresolved column, so the output is deterministic.
    """
    rows = [list(r) for r in M._data]
    pivots = _eliminate(M.field, rows, M.cols)
    return Matrix._raw(tuple(tuple(r) for r in rows), M.cols, M.field), len(pivots), pivots


def rank(M: Matrix) -> int:
    return rref(M)[1]


def kernel_basis(M: Matrix) -> list[tuple]:
    """Basis of ``{x : M x = 0}``, one vector per free column."""
    R, rk, pivots = rref(M)
    field = M.field
    pivset = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivset:
            continue
        x = [field.zero] * M.cols
        x[free] = field.one
        for row_idx, pc in enumerate(pivots):
            x[pc] = _reduce(field, -R._data[row_idx][free])
        basis.append(tuple(x))
    return basis


def solve(M: Matrix, b: Sequence):
    """Some ``x`` with ``M x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != M.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {M.rows}")
    field = M.field
    bcol = [field.coerce(x) for x in b]
    rows = [list(r) + [bi] for r, bi in zip(M._data, bcol)]
    pivots = _eliminate(field, rows, M.cols + 1)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [field.zero] * M.cols
    for row_idx, pc in enumerate(pivots):
        x[pc] = rows[row_idx][M.cols]
    return tuple(x)


class EchelonBasis:
    """Incrementally maintained basis of a subspace of ``field^dim``.

    ``add`` reduces a vector against the current pivots and keeps it only if
    it enlarges the span.
    """

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self._rows: list[tuple[int, list]] = []  # (pivot column, normalized reduced row)
        self.vectors: list[tuple] = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list:
        f = self.field
        w = [f.coerce(x) for x in v]
        for pc, row in self._rows:
            a = w[pc]
            if a:
                w = [_reduce(f, x - a * y) for x, y in zip(w, row)]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        w = self.reduce(v)
        pc = next((k for k, x in enumerate(w) if x), None)
        if pc is None:
            return False
        inv = self.field.inv(w[pc])
        self._rows.append((pc, [_reduce(self.field, x * inv) for x in w]))
        self.vectors.append(tuple(v))
        return True

    @property
    def full(self) -> bool:
        return len(self._rows) == self.dim


def as_vector(values: Iterable, field: Field) -> tuple:
    return tuple(field.coerce(x) for x in values)


def vector_to_json(v: Sequence, field: Field) -> list[str]:
    return [field.encode(x) for x in v]
