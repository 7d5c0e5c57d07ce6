"""Framed representations of the m-loop quiver.

A point of ``Rep_(n,1)`` is a tuple ``(A_1, ..., A_m, v_1, ..., v_r)`` of
n x n matrices and column vectors in ``k^n``.  The Quot scheme of ``A^m`` is
the locus of stable (the vectors generate ``k^n`` under the matrices) and
commuting tuples, modulo ``GL_n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DuplicateSupport, SingularGauge
from .exactalg import EchelonBasis, Field, Matrix, as_vector, parse_field, vector_to_json


@dataclass(frozen=True)
class FramedRep:
    m: int
    n: int
    r: int
    field: Field
    A: tuple[Matrix, ...]
    V: tuple[tuple, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one loop")
        if self.n < 0:
            raise ValueError("dimension must be non-negative")
        if self.r < 1:
            raise ValueError("framing rank must be at least 1")
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "V", tuple(as_vector(v, self.field) for v in self.V))
        if len(self.A) != self.m:
            raise ValueError(f"expected {self.m} matrices, got {len(self.A)}")
        for a in self.A:
            self.field.check_same(a.field)
            if a.shape != (self.n, self.n):
                raise ValueError(f"matrix of shape {a.shape}, expected {(self.n, self.n)}")
        if len(self.V) != self.r:
            raise ValueError(f"expected {self.r} framing vectors, got {len(self.V)}")
        if any(len(v) != self.n for v in self.V):
            raise ValueError(f"framing vectors must have length {self.n}")

    @classmethod
    def build(cls, A: Sequence, V: Sequence, field: Field, n: int | None = None) -> "FramedRep":
        """Convenience constructor from nested lists."""
        mats = [a if isinstance(a, Matrix) else Matrix(a, field, cols=n) for a in A]
        if n is None:
            n = mats[0].rows
        return cls(len(mats), n, len(V), field, tuple(mats), tuple(V))

    @property
    def rep_space_dim(self) -> int:
        return self.m * self.n ** 2 + self.r * self.n

    def coordinates(self) -> list:
        """Flat coordinates: each A_i row-major, then each v_j."""
        out = []
        for a in self.A:
            out.extend(a.entries())
        for v in self.V:
            out.extend(v)
        return out

    @classmethod
    def from_coordinates(cls, m: int, n: int, r: int, field: Field, coords: Sequence) -> "FramedRep":
        nn = n * n
        if len(coords) != m * nn + r * n:
            raise ValueError("coordinate vector has the wrong length")
        A = tuple(Matrix.from_flat(n, n, coords[k * nn:(k + 1) * nn], field) for k in range(m))
        base = m * nn
        V = tuple(coords[base + j * n: base + (j + 1) * n] for j in range(r))
        return cls(m, n, r, field, A, V)

    def framing_matrix(self) -> Matrix:
        """The n x r matrix whose columns are v_1, ..., v_r."""
        return Matrix.from_columns(self.V, self.field, rows=self.n)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "r": self.r, "field": self.field.tag,
                "A": [a.to_json() for a in self.A],
                "V": [vector_to_json(v, self.field) for v in self.V]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "FramedRep":
        field = parse_field(obj["field"])
        A = tuple(Matrix.from_json(a) for a in obj["A"])
        return cls(int(obj["m"]), int(obj["n"]), int(obj["r"]), field, A,
                   tuple(as_vector(v, field) for v in obj["V"]))


@dataclass(frozen=True)
class GaugeElement:
    g: Matrix

    def __post_init__(self):
        if self.g.rows != self.g.cols or self.g.rank() < self.g.rows:
            raise SingularGauge("gauge element must be an invertible square matrix")

    @property
    def inverse(self) -> Matrix:
        return self.g.inverse()


def commutator(X: Matrix, Y: Matrix) -> Matrix:
    return X @ Y - Y @ X


def commutators(rep: FramedRep) -> list[Matrix]:
    """``[A_i, A_j]`` for all ``i < j``, in lexicographic order of ``(i, j)``."""
    A = rep.A
    return [commutator(A[i], A[j]) for i in range(rep.m) for j in range(i + 1, rep.m)]


def is_commuting(rep: FramedRep) -> bool:
    return all(c.is_zero() for c in commutators(rep))


def span_closure(generators: Sequence[Sequence], matrices: Sequence[Matrix], field: Field,
                 n: int) -> EchelonBasis:
    """Smallest subspace containing ``generators`` and stable under ``matrices``.

    Worklist closure: only vectors that enlarged the span in the previous
    round are pushed through the matrices again, so at most ``n`` rounds run.
    """
    basis = EchelonBasis(field, n)
    frontier = [tuple(v) for v in generators if basis.add(v)]
    while frontier and not basis.full:
        fresh = []
        for w in frontier:
            for M in matrices:
                u = M.apply(w)
                if basis.add(u):
                    fresh.append(u)
        frontier = fresh
    return basis


def is_stable(rep: FramedRep) -> bool:
    """True iff ``v_1, ..., v_r`` generate ``k^n`` as a module over the ``A_i``."""
    if rep.n == 0:
        return True
    return span_closure(rep.V, rep.A, rep.field, rep.n).full


def gauge_act(g: GaugeElement | Matrix, rep: FramedRep) -> FramedRep:
    """``(g A_i g^-1, g v_j)``."""
    if isinstance(g, Matrix):
        g = GaugeElement(g)
    G = g.g
    rep.field.check_same(G.field)
    if G.rows != rep.n:
        raise ValueError(f"gauge element of size {G.rows} acting on dimension {rep.n}")
    Ginv = g.inverse
    return FramedRep(rep.m, rep.n, rep.r, rep.field,
                     tuple(G @ a @ Ginv for a in rep.A),
                     tuple(G.apply(v) for v in rep.V))


def punctual_point(m: int, r: int, field: Field) -> FramedRep:
    """The quotient ``O^r -> O_p^r`` at the origin: n = r, all A_i = 0, v_j = e_j."""
    if m < 1 or r < 1:
        raise ValueError("need m >= 1 and r >= 1")
    I = Matrix.identity(r, field)
    return FramedRep(m, r, r, field, tuple(Matrix.zeros(r, r, field) for _ in range(m)),
                     tuple(I.column(j) for j in range(r)))


def etale_point(m: int, r: int, n: int, supports: Sequence[Sequence], assignment: Sequence[int] | Mapping[int, int],
                field: Field) -> FramedRep:
    """A point supported on ``n`` distinct points of ``A^m``.

    ``supports[k]`` is the k-th point; ``assignment[k]`` is the index of the
    framing vector that generates its copy of ``k``.
    """
    pts = [as_vector(s, field) for s in supports]
    if len(pts) != n:
        raise ValueError(f"expected {n} support points, got {len(pts)}")
    if any(len(p) != m for p in pts):
        raise ValueError(f"support points must have {m} coordinates")
    if len(set(pts)) != n:
        raise DuplicateSupport("support points must be pairwise distinct")
    owner = [assignment[k] for k in range(n)]
    if any(not 0 <= j < r for j in owner):
        raise ValueError("assignment refers to a framing index out of range")
    A = tuple(Matrix.diag([p[i] for p in pts], field) for i in range(m))
    V = tuple(tuple(field.one if owner[k] == j else field.zero for k in range(n)) for j in range(r))
    return FramedRep(m, n, r, field, A, V)
