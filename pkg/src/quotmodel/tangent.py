"""Zariski tangent spaces of the Quot scheme of A^m at matrix points.

The tangent space at a stable commuting tuple is computed in ambient
``Rep_(n,1)`` coordinates as ``ker(d2) / im(d1)``, where ``d1`` is the
infinitesimal gauge action and ``d2`` the linearized commutator relations.
Coordinates are ordered as in :meth:`FramedRep.coordinates`; relation rows
are ordered lexicographically in ``((i, j), (c, d))``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum

from .errors import DimensionMismatch, NotCommuting, NotStable
from .exactalg import Matrix, _reduce
from .quiverrep import FramedRep, is_commuting, is_stable


class Verdict(str, Enum):
    SMOOTH = "Smooth"
    SINGULAR = "Singular"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class TangentReport:
    ambient_dim: int
    rep_space_dim: int
    jacobian_rank: int
    tangent_dim: int
    reference_dim: int | None
    verdict: Verdict

    def to_json(self, seed: int | None = None) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        d["seed"] = seed
        return d


def ambient_dim(m: int, n: int, r: int) -> int:
    """Dimension of the smooth non-commutative Quot scheme, ``(m-1)n^2 + rn``."""
    return (m - 1) * n * n + r * n


def gauge_differential(rep: FramedRep) -> Matrix:
    """Matrix of ``xi -> ([xi, A_1], ..., [xi, A_m], xi v_1, ..., xi v_r)``.

    Columns are indexed by ``xi = E_ab`` (row-major), rows by Rep coordinates.
    """
    n, f = rep.n, rep.field
    nn = n * n
    rows = rep.rep_space_dim
    cols = [[f.zero] * rows for _ in range(nn)]
    for a in range(n):
        for b in range(n):
            col = cols[a * n + b]
            for k, A in enumerate(rep.A):
                base = k * nn
                # [E_ab, A]_{cd} = delta_ca A_bd - A_ca delta_bd
                for d in range(n):
                    col[base + a * n + d] = _reduce(f, col[base + a * n + d] + A[b, d])
                for c in range(n):
                    col[base + c * n + b] = _reduce(f, col[base + c * n + b] - A[c, a])
            base = rep.m * nn
            for j, v in enumerate(rep.V):
                col[base + j * n + a] = v[b]
    return Matrix.from_columns(cols, f, rows=rows) if nn else Matrix.zeros(rows, 0, f)


def relation_jacobian(rep: FramedRep) -> Matrix:
    """Linearization of ``([A_i, A_j])_{i<j}`` at ``rep``.

    Shape ``(m(m-1)/2 * n^2) x (m n^2 + r n)``; the framing columns are zero.
    """
    m, n, f = rep.m, rep.n, rep.field
    nn = n * n
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    ncols = rep.rep_space_dim
    rows = [[f.zero] * ncols for _ in range(len(pairs) * nn)]
    for p, (i, j) in enumerate(pairs):
        rbase = p * nn
        for k, other, sign in ((i, rep.A[j], 1), (j, rep.A[i], -1)):
            # d/d(A_k)_ab of [A_i, A_j]: [E_ab, A_j] if k == i, -[E_ab, A_i] if k == j
            cbase = k * nn
            for a in range(n):
                for b in range(n):
                    col = cbase + a * n + b
                    for d in range(n):
                        x = other[b, d]
                        if x:
                            row = rows[rbase + a * n + d]
                            row[col] = _reduce(f, row[col] + sign * x)
                    for c in range(n):
                        x = other[c, a]
                        if x:
                            row = rows[rbase + c * n + b]
                            row[col] = _reduce(f, row[col] - sign * x)
    return Matrix(rows, f, cols=ncols)


def _require_quot_point(rep: FramedRep) -> None:
    if not is_stable(rep):
        raise NotStable("point is not stable: the framing vectors do not generate k^n")
    if not is_commuting(rep):
        raise NotCommuting("point does not satisfy [A_i, A_j] = 0")


def tangent_dim(rep: FramedRep) -> int:
    _require_quot_point(rep)
    return rep.rep_space_dim - relation_jacobian(rep).rank() - rep.n ** 2


def classify_point(rep: FramedRep, expected_dim: int | None = None) -> TangentReport:
    """Tangent dimension at ``rep`` compared with a known local dimension.

    ``expected_dim`` is the dimension of the Quot scheme near ``rep`` when
    known (e.g. ``(r+1)n`` for m = 2).  Tangent dimension never drops below
    it, so a smaller tangent space raises :class:`DimensionMismatch`.
    """
    _require_quot_point(rep)
    jr = relation_jacobian(rep).rank()
    td = rep.rep_space_dim - jr - rep.n ** 2
    if expected_dim is None:
        verdict = Verdict.UNKNOWN
    elif expected_dim > td:
        raise DimensionMismatch(f"expected dimension {expected_dim} exceeds tangent dimension {td}")
    elif expected_dim == td:
        verdict = Verdict.SMOOTH
    else:
        verdict = Verdict.SINGULAR
    return TangentReport(ambient_dim(rep.m, rep.n, rep.r), rep.rep_space_dim, jr, td, expected_dim, verdict)


def known_local_dim(m: int, n: int, r: int) -> int | None:
    """Dimension of the Quot scheme where it is known to be irreducible, else None."""
    if n == 0:
        return 0
    if n == 1:
        return m - 1 + r
    if m == 1:
        return r * n
    if m == 2:
        return (r + 1) * n
    return None
