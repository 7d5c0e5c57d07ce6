"""ADHM matrix model of framed sheaves on P^2 and the j = 0 embedding.

A datum is ``(B1, B2, i, j)`` with ``B1, B2`` n x n, ``i`` n x r and ``j``
r x n.  Points of the framed moduli space are stable solutions of
``[B1, B2] + i j = 0`` modulo ``GL_n``; the Quot scheme of ``A^2`` sits
inside as the locus ``j = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import NotCommuting, NotOnVariety, NotStable
from .exactalg import Field, Matrix, _reduce, parse_field
from .quiverrep import FramedRep, GaugeElement, commutator, is_commuting, is_stable, span_closure


@dataclass(frozen=True)
class ADHMDatum:
    n: int
    r: int
    field: Field
    B1: Matrix
    B2: Matrix
    i: Matrix
    j: Matrix

    def __post_init__(self):
        n, r = self.n, self.r
        for name, M, shape in (("B1", self.B1, (n, n)), ("B2", self.B2, (n, n)),
                               ("i", self.i, (n, r)), ("j", self.j, (r, n))):
            self.field.check_same(M.field)
            if M.shape != shape:
                raise ValueError(f"{name} has shape {M.shape}, expected {shape}")

    @property
    def parameter_dim(self) -> int:
        return 2 * self.n ** 2 + 2 * self.n * self.r

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "field": self.field.tag,
                "B1": self.B1.to_json(), "B2": self.B2.to_json(),
                "i": self.i.to_json(), "j": self.j.to_json()}

    @classmethod
    def from_json(cls, obj: Mapping) -> "ADHMDatum":
        return cls(int(obj["n"]), int(obj["r"]), parse_field(obj["field"]),
                   *(Matrix.from_json(obj[k]) for k in ("B1", "B2", "i", "j")))


def moment(d: ADHMDatum) -> Matrix:
    """``[B1, B2] + i j``."""
    return commutator(d.B1, d.B2) + d.i @ d.j


def is_stable_adhm(d: ADHMDatum) -> bool:
    """No proper subspace contains ``im i`` and is preserved by ``B1`` and ``B2``."""
    if d.n == 0:
        return True
    cols = [d.i.column(c) for c in range(d.r)]
    return span_closure(cols, (d.B1, d.B2), d.field, d.n).full


def gauge_act_adhm(g: GaugeElement | Matrix, d: ADHMDatum) -> ADHMDatum:
    """``(g B1 g^-1, g B2 g^-1, g i, j g^-1)``."""
    if isinstance(g, Matrix):
        g = GaugeElement(g)
    G, Gi = g.g, g.inverse
    return ADHMDatum(d.n, d.r, d.field, G @ d.B1 @ Gi, G @ d.B2 @ Gi, G @ d.i, d.j @ Gi)


def moment_jacobian(d: ADHMDatum) -> Matrix:
    """Linearization of the moment map at ``d``.

    Columns: ``B1``, ``B2`` (row-major), ``i`` (row-major, n x r), ``j``
    (row-major, r x n).  Rows: entries of the n x n moment, row-major.
    """
    n, r, f = d.n, d.r, d.field
    nn = n * n
    ncols = d.parameter_dim
    rows = [[f.zero] * ncols for _ in range(nn)]

    def bump(c, dd, col, x):
        if x:
            row = rows[c * n + dd]
            row[col] = _reduce(f, row[col] + x)

    for a in range(n):
        for b in range(n):
            # [E_ab, B2]: row a gets B2[b, :], column b loses B2[:, a]
            col = a * n + b
            for q in range(n):
                bump(a, q, col, d.B2[b, q])
                bump(q, b, col, -d.B2[q, a])
            # [B1, E_ab]: column b gets B1[:, a], row a loses B1[b, :]
            col = nn + a * n + b
            for q in range(n):
                bump(q, b, col, d.B1[q, a])
                bump(a, q, col, -d.B1[b, q])
    base_i = 2 * nn
    for a in range(n):
        for s in range(r):
            # delta i = E_as: (E_as j)_{a, q} = j[s, q]
            col = base_i + a * r + s
            for q in range(n):
                bump(a, q, col, d.j[s, q])
    base_j = 2 * nn + n * r
    for s in range(r):
        for b in range(n):
            # delta j = E_sb: (i E_sb)_{q, b} = i[q, s]
            col = base_j + s * n + b
            for q in range(n):
                bump(q, b, col, d.i[q, s])
    return Matrix(rows, f, cols=ncols)


def _require_stable_solution(d: ADHMDatum) -> None:
    if not moment(d).is_zero():
        raise NotOnVariety("datum does not satisfy [B1, B2] + i j = 0")
    if not is_stable_adhm(d):
        raise NotStable("datum is not stable")


def moment_jacobian_rank(d: ADHMDatum) -> int:
    _require_stable_solution(d)
    return moment_jacobian(d).rank()


def adhm_tangent_dim(d: ADHMDatum) -> int:
    """Tangent dimension of the framed moduli space at ``d``: ``dim ker(d mu) - n^2``."""
    _require_stable_solution(d)
    return d.parameter_dim - moment_jacobian(d).rank() - d.n ** 2


def eta_embed(rep: FramedRep) -> ADHMDatum:
    """Send a two-loop Quot point to ``(A_1, A_2, [v_1 ... v_r], 0)``."""
    if rep.m != 2:
        raise ValueError(f"the embedding needs m = 2, got m = {rep.m}")
    if not is_commuting(rep):
        raise NotCommuting("point does not satisfy [A_1, A_2] = 0")
    if not is_stable(rep):
        raise NotStable("point is not stable")
    return ADHMDatum(rep.n, rep.r, rep.field, rep.A[0], rep.A[1], rep.framing_matrix(),
                     Matrix.zeros(rep.r, rep.n, rep.field))


def forget_j(d: ADHMDatum) -> FramedRep:
    """Inverse of :func:`eta_embed` on the ``j = 0`` locus."""
    return FramedRep(2, d.n, d.r, d.field, (d.B1, d.B2), tuple(d.i.column(c) for c in range(d.r)))


def framed_vs_quot_dims(n: int, r: int) -> tuple[int, int, int]:
    """``(dim Fr_{r,n}(P^2), dim Quot_{A^2}(O^r, n), codimension)``."""
    framed = 2 * n * r
    quot = (r + 1) * n
    codim = framed - quot
    assert codim == n * (r - 1)
    return framed, quot, codim
