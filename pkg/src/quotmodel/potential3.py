"""The cubic potential ``f = Tr A_1 [A_2, A_3]`` on three-loop framed reps.

``f`` is an alternating trilinear function of ``(A_1, A_2, A_3)`` and does
not involve the framing vectors, so its critical locus is the commuting
locus.  Gradient and Hessian use the coordinates of
:meth:`FramedRep.coordinates`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import WrongLoopCount
from .exactalg import FieldScalar, Matrix, _reduce
from .quiverrep import FramedRep, commutator
from .tangent import _require_quot_point, relation_jacobian

# Sign of (i, j, k) as a permutation of (0, 1, 2).
_SIGN = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (1, 0, 2): -1, (0, 2, 1): -1, (2, 1, 0): -1}


def _check(rep: FramedRep) -> None:
    if rep.m != 3:
        raise WrongLoopCount(f"the potential needs m = 3, got m = {rep.m}")


@dataclass(frozen=True)
class PotentialPoint:
    rep: FramedRep
    value: FieldScalar
    gradient: tuple
    hessian: Matrix

    @classmethod
    def at(cls, rep: FramedRep) -> "PotentialPoint":
        return cls(rep, potential_value(rep), potential_gradient(rep), hessian(rep))


def potential_value(rep: FramedRep) -> FieldScalar:
    _check(rep)
    A1, A2, A3 = rep.A
    return FieldScalar((A1 @ commutator(A2, A3)).trace(), rep.field)


def potential_gradient(rep: FramedRep) -> tuple:
    """Partial derivatives in each coordinate; the framing block is zero."""
    _check(rep)
    A1, A2, A3 = rep.A
    f = rep.field
    grad = []
    for C in (commutator(A2, A3), commutator(A3, A1), commutator(A1, A2)):
        grad.extend(C.T.entries())
    grad.extend([f.zero] * (rep.r * rep.n))
    return tuple(grad)


def hessian(rep: FramedRep) -> Matrix:
    """Exact matrix of second partials of ``f`` at ``rep``.

    For ``i != j`` with third index ``k`` the block entry at
    ``((A_i)_ab, (A_j)_cd)`` is ``sign(i,j,k) * (delta_bc (A_k)_da - delta_da (A_k)_bc)``;
    diagonal blocks and everything touching the framing vanish.
    """
    _check(rep)
    n, f = rep.n, rep.field
    nn = n * n
    size = rep.rep_space_dim
    H = [[f.zero] * size for _ in range(size)]
    for (i, j, k), sign in _SIGN.items():
        Ak = rep.A[k]
        for a in range(n):
            for b in range(n):
                row = H[i * nn + a * n + b]
                # delta_bc term: c = b, any d
                for d in range(n):
                    x = Ak[d, a]
                    if x:
                        col = j * nn + b * n + d
                        row[col] = _reduce(f, row[col] + sign * x)
                # delta_da term: d = a, any c
                for c in range(n):
                    x = Ak[b, c]
                    if x:
                        col = j * nn + c * n + a
                        row[col] = _reduce(f, row[col] - sign * x)
    return Matrix(H, f, cols=size)


def kernels_equal(H: Matrix, J: Matrix) -> bool:
    """Whether ``ker H == ker J``, i.e. the two row spaces coincide."""
    rh, rj = H.rank(), J.rank()
    return rh == rj == H.vstack(J).rank()


def crit_equals_commuting_tangent(rep: FramedRep) -> bool:
    """Compare the tangent space of ``{df = 0}`` with that of the commuting locus at ``rep``."""
    _check(rep)
    _require_quot_point(rep)
    return kernels_equal(hessian(rep), relation_jacobian(rep))
