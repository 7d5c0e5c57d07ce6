"""Independent reference computations used to freeze expected values.

None of these go through the Jacobian/Hessian builders they check.
"""
from __future__ import annotations

from itertools import product

from quotmodel.exactalg import Field, Matrix, PrimeField


def taylor_coefficients(fn, degree: int, field: Field) -> list:
    """Coefficients of the polynomial ``t -> fn(t)`` of known ``degree``.

    Samples ``fn`` at ``t = 0..degree`` and runs exact Lagrange/Newton
    interpolation; requires ``degree < char`` for prime fields.
    """
    ts = list(range(degree + 1))
    ys = [field.coerce(fn(t)) for t in ts]
    # Newton divided differences
    coef = list(ys)
    for j in range(1, len(ts)):
        for i in range(len(ts) - 1, j - 1, -1):
            num = coef[i] - coef[i - 1]
            den = field.inv(field.coerce(ts[i] - ts[i - j]))
            coef[i] = _red(field, num * den)
    # expand Newton form into monomial coefficients
    out = [field.zero] * (degree + 1)
    basis = [field.one]  # running product (t - t_0)...(t - t_{k-1})
    for k, c in enumerate(coef):
        for d, b in enumerate(basis):
            out[d] = _red(field, out[d] + c * b)
        nxt = [field.zero] * (len(basis) + 1)
        for d, b in enumerate(basis):
            nxt[d + 1] = _red(field, nxt[d + 1] + b)
            nxt[d] = _red(field, nxt[d] - ts[k] * b)
        basis = nxt
    return out


def _red(field, x):
    return x % field.p if isinstance(field, PrimeField) else x


def brute_force_rank(M: Matrix) -> int:
    """Rank over a prime field as ``log_q |image|``, by enumerating all inputs."""
    q = M.field.p
    image = {M.apply(x) for x in product(range(q), repeat=M.cols)}
    size, rank = len(image), 0
    while size > 1:
        assert size % q == 0
        size //= q
        rank += 1
    return rank


def word_span_dim(mats, vecs, field: Field, n: int) -> int:
    """Dimension of the span of all words of length <= n in ``mats`` applied to ``vecs``.

    Enumerates words explicitly instead of running a worklist closure.
    """
    if n == 0:
        return 0
    vectors = list(vecs)
    layer = list(vecs)
    for _ in range(n):
        layer = [M.apply(v) for v in layer for M in mats]
        vectors.extend(layer)
    if not vectors:
        return 0
    return Matrix.from_columns(vectors, field, rows=n).rank()
