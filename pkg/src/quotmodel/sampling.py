"""Seeded random points for property scans.

Every sampler takes a :class:`numpy.random.Generator`.  :func:`task_rng`
derives an independent generator from ``(seed, task index)`` so a batch of
samples is reproducible no matter how it is split across workers.
"""
from __future__ import annotations

import numpy as np

from .adhm2 import ADHMDatum, is_stable_adhm
from .exactalg import Field, Matrix, PrimeField, kernel_basis, _reduce
from .quiverrep import FramedRep, etale_point, gauge_act, is_stable

BOX = 5  # rational entries are drawn from [-BOX, BOX]


def task_rng(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def random_matrix(rows: int, cols: int, field: Field, rng, box: int = BOX) -> Matrix:
    return Matrix([[field.random(rng, box) for _ in range(cols)] for _ in range(rows)], field, cols=cols)


def random_vector(n: int, field: Field, rng, box: int = BOX) -> tuple:
    return tuple(field.random(rng, box) for _ in range(n))


def random_invertible(n: int, field: Field, rng, box: int = BOX) -> Matrix:
    while True:
        g = random_matrix(n, n, field, rng, box)
        if g.rank() == n:
            return g


def random_rep(m: int, n: int, r: int, field: Field, rng, box: int = BOX) -> FramedRep:
    return FramedRep(m, n, r, field, tuple(random_matrix(n, n, field, rng, box) for _ in range(m)),
                     tuple(random_vector(n, field, rng, box) for _ in range(r)))


def random_stable_rep(m: int, n: int, r: int, field: Field, rng) -> FramedRep:
    while True:
        rep = random_rep(m, n, r, field, rng)
        if is_stable(rep):
            return rep


def _distinct_points(count: int, dim: int, field: Field, rng) -> list[tuple]:
    if isinstance(field, PrimeField) and field.p ** dim < count:
        raise ValueError(f"cannot find {count} distinct points in F_{field.p}^{dim}")
    box = max(BOX, count)
    seen: list[tuple] = []
    while len(seen) < count:
        pt = tuple(field.random(rng, box) for _ in range(dim))
        if pt not in seen:
            seen.append(pt)
    return seen


def random_etale_point(m: int, n: int, r: int, field: Field, rng, conjugate: bool = True) -> FramedRep:
    """Distinct supports, random framing assignment, optionally hidden by a random gauge."""
    supports = _distinct_points(n, m, field, rng)
    assignment = [int(rng.integers(0, r)) for _ in range(n)]
    rep = etale_point(m, r, n, supports, assignment, field)
    if conjugate and n:
        rep = gauge_act(random_invertible(n, field, rng), rep)
    return rep


def _poly_in(C: Matrix, coeffs) -> Matrix:
    n, f = C.rows, C.field
    acc = Matrix.zeros(n, n, f)
    power = Matrix.identity(n, f)
    for c in coeffs:
        acc = acc + power.scale(c)
        power = power @ C
    return acc


def _commuting_block(m: int, size: int, field: Field, rng) -> list[Matrix]:
    """``m`` commuting ``size x size`` matrices of a randomly chosen local type."""
    kind = rng.choice(["poly", "nilpotent", "scalar"])
    shifts = [field.random(rng) for _ in range(m)]
    if kind == "scalar" or size == 1:
        return [Matrix.identity(size, field).scale(s) for s in shifts]
    if kind == "poly":
        C = random_matrix(size, size, field, rng)
        base = [_poly_in(C, [field.random(rng) for _ in range(size)]) for _ in range(m)]
        base[0] = C
    else:
        # polynomials without constant term in a nilpotent Jordan block
        N = Matrix([[field.one if j == i + 1 else field.zero for j in range(size)] for i in range(size)], field)
        base = [_poly_in(N, [field.zero] + [field.random(rng) for _ in range(size - 1)]) for _ in range(m)]
    return [b + Matrix.identity(size, field).scale(s) for b, s in zip(base, shifts)]


def _block_diag(blocks: list[Matrix], field: Field) -> Matrix:
    n = sum(b.rows for b in blocks)
    rows = [[field.zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[off + i][off + j] = b[i, j]
        off += b.rows
    return Matrix(rows, field, cols=n)


def random_commuting_matrices(m: int, n: int, field: Field, rng) -> list[Matrix]:
    """Direct sum of random local commuting blocks, conjugated by a random gauge."""
    if n == 0:
        return [Matrix.zeros(0, 0, field) for _ in range(m)]
    sizes = []
    left = n
    while left:
        s = int(rng.integers(1, left + 1))
        sizes.append(s)
        left -= s
    per_block = [_commuting_block(m, s, field, rng) for s in sizes]
    mats = [_block_diag([blk[i] for blk in per_block], field) for i in range(m)]
    g = random_invertible(n, field, rng)
    gi = g.inverse()
    return [g @ a @ gi for a in mats]


def random_stable_commuting_rep(m: int, n: int, r: int, field: Field, rng,
                                max_tries: int = 200) -> FramedRep:
    """A stable commuting tuple, drawn from a mix of local types.

    Falls back to an étale point if the mixed sampler keeps producing
    unstable tuples (e.g. scalar blocks with too few framing vectors).
    """
    for _ in range(max_tries):
        A = random_commuting_matrices(m, n, field, rng)
        V = tuple(random_vector(n, field, rng) for _ in range(r))
        rep = FramedRep(m, n, r, field, tuple(A), V)
        if is_stable(rep):
            return rep
    return random_etale_point(m, n, r, field, rng)


def random_adhm_solution(n: int, r: int, field: Field, rng, max_tries: int = 200) -> ADHMDatum:
    """A stable solution of ``[B1, B2] + i j = 0``.

    ``B1`` and ``i`` are drawn at random; ``(B2, j)`` is a random element of
    the kernel of the linear map ``(B2, j) -> [B1, B2] + i j``.
    """
    nn = n * n
    for _ in range(max_tries):
        B1 = random_matrix(n, n, field, rng)
        i = random_matrix(n, r, field, rng)
        # columns: B2 entries row-major, then j entries row-major (r x n)
        cols = nn + r * n
        rows = [[field.zero] * cols for _ in range(nn)]
        for a in range(n):
            for b in range(n):
                col = a * n + b
                # [B1, E_ab] = B1[:, a] into column b minus B1[b, :] into row a
                for q in range(n):
                    rows[q * n + b][col] = _reduce(field, rows[q * n + b][col] + B1[q, a])
                    rows[a * n + q][col] = _reduce(field, rows[a * n + q][col] - B1[b, q])
        for s in range(r):
            for b in range(n):
                col = nn + s * n + b
                for q in range(n):
                    rows[q * n + b][col] = _reduce(field, rows[q * n + b][col] + i[q, s])
        basis = kernel_basis(Matrix(rows, field, cols=cols))
        x = [field.zero] * cols
        for vec in basis:
            c = field.random(rng)
            if c:
                x = [_reduce(field, u + c * w) for u, w in zip(x, vec)]
        B2 = Matrix.from_flat(n, n, x[:nn], field)
        j = Matrix.from_flat(r, n, x[nn:], field)
        d = ADHMDatum(n, r, field, B1, B2, i, j)
        if is_stable_adhm(d):
            return d
    raise RuntimeError("failed to sample a stable ADHM solution")
