"""Exhaustive point and deformation counts over small prime fields.

Everything here works on plain integer tuples mod q and deliberately avoids
the rank/kernel code in :mod:`quotmodel.exactalg`, so it can serve as an
independent check on :mod:`quotmodel.tangent`.

Enumeration is an odometer over the coordinates of ``Rep_(n,1)`` (each
``A_i`` row-major, then each ``v_j``), first coordinate most significant.
The space is split into shards by a fixed-length prefix; shards are the
unit of parallelism and of checkpointing.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from itertools import product
from pathlib import Path

from .errors import BudgetExceeded, NonIntegralOrbitCount, NotCommuting, NotStable
from .exactalg import GF, PrimeField, _is_prime
from .quiverrep import FramedRep

DEFAULT_BUDGET = 10 ** 8
BUDGET_ENV = "QUOTMODEL_BUDGET"


def configured_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def gl_order(n: int, q: int) -> int:
    """``|GL_n(F_q)| = prod_{i<n} (q^n - q^i)``."""
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


@dataclass(frozen=True)
class CountResult:
    m: int
    n: int
    r: int
    q: int
    stable_commuting_points: int
    orbit_count: int
    gauge_group_order: int

    def to_json(self) -> dict:
        return asdict(self)


# -- arithmetic on tuple matrices mod q --------------------------------------

def _split(coords, m: int, n: int, r: int):
    nn = n * n
    mats = [tuple(tuple(coords[k * nn + i * n:k * nn + (i + 1) * n]) for i in range(n)) for k in range(m)]
    base = m * nn
    vecs = [tuple(coords[base + j * n:base + (j + 1) * n]) for j in range(r)]
    return mats, vecs


def _mul(X, Y, q: int):
    cols = list(zip(*Y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % q for col in cols) for row in X)


def _add(X, Y, q: int):
    return tuple(tuple((a + b) % q for a, b in zip(r, s)) for r, s in zip(X, Y))


def _sub(X, Y, q: int):
    return tuple(tuple((a - b) % q for a, b in zip(r, s)) for r, s in zip(X, Y))


def _apply(X, v, q: int):
    return tuple(sum(a * b for a, b in zip(row, v)) % q for row in X)


def _commute(mats, q: int) -> bool:
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if _mul(mats[i], mats[j], q) != _mul(mats[j], mats[i], q):
                return False
    return True


def _generates(mats, vecs, n: int, q: int) -> bool:
    """Span closure with a hand-rolled mod-q echelon basis."""
    if n == 0:
        return True
    pivots: list[tuple[int, list[int]]] = []

    def insert(v) -> bool:
        w = list(v)
        for pc, row in pivots:
            a = w[pc]
            if a:
                w = [(x - a * y) % q for x, y in zip(w, row)]
        for pc, x in enumerate(w):
            if x:
                inv = pow(x, -1, q)
                pivots.append((pc, [y * inv % q for y in w]))
                return True
        return False

    frontier = [v for v in vecs if insert(v)]
    while frontier and len(pivots) < n:
        fresh = []
        for v in frontier:
            for X in mats:
                u = _apply(X, v, q)
                if insert(u):
                    fresh.append(u)
        frontier = fresh
    return len(pivots) == n


# -- point counts ------------------------------------------------------------

def _check_params(m: int, n: int, r: int, q: int, budget: int) -> int:
    if not _is_prime(q):
        raise ValueError(f"q = {q} must be prime")
    if m < 1 or n < 0 or r < 1:
        raise ValueError("need m >= 1, n >= 0, r >= 1")
    coords = m * n * n + r * n
    if q ** coords > budget:
        raise BudgetExceeded(f"{q}^{coords} tuples exceed the budget of {budget}")
    return coords


def _layout(coords: int, q: int, max_prefix: int = 3) -> tuple[int, int]:
    prefix = min(max_prefix, coords)
    return prefix, q ** prefix


def _shard_points(args):
    m, n, r, q, prefix, shard = args
    coords = m * n * n + r * n
    head = []
    s = shard
    for _ in range(prefix):
        head.append(s % q)
        s //= q
    head = tuple(reversed(head))
    hits = 0
    for tail in product(range(q), repeat=coords - prefix):
        mats, vecs = _split(head + tail, m, n, r)
        if _commute(mats, q) and _generates(mats, vecs, n, q):
            hits += 1
    return hits


def iter_stable_commuting(m: int, n: int, r: int, q: int, budget: int | None = None):
    """Yield coordinate tuples of every stable commuting point, in odometer order."""
    coords = _check_params(m, n, r, q, configured_budget(budget))
    for x in product(range(q), repeat=coords):
        mats, vecs = _split(x, m, n, r)
        if _commute(mats, q) and _generates(mats, vecs, n, q):
            yield x


def count_quot_points(m: int, n: int, r: int, q: int, budget: int | None = None,
                      workers: int = 1, checkpoint: str | os.PathLike | None = None) -> CountResult:
    """Count F_q-points of the Quot scheme by brute force.

    Counts every stable commuting tuple and divides by ``|GL_n(F_q)|``.  With
    ``checkpoint`` the number of finished shards and the partial count are
    written after every shard and picked up again on restart.
    """
    coords = _check_params(m, n, r, q, configured_budget(budget))
    prefix, nshards = _layout(coords, q)
    done, hits = 0, 0
    ckpt = Path(checkpoint) if checkpoint is not None else None
    if ckpt is not None and ckpt.exists():
        state = json.loads(ckpt.read_text())
        if (state["m"], state["n"], state["r"], state["q"]) != (m, n, r, q):
            raise ValueError("checkpoint belongs to a different (m, n, r, q)")
        done, hits = int(state["index"]), int(state["points"])

    tasks = [(m, n, r, q, prefix, s) for s in range(done, nshards)]
    if workers > 1 and tasks:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_shard_points, tasks)
            for task, h in zip(tasks, results):
                hits += h
                _save(ckpt, m, n, r, q, task[-1] + 1, hits)
    else:
        for task in tasks:
            hits += _shard_points(task)
            _save(ckpt, m, n, r, q, task[-1] + 1, hits)

    order = gl_order(n, q)
    orbits, rem = divmod(hits, order)
    if rem:
        raise NonIntegralOrbitCount(f"{hits} stable points not divisible by |GL_{n}(F_{q})| = {order}")
    return CountResult(m, n, r, q, hits, orbits, order)


def _save(ckpt: Path | None, m, n, r, q, index, points) -> None:
    if ckpt is None:
        return
    ckpt.write_text(json.dumps({"m": m, "n": n, "r": r, "q": q, "index": index, "points": points}))


# -- orbit representatives ---------------------------------------------------

def _gl_elements(n: int, q: int):
    for x in product(range(q), repeat=n * n):
        g = tuple(tuple(x[i * n:(i + 1) * n]) for i in range(n))
        inv = _inverse(g, n, q)
        if inv is not None:
            yield g, inv


def _inverse(g, n: int, q: int):
    aug = [list(g[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for c in range(n):
        pr = next((i for i in range(c, n) if aug[i][c] % q), None)
        if pr is None:
            return None
        aug[c], aug[pr] = aug[pr], aug[c]
        inv = pow(aug[c][c], -1, q)
        aug[c] = [x * inv % q for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                a = aug[i][c]
                aug[i] = [(x - a * y) % q for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def _act(g, ginv, coords, m: int, n: int, r: int, q: int) -> tuple:
    mats, vecs = _split(coords, m, n, r)
    out = []
    for X in mats:
        for row in _mul(_mul(g, X, q), ginv, q):
            out.extend(row)
    for v in vecs:
        out.extend(_apply(g, v, q))
    return tuple(out)


def orbit_representatives(m: int, n: int, r: int, q: int, budget: int | None = None) -> list[tuple]:
    """One coordinate tuple per ``GL_n(F_q)`` orbit of stable commuting points.

    Raises :class:`NonIntegralOrbitCount` if some orbit is not free.
    """
    group = list(_gl_elements(n, q))
    seen: set[tuple] = set()
    reps = []
    for x in iter_stable_commuting(m, n, r, q, budget):
        if x in seen:
            continue
        orbit = {_act(g, gi, x, m, n, r, q) for g, gi in group}
        if len(orbit) != len(group):
            raise NonIntegralOrbitCount(f"orbit of size {len(orbit)} under a group of order {len(group)}")
        seen |= orbit
        reps.append(x)
    return reps


def rep_from_coords(coords, m: int, n: int, r: int, q: int) -> FramedRep:
    return FramedRep.from_coordinates(m, n, r, GF(q), list(coords))


# -- first-order deformations ------------------------------------------------

def _dual_mul(X, Y, q: int):
    """``(X0 + eps X1)(Y0 + eps Y1)`` in ``Mat(F_q[eps]/eps^2)``."""
    (X0, X1), (Y0, Y1) = X, Y
    return _mul(X0, Y0, q), _add(_mul(X0, Y1, q), _mul(X1, Y0, q), q)


def count_first_order_lifts(rep: FramedRep, budget: int | None = None) -> int:
    """Number of ``F_q[eps]``-points over ``rep``, divided by the gauge lifts.

    Every ``(A + eps a, V + eps w)`` is tried; those with all commutators zero
    over the dual numbers are counted, then divided by ``q^(n^2)``, the number
    of gauge elements ``1 + eps xi``.  Stable points have a free action, so
    the result is ``q`` to the tangent dimension.
    """
    if not isinstance(rep.field, PrimeField):
        raise ValueError("lift counting needs a prime field")
    q = rep.field.p
    m, n, r = rep.m, rep.n, rep.r
    base = list(rep.coordinates())
    mats, vecs = _split(base, m, n, r)
    if not _commute(mats, q):
        raise NotCommuting("point does not satisfy [A_i, A_j] = 0")
    if not _generates(mats, vecs, n, q):
        raise NotStable("point is not stable")
    coords = m * n * n + r * n
    limit = configured_budget(budget)
    if q ** coords > limit:
        raise BudgetExceeded(f"{q}^{coords} deformations exceed the budget of {limit}")

    zero = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    lifts = 0
    for delta in product(range(q), repeat=coords):
        dmats, _ = _split(delta, m, n, r)
        dual = list(zip(mats, dmats))
        ok = True
        for i in range(m):
            for j in range(i + 1, m):
                P0, P1 = _dual_mul(dual[i], dual[j], q)
                Q0, Q1 = _dual_mul(dual[j], dual[i], q)
                if _sub(P0, Q0, q) != zero or _sub(P1, Q1, q) != zero:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            lifts += 1
    gauge = q ** (n * n)
    count, rem = divmod(lifts, gauge)
    if rem:
        raise NonIntegralOrbitCount(f"{lifts} lifts not divisible by {gauge} gauge lifts")
    return count


# -- polynomial-count fitting ------------------------------------------------

def digits_polynomial(count: int, q: int) -> list[int]:
    """Base-q digits of ``count``, lowest first: the polynomial ``P`` with ``P(q) = count``
    and all coefficients in ``[0, q)``."""
    out = []
    while count:
        count, d = divmod(count, q)
        out.append(d)
    return out


def fit_count_polynomial(counts: dict[int, int]) -> list[int] | None:
    """Recover an integer polynomial reproducing every ``(q, count)`` pair.

    The candidate is read off as the base-q digits at the largest q, which is
    exact whenever the true coefficients lie in ``[0, q_max)``; it is then
    checked against the other fields.  Returns ``None`` if no such polynomial
    reproduces all the counts.
    """
    qmax = max(counts)
    poly = digits_polynomial(counts[qmax], qmax)
    for q, c in counts.items():
        if sum(a * q ** k for k, a in enumerate(poly)) != c:
            return None
    return poly
