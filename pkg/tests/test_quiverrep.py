import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import word_span_dim
from quotmodel.errors import DuplicateSupport, SingularGauge
from quotmodel.exactalg import GF, QQ, Matrix
from quotmodel.quiverrep import (FramedRep, GaugeElement, commutators, etale_point, gauge_act, is_commuting,
                                 is_stable, punctual_point, span_closure)
from quotmodel.sampling import (random_invertible, random_rep, random_stable_commuting_rep, task_rng)

E12 = [[0, 1], [0, 0]]
E21 = [[0, 0], [1, 0]]


def test_commutators_zero_matrices():
    rep = FramedRep.build([Matrix.zeros(3, 3, QQ)] * 3, [(1, 0, 0)], QQ)
    cs = commutators(rep)
    assert len(cs) == 3 and all(c.is_zero() for c in cs)


def test_commutators_scalars():
    rep = FramedRep.build([[[2]], [[5]], [[-1]], [[7]]], [(1,)], QQ)
    assert len(commutators(rep)) == 6
    assert is_commuting(rep)


def test_commutator_elementary():
    rep = FramedRep.build([E12, E21], [(1, 0)], QQ)
    (c,) = commutators(rep)
    assert c == Matrix([[1, 0], [0, -1]], QQ)
    assert not is_commuting(rep)


def test_commuting_diagonal(field):
    rep = FramedRep.build([Matrix.diag([1, 2, 3], field), Matrix.diag([0, 4, 4], field)], [(1, 1, 1)], field)
    assert is_commuting(rep)


def test_empty_rep_is_commuting_and_stable():
    rep = FramedRep.build([Matrix.zeros(0, 0, QQ)] * 2, [()], QQ, n=0)
    assert is_commuting(rep) and is_stable(rep)


def test_stable_examples():
    assert is_stable(punctual_point(2, 3, QQ))
    assert not is_stable(FramedRep.build([Matrix.identity(2, QQ)], [(0, 0)], QQ))
    jordan = [[0, 0], [1, 0]]  # A e1 = e2
    assert is_stable(FramedRep.build([jordan], [(1, 0)], QQ))
    assert not is_stable(FramedRep.build([jordan], [(0, 1)], QQ))


def test_span_closure_rounds():
    # a single nilpotent Jordan block needs n - 1 enlargements
    n = 5
    N = Matrix([[1 if i == j + 1 else 0 for j in range(n)] for i in range(n)], QQ)
    basis = span_closure([(1, 0, 0, 0, 0)], [N], QQ, n)
    assert basis.full and len(basis.vectors) == n


def test_gauge_identity_and_scalar(field):
    rng = task_rng(3)
    rep = random_rep(2, 3, 2, field, rng)
    assert gauge_act(Matrix.identity(3, field), rep) == rep
    lam = field.coerce(3)
    out = gauge_act(Matrix.identity(3, field).scale(lam), rep)
    assert out.A == rep.A
    assert out.V == tuple(tuple(x * lam % field.p if field != QQ else x * lam for x in v) for v in rep.V)


def test_singular_gauge():
    with pytest.raises(SingularGauge):
        GaugeElement(Matrix([[1, 2], [2, 4]], QQ))
    with pytest.raises(SingularGauge):
        gauge_act(Matrix([[1, 1], [1, 1]], GF(3)), punctual_point(1, 2, GF(3)))


def test_punctual_point_shape():
    p = punctual_point(2, 2, QQ)
    assert (p.m, p.n, p.r) == (2, 2, 2)
    assert all(a.is_zero() for a in p.A)
    assert p.V == ((1, 0), (0, 1))
    o = punctual_point(3, 1, QQ)
    assert (o.n, o.r) == (1, 1) and o.V == ((1,),)


@pytest.mark.parametrize("m,r", [(1, 1), (2, 2), (3, 1), (3, 3), (4, 2)])
def test_punctual_point_is_quot_point(m, r):
    p = punctual_point(m, r, QQ)
    assert is_stable(p) and is_commuting(p)


def test_etale_point_examples():
    one = etale_point(3, 1, 1, [(2, 3, 4)], [0], QQ)
    assert one.A == (Matrix([[2]], QQ), Matrix([[3]], QQ), Matrix([[4]], QQ))
    assert is_stable(one)
    rep = etale_point(2, 1, 2, [(0, 0), (1, 1)], [0, 0], QQ)
    assert rep.A[0] == rep.A[1] == Matrix.diag([0, 1], QQ)
    assert rep.V == ((1, 1),)
    assert is_stable(rep) and is_commuting(rep)


def test_etale_duplicate_support():
    with pytest.raises(DuplicateSupport):
        etale_point(2, 1, 2, [(0, 1), (0, 1)], [0, 0], QQ)


def test_json_round_trip(field):
    rep = random_rep(3, 2, 2, field, task_rng(8))
    again = FramedRep.from_json(rep.to_json())
    assert again == rep
    assert set(rep.to_json()) == {"m", "n", "r", "field", "A", "V"}


def test_coordinates_round_trip():
    rep = random_rep(2, 3, 2, QQ, task_rng(2))
    assert FramedRep.from_coordinates(2, 3, 2, QQ, rep.coordinates()) == rep


def test_bad_shapes():
    with pytest.raises(ValueError):
        FramedRep(2, 2, 1, QQ, (Matrix.identity(2, QQ),), ((1, 0),))
    with pytest.raises(ValueError):
        FramedRep(1, 2, 1, QQ, (Matrix.identity(2, QQ),), ((1, 0, 0),))


seeds = st.integers(0, 2**32 - 1)
sizes = st.tuples(st.integers(1, 3), st.integers(0, 3), st.integers(1, 2))


@given(seeds, sizes, st.sampled_from([QQ, GF(2), GF(5)]))
def test_stability_matches_word_enumeration(seed, size, field):
    m, n, r = size
    rep = random_rep(m, n, r, field, task_rng(seed))
    assert is_stable(rep) == (word_span_dim(rep.A, rep.V, field, n) == n)


@given(seeds, sizes, st.sampled_from([QQ, GF(3)]))
def test_predicates_gauge_invariant(seed, size, field):
    m, n, r = size
    rng = task_rng(seed)
    for rep in (random_rep(m, n, r, field, rng), random_stable_commuting_rep(m, n, r, field, rng)):
        moved = gauge_act(random_invertible(n, field, rng), rep)
        assert is_stable(moved) == is_stable(rep)
        assert is_commuting(moved) == is_commuting(rep)


@given(seeds, sizes, st.sampled_from([QQ, GF(7)]))
def test_commutators_equivariant(seed, size, field):
    m, n, r = size
    rng = task_rng(seed)
    rep = random_rep(m, n, r, field, rng)
    g = random_invertible(n, field, rng)
    gi = g.inverse()
    for before, after in zip(commutators(rep), commutators(gauge_act(g, rep))):
        assert after == g @ before @ gi


@given(seeds, sizes, st.sampled_from([QQ, GF(5)]))
def test_sampler_outputs_quot_points(seed, size, field):
    m, n, r = size
    rep = random_stable_commuting_rep(m, n, r, field, task_rng(seed))
    assert is_stable(rep) and is_commuting(rep)
