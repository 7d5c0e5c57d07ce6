import json

import pytest

from quotmodel.enumerate_oracle import (CountResult, count_first_order_lifts, count_quot_points,
                                        digits_polynomial, fit_count_polynomial, gl_order, iter_stable_commuting,
                                        orbit_representatives, rep_from_coords)
from quotmodel.errors import BudgetExceeded, NotStable
from quotmodel.exactalg import GF, Matrix
from quotmodel.quiverrep import FramedRep, is_commuting, is_stable, punctual_point

# Exhaustive counts over F_2, frozen from the first oracle run.  For r = 1 they
# agree with the known classes L^4 + L^3 of Hilb^2(A^2) and L^2 of Hilb^1(A^2).
HILB2_A2_F2 = 24


def test_gl_order():
    assert [gl_order(n, 2) for n in range(4)] == [1, 1, 6, 168]
    assert gl_order(2, 3) == 48


@pytest.mark.parametrize("m,r,q", [(1, 1, 2), (1, 2, 3), (2, 1, 2), (2, 2, 3), (3, 1, 2), (3, 2, 2), (2, 2, 2)])
def test_n1_closed_formula(m, r, q):
    res = count_quot_points(m, 1, r, q)
    assert res.orbit_count == q ** m * (q ** r - 1) // (q - 1)
    assert res.stable_commuting_points == res.orbit_count * res.gauge_group_order


def test_affine_line_f2():
    assert count_quot_points(1, 1, 1, 2).orbit_count == 2


def test_hilb2_a2_f2():
    res = count_quot_points(2, 2, 1, 2)
    assert res == CountResult(2, 2, 1, 2, HILB2_A2_F2 * 6, HILB2_A2_F2, 6)


def test_n0_single_point():
    assert count_quot_points(3, 0, 2, 5).orbit_count == 1


def test_budget():
    with pytest.raises(BudgetExceeded):
        count_quot_points(2, 2, 2, 3, budget=1000)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("QUOTMODEL_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        count_quot_points(2, 1, 2, 2)


def test_workers_do_not_change_result():
    assert count_quot_points(2, 2, 1, 2, workers=2) == count_quot_points(2, 2, 1, 2)


def test_checkpoint_resume(tmp_path):
    ckpt = tmp_path / "ckpt.json"
    full = count_quot_points(1, 2, 2, 2)
    # pretend shards 0..3 (prefixes up to 011) were already done
    partial = sum(1 for x in iter_stable_commuting(1, 2, 2, 2) if x[:3] <= (0, 1, 1))
    ckpt.write_text(json.dumps({"m": 1, "n": 2, "r": 2, "q": 2, "index": 4, "points": partial}))
    assert count_quot_points(1, 2, 2, 2, checkpoint=ckpt) == full
    state = json.loads(ckpt.read_text())
    assert state["index"] == 8 and state["points"] == full.stable_commuting_points


def test_checkpoint_mismatch(tmp_path):
    ckpt = tmp_path / "ckpt.json"
    ckpt.write_text(json.dumps({"m": 2, "n": 1, "r": 1, "q": 2, "index": 0, "points": 0}))
    with pytest.raises(ValueError):
        count_quot_points(1, 1, 1, 2, checkpoint=ckpt)


def test_iter_agrees_with_library_predicates():
    for coords in iter_stable_commuting(2, 2, 1, 2):
        rep = rep_from_coords(coords, 2, 2, 1, 2)
        assert is_stable(rep) and is_commuting(rep)
    assert sum(1 for _ in iter_stable_commuting(2, 2, 1, 2)) == HILB2_A2_F2 * 6


def test_orbit_representatives_count():
    assert len(orbit_representatives(2, 2, 1, 2)) == HILB2_A2_F2


def test_lifts_punctual():
    assert count_first_order_lifts(punctual_point(2, 2, GF(2))) == 2 ** 8


def test_lifts_n1():
    rep = FramedRep.build([Matrix([[1]], GF(2)), Matrix([[0]], GF(2))], [(1,)], GF(2))
    assert count_first_order_lifts(rep) == 4


def test_lifts_unstable():
    rep = FramedRep.build([Matrix.zeros(2, 2, GF(2))] * 2, [(1, 0)], GF(2))
    with pytest.raises(NotStable):
        count_first_order_lifts(rep)


def test_lifts_budget():
    with pytest.raises(BudgetExceeded):
        count_first_order_lifts(punctual_point(2, 2, GF(2)), budget=100)


def test_digits_and_fit():
    assert digits_polynomial(12, 2) == [0, 0, 1, 1]
    counts = {q: q ** 2 * (q ** 2 - 1) // (q - 1) for q in (2, 3, 5)}
    assert fit_count_polynomial(counts) == [0, 0, 1, 1]
    assert fit_count_polynomial({2: 5, 3: 7, 5: 100}) is None
