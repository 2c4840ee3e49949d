import random

import pytest

from pvcgap.rational import ONE, ZERO, Rat
from pvcgap.simplex import LinearProgram, LpResult, lp_solve

from conftest import dot, rand_rational, vertex_enumeration_min


def _lp(rows, objective, direction="min"):
    n = len(objective)
    return LinearProgram(
        names=tuple(f"x{k}" for k in range(n)),
        rows=tuple((tuple(Rat(c) for c in coeffs), Rat(r)) for coeffs, r in rows),
        objective=tuple(Rat(c) for c in objective),
        direction=direction,
    )


def test_single_variable_interval():
    lp = LinearProgram(
        names=("x",),
        rows=(((Rat(1),), Rat(3, 7)), ((Rat(-1),), Rat(-1))),
        objective=(Rat(1),),
        direction="min",
    )
    res = lp_solve(lp)
    assert res.status == "optimal"
    assert res.value == Rat(3, 7)
    assert res.primal == (Rat(3, 7),)


def test_maximization():
    lp = _lp([((-1,), -5), ((1,), 0)], [1], direction="max")
    res = lp_solve(lp)
    assert res.status == "optimal"
    assert res.value == Rat(5)


def test_infeasible_farkas_certificate():
    # x >= 2 and -x >= -1 cannot both hold
    lp = _lp([((1,), 2), ((-1,), -1)], [0])
    res = lp_solve(lp)
    assert res.status == "infeasible"
    f = res.dual
    assert all(u >= 0 for u in f)
    assert sum(f[i] * lp.rows[i][0][0] for i in range(2)) == 0
    assert sum(f[i] * lp.rows[i][1] for i in range(2)) > 0


def test_unbounded_ray_certificate():
    lp = _lp([((1, 0), 0), ((0, 1), 0)], [-1, 0])
    res = lp_solve(lp)
    assert res.status == "unbounded"
    ray = res.ray
    assert dot(lp.objective, ray) < 0
    for coeffs, _ in lp.rows:
        assert dot(coeffs, ray) >= 0


def test_free_variables_are_supported():
    # min x + y with x + y >= -3, no sign constraints
    lp = _lp([((1, 1), -3)], [1, 1])
    res = lp_solve(lp)
    assert res.status == "optimal"
    assert res.value == Rat(-3)


def test_degenerate_equalities_via_opposing_rows():
    lp = _lp([((1, 1), 1), ((-1, -1), -1), ((1, 0), 0), ((0, 1), 0)], [2, 3])
    res = lp_solve(lp)
    assert res.status == "optimal"
    assert res.value == Rat(2)


def test_duals_satisfy_exact_optimality_conditions():
    lp = _lp(
        [((1, 2), 2), ((3, 1), 3), ((1, 0), 0), ((0, 1), 0)],
        [2, 1],
    )
    res = lp_solve(lp)
    assert res.status == "optimal"
    y = res.dual
    assert all(u >= 0 for u in y)
    for j in range(lp.n_vars):
        assert sum(y[i] * lp.rows[i][0][j] for i in range(lp.n_rows)) == lp.objective[j]
    assert sum(y[i] * lp.rows[i][1] for i in range(lp.n_rows)) == res.value
    for i, (coeffs, rhs) in enumerate(lp.rows):
        slack = dot(coeffs, res.primal) - rhs
        assert slack >= 0
        assert y[i] == 0 or slack == 0


def test_matches_vertex_enumeration_on_random_boxed_programs():
    rng = random.Random(424242)
    for trial in range(130):
        n = rng.randint(5, 6) if trial >= 120 else rng.randint(1, 4)
        k = rng.randint(1, 4)
        rows = []
        for _ in range(k):
            coeffs = tuple(rand_rational(rng, -2, 2, 3) for _ in range(n))
            rows.append((coeffs, rand_rational(rng, -3, 3, 2)))
        for j in range(n):  # box: -1 <= x_j <= 1 keeps everything bounded
            lo = [ZERO] * n
            lo[j] = ONE
            hi = [ZERO] * n
            hi[j] = -ONE
            rows.append((tuple(lo), -ONE))
            rows.append((tuple(hi), -ONE))
        objective = tuple(rand_rational(rng, -2, 2, 3) for _ in range(n))
        lp = LinearProgram(
            names=tuple(f"x{j}" for j in range(n)),
            rows=tuple(rows),
            objective=objective,
            direction="min",
        )
        expected = vertex_enumeration_min(lp)
        got = lp_solve(lp)
        if expected is None:
            assert got.status == "infeasible"
        else:
            assert got.status == "optimal"
            assert got.value == expected


def test_row_length_validation():
    with pytest.raises(ValueError):
        LinearProgram(names=("x",), rows=(((Rat(1), Rat(2)), Rat(0)),),
                      objective=(Rat(1),))
