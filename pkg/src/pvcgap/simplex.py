"""Exact rational LP solving with dual certificates.

`LinearProgram` holds a conified 0-1 polytope in a fixed normal form:
every constraint row reads  coeffs . x >= rhs  and variables are free
(bounds are rows like any other).  `lp_solve` runs a two-phase primal
simplex over the rationals with Bland's anti-cycling rule, so it is
deterministic and terminates on every input.

Certificates come with every verdict:
  optimal    -> primal solution plus dual multipliers satisfying exact
                stationarity and complementary slackness,
  infeasible -> a Farkas vector (nonnegative row combination equal to the
                zero functional with positive right-hand side),
  unbounded  -> an improving ray.
All three are re-verified internally before being returned.

As a presolve step, rows of the shape a*x_j >= 0 (a > 0) are absorbed as
variable nonnegativity; their dual multipliers are reconstructed from the
reduced costs, so the reported certificate always covers the original row
list.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rational import ONE, ZERO, Rat, as_rational

_PIVOT_CAP = 5_000_000  # Bland's rule terminates; this guards against bugs


@dataclass(frozen=True)
class LinearProgram:
    names: tuple
    rows: tuple  # ((coeffs, rhs), ...) each row means coeffs . x >= rhs
    objective: tuple
    direction: str = "min"

    def __post_init__(self):
        nv = len(self.names)
        if len(self.objective) != nv:
            raise ValueError("objective length != variable count")
        for k, (coeffs, _rhs) in enumerate(self.rows):
            if len(coeffs) != nv:
                raise ValueError(f"row {k} has {len(coeffs)} coefficients, want {nv}")
        if self.direction not in ("min", "max"):
            raise ValueError("direction must be 'min' or 'max'")

    @property
    def n_vars(self) -> int:
        return len(self.names)

    @property
    def n_rows(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class LpResult:
    """status 'optimal' | 'infeasible' | 'unbounded'.

    For 'optimal': value, primal, and dual multipliers (one per original
    row, stated for the minimization form of the program).  For
    'infeasible': dual holds the Farkas vector.  For 'unbounded': ray
    holds an improving direction.
    """

    status: str
    value: object = None
    primal: tuple | None = None
    dual: tuple | None = None
    ray: tuple | None = None


class _Tableau:
    """Dense simplex tableau over exact rationals with zero-skipping pivots.

    Entering rule: Dantzig (most negative reduced cost, smallest index on
    ties) while the objective moves, falling back to Bland's smallest-index
    rule whenever a run of degenerate pivots stalls and staying there until
    the objective strictly improves.  Deterministic, and terminating: a
    hypothetical cycle would keep the objective constant, so the walk would
    be under Bland's rule, which admits no cycle.
    """

    def __init__(self, rows, obj, basis):
        self.rows = rows          # each: list of column values + [rhs]
        self.obj = obj            # reduced-cost row + [-(objective value)]
        self.basis = basis        # basis[i] = column index basic in row i
        self.unbounded_col = None

    def pivot(self, row_i: int, col_j: int) -> None:
        prow = self.rows[row_i]
        piv = prow[col_j]
        inv = ONE / piv
        nz = [k for k, v in enumerate(prow) if v != 0]
        for k in nz:
            prow[k] *= inv
        for r in self.rows:
            if r is prow:
                continue
            f = r[col_j]
            if f != 0:
                for k in nz:
                    r[k] -= f * prow[k]
        f = self.obj[col_j]
        if f != 0:
            for k in nz:
                self.obj[k] -= f * prow[k]
        self.basis[row_i] = col_j

    def _entering(self, n_cols: int, bland: bool):
        obj = self.obj
        if bland:
            return next((j for j in range(n_cols) if obj[j] < 0), None)
        best = None
        best_val = ZERO
        for j in range(n_cols):
            v = obj[j]
            if v < best_val:
                best_val = v
                best = j
        return best

    def step(self, n_cols: int, bland: bool) -> str:
        """One simplex step; returns 'optimal', 'unbounded' or 'pivoted'."""
        enter = self._entering(n_cols, bland)
        if enter is None:
            return "optimal"
        best_row = None
        best_ratio = None
        for i, r in enumerate(self.rows):
            a = r[enter]
            if a > 0:
                ratio = r[-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and self.basis[i] < self.basis[best_row])
                ):
                    best_ratio = ratio
                    best_row = i
        if best_row is None:
            self.unbounded_col = enter
            return "unbounded"
        self.pivot(best_row, enter)
        return "pivoted"

    def run(self, n_cols: int) -> str:
        stall_limit = max(64, len(self.rows))
        bland = False
        stalled = 0
        last_value = self.obj[-1]
        for _ in range(_PIVOT_CAP):
            state = self.step(n_cols, bland)
            if state != "pivoted":
                return state
            if self.obj[-1] != last_value:
                last_value = self.obj[-1]
                bland = False
                stalled = 0
            else:
                stalled += 1
                if stalled >= stall_limit:
                    bland = True
        raise RuntimeError("pivot cap exceeded; this should be unreachable")


def lp_solve(lp: LinearProgram) -> LpResult:
    """Solve exactly; deterministic (Bland's rule, fixed column layout)."""
    minimize = lp.direction == "min"
    c = [as_rational(x) if minimize else -as_rational(x) for x in lp.objective]
    nv = lp.n_vars

    # presolve: absorb a*x_j >= 0 (a > 0) rows as variable nonnegativity
    nonneg = [False] * nv
    absorber = {}  # var -> (original row index, coefficient)
    solver_rows = []  # (original row index, coeffs, rhs)
    for idx, (coeffs, rhs) in enumerate(lp.rows):
        if rhs == 0:
            nz = [(j, a) for j, a in enumerate(coeffs) if a != 0]
            if len(nz) == 1 and nz[0][1] > 0:
                j, a = nz[0]
                if j not in absorber:
                    absorber[j] = (idx, a)
                    nonneg[j] = True
                continue  # duplicates are redundant; dual stays 0
        solver_rows.append((idx, coeffs, rhs))

    # column layout: structural (split when free), then surplus, then artificials
    col_var = []  # (var index, sign)
    for j in range(nv):
        col_var.append((j, 1))
        if not nonneg[j]:
            col_var.append((j, -1))
    n_struct = len(col_var)
    m = len(solver_rows)
    surplus_col = [n_struct + i for i in range(m)]

    sigma = []
    tab_rows = []
    art_rows = []
    for i, (_orig, coeffs, rhs) in enumerate(solver_rows):
        s = 1 if rhs > 0 else -1
        sigma.append(s)
        row = [ZERO] * (n_struct + m)
        for k, (j, sign) in enumerate(col_var):
            a = coeffs[j]
            if a != 0:
                row[k] = a * sign * s
        row[surplus_col[i]] = Rat(-s)
        row.append(rhs * s)
        tab_rows.append(row)
        if s > 0:
            art_rows.append(i)

    basis = [0] * m
    n_cols = n_struct + m + len(art_rows)
    art_col_of_row = {}
    for pos, i in enumerate(art_rows):
        art_col_of_row[i] = n_struct + m + pos
    for i in range(m):
        if sigma[i] > 0:
            basis[i] = art_col_of_row[i]
        else:
            basis[i] = surplus_col[i]
    for row in tab_rows:
        row[-1:-1] = [ZERO] * len(art_rows)  # widen: artificial block before rhs
    for i in art_rows:
        tab_rows[i][art_col_of_row[i]] = ONE

    # phase 1: minimize the artificial sum
    if art_rows:
        obj = [ZERO] * n_cols + [ZERO]
        for i in art_rows:
            r = tab_rows[i]
            for k in range(n_cols + 1):
                if r[k] != 0:
                    obj[k] -= r[k]
        for i in art_rows:
            obj[art_col_of_row[i]] = ZERO
        tab = _Tableau(tab_rows, obj, basis)
        state = tab.run(n_cols)
        assert state == "optimal"  # phase 1 is bounded below by 0
        if -tab.obj[-1] > 0:
            return _infeasible_result(lp, tab, solver_rows, surplus_col, absorber, col_var)
        _purge_artificials(tab, n_struct + m, art_col_of_row)
        tab_rows = [r for r in tab.rows]
        basis = tab.basis

    # phase 2
    obj = [ZERO] * (n_struct + m) + [ZERO]
    for k, (j, sign) in enumerate(col_var):
        if c[j] != 0:
            obj[k] = c[j] * sign
    rows2 = [r[: n_struct + m] + [r[-1]] for r in tab_rows]
    tab = _Tableau(rows2, obj, basis)
    for i, b in enumerate(tab.basis):
        f = tab.obj[b]
        if f != 0:
            r = tab.rows[i]
            for k in range(n_struct + m + 1):
                if r[k] != 0:
                    tab.obj[k] -= f * r[k]
    state = tab.run(n_struct + m)

    if state == "unbounded":
        return _unbounded_result(lp, tab, c, col_var, nonneg, minimize)
    return _optimal_result(
        lp, tab, c, col_var, nonneg, solver_rows, surplus_col, absorber, minimize
    )


def _purge_artificials(tab: _Tableau, keep_cols: int, art_col_of_row: dict) -> None:
    """Pivot basic artificials out (or drop their redundant rows)."""
    art_cols = set(art_col_of_row.values())
    drop = []
    for i in range(len(tab.rows)):
        if tab.basis[i] in art_cols:
            r = tab.rows[i]
            piv = next((k for k in range(keep_cols) if r[k] != 0), None)
            if piv is None:
                drop.append(i)  # redundant row
            else:
                tab.pivot(i, piv)
    for i in reversed(drop):
        del tab.rows[i]
        del tab.basis[i]


def _primal_from_tableau(tab: _Tableau, col_var, nv: int) -> list:
    x = [ZERO] * nv
    for i, b in enumerate(tab.basis):
        if b < len(col_var):
            j, sign = col_var[b]
            x[j] += sign * tab.rows[i][-1]
    return x


def _duals_from_obj_row(tab, solver_rows, surplus_col, absorber, col_var, n_rows):
    """Dual multipliers for every original row, from final reduced costs."""
    dual = [ZERO] * n_rows
    for i, (orig, _coeffs, _rhs) in enumerate(solver_rows):
        dual[orig] = tab.obj[surplus_col[i]]
    col_of_var = {}
    for k, (j, sign) in enumerate(col_var):
        if sign == 1:
            col_of_var[j] = k
    for j, (orig, a) in absorber.items():
        dual[orig] = tab.obj[col_of_var[j]] / a
    return dual


def _optimal_result(lp, tab, c, col_var, nonneg, solver_rows, surplus_col, absorber, minimize):
    nv = lp.n_vars
    x = _primal_from_tableau(tab, col_var, nv)
    dual = _duals_from_obj_row(tab, solver_rows, surplus_col, absorber, col_var, lp.n_rows)
    value_min = sum((cj * xj for cj, xj in zip(c, x)), ZERO)

    # certify before reporting: feasibility, stationarity, complementary
    # slackness and strong duality must all hold exactly
    dual_value = ZERO
    for (coeffs, rhs), u in zip(lp.rows, dual):
        if u < 0:
            raise RuntimeError("negative dual multiplier")
        slack = sum((a * xj for a, xj in zip(coeffs, x)), ZERO) - rhs
        if slack < 0:
            raise RuntimeError("reported primal violates a row")
        if u != 0 and slack != 0:
            raise RuntimeError("complementary slackness failed")
        dual_value += u * rhs
    for j in range(nv):
        lhs = sum((lp.rows[i][0][j] * dual[i] for i in range(lp.n_rows)), ZERO)
        if lhs != c[j]:
            raise RuntimeError("dual stationarity failed")
    if dual_value != value_min:
        raise RuntimeError("strong duality failed")

    value = value_min if minimize else -value_min
    return LpResult(
        status="optimal", value=value, primal=tuple(x), dual=tuple(dual)
    )


def _unbounded_result(lp, tab, c, col_var, nonneg, minimize):
    enter = tab.unbounded_col
    d_hat = {enter: ONE}
    for i, r in enumerate(tab.rows):
        a = r[enter]
        if a != 0:
            d_hat[tab.basis[i]] = d_hat.get(tab.basis[i], ZERO) - a
    dx = [ZERO] * lp.n_vars
    for col, val in d_hat.items():
        if col < len(col_var):
            j, sign = col_var[col]
            dx[j] += sign * val
    drop = sum((cj * dj for cj, dj in zip(c, dx)), ZERO)
    if drop >= 0:
        raise RuntimeError("unbounded ray does not improve the objective")
    for coeffs, _rhs in lp.rows:
        if sum((a * dj for a, dj in zip(coeffs, dx)), ZERO) < 0:
            raise RuntimeError("unbounded ray leaves the feasible cone")
    return LpResult(status="unbounded", ray=tuple(dx))


def _infeasible_result(lp, tab, solver_rows, surplus_col, absorber, col_var):
    n_rows = lp.n_rows
    farkas = [ZERO] * n_rows
    for i, (orig, _coeffs, _rhs) in enumerate(solver_rows):
        farkas[orig] = tab.obj[surplus_col[i]]
    # complete over absorbed nonneg rows so the combination is exactly zero
    combo = [ZERO] * lp.n_vars
    for (coeffs, _rhs), u in zip(lp.rows, farkas):
        if u != 0:
            for j, a in enumerate(coeffs):
                if a != 0:
                    combo[j] += u * a
    for j, (orig, a) in absorber.items():
        if combo[j] != 0:
            farkas[orig] = -combo[j] / a
            combo[j] = ZERO
    gain = ZERO
    for (coeffs, rhs), u in zip(lp.rows, farkas):
        if u < 0:
            raise RuntimeError("negative Farkas multiplier")
        gain += u * rhs
    if any(v != 0 for v in combo) or gain <= 0:
        raise RuntimeError("Farkas certificate failed to verify")
    return LpResult(status="infeasible", dual=tuple(farkas))
