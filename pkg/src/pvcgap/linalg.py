"""Dense symmetric rational matrices and exact PSD certification.

PSD testing runs an LDL^T factorization without pivoting.  A symmetric
rational matrix is positive semidefinite exactly when the elimination
succeeds with every diagonal pivot nonnegative, where a zero pivot is
admissible only if its entire remaining row vanishes.  On failure the
checker returns a rational witness vector v with v^T M v < 0, so a
negative verdict is independently checkable by one quadratic-form
evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rational import ONE, ZERO, Rat, as_rational


class SymMatrix:
    """Symmetric matrix of exact rationals, packed upper-triangle storage."""

    __slots__ = ("n", "_e")

    def __init__(self, n: int, _entries=None):
        if n < 1:
            raise ValueError("matrix dimension must be positive")
        self.n = n
        size = n * (n + 1) // 2
        if _entries is None:
            self._e = [ZERO] * size
        else:
            if len(_entries) != size:
                raise ValueError("packed entry list has wrong length")
            self._e = list(_entries)

    def _idx(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return i * self.n - i * (i + 1) // 2 + j

    def get(self, i: int, j: int):
        return self._e[self._idx(i, j)]

    def set(self, i: int, j: int, value) -> None:
        self._e[self._idx(i, j)] = as_rational(value)

    @classmethod
    def zeros(cls, n: int) -> "SymMatrix":
        return cls(n)

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        m = cls(n)
        for i in range(n):
            m.set(i, i, ONE)
        return m

    @classmethod
    def from_rows(cls, rows) -> "SymMatrix":
        """Build from a full square array; raises if it is not symmetric."""
        n = len(rows)
        m = cls(n)
        vals = [[as_rational(x) for x in row] for row in rows]
        if any(len(row) != n for row in vals):
            raise ValueError("not a square array")
        for i in range(n):
            for j in range(i, n):
                if vals[i][j] != vals[j][i]:
                    raise ValueError(f"asymmetric at ({i},{j})")
                m._e[m._idx(i, j)] = vals[i][j]
        return m

    @classmethod
    def from_function(cls, n: int, fn) -> "SymMatrix":
        """Fill entries (i, j), i <= j, from fn; symmetry is by construction."""
        m = cls(n)
        for i in range(n):
            for j in range(i, n):
                m._e[m._idx(i, j)] = as_rational(fn(i, j))
        return m

    def row(self, i: int) -> list:
        return [self.get(i, j) for j in range(self.n)]

    def rows(self) -> list:
        return [self.row(i) for i in range(self.n)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymMatrix)
            and self.n == other.n
            and self._e == other._e
        )

    def __hash__(self):
        return hash((self.n, tuple(self._e)))

    def __repr__(self) -> str:
        if self.n <= 6:
            return f"SymMatrix({self.rows()!r})"
        return f"SymMatrix(n={self.n})"


@dataclass(frozen=True)
class PsdVerdict:
    """Outcome of an exact PSD check.

    When `is_psd`, `pivots` lists the nonnegative LDL^T pivots in
    elimination order.  Otherwise `witness` is a rational vector with
    `value` = witness^T M witness < 0, exactly.
    """

    is_psd: bool
    pivots: tuple | None = None
    witness: tuple | None = None
    value: object = None


def quadratic_form(m: SymMatrix, v) -> object:
    """v^T M v, exact."""
    if len(v) != m.n:
        raise ValueError("vector length does not match matrix dimension")
    total = ZERO
    for i, vi in enumerate(v):
        if vi == 0:
            continue
        acc = ZERO
        for j, vj in enumerate(v):
            if vj != 0:
                acc += m.get(i, j) * vj
        total += vi * acc
    return total


def _lift_through_factor(lcols: dict, top: int, n: int, support: dict) -> list:
    # Solve L^T v = z for the partial unit-lower factor; z supported on
    # `support` (indices <= top).  Coordinates above `top` stay zero.
    v = [ZERO] * n
    for i in range(top, -1, -1):
        acc = support.get(i, ZERO)
        col = lcols.get(i)
        if col is not None:
            for l, f in col:
                if l <= top and v[l] != 0:
                    acc -= f * v[l]
        v[i] = acc
    return v


def psd_check(m: SymMatrix) -> PsdVerdict:
    """Exact PSD verdict for a symmetric rational matrix.

    Total on its domain: every symmetric rational matrix gets either a
    nonnegative pivot list or a strict rational counterexample vector.
    """
    n = m.n
    w = [m.row(i) for i in range(n)]
    lcols: dict[int, list] = {}
    pivots = []
    for k in range(n):
        d = w[k][k]
        if d < 0:
            v = _lift_through_factor(lcols, k, n, {k: ONE})
            val = quadratic_form(m, v)
            assert val < 0
            return PsdVerdict(False, witness=tuple(v), value=val)
        if d == 0:
            bad = next((j for j in range(k + 1, n) if w[k][j] != 0), None)
            if bad is not None:
                # 2x2 block [[0, c], [c, beta]] is indefinite; pick z with
                # z^T (block) z = -1 and lift it back through L^T.
                c = w[k][bad]
                beta = w[bad][bad]
                u = -(beta + ONE) / (2 * c)
                v = _lift_through_factor(lcols, bad, n, {k: u, bad: ONE})
                val = quadratic_form(m, v)
                assert val < 0
                return PsdVerdict(False, witness=tuple(v), value=val)
            pivots.append(d)
            continue
        pivots.append(d)
        wk = w[k]
        col_entries = []
        nz = [j for j in range(k + 1, n) if wk[j] != 0]
        for i in range(k + 1, n):
            wik = w[i][k]
            if wik == 0:
                continue
            f = wik / d
            col_entries.append((i, f))
            wi = w[i]
            for j in nz:
                wi[j] -= f * wk[j]
        if col_entries:
            lcols[k] = col_entries
    return PsdVerdict(True, pivots=tuple(pivots))


def schur_complement(m: SymMatrix, pivot_index: int) -> SymMatrix:
    """Eliminate one index: M'(i,j) = m(i,j) - m(i,p) m(p,j) / m(p,p).

    Requires a strictly positive pivot; then m is PSD iff M' is.
    """
    n = m.n
    if not 0 <= pivot_index < n:
        raise ValueError("pivot index out of range")
    d = m.get(pivot_index, pivot_index)
    if d <= 0:
        raise ValueError(f"pivot must be positive, got {d}")
    if n == 1:
        raise ValueError("cannot take the Schur complement of a 1x1 matrix")
    keep = [i for i in range(n) if i != pivot_index]
    out = SymMatrix(n - 1)
    for a, i in enumerate(keep):
        mi = m.get(i, pivot_index)
        for b in range(a, n - 1):
            j = keep[b]
            out._e[out._idx(a, b)] = m.get(i, j) - mi * m.get(pivot_index, j) / d
    return out
