"""Level-1 moment-slack analysis of the demand constraint on cliques.

For the clique on n vertices under the random-cover distribution, the
demand constraint's level-1 slack moment matrix restricted to vertex
subsets of size <= 1 has a closed form: with

    S_k      = C(k,2) (2p - p^2) - t      (expected slack on a k-clique)
    C(n, a)  = binom(a,2) + a (n - a)     (edges covered by a vertices)

the entry at (I, J) equals p^|I u J| (S_{n-|I u J|} + C(n, |I u J|)).
`build_zbar` materializes that matrix; `zbar_by_enumeration` rebuilds it
by brute-force summation over all 2^n vertex subsets, giving an
independent oracle that must agree entrywise.

The matrix has constant diagonal and constant off-diagonal blocks, so
after one Schur step at the empty-set entry the all-ones vector is an
eigenvector; `allones_eigenvalue_after_schur` returns that eigenvalue
exactly (and re-derives it from the actual Schur complement's row sums).
A negative value certifies that the matrix is not PSD, i.e. that the
level-1 moment SDP rejects the random-cover solution at those
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .certificates import Certificate, rational_entry
from .graphs import Graph
from .linalg import SymMatrix, psd_check, schur_complement
from .moments import DistParams, moment
from .rational import ONE, ZERO, Rat, as_rational

_ENUMERATION_MAX_N = 20


def covered_edges(n: int, a: int) -> int:
    """Edges of the n-clique covered by choosing a vertices."""
    if not 0 <= a <= n:
        raise ValueError(f"need 0 <= a <= n, got a={a}, n={n}")
    return comb(a, 2) + a * (n - a)


def expected_slack(n: int, t, p):
    """C(n,2)(2p - p^2) - t: expected demand slack on the n-clique."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = as_rational(p)
    t = as_rational(t)
    return comb(n, 2) * (2 * p - p * p) - t


@dataclass(frozen=True)
class LasserreSlack:
    """Closed-form demand-slack minor, with the scalars that define it."""

    n: int
    t: object
    p: object
    zbar: SymMatrix
    s_values: dict  # k -> S_k for the three sizes the entries use
    c_values: dict  # a -> C(n, a) for a in 0..2


def build_zbar(n: int, t, p) -> LasserreSlack:
    """(n+1)x(n+1) slack minor over {empty} u vertex singletons, closed form.

    t is normally an integer demand; a rational t is accepted so the
    asymptotic regime (p pinned first, t solved from it) stays expressible.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    p = as_rational(p)
    t = as_rational(t)
    svals = {k: expected_slack(k, t, p) for k in (n - 2, n - 1, n)}
    cvals = {a: covered_edges(n, a) for a in (0, 1, 2)}
    by_size = {u: p**u * (svals[n - u] + cvals[u]) for u in (0, 1, 2)}

    def entry(i: int, j: int):
        u = len({i, j} - {0})
        return by_size[u]

    zbar = SymMatrix.from_function(n + 1, entry)
    return LasserreSlack(n=n, t=t, p=p, zbar=zbar, s_values=svals, c_values=cvals)


def zbar_by_enumeration(n: int, t, p) -> SymMatrix:
    """The same minor by summing slack * indicator-outer-product over all
    2^n vertex subsets; independent oracle for the closed form."""
    if n > _ENUMERATION_MAX_N:
        raise ValueError(f"enumeration capped at n <= {_ENUMERATION_MAX_N}")
    if n < 2:
        raise ValueError("need n >= 2")
    p = as_rational(p)
    t = as_rational(t)
    q = ONE - p
    z = SymMatrix.zeros(n + 1)
    for mask in range(1 << n):
        a = mask.bit_count()
        w = p**a * q ** (n - a) * (covered_edges(n, a) - t)
        if w == 0:
            continue
        idx = [0] + [v + 1 for v in range(n) if mask >> v & 1]
        for ii, i in enumerate(idx):
            for j in idx[ii:]:
                z._e[z._idx(i, j)] += w
    return z


def allones_eigenvalue_after_schur(ls: LasserreSlack):
    """Eigenvalue of the Schur complement (at the empty entry) along all-ones.

    Demands a positive pivot S_n.  The closed-form value is cross-checked
    against the row sums of the actual Schur complement, which must all be
    equal for this matrix.
    """
    sn = ls.s_values[ls.n]
    if sn <= 0:
        raise ValueError(f"Schur pivot S_n = {sn} is not positive")
    n, p = ls.n, ls.p
    alpha = p * (ls.s_values[n - 1] + ls.c_values[1])
    beta = p * p * (ls.s_values[n - 2] + ls.c_values[2])
    eig = alpha + (n - 1) * beta - n * alpha * alpha / sn
    sc = schur_complement(ls.zbar, 0)
    sums = {sum(sc.row(i), ZERO) for i in range(sc.n)}
    if sums != {eig}:
        raise AssertionError("all-ones direction is not an eigenvector")
    return eig


# -- generic level-1 slack moment matrices -----------------------------------


def level1_slack_matrix(params: DistParams, coeffs, rhs) -> SymMatrix:
    """Slack moment matrix of one LP row over {empty} u singletons of V u E.

    Entry (A, B) = sum_q a_q * moment(A u B u {q}) - rhs * moment(A u B).
    Built from enumerated moments, so it works for any row, not only ones
    with a closed form.
    """
    g = params.graph
    rhs = as_rational(rhs)
    nz = [(q, as_rational(c)) for q, c in enumerate(coeffs) if c != 0]
    nvars = g.var_count
    sets = [()] + [(q,) for q in range(nvars)]

    def entry(i: int, j: int):
        ab = tuple(sorted(set(sets[i]) | set(sets[j])))
        total = -rhs * moment(params, ab)
        for q, c in nz:
            total += c * moment(params, tuple(sorted(set(ab) | {q})))
        return total

    return SymMatrix.from_function(1 + nvars, entry)


# -- the refutation check -----------------------------------------------------


def lasserre1_refutes(n: int, r: int, t: int) -> Certificate:
    """Build the demand-slack minor at p = t / C(n-2r, 2) and PSD-check it.

    Verdict 'refuted' means the matrix is not PSD, so the level-1 moment
    SDP rejects the level-r random-cover solution at these parameters;
    the certificate then carries both an explicit negative-direction
    witness vector and the all-ones Schur eigenvalue.
    """
    if n < 2 * r + 2 * t + 2:
        raise ValueError("need n >= 2r + 2t + 2")
    if r < 0 or t < 1:
        raise ValueError("need r >= 0 and t >= 1")
    p = Rat(t) / comb(n - 2 * r, 2)
    ls = build_zbar(n, t, p)
    verdict = psd_check(ls.zbar)
    eig = allones_eigenvalue_after_schur(ls)
    if eig < 0 and verdict.is_psd:
        raise AssertionError("negative eigenvalue on a PSD matrix")
    values = {
        "schur_pivot": rational_entry(ls.s_values[n]),
        "allones_eigenvalue": rational_entry(eig),
    }
    witness = None
    if not verdict.is_psd:
        witness = {
            "kind": "negative-direction",
            "vector": [f"{v.numerator}/{v.denominator}" for v in verdict.witness],
            "quadratic_form": rational_entry(verdict.value),
        }
    return Certificate(
        claim="lemma-8",
        params={"n": n, "r": r, "t": t, "p": rational_entry(p)},
        verdict="refuted" if not verdict.is_psd else "not-refuted",
        values=values,
        witness=witness,
    )
