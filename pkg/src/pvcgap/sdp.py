"""The unit-vector SDP relaxation of partial vertex cover, in Gram form.

The relaxation lives on unit vectors v_0, v_1, ..., v_n; a solution is
represented purely by the matrix of pairwise inner products, so when
those are rational the entire feasibility check is exact even though the
vectors themselves may have irrational coordinates.  Constraints, per
edge {i, j}:

    v0.vi + v0.vj - vi.vj <= 1
    v0.vi + v0.vj + vi.vj >= -1

plus the demand row  sum over edges of (3 + v0.vi + v0.vj - vi.vj) >= 4t
and unit diagonal; objective (1/2) sum over vertices of (1 + v0.vi).

No SDP solver lives here: the module certifies concrete feasible points
(realizable exactly when the Gram matrix is PSD) and the integrality gap
they witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import Certificate, rational_entry
from .graphs import Graph, brute_force_opt, make_star
from .linalg import SymMatrix, psd_check
from .rational import ONE, ZERO, Rat, as_rational


@dataclass(frozen=True)
class GramSolution:
    """Inner products of a candidate vector solution, indexed by {0} u V."""

    graph: Graph
    t: int
    gram: SymMatrix

    def __post_init__(self):
        if self.gram.n != self.graph.n + 1:
            raise ValueError("Gram dimension must be 1 + vertex count")

    def ip(self, a: int, b: int):
        """Inner product v_a . v_b (vertex indices are 1-based; 0 is v_0)."""
        return self.gram.get(a, b)


def build_star_sdp_solution(n: int, t: int) -> GramSolution:
    """The fooling point on the star with n leaves: v_0 = -v_leaf, and the
    center vector tilted so the demand row is exactly tight.

    All pairwise inner products are rational; nothing irrational is ever
    materialized.  Requires 1 <= t <= n/2.
    """
    if t < 1:
        raise ValueError("need t >= 1")
    if 2 * t > n:
        raise ValueError(f"need t <= n/2, got t={t}, n={n}")
    g = make_star(n)
    center = n + 1
    tn = Rat(2 * t, n)
    gram = SymMatrix.zeros(g.n + 1)
    for a in range(g.n + 1):
        gram.set(a, a, ONE)
    for i in range(1, n + 1):
        gram.set(0, i, -ONE)
        gram.set(i, center, ONE - tn)
        for j in range(i + 1, n + 1):
            gram.set(i, j, ONE)
    gram.set(0, center, -ONE + tn)
    return GramSolution(graph=g, t=t, gram=gram)


def gram_from_cover(g: Graph, t: int, cover) -> GramSolution:
    """Integral one-dimensional solution: v_i = v_0 inside the cover,
    -v_0 outside."""
    sign = [ONE if i in cover else -ONE for i in range(1, g.n + 1)]
    gram = SymMatrix.zeros(g.n + 1)
    gram.set(0, 0, ONE)
    for i in range(1, g.n + 1):
        gram.set(i, i, ONE)
        gram.set(0, i, sign[i - 1])
        for j in range(i + 1, g.n + 1):
            gram.set(i, j, sign[i - 1] * sign[j - 1])
    return GramSolution(graph=g, t=t, gram=gram)


def verify_hs_sdp(sol: GramSolution) -> Certificate:
    """Exact feasibility check of a Gram point, with objective and gap.

    Reports the first violated constraint with its exact slack; on
    success the certificate carries the objective value, the brute-force
    integral optimum (when the instance is small enough) and the
    integrality gap the point witnesses.
    """
    g = sol.graph
    t = sol.t
    violation = None

    for a in range(g.n + 1):
        if sol.gram.get(a, a) != ONE:
            violation = ("unit-norm", f"|v_{a}|^2", sol.gram.get(a, a), ONE)
            break

    if violation is None:
        real = psd_check(sol.gram)
        if not real.is_psd:
            violation = ("gram-psd", "witness quadratic form", real.value, ZERO)

    demand_lhs = ZERO
    if violation is None:
        for i, j in g.edges:
            s = sol.ip(0, i) + sol.ip(0, j) - sol.ip(i, j)
            if s > ONE:
                violation = ("edge-upper", f"e{i}_{j}", s, ONE)
                break
            lo = sol.ip(0, i) + sol.ip(0, j) + sol.ip(i, j)
            if lo < -ONE:
                violation = ("edge-lower", f"e{i}_{j}", lo, -ONE)
                break
            demand_lhs += 3 + s
    if violation is None and demand_lhs < 4 * t:
        violation = ("demand", "sum over edges", demand_lhs, Rat(4 * t))

    objective = ZERO
    for i in range(1, g.n + 1):
        objective += (ONE + sol.ip(0, i)) / 2

    values = {"objective": rational_entry(objective)}
    if violation is None:
        values["demand_row"] = rational_entry(demand_lhs)
        values["demand_required"] = rational_entry(Rat(4 * t))
    if g.n <= 24:
        opt = brute_force_opt(g, t)
        values["integral_opt"] = rational_entry(opt)
        if violation is None and objective > 0:
            values["integrality_gap"] = rational_entry(opt / objective)

    witness = None
    verdict = "feasible"
    if violation is not None:
        kind, where, lhs, bound = violation
        verdict = f"violated:{kind}"
        witness = {
            "kind": kind,
            "where": where,
            "lhs": rational_entry(lhs),
            "bound": rational_entry(bound),
        }
    return Certificate(
        claim="prop-2",
        params={"n": g.n, "t": t, "edges": g.m},
        verdict=verdict,
        values=values,
        witness=witness,
    )
