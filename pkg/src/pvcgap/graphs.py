"""Graphs, polytope variables, the t-PVC relaxation, and integral oracles.

Vertices are 1-based; the star built by `make_star(n)` has its center at
vertex n+1.  LP variables are indexed by V then E: vertex i gets code
i-1, the k-th edge in lexicographic order gets code n+k.  That order is
part of the certificate format and must not change.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .rational import ONE, ZERO, Rat, as_rational
from .simplex import LinearProgram


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with rational vertex weights (default 1)."""

    n: int
    edges: tuple
    weights: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        for e in self.edges:
            i, j = e
            if not (1 <= i < j <= self.n):
                raise ValueError(f"bad edge {e}: need 1 <= i < j <= n")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        if list(self.edges) != sorted(self.edges):
            object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        if not self.weights:
            object.__setattr__(self, "weights", (ONE,) * self.n)
        else:
            if len(self.weights) != self.n:
                raise ValueError("need one weight per vertex")
            object.__setattr__(
                self, "weights", tuple(as_rational(w) for w in self.weights)
            )
        object.__setattr__(
            self, "_edge_rank", {e: k for k, e in enumerate(self.edges)}
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def var_count(self) -> int:
        return self.n + self.m

    # -- variable codes: vertices 0..n-1, then edges n..n+m-1 ---------------

    def vertex_code(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"no vertex {i}")
        return i - 1

    def edge_code(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        rank = self._edge_rank.get((i, j))
        if rank is None:
            raise ValueError(f"no edge {{{i},{j}}}")
        return self.n + rank

    def is_vertex_code(self, code: int) -> bool:
        return 0 <= code < self.n

    def code_endpoints(self, code: int) -> tuple:
        """Endpoint vertex codes of an edge code."""
        i, j = self.edges[code - self.n]
        return (i - 1, j - 1)

    def var_name(self, code: int) -> str:
        if self.is_vertex_code(code):
            return f"v{code + 1}"
        i, j = self.edges[code - self.n]
        return f"e{i}_{j}"

    def var_names(self) -> list:
        return [self.var_name(c) for c in range(self.var_count)]


def make_clique(n: int) -> Graph:
    """Complete unweighted graph on n vertices."""
    if n < 1:
        raise ValueError("clique needs n >= 1")
    return Graph(n, tuple(combinations(range(1, n + 1), 2)))


def make_star(n: int) -> Graph:
    """Star with n leaves 1..n and center n+1, so n+1 vertices and n edges."""
    if n < 1:
        raise ValueError("star needs n >= 1")
    return Graph(n + 1, tuple((i, n + 1) for i in range(1, n + 1)))


# -- graph text format ------------------------------------------------------
#
#   n m
#   i j        (m edge lines)
#   i w        (optional vertex-weight lines; w is an integer or 'a/b')
#
# '#' starts a comment; blank lines are skipped.  Unlisted vertices keep
# weight 1.


def parse_graph(text: str) -> Graph:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"header must be 'n m', got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) < 1 + m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for line in lines[1 : 1 + m]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"edge line must be 'i j', got {line!r}")
        i, j = int(parts[0]), int(parts[1])
        if i == j:
            raise ValueError(f"self-loop {i}")
        edges.append((min(i, j), max(i, j)))
    weights = [ONE] * n
    for line in lines[1 + m :]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"vertex-weight line must be 'i w', got {line!r}")
        i = int(parts[0])
        if not 1 <= i <= n:
            raise ValueError(f"vertex-weight line for unknown vertex {i}")
        weights[i - 1] = as_rational(parts[1])
    return Graph(n, tuple(edges), tuple(weights))


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def format_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{i} {j}" for i, j in g.edges)
    for i, w in enumerate(g.weights, start=1):
        if w != ONE:
            out.append(f"{i} {w.numerator}/{w.denominator}")
    return "\n".join(out) + "\n"


# -- the t-partial-vertex-cover relaxation ----------------------------------


def build_pvc_lp(g: Graph, t: int) -> LinearProgram:
    """LP over V u E: cover each chosen edge, demand >= t edges, 0..1 box.

    Row order (fixed, part of the certificate format): one row per edge,
    the demand row, all lower box rows, all upper box rows.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t > g.m:
        raise ValueError(f"t={t} exceeds edge count {g.m}: integrally infeasible")
    nv = g.var_count
    rows = []
    for i, j in g.edges:
        coeffs = [ZERO] * nv
        coeffs[g.vertex_code(i)] = ONE
        coeffs[g.vertex_code(j)] = ONE
        coeffs[g.edge_code(i, j)] = -ONE
        rows.append((tuple(coeffs), ZERO))
    demand = [ZERO] * nv
    for i, j in g.edges:
        demand[g.edge_code(i, j)] = ONE
    rows.append((tuple(demand), Rat(t)))
    for q in range(nv):
        coeffs = [ZERO] * nv
        coeffs[q] = ONE
        rows.append((tuple(coeffs), ZERO))
    for q in range(nv):
        coeffs = [ZERO] * nv
        coeffs[q] = -ONE
        rows.append((tuple(coeffs), -ONE))
    objective = [ZERO] * nv
    for i in range(1, g.n + 1):
        objective[g.vertex_code(i)] = g.weights[i - 1]
    return LinearProgram(
        names=tuple(g.var_names()),
        rows=tuple(rows),
        objective=tuple(objective),
        direction="min",
    )


# -- brute-force integral oracle --------------------------------------------

_BRUTE_FORCE_MAX_N = 24


def brute_force_witness(g: Graph, t: int) -> tuple:
    """(minimum weight, one optimal vertex set) by exhaustive enumeration."""
    if g.n > _BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force capped at n <= {_BRUTE_FORCE_MAX_N}")
    if t < 0 or t > g.m:
        raise ValueError("need 0 <= t <= |E|")
    if t == 0:
        return ZERO, frozenset()
    vertex_masks = [0] * g.n
    for k, (i, j) in enumerate(g.edges):
        vertex_masks[i - 1] |= 1 << k
        vertex_masks[j - 1] |= 1 << k
    uniform = all(w == ONE for w in g.weights)
    if uniform:
        # minimum weight = minimum size; scan sizes from below
        for size in range(0, g.n + 1):
            for subset in combinations(range(g.n), size):
                covered = 0
                for v in subset:
                    covered |= vertex_masks[v]
                if covered.bit_count() >= t:
                    return Rat(size), frozenset(v + 1 for v in subset)
        raise AssertionError("unreachable: full vertex set covers all edges")
    best = None
    best_set = None
    for mask in range(1 << g.n):
        covered = 0
        weight = ZERO
        for v in range(g.n):
            if mask >> v & 1:
                covered |= vertex_masks[v]
                weight += g.weights[v]
        if covered.bit_count() >= t and (best is None or weight < best):
            best, best_set = weight, mask
    return best, frozenset(v + 1 for v in range(g.n) if best_set >> v & 1)


def brute_force_opt(g: Graph, t: int):
    """Exact integral optimum of t-PVC on g."""
    return brute_force_witness(g, t)[0]
