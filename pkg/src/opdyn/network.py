"""Weighted directed graphs and their Markov-chain utilities.

Networks here are the substrate for every dynamic in the package: a simple,
strongly connected directed graph, optionally carrying row-stochastic weights
(one weight per out-edge, rows summing to 1, self-loop on every node). Weights
given as Fractions are kept exact; float weights are accepted with a 1e-12
row-sum tolerance. Undirected graphs are stored as symmetric directed pairs.
"""

from __future__ import annotations

import random as _random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

ROW_SUM_TOL = 1e-12

# exact linear solve below this size, power iteration above
EXACT_SOLVE_MAX_N = 200


def _as_weight(w):
    """Keep Fractions/ints exact, pass floats through."""
    if isinstance(w, (Fraction, int)):
        return Fraction(w)
    return float(w)


@dataclass(frozen=True)
class Network:
    """Simple directed graph with weighted edges.

    edges are (source, target, weight) triples, 0-indexed. ``directed=False``
    means the edge list is already symmetric (both directions present);
    generators take care of that. Immutable after construction, safe to share
    across trial workers.
    """

    n: int
    edges: tuple = ()
    directed: bool = True
    _out: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        out = {i: {} for i in range(self.n)}
        for (i, j, w) in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i},{j}) out of range for n={self.n}")
            if j in out[i]:
                raise ValueError(f"parallel edge ({i},{j})")
            out[i][j] = _as_weight(w)
        object.__setattr__(self, "_out", out)

    # -- basic views ---------------------------------------------------------

    def out_neighbors(self, i):
        return self._out[i]

    def neighborhood(self, i):
        """N(i): out-neighbors of i. Generators always include i itself."""
        return sorted(self._out[i])

    def weight(self, i, j):
        return self._out[i].get(j)

    @property
    def is_rational(self):
        return all(isinstance(w, Fraction) for nb in self._out.values() for w in nb.values())

    def weight_matrix(self, exact=False):
        """Row-(sub)stochastic matrix P with P[i, j] = w(i, j).

        exact=True returns a list-of-lists of Fractions (zero-filled),
        otherwise a float ndarray.
        """
        if exact:
            P = [[Fraction(0)] * self.n for _ in range(self.n)]
            for i, nb in self._out.items():
                for j, w in nb.items():
                    P[i][j] = Fraction(w) if not isinstance(w, Fraction) else w
            return P
        P = np.zeros((self.n, self.n))
        for i, nb in self._out.items():
            for j, w in nb.items():
                P[i, j] = float(w)
        return P

    def undirected_edge_list(self):
        """Unordered edges {i, j} with i <= j (each once). Self-loops included."""
        seen = set()
        for (i, j, _w) in self.edges:
            seen.add((min(i, j), max(i, j)))
        return sorted(seen)

    # -- connectivity --------------------------------------------------------

    def _reachable(self, start, reverse=False):
        adj = [[] for _ in range(self.n)]
        for (i, j, _w) in self.edges:
            if reverse:
                adj[j].append(i)
            else:
                adj[i].append(j)
        seen = {start}
        q = deque([start])
        while q:
            u = q.popleft()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    q.append(v)
        return seen

    def is_strongly_connected(self):
        if self.n == 0:
            return False
        return (len(self._reachable(0)) == self.n
                and len(self._reachable(0, reverse=True)) == self.n)

    def distances_from(self, center):
        """BFS distance (in edges, following direction) from center; -1 if unreachable."""
        dist = [-1] * self.n
        dist[center] = 0
        q = deque([center])
        while q:
            u = q.popleft()
            for v in self._out[u]:
                if dist[v] == -1:
                    dist[v] = dist[u] + 1
                    q.append(v)
        return dist


@dataclass
class ValidationReport:
    violations: list

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        return "valid" if self.ok else "; ".join(self.violations)


def validate(net: Network, require_stochastic: bool = False) -> ValidationReport:
    """Check the standing structural assumptions, report-style.

    Base invariants: simple (enforced at construction), every out-degree >= 1,
    strongly connected. With require_stochastic additionally: self-loop on
    every node, strictly positive weights, each row summing to 1 (exactly for
    rational rows, within 1e-12 for float rows).
    """
    v = []
    for i in range(net.n):
        if len(net.out_neighbors(i)) == 0:
            v.append(f"node {i} has out-degree 0")
    if net.n and not net.is_strongly_connected():
        v.append("graph is not strongly connected")
    if require_stochastic:
        for i in range(net.n):
            nb = net.out_neighbors(i)
            if i not in nb:
                v.append(f"node {i} has no self-loop")
            for j, w in nb.items():
                if not (w > 0):
                    v.append(f"non-positive weight on edge ({i},{j})")
            s = sum(nb.values())
            if all(isinstance(w, Fraction) for w in nb.values()):
                if s != 1:
                    v.append(f"row {i} sums to {s}, not 1")
            elif abs(float(s) - 1.0) > ROW_SUM_TOL:
                v.append(f"row {i} sums to {float(s)!r}, off by more than {ROW_SUM_TOL}")
    return ValidationReport(v)


# -- generators --------------------------------------------------------------

def _undirected_pairs(kind, n, d=None, seed=None):
    """Neighbor pairs (i < j, no self) for each supported topology."""
    if kind == "chain":
        return [(i, i + 1) for i in range(n - 1)]
    if kind == "cycle":
        if n == 1:
            return []
        if n == 2:
            return [(0, 1)]
        return [(i, (i + 1) % n) for i in range(n)]
    if kind == "complete":
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    if kind == "star":
        return [(0, j) for j in range(1, n)]
    if kind == "grid":
        side = int(round(n ** 0.5))
        if side * side != n:
            raise ValueError(f"grid requires a square n, got {n}")
        pairs = []
        for r in range(side):
            for c in range(side):
                u = r * side + c
                if c + 1 < side:
                    pairs.append((u, u + 1))
                if r + 1 < side:
                    pairs.append((u, u + side))
        return pairs
    if kind == "random_regular":
        if d is None:
            raise ValueError("random_regular requires d")
        if n * d % 2 != 0 or d >= n or d < 1:
            raise ValueError(f"infeasible degree sequence: n={n}, d={d}")
        rng = _random.Random(seed)
        # pairing model with restarts; also retry until connected
        for _ in range(10000):
            stubs = [i for i in range(n) for _ in range(d)]
            rng.shuffle(stubs)
            pairs = set()
            ok = True
            for a, b in zip(stubs[0::2], stubs[1::2]):
                if a == b or (min(a, b), max(a, b)) in pairs:
                    ok = False
                    break
                pairs.add((min(a, b), max(a, b)))
            if ok and _pairs_connected(n, pairs):
                return sorted(pairs)
        raise ValueError(f"could not realize a connected {d}-regular graph on {n} nodes")
    raise ValueError(f"unknown kind {kind!r}")


def _pairs_connected(n, pairs):
    adj = [[] for _ in range(n)]
    for (a, b) in pairs:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    q = deque([0])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                q.append(v)
    return len(seen) == n


def from_pairs(n, pairs):
    """Lazy-uniform network from an explicit undirected pair list (i != j)."""
    nbrs = [set() for _ in range(n)]
    for (a, b) in pairs:
        nbrs[a].add(b)
        nbrs[b].add(a)
    edges = []
    for i in range(n):
        closed = sorted(nbrs[i] | {i})
        w = Fraction(1, len(closed))
        for j in closed:
            edges.append((i, j, w))
    return Network(n=n, edges=tuple(edges), directed=False)


def generate(kind, n, weighting="lazy_uniform", d=None, seed=None, custom_weights=None):
    """Build a named test network.

    kinds: chain, cycle, complete, star, grid, random_regular (needs d, seed).
    lazy_uniform weighting sets N(i) = neighbors plus i itself and
    w(i, j) = 1/|N(i)| as exact Fractions.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pairs = _undirected_pairs(kind, n, d=d, seed=seed)
    nbrs = [set() for _ in range(n)]
    for (a, b) in pairs:
        nbrs[a].add(b)
        nbrs[b].add(a)
    edges = []
    if weighting == "lazy_uniform":
        for i in range(n):
            closed = sorted(nbrs[i] | {i})
            w = Fraction(1, len(closed))
            for j in closed:
                edges.append((i, j, w))
    elif weighting == "custom":
        if custom_weights is None:
            raise ValueError("custom weighting needs custom_weights {(i,j): w}")
        for (i, j), w in custom_weights.items():
            edges.append((i, j, w))
    else:
        raise ValueError(f"unknown weighting {weighting!r}")
    return Network(n=n, edges=tuple(edges), directed=False)


# -- stationary distribution -------------------------------------------------

@dataclass(frozen=True)
class StationaryDistribution:
    alpha: tuple

    @property
    def exact(self):
        return all(isinstance(a, Fraction) for a in self.alpha)

    def as_floats(self):
        return np.array([float(a) for a in self.alpha])


def _solve_rational(A, b):
    """Gaussian elimination over Fractions. A: list of rows, b: list."""
    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def stationary_distribution(net: Network, tol=1e-12) -> StationaryDistribution:
    """Left unit eigenvector of the weight matrix (the PageRank vector).

    Exact rational solve for rational weights and n <= 200; power iteration
    (cap 1e6 rounds) otherwise. Always verifies the residual
    max |alpha P - alpha| <= tol before returning.
    """
    rep = validate(net, require_stochastic=True)
    if not rep.ok:
        raise ValueError(f"network fails stochastic validation: {rep}")
    n = net.n
    if net.is_rational and n <= EXACT_SOLVE_MAX_N:
        P = net.weight_matrix(exact=True)
        # alpha (P - I) = 0 with sum(alpha) = 1: replace last equation
        A = [[P[r][c] - (1 if r == c else 0) for r in range(n)] for c in range(n)]
        A[n - 1] = [Fraction(1)] * n
        b = [Fraction(0)] * (n - 1) + [Fraction(1)]
        alpha = _solve_rational(A, b)
        if any(a <= 0 for a in alpha):
            raise ValueError("stationary solve produced a non-positive entry")
        residual = max(
            abs(sum(alpha[i] * P[i][j] for i in range(n)) - alpha[j]) for j in range(n)
        )
        if residual != 0:
            raise AssertionError("exact stationary solve has nonzero residual")
        return StationaryDistribution(tuple(alpha))
    P = net.weight_matrix()
    alpha = np.full(n, 1.0 / n)
    for _ in range(10 ** 6):
        nxt = alpha @ P
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - alpha)) <= tol / 2:
            alpha = nxt
            break
        alpha = nxt
    else:
        raise RuntimeError("power iteration did not converge within the cap")
    if np.max(np.abs(alpha @ P - alpha)) > tol:
        raise RuntimeError("stationary residual above tolerance")
    return StationaryDistribution(tuple(alpha))


def mixing_tv(net: Network, start: int, t: int) -> float:
    """TV distance between the t-step distribution from start and alpha.

    Exact matrix powers (float) up to n = 200.
    """
    if net.n > EXACT_SOLVE_MAX_N:
        raise ValueError("mixing_tv is a desk-scale tool (n <= 200)")
    alpha = stationary_distribution(net).as_floats()
    P = net.weight_matrix()
    dist = np.zeros(net.n)
    dist[start] = 1.0
    dist = dist @ np.linalg.matrix_power(P, t)
    return 0.5 * float(np.abs(dist - alpha).sum())


def ball(net: Network, center: int, radius: int) -> tuple:
    """Induced subgraph on vertices within directed distance radius of center.

    Returns (sub_network, vertex_list) where vertex_list[k] is the original
    label of sub-vertex k.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    dist = net.distances_from(center)
    verts = sorted(i for i in range(net.n) if 0 <= dist[i] <= radius)
    idx = {v: k for k, v in enumerate(verts)}
    edges = tuple(
        (idx[i], idx[j], w) for (i, j, w) in net.edges if i in idx and j in idx
    )
    return Network(n=len(verts), edges=edges, directed=net.directed), verts


# -- file format -------------------------------------------------------------

def _parse_weight(tok):
    if "/" in tok:
        p, q = tok.split("/")
        return Fraction(int(p), int(q))
    return float(tok)


def read_network(path) -> Network:
    """Graph file: `n <count> directed|undirected`, then `src dst weight` lines."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    head = lines[0].split()
    if len(head) != 3 or head[0] != "n" or head[2] not in ("directed", "undirected"):
        raise ValueError(f"bad header line {lines[0]!r}")
    n = int(head[1])
    edges = []
    for ln in lines[1:]:
        s, t, w = ln.split()
        edges.append((int(s), int(t), _parse_weight(w)))
    return Network(n=n, edges=tuple(edges), directed=head[2] == "directed")


def write_network(net: Network, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"n {net.n} {'directed' if net.directed else 'undirected'}\n")
        for (i, j, w) in net.edges:
            if isinstance(w, Fraction):
                fh.write(f"{i} {j} {w.numerator}/{w.denominator}\n")
            else:
                fh.write(f"{i} {j} {w!r}\n")
