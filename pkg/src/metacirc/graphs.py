"""Metacirculant graphs: construction, validation, bordering and metrics.

A metacirculant G(m, ell, alpha, S0..S_floor(m/2)) lives on Z_m x Z_ell.
Inside a block the connection set is alpha^i * S0; between blocks i and i+k
it is alpha^i * S_k.  The closure conditions on the S_k (checked by
``MetacirculantSpec.violations``) make the relation well defined; the
builder symmetrises and asserts symmetry afterwards as a belt-and-braces
check.

Two vertex orders are supported.  ``block`` numbers (i, j) as i*ell + j + 1,
matching the usual picture of m stacked blocks.  ``interleaved`` numbers
(i, j) as j*m + i + 1; published edge tables for these graphs use that
order, so it is what the fixture data files are stored in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

BORDER_LABEL = "inf"

VERTEX_ORDERS = ("block", "interleaved")


class InvalidSpecError(ValueError):
    """Raised when building from a spec that fails its closure conditions."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("invalid metacirculant spec: " + "; ".join(self.violations))


@dataclass(frozen=True)
class MetacirculantSpec:
    """Parameters (m, ell, alpha, S0..S_floor(m/2)) of a metacirculant graph."""

    m: int
    ell: int
    alpha: int
    s_sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "s_sets", tuple(frozenset(s) for s in self.s_sets))

    @classmethod
    def make(cls, m: int, ell: int, alpha: int, *s_sets: Iterable[int]) -> "MetacirculantSpec":
        return cls(m, ell, alpha, tuple(frozenset(s) for s in s_sets))

    @property
    def n(self) -> int:
        return self.m * self.ell

    def violations(self) -> list[str]:
        """All violated validity conditions, by name; empty means valid."""
        out: list[str] = []
        if self.m < 1:
            out.append(f"m must be a positive integer, got {self.m}")
        if self.ell < 1:
            out.append(f"ell must be a positive integer, got {self.ell}")
        if self.m < 1 or self.ell < 1:
            return out
        ell = self.ell
        if not 0 <= self.alpha < ell:
            out.append(f"alpha must be a residue in Z_{ell}, got {self.alpha}")
            return out
        if math.gcd(self.alpha, ell) != 1:
            out.append(f"alpha = {self.alpha} is not a unit modulo {ell}")
        expected = self.m // 2 + 1
        if len(self.s_sets) != expected:
            out.append(f"expected {expected} connection sets S0..S{expected - 1}, got {len(self.s_sets)}")
            return out
        for k, s in enumerate(self.s_sets):
            if any(not 0 <= x < ell for x in s):
                out.append(f"S{k} has elements outside Z_{ell}")
                return out
        s0 = self.s_sets[0]
        if s0 != {(-x) % ell for x in s0}:
            out.append("S0 = -S0 fails")
        if 0 in s0:
            out.append("0 must not be in S0")
        if math.gcd(self.alpha, ell) == 1:
            am = pow(self.alpha, self.m, ell)
            for k in range(1, self.m // 2 + 1):
                sk = self.s_sets[k]
                if {(am * x) % ell for x in sk} != sk:
                    out.append(f"alpha^m * S{k} = S{k} fails")
            if self.m % 2 == 0:
                half = self.m // 2
                ah = pow(self.alpha, half, ell)
                sh = self.s_sets[half]
                if {(ah * x) % ell for x in sh} != {(-x) % ell for x in sh}:
                    out.append(f"alpha^(m/2) * S{half} = -S{half} fails")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def sort_key(self) -> tuple:
        return (self.m, self.ell, self.alpha, tuple(tuple(sorted(s)) for s in self.s_sets))

    def __str__(self) -> str:
        sets = ", ".join("{" + ", ".join(map(str, sorted(s))) + "}" for s in self.s_sets)
        return f"G({self.m}, {self.ell}, {self.alpha}, {sets})"


class SimpleGraph:
    """Undirected simple graph as bitmask adjacency rows.

    ``rows[u]`` has bit v set iff u ~ v.  Construction checks symmetry and a
    zero diagonal.  Instances are treated as immutable.
    """

    __slots__ = ("n", "rows", "labels")

    def __init__(self, n: int, rows: Sequence[int], labels: Optional[Sequence[object]] = None):
        if n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={n}")
        if len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        mask = (1 << n) - 1
        rows = tuple(int(r) for r in rows)
        for u, r in enumerate(rows):
            if r & ~mask:
                raise ValueError(f"adjacency row {u} has bits beyond vertex {n - 1}")
            if (r >> u) & 1:
                raise ValueError(f"self-loop at vertex {u}")
        for u in range(n):
            for v in _bits(rows[u]):
                if not (rows[v] >> u) & 1:
                    raise ValueError(f"adjacency not symmetric at pair ({u}, {v})")
        self.n = n
        self.rows = rows
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Optional[Sequence[object]] = None) -> "SimpleGraph":
        """Build from 0-based vertex pairs; the relation is symmetrised."""
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, labels)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, u: int) -> Iterator[int]:
        return _bits(self.rows[u])

    def edge_list(self) -> list[tuple[int, int]]:
        """Sorted 1-based edge pairs (u, v) with u < v."""
        out = []
        for u in range(self.n):
            r = self.rows[u] >> (u + 1)
            v = u + 1
            while r:
                if r & 1:
                    out.append((u + 1, v + 1))
                r >>= 1
                v += 1
        return out

    def adjacency_matrix(self) -> list[list[int]]:
        return [[(r >> v) & 1 for v in range(self.n)] for r in self.rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.edge_count})"


def _bits(mask: int) -> Iterator[int]:
    v = 0
    while mask:
        tz = (mask & -mask).bit_length() - 1
        v += tz
        yield v
        mask >>= tz + 1
        v += 1


def vertex_index(i: int, j: int, m: int, ell: int, order: str) -> int:
    """0-based index of block-i offset-j under the given vertex order."""
    if order == "block":
        return i * ell + j
    if order == "interleaved":
        return j * m + i
    raise ValueError(f"unknown vertex order {order!r} (expected one of {VERTEX_ORDERS})")


def build_metacirculant(spec: MetacirculantSpec, order: str = "block") -> SimpleGraph:
    """Construct the metacirculant graph of a valid spec.

    Vertices (i, j) and (i+k, h) are joined when h - j lies in alpha^i * S_k,
    with k = 0 giving the within-block edges.  Raises InvalidSpecError (with
    the violation report attached) on an invalid spec.
    """
    violations = spec.violations()
    if violations:
        raise InvalidSpecError(violations)
    m, ell = spec.m, spec.ell
    n = m * ell
    rows = [0] * n
    for i in range(m):
        mult = pow(spec.alpha, i, ell)
        for k in range(m // 2 + 1):
            shifted = {(mult * s) % ell for s in spec.s_sets[k]}
            i2 = (i + k) % m
            for j in range(ell):
                u = vertex_index(i, j, m, ell, order)
                for t in shifted:
                    v = vertex_index(i2, (j + t) % ell, m, ell, order)
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
    labels = [None] * n
    for i in range(m):
        for j in range(ell):
            labels[vertex_index(i, j, m, ell, order)] = (i, j)
    g = SimpleGraph(n, rows, labels)  # constructor re-checks symmetry
    return g


def border(g: SimpleGraph) -> SimpleGraph:
    """Add a universal vertex at index 0; original vertices shift up by one."""
    n = g.n + 1
    all_but_first = ((1 << n) - 1) ^ 1
    rows = [all_but_first]
    for u in range(g.n):
        rows.append((g.rows[u] << 1) | 1)
    labels = (BORDER_LABEL,) + (g.labels if g.labels is not None else (None,) * g.n)
    return SimpleGraph(n, rows, labels)


def expected_valency(spec: MetacirculantSpec, bordered: bool = False) -> int:
    """Closed-form degree of a (bordered) metacirculant vertex.

    Every non-border vertex has the same degree: |S0| from its own block,
    |S_k| towards each of the two blocks at distance k (collapsing to one
    contribution for k = m/2 when m is even), plus 1 for the border edge.
    """
    violations = spec.violations()
    if violations:
        raise InvalidSpecError(violations)
    sizes = [len(s) for s in spec.s_sets]
    half = spec.m // 2
    if spec.m % 2 == 0:
        deg = sizes[0] + sizes[half] + 2 * sum(sizes[1:half])
    else:
        deg = sizes[0] + 2 * sum(sizes[1:half + 1])
    return deg + 1 if bordered else deg


@dataclass(frozen=True)
class GraphMetrics:
    """Degree/distance/cycle/clique summary of a graph.

    ``valency`` is None for irregular graphs, ``diameter`` None when
    disconnected, ``girth`` None for forests.  ``clique_number`` is exact
    when ``clique_exact`` is set, otherwise a lower bound reached before the
    search budget ran out (never silently wrong).
    """

    n: int
    edge_count: int
    degree_sequence: tuple[int, ...] = field(repr=False)
    valency: Optional[int]
    diameter: Optional[int]
    girth: Optional[int]
    clique_number: Optional[int] = None
    clique_exact: bool = False

    def describe(self) -> str:
        val = "irregular" if self.valency is None else str(self.valency)
        diam = "disconnected" if self.diameter is None else str(self.diameter)
        girth = "acyclic" if self.girth is None else str(self.girth)
        parts = [
            f"n={self.n}",
            f"edges={self.edge_count}",
            f"valency={val}",
            f"diameter={diam}",
            f"girth={girth}",
        ]
        if self.clique_number is not None:
            mark = "" if self.clique_exact else " (lower bound, budget hit)"
            parts.append(f"clique={self.clique_number}{mark}")
        return ", ".join(parts)


def metrics(g: SimpleGraph, compute_clique: bool = True,
            clique_budget: int = 50_000_000) -> GraphMetrics:
    """Degree sequence plus BFS diameter/girth and optional clique number."""
    degs = tuple(g.degrees())
    valency = degs[0] if len(set(degs)) == 1 else None
    diameter, girth = _diameter_and_girth(g)
    clique = None
    exact = False
    if compute_clique:
        clique, exact = max_clique(g, budget=clique_budget)
    return GraphMetrics(
        n=g.n,
        edge_count=sum(degs) // 2,
        degree_sequence=degs,
        valency=valency,
        diameter=diameter,
        girth=girth,
        clique_number=clique,
        clique_exact=exact,
    )


def _diameter_and_girth(g: SimpleGraph) -> tuple[Optional[int], Optional[int]]:
    """BFS from every vertex; exact for graphs of this size (n <= ~100)."""
    n = g.n
    adj = [list(_bits(r)) for r in g.rows]
    diameter = 0
    girth: Optional[int] = None
    disconnected = False
    for src in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[src] = 0
        queue = [src]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif v != parent[u]:
                    cycle = dist[u] + dist[v] + 1
                    if girth is None or cycle < girth:
                        girth = cycle
        reached = len(queue)
        if reached < n:
            disconnected = True
        else:
            diameter = max(diameter, max(dist))
    return (None if disconnected else diameter), girth


def max_clique(g: SimpleGraph, budget: int = 50_000_000) -> tuple[int, bool]:
    """Branch and bound maximum clique with a greedy colouring bound.

    Returns (size, exact).  When the node budget is exhausted the size is a
    valid lower bound and exact is False.
    """
    n = g.n
    if n == 0:
        return 0, True
    # High-degree vertices first tightens the colouring bound early.
    order = sorted(range(n), key=g.degree, reverse=True)
    pos = {v: i for i, v in enumerate(order)}
    adj = [0] * n
    for v in range(n):
        mask = 0
        for u in _bits(g.rows[v]):
            mask |= 1 << pos[u]
        adj[pos[v]] = mask

    best = 0
    nodes = 0
    exhausted = False

    def colour_sort(cand: int) -> list[tuple[int, int]]:
        # Greedy colouring: vertices of colour class c can never pairwise
        # extend a clique by more than c, giving the pruning bound.
        out: list[tuple[int, int]] = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                bit = 1 << v
                avail &= ~adj[v]
                avail ^= bit
                rest ^= bit
                out.append((v, colour))
        return out

    def expand(cand: int, size: int) -> None:
        nonlocal best, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        for v, bound in reversed(colour_sort(cand)):
            if size + bound <= best:
                return
            bit = 1 << v
            if size + 1 > best:
                best = size + 1
            nxt = cand & adj[v]
            if nxt:
                expand(nxt, size + 1)
            cand &= ~bit
            if exhausted:
                return

    expand((1 << n) - 1, 0)
    return best, not exhausted
