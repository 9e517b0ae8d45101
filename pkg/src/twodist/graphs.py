"""Small labeled graphs on adjacency bitsets.

Vertices are 0..n-1 and each row of a Graph is an int bitmask of neighbors.
Everything here targets exhaustive work at small order: graph6 round trips,
isomorphism-free enumeration, independence and clique search by branch and
bound, and the structural slicing (neighborhood subgraphs, bisection trees)
the bound machinery consumes.

Canonical forms are exact: the lexicographically smallest graph6 bit string
over all relabelings, searched with color-refinement classes and prefix
pruning.  No external isomorphism engine is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import Graph6Error, NotConnectedError, SizeGuardError

MAX_CANONICAL_N = 8
MAX_LABELED_N = 7
MAX_INDEPENDENCE_N = 32


class Graph:
    """An undirected simple graph held as a tuple of adjacency bitmasks."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, edges=()):
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError("bad edge (%r, %r) for n=%d" % (u, v, n))
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self.n = n
        self.rows = tuple(rows)

    @classmethod
    def from_rows(cls, rows) -> "Graph":
        G = cls.__new__(cls)
        G.n = len(rows)
        G.rows = tuple(rows)
        for v, row in enumerate(G.rows):
            if row >> G.n or row >> v & 1:
                raise ValueError("adjacency row out of range or loop at %d" % v)
            for u in _bits(row):
                if not G.rows[u] >> v & 1:
                    raise ValueError("adjacency is not symmetric")
        return G

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u])
                if u < v]

    @property
    def num_edges(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph.from_rows([full & ~row & ~(1 << v)
                                for v, row in enumerate(self.rows)])

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for u in range(self.n):
            for v in _bits(self.rows[u]):
                A[u, v] = 1.0
        return A

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return "Graph(%d, %r)" % (self.n, self.edges())


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)

def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])

def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])

def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])

def disjoint_union(graphs) -> Graph:
    rows = []
    offset = 0
    for G in graphs:
        rows.extend(row << offset for row in G.rows)
        offset += G.n
    return Graph.from_rows(rows)


# ---------------------------------------------------------------------------
# graph6 (short form, n <= 62)
# ---------------------------------------------------------------------------

def parse_graph6(text: str) -> Graph:
    """Decode a short-form graph6 string."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string")
    data = s.encode("ascii", errors="replace")
    if any(b < 63 or b > 126 for b in data):
        raise Graph6Error("graph6 byte out of printable range")
    if data[0] == 126:
        raise Graph6Error("long-form graph6 (n > 62) is not supported")
    n = data[0] - 63
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - 1 != need:
        raise Graph6Error(
            "graph6 bit field has %d bytes, expected %d" % (len(data) - 1, need))
    bits = []
    for b in data[1:]:
        x = b - 63
        bits.extend((x >> shift) & 1 for shift in range(5, -1, -1))
    rows = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx += 1
    return Graph.from_rows(rows)


def emit_graph6(G: Graph) -> str:
    """Encode a graph as a short-form graph6 string."""
    if G.n > 62:
        raise Graph6Error("short-form graph6 handles n <= 62 only")
    bits = []
    for j in range(1, G.n):
        for i in range(j):
            bits.append(1 if G.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [G.n + 63]
    for k in range(0, len(bits), 6):
        x = 0
        for bit in bits[k:k + 6]:
            x = x << 1 | bit
        out.append(x + 63)
    return bytes(out).decode("ascii")


# ---------------------------------------------------------------------------
# structure
# ---------------------------------------------------------------------------

def induced_subgraph(G: Graph, vertices) -> Graph:
    """Induced subgraph on the given vertices, keeping their relative order."""
    verts = sorted(set(vertices))
    index = {v: i for i, v in enumerate(verts)}
    rows = [0] * len(verts)
    for v in verts:
        for u in _bits(G.rows[v]):
            if u in index:
                rows[index[v]] |= 1 << index[u]
    return Graph.from_rows(rows)


def subgraph_on_neighbors(G: Graph, u: int) -> Graph:
    """The subgraph induced on the open neighborhood of u."""
    return induced_subgraph(G, _bits(G.rows[u]))


def delete_closed_neighborhood(G: Graph, u: int) -> Graph:
    """The subgraph induced on everything outside N[u]."""
    keep = [v for v in range(G.n) if v != u and not G.has_edge(u, v)]
    return induced_subgraph(G, keep)


def components(G: Graph) -> list[list[int]]:
    """Vertex sets of connected components, each sorted, in first-seen order."""
    unseen = (1 << G.n) - 1
    comps = []
    while unseen:
        start = unseen & -unseen
        comp = 0
        frontier = start
        while frontier:
            comp |= frontier
            nxt = 0
            for v in _bits(frontier):
                nxt |= G.rows[v]
            frontier = nxt & ~comp
        comps.append(_bits(comp))
        unseen &= ~comp
    return comps


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(components(G)) == 1


def independence_number(G: Graph) -> int:
    """Maximum independent set size by branch and bound."""
    if G.n > MAX_INDEPENDENCE_N:
        raise SizeGuardError("independence search guarded to n <= %d"
                             % MAX_INDEPENDENCE_N)
    rows = G.rows
    best = 0

    def bb(avail: int, size: int):
        nonlocal best
        if size + avail.bit_count() <= best:
            return
        if not avail:
            best = size
            return
        v = max(_bits(avail), key=lambda w: (rows[w] & avail).bit_count())
        bb(avail & ~(rows[v] | 1 << v), size + 1)
        bb(avail & ~(1 << v), size)

    bb((1 << G.n) - 1, 0)
    return best


def contains_clique(G: Graph, t: int) -> bool:
    """Whether G contains a clique on t vertices."""
    if t <= 0:
        return True
    if t == 1:
        return G.n >= 1
    rows = G.rows

    def ext(allowed: int, need: int) -> bool:
        if need == 0:
            return True
        while allowed:
            if allowed.bit_count() < need:
                return False
            low = allowed & -allowed
            v = low.bit_length() - 1
            allowed ^= low
            if ext(allowed & rows[v], need - 1):
                return True
        return False

    return ext((1 << G.n) - 1, t)


def is_complete(G: Graph) -> bool:
    return G.num_edges == G.n * (G.n - 1) // 2


# ---------------------------------------------------------------------------
# smallest-eigenvalue floor for connected graphs
# ---------------------------------------------------------------------------

@dataclass
class EigenFloorReport:
    n: int
    smallest: float
    floor: float
    holds: bool
    gap: float  # smallest - (-floor), zero at the balanced complete bipartite


def check_eigenvalue_floor(G: Graph,
                                    tol: float = linalg.DEFAULT_TOL
                                    ) -> EigenFloorReport:
    """Check that a connected graph's smallest adjacency eigenvalue is at
    least -sqrt(floor(n/2) * ceil(n/2))."""
    if not is_connected(G):
        raise NotConnectedError("the eigenvalue floor applies to connected graphs")
    A = G.adjacency()
    smallest = float(linalg.eigen_decompose(A, tol).values[-1])
    floor = math.sqrt((G.n // 2) * ((G.n + 1) // 2))
    cut = linalg.scaled_tol(A, tol)
    return EigenFloorReport(n=G.n, smallest=smallest, floor=floor,
                            holds=smallest >= -floor - cut,
                            gap=smallest + floor)


# ---------------------------------------------------------------------------
# canonical forms and enumeration
# ---------------------------------------------------------------------------

def _minimal_segments(rows: tuple, n: int) -> list[int]:
    """Lexicographically minimal graph6 bit segments over all relabelings.

    segments[k] packs the adjacency of the position-k vertex to positions
    0..k-1, earliest position in the highest bit, which is exactly the
    graph6 bit order.  Plain minimization over every ordering, organized as
    a depth-first search with prefix pruning against a greedily refreshed
    best completion; the adjacency-to-prefix value of each unplaced vertex
    is maintained incrementally.
    """
    segval = [0] * n
    placed: list[int] = []
    unplaced = set(range(n))

    def place(v: int):
        placed.append(v)
        unplaced.discard(v)
        row = rows[v]
        for w in unplaced:
            segval[w] = segval[w] << 1 | (row >> w & 1)

    def unplace():
        v = placed.pop()
        for w in unplaced:
            segval[w] >>= 1
        unplaced.add(v)

    def greedy_tail() -> list[int]:
        added = 0
        tail = []
        while unplaced:
            seg, v = min((segval[w], w) for w in unplaced)
            place(v)
            tail.append(seg)
            added += 1
        for _ in range(added):
            unplace()
        return tail

    best = greedy_tail()

    def dfs():
        k = len(placed)
        if k == n:
            return
        cands = sorted((segval[v], v) for v in unplaced)
        for seg, v in cands:
            if seg > best[k]:
                break
            place(v)
            if seg < best[k]:
                best[k] = seg
                best[k + 1:] = greedy_tail()
            dfs()
            unplace()

    dfs()
    return best


def canonical_form(G: Graph) -> str:
    """graph6 string of the canonical relabeling of G."""
    n = G.n
    m = G.num_edges
    if m == 0 or m == n * (n - 1) // 2:
        return emit_graph6(G)
    segs = _minimal_segments(G.rows, n)
    rows = [0] * n
    for k in range(1, n):
        for i in range(k):
            if segs[k] >> (k - 1 - i) & 1:
                rows[i] |= 1 << k
                rows[k] |= 1 << i
    return emit_graph6(Graph.from_rows(rows))


@lru_cache(maxsize=None)
def _canonical_g6(n: int) -> tuple[str, ...]:
    if n == 0:
        return (emit_graph6(empty_graph(0)),)
    if n == 1:
        return (emit_graph6(empty_graph(1)),)
    seen = set()
    for g6 in _canonical_g6(n - 1):
        parent = parse_graph6(g6)
        rows = list(parent.rows) + [0]
        for mask in range(1 << (n - 1)):
            ext = [rows[v] | (mask >> v & 1) << (n - 1) for v in range(n - 1)]
            ext.append(mask)
            seen.add(canonical_form(Graph.from_rows(ext)))
    return tuple(sorted(seen))


def enumerate_graphs(n: int, connected_only: bool = False,
                     dedup: str = "canonical"):
    """All graphs on n vertices, one per isomorphism class by default.

    dedup="canonical" returns a deterministic tuple of canonical
    representatives (guarded to n <= 8); dedup="labeled" yields every
    labeled graph (guarded to n <= 7).
    """
    if dedup == "canonical":
        if n > MAX_CANONICAL_N:
            raise SizeGuardError("canonical enumeration guarded to n <= %d"
                                 % MAX_CANONICAL_N)
        graphs = tuple(parse_graph6(g6) for g6 in _canonical_g6(n))
        if connected_only:
            graphs = tuple(G for G in graphs if is_connected(G))
        return graphs
    if dedup == "labeled":
        if n > MAX_LABELED_N:
            raise SizeGuardError("labeled enumeration guarded to n <= %d"
                                 % MAX_LABELED_N)
        return _labeled_stream(n, connected_only)
    raise ValueError("dedup must be 'canonical' or 'labeled'")


def _labeled_stream(n: int, connected_only: bool):
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        G = Graph.from_rows(rows)
        if connected_only and not is_connected(G):
            continue
        yield G


# ---------------------------------------------------------------------------
# neighborhood bisection
# ---------------------------------------------------------------------------

@dataclass
class BisectionReport:
    leaves: list
    chosen: list           # (level, index within level, vertex) per split
    nonempty_internal: int
    ledger_holds: bool     # n == nonempty_internal + sum of leaf orders


def neighborhood_bisection(G: Graph, k: int,
                           selector: str = "max_degree") -> BisectionReport:
    """Split G k times into (neighborhood, non-neighborhood) subgraphs.

    Each nonempty node at depth i < k picks a vertex u and produces the
    subgraph on N(u) and the subgraph away from N[u]; u itself is dropped,
    so the order of G equals the number of nonempty internal nodes plus the
    total order of the 2^k leaves.  Empty nodes pass two empty children
    down without consuming a vertex.
    """
    if k < 0:
        raise ValueError("depth k must be nonnegative")
    current = [G]
    chosen = []
    nonempty = 0
    for level in range(k):
        nxt = []
        for idx, H in enumerate(current):
            if H.n == 0:
                nxt.extend([H, H])
                continue
            nonempty += 1
            if selector == "max_degree":
                u = max(range(H.n), key=lambda v: (H.degree(v), -v))
            elif selector == "first":
                u = 0
            else:
                raise ValueError("unknown selector %r" % selector)
            chosen.append((level, idx, u))
            nxt.append(subgraph_on_neighbors(H, u))
            nxt.append(delete_closed_neighborhood(H, u))
        current = nxt
    ledger = G.n == nonempty + sum(H.n for H in current)
    return BisectionReport(leaves=current, chosen=chosen,
                           nonempty_internal=nonempty, ledger_holds=ledger)
