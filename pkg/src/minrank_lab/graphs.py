"""Graph families used by the rank constructions.

Vertices are always 0..n-1 in a canonical order (ascending subset bitmask,
or lexicographic coordinate tuples), and adjacency is stored as one Python
int bit row per vertex.  Everything is validated at construction: rows in
range, no self-loops, and symmetry for undirected graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from ._subsets import pairwise_intersection_lookup, subset_masks
from .errors import ParameterError
from .ff_linalg import as_modulus, mat_product_mod

MAX_VERTICES = 1 << 22


@dataclass(frozen=True)
class SubsetVertex:
    """An s-subset of [d] as a bitmask; bit i set means element i+1 is in."""

    mask: int
    d: int

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.d) if self.mask >> i & 1)


def _pack_bool_rows(mat: np.ndarray) -> tuple[int, ...]:
    packed = np.packbits(mat.astype(np.uint8), axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def _unpack_rows(adj: tuple[int, ...], n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    buf = b"".join(row.to_bytes(nbytes, "little") for row in adj)
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8).reshape(len(adj), nbytes),
                         axis=1, bitorder="little")
    return bits[:, :n].astype(bool)


def _validate_common(n: int, adj, labels):
    if not 0 <= n <= MAX_VERTICES:
        raise ParameterError(f"vertex count {n} outside [0, 2^22]")
    if len(adj) != n:
        raise ParameterError(f"{len(adj)} adjacency rows for {n} vertices")
    full = (1 << n) - 1
    for i, row in enumerate(adj):
        if row < 0 or row & ~full:
            raise ParameterError(f"adjacency row {i} out of range")
        if row >> i & 1:
            raise ParameterError(f"self-loop at vertex {i}")
    if labels is not None and len(labels) != n:
        raise ParameterError("labels length differs from n")


class Graph:
    """Undirected simple graph on vertices 0..n-1, adjacency as bit rows."""

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, adj, labels=None):
        adj = tuple(int(r) for r in adj)
        _validate_common(n, adj, labels)
        if n:
            bits = _unpack_rows(adj, n)
            if not (bits == bits.T).all():
                raise ParameterError("adjacency is not symmetric")
        self.n = n
        self.adj = adj
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "Graph":
        rows = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ParameterError(f"bad edge ({i}, {j})")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, rows, labels)

    def has_edge(self, i: int, j: int) -> bool:
        self._check_vertex(i)
        self._check_vertex(j)
        return bool(self.adj[i] >> j & 1)

    def degree(self, i: int) -> int:
        self._check_vertex(i)
        return self.adj[i].bit_count()

    def edges(self):
        for i in range(self.n):
            rest = self.adj[i] >> (i + 1)
            j = i + 1
            while rest:
                if rest & 1:
                    yield (i, j)
                rest >>= 1
                j += 1

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def _check_vertex(self, i: int):
        if not 0 <= i < self.n:
            raise ParameterError(f"vertex {i} out of range")

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"


class DiGraph:
    """Directed graph without self-loops; adj[i] is the successor bit row."""

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, adj, labels=None):
        adj = tuple(int(r) for r in adj)
        _validate_common(n, adj, labels)
        self.n = n
        self.adj = adj
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "DiGraph":
        rows = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ParameterError(f"bad edge ({i}, {j})")
            rows[i] |= 1 << j
        return cls(n, rows, labels)

    def has_edge(self, i: int, j: int) -> bool:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise ParameterError("vertex out of range")
        return bool(self.adj[i] >> j & 1)

    def edges(self):
        for i in range(self.n):
            rest = self.adj[i]
            j = 0
            while rest:
                if rest & 1:
                    yield (i, j)
                rest >>= 1
                j += 1

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.adj)

    def __repr__(self):
        return f"DiGraph(n={self.n}, m={self.edge_count()})"


# ------------------------------------------------------------ small algebra


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    rows = [(~g.adj[i]) & full & ~(1 << i) for i in range(g.n)]
    return Graph(g.n, rows, g.labels)


def is_independent_set(g: Graph, vertices) -> bool:
    vs = list(vertices)
    for v in vs:
        g._check_vertex(v)
    mask = 0
    for v in vs:
        mask |= 1 << v
    return all(g.adj[v] & mask & ~(1 << v) == 0 for v in vs)


def induced_subgraph(g, vertices):
    """Induced subgraph on the given vertices, reindexed in sorted order.

    Works for both Graph and DiGraph; labels are carried over.
    """
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise ParameterError(f"vertex {v} out of range")
    pos = {v: k for k, v in enumerate(vs)}
    rows = []
    for v in vs:
        row = 0
        for w in vs:
            if g.adj[v] >> w & 1:
                row |= 1 << pos[w]
        rows.append(row)
    labels = tuple(g.labels[v] for v in vs) if g.labels is not None else None
    return type(g)(len(vs), rows, labels)


def is_acyclic(dg: DiGraph) -> bool:
    """Kahn peeling; True iff the digraph has no directed cycle."""
    indeg = [0] * dg.n
    for i in range(dg.n):
        rest = dg.adj[i]
        j = 0
        while rest:
            if rest & 1:
                indeg[j] += 1
            rest >>= 1
            j += 1
    queue = [v for v in range(dg.n) if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        rest = dg.adj[v]
        j = 0
        while rest:
            if rest & 1:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
            rest >>= 1
            j += 1
    return seen == dg.n


# ------------------------------------------------------------ families


def kneser(d: int, s: int, T) -> Graph:
    """Graph on all s-subsets of [d]; A ~ B iff |A and B| lands in T.

    T must be a set of intersection sizes inside {0, ..., s-1}; the value s
    itself is excluded since distinct s-sets cannot meet in s points.
    """
    if not 0 < s <= d:
        raise ParameterError(f"need 0 < s <= d, got s={s} d={d}")
    tset = set()
    for x in T:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise ParameterError(f"intersection size must be an int: {x!r}")
        if not 0 <= x < s:
            raise ParameterError(f"intersection size {x} outside [0, s-1]")
        tset.add(int(x))
    n = comb(d, s)
    if n > MAX_VERTICES:
        raise ParameterError(f"C({d},{s}) = {n} exceeds the 2^22 vertex cap")
    masks = subset_masks(d, s)
    labels = tuple(SubsetVertex(m, d) for m in masks)
    if d <= 63:
        member = np.zeros(s + 1, dtype=bool)
        for x in tset:
            member[x] = True
        adj_bool = pairwise_intersection_lookup(masks, member)
        np.fill_diagonal(adj_bool, False)
        return Graph(n, _pack_bool_rows(adj_bool), labels)
    if n > 8192:
        raise ParameterError("universe beyond 63 elements is only supported "
                             "for graphs up to 8192 vertices")
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if (masks[i] & masks[j]).bit_count() in tset:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, rows, labels)


def kneser_mod(d: int, s: int, t: int, q: int) -> Graph:
    """Kneser-type graph whose intersection sizes are the residue t mod q."""
    if q < 1:
        raise ParameterError(f"q must be >= 1, got {q}")
    if not 0 <= t < s:
        raise ParameterError(f"need 0 <= t < s, got t={t} s={s}")
    return kneser(d, s, {i for i in range(s) if i % q == t % q})


def _field_vectors(d: int, p: int) -> np.ndarray:
    if p**d > MAX_VERTICES:
        raise ParameterError(f"{p}^{d} candidate vectors exceed the 2^22 cap")
    return np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64)


def _orthogonality_graph(d: int, p, self_orthogonal: bool) -> Graph:
    mod = as_modulus(p)
    vecs = _field_vectors(d, mod.p)
    norms = (vecs * vecs).sum(axis=1) % mod.p
    keep = vecs[norms == 0] if self_orthogonal else vecs[norms != 0]
    gram = mat_product_mod(keep, keep.T, mod.p)
    adj_bool = gram != 0
    np.fill_diagonal(adj_bool, False)
    labels = tuple(tuple(int(x) for x in v) for v in keep)
    return Graph(len(keep), _pack_bool_rows(adj_bool), labels)


def g1(d: int, p) -> Graph:
    """Vectors of F_p^d with nonzero self-product; u ~ v iff <u, v> != 0."""
    return _orthogonality_graph(d, p, self_orthogonal=False)


def g2(d: int, p) -> Graph:
    """Self-orthogonal vectors of F_p^d (zero vector included); u ~ v iff
    <u, v> != 0."""
    return _orthogonality_graph(d, p, self_orthogonal=True)


def directed_ternary(d: int) -> DiGraph:
    """Digraph on F_3^d with u -> v iff u != v and no coordinate of u - v
    is congruent to 1 mod 3."""
    if d < 1:
        raise ParameterError(f"d must be >= 1, got {d}")
    vecs = _field_vectors(d, 3)
    n = len(vecs)
    diff_ok = np.ones((n, n), dtype=bool)
    for c in range(d):
        delta = (vecs[:, c, None] - vecs[None, :, c]) % 3
        diff_ok &= delta != 1
    np.fill_diagonal(diff_ok, False)
    rows = _pack_bool_rows(diff_ok)
    labels = tuple(tuple(int(x) for x in v) for v in vecs)
    return DiGraph(n, rows, labels)


# ------------------------------------------------------------ JSON I/O


def _label_to_json(label):
    if isinstance(label, SubsetVertex):
        return label.mask
    if isinstance(label, tuple):
        return list(label)
    return label


def graph_to_json(g) -> dict:
    directed = isinstance(g, DiGraph)
    edges = [[i, j] for i, j in g.edges()]
    labels = [_label_to_json(x) for x in g.labels] if g.labels is not None else None
    return {"n": g.n, "directed": directed, "edges": edges, "labels": labels}


def graph_from_json(obj) -> Graph | DiGraph:
    try:
        n = int(obj["n"])
        directed = bool(obj["directed"])
        edges = obj["edges"]
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"malformed graph object: {exc}") from None
    labels = obj.get("labels")
    if labels is not None:
        labels = tuple(tuple(x) if isinstance(x, list) else x for x in labels)
    pairs = [(int(i), int(j)) for i, j in edges]
    cls = DiGraph if directed else Graph
    return cls.from_edges(n, pairs, labels)
