"""Brute-force ground truth for small graphs.

Everything here is exhaustive search over bitsets: independence number via
max clique on the complement with greedy-coloring pruning, clique cover via
exact coloring of the complement, minrank by enumerating normalized vector
pairs per vertex, and maximum induced acyclic subgraph by branching on
cycles.  Budgets make exhaustion a distinguishable outcome: when a search
gives up it returns a Bounds window instead of a number, never a guess.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .errors import IntegrityError, ParameterError
from .ff_linalg import as_modulus
from .graphs import DiGraph, Graph, complement


@dataclass(frozen=True)
class SearchBudget:
    max_vertices: int = 128
    max_rank: int = 16
    max_nodes_expanded: int = 20_000_000
    time_limit_seconds: float = 300.0

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_rank < 1:
            raise ParameterError("budget sizes must be positive")
        if self.max_nodes_expanded < 1 or self.time_limit_seconds <= 0:
            raise ParameterError("budget limits must be positive")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class Bounds:
    """Window returned when a search exhausts its budget: the true value is
    somewhere in [lower, upper]."""

    lower: int
    upper: int


class _BudgetExceeded(Exception):
    pass


class _SearchState:
    __slots__ = ("nodes", "max_nodes", "deadline")

    def __init__(self, budget: SearchBudget):
        self.nodes = 0
        self.max_nodes = budget.max_nodes_expanded
        self.deadline = time.monotonic() + budget.time_limit_seconds

    def tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _BudgetExceeded
        if self.nodes & 0x3FF == 0 and time.monotonic() > self.deadline:
            raise _BudgetExceeded


def _check_size(g, budget: SearchBudget):
    if g.n > budget.max_vertices:
        raise ParameterError(
            f"graph has {g.n} vertices, budget allows {budget.max_vertices}")


# ------------------------------------------------------------- max clique


def _greedy_color_order(adj, cand: int):
    """Tomita-style: partition candidates into color classes; returns the
    vertices in increasing color order with their color-count bound."""
    order = []
    bounds = []
    color = 0
    rest = cand
    while rest:
        color += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~(1 << v) & ~adj[v]
            rest &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def _max_clique(adj, n: int, state: _SearchState) -> int:
    best = 0

    def expand(cand: int, size: int):
        nonlocal best
        state.tick()
        if cand == 0:
            if size > best:
                best = size
            return
        order, bounds = _greedy_color_order(adj, cand)
        sub = cand
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best:
                return
            v = order[idx]
            expand(sub & adj[v], size + 1)
            sub &= ~(1 << v)

    expand((1 << n) - 1, 0)
    return best


def independence_number(g: Graph, budget: SearchBudget = DEFAULT_BUDGET):
    """Exact alpha(G) as max clique of the complement; Bounds on exhaustion."""
    _check_size(g, budget)
    if g.n == 0:
        return 0
    comp = complement(g)
    state = _SearchState(budget)
    try:
        return _max_clique(comp.adj, g.n, state)
    except _BudgetExceeded:
        return Bounds(1, g.n)


# ------------------------------------------------------------- clique cover


def _chromatic_number(adj, n: int, state: _SearchState) -> int:
    """Exact chromatic number by branch and bound over color assignments."""
    order = sorted(range(n), key=lambda v: -adj[v].bit_count())
    best = n
    colors = [0] * n  # bitmask of vertices per color slot, indexed 0..best-1

    def assign(idx: int, used: int):
        nonlocal best
        state.tick()
        if used >= best:
            return
        if idx == n:
            best = used
            return
        v = order[idx]
        row = adj[v]
        for c in range(used):
            if colors[c] & row == 0:
                colors[c] |= 1 << v
                assign(idx + 1, used)
                colors[c] &= ~(1 << v)
        if used + 1 < best:
            colors[used] = 1 << v
            assign(idx + 1, used + 1)
            colors[used] = 0

    assign(0, 0)
    return best


def clique_cover_number(g: Graph, budget: SearchBudget = DEFAULT_BUDGET):
    """Exact clique cover number, computed as the chromatic number of the
    complement; Bounds on exhaustion."""
    _check_size(g, budget)
    if g.n == 0:
        return 0
    comp = complement(g)
    state = _SearchState(budget)
    try:
        return _chromatic_number(comp.adj, g.n, state)
    except _BudgetExceeded:
        return Bounds(1, g.n)


# ------------------------------------------------------------- minrank


@lru_cache(maxsize=32)
def _dot_table(p: int, r: int):
    """Pairwise dot products mod p of all vectors in F_p^r, indexed by the
    base-p little-endian encoding; None above the table cutoff."""
    count = p**r
    if count > 1024:
        return None
    digits = []
    for vid in range(count):
        v = []
        x = vid
        for _ in range(r):
            v.append(x % p)
            x //= p
        digits.append(v)
    table = [[sum(a * b for a, b in zip(u, w)) % p for w in digits] for u in digits]
    return table


def _vector_digits(vid: int, p: int, r: int):
    out = []
    for _ in range(r):
        out.append(vid % p)
        vid //= p
    return out


def _canonical_ids(p: int, r: int):
    """Nonzero vectors whose first nonzero digit is 1; scaling both sides of
    a vertex pair independently preserves all the constraints, so searching
    these suffices."""
    out = []
    for vid in range(1, p**r):
        digs = _vector_digits(vid, p, r)
        lead = next(x for x in digs if x)
        if lead == 1:
            out.append(vid)
    return out


def _minrank_feasible(n, p, r, pre_zero, post_zero, state) -> bool:
    """Is there an assignment of vector pairs (u_v, w_v) in F_p^r with
    <u_v, w_v> != 0 and <u_a, w_b> = 0 for every ordered non-edge (a, b)?

    pre_zero[k] lists earlier positions j with (k, j) a non-edge (constrains
    u_k against w_j); post_zero[k] lists j with (j, k) a non-edge (constrains
    w_k against u_j).  Vertices are already in search order.
    """
    table = _dot_table(p, r)
    if table is None:
        digit_cache = {vid: _vector_digits(vid, p, r) for vid in range(p**r)}

        def dot(a, b):
            return sum(x * y for x, y in zip(digit_cache[a], digit_cache[b])) % p
    else:
        def dot(a, b):
            return table[a][b]

    candidates = _canonical_ids(p, r)
    us = [0] * n
    ws = [0] * n

    def place(k: int) -> bool:
        if k == n:
            return True
        pre = pre_zero[k]
        post = post_zero[k]
        for u in candidates:
            state.tick()
            if any(dot(u, ws[j]) for j in pre):
                continue
            for w in candidates:
                if dot(u, w) == 0:
                    continue
                if any(dot(us[j], w) for j in post):
                    continue
                us[k] = u
                ws[k] = w
                if place(k + 1):
                    return True
        return False

    return place(0)


def minrank_bruteforce(g, p, budget: SearchBudget = DEFAULT_BUDGET):
    """Smallest r such that vector pairs in F_p^r realize the graph, which
    is exactly minrank over F_p.  Works for Graph and DiGraph.  Tries r
    upward from 1; returns Bounds if the budget dies first."""
    mod = as_modulus(p)
    _check_size(g, budget)
    n = g.n
    if n == 0:
        return 0
    directed = isinstance(g, DiGraph)
    degree = [g.adj[v].bit_count() for v in range(n)]
    order = sorted(range(n), key=lambda v: -degree[v])
    pre_zero = [[] for _ in range(n)]
    post_zero = [[] for _ in range(n)]
    for k, v in enumerate(order):
        for j, w in enumerate(order[:k]):
            if not g.adj[v] >> w & 1:
                pre_zero[k].append(j)
            if directed:
                if not g.adj[w] >> v & 1:
                    post_zero[k].append(j)
            elif not g.adj[v] >> w & 1:
                post_zero[k].append(j)
    state = _SearchState(budget)
    proved_above = 0
    for r in range(1, min(n, budget.max_rank) + 1):
        try:
            if _minrank_feasible(n, mod.p, r, pre_zero, post_zero, state):
                return r
            proved_above = r
        except _BudgetExceeded:
            return Bounds(proved_above + 1, n)
    if proved_above >= n:
        raise IntegrityError("identity matrix must realize rank n")
    return Bounds(proved_above + 1, n)


# ------------------------------------------------------------- induced acyclic


def _find_cycle(adj, mask: int):
    """Some directed cycle inside the induced submask, as a vertex list, or
    None.  Iterative DFS with an explicit stack."""
    color = {}
    parent = {}
    for start in _bits(mask):
        if color.get(start):
            continue
        stack = [(start, iter(_bits(adj[start] & mask)))]
        color[start] = 1
        parent[start] = None
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if color.get(w, 0) == 0:
                    color[w] = 1
                    parent[w] = v
                    stack.append((w, iter(_bits(adj[w] & mask))))
                    advanced = True
                    break
                if color.get(w) == 1:
                    cycle = [w]
                    x = v
                    while x != w:
                        cycle.append(x)
                        x = parent[x]
                    return cycle
            if not advanced:
                color[v] = 2
                stack.pop()
    return None


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def max_acyclic_induced(dg: DiGraph, budget: SearchBudget = DEFAULT_BUDGET):
    """Largest vertex-set size inducing an acyclic subdigraph; exact by
    branching on a found cycle (one removal per cycle vertex)."""
    _check_size(dg, budget)
    if dg.n == 0:
        return 0
    state = _SearchState(budget)
    best = 0
    seen = set()
    full = (1 << dg.n) - 1

    def rec(mask: int):
        nonlocal best
        state.tick()
        size = mask.bit_count()
        if size <= best or mask in seen:
            return
        seen.add(mask)
        cycle = _find_cycle(dg.adj, mask)
        if cycle is None:
            best = size
            return
        for v in cycle:
            rec(mask & ~(1 << v))

    try:
        rec(full)
    except _BudgetExceeded:
        return Bounds(max(best, 1), dg.n)
    return best


# ------------------------------------------------------------- sandwich


@dataclass(frozen=True)
class SandwichReport:
    n: int
    alpha: int
    clique_cover: int
    minrank: int
    minrank_complement: int
    product_bound_ok: bool


def check_sandwich(g: Graph, p, budget: SearchBudget = DEFAULT_BUDGET) -> SandwichReport:
    """Computes alpha, clique cover, and minrank of the graph and its
    complement, then asserts alpha <= minrank <= clique cover and
    minrank(G) * minrank(complement G) >= n, raising IntegrityError naming
    the violated inequality."""
    values = {
        "alpha": independence_number(g, budget),
        "clique_cover": clique_cover_number(g, budget),
        "minrank": minrank_bruteforce(g, p, budget),
        "minrank_complement": minrank_bruteforce(complement(g), p, budget),
    }
    for name, v in values.items():
        if isinstance(v, Bounds):
            raise ParameterError(f"budget exhausted while computing {name}")
    alpha, cc = values["alpha"], values["clique_cover"]
    mr, mrc = values["minrank"], values["minrank_complement"]
    if not alpha <= mr:
        raise IntegrityError(f"alpha <= minrank violated: {alpha} > {mr}")
    if not mr <= cc:
        raise IntegrityError(f"minrank <= clique cover violated: {mr} > {cc}")
    if g.n and mr * mrc < g.n:
        raise IntegrityError(
            f"minrank product bound violated: {mr} * {mrc} < {g.n}")
    return SandwichReport(n=g.n, alpha=alpha, clique_cover=cc, minrank=mr,
                          minrank_complement=mrc, product_bound_ok=True)
