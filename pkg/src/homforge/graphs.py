"""Simple undirected graphs, 3-uniform tripartite hypergraphs, and
homomorphism enumeration.

Vertices are 1..n.  Edges are stored as (min, max) pairs, no self-loops.
A homomorphism G -> H is a map on vertices sending every edge to an edge;
it is represented as a tuple of length n(G) whose i-th entry is the image
of vertex i+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be >= 0")
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge ({u},{v}) out of range or unnormalised")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, frozenset(_norm_edge(u, v) for u, v in edges))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, frozenset())

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, combinations(range(1, n + 1), 2))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycles need at least 3 vertices")
        return cls.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(1, n)])

    # -- views ----------------------------------------------------------------

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nb: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return {v: frozenset(s) for v, s in nb.items()}

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and _norm_edge(u, v) in self.edges

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def add_edges(self, extra) -> "Graph":
        return Graph.from_edges(self.n, list(self.edges) + list(extra))

    def relabel_offset(self, off: int, new_n: int) -> list[tuple[int, int]]:
        return [(u + off, v + off) for u, v in self.edges]

    # -- standard predicates --------------------------------------------------

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        out = []
        for s in self.vertices():
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_bipartite(self) -> bool:
        colour: dict[int, int] = {}
        for s in self.vertices():
            if s in colour:
                continue
            colour[s] = 0
            queue = [s]
            while queue:
                x = queue.pop()
                for y in self.adj[x]:
                    if y not in colour:
                        colour[y] = 1 - colour[x]
                        queue.append(y)
                    elif colour[y] == colour[x]:
                        return False
        return True

    @cached_property
    def distances(self) -> list[list[int]]:
        """All-pairs BFS distances, table indexed [u][v], unreachable = big."""
        big = 10**9
        dist = [[big] * (self.n + 1) for _ in range(self.n + 1)]
        for s in self.vertices():
            d = dist[s]
            d[s] = 0
            queue = [s]
            head = 0
            while head < len(queue):
                x = queue[head]
                head += 1
                for y in self.adj[x]:
                    if d[y] > d[x] + 1:
                        d[y] = d[x] + 1
                        queue.append(y)
        return dist

    # -- text format ----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"p {self.n} {self.m}"]
        lines += [f"e {u} {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        n = None
        edges = []
        for ln, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if toks[0] == "p":
                if n is not None:
                    raise ValueError(f"line {ln}: duplicate header")
                if len(toks) != 3:
                    raise ValueError(f"line {ln}: expected 'p <n> <m>'")
                n, m = int(toks[1]), int(toks[2])
            elif toks[0] == "e":
                if n is None:
                    raise ValueError(f"line {ln}: edge before header")
                if len(toks) != 3:
                    raise ValueError(f"line {ln}: expected 'e <u> <v>'")
                edges.append((int(toks[1]), int(toks[2])))
            else:
                raise ValueError(f"line {ln}: unrecognised directive {toks[0]!r}")
        if n is None:
            raise ValueError("missing 'p <n> <m>' header")
        g = cls.from_edges(n, edges)
        if g.m != m:
            raise ValueError(f"header declares {m} edges, found {g.m}")
        return g


@dataclass(frozen=True)
class Hypergraph3:
    """3-uniform tripartite hypergraph with parts A, B, C of size n each.

    A hyperedge (a, b, c) has part-local coordinates in 1..n.
    """

    n: int
    edges: frozenset[tuple[int, int, int]]

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 3 or not all(1 <= x <= self.n for x in e):
                raise ValueError(f"hyperedge {e} out of range")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Hypergraph3":
        return cls(n, frozenset(tuple(e) for e in edges))

    def to_text(self) -> str:
        lines = [f"h {self.n}"]
        lines += [f"t {a} {b} {c}" for a, b, c in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph3":
        n = None
        edges = []
        for ln, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if toks[0] == "h":
                if len(toks) != 2:
                    raise ValueError(f"line {ln}: expected 'h <n>'")
                n = int(toks[1])
            elif toks[0] == "t":
                if n is None:
                    raise ValueError(f"line {ln}: hyperedge before header")
                if len(toks) != 4:
                    raise ValueError(f"line {ln}: expected 't <a> <b> <c>'")
                edges.append((int(toks[1]), int(toks[2]), int(toks[3])))
            else:
                raise ValueError(f"line {ln}: unrecognised directive {toks[0]!r}")
        if n is None:
            raise ValueError("missing 'h <n>' header")
        return cls.from_edges(n, edges)


class HomCapExceeded(RuntimeError):
    def __init__(self, cap: int, partial: int):
        super().__init__(f"homomorphism cap {cap} exceeded (partial count {partial})")
        self.cap = cap
        self.partial = partial


def is_homomorphism(G: Graph, H: Graph, phi) -> bool:
    if len(phi) != G.n or any(not 1 <= h <= H.n for h in phi):
        return False
    return all(H.has_edge(phi[u - 1], phi[v - 1]) for u, v in G.edges)


def _search_order(G: Graph) -> list[int]:
    """Max-degree seed, then grow connected (BFS by degree); disconnected
    components follow in the same fashion."""
    remaining = set(G.vertices())
    order: list[int] = []
    placed: set[int] = set()
    while remaining:
        seed = max(remaining, key=lambda v: (G.degree(v), -v))
        frontier = [seed]
        while frontier:
            frontier.sort(key=lambda v: (-G.degree(v), v))
            v = frontier.pop(0)
            if v not in remaining:
                continue
            remaining.discard(v)
            order.append(v)
            placed.add(v)
            frontier += [w for w in G.adj[v] if w in remaining]
    return order


def enumerate_homs(
    G: Graph,
    H: Graph,
    cap: int | None = None,
    *,
    order: list[int] | None = None,
    distance_prune: bool = False,
    first_only: bool = False,
) -> list[tuple[int, ...]]:
    """All homomorphisms G -> H, sorted lexicographically as map tuples.

    cap aborts the search with HomCapExceeded once more than cap maps have
    been found.  distance_prune additionally rejects images that would
    force some pair of vertices closer together than they are in H.
    """
    if H.n == 0:
        if G.n == 0:
            return [()]
        return []
    order = order if order is not None else _search_order(G)
    if sorted(order) != list(G.vertices()):
        raise ValueError("order must be a permutation of the source vertices")
    n = G.n
    pos_of = {v: i for i, v in enumerate(order)}
    # neighbours of order[i] that appear earlier in the order
    earlier_nbrs: list[list[int]] = []
    for i, v in enumerate(order):
        earlier_nbrs.append([w for w in G.adj[v] if pos_of[w] < i])
    dG = G.distances if distance_prune else None
    dH = H.distances if distance_prune else None

    results: list[tuple[int, ...]] = []
    image = [0] * (n + 1)  # image[v] for assigned v
    assigned: list[int] = []

    def candidates(v: int, i: int):
        nbrs = earlier_nbrs[i]
        if nbrs:
            cand = set(H.adj[image[nbrs[0]]])
            for w in nbrs[1:]:
                cand &= H.adj[image[w]]
        else:
            cand = set(H.vertices())
        if distance_prune and cand:
            dv = dG[v]
            cand = {
                h for h in cand
                if all(dH[image[w]][h] <= dv[w] for w in assigned)
            }
        return sorted(cand)

    def rec(i: int) -> bool:
        if i == n:
            results.append(tuple(image[1:]))
            if cap is not None and len(results) > cap:
                raise HomCapExceeded(cap, len(results))
            return first_only
        v = order[i]
        for h in candidates(v, i):
            image[v] = h
            assigned.append(v)
            done = rec(i + 1)
            assigned.pop()
            image[v] = 0
            if done:
                return True
        return False

    rec(0)
    results.sort()
    return results


def count_homs(G: Graph, H: Graph, cap: int | None = None) -> int:
    return len(enumerate_homs(G, H, cap))


def has_hom(G: Graph, H: Graph) -> bool:
    return bool(enumerate_homs(G, H, first_only=True))


def is_rigid(G: Graph) -> bool:
    """Exactly one homomorphism G -> G (necessarily the identity)."""
    try:
        homs = enumerate_homs(G, G, cap=1)
    except HomCapExceeded:
        return False
    assert homs == [tuple(G.vertices())]
    return True


def are_incomparable(G: Graph, H: Graph) -> bool:
    """No homomorphism in either direction."""
    return not has_hom(G, H) and not has_hom(H, G)
