"""Brute-force counting oracles: exact small-instance enumeration.

Every function exhaustively enumerates witnesses and returns the exact
integer count together with its residue mod p.  These are deliberately
written as the most direct enumeration possible — they exist to check the
algebraic (coefficient-extraction) counting paths, so they must not share
any machinery with them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .formulas import CNF
from .graphs import Graph, Hypergraph3


@dataclass(frozen=True)
class CountResult:
    exact: int
    modulus: int
    modp: int


def _result(exact: int, p: int) -> CountResult:
    if p < 2:
        raise ValueError(f"modulus must be at least 2, got {p}")
    return CountResult(exact, p, exact % p)


def count_sat3(cnf: CNF, p: int) -> CountResult:
    """Satisfying assignments of a 3-CNF over all 2^n assignments."""
    if cnf.n > 24:
        raise ValueError(f"count_sat3 handles at most 24 variables, got {cnf.n}")
    total = sum(1 for bits in range(1 << cnf.n) if cnf.satisfied_by(bits))
    return _result(total, p)


def count_vc(A: Graph, k: int, p: int) -> CountResult:
    """Vertex covers of size exactly k."""
    if A.n > 16:
        raise ValueError(f"count_vc handles at most 16 vertices, got {A.n}")
    if not 0 <= k <= A.n:
        return _result(0, p)
    edges = sorted(A.edges)
    total = 0
    for S in combinations(A.vertices(), k):
        sset = set(S)
        if all(u in sset or v in sset for (u, v) in edges):
            total += 1
    return _result(total, p)


def count_clique(A: Graph, k: int, p: int) -> CountResult:
    """Cliques of size exactly k (k = 0 counts the empty clique)."""
    if A.n > 16:
        raise ValueError(f"count_clique handles at most 16 vertices, got {A.n}")
    if not 0 <= k <= A.n:
        return _result(0, p)
    total = 0
    for S in combinations(A.vertices(), k):
        if all(A.has_edge(u, v) for (u, v) in combinations(S, 2)):
            total += 1
    return _result(total, p)


def count_hc(A: Graph, p: int) -> CountResult:
    """Hamiltonian cycles, undirected, up to rotation and reflection."""
    if A.n > 10:
        raise ValueError(f"count_hc handles at most 10 vertices, got {A.n}")
    n = A.n
    if n < 3:
        return _result(0, p)
    rest = list(range(2, n + 1))
    total = 0
    for perm in permutations(rest):
        walk = (1, *perm)
        if all(A.has_edge(walk[i], walk[i + 1]) for i in range(n - 1)) \
                and A.has_edge(walk[-1], 1):
            total += 1
    # each undirected cycle was produced twice, once per direction
    return _result(total // 2, p)


def count_3dm(H: Hypergraph3, p: int) -> CountResult:
    """Perfect 3-dimensional matchings: n disjoint triples covering all parts."""
    if H.n > 3:
        raise ValueError(f"count_3dm handles part size at most 3, got {H.n}")
    n = H.n
    by_a: dict[int, list[tuple[int, int, int]]] = {a: [] for a in range(1, n + 1)}
    for (a, b, c) in sorted(H.edges):
        by_a[a].append((a, b, c))

    total = 0

    def place(a: int, used_b: set[int], used_c: set[int]) -> None:
        nonlocal total
        if a > n:
            total += 1
            return
        for (_, b, c) in by_a[a]:
            if b not in used_b and c not in used_c:
                place(a + 1, used_b | {b}, used_c | {c})

    if n >= 1:
        place(1, set(), set())
    else:
        total = 1
    return _result(total, p)


def count_clows(A: Graph, length: int, p: int) -> CountResult:
    """Closed walks of the given length whose minimum vertex appears once.

    A clow is written starting at its minimum vertex (the head); every
    later position must hold a strictly larger vertex, consecutive
    positions must be adjacent in A, and the walk closes on an edge back
    to the head.
    """
    if length > 8:
        raise ValueError(f"count_clows handles walk length at most 8, got {length}")
    if length < 2:
        return _result(0, p)
    total = 0
    for head in A.vertices():

        def walk(cur: int, steps_left: int) -> int:
            if steps_left == 1:
                return 1 if A.has_edge(cur, head) else 0
            acc = 0
            for w in A.adj[cur]:
                if w > head:
                    acc += walk(w, steps_left - 1)
            return acc

        acc = 0
        for w in A.adj[head]:
            if w > head:
                acc += walk(w, length - 1)
        total += acc
    return _result(total, p)
