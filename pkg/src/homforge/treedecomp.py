"""Nice tree decompositions: validation, width, conversion, exact treewidth.

A tree decomposition of a graph G assigns a bag of vertices to every node
of a tree so that every vertex and edge of G is covered by some bag and,
for each vertex, the nodes containing it form a connected subtree.  The
*nice* form used by the circuit compiler additionally requires an empty
root bag, singleton leaf bags, and that every internal node is one of
Introduce / Forget / Join.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph

KINDS = ("leaf", "intro", "forget", "join")

_BIG = 10**9


@dataclass(frozen=True)
class DecompNode:
    """One node of a nice tree decomposition.

    ``vertex`` is the vertex introduced or forgotten at this node; it is
    ignored for leaf and join nodes.
    """

    bag: frozenset[int]
    kind: str
    vertex: int = 0
    children: tuple[int, ...] = ()


class NiceTreeDecomp:
    """A rooted nice tree decomposition; nodes addressed by index."""

    def __init__(self, nodes: tuple[DecompNode, ...], root: int):
        self.nodes = tuple(nodes)
        self.root = root
        if not (0 <= root < len(self.nodes)):
            raise ValueError(f"root id {root} out of range")

    def __len__(self) -> int:
        return len(self.nodes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NiceTreeDecomp):
            return NotImplemented
        return self.nodes == other.nodes and self.root == other.root

    def __hash__(self) -> int:
        return hash((self.nodes, self.root))

    def width(self) -> int:
        return max(len(nd.bag) for nd in self.nodes) - 1

    def has_join(self) -> bool:
        return any(nd.kind == "join" for nd in self.nodes)

    def kind_counts(self) -> dict[str, int]:
        out = {k: 0 for k in KINDS}
        for nd in self.nodes:
            out[nd.kind] = out.get(nd.kind, 0) + 1
        return out

    def postorder(self) -> list[int]:
        """Node indices, children always before their parent."""
        out = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            i, expanded = stack.pop()
            if expanded:
                out.append(i)
            else:
                stack.append((i, True))
                for c in self.nodes[i].children:
                    stack.append((c, False))
        return out

    def to_text(self) -> str:
        lines = []
        for i, nd in enumerate(self.nodes):
            if nd.kind in ("intro", "forget"):
                kind = f"{nd.kind}:{nd.vertex}"
            else:
                kind = nd.kind
            verts = " ".join(str(v) for v in sorted(nd.bag))
            lines.append(f"bag {i} {kind} {verts}".rstrip())
        for i, nd in enumerate(self.nodes):
            for c in nd.children:
                lines.append(f"child {i} {c}")
        lines.append(f"root {self.root}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "NiceTreeDecomp":
        bags: dict[int, tuple[frozenset[int], str, int]] = {}
        children: dict[int, list[int]] = {}
        root = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if parts[0] == "bag":
                    idx = int(parts[1])
                    if idx in bags:
                        raise ValueError(f"duplicate bag id {idx}")
                    kind_tok = parts[2]
                    if ":" in kind_tok:
                        kind, _, vtx = kind_tok.partition(":")
                        vertex = int(vtx)
                    else:
                        kind, vertex = kind_tok, 0
                    if kind not in KINDS:
                        raise ValueError(f"unknown node kind {kind_tok!r}")
                    bag = frozenset(int(v) for v in parts[3:])
                    bags[idx] = (bag, kind, vertex)
                elif parts[0] == "child":
                    if len(parts) != 3:
                        raise ValueError("expected: child <parent> <kid>")
                    children.setdefault(int(parts[1]), []).append(int(parts[2]))
                elif parts[0] == "root":
                    if len(parts) != 2:
                        raise ValueError("expected: root <id>")
                    root = int(parts[1])
                else:
                    raise ValueError(f"unknown directive {parts[0]!r}")
            except (ValueError, IndexError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        if root is None:
            raise ValueError("missing root directive")
        if sorted(bags) != list(range(len(bags))):
            raise ValueError("bag ids must be 0..N-1 with no gaps")
        nodes = []
        for i in range(len(bags)):
            bag, kind, vertex = bags[i]
            kids = tuple(children.get(i, ()))
            for c in kids:
                if c not in bags:
                    raise ValueError(f"child id {c} has no bag line")
            nodes.append(DecompNode(bag, kind, vertex, kids))
        return cls(tuple(nodes), root)


def validate_nice(d: NiceTreeDecomp, G: Graph) -> list[str]:
    """All niceness and decomposition violations of ``d`` w.r.t. ``G``.

    Empty list means the decomposition is valid.
    """
    errs: list[str] = []
    n_nodes = len(d.nodes)

    parent: dict[int, int] = {}
    for i, nd in enumerate(d.nodes):
        if nd.kind not in KINDS:
            errs.append(f"node {i}: unknown kind {nd.kind!r}")
        for c in nd.children:
            if not (0 <= c < n_nodes):
                errs.append(f"node {i}: child id {c} out of range")
                continue
            if c == i:
                errs.append(f"node {i}: is its own child")
                continue
            if c in parent:
                errs.append(f"node {c}: has two parents ({parent[c]} and {i})")
            parent[c] = i
    if d.root in parent:
        errs.append(f"root {d.root} appears as a child of node {parent[d.root]}")

    seen: set[int] = set()
    stack = [d.root]
    while stack:
        i = stack.pop()
        if i in seen:
            continue
        seen.add(i)
        for c in d.nodes[i].children:
            if 0 <= c < n_nodes and c not in seen:
                stack.append(c)
    missing = set(range(n_nodes)) - seen
    if missing:
        errs.append(f"nodes not reachable from root: {sorted(missing)}")

    for i, nd in enumerate(d.nodes):
        kids = nd.children
        if nd.kind == "leaf":
            if kids:
                errs.append(f"node {i}: leaf node has children")
            if len(nd.bag) != 1:
                errs.append(f"node {i}: leaf bag size {len(nd.bag)}, expected 1")
        elif nd.kind == "intro":
            if len(kids) != 1:
                errs.append(f"node {i}: introduce node needs exactly 1 child")
            else:
                cb = d.nodes[kids[0]].bag
                if nd.vertex in cb:
                    errs.append(f"node {i}: introduces {nd.vertex} already present in child bag")
                if nd.bag != cb | {nd.vertex}:
                    errs.append(f"node {i}: bag is not child bag plus {nd.vertex}")
        elif nd.kind == "forget":
            if len(kids) != 1:
                errs.append(f"node {i}: forget node needs exactly 1 child")
            else:
                cb = d.nodes[kids[0]].bag
                if nd.vertex not in cb:
                    errs.append(f"node {i}: forgets {nd.vertex} absent from child bag")
                if nd.bag != cb - {nd.vertex}:
                    errs.append(f"node {i}: bag is not child bag minus {nd.vertex}")
        elif nd.kind == "join":
            if len(kids) != 2:
                errs.append(f"node {i}: join node needs exactly 2 children")
            else:
                b1 = d.nodes[kids[0]].bag
                b2 = d.nodes[kids[1]].bag
                if b1 != nd.bag or b2 != nd.bag:
                    errs.append(f"node {i}: join children bags differ from own bag")

    if d.nodes[d.root].bag:
        errs.append(f"root bag not empty: {sorted(d.nodes[d.root].bag)}")

    verts = set(G.vertices())
    covered: set[int] = set()
    for nd in d.nodes:
        covered |= nd.bag
    stray = covered - verts
    if stray:
        errs.append(f"bag vertices not in graph: {sorted(stray)}")
    uncovered = verts - covered
    if uncovered:
        errs.append(f"vertices in no bag: {sorted(uncovered)}")
    for (u, v) in sorted(G.edges):
        if not any(u in nd.bag and v in nd.bag for nd in d.nodes):
            errs.append(f"edge ({u}, {v}) in no bag")

    if not missing:
        # with a well-formed rooted tree, the subtree of nodes containing a
        # vertex is connected iff exactly one of them has a parent without it
        for v in sorted(verts & covered):
            holders = [i for i, nd in enumerate(d.nodes) if v in nd.bag]
            tops = [i for i in holders
                    if i == d.root or v not in d.nodes[parent.get(i, d.root)].bag]
            if len(tops) > 1:
                errs.append(f"vertex {v}: bag nodes form {len(tops)} disconnected subtrees")
    return errs


@dataclass
class TreeDecompInput:
    """An arbitrary (not necessarily nice) tree decomposition.

    ``bags`` maps bag ids to vertex sets; ``edges`` are unordered pairs of
    bag ids forming the tree.
    """

    bags: dict[int, frozenset[int]]
    edges: list[tuple[int, int]]

    def width(self) -> int:
        return max(len(b) for b in self.bags.values()) - 1


def validate_decomp(td: TreeDecompInput, G: Graph) -> list[str]:
    """Violations of the basic tree-decomposition conditions (no niceness)."""
    errs: list[str] = []
    ids = set(td.bags)
    if not ids:
        return ["decomposition has no bags"]
    nbr: dict[int, set[int]] = {i: set() for i in ids}
    for (a, b) in td.edges:
        if a not in ids or b not in ids:
            errs.append(f"tree edge ({a}, {b}) uses unknown bag id")
            continue
        if a == b:
            errs.append(f"tree edge ({a}, {b}) is a self-loop")
            continue
        if b in nbr[a]:
            errs.append(f"tree edge ({a}, {b}) repeated")
            continue
        nbr[a].add(b)
        nbr[b].add(a)
    if len(td.edges) != len(ids) - 1:
        errs.append(f"{len(td.edges)} tree edges for {len(ids)} bags; a tree needs {len(ids) - 1}")
    start = next(iter(ids))
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for j in nbr[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if seen != ids:
        errs.append(f"bag tree is disconnected ({len(ids) - len(seen)} bags unreachable)")
    if errs:
        return errs

    verts = set(G.vertices())
    covered: set[int] = set()
    for b in td.bags.values():
        covered |= b
    if covered - verts:
        errs.append(f"bag vertices not in graph: {sorted(covered - verts)}")
    if verts - covered:
        errs.append(f"vertices in no bag: {sorted(verts - covered)}")
    for (u, v) in sorted(G.edges):
        if not any(u in b and v in b for b in td.bags.values()):
            errs.append(f"edge ({u}, {v}) in no bag")
    for v in sorted(verts & covered):
        holders = {i for i in ids if v in td.bags[i]}
        first = next(iter(holders))
        comp = {first}
        stack = [first]
        while stack:
            i = stack.pop()
            for j in nbr[i]:
                if j in holders and j not in comp:
                    comp.add(j)
                    stack.append(j)
        if comp != holders:
            errs.append(f"vertex {v}: bags containing it are disconnected in the tree")
    return errs


class _NiceBuilder:
    def __init__(self):
        self.nodes: list[DecompNode] = []

    def add(self, bag, kind: str, vertex: int = 0, children: tuple[int, ...] = ()) -> int:
        self.nodes.append(DecompNode(frozenset(bag), kind, vertex, tuple(children)))
        return len(self.nodes) - 1


def make_nice(td: TreeDecompInput, G: Graph, root: int | None = None) -> NiceTreeDecomp:
    """Convert a valid tree decomposition into an equal-width nice one.

    ``root`` selects which bag becomes the top of the rooted tree; rooting a
    path of bags at one of its endpoints yields a Join-free result.
    """
    if G.n == 0:
        raise ValueError("graphs without vertices have no nice decomposition")
    errs = validate_decomp(td, G)
    if errs:
        raise ValueError("invalid tree decomposition: " + "; ".join(errs))
    bags = {i: frozenset(b) for i, b in td.bags.items()}
    if root is None:
        root = min(bags)
    elif root not in bags:
        raise ValueError(f"root bag id {root} not present")

    nbr: dict[int, set[int]] = {i: set() for i in bags}
    for (a, b) in td.edges:
        nbr[a].add(b)
        nbr[b].add(a)
    order = [root]
    parent: dict[int, int | None] = {root: None}
    children: dict[int, list[int]] = {i: [] for i in bags}
    for i in order:
        for j in sorted(nbr[i]):
            if j not in parent:
                parent[j] = i
                children[i].append(j)
                order.append(j)

    b = _NiceBuilder()
    sub_root: dict[int, int | None] = {}
    for node in reversed(order):
        X = bags[node]
        kids = [c for c in children[node] if sub_root[c] is not None]
        if not kids:
            if not X:
                sub_root[node] = None
                continue
            vs = sorted(X)
            acc = {vs[0]}
            cur = b.add(acc, "leaf")
            for v in vs[1:]:
                acc.add(v)
                cur = b.add(acc, "intro", v, (cur,))
            sub_root[node] = cur
        else:
            tops = []
            for c in kids:
                cur = sub_root[c]
                acc = set(bags[c])
                for w in sorted(acc - X):
                    acc.remove(w)
                    cur = b.add(acc, "forget", w, (cur,))
                for v in sorted(X - acc):
                    acc.add(v)
                    cur = b.add(acc, "intro", v, (cur,))
                tops.append(cur)
            cur = tops[0]
            for nxt in tops[1:]:
                cur = b.add(X, "join", 0, (cur, nxt))
            sub_root[node] = cur

    top = sub_root[root]
    if top is None:
        raise ValueError("all bags empty; nothing to decompose")
    acc = set(bags[root])
    for w in sorted(acc):
        acc.remove(w)
        top = b.add(acc, "forget", w, (top,))
    return NiceTreeDecomp(tuple(b.nodes), top)


def _elim_degree(adj: list[int], T: int, v: int) -> int:
    """Degree of ``v`` after the vertex set ``T`` has been eliminated.

    Counts vertices outside ``T`` adjacent to ``v`` or connected to it
    through eliminated vertices (the fill-in degree); bitmask encoded.
    """
    seen = 1 << v
    stack = [v]
    ext = 0
    while stack:
        x = stack.pop()
        nb = adj[x]
        ext |= nb & ~T
        t = nb & T & ~seen
        while t:
            low = t & -t
            seen |= low
            stack.append(low.bit_length() - 1)
            t ^= low
    ext &= ~(1 << v)
    return bin(ext).count("1")


def _decomp_from_elimination(G: Graph, order: list[int]) -> TreeDecompInput:
    """Tree decomposition induced by an elimination order (bags keyed by vertex)."""
    pos = {v: i for i, v in enumerate(order)}
    nbrs = {v: set(G.adj[v]) for v in G.vertices()}
    bags: dict[int, frozenset[int]] = {}
    for v in order:
        later = {w for w in nbrs[v] if pos[w] > pos[v]}
        bags[v] = frozenset({v} | later)
        for a in later:
            nbrs[a].discard(v)
            nbrs[a].update(later - {a})
    edges = []
    for i, v in enumerate(order):
        later = [w for w in bags[v] if w != v]
        if later:
            edges.append((v, min(later, key=lambda w: pos[w])))
        elif i + 1 < len(order):
            edges.append((v, order[i + 1]))
    return TreeDecompInput(bags=bags, edges=edges)


def heuristic_decomp(G: Graph) -> TreeDecompInput:
    """Min-fill greedy decomposition; valid but not necessarily optimal."""
    if G.n == 0:
        raise ValueError("graph has no vertices")
    nbrs = {v: set(G.adj[v]) for v in G.vertices()}
    remaining = set(G.vertices())
    order = []
    while remaining:
        best_v, best_fill = None, _BIG
        for v in sorted(remaining):
            nb = nbrs[v]
            fill = sum(1 for a in nb for c in nb if a < c and c not in nbrs[a])
            if fill < best_fill:
                best_v, best_fill = v, fill
        order.append(best_v)
        nb = nbrs[best_v]
        for a in nb:
            nbrs[a].discard(best_v)
            nbrs[a].update(nb - {a})
        remaining.discard(best_v)
        del nbrs[best_v]
    return _decomp_from_elimination(G, order)


def treewidth_exact(G: Graph, max_n: int = 12) -> tuple[int, NiceTreeDecomp]:
    """Exact treewidth with a witness nice decomposition.

    Dynamic program over vertex subsets: the best width of an elimination
    order with prefix set S satisfies
    ``f(S) = min over v in S of max(f(S - v), fill-degree of v after S - v)``.
    Exponential in |V|, hence the hard size cap.
    """
    n = G.n
    if n == 0:
        raise ValueError("graph has no vertices")
    if n > max_n:
        raise ValueError(
            f"treewidth_exact handles at most {max_n} vertices (got {n}); "
            "use a structural decomposition instead")
    adj = [0] * n
    for (u, v) in G.edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    full = (1 << n) - 1
    f = [0] * (full + 1)
    choice = [0] * (full + 1)
    for S in range(1, full + 1):
        best, best_v = _BIG, -1
        rest = S
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            T = S ^ low
            val = max(f[T], _elim_degree(adj, T, v))
            if val < best:
                best, best_v = val, v
        f[S] = best
        choice[S] = best_v
    width = f[full]

    order_rev = []
    S = full
    while S:
        v = choice[S]
        order_rev.append(v)
        S ^= 1 << v
    order = [v + 1 for v in reversed(order_rev)]
    td = _decomp_from_elimination(G, order)
    nice = make_nice(td, G)
    got = nice.width()
    if got != width:
        raise AssertionError(
            f"witness decomposition width {got} != optimal width {width}")
    return width, nice


def _cycle_order(G: Graph) -> list[int] | None:
    """Vertices of G in cyclic order if G is a single cycle, else None."""
    if G.n < 3 or G.m != G.n or not G.is_connected():
        return None
    if any(G.degree(v) != 2 for v in G.vertices()):
        return None
    start = 1
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = [w for w in sorted(G.adj[cur]) if w != prev]
        step = nxt[0]
        if step == start:
            break
        order.append(step)
        prev, cur = cur, step
    return order


def gadget_decomp(g) -> NiceTreeDecomp:
    """Structural nice decomposition for gadget graphs and cycles.

    Accepts a gadget graph carrying block/path construction metadata, or a
    plain cycle graph.  Path-shaped inputs (path gadgets, cycles) produce
    Join-free decompositions.
    """
    if isinstance(g, Graph):
        order = _cycle_order(g)
        if order is None:
            raise ValueError(
                "gadget_decomp needs construction metadata or a cycle graph")
        n = len(order)
        anchor = order[0]
        bags: dict[int, frozenset[int]] = {}
        edges = []
        for i in range(1, n - 1):
            bags[i - 1] = frozenset({anchor, order[i], order[i + 1]})
            if i > 1:
                edges.append((i - 2, i - 1))
        td = TreeDecompInput(bags, edges)
        return make_nice(td, g, root=len(bags) - 1)

    graph = getattr(g, "graph", None)
    blocks = getattr(g, "blocks", None)
    paths = getattr(g, "paths", None)
    if graph is None or blocks is None or paths is None:
        raise ValueError("gadget_decomp needs construction metadata or a cycle graph")
    if getattr(g, "kind", "") == "parse":
        raise ValueError(
            "parse-structure gadgets may share blocks (DAG shape); "
            "no tree decomposition is provided for them")

    bags = {}
    edges = []
    bag_of_block: dict[str, int] = {}
    nid = 0
    for blk in blocks:
        bags[nid] = frozenset(blk.vmap.values())
        bag_of_block[blk.key] = nid
        nid += 1
    vertex_home = {}
    for idx in bag_of_block.values():
        for v in bags[idx]:
            vertex_home[v] = idx
    for pth in paths:
        walk = [pth.src, *pth.interior, pth.dst]
        prev_bag = vertex_home[pth.src]
        for a, bv in zip(walk, walk[1:]):
            bags[nid] = frozenset({a, bv})
            edges.append((prev_bag, nid))
            prev_bag = nid
            nid += 1
        # link the last pair bag {..., dst} to the destination block's bag
        edges.append((prev_bag, vertex_home[pth.dst]))
    td = TreeDecompInput(bags, edges)
    if getattr(g, "kind", "") in ("path", "bp_gadget"):
        root = bag_of_block[blocks[-1].key]
    else:
        root = bag_of_block[blocks[0].key]
    return make_nice(td, graph, root=root)
