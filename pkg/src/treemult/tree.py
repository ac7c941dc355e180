"""Tree representation, structural queries, graph6 serialization, and
exhaustive enumeration of non-isomorphic free trees.

Canonical forms are centroid-rooted: a rooted tree is encoded as the nested
tuple (size, sorted child codes), children in descending code order, and a
free tree's canonical code is the minimum over its one or two centroid
rootings.  Equal codes mean isomorphic trees, which gives cheap isomorphism
dedup, canonical relabeling, and stable graph6 output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence


DEFAULT_ENUMERATION_LIMIT = 20


class TreeError(Exception):
    """Base class for tree-layer errors."""


class NotATreeError(TreeError):
    """Input graph is disconnected, cyclic, or empty."""


class MalformedGraph6Error(TreeError):
    """Input text is not a valid graph6 encoding."""


class LimitExceededError(TreeError):
    """Requested enumeration size is above the configured maximum."""


@dataclass(frozen=True)
class Tree:
    """Labeled tree on n vertices with sorted per-vertex neighbor lists."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[tuple[int, int]]) -> "Tree":
        """Build and validate a tree from an edge list on vertices 0..n-1."""
        if n < 1:
            raise NotATreeError("a tree needs at least one vertex")
        if len(edges) != n - 1:
            raise NotATreeError(f"{len(edges)} edges on {n} vertices is not a tree")
        neighbors: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise NotATreeError(f"bad edge ({u}, {v})")
            if v in neighbors[u]:
                raise NotATreeError(f"duplicate edge ({u}, {v})")
            neighbors[u].add(v)
            neighbors[v].add(u)
        # n-1 distinct edges + connectivity == acyclic and spanning
        seen = [False] * n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            u = stack.pop()
            for w in neighbors[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        if count != n:
            raise NotATreeError("graph is not connected")
        return cls(n, tuple(tuple(sorted(s)) for s in neighbors))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Tree":
        try:
            n = int(data["n"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise NotATreeError(f"bad edge-list object: {exc}") from exc
        return cls.from_edges(n, edges)


def path_tree(n: int) -> Tree:
    """The path 0 - 1 - ... - n-1."""
    return Tree.from_edges(n, [(k, k + 1) for k in range(n - 1)])


def star_tree(leaves: int) -> Tree:
    """Star with center 0 and the given number of leaves."""
    return Tree.from_edges(leaves + 1, [(0, k) for k in range(1, leaves + 1)])


def spider_tree(*legs: int) -> Tree:
    """Spider: center 0 with pendant paths of the given lengths."""
    edges = []
    nxt = 1
    for leg in legs:
        prev = 0
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree.from_edges(nxt, edges)


# -- structural queries -----------------------------------------------------


def pendant_count(t: Tree) -> int:
    """Number of degree-1 vertices; a single-vertex tree counts as 2.

    The single-vertex convention makes pendant_count >= 2 for every tree,
    with equality exactly for paths.
    """
    if t.n == 1:
        return 2
    return sum(1 for v in range(t.n) if len(t.adj[v]) == 1)


def major_count(t: Tree) -> int:
    """Number of vertices of degree at least 3."""
    return sum(1 for v in range(t.n) if len(t.adj[v]) >= 3)


def major_vertices(t: Tree) -> list[int]:
    return [v for v in range(t.n) if len(t.adj[v]) >= 3]


def is_path(t: Tree) -> bool:
    return all(len(t.adj[v]) <= 2 for v in range(t.n))


def pendant_vertices(t: Tree) -> list[int]:
    """Degree-1 vertices; the sole vertex of a one-vertex tree is pendant."""
    if t.n == 1:
        return [0]
    return [v for v in range(t.n) if len(t.adj[v]) == 1]


def is_pendant_in(t: Tree, v: int) -> bool:
    """Pendant test honoring the single-vertex convention."""
    return t.n == 1 or len(t.adj[v]) == 1


@dataclass(frozen=True)
class Component:
    """One component of T - v, re-indexed 0..size-1.

    attach is the component-local id of the vertex that was adjacent to the
    removed vertex; parent_ids maps component-local ids back to the ids of
    the original tree so classification witnesses can name original vertices.
    """

    tree: Tree
    attach: int
    parent_ids: tuple[int, ...]


@dataclass(frozen=True)
class ForestDecomposition:
    """Components of T - removed_vertex, one per neighbor."""

    removed_vertex: int
    components: tuple[Component, ...]


def delete_vertex(t: Tree, v: int) -> ForestDecomposition:
    """Decompose T - v into its connected components.

    Each component is re-indexed with a retained mapping back to the parent
    tree; the number of components equals the degree of v.
    """
    if not (0 <= v < t.n):
        raise ValueError(f"vertex {v} out of range")
    comps = []
    for start in t.adj[v]:
        order = [start]
        seen = {start, v}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in t.adj[u]:
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    stack.append(w)
        local = {orig: k for k, orig in enumerate(order)}
        edges = [
            (local[u], local[w])
            for u in order
            for w in t.adj[u]
            if w != v and u < w
        ]
        comps.append(
            Component(
                tree=Tree.from_edges(len(order), edges),
                attach=local[start],
                parent_ids=tuple(order),
            )
        )
    return ForestDecomposition(removed_vertex=v, components=tuple(comps))


# -- canonical form -----------------------------------------------------------


def centroids(t: Tree) -> list[int]:
    """The one or two vertices minimizing the largest component of T - v."""
    if t.n == 1:
        return [0]
    subtree = [1] * t.n
    parent = [-1] * t.n
    order = [0]
    seen = [False] * t.n
    seen[0] = True
    for u in order:
        for w in t.adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    weight = [0] * t.n
    for u in reversed(order):
        for w in t.adj[u]:
            if w != parent[u]:
                subtree[u] += subtree[w]
        heaviest = t.n - subtree[u]
        for w in t.adj[u]:
            if w != parent[u]:
                heaviest = max(heaviest, subtree[w])
        weight[u] = heaviest
    best = min(weight)
    return sorted(u for u in range(t.n) if weight[u] == best)


def _rooted_code(t: Tree, root: int):
    """Nested (size, children) code of t rooted at root; children descending."""
    # iterative post-order to stay clear of recursion limits on long paths
    parent = [-1] * t.n
    order = [root]
    seen = [False] * t.n
    seen[root] = True
    for u in order:
        for w in t.adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    code: list = [None] * t.n
    for u in reversed(order):
        kids = sorted((code[w] for w in t.adj[u] if parent[w] == u), reverse=True)
        size = 1 + sum(k[0] for k in kids)
        code[u] = (size, tuple(kids))
    return code[root]


def canonical_code(t: Tree):
    """Isomorphism-complete code: minimum rooted code over centroid rootings."""
    return min(_rooted_code(t, c) for c in centroids(t))


def tree_from_code(code) -> Tree:
    """Materialize a rooted code as a concretely labeled tree.

    Ids are assigned in preorder with children visited in code order, so
    equal codes produce identical labeled trees.
    """
    edges: list[tuple[int, int]] = []
    counter = [0]

    def build(node, parent_id):
        my_id = counter[0]
        counter[0] += 1
        if parent_id >= 0:
            edges.append((parent_id, my_id))
        for child in node[1]:
            build(child, my_id)

    build(code, -1)
    return Tree.from_edges(counter[0], edges)


def canonical_tree(t: Tree) -> Tree:
    """A canonically labeled copy of t; equal for isomorphic inputs."""
    return tree_from_code(canonical_code(t))


# -- free tree enumeration ----------------------------------------------------


@lru_cache(maxsize=None)
def _rooted_codes(size: int) -> tuple:
    """All canonical rooted-tree codes on `size` vertices, descending."""
    if size == 1:
        return ((1, ()),)
    out = [(size, kids) for kids in _forests(size - 1, size - 1, None)]
    out.sort(reverse=True)
    return tuple(out)


def _forests(total: int, size_cap: int, bound_code) -> Iterator[tuple]:
    """Tuples of rooted codes in non-increasing order summing to total.

    Sizes are capped by size_cap and the first code by bound_code (when
    given); successive codes are capped by their predecessor, so each
    multiset of subtrees is produced exactly once.
    """
    if total == 0:
        yield ()
        return
    for s in range(min(total, size_cap), 0, -1):
        for code in _rooted_codes(s):
            if bound_code is not None and code > bound_code:
                continue
            for rest in _forests(total - s, s, code):
                yield (code,) + rest


def free_tree_codes(n: int) -> Iterator[tuple]:
    """Rooted codes of all non-isomorphic free trees on n vertices.

    Unicentroidal trees are rooted at their centroid (every root branch has
    at most floor((n-1)/2) vertices); bicentroidal trees (n even) are
    unordered pairs of rooted trees on n/2 vertices joined by an edge.
    """
    if n == 1:
        yield (1, ())
        return
    half = (n - 1) // 2
    if half >= 1:
        for kids in _forests(n - 1, half, None):
            yield (n, kids)
    if n % 2 == 0:
        halves = _rooted_codes(n // 2)
        for a_idx, a in enumerate(halves):
            for b in halves[a_idx:]:
                # root the joined tree at the first centroid: b hangs off a
                yield (n, tuple(sorted(a[1] + ((n // 2, b[1]),), reverse=True)))


def enumerate_trees(n: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Iterator[Tree]:
    """Exactly one representative per isomorphism class of free trees on n
    vertices, in a deterministic canonical order."""
    if n < 1:
        raise ValueError("vertex count must be positive")
    if n > limit:
        raise LimitExceededError(f"n = {n} above enumeration limit {limit}")
    for code in free_tree_codes(n):
        yield tree_from_code(code)


def count_trees(n: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> int:
    return sum(1 for _ in enumerate_trees(n, limit))


# -- graph6 -------------------------------------------------------------------


def emit_graph6(t: Tree) -> str:
    """graph6 text of the canonically labeled form of t.

    Canonical labeling first means equal outputs exactly for isomorphic
    trees.  Only the short form (n <= 62) is emitted.
    """
    ct = canonical_tree(t)
    if ct.n > 62:
        raise MalformedGraph6Error("graph6 short form only covers n <= 62")
    present = {(u, v) for u, v in ct.edges}
    bits = []
    for v in range(1, ct.n):
        for u in range(v):
            bits.append(1 if (u, v) in present else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(ct.n + 63)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k : k + 6]:
            value = (value << 1) | b
        chars.append(chr(value + 63))
    return "".join(chars)


def parse_graph6(text: str) -> Tree:
    """Parse graph6 text; reject non-trees.

    Accepts the optional ">>graph6<<" header.  Raises MalformedGraph6Error
    for encoding problems and NotATreeError for cyclic or disconnected input.
    """
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise MalformedGraph6Error("empty graph6 string")
    if any(not (63 <= ord(ch) <= 126) for ch in s):
        raise MalformedGraph6Error("graph6 bytes must be in the range 63..126")
    if s[0] == "~":
        raise MalformedGraph6Error("graph6 long form (n > 62) not supported")
    n = ord(s[0]) - 63
    need = (n * (n - 1) // 2 + 5) // 6
    body = s[1:]
    if len(body) != need:
        raise MalformedGraph6Error(
            f"expected {need} payload bytes for n = {n}, got {len(body)}"
        )
    bits = []
    for ch in body:
        value = ord(ch) - 63
        bits.extend((value >> k) & 1 for k in range(5, -1, -1))
    if any(bits[n * (n - 1) // 2 :]):
        raise MalformedGraph6Error("nonzero padding bits")
    if n == 0:
        raise NotATreeError("empty graph is not a tree")
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return Tree.from_edges(n, edges)


def parse_edge_text(text: str) -> Tree:
    """Parse the inline "u-v,u-v,..." edge syntax (0-based ids).

    A bare nonnegative integer denotes the single-vertex tree on that id 0.
    """
    s = text.strip()
    if not s:
        raise NotATreeError("empty edge list")
    if "-" not in s:
        if s == "0":
            return Tree.from_edges(1, [])
        raise NotATreeError(f"cannot parse edge list {s!r}")
    edges = []
    for chunk in s.split(","):
        try:
            u_text, v_text = chunk.strip().split("-")
            edges.append((int(u_text), int(v_text)))
        except ValueError as exc:
            raise NotATreeError(f"cannot parse edge {chunk!r}") from exc
    n = max(max(u, v) for u, v in edges) + 1
    return Tree.from_edges(n, edges)


def load_edge_json(text: str) -> Tree:
    """Parse the {"n": int, "edges": [[u, v], ...]} JSON format."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NotATreeError(f"bad JSON: {exc}") from exc
    return Tree.from_json_dict(data)
