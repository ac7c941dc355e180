"""Independent brute-force oracles shared by the test modules.

Everything here is deliberately dumb: Prufer-sequence enumeration for tree
counts, cofactor expansion for characteristic polynomials, greedy leaf
matching for the nullity of a tree at eigenvalue zero.  Slow, obvious, and
algorithmically unrelated to the library paths they check.
"""

from __future__ import annotations

from itertools import product

from treemult.poly import Polynomial, exact_div
from treemult.tree import Tree, canonical_code


def prufer_to_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    """Decode a Prufer sequence over vertices 0..n-1 (length n-2)."""
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        for u in range(n):
            if degree[u] == 1:
                edges.append((u, v))
                degree[u] -= 1
                degree[v] -= 1
                break
    last = [u for u in range(n) if degree[u] == 1]
    edges.append((last[0], last[1]))
    return edges


def all_labeled_trees(n: int):
    """Every labeled tree on n vertices, one per Prufer sequence."""
    if n == 1:
        yield Tree.from_edges(1, [])
        return
    if n == 2:
        yield Tree.from_edges(2, [(0, 1)])
        return
    for seq in product(range(n), repeat=n - 2):
        yield Tree.from_edges(n, prufer_to_edges(seq, n))


def count_free_trees_bruteforce(n: int) -> int:
    """Number of isomorphism classes of trees on n vertices, by generating
    all labeled trees and deduplicating on canonical codes."""
    return len({canonical_code(t) for t in all_labeled_trees(n)})


def charpoly_by_cofactors(t: Tree) -> Polynomial:
    """det(xI - A) by textbook cofactor expansion over polynomial entries."""
    x = Polynomial((0, 1))
    one = Polynomial((1,))
    entries = [
        [x if u == v else Polynomial((-1,) if v in t.adj[u] else ()) for v in range(t.n)]
        for u in range(t.n)
    ]

    def det(rows, cols):
        if len(cols) == 1:
            return entries[rows[0]][cols[0]]
        acc = Polynomial(())
        r = rows[0]
        rest = rows[1:]
        for k, c in enumerate(cols):
            minor = det(rest, cols[:k] + cols[k + 1 :])
            term = entries[r][c] * minor
            acc = acc + (term if k % 2 == 0 else -term)
        return acc

    idx = tuple(range(t.n))
    result = det(idx, idx)
    assert result.is_monic()
    return result


def max_matching_tree(t: Tree) -> int:
    """Maximum matching size of a tree by greedy leaf matching (exact on
    trees): repeatedly match a leaf to its neighbor and delete both."""
    alive = [True] * t.n
    degree = [len(t.adj[v]) for v in range(t.n)]
    leaves = [v for v in range(t.n) if degree[v] == 1]
    matched = 0
    while leaves:
        v = leaves.pop()
        if not alive[v] or degree[v] == 0:
            continue
        partner = next(w for w in t.adj[v] if alive[w])
        matched += 1
        for gone in (v, partner):
            alive[gone] = False
            for w in t.adj[gone]:
                if alive[w]:
                    degree[w] -= 1
                    if degree[w] == 1:
                        leaves.append(w)
                    elif degree[w] == 0:
                        leaves.append(w)
    return matched


def nullity_by_matching(t: Tree) -> int:
    """m(T, 0) = n - 2 * (maximum matching size) for trees."""
    return t.n - 2 * max_matching_tree(t)


def multiplicity_by_root_division(t_charpoly: Polynomial, mu: Polynomial) -> int:
    """Multiplicity by repeated exact division; mirror of the library rule,
    kept here for cross-checks against hand-expanded polynomials."""
    count = 0
    p = t_charpoly
    while True:
        try:
            p = exact_div(p, mu)
        except Exception:
            return count
        count += 1
