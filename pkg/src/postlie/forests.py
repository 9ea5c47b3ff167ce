"""Planar rooted trees and forests.

A tree is a nested tuple: the tuple of its children, left to right.  The
single-vertex tree is ``()``.  A forest is a tuple of trees, the empty forest
``()`` being the unit.  Both are immutable and hashable, which makes them
usable directly as dictionary keys for linear combinations.

Text encoding is balanced parentheses with children written left to right::

    ()          single vertex
    (())        2-chain
    (()())      corolla with two leaves
    (())()      forest: 2-chain followed by a single vertex

Vertices are addressed through the canonical linear order: a clockwise walk
starting at the root-edge meets the left-most child of every vertex first, so
the order is the left-first preorder and the root comes first.  Grafting always
inserts new subtrees as the left-most children of the target vertex.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

Tree = tuple
Forest = tuple

LEAF: Tree = ()
EMPTY: Forest = ()


class ForestSyntaxError(ValueError):
    pass


class VertexRef(NamedTuple):
    """A vertex of a forest: tree index plus position in that tree's canonical order."""

    tree: int
    position: int


class GraftSpec(NamedTuple):
    """Parameters of the mixed grafting/concatenation operation.

    ``n0`` trees are concatenated on the left; ``targets`` lists
    ``(vertex, count)`` pairs consumed left to right from the grafted forest.
    """

    n0: int
    targets: tuple = ()


# ---------------------------------------------------------------------------
# parsing and rendering

def parse_forest(text: str) -> Forest:
    """Parse a parenthesis encoding into a forest.

    Spaces between top-level trees are tolerated; the empty string is the
    empty forest.
    """
    stack: list[list] = [[]]
    depth = 0
    for pos, ch in enumerate(text):
        if ch == "(":
            stack.append([])
            depth += 1
        elif ch == ")":
            if depth == 0:
                raise ForestSyntaxError(f"unbalanced ')' at position {pos}")
            children = stack.pop()
            stack[-1].append(tuple(children))
            depth -= 1
        elif ch == " ":
            if depth:
                raise ForestSyntaxError(f"space inside a tree at position {pos}")
        else:
            raise ForestSyntaxError(f"unexpected character {ch!r} at position {pos}")
    if depth:
        raise ForestSyntaxError("unbalanced '(': missing closing parenthesis")
    return tuple(stack[0])


def parse_tree(text: str) -> Tree:
    forest = parse_forest(text)
    if len(forest) != 1:
        raise ForestSyntaxError(f"expected a single tree, got {len(forest)}")
    return forest[0]


@lru_cache(maxsize=None)
def render_tree(tree: Tree) -> str:
    return "(" + "".join(render_tree(c) for c in tree) + ")"


def render(forest: Forest) -> str:
    return "".join(render_tree(t) for t in forest)


def forest_key(forest: Forest) -> tuple:
    """Canonical sort key: vertex count first, then the encoding."""
    return (size(forest), render(forest))


# ---------------------------------------------------------------------------
# basic statistics

@lru_cache(maxsize=None)
def tree_size(tree: Tree) -> int:
    return 1 + sum(tree_size(c) for c in tree)


@lru_cache(maxsize=None)
def size(forest: Forest) -> int:
    """Total number of vertices |F|."""
    return sum(tree_size(t) for t in forest)


def is_horizontal(forest: Forest) -> bool:
    """True for the forests of single vertices (including a lone vertex)."""
    return len(forest) > 0 and all(t == LEAF for t in forest)


def horizontal(n: int) -> Forest:
    return (LEAF,) * n


def chain(n: int) -> Tree:
    tree: Tree = LEAF
    for _ in range(n - 1):
        tree = (tree,)
    return tree


def corolla(k: int) -> Tree:
    return (LEAF,) * k


# ---------------------------------------------------------------------------
# canonical order

@lru_cache(maxsize=None)
def vertex_paths(tree: Tree) -> tuple:
    """Child-index paths of the vertices of ``tree`` in canonical order."""
    out = [()]
    for i, child in enumerate(tree):
        out.extend((i,) + p for p in vertex_paths(child))
    return tuple(out)


def canonical_vertices(tree: Tree) -> list[VertexRef]:
    return [VertexRef(0, k) for k in range(tree_size(tree))]


def subtree_at(tree: Tree, path: Sequence[int]) -> Tree:
    for i in path:
        tree = tree[i]
    return tree


def resolve(forest: Forest, ref: VertexRef) -> tuple:
    """Return the child-index path of ``ref`` inside its tree."""
    tree_idx, pos = ref
    if not 0 <= tree_idx < len(forest):
        raise IndexError(f"tree index {tree_idx} out of range for a forest of {len(forest)} trees")
    paths = vertex_paths(forest[tree_idx])
    if not 0 <= pos < len(paths):
        raise IndexError(f"vertex position {pos} out of range for a tree of {len(paths)} vertices")
    return paths[pos]


def global_vertices(forest: Forest) -> list[VertexRef]:
    """All vertices, tree-major, each tree in canonical order."""
    return [VertexRef(i, k) for i, t in enumerate(forest) for k in range(tree_size(t))]


# ---------------------------------------------------------------------------
# grafting

def _insert_at_path(tree: Tree, path: Sequence[int], new_children: Forest) -> Tree:
    if not path:
        return tuple(new_children) + tree
    i = path[0]
    return tree[:i] + (_insert_at_path(tree[i], path[1:], new_children),) + tree[i + 1:]


def graft_many(tree: Tree, fibers: dict) -> Tree:
    """Graft several forests at once.

    ``fibers`` maps child-index paths of ``tree`` to forests; each forest is
    inserted on the left side of its vertex.  Paths refer to the original tree.
    """
    if not fibers:
        return tree
    head = tuple(fibers.get((), ()))
    children = []
    for i, child in enumerate(tree):
        sub = {p[1:]: f for p, f in fibers.items() if p and p[0] == i}
        children.append(graft_many(child, sub) if sub else child)
    return head + tuple(children)


def graft_at(grafted: Forest, forest: Forest, v: VertexRef) -> Forest:
    """Graft every root of ``grafted`` on the left side of vertex ``v``."""
    path = resolve(forest, v)
    i = v.tree
    return forest[:i] + (_insert_at_path(forest[i], path, grafted),) + forest[i + 1:]


def multi_graft(E: Forest, F: Forest, spec: GraftSpec) -> Forest:
    """Graft consecutive blocks of ``E`` at distinct vertices of ``F``.

    The first ``n_1`` trees of ``E`` go to ``v_1``, the next ``n_2`` to
    ``v_2`` and so on; the remaining ``n0`` trees are concatenated on the left.
    """
    n0, targets = spec
    counts = [n for _, n in targets]
    if n0 < 0 or any(n < 1 for n in counts):
        raise ValueError("graft counts must be positive and n0 nonnegative")
    if n0 + sum(counts) != len(E):
        raise ValueError(f"graft spec consumes {n0 + sum(counts)} trees but E has {len(E)}")
    refs = [VertexRef(*v) for v, _ in targets]
    if len(set(refs)) != len(refs):
        raise ValueError("graft target vertices must be pairwise distinct")
    per_tree: dict[int, dict] = {}
    pos = 0
    for ref, n in zip(refs, counts):
        per_tree.setdefault(ref.tree, {})[resolve(F, ref)] = E[pos:pos + n]
        pos += n
    grafted = tuple(graft_many(t, per_tree[i]) if i in per_tree else t for i, t in enumerate(F))
    return E[pos:] + grafted


# ---------------------------------------------------------------------------
# enumeration

@lru_cache(maxsize=None)
def _forests(n: int) -> tuple:
    if n == 0:
        return (EMPTY,)
    out = []
    for k in range(1, n + 1):
        for t in _trees(k):
            out.extend((t,) + rest for rest in _forests(n - k))
    return tuple(out)


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple:
    return tuple(_forests(n - 1))


def enumerate_trees(n: int) -> list[Tree]:
    return sorted(_trees(n), key=render_tree)


@lru_cache(maxsize=None)
def _sorted_forests(n: int) -> tuple:
    return tuple(sorted(_forests(n), key=render))


def enumerate_forests(n: int) -> list[Forest]:
    """All planar forests with ``n`` vertices, sorted by encoding."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    return list(_sorted_forests(n))


def forests_up_to(n: int, start: int = 1) -> Iterable[Forest]:
    for k in range(start, n + 1):
        yield from _sorted_forests(k)
