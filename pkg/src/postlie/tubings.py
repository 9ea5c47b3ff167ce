"""Tubes and nested tubings of planar forests, and the two coefficient formulas.

Vertices of a forest are numbered globally: tree by tree from left to right,
each tree in canonical (left-first preorder) order.  A tube is stored as a
``frozenset`` of such indices.

Orientation: grafting inserts on the left, so an inner tube keeps the
right-most part of the structure.  Inside a tube, the children of a vertex
form a right-most contiguous block.  Among the roots of a forest, the tube
keeps a right-most block of trees.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Iterator

from .algebra import multinomial
from .forests import Forest, VertexRef, forest_key, is_horizontal, parse_forest, render, size

VERTICAL = "vertical"
HORIZONTAL = "horizontal"
KINDS = (VERTICAL, HORIZONTAL)


class ForestGraph:
    """Index structure of a forest: parents, ordered children, roots."""

    def __init__(self, forest: Forest):
        self.forest = forest
        self.parent: list[int | None] = []
        self.children: list[list[int]] = []
        self.tree_of: list[int] = []
        self.roots: list[int] = []
        for ti, tree in enumerate(forest):
            self.roots.append(self._add(tree, None, ti))
        self.n = len(self.parent)

    def _add(self, tree, parent, ti) -> int:
        idx = len(self.parent)
        self.parent.append(parent)
        self.children.append([])
        self.tree_of.append(ti)
        for child in tree:
            self.children[idx].append(self._add(child, idx, ti))
        return idx

    def index(self, ref: VertexRef) -> int:
        ti, pos = ref
        offsets = [0]
        for r in self.roots[1:]:
            offsets.append(r)
        if not 0 <= ti < len(self.roots):
            raise IndexError(f"tree index {ti} out of range")
        end = self.roots[ti + 1] if ti + 1 < len(self.roots) else self.n
        if not 0 <= pos < end - self.roots[ti]:
            raise IndexError(f"vertex position {pos} out of range")
        return self.roots[ti] + pos

    def ref(self, idx: int) -> VertexRef:
        ti = self.tree_of[idx]
        return VertexRef(ti, idx - self.roots[ti])

    def subforest(self, vertices: Iterable[int]) -> Forest:
        """The induced forest on ``vertices``, trees in left-to-right order."""
        vs = set(vertices)

        def build(v):
            return tuple(build(c) for c in self.children[v] if c in vs)

        return tuple(build(v) for v in sorted(vs) if self.parent[v] not in vs)

    def component_roots(self, vertices: Iterable[int]) -> list[int]:
        vs = set(vertices)
        return [v for v in sorted(vs) if self.parent[v] not in vs]


@lru_cache(maxsize=None)
def graph(forest: Forest) -> ForestGraph:
    return ForestGraph(forest)


# ---------------------------------------------------------------------------
# tubes

def _as_indices(forest: Forest, s) -> frozenset:
    g = graph(forest)
    out = set()
    for v in s:
        out.add(g.index(VertexRef(*v)) if isinstance(v, tuple) else int(v))
    return frozenset(out)


def is_tube(forest: Forest, s) -> bool:
    """Check the tube conditions for a vertex set (global indices or VertexRefs)."""
    g = graph(forest)
    s = _as_indices(forest, s)
    if not s or any(not 0 <= v < g.n for v in s):
        return False
    # each tree meets s in a connected set containing its root
    for v in s:
        if g.parent[v] is not None and g.parent[v] not in s:
            return False
    # roots: right-most block
    kept = [r in s for r in g.roots]
    if kept != sorted(kept):
        return False
    # children of each member: right-most block
    for v in s:
        kept = [c in s for c in g.children[v]]
        if kept != sorted(kept):
            return False
    return True


def _tree_tubes(g: ForestGraph, v: int) -> list[frozenset]:
    """Nonempty tubes of the subtree rooted at ``v`` (all contain ``v``)."""
    kids = g.children[v]
    out = []
    for start in range(len(kids) + 1):
        block = kids[start:]
        for choice in itertools.product(*(_tree_tubes(g, c) for c in block)):
            out.append(frozenset({v}).union(*choice))
    return out


@lru_cache(maxsize=None)
def all_tubes(forest: Forest) -> tuple:
    """Every nonempty tube of ``forest``, largest first."""
    g = graph(forest)
    per_tree = [_tree_tubes(g, r) for r in g.roots]
    out = []
    for start in range(len(g.roots)):
        for choice in itertools.product(*per_tree[start:]):
            out.append(frozenset().union(*choice))
    out.sort(key=lambda t: (-len(t), sorted(t)))
    return tuple(out)


# ---------------------------------------------------------------------------
# tubings

@dataclass(frozen=True)
class Tubing:
    """Chain of nested tubes, outermost (the whole forest) first."""

    forest: Forest
    tubes: tuple
    kind: str

    @property
    def boundaries(self) -> tuple:
        inner = self.tubes[1:] + (frozenset(),)
        return tuple(t - s for t, s in zip(self.tubes, inner))

    @property
    def profile(self) -> tuple:
        """Boundary sizes, outermost first."""
        return tuple(len(b) for b in self.boundaries)

    def __len__(self) -> int:
        return len(self.tubes)

    def boundary_forests(self) -> tuple:
        g = graph(self.forest)
        return tuple(g.subforest(b) for b in self.boundaries)

    def to_json(self) -> dict:
        return {
            "forest": render(self.forest),
            "kind": self.kind,
            "tubes": [sorted(t) for t in self.tubes],
        }

    @classmethod
    def from_json(cls, data) -> "Tubing":
        forest = parse_forest(data["forest"])
        return cls(forest, tuple(frozenset(t) for t in data["tubes"]), data["kind"])


def _vertical_boundary_ok(g: ForestGraph, boundary: frozenset) -> bool:
    roots = g.component_roots(boundary)
    if len(roots) > 1 and len(roots) == len(boundary):
        return False
    # all roots hang from one inner vertex, or none of them hangs anywhere
    return len({g.parent[r] for r in roots}) == 1


def _horizontal_boundary_ok(g: ForestGraph, boundary: frozenset) -> bool:
    return all(g.parent[v] not in boundary for v in boundary)


_BOUNDARY_OK = {VERTICAL: _vertical_boundary_ok, HORIZONTAL: _horizontal_boundary_ok}


def _chains(forest: Forest, kind: str) -> Iterator[tuple]:
    g = graph(forest)
    ok = _BOUNDARY_OK[kind]
    tubes = all_tubes(forest)
    full = frozenset(range(g.n))

    def extend(chain):
        outer = chain[-1]
        # close the chain here: the innermost boundary is the tube itself
        if len(chain) >= 2 and ok(g, outer):
            yield chain
        for t in tubes:
            if len(t) < len(outer) and t < outer and ok(g, outer - t):
                yield from extend(chain + (t,))

    if g.n:
        yield from extend((full,))


@lru_cache(maxsize=None)
def _tubings(forest: Forest, kind: str) -> tuple:
    return tuple(Tubing(forest, chain, kind) for chain in _chains(forest, kind))


def enumerate_vertical_tubings(forest: Forest) -> list[Tubing]:
    if is_horizontal(forest):
        return []
    return list(_tubings(forest, VERTICAL))


def enumerate_horizontal_tubings(forest: Forest) -> list[Tubing]:
    return list(_tubings(forest, HORIZONTAL))


def enumerate_tubings(forest: Forest, kind: str) -> list[Tubing]:
    if kind == VERTICAL:
        return enumerate_vertical_tubings(forest)
    if kind == HORIZONTAL:
        return enumerate_horizontal_tubings(forest)
    raise ValueError(f"unknown tubing kind {kind!r}")


def horizontal_tubings_by_profile(forest: Forest) -> dict[tuple, list[Tubing]]:
    out: dict[tuple, list[Tubing]] = {}
    for t in enumerate_horizontal_tubings(forest):
        out.setdefault(t.profile, []).append(t)
    return out


def is_valid_tubing(t: Tubing) -> bool:
    """Re-check every tubing condition from scratch."""
    g = graph(t.forest)
    if len(t.tubes) < 2 or t.tubes[0] != frozenset(range(g.n)):
        return False
    if not all(is_tube(t.forest, s) for s in t.tubes):
        return False
    if not all(b < a for a, b in zip(t.tubes, t.tubes[1:])):
        return False
    ok = _BOUNDARY_OK[t.kind]
    return all(ok(g, b) for b in t.boundaries)


# ---------------------------------------------------------------------------
# coefficients

@lru_cache(maxsize=None)
def _coeff_vertical(forest: Forest) -> Fraction:
    n = size(forest)
    if n == 1:
        return Fraction(1)
    if is_horizontal(forest):
        return Fraction(0)
    total = Fraction(0)
    for t in _tubings(forest, VERTICAL):
        prod = Fraction(-1, factorial(len(t)))
        for b in t.boundary_forests():
            prod *= _coeff_vertical(b)
            if not prod:
                break
        total += prod
    return total


def coeff_vertical(forest: Forest) -> Fraction:
    """Coefficient of ``forest`` in the expansion, by recursion over vertical tubings."""
    if not forest:
        return Fraction(0)
    return _coeff_vertical(forest)


@dataclass(frozen=True)
class TubeStats:
    """Attachment statistics of a non-minimal tube relative to its inner tube.

    ``unattached`` counts boundary vertices that are roots of the forest,
    ``per_tree[a]`` those attached to the ``a``-th tree of the inner tube, and
    ``fibers`` maps each inner vertex with a nonzero fiber to its size.
    """

    unattached: int
    per_tree: tuple
    fibers: dict = field(hash=False)

    @property
    def shuffle_factor(self) -> Fraction:
        out = multinomial((self.unattached,) + self.per_tree)
        by_tree: dict[int, list[int]] = {}
        for (a, _v), n in self.fibers.items():
            by_tree.setdefault(a, []).append(n)
        for sizes in by_tree.values():
            out *= multinomial(sizes)
        return out


def tube_stats(t: Tubing, s) -> TubeStats:
    """Statistics of tube ``s`` (a tube of ``t`` or its index in ``t.tubes``)."""
    idx = s if isinstance(s, int) else t.tubes.index(frozenset(s))
    if idx == len(t.tubes) - 1:
        raise ValueError("the minimal tube has no inner tube")
    g = graph(t.forest)
    outer, inner = t.tubes[idx], t.tubes[idx + 1]
    boundary = outer - inner
    inner_roots = g.component_roots(inner)
    tree_of_inner = {}
    for a, r in enumerate(inner_roots):
        stack = [r]
        while stack:
            v = stack.pop()
            tree_of_inner[v] = a
            stack.extend(c for c in g.children[v] if c in inner)
    unattached = 0
    per_tree = [0] * len(inner_roots)
    fibers: dict[tuple, int] = {}
    for r in g.component_roots(boundary):
        p = g.parent[r]
        if p is None:
            unattached += 1
        else:
            a = tree_of_inner[p]
            per_tree[a] += 1
            fibers[(a, p)] = fibers.get((a, p), 0) + 1
    return TubeStats(unattached, tuple(per_tree), fibers)


def horizontal_weight(t: Tubing) -> Fraction:
    """Contribution of one horizontal tubing to the closed-form coefficient."""
    k = len(t)
    w = Fraction((-1) ** (k - 1), k)
    for i, b in enumerate(t.boundaries):
        w /= factorial(len(b))
        if i < k - 1:
            w *= tube_stats(t, i).shuffle_factor
    return w


@lru_cache(maxsize=None)
def _coeff_horizontal(forest: Forest) -> Fraction:
    return sum((horizontal_weight(t) for t in _tubings(forest, HORIZONTAL)), Fraction(0))


def coeff_horizontal(forest: Forest) -> Fraction:
    """Closed-form coefficient from horizontal tubings.

    Defined for non-horizontal forests with at least two vertices.
    """
    if size(forest) < 2:
        raise ValueError("the horizontal-tubing formula needs at least two vertices")
    if is_horizontal(forest):
        raise ValueError("the horizontal-tubing formula does not apply to horizontal forests")
    return _coeff_horizontal(forest)


def sorted_forests(forests: Iterable[Forest]) -> list[Forest]:
    return sorted(forests, key=forest_key)
