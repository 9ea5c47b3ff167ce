"""Brute-force reference implementations, written from the definitions.

None of these reuse the enumeration or coefficient code of the package; they
work on bitmasks and raw parenthesis strings so that agreement is meaningful.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from postlie.forests import GraftSpec, VertexRef, enumerate_forests, global_vertices, graft_at, multi_graft, size


def balanced_strings(n: int) -> list[str]:
    """All balanced parenthesis strings with ``n`` pairs."""
    out = []
    for opens in itertools.combinations(range(2 * n), n):
        s = [")"] * (2 * n)
        for i in opens:
            s[i] = "("
        depth = 0
        for ch in s:
            depth += 1 if ch == "(" else -1
            if depth < 0:
                break
        else:
            out.append("".join(s))
    return out


class Poset:
    """Parent map and ordered children of a forest encoding, read off the string."""

    def __init__(self, text: str):
        self.parent, self.children, self.roots = [], [], []
        stack = []
        for ch in text:
            if ch == "(":
                v = len(self.parent)
                p = stack[-1] if stack else None
                self.parent.append(p)
                self.children.append([])
                if p is None:
                    self.roots.append(v)
                else:
                    self.children[p].append(v)
                stack.append(v)
            else:
                stack.pop()
        self.n = len(self.parent)

    def members(self, mask: int) -> list[int]:
        return [v for v in range(self.n) if mask >> v & 1]

    def _upward_closed(self, ordered: list[int], mask: int) -> bool:
        seen = False
        for v in ordered:
            if mask >> v & 1:
                seen = True
            elif seen:
                return False
        return True

    def is_tube(self, mask: int) -> bool:
        if not mask:
            return False
        for v in self.members(mask):
            p = self.parent[v]
            if p is not None and not mask >> p & 1:
                return False
            if not self._upward_closed(self.children[v], mask):
                return False
        return self._upward_closed(self.roots, mask)

    def boundary_roots(self, mask: int) -> list[int]:
        return [v for v in self.members(mask) if self.parent[v] is None or not mask >> self.parent[v] & 1]

    def horizontal_ok(self, mask: int) -> bool:
        return all(self.parent[v] is None or not mask >> self.parent[v] & 1 for v in self.members(mask))

    def vertical_ok(self, mask: int) -> bool:
        roots = self.boundary_roots(mask)
        singletons = len(roots) == bin(mask).count("1")
        if len(roots) > 1 and singletons:
            return False
        return len({self.parent[r] for r in roots}) == 1


def brute_tubes(text: str) -> set[frozenset]:
    P = Poset(text)
    return {frozenset(P.members(m)) for m in range(1, 1 << P.n) if P.is_tube(m)}


def brute_tubings(text: str, kind: str) -> list[tuple]:
    """Chains of tube bitmasks, outermost first, as tuples of frozensets."""
    P = Poset(text)
    ok = P.horizontal_ok if kind == "horizontal" else P.vertical_ok
    tubes = [m for m in range(1, 1 << P.n) if P.is_tube(m)]
    full = (1 << P.n) - 1
    out = []

    def grow(chain):
        outer = chain[-1]
        if len(chain) >= 2 and ok(outer):
            out.append(tuple(frozenset(P.members(m)) for m in chain))
        for m in tubes:
            if m != outer and m & outer == m and ok(outer & ~m):
                grow(chain + [m])

    if P.n:
        grow([full])
    return out


def profile(chain: tuple) -> tuple:
    inner = chain[1:] + (frozenset(),)
    return tuple(len(a - b) for a, b in zip(chain, inner))


# ---------------------------------------------------------------------------
# decomposition grammars

def compositions(n: int, k: int):
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def _vertical_pieces(p: int) -> list:
    return [F for F in enumerate_forests(p) if p == 1 or any(t != () for t in F)]


def _one_vertex_ops(E, G):
    yield E + G
    for v in global_vertices(G):
        yield graft_at(E, G, v)


def vertical_decompositions(n: int) -> dict:
    """Count of expressions ``F1 op (F2 op (... Fk))`` per (forest, profile)."""
    counts: dict = {}
    for k in range(2, n + 1):
        for p in compositions(n, k):
            results = {F: 1 for F in _vertical_pieces(p[-1])}
            for pi in reversed(p[:-1]):
                nxt: dict = {}
                for G, c in results.items():
                    for E in _vertical_pieces(pi):
                        for F in _one_vertex_ops(E, G):
                            nxt[F] = nxt.get(F, 0) + c
                results = nxt
            for F, c in results.items():
                counts[(F, p)] = counts.get((F, p), 0) + c
    return counts


def _fiber_specs(p: int, G):
    """Mixed operations with ``E = p`` single vertices: ``n0`` plus a fiber function."""
    verts = global_vertices(G)
    for n0 in range(p + 1):
        rest = p - n0
        for fib in itertools.product(range(rest + 1), repeat=len(verts)):
            if sum(fib) != rest:
                continue
            targets = tuple((v, c) for v, c in zip(verts, fib) if c)
            yield GraftSpec(n0, targets)


def horizontal_decompositions(n: int) -> dict:
    counts: dict = {}
    for k in range(2, n + 1):
        for p in compositions(n, k):
            results = {((),) * p[-1]: 1}
            for pi in reversed(p[:-1]):
                nxt: dict = {}
                E = ((),) * pi
                for G, c in results.items():
                    for spec in _fiber_specs(pi, G):
                        F = multi_graft(E, G, spec)
                        nxt[F] = nxt.get(F, 0) + c
                results = nxt
            for F, c in results.items():
                counts[(F, p)] = counts.get((F, p), 0) + c
    return counts


# ---------------------------------------------------------------------------
# post-Lie identities on random vectors

def _apply(tensor, u, v):
    d = len(u)
    return [sum((u[i] * v[j] * tensor[i][j][k] for i in range(d) for j in range(d)), Fraction(0)) for k in range(d)]


def random_identity_check(sc, trials: int = 25, seed: int = 0) -> bool:
    """Evaluate antisymmetry, Jacobi, PL1 and PL2 on random rational vectors.

    A polynomial identity in the entries that fails generically fails on some
    random sample with overwhelming probability, so ``True`` over many trials
    is strong evidence that the constants define a post-Lie algebra.
    """
    rng = random.Random(seed)
    d = sc.dim
    br = lambda u, v: _apply(sc.bracket, u, v)
    tr = lambda u, v: _apply(sc.triangle, u, v)
    add = lambda *vs: [sum(xs, Fraction(0)) for xs in zip(*vs)]
    neg = lambda u: [-a for a in u]
    for _ in range(trials):
        x, y, z = ([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(d)] for _ in range(3))
        checks = [
            add(br(x, y), br(y, x)),
            add(br(x, br(y, z)), br(y, br(z, x)), br(z, br(x, y))),
            add(tr(x, br(y, z)), neg(br(tr(x, y), z)), neg(br(y, tr(x, z)))),
            add(tr(br(x, y), z),
                neg(add(tr(x, tr(y, z)), neg(tr(tr(x, y), z)))),
                add(tr(y, tr(x, z)), neg(tr(tr(y, x), z)))),
        ]
        if any(any(c) for c in checks):
            return False
    return True


def all_forests_between(lo: int, hi: int):
    for n in range(lo, hi + 1):
        yield from enumerate_forests(n)


__all__ = [
    "Poset", "balanced_strings", "brute_tubes", "brute_tubings", "profile", "compositions",
    "vertical_decompositions", "horizontal_decompositions", "random_identity_check",
    "all_forests_between", "size", "VertexRef",
]
