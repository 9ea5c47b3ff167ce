"""Enveloping algebra of the free post-Lie algebra on one generator.

Elements are finite linear combinations of planar forests with exact rational
coefficients.  Planar trees generate a free Lie algebra whose bracket is the
commutator, so forests (words of trees) form a basis of its enveloping algebra
and every tree is primitive for the shuffle coproduct.

Products available here:

* ``concat``      forest concatenation (the enveloping algebra product)
* ``triangle``    the post-Lie product extended to forests (left grafting)
* ``gl_product``  Grossman-Larson product ``X * Y = X_(1) (X_(2) |> Y)``
"""
from __future__ import annotations

import itertools
import json
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Iterator, Mapping

from .forests import (
    EMPTY,
    LEAF,
    Forest,
    Tree,
    forest_key,
    graft_many,
    parse_forest,
    render,
    size,
    vertex_paths,
)


def _min_degree(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Element:
    """Finite linear combination of forests, optionally truncated.

    ``degree`` is the truncation degree: terms with more vertices are
    dropped on construction.  ``None`` means no truncation.  Binary operations
    keep the smaller truncation degree of their operands.
    """

    __slots__ = ("terms", "degree")

    def __init__(self, terms: Mapping[Forest, Fraction | int] | None = None, degree: int | None = None):
        self.degree = degree
        clean = {}
        for forest, coeff in (terms or {}).items():
            if coeff and (degree is None or size(forest) <= degree):
                clean[forest] = Fraction(coeff)
        self.terms: dict[Forest, Fraction] = clean

    @classmethod
    def basis(cls, forest: Forest, coeff=1, degree: int | None = None) -> "Element":
        return cls({forest: coeff}, degree)

    @classmethod
    def unit(cls, degree: int | None = None) -> "Element":
        return cls({EMPTY: 1}, degree)

    @classmethod
    def leaf(cls, degree: int | None = None) -> "Element":
        return cls({(LEAF,): 1}, degree)

    @classmethod
    def parse(cls, text: str, coeff=1, degree: int | None = None) -> "Element":
        return cls({parse_forest(text): coeff}, degree)

    def __repr__(self) -> str:
        if not self.terms:
            return "Element(0)"
        parts = [f"{c} {render(f) or '1'}" for f, c in self.sorted_terms()]
        return "Element(" + " + ".join(parts) + ")"

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def coefficient(self, forest: Forest) -> Fraction:
        return self.terms.get(forest, Fraction(0))

    def sorted_terms(self) -> list[tuple[Forest, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: forest_key(kv[0]))

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        for f, c in other.terms.items():
            out[f] = out.get(f, 0) + c
        return Element(out, _min_degree(self.degree, other.degree))

    def __neg__(self) -> "Element":
        return Element({f: -c for f, c in self.terms.items()}, self.degree)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, scalar) -> "Element":
        s = Fraction(scalar)
        return Element({f: s * c for f, c in self.terms.items()}, self.degree)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Element":
        return self * (1 / Fraction(scalar))

    def truncate(self, degree: int | None) -> "Element":
        return Element(self.terms, _min_degree(self.degree, degree))

    def homogeneous(self, n: int) -> "Element":
        """Degree-``n`` component."""
        return Element({f: c for f, c in self.terms.items() if size(f) == n}, self.degree)

    def constant(self) -> Fraction:
        return self.terms.get(EMPTY, Fraction(0))

    def max_degree(self) -> int:
        return max((size(f) for f in self.terms), default=0)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [
                {"forest": render(f), "num": str(c.numerator), "den": str(c.denominator)}
                for f, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Element":
        terms: dict[Forest, Fraction] = {}
        for term in data["terms"]:
            f = parse_forest(term["forest"])
            terms[f] = terms.get(f, 0) + Fraction(int(term["num"]), int(term["den"]))
        return cls(terms, data.get("degree"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


class TensorElement:
    """Finite linear combination of pairs of forests."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction | int] | None = None):
        self.terms: dict[tuple, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorElement(out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + TensorElement({k: -c for k, c in other.terms.items()})

    def __repr__(self) -> str:
        parts = [f"{c} {render(a) or '1'} (x) {render(b) or '1'}" for (a, b), c in sorted(self.terms.items(), key=repr)]
        return "TensorElement(" + " + ".join(parts) + ")"

    def swap(self) -> "TensorElement":
        return TensorElement({(b, a): c for (a, b), c in self.terms.items()})


# ---------------------------------------------------------------------------
# combinatorial helpers

def multinomial(q: Iterable[int]) -> Fraction:
    """Number of ``(q_1, ..., q_k)``-shuffles, ``(sum q)! / prod(q_i!)``."""
    q = list(q)
    if any(x < 0 for x in q):
        raise ValueError("multinomial parts must be nonnegative")
    out = factorial(sum(q))
    for x in q:
        out //= factorial(x)
    return Fraction(out)


@lru_cache(maxsize=None)
def unshuffles(forest: Forest, k: int = 2) -> tuple:
    """All ways to split the word of trees into ``k`` order-preserving subwords.

    Returns a tuple of ``k``-tuples of forests, one entry per assignment of the
    trees to slots, so repeated splits appear with their multiplicity.
    """
    out = []
    for slots in itertools.product(range(k), repeat=len(forest)):
        parts = [[] for _ in range(k)]
        for tree, s in zip(forest, slots):
            parts[s].append(tree)
        out.append(tuple(tuple(p) for p in parts))
    return tuple(out)


def _combine(pairs: Iterable[tuple[Forest, Fraction]], degree: int | None) -> Element:
    out: dict[Forest, Fraction] = {}
    for f, c in pairs:
        if degree is not None and size(f) > degree:
            continue
        out[f] = out.get(f, 0) + c
    return Element(out, degree)


def bilinear(op: Callable[[Forest, Forest], Mapping[Forest, int]]) -> Callable[[Element, Element], Element]:
    """Extend a basis-level operation returning integer counts to Elements."""

    def extended(X: Element, Y: Element) -> Element:
        degree = _min_degree(X.degree, Y.degree)
        out: dict[Forest, Fraction] = {}
        ys = [(fy, cy, size(fy)) for fy, cy in Y.terms.items()]
        for fx, cx in X.terms.items():
            room = None if degree is None else degree - size(fx)
            for fy, cy, ny in ys:
                if room is not None and ny > room:
                    continue
                c = cx * cy
                for f, n in op(fx, fy).items():
                    out[f] = out.get(f, 0) + c * n
        return Element(out, degree)

    extended.__name__ = op.__name__.lstrip("_")
    extended.__doc__ = op.__doc__
    return extended


# ---------------------------------------------------------------------------
# coproduct

def shuffle_coproduct(forest: Forest) -> TensorElement:
    """Unshuffle coproduct of a word of trees; each tree is primitive."""
    out: dict[tuple, Fraction] = {}
    for left, right in unshuffles(forest, 2):
        out[(left, right)] = out.get((left, right), 0) + 1
    return TensorElement(out)


def coproduct(X: Element) -> TensorElement:
    out: dict[tuple, Fraction] = {}
    for f, c in X.terms.items():
        for pair, n in shuffle_coproduct(f).terms.items():
            out[pair] = out.get(pair, 0) + c * n
    return TensorElement(out)


def iterated_coproduct(forest: Forest, k: int) -> dict[tuple, Fraction]:
    """``k``-fold unshuffle as a dict from ``k``-tuples of forests to counts."""
    out: dict[tuple, Fraction] = {}
    for parts in unshuffles(forest, k):
        out[parts] = out.get(parts, 0) + 1
    return out


def is_primitive(X: Element) -> bool:
    """True iff ``Delta(X) = X (x) 1 + 1 (x) X``."""
    expected: dict[tuple, Fraction] = {}
    for f, c in X.terms.items():
        expected[(f, EMPTY)] = expected.get((f, EMPTY), 0) + c
        expected[(EMPTY, f)] = expected.get((EMPTY, f), 0) + c
    return coproduct(X) == TensorElement(expected)


# ---------------------------------------------------------------------------
# products on basis forests

@lru_cache(maxsize=None)
def _concat(X: Forest, Y: Forest) -> dict:
    return {X + Y: 1}


concat = bilinear(_concat)


@lru_cache(maxsize=None)
def _graft_all_ways(X: Forest, T: Tree) -> dict:
    paths = vertex_paths(T)
    out: dict[Tree, int] = {}
    for phi in itertools.product(range(len(paths)), repeat=len(X)):
        fibers: dict[tuple, list] = {}
        for tree, v in zip(X, phi):
            fibers.setdefault(paths[v], []).append(tree)
        new = graft_many(T, {p: tuple(f) for p, f in fibers.items()})
        out[new] = out.get(new, 0) + 1
    return out


def graft_all_ways(X: Forest, T: Tree) -> Element:
    """``X |> T``: every tree of ``X`` grafted at every vertex of ``T``.

    Sums over all maps from the trees of ``X`` to the vertices of ``T``; trees
    sent to the same vertex keep their left-to-right order.
    """
    return Element({(t,): n for t, n in _graft_all_ways(X, T).items()})


@lru_cache(maxsize=None)
def _triangle(X: Forest, Y: Forest) -> dict:
    """Basis-level post-Lie product ``X |> Y``."""
    if not X:
        return {Y: 1}
    if not Y:
        return {}
    out: dict[Forest, int] = {}
    for parts, n in iterated_coproduct(X, len(Y)).items():
        partial: dict[Forest, int] = {EMPTY: n}
        for part, tree in zip(parts, Y):
            grafted = _graft_all_ways(part, tree)
            partial = {f + (t,): m * k for f, m in partial.items() for t, k in grafted.items()}
        for f, m in partial.items():
            out[f] = out.get(f, 0) + m
    return out


triangle = bilinear(_triangle)


@lru_cache(maxsize=None)
def _gl_product(X: Forest, Y: Forest) -> dict:
    """Basis-level Grossman-Larson product ``X_(1) (X_(2) |> Y)``."""
    out: dict[Forest, int] = {}
    for left, right in unshuffles(X, 2):
        for f, n in _triangle(right, Y).items():
            key = left + f
            out[key] = out.get(key, 0) + n
    return out


gl_product = bilinear(_gl_product)

PRODUCTS = {"concat": concat, "gl": gl_product}


def _product(product) -> Callable[[Element, Element], Element]:
    if callable(product):
        return product
    try:
        return PRODUCTS[product]
    except KeyError:
        raise ValueError(f"unknown product {product!r}; expected one of {sorted(PRODUCTS)}") from None


def power(x: Element, k: int, product="concat", degree: int | None = None) -> Element:
    mul = _product(product)
    out = Element.unit(degree)
    for _ in range(k):
        out = mul(out, x.truncate(degree))
    return out


def exp_series(x: Element, product="concat", degree: int | None = None) -> Element:
    """Truncated exponential ``sum_j x^j / j!`` for the chosen product."""
    degree = _min_degree(x.degree, degree)
    if degree is None:
        raise ValueError("exp_series needs a truncation degree")
    if x.constant():
        raise ValueError("exp_series argument must have no degree-0 term")
    mul = _product(product)
    x = x.truncate(degree)
    term = Element.unit(degree)
    out = Element.unit(degree)
    for j in range(1, degree + 1):
        term = mul(term, x) / j
        if not term:
            break
        out = out + term
    return out


def log_series(X: Element, product="concat", degree: int | None = None) -> Element:
    """Truncated logarithm ``sum_k (-1)^(k-1)/k (X - 1)^k`` for the chosen product."""
    degree = _min_degree(X.degree, degree)
    if degree is None:
        raise ValueError("log_series needs a truncation degree")
    if X.constant() != 1:
        raise ValueError("log_series argument must have degree-0 term equal to 1")
    mul = _product(product)
    y = X.truncate(degree) - Element.unit(degree)
    term = Element.unit(degree)
    out = Element(degree=degree)
    for k in range(1, degree + 1):
        term = mul(term, y)
        if not term:
            break
        out = out + term * Fraction((-1) ** (k - 1), k)
    return out
