"""The post-Lie Magnus expansion chi(x) on the free post-Lie algebra.

chi is characterised by ``exp_.(x) = exp_*(chi(x))``.  Its coefficients on
the forest basis are computed here four ways:

``direct_log``
    ``log_*(exp_.(x))`` with truncated series.
``recursive``
    ``chi_n = x^n/n! - sum (1/k!) chi_p1 * ... * chi_pk`` over compositions
    ``p1 + ... + pk = n`` with ``k >= 2``.
``vertical`` / ``horizontal``
    the two nested-tubing formulas, forest by forest.

All four are exact and must agree term by term.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable

from .algebra import Element, exp_series, gl_product, is_primitive, log_series
from .forests import Forest, LEAF, forests_up_to, horizontal, is_horizontal, render, size
from .tubings import coeff_horizontal, coeff_vertical

METHODS = ("direct_log", "recursive", "vertical", "horizontal")
ALIASES = {"log": "direct_log"}
MAX_DEGREE = 8


def canonical_method(method: str) -> str:
    method = ALIASES.get(method, method)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    return method


@dataclass
class ChiResult:
    degree: int
    element: Element
    method: str

    def coefficient(self, forest: Forest) -> Fraction:
        return self.element.coefficient(forest)

    def component(self, n: int) -> Element:
        return self.element.homogeneous(n)

    def to_json(self) -> dict:
        data = self.element.to_json()
        data["method"] = self.method
        data["degree"] = self.degree
        return data

    @classmethod
    def from_json(cls, data) -> "ChiResult":
        return cls(int(data["degree"]), Element.from_json(data), data["method"])


def _check_degree(N: int) -> None:
    if not isinstance(N, int) or N < 1:
        raise ValueError("degree must be a positive integer")


def _direct_log(N: int, threads: int) -> Element:
    return log_series(exp_series(Element.leaf(N), "concat", N), "gl", N)


def _recursive(N: int, threads: int) -> Element:
    chi: dict[int, Element] = {}
    # sums[k][m]: sum over compositions of m into k parts of chi_p1 * ... * chi_pk
    sums: dict[int, dict[int, Element]] = {1: {}}
    for n in range(1, N + 1):
        correction = Element(degree=N)
        for k in range(2, n + 1):
            level = sums.setdefault(k, {})
            total = Element(degree=N)
            for p in range(1, n - k + 2):
                rest = sums[k - 1].get(n - p)
                if rest:
                    total = total + gl_product(chi[p], rest)
            level[n] = total
            correction = correction + total / factorial(k)
        chi[n] = Element.basis(horizontal(n), Fraction(1, factorial(n)), N) - correction
        sums[1][n] = chi[n]
    out = Element(degree=N)
    for part in chi.values():
        out = out + part
    return out


def _tubing_method(coeff: Callable[[Forest], Fraction], N: int, threads: int) -> Element:
    forests = [F for F in forests_up_to(N, start=2) if not is_horizontal(F)]
    values = map_forests(coeff, forests, threads)
    terms = {(LEAF,): Fraction(1)}
    terms.update(zip(forests, values))
    return Element(terms, N)


def map_forests(fn: Callable[[Forest], Fraction], forests: list, threads: int = 1) -> list:
    """Apply ``fn`` to each forest, optionally across worker processes."""
    if threads <= 1 or len(forests) < 2:
        return [fn(F) for F in forests]
    chunk = max(1, len(forests) // (4 * threads))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, forests, chunksize=chunk))


_IMPLS = {
    "direct_log": _direct_log,
    "recursive": _recursive,
    "vertical": lambda N, threads: _tubing_method(coeff_vertical, N, threads),
    "horizontal": lambda N, threads: _tubing_method(coeff_horizontal, N, threads),
}


def chi(N: int, method: str = "direct_log", threads: int = 1) -> ChiResult:
    """chi(x) truncated at degree ``N`` with ``x`` the single-vertex tree."""
    _check_degree(N)
    method = canonical_method(method)
    return ChiResult(N, _IMPLS[method](N, threads), method)


def verify_defining_equation(N: int, chi_element: Element | None = None) -> bool:
    """Check ``exp_*(chi) == exp_.(x)`` term by term up to degree ``N``."""
    _check_degree(N)
    if chi_element is None:
        chi_element = chi(N).element
    lhs = exp_series(chi_element.truncate(N), "gl", N)
    rhs = exp_series(Element.leaf(N), "concat", N)
    return lhs == rhs


def primitive_components(result: ChiResult) -> dict[int, bool]:
    return {n: is_primitive(result.component(n)) for n in range(1, result.degree + 1)}


@dataclass
class MethodReport:
    degree: int
    results: dict
    timings: dict
    diff: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diff

    def format_diff(self) -> str:
        lines = []
        for forest, values in self.diff:
            shown = ", ".join(f"{m}={v.numerator}/{v.denominator}" for m, v in values.items())
            lines.append(f"{render(forest)}: {shown}")
        return "\n".join(lines)


def diff_elements(elements: dict[str, Element]) -> list:
    """Forests on which the given Elements disagree, with each method's value."""
    support: set = set()
    for el in elements.values():
        support.update(el.terms)
    out = []
    for forest in sorted(support, key=lambda f: (size(f), render(f))):
        values = {m: el.coefficient(forest) for m, el in elements.items()}
        if len(set(values.values())) > 1:
            out.append((forest, values))
    return out


def compare_methods(N: int, methods: Iterable[str] = METHODS, threads: int = 1) -> MethodReport:
    """Run several methods and report per-forest disagreements and timings."""
    _check_degree(N)
    results, timings = {}, {}
    for m in methods:
        m = canonical_method(m)
        start = time.perf_counter()
        results[m] = chi(N, m, threads)
        timings[m] = time.perf_counter() - start
    diff = diff_elements({m: r.element for m, r in results.items()})
    return MethodReport(N, results, timings, diff)
