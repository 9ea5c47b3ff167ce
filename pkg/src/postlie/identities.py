"""Exhaustive checks of the algebraic identities on basis forests.

Each checker returns a list of human-readable failures, empty on success.
"""
from __future__ import annotations

import itertools

from .algebra import Element, concat, gl_product, iterated_coproduct, shuffle_coproduct, triangle
from .forests import enumerate_forests, enumerate_trees, render


def _basis(F) -> Element:
    return Element.basis(F)


def _forests_with_sizes(total: int, parts: int, min_sizes=None):
    """Tuples of ``parts`` forests whose sizes sum to at most ``total``."""
    mins = min_sizes or (0,) * parts
    for sizes in itertools.product(range(total + 1), repeat=parts):
        if sum(sizes) > total or any(s < m for s, m in zip(sizes, mins)):
            continue
        yield from itertools.product(*(enumerate_forests(s) for s in sizes))


def _name(F) -> str:
    return render(F) or "1"


def check_d1(N: int) -> list[str]:
    out = []
    for n in range(N + 1):
        for X in enumerate_forests(n):
            if triangle(Element.unit(), _basis(X)) != _basis(X):
                out.append(f"D1: 1 |> {_name(X)} != {_name(X)}")
            if n and triangle(_basis(X), Element.unit()) != 0:
                out.append(f"D1: {_name(X)} |> 1 != 0")
    return out


def check_d4(N: int) -> list[str]:
    out = []
    for X, Y, Z in _forests_with_sizes(N, 3):
        lhs = triangle(_basis(X), _basis(Y + Z))
        rhs = Element()
        for (X1, X2), c in shuffle_coproduct(X).terms.items():
            rhs = rhs + concat(triangle(_basis(X1), _basis(Y)), triangle(_basis(X2), _basis(Z))) * c
        if lhs != rhs:
            out.append(f"D4: X={_name(X)} Y={_name(Y)} Z={_name(Z)}")
    return out


def check_d5(N: int) -> list[str]:
    out = []
    for n in range(1, N + 1):
        for k in range(1, N - n + 1):
            for x in enumerate_trees(n):
                for X in _all_forests_up_to(N - n - k):
                    for y in enumerate_trees(k):
                        xe, Xe, ye = _basis((x,)), _basis(X), _basis((y,))
                        lhs = triangle(_basis((x,) + X), ye)
                        rhs = triangle(xe, triangle(Xe, ye)) - triangle(triangle(xe, Xe), ye)
                        if lhs != rhs:
                            out.append(f"D5: x={render((x,))} X={_name(X)} y={render((y,))}")
    return out


def _all_forests_up_to(n: int):
    for m in range(n + 1):
        yield from enumerate_forests(m)


def check_d_bialgebra(N: int) -> list[str]:
    return check_d1(N) + check_d4(N) + check_d5(N)


def check_gl_associativity(N: int) -> list[str]:
    out = []
    for X, Y, Z in _forests_with_sizes(N, 3):
        x, y, z = _basis(X), _basis(Y), _basis(Z)
        if gl_product(gl_product(x, y), z) != gl_product(x, gl_product(y, z)):
            out.append(f"GL associativity: {_name(X)}, {_name(Y)}, {_name(Z)}")
    return out


def check_gl_unit(N: int) -> list[str]:
    out = []
    for X in _all_forests_up_to(N):
        x = _basis(X)
        if gl_product(Element.unit(), x) != x or gl_product(x, Element.unit()) != x:
            out.append(f"GL unit: {_name(X)}")
    return out


def _triples_lhs(F) -> dict:
    out: dict = {}
    for (A, B), c in shuffle_coproduct(F).terms.items():
        for (A1, A2), d in shuffle_coproduct(A).terms.items():
            key = (A1, A2, B)
            out[key] = out.get(key, 0) + c * d
    return out


def _triples_rhs(F) -> dict:
    out: dict = {}
    for (A, B), c in shuffle_coproduct(F).terms.items():
        for (B1, B2), d in shuffle_coproduct(B).terms.items():
            key = (A, B1, B2)
            out[key] = out.get(key, 0) + c * d
    return out


def check_coassociativity(N: int) -> list[str]:
    out = []
    for F in _all_forests_up_to(N):
        if _triples_lhs(F) != _triples_rhs(F):
            out.append(f"coassociativity: {_name(F)}")
        if _triples_lhs(F) != iterated_coproduct(F, 3):
            out.append(f"iterated coproduct: {_name(F)}")
    return out


def check_cocommutativity(N: int) -> list[str]:
    out = []
    for F in _all_forests_up_to(N):
        d = shuffle_coproduct(F)
        if d != d.swap():
            out.append(f"cocommutativity: {_name(F)}")
    return out


def check_lie_grafting(N: int) -> list[str]:
    """``l * F = l F + l |> F`` for ``l`` the single vertex and ``|F| <= N``."""
    out = []
    leaf = Element.leaf()
    for F in _all_forests_up_to(N):
        f = _basis(F)
        if gl_product(leaf, f) != concat(leaf, f) + triangle(leaf, f):
            out.append(f"l*F: {_name(F)}")
    return out


CHECKS = {
    "D1": check_d1,
    "D4": check_d4,
    "D5": check_d5,
    "GL associativity": check_gl_associativity,
    "GL unit": check_gl_unit,
    "coassociativity": check_coassociativity,
    "cocommutativity": check_cocommutativity,
    "l*F = lF + l|>F": check_lie_grafting,
}
