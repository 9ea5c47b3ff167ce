"""Finite-dimensional post-Lie algebras given by structure constants.

Everything is exact (``Fraction``).  Elements of the enveloping algebra are
kept in PBW normal form: nondecreasing monomials in the basis indices.
Series are graded by a formal degree: every input vector counts as degree
one, and degrees add under products, brackets and ``|>``.  Truncating at a
formal degree ``N`` is compatible with all operations, so identities between
truncated series hold exactly degree by degree, whatever the algebra.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from pathlib import Path
from typing import Iterable, Mapping, Sequence

Vector = tuple
Monomial = tuple


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text!r}") from None


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_vector(text: str, dim: int | None = None) -> Vector:
    """Parse ``"1,0,1/2"`` into a vector of Fractions."""
    parts = [p for p in text.split(",")] if text.strip() else []
    vec = tuple(parse_rational(p) for p in parts)
    if dim is not None and len(vec) != dim:
        raise ValueError(f"expected {dim} components, got {len(vec)}")
    return vec


def basis_vector(dim: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(dim))


def zero_vector(dim: int) -> Vector:
    return (Fraction(0),) * dim


# ---------------------------------------------------------------------------
# structure constants

def _tensor(data, dim: int, name: str) -> tuple:
    try:
        out = tuple(tuple(tuple(Fraction(x) if not isinstance(x, str) else parse_rational(x) for x in row_k)
                          for row_k in row_j) for row_j in data)
    except TypeError:
        raise ValueError(f"{name} tensor is malformed") from None
    if len(out) != dim or any(len(r) != dim or any(len(v) != dim for v in r) for r in out):
        raise ValueError(f"{name} tensor must have shape {dim}x{dim}x{dim}")
    return out


def _zero_tensor(dim: int) -> tuple:
    return tuple(tuple(zero_vector(dim) for _ in range(dim)) for _ in range(dim))


@dataclass(frozen=True)
class StructureConstants:
    """``bracket[i][j][k]`` is the ``e_k``-coefficient of ``[e_i, e_j]``;
    ``triangle[i][j][k]`` that of ``e_i |> e_j``.  Indices are 0-based."""

    dim: int
    bracket: tuple
    triangle: tuple
    names: tuple | None = None

    @classmethod
    def build(cls, dim: int, bracket=None, triangle=None, names=None) -> "StructureConstants":
        b = _tensor(bracket, dim, "bracket") if bracket is not None else _zero_tensor(dim)
        t = _tensor(triangle, dim, "triangle") if triangle is not None else _zero_tensor(dim)
        return cls(dim, b, t, tuple(names) if names else None)

    @classmethod
    def from_sparse(cls, dim: int, bracket: Mapping = (), triangle: Mapping = (), names=None):
        """Build from ``{(i, j): {k: coeff}}`` maps; brackets are antisymmetrized."""
        b = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        t = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in dict(bracket).items():
            for k, c in vec.items():
                b[i][j][k] += Fraction(c)
                b[j][i][k] -= Fraction(c)
        for (i, j), vec in dict(triangle).items():
            for k, c in vec.items():
                t[i][j][k] += Fraction(c)
        return cls.build(dim, b, t, names)

    def bracket_vec(self, u: Vector, v: Vector) -> Vector:
        return _bilinear(self.bracket, u, v, self.dim)

    def triangle_vec(self, u: Vector, v: Vector) -> Vector:
        return _bilinear(self.triangle, u, v, self.dim)

    def bar_bracket(self) -> "StructureConstants":
        """Constants of ``x |> y - y |> x + [x, y]``, with zero triangle."""
        d = self.dim
        b = [[[self.triangle[i][j][k] - self.triangle[j][i][k] + self.bracket[i][j][k] for k in range(d)]
              for j in range(d)] for i in range(d)]
        return StructureConstants.build(d, b, None, self.names)

    def with_zero_triangle(self) -> "StructureConstants":
        return StructureConstants(self.dim, self.bracket, _zero_tensor(self.dim), self.names)

    def mutated(self, tensor: str, i: int, j: int, k: int, delta=1) -> "StructureConstants":
        """Copy with one entry of ``bracket`` or ``triangle`` shifted by ``delta``."""
        if tensor not in ("bracket", "triangle"):
            raise ValueError("tensor must be 'bracket' or 'triangle'")
        rows = [[list(v) for v in r] for r in getattr(self, tensor)]
        rows[i][j][k] += Fraction(delta)
        data = {"bracket": self.bracket, "triangle": self.triangle}
        data[tensor] = rows
        return StructureConstants.build(self.dim, data["bracket"], data["triangle"], self.names)

    @property
    def bracket_is_zero(self) -> bool:
        return not any(x for r in self.bracket for v in r for x in v)

    @property
    def triangle_is_zero(self) -> bool:
        return not any(x for r in self.triangle for v in r for x in v)

    def to_json(self) -> dict:
        def enc(t):
            return [[[format_rational(x) for x in v] for v in r] for r in t]

        data = {"dim": self.dim, "bracket": enc(self.bracket), "triangle": enc(self.triangle)}
        if self.names:
            data["names"] = list(self.names)
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "StructureConstants":
        if not isinstance(data, Mapping) or "dim" not in data:
            raise ValueError("structure constants need a 'dim' field")
        dim = data["dim"]
        if not isinstance(dim, int) or dim < 0:
            raise ValueError("'dim' must be a nonnegative integer")
        return cls.build(dim, data.get("bracket"), data.get("triangle"), data.get("names"))


def _bilinear(tensor, u: Vector, v: Vector, dim: int) -> Vector:
    out = [Fraction(0)] * dim
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            c = ui * vj
            for k, x in enumerate(tensor[i][j]):
                if x:
                    out[k] += c * x
    return tuple(out)


def load_structure_constants(path) -> StructureConstants:
    with open(path) as fh:
        return StructureConstants.from_json(json.load(fh))


def dumps_structure_constants(sc: StructureConstants) -> str:
    """JSON text with one ``[i][j]`` vector per line."""
    data = sc.to_json()

    def tensor(t):
        rows = [",\n".join("    " + json.dumps(v) for v in r) for r in t]
        return "[\n" + ",\n".join("   [\n" + r + "\n   ]" for r in rows) + "\n  ]"

    parts = [f'  "dim": {sc.dim}', f'  "bracket": {tensor(data["bracket"])}', f'  "triangle": {tensor(data["triangle"])}']
    if "names" in data:
        parts.append(f'  "names": {json.dumps(data["names"])}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def save_structure_constants(sc: StructureConstants, path) -> None:
    Path(path).write_text(dumps_structure_constants(sc))


# ---------------------------------------------------------------------------
# example algebras

def heisenberg_bracket() -> dict:
    return {(0, 1): {2: 1}}


def heisenberg_trivial() -> StructureConstants:
    """3-dim Heisenberg algebra, ``[e1, e2] = e3``, with ``|> = 0``."""
    return StructureConstants.from_sparse(3, heisenberg_bracket(), names=("e1", "e2", "e3"))


def heisenberg_negative() -> StructureConstants:
    """3-dim Heisenberg algebra with ``x |> y = -[x, y]``."""
    triangle = {(0, 1): {2: -1}, (1, 0): {2: 1}}
    return StructureConstants.from_sparse(3, heisenberg_bracket(), triangle, names=("e1", "e2", "e3"))


def graded_pre_lie(d: int = 4) -> StructureConstants:
    """``e_i |> e_j = (j + 1) e_(i+j)`` for ``1 <= i, j``, zero when ``i + j > d``; zero bracket."""
    triangle = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if i + j <= d:
                triangle[(i - 1, j - 1)] = {i + j - 1: j + 1}
    return StructureConstants.from_sparse(d, {}, triangle, names=tuple(f"e{i}" for i in range(1, d + 1)))


EXAMPLES = {
    "heisenberg_trivial": heisenberg_trivial,
    "heisenberg_negative": heisenberg_negative,
    "graded_pre_lie": graded_pre_lie,
}


def example_path(name: str) -> Path:
    return Path(__file__).parent / "data" / f"{name}.json"


# ---------------------------------------------------------------------------
# axiom checker

@dataclass
class Violation:
    identity: str
    witness: tuple
    residual: Vector

    def __str__(self) -> str:
        idx = ", ".join(f"e{i + 1}" for i in self.witness)
        res = ", ".join(format_rational(x) for x in self.residual)
        return f"{self.identity} fails at ({idx}): residual [{res}]"


@dataclass
class AxiomReport:
    violations: list = field(default_factory=list)
    pre_lie: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def failed(self) -> set:
        return {v.identity for v in self.violations}

    def summary(self) -> str:
        if self.ok:
            return "post-Lie axioms hold" + (" (pre-Lie case)" if self.pre_lie else "")
        return "\n".join(str(v) for v in self.violations)


def _sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def _add(*vs: Vector) -> Vector:
    return tuple(sum(xs, Fraction(0)) for xs in zip(*vs))


def check_post_lie_axioms(sc: StructureConstants) -> AxiomReport:
    """Check antisymmetry, Jacobi, PL1 and PL2 on every basis pair and triple."""
    d = sc.dim
    e = [basis_vector(d, i) for i in range(d)]
    br, tr = sc.bracket_vec, sc.triangle_vec
    report = AxiomReport(pre_lie=sc.bracket_is_zero)

    def check(name, witness, residual):
        if any(residual):
            report.violations.append(Violation(name, witness, residual))

    def assoc(x, y, z):
        return _sub(tr(x, tr(y, z)), tr(tr(x, y), z))

    for i, j in itertools.product(range(d), repeat=2):
        check("antisymmetry", (i, j), _add(br(e[i], e[j]), br(e[j], e[i])))
    for i, j, k in itertools.product(range(d), repeat=3):
        x, y, z = e[i], e[j], e[k]
        check("jacobi", (i, j, k), _add(br(x, br(y, z)), br(y, br(z, x)), br(z, br(x, y))))
        check("PL1", (i, j, k), _sub(tr(x, br(y, z)), _add(br(tr(x, y), z), br(y, tr(x, z)))))
        check("PL2", (i, j, k), _sub(tr(br(x, y), z), _sub(assoc(x, y, z), assoc(y, x, z))))
    return report


# ---------------------------------------------------------------------------
# truncated enveloping algebra

@dataclass
class ConcreteSeries:
    """Finitely supported map ``(formal degree, PBW monomial) -> Fraction``."""

    terms: dict
    N: int

    def __post_init__(self):
        self.terms = {k: Fraction(c) for k, c in self.terms.items() if c and k[0] <= self.N}

    @classmethod
    def zero(cls, N: int) -> "ConcreteSeries":
        return cls({}, N)

    @classmethod
    def one(cls, N: int) -> "ConcreteSeries":
        return cls({(0, ()): Fraction(1)}, N)

    @classmethod
    def from_vector(cls, v: Vector, N: int, degree: int = 1) -> "ConcreteSeries":
        return cls({(degree, (k,)): c for k, c in enumerate(v)}, N)

    @classmethod
    def from_graded_vectors(cls, parts: Mapping[int, Vector], N: int) -> "ConcreteSeries":
        terms = {}
        for deg, v in parts.items():
            for k, c in enumerate(v):
                terms[(deg, (k,))] = c
        return cls(terms, N)

    def __add__(self, other: "ConcreteSeries") -> "ConcreteSeries":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return ConcreteSeries(out, min(self.N, other.N))

    def __sub__(self, other: "ConcreteSeries") -> "ConcreteSeries":
        return self + other * -1

    def __mul__(self, scalar) -> "ConcreteSeries":
        s = Fraction(scalar)
        return ConcreteSeries({k: c * s for k, c in self.terms.items()}, self.N)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "ConcreteSeries":
        return self * (1 / Fraction(scalar))

    def __eq__(self, other) -> bool:
        if isinstance(other, ConcreteSeries):
            return self.terms == other.terms
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"ConcreteSeries({self.sorted_terms()}, N={self.N})"

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def truncate(self, N: int) -> "ConcreteSeries":
        return ConcreteSeries(self.terms, min(N, self.N))

    def homogeneous(self, n: int) -> "ConcreteSeries":
        return ConcreteSeries({k: c for k, c in self.terms.items() if k[0] == n}, self.N)

    def constant(self) -> Fraction:
        return self.terms.get((0, ()), Fraction(0))

    def is_vector(self) -> bool:
        """True iff every monomial has length one."""
        return all(len(m) == 1 for _, m in self.terms)

    def graded_vectors(self, dim: int) -> dict[int, Vector]:
        if not self.is_vector():
            raise ValueError("series has non-linear PBW monomials")
        out: dict[int, list] = {}
        for (deg, (k,)), c in self.terms.items():
            out.setdefault(deg, [Fraction(0)] * dim)[k] += c
        return {deg: tuple(v) for deg, v in sorted(out.items())}

    def vector(self, dim: int) -> Vector:
        """Sum of all degree components, as a single vector."""
        parts = self.graded_vectors(dim).values()
        return _add(zero_vector(dim), *parts) if parts else zero_vector(dim)


class Envelope:
    """Truncated enveloping algebra of ``sc.bracket`` with the extension of ``|>``."""

    def __init__(self, sc: StructureConstants, N: int):
        if N < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.sc = sc
        self.N = N
        self.dim = sc.dim
        self._nf = lru_cache(maxsize=None)(self._normal_form)
        self._word_on_letter = lru_cache(maxsize=None)(self._word_on_letter_impl)
        self._mono_triangle = lru_cache(maxsize=None)(self._mono_triangle_impl)
        self._sparse_bracket = {
            (i, j): {k: c for k, c in enumerate(sc.bracket[i][j]) if c}
            for i in range(self.dim) for j in range(self.dim)
        }
        self._sparse_triangle = {
            (i, j): {k: c for k, c in enumerate(sc.triangle[i][j]) if c}
            for i in range(self.dim) for j in range(self.dim)
        }

    # PBW straightening -----------------------------------------------------

    def _normal_form(self, word: tuple) -> dict:
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                return self._straighten(word, i, self._nf)
        return {word: Fraction(1)}

    def _straighten(self, word: tuple, i: int, recurse) -> dict:
        a, b = word[i], word[i + 1]
        out: dict = {}
        for m, c in recurse(word[:i] + (b, a) + word[i + 2:]).items():
            out[m] = out.get(m, 0) + c
        for k, x in self._sparse_bracket[(a, b)].items():
            for m, c in recurse(word[:i] + (k,) + word[i + 2:]).items():
                out[m] = out.get(m, 0) + x * c
        return {m: c for m, c in out.items() if c}

    def normal_form(self, word: Sequence[int], rng: random.Random | None = None) -> dict:
        """PBW normal form of a word; ``rng`` picks a random descent at each step."""
        word = tuple(word)
        if rng is None:
            return dict(self._nf(word))

        def recurse(w):
            descents = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
            if not descents:
                return {w: Fraction(1)}
            return self._straighten(w, rng.choice(descents), recurse)

        return recurse(word)

    def _from_words(self, pairs: Iterable) -> ConcreteSeries:
        """Series from ``((degree, word), coeff)`` pairs with arbitrary words."""
        out: dict = {}
        for (deg, word), c in pairs:
            if deg > self.N or not c:
                continue
            for m, x in self._nf(tuple(word)).items():
                out[(deg, m)] = out.get((deg, m), 0) + c * x
        return ConcreteSeries(out, self.N)

    # products ----------------------------------------------------------------

    def mul(self, X: ConcreteSeries, Y: ConcreteSeries) -> ConcreteSeries:
        return self._from_words(
            ((dx + dy, mx + my), cx * cy)
            for (dx, mx), cx in X.terms.items()
            for (dy, my), cy in Y.terms.items()
            if dx + dy <= self.N
        )

    def _letter_triangle(self, i: int, j: int) -> dict:
        return self._sparse_triangle[(i, j)]

    def _derive_word(self, i: int, word: tuple) -> dict:
        """``e_i |> word`` by the derivation rule, as a map word -> coeff."""
        out: dict = {}
        for p, letter in enumerate(word):
            for k, c in self._letter_triangle(i, letter).items():
                w = word[:p] + (k,) + word[p + 1:]
                out[w] = out.get(w, 0) + c
        return out

    def _word_on_letter_impl(self, word: tuple, j: int) -> dict:
        """``word |> e_j`` as a vector ``{k: coeff}``."""
        if not word:
            return {j: Fraction(1)}
        x, rest = word[0], word[1:]
        out: dict = {}
        for k, c in self._word_on_letter(rest, j).items():
            for m, y in self._letter_triangle(x, k).items():
                out[m] = out.get(m, 0) + c * y
        for w, c in self._derive_word(x, rest).items():
            for m, y in self._word_on_letter(w, j).items():
                out[m] = out.get(m, 0) - c * y
        return {k: c for k, c in out.items() if c}

    def _mono_triangle_impl(self, X: tuple, Y: tuple) -> dict:
        """``X |> Y`` for words, as a map word -> coeff (not normalized)."""
        if not X:
            return {Y: Fraction(1)}
        if not Y:
            return {}
        out: dict = {}
        for slots in itertools.product(range(len(Y)), repeat=len(X)):
            parts = [[] for _ in Y]
            for letter, s in zip(X, slots):
                parts[s].append(letter)
            partial = {(): Fraction(1)}
            for part, y in zip(parts, Y):
                vec = self._word_on_letter(tuple(part), y)
                partial = {w + (k,): c * x for w, c in partial.items() for k, x in vec.items()}
                if not partial:
                    break
            for w, c in partial.items():
                out[w] = out.get(w, 0) + c
        return out

    def triangle(self, X: ConcreteSeries, Y: ConcreteSeries) -> ConcreteSeries:
        return self._from_words(
            ((dx + dy, w), cx * cy * c)
            for (dx, mx), cx in X.terms.items()
            for (dy, my), cy in Y.terms.items()
            if dx + dy <= self.N
            for w, c in self._mono_triangle(mx, my).items()
        )

    def gl(self, X: ConcreteSeries, Y: ConcreteSeries) -> ConcreteSeries:
        """Grossman-Larson product ``X_(1) (X_(2) |> Y)``."""
        pairs = []
        for (dx, mx), cx in X.terms.items():
            for (dy, my), cy in Y.terms.items():
                if dx + dy > self.N:
                    continue
                for mask in itertools.product((0, 1), repeat=len(mx)):
                    left = tuple(l for l, s in zip(mx, mask) if not s)
                    right = tuple(l for l, s in zip(mx, mask) if s)
                    for w, c in self._mono_triangle(right, my).items():
                        pairs.append(((dx + dy, left + w), cx * cy * c))
        return self._from_words(pairs)

    def _product(self, product: str):
        if product == "concat":
            return self.mul
        if product == "gl":
            return self.gl
        raise ValueError(f"unknown product {product!r}")

    def exp(self, X: ConcreteSeries, product: str = "concat") -> ConcreteSeries:
        if X.constant():
            raise ValueError("exp argument must have no degree-0 term")
        mul = self._product(product)
        term = out = ConcreteSeries.one(self.N)
        for j in range(1, self.N + 1):
            term = mul(term, X) / j
            if not term:
                break
            out = out + term
        return out

    def log(self, X: ConcreteSeries, product: str = "concat") -> ConcreteSeries:
        if X.constant() != 1:
            raise ValueError("log argument must have constant term 1")
        mul = self._product(product)
        y = X - ConcreteSeries.one(self.N)
        term = ConcreteSeries.one(self.N)
        out = ConcreteSeries.zero(self.N)
        for k in range(1, self.N + 1):
            term = mul(term, y)
            if not term:
                break
            out = out + term * Fraction((-1) ** (k - 1), k)
        return out


@lru_cache(maxsize=64)
def envelope(sc: StructureConstants, N: int) -> Envelope:
    return Envelope(sc, N)


def pbw_normal_form(word: Sequence[int], sc: StructureConstants, N: int | None = None,
                    rng: random.Random | None = None) -> ConcreteSeries:
    """Normal form of a word of basis letters, each letter of formal degree one."""
    word = tuple(word)
    N = len(word) if N is None else N
    if len(word) > N:
        return ConcreteSeries.zero(N)
    nf = envelope(sc, N).normal_form(word, rng)
    return ConcreteSeries({(len(word), m): c for m, c in nf.items()}, N)


def concrete_triangle(X: ConcreteSeries, Y: ConcreteSeries, sc: StructureConstants) -> ConcreteSeries:
    return envelope(sc, min(X.N, Y.N)).triangle(X, Y)


def concrete_gl(X: ConcreteSeries, Y: ConcreteSeries, sc: StructureConstants) -> ConcreteSeries:
    return envelope(sc, min(X.N, Y.N)).gl(X, Y)


def _as_series(x, N: int) -> ConcreteSeries:
    if isinstance(x, ConcreteSeries):
        return x.truncate(N)
    return ConcreteSeries.from_vector(tuple(Fraction(c) for c in x), N)


class NonPrimitiveResidue(ArithmeticError):
    """Raised when a computation expected to be linear leaves higher monomials."""


def concrete_chi_series(sc: StructureConstants, x, N: int) -> ConcreteSeries:
    """``log_*(exp_.(x))`` truncated at formal degree ``N``; must be linear."""
    if N < 1:
        raise ValueError("degree must be at least 1")
    env = envelope(sc, N)
    out = env.log(env.exp(_as_series(x, N), "concat"), "gl")
    if not out.is_vector():
        bad = [k for k in out.terms if len(k[1]) != 1]
        raise NonPrimitiveResidue(f"chi has non-linear PBW terms, e.g. {bad[:3]}")
    return out


def concrete_chi(sc: StructureConstants, x, N: int) -> Vector:
    """chi(x) as a vector, summed over formal degrees ``1..N``."""
    return concrete_chi_series(sc, x, N).vector(sc.dim)


def _upsilon_series(sc: StructureConstants, c: ConcreteSeries, b: ConcreteSeries, N: int) -> ConcreteSeries:
    env = envelope(sc, N)
    term = out = b
    for k in range(1, N + 1):
        term = env.triangle(c, term) / k
        if not term:
            break
        out = out + term
    return out


def exp_upsilon(sc: StructureConstants, c, b, N: int) -> Vector:
    """``b + c|>b + (1/2) c|>(c|>b) + ...`` up to ``N`` iterations."""
    cs = _as_series(c, N + 1)
    bs = _as_series(b, N + 1)
    # c and b are both degree one here, so N iterations reach degree N + 1
    return _upsilon_series(sc, cs, bs, N + 1).vector(sc.dim)


def _bch_series(sc: StructureConstants, a: ConcreteSeries, b: ConcreteSeries, N: int) -> ConcreteSeries:
    env = envelope(sc.with_zero_triangle(), N)
    out = env.log(env.mul(env.exp(a), env.exp(b)))
    if not out.is_vector():
        raise NonPrimitiveResidue("BCH series has non-linear PBW terms")
    return out


def bch(sc: StructureConstants, a, b, N: int) -> Vector:
    """``log(exp(a) exp(b))`` for the bracket of ``sc``, truncated at degree ``N``."""
    if N < 1:
        raise ValueError("degree must be at least 1")
    return _bch_series(sc, _as_series(a, N), _as_series(b, N), N).vector(sc.dim)


@dataclass
class IntegrationCheck:
    lhs: ConcreteSeries
    rhs: ConcreteSeries
    composition: ConcreteSeries
    composition_lemma: ConcreteSeries

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs and self.composition == self.composition_lemma


def integration_sides(sc: StructureConstants, a, b, N: int) -> IntegrationCheck:
    env = envelope(sc, N)
    bar = sc.bar_bracket()
    A, B = _as_series(a, N), _as_series(b, N)
    chi_a = concrete_chi_series(sc, A, N)
    chi_b = concrete_chi_series(sc, B, N)
    lhs = _bch_series(bar, chi_a, chi_b, N)
    rhs = concrete_chi_series(sc, _bch_series(sc, A, _upsilon_series(sc, chi_a, B, N), N), N)
    composition = env.log(env.gl(env.exp(A), env.exp(B)))
    composition_lemma = _bch_series(sc, A, env.triangle(env.exp(A), B), N)
    return IntegrationCheck(lhs, rhs, composition, composition_lemma)


def verify_integration_theorem(sc: StructureConstants, a, b, N: int) -> bool:
    """Exact check of ``BCH_bar(chi a, chi b) = chi(BCH(a, Exp(ups_{chi a}) b))``.

    Also checks ``log(exp a * exp b) = BCH(a, exp(a) |> b)``.  Both are
    compared degree by degree up to formal degree ``N``.
    """
    return integration_sides(sc, a, b, N).ok


# ---------------------------------------------------------------------------
# evaluating universal forests

def eval_forest(sc: StructureConstants, forest, x, N: int) -> ConcreteSeries:
    """Image of a forest under the morphism sending the single vertex to ``x``.

    A tree with children ``T1 ... Tk`` maps to ``(T1 ... Tk) |> x`` and a
    forest to the product of its trees.
    """
    env = envelope(sc, N)
    X = _as_series(x, N)

    @lru_cache(maxsize=None)
    def tree(t) -> ConcreteSeries:
        return env.triangle(word(t), X)

    def word(f) -> ConcreteSeries:
        out = ConcreteSeries.one(N)
        for t in f:
            out = env.mul(out, tree(t))
        return out

    return word(tuple(forest))


def eval_element(sc: StructureConstants, element, x, N: int) -> ConcreteSeries:
    out = ConcreteSeries.zero(N)
    for forest, c in element.terms.items():
        out = out + eval_forest(sc, forest, x, N) * c
    return out


def random_rational_vector(dim: int, rng: random.Random, bound: int = 5) -> Vector:
    return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(dim))
