"""Simply-laced Coxeter graphs, the root lattice and the Weyl group action.

Vertices are indexed 0..n-1.  Root vectors are integer tuples in the
simple-root basis; no floating point enters this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionError, NonFiniteTypeError
from . import linalg

RootVector = tuple[int, ...]

DEFAULT_ROOT_CAP = 10000

# Presets expand to the standard ADE diagrams on 0-indexed vertices.
_PRESETS = {}
for _n in range(2, 9):
    _PRESETS[f"A{_n}"] = (_n, [(i, i + 1) for i in range(_n - 1)])
for _n in range(4, 7):
    _PRESETS[f"D{_n}"] = (_n, [(i, i + 1) for i in range(_n - 2)] + [(_n - 3, _n - 1)])
for _n in range(6, 9):
    _PRESETS[f"E{_n}"] = (_n, [(i, i + 1) for i in range(_n - 2)] + [(2, _n - 1)])


@dataclass(frozen=True)
class CoxeterGraph:
    """A finite simple graph; single unlabelled edges only."""

    n_vertices: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n_vertices: int, edges) -> None:
        norm = set()
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < n_vertices and 0 <= b < n_vertices):
                raise ValueError(f"edge ({a},{b}) out of range")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def n(self) -> int:
        return self.n_vertices

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def check_vertex(self, i: int) -> None:
        if not 0 <= i < self.n_vertices:
            raise DimensionError(f"vertex {i} out of range for n={self.n_vertices}")

    def simple_root(self, i: int) -> RootVector:
        self.check_vertex(i)
        return tuple(1 if k == i else 0 for k in range(self.n_vertices))

    @staticmethod
    def preset(name: str) -> "CoxeterGraph":
        if name not in _PRESETS:
            raise ValueError(f"unknown graph preset {name!r}")
        n, edges = _PRESETS[name]
        return CoxeterGraph(n, edges)

    @staticmethod
    def from_json(data) -> "CoxeterGraph":
        if isinstance(data, str):
            data = json.loads(data)
        return CoxeterGraph(int(data["n"]), [tuple(e) for e in data["edges"]])

    def to_json(self) -> dict:
        return {"n": self.n_vertices, "edges": sorted([list(e) for e in self.edges])}


def bilinear_form(g: CoxeterGraph, v: RootVector, w: RootVector) -> int:
    """Symmetric form with (a_i, a_i) = 2, (a_i, a_j) = -1 on edges, else 0."""
    if len(v) != g.n_vertices or len(w) != g.n_vertices:
        raise DimensionError("root vector length does not match graph")
    total = 0
    for i in range(g.n_vertices):
        if v[i]:
            total += 2 * v[i] * w[i]
            for j in range(g.n_vertices):
                if j != i and w[j] and g.adjacent(i, j):
                    total -= v[i] * w[j]
    return total


def reflect_simple(g: CoxeterGraph, i: int, v: RootVector) -> RootVector:
    """s_i(v) = v - (a_i, v) a_i."""
    g.check_vertex(i)
    pairing = bilinear_form(g, g.simple_root(i), v)
    return tuple(v[k] - pairing if k == i else v[k] for k in range(g.n_vertices))


def reflection_matrix(g: CoxeterGraph, i: int) -> list[list[int]]:
    """Matrix of s_i acting on column vectors in the simple-root basis."""
    cols = [reflect_simple(g, i, g.simple_root(j)) for j in range(g.n_vertices)]
    return [[cols[j][k] for j in range(g.n_vertices)] for k in range(g.n_vertices)]


def _mat_mul_int(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: a representative word plus its root-lattice matrix."""

    graph: CoxeterGraph
    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...] = field(compare=False)

    @staticmethod
    def from_word(g: CoxeterGraph, word) -> "WeylElement":
        m = [[1 if i == j else 0 for j in range(g.n_vertices)] for i in range(g.n_vertices)]
        for i in word:
            g.check_vertex(i)
            m = _mat_mul_int(m, reflection_matrix(g, i))
        elt = WeylElement(g, tuple(word), tuple(tuple(row) for row in m))
        elt._check_form()
        return elt

    @staticmethod
    def identity(g: CoxeterGraph) -> "WeylElement":
        return WeylElement.from_word(g, ())

    def _check_form(self) -> None:
        g = self.graph
        for i in range(g.n_vertices):
            for j in range(i, g.n_vertices):
                vi = self.apply(g.simple_root(i))
                vj = self.apply(g.simple_root(j))
                if bilinear_form(g, vi, vj) != bilinear_form(g, g.simple_root(i), g.simple_root(j)):
                    raise ValueError("word matrix does not preserve the bilinear form")

    def apply(self, v: RootVector) -> RootVector:
        if len(v) != self.graph.n_vertices:
            raise DimensionError("root vector length does not match graph")
        return tuple(sum(self.matrix[i][k] * v[k] for k in range(len(v))) for i in range(len(v)))

    def inverse(self) -> "WeylElement":
        return WeylElement.from_word(self.graph, tuple(reversed(self.word)))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement.from_word(self.graph, self.word + other.word)

    def is_identity(self) -> bool:
        n = self.graph.n_vertices
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def is_finite_type(g: CoxeterGraph) -> bool:
    """Positive definiteness of 2I - adjacency, via leading principal minors."""
    n = g.n_vertices
    cartan = [[Fraction(2 if i == j else (-1 if g.adjacent(i, j) else 0)) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        minor = [row[:k] for row in cartan[:k]]
        if linalg.det(minor) <= 0:
            return False
    return True


def positive_roots(g: CoxeterGraph, cap: int = DEFAULT_ROOT_CAP) -> set[RootVector]:
    """Closure of the simple roots under simple reflections, kept nonnegative.

    Raises NonFiniteTypeError when the closure exceeds ``cap``.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    roots: set[RootVector] = {g.simple_root(i) for i in range(g.n_vertices)}
    frontier = list(roots)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(g.n_vertices):
                w = reflect_simple(g, i, v)
                if all(c >= 0 for c in w) and w not in roots:
                    roots.add(w)
                    nxt.append(w)
                    if len(roots) > cap:
                        raise NonFiniteTypeError(
                            f"positive-root closure exceeded cap {cap}; graph is not finite type or cap too small"
                        )
        frontier = nxt
    return roots


CentralChargeValues = tuple[complex, ...]


def charge_of_root(Z: CentralChargeValues, v: RootVector) -> complex:
    if len(Z) != len(v):
        raise DimensionError("charge length does not match root vector")
    return sum((v[k] * Z[k] for k in range(len(v))), 0j)


def contragredient_apply(g: CoxeterGraph, w: WeylElement, Z: CentralChargeValues) -> CentralChargeValues:
    """(w . Z)(v) = Z(w^{-1} v), returned by its values on the simple roots."""
    if len(Z) != g.n_vertices:
        raise DimensionError("charge length does not match graph")
    inv = w.inverse()
    return tuple(charge_of_root(Z, inv.apply(g.simple_root(i))) for i in range(g.n_vertices))
