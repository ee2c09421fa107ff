"""The additive walk category: shifted generators and matrix morphisms.

Objects are formal sums of shifted generators P_i<m>.  Every hom space
between two generators is at most one-dimensional, spanned by a walk of
length <= 2 (constant e_i, an edge step i>j, or the closed loop X_i).
Scalars are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coxeter import CoxeterGraph
from .errors import CompositionError, ContractViolation, DimensionError

CONST = "const"
EDGE = "edge"
LOOP = "loop"


@dataclass(frozen=True)
class Walk:
    kind: str
    source: int
    target: int

    @property
    def degree(self) -> int:
        return {CONST: 0, EDGE: 1, LOOP: 2}[self.kind]

    def __str__(self) -> str:
        if self.kind == CONST:
            return f"e{self.source}"
        if self.kind == LOOP:
            return f"X{self.source}"
        return f"{self.source}>{self.target}"

    @staticmethod
    def const(i: int) -> "Walk":
        return Walk(CONST, i, i)

    @staticmethod
    def edge(i: int, j: int) -> "Walk":
        return Walk(EDGE, i, j)

    @staticmethod
    def loop(i: int) -> "Walk":
        return Walk(LOOP, i, i)

    @staticmethod
    def parse(text: str) -> "Walk":
        if text.startswith("e"):
            return Walk.const(int(text[1:]))
        if text.startswith("X"):
            return Walk.loop(int(text[1:]))
        if ">" in text:
            a, b = text.split(">")
            return Walk.edge(int(a), int(b))
        raise ValueError(f"cannot parse walk {text!r}")


@dataclass(frozen=True)
class AlgebraElement:
    """A scalar multiple of a single walk; ``walk is None`` encodes zero."""

    coeff: Fraction
    walk: Walk | None

    def __post_init__(self):
        if self.walk is None and self.coeff != 0:
            raise ValueError("zero element must have zero coefficient")
        if self.walk is not None and self.coeff == 0:
            raise ValueError("nonzero element must have nonzero coefficient")

    @property
    def is_zero(self) -> bool:
        return self.walk is None

    def scale(self, c: Fraction) -> "AlgebraElement":
        if c == 0 or self.is_zero:
            return ZERO
        return AlgebraElement(self.coeff * c, self.walk)

    def add(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.walk != other.walk:
            raise CompositionError(f"cannot add {self} and {other}: different walks in one hom slot")
        c = self.coeff + other.coeff
        return AlgebraElement(c, self.walk) if c else ZERO

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if self.coeff == 1:
            return str(self.walk)
        return f"{self.coeff}*{self.walk}"

    def to_json(self) -> dict:
        if self.is_zero:
            return {"num": 0, "den": 1, "walk": None}
        return {"num": self.coeff.numerator, "den": self.coeff.denominator, "walk": str(self.walk)}

    @staticmethod
    def from_json(data: dict) -> "AlgebraElement":
        if data.get("walk") is None or data["num"] == 0:
            return ZERO
        return AlgebraElement(Fraction(data["num"], data.get("den", 1)), Walk.parse(data["walk"]))


ZERO = AlgebraElement(Fraction(0), None)


def element(coeff, walk: Walk) -> AlgebraElement:
    c = Fraction(coeff)
    return AlgebraElement(c, walk) if c else ZERO


def hom_basis(g: CoxeterGraph, i: int, m: int, j: int, n: int) -> Walk | None:
    """Basis walk of hom(P_i<m>, P_j<n>), or None when the space vanishes."""
    g.check_vertex(i)
    g.check_vertex(j)
    d = m - n
    if i == j:
        if d == 0:
            return Walk.const(i)
        if d == 2:
            return Walk.loop(i)
        return None
    if d == 1 and g.adjacent(i, j):
        return Walk.edge(i, j)
    return None


def compose_walks(g: CoxeterGraph, outer: AlgebraElement, inner: AlgebraElement) -> AlgebraElement:
    """Compose outer after inner; inadmissible composites are zero."""
    if outer.is_zero or inner.is_zero:
        return ZERO
    wo, wi = outer.walk, inner.walk
    if wi.target != wo.source:
        raise CompositionError(f"cannot compose {wo} after {wi}: endpoint mismatch")
    coeff = outer.coeff * inner.coeff
    if wo.kind == CONST:
        return AlgebraElement(coeff, wi)
    if wi.kind == CONST:
        return AlgebraElement(coeff, wo)
    if wo.kind == EDGE and wi.kind == EDGE and wo.target == wi.source:
        # closed length-2 walk: lands in the loop class
        return AlgebraElement(coeff, Walk.loop(wi.source))
    return ZERO


@dataclass(frozen=True)
class GradedObject:
    """An ordered formal sum of shifted generators; () is the zero object."""

    summands: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    @property
    def is_zero(self) -> bool:
        return not self.summands

    def shift(self, m: int) -> "GradedObject":
        return GradedObject(tuple((i, s + m) for i, s in self.summands))

    def concat(self, other: "GradedObject") -> "GradedObject":
        return GradedObject(self.summands + other.summands)

    def drop(self, index: int) -> "GradedObject":
        return GradedObject(self.summands[:index] + self.summands[index + 1:])

    def same_multiset(self, other: "GradedObject") -> bool:
        return sorted(self.summands) == sorted(other.summands)

    def to_json(self) -> list:
        return [list(s) for s in self.summands]

    @staticmethod
    def from_json(data) -> "GradedObject":
        return GradedObject(tuple((int(i), int(m)) for i, m in data))


ZERO_OBJECT = GradedObject(())


def generator(i: int, m: int = 0) -> GradedObject:
    return GradedObject(((i, m),))


@dataclass(frozen=True)
class MatrixMorphism:
    """target x source matrix with one AlgebraElement per nonzero slot."""

    source: GradedObject
    target: GradedObject
    entries: tuple[tuple[int, int, AlgebraElement], ...]

    @staticmethod
    def build(g: CoxeterGraph, source: GradedObject, target: GradedObject, entries) -> "MatrixMorphism":
        norm = []
        for r, c, el in sorted(entries, key=lambda e: (e[0], e[1])) if not isinstance(entries, dict) else \
                sorted(((r, c, el) for (r, c), el in entries.items()), key=lambda e: (e[0], e[1])):
            if el.is_zero:
                continue
            if not (0 <= r < len(target) and 0 <= c < len(source)):
                raise DimensionError(f"entry ({r},{c}) out of range")
            i, m = source.summands[c]
            j, n = target.summands[r]
            slot = hom_basis(g, i, m, j, n)
            if slot is None or el.walk != slot:
                raise ContractViolation(
                    f"entry ({r},{c}) carries {el.walk}, slot P_{i}<{m}> -> P_{j}<{n}> allows {slot}"
                )
            norm.append((r, c, el))
        return MatrixMorphism(source, target, tuple(norm))

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def entry_dict(self) -> dict[tuple[int, int], AlgebraElement]:
        return {(r, c): el for r, c, el in self.entries}

    @staticmethod
    def zero(source: GradedObject, target: GradedObject) -> "MatrixMorphism":
        return MatrixMorphism(source, target, ())

    @staticmethod
    def identity_of(g: CoxeterGraph, obj: GradedObject) -> "MatrixMorphism":
        one = Fraction(1)
        return MatrixMorphism.build(
            g, obj, obj,
            {(k, k): AlgebraElement(one, Walk.const(i)) for k, (i, _) in enumerate(obj.summands)},
        )

    def to_json(self) -> list:
        return [[r, c, el.to_json()] for r, c, el in self.entries]


def compose_matrices(g: CoxeterGraph, outer: MatrixMorphism, inner: MatrixMorphism) -> MatrixMorphism:
    """Matrix product with entrywise walk composition."""
    if inner.target != outer.source:
        raise CompositionError("matrix shapes do not compose")
    acc: dict[tuple[int, int], AlgebraElement] = {}
    inner_by_col: dict[int, list[tuple[int, AlgebraElement]]] = {}
    for r, c, el in inner.entries:
        inner_by_col.setdefault(c, []).append((r, el))
    outer_by_src: dict[int, list[tuple[int, AlgebraElement]]] = {}
    for r, c, el in outer.entries:
        outer_by_src.setdefault(c, []).append((r, el))
    for c, col in inner_by_col.items():
        for k, el_in in col:
            for r, el_out in outer_by_src.get(k, ()):
                prod = compose_walks(g, el_out, el_in)
                if not prod.is_zero:
                    acc[(r, c)] = acc.get((r, c), ZERO).add(prod)
    return MatrixMorphism.build(g, inner.source, outer.target, {k: v for k, v in acc.items() if not v.is_zero})


def semisimplify(mat: MatrixMorphism) -> dict[tuple[int, int], Fraction]:
    """Project to the quotient killing edge and loop walks; keep e-entries only.

    The surviving scalar coefficients are what decides invertibility of a
    morphism between objects with equal summand multisets.
    """
    return {(r, c): el.coeff for r, c, el in mat.entries if el.walk is not None and el.walk.kind == CONST}


def add_matrices(g: CoxeterGraph, a: MatrixMorphism, b: MatrixMorphism) -> MatrixMorphism:
    if a.source != b.source or a.target != b.target:
        raise DimensionError("matrix shapes do not match for addition")
    acc = a.entry_dict()
    for r, c, el in b.entries:
        acc[(r, c)] = acc.get((r, c), ZERO).add(el)
    return MatrixMorphism.build(g, a.source, a.target, {k: v for k, v in acc.items() if not v.is_zero})


def scale_matrix(g: CoxeterGraph, a: MatrixMorphism, scalar: Fraction) -> MatrixMorphism:
    if scalar == 0:
        return MatrixMorphism.zero(a.source, a.target)
    return MatrixMorphism.build(g, a.source, a.target, {(r, c): el.scale(scalar) for r, c, el in a.entries})
