"""Grothendieck classes over Laurent polynomials in q and their q = -1
specialization to the root lattice."""

from __future__ import annotations

from dataclasses import dataclass

from .braid import BraidWord, apply_word
from .complexes import ComplexKG, generator_complex
from .coxeter import CoxeterGraph, RootVector
from .errors import DimensionError


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial stored as exponent -> coefficient."""

    coeffs: tuple[tuple[int, int], ...]

    @staticmethod
    def from_dict(d: dict[int, int]) -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((e, c) for e, c in d.items() if c)))

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly(())

    @staticmethod
    def monomial(exp: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly.from_dict({exp: coeff})

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.coeffs))

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        d: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def eval_minus_one(self) -> int:
        return sum(c if e % 2 == 0 else -c for e, c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in reversed(self.coeffs):
            q = "1" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(q)
            elif c == -1:
                parts.append(f"-{q}")
            else:
                parts.append(f"{c}{q}")
        return "+".join(parts).replace("+-", "-")

    def to_json(self) -> dict:
        return {str(e): c for e, c in self.coeffs}

    @staticmethod
    def from_json(data: dict) -> "LaurentPoly":
        return LaurentPoly.from_dict({int(e): int(c) for e, c in data.items()})


@dataclass(frozen=True)
class K0Class:
    """Class vector in the [P_i] basis with Laurent coefficients."""

    components: tuple[LaurentPoly, ...]

    def __add__(self, other: "K0Class") -> "K0Class":
        if len(self.components) != len(other.components):
            raise DimensionError("class vectors of different lengths")
        return K0Class(tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "K0Class":
        return K0Class(tuple(-a for a in self.components))

    def to_json(self) -> list:
        return [c.to_json() for c in self.components]

    @staticmethod
    def from_json(data) -> "K0Class":
        return K0Class(tuple(LaurentPoly.from_json(c) for c in data))


def class_of(C: ComplexKG) -> K0Class:
    """Euler class: sum over degrees j of (-1)^j q^m [P_i] per summand."""
    n = C.graph.n_vertices
    acc: list[dict[int, int]] = [{} for _ in range(n)]
    for j, obj in C.terms.items():
        sign = -1 if j % 2 else 1
        for i, m in obj.summands:
            acc[i][m] = acc[i].get(m, 0) + sign
    return K0Class(tuple(LaurentPoly.from_dict(d) for d in acc))


def specialize(c: K0Class) -> RootVector:
    """Evaluate q at -1, landing in the root lattice."""
    return tuple(p.eval_minus_one() for p in c.components)


def class_vector(C: ComplexKG) -> RootVector:
    return specialize(class_of(C))


def induced_matrix(g: CoxeterGraph, w: BraidWord) -> list[list[LaurentPoly]]:
    """n x n Laurent matrix of the word's action on K_0, column i the class
    of the word applied to P_i.  Computed through the categorical functor so
    the K_0 layer audits the complexes layer."""
    w.validate(g)
    n = g.n_vertices
    cols = [class_of(apply_word(g, w, generator_complex(g, i))) for i in range(n)]
    return [[cols[j].components[i] for j in range(n)] for i in range(n)]


def specialize_matrix(mat: list[list[LaurentPoly]]) -> list[list[int]]:
    return [[p.eval_minus_one() for p in row] for row in mat]


def laurent_matrix_to_json(mat: list[list[LaurentPoly]]) -> list:
    return [[p.to_json() for p in row] for row in mat]
