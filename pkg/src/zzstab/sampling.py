"""Seeded generators of random complexes and random blow-ups.

Random complexes are built as braid-word images of shifted generators
(direct sums thereof), so d^2 = 0 holds by construction.  Blow-ups add
contractible two-term summands and conjugate by invertible degreewise
endomorphisms, producing messy homotopy-equivalent presentations for the
minimal-model tests.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .braid import BraidWord, apply_word
from .complexes import ComplexKG, direct_sum, generator_complex
from .coxeter import CoxeterGraph
from .walks import AlgebraElement, GradedObject, MatrixMorphism, Walk, compose_matrices, hom_basis


def random_word(g: CoxeterGraph, rng: random.Random, max_len: int) -> BraidWord:
    length = rng.randint(0, max_len)
    letters = tuple((rng.randrange(g.n_vertices), rng.choice((1, -1))) for _ in range(length))
    return BraidWord(letters)


def random_complex(g: CoxeterGraph, rng: random.Random, max_word: int = 2, max_parts: int = 2) -> ComplexKG:
    parts = []
    for _ in range(rng.randint(1, max_parts)):
        i = rng.randrange(g.n_vertices)
        C = generator_complex(g, i, shift=rng.randint(-1, 1), degree=rng.randint(-1, 1))
        parts.append(apply_word(g, random_word(g, rng, max_word), C))
    return direct_sum(parts)


def _contractible(g: CoxeterGraph, i: int, m: int, degree: int) -> ComplexKG:
    obj = GradedObject(((i, m),))
    d = MatrixMorphism.build(g, obj, obj, {(0, 0): AlgebraElement(Fraction(1), Walk.const(i))})
    return ComplexKG.build(g, {degree: obj, degree + 1: obj}, {degree: d})


def _random_invertible_endo(g: CoxeterGraph, obj: GradedObject, rng: random.Random) -> tuple[MatrixMorphism, MatrixMorphism]:
    """A random invertible endomorphism of obj together with its inverse,
    assembled from diagonal scalings and single off-diagonal shears."""
    fwd = MatrixMorphism.identity_of(g, obj)
    bwd = MatrixMorphism.identity_of(g, obj)
    size = len(obj)
    for _ in range(rng.randint(1, 1 + size)):
        kind = rng.random()
        if kind < 0.4:
            k = rng.randrange(size)
            s = Fraction(rng.choice((1, -1)) * rng.randint(1, 3), rng.randint(1, 2))
            i, _ = obj.summands[k]
            step = {(r, r): AlgebraElement(Fraction(1), Walk.const(obj.summands[r][0])) for r in range(size)}
            inv_step = dict(step)
            step[(k, k)] = AlgebraElement(s, Walk.const(i))
            inv_step[(k, k)] = AlgebraElement(1 / s, Walk.const(i))
        else:
            r, c = rng.randrange(size), rng.randrange(size)
            if r == c:
                continue
            i1, m1 = obj.summands[c]
            i2, m2 = obj.summands[r]
            w = hom_basis(g, i1, m1, i2, m2)
            if w is None:
                continue
            lam = Fraction(rng.choice((1, -1)) * rng.randint(1, 3), rng.randint(1, 2))
            step = {(k, k): AlgebraElement(Fraction(1), Walk.const(obj.summands[k][0])) for k in range(size)}
            inv_step = dict(step)
            step[(r, c)] = AlgebraElement(lam, w)
            inv_step[(r, c)] = AlgebraElement(-lam, w)
        fwd = compose_matrices(g, MatrixMorphism.build(g, obj, obj, step), fwd)
        bwd = compose_matrices(g, bwd, MatrixMorphism.build(g, obj, obj, inv_step))
    return fwd, bwd


def blow_up(C: ComplexKG, rng: random.Random) -> ComplexKG:
    """A homotopy-equivalent mess: add contractible summands, then change basis."""
    g = C.graph
    parts = [C]
    for _ in range(rng.randint(1, 3)):
        i = rng.randrange(g.n_vertices)
        parts.append(_contractible(g, i, rng.randint(-2, 2), rng.randint(C.lo - 1, C.hi)))
    fat = direct_sum(parts)
    endos = {j: _random_invertible_endo(g, obj, rng) for j, obj in fat.terms.items()}
    diffs = {}
    for j, d in fat.diffs.items():
        fwd_next, _ = endos[j + 1]
        _, bwd_here = endos[j]
        diffs[j] = compose_matrices(g, fwd_next, compose_matrices(g, d, bwd_here))
    return ComplexKG.build(g, dict(fat.terms), diffs)
