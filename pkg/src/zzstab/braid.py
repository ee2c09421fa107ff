"""Braid-generator endofunctors on complexes and braid words.

twist(s, -) cones off the evaluation from copies of P_s added above the
complex; untwist(s, -) cones the co-evaluation below and shifts by [-1].
Minimal models are taken after every step so iterated words stay small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import ChainMap, ComplexKG, cone, minimal_model, translate
from .coxeter import CoxeterGraph
from .walks import AlgebraElement, GradedObject, MatrixMorphism, Walk, compose_walks

Letter = tuple[int, int]  # (generator index, exponent +1/-1)


@dataclass(frozen=True)
class BraidWord:
    """Sequence of braid letters; the rightmost letter acts first."""

    letters: tuple[Letter, ...]

    def __post_init__(self):
        for s, e in self.letters:
            if e not in (1, -1):
                raise ValueError(f"exponent must be +-1, got {e}")

    def validate(self, g: CoxeterGraph) -> None:
        for s, _ in self.letters:
            g.check_vertex(s)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple((s, -e) for s, e in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)

    def free_reduce(self) -> "BraidWord":
        out: list[Letter] = []
        for let in self.letters:
            if out and out[-1][0] == let[0] and out[-1][1] == -let[1]:
                out.pop()
            else:
                out.append(let)
        return BraidWord(tuple(out))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(f"s{s + 1}" + ("'" if e < 0 else "") for s, e in self.letters)

    @staticmethod
    def parse(text: str) -> "BraidWord":
        """Parse tokens like ``s1 s2 s1'`` (generators are 1-indexed in text)."""
        letters = []
        for tok in text.split():
            if not tok.startswith("s"):
                raise ValueError(f"bad braid token {tok!r}")
            body = tok[1:]
            exp = 1
            if body.endswith("'"):
                exp = -1
                body = body[:-1]
            k = int(body)
            if k < 1:
                raise ValueError(f"generator index must be >= 1 in {tok!r}")
            letters.append((k - 1, exp))
        return BraidWord(tuple(letters))

    def to_json(self) -> list:
        return [[s + 1, e] for s, e in self.letters]

    @staticmethod
    def from_json(data) -> "BraidWord":
        return BraidWord(tuple((int(k) - 1, int(e)) for k, e in data))


def identity_word() -> BraidWord:
    return BraidWord(())


def _walks_from(g: CoxeterGraph, s: int, t: int, n: int) -> list[tuple[Walk, int]]:
    """Basis walks from s landing on the summand P_t<n>, with their source shifts."""
    out = []
    if t == s:
        out.append((Walk.const(s), n))
        out.append((Walk.loop(s), n + 2))
    elif g.adjacent(s, t):
        out.append((Walk.edge(s, t), n + 1))
    return out


def _walks_into(g: CoxeterGraph, t: int, n: int, s: int) -> list[tuple[Walk, int]]:
    """Basis walks from the summand P_t<n> into s, with their target shifts."""
    out = []
    if t == s:
        out.append((Walk.const(s), n))
        out.append((Walk.loop(s), n - 2))
    elif g.adjacent(t, s):
        out.append((Walk.edge(t, s), n - 1))
    return out


def twist(g: CoxeterGraph, s: int, C: ComplexKG) -> ComplexKG:
    """The braid generator sigma_s applied to a complex.

    A row of P_s<m> copies, one per basis walk into each summand of C^j,
    is attached above C; the horizontal maps between copies are read off
    by decomposing d composed with each basis walk (the hom spaces are
    one-dimensional, so the coefficient is immediate).  The twist is the
    minimal model of the cone of the evaluation.
    """
    g.check_vertex(s)
    if C.is_zero:
        return C
    # copies[j]: list of (summand index in C^j, walk, shift of the P_s copy)
    copies: dict[int, list[tuple[int, Walk, int]]] = {}
    for j, obj in C.terms.items():
        col = []
        for idx, (t, n) in enumerate(obj.summands):
            for w, m in _walks_from(g, s, t, n):
                col.append((idx, w, m))
        if col:
            copies[j] = col
    top_terms = {j: GradedObject(tuple((s, m) for _, _, m in col)) for j, col in copies.items()}
    one = Fraction(1)
    top_diffs: dict[int, MatrixMorphism] = {}
    vert: dict[int, MatrixMorphism] = {}
    for j, col in copies.items():
        vert[j] = MatrixMorphism.build(
            g, top_terms[j], C.term(j),
            {(idx, k): AlgebraElement(one, w) for k, (idx, w, _) in enumerate(col)},
        )
        nxt = copies.get(j + 1, [])
        if not nxt:
            continue
        pos = {(idx, w): k for k, (idx, w, _) in enumerate(nxt)}
        d_by_col: dict[int, list[tuple[int, AlgebraElement]]] = {}
        for r, c, el in C.diff(j).entries:
            d_by_col.setdefault(c, []).append((r, el))
        ents: dict[tuple[int, int], AlgebraElement] = {}
        for k, (idx, w, m) in enumerate(col):
            for r, el in d_by_col.get(idx, ()):
                comp = compose_walks(g, el, AlgebraElement(one, w))
                if comp.is_zero:
                    continue
                key = (pos[(r, comp.walk)], k)
                add = AlgebraElement(comp.coeff, Walk.const(s))
                prev = ents.get(key)
                ents[key] = add if prev is None else prev.add(add)
        ents = {key: v for key, v in ents.items() if not v.is_zero}
        if ents:
            top_diffs[j] = MatrixMorphism.build(g, top_terms[j], top_terms[j + 1], ents)
    top = ComplexKG.build(g, top_terms, top_diffs)
    f = ChainMap.build(top, C, {j: m for j, m in vert.items() if not m.is_zero})
    return minimal_model(cone(f))


def untwist(g: CoxeterGraph, s: int, C: ComplexKG) -> ComplexKG:
    """The inverse braid generator sigma_s^{-1}.

    Dual construction: the co-evaluation into a row of P_s<m> copies
    attached below, coned and shifted by [-1].  The shift makes
    untwist(s, twist(s, -)) the identity up to homotopy equivalence.
    """
    g.check_vertex(s)
    if C.is_zero:
        return C
    copies: dict[int, list[tuple[int, Walk, int]]] = {}
    for j, obj in C.terms.items():
        col = []
        for idx, (t, n) in enumerate(obj.summands):
            for w, m in _walks_into(g, t, n, s):
                col.append((idx, w, m))
        if col:
            copies[j] = col
    bot_terms = {j: GradedObject(tuple((s, m) for _, _, m in col)) for j, col in copies.items()}
    one = Fraction(1)
    bot_diffs: dict[int, MatrixMorphism] = {}
    vert: dict[int, MatrixMorphism] = {}
    for j, col in copies.items():
        vert[j] = MatrixMorphism.build(
            g, C.term(j), bot_terms[j],
            {(k, idx): AlgebraElement(one, w) for k, (idx, w, _) in enumerate(col)},
        )
        nxt = copies.get(j + 1, [])
        if not nxt:
            continue
        pos_here = {(idx, w): k for k, (idx, w, _) in enumerate(col)}
        ents: dict[tuple[int, int], AlgebraElement] = {}
        for k2, (idx2, w2, _) in enumerate(nxt):
            for r, c, el in C.diff(j).entries:
                if r != idx2:
                    continue
                comp = compose_walks(g, AlgebraElement(one, w2), el)
                if comp.is_zero:
                    continue
                key = (k2, pos_here[(c, comp.walk)])
                prev = ents.get(key)
                add = AlgebraElement(comp.coeff, Walk.const(s))
                ents[key] = add if prev is None else prev.add(add)
        ents = {key: v for key, v in ents.items() if not v.is_zero}
        if ents:
            bot_diffs[j] = MatrixMorphism.build(g, bot_terms[j], bot_terms[j + 1], ents)
    bot = ComplexKG.build(g, bot_terms, bot_diffs)
    f = ChainMap.build(C, bot, {j: m for j, m in vert.items() if not m.is_zero})
    return minimal_model(translate(cone(f), -1, 0))


def apply_letter(g: CoxeterGraph, letter: Letter, C: ComplexKG) -> ComplexKG:
    s, e = letter
    return twist(g, s, C) if e > 0 else untwist(g, s, C)


def apply_word(g: CoxeterGraph, word: BraidWord, C: ComplexKG) -> ComplexKG:
    """Apply a braid word, rightmost letter first, minimizing at each step."""
    word.validate(g)
    cur = minimal_model(C)
    for letter in reversed(word.letters):
        cur = apply_letter(g, letter, cur)
    return cur
