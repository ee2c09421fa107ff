"""Bounded complexes over the walk category, their minimal models, and
hom-space computations in the homotopy category.

Differentials are validated exactly (d^2 = 0 with rational scalars) in
every constructor, so a ComplexKG can always be trusted.  Minimal models
are produced by repeated Gaussian elimination in a fixed scan order,
which makes them reproducible; equality of homotopy classes is decided
by ``iso_minimal`` on minimal models.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .coxeter import CoxeterGraph
from .errors import ContractViolation, NormalizationError
from .walks import (
    ZERO,
    AlgebraElement,
    GradedObject,
    MatrixMorphism,
    Walk,
    add_matrices,
    compose_matrices,
    compose_walks,
    hom_basis,
    semisimplify,
)

CONST = "const"


@dataclass
class ComplexKG:
    """A bounded complex: terms per cohomological degree, d_j: terms[j] -> terms[j+1]."""

    graph: CoxeterGraph
    terms: dict[int, GradedObject]
    diffs: dict[int, MatrixMorphism]

    @staticmethod
    def build(graph: CoxeterGraph, terms: dict[int, GradedObject], diffs: dict[int, MatrixMorphism]) -> "ComplexKG":
        terms = {j: obj for j, obj in terms.items() if not obj.is_zero}
        clean: dict[int, MatrixMorphism] = {}
        for j, mat in diffs.items():
            if mat.is_zero:
                continue
            if j not in terms or (j + 1) not in terms:
                raise ContractViolation(f"differential at degree {j} without matching terms")
            if mat.source != terms[j] or mat.target != terms[j + 1]:
                raise ContractViolation(f"differential at degree {j} has mismatched source/target")
            clean[j] = mat
        c = ComplexKG(graph, terms, clean)
        c._check_d_squared()
        return c

    def _check_d_squared(self) -> None:
        for j, d in self.diffs.items():
            nxt = self.diffs.get(j + 1)
            if nxt is not None:
                comp = compose_matrices(self.graph, nxt, d)
                if not comp.is_zero:
                    raise ContractViolation(f"d^2 != 0 at degree {j}")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lo(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def hi(self) -> int:
        return max(self.terms) if self.terms else 0

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def term(self, j: int) -> GradedObject:
        return self.terms.get(j, GradedObject(()))

    def diff(self, j: int) -> MatrixMorphism:
        d = self.diffs.get(j)
        if d is None:
            return MatrixMorphism.zero(self.term(j), self.term(j + 1))
        return d

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ComplexKG)
            and self.graph == other.graph
            and self.terms == other.terms
            and self.diffs == other.diffs
        )

    def total_summands(self) -> int:
        return sum(len(t) for t in self.terms.values())

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "terms": {str(j): obj.to_json() for j, obj in sorted(self.terms.items())},
            "diffs": {str(j): mat.to_json() for j, mat in sorted(self.diffs.items())},
        }

    @staticmethod
    def from_json(graph: CoxeterGraph, data: dict) -> "ComplexKG":
        terms = {int(j): GradedObject.from_json(obj) for j, obj in data.get("terms", {}).items()}
        diffs = {}
        for j, ents in data.get("diffs", {}).items():
            j = int(j)
            entries = {(int(r), int(c)): AlgebraElement.from_json(el) for r, c, el in ents}
            diffs[j] = MatrixMorphism.build(graph, terms[j], terms[j + 1], entries)
        return ComplexKG.build(graph, terms, diffs)


def zero_complex(g: CoxeterGraph) -> ComplexKG:
    return ComplexKG.build(g, {}, {})


def generator_complex(g: CoxeterGraph, i: int, shift: int = 0, degree: int = 0) -> ComplexKG:
    """P_i<shift> concentrated in a single cohomological degree."""
    g.check_vertex(i)
    return ComplexKG.build(g, {degree: GradedObject(((i, shift),))}, {})


def direct_sum(parts: list[ComplexKG]) -> ComplexKG:
    if not parts:
        raise ValueError("direct_sum of nothing")
    g = parts[0].graph
    terms: dict[int, GradedObject] = {}
    offsets: list[dict[int, int]] = []
    for p in parts:
        off = {}
        for j, obj in p.terms.items():
            cur = terms.get(j, GradedObject(()))
            off[j] = len(cur)
            terms[j] = cur.concat(obj)
        offsets.append(off)
    diffs: dict[int, dict[tuple[int, int], AlgebraElement]] = {}
    for p, off in zip(parts, offsets):
        for j, mat in p.diffs.items():
            dst = diffs.setdefault(j, {})
            ro, co = off[j + 1], off[j]
            for r, c, el in mat.entries:
                dst[(r + ro, c + co)] = el
    built = {j: MatrixMorphism.build(g, terms[j], terms[j + 1], ents) for j, ents in diffs.items()}
    return ComplexKG.build(g, terms, built)


def translate(C: ComplexKG, k: int, m: int) -> ComplexKG:
    """Apply [k]<m>: new term at j is the old term at j+k with internal
    shifts raised by m; differentials pick up (-1)^k."""
    g = C.graph
    terms = {j - k: obj.shift(m) for j, obj in C.terms.items()}
    sign = Fraction(-1 if k % 2 else 1)
    diffs = {}
    for j, mat in C.diffs.items():
        entries = {(r, c): el.scale(sign) for r, c, el in mat.entries}
        diffs[j - k] = MatrixMorphism.build(g, terms[j - k], terms[j - k + 1], entries)
    return ComplexKG.build(g, terms, diffs)


@dataclass
class ChainMap:
    """Degreewise morphism with commuting squares: d'_j f_j = f_{j+1} d_j."""

    source: ComplexKG
    target: ComplexKG
    components: dict[int, MatrixMorphism]

    @staticmethod
    def build(source: ComplexKG, target: ComplexKG, components: dict[int, MatrixMorphism]) -> "ChainMap":
        comps = {}
        for j, mat in components.items():
            if mat.source != source.term(j) or mat.target != target.term(j):
                raise ContractViolation(f"chain map component at degree {j} has wrong shape")
            if not mat.is_zero:
                comps[j] = mat
        f = ChainMap(source, target, comps)
        f._check_squares()
        return f

    def component(self, j: int) -> MatrixMorphism:
        got = self.components.get(j)
        if got is None:
            return MatrixMorphism.zero(self.source.term(j), self.target.term(j))
        return got

    def _check_squares(self) -> None:
        g = self.source.graph
        degs = set(self.source.terms) | set(self.target.terms)
        for j in degs:
            left = compose_matrices(g, self.target.diff(j), self.component(j))
            right = compose_matrices(g, self.component(j + 1), self.source.diff(j))
            if left.entries != right.entries:
                raise ContractViolation(f"chain map square at degree {j} does not commute")

    @property
    def is_zero(self) -> bool:
        return not self.components


def identity_chain_map(C: ComplexKG) -> ChainMap:
    comps = {j: MatrixMorphism.identity_of(C.graph, obj) for j, obj in C.terms.items()}
    return ChainMap.build(C, C, comps)


@dataclass
class Homotopy:
    """Degree -1 components h_j: X^j -> Y^{j-1}; no commutativity required."""

    source: ComplexKG
    target: ComplexKG
    components: dict[int, MatrixMorphism]

    @staticmethod
    def build(source: ComplexKG, target: ComplexKG, components: dict[int, MatrixMorphism]) -> "Homotopy":
        for j, mat in components.items():
            if mat.source != source.term(j) or mat.target != target.term(j - 1):
                raise ContractViolation(f"homotopy component at degree {j} has wrong shape")
        return Homotopy(source, target, {j: m for j, m in components.items() if not m.is_zero})

    def component(self, j: int) -> MatrixMorphism:
        got = self.components.get(j)
        if got is None:
            return MatrixMorphism.zero(self.source.term(j), self.target.term(j - 1))
        return got

    def boundary(self) -> ChainMap:
        """The null-homotopic chain map d'h + hd."""
        g = self.source.graph
        comps = {}
        for j in set(self.source.terms) | set(self.target.terms):
            left = compose_matrices(g, self.target.diff(j - 1), self.component(j))
            right = compose_matrices(g, self.component(j + 1), self.source.diff(j))
            total = add_matrices(g, left, right)
            if not total.is_zero:
                comps[j] = total
        return ChainMap.build(self.source, self.target, comps)


def cone(f: ChainMap) -> ComplexKG:
    """Mapping cone: degree-j term C^{j+1} (+) D^j, source differentials negated."""
    C, D = f.source, f.target
    g = C.graph
    degs = set()
    for j in C.terms:
        degs.add(j - 1)
    degs.update(D.terms)
    terms = {j: C.term(j + 1).concat(D.term(j)) for j in degs}
    terms = {j: obj for j, obj in terms.items() if not obj.is_zero}
    diffs: dict[int, dict[tuple[int, int], AlgebraElement]] = {}
    minus_one = Fraction(-1)
    for j in terms:
        if (j + 1) not in terms:
            continue
        ents: dict[tuple[int, int], AlgebraElement] = {}
        for r, c, el in C.diff(j + 1).entries:
            ents[(r, c)] = el.scale(minus_one)
        ro = len(C.term(j + 2))
        co = len(C.term(j + 1))
        for r, c, el in f.component(j + 1).entries:
            ents[(r + ro, c)] = el
        for r, c, el in D.diff(j).entries:
            ents[(r + ro, c + co)] = el
        if ents:
            diffs[j] = MatrixMorphism.build(g, terms[j], terms[j + 1], ents)
    return ComplexKG.build(g, terms, diffs)


def cone_inclusion(f: ChainMap) -> tuple[ComplexKG, ChainMap]:
    """The cone together with the canonical inclusion of the target."""
    cn = cone(f)
    C, D = f.source, f.target
    g = C.graph
    one = Fraction(1)
    comps = {}
    for j, obj in D.terms.items():
        off = len(C.term(j + 1))
        ents = {(k + off, k): AlgebraElement(one, Walk.const(i)) for k, (i, _) in enumerate(obj.summands)}
        comps[j] = MatrixMorphism.build(g, obj, cn.term(j), ents)
    return cn, ChainMap.build(D, cn, comps)


def gaussian_eliminate_once(C: ComplexKG, deg: int, row: int, col: int) -> ComplexKG:
    """Strike one invertible differential entry.

    The entry (row, col) of d_deg must be a nonzero scalar multiple of a
    constant walk.  The named summands disappear, the complementary block
    picks up the correction -gamma phi^{-1} delta, and the neighbouring
    differentials lose the corresponding row/column.
    """
    g = C.graph
    d = C.diff(deg)
    pivot = d.entry_dict().get((row, col))
    if pivot is None or pivot.walk is None or pivot.walk.kind != CONST:
        raise ContractViolation(f"entry ({row},{col}) of d_{deg} is not invertible")
    src, tgt = C.term(deg), C.term(deg + 1)
    new_src = src.drop(col)
    new_tgt = tgt.drop(row)

    def cidx(c: int) -> int:
        return c if c < col else c - 1

    def ridx(r: int) -> int:
        return r if r < row else r - 1

    inv = 1 / pivot.coeff
    delta = {c: el for r, c, el in d.entries if r == row and c != col}
    gamma = {r: el for r, c, el in d.entries if c == col and r != row}
    ents: dict[tuple[int, int], AlgebraElement] = {}
    for r, c, el in d.entries:
        if r == row or c == col:
            continue
        ents[(ridx(r), cidx(c))] = el
    for r, gel in gamma.items():
        for c, del_ in delta.items():
            corr = compose_walks(g, gel, del_.scale(inv)).scale(Fraction(-1))
            if not corr.is_zero:
                key = (ridx(r), cidx(c))
                ents[key] = ents.get(key, ZERO).add(corr)
    ents = {k: v for k, v in ents.items() if not v.is_zero}

    terms = dict(C.terms)
    terms[deg] = new_src
    terms[deg + 1] = new_tgt
    diffs: dict[int, MatrixMorphism] = {}
    for j, mat in C.diffs.items():
        if j == deg:
            continue
        if j == deg - 1:
            kept = {(cidx(r), c): el for r, c, el in mat.entries if r != col}
            diffs[j] = MatrixMorphism.build(g, mat.source, new_src, kept)
        elif j == deg + 1:
            kept = {(r, ridx(c)): el for r, c, el in mat.entries if c != row}
            diffs[j] = MatrixMorphism.build(g, new_tgt, mat.target, kept)
        else:
            diffs[j] = mat
    if ents:
        diffs[deg] = MatrixMorphism.build(g, new_src, new_tgt, ents)
    return ComplexKG.build(g, terms, diffs)


def _first_invertible(C: ComplexKG) -> tuple[int, int, int] | None:
    for j in sorted(C.diffs):
        for r, c, el in sorted(C.diffs[j].entries):
            if el.walk is not None and el.walk.kind == CONST:
                return j, r, c
    return None


def minimal_model(C: ComplexKG) -> ComplexKG:
    """Eliminate until no differential entry is invertible.

    Scan order is fixed (lowest degree, then row-major), so the result is
    reproducible; by the uniqueness of minimal complexes any other order
    gives an isomorphic complex.
    """
    cur = C
    while True:
        hit = _first_invertible(cur)
        if hit is None:
            return cur
        cur = gaussian_eliminate_once(cur, *hit)


def is_minimal(C: ComplexKG) -> bool:
    return _first_invertible(C) is None


# ---------------------------------------------------------------------------
# chain-map spaces by exact linear algebra


class _HomSystem:
    """Linear model of the chain maps X -> Y over the rationals.

    One variable per degree-compatible hom slot; one equation per entry of
    d' f - f d.  Null-homotopic maps are the image of the homotopy
    variables under h |-> d'h + hd.
    """

    def __init__(self, X: ComplexKG, Y: ComplexKG):
        self.X, self.Y, self.g = X, Y, X.graph
        self.vars: list[tuple[int, int, int]] = []
        degs = sorted(set(X.terms) & set(Y.terms))
        for j in degs:
            for r, (iy, ny) in enumerate(Y.term(j).summands):
                for c, (ix, mx) in enumerate(X.term(j).summands):
                    if hom_basis(self.g, ix, mx, iy, ny) is not None:
                        self.vars.append((j, r, c))
        self.index = {v: k for k, v in enumerate(self.vars)}
        self._constraints: list[list[Fraction]] | None = None

    def _slot_walk(self, j: int, r: int, c: int) -> Walk:
        ix, mx = self.X.term(j).summands[c]
        iy, ny = self.Y.term(j).summands[r]
        return hom_basis(self.g, ix, mx, iy, ny)

    def constraint_matrix(self) -> list[list[Fraction]]:
        if self._constraints is not None:
            return self._constraints
        rows: dict[tuple[int, int, int], dict[int, Fraction]] = {}
        one = Fraction(1)
        for k, (j, r, c) in enumerate(self.vars):
            w = AlgebraElement(one, self._slot_walk(j, r, c))
            for rp, rr, el in self.Y.diff(j).entries:
                if rr != r:
                    continue
                comp = compose_walks(self.g, el, w)
                if not comp.is_zero:
                    rows.setdefault((j, rp, c), {})[k] = rows.get((j, rp, c), {}).get(k, Fraction(0)) + comp.coeff
            for cc, c0, el in self.X.diff(j - 1).entries:
                if cc != c:
                    continue
                comp = compose_walks(self.g, w, el)
                if not comp.is_zero:
                    key = (j - 1, r, c0)
                    rows.setdefault(key, {})[k] = rows.get(key, {}).get(k, Fraction(0)) - comp.coeff
        self._constraints = [
            [row.get(k, Fraction(0)) for k in range(len(self.vars))] for row in rows.values()
        ]
        return self._constraints

    def chain_map_basis(self) -> list[list[Fraction]]:
        return linalg.nullspace(self.constraint_matrix(), len(self.vars))

    def homotopy_image_rank(self) -> int:
        hvars: list[tuple[int, int, int]] = []
        degs = sorted(set(self.X.terms))
        for j in degs:
            for r, (iy, ny) in enumerate(self.Y.term(j - 1).summands):
                for c, (ix, mx) in enumerate(self.X.term(j).summands):
                    if hom_basis(self.g, ix, mx, iy, ny) is not None:
                        hvars.append((j, r, c))
        cols: list[list[Fraction]] = []
        one = Fraction(1)
        for (j, r, c) in hvars:
            ix, mx = self.X.term(j).summands[c]
            iy, ny = self.Y.term(j - 1).summands[r]
            w = AlgebraElement(one, hom_basis(self.g, ix, mx, iy, ny))
            col = [Fraction(0)] * len(self.vars)
            for rp, rr, el in self.Y.diff(j - 1).entries:
                if rr != r:
                    continue
                comp = compose_walks(self.g, el, w)
                if not comp.is_zero:
                    col[self.index[(j, rp, c)]] += comp.coeff
            for cc, c0, el in self.X.diff(j - 1).entries:
                if cc != c:
                    continue
                comp = compose_walks(self.g, w, el)
                if not comp.is_zero:
                    col[self.index[(j - 1, r, c0)]] += comp.coeff
            cols.append(col)
        if not cols or not self.vars:
            return 0
        matrix = [[cols[k][i] for k in range(len(cols))] for i in range(len(self.vars))]
        return linalg.rank(matrix)

    def materialize(self, vec: list[Fraction]) -> ChainMap:
        one = Fraction(1)
        per_degree: dict[int, dict[tuple[int, int], AlgebraElement]] = {}
        for k, (j, r, c) in enumerate(self.vars):
            if vec[k]:
                per_degree.setdefault(j, {})[(r, c)] = AlgebraElement(one, self._slot_walk(j, r, c)).scale(vec[k])
        comps = {
            j: MatrixMorphism.build(self.g, self.X.term(j), self.Y.term(j), ents)
            for j, ents in per_degree.items()
        }
        return ChainMap.build(self.X, self.Y, comps)


def chain_map_space(X: ComplexKG, Y: ComplexKG) -> tuple[_HomSystem, list[list[Fraction]]]:
    sys = _HomSystem(X, Y)
    return sys, sys.chain_map_basis()


def hom_dim_K(X: ComplexKG, Y: ComplexKG) -> int:
    """dim of chain maps X -> Y modulo the null-homotopic ones."""
    sys = _HomSystem(X, Y)
    n_chain = len(sys.vars) - linalg.rank(sys.constraint_matrix())
    return n_chain - sys.homotopy_image_rank()


def _invertible_per_degree(f: ChainMap) -> bool:
    for j, obj in f.source.terms.items():
        size = len(obj)
        scal = semisimplify(f.component(j))
        m = [[scal.get((r, c), Fraction(0)) for c in range(size)] for r in range(size)]
        if linalg.rank(m) != size:
            return False
    return True


def iso_minimal(M: ComplexKG, M2: ComplexKG, seed: int = 0, attempts: int = 20) -> bool:
    """Isomorphism of minimal complexes (no homotopies involved).

    Checks summand multisets per degree, then searches the rational
    solution space of the chain-map equations for an element whose
    constant-walk blocks are invertible in every degree.  An isomorphism
    exists iff that open condition is met somewhere in the space, so a
    handful of random points decides it with overwhelming probability.
    """
    if not is_minimal(M) or not is_minimal(M2):
        raise ContractViolation("iso_minimal requires minimal complexes")
    if M.is_zero and M2.is_zero:
        return True
    if set(M.terms) != set(M2.terms):
        return False
    for j in M.terms:
        if not M.term(j).same_multiset(M2.term(j)):
            return False
    sys, basis = chain_map_space(M, M2)
    if not basis:
        return False
    combos = [[sum(b[k] for b in basis) for k in range(len(sys.vars))]]
    rng = random.Random(seed)
    for _ in range(attempts):
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in basis]
        combos.append([sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(len(sys.vars))])
    for vec in combos:
        if not any(vec):
            continue
        f = sys.materialize(vec)
        if _invertible_per_degree(f):
            return True
    return False


def homotopy_equivalent(A: ComplexKG, B: ComplexKG, seed: int = 0) -> bool:
    return iso_minimal(minimal_model(A), minimal_model(B), seed=seed)


# ---------------------------------------------------------------------------
# linearity and the weight filtration


def summand_weight(degree: int, shift: int) -> int:
    return -shift - degree


def is_linear(C: ComplexKG) -> bool:
    M = minimal_model(C)
    return all(m == -j for j, obj in M.terms.items() for (_, m) in obj.summands)


def linear_weight_filtration(C: ComplexKG) -> list[tuple[int, ComplexKG]]:
    """Split the minimal model into weight-homogeneous layers.

    Each summand P_i<m> in degree j gets weight k = -m - j; differential
    entries preserve or raise the weight, so the layers, ordered by
    strictly decreasing k, are the heart filtration subquotients: layer k
    lies in the k-th shift of the linear heart.
    """
    M = minimal_model(C)
    if M.is_zero:
        return []
    keep: dict[int, dict[int, list[int]]] = {}
    weights = set()
    for j, obj in M.terms.items():
        for idx, (_, m) in enumerate(obj.summands):
            k = summand_weight(j, m)
            weights.add(k)
            keep.setdefault(k, {}).setdefault(j, []).append(idx)
    out = []
    for k in sorted(weights, reverse=True):
        sel = keep[k]
        terms = {j: GradedObject(tuple(M.term(j).summands[i] for i in idxs)) for j, idxs in sel.items()}
        diffs: dict[int, MatrixMorphism] = {}
        for j, mat in M.diffs.items():
            if j not in sel or (j + 1) not in sel:
                continue
            cpos = {old: new for new, old in enumerate(sel[j])}
            rpos = {old: new for new, old in enumerate(sel[j + 1])}
            ents = {
                (rpos[r], cpos[c]): el
                for r, c, el in mat.entries
                if r in rpos and c in cpos
            }
            if ents:
                diffs[j] = MatrixMorphism.build(M.graph, terms[j], terms[j + 1], ents)
        out.append((k, ComplexKG.build(M.graph, terms, diffs)))
    return out


def weight_subcomplex(M: ComplexKG, kmin: int) -> tuple[ComplexKG, ChainMap]:
    """Subcomplex spanned by summands of weight >= kmin, with its inclusion.

    Valid on minimal complexes, where differentials never lower weight.
    """
    if not is_minimal(M):
        raise ContractViolation("weight_subcomplex requires a minimal complex")
    sel: dict[int, list[int]] = {}
    for j, obj in M.terms.items():
        idxs = [i for i, (_, m) in enumerate(obj.summands) if summand_weight(j, m) >= kmin]
        if idxs:
            sel[j] = idxs
    terms = {j: GradedObject(tuple(M.term(j).summands[i] for i in idxs)) for j, idxs in sel.items()}
    diffs: dict[int, MatrixMorphism] = {}
    for j, mat in M.diffs.items():
        if j not in sel or (j + 1) not in sel:
            continue
        cpos = {old: new for new, old in enumerate(sel[j])}
        rpos = {old: new for new, old in enumerate(sel[j + 1])}
        ents = {}
        for r, c, el in mat.entries:
            if c in cpos:
                if r not in rpos:
                    raise ContractViolation("weight filtration violated by a differential entry")
                ents[(rpos[r], cpos[c])] = el
        if ents:
            diffs[j] = MatrixMorphism.build(M.graph, terms[j], terms[j + 1], ents)
    sub = ComplexKG.build(M.graph, terms, diffs)
    one = Fraction(1)
    comps = {}
    for j, idxs in sel.items():
        ents = {}
        for new, old in enumerate(idxs):
            i, _ = M.term(j).summands[old]
            ents[(old, new)] = AlgebraElement(one, Walk.const(i))
        comps[j] = MatrixMorphism.build(M.graph, sub.term(j), M.term(j), ents)
    return sub, ChainMap.build(sub, M, comps)


def normalize_linear_shift(C: ComplexKG) -> tuple[ComplexKG, int]:
    """Apply the linear shift <t>[t] placing the top nonzero degree at 0."""
    if C.is_zero:
        raise NormalizationError("cannot normalize the zero complex")
    t = C.hi
    return translate(C, t, t), t
