"""Stability data on braid-twisted linear hearts: phases, semistability,
Harder-Narasimhan filtrations, slicing distances and deformation bounds.

All heart computations are performed by conjugation: transport objects to
the identity (linear) heart with the inverse heart word, push the charge
forward along the induced root-lattice matrix, and work there.  One
implementation of membership, subobjects and filtration then serves every
heart in the braid orbit.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .braid import BraidWord, apply_word, identity_word
from .complexes import (
    ChainMap,
    ComplexKG,
    chain_map_space,
    cone,
    direct_sum,
    generator_complex,
    is_linear,
    linear_weight_filtration,
    minimal_model,
    normalize_linear_shift,
    translate,
)
from .coxeter import CoxeterGraph, RootVector, charge_of_root, is_finite_type
from .errors import (
    DegenerateChargeError,
    DimensionError,
    MembershipError,
    NonFiniteTypeError,
    StabilityError,
)
from .k0 import class_vector, induced_matrix, specialize_matrix

IM_TOL = 1e-9
DEGENERATE_TOL = 1e-12

CentralCharge = tuple[complex, ...]


def charge_from_json(data) -> CentralCharge:
    return tuple(complex(float(re), float(im)) for re, im in data)


def charge_to_json(Z: CentralCharge) -> list:
    return [[z.real, z.imag] for z in Z]


@dataclass(frozen=True)
class HeartDescriptor:
    """A braid image of the linear heart, with the classes of its simples."""

    graph: CoxeterGraph
    word: BraidWord
    simple_classes: tuple[RootVector, ...]

    @staticmethod
    def build(g: CoxeterGraph, word: BraidWord) -> "HeartDescriptor":
        word.validate(g)
        classes = tuple(
            class_vector(apply_word(g, word, generator_complex(g, i))) for i in range(g.n_vertices)
        )
        return HeartDescriptor(g, word, classes)

    @staticmethod
    def identity(g: CoxeterGraph) -> "HeartDescriptor":
        return HeartDescriptor.build(g, identity_word())

    def validate(self) -> None:
        fresh = HeartDescriptor.build(self.graph, self.word)
        if fresh.simple_classes != self.simple_classes:
            raise StabilityError("stored simple classes disagree with the heart word")


@dataclass(frozen=True)
class StabilityData:
    """A heart plus a central charge (values on the simple roots)."""

    heart: HeartDescriptor
    charge: CentralCharge

    def __post_init__(self):
        if len(self.charge) != self.heart.graph.n_vertices:
            raise DimensionError("charge length does not match graph")

    @property
    def graph(self) -> CoxeterGraph:
        return self.heart.graph

    def charge_of(self, v: RootVector) -> complex:
        return charge_of_root(self.charge, v)

    def charge_of_complex(self, C: ComplexKG) -> complex:
        return self.charge_of(class_vector(C))

    def simple_charges(self) -> CentralCharge:
        return tuple(self.charge_of(cls) for cls in self.heart.simple_classes)

    def identity_frame_charge(self) -> CentralCharge:
        """Charge pushed to the identity heart: its value on alpha_i is the
        charge of the heart's i-th simple."""
        return self.simple_charges()

    def to_json(self) -> dict:
        return {"word": str(self.heart.word), "charge": charge_to_json(self.charge)}

    @staticmethod
    def from_json(g: CoxeterGraph, data: dict) -> "StabilityData":
        word = BraidWord.parse(data.get("word", "")) if data.get("word") else identity_word()
        return StabilityData(HeartDescriptor.build(g, word), charge_from_json(data["charge"]))


def _check_not_degenerate(z: complex, what: str, tol: float = DEGENERATE_TOL) -> None:
    if abs(z) < tol:
        raise DegenerateChargeError(f"charge vanishes on {what}")


def is_stability_function(sd: StabilityData, im_tol: float = IM_TOL) -> bool:
    """Every simple charge must land in the open upper half plane or on the
    strictly negative reals; a vanishing simple charge is an error."""
    for i, z in enumerate(sd.simple_charges()):
        _check_not_degenerate(z, f"simple {i} of the heart")
        if z.imag > im_tol:
            continue
        if abs(z.imag) <= im_tol and z.real < -im_tol:
            continue
        return False
    return True


def _phase_in_cone(z: complex, im_tol: float = IM_TOL) -> float:
    """Normalized argument in (0, 1] for a charge inside H u R_{<0}."""
    _check_not_degenerate(z, "object")
    phi = math.atan2(z.imag, z.real) / math.pi
    if phi > 0:
        return phi
    if abs(z.imag) <= im_tol and z.real < 0:
        return 1.0
    raise StabilityError(f"charge {z} lies outside the heart cone")


def _conjugate_to_identity(sd: StabilityData, E: ComplexKG) -> ComplexKG:
    return apply_word(sd.graph, sd.heart.word.inverse(), E)


def _single_weight(E0: ComplexKG) -> int:
    layers = linear_weight_filtration(E0)
    if len(layers) != 1:
        raise MembershipError("object is not in a single shift of the heart")
    return layers[0][0]


def is_heart_member(sd: StabilityData, E: ComplexKG) -> bool:
    if E.is_zero:
        return True
    return is_linear(_conjugate_to_identity(sd, E))


def phase(sd: StabilityData, E: ComplexKG, im_tol: float = IM_TOL) -> float:
    """Phase of a heart member (or a shifted one: members of H[k] get
    phase in (k, k+1])."""
    if E.is_zero:
        raise DegenerateChargeError("the zero complex has no phase")
    E0 = _conjugate_to_identity(sd, E)
    k = _single_weight(E0)
    z = charge_of_root(sd.identity_frame_charge(), class_vector(E0))
    _check_not_degenerate(z, "object")
    flat = z * (1 if k % 2 == 0 else -1)
    return _phase_in_cone(flat, im_tol) + k


# ---------------------------------------------------------------------------
# catalogue of heart indecomposables


@dataclass
class Catalogue:
    """Braid-orbit catalogue of indecomposable heart members.

    ``identity_objects`` are normalized linear representatives; ``objects``
    are their images in the descriptor's heart.  ``complete`` records
    whether the enumeration is known exhaustive (established only for rank
    <= 2 graphs; larger graphs carry catalogue-complete-unknown status).
    """

    heart: HeartDescriptor
    identity_objects: list[ComplexKG]
    objects: list[ComplexKG]
    labels: list[str]
    complete: bool
    shift_window: int


def _words_up_to(g: CoxeterGraph, max_len: int):
    letters = [(s, e) for e in (1, -1) for s in range(g.n_vertices)]
    seen = set()
    frontier = [identity_word()]
    yield identity_word()
    seen.add(())
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for let in letters:
                cand = BraidWord(w.letters + (let,)).free_reduce()
                if cand.letters not in seen and len(cand) == len(w) + 1:
                    seen.add(cand.letters)
                    nxt.append(cand)
                    yield cand
        frontier = nxt


def heart_indecomposables(
    g: CoxeterGraph,
    heart: HeartDescriptor,
    word_len: int = 1,
    shift_window: int = 2,
) -> Catalogue:
    """Enumerate heart members reachable as braid-word images of generators.

    Objects are deduplicated up to linear shift and isomorphism; labels
    record the first word that produced each object.
    """
    if not is_finite_type(g):
        raise NonFiniteTypeError("catalogue enumeration requires a finite-type graph")
    reps: list[ComplexKG] = []
    labels: list[str] = []
    for word in _words_up_to(g, word_len):
        for i in range(g.n_vertices):
            X = apply_word(g, word, generator_complex(g, i))
            if X.is_zero or not is_linear(X):
                continue
            norm, _ = normalize_linear_shift(X)
            if any(_quick_iso(norm, prev) for prev in reps):
                continue
            reps.append(norm)
            labels.append(f"P{i + 1}" if not len(word) else f"{word}(P{i + 1})")
    complete = g.n_vertices == 1 or (g.n_vertices <= 2 and word_len >= 1)
    transported = [minimal_model(apply_word(g, heart.word, X)) for X in reps]
    return Catalogue(heart, reps, transported, labels, complete, shift_window)


def _quick_iso(A: ComplexKG, B: ComplexKG) -> bool:
    from .complexes import iso_minimal

    if set(A.terms) != set(B.terms):
        return False
    return iso_minimal(A, B)


# ---------------------------------------------------------------------------
# subobjects and semistability (identity-frame machinery)


def _placements(U: ComplexKG, E: ComplexKG) -> list[int]:
    """Linear shifts m for which U<m>[m] can map nontrivially into E."""
    ms = set()
    for a, objU in U.terms.items():
        for (_, s1) in objU.summands:
            for b, objE in E.terms.items():
                for (_, t1) in objE.summands:
                    m = a - b
                    if 0 <= (s1 + m) - t1 <= 2:
                        ms.add(m)
    return sorted(ms)


def _candidate_maps(U: ComplexKG, E: ComplexKG, seed: int, extra: int = 8) -> list[ChainMap]:
    sys, basis = chain_map_space(U, E)
    if not basis:
        return []
    vecs = [list(b) for b in basis]
    if len(basis) > 1:
        rng = random.Random(seed * 1000003 + len(basis) * 101 + U.total_summands() * 7 + E.total_summands())
        for _ in range(extra):
            coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in basis]
            vecs.append([sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(len(sys.vars))])
    return [sys.materialize(v) for v in vecs if any(v)]


def subobject_test(sd: StabilityData, U: ComplexKG, E: ComplexKG, f: ChainMap) -> bool:
    """U is a subobject of E along f iff the cone stays in the heart."""
    Q = minimal_model(cone(f))
    return is_heart_member(sd, Q)


def _flat_phase(zid: CentralCharge, E0: ComplexKG, im_tol: float = IM_TOL) -> float:
    z = charge_of_root(zid, class_vector(E0))
    return _phase_in_cone(z, im_tol)


def _max_phase_subobject(
    g: CoxeterGraph,
    zid: CentralCharge,
    A: ComplexKG,
    catalogue: Catalogue,
    seed: int,
    im_tol: float = IM_TOL,
):
    """Best catalogued proper-or-improper subobject of a linear heart member.

    Returns (phase, U_placed, f) or None.  Any destabilizing subobject
    contains an indecomposable semistable destabilizer, so ranging over
    catalogue indecomposables suffices.
    """
    best = None
    for U in catalogue.identity_objects:
        for m in _placements(U, A):
            Up = translate(U, m, m)
            maps = _candidate_maps(Up, A, seed)
            if not maps:
                continue
            phi = _flat_phase(zid, Up, im_tol)
            if best is not None and phi <= best[0] + im_tol:
                continue
            for f in maps:
                Q = minimal_model(cone(f))
                if is_linear(Q):
                    best = (phi, Up, f)
                    break
    return best


def _is_semistable_flat(
    g: CoxeterGraph,
    zid: CentralCharge,
    E0: ComplexKG,
    catalogue: Catalogue,
    seed: int,
    im_tol: float = IM_TOL,
) -> bool:
    phi_e = _flat_phase(zid, E0, im_tol)
    best = _max_phase_subobject(g, zid, E0, catalogue, seed, im_tol)
    return best is None or best[0] <= phi_e + im_tol


def is_semistable(
    sd: StabilityData,
    E: ComplexKG,
    catalogue: Catalogue,
    seed: int = 0,
    im_tol: float = IM_TOL,
) -> bool:
    """No heart subobject of strictly larger phase exists (catalogue-based)."""
    E0 = minimal_model(_conjugate_to_identity(sd, E))
    if not is_linear(E0):
        raise MembershipError("object is not a member of the heart")
    zid = sd.identity_frame_charge()
    _check_not_degenerate(charge_of_root(zid, class_vector(E0)), "object")
    return _is_semistable_flat(sd.graph, zid, E0, catalogue, seed, im_tol)


# ---------------------------------------------------------------------------
# Harder-Narasimhan filtrations


@dataclass(frozen=True)
class HNFiltration:
    """Ordered semistable pieces with strictly decreasing phases."""

    pieces: tuple[tuple[ComplexKG, float], ...]

    def __post_init__(self):
        phases = [p for _, p in self.pieces]
        for a, b in zip(phases, phases[1:]):
            if not a > b:
                raise StabilityError("HN phases must strictly decrease")

    def phases(self) -> list[float]:
        return [p for _, p in self.pieces]

    def to_json(self) -> list:
        return [{"complex": c.to_json(), "phase": p} for c, p in self.pieces]


def _hn_flat(
    g: CoxeterGraph,
    zid: CentralCharge,
    A: ComplexKG,
    catalogue: Catalogue,
    seed: int,
    im_tol: float = IM_TOL,
) -> list[tuple[ComplexKG, float]]:
    """Greedy maximal-phase extraction inside the identity heart."""
    out: list[tuple[ComplexKG, float]] = []
    cur = minimal_model(A)
    while not cur.is_zero:
        z = charge_of_root(zid, class_vector(cur))
        _check_not_degenerate(z, "an HN piece")
        phi_cur = _phase_in_cone(z, im_tol)
        best = _max_phase_subobject(g, zid, cur, catalogue, seed, im_tol)
        if best is None or best[0] <= phi_cur + im_tol:
            out.append((cur, phi_cur))
            break
        phi, U, f = best
        out.append((U, phi))
        cur = minimal_model(cone(f))
    # adjacent equal phases belong to one semistable piece
    merged: list[tuple[ComplexKG, float]] = []
    for obj, p in out:
        if merged and abs(merged[-1][1] - p) <= im_tol:
            merged[-1] = (minimal_model(direct_sum([merged[-1][0], obj])), merged[-1][1])
        else:
            merged.append((obj, p))
    return merged


def hn_filtration(
    sd: StabilityData,
    X: ComplexKG,
    catalogue: Catalogue,
    seed: int = 0,
    im_tol: float = IM_TOL,
) -> HNFiltration:
    """Heart filtration refined by per-piece HN filtrations, concatenated.

    Heart-piece phases live in disjoint intervals (k, k+1], so the
    concatenation is automatically strictly decreasing.
    """
    if X.is_zero:
        raise DegenerateChargeError("the zero complex has no HN filtration")
    g = sd.graph
    zid = sd.identity_frame_charge()
    X0 = _conjugate_to_identity(sd, X)
    pieces: list[tuple[ComplexKG, float]] = []
    for k, layer in linear_weight_filtration(X0):
        flat = translate(layer, -k, 0)
        for S, p in _hn_flat(g, zid, flat, catalogue, seed, im_tol):
            back = minimal_model(apply_word(g, sd.heart.word, translate(S, k, 0)))
            pieces.append((back, p + k))
    return HNFiltration(tuple(pieces))


def phi_bounds(
    sd: StabilityData,
    X: ComplexKG,
    catalogue: Catalogue,
    seed: int = 0,
) -> tuple[float, float]:
    hn = hn_filtration(sd, X, catalogue, seed=seed)
    return hn.pieces[0][1], hn.pieces[-1][1]


def slicing_distance_lb(
    sd1: StabilityData,
    sd2: StabilityData,
    test_objects: list[ComplexKG],
    catalogue1: Catalogue | None = None,
    catalogue2: Catalogue | None = None,
    word_len: int = 1,
    seed: int = 0,
) -> float:
    """max over the test set of the phi_+/phi_- discrepancies; a lower
    bound for the slicing distance."""
    if catalogue1 is None:
        catalogue1 = heart_indecomposables(sd1.graph, sd1.heart, word_len)
    if catalogue2 is None:
        catalogue2 = heart_indecomposables(sd2.graph, sd2.heart, word_len)
    worst = 0.0
    for E in test_objects:
        p1, m1 = phi_bounds(sd1, E, catalogue1, seed=seed)
        p2, m2 = phi_bounds(sd2, E, catalogue2, seed=seed)
        worst = max(worst, abs(p1 - p2), abs(m1 - m2))
    return worst


def deformation_ok(
    sd: StabilityData,
    W: CentralCharge,
    eps: float,
    catalogue: Catalogue,
    seed: int = 0,
) -> bool:
    """Bridgeland deformation condition |W(E) - Z(E)| < sin(eps pi)|Z(E)|
    over the semistable catalogue objects (heart-frame representatives
    suffice: linear shifts fix the specialized class)."""
    if not 0 < eps < 0.125:
        raise ValueError("eps must lie in (0, 1/8)")
    if len(W) != sd.graph.n_vertices:
        raise DimensionError("deformed charge length does not match graph")
    bound = math.sin(eps * math.pi)
    zid = sd.identity_frame_charge()
    for U, E in zip(catalogue.identity_objects, catalogue.objects):
        if not _is_semistable_flat(sd.graph, zid, U, catalogue, seed):
            continue
        v = class_vector(E)
        z = sd.charge_of(v)
        w = charge_of_root(W, v)
        if abs(w - z) >= bound * abs(z):
            return False
    return True


def act_on_stability(g: CoxeterGraph, beta: BraidWord, sd: StabilityData) -> StabilityData:
    """The braid action on stability data: heart beta(H), charge Z o beta^{-1}."""
    new_word = beta * sd.heart.word
    mat = specialize_matrix(induced_matrix(g, beta))
    inv = linalg.invert([[Fraction(x) for x in row] for row in mat])
    n = g.n_vertices
    new_charge = tuple(
        sum((complex(inv[k][i]) * sd.charge[k] for k in range(n)), 0j) for i in range(n)
    )
    return StabilityData(HeartDescriptor.build(g, new_word), new_charge)
