"""Walls and chambers in charge space, wall-crossing path lifting,
braid-word monodromy of loops, and static chart emission.

A type II wall of a positive root is the locus where its charge is real;
the hyperplane inside it is where the charge vanishes.  Generic paths
cross one wall per segment; each crossing of a current-heart simple wall
multiplies the heart word on the right by the matching braid letter
(sigma_i when the simple's charge leaves through the negative reals,
sigma_i^{-1} through the positive reals).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .braid import BraidWord
from .coxeter import (
    CoxeterGraph,
    RootVector,
    WeylElement,
    bilinear_form,
    charge_of_root,
    contragredient_apply,
    positive_roots,
)
from .errors import GenericityError, NotALoopError, RefinementError, StabilityError, WallError
from .k0 import induced_matrix, specialize_matrix
from .stability import (
    Catalogue,
    CentralCharge,
    HeartDescriptor,
    StabilityData,
    charge_from_json,
    charge_to_json,
    is_semistable,
)

WALL_TOL = 1e-9
BISECT_TOL = 1e-10
ENDPOINT_TOL = 1e-8


@dataclass(frozen=True)
class ChargePath:
    """Piecewise-linear path of central charges."""

    samples: tuple[CentralCharge, ...]

    def __post_init__(self):
        for a, b in zip(self.samples, self.samples[1:]):
            if a == b:
                raise ValueError("consecutive path samples must differ")

    def segments(self) -> int:
        return len(self.samples) - 1

    def reversed_path(self) -> "ChargePath":
        return ChargePath(tuple(reversed(self.samples)))

    def refined(self) -> "ChargePath":
        """Insert midpoints into every segment."""
        out: list[CentralCharge] = []
        for a, b in zip(self.samples, self.samples[1:]):
            mid = tuple((x + y) / 2 for x, y in zip(a, b))
            out.extend([a, mid])
        out.append(self.samples[-1])
        return ChargePath(tuple(out))

    def to_json(self) -> dict:
        return {"samples": [charge_to_json(s) for s in self.samples]}

    @staticmethod
    def from_json(data: dict) -> "ChargePath":
        return ChargePath(tuple(charge_from_json(s) for s in data["samples"]))


@dataclass(frozen=True)
class WallEvent:
    segment: int
    root: RootVector
    t: float
    leaves_upper: bool
    re_sign: int


@dataclass(frozen=True)
class RegionReport:
    region: str  # open_chamber | fundamental_domain | outside | hyperplane
    walls: tuple[RootVector, ...]
    hyperplanes: tuple[RootVector, ...]

    def to_json(self) -> dict:
        return {
            "region": self.region,
            "walls": [list(r) for r in self.walls],
            "hyperplanes": [list(r) for r in self.hyperplanes],
        }


def locate(
    g: CoxeterGraph,
    Z: CentralCharge,
    roots: set[RootVector] | None = None,
    tol: float = WALL_TOL,
) -> RegionReport:
    """Classify a charge against the chamber decomposition."""
    if roots is None:
        roots = positive_roots(g)
    ordered = sorted(roots)
    hyper = tuple(a for a in ordered if abs(charge_of_root(Z, a)) <= tol)
    walls = tuple(
        a for a in ordered
        if abs(charge_of_root(Z, a).imag) <= tol and abs(charge_of_root(Z, a)) > tol
    )
    if hyper:
        return RegionReport("hyperplane", walls, hyper)
    simples = [Z[i] for i in range(g.n_vertices)]
    if all(z.imag > tol for z in simples):
        return RegionReport("open_chamber", walls, ())
    if all(z.imag > tol or (abs(z.imag) <= tol and z.real < -tol) for z in simples):
        return RegionReport("fundamental_domain", walls, ())
    return RegionReport("outside", walls, ())


def chamber_identify(
    g: CoxeterGraph,
    Z: CentralCharge,
    roots: set[RootVector] | None = None,
    tol: float = WALL_TOL,
) -> WeylElement:
    """The Weyl element moving Z into the open fundamental chamber.

    Greedy: reflect at any simple whose charge has negative imaginary
    part; the count of positive roots with negative imaginary charge
    strictly drops, so this stops within |Phi+| steps.
    """
    if roots is None:
        roots = positive_roots(g)
    for a in sorted(roots):
        if abs(charge_of_root(Z, a).imag) <= tol:
            raise WallError(f"charge lies on the wall of root {a}")
    word: list[int] = []
    cur = Z
    for _ in range(2 * len(roots) + 2):
        neg = next((i for i in range(g.n_vertices) if cur[i].imag < 0), None)
        if neg is None:
            return WeylElement.from_word(g, tuple(word))
        step = WeylElement.from_word(g, (neg,))
        cur = contragredient_apply(g, step, cur)
        word.insert(0, neg)
    raise WallError("chamber identification did not terminate; charge too close to a wall")


def detect_crossings(
    g: CoxeterGraph,
    path: ChargePath,
    tracked,
    tol: float = WALL_TOL,
    bisect_tol: float = BISECT_TOL,
) -> list[WallEvent]:
    """Ordered wall-crossing events of a generic piecewise-linear path."""
    roots = sorted(tracked)
    for idx, Z in enumerate(path.samples):
        for a in roots:
            z = charge_of_root(Z, a)
            if abs(z) <= tol:
                raise GenericityError(f"sample {idx} lies on the hyperplane of root {a}")
            if abs(z.imag) <= tol:
                raise GenericityError(f"sample {idx} lies on the wall of root {a}; refine the path")
    events: list[WallEvent] = []
    for seg in range(path.segments()):
        Za, Zb = path.samples[seg], path.samples[seg + 1]
        crossers = []
        for a in roots:
            ia = charge_of_root(Za, a).imag
            ib = charge_of_root(Zb, a).imag
            if (ia > 0) != (ib > 0):
                crossers.append((a, ia, ib))
        if len(crossers) > 1:
            names = [c[0] for c in crossers]
            raise GenericityError(f"segment {seg} crosses several walls {names}; refine the path")
        if not crossers:
            continue
        a, ia, ib = crossers[0]
        lo, hi = 0.0, 1.0
        f_lo = ia
        while hi - lo > bisect_tol:
            mid = (lo + hi) / 2
            f_mid = (1 - mid) * ia + mid * ib
            if (f_mid > 0) == (f_lo > 0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        t = (lo + hi) / 2
        za = charge_of_root(Za, a)
        zb = charge_of_root(Zb, a)
        re = (1 - t) * za.real + t * zb.real
        if abs(re) <= tol:
            raise GenericityError(f"crossing of root {a} in segment {seg} passes too close to its hyperplane")
        events.append(WallEvent(seg, a, t, leaves_upper=ia > 0, re_sign=1 if re > 0 else -1))
    return events


def _valid_on_heart(g: CoxeterGraph, simples: list[RootVector], Z: CentralCharge, tol: float) -> bool:
    for cls in simples:
        z = charge_of_root(Z, cls)
        if z.imag > tol:
            continue
        if abs(z.imag) <= tol and z.real < -tol:
            continue
        return False
    return True


def lift_path(
    g: CoxeterGraph,
    path: ChargePath,
    start_heart: HeartDescriptor | None = None,
    tol: float = WALL_TOL,
) -> tuple[BraidWord, HeartDescriptor]:
    """Lift a charge path to the stability cover.

    Walks the events in order; each one must hit a simple-charge wall of
    the current heart.  The matching braid letter is appended (heart word
    multiplied on the right, since the crossing happens in the heart's
    transported frame), and the simple classes are updated by the
    corresponding reflection.  Returns the accumulated word (first event
    leftmost) and the final heart.
    """
    if start_heart is None:
        start_heart = HeartDescriptor.identity(g)
    roots = positive_roots(g)
    events = detect_crossings(g, path, roots, tol=tol)
    simples = list(start_heart.simple_classes)
    std = [[bilinear_form(g, g.simple_root(i), g.simple_root(j)) for j in range(g.n_vertices)]
           for i in range(g.n_vertices)]
    acc: list[tuple[int, int]] = []
    ev_idx = 0
    for seg in range(path.segments() + 1):
        sample = path.samples[min(seg, len(path.samples) - 1)]
        if not _valid_on_heart(g, simples, sample, tol):
            raise StabilityError(
                f"sample {seg} is not a stability function on the current heart; refine the path"
            )
        while ev_idx < len(events) and events[ev_idx].segment == seg:
            ev = events[ev_idx]
            ev_idx += 1
            hit = None
            for i, cls in enumerate(simples):
                if cls == ev.root:
                    hit = (i, 1)
                    break
                if cls == tuple(-x for x in ev.root):
                    hit = (i, -1)
                    break
            if hit is None:
                raise RefinementError(
                    f"crossing of root {ev.root} is not a simple-charge wall of the current heart; "
                    "subdivide the path"
                )
            i, sign = hit
            simple_leaves_upper = ev.leaves_upper if sign > 0 else not ev.leaves_upper
            if not simple_leaves_upper:
                raise StabilityError(
                    f"simple {i} entered the upper half plane at segment {ev.segment}; invalid prior state"
                )
            re_simple = sign * ev.re_sign
            letter = (i, 1) if re_simple < 0 else (i, -1)
            acc.append(letter)
            # right multiplication by sigma_i^{+-1}: simples reflect in the heart frame
            old_i = simples[i]
            simples = [
                tuple(s[k] - std[i][j] * old_i[k] for k in range(g.n_vertices))
                for j, s in enumerate(simples)
            ]
    word = BraidWord(tuple(acc))
    final = HeartDescriptor.build(g, BraidWord(start_heart.word.letters + word.letters))
    if final.simple_classes != tuple(simples):
        raise StabilityError("reflection bookkeeping disagrees with the categorical heart classes")
    if not _valid_on_heart(g, list(final.simple_classes), path.samples[-1], tol):
        raise StabilityError("final charge is not a stability function on the final heart")
    return word, final


def monodromy(
    g: CoxeterGraph,
    loop: ChargePath,
    quotient: bool = False,
    tol: float = WALL_TOL,
    endpoint_tol: float = ENDPOINT_TOL,
) -> tuple[BraidWord, list[list[int]]]:
    """Braid word of a closed loop, with its Weyl image at q = -1.

    Plain loops must close exactly and lift to pure braid words; quotient
    loops must close up to the contragredient action of the word's Weyl
    image.
    """
    word, _ = lift_path(g, loop, HeartDescriptor.identity(g), tol=tol)
    mat = specialize_matrix(induced_matrix(g, word))
    n = g.n_vertices
    start, end = loop.samples[0], loop.samples[-1]
    if quotient:
        inv = linalg.invert([[Fraction(x) for x in row] for row in mat])
        for i in range(n):
            expect = sum(complex(inv[k][i]) * start[k] for k in range(n))
            if abs(expect - end[i]) > endpoint_tol:
                raise NotALoopError("endpoint is not the Weyl image of the start point")
    else:
        for i in range(n):
            if abs(start[i] - end[i]) > endpoint_tol:
                raise NotALoopError("path endpoint differs from its start point")
        if any(mat[i][j] != (1 if i == j else 0) for i in range(n) for j in range(n)):
            raise NotALoopError("closed loop lifted to a non-pure braid word")
    return word, mat


# ---------------------------------------------------------------------------
# chart emission


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_chart(sd: StabilityData, catalogue: Catalogue, seed: int = 0) -> str:
    """Deterministic standalone SVG with one labeled ray per semistable
    catalogue object."""
    rays = []
    for label, E in zip(catalogue.labels, catalogue.objects):
        if not is_semistable(sd, E, catalogue, seed=seed):
            continue
        z = sd.charge_of_complex(E)
        rays.append((math.atan2(z.imag, z.real), label, z))
    rays.sort(key=lambda r: (r[0], r[1]))
    size = 560
    cx = cy = size / 2
    radius = 220.0
    top = max((abs(z) for _, _, z in rays), default=1.0)
    scale = radius / top
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        f'<line x1="20" y1="{_fmt(cy)}" x2="{size - 20}" y2="{_fmt(cy)}" stroke="#999999" stroke-width="1"/>',
        f'<line x1="{_fmt(cx)}" y1="20" x2="{_fmt(cx)}" y2="{size - 20}" stroke="#999999" stroke-width="1"/>',
    ]
    for _, label, z in rays:
        x = cx + z.real * scale
        y = cy - z.imag * scale
        lines.append(
            f'<line x1="{_fmt(cx)}" y1="{_fmt(cy)}" x2="{_fmt(x)}" y2="{_fmt(y)}" '
            f'stroke="#1f6feb" stroke-width="2"/>'
        )
        lx = cx + z.real * scale * 1.12
        ly = cy - z.imag * scale * 1.12
        lines.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-family="monospace" font-size="12" '
            f'fill="#1f6feb" text-anchor="middle">Z({label})</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_chart(sd: StabilityData, catalogue: Catalogue, out_path: str, seed: int = 0) -> str:
    svg = render_chart(sd, catalogue, seed=seed)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return svg
