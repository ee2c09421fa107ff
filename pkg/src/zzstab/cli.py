"""Batch command-line front end with JSON input/output.

Exit codes: 0 success, 1 domain errors (degenerate charges, non-finite
type, genericity failures, ...), 2 usage errors (bad flags, missing or
malformed files).  All randomness flows from --seed, so identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .braid import BraidWord, apply_word, identity_word
from .chambers import ChargePath, emit_chart, lift_path, locate, monodromy
from .complexes import ComplexKG, generator_complex, hom_dim_K, homotopy_equivalent, minimal_model
from .coxeter import CoxeterGraph, positive_roots
from .errors import ZZStabError
from .k0 import class_of, induced_matrix, laurent_matrix_to_json, specialize, specialize_matrix
from .sampling import random_complex
from .stability import (
    HeartDescriptor,
    StabilityData,
    charge_from_json,
    deformation_ok,
    heart_indecomposables,
    hn_filtration,
    is_semistable,
    is_stability_function,
    phase,
    slicing_distance_lb,
)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _graph(spec: str) -> CoxeterGraph:
    if spec.lstrip().startswith("{"):
        return CoxeterGraph.from_json(spec)
    try:
        return CoxeterGraph.preset(spec)
    except ValueError:
        return CoxeterGraph.from_json(_load_json(spec))


def _word(text: str) -> BraidWord:
    return BraidWord.parse(text) if text.strip() else identity_word()


def _stability(g: CoxeterGraph, path: str) -> StabilityData:
    return StabilityData.from_json(g, _load_json(path))


def _round_floats(obj, digits: int = 15):
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, list):
        return [_round_floats(x, digits) for x in obj]
    if isinstance(obj, dict):
        return {k: _round_floats(v, digits) for k, v in obj.items()}
    return obj


def _emit(payload) -> None:
    print(json.dumps(_round_floats(payload), sort_keys=True))


def _catalogue(g, sd, args):
    return heart_indecomposables(g, sd.heart, word_len=args.word_len, shift_window=args.shift_window)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="preset name (A2..A8, D4..D6, E6..E8), inline JSON, or file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)


def _add_catalogue_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--word-len", type=int, default=1, dest="word_len")
    p.add_argument("--shift-window", type=int, default=2, dest="shift_window")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zzstab", description=__doc__)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("reduce", help="minimal model of a complex")
    _add_common(p)
    p.add_argument("--complex", required=True)

    p = sub.add_parser("act", help="apply a braid word to a complex")
    _add_common(p)
    p.add_argument("--word", required=True)
    p.add_argument("--complex", required=True)

    p = sub.add_parser("homdim", help="hom dimension between two complexes")
    _add_common(p)
    p.add_argument("--complex", required=True)
    p.add_argument("--complex2", required=True)

    p = sub.add_parser("k0", help="Grothendieck class and its q=-1 specialization")
    _add_common(p)
    p.add_argument("--complex", required=True)

    p = sub.add_parser("burau", help="induced Laurent matrix of a braid word")
    _add_common(p)
    p.add_argument("--word", required=True)

    p = sub.add_parser("roots", help="positive roots")
    _add_common(p)
    p.add_argument("--cap", type=int, default=10000)

    p = sub.add_parser("check-braid", help="verify braid relations on generators and random complexes")
    _add_common(p)
    p.add_argument("--count", type=int, default=3, help="random complexes per generator pair")
    p.add_argument("--max-word", type=int, default=1, dest="max_word")

    p = sub.add_parser("stab-check", help="is the charge a stability function on the heart?")
    _add_common(p)
    p.add_argument("--stability", required=True)

    p = sub.add_parser("phases", help="phase of a heart member")
    _add_common(p)
    p.add_argument("--stability", required=True)
    p.add_argument("--complex", required=True)

    p = sub.add_parser("hn", help="Harder-Narasimhan filtration")
    _add_common(p)
    _add_catalogue_opts(p)
    p.add_argument("--stability", required=True)
    p.add_argument("--complex", required=True)

    p = sub.add_parser("sstable", help="semistable objects of the catalogue")
    _add_common(p)
    _add_catalogue_opts(p)
    p.add_argument("--stability", required=True)

    p = sub.add_parser("distance", help="slicing distance lower bound over a test set")
    _add_common(p)
    _add_catalogue_opts(p)
    p.add_argument("--stability", required=True)
    p.add_argument("--stability2", required=True)
    p.add_argument("--tests", required=True, help='JSON file {"complexes": [...]}')

    p = sub.add_parser("deform-check", help="Bridgeland deformation condition")
    _add_common(p)
    _add_catalogue_opts(p)
    p.add_argument("--stability", required=True)
    p.add_argument("--charge", required=True, help="JSON file [[re,im],...] for the deformed charge")
    p.add_argument("--eps", type=float, required=True)

    p = sub.add_parser("locate", help="chamber classification of a charge")
    _add_common(p)
    p.add_argument("--charge", required=True)

    p = sub.add_parser("lift", help="lift a charge path to a braid word")
    _add_common(p)
    p.add_argument("--path", required=True)
    p.add_argument("--start-word", default="", dest="start_word")

    p = sub.add_parser("monodromy", help="braid word of a closed loop")
    _add_common(p)
    p.add_argument("--path", required=True)
    p.add_argument("--quotient", action="store_true")

    p = sub.add_parser("chart", help="SVG chart of semistable rays")
    _add_common(p)
    _add_catalogue_opts(p)
    p.add_argument("--stability", required=True)
    p.add_argument("--out", required=True)

    return ap


def _run(args) -> int:
    g = _graph(args.graph)
    verb = args.verb

    if verb == "reduce":
        C = ComplexKG.from_json(g, _load_json(args.complex))
        _emit(minimal_model(C).to_json())
    elif verb == "act":
        C = ComplexKG.from_json(g, _load_json(args.complex))
        _emit(apply_word(g, _word(args.word), C).to_json())
    elif verb == "homdim":
        X = ComplexKG.from_json(g, _load_json(args.complex))
        Y = ComplexKG.from_json(g, _load_json(args.complex2))
        _emit({"dim": hom_dim_K(X, Y)})
    elif verb == "k0":
        C = ComplexKG.from_json(g, _load_json(args.complex))
        cls = class_of(C)
        _emit({"class": cls.to_json(), "specialized": list(specialize(cls))})
    elif verb == "burau":
        mat = induced_matrix(g, _word(args.word))
        _emit({"matrix": laurent_matrix_to_json(mat), "specialized": specialize_matrix(mat)})
    elif verb == "roots":
        roots = sorted(positive_roots(g, cap=args.cap))
        _emit({"count": len(roots), "roots": [list(r) for r in roots]})
    elif verb == "check-braid":
        _emit(_check_braid(g, args))
    elif verb == "stab-check":
        sd = _stability(g, args.stability)
        _emit({"stability_function": is_stability_function(sd, im_tol=args.tol)})
    elif verb == "phases":
        sd = _stability(g, args.stability)
        C = ComplexKG.from_json(g, _load_json(args.complex))
        _emit({"phase": phase(sd, C, im_tol=args.tol)})
    elif verb == "hn":
        sd = _stability(g, args.stability)
        C = ComplexKG.from_json(g, _load_json(args.complex))
        cat = _catalogue(g, sd, args)
        hn = hn_filtration(sd, C, cat, seed=args.seed, im_tol=args.tol)
        _emit({"pieces": hn.to_json(), "catalogue_complete": cat.complete})
    elif verb == "sstable":
        sd = _stability(g, args.stability)
        cat = _catalogue(g, sd, args)
        labels = [
            lab for lab, E in zip(cat.labels, cat.objects)
            if is_semistable(sd, E, cat, seed=args.seed, im_tol=args.tol)
        ]
        _emit({"semistable": labels, "catalogue_complete": cat.complete})
    elif verb == "distance":
        sd1 = _stability(g, args.stability)
        sd2 = _stability(g, args.stability2)
        tests = [ComplexKG.from_json(g, c) for c in _load_json(args.tests)["complexes"]]
        value = slicing_distance_lb(sd1, sd2, tests, word_len=args.word_len, seed=args.seed)
        _emit({"lower_bound": value})
    elif verb == "deform-check":
        sd = _stability(g, args.stability)
        W = charge_from_json(_load_json(args.charge))
        cat = _catalogue(g, sd, args)
        _emit({"ok": deformation_ok(sd, W, args.eps, cat, seed=args.seed)})
    elif verb == "locate":
        Z = charge_from_json(_load_json(args.charge))
        _emit(locate(g, Z, tol=args.tol).to_json())
    elif verb == "lift":
        path = ChargePath.from_json(_load_json(args.path))
        start = HeartDescriptor.build(g, _word(args.start_word))
        word, final = lift_path(g, path, start, tol=args.tol)
        _emit({"word": str(word), "final_heart_word": str(final.word)})
    elif verb == "monodromy":
        path = ChargePath.from_json(_load_json(args.path))
        word, weyl = monodromy(g, path, quotient=args.quotient, tol=args.tol)
        _emit({"word": str(word), "weyl_image": weyl})
    elif verb == "chart":
        sd = _stability(g, args.stability)
        cat = _catalogue(g, sd, args)
        svg = emit_chart(sd, cat, args.out, seed=args.seed)
        _emit({"out": args.out, "rays": svg.count("<line") - 2})
    else:  # pragma: no cover - argparse guards this
        return 2
    return 0


def _check_braid(g: CoxeterGraph, args) -> dict:
    rng = random.Random(args.seed)
    test_objects = [generator_complex(g, i) for i in range(g.n_vertices)]
    test_objects += [random_complex(g, rng, max_word=args.max_word) for _ in range(args.count)]
    pairs = []
    ok = True
    for s in range(g.n_vertices):
        for t in range(s + 1, g.n_vertices):
            edge = g.adjacent(s, t)
            word_a = BraidWord(((s, 1), (t, 1), (s, 1)) if edge else ((s, 1), (t, 1)))
            word_b = BraidWord(((t, 1), (s, 1), (t, 1)) if edge else ((t, 1), (s, 1)))
            good = all(
                homotopy_equivalent(apply_word(g, word_a, C), apply_word(g, word_b, C), seed=args.seed)
                for C in test_objects
            )
            ok = ok and good
            pairs.append({"s": s + 1, "t": t + 1, "edge": edge, "ok": good})
    inverses = all(
        homotopy_equivalent(apply_word(g, BraidWord(((s, 1), (s, -1))), C), minimal_model(C), seed=args.seed)
        for s in range(g.n_vertices)
        for C in test_objects
    )
    return {"pairs": pairs, "inverses_ok": inverses, "ok": ok and inverses}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _run(args)
    except ZZStabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
