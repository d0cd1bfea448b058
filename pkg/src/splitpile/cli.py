"""Command-line front end.

Subcommands: enumerate, stats, poly, verify, render.  Exit codes:
0 success, 2 usage error, 3 domain precondition violated, 4 identity
mismatch, 10 conjecture counterexample.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import cycle_lemma as cl
from . import polyomino as po
from . import qtpoly as qt
from . import schroder as sc
from . import svg
from . import toppling as tp
from . import verify as vf
from .asm import (
    PreconditionError,
    SplitGraph,
    config_to_json,
    enumerate_sorted_recurrent,
    format_config,
    height,
    is_recurrent,
    level,
    parse_config,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_MISMATCH = 4
EXIT_CONJECTURE = 10


def _jobs(args) -> int:
    env = os.environ.get("SANDPILE_LAB_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise PreconditionError(f"SANDPILE_LAB_JOBS={env!r} is not an integer") from None
    if args.jobs is not None:
        return max(1, args.jobs)
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    graph = SplitGraph(args.n, args.d)
    fmt = args.format
    out = sys.stdout

    def emit(text_form: str, json_form) -> None:
        if fmt == "json":
            out.write(json.dumps(json_form, separators=(",", ":")) + "\n")
        else:
            out.write(text_form + "\n")

    if args.kind == "recurrent":
        if fmt == "csv":
            out.write("config,height,topple_cti,wtopple_cti\n")
            for c in enumerate_sorted_recurrent(graph):
                trace = tp.topple_cti(graph, c)
                sizes = " ".join(str(x) for x in trace.sizes())
                out.write(f'"{format_config(c)}",{height(c)},"{sizes}",{tp.wtopple(trace)}\n')
            return EXIT_OK
        for c in enumerate_sorted_recurrent(graph):
            emit(format_config(c), config_to_json(graph, c))
    elif args.kind == "words":
        for w in sc.enumerate_schroder(args.n, args.d):
            emit(w, {"word": w})
    elif args.kind == "polyominoes":
        for c in enumerate_sorted_recurrent(graph):
            p = po.from_config(graph, c)
            emit(f"{format_config(c)} upper={p.upper} lower={p.lower}", p.to_json())
    elif args.kind == "itc-sequences":
        for seq in tp.all_itc_sequences(args.n, args.d):
            text = f"[{list(seq.b)},{list(seq.a)}]".replace(" ", "")
            emit(text, {"b": list(seq.b), "a": list(seq.a)})
    elif args.kind == "quasistable":
        for c in cl.enumerate_quasistable_nonneg(graph):
            emit(format_config(c), config_to_json(graph, c))
    else:  # pragma: no cover - argparse restricts choices
        raise PreconditionError(f"unknown kind {args.kind}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------

def _word_stats(word: str) -> dict:
    if not sc.is_schroder(word):
        raise PreconditionError(f"{word!r} is not a Schroder word")
    n, d = word.count("U"), word.count("H")
    dyck = sc.collapse(word)
    dyck_value, dyck_peaks = sc.dyck_bounce(dyck)
    stats = {
        "word": word,
        "n": n,
        "d": d,
        "area": sc.area(word),
        "bounce": sc.schroder_bounce(word),
        "peaks": [list(p) for p in sc.schroder_peaks(word)],
        "collapse": dyck,
        "dyck_bounce": dyck_value,
        "dyck_peaks": [list(p) for p in dyck_peaks],
    }
    if n >= 1:
        stats["config_phi"] = format_config(sc.phi(word))
    return stats


def _config_stats(graph: SplitGraph, config) -> dict:
    if not is_recurrent(graph, config):
        raise PreconditionError(f"{format_config(config)} is not recurrent")
    cti = tp.topple_cti(graph, config)
    itc = tp.topple_itc(graph, config)
    word = sc.phi_inv(config)
    mirrored = sc.mirror(word)
    return {
        "config": format_config(config),
        "n": graph.n,
        "d": graph.d,
        "height": height(config),
        "level": level(graph, config),
        "topple_cti": list(cti.sizes()),
        "wtopple_cti": tp.wtopple(cti),
        "topple_itc": list(itc.sizes()),
        "wtopple_itc": tp.wtopple(itc),
        "word": word,
        "mirror_word": mirrored,
        "area": sc.area(mirrored),
        "bounce": sc.schroder_bounce(mirrored),
        "peaks": [list(p) for p in sc.schroder_peaks(mirrored)],
    }


def cmd_stats(args) -> int:
    if args.word is not None:
        payload = _word_stats(args.word)
    else:
        if args.config is None or args.n is None or args.d is None:
            raise PreconditionError("stats needs --word or a config with -n and -d")
        graph = SplitGraph(args.n, args.d)
        config = parse_config(args.config)
        if len(config.clique) != graph.n or len(config.independent) != graph.d:
            raise PreconditionError("configuration does not match -n/-d")
        payload = _config_stats(graph, config)
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# poly
# ---------------------------------------------------------------------------

_METHODS = {
    "cti": qt.f_cti,
    "itc": qt.f_itc,
    "schroder": qt.qt_schroder,
    "egge": qt.egge_sum,
    "itc-sum": qt.itc_sum,
}


def cmd_poly(args) -> int:
    n, d = args.n, args.d
    if args.method != "all":
        poly = _METHODS[args.method](n, d)
        _print_poly(poly, args.format)
        return EXIT_OK
    values = {name: fn(n, d) for name, fn in _METHODS.items()}
    reference = values["itc"]
    mismatched = {name: p for name, p in values.items() if p != reference}
    if mismatched:
        certificate = {
            "status": "mismatch",
            "n": n,
            "d": d,
            "differences": {
                name: (p - reference).to_json() for name, p in mismatched.items()
            },
        }
        sys.stdout.write(json.dumps(certificate, indent=2) + "\n")
        return EXIT_MISMATCH
    if args.format == "latex":
        sys.stdout.write(f"% {len(values)} methods agree\n")
        _print_poly(reference, "latex")
    else:
        sys.stdout.write(f"{len(values)} methods agree\n")
        _print_poly(reference, args.format)
    return EXIT_OK


def _print_poly(poly: qt.QtPolynomial, fmt: str) -> None:
    if fmt == "latex":
        sys.stdout.write(poly.to_latex() + "\n")
    else:
        sys.stdout.write(json.dumps(poly.to_json(), separators=(",", ":")) + "\n")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    reports = vf.run_suite(args.suite, args.max_n, args.max_d, jobs=_jobs(args))
    failed = [r for r in reports if not r.ok]
    for r in reports:
        obj = r.to_json()
        if not args.timings:
            obj.pop("seconds", None)  # keep output byte-deterministic
        sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")
    summary = f"{len(reports) - len(failed)}/{len(reports)} checks passed"
    sys.stderr.write(summary + "\n")
    if not failed:
        return EXIT_OK
    if any(r.check in vf.CONJECTURE_CHECKS for r in failed):
        return EXIT_CONJECTURE
    return EXIT_MISMATCH


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------

def cmd_render(args) -> int:
    overlays = tuple(x for x in (args.overlay or "").split(",") if x)
    if args.batch_dir is not None:
        if args.n is None or args.d is None:
            raise PreconditionError("--batch-dir needs -n and -d")
        graph = SplitGraph(args.n, args.d)
        directory = Path(args.batch_dir)
        directory.mkdir(parents=True, exist_ok=True)
        written = 0
        for idx, c in enumerate(enumerate_sorted_recurrent(graph), start=1):
            name = format_config(c).replace(",", "_").replace(";", "__")
            doc = svg.render_polyomino(po.from_config(graph, c), overlays=overlays)
            (directory / f"rec_{idx:03d}_{name}.svg").write_text(doc, encoding="utf-8")
            written += 1
        sys.stderr.write(f"wrote {written} files to {directory}\n")
        return EXIT_OK

    if args.word is not None:
        doc = svg.render_path(args.word, overlays=overlays or ("peaks", "bounce"))
    elif args.config is not None:
        if args.n is None or args.d is None:
            raise PreconditionError("rendering a configuration needs -n and -d")
        graph = SplitGraph(args.n, args.d)
        config = parse_config(args.config)
        doc = svg.render_polyomino(po.from_config(graph, config), overlays=overlays)
    else:
        raise PreconditionError("render needs --word, a config, or --batch-dir")
    if args.out:
        Path(args.out).write_text(doc, encoding="utf-8")
    else:
        sys.stdout.write(doc)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitpile",
        description="Sandpile combinatorics on complete split graphs.",
    )
    parser.add_argument("--jobs", type=int, default=None, help="worker count (env SANDPILE_LAB_JOBS overrides)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="stream combinatorial objects in canonical order")
    p.add_argument("kind", choices=["recurrent", "words", "polyominoes", "itc-sequences", "quasistable"])
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("stats", help="statistics of a configuration or word")
    p.add_argument("config", nargs="?", help='configuration "a1,..,an;b1,..,bd"')
    p.add_argument("--word", help="Schroder word over UHD")
    p.add_argument("-n", type=int)
    p.add_argument("-d", type=int)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("poly", help="q,t-polynomials, five ways")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--method", choices=[*_METHODS, "all"], default="all")
    p.add_argument("--format", choices=["json", "latex"], default="json")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=list(vf.SUITES))
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-d", type=int, default=3)
    p.add_argument("--timings", action="store_true", help="include per-check wall-clock seconds")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="SVG of a Schroder path or sawtooth polyomino")
    p.add_argument("config", nargs="?")
    p.add_argument("--word")
    p.add_argument("-n", type=int)
    p.add_argument("-d", type=int)
    p.add_argument("--overlay", help="comma list: peaks,bounce (word) or cti,itc (polyomino)")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--batch-dir", help="render every sorted recurrent configuration of S(n,d)")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    except BrokenPipeError:  # pragma: no cover - shell pipelines
        return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
