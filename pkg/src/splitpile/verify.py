"""Named verification suites over parameter ranges, with counterexamples.

Each check covers one statement (a bijection, a theorem, a conjecture)
at one graph shape and yields a replayable report.  The CLI streams
these as JSON lines; the test suite calls them directly.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import cycle_lemma as cl
from . import polyomino as po
from . import qtpoly as qt
from . import schroder as sc
from . import toppling as tp
from .asm import (
    Config,
    SplitGraph,
    enumerate_sorted_recurrent,
    format_config,
    height,
    is_recurrent,
    is_stable,
    level,
    sorted_recurrent_count,
    stabilize,
)
from .partitions import nabla_symmetry_check, partitions_of

SUITES = ("bijections", "theorems", "cycle-lemma", "conjectures", "appendix", "all")


@dataclass
class VerificationReport:
    check: str
    params: dict
    status: str
    counterexample: dict | None = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "seconds": round(self.seconds, 3),
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _report(check: str, params: dict, counterexample: dict | None) -> VerificationReport:
    return VerificationReport(
        check, params, "pass" if counterexample is None else "fail", counterexample
    )


def _shapes(max_n: int, max_d: int) -> list[tuple[int, int]]:
    return [(n, d) for n in range(1, max_n + 1) for d in range(0, max_d + 1)]


# ---------------------------------------------------------------------------
# individual checks; each returns None or a counterexample payload
# ---------------------------------------------------------------------------

def check_phi_roundtrip(n: int, d: int) -> dict | None:
    graph = SplitGraph(n, d)
    for c in enumerate_sorted_recurrent(graph):
        w = sc.phi_inv(c)
        if sc.phi(w) != c:
            return {"config": format_config(c), "word": w}
    for w in sc.enumerate_schroder(n, d):
        if sc.phi_inv(sc.phi(w)) != w:
            return {"word": w}
    return None


def check_mirror_involution(n: int, d: int) -> dict | None:
    for w in sc.enumerate_schroder(n, d):
        m = sc.mirror(w)
        if not sc.is_schroder(m) or sc.mirror(m) != w:
            return {"word": w, "mirror": m}
        if m.count("U") != n or m.count("H") != d:
            return {"word": w, "mirror": m}
    return None


def check_sts_validity(n: int, d: int) -> dict | None:
    """Word validity and polyomino validity coincide over all words."""
    for w in sc.enumerate_words(n, d):
        if po.is_valid(po.sts(w)) != sc.is_schroder(w):
            return {"word": w}
    return None


def check_from_config_route(n: int, d: int) -> dict | None:
    graph = SplitGraph(n, d)
    for c in enumerate_sorted_recurrent(graph):
        if po.from_config(graph, c) != po.sts(sc.phi_inv(c)):
            return {"config": format_config(c)}
    return None


def check_area_level(n: int, d: int) -> dict | None:
    graph = SplitGraph(n, d)
    for c in enumerate_sorted_recurrent(graph):
        w = sc.mirror(sc.phi_inv(c))
        if sc.area(w) != level(graph, c):
            return {"config": format_config(c), "word": w}
    return None


def check_bounce_wtopple(n: int, d: int) -> dict | None:
    graph = SplitGraph(n, d)
    for c in enumerate_sorted_recurrent(graph):
        w = sc.mirror(sc.phi_inv(c))
        trace = tp.topple_itc(graph, c)
        if sc.schroder_bounce(w) != tp.wtopple(trace) - (n + d):
            return {"config": format_config(c), "word": w}
    return None


def check_peaks_coincide(n: int, d: int) -> dict | None:
    """Geometric peaks match the loop formula from the ITC sequence, and
    the direct band-walk bounce path passes through exactly those peaks."""
    graph = SplitGraph(n, d)
    for c in enumerate_sorted_recurrent(graph):
        w = sc.mirror(sc.phi_inv(c))
        seq = tp.itc_sequence_of(tp.topple_itc(graph, c))
        p, q = seq.a, seq.b
        k = seq.length
        loop_peaks = []
        for i in range(1, k + 1):
            tail = sum(p[i:]) + sum(q[i:])
            if p[i - 1] > 0:
                loop_peaks.append((tail, p[i - 1] + tail))
        expected = sorted(loop_peaks, reverse=True)
        got = sorted(sc.schroder_peaks(w), reverse=True)
        if got != expected:
            return {"config": format_config(c), "word": w, "got": got, "expected": expected}
        walk = set(sc.schroder_bounce_path(w))
        if not set(expected) <= walk:
            return {"config": format_config(c), "word": w, "missing_peaks": True}
    return None


def check_bounce_formulations(n: int, d: int) -> dict | None:
    for w in sc.enumerate_schroder(n, d):
        if sc.bounce_haglund(w) != sc.bounce_loehr(w):
            return {"word": w}
    return None


def check_polyomino_statistics(n: int, d: int) -> dict | None:
    graph = SplitGraph(n, d)
    offset = graph.nonsink_edges - (n + d)
    for c in enumerate_sorted_recurrent(graph):
        poly = po.from_config(graph, c)
        if height(c) != po.area(poly) + offset:
            return {"config": format_config(c), "area": po.area(poly)}
        cti = po.cti_bounce(poly)
        if cti.sizes != tp.cti_sizes(graph, c) or cti.normalized() != _strip(
            tp.cti_sizes(graph, c)
        ):
            return {"config": format_config(c), "which": "cti"}
        itc = po.itc_bounce(poly)
        if itc.sizes != tp.itc_sizes(graph, c) or itc.normalized() != _strip(
            tp.itc_sizes(graph, c)
        ):
            return {"config": format_config(c), "which": "itc"}
    return None


def _strip(sizes: tuple[int, ...]) -> tuple[int, ...]:
    while sizes and sizes[-1] == 0:
        sizes = sizes[:-1]
    return sizes


def check_itc_sequence_sets(n: int, d: int) -> dict | None:
    graph = SplitGraph(n, d)
    image = {
        tp.itc_sequence_of_sizes(tp.itc_sizes(graph, c))
        for c in enumerate_sorted_recurrent(graph)
    }
    described = set(tp.all_itc_sequences(n, d))
    if image != described:
        diff = described ^ image
        sample = next(iter(diff))
        return {"only_one_side": [list(sample.b), list(sample.a)]}
    return None


def check_counts(n: int, d: int) -> dict | None:
    graph = SplitGraph(n, d)
    enumerated = len(enumerate_sorted_recurrent(graph))
    if enumerated != sorted_recurrent_count(n, d):
        return {"enumerated": enumerated, "formula": sorted_recurrent_count(n, d)}
    return None


def check_identity_chain(n: int, d: int) -> dict | None:
    """Proved equalities: f_itc = qt_schroder = egge_sum = itc_sum."""
    reference = qt.f_itc(n, d)
    for name, fn in (
        ("qt_schroder", qt.qt_schroder),
        ("egge_sum", qt.egge_sum),
        ("itc_sum", qt.itc_sum),
    ):
        other = fn(n, d)
        if other != reference:
            return {"method": name, "difference": (other - reference).to_json()}
    if reference.evaluate(1, 1) != sorted_recurrent_count(n, d):
        return {"method": "evaluation_at_1_1"}
    if not qt.is_qt_symmetric(qt.qt_schroder(n, d)):
        return {"method": "qt_symmetry"}
    return None


def check_abelian(n: int, d: int, cases: int = 200, seed: int = 20240) -> dict | None:
    graph = SplitGraph(n, d)
    rng = random.Random(hash((seed, n, d)))
    for _ in range(cases):
        c = Config(
            tuple(rng.randint(0, 2 * (n + d)) for _ in range(n)),
            tuple(rng.randint(0, 2 * (n + d)) for _ in range(d)),
        )
        base = stabilize(graph, c)
        r1 = random.Random(rng.random())
        r2 = random.Random(rng.random())
        alt1 = stabilize(graph, c, pick=lambda u, r=r1: r.choice(u))
        alt2 = stabilize(graph, c, pick=lambda u, r=r2: r.choice(u))
        if not (base == alt1 == alt2):
            return {"config": format_config(c)}
    return None


def check_burning_returns(n: int, d: int) -> dict | None:
    """Toppling the sink then stabilizing a recurrent configuration
    returns it with every vertex toppling exactly once."""
    graph = SplitGraph(n, d)
    for c in enumerate_sorted_recurrent(graph):
        bumped = Config(
            tuple(x + 1 for x in c.clique), tuple(x + 1 for x in c.independent)
        )
        trace = stabilize(graph, bumped)
        if trace.final != c or set(trace.odometer[:-1]) != {1}:
            return {"config": format_config(c)}
    return None


def check_cycle_lemma(n: int, d: int) -> dict | None:
    graph = SplitGraph(n, d)
    qsn = cl.enumerate_quasistable_nonneg(graph)
    if len(qsn) != cl.count_quasistable_nonneg(n, d):
        return {"count": len(qsn)}
    owner: dict[Config, Config] = {}
    for v in enumerate_sorted_recurrent(graph):
        members = cl.class_members(graph, v)
        recurrent_members = [
            m for m in members if is_stable(graph, m) and is_recurrent(graph, m)
        ]
        if len(members) != n + 1 or recurrent_members != [v]:
            return {"config": format_config(v)}
        for m in members:
            if m in owner:
                return {"config": format_config(m), "overlap": True}
            owner[m] = v
    if set(owner) != set(qsn):
        return {"uncovered": len(set(qsn) - set(owner))}
    for m in qsn:
        if cl.recurrent_representative(graph, m) != owner[m]:
            return {"config": format_config(m), "representative": True}
    return None


def check_operator_laws(n: int, d: int, cases: int = 100, seed: int = 77) -> dict | None:
    graph = SplitGraph(n, d)
    rng = random.Random(hash((seed, n, d)))
    pairs = [(cl.TS, cl.TS_INV), (cl.TK, cl.TK_INV), (cl.TW, cl.TW_INV)]
    if d > 0:
        pairs.append((cl.TI, cl.TI_INV))
    for _ in range(cases):
        lo = rng.randint(-5, 5)
        a = tuple(sorted((rng.randint(lo, lo + n + d + 1) for _ in range(n)), reverse=True))
        lo2 = rng.randint(-5, 5)
        b = tuple(sorted((rng.randint(lo2, lo2 + n + 1) for _ in range(d)), reverse=True))
        u = Config(a, b)
        for fwd, inv in pairs:
            if cl.apply(graph, inv, cl.apply(graph, fwd, u)) != u:
                return {"config": format_config(u), "op": fwd}
            if cl.apply(graph, fwd, cl.apply(graph, inv, u)) != u:
                return {"config": format_config(u), "op": inv}
        if not cl.identity_check(graph, u):
            return {"config": format_config(u), "op": "identity"}
        if cl.apply(graph, cl.TW, u) != cl.apply_word(
            graph, [cl.TK] * (n + 1) + [cl.TI] * d, u
        ):
            return {"config": format_config(u), "op": "TW_composite"}
    return None


def check_weight_laws(n: int, d: int, cases: int = 100, seed: int = 78) -> dict | None:
    graph = SplitGraph(n, d)
    rng = random.Random(hash((seed, n, d)))
    for _ in range(cases):
        lo = rng.randint(-2 * (n + d + 1), n + d)
        a = tuple(sorted((rng.randint(lo, lo + n + d + 1) for _ in range(n)), reverse=True))
        lo2 = rng.randint(-4, 4)
        b = tuple(sorted((rng.randint(lo2, lo2 + n + 1) for _ in range(d)), reverse=True))
        u = Config(a, b)
        wu = cl.apply(graph, cl.TW, u)
        if wu.independent != u.independent:
            return {"config": format_config(u), "law": "independent_part"}
        if cl.weight(graph, wu) != cl.weight(graph, u) - 1:
            return {"config": format_config(u), "law": "decrement"}
        clique_ok = all(x >= 0 for x in u.clique) and all(x <= n + d for x in u.clique)
        if (cl.weight(graph, u) == 0) != clique_ok:
            return {"config": format_config(u), "law": "zero_iff_window"}
    return None


def check_conjecture_cti_itc(n: int, d: int) -> dict | None:
    a = qt.f_cti(n, d)
    b = qt.f_itc(n, d)
    if a != b:
        return {"difference": (a - b).to_json()}
    return None


def check_conjecture_cti_schroder(n: int, d: int) -> dict | None:
    a = qt.f_cti(n, d)
    b = qt.qt_schroder(n, d)
    if a != b:
        return {"difference": (a - b).to_json()}
    return None


def check_conjecture_bistatistic_bijection(n: int, d: int) -> dict | None:
    """A bijection preserving (height, wtopple) across the two toppling
    orders exists iff the two bistatistic multisets coincide."""
    graph = SplitGraph(n, d)
    from collections import Counter

    cti = Counter(
        (height(c), tp.wtopple_of_sizes(tp.cti_sizes(graph, c)))
        for c in enumerate_sorted_recurrent(graph)
    )
    itc = Counter(
        (height(c), tp.wtopple_of_sizes(tp.itc_sizes(graph, c)))
        for c in enumerate_sorted_recurrent(graph)
    )
    if cti != itc:
        sample = next(iter(set(cti.items()) ^ set(itc.items())))
        return {"bistatistic": list(sample[0])}
    return None


def check_fiber_intervals(n: int, d: int) -> dict | None:
    """Every ITC fiber is the triangle-containment interval between the
    two extremal words."""
    fibers = qt.itc_fibers(n, d)
    described = set(tp.all_itc_sequences(n, d))
    if set(fibers) != described:
        return {"fibers": len(fibers), "described": len(described)}
    for seq, words in fibers.items():
        lo, hi = qt.extremal_words(seq)
        if lo not in words or hi not in words:
            return {"sequence": [list(seq.b), list(seq.a)], "extremal_missing": True}
        if sorted(qt.fiber_words(seq)) != sorted(words):
            return {"sequence": [list(seq.b), list(seq.a)], "construction_mismatch": True}
        if not all(sc.word_le(lo, w) and sc.word_le(w, hi) for w in words):
            return {"sequence": [list(seq.b), list(seq.a)], "bounds_violated": True}
    return None


def check_sequence_counts(n: int, d: int) -> dict | None:
    grouped = tp.enumerate_itc_sequences(n, d)
    for k, seqs in grouped.items():
        if len(seqs) != tp.count_itc(n, d, k):
            return {"k": k, "enumerated": len(seqs), "formula": tp.count_itc(n, d, k)}
    total = sum(len(s) for s in grouped.values())
    if total != tp.count_itc(n, d) or tp.count_itc(n, d) != tp.count_ehkk(n, d):
        return {"total": total}
    return None


def check_hexagon_lemma(limit: int = 4) -> dict | None:
    for a in range(limit + 1):
        for b in range(limit + 1):
            for c in range(limit + 1):
                if qt.hexagon_shuffle_gf(a, b, c) != qt.q_multinomial(a, b, c):
                    return {"abc": [a, b, c]}
    return None


def check_partition_identity(n: int) -> dict | None:
    points = [
        (Fraction(2), Fraction(3), Fraction(5)),
        (Fraction(1, 2), Fraction(3), Fraction(-2)),
        (Fraction(-3), Fraction(5, 7), Fraction(1)),
        (Fraction(7), Fraction(2), Fraction(11)),
        (Fraction(2, 5), Fraction(9, 4), Fraction(3, 2)),
    ]
    report = nabla_symmetry_check(n, points)
    if not report.ok:
        bad = [i for i, (a, b) in enumerate(zip(report.lhs, report.rhs)) if a != b]
        return {"n": n, "bad_points": bad}
    return None


def check_cell_exchange(limit: int = 8) -> dict | None:
    for n in range(1, limit + 1):
        for mu in partitions_of(n):
            conj = mu.conjugate()
            if conj.conjugate() != mu:
                return {"mu": list(mu.parts)}
            for (i, j) in mu.cells():
                x2 = (j, i)
                if (
                    mu.arm((i, j)) != conj.leg(x2)
                    or mu.leg((i, j)) != conj.arm(x2)
                    or mu.coarm((i, j)) != conj.coleg(x2)
                    or mu.coleg((i, j)) != conj.coarm(x2)
                ):
                    return {"mu": list(mu.parts), "cell": [i, j]}
    return None


# ---------------------------------------------------------------------------
# suite assembly
# ---------------------------------------------------------------------------

_SHAPE_CHECKS = {
    "bijections": [
        ("phi_roundtrip", check_phi_roundtrip),
        ("mirror_involution", check_mirror_involution),
        ("word_polyomino_validity", check_sts_validity),
        ("config_polyomino_route", check_from_config_route),
    ],
    "theorems": [
        ("area_equals_level", check_area_level),
        ("bounce_equals_wtopple", check_bounce_wtopple),
        ("peaks_coincide", check_peaks_coincide),
        ("bounce_formulations_agree", check_bounce_formulations),
        ("polyomino_statistics", check_polyomino_statistics),
        ("itc_sequence_description", check_itc_sequence_sets),
        ("recurrent_count", check_counts),
        ("itc_identity_chain", check_identity_chain),
        ("abelian_stabilization", check_abelian),
        ("burning_returns_start", check_burning_returns),
    ],
    "cycle-lemma": [
        ("operator_laws", check_operator_laws),
        ("weight_laws", check_weight_laws),
        ("class_partition", check_cycle_lemma),
    ],
    "conjectures": [
        ("qt_cti_equals_itc", check_conjecture_cti_itc),
        ("qt_cti_equals_schroder", check_conjecture_cti_schroder),
        ("bistatistic_bijection_exists", check_conjecture_bistatistic_bijection),
    ],
    "appendix": [
        ("fiber_intervals", check_fiber_intervals),
        ("sequence_counts", check_sequence_counts),
    ],
}

# word-enumeration checks get too large beyond these caps
_CHECK_CAPS = {
    "word_polyomino_validity": (4, 3),
    "fiber_intervals": (4, 3),
    "operator_laws": (4, 4),
    "weight_laws": (4, 4),
    "class_partition": (4, 3),
    "abelian_stabilization": (4, 3),
}


_CHECK_FUNCS = {
    name: fn for checks in _SHAPE_CHECKS.values() for name, fn in checks
}

#: checks whose failure is a conjecture counterexample, not a bug
CONJECTURE_CHECKS = frozenset(name for name, _ in _SHAPE_CHECKS["conjectures"])


def list_tasks(suite: str, max_n: int, max_d: int) -> list[tuple]:
    """Picklable task descriptors, in deterministic order."""
    if suite == "all":
        out: list[tuple] = []
        for s in ("bijections", "theorems", "cycle-lemma", "conjectures", "appendix"):
            out.extend(list_tasks(s, max_n, max_d))
        return out
    if suite not in _SHAPE_CHECKS:
        raise ValueError(f"unknown suite {suite!r}")
    tasks: list[tuple] = []
    for name, _fn in _SHAPE_CHECKS[suite]:
        cap_n, cap_d = _CHECK_CAPS.get(name, (max_n, max_d))
        for n, d in _shapes(min(max_n, cap_n), min(max_d, cap_d)):
            tasks.append(("shape", name, n, d))
    if suite == "appendix":
        tasks.append(("hexagon", 4))
        tasks.append(("exchange", 8))
        for n in range(1, min(max_n, 5) + 1):
            tasks.append(("partition_identity", n))
    return tasks


def run_task(task: tuple) -> VerificationReport:
    start = time.perf_counter()
    if task[0] == "shape":
        _, name, n, d = task
        rep = _report(name, {"n": n, "d": d}, _CHECK_FUNCS[name](n, d))
    elif task[0] == "hexagon":
        rep = _report("hexagon_multinomial", {"limit": task[1]}, check_hexagon_lemma(task[1]))
    elif task[0] == "exchange":
        rep = _report("cell_exchange", {"limit": task[1]}, check_cell_exchange(task[1]))
    elif task[0] == "partition_identity":
        rep = _report("partition_sum_identity", {"n": task[1]}, check_partition_identity(task[1]))
    else:
        raise ValueError(f"unknown task {task!r}")
    rep.seconds = time.perf_counter() - start
    return rep


def run_suite(suite: str, max_n: int, max_d: int, jobs: int = 1) -> list[VerificationReport]:
    tasks = list_tasks(suite, max_n, max_d)
    if jobs <= 1 or len(tasks) <= 1:
        return [run_task(t) for t in tasks]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_task, tasks))
