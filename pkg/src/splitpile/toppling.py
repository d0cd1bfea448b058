"""Parallel CTI and ITC toppling of sorted recurrent configurations.

Both processes start by toppling the sink and then alternate parallel
topplings of the two vertex classes until the configuration is stable
again: CTI topples unstable Clique vertices Then Independent ones each
round, ITC the other way around.  On a recurrent configuration every
vertex topples exactly once and the original configuration returns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .asm import (
    Config,
    InternalError,
    PreconditionError,
    SplitGraph,
    is_recurrent,
    is_sorted_config,
)

CTI = "CTI"
ITC = "ITC"


@dataclass(frozen=True)
class ToppleTrace:
    """Rounds of a parallel toppling run.

    Each round is a pair of vertex index tuples (0-based within their
    part): for CTI the pair is (clique toppled, independent toppled),
    for ITC it is (independent toppled, clique toppled).  The final
    round may have an empty second set; no round is empty entirely.
    """

    mode: str
    rounds: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def sizes(self) -> tuple[int, ...]:
        """Flattened block sizes (p1, q1, ..., pt, qt) resp. (q'1, p'1, ...)."""
        out: list[int] = []
        for first, second in self.rounds:
            out.append(len(first))
            out.append(len(second))
        return tuple(out)


def wtopple(trace: ToppleTrace) -> int:
    """Time-weighted toppling count: sum of i * (vertices toppled in round i)."""
    return sum(
        i * (len(first) + len(second))
        for i, (first, second) in enumerate(trace.rounds, start=1)
    )


def wtopple_of_sizes(sizes: tuple[int, ...]) -> int:
    """wtopple from a flattened block-size sequence."""
    return sum(i * (sizes[2 * i - 2] + sizes[2 * i - 1]) for i in range(1, len(sizes) // 2 + 1))


def _run_parallel(graph: SplitGraph, config: Config, clique_first: bool) -> ToppleTrace:
    n, d = graph.n, graph.d
    if not is_sorted_config(config):
        raise PreconditionError("parallel toppling requires a sorted configuration")
    if not is_recurrent(graph, config):
        raise PreconditionError("parallel toppling requires a recurrent configuration")
    a = [x + 1 for x in config.clique]
    b = [x + 1 for x in config.independent]

    def topple_clique() -> tuple[int, ...]:
        hot = tuple(i for i in range(n) if a[i] >= graph.clique_degree)
        for i in hot:
            a[i] -= graph.clique_degree
        gain = len(hot)
        for i in range(n):
            a[i] += gain - (1 if i in hot else 0)
        for j in range(d):
            b[j] += gain
        return hot

    def topple_indep() -> tuple[int, ...]:
        hot = tuple(j for j in range(d) if b[j] >= graph.indep_degree)
        for j in hot:
            b[j] -= graph.indep_degree
        gain = len(hot)
        for i in range(n):
            a[i] += gain
        return hot

    rounds: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for _ in range(n + d + 1):
        if clique_first:
            first, second = topple_clique(), topple_indep()
        else:
            first, second = topple_indep(), topple_clique()
        if not first and not second:
            break
        rounds.append((first, second))
    else:
        raise InternalError("parallel toppling did not settle; input not recurrent?")

    if tuple(a) != config.clique or tuple(b) != config.independent:
        raise InternalError("parallel toppling did not return the original configuration")
    return ToppleTrace(CTI if clique_first else ITC, tuple(rounds))


def topple_cti(graph: SplitGraph, config: Config) -> ToppleTrace:
    """Clique-Then-Independent rounds after a sink toppling."""
    return _run_parallel(graph, config, clique_first=True)


def topple_itc(graph: SplitGraph, config: Config) -> ToppleTrace:
    """Independent-Then-Clique rounds after a sink toppling."""
    return _run_parallel(graph, config, clique_first=False)


def _sizes_sorted(graph: SplitGraph, config: Config, clique_first: bool) -> tuple[int, ...]:
    """Block sizes only, using the prefix structure of sorted configurations.

    Unburnt vertices of a part all hold the same received total, so each
    round topples a prefix of what remains; counters suffice.
    """
    n, d = graph.n, graph.d
    a, b = config.clique, config.independent
    bk = bi = 0
    sizes: list[int] = []

    def clique_round() -> int:
        nonlocal bk
        new = 0
        while bk + new < n and a[bk + new] >= n + d - 1 - bk - bi:
            new += 1
        bk += new
        return new

    def indep_round() -> int:
        nonlocal bi
        new = 0
        while bi + new < d and b[bi + new] >= n - bk:
            new += 1
        bi += new
        return new

    while True:
        if clique_first:
            x, y = clique_round(), indep_round()
        else:
            x, y = indep_round(), clique_round()
        if x == 0 and y == 0:
            break
        sizes.append(x)
        sizes.append(y)
    if bk != n or bi != d:
        raise PreconditionError("configuration is not recurrent")
    return tuple(sizes)


def cti_sizes(graph: SplitGraph, config: Config) -> tuple[int, ...]:
    """Sizes of the CTI trace without materializing vertex sets."""
    return _sizes_sorted(graph, config, clique_first=True)


def itc_sizes(graph: SplitGraph, config: Config) -> tuple[int, ...]:
    """Sizes of the ITC trace without materializing vertex sets."""
    return _sizes_sorted(graph, config, clique_first=False)


def trace_to_json(trace: ToppleTrace) -> dict:
    """1-based vertex labels, clique and independent parts kept separate."""
    rounds = []
    for first, second in trace.rounds:
        clique, indep = (first, second) if trace.mode == CTI else (second, first)
        rounds.append(
            {
                "clique": [i + 1 for i in clique],
                "independent": [j + 1 for j in indep],
            }
        )
    return {"mode": trace.mode, "rounds": rounds}


def trace_from_json(obj: dict) -> ToppleTrace:
    mode = obj["mode"]
    if mode not in (CTI, ITC):
        raise PreconditionError(f"unknown trace mode {mode!r}")
    rounds = []
    for r in obj["rounds"]:
        clique = tuple(i - 1 for i in r["clique"])
        indep = tuple(j - 1 for j in r["independent"])
        rounds.append((clique, indep) if mode == CTI else (indep, clique))
    return ToppleTrace(mode, tuple(rounds))


# ---------------------------------------------------------------------------
# ITC toppling sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ItcSequence:
    """The pair [(q'_1..q'_t), (p'_1..p'_t)] of round sizes of an ITC run.

    Conventions q'_0 = 0 and p'_0 = 1 (the sink toppling) are implicit.
    """

    b: tuple[int, ...]  # independent counts per round
    a: tuple[int, ...]  # clique counts per round

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "a", tuple(self.a))
        if len(self.a) != len(self.b) or not self.a:
            raise PreconditionError("sequence parts must be non-empty and equally long")

    @property
    def length(self) -> int:
        return len(self.a)


def itc_sequence_of(trace: ToppleTrace) -> ItcSequence:
    """Regroup an ITC trace's sizes into the [(q'), (p')] pair."""
    if trace.mode != ITC:
        raise PreconditionError(f"need an ITC trace, got mode {trace.mode}")
    return ItcSequence(
        tuple(len(first) for first, _ in trace.rounds),
        tuple(len(second) for _, second in trace.rounds),
    )


def itc_sequence_of_sizes(sizes: tuple[int, ...]) -> ItcSequence:
    return ItcSequence(sizes[0::2], sizes[1::2])


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _weak_compositions(total - head, parts - 1):
            yield (head,) + rest


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` strictly positive parts."""
    for c in _weak_compositions(total - parts, parts):
        yield tuple(x + 1 for x in c)


def enumerate_itc_sequences(n: int, d: int) -> dict[int, list[ItcSequence]]:
    """All realizable ITC toppling sequences on S(n, d), grouped by length.

    Length 1 is exactly [(d), (n)]; for length k >= 2 the clique counts
    form a weak composition of n that is positive before the last spot,
    the independent counts a weak composition of d, and the final round
    is non-empty.
    """
    out: dict[int, list[ItcSequence]] = {1: [ItcSequence((d,), (n,))]}
    for k in range(2, n + 2):
        found: list[ItcSequence] = []
        for a_last in range(0, n - (k - 1) + 1):
            for head in compositions(n - a_last, k - 1):
                a = head + (a_last,)
                for b in _weak_compositions(d, k):
                    if b[-1] + a_last > 0:
                        found.append(ItcSequence(b, a))
        if found:
            out[k] = found
    return out


def all_itc_sequences(n: int, d: int) -> list[ItcSequence]:
    grouped = enumerate_itc_sequences(n, d)
    return [seq for k in sorted(grouped) for seq in grouped[k]]


def canonical_config(graph: SplitGraph, seq: ItcSequence) -> Config:
    """A sorted recurrent configuration whose ITC sequence is ``seq``.

    Vertices toppled in the same round share a grain count; the counts
    follow from how many earlier topplings they must survive.  The
    result is validated by replay; construction mistakes fall back to an
    exhaustive fiber search on small graphs.
    """
    n, d = graph.n, graph.d
    if sum(seq.a) != n or sum(seq.b) != d:
        raise PreconditionError(f"sequence {seq} does not fit S({n},{d})")
    k = seq.length
    a_full = (1,) + seq.a  # a_0 = 1 (the sink)
    b_full = (0,) + seq.b  # b_0 = 0
    clique: list[int] = []
    indep: list[int] = []
    for j in range(1, k + 1):
        prior = sum(a_full[:j]) + sum(b_full[:j])
        clique.extend([n + d - prior - b_full[j]] * a_full[j])
        indep.extend([n + 1 - sum(a_full[:j])] * b_full[j])
    candidate = Config(tuple(clique), tuple(indep))

    def realizes(c: Config) -> bool:
        return (
            is_sorted_config(c)
            and all(x >= 0 for x in c.key())
            and is_recurrent(graph, c)
            and itc_sizes(graph, c) == _flatten(seq)
        )

    if realizes(candidate):
        return candidate
    # construction disagreed with replay: search the fiber directly
    if n + d <= 9:
        from .asm import enumerate_sorted_recurrent

        for c in enumerate_sorted_recurrent(graph):
            if itc_sizes(graph, c) == _flatten(seq):
                return c
        raise PreconditionError(f"sequence {seq} is not realizable on S({n},{d})")
    raise InternalError(f"canonical configuration for {seq} failed validation")


def _flatten(seq: ItcSequence) -> tuple[int, ...]:
    out: list[int] = []
    for q, p in zip(seq.b, seq.a):
        out.append(q)
        out.append(p)
    return tuple(out)


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def _comb(m: int, k: int) -> int:
    if k < 0 or m < 0 or k > m:
        return 0
    return math.comb(m, k)


def count_itc(n: int, d: int, k: int | None = None) -> int:
    """Number of ITC toppling sequences on S(n, d), per length or in total."""
    if n < 1 or d < 0:
        raise PreconditionError(f"need n >= 1 and d >= 0, got ({n}, {d})")
    if k is not None:
        if k < 1:
            raise PreconditionError("sequence length must be >= 1")
        if k == 1:
            return 1
        return _comb(d + k - 2, d - 1) * _comb(n - 1, k - 2) + _comb(d + k - 1, d) * _comb(
            n - 1, k - 1
        )
    return sum(_comb(d + j, d) * _comb(n - 1, j - 1) for j in range(1, n + 1))


def count_ehkk(n: int, d: int, k: int | None = None) -> int:
    """Number of (composition, weak composition) pairs in the explicit
    q,t-Schroder sum, per length or in total; the total matches count_itc."""
    if n < 1 or d < 0:
        raise PreconditionError(f"need n >= 1 and d >= 0, got ({n}, {d})")
    if k is not None:
        if k < 1:
            raise PreconditionError("length must be >= 1")
        return _comb(n - 1, k - 1) * _comb(d + k, d)
    return sum(_comb(n - 1, j - 1) * _comb(d + j, d) for j in range(1, n + 1))
