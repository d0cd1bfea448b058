"""Abelian sandpile model on the complete split graph.

The graph S(n, d) consists of a single sink, ``n`` clique vertices
(pairwise adjacent and adjacent to the sink) and ``d`` independent
vertices (adjacent to every clique vertex and to the sink, but not to
each other).  Clique vertices and the sink have degree n + d,
independent vertices have degree n + 1.

A configuration assigns a grain count to every non-sink vertex; the sink
absorbs grains.  This module implements toppling, stabilization, Dhar's
burning test, and enumeration of sorted recurrent configurations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Iterator

#: Sentinel naming the sink vertex in :func:`topple`.
SINK = "sink"


class PreconditionError(ValueError):
    """An operation was invoked outside its documented domain."""


class InternalError(RuntimeError):
    """A safety bound was exceeded; indicates a bug, not bad input."""


@dataclass(frozen=True)
class SplitGraph:
    """The complete split graph S(n, d) with a clique-side sink."""

    n: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 0:
            raise PreconditionError(f"need n >= 1 and d >= 0, got ({self.n}, {self.d})")

    @property
    def clique_degree(self) -> int:
        return self.n + self.d

    @property
    def indep_degree(self) -> int:
        return self.n + 1

    @property
    def sink_degree(self) -> int:
        return self.n + self.d

    @property
    def vertex_count(self) -> int:
        """Non-sink vertex count."""
        return self.n + self.d

    @property
    def nonsink_edges(self) -> int:
        """Edges not incident to the sink: C(n+d, 2) - C(d, 2)."""
        return math.comb(self.n + self.d, 2) - math.comb(self.d, 2)


@dataclass(frozen=True)
class Config:
    """Grain counts on the n clique and d independent vertices.

    Entries may be negative (used by the operator framework in
    :mod:`splitpile.cycle_lemma`); the classical sandpile operations
    below check non-negativity where they require it.
    """

    clique: tuple[int, ...]
    independent: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clique", tuple(self.clique))
        object.__setattr__(self, "independent", tuple(self.independent))

    def key(self) -> tuple[int, ...]:
        """Concatenated entry tuple; canonical order sorts this descending."""
        return self.clique + self.independent

    def __str__(self) -> str:
        return format_config(self)


# ---------------------------------------------------------------------------
# text / JSON forms
# ---------------------------------------------------------------------------

def parse_config(text: str) -> Config:
    """Parse ``"a1,...,an;b1,...,bd"``; the ``;bs`` part may be absent or empty."""
    text = text.strip()
    if ";" in text:
        left, _, right = text.partition(";")
    else:
        left, right = text, ""
    try:
        clique = tuple(int(x) for x in left.split(",") if x.strip() != "")
        indep = tuple(int(x) for x in right.split(",") if x.strip() != "")
    except ValueError as exc:
        raise PreconditionError(f"bad configuration text {text!r}") from exc
    if not clique:
        raise PreconditionError(f"bad configuration text {text!r}: empty clique part")
    return Config(clique, indep)


def format_config(config: Config) -> str:
    left = ",".join(str(x) for x in config.clique)
    if not config.independent:
        return left
    return left + ";" + ",".join(str(x) for x in config.independent)


def config_to_json(graph: SplitGraph, config: Config) -> dict:
    return {
        "n": graph.n,
        "d": graph.d,
        "clique": list(config.clique),
        "independent": list(config.independent),
    }


def config_from_json(obj: dict) -> tuple[SplitGraph, Config]:
    graph = SplitGraph(int(obj["n"]), int(obj["d"]))
    config = Config(tuple(obj["clique"]), tuple(obj["independent"]))
    if len(config.clique) != graph.n or len(config.independent) != graph.d:
        raise PreconditionError("configuration length does not match (n, d)")
    return graph, config


# ---------------------------------------------------------------------------
# predicates and statistics
# ---------------------------------------------------------------------------

def is_sorted_config(config: Config) -> bool:
    """Weakly decreasing within the clique part and within the independent part."""
    return all(x >= y for x, y in zip(config.clique, config.clique[1:])) and all(
        x >= y for x, y in zip(config.independent, config.independent[1:])
    )


def is_nonnegative(config: Config) -> bool:
    return all(x >= 0 for x in config.key())


def is_stable(graph: SplitGraph, config: Config) -> bool:
    return all(a < graph.clique_degree for a in config.clique) and all(
        b < graph.indep_degree for b in config.independent
    )


def height(config: Config) -> int:
    """Total number of grains."""
    return sum(config.clique) + sum(config.independent)


def level(graph: SplitGraph, config: Config) -> int:
    """Height minus the number of edges not incident to the sink."""
    return height(config) - graph.nonsink_edges


def _check_shape(graph: SplitGraph, config: Config) -> None:
    if len(config.clique) != graph.n or len(config.independent) != graph.d:
        raise PreconditionError(
            f"configuration {format_config(config)} does not fit S({graph.n},{graph.d})"
        )


# ---------------------------------------------------------------------------
# toppling
# ---------------------------------------------------------------------------

def topple(graph: SplitGraph, config: Config, vertex) -> Config:
    """Topple one vertex: it donates a grain to each neighbour.

    ``vertex`` is :data:`SINK` (always allowed; grains flow in from
    outside the tracked configuration) or an integer in ``range(n + d)``
    (0..n-1 clique, n..n+d-1 independent), which must be unstable.
    Grains sent to the sink vanish.
    """
    _check_shape(graph, config)
    n, d = graph.n, graph.d
    a = list(config.clique)
    b = list(config.independent)
    if vertex == SINK:
        return Config([x + 1 for x in a], [x + 1 for x in b])
    v = int(vertex)
    if not 0 <= v < n + d:
        raise PreconditionError(f"vertex {vertex!r} out of range for S({n},{d})")
    if v < n:
        if a[v] < graph.clique_degree:
            raise PreconditionError(f"clique vertex v{v + 1} is stable; cannot topple")
        a[v] -= graph.clique_degree
        for i in range(n):
            if i != v:
                a[i] += 1
        b = [x + 1 for x in b]
    else:
        j = v - n
        if b[j] < graph.indep_degree:
            raise PreconditionError(f"independent vertex w{j + 1} is stable; cannot topple")
        b[j] -= graph.indep_degree
        a = [x + 1 for x in a]
    return Config(a, b)


@dataclass(frozen=True)
class StabilizationTrace:
    """Result of :func:`stabilize`.

    ``odometer`` lists toppling counts for v1..vn, w1..wd and finally the
    sink (which stabilize itself never topples, so the last entry is 0).
    """

    final: Config
    odometer: tuple[int, ...]


def _topple_inplace(graph: SplitGraph, a: list[int], b: list[int], v: int) -> None:
    n = graph.n
    if v < n:
        a[v] -= graph.clique_degree
        for i in range(n):
            if i != v:
                a[i] += 1
        for j in range(len(b)):
            b[j] += 1
    else:
        b[v - n] -= graph.indep_degree
        for i in range(n):
            a[i] += 1


def _stabilize_raw(
    graph: SplitGraph,
    config: Config,
    pick: Callable[[list[int]], int] | None = None,
) -> StabilizationTrace:
    """Stabilize without the non-negativity precondition (operator framework use)."""
    n, d = graph.n, graph.d
    a = list(config.clique)
    b = list(config.independent)
    odometer = [0] * (n + d)
    total = sum(x for x in a if x > 0) + sum(x for x in b if x > 0)
    bound = (total + 1) * (n + d + 1) ** 2
    steps = 0
    while True:
        unstable = [i for i in range(n) if a[i] >= graph.clique_degree]
        unstable += [n + j for j in range(d) if b[j] >= graph.indep_degree]
        if not unstable:
            break
        v = unstable[0] if pick is None else pick(unstable)
        _topple_inplace(graph, a, b, v)
        odometer[v] += 1
        steps += 1
        if steps > bound:
            raise InternalError(f"stabilization exceeded {bound} topplings")
    return StabilizationTrace(Config(a, b), tuple(odometer) + (0,))


def stabilize(
    graph: SplitGraph,
    config: Config,
    pick: Callable[[list[int]], int] | None = None,
) -> StabilizationTrace:
    """Topple unstable vertices until none remain.

    The abelian property guarantees the result does not depend on the
    toppling order; ``pick`` selects the next unstable vertex from the
    candidate list and exists so tests can exercise different orders.
    """
    _check_shape(graph, config)
    if not is_nonnegative(config):
        raise PreconditionError("stabilize requires non-negative grain counts")
    return _stabilize_raw(graph, config, pick)


# ---------------------------------------------------------------------------
# Dhar's burning test
# ---------------------------------------------------------------------------

def _burn_sorted(graph: SplitGraph, config: Config) -> list[tuple[int, int]] | None:
    """Counter form of the burning test for sorted stable configurations.

    Burning a sorted configuration proceeds in rounds that always burn a
    prefix of the not-yet-burnt vertices of each part, because every
    unburnt vertex of a part has received the same number of grains.
    Returns the rounds as (clique burnt, independent burnt) counts, or
    None if burning stalls (not recurrent).
    """
    n, d = graph.n, graph.d
    a, b = config.clique, config.independent
    bk = bi = 0  # burnt clique / independent counts
    rounds: list[tuple[int, int]] = []
    while bk < n or bi < d:
        # clique vertex threshold after the sink and bk + bi burnings
        new_k = 0
        while bk + new_k < n and a[bk + new_k] >= n + d - 1 - bk - bi:
            new_k += 1
        bk += new_k
        new_i = 0
        while bi + new_i < d and b[bi + new_i] >= n - bk:
            new_i += 1
        bi += new_i
        if new_k == 0 and new_i == 0:
            return None
        rounds.append((new_k, new_i))
    return rounds


def is_recurrent(graph: SplitGraph, config: Config, with_witness: bool = False):
    """Dhar's burning test for a stable configuration.

    Returns a bool, or ``(bool, order)`` when ``with_witness`` is set;
    the witness is a burning order (vertex indices, sink excluded) in
    which each vertex becomes unstable given the previous topplings.
    """
    _check_shape(graph, config)
    if not is_nonnegative(config):
        raise PreconditionError("recurrence test requires non-negative grain counts")
    if not is_stable(graph, config):
        raise PreconditionError("recurrence test requires a stable configuration")
    n, d = graph.n, graph.d

    if is_sorted_config(config) and not with_witness:
        return _burn_sorted(graph, config) is not None

    # General form: simulate the burning, toppling each vertex at most once.
    a = [x + 1 for x in config.clique]
    b = [x + 1 for x in config.independent]
    burnt = [False] * (n + d)
    order: list[int] = []
    progress = True
    while progress:
        progress = False
        for v in range(n + d):
            if burnt[v]:
                continue
            if v < n:
                unstable = a[v] >= graph.clique_degree
            else:
                unstable = b[v - n] >= graph.indep_degree
            if unstable:
                _topple_inplace(graph, a, b, v)
                burnt[v] = True
                order.append(v)
                progress = True
    ok = all(burnt)
    if ok:
        # toppling the sink and then every vertex once returns the start
        if tuple(a) != config.clique or tuple(b) != config.independent:
            raise InternalError("burning did not return the initial configuration")
    if with_witness:
        return ok, tuple(order) if ok else None
    return ok


# ---------------------------------------------------------------------------
# enumeration and counting
# ---------------------------------------------------------------------------

def weakly_decreasing_tuples(length: int, max_value: int) -> Iterator[tuple[int, ...]]:
    """All weakly decreasing tuples over 0..max_value, in descending lex order."""
    if length == 0:
        yield ()
        return
    yield from combinations_with_replacement(range(max_value, -1, -1), length)


def _enumerate_dhar(graph: SplitGraph) -> list[Config]:
    out = []
    for a in weakly_decreasing_tuples(graph.n, graph.clique_degree - 1):
        for b in weakly_decreasing_tuples(graph.d, graph.indep_degree - 1):
            c = Config(a, b)
            if _burn_sorted(graph, c) is not None:
                out.append(c)
    return out


def _enumerate_phi(graph: SplitGraph) -> list[Config]:
    from . import schroder

    out = [schroder.phi(w) for w in schroder.enumerate_schroder(graph.n, graph.d)]
    out.sort(key=Config.key, reverse=True)
    return out


@lru_cache(maxsize=None)
def _enumerate_cached(n: int, d: int, backend: str) -> tuple[Config, ...]:
    graph = SplitGraph(n, d)
    if backend == "dhar":
        return tuple(_enumerate_dhar(graph))
    if backend == "phi":
        return tuple(_enumerate_phi(graph))
    if backend == "both":
        dhar = _enumerate_dhar(graph)
        phi = _enumerate_phi(graph)
        if dhar != phi:
            raise InternalError(f"enumeration backends disagree on S({n},{d})")
        return tuple(dhar)
    raise PreconditionError(f"unknown backend {backend!r}")


def enumerate_sorted_recurrent(graph: SplitGraph, backend: str = "dhar") -> tuple[Config, ...]:
    """All sorted recurrent configurations, lexicographically decreasing.

    ``backend`` chooses between the direct filter of sorted stable
    configurations ("dhar"), the image of all Schroder words under phi
    ("phi"), or "both" which cross-checks and returns the common answer.
    """
    return _enumerate_cached(graph.n, graph.d, backend)


def sorted_recurrent_count(n: int, d: int) -> int:
    """Closed-form count of sorted recurrent configurations on S(n, d).

    Both printed forms are computed and must agree:
    C(2n+d, n) C(n+d, n) / (n+1)  ==  C(2n+1, n) C(2n+d, d) / (2n+1).
    """
    if n < 1 or d < 0:
        raise PreconditionError(f"need n >= 1 and d >= 0, got ({n}, {d})")
    num1 = math.comb(2 * n + d, n) * math.comb(n + d, n)
    if num1 % (n + 1):
        raise InternalError("count formula is not divisible by n+1")
    form1 = num1 // (n + 1)
    num2 = math.comb(2 * n + 1, n) * math.comb(2 * n + d, d)
    if num2 % (2 * n + 1):
        raise InternalError("count formula is not divisible by 2n+1")
    form2 = num2 // (2 * n + 1)
    if form1 != form2:
        raise InternalError("the two closed forms disagree")
    return form1
