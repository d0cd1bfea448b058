"""Reversible toppling operators and the cycle lemma enumeration.

Configurations here may carry negative entries; the sink height is
implicit as minus the total.  On sorted *compact* configurations
(clique spread at most n+d+1, independent spread at most n+1) the
topple-max-then-sort operators act by closed formulas, are invertible,
and satisfy Ts TK^n TI^d = Id.  Counting sorted quasi-stable
non-negative configurations and partitioning them into classes of size
n+1 with exactly one recurrent member yields the closed-form count of
sorted recurrent configurations.
"""

from __future__ import annotations

import math

from .asm import (
    Config,
    InternalError,
    PreconditionError,
    SplitGraph,
    _stabilize_raw,
    is_nonnegative,
    is_recurrent,
    is_sorted_config,
    is_stable,
    weakly_decreasing_tuples,
)

TS, TK, TI, TW = "Ts", "TK", "TI", "TW"
TS_INV, TK_INV, TI_INV, TW_INV = "Ts_inv", "TK_inv", "TI_inv", "TW_inv"
OPERATORS = (TS, TK, TI, TW, TS_INV, TK_INV, TI_INV, TW_INV)


def spread(values: tuple[int, ...]) -> int:
    return max(values) - min(values) if values else 0


def is_compact(graph: SplitGraph, config: Config) -> bool:
    return spread(config.clique) <= graph.n + graph.d + 1 and spread(
        config.independent
    ) <= graph.n + 1


def is_quasistable(graph: SplitGraph, config: Config) -> bool:
    """Clique entries at most n+d, independent entries at most n."""
    return all(a <= graph.n + graph.d for a in config.clique) and all(
        b <= graph.n for b in config.independent
    )


def sink_height(config: Config) -> int:
    """Implicit sink value: minus the sum of all tracked entries."""
    return -(sum(config.clique) + sum(config.independent))


def weight(graph: SplitGraph, config: Config) -> int:
    """Sum over the clique part of floor(entry / (n+d+1))."""
    m = graph.n + graph.d + 1
    return sum(v // m for v in config.clique)


def _require_sorted_compact(graph: SplitGraph, config: Config) -> None:
    if len(config.clique) != graph.n or len(config.independent) != graph.d:
        raise PreconditionError("configuration does not fit the graph")
    if not is_sorted_config(config):
        raise PreconditionError("operators act on sorted configurations")
    if not is_compact(graph, config):
        raise PreconditionError("operators act on compact configurations")


def _topple_max_then_sort(graph: SplitGraph, config: Config, component: str) -> Config:
    """Defining description: topple one maximal vertex of the component
    (the sink for "s"), then sort; used to cross-check the closed forms."""
    a = list(config.clique)
    b = list(config.independent)
    if component == "s":
        a = [x + 1 for x in a]
        b = [x + 1 for x in b]
    elif component == "K":
        a[0] -= graph.n + graph.d
        for i in range(1, graph.n):
            a[i] += 1
        b = [x + 1 for x in b]
    else:
        b[0] -= graph.n + 1
        a = [x + 1 for x in a]
    return Config(tuple(sorted(a, reverse=True)), tuple(sorted(b, reverse=True)))


def apply(graph: SplitGraph, op: str, config: Config) -> Config:
    """Apply one operator to a sorted compact configuration.

    Forward operators verify the closed form against the defining
    topple-max-then-sort description; every result is checked to be
    sorted and compact again.
    """
    _require_sorted_compact(graph, config)
    n, d = graph.n, graph.d
    m = n + d + 1
    a = config.clique
    b = config.independent
    if op == TS:
        out = Config(tuple(x + 1 for x in a), tuple(x + 1 for x in b))
    elif op == TK:
        out = Config(tuple(x + 1 for x in a[1:]) + (a[0] - m + 1,), tuple(x + 1 for x in b))
    elif op == TI:
        if d == 0:
            raise PreconditionError("TI needs at least one independent vertex")
        out = Config(tuple(x + 1 for x in a), tuple(b[1:]) + (b[0] - (n + 1),))
    elif op == TW:
        out = Config(tuple(a[1:]) + (a[0] - m,), b)
    elif op == TS_INV:
        out = Config(tuple(x - 1 for x in a), tuple(x - 1 for x in b))
    elif op == TK_INV:
        out = Config((a[-1] + m - 1,) + tuple(x - 1 for x in a[:-1]), tuple(x - 1 for x in b))
    elif op == TI_INV:
        if d == 0:
            raise PreconditionError("TI needs at least one independent vertex")
        out = Config(tuple(x - 1 for x in a), (b[-1] + n + 1,) + tuple(b[:-1]))
    elif op == TW_INV:
        out = Config((a[-1] + m,) + tuple(a[:-1]), b)
    else:
        raise PreconditionError(f"unknown operator {op!r}")
    if op in (TS, TK, TI):
        reference = _topple_max_then_sort(graph, config, {"Ts": "s", "TK": "K", "TI": "I"}[op])
        if out != reference:
            raise InternalError(f"closed form of {op} disagrees with topple-max-then-sort")
    if not is_sorted_config(out) or not is_compact(graph, out):
        raise InternalError(f"{op} left the sorted compact set on {config}")
    return out


def apply_word(graph: SplitGraph, ops, config: Config) -> Config:
    """Apply a sequence of operators left to right."""
    for op in ops:
        config = apply(graph, op, config)
    return config


def identity_check(graph: SplitGraph, config: Config) -> bool:
    """Ts TK^n TI^d fixes the configuration; the operators also commute
    pairwise on it."""
    word = [TS] + [TK] * graph.n + [TI] * graph.d
    if apply_word(graph, word, config) != config:
        return False
    pairs = [(TS, TK)] if graph.d == 0 else [(TS, TK), (TS, TI), (TK, TI)]
    for x, y in pairs:
        if apply_word(graph, (x, y), config) != apply_word(graph, (y, x), config):
            return False
    return True


# ---------------------------------------------------------------------------
# quasi-stable non-negative configurations and the class partition
# ---------------------------------------------------------------------------

def count_quasistable_nonneg(n: int, d: int) -> int:
    return math.comb(2 * n + d, n) * math.comb(n + d, n)


def enumerate_quasistable_nonneg(graph: SplitGraph) -> list[Config]:
    """Sorted configurations with clique entries in [0, n+d] and
    independent entries in [0, n], lexicographically decreasing."""
    out = []
    for a in weakly_decreasing_tuples(graph.n, graph.n + graph.d):
        for b in weakly_decreasing_tuples(graph.d, graph.n):
            out.append(Config(a, b))
    return out


def recurrent_representative(graph: SplitGraph, config: Config) -> Config:
    """The unique sorted recurrent configuration reachable by toppling,
    anti-toppling and sorting.

    Repeats {topple the sink, stabilize, sort}; every step stays within
    the toppling-and-permuting equivalence class.
    """
    _require_sorted_compact(graph, config)
    current = config
    bound = sum(abs(x) for x in config.key()) + (graph.n + graph.d + 2) ** 2 + 16
    for _ in range(bound):
        if (
            is_nonnegative(current)
            and is_stable(graph, current)
            and is_recurrent(graph, current)
        ):
            return current
        bumped = Config(
            tuple(x + 1 for x in current.clique), tuple(x + 1 for x in current.independent)
        )
        settled = _stabilize_raw(graph, bumped).final
        current = Config(
            tuple(sorted(settled.clique, reverse=True)),
            tuple(sorted(settled.independent, reverse=True)),
        )
    raise InternalError(f"no recurrent representative found for {config}")


def class_report(graph: SplitGraph) -> list[list[str]]:
    """One row per sorted recurrent configuration: its class members as
    configuration strings, the recurrent member first."""
    from .asm import enumerate_sorted_recurrent, format_config

    return [
        [format_config(m) for m in class_members(graph, v)]
        for v in enumerate_sorted_recurrent(graph)
    ]


def class_members(graph: SplitGraph, config: Config) -> list[Config]:
    """The n+1 sorted quasi-stable non-negative configurations that are
    toppling-and-permuting equivalent to a sorted recurrent one.

    Walks the burning decomposition Ts TI^k0 (TK TI^k1) ... (TK TI^kn)
    with independent topplings taken eagerly, records the state before
    each sink/clique operator, and normalizes each state by the weight
    operator.  The input is the first member; validity and distinctness
    are enforced.
    """
    n, d = graph.n, graph.d
    _require_sorted_compact(graph, config)
    if not (is_nonnegative(config) and is_stable(graph, config) and is_recurrent(graph, config)):
        raise PreconditionError("class_members requires a sorted recurrent configuration")

    states = [config]
    current = apply(graph, TS, config)
    indep_budget = d
    for _ in range(n):
        while current.independent and current.independent[0] > n:
            current = apply(graph, TI, current)
            indep_budget -= 1
        states.append(current)
        if current.clique[0] <= n + d - 1:
            raise InternalError("burning stalled: maximal clique vertex is stable")
        current = apply(graph, TK, current)
    while current.independent and current.independent[0] > n:
        current = apply(graph, TI, current)
        indep_budget -= 1
    if indep_budget != 0 or current != config:
        raise InternalError("burning decomposition did not close up")

    members = []
    for state in states:
        w = weight(graph, state)
        for _ in range(w):
            state = apply(graph, TW, state)
        for _ in range(-w):
            state = apply(graph, TW_INV, state)
        if not (is_nonnegative(state) and is_quasistable(graph, state)):
            raise InternalError("weight normalization missed the quasi-stable window")
        members.append(state)

    sinks = {sink_height(m) % (n + d + 1) for m in members}
    if len(members) != n + 1 or len(set(members)) != n + 1 or len(sinks) != n + 1:
        raise InternalError("class members are not n+1 distinct configurations")
    if members[0] != config:
        raise InternalError("the recurrent configuration must head its own class")
    return members
