"""Schroder words, the configuration bijection, and the area/bounce statistics.

A Schroder word over {U, H, D} has equally many U's and D's and no prefix
with more D's than U's.  Drawn with U = (0,1), H = (1,1), D = (1,0) from
the origin, it is a Schroder path from (0,0) to (n+d, n+d) staying weakly
above the diagonal.
"""

from __future__ import annotations

from typing import Iterator

from .asm import Config, PreconditionError, SplitGraph, is_sorted_config

LETTERS = frozenset("UHD")


def is_schroder(word: str) -> bool:
    """Equal U/D counts and every prefix has #D <= #U. Bad letters are rejected."""
    if set(word) - LETTERS:
        return False
    balance = 0
    for ch in word:
        if ch == "U":
            balance += 1
        elif ch == "D":
            balance -= 1
            if balance < 0:
                return False
    return balance == 0


def enumerate_schroder(n: int, d: int) -> Iterator[str]:
    """All Schroder words with n U's, n D's, d H's, in lexicographic order."""
    word: list[str] = []

    def rec(u: int, dd: int, h: int, balance: int) -> Iterator[str]:
        if u == 0 and dd == 0 and h == 0:
            yield "".join(word)
            return
        # letters in alphabetical order D < H < U for lexicographic output
        if dd > 0 and balance > 0:
            word.append("D")
            yield from rec(u, dd - 1, h, balance - 1)
            word.pop()
        if h > 0:
            word.append("H")
            yield from rec(u, dd, h - 1, balance)
            word.pop()
        if u > 0:
            word.append("U")
            yield from rec(u - 1, dd, h, balance + 1)
            word.pop()

    return rec(n, n, d, 0)


def enumerate_words(n: int, d: int) -> Iterator[str]:
    """All words with n U's, n D's, d H's (no dominance condition)."""
    word: list[str] = []

    def rec(u: int, dd: int, h: int) -> Iterator[str]:
        if u == 0 and dd == 0 and h == 0:
            yield "".join(word)
            return
        if dd > 0:
            word.append("D")
            yield from rec(u, dd - 1, h)
            word.pop()
        if h > 0:
            word.append("H")
            yield from rec(u, dd, h - 1)
            word.pop()
        if u > 0:
            word.append("U")
            yield from rec(u - 1, dd, h)
            word.pop()

    return rec(n, n, d)


# ---------------------------------------------------------------------------
# the bijection with sorted recurrent configurations
# ---------------------------------------------------------------------------

def phi(word: str) -> Config:
    """Map a Schroder word to a sorted recurrent configuration.

    a_j + 1 is the number of non-U letters after the j-th U, and b_i is
    the number of D's after the i-th H.
    """
    if not is_schroder(word):
        raise PreconditionError(f"{word!r} is not a Schroder word")
    a_rev: list[int] = []
    b_rev: list[int] = []
    non_u = 0
    ds = 0
    for ch in reversed(word):
        if ch == "U":
            a_rev.append(non_u - 1)
        else:
            if ch == "H":
                b_rev.append(ds)
            else:
                ds += 1
            non_u += 1
    config = Config(tuple(reversed(a_rev)), tuple(reversed(b_rev)))
    if not is_sorted_config(config):
        raise PreconditionError(f"phi({word!r}) produced an unsorted configuration")
    return config


def phi_inv(config: Config) -> str:
    """Inverse of :func:`phi`; fails on configurations that are not recurrent.

    The j-th U goes after exactly n+d-1-a_j non-U letters and the i-th H
    after exactly n-b_i D's; recurrence is equivalent to the assembled
    word being Schroder, which is checked.
    """
    n = len(config.clique)
    d = len(config.independent)
    if not is_sorted_config(config):
        raise PreconditionError("phi_inv requires a sorted configuration")
    # non-U subword: place the i-th H after n - b_i D's
    h_after = [n - b for b in config.independent]
    if any(not 0 <= x <= n for x in h_after):
        raise PreconditionError(f"{config} is not recurrent (independent part out of range)")
    non_u: list[str] = []
    # h_after is weakly increasing (b is sorted), so a single merge pass works
    idx = 0
    for ds_before in range(n + 1):
        while idx < d and h_after[idx] == ds_before:
            non_u.append("H")
            idx += 1
        if ds_before < n:
            non_u.append("D")
    # interleave U's: the j-th U goes after n+d-1-a_j non-U letters
    u_after = [n + d - 1 - a for a in config.clique]
    if any(not 0 <= x <= n + d for x in u_after):
        raise PreconditionError(f"{config} is not recurrent (clique part out of range)")
    word: list[str] = []
    uj = 0
    for seen in range(n + d + 1):
        while uj < n and u_after[uj] == seen:
            word.append("U")
            uj += 1
        if seen < n + d:
            word.append(non_u[seen])
    out = "".join(word)
    if not is_schroder(out):
        raise PreconditionError(f"{config} is not recurrent")
    if phi(out) != config:
        raise PreconditionError(f"{config} is not recurrent (no Schroder preimage)")
    return out


_MIRROR = str.maketrans("UD", "DU")


def mirror(word: str) -> str:
    """Reverse the word and swap U with D; an involution on Schroder words."""
    return word[::-1].translate(_MIRROR)


# ---------------------------------------------------------------------------
# area
# ---------------------------------------------------------------------------

def area(word: str) -> int:
    """Lower triangles strictly between the path and the diagonal y = x.

    A lower triangle has vertex set {(i,j), (i+1,j), (i+1,j+1)}; walking
    the path, a D step crossing column x at height y leaves y-1-x of them
    below it in that column, an H step leaves y-x.
    """
    if not is_schroder(word):
        raise PreconditionError(f"{word!r} is not a Schroder word")
    x = y = total = 0
    for ch in word:
        if ch == "U":
            y += 1
        elif ch == "H":
            total += y - x
            x += 1
            y += 1
        else:
            total += y - 1 - x
            x += 1
    return total


def triangles(word: str) -> frozenset[tuple[int, int]]:
    """The set of lower triangles (i, j) between the path and the diagonal.

    area(word) is the size of this set.  Distinct words can share a
    triangle set (UDH and HUD both have none), so path comparisons use
    :func:`column_profile` instead.
    """
    if not is_schroder(word):
        raise PreconditionError(f"{word!r} is not a Schroder word")
    x = y = 0
    cells: list[tuple[int, int]] = []
    for ch in word:
        if ch == "U":
            y += 1
        elif ch == "H":
            cells.extend((x, j) for j in range(x + 1, y + 1))
            x += 1
            y += 1
        else:
            cells.extend((x, j) for j in range(x + 1, y))
            x += 1
    return frozenset(cells)


def column_profile(word: str) -> tuple[tuple[int, int], ...]:
    """Per column, the (entry, exit) heights of the step crossing it.

    A D step at height h gives (h, h); an H step starting at height y
    gives (y, y+1).  The profile determines the word.
    """
    if not is_schroder(word):
        raise PreconditionError(f"{word!r} is not a Schroder word")
    x = y = 0
    cols: list[tuple[int, int]] = []
    for ch in word:
        if ch == "U":
            y += 1
        elif ch == "H":
            cols.append((y, y + 1))
            x += 1
            y += 1
        else:
            cols.append((y, y))
            x += 1
    return tuple(cols)


def word_le(w1: str, w2: str) -> bool:
    """Geometric order: the path of w1 lies weakly below the path of w2.

    Comparing the sets of lower triangles alone cannot distinguish words
    such as UDH and HUD, so the region below the path (both half
    triangles of every cell) is what is compared; column profiles encode
    it exactly.
    """
    return all(
        lo1 <= lo2 and hi1 <= hi2
        for (lo1, hi1), (lo2, hi2) in zip(column_profile(w1), column_profile(w2))
    )


# ---------------------------------------------------------------------------
# bounce
# ---------------------------------------------------------------------------

def collapse(word: str) -> str:
    """Remove all H steps; the result is a Dyck word."""
    if not is_schroder(word):
        raise PreconditionError(f"{word!r} is not a Schroder word")
    return word.replace("H", "")


def dyck_bounce(dyck: str) -> tuple[int, list[tuple[int, int]]]:
    """Classical bounce of a Dyck word, with its peak points.

    The bounce path runs from (a, a) to the origin: move west to the top
    of the U step at the current level, then south to the diagonal, and
    repeat.  Returns the sum of the x-coordinates of the diagonal touch
    points (the initial corner excluded) and the peaks, top-most first.
    """
    if set(dyck) - {"U", "D"}:
        raise PreconditionError(f"{dyck!r} is not a Dyck word")
    if not is_schroder(dyck):
        raise PreconditionError(f"{dyck!r} is not a Dyck word")
    n = dyck.count("U")
    # x_of[y] = x-coordinate where the path first reaches height y
    x_of = [0] * (n + 1)
    ds = 0
    ys = 0
    for ch in dyck:
        if ch == "U":
            ys += 1
            x_of[ys] = ds
        else:
            ds += 1
    total = 0
    peaks: list[tuple[int, int]] = []
    y = n
    while y > 0:
        x = x_of[y]
        peaks.append((x, y))
        total += x
        y = x
    return total, peaks


def u_step_tops(word: str) -> list[tuple[int, int]]:
    """Top endpoint of each U step, in word order."""
    x = y = 0
    tops: list[tuple[int, int]] = []
    for ch in word:
        if ch == "U":
            y += 1
            tops.append((x, y))
        elif ch == "H":
            x += 1
            y += 1
        else:
            x += 1
    return tops


def schroder_peaks(word: str) -> list[tuple[int, int]]:
    """Peaks of the Schroder path, top-right first.

    The Dyck bounce peaks of the collapse sit on top of U steps; the same
    U steps of the uncollapsed word carry the Schroder peaks.
    """
    _, dyck_peaks = dyck_bounce(collapse(word))
    tops = u_step_tops(word)
    return [tops[y - 1] for _, y in dyck_peaks]


def bounce_haglund(word: str) -> int:
    """bounce of the collapse plus, for every H step, the peaks above it."""
    base, _ = dyck_bounce(collapse(word))
    peaks = schroder_peaks(word)
    x = y = 0
    extra = 0
    for ch in word:
        if ch == "U":
            y += 1
        elif ch == "H":
            extra += sum(1 for _, py in peaks if py > y)
            x += 1
            y += 1
        else:
            x += 1
    return base + extra


def bounce_loehr(word: str) -> int:
    """Sum over peaks of the first-quadrant squares to their left in the same row."""
    return sum(px for px, _ in schroder_peaks(word))


def schroder_bounce(word: str) -> int:
    """The bounce statistic; both formulations are computed and must agree."""
    h = bounce_haglund(word)
    l = bounce_loehr(word)
    if h != l:
        raise AssertionError(f"bounce formulations disagree on {word!r}: {h} != {l}")
    return h


def schroder_bounce_path(word: str) -> list[tuple[int, int]]:
    """Bounce path drawn directly on the Schroder path (experimental).

    Alternates west runs (blocked at the top of a U step of the word) and
    south runs (stopped on the main diagonal), inserting a (-1,-1) step
    whenever it is about to enter the anti-diagonal band of an H step.
    Returns the visited lattice points from (n+d, n+d) to (0, 0).
    """
    if not is_schroder(word):
        raise PreconditionError(f"{word!r} is not a Schroder word")
    size = word.count("U") + word.count("H")
    # upper band edge of the H starting at (a, b) is the line x + y = a + b + 2
    band_edges = set()
    x = y = 0
    for ch in word:
        if ch == "U":
            y += 1
        elif ch == "H":
            band_edges.add(x + y + 2)
            x += 1
            y += 1
        else:
            x += 1
    u_tops = set(u_step_tops(word))
    pos = (size, size)
    points = [pos]
    heading_west = True
    guard = 4 * size + 4
    while pos != (0, 0):
        # direction changes happen at the blocking point, before any band step
        if heading_west and pos in u_tops:
            heading_west = False
        elif not heading_west and pos[0] == pos[1]:
            heading_west = True
        if pos[0] + pos[1] in band_edges:
            pos = (pos[0] - 1, pos[1] - 1)
        elif heading_west:
            pos = (pos[0] - 1, pos[1])
        else:
            pos = (pos[0], pos[1] - 1)
        points.append(pos)
        guard -= 1
        if guard < 0:
            raise AssertionError(f"bounce path on {word!r} did not terminate")
    return points


# ---------------------------------------------------------------------------
# compression to the complete graph
# ---------------------------------------------------------------------------

def compress(graph: SplitGraph, config: Config) -> Config:
    """Drop the independent part: phi o (remove H) o phi_inv.

    The result is a sorted recurrent configuration on S(n, 0), i.e. the
    complete graph on n+1 vertices.
    """
    word = phi_inv(config)
    return phi(collapse(word))
