"""Sawtooth polyominoes and their toppling bounce paths.

A sawtooth polyomino of dimension (n+1, d) is a pair of paths from
(n+1, d) to the origin that touch only at their endpoints: the upper
path takes nw = (-1,1) and s = (0,-1) steps, the lower path w = (-1,0)
and s steps.  Words with n U's, n D's and d H's map onto candidate
pairs, landing on actual polyominoes exactly for Schroder words; sorted
recurrent configurations map onto them directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .asm import Config, InternalError, PreconditionError, SplitGraph
from . import schroder

CTI = "CTI"
ITC = "ITC"


@dataclass(frozen=True)
class SawtoothPolyomino:
    """Upper/lower step strings from (n+1, d) down to the origin.

    ``upper`` is over "NS" (N = nw step, S = s step), ``lower`` over
    "WS".  Step counts and endpoints are checked on construction;
    disjointness is a separate predicate (:func:`is_valid`) so that
    non-Schroder words still produce an inspectable object.
    """

    n: int
    d: int
    upper: str
    lower: str

    def __post_init__(self) -> None:
        n, d = self.n, self.d
        if n < 1 or d < 0:
            raise PreconditionError(f"bad dimension ({n + 1}, {d})")
        if set(self.upper) - set("NS") or set(self.lower) - set("WS"):
            raise PreconditionError("upper is over NS and lower over WS")
        if self.upper.count("N") != n + 1 or self.upper.count("S") != n + 1 + d:
            raise PreconditionError("upper path needs n+1 nw and n+1+d s steps")
        if self.lower.count("W") != n + 1 or self.lower.count("S") != d:
            raise PreconditionError("lower path needs n+1 w and d s steps")

    @property
    def dim(self) -> tuple[int, int]:
        return (self.n + 1, self.d)

    def upper_points(self) -> list[tuple[int, int]]:
        pts = [(self.n + 1, self.d)]
        x, y = pts[0]
        for ch in self.upper:
            if ch == "N":
                x, y = x - 1, y + 1
            else:
                x, y = x, y - 1
            pts.append((x, y))
        return pts

    def lower_points(self) -> list[tuple[int, int]]:
        pts = [(self.n + 1, self.d)]
        x, y = pts[0]
        for ch in self.lower:
            if ch == "W":
                x, y = x - 1, y
            else:
                x, y = x, y - 1
            pts.append((x, y))
        return pts

    def to_json(self) -> dict:
        return {"dim": [self.n + 1, self.d], "upper": self.upper, "lower": self.lower}


def polyomino_from_json(obj: dict) -> SawtoothPolyomino:
    n_plus_1, d = obj["dim"]
    return SawtoothPolyomino(int(n_plus_1) - 1, int(d), obj["upper"], obj["lower"])


def sts(word: str) -> SawtoothPolyomino:
    """Map a word of n U's, n D's and d H's to its path pair.

    Upper: an initial nw step, then nw per U and s per non-U, then a
    final s step.  Lower: s per H and w per D in word order, then a
    final w step.  The pair is a sawtooth polyomino iff the word is
    Schroder.
    """
    if set(word) - schroder.LETTERS:
        raise PreconditionError(f"word {word!r} has letters outside UHD")
    n, dn, d = word.count("U"), word.count("D"), word.count("H")
    if n != dn:
        raise PreconditionError(f"word {word!r} has {n} U's but {dn} D's")
    if n < 1:
        raise PreconditionError("need at least one U/D pair")
    upper = "N" + "".join("N" if ch == "U" else "S" for ch in word) + "S"
    lower = "".join("S" if ch == "H" else "W" for ch in word if ch != "U") + "W"
    return SawtoothPolyomino(n, d, upper, lower)


def is_valid(poly: SawtoothPolyomino) -> bool:
    """True iff the two paths share no point besides the two endpoints."""
    shared = set(poly.upper_points()) & set(poly.lower_points())
    return shared == {(poly.n + 1, poly.d), (0, 0)}


def from_config(graph: SplitGraph, config: Config) -> SawtoothPolyomino:
    """Map a sorted recurrent configuration directly to its polyomino.

    The lower path drops one s step per independent vertex at abscissa
    1 + grains; the upper path drops one nw step per clique vertex at a
    height measured from the staircase.  The result must agree with the
    word route sts(phi_inv(c)), which is asserted.
    """
    n, d = graph.n, graph.d
    a, b = config.clique, config.independent
    if len(a) != n or len(b) != d:
        raise PreconditionError("configuration does not fit the graph")

    # walk the upper path top-down: (n+1,d) -nw-> (n,d+1), then per column
    upper = ["N"]
    y = d + 1
    for j in range(n, 0, -1):
        y_low = 2 - j + a[n - j]  # column j carries the (n+1-j)-th largest count
        if y_low > y:
            raise PreconditionError(f"{config} is not recurrent (clique row collision)")
        upper.append("S" * (y - y_low))
        upper.append("N")
        y = y_low + 1
    upper.append("S" * y)

    # walk the lower path top-down: one s step per row, at x = 1 + b value
    lower = []
    x = n + 1
    for i in range(d, 0, -1):
        x_i = 1 + b[d - i]
        if x_i > x:
            raise PreconditionError(f"{config} is not recurrent (independent column collision)")
        lower.append("W" * (x - x_i))
        lower.append("S")
        x = x_i
    lower.append("W" * x)

    poly = SawtoothPolyomino(n, d, "".join(upper), "".join(lower))
    word_route = sts(schroder.phi_inv(config))
    if poly != word_route:
        raise InternalError(f"direct polyomino of {config} disagrees with the word route")
    return poly


# ---------------------------------------------------------------------------
# area
# ---------------------------------------------------------------------------

def area(poly: SawtoothPolyomino) -> int:
    """Unit squares with all four lattice corners inside the polyomino.

    A square counts iff its centre lies inside the closed curve
    upper + reversed lower (even-odd rule) and no nw step cuts it.
    """
    if not is_valid(poly):
        raise PreconditionError("area is defined for valid polyominoes only")
    verticals: list[tuple[int, int]] = []  # (x, lower y) of unit vertical segments
    diagonals: list[tuple[int, int]] = []  # (x, y) start of nw step, going to (x-1, y+1)
    for pts in (poly.upper_points(), poly.lower_points()):
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if x1 == x2:
                verticals.append((x1, min(y1, y2)))
            elif y1 != y2:
                diagonals.append((x1, y1))
    cut = {(x - 1, y) for x, y in diagonals}
    total = 0
    for sx in range(0, poly.n + 1):
        for sy in range(0, poly.n + poly.d + 2):
            if (sx, sy) in cut:
                continue
            crossings = sum(1 for x, y in verticals if y == sy and x >= sx + 1)
            # nw step from (x, y): its segment crosses the ray at x - 1/2
            crossings += sum(1 for x, y in diagonals if y == sy and x >= sx + 2)
            if crossings % 2 == 1:
                total += 1
    return total


# ---------------------------------------------------------------------------
# bounce paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BounceRecord:
    """A bounce path and its block sizes.

    For CTI the sizes read (p1, q1, ..., pk, qk), for ITC
    (q'1, p'1, ..., q'k, p'k); ``path`` lists the visited points from
    (n, d) to the origin.
    """

    mode: str
    sizes: tuple[int, ...]
    path: tuple[tuple[int, int], ...]

    def normalized(self) -> tuple[int, ...]:
        """Sizes with the trailing empty block stripped."""
        sizes = self.sizes
        while sizes and sizes[-1] == 0:
            sizes = sizes[:-1]
        return sizes


def cti_bounce(poly: SawtoothPolyomino) -> BounceRecord:
    """Bounce path that first travels nw to the upper path, then s to the
    lower path, from (n, d) to the origin; nw runs have sizes p_i and the
    following s run p_i + q_i."""
    if not is_valid(poly):
        raise PreconditionError("bounce paths require a valid polyomino")
    upper = set(poly.upper_points())
    lower = set(poly.lower_points())
    x, y = poly.n, poly.d
    path = [(x, y)]
    sizes: list[int] = []
    for _ in range(poly.n + poly.d + 2):
        p = 0
        while (x, y) not in upper:
            x, y = x - 1, y + 1
            path.append((x, y))
            p += 1
        s = 0
        while (x, y) not in lower:
            x, y = x, y - 1
            path.append((x, y))
            s += 1
        if s < p:
            raise InternalError("cti bounce s-run shorter than its nw-run")
        sizes.extend((p, s - p))
        if (x, y) == (0, 0):
            return BounceRecord(CTI, tuple(sizes), tuple(path))
    raise InternalError("cti bounce did not reach the origin")


def itc_bounce(poly: SawtoothPolyomino) -> BounceRecord:
    """Bounce path that first travels s to the lower path, then nw to the
    upper path; s runs have sizes q'_1 and then p'_{i-1} + q'_i, and a
    final run ending on the lower path contributes p'_k = 0."""
    if not is_valid(poly):
        raise PreconditionError("bounce paths require a valid polyomino")
    upper = set(poly.upper_points())
    lower = set(poly.lower_points())
    x, y = poly.n, poly.d
    path = [(x, y)]
    sizes: list[int] = []
    prev_p = 0
    for _ in range(poly.n + poly.d + 2):
        s = 0
        while (x, y) not in lower:
            x, y = x, y - 1
            path.append((x, y))
            s += 1
        if s < prev_p:
            raise InternalError("itc bounce s-run shorter than the preceding nw-run")
        q = s - prev_p
        if (x, y) == (0, 0):
            # a final descent longer than the last nw-run means one more
            # independent-only round, padded with p'_k = 0
            if q > 0:
                sizes.extend((q, 0))
            return BounceRecord(ITC, tuple(sizes), tuple(path))
        p = 0
        while (x, y) not in upper:
            x, y = x - 1, y + 1
            path.append((x, y))
            p += 1
        sizes.extend((q, p))
        prev_p = p
        if (x, y) == (0, 0):
            return BounceRecord(ITC, tuple(sizes), tuple(path))
    raise InternalError("itc bounce did not reach the origin")


def render_svg(
    poly: SawtoothPolyomino,
    overlays: tuple[str, ...] = (),
    cell: int = 32,
) -> str:
    """Deterministic SVG rendering; overlays may include "cti" and "itc"."""
    from .svg import render_polyomino

    return render_polyomino(poly, overlays=overlays, cell=cell)
