"""Exact bivariate q,t-polynomials, computed five independent ways.

The generating function of (level, delayed toppling time) over sorted
recurrent configurations can be computed by brute force for either
toppling order (f_cti, f_itc), as the (area, bounce) sum over Schroder
words (qt_schroder), or by two explicit sums over composition pairs
(egge_sum, itc_sum).  All five agree; the CTI one conjecturally.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .asm import (
    PreconditionError,
    SplitGraph,
    enumerate_sorted_recurrent,
    level,
)
from . import schroder, toppling


class QtPolynomial:
    """Sparse polynomial in q and t with integer coefficients.

    Terms map (q-exponent, t-exponent) to a non-zero coefficient;
    equality is term-map equality.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], int] | None = None):
        clean = {}
        if terms:
            for (qe, te), c in terms.items():
                if c:
                    clean[(int(qe), int(te))] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "QtPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "QtPolynomial":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, qexp: int, texp: int, coeff: int = 1) -> "QtPolynomial":
        return cls({(qexp, texp): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QtPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "QtPolynomial") -> "QtPolynomial":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return QtPolynomial(out)

    def __sub__(self, other: "QtPolynomial") -> "QtPolynomial":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) - c
        return QtPolynomial(out)

    def __mul__(self, other) -> "QtPolynomial":
        if isinstance(other, int):
            return QtPolynomial({k: c * other for k, c in self.terms.items()})
        out: dict[tuple[int, int], int] = {}
        for (q1, t1), c1 in self.terms.items():
            for (q2, t2), c2 in other.terms.items():
                key = (q1 + q2, t1 + t2)
                out[key] = out.get(key, 0) + c1 * c2
        return QtPolynomial(out)

    __rmul__ = __mul__

    def swap_qt(self) -> "QtPolynomial":
        return QtPolynomial({(te, qe): c for (qe, te), c in self.terms.items()})

    def evaluate(self, q0: Fraction | int, t0: Fraction | int) -> Fraction:
        total = Fraction(0)
        for (qe, te), c in self.terms.items():
            total += c * Fraction(q0) ** qe * Fraction(t0) ** te
        return total

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        """(q-exponent, t-exponent, coefficient) sorted by (q, t) descending."""
        return [(qe, te, self.terms[(qe, te)]) for qe, te in sorted(self.terms, reverse=True)]

    def to_json(self) -> dict:
        return {"terms": [{"q": qe, "t": te, "c": c} for qe, te, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj: dict) -> "QtPolynomial":
        return cls({(int(t["q"]), int(t["t"])): int(t["c"]) for t in obj["terms"]})

    def to_latex(self) -> str:
        """Total degree descending; within a degree the q-heavy member of
        each {q^a t^b, q^b t^a} pair comes first, larger max exponent first."""
        if not self.terms:
            return "0"

        def key(expo: tuple[int, int]):
            qe, te = expo
            return (-(qe + te), -max(qe, te), 0 if qe >= te else 1)

        def power(sym: str, e: int) -> str:
            if e == 0:
                return ""
            if e == 1:
                return sym
            return f"{sym}^{{{e}}}" if e >= 10 else f"{sym}^{e}"

        parts: list[str] = []
        for qe, te in sorted(self.terms, key=key):
            c = self.terms[(qe, te)]
            body = power("q", qe) + power("t", te)
            if not body:
                mon = str(abs(c))
            elif abs(c) == 1:
                mon = body
            else:
                mon = f"{abs(c)}{body}"
            if not parts:
                parts.append(mon if c > 0 else f"-{mon}")
            else:
                parts.append(("+ " if c > 0 else "- ") + mon)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"QtPolynomial({self.to_latex()})"


def is_qt_symmetric(poly: QtPolynomial) -> bool:
    """True iff the coefficient map is invariant under swapping exponents."""
    return poly == poly.swap_qt()


# ---------------------------------------------------------------------------
# Gaussian binomials and multinomials
# ---------------------------------------------------------------------------

def q_binomial(m: int, k: int) -> QtPolynomial:
    """Gaussian binomial [m choose k]_q as a polynomial in q.

    Built by the recurrence [i, j] = [i-1, j-1] + q^j [i-1, j] on dense
    q-coefficient lists, so all coefficients stay exact integers.
    """
    if not 0 <= k <= m:
        raise PreconditionError(f"need 0 <= k <= m, got ({m}, {k})")
    prev: list[list[int]] = [[1]]
    for i in range(1, m + 1):
        cur: list[list[int]] = []
        for j in range(0, i + 1):
            if j == 0 or j == i:
                cur.append([1])
                continue
            left = prev[j - 1]
            right = [0] * j + prev[j]
            size = max(len(left), len(right))
            cur.append(
                [
                    (left[x] if x < len(left) else 0) + (right[x] if x < len(right) else 0)
                    for x in range(size)
                ]
            )
        prev = cur
    return QtPolynomial({(e, 0): c for e, c in enumerate(prev[k]) if c})


def q_multinomial(a: int, b: int, c: int) -> QtPolynomial:
    """[a+b+c choose a, b, c]_q = [a+b+c choose a]_q [b+c choose b]_q."""
    if a < 0 or b < 0 or c < 0:
        raise PreconditionError("multinomial arguments must be non-negative")
    return q_binomial(a + b + c, a) * q_binomial(b + c, b)


# ---------------------------------------------------------------------------
# the five computations
# ---------------------------------------------------------------------------

def _toppling_gf(n: int, d: int, sizes_of) -> QtPolynomial:
    graph = SplitGraph(n, d)
    out: dict[tuple[int, int], int] = {}
    for c in enumerate_sorted_recurrent(graph):
        w = toppling.wtopple_of_sizes(sizes_of(graph, c))
        key = (level(graph, c), w - (n + d))
        out[key] = out.get(key, 0) + 1
    return QtPolynomial(out)


def f_cti(n: int, d: int) -> QtPolynomial:
    """Sum of q^level t^(wtopple_CTI - (n+d)) over sorted recurrent configs."""
    return _toppling_gf(n, d, toppling.cti_sizes)


def f_itc(n: int, d: int) -> QtPolynomial:
    """Sum of q^level t^(wtopple_ITC - (n+d)) over sorted recurrent configs."""
    return _toppling_gf(n, d, toppling.itc_sizes)


def qt_schroder(n: int, d: int) -> QtPolynomial:
    """Sum of q^area t^bounce over Schroder words with n U's and d H's."""
    if n < 0 or d < 0:
        raise PreconditionError("need n, d >= 0")
    if n == 0:
        return QtPolynomial.one()  # the single word H^d has area 0 and bounce 0
    out: dict[tuple[int, int], int] = {}
    for w in schroder.enumerate_schroder(n, d):
        key = (schroder.area(w), schroder.schroder_bounce(w))
        out[key] = out.get(key, 0) + 1
    return QtPolynomial(out)


def egge_sum(n: int, d: int) -> QtPolynomial:
    """Explicit composition sum for the q,t-Schroder polynomial.

    Sums over strict compositions alpha of n (length k) and weak
    compositions beta of d (length k+1) a product of Gaussian binomial
    and trinomial factors with the printed q- and t-exponents.
    """
    if n < 1 or d < 0:
        raise PreconditionError("need n >= 1 and d >= 0")
    total = QtPolynomial.zero()
    for k in range(1, n + 1):
        for alpha in toppling.compositions(n, k):
            qexp = sum(x * (x - 1) // 2 for x in alpha)
            for beta in toppling._weak_compositions(d, k + 1):
                texp = sum(i * beta[i] for i in range(1, k + 1))
                texp += sum((i - 1) * alpha[i - 1] for i in range(2, k + 1))
                term = QtPolynomial.monomial(qexp, texp)
                term = term * q_binomial(beta[0] + alpha[0], beta[0])
                term = term * q_binomial(beta[k] + alpha[k - 1] - 1, beta[k])
                for i in range(1, k):
                    term = term * q_multinomial(beta[i], alpha[i], alpha[i - 1] - 1)
                total = total + term
    return total


def itc_sum(n: int, d: int) -> QtPolynomial:
    """Toppling-sequence sum for the q,t-ITC polynomial.

    One term per ITC toppling sequence: a product over rounds of
    q^C(a_i,2) [a_i+b_i+a_{i-1}-1 choose a_i, b_i, a_{i-1}-1]_q
    t^((i-1)(a_i+b_i)) with a_0 = 1.  Stated for d >= 1; the d = 0
    case uses the same formula with all b_i = 0.
    """
    if n < 1 or d < 0:
        raise PreconditionError("need n >= 1 and d >= 0")
    total = QtPolynomial.zero()
    for seq in toppling.all_itc_sequences(n, d):
        total = total + itc_sum_term(seq)
    return total


def itc_sum_term(seq: toppling.ItcSequence) -> QtPolynomial:
    """The single sequence's contribution to :func:`itc_sum`."""
    a = (1,) + seq.a
    b = (0,) + seq.b
    term = QtPolynomial.one()
    for i in range(1, seq.length + 1):
        qexp = a[i] * (a[i] - 1) // 2
        texp = (i - 1) * (a[i] + b[i])
        term = term * QtPolynomial.monomial(qexp, texp)
        term = term * q_multinomial(a[i], b[i], a[i - 1] - 1)
    return term


# ---------------------------------------------------------------------------
# fibers of the ITC sequence map
# ---------------------------------------------------------------------------

def extremal_words(seq: toppling.ItcSequence) -> tuple[str, str]:
    """The least and greatest Schroder words whose configuration realizes
    the given ITC toppling sequence, in the triangle-containment order.

    Both are mirrored block words; the final D-run of length a_k closes
    the path in each.
    """
    a, b = seq.a, seq.b
    k = seq.length
    lower_parts = [f"{'H' * b[0]}{'U' * a[0]}"]
    for i in range(1, k):
        lower_parts.append(f"{'D' * a[i - 1]}{'H' * b[i]}{'U' * a[i]}")
    lower_parts.append("D" * a[k - 1])
    w_lower = schroder.mirror("".join(lower_parts))

    upper_parts = [f"{'U' * a[0]}{'H' * b[0]}"]
    for i in range(1, k):
        upper_parts.append(f"D{'U' * a[i]}{'H' * b[i]}{'D' * (a[i - 1] - 1)}")
    upper_parts.append("D" * a[k - 1])
    w_upper = schroder.mirror("".join(upper_parts))

    for w in (w_lower, w_upper):
        if not schroder.is_schroder(w):
            raise PreconditionError(f"sequence {seq} yields non-Schroder extremal word {w!r}")
    return w_lower, w_upper


def hexagon_shuffle_gf(a: int, b: int, c: int) -> QtPolynomial:
    """Area generating function over the shuffles of D^a, H^b, U^c.

    Each word is weighted by the lower triangles it encloses against the
    bottom word D^a H^b U^c; the count equals the word's inversion number
    under D < H < U, and the sum is asserted to be the q-multinomial.
    """
    if a < 0 or b < 0 or c < 0:
        raise PreconditionError("shuffle sizes must be non-negative")
    out: dict[tuple[int, int], int] = {}

    def tri_under(word: str) -> int:
        # lower triangles weakly below the path, no diagonal cutoff
        x = y = total = 0
        for ch in word:
            if ch == "U":
                y += 1
            elif ch == "H":
                total += y + 1
                x += 1
                y += 1
            else:
                total += y
                x += 1
        return total

    def inversions(word: str) -> int:
        rank = {"D": 0, "H": 1, "U": 2}
        inv = 0
        seen = [0, 0, 0]
        for ch in reversed(word):
            r = rank[ch]
            inv += sum(seen[:r])
            seen[r] += 1
        return inv

    base = tri_under("D" * a + "H" * b + "U" * c)
    words: list[str] = []

    def rec(word: list[str], na: int, nb: int, nc: int) -> None:
        if na == nb == nc == 0:
            words.append("".join(word))
            return
        if na:
            word.append("D")
            rec(word, na - 1, nb, nc)
            word.pop()
        if nb:
            word.append("H")
            rec(word, na, nb - 1, nc)
            word.pop()
        if nc:
            word.append("U")
            rec(word, na, nb, nc - 1)
            word.pop()

    rec([], a, b, c)
    for w in words:
        enclosed = tri_under(w) - base
        if enclosed != inversions(w):
            raise AssertionError(f"enclosed triangles != inversions for {w!r}")
        out[(enclosed, 0)] = out.get((enclosed, 0), 0) + 1
    gf = QtPolynomial(out)
    if gf != q_multinomial(a, b, c):
        raise AssertionError(f"shuffle gf differs from q-multinomial at ({a},{b},{c})")
    return gf


def _shuffles(nd: int, nh: int, nu: int) -> Iterator[str]:
    """All distinct interleavings of D^nd, H^nh, U^nu."""
    word: list[str] = []

    def rec(a: int, b: int, c: int) -> Iterator[str]:
        if a == b == c == 0:
            yield "".join(word)
            return
        for ch, left in (("D", a), ("H", b), ("U", c)):
            if left:
                word.append(ch)
                yield from rec(a - (ch == "D"), b - (ch == "H"), c - (ch == "U"))
                word.pop()

    return rec(nd, nh, nu)


def fiber_words(seq: toppling.ItcSequence) -> list[str]:
    """All Schroder words whose configuration realizes the ITC sequence.

    Built in mirrored form as the concatenation, over rounds i, of an
    arbitrary interleaving of D^(a_{i-1}-1), H^(b_i), U^(a_i) (with
    a_0 = 1), a mandatory D between consecutive rounds, and a closing
    D-run of length a_k; commuting letters within a round's block is
    exactly what preserves the toppling sequence.
    """
    a = (1,) + seq.a
    b = (0,) + seq.b
    k = seq.length
    prefixes = [""]
    for i in range(1, k + 1):
        sep = "D" if i > 1 else ""
        prefixes = [
            p + sep + block
            for p in prefixes
            for block in _shuffles(a[i - 1] - 1, b[i], a[i])
        ]
    closing = "D" * a[k]
    out = [schroder.mirror(p + closing) for p in prefixes]
    for w in out:
        if not schroder.is_schroder(w):
            raise AssertionError(f"fiber construction of {seq} produced non-Schroder {w!r}")
    return out


def itc_fibers(n: int, d: int) -> dict[toppling.ItcSequence, list[str]]:
    """Group the mirrored words of all sorted recurrent configurations by
    their ITC toppling sequence."""
    graph = SplitGraph(n, d)
    fibers: dict[toppling.ItcSequence, list[str]] = {}
    for c in enumerate_sorted_recurrent(graph):
        seq = toppling.itc_sequence_of_sizes(toppling.itc_sizes(graph, c))
        w = schroder.mirror(schroder.phi_inv(c))
        fibers.setdefault(seq, []).append(w)
    return fibers
