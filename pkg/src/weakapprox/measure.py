"""Irrationality measure functions as exact step functions.

psi(t)     = min_{1 <= q <= t} ||q x||          (ordinary)
upsilon(t) = min_{1 <= q <= t} q ||q x||        (weak)

Both are positive, non-increasing, right-open piecewise-constant functions.
They are stored *merged*: a breakpoint is kept only where the value strictly
drops, so "the function is discontinuous at t" is equivalent to "t is a
stored breakpoint".  Values are exact rationals computed for the truncation
value of a partial-quotient prefix; the representation is valid only for
t < domain_end (the second-to-last convergent denominator), beyond which the
truncation stops tracking the underlying number.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .cf import PartialQuotients, qnorm_table
from .intmath import decimal_str, dist_to_int, parse_decimal

__all__ = [
    "StepFunction",
    "psi_step",
    "upsilon_step",
    "min_step",
    "brute_measure",
]

Rat = Union[int, Fraction]


@dataclass(frozen=True)
class StepFunction:
    """Positive non-increasing right-open step function.

    f(t) = values[k] for breakpoints[k] <= t < breakpoints[k+1], with the
    last piece ending (exclusively) at domain_end.  Stored breakpoints are
    exactly the discontinuities: consecutive equal values are merged at
    construction time.  Breakpoints are positive integers; evaluation is
    allowed at any rational t inside the domain.
    """

    breakpoints: tuple[int, ...]
    values: tuple[Fraction, ...]
    domain_end: int

    def __post_init__(self) -> None:
        bps = tuple(int(b) for b in self.breakpoints)
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        if len(bps) != len(vals) or not bps:
            raise ValueError("breakpoints and values must be nonempty and aligned")
        if bps[0] < 1:
            raise ValueError("breakpoints must be positive")
        for a, b in zip(bps, bps[1:]):
            if b <= a:
                raise ValueError("breakpoints must be strictly increasing")
        for v, w in zip(vals, vals[1:]):
            if w >= v:
                raise ValueError("values must strictly decrease at stored breakpoints")
        if vals[-1] <= 0:
            raise ValueError("values must be positive")
        if self.domain_end <= bps[-1]:
            raise ValueError("domain_end must exceed the last breakpoint")

    @property
    def domain_start(self) -> int:
        return self.breakpoints[0]

    def piece_index(self, t: Rat) -> int:
        """Index k of the piece containing t; raises outside the domain."""
        if t < self.breakpoints[0] or t >= self.domain_end:
            raise ValueError(f"t = {t} outside domain [{self.breakpoints[0]}, {self.domain_end})")
        lo, hi = 0, len(self.breakpoints) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.breakpoints[mid] <= t:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def value(self, t: Rat) -> Fraction:
        """f(t)."""
        return self.values[self.piece_index(t)]

    def left_limit(self, t: Rat) -> Fraction:
        """f(t-) = value just before t, for domain_start < t <= domain_end."""
        if t <= self.breakpoints[0] or t > self.domain_end:
            raise ValueError(f"left limit undefined at t = {t}")
        lo, hi = 0, len(self.breakpoints) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.breakpoints[mid] < t:
                lo = mid
            else:
                hi = mid - 1
        return self.values[lo]

    def is_discontinuous_at(self, t: Rat) -> bool:
        """True iff t is a stored breakpoint with a predecessor piece."""
        try:
            k = self.breakpoints.index(int(t)) if t == int(t) else -1
        except (ValueError, OverflowError):
            return False
        return k >= 1

    def pieces(self) -> Iterable[tuple[int, int, Fraction]]:
        """Yield (start, end, value) for each piece, end exclusive."""
        for k, (b, v) in enumerate(zip(self.breakpoints, self.values)):
            end = self.breakpoints[k + 1] if k + 1 < len(self.breakpoints) else self.domain_end
            yield b, end, v

    def to_csv(self) -> str:
        """CSV with header "t,value_num,value_den", one row per breakpoint."""
        buf = io.StringIO()
        buf.write("t,value_num,value_den\n")
        for b, v in zip(self.breakpoints, self.values):
            buf.write(
                f"{decimal_str(b)},{decimal_str(v.numerator)},{decimal_str(v.denominator)}\n"
            )
        return buf.getvalue()

    @staticmethod
    def from_csv(text: str, domain_end: int | None = None) -> "StepFunction":
        """Parse the to_csv format.

        The CSV schema does not carry the validity bound, so domain_end
        defaults to twice the last breakpoint.
        """
        rows = [line.strip() for line in text.splitlines() if line.strip()]
        if not rows or rows[0] != "t,value_num,value_den":
            raise ValueError("expected header 't,value_num,value_den'")
        bps: list[int] = []
        vals: list[Fraction] = []
        for row in rows[1:]:
            t_s, num_s, den_s = row.split(",")
            bps.append(parse_decimal(t_s))
            vals.append(Fraction(parse_decimal(num_s), parse_decimal(den_s)))
        if domain_end is None:
            domain_end = 2 * bps[-1]
        return StepFunction(tuple(bps), tuple(vals), domain_end)


def _merged(points: list[tuple[int, Fraction]], domain_end: int) -> StepFunction:
    """Build a StepFunction keeping only strict drops."""
    bps: list[int] = []
    vals: list[Fraction] = []
    for t, v in points:
        if not bps:
            bps.append(t)
            vals.append(v)
        elif v < vals[-1]:
            bps.append(t)
            vals.append(v)
    return StepFunction(tuple(bps), tuple(vals), domain_end)


def psi_step(pq: PartialQuotients) -> StepFunction:
    """The ordinary measure function of the prefix's truncation value.

    On [q_v, q_{v+1}) the minimum distance is ||q_v x||, so the breakpoints
    are the (deduplicated) convergent denominators and the values the exact
    distances.  Valid for t < q_{N-1}.
    """
    if pq.depth < 2:
        raise ValueError("need depth >= 2 to build a measure function")
    table = qnorm_table(pq)
    n = pq.depth
    domain_end = table[n - 1].q
    if domain_end < 2:
        raise ValueError("valid domain [1, q_{N-1}) is empty for this prefix")
    points = [(row.q, row.value) for row in table if row.index <= n - 2]
    return _merged(points, domain_end)


def upsilon_step(pq: PartialQuotients) -> StepFunction:
    """The weak measure function: running minimum of q_v * ||q_v x||.

    Consecutive equal values are merged away, so stored breakpoints are
    exactly the discontinuity points.
    """
    if pq.depth < 2:
        raise ValueError("need depth >= 2 to build a measure function")
    table = qnorm_table(pq)
    n = pq.depth
    domain_end = table[n - 1].q
    if domain_end < 2:
        raise ValueError("valid domain [1, q_{N-1}) is empty for this prefix")
    best: Fraction | None = None
    points: list[tuple[int, Fraction]] = []
    for row in table:
        if row.index > n - 2:
            break
        cand = row.q * row.value
        if best is None or cand < best:
            best = cand
        points.append((row.q, best))
    return _merged(points, domain_end)


def min_step(f: StepFunction, g: StepFunction) -> StepFunction:
    """Pointwise minimum of two step functions on their domain intersection."""
    start = max(f.domain_start, g.domain_start)
    end = min(f.domain_end, g.domain_end)
    if start >= end:
        raise ValueError("domains do not overlap")
    cuts = sorted({b for b in f.breakpoints + g.breakpoints if start <= b < end} | {start})
    points = [(t, min(f.value(t), g.value(t))) for t in cuts]
    return _merged(points, end)


def brute_measure(x: Fraction, t: int, kind: str = "ordinary") -> Fraction:
    """Direct definition: min over q = 1..t of ||q x|| (or q ||q x||).

    Exhaustive scan; the independent oracle for psi_step / upsilon_step.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if kind not in ("ordinary", "weak"):
        raise ValueError("kind must be 'ordinary' or 'weak'")
    x = Fraction(x)
    best: Fraction | None = None
    for q in range(1, t + 1):
        d = dist_to_int(q * x)
        cand = q * d if kind == "weak" else d
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best
