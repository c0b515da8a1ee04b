"""Executable combinatorics of two interleaved step functions.

Given two positive non-increasing right-open step functions u (breakpoints
q_1 < q_2 < ...) and v (breakpoints s_1 < s_2 < ...), the two hypotheses

  (a) every full v-interval [s_m, s_{m+1}) in the window contains a point
      with u < v strictly;
  (b) every full u-interval [q_n, q_{n+1}) in the window contains a point
      with v < u strictly;

force the existence of index pairs (n*, m*) such that

  u is discontinuous at q_{n*},
  v is discontinuous at s_{m*},
  q_{n*} < s_{m*} < q_{n*+1} < s_{m*+1},
  u(s_{m*}) < v(s_{m*}-)  and  v(q_{n*+1}-) < u(q_{n*+1}-).

This module checks the hypotheses exactly (on a step function the witness
point of (a) can be taken at the right end of the interval, so each interval
reduces to one exact rational comparison), scans for all witness pairs, and
re-verifies each witness clause by direct evaluation.  Because measure-side
step functions are stored merged, "discontinuous at t" is simply "t is a
stored breakpoint with a predecessor".
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .intmath import decimal_str, fraction_str
from .measure import StepFunction

__all__ = [
    "StepPair",
    "Witness",
    "ConditionReport",
    "GeneratedPair",
    "check_conditions",
    "find_witnesses",
    "verify_witness",
    "random_step_pair",
]

Rat = Union[int, Fraction]

#: Full breakpoint intervals this close to the window edge are not scanned;
#: truncated boundary pieces can spuriously satisfy or break the clauses.
BOUNDARY_MARGIN = 2


@dataclass(frozen=True)
class StepPair:
    """Two step functions with a common evaluation window."""

    u: StepFunction
    v: StepFunction
    window: tuple[int, int] | None = None

    def effective_window(self) -> tuple[int, int]:
        lo = max(self.u.domain_start, self.v.domain_start)
        hi = min(self.u.domain_end, self.v.domain_end)
        if self.window is not None:
            lo = max(lo, self.window[0])
            hi = min(hi, self.window[1])
        if lo >= hi:
            raise ValueError("empty window")
        return lo, hi


@dataclass(frozen=True)
class Witness:
    """Index pair realizing the interleaving and both strict inequalities.

    nu_star / mu_star index into the stored breakpoints of u / v.
    """

    nu_star: int
    mu_star: int
    q_nu: int
    s_mu: int
    q_nu1: int
    s_mu1: int
    u_at_s: Fraction
    v_before_s: Fraction
    v_before_q1: Fraction
    u_before_q1: Fraction

    def to_dict(self) -> dict:
        return {
            "nu_star": self.nu_star,
            "mu_star": self.mu_star,
            "q_nu": decimal_str(self.q_nu),
            "s_mu": decimal_str(self.s_mu),
            "q_nu_plus_1": decimal_str(self.q_nu1),
            "s_mu_plus_1": decimal_str(self.s_mu1),
            "u_at_s_mu": fraction_str(self.u_at_s),
            "v_left_at_s_mu": fraction_str(self.v_before_s),
            "v_left_at_q_nu_plus_1": fraction_str(self.v_before_q1),
            "u_left_at_q_nu_plus_1": fraction_str(self.u_before_q1),
        }


@dataclass(frozen=True)
class ConditionReport:
    """Interval-by-interval outcome of hypotheses (a) and (b)."""

    a_holds: bool
    b_holds: bool
    a_witnesses: tuple[tuple[int, Rat], ...]  # (v-interval index, t*)
    b_witnesses: tuple[tuple[int, Rat], ...]  # (u-interval index, t**)
    a_failures: tuple[int, ...]
    b_failures: tuple[int, ...]


def _full_intervals(f: StepFunction, lo: int, hi: int) -> list[tuple[int, int, int]]:
    """(piece index, clipped start, end) for pieces whose stored upper
    breakpoint lies inside [lo, hi].

    The lower end may be clipped at lo (the value is still f's piece value
    there); pieces cut off at the top are excluded, since the drop that ends
    them is not visible inside the window.
    """
    out = []
    for k in range(len(f.breakpoints) - 1):
        start = max(f.breakpoints[k], lo)
        end = f.breakpoints[k + 1]
        if end <= hi and start < end:
            out.append((k, start, end))
    return out


def _interval_witness(
    upper: StepFunction, lower_val: Fraction, start: int, end: int
) -> Rat | None:
    """A point t in [start, end) with upper(t) < lower_val, else None.

    upper is non-increasing, so its minimum on the interval is its left
    limit at the interval end; the witness can be placed at the start of
    upper's last piece inside the interval.
    """
    if upper.left_limit(end) >= lower_val:
        return None
    k = upper.piece_index(end - 1) if end - 1 >= upper.domain_start else None
    if k is None:
        return start
    return max(start, upper.breakpoints[k])


def check_conditions(pair: StepPair) -> ConditionReport:
    """Exact per-interval evaluation of hypotheses (a) and (b).

    The window must contain at least 2 checkable breakpoint intervals of
    each function; the overall flags are the conjunction over those
    intervals.
    """
    lo, hi = pair.effective_window()
    u, v = pair.u, pair.v
    v_ints = _full_intervals(v, lo, hi)
    u_ints = _full_intervals(u, lo, hi)
    if len(v_ints) < 2 or len(u_ints) < 2:
        raise ValueError("window too small: need >= 2 checkable intervals per side")

    a_wit: list[tuple[int, Rat]] = []
    a_fail: list[int] = []
    for k, start, end in v_ints:
        t_star = _interval_witness(u, v.values[k], start, end)
        if t_star is None:
            a_fail.append(k)
        else:
            a_wit.append((k, t_star))

    b_wit: list[tuple[int, Rat]] = []
    b_fail: list[int] = []
    for k, start, end in u_ints:
        t_star = _interval_witness(v, u.values[k], start, end)
        if t_star is None:
            b_fail.append(k)
        else:
            b_wit.append((k, t_star))

    return ConditionReport(
        a_holds=not a_fail,
        b_holds=not b_fail,
        a_witnesses=tuple(a_wit),
        b_witnesses=tuple(b_wit),
        a_failures=tuple(a_fail),
        b_failures=tuple(b_fail),
    )


def find_witnesses(pair: StepPair, margin: int = BOUNDARY_MARGIN) -> list[Witness]:
    """All index pairs satisfying the five witness clauses, interior only.

    Scans u-breakpoint indices with at least ``margin`` full intervals
    between them and the window edge (and likewise for v), using the
    interleaving clause to prune; an empty result on a narrow window is
    valid output.
    """
    lo, hi = pair.effective_window()
    u, v = pair.u, pair.v
    out: list[Witness] = []

    u_idx = [k for k in range(len(u.breakpoints)) if lo <= u.breakpoints[k] < hi]
    v_idx = [k for k in range(len(v.breakpoints)) if lo <= v.breakpoints[k] < hi]
    if len(u_idx) <= 2 * margin or len(v_idx) <= 2 * margin:
        return out
    u_int = u_idx[margin:-margin] if margin else u_idx
    v_int = v_idx[margin:-margin] if margin else v_idx

    for nu in u_int:
        if nu + 1 >= len(u.breakpoints) or nu < 1:
            continue
        q0, q1 = u.breakpoints[nu], u.breakpoints[nu + 1]
        if u.values[nu] >= u.values[nu - 1]:
            continue  # u continuous at q0 (cannot happen for merged storage)
        for mu in v_int:
            if mu + 1 >= len(v.breakpoints) or mu < 1:
                continue
            s0, s1 = v.breakpoints[mu], v.breakpoints[mu + 1]
            if s0 <= q0:
                continue
            if s0 >= q1:
                break  # v_int is increasing; interleaving now impossible
            if not (q1 < s1):
                continue
            if v.values[mu] >= v.values[mu - 1]:
                continue
            u_at_s = u.value(s0)
            v_before_s = v.left_limit(s0)
            if not u_at_s < v_before_s:
                continue
            v_before_q1 = v.left_limit(q1)
            u_before_q1 = u.left_limit(q1)
            if not v_before_q1 < u_before_q1:
                continue
            out.append(
                Witness(
                    nu_star=nu,
                    mu_star=mu,
                    q_nu=q0,
                    s_mu=s0,
                    q_nu1=q1,
                    s_mu1=s1,
                    u_at_s=u_at_s,
                    v_before_s=v_before_s,
                    v_before_q1=v_before_q1,
                    u_before_q1=u_before_q1,
                )
            )
    return out


def verify_witness(pair: StepPair, w: Witness) -> bool:
    """Independent re-check of all five clauses by direct evaluation."""
    u, v = pair.u, pair.v
    try:
        checks = (
            u.is_discontinuous_at(w.q_nu),
            v.is_discontinuous_at(w.s_mu),
            w.q_nu < w.s_mu < w.q_nu1 < w.s_mu1,
            u.breakpoints[w.nu_star] == w.q_nu,
            u.breakpoints[w.nu_star + 1] == w.q_nu1,
            v.breakpoints[w.mu_star] == w.s_mu,
            v.breakpoints[w.mu_star + 1] == w.s_mu1,
            u.value(w.s_mu) < v.left_limit(w.s_mu),
            v.left_limit(w.q_nu1) < u.left_limit(w.q_nu1),
        )
    except (ValueError, IndexError):
        return False
    return all(checks)


@dataclass(frozen=True)
class GeneratedPair:
    """Output of the seeded generator, with the designed outcome attached."""

    pair: StepPair
    alternating: bool
    expected_failure: str | None  # None, "a", or "b"


def random_step_pair(
    seed: int,
    pieces: int = 8,
    value_decay: Fraction = Fraction(1, 2),
    max_gap: int = 6,
    alternation: bool = True,
) -> GeneratedPair:
    """Deterministic random pair whose minimum alternates (or not).

    With alternation on, breakpoints interleave q_1 < s_1 < q_2 < s_2 < ...
    and the values interleave strictly downward
    u_1 > v_1 > u_2 > v_2 > ..., which forces hypotheses (a) and (b) on the
    interior.  With alternation off, one function (chosen by the seed)
    dominates everywhere, breaking exactly one hypothesis.
    """
    if pieces < 5:
        raise ValueError("need at least 5 pieces per side")
    if not (0 < value_decay < 1):
        raise ValueError("value_decay must be in (0, 1)")
    if max_gap < 1:
        raise ValueError("max_gap must be >= 1")
    rng = random.Random(seed)

    q_bps: list[int] = []
    s_bps: list[int] = []
    t = rng.randint(1, 3)
    for _ in range(pieces):
        q_bps.append(t)
        t += rng.randint(1, max_gap)
        s_bps.append(t)
        t += rng.randint(1, max_gap)
    domain_end = t + rng.randint(1, max_gap)

    # Strictly interleaved decreasing values u_k > v_k > u_{k+1} > ...
    levels: list[Fraction] = []
    val = Fraction(1)
    for _ in range(2 * pieces):
        levels.append(val)
        # keep each drop strict but irregular
        val *= value_decay * Fraction(rng.randint(2, 9), 10) + Fraction(1, 100)
    u_vals = levels[0::2]
    v_vals = levels[1::2]

    if not alternation:
        # Push v above u everywhere: v can never be strictly below u, so (b)
        # fails; u stays strictly below v, so (a) holds (or vice versa).
        side = rng.choice(("a", "b"))
        if side == "a":
            # u >= v everywhere breaks (a): raise u above v's start value.
            u_vals = [v_vals[0] * 2 + v for v in u_vals]
            expected = "a"
        else:
            v_vals = [u_vals[0] * 2 + u for u in v_vals]
            expected = "b"
        pair = StepPair(
            StepFunction(tuple(q_bps), tuple(u_vals), domain_end),
            StepFunction(tuple(s_bps), tuple(v_vals), domain_end),
        )
        return GeneratedPair(pair, False, expected)

    pair = StepPair(
        StepFunction(tuple(q_bps), tuple(u_vals), domain_end),
        StepFunction(tuple(s_bps), tuple(v_vals), domain_end),
    )
    return GeneratedPair(pair, True, None)
