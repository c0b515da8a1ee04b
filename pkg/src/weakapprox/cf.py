"""Exact continued-fraction engine.

A number is represented only by a finite prefix of partial quotients
``[a0; a1, ..., aN]``; every downstream quantity is computed exactly (as a
``Fraction``) for the rational truncation value of that prefix.  The
distance table is trustworthy as a stand-in for the underlying irrational
only strictly inside the prefix, which is why measure functions built on
top of it carry an explicit validity bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .intmath import decimal_str, dist_to_int, parse_decimal

__all__ = [
    "PartialQuotients",
    "Convergent",
    "ExactDistance",
    "convergents",
    "truncation_value",
    "qnorm_table",
    "denominator_sequence",
]


@dataclass(frozen=True)
class PartialQuotients:
    """A continued-fraction prefix [a0; a1, ..., aN].

    ``a0`` may be any integer; the tail entries must all be >= 1 and there
    must be at least one of them.
    """

    a0: int
    tail: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tail", tuple(int(a) for a in self.tail))
        if len(self.tail) < 1:
            raise ValueError("prefix needs at least one partial quotient after a0")
        for i, a in enumerate(self.tail):
            if a < 1:
                raise ValueError(f"tail entry a{i + 1} = {a} must be >= 1")

    @property
    def depth(self) -> int:
        """Number of tail entries N."""
        return len(self.tail)

    def to_json(self) -> str:
        """Serialize with arbitrary-precision integers as decimal strings."""
        return json.dumps(
            {"a0": decimal_str(self.a0), "tail": [decimal_str(a) for a in self.tail]},
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "PartialQuotients":
        data = json.loads(text)
        return PartialQuotients(
            parse_decimal(str(data["a0"])),
            tuple(parse_decimal(str(a)) for a in data["tail"]),
        )

    @staticmethod
    def parse(text: str) -> "PartialQuotients":
        """Parse the bracket notation "[a0;a1,a2,...]"."""
        s = text.strip()
        if s.startswith("["):
            s = s[1:]
        if s.endswith("]"):
            s = s[:-1]
        if ";" not in s:
            raise ValueError("expected '[a0;a1,...]' notation")
        head, _, rest = s.partition(";")
        tail = tuple(int(p) for p in rest.split(",") if p.strip() != "")
        return PartialQuotients(int(head), tail)


@dataclass(frozen=True)
class Convergent:
    """One convergent p/q of a prefix, with its index."""

    index: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass(frozen=True)
class ExactDistance:
    """||q * x|| for the truncation value x, as an exact rational.

    ``sandwich_ok`` marks indices where both two-sided bounds
    1/(2 q_{v+1}) < ||q_v x|| < 1/q_{v+1}   and
    1/(a_{v+1}+2) < q_v ||q_v x|| < 1/a_{v+1}
    are guaranteed; ``tail_degenerate`` marks the final entry, whose value
    reflects the truncation only (q_N * x is an integer, so it is exactly 0).
    """

    index: int
    q: int
    value: Fraction
    sandwich_ok: bool = True
    tail_degenerate: bool = False


def convergents(pq: PartialQuotients) -> list[Convergent]:
    """All convergents (p0,q0), ..., (pN,qN) by the standard recurrence.

    p_v = a_v p_{v-1} + p_{v-2},  q_v = a_v q_{v-1} + q_{v-2}.
    """
    p_prev, q_prev = 1, 0
    p, q = pq.a0, 1
    out = [Convergent(0, p, q)]
    for i, a in enumerate(pq.tail, start=1):
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append(Convergent(i, p, q))
    return out


def truncation_value(pq: PartialQuotients) -> Fraction:
    """The exact rational value of the prefix (equals the last convergent)."""
    c = convergents(pq)[-1]
    return Fraction(c.p, c.q)


def denominator_sequence(pq: PartialQuotients) -> list[tuple[int, int]]:
    """(index, q) pairs with duplicates removed, strictly increasing in q.

    When a1 = 1 the recurrence gives q0 = q1 = 1; the later index wins, since
    its convergent is the better approximation at that denominator.
    """
    out: list[tuple[int, int]] = []
    for c in convergents(pq):
        if out and out[-1][1] == c.q:
            out[-1] = (c.index, c.q)
        else:
            out.append((c.index, c.q))
    return out


def qnorm_table(pq: PartialQuotients) -> list[ExactDistance]:
    """Exact distances ||q_v * x|| for v = 0..N, x the truncation value.

    Distances are genuine nearest-integer distances (at v = 0 with a1 = 1 the
    nearest integer is a0 + 1, not p0).  The two-sided bounds hold exactly for
    v <= N-2, with two corner exclusions forced by truncation: v = 0 when
    q1 = q0 = 1 (a duplicated denominator, outside the strictly increasing
    sequence the bounds are stated for), and v = N-2 when the prefix ends in
    quotient 1 (the non-canonical form of a shorter prefix, where the lower
    bound on q_v ||q_v x|| is attained with equality).  The final entry v = N
    is exactly zero and flagged tail-degenerate.
    """
    n = pq.depth
    if n < 2:
        raise ValueError("need at least two tail entries for a usable distance table")
    conv = convergents(pq)
    pn, qn = conv[-1].p, conv[-1].q
    x = Fraction(pn, qn)
    out: list[ExactDistance] = []
    for c in conv:
        val = dist_to_int(c.q * x)
        eligible = (
            c.index <= n - 2
            and not (c.index == 0 and pq.tail[0] == 1)
            and not (c.index == n - 2 and pq.tail[-1] == 1)
        )
        out.append(
            ExactDistance(
                index=c.index,
                q=c.q,
                value=val,
                sandwich_ok=eligible,
                tail_degenerate=c.index == n,
            )
        )
    return out


def evaluate_nested(pq: PartialQuotients) -> Fraction:
    """Bottom-up evaluation of the nested fraction; an oracle for truncation_value."""
    x = Fraction(pq.tail[-1])
    for a in reversed(pq.tail[:-1]):
        x = a + 1 / x
    return pq.a0 + 1 / x


def format_prefix(pq: PartialQuotients, max_terms: int = 12) -> str:
    """Human-readable '[a0;a1,...]' with long tails elided."""
    shown: Sequence[int] = pq.tail[:max_terms]
    body = ",".join(decimal_str(a) for a in shown)
    if len(pq.tail) > max_terms:
        body += ",..."
    return f"[{pq.a0};{body}]"
