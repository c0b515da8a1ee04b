"""Finite-depth estimators of Diophantine exponents.

All exponents are asymptotic quantities; what can be computed from a prefix
is a window of local samples.  For the ordinary (liminf-type) exponent the
local sample at a convergent denominator q_v is

    -log ||q_v x|| / log q_v,

and the estimate is the window maximum.  For the uniform (limsup-type)
exponents the binding constraint of "sup t^c f(t) < infinity" for a
non-increasing step function sits at the left limits of its breakpoints, so
the sample at a stored breakpoint t_k is -log f(t_k-) / log t_k, shifted by
+1 for the weak kinds (their definitions normalize by t^(c-1)), and the
estimate is the window minimum.

Samples at denominator 1 are skipped (log 1 = 0), and the default window
drops early seed-effect samples and the last truncation-affected ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cf import PartialQuotients, qnorm_table
from .intmath import decimal_str, log_fraction, log_int
from .measure import StepFunction, min_step, psi_step, upsilon_step

__all__ = [
    "ExponentEstimate",
    "ordinary_exponent",
    "uniform_exponent",
    "exponent_report",
    "default_window",
]

#: Tolerance for exact-arithmetic comparisons in consistency flags.
EXACT_TOL = 1e-9
#: Tolerance for asymptotic (finite-depth) comparisons in consistency flags.
ASYMPTOTIC_TOL = 0.05

_MAX_KINDS = {"omega"}
_MIN_KINDS = {"omega_bar", "varpi_psi", "varpi_upsilon"}
#: Kinds whose defining normalization is t^(c-1); their samples get +1.
_WEAK_SHIFT = {"omega_bar": 1.0, "varpi_psi": 0.0, "varpi_upsilon": 1.0}


@dataclass(frozen=True)
class ExponentEstimate:
    """One finite-depth exponent estimate with its samples.

    ``value`` is the max of the samples for ordinary (liminf-type) kinds and
    the min for uniform (limsup-type) kinds; ``window`` records the sample
    range used, as (first, last) positions in the full eligible sample list.
    """

    kind: str
    value: float
    window: tuple[int, int]
    samples: tuple[tuple[int, float], ...] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.value,
            "window": list(self.window),
            "samples": [[decimal_str(t), s] for t, s in self.samples],
        }


def default_window(count: int) -> tuple[int, int]:
    """(front, back) drop counts adapted to how many samples exist.

    With plenty of samples, drop 3 seed-affected ones at the front and the
    2 nearest the truncation tail; with few, shrink the margins but always
    keep at least one sample.
    """
    if count < 1:
        raise ValueError("no samples to window")
    front = min(3, (count - 1) // 2)
    back = min(2, (count - 1 - front) // 2)
    return front, back


def _apply_window(
    samples: list[tuple[int, float]],
    window: tuple[int, int] | None,
    minimum: int,
) -> tuple[list[tuple[int, float]], tuple[int, int]]:
    if len(samples) < minimum:
        raise ValueError(f"need at least {minimum} samples, have {len(samples)}")
    if window is None:
        front, back = default_window(len(samples))
        lo, hi = front, len(samples) - back
    else:
        lo, hi = window
        lo = max(0, lo)
        hi = min(len(samples), hi)
    picked = samples[lo:hi]
    if not picked:
        raise ValueError(f"window ({lo}, {hi}) selects no samples")
    return picked, (lo, hi)


def ordinary_exponent(
    pq: PartialQuotients, window: tuple[int, int] | None = None
) -> ExponentEstimate:
    """Estimate the ordinary exponent: sup of c with ||q x|| < q^-c infinitely often.

    Samples -log||q_v x|| / log q_v over interior indices v <= N-2 with
    q_v >= 2; each is within o(1) of log q_{v+1} / log q_v.  Window max.
    """
    table = qnorm_table(pq)
    n = pq.depth
    samples: list[tuple[int, float]] = []
    for row in table:
        if row.index > n - 2 or row.q < 2:
            continue
        samples.append((row.q, -log_fraction(row.value) / log_int(row.q)))
    picked, win = _apply_window(samples, window, minimum=1)
    value = max(s for _, s in picked)
    return ExponentEstimate("omega", value, win, tuple(samples))


def uniform_exponent(
    f: StepFunction,
    kind: str,
    window: tuple[int, int] | None = None,
    minimum_samples: int = 3,
) -> ExponentEstimate:
    """Estimate a uniform (limsup-type) exponent from a merged step function.

    kind: "omega_bar" (weak function of one number), "varpi_psi" (minimum of
    two ordinary functions), "varpi_upsilon" (minimum of two weak functions).
    Samples at left limits of stored breakpoints >= 2 plus the left limit at
    the domain end (the binding point when the function rarely improves);
    window min.  Fewer than ``minimum_samples`` samples is an error: the
    default 3 makes one-piece functions unestimable rather than misleading.
    """
    if kind not in _MIN_KINDS:
        raise ValueError(f"unknown uniform kind {kind!r}")
    shift = _WEAK_SHIFT[kind]
    samples: list[tuple[int, float]] = []
    points = [t for t in f.breakpoints[1:] if t >= 2]
    if f.domain_end >= 2:
        points.append(f.domain_end)
    for t in points:
        samples.append((t, shift - log_fraction(f.left_limit(t)) / log_int(t)))
    picked, win = _apply_window(samples, window, minimum=minimum_samples)
    value = min(s for _, s in picked)
    return ExponentEstimate(kind, value, win, tuple(samples))


def _flag(flags: list[str], ok: bool, message: str) -> None:
    if not ok:
        flags.append(message)


def exponent_report(
    theta: PartialQuotients,
    eta: PartialQuotients | None = None,
    window: tuple[int, int] | None = None,
    exact_tol: float = EXACT_TOL,
    asymptotic_tol: float = ASYMPTOTIC_TOL,
) -> dict:
    """All number exponents for one prefix or a pair, with ordering flags.

    Flags report violations of the ordering relations
    omega >= omega_bar, 1 <= varpi_psi <= varpi_upsilon, omega >= 1;
    they must never fire on valid data.  Unlike the bare estimator ops, the
    report tolerates sparse uniform sample sets (bounded-quotient numbers
    can leave the weak running minimum with a single piece), falling back to
    the domain-end envelope sample.
    """
    flags: list[str] = []
    omega_t = ordinary_exponent(theta, window)
    omega_bar_t = uniform_exponent(upsilon_step(theta), "omega_bar", window,
                                   minimum_samples=1)
    report: dict = {
        "omega_theta": omega_t.value,
        "omega_bar_theta": omega_bar_t.value,
        "samples": {
            "omega_theta": omega_t.to_dict()["samples"],
            "omega_bar_theta": omega_bar_t.to_dict()["samples"],
        },
    }
    _flag(flags, omega_t.value >= 1 - exact_tol, "omega_theta below 1")
    _flag(
        flags,
        omega_t.value >= omega_bar_t.value - asymptotic_tol,
        "omega_theta below omega_bar_theta",
    )

    if eta is not None:
        omega_e = ordinary_exponent(eta, window)
        omega_bar_e = uniform_exponent(upsilon_step(eta), "omega_bar", window,
                                       minimum_samples=1)
        psi_min = min_step(psi_step(theta), psi_step(eta))
        ups_min = min_step(upsilon_step(theta), upsilon_step(eta))
        varpi_psi = uniform_exponent(psi_min, "varpi_psi", window, minimum_samples=1)
        varpi_ups = uniform_exponent(ups_min, "varpi_upsilon", window,
                                     minimum_samples=1)
        report.update(
            {
                "omega_eta": omega_e.value,
                "omega_bar_eta": omega_bar_e.value,
                "varpi_psi": varpi_psi.value,
                "varpi_upsilon": varpi_ups.value,
            }
        )
        report["samples"]["varpi_psi"] = varpi_psi.to_dict()["samples"]
        report["samples"]["varpi_upsilon"] = varpi_ups.to_dict()["samples"]
        _flag(flags, omega_e.value >= 1 - exact_tol, "omega_eta below 1")
        _flag(
            flags,
            omega_e.value >= omega_bar_e.value - asymptotic_tol,
            "omega_eta below omega_bar_eta",
        )
        _flag(
            flags,
            varpi_psi.value >= 1 - asymptotic_tol,
            "varpi_psi below 1",
        )
        _flag(
            flags,
            varpi_psi.value <= varpi_ups.value + asymptotic_tol,
            "varpi_psi above varpi_upsilon",
        )

    report["flags"] = flags
    return report
