"""Bound polynomials, their roots, and the four inequality checks.

Two families of monic quadratics drive the lower bounds:

    G_y(x) = x^2 - (y^2 - 2y + 3) x + 1      (largest root g_frak(y), y > 1)
    H_y(x) = x^2 - 2 y x - 1                 (positive root G_frak(y), y > 0)

Useful exact facts, all verified in the test suite:
    G_y(y) = (1 - y)^3, so y sits strictly between the roots for y > 1;
    G_y(1/(2-y)) = (y-1)^3 / (2-y)^2 > 0, so g_frak(y) < 1/(2-y) on (1,2);
    g_frak(2u + 1) = G_frak(u)^2, linking the two families.

The checks consume finite-depth estimates, so "satisfied" is asymptotic
evidence, not proof; the slack is reported to make near-equality (the
extremal constructions) visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["BoundCheck", "g_frak", "G_frak", "check_theorem"]

#: Default tolerance on asymptotic comparisons.
CHECK_TOL = 0.05
#: An ordinary-exponent estimate above this counts as "effectively infinite"
#: when the uniform estimate pins the bound at its blow-up point.
INFINITE_THRESHOLD = 50.0


def g_frak(y: float) -> float:
    """Largest root of x^2 - (y^2 - 2y + 3) x + 1, for y > 1.

    Exceeds y, and stays below 1/(2-y) for 1 < y < 2.  Evaluated with the
    cancellation-free form b^2 - 4 = (y-1)^2 ((y-1)^2 + 4).
    """
    if y <= 1:
        raise ValueError("g_frak requires y > 1")
    d = y - 1.0
    b = d * d + 2.0
    root = (b + d * math.sqrt(d * d + 4.0)) / 2.0
    # One Newton polish; derivative 2x - b is sqrt(b^2-4) > 0 at the root.
    fx = root * root - b * root + 1.0
    root -= fx / (2.0 * root - b)
    return root


def G_frak(y: float) -> float:
    """Positive root y + sqrt(y^2 + 1) of x^2 - 2 y x - 1, for y > 0."""
    if y <= 0:
        raise ValueError("G_frak requires y > 0")
    return y + math.sqrt(y * y + 1.0)


@dataclass(frozen=True)
class BoundCheck:
    """Outcome of one theorem-style inequality check on estimates."""

    theorem: str
    lhs: float | None
    bound: float | None
    slack: float | None
    satisfied: bool | None
    applicable: bool
    tolerance: float
    inputs: dict
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "lhs": self.lhs,
            "bound": self.bound,
            "slack": self.slack,
            "satisfied": self.satisfied,
            "applicable": self.applicable,
            "tolerance": self.tolerance,
            "inputs": {k: v for k, v in sorted(self.inputs.items())},
            "note": self.note,
        }


def _not_applicable(theorem: str, inputs: dict, note: str, tol: float) -> BoundCheck:
    return BoundCheck(theorem, None, None, None, None, False, tol, inputs, note)


def check_theorem(
    which: str,
    estimates: dict,
    tolerance: float = CHECK_TOL,
    infinite_threshold: float = INFINITE_THRESHOLD,
) -> BoundCheck:
    """Evaluate one of the four lower-bound inequalities on estimates.

    T1: omega >= 1/(2 - omega_bar) for one number (infinite bound at
        omega_bar = 2, checked against ``infinite_threshold``).
    T2: min(omega_theta, omega_eta) >= varpi_psi^2, needs varpi_psi > 1.
    T3: max(omega_theta, omega_eta) >= g_frak(varpi_upsilon), needs
        varpi_upsilon > 1.
    T4: lattice form of T3.  The lattice estimates use the normalization in
        which omega_lattice = (max omega + 1)/2 and omega_bar_lattice =
        (varpi_upsilon + 1)/2, so the bound is
        (g_frak(2*omega_bar_lattice - 1) + 1)/2, which equals
        G_frak(w - 1) * (w - 1) + 1 at w = omega_bar_lattice via the root
        identity g_frak(2u + 1) = G_frak(u)^2.  Needs omega_bar_lattice > 1.

    Ineligible inputs give an inapplicable (not failed) check.
    """
    tol = tolerance
    if which == "T1":
        needed = ("omega_theta", "omega_bar_theta")
        if any(k not in estimates for k in needed):
            return _not_applicable(which, estimates, "missing inputs", tol)
        omega = estimates["omega_theta"]
        omega_bar = estimates["omega_bar_theta"]
        inputs = {k: estimates[k] for k in needed}
        if omega_bar >= 2.0:
            satisfied = omega >= infinite_threshold
            return BoundCheck(
                which, omega, math.inf, None, satisfied, True, tol, inputs,
                note=f"uniform estimate at blow-up point; threshold {infinite_threshold}",
            )
        bound = 1.0 / (2.0 - omega_bar)
        slack = omega - bound
        return BoundCheck(which, omega, bound, slack, slack >= -tol, True, tol, inputs)

    if which == "T2":
        needed = ("omega_theta", "omega_eta", "varpi_psi")
        if any(k not in estimates for k in needed):
            return _not_applicable(which, estimates, "missing inputs", tol)
        inputs = {k: estimates[k] for k in needed}
        vp = estimates["varpi_psi"]
        if vp <= 1.0:
            return _not_applicable(which, inputs, "varpi_psi <= 1", tol)
        lhs = min(estimates["omega_theta"], estimates["omega_eta"])
        bound = vp * vp
        slack = lhs - bound
        return BoundCheck(which, lhs, bound, slack, slack >= -tol, True, tol, inputs)

    if which == "T3":
        needed = ("omega_theta", "omega_eta", "varpi_upsilon")
        if any(k not in estimates for k in needed):
            return _not_applicable(which, estimates, "missing inputs", tol)
        inputs = {k: estimates[k] for k in needed}
        vu = estimates["varpi_upsilon"]
        if vu <= 1.0:
            return _not_applicable(which, inputs, "varpi_upsilon <= 1", tol)
        lhs = max(estimates["omega_theta"], estimates["omega_eta"])
        bound = g_frak(vu)
        slack = lhs - bound
        return BoundCheck(which, lhs, bound, slack, slack >= -tol, True, tol, inputs)

    if which == "T4":
        needed = ("omega_lattice", "omega_bar_lattice")
        if any(k not in estimates for k in needed):
            return _not_applicable(which, estimates, "missing inputs", tol)
        inputs = {k: estimates[k] for k in needed}
        w = estimates["omega_bar_lattice"]
        if w <= 1.0:
            return _not_applicable(which, inputs, "omega_bar_lattice <= 1", tol)
        lhs = estimates["omega_lattice"]
        bound = (g_frak(2.0 * w - 1.0) + 1.0) / 2.0
        slack = lhs - bound
        return BoundCheck(
            which, lhs, bound, slack, slack >= -tol, True, tol, inputs,
            note="bound = (g_frak(2w-1)+1)/2 = G_frak(w-1)*(w-1)+1",
        )

    raise ValueError(f"unknown theorem id {which!r}")
