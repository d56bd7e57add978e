"""Interference analysis of context tables.

For each b-outcome the deviation ``delta(beta) = p_b(beta) - sum_alpha
p_a(alpha) * p(beta/alpha)`` measures the failure of the classical formula
of total probability. Normalizing by twice the geometric mean of the
factorized terms gives the interference coefficient

    lambda(beta) = delta(beta) / (2 * sqrt(prod_alpha p_a(alpha) * p(beta/alpha)))

whose size decides which amplitude representation exists:

* ``|lambda| <= 1`` at every outcome — *trigonometric*: a complex amplitude
  exists and ``lambda = cos(theta)``;
* ``|lambda| >= 1`` at every outcome, somewhere strictly — *hyperbolic*: a
  split-complex amplitude exists and ``lambda = sign * cosh(theta)``;
* one strictly below and one strictly above 1 — *mixed*: classified but not
  representable;
* a vanishing normalizer — *degenerate*: representable only where the
  deviation vanishes with it (then ``lambda := 0``), as happens for
  filtration contexts.

Either way the reconstruction ``p_b(beta) = sum_alpha p_a(alpha) *
p(beta/alpha) + denominator(beta) * K(beta)`` with ``K = cos(theta)`` or
``sign * cosh(theta)`` reproduces the marginal identically; this is what
:func:`ftp_with_interference` verifies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import MissingDataError, RepresentationError
from .model import EPS_PROB, ContextData, delta, validate_context_data

#: Half-width of the numeric window above 1 in which |lambda| is snapped to
#: the trigonometric boundary. Statistical estimates straddle the boundary;
#: anything beyond the window is genuinely hyperbolic.
CLAMP_TOL = 1e-9


class Classification(str, Enum):
    TRIGONOMETRIC = "trigonometric"
    HYPERBOLIC = "hyperbolic"
    MIXED = "mixed-hyper-trigonometric"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ClampEvent:
    outcome: int
    raw: float
    clamped: float

    def to_dict(self) -> dict:
        return {"outcome": self.outcome, "raw": self.raw, "clamped": self.clamped}


@dataclass(frozen=True)
class InterferenceProfile:
    """Per-outcome interference data and the resulting classification.

    ``lam`` entries are ``None`` where the coefficient is undefined
    (vanishing denominator with non-vanishing deviation); such a profile is
    flagged non-``representable``. ``theta`` is the angle in radians for
    trigonometric outcomes and the non-negative hyperbolic angle otherwise.
    """

    context_id: str
    delta: tuple[float, float]
    denominator: tuple[float, float]
    lam: tuple[float | None, float | None]
    theta: tuple[float | None, float | None]
    sign: tuple[int, int]
    classification: Classification
    representable: bool
    clamp_events: tuple[ClampEvent, ...] = ()

    def to_dict(self) -> dict:
        return {
            "context_id": self.context_id,
            "outcomes": [
                {
                    "delta": self.delta[b],
                    "denom": self.denominator[b],
                    "lambda": self.lam[b],
                    "theta": self.theta[b],
                    "sign": self.sign[b],
                }
                for b in (0, 1)
            ],
            "classification": self.classification.value,
            "representable": self.representable,
            "clamp_events": [e.to_dict() for e in self.clamp_events],
        }


def interference_denominator(d: ContextData, beta: int) -> float:
    """Twice the geometric mean of the factorized total-probability terms."""
    if beta not in (0, 1):
        raise ValueError(f"outcome index must be 0 or 1, got {beta}")
    prod = d.p_a[0] * d.b_given_a[0][beta] * d.p_a[1] * d.b_given_a[1][beta]
    return 2.0 * math.sqrt(max(float(prod), 0.0))


def lambda_coefficient(d: ContextData, beta: int) -> float | None:
    """The interference coefficient ``delta(beta) / denominator(beta)``.

    Returns ``None`` (undefined) when the denominator vanishes while the
    deviation does not; a denominator and deviation vanishing together give
    0 by convention, which keeps filtration contexts representable.
    """
    den = interference_denominator(d, beta)
    dev = delta(d, beta)
    if den == 0.0:
        return 0.0 if dev == 0.0 else None
    return dev / den


def classify_context(d: ContextData, *, clamp_tol: float = CLAMP_TOL) -> InterferenceProfile:
    """Build the full interference profile of one context.

    Boundary values ``|lambda| = 1`` are compatible with both branches and
    resolve to trigonometric (theta in {0, pi}). Raw values in
    ``(1, 1 + clamp_tol]`` are snapped to the boundary and recorded as clamp
    events. A vanishing denominator anywhere makes the profile degenerate —
    a classification, not an error.
    """
    devs = (delta(d, 0), delta(d, 1))
    dens = (interference_denominator(d, 0), interference_denominator(d, 1))

    lams: list[float | None] = []
    clamps: list[ClampEvent] = []
    for b in (0, 1):
        if dens[b] == 0.0:
            lams.append(0.0 if devs[b] == 0.0 else None)
            continue
        raw = devs[b] / dens[b]
        if 1.0 < abs(raw) <= 1.0 + clamp_tol:
            clamped = math.copysign(1.0, raw)
            clamps.append(ClampEvent(b, raw, clamped))
            raw = clamped
        lams.append(raw)

    signs = tuple(1 if (lam is None or lam >= 0) else -1 for lam in lams)

    if 0.0 in dens:
        classification = Classification.DEGENERATE
        representable = all(lam is not None for lam in lams)
    else:
        assert lams[0] is not None and lams[1] is not None
        mags = (abs(lams[0]), abs(lams[1]))
        if max(mags) <= 1.0:
            classification = Classification.TRIGONOMETRIC
        elif min(mags) >= 1.0:
            classification = Classification.HYPERBOLIC
        else:
            classification = Classification.MIXED
        representable = classification is not Classification.MIXED

    thetas: list[float | None] = []
    for b in (0, 1):
        lam = lams[b]
        if lam is None:
            thetas.append(None)
        elif abs(lam) <= 1.0:
            thetas.append(math.acos(lam))
        else:
            thetas.append(math.acosh(abs(lam)))

    return InterferenceProfile(
        context_id=d.context_id,
        delta=devs,
        denominator=dens,
        lam=tuple(lams),
        theta=tuple(thetas),
        sign=signs,
        classification=classification,
        representable=representable,
        clamp_events=tuple(clamps),
    )


@dataclass(frozen=True)
class FtpReconstruction:
    """Result of rebuilding ``p_b`` from the interference decomposition."""

    context_id: str
    classification: Classification
    kappa: tuple[float, float]
    reconstructed: tuple[float, float]
    residuals: tuple[float, float]

    @property
    def max_residual(self) -> float:
        return max(self.residuals)

    def to_dict(self) -> dict:
        return {
            "context_id": self.context_id,
            "classification": self.classification.value,
            "kappa": list(self.kappa),
            "reconstructed": list(self.reconstructed),
            "residuals": list(self.residuals),
        }


def ftp_with_interference(d: ContextData, profile: InterferenceProfile | None = None) -> FtpReconstruction:
    """Recompute ``p_b`` through the total-probability formula with its
    interference term and report the per-outcome residuals.

    ``K(beta)`` is ``cos(theta)`` on the trigonometric branch and
    ``sign * cosh(theta)`` on the hyperbolic branch, taken from the profile
    so the check exercises the round trip through the stored angle. Mixed
    profiles have no single-branch reconstruction and are refused with the
    per-outcome branches in the error payload; so are non-representable
    degenerate profiles.
    """
    profile = profile if profile is not None else classify_context(d)
    if profile.classification is Classification.MIXED:
        branches = {
            f"outcome_{b}": ("trigonometric" if abs(profile.lam[b]) <= 1.0 else "hyperbolic")
            for b in (0, 1)
        }
        raise RepresentationError(
            "mixed-classification",
            f"context {d.context_id!r} is mixed hyper-trigonometric; no single-branch reconstruction",
            details=branches,
        )
    if not profile.representable:
        raise RepresentationError(
            "degenerate-not-representable",
            f"context {d.context_id!r} has a vanishing denominator with non-vanishing deviation",
        )

    kappas = []
    recon = []
    residuals = []
    for b in (0, 1):
        lam = profile.lam[b]
        theta = profile.theta[b]
        if profile.classification is Classification.HYPERBOLIC and abs(lam) >= 1.0:
            k = profile.sign[b] * math.cosh(theta)
        else:
            k = math.cos(theta)
        classical = float(
            d.p_a[0] * d.b_given_a[0][b] + d.p_a[1] * d.b_given_a[1][b]
        )
        value = classical + profile.denominator[b] * k
        kappas.append(k)
        recon.append(value)
        residuals.append(abs(value - float(d.p_b[b])))
    return FtpReconstruction(
        context_id=d.context_id,
        classification=profile.classification,
        kappa=tuple(kappas),
        reconstructed=tuple(recon),
        residuals=tuple(residuals),
    )


@dataclass(frozen=True)
class SymmetryReport:
    """Classification of the same context under both conditioning directions.

    Nothing requires the directions to agree; the report only states whether
    they happen to.
    """

    context_id: str
    forward: InterferenceProfile
    reverse: InterferenceProfile

    @property
    def agree(self) -> bool:
        return self.forward.classification is self.reverse.classification

    def to_dict(self) -> dict:
        return {
            "context_id": self.context_id,
            "b_given_a": self.forward.to_dict(),
            "a_given_b": self.reverse.to_dict(),
            "classifications_agree": self.agree,
        }


def symmetry_diagnostic(d: ContextData) -> SymmetryReport:
    """Classify under b/a-conditioning and under a/b-conditioning.

    Requires the reverse-conditioned matrix ``a_given_b``.
    """
    if d.a_given_b is None:
        raise MissingDataError(
            f"context {d.context_id!r} has no a_given_b matrix; symmetry diagnostic unavailable"
        )
    reversed_data = ContextData(
        context_id=f"{d.context_id}(reversed)",
        p_a=d.p_b,
        p_b=d.p_a,
        b_given_a=d.a_given_b,
    )
    return SymmetryReport(
        context_id=d.context_id,
        forward=classify_context(d),
        reverse=classify_context(reversed_data),
    )


def lambda_standard_error(d: ContextData, beta: int) -> float | None:
    """First-order standard error of the interference coefficient.

    Propagates the per-entry standard errors attached to a
    frequency-estimated table through the partial derivatives of
    ``lambda = (p_b - (u*r1 + (1-u)*r2)) / (2*sqrt(u*(1-u)*r1*r2))`` with
    ``u = p_a(0)`` and ``r_i = b_given_a[i][beta]``, treating the four
    underlying collectives as independent. Returns ``None`` without
    attached errors or where the coefficient is undefined/degenerate.
    """
    if d.std_errors is None:
        return None
    den = interference_denominator(d, beta)
    if den == 0.0:
        return None
    u = float(d.p_a[0])
    r1 = float(d.b_given_a[0][beta])
    r2 = float(d.b_given_a[1][beta])
    pb = float(d.p_b[beta])
    lam = (pb - (u * r1 + (1.0 - u) * r2)) / den

    d_pb = 1.0 / den
    d_u = -(r1 - r2) / den - lam * (1.0 - 2.0 * u) / (2.0 * u * (1.0 - u))
    d_r1 = -u / den - lam / (2.0 * r1)
    d_r2 = -(1.0 - u) / den - lam / (2.0 * r2)

    se = d.std_errors
    var = (
        (d_pb * se.p_b[beta]) ** 2
        + (d_u * se.p_a[0]) ** 2
        + (d_r1 * se.b_given_a[0][beta]) ** 2
        + (d_r2 * se.b_given_a[1][beta]) ** 2
    )
    return math.sqrt(var)


def is_admissible(d: ContextData, tolerance: float = EPS_PROB) -> bool:
    """Convenience wrapper: True when validation reports no violation."""
    return validate_context_data(d, tolerance).ok
