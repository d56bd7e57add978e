"""Core data model: dichotomous reference observables, per-context
probability tables, and catalogs with filtration designations.

A context is imaged by four probability tables: the marginals ``p_a`` and
``p_b`` of two fixed two-valued observables, and the transition matrices
obtained by measuring one observable after filtering on an outcome of the
other. Entries may be floats or exact rationals (``fractions.Fraction``);
rational tables keep identities such as the balance ``sum_beta delta(beta)
= 0`` exact, and are converted to float only at computation boundaries.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import UnknownContextError

#: Tolerance for analytically supplied (exact) probability data. Frequency
#: estimates carry their own standard errors and are judged statistically.
EPS_PROB = 1e-9

FLOAT_EPS = sys.float_info.epsilon

ProbValue = "float | Fraction | int"


def _pair(values: Sequence, what: str) -> tuple:
    t = tuple(values)
    if len(t) != 2:
        raise ValueError(f"{what} must have exactly two entries, got {len(t)}")
    return t


def _rows(values: Sequence[Sequence], what: str) -> tuple:
    rows = tuple(_pair(row, f"{what} row") for row in values)
    if len(rows) != 2:
        raise ValueError(f"{what} must have exactly two rows, got {len(rows)}")
    return rows


@dataclass(frozen=True)
class ObservablePair:
    """The fixed pair of dichotomous reference observables.

    Spectra are the two real values each observable can take; they must be
    distinct within each observable but carry no probabilistic content
    (relabelling them changes no probability).
    """

    name_a: str
    name_b: str
    spectrum_a: tuple[float, float]
    spectrum_b: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "spectrum_a", _pair(self.spectrum_a, "spectrum_a"))
        object.__setattr__(self, "spectrum_b", _pair(self.spectrum_b, "spectrum_b"))
        if float(self.spectrum_a[0]) == float(self.spectrum_a[1]):
            raise ValueError("spectrum_a values must be distinct")
        if float(self.spectrum_b[0]) == float(self.spectrum_b[1]):
            raise ValueError("spectrum_b values must be distinct")
        if not self.name_a or not self.name_b:
            raise ValueError("observable names must be non-empty")


@dataclass(frozen=True)
class EstimateErrors:
    """Per-entry standard errors sqrt(nu(1-nu)/N) for estimated tables."""

    p_a: tuple[float, float]
    p_b: tuple[float, float]
    b_given_a: tuple[tuple[float, float], tuple[float, float]]
    a_given_b: tuple[tuple[float, float], tuple[float, float]] | None = None


@dataclass(frozen=True)
class ContextData:
    """Probability tables imaging a single context.

    ``b_given_a[i][j]`` is the probability of the j-th b-outcome after
    filtering on the i-th a-outcome. ``a_given_b`` is the reverse-conditioned
    matrix; it is optional and only consumed by symmetry diagnostics.
    Construction checks shapes only — numeric admissibility is the job of
    :func:`validate_context_data`, which reports rather than raises.
    """

    context_id: str
    p_a: tuple
    p_b: tuple
    b_given_a: tuple
    a_given_b: tuple | None = None
    std_errors: EstimateErrors | None = None

    def __post_init__(self):
        object.__setattr__(self, "p_a", _pair(self.p_a, "p_a"))
        object.__setattr__(self, "p_b", _pair(self.p_b, "p_b"))
        object.__setattr__(self, "b_given_a", _rows(self.b_given_a, "b_given_a"))
        if self.a_given_b is not None:
            object.__setattr__(self, "a_given_b", _rows(self.a_given_b, "a_given_b"))


@dataclass(frozen=True)
class Violation:
    """One violated invariant, with the offending value where meaningful."""

    kind: str  # "range" | "normalization" | "balance" | "filtration-axiom" | "filtration-consistency"
    where: str
    message: str
    value: float | None = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "where": self.where, "message": self.message}
        if self.value is not None:
            out["value"] = self.value
        return out


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


def _check_distribution(name: str, vec: Sequence, tolerance: float, out: list[Violation]):
    for idx, value in enumerate(vec):
        fv = float(value)
        if fv < -tolerance or fv > 1.0 + tolerance:
            out.append(
                Violation("range", f"{name}[{idx}]", f"entry {fv!r} outside [0, 1]", fv)
            )
    total = float(sum(vec))
    if abs(total - 1.0) > tolerance:
        out.append(
            Violation("normalization", name, f"entries sum to {total!r}, expected 1", total)
        )


def delta(d: ContextData, beta: int) -> float:
    """Deviation of ``p_b(beta)`` from the classical total-probability mixture.

    Returns ``p_b(beta) - sum_alpha p_a(alpha) * b_given_a(beta/alpha)``;
    the classical formula of total probability holds at ``beta`` iff this is
    zero. Rational tables are evaluated exactly before the float conversion.
    """
    if beta not in (0, 1):
        raise ValueError(f"outcome index must be 0 or 1, got {beta}")
    classical = d.p_a[0] * d.b_given_a[0][beta] + d.p_a[1] * d.b_given_a[1][beta]
    return float(d.p_b[beta] - classical)


def validate_context_data(d: ContextData, tolerance: float = EPS_PROB) -> ValidationReport:
    """Report every violated admissibility invariant of one context table.

    Checks entry ranges, normalization of both marginals and every
    conditional row, and the balance identity ``sum_beta delta(beta) = 0``.
    Never raises: an empty report means the data is admissible.
    """
    vios: list[Violation] = []
    _check_distribution("p_a", d.p_a, tolerance, vios)
    _check_distribution("p_b", d.p_b, tolerance, vios)
    for i, row in enumerate(d.b_given_a):
        _check_distribution(f"b_given_a[{i}]", row, tolerance, vios)
    if d.a_given_b is not None:
        for i, row in enumerate(d.a_given_b):
            _check_distribution(f"a_given_b[{i}]", row, tolerance, vios)
    balance = delta(d, 0) + delta(d, 1)
    if abs(balance) > max(tolerance, 8 * FLOAT_EPS):
        vios.append(
            Violation("balance", "p_b vs b_given_a", f"sum of deltas is {balance!r}, expected 0", balance)
        )
    return ValidationReport(tuple(vios))


def is_doubly_stochastic(d: ContextData, tolerance: float = EPS_PROB) -> bool:
    """True when each column of ``b_given_a`` sums to 1 within tolerance."""
    for j in (0, 1):
        col = float(d.b_given_a[0][j] + d.b_given_a[1][j])
        if abs(col - 1.0) > tolerance:
            return False
    return True


@dataclass(frozen=True)
class ContextCatalog:
    """A family of contexts sharing one observable pair.

    ``filtrations_a[i]`` names the context acting as the filtration on the
    i-th a-outcome (it must assign that outcome probability 1); likewise
    ``filtrations_b``. The map id -> data is deliberately allowed to be
    non-injective in the data: distinct contexts may image identically.
    """

    observables: ObservablePair
    contexts: Mapping[str, ContextData]
    filtrations_a: tuple[str, str]
    filtrations_b: tuple[str, str]

    def __post_init__(self):
        contexts = dict(self.contexts)
        for cid, data in contexts.items():
            if data.context_id != cid:
                raise ValueError(f"context keyed {cid!r} carries context_id {data.context_id!r}")
        object.__setattr__(self, "contexts", contexts)
        object.__setattr__(self, "filtrations_a", _pair(self.filtrations_a, "filtrations_a"))
        object.__setattr__(self, "filtrations_b", _pair(self.filtrations_b, "filtrations_b"))

    @property
    def filtration_ids(self) -> frozenset[str]:
        return frozenset(self.filtrations_a) | frozenset(self.filtrations_b)

    def ordinary_ids(self) -> list[str]:
        """Context ids that are not filtration designations, sorted."""
        return sorted(set(self.contexts) - self.filtration_ids)


def pi_map(catalog: ContextCatalog, context_id: str) -> ContextData:
    """The probabilistic image of a context.

    Not injective: two ids may map to equal tables, and that is meaningful —
    probabilistic data cannot distinguish every pair of contexts.
    """
    try:
        return catalog.contexts[context_id]
    except KeyError:
        raise UnknownContextError(f"unknown context id {context_id!r}") from None


def validate_catalog(catalog: ContextCatalog, tolerance: float = EPS_PROB) -> ValidationReport:
    """Validate every context plus the catalog-level filtration invariants.

    Catalog-level checks: each designated filtration context exists and
    assigns probability 1 to its outcome; the conditional rows of every
    ordinary context agree with the corresponding filtration context's
    marginal (both encode the same post-filtration distribution).
    """
    vios: list[Violation] = []
    for cid in sorted(catalog.contexts):
        report = validate_context_data(catalog.contexts[cid], tolerance)
        vios.extend(
            Violation(v.kind, f"{cid}.{v.where}", v.message, v.value) for v in report.violations
        )

    def filtration(ids: tuple[str, str], marginal: str, i: int) -> ContextData | None:
        cid = ids[i]
        if cid not in catalog.contexts:
            vios.append(
                Violation("filtration-axiom", cid, f"designated filtration context {cid!r} missing")
            )
            return None
        data = catalog.contexts[cid]
        vec = data.p_a if marginal == "p_a" else data.p_b
        if abs(float(vec[i]) - 1.0) > tolerance:
            vios.append(
                Violation(
                    "filtration-axiom",
                    f"{cid}.{marginal}",
                    f"filtration context must assign outcome {i} probability 1, got {float(vec[i])!r}",
                    float(vec[i]),
                )
            )
        return data

    filt_a = [filtration(catalog.filtrations_a, "p_a", i) for i in (0, 1)]
    filt_b = [filtration(catalog.filtrations_b, "p_b", j) for j in (0, 1)]

    for cid in catalog.ordinary_ids():
        data = catalog.contexts[cid]
        for i, filt in enumerate(filt_a):
            if filt is None:
                continue
            for j in (0, 1):
                got = float(data.b_given_a[i][j])
                want = float(filt.p_b[j])
                if abs(got - want) > tolerance:
                    vios.append(
                        Violation(
                            "filtration-consistency",
                            f"{cid}.b_given_a[{i}][{j}]",
                            f"conditional row {got!r} disagrees with filtration context "
                            f"{catalog.filtrations_a[i]!r} marginal {want!r}",
                            got - want,
                        )
                    )
        if data.a_given_b is not None:
            for j, filt in enumerate(filt_b):
                if filt is None:
                    continue
                for i in (0, 1):
                    got = float(data.a_given_b[j][i])
                    want = float(filt.p_a[i])
                    if abs(got - want) > tolerance:
                        vios.append(
                            Violation(
                                "filtration-consistency",
                                f"{cid}.a_given_b[{j}][{i}]",
                                f"reverse conditional {got!r} disagrees with filtration context "
                                f"{catalog.filtrations_b[j]!r} marginal {want!r}",
                                got - want,
                            )
                        )
    return ValidationReport(tuple(vios))
