"""Registry of the verified inequalities and their pointwise checkers.

Every entry turns one inequality into an evaluable pair of nonnegative sides
over ``(P, F, spec, z)``.  Hypotheses are verified before any check runs;
instances that fail them are rejected, never scored.  The checkers sweep z
over circle grids (with golden-section refinement around the smallest
slacks), and a finite grid plus refinement stands in for the continuum
claim: pointwise modulus comparisons are smooth in the angle, so refinement
bounds the grid error.

Slack is oriented so that a valid instance always has nonnegative slack:
``rhs - lhs`` for upper bounds, ``lhs - rhs`` for lower bounds (the sides
keep the conventional display order of each inequality).  Pass tolerances
are relative to ``max(lhs, rhs)`` at the minimizing point, because absolute
slacks are meaningless across degrees.
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from .extrema import CircleExtremum, circle_extremum
from .polar import PolarSpec, falling_factorial, lambda_product, polar_chain
from .poly import (
    Polynomial,
    conjugate_reciprocal,
    evaluate,
    scale as poly_scale,
    scale_argument,
    sth_derivative,
)
from .roots import zero_location_evidence

__all__ = [
    "DEFAULT_RADII",
    "HypothesisError",
    "InequalityDef",
    "InequalityInstance",
    "InequalityReport",
    "INEQUALITY_IDS",
    "REGISTRY",
    "build_instance",
    "evaluate_sides",
    "check_inequality",
    "sharpness_probe",
    "rhs_sign_flip",
]

DEFAULT_RADII = (1.0, 1.05, 1.5, 3.0)
DOMINATION_GRID = 4096
Z_MODULUS_LIMIT = 1e3
EXTREMUM_EPS_REL = 1e-6

# Test seam: ids listed here get the leading term of their right side negated.
# Used only to prove the checkers are not vacuous (mutation sensitivity).
_RHS_SIGN_FLIPS: set[str] = set()


@contextlib.contextmanager
def rhs_sign_flip(ineq_id: str):
    """Temporarily negate the dominant right-side term of ``ineq_id``."""
    _RHS_SIGN_FLIPS.add(ineq_id)
    try:
        yield
    finally:
        _RHS_SIGN_FLIPS.discard(ineq_id)


class HypothesisError(ValueError):
    """An inequality instance does not satisfy its stated premises."""


@dataclass(frozen=True)
class InequalityDef:
    """One registry entry: metadata plus the two-sides evaluator.

    ``direction`` is "upper" (lhs <= rhs) or "lower" (lhs >= rhs);
    ``domain`` is "outside_unit_disk", "unit_circle", or "parameter_only"
    (no z dependence).  ``zero_mode`` names the zero-location hypothesis of
    the subject polynomial ("inside" / "outside" / "none"); for paired
    entries it applies to F while P is constrained by domination on |z| = k.
    """

    ineq_id: str
    statement: str
    direction: str
    domain: str
    sides: Callable
    pair: bool = False
    zero_mode: str = "none"
    k_regime: str = "at_most_one"  # "at_most_one" | "at_least_one" | "unit" | "any"
    needs_alphas: bool = False
    uses_beta: bool = False
    uses_s: bool = True  # False: entry has no chain/derivative order (s == 0)
    fixed_s: Optional[int] = None
    witness_hint: Optional[Callable] = None


class InequalityInstance:
    """A hypothesis-checked (P, F, spec) triple with cached derived data.

    Max/Min circle terms are computed once per instance and cached; all
    cached values are derived deterministically, so instances can be shared
    across threads once built.
    """

    def __init__(self, defn: InequalityDef, p: Polynomial, f: Optional[Polynomial],
                 spec: PolarSpec, hypothesis_report: dict):
        self.defn = defn
        self.p = p
        self.f = f
        self.spec = spec
        self.hypothesis_report = hypothesis_report
        self._extrema: dict = {}

    # -- scalar constants -------------------------------------------------
    @cached_property
    def ns(self) -> int:
        return falling_factorial(self.spec.n, self.spec.s)

    @cached_property
    def lam(self) -> float:
        if not self.spec.alphas:
            return 1.0
        return lambda_product(self.spec)

    @cached_property
    def alpha_prod(self) -> complex:
        out = 1 + 0j
        for a in self.spec.alphas:
            out *= a
        return out

    @cached_property
    def cb(self) -> complex:
        # beta * Lambda_s / (1+k)^s, the shift inside the |...| brackets
        return self.spec.beta * self.lam / (1.0 + self.spec.k) ** self.spec.s

    @cached_property
    def cb_deriv(self) -> complex:
        # beta / (1+k)^s, its limiting form once the polar points are gone
        return self.spec.beta / (1.0 + self.spec.k) ** self.spec.s

    # -- derived polynomials ----------------------------------------------
    @cached_property
    def chain_p(self) -> Polynomial:
        return polar_chain(self.p, self.spec)

    @cached_property
    def chain_f(self) -> Polynomial:
        return polar_chain(self.f, self.spec)

    @cached_property
    def deriv_s_p(self) -> Polynomial:
        return sth_derivative(self.p, self.spec.s)

    @cached_property
    def deriv_s_f(self) -> Polynomial:
        return sth_derivative(self.f, self.spec.s)

    @cached_property
    def deriv1_p(self) -> Polynomial:
        return sth_derivative(self.p, 1)

    @cached_property
    def q_poly(self) -> Polynomial:
        return conjugate_reciprocal(self.p, self.spec.n)

    @cached_property
    def q_rescaled(self) -> Polynomial:
        # k^n * Q(z / k^2): the reflected polynomial carried back to the
        # k-circle, where its modulus matches |P| exactly.
        k, n = self.spec.k, self.spec.n
        return poly_scale(scale_argument(self.q_poly, 1.0 / k**2), k**n)

    @cached_property
    def chain_q_rescaled(self) -> Polynomial:
        return polar_chain(self.q_rescaled, self.spec)

    # -- cached circle extrema ---------------------------------------------
    def extremum(self, which: str, radius: float, kind: str) -> CircleExtremum:
        key = (which, radius, kind)
        if key not in self._extrema:
            poly = {"p": self.p, "f": self.f, "dp": self.deriv1_p}[which]
            scale = sum(abs(c) * max(1.0, radius) ** j for j, c in enumerate(poly.coeffs))
            self._extrema[key] = circle_extremum(
                poly, radius, kind, eps=EXTREMUM_EPS_REL * scale
            )
        return self._extrema[key]

    def max_p(self, radius: float) -> float:
        return self.extremum("p", radius, "max").value

    def min_p(self, radius: float) -> float:
        return self.extremum("p", radius, "min").value

    def max_dp_unit(self) -> float:
        return self.extremum("dp", 1.0, "max").value

    def min_f(self, radius: float) -> float:
        return self.extremum("f", radius, "min").value

    def params(self) -> dict:
        return {
            "n": self.spec.n,
            "s": self.spec.s,
            "k": self.spec.k,
            "alphas": list(self.spec.alphas),
            "beta": self.spec.beta,
        }


@dataclass(frozen=True)
class InequalityReport:
    def_id: str
    params: dict
    min_slack: float
    rel_slack: float
    witness_z: Optional[complex]
    passed: bool
    samples: int
    radii: tuple[float, ...]
    angles_per_radius: int
    tol_rel: float
    scale: float
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# side evaluators
# ---------------------------------------------------------------------------


def _abs_eval(poly: Polynomial, z):
    return np.abs(evaluate(poly, z))


def _chain_combo(inst: InequalityInstance, poly, chain, z):
    # |z^s * chain(z) + beta * n_s * Lambda_s / (1+k)^s * poly(z)|
    lc = inst.spec.beta * inst.ns * inst.lam / (1.0 + inst.spec.k) ** inst.spec.s
    return np.abs(z ** inst.spec.s * evaluate(chain, z) + lc * evaluate(poly, z))


def _deriv_combo(inst: InequalityInstance, poly, derv, z):
    lc = inst.spec.beta * inst.ns / (1.0 + inst.spec.k) ** inst.spec.s
    return np.abs(z ** inst.spec.s * evaluate(derv, z) + lc * evaluate(poly, z))


def _const(z, value: float):
    return np.full(np.shape(z), float(value))


def _sides_e1(inst, z):
    rhs = inst.spec.n * inst.max_p(1.0)
    return _abs_eval(inst.deriv1_p, z), _const(z, rhs)


def _sides_e2(inst, z):
    rhs = inst.spec.n / 2.0 * inst.max_p(1.0)
    return _abs_eval(inst.deriv1_p, z), _const(z, rhs)


def _sides_e3(inst, z):
    return inst.max_dp_unit(), inst.spec.n / 2.0 * inst.max_p(1.0)


def _sides_e4(inst, z):
    rhs = inst.spec.n / (1.0 + inst.spec.k) * inst.max_p(1.0)
    return _abs_eval(inst.deriv1_p, z), _const(z, rhs)


def _sides_e5(inst, z):
    return inst.max_dp_unit(), inst.spec.n / (1.0 + inst.spec.k) * inst.max_p(1.0)


def _sides_ae(inst, z):
    lhs = _abs_eval(inst.chain_p, z)
    grow = np.abs(inst.alpha_prod) * np.abs(z) ** (inst.spec.n - inst.spec.s)
    rhs = inst.ns / 2.0 * (grow + 1.0) * inst.max_p(1.0)
    return lhs, rhs


def _sides_awe(inst, z):
    lhs = _abs_eval(inst.chain_p, z)
    grow = np.abs(inst.alpha_prod) * np.abs(z) ** (inst.spec.n - inst.spec.s)
    rhs = inst.ns / 2.0 * (
        (grow + 1.0) * inst.max_p(1.0) - (grow - 1.0) * inst.min_p(1.0)
    )
    return lhs, rhs


def _sides_te1(inst, z):
    lhs = _chain_combo(inst, inst.p, inst.chain_p, z)
    rhs = _chain_combo(inst, inst.f, inst.chain_f, z)
    return lhs, rhs


def _sides_ce1(inst, z):
    lhs = _chain_combo(inst, inst.p, inst.chain_p, z)
    amp = np.abs(z) ** inst.spec.n / inst.spec.k ** inst.spec.n
    rhs = inst.ns * amp * abs(inst.alpha_prod + inst.cb) * inst.max_p(inst.spec.k)
    return lhs, rhs


def _sides_ce2(inst, z):
    lhs = _deriv_combo(inst, inst.p, inst.deriv_s_p, z)
    amp = np.abs(z) ** inst.spec.n / inst.spec.k ** inst.spec.n
    rhs = inst.ns * amp * abs(1.0 + inst.cb_deriv) * inst.max_p(inst.spec.k)
    return lhs, rhs


def _sides_ce3(inst, z):
    lhs = _deriv_combo(inst, inst.p, inst.deriv_s_p, z)
    rhs = _deriv_combo(inst, inst.f, inst.deriv_s_f, z)
    return lhs, rhs


def _sides_ce4(inst, z):
    lhs = _chain_combo(inst, inst.p, inst.chain_p, z)
    amp = np.abs(z) ** inst.spec.n / inst.spec.k ** inst.spec.n
    rhs = inst.ns * amp * abs(inst.alpha_prod + inst.cb) * inst.min_p(inst.spec.k)
    return lhs, rhs


def _sides_ce5(inst, z):
    lhs = _deriv_combo(inst, inst.p, inst.deriv_s_p, z)
    amp = np.abs(z) ** inst.spec.n / inst.spec.k ** inst.spec.n
    rhs = inst.ns * amp * abs(1.0 + inst.cb_deriv) * inst.min_p(inst.spec.k)
    return lhs, rhs


def _chain_brackets(inst, z):
    # T1 = (|z|^n / k^n) |a1...as + cb|,  T2 = |z^s + cb|
    t1 = np.abs(z) ** inst.spec.n / inst.spec.k ** inst.spec.n * abs(
        inst.alpha_prod + inst.cb
    )
    t2 = np.abs(z ** inst.spec.s + inst.cb)
    return t1, t2


def _sides_te2(inst, z):
    lhs = _chain_combo(inst, inst.p, inst.chain_p, z)
    t1, t2 = _chain_brackets(inst, z)
    if inst.defn.ineq_id in _RHS_SIGN_FLIPS:
        t1 = -t1
    rhs = inst.ns / 2.0 * (t1 + t2) * inst.max_p(inst.spec.k)
    return lhs, rhs


def _sides_te3(inst, z):
    lhs = _chain_combo(inst, inst.p, inst.chain_p, z)
    t1, t2 = _chain_brackets(inst, z)
    if inst.defn.ineq_id in _RHS_SIGN_FLIPS:
        t1 = -t1
    rhs = inst.ns / 2.0 * (
        (t1 + t2) * inst.max_p(inst.spec.k) - (t1 - t2) * inst.min_p(inst.spec.k)
    )
    return lhs, rhs


def _sides_ce7(inst, z):
    lhs = _deriv_combo(inst, inst.p, inst.deriv_s_p, z)
    u1 = np.abs(z) ** inst.spec.n / inst.spec.k ** inst.spec.n * abs(1.0 + inst.cb_deriv)
    u2 = abs(inst.cb_deriv)
    rhs = inst.ns / 2.0 * (
        (u1 + u2) * inst.max_p(inst.spec.k) - (u1 - u2) * inst.min_p(inst.spec.k)
    )
    return lhs, rhs


def _sides_ce9(inst, z):
    lhs = _abs_eval(inst.chain_p, z)
    v = np.abs(z) ** (inst.spec.n - inst.spec.s) / inst.spec.k ** inst.spec.n * abs(
        inst.alpha_prod
    )
    rhs = inst.ns / 2.0 * (
        (v + 1.0) * inst.max_p(inst.spec.k) - (v - 1.0) * inst.min_p(inst.spec.k)
    )
    return lhs, rhs


def _sides_ce10(inst, z):
    lhs = _abs_eval(inst.deriv_s_p, z)
    amp = inst.ns * np.abs(z) ** (inst.spec.n - inst.spec.s) / (
        2.0 * inst.spec.k ** inst.spec.n
    )
    rhs = amp * (inst.max_p(inst.spec.k) - inst.min_p(inst.spec.k))
    return lhs, rhs


def _sides_le2_le4(inst, z):
    lhs = _abs_eval(inst.chain_p, z)
    factor = inst.ns * inst.lam / (1.0 + inst.spec.k) ** inst.spec.s
    rhs = factor * _abs_eval(inst.p, z)
    return lhs, rhs


def _sides_le3(inst, z):
    a = inst.p.coeffs
    lhs = abs(a[-2] / a[-1]) / inst.spec.n if len(a) >= 2 else 0.0
    return lhs, inst.spec.k


def _sides_le5(inst, z):
    # The reflected term applies the chain to k^n * Q(z/k^2) as a polynomial
    # in z (the chain is linear, so this is what the dominated-pair argument
    # actually bounds); chaining Q first and substituting z/k^2 afterwards is
    # a different quantity for k < 1 and fails at random instances.
    first = _chain_combo(inst, inst.p, inst.chain_p, z)
    second = _chain_combo(inst, inst.q_rescaled, inst.chain_q_rescaled, z)
    t1, t2 = _chain_brackets(inst, z)
    rhs = inst.ns * (t1 + t2) * inst.max_p(inst.spec.k)
    return first + second, rhs


def _witness_dp_max(inst):
    theta = inst.extremum("dp", 1.0, "max").witness_theta
    return complex(math.cos(theta), math.sin(theta))


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

_DEFS = [
    InequalityDef(
        "E1", "max |P'| <= n max |P| on |z|=1", "upper", "unit_circle",
        _sides_e1, k_regime="any", uses_s=False,
    ),
    InequalityDef(
        "E2", "P != 0 in |z|<1: max |P'| <= (n/2) max |P| on |z|=1", "upper",
        "unit_circle", _sides_e2, zero_mode="outside", k_regime="unit", uses_s=False,
    ),
    InequalityDef(
        "E3", "all zeros in |z|<=1: max |P'| >= (n/2) max |P|", "lower",
        "parameter_only", _sides_e3, zero_mode="inside", k_regime="unit",
        uses_s=False, witness_hint=_witness_dp_max,
    ),
    InequalityDef(
        "E4", "P != 0 in |z|<k, k>=1: max |P'| <= n/(1+k) max |P| on |z|=1",
        "upper", "unit_circle", _sides_e4, zero_mode="outside",
        k_regime="at_least_one", uses_s=False,
    ),
    InequalityDef(
        "E5", "all zeros in |z|<=k, k<=1: max |P'| >= n/(1+k) max |P|", "lower",
        "parameter_only", _sides_e5, zero_mode="inside", uses_s=False,
        witness_hint=_witness_dp_max,
    ),
    InequalityDef(
        "AE", "iterated polar derivative bound (|z|>=1, unit critical radius)",
        "upper", "outside_unit_disk", _sides_ae, zero_mode="outside",
        k_regime="unit", needs_alphas=True,
    ),
    InequalityDef(
        "AWE", "AE refined by the subtracted minimum term", "upper",
        "outside_unit_disk", _sides_awe, zero_mode="outside", k_regime="unit",
        needs_alphas=True,
    ),
    InequalityDef(
        "TE1", "dominated-pair chain comparison |combo(P)| <= |combo(F)|",
        "upper", "outside_unit_disk", _sides_te1, pair=True, zero_mode="inside",
        needs_alphas=True, uses_beta=True,
    ),
    InequalityDef(
        "CE1", "chain combo of arbitrary P vs (n_s |z|^n / k^n) |prod+cb| Max",
        "upper", "outside_unit_disk", _sides_ce1, needs_alphas=True, uses_beta=True,
    ),
    InequalityDef(
        "CE2", "derivative combo vs (n_s |z|^n / k^n) |1+cb'| Max", "upper",
        "outside_unit_disk", _sides_ce2, uses_beta=True,
    ),
    InequalityDef(
        "CE3", "dominated-pair derivative comparison", "upper",
        "outside_unit_disk", _sides_ce3, pair=True, uses_beta=True,
    ),
    InequalityDef(
        "CE4", "chain combo of all-zeros-inside F >= (n_s |z|^n / k^n) |prod+cb| Min",
        "lower", "outside_unit_disk", _sides_ce4, zero_mode="inside",
        needs_alphas=True, uses_beta=True,
    ),
    InequalityDef(
        "CE5", "derivative combo of all-zeros-inside F >= (n_s |z|^n / k^n) |1+cb'| Min",
        "lower", "outside_unit_disk", _sides_ce5, zero_mode="inside", uses_beta=True,
    ),
    InequalityDef(
        "CE_S1", "single-step dominated-pair comparison (s = 1)", "upper",
        "outside_unit_disk", _sides_te1, pair=True, zero_mode="inside",
        needs_alphas=True, uses_beta=True, fixed_s=1,
    ),
    InequalityDef(
        "TE2", "chain combo of nonvanishing P vs (n_s/2){T1 + T2} Max", "upper",
        "outside_unit_disk", _sides_te2, zero_mode="outside", needs_alphas=True,
        uses_beta=True,
    ),
    InequalityDef(
        "TE3", "TE2 refined by the subtracted {T1 - T2} Min term", "upper",
        "outside_unit_disk", _sides_te3, zero_mode="outside", needs_alphas=True,
        uses_beta=True,
    ),
    InequalityDef(
        "CE7", "derivative form of TE3 (polar points sent to infinity)", "upper",
        "outside_unit_disk", _sides_ce7, zero_mode="outside", uses_beta=True,
    ),
    InequalityDef(
        "CE8", "CE7 at s = 1", "upper", "outside_unit_disk", _sides_ce7,
        zero_mode="outside", uses_beta=True, fixed_s=1,
    ),
    InequalityDef(
        "CE9", "TE3 at beta = 0, normalized by |z|^s", "upper",
        "outside_unit_disk", _sides_ce9, zero_mode="outside", needs_alphas=True,
    ),
    InequalityDef(
        "CE10", "|P^(s)| <= (n_s |z|^(n-s) / 2 k^n)(Max - Min)", "upper",
        "outside_unit_disk", _sides_ce10, zero_mode="outside",
    ),
    InequalityDef(
        "CE11", "TE3 at s = 1", "upper", "outside_unit_disk", _sides_te3,
        zero_mode="outside", needs_alphas=True, uses_beta=True, fixed_s=1,
    ),
    InequalityDef(
        "LE2", "|D_a P| >= n ((|a|-k)/(1+k)) |P| on |z|=1", "lower",
        "unit_circle", _sides_le2_le4, zero_mode="inside", needs_alphas=True,
        fixed_s=1,
    ),
    InequalityDef(
        "LE3", "(1/n)|a_{n-1}/a_n| <= k for all-zeros-inside polynomials",
        "upper", "parameter_only", _sides_le3, zero_mode="inside", uses_s=False,
    ),
    InequalityDef(
        "LE4", "|P_s| >= (n_s Lambda_s / (1+k)^s) |P| on |z|=1", "lower",
        "unit_circle", _sides_le2_le4, zero_mode="inside", needs_alphas=True,
    ),
    InequalityDef(
        "LE5", "two-term chain sum <= n_s {T1 + T2} Max (no 1/2 factor)",
        "upper", "outside_unit_disk", _sides_le5, needs_alphas=True,
        uses_beta=True,
    ),
]

REGISTRY: dict[str, InequalityDef] = {d.ineq_id: d for d in _DEFS}
INEQUALITY_IDS: tuple[str, ...] = tuple(d.ineq_id for d in _DEFS)


# ---------------------------------------------------------------------------
# instance building (hypothesis verification)
# ---------------------------------------------------------------------------


def build_instance(
    def_id: str,
    p: Polynomial,
    spec: PolarSpec,
    f: Optional[Polynomial] = None,
    p_roots=None,
    f_roots=None,
) -> InequalityInstance:
    """Verify every premise of ``def_id`` on (p, f, spec) and bundle them.

    ``p_roots`` / ``f_roots`` may carry construction-time roots (from the
    generators); they are validated against the coefficients before use so
    the zero-location evidence stays honest for multiple roots.
    """
    if def_id not in REGISTRY:
        raise ValueError(
            f"unknown inequality id {def_id!r}; valid ids: {', '.join(INEQUALITY_IDS)}"
        )
    defn = REGISTRY[def_id]
    if p.degree != spec.n:
        raise HypothesisError(
            f"hypothesis violated: P must have exact degree {spec.n}, got {p.degree}"
        )
    if defn.pair:
        if f is None:
            raise HypothesisError(f"{def_id} needs the dominating polynomial F")
        if f.degree != spec.n:
            raise HypothesisError(
                f"hypothesis violated: F must have exact degree {spec.n}, got {f.degree}"
            )
    elif f is not None:
        raise HypothesisError(f"{def_id} takes a single polynomial")

    if defn.uses_s:
        if defn.fixed_s is not None and spec.s != defn.fixed_s:
            raise HypothesisError(
                f"hypothesis violated: {def_id} requires s = {defn.fixed_s}"
            )
        if spec.s < 1:
            raise HypothesisError(f"hypothesis violated: {def_id} requires s >= 1")
    elif spec.s != 0:
        raise HypothesisError(f"hypothesis violated: {def_id} has no order s")

    k = spec.k
    if defn.k_regime == "at_most_one" and not k <= 1.0:
        raise HypothesisError(f"hypothesis violated: k <= 1 required, got {k}")
    if defn.k_regime == "at_least_one" and not k >= 1.0:
        raise HypothesisError(f"hypothesis violated: k >= 1 required, got {k}")
    if defn.k_regime == "unit" and k != 1.0:
        raise HypothesisError(f"hypothesis violated: k = 1 required, got {k}")

    if defn.needs_alphas:
        if len(spec.alphas) != spec.s:
            raise HypothesisError(
                f"hypothesis violated: {def_id} needs {spec.s} polar points"
            )
        for j, a in enumerate(spec.alphas):
            if abs(a) < k:
                raise HypothesisError(
                    f"hypothesis violated: |alpha_{j + 1}| >= k (got {abs(a)} < {k})"
                )
    elif spec.alphas:
        raise HypothesisError(f"{def_id} takes no polar points")

    if defn.uses_beta:
        if abs(spec.beta) > 1.0:
            raise HypothesisError(
                f"hypothesis violated: |beta| <= 1 (got {abs(spec.beta)})"
            )
    elif spec.beta != 0:
        raise HypothesisError(f"{def_id} takes no beta")

    report = {}
    subject = f if defn.pair else p
    subject_roots = f_roots if defn.pair else p_roots
    if defn.zero_mode != "none":
        evidence = zero_location_evidence(subject, subject_roots)
        report["zero_location"] = evidence
        if defn.zero_mode == "inside" and not evidence.contained_in(k):
            raise HypothesisError(
                "hypothesis violated: all zeros in |z| <= k "
                f"(max root modulus {evidence.max_modulus} > {k} + {evidence.root_tol})"
            )
        if defn.zero_mode == "outside" and not evidence.outside_open_disk(k):
            raise HypothesisError(
                "hypothesis violated: no zeros in |z| < k "
                f"(min root modulus {evidence.min_modulus} < {k} - {evidence.root_tol})"
            )

    if defn.pair:
        theta = 2.0 * np.pi * np.arange(DOMINATION_GRID) / DOMINATION_GRID
        ring = k * np.exp(1j * theta)
        p_abs = np.abs(evaluate(p, ring))
        f_abs = np.abs(evaluate(f, ring))
        tol = 1e-9 * max(float(p_abs.max()), float(f_abs.max()))
        excess = float((p_abs - f_abs).max())
        report["domination_excess"] = excess
        if excess > tol:
            raise HypothesisError(
                f"hypothesis violated: |P| <= |F| on |z| = k (excess {excess:.3e})"
            )

    return InequalityInstance(defn, p, f, spec, report)


# ---------------------------------------------------------------------------
# checking
# ---------------------------------------------------------------------------


def _oriented_slack(defn: InequalityDef, lhs, rhs):
    return rhs - lhs if defn.direction == "upper" else lhs - rhs


def evaluate_sides(inst: InequalityInstance, z: complex) -> tuple[float, float]:
    """Both sides at one point, as nonnegative reals."""
    defn = inst.defn
    if defn.domain == "parameter_only":
        lhs, rhs = defn.sides(inst, None)
        return float(lhs), float(rhs)
    zc = complex(z)
    mod = abs(zc)
    if mod > Z_MODULUS_LIMIT:
        raise ValueError(f"|z| = {mod} too large (limit {Z_MODULUS_LIMIT})")
    if defn.domain == "outside_unit_disk" and mod < 1.0 - 1e-9:
        raise ValueError(f"|z| = {mod} outside the domain |z| >= 1")
    if defn.domain == "unit_circle" and abs(mod - 1.0) > 1e-6:
        raise ValueError(f"|z| = {mod} outside the domain |z| = 1")
    arr = np.asarray([zc])
    lhs, rhs = defn.sides(inst, arr)
    return float(np.asarray(lhs).reshape(-1)[0]), float(np.asarray(rhs).reshape(-1)[0])


def _effective_radii(defn: InequalityDef, radii) -> tuple[float, ...]:
    if defn.domain == "unit_circle":
        return (1.0,)
    out = tuple(float(r) for r in radii)
    for r in out:
        if r < 1.0 - 1e-12 or r > Z_MODULUS_LIMIT:
            raise ValueError(f"radius {r} outside the domain [1, {Z_MODULUS_LIMIT}]")
    return out


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(g, lo: float, hi: float, iters: int = 60):
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    gc, gd = g(c), g(d)
    best_v, best_t = (gc, c) if gc <= gd else (gd, d)
    for _ in range(iters):
        if gc <= gd:
            hi, d, gd = d, c, gc
            c = hi - _INV_PHI * (hi - lo)
            gc = g(c)
            if gc < best_v:
                best_v, best_t = gc, c
        else:
            lo, c, gc = c, d, gd
            d = lo + _INV_PHI * (hi - lo)
            gd = g(d)
            if gd < best_v:
                best_v, best_t = gd, d
    return best_v, best_t


def check_inequality(
    inst: InequalityInstance,
    radii=DEFAULT_RADII,
    angles_per_radius: int = 512,
    tol_rel: float = 1e-8,
) -> InequalityReport:
    """Sweep z over the def's domain and report the minimal oriented slack.

    Grids of ``angles_per_radius`` points per radius are refined by
    golden-section minimization around the five smallest grid slacks.  For
    unit-circle entries only the radius-1 slice is swept; parameter-only
    entries evaluate once.
    """
    defn = inst.defn
    if tol_rel <= 0:
        raise ValueError("tol_rel must be positive")

    if defn.domain == "parameter_only":
        lhs, rhs = defn.sides(inst, None)
        lhs, rhs = float(lhs), float(rhs)
        slack = _oriented_slack(defn, lhs, rhs)
        scale = max(lhs, rhs)
        witness = defn.witness_hint(inst) if defn.witness_hint else None
        return InequalityReport(
            def_id=defn.ineq_id,
            params=inst.params(),
            min_slack=slack,
            rel_slack=slack / scale if scale > 0 else 0.0,
            witness_z=witness,
            passed=slack >= -tol_rel * scale,
            samples=1,
            radii=(),
            angles_per_radius=0,
            tol_rel=tol_rel,
            scale=scale,
        )

    if angles_per_radius < 256:
        raise ValueError("angles_per_radius must be at least 256")
    radii_eff = _effective_radii(defn, radii)

    candidates = []  # (slack, radius, theta)
    samples = 0
    extra: dict = {}
    neg_count = nonneg_count = 0
    for r in radii_eff:
        theta = 2.0 * np.pi * np.arange(angles_per_radius) / angles_per_radius
        z = r * np.exp(1j * theta)
        lhs, rhs = defn.sides(inst, z)
        slack = _oriented_slack(defn, np.asarray(lhs, dtype=float), np.asarray(rhs, dtype=float))
        samples += angles_per_radius
        order = np.argsort(slack)[:5]
        for i in order:
            candidates.append((float(slack[i]), r, float(theta[i])))
        if defn.ineq_id == "TE3":
            t1, t2 = _chain_brackets(inst, z)
            bracket = np.asarray(t1 - t2, dtype=float)
            neg_count += int((bracket < 0).sum())
            nonneg_count += int((bracket >= 0).sum())

    if defn.ineq_id == "TE3":
        extra["min_term_sign_counts"] = {"neg": neg_count, "nonneg": nonneg_count}

    candidates.sort(key=lambda c: c[0])
    width = 2.0 * np.pi / angles_per_radius
    best_slack, best_z = math.inf, None
    for slack0, r, th0 in candidates[:5]:
        def g(th, _r=r):
            zz = np.asarray([_r * complex(math.cos(th), math.sin(th))])
            lh, rh = defn.sides(inst, zz)
            return float(_oriented_slack(defn, float(np.asarray(lh).reshape(-1)[0]),
                                         float(np.asarray(rh).reshape(-1)[0])))

        val, th = _golden_min(g, th0 - width, th0 + width)
        samples += 2 + 60
        for v, t in ((val, th), (slack0, th0)):
            if v < best_slack:
                best_slack = v
                best_z = r * complex(math.cos(t), math.sin(t))

    lhs_w, rhs_w = evaluate_sides(inst, best_z)
    scale = max(lhs_w, rhs_w)
    return InequalityReport(
        def_id=defn.ineq_id,
        params=inst.params(),
        min_slack=best_slack,
        rel_slack=best_slack / scale if scale > 0 else 0.0,
        witness_z=best_z,
        passed=best_slack >= -tol_rel * scale,
        samples=samples,
        radii=radii_eff,
        angles_per_radius=angles_per_radius,
        tol_rel=tol_rel,
        scale=scale,
        extra=extra,
    )


# ---------------------------------------------------------------------------
# sharpness probes
# ---------------------------------------------------------------------------

_PROBE_FAMILIES = {
    "power": ("E1",),
    "erdos_lax": ("E2",),
    "turan": ("E3", "E5"),
    "half": ("AE", "AWE"),
}


def sharpness_probe(
    def_id: str,
    family: str,
    spec: PolarSpec,
    a: complex | None = None,
    b: complex | None = None,
    radii=DEFAULT_RADII,
    angles_per_radius: int = 512,
) -> float:
    """Minimal relative slack of ``def_id`` on a named equality family.

    Instantiates the extremal polynomial, verifies the hypotheses, and
    minimizes ``slack / bound`` over the z-grid (bound = the dominating
    side).  Values at the level of rounding noise certify sharpness.
    """
    from .generators import extremal_poly_with_roots

    if family not in _PROBE_FAMILIES:
        raise ValueError(f"unknown extremal family {family!r}")
    if def_id not in _PROBE_FAMILIES[family]:
        raise ValueError(
            f"family {family!r} is incompatible with {def_id}; "
            f"valid targets: {', '.join(_PROBE_FAMILIES[family])}"
        )
    poly, roots = extremal_poly_with_roots(family, spec.n, a=a, b=b)
    inst = build_instance(def_id, poly, spec, p_roots=roots)
    defn = inst.defn

    def rel_slack_arr(z):
        lhs, rhs = defn.sides(inst, z)
        lhs = np.asarray(lhs, dtype=float)
        rhs = np.asarray(rhs, dtype=float)
        bound = rhs if defn.direction == "upper" else lhs
        return _oriented_slack(defn, lhs, rhs) / np.maximum(bound, 1e-300)

    if defn.domain == "parameter_only":
        lhs, rhs = defn.sides(inst, None)
        bound = rhs if defn.direction == "upper" else lhs
        return float(_oriented_slack(defn, float(lhs), float(rhs)) / max(bound, 1e-300))

    radii_eff = _effective_radii(defn, radii)
    best = math.inf
    width = 2.0 * np.pi / angles_per_radius
    for r in radii_eff:
        theta = 2.0 * np.pi * np.arange(angles_per_radius) / angles_per_radius
        rel = rel_slack_arr(r * np.exp(1j * theta))
        order = np.argsort(rel)[:3]
        best = min(best, float(rel[order[0]]))
        for i in order:
            def g(th, _r=r):
                return float(rel_slack_arr(np.asarray(
                    [_r * complex(math.cos(th), math.sin(th))]
                ))[0])

            val, _ = _golden_min(g, float(theta[i]) - width, float(theta[i]) + width)
            best = min(best, val)
    return best
