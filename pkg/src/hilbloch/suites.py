"""Verification suites pairing each estimate with an independent companion.

Every suite computes one statement two ways (an estimator against a direct
computation, a moment form against a tail form, a criterion against an
operator probe) and records per-case agreement.  Suite ids are opaque
registry keys; ``run_suite`` is deterministic for a fixed config, and
numeric failures are captured per case instead of aborting the run.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bloch import norm_coefficient_sum, norm_direct, norm_dyadic_blocks, norm_monotone
from .catalog import (
    atom_ladder,
    monotone_family,
    probe_functions,
    resolve_measure,
    resolve_weight,
    series_catalog,
)
from .errors import DomainError, HilblochError
from .hilbert_op import (
    PROBE_GROWING,
    PROBE_STABLE,
    OperatorConfig,
    criterion_beta_spaces,
    criterion_bloch_to_gamma,
    criterion_general,
    criterion_log_spaces,
    criterion_moment,
    operator_norm_probe,
    well_defined_check,
)
from .measures import RadialMeasure, lebesgue, measure_from_json, reweight_agreement
from .quadrature import integrate_radial
from .trend import (
    VERDICT_BOUNDED,
    VERDICT_INCONCLUSIVE,
    VERDICT_UNBOUNDED,
    summarize_ladder,
)
from .weights import (
    NormalWeight,
    build_extremal,
    dyadic_sum_ratio,
    growth_gauge_from_gaps,
    laplace_tail_sweep,
    weight_ratio_bound,
)

CONFIG_VERSION = 1
DEFAULT_SEED = 20260814

FLAG_FINITE = "finite"
FLAG_DIVERGENT = "divergent"
FLAG_ERROR = "error"

_CONFIG_KEYS = {"version", "suite", "resolution_scale", "seed", "options"}


# -- config / result containers ---------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    """One suite run: which registry id, at what resolution, with what options."""

    suite: str
    version: int = CONFIG_VERSION
    resolution_scale: float = 1.0
    seed: int = DEFAULT_SEED
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.version != CONFIG_VERSION:
            raise DomainError(f"unsupported config version {self.version!r}; expected {CONFIG_VERSION}")
        if not self.resolution_scale > 0.0:
            raise DomainError("resolution_scale must be positive")
        if not isinstance(self.options, dict):
            raise DomainError("options must be an object")


def config_from_json(doc: dict) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise DomainError("config must be an object")
    extra = set(doc) - _CONFIG_KEYS
    if extra:
        raise DomainError(f"unknown config keys: {sorted(extra)}")
    if "suite" not in doc:
        raise DomainError("config needs a 'suite' key")
    cfg = ExperimentConfig(
        suite=str(doc["suite"]),
        version=int(doc.get("version", CONFIG_VERSION)),
        resolution_scale=float(doc.get("resolution_scale", 1.0)),
        seed=int(doc.get("seed", DEFAULT_SEED)),
        options=dict(doc.get("options") or {}),
    )
    if cfg.suite not in _REGISTRY:
        raise DomainError(f"unknown suite {cfg.suite!r}; known ids: {sorted(_REGISTRY)}")
    return cfg


def config_to_json(cfg: ExperimentConfig) -> dict:
    return {
        "version": cfg.version,
        "suite": cfg.suite,
        "resolution_scale": cfg.resolution_scale,
        "seed": cfg.seed,
        "options": cfg.options,
    }


@dataclass
class CaseResult:
    """One cross-checked case: two values, two verdicts, one agreement flag."""

    label: str
    left_name: str
    right_name: str
    left: float
    right: float
    ratio: float
    left_verdict: str
    right_verdict: str
    agree: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return _json_safe(
            {
                "label": self.label,
                "left_name": self.left_name,
                "right_name": self.right_name,
                "left": self.left,
                "right": self.right,
                "ratio": self.ratio,
                "left_verdict": self.left_verdict,
                "right_verdict": self.right_verdict,
                "agree": self.agree,
                "detail": self.detail,
            }
        )


@dataclass
class VerificationReport:
    """Outcome of one suite: all cases plus the conjunction of their flags."""

    suite: str
    agreement: bool
    cases: list[CaseResult]
    resolution: dict
    wall_time: float

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "agreement": self.agreement,
            "resolution": _json_safe(self.resolution),
            "wall_time": self.wall_time,
            "cases": [case.to_dict() for case in self.cases],
        }


def _json_safe(value):
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_json_safe(v) for v in value.tolist()]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    return value


# -- shared helpers -----------------------------------------------------------


def _options(cfg: ExperimentConfig, defaults: dict) -> dict:
    extra = set(cfg.options) - set(defaults)
    if extra:
        raise DomainError(f"unknown options for suite {cfg.suite}: {sorted(extra)}")
    merged = dict(defaults)
    merged.update(cfg.options)
    return merged


def _scaled(base: float, scale: float, floor: int, cap: int) -> int:
    return int(max(floor, min(cap, round(base * float(scale)))))


_resolve_weight = resolve_weight
_resolve_measure = resolve_measure


def _guarded(cases: list, label: str, left_name: str, right_name: str, body: Callable[[], CaseResult]):
    try:
        cases.append(body())
    except (HilblochError, ArithmeticError) as exc:
        cases.append(
            CaseResult(
                label,
                left_name,
                right_name,
                math.nan,
                math.nan,
                math.nan,
                FLAG_ERROR,
                FLAG_ERROR,
                False,
                {"error": f"{type(exc).__name__}: {exc}"},
            )
        )


def _flag(divergent: bool) -> str:
    return FLAG_DIVERGENT if divergent else FLAG_FINITE


def _trend_flag(verdict: str) -> str:
    if verdict == VERDICT_BOUNDED:
        return FLAG_FINITE
    if verdict == VERDICT_UNBOUNDED:
        return FLAG_DIVERGENT
    return verdict


def _probe_verdict(classification: str) -> str:
    if classification == PROBE_STABLE:
        return VERDICT_BOUNDED
    if classification == PROBE_GROWING:
        return VERDICT_UNBOUNDED
    return VERDICT_INCONCLUSIVE


def _safe_ratio(num: float, den: float) -> float:
    if not (math.isfinite(num) and math.isfinite(den)) or den == 0.0:
        return math.nan
    return num / den


def _split_forms(result, secondary_name: str) -> tuple[str, str, float, bool]:
    """Primary / secondary verdicts, secondary sup, and the forms_agree flag."""
    secondary = result.details[secondary_name]
    return (
        result.details.get("primary_verdict", result.verdict),
        secondary["verdict"],
        float(secondary["sup_value"]),
        bool(result.details["forms_agree"]),
    )


# -- norm comparison suites (coefficient sums, blocks, monotone) --------------

_NORM_WEIGHTS = ["power_0.5", "power_1", "power_2", "power_log_1_1"]
_NORM_FUNCTIONS = [
    "constant",
    "affine",
    "monomial_8",
    "monomial_64",
    "geometric",
    "ones",
    "harmonic",
    "inverse_square",
    "inverse_sqrt",
    "log_damped",
]


def _norm_comparison(cfg: ExperimentConfig, estimator: Callable, estimator_name: str):
    opts = _options(
        cfg,
        {
            "weights": _NORM_WEIGHTS,
            "functions": _NORM_FUNCTIONS,
            "truncation_exponent": 13,
            "band": 50.0,
            "drift_cap": 0.2,
        },
    )
    exponent = _scaled(opts["truncation_exponent"], cfg.resolution_scale, 6, 16)
    n_base = 2**exponent
    catalog = series_catalog(2 * n_base)
    cases: list[CaseResult] = []
    for weight_name in opts["weights"]:
        weight = _resolve_weight(weight_name)
        for fn_name in opts["functions"]:
            if fn_name not in catalog:
                raise DomainError(f"unknown series name {fn_name!r}; known: {sorted(catalog)}")
            series = catalog[fn_name]
            label = f"{weight_name}|{fn_name}"

            def body(series=series, weight=weight, label=label):
                ratios = {}
                flags = {}
                values = {}
                for tag, n, depth in (("base", n_base, exponent + 2), ("doubled", 2 * n_base, exponent + 3)):
                    fn = series.pad(n)
                    direct = norm_direct(fn, weight, radial_depth=depth)
                    estimate = estimator(fn, weight)
                    ratios[tag] = _safe_ratio(direct.value, estimate.value)
                    flags[tag] = (direct.divergent, estimate.divergent)
                    values[tag] = (direct.value, estimate.value)
                direct_flag, estimate_flag = flags["doubled"]
                drift = abs(ratios["doubled"] - ratios["base"]) / abs(ratios["base"])
                in_band = 1.0 / opts["band"] <= ratios["doubled"] <= opts["band"]
                agree = direct_flag == estimate_flag and in_band and drift <= opts["drift_cap"]
                left, right = values["doubled"]
                return CaseResult(
                    label,
                    "direct_norm",
                    estimator_name,
                    left,
                    right,
                    ratios["doubled"],
                    _flag(direct_flag),
                    _flag(estimate_flag),
                    agree,
                    {"base_ratio": ratios["base"], "drift": drift, "in_band": in_band},
                )

            _guarded(cases, label, "direct_norm", estimator_name, body)
    return cases, {"truncation": n_base, "band": opts["band"], "drift_cap": opts["drift_cap"]}


def _suite_coefficient_norm(cfg: ExperimentConfig):
    return _norm_comparison(cfg, norm_coefficient_sum, "coefficient_sum")


def _suite_block_norm(cfg: ExperimentConfig):
    return _norm_comparison(cfg, norm_dyadic_blocks, "dyadic_block")


def _suite_monotone_norm(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {
            "weights": _NORM_WEIGHTS,
            "functions": list(monotone_family(8).keys()),
            "truncation_exponent": 13,
            "band": 50.0,
        },
    )
    exponent = _scaled(opts["truncation_exponent"], cfg.resolution_scale, 6, 16)
    n_base = 2**exponent
    catalog = monotone_family(n_base)
    cases: list[CaseResult] = []
    for weight_name in opts["weights"]:
        weight = _resolve_weight(weight_name)
        for fn_name in opts["functions"]:
            if fn_name not in catalog:
                raise DomainError(f"unknown monotone series {fn_name!r}; known: {sorted(catalog)}")
            series = catalog[fn_name]
            label = f"{weight_name}|{fn_name}"

            def body(series=series, weight=weight, label=label):
                simple = norm_monotone(series, weight)
                reference = norm_coefficient_sum(series, weight)
                ratio = _safe_ratio(simple.value, reference.value)
                flags_match = simple.divergent == reference.divergent
                in_band = simple.divergent or (1.0 / opts["band"] <= ratio <= opts["band"])
                return CaseResult(
                    label,
                    "monotone_bound",
                    "coefficient_sum",
                    simple.value,
                    reference.value,
                    ratio,
                    _flag(simple.divergent),
                    _flag(reference.divergent),
                    flags_match and in_band,
                    {"slopes": [simple.slope, reference.slope]},
                )

            _guarded(cases, label, "monotone_bound", "coefficient_sum", body)
    return cases, {"truncation": n_base, "band": opts["band"]}


# -- weight geometry suites ----------------------------------------------------


def _suite_extremal(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {
            "weights": ["power_0.5", "power_1", "power_2", "power_log_1_1", "log_power_1"],
            "levels": 10,
            "band_cap": 32.0,
            "growth_cap": 1.5,
        },
    )
    levels = _scaled(opts["levels"], cfg.resolution_scale, 4, 40)
    cases: list[CaseResult] = []
    for weight_name in opts["weights"]:
        weight = _resolve_weight(weight_name)
        label = weight_name

        def body(weight=weight, label=label):
            base = build_extremal(weight, levels)
            deep = build_extremal(weight, levels + 2)
            band_base = base.upper_bound / base.lower_bound
            band_deep = deep.upper_bound / deep.lower_bound
            ratio = _safe_ratio(band_deep, band_base)
            verdicts = [
                "in_band" if band <= opts["band_cap"] else "out_of_band" for band in (band_deep, band_base)
            ]
            agree = verdicts[0] == "in_band" and verdicts[1] == "in_band" and ratio <= opts["growth_cap"]
            return CaseResult(
                label,
                "deep_profile_band",
                "base_profile_band",
                band_deep,
                band_base,
                ratio,
                verdicts[0],
                verdicts[1],
                agree,
                {
                    "bounds_deep": [deep.lower_bound, deep.upper_bound],
                    "bounds_base": [base.lower_bound, base.upper_bound],
                    "top_exponent": int(deep.exponents[-1]),
                },
            )

        _guarded(cases, label, "deep_profile_band", "base_profile_band", body)
    return cases, {"levels": levels, "band_cap": opts["band_cap"]}


def _suite_ratio_bound(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {
            "weights": _NORM_WEIGHTS + ["log_power_1", "log_power_-1"],
            "grid_depth": 12,
            "cap": 4.0,
            "growth_cap": 1.25,
        },
    )
    depth = _scaled(opts["grid_depth"], cfg.resolution_scale, 8, 40)
    cases: list[CaseResult] = []
    for weight_name in opts["weights"]:
        weight = _resolve_weight(weight_name)
        label = weight_name

        def body(weight=weight, label=label):
            base = weight_ratio_bound(weight, grid_depth=depth)
            deep = weight_ratio_bound(weight, grid_depth=depth + 4)
            ratio = _safe_ratio(deep, base)
            verdicts = ["within_cap" if val <= opts["cap"] else "exceeds_cap" for val in (deep, base)]
            agree = verdicts[0] == "within_cap" and verdicts[1] == "within_cap" and ratio <= opts["growth_cap"]
            return CaseResult(
                label,
                "deep_grid_bound",
                "base_grid_bound",
                deep,
                base,
                ratio,
                verdicts[0],
                verdicts[1],
                agree,
                {"grid_depth": depth},
            )

        _guarded(cases, label, "deep_grid_bound", "base_grid_bound", body)
    return cases, {"grid_depth": depth, "cap": opts["cap"]}


def _suite_laplace_tail(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {
            "weights": ["power_0.5", "power_1", "power_log_1_1"],
            "delta_exponents": [2, 3, 4, 5, 6],
            "spread_cap": 100.0,
            "slope_cap": 0.05,
        },
    )
    exponents = sorted(int(e) for e in opts["delta_exponents"])
    deepest = _scaled(max(exponents), cfg.resolution_scale, max(exponents), 7)
    exponents = sorted(set(exponents) | set(range(max(exponents) + 1, deepest + 1)))
    deltas = [10.0**-e for e in exponents]
    cases: list[CaseResult] = []
    for weight_name in opts["weights"]:
        weight = _resolve_weight(weight_name)
        label = weight_name

        def body(weight=weight, label=label):
            report = laplace_tail_sweep(weight, deltas)
            spread_ok = report.spread <= opts["spread_cap"]
            trend_ok = report.slope <= opts["slope_cap"]
            return CaseResult(
                label,
                "sweep_max",
                "sweep_min",
                float(np.max(report.values)),
                float(np.min(report.values)),
                report.spread,
                "bounded_spread" if spread_ok else "wide_spread",
                "non_increasing" if trend_ok else "increasing",
                spread_ok and trend_ok,
                {"slope": report.slope, "values": report.values, "deltas": report.deltas},
            )

        _guarded(cases, label, "sweep_max", "sweep_min", body)
    return cases, {"delta_exponents": exponents, "spread_cap": opts["spread_cap"]}


def _suite_dyadic_sum(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {
            "weights": _NORM_WEIGHTS,
            "base_depth": 16,
            "deep_depth": 20,
            "growth_cap": 2.0,
        },
    )
    base_depth = _scaled(opts["base_depth"], cfg.resolution_scale, 8, 44)
    deep_depth = max(base_depth + 4, _scaled(opts["deep_depth"], cfg.resolution_scale, 12, 48))
    cases: list[CaseResult] = []
    for weight_name in opts["weights"]:
        weight = _resolve_weight(weight_name)
        label = weight_name

        def body(weight=weight, label=label):
            def ladder_sup(depth: int) -> float:
                radii = 1.0 - 2.0 ** -np.arange(1.0, depth + 1.0)
                return max(dyadic_sum_ratio(weight, r, j_max=depth + 30) for r in radii)

            base = ladder_sup(base_depth)
            deep = ladder_sup(deep_depth)
            ratio = _safe_ratio(deep, base)
            agree = math.isfinite(deep) and ratio < opts["growth_cap"]
            return CaseResult(
                label,
                "deep_ladder_sup",
                "base_ladder_sup",
                deep,
                base,
                ratio,
                FLAG_FINITE if math.isfinite(deep) else FLAG_DIVERGENT,
                FLAG_FINITE if math.isfinite(base) else FLAG_DIVERGENT,
                agree,
                {"base_depth": base_depth, "deep_depth": deep_depth},
            )

        _guarded(cases, label, "deep_ladder_sup", "base_ladder_sup", body)
    return cases, {"base_depth": base_depth, "deep_depth": deep_depth}


# -- Carleson reweighting suite -------------------------------------------------

_REWEIGHT_CASES = [
    {"measure": "lebesgue", "beta": 0.5, "gamma": 0.5},
    {"measure": "lebesgue", "beta": 1.5, "gamma": 0.5},
    {"measure": "density_2", "beta": 2.0, "gamma": 1.0},
    {"measure": "density_2", "beta": 2.5, "gamma": 1.0},
    {"measure": "density_1", "beta": 1.0, "gamma": 1.0},
    {"measure": "density_1", "beta": 1.6, "gamma": 0.6},
    {"measure": "atom_ladder_16", "beta": 0.7, "gamma": 0.3},
    {"measure": "atom_ladder_16", "beta": 1.2, "gamma": 0.3},
]


def _suite_reweight(cfg: ExperimentConfig):
    opts = _options(cfg, {"cases": _REWEIGHT_CASES, "depth": 24})
    depth = _scaled(opts["depth"], cfg.resolution_scale, 10, 50)
    cases: list[CaseResult] = []
    for spec in opts["cases"]:
        beta = float(spec["beta"])
        gamma = float(spec["gamma"])
        label = f"{spec['measure'] if isinstance(spec['measure'], str) else 'custom'}|beta={beta:g}|gamma={gamma:g}"

        def body(spec=spec, beta=beta, gamma=gamma, label=label):
            mu = _resolve_measure(spec["measure"])
            report = reweight_agreement(mu, beta, gamma, depth=depth)
            return CaseResult(
                label,
                "combined_exponent_sup",
                "reweighted_sup",
                report.original.sup_value,
                report.transformed.sup_value,
                _safe_ratio(report.original.sup_value, report.transformed.sup_value),
                report.original.verdict,
                report.transformed.verdict,
                report.agree,
                {"beta": beta, "gamma": gamma, "depth": depth},
            )

        _guarded(cases, label, "combined_exponent_sup", "reweighted_sup", body)
    return cases, {"depth": depth}


# -- well-definedness suite -----------------------------------------------------


def _witness_values(weight: NormalWeight, gap_target: float):
    """Antiderivative of the comparison series, evaluated sparsely.

    Levels are added until the solved radii reach gap_target, so the witness
    keeps growing through every atom the suite places.
    """
    levels = 8
    while True:
        ext = build_extremal(weight, levels)
        if 1.0 - ext.radii[-1] <= gap_target or levels >= 58:
            break
        levels += 6
    pairs = ext.coefficient_pairs()

    def values(ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        out = np.ones_like(ts)
        for exponent, coeff in pairs:
            out = out + coeff * ts ** (exponent + 1) / (exponent + 1)
        return out

    return values


def _partial_gauge_integral(mu: RadialMeasure, weight: NormalWeight, r: float) -> float:
    """Integral of (gauge + 1) d mu over [0, r]; finite-interval quadrature only."""

    def fn(t, omt):
        return growth_gauge_from_gaps(weight, omt) + 1.0

    total = sum(wgt * float(fn(np.asarray([t]), np.asarray([1.0 - t]))[0]) for t, wgt in mu.atoms if t <= r)
    if mu.density is not None:
        total += integrate_radial(
            lambda t, omt: fn(t, omt) * mu.density.eval(t, omt),
            lower=0.0,
            upper=r,
            rel_tol=1e-9,
        )
    return total


_WELL_DEFINED_FIXED = [
    {"measure": "lebesgue", "weight": "power_1"},
    {"measure": "lebesgue", "weight": "power_2"},
    {"measure": "density_1", "weight": "power_2"},
    {"measure": "atom_half", "weight": "power_2"},
]


def _suite_well_defined(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {
            "ladder_weights": ["power_0.5", "power_1", "power_2"],
            "ladder_levels": [6, 10, 14, 18, 22],
            "fixed_cases": _WELL_DEFINED_FIXED,
            "partial_depths": [4, 8, 12, 16, 20],
        },
    )
    scale = cfg.resolution_scale
    ladder_levels = sorted({_scaled(lv, scale, 4, 44) for lv in opts["ladder_levels"]})
    partial_depths = sorted({_scaled(d, scale, 4, 40) for d in opts["partial_depths"]})
    cases: list[CaseResult] = []

    for weight_name in opts["ladder_weights"]:
        weight = _resolve_weight(weight_name)
        label = f"atom_family|{weight_name}"

        def body(weight=weight, label=label):
            witness = _witness_values(weight, 2.0 ** -max(ladder_levels))
            xs = np.array([2.0**lv for lv in ladder_levels])
            gauge_side = np.empty(len(ladder_levels))
            apply_side = np.empty(len(ladder_levels))
            for i, lv in enumerate(ladder_levels):
                mu = atom_ladder(lv)
                gauge_side[i] = well_defined_check(mu, weight).integral
                apply_side[i] = mu.integral(lambda t, omt: witness(t))
            gauge_trend = summarize_ladder(xs, gauge_side, "gauge integral over atom family")
            apply_trend = summarize_ladder(xs, apply_side, "witness image at the origin")
            left_flag = _trend_flag(gauge_trend.verdict)
            right_flag = _trend_flag(apply_trend.verdict)
            return CaseResult(
                label,
                "gauge_integral",
                "witness_image",
                float(gauge_side[-1]),
                float(apply_side[-1]),
                _safe_ratio(gauge_side[-1], apply_side[-1]),
                left_flag,
                right_flag,
                left_flag == right_flag and left_flag != VERDICT_INCONCLUSIVE,
                {
                    "levels": list(ladder_levels),
                    "gauge_values": gauge_side,
                    "witness_values": apply_side,
                    "slopes": [gauge_trend.log_slope, apply_trend.log_slope],
                },
            )

        _guarded(cases, label, "gauge_integral", "witness_image", body)

    for spec in opts["fixed_cases"]:
        m_name = spec["measure"] if isinstance(spec["measure"], str) else "custom"
        w_name = spec["weight"] if isinstance(spec["weight"], str) else "custom"
        label = f"fixed|{m_name}|{w_name}"

        def body(spec=spec, label=label):
            mu = _resolve_measure(spec["measure"])
            weight = _resolve_weight(spec["weight"])
            report = well_defined_check(mu, weight)
            radii = 1.0 - 2.0 ** -np.asarray(partial_depths, dtype=float)
            partials = np.array([_partial_gauge_integral(mu, weight, r) for r in radii])
            trend = summarize_ladder(2.0 ** np.asarray(partial_depths, dtype=float), partials, "partial gauge integral")
            left_flag = _flag(not report.finite)
            right_flag = _trend_flag(trend.verdict)
            return CaseResult(
                label,
                "adaptive_integral",
                "truncated_ladder",
                report.integral,
                float(partials[-1]),
                _safe_ratio(report.integral, partials[-1]),
                left_flag,
                right_flag,
                left_flag == right_flag and right_flag != VERDICT_INCONCLUSIVE,
                {"partials": partials, "depths": list(partial_depths), "slope": trend.log_slope},
            )

        _guarded(cases, label, "adaptive_integral", "truncated_ladder", body)

    return cases, {"ladder_levels": ladder_levels, "partial_depths": partial_depths}


# -- operator criteria against probes -------------------------------------------

_GENERAL_CASES = [
    {"measure": "atom_half", "omega": "power_1", "nu": "power_1", "alpha": 0.0},
    {
        "measure": {"density": {"kind": "power_log", "s": 1.5, "gamma": 0.0}, "label": "(1-t)^1.5 dt"},
        "omega": "power_0.5",
        "nu": "power_1",
        "alpha": 0.0,
    },
    {"measure": "density_-0.5", "omega": "power_0.5", "nu": "power_1", "alpha": 0.0},
    {"measure": "lebesgue", "omega": "power_0.5", "nu": "power_0.5", "alpha": 0.0},
    {"measure": "density_2", "omega": "power_1", "nu": "power_2", "alpha": 1.0},
    {"measure": "density_1_log-1", "omega": "power_0.5", "nu": "power_1", "alpha": 0.0},
]

_MOMENT_CASES = [
    {"measure": "atom_half", "omega": "power_0.5", "nu": "power_1", "alpha": 0.0},
    {"measure": "lebesgue", "omega": "power_0.5", "nu": "power_1", "alpha": 0.0},
    {"measure": "density_1", "omega": "power_0.5", "nu": "power_1", "alpha": 0.0},
    {"measure": "density_-0.5", "omega": "power_0.5", "nu": "power_1", "alpha": 0.0},
    {"measure": "lebesgue", "omega": {"kind": "power", "gamma": 0.3}, "nu": "power_1", "alpha": 1.0},
    {"measure": "density_1_log-1", "omega": "power_0.5", "nu": "power_0.5", "alpha": 0.0},
    {"measure": "atom_ladder_16", "omega": "power_0.5", "nu": "power_1", "alpha": 0.0},
]


def _case_label(spec: dict) -> str:
    def name(item):
        return item if isinstance(item, str) else item.get("label", item.get("kind", "custom"))

    return f"{name(spec['measure'])}|{name(spec['omega'])}->{name(spec['nu'])}|alpha={spec['alpha']:g}"


def _run_probe(mu, omega, nu, alpha, probe_exponent):
    n_base = 2**probe_exponent
    functions = probe_functions(omega, 2 * n_base)
    return operator_norm_probe(OperatorConfig(alpha, mu, n_base), omega, nu, functions)


def _suite_general_criterion(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {"cases": _GENERAL_CASES, "n_max_exponent": 18, "probe_exponent": 10},
    )
    n_exp = _scaled(opts["n_max_exponent"], cfg.resolution_scale, 10, 26)
    probe_exp = _scaled(opts["probe_exponent"], cfg.resolution_scale, 7, 13)
    cases: list[CaseResult] = []
    for spec in opts["cases"]:
        label = _case_label(spec)

        def body(spec=spec, label=label):
            mu = _resolve_measure(spec["measure"])
            omega = _resolve_weight(spec["omega"])
            nu = _resolve_weight(spec["nu"])
            alpha = float(spec["alpha"])
            crit = criterion_general(mu, omega, nu, alpha, n_max=2**n_exp)
            probe = _run_probe(mu, omega, nu, alpha, probe_exp)
            probe_verdict = _probe_verdict(probe.classification)
            return CaseResult(
                label,
                "gauge_moment_criterion",
                "norm_ratio_probe",
                crit.sup_value,
                probe.ratio,
                probe.growth,
                crit.verdict,
                probe_verdict,
                crit.verdict == probe_verdict,
                {"criterion": crit.to_dict(), "probe": probe.to_dict()},
            )

        _guarded(cases, label, "gauge_moment_criterion", "norm_ratio_probe", body)
    return cases, {"n_max": 2**n_exp, "probe_truncation": 2**probe_exp}


def _suite_moment_criterion(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {"cases": _MOMENT_CASES, "n_max_exponent": 18, "probe_exponent": 10},
    )
    n_exp = _scaled(opts["n_max_exponent"], cfg.resolution_scale, 10, 26)
    probe_exp = _scaled(opts["probe_exponent"], cfg.resolution_scale, 7, 13)
    cases: list[CaseResult] = []
    for spec in opts["cases"]:
        label = _case_label(spec)

        def body(spec=spec, label=label):
            mu = _resolve_measure(spec["measure"])
            omega = _resolve_weight(spec["omega"])
            nu = _resolve_weight(spec["nu"])
            alpha = float(spec["alpha"])
            plain = criterion_moment(mu, omega, nu, alpha, n_max=2**n_exp)
            general = criterion_general(mu, omega, nu, alpha, n_max=2**n_exp)
            probe = _run_probe(mu, omega, nu, alpha, probe_exp)
            probe_verdict = _probe_verdict(probe.classification)
            agree = plain.verdict == general.verdict == probe_verdict
            return CaseResult(
                label,
                "plain_moment_criterion",
                "gauge_moment_criterion",
                plain.sup_value,
                general.sup_value,
                _safe_ratio(plain.sup_value, general.sup_value),
                plain.verdict,
                general.verdict,
                agree,
                {
                    "probe_verdict": probe_verdict,
                    "probe_growth": probe.growth,
                    "compactness": plain.details.get("compactness"),
                },
            )

        _guarded(cases, label, "plain_moment_criterion", "gauge_moment_criterion", body)
    return cases, {"n_max": 2**n_exp, "probe_truncation": 2**probe_exp}


# -- target-growth criteria ------------------------------------------------------

_LOG_TARGET_CASES = [
    {
        "measure": {"density": {"kind": "power_log", "s": 0.0, "gamma": -2.0}, "label": "log^-2(e/(1-t)) dt"},
        "alpha": 0.0,
        "gamma": 1.0,
    },
    {"measure": "lebesgue", "alpha": 0.0, "gamma": 1.0},
    {"measure": "atom_half", "alpha": 0.5, "gamma": 1.0},
    {"measure": "density_2", "alpha": 1.0, "gamma": 1.0},
    {"measure": "lebesgue", "alpha": 0.0, "gamma": 2.5},
]


def _suite_log_target(cfg: ExperimentConfig):
    opts = _options(cfg, {"cases": _LOG_TARGET_CASES, "n_max_exponent": 18, "depth": 24})
    n_exp = _scaled(opts["n_max_exponent"], cfg.resolution_scale, 10, 26)
    depth = _scaled(opts["depth"], cfg.resolution_scale, 10, 50)
    cases: list[CaseResult] = []
    for spec in opts["cases"]:
        m_name = spec["measure"] if isinstance(spec["measure"], str) else spec["measure"].get("label", "custom")
        label = f"{m_name}|alpha={spec['alpha']:g}|gamma={spec['gamma']:g}"

        def body(spec=spec, label=label):
            mu = _resolve_measure(spec["measure"])
            result = criterion_bloch_to_gamma(
                mu, float(spec["alpha"]), float(spec["gamma"]), mode="carleson", n_max=2**n_exp, depth=depth
            )
            if result.details.get("automatic"):
                return CaseResult(
                    label,
                    "carleson_form",
                    "moment_form",
                    0.0,
                    0.0,
                    1.0,
                    result.verdict,
                    result.verdict,
                    result.verdict == VERDICT_BOUNDED,
                    {"automatic": True},
                )
            left_verdict, right_verdict, right_sup, forms_agree = _split_forms(result, "moment_form")
            return CaseResult(
                label,
                "carleson_form",
                "moment_form",
                result.sup_value,
                right_sup,
                _safe_ratio(result.sup_value, right_sup),
                left_verdict,
                right_verdict,
                forms_agree,
                {"verdict": result.verdict},
            )

        _guarded(cases, label, "carleson_form", "moment_form", body)
    return cases, {"n_max": 2**n_exp, "depth": depth}


def _suite_beta_large(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {
            "alpha": 0.5,
            "beta": 2.0,
            "gamma": 1.0,
            "sigma_offsets": [-0.75, -0.25, 0.25, 0.75],
            "depth": 24,
        },
    )
    depth = _scaled(opts["depth"], cfg.resolution_scale, 10, 50)
    alpha, beta, gamma = float(opts["alpha"]), float(opts["beta"]), float(opts["gamma"])
    threshold = alpha + beta - gamma
    cases: list[CaseResult] = []
    for offset in opts["sigma_offsets"]:
        sigma = threshold + float(offset)
        expected = VERDICT_BOUNDED if offset > 0 else VERDICT_UNBOUNDED
        label = f"sigma={sigma:g}"

        def body(sigma=sigma, expected=expected, label=label):
            mu = measure_from_json(
                {"density": {"kind": "power_log", "s": sigma, "gamma": 0.0}, "label": f"(1-t)^{sigma:g} dt"}
            )
            result = criterion_beta_spaces(mu, alpha, beta, gamma, depth=depth)
            left_verdict, right_verdict, right_sup, forms_agree = _split_forms(result, "reweighted_form")
            return CaseResult(
                label,
                "combined_carleson",
                "reweighted_carleson",
                result.sup_value,
                right_sup,
                _safe_ratio(result.sup_value, right_sup),
                left_verdict,
                right_verdict,
                forms_agree and result.verdict == expected,
                {"expected": expected, "threshold": threshold, "verdict": result.verdict},
            )

        _guarded(cases, label, "combined_carleson", "reweighted_carleson", body)
    return cases, {"depth": depth, "threshold": threshold}


def _suite_beta_small(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {
            "alpha": 0.5,
            "beta": 0.5,
            "gamma": 1.0,
            "sigma_offsets": [-0.75, -0.25, 0.25, 0.75],
            "depth": 24,
        },
    )
    depth = _scaled(opts["depth"], cfg.resolution_scale, 10, 50)
    alpha, beta, gamma = float(opts["alpha"]), float(opts["beta"]), float(opts["gamma"])
    threshold = alpha + 1.0 - gamma
    cases: list[CaseResult] = []
    for offset in opts["sigma_offsets"]:
        sigma = threshold + float(offset)
        expected = VERDICT_BOUNDED if offset > 0 else VERDICT_UNBOUNDED
        label = f"sigma={sigma:g}"

        def body(sigma=sigma, expected=expected, label=label):
            mu = measure_from_json(
                {"density": {"kind": "power_log", "s": sigma, "gamma": 0.0}, "label": f"(1-t)^{sigma:g} dt"}
            )
            result = criterion_beta_spaces(mu, alpha, beta, gamma, depth=depth)
            compactness = result.details.get("compactness")
            return CaseResult(
                label,
                "carleson_sup",
                "threshold_prediction",
                result.sup_value,
                sigma - threshold,
                math.nan,
                result.verdict,
                expected,
                result.verdict == expected and compactness == result.verdict,
                {"threshold": threshold, "compactness": compactness},
            )

        _guarded(cases, label, "carleson_sup", "threshold_prediction", body)
    return cases, {"depth": depth, "threshold": threshold}


def _log_space_case(mu, label, alpha, beta, gamma, expected, n_exp, depth):
    result = criterion_log_spaces(mu, alpha, beta, gamma, n_max=2**n_exp, depth=depth)
    left_verdict, right_verdict, right_sup, forms_agree = _split_forms(result, "tail_form")
    agree = forms_agree and (expected is None or result.verdict == expected)
    return CaseResult(
        label,
        "moment_form",
        "tail_form",
        result.sup_value,
        right_sup,
        _safe_ratio(result.sup_value, right_sup),
        left_verdict,
        right_verdict,
        agree,
        {"expected": expected, "verdict": result.verdict, "compactness": result.details.get("compactness")},
    )


_LOG_SOURCE_CASES = [
    {"beta": 0.0, "gamma": 1.0, "expected": VERDICT_BOUNDED},
    {"beta": 1.0, "gamma": 2.0, "expected": VERDICT_BOUNDED},
    {"beta": 0.0, "gamma": 0.0, "expected": VERDICT_UNBOUNDED},
]


def _suite_log_sources(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {"measure": "lebesgue", "alpha": 0.0, "cases": _LOG_SOURCE_CASES, "n_max_exponent": 18, "depth": 24},
    )
    n_exp = _scaled(opts["n_max_exponent"], cfg.resolution_scale, 10, 26)
    depth = _scaled(opts["depth"], cfg.resolution_scale, 10, 50)
    alpha = float(opts["alpha"])
    cases: list[CaseResult] = []
    for spec in opts["cases"]:
        beta, gamma = float(spec["beta"]), float(spec["gamma"])
        label = f"beta={beta:g}|gamma={gamma:g}"

        def body(spec=spec, beta=beta, gamma=gamma, label=label):
            mu = _resolve_measure(opts["measure"])
            return _log_space_case(mu, label, alpha, beta, gamma, spec.get("expected"), n_exp, depth)

        _guarded(cases, label, "moment_form", "tail_form", body)
    return cases, {"n_max": 2**n_exp, "depth": depth, "alpha": alpha}


_LOG_BORDER_CASES = [
    {"gamma": 0.0, "expected": VERDICT_UNBOUNDED},
    {"gamma": 1.0, "expected": VERDICT_BOUNDED},
]


def _suite_log_border(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {"measure": "lebesgue", "alpha": 0.0, "cases": _LOG_BORDER_CASES, "n_max_exponent": 18, "depth": 24},
    )
    n_exp = _scaled(opts["n_max_exponent"], cfg.resolution_scale, 10, 26)
    depth = _scaled(opts["depth"], cfg.resolution_scale, 10, 50)
    alpha = float(opts["alpha"])
    cases: list[CaseResult] = []
    for spec in opts["cases"]:
        gamma = float(spec["gamma"])
        label = f"gamma={gamma:g}"

        def body(spec=spec, gamma=gamma, label=label):
            mu = _resolve_measure(opts["measure"])
            return _log_space_case(mu, label, alpha, -1.0, gamma, spec.get("expected"), n_exp, depth)

        _guarded(cases, label, "moment_form", "tail_form", body)
    return cases, {"n_max": 2**n_exp, "depth": depth, "alpha": alpha}


_LOG_FAST_CASES = [
    {"gamma": -1.0, "expected": VERDICT_UNBOUNDED},
    {"gamma": 0.0, "expected": VERDICT_BOUNDED},
    {"gamma": 1.0, "expected": VERDICT_BOUNDED},
]


def _suite_log_fast(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {
            "measure": "lebesgue",
            "alpha": 0.0,
            "beta": -2.0,
            "cases": _LOG_FAST_CASES,
            "n_max_exponent": 18,
            "depth": 24,
        },
    )
    n_exp = _scaled(opts["n_max_exponent"], cfg.resolution_scale, 10, 26)
    depth = _scaled(opts["depth"], cfg.resolution_scale, 10, 50)
    alpha, beta = float(opts["alpha"]), float(opts["beta"])
    cases: list[CaseResult] = []
    for spec in opts["cases"]:
        gamma = float(spec["gamma"])
        label = f"gamma={gamma:g}"

        def body(spec=spec, gamma=gamma, label=label):
            mu = _resolve_measure(opts["measure"])
            return _log_space_case(mu, label, alpha, beta, gamma, spec.get("expected"), n_exp, depth)

        _guarded(cases, label, "moment_form", "tail_form", body)
    return cases, {"n_max": 2**n_exp, "depth": depth, "beta": beta}


def _suite_log_shift(cfg: ExperimentConfig):
    opts = _options(
        cfg,
        {"alpha": 0.0, "betas": [-2.0, -1.0, -0.5, 0.0, 1.0], "n_max_exponent": 18, "depth": 24},
    )
    n_exp = _scaled(opts["n_max_exponent"], cfg.resolution_scale, 10, 26)
    depth = _scaled(opts["depth"], cfg.resolution_scale, 10, 50)
    alpha = float(opts["alpha"])
    cases: list[CaseResult] = []
    for beta in opts["betas"]:
        beta = float(beta)
        expected = VERDICT_BOUNDED if beta > -1.0 else VERDICT_UNBOUNDED
        label = f"beta={beta:g}->gamma={beta + 1:g}"

        def body(beta=beta, expected=expected, label=label):
            return _log_space_case(lebesgue(), label, alpha, beta, beta + 1.0, expected, n_exp, depth)

        _guarded(cases, label, "moment_form", "tail_form", body)
    return cases, {"n_max": 2**n_exp, "depth": depth, "alpha": alpha}


# -- registry -------------------------------------------------------------------

_REGISTRY: dict[str, Callable[[ExperimentConfig], tuple[list[CaseResult], dict]]] = {
    "L2.1": _suite_block_norm,
    "L2.2": _suite_extremal,
    "L2.3": _suite_ratio_bound,
    "L2.4": _suite_laplace_tail,
    "L2.5": _suite_reweight,
    "T3.1": _suite_coefficient_norm,
    "E3.1": _suite_dyadic_sum,
    "T3.3": _suite_monotone_norm,
    "P4.1": _suite_well_defined,
    "T4.2": _suite_general_criterion,
    "T4.3": _suite_moment_criterion,
    "T5.1": _suite_log_target,
    "T5.3": _suite_beta_large,
    "T5.4": _suite_beta_small,
    "T5.6": _suite_log_sources,
    "T5.7": _suite_log_border,
    "T5.8": _suite_log_fast,
    "remark5": _suite_log_shift,
}


def list_suites() -> list[str]:
    return sorted(_REGISTRY)


def default_config(suite: str) -> ExperimentConfig:
    if suite not in _REGISTRY:
        raise DomainError(f"unknown suite {suite!r}; known ids: {sorted(_REGISTRY)}")
    return ExperimentConfig(suite=suite)


def run_suite(cfg: ExperimentConfig) -> VerificationReport:
    """Execute one suite; unknown ids raise, case-level numerics do not."""
    checker = _REGISTRY.get(cfg.suite)
    if checker is None:
        raise DomainError(f"unknown suite {cfg.suite!r}; known ids: {sorted(_REGISTRY)}")
    start = time.perf_counter()
    cases, resolution = checker(cfg)
    resolution = dict(resolution)
    resolution["resolution_scale"] = cfg.resolution_scale
    resolution["seed"] = cfg.seed
    return VerificationReport(
        suite=cfg.suite,
        agreement=all(case.agree for case in cases),
        cases=cases,
        resolution=resolution,
        wall_time=time.perf_counter() - start,
    )
