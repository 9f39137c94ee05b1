"""Measure layer: moments against closed forms, tails, Carleson quantities."""

import io
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hilbloch.catalog import builtin_measures
from hilbloch.errors import ConstructionError, DomainError
from hilbloch.measures import (
    carleson_sup,
    lebesgue,
    measure_from_json,
    measure_to_json,
    moments_to_csv,
    point_mass,
    power_log_density,
    power_reweight,
    radial_measure,
    reweight_agreement,
)
from hilbloch.trend import VERDICT_BOUNDED, VERDICT_UNBOUNDED


def harmonic(n: int) -> float:
    return sum(1.0 / k for k in range(1, n + 1))


def log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


class TestMoments:
    def test_lebesgue_moments(self):
        mu = lebesgue()
        for n in (0, 1, 5, 31, 200):
            assert mu.moment(n) == pytest.approx(1.0 / (n + 1.0), rel=1e-11)

    def test_linear_density_moments(self):
        mu = builtin_measures()["density_1"]
        for n in (0, 3, 17):
            oracle = 1.0 / ((n + 1.0) * (n + 2.0))
            assert mu.moment(n) == pytest.approx(oracle, rel=1e-10)

    def test_beta_moments_with_endpoint_singularity(self):
        mu = builtin_measures()["density_-0.5"]
        for n in (0, 2, 16):
            oracle = math.exp(log_beta(n + 1.0, 0.5))
            assert mu.moment(n) == pytest.approx(oracle, rel=1e-9)

    def test_logarithmic_moments(self):
        # density log(e/(1-t)): moment_n = 1/(n+1) + H_{n+1}/(n+1).
        mu = radial_measure(density=power_log_density(0.0, 1.0))
        for n in (0, 4, 12):
            oracle = (1.0 + harmonic(n + 1)) / (n + 1.0)
            assert mu.moment(n) == pytest.approx(oracle, rel=1e-9)

    def test_atom_moments(self):
        mu = point_mass(0.5, weight=2.0)
        assert mu.moment(0) == pytest.approx(2.0)
        assert mu.moment(10) == pytest.approx(2.0 * 0.5**10, rel=1e-13)

    def test_mixture_is_additive(self):
        mixed = radial_measure(atoms=[(0.5, 1.0)], density=power_log_density(0.0))
        for n in (0, 3, 9):
            assert mixed.moment(n) == pytest.approx(0.5**n + 1.0 / (n + 1.0), rel=1e-10)

    def test_weighted_moments_apply_phi_to_atoms(self):
        mixed = radial_measure(atoms=[(0.5, 1.0)], density=power_log_density(0.0))
        vals = mixed.moments_at([0, 2], phi=lambda t, omt: omt)
        oracle = lambda n: 0.5 * 0.5**n + 1.0 / ((n + 1.0) * (n + 2.0))
        assert vals[0] == pytest.approx(oracle(0), rel=1e-10)
        assert vals[1] == pytest.approx(oracle(2), rel=1e-10)

    def test_contiguous_matches_pointwise(self):
        mu = builtin_measures()["density_1_log-1"]
        block = mu.contiguous_moments(24)
        singles = mu.moments_at(np.arange(25))
        assert np.allclose(block, singles, rtol=1e-9)

    def test_moments_decrease(self):
        for name, mu in builtin_measures().items():
            ms = mu.contiguous_moments(64)
            assert np.all(np.diff(ms) <= 1e-12 * ms[:-1]), name

    def test_hankel_entry_is_shifted_moment(self):
        mu = lebesgue()
        assert mu.hankel_entry(3, 4) == pytest.approx(mu.moment(7), rel=1e-12)


class TestIntegralAndTail:
    def test_kinked_integrand_with_breakpoint(self):
        val = lebesgue().integral(lambda t, omt: np.abs(2.0 * t - 1.0), breakpoints=(0.5,))
        assert val == pytest.approx(0.5, rel=1e-10)

    def test_atom_only_integral(self):
        mu = radial_measure(atoms=[(0.25, 1.0), (0.75, 2.0)])
        val = mu.integral(lambda t, omt: t)
        assert val == pytest.approx(0.25 + 1.5)

    def test_lebesgue_tail(self):
        mu = lebesgue()
        for t in (0.0, 0.3, 0.9):
            assert mu.tail(t) == pytest.approx(1.0 - t, rel=1e-10)

    def test_power_density_tail(self):
        mu = builtin_measures()["density_2"]
        assert mu.tail(0.5) == pytest.approx(0.5**3 / 3.0, rel=1e-9)

    def test_atom_tail_counts_left_closed(self):
        mu = point_mass(0.5)
        assert mu.tail(0.4) == pytest.approx(1.0)
        assert mu.tail(0.5) == pytest.approx(1.0)
        assert mu.tail(0.6) == pytest.approx(0.0, abs=1e-12)

    def test_tails_decrease_from_total_mass(self):
        for name, mu in builtin_measures().items():
            ts = np.linspace(0.0, 0.99, 12)
            tails = np.array([mu.tail(float(t)) for t in ts])
            assert np.all(np.diff(tails) <= 1e-10), name
            assert tails[0] == pytest.approx(mu.mass, rel=1e-9), name


class TestJsonAndCsv:
    def test_round_trip_builtins(self):
        for name, mu in builtin_measures().items():
            again = measure_from_json(measure_to_json(mu))
            ns = [0, 1, 7]
            assert np.allclose(again.moments_at(ns), mu.moments_at(ns), rtol=1e-9), name

    def test_unknown_keys_rejected(self):
        with pytest.raises(ConstructionError):
            measure_from_json({"atoms": [], "bogus": 1})

    def test_unknown_density_kind_rejected(self):
        with pytest.raises(ConstructionError):
            measure_from_json({"density": {"kind": "spline", "s": 0.0, "gamma": 0.0}})

    def test_empty_descriptor_builds_zero_measure(self):
        mu = measure_from_json({})
        assert mu.mass == 0.0
        assert mu.moment(0) == 0.0

    def test_moments_csv_layout(self):
        text = moments_to_csv(lebesgue(), 3)
        lines = text.strip().splitlines()
        assert lines[0] == "n,mu_n"
        assert len(lines) == 5
        n, value = lines[2].split(",")
        assert (int(n), float(value)) == (1, pytest.approx(0.5, rel=1e-10))

    def test_moments_csv_stream(self):
        buf = io.StringIO()
        moments_to_csv(lebesgue(), 2, stream=buf)
        assert buf.getvalue().startswith("n,mu_n")


class TestCarleson:
    def test_lebesgue_is_exactly_one_carleson(self):
        result = carleson_sup(lebesgue(), s=1.0)
        assert result.verdict == VERDICT_BOUNDED
        assert result.sup_value == pytest.approx(1.0, rel=1e-6)

    def test_lebesgue_fails_larger_exponent(self):
        result = carleson_sup(lebesgue(), s=1.5)
        assert result.verdict == VERDICT_UNBOUNDED

    def test_log_factor_breaks_criticality(self):
        result = carleson_sup(lebesgue(), gamma_log=1.0, s=1.0)
        assert result.verdict == VERDICT_UNBOUNDED

    def test_log_factor_helps_subcritical(self):
        result = carleson_sup(lebesgue(), gamma_log=-1.0, s=1.0)
        assert result.verdict == VERDICT_BOUNDED

    def test_atom_ladder_matches_density_rate(self):
        # Atoms (1-2^-s, 2^-s) mimic Lebesgue mass at dyadic scales.
        mu = builtin_measures()["atom_ladder_16"]
        result = carleson_sup(mu, s=1.0, depth=14)
        assert result.verdict == VERDICT_BOUNDED

    @given(st.floats(min_value=0.2, max_value=2.5))
    def test_power_density_threshold(self, s_density):
        # (1-t)^c dt is s-Carleson exactly when s <= c+1.
        mu = radial_measure(density=power_log_density(s_density))
        result = carleson_sup(mu, s=s_density + 0.6, depth=20)
        assert result.verdict == VERDICT_BOUNDED
        result = carleson_sup(mu, s=s_density + 1.5, depth=20)
        assert result.verdict == VERDICT_UNBOUNDED


class TestReweight:
    def test_atoms_reweight_exactly(self):
        mu = point_mass(0.5, weight=3.0)
        out = power_reweight(mu, 2.0)
        assert out.moment(0) == pytest.approx(3.0 / 0.25, rel=1e-12)

    def test_density_shifts_exponent(self):
        mu = builtin_measures()["density_2"]
        out = power_reweight(mu, 1.0)
        for n in (0, 5):
            oracle = 1.0 / ((n + 1.0) * (n + 2.0))
            assert out.moment(n) == pytest.approx(oracle, rel=1e-10)

    def test_equivalence_on_bounded_case(self):
        report = reweight_agreement(lebesgue(), beta=0.5, gamma=0.5, depth=20)
        assert report.agree
        assert report.original.verdict == VERDICT_BOUNDED
        assert report.transformed.verdict == VERDICT_BOUNDED

    def test_equivalence_on_unbounded_case(self):
        report = reweight_agreement(lebesgue(), beta=1.5, gamma=0.5, depth=20)
        assert report.agree
        assert report.original.verdict == VERDICT_UNBOUNDED
