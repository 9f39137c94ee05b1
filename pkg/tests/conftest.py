"""Shared test configuration: deterministic hypothesis profile and helpers."""

from hypothesis import HealthCheck, settings

# Numeric integration tests can be slow per example; keep the example count
# modest and disable wall-clock deadlines so CI jitter cannot flake a run.
settings.register_profile(
    "hilbloch",
    max_examples=50,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("hilbloch")

SEED = 20260814
