import pytest

from models.certificate import SweepConfig


@pytest.fixture
def small_config() -> SweepConfig:
    return SweepConfig(
        max_m=8,
        p_denominator_limit=24,
        grid_points_per_interval=6,
        seed=7,
        max_k=300,
        endpoint_samples=20,
        gamma_grid_points=50,
        derivative_samples=5,
    )
