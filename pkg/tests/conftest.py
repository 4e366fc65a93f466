import numpy as np
import pytest

from hyperfield.dnum import Double, Region, from_polar, PolarForm


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


QUADRANTS = (
    Region.QUADRANT_I,
    Region.QUADRANT_II,
    Region.QUADRANT_III,
    Region.QUADRANT_IV,
)


def random_double(rng, scale=2.0) -> Double:
    """Uniform box sample; may land anywhere including near the cone."""
    t, x = rng.uniform(-scale, scale, size=2)
    return Double(float(t), float(x))


def random_offcone(rng, rho_lo=0.3, rho_hi=2.5, psi_max=2.0, quadrant=None) -> Double:
    """Sample with a guaranteed margin from the cone via the polar form."""
    reg = quadrant or QUADRANTS[rng.integers(0, 4)]
    rho = float(rng.uniform(rho_lo, rho_hi))
    psi = float(rng.uniform(-psi_max, psi_max))
    return from_polar(PolarForm(reg, rho, psi))


def random_quadrant_I(rng, rho_lo=0.4, rho_hi=2.5, psi_max=1.5) -> Double:
    return random_offcone(rng, rho_lo, rho_hi, psi_max, Region.QUADRANT_I)
