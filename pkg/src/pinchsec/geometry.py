"""Physical scenario, antenna placement, user drops, and distances.

Coordinate convention: the waveguide runs along the line y = 0 at height
z = waveguide_height, for x in [0, waveguide_length].  Users live on the
ground plane z = 0 inside a rectangle x in [0, region_x].  By default the
rectangle straddles the waveguide (y in [-region_y/2, region_y/2]); an
optional one-sided mode uses y in [0, region_y] instead.
"""

from dataclasses import dataclass

import numpy as np

Point = tuple[float, float, float]


@dataclass(frozen=True)
class Scenario:
    """Immutable physical configuration.

    Lengths in meters, frequency in Hz, noise power in dBm.  Defaults match
    the standard benchmark setup: 10 m x 6 m region, 3 m waveguide height,
    28 GHz carrier, refractive index 1.4, -90 dBm noise, feed at x = 0.
    """

    region_x: float = 10.0
    region_y: float = 6.0
    waveguide_height: float = 3.0
    waveguide_length: float = 10.0
    carrier_frequency: float = 28e9
    effective_refractive_index: float = 1.4
    noise_power_dbm: float = -90.0
    feed_point_x: float = 0.0
    one_sided_region: bool = False

    def __post_init__(self):
        if self.region_x <= 0 or self.region_y <= 0:
            raise ValueError("region dimensions must be positive")
        if self.waveguide_height <= 0:
            raise ValueError("waveguide height must be positive")
        if self.waveguide_length <= 0:
            raise ValueError("waveguide length must be positive")
        if self.carrier_frequency <= 0:
            raise ValueError("carrier frequency must be positive")
        if self.effective_refractive_index < 1.0:
            raise ValueError("effective refractive index must be >= 1")
        if not 0.0 <= self.feed_point_x <= self.waveguide_length:
            raise ValueError("feed point must lie on the waveguide")

    def y_bounds(self) -> tuple[float, float]:
        """Ground-region y extent; depends on the one_sided_region switch."""
        if self.one_sided_region:
            return 0.0, self.region_y
        half = self.region_y / 2.0
        return -half, half

    def contains(self, point) -> bool:
        """True if a ground-level point lies inside the user region."""
        x, y, z = point
        lo, hi = self.y_bounds()
        return z == 0.0 and 0.0 <= x <= self.region_x and lo <= y <= hi


@dataclass(frozen=True)
class AntennaLayout:
    """Ordered x-positions of the pre-installed antennas on the waveguide."""

    positions_x: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions_x", tuple(float(x) for x in self.positions_x))
        if len(self.positions_x) < 1:
            raise ValueError("layout needs at least one antenna")
        if any(b <= a for a, b in zip(self.positions_x, self.positions_x[1:])):
            raise ValueError("antenna positions must be strictly increasing")
        if self.positions_x[0] < 0.0:
            raise ValueError("antenna positions must be nonnegative")

    @property
    def n_antennas(self) -> int:
        return len(self.positions_x)


@dataclass(frozen=True)
class Drop:
    """One placement of the legitimate user (bob) and eavesdropper (eve)."""

    bob: Point
    eve: Point


def uniform_layout(scenario: Scenario, n: int) -> AntennaLayout:
    """Equally spaced layout over the full waveguide, endpoints included.

    A single antenna goes at the waveguide midpoint.
    """
    if n < 1:
        raise ValueError("antenna count must be >= 1")
    if n == 1:
        return AntennaLayout((scenario.waveguide_length / 2.0,))
    return AntennaLayout(tuple(np.linspace(0.0, scenario.waveguide_length, n)))


def antenna_points(scenario: Scenario, layout: AntennaLayout) -> np.ndarray:
    """3D positions (x_n, 0, height) of every antenna as an (N, 3) array."""
    pts = np.zeros((layout.n_antennas, 3))
    pts[:, 0] = layout.positions_x
    pts[:, 2] = scenario.waveguide_height
    return pts


def sample_drop(scenario: Scenario, rng: np.random.Generator) -> Drop:
    """Draw bob and eve independently uniform over the ground region."""
    y_lo, y_hi = scenario.y_bounds()
    bob = (rng.uniform(0.0, scenario.region_x), rng.uniform(y_lo, y_hi), 0.0)
    eve = (rng.uniform(0.0, scenario.region_x), rng.uniform(y_lo, y_hi), 0.0)
    return Drop(bob=bob, eve=eve)


def distance(a, b) -> float:
    """Euclidean distance between two 3D points."""
    return float(np.linalg.norm(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))
