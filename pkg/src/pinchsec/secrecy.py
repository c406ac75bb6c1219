"""Data rates, secrecy rate, and the per-drop coalition value function.

With K active antennas the transmit power is split equally, so the SNR
scale is rho = P_t / (K * sigma^2) and each link rate is
log2(1 + rho * |sum of active coefficients|^2).  The secrecy rate is the
legitimate link's rate minus the eavesdropper's, not clamped at zero.
"""

import math
from dataclasses import dataclass

from .channel import ChannelVector, effective_channel

_INV_LN2 = 1.0 / math.log(2.0)


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class LinkBudget:
    """Transmit and noise powers, stored in dBm, used in watts."""

    transmit_power_dbm: float
    noise_power_dbm: float

    @classmethod
    def from_scenario(cls, scenario, transmit_power_dbm: float) -> "LinkBudget":
        return cls(transmit_power_dbm=transmit_power_dbm, noise_power_dbm=scenario.noise_power_dbm)

    @property
    def transmit_power_w(self) -> float:
        return dbm_to_watts(self.transmit_power_dbm)

    @property
    def noise_power_w(self) -> float:
        return dbm_to_watts(self.noise_power_dbm)


def _rate_from_mag2(mag2: float, k: int, budget: LinkBudget) -> float:
    rho = budget.transmit_power_w / (k * budget.noise_power_w)
    return math.log1p(rho * mag2) * _INV_LN2


def rate(channels: ChannelVector, coalition: int, budget: LinkBudget) -> float:
    """Link rate in bits/s/Hz for the given activation mask."""
    h = effective_channel(channels, coalition)
    return _rate_from_mag2(abs(h) ** 2, coalition.bit_count(), budget)


def secrecy_rate(bob_channels: ChannelVector, eve_channels: ChannelVector,
                 coalition: int, budget: LinkBudget) -> float:
    """Bob's rate minus Eve's rate for one activation mask (may be negative)."""
    return rate(bob_channels, coalition, budget) - rate(eve_channels, coalition, budget)


class SecrecyEvaluator:
    """Coalition value v(S) for one drop, memoized across queries.

    v(S) is the secrecy rate of activation mask S, with the convention
    v(empty) = 0 so that subset-weighted payoff sums are anchored at zero.
    Effective-channel sums are accumulated incrementally and cached, which
    makes the repeated subset lookups of payoff computations cheap.

    Instances are bound to one drop; do not share them across drops.
    """

    def __init__(self, bob_channels, eve_channels, budget: LinkBudget):
        self._hb = [complex(c) for c in _coeffs(bob_channels)]
        self._he = [complex(c) for c in _coeffs(eve_channels)]
        if len(self._hb) != len(self._he):
            raise ValueError("bob and eve channel vectors must have equal length")
        self._n = len(self._hb)
        self._power_w = budget.transmit_power_w
        self._noise_w = budget.noise_power_w
        self._sums: dict[int, tuple[complex, complex]] = {0: (0j, 0j)}
        self._memo: dict[int, float] = {0: 0.0}

    @property
    def n_antennas(self) -> int:
        return self._n

    def channel_sums(self, mask: int) -> tuple[complex, complex]:
        """Effective channels (bob, eve) for a mask; cached."""
        sums = self._sums
        found = sums.get(mask)
        if found is not None:
            return found
        if mask < 0 or mask >= (1 << self._n):
            raise ValueError("coalition mask out of range")
        # walk down by clearing the lowest bit until a cached prefix is hit
        pending = []
        m = mask
        while m not in sums:
            pending.append(m)
            m &= m - 1
        hb, he = sums[m]
        for mm in reversed(pending):
            idx = (mm & -mm).bit_length() - 1
            hb, he = sums[mm & (mm - 1)]
            hb = hb + self._hb[idx]
            he = he + self._he[idx]
            sums[mm] = (hb, he)
        return sums[mask]

    def link_rates(self, mask: int) -> tuple[float, float]:
        """(bob rate, eve rate) in bits/s/Hz for a nonempty mask."""
        if mask == 0:
            raise ValueError("at least one antenna must be active")
        hb, he = self.channel_sums(mask)
        rho = self._power_w / (mask.bit_count() * self._noise_w)
        rb = math.log1p(rho * (hb.real * hb.real + hb.imag * hb.imag)) * _INV_LN2
        re = math.log1p(rho * (he.real * he.real + he.imag * he.imag)) * _INV_LN2
        return rb, re

    def __call__(self, mask: int) -> float:
        v = self._memo.get(mask)
        if v is None:
            rb, re = self.link_rates(mask)
            v = rb - re
            self._memo[mask] = v
        return v


def _coeffs(channels):
    if isinstance(channels, ChannelVector):
        return channels.coefficients
    return channels
