"""Coalition formation for antenna activation.

A coalition S of active antennas earns value v(S) (the secrecy rate).
Each member's payoff is its subset-weighted average marginal contribution

    payoff(n in S) = sum over S' subset of S\\{n} of
        |S'|! (|S|-|S'|-1)! / |S|! * [v(S' + n) - v(S')]

computed by exact enumeration over all 2^(|S|-1) subsets.  An antenna
outside S is scored by its marginal contribution: the value change the
coalition would see if it joined (or, for a member, if it left).

Activation starts from the single antenna closest to the legitimate user
and repeatedly scans all antennas in index order.  An outsider joins when
the payoff it would earn inside strictly beats its stay-out score; a
member leaves when its leave score strictly beats its payoff (never
emptying the coalition).  The loop stops after a full scan with no moves,
at which point no antenna can improve its payoff by unilaterally joining
or leaving (Nash stability), or after a cycle cap.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import coalitions
from .geometry import AntennaLayout

ValueFunction = Callable[[int], float]

DEFAULT_SHAPLEY_CAP = 24
DEFAULT_MAX_CYCLES = 100


class CapacityError(ValueError):
    """Raised when a coalition is too large for exact subset enumeration."""


@lru_cache(maxsize=None)
def _subset_weights(coalition_size: int) -> tuple[float, ...]:
    """Weight for a subset of size k inside a coalition of the given size."""
    f = math.factorial
    total = f(coalition_size)
    return tuple(f(k) * f(coalition_size - k - 1) / total for k in range(coalition_size))


def shapley_value(v: ValueFunction, coalition: int, member: int,
                  cap: int = DEFAULT_SHAPLEY_CAP) -> float:
    """Exact payoff of a coalition member under value function v."""
    bit = 1 << member
    if not coalition & bit:
        raise ValueError(f"antenna {member} is not in the coalition")
    n = coalition.bit_count()
    if n > cap:
        raise CapacityError(f"coalition size {n} exceeds enumeration cap {cap}")
    weights = _subset_weights(n)
    rest = coalition ^ bit
    total = 0.0
    sub = rest
    while True:
        total += weights[sub.bit_count()] * (v(sub | bit) - v(sub))
        if not sub:
            break
        sub = (sub - 1) & rest
    return total


def outside_payoff(v: ValueFunction, coalition: int, antenna: int) -> float:
    """Marginal-contribution score of an antenna relative to a coalition.

    For an outsider: the value change the coalition avoids by keeping it
    out, v(S) - v(S + n).  For a member: the change from leaving,
    v(S - n) - v(S).  The sole member of a singleton cannot leave.
    """
    if coalition == 0:
        raise ValueError("coalition must be nonempty")
    bit = 1 << antenna
    if coalition & bit:
        if coalition == bit:
            raise ValueError("sole member cannot leave: coalition must stay nonempty")
        return v(coalition ^ bit) - v(coalition)
    return v(coalition) - v(coalition | bit)


def merge_candidate(v: ValueFunction, coalition: int, antenna: int,
                    cap: int = DEFAULT_SHAPLEY_CAP) -> bool:
    """True if an outsider strictly gains by joining; ties mean no move.

    The inside payoff is evaluated in the coalition it would join.
    """
    bit = 1 << antenna
    if coalition & bit:
        raise ValueError(f"antenna {antenna} already in the coalition")
    inside = shapley_value(v, coalition | bit, antenna, cap=cap)
    return inside > outside_payoff(v, coalition, antenna)


def split_candidate(v: ValueFunction, coalition: int, antenna: int,
                    cap: int = DEFAULT_SHAPLEY_CAP) -> bool:
    """True if a member strictly gains by leaving; singletons never split."""
    bit = 1 << antenna
    if not coalition & bit:
        raise ValueError(f"antenna {antenna} is not in the coalition")
    if coalition == bit:
        return False
    return outside_payoff(v, coalition, antenna) > shapley_value(v, coalition, antenna, cap=cap)


@dataclass(frozen=True)
class TraceStep:
    cycle: int
    antenna: int
    action: str           # "merge", "split", or "none"
    coalition: int        # mask after the action
    value: float          # v(coalition) after the action


@dataclass
class GameTrace:
    """Per-examined-antenna record of one activation run."""

    steps: list[TraceStep]
    converged: bool
    cycles_used: int

    def to_rows(self) -> list[dict]:
        """Flat dict rows (one per examined antenna) for CSV emission."""
        return [
            {
                "step": i + 1,
                "cycle": s.cycle,
                "antenna": s.antenna,
                "action": s.action,
                "coalition_mask": s.coalition,
                "coalition_size": coalitions.size(s.coalition),
                "value": s.value,
            }
            for i, s in enumerate(self.steps)
        ]


@dataclass(frozen=True)
class PayoffReport:
    antenna: int
    in_coalition: bool
    payoff: float
    kind: str  # "shapley" for members, "marginal" for outsiders


def payoff_reports(v: ValueFunction, coalition: int, n_antennas: int,
                   cap: int = DEFAULT_SHAPLEY_CAP) -> list[PayoffReport]:
    """Score every antenna against the given coalition."""
    if coalition == 0:
        raise ValueError("coalition must be nonempty")
    reports = []
    for n in range(n_antennas):
        if coalition & (1 << n):
            reports.append(PayoffReport(n, True, shapley_value(v, coalition, n, cap=cap), "shapley"))
        else:
            reports.append(PayoffReport(n, False, outside_payoff(v, coalition, n), "marginal"))
    return reports


def closest_antenna(layout: AntennaLayout, bob_position) -> int:
    """Index of the antenna nearest the user; ties go to the smallest index.

    Antennas share y and z, so ranking by |x_bob - x_n| equals ranking by
    full 3D distance.
    """
    x = float(bob_position[0])
    return int(np.argmin(np.abs(np.asarray(layout.positions_x) - x)))


def _merge_split_scan(v: ValueFunction, n_antennas: int, start: int,
                      want_merge, want_split,
                      max_cycles: int, scan_rng=None) -> tuple[int, GameTrace]:
    """Shared scan loop: apply merge/split decisions until a quiet cycle."""
    mask = start
    steps: list[TraceStep] = []
    converged = False
    cycles = 0
    for cycle in range(1, max_cycles + 1):
        cycles = cycle
        changed = False
        order = range(n_antennas) if scan_rng is None else scan_rng.permutation(n_antennas)
        for n in order:
            n = int(n)
            bit = 1 << n
            action = "none"
            if mask & bit:
                if want_split(v, mask, n):
                    mask ^= bit
                    action = "split"
                    changed = True
            elif want_merge(v, mask, n):
                mask |= bit
                action = "merge"
                changed = True
            steps.append(TraceStep(cycle, n, action, mask, v(mask)))
        if not changed:
            converged = True
            break
    return mask, GameTrace(steps=steps, converged=converged, cycles_used=cycles)


def run_activation(v: ValueFunction, layout: AntennaLayout, bob_position,
                   max_cycles: int = DEFAULT_MAX_CYCLES,
                   cap: int = DEFAULT_SHAPLEY_CAP,
                   scan_rng=None) -> tuple[int, GameTrace]:
    """Payoff-driven activation starting from the antenna closest to the user.

    Returns the final coalition mask and the full trace.  A converged trace
    means a complete scan produced no move; cap exhaustion is reported via
    trace.converged = False rather than an error.  Passing a seeded
    generator as scan_rng shuffles the scan order each cycle (sensitivity
    experiments); the default is ascending index order.
    """
    start = 1 << closest_antenna(layout, bob_position)

    def want_merge(vf, mask, n):
        return merge_candidate(vf, mask, n, cap=cap)

    def want_split(vf, mask, n):
        return split_candidate(vf, mask, n, cap=cap)

    return _merge_split_scan(v, layout.n_antennas, start, want_merge, want_split,
                             max_cycles, scan_rng)


def is_nash_stable(v: ValueFunction, coalition: int, n_antennas: int,
                   cap: int = DEFAULT_SHAPLEY_CAP) -> bool:
    """True if no single antenna gains by unilaterally joining or leaving.

    Outsiders must not prefer joining; members must not prefer leaving.
    The sole member of a singleton has no legal leave move, so the member
    condition is vacuous there.
    """
    if coalition == 0:
        raise ValueError("coalition must be nonempty")
    coalitions.validate(coalition, n_antennas)
    for n in range(n_antennas):
        bit = 1 << n
        if coalition & bit:
            if coalition == bit:
                continue
            if outside_payoff(v, coalition, n) > shapley_value(v, coalition, n, cap=cap):
                return False
        else:
            if shapley_value(v, coalition | bit, n, cap=cap) > outside_payoff(v, coalition, n):
                return False
    return True
