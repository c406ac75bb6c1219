"""Shared test utilities: payoff oracle, alignment search, row grouping."""

import itertools
import math

import numpy as np

from pinchsec import coalitions, total_phase


def permutation_payoff(table, members, member):
    """Average marginal contribution over all join orders (oracle).

    Brute-force reference for the subset-enumeration payoff: O(|S|!)
    permutations, usable up to six or seven members.
    """
    total = 0.0
    count = 0
    for perm in itertools.permutations(members):
        mask = 0
        for m in perm:
            if m == member:
                total += table[mask | (1 << m)] - table[mask]
                break
            mask |= 1 << m
        count += 1
    return total / count


def random_value_table(rng, members):
    """Random value table over every subset of the given member set."""
    full = coalitions.from_members(members)
    table = {}
    sub = full
    while True:
        table[sub] = float(rng.normal())
        if not sub:
            break
        sub = (sub - 1) & full
    return table


def wrap_phase(x: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    out = math.fmod(x, 2.0 * math.pi)
    if out > math.pi:
        out -= 2.0 * math.pi
    elif out <= -math.pi:
        out += 2.0 * math.pi
    return out


def solve_alignment(scenario, layout, y: float, target: float,
                    x_lo: float, x_hi: float) -> float:
    """Ground-receiver x where antennas 0 and 1 differ in phase by target.

    Scans a grid fine enough that the wrapped gap moves less than pi per
    step, then bisects the first true crossing down to double precision.
    """

    def gap(x):
        r = (x, y, 0.0)
        return wrap_phase(total_phase(scenario, layout, r, 0)
                          - total_phase(scenario, layout, r, 1) - target)

    xs = np.linspace(x_lo, x_hi, 20001)
    g_prev = gap(xs[0])
    for a, b in zip(xs, xs[1:]):
        g_a, g_b = g_prev, gap(b)
        g_prev = g_b
        if g_a == 0.0:
            return float(a)
        # same-sign or a wrap jump: not a usable crossing
        if g_a * g_b >= 0.0 or abs(g_a - g_b) > math.pi:
            continue
        lo, hi, g_lo = float(a), float(b), g_a
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            g_mid = gap(mid)
            if g_mid == 0.0:
                return mid
            if g_lo * g_mid < 0.0:
                hi = mid
            else:
                lo, g_lo = mid, g_mid
        return 0.5 * (lo + hi)
    raise AssertionError("no alignment point in the search range")


def rows_for(rows, method: str, sweep_value=None):
    out = [r for r in rows if r.method == method]
    if sweep_value is not None:
        out = [r for r in out if r.sweep_value == sweep_value]
    return out


def sweep_values(rows) -> list:
    return sorted({r.sweep_value for r in rows})


def mean_secrecy(rows, method: str) -> dict:
    """{sweep_value: mean secrecy rate} for one method."""
    groups = {}
    for r in rows:
        if r.method == method:
            groups.setdefault(r.sweep_value, []).append(r.secrecy_rate)
    return {k: sum(v) / len(v) for k, v in sorted(groups.items())}


def paired_differences(rows, method_a: str, method_b: str, sweep_value) -> np.ndarray:
    """Per-trial secrecy differences a - b at one sweep point."""
    a = {r.trial: r.secrecy_rate for r in rows_for(rows, method_a, sweep_value)}
    b = {r.trial: r.secrecy_rate for r in rows_for(rows, method_b, sweep_value)}
    assert a.keys() == b.keys(), "trials do not pair up"
    return np.array([a[t] - b[t] for t in sorted(a)])
