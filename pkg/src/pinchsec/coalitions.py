"""Coalitions of active antennas as integer bit masks.

Bit n set means antenna n (0-based) is active.  Masks index directly into
value tables of length 2**N, which keeps subset enumeration cheap.
"""


def from_members(members) -> int:
    """Bit mask with the given antenna indices set."""
    mask = 0
    for n in members:
        if n < 0:
            raise ValueError("antenna index must be nonnegative")
        mask |= 1 << n
    return mask


def members(mask: int) -> tuple[int, ...]:
    """Sorted antenna indices present in a mask."""
    if mask < 0:
        raise ValueError("mask must be nonnegative")
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def size(mask: int) -> int:
    return mask.bit_count()


def full_mask(n_antennas: int) -> int:
    return (1 << n_antennas) - 1


def validate(mask: int, n_antennas: int) -> None:
    """Reject masks referencing antennas outside 0..n_antennas-1."""
    if mask < 0 or mask >= (1 << n_antennas):
        raise ValueError(f"coalition mask {mask} out of range for {n_antennas} antennas")
