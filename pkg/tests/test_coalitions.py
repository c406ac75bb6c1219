import pytest

from pinchsec import coalitions


def test_from_members_roundtrip():
    assert coalitions.from_members([]) == 0
    assert coalitions.from_members([0]) == 1
    assert coalitions.from_members([1, 3]) == 0b1010
    assert coalitions.from_members((3, 1)) == 0b1010
    assert coalitions.members(0b1010) == (1, 3)
    assert coalitions.members(0) == ()


def test_from_members_rejects_negative():
    with pytest.raises(ValueError):
        coalitions.from_members([2, -1])


def test_size():
    assert coalitions.size(0) == 0
    assert coalitions.size(0b1) == 1
    assert coalitions.size(0b10110) == 3
    assert coalitions.size((1 << 24) - 1) == 24


def test_full_mask():
    assert coalitions.full_mask(1) == 1
    assert coalitions.full_mask(4) == 0b1111
    assert coalitions.full_mask(20) == (1 << 20) - 1


def test_validate():
    coalitions.validate(0b101, 3)
    with pytest.raises(ValueError):
        coalitions.validate(-1, 3)
    with pytest.raises(ValueError):
        coalitions.validate(0b1000, 3)


def test_members_size_agree_on_random_masks():
    import random
    rng = random.Random(0)
    for _ in range(100):
        mask = rng.getrandbits(16)
        ms = coalitions.members(mask)
        assert coalitions.from_members(ms) == mask
        assert coalitions.size(mask) == len(ms)
        assert list(ms) == sorted(ms)
