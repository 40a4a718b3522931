import pytest

from grouptop.cardinal import INFINITE, ExtendedNat, finite


def test_arithmetic():
    assert finite(3) * finite(4) == finite(12)
    assert finite(0) * INFINITE == finite(0)
    assert finite(2) * INFINITE == INFINITE
    assert finite(1) ** INFINITE == finite(1)
    assert finite(5) ** finite(0) == finite(1)
    assert finite(2) ** INFINITE == INFINITE
    assert INFINITE ** 0 == finite(1)


def test_order_and_json():
    assert finite(7) < INFINITE
    assert not INFINITE < finite(10 ** 9)
    assert sorted([INFINITE, finite(2), finite(1)]) == [finite(1), finite(2), INFINITE]
    assert INFINITE.to_json() == "inf"
    assert ExtendedNat.from_json("inf") == INFINITE
    assert ExtendedNat.from_json(4) == finite(4)


def test_rejects_negative():
    with pytest.raises(ValueError):
        finite(-1)
