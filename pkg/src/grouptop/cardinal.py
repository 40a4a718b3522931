"""Finite-or-infinite cardinalities.

Only the distinction "finite k" versus "infinite" is tracked; no finer cardinals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


@dataclass(frozen=True, order=False)
class ExtendedNat:
    value: Optional[int] = None  # None means infinite

    def __post_init__(self):
        if self.value is not None and self.value < 0:
            raise ValueError(f"negative cardinality {self.value}")

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __int__(self) -> int:
        if self.value is None:
            raise OverflowError("infinite cardinality has no integer value")
        return self.value

    def _coerce(self, other) -> "ExtendedNat":
        if isinstance(other, ExtendedNat):
            return other
        if isinstance(other, int):
            return ExtendedNat(other)
        return NotImplemented

    def __mul__(self, other: Union["ExtendedNat", int]) -> "ExtendedNat":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.value == 0 or other.value == 0:
            return ExtendedNat(0)
        if self.value is None or other.value is None:
            return INFINITE
        return ExtendedNat(self.value * other.value)

    __rmul__ = __mul__

    def __pow__(self, exponent: Union["ExtendedNat", int]) -> "ExtendedNat":
        exponent = self._coerce(exponent)
        if exponent is NotImplemented:
            return NotImplemented
        if exponent.value == 0:
            return ExtendedNat(1)
        if self.value in (0, 1):
            return ExtendedNat(self.value)
        if self.value is None or exponent.value is None:
            return INFINITE
        return ExtendedNat(self.value ** exponent.value)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.value == other.value

    def __hash__(self) -> int:
        return hash(("ExtendedNat", self.value))

    def __lt__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __le__(self, other) -> bool:
        return self == other or self < other

    def __gt__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other < self

    def __ge__(self, other) -> bool:
        return self == other or self > other

    def __repr__(self) -> str:
        return "Infinite" if self.value is None else f"Finite({self.value})"

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def to_json(self):
        return "inf" if self.value is None else self.value

    @classmethod
    def from_json(cls, raw) -> "ExtendedNat":
        if raw in ("inf", "infinite", "omega", None):
            return INFINITE
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise ValueError(f"bad cardinality {raw!r}")
        return cls(raw)


INFINITE = ExtendedNat(None)


def finite(k: int) -> ExtendedNat:
    return ExtendedNat(k)
