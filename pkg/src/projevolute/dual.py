"""Forward-mode dual numbers carrying a gradient with respect to several seeds.

Works over ``Fraction`` as well as ``float``, so a Jacobian evaluated at a
rational point is exact.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class DualScalar:
    value: object
    partials: tuple

    @classmethod
    def variable(cls, value, index: int, n: int = 2) -> DualScalar:
        zero, one = value * 0, value * 0 + 1
        return cls(value, tuple(one if i == index else zero for i in range(n)))

    @classmethod
    def seeded(cls, value, direction) -> DualScalar:
        return cls(value, tuple(direction))

    def _lift(self, other) -> DualScalar:
        if isinstance(other, DualScalar):
            return other
        return DualScalar(other, tuple(p * 0 for p in self.partials))

    def __add__(self, other):
        o = self._lift(other)
        return DualScalar(self.value + o.value, tuple(a + b for a, b in zip(self.partials, o.partials)))

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.value, tuple(-a for a in self.partials))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return DualScalar(
            self.value * o.value,
            tuple(a * o.value + self.value * b for a, b in zip(self.partials, o.partials)),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.value == 0:
            raise ZeroDivisionError("dual division by a zero value")
        q = self.value / o.value
        return DualScalar(q, tuple((a - q * b) / o.value for a, b in zip(self.partials, o.partials)))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = self._lift(self.value * 0 + 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, DualScalar):
            return self.value == other.value and self.partials == other.partials
        return NotImplemented

    __hash__ = None


def value_of(v):
    return v.value if isinstance(v, DualScalar) else v
