"""Dual numbers ``c0 + c1*u`` over F_p with ``u^2 = 0``."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class DualNumber:
    c0: int
    c1: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "c0", self.c0 % self.p)
        object.__setattr__(self, "c1", self.c1 % self.p)

    def _lift(self, other) -> DualNumber:
        if isinstance(other, DualNumber):
            if other.p != self.p:
                raise ValueError("dual numbers over different primes")
            return other
        return DualNumber(int(other), 0, self.p)

    def __add__(self, other):
        o = self._lift(other)
        return DualNumber(self.c0 + o.c0, self.c1 + o.c1, self.p)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.c0, -self.c1, self.p)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return DualNumber(self.c0 * o.c0, self.c0 * o.c1 + self.c1 * o.c0, self.p)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.c0 != 0

    def inverse(self) -> DualNumber:
        if not self.c0:
            raise ZeroDivisionError(f"{self} has zero constant part")
        w = pow(self.c0, -1, self.p)
        return DualNumber(w, -self.c1 * w * w, self.p)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        # (c0 + c1 u)^n = c0^n + n c0^(n-1) c1 u
        if n == 0:
            return DualNumber(1, 0, self.p)
        return DualNumber(pow(self.c0, n, self.p), n * pow(self.c0, n - 1, self.p) * self.c1, self.p)

    @property
    def derivative(self) -> int:
        return self.c1

    def __str__(self) -> str:
        return f"{self.c0} + {self.c1}u"
