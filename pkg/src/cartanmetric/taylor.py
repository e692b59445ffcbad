"""Bivariate truncated Taylor arithmetic (total order 3).

A :class:`TaylorScalar2` holds the ten coefficients of

    f(x0 + e1, y0 + e2) = sum_{p+q<=3} c[p,q] e1**p e2**q

where ``c[p,q] = d^{p+q} f / dx^p dy^q / (p! q!)``.  Coefficients may carry
trailing batch dimensions, so one evaluation can seed many directions at once.
"""

from __future__ import annotations

from math import factorial

import numpy as np

ORDER = 3
MONOMIALS: tuple[tuple[int, int], ...] = tuple(
    (total - q, q) for total in range(ORDER + 1) for q in range(total + 1)
)
NCOEF = len(MONOMIALS)
_INDEX = {m: k for k, m in enumerate(MONOMIALS)}


def _product_table() -> np.ndarray:
    table = np.zeros((NCOEF, NCOEF, NCOEF))
    for i, (p1, q1) in enumerate(MONOMIALS):
        for j, (p2, q2) in enumerate(MONOMIALS):
            k = _INDEX.get((p1 + p2, q1 + q2))
            if k is not None:
                table[i, j, k] = 1.0
    return table


_MUL = _product_table()


class TaylorScalar2:
    """Truncated bivariate jet; supports + - * / integer powers and sqrt."""

    __slots__ = ("coef",)
    __array_priority__ = 1000  # keep numpy from swallowing mixed expressions

    def __init__(self, coef):
        coef = np.asarray(coef, dtype=float)
        if coef.shape[:1] != (NCOEF,):
            raise ValueError(f"expected leading axis of length {NCOEF}, got {coef.shape}")
        self.coef = coef

    @classmethod
    def constant(cls, value) -> "TaylorScalar2":
        value = np.asarray(value, dtype=float)
        coef = np.zeros((NCOEF,) + value.shape)
        coef[0] = value
        return cls(coef)

    @classmethod
    def seed(cls, value, d1=0.0, d2=0.0) -> "TaylorScalar2":
        """``value + d1*e1 + d2*e2``; all arguments broadcast together."""
        value, d1, d2 = np.broadcast_arrays(
            np.asarray(value, float), np.asarray(d1, float), np.asarray(d2, float)
        )
        coef = np.zeros((NCOEF,) + value.shape)
        coef[0] = value
        coef[_INDEX[(1, 0)]] = d1
        coef[_INDEX[(0, 1)]] = d2
        return cls(coef)

    @property
    def value(self) -> np.ndarray:
        return self.coef[0]

    def __getitem__(self, monomial: tuple[int, int]) -> np.ndarray:
        return self.coef[_INDEX[monomial]]

    def derivative(self, p: int, q: int) -> np.ndarray:
        """d^{p+q} f / dx^p dy^q at the expansion point."""
        return self[(p, q)] * (factorial(p) * factorial(q))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "TaylorScalar2":
        if isinstance(other, TaylorScalar2):
            return other
        return TaylorScalar2.constant(other)

    def __neg__(self):
        return TaylorScalar2(-self.coef)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, TaylorScalar2):
            return TaylorScalar2(self.coef + other.coef)
        coef = self.coef.copy()
        coef[0] = coef[0] + other
        return TaylorScalar2(coef)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TaylorScalar2):
            return TaylorScalar2(self.coef * np.asarray(other, float))
        a, b = np.broadcast_arrays(self.coef, other.coef)
        return TaylorScalar2(np.einsum("i...,j...,ijk->k...", a, b, _MUL))

    __rmul__ = __mul__

    def _split(self):
        """Constant term and nilpotent remainder."""
        c0 = self.coef[0]
        rest = self.coef.copy()
        rest[0] = 0.0
        return c0, TaylorScalar2(rest)

    def _series(self, c0, u: "TaylorScalar2", weights) -> "TaylorScalar2":
        # sum_k weights[k] * u**k, u nilpotent of index ORDER + 1
        out = TaylorScalar2.constant(np.full(np.shape(c0), weights[0]))
        power = u
        for w in weights[1:]:
            out = out + power * w
            power = power * u
        return out

    def reciprocal(self) -> "TaylorScalar2":
        c0, rest = self._split()
        if np.any(np.abs(c0) < 1e-300):
            raise ZeroDivisionError("jet division by a vanishing constant term")
        u = rest * (1.0 / c0)
        return self._series(c0, u, (1.0, -1.0, 1.0, -1.0)) * (1.0 / c0)

    def __truediv__(self, other):
        if isinstance(other, TaylorScalar2):
            out = self * other.reciprocal()
            # keep the value bitwise equal to plain float division
            out.coef[0] = self.coef[0] / other.coef[0]
            return out
        other = np.asarray(other, float)
        if np.any(np.abs(other) < 1e-300):
            raise ZeroDivisionError("jet division by a vanishing constant")
        return TaylorScalar2(self.coef / other)

    def __rtruediv__(self, other):
        out = self.reciprocal() * other
        out.coef[0] = np.asarray(other, float) / self.coef[0]
        return out

    def __pow__(self, n):
        if not isinstance(n, (int, np.integer)):
            raise TypeError("only integer powers are supported; use sqrt()")
        if n < 0:
            return self.reciprocal() ** (-n)
        out = TaylorScalar2.constant(np.ones(self.coef.shape[1:]))
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def sqrt(self) -> "TaylorScalar2":
        c0, rest = self._split()
        if np.any(c0 <= 0.0):
            raise ValueError("jet square root needs a positive constant term")
        u = rest * (1.0 / c0)
        return self._series(c0, u, (1.0, 0.5, -0.125, 0.0625)) * np.sqrt(c0)

    def __repr__(self) -> str:
        terms = ", ".join(f"{m}: {self[m]!r}" for m in MONOMIALS)
        return f"TaylorScalar2({{{terms}}})"


def sqrt(x):
    """Square root for floats, arrays, or jets."""
    if isinstance(x, TaylorScalar2):
        return x.sqrt()
    return np.sqrt(x)
