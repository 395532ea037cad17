"""Exact truncated power series in ``z``."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


class SeriesError(ArithmeticError):
    pass


class TruncatedSeries:
    """Coefficients ``c_0..c_N`` of a power series known modulo ``z^(N+1)``.

    Coefficients are Python ints or Fractions, so arithmetic is exact.
    Binary operations truncate to the smaller of the two orders.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational], order: int | None = None):
        cs = list(coeffs)
        if order is not None:
            cs = (cs + [0] * (order + 1))[: order + 1]
        if not cs:
            raise SeriesError("a truncated series needs at least one coefficient")
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c: Rational, order: int) -> "TruncatedSeries":
        return cls([c], order)

    @classmethod
    def z(cls, order: int, power: int = 1) -> "TruncatedSeries":
        cs = [0] * (order + 1)
        if power <= order:
            cs[power] = 1
        return cls(cs)

    @classmethod
    def geometric(cls, order: int) -> "TruncatedSeries":
        """``1/(1-z) = 1 + z + z^2 + ...``"""
        return cls([1] * (order + 1))

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if len(self.coeffs) > 8 else ""
        return f"TruncatedSeries([{head}{tail}], order={self.order})"

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, Rational):
            return TruncatedSeries.constant(other, self.order)
        raise TypeError(f"cannot combine series with {type(other).__name__}")

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} series to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        o = self._coerce(other)
        n = min(self.order, o.order) + 1
        return TruncatedSeries(a + b for a, b in zip(self.coeffs[:n], o.coeffs[:n]))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-a for a in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Rational):
            return TruncatedSeries(a * other for a in self.coeffs)
        o = self._coerce(other)
        n = min(self.order, o.order) + 1
        a, b = self.coeffs, o.coeffs
        out = []
        for k in range(n):
            s = 0
            for i in range(k + 1):
                ai = a[i]
                if ai:
                    s += ai * b[k - i]
            out.append(s)
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise SeriesError("only nonnegative integer powers are supported")
        result = TruncatedSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None for the zero series."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def shift_down(self, k: int) -> "TruncatedSeries":
        """Divide by ``z^k``; the dropped coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise SeriesError(f"uncancelled pole: series is not divisible by z^{k}")
        if k > self.order:
            raise SeriesError("no coefficients left after division")
        return TruncatedSeries(self.coeffs[k:])

    def reciprocal(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise SeriesError("reciprocal of a series with zero constant term")
        inv0 = Fraction(1) / Fraction(c0)
        out = [inv0]
        a = self.coeffs
        for k in range(1, len(a)):
            s = sum(a[i] * out[k - i] for i in range(1, k + 1))
            out.append(-s * inv0)
        return TruncatedSeries(_simplify(out))

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return TruncatedSeries(_simplify(Fraction(a) / other for a in self.coeffs))
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sqrt(self) -> "TruncatedSeries":
        """Square root of a series with constant term 1."""
        a = self.coeffs
        if a[0] != 1:
            raise SeriesError(f"sqrt needs constant term 1, got {a[0]}")
        g = [Fraction(1)]
        for n in range(1, len(a)):
            s = sum(g[i] * g[n - i] for i in range(1, n))
            g.append(Fraction(a[n] - s) / 2)
        return TruncatedSeries(_simplify(g))

    def is_integral(self) -> bool:
        if any(isinstance(c, float) for c in self.coeffs):
            raise SeriesError("float coefficient in an exact series")
        return all(Fraction(c).denominator == 1 for c in self.coeffs)

    def to_integers(self) -> "TruncatedSeries":
        if not self.is_integral():
            raise SeriesError("series has non-integral coefficients")
        return TruncatedSeries(int(c) for c in self.coeffs)

    def as_list(self) -> list:
        return list(self.coeffs)


def _simplify(values: Iterable) -> list:
    out = []
    for v in values:
        if isinstance(v, Fraction) and v.denominator == 1:
            v = int(v)
        out.append(v)
    return out


def series(coeffs: Sequence[Rational]) -> TruncatedSeries:
    return TruncatedSeries(coeffs)
