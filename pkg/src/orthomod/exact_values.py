"""Exact constants (Bernoulli numbers, zeta and quadratic L-values, Gamma at
half integers) and outward-rounded dyadic interval arithmetic.

Bernoulli numbers use the convention B_1 = -1/2 throughout the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

Number = Union[int, Fraction]

START_PRECISION = 128
MAX_PRECISION = 4096


class PrecisionCapError(ArithmeticError):
    """Raised when an interval comparison is still undecided at the cap."""


# ---------------------------------------------------------------- integers

def squarefree_split(r: int) -> tuple[int, int]:
    """Write r = s^2 * t with t squarefree; return (s, t)."""
    if r <= 0:
        raise ValueError("radicand must be positive")
    s, t = 1, 1
    d = 2
    while d * d <= r:
        e = 0
        while r % d == 0:
            r //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            t *= d
        d += 1
    return s, t * r


def iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) for x >= 0."""
    if x < 0:
        raise ValueError("negative input")
    if x < 2 or k == 1:
        return x
    y = 1 << ((x.bit_length() + k - 1) // k)
    while True:
        z = ((k - 1) * y + x // y ** (k - 1)) // k
        if z >= y:
            break
        y = z
    while y ** k > x:
        y -= 1
    while (y + 1) ** k <= x:
        y += 1
    return y


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n)."""
    if n == 0:
        return 1 if abs(d) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if d < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if d % 2 == 0:
            return 0
        if v % 2 and d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d/n) for odd n > 0
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# --------------------------------------------------------------- Bernoulli

@lru_cache(maxsize=None)
def _bernoulli_table(k: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)]
    for m in range(1, k + 1):
        acc = sum(math.comb(m + 1, j) * table[j] for j in range(m))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(k: int) -> Fraction:
    """B_k with B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return _bernoulli_table(k)[k]


def bernoulli_poly(k: int, x: Fraction) -> Fraction:
    return sum(math.comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1))


# --------------------------------------------------------------- ExactReal

@dataclass(frozen=True)
class ExactReal:
    """coeff * pi^(pi_half_exp/2) * sqrt(radicand)."""

    coeff: Fraction
    pi_half_exp: int = 0
    radicand: int = 1

    def __post_init__(self):
        c = Fraction(self.coeff)
        if c == 0:
            object.__setattr__(self, "coeff", Fraction(0))
            object.__setattr__(self, "pi_half_exp", 0)
            object.__setattr__(self, "radicand", 1)
            return
        s, t = squarefree_split(self.radicand)
        object.__setattr__(self, "coeff", c * s)
        object.__setattr__(self, "radicand", t)

    @classmethod
    def rational(cls, q: Number) -> "ExactReal":
        return cls(Fraction(q))

    @classmethod
    def sqrt(cls, q: Number) -> "ExactReal":
        """sqrt of a positive rational."""
        q = Fraction(q)
        # sqrt(a/b) = sqrt(a*b)/b
        return cls(Fraction(1, q.denominator), 0, q.numerator * q.denominator)

    @classmethod
    def pi_power(cls, half_exp: int) -> "ExactReal":
        return cls(Fraction(1), half_exp, 1)

    def _coerce(self, other) -> "ExactReal":
        if isinstance(other, ExactReal):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactReal(Fraction(other))
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExactReal(self.coeff * other.coeff, self.pi_half_exp + other.pi_half_exp,
                         self.radicand * other.radicand)

    __rmul__ = __mul__

    def inverse(self) -> "ExactReal":
        if self.coeff == 0:
            raise ZeroDivisionError
        return ExactReal(1 / (self.coeff * self.radicand), -self.pi_half_exp, self.radicand)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactReal(Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    def __neg__(self):
        return ExactReal(-self.coeff, self.pi_half_exp, self.radicand)

    def same_kind(self, other: "ExactReal") -> bool:
        return (self.pi_half_exp, self.radicand) == (other.pi_half_exp, other.radicand)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.coeff == 0:
            return other
        if other.coeff == 0:
            return self
        if not self.same_kind(other):
            raise TypeError("mixed ExactReal sum; use enclose() and interval arithmetic")
        return ExactReal(self.coeff + other.coeff, self.pi_half_exp, self.radicand)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def is_rational(self) -> bool:
        return self.pi_half_exp == 0 and self.radicand == 1

    def __float__(self) -> float:
        return float(self.coeff) * math.pi ** (self.pi_half_exp / 2) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        parts = [str(self.coeff)]
        if self.pi_half_exp:
            parts.append(f"pi^({self.pi_half_exp}/2)")
        if self.radicand != 1:
            parts.append(f"sqrt({self.radicand})")
        return "*".join(parts)


# ------------------------------------------------------------ IntervalReal

def _round_down(x: Fraction, prec: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    e = _log2_floor(abs(x))
    shift = prec - 1 - e
    if shift >= 0:
        return Fraction(math.floor(x * (1 << shift)), 1 << shift)
    return Fraction(math.floor(x / (1 << -shift)) * (1 << -shift))


def _round_up(x: Fraction, prec: int) -> Fraction:
    return -_round_down(-x, prec)


def _log2_floor(x: Fraction) -> int:
    """floor(log2 x) for x > 0."""
    e = x.numerator.bit_length() - x.denominator.bit_length()
    if e >= 0:
        if x < (1 << e):
            e -= 1
    elif x < Fraction(1, 1 << -e):
        e -= 1
    return e


@dataclass(frozen=True)
class IntervalReal:
    """Closed interval [lo, hi] with dyadic endpoints kept to `precision`
    significant bits; every operation rounds outward."""

    lo: Fraction
    hi: Fraction
    precision: int = START_PRECISION

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def make(cls, lo: Number, hi: Number, prec: int) -> "IntervalReal":
        return cls(_round_down(Fraction(lo), prec), _round_up(Fraction(hi), prec), prec)

    @classmethod
    def point(cls, q: Number, prec: int = START_PRECISION) -> "IntervalReal":
        return cls.make(q, q, prec)

    def _coerce(self, other) -> "IntervalReal":
        if isinstance(other, IntervalReal):
            return other
        if isinstance(other, (int, Fraction)):
            return IntervalReal.point(other, self.precision)
        return NotImplemented

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Number) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = max(self.precision, other.precision)
        return IntervalReal.make(self.lo + other.lo, self.hi + other.hi, p)

    __radd__ = __add__

    def __neg__(self):
        return IntervalReal(-self.hi, -self.lo, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = max(self.precision, other.precision)
        prods = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
        return IntervalReal.make(min(prods), max(prods), p)

    __rmul__ = __mul__

    def reciprocal(self) -> "IntervalReal":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return IntervalReal.make(1 / self.hi, 1 / self.lo, self.precision)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, k: int):
        if k < 0:
            return (self ** (-k)).reciprocal()
        if k == 0:
            return IntervalReal.point(1, self.precision)
        lo, hi = self.lo, self.hi
        if lo >= 0:
            a, b = lo ** k, hi ** k
        elif hi <= 0:
            a, b = sorted((lo ** k, hi ** k))
        elif k % 2 == 0:
            a, b = Fraction(0), max(lo ** k, hi ** k)
        else:
            a, b = lo ** k, hi ** k
        return IntervalReal.make(a, b, self.precision)

    def root(self, k: int) -> "IntervalReal":
        """k-th root of a nonnegative interval."""
        if self.lo < 0:
            raise ValueError("root of negative interval")
        p = self.precision
        return IntervalReal(_root_down(self.lo, k, p), _root_up(self.hi, k, p), p)

    def sqrt(self) -> "IntervalReal":
        return self.root(2)

    def at(self, prec: int) -> "IntervalReal":
        return IntervalReal.make(self.lo, self.hi, prec)

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __repr__(self) -> str:
        return f"IntervalReal([{float(self.lo):.17g}, {float(self.hi):.17g}], prec={self.precision})"


def _root_down(x: Fraction, k: int, prec: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    e = _log2_floor(x) // k
    shift = prec + 2 - e
    if shift < 0:
        shift = 0
    y = math.floor(x * (1 << (k * shift)))
    return _round_down(Fraction(iroot(y, k), 1 << shift), prec)


def _root_up(x: Fraction, k: int, prec: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    e = _log2_floor(x) // k
    shift = max(prec + 2 - e, 0)
    y = math.ceil(x * (1 << (k * shift)))
    r = iroot(y, k)
    if r ** k < y:
        r += 1
    return _round_up(Fraction(r, 1 << shift), prec)


def compare(x: IntervalReal, y: IntervalReal) -> str:
    """'less', 'greater' or 'undecided'."""
    if x.hi < y.lo:
        return "less"
    if x.lo > y.hi:
        return "greater"
    return "undecided"


def decide(build: Callable[[int], tuple[IntervalReal, IntervalReal]],
           start: int = START_PRECISION, cap: int = MAX_PRECISION) -> tuple[str, int]:
    """Evaluate both sides at doubling precision until they separate.

    Returns (outcome, precision used)."""
    prec = start
    while prec <= cap:
        x, y = build(prec)
        res = compare(x, y)
        if res != "undecided":
            return res, prec
        prec *= 2
    raise PrecisionCapError(f"comparison undecided at {cap} bits")


# ---------------------------------------------------------------------- pi

def _atan_inv_scaled(x: int, scale_bits: int) -> tuple[int, int]:
    """Return (v, err) with |atan(1/x) * 2^scale_bits - v| <= err."""
    one = 1 << scale_bits
    total, err = 0, 0
    x2 = x * x
    power = x  # x^(2k+1)
    k = 0
    while True:
        term = one // ((2 * k + 1) * power)
        if term == 0:
            err += 1
            break
        total += -term if k % 2 else term
        err += 1
        k += 1
        power *= x2
    return total, err


@lru_cache(maxsize=None)
def pi_interval(prec: int) -> IntervalReal:
    """Machin's formula in fixed point with explicit error accounting."""
    bits = prec + 16
    a, ea = _atan_inv_scaled(5, bits)
    b, eb = _atan_inv_scaled(239, bits)
    v = 16 * a - 4 * b
    err = 16 * ea + 4 * eb
    return IntervalReal.make(Fraction(v - err, 1 << bits), Fraction(v + err, 1 << bits), prec)


def enclose(x: ExactReal, prec: int = START_PRECISION) -> IntervalReal:
    """Containment-correct enclosure of an ExactReal."""
    work = prec + 8
    out = IntervalReal.point(x.coeff, work)
    if x.pi_half_exp:
        pi = pi_interval(work)
        e = x.pi_half_exp
        out = out * pi ** (e // 2)
        if e % 2:
            out = out * pi.sqrt()
    if x.radicand != 1:
        out = out * IntervalReal.point(x.radicand, work).sqrt()
    return out.at(prec)


# ------------------------------------------------------------ zeta / gamma

def zeta_exact(s: int) -> ExactReal:
    """zeta(s) for even s >= 2 as rational * pi^s."""
    if s < 2 or s % 2:
        raise ValueError("zeta_exact needs an even argument >= 2; use zeta_interval")
    c = (-1) ** (s // 2 + 1) * bernoulli(s) * Fraction(2) ** s / (2 * math.factorial(s))
    return ExactReal(c, 2 * s)


def _rising(s: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= s + i
    return out


@lru_cache(maxsize=None)
def zeta_interval(s: int, prec: int = START_PRECISION) -> IntervalReal:
    """Enclosure of zeta(s), s >= 2, of width <= 2^(1-prec).

    Direct summation up to N-1, then Euler-Maclaurin for the tail starting
    at the integral comparison term, with the standard remainder bound."""
    if s < 2:
        raise ValueError("s must be >= 2")
    work = prec + 12
    n_terms = 16 + prec // 4
    bits = work + 8
    one = 1 << bits
    head, head_err = 0, 0
    for n in range(1, n_terms):
        head += one // n ** s
        head_err += 1
    lo = Fraction(head, one)
    hi = Fraction(head + head_err, one)
    N = n_terms
    # tail = N^(1-s)/(s-1) + N^(-s)/2 + sum_j B_2j/(2j)! * s(s+1)..(s+2j-2) N^(-s-2j+1) + R
    tail = Fraction(1, (s - 1) * N ** (s - 1)) + Fraction(1, 2 * N ** s)
    target = Fraction(1, 1 << (work + 2))
    j = 1
    while True:
        bound = 2 * abs(bernoulli(2 * j)) / math.factorial(2 * j) * Fraction(
            _rising(s, 2 * j - 1), N ** (s + 2 * j - 1))
        if bound < target:
            break
        tail += bernoulli(2 * j) / math.factorial(2 * j) * Fraction(
            _rising(s, 2 * j - 1), N ** (s + 2 * j - 1))
        j += 1
    out = IntervalReal.make(lo + tail - bound, hi + tail + bound, work)
    return out.at(prec + 2)


def gamma_half(k: int) -> ExactReal:
    """Gamma(k/2) for k >= 1."""
    if k < 1:
        raise ValueError("k must be positive")
    if k % 2 == 0:
        return ExactReal(Fraction(math.factorial(k // 2 - 1)))
    m = (k - 1) // 2
    return ExactReal(Fraction(math.factorial(2 * m), 4 ** m * math.factorial(m)), 1)


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1:
        return True
    if D % 4 == 1:
        return squarefree_split(abs(D))[0] == 1
    if D % 4 == 0:
        d = D // 4
        return d % 4 in (2, 3) and squarefree_split(abs(d))[0] == 1
    return False


def generalized_bernoulli(k: int, D: int) -> Fraction:
    f = abs(D)
    return f ** (k - 1) * sum(kronecker(D, a) * bernoulli_poly(k, Fraction(a, f))
                              for a in range(1, f + 1))


def l_value_exact(k: int, D: int) -> ExactReal:
    """L(k, chi_D) for a fundamental discriminant D != 1 with chi_D(-1) = (-1)^k.

    Uses the generalized Bernoulli number and the Gauss sum sqrt(D) of the
    real primitive character."""
    if k < 1:
        raise ValueError("k must be positive")
    if D == 1 or not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a nontrivial fundamental discriminant")
    delta = 0 if D > 0 else 1
    if (k - delta) % 2:
        raise ValueError(f"parity mismatch: chi_{D}(-1) != (-1)^{k}")
    f = abs(D)
    sign = (-1) ** (1 + (k - delta) // 2)
    c = sign * Fraction(1, 2) * Fraction(2, f) ** k * generalized_bernoulli(k, D) / math.factorial(k)
    return ExactReal(c, 2 * k, f)


def l_series_interval(k: int, D: int, terms: int, prec: int = 64) -> IntervalReal:
    """Partial Dirichlet sum of L(k, chi_D) plus the crude tail |sum_{n>=N}| <= N^(1-k)/(k-1) + N^-k.

    Independent route used by tests; for k = 1 the alternating structure of chi_{-4}
    is not exploited, so k >= 2 is required."""
    if k < 2:
        raise ValueError("k >= 2 required")
    partial = sum(Fraction(kronecker(D, n), n ** k) for n in range(1, terms))
    tail = Fraction(1, (k - 1) * terms ** (k - 1)) + Fraction(1, terms ** k)
    return IntervalReal.make(partial - tail, partial + tail, prec)
