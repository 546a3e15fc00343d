"""Bounds on the branch-divisor volume sums and the general-type certifier.

The certifier compares the growth of cusp forms of weight n' against the
volume of the branch divisor.  Two routes:

generic  sqrt(D(L)) >= g(n) (1 + 1/a)^(n-1) (n / 2a)
orbits   sum_i w_i vol+(L, K_i) < (1 + 1/a)^(1-n) (2a / n), the sum running
         over O+(L)-orbits of reflective vectors, w_i = 1 for split orbits
         and a bound for [O+(K_i) : Gamma_i] otherwise.

All comparisons are interval comparisons; an undecided one is retried at
doubled precision and never counts as success.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_values import (MAX_PRECISION, START_PRECISION, ExactReal, IntervalReal,
                           PrecisionCapError, compare, enclose, gamma_half, zeta_exact,
                           zeta_interval)
from .jordan import jordan_decompose
from .lattice import (DEFAULT_MAX_GROUP, CapExceeded, IntegralLattice, LatticeError,
                      direct_sum, exponent, hyperbolic_U, prime_factors, root_D, root_E8)
from .reflective import SPLIT, eichler_orbits, has_standard_2U, stabilizer_index
from .volume import volume_ratio, volume_ratio_plus_factor
from .weil import min_weight, table2

log = logging.getLogger(__name__)

SMALL_N_EPSILON = 64
CERTIFIED, INCONCLUSIVE = "certified_general_type", "inconclusive"


# ------------------------------------------------------------ epsilon

@dataclass(frozen=True)
class SurdSum:
    """Finite sum of rational multiples of square roots of squarefree integers."""
    terms: tuple[tuple[int, Fraction], ...]

    @classmethod
    def of(cls, xs) -> "SurdSum":
        acc: dict[int, Fraction] = {}
        for x in xs:
            if x.pi_half_exp:
                raise ValueError("pi powers are not allowed in a surd sum")
            acc[x.radicand] = acc.get(x.radicand, Fraction(0)) + x.coeff
        return cls(tuple(sorted((r, c) for r, c in acc.items() if c)))

    def scaled(self, x: ExactReal) -> "SurdSum":
        return SurdSum.of([x * ExactReal(c, 0, r) for r, c in self.terms])

    def enclose(self, prec: int = START_PRECISION) -> IntervalReal:
        out = IntervalReal.point(0, prec)
        for r, c in self.terms:
            out = out + enclose(ExactReal(c, 0, r), prec)
        return out

    def __float__(self) -> float:
        return sum(float(ExactReal(c, 0, r)) for r, c in self.terms)


def _blocks(L: IntegralLattice, p: int) -> dict[int, int]:
    return {b.scale: b.rank for b in jordan_decompose(L, p).blocks if b.rank}


def _mu(L: IntegralLattice, p: int) -> int:
    D, v = exponent(L), 0
    while D % p == 0:
        D //= p
        v += 1
    return v


def m_pj(L: IntegralLattice, p: int, j: int, blocks: dict | None = None) -> int:
    blocks = _blocks(L, p) if blocks is None else blocks
    if j not in blocks:
        raise ValueError(f"no Jordan block at scale {j} for p = {p}")
    m = sum(abs(k - j) * nk for k, nk in blocks.items()) - _mu(L, p)
    if L.is_primitive() and m < max(0, L.rank - 2 - blocks[j]):
        raise AssertionError(f"m_{p},{j} = {m} violates the primitive-lattice lower bound")
    return m


def in_P(L: IntegralLattice, p: int, blocks: dict | None = None) -> bool:
    """Odd p | D(L) with every Jordan block (scale 0 included) of rank <= 1."""
    if p == 2 or exponent(L) % p:
        return False
    blocks = _blocks(L, p) if blocks is None else blocks
    return all(r <= 1 for r in blocks.values())


def epsilon_pj(L: IntegralLattice, p: int, j: int, blocks: dict | None = None,
               p_in_P: bool | None = None) -> ExactReal:
    blocks = _blocks(L, p) if blocks is None else blocks
    m = m_pj(L, p, j, blocks)
    root = ExactReal.sqrt(Fraction(p) ** -m)
    if p == 2:
        return root
    if p_in_P is None:
        p_in_P = in_P(L, p, blocks)
    if p_in_P:
        return root * 4
    return root * (1 + Fraction(1, p ** (blocks[j] // 2)))


def epsilon_p(L: IntegralLattice, p: int) -> SurdSum:
    blocks = _blocks(L, p)
    inP = in_P(L, p, blocks)
    return SurdSum.of(epsilon_pj(L, p, j, blocks, inP) for j in sorted(blocks))


def epsilon_total(L: IntegralLattice, prec: int = START_PRECISION) -> IntervalReal:
    out = IntervalReal.point(1, prec)
    for p in prime_factors(exponent(L)):
        out = out * epsilon_p(L, p).enclose(prec)
    return out


def prime_class(L: IntegralLattice, p: int, blocks: dict | None = None) -> str:
    """Which of the classes P1..P6 of the boundedness argument p falls into."""
    if p == 2:
        return "P1"
    blocks = _blocks(L, p) if blocks is None else blocks
    n = L.rank - 2
    if in_P(L, p, blocks):
        return "P2"
    ranks = list(blocks.values())
    if n + 1 in ranks:
        return "P3"
    if n in ranks:
        return "P4"
    if any(2 * r > n + 2 for r in ranks):
        return "P5"
    return "P6"


@dataclass
class EpsilonReport:
    m: dict[int, dict[int, int]]
    eps_pj: dict[int, dict[int, ExactReal]]
    eps_p: dict[int, SurdSum]
    classes: dict[int, str]
    total: IntervalReal


def epsilon_report(L: IntegralLattice, prec: int = START_PRECISION) -> EpsilonReport:
    m, epj, ep, cls = {}, {}, {}, {}
    primes = sorted(set(prime_factors(2 * exponent(L))))
    for p in primes:
        blocks = _blocks(L, p)
        inP = in_P(L, p, blocks)
        m[p] = {j: m_pj(L, p, j, blocks) for j in sorted(blocks)}
        epj[p] = {j: epsilon_pj(L, p, j, blocks, inP) for j in sorted(blocks)}
        ep[p] = SurdSum.of(epj[p].values())
        cls[p] = prime_class(L, p, blocks)
    total = IntervalReal.point(1, prec)
    for p in prime_factors(exponent(L)):
        total = total * ep[p].enclose(prec)
    return EpsilonReport(m, epj, ep, cls, total)


@dataclass(frozen=True)
class EpsilonBound:
    value: IntervalReal
    heuristic: bool


def _zeta(s: int, prec: int) -> IntervalReal:
    return enclose(zeta_exact(s), prec) if s % 2 == 0 else zeta_interval(s, prec)


def _odd_zeta(s: int, prec: int) -> IntervalReal:
    """prod over odd primes of (1 - p^-s)^-1."""
    return _zeta(s, prec) * (1 - Fraction(1, 2 ** s))


def _pow2_half(e: int, prec: int) -> IntervalReal:
    """2^(e/2)."""
    q, r = divmod(e, 2)
    out = IntervalReal.point(Fraction(2) ** q, prec)
    return out * IntervalReal.point(2, prec).sqrt() if r else out


def epsilon_constant(n: int, prec: int = START_PRECISION) -> EpsilonBound:
    """Upper bound for eps(L) over primitive L of signature (2, n).

    For n >= 16 only the classes P1, P3, P4 contribute a factor above 1:
    eps_2 <= 1 + 2^(1-n/2), and over odd primes the products of (1 + 3p^-n/2)
    and (1 + 5p^-[n/2]) are bounded by odd-part zeta values at [n/2] through
    1 + k x <= (1 - x)^-k."""
    if n < 16:
        log.warning("epsilon bound for n = %d is a heuristic constant", n)
        return EpsilonBound(IntervalReal.point(SMALL_N_EPSILON, prec), True)
    e1 = 1 + _pow2_half(2 - n, prec)
    zo = _odd_zeta(n // 2, prec)
    return EpsilonBound(e1 * zo ** 8, False)


# ------------------------------------------------------------ f g h

def _pi_over_gamma(n: int) -> ExactReal:
    """pi^(n/2+1) / Gamma(n/2+1)."""
    return ExactReal.pi_power(n + 2) / gamma_half(n + 2)


def f_bound(n: int, prec: int = START_PRECISION) -> IntervalReal:
    if n < 3:
        raise ValueError("f needs n >= 3")
    return enclose(_pi_over_gamma(n) * 1152, prec) * _zeta(n // 2 + 1, prec)


def g_bound(n: int, prec: int = START_PRECISION) -> IntervalReal:
    eps = epsilon_constant(n, prec).value
    return f_bound(n, prec) * (1 + Fraction(4) ** (n + 2)) * eps


def h_bound(n: int, prec: int = START_PRECISION) -> IntervalReal:
    if n < 10:
        raise ValueError("h needs n >= 10")
    return enclose(_pi_over_gamma(n) * 9, prec) * _zeta(n // 2 - 2, prec) ** 3


def h_tilde(n: int, prec: int = START_PRECISION) -> IntervalReal:
    two_54 = IntervalReal.point(Fraction(2) ** (5 * n), prec).root(4)
    coeff = two_54 * 20 + (4 + Fraction(2) ** (n + 2))
    return coeff * h_bound(n, prec)


def bigness_factor(n: int, a: Fraction, prec: int = START_PRECISION) -> IntervalReal:
    """(1 + 1/a)^(n-1) (n / 2a)."""
    a = Fraction(a)
    if a <= 0:
        raise ValueError("a must be positive")
    return IntervalReal.point((1 + 1 / a) ** (n - 1) * Fraction(n) / (2 * a), prec)


def threshold_value(n: int, prec: int = START_PRECISION) -> IntervalReal:
    """h~(n) (1 + 1/a)^(n-1) (n / 2a) with a = n/2 - 11."""
    return h_tilde(n, prec) * bigness_factor(n, Fraction(n, 2) - 11, prec)


def _holds_at_most_one(n: int, start: int = START_PRECISION) -> bool:
    prec = start
    while prec <= MAX_PRECISION:
        res = compare(threshold_value(n, prec), IntervalReal.point(1, prec))
        if res != "undecided":
            return res == "less"
        prec *= 2
    raise PrecisionCapError(f"threshold comparison undecided at n = {n}")


def threshold_n(n_max: int = 400, prec: int = START_PRECISION) -> int:
    """Smallest n >= 22 from which h~(n)(1+1/a)^(n-1)(n/2a) <= 1 holds for
    every n up to n_max (a = n/2 - 11; n = 22 has a = 0 and fails)."""
    last_fail = 22
    for n in range(23, n_max + 1):
        if not _holds_at_most_one(n, prec):
            last_fail = n
    if last_fail == n_max:
        raise ArithmeticError("inequality fails at the end of the range")
    return last_fail + 1


# ------------------------------------------------------------ certifier

def cusp_weight(n: int) -> tuple[Fraction, Fraction]:
    """(l, n') with l the minimal weight of Table 1 and n' = n/2 + l + 5."""
    if n < 3:
        raise ValueError("needs n >= 3")
    l = min_weight(n)
    if not (l <= 6 and (l + Fraction(n, 2) - 3) % 4 == 0):
        raise AssertionError("weight table invariant violated")
    n_prime = Fraction(n, 2) + l + 5
    if (n_prime < n) != (n >= 21 or n == 17):
        raise AssertionError("cusp range disagrees with n >= 21 or n = 17")
    return l, n_prime


def branch_sum_bound(L: IntegralLattice, prec: int = START_PRECISION) -> IntervalReal:
    """g(n) D(L)^(-1/2)."""
    if not L.is_primitive():
        log.warning("descaling non-primitive lattice")
        L, _ = L.primitive_descale()
    n = L.signature[1]
    if n < 4:
        raise ValueError("needs n >= 4")
    return g_bound(n, prec) / IntervalReal.point(exponent(L), prec).sqrt()


@dataclass
class OrbitTerm:
    norm: int
    div: int
    type: str
    weight: int
    weight_exact: bool
    volume: IntervalReal


@dataclass
class Certificate:
    lattice: IntegralLattice
    n: int
    D: int
    weight: Fraction | None
    a: Fraction | None
    bound: IntervalReal | None
    decision: str
    route: str
    reason: str = ""
    precision: int = START_PRECISION
    lhs: IntervalReal | None = None
    rhs: IntervalReal | None = None
    orbits: list = field(default_factory=list)


def _orbit_terms(L: IntegralLattice, n: int, prec: int, max_group: int) -> list[OrbitTerm]:
    out = []
    for orb in eichler_orbits(L, max_group):
        ratio = volume_ratio(L, orb.complement)
        fac = max(volume_ratio_plus_factor(L, orb.complement))
        vol = enclose(ratio.base, prec) * (ratio.hi * fac)
        if orb.type == SPLIT:
            w, exact = 1, True
        else:
            try:
                st = stabilizer_index(L, orb, max_group)
                w, exact = st.value, st.exact
            except CapExceeded:
                w, exact = 2 ** (n + 1), False
        out.append(OrbitTerm(orb.norm, orb.div, orb.type, w, exact, vol))
    return out


def _orbit_sides(terms, n: int, a: Fraction, prec: int):
    lhs = IntervalReal.point(0, prec)
    for t in terms:
        lhs = lhs + t.volume.at(prec) * t.weight
    rhs = IntervalReal.point((1 + 1 / a) ** (1 - n) * 2 * a / n, prec)
    return lhs, rhs


def certify_general_type(L: IntegralLattice, a=None, route: str = "auto",
                         precision: int = START_PRECISION,
                         max_group: int = DEFAULT_MAX_GROUP) -> Certificate:
    pos, neg = L.signature
    if pos != 2:
        raise LatticeError("signature (2, n) required")
    L, _ = L.primitive_descale()
    n = neg
    D = exponent(L)
    l = n_prime = None
    if n >= 3:
        l, n_prime = cusp_weight(n)
    if a is None:
        if n_prime is None or not (n >= 21 or n == 17):
            return Certificate(L, n, D, n_prime, None, None, INCONCLUSIVE, route,
                               "n outside the cusp-form range", precision)
        a = n - n_prime
    a = Fraction(a)
    if a <= 0:
        return Certificate(L, n, D, n_prime, a, None, INCONCLUSIVE, route,
                           "a must be positive", precision)
    if route == "auto":
        route = "orbits" if L.is_even() and has_standard_2U(L) else "generic"
    if route == "orbits":
        try:
            terms = _orbit_terms(L, n, precision, max_group)
        except CapExceeded as exc:
            log.warning("orbit enumeration capped (%s); using the generic bound", exc)
            route = "generic"
        prec = precision
        while route == "orbits" and prec <= MAX_PRECISION:
            lhs, rhs = _orbit_sides(terms, n, a, prec)
            res = compare(lhs, rhs)
            if res != "undecided":
                dec = CERTIFIED if res == "less" else INCONCLUSIVE
                return Certificate(L, n, D, n_prime, a, None, dec, "enumerated_orbits",
                                   "" if dec == CERTIFIED else "orbit volume sum too large",
                                   prec, lhs, rhs, terms)
            prec *= 2
        if route == "orbits":
            raise PrecisionCapError("orbit inequality undecided")
    if route != "generic":
        raise ValueError(f"unknown route {route!r}")
    heuristic = epsilon_constant(n, precision).heuristic
    prec = precision
    while prec <= MAX_PRECISION:
        B = g_bound(n, prec) * bigness_factor(n, a, prec)
        lhs = IntervalReal.point(D, prec).sqrt()
        res = compare(lhs, B)
        if res != "undecided":
            ok = res == "greater"
            reason = ""
            if ok and heuristic:
                ok, reason = False, "epsilon constant is heuristic for n < 16"
            elif not ok:
                reason = "sqrt(D(L)) below the generic bound"
            return Certificate(L, n, D, n_prime, a, B, CERTIFIED if ok else INCONCLUSIVE,
                               "generic", reason, prec, lhs, B)
        prec *= 2
    raise PrecisionCapError("generic comparison undecided")


# ------------------------------------------------------------ odd unimodular family

def odd_unimodular_even_part(m: int, N: int) -> IntegralLattice:
    """2U + m E8 + D_N, the maximal even sublattice of I_{2, 8m+N+2}."""
    return direct_sum(hyperbolic_U(), hyperbolic_U(), *([root_E8()] * m), root_D(N))


def certify_family_member(m: int, N: int, precision: int = START_PRECISION) -> Certificate:
    n = 8 * m + N + 2
    a = Fraction(n, 2) + 1 - table2()[N]
    return certify_general_type(odd_unimodular_even_part(m, N), a=a, route="orbits",
                                precision=precision)


def family_members(n_max: int = 60) -> list[tuple[int, int, int]]:
    out = []
    for m in range(0, n_max // 8 + 1):
        for N in range(2, 9):
            n = 8 * m + N + 2
            if n <= n_max:
                out.append((n, m, N))
    return sorted(out)


def family_scan(n_max: int = 60, precision: int = START_PRECISION) -> dict[int, Certificate]:
    return {n: certify_family_member(m, N, precision) for n, m, N in family_members(n_max)}
