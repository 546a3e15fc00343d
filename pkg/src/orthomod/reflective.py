"""Reflective vectors: classification, Eichler orbit enumeration on lattices
with a 2U summand, and stabilizer indices of non-split orbits."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd

from . import intmat
from .jordan import jordan_decompose
from .lattice import (DEFAULT_MAX_GROUP, CapExceeded, IntegralLattice, LatticeError,
                      class_of, divisor, exponent, orbit, orthogonal_complement,
                      orthogonal_group_of_module, prime_factors)

SPLIT, NONSPLIT, NOT_REFLECTIVE = "split", "nonsplit", "not_reflective"

_U2 = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))


@dataclass(frozen=True)
class ReflectiveOrbit:
    norm: int
    div: int
    type: str
    class_: tuple[int, ...]
    witness: tuple[int, ...]
    complement: IntegralLattice
    index2_sublattice: IntegralLattice | None = None


@dataclass(frozen=True)
class StabilizerIndex:
    """Upper bound for [O+(K) : Gamma_l]; `exact` when it is known to be attained."""
    value: int
    exact: bool


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def classify_vector(L: IntegralLattice, l) -> str:
    l = [int(x) for x in l]
    if reduce(gcd, (abs(t) for t in l), 0) != 1:
        raise LatticeError("vector is not primitive")
    nrm = L.norm(l)
    if nrm >= 0:
        raise LatticeError("vector must have negative norm")
    d = divisor(L, l)
    K = orthogonal_complement(L, l).lattice
    # [L : Zl + K]^2 = |det(Zl + K)| / |det L|
    sq, rem = divmod(abs(nrm * K.det), abs(L.det))
    if rem:
        raise AssertionError("index is not an integer")
    index = next(i for i in range(1, abs(nrm) + 1) if i * i == sq)
    if index * d != abs(nrm):
        raise AssertionError("index formula |(l,l)| / div(l) violated")
    if (2 * d) % abs(nrm):
        return NOT_REFLECTIVE
    return SPLIT if index == 1 else NONSPLIT


def candidate_norms(L: IntegralLattice) -> list[tuple[int, str]]:
    """Pruned list of (norm, type) that reflective vectors of L can have.

    Split vectors of norm -D give an orthogonal summand <-D>, so D | D(L) and
    the Jordan block at scale v_p(D) is nonzero for every p | D(L).  Non-split
    vectors have norm -2 div with div | D(L)."""
    DL = exponent(L)
    even = L.is_even()
    jd = {p: jordan_decompose(L, p) for p in prime_factors(DL)}
    out = []
    for D in _divisors(DL):
        if even and D % 2:
            continue
        ok = True
        for p, j in jd.items():
            v = 0
            while D % p ** (v + 1) == 0:
                v += 1
            if not any(b.scale == v and b.rank for b in j.blocks):
                ok = False
        if ok:
            out.append((-D, SPLIT))
    for d in _divisors(DL):
        out.append((-2 * d, NONSPLIT))
    return out


def has_standard_2U(L: IntegralLattice) -> bool:
    """First four basis vectors span U + U orthogonal to the rest."""
    if L.rank < 4:
        return False
    if tuple(tuple(L.gram[i][:4]) for i in range(4)) != _U2:
        return False
    return all(L.gram[i][j] == 0 for i in range(4) for j in range(4, L.rank))


def _witness(L: IntegralLattice, x, d: int, norm: int):
    """Primitive l with div(l) = d, [l/d] = x and (l, l) = norm, or None.

    With y a lift of x supported off the 2U block, l = d y + d e + c f."""
    A = L.discriminant
    y = [Fraction(0)] * 4 + list(A.lift(x)[4:]) if x != A.zero() else [Fraction(0)] * L.rank
    yy = intmat.bilinear(L.matrix, y, y)
    c = (norm - d * d * yy) / (2 * d)
    if c.denominator != 1:
        return None
    l = [d * t for t in y]
    l[0] += d
    l[1] += c
    if any(t.denominator != 1 for t in l):
        return None
    return tuple(int(t) for t in l)


@lru_cache(maxsize=256)
def eichler_orbits(L: IntegralLattice, max_group: int = DEFAULT_MAX_GROUP) -> tuple[ReflectiveOrbit, ...]:
    """O+(L)-orbits of reflective vectors for even L = U + U + K0.

    Orbit invariants are (norm, div, O(A_L)-orbit of [l/div]).  Each orbit
    comes with an explicit witness vector, re-classified before it is kept."""
    if not L.is_even():
        raise LatticeError("needs an even lattice")
    if not has_standard_2U(L):
        raise LatticeError("2U summand not found")
    A = L.discriminant
    if A.size > max_group:
        raise CapExceeded(f"|A_L| = {A.size} exceeds cap {max_group}")
    group = orthogonal_group_of_module(A, max_group)
    seen: set = set()
    out = []
    for x in sorted(A.elements()):
        x = tuple(x)
        d = A.order(x)
        for norm, kind in ((-d, SPLIT), (-2 * d, NONSPLIT)):
            # q(x) = norm / d^2 mod 2
            if (A.q(x) - Fraction(norm, d * d)) % 2 != 0:
                continue
            key = (norm, min(orbit(A, x, group)))
            if key in seen:
                continue
            seen.add(key)
            l = _witness(L, x, d, norm)
            if l is None:
                raise AssertionError("arithmetic conditions hold but no witness was built")
            if classify_vector(L, l) != kind or divisor(L, l) != d or L.norm(l) != norm:
                raise AssertionError("witness does not realise the orbit invariants")
            K = orthogonal_complement(L, l).lattice
            sub = None
            if kind == NONSPLIT:
                sub = IntegralLattice.from_gram(intmat.block_diag([[norm]], K.matrix))
            out.append(ReflectiveOrbit(norm, d, kind, x, l, K, sub))
    return tuple(out)


def gluing_class(L: IntegralLattice, l) -> tuple[int, ...]:
    """Class in A_K of the projection of L to K_Q for a non-split l."""
    comp = orthogonal_complement(L, l)
    B = [list(b) for b in comp.basis]
    nl = L.norm(l)
    for i in range(L.rank):
        e = [int(i == j) for j in range(L.rank)]
        c = Fraction(L.pair(e, l), nl)
        if c.denominator == 1:
            continue
        k = [Fraction(t) - c * s for t, s in zip(e, l)]
        Gk = intmat.matvec(L.matrix, k)
        rhs = [intmat.dot(b, Gk) for b in B]
        Ginv = intmat.inverse(comp.lattice.matrix)
        coords = intmat.matvec(Ginv, rhs)
        return class_of(comp.lattice, coords)
    raise LatticeError("vector is split")


@lru_cache(maxsize=1024)
def stabilizer_index(L: IntegralLattice, orb: ReflectiveOrbit,
                     max_group: int = DEFAULT_MAX_GROUP) -> StabilizerIndex:
    """Bound for [O+(K) : Gamma_l]: the size of the O(A_K)-orbit of the gluing
    class, or 2^l((A_K)_2) past the cap."""
    if orb.type == SPLIT:
        return StabilizerIndex(1, True)
    K = orb.complement
    AK = K.discriminant
    if AK.size > max_group:
        r = sum(1 for d in AK.orders if d % 2 == 0)
        return StabilizerIndex(2 ** r, False)
    x = gluing_class(L, orb.witness)
    size = len(orbit(AK, x, orthogonal_group_of_module(AK, max_group)))
    # O+(K) -> O(A_K) is onto for even indefinite K with rank >= l(A_K) + 2
    onto = K.is_even() and K.rank >= AK.length + 2 and min(K.signature) > 0
    return StabilizerIndex(size, onto)
