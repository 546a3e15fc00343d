"""Cyclic representation data theta = (U, (d_i, mu_i)_i) of Z/m, Reid-Tai sums
and canonical-singularity checks for V_theta / (Z/m).

U is a multiset of d | m, one V_d (the rational representation with
eigenvalues e(k/d), k prime to d) per entry.  W_{d, mu} is C[Z/d] twisted by
the character e(mu).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .intmat import kernel_basis


@dataclass(frozen=True)
class AdmissibleData:
    m: int
    U: tuple[int, ...] = ()
    W: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        U = tuple(sorted(int(d) for d in self.U))
        W = tuple(sorted((int(d), Fraction(mu) % 1) for d, mu in self.W))
        for d in U + tuple(d for d, _ in W):
            if d < 1 or self.m % d:
                raise ValueError(f"{d} does not divide {self.m}")
        for _, mu in W:
            if self.m % mu.denominator:
                raise ValueError(f"mu = {mu} is not in (1/{self.m})Z")
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "W", W)

    @property
    def dim(self) -> int:
        return sum(_phi(d) for d in self.U) + sum(d for d, _ in self.W)

    @classmethod
    def from_json(cls, obj) -> "AdmissibleData":
        return cls(int(obj["m"]), tuple(obj.get("U", [])),
                   tuple((int(d), Fraction(mu)) for d, mu in obj.get("W", [])))

    def to_json(self) -> dict:
        return {"m": self.m, "U": list(self.U), "W": [[d, str(mu)] for d, mu in self.W]}


EigenData = tuple  # sorted tuple of Fractions in [0, 1)


def _phi(d: int) -> int:
    return sum(1 for k in range(1, d + 1) if gcd(k, d) == 1)


def _units(d: int) -> list[int]:
    return [k for k in range(d) if gcd(k, d) == 1] if d > 1 else [0]


def _summand_angles(theta: AdmissibleData, t: int) -> list[list[Fraction]]:
    """Eigenvalue angles of t, one list per summand (U entries first)."""
    out = []
    for d in theta.U:
        out.append([Fraction(t * k, d) % 1 for k in _units(d)])
    for d, mu in theta.W:
        out.append([(t * (Fraction(k, d) + mu)) % 1 for k in range(d)])
    return out


def eigen_data(theta: AdmissibleData, t: int) -> EigenData:
    return tuple(sorted(a for part in _summand_angles(theta, t) for a in part))


def restrict(theta: AdmissibleData, m_sub: int) -> AdmissibleData:
    """Restriction to the subgroup Z/m' generated by g^(m/m')."""
    if m_sub < 1 or theta.m % m_sub:
        raise ValueError("m' must divide m")
    mpp = theta.m // m_sub
    U = []
    for d in theta.U:
        dp = d // gcd(d, mpp)
        U.extend([dp] * (_phi(d) // _phi(dp)))
    W = []
    for d, mu in theta.W:
        dpp = gcd(d, mpp)
        W.extend([(d // dpp, (mpp * mu) % 1)] * dpp)
    return AdmissibleData(m_sub, tuple(U), tuple(W))


def is_admissible(theta: AdmissibleData) -> bool:
    """Every nontrivial subgroup sees a nontrivial U or some d_i' > 1."""
    for m_sub in range(2, theta.m + 1):
        if theta.m % m_sub:
            continue
        mpp = theta.m // m_sub
        # d' = d / gcd(d, m'') > 1 iff d does not divide m''
        if not any(mpp % d for d in theta.U) and not any(mpp % d for d, _ in theta.W):
            return False
    return True


def reid_tai_sum(e) -> Fraction:
    return sum((Fraction(a) % 1 for a in e), Fraction(0))


@dataclass(frozen=True)
class QuasiReflection:
    kind: str                 # "none" or "reflection"
    location: tuple = ()      # ("U", index) or ("W", index)
    order: int = 1


def quasi_reflection_analysis(theta: AdmissibleData, t: int) -> QuasiReflection:
    parts = _summand_angles(theta, t)
    nontrivial = [(i, a) for i, part in enumerate(parts) for a in part if a != 0]
    if len(nontrivial) != 1:
        return QuasiReflection("none")
    i = nontrivial[0][0]
    nu = len(theta.U)
    loc = ("U", i) if i < nu else ("W", i - nu)
    order = theta.m // gcd(t, theta.m)
    if is_admissible(theta):
        if order != 2 or (theta.m // order) % 2 == 0:
            raise AssertionError("quasi-reflection of an admissible datum is not an odd-index reflection")
        d = theta.U[i] if i < nu else theta.W[i - nu][0]
        if d != 2:
            raise AssertionError("reflecting summand is not V_2 or W_{2, mu}")
    return QuasiReflection("reflection", loc, order)


# -------------------------------------------------------------- RST

@dataclass(frozen=True)
class CanonicalResult:
    canonical: bool
    witness: int | None = None   # exponent t of the failing element g^t


def _int_angles(theta: AdmissibleData) -> list[int]:
    """Angles of the generator as numerators over m."""
    m = theta.m
    out = [k * (m // d) % m for d in theta.U for k in _units(d)]
    out += [(k * (m // d) + int(mu * m)) % m for d, mu in theta.W for k in range(d)]
    return out


def _reduce_by_quasi_reflections(angles: list[int], m: int) -> list[int]:
    """Pass to V / H for H generated by quasi-reflections of <g>, g = diag(e(a/m)).

    A quasi-reflection g^t moving only coordinate i generates a cyclic
    subgroup acting on that coordinate alone; the quotient coordinate is
    x_i^k, so the angle of g on it is multiplied by k.  Repeat until the
    image group has no quasi-reflections."""
    angles = list(angles)
    while True:
        for t in range(1, m):
            moved = [i for i, a in enumerate(angles) if t * a % m]
            if len(moved) == 1:
                i = moved[0]
                angles[i] = angles[i] * (m // gcd(t * angles[i], m)) % m
                break
        else:
            return angles


def canonical_check(theta: AdmissibleData) -> CanonicalResult:
    """RST criterion after removing quasi-reflections, on V_theta / (Z/m)."""
    m = theta.m
    reduced = _reduce_by_quasi_reflections(_int_angles(theta), m)
    for t in range(1, m):
        e = [t * a % m for a in reduced]
        if any(e) and sum(e) < m:
            return CanonicalResult(False, t)
    return CanonicalResult(True)


def brute_force_canonical(theta: AdmissibleData) -> bool:
    """Toric check without the representation structure.

    V/G is the affine toric variety of the positive orthant for the lattice
    N = Z^n + sum_t Z (angles of g^t).  The primitive ray generator on axis i
    is e_i / k_i, k_i = number of group elements moving only coordinate i.
    The quotient is canonical iff every nonzero box point has sum_i {k_i b_i} >= 1."""
    m = theta.m
    gen = [int(a * m) for a in eigen_data_unsorted(theta, 1)]
    # distinct angle vectors (numerators over m): the group acting effectively
    elems = {tuple(t * a % m for a in gen) for t in range(m)}
    n = len(gen)
    k = [0] * n
    for e in elems:
        moved = [i for i in range(n) if e[i]]
        if len(moved) <= 1:
            for i in range(n):
                if moved in ([], [i]):
                    k[i] += 1
    for e in elems:
        c = [k[i] * e[i] % m for i in range(n)]
        if any(c) and sum(c) < m:
            return False
    return True


def eigen_data_unsorted(theta: AdmissibleData, t: int) -> list[Fraction]:
    return [a for part in _summand_angles(theta, t) for a in part]


def corpus(max_m: int = 12, max_dim: int = 5):
    """Every theta with m <= max_m and 1 <= dim <= max_dim, without trivial summands V_1."""
    for m in range(1, max_m + 1):
        divs = [d for d in range(1, m + 1) if m % d == 0]
        u_opts = [d for d in divs if d > 1]
        w_opts = [(d, Fraction(j, m)) for d in divs for j in range(m)]
        for nu in range(0, max_dim + 1):
            for U in itertools.combinations_with_replacement(u_opts, nu):
                du = sum(_phi(d) for d in U)
                if du > max_dim:
                    continue
                yield from _w_multisets(m, U, w_opts, max_dim - du, du)


def _w_multisets(m, U, w_opts, budget, du, start=0, acc=()):
    if du + sum(d for d, _ in acc) >= 1:
        yield AdmissibleData(m, U, acc)
    for i in range(start, len(w_opts)):
        d = w_opts[i][0]
        if d <= budget:
            yield from _w_multisets(m, U, w_opts, budget - d, du, i, acc + (w_opts[i],))


# -------------------------------------------------------------- toric local model

def _charpoly(M: list[list[int]]) -> list[int]:
    """Characteristic polynomial det(xI - M), lowest degree first (Faddeev-LeVerrier)."""
    n = len(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = M (M_{k-1} + c_{n-k+1} I)
        prev = [[Mk[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(M[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    return [int(c) for c in coeffs]


def _poly_divmod(a: list[int], b: list[int]):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = Fraction(a[i + len(b) - 1], b[-1])
        if c.denominator != 1:
            return None, a
        q[i] = int(c)
        for j, bj in enumerate(b):
            a[i + j] -= int(c) * bj
    return q, a


def _cyclotomic(d: int) -> list[int]:
    from .weil import cyclotomic_poly
    return list(cyclotomic_poly(d))


def _cyclotomic_factors(poly: list[int]) -> list[int]:
    """Multiset of d with poly = prod Phi_d (raises if poly is not such a product)."""
    out = []
    d = 1
    while len(poly) > 1:
        if d > 10 ** 4:
            raise ValueError("not a product of cyclotomic polynomials")
        phi = _cyclotomic(d)
        q, r = _poly_divmod(poly, phi)
        if q is not None and not any(r):
            out.append(d)
            poly = q
            while len(poly) > 1 and poly[-1] == 0:
                poly.pop()
            continue
        d += 1
    if poly != [1]:
        raise ValueError("not a product of cyclotomic polynomials")
    return out


def _perm_cycles(perm: list[int]) -> list[list[int]]:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        out.append(cyc)
    return out


@dataclass(frozen=True)
class LocalModel:
    theta: AdmissibleData
    gamma_order: int
    admissible: bool


def local_model(gamma: list[list[int]], rays: list[list[int]], ray_angles: list) -> LocalModel:
    """Representation of g = t_a o gamma on the tangent space at a fixed point
    of orb(sigma), sigma the regular cone spanned by `rays` (part of a basis of
    N = Z^n, gamma acting on column vectors).

    ray_angles[j] is the angle of the translation on the coordinate of ray j.
    Tangent part: gamma on N / N_0 (rational).  Normal part: one W_{d, mu} per
    cycle of gamma on the rays, with d mu = the sum of angles along the cycle."""
    n = len(gamma)
    images = [[sum(gamma[i][k] * r[k] for k in range(n)) for i in range(n)] for r in rays]
    perm = []
    for v in images:
        if v not in rays:
            raise ValueError("gamma does not preserve the cone")
        perm.append(rays.index(v))
    if rays and _partial_basis_rank(rays) != len(rays):
        raise ValueError("cone is not regular")
    cycles = _perm_cycles(perm)
    full = _charpoly(gamma)
    n0 = [1]
    for cyc in cycles:
        n0 = _polymul(n0, [-1] + [0] * (len(cyc) - 1) + [1])
    tangent, rem = _poly_divmod(full, n0)
    if tangent is None or any(rem):
        raise ValueError("ray span is not gamma-stable")
    # trivial tangent directions (Phi_1 factors) carry no action
    U = [d for d in _cyclotomic_factors(tangent) if d > 1]
    W = []
    for cyc in cycles:
        s = sum((Fraction(ray_angles[j]) for j in cyc), Fraction(0))
        W.append((len(cyc), (s / len(cyc)) % 1))
    ord_gamma = _matrix_order(gamma)
    angles = [Fraction(k, d) for d in U for k in _units(d)]
    angles += [Fraction(k, d) + mu for d, mu in W for k in range(d)]
    m = lcm(*[a.denominator for a in angles]) if angles else 1
    m = lcm(m, ord_gamma)
    theta = AdmissibleData(m, tuple(U), tuple(W))
    adm = is_admissible(theta)
    if ord_gamma == m and not adm:
        raise AssertionError("local model of a faithful gamma is not admissible")
    return LocalModel(theta, ord_gamma, adm)


def _partial_basis_rank(rows: list[list[int]]) -> int:
    """Rank of the row span, certifying that regular-cone rays are a partial basis
    (the gcd of maximal minors must be 1)."""
    from itertools import combinations
    from .intmat import det
    k, n = len(rows), len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, det([[r[c] for c in cols] for r in rows]))
    return k if g == 1 else -1


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _matrix_order(M: list[list[int]], cap: int = 1000) -> int:
    n = len(M)
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    P = [row[:] for row in M]
    for k in range(1, cap + 1):
        if P == eye:
            return k
        P = [[sum(P[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    raise ValueError("gamma does not have finite order")


def ramifies_on_boundary(gamma: list[list[int]], translation: list, ray: list[int]) -> bool:
    """True iff g = t_a o gamma fixes the boundary divisor of `ray` pointwise:
    gamma fixes the ray, acts trivially on N / Z ray, and a is trivial on the
    characters vanishing on the ray."""
    n = len(gamma)
    if [sum(gamma[i][k] * ray[k] for k in range(n)) for i in range(n)] != list(ray):
        return False
    for e in range(n):
        col = [gamma[i][e] - int(i == e) for i in range(n)]
        # gamma e - e must lie in Z ray
        ratios = {Fraction(c, r) for c, r in zip(col, ray) if r} if any(ray) else set()
        if any(c and not r for c, r in zip(col, ray)) or len(ratios) > 1:
            return False
        if ratios and next(iter(ratios)).denominator != 1:
            return False
    for mvec in kernel_basis(list(ray)):
        if sum(Fraction(x) * Fraction(a) for x, a in zip(mvec, translation)) % 1:
            return False
    return True
