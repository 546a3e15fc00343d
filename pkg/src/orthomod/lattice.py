"""Integral lattices, discriminant forms and the lattice expression grammar."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from math import gcd, lcm

from . import intmat

DEFAULT_MAX_GROUP = 4096
DEFAULT_MAX_HEIGHT = 32


class LatticeError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """An enumeration exceeded its configured size cap."""


def _frac_mod(x: Fraction, m: int) -> Fraction:
    return x - m * ((x / m).numerator // (x / m).denominator)


# ------------------------------------------------------------------ lattice

@dataclass(frozen=True)
class IntegralLattice:
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0:
            raise LatticeError("rank must be >= 1")
        if any(len(r) != n for r in g):
            raise LatticeError("gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("gram matrix must be symmetric")
        if intmat.det([list(r) for r in g]) == 0:
            raise LatticeError("gram matrix is degenerate")

    @classmethod
    def from_gram(cls, gram) -> "IntegralLattice":
        return cls(tuple(tuple(r) for r in gram))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def matrix(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    @cached_property
    def det(self) -> int:
        return intmat.det(self.matrix)

    def pair(self, u, v):
        return intmat.bilinear(self.matrix, u, v)

    def norm(self, v):
        return self.pair(v, v)

    @cached_property
    def signature(self) -> tuple[int, int]:
        return signature(self)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def content(self) -> int:
        return reduce(gcd, (abs(x) for row in self.gram for x in row), 0)

    def is_primitive(self) -> bool:
        return self.content() == 1

    def scale(self, a: int) -> "IntegralLattice":
        return IntegralLattice.from_gram([[a * x for x in row] for row in self.gram])

    def primitive_descale(self) -> tuple["IntegralLattice", int]:
        c = self.content()
        return IntegralLattice.from_gram([[x // c for x in row] for row in self.gram]), c

    def __add__(self, other: "IntegralLattice") -> "IntegralLattice":
        return direct_sum(self, other)

    @cached_property
    def discriminant(self) -> "FiniteQuadraticModule":
        return discriminant_module(self)


def signature(L: IntegralLattice) -> tuple[int, int]:
    """Exact (positive, negative) inertia via symmetric rational elimination."""
    m = [[Fraction(x) for x in row] for row in L.gram]
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            # all diagonals zero: find an off-diagonal pair and replace e_i by e_i + e_j
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j] != 0), None)
            if pair is None:
                raise LatticeError("degenerate form")
            i, j = pair
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            continue
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = m[i][piv] / d
            if f:
                for k in active:
                    m[i][k] -= f * m[piv][k]
        for i in active:
            m[i][piv] = m[piv][i] = Fraction(0)
    return pos, neg


def direct_sum(*lats: IntegralLattice) -> IntegralLattice:
    return IntegralLattice.from_gram(intmat.block_diag(*[l.matrix for l in lats]))


# ------------------------------------------------------------- constructors

def hyperbolic_U() -> IntegralLattice:
    return IntegralLattice.from_gram([[0, 1], [1, 0]])


def diag(*ks: int) -> IntegralLattice:
    return IntegralLattice.from_gram(intmat.block_diag(*[[[k]] for k in ks]))


def root_A(n: int) -> IntegralLattice:
    if n < 1:
        raise LatticeError("A_n needs n >= 1")
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = 1
    return IntegralLattice.from_gram(g)


def root_D(n: int) -> IntegralLattice:
    """Negative definite D_n on the basis d_1..d_n with (d_1,d_2)=0, (d_1,d_3)=1,
    (d_i,d_{i+1})=1 for i >= 2.  D_1 = <-4>, D_2 = 2A_1."""
    if n < 1:
        raise LatticeError("D_n needs n >= 1")
    if n == 1:
        return diag(-4)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    if n >= 3:
        g[0][2] = g[2][0] = 1
        for i in range(1, n - 1):
            g[i][i + 1] = g[i + 1][i] = 1
    return IntegralLattice.from_gram(g)


def root_E8() -> IntegralLattice:
    # Bourbaki labelling: 1-3-4-5-6-7-8 chain with 2 attached to 4
    edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return IntegralLattice.from_gram(g)


def odd_unimodular(p: int, q: int) -> IntegralLattice:
    return diag(*([1] * p + [-1] * q))


def copies(L: IntegralLattice, m: int) -> IntegralLattice:
    if m < 1:
        raise LatticeError("multiplier must be positive")
    return direct_sum(*[L] * m)


# ------------------------------------------------------ expression grammar

_TERM = re.compile(
    r"^\s*(?P<mult>\d+)?\s*(?P<body>U|E8|A\d+|D\d+|<-?\d+>|I\d+,\d+)\s*(?:\((?P<scale>-?\d+)\))?\s*$")


def parse_lattice(expr: str) -> IntegralLattice:
    """Parse e.g. '2U + 2E8 + D4(1)' or '<2> + U + A1(3)' or 'I2,5'."""
    if not expr or not expr.strip():
        raise LatticeError("empty lattice expression")
    parts = _split_terms(expr)
    blocks = []
    for part in parts:
        m = _TERM.match(part)
        if not m:
            raise LatticeError(f"cannot parse term {part!r}")
        body = m.group("body")
        if body == "U":
            L = hyperbolic_U()
        elif body == "E8":
            L = root_E8()
        elif body.startswith("A"):
            L = root_A(int(body[1:]))
        elif body.startswith("D"):
            L = root_D(int(body[1:]))
        elif body.startswith("<"):
            k = int(body[1:-1])
            if k == 0:
                raise LatticeError("<0> is degenerate")
            L = diag(k)
        else:
            p, q = body[1:].split(",")
            L = odd_unimodular(int(p), int(q))
        if m.group("scale"):
            a = int(m.group("scale"))
            if a == 0:
                raise LatticeError("scaling by 0")
            L = L.scale(a)
        blocks.append(copies(L, int(m.group("mult") or 1)))
    return direct_sum(*blocks)


def _split_terms(expr: str) -> list[str]:
    # '+' separates terms; '<' ... '>' may hold a sign but never '+'
    out, depth, cur = [], 0, ""
    for ch in expr:
        if ch in "<(":
            depth += 1
        elif ch in ">)":
            depth -= 1
        if ch == "+" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [t for t in out if t.strip()] if all(t.strip() for t in out) else _bad(expr)


def _bad(expr):
    raise LatticeError(f"dangling '+' in {expr!r}")


# ----------------------------------------------------- discriminant module

@dataclass(frozen=True)
class FiniteQuadraticModule:
    """A finite abelian group Z/d_1 + ... + Z/d_k with Q/Z bilinear form and,
    for even parents, a Q/2Z quadratic form.  Elements are coefficient tuples."""

    orders: tuple[int, ...]
    bilinear: tuple[tuple[Fraction, ...], ...]
    quadratic: tuple[Fraction, ...] | None
    # rational coordinates (in the parent lattice basis) of each generator
    lifts: tuple[tuple[Fraction, ...], ...] | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return reduce(lcm, self.orders, 1)

    @property
    def length(self) -> int:
        """Minimal number of generators: the maximal p-rank."""
        best = 0
        for p in self.primes():
            best = max(best, sum(1 for d in self.orders if d % p == 0))
        return best

    @property
    def is_even(self) -> bool:
        return self.quadratic is not None

    def primes(self) -> list[int]:
        return sorted({p for d in self.orders for p in _prime_factors(d)})

    def zero(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.orders)

    def elements(self):
        return itertools.product(*[range(d) for d in self.orders])

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def mul(self, k: int, x):
        return tuple((k * a) % d for a, d in zip(x, self.orders))

    def b(self, x, y) -> Fraction:
        tot = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            if x[i]:
                for j in range(k):
                    if y[j]:
                        tot += x[i] * y[j] * self.bilinear[i][j]
        return _frac_mod(tot, 1)

    def q(self, x) -> Fraction:
        if self.quadratic is None:
            raise LatticeError("quadratic form only exists for even lattices")
        tot = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            if x[i]:
                tot += x[i] * x[i] * self.quadratic[i]
                for j in range(i + 1, k):
                    if x[j]:
                        tot += 2 * x[i] * x[j] * self.bilinear[i][j]
        return _frac_mod(tot, 2)

    def order(self, x) -> int:
        return reduce(lcm, (d // gcd(a, d) for a, d in zip(x, self.orders)), 1)

    def lift(self, x) -> list[Fraction]:
        if self.lifts is None:
            raise LatticeError("module has no lattice lifts")
        r = len(self.lifts[0]) if self.lifts else 0
        v = [Fraction(0)] * r
        for a, g in zip(x, self.lifts):
            if a:
                v = [s + a * t for s, t in zip(v, g)]
        return v

    def p_part(self, p: int) -> "FiniteQuadraticModule":
        """Sylow p-subgroup with restricted forms."""
        idx, orders, mults = [], [], []
        for i, d in enumerate(self.orders):
            pp = 1
            while d % p == 0:
                d //= p
                pp *= p
            if pp > 1:
                idx.append(i)
                orders.append(pp)
                mults.append(self.orders[i] // pp)
        gens = []
        for i, mlt in zip(idx, mults):
            g = [0] * len(self.orders)
            g[i] = mlt
            gens.append(tuple(g))
        return self.submodule_on(gens, orders)

    def submodule_on(self, gens, orders) -> "FiniteQuadraticModule":
        """Restriction of the forms to the subgroup with the given independent
        generators of the given orders (caller guarantees directness)."""
        bil = tuple(tuple(self.b(x, y) for y in gens) for x in gens)
        quad = tuple(self.q(x) for x in gens) if self.quadratic is not None else None
        lifts = None
        if self.lifts is not None:
            lifts = tuple(tuple(self.lift(x)) for x in gens)
        return FiniteQuadraticModule(tuple(orders), bil, quad, lifts)

    def is_nondegenerate(self) -> bool:
        elems = list(self.elements())
        z = self.zero()
        for x in elems:
            if x != z and all(self.b(x, y) == 0 for y in elems):
                return False
        return True

    def invariants(self) -> tuple:
        """Isometry-invariant fingerprint: value distribution of (order, q or b(x,x))."""
        counts: dict = {}
        for x in self.elements():
            key = (self.order(x), self.q(x) if self.is_even else self.b(x, x))
            counts[key] = counts.get(key, 0) + 1
        return tuple(sorted(counts.items()))


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


prime_factors = _prime_factors


def discriminant_module(L: IntegralLattice) -> FiniteQuadraticModule:
    """A_L = L^v / L via Smith normal form U G V = D: the columns of V D^-1
    are lifts of the cyclic generators."""
    G = L.matrix
    d, U, V = intmat.smith(G)
    gens, orders = [], []
    for i, di in enumerate(d):
        if di > 1:
            gens.append(tuple(Fraction(V[r][i], di) for r in range(L.rank)))
            orders.append(di)
    bil = tuple(tuple(_frac_mod(intmat.bilinear(G, x, y), 1) for y in gens) for x in gens)
    quad = None
    if L.is_even():
        quad = tuple(_frac_mod(intmat.bilinear(G, x, x), 2) for x in gens)
    return FiniteQuadraticModule(tuple(orders), bil, quad, tuple(gens))


def class_of(L: IntegralLattice, y) -> tuple[int, ...]:
    """Class in A_L of a vector y of L^v (rational L-coordinates).

    The form on A_L is nondegenerate, so the class is the unique element whose
    pairings with the generators agree with those of y."""
    A = L.discriminant
    if any(Fraction(c).denominator != 1 for c in intmat.matvec(L.matrix, y)):
        raise LatticeError("vector is not in the dual lattice")
    target = tuple(_frac_mod(intmat.bilinear(L.matrix, y, g), 1) for g in A.lifts)
    gens = [tuple(int(i == j) for j in range(len(A.orders))) for i in range(len(A.orders))]
    for x in A.elements():
        if tuple(A.b(x, g) for g in gens) == target:
            return tuple(x)
    raise AssertionError("pairing vector not realised in A_L")


def exponent(L: IntegralLattice) -> int:
    """D(L), the exponent of the discriminant group."""
    return L.discriminant.exponent


def divisor(L: IntegralLattice, l) -> int:
    if reduce(gcd, (abs(int(x)) for x in l), 0) != 1:
        raise LatticeError("vector is not primitive")
    return reduce(gcd, (abs(x) for x in intmat.matvec(L.matrix, l)), 0)


@dataclass(frozen=True)
class Complement:
    lattice: IntegralLattice
    basis: tuple[tuple[int, ...], ...]  # rows: coordinates in L


def orthogonal_complement(L: IntegralLattice, l) -> Complement:
    return _complement(L, tuple(int(x) for x in l))


@lru_cache(maxsize=1024)
def _complement(L: IntegralLattice, l: tuple[int, ...]) -> Complement:
    if reduce(gcd, (abs(int(x)) for x in l), 0) != 1:
        raise LatticeError("vector is not primitive")
    if L.norm(l) == 0:
        raise LatticeError("isotropic vector")
    row = intmat.matvec(L.matrix, l)
    B = intmat.kernel_basis(row)
    GB = [intmat.matvec(L.matrix, v) for v in B]
    gram = [[intmat.dot(u, gv) for gv in GB] for u in B]
    return Complement(IntegralLattice.from_gram(gram), tuple(tuple(b) for b in B))


def enumerate_vectors(L: IntegralLattice, norm: int, max_height: int = DEFAULT_MAX_HEIGHT,
                      limit: int | None = None) -> list[tuple[int, ...]]:
    """All coordinate vectors with |coords| <= max_height and the given norm."""
    if L.is_even() and norm % 2:
        return []
    G = L.matrix
    r = L.rank
    out = []
    rng = range(-max_height, max_height + 1)
    # depth-first with partial-norm bookkeeping is not sound for indefinite forms,
    # so iterate the box; the last coordinate is solved from a quadratic
    for head in itertools.product(rng, repeat=r - 1):
        # norm = a*x^2 + 2*b*x + c in the last coordinate x
        a = G[r - 1][r - 1]
        bcoef = sum(G[r - 1][j] * head[j] for j in range(r - 1))
        c = sum(head[i] * G[i][j] * head[j] for i in range(r - 1) for j in range(r - 1))
        for x in _solve_quadratic(a, 2 * bcoef, c - norm, max_height):
            out.append(tuple(head) + (x,))
            if limit is not None and len(out) >= limit:
                return out
    return out


def _solve_quadratic(a: int, b: int, c: int, h: int) -> list[int]:
    from math import isqrt
    if a == 0:
        if b == 0:
            return list(range(-h, h + 1)) if c == 0 else []
        if c % b == 0 and abs(c // b) <= h:
            return [-c // b]
        return []
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    s = isqrt(disc)
    if s * s != disc:
        return []
    sols = set()
    for num in (-b + s, -b - s):
        if num % (2 * a) == 0 and abs(num // (2 * a)) <= h:
            sols.add(num // (2 * a))
    return sorted(sols)


# -------------------------------------------------- rational sublattices

def _gram_of_basis(G, B) -> list[list[Fraction]]:
    return [[intmat.bilinear(G, u, v) for v in B] for u in B]


def _dual_basis(G, B) -> list[list[Fraction]]:
    """Rows: basis of the dual of the lattice with rows B (coords in L_Q).

    Dual vectors y satisfy (B G) y in Z^r, so they are the columns of (B G)^-1."""
    return intmat.transpose(intmat.inverse(intmat.matmul(B, G)))


def _sum_basis(*bases) -> list[list[Fraction]]:
    vecs = [v for B in bases for v in B]
    return intmat.rational_span_basis(vecs)


def _intersection_basis(G, A, B) -> list[list[Fraction]]:
    return _dual_basis(G, _sum_basis(_dual_basis(G, A), _dual_basis(G, B)))


def lattice_from_basis(G, B) -> IntegralLattice:
    gram = _gram_of_basis(G, B)
    for row in gram:
        for x in row:
            if Fraction(x).denominator != 1:
                raise LatticeError("basis does not span an integral lattice")
    return IntegralLattice.from_gram([[int(x) for x in row] for row in gram])


def overlattice_from_isotropic(L: IntegralLattice, generators) -> IntegralLattice:
    """Even overlattice L + span(lifts of the isotropic subgroup generated by `generators`)."""
    A = L.discriminant
    if not L.is_even():
        raise LatticeError("overlattice construction needs an even lattice")
    gens = [tuple(g) for g in generators]
    H = subgroup(A, gens)
    for x in H:
        if A.q(x) != 0:
            raise LatticeError("subgroup is not isotropic")
    if len(H) == 1:
        return L
    r = L.rank
    base = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    B = _sum_basis(base, [A.lift(g) for g in gens])
    Lp = lattice_from_basis(L.matrix, B)
    if abs(Lp.det) * len(H) ** 2 != abs(L.det):
        raise AssertionError("index formula violated")
    if not Lp.is_even():
        raise AssertionError("overlattice is not even")
    return Lp


def subgroup(A: FiniteQuadraticModule, gens) -> list[tuple[int, ...]]:
    seen = {A.zero()}
    frontier = [A.zero()]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = A.add(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return sorted(seen)


# ---------------------------------------------------------- overlattices

def find_overlattice_with_2U(L: IntegralLattice, max_group: int = DEFAULT_MAX_GROUP) -> IntegralLattice:
    """Even overlattice L' with D(L') = D(L) and l(A_L') <= n - 3, found by
    depth-first search over isotropic order-p elements, one prime at a time."""
    if not L.is_even():
        raise LatticeError("needs an even lattice")
    pos, neg = L.signature
    if pos != 2 or neg < 8:
        raise LatticeError("needs signature (2, n) with n >= 8")
    n = neg
    D = exponent(L)
    result = _search_overlattice(L, D, n - 3, max_group, depth=0)
    if result is None:
        raise LatticeError("no overlattice with 2U found within the search caps")
    A = result.discriminant
    assert A.exponent == D and A.length <= n - 3 and result.is_even()
    return result


def _search_overlattice(L, D, target_len, max_group, depth):
    A = L.discriminant
    if A.length <= target_len:
        return L
    if A.size > max_group ** 2 or depth > 64:
        return None
    # prime with the longest p-part
    p = max(A.primes(), key=lambda p: sum(1 for d in A.orders if d % p == 0))
    candidates = []
    for x in A.elements():
        if x == A.zero() or A.order(x) != p or A.q(x) != 0:
            continue
        candidates.append(x)
        if len(candidates) > max_group:
            break
    seen_inv = set()
    for x in candidates:
        Lp = overlattice_from_isotropic(L, [x])
        if exponent(Lp) != D:
            continue
        key = Lp.discriminant.invariants()
        if key in seen_inv:
            continue
        seen_inv.add(key)
        res = _search_overlattice(Lp, D, target_len, max_group, depth + 1)
        if res is not None:
            return res
    return None


def vinberg_reduce(L: IntegralLattice) -> IntegralLattice:
    """Canonical enlargement L_{i+1} = L_i + p^-1 (L_i cap p L_i^v) until every
    p-adic scale spread is <= 1, then L' = L_N cap a L_N^v flipping the larger
    block to scale 1; returned as a Gram matrix on a basis of L'."""
    G = [[Fraction(x) for x in row] for row in L.gram]
    r = L.rank
    B = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    primes = _prime_factors(abs(L.det))
    for p in primes:
        for _ in range(200):
            scales = _scales(G, B, p)
            if max(scales) - min(scales) <= 1:
                break
            dual = _dual_basis(G, B)
            inter = _intersection_basis(G, B, [[p * x for x in v] for v in dual])
            B = _sum_basis(B, [[x / p for x in v] for v in inter])
        else:
            raise AssertionError("reduction did not stabilise")
    a = 1
    for p in primes:
        scales = _scales(G, B, p)
        lo = min(scales)
        n_hi = sum(1 for s in scales if s > lo)
        if n_hi > r - n_hi:
            a *= p
    if a > 1:
        dual = _dual_basis(G, B)
        B = _intersection_basis(G, B, [[a * x for x in v] for v in dual])
    gram = _gram_of_basis(G, B)
    den = reduce(lcm, (Fraction(x).denominator for row in gram for x in row), 1)
    out = IntegralLattice.from_gram([[int(x * den) for x in row] for row in gram])
    return out


def _scales(G, B, p) -> list[int]:
    gram = _gram_of_basis(G, B)
    den = reduce(lcm, (Fraction(x).denominator for row in gram for x in row), 1)
    ints = [[int(x * den) for x in row] for row in gram]
    d, _, _ = intmat.smith(ints)
    vden = _val(den, p)
    return [_val(x, p) - vden for x in d]


def _val(x: int, p: int) -> int:
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def is_p_elementary_reduced(L: IntegralLattice) -> bool:
    """Every p-part of A_L is p-elementary of length <= n/2 + 1."""
    A = L.discriminant
    n = L.rank - 2
    for p in A.primes():
        Ap = A.p_part(p)
        if any(d != p for d in Ap.orders):
            return False
        if 2 * len(Ap.orders) > n + 2:
            return False
    return True


# ------------------------------------------------- orthogonal group of A

def orthogonal_group_of_module(A: FiniteQuadraticModule, max_group: int = DEFAULT_MAX_GROUP):
    """All automorphisms preserving q (even case) or b (odd case), as tuples of
    generator images."""
    if A.size > max_group:
        raise CapExceeded(f"|A| = {A.size} exceeds cap {max_group}")
    gens = []
    for i in range(len(A.orders)):
        g = [0] * len(A.orders)
        g[i] = 1
        gens.append(tuple(g))
    elems = list(A.elements())
    val = (lambda x: A.q(x)) if A.is_even else (lambda x: A.b(x, x))
    cands = []
    for g, d in zip(gens, A.orders):
        target = val(g)
        cands.append([x for x in elems if d % A.order(x) == 0 and val(x) == target])
    out = []

    def rec(i, imgs):
        if i == len(gens):
            out.append(tuple(imgs))
            if len(out) > 10 ** 6:
                raise CapExceeded("orthogonal group too large")
            return
        for x in cands[i]:
            if all(A.b(x, imgs[j]) == A.b(gens[i], gens[j]) for j in range(i)):
                rec(i + 1, imgs + [x])

    rec(0, [])
    return out


def apply_automorphism(A: FiniteQuadraticModule, images, x):
    out = A.zero()
    for a, img in zip(x, images):
        if a:
            out = A.add(out, A.mul(a, img))
    return out


def orbit(A: FiniteQuadraticModule, x, group=None) -> set:
    group = orthogonal_group_of_module(A) if group is None else group
    return {apply_automorphism(A, g, x) for g in group}
