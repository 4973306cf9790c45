"""Finite and finitely generated abelian groups at desk scale.

Smith normal form, invariant factors and ranks, subgroup lattices,
quotient-preimage families, duality and character extension, all with
exact integers.  Enumerations are gated by a budget on the group order
(default 4096, raised through the TBTOP_BUDGET environment variable).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .circle import ZERO, CirclePoint, normalize
from .elements import is_prime

Matrix = list[list[int]]


class BudgetExceeded(RuntimeError):
    pass


class NotAHomomorphism(ValueError):
    pass


def budget() -> int:
    return int(os.environ.get("TBTOP_BUDGET", "4096"))


def _check_budget(size: int, limit: Optional[int] = None) -> None:
    limit = budget() if limit is None else limit
    if size > limit:
        raise BudgetExceeded(f"group of order {size} exceeds enumeration budget {limit}")


# --- Smith normal form ------------------------------------------------------


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U*M*V = D, U and V unimodular, D diagonal,
    d_1 | d_2 | ... and every d_i >= 0.

    Pivot: the nonzero entry of least absolute value in the active block;
    rows and columns are swept by gcd reduction until the pivot divides
    everything left in the block.
    """
    A = [[int(a) for a in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-u for u in U[t]]
    return U, A, V


def diagonal(D: Matrix) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# --- presentations and invariant factors ------------------------------------


@dataclass(frozen=True)
class FiniteAbelianPresentation:
    """Z^g modulo the row span of an integer relation matrix."""

    rank: int
    relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(a) for a in row) for row in self.relations)
        if any(len(row) != self.rank for row in rows):
            raise ValueError("every relation needs one entry per generator")
        object.__setattr__(self, "relations", rows)

    @classmethod
    def from_matrix(cls, M: Sequence[Sequence[int]]) -> FiniteAbelianPresentation:
        if not M:
            raise ValueError("empty matrix; give the rank explicitly")
        return cls(len(M[0]), tuple(tuple(r) for r in M))


@dataclass(frozen=True)
class InvariantFactors:
    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        t = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in t):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"{t} is not a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def of_orders(cls, orders: Iterable[int]) -> InvariantFactors:
        """Canonical factors of a direct product of cyclic groups Z(n_i)."""
        orders = [int(n) for n in orders]
        if not orders:
            return cls()
        M = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
        return quotient_decomposition(FiniteAbelianPresentation.from_matrix(M))

    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_json(self) -> dict:
        return {"torsion": [str(d) for d in self.torsion], "free_rank": self.free_rank}


def quotient_decomposition(pres: FiniteAbelianPresentation) -> InvariantFactors:
    g = pres.rank
    if not pres.relations:
        return InvariantFactors((), g)
    _, D, _ = smith_normal_form(pres.relations)
    diag = diagonal(D)
    zeros = sum(1 for d in diag if d == 0) + max(0, g - len(diag))
    return InvariantFactors(tuple(d for d in diag if d > 1), zeros)


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class Ranks:
    r0: int
    rp: dict
    r_total: int

    def to_json(self) -> dict:
        return {"r0": self.r0, "rp": {str(p): c for p, c in sorted(self.rp.items())}, "r_total": self.r_total}


def ranks(f) -> Ranks:
    """Torsion-free rank, p-ranks and total rank.

    Accepts InvariantFactors or any list of cyclic orders: r_p counts the
    cyclic factors whose order is divisible by p, which does not depend on
    the chosen cyclic decomposition.
    """
    if isinstance(f, InvariantFactors):
        orders, r0 = list(f.torsion), f.free_rank
    else:
        orders, r0 = [int(d) for d in f if int(d) > 1], 0
    rp: dict[int, int] = {}
    for d in orders:
        for p in _prime_factors(d):
            rp[p] = rp.get(p, 0) + 1
    return Ranks(r0, rp, r0 + sum(rp.values()))


def p_component(f, p: int) -> InvariantFactors:
    """Invariant factors of the p-primary part G_p of a finite group."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    orders = list(f.torsion) if isinstance(f, InvariantFactors) else list(f)
    if isinstance(f, InvariantFactors) and f.free_rank:
        raise ValueError("p_component expects a finite group")
    parts = []
    for d in orders:
        q = 1
        while d % p == 0:
            d //= p
            q *= p
        if q > 1:
            parts.append(q)
    return InvariantFactors(tuple(sorted(parts)))


# --- finite groups and subgroups --------------------------------------------


Element = tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z(n_1) x ... x Z(n_t) with elements as coordinate tuples."""

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        o = tuple(int(n) for n in self.orders)
        if any(n < 1 for n in o):
            raise ValueError("cyclic orders must be positive")
        object.__setattr__(self, "orders", o)

    @classmethod
    def of(cls, *orders: int) -> FiniteAbelianGroup:
        return cls(tuple(orders))

    @property
    def size(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    def zero(self) -> Element:
        return tuple(0 for _ in self.orders)

    def elements(self, limit: Optional[int] = None) -> list[Element]:
        _check_budget(self.size, limit)
        return list(itertools.product(*(range(n) for n in self.orders)))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def scale(self, m: int, x: Element) -> Element:
        return tuple((m * a) % n for a, n in zip(x, self.orders))

    def reduce(self, x: Sequence[int]) -> Element:
        return tuple(int(a) % n for a, n in zip(x, self.orders))

    def invariants(self) -> InvariantFactors:
        return InvariantFactors.of_orders(self.orders)


def closure(G: FiniteAbelianGroup, gens: Iterable[Element]) -> frozenset:
    """The subgroup generated by gens."""
    elems = {G.zero()}
    for g in gens:
        g = G.reduce(g)
        if g in elems:
            continue
        multiples = [G.zero()]
        cur = g
        while cur != G.zero():
            multiples.append(cur)
            cur = G.add(cur, g)
        elems = {G.add(s, k) for s in elems for k in multiples}
    return frozenset(elems)


def canonical_generators(G: FiniteAbelianGroup, elems: frozenset) -> list[Element]:
    """Greedy generating list: scan elements in lexicographic order and keep
    those not already generated.  Equal subgroups give equal lists."""
    gens: list[Element] = []
    span = frozenset({G.zero()})
    for x in sorted(elems):
        if x not in span:
            gens.append(x)
            span = closure(G, gens)
            if len(span) == len(elems):
                break
    return gens


@dataclass(frozen=True)
class Subgroup:
    group: FiniteAbelianGroup
    elements: frozenset

    @classmethod
    def generated(cls, G: FiniteAbelianGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
        return cls(G, closure(G, [G.reduce(g) for g in gens]))

    @classmethod
    def trivial(cls, G: FiniteAbelianGroup) -> Subgroup:
        return cls(G, frozenset({G.zero()}))

    @property
    def order(self) -> int:
        return len(self.elements)

    def generators(self) -> list[Element]:
        return canonical_generators(self.group, self.elements)

    def is_subgroup(self) -> bool:
        G = self.group
        return G.zero() in self.elements and all(
            G.add(x, G.scale(-1, y)) in self.elements for x in self.elements for y in self.elements)

    def __le__(self, other: Subgroup) -> bool:
        return self.elements <= other.elements

    def sort_key(self):
        return (len(self.elements), sorted(self.elements))

    def to_json(self) -> dict:
        return {"order": self.order, "generators": [list(g) for g in self.generators()]}


def enumerate_intermediate_subgroups(K: FiniteAbelianGroup, H: Subgroup,
                                     limit: Optional[int] = None) -> list[Subgroup]:
    """All S with H <= S < K (proper), in order of size then elements."""
    _check_budget(K.size, limit)
    elems = K.elements(limit)
    start = closure(K, H.elements)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for g in elems:
                if g in S:
                    continue
                T = _extend(K, S, g)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    out = [Subgroup(K, S) for S in seen if len(S) < K.size]
    return sorted(out, key=Subgroup.sort_key)


def _extend(K: FiniteAbelianGroup, S: frozenset, g: Element) -> frozenset:
    multiples = [K.zero()]
    cur = g
    while cur not in S:
        multiples.append(cur)
        cur = K.add(cur, g)
    return frozenset(K.add(s, k) for s in S for k in multiples)


# --- quotient-preimage family -----------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Projection K -> K/H = Z(f_1) x ... x Z(f_t) from a Smith normal form."""

    group: FiniteAbelianGroup
    V: tuple[tuple[int, ...], ...]
    positions: tuple[int, ...]   # columns of V giving nontrivial factors
    factors: tuple[int, ...]

    def __call__(self, x: Element) -> Element:
        return tuple(sum(x[i] * self.V[i][j] for i in range(len(x))) % d
                     for j, d in zip(self.positions, self.factors))


def quotient_map(K: FiniteAbelianGroup, H: Subgroup) -> QuotientMap:
    g = len(K.orders)
    rows = [[K.orders[i] if i == j else 0 for j in range(g)] for i in range(g)]
    rows += [list(h) for h in H.generators()]
    _, D, V = smith_normal_form(rows)
    diag = diagonal(D)
    positions = tuple(j for j, d in enumerate(diag) if d > 1)
    return QuotientMap(K, tuple(tuple(r) for r in V), positions, tuple(diag[j] for j in positions))


@dataclass(frozen=True)
class Thm17Member:
    index_set: tuple[int, ...]
    subgroup: Subgroup

    def to_json(self) -> dict:
        return {"A": list(self.index_set), **self.subgroup.to_json()}


def thm17_injection(K: FiniteAbelianGroup, H: Subgroup,
                    limit: Optional[int] = None) -> list[Thm17Member]:
    """H_A = preimage of the sub-sum over A of the cyclic factors of K/H,
    for every proper subset A of the factor indices."""
    elems = K.elements(limit)
    phi = quotient_map(K, H)
    t = len(phi.factors)
    if t < 1:
        raise ValueError("K/H is trivial; there are no cyclic factors")
    images = {x: phi(x) for x in elems}
    kernel = frozenset(x for x, y in images.items() if not any(y))
    if kernel != closure(K, H.elements):
        raise AssertionError("projection kernel differs from H")
    members = []
    for mask in range(2**t - 1):
        A = tuple(i for i in range(t) if mask >> i & 1)
        S = frozenset(x for x, y in images.items() if all(y[i] == 0 for i in range(t) if i not in A))
        members.append(Thm17Member(A, Subgroup(K, S)))
    subs = [m.subgroup.elements for m in members]
    if len(set(subs)) != len(subs):
        raise AssertionError("H_A family is not injective")
    for m in members:
        S = m.subgroup
        if not (H.elements <= S.elements and S.order < K.size and S.is_subgroup()):
            raise AssertionError(f"H_{m.index_set} is not a proper subgroup containing H")
    return members


# --- duality ----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteCharacter:
    """x -> sum_i c_i x_i / n_i on Z(n_1) x ... x Z(n_t)."""

    group: FiniteAbelianGroup
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", self.group.reduce(self.coeffs))

    def __call__(self, x: Sequence[int]) -> CirclePoint:
        acc = ZERO
        for c, a, n in zip(self.coeffs, x, self.group.orders):
            acc = acc + normalize(c * a, n)
        return acc

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "orders": list(self.group.orders)}


def dual_group(f: InvariantFactors) -> InvariantFactors:
    if f.free_rank:
        raise ValueError("dual_group handles finite groups only")
    # characters x -> c.x/d form a group with the same invariant factors
    return InvariantFactors(f.torsion, 0)


def character_basis(G: FiniteAbelianGroup) -> list[FiniteCharacter]:
    """chi_i sends the i-th generator to 1/n_i and the others to 0."""
    t = len(G.orders)
    return [FiniteCharacter(G, tuple(int(i == j) for j in range(t))) for i in range(t)]


def pairing_matrix(G: FiniteAbelianGroup, chars: Sequence[FiniteCharacter]) -> list[list[CirclePoint]]:
    t = len(G.orders)
    gens = [tuple(int(i == j) for j in range(t)) for i in range(t)]
    return [[chi(g) for g in gens] for chi in chars]


@dataclass(frozen=True)
class DensityCheck:
    separates: bool
    equals_dual: bool


def separation_is_density_check(G: FiniteAbelianGroup, H: Sequence[FiniteCharacter],
                                limit: Optional[int] = None) -> DensityCheck:
    """For finite G: H separates points iff H generates the whole dual."""
    elems = G.elements(limit)
    # pairwise check: x != y are separated iff their value vectors differ
    vectors = {tuple(chi(x) for chi in H) for x in elems}
    separates = len(vectors) == len(elems)
    generated = closure(G, [chi.coeffs for chi in H])
    equals_dual = len(generated) == G.size
    if separates != equals_dual:
        raise AssertionError("separation and density disagree on a finite group")
    return DensityCheck(separates, equals_dual)


def _restriction_table(G: FiniteAbelianGroup, gens: Sequence[Element],
                       values: Sequence[CirclePoint]) -> dict:
    """Extend generator values additively over <gens>; fail on a conflict."""
    table = {G.zero(): ZERO}
    frontier = [G.zero()]
    while frontier:
        nxt = []
        for s in frontier:
            for g, v in zip(gens, values):
                y, w = G.add(s, g), table[s] + v
                if y in table:
                    if table[y] != w:
                        raise NotAHomomorphism(f"values conflict at {y}")
                else:
                    table[y] = w
                    nxt.append(y)
        frontier = nxt
    return table


def character_lifts(G: FiniteAbelianGroup, gens: Sequence[Sequence[int]],
                    values: Sequence[CirclePoint], limit: Optional[int] = None):
    """Every character of G agreeing with the given values on gens,
    in lexicographic order of coefficient vectors."""
    gens = [G.reduce(g) for g in gens]
    _restriction_table(G, gens, values)
    _check_budget(G.size, limit)
    for c in itertools.product(*(range(n) for n in G.orders)):
        k = FiniteCharacter(G, c)
        if all(k(g) == v for g, v in zip(gens, values)):
            yield k


def extend_character(G: FiniteAbelianGroup, gens: Sequence[Sequence[int]],
                     values: Sequence[CirclePoint], limit: Optional[int] = None) -> FiniteCharacter:
    """Least lift (lexicographic in the coefficient vector) of a character
    of A = <gens> given by its values on gens."""
    for k in character_lifts(G, gens, values, limit):
        return k
    raise AssertionError("no lift found; T is divisible so one must exist")
