"""Independent brute-force oracles.

Nothing here calls into the code paths it is used to check: evaluation
goes through Fractions digit by digit, subgroups through subset
enumeration, quotient orders through a Hermite-form coset walk.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd


def frac_mod1(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def dist0(q: Fraction) -> Fraction:
    q = frac_mod1(q)
    return min(q, 1 - q)


def padic_digit_oracle(p: int, digit, a: int, n: int, positions=None) -> Fraction:
    """a * h(1/p^n) with h(1/p^n) = sum_{k<n} h(k) / p^(n-k), reduced mod 1.

    positions, if given, lists every k that may carry a nonzero digit; the
    sum then skips the rest, which keeps n = 7! style exponents cheap.
    """
    ks = range(n) if positions is None else sorted(k for k in set(positions) if 0 <= k < n)
    one_over = sum((Fraction(digit(k), p ** (n - k)) for k in ks), Fraction(0))
    return frac_mod1(a * one_over)


def sum_character_oracle(members, coords: dict, order) -> Fraction:
    """Sum x(k) over k in the index set, with x(k) = coords[k] / order(k)."""
    total = Fraction(0)
    for k, c in coords.items():
        if k in members:
            total += Fraction(c, order(k))
    return frac_mod1(total)


def brute_subgroups(orders) -> list[frozenset]:
    """Every subset of Z(n_1) x ... containing 0 and closed under x - y."""
    elems = list(itertools.product(*(range(n) for n in orders)))
    zero = tuple(0 for _ in orders)
    rest = [e for e in elems if e != zero]
    out = []
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            S = frozenset((zero,) + combo)
            if all(tuple((a - b) % n for a, b, n in zip(x, y, orders)) in S for x in S for y in S):
                out.append(S)
    return out


def hermite_rows(M):
    """Row-style echelon basis of the row span, pivots positive, entries
    above each pivot reduced into [0, pivot)."""
    rows = [list(r) for r in M if any(r)]
    g = len(M[0]) if M else 0
    basis = []
    col = 0
    while rows and col < g:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(g):
                    r[j] -= q * piv[j]
            nz = [r for r in nz if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            piv[:] = [-v for v in piv]
        rows = [r for r in rows if r is not piv and any(r)]
        basis.append((col, piv))
        col += 1
    for i, (c, r) in enumerate(basis):
        for c2, r2 in basis[:i]:
            q = r2[c] // r[c]
            for j in range(g):
                r2[j] -= q * r[j]
    return basis


def quotient_order_oracle(M, cap: int = 512):
    """|Z^g / rowspan(M)| by walking cosets; None if infinite, 'big' if > cap."""
    g = len(M[0])
    basis = hermite_rows(M)
    if len(basis) < g:
        return None
    det = 1
    for c, r in basis:
        det *= r[c]
    if det > cap:
        return "big"

    def reduce(v):
        v = list(v)
        for c, r in basis:
            q = v[c] // r[c]
            if q:
                v = [a - q * b for a, b in zip(v, r)]
        return tuple(v)

    seen = {reduce([0] * g)}
    frontier = list(seen)
    units = [tuple(int(i == j) for j in range(g)) for i in range(g)]
    while frontier:
        nxt = []
        for v in frontier:
            for e in units:
                w = reduce([a + b for a, b in zip(v, e)])
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > cap:
                        return "big"
        frontier = nxt
    return len(seen)


def int_det(M) -> int:
    """Laplace expansion; only for small matrices."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * M[0][j] * int_det(minor)
    return total


def determinantal_invariants(M) -> list[int]:
    """Smith diagonal from gcds of k x k minors: s_k = d_k / d_{k-1}."""
    m, n = len(M), len(M[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        d = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                d = gcd(d, int_det([[M[i][j] for j in cols] for i in rows]))
        if d == 0:
            out.extend([0] * (min(m, n) - k + 1))
            break
        out.append(d // prev)
        prev = d
    return out


def frac_det(M) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    A = [[Fraction(v) for v in row] for row in M]
    n, det = len(A), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def quotient_cyclic_count(orders, H) -> int:
    """Number of cyclic factors of K/H: the largest p-rank, where the p-rank
    is log_p of the number of cosets killed by p."""
    elems = list(itertools.product(*(range(n) for n in orders)))
    H = frozenset(H)

    def coset(x):
        return frozenset(tuple((a + b) % n for a, b, n in zip(x, h, orders)) for h in H)

    cosets = {coset(x) for x in elems}
    size = len(cosets)
    best = 0
    for p in range(2, size + 1):
        if size % p or any(p % q == 0 for q in range(2, p)):
            continue
        killed = sum(1 for c in cosets if tuple((p * a) % n for a, n in zip(next(iter(c)), orders)) in H)
        r = 0
        while p ** (r + 1) <= killed:
            r += 1
        best = max(best, r)
    return best
