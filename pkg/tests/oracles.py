"""Brute-force reference computations, written without any kkcalc algorithm.

Finite groups are explicit sets of elements; isomorphism types come from
counting ``|G[p^k]|`` (elements killed by ``p^k``) rather than from any
matrix reduction.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import prod
from typing import Callable, Hashable, Iterable


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def invariants_from_counts(order: int, killed_by: Callable[[int], int]) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group from ``n -> |G[n]|``.

    For each prime, ``log_p |G[p^k]| / |G[p^(k-1)]|`` counts the cyclic
    p-power factors of order at least ``p^k``.
    """
    elementary: list[list[int]] = []
    for p in prime_factors(order):
        prev, k, counts = 1, 0, []
        target = 1
        m = order
        while m % p == 0:
            target *= p
            m //= p
        while prev < target:
            k += 1
            cur = killed_by(p ** k)
            r, q = 0, cur // prev
            while q > 1:
                q //= p
                r += 1
            counts.append(r)
            prev = cur
        # counts[k-1] = number of factors of order >= p^k
        exps = []
        for k in range(len(counts), 0, -1):
            ge = counts[k - 1]
            gt = counts[k] if k < len(counts) else 0
            exps.extend([k] * (ge - gt))
        elementary.append(sorted((p ** e for e in exps), reverse=True))
    width = max((len(e) for e in elementary), default=0)
    factors = []
    for i in range(width):
        factors.append(prod(e[i] for e in elementary if i < len(e)))
    return tuple(sorted(factors))


class FiniteGroup:
    """Explicit finite abelian group: a list of hashable elements with addition."""

    def __init__(self, elements: Iterable[Hashable], add: Callable, zero: Hashable):
        self.elements = list(dict.fromkeys(elements))
        self.add = add
        self.zero = zero

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, k: int, x):
        out = self.zero
        for _ in range(k):
            out = self.add(out, x)
        return out

    def killed_by(self, n: int) -> int:
        return sum(1 for x in self.elements if self.mul(n, x) == self.zero)

    def invariants(self) -> tuple[int, ...]:
        return invariants_from_counts(self.order, self.killed_by)


def product_group(moduli: tuple[int, ...]) -> FiniteGroup:
    """``Z/n_1 x ... x Z/n_k`` as tuples."""
    elems = list(itertools.product(*(range(n) for n in moduli)))
    add = lambda x, y: tuple((a + b) % n for a, b, n in zip(x, y, moduli))
    return FiniteGroup(elems, add, tuple(0 for _ in moduli))


def quotient(G: FiniteGroup, H: set) -> FiniteGroup:
    """``G / H`` with cosets as frozensets."""
    def coset(x):
        return frozenset(G.add(x, h) for h in H)
    cosets = {coset(x) for x in G.elements}
    rep = {c: next(iter(c)) for c in cosets}
    add = lambda c, d: coset(G.add(rep[c], rep[d]))
    return FiniteGroup(sorted(cosets, key=lambda c: sorted(c)), add, coset(G.zero))


# ---------------------------------------------------------------- cyclic bifunctors

WINDOW = 60  # search window used for infinite cyclic targets


def _kill_set(G: FiniteGroup, d: int) -> set:
    return {x for x in G.elements if G.mul(d, x) == G.zero}


def _multiples(G: FiniteGroup, d: int) -> set:
    return {G.mul(d, x) for x in G.elements}


def cyclic_functor(functor: str, d: int, e: int) -> tuple[int, tuple[int, ...]]:
    """``(free_rank, invariant factors)`` of ``F(Z/d, Z/e)``; 0 stands for ``Z``.

    Hom enumerates images of the generator; tensor and Ext are ``H / dH``,
    Tor is ``H[d]``, all read off the resolution ``0 -> Z -d-> Z -> Z/d -> 0``.
    """
    if d == 0:
        # free first argument: F(Z, H) = H for Hom and tensor, 0 for Tor and Ext
        if functor in ("tor", "ext"):
            return (0, ())
        return (1, ()) if e == 0 else (0, product_group((e,)).invariants())
    if e == 0:
        if functor == "hom":
            # d x = 0 in Z forces x = 0
            assert [x for x in range(-WINDOW, WINDOW + 1) if d * x == 0] == [0]
            return (0, ())
        if functor == "tor":
            return (0, ())
        # Z / dZ, enumerated as residues of a window
        Zd = FiniteGroup(sorted({x % d for x in range(-WINDOW, WINDOW)}),
                         lambda a, b: (a + b) % d, 0)
        return (0, Zd.invariants())
    H = product_group((e,))
    if functor == "hom":
        images = sorted(x for x in H.elements if H.mul(d, x) == H.zero)
        homs = FiniteGroup(images, H.add, H.zero)
        return (0, homs.invariants())
    if functor == "tor":
        return (0, FiniteGroup(sorted(_kill_set(H, d)), H.add, H.zero).invariants())
    return (0, quotient(H, _multiples(H, d)).invariants())


# ---------------------------------------------------------------- finite products


def hom_finite(src: tuple[int, ...], tgt: tuple[int, ...]) -> tuple[int, ...]:
    """``Hom`` between finite products by listing every assignment of generator images."""
    H = product_group(tgt)
    allowed = [[y for y in H.elements if H.mul(n, y) == H.zero] for n in src]
    maps = list(itertools.product(*allowed))
    add = lambda f, g: tuple(H.add(a, b) for a, b in zip(f, g))
    return FiniteGroup(maps, add, tuple(H.zero for _ in src)).invariants()


def tensor_finite(src: tuple[int, ...], tgt: tuple[int, ...]) -> tuple[int, ...]:
    """``(+)_i Z/n_i (x) H`` as ``(+)_i H / n_i H``."""
    H = product_group(tgt)
    parts = [quotient(H, _multiples(H, n)).invariants() for n in src]
    return _sum_invariants(parts)


def _sum_invariants(parts) -> tuple[int, ...]:
    moduli = tuple(d for p in parts for d in p)
    return product_group(moduli).invariants() if moduli else ()


def snf_ok(A, U, D, V) -> bool:
    """``U A V == D`` with ``D`` diagonal and its diagonal a divisibility chain."""
    def mm(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(len(Y))) for j in range(len(Y[0]) if Y else 0)]
                for i in range(len(X))]
    m, n = len(A), len(A[0]) if A else 0
    if m == 0 or n == 0:
        return True
    if mm(mm(U, A), V) != D:
        return False
    diag = []
    for i in range(m):
        for j in range(n):
            if i != j and D[i][j]:
                return False
        if i < n:
            diag.append(D[i][i])
    nz = [x for x in diag if x]
    if any(x < 0 for x in diag) or diag[: len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def det(M) -> int:
    """Integer determinant by elimination over the rationals."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    sign, out = 1, Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        out *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return int(sign * out)



# ---------------------------------------------------------------- snake lemma


def exact_by_enumeration(f, g) -> bool:
    """``im f == ker g`` for maps between finite groups, by listing elements."""
    im = {f(x) for x in f.domain.elements()}
    ker = {y for y in g.domain.elements() if not any(g(y))}
    return im == ker


def chase(ladder, result) -> bool:
    """Compare the connecting map of ``result`` with a brute-force element chase.

    For each ``x`` in ``ker gamma``: pick any ``b`` with ``g(b) = x``, any
    ``a'`` with ``f2(a') = beta(b)``; the coset ``a' + im alpha`` must be
    exactly the fibre of the cokernel projection over ``delta(x)``.
    """
    l = ladder
    ia, ib, ic = result.ker_inclusions
    pa = result.coker_projections[0]
    B, Ap = l.g.domain, l.f2.domain
    ker_gamma = {c for c in l.gamma.domain.elements() if not any(l.gamma(c))}
    if {ic(k) for k in ic.domain.elements()} != ker_gamma:
        return False
    im_alpha = {l.alpha(a) for a in l.alpha.domain.elements()}
    for k in ic.domain.elements():
        x = ic(k)
        b = next(b for b in B.elements() if l.g(b) == x)
        a2 = next(a for a in Ap.elements() if l.f2(a) == l.beta(b))
        coset = {Ap.add(a2, s) for s in im_alpha}
        fibre = {a for a in Ap.elements() if pa(a) == result.delta(k)}
        if coset != fibre:
            return False
    return True
