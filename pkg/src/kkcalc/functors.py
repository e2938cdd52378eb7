"""Hom, Ext, Tor and tensor products of finitely generated abelian groups.

Each bifunctor is computed on pairs of cyclic summands and then assembled
into canonical form.  For canonical generators ``g_i`` of order ``m_i`` in
the first argument and ``h_j`` of order ``n_j`` in the second (0 = infinite):

* ``tensor``: ``g_i (x) h_j`` of order ``gcd(m_i, n_j)``;
* ``tor``:    ``Tor(Z/m, H) = ker(m: H -> H)``, generator ``n_j / g`` in ``h_j``'s summand;
* ``hom``:    the map ``g_i -> (n_j / g) h_j``;
* ``ext``:    ``Ext(Z/m, H) = H / mH``, generator the class of ``h_j``,

where ``g = gcd(m_i, n_j)``.  Results keep this "pair basis" next to the
canonical form so that induced maps can be written down exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from kkcalc.errors import HypothesisViolation, IllFormedMap
from kkcalc.groups import Element, FgaGroup, GroupMap, Presentation, present
from kkcalc.matrix import IntMatrix

FUNCTORS = ("hom", "ext", "tor", "tensor", "pext")
CONTRAVARIANT_LEFT = ("hom", "ext", "pext")


def _pair_order(functor: str, m: int, n: int) -> int:
    if functor == "tensor":
        return gcd(m, n)
    if functor == "tor":
        return gcd(m, n) if m and n else 1
    if functor == "hom":
        if n == 0:
            return 0 if m == 0 else 1
        return gcd(m, n)
    if functor == "ext":
        return gcd(m, n) if m else 1
    if functor == "pext":
        return 1
    raise ValueError(f"unknown functor {functor!r}")


def _anchor(m: int, n: int) -> int:
    """Coordinate in ``Z/n`` (or ``Z``) of the Hom/Tor pair generator."""
    return n // gcd(m, n) if n else 1


@dataclass(frozen=True)
class BifunctorResult:
    """Value of a bifunctor with the bookkeeping needed for induced maps.

    ``pairs[p] = (i, j)`` indexes the pair basis; ``to_canonical`` and
    ``from_canonical`` convert between pair coordinates and canonical
    coordinates of ``value``.
    """

    functor: str
    left: FgaGroup
    right: FgaGroup
    value: FgaGroup
    pairs: tuple[tuple[int, int], ...]
    orders: tuple[int, ...]
    to_canonical: IntMatrix
    from_canonical: IntMatrix
    note: str = ""

    @property
    def fingerprint(self) -> tuple[str, str, str]:
        return (self.functor, str(self.left), str(self.right))

    def pair_coordinates(self, x) -> tuple[int, ...]:
        return self.from_canonical.apply(self.value.normalize(x))

    def from_pair_coordinates(self, w) -> Element:
        return self.value.normalize(self.to_canonical.apply(w))


@lru_cache(maxsize=4096)
def bifunctor(functor: str, G: FgaGroup, H: FgaGroup) -> BifunctorResult:
    """``functor(G, H)`` for functor in hom, ext, tor, tensor, pext."""
    if functor not in FUNCTORS:
        raise ValueError(f"unknown functor {functor!r}")
    pairs = tuple(itertools.product(range(G.ngens), range(H.ngens)))
    orders = tuple(_pair_order(functor, G.moduli[i], H.moduli[j]) for i, j in pairs)
    pg = present(Presentation(len(pairs), IntMatrix.diagonal(orders)))
    note = ""
    if functor == "pext":
        note = ("Pext vanishes for a finitely generated first argument: it is the closure of "
                "zero in KK, so the Hausdorff quotient is the whole group")
        if G.is_free:
            note += "; first argument torsionfree, so Pext = Ext = 0"
    return BifunctorResult(functor, G, H, pg.group, pairs, orders,
                           pg.to_canonical, pg.from_canonical, note)


def tensor(G: FgaGroup, H: FgaGroup) -> FgaGroup:
    return bifunctor("tensor", G, H).value


def tor(G: FgaGroup, H: FgaGroup) -> FgaGroup:
    return bifunctor("tor", G, H).value


def hom(G: FgaGroup, H: FgaGroup) -> FgaGroup:
    return bifunctor("hom", G, H).value


def ext(G: FgaGroup, H: FgaGroup) -> FgaGroup:
    return bifunctor("ext", G, H).value


def pext(G: FgaGroup, H: FgaGroup) -> FgaGroup:
    """Always 0 on finitely generated groups; see ``bifunctor("pext", ...).note``."""
    return bifunctor("pext", G, H).value


def _pair_matrix(functor, slot, f, src: BifunctorResult, tgt: BifunctorResult) -> IntMatrix:
    A = f.matrix
    tidx = {pq: r for r, pq in enumerate(tgt.pairs)}
    rows = [[0] * len(src.pairs) for _ in tgt.pairs]
    for c, (i, j) in enumerate(src.pairs):
        if src.orders[c] == 1:
            continue
        if slot == "right":
            # covariant: f acts on the second argument; (i, j) -> (i, l)
            m = src.left.moduli[i]
            n = src.right.moduli[j]
            for l in range(f.codomain.ngens):
                r = tidx[(i, l)]
                if tgt.orders[r] == 1 or A[l, j] == 0:
                    continue
                n2 = f.codomain.moduli[l]
                if functor in ("tensor", "ext"):
                    coef = A[l, j]
                else:  # hom, tor: image of the anchor divided by the target anchor
                    y = A[l, j] * _anchor(m, n)
                    if n2:
                        y %= n2
                    coef = y // _anchor(m, n2)
                rows[r][c] += coef
        elif functor == "tensor" or functor == "tor":
            # covariant in the first argument: (i, j) -> (k, j)
            m = src.left.moduli[i]
            n = src.right.moduli[j]
            for k in range(f.codomain.ngens):
                r = tidx[(k, j)]
                if tgt.orders[r] == 1 or A[k, i] == 0:
                    continue
                if functor == "tensor":
                    coef = A[k, i]
                else:
                    m2 = f.codomain.moduli[k]
                    y = (A[k, i] * m // m2) * _anchor(m, n) % n
                    coef = y // _anchor(m2, n)
                rows[r][c] += coef
        else:
            # contravariant in the first argument: src pair (k, j) of F(G', H)
            # goes to (i, j) of F(G, H) where f: G -> G'
            k = i
            m2 = src.left.moduli[k]
            n = src.right.moduli[j]
            for i2 in range(f.domain.ngens):
                r = tidx[(i2, j)]
                if tgt.orders[r] == 1 or A[k, i2] == 0:
                    continue
                m = f.domain.moduli[i2]
                if functor == "ext":
                    coef = A[k, i2] * m // m2
                else:
                    y = A[k, i2] * _anchor(m2, n)
                    if n:
                        y %= n
                    coef = y // _anchor(m, n)
                rows[r][c] += coef
    return IntMatrix.from_rows(rows, len(src.pairs))


def induced_map(functor: str, f: GroupMap, other: FgaGroup, slot: str = "left") -> GroupMap:
    """The map ``functor(f, other)`` (slot "left") or ``functor(other, f)`` (slot "right").

    Hom, Ext and Pext are contravariant in the left slot; every other
    combination is covariant.
    """
    if slot not in ("left", "right"):
        raise ValueError("slot must be 'left' or 'right'")
    if not isinstance(f, GroupMap):
        raise IllFormedMap("induced_map needs a GroupMap")
    if slot == "right":
        src = bifunctor(functor, other, f.domain)
        tgt = bifunctor(functor, other, f.codomain)
    elif functor in CONTRAVARIANT_LEFT:
        src = bifunctor(functor, f.codomain, other)
        tgt = bifunctor(functor, f.domain, other)
    else:
        src = bifunctor(functor, f.domain, other)
        tgt = bifunctor(functor, f.codomain, other)
    if functor == "pext":
        return GroupMap.zero(src.value, tgt.value)
    P = _pair_matrix(functor, slot, f, src, tgt)
    return GroupMap(src.value, tgt.value, tgt.to_canonical @ P @ src.from_canonical)


def hom_element_to_map(result: BifunctorResult, x) -> GroupMap:
    """The homomorphism ``left -> right`` represented by ``x`` in ``Hom(left, right)``."""
    if result.functor != "hom":
        raise ValueError("not a Hom group")
    G, H = result.left, result.right
    w = result.pair_coordinates(x)
    M = [[0] * G.ngens for _ in range(H.ngens)]
    for (i, j), c in zip(result.pairs, w):
        M[j][i] += c * _anchor(G.moduli[i], H.moduli[j])
    return GroupMap(G, H, IntMatrix.from_rows(M, G.ngens))


def map_to_hom_element(result: BifunctorResult, f: GroupMap) -> Element:
    """Coordinates of ``f`` in ``Hom(f.domain, f.codomain)``."""
    if result.functor != "hom" or (f.domain, f.codomain) != (result.left, result.right):
        raise ValueError("map does not belong to this Hom group")
    G, H = result.left, result.right
    w = []
    for (i, j), o in zip(result.pairs, result.orders):
        if o == 1:
            w.append(0)
            continue
        a = _anchor(G.moduli[i], H.moduli[j])
        w.append(f.matrix[j, i] // a)
    return result.from_pair_coordinates(w)


# ---------------------------------------------------------------- symbolic targets


@dataclass(frozen=True)
class SymbolicCodomain:
    """``(Q/Z)^power`` (kind "QZ") or ``R^power`` (kind "R"); Hom targets only."""

    kind: str
    power: int = 1

    def __post_init__(self):
        if self.kind not in ("QZ", "R"):
            raise ValueError("symbolic codomain must be 'QZ' or 'R'")
        if self.power < 0:
            raise ValueError("power must be nonnegative")

    def __str__(self):
        base = "Q/Z" if self.kind == "QZ" else "R"
        return base if self.power == 1 else f"({base})^{self.power}"


@dataclass(frozen=True)
class SymbolicAnswer:
    """``finite + (Q/Z)^qz_power + R^real_power`` for Hom groups that are not f.g."""

    finite: FgaGroup
    qz_power: int = 0
    real_power: int = 0

    def __str__(self):
        parts = [] if self.finite.is_trivial else [str(self.finite)]
        if self.qz_power:
            parts.append("Q/Z" if self.qz_power == 1 else f"(Q/Z)^{self.qz_power}")
        if self.real_power:
            parts.append("R" if self.real_power == 1 else f"R^{self.real_power}")
        return " + ".join(parts) if parts else "0"


def characters(G: FgaGroup) -> list[tuple[Fraction, ...]]:
    """Generators of ``Hom(G_tors, Q/Z)`` as value tuples on G's torsion generators.

    Character ``i`` sends torsion generator ``i`` to ``1/d_i`` and the others to 0.
    """
    k = len(G.torsion)
    return [tuple(Fraction(1, d) if a == i else Fraction(0) for a in range(k))
            for i, d in enumerate(G.torsion)]


def _character_orders(G: FgaGroup) -> list[int]:
    out = []
    for chi in characters(G):
        o = 1
        for v in chi:
            o = o * v.denominator // gcd(o, v.denominator)
        out.append(o)
    return out


def hom_symbolic(G: FgaGroup, C: SymbolicCodomain) -> FgaGroup | SymbolicAnswer:
    """``Hom(G, (Q/Z)^r)`` or ``Hom(G, R^s)``, exact where finite."""
    if C.kind == "R":
        if G.free_rank == 0 or C.power == 0:
            return FgaGroup()
        return SymbolicAnswer(FgaGroup(), 0, C.power * G.free_rank)
    finite = FgaGroup.from_orders(_character_orders(G) * C.power)
    if G.free_rank and C.power:
        return SymbolicAnswer(finite, G.free_rank * C.power, 0)
    return finite


def pontryagin_dual(G: FgaGroup) -> FgaGroup:
    """``X(G) = Hom(G, Q/Z)`` for a finite group ``G``."""
    if G.free_rank:
        raise HypothesisViolation(
            f"Pontryagin dual is only computed for finite groups; {G} has free rank {G.free_rank}",
            hypothesis="torsion", witness=G.generators()[0])
    out = hom_symbolic(G, SymbolicCodomain("QZ", 1))
    assert isinstance(out, FgaGroup)
    return out


def dual_map(f: GroupMap) -> GroupMap:
    """``X(f): X(codomain) -> X(domain)``, precomposition with ``f``."""
    G, H = f.domain, f.codomain
    XG, XH = pontryagin_dual(G), pontryagin_dual(H)
    # X(G) in character coordinates is the presentation diag(d_i); convert to canonical
    pG = present(Presentation(len(G.torsion), IntMatrix.diagonal(list(G.torsion))))
    pH = present(Presentation(len(H.torsion), IntMatrix.diagonal(list(H.torsion))))
    cols = []
    for k, chi in enumerate(characters(H)):
        # (chi o f)(g_i) = sum_k' chi(f(g_i)) = A[k, i] / e_k
        vals = [Fraction(f.matrix[k, i], H.torsion[k]) for i in range(G.ngens)]
        cols.append([int((v * d) % d) for v, d in zip(vals, G.torsion)])
    P = IntMatrix.from_columns(cols, len(G.torsion)) if cols else IntMatrix.zeros(len(G.torsion), 0)
    assert pG.group == XG and pH.group == XH
    return GroupMap(XH, XG, pG.to_canonical @ P @ pH.from_canonical)
