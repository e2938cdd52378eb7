"""Finitely generated abelian groups presented by integer matrices.

Every group is kept in canonical form ``Z^r + Z/d_1 + ... + Z/d_k`` with
``d_1 | d_2 | ... | d_k`` and ``d_i >= 2``.  Its canonical generators are the
``r`` free generators followed by one generator per invariant factor, and an
element is a tuple of coordinates in that basis (free part arbitrary
integers, torsion part reduced to ``[0, d_i)``).

Relation matrices always use columns as relations: a presentation on ``n``
generators with relation matrix ``R`` (``n x m``) is ``Z^n / R Z^m``.
Smith normal form is the single solver behind canonical forms, kernels,
images, cokernels and linear equations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from kkcalc.errors import IllFormedMap, InvalidElement
from kkcalc._kernels import snf_kernel
from kkcalc.matrix import IntMatrix

Element = tuple[int, ...]


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

    ``U_inv`` and ``V_inv`` are the exact inverses, tracked during elimination.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @cached_property
    def rank(self) -> int:
        return sum(1 for d in self.D.diag() if d != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.D.diag() if d != 0)


def snf(A: IntMatrix) -> SnfDecomposition:
    """Smith normal form with unimodular transforms; total on every shape."""
    m, n = A.shape
    U, D, V, Ui, Vi = snf_kernel(A.tolist(), m, n)
    return SnfDecomposition(
        IntMatrix.from_rows(U, m),
        IntMatrix.from_rows(D, n),
        IntMatrix.from_rows(V, n),
        IntMatrix.from_rows(Ui, m),
        IntMatrix.from_rows(Vi, n),
    )


def integer_kernel(A: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the integer null space ``{x : A x = 0}``."""
    dec = snf(A)
    return dec.V.select_cols(range(dec.rank, A.cols))


def solve_integer(A: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """An integer solution of ``A x = b`` or None; deterministic choice."""
    if len(b) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    dec = snf(A)
    u = dec.U.apply(b)
    w = [0] * A.cols
    for i, ui in enumerate(u):
        d = dec.D[i, i] if i < min(A.rows, A.cols) else 0
        if d == 0:
            if ui != 0:
                return None
        elif ui % d:
            return None
        else:
            w[i] = ui // d
    return dec.V.apply(w)


@dataclass(frozen=True)
class FgaGroup:
    """Canonical finitely generated abelian group ``Z^free_rank + sum Z/d``.

    Two instances are isomorphic exactly when they compare equal.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError(f"invariant factor {d} is not >= 2")
            if i and d % self.torsion[i - 1]:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")

    @classmethod
    def trivial(cls) -> FgaGroup:
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> FgaGroup:
        return cls(rank, ())

    @classmethod
    def cyclic(cls, order: int) -> FgaGroup:
        """``Z/order``; order 0 means ``Z`` and order 1 the trivial group."""
        return cls.from_orders([order])

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> FgaGroup:
        """Direct sum of cyclic groups, 0 standing for an infinite cyclic factor."""
        orders = [abs(int(o)) for o in orders]
        return canonicalize(Presentation(len(orders), IntMatrix.diagonal(orders)))

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Order of each canonical generator, 0 for free generators."""
        return (0,) * self.free_rank + self.torsion

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def order(self) -> int | None:
        """Cardinality, or None when infinite."""
        return prod(self.torsion) if self.free_rank == 0 else None

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 when torsionfree)."""
        return self.torsion[-1] if self.torsion else 1

    def relation_matrix(self) -> IntMatrix:
        k = len(self.torsion)
        cols = []
        for i, d in enumerate(self.torsion):
            c = [0] * self.ngens
            c[self.free_rank + i] = d
            cols.append(c)
        return IntMatrix.from_columns(cols, self.ngens) if k else IntMatrix.zeros(self.ngens, 0)

    def normalize(self, x: Sequence[int]) -> Element:
        if len(x) != self.ngens:
            raise InvalidElement(f"element {tuple(x)} has {len(x)} coordinates, {self} needs {self.ngens}")
        return tuple(int(a) % m if m else int(a) for a, m in zip(x, self.moduli))

    def check_element(self, x: Sequence[int]) -> Element:
        """Validate reduced coordinates; raises InvalidElement otherwise."""
        if len(x) != self.ngens or not all(isinstance(a, int) for a in x):
            raise InvalidElement(f"{tuple(x)!r} is not an element of {self}")
        for a, m in zip(x, self.moduli):
            if m and not 0 <= a < m:
                raise InvalidElement(f"coordinate {a} not reduced modulo {m} in {self}")
        return tuple(x)

    def zero(self) -> Element:
        return (0,) * self.ngens

    def generators(self) -> list[Element]:
        return [tuple(int(i == j) for j in range(self.ngens)) for i in range(self.ngens)]

    def add(self, x: Sequence[int], y: Sequence[int]) -> Element:
        return self.normalize([a + b for a, b in zip(x, y)])

    def scale(self, k: int, x: Sequence[int]) -> Element:
        return self.normalize([k * a for a in x])

    def elements(self) -> Iterator[Element]:
        if not self.is_finite:
            raise ValueError(f"cannot enumerate the infinite group {self}")
        return itertools.product(*(range(d) for d in self.torsion))

    def element_order(self, x: Sequence[int]) -> int:
        """Order of ``x``; 0 for elements of infinite order."""
        x = self.normalize(x)
        if any(x[: self.free_rank]):
            return 0
        o = 1
        for a, d in zip(x[self.free_rank:], self.torsion):
            o = o * (d // gcd(a, d)) // gcd(o, d // gcd(a, d))
        return o

    def primary_factors(self) -> dict[int, tuple[int, ...]]:
        """Elementary divisors grouped by prime (p-power orders, ascending)."""
        out: dict[int, list[int]] = {}
        for d in self.torsion:
            for p, e in factorize(d).items():
                out.setdefault(p, []).append(p ** e)
        return {p: tuple(sorted(v)) for p, v in sorted(out.items())}

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class Presentation:
    """``generators`` generators modulo the column span of ``relations``."""

    generators: int
    relations: IntMatrix = field(default=None)

    def __post_init__(self):
        if self.relations is None:
            object.__setattr__(self, "relations", IntMatrix.zeros(self.generators, 0))
        if self.relations.rows != self.generators:
            raise ValueError("relation matrix needs one row per generator")


@dataclass(frozen=True)
class PresentedGroup:
    """Canonical form of a presentation together with coordinate changes.

    ``to_canonical`` (``ngens x n``) sends presentation coordinates to
    canonical coordinates; ``from_canonical`` (``n x ngens``) sends each
    canonical generator to a representative in presentation coordinates.
    """

    group: FgaGroup
    to_canonical: IntMatrix
    from_canonical: IntMatrix


def present(p: Presentation) -> PresentedGroup:
    n = p.generators
    dec = snf(p.relations)
    diag = dec.D.diag()
    rank = dec.rank
    free_idx = list(range(rank, n))
    tors_idx = [i for i in range(rank) if diag[i] > 1]
    G = FgaGroup(len(free_idx), tuple(diag[i] for i in tors_idx))
    idx = free_idx + tors_idx
    to_c = dec.U.select_rows(idx)
    to_c = IntMatrix.from_rows(
        [[a % m if m else a for a in row] for row, m in zip(to_c.entries, G.moduli)], n)
    return PresentedGroup(G, to_c, dec.U_inv.select_cols(idx))


def canonicalize(p: Presentation) -> FgaGroup:
    """Canonical form of ``coker(relations)``."""
    return present(p).group


def _reduce_matrix(M: IntMatrix, codomain: FgaGroup) -> IntMatrix:
    return IntMatrix(M.rows, M.cols, tuple(
        tuple(a % m for a in row) if m else row for row, m in zip(M.entries, codomain.moduli)))


@dataclass(frozen=True)
class GroupMap:
    """Homomorphism ``domain -> codomain``; column ``j`` is the image of generator ``j``.

    Entries in torsion rows are reduced on construction, so two maps are
    equal as homomorphisms iff they compare equal.
    """

    domain: FgaGroup
    codomain: FgaGroup
    matrix: IntMatrix

    def __post_init__(self):
        M = self.matrix
        if not isinstance(M, IntMatrix):
            M = IntMatrix.from_rows(M, self.domain.ngens)
        if M.shape != (self.codomain.ngens, self.domain.ngens):
            raise IllFormedMap(
                f"matrix shape {M.shape} does not fit {self.domain} -> {self.codomain}")
        M = _reduce_matrix(M, self.codomain)
        object.__setattr__(self, "matrix", M)
        for j, d in enumerate(self.domain.moduli):
            if not d:
                continue
            for i, e in enumerate(self.codomain.moduli):
                a = M[i, j]
                if (e == 0 and a != 0) or (e and (d * a) % e):
                    raise IllFormedMap(
                        f"generator {j} of order {d} cannot map to coordinate {a} of modulus "
                        f"{e or 'Z'} in {self.codomain}")

    @classmethod
    def from_images(cls, domain: FgaGroup, codomain: FgaGroup, images: Sequence[Sequence[int]]) -> GroupMap:
        return cls(domain, codomain, IntMatrix.from_columns(images, codomain.ngens))

    @classmethod
    def identity(cls, G: FgaGroup) -> GroupMap:
        return cls(G, G, IntMatrix.identity(G.ngens))

    @classmethod
    def zero(cls, G: FgaGroup, H: FgaGroup) -> GroupMap:
        return cls(G, H, IntMatrix.zeros(H.ngens, G.ngens))

    @classmethod
    def multiplication(cls, G: FgaGroup, k: int) -> GroupMap:
        return cls(G, G, IntMatrix.identity(G.ngens).scale(k))

    def __call__(self, x: Sequence[int]) -> Element:
        return self.codomain.normalize(self.matrix.apply(self.domain.normalize(x)))

    def compose(self, other: GroupMap) -> GroupMap:
        """``self o other``."""
        if other.codomain != self.domain:
            raise IllFormedMap(f"cannot compose {other.codomain} -> ... with map from {self.domain}")
        return GroupMap(other.domain, self.codomain, self.matrix @ other.matrix)

    __matmul__ = compose

    def __add__(self, other: GroupMap) -> GroupMap:
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise IllFormedMap("cannot add maps with different domain/codomain")
        return GroupMap(self.domain, self.codomain, self.matrix + other.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_injective(self) -> bool:
        return kernel(self)[0].is_trivial

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_trivial

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def images(self) -> list[Element]:
        return [tuple(c) for c in self.matrix.columns()]


def _subgroup(G: FgaGroup, gens: Sequence[Sequence[int]]) -> tuple[FgaGroup, GroupMap]:
    """Subgroup of ``G`` generated by the given coordinate vectors, with inclusion."""
    gens = [tuple(g) for g in gens]
    s = len(gens)
    S = IntMatrix.from_columns(gens, G.ngens) if s else IntMatrix.zeros(G.ngens, 0)
    rels = integer_kernel(S.hstack(G.relation_matrix())).select_rows(range(s))
    pg = present(Presentation(s, rels))
    return pg.group, GroupMap(pg.group, G, S @ pg.from_canonical)


def subgroup(G: FgaGroup, gens: Sequence[Sequence[int]]) -> tuple[FgaGroup, GroupMap]:
    """Close a list of elements of ``G`` to the subgroup they generate."""
    return _subgroup(G, [G.check_element(tuple(g)) for g in gens])


def kernel(f: GroupMap) -> tuple[FgaGroup, GroupMap]:
    """``ker f`` in canonical form with its (injective) inclusion into the domain."""
    A = f.matrix.hstack(f.codomain.relation_matrix())
    L = integer_kernel(A).select_rows(range(f.domain.ngens))
    return _subgroup(f.domain, L.columns())


def image(f: GroupMap) -> tuple[FgaGroup, GroupMap]:
    """``im f`` in canonical form with its inclusion into the codomain."""
    return _subgroup(f.codomain, f.matrix.columns())


def cokernel(f: GroupMap) -> tuple[FgaGroup, GroupMap]:
    """``codomain / im f`` in canonical form with the quotient map."""
    H = f.codomain
    pg = present(Presentation(H.ngens, H.relation_matrix().hstack(f.matrix)))
    return pg.group, GroupMap(H, pg.group, pg.to_canonical)


def _solve(f: GroupMap, y: Sequence[int]) -> Element | None:
    A = f.matrix.hstack(f.codomain.relation_matrix())
    w = solve_integer(A, list(y))
    if w is None:
        return None
    return f.domain.normalize(w[: f.domain.ngens])


def solve(f: GroupMap, y: Sequence[int]) -> Element | None:
    """Some ``x`` with ``f(x) == y``, or None when ``y`` is not in the image."""
    return _solve(f, f.codomain.check_element(tuple(y)))


def lift(f: GroupMap, y: Sequence[int]) -> Element:
    """Like :func:`solve` but for unreduced ``y`` known to lie in the image."""
    x = _solve(f, f.codomain.normalize(y))
    if x is None:
        raise ValueError(f"{tuple(y)} is not in the image of the map")
    return x


def contains(inclusion: GroupMap, y: Sequence[int]) -> bool:
    """Whether ``y`` lies in the image of ``inclusion``."""
    return _solve(inclusion, inclusion.codomain.normalize(y)) is not None


def same_subgroup(a: GroupMap, b: GroupMap) -> bool:
    """Whether two maps into the same group have equal images."""
    if a.codomain != b.codomain:
        raise IllFormedMap("images live in different groups")
    return (all(contains(b, y) for y in a.images())
            and all(contains(a, y) for y in b.images()))


def intersection(a: GroupMap, b: GroupMap) -> tuple[FgaGroup, GroupMap]:
    """``im a  /\\  im b`` inside their common codomain."""
    G = a.codomain
    if b.codomain != G:
        raise IllFormedMap("subgroups of different groups")
    A = a.matrix.hstack(b.matrix.scale(-1)).hstack(G.relation_matrix())
    K = integer_kernel(A).select_rows(range(a.domain.ngens))
    return _subgroup(G, (a.matrix @ K).columns())


@dataclass(frozen=True)
class DirectSum:
    """``group`` with structure maps for each summand (in the given order)."""

    group: FgaGroup
    summands: tuple[FgaGroup, ...]
    injections: tuple[GroupMap, ...]
    projections: tuple[GroupMap, ...]


def direct_sum(*groups: FgaGroup) -> DirectSum:
    n = sum(G.ngens for G in groups)
    rel_cols = []
    offsets = []
    off = 0
    for G in groups:
        offsets.append(off)
        for j, d in enumerate(G.torsion):
            c = [0] * n
            c[off + G.free_rank + j] = d
            rel_cols.append(c)
        off += G.ngens
    R = IntMatrix.from_columns(rel_cols, n) if rel_cols else IntMatrix.zeros(n, 0)
    pg = present(Presentation(n, R))
    S = pg.group
    inj, proj = [], []
    for G, o in zip(groups, offsets):
        block = list(range(o, o + G.ngens))
        inj.append(GroupMap(G, S, pg.to_canonical.select_cols(block)))
        proj.append(GroupMap(S, G, pg.from_canonical.select_rows(block)))
    return DirectSum(S, tuple(groups), tuple(inj), tuple(proj))


def block_map(src: DirectSum, tgt: DirectSum, blocks: Sequence[GroupMap]) -> GroupMap:
    """``sum_k inj_k o blocks[k] o proj_k`` between two direct sums."""
    if not (len(blocks) == len(src.summands) == len(tgt.summands)):
        raise IllFormedMap("block count does not match the direct sums")
    total = GroupMap.zero(src.group, tgt.group)
    for f, p, i in zip(blocks, src.projections, tgt.injections):
        total = total + i.compose(f.compose(p))
    return total
