"""KK-groups through the universal coefficient theorem, Kunneth groups, and the
splitting and duality statements built on them.

Grading convention (used everywhere): in degree ``j``

    Hom part = Hom(KA_0, KB_j)     + Hom(KA_1, KB_{j+1})
    Ext part = Ext(KA_0, KB_{j+1}) + Ext(KA_1, KB_j)

i.e. Hom contributes in degree ``j`` and Ext, entering through a boundary of
degree one, in degree ``j + 1``.  ``total`` is the (unnaturally) split sum
``Hom part + Ext part``; no non-split extension is ever modelled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from kkcalc.decomp import torsion_subgroup, torsionfree_quotient
from kkcalc.errors import HypothesisViolation
from kkcalc.functors import (BifunctorResult, SymbolicAnswer, SymbolicCodomain, bifunctor,
                             characters, hom_symbolic, induced_map, pontryagin_dual)
from kkcalc.graded import GradedGroup, GradedMap
from kkcalc.groups import (DirectSum, FgaGroup, GroupMap, Presentation, block_map, direct_sum,
                           present)
from kkcalc.matrix import IntMatrix
from kkcalc.sequences import ExactnessReport, LongSequence, check_exact

COMPLEX_NUMBERS = GradedGroup(FgaGroup.free(1), FgaGroup())


@dataclass(frozen=True)
class UctResult:
    """``KK_degree(A, B)`` assembled from its Hom and Ext parts."""

    degree: int
    hom_part: FgaGroup
    ext_part: FgaGroup
    total: FgaGroup
    closure_of_zero: FgaGroup
    hausdorff_quotient: FgaGroup
    hom_pieces: tuple[BifunctorResult, BifunctorResult] = field(repr=False)
    ext_pieces: tuple[BifunctorResult, BifunctorResult] = field(repr=False)
    hom_sum: DirectSum = field(repr=False)
    ext_sum: DirectSum = field(repr=False)
    total_sum: DirectSum = field(repr=False)

    @property
    def is_finite(self) -> bool:
        return self.total.is_finite


def kk(KA: GradedGroup, KB: GradedGroup, j: int) -> UctResult:
    j %= 2
    homs = tuple(bifunctor("hom", KA[i], KB[i + j]) for i in (0, 1))
    exts = tuple(bifunctor("ext", KA[i], KB[i + j + 1]) for i in (0, 1))
    hs = direct_sum(*(h.value for h in homs))
    es = direct_sum(*(e.value for e in exts))
    ts = direct_sum(hs.group, es.group)
    closure = direct_sum(*(bifunctor("pext", KA[i], KB[i + j + 1]).value for i in (0, 1))).group
    # closure of zero is trivial, so the Hausdorff quotient is the whole group
    return UctResult(j, hs.group, es.group, ts.group, closure, ts.group, homs, exts, hs, es, ts)


def k_dual(KA: GradedGroup, j: int) -> UctResult:
    """``K^j(A) = KK_j(A, C)``."""
    return kk(KA, COMPLEX_NUMBERS, j)


def _assemble(src: UctResult, tgt: UctResult, hom_blocks, ext_blocks) -> GroupMap:
    h = block_map(src.hom_sum, tgt.hom_sum, hom_blocks)
    e = block_map(src.ext_sum, tgt.ext_sum, ext_blocks)
    return block_map(src.total_sum, tgt.total_sum, [h, e])


def kk_map_first(f: GradedMap, KB: GradedGroup, j: int) -> GroupMap:
    """``KK_j(f.target, KB) -> KK_j(f.source, KB)`` for a degree-0 map ``f``."""
    if f.degree:
        raise ValueError("only degree-0 maps act on KK in this form")
    src, tgt = kk(f.target, KB, j), kk(f.source, KB, j)
    return _assemble(src, tgt,
                     [induced_map("hom", f[i], KB[i + j], "left") for i in (0, 1)],
                     [induced_map("ext", f[i], KB[i + j + 1], "left") for i in (0, 1)])


def kk_map_second(KA: GradedGroup, h: GradedMap, j: int) -> GroupMap:
    """``KK_j(KA, h.source) -> KK_j(KA, h.target)`` for a degree-0 map ``h``."""
    if h.degree:
        raise ValueError("only degree-0 maps act on KK in this form")
    src, tgt = kk(KA, h.source, j), kk(KA, h.target, j)
    return _assemble(src, tgt,
                     [induced_map("hom", h[i + j], KA[i], "right") for i in (0, 1)],
                     [induced_map("ext", h[i + j + 1], KA[i], "right") for i in (0, 1)])


def graded_hom_map_first(f: GradedMap, KB: GradedGroup, j: int) -> GroupMap:
    """Restriction ``Hom(f.target, KB)_j -> Hom(f.source, KB)_j``."""
    return kk_restrict_hom(kk(f.target, KB, j), kk(f.source, KB, j),
                           [induced_map("hom", f[i], KB[i + j], "left") for i in (0, 1)])


def graded_hom_map_second(KA: GradedGroup, h: GradedMap, j: int) -> GroupMap:
    """Postcomposition ``Hom(KA, h.source)_j -> Hom(KA, h.target)_j``."""
    return kk_restrict_hom(kk(KA, h.source, j), kk(KA, h.target, j),
                           [induced_map("hom", h[i + j], KA[i], "right") for i in (0, 1)])


def kk_restrict_hom(src: UctResult, tgt: UctResult, blocks) -> GroupMap:
    return block_map(src.hom_sum, tgt.hom_sum, blocks)


# ---------------------------------------------------------------- Kunneth


@dataclass(frozen=True)
class KunnethResult:
    """``tensor_part -> total -> tor_part`` split; ``alpha_iso`` when Tor vanishes."""

    degree: int
    tensor_part: FgaGroup
    tor_part: FgaGroup
    total: FgaGroup

    @property
    def alpha_iso(self) -> bool:
        return self.tor_part.is_trivial


def _sum(groups) -> FgaGroup:
    return direct_sum(*groups).group


def kunneth_product(KA: GradedGroup, KB: GradedGroup, j: int) -> KunnethResult:
    j %= 2
    t = _sum(bifunctor("tensor", KA[i], KB[j - i]).value for i in (0, 1))
    r = _sum(bifunctor("tor", KA[i], KB[j - 1 - i]).value for i in (0, 1))
    return KunnethResult(j, t, r, _sum([t, r]))


def coefficients(KA: GradedGroup, G: FgaGroup, j: int) -> KunnethResult:
    """``K_j(A; G)`` from ``K_j(A) (x) G`` and ``Tor(K_{j-1}(A), G)``."""
    j %= 2
    t = bifunctor("tensor", KA[j], G).value
    r = bifunctor("tor", KA[j - 1], G).value
    return KunnethResult(j, t, r, _sum([t, r]))


# ---------------------------------------------------------------- four-way reduction


@dataclass(frozen=True)
class FourWaySplit:
    degree: int
    tt: UctResult
    tf: UctResult
    ft: UctResult
    ff: UctResult
    assembled: FgaGroup
    direct: FgaGroup

    @property
    def agrees(self) -> bool:
        return self.assembled == self.direct


def four_way(KA: GradedGroup, KB: GradedGroup, j: int) -> FourWaySplit:
    """KK of ``(A_t,B_t), (A_t,B_f), (A_f,B_t), (A_f,B_f)`` and their sum."""
    At, Af = torsion_subgroup(KA)[0], torsionfree_quotient(KA)[0]
    Bt, Bf = torsion_subgroup(KB)[0], torsionfree_quotient(KB)[0]
    parts = [kk(At, Bt, j), kk(At, Bf, j), kk(Af, Bt, j), kk(Af, Bf, j)]
    assembled = _sum(p.total for p in parts)
    return FourWaySplit(j % 2, *parts, assembled, kk(KA, KB, j).total)


# ---------------------------------------------------------------- splitting predicates


@dataclass(frozen=True)
class SplitDegree:
    degree: int
    restriction: GroupMap
    onto: bool
    sequence: LongSequence
    report: ExactnessReport

    @property
    def orders(self) -> tuple[int | None, int | None, int | None]:
        return tuple(self.sequence.groups[i].order for i in (1, 2, 3))

    @property
    def order_product_ok(self) -> bool | None:
        left, mid, right = self.orders
        if None in (left, mid, right):
            return None
        return mid == left * right


@dataclass(frozen=True)
class SplitPredicateReport:
    name: str
    degrees: tuple[SplitDegree, SplitDegree]

    @property
    def onto(self) -> bool:
        return all(d.onto for d in self.degrees)

    @property
    def exact(self) -> bool:
        return all(d.report.exact for d in self.degrees)


def split_2_1(KA: GradedGroup, KB: GradedGroup) -> SplitPredicateReport:
    """Surjectivity of restriction to the torsion subgroup on Hom, and
    ``0 -> KK(A_f, B) -> KK(A, B) -> KK(A_t, B) -> 0`` in both degrees."""
    _, theta = torsion_subgroup(KA)
    _, pi = torsionfree_quotient(KA)
    out = []
    for j in (0, 1):
        restriction = graded_hom_map_first(theta, KB, j)
        seq = LongSequence.from_maps([kk_map_first(pi, KB, j), kk_map_first(theta, KB, j)],
                                     pad_zeros=True)
        out.append(SplitDegree(j, restriction, restriction.is_surjective(), seq, check_exact(seq)))
    return SplitPredicateReport("torsion_restriction", tuple(out))


def split_2_6(KA: GradedGroup, KB: GradedGroup) -> SplitPredicateReport:
    """Surjectivity of ``pi_*`` on Hom, and
    ``0 -> KK(A, B_t) -> KK(A, B) -> KK(A, B_f) -> 0`` in both degrees."""
    _, theta = torsion_subgroup(KB)
    _, pi = torsionfree_quotient(KB)
    out = []
    for j in (0, 1):
        restriction = graded_hom_map_second(KA, pi, j)
        seq = LongSequence.from_maps([kk_map_second(KA, theta, j), kk_map_second(KA, pi, j)],
                                     pad_zeros=True)
        out.append(SplitDegree(j, restriction, restriction.is_surjective(), seq, check_exact(seq)))
    return SplitPredicateReport("free_corestriction", tuple(out))


# ---------------------------------------------------------------- torsion source, free target


@dataclass(frozen=True)
class Thm43Report:
    degree: int
    kk: UctResult
    ext_form: FgaGroup
    hom_qz_form: FgaGroup
    k_dual: FgaGroup
    dual_of_shift: FgaGroup
    dual_sum: FgaGroup
    n: int
    verdicts: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())


def thm_4_3_check(KA: GradedGroup, KB: GradedGroup, j: int) -> Thm43Report:
    """Torsion ``KA`` against free ``KB``: KK is Ext, is Hom into ``KB (x) Q/Z``,
    and is a sum of Pontryagin duals with the parity shift."""
    if not KA.is_torsion:
        deg = 0 if KA.even.free_rank else 1
        raise HypothesisViolation(f"K_*(A) = {KA} is not a torsion group",
                                  hypothesis="K_*(A) torsion", witness=(deg, KA[deg].generators()[0]))
    if not KB.is_free:
        deg = 0 if KB.even.torsion else 1
        G = KB[deg]
        raise HypothesisViolation(f"K_*(B) = {KB} is not torsionfree",
                                  hypothesis="K_*(B) torsionfree",
                                  witness=(deg, G.generators()[G.free_rank]))
    j %= 2
    u = kk(KA, KB, j)
    ext_form = u.ext_part
    qz = []
    for i in (0, 1):
        h = hom_symbolic(KA[i], SymbolicCodomain("QZ", KB[i + j + 1].free_rank))
        assert not isinstance(h, SymbolicAnswer)
        qz.append(h)
    hom_qz_form = _sum(qz)
    kd = k_dual(KA, j).total
    dual_shift = pontryagin_dual(KA[j - 1])
    dual_sum = _sum([pontryagin_dual(KA[j - 1 - b]) for b in (0, 1) for _ in range(KB[b].free_rank)])
    verdicts = {
        "hom_part_vanishes": u.hom_part.is_trivial,
        "kk_is_ext": u.total == ext_form,
        "ext_is_hom_into_QZ": ext_form == hom_qz_form,
        "k_dual_is_shifted_dual": kd == dual_shift,
        "kk_is_sum_of_duals": u.total == dual_sum,
    }
    return Thm43Report(j, u, ext_form, hom_qz_form, kd, dual_shift, dual_sum,
                       KB.total_rank, verdicts)


@dataclass(frozen=True)
class Thm44Report:
    degree: int
    hom_into_R: FgaGroup
    dual: FgaGroup
    k_dual: UctResult
    chi: GroupMap
    sequence: LongSequence
    report: ExactnessReport

    @property
    def chi_iso(self) -> bool:
        return self.chi.is_isomorphism()


def _chi(KA: GradedGroup, j: int, target: UctResult) -> GroupMap:
    """Boundary ``X(K_j) = Hom(K_j, Q/Z) -> Ext(K_j, Z)`` landing in ``K^{j-1}``."""
    G = KA[j]
    X = pontryagin_dual(G)
    chars = present(Presentation(len(G.torsion), IntMatrix.diagonal(list(G.torsion))))
    piece = target.ext_pieces[j]
    assert piece.left == G and piece.right == FgaGroup.free(1)
    cols = []
    for chi in characters(G):
        # lift chi(g_i) to [0, 1), multiply by the order of g_i: an integer class mod d_i
        w = [0] * len(piece.pairs)
        for (i, _), v, d in zip(piece.pairs, chi, G.torsion):
            w[i] = int((v % 1) * d)
        cols.append(w)
    P = (IntMatrix.from_columns(cols, len(piece.pairs)) if cols
         else IntMatrix.zeros(len(piece.pairs), 0))
    to_piece = GroupMap(X, piece.value, piece.to_canonical @ P @ chars.from_canonical)
    to_ext = target.ext_sum.injections[j].compose(to_piece)
    return target.total_sum.injections[1].compose(to_ext)


def thm_4_4_sequence(KA: GradedGroup, j: int) -> Thm44Report:
    """``0 -> Hom(K_j(A), R) -> X(K_j(A)) -> K^{j-1}(A) -> 0`` for torsion ``K_*(A)``."""
    for deg in (0, 1):
        if KA[deg].free_rank:
            raise HypothesisViolation(
                f"K_*(A) = {KA} has a free direct summand (generator {deg}:"
                f"{KA[deg].generators()[0]}); for finitely generated groups 'no free direct "
                f"summand' means torsion, equivalently Hom(K_*(A), Z) = 0",
                hypothesis="no free direct summand", witness=(deg, KA[deg].generators()[0]))
    j %= 2
    hom_R = hom_symbolic(KA[j], SymbolicCodomain("R", 1))
    assert isinstance(hom_R, FgaGroup)
    X = pontryagin_dual(KA[j])
    kd = k_dual(KA, j - 1)
    chi = _chi(KA, j, kd)
    seq = LongSequence.from_maps([GroupMap.zero(hom_R, X), chi], pad_zeros=True)
    return Thm44Report(j, hom_R, X, kd, chi, seq, check_exact(seq))


# ---------------------------------------------------------------- topology shadow


@dataclass(frozen=True)
class ClosureReport:
    degree: int
    closure_of_zero: FgaGroup
    hausdorff_quotient: FgaGroup
    hom_part: FgaGroup
    note: str


def closure_of_zero(KA: GradedGroup, KB: GradedGroup, j: int) -> ClosureReport:
    u = kk(KA, KB, j)
    if KA.is_free:
        note = ("K_*(A) torsionfree: Pext = Ext = 0, the closure of zero is 0 and KK equals its "
                "Hausdorff quotient Hom(K_*(A), K_*(B))")
    else:
        note = ("finitely generated K_*(A): Pext = 0, so the closure of zero is 0 and KK is its "
                "own Hausdorff quotient (Ext part included)")
    return ClosureReport(u.degree, u.closure_of_zero, u.hausdorff_quotient, u.hom_part, note)
