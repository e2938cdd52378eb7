"""Torsion/free and p-primary decompositions, purity, and realization records.

A realization record is the group-level shadow of realizing a subgroup
``G_*`` of ``K_*(A)`` by an extension ``0 -> A (x) K -> A_q -> S A_s -> 0``:
``K_*(A_s) = G_*``, ``K_*(A_q) = K_*(A) / G_*``, the boundary map of the
six-term sequence is the inclusion (so it is injective and the sequence
breaks into two short exact pieces), and the ladder comparing them with
``0 -> G_* -> K_*(A) -> K_*(A)/G_* -> 0`` commutes with isomorphic rungs.
The algebras themselves are never constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from kkcalc.errors import HypothesisViolation, IllFormedMap
from kkcalc.graded import (GradedGroup, GradedMap, GradedSubgroup, graded_subgroup_close,
                           suspend, suspension_iso)
from kkcalc.groups import (FgaGroup, GroupMap, cokernel, contains, direct_sum, factorize,
                           intersection, kernel, lift)
from kkcalc.matrix import IntMatrix
from kkcalc.sequences import (LadderDiagram, LongSequence, ShortExactSeq, check_exact,
                              find_retraction)


def _torsion_inclusion(G: FgaGroup) -> tuple[FgaGroup, GroupMap]:
    T = FgaGroup(0, G.torsion)
    M = IntMatrix.zeros(G.free_rank, len(G.torsion)).vstack(IntMatrix.identity(len(G.torsion)))
    return T, GroupMap(T, G, M)


def _free_projection(G: FgaGroup) -> tuple[FgaGroup, GroupMap]:
    F = FgaGroup.free(G.free_rank)
    M = IntMatrix.identity(G.free_rank).hstack(IntMatrix.zeros(G.free_rank, len(G.torsion)))
    return F, GroupMap(G, F, M)


def torsion_subgroup(K: GradedGroup) -> tuple[GradedGroup, GradedMap]:
    """``K_t`` with its injective degree-0 inclusion."""
    (T0, i0), (T1, i1) = _torsion_inclusion(K.even), _torsion_inclusion(K.odd)
    Kt = GradedGroup(T0, T1)
    return Kt, GradedMap(Kt, K, 0, i0, i1)


def torsionfree_quotient(K: GradedGroup) -> tuple[GradedGroup, GradedMap]:
    """``K_f = K / K_t`` with the quotient map."""
    (F0, p0), (F1, p1) = _free_projection(K.even), _free_projection(K.odd)
    Kf = GradedGroup(F0, F1)
    return Kf, GradedMap(K, Kf, 0, p0, p1)


# ---------------------------------------------------------------- p-primary parts


def p_part(G: FgaGroup, p: int) -> tuple[FgaGroup, GroupMap]:
    """Elements of ``p``-power order, found as the kernel of multiplication by ``p^N``."""
    N = 0
    e = G.exponent
    while e % p == 0:
        e //= p
        N += 1
    return kernel(GroupMap.multiplication(G, p ** N))


@dataclass(frozen=True)
class PrimaryDecomposition:
    """``parts[p]`` is the p-primary part; ``iso`` maps the sum of parts onto the input."""

    input: GradedGroup
    parts: dict[int, GradedGroup]
    sum: GradedGroup
    injections: dict[int, GradedMap]
    iso: GradedMap


def _primary_component(G: FgaGroup, primes: list[int]):
    parts = {}
    images = {}
    for p in primes:
        orders, cols = [], []
        for j, d in enumerate(G.torsion):
            q = p ** factorize(d).get(p, 0)
            if q > 1:
                orders.append(q)
                col = [0] * G.ngens
                col[G.free_rank + j] = d // q
                cols.append(col)
        parts[p] = FgaGroup(0, tuple(orders))
        images[p] = cols
    return parts, images


def primary_decomposition(K: GradedGroup) -> PrimaryDecomposition:
    """Split a torsion graded group into its p-primary components."""
    for j in (0, 1):
        if K[j].free_rank:
            raise HypothesisViolation(
                f"primary decomposition needs a torsion group; degree {j} of {K} has free rank",
                hypothesis="torsion", witness=(j, K[j].generators()[0]))
    primes = sorted(set(factorize(K.even.exponent)) | set(factorize(K.odd.exponent)))
    comps = [_primary_component(K[j], primes) for j in (0, 1)]
    parts = {p: GradedGroup(comps[0][0][p], comps[1][0][p]) for p in primes}

    sums, isos, injs = [], [], {p: [] for p in primes}
    for j in (0, 1):
        ds = direct_sum(*(comps[j][0][p] for p in primes))
        cols = [c for p in primes for c in comps[j][1][p]]
        raw = IntMatrix.from_columns(cols, K[j].ngens) if cols else IntMatrix.zeros(K[j].ngens, 0)
        # stacked projections send the sum's coordinates to concatenated part coordinates
        from_concat = IntMatrix.zeros(0, ds.group.ngens)
        for proj in ds.projections:
            from_concat = from_concat.vstack(proj.matrix)
        iso = GroupMap(ds.group, K[j], raw @ from_concat)
        if not iso.is_isomorphism():
            raise AssertionError(f"primary decomposition map is not an isomorphism in degree {j}")
        sums.append(ds.group)
        isos.append(iso)
        for p, inj in zip(primes, ds.injections):
            injs[p].append(inj)
    total = GradedGroup(sums[0], sums[1])
    injections = {p: GradedMap(parts[p], total, 0, injs[p][0], injs[p][1]) for p in primes}
    return PrimaryDecomposition(K, parts, total, injections, GradedMap(total, K, 0, isos[0], isos[1]))


# ---------------------------------------------------------------- purity and summands


@dataclass(frozen=True)
class SummandReport:
    summand: bool
    retraction: GroupMap | None


def _require_injective(emb: GroupMap) -> None:
    if not emb.is_injective():
        raise IllFormedMap("subgroup embedding is not injective")


def purity_test_orders(emb: GroupMap) -> list[int]:
    """Finite set of ``n`` for which ``nH = H /\\ nG`` decides purity.

    Only primes dividing ``|tors(G/H)|`` can fail, and for ``n = p^k`` the
    condition is equivalent to ``G[p^k] -> (G/H)[p^k]`` being onto, which is
    constant once ``p^k`` exceeds the p-parts of both exponents.
    """
    Q = cokernel(emb)[0]
    bound = lcm(emb.codomain.exponent, Q.exponent)
    out = []
    for p, e in sorted(factorize(Q.exponent).items()):
        k_max = factorize(bound).get(p, 0)
        out.extend(p ** k for k in range(1, k_max + 1))
    return out


def is_pure(emb: GroupMap) -> bool:
    """Whether ``im emb`` satisfies ``nH = H /\\ nG`` for every ``n >= 1``."""
    _require_injective(emb)
    G = emb.codomain
    for n in purity_test_orders(emb):
        nG = GroupMap.multiplication(G, n)
        _, meet = intersection(emb, nG)
        nH = emb.compose(GroupMap.multiplication(emb.domain, n))
        if not all(contains(nH, x) for x in meet.images()):
            return False
    return True


def is_summand(emb: GroupMap) -> SummandReport:
    """Whether ``im emb`` is a direct summand, with a retraction witness."""
    _require_injective(emb)
    r = find_retraction(emb)
    return SummandReport(r is not None, r)


# ---------------------------------------------------------------- realization


@dataclass(frozen=True)
class RealizationRecord:
    """Group-level data of the realization of ``subgroup`` inside ``input``.

    ``k_of_SAs`` is ``K_*(S A_s)``; ``boundary`` is the degree-one boundary
    map ``K_*(S A_s) -> K_*(A (x) K)`` of the six-term sequence.
    ``sequences[j]`` is ``0 -> G_j -> K_j -> K_j/G_j -> 0`` and
    ``ladders[j]`` compares the realized top row with it.
    """

    input: GradedGroup
    subgroup: GradedSubgroup
    k_of_As: GradedGroup
    k_of_Aq: GradedGroup
    k_of_SAs: GradedGroup
    inclusion: GradedMap
    quotient: GradedMap
    boundary: GradedMap
    six_term: LongSequence
    sequences: tuple[ShortExactSeq, ShortExactSeq]
    ladders: tuple[LadderDiagram, LadderDiagram]
    summand: bool
    retraction: GradedMap | None = None
    section: GradedMap | None = None
    sum_iso: GradedMap | None = None

    @property
    def rows_exact(self) -> bool:
        return all(check_exact(s.as_sequence()).exact for s in self.sequences) and \
            check_exact(self.six_term).exact

    @property
    def verticals_iso(self) -> bool:
        return all(m.is_isomorphism() for l in self.ladders for m in (l.alpha, l.beta, l.gamma))


def _six_term(K: GradedGroup, Aq: GradedGroup, SAs: GradedGroup, q: GradedMap,
              boundary: GradedMap) -> LongSequence:
    # K_0(A) -> K_0(Aq) -> K_0(SAs) -> K_1(A) -> K_1(Aq) -> K_1(SAs) -> K_0(A) -> K_0(Aq)
    maps = []
    for j in (0, 1):
        maps.append(q[j])
        maps.append(GroupMap.zero(Aq[j], SAs[j]))
        maps.append(boundary[j])
    maps.append(q[0])
    return LongSequence.from_maps(maps)


def _realize(K: GradedGroup, S: GradedSubgroup, Gs: GradedGroup, theta: GradedMap) -> RealizationRecord:
    quotients = [cokernel(theta[j]) for j in (0, 1)]
    Aq = GradedGroup(quotients[0][0], quotients[1][0])
    q = GradedMap(K, Aq, 0, quotients[0][1], quotients[1][1])
    SAs = suspend(Gs)
    # boundary o (suspension iso) = theta, so boundary = theta o (suspension iso)^-1
    sigma = suspension_iso(Gs)
    sigma_inv = GradedMap(SAs, Gs, 1, GroupMap.identity(SAs.even), GroupMap.identity(SAs.odd))
    boundary = theta.compose(sigma_inv)
    six = _six_term(K, Aq, SAs, q, boundary)

    ses, ladders = [], []
    for j in (0, 1):
        bottom = ShortExactSeq(theta[j], q[j])
        top_f = boundary[j + 1].compose(sigma[j])
        top = ShortExactSeq(top_f, q[j])
        ladders.append(LadderDiagram(top.f, top.g, bottom.f, bottom.g,
                                     GroupMap.identity(Gs[j]), GroupMap.identity(K[j]),
                                     GroupMap.identity(Aq[j])))
        ses.append(bottom)

    retr = [find_retraction(theta[j]) for j in (0, 1)]
    summand = all(r is not None for r in retr)
    retraction = section = sum_iso = None
    if summand:
        retraction = GradedMap(K, Gs, 0, retr[0], retr[1])
        secs, isos = [], []
        for j in (0, 1):
            # s(c) = x - theta(r(x)) for any lift x of c
            cols = []
            for e in Aq[j].generators():
                x = lift(q[j], e)
                cols.append(K[j].add(x, K[j].scale(-1, theta[j](retr[j](x)))))
            s = GroupMap.from_images(Aq[j], K[j], cols)
            ds = direct_sum(Gs[j], Aq[j])
            isos.append(theta[j].compose(ds.projections[0]) + s.compose(ds.projections[1]))
            secs.append(s)
        section = GradedMap(Aq, K, 0, secs[0], secs[1])
        total = GradedGroup(isos[0].domain, isos[1].domain)
        sum_iso = GradedMap(total, K, 0, isos[0], isos[1])
    return RealizationRecord(K, S, Gs, Aq, SAs, theta, q, boundary, six, tuple(ses), tuple(ladders),
                             summand, retraction, section, sum_iso)


def realize(K: GradedGroup, S: GradedSubgroup) -> RealizationRecord:
    """Realization record of the subgroup generated by ``S`` inside ``K``."""
    if S.ambient != K:
        raise IllFormedMap("subgroup generators belong to a different ambient group")
    Gs, theta = graded_subgroup_close(S)
    return _realize(K, S, Gs, theta)


def realize_torsion(K: GradedGroup) -> RealizationRecord:
    """``realize`` with the torsion subgroup; the summand flag is always true here."""
    Kt, theta = torsion_subgroup(K)
    S = GradedSubgroup(K, tuple(theta[0].images()), tuple(theta[1].images()))
    rec = _realize(K, S, Kt, theta)
    if not rec.summand:
        raise AssertionError("torsion subgroup of a finitely generated group must be a summand")
    return rec


def decompose(K: GradedGroup) -> tuple[GradedGroup, GradedGroup, RealizationRecord]:
    """``(K_t, K_f, record)`` with ``record.sum_iso: K_t + K_f -> K``."""
    rec = realize_torsion(K)
    return rec.k_of_As, torsionfree_quotient(K)[0], rec
