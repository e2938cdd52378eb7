"""Exact sequences, splitting, and the snake lemma with an explicit connecting map."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from kkcalc.errors import DiagramError, IllFormedMap, NotExact
from kkcalc.functors import bifunctor, hom_element_to_map, induced_map, map_to_hom_element
from kkcalc.groups import (Element, FgaGroup, GroupMap, cokernel, contains, direct_sum, kernel,
                           lift, solve)


@dataclass(frozen=True)
class LongSequence:
    """``groups[0] -> groups[1] -> ... `` with ``maps[i]: groups[i] -> groups[i+1]``."""

    groups: tuple[FgaGroup, ...]
    maps: tuple[GroupMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.maps) != len(self.groups) - 1:
            raise IllFormedMap("a sequence of n groups needs n - 1 maps")
        for i, f in enumerate(self.maps):
            if f.domain != self.groups[i] or f.codomain != self.groups[i + 1]:
                raise IllFormedMap(f"map {i} ({f.domain} -> {f.codomain}) breaks the chain")

    @classmethod
    def from_maps(cls, maps: Sequence[GroupMap], pad_zeros: bool = False) -> LongSequence:
        """Chain of composable maps; ``pad_zeros`` adds ``0 ->`` and ``-> 0`` at the ends."""
        maps = list(maps)
        if not maps:
            raise IllFormedMap("empty chain")
        for a, b in zip(maps, maps[1:]):
            if a.codomain != b.domain:
                raise IllFormedMap(f"non-composable chain at {a.codomain} / {b.domain}")
        if pad_zeros:
            O = FgaGroup()
            maps = [GroupMap.zero(O, maps[0].domain)] + maps + [GroupMap.zero(maps[-1].codomain, O)]
        return cls(tuple([maps[0].domain] + [f.codomain for f in maps]), tuple(maps))


@dataclass(frozen=True)
class NodeReport:
    index: int
    group: FgaGroup
    exact: bool
    witness: Element | None = None
    reason: str = ""


@dataclass(frozen=True)
class ExactnessReport:
    nodes: tuple[NodeReport, ...]

    @property
    def exact(self) -> bool:
        return all(n.exact for n in self.nodes)

    def first_failure(self) -> NodeReport | None:
        return next((n for n in self.nodes if not n.exact), None)


def _exact_at(f: GroupMap, g: GroupMap, index: int) -> NodeReport:
    B = f.codomain
    for y in f.images():
        if any(g(y)):
            return NodeReport(index, B, False, B.normalize(y), "image not contained in kernel")
    K, inc = kernel(g)
    for x in inc.images():
        if not contains(f, x):
            return NodeReport(index, B, False, B.normalize(x), "kernel not contained in image")
    return NodeReport(index, B, True)


def check_exact(seq: LongSequence) -> ExactnessReport:
    """im = ker at every interior node, with a witness element where that fails."""
    return ExactnessReport(tuple(
        _exact_at(seq.maps[i - 1], seq.maps[i], i) for i in range(1, len(seq.groups) - 1)))


@dataclass(frozen=True)
class ShortExactSeq:
    """``0 -> A -f-> B -g-> C -> 0``; exactness is verified on construction."""

    f: GroupMap
    g: GroupMap

    def __post_init__(self):
        if self.f.codomain != self.g.domain:
            raise IllFormedMap("f and g are not composable")
        report = check_exact(self.as_sequence())
        bad = report.first_failure()
        if bad is not None:
            raise NotExact(f"not exact at node {bad.index} ({bad.group}): {bad.reason}",
                           node=bad.index, witness=bad.witness)

    @property
    def A(self) -> FgaGroup:
        return self.f.domain

    @property
    def B(self) -> FgaGroup:
        return self.f.codomain

    @property
    def C(self) -> FgaGroup:
        return self.g.codomain

    def as_sequence(self) -> LongSequence:
        return LongSequence.from_maps([self.f, self.g], pad_zeros=True)


@dataclass(frozen=True)
class SplitReport:
    split: bool
    section: GroupMap | None
    middle_is_sum: bool


def find_section(g: GroupMap) -> GroupMap | None:
    """``s`` with ``g o s = id``, or None; solved in ``Hom(C, B) -> Hom(C, C)``."""
    B, C = g.domain, g.codomain
    g_star = induced_map("hom", g, C, "right")
    target = map_to_hom_element(bifunctor("hom", C, C), GroupMap.identity(C))
    x = solve(g_star, target)
    if x is None:
        return None
    return hom_element_to_map(bifunctor("hom", C, B), x)


def find_retraction(f: GroupMap) -> GroupMap | None:
    """``r`` with ``r o f = id``, or None; solved in ``Hom(B, A) -> Hom(A, A)``."""
    A, B = f.domain, f.codomain
    f_star = induced_map("hom", f, A, "left")
    target = map_to_hom_element(bifunctor("hom", A, A), GroupMap.identity(A))
    x = solve(f_star, target)
    if x is None:
        return None
    return hom_element_to_map(bifunctor("hom", B, A), x)


def is_split(seq: ShortExactSeq) -> SplitReport:
    s = find_section(seq.g)
    middle_is_sum = direct_sum(seq.A, seq.C).group == seq.B
    return SplitReport(s is not None, s, middle_is_sum)


# ---------------------------------------------------------------- ladders


@dataclass(frozen=True)
class LadderDiagram:
    """Rows ``A -f-> B -g-> C`` over ``A' -f2-> B' -g2-> C'`` joined by alpha, beta, gamma."""

    f: GroupMap
    g: GroupMap
    f2: GroupMap
    g2: GroupMap
    alpha: GroupMap
    beta: GroupMap
    gamma: GroupMap

    def __post_init__(self):
        checks = [
            (self.f.codomain == self.g.domain, "top row not composable"),
            (self.f2.codomain == self.g2.domain, "bottom row not composable"),
            (self.alpha.domain == self.f.domain and self.alpha.codomain == self.f2.domain, "alpha"),
            (self.beta.domain == self.f.codomain and self.beta.codomain == self.f2.codomain, "beta"),
            (self.gamma.domain == self.g.codomain and self.gamma.codomain == self.g2.codomain, "gamma"),
        ]
        for ok, what in checks:
            if not ok:
                raise IllFormedMap(f"ladder shape mismatch: {what}")
        if self.beta.compose(self.f) != self.f2.compose(self.alpha):
            raise DiagramError("left square does not commute", square="left")
        if self.gamma.compose(self.g) != self.g2.compose(self.beta):
            raise DiagramError("right square does not commute", square="right")

    def rows_exact(self) -> bool:
        top = LongSequence.from_maps([self.f, self.g, GroupMap.zero(self.g.codomain, FgaGroup())])
        bottom = LongSequence.from_maps([GroupMap.zero(FgaGroup(), self.f2.domain), self.f2, self.g2])
        return check_exact(top).exact and check_exact(bottom).exact


def _check_snake_hypotheses(l: LadderDiagram) -> None:
    if not l.g.is_surjective():
        raise DiagramError("top row: g is not surjective", square="top")
    top = check_exact(LongSequence.from_maps([l.f, l.g]))
    if not top.exact:
        raise DiagramError(f"top row not exact at B: {top.nodes[0].reason}", square="top")
    if not l.f2.is_injective():
        raise DiagramError("bottom row: f' is not injective", square="bottom")
    bottom = check_exact(LongSequence.from_maps([l.f2, l.g2]))
    if not bottom.exact:
        raise DiagramError(f"bottom row not exact at B': {bottom.nodes[0].reason}", square="bottom")


def restrict(f: GroupMap, src: GroupMap, tgt: GroupMap) -> GroupMap:
    """``f`` restricted to ``im src`` and corestricted to ``im tgt`` (as subgroup maps)."""
    cols = [lift(tgt, f(x)) for x in src.images()]
    return GroupMap.from_images(src.domain, tgt.domain, cols)


def descend(f: GroupMap, src: GroupMap, tgt: GroupMap) -> GroupMap:
    """Map of quotients ``src.codomain -> tgt.codomain`` induced by ``f``."""
    Q = src.codomain
    cols = [tgt(f(lift(src, e))) for e in Q.generators()]
    return GroupMap.from_images(Q, tgt.codomain, cols)


@dataclass(frozen=True)
class SnakeResult:
    sequence: LongSequence
    delta: GroupMap
    ker_inclusions: tuple[GroupMap, GroupMap, GroupMap]
    coker_projections: tuple[GroupMap, GroupMap, GroupMap]
    report: ExactnessReport


def connecting_element(l: LadderDiagram, x: Sequence[int], proj_alpha: GroupMap) -> Element:
    """Element chase for ``x`` in ``ker gamma``: lift, push down, pull back."""
    b = lift(l.g, x)
    a2 = lift(l.f2, l.beta(b))
    return proj_alpha(a2)


def snake(l: LadderDiagram) -> SnakeResult:
    """``ker a -> ker b -> ker c -> coker a -> coker b -> coker c``, exact."""
    _check_snake_hypotheses(l)
    Ka, ia = kernel(l.alpha)
    Kb, ib = kernel(l.beta)
    Kc, ic = kernel(l.gamma)
    Ca, pa = cokernel(l.alpha)
    Cb, pb = cokernel(l.beta)
    Cc, pc = cokernel(l.gamma)

    k1 = restrict(l.f, ia, ib)
    k2 = restrict(l.g, ib, ic)
    delta = GroupMap.from_images(Kc, Ca, [connecting_element(l, ic(e), pa) for e in Kc.generators()])
    # lifts differ by elements of ker g = im f, which must die in coker alpha
    for a in l.f.domain.generators():
        shift = pa(lift(l.f2, l.beta(l.f(a))))
        if any(shift):
            raise DiagramError("connecting map depends on the choice of lift", square="delta")
    c1 = descend(l.f2, pa, pb)
    c2 = descend(l.g2, pb, pc)
    seq = LongSequence.from_maps([k1, k2, delta, c1, c2])
    return SnakeResult(seq, delta, (ia, ib, ic), (pa, pb, pc), check_exact(seq))
