"""Z/2-graded groups and graded homomorphisms.

Degrees are 0 (even, ``K_0``) and 1 (odd, ``K_1``); every index is taken
mod 2.  A graded map of degree ``k`` sends the degree-``i`` component of its
source to the degree-``i + k`` component of its target.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from kkcalc.errors import IllFormedMap
from kkcalc.groups import Element, FgaGroup, GroupMap, direct_sum as _direct_sum, subgroup


@dataclass(frozen=True)
class GradedGroup:
    even: FgaGroup = FgaGroup()
    odd: FgaGroup = FgaGroup()

    def __getitem__(self, j: int) -> FgaGroup:
        return self.odd if j % 2 else self.even

    @property
    def components(self) -> tuple[FgaGroup, FgaGroup]:
        return (self.even, self.odd)

    @property
    def is_trivial(self) -> bool:
        return self.even.is_trivial and self.odd.is_trivial

    @property
    def is_torsion(self) -> bool:
        return self.even.free_rank == 0 and self.odd.free_rank == 0

    @property
    def is_free(self) -> bool:
        return self.even.is_free and self.odd.is_free

    @property
    def total_rank(self) -> int:
        return self.even.free_rank + self.odd.free_rank

    def __str__(self):
        return f"[{self.even} ; {self.odd}]"


def graded(even: FgaGroup | None = None, odd: FgaGroup | None = None) -> GradedGroup:
    return GradedGroup(even or FgaGroup(), odd or FgaGroup())


@dataclass(frozen=True)
class GradedMap:
    """``maps[i]`` is the component ``source[i] -> target[i + degree]``."""

    source: GradedGroup
    target: GradedGroup
    degree: int
    even_map: GroupMap
    odd_map: GroupMap

    def __post_init__(self):
        object.__setattr__(self, "degree", self.degree % 2)
        for i, f in enumerate((self.even_map, self.odd_map)):
            if f.domain != self.source[i] or f.codomain != self.target[i + self.degree]:
                raise IllFormedMap(
                    f"degree-{i} component {f.domain} -> {f.codomain} does not match "
                    f"{self.source[i]} -> {self.target[i + self.degree]}")

    def __getitem__(self, i: int) -> GroupMap:
        return self.odd_map if i % 2 else self.even_map

    @classmethod
    def identity(cls, G: GradedGroup) -> GradedMap:
        return cls(G, G, 0, GroupMap.identity(G.even), GroupMap.identity(G.odd))

    @classmethod
    def zero(cls, G: GradedGroup, H: GradedGroup, degree: int = 0) -> GradedMap:
        return cls(G, H, degree, GroupMap.zero(G[0], H[degree]), GroupMap.zero(G[1], H[degree + 1]))

    @classmethod
    def from_components(cls, source: GradedGroup, target: GradedGroup, degree: int,
                        maps: Sequence[GroupMap]) -> GradedMap:
        return cls(source, target, degree, maps[0], maps[1])

    def compose(self, other: GradedMap) -> GradedMap:
        """``self o other``; degrees add mod 2."""
        if other.target != self.source:
            raise IllFormedMap("graded maps are not composable")
        k = other.degree
        return GradedMap(other.source, self.target, k + self.degree,
                         self[k].compose(other[0]), self[1 + k].compose(other[1]))

    def __call__(self, i: int, x: Sequence[int]) -> Element:
        return self[i](x)

    def is_injective(self) -> bool:
        return self.even_map.is_injective() and self.odd_map.is_injective()

    def is_surjective(self) -> bool:
        return self.even_map.is_surjective() and self.odd_map.is_surjective()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


@dataclass(frozen=True)
class GradedSubgroup:
    """Generators (coordinate vectors) of a subgroup of ``ambient``, per degree."""

    ambient: GradedGroup
    even_generators: tuple[Element, ...] = ()
    odd_generators: tuple[Element, ...] = ()

    def generators(self, j: int) -> tuple[Element, ...]:
        return self.odd_generators if j % 2 else self.even_generators


def suspend(G: GradedGroup) -> GradedGroup:
    """Parity swap ``K_j(SA) = K_{j-1}(A)``."""
    return GradedGroup(G.odd, G.even)


def suspension_iso(G: GradedGroup) -> GradedMap:
    """The degree-one identification ``G -> suspend(G)``."""
    S = suspend(G)
    return GradedMap(G, S, 1, GroupMap.identity(G.even), GroupMap.identity(G.odd))


def direct_sum(G: GradedGroup, H: GradedGroup) -> GradedGroup:
    return GradedGroup(_direct_sum(G.even, H.even).group, _direct_sum(G.odd, H.odd).group)


def graded_subgroup_close(S: GradedSubgroup) -> tuple[GradedGroup, GradedMap]:
    """Subgroup generated by ``S`` in canonical form, with its degree-0 inclusion."""
    even, inc0 = subgroup(S.ambient.even, S.even_generators)
    odd, inc1 = subgroup(S.ambient.odd, S.odd_generators)
    H = GradedGroup(even, odd)
    return H, GradedMap(H, S.ambient, 0, inc0, inc1)
