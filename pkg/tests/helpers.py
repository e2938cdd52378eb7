"""Random groups, maps and ladders for property and acceptance tests."""

from __future__ import annotations

import random
from math import gcd

from kkcalc.graded import GradedGroup
from kkcalc.groups import FgaGroup, GroupMap, cokernel, direct_sum, lift, subgroup
from kkcalc.sequences import LadderDiagram


def rand_fga(rng: random.Random, max_free=2, max_cyclic=3, max_mod=12) -> FgaGroup:
    orders = [0] * rng.randint(0, max_free)
    orders += [rng.randint(2, max_mod) for _ in range(rng.randint(0, max_cyclic))]
    return FgaGroup.from_orders(orders)


def rand_finite(rng: random.Random, max_order=64, max_cyclic=3) -> FgaGroup:
    orders, total = [], 1
    for _ in range(rng.randint(0, max_cyclic)):
        d = rng.randint(2, 12)
        if total * d > max_order:
            break
        orders.append(d)
        total *= d
    return FgaGroup.from_orders(orders)


def rand_torsion_fga(rng: random.Random, max_cyclic=2, max_mod=12) -> FgaGroup:
    return rand_fga(rng, 0, max_cyclic, max_mod)


def rand_graded(rng: random.Random, **kw) -> GradedGroup:
    return GradedGroup(rand_fga(rng, **kw), rand_fga(rng, **kw))


def rand_element(rng: random.Random, G: FgaGroup, free_bound=5):
    return tuple(rng.randint(-free_bound, free_bound) if m == 0 else rng.randrange(m)
                 for m in G.moduli)


def rand_map(rng: random.Random, G: FgaGroup, H: FgaGroup, free_bound=3) -> GroupMap:
    """A random homomorphism: torsion generators go to suitably divisible torsion elements."""
    cols = []
    e = H.exponent
    for d in G.moduli:
        y = list(rand_element(rng, H, free_bound))
        if d:
            # a generator of order d must land in H[d]
            k = e // gcd(e, d)
            y = [0 if m == 0 else (k * a) % m for a, m in zip(y, H.moduli)]
        cols.append(y)
    return GroupMap.from_images(G, H, cols)


def rand_subgroup_embedding(rng: random.Random, G: FgaGroup, max_gens=3) -> GroupMap:
    gens = [rand_element(rng, G) for _ in range(rng.randint(0, max_gens))]
    gens = [G.normalize(g) for g in gens]
    return subgroup(G, gens)[1]


def rand_ladder(rng: random.Random, max_order=64) -> LadderDiagram:
    """A random ladder with top row ``A1 + K -> M + Y -> coker -> 0`` and bottom row
    ``0 -> A' -> B' -> B'/A'``.

    ``f`` kills the summand ``K``; ``alpha`` is random on ``A1`` and zero on
    ``K``; ``beta(m, y) = f2(alpha(s(m))) + phi(y)`` where ``M = A1`` and ``s``
    is the identity.  Commutativity then holds by construction.
    """
    A1 = rand_finite(rng, 8, 2)
    K = rand_finite(rng, 4, 1)
    Y = rand_finite(rng, max(1, max_order // max(1, A1.order)), 2)
    Bp = rand_finite(rng, max_order, 3)
    Ap_inc = rand_subgroup_embedding(rng, Bp, 2)
    Ap = Ap_inc.domain

    A = direct_sum(A1, K)
    B = direct_sum(A1, Y)
    f = B.injections[0].compose(A.projections[0])
    C, g = cokernel(f)
    Cp, g2 = cokernel(Ap_inc)

    alpha1 = rand_map(rng, A1, Ap)
    alpha = alpha1.compose(A.projections[0])
    phi = rand_map(rng, Y, Bp)
    beta = Ap_inc.compose(alpha1).compose(B.projections[0]) + phi.compose(B.projections[1])
    # gamma is induced on cokernels: gamma(g(b)) = g2(beta(b))
    gamma = GroupMap.from_images(C, Cp, [g2(beta(lift(g, c))) for c in C.generators()])
    return LadderDiagram(f, g, Ap_inc, g2, alpha, beta, gamma)
