"""Exact computations with finitely generated abelian groups and KK-theory shadows."""

from kkcalc.errors import (DiagramError, HypothesisViolation, IllFormedMap, InvalidElement,
                           JobFileError, KKCalcError, NotExact, ParseError)
from kkcalc.groups import (FgaGroup, GroupMap, cokernel, direct_sum, image, intersection, kernel,
                           snf, subgroup)
from kkcalc.graded import GradedGroup, GradedMap, GradedSubgroup, suspend
from kkcalc.functors import ext, hom, induced_map, pext, pontryagin_dual, tensor, tor
from kkcalc.sequences import (LadderDiagram, LongSequence, ShortExactSeq, check_exact, is_split,
                              snake)
from kkcalc.decomp import (decompose, is_pure, is_summand, primary_decomposition, realize,
                           realize_torsion, torsion_subgroup, torsionfree_quotient)
from kkcalc.kkengine import (closure_of_zero, coefficients, four_way, k_dual, kk, kunneth_product,
                             split_2_1, split_2_6, thm_4_3_check, thm_4_4_sequence)
from kkcalc._kernels import backend

__version__ = "0.1.0"

__all__ = [
    "DiagramError", "HypothesisViolation", "IllFormedMap", "InvalidElement", "JobFileError",
    "KKCalcError", "NotExact", "ParseError", "FgaGroup", "GroupMap", "cokernel", "direct_sum",
    "image", "intersection", "kernel", "snf", "subgroup", "GradedGroup", "GradedMap",
    "GradedSubgroup", "suspend", "ext", "hom", "induced_map", "pext", "pontryagin_dual", "tensor",
    "tor", "LadderDiagram", "LongSequence", "ShortExactSeq", "check_exact", "is_split", "snake",
    "decompose", "is_pure", "is_summand", "primary_decomposition", "realize", "realize_torsion",
    "torsion_subgroup", "torsionfree_quotient", "closure_of_zero", "coefficients", "four_way",
    "k_dual", "kk", "kunneth_product", "split_2_1", "split_2_6", "thm_4_3_check",
    "thm_4_4_sequence", "backend", "__version__",
]
