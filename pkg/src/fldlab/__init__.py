"""Fractional local dimension of posets: exact LPs on small posets, the
reduced LP for the subset family P(1,d;n), and its continuous limit."""

from .continuous import (ContinuousProfile, asymptotic_ratio, beta, check_construction,
                         continuous_reduced_lp, g_fn, r_cont, r_xy, solve_profile)
from .family import (BlockTemplate, binomial, max_preserving_template, max_reversing_template,
                     r_closed_form, r_summation, realize_template, reduced_lp_bound)
from .fldim import WeightFunction, build_fldim_model, fdim_exact, fldim_exact, verify_realizer
from .lp import LpModel, LpSolution, certify, lp_solve
from .ple import (CoverageSignature, PleStats, bipartite_stats, coverage_signature,
                  enumerate_ples, is_ple)
from .poset import (Poset, antichain, build_named, chain, dimension_brute, dual,
                    incomparable_ordered_pairs, parse_poset, poset_from_relations, read_poset,
                    standard_example, subset_family)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
