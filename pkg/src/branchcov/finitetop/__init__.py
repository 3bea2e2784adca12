"""Finite topological spaces, quasi-coverings and branched coverings by exhaustive search."""

from branchcov.finitetop.covering import (
    Analysis,
    BranchedResult,
    NeighborhoodFamily,
    branching_locus,
    characteristic_families,
    distinguished_neighborhood,
    is_branched_covering,
    is_quasi_covering,
)
from branchcov.finitetop.fuzz import Summary, fuzz, random_instance, sweep
from branchcov.finitetop.lemmas import LemmaVerdict, check_lemma, lemma_ids, replay, run_registry
from branchcov.finitetop.space import FinMap, FinSpace, continuous_maps, enumerate_spaces, quasi_coverings

__all__ = [
    "Analysis",
    "BranchedResult",
    "FinMap",
    "FinSpace",
    "LemmaVerdict",
    "NeighborhoodFamily",
    "Summary",
    "branching_locus",
    "characteristic_families",
    "check_lemma",
    "continuous_maps",
    "distinguished_neighborhood",
    "enumerate_spaces",
    "fuzz",
    "is_branched_covering",
    "is_quasi_covering",
    "lemma_ids",
    "quasi_coverings",
    "random_instance",
    "replay",
    "run_registry",
    "sweep",
]
