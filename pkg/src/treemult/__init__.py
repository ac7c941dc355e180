"""Exact eigenvalue-multiplicity toolkit for trees.

Computes multiplicities m(T, lambda) of adjacency eigenvalues of trees with
exact integer arithmetic, classifies trees into the recursive families whose
multiplicity sits one or two below the pendant-vertex count, generates family
members, and runs exhaustive verification sweeps over all small trees and all
path-type (Chebyshev form) eigenvalues.
"""

from treemult.poly import (
    InvalidSpecError,
    LambdaSpec,
    NonDivisibleError,
    Polynomial,
    cyclotomic,
    exact_div,
    minimal_poly,
    palindromic_descend,
    path_charpoly,
    squarefree_decompose,
)
from treemult.tree import (
    LimitExceededError,
    MalformedGraph6Error,
    NotATreeError,
    Tree,
    delete_vertex,
    emit_graph6,
    enumerate_trees,
    major_count,
    parse_graph6,
    pendant_count,
)
from treemult.spectrum import (
    char_poly,
    eigen_support_audit,
    multiplicity,
    multiplicity_via_rank,
)
from treemult.families import (
    BROAD,
    STRICT,
    FamilyResult,
    Gamma2Mode,
    classify,
    generate,
    is_gamma0,
    is_gamma2_0,
)
from treemult.verify import (
    SweepConfig,
    chebyshev_completeness_audit,
    lemma_suite,
    sweep,
)

__version__ = "0.1.0"
