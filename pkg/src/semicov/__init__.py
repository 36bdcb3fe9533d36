"""Numerical semigroups organised by covarieties.

The pieces most callers need are re-exported here; see the submodules for the
rest (``semigroup``, ``covariety``, ``frobenius``, ``oracle``, ``cli``).
"""

from .covariety import (
    Covariety,
    CSet,
    ChainCad,
    EnumerationTree,
    chain_cad,
    closure,
    generated_covariety,
    make_cset,
    minimal_csystems,
    rank,
    tree,
    validate,
)
from .frobenius import (
    af_closure,
    af_minimal_system,
    af_rank,
    delta,
    enumerate_af,
    iter_af,
    max_rank_genus,
    max_rank_members,
    rank1_classify,
    rank1_genus,
)
from .semigroup import (
    NATURALS,
    AperyTable,
    NumericalSemigroup,
    apery_maximals,
    apery_swap,
    from_gaps,
    from_generators,
    intersect,
    is_med,
    med_genus,
    med_lift,
    med_unlift,
    ordinary,
    parse,
    remove_element,
)

__version__ = "0.1.0"
