"""Exact p-adic congruence checks between polynomial coefficients and
power sums of roots, with a semisimplification comparator for integer
operators and eigenvalue-multiplicity recovery at finite precision."""

from .exact_arith import (
    INF,
    RATIONAL,
    EisensteinRing,
    GaloisRing,
    IdealSpec,
    MonicPoly,
    is_divided_power,
    mobius,
    multinomial_valuation,
    teichmueller,
    valuation,
)
from .partitions import (
    Partition,
    are_p_equivalent,
    enumerate_partitions,
    p_deprived_representative,
    p_equivalence_class,
    partition_stats,
)
from .symfunc import (
    SymFuncExpr,
    basis_element,
    class_sum,
    convert,
    e_in_p_basis,
    evaluate,
    is_p_integral,
    newton_power_sum,
    newton_power_sums,
    p_in_e_basis,
    power_polynomial,
)
from .series import (
    TruncatedSeries,
    artin_hasse,
    class_sum_series,
    powersum_gf,
    series_exp,
    series_log,
)
from .congruence import (
    CongruenceReport,
    check_deep_powersum,
    check_elementary,
    theorem_verdict,
)
from .module_compare import (
    IntMatrix,
    MultiplicityVector,
    charpoly_mod_p,
    companion,
    embedding_possible,
    invariant_factors_mod_p,
    recover_multiplicities,
    ss_isomorphic,
    synthesize_traces,
    trace_powers,
    virtual_compare,
)

__version__ = "0.1.0"
