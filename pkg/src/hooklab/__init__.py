"""hooklab: exact and high-precision verification of t-hook q-bracket
identities, Eichler-integral transformation laws, and a Chowla-Selberg
period identity."""

from .partitions import (
    EnumerationCapError,
    HookMultiset,
    Partition,
    PartitionStatistic,
    enumerate_partitions,
    hook_multiset,
    stat_D_s,
    stat_F_tyw,
    stat_f_t,
)
from .qseries import (
    RationalSeries,
    eta_expansion,
    euler_product,
    lambert_series,
    sigma_series,
)
from .brackets import (
    BracketReport,
    q_bracket,
    verify_exp_identity,
    verify_han,
    verify_nekrasov_okounkov,
    verify_size_bracket,
    verify_theorem1,
    weighted_sum,
)
from .modeval import (
    PrecComplex,
    UpperHalfPoint,
    check_berndt,
    check_eta_inversion,
    check_h1star_laws,
    check_inversion,
    check_translation,
    eval_E,
    eval_eta,
    eval_H_t_star,
    eval_M_t,
    eval_Psi,
)
from .chowla_selberg import (
    class_number,
    cs_algebraic_ratio,
    cs_combination,
    h_prime,
    kronecker_symbol,
    omega_D,
    probe_algebraicity,
)

__version__ = "0.1.0"
