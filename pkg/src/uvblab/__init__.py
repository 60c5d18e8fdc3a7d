"""Block-multiplication lab: tensor products of finite vectors, norm oracles
and greedy-basis constants for sequence spaces."""

from .vectors import (
    FiniteVector,
    Functional,
    PowerSizeError,
    basis_vector,
    composition_index_sets,
    indicator,
    indicator_of_set,
    multinomial_power,
    pair,
    power,
    tensor_mul,
)
from .spaces import DescriptorError, NormOracle, SpaceDescriptor, make_oracle, norm, oracle_for, parse_space
from .tsirelson import (
    NormingFunctionalSet,
    WindowError,
    generate_norming_set,
    pconvex_norm,
    tsirelson_norm,
)
from .duality import DualBracket, dual_norm
from .samplers import Sampler, parse_sampler
from .reports import ConstantReport
from .greedy import (
    BudgetExceeded,
    FundamentalTable,
    bidemocracy_profile,
    ccu_constant,
    democracy_constant,
    dual_fundamental_function,
    fundamental_function,
    fundamental_table,
    quasi_greedy_constant,
    sign_average,
)
from .harness import (
    ExponentFit,
    SuiteConfig,
    SuiteReport,
    difference_basis_check,
    dual_q_estimate_check,
    ell1_average_slope,
    elton_subset_search,
    fit_exponent,
    k_ratio_stats,
    lambda_grid,
    power_condition_profile,
    run_suite,
    shift_equivalence,
    upper_p_estimate_check,
)

__version__ = "0.1.0"
