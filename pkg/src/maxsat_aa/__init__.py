"""MaxSat above average: exact averages, Lin2 kernelization and decision."""

from .dyadic import DyadicRational
from .formula import (
    FALSE,
    TRUE,
    Assignment,
    Clause,
    CnfFormula,
    DimacsError,
    FormulaError,
    Literal,
    asat,
    complete_set,
    count_satisfied,
    excess,
    parse_dimacs,
    serialize_dimacs,
)
from .lin2 import (
    BudgetExceeded,
    Lin2Equation,
    Lin2Error,
    Lin2System,
    ReductionTrace,
    brute_force_max_excess,
    lin2_excess_twice,
    merge_rule,
    parse_lin2,
    rank_rule,
    reduce_fixpoint,
    serialize_lin2,
    threshold_yes,
)
from .reduction import TermMap, build_H, cnf_to_lin2, eval_H, expand_clause
from .solver import (
    Answer,
    DecisionOutcome,
    Mechanism,
    RegimeReport,
    classify_regime,
    conditional_expectation,
    decide_above_average,
    derandomized_assignment,
    oracle_max_sat,
)
from .generator import (
    InfeasibleError,
    Theorem1Meta,
    gen_random_cnf,
    gen_random_kcnf,
    gen_random_lin2,
    gen_theorem1,
    pad_contradicting_units,
)

__version__ = "0.1.0"
