"""Assignments meeting the average, the exhaustive oracle and the
above-average decision pipeline."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .dyadic import DyadicRational
from .formula import FALSE, TRUE, Assignment, CnfFormula, asat
from .lin2 import DEFAULT_BUDGET, BudgetExceeded, brute_force_max_excess, reduce_fixpoint, threshold_yes
from .reduction import cnf_to_lin2, formula_scale


class Answer(str, enum.Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


class Mechanism(str, enum.Enum):
    TRIVIAL_K0 = "trivial-k0"
    THRESHOLD = "threshold-certificate"
    EXHAUSTION = "kernel-exhaustion"
    BUDGET = "budget-exceeded"


# -- conditional expectations ---------------------------------------------

def conditional_expectation(f: CnfFormula, partial: Mapping[int, int]) -> DyadicRational:
    """Expected satisfied clauses with ``partial`` fixed and the rest uniform.

    ``partial`` must assign exactly the variables ``1..t`` for some ``t``.
    """
    t = len(partial)
    if set(partial) != set(range(1, t + 1)):
        raise ValueError("partial assignment must cover a prefix 1..t of the variables")
    if t > f.num_vars:
        raise ValueError("partial assignment longer than the formula")
    numer = 0
    exp = f.max_width
    for clause in f.clauses:
        free = 0
        satisfied = False
        for lit in clause:
            if lit.variable > t:
                free += 1
            elif lit.satisfied_by(partial[lit.variable]):
                satisfied = True
                break
        if satisfied:
            numer += 1 << exp
        elif free:
            numer += ((1 << free) - 1) << (exp - free)
    return DyadicRational(numer, exp)


def derandomized_assignment(f: CnfFormula) -> Assignment:
    """Greedy fixing by conditional expectation, TRUE on ties."""
    partial: dict[int, int] = {}
    for v in range(1, f.num_vars + 1):
        partial[v] = TRUE
        e_true = conditional_expectation(f, partial)
        partial[v] = FALSE
        e_false = conditional_expectation(f, partial)
        partial[v] = TRUE if e_true >= e_false else FALSE
    return Assignment(tuple(partial[v] for v in range(1, f.num_vars + 1)))


# -- exhaustive oracle -----------------------------------------------------

def oracle_max_sat(
    f: CnfFormula, budget: int = DEFAULT_BUDGET, chunk_bits: int = 20
) -> tuple[int, Assignment]:
    """Maximum number of satisfied clauses over all ``2**n`` assignments.

    Clauses are evaluated directly on bit-encoded assignments. The witness is
    the lexicographically least maximizer (FALSE before TRUE, x1 first).
    """
    n = f.num_vars
    if n > budget:
        raise BudgetExceeded(n, budget)
    pos = np.zeros(len(f.clauses), dtype=np.int64)
    neg = np.zeros(len(f.clauses), dtype=np.int64)
    for j, clause in enumerate(f.clauses):
        for lit in clause:
            bit = 1 << (n - lit.variable)
            if lit.positive:
                pos[j] |= bit
            else:
                neg[j] |= bit
    best_count, best_x = -1, 0
    step = 1 << min(chunk_bits, n)
    for start in range(0, 1 << n, step):
        xs = np.arange(start, start + step, dtype=np.int64)
        unsat = np.zeros(step, dtype=np.int64)
        for p, q in zip(pos, neg):
            unsat += ((xs & p) == 0) & ((xs & q) == q)
        i = int(np.argmin(unsat))
        count = len(f.clauses) - int(unsat[i])
        if count > best_count:
            best_count, best_x = count, start + i
    return best_count, Assignment.from_bits(best_x, n)


# -- decision pipeline -----------------------------------------------------

@dataclass(frozen=True)
class DecisionOutcome:
    answer: Answer
    mechanism: Mechanism
    k: int
    k2: int
    r_used: int
    kernel_vars: Optional[int] = None
    twice_excess_max: Optional[int] = None
    witness: Optional[Assignment] = None
    witness_kernel_only: bool = False

    def to_dict(self) -> dict:
        return {
            "answer": self.answer.value,
            "mechanism": self.mechanism.value,
            "k": self.k,
            "k2": self.k2,
            "r_used": self.r_used,
            "kernel_vars": self.kernel_vars,
            "twice_excess_max": self.twice_excess_max,
            "witness": list(self.witness.values) if self.witness is not None else None,
            "witness_kernel_only": self.witness_kernel_only,
        }


def decide_above_average(
    f: CnfFormula, k: int, budget: int = DEFAULT_BUDGET
) -> DecisionOutcome:
    """Is there an assignment satisfying at least ``asat(f) + k`` clauses?

    The instance is reduced to Lin2, kernelized, and then either certified
    by the threshold theorem or solved exhaustively on the kernel. When the
    kernel exceeds ``budget`` live variables the answer is UNKNOWN.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return DecisionOutcome(
            Answer.YES, Mechanism.TRIVIAL_K0, 0, 0, formula_scale(f),
            witness=derandomized_assignment(f),
        )
    system, k2, r_used = cnf_to_lin2(f, k)
    kernel, _ = reduce_fixpoint(system)
    n_live = len(kernel.live_variables)
    if threshold_yes(kernel, k2, check=False):
        return DecisionOutcome(Answer.YES, Mechanism.THRESHOLD, k, k2, r_used, kernel_vars=n_live)
    if n_live > budget:
        return DecisionOutcome(Answer.UNKNOWN, Mechanism.BUDGET, k, k2, r_used, kernel_vars=n_live)
    best, kernel_witness = brute_force_max_excess(kernel, budget)
    # 2 * eps_J >= 2 * k2 = k * 2**r_used
    if best < 2 * k2:
        return DecisionOutcome(
            Answer.NO, Mechanism.EXHAUSTION, k, k2, r_used, n_live, twice_excess_max=best
        )
    if f.num_vars <= budget:
        _, witness = oracle_max_sat(f, budget)
        kernel_only = False
    else:
        witness, kernel_only = kernel_witness, True
    return DecisionOutcome(
        Answer.YES, Mechanism.EXHAUSTION, k, k2, r_used, n_live,
        twice_excess_max=best, witness=witness, witness_kernel_only=kernel_only,
    )


def ground_truth(f: CnfFormula, k: int, budget: int = DEFAULT_BUDGET) -> bool:
    """``sat(f) >= asat(f) + k`` by exhaustion, in exact arithmetic."""
    best, _ = oracle_max_sat(f, budget)
    return best >= asat(f) + k


# -- regimes ---------------------------------------------------------------

@dataclass(frozen=True)
class RegimeReport:
    r_max: int
    n: int
    ceil_log_n: Optional[int]
    loglog_n: Optional[float]
    xp_bound: Optional[float]
    regime: str

    def to_dict(self) -> dict:
        return {
            "r_max": self.r_max,
            "n": self.n,
            "ceil_log_n": self.ceil_log_n,
            "loglog_n": self.loglog_n,
            "xp_bound": self.xp_bound,
            "regime": self.regime,
        }


def _log2(x: Optional[float]) -> Optional[float]:
    if x is None or x <= 0:
        return None
    return math.log2(x)


def classify_regime(f: CnfFormula) -> RegimeReport:
    return regime_for(f.num_vars, f.max_width)


def regime_for(n: int, r: int) -> RegimeReport:
    """Place the clause width against the ``log log n`` thresholds.

    ``fpt-xp``: ``r <= log log n - log log log n``; ``hard``:
    ``r >= log log n``; in between is ``intermediate``. Below ``n = 16``
    the iterated logarithms are too small to mean anything (``small-n``).
    """
    log_n = _log2(n)
    ceil_log = (n - 1).bit_length() if n >= 1 else None
    loglog = _log2(log_n)
    logloglog = _log2(loglog)
    bound = loglog - logloglog if loglog is not None and logloglog is not None else None
    if n < 16:
        regime = "small-n"
    elif r <= bound:
        regime = "fpt-xp"
    elif r >= loglog:
        regime = "hard"
    else:
        regime = "intermediate"
    return RegimeReport(r, n, ceil_log, loglog, bound, regime)
