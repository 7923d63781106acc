"""Weighted systems of parity equations over {-1, +1} (MaxLin2).

An equation ``prod_{i in I} x_i = b`` with weight ``w`` contributes
``w * b * prod x_i`` to twice the excess of an assignment. The two
kernelization rules live here along with an exhaustive maximizer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .formula import FALSE, TRUE, Assignment, AssignmentLike, as_assignment

DEFAULT_BUDGET = 24


class Lin2Error(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Exhaustive search would exceed the configured variable budget."""

    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{needed} variables exceed the exhaustive-search budget of {budget}")


@dataclass(frozen=True)
class Lin2Equation:
    support: tuple[int, ...]
    rhs: int
    weight: int

    def __post_init__(self) -> None:
        support = tuple(sorted(self.support))
        object.__setattr__(self, "support", support)
        if not support:
            raise Lin2Error("equation support must be nonempty")
        if len(set(support)) != len(support):
            raise Lin2Error(f"repeated variable in support {support}")
        if support[0] < 1:
            raise Lin2Error("variable indices start at 1")
        if self.rhs not in (1, -1):
            raise Lin2Error(f"rhs must be 1 or -1, got {self.rhs}")
        if not isinstance(self.weight, (int, np.integer)) or self.weight < 1:
            raise Lin2Error(f"weight must be a positive integer, got {self.weight}")
        object.__setattr__(self, "weight", int(self.weight))

    @property
    def coefficient(self) -> int:
        """Signed weight ``c_j = w_j * b_j``."""
        return self.weight * self.rhs

    @property
    def mask(self) -> int:
        m = 0
        for v in self.support:
            m |= 1 << (v - 1)
        return m

    def value(self, values: Sequence[int]) -> int:
        prod = 1
        for v in self.support:
            prod *= values[v - 1]
        return prod

    def satisfied_by(self, values: Sequence[int]) -> bool:
        return self.value(values) == self.rhs

    def __str__(self) -> str:
        lhs = "*".join(f"x{v}" for v in self.support)
        return f"{lhs} = {self.rhs} (w={self.weight})"


@dataclass(frozen=True)
class Lin2System:
    num_vars: int
    equations: tuple[Lin2Equation, ...] = ()

    def __post_init__(self) -> None:
        eqs = tuple(self.equations)
        object.__setattr__(self, "equations", eqs)
        if self.num_vars < 0:
            raise Lin2Error("num_vars must be nonnegative")
        for eq in eqs:
            if eq.support[-1] > self.num_vars:
                raise Lin2Error(f"support {eq.support} exceeds num_vars={self.num_vars}")

    @classmethod
    def build(cls, num_vars: int, eqs: Iterable[tuple[Iterable[int], int, int]]) -> Lin2System:
        """From ``(support, rhs, weight)`` triples."""
        return cls(num_vars, tuple(Lin2Equation(tuple(s), b, w) for s, b, w in eqs))

    def __len__(self) -> int:
        return len(self.equations)

    @property
    def total_weight(self) -> int:
        return sum(eq.weight for eq in self.equations)

    @property
    def live_variables(self) -> tuple[int, ...]:
        live: set[int] = set()
        for eq in self.equations:
            live.update(eq.support)
        return tuple(sorted(live))

    @property
    def max_arity(self) -> int:
        return max((len(eq.support) for eq in self.equations), default=0)


def lin2_excess_twice(s: Lin2System, a: AssignmentLike) -> int:
    """``sum_j w_j b_j prod_{i in I_j} a_i``: satisfied minus unsatisfied weight."""
    values = as_assignment(a, s.num_vars).values
    return sum(eq.coefficient * eq.value(values) for eq in s.equations)


# -- reduction rules -------------------------------------------------------

@dataclass(frozen=True)
class MergeStep:
    """Equations (by index into the step's input) combined into one.

    ``groups[k]`` lists the input indices sharing a support; the k-th
    group either produced output equation ``k'`` or vanished (zero weight).
    """

    groups: tuple[tuple[int, ...], ...]
    deleted_groups: tuple[int, ...]
    rule: str = "merge"


@dataclass(frozen=True)
class RankStep:
    basis: tuple[int, ...]
    deleted_variables: tuple[int, ...]
    rule: str = "rank"


TraceStep = Union[MergeStep, RankStep]


@dataclass
class ReductionTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def extend(self, other: ReductionTrace) -> None:
        self.steps.extend(other.steps)

    def replay(self, s: Lin2System) -> Lin2System:
        """Re-apply the recorded steps to ``s`` without re-deciding anything."""
        for step in self.steps:
            if isinstance(step, MergeStep):
                s = _apply_merge(s, step.groups)
            else:
                s = _apply_rank(s, set(step.basis))
        return s

    def summary(self) -> dict:
        merged = sum(len(g) - 1 for st in self.steps if isinstance(st, MergeStep) for g in st.groups)
        deleted_eqs = sum(len(st.deleted_groups) for st in self.steps if isinstance(st, MergeStep))
        deleted_vars = sum(len(st.deleted_variables) for st in self.steps if isinstance(st, RankStep))
        return {
            "steps": len(self.steps),
            "merge_steps": sum(isinstance(st, MergeStep) for st in self.steps),
            "rank_steps": sum(isinstance(st, RankStep) for st in self.steps),
            "equations_merged": merged,
            "equations_cancelled": deleted_eqs,
            "variables_deleted": deleted_vars,
        }


def _apply_merge(s: Lin2System, groups: Sequence[Sequence[int]]) -> Lin2System:
    out = []
    for group in groups:
        first = s.equations[group[0]]
        c = sum(s.equations[i].coefficient for i in group)
        if c:
            out.append(Lin2Equation(first.support, 1 if c > 0 else -1, abs(c)))
    return Lin2System(s.num_vars, tuple(out))


def merge_rule(s: Lin2System) -> tuple[Lin2System, ReductionTrace]:
    """Collapse equations with identical supports.

    Equal right-hand sides add weights; opposite ones keep the heavier
    equation with the weight difference; a zero result is dropped. Groups
    appear in order of first occurrence.
    """
    by_support: dict[tuple[int, ...], list[int]] = {}
    for j, eq in enumerate(s.equations):
        by_support.setdefault(eq.support, []).append(j)
    groups = tuple(tuple(g) for g in by_support.values())
    out = _apply_merge(s, groups)
    trace = ReductionTrace()
    if out != s:
        deleted = tuple(
            k for k, g in enumerate(groups) if sum(s.equations[i].coefficient for i in g) == 0
        )
        trace.steps.append(MergeStep(groups, deleted))
    return out, trace


def column_basis(rows: Sequence[int], num_cols: int) -> list[int]:
    """Greedy left-to-right independent columns of a GF(2) matrix.

    ``rows[j]`` is a bitmask with bit ``i-1`` set when column ``i`` is
    nonzero in row ``j``. Returns 1-based column indices.
    """
    pivots: dict[int, int] = {}  # leading bit -> reduced column vector
    basis = []
    for col in range(1, num_cols + 1):
        bit = 1 << (col - 1)
        vec = 0
        for j, row in enumerate(rows):
            if row & bit:
                vec |= 1 << j
        while vec:
            lead = vec.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = vec
                basis.append(col)
                break
            vec ^= pivots[lead]
    return basis


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of integer-bitmask rows."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = row
                break
            row ^= pivots[lead]
    return len(pivots)


def _apply_rank(s: Lin2System, keep: set[int]) -> Lin2System:
    out = []
    for eq in s.equations:
        support = tuple(v for v in eq.support if v in keep)
        # cannot be empty when keep is a column basis of the incidence matrix
        out.append(Lin2Equation(support, eq.rhs, eq.weight))
    return Lin2System(s.num_vars, tuple(out))


def rank_rule(s: Lin2System) -> tuple[Lin2System, ReductionTrace]:
    """Delete every variable outside a column basis of the incidence matrix.

    The basis is the lexicographically first one (greedy, lowest index
    first). Variable indices are not renumbered.
    """
    rows = [eq.mask for eq in s.equations]
    basis = column_basis(rows, s.num_vars)
    keep = set(basis)
    deleted = tuple(v for v in s.live_variables if v not in keep)
    trace = ReductionTrace()
    if not deleted:
        return s, trace
    trace.steps.append(RankStep(tuple(basis), deleted))
    return _apply_rank(s, keep), trace


def reduce_fixpoint(s: Lin2System) -> tuple[Lin2System, ReductionTrace]:
    """Alternate merge and rank until neither changes the system."""
    trace = ReductionTrace()
    while True:
        s, t_merge = merge_rule(s)
        trace.extend(t_merge)
        s, t_rank = rank_rule(s)
        trace.extend(t_rank)
        if not t_rank.steps:
            # rank was a no-op, so the merge output is still merge-stable
            return s, trace


def is_rule_stable(s: Lin2System) -> bool:
    return not merge_rule(s)[1].steps and not rank_rule(s)[1].steps


def threshold_yes(s: Lin2System, k2: int, *, check: bool = True) -> bool:
    """Kernel certificate: a reduced system with ``n' >= (2*k2 - 1)*r + 1``
    live variables has maximum excess at least ``k2``.

    ``r`` is the largest support size in ``s``.
    """
    if k2 < 1:
        raise ValueError("k2 must be positive")
    if check and not is_rule_stable(s):
        raise Lin2Error("threshold certificate needs a system reduced by both rules")
    n_live = len(s.live_variables)
    return n_live >= (2 * k2 - 1) * s.max_arity + 1


# -- exhaustive search -----------------------------------------------------

def _walsh_hadamard(a: np.ndarray) -> np.ndarray:
    """Unnormalized in-place fast Walsh-Hadamard transform."""
    n = a.shape[0]
    h = 1
    while h < n:
        view = a.reshape(-1, 2, h)
        lo = view[:, 0, :].copy()
        view[:, 0, :] += view[:, 1, :]
        view[:, 1, :] = lo - view[:, 1, :]
        h *= 2
    return a


def excess_table(s: Lin2System, variables: Sequence[int] | None = None) -> np.ndarray:
    """Twice the excess at every assignment of ``variables``.

    Entry ``x`` corresponds to ``Assignment.from_bits(x, len(variables))``
    restricted to ``variables`` (first variable is the most significant bit).
    """
    if variables is None:
        variables = s.live_variables
    t = len(variables)
    pos = {v: t - 1 - k for k, v in enumerate(variables)}
    bound = sum(eq.weight for eq in s.equations)
    dtype = np.int64 if bound < (1 << 62) else object
    table = np.zeros(1 << t, dtype=dtype)
    for eq in s.equations:
        mask = 0
        for v in eq.support:
            mask |= 1 << pos[v]
        table[mask] += eq.coefficient
    # sum_S c_S * (-1)^{|S & x|} is the Hadamard transform of c
    return _walsh_hadamard(table)


def brute_force_max_excess(
    s: Lin2System, budget: int = DEFAULT_BUDGET
) -> tuple[int, Assignment]:
    """Maximum of twice the excess over all assignments of the live variables.

    Non-live variables are FALSE in the witness; ties resolve to the
    lexicographically least maximizer (FALSE before TRUE, variable 1 first).
    """
    live = s.live_variables
    if len(live) > budget:
        raise BudgetExceeded(len(live), budget)
    table = excess_table(s, live)
    best = int(np.argmax(table))
    values = [FALSE] * s.num_vars
    t = len(live)
    for k, v in enumerate(live):
        if (best >> (t - 1 - k)) & 1:
            values[v - 1] = TRUE
    return int(table[best]), Assignment(tuple(values))


# -- text format -----------------------------------------------------------

def parse_lin2(text: Union[str, bytes]) -> Lin2System:
    """Read ``p lin2 <n> <m>`` followed by ``<weight> <rhs> <vars...> 0`` lines."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    eqs: list[Lin2Equation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None or len(parts) != 4 or parts[1] != "lin2":
                raise Lin2Error(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise Lin2Error(f"line {lineno}: malformed header {line!r}") from None
            continue
        if header is None:
            raise Lin2Error(f"line {lineno}: equation before header")
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise Lin2Error(f"line {lineno}: non-integer token in {line!r}") from None
        if len(nums) < 3 or nums[-1] != 0 or 0 in nums[2:-1]:
            raise Lin2Error(f"line {lineno}: expected '<weight> <rhs> <vars...> 0'")
        weight, rhs, support = nums[0], nums[1], nums[2:-1]
        if weight < 1:
            raise Lin2Error(f"line {lineno}: weight must be positive, got {weight}")
        if rhs not in (1, -1):
            raise Lin2Error(f"line {lineno}: rhs must be 1 or -1, got {rhs}")
        if not support:
            raise Lin2Error(f"line {lineno}: empty support")
        if any(v < 1 or v > header[0] for v in support):
            raise Lin2Error(f"line {lineno}: variable outside 1..{header[0]}")
        try:
            eqs.append(Lin2Equation(tuple(support), rhs, weight))
        except Lin2Error as exc:
            raise Lin2Error(f"line {lineno}: {exc}") from None
    if header is None:
        raise Lin2Error("missing 'p lin2' header")
    if len(eqs) != header[1]:
        raise Lin2Error(f"header declares {header[1]} equations, found {len(eqs)}")
    return Lin2System(header[0], tuple(eqs))


def serialize_lin2(s: Lin2System, comments: Sequence[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p lin2 {s.num_vars} {len(s.equations)}")
    for eq in s.equations:
        out.append(" ".join(str(x) for x in (eq.weight, eq.rhs, *eq.support, 0)))
    return "\n".join(out) + "\n"
