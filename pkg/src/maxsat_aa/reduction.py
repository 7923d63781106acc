"""CNF to MaxLin2 via the multilinear expansion of clause indicators.

For a clause ``c`` of width ``r_c`` and a scale ``r >= r_c`` let

    h_c(x) = 2**(r - r_c) * (1 - prod_{i in c} (1 + d_i x_i))

with ``d_i = +1`` for a positive literal and ``-1`` for a negated one.
Summed over the clauses this gives ``H(x) = 2**r * excess(x)``, and its
nonzero monomials become the equations of an equivalent Lin2 instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .formula import AssignmentLike, Clause, CnfFormula, as_assignment
from .lin2 import Lin2Equation, Lin2System


@dataclass
class TermMap:
    """Nonzero coefficients of a multilinear polynomial without constant term."""

    entries: dict[tuple[int, ...], int] = field(default_factory=dict)
    r_used: int = 0

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, key: tuple[int, ...], coeff: int) -> None:
        total = self.entries.get(key, 0) + coeff
        if total:
            self.entries[key] = total
        else:
            self.entries.pop(key, None)

    def merge(self, other: TermMap) -> None:
        for key, coeff in other.entries.items():
            self.add(key, coeff)

    def sorted_items(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.entries.items(), key=lambda kv: (len(kv[0]), kv[0]))


def expand_clause(c: Clause, r: int) -> TermMap:
    if r < len(c):
        raise ValueError(f"scale r={r} is smaller than clause width {len(c)}")
    scale = 1 << (r - len(c))
    lits = sorted(c.literals)
    out = TermMap(r_used=r)
    for size in range(1, len(lits) + 1):
        for subset in combinations(lits, size):
            sign = 1
            for lit in subset:
                sign *= lit.sign
            out.entries[tuple(lit.variable for lit in subset)] = -scale * sign
    return out


def formula_scale(f: CnfFormula) -> int:
    # a clause-free formula still needs r >= 1 so that k * 2**(r-1) is integral
    return max(f.max_width, 1)


def build_H(f: CnfFormula) -> TermMap:
    r = formula_scale(f)
    total = TermMap(r_used=r)
    for clause in f.clauses:
        total.merge(expand_clause(clause, r))
    return total


def eval_H(t: TermMap, a: AssignmentLike) -> int:
    values = as_assignment(a).values
    need = max((key[-1] for key in t.entries), default=0)
    if len(values) < need:
        raise ValueError(f"assignment covers {len(values)} variables, terms reach x{need}")
    total = 0
    for key, coeff in t.entries.items():
        prod = 1
        for v in key:
            prod *= values[v - 1]
        total += coeff * prod
    return total


def eval_H_table(t: TermMap, num_vars: int) -> np.ndarray:
    """``H`` at every assignment, indexed like ``Assignment.from_bits(x, num_vars)``."""
    size = 1 << num_vars
    xs = np.arange(size, dtype=np.int64)
    signs = {}
    dtype = np.int64 if _fits_int64(t) else object
    total = np.zeros(size, dtype=dtype)
    for key, coeff in t.entries.items():
        prod = np.ones(size, dtype=np.int64)
        for v in key:
            if v not in signs:
                signs[v] = 1 - 2 * ((xs >> (num_vars - v)) & 1)
            prod *= signs[v]
        total += coeff * prod.astype(dtype)
    return total


def _fits_int64(t: TermMap) -> bool:
    return sum(abs(c) for c in t.entries.values()) < (1 << 62)


def termmap_to_lin2(t: TermMap, num_vars: int) -> Lin2System:
    eqs = tuple(
        Lin2Equation(key, 1 if coeff > 0 else -1, abs(coeff)) for key, coeff in t.sorted_items()
    )
    return Lin2System(num_vars, eqs)


def cnf_to_lin2(f: CnfFormula, k: int) -> tuple[Lin2System, int, int]:
    """Return ``(J, k2, r_used)`` with ``k2 = k * 2**(r_used - 1)``.

    Twice the excess of ``J`` at any assignment equals ``H`` there, so
    ``f`` has an assignment with excess ``>= k`` iff ``J`` has one with
    excess ``>= k2``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    t = build_H(f)
    return termmap_to_lin2(t, f.num_vars), k << (t.r_used - 1), t.r_used
