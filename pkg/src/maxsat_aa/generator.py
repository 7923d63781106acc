"""Instance generators: the width-log(n) hardness gadget, unit-pair padding,
and seeded random CNF / Lin2 instances."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from itertools import combinations

from .formula import Clause, CnfFormula, Literal, complete_set
from .lin2 import Lin2Equation, Lin2System


class InfeasibleError(ValueError):
    """Generator parameters violate a named size constraint."""


@dataclass(frozen=True)
class Theorem1Meta:
    n_input: int
    m_input: int
    c: int
    n_prime: int
    L: int
    m_prime: int
    size_c1: int
    size_c2: int
    size_c3: int
    x_block: tuple[int, int]
    y_block: tuple[int, int]
    tail_block: tuple[int, int]

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("x_block", "y_block", "tail_block"):
            d[key] = list(d[key])
        return d


def _c3_clauses(tail: list[int], L: int, count: int) -> list[tuple[int, ...]]:
    t = len(tail)
    chosen: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()

    def take(window: tuple[int, ...]) -> None:
        if len(chosen) < count and window not in seen:
            seen.add(window)
            chosen.append(window)

    def window(start: int) -> tuple[int, ...]:
        return tuple(sorted(tail[(start + d) % t] for d in range(L)))

    # disjoint windows first so every tail variable is covered early
    for start in range(0, t, L):
        take(window(start))
    for start in range(t):
        take(window(start))
    for combo in combinations(tail, L):
        if len(chosen) >= count:
            break
        take(combo)
    return chosen


def gen_theorem1(f: CnfFormula, c: int) -> tuple[CnfFormula, Theorem1Meta]:
    """Pad a 3-CNF into an instance whose clauses all have width ``L``.

    With ``n' = 2cn`` variables, ``L = ceil(log2 n')`` and ``m' = 2**(L+1)``
    clauses, the output has ``asat = m' - 2``, so asking for ``asat + 2``
    means asking for every clause, which is possible iff ``f`` is
    satisfiable. Variables ``1..n`` are the inputs; ``y_i`` is ``n + i``.
    """
    n, m = f.num_vars, f.num_clauses
    if c < 1:
        raise InfeasibleError("c must be a positive integer")
    for clause in f.clauses:
        if len(clause) != 3:
            raise InfeasibleError(f"every input clause must have exactly 3 literals, got {clause}")
    if len({frozenset(cl.ints()) for cl in f.clauses}) != m:
        raise InfeasibleError("input clauses must be distinct")
    if m > c * n:
        raise InfeasibleError(f"m <= c*n violated: {m} > {c}*{n}")
    n_prime = 2 * c * n
    L = (n_prime - 1).bit_length()
    m_prime = 1 << (L + 1)
    size_c1 = (1 << L) - 1
    size_c3 = m_prime - size_c1 - m
    tail_len = n_prime - n - L
    if L < 3:
        raise InfeasibleError(f"L >= 3 violated: L = ceil(log2 {n_prime}) = {L}")
    if m > (1 << L) + 1:
        raise InfeasibleError(f"m <= 2^L + 1 violated: {m} > {(1 << L) + 1}")
    if tail_len < L:
        raise InfeasibleError(f"n' - n - L >= L violated: {tail_len} < {L}")
    if math.comb(tail_len, L) < size_c3:
        raise InfeasibleError(
            f"C(n'-n-L, L) >= |C3| violated: C({tail_len}, {L}) < {size_c3}"
        )
    if size_c3 < -(-tail_len // L):
        raise InfeasibleError(
            f"|C3| >= ceil((n'-n-L)/L) violated: {size_c3} clauses cannot cover {tail_len} tail variables"
        )

    def y(i: int) -> int:
        return n + i

    ys = [y(i) for i in range(1, L + 1)]
    c1 = list(complete_set(ys, n_prime).clauses)[:size_c1]  # all-negative clause sorts last
    neg_tail = tuple(Literal(y(i), False) for i in range(4, L + 1))
    c2 = [Clause(cl.literals + neg_tail) for cl in f.clauses]
    tail = [y(i) for i in range(L + 1, n_prime - n + 1)]
    c3 = [Clause(tuple(Literal(v) for v in w)) for w in _c3_clauses(tail, L, size_c3)]

    out = CnfFormula(n_prime, tuple(c1 + c2 + c3))
    meta = Theorem1Meta(
        n_input=n,
        m_input=m,
        c=c,
        n_prime=n_prime,
        L=L,
        m_prime=m_prime,
        size_c1=size_c1,
        size_c2=m,
        size_c3=size_c3,
        x_block=(1, n),
        y_block=(n + 1, n_prime),
        tail_block=(y(L + 1), n_prime),
    )
    return out, meta


def pad_contradicting_units(f: CnfFormula, extra_vars: int) -> CnfFormula:
    """Append ``extra_vars`` fresh variables, each with clauses ``(x)`` and ``(~x)``."""
    if extra_vars < 0:
        raise ValueError("extra_vars must be nonnegative")
    n = f.num_vars
    pads = []
    for v in range(n + 1, n + extra_vars + 1):
        pads += [Clause((Literal(v, True),)), Clause((Literal(v, False),))]
    return CnfFormula(n + extra_vars, f.clauses + tuple(pads))


def gen_random_cnf(n: int, m: int, width_max: int, seed: int) -> CnfFormula:
    """``m`` clauses with widths uniform in ``[1, width_max]``.

    Uses :class:`random.Random` (MT19937) so output is stable for a seed.
    """
    if n < 1 or not 1 <= width_max <= n or m < 0:
        raise InfeasibleError(f"need 1 <= width_max <= n and m >= 0 (n={n}, m={m}, width_max={width_max})")
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        width = rng.randint(1, width_max)
        variables = sorted(rng.sample(range(1, n + 1), width))
        clauses.append(Clause(tuple(Literal(v, rng.random() < 0.5) for v in variables)))
    return CnfFormula(n, tuple(clauses))


def gen_random_kcnf(n: int, m: int, width: int, seed: int, distinct: bool = True) -> CnfFormula:
    """Exactly-``width`` clauses, optionally pairwise distinct."""
    if n < width or width < 1:
        raise InfeasibleError(f"need 1 <= width <= n (n={n}, width={width})")
    if distinct and m > math.comb(n, width) << width:
        raise InfeasibleError(f"only {math.comb(n, width) << width} distinct clauses of width {width} exist")
    rng = random.Random(seed)
    clauses: list[Clause] = []
    seen: set[tuple[int, ...]] = set()
    while len(clauses) < m:
        variables = sorted(rng.sample(range(1, n + 1), width))
        lits = tuple(v if rng.random() < 0.5 else -v for v in variables)
        if distinct and lits in seen:
            continue
        seen.add(lits)
        clauses.append(Clause.of(*lits))
    return CnfFormula(n, tuple(clauses))


def gen_random_lin2(n: int, m: int, arity_max: int, weight_max: int, seed: int) -> Lin2System:
    if n < 1 or not 1 <= arity_max <= n or weight_max < 1 or m < 0:
        raise InfeasibleError(
            f"need 1 <= arity_max <= n, weight_max >= 1, m >= 0 "
            f"(n={n}, m={m}, arity_max={arity_max}, weight_max={weight_max})"
        )
    rng = random.Random(seed)
    eqs = []
    for _ in range(m):
        arity = rng.randint(1, arity_max)
        support = tuple(sorted(rng.sample(range(1, n + 1), arity)))
        eqs.append(Lin2Equation(support, rng.choice((1, -1)), rng.randint(1, weight_max)))
    return Lin2System(n, tuple(eqs))

