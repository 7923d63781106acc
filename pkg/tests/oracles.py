"""Independent brute-force references.

Nothing here calls into the package's evaluation code: clauses and
equations are evaluated from their integer form by plain enumeration.
"""

from fractions import Fraction
from itertools import product


def assignments(n):
    """All assignments in lexicographic order, FALSE (+1) before TRUE (-1)."""
    return product((1, -1), repeat=n)


def clause_ints(f):
    return [tuple(int(l) for l in c.literals) for c in f.clauses]


def sat_count(clauses, a):
    return sum(any((a[abs(l) - 1] == -1) == (l > 0) for l in c) for c in clauses)


def asat_fraction(clauses):
    return sum((1 - Fraction(1, 2 ** len(c)) for c in clauses), Fraction(0))


def max_sat(f):
    clauses = clause_ints(f)
    best, arg = -1, None
    for a in assignments(f.num_vars):
        c = sat_count(clauses, a)
        if c > best:
            best, arg = c, a
    return best, arg


def excess_fraction(f, a):
    clauses = clause_ints(f)
    return sat_count(clauses, a) - asat_fraction(clauses)


def eqs(s):
    return [(tuple(e.support), e.rhs, e.weight) for e in s.equations]


def lin2_twice(equations, a):
    total = 0
    for support, rhs, w in equations:
        prod = 1
        for v in support:
            prod *= a[v - 1]
        total += w if prod == rhs else -w
    return total


def lin2_max(s):
    equations = eqs(s)
    best, arg = None, None
    for a in assignments(s.num_vars):
        v = lin2_twice(equations, a)
        if best is None or v > best:
            best, arg = v, a
    return best, arg


def gf2_rank_dense(rows, ncols):
    """Rank by dense row reduction over lists of 0/1."""
    mat = [[(r >> i) & 1 for i in range(ncols)] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                mat[i] = [x ^ y for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


# -- vectorized direct evaluation (index x <-> Assignment.from_bits(x, n)) --

def value_columns(n):
    import numpy as np

    xs = np.arange(1 << n, dtype=np.int64)
    return {v: np.where((xs >> (n - v)) & 1, -1, 1).astype(np.int64) for v in range(1, n + 1)}


def sat_count_table(clauses, n, cols=None):
    import numpy as np

    cols = cols or value_columns(n)
    total = np.zeros(1 << n, dtype=np.int64)
    for c in clauses:
        sat = np.zeros(1 << n, dtype=bool)
        for lit in c:
            sat |= cols[abs(lit)] == (-1 if lit > 0 else 1)
        total += sat
    return total


def lin2_table(equations, n, cols=None):
    """Satisfied minus unsatisfied weight, by multiplying value columns."""
    import numpy as np

    cols = cols or value_columns(n)
    total = np.zeros(1 << n, dtype=np.int64)
    for support, rhs, w in equations:
        prod = np.ones(1 << n, dtype=np.int64)
        for v in support:
            prod = prod * cols[v]
        total += np.where(prod == rhs, w, -w)
    return total
