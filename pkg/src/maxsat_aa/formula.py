"""CNF data model, DIMACS I/O and the above-average quantities.

Truth values are encoded as in the Lin2 view of a formula: ``-1`` is TRUE
and ``+1`` is FALSE. Every module uses the same convention.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .dyadic import DyadicRational

TRUE = -1
FALSE = 1


class FormulaError(ValueError):
    """Invalid formula, clause or assignment."""


class DimacsError(FormulaError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimacsWarning(UserWarning):
    """Emitted by the lenient parser whenever it repairs a clause."""


@dataclass(frozen=True, order=True)
class Literal:
    variable: int
    positive: bool = True

    def __post_init__(self) -> None:
        if self.variable < 1:
            raise FormulaError(f"variable index must be >= 1, got {self.variable}")

    @classmethod
    def from_int(cls, lit: int) -> Literal:
        if lit == 0:
            raise FormulaError("0 is not a literal")
        return cls(abs(lit), lit > 0)

    def __int__(self) -> int:
        return self.variable if self.positive else -self.variable

    def __neg__(self) -> Literal:
        return Literal(self.variable, not self.positive)

    @property
    def sign(self) -> int:
        """``d_ij`` of the multilinear expansion: +1 positive, -1 negated."""
        return 1 if self.positive else -1

    def satisfied_by(self, value: int) -> bool:
        return (value == TRUE) == self.positive

    def __str__(self) -> str:
        return f"x{self.variable}" if self.positive else f"~x{self.variable}"


@dataclass(frozen=True)
class Clause:
    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        lits = tuple(self.literals)
        object.__setattr__(self, "literals", lits)
        if not lits:
            raise FormulaError("empty clause")
        seen: dict[int, Literal] = {}
        for lit in lits:
            prev = seen.get(lit.variable)
            if prev is not None:
                if prev == lit:
                    raise FormulaError(f"duplicate literal {int(lit)} in clause")
                raise FormulaError(f"tautological clause: contains {lit.variable} and {-lit.variable}")
            seen[lit.variable] = lit

    @classmethod
    def of(cls, *lits: int) -> Clause:
        return cls(tuple(Literal.from_int(v) for v in lits))

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(lit.variable for lit in self.literals)

    def ints(self) -> tuple[int, ...]:
        return tuple(int(lit) for lit in self.literals)

    def satisfied_by(self, values: Sequence[int]) -> bool:
        return any(lit.satisfied_by(values[lit.variable - 1]) for lit in self.literals)

    def __str__(self) -> str:
        return "(" + " v ".join(str(lit) for lit in self.literals) + ")"


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        clauses = tuple(self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 0:
            raise FormulaError("num_vars must be nonnegative")
        for clause in clauses:
            for lit in clause:
                if lit.variable > self.num_vars:
                    raise FormulaError(
                        f"literal {int(lit)} exceeds declared variable count {self.num_vars}"
                    )

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> CnfFormula:
        return cls(num_vars, tuple(Clause.of(*c) for c in clauses))

    def __len__(self) -> int:
        return len(self.clauses)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def max_width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def __add__(self, other: CnfFormula) -> CnfFormula:
        return CnfFormula(max(self.num_vars, other.num_vars), self.clauses + other.clauses)


@dataclass(frozen=True)
class Assignment:
    """Total assignment; ``values[i-1]`` is the value of variable ``i``."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        for v in vals:
            if v not in (TRUE, FALSE):
                raise FormulaError(f"assignment entries must be -1 or +1, got {v}")

    @classmethod
    def all_false(cls, n: int) -> Assignment:
        return cls((FALSE,) * n)

    @classmethod
    def from_bits(cls, bits: int, n: int) -> Assignment:
        """Bit ``n-1-i`` set means variable ``i+1`` is TRUE.

        Variable 1 is the most significant bit, so integer order is the
        lexicographic order of the assignment with FALSE < TRUE.
        """
        return cls(tuple(TRUE if (bits >> (n - 1 - i)) & 1 else FALSE for i in range(n)))

    def to_bits(self) -> int:
        bits = 0
        for v in self.values:
            bits = (bits << 1) | (v == TRUE)
        return bits

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def dimacs_line(self) -> str:
        """``v 1 -2 3 ... 0`` with positive meaning TRUE."""
        lits = [str(i if v == TRUE else -i) for i, v in enumerate(self.values, start=1)]
        return " ".join(["v", *lits, "0"])


AssignmentLike = Union[Assignment, Sequence[int]]


def as_assignment(a: AssignmentLike, n: int | None = None) -> Assignment:
    if not isinstance(a, Assignment):
        a = Assignment(tuple(a))
    if n is not None and len(a) != n:
        raise FormulaError(f"assignment has {len(a)} entries, expected {n}")
    return a


# -- DIMACS ---------------------------------------------------------------

def parse_dimacs(text: Union[str, bytes], *, lenient: bool = False) -> CnfFormula:
    """Parse DIMACS CNF.

    Comment lines (``c ...``) may appear anywhere and clauses may span
    lines. Duplicate literals are an error unless ``lenient`` is set, in
    which case they are dropped and a :class:`DimacsWarning` is issued.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header: tuple[int, int] | None = None
    clauses: list[Clause] = []
    current: list[int] = []
    current_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise DimacsError("second header line", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise DimacsError("negative counts in header", lineno)
            header = (n, m)
            continue
        if header is None:
            raise DimacsError("clause data before header", lineno)
        n = header[0]
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad token {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise DimacsError("empty clause", lineno)
                clauses.append(_make_clause(current, current_line, lenient))
                current = []
                continue
            if abs(lit) > n:
                raise DimacsError(f"variable {abs(lit)} exceeds declared count {n}", lineno)
            if not current:
                current_line = lineno
            current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause not terminated by 0", current_line)
    n, m = header
    if len(clauses) != m:
        raise DimacsError(f"header declares {m} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses))


def _make_clause(lits: list[int], lineno: int, lenient: bool) -> Clause:
    for lit in lits:
        if -lit in lits:
            raise DimacsError(f"tautological clause (contains {abs(lit)} and {-abs(lit)})", lineno)
    if len(set(lits)) != len(lits):
        if not lenient:
            raise DimacsError("duplicate literal in clause", lineno)
        deduped = list(dict.fromkeys(lits))
        warnings.warn(
            f"line {lineno}: dropped duplicate literals, {lits} -> {deduped}",
            DimacsWarning,
            stacklevel=3,
        )
        lits = deduped
    return Clause.of(*lits)


def serialize_dimacs(f: CnfFormula, comments: Sequence[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p cnf {f.num_vars} {f.num_clauses}")
    for clause in f.clauses:
        out.append(" ".join(str(v) for v in clause.ints()) + " 0")
    return "\n".join(out) + "\n"


# -- above-average quantities ---------------------------------------------

def asat(f: CnfFormula) -> DyadicRational:
    """Expected number of satisfied clauses under a uniform assignment."""
    total = DyadicRational(0)
    for clause in f.clauses:
        r = len(clause)
        total = total + DyadicRational((1 << r) - 1, r)
    return total


def count_satisfied(f: CnfFormula, a: AssignmentLike) -> int:
    values = as_assignment(a, f.num_vars).values
    return sum(1 for clause in f.clauses if clause.satisfied_by(values))


def excess(f: CnfFormula, a: AssignmentLike) -> DyadicRational:
    return count_satisfied(f, a) - asat(f)


def complete_set(variables: Sequence[int], num_vars: int | None = None) -> CnfFormula:
    """All ``2**t`` clauses over ``variables``; positive literals sort first."""
    variables = list(variables)
    if not variables:
        raise FormulaError("complete set needs at least one variable")
    if len(set(variables)) != len(variables):
        raise FormulaError(f"duplicate variable indices in {variables}")
    n = max(variables) if num_vars is None else num_vars
    clauses = [
        Clause(tuple(Literal(v, pos) for v, pos in zip(variables, signs)))
        for signs in itertools.product((True, False), repeat=len(variables))
    ]
    return CnfFormula(n, tuple(clauses))
