"""Exact integer linear algebra for incidence matrices.

Everything here runs on Python's arbitrary-precision integers: entries of
incidence-matrix powers and graded weights grow like d^n, so fixed-width
arithmetic is banned in this module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ContractError, InvariantError, RecurrenceValidationError
from .words import Morphism, Word

# The occurrence decider only needs to distinguish 0, 1 and ">= 2"; raise the
# cap to decide ">= k" instead.
SATURATION_CAP = 2

ParikhVector = tuple[int, ...]


@dataclass(frozen=True)
class IncidenceMatrix:
    """Square matrix with rows[i][j] = occurrences of letter i in phi(letter j)."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")

    @property
    def size(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.size))

    def column_sums(self) -> tuple[int, ...]:
        n = self.size
        return tuple(sum(self.rows[i][j] for i in range(n)) for j in range(n))

    def transpose(self) -> "IncidenceMatrix":
        n = self.size
        return IncidenceMatrix(
            tuple(tuple(self.rows[j][i] for j in range(n)) for i in range(n))
        )

    def matmul(self, other: "IncidenceMatrix") -> "IncidenceMatrix":
        n = self.size
        if other.size != n:
            raise ContractError("matrix sizes differ")
        b_cols = list(zip(*other.rows))
        return IncidenceMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in b_cols)
                for row in self.rows
            )
        )

    def matvec(self, v: ParikhVector) -> ParikhVector:
        if len(v) != self.size:
            raise ContractError("vector length differs from matrix size")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def power(self, n: int) -> "IncidenceMatrix":
        """Exact square-and-multiply."""
        if n < 0:
            raise ContractError("exponent must be nonnegative")
        result = identity(self.size)
        base = self
        while n:
            if n & 1:
                result = result.matmul(base)
            base = base.matmul(base)
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(all(e == 0 for e in row) for row in self.rows)


def identity(n: int) -> IncidenceMatrix:
    return IncidenceMatrix(
        tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    )


def incidence_matrix(m: Morphism) -> IncidenceMatrix:
    n = m.size
    return IncidenceMatrix(
        tuple(tuple(m.images[j].count(chr(i)) for j in range(n)) for i in range(n))
    )


def parikh(m: Morphism, u: Word) -> ParikhVector:
    for ch in u:
        if ord(ch) >= m.size:
            raise ContractError(f"letter id {ord(ch)} outside the alphabet")
    return tuple(u.count(chr(i)) for i in range(m.size))


def iterate_parikh(M: IncidenceMatrix, u: Word, n: int) -> ParikhVector:
    """M^n . theta(u), exactly."""
    if n < 0:
        raise ContractError("exponent must be nonnegative")
    theta = tuple(u.count(chr(i)) for i in range(M.size))
    return M.power(n).matvec(theta)


@dataclass(frozen=True)
class CharPoly:
    """Monic integer characteristic polynomial, stored low degree first."""

    coeffs: tuple[int, ...]  # coeffs[k] multiplies x^k; leading coefficient 1

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[-1] != 1:
            raise ValueError("characteristic polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_matrix(self, M: IncidenceMatrix) -> IncidenceMatrix:
        n = M.size
        acc = IncidenceMatrix(tuple(tuple(0 for _ in range(n)) for _ in range(n)))
        for c in reversed(self.coeffs):
            acc = acc.matmul(M)
            if c:
                acc = IncidenceMatrix(
                    tuple(
                        tuple(acc.rows[i][j] + (c if i == j else 0) for j in range(n))
                        for i in range(n)
                    )
                )
        return acc

    def high_to_low(self) -> tuple[int, ...]:
        return tuple(reversed(self.coeffs))


def char_poly(M: IncidenceMatrix) -> CharPoly:
    """Characteristic polynomial by the Faddeev-LeVerrier scheme.

    All divisions are exact over the integers; the result is checked against
    the Cayley-Hamilton identity before being returned.
    """
    n = M.size
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    B = identity(n)
    for k in range(1, n + 1):
        AB = M.matmul(B)
        t = AB.trace()
        if t % k != 0:
            raise InvariantError("Faddeev-LeVerrier trace division is not exact")
        c = -(t // k)
        coeffs[n - k] = c
        B = IncidenceMatrix(
            tuple(
                tuple(AB.rows[i][j] + (c if i == j else 0) for j in range(n))
                for i in range(n)
            )
        )
    poly = CharPoly(tuple(coeffs))
    if not poly.evaluate_matrix(M).is_zero():
        raise InvariantError("Cayley-Hamilton check failed for computed polynomial")
    return poly


@dataclass(frozen=True)
class LinearRecurrence:
    """s_n = c_1 s_{n-1} + ... + c_r s_{n-r}, with validated initial terms."""

    coeffs: tuple[int, ...]
    initial: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def term(self, n: int) -> int:
        return self.extend(n + 1)[n]

    def extend(self, count: int) -> list[int]:
        seq = list(self.initial[:count])
        while len(seq) < count:
            nxt = sum(c * seq[-k] for k, c in enumerate(self.coeffs, start=1))
            seq.append(nxt)
        return seq

    def holds_at(self, seq: list[int] | tuple[int, ...], n: int) -> bool:
        return seq[n] == sum(c * seq[n - k] for k, c in enumerate(self.coeffs, start=1))


def recurrence_from_charpoly(
    p: CharPoly, initial: list[int] | tuple[int, ...]
) -> LinearRecurrence:
    """Read the recurrence off a monic polynomial and validate the seed terms."""
    r = p.degree
    if len(initial) < r:
        raise ContractError(
            f"need at least {r} initial terms, got {len(initial)}"
        )
    coeffs = tuple(-p.coeffs[r - k] for k in range(1, r + 1))
    rec = LinearRecurrence(coeffs=coeffs, initial=tuple(initial))
    for n in range(r, len(initial)):
        expected = sum(c * initial[n - k] for k, c in enumerate(coeffs, start=1))
        if initial[n] != expected:
            raise RecurrenceValidationError(n, expected, initial[n])
    return rec


class OccurrenceCount(enum.Enum):
    ZERO = "Zero"
    EXACTLY_ONCE = "ExactlyOnce"
    AT_LEAST_TWICE = "AtLeastTwice"


def occurrence_decider(m: Morphism, letter: int) -> OccurrenceCount:
    """How often a letter occurs in the fixed point: 0, 1, or >= 2.

    Iterates the saturating abstraction nu_{k+1} = cap(M nu_k) from
    nu_0 = cap(theta(start)).  Prefix counts are nondecreasing, capping
    commutes with the step, and the capped lattice is finite, so the
    fixpoint is exact.
    """
    M = incidence_matrix(m)
    cap = SATURATION_CAP
    nu = tuple(min(cap, 1 if i == m.start else 0) for i in range(m.size))
    max_rounds = 2 * m.size * cap + 2
    for _ in range(max_rounds):
        nxt = tuple(min(cap, v) for v in M.matvec(nu))
        if nxt == nu:
            break
        nu = nxt
    else:
        raise InvariantError("saturating occurrence iteration failed to stabilize")
    value = nu[letter]
    if value == 0:
        return OccurrenceCount.ZERO
    if value == 1:
        return OccurrenceCount.EXACTLY_ONCE
    return OccurrenceCount.AT_LEAST_TWICE


@dataclass(frozen=True)
class WeightSequences:
    """u^T M^n theta(start) under both index conventions.

    ``direct`` is cross-checked against the literal degree of phi^n(start);
    ``transposed`` uses M^T and is reported as a diagnostic only.
    """

    direct: tuple[int, ...]
    transposed: tuple[int, ...]
    cross_checked_upto: int

    @property
    def first_divergence(self) -> int | None:
        for i, (a, b) in enumerate(zip(self.direct, self.transposed)):
            if a != b:
                return i
        return None


def weight_sequence(
    m: Morphism,
    n_max: int,
    *,
    expansion_budget_letters: int = 4**9,
) -> WeightSequences:
    """Graded weights of phi^n(start) for n = 0..n_max, both conventions.

    The direct sequence must agree with the degree of the literally expanded
    word wherever that expansion fits the budget; disagreement is fatal.
    """
    if m.degrees is None:
        raise ContractError("weight sequence needs a grading")
    M = incidence_matrix(m)
    MT = M.transpose()
    u = m.degrees
    theta = tuple(1 if i == m.start else 0 for i in range(m.size))

    direct: list[int] = []
    transposed: list[int] = []
    vec, vec_t = theta, theta
    for _ in range(n_max + 1):
        direct.append(sum(a * b for a, b in zip(u, vec)))
        transposed.append(sum(a * b for a, b in zip(u, vec_t)))
        vec = M.matvec(vec)
        vec_t = MT.matvec(vec_t)

    word: Word = chr(m.start)
    checked = 0
    for n in range(n_max + 1):
        if len(word) > expansion_budget_letters:
            break
        literal = m.degree_of(word)
        if literal != direct[n]:
            raise InvariantError(
                f"weight mismatch at n={n}: matrix gives {direct[n]}, "
                f"direct expansion gives {literal}"
            )
        checked = n
        word = m.apply(word)
    return WeightSequences(
        direct=tuple(direct),
        transposed=tuple(transposed),
        cross_checked_upto=checked,
    )


__all__ = [
    "SATURATION_CAP",
    "ParikhVector",
    "IncidenceMatrix",
    "identity",
    "incidence_matrix",
    "parikh",
    "iterate_parikh",
    "CharPoly",
    "char_poly",
    "LinearRecurrence",
    "recurrence_from_charpoly",
    "OccurrenceCount",
    "occurrence_decider",
    "WeightSequences",
    "weight_sequence",
]
