import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iteralg.errors import ContractError, RecurrenceValidationError
from iteralg.matrices import (
    CharPoly,
    OccurrenceCount,
    char_poly,
    incidence_matrix,
    iterate_parikh,
    occurrence_decider,
    parikh,
    recurrence_from_charpoly,
    weight_sequence,
)
from iteralg.words import classify_shape

from conftest import letter_count, naive_power, small_morphisms
from test_words import mk

# frozen regression data for the 12-letter gallery morphism
PAPER12_CHARPOLY_HIGH_TO_LOW = (1, -1, -8, -16, -2, 5, 5, 21, 31, -10, -8, 0, 0)
PAPER12_W_DIRECT = (1, 7, 30, 120, 483, 1935, 7733, 30945, 123772)
PAPER12_W_TRANSPOSED = (1, 9, 40, 162, 655, 2627, 10487, 41987, 167922)


# ---------------------------------------------------------------------------
# incidence matrix / Parikh vectors


def test_incidence_fibonacci(fibonacci):
    M = incidence_matrix(fibonacci)
    assert M.rows == ((1, 1), (1, 0))


def test_incidence_paper12_first_column(paper12):
    M = incidence_matrix(paper12)
    ones = {i for i in range(12) if M.entry(i, 0) == 1}
    names = {paper12.letters[i] for i in ones}
    assert names == {"x1", "x2", "y1", "y2"}
    assert all(M.entry(i, 0) in (0, 1) for i in range(12))


def test_incidence_identity_morphism():
    m = mk(["a", "b"], ["a", "b"], "a")
    assert incidence_matrix(m).rows == ((1, 0), (0, 1))


def test_parikh_empty(fibonacci):
    assert parikh(fibonacci, "") == (0, 0)


def test_parikh_image(paper12):
    v = parikh(paper12, paper12.images[0])
    names = {paper12.letters[i] for i, c in enumerate(v) if c == 1}
    assert names == {"x1", "x2", "y1", "y2"} and sum(v) == 4


def test_parikh_count(fibonacci):
    assert parikh(fibonacci, fibonacci.encode("a b a a b")) == (3, 2)


def test_parikh_unknown_letter(fibonacci):
    with pytest.raises(ContractError):
        parikh(fibonacci, chr(7))


def test_iterate_parikh_fibonacci(fibonacci):
    M = incidence_matrix(fibonacci)
    assert iterate_parikh(M, chr(0), 2) == (2, 1)  # theta(aba)


def test_iterate_parikh_identity_power(fibonacci):
    M = incidence_matrix(fibonacci)
    u = fibonacci.encode("a b b")
    assert iterate_parikh(M, u, 0) == parikh(fibonacci, u)


def test_iterate_parikh_paper12(paper12):
    M = incidence_matrix(paper12)
    v = iterate_parikh(M, chr(0), 2)
    assert sum(v) == 16 and v[0] == 2


# ---------------------------------------------------------------------------
# characteristic polynomials


def test_char_poly_fibonacci(fibonacci):
    p = char_poly(incidence_matrix(fibonacci))
    assert p.coeffs == (-1, -1, 1)  # x^2 - x - 1


def test_char_poly_identity():
    m = mk(["a", "b", "c"], ["a", "b", "c"], "a")
    p = char_poly(incidence_matrix(m))
    assert p.coeffs == (-1, 3, -3, 1)  # (x - 1)^3


def test_char_poly_paper12(paper12):
    M = incidence_matrix(paper12)
    p = char_poly(M)
    assert p.high_to_low() == PAPER12_CHARPOLY_HIGH_TO_LOW
    assert M.trace() == 1
    assert p.evaluate(4) == 0
    assert p.evaluate_matrix(M).is_zero()


def test_char_poly_rejects_non_monic():
    with pytest.raises(ValueError):
        CharPoly((1, 2))


# ---------------------------------------------------------------------------
# recurrences


def test_recurrence_fibonacci_numbers():
    p = CharPoly((-1, -1, 1))
    rec = recurrence_from_charpoly(p, (1, 1))
    assert rec.term(10) == 89


def test_recurrence_constant():
    rec = recurrence_from_charpoly(CharPoly((-1, 1)), (7,))
    assert rec.extend(5) == [7, 7, 7, 7, 7]


def test_recurrence_validation_error():
    p = CharPoly((-1, -1, 1))
    with pytest.raises(RecurrenceValidationError) as exc:
        recurrence_from_charpoly(p, (1, 1, 2, 4))
    assert exc.value.index == 3


def test_recurrence_needs_enough_terms():
    with pytest.raises(ContractError):
        recurrence_from_charpoly(CharPoly((-1, -1, 1)), (1,))


def test_recurrence_paper12_shape(paper12):
    p = char_poly(incidence_matrix(paper12))
    ws = weight_sequence(paper12, 20)
    rec = recurrence_from_charpoly(p, ws.direct)
    assert rec.order == 12
    assert rec.coeffs == (1, 8, 16, 2, -5, -5, -21, -31, 10, 8, 0, 0)
    for n in range(12, 21):
        assert rec.holds_at(ws.direct, n)
        assert rec.holds_at(ws.transposed, n)


# ---------------------------------------------------------------------------
# occurrence decider


def test_occurrence_paper12_start(paper12):
    assert occurrence_decider(paper12, 0) is OccurrenceCount.AT_LEAST_TWICE


def test_occurrence_ba_start(ba_example):
    assert occurrence_decider(ba_example, ba_example.start) is OccurrenceCount.EXACTLY_ONCE


def test_occurrence_absent_letter():
    m = mk(["a", "b", "c"], ["a b", "b", "c"], "a")
    assert occurrence_decider(m, 2) is OccurrenceCount.ZERO


@settings(max_examples=50, deadline=None)
@given(small_morphisms(), st.data())
def test_occurrence_agrees_with_expansion(m, data):
    letter = data.draw(st.integers(0, m.size - 1))
    verdict = occurrence_decider(m, letter)
    word = naive_power(m, 2 * m.size)
    capped = min(2, letter_count(word, letter))
    expected = {
        0: OccurrenceCount.ZERO,
        1: OccurrenceCount.EXACTLY_ONCE,
        2: OccurrenceCount.AT_LEAST_TWICE,
    }[capped]
    assert verdict is expected


# ---------------------------------------------------------------------------
# weight sequences


def test_weights_paper12(paper12):
    ws = weight_sequence(paper12, 8)
    assert ws.direct == PAPER12_W_DIRECT
    assert ws.transposed == PAPER12_W_TRANSPOSED
    assert ws.first_divergence == 1
    assert ws.cross_checked_upto >= 8


def test_weights_degree_one_is_length(fibonacci):
    ws = weight_sequence(fibonacci, 8)
    lengths = tuple(len(naive_power(fibonacci, n)) for n in range(9))
    assert ws.direct == lengths


def test_weights_need_grading():
    m = mk(["a", "b"], ["a b", "a"], "a")
    with pytest.raises(ContractError):
        weight_sequence(m, 4)


# ---------------------------------------------------------------------------
# properties


@settings(max_examples=40, deadline=None)
@given(small_morphisms(), st.data())
def test_parikh_homomorphism(m, data):
    words = st.text(
        alphabet=st.sampled_from([chr(i) for i in range(m.size)]), max_size=20
    )
    u = data.draw(words)
    v = data.draw(words)
    tu, tv, tuv = parikh(m, u), parikh(m, v), parikh(m, u + v)
    assert tuple(a + b for a, b in zip(tu, tv)) == tuv
    M = incidence_matrix(m)
    assert M.matvec(tu) == parikh(m, m.apply(u))
    for n in range(4):
        assert iterate_parikh(M, u, n) == parikh(m, m.apply_n(u, n))


@settings(max_examples=40, deadline=None)
@given(small_morphisms())
def test_cayley_hamilton_always(m):
    M = incidence_matrix(m)
    p = char_poly(M)
    assert p.evaluate_matrix(M).is_zero()


@settings(max_examples=40, deadline=None)
@given(small_morphisms())
def test_uniform_column_sums_and_root(m):
    M = incidence_matrix(m)
    shape = classify_shape(m)
    if shape.d_uniform is not None:
        d = shape.d_uniform
        assert set(M.column_sums()) == {d}
        assert char_poly(M).evaluate(d) == 0


@settings(max_examples=30, deadline=None)
@given(small_morphisms(graded=True))
def test_weight_sequence_satisfies_own_recurrence(m):
    p = char_poly(incidence_matrix(m))
    n_max = p.degree + 6
    ws = weight_sequence(m, n_max, expansion_budget_letters=100_000)
    rec = recurrence_from_charpoly(p, ws.direct)
    for n in range(p.degree, n_max + 1):
        assert rec.holds_at(ws.direct, n)
