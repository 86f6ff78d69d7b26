import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iteralg.errors import ContractError, NoSplitError
from iteralg.graded import (
    cyclic_rotation_audit,
    every_window_contains,
    graded_nilpotency_scan,
    lie_decomposition,
    max_homogeneous_chain,
    prefix_identity_holds,
    rotations,
    s_set,
)
from iteralg.words import fixed_point_prefix

from conftest import small_morphisms
from test_words import mk

PAPER12_S_HEAD = (0, 1, 3, 5, 7, 8, 10, 12, 14)
PAPER12_CHAIN_TABLE = {1: 1, 2: 15, 3: 1, 4: 7, 5: 2, 6: 5}


# ---------------------------------------------------------------------------
# position-degree sets


def test_s_set_paper12_head(paper12):
    prefix = fixed_point_prefix(paper12, 8)
    s = s_set(paper12, prefix.word[:8])
    assert s.sums == PAPER12_S_HEAD


def test_s_set_degree_one(fibonacci):
    prefix = fixed_point_prefix(fibonacci, 10)
    s = s_set(fibonacci, prefix.word[:10])
    assert s.sums == tuple(range(11))


def test_s_set_fibonacci_mixed_degrees():
    m = mk(["a", "b"], ["a b", "a"], "a", degrees=(1, 2))
    s = s_set(m, m.encode("a b a a b"))
    assert s.sums == (0, 1, 3, 4, 5, 7)


def test_s_set_needs_grading():
    m = mk(["a", "b"], ["a b", "a"], "a")
    with pytest.raises(ContractError):
        s_set(m, m.encode("a b"))


@settings(max_examples=40, deadline=None)
@given(small_morphisms(graded=True), st.integers(min_value=0, max_value=200))
def test_s_set_matches_accumulate(m, n):
    prefix = fixed_point_prefix(m, max(n, 1)).word[: max(n, 1)]
    s = s_set(m, prefix)
    oracle = [0] + list(
        itertools.accumulate(m.degrees[ord(ch)] for ch in prefix)
    )
    assert list(s.sums) == oracle


# ---------------------------------------------------------------------------
# homogeneous chains


def test_chain_paper12_d2_small_window(paper12, closure):
    s = s_set(paper12, fixed_point_prefix(paper12, 8).word[:8])
    w = max_homogeneous_chain(paper12, s, closure("paper12", 8), 2)
    assert w.length == 3
    assert w.start_value == 1
    assert tuple(paper12.decode(p) for p in w.pieces) == ("x2", "y1", "y2")


def test_chain_paper12_d1(paper12, closure):
    s = s_set(paper12, fixed_point_prefix(paper12, 64).word[:64])
    w = max_homogeneous_chain(paper12, s, closure("paper12", 8), 1)
    assert w.length == 1


def test_chain_empty_prefix(paper12):
    s = s_set(paper12, "")
    w = max_homogeneous_chain(paper12, s, None, 2)
    assert w.length == 0 and w.pieces == ()


def test_chain_witness_verifies(paper12, closure):
    prefix = fixed_point_prefix(paper12, 1024).word
    s = s_set(paper12, prefix)
    for d in range(1, 7):
        w = max_homogeneous_chain(paper12, s, None, d)
        assert all(paper12.degree_of(p) == d for p in w.pieces)
        assert w.concatenation() in prefix


# ---------------------------------------------------------------------------
# nilpotency scan


def test_scan_paper12_stabilizes(paper12):
    scan = graded_nilpotency_scan(paper12, 6, [7, 8])
    assert scan.levels == (7, 8)
    assert not scan.degenerate_grading
    for row in scan.rows:
        assert row.stabilized
        assert row.values[0] == row.values[1] == PAPER12_CHAIN_TABLE[row.degree]


def test_scan_periodic_degree_one_grows(periodic_ab):
    scan = graded_nilpotency_scan(periodic_ab, 2, [4, 6])
    assert scan.degenerate_grading
    row = next(r for r in scan.rows if r.degree == 2)
    assert row.unbounded_within_sample and not row.stabilized
    assert row.values[1] > row.values[0]


def test_scan_empty(paper12):
    scan = graded_nilpotency_scan(paper12, 0, [3, 4])
    assert scan.rows == ()


# ---------------------------------------------------------------------------
# rotation audit


def test_rotation_audit_paper12(paper12, closure):
    f = closure("paper12", 4)
    audit = cyclic_rotation_audit(f, 4)
    assert audit.passed and audit.counterexample is None
    assert paper12.encode("x2 x1") not in f.factors
    # a factor produced inside an image keeps its reversal out of the language
    assert paper12.encode("x3 y2") in f.factors
    assert paper12.encode("y2 x3") not in f.factors


def test_rotation_audit_periodic_fails(periodic_ab, closure):
    f = closure("periodic-ab", 4)
    audit = cyclic_rotation_audit(f, 4)
    assert not audit.passed
    assert periodic_ab.decode(audit.counterexample) == "a b"


def test_rotation_audit_contract(closure):
    with pytest.raises(ContractError):
        cyclic_rotation_audit(closure("paper12", 4), 1)
    with pytest.raises(ContractError):
        cyclic_rotation_audit(closure("paper12", 4), 5)


def test_rotations_helper():
    assert rotations("abc") == ["bca", "cab"]
    assert rotations("a") == []


# ---------------------------------------------------------------------------
# bracket decompositions


def test_lie_paper12_pair(paper12, closure):
    f = closure("paper12", 4)
    node = lie_decomposition(f, paper12.encode("x1 x2"))
    assert paper12.decode(node.left.word) == "x1"
    assert paper12.decode(node.right.word) == "x2"
    assert paper12.decode(node.absent_rotation) == "x2 x1"


def test_lie_paper12_image(paper12, closure):
    f = closure("paper12", 4)
    node = lie_decomposition(f, paper12.encode("x1 x2 y1 y2"))
    assert node.depth() <= 3
    # every internal node certifies an absent reversed product
    stack = [node]
    while stack:
        cur = stack.pop()
        if not cur.is_leaf:
            assert cur.absent_rotation not in f.factors
            stack.extend([cur.left, cur.right])


def test_lie_single_letter_rejected(paper12, closure):
    with pytest.raises(ContractError):
        lie_decomposition(closure("paper12", 4), chr(0))


def test_lie_no_split(periodic_ab, closure):
    f = closure("periodic-ab", 4)
    with pytest.raises(NoSplitError):
        lie_decomposition(f, periodic_ab.encode("a b"))


def test_audit_lie_linkage(paper12, closure):
    # wherever the rotation audit passes, a bracket split must exist
    f = closure("paper12", 6)
    audit = cyclic_rotation_audit(f, 6)
    assert audit.passed
    for w in f.factors:
        if 2 <= len(w) <= 6:
            lie_decomposition(f, w)  # must not raise


# ---------------------------------------------------------------------------
# window and prefix-identity checks


def test_every_window_contains(paper12):
    w6 = paper12.apply_n(chr(paper12.start), 6)
    assert every_window_contains(w6, paper12.start, 16)
    assert not every_window_contains(w6, paper12.start, 3)


def test_window_missing_letter():
    assert not every_window_contains("aaaa", 1, 2)
    assert every_window_contains("", 0, 4)


def test_prefix_identity_paper12(paper12):
    prefix = fixed_point_prefix(paper12, 4**6 + 4**5).word
    for n in range(1, 6):
        assert prefix_identity_holds(paper12, n, prefix)


def test_prefix_identity_fails_thue_morse(thue_morse):
    prefix = fixed_point_prefix(thue_morse, 64).word
    assert not prefix_identity_holds(thue_morse, 1, prefix)
