"""Shared fixtures, independent oracles, and hypothesis strategies."""

from __future__ import annotations

import pytest
from hypothesis import assume
from hypothesis import strategies as st

from iteralg.cli import gallery_text
from iteralg.words import FactorSet, Morphism, factor_closure, is_prolongable, parse_morphism


# ---------------------------------------------------------------------------
# oracles: deliberately naive, sharing no code with the library paths they check


def naive_power(m: Morphism, n: int, seed: int | None = None) -> list[int]:
    """phi^n(seed letter) by literal list substitution."""
    word = [m.start if seed is None else seed]
    for _ in range(n):
        word = [ord(ch) for a in word for ch in m.images[a]]
    return word


def brute_factor_set(word: str, max_len: int) -> set[str]:
    out = {""}
    for i in range(len(word)):
        for j in range(i + 1, min(i + max_len, len(word)) + 1):
            out.add(word[i:j])
    return out


def brute_factor_count(word: str, n: int) -> int:
    if n == 0:
        return 1
    return len({word[i : i + n] for i in range(len(word) - n + 1)})


def letter_count(word: list[int], letter: int) -> int:
    return sum(1 for c in word if c == letter)


# ---------------------------------------------------------------------------
# gallery fixtures


def _gallery(name: str) -> Morphism:
    return parse_morphism(gallery_text(name), filename=f"gallery/{name}.morph")


@pytest.fixture(scope="session")
def paper12() -> Morphism:
    return _gallery("paper12")


@pytest.fixture(scope="session")
def fibonacci() -> Morphism:
    return _gallery("fibonacci")


@pytest.fixture(scope="session")
def thue_morse() -> Morphism:
    return _gallery("thue-morse")


@pytest.fixture(scope="session")
def periodic_ab() -> Morphism:
    return _gallery("periodic-ab")


@pytest.fixture(scope="session")
def ba_example() -> Morphism:
    return _gallery("ba-example")


_closure_cache: dict[tuple[str, int], FactorSet] = {}


@pytest.fixture(scope="session")
def closure():
    """Session-cached factor closures keyed by gallery name and bound."""

    def get(name: str, max_len: int) -> FactorSet:
        key = (name, max_len)
        if key not in _closure_cache:
            _closure_cache[key] = factor_closure(_gallery(name), max_len)
        return _closure_cache[key]

    return get


# ---------------------------------------------------------------------------
# strategies


@st.composite
def small_morphisms(
    draw,
    max_letters: int = 4,
    max_image: int = 3,
    allow_erasing: bool = False,
    graded: bool = False,
):
    """Random morphisms prolongable on their start letter."""
    n = draw(st.integers(min_value=1, max_value=max_letters))
    start = draw(st.integers(min_value=0, max_value=n - 1))
    letters = tuple(f"a{i}" for i in range(n))
    low = 0 if allow_erasing else 1
    images = []
    for i in range(n):
        if i == start:
            tail_len = draw(st.integers(min_value=1, max_value=max_image - 1))
            tail = "".join(
                chr(draw(st.integers(0, n - 1))) for _ in range(tail_len)
            )
            images.append(chr(start) + tail)
        else:
            ln = draw(st.integers(min_value=low, max_value=max_image))
            images.append("".join(chr(draw(st.integers(0, n - 1))) for _ in range(ln)))
    degrees = (
        tuple(draw(st.integers(1, 3)) for _ in range(n)) if graded else None
    )
    m = Morphism(
        letters=letters, images=tuple(images), start=start, degrees=degrees
    )
    assume(is_prolongable(m, start))
    return m
