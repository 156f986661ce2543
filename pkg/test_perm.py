#!/usr/bin/env python3
"""Test delle permutazioni a supporto finito."""

import random
import sys
from pathlib import Path

import pytest

# Aggiungi src al path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from moments.errors import InputValidationError  # noqa: E402
from moments.perm import (  # noqa: E402
    IDENTITY,
    Permutation,
    compose,
    forward_cycle,
    induced,
    orbits,
    parse_cycles,
    product,
    random_permutation,
    star_transposition,
)


def gammas(*indices):
    return [star_transposition(n) for n in indices]


def test_transposition_is_involution():
    t = parse_cycles("(1,2)")
    assert compose(t, t).is_identity


def test_compose_acts_right_factor_first():
    assert compose(star_transposition(1), star_transposition(2)) == parse_cycles("(1,3,2)")
    assert star_transposition(1) * star_transposition(2) == parse_cycles("(1,3,2)")


def test_products_of_star_transpositions():
    assert product(*gammas(2, 3, 4, 1, 3, 2, 1)) == parse_cycles("(1,5,4,2)")
    assert product(*gammas(3, 4, 1, 2, 4, 3, 2, 1)) == parse_cycles("(1,5,3)")


@pytest.mark.parametrize("n, expected", [(1, "(1,2)"), (2, "(1,3)"), (5, "(1,6)")])
def test_star_transposition(n, expected):
    assert star_transposition(n) == parse_cycles(expected)


def test_star_transposition_rejects_zero():
    with pytest.raises(InputValidationError):
        star_transposition(0)


def test_forward_cycle():
    assert forward_cycle(1).is_identity
    assert forward_cycle(3) == parse_cycles("(1,2,3)")
    assert forward_cycle(9)(9) == 1
    with pytest.raises(InputValidationError):
        forward_cycle(0)


def test_orbits_include_fixed_points():
    p = parse_cycles("(1,3,2)(5,6)")
    assert orbits(p, 6).orbits == ((1, 3, 2), (4,), (5, 6))
    assert orbits(IDENTITY, 4).orbits == ((1,), (2,), (3,), (4,))
    assert orbits(p, 8).sizes() == [3, 1, 2, 1, 1]
    assert orbits(p, 6).orbit_of(2) == (1, 3, 2)
    assert orbits(p, 6).labels() == [0, 0, 0, 1, 2, 2]
    with pytest.raises(InputValidationError):
        orbits(p, 6).orbit_of(7)


def test_orbits_of_eta_sigma_for_four_pairs():
    sigma = parse_cycles("(3,8)(4,7)(1,6)(2,5)")
    eta_sigma = compose(forward_cycle(9), sigma)
    assert eta_sigma == parse_cycles("(1,7,5,3,9)(2,6)(4,8)")
    assert orbits(eta_sigma, 9).orbits == ((1, 7, 5, 3, 9), (2, 6), (4, 8))


def test_orbits_bound_below_support():
    with pytest.raises(InputValidationError):
        orbits(parse_cycles("(1,5)"), 3)


def test_induced_permutation():
    p = parse_cycles("(1,3,2)(5,6)")
    assert induced(p, {1, 2, 5, 7}) == parse_cycles("(1,2)")
    assert induced(p, range(1, 8)) == p
    assert induced(parse_cycles("(1,2,3,4)"), {1, 3}) == parse_cycles("(1,3)")
    with pytest.raises(InputValidationError):
        induced(p, [])


def test_cycle_text_round_trip():
    assert str(parse_cycles("(1,3,2)(5,6)")) == "(1,3,2)(5,6)"
    assert str(parse_cycles("(3,2,1)")) == "(1,3,2)"
    assert str(IDENTITY) == "()"
    assert parse_cycles("()").is_identity
    assert parse_cycles("(4)").is_identity


@pytest.mark.parametrize("text", ["(1,2", "(1,2)(2,3)", "(a,b)", "1,2", "(0,1)"])
def test_parse_cycles_rejects(text):
    with pytest.raises(InputValidationError):
        parse_cycles(text)


def test_permutation_rejects_non_bijection():
    with pytest.raises(InputValidationError):
        Permutation((1, 1))


def test_trailing_fixed_points_are_trimmed():
    assert Permutation((2, 1, 3, 4)) == Permutation((2, 1))
    assert Permutation((2, 1, 3, 4)).support_bound == 2


def test_inverse_order_and_cycle_type():
    p = parse_cycles("(1,3,2)(5,6)")
    assert compose(p, p.inverse()).is_identity
    assert p.cycle_type() == (3, 2)
    assert p.order() == 6
    assert IDENTITY.order() == 1
    assert p.cycles() == [(1, 3, 2), (5, 6)]


@pytest.mark.parametrize("seed", range(20))
def test_compose_is_associative(seed):
    rng = random.Random(seed)
    p, q, r = (random_permutation(rng.randint(1, 12), rng) for _ in range(3))
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@pytest.mark.parametrize("seed", range(20))
def test_inverse_of_random_permutation(seed):
    rng = random.Random(seed)
    p = random_permutation(rng.randint(1, 12), rng)
    assert compose(p, p.inverse()).is_identity
    assert compose(p.inverse(), p).is_identity


@pytest.mark.parametrize("seed", range(20))
def test_induced_is_transitive(seed):
    rng = random.Random(seed)
    p = random_permutation(10, rng)
    outer = set(rng.sample(range(1, 13), rng.randint(1, 12)))
    inner = set(rng.sample(sorted(outer), rng.randint(1, len(outer))))
    assert induced(induced(p, outer), inner) == induced(p, inner)


@pytest.mark.parametrize("n", range(1, 13))
def test_forward_cycle_order(n):
    assert forward_cycle(n).order() == n
