#!/usr/bin/env python3
"""Test di pesi, somme di potenze e carattere."""

import random
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

# Aggiungi src al path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from moments.algebra import (  # noqa: E402
    WeightVector,
    character,
    double_factorial,
    exponent_sum,
    power_sum,
    scalar_from_json,
    scalar_to_json,
    to_scalar,
)
from moments.errors import InputValidationError  # noqa: E402
from moments.perm import IDENTITY, compose, parse_cycles, random_permutation  # noqa: E402
from moments.report import RationalModel  # noqa: E402


def test_power_sums(weights):
    assert power_sum(weights, 1) == 1
    assert power_sum(weights, 2) < 1


def test_power_sum_values(half):
    assert power_sum(half, 3) == F(1, 4)
    assert power_sum(WeightVector.parse("2/3,1/3"), 2) == F(5, 9)
    with pytest.raises(InputValidationError):
        power_sum(half, 0)


def test_exponent_sum_zero_counts_colours(three):
    assert exponent_sum(three, 0) == 3
    assert exponent_sum(three, 2) == power_sum(three, 2)


def test_character_examples(weights, half):
    p = parse_cycles("(1,3,2)(5,6)")
    assert character(weights, p) == power_sum(weights, 2) * power_sum(weights, 3)
    assert character(weights, IDENTITY) == 1
    assert character(half, parse_cycles("(1,2,3)")) == F(1, 4)


def test_character_is_class_function(three):
    p, q = parse_cycles("(1,4,2)(3,5)"), parse_cycles("(2,6,5,1)")
    assert character(three, compose(p, q)) == character(three, compose(q, p))


def test_weights_are_sorted_descending():
    w = WeightVector.parse("1/6, 1/2; 1/3")
    assert w.weights == (F(1, 2), F(1, 3), F(1, 6))
    assert w.d == 3
    assert not w.is_uniform
    assert WeightVector.uniform(4).is_uniform
    assert str(w) == "1/2,1/3,1/6"


@pytest.mark.parametrize("text", ["1/2,1/4", "1", "1/2,-1/2,1", "", "1/2,x", "1/0,1"])
def test_weight_validation(text):
    with pytest.raises(InputValidationError):
        WeightVector.parse(text)


def test_weights_must_sum_to_one():
    with pytest.raises(InputValidationError, match="sum to 1"):
        WeightVector.parse("1/2,1/4")


def test_floats_are_rejected():
    with pytest.raises(InputValidationError):
        to_scalar(0.5)
    assert to_scalar("3/6") == F(1, 2)


def test_weight_vectors_hash_by_value():
    assert WeightVector.parse("1/2,1/2") == WeightVector.uniform(2)
    assert hash(WeightVector.parse("1/2,1/2")) == hash(WeightVector.uniform(2))


def test_double_factorial():
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(7) == 105
    assert double_factorial(8) == 384


def test_scalar_json():
    data = scalar_to_json(F(-15, 16), approx=True)
    assert data == {"num": "-15", "den": "16", "approx": -0.9375}
    assert scalar_from_json(data) == F(-15, 16)
    with pytest.raises(InputValidationError):
        scalar_from_json({"num": "1"})


def test_rational_model_uses_scalar_json():
    value = F(-15, 16)
    assert RationalModel.of(value).model_dump() == scalar_to_json(value, approx=True)
    assert RationalModel.of(value, approx=False).approx is None
    assert RationalModel.of(value).to_fraction() == value
    with pytest.raises(InputValidationError):
        RationalModel(num="1", den="0").to_fraction()


def test_power_sums_strictly_decrease(weights):
    sums = [power_sum(weights, n) for n in range(1, 17)]
    assert all(s > 0 for s in sums)
    assert all(a > b for a, b in zip(sums, sums[1:]))


@pytest.mark.parametrize("seed", range(15))
def test_character_bounds(weights, seed):
    rng = random.Random(seed)
    p = random_permutation(rng.randint(2, 10), rng)
    value = character(weights, p)
    assert 0 < value <= 1
    assert (value == 1) == p.is_identity


def test_character_is_one_only_at_identity(weights):
    assert character(weights, IDENTITY) == 1
    assert character(weights, parse_cycles("(1,2)")) < 1
    assert character(weights, parse_cycles("(1,9)(2,3,4,5,6,7,8)")) < 1
