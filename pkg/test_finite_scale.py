#!/usr/bin/env python3
"""Test delle quantita' a n finito: tracce miste, tracce centrate e momenti di s_n."""

import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

# Aggiungi src al path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from moments.algebra import WeightVector, power_sum  # noqa: E402
from moments.errors import InfeasibleSizeError, InputValidationError  # noqa: E402
from moments.finite_scale import (  # noqa: E402
    A0,
    SymbolicMoment,
    a0_moment,
    a0_spectral,
    centered_trace,
    centered_trace_bruteforce,
    falling_factorial,
    lln_variance,
    lln_variance_expanded,
    mixed_trace,
    parse_mixed_tuple,
    s_n_moment,
    s_n_moment_bruteforce,
)
from moments.limit_moments import PartitionFunctionCache, moment_routeA, t_incl_excl  # noqa: E402
from moments.partitions import enumerate_partitions, parse_partition  # noqa: E402


@pytest.mark.parametrize("k", range(1, 6))
def test_mixed_trace_of_a0_powers(weights, k):
    assert mixed_trace(weights, (A0,) * k) == power_sum(weights, k + 1)


def test_mixed_trace_examples(weights):
    assert mixed_trace(weights, (4,)) == power_sum(weights, 2)
    assert mixed_trace(weights, (1, 1)) == 1
    assert mixed_trace(weights, (1, 2)) == power_sum(weights, 3)
    assert mixed_trace(weights, (A0, A0)) == power_sum(weights, 3)
    assert mixed_trace(weights, (2, A0)) == power_sum(weights, 3)


def test_mixed_trace_fresh_indices(three):
    t = (1, A0, 1, A0)
    assert mixed_trace(three, t) == mixed_trace(three, t, fresh=[5, 9])
    with pytest.raises(InputValidationError):
        mixed_trace(three, t, fresh=[1, 9])
    with pytest.raises(InputValidationError):
        mixed_trace(three, t, fresh=[5])
    with pytest.raises(InputValidationError):
        mixed_trace(three, ())


def test_parse_mixed_tuple():
    assert parse_mixed_tuple("1, a0 ,2") == (1, A0, 2)
    assert parse_mixed_tuple("A0 A0") == (A0, A0)
    for text in ("", "0", "1,x"):
        with pytest.raises(InputValidationError):
            parse_mixed_tuple(text)


@pytest.mark.parametrize("k", range(1, 5))
def test_centered_trace_matches_expansion(three, k):
    cache = PartitionFunctionCache()
    for pi in enumerate_partitions(k):
        assert centered_trace(three, pi, cache) == centered_trace_bruteforce(three, pi), str(pi)


def test_falling_factorial():
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(3, 4) == 0
    assert falling_factorial(4, 0) == 1


@pytest.mark.parametrize("n", [1, 2, 5, 40])
def test_second_moment_is_exact_at_every_scale(weights, n):
    assert s_n_moment(weights, n, 0) == 1
    assert s_n_moment(weights, n, 2) == 1 - power_sum(weights, 3)


def test_fourth_moment_closed_form(weights):
    limit = moment_routeA(weights, 4)
    t_block = t_incl_excl(weights, parse_partition("{1,2,3,4}"))
    gaps = []
    for n in (1, 4, 8, 16, 32):
        value = s_n_moment(weights, n, 4)
        assert value == limit + (t_block - limit) / n
        gaps.append(abs(limit - value))
    assert gaps == sorted(gaps, reverse=True)


SIXTH_MOMENT_GAPS = {
    "1/2,1/2": (F(9, 128), F(63, 4096)),
    "2/3,1/3": (F(3019, 23328), F(11635, 373248)),
    "1/2,1/3,1/6": (F(623, 93312), F(667, 186624)),
    "1/3,1/3,1/3": (F(389, 5832), F(1349, 93312)),
}


def test_sixth_moment_converges(weights):
    limit = moment_routeA(weights, 6)
    coarse, fine = (abs(s_n_moment(weights, n, 6) - limit) for n in (8, 32))
    assert (coarse, fine) == SIXTH_MOMENT_GAPS[str(weights)]
    assert fine < coarse


@pytest.mark.parametrize("k", [5, 6])
def test_skipping_singletons_does_not_change_moments(three, k):
    cache = PartitionFunctionCache()
    assert s_n_moment(three, 4, k, cache) == s_n_moment(three, 4, k, cache, skip_singletons=False)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("k", range(0, 5))
def test_s_n_moment_matches_naive_sum(three, n, k):
    assert s_n_moment(three, n, k) == s_n_moment_bruteforce(three, n, k)


def test_odd_moments_are_symbolic_or_zero(three):
    value = s_n_moment(three, 2, 3)
    assert isinstance(value, (F, SymbolicMoment))
    assert s_n_moment(three, 2, 1) == 0


def test_symbolic_moment():
    m = SymbolicMoment(F(2), 4, 3)
    assert m.approx() == pytest.approx(0.25)
    assert str(m) == "2 * 4^(-3/2)"


def test_s_n_guards(half):
    with pytest.raises(InputValidationError):
        s_n_moment(half, 0, 2)
    with pytest.raises(InputValidationError):
        s_n_moment(half, 3, -1)
    with pytest.raises(InfeasibleSizeError):
        s_n_moment(half, 3, 11)
    with pytest.raises(InfeasibleSizeError):
        s_n_moment_bruteforce(half, 10, 7)


def test_lln_variance(weights, half):
    assert lln_variance(half, 1) == F(3, 4)
    for n in (1, 3, 16):
        assert lln_variance_expanded(weights, n) == (1 - power_sum(weights, 3)) / n
    # n > 16 usa i due nuclei
    assert lln_variance(weights, 20) == (1 - power_sum(weights, 3)) / 20
    with pytest.raises(InputValidationError):
        lln_variance(weights, 0)


def test_a0_spectral_measure():
    w = WeightVector.parse("1/4,1/4,1/2")
    assert a0_spectral(w) == [(F(1, 2), F(1, 2)), (F(1, 4), F(1, 2))]
    assert a0_spectral(WeightVector.uniform(3)) == [(F(1, 3), F(1))]


def test_a0_spectral_masses_sum_to_one(weights):
    measure = a0_spectral(weights)
    assert sum(mass for _, mass in measure) == 1
    assert all(mass > 0 for _, mass in measure)
    assert [atom for atom, _ in measure] == sorted(set(weights.weights), reverse=True)


@pytest.mark.parametrize("k", range(0, 6))
def test_a0_moments(weights, k):
    assert a0_moment(weights, k) == power_sum(weights, k + 1)
    if k:
        assert a0_moment(weights, k) == mixed_trace(weights, (A0,) * k)
