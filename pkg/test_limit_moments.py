#!/usr/bin/env python3
"""Test delle funzioni t e u e delle vie A, B, C ai momenti limite."""

import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction as F
from pathlib import Path

import pytest

# Aggiungi src al path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from moments.algebra import WeightVector, character, power_sum  # noqa: E402
from moments.ccr_gue import matrix_moment  # noqa: E402
from moments.errors import InfeasibleSizeError, InputValidationError  # noqa: E402
from moments.limit_moments import (  # noqa: E402
    PartitionFunctionCache,
    SigmaVariant,
    chi_tau_via_sigma,
    chi_tau_via_sigma_bruteforce,
    hankel_minors,
    hankel_positivity_check,
    leading_principal_minors,
    moment_bound_check,
    moment_routeA,
    moment_routeB,
    moment_routeC,
    moment_routeC_bruteforce,
    moment_table,
    orbit_correspondence,
    t_incl_excl,
    t_pairing,
    tau_via_induced,
    u_function,
)
from moments.partitions import (  # noqa: E402
    enumerate_le2,
    enumerate_pairings,
    enumerate_partitions,
    kernel,
    parse_partition,
    tau_pi,
)
from moments.perm import product, star_transposition  # noqa: E402


def test_u_function(weights):
    cache = PartitionFunctionCache()
    assert u_function(weights, parse_partition("{1,2}"), cache) == 1
    assert u_function(weights, parse_partition("{1}{2}"), cache) == power_sum(weights, 3)
    assert u_function(weights, parse_partition("{1,6}{2,5}{3}{4,7}"), cache) == power_sum(weights, 4)
    # blocco di tre elementi: gamma_1^3 = gamma_1
    assert u_function(weights, parse_partition("{1,2,3}"), cache) == power_sum(weights, 2)


@pytest.mark.parametrize("k", range(1, 7))
def test_singleton_vanishing(three, k):
    cache = PartitionFunctionCache()
    for pi in enumerate_partitions(k):
        if pi.has_singleton:
            assert t_incl_excl(three, pi, cache) == 0, str(pi)


def test_t_of_single_pair(weights, half):
    expected = 1 - power_sum(weights, 3)
    rho = parse_partition("{1,2}")
    assert t_incl_excl(weights, rho) == expected
    assert t_pairing(weights, rho) == expected
    assert t_pairing(half, rho) == F(3, 4)
    assert t_incl_excl(weights, parse_partition("{1}")) == 0


@pytest.mark.parametrize("k", [2, 4, 6])
def test_t_pairing_matches_inclusion_exclusion(three, k):
    for rho in enumerate_pairings(k):
        assert t_pairing(three, rho) == t_incl_excl(three, rho), str(rho)


def test_t_pairing_rejects_non_pairings(three):
    with pytest.raises(InputValidationError):
        t_pairing(three, parse_partition("{1}{2}"))


def test_low_order_moments(weights):
    for route in (moment_routeA, moment_routeB, moment_routeC):
        assert route(weights, 0) == 1
        assert route(weights, 1) == 0
        assert route(weights, 3) == 0
        assert route(weights, 2) == 1 - power_sum(weights, 3)


@pytest.mark.parametrize("k", range(0, 9))
def test_routes_agree(weights, k):
    a = moment_routeA(weights, k)
    assert moment_routeB(weights, k) == a
    assert moment_routeC(weights, k) == a
    assert matrix_moment(weights, k) == a


@pytest.mark.parametrize("d", [2, 3, 4])
def test_uniform_fourth_moment(d):
    w = WeightVector.uniform(d)
    expected = 2 - F(5, d * d) + F(3, d ** 4)
    assert moment_routeA(w, 4) == expected
    assert moment_routeC(w, 4) == expected
    if d == 2:
        assert expected == F(15, 16)


def test_route_caps(half):
    with pytest.raises(InfeasibleSizeError):
        moment_routeA(half, 13)
    with pytest.raises(InfeasibleSizeError):
        moment_routeB(half, 6, max_k=4)
    with pytest.raises(InputValidationError):
        moment_routeC(half, -1)


def test_chi_tau_via_sigma_on_four_pairs(half):
    pi = parse_partition("{3,8}{4,7}{1,6}{2,5}")
    assert chi_tau_via_sigma(half, pi) == power_sum(half, 3) == F(1, 4)


def test_chi_tau_via_sigma_single_singleton(weights):
    pi = parse_partition("{1}")
    assert chi_tau_via_sigma(weights, pi) == power_sum(weights, 2)
    assert character(weights, tau_pi(pi)) == power_sum(weights, 2)


@pytest.mark.parametrize("variant", list(SigmaVariant))
def test_chi_tau_via_sigma_matches_character(three, variant):
    for k in range(1, 6):
        for pi in enumerate_le2(k):
            expected = character(three, tau_pi(pi))
            assert chi_tau_via_sigma(three, pi, variant) == expected, str(pi)
            assert chi_tau_via_sigma_bruteforce(three, pi, variant) == expected, str(pi)


def test_colouring_oracle_guard(three):
    with pytest.raises(InfeasibleSizeError):
        chi_tau_via_sigma_bruteforce(three, parse_partition("{1,2}{3,4}"), limit=10)


def test_route_c_bruteforce(half):
    assert moment_routeC_bruteforce(half, 2) == F(3, 4)
    w = WeightVector.parse("2/3,1/3")
    for k in range(0, 7):
        assert moment_routeC_bruteforce(w, k) == moment_routeA(w, k)


def test_moment_bound(weights):
    for k in (2, 4, 6, 8):
        assert moment_bound_check(weights, k)
    with pytest.raises(InputValidationError):
        moment_bound_check(weights, 3)


def test_hankel_positivity(weights):
    minors = hankel_minors(weights, 4)
    assert len(minors) == 4
    assert minors[0] == 1
    assert minors[1] == 1 - power_sum(weights, 3)
    assert all(m >= 0 for m in minors)
    assert hankel_positivity_check(weights)


def test_leading_principal_minors():
    matrix = [[F(2), F(1)], [F(1), F(3)]]
    assert leading_principal_minors(matrix) == [F(2), F(5)]
    assert leading_principal_minors([[F(0), F(1)], [F(1), F(0)]]) == [F(0), F(-1)]


def test_moment_table(half):
    assert moment_table(half, 4) == [1, 0, F(3, 4), 0, F(15, 16)]


def test_orbit_correspondence_four_pairs():
    tau_sizes, intersections, all_meet = orbit_correspondence(parse_partition("{3,8}{4,7}{1,6}{2,5}"))
    assert tau_sizes == intersections == [1, 1, 3]
    assert all_meet


@pytest.mark.parametrize("k", range(1, 9))
def test_orbit_correspondence_exhaustive(k):
    for pi in enumerate_le2(k):
        tau_sizes, intersections, all_meet = orbit_correspondence(pi)
        assert tau_sizes == intersections, str(pi)
        assert all_meet, str(pi)


@pytest.mark.parametrize("k", range(1, 8))
def test_tau_from_induced_permutation(k):
    for pi in enumerate_le2(k):
        assert tau_via_induced(pi) == tau_pi(pi), str(pi)


def test_cache_counts_hits(three):
    cache = PartitionFunctionCache()
    pi = parse_partition("{1,2}{3,4}")
    first = t_incl_excl(three, pi, cache)
    misses = cache.misses
    assert t_incl_excl(three, pi, cache) == first
    assert cache.misses == misses
    assert cache.hits >= 1
    assert cache.stats()["t_entries"] >= 1
    cache.clear()
    assert cache.stats() == {"u_entries": 0, "t_entries": 0, "hits": 0, "misses": 0}


def word_character(w, indices):
    return character(w, product(*(star_transposition(i) for i in indices)))


@pytest.mark.parametrize("first, second", [
    ((1, 2, 1, 3), (5, 2, 5, 9)),
    ((1, 1, 2, 2), (4, 4, 1, 1)),
    ((2, 3, 1, 2, 3), (7, 1, 6, 7, 1)),
    ((1, 2, 3, 4), (4, 3, 2, 1)),
])
def test_u_depends_only_on_kernel(weights, first, second):
    assert kernel(first) == kernel(second)
    value = u_function(weights, kernel(first), PartitionFunctionCache())
    assert word_character(weights, first) == value
    assert word_character(weights, second) == value


@pytest.mark.parametrize("k", [4, 5, 6])
def test_cached_values_match_recomputation(three, k):
    shared = PartitionFunctionCache()
    for pi in enumerate_partitions(k):
        t_incl_excl(three, pi, shared)
    for pi in enumerate_partitions(k):
        assert t_incl_excl(three, pi, shared) == t_incl_excl(three, pi, PartitionFunctionCache()), str(pi)
        assert u_function(three, pi, shared) == u_function(three, pi, PartitionFunctionCache()), str(pi)


def test_cache_counters_under_threads(three):
    cache = PartitionFunctionCache()
    parts = list(enumerate_partitions(5))

    def lookups(_):
        for pi in parts:
            u_function(three, pi, cache)
        return len(parts)

    with ThreadPoolExecutor(max_workers=8) as pool:
        calls = sum(pool.map(lookups, range(16)))
    stats = cache.stats()
    assert stats["hits"] + stats["misses"] == calls
    assert stats["u_entries"] == len(parts)
