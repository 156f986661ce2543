"""Suite di verifica eseguite dal comando verify."""

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Tuple

from .algebra import WeightVector, character
from .ccr_gue import (
    EntryMomentSpec,
    Star,
    ccr_normal_order_oracle,
    ccr_wick,
    convolution_check,
    entry_moment,
    entry_moment_factored,
    matrix_moment,
    offdiagonal_parameters,
    semicircle_moment,
)
from .config import DepthProfile
from .finite_scale import A0, mixed_trace
from .limit_moments import (
    PartitionFunctionCache,
    SigmaVariant,
    TauBuilder,
    chi_tau_via_sigma,
    hankel_minors,
    moment_bound_check,
    orbit_correspondence,
    t_incl_excl,
)
from .partitions import (
    block_order,
    enumerate_le2,
    enumerate_pairings,
    enumerate_partitions,
    is_non_crossing,
    sigma_pi,
)
from .perm import compose, forward_cycle, orbits, random_permutation
from .routes import ALL_ROUTES, Route, evaluate_routes

_LOGGER = logging.getLogger(__name__)

MAX_REPORTED_FAILURES = 10


@dataclass
class SuiteResult:
    """Esito di una suite di verifica."""
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    skipped: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, condition: bool, description: Callable[[], str]) -> None:
        self.checked += 1
        if not condition:
            if len(self.failures) < MAX_REPORTED_FAILURES:
                self.failures.append(description())
            elif len(self.failures) == MAX_REPORTED_FAILURES:
                self.failures.append("...")


def singleton_vanishing(w: WeightVector, max_k: int,
                        cache: Optional[PartitionFunctionCache] = None) -> SuiteResult:
    """t(pi) = 0 per ogni partizione con un blocco singoletto."""
    result = SuiteResult("singleton vanishing")
    for k in range(1, max_k + 1):
        for pi in enumerate_partitions(k):
            if pi.has_singleton:
                value = t_incl_excl(w, pi, cache)
                result.check(value == 0, lambda: f"t({pi}) = {value}")
    return result


def orbit_correspondence_suite(max_k: int, tau_builder: TauBuilder) -> SuiteResult:
    """Orbite di tau_pi contro le intersezioni |R ^ B_pi|, e ogni orbita incontra B_pi."""
    result = SuiteResult("orbit correspondence")
    for k in range(1, max_k + 1):
        for pi in enumerate_le2(k):
            tau_sizes, intersections, all_meet = orbit_correspondence(pi, tau_builder)
            result.check(tau_sizes == intersections,
                         lambda: f"{pi}: tau orbits {tau_sizes} vs intersections {intersections}")
            result.check(all_meet, lambda: f"{pi}: an orbit of eta*sigma misses B_pi")
    return result


def noncrossing_identity(max_k: int, tau_builder: TauBuilder) -> SuiteResult:
    """Per le coppie non incrociate tau_pi = id e ogni orbita incontra B_pi una volta."""
    result = SuiteResult("non-crossing identity")
    for k in range(2, max_k + 1, 2):
        for pi in enumerate_pairings(k):
            if not is_non_crossing(pi):
                continue
            tau = tau_builder(pi)
            result.check(tau.is_identity, lambda: f"{pi}: tau = {tau}")
            eta_sigma = compose(forward_cycle(k + 1), sigma_pi(pi))
            b_set = block_order(pi).b_set
            counts = [len(b_set.intersection(o)) for o in orbits(eta_sigma, k + 1).orbits]
            result.check(all(c == 1 for c in counts), lambda: f"{pi}: |R ^ B| = {counts}")
    return result


def sigma_character(w: WeightVector, max_k: int, tau_builder: TauBuilder) -> SuiteResult:
    """chi(tau_pi) letto sulle orbite di eta_{k+1} sigma_pi e di eta_k sigma_pi."""
    result = SuiteResult("character via sigma")
    for k in range(1, max_k + 1):
        for pi in enumerate_le2(k):
            expected = character(w, tau_builder(pi))
            for variant in SigmaVariant:
                value = chi_tau_via_sigma(w, pi, variant)
                result.check(value == expected,
                             lambda: f"{pi} ({variant.value}): {value} != {expected}")
    return result


def _parameter_pairs(w: WeightVector) -> List[Tuple[Fraction, Fraction]]:
    pairs = [offdiagonal_parameters(w, u, v)
             for u in range(1, w.d + 1) for v in range(u + 1, w.d + 1)]
    pairs.extend([(w.weights[0], w.weights[-1]), (w.weights[-1], w.weights[-1])])
    return list(dict.fromkeys(pairs))


def _words(max_length: int) -> Iterable[Tuple[Star, ...]]:
    for length in range(1, max_length + 1):
        yield from itertools.product((Star.ONE, Star.STAR), repeat=length)


def ccr_wick_suite(w: WeightVector, max_length: int) -> SuiteResult:
    """Wick CCR contro il riordino normale su tutte le parole."""
    result = SuiteResult("CCR-Wick vs normal ordering")
    for omega_1star, omega_star1 in _parameter_pairs(w):
        for word in _words(max_length):
            wick = ccr_wick(omega_1star, omega_star1, word)
            oracle = ccr_normal_order_oracle(omega_1star, omega_star1, word)
            result.check(wick == oracle, lambda: (
                f"{''.join(c.value for c in word)} with ({omega_1star},{omega_star1}): "
                f"{wick} != {oracle}"))
    return result


def route_agreement(w: WeightVector, max_k: int, order_cap: int, tau_builder: TauBuilder,
                    routes: Tuple[Route, ...] = ALL_ROUTES) -> SuiteResult:
    result = SuiteResult("route agreement")
    for k in range(0, max_k + 1):
        values, _ = evaluate_routes(w, k, routes, order_cap, tau_builder)
        distinct = set(values.values())
        result.check(len(distinct) == 1,
                     lambda: f"k={k}: " + ", ".join(f"{r.value}={v}" for r, v in values.items()))
    return result


def moment_bound(w: WeightVector, max_k: int, order_cap: int) -> SuiteResult:
    result = SuiteResult("moment bound")
    for k in range(2, max_k + 1, 2):
        result.check(moment_bound_check(w, k, order_cap), lambda: f"bound violated at k={k}")
    return result


def hankel_positivity(w: WeightVector, size: int, order_cap: int) -> SuiteResult:
    result = SuiteResult("Hankel positivity")
    minors = hankel_minors(w, size, order_cap)
    for n, minor in enumerate(minors, start=1):
        result.check(minor >= 0, lambda: f"leading minor of order {n} is {minor}")
    result.notes.append("minors: " + ", ".join(str(m) for m in minors))
    return result


def convolution(d: int, max_k: int) -> SuiteResult:
    result = SuiteResult("GUE convolution")
    for k in range(0, max_k + 1):
        result.check(convolution_check(d, k), lambda: f"d={d}, k={k}")
    # distanza dei momenti a pesi uniformi dal semicerchio
    uniform = WeightVector.uniform(d)
    for k in range(2, max_k + 1, 2):
        moment, catalan = matrix_moment(uniform, k), semicircle_moment(k)
        result.notes.append(f"k={k}: moment {moment}, semicircle {catalan}, gap {catalan - moment}")
    return result


def randomized_invariance(w: WeightVector, seed: int, samples: int, entry_length: int) -> SuiteResult:
    """Funzione di classe, indici nuovi nelle tracce miste, fattorizzazione delle entrate."""
    rng = random.Random(seed)
    result = SuiteResult("randomized invariance")
    for _ in range(samples):
        p = random_permutation(rng.randint(1, 8), rng)
        q = random_permutation(rng.randint(1, 8), rng)
        left, right = character(w, compose(p, q)), character(w, compose(q, p))
        result.check(left == right, lambda: f"chi({p}*{q}) = {left} != chi({q}*{p}) = {right}")

        t = tuple(A0 if rng.random() < 0.4 else rng.randint(1, 4) for _ in range(rng.randint(1, 6)))
        markers = sum(1 for x in t if x is A0)
        fresh = rng.sample(range(10, 40), markers)
        default, shuffled = mixed_trace(w, t), mixed_trace(w, t, fresh)
        result.check(default == shuffled, lambda: f"tr{t}: {default} != {shuffled} with {fresh}")

        length = rng.randint(1, entry_length)
        spec = EntryMomentSpec(
            tuple(rng.randint(1, w.d) for _ in range(length)),
            tuple(rng.randint(1, w.d) for _ in range(length)),
        )
        direct, factored = entry_moment(w, spec), entry_moment_factored(w, spec)
        result.check(direct == factored, lambda: f"{spec}: {direct} != {factored}")
    return result


def run_suites(w: WeightVector, profile: DepthProfile, order_cap: int, tau_builder: TauBuilder,
               gue: bool = False, seed: int = 0,
               cache: Optional[PartitionFunctionCache] = None) -> List[SuiteResult]:
    capped = profile.within_order_cap(order_cap)
    if capped != profile:
        _LOGGER.warning(f"Profile '{profile.name}' limited to moment order {order_cap} by max_order_cap")
        profile = capped
    suites: List[Tuple[str, Callable[[], SuiteResult]]] = [
        ("singleton vanishing", lambda: singleton_vanishing(w, profile.singleton_k, cache)),
        ("orbit correspondence", lambda: orbit_correspondence_suite(profile.orbit_k, tau_builder)),
        ("non-crossing identity", lambda: noncrossing_identity(profile.noncrossing_k, tau_builder)),
        ("character via sigma", lambda: sigma_character(w, min(profile.orbit_k, 6), tau_builder)),
        ("CCR-Wick vs normal ordering", lambda: ccr_wick_suite(w, profile.ccr_length)),
        ("route agreement", lambda: route_agreement(w, profile.route_agreement_k, order_cap, tau_builder)),
        ("moment bound", lambda: moment_bound(w, profile.bound_k, order_cap)),
        ("Hankel positivity", lambda: hankel_positivity(w, profile.hankel_size, order_cap)),
        ("randomized invariance",
         lambda: randomized_invariance(w, seed, profile.entry_samples, profile.entry_length)),
    ]
    if gue or w.is_uniform:
        suites.append(("GUE convolution", lambda: convolution(w.d, profile.convolution_k)))

    results = []
    for name, run in suites:
        try:
            suite = run()
        except Exception as e:
            _LOGGER.error(f"Suite '{name}' raised: {e}")
            suite = SuiteResult(name, failures=[f"raised {type(e).__name__}: {e}"])
        status = "passed" if suite.passed else "FAILED"
        _LOGGER.info(f"Suite '{suite.name}' {status} ({suite.checked} checks)")
        results.append(suite)
    if not (gue or w.is_uniform):
        results.append(SuiteResult("GUE convolution", skipped=True,
                                   notes=["weights are not uniform; pass --gue to run at d"]))
    return results
