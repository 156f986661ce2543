"""Momenti della legge limite mu_w: funzioni t e u e le tre vie combinatorie.

Via A: somma di t(rho) sulle coppie rho.
Via B: somma pesata da doppi fattoriali di chi(tau_pi) su P_{<=2}(k).
Via C: somma su partizioni bicolori, valutata orbita per orbita.
"""

import itertools
import logging
import threading
from collections import Counter
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import WeightVector, character, double_factorial, exponent_sum
from .errors import InfeasibleSizeError, InputValidationError
from .partitions import (
    ENUMERATION_CAP,
    AtMostPairPartition,
    SetPartition,
    block_order,
    enumerate_bicoloured,
    enumerate_le2,
    enumerate_pairings,
    meet_pi_s,
    red_break,
    sigma_blue,
    sigma_pi,
    tau_pi,
)
from .perm import Permutation, compose, forward_cycle, induced, orbits, product, star_transposition

_LOGGER = logging.getLogger(__name__)

MAX_ROUTE_ORDER = 12
BRUTEFORCE_LIMIT = 10 ** 7

TauBuilder = Callable[[SetPartition], Permutation]


class SigmaVariant(str, Enum):
    """Le due forme di chi(tau_pi) tramite sigma_pi."""
    SHIFTED = "k+1"
    PLAIN = "k"


class PartitionFunctionCache:
    """Valori di u e t per (pesi, partizione canonica)."""

    def __init__(self):
        self._u: Dict[Tuple[WeightVector, SetPartition], Fraction] = {}
        self._t: Dict[Tuple[WeightVector, SetPartition], Fraction] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def _lookup(self, table, key, compute: Callable[[], Fraction]) -> Fraction:
        with self._lock:
            value = table.get(key)
            if value is not None:
                self.hits += 1
                return value
            self.misses += 1
        value = compute()
        with self._lock:
            table.setdefault(key, value)
        return value

    def u(self, w: WeightVector, pi: SetPartition, compute: Callable[[], Fraction]) -> Fraction:
        return self._lookup(self._u, (w, pi), compute)

    def t(self, w: WeightVector, pi: SetPartition, compute: Callable[[], Fraction]) -> Fraction:
        return self._lookup(self._t, (w, pi), compute)

    def clear(self) -> None:
        with self._lock:
            self._u.clear()
            self._t.clear()
            self.hits = 0
            self.misses = 0

    def stats(self) -> Dict[str, int]:
        with self._lock:
            return {
                "u_entries": len(self._u),
                "t_entries": len(self._t),
                "hits": self.hits,
                "misses": self.misses,
            }


_DEFAULT_CACHE = PartitionFunctionCache()


def _check_order(k: int, max_k: int) -> None:
    if k < 0:
        raise InputValidationError(f"Moment order must be >= 0, got {k}")
    if k > max_k:
        raise InfeasibleSizeError(f"Moment order {k} exceeds the configured cap {max_k}")


# Funzioni sulle partizioni


def _u_uncached(w: WeightVector, pi: SetPartition) -> Fraction:
    if pi.is_at_most_pair:
        return character(w, tau_pi(pi))
    # Una tupla qualsiasi con nucleo pi: l'indice del blocco
    labels = [i + 1 for i in pi.block_index]
    return character(w, product(*(star_transposition(i) for i in labels)))


def u_function(w: WeightVector, pi: SetPartition,
               cache: Optional[PartitionFunctionCache] = None) -> Fraction:
    """u(pi) = chi(gamma_i(1) ... gamma_i(k)) per una tupla i con ker(i) = pi."""
    cache = cache or _DEFAULT_CACHE
    return cache.u(w, pi, lambda: _u_uncached(w, pi))


def t_incl_excl(w: WeightVector, pi: SetPartition,
                cache: Optional[PartitionFunctionCache] = None,
                cap: int = ENUMERATION_CAP) -> Fraction:
    """t(pi) = sum_S (-1)^|S| u(pi ^ pi_S), sui 2^k sottoinsiemi S."""
    if pi.k > cap:
        raise InfeasibleSizeError(f"Inclusion-exclusion over 2^{pi.k} subsets exceeds cap {cap}")
    cache = cache or _DEFAULT_CACHE

    def compute() -> Fraction:
        total = Fraction(0)
        for mask in range(1 << pi.k):
            term = u_function(w, meet_pi_s(pi, mask), cache)
            total += -term if bin(mask).count("1") % 2 else term
        return total

    return cache.t(w, pi, compute)


def _broken(rho: SetPartition, mask: int) -> AtMostPairPartition:
    blocks: List[Tuple[int, ...]] = []
    for i, (p, q) in enumerate(rho.blocks):
        if (mask >> i) & 1:
            blocks.extend([(p,), (q,)])
        else:
            blocks.append((p, q))
    return AtMostPairPartition(tuple(blocks), rho.k)


def t_pairing(w: WeightVector, rho: SetPartition, tau_builder: TauBuilder = tau_pi) -> Fraction:
    """t(rho) per una coppia: somma su pi <= rho di (-1)^{|pi|_1/2} chi(tau_pi)."""
    if not rho.is_pairing:
        raise InputValidationError(f"{rho} is not a pairing")
    total = Fraction(0)
    for mask in range(1 << len(rho.blocks)):
        value = character(w, tau_builder(_broken(rho, mask)))
        total += -value if bin(mask).count("1") % 2 else value
    return total


# Le vie ai momenti


def moment_routeA(w: WeightVector, k: int, max_k: int = MAX_ROUTE_ORDER,
                  tau_builder: TauBuilder = tau_pi) -> Fraction:
    """mu(X^k) come somma di t(rho) sulle coppie rho di {1..k}."""
    _check_order(k, max_k)
    if k == 0:
        return Fraction(1)
    if k % 2:
        return Fraction(0)
    total = Fraction(0)
    count = 0
    for rho in enumerate_pairings(k):
        total += t_pairing(w, rho, tau_builder)
        count += 1
    _LOGGER.debug(f"Route A, k={k}: {count} pairings")
    return total


def moment_routeB(w: WeightVector, k: int, max_k: int = MAX_ROUTE_ORDER) -> Fraction:
    """Somma su P_{<=2}(k) di (-1)^{|pi|_1/2} (|pi|_1 - 1)!! chi(tau_pi)."""
    _check_order(k, max_k)
    if k == 0:
        return Fraction(1)
    if k % 2:
        return Fraction(0)
    total = Fraction(0)
    count = 0
    for pi in enumerate_le2(k):
        s = pi.singleton_count
        term = double_factorial(s - 1) * character(w, tau_pi(pi))
        total += -term if (s // 2) % 2 else term
        count += 1
    _LOGGER.debug(f"Route B, k={k}: {count} partitions with blocks of size <= 2")
    return total


def _orbit_exponent_product(w: WeightVector, perm: Permutation, bound: int,
                            weight_positions: Sequence[int]) -> Fraction:
    """Prodotto sulle orbite R di sum_j w_j^{e_R}, e_R = posizioni pesate in R."""
    labels = orbits(perm, bound).labels()
    counts = Counter(labels[m - 1] for m in weight_positions)
    result = Fraction(1)
    for orbit_idx in range(max(labels) + 1):
        result *= exponent_sum(w, counts.get(orbit_idx, 0))
    return result


def _colouring_sum(w: WeightVector, perm: Permutation, bound: int,
                   weight_positions: Sequence[int], limit: int) -> Fraction:
    """Somma esplicita sulle colorazioni i: {1..bound} -> {1..d} costanti sulle orbite."""
    if w.d ** bound > limit:
        raise InfeasibleSizeError(f"Colouring enumeration d^{bound} = {w.d ** bound} exceeds {limit}")
    images = [perm(m) for m in range(1, bound + 1)]
    total = Fraction(0)
    for colouring in itertools.product(range(w.d), repeat=bound):
        if any(colouring[images[m] - 1] != colouring[m] for m in range(bound)):
            continue
        term = Fraction(1)
        for pos in weight_positions:
            term *= w.weights[colouring[pos - 1]]
        total += term
    return total


def _sigma_setup(pi: AtMostPairPartition, variant: SigmaVariant) -> Tuple[Permutation, int, List[int]]:
    order = block_order(pi)
    sigma = sigma_pi(pi)
    if SigmaVariant(variant) is SigmaVariant.SHIFTED:
        bound = pi.k + 1
        positions = sorted(order.b_set)
    else:
        bound = pi.k
        positions = [1] + list(order.b)
    return compose(forward_cycle(bound), sigma), bound, positions


def chi_tau_via_sigma(w: WeightVector, pi: SetPartition,
                      variant: SigmaVariant = SigmaVariant.SHIFTED) -> Fraction:
    """chi(tau_pi) letto sulle orbite di eta * sigma_pi, un colore per orbita."""
    perm, bound, positions = _sigma_setup(pi.as_at_most_pair(), variant)
    return _orbit_exponent_product(w, perm, bound, positions)


def chi_tau_via_sigma_bruteforce(w: WeightVector, pi: SetPartition,
                                 variant: SigmaVariant = SigmaVariant.SHIFTED,
                                 limit: int = BRUTEFORCE_LIMIT) -> Fraction:
    perm, bound, positions = _sigma_setup(pi.as_at_most_pair(), variant)
    return _colouring_sum(w, perm, bound, positions, limit)


def _bicoloured_positions(rho) -> List[int]:
    positions = [1]
    positions.extend(q for _, q in rho.blue_pairs)
    for p, q in rho.red_pairs:
        positions.extend([p, q])
    return positions


def moment_routeC(w: WeightVector, k: int, max_k: int = MAX_ROUTE_ORDER) -> Fraction:
    """Somma sulle partizioni bicolori con i costante sulle orbite di eta_k * sigma_blue."""
    _check_order(k, max_k)
    if k == 0:
        return Fraction(1)
    if k % 2:
        return Fraction(0)
    eta = forward_cycle(k)
    total = Fraction(0)
    count = 0
    for rho in enumerate_bicoloured(k):
        value = _orbit_exponent_product(w, compose(eta, sigma_blue(rho)), k,
                                        _bicoloured_positions(rho))
        total += -value if len(rho.red_pairs) % 2 else value
        count += 1
    _LOGGER.debug(f"Route C, k={k}: {count} bicoloured pairings")
    return total


def moment_routeC_bruteforce(w: WeightVector, k: int, limit: int = BRUTEFORCE_LIMIT) -> Fraction:
    """Via C con la somma esplicita su i: {1..k} -> {1..d}."""
    if k == 0:
        return Fraction(1)
    if k % 2:
        return Fraction(0)
    eta = forward_cycle(k)
    total = Fraction(0)
    for rho in enumerate_bicoloured(k):
        value = _colouring_sum(w, compose(eta, sigma_blue(rho)), k,
                               _bicoloured_positions(rho), limit)
        total += -value if len(rho.red_pairs) % 2 else value
    return total


def moment_bound_check(w: WeightVector, k: int, max_k: int = MAX_ROUTE_ORDER) -> bool:
    """|mu(X^k)| <= 2^k (k-1)!!."""
    if k % 2:
        raise InputValidationError(f"Moment bound is stated for even orders, got {k}")
    return abs(moment_routeA(w, k, max_k)) <= 2 ** k * double_factorial(k - 1)


def moment_table(w: WeightVector, max_k: int, route: Callable[[WeightVector, int], Fraction] = moment_routeA) -> List[Fraction]:
    return [route(w, k) for k in range(max_k + 1)]


# Positivita' di Hankel


def leading_principal_minors(matrix: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    """Minori principali di testa per eliminazione esatta su Fraction."""
    n = len(matrix)
    minors = []
    for size in range(1, n + 1):
        rows = [list(matrix[i][:size]) for i in range(size)]
        det = Fraction(1)
        for col in range(size):
            pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
            if pivot is None:
                det = Fraction(0)
                break
            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                det = -det
            det *= rows[col][col]
            for r in range(col + 1, size):
                factor = rows[r][col] / rows[col][col]
                if factor:
                    for c in range(col, size):
                        rows[r][c] -= factor * rows[col][c]
        minors.append(det)
    return minors


def hankel_matrix(w: WeightVector, size: int = 4,
                  max_k: int = MAX_ROUTE_ORDER) -> List[List[Fraction]]:
    moments = moment_table(w, 2 * size - 2, lambda v, k: moment_routeA(v, k, max_k))
    return [[moments[i + j] for j in range(size)] for i in range(size)]


def hankel_minors(w: WeightVector, size: int = 4, max_k: int = MAX_ROUTE_ORDER) -> List[Fraction]:
    return leading_principal_minors(hankel_matrix(w, size, max_k))


def hankel_positivity_check(w: WeightVector, size: int = 4) -> bool:
    minors = hankel_minors(w, size)
    _LOGGER.debug(f"Hankel minors for w={w}: {[str(m) for m in minors]}")
    return all(m >= 0 for m in minors)


# Corrispondenza tra orbite di tau_pi e di eta_{k+1} * sigma_pi


def orbit_correspondence(pi: SetPartition, tau_builder: TauBuilder = tau_pi) -> Tuple[List[int], List[int], bool]:
    """Restituisce (taglie delle orbite di tau in 1..l+1, taglie |R ^ B|, ogni orbita incontra B)."""
    pi = pi.as_at_most_pair()
    order = block_order(pi)
    ell = len(pi.blocks)
    tau = tau_builder(pi)
    bound = max(ell + 1, tau.support_bound)
    tau_sizes = sorted(len(o) for o in orbits(tau, bound).orbits if max(o) <= ell + 1)
    eta_sigma = compose(forward_cycle(pi.k + 1), sigma_pi(pi))
    b_set = order.b_set
    intersections = [len(b_set.intersection(o)) for o in orbits(eta_sigma, pi.k + 1).orbits]
    all_meet = all(n > 0 for n in intersections)
    return tau_sizes, sorted(n for n in intersections if n > 0), all_meet


def tau_via_induced(pi: SetPartition) -> Permutation:
    """tau_pi ricostruita dalla restrizione di sigma_pi * eta_{k+1}^{-1} a B_pi.

    Con b_0 = k+1 e b_1 > ... > b_l i massimi, se la restrizione manda b_i
    in b_j allora tau_pi manda i+1 in j+1.
    """
    pi = pi.as_at_most_pair()
    order = block_order(pi)
    b_values = (pi.k + 1,) + order.b
    position = {b: i for i, b in enumerate(b_values)}
    restricted = induced(compose(sigma_pi(pi), forward_cycle(pi.k + 1).inverse()), b_values)
    images = [position[restricted(b)] + 1 for b in b_values]
    return Permutation(tuple(images))
