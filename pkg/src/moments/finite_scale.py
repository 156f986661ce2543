"""Quantita' esatte a n finito: tracce miste, tracce centrate, momenti di s_n."""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import regex

from .algebra import WeightVector, character, power_sum
from .errors import ConsistencyError, InfeasibleSizeError, InputValidationError
from .limit_moments import PartitionFunctionCache, t_incl_excl
from .partitions import SetPartition, enumerate_partitions
from .perm import product, star_transposition

_LOGGER = logging.getLogger(__name__)

MAX_SN_ORDER = 10
NAIVE_LIMIT = 10 ** 6


class A0Marker(str, Enum):
    """Segnaposto per l'operatore A0 in una tupla mista."""
    A0 = "A0"


A0 = A0Marker.A0

MixedEntry = Union[int, A0Marker]
MixedTuple = Tuple[MixedEntry, ...]


def parse_mixed_tuple(text: str) -> MixedTuple:
    """Legge "1,A0,2" in una tupla mista."""
    parts = [p for p in regex.split(r"[,\s]+", (text or "").strip()) if p]
    if not parts:
        raise InputValidationError("A mixed tuple must be non-empty")
    result: List[MixedEntry] = []
    for part in parts:
        if part.upper() == A0.value:
            result.append(A0)
            continue
        try:
            value = int(part)
        except ValueError:
            raise InputValidationError(f"Mixed tuple entry {part!r} is neither an index nor A0")
        if value < 1:
            raise InputValidationError(f"Mixed tuple indices must be >= 1, got {value}")
        result.append(value)
    return tuple(result)


def mixed_trace(w: WeightVector, t: Sequence[MixedEntry],
                fresh: Optional[Sequence[int]] = None) -> Fraction:
    """tr(T_1 ... T_k) con T = U(gamma_n) oppure A0.

    Ogni A0 viene sostituito da un indice nuovo e distinto; di default
    max(indici finiti) + 1, + 2, ... nell'ordine di apparizione.
    """
    if not t:
        raise InputValidationError("A mixed tuple must be non-empty")
    finite = [x for x in t if not isinstance(x, A0Marker)]
    if any(x < 1 for x in finite):
        raise InputValidationError(f"Mixed tuple indices must be >= 1, got {finite}")
    markers = len(t) - len(finite)
    if fresh is None:
        start = max(finite, default=0) + 1
        fresh = list(range(start, start + markers))
    else:
        fresh = list(fresh)
        if len(fresh) != markers or len(set(fresh)) != markers \
                or set(fresh) & set(finite) or any(x < 1 for x in fresh):
            raise InputValidationError(
                f"Fresh indices {fresh} must be {markers} distinct new positive integers"
            )
    replacement = iter(fresh)
    indices = [next(replacement) if isinstance(x, A0Marker) else x for x in t]
    return character(w, product(*(star_transposition(n) for n in indices)))


def centered_trace(w: WeightVector, pi: SetPartition,
                   cache: Optional[PartitionFunctionCache] = None) -> Fraction:
    """tr del prodotto di U centrati con nucleo pi; coincide con t(pi)."""
    return t_incl_excl(w, pi, cache)


def centered_product_trace(w: WeightVector, indices: Sequence[int]) -> Fraction:
    """tr((U_i(1) - A0) ... (U_i(k) - A0)) espandendo il prodotto in tracce miste."""
    k = len(indices)
    total = Fraction(0)
    for mask in range(1 << k):
        t = tuple(A0 if (mask >> h) & 1 else indices[h] for h in range(k))
        value = mixed_trace(w, t)
        total += -value if bin(mask).count("1") % 2 else value
    return total


def centered_trace_bruteforce(w: WeightVector, pi: SetPartition) -> Fraction:
    return centered_product_trace(w, [i + 1 for i in pi.block_index])


def falling_factorial(n: int, length: int) -> int:
    """(n)_l = n (n-1) ... (n-l+1), nullo se l > n."""
    if length > n:
        return 0
    result = 1
    for step in range(length):
        result *= n - step
    return result


@dataclass(frozen=True)
class SymbolicMoment:
    """Valore coefficient * n^(-k/2) per k dispari, dove n^(1/2) non e' razionale."""

    coefficient: Fraction
    n: int
    k: int

    def approx(self) -> float:
        return float(self.coefficient) * self.n ** (-self.k / 2)

    def __str__(self) -> str:
        return f"{self.coefficient} * {self.n}^(-{self.k}/2)"


MomentValue = Union[Fraction, SymbolicMoment]


def _finalize(coefficient: Fraction, n: int, k: int) -> MomentValue:
    if k % 2 == 0:
        return coefficient / Fraction(n) ** (k // 2)
    if coefficient == 0:
        return Fraction(0)
    return SymbolicMoment(coefficient, n, k)


def _check_sn(n: int, k: int, max_k: int) -> None:
    if n < 1:
        raise InputValidationError(f"n must be >= 1, got {n}")
    if k < 0:
        raise InputValidationError(f"Moment order must be >= 0, got {k}")
    if k > max_k:
        raise InfeasibleSizeError(f"Order {k} exceeds the cap {max_k} for s_n moments")


def s_n_moment(w: WeightVector, n: int, k: int,
               cache: Optional[PartitionFunctionCache] = None,
               skip_singletons: bool = True,
               max_k: int = MAX_SN_ORDER) -> MomentValue:
    """tr(s_n^k) = n^(-k/2) sum_{pi in P(k)} (n)_|pi| t(pi).

    Con skip_singletons le partizioni con un singoletto vengono saltate,
    dato che t vi si annulla.
    """
    _check_sn(n, k, max_k)
    if k == 0:
        return Fraction(1)
    coefficient = Fraction(0)
    for pi in enumerate_partitions(k):
        if skip_singletons and pi.has_singleton:
            continue
        count = falling_factorial(n, len(pi))
        if count:
            coefficient += count * t_incl_excl(w, pi, cache)
    return _finalize(coefficient, n, k)


def s_n_moment_bruteforce(w: WeightVector, n: int, k: int, limit: int = NAIVE_LIMIT) -> MomentValue:
    """Somma ingenua sulle n^k tuple di indici."""
    _check_sn(n, k, MAX_SN_ORDER)
    if k == 0:
        return Fraction(1)
    if n ** k > limit:
        raise InfeasibleSizeError(f"Naive sum over n^k = {n ** k} tuples exceeds {limit}")
    coefficient = Fraction(0)
    for indices in itertools.product(range(1, n + 1), repeat=k):
        coefficient += centered_product_trace(w, indices)
    return _finalize(coefficient, n, k)


def lln_variance_expanded(w: WeightVector, n: int) -> Fraction:
    """(1/n^2) ||sum gamma_i||^2 - 2 <(1/n) sum gamma_i, A0> + ||A0||^2 in tracce miste."""
    if n < 1:
        raise InputValidationError(f"n must be >= 1, got {n}")
    if n <= 16:
        gram = sum((mixed_trace(w, (i, j)) for i in range(1, n + 1) for j in range(1, n + 1)),
                   Fraction(0))
        cross = sum((mixed_trace(w, (i, A0)) for i in range(1, n + 1)), Fraction(0))
    else:
        # per scambiabilita' bastano i due nuclei {i = j} e {i != j}
        gram = n * mixed_trace(w, (1, 1)) + (n * n - n) * mixed_trace(w, (1, 2))
        cross = n * mixed_trace(w, (1, A0))
    return gram / (n * n) - 2 * cross / n + mixed_trace(w, (A0, A0))


def lln_variance(w: WeightVector, n: int, self_check: bool = True) -> Fraction:
    """||(1/n) sum U(gamma_i) - A0||^2 = (1 - p_3)/n."""
    if n < 1:
        raise InputValidationError(f"n must be >= 1, got {n}")
    value = (1 - power_sum(w, 3)) / n
    if self_check:
        expanded = lln_variance_expanded(w, n)
        if expanded != value:
            raise ConsistencyError(f"LLN variance {value} disagrees with its expansion {expanded}")
    return value


def a0_spectral(w: WeightVector) -> List[Tuple[Fraction, Fraction]]:
    """Misura spettrale di A0: atomi w_i con massa somma dei w_j uguali, in ordine decrescente."""
    multiplicity = Counter(w.weights)
    return [(atom, atom * count) for atom, count in sorted(multiplicity.items(), reverse=True)]


def a0_moment(w: WeightVector, k: int) -> Fraction:
    """tr(A0^k) = p_{k+1}, letto sulla misura spettrale."""
    if k < 0:
        raise InputValidationError(f"Moment order must be >= 0, got {k}")
    return sum((mass * atom ** k for atom, mass in a0_spectral(w)), Fraction(0))
