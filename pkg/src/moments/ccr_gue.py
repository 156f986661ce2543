"""Via D: il modello matriciale CCR-GUE a traccia nulla.

Solo i funzionali dei momenti sono implementati: formula di Wick gaussiana
per la diagonale, formula di Wick CCR per le entrate fuori diagonale, momenti
congiunti delle entrate e momenti phi_w(M^k) della matrice. In piu' il GUE
pieno con w = 1/d e l'identita' di convoluzione ai momenti.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Sequence, Tuple

from .algebra import WeightVector, double_factorial, exponent_sum
from .errors import InfeasibleSizeError, InputValidationError
from .limit_moments import BRUTEFORCE_LIMIT, MAX_ROUTE_ORDER
from .partitions import enumerate_bicoloured, pairings_of

_LOGGER = logging.getLogger(__name__)

MAX_GUE_ORDER = 10


class Star(str, Enum):
    """Lettera di una parola in a e a*."""
    ONE = "1"
    STAR = "*"


StarWord = Tuple[Star, ...]


def parse_star_word(text: str) -> StarWord:
    """Legge una parola come "1*1*" (virgole e spazi ignorati)."""
    letters = [c for c in (text or "") if c not in ", "]
    if not letters:
        raise InputValidationError("A star word must be non-empty")
    try:
        return tuple(Star(c) for c in letters)
    except ValueError:
        raise InputValidationError(f"Star words use only '1' and '*', got {text!r}")


@dataclass(frozen=True)
class CovarianceMatrix:
    """Covarianza della diagonale: c_ii = w_i - w_i^2, c_ij = -w_i w_j."""

    entries: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def from_weights(cls, w: WeightVector) -> "CovarianceMatrix":
        ws = w.weights
        return cls(tuple(
            tuple((x - x * x) if a == b else -x * y for b, y in enumerate(ws))
            for a, x in enumerate(ws)
        ))

    @property
    def d(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i - 1][j - 1]

    def row_sums(self) -> List[Fraction]:
        return [sum(row, Fraction(0)) for row in self.entries]


@dataclass(frozen=True)
class EntryMomentSpec:
    """Il prodotto a_{i(1),j(1)} ... a_{i(k),j(k)}."""

    i: Tuple[int, ...]
    j: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "i", tuple(int(x) for x in self.i))
        object.__setattr__(self, "j", tuple(int(x) for x in self.j))
        if len(self.i) != len(self.j):
            raise InputValidationError(f"Index tuples differ in length: {len(self.i)} vs {len(self.j)}")
        if not self.i:
            raise InputValidationError("Entry moment of an empty word")

    @property
    def k(self) -> int:
        return len(self.i)

    def check_range(self, d: int) -> None:
        for x in self.i + self.j:
            if x < 1 or x > d:
                raise InputValidationError(f"Matrix index {x} is outside 1..{d}")


# Wick gaussiano e Wick CCR


def gaussian_wick(C: CovarianceMatrix, idx: Sequence[int]) -> Fraction:
    """Somma sulle coppie di prodotti c_{i(p), i(q)}."""
    for x in idx:
        if x < 1 or x > C.d:
            raise InputValidationError(f"Covariance index {x} is outside 1..{C.d}")
    total = Fraction(0)
    for pairing in pairings_of(range(len(idx))):
        term = Fraction(1)
        for p, q in pairing:
            term *= C[idx[p], idx[q]]
            if not term:
                break
        total += term
    return total


def _check_parameters(omega_1star: Fraction, omega_star1: Fraction) -> None:
    if omega_1star <= 0 or omega_star1 <= 0:
        raise InputValidationError(
            f"CCR parameters must be positive, got {omega_1star} and {omega_star1}"
        )


def ccr_wick(omega_1star: Fraction, omega_star1: Fraction, word: Sequence[Star]) -> Fraction:
    """Somma sulle coppie {p<q} di omega_(eps(p), eps(q)), con omega_(1,1) = omega_(*,*) = 0."""
    _check_parameters(omega_1star, omega_star1)
    word = tuple(Star(c) for c in word)
    weight = {(Star.ONE, Star.STAR): omega_1star, (Star.STAR, Star.ONE): omega_star1}

    def pair_sum(positions: Tuple[int, ...]) -> Fraction:
        if not positions:
            return Fraction(1)
        first, rest = positions[0], positions[1:]
        total = Fraction(0)
        for n, other in enumerate(rest):
            omega = weight.get((word[first], word[other]))
            if omega:
                total += omega * pair_sum(rest[:n] + rest[n + 1:])
        return total

    if len(word) % 2:
        return Fraction(0)
    return pair_sum(tuple(range(len(word))))


def ccr_normal_order_oracle(omega_1star: Fraction, omega_star1: Fraction,
                            word: Sequence[Star]) -> Fraction:
    """Riordina la parola con a*a = aa* + (omega_(*,1) - omega_(1,*)) e valuta a^p a*^q."""
    _check_parameters(omega_1star, omega_star1)
    shift = omega_star1 - omega_1star

    @lru_cache(maxsize=None)
    def evaluate(letters: str) -> Fraction:
        pos = letters.find("*1")
        if pos < 0:
            p = letters.count("1")
            q = len(letters) - p
            return factorial(p) * omega_1star ** p if p == q else Fraction(0)
        swapped = letters[:pos] + "1*" + letters[pos + 2:]
        contracted = letters[:pos] + letters[pos + 2:]
        return evaluate(swapped) + shift * evaluate(contracted)

    return evaluate("".join(Star(c).value for c in word))


def offdiagonal_parameters(w: WeightVector, u: int, v: int) -> Tuple[Fraction, Fraction]:
    """(omega_(1,*), omega_(*,1)) di a_{u,v} per u < v: (w_v, w_u)."""
    if not 1 <= u < v <= w.d:
        raise InputValidationError(f"Off-diagonal entry needs 1 <= u < v <= {w.d}, got ({u},{v})")
    return w.weights[v - 1], w.weights[u - 1]


# Momenti delle entrate


def entry_moment(w: WeightVector, spec: EntryMomentSpec) -> Fraction:
    """Somma sulle coppie bicolori: blu {p<q} da' delta_{i(p),j(q)} delta_{i(q),j(p)} w_{i(q)},
    rossa da' delta_{i(p),j(p)} delta_{i(q),j(q)} (-w_{i(p)} w_{i(q)}).

    La somma sui colori si fattorizza coppia per coppia, quindi la si
    esegue sugli accoppiamenti sommando i due contributi di ogni coppia.
    """
    spec.check_range(w.d)
    i, j, ws = spec.i, spec.j, w.weights
    total = Fraction(0)
    for pairing in pairings_of(range(spec.k)):
        term = Fraction(1)
        for p, q in pairing:
            factor = Fraction(0)
            if i[p] == j[q] and i[q] == j[p]:
                factor += ws[i[q] - 1]
            if i[p] == j[p] and i[q] == j[q]:
                factor -= ws[i[p] - 1] * ws[i[q] - 1]
            term *= factor
            if not term:
                break
        total += term
    return total


def entry_moment_factored(w: WeightVector, spec: EntryMomentSpec) -> Fraction:
    """C_o * prod C_{u,v}: le classi di entrate diagonali e delle coppie {u,v} commutano e sono indipendenti."""
    spec.check_range(w.d)
    diagonal: List[int] = []
    classes: Dict[Tuple[int, int], List[Star]] = {}
    for a, b in zip(spec.i, spec.j):
        if a == b:
            diagonal.append(a)
        else:
            key = (min(a, b), max(a, b))
            classes.setdefault(key, []).append(Star.ONE if a < b else Star.STAR)
    result = gaussian_wick(CovarianceMatrix.from_weights(w), diagonal) if diagonal else Fraction(1)
    for (u, v), word in sorted(classes.items()):
        if not result:
            break
        result *= ccr_wick(*offdiagonal_parameters(w, u, v), word)
    return result


# Momenti della matrice


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def classes(self) -> Dict[int, int]:
        """Radice -> indice compatto di classe."""
        roots: Dict[int, int] = {}
        for x in range(len(self.parent)):
            roots.setdefault(self.find(x), len(roots))
        return roots


def matrix_moment(w: WeightVector, k: int, max_k: int = MAX_ROUTE_ORDER) -> Fraction:
    """phi_w(M^k) = sum_i w_{i(1)} phi(a_{i(1)i(2)} ... a_{i(k)i(1)}).

    Per ogni partizione bicolore i vincoli delta identificano posizioni di i;
    la somma sulle tuple compatibili e' il prodotto sulle classi di
    sum_j w_j^{e}, e = numero di pesi appoggiati sulla classe.
    """
    if k < 0:
        raise InputValidationError(f"Moment order must be >= 0, got {k}")
    if k > max_k:
        raise InfeasibleSizeError(f"Moment order {k} exceeds the configured cap {max_k}")
    if k == 0:
        return Fraction(1)
    if k % 2:
        return Fraction(0)
    total = Fraction(0)
    for rho in enumerate_bicoloured(k):
        uf = _UnionFind(k)
        # posizioni 0-based; j(p) = i(p+1 mod k)
        positions = [0]
        for p, q in rho.blue_pairs:
            uf.union(p - 1, q % k)
            uf.union(q - 1, p % k)
            positions.append(q - 1)
        for p, q in rho.red_pairs:
            uf.union(p - 1, p % k)
            uf.union(q - 1, q % k)
            positions.extend([p - 1, q - 1])
        classes = uf.classes()
        exponents = [0] * len(classes)
        for pos in positions:
            exponents[classes[uf.find(pos)]] += 1
        value = Fraction(1)
        for e in exponents:
            value *= exponent_sum(w, e)
        total += -value if len(rho.red_pairs) % 2 else value
    return total


def matrix_moment_bruteforce(w: WeightVector, k: int, limit: int = BRUTEFORCE_LIMIT) -> Fraction:
    """La somma ingenua su tutte le d^k tuple, tramite entry_moment."""
    if k == 0:
        return Fraction(1)
    if w.d ** k > limit:
        raise InfeasibleSizeError(f"Tuple enumeration d^{k} = {w.d ** k} exceeds {limit}")
    total = Fraction(0)
    for tup in itertools.product(range(1, w.d + 1), repeat=k):
        shifted = tup[1:] + tup[:1]
        total += w.weights[tup[0] - 1] * entry_moment(w, EntryMomentSpec(tup, shifted))
    return total


# GUE pieno e convoluzione


def gue_moment(d: int, k: int, max_k: int = MAX_GUE_ORDER) -> Fraction:
    """E tr_d(G^k) per il GUE con E g_ab g_cd = delta_ad delta_bc / d."""
    if d < 1:
        raise InputValidationError(f"Matrix size must be >= 1, got {d}")
    if k < 0:
        raise InputValidationError(f"Moment order must be >= 0, got {k}")
    if k > max_k:
        raise InfeasibleSizeError(f"GUE moment order {k} exceeds the cap {max_k}")
    if k == 0:
        return Fraction(1)
    if k % 2:
        return Fraction(0)
    total = Fraction(0)
    for pairing in pairings_of(range(k)):
        uf = _UnionFind(k)
        for p, q in pairing:
            uf.union(p, (q + 1) % k)
            uf.union((p + 1) % k, q)
        total += Fraction(d) ** len(uf.classes())
    return total / Fraction(d) ** (k // 2 + 1)


def gaussian_moment(variance: Fraction, k: int) -> Fraction:
    """Momento di N(0, variance): (k-1)!! variance^{k/2}."""
    if k % 2:
        return Fraction(0)
    return double_factorial(k - 1) * Fraction(variance) ** (k // 2)


def convolution_check(d: int, k: int) -> bool:
    """GUE = (legge a traccia nulla con w = 1/d) * N(0, 1/d^2), ai momenti."""
    if k > 8:
        raise InfeasibleSizeError(f"Convolution check is limited to k <= 8, got {k}")
    w = WeightVector.uniform(d)
    expected = sum(
        (comb(k, 2 * j) * gaussian_moment(Fraction(1, d * d), 2 * j) * matrix_moment(w, k - 2 * j)
         for j in range(k // 2 + 1)),
        Fraction(0),
    )
    actual = gue_moment(d, k)
    if actual != expected:
        _LOGGER.warning(f"Convolution mismatch at d={d}, k={k}: {actual} != {expected}")
    return actual == expected


def semicircle_moment(k: int) -> Fraction:
    """Numero di Catalan C_{k/2}, 0 per k dispari."""
    if k % 2:
        return Fraction(0)
    m = k // 2
    return Fraction(comb(2 * m, m), m + 1)


