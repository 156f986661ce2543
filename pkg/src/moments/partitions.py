"""Partizioni di {1, ..., k}: enumerazione, reticolo e permutazioni associate."""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

import regex

from .errors import InfeasibleSizeError, InputValidationError
from .perm import Permutation, compose, product, star_transposition

_LOGGER = logging.getLogger(__name__)

ENUMERATION_CAP = 14

_BLOCK_PATTERN = regex.compile(r"\{([^{}]*)\}([br]?)")
_PARTITION_TEXT = regex.compile(r"^\s*(?:\{[^{}]*\}[br]?\s*)+$")


class Colour(str, Enum):
    """Colore di una coppia in una partizione bicolore."""
    BLUE = "b"
    RED = "r"


def _check_cap(k: int, cap: int = ENUMERATION_CAP, minimum: int = 1) -> None:
    if k < minimum:
        raise InputValidationError(f"Ground-set size must be >= {minimum}, got {k}")
    if k > cap:
        raise InfeasibleSizeError(f"Ground-set size {k} exceeds the enumeration cap {cap}")


@dataclass(frozen=True, eq=False)
class SetPartition:
    """Partizione di {1..k}; blocchi ordinati per minimo, elementi crescenti."""

    blocks: Tuple[Tuple[int, ...], ...]
    k: int

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(int(x) for x in b)) for b in self.blocks)))
        elements = [x for b in blocks for x in b]
        if any(not b for b in blocks):
            raise InputValidationError("Partition blocks must be non-empty")
        if sorted(elements) != list(range(1, self.k + 1)):
            raise InputValidationError(
                f"Blocks {blocks} do not partition 1..{self.k}"
            )
        object.__setattr__(self, "blocks", blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.k == other.k and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.k, self.blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "".join("{" + ",".join(str(x) for x in b) + "}" for b in self.blocks)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    @cached_property
    def block_index(self) -> Tuple[int, ...]:
        """Indice del blocco (0-based) di ogni elemento 1..k."""
        index = [0] * self.k
        for i, block in enumerate(self.blocks):
            for x in block:
                index[x - 1] = i
        return tuple(index)

    @property
    def is_at_most_pair(self) -> bool:
        return all(len(b) <= 2 for b in self.blocks)

    @property
    def is_pairing(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)

    @property
    def has_singleton(self) -> bool:
        return any(len(b) == 1 for b in self.blocks)

    def refines(self, other: "SetPartition") -> bool:
        """True se ogni blocco di self sta dentro un blocco di other."""
        if self.k != other.k:
            return False
        index = other.block_index
        return all(len({index[x - 1] for x in b}) == 1 for b in self.blocks)

    def as_at_most_pair(self) -> "AtMostPairPartition":
        if isinstance(self, AtMostPairPartition):
            return self
        return AtMostPairPartition(self.blocks, self.k)


class AtMostPairPartition(SetPartition):
    """Partizione con blocchi di cardinalita' 1 o 2."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_at_most_pair:
            raise InputValidationError(f"{self} has a block with more than two elements")

    @cached_property
    def singleton_count(self) -> int:
        return sum(1 for b in self.blocks if len(b) == 1)

    @cached_property
    def pair_count(self) -> int:
        return sum(1 for b in self.blocks if len(b) == 2)


class PairPartition(AtMostPairPartition):
    """Partizione in coppie."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_pairing:
            raise InputValidationError(f"{self} is not a pairing")


@dataclass(frozen=True)
class BicolouredPairPartition:
    """Partizione in coppie con ogni coppia colorata di blu o rosso."""

    pairs: Tuple[Tuple[int, int], ...]
    colours: Tuple[Colour, ...]
    k: int

    def __post_init__(self):
        if len(self.pairs) != len(self.colours):
            raise InputValidationError("Every pair needs exactly one colour")
        items = sorted(
            (tuple(sorted(p)), Colour(c)) for p, c in zip(self.pairs, self.colours)
        )
        # Valida la partizione sottostante
        PairPartition(tuple(p for p, _ in items), self.k)
        object.__setattr__(self, "pairs", tuple(p for p, _ in items))
        object.__setattr__(self, "colours", tuple(c for _, c in items))

    @property
    def pairing(self) -> PairPartition:
        return PairPartition(self.pairs, self.k)

    @property
    def blue_pairs(self) -> List[Tuple[int, int]]:
        return [p for p, c in zip(self.pairs, self.colours) if c is Colour.BLUE]

    @property
    def red_pairs(self) -> List[Tuple[int, int]]:
        return [p for p, c in zip(self.pairs, self.colours) if c is Colour.RED]

    def __str__(self) -> str:
        return "".join(
            "{" + f"{p[0]},{p[1]}" + "}" + c.value for p, c in zip(self.pairs, self.colours)
        )


@dataclass(frozen=True)
class BlockOrder:
    """Blocchi V_1..V_l in ordine decrescente del massimo, con a_i = min, b_i = max."""

    blocks: Tuple[Tuple[int, ...], ...]
    k: int

    @property
    def a(self) -> Tuple[int, ...]:
        return tuple(b[0] for b in self.blocks)

    @property
    def b(self) -> Tuple[int, ...]:
        return tuple(b[-1] for b in self.blocks)

    @property
    def labels(self) -> Tuple[int, ...]:
        """La tupla r con r(a_i) = r(b_i) = i."""
        r = [0] * self.k
        for i, block in enumerate(self.blocks, start=1):
            for x in block:
                r[x - 1] = i
        return tuple(r)

    @property
    def b_set(self) -> FrozenSet[int]:
        """B_pi: i massimi dei blocchi insieme a k+1."""
        return frozenset(self.b) | {self.k + 1}


def block_order(pi: SetPartition) -> BlockOrder:
    return BlockOrder(tuple(sorted(pi.blocks, key=lambda b: -b[-1])), pi.k)


# Parsing e formattazione


def parse_partition(text: str, k: int = None) -> SetPartition:
    """Legge "{1,6}{2,5}{3}{4,7}"; k di default e' il massimo elemento."""
    if not text or not _PARTITION_TEXT.match(text):
        raise InputValidationError(f"Not a partition: {text!r}")
    blocks = []
    for body, colour in _BLOCK_PATTERN.findall(text):
        if colour:
            raise InputValidationError(f"Unexpected colour suffix in {text!r}")
        try:
            blocks.append(tuple(int(x) for x in regex.split(r"[,\s]+", body.strip()) if x))
        except ValueError:
            raise InputValidationError(f"Block {{{body}}} contains non-integer entries")
    if k is None:
        k = max((x for b in blocks for x in b), default=0)
    pi = SetPartition(tuple(blocks), k)
    if pi.is_at_most_pair:
        return pi.as_at_most_pair()
    return pi


def parse_bicoloured(text: str, k: int = None) -> BicolouredPairPartition:
    """Legge "{1,6}b{2,5}r"."""
    if not text or not _PARTITION_TEXT.match(text):
        raise InputValidationError(f"Not a bicoloured pairing: {text!r}")
    pairs, colours = [], []
    for body, colour in _BLOCK_PATTERN.findall(text):
        if not colour:
            raise InputValidationError(f"Missing colour suffix after {{{body}}}")
        try:
            pair = tuple(int(x) for x in regex.split(r"[,\s]+", body.strip()) if x)
        except ValueError:
            raise InputValidationError(f"Block {{{body}}} contains non-integer entries")
        if len(pair) != 2:
            raise InputValidationError(f"Block {{{body}}} is not a pair")
        pairs.append(pair)
        colours.append(Colour(colour))
    if k is None:
        k = max(x for p in pairs for x in p)
    return BicolouredPairPartition(tuple(pairs), tuple(colours), k)


# Enumerazione


def enumerate_partitions(k: int, cap: int = ENUMERATION_CAP) -> Iterator[SetPartition]:
    """Tutte le partizioni di {1..k} in ordine di restricted growth string."""
    _check_cap(k, cap)
    growth = [0] * k
    maxima = [0] * k

    def build() -> SetPartition:
        blocks: Dict[int, List[int]] = {}
        for pos, label in enumerate(growth, start=1):
            blocks.setdefault(label, []).append(pos)
        return SetPartition(tuple(tuple(b) for b in blocks.values()), k)

    while True:
        yield build()
        # Incrementa la restricted growth string dall'ultima posizione
        pos = k - 1
        while pos > 0 and growth[pos] > maxima[pos - 1]:
            pos -= 1
        if pos == 0:
            return
        growth[pos] += 1
        top = max(maxima[pos - 1], growth[pos])
        maxima[pos] = top
        for rest in range(pos + 1, k):
            growth[rest] = 0
            maxima[rest] = top


def _pairings_of(items: Sequence[int]) -> Iterator[List[Tuple[int, int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for pairing in _pairings_of(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + pairing


def pairings_of(items: Sequence[int]) -> Iterator[List[Tuple[int, int]]]:
    """Tutti gli accoppiamenti di una sequenza di posizioni (vuoto se dispari)."""
    items = list(items)
    if len(items) % 2:
        return iter(())
    return _pairings_of(items)


def enumerate_pairings(k: int, cap: int = ENUMERATION_CAP) -> Iterator[PairPartition]:
    _check_cap(k, cap)
    for pairing in pairings_of(range(1, k + 1)):
        yield PairPartition(tuple(pairing), k)


def _le2_of(items: Sequence[int]) -> Iterator[List[Tuple[int, ...]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for tail in _le2_of(rest):
        yield [(first,)] + tail
    for i, other in enumerate(rest):
        for tail in _le2_of(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + tail


def enumerate_le2(k: int, cap: int = ENUMERATION_CAP) -> Iterator[AtMostPairPartition]:
    _check_cap(k, cap)
    for blocks in _le2_of(list(range(1, k + 1))):
        yield AtMostPairPartition(tuple(blocks), k)


def enumerate_bicoloured(k: int, cap: int = ENUMERATION_CAP) -> Iterator[BicolouredPairPartition]:
    _check_cap(k, cap)
    if k % 2:
        return
    for pairing in pairings_of(range(1, k + 1)):
        for colours in itertools.product((Colour.BLUE, Colour.RED), repeat=len(pairing)):
            yield BicolouredPairPartition(tuple(pairing), colours, k)


# Operazioni sul reticolo


def meet(pi: SetPartition, rho: SetPartition) -> SetPartition:
    """pi ^ rho: le intersezioni non vuote dei blocchi."""
    if pi.k != rho.k:
        raise InputValidationError(f"Cannot meet partitions of {pi.k} and {rho.k}")
    return kernel(list(zip(pi.block_index, rho.block_index)))


def pi_S(subset: Iterable[int], k: int) -> SetPartition:
    """Singoletti in S e un solo blocco sul complemento."""
    chosen = set(subset)
    if any(h < 1 or h > k for h in chosen):
        raise InputValidationError(f"{sorted(chosen)} is not a subset of 1..{k}")
    rest = tuple(h for h in range(1, k + 1) if h not in chosen)
    blocks = [(h,) for h in sorted(chosen)]
    if rest:
        blocks.append(rest)
    return SetPartition(tuple(blocks), k)


def meet_pi_s(pi: SetPartition, subset_mask: int) -> SetPartition:
    """pi ^ pi_S con S dato come maschera di bit (bit h-1 per h)."""
    blocks = []
    for block in pi.blocks:
        kept = tuple(x for x in block if not (subset_mask >> (x - 1)) & 1)
        if kept:
            blocks.append(kept)
        blocks.extend((x,) for x in block if (subset_mask >> (x - 1)) & 1)
    return SetPartition(tuple(blocks), pi.k)


def kernel(values: Sequence) -> SetPartition:
    """Partizione delle posizioni secondo i valori uguali."""
    if len(values) == 0:
        raise InputValidationError("Kernel of an empty tuple")
    blocks: Dict[object, List[int]] = {}
    for pos, value in enumerate(values, start=1):
        blocks.setdefault(value, []).append(pos)
    return SetPartition(tuple(tuple(b) for b in blocks.values()), len(values))


def is_non_crossing(pi: SetPartition) -> bool:
    """Nessuna coppia di blocchi con a < b < c < d, a,c in V e b,d in W."""
    index = pi.block_index
    for a, b, c, d in itertools.combinations(range(1, pi.k + 1), 4):
        if index[a - 1] == index[c - 1] and index[b - 1] == index[d - 1] \
                and index[a - 1] != index[b - 1]:
            return False
    return True


# Permutazioni associate


def tau_pi(pi: SetPartition) -> Permutation:
    """gamma_r(1) ... gamma_r(k) con r letto dall'ordine decrescente dei massimi."""
    labels = block_order(pi.as_at_most_pair()).labels
    return product(*(star_transposition(i) for i in labels))


def sigma_pi(pi: SetPartition) -> Permutation:
    """Prodotto delle trasposizioni (min V, max V) sui blocchi di due elementi."""
    pi = pi.as_at_most_pair()
    return _transpositions((b[0], b[1]) for b in pi.blocks if len(b) == 2)


def sigma_blue(rho: BicolouredPairPartition) -> Permutation:
    return _transpositions(rho.blue_pairs)


def red_break(rho: BicolouredPairPartition) -> AtMostPairPartition:
    """Le coppie rosse diventano due singoletti, quelle blu restano."""
    blocks = list(rho.blue_pairs)
    for p, q in rho.red_pairs:
        blocks.extend([(p,), (q,)])
    return AtMostPairPartition(tuple(blocks), rho.k)


def _transpositions(pairs: Iterable[Tuple[int, int]]) -> Permutation:
    result = Permutation()
    for p, q in pairs:
        result = compose(result, Permutation.from_cycles([(p, q)]))
    return result
