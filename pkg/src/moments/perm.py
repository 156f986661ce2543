"""Permutazioni a supporto finito degli interi positivi.

Le permutazioni sono memorizzate come array denso delle immagini fino a un
limite di supporto; ogni m oltre il limite e' un punto fisso implicito.
Convenzione del prodotto: (p*q)(m) = p(q(m)), cioe' agisce prima il fattore
di destra.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import regex

from .errors import InputValidationError

_LOGGER = logging.getLogger(__name__)

_CYCLE_PATTERN = regex.compile(r"\(([^()]*)\)")
_CYCLE_TEXT_PATTERN = regex.compile(r"^\s*(?:\([^()]*\)\s*)*$")


@dataclass(frozen=True)
class Permutation:
    """Biiezione a supporto finito; le immagini di 1..support_bound."""

    images: Tuple[int, ...] = ()

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise InputValidationError(
                f"Images {images} are not a bijection of 1..{n}"
            )
        # Forma canonica: i punti fissi in coda vengono rimossi
        while images and images[-1] == len(images):
            images = images[:-1]
        object.__setattr__(self, "images", images)

    @property
    def support_bound(self) -> int:
        return len(self.images)

    def __call__(self, m: int) -> int:
        if m < 1:
            raise InputValidationError(f"Permutations act on positive integers, got {m}")
        if m > len(self.images):
            return m
        return self.images[m - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)})"

    @property
    def is_identity(self) -> bool:
        return not self.images

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for m, image in enumerate(self.images, start=1):
            inv[image - 1] = m
        return Permutation(tuple(inv))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Cicli non banali, ciascuno a partire dal suo minimo."""
        return [o for o in orbits(self, max(1, self.support_bound)).orbits if len(o) > 1]

    def cycle_type(self) -> Tuple[int, ...]:
        """Lunghezze dei cicli non banali in ordine decrescente."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.images else 1

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]]) -> "Permutation":
        cycles = [tuple(int(x) for x in c) for c in cycles]
        bound = max((x for c in cycles for x in c), default=0)
        images = list(range(1, bound + 1))
        seen = set()
        for cycle in cycles:
            for x in cycle:
                if x < 1:
                    raise InputValidationError(f"Cycle entry {x} is not a positive integer")
                if x in seen:
                    raise InputValidationError(f"Element {x} appears in more than one cycle")
                seen.add(x)
            for pos, x in enumerate(cycle):
                images[x - 1] = cycle[(pos + 1) % len(cycle)]
        return cls(tuple(images))


IDENTITY = Permutation()


@dataclass(frozen=True)
class OrbitDecomposition:
    """Orbite di una permutazione dentro {1, ..., domain_bound}."""

    orbits: Tuple[Tuple[int, ...], ...]
    domain_bound: int

    def sizes(self) -> List[int]:
        return [len(o) for o in self.orbits]

    def orbit_of(self, m: int) -> Tuple[int, ...]:
        for orbit in self.orbits:
            if m in orbit:
                return orbit
        raise InputValidationError(f"{m} is outside 1..{self.domain_bound}")

    def labels(self) -> List[int]:
        """Indice (0-based) dell'orbita di ogni elemento 1..domain_bound."""
        label = [0] * self.domain_bound
        for idx, orbit in enumerate(self.orbits):
            for m in orbit:
                label[m - 1] = idx
        return label

    def __len__(self) -> int:
        return len(self.orbits)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Prodotto p*q con (p*q)(m) = p(q(m))."""
    bound = max(p.support_bound, q.support_bound)
    return Permutation(tuple(p(q(m)) for m in range(1, bound + 1)))


def product(*perms: Permutation) -> Permutation:
    """Prodotto da sinistra a destra p1*p2*...*pn (agisce prima pn)."""
    bound = max((p.support_bound for p in perms), default=0)
    images = list(range(1, bound + 1))
    for perm in reversed(perms):
        images = [perm(x) for x in images]
    return Permutation(tuple(images))


def star_transposition(n: int) -> Permutation:
    """gamma_n = (1, n+1)."""
    if n < 1:
        raise InputValidationError(f"Star-transposition index must be >= 1, got {n}")
    images = list(range(1, n + 2))
    images[0], images[n] = n + 1, 1
    return Permutation(tuple(images))


def forward_cycle(n: int) -> Permutation:
    """eta_n = (1, 2, ..., n); eta_1 e' l'identita'."""
    if n < 1:
        raise InputValidationError(f"Forward cycle length must be >= 1, got {n}")
    return Permutation(tuple(list(range(2, n + 1)) + [1]))


def orbits(p: Permutation, domain_bound: int) -> OrbitDecomposition:
    """Decomposizione in orbite di {1..domain_bound}, punti fissi inclusi."""
    if domain_bound < 1 or domain_bound < p.support_bound:
        raise InputValidationError(
            f"Domain bound {domain_bound} is smaller than the support bound {p.support_bound}"
        )
    visited = [False] * (domain_bound + 1)
    result = []
    for start in range(1, domain_bound + 1):
        if visited[start]:
            continue
        orbit = []
        m = start
        while not visited[m]:
            visited[m] = True
            orbit.append(m)
            m = p(m)
        result.append(tuple(orbit))
    return OrbitDecomposition(tuple(result), domain_bound)


def induced(p: Permutation, subset: Iterable[int]) -> Permutation:
    """Permutazione indotta su A: ogni a va nel primo elemento di A della sua orbita in avanti."""
    members = frozenset(int(a) for a in subset)
    if not members:
        raise InputValidationError("Induced permutation needs a non-empty set")
    if min(members) < 1:
        raise InputValidationError("Induced permutation needs positive integers")
    bound = max(max(members), p.support_bound)
    images = list(range(1, bound + 1))
    for a in members:
        b = p(a)
        while b not in members:
            b = p(b)
        images[a - 1] = b
    return Permutation(tuple(images))


def parse_cycles(text: str) -> Permutation:
    """Legge la notazione a cicli, es. "(1,3,2)(5,6)"; "()" e' l'identita'."""
    if text is None or not _CYCLE_TEXT_PATTERN.match(text):
        raise InputValidationError(f"Not a cycle-notation permutation: {text!r}")
    cycles = []
    for body in _CYCLE_PATTERN.findall(text):
        body = body.strip()
        if not body:
            continue
        try:
            cycles.append([int(x) for x in regex.split(r"[,\s]+", body) if x])
        except ValueError:
            raise InputValidationError(f"Cycle {body!r} contains non-integer entries")
    return Permutation.from_cycles(cycles)


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x) for x in c) + ")" for c in cycles)


def random_permutation(size: int, rng) -> Permutation:
    """Permutazione casuale di {1..size} dal generatore rng (random.Random)."""
    images = list(range(1, size + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))

