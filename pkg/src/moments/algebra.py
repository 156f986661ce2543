"""Scalari razionali esatti, vettori dei pesi, somme di potenze e carattere."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

import regex

from .errors import InputValidationError
from .perm import Permutation

_LOGGER = logging.getLogger(__name__)

# Tutta l'aritmetica dei momenti e' in Fraction: forma ridotta, denominatore positivo
ExactScalar = Fraction

_WEIGHT_SEPARATOR = regex.compile(r"\s*[,;]\s*")


def to_scalar(value: Union[int, str, Fraction]) -> Fraction:
    """Converte un intero, una stringa "p/q" o una Fraction in ExactScalar."""
    if isinstance(value, float):
        raise InputValidationError(f"Floating-point value {value!r} is not an exact rational")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise InputValidationError(f"Cannot parse {value!r} as a rational: {e}")


def scalar_to_json(value: Fraction, approx: bool = False) -> Dict[str, object]:
    """Serializza un razionale come {"num": str, "den": str} (+ "approx" opzionale)."""
    data: Dict[str, object] = {"num": str(value.numerator), "den": str(value.denominator)}
    if approx:
        data["approx"] = float(value)
    return data


def scalar_from_json(data: Dict[str, object]) -> Fraction:
    try:
        return Fraction(int(data["num"]), int(data["den"]))
    except (KeyError, ValueError, ZeroDivisionError, TypeError) as e:
        raise InputValidationError(f"Malformed rational {data!r}: {e}")


def double_factorial(n: int) -> int:
    """(n)!! con la convenzione (-1)!! = 0!! = 1."""
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


@dataclass(frozen=True)
class WeightVector:
    """Parametri di Thoma w_1 >= ... >= w_d > 0 con somma 1."""

    weights: Tuple[Fraction, ...]
    _power_sums: Dict[int, Fraction] = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        weights = tuple(to_scalar(x) for x in self.weights)
        if len(weights) < 2:
            raise InputValidationError(f"At least two weights are required, got {len(weights)}")
        for x in weights:
            if x <= 0:
                raise InputValidationError(f"Weights must be positive, got {x}")
        total = sum(weights, Fraction(0))
        if total != 1:
            raise InputValidationError(f"Weights do not sum to 1 (sum = {total})")
        object.__setattr__(self, "weights", tuple(sorted(weights, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        """Legge pesi separati da virgole, es. "1/2,1/3,1/6"."""
        if text is None or not text.strip():
            raise InputValidationError("Empty weight list")
        parts = [p for p in _WEIGHT_SEPARATOR.split(text.strip()) if p]
        return cls(tuple(to_scalar(p) for p in parts))

    @classmethod
    def uniform(cls, d: int) -> "WeightVector":
        if d < 2:
            raise InputValidationError(f"Uniform weights need d >= 2, got {d}")
        return cls(tuple(Fraction(1, d) for _ in range(d)))

    @property
    def d(self) -> int:
        return len(self.weights)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.weights)) == 1

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.weights)


def power_sum(w: WeightVector, n: int) -> Fraction:
    """p_n = w_1^n + ... + w_d^n, memorizzata nel vettore."""
    if n < 1:
        raise InputValidationError(f"Power sum order must be >= 1, got {n}")
    cached = w._power_sums.get(n)
    if cached is None:
        cached = sum((x ** n for x in w.weights), Fraction(0))
        # Riempimento idempotente: scritture concorrenti producono lo stesso valore
        w._power_sums[n] = cached
    return cached


def exponent_sum(w: WeightVector, e: int) -> Fraction:
    """sum_j w_j^e, con e = 0 che conta i colori liberi (vale d)."""
    if e == 0:
        return Fraction(w.d)
    return power_sum(w, e)


def cycle_type_product(w: WeightVector, sizes: Iterable[int]) -> Fraction:
    result = Fraction(1)
    for size in sizes:
        if size >= 2:
            result *= power_sum(w, size)
    return result


def character(w: WeightVector, p: Permutation) -> Fraction:
    """chi(p) = prodotto di p_|V| sulle orbite non banali di p."""
    return cycle_type_product(w, p.cycle_type())
