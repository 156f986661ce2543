"""Registro delle quattro vie di calcolo dei momenti."""

import logging
import time
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Tuple

import regex

from .algebra import WeightVector
from .ccr_gue import matrix_moment
from .errors import InputValidationError
from .limit_moments import TauBuilder, moment_routeA, moment_routeB, moment_routeC
from .partitions import tau_pi

_LOGGER = logging.getLogger(__name__)


class Route(str, Enum):
    """Via di calcolo del momento mu_w(X^k)."""
    A = "A"  # somma di t sulle coppie
    B = "B"  # P_{<=2} con doppi fattoriali
    C = "C"  # partizioni bicolori sulle orbite
    D = "D"  # momenti del modello CCR-GUE


ALL_ROUTES: Tuple[Route, ...] = (Route.A, Route.B, Route.C, Route.D)


def parse_routes(text: str) -> List[Route]:
    """Legge "A,B,C,D" mantenendo l'ordine canonico e scartando i duplicati."""
    names = [p.upper() for p in regex.split(r"[,\s]+", (text or "").strip()) if p]
    if not names:
        raise InputValidationError("No route selected")
    try:
        chosen = {Route(n) for n in names}
    except ValueError:
        raise InputValidationError(f"Unknown route in {text!r}; expected a subset of A,B,C,D")
    return [r for r in ALL_ROUTES if r in chosen]


def route_function(route: Route, tau_builder: TauBuilder = tau_pi) -> Callable[[WeightVector, int, int], Fraction]:
    if route is Route.A:
        return lambda w, k, max_k: moment_routeA(w, k, max_k, tau_builder)
    if route is Route.B:
        return moment_routeB
    if route is Route.C:
        return moment_routeC
    return matrix_moment


def evaluate_routes(w: WeightVector, k: int, routes: Iterable[Route], max_k: int,
                    tau_builder: TauBuilder = tau_pi) -> Tuple[Dict[Route, Fraction], Dict[Route, float]]:
    """Valori e tempi (ms) per ogni via selezionata all'ordine k."""
    values: Dict[Route, Fraction] = {}
    elapsed: Dict[Route, float] = {}
    for route in routes:
        start = time.perf_counter()
        values[route] = route_function(route, tau_builder)(w, k, max_k)
        elapsed[route] = (time.perf_counter() - start) * 1000.0
        _LOGGER.debug(f"Route {route.value} at k={k}: {values[route]} ({elapsed[route]:.1f} ms)")
    return values, elapsed
