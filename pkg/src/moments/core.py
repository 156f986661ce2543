"""Motore principale: tabelle dei momenti, verifiche e tabelle di convergenza."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import WeightVector, character
from .config import DEPTH_PROFILES, AppConfig
from .errors import InfeasibleSizeError, InputValidationError
from .finite_scale import s_n_moment
from .limit_moments import (
    PartitionFunctionCache,
    SigmaVariant,
    TauBuilder,
    chi_tau_via_sigma,
    chi_tau_via_sigma_bruteforce,
    moment_routeA,
    orbit_correspondence,
    tau_via_induced,
)
from .partitions import SetPartition, block_order, sigma_pi, tau_pi
from .perm import Permutation, compose, forward_cycle
from .routes import ALL_ROUTES, Route, evaluate_routes
from .verification import SuiteResult, run_suites

_LOGGER = logging.getLogger(__name__)


@dataclass
class MomentRow:
    """Valori di un ordine k per ciascuna via selezionata."""
    k: int
    values: Dict[Route, Fraction]
    elapsed_ms: Dict[Route, float]

    @property
    def agree(self) -> bool:
        return len(set(self.values.values())) <= 1

    @property
    def value(self) -> Fraction:
        return next(iter(self.values.values()))


@dataclass
class MomentReport:
    """Tabella dei momenti per un vettore di pesi."""
    weights: WeightVector
    routes: List[Route]
    rows: List[MomentRow]

    @property
    def agree(self) -> bool:
        return all(row.agree for row in self.rows)


@dataclass
class VerificationReport:
    """Esito delle suite di verifica."""
    weights: WeightVector
    profile: str
    seed: int
    suites: List[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites if not s.skipped)


@dataclass
class ConvergenceRow:
    """tr(s_n^k) contro il momento limite."""
    n: int
    moment: Fraction
    limit: Fraction

    @property
    def gap(self) -> Fraction:
        return abs(self.moment - self.limit)


@dataclass
class ConvergenceTable:
    weights: WeightVector
    k: int
    rows: List[ConvergenceRow]


@dataclass
class TauInfo:
    """Dati combinatori di una partizione con blocchi di taglia <= 2."""
    partition: SetPartition
    tau: Permutation
    tau_induced: Permutation
    sigma: Permutation
    eta_sigma: Permutation
    b_set: List[int]
    tau_orbit_sizes: List[int]
    intersections: List[int]
    all_orbits_meet: bool
    # chi(tau_pi) per variante di sigma: orbite, colorazioni esplicite
    characters: Dict[str, Tuple[Fraction, Optional[Fraction]]] = field(default_factory=dict)


@dataclass
class CharacterValue:
    permutation: Permutation
    cycle_type: Tuple[int, ...]
    value: Fraction


class MomentEngine:
    """Orchestratore dietro CLI e API."""

    def __init__(self, config: Optional[AppConfig] = None):
        """Inizializza il motore con la configurazione e una cache condivisa."""
        self.config = config or AppConfig()
        self.cache = PartitionFunctionCache()

    def compute_moments(self, weights: WeightVector, max_order: int,
                        routes: Sequence[Route] = ALL_ROUTES,
                        threads: Optional[int] = None) -> MomentReport:
        """Calcola le vie selezionate per k = 0..max_order."""
        if max_order < 0:
            raise InputValidationError(f"max-order must be >= 0, got {max_order}")
        if max_order > self.config.max_order_cap:
            raise InfeasibleSizeError(
                f"max-order {max_order} exceeds the configured cap {self.config.max_order_cap}"
            )
        routes = list(routes) or list(ALL_ROUTES)
        threads = threads or self.config.threads
        cap = self.config.max_order_cap
        _LOGGER.info(f"Computing moments up to k={max_order} for w=({weights}) "
                     f"via routes {','.join(r.value for r in routes)} on {threads} thread(s)")

        def row(k: int) -> MomentRow:
            values, elapsed = evaluate_routes(weights, k, routes, cap)
            result = MomentRow(k, values, elapsed)
            if not result.agree:
                _LOGGER.warning(f"Routes disagree at k={k}: {values}")
            return result

        orders = range(max_order + 1)
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                # map conserva l'ordine degli input
                rows = list(pool.map(row, orders))
        else:
            rows = [row(k) for k in orders]
        return MomentReport(weights, routes, rows)

    def verify(self, weights: WeightVector, profile: Optional[str] = None,
               gue: bool = False, seed: int = 0,
               tau_builder: TauBuilder = tau_pi) -> VerificationReport:
        """Esegue tutte le suite di verifica al profilo scelto."""
        name = profile or self.config.depth_profile
        if name not in DEPTH_PROFILES:
            raise InputValidationError(
                f"Unknown depth profile {name!r}; expected one of {', '.join(DEPTH_PROFILES)}"
            )
        _LOGGER.info(f"Running verification suites for w=({weights}), profile={name}, seed={seed}")
        suites = run_suites(weights, DEPTH_PROFILES[name], self.config.max_order_cap,
                            tau_builder, gue=gue, seed=seed, cache=self.cache)
        report = VerificationReport(weights, name, seed, suites)
        _LOGGER.info(f"Verification {'passed' if report.passed else 'FAILED'}; "
                     f"cache stats: {self.cache.stats()}")
        return report

    def converge(self, weights: WeightVector, k: int, ns: Sequence[int]) -> ConvergenceTable:
        """Momenti esatti di s_n a confronto con il limite."""
        if k < 0 or k % 2:
            raise InputValidationError(f"Convergence tables need an even k >= 0, got {k}")
        if k > self.config.converge_max_k:
            raise InfeasibleSizeError(f"k={k} exceeds the convergence cap {self.config.converge_max_k}")
        if not ns:
            raise InputValidationError("At least one n is required")
        for n in ns:
            if n < 1:
                raise InputValidationError(f"n must be >= 1, got {n}")
            if n > self.config.converge_max_n:
                raise InfeasibleSizeError(f"n={n} exceeds the cap {self.config.converge_max_n}")
        limit = moment_routeA(weights, k, self.config.max_order_cap)
        rows = [ConvergenceRow(n, s_n_moment(weights, n, k, self.cache), limit) for n in ns]
        _LOGGER.info(f"Convergence table for k={k}: gaps {[str(r.gap) for r in rows]}")
        return ConvergenceTable(weights, k, rows)

    def tau_info(self, pi: SetPartition, weights: Optional[WeightVector] = None,
                 tau_builder: TauBuilder = tau_pi) -> TauInfo:
        """tau_pi, sigma_pi, B_pi e orbite; con i pesi anche chi(tau_pi) nelle due varianti."""
        if pi.k > self.config.enumeration_cap:
            raise InfeasibleSizeError(f"k={pi.k} exceeds the enumeration cap {self.config.enumeration_cap}")
        if not pi.is_at_most_pair:
            raise InputValidationError(f"{pi} has a block with more than two elements")
        pi = pi.as_at_most_pair()
        tau_sizes, intersections, all_meet = orbit_correspondence(pi, tau_builder)
        sigma = sigma_pi(pi)
        info = TauInfo(
            partition=pi,
            tau=tau_builder(pi),
            tau_induced=tau_via_induced(pi),
            sigma=sigma,
            eta_sigma=compose(forward_cycle(pi.k + 1), sigma),
            b_set=sorted(block_order(pi).b_set),
            tau_orbit_sizes=tau_sizes,
            intersections=intersections,
            all_orbits_meet=all_meet,
        )
        if weights is not None:
            for variant in SigmaVariant:
                try:
                    oracle = chi_tau_via_sigma_bruteforce(weights, pi, variant, self.config.bruteforce_limit)
                except InfeasibleSizeError as e:
                    _LOGGER.debug(f"Skipping colouring oracle for {pi}: {e}")
                    oracle = None
                info.characters[variant.value] = (chi_tau_via_sigma(weights, pi, variant), oracle)
            expected = character(weights, info.tau)
            for name, (value, oracle) in info.characters.items():
                if value != expected or (oracle is not None and oracle != value):
                    _LOGGER.warning(f"chi(tau) mismatch for {pi} ({name}): {value}, {oracle}, {expected}")
        return info

    def character(self, weights: WeightVector, p: Permutation) -> CharacterValue:
        return CharacterValue(p, p.cycle_type(), character(weights, p))
