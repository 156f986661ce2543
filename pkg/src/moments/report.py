"""Modelli pydantic dei report e rendering JSON/CSV."""

import csv
import io
from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel

from .algebra import scalar_from_json, scalar_to_json
from .core import CharacterValue, ConvergenceTable, MomentReport, TauInfo, VerificationReport


class RationalModel(BaseModel):
    """Razionale esatto; approx e' solo per lettura umana."""
    num: str
    den: str
    approx: Optional[float] = None

    @classmethod
    def of(cls, value: Fraction, approx: bool = True) -> "RationalModel":
        return cls(**scalar_to_json(value, approx=approx))

    def to_fraction(self) -> Fraction:
        return scalar_from_json(self.model_dump())


class MomentRowModel(BaseModel):
    k: int
    routes: Dict[str, RationalModel]
    agree: bool
    elapsed_ms: Optional[Dict[str, float]] = None


class MomentReportModel(BaseModel):
    weights: List[RationalModel]
    moments: List[MomentRowModel]


class SuiteResultModel(BaseModel):
    name: str
    passed: bool
    skipped: bool
    checked: int
    failures: List[str]
    notes: List[str]


class VerificationReportModel(BaseModel):
    weights: List[RationalModel]
    profile: str
    seed: int
    passed: bool
    suites: List[SuiteResultModel]


class ConvergenceRowModel(BaseModel):
    n: int
    moment: RationalModel
    limit: RationalModel
    gap: RationalModel


class ConvergenceTableModel(BaseModel):
    weights: List[RationalModel]
    k: int
    rows: List[ConvergenceRowModel]


class SigmaCharacterModel(BaseModel):
    orbits: RationalModel
    colourings: Optional[RationalModel] = None


class TauInfoModel(BaseModel):
    partition: str
    k: int
    tau: str
    tau_induced: str
    sigma: str
    eta_sigma: str
    b_set: List[int]
    tau_orbit_sizes: List[int]
    intersections: List[int]
    all_orbits_meet: bool
    characters: Optional[Dict[str, SigmaCharacterModel]] = None


class CharacterModel(BaseModel):
    weights: List[RationalModel]
    permutation: str
    cycle_type: List[int]
    value: RationalModel


def _weights(report) -> List[RationalModel]:
    return [RationalModel.of(x) for x in report.weights.weights]


def moment_report_model(report: MomentReport, timings: bool = False) -> MomentReportModel:
    return MomentReportModel(
        weights=_weights(report),
        moments=[
            MomentRowModel(
                k=row.k,
                routes={r.value: RationalModel.of(v) for r, v in row.values.items()},
                agree=row.agree,
                elapsed_ms={r.value: round(t, 3) for r, t in row.elapsed_ms.items()} if timings else None,
            )
            for row in report.rows
        ],
    )


def verification_report_model(report: VerificationReport) -> VerificationReportModel:
    return VerificationReportModel(
        weights=_weights(report),
        profile=report.profile,
        seed=report.seed,
        passed=report.passed,
        suites=[
            SuiteResultModel(name=s.name, passed=s.passed, skipped=s.skipped, checked=s.checked,
                             failures=s.failures, notes=s.notes)
            for s in report.suites
        ],
    )


def convergence_table_model(table: ConvergenceTable) -> ConvergenceTableModel:
    return ConvergenceTableModel(
        weights=_weights(table),
        k=table.k,
        rows=[
            ConvergenceRowModel(n=r.n, moment=RationalModel.of(r.moment),
                                limit=RationalModel.of(r.limit), gap=RationalModel.of(r.gap))
            for r in table.rows
        ],
    )


def tau_info_model(info: TauInfo) -> TauInfoModel:
    characters = None
    if info.characters:
        characters = {
            name: SigmaCharacterModel(
                orbits=RationalModel.of(value),
                colourings=RationalModel.of(oracle) if oracle is not None else None,
            )
            for name, (value, oracle) in info.characters.items()
        }
    return TauInfoModel(
        partition=str(info.partition),
        k=info.partition.k,
        tau=str(info.tau),
        tau_induced=str(info.tau_induced),
        sigma=str(info.sigma),
        eta_sigma=str(info.eta_sigma),
        b_set=info.b_set,
        tau_orbit_sizes=info.tau_orbit_sizes,
        intersections=info.intersections,
        all_orbits_meet=info.all_orbits_meet,
        characters=characters,
    )


def character_model(weights, value: CharacterValue) -> CharacterModel:
    return CharacterModel(
        weights=[RationalModel.of(x) for x in weights.weights],
        permutation=str(value.permutation),
        cycle_type=list(value.cycle_type),
        value=RationalModel.of(value.value),
    )


def to_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2, exclude_none=True)


def _fraction_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def moments_to_csv(report: MomentReport, timings: bool = False) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = ["k"] + [f"route_{r.value}" for r in report.routes] + ["approx", "agree"]
    if timings:
        header += [f"ms_{r.value}" for r in report.routes]
    writer.writerow(header)
    for row in report.rows:
        line = [row.k] + [_fraction_text(row.values[r]) for r in report.routes]
        line += [repr(float(row.value)), str(row.agree).lower()]
        if timings:
            line += [f"{row.elapsed_ms[r]:.3f}" for r in report.routes]
        writer.writerow(line)
    return buffer.getvalue()


def convergence_to_csv(table: ConvergenceTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", "moment", "limit", "gap", "moment_approx", "gap_approx"])
    for r in table.rows:
        writer.writerow([r.n, _fraction_text(r.moment), _fraction_text(r.limit), _fraction_text(r.gap),
                         repr(float(r.moment)), repr(float(r.gap))])
    return buffer.getvalue()
