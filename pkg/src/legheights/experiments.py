"""Sweep drivers for the three height experiments, with JSON/CSV persistence.

Each sample of a family yields one RunRecord carrying the exact parameter,
the base height, the canonical height (certified to the run tolerance),
the total height, and the comparison ratio.  Samples whose height limit
fails to certify are skipped and logged, never silently dropped.
"""

from __future__ import annotations

import csv
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .errors import NonConvergence
from .families import FamilySpec
from .heights import (
    lambda_height,
    neron_tate_product,
    total_height,
)

log = logging.getLogger(__name__)

CSV_COLUMNS = ("t", "lambda", "h_lambda", "nt_height", "total_height", "st_ratio")


@dataclass
class RunRecord:
    t: Fraction
    lam: Fraction
    h_lambda: float
    nt_height: float
    total_height: float
    st_ratio: float

    def as_row(self) -> list[str]:
        return [
            _frac_str(self.t),
            _frac_str(self.lam),
            repr(self.h_lambda),
            repr(self.nt_height),
            repr(self.total_height),
            repr(self.st_ratio),
        ]

    def as_dict(self) -> dict:
        return {
            "t": _frac_str(self.t),
            "lambda": _frac_str(self.lam),
            "h_lambda": self.h_lambda,
            "nt_height": self.nt_height,
            "total_height": self.total_height,
            "st_ratio": self.st_ratio,
        }


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def build_record(family: FamilySpec, t, tolerance: float) -> RunRecord:
    t = Fraction(t)
    point = family.point_at(t)
    lam = point.lam
    h_lam = lambda_height(lam)
    nt = neron_tate_product(point, tolerance)
    tot = total_height(point)
    ratio = abs(tot - nt.value) / max(1.0, h_lam)
    return RunRecord(t, lam, h_lam, nt.value, tot, ratio)


def _collect(family: FamilySpec, samples, tolerance: float):
    records: list[RunRecord] = []
    skipped: list[str] = []
    for t in samples:
        t = Fraction(t)
        if not family.admissible(t):
            skipped.append(f"t={_frac_str(t)}: inadmissible")
            log.warning("skipping inadmissible sample t=%s", t)
            continue
        try:
            records.append(build_record(family, t, tolerance))
        except NonConvergence as exc:
            skipped.append(f"t={_frac_str(t)}: {exc}")
            log.warning("skipping sample t=%s: %s", t, exc)
    return records, skipped


@dataclass
class HeightInequalityRun:
    records: list[RunRecord]
    empirical_c: float
    degenerate: bool  # all canonical heights below tolerance (torsion-like section)
    skipped: list[str] = field(default_factory=list)


def run_height_inequality(
    family: FamilySpec, samples, tolerance: float = 1e-8
) -> HeightInequalityRun:
    """h(lambda) <= c * max(1, canonical height): record the empirical c."""
    records, skipped = _collect(family, samples, tolerance)
    empirical_c = max(
        (r.h_lambda / max(1.0, r.nt_height) for r in records), default=0.0
    )
    degenerate = bool(records) and all(r.nt_height < tolerance for r in records)
    return HeightInequalityRun(records, empirical_c, degenerate, skipped)


@dataclass
class SilvermanTateRun:
    records: list[RunRecord]
    max_ratio: float
    first_quartile_max: float
    last_quartile_max: float
    skipped: list[str] = field(default_factory=list)


def run_silverman_tate(family: FamilySpec, samples, tolerance: float = 1e-8) -> SilvermanTateRun:
    """Max of |total - canonical| / max(1, h(lambda)) plus a trend report.

    The first/last quartile maxima (ordered by base height) diagnose any
    divergence trend; the comparison theorem predicts none.
    """
    records, skipped = _collect(family, samples, tolerance)
    ordered = sorted(records, key=lambda r: r.h_lambda)
    max_ratio = max((r.st_ratio for r in records), default=0.0)
    quarter = max(1, len(ordered) // 4) if ordered else 0
    first_max = max((r.st_ratio for r in ordered[:quarter]), default=0.0)
    last_max = max((r.st_ratio for r in ordered[-quarter:]), default=0.0) if quarter else 0.0
    return SilvermanTateRun(records, max_ratio, first_max, last_max, skipped)


@dataclass
class SpecializationRun:
    records: list[RunRecord]  # ordered by increasing h(lambda)
    ratios: list[tuple[float, float]]  # (h_lambda, nt/h_lambda)
    top_quartile_spread: float
    limit_estimate: float
    skipped: list[str] = field(default_factory=list)


def run_specialization_ratio(
    family: FamilySpec, samples, tolerance: float = 1e-8
) -> SpecializationRun:
    """Ratios hhat(P(t)) / h(lambda(t)) along increasing base height.

    The specialization theorem makes these converge; the top-quartile
    spread is the convergence diagnostic and the top-quartile mean is the
    frozen limit estimate.
    """
    records, skipped = _collect(family, samples, tolerance)
    records = sorted(records, key=lambda r: r.h_lambda)
    usable = [r for r in records if r.h_lambda > 0]
    for r in records:
        if r.h_lambda == 0:
            skipped.append(f"t={_frac_str(r.t)}: h(lambda) = 0, ratio undefined")
    ratios = [(r.h_lambda, r.nt_height / r.h_lambda) for r in usable]
    quarter = max(1, len(ratios) // 4) if ratios else 0
    top = [v for _, v in ratios[-quarter:]] if quarter else []
    spread = (max(top) - min(top)) if top else 0.0
    limit = sum(top) / len(top) if top else 0.0
    return SpecializationRun(records, ratios, spread, limit, skipped)


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------


def write_records_csv(path: str, records: list[RunRecord]):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(r.as_row())


def persist_run(
    outdir: str,
    name: str,
    family: FamilySpec,
    parameters: dict,
    records: list[RunRecord],
    diagnostics: dict,
) -> tuple[str, str]:
    """One JSON document plus a flat CSV of records; returns both paths."""
    os.makedirs(outdir, exist_ok=True)
    doc = {
        "experiment": name,
        "version": __version__,
        "family": family.to_json_dict(),
        "parameters": parameters,
        "records": [r.as_dict() for r in records],
        "diagnostics": diagnostics,
    }
    json_path = os.path.join(outdir, f"{name}.json")
    csv_path = os.path.join(outdir, f"{name}.csv")
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    write_records_csv(csv_path, records)
    return json_path, csv_path
