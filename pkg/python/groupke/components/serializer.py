import csv
import io
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from rich.table import Table

from groupke.criterion import StabilityReport, Verdict
from groupke.ding import ConvexityReport, PLConvexFunction, PropernessReport, RayScanReport
from groupke.polytopes import PolytopeValidation
from groupke.rational import decimal, format_rational, format_vector, to_fraction
from groupke.root_systems import ConeLocation, ConeTag

CSV_DIGITS = 12


class ReportSerializer:
    """Handles conversion of reports to JSON-serializable dictionaries and CSV."""

    @staticmethod
    def stability_to_json(report: StabilityReport) -> dict[str, Any]:
        """Flat JSON object mirroring the stability report."""
        return {
            "verdict": report.verdict.value,
            "exit_code": report.exit_code,
            "claim": report.claim,
            "volume": format_rational(report.volume),
            "volume_decimal": decimal(report.volume),
            "barycenter": format_vector(report.barycenter),
            "barycenter_decimal": ReportSerializer._decimals(report.barycenter),
            "central_component": format_vector(report.central_component),
            "cone_location": report.cone_location.tag.value,
            "cone_coefficients": format_vector(report.cone_location.coefficients),
            "cone_coefficients_decimal": ReportSerializer._decimals(
                report.cone_location.coefficients
            ),
            "fine": report.fine,
            "four_rho_interior": report.four_rho_interior,
        }

    @staticmethod
    def stability_from_json(data: dict[str, Any]) -> StabilityReport:
        """Inverse of stability_to_json; decimal renderings are ignored."""
        return StabilityReport(
            volume=to_fraction(data["volume"]),
            barycenter=ReportSerializer._vector(data["barycenter"]),
            central_component=ReportSerializer._vector(data["central_component"]),
            cone_location=ConeLocation(
                ConeTag(data["cone_location"]),
                ReportSerializer._vector(data["cone_coefficients"]),
            ),
            fine=bool(data["fine"]),
            four_rho_interior=bool(data["four_rho_interior"]),
            verdict=Verdict(data["verdict"]),
        )

    @staticmethod
    def validation_to_json(validation: PolytopeValidation) -> dict[str, Any]:
        return {
            "w_invariant": validation.w_invariant,
            "contains_origin_interior": validation.contains_origin_interior,
            "four_rho_interior": validation.four_rho_interior,
            "fine": validation.fine,
        }

    @staticmethod
    def function_to_json(u: PLConvexFunction) -> dict[str, Any]:
        return {
            "pieces": [
                {"gradient": format_vector(p.gradient), "offset": format_rational(p.offset)}
                for p in u.pieces
            ]
        }

    @staticmethod
    def ray_scan_to_json(report: RayScanReport) -> dict[str, Any]:
        return {
            "k": report.k,
            "lambdas": list(report.lambdas),
            "values": list(report.values),
            "fitted_slope": report.fitted_slope,
            "intercept": report.intercept,
            "predicted_slope": format_rational(report.predicted_slope),
            "predicted_slope_decimal": decimal(report.predicted_slope),
            "classification": report.classification.value,
        }

    @staticmethod
    def ray_scan_csv(report: RayScanReport) -> str:
        """Plot-ready series with columns lambda,ding."""
        return ReportSerializer.series_csv(("lambda", "ding"), zip(report.lambdas, report.values))

    @staticmethod
    def convexity_to_json(report: ConvexityReport) -> dict[str, Any]:
        return {
            "ts": list(report.ts),
            "values": list(report.values),
            "violations": list(report.violations),
            "max_violation": report.max_violation,
            "tolerance": report.tolerance,
            "passed": report.passed,
        }

    @staticmethod
    def properness_to_json(report: PropernessReport) -> dict[str, Any]:
        return {
            "integrals": list(report.integrals),
            "values": list(report.values),
            "c0": report.c0,
            "C0": report.C0,
            "min_margin": report.min_margin,
            "margins": list(report.margins),
            "best_index": report.best_index,
            "ratio": report.ratio,
            "proper": report.proper,
        }

    @staticmethod
    def series_csv(header: Sequence[str], rows) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([decimal(v, CSV_DIGITS) for v in row])
        return buffer.getvalue()

    @staticmethod
    def to_table(title: str, payload: dict[str, Any]) -> Table:
        """Two-column rich table; nested sections become dotted field names."""
        table = Table(title=title)
        table.add_column("field", style="cyan")
        table.add_column("value")
        for key, value in ReportSerializer._flatten(payload):
            table.add_row(key, value)
        return table

    @staticmethod
    def _flatten(payload: dict[str, Any], prefix: str = "") -> list[tuple[str, str]]:
        rows: list[tuple[str, str]] = []
        for key, value in payload.items():
            name = f"{prefix}{key}"
            if isinstance(value, dict):
                rows += ReportSerializer._flatten(value, f"{name}.")
            elif isinstance(value, list) and any(isinstance(v, dict) for v in value):
                for i, item in enumerate(value):
                    rows += ReportSerializer._flatten({f"[{i}]": item}, name)
            elif isinstance(value, list):
                rows.append((name, ", ".join(str(v) for v in value) or "-"))
            else:
                rows.append((name, str(value)))
        return rows

    @staticmethod
    def _decimals(values: Sequence[Fraction]) -> list[str]:
        return [decimal(v) for v in values]

    @staticmethod
    def _vector(values: Sequence[str]) -> tuple[Fraction, ...]:
        return tuple(to_fraction(v) for v in values)
