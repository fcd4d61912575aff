import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from groupke.ding import AffinePiece, PLConvexFunction, QuadratureConfig
from groupke.errors import GroupKEError, ProblemFileError, RationalFormatError
from groupke.polytopes import HPolytope, from_vertices, make_polytope
from groupke.rational import Vector, to_fraction
from groupke.root_systems import RootSystem, build_root_system

ROOT_SYSTEM_KEYS = ("type", "simple_roots", "gram", "central_dim", "allow_noncrystallographic")


@dataclass(frozen=True)
class Problem:
    root_system: RootSystem
    polytope: HPolytope
    functions: dict[str, PLConvexFunction] = field(default_factory=dict)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)


class ProblemParser:
    """Handles parsing of problem files and PL function files."""

    @staticmethod
    def parse_problem(path: str | Path) -> Problem:
        data = ProblemParser._load_json(path, "problem")
        problem = ProblemParser.parse_problem_data(data)
        logging.info(
            f"Loaded {path}: root system {problem.root_system.label or 'explicit'}, "
            f"{len(problem.polytope.facets)} facets, {len(problem.functions)} functions"
        )
        return problem

    @staticmethod
    def parse_problem_data(data: dict[str, Any]) -> Problem:
        """Build validated objects from a decoded problem file."""
        if not isinstance(data, dict):
            raise ProblemFileError("problem", "", "top level must be a JSON object")
        section = data.get("root_system")
        if section is None:
            section = {k: data[k] for k in ROOT_SYSTEM_KEYS if k in data}
        rs = ProblemParser.parse_root_system(section)
        if "polytope" not in data:
            raise ProblemFileError("polytope", "", "section is missing")
        polytope = ProblemParser.parse_polytope(data["polytope"], rs.ambient_dim)
        functions = {
            name: ProblemParser.parse_function(entry, rs.ambient_dim, f"functions.{name}")
            for name, entry in data.get("functions", {}).items()
        }
        quadrature = ProblemParser.parse_quadrature(data.get("quadrature", {}))
        return Problem(rs, polytope, functions, quadrature)

    @staticmethod
    def parse_root_system(section: dict[str, Any]) -> RootSystem:
        if not isinstance(section, dict):
            raise ProblemFileError("root_system", "", "section must be a JSON object")
        unknown = set(section) - set(ROOT_SYSTEM_KEYS)
        if unknown:
            raise ProblemFileError("root_system", sorted(unknown)[0], "unknown key")
        central_dim = section.get("central_dim", 0)
        if not isinstance(central_dim, int) or isinstance(central_dim, bool):
            raise ProblemFileError("root_system", "central_dim", "must be an integer")
        simple_roots = section.get("simple_roots")
        gram = section.get("gram")
        try:
            if simple_roots is not None:
                simple_roots = [
                    ProblemParser._vector(v, "root_system", f"simple_roots[{i}]")
                    for i, v in enumerate(simple_roots)
                ]
            if gram is not None:
                gram = [
                    ProblemParser._vector(v, "root_system", f"gram[{i}]")
                    for i, v in enumerate(gram)
                ]
            return build_root_system(
                section.get("type"),
                simple_roots=simple_roots,
                gram=gram,
                central_dim=central_dim,
                allow_noncrystallographic=bool(section.get("allow_noncrystallographic", False)),
            )
        except ProblemFileError:
            raise
        except GroupKEError as e:
            field_name = "type" if "type" in section else "simple_roots"
            raise ProblemFileError("root_system", field_name, str(e)) from e

    @staticmethod
    def parse_polytope(section: dict[str, Any], dim: int) -> HPolytope:
        if not isinstance(section, dict):
            raise ProblemFileError("polytope", "", "section must be a JSON object")
        rows, points = [], []
        if "inequalities" in section:
            field_name = "inequalities"
            for i, row in enumerate(section["inequalities"]):
                location = f"inequalities[{i}]"
                if not isinstance(row, dict) or "normal" not in row or "offset" not in row:
                    raise ProblemFileError("polytope", location, "needs 'normal' and 'offset'")
                normal = ProblemParser._vector(row["normal"], "polytope", f"{location}.normal")
                offset = ProblemParser._rational(row["offset"], "polytope", f"{location}.offset")
                ProblemParser._check_dim(normal, dim, "polytope", location)
                rows.append((normal, offset))
        elif "vertices" in section:
            field_name = "vertices"
            for i, point in enumerate(section["vertices"]):
                vector = ProblemParser._vector(point, "polytope", f"vertices[{i}]")
                ProblemParser._check_dim(vector, dim, "polytope", f"vertices[{i}]")
                points.append(vector)
        else:
            raise ProblemFileError("polytope", "", "needs 'inequalities' or 'vertices'")
        try:
            if field_name == "inequalities":
                return make_polytope(rows, dim)
            return from_vertices(points)
        except GroupKEError as e:
            raise ProblemFileError("polytope", field_name, str(e)) from e

    @staticmethod
    def parse_function(data: dict[str, Any], dim: int, section: str = "function") -> PLConvexFunction:
        """Parse ``{"pieces": [{"gradient": [...], "offset": "p/q"}]}``."""
        if not isinstance(data, dict) or not isinstance(data.get("pieces"), list):
            raise ProblemFileError(section, "pieces", "must be a list of pieces")
        pieces = []
        for i, piece in enumerate(data["pieces"]):
            location = f"pieces[{i}]"
            if not isinstance(piece, dict) or "gradient" not in piece:
                raise ProblemFileError(section, location, "needs a 'gradient'")
            gradient = ProblemParser._vector(piece["gradient"], section, f"{location}.gradient")
            ProblemParser._check_dim(gradient, dim, section, location)
            offset = ProblemParser._rational(piece.get("offset", 0), section, f"{location}.offset")
            pieces.append(AffinePiece(gradient, offset))
        if not pieces:
            raise ProblemFileError(section, "pieces", "needs at least one piece")
        return PLConvexFunction(tuple(pieces))

    @staticmethod
    def parse_function_file(path: str | Path, dim: int) -> PLConvexFunction:
        return ProblemParser.parse_function(ProblemParser._load_json(path, "function"), dim)

    @staticmethod
    def parse_quadrature(section: dict[str, Any]) -> QuadratureConfig:
        if not isinstance(section, dict):
            raise ProblemFileError("quadrature", "", "section must be a JSON object")
        try:
            return QuadratureConfig().with_overrides(**section)
        except (GroupKEError, TypeError) as e:
            raise ProblemFileError("quadrature", ",".join(sorted(section)), str(e)) from e

    @staticmethod
    def _load_json(path: str | Path, section: str) -> Any:
        try:
            return json.loads(Path(path).read_text())
        except OSError as e:
            raise ProblemFileError(section, "", f"cannot read {path}: {e.strerror}") from e
        except json.JSONDecodeError as e:
            raise ProblemFileError(section, "", f"invalid JSON in {path}: {e.msg}") from e

    @staticmethod
    def _rational(value: Any, section: str, field_name: str) -> Fraction:
        try:
            return to_fraction(value)
        except RationalFormatError as e:
            raise ProblemFileError(section, field_name, str(e)) from e

    @staticmethod
    def _vector(values: Any, section: str, field_name: str) -> Vector:
        if not isinstance(values, list):
            raise ProblemFileError(section, field_name, "must be a list of rationals")
        return tuple(ProblemParser._rational(v, section, field_name) for v in values)

    @staticmethod
    def _check_dim(vector: Vector, dim: int, section: str, field_name: str) -> None:
        if len(vector) != dim:
            raise ProblemFileError(
                section,
                field_name,
                f"dimension {len(vector)} does not match the root system's ambient dimension {dim}",
            )
