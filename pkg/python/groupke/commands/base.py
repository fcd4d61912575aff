import argparse
import json
from abc import ABC, abstractmethod
from typing import Any

from rich.console import Console

from groupke.components import Problem, ProblemParser, ReportSerializer
from groupke.ding import PLConvexFunction, QuadratureConfig, zero_function
from groupke.errors import GroupKEError


class Command(ABC):
    """Abstract base class for CLI subcommands."""

    name: str = ""
    help: str = ""
    uses_quadrature: bool = False

    def __init__(self, console: Console | None = None):
        self.parser = ProblemParser()
        self.serializer = ReportSerializer()
        self.console = console or Console()

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """Register subcommand-specific arguments."""

    @abstractmethod
    def run(self, args: argparse.Namespace) -> int:
        """Execute the subcommand and return the process exit code."""
        pass

    def load(self, args: argparse.Namespace) -> Problem:
        return self.parser.parse_problem(args.input)

    def quadrature(self, args: argparse.Namespace, problem: Problem) -> QuadratureConfig:
        """Problem-file settings overridden by CLI flags."""
        return problem.quadrature.with_overrides(
            step=args.step, radius=args.radius, tail_tol=args.tail_tol, workers=args.workers
        )

    def resolve_function(
        self, problem: Problem, name: str | None, path: str | None = None
    ) -> PLConvexFunction:
        """Named function from the problem file, a function file, or the zero function."""
        if path is not None:
            return self.parser.parse_function_file(path, problem.root_system.ambient_dim)
        if name is None or name == "zero":
            return zero_function(problem.root_system.ambient_dim)
        if name not in problem.functions:
            known = ", ".join(sorted(problem.functions)) or "none"
            raise GroupKEError(f"Unknown function {name!r}; the problem file defines: {known}")
        return problem.functions[name]

    def emit(self, args: argparse.Namespace, payload: dict[str, Any], title: str) -> None:
        if args.json:
            print(json.dumps(payload, indent=2))
        else:
            self.console.print(self.serializer.to_table(title, payload))
