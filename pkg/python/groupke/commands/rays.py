import argparse
import math
from fractions import Fraction
from pathlib import Path

from groupke.commands.base import Command
from groupke.ding import ray_scan
from groupke.errors import SampleGridError


def ray_grid(lambda_max: float, steps: int) -> list[Fraction]:
    """lambda_max * i / steps for i = 1..steps."""
    if steps < 1:
        raise SampleGridError(f"--steps must be at least 1, got {steps}")
    if not math.isfinite(lambda_max) or lambda_max <= 0:
        raise SampleGridError(
            f"--lambda-max must be positive and finite, got {lambda_max}"
        )
    top = Fraction(str(lambda_max))
    return [top * i / steps for i in range(1, steps + 1)]


def path_grid(t_steps: int) -> list[Fraction]:
    """i / t_steps for i = 0..t_steps."""
    if t_steps < 1:
        raise SampleGridError(f"--t-steps must be at least 1, got {t_steps}")
    return [Fraction(i, t_steps) for i in range(t_steps + 1)]


class RayScanCommand(Command):
    """D along the k-th test ray, its fitted slope and CSV series."""

    name = "ray-scan"
    help = "Scan the Ding functional along a test ray"
    uses_quadrature = True

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        group = parser.add_argument_group("Ray")
        group.add_argument("--k", type=int, default=1, help="Fundamental weight index")
        group.add_argument(
            "--lambda-max", type=float, default=40.0, help="Largest ray parameter"
        )
        group.add_argument("--steps", type=int, default=20, help="Number of grid points")
        group.add_argument(
            "--csv", type=str, default=None, help="Write the (lambda, ding) series here"
        )

    def run(self, args: argparse.Namespace) -> int:
        problem = self.load(args)
        report = ray_scan(
            problem.root_system,
            problem.polytope,
            args.k,
            ray_grid(args.lambda_max, args.steps),
            self.quadrature(args, problem),
        )
        if args.csv:
            Path(args.csv).write_text(self.serializer.ray_scan_csv(report))
        self.emit(args, self.serializer.ray_scan_to_json(report), f"Ray scan k={args.k}")
        return 0
