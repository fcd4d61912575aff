import argparse

from groupke.commands.base import Command
from groupke.commands.rays import path_grid, ray_grid
from groupke.ding import path_convexity_probe, properness_probe, test_ray
from groupke.ding.functional import doubled
from groupke.errors import SampleGridError
from groupke.rational import decimal


class ProbeCommand(Command):
    """Properness fit over named functions and test rays, plus path convexity."""

    name = "probe"
    help = "Probe properness and convexity of the Ding functional"
    uses_quadrature = True

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        group = parser.add_argument_group("Samples")
        group.add_argument("--k", type=int, default=1, help="Fundamental weight index")
        group.add_argument(
            "--lambda-max", type=float, default=40.0, help="Largest ray parameter"
        )
        group.add_argument(
            "--steps",
            type=int,
            default=10,
            help="Number of ray samples; 0 uses named functions only",
        )
        group.add_argument(
            "--t-steps", type=int, default=10, help="Intervals of the path grid on [0, 1]"
        )

    def run(self, args: argparse.Namespace) -> int:
        if args.steps < 0:
            raise SampleGridError(f"--steps must be non-negative, got {args.steps}")
        ts = path_grid(args.t_steps)
        problem = self.load(args)
        rs, P = problem.root_system, problem.polytope
        q = self.quadrature(args, problem)
        labelled = list(problem.functions.items())
        if not rs.is_toric and args.steps > 0:
            P2 = doubled(P)
            for lam in ray_grid(args.lambda_max, args.steps):
                label = f"ray k={args.k} lambda={decimal(lam)}"
                labelled.append((label, test_ray(rs, P2, args.k, lam)))
        if not labelled:
            labelled = [("zero", self.resolve_function(problem, None))]
        samples = [u for _, u in labelled]
        properness = properness_probe(rs, P, samples, q)
        payload = {
            "properness": self.serializer.properness_to_json(properness),
            "samples": [
                {"label": label, **self.serializer.function_to_json(u)} for label, u in labelled
            ],
        }
        named = list(problem.functions.values())
        if len(named) >= 2:
            report = path_convexity_probe(rs, P, named[0], named[1], ts, q)
            payload["convexity"] = self.serializer.convexity_to_json(report)
        self.emit(args, payload, "Ding probes")
        return 0
