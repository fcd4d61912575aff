import argparse

from groupke.commands.base import Command
from groupke.ding import e1_distance
from groupke.errors import GroupKEError
from groupke.rational import decimal, format_rational


class DistanceCommand(Command):
    """E1 distance between two functions."""

    name = "distance"
    help = "Exact E1 distance between two PL convex functions"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--function",
            action="append",
            default=[],
            help="Function name; give it twice (a missing second one is the zero function)",
        )

    def run(self, args: argparse.Namespace) -> int:
        problem = self.load(args)
        names = list(args.function) + ["zero"] * (2 - len(args.function))
        if len(names) != 2:
            raise GroupKEError("distance takes at most two --function values")
        u1, u2 = (self.resolve_function(problem, name) for name in names)
        distance = e1_distance(problem.root_system, problem.polytope, u1, u2)
        payload = {
            "functions": names,
            "distance": format_rational(distance),
            "distance_decimal": decimal(distance),
        }
        self.emit(args, payload, "E1 distance")
        return 0
