import argparse

from groupke.commands.base import Command
from groupke.ding import e1_distance, f_functional, l_functional, zero_function
from groupke.rational import decimal, format_rational


class DingCommand(Command):
    """L, F, D and the distance to zero for one function."""

    name = "ding"
    help = "Evaluate the reduced Ding functional of a PL convex function"
    uses_quadrature = True

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        group = parser.add_argument_group("Function")
        group.add_argument(
            "--function",
            type=str,
            default=None,
            help="Name of a function in the problem file (zero function if omitted)",
        )
        group.add_argument(
            "--function-file",
            type=str,
            default=None,
            help="Path to a PL function file; takes precedence over --function",
        )

    def run(self, args: argparse.Namespace) -> int:
        problem = self.load(args)
        rs, P = problem.root_system, problem.polytope
        u = self.resolve_function(problem, args.function, args.function_file)
        q = self.quadrature(args, problem)
        L = l_functional(rs, P, u)
        F = f_functional(rs, P, u, q)
        distance = e1_distance(rs, P, u, zero_function(rs.ambient_dim))
        payload = {
            "L": format_rational(L),
            "L_decimal": decimal(L),
            "F": F,
            "D": float(L) + F,
            "distance_to_zero": format_rational(distance),
            "distance_to_zero_decimal": decimal(distance),
        }
        self.emit(args, payload, "Reduced Ding functional")
        return 0
