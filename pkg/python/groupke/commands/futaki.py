import argparse

from groupke.commands.base import Command
from groupke.criterion import futaki
from groupke.linalg import nullspace
from groupke.rational import decimal, format_rational, format_vector, to_vector


class FutakiCommand(Command):
    """Futaki invariant on given or basis central directions."""

    name = "futaki"
    help = "Pair the barycenter with central directions"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--xi",
            nargs="+",
            default=None,
            help="Central direction as rationals; a basis of the center if omitted",
        )

    def run(self, args: argparse.Namespace) -> int:
        problem = self.load(args)
        rs = problem.root_system
        if args.xi is not None:
            directions = [to_vector(args.xi)]
        else:
            directions = nullspace(list(rs.simple_roots), rs.ambient_dim)
        values = [futaki(rs, problem.polytope, xi) for xi in directions]
        payload = {
            "directions": [format_vector(xi) for xi in directions],
            "futaki": [format_rational(v) for v in values],
            "futaki_decimal": [decimal(v) for v in values],
            "vanishes": all(v == 0 for v in values),
        }
        self.emit(args, payload, "Futaki invariant")
        return 0
