import argparse

from groupke.commands.base import Command
from groupke.criterion import check_existence
from groupke.polytopes import validate_polytope


class CheckCommand(Command):
    """Barycenter criterion with exit code 0/10/11/12 by verdict."""

    name = "check"
    help = "Decide the Kähler-Einstein existence criterion"

    def run(self, args: argparse.Namespace) -> int:
        problem = self.load(args)
        validation = validate_polytope(problem.root_system, problem.polytope)
        report = check_existence(problem.root_system, problem.polytope, validation)
        payload = self.serializer.stability_to_json(report)
        payload["validation"] = self.serializer.validation_to_json(validation)
        self.emit(args, payload, "Existence criterion")
        return report.exit_code
