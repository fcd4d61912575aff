from groupke.commands.base import Command
from groupke.commands.check import CheckCommand
from groupke.commands.distance import DistanceCommand
from groupke.commands.functional import DingCommand
from groupke.commands.futaki import FutakiCommand
from groupke.commands.probe import ProbeCommand
from groupke.commands.rays import RayScanCommand

COMMANDS: dict[str, type[Command]] = {
    command.name: command
    for command in (
        CheckCommand,
        DingCommand,
        RayScanCommand,
        DistanceCommand,
        ProbeCommand,
        FutakiCommand,
    )
}

__all__ = [
    "COMMANDS",
    "Command",
    "CheckCommand",
    "DingCommand",
    "DistanceCommand",
    "FutakiCommand",
    "ProbeCommand",
    "RayScanCommand",
]
