from groupke.components.parser import Problem, ProblemParser
from groupke.components.serializer import ReportSerializer

__all__ = [
    "Problem",
    "ProblemParser",
    "ReportSerializer",
]
