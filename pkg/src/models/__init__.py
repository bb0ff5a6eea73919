from .point import Point, PointSet
from .polygon import ConvexPolygon, PetalDecomposition
from .graph import UnitDiskGraph
from .partition import CliquePartition, CliquePartitionBase
from .strips import Convergent, RationalWidth, RoundPlan, StripInstance, StripSystem
from .grid import CellGuess, GridSystem
from .uncross import IncompatibilityGraph, UncrossMove, UncrossReport
from .experiment import ExperimentConfig, InstanceSpec, RunResult, SolveReport

__all__ = [
    "Point", "PointSet", "ConvexPolygon", "PetalDecomposition", "UnitDiskGraph",
    "CliquePartition", "CliquePartitionBase", "Convergent", "RationalWidth", "RoundPlan",
    "StripInstance", "StripSystem", "CellGuess", "GridSystem", "IncompatibilityGraph",
    "UncrossMove", "UncrossReport", "ExperimentConfig", "InstanceSpec", "RunResult", "SolveReport",
]
