from .graph_service import GraphService, build_graph
from .exact_solver import ExactSolver, exact_mcp, exact_mcp_count
from .strip_solver import StripSolver, check_transitive, solve_strip
from .width_selection import WidthSelection, select_width, xi_convergent
from .shifted_strips_service import ShiftedStripsService
from .grid_ptas_service import GridPTASService, cell_qmax
from .uncross_service import UncrossService, psi, uncross_partition
from .experiment_service import ExperimentService

__all__ = [
    "GraphService", "build_graph", "ExactSolver", "exact_mcp", "exact_mcp_count",
    "StripSolver", "check_transitive", "solve_strip", "WidthSelection", "select_width",
    "xi_convergent", "ShiftedStripsService", "GridPTASService", "cell_qmax",
    "UncrossService", "psi", "uncross_partition", "ExperimentService",
]
