import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..config.constants import (
    ORIENTATION_TOLERANCE, PROXIMITY_MAX_DEGREE, PTAS_K_FACTOR, CellSolver
)
from ..config.settings import settings
from ..exceptions import InstanceTooLargeError, MCPError
from ..models import CellGuess, CliquePartition, GridSystem, PointSet, SolveReport
from ..utils.geometry_utils import convex_hull, line_side, separating_line
from ..utils.random_utils import make_rng, uniform_shift
from ..validators import ValidationRules
from .exact_solver import ExactSolver
from .graph_service import GraphService
from .uncross_service import UncrossService


def _coords(points: PointSet) -> np.ndarray:
    return np.asarray(points.coords(), dtype=float).reshape(-1, 2)


def _lado(coords: np.ndarray, a: int, b: int) -> np.ndarray:
    """Lado de cada punto respecto a la recta dirigida a -> b (positivo a la izquierda)."""
    ax, ay = coords[a]
    bx, by = coords[b]
    return (bx - ax) * (coords[:, 1] - ay) - (by - ay) * (coords[:, 0] - ax)


def _es_clique(coords: np.ndarray, miembros: Sequence[int]) -> bool:
    if len(miembros) < 2:
        return True
    sub = coords[list(miembros)]
    dx = sub[:, None, 0] - sub[None, :, 0]
    dy = sub[:, None, 1] - sub[None, :, 1]
    return not bool(np.any(dx * dx + dy * dy > 1.0))


def _cercanos(coords: np.ndarray, reps: Sequence[int]) -> np.ndarray:
    """Matriz n x q: punto a distancia <= 1 del representante."""
    r = coords[list(reps)]
    dx = coords[:, None, 0] - r[None, :, 0]
    dy = coords[:, None, 1] - r[None, :, 1]
    return dx * dx + dy * dy <= 1.0


def _exclude_far_parts(cerca: np.ndarray, aristas: Sequence[Tuple[int, int]]) -> np.ndarray:
    """Si r_i r_j no es arista y |p r_i| <= 1, p no puede ir a la parte j."""
    q = cerca.shape[1]
    vecinos = np.eye(q, dtype=bool)
    for i, j in aristas:
        vecinos[i, j] = vecinos[j, i] = True
    permitido = cerca.copy()
    for j in range(q):
        lejanos = ~vecinos[:, j]
        if lejanos.any():
            permitido[:, j] &= ~cerca[:, lejanos].any(axis=1)
    return permitido


def _restrict(permitido: np.ndarray, coords: np.ndarray, arista: Tuple[int, int], sep: Tuple[int, int]) -> np.ndarray:
    i, j = arista
    lados = _lado(coords, sep[0], sep[1])
    nuevo = permitido.copy()
    nuevo[:, i] &= lados >= -ORIENTATION_TOLERANCE
    nuevo[:, j] &= lados <= ORIENTATION_TOLERANCE
    return nuevo


def _forced_consistent(permitido: np.ndarray, coords: np.ndarray) -> bool:
    """Todo punto tiene candidato y los puntos forzados de cada parte forman un clique."""
    opciones = permitido.sum(axis=1)
    if np.any(opciones == 0):
        return False
    forzados = opciones == 1
    for parte in range(permitido.shape[1]):
        miembros = np.flatnonzero(forzados & permitido[:, parte])
        if not _es_clique(coords, miembros):
            return False
    return True


def _resolve_assignment(permitido: np.ndarray, coords: np.ndarray) -> Optional[List[List[int]]]:
    """Asignar puntos ambiguos (sobre una recta separadora) de modo que cada parte sea un clique."""
    n, q = permitido.shape
    partes: List[List[int]] = [[] for _ in range(q)]
    ambiguos = []
    for p in range(n):
        candidatos = np.flatnonzero(permitido[p]).tolist()
        if not candidatos:
            return None
        if len(candidatos) == 1:
            partes[candidatos[0]].append(p)
        else:
            ambiguos.append((p, candidatos))
    if not all(_es_clique(coords, parte) for parte in partes):
        return None

    def compatible(p: int, parte: List[int]) -> bool:
        d = coords[parte] - coords[p]
        return not bool(np.any((d * d).sum(axis=1) > 1.0))

    def asignar(m: int) -> bool:
        if m == len(ambiguos):
            return True
        p, candidatos = ambiguos[m]
        for c in candidatos:
            if compatible(p, partes[c]):
                partes[c].append(p)
                if asignar(m + 1):
                    return True
                partes[c].pop()
        return False

    if not asignar(0):
        return None
    return partes


class GridPTASService:
    """Malla k x k desplazada al azar con solución exacta por celda (esqueleto del PTAS)."""

    def __init__(self, threads: Optional[int] = None):
        self.threads = max(1, threads if threads is not None else settings.threads)

    @staticmethod
    def k_for(eps: float) -> int:
        """k = ceil(16/eps)."""
        ValidationRules.validar_probabilidad("eps", eps)
        return math.ceil(Fraction(PTAS_K_FACTOR) / Fraction(repr(float(eps))))

    @staticmethod
    def rounds_for(delta: float) -> int:
        """Rondas independientes: ceil(log2(1/delta)), al menos una."""
        ValidationRules.validar_probabilidad("delta", delta)
        return max(1, math.ceil(math.log2(1.0 / delta)))

    @staticmethod
    def cell_qmax(k: int) -> int:
        """Cota 2k^2 + 3k del número de cliques de una partición óptima en una celda k x k."""
        ValidationRules.validar_entero_minimo("k", k, 1)
        return 2 * k * k + 3 * k

    @staticmethod
    def solve_cell(cell_points: PointSet, cell_solver: CellSolver = CellSolver.ORACLE) -> CliquePartition:
        """
        Partición óptima de los puntos de una celda.

        Raises:
            InstanceTooLargeError: Si la celda excede la capacidad del solver elegido
        """
        if CellSolver(cell_solver) == CellSolver.ORACLE:
            return ExactSolver(GraphService.build_graph(cell_points)).solve()
        resultado = GridPTASService.enumerative_cell_solve(cell_points)
        if resultado is None:
            _, q_limit = ValidationRules.get_enum_limits()
            raise InstanceTooLargeError(f"La celda requiere más de {q_limit} cliques; excede la enumeración")
        return resultado

    def one_round(self, ps: PointSet, grid: GridSystem, cell_solver: CellSolver) -> CliquePartition:
        celdas = grid.cells(ps)

        def resolver(indices: List[int]) -> List[List[int]]:
            local = self.solve_cell(ps.subset(indices), cell_solver)
            return [[indices[i] for i in parte] for parte in local.parts]

        grupos = list(celdas.values())
        if self.threads > 1 and len(grupos) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                por_celda = list(pool.map(resolver, grupos))
        else:
            por_celda = [resolver(g) for g in grupos]
        logger.debug(f"Ronda de malla: {len(grupos)} celdas no vacías")
        return CliquePartition(parts=[parte for partes in por_celda for parte in partes])

    def ptas_solve_report(self, ps: PointSet, eps: float, delta: float, seed: int = 0,
                          cell_solver: CellSolver = CellSolver.ORACLE,
                          k_override: Optional[int] = None, rounds: Optional[int] = None) -> SolveReport:
        """
        Ejecutar rondas de malla desplazada y devolver la mejor.

        Args:
            ps: Conjunto de puntos
            eps: Exceso objetivo (define k = ceil(16/eps))
            delta: Probabilidad de fallo (define el número de rondas)
            seed: Semilla; la ronda r usa el flujo (seed, r)
            cell_solver: Oráculo exacto o búsqueda enumerativa por celda
            k_override: Lado de celda explícito (parámetros de juguete)
            rounds: Número de rondas explícito

        Returns:
            Reporte con la mejor partición y los conteos por ronda

        Raises:
            ParameterRangeError: Parámetros fuera de rango
            InstanceTooLargeError: Alguna celda excede la capacidad del solver
        """
        k = self.k_for(eps)
        if k_override is not None:
            k = ValidationRules.validar_entero_minimo("k", k_override, 1)
        j = self.rounds_for(delta)
        if rounds is not None:
            j = ValidationRules.validar_entero_minimo("rounds", rounds, 1)
        logger.info(f"Malla desplazada: n={len(ps)}, k={k}, rondas={j}, solver={CellSolver(cell_solver).value}")

        resultados = []
        for r in range(j):
            rng = make_rng(seed, r)
            grid = GridSystem(k=k, shift_x=uniform_shift(rng, k), shift_y=uniform_shift(rng, k))
            try:
                resultados.append(self.one_round(ps, grid, cell_solver))
            except MCPError as e:
                logger.error(f"Ronda {r} de la malla falló: {e}")
                raise

        conteos = [cp.size for cp in resultados]
        mejor = conteos.index(min(conteos))
        logger.info(f"Mejor ronda {mejor}: {conteos[mejor]} cliques")
        return SolveReport(partition=resultados[mejor], rounds=j, counts=conteos, best_round=mejor, k=k)

    def ptas_solve(self, ps: PointSet, eps: float, delta: float, seed: int = 0,
                   cell_solver: CellSolver = CellSolver.ORACLE, k_override: Optional[int] = None) -> CliquePartition:
        return self.ptas_solve_report(ps, eps, delta, seed, cell_solver, k_override).partition

    @staticmethod
    def check_guess(cell_points: PointSet, guess: CellGuess) -> Optional[CliquePartition]:
        """
        Verificar una conjetura de representantes y separadores.

        La parte i recibe los puntos a distancia <= 1 de r_i que están del lado
        de r_i en todos los separadores de sus aristas; los no vecinos de r_i en
        el grafo de proximidad no pueden recibir los puntos cercanos a r_i.

        Args:
            cell_points: Puntos de la celda (índices locales)
            guess: Conjetura

        Returns:
            Partición en cliques que cubre la celda, o None si la conjetura es inválida
        """
        n = len(cell_points)
        if any(not 0 <= r < n for r in guess.representatives):
            return None
        if any(not (0 <= a < n and 0 <= b < n) for a, b in guess.separators):
            return None
        coords = _coords(cell_points)
        permitido = _exclude_far_parts(_cercanos(coords, guess.representatives), guess.proximity_edges)
        for arista, sep in zip(guess.proximity_edges, guess.separators):
            permitido = _restrict(permitido, coords, arista, sep)
        partes = _resolve_assignment(permitido, coords)
        if partes is None:
            return None
        return CliquePartition(parts=[parte for parte in partes if parte])

    @staticmethod
    def _separator_options(coords: np.ndarray, reps: Sequence[int], arista: Tuple[int, int],
                           cerca: np.ndarray) -> List[Tuple[int, int]]:
        """Separadores (a, b) con r_i a la izquierda y r_j a la derecha, sin repetir su efecto."""
        i, j = arista
        relevantes = np.flatnonzero(cerca[:, i] | cerca[:, j])
        opciones, firmas = [], set()
        for a, b in permutations(range(len(coords)), 2):
            if (coords[a] == coords[b]).all():
                continue
            lados = _lado(coords, a, b)
            if lados[reps[i]] < -ORIENTATION_TOLERANCE or lados[reps[j]] > ORIENTATION_TOLERANCE:
                continue
            firma = tuple(
                (bool(lados[p] >= -ORIENTATION_TOLERANCE), bool(lados[p] <= ORIENTATION_TOLERANCE))
                for p in relevantes
            )
            if firma in firmas:
                continue
            firmas.add(firma)
            opciones.append((a, b))
        return opciones

    @staticmethod
    def enumerative_cell_solve(cell_points: PointSet, q_limit: Optional[int] = None) -> Optional[CliquePartition]:
        """
        Búsqueda enumerativa: q creciente, tuplas de representantes en orden
        lexicográfico y separadores por arista de proximidad; gana la primera
        conjetura válida.

        Args:
            cell_points: Puntos de la celda
            q_limit: Máximo q a probar (por defecto settings.enum_q_limit)

        Returns:
            Partición de q mínimo, o None si se supera q_limit

        Raises:
            InstanceTooLargeError: Si la celda excede settings.enum_max_points
        """
        max_puntos, limite_defecto = ValidationRules.get_enum_limits()
        q_limit = q_limit if q_limit is not None else limite_defecto
        n = len(cell_points)
        ValidationRules.validar_capacidad(n, max_puntos, "Solver enumerativo")
        if n == 0:
            return CliquePartition(parts=[])
        coords = _coords(cell_points)

        for q in range(1, min(q_limit, n) + 1):
            for reps in combinations(range(n), q):
                cerca = _cercanos(coords, reps)
                aristas = CellGuess.proximity_edges_for(cell_points, list(reps))
                permitido = _exclude_far_parts(cerca, aristas)
                if not _forced_consistent(permitido, coords):
                    continue
                opciones = [GridPTASService._separator_options(coords, reps, e, cerca) for e in aristas]
                seps: List[Tuple[int, int]] = []

                def buscar(m: int, actual: np.ndarray) -> Optional[CliquePartition]:
                    if m == len(aristas):
                        guess = CellGuess(q=q, representatives=list(reps), proximity_edges=aristas, separators=list(seps))
                        return GridPTASService.check_guess(cell_points, guess)
                    for sep in opciones[m]:
                        siguiente = _restrict(actual, coords, aristas[m], sep)
                        if not _forced_consistent(siguiente, coords):
                            continue
                        seps.append(sep)
                        hallado = buscar(m + 1, siguiente)
                        seps.pop()
                        if hallado is not None:
                            return hallado
                    return None

                resultado = buscar(0, permitido)
                if resultado is not None:
                    logger.debug(f"Celda de {n} puntos resuelta con q={q}, representantes={reps}")
                    return resultado
        logger.warning(f"Celda de {n} puntos sin conjetura válida con q <= {q_limit}")
        return None

    @staticmethod
    def guess_from_partition(cell_points: PointSet, partition: CliquePartition) -> CellGuess:
        """
        Construir la conjetura de una partición: se descruza, se toma el menor
        índice de cada parte como representante y, para cada arista de
        proximidad, la recta separadora de las envolventes orientada con la
        parte i a la izquierda.

        Raises:
            PolygonsNotDisjointError: Si dos envolventes vecinas se tocan
        """
        descruzada = UncrossService.uncross_partition(partition, cell_points)
        partes = sorted(descruzada.parts, key=lambda parte: min(parte))
        reps = [min(parte) for parte in partes]
        aristas = CellGuess.proximity_edges_for(cell_points, reps)
        coords = _coords(cell_points)
        envolventes = [convex_hull([cell_points[i] for i in parte]) for parte in partes]

        separadores = []
        for i, j in aristas:
            a, b = separating_line(envolventes[i], envolventes[j])
            lados_i = [line_side(a, b, v) for v in envolventes[i].vertices]
            if min(lados_i) < -ORIENTATION_TOLERANCE:
                a, b = b, a
            separadores.append((a.id, b.id))
        guess = CellGuess(q=len(reps), representatives=reps, proximity_edges=aristas, separators=separadores)
        if guess.max_degree() > PROXIMITY_MAX_DEGREE:
            raise MCPError(f"Grado de proximidad {guess.max_degree()} excede la cota {PROXIMITY_MAX_DEGREE}")
        return guess

    @staticmethod
    def clique_cut_probability(ps: PointSet, clique: Sequence[int], k: int,
                               trials: Optional[int] = None, seed: int = 0) -> Dict[str, float]:
        """
        Frecuencia con que una malla k x k desplazada al azar corta un clique.

        Returns:
            Frecuencias de corte vertical, horizontal, alguno y ambos, con el
            error estándar de "alguno" y la cota analítica 2/k

        Raises:
            NotACliqueError: Si los índices no forman un clique
        """
        puntos = [ps[i] for i in clique]
        ValidationRules.validar_clique_geometrico(puntos)
        ValidationRules.validar_entero_minimo("k", k, 1)
        trials = trials if trials is not None else settings.mc_trials
        ValidationRules.validar_entero_minimo("trials", trials, 1)

        xs = np.asarray([p.x for p in puntos], dtype=float)
        ys = np.asarray([p.y for p in puntos], dtype=float)
        rng = make_rng(seed)
        sx = rng.uniform(0.0, k, size=trials)
        sy = rng.uniform(0.0, k, size=trials)
        if len(puntos):
            cx = np.floor((xs[None, :] - sx[:, None]) / k)
            cy = np.floor((ys[None, :] - sy[:, None]) / k)
            vertical = cx.max(axis=1) != cx.min(axis=1)
            horizontal = cy.max(axis=1) != cy.min(axis=1)
        else:
            vertical = horizontal = np.zeros(trials, dtype=bool)
        alguno = vertical | horizontal
        ambos = vertical & horizontal
        p_alguno = float(alguno.mean())
        return {
            "vertical": float(vertical.mean()),
            "horizontal": float(horizontal.mean()),
            "any": p_alguno,
            "both": float(ambos.mean()),
            "stderr": math.sqrt(p_alguno * (1.0 - p_alguno) / trials),
            "bound": 2.0 / k,
            "trials": trials,
        }


def cell_qmax(k: int) -> int:
    return GridPTASService.cell_qmax(k)
