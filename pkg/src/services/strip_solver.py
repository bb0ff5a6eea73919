from typing import List, Optional

import numpy as np
from loguru import logger

from ..config.constants import SQRT3_2, STRIP_TOLERANCE
from ..config.settings import settings
from ..exceptions import NonCliqueClassError, StripWidthError
from ..models import CliquePartition, PointSet, StripInstance
from ..utils.random_utils import make_rng


def _sorted_order(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Orden por x, desempate por y y luego por índice."""
    return np.lexsort((np.arange(len(xs)), ys, xs))


def _precedence(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """
    Matriz booleana de la relación i < j en el orden ordenado con d^2 > 1,
    indexada por posición en el orden.
    """
    dx = xs[:, None] - xs[None, :]
    dy = ys[:, None] - ys[None, :]
    lejos = dx * dx + dy * dy > 1.0
    return np.triu(lejos, k=1)


def chain_labels(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """
    Etiquetas de cadena más larga L(j) = 1 + max{L(i) : i precede a j}.

    Args:
        xs: Abscisas
        ys: Ordenadas

    Returns:
        Etiqueta de cada punto en el orden original (1 si no tiene predecesores)
    """
    n = len(xs)
    etiquetas = np.zeros(n, dtype=np.int64)
    if n == 0:
        return etiquetas
    orden = _sorted_order(xs, ys)
    sx, sy = xs[orden], ys[orden]
    en_orden = np.zeros(n, dtype=np.int64)
    for j in range(n):
        dx = sx[:j] - sx[j]
        dy = sy[:j] - sy[j]
        previos = en_orden[:j][dx * dx + dy * dy > 1.0]
        en_orden[j] = 1 + (previos.max() if previos.size else 0)
    etiquetas[orden] = en_orden
    return etiquetas


def _first_non_clique_class(xs: np.ndarray, ys: np.ndarray, etiquetas: np.ndarray) -> Optional[int]:
    for etiqueta in np.unique(etiquetas):
        miembros = np.flatnonzero(etiquetas == etiqueta)
        dx = xs[miembros][:, None] - xs[miembros][None, :]
        dy = ys[miembros][:, None] - ys[miembros][None, :]
        if np.any(dx * dx + dy * dy > 1.0):
            return int(etiqueta)
    return None


class StripSolver:
    """Solver exacto para franjas de ancho <= sqrt(3)/2 (coloreo del complemento de comparabilidad)."""

    @staticmethod
    def solve_strip(inst: StripInstance, strict: bool = True) -> CliquePartition:
        """
        Partición mínima en cliques de los puntos de una franja.

        Args:
            inst: Instancia de franja
            strict: Si es verdadero rechaza anchos mayores que sqrt(3)/2; si es
                falso ejecuta igualmente y valida cada clase de etiqueta

        Returns:
            Partición con una parte por clase de etiqueta (índices locales de la franja)

        Raises:
            StripWidthError: Ancho mayor que sqrt(3)/2 en modo estricto
            NonCliqueClassError: Alguna clase de etiqueta no es un clique
        """
        if strict and inst.width > SQRT3_2 + STRIP_TOLERANCE:
            raise StripWidthError(f"El ancho {inst.width} excede sqrt(3)/2")
        if len(inst.points) == 0:
            return CliquePartition(parts=[])

        coords = np.asarray(inst.points.coords(), dtype=float)
        xs, ys = coords[:, 0], coords[:, 1]
        etiquetas = chain_labels(xs, ys)

        mala = _first_non_clique_class(xs, ys, etiquetas)
        if mala is not None:
            logger.error(f"Clase de etiqueta {mala} no es un clique (ancho {inst.width})")
            raise NonCliqueClassError(
                f"La clase de etiqueta {mala} no es un clique; la franja de ancho {inst.width} "
                f"no cumple la precondición de transitividad"
            )
        return CliquePartition.from_labels(etiquetas.tolist())

    @staticmethod
    def check_transitive(inst: StripInstance) -> bool:
        """Verdadero si la relación de precedencia (orden en x con d^2 > 1) es transitiva."""
        n = len(inst.points)
        if n < 3:
            return True
        coords = np.asarray(inst.points.coords(), dtype=float)
        orden = _sorted_order(coords[:, 0], coords[:, 1])
        relacion = _precedence(coords[orden, 0], coords[orden, 1])
        r = relacion.astype(np.int64)
        compuesta = (r @ r) > 0
        return not bool(np.any(compuesta & ~relacion))

    @staticmethod
    def find_intransitive_instance(width: float, n: int = 6, trials: Optional[int] = None,
                                   seed: int = 0, length: float = 1.5) -> Optional[StripInstance]:
        """
        Búsqueda aleatoria de una instancia cuya precedencia no es transitiva.

        Args:
            width: Ancho de la franja (por encima de sqrt(3)/2 para encontrar algo)
            n: Puntos por intento
            trials: Intentos (por defecto settings.mc_trials)
            seed: Semilla
            length: Largo de la franja

        Returns:
            La primera instancia intransitiva encontrada, o None
        """
        trials = trials if trials is not None else settings.mc_trials
        rng = make_rng(seed)
        for intento in range(trials):
            xs = rng.uniform(0.0, length, size=n)
            ys = rng.uniform(0.0, width, size=n)
            inst = StripInstance(points=PointSet.from_coords(zip(xs.tolist(), ys.tolist())), width=width)
            if not StripSolver.check_transitive(inst):
                logger.info(f"Instancia intransitiva encontrada en el intento {intento} (ancho {width})")
                return inst
        logger.info(f"Sin instancias intransitivas en {trials} intentos (ancho {width})")
        return None


def solve_strip(inst: StripInstance, strict: bool = True) -> CliquePartition:
    return StripSolver.solve_strip(inst, strict)


def check_transitive(inst: StripInstance) -> bool:
    return StripSolver.check_transitive(inst)


def solve_labels(xs: List[float], ys: List[float]) -> np.ndarray:
    """Etiquetas de cadena para coordenadas sueltas (sin construir modelos)."""
    return chain_labels(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float))
