import math
from typing import Sequence

from loguru import logger

from ..exceptions import InstanceTooLargeError, NotACliqueError, ParameterRangeError
from ..models import Point


class ValidationRules:
    """Reglas de precondición compartidas por los solvers."""

    @staticmethod
    def get_oracle_max_n() -> int:
        """Obtener la capacidad del oráculo exacto."""
        from ..config.settings import settings
        return settings.oracle_max_n

    @staticmethod
    def get_enum_limits() -> tuple:
        """Obtener (puntos máximos, q máximo) del solver enumerativo por celda."""
        from ..config.settings import settings
        return settings.enum_max_points, settings.enum_q_limit

    @staticmethod
    def validar_probabilidad(nombre: str, valor: float) -> float:
        """
        Validar que un parámetro esté en el intervalo abierto (0, 1).

        Raises:
            ParameterRangeError: Si el valor está fuera de rango o no es finito
        """
        if not (math.isfinite(valor) and 0.0 < valor < 1.0):
            raise ParameterRangeError(f"{nombre} debe estar en (0, 1): {valor}")
        return valor

    @staticmethod
    def validar_entero_minimo(nombre: str, valor: int, minimo: int) -> int:
        if valor < minimo:
            raise ParameterRangeError(f"{nombre} debe ser >= {minimo}: {valor}")
        return valor

    @staticmethod
    def validar_capacidad(n: int, limite: int, contexto: str) -> None:
        """
        Rechazar instancias por encima de la capacidad de un solver.

        Raises:
            InstanceTooLargeError: Si n excede el límite
        """
        if n > limite:
            logger.warning(f"{contexto}: {n} puntos exceden la capacidad {limite}")
            raise InstanceTooLargeError(f"{contexto}: la instancia tiene {n} puntos y el límite es {limite}")

    @staticmethod
    def validar_clique_geometrico(points: Sequence[Point]) -> None:
        """
        Verificar que todos los pares de puntos estén a distancia <= 1.

        Raises:
            NotACliqueError: Con el primer par no adyacente
        """
        for a in range(len(points)):
            for b in range(a + 1, len(points)):
                if points[a].dist2(points[b]) > 1.0:
                    raise NotACliqueError(
                        f"Los puntos {points[a].id} y {points[b].id} están a distancia mayor que 1"
                    )
