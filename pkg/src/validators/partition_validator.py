from typing import Any, Dict, Iterable, List

from loguru import logger

from ..config.constants import TipoViolacion
from ..models import CliquePartitionBase, UnitDiskGraph


class PartitionValidator:
    """Validador de cliques y particiones en cliques."""

    @staticmethod
    def is_clique(g: UnitDiskGraph, part: Iterable[int]) -> bool:
        """
        Verificar que todos los pares de la parte sean adyacentes.

        Args:
            g: Grafo de disco unitario
            part: Índices de vértices

        Returns:
            True si la parte es un clique (los singletons lo son)

        Raises:
            IndexError: Si algún índice está fuera de rango
        """
        indices = list(part)
        mascara = 0
        for i in indices:
            if not 0 <= i < g.n:
                raise IndexError(f"Índice fuera de rango: {i} (n={g.n})")
            mascara |= 1 << i
        filas = g.rows
        for i in indices:
            if (mascara & ~(1 << i)) & ~filas[i]:
                return False
        return True

    @staticmethod
    def first_non_adjacent_pair(g: UnitDiskGraph, part: List[int]):
        """Primer par no adyacente de la parte, o None."""
        for a in range(len(part)):
            for b in range(a + 1, len(part)):
                if not g.adjacent(part[a], part[b]):
                    return (part[a], part[b])
        return None

    @staticmethod
    def validate_partition(g: UnitDiskGraph, cp: CliquePartitionBase) -> List[Dict[str, Any]]:
        """
        Validar una partición en cliques.

        Args:
            g: Grafo de disco unitario
            cp: Partición candidata (se aceptan entradas no confiables)

        Returns:
            Lista de violaciones; vacía si y solo si la partición es válida
        """
        violaciones: List[Dict[str, Any]] = []
        vistos: Dict[int, int] = {}

        for idx, parte in enumerate(cp.parts):
            if not parte:
                violaciones.append({
                    "tipo": TipoViolacion.PARTE_VACIA.value,
                    "parte": idx,
                    "mensaje": f"La parte {idx} está vacía"
                })
                continue

            fuera = [i for i in parte if not 0 <= i < g.n]
            for i in fuera:
                violaciones.append({
                    "tipo": TipoViolacion.INDICE_INVALIDO.value,
                    "parte": idx,
                    "valor": i,
                    "mensaje": f"El índice {i} de la parte {idx} está fuera de rango (n={g.n})"
                })

            for i in parte:
                if i in fuera:
                    continue
                if i in vistos:
                    violaciones.append({
                        "tipo": TipoViolacion.VERTICE_DUPLICADO.value,
                        "parte": idx,
                        "valor": i,
                        "mensaje": f"El vértice {i} aparece en las partes {vistos[i]} y {idx}"
                    })
                else:
                    vistos[i] = idx

            validos = [i for i in dict.fromkeys(parte) if i not in fuera]
            par = PartitionValidator.first_non_adjacent_pair(g, validos)
            if par is not None:
                violaciones.append({
                    "tipo": TipoViolacion.PARTE_NO_CLIQUE.value,
                    "parte": idx,
                    "valor": list(par),
                    "mensaje": f"La parte {idx} no es un clique: {par[0]} y {par[1]} no son adyacentes"
                })

        for i in range(g.n):
            if i not in vistos:
                violaciones.append({
                    "tipo": TipoViolacion.VERTICE_NO_CUBIERTO.value,
                    "valor": i,
                    "mensaje": f"El vértice {i} no está cubierto por ninguna parte"
                })

        if violaciones:
            logger.warning(f"Partición inválida: {len(violaciones)} violaciones")
        return violaciones

    @staticmethod
    def obtener_resumen(violaciones: List[Dict[str, Any]]) -> Dict[str, int]:
        """Contar violaciones por tipo."""
        resumen: Dict[str, int] = {}
        for v in violaciones:
            resumen[v["tipo"]] = resumen.get(v["tipo"], 0) + 1
        return resumen


def is_clique(g: UnitDiskGraph, part: Iterable[int]) -> bool:
    return PartitionValidator.is_clique(g, part)


def validate_partition(g: UnitDiskGraph, cp: CliquePartitionBase) -> List[Dict[str, Any]]:
    return PartitionValidator.validate_partition(g, cp)
