from typing import List

import numpy as np
from loguru import logger
from scipy.spatial import cKDTree

from ..models import PointSet, UnitDiskGraph

# Holgura del radio de búsqueda; la decisión final es exacta sobre d^2 <= 1
RADIO_CANDIDATOS = 1.0 + 1e-9


class GraphService:
    """Servicio para construir el grafo de disco unitario de un conjunto de puntos."""

    @staticmethod
    def build_graph(ps: PointSet) -> UnitDiskGraph:
        """
        Construir el grafo de disco unitario (modelo de proximidad).

        Los pares candidatos salen de un kd-tree; la arista se decide comparando
        la distancia al cuadrado contra 1.0 (borde inclusivo, sin holgura).

        Args:
            ps: Conjunto de puntos

        Returns:
            Grafo con arista i-j si y solo si |p_i p_j|^2 <= 1
        """
        n = len(ps)
        vecinos: List[List[int]] = [[] for _ in range(n)]
        if n < 2:
            return UnitDiskGraph(n=n, neighbors=vecinos)

        coords = np.asarray(ps.coords(), dtype=float)
        pares = cKDTree(coords).query_pairs(r=RADIO_CANDIDATOS, output_type="ndarray")
        for i, j in pares:
            dx = coords[i, 0] - coords[j, 0]
            dy = coords[i, 1] - coords[j, 1]
            if dx * dx + dy * dy <= 1.0:
                vecinos[i].append(int(j))
                vecinos[j].append(int(i))

        grafo = UnitDiskGraph(n=n, neighbors=vecinos)
        logger.debug(f"Grafo construido: {n} vértices, {grafo.edge_count()} aristas")
        return grafo


def build_graph(ps: PointSet) -> UnitDiskGraph:
    return GraphService.build_graph(ps)
