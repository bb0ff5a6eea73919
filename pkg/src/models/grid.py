import math
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, root_validator, validator

from ..config.constants import PROXIMITY_EDGES_PER_PART, PROXIMITY_MAX_DEGREE, PROXIMITY_RADIUS_SQ
from .point import PointSet


class GridSystem(BaseModel):
    """Malla de celdas k x k desplazada; las celdas son semiabiertas en ambos ejes."""

    k: int
    shift_x: float = 0.0
    shift_y: float = 0.0

    @validator("k")
    def validar_k(cls, v):
        if v < 1:
            raise ValueError("El lado de celda k debe ser >= 1")
        return v

    @root_validator(skip_on_failure=True)
    def validar_desplazamiento(cls, values):
        """Validar que el desplazamiento esté en [0, k)^2."""
        k = values["k"]
        for eje in ("shift_x", "shift_y"):
            if not 0.0 <= values[eje] < k:
                raise ValueError(f"{eje}={values[eje]} debe estar en [0, {k})")
        return values

    def cell_of(self, x: float, y: float) -> Tuple[int, int]:
        return (math.floor((x - self.shift_x) / self.k), math.floor((y - self.shift_y) / self.k))

    def cells(self, ps: PointSet) -> Dict[Tuple[int, int], List[int]]:
        """
        Agrupar los puntos por celda.

        Returns:
            Diccionario celda -> índices de puntos, en orden de celda
        """
        if len(ps) == 0:
            return {}
        coords = np.asarray(ps.coords(), dtype=float)
        cx = np.floor((coords[:, 0] - self.shift_x) / self.k).astype(np.int64)
        cy = np.floor((coords[:, 1] - self.shift_y) / self.k).astype(np.int64)
        grupos: Dict[Tuple[int, int], List[int]] = {}
        for i in range(len(ps)):
            grupos.setdefault((int(cx[i]), int(cy[i])), []).append(i)
        return dict(sorted(grupos.items()))

    class Config:
        allow_mutation = False


class CellGuess(BaseModel):
    """
    Conjetura por celda: q representantes, aristas del grafo de proximidad
    (|r_i r_j| <= 2) y una recta separadora orientada por cada arista.

    Los índices son locales a la celda. El separador (a, b) de la arista (i, j)
    con i < j deja la parte i a la izquierda (débilmente) de la recta dirigida
    a -> b y la parte j a la derecha.
    """

    q: int
    representatives: List[int]
    proximity_edges: List[Tuple[int, int]] = []
    separators: List[Tuple[int, int]] = []

    @root_validator(skip_on_failure=True)
    def validar_estructura(cls, values):
        """Validar conteos y orientación de aristas."""
        q = values["q"]
        reps = values["representatives"]
        if q < 1 or len(reps) != q:
            raise ValueError(f"Se esperaban {q} representantes, hay {len(reps)}")
        if len(set(reps)) != q:
            raise ValueError("Los representantes deben ser distintos")
        aristas = values["proximity_edges"]
        for i, j in aristas:
            if not 0 <= i < j < q:
                raise ValueError(f"Arista de proximidad inválida: ({i}, {j})")
        if len(values["separators"]) != len(aristas):
            raise ValueError("Debe haber exactamente un separador por arista de proximidad")
        for a, b in values["separators"]:
            if a == b:
                raise ValueError("Un separador requiere dos puntos distintos")
        return values

    @staticmethod
    def proximity_edges_for(points: PointSet, representatives: List[int]) -> List[Tuple[int, int]]:
        """Aristas (i, j), i < j, con distancia al cuadrado entre representantes <= 4."""
        aristas = []
        for i in range(len(representatives)):
            for j in range(i + 1, len(representatives)):
                if points[representatives[i]].dist2(points[representatives[j]]) <= PROXIMITY_RADIUS_SQ:
                    aristas.append((i, j))
        return aristas

    def degrees(self) -> List[int]:
        grados = [0] * self.q
        for i, j in self.proximity_edges:
            grados[i] += 1
            grados[j] += 1
        return grados

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edge_count(self) -> int:
        return len(self.proximity_edges)

    def within_proximity_bounds(self) -> bool:
        """Grado máximo <= 79 y a lo sumo 39.5 q aristas."""
        return (self.max_degree() <= PROXIMITY_MAX_DEGREE
                and self.edge_count() <= PROXIMITY_EDGES_PER_PART * self.q)

    class Config:
        allow_mutation = False
