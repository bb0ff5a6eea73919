from itertools import combinations
from typing import List, Optional, Tuple

from pydantic import BaseModel, root_validator

from ..config.constants import TipoMovimiento
from .partition import CliquePartition


class IncompatibilityGraph(BaseModel):
    """
    Grafo bipartito de incompatibilidad entre los pétalos de dos cliques.

    Los vértices azules b_i (pétalos X_i de P) y rojos r_j (pétalos Y_j de Q)
    se ubican alternados sobre un círculo en sentido horario: b_i ocupa la
    posición 2i y r_j la posición 2j + 1. La arista (i, j) existe si hay
    testigos x en X_i e y en Y_j a distancia mayor que 1.
    """

    k: int
    edges: List[Tuple[int, int]]
    blue_members: List[List[int]]
    red_members: List[List[int]]

    @root_validator(skip_on_failure=True)
    def validar_bipartito(cls, values):
        """Validar rangos de índices y número de pétalos."""
        k = values["k"]
        if k < 1:
            raise ValueError("Se requiere al menos un pétalo por polígono")
        if len(values["blue_members"]) != k or len(values["red_members"]) != k:
            raise ValueError(f"Se esperaban {k} pétalos de cada color")
        for i, j in values["edges"]:
            if not (0 <= i < k and 0 <= j < k):
                raise ValueError(f"Arista fuera de rango: ({i}, {j})")
        values["edges"] = sorted(set(values["edges"]))
        return values

    @property
    def blue(self) -> List[int]:
        return list(range(self.k))

    @property
    def red(self) -> List[int]:
        return list(range(self.k))

    def blue_degree(self, i: int) -> int:
        return sum(1 for a, _ in self.edges if a == i)

    def red_degree(self, j: int) -> int:
        return sum(1 for _, b in self.edges if b == j)

    def isolated_vertices(self) -> List[Tuple[str, int]]:
        """Vértices aislados como ("blue", i) o ("red", j), azules primero."""
        azules = [("blue", i) for i in self.blue if self.blue_degree(i) == 0]
        rojos = [("red", j) for j in self.red if self.red_degree(j) == 0]
        return azules + rojos

    @staticmethod
    def _posiciones(arista: Tuple[int, int]) -> Tuple[int, int]:
        return (2 * arista[0], 2 * arista[1] + 1)

    def _cruzan(self, e: Tuple[int, int], f: Tuple[int, int]) -> bool:
        a, b = sorted(self._posiciones(e))
        c, d = self._posiciones(f)
        return (a < c < b) != (a < d < b)

    def is_antiparallel(self, e: Tuple[int, int], f: Tuple[int, int]) -> bool:
        """
        Dos aristas disjuntas (sin extremos comunes ni cruce) son antiparalelas
        si sus cuatro extremos alternan de color alrededor del círculo.
        """
        if e[0] == f[0] or e[1] == f[1] or self._cruzan(e, f):
            return False
        extremos = sorted(self._posiciones(e) + self._posiciones(f))
        colores = [pos % 2 for pos in extremos]
        return all(colores[m] != colores[m + 1] for m in range(3))

    def has_antiparallel_pair(self) -> bool:
        return any(self.is_antiparallel(e, f) for e, f in combinations(self.edges, 2))

    def is_perfect_crossing_matching(self) -> bool:
        """
        Verdadero si las aristas forman el emparejamiento perfecto
        M = {b_i r_(i + floor(k/2))} con k impar (todas se cruzan entre sí).
        """
        if self.k % 2 == 0:
            return False
        esperado = sorted((i, (i + self.k // 2) % self.k) for i in range(self.k))
        return self.edges == esperado

    class Config:
        allow_mutation = False


class UncrossMove(BaseModel):
    """Movimiento aplicado a un par de partes durante el descruce."""

    kind: TipoMovimiento
    parts: Tuple[int, int]
    psi_before: float
    psi_after: float
    detail: Optional[str] = None

    class Config:
        allow_mutation = False


class UncrossReport(BaseModel):
    """Resultado del descruce con la traza del potencial."""

    partition: CliquePartition
    psi_trace: List[float]
    moves: List[UncrossMove]

    @property
    def iterations(self) -> int:
        return len(self.moves)

    class Config:
        allow_mutation = False
