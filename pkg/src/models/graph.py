from typing import Iterable, List, Tuple

from pydantic import BaseModel, PrivateAttr, root_validator


class UnitDiskGraph(BaseModel):
    """
    Grafo de disco unitario: i, j adyacentes si y solo si su distancia al
    cuadrado es <= 1. Las filas de adyacencia se guardan también como bitsets
    (enteros de Python) para el oráculo exacto.
    """

    n: int
    neighbors: List[List[int]]

    _rows: Tuple[int, ...] = PrivateAttr(default=())

    @root_validator(skip_on_failure=True)
    def validar_adyacencia(cls, values):
        """Validar simetría, ausencia de lazos y rango de índices."""
        n = values["n"]
        neighbors = values["neighbors"]
        if len(neighbors) != n:
            raise ValueError(f"Se esperaban {n} filas de adyacencia, hay {len(neighbors)}")
        conjuntos = [set(fila) for fila in neighbors]
        for i, fila in enumerate(conjuntos):
            if i in fila:
                raise ValueError(f"El vértice {i} tiene un lazo")
            for j in fila:
                if not 0 <= j < n:
                    raise ValueError(f"Índice de vecino fuera de rango: {j}")
                if i not in conjuntos[j]:
                    raise ValueError(f"Adyacencia no simétrica entre {i} y {j}")
        values["neighbors"] = [sorted(fila) for fila in conjuntos]
        return values

    def __init__(self, **data):
        super().__init__(**data)
        self._rows = tuple(sum(1 << j for j in fila) for fila in self.neighbors)

    @property
    def rows(self) -> Tuple[int, ...]:
        """Filas de adyacencia como bitsets."""
        return self._rows

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self._rows[i] >> j & 1)

    def edges(self) -> Iterable[Tuple[int, int]]:
        for i, fila in enumerate(self.neighbors):
            for j in fila:
                if i < j:
                    yield (i, j)

    def edge_count(self) -> int:
        return sum(len(fila) for fila in self.neighbors) // 2

    def induced(self, indices: List[int]) -> "UnitDiskGraph":
        """
        Subgrafo inducido, reindexado según el orden de `indices`.

        Args:
            indices: Vértices del subgrafo

        Returns:
            Subgrafo con vértices 0..m-1
        """
        posicion = {v: i for i, v in enumerate(indices)}
        filas = [[posicion[j] for j in self.neighbors[v] if j in posicion] for v in indices]
        return UnitDiskGraph(n=len(indices), neighbors=filas)

    class Config:
        allow_mutation = False
