import math
from typing import Iterable, List, Sequence, Tuple

from pydantic import BaseModel, validator


class Point(BaseModel):
    """Punto del plano; `id` es su índice dentro del PointSet (-1 para puntos sintéticos)."""

    x: float
    y: float
    id: int = -1

    @validator("x", "y")
    def validar_coordenada(cls, v):
        """Validar que la coordenada sea finita."""
        if not math.isfinite(v):
            raise ValueError("Las coordenadas deben ser finitas")
        return v

    def xy(self) -> Tuple[float, float]:
        return (self.x, self.y)

    def dist2(self, other: "Point") -> float:
        """Distancia al cuadrado a otro punto."""
        dx = self.x - other.x
        dy = self.y - other.y
        return dx * dx + dy * dy

    class Config:
        allow_mutation = False
        json_schema_extra = {"example": {"x": 0.25, "y": 1.5, "id": 0}}


class PointSet(BaseModel):
    """Conjunto indexado de puntos que define la instancia del grafo de disco unitario."""

    points: List[Point]

    @validator("points")
    def validar_indices(cls, v):
        """Validar que los índices sean exactamente 0..n-1 en orden."""
        for i, p in enumerate(v):
            if p.id != i:
                raise ValueError(f"Los índices deben ser densos 0..n-1 (posición {i} tiene id {p.id})")
        return v

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence[float]]) -> "PointSet":
        """
        Construir un PointSet a partir de pares (x, y).

        Args:
            coords: Iterable de pares de coordenadas

        Returns:
            PointSet con índices según el orden de entrada
        """
        return cls(points=[Point(x=float(c[0]), y=float(c[1]), id=i) for i, c in enumerate(coords)])

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def coords(self) -> List[Tuple[float, float]]:
        return [(p.x, p.y) for p in self.points]

    def subset(self, indices: Sequence[int]) -> "PointSet":
        """
        Extraer un sub-conjunto reindexado 0..m-1.

        Args:
            indices: Índices globales a extraer, en el orden deseado

        Returns:
            PointSet local; la posición i corresponde a indices[i]
        """
        return PointSet.from_coords((self.points[i].x, self.points[i].y) for i in indices)

    class Config:
        allow_mutation = False
