from typing import List, Tuple

from pydantic import BaseModel, root_validator, validator

from .point import Point


class ConvexPolygon(BaseModel):
    """
    Polígono convexo en sentido antihorario, sin vértices repetidos ni tres
    consecutivos colineales. Puede degenerar en segmento (2 vértices) o punto (1).
    """

    vertices: List[Point]

    @validator("vertices")
    def validar_vertices(cls, v):
        """Validar que no haya vértices duplicados."""
        if not v:
            raise ValueError("El polígono debe tener al menos un vértice")
        vistos = set()
        for p in v:
            clave = (p.x, p.y)
            if clave in vistos:
                raise ValueError(f"Vértice duplicado en el polígono: {clave}")
            vistos.add(clave)
        return v

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def is_degenerate(self) -> bool:
        """Verdadero para segmentos y puntos (área cero)."""
        return len(self.vertices) < 3

    def coords(self) -> List[Tuple[float, float]]:
        return [(p.x, p.y) for p in self.vertices]

    def vertex_ids(self) -> List[int]:
        return [p.id for p in self.vertices]

    def bounds(self) -> Tuple[float, float, float, float]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))

    class Config:
        allow_mutation = False


class PetalDecomposition(BaseModel):
    """
    Pétalos de dos polígonos convexos que se traslapan transversalmente.

    Cada pétalo se guarda como su envolvente convexa: los dos cruces que lo
    delimitan más los vértices del arco exterior. Un punto del polígono propio
    que está fuera del otro polígono pertenece al pétalo X_i si y solo si está
    dentro de petals_p[i].

    El orden cíclico en sentido horario es X_0, Y_0, X_1, Y_1, ...; X_i va del
    cruce 2i al 2i+1 y Y_i del cruce 2i+1 al 2i+2 (módulo 2k).
    """

    petals_p: List[ConvexPolygon]
    petals_q: List[ConvexPolygon]
    crossings: List[Point]
    intersection: ConvexPolygon

    @root_validator(skip_on_failure=True)
    def validar_conteos(cls, values):
        """Validar |petals_p| = |petals_q| = k >= 1 y 2k cruces."""
        k = len(values["petals_p"])
        if k < 1 or len(values["petals_q"]) != k:
            raise ValueError("Ambos polígonos deben tener el mismo número k >= 1 de pétalos")
        if len(values["crossings"]) != 2 * k:
            raise ValueError(f"Se esperaban {2 * k} cruces, hay {len(values['crossings'])}")
        return values

    @property
    def k(self) -> int:
        return len(self.petals_p)

    class Config:
        allow_mutation = False
