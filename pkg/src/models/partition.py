from typing import Dict, List, Sequence

from pydantic import BaseModel, validator


class CliquePartitionBase(BaseModel):
    """Partición candidata sin validaciones estrictas (entradas no confiables)."""

    parts: List[List[int]]

    class Config:
        """Configuración del modelo."""
        allow_mutation = False
        json_schema_extra = {"example": {"parts": [[0, 2], [1], [3, 4, 5]]}}


class CliquePartition(CliquePartitionBase):
    """
    Partición en cliques: partes no vacías y disjuntas. Que cada parte sea un
    clique del grafo se verifica con validate_partition, que conoce el grafo.
    """

    @validator("parts")
    def validar_partes(cls, v):
        """Validar que las partes sean no vacías y disjuntas; se ordenan internamente."""
        vistos = set()
        normalizadas = []
        for idx, parte in enumerate(v):
            if not parte:
                raise ValueError(f"La parte {idx} está vacía")
            for i in parte:
                if i in vistos:
                    raise ValueError(f"El vértice {i} aparece en más de una parte")
                vistos.add(i)
            normalizadas.append(sorted(parte))
        return normalizadas

    @classmethod
    def from_labels(cls, labels: Sequence[int], ids: Sequence[int] = None) -> "CliquePartition":
        """
        Construir una partición agrupando por etiqueta.

        Args:
            labels: Etiqueta de cada posición
            ids: Índice global de cada posición (por defecto la propia posición)

        Returns:
            Partición con una parte por etiqueta, ordenadas por etiqueta
        """
        grupos: Dict[int, List[int]] = {}
        for pos, etiqueta in enumerate(labels):
            grupos.setdefault(int(etiqueta), []).append(ids[pos] if ids is not None else pos)
        return cls(parts=[grupos[e] for e in sorted(grupos)])

    @property
    def size(self) -> int:
        return len(self.parts)

    def covered(self) -> List[int]:
        return sorted(i for parte in self.parts for i in parte)

    def canonical(self) -> List[List[int]]:
        """Partes ordenadas por su menor elemento (para comparar particiones)."""
        return sorted(self.parts, key=lambda parte: parte[0])
