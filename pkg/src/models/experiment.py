from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, root_validator, validator

from ..config.constants import Algoritmo, CellSolver, Distribucion, VarianteAncho
from .partition import CliquePartition


class InstanceSpec(BaseModel):
    """Especificación del generador de instancias."""

    n: int
    width: float = 10.0
    height: float = 10.0
    seed: int = 0
    distribution: Distribucion = Distribucion.UNIFORM

    @validator("n")
    def validar_n(cls, v):
        if v < 0:
            raise ValueError("El número de puntos no puede ser negativo")
        return v

    @validator("width", "height")
    def validar_caja(cls, v):
        if not v > 0:
            raise ValueError("Las dimensiones de la caja deben ser positivas")
        return v

    class Config:
        allow_mutation = False
        json_schema_extra = {
            "example": {"n": 12, "width": 3.0, "height": 3.0, "seed": 7, "distribution": "uniform"}
        }


class ExperimentConfig(BaseModel):
    """Configuración de una corrida: algoritmo, origen de la instancia y parámetros."""

    algorithm: Algoritmo
    instance: Optional[InstanceSpec] = None
    input_path: Optional[str] = None
    eps: float = 0.3
    delta: float = 0.1
    seed: int = 0
    rounds: Optional[int] = None
    variant: VarianteAncho = VarianteAncho.IRRATIONAL
    k_override: Optional[int] = None
    cell_solver: CellSolver = CellSolver.ORACLE
    output_path: Optional[str] = None

    @validator("eps", "delta")
    def validar_probabilidad(cls, v, field):
        if not 0.0 < v < 1.0:
            raise ValueError(f"{field.name} debe estar en (0, 1)")
        return v

    @validator("rounds", "k_override")
    def validar_positivo(cls, v, field):
        if v is not None and v < 1:
            raise ValueError(f"{field.name} debe ser >= 1")
        return v

    @root_validator(skip_on_failure=True)
    def validar_origen(cls, values):
        """Exactamente un origen de instancia: archivo o generador."""
        if (values.get("instance") is None) == (values.get("input_path") is None):
            raise ValueError("Indique un archivo de puntos o una especificación de generador, no ambos")
        return values

    class Config:
        allow_mutation = False


class SolveReport(BaseModel):
    """Detalle de una ejecución de un solver aleatorizado (franjas o malla)."""

    partition: CliquePartition
    rounds: int
    counts: List[int]
    best_round: int
    width: Optional[Union[Dict[str, Any], str]] = None
    idealized: bool = False
    k: Optional[int] = None

    class Config:
        allow_mutation = False


class RunResult(BaseModel):
    """Resultado serializable de una corrida."""

    algorithm: Algoritmo
    n: int
    num_cliques: int
    cliques: List[List[int]]
    optimal: Optional[int] = None
    ratio: Optional[float] = None
    seed: Optional[int] = None
    rounds: Optional[int] = None
    width: Optional[Union[Dict[str, Any], str]] = None
    elapsed_ms: float = 0.0

    @root_validator(skip_on_failure=True)
    def validar_conteo(cls, values):
        if values["num_cliques"] != len(values["cliques"]):
            raise ValueError("num_cliques no coincide con el número de cliques")
        return values

    def to_json_dict(self) -> Dict[str, Any]:
        """Diccionario con las claves del formato de resultados, en orden."""
        return {
            "algorithm": self.algorithm.value,
            "n": self.n,
            "num_cliques": self.num_cliques,
            "cliques": self.cliques,
            "optimal": self.optimal,
            "ratio": self.ratio,
            "seed": self.seed,
            "rounds": self.rounds,
            "width": self.width,
            "elapsed_ms": self.elapsed_ms,
        }

    class Config:
        allow_mutation = False
