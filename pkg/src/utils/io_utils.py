import json
import math
from pathlib import Path
from typing import Iterable, List, Tuple, Union

from loguru import logger
from pydantic import ValidationError

from ..config.constants import COMENTARIO_PUNTOS, DIGITOS_SIGNIFICATIVOS
from ..config.settings import settings
from ..exceptions import PartitionFileError, PointFileError
from ..models import CliquePartitionBase, PointSet, RunResult

Ruta = Union[str, Path]


def format_coord(valor: float) -> str:
    """Decimal con 17 cifras significativas (ida y vuelta exacta de un double)."""
    return f"{valor:.{DIGITOS_SIGNIFICATIVOS}g}"


def parse_points(lineas: Iterable[str]) -> PointSet:
    """
    Interpretar líneas de texto con un punto por línea.

    Args:
        lineas: Líneas del archivo; '#' inicia un comentario

    Returns:
        PointSet con índices según el orden de las líneas de datos

    Raises:
        PointFileError: Si una línea no tiene exactamente dos números finitos
    """
    coords: List[Tuple[float, float]] = []
    for numero, linea in enumerate(lineas, start=1):
        datos = linea.split(COMENTARIO_PUNTOS, 1)[0].strip()
        if not datos:
            continue
        campos = datos.split()
        if len(campos) != 2:
            raise PointFileError(f"se esperaban 2 coordenadas y se encontraron {len(campos)}: '{datos}'", numero)
        try:
            x, y = float(campos[0]), float(campos[1])
        except ValueError:
            raise PointFileError(f"coordenada no numérica: '{datos}'", numero)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise PointFileError(f"coordenada no finita: '{datos}'", numero)
        coords.append((x, y))
    return PointSet.from_coords(coords)


def read_points(path: Ruta) -> PointSet:
    """
    Leer un archivo de puntos (UTF-8, dos decimales por línea).

    Args:
        path: Ruta del archivo

    Returns:
        PointSet leído

    Raises:
        PointFileError: Si el archivo no existe o una línea está mal formada
    """
    ruta = Path(path)
    if not ruta.exists():
        raise PointFileError(f"el archivo {ruta} no existe", 0)
    with open(ruta, "r", encoding="utf-8") as f:
        ps = parse_points(f)
    logger.info(f"Puntos leídos de {ruta}: {len(ps)}")
    return ps


def write_points(ps: PointSet, path: Ruta, header: str = None) -> None:
    """
    Escribir un PointSet con 17 cifras significativas por coordenada.

    Args:
        ps: Conjunto de puntos
        path: Ruta de salida (se crean los directorios faltantes)
        header: Comentario opcional para la primera línea
    """
    ruta = Path(path)
    ruta.parent.mkdir(parents=True, exist_ok=True)
    with open(ruta, "w", encoding="utf-8") as f:
        if header:
            f.write(f"{COMENTARIO_PUNTOS} {header}\n")
        for p in ps.points:
            f.write(f"{format_coord(p.x)} {format_coord(p.y)}\n")
    logger.info(f"Puntos escritos en {ruta}: {len(ps)}")


def resolve_output(path: Ruta) -> Path:
    """
    Ruta de salida efectiva.

    Un nombre de archivo sin directorio se ubica en settings.output_dir; las
    rutas absolutas o con directorio se respetan.
    """
    ruta = Path(path)
    if ruta.is_absolute() or ruta.parent != Path("."):
        return ruta
    return Path(settings.output_dir) / ruta


def result_to_json(result: RunResult) -> str:
    return json.dumps(result.to_json_dict(), indent=2, ensure_ascii=False)


def write_result(result: RunResult, path: Ruta) -> None:
    """Escribir un RunResult como objeto JSON."""
    ruta = Path(path)
    ruta.parent.mkdir(parents=True, exist_ok=True)
    with open(ruta, "w", encoding="utf-8") as f:
        f.write(result_to_json(result))
        f.write("\n")
    logger.info(f"Resultado escrito en {ruta}")


def read_partition(path: Ruta) -> CliquePartitionBase:
    """
    Leer una partición candidata en JSON.

    Acepta una lista de listas de índices o un objeto de resultado con la
    clave "cliques". No valida que las partes sean cliques.

    Raises:
        PartitionFileError: Si el archivo no existe o no tiene la forma esperada
    """
    ruta = Path(path)
    if not ruta.exists():
        raise PartitionFileError(f"El archivo {ruta} no existe")
    try:
        with open(ruta, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise PartitionFileError(f"JSON inválido en {ruta}: {e}")

    partes = data.get("cliques") if isinstance(data, dict) else data
    if not isinstance(partes, list) or not all(isinstance(parte, list) for parte in partes):
        raise PartitionFileError(f"{ruta} debe contener una lista de listas de índices o la clave 'cliques'")
    if any(isinstance(i, bool) or not isinstance(i, int) for parte in partes for i in parte):
        raise PartitionFileError(f"{ruta} contiene índices no enteros")
    try:
        return CliquePartitionBase(parts=partes)
    except ValidationError as e:
        raise PartitionFileError(f"Partición inválida en {ruta}: {e}")
