from .config.constants import ExitCode


class MCPError(ValueError):
    """Error base del sistema; `exit_code` es el código que devuelve el CLI."""

    exit_code: ExitCode = ExitCode.SOLVER


class ParameterRangeError(MCPError):
    exit_code = ExitCode.USO


class EmptyInputError(MCPError):
    exit_code = ExitCode.ENTRADA


class PointOutsideStripError(MCPError):
    exit_code = ExitCode.ENTRADA


class NotACliqueError(MCPError):
    exit_code = ExitCode.ENTRADA


class PointFileError(MCPError):
    """Error de lectura de un archivo de puntos; incluye el número de línea."""

    exit_code = ExitCode.ENTRADA

    def __init__(self, mensaje: str, linea: int):
        super().__init__(f"Línea {linea}: {mensaje}")
        self.linea = linea


class PartitionFileError(MCPError):
    exit_code = ExitCode.ENTRADA


class PolygonsNotDisjointError(MCPError):
    pass


class GeneralPositionError(MCPError):
    pass


class ContainmentError(MCPError):
    pass


class NonOverlappingError(MCPError):
    pass


class InstanceTooLargeError(MCPError):
    pass


class StripWidthError(MCPError):
    pass


class NonCliqueClassError(MCPError):
    pass


class NoIsolatedPetalError(MCPError):
    pass


class ChordNotFoundError(MCPError):
    pass


class MatchingStructureError(MCPError):
    pass


class UncrossError(MCPError):
    pass


class InvalidPartitionError(MCPError):
    """Un solver produjo una partición que no pasa validate_partition."""
