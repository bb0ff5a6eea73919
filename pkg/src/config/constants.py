import math
from enum import Enum, IntEnum


class Algoritmo(str, Enum):
    """Algoritmos disponibles en `solve`."""
    EXACT = "exact"
    STRIPS3 = "strips3"
    STRIPS_RAND = "strips-rand"
    GRID_PTAS = "grid-ptas"


class VarianteAncho(str, Enum):
    """Variante del ancho de franja."""
    IRRATIONAL = "irrational"
    RATIONAL = "rational"


class CellSolver(str, Enum):
    """Solver exacto usado en cada celda de la malla."""
    ORACLE = "oracle"
    ENUM = "enum"


class Distribucion(str, Enum):
    """Distribuciones del generador de instancias."""
    UNIFORM = "uniform"
    CLUSTERED = "clustered"
    DISK = "disk"


class TipoViolacion(str, Enum):
    """Tipos de violación reportados por validate_partition."""
    PARTE_VACIA = "parte_vacia"
    INDICE_INVALIDO = "indice_invalido"
    VERTICE_DUPLICADO = "vertice_duplicado"
    VERTICE_NO_CUBIERTO = "vertice_no_cubierto"
    PARTE_NO_CLIQUE = "parte_no_clique"


class TipoMovimiento(str, Enum):
    """Movimientos locales aplicados durante el descruce."""
    PETALO_AISLADO = "petalo_aislado"
    CORTE_CUERDA = "corte_cuerda"
    BUSQUEDA_EXHAUSTIVA = "busqueda_exhaustiva"


class ExitCode(IntEnum):
    """Códigos de salida del CLI."""
    OK = 0
    USO = 1
    ENTRADA = 2
    SOLVER = 3


# Constantes geométricas
SQRT3_2 = math.sqrt(3.0) / 2.0
XI = 1.0 + 1.0 / SQRT3_2
AREA_TOLERANCE = 1e-12
ORIENTATION_TOLERANCE = 1e-12
STRIP_TOLERANCE = 1e-9

# Descruce
PSI_DESCENT_TOLERANCE = 1e-12

# PTAS
PTAS_K_FACTOR = 16
PROXIMITY_RADIUS_SQ = 4.0
PROXIMITY_MAX_DEGREE = 79
PROXIMITY_EDGES_PER_PART = 39.5

# Número de rondas (desigualdad ln(1+x) >= 0.9x para x <= 0.1)
ROUND_COEF_IRRATIONAL = 0.3
ROUND_COEF_RATIONAL = 0.225
EPS_WINDOW_IRRATIONAL = 0.3
EPS_WINDOW_RATIONAL = 0.4

# Fracción continua de xi = [2; 6, 2, 6, ...]
XI_PARTIAL_QUOTIENTS = (2, 6)
XI_ODD_RECURRENCE = ((13, 2), (6, 1))

# Generador de instancias
CLUSTER_SIGMA = 0.3
POINTS_PER_CLUSTER = 5

# Formato de archivos
COMENTARIO_PUNTOS = "#"
DIGITOS_SIGNIFICATIVOS = 17
ANCHO_IRRACIONAL_ETIQUETA = "sqrt3/2"
