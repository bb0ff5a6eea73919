import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from loguru import logger

from ..config.constants import SQRT3_2, VarianteAncho
from ..config.settings import settings
from ..exceptions import ParameterRangeError, StripWidthError
from ..models import CliquePartition, PointSet, RationalWidth, RoundPlan, SolveReport, StripInstance, StripSystem
from ..utils.random_utils import make_rng, uniform_shift
from ..validators import ValidationRules
from .strip_solver import StripSolver, chain_labels
from .width_selection import WidthSelection


class ShiftedStripsService:
    """Franjas horizontales desplazadas al azar: solución exacta por franja y mejor de j rondas."""

    def __init__(self, threads: Optional[int] = None):
        """
        Inicializar el servicio.

        Args:
            threads: Hilos para ejecutar rondas en paralelo (por defecto settings.threads)
        """
        self.threads = max(1, threads if threads is not None else settings.threads)

    @staticmethod
    def one_round(ps: PointSet, sys: StripSystem) -> CliquePartition:
        """
        Resolver cada franja no vacía de forma exacta y unir las partes.

        Args:
            ps: Conjunto de puntos
            sys: Sistema de franjas (ancho y desplazamiento)

        Returns:
            Partición en cliques de toda la instancia (índices globales)
        """
        if len(ps) == 0:
            return CliquePartition(parts=[])
        indices = sys.strip_indices(np.asarray([p.y for p in ps.points], dtype=float))
        franjas: Dict[int, List[int]] = {}
        for i, m in enumerate(indices.tolist()):
            franjas.setdefault(m, []).append(i)

        partes: List[List[int]] = []
        for m in sorted(franjas):
            globales = franjas[m]
            inst = StripInstance(points=ps.subset(globales), width=sys.width, y_base=sys.strip_base(m))
            local = StripSolver.solve_strip(inst)
            partes.extend([globales[i] for i in parte] for parte in local.parts)
        return CliquePartition(parts=partes)

    @staticmethod
    def round_count(xs: np.ndarray, ys: np.ndarray, sys: StripSystem) -> int:
        """Número de cliques de una ronda, sin construir la partición."""
        if len(xs) == 0:
            return 0
        indices = sys.strip_indices(ys)
        total = 0
        for m in np.unique(indices):
            miembros = indices == m
            total += int(chain_labels(xs[miembros], ys[miembros]).max())
        return total

    @staticmethod
    def strip_system(variant: VarianteAncho, shift: float, rational: Optional[RationalWidth] = None) -> StripSystem:
        if VarianteAncho(variant) == VarianteAncho.RATIONAL:
            if rational is None:
                raise ParameterRangeError("La variante racional requiere un ancho racional")
            return StripSystem.with_rational(rational, shift)
        return StripSystem.irrational(shift)

    @staticmethod
    def width_metadata(rational: Optional[RationalWidth]) -> Union[Dict[str, Any], str]:
        """Ancho para el reporte: {"p", "q", "d"} si es racional, "sqrt3/2" si no."""
        if rational is None:
            return StripSystem.irrational().width_label()
        return {"p": rational.p, "q": rational.q, "d": rational.label()}

    def randomized_solve_report(self, ps: PointSet, eps: float, delta: float, seed: int = 0,
                                variant: VarianteAncho = VarianteAncho.IRRATIONAL,
                                rounds: Optional[int] = None) -> SolveReport:
        """
        Ejecutar j rondas independientes y quedarse con la de menos partes.

        Args:
            ps: Conjunto de puntos
            eps: Exceso objetivo
            delta: Probabilidad de fallo
            seed: Semilla; la ronda r usa el flujo (seed, r)
            variant: Ancho irracional sqrt(3)/2 o racional q/(p - q)
            rounds: Número de rondas explícito (omite el plan)

        Returns:
            Reporte con la mejor partición, conteos por ronda y metadatos del ancho

        Raises:
            ParameterRangeError: Si eps o delta están fuera de (0, 1)
        """
        variant = VarianteAncho(variant)
        plan = RoundPlan.build(eps, delta, variant)
        j = rounds if rounds is not None else plan.j
        ValidationRules.validar_entero_minimo("rounds", j, 1)
        racional = WidthSelection.select_width(eps) if variant == VarianteAncho.RATIONAL else None
        ancho = float(racional.d) if racional is not None else SQRT3_2

        logger.info(f"Franjas aleatorias: n={len(ps)}, eps={eps}, delta={delta}, j={j}, ancho={self.width_metadata(racional)}")

        def ronda(r: int) -> CliquePartition:
            shift = uniform_shift(make_rng(seed, r), ancho)
            return self.one_round(ps, self.strip_system(variant, shift, racional))

        if self.threads > 1 and j > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                resultados = list(pool.map(ronda, range(j)))
        else:
            resultados = [ronda(r) for r in range(j)]

        conteos = [cp.size for cp in resultados]
        mejor = conteos.index(min(conteos)) if conteos else 0
        logger.info(f"Mejor ronda {mejor}: {conteos[mejor] if conteos else 0} cliques")
        return SolveReport(
            partition=resultados[mejor] if resultados else CliquePartition(parts=[]),
            rounds=j,
            counts=conteos,
            best_round=mejor,
            width=self.width_metadata(racional),
            idealized=racional is None,
        )

    def randomized_solve(self, ps: PointSet, eps: float, delta: float, seed: int = 0,
                         variant: VarianteAncho = VarianteAncho.IRRATIONAL) -> CliquePartition:
        return self.randomized_solve_report(ps, eps, delta, seed, variant).partition

    @staticmethod
    def deterministic_3approx(ps: PointSet, width: Optional[Union[float, Fraction]] = None) -> CliquePartition:
        """
        Una sola ronda con desplazamiento 0.

        Args:
            ps: Conjunto de puntos
            width: Ancho racional opcional (p. ej. 0.8); por defecto sqrt(3)/2

        Returns:
            Partición con a lo sumo 3z partes

        Raises:
            StripWidthError: Si el ancho pedido excede sqrt(3)/2
        """
        if width is None:
            return ShiftedStripsService.one_round(ps, StripSystem.irrational(0.0))
        d = Fraction(repr(width)) if isinstance(width, float) else Fraction(width)
        if not 0 < d or float(d) > SQRT3_2:
            raise StripWidthError(f"El ancho {width} debe estar en (0, sqrt(3)/2]")
        return ShiftedStripsService.one_round(ps, StripSystem.with_rational(RationalWidth.from_fraction(d), 0.0))

    @staticmethod
    def split_count_stats(ps: PointSet, clique: Sequence[int], width: float = SQRT3_2,
                          trials: Optional[int] = None, seed: int = 0) -> Dict[str, float]:
        """
        Distribución empírica del número de franjas que corta la extensión vertical de un clique.

        Args:
            ps: Conjunto de puntos
            clique: Índices del clique
            width: Ancho de franja
            trials: Desplazamientos muestreados (por defecto settings.mc_trials)
            seed: Semilla

        Returns:
            Frecuencias de X = 1, 2, 3, media, error estándar y extensión vertical b

        Raises:
            NotACliqueError: Si los índices no forman un clique
        """
        puntos = [ps[i] for i in clique]
        ValidationRules.validar_clique_geometrico(puntos)
        trials = trials if trials is not None else settings.mc_trials
        ValidationRules.validar_entero_minimo("trials", trials, 1)

        ys = np.sort(np.asarray([p.y for p in puntos], dtype=float))
        shifts = make_rng(seed).uniform(0.0, width, size=trials)
        indices = np.floor((ys[None, :] - shifts[:, None]) / width).astype(np.int64)
        # X cuenta también las franjas intermedias sin puntos del clique
        partes = (indices[:, -1] - indices[:, 0] + 1) if len(ys) else np.zeros(trials, dtype=np.int64)

        media = float(partes.mean())
        error = float(partes.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
        return {
            "b": float(ys[-1] - ys[0]) if len(ys) else 0.0,
            "p1": float(np.mean(partes == 1)),
            "p2": float(np.mean(partes == 2)),
            "p3": float(np.mean(partes == 3)),
            "mean": media,
            "stderr": error,
            "trials": trials,
        }

    @staticmethod
    def analytic_split_distribution(b: float, a: float = SQRT3_2) -> Dict[str, float]:
        """
        Probabilidades del número de franjas que corta un intervalo vertical de
        largo b bajo un desplazamiento uniforme, con a/2 <= b <= 2a.

        Si b <= a: P[X=2] = b/a. Si b > a: P[X=3] = b/a - 1 y P[X=2] = 2 - b/a.
        """
        if b < 0 or a <= 0:
            raise ParameterRangeError("Se requiere b >= 0 y a > 0")
        if b > 2 * a:
            raise ParameterRangeError(f"La extensión b={b} excede 2a")
        razon = b / a
        if razon <= 1.0:
            p1, p2, p3 = 1.0 - razon, razon, 0.0
        else:
            p1, p2, p3 = 0.0, 2.0 - razon, razon - 1.0
        return {"p1": p1, "p2": p2, "p3": p3, "mean": p1 + 2 * p2 + 3 * p3, "bound": 1.0 + 1.0 / a}

    @staticmethod
    def round_count_stats(ps: PointSet, rational: Optional[RationalWidth] = None,
                          trials: Optional[int] = None, seed: int = 0) -> Dict[str, float]:
        """
        Media de Monte-Carlo del número de cliques de una ronda sobre desplazamientos uniformes.

        Returns:
            Media, error estándar y número de muestras
        """
        trials = trials if trials is not None else settings.mc_trials
        ValidationRules.validar_entero_minimo("trials", trials, 1)
        coords = np.asarray(ps.coords(), dtype=float).reshape(-1, 2)
        xs, ys = coords[:, 0], coords[:, 1]
        ancho = float(rational.d) if rational is not None else SQRT3_2
        rng = make_rng(seed)
        conteos = np.empty(trials, dtype=np.int64)
        for r in range(trials):
            shift = uniform_shift(rng, ancho)
            sys = StripSystem.with_rational(rational, shift) if rational is not None else StripSystem.irrational(shift)
            conteos[r] = ShiftedStripsService.round_count(xs, ys, sys)
        return {
            "mean": float(conteos.mean()),
            "stderr": float(conteos.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0,
            "trials": trials,
        }
