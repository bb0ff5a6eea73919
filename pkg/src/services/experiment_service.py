import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from ..config.constants import (
    CLUSTER_SIGMA, POINTS_PER_CLUSTER, SQRT3_2, XI, Algoritmo, Distribucion, VarianteAncho
)
from ..config.settings import settings
from ..exceptions import InvalidPartitionError, MCPError
from ..models import CliquePartition, CliquePartitionBase, ExperimentConfig, InstanceSpec, PointSet, RunResult, StripInstance
from ..utils.io_utils import read_points, write_result
from ..utils.random_utils import derive_seed, make_rng
from ..validators import PartitionValidator, ValidationRules
from .exact_solver import ExactSolver
from .graph_service import GraphService
from .grid_ptas_service import GridPTASService
from .shifted_strips_service import ShiftedStripsService
from .strip_solver import StripSolver
from .width_selection import WidthSelection

Ancho = Optional[Union[Dict[str, Any], str]]


class ExperimentService:
    """Servicio que orquesta instancias, solvers, verificación y medición de razones."""

    def __init__(self, threads: Optional[int] = None):
        """
        Inicializar el servicio de experimentos.

        Args:
            threads: Hilos para rondas, celdas y ensayos (por defecto settings.threads)
        """
        self.threads = max(1, threads if threads is not None else settings.threads)
        self.strips = ShiftedStripsService(self.threads)
        self.grid = GridPTASService(self.threads)

    @staticmethod
    def generate_instance(spec: InstanceSpec) -> PointSet:
        """
        Generar una instancia reproducible.

        Args:
            spec: Número de puntos, caja, semilla y distribución

        Returns:
            PointSet; `uniform` en la caja, `clustered` con ceil(n/5) centros y
            desplazamientos gaussianos (sigma 0.3), `disk` dentro de un disco de
            radio 1/2 centrado en la caja
        """
        n = spec.n
        if n == 0:
            return PointSet(points=[])
        rng = make_rng(spec.seed)
        distribucion = Distribucion(spec.distribution)

        if distribucion == Distribucion.UNIFORM:
            xs = rng.uniform(0.0, spec.width, size=n)
            ys = rng.uniform(0.0, spec.height, size=n)
        elif distribucion == Distribucion.CLUSTERED:
            c = math.ceil(n / POINTS_PER_CLUSTER)
            centros = np.column_stack([rng.uniform(0.0, spec.width, size=c), rng.uniform(0.0, spec.height, size=c)])
            asignacion = np.arange(n) % c
            offsets = rng.normal(0.0, CLUSTER_SIGMA, size=(n, 2))
            xs = centros[asignacion, 0] + offsets[:, 0]
            ys = centros[asignacion, 1] + offsets[:, 1]
        else:
            radios = 0.5 * np.sqrt(rng.uniform(0.0, 1.0, size=n))
            angulos = rng.uniform(0.0, 2.0 * math.pi, size=n)
            xs = spec.width / 2.0 + radios * np.cos(angulos)
            ys = spec.height / 2.0 + radios * np.sin(angulos)

        logger.debug(f"Instancia generada: n={n}, distribución={distribucion.value}, semilla={spec.seed}")
        return PointSet.from_coords(zip(xs.tolist(), ys.tolist()))

    @staticmethod
    def load_instance(cfg: ExperimentConfig) -> PointSet:
        if cfg.input_path is not None:
            return read_points(cfg.input_path)
        return ExperimentService.generate_instance(cfg.instance)

    def solve(self, ps: PointSet, cfg: ExperimentConfig) -> Tuple[CliquePartition, Optional[int], Ancho]:
        """
        Despachar al solver indicado en la configuración.

        Returns:
            (partición, rondas ejecutadas, metadatos del ancho)
        """
        algoritmo = Algoritmo(cfg.algorithm)
        if algoritmo == Algoritmo.EXACT:
            return ExactSolver.exact_mcp(GraphService.build_graph(ps)), None, None
        if algoritmo == Algoritmo.STRIPS3:
            return ShiftedStripsService.deterministic_3approx(ps), 1, ShiftedStripsService.width_metadata(None)
        if algoritmo == Algoritmo.STRIPS_RAND:
            reporte = self.strips.randomized_solve_report(ps, cfg.eps, cfg.delta, cfg.seed, cfg.variant, cfg.rounds)
            return reporte.partition, reporte.rounds, reporte.width
        reporte = self.grid.ptas_solve_report(ps, cfg.eps, cfg.delta, cfg.seed, cfg.cell_solver,
                                              cfg.k_override, cfg.rounds)
        return reporte.partition, reporte.rounds, None

    def run_experiment(self, cfg: ExperimentConfig) -> RunResult:
        """
        Ejecutar una corrida completa: instancia, solver, verificación y razón.

        Args:
            cfg: Configuración de la corrida

        Returns:
            Resultado con la partición verificada; `optimal` y `ratio` solo si la
            instancia cabe en el oráculo

        Raises:
            MCPError: Errores del solver, propagados con el nombre del algoritmo
            InvalidPartitionError: Si la partición producida no es válida
        """
        inicio = time.perf_counter()
        algoritmo = Algoritmo(cfg.algorithm)
        ps = self.load_instance(cfg)
        grafo = GraphService.build_graph(ps)
        logger.info(f"Corrida {algoritmo.value}: n={len(ps)}, semilla={cfg.seed}")

        try:
            particion, rondas, ancho = self.solve(ps, cfg)
        except MCPError as e:
            logger.error(f"Error en el solver {algoritmo.value} (n={len(ps)}, semilla={cfg.seed}): {e}")
            raise

        violaciones = PartitionValidator.validate_partition(grafo, particion)
        if violaciones:
            raise InvalidPartitionError(
                f"{algoritmo.value} produjo una partición inválida: {violaciones[0]['mensaje']}"
            )

        optimo = None
        if len(ps) <= ValidationRules.get_oracle_max_n():
            optimo = particion.size if algoritmo == Algoritmo.EXACT else ExactSolver.exact_mcp_count(grafo)
        razon = particion.size / optimo if optimo else None

        resultado = RunResult(
            algorithm=algoritmo,
            n=len(ps),
            num_cliques=particion.size,
            cliques=particion.parts,
            optimal=optimo,
            ratio=razon,
            seed=cfg.seed if algoritmo in (Algoritmo.STRIPS_RAND, Algoritmo.GRID_PTAS) else None,
            rounds=rondas,
            width=ancho,
            elapsed_ms=(time.perf_counter() - inicio) * 1000.0,
        )
        if cfg.output_path:
            write_result(resultado, cfg.output_path)
        logger.info(f"Corrida terminada: {resultado.num_cliques} cliques, óptimo={optimo}, razón={razon}")
        return resultado

    @staticmethod
    def verify(ps: PointSet, candidate: CliquePartitionBase) -> Dict[str, Any]:
        """
        Verificar una partición candidata contra la instancia.

        Returns:
            Diccionario con `valid`, `num_cliques`, `violations` y `resumen`
        """
        violaciones = PartitionValidator.validate_partition(GraphService.build_graph(ps), candidate)
        return {
            "valid": not violaciones,
            "n": len(ps),
            "num_cliques": len(candidate.parts),
            "violations": violaciones,
            "resumen": PartitionValidator.obtener_resumen(violaciones),
        }

    @staticmethod
    def ratio_bound(cfg: ExperimentConfig) -> Optional[float]:
        """Cota garantizada de la razón para el algoritmo (None para la malla)."""
        algoritmo = Algoritmo(cfg.algorithm)
        if algoritmo == Algoritmo.EXACT:
            return 1.0
        if algoritmo == Algoritmo.STRIPS3:
            return 3.0
        if algoritmo == Algoritmo.STRIPS_RAND:
            if VarianteAncho(cfg.variant) == VarianteAncho.RATIONAL:
                ancho = WidthSelection.select_width(cfg.eps)
                return ancho.p / ancho.q + cfg.eps
            return XI + cfg.eps
        return None

    def ratio_sweep(self, cfg: ExperimentConfig, trials: int, base_seed: int = 0) -> Dict[str, Any]:
        """
        Barrido de razones sobre instancias generadas con semillas derivadas.

        Args:
            cfg: Plantilla de configuración; su `instance` fija n, caja y distribución
            trials: Número de instancias
            base_seed: Semilla del barrido; el ensayo i usa derive_seed(base_seed, i)

        Returns:
            Razones por ensayo, máximo, media y fracción dentro de la cota
        """
        ValidationRules.validar_entero_minimo("trials", trials, 1)
        if cfg.instance is None:
            raise MCPError("El barrido requiere una especificación de generador")
        cota = self.ratio_bound(cfg)

        def ensayo(i: int) -> RunResult:
            semilla = derive_seed(base_seed, i)
            spec = cfg.instance.copy(update={"seed": semilla})
            return self.run_experiment(cfg.copy(update={"instance": spec, "seed": semilla, "output_path": None}))

        if self.threads > 1 and trials > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                resultados = list(pool.map(ensayo, range(trials)))
        else:
            resultados = [ensayo(i) for i in range(trials)]

        razones = [r.ratio for r in resultados if r.ratio is not None]
        dentro = sum(1 for r in razones if cota is None or r <= cota + 1e-12)
        resumen = {
            "algorithm": Algoritmo(cfg.algorithm).value,
            "trials": trials,
            "bound": cota,
            "ratios": razones,
            "max_ratio": max(razones) if razones else None,
            "mean_ratio": float(np.mean(razones)) if razones else None,
            "within_bound": dentro / len(razones) if razones else None,
        }
        logger.info(f"Barrido {resumen['algorithm']}: {trials} ensayos, máx={resumen['max_ratio']}, "
                     f"dentro de la cota={resumen['within_bound']}")
        return resumen

    @staticmethod
    def strip_timing(sizes: Sequence[int], seed: int = 0, width: float = 0.86) -> List[Dict[str, float]]:
        """Tiempo de solve_strip para n puntos uniformes en [0, n] x [0, width]."""
        filas = []
        for n in sizes:
            ValidationRules.validar_entero_minimo("n", n, 0)
            rng = make_rng(seed, n)
            xs = rng.uniform(0.0, max(n, 1), size=n)
            ys = rng.uniform(0.0, width, size=n)
            inst = StripInstance(points=PointSet.from_coords(zip(xs.tolist(), ys.tolist())), width=width)
            inicio = time.perf_counter()
            particion = StripSolver.solve_strip(inst)
            filas.append({"n": n, "cliques": particion.size, "elapsed_ms": (time.perf_counter() - inicio) * 1000.0})
        return filas

    @staticmethod
    def split_table(bs: Sequence[float], trials: Optional[int] = None, seed: int = 0) -> List[Dict[str, float]]:
        """
        Probabilidades de corte de un clique sintético de extensión vertical b,
        empíricas contra analíticas, con ancho sqrt(3)/2.
        """
        filas = []
        for b in bs:
            ps = PointSet.from_coords([(0.0, 0.0), (0.0, float(b))])
            empirica = ShiftedStripsService.split_count_stats(ps, [0, 1], SQRT3_2, trials, seed)
            analitica = ShiftedStripsService.analytic_split_distribution(float(b), SQRT3_2)
            filas.append({
                "b": float(b),
                "p2": empirica["p2"], "p3": empirica["p3"],
                "p2_formula": analitica["p2"], "p3_formula": analitica["p3"],
            })
        return filas
