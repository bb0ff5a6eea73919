#!/usr/bin/env python3
"""
UDG-MCP - Partición mínima en cliques
=====================================

Interfaz de línea de comandos para generar instancias, resolver, verificar,
descruzar particiones y medir razones contra el oráculo exacto.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

# Agregar el directorio src al path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from loguru import logger
from pydantic import ValidationError

from src.config.constants import Algoritmo, CellSolver, Distribucion, ExitCode, VarianteAncho
from src.config.settings import settings
from src.exceptions import MCPError
from src.models import CliquePartition, ExperimentConfig, InstanceSpec
from src.services import ExperimentService, UncrossService, WidthSelection
from src.utils.io_utils import (
    format_coord, read_partition, read_points, resolve_output, result_to_json, write_points
)


class ParserMCP(argparse.ArgumentParser):
    """Parser que termina con el código de uso (1) ante argumentos inválidos."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USO, f"❌ {self.prog}: {message}\n")


class SistemaMCP:
    """Clase principal del sistema UDG-MCP"""

    def __init__(self, threads: Optional[int] = None):
        """Inicializar el sistema"""
        self.experimentos = ExperimentService(threads)

        # Configurar logging
        logger.remove()
        logger.add(sys.stderr, level=settings.log_level, format=settings.log_format)

    @staticmethod
    def construir_parser() -> ParserMCP:
        parser = ParserMCP(prog="udg_mcp", description=settings.app_description)
        parser.add_argument("--version", action="version", version=f"{settings.app_name} {settings.app_version}")
        parser.add_argument("--threads", type=int, default=None, help="Hilos de trabajo (UDGMCP_THREADS)")
        sub = parser.add_subparsers(dest="comando", required=True)

        gen = sub.add_parser("gen", help="Generar una instancia")
        SistemaMCP._args_instancia(gen)
        gen.add_argument("--out", help="Archivo de puntos de salida (por defecto stdout)")

        solve = sub.add_parser("solve", help="Resolver una instancia")
        solve.add_argument("--algo", required=True, choices=[a.value for a in Algoritmo])
        solve.add_argument("--in", dest="input_path", help="Archivo de puntos")
        SistemaMCP._args_instancia(solve, requerido=False)
        SistemaMCP._args_solver(solve)
        solve.add_argument("--out", help="Archivo JSON de resultado (por defecto stdout)")

        verify = sub.add_parser("verify", help="Verificar una partición candidata")
        verify.add_argument("--in", dest="input_path", required=True, help="Archivo de puntos")
        verify.add_argument("--partition", required=True, help="JSON con la partición")

        uncross = sub.add_parser("uncross", help="Descruzar las envolventes de una partición")
        uncross.add_argument("--in", dest="input_path", required=True, help="Archivo de puntos")
        uncross.add_argument("--partition", help="JSON con la partición (por defecto una adversaria)")
        uncross.add_argument("--parts", type=int, default=3, help="Grupos de la partición adversaria")
        uncross.add_argument("--out", help="Archivo JSON de resultado")

        conv = sub.add_parser("convergents", help="Convergentes de xi y ancho racional")
        conv.add_argument("--t", "--t-max", dest="t_max", type=int, default=5, help="Índice del último convergente")
        conv.add_argument("--eps", type=float, default=None, help="Seleccionar el ancho para este eps")

        bench = sub.add_parser("bench", help="Barridos de razones, tiempos y probabilidades de corte")
        bench.add_argument("--kind", choices=["ratio", "timing", "split"], default="ratio")
        bench.add_argument("--algo", choices=[a.value for a in Algoritmo], default=Algoritmo.STRIPS3.value)
        bench.add_argument("--trials", type=int, default=100)
        bench.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400, 800, 1600])
        bench.add_argument("--bs", type=float, nargs="+", default=[0.90, 0.95, 1.00])
        SistemaMCP._args_instancia(bench, requerido=False, n_defecto=12, caja_defecto=3.0)
        SistemaMCP._args_solver(bench)
        return parser

    @staticmethod
    def _args_instancia(p: argparse.ArgumentParser, requerido: bool = True,
                        n_defecto: Optional[int] = None, caja_defecto: float = 10.0) -> None:
        p.add_argument("--n", type=int, required=requerido and n_defecto is None, default=n_defecto)
        p.add_argument("--width", type=float, default=caja_defecto)
        p.add_argument("--height", type=float, default=caja_defecto)
        p.add_argument("--distribution", choices=[d.value for d in Distribucion], default=Distribucion.UNIFORM.value)
        p.add_argument("--seed", type=int, default=0)

    @staticmethod
    def _args_solver(p: argparse.ArgumentParser) -> None:
        p.add_argument("--eps", type=float, default=0.3)
        p.add_argument("--delta", type=float, default=0.1)
        p.add_argument("--rounds", type=int, default=None)
        ancho = p.add_mutually_exclusive_group()
        ancho.add_argument("--variant", choices=[v.value for v in VarianteAncho], default=VarianteAncho.IRRATIONAL.value)
        ancho.add_argument("--rational", dest="variant", action="store_const", const=VarianteAncho.RATIONAL.value,
                           help="Ancho racional q/(p - q) elegido según eps")
        ancho.add_argument("--irrational", dest="variant", action="store_const", const=VarianteAncho.IRRATIONAL.value,
                           help="Ancho sqrt(3)/2 (por defecto)")
        p.add_argument("--k-override", type=int, default=None)
        p.add_argument("--cell-solver", choices=[c.value for c in CellSolver], default=CellSolver.ORACLE.value)

    @staticmethod
    def _spec(args: argparse.Namespace) -> InstanceSpec:
        return InstanceSpec(n=args.n, width=args.width, height=args.height,
                            seed=args.seed, distribution=args.distribution)

    @staticmethod
    def _config(args: argparse.Namespace, spec: Optional[InstanceSpec], input_path: Optional[str] = None,
                output_path: Optional[str] = None) -> ExperimentConfig:
        return ExperimentConfig(
            algorithm=args.algo, instance=spec, input_path=input_path, eps=args.eps, delta=args.delta,
            seed=args.seed, rounds=args.rounds, variant=args.variant, k_override=args.k_override,
            cell_solver=args.cell_solver, output_path=output_path,
        )

    @staticmethod
    def emitir(data: Dict[str, Any], out: Optional[str] = None) -> None:
        """Escribir JSON en un archivo o en stdout."""
        texto = json.dumps(data, indent=2, ensure_ascii=False)
        if out:
            Path(out).parent.mkdir(parents=True, exist_ok=True)
            Path(out).write_text(texto + "\n", encoding="utf-8")
            print(f"📄 Resultado escrito en {out}", file=sys.stderr)
        else:
            print(texto)

    def comando_gen(self, args: argparse.Namespace) -> int:
        ps = self.experimentos.generate_instance(self._spec(args))
        if args.out:
            write_points(ps, args.out, header=f"n={args.n} seed={args.seed} distribution={args.distribution}")
            print(f"✅ {len(ps)} puntos escritos en {args.out}", file=sys.stderr)
        else:
            for p in ps.points:
                print(f"{format_coord(p.x)} {format_coord(p.y)}")
        return ExitCode.OK

    def comando_solve(self, args: argparse.Namespace) -> int:
        if (args.input_path is None) == (args.n is None):
            print("❌ Indique --in o --n (uno de los dos)", file=sys.stderr)
            return ExitCode.USO
        spec = self._spec(args) if args.input_path is None else None
        cfg = self._config(args, spec, args.input_path, args.out)
        resultado = self.experimentos.run_experiment(cfg)
        if not args.out:
            print(result_to_json(resultado))
        print(f"✅ {resultado.num_cliques} cliques (óptimo: {resultado.optimal}, razón: {resultado.ratio})",
              file=sys.stderr)
        return ExitCode.OK

    def comando_verify(self, args: argparse.Namespace) -> int:
        ps = read_points(args.input_path)
        reporte = self.experimentos.verify(ps, read_partition(args.partition))
        self.emitir(reporte)
        if reporte["valid"]:
            print("✅ Partición válida", file=sys.stderr)
            return ExitCode.OK
        print(f"❌ Partición inválida: {len(reporte['violations'])} violaciones", file=sys.stderr)
        return ExitCode.ENTRADA

    def comando_uncross(self, args: argparse.Namespace) -> int:
        ps = read_points(args.input_path)
        if args.partition:
            candidata = read_partition(args.partition)
            verificacion = self.experimentos.verify(ps, candidata)
            if not verificacion["valid"]:
                print(f"❌ La partición no es válida: {verificacion['violations'][0]['mensaje']}", file=sys.stderr)
                return ExitCode.ENTRADA
            particion = CliquePartition(parts=candidata.parts)
        else:
            particion = UncrossService.adversarial_partition(ps, args.parts)
        reporte = UncrossService.uncross_report(particion, ps)
        self.emitir({
            "n": len(ps),
            "num_cliques": reporte.partition.size,
            "cliques": reporte.partition.parts,
            "psi_trace": reporte.psi_trace,
            "moves": [{"kind": m.kind.value, "parts": list(m.parts), "psi_before": m.psi_before,
                       "psi_after": m.psi_after, "detail": m.detail} for m in reporte.moves],
        }, args.out)
        return ExitCode.OK

    def comando_convergents(self, args: argparse.Namespace) -> int:
        filas: List[Dict[str, Any]] = [WidthSelection.convergent_report(c) for c in WidthSelection.convergents(args.t_max)]
        data: Dict[str, Any] = {"convergents": filas}
        if args.eps is not None:
            ancho = WidthSelection.select_width(args.eps)
            data["selected"] = {"eps": args.eps, "t": ancho.t, "p": ancho.p, "q": ancho.q, "d": ancho.label()}
        self.emitir(data)
        return ExitCode.OK

    def comando_bench(self, args: argparse.Namespace) -> int:
        if args.kind == "timing":
            self.emitir({"timing": self.experimentos.strip_timing(args.sizes, args.seed)})
        elif args.kind == "split":
            self.emitir({"split": self.experimentos.split_table(args.bs, seed=args.seed)})
        else:
            cfg = self._config(args, self._spec(args))
            self.emitir(self.experimentos.ratio_sweep(cfg, args.trials, args.seed))
        return ExitCode.OK

    def ejecutar(self, args: argparse.Namespace) -> int:
        """Ejecutar el subcomando y traducir errores a códigos de salida"""
        comandos = {
            "gen": self.comando_gen,
            "solve": self.comando_solve,
            "verify": self.comando_verify,
            "uncross": self.comando_uncross,
            "convergents": self.comando_convergents,
            "bench": self.comando_bench,
        }
        if getattr(args, "out", None):
            args.out = str(resolve_output(args.out))
        try:
            return int(comandos[args.comando](args))
        except ValidationError as e:
            print(f"❌ Parámetros inválidos: {e}", file=sys.stderr)
            return ExitCode.USO
        except MCPError as e:
            print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
            return int(e.exit_code)
        except Exception as e:
            print(f"❌ Error inesperado: {e}", file=sys.stderr)
            logger.exception("Error inesperado en el sistema")
            return ExitCode.SOLVER


def main(argv: Optional[List[str]] = None) -> int:
    """Función principal"""
    args = SistemaMCP.construir_parser().parse_args(argv)
    sistema = SistemaMCP(args.threads)
    return sistema.ejecutar(args)


if __name__ == "__main__":
    sys.exit(main())
