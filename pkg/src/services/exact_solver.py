import math
from typing import Dict, Iterator, List, Optional, Tuple

from loguru import logger

from ..models import CliquePartition, PointSet, UnitDiskGraph
from ..validators import ValidationRules


def _bits(mascara: int) -> Iterator[int]:
    while mascara:
        bajo = mascara & -mascara
        yield bajo.bit_length() - 1
        mascara ^= bajo


def _popcount(mascara: int) -> int:
    return bin(mascara).count("1")


def _maximal_cliques(candidatos: int, filas: Tuple[int, ...]) -> Iterator[int]:
    """Cliques maximales del subgrafo inducido por `candidatos` (Bron-Kerbosch con pivote)."""

    def expandir(r: int, p: int, x: int) -> Iterator[int]:
        if not p and not x:
            yield r
            return
        pivote = max(_bits(p | x), key=lambda u: _popcount(p & filas[u]))
        for w in _bits(p & ~filas[pivote]):
            bit = 1 << w
            yield from expandir(r | bit, p & filas[w], x & filas[w])
            p &= ~bit
            x |= bit

    yield from expandir(0, candidatos, 0)


class ExactSolver:
    """Oráculo exacto de partición mínima en cliques por programación dinámica sobre subconjuntos."""

    def __init__(self, g: UnitDiskGraph, max_n: Optional[int] = None):
        """
        Inicializar el solver.

        Args:
            g: Grafo de disco unitario
            max_n: Capacidad (por defecto la configurada en settings)

        Raises:
            InstanceTooLargeError: Si el grafo excede la capacidad
        """
        limite = max_n if max_n is not None else ValidationRules.get_oracle_max_n()
        ValidationRules.validar_capacidad(g.n, limite, "Oráculo exacto")
        self.g = g
        self.filas = g.rows
        self.memo: Dict[int, Tuple[int, int]] = {0: (0, 0)}

    def _resolver(self, s: int) -> int:
        """
        f(S) = 1 + min f(S \\ T) sobre cliques T de G[S] que contienen al menor
        elemento de S. Basta recorrer los cliques maximales: f es monótona.
        """
        if s in self.memo:
            return self.memo[s][0]
        bit_pivote = s & -s
        pivote = bit_pivote.bit_length() - 1
        candidatos = s & self.filas[pivote]

        mejor, eleccion = math.inf, bit_pivote
        for clique in _maximal_cliques(candidatos, self.filas):
            t = clique | bit_pivote
            valor = 1 + self._resolver(s & ~t)
            if valor < mejor:
                mejor, eleccion = valor, t
        self.memo[s] = (mejor, eleccion)
        return mejor

    def solve(self) -> CliquePartition:
        todos = (1 << self.g.n) - 1
        self._resolver(todos)
        partes: List[List[int]] = []
        s = todos
        while s:
            _, t = self.memo[s]
            partes.append(list(_bits(t)))
            s &= ~t
        logger.debug(f"Oráculo exacto: n={self.g.n}, z={len(partes)}, estados={len(self.memo)}")
        return CliquePartition(parts=partes)

    def count(self) -> int:
        return self._resolver((1 << self.g.n) - 1)

    @staticmethod
    def exact_mcp(g: UnitDiskGraph) -> CliquePartition:
        """
        Partición en cliques de cardinalidad mínima.

        Args:
            g: Grafo de disco unitario con n <= oracle_max_n

        Returns:
            Partición óptima (|parts| = z(S))

        Raises:
            InstanceTooLargeError: Si n excede la capacidad configurada
        """
        return ExactSolver(g).solve()

    @staticmethod
    def exact_mcp_count(g: UnitDiskGraph) -> int:
        return ExactSolver(g).count()

    @staticmethod
    def naive_mcp_count(g: UnitDiskGraph) -> int:
        """
        z(S) por enumeración de particiones de conjuntos (crecimiento restringido)
        filtradas a particiones en cliques. Independiente de la programación dinámica.
        """
        ValidationRules.validar_capacidad(g.n, ValidationRules.get_oracle_max_n(), "Enumeración ingenua")
        n = g.n
        if n == 0:
            return 0
        bloques: List[List[int]] = []
        mejor = [n]

        def asignar(v: int) -> None:
            if len(bloques) >= mejor[0]:
                return
            if v == n:
                mejor[0] = len(bloques)
                return
            for bloque in bloques:
                if all(g.adjacent(v, u) for u in bloque):
                    bloque.append(v)
                    asignar(v + 1)
                    bloque.pop()
            bloques.append([v])
            asignar(v + 1)
            bloques.pop()

        asignar(0)
        return mejor[0]

    @staticmethod
    def cover_bound(ps: PointSet) -> int:
        """
        Número de celdas de lado 1/sqrt(2) que cubren la caja envolvente; cada
        celda es un clique, así que es una cota superior de z(S).
        """
        if len(ps) == 0:
            return 0
        lado = 1.0 / math.sqrt(2.0)
        xs = [p.x for p in ps.points]
        ys = [p.y for p in ps.points]
        columnas = math.floor((max(xs) - min(xs)) / lado) + 1
        filas = math.floor((max(ys) - min(ys)) / lado) + 1
        return columnas * filas


def exact_mcp(g: UnitDiskGraph) -> CliquePartition:
    return ExactSolver.exact_mcp(g)


def exact_mcp_count(g: UnitDiskGraph) -> int:
    return ExactSolver.exact_mcp_count(g)
