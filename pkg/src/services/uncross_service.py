from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from ..config.constants import PSI_DESCENT_TOLERANCE, TipoMovimiento
from ..config.settings import settings
from ..exceptions import (
    ChordNotFoundError, ContainmentError, MatchingStructureError,
    NoIsolatedPetalError, UncrossError
)
from ..models import (
    CliquePartition, ConvexPolygon, IncompatibilityGraph, PetalDecomposition,
    Point, PointSet, UncrossMove, UncrossReport
)
from ..utils.geometry_utils import (
    convex_hull, line_side, overlaps, perimeter, petal_decomposition, petal_members
)

Par = Tuple[List[int], List[int]]


def _hull(ps: PointSet, part: Sequence[int]) -> ConvexPolygon:
    return convex_hull([ps[i] for i in part])


def _part_psi(ps: PointSet, part: Sequence[int]) -> float:
    return perimeter(_hull(ps, part)) if part else 0.0


def _is_clique(ps: PointSet, part: Sequence[int]) -> bool:
    return all(ps[a].dist2(ps[b]) <= 1.0 for a, b in combinations(part, 2))


def _improves(ps: PointSet, c: Sequence[int], d: Sequence[int], c2: Sequence[int], d2: Sequence[int]) -> bool:
    antes = _part_psi(ps, c) + _part_psi(ps, d)
    despues = _part_psi(ps, c2) + _part_psi(ps, d2)
    return despues < antes - PSI_DESCENT_TOLERANCE


class UncrossService:
    """Descruce de envolventes convexas de una partición en cliques por descenso del potencial Psi."""

    @staticmethod
    def psi(partition: CliquePartition, ps: PointSet) -> float:
        """Suma de los perímetros de las envolventes convexas de las partes."""
        return sum(_part_psi(ps, parte) for parte in partition.parts)

    @staticmethod
    def find_overlapping_pair(partition: CliquePartition, ps: PointSet) -> Optional[Tuple[int, int]]:
        """
        Primer par de partes (en orden lexicográfico) cuyas envolventes se traslapan.

        Returns:
            Índices de las dos partes o None
        """
        envolventes = [_hull(ps, parte) for parte in partition.parts]
        candidatas = [i for i, env in enumerate(envolventes) if not env.is_degenerate]
        for i, j in combinations(candidatas, 2):
            if overlaps(envolventes[i], envolventes[j]):
                return (i, j)
        return None

    @staticmethod
    def build_incompatibility_graph(c: Sequence[int], d: Sequence[int], ps: PointSet,
                                    decomposition: PetalDecomposition) -> IncompatibilityGraph:
        """
        Grafo de incompatibilidad entre pétalos de conv(c) y conv(d).

        Args:
            c: Clique cuyo polígono es P
            d: Clique cuyo polígono es Q
            ps: Conjunto de puntos
            decomposition: Pétalos de P y Q

        Returns:
            Grafo con arista (i, j) si hay x en X_i e y en Y_j a distancia > 1
        """
        p, q = _hull(ps, c), _hull(ps, d)
        azules = petal_members([ps[i] for i in c], decomposition.petals_p, q)
        rojos = petal_members([ps[i] for i in d], decomposition.petals_q, p)
        aristas = []
        for i, xs in enumerate(azules):
            for j, ys in enumerate(rojos):
                if any(ps[x].dist2(ps[y]) > 1.0 for x in xs for y in ys):
                    aristas.append((i, j))
        return IncompatibilityGraph(k=decomposition.k, edges=aristas, blue_members=azules, red_members=rojos)

    @staticmethod
    def isolated_petal_move(c: Sequence[int], d: Sequence[int], ps: PointSet,
                            graph: IncompatibilityGraph, decomposition: PetalDecomposition) -> Optional[Par]:
        """
        Mover los puntos de un pétalo aislado al otro clique.

        Se omiten pétalos vacíos y movimientos que vaciarían una parte.

        Returns:
            (c', d') con ambos cliques y Psi estrictamente menor, o None si ningún
            vértice aislado produce un movimiento válido

        Raises:
            NoIsolatedPetalError: Si el grafo no tiene vértices aislados
        """
        aislados = graph.isolated_vertices()
        if not aislados:
            raise NoIsolatedPetalError("El grafo de incompatibilidad no tiene vértices aislados")

        for color, idx in aislados:
            if color == "blue":
                mover, origen, destino = graph.blue_members[idx], list(c), list(d)
            else:
                mover, origen, destino = graph.red_members[idx], list(d), list(c)
            if not mover or len(mover) == len(origen):
                continue
            conjunto = set(mover)
            nuevo_origen = [i for i in origen if i not in conjunto]
            nuevo_destino = sorted(destino + list(mover))
            if not (_is_clique(ps, nuevo_destino) and _is_clique(ps, nuevo_origen)):
                continue
            if not _improves(ps, origen, destino, nuevo_origen, nuevo_destino):
                continue
            logger.debug(f"Pétalo aislado {color} {idx}: se mueven {len(mover)} puntos")
            if color == "blue":
                return nuevo_origen, nuevo_destino
            return nuevo_destino, nuevo_origen
        return None

    @staticmethod
    def cut_sides(inicio: Point, fin: Point, c: Sequence[int], d: Sequence[int], ps: PointSet,
                  graph: IncompatibilityGraph, decomposition: PetalDecomposition) -> Par:
        """
        Repartir c ∪ d a ambos lados de la recta inicio -> fin.

        Cada pétalo queda débilmente de un lado de la recta: sus puntos van al
        lado de su vértice más alejado de ella, aunque alguno esté sobre la
        recta. Los puntos de I = P ∩ Q se asignan por la recta (a la izquierda
        si están sobre ella).

        Returns:
            (izquierda, derecha)
        """
        izquierda, asignados = set(), set()
        miembros = list(graph.blue_members) + list(graph.red_members)
        petalos = list(decomposition.petals_p) + list(decomposition.petals_q)
        for puntos, petalo in zip(miembros, petalos):
            extremo = max((line_side(inicio, fin, v) for v in petalo.vertices), key=abs)
            asignados.update(puntos)
            if extremo >= 0.0:
                izquierda.update(puntos)
        for i in list(c) + list(d):
            if i not in asignados and line_side(inicio, fin, ps[i]) >= 0.0:
                izquierda.add(i)
        union = sorted(set(c) | set(d))
        return [i for i in union if i in izquierda], [i for i in union if i not in izquierda]

    @staticmethod
    def halving_cut_move(c: Sequence[int], d: Sequence[int], ps: PointSet,
                         graph: IncompatibilityGraph, decomposition: PetalDecomposition) -> Par:
        """
        Cortar c ∪ d por la recta de una cuerda de I que separa b_0 de r_(k//2).

        Se prueba primero la cuerda canónica (cruce 0 a cruce k) y luego sus
        rotaciones. La repartición de cada lado sigue cut_sides.

        Returns:
            (izquierda, derecha), ambos cliques con Psi estrictamente menor

        Raises:
            MatchingStructureError: Si el grafo no es el emparejamiento cruzado perfecto con k impar
            ChordNotFoundError: Si ninguna cuerda produce dos cliques con descenso de Psi
        """
        if not graph.is_perfect_crossing_matching():
            raise MatchingStructureError(
                f"Sin vértices aislados el grafo debería ser un emparejamiento cruzado perfecto con k impar "
                f"(k={graph.k}, aristas={graph.edges})"
            )
        k = decomposition.k
        cruces = decomposition.crossings
        diagnostico = []
        for a in range(k):
            izquierda, derecha = UncrossService.cut_sides(cruces[a], cruces[a + k], c, d, ps, graph, decomposition)
            if not izquierda or not derecha:
                diagnostico.append(f"cuerda {a}-{a + k}: un lado vacío")
                continue
            if not (_is_clique(ps, izquierda) and _is_clique(ps, derecha)):
                diagnostico.append(f"cuerda {a}-{a + k}: algún lado no es clique")
                continue
            if not _improves(ps, c, d, izquierda, derecha):
                diagnostico.append(f"cuerda {a}-{a + k}: Psi no desciende")
                continue
            if a:
                logger.warning(f"Se usó la rotación {a} de la cuerda canónica")
            return izquierda, derecha
        logger.error(f"Ninguna cuerda válida (k={k}): {'; '.join(diagnostico)}")
        raise ChordNotFoundError(f"Ninguna cuerda de I produce dos cliques (k={k}): {'; '.join(diagnostico)}")

    @staticmethod
    def split_search(c: Sequence[int], d: Sequence[int], ps: PointSet) -> Optional[Par]:
        """
        Búsqueda exhaustiva de la repartición de c ∪ d en dos cliques de Psi mínimo.

        Returns:
            La mejor repartición si mejora Psi, o None

        Raises:
            UncrossError: Si la unión excede settings.split_search_max_points
        """
        union = sorted(list(c) + list(d))
        m = len(union)
        if m > settings.split_search_max_points:
            raise UncrossError(
                f"La repartición exhaustiva no admite {m} puntos (límite {settings.split_search_max_points})"
            )
        filas = [0] * m
        for a, b in combinations(range(m), 2):
            if ps[union[a]].dist2(ps[union[b]]) <= 1.0:
                filas[a] |= 1 << b
                filas[b] |= 1 << a

        def es_clique(mascara: int) -> bool:
            resto = mascara
            while resto:
                bajo = resto & -resto
                v = bajo.bit_length() - 1
                if (mascara & ~bajo) & ~filas[v]:
                    return False
                resto ^= bajo
            return True

        todos = (1 << m) - 1
        mejor: Optional[Par] = None
        mejor_psi = _part_psi(ps, c) + _part_psi(ps, d) - PSI_DESCENT_TOLERANCE
        for mascara in range(1, todos, 2):
            complemento = todos & ~mascara
            if not complemento or not es_clique(mascara) or not es_clique(complemento):
                continue
            lado_a = [union[i] for i in range(m) if mascara >> i & 1]
            lado_b = [union[i] for i in range(m) if complemento >> i & 1]
            valor = _part_psi(ps, lado_a) + _part_psi(ps, lado_b)
            if valor < mejor_psi:
                mejor, mejor_psi = (lado_a, lado_b), valor
        return mejor

    @staticmethod
    def _resolve_pair(c: List[int], d: List[int], ps: PointSet) -> Tuple[Par, TipoMovimiento, Optional[str]]:
        """
        Elegir y aplicar el movimiento para un par traslapado.

        Solo la contención de envolventes recurre a la repartición exhaustiva;
        cualquier otra falla estructural se propaga.
        """
        p, q = _hull(ps, c), _hull(ps, d)
        try:
            dec = petal_decomposition(p, q)
        except ContainmentError as e:
            logger.info(f"Envolvente contenida en la otra; repartición exhaustiva: {e}")
            resultado = UncrossService.split_search(c, d, ps)
            if resultado is None:
                raise UncrossError(f"Ninguna repartición reduce Psi para el par contenido ({e})")
            return resultado, TipoMovimiento.BUSQUEDA_EXHAUSTIVA, str(e)

        grafo = UncrossService.build_incompatibility_graph(c, d, ps, dec)
        if grafo.isolated_vertices():
            resultado = UncrossService.isolated_petal_move(c, d, ps, grafo, dec)
            if resultado is not None:
                return resultado, TipoMovimiento.PETALO_AISLADO, None
            if grafo.has_antiparallel_pair():
                logger.warning("Aristas antiparalelas en el grafo de incompatibilidad")
        return (UncrossService.halving_cut_move(c, d, ps, grafo, dec),
                TipoMovimiento.CORTE_CUERDA, f"k={dec.k}")

    @staticmethod
    def uncross_report(partition: CliquePartition, ps: PointSet) -> UncrossReport:
        """
        Aplicar movimientos hasta que ningún par de envolventes se traslape.

        Args:
            partition: Partición en cliques válida
            ps: Conjunto de puntos

        Returns:
            Partición descruzada, traza de Psi y movimientos aplicados

        Raises:
            UncrossError: Si se excede el tope de iteraciones o ningún movimiento aplica
            MatchingStructureError, ChordNotFoundError: Si falla la estructura del corte por cuerda
            GeneralPositionError: Si los bordes de un par se tocan tangencialmente
        """
        partes = [list(parte) for parte in partition.parts]
        tope = max(1, settings.uncross_iteration_factor * len(partes) ** 2 * len(ps))
        psi_actual = UncrossService.psi(partition, ps)
        traza = [psi_actual]
        movimientos: List[UncrossMove] = []

        while True:
            actual = CliquePartition(parts=partes)
            par = UncrossService.find_overlapping_pair(actual, ps)
            if par is None:
                break
            if len(movimientos) >= tope:
                raise UncrossError(f"Se excedió el tope de {tope} iteraciones")
            i, j = par
            (nuevo_c, nuevo_d), tipo, detalle = UncrossService._resolve_pair(partes[i], partes[j], ps)
            partes[i], partes[j] = sorted(nuevo_c), sorted(nuevo_d)
            psi_nuevo = UncrossService.psi(CliquePartition(parts=partes), ps)
            if not psi_nuevo < psi_actual - PSI_DESCENT_TOLERANCE:
                raise UncrossError(f"Psi no descendió: {psi_actual} -> {psi_nuevo}")
            movimientos.append(UncrossMove(kind=tipo, parts=(i, j), psi_before=psi_actual,
                                           psi_after=psi_nuevo, detail=detalle))
            traza.append(psi_nuevo)
            psi_actual = psi_nuevo

        logger.info(f"Descruce terminado: {len(movimientos)} movimientos, Psi {traza[0]:.6f} -> {traza[-1]:.6f}")
        return UncrossReport(partition=CliquePartition(parts=partes), psi_trace=traza, moves=movimientos)

    @staticmethod
    def uncross_partition(partition: CliquePartition, ps: PointSet) -> CliquePartition:
        return UncrossService.uncross_report(partition, ps).partition

    @staticmethod
    def adversarial_partition(ps: PointSet, num_parts: int = 3) -> CliquePartition:
        """
        Partición deliberadamente mala: asignación cíclica en `num_parts` partes,
        cada una dividida después en cliques por primer ajuste.
        """
        grupos: Dict[int, List[int]] = {}
        for i in range(len(ps)):
            grupos.setdefault(i % num_parts, []).append(i)
        partes: List[List[int]] = []
        for clave in sorted(grupos):
            cliques: List[List[int]] = []
            for i in grupos[clave]:
                for clique in cliques:
                    if all(ps[i].dist2(ps[j]) <= 1.0 for j in clique):
                        clique.append(i)
                        break
                else:
                    cliques.append([i])
            partes.extend(cliques)
        return CliquePartition(parts=partes)


def psi(partition: CliquePartition, ps: PointSet) -> float:
    return UncrossService.psi(partition, ps)


def uncross_partition(partition: CliquePartition, ps: PointSet) -> CliquePartition:
    return UncrossService.uncross_partition(partition, ps)
