import math
from itertools import combinations

import pytest

from src.config.constants import TipoMovimiento
from src.exceptions import (
    ChordNotFoundError, ContainmentError, GeneralPositionError, MatchingStructureError,
    NoIsolatedPetalError, UncrossError
)
from src.models import CliquePartition, IncompatibilityGraph, PointSet
from src.services.graph_service import build_graph
from src.services.uncross_service import UncrossService, psi, uncross_partition
from src.utils.geometry_utils import convex_hull, overlaps, petal_decomposition
from src.utils.random_utils import make_rng
from src.validators import validate_partition

# Dos rectángulos finos en forma de cruz; toda la unión es un clique
CRUZ = [
    (-0.4, -0.05), (0.4, -0.05), (0.4, 0.05), (-0.4, 0.05),
    (-0.05, -0.4), (0.05, -0.4), (0.05, 0.4), (-0.05, 0.4),
]
C, D = [0, 1, 2, 3], [4, 5, 6, 7]


def _cruz():
    ps = PointSet.from_coords(CRUZ)
    dec = petal_decomposition(convex_hull([ps[i] for i in C]), convex_hull([ps[i] for i in D]))
    return ps, dec


# Cuadrado con un triángulo que entra por su lado izquierdo: ambos cruces en la misma arista, k = 1
MUESCA = [(0.0, 0.0), (0.6, 0.0), (0.6, 0.6), (0.0, 0.6), (-0.5, 0.2), (-0.5, 0.4), (0.2, 0.3)]
C_MUESCA, D_MUESCA = [0, 1, 2, 3], [4, 5, 6]


def _hexagrama(radio=0.55):
    angulos = [90, 210, 330, 270, 30, 150]
    ps = PointSet.from_coords([
        (radio * math.cos(math.radians(a)), radio * math.sin(math.radians(a))) for a in angulos
    ])
    return ps, [0, 1, 2], [3, 4, 5]


def _par_de_cliques(seed, n=5):
    """Dos cliques aleatorios dentro de discos de diámetro 1 con centros cercanos."""
    rng = make_rng(seed)
    coords = []
    for centro in ((0.0, 0.0), tuple(rng.uniform(-0.4, 0.4, size=2))):
        angulos = rng.uniform(0.0, 2 * math.pi, size=n)
        radios = 0.5 * (rng.uniform(0.0, 1.0, size=n) ** 0.5)
        coords.extend(
            (centro[0] + r * math.cos(t), centro[1] + r * math.sin(t)) for r, t in zip(radios, angulos)
        )
    return PointSet.from_coords(coords), list(range(n)), list(range(n, 2 * n))


def _sin_traslapes(ps, partition):
    envolventes = [convex_hull([ps[i] for i in parte]) for parte in partition.parts]
    return not any(
        overlaps(a, b) for a, b in combinations(envolventes, 2)
        if not a.is_degenerate and not b.is_degenerate
    )


class TestPsi:
    """Tests para el potencial Psi."""

    def test_cuadrado(self):
        """Test de Psi de un cuadrado de lado 0.5."""
        ps = PointSet.from_coords([(0, 0), (0.5, 0), (0.5, 0.5), (0, 0.5)])

        assert psi(CliquePartition(parts=[[0, 1, 2, 3]]), ps) == pytest.approx(2.0)

    def test_singletons(self):
        """Test de Psi cero para partes de un punto."""
        ps = PointSet.from_coords([(0, 0), (3, 3)])

        assert psi(CliquePartition(parts=[[0], [1]]), ps) == 0.0

    def test_segmento(self):
        """Test de Psi de una parte de dos puntos (dos veces la distancia)."""
        ps = PointSet.from_coords([(0, 0), (0.6, 0)])

        assert psi(CliquePartition(parts=[[0, 1]]), ps) == pytest.approx(1.2)


class TestIncompatibilityGraph:
    """Tests para el grafo de incompatibilidad."""

    def test_antiparalelas(self):
        """Test de aristas disjuntas con extremos alternados."""
        g = IncompatibilityGraph(k=2, edges=[(0, 0), (1, 1)], blue_members=[[], []], red_members=[[], []])

        assert g.is_antiparallel((0, 0), (1, 1))
        assert g.has_antiparallel_pair()

    def test_no_alternan(self):
        """Test de aristas disjuntas sin alternancia de colores."""
        g = IncompatibilityGraph(k=3, edges=[(0, 2), (1, 1)], blue_members=[[]] * 3, red_members=[[]] * 3)

        assert not g.is_antiparallel((0, 2), (1, 1))

    def test_aristas_cruzadas(self):
        """Test de aristas que se cruzan."""
        g = IncompatibilityGraph(k=3, edges=[(0, 1), (1, 2)], blue_members=[[]] * 3, red_members=[[]] * 3)

        assert not g.is_antiparallel((0, 1), (1, 2))

    def test_emparejamiento_perfecto(self):
        """Test del emparejamiento b_i r_(i + k//2) con k = 3."""
        g = IncompatibilityGraph(k=3, edges=[(2, 0), (0, 1), (1, 2)], blue_members=[[]] * 3, red_members=[[]] * 3)

        assert g.edges == [(0, 1), (1, 2), (2, 0)]
        assert g.is_perfect_crossing_matching()
        assert g.isolated_vertices() == []
        assert not g.has_antiparallel_pair()

    def test_k_par_no_es_emparejamiento(self):
        """Test de k par."""
        g = IncompatibilityGraph(k=2, edges=[(0, 1), (1, 0)], blue_members=[[], []], red_members=[[], []])

        assert not g.is_perfect_crossing_matching()

    def test_vertices_aislados(self):
        """Test de vértices aislados, azules primero."""
        g = IncompatibilityGraph(k=2, edges=[(0, 0)], blue_members=[[], []], red_members=[[], []])

        assert g.isolated_vertices() == [("blue", 1), ("red", 1)]

    def test_arista_fuera_de_rango(self):
        """Test de arista con índice fuera de rango."""
        with pytest.raises(ValueError, match="Arista fuera de rango"):
            IncompatibilityGraph(k=1, edges=[(0, 1)], blue_members=[[]], red_members=[[]])


class TestMovimientos:
    """Tests para los movimientos locales sobre la cruz."""

    def test_grafo_sin_aristas(self):
        """Test de cruz sin pares incompatibles."""
        ps, dec = _cruz()
        g = UncrossService.build_incompatibility_graph(C, D, ps, dec)

        assert dec.k == 2
        assert g.edges == []
        assert sorted(len(m) for m in g.blue_members) == [2, 2]

    def test_petalo_aislado(self):
        """Test de movimiento de un pétalo aislado con descenso de Psi."""
        ps, dec = _cruz()
        g = UncrossService.build_incompatibility_graph(C, D, ps, dec)
        nuevo_c, nuevo_d = UncrossService.isolated_petal_move(C, D, ps, g, dec)
        antes = psi(CliquePartition(parts=[C, D]), ps)

        assert len(nuevo_c) == 2
        assert sorted(nuevo_c + nuevo_d) == list(range(8))
        assert psi(CliquePartition(parts=[nuevo_c, nuevo_d]), ps) < antes

    def test_sin_vertices_aislados(self):
        """Test de grafo sin vértices aislados."""
        ps, dec = _cruz()
        g = IncompatibilityGraph(k=1, edges=[(0, 0)], blue_members=[[0]], red_members=[[4]])

        with pytest.raises(NoIsolatedPetalError, match="no tiene vértices aislados"):
            UncrossService.isolated_petal_move(C, D, ps, g, dec)

    def test_corte_sin_emparejamiento(self):
        """Test de corte por cuerda sobre un grafo que no es el emparejamiento cruzado."""
        ps, dec = _cruz()
        g = UncrossService.build_incompatibility_graph(C, D, ps, dec)

        with pytest.raises(MatchingStructureError, match="emparejamiento cruzado perfecto"):
            UncrossService.halving_cut_move(C, D, ps, g, dec)

    def test_corte_con_cruces_en_la_misma_arista(self):
        """Test de corte con k = 1 cuya recta contiene una arista de P."""
        ps = PointSet.from_coords(MUESCA)
        dec = petal_decomposition(convex_hull([ps[i] for i in C_MUESCA]), convex_hull([ps[i] for i in D_MUESCA]))
        g = UncrossService.build_incompatibility_graph(C_MUESCA, D_MUESCA, ps, dec)

        assert dec.k == 1
        assert g.edges == [(0, 0)]
        assert g.is_perfect_crossing_matching()

        a, b = UncrossService.halving_cut_move(C_MUESCA, D_MUESCA, ps, g, dec)

        assert sorted([sorted(a), sorted(b)]) == [[0, 1, 2, 3, 6], [4, 5]]
        assert psi(CliquePartition(parts=[a, b]), ps) == pytest.approx(2.8)
        assert psi(CliquePartition(parts=[C_MUESCA, D_MUESCA]), ps) == pytest.approx(2.4 + 0.2 + 2 * math.sqrt(0.5))

    def test_lados_del_corte(self):
        """Test de la repartición por pétalos con vértices de P sobre la recta."""
        ps = PointSet.from_coords(MUESCA)
        dec = petal_decomposition(convex_hull([ps[i] for i in C_MUESCA]), convex_hull([ps[i] for i in D_MUESCA]))
        g = UncrossService.build_incompatibility_graph(C_MUESCA, D_MUESCA, ps, dec)
        a, b = UncrossService.cut_sides(dec.crossings[0], dec.crossings[1], C_MUESCA, D_MUESCA, ps, g, dec)
        c, d = UncrossService.cut_sides(dec.crossings[1], dec.crossings[0], C_MUESCA, D_MUESCA, ps, g, dec)

        assert sorted(a + b) == list(range(7))
        assert (sorted(a), sorted(b)) == (sorted(d), sorted(c))

    def test_corte_del_hexagrama(self):
        """Test de corte con k = 3 sobre dos triángulos equiláteros entrelazados."""
        ps, c, d = _hexagrama()
        dec = petal_decomposition(convex_hull([ps[i] for i in c]), convex_hull([ps[i] for i in d]))
        g = UncrossService.build_incompatibility_graph(c, d, ps, dec)

        assert dec.k == 3
        assert len(g.edges) == 3
        assert g.is_perfect_crossing_matching()
        assert g.isolated_vertices() == []

        a, b = UncrossService.halving_cut_move(c, d, ps, g, dec)

        assert sorted(a + b) == list(range(6))
        assert len(a) == len(b) == 3
        for lado in (a, b):
            assert set(lado) & set(c) and set(lado) & set(d)
            assert all(ps[x].dist2(ps[y]) <= 1.0 for x, y in combinations(lado, 2))
        assert psi(CliquePartition(parts=[a, b]), ps) < psi(CliquePartition(parts=[c, d]), ps)

    def test_sin_aristas_antiparalelas(self):
        """Test de ausencia de aristas antiparalelas entre pétalos de dos cliques aleatorios."""
        probados = 0
        for seed in range(60):
            ps, c, d = _par_de_cliques(seed)
            p, q = convex_hull([ps[i] for i in c]), convex_hull([ps[i] for i in d])
            if not overlaps(p, q):
                continue
            try:
                dec = petal_decomposition(p, q)
            except (ContainmentError, GeneralPositionError):
                continue
            g = UncrossService.build_incompatibility_graph(c, d, ps, dec)
            probados += 1

            assert not g.has_antiparallel_pair()

        assert probados >= 20

    def test_reparticion_exhaustiva(self):
        """Test de la repartición de Psi mínimo."""
        ps, _ = _cruz()
        resultado = UncrossService.split_search(C, D, ps)
        a, b = resultado

        assert sorted(a + b) == list(range(8))
        assert psi(CliquePartition(parts=[a, b]), ps) < psi(CliquePartition(parts=[C, D]), ps)

    def test_reparticion_demasiado_grande(self):
        """Test de la repartición exhaustiva por encima del límite."""
        rng = make_rng(0)
        ps = PointSet.from_coords(rng.uniform(0.0, 0.5, size=(17, 2)).tolist())

        with pytest.raises(UncrossError, match="no admite 17 puntos"):
            UncrossService.split_search(list(range(9)), list(range(9, 17)), ps)


class TestUncross:
    """Tests para el descruce completo."""

    def test_par_traslapado(self):
        """Test del primer par de envolventes traslapadas."""
        ps, _ = _cruz()
        extra = PointSet.from_coords(CRUZ + [(5, 5), (5.5, 5), (5, 5.5)])

        assert UncrossService.find_overlapping_pair(CliquePartition(parts=[C, D]), ps) == (0, 1)
        assert UncrossService.find_overlapping_pair(CliquePartition(parts=[[8, 9, 10], C, D]), extra) == (1, 2)
        assert UncrossService.find_overlapping_pair(CliquePartition(parts=[[8, 9, 10], C + D]), extra) is None

    def test_cruz(self):
        """Test del descruce de la cruz con un solo movimiento."""
        ps, _ = _cruz()
        reporte = UncrossService.uncross_report(CliquePartition(parts=[C, D]), ps)

        assert reporte.partition.size == 2
        assert reporte.iterations == 1
        assert reporte.moves[0].kind == TipoMovimiento.PETALO_AISLADO
        assert reporte.psi_trace[1] < reporte.psi_trace[0]
        assert _sin_traslapes(ps, reporte.partition)

    def test_sin_traslapes(self):
        """Test de partición ya descruzada (sin movimientos)."""
        ps = PointSet.from_coords([(0, 0), (0.5, 0), (0, 0.5), (3, 0), (3.5, 0), (3, 0.5)])
        reporte = UncrossService.uncross_report(CliquePartition(parts=[[0, 1, 2], [3, 4, 5]]), ps)

        assert reporte.iterations == 0
        assert reporte.psi_trace == [pytest.approx(psi(CliquePartition(parts=[[0, 1, 2], [3, 4, 5]]), ps))]

    def test_particiones_adversariales(self):
        """Test de conteo, validez y descenso estricto de Psi en particiones adversariales."""
        for seed in range(30):
            rng = make_rng(seed)
            ps = PointSet.from_coords(rng.uniform(0.0, 2.0, size=(15, 2)).tolist())
            g = build_graph(ps)
            inicial = UncrossService.adversarial_partition(ps, 3)
            reporte = UncrossService.uncross_report(inicial, ps)

            assert reporte.partition.size == inicial.size
            assert validate_partition(g, reporte.partition) == []
            assert _sin_traslapes(ps, reporte.partition)
            assert all(b < a for a, b in zip(reporte.psi_trace, reporte.psi_trace[1:]))

    @pytest.mark.slow
    def test_particiones_adversariales_completo(self):
        """Test de descruce sobre 100 semillas de particiones adversariales."""
        for seed in range(100):
            rng = make_rng(seed)
            ps = PointSet.from_coords(rng.uniform(0.0, 2.0, size=(15, 2)).tolist())
            inicial = UncrossService.adversarial_partition(ps, 3)
            reporte = UncrossService.uncross_report(inicial, ps)

            assert reporte.partition.size == inicial.size
            assert validate_partition(build_graph(ps), reporte.partition) == []
            assert _sin_traslapes(ps, reporte.partition)
            assert all(b < a for a, b in zip(reporte.psi_trace, reporte.psi_trace[1:]))

    def test_corte_en_el_descruce(self):
        """Test de descruce del cuadrado con muesca por un corte de cuerda."""
        ps = PointSet.from_coords(MUESCA)
        reporte = UncrossService.uncross_report(CliquePartition(parts=[C_MUESCA, D_MUESCA]), ps)

        assert reporte.iterations == 1
        assert reporte.moves[0].kind == TipoMovimiento.CORTE_CUERDA
        assert sorted(sorted(p) for p in reporte.partition.parts) == [[0, 1, 2, 3, 6], [4, 5]]
        assert _sin_traslapes(ps, reporte.partition)

    def test_falla_del_corte_se_propaga(self, monkeypatch):
        """Test de que una falla del corte no se sustituye por la repartición exhaustiva."""
        def sin_cuerda(*args):
            raise ChordNotFoundError("Ninguna cuerda de I produce dos cliques")

        monkeypatch.setattr(UncrossService, "halving_cut_move", staticmethod(sin_cuerda))
        ps = PointSet.from_coords(MUESCA)

        with pytest.raises(ChordNotFoundError, match="Ninguna cuerda"):
            UncrossService.uncross_report(CliquePartition(parts=[C_MUESCA, D_MUESCA]), ps)

    def test_envoltorio(self):
        """Test de uncross_partition como atajo del reporte."""
        ps, _ = _cruz()

        assert uncross_partition(CliquePartition(parts=[C, D]), ps).size == 2

    def test_particion_adversarial(self):
        """Test de la partición adversarial: cliques que cubren todo."""
        rng = make_rng(5)
        ps = PointSet.from_coords(rng.uniform(0.0, 3.0, size=(20, 2)).tolist())
        cp = UncrossService.adversarial_partition(ps, 4)

        assert validate_partition(build_graph(ps), cp) == []
