from fractions import Fraction

import pytest

from src.config.constants import Algoritmo
from src.exceptions import PointOutsideStripError
from src.models import (
    CellGuess, CliquePartition, CliquePartitionBase, ConvexPolygon, Convergent, ExperimentConfig,
    GridSystem, InstanceSpec, Point, PointSet, RationalWidth, RunResult, StripInstance,
    StripSystem, UnitDiskGraph
)


class TestPoint:
    """Tests para los modelos Point y PointSet."""

    def test_punto_valido(self):
        """Test de punto válido."""
        p = Point(x=0.25, y=1.5, id=0)

        assert p.xy() == (0.25, 1.5)
        assert p.dist2(Point(x=0.25, y=0.5)) == pytest.approx(1.0)

    def test_coordenada_no_finita(self):
        """Test de coordenada no finita."""
        with pytest.raises(ValueError, match="Las coordenadas deben ser finitas"):
            Point(x=float("nan"), y=0.0)

    def test_indices_densos(self):
        """Test de PointSet con índices que no son 0..n-1."""
        with pytest.raises(ValueError, match="Los índices deben ser densos"):
            PointSet(points=[Point(x=0.0, y=0.0, id=1)])

    def test_from_coords_y_subset(self):
        """Test de construcción desde coordenadas y extracción reindexada."""
        ps = PointSet.from_coords([(0, 0), (1, 1), (2, 2)])
        sub = ps.subset([2, 0])

        assert len(ps) == 3
        assert ps[1].id == 1
        assert sub.coords() == [(2.0, 2.0), (0.0, 0.0)]
        assert [p.id for p in sub.points] == [0, 1]


class TestCliquePartition:
    """Tests para CliquePartition y su base laxa."""

    def test_particion_valida(self):
        """Test de partición con partes ordenadas internamente."""
        cp = CliquePartition(parts=[[2, 0], [1]])

        assert cp.parts == [[0, 2], [1]]
        assert cp.size == 2
        assert cp.covered() == [0, 1, 2]

    def test_parte_vacia(self):
        """Test de parte vacía."""
        with pytest.raises(ValueError, match="La parte 0 está vacía"):
            CliquePartition(parts=[[]])

    def test_vertice_repetido(self):
        """Test de vértice en dos partes."""
        with pytest.raises(ValueError, match="El vértice 0 aparece en más de una parte"):
            CliquePartition(parts=[[0], [0, 1]])

    def test_base_acepta_entradas_invalidas(self):
        """Test de la base laxa con partes vacías y repetidas."""
        cp = CliquePartitionBase(parts=[[], [0, 0]])

        assert cp.parts == [[], [0, 0]]

    def test_from_labels(self):
        """Test de construcción por etiquetas."""
        cp = CliquePartition.from_labels([1, 0, 1])

        assert cp.parts == [[1], [0, 2]]

    def test_from_labels_con_ids(self):
        """Test de construcción por etiquetas con índices globales."""
        cp = CliquePartition.from_labels([0, 0, 1], ids=[7, 3, 5])

        assert cp.canonical() == [[3, 7], [5]]


class TestUnitDiskGraph:
    """Tests para el modelo UnitDiskGraph."""

    def test_grafo_valido(self):
        """Test de grafo con filas ordenadas y bitsets."""
        g = UnitDiskGraph(n=3, neighbors=[[2, 1], [0], [0]])

        assert g.neighbors == [[1, 2], [0], [0]]
        assert g.rows == (0b110, 0b001, 0b001)
        assert g.adjacent(0, 2)
        assert not g.adjacent(1, 2)
        assert list(g.edges()) == [(0, 1), (0, 2)]
        assert g.edge_count() == 2

    def test_adyacencia_no_simetrica(self):
        """Test de adyacencia no simétrica."""
        with pytest.raises(ValueError, match="Adyacencia no simétrica"):
            UnitDiskGraph(n=2, neighbors=[[1], []])

    def test_lazo(self):
        """Test de lazo."""
        with pytest.raises(ValueError, match="tiene un lazo"):
            UnitDiskGraph(n=1, neighbors=[[0]])

    def test_subgrafo_inducido(self):
        """Test de subgrafo inducido reindexado."""
        g = UnitDiskGraph(n=3, neighbors=[[1, 2], [0], [0]])
        h = g.induced([2, 0])

        assert h.n == 2
        assert h.neighbors == [[1], [0]]


class TestConvexPolygon:
    """Tests para el modelo ConvexPolygon."""

    def test_vertice_duplicado(self):
        """Test de vértice duplicado."""
        with pytest.raises(ValueError, match="Vértice duplicado"):
            ConvexPolygon(vertices=[Point(x=0, y=0), Point(x=0, y=0)])

    def test_degenerado(self):
        """Test de segmento degenerado."""
        poly = ConvexPolygon(vertices=[Point(x=0, y=0), Point(x=1, y=0)])

        assert poly.is_degenerate
        assert poly.bounds() == (0.0, 0.0, 1.0, 0.0)


class TestStripModels:
    """Tests para Convergent, RationalWidth, StripInstance y StripSystem."""

    def test_convergente_no_coprimo(self):
        """Test de convergente con p y q no coprimos."""
        with pytest.raises(ValueError, match="no son coprimos"):
            Convergent(t=1, p=26, q=12)

    def test_ancho_racional(self):
        """Test de ancho racional desde un convergente."""
        rw = RationalWidth.from_convergent(Convergent(t=3, p=181, q=84))

        assert rw.d == Fraction(84, 97)
        assert rw.label() == "84/97"

    def test_ancho_racional_incoherente(self):
        """Test de ancho que no coincide con q/(p - q)."""
        with pytest.raises(ValueError, match="no coincide"):
            RationalWidth(t=1, p=13, q=6, d=Fraction(3, 4))

    def test_ancho_desde_fraccion(self):
        """Test de ancho arbitrario 4/5."""
        rw = RationalWidth.from_fraction(Fraction(4, 5))

        assert (rw.p, rw.q, rw.t) == (9, 4, -1)

    def test_punto_fuera_de_franja(self):
        """Test de punto fuera de la franja."""
        ps = PointSet.from_coords([(0.0, 0.2), (1.0, 0.9)])

        with pytest.raises(PointOutsideStripError, match="fuera de la franja"):
            StripInstance(points=ps, width=0.8)

    @pytest.mark.parametrize("y_base,y", [(0.0, 0.75), (2.0, 2.75), (0.25, 1.0)])
    def test_borde_superior_abierto(self, y_base, y):
        """Test de punto exactamente en y_base + width (franja semiabierta)."""
        ps = PointSet.from_coords([(0.0, y_base), (0.5, y)])

        with pytest.raises(PointOutsideStripError, match="fuera de la franja"):
            StripInstance(points=ps, width=0.75, y_base=y_base)

    def test_borde_inferior_cerrado(self):
        """Test de punto exactamente en y_base."""
        inst = StripInstance(points=PointSet.from_coords([(0.0, 2.0), (0.5, 2.5)]), width=0.75, y_base=2.0)

        assert len(inst.points) == 2

    def test_desplazamiento_fuera_de_rango(self):
        """Test de desplazamiento igual al ancho."""
        with pytest.raises(ValueError, match="El desplazamiento"):
            StripSystem(width=1.0, shift=1.0)

    def test_indices_de_franja(self):
        """Test de índices de franja con ancho racional exacto."""
        rw = RationalWidth.from_fraction(Fraction(1, 2))
        sys = StripSystem.with_rational(rw, shift=0.25)

        assert sys.strip_index(0.25) == 0
        assert sys.strip_index(0.75) == 1
        assert sys.strip_index(0.0) == -1
        assert sys.strip_base(1) == pytest.approx(0.75)
        assert not sys.is_idealized
        assert StripSystem.irrational().width_label() == "sqrt3/2"


class TestGridModels:
    """Tests para GridSystem y CellGuess."""

    def test_k_invalido(self):
        """Test de lado de celda inválido."""
        with pytest.raises(ValueError, match="El lado de celda k debe ser >= 1"):
            GridSystem(k=0)

    def test_desplazamiento_invalido(self):
        """Test de desplazamiento fuera de [0, k)."""
        with pytest.raises(ValueError, match="shift_x"):
            GridSystem(k=3, shift_x=3.0)

    def test_celdas(self):
        """Test de agrupación de puntos por celda."""
        grid = GridSystem(k=2, shift_x=0.5, shift_y=0.0)
        ps = PointSet.from_coords([(0.0, 0.0), (1.0, 1.0), (2.6, 0.1)])

        assert grid.cells(ps) == {(-1, 0): [0], (0, 0): [1], (1, 0): [2]}

    def test_conjetura_representantes(self):
        """Test de conjetura con número de representantes incorrecto."""
        with pytest.raises(ValueError, match="Se esperaban 2 representantes"):
            CellGuess(q=2, representatives=[0])

    def test_conjetura_separadores(self):
        """Test de conjetura sin separador para una arista."""
        with pytest.raises(ValueError, match="exactamente un separador"):
            CellGuess(q=2, representatives=[0, 1], proximity_edges=[(0, 1)])

    def test_grados_de_proximidad(self):
        """Test de grados del grafo de proximidad."""
        ps = PointSet.from_coords([(0, 0), (1.5, 0), (3.0, 0)])
        aristas = CellGuess.proximity_edges_for(ps, [0, 1, 2])
        guess = CellGuess(q=3, representatives=[0, 1, 2], proximity_edges=aristas, separators=[(0, 1), (1, 2)])

        assert aristas == [(0, 1), (1, 2)]
        assert guess.degrees() == [1, 2, 1]
        assert guess.within_proximity_bounds()


class TestExperimentModels:
    """Tests para InstanceSpec, ExperimentConfig y RunResult."""

    def test_n_negativo(self):
        """Test de número de puntos negativo."""
        with pytest.raises(ValueError, match="no puede ser negativo"):
            InstanceSpec(n=-1)

    def test_origen_requerido(self):
        """Test de configuración sin origen de instancia."""
        with pytest.raises(ValueError, match="Indique un archivo de puntos"):
            ExperimentConfig(algorithm="exact")

    def test_eps_fuera_de_rango(self):
        """Test de eps fuera de (0, 1)."""
        with pytest.raises(ValueError, match="eps debe estar en"):
            ExperimentConfig(algorithm="strips-rand", instance=InstanceSpec(n=5), eps=1.5)

    def test_resultado_conteo(self):
        """Test de resultado con conteo inconsistente."""
        with pytest.raises(ValueError, match="num_cliques no coincide"):
            RunResult(algorithm=Algoritmo.EXACT, n=2, num_cliques=2, cliques=[[0, 1]])

    def test_resultado_json(self):
        """Test de claves del resultado serializado."""
        r = RunResult(algorithm=Algoritmo.STRIPS3, n=2, num_cliques=1, cliques=[[0, 1]], width="sqrt3/2")
        data = r.to_json_dict()

        assert list(data) == ["algorithm", "n", "num_cliques", "cliques", "optimal", "ratio",
                              "seed", "rounds", "width", "elapsed_ms"]
        assert data["algorithm"] == "strips3"
        assert data["optimal"] is None
