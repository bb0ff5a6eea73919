import json

import pytest

from src.config.constants import Algoritmo
from src.config.settings import settings
from src.exceptions import PartitionFileError, PointFileError
from src.models import PointSet, RunResult
from src.utils.io_utils import (
    format_coord, parse_points, read_partition, read_points, resolve_output, result_to_json, write_points,
    write_result
)
from src.utils.random_utils import make_rng


class TestPointFiles:
    """Tests para lectura y escritura de archivos de puntos."""

    def test_escritura_y_lectura_exactas(self, tmp_path):
        """Test de coordenadas idénticas tras escribir y leer."""
        coords = make_rng(5).uniform(-10.0, 10.0, size=(30, 2)).tolist()
        ps = PointSet.from_coords(coords)
        ruta = tmp_path / "sub" / "puntos.txt"
        write_points(ps, ruta, header="n=30")

        assert read_points(ruta).coords() == ps.coords()
        assert ruta.read_text(encoding="utf-8").startswith("# n=30\n")

    def test_comentarios_y_lineas_vacias(self):
        """Test de comentarios y líneas en blanco ignorados."""
        ps = parse_points(["# encabezado", "", "0 0", "  1.5   2.5  # comentario", "\t", "3e-1 -4"])

        assert ps.coords() == [(0.0, 0.0), (1.5, 2.5), (0.3, -4.0)]

    @pytest.mark.parametrize("linea,mensaje", [
        ("1.0", "se esperaban 2 coordenadas"),
        ("1 2 3", "se esperaban 2 coordenadas"),
        ("1 a", "coordenada no numérica"),
        ("1 inf", "coordenada no finita"),
        ("nan 0", "coordenada no finita"),
    ])
    def test_linea_invalida(self, linea, mensaje):
        """Test de líneas mal formadas con número de línea."""
        with pytest.raises(PointFileError, match=f"Línea 2: {mensaje}") as info:
            parse_points(["0 0", linea])

        assert info.value.linea == 2

    def test_archivo_inexistente(self, tmp_path):
        """Test de archivo que no existe."""
        with pytest.raises(PointFileError, match="no existe"):
            read_points(tmp_path / "nada.txt")

    def test_archivo_vacio(self, tmp_path):
        """Test de archivo sin puntos."""
        ruta = tmp_path / "vacio.txt"
        ruta.write_text("# solo comentarios\n", encoding="utf-8")

        assert len(read_points(ruta)) == 0

    def test_formato_17_cifras(self):
        """Test de formato con 17 cifras significativas."""
        assert format_coord(0.1) == "0.10000000000000001"
        assert float(format_coord(1 / 3)) == 1 / 3


class TestResultFiles:
    """Tests para los archivos de resultados."""

    def test_json(self, tmp_path):
        """Test de resultado escrito como objeto JSON."""
        r = RunResult(algorithm=Algoritmo.EXACT, n=3, num_cliques=2, cliques=[[0, 1], [2]], optimal=2, ratio=1.0)
        ruta = tmp_path / "r.json"
        write_result(r, ruta)
        data = json.loads(ruta.read_text(encoding="utf-8"))

        assert data == json.loads(result_to_json(r))
        assert data["ratio"] == 1.0
        assert data["width"] is None

    def test_nombre_sin_directorio(self, monkeypatch, tmp_path):
        """Test de nombre de archivo ubicado en output_dir."""
        monkeypatch.setattr(settings, "output_dir", str(tmp_path / "salidas"))

        assert resolve_output("r.json") == tmp_path / "salidas" / "r.json"

    @pytest.mark.parametrize("ruta", ["resultados/r.json", "/tmp/r.json"])
    def test_ruta_con_directorio(self, ruta):
        """Test de rutas con directorio o absolutas sin cambios."""
        assert str(resolve_output(ruta)) == ruta


class TestPartitionFiles:
    """Tests para la lectura de particiones candidatas."""

    def test_lista_de_listas(self, tmp_path):
        """Test de partición como lista de listas."""
        ruta = tmp_path / "p.json"
        ruta.write_text("[[0, 1], [2]]", encoding="utf-8")

        assert read_partition(ruta).parts == [[0, 1], [2]]

    def test_objeto_de_resultado(self, tmp_path):
        """Test de partición tomada de la clave cliques."""
        ruta = tmp_path / "r.json"
        ruta.write_text(json.dumps({"algorithm": "exact", "cliques": [[2], [0, 1]]}), encoding="utf-8")

        assert read_partition(ruta).parts == [[2], [0, 1]]

    def test_partes_repetidas_se_aceptan(self, tmp_path):
        """Test de partición laxa (la validación ocurre después)."""
        ruta = tmp_path / "p.json"
        ruta.write_text("[[0, 0], []]", encoding="utf-8")

        assert read_partition(ruta).parts == [[0, 0], []]

    @pytest.mark.parametrize("contenido,mensaje", [
        ("{", "JSON inválido"),
        ('{"otra": 1}', "lista de listas"),
        ("[1, 2]", "lista de listas"),
        ("[[0, 1.5]]", "no enteros"),
        ("[[true]]", "no enteros"),
    ])
    def test_invalida(self, tmp_path, contenido, mensaje):
        """Test de archivos de partición mal formados."""
        ruta = tmp_path / "p.json"
        ruta.write_text(contenido, encoding="utf-8")

        with pytest.raises(PartitionFileError, match=mensaje):
            read_partition(ruta)

    def test_inexistente(self, tmp_path):
        """Test de archivo de partición inexistente."""
        with pytest.raises(PartitionFileError, match="no existe"):
            read_partition(tmp_path / "nada.json")
