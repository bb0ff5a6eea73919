import json

import pytest
from loguru import logger

from src.config.settings import settings
from src.models import PointSet
from src.services.width_selection import select_width
from src.utils.io_utils import read_points, write_points
from udg_mcp import main


@pytest.fixture(autouse=True)
def limpiar_logger():
    yield
    logger.remove()


@pytest.fixture
def puntos(tmp_path):
    ruta = tmp_path / "puntos.txt"
    write_points(PointSet.from_coords([(0, 0), (0.5, 0), (3, 3), (3.4, 3.2)]), ruta)
    return ruta


class TestCLI:
    """Tests para los subcomandos y códigos de salida."""

    def test_convergentes(self, capsys):
        """Test de la tabla de convergentes."""
        assert main(["convergents", "--t-max", "3", "--eps", "0.01"]) == 0
        data = json.loads(capsys.readouterr().out)

        assert [f["p"] for f in data["convergents"]] == [2, 13, 28, 181]
        assert data["selected"]["d"] == "84/97"

    @pytest.mark.parametrize("opcion", ["--t", "--t-max"])
    def test_convergentes_por_indice(self, capsys, opcion):
        """Test de --t y su alias --t-max."""
        assert main(["convergents", opcion, "2"]) == 0
        data = json.loads(capsys.readouterr().out)

        assert [f["p"] for f in data["convergents"]] == [2, 13, 28]
        assert "selected" not in data

    @pytest.mark.parametrize("bandera,ancho", [
        ("--rational", dict),
        ("--irrational", str),
    ])
    def test_solve_variante_de_ancho(self, capsys, bandera, ancho):
        """Test de --rational e --irrational en solve."""
        args = ["solve", "--algo", "strips-rand", "--n", "12", "--width", "3", "--height", "3",
                "--eps", "0.3", "--seed", "4", bandera]

        assert main(args) == 0
        data = json.loads(capsys.readouterr().out)

        assert isinstance(data["width"], ancho)
        if ancho is dict:
            assert "/" in data["width"]["d"]
        else:
            assert data["width"] == "sqrt3/2"

    def test_variantes_excluyentes(self):
        """Test de --rational junto con --irrational."""
        with pytest.raises(SystemExit) as info:
            main(["solve", "--algo", "strips-rand", "--n", "5", "--rational", "--irrational"])

        assert info.value.code == 1

    def test_bench_racional(self, capsys):
        """Test de --rational en el barrido de razones."""
        assert main(["bench", "--kind", "ratio", "--algo", "strips-rand", "--trials", "2", "--n", "8",
                     "--rounds", "2", "--rational"]) == 0
        data = json.loads(capsys.readouterr().out)
        rw = select_width(0.3)

        assert data["bound"] == pytest.approx(rw.p / rw.q + 0.3)

    def test_solve_exacto(self, capsys):
        """Test de solve exacto sobre una instancia generada."""
        assert main(["solve", "--algo", "exact", "--n", "8", "--width", "3", "--height", "3", "--seed", "2"]) == 0
        data = json.loads(capsys.readouterr().out)

        assert data["algorithm"] == "exact"
        assert data["n"] == 8
        assert data["ratio"] == 1.0

    def test_solve_desde_archivo(self, capsys, puntos, tmp_path):
        """Test de solve sobre un archivo con salida a JSON."""
        salida = tmp_path / "r.json"

        assert main(["solve", "--algo", "strips3", "--in", str(puntos), "--out", str(salida)]) == 0
        assert json.loads(salida.read_text(encoding="utf-8"))["num_cliques"] == 2

    def test_gen_y_solve(self, tmp_path):
        """Test de gen a archivo y solve del archivo generado."""
        ruta = tmp_path / "gen.txt"

        assert main(["gen", "--n", "10", "--seed", "1", "--out", str(ruta)]) == 0
        assert main(["solve", "--algo", "strips-rand", "--in", str(ruta), "--eps", "0.5"]) == 0

    def test_salida_en_output_dir(self, monkeypatch, tmp_path):
        """Test de --out sin directorio escrito en output_dir."""
        monkeypatch.setattr(settings, "output_dir", str(tmp_path / "salidas"))

        assert main(["gen", "--n", "5", "--seed", "2", "--out", "gen.txt"]) == 0
        assert len(read_points(tmp_path / "salidas" / "gen.txt")) == 5

    def test_verify(self, capsys, puntos, tmp_path):
        """Test de verify con partición válida e inválida."""
        valida = tmp_path / "valida.json"
        valida.write_text("[[0, 1], [2, 3]]", encoding="utf-8")
        invalida = tmp_path / "invalida.json"
        invalida.write_text("[[0, 2], [1, 3]]", encoding="utf-8")

        assert main(["verify", "--in", str(puntos), "--partition", str(valida)]) == 0
        assert main(["verify", "--in", str(puntos), "--partition", str(invalida)]) == 2

    def test_uncross(self, capsys, puntos):
        """Test de uncross con la partición adversaria."""
        assert main(["uncross", "--in", str(puntos)]) == 0
        data = json.loads(capsys.readouterr().out)

        assert sorted(i for parte in data["cliques"] for i in parte) == [0, 1, 2, 3]
        assert len(data["psi_trace"]) == len(data["moves"]) + 1

    def test_bench_split(self, capsys):
        """Test del barrido de cortes."""
        assert main(["bench", "--kind", "split", "--bs", "0.9"]) == 0
        data = json.loads(capsys.readouterr().out)

        assert data["split"][0]["b"] == 0.9

    def test_argumento_invalido(self):
        """Test de error de uso del parser."""
        with pytest.raises(SystemExit) as info:
            main(["solve", "--algo", "magia", "--n", "5"])

        assert info.value.code == 1

    def test_version(self, capsys):
        """Test de --version."""
        with pytest.raises(SystemExit) as info:
            main(["--version"])

        assert info.value.code == 0
        assert "UDG-MCP" in capsys.readouterr().out

    def test_sin_instancia(self):
        """Test de solve sin --in ni --n."""
        assert main(["solve", "--algo", "exact"]) == 1

    def test_eps_fuera_de_rango(self):
        """Test de eps fuera de (0, 1)."""
        assert main(["solve", "--algo", "strips-rand", "--n", "5", "--eps", "1.5"]) == 1

    def test_archivo_inexistente(self, tmp_path):
        """Test de archivo de puntos inexistente."""
        assert main(["solve", "--algo", "exact", "--in", str(tmp_path / "nada.txt")]) == 2

    def test_oraculo_excedido(self):
        """Test de solve exacto por encima de la capacidad."""
        assert main(["solve", "--algo", "exact", "--n", "20"]) == 3
