import pytest

from src.config.constants import SQRT3_2, XI, ExitCode
from src.config.settings import Settings
from src.exceptions import (
    InstanceTooLargeError, InvalidPartitionError, MCPError, ParameterRangeError, PartitionFileError,
    PointFileError, StripWidthError
)


class TestSettings:
    """Tests para la configuración por variables de entorno."""

    def test_valores_por_defecto(self):
        """Test de valores por defecto."""
        s = Settings()

        assert s.threads == 1
        assert s.oracle_max_n == 18
        assert s.split_search_max_points == 16
        assert s.log_level == "INFO"
        assert s.output_dir == "output"

    def test_variables_de_entorno(self, monkeypatch):
        """Test de prefijo UDGMCP_ en las variables de entorno."""
        monkeypatch.setenv("UDGMCP_THREADS", "4")
        monkeypatch.setenv("UDGMCP_ORACLE_MAX_N", "12")
        monkeypatch.setenv("UDGMCP_OUTPUT_DIR", "resultados")

        s = Settings()

        assert s.threads == 4
        assert s.oracle_max_n == 12
        assert s.output_dir == "resultados"


class TestConstantes:
    """Tests para las constantes geométricas."""

    def test_xi(self):
        """Test de xi = 1 + 2/sqrt(3)."""
        assert XI == pytest.approx(2.1547005383792515)
        assert SQRT3_2 == pytest.approx(0.8660254037844386)


class TestExcepciones:
    """Tests para los códigos de salida de las excepciones."""

    @pytest.mark.parametrize("error,codigo", [
        (ParameterRangeError("x"), ExitCode.USO),
        (PointFileError("x", 3), ExitCode.ENTRADA),
        (PartitionFileError("x"), ExitCode.ENTRADA),
        (InstanceTooLargeError("x"), ExitCode.SOLVER),
        (StripWidthError("x"), ExitCode.SOLVER),
        (InvalidPartitionError("x"), ExitCode.SOLVER),
    ])
    def test_codigos(self, error, codigo):
        """Test del código de salida de cada error."""
        assert isinstance(error, MCPError)
        assert error.exit_code == codigo

    def test_linea_en_mensaje(self):
        """Test del número de línea en el mensaje."""
        e = PointFileError("coordenada no numérica", 7)

        assert str(e) == "Línea 7: coordenada no numérica"
        assert e.linea == 7
