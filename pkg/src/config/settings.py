from pydantic import BaseSettings


class Settings(BaseSettings):
    """Configuración de la aplicación UDG-MCP."""

    # Configuración de la aplicación
    app_name: str = "UDG-MCP - Partición mínima en cliques"
    app_version: str = "1.0.0"
    app_description: str = "Algoritmos exactos y aproximados de partición en cliques para grafos de disco unitario"

    # Configuración de logging
    log_level: str = "INFO"
    log_format: str = "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"

    # Paralelismo (UDGMCP_THREADS)
    threads: int = 1

    # Capacidades de los solvers exactos
    oracle_max_n: int = 18
    enum_max_points: int = 10
    enum_q_limit: int = 3
    split_search_max_points: int = 16

    # Descruce de envolventes
    uncross_iteration_factor: int = 10

    # Monte-Carlo
    mc_trials: int = 10000

    # Directorio para los nombres de archivo de --out sin directorio
    output_dir: str = "output"

    class Config:
        env_prefix = "UDGMCP_"
        case_sensitive = False


# Instancia global de configuración
settings = Settings()
