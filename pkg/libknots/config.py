import pathlib
import os

from pydantic import BaseModel

from libknots.util import logger


class NumericsConfig(BaseModel):
    # isolating intervals of Alexander roots are refined below 2^-bits
    rootPrecisionBits: int = 40
    # eigenvalues below 2^-bits * ||M||_1 count as a near-singular sample
    singularToleranceBits: int = 40
    resampleAttempts: int = 3
    # Hermitian forms up to this size are signed with exact arithmetic
    exactSizeLimit: int = 48


class CatalogConfig(BaseModel):
    path: str = ""


class OutputConfig(BaseModel):
    jsonOutput: bool = False
    svgWidth: int = 640
    svgHeight: int = 240


class Config(BaseModel):
    numerics: NumericsConfig = NumericsConfig()
    catalog: CatalogConfig = CatalogConfig()
    output: OutputConfig = OutputConfig()
    persistConfig: bool = False


CONFIG_DEFAULT_DIR_PATH = pathlib.Path.home() / ".config" / "knots"
CONFIG_DEFAULT_FILE_PATH = CONFIG_DEFAULT_DIR_PATH / "config.json"
CONFIG_FILE_PATH = pathlib.Path(
    os.environ.get("KNOTS_CONFIG", str(CONFIG_DEFAULT_FILE_PATH))
)
BUILTIN_CATALOG_PATH = pathlib.Path(__file__).parent / "data" / "catalog.csv"


def catalog_path(override: str | None = None) -> pathlib.Path:
    """Resolve the catalog file: explicit argument, KNOT_CATALOG, config, builtin."""
    for candidate in (override, os.environ.get("KNOT_CATALOG"), settings.catalog.path):
        if candidate:
            return pathlib.Path(candidate).expanduser()
    return BUILTIN_CATALOG_PATH


def save_config(config_path: pathlib.Path | None = None) -> None:
    config_path = config_path or CONFIG_FILE_PATH
    if config_path.is_dir():
        logger.error(f"Failed to save config: {config_path} is a directory")
        return
    try:
        if not config_path.parent.exists():
            config_path.parent.mkdir(parents=True, exist_ok=True)

        config_path.write_text(settings.model_dump_json(indent=2))
    except OSError as e:
        logger.error(f"Failed to save config: {e}")


settings = Config()

if CONFIG_FILE_PATH.exists() and not CONFIG_FILE_PATH.is_dir():
    try:
        settings = Config.model_validate_json(CONFIG_FILE_PATH.read_text())
    except Exception as e:
        logger.error(f"Failed to load config: {e}")
