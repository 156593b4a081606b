"""
Logging centralizzato di arbor

Fornisce:
- LoggerManager singleton: handler su file (rotazione) ed errori, console su stderr in dev
- Factory per logger di area: arbor.{core,solver,simulation,elimination,config,scripts}.<modulo>
- Decoratori log_performance / log_function_call e il context manager temporary_log_level
"""

import logging
import logging.config
import logging.handlers
import os
import sys
import time
from dataclasses import dataclass
from functools import wraps
from pathlib import Path
from typing import Callable, Dict, Optional

DEFAULT_LOG_FORMAT = "%(asctime)s | %(name)s | %(levelname)s | %(message)s"
DEFAULT_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

ROOT_NAME = 'arbor'
AREAS = ('core', 'solver', 'simulation', 'elimination', 'config', 'scripts')
MAIN_LOGGERS = [f'{ROOT_NAME}.{area}' for area in AREAS]

# Librerie rumorose in DEBUG
QUIET_LIBRARIES = ('openpyxl', 'numexpr', 'matplotlib')

LOGGING_CONF = Path(__file__).resolve().parent.parent / 'config' / 'logging.conf'


def _is_production(env: str) -> bool:
    return env in ('prod', 'production')


def _flag(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() not in ('0', 'false', 'no', 'off')


@dataclass(frozen=True)
class LogSettings:
    """Impostazioni risolte da ENV, ARBOR_FILE_LOGGING e ARBOR_LOG_DIR"""
    environment: str
    level: int
    log_dir: Path
    file_logging: bool
    console_logging: bool
    max_file_size: int = 10 * 1024 * 1024
    backup_count: int = 5

    @classmethod
    def from_environment(cls) -> "LogSettings":
        env = os.getenv('ENV', 'dev').lower()
        production = _is_production(env)
        return cls(
            environment=env,
            level=logging.INFO if production else logging.DEBUG,
            log_dir=Path(os.getenv('ARBOR_LOG_DIR', 'logs')),
            file_logging=_flag('ARBOR_FILE_LOGGING', True),
            console_logging=not production,
        )

    @property
    def log_file(self) -> Path:
        return self.log_dir / f"arbor_{self.environment}.log"

    @property
    def error_log_file(self) -> Path:
        return self.log_dir / f"arbor_errors_{self.environment}.log"


class LoggerManager:
    """Configura il root logger una sola volta e distribuisce i logger di area"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            instance = super().__new__(cls)
            instance.loggers = {}
            instance.settings = LogSettings.from_environment()
            instance.source = instance._configure()
            cls._instance = instance
        return cls._instance

    def _configure(self) -> str:
        """logging.conf se presente (con %(env)s), altrimenti handler di default"""
        if LOGGING_CONF.is_file():
            try:
                logging.config.fileConfig(LOGGING_CONF, defaults={'env': self.settings.environment},
                                          disable_existing_loggers=False)
                return 'logging.conf'
            except (OSError, ValueError, KeyError) as e:
                print(f"Errore caricamento {LOGGING_CONF}: {e}", file=sys.stderr)

        settings = self.settings
        root = logging.getLogger()
        root.setLevel(settings.level)
        for handler in root.handlers[:]:
            root.removeHandler(handler)
        formatter = logging.Formatter(DEFAULT_LOG_FORMAT, DEFAULT_DATE_FORMAT)

        if settings.file_logging:
            settings.log_dir.mkdir(parents=True, exist_ok=True)
            for path, level in ((settings.log_file, settings.level), (settings.error_log_file, logging.ERROR)):
                handler = logging.handlers.RotatingFileHandler(
                    path, maxBytes=settings.max_file_size, backupCount=settings.backup_count, encoding='utf-8'
                )
                handler.setLevel(level)
                handler.setFormatter(formatter)
                root.addHandler(handler)

        # stdout è riservato ai documenti JSON della CLI
        if settings.console_logging:
            console = logging.StreamHandler(sys.stderr)
            console.setLevel(logging.WARNING)
            console.setFormatter(formatter)
            root.addHandler(console)
        return 'default'

    def get_logger(self, name: str, area: Optional[str] = None) -> logging.Logger:
        """
        Logger standardizzato

        Args:
            name: nome del modulo (di solito __name__); il prefisso 'src.' viene rimosso
            area: una di AREAS, oppure None per arbor.<name>

        Returns:
            logging.Logger senza handler propri (propaga al root)
        """
        if name.startswith('src.'):
            name = name[len('src.'):]
        full_name = f"{ROOT_NAME}.{area}.{name}" if area else f"{ROOT_NAME}.{name}"
        if full_name not in self.loggers:
            self.loggers[full_name] = logging.getLogger(full_name)
        return self.loggers[full_name]


_logger_manager = LoggerManager()


def get_logger(name: str, specialized_type: Optional[str] = None) -> logging.Logger:
    return _logger_manager.get_logger(name, specialized_type)


def setup_logging() -> None:
    """Livelli delle aree principali secondo l'ambiente; silenzia le librerie rumorose"""
    level = logging.INFO if _is_production(_logger_manager.settings.environment) else logging.DEBUG
    for logger_name in MAIN_LOGGERS:
        logging.getLogger(logger_name).setLevel(level)
    for library in QUIET_LIBRARIES:
        logging.getLogger(library).setLevel(logging.WARNING)


def set_debug_mode(enabled: bool = True) -> None:
    level = logging.DEBUG if enabled else logging.INFO
    for logger_name in MAIN_LOGGERS:
        logging.getLogger(logger_name).setLevel(level)
    get_logger(__name__).info(f"Modalità debug {'abilitata' if enabled else 'disabilitata'}")


def get_core_logger(name: str) -> logging.Logger:
    """Problemi binari, alberi, classificazione, verifica"""
    return get_logger(name, 'core')


def get_solver_logger(name: str) -> logging.Logger:
    return get_logger(name, 'solver')


def get_simulation_logger(name: str) -> logging.Logger:
    return get_logger(name, 'simulation')


def get_elimination_logger(name: str) -> logging.Logger:
    return get_logger(name, 'elimination')


def get_config_logger(name: str) -> logging.Logger:
    return get_logger(name, 'config')


def get_scripts_logger(name: str) -> logging.Logger:
    return get_logger(name, 'scripts')


# Decoratori

def log_function_call(logger: Optional[logging.Logger] = None, level: int = logging.DEBUG):
    """Logga ingresso e uscita della funzione; le eccezioni a livello ERROR"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            func_logger = logger or get_logger(func.__module__)
            func_name = f"{func.__module__}.{func.__name__}"
            func_logger.log(level, f"Chiamata {func_name}")
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                func_logger.error(f"Errore in {func_name}: {e}")
                raise
            func_logger.log(level, f"Completata {func_name}")
            return result

        return wrapper
    return decorator


def log_performance(logger: Optional[logging.Logger] = None, level: int = logging.DEBUG):
    """Logga la durata della funzione (anche quando solleva)"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            func_logger = logger or get_logger(func.__module__)
            func_name = f"{func.__module__}.{func.__name__}"
            start = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                func_logger.warning(f"Errore in {func_name} dopo {time.perf_counter() - start:.3f}s: {e}")
                raise
            func_logger.log(level, f"Performance {func_name}: {time.perf_counter() - start:.3f}s")
            return result

        return wrapper
    return decorator


class temporary_log_level:
    """Context manager per cambiare temporaneamente il livello di un logger"""

    def __init__(self, logger_name: str, level: int):
        self.logger = logging.getLogger(logger_name)
        self.original_level = self.logger.level
        self.new_level = level

    def __enter__(self) -> logging.Logger:
        self.logger.setLevel(self.new_level)
        return self.logger

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.logger.setLevel(self.original_level)


def logger_names() -> Dict[str, logging.Logger]:
    """Logger distribuiti finora, per nome completo"""
    return dict(_logger_manager.loggers)
