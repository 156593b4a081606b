"""
Configurazione a strati di arbor

config.conf (comune) viene letto per primo, poi config.{env}.conf; i limiti di
risorse possono essere sovrascritti da variabili d'ambiente ARBOR_MAX_*, lette
a ogni chiamata di get_limits_config().
"""

import configparser
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

from core.log import get_config_logger

logger = get_config_logger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
CONFIG_DIR = Path(__file__).resolve().parent.parent / 'config'

ENV_OVERRIDES = {
    'max_nodes': 'ARBOR_MAX_NODES',
    'max_edges': 'ARBOR_MAX_EDGES',
    'max_alphabet': 'ARBOR_MAX_ALPHABET',
    'max_re_degree': 'ARBOR_MAX_RE_DEGREE',
    'max_rounds': 'ARBOR_MAX_ROUNDS',
}

LIMIT_DEFAULTS = {
    'max_nodes': 200000,
    'max_edges': 22,
    'max_alphabet': 5,
    'max_re_degree': 4,
    'max_rounds': 100000,
}


def _cast(value: str, cast_type: type) -> Any:
    if cast_type is bool:
        return value.strip().lower() in ('true', '1', 'yes', 'on')
    if cast_type is list:
        # Liste separate da virgola
        return [item.strip() for item in value.split(',') if item.strip()]
    return cast_type(value)


class Config:
    """Valori tipizzati da config.conf + config.{dev,prod}.conf"""

    def __init__(self, environment: Optional[str] = None):
        load_dotenv(PROJECT_ROOT / '.env', override=False)
        self.environment = environment or self._determine_environment()
        self.parser = configparser.ConfigParser()
        self.loaded_files = self._load_configs()

    @staticmethod
    def _determine_environment() -> str:
        env = os.getenv('ENV', 'dev').lower()
        return 'prod' if env in ('prod', 'production') else 'dev'

    def _load_configs(self) -> List[str]:
        loaded = []
        for config_file in ('config.conf', f'config.{self.environment}.conf'):
            config_path = CONFIG_DIR / config_file
            if not config_path.exists():
                logger.debug(f"File di configurazione non trovato: {config_path}")
                continue
            try:
                self.parser.read(config_path, encoding='utf-8')
                loaded.append(config_file)
            except configparser.Error as e:
                logger.error(f"Errore nel caricamento di {config_file}: {e}")

        if not loaded:
            logger.warning("Nessun file di configurazione caricato, uso i default")
        logger.debug(f"Ambiente: {self.environment}, file caricati: {loaded}")
        return loaded

    def get(self, section: str, key: str, default: Any = None, cast_type: type = str) -> Any:
        """
        Valore di configurazione convertito a cast_type (str, int, float, bool, list)

        Un valore non convertibile viene segnalato e sostituito dal default.
        """
        if not self.parser.has_option(section, key):
            return default
        raw = self.parser.get(section, key)
        try:
            return _cast(raw, cast_type)
        except ValueError as e:
            logger.error(f"Valore non valido per {section}.{key}: {e}")
            return default

    def get_section(self, section: str) -> Dict[str, str]:
        if not self.parser.has_section(section):
            return {}
        return dict(self.parser.items(section))

    def set(self, section: str, key: str, value: Any) -> None:
        """Override in memoria (non scritto su file)"""
        if not self.parser.has_section(section):
            self.parser.add_section(section)
        self.parser.set(section, key, str(value))

    def get_limits_config(self) -> Dict[str, int]:
        """Limiti di risorse; ARBOR_MAX_* ha la precedenza sui file"""
        limits = {key: self.get('limits', key, default, int) for key, default in LIMIT_DEFAULTS.items()}
        for key, env_name in ENV_OVERRIDES.items():
            raw = os.getenv(env_name)
            if raw is None:
                continue
            try:
                limits[key] = int(raw)
            except ValueError:
                logger.warning(f"⚠️  {env_name}={raw!r} non è un intero, ignorato")
        return limits

    def get_simulation_config(self) -> Dict[str, Any]:
        return {
            'round_constant_k': self.get('simulation', 'round_constant_k', 24, int),
            'global_round_factor': self.get('simulation', 'global_round_factor', 2, int),
            'strip_ids': self.get('simulation', 'strip_ids', False, bool),
        }

    def get_decomposition_config(self) -> Dict[str, Any]:
        """Costanti del bound L <= bound_factor * c * log2(n) + bound_offset"""
        return {
            'bound_factor': self.get('decomposition', 'bound_factor', 4, int),
            'bound_offset': self.get('decomposition', 'bound_offset', 4, int),
            'check_claims': self.get('decomposition', 'check_claims', True, bool),
        }

    def get_witness_config(self) -> Dict[str, Any]:
        return {'radius': self.get('witness', 'radius', 2, int)}

    def get_report_config(self) -> Dict[str, Any]:
        return {
            'report_dir': self.get('reports', 'report_dir', 'logs/reports'),
            'enabled': self.get('reports', 'enabled', True, bool),
            'formats': self.get('reports', 'formats', ['json', 'csv', 'excel'], list),
        }

    def get_catalog_config(self) -> Dict[str, Any]:
        return {'catalog_file': self.get('catalog', 'catalog_file', 'problems.yaml')}


_config_instance: Optional[Config] = None


def get_config(environment: Optional[str] = None) -> Config:
    """
    Istanza singleton della configurazione

    Args:
        environment: 'dev' o 'prod', usato solo alla prima chiamata
    """
    global _config_instance
    if _config_instance is None:
        _config_instance = Config(environment)
    return _config_instance


def reload_config(environment: Optional[str] = None) -> Config:
    global _config_instance
    _config_instance = Config(environment)
    return _config_instance


def get_limits_config() -> Dict[str, int]:
    return get_config().get_limits_config()


def get_simulation_config() -> Dict[str, Any]:
    return get_config().get_simulation_config()


def get_decomposition_config() -> Dict[str, Any]:
    return get_config().get_decomposition_config()


def get_witness_config() -> Dict[str, Any]:
    return get_config().get_witness_config()


def get_report_config() -> Dict[str, Any]:
    return get_config().get_report_config()
