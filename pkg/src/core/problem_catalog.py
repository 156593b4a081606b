"""
Catalogo dei problemi di esempio letto da problems.yaml
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional

import yaml

from core.binary_problem import BinaryProblem
from core.config import CONFIG_DIR, get_config
from core.exceptions import MalformedProblemError
from core.log import get_config_logger

logger = get_config_logger(__name__)


@dataclass
class CatalogEntry:
    """Voce del catalogo: problema, descrizione e classe attesa"""
    name: str
    description: str
    problem: BinaryProblem
    expected: Optional[str] = None


class ProblemCatalog:
    """Registro dei problemi con nome, caricato una volta dal file YAML"""

    def __init__(self, catalog_path: Optional[Path] = None):
        if catalog_path is None:
            catalog_file = get_config().get_catalog_config()['catalog_file']
            catalog_path = CONFIG_DIR / catalog_file
        self.catalog_path = Path(catalog_path)
        self.entries: Dict[str, CatalogEntry] = self._load()

    def _load(self) -> Dict[str, CatalogEntry]:
        try:
            with open(self.catalog_path, 'r', encoding='utf-8') as f:
                document = yaml.safe_load(f) or {}
        except FileNotFoundError:
            logger.error(f"❌ Catalogo non trovato: {self.catalog_path}")
            raise
        except yaml.YAMLError as e:
            logger.error(f"❌ Errore parsing YAML in {self.catalog_path}: {e}")
            raise MalformedProblemError(f"Catalogo YAML malformato: {self.catalog_path}") from e

        entries = {}
        for name, raw in (document.get('problems') or {}).items():
            problem = BinaryProblem(int(raw['d']), int(raw['delta']), str(raw['W']), str(raw['B']))
            entries[name] = CatalogEntry(
                name=name,
                description=raw.get('description', ''),
                problem=problem,
                expected=raw.get('expected'),
            )

        logger.debug(f"Catalogo caricato: {len(entries)} problemi da {self.catalog_path.name}")
        return entries

    def names(self) -> List[str]:
        return list(self.entries)

    def get(self, name: str) -> BinaryProblem:
        """
        Ottiene un problema per nome

        Args:
            name: chiave del catalogo (es. 'sinkless_orientation')

        Returns:
            BinaryProblem corrispondente
        """
        if name not in self.entries:
            raise MalformedProblemError(
                f"Problema '{name}' non presente nel catalogo. Disponibili: {', '.join(self.names())}"
            )
        return self.entries[name].problem

    def expected_complexity(self, name: str) -> Optional[str]:
        self.get(name)
        return self.entries[name].expected


_catalog_instance: Optional[ProblemCatalog] = None


def get_catalog() -> ProblemCatalog:
    """Istanza singleton del catalogo"""
    global _catalog_instance
    if _catalog_instance is None:
        _catalog_instance = ProblemCatalog()
    return _catalog_instance


def get_named_problem(name: str) -> BinaryProblem:
    """Accesso rapido a un problema del catalogo"""
    return get_catalog().get(name)
