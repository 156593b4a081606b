"""
Oracolo a forza bruta e albero testimone per i problemi irrisolvibili.

Le etichettature sono enumerate come contatori binari sugli archi ordinati per
(min, max) con l'arco 0 come bit più significativo, quindi in ordine lessicografico.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from classification.classifier import Complexity, family_complexity, matching_families
from core.binary_problem import BinaryProblem, Color
from core.config import get_limits_config, get_witness_config
from core.exceptions import InputError, ResourceCapError
from core.log import get_core_logger, log_performance
from trees.colored_tree import ColoredTree, EdgeLabeling, labeling_to_document
from trees.generators import gen_complete_biregular

logger = get_core_logger(__name__)

CHUNK_BITS = 16
# oltre 62 archi i contatori non stanno in un int64
HARD_EDGE_LIMIT = 62


class OracleMode(str, Enum):
    FIRST = "first"
    COUNT = "count"
    ALL = "all"


@dataclass
class OracleResult:
    mode: OracleMode
    edges: int
    count: Optional[int] = None
    solutions: List[EdgeLabeling] = field(default_factory=list)

    def to_document(self, tree: ColoredTree) -> Dict[str, Any]:
        document: Dict[str, Any] = {'mode': self.mode.value, 'edges': self.edges}
        if self.mode is OracleMode.FIRST:
            document['solution'] = labeling_to_document(tree, self.solutions[0]) if self.solutions else None
        else:
            document['count'] = self.count
        if self.mode is OracleMode.ALL:
            document['solutions'] = [labeling_to_document(tree, s)['labels'] for s in self.solutions]
        return document


@log_performance(logger)
def brute_force_solve(tree: ColoredTree, p: BinaryProblem, mode: OracleMode = OracleMode.COUNT,
                      max_edges: Optional[int] = None) -> OracleResult:
    """
    Enumerazione esaustiva delle 2^|E| etichettature

    Args:
        tree: istanza
        p: problema binario
        mode: prima soluzione, conteggio o tutte le soluzioni
        max_edges: limite sul numero di archi (default dai limiti di configurazione)

    Raises:
        ResourceCapError: troppi archi
    """
    mode = OracleMode(mode)
    cap = max_edges if max_edges is not None else get_limits_config()['max_edges']
    edges = tree.edges
    m = len(edges)
    if m > min(cap, HARD_EDGE_LIMIT):
        raise ResourceCapError(f"{m} archi oltre il limite {cap} dell'oracolo",
                               cap_name='max_edges', cap_value=cap)

    index = {e: j for j, e in enumerate(edges)}
    checks = []
    for v in tree.nodes:
        color = tree.colors[v]
        if tree.degree(v) == p.degree(color):
            allowed = np.array([bit == '1' for bit in p.constraint(color)])
            checks.append((np.array([index[e] for e in tree.incident_edges(v)]), allowed))

    shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
    total = 1 << m
    chunk = 1 << CHUNK_BITS
    count = 0
    solutions: List[EdgeLabeling] = []

    for start in range(0, total, chunk):
        counters = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = (counters[:, None] >> shifts[None, :]) & 1
        valid = np.ones(len(counters), dtype=bool)
        for incident, allowed in checks:
            valid &= allowed[bits[:, incident].sum(axis=1)]

        hits = np.flatnonzero(valid)
        count += len(hits)
        if mode is not OracleMode.COUNT:
            for row in hits:
                solutions.append({e: int(bits[row, j]) for j, e in enumerate(edges)})
                if mode is OracleMode.FIRST:
                    break
        if mode is OracleMode.FIRST and solutions:
            break

    logger.debug(f"Oracolo {mode.value} per {p} su {m} archi: {count} soluzioni")
    if mode is OracleMode.FIRST:
        return OracleResult(mode, m, None, solutions)
    return OracleResult(mode, m, count, solutions)


def witness_center(p: BinaryProblem) -> Color:
    """Centro nero quando tutte le famiglie irrisolvibili riconosciute sono I.a o I.b"""
    unsolvable = [tag for tag in matching_families(p) if family_complexity(tag) is Complexity.UNSOLVABLE]
    if unsolvable and all(tag in ('I.a', 'I.b') for tag in unsolvable):
        return Color.BLACK
    return Color.WHITE


def standard_witness(p: BinaryProblem, radius: Optional[int] = None) -> ColoredTree:
    """Albero biregolare completo di raggio 2 (configurabile) per p"""
    radius = radius if radius is not None else get_witness_config()['radius']
    if radius < 1:
        raise InputError(f"Raggio del testimone non valido: {radius}")
    return gen_complete_biregular(p.d, p.delta, radius, witness_center(p))
