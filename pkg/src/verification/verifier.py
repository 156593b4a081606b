"""
Verifica di etichettature per problemi binari e generali.

Solo i nodi vincolati (grado pieno per il loro colore) possono violare i vincoli.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Tuple, Union

from core.binary_problem import BinaryProblem, Color
from core.exceptions import LabelingError
from core.log import get_core_logger
from round_elimination.general_problem import GeneralProblem
from trees.colored_tree import ColoredTree, Edge, edge_key

logger = get_core_logger(__name__)


@dataclass(frozen=True)
class Violation:
    node_id: int
    color: Color
    expected: Union[str, Tuple[str, ...]]
    observed: Union[int, Tuple[str, ...]]

    def to_document(self) -> Dict[str, Any]:
        return {
            'node': self.node_id,
            'color': self.color.value,
            'expected': self.expected if isinstance(self.expected, str) else list(self.expected),
            'observed': self.observed if isinstance(self.observed, int) else list(self.observed),
        }


def _check_coverage(tree: ColoredTree, labeling: Mapping[Edge, Any]) -> None:
    known = set(tree.edges)
    unknown = [e for e in labeling if e not in known]
    if unknown:
        raise LabelingError(f"Archi sconosciuti nell'etichettatura: {[list(e) for e in unknown[:5]]}")
    missing = [e for e in tree.edges if e not in labeling]
    if missing:
        raise LabelingError(f"Etichettatura incompleta: {len(missing)} archi senza etichetta, es. {list(missing[0])}")


def verify_labeling(tree: ColoredTree, p: BinaryProblem, x: Mapping[Edge, int]) -> List[Violation]:
    """
    Controlla i vincoli di grado-X ai nodi vincolati

    Returns:
        lista di violazioni, vuota se x è una soluzione
    """
    _check_coverage(tree, x)
    bad = [e for e, value in x.items() if value not in (0, 1)]
    if bad:
        raise LabelingError(f"Etichette non binarie sugli archi {[list(e) for e in bad[:5]]}")

    violations = []
    for v in tree.nodes:
        color = tree.colors[v]
        if tree.degree(v) != p.degree(color):
            continue
        observed = sum(x[edge_key(v, u)] for u in tree.ports[v])
        if not p.allows(color, observed):
            violations.append(Violation(v, color, p.constraint(color), observed))

    if violations:
        logger.debug(f"{len(violations)} violazioni per {p} su {tree.n} nodi")
    return violations


def verify_general(tree: ColoredTree, g: GeneralProblem, y: Mapping[Edge, str]) -> List[Violation]:
    """Il multinsieme delle etichette incidenti a un nodo vincolato deve essere una configurazione"""
    _check_coverage(tree, y)
    alphabet = set(g.alphabet)
    outside = sorted({label for label in y.values() if label not in alphabet})
    if outside:
        raise LabelingError(f"Etichette fuori dall'alfabeto {list(g.alphabet)}: {outside}")

    violations = []
    for v in tree.nodes:
        color = tree.colors[v]
        if tree.degree(v) != g.degree(color):
            continue
        labels = tuple(sorted(y[edge_key(v, u)] for u in tree.ports[v]))
        if not g.allows(color, labels):
            violations.append(Violation(v, color, f"{color.value}_configs", labels))
    return violations


def violations_document(violations: List[Violation]) -> Dict[str, Any]:
    return {'valid': not violations, 'violations': [v.to_document() for v in violations]}
