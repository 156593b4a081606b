"""
Solutori a tempo costante per i tipi III e IV
"""

from typing import List

from classification.classifier import Complexity, classify
from core.binary_problem import BinaryProblem, Color
from core.exceptions import NotApplicableError
from core.log import get_solver_logger
from trees.colored_tree import ColoredTree, EdgeLabeling, all_labeled, edge_key

logger = get_solver_logger(__name__)


def white_port_labels(p: BinaryProblem, degree: int) -> List[int]:
    """
    Regola locale di un bianco per un problema III.a, IV.a o IV.b: dipende solo
    dal grado, quindi decide al round 0.
    """
    primary = classify(p).primary_family
    if primary == 'IV.a':
        return [0] * degree
    if primary == 'IV.b':
        return [1] * degree
    if primary == 'III.a':
        ones = min(p.W.index('1'), degree)
        return [1] * ones + [0] * (degree - ones)
    raise NotApplicableError(f"{p} non ha una regola costante lato bianco")


def constant_side(p: BinaryProblem) -> Color:
    """Colore che decide: i problemi III.b sono risolti dai neri"""
    primary = classify(p).primary_family
    return Color.BLACK if primary == 'III.b' else Color.WHITE


def solve_constant(p: BinaryProblem, tree: ColoredTree) -> EdgeLabeling:
    """
    III.a: ogni bianco mette a 1 le sue i porte più basse (i minimo con w_i = 1);
    IV.a: tutto 0; IV.b: tutto 1; III.b tramite scambio dei colori.
    """
    classification = classify(p)
    if classification.complexity is not Complexity.CONSTANT:
        raise NotApplicableError(f"{p} è {classification.complexity.value}, non Constant")

    primary = classification.primary_family
    if primary == 'IV.a':
        return all_labeled(tree, 0)
    if primary == 'IV.b':
        return all_labeled(tree, 1)
    if primary == 'III.b':
        return solve_constant(p.swap(), tree.swap_colors())

    labeling: EdgeLabeling = {}
    for v in tree.nodes_of(Color.WHITE):
        for u, label in zip(tree.ports[v], white_port_labels(p, tree.degree(v))):
            labeling[edge_key(v, u)] = label
    logger.debug(f"Soluzione costante {primary} per {p}")
    return labeling
