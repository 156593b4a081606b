"""
Solutori globali (Theta(n)) per i tipi V e VI.

V.a (W = 10..01, B = 010): 2-colorazione dei bianchi lungo l'albero, una classe
mette a 1 tutti i suoi archi. VI.b: forma più difficile W = 010..0, B = 0..010,
risolta orientando verso una foglia radice. Le altre forme passano per equivalenza.
"""

from typing import Optional, Tuple

from classification.classifier import Complexity, classify, matching_families
from core.binary_problem import EQUIVALENCE_ORDER, BinaryProblem, Color, EquivalenceMap
from core.exceptions import InvariantViolationError, NotApplicableError
from core.log import get_solver_logger
from trees.colored_tree import ColoredTree, EdgeLabeling, all_labeled, complement_labeling, edge_key

logger = get_solver_logger(__name__)


def two_coloring_labeling(tree: ColoredTree) -> EdgeLabeling:
    """Radice nel bianco di id minimo; i bianchi a profondità 2 mod 4 mettono tutto a 1"""
    whites = tree.nodes_of(Color.WHITE)
    if not whites:
        return all_labeled(tree, 0)
    _, _, depth = tree.bfs(whites[0])
    labeling: EdgeLabeling = {}
    for v in whites:
        value = (depth[v] // 2) % 2
        for u in tree.ports[v]:
            labeling[edge_key(v, u)] = value
    return labeling


def leaf_orientation_labeling(tree: ColoredTree) -> EdgeLabeling:
    """Radice nella foglia di id minimo; un arco è in X sse il suo bianco è il figlio"""
    if tree.n == 1:
        return {}
    root = tree.leaves()[0]
    _, parent, _ = tree.bfs(root)
    labeling: EdgeLabeling = {}
    for e in tree.edges:
        u, v = e
        white = u if tree.colors[u] is Color.WHITE else v
        labeling[e] = 1 if parent[white] in e else 0
    return labeling


def global_plan(p: BinaryProblem) -> Tuple[EquivalenceMap, str]:
    """Prima mappa di equivalenza che porta p nella famiglia V.a o VI.b"""
    for equivalence in EQUIVALENCE_ORDER:
        families = matching_families(equivalence.apply(p))
        for family in ('V.a', 'VI.b'):
            if family in families:
                return equivalence, family
    raise InvariantViolationError(f"{p} è globale ma nessuna forma equivalente è V.a o VI.b")


def solve_global(p: BinaryProblem, tree: ColoredTree, plan: Optional[Tuple[EquivalenceMap, str]] = None) -> EdgeLabeling:
    """
    Risolve un problema di tipo V o VI riducendosi a V.a o VI.b

    Args:
        p: problema globale
        tree: istanza
        plan: (mappa di equivalenza, famiglia) già calcolati
    """
    classification = classify(p)
    if classification.complexity is not Complexity.GLOBAL:
        raise NotApplicableError(f"{p} è {classification.complexity.value}, non Global")

    equivalence, family = plan or global_plan(p)
    target_tree = tree.swap_colors() if equivalence.swaps_colors else tree
    if family == 'V.a':
        labeling = two_coloring_labeling(target_tree)
    else:
        labeling = leaf_orientation_labeling(target_tree)
    if equivalence.complements_labels:
        labeling = complement_labeling(labeling)

    logger.debug(f"Soluzione globale per {p} via {equivalence.value} -> {family}")
    return labeling
