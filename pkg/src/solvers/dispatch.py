"""
Dispatch dei solutori in base alla classificazione.

Per i problemi logaritmici non resilienti si cerca, per ogni forma equivalente,
un problema bersaglio più difficile (hypergraph matching, speciale, arco privato)
di cui la forma è un rilassamento; la soluzione del bersaglio è mappata indietro.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Optional, Tuple

from classification.classifier import Complexity, classify
from core.binary_problem import (
    EQUIVALENCE_ORDER,
    BinaryProblem,
    Color,
    EquivalenceMap,
    ResilienceQuery,
    is_resilient,
    is_restriction,
    restriction_flips,
)
from core.exceptions import DispatchError, InvariantViolationError, NotApplicableError
from core.log import get_solver_logger, log_performance
from solvers.constant import solve_constant
from solvers.global_solvers import solve_global
from solvers.layered import (
    HypergraphMatchingStrategy,
    ResilientStrategy,
    SpecialStrategy,
    hypergraph_matching,
    layered_labeling,
    private_edge_labeling,
    private_edge_problem,
    special_problem,
)
from solvers.layers import LayerDecomposition
from trees.colored_tree import ColoredTree, EdgeLabeling, complement_labeling
from verification.verifier import verify_labeling

logger = get_solver_logger(__name__)

RESILIENT = "resilient"
HYPERGRAPH_MATCHING = "hypergraph_matching"
SPECIAL = "special"
PRIVATE_EDGE = "private_edge"


@dataclass(frozen=True)
class DispatchPlan:
    """Strategia logaritmica scelta per un problema di tipo VII"""
    strategy: str
    equivalence: EquivalenceMap
    target: BinaryProblem
    flips: FrozenSet[Tuple[Color, int]] = frozenset()

    def to_document(self) -> Dict[str, Any]:
        return {
            'strategy': self.strategy,
            'equivalence': self.equivalence.value,
            'target': self.target.to_document(),
            'flips': [{'side': color.value, 'index': i} for color, i in sorted(self.flips)],
        }


@dataclass
class SolveResult:
    labeling: EdgeLabeling
    complexity: Complexity
    strategy: str
    plan: Optional[DispatchPlan] = None
    decomposition: Optional[LayerDecomposition] = field(default=None, repr=False)


def _candidate_targets(q: BinaryProblem):
    if q.d >= 3 and q.delta >= 3:
        yield HYPERGRAPH_MATCHING, hypergraph_matching(q.d, q.delta)
    if q.d >= 3:
        yield SPECIAL, special_problem(q.d, q.delta)
    if q.d >= 3 and q.delta == 2:
        yield PRIVATE_EDGE, private_edge_problem(q.d)


def plan_dispatch(p: BinaryProblem) -> DispatchPlan:
    """
    Resilienza (1,2) o (2,1) sul problema stesso, altrimenti la prima coppia
    (forma equivalente, bersaglio) in cui il bersaglio è una restrizione della forma.

    La resilienza è invariante per complemento e si scambia con i colori, quindi
    basta controllarla su p.
    """
    if is_resilient(p, ResilienceQuery(1, 2)) or is_resilient(p, ResilienceQuery(2, 1)):
        return DispatchPlan(RESILIENT, EquivalenceMap.IDENTITY, p)

    for equivalence in EQUIVALENCE_ORDER:
        q = equivalence.apply(p)
        for strategy, target in _candidate_targets(q):
            if is_restriction(target, q):
                return DispatchPlan(strategy, equivalence, target, restriction_flips(target, q))

    raise DispatchError(f"Nessun bersaglio di dispatch per il problema logaritmico {p}")


def _solve_target(plan: DispatchPlan, tree: ColoredTree) -> Tuple[EdgeLabeling, LayerDecomposition]:
    if plan.strategy == RESILIENT:
        return layered_labeling(ResilientStrategy(plan.target), tree)
    if plan.strategy == HYPERGRAPH_MATCHING:
        return layered_labeling(HypergraphMatchingStrategy(plan.target), tree)
    if plan.strategy == SPECIAL:
        return layered_labeling(SpecialStrategy(plan.target), tree)
    return private_edge_labeling(plan.target, tree)


@log_performance(logger)
def solve_detailed(p: BinaryProblem, tree: ColoredTree, verify: bool = True) -> SolveResult:
    """Risolve p su tree e riporta strategia, piano e decomposizione usati"""
    classification = classify(p)
    complexity = classification.complexity

    if complexity is Complexity.UNSOLVABLE:
        raise NotApplicableError(f"{p} non è risolvibile ({classification.primary_family})")
    if complexity is Complexity.CONSTANT:
        result = SolveResult(solve_constant(p, tree), complexity, 'constant')
    elif complexity is Complexity.GLOBAL:
        result = SolveResult(solve_global(p, tree), complexity, 'global')
    else:
        plan = plan_dispatch(p)
        target_tree = tree.swap_colors() if plan.equivalence.swaps_colors else tree
        labeling, decomposition = _solve_target(plan, target_tree)
        if plan.equivalence.complements_labels:
            labeling = complement_labeling(labeling)
        result = SolveResult(labeling, complexity, plan.strategy, plan, decomposition)

    if verify:
        violations = verify_labeling(tree, p, result.labeling)
        if violations:
            raise InvariantViolationError(
                f"La soluzione {result.strategy} per {p} viola {len(violations)} vincoli (es. nodo {violations[0].node_id})"
            )
    logger.debug(f"Risolto {p} con strategia {result.strategy} su {tree.n} nodi")
    return result


def solve(p: BinaryProblem, tree: ColoredTree) -> EdgeLabeling:
    """Soluzione verificata di p su tree"""
    return solve_detailed(p, tree).labeling
