"""
Varianti a viste dei solutori, eseguite dall'harness LOCAL.

Un nodo bianco ricostruisce la palla visibile, vi ripete la decomposizione
rake & compress trattando i vicini non visti come mai rimossi, e decide quando
tutti i livelli di cui ha bisogno sono certi.
"""

from collections import deque
from typing import Dict, List, Optional

from classification.classifier import Complexity, classify
from core.binary_problem import BinaryProblem, Color
from core.config import get_simulation_config
from core.exceptions import InvariantViolationError, NotApplicableError, SimulationError
from core.log import get_simulation_logger
from solvers.constant import constant_side, white_port_labels
from solvers.dispatch import PRIVATE_EDGE, plan_dispatch
from solvers.global_solvers import solve_global
from solvers.layered import (
    STRATEGIES,
    LayeredEvaluator,
    LayeredStrategy,
    LayerContext,
    ResilientStrategy,
    UntrustedLayer,
    private_edge_labels,
    sinkless_orientation_for,
)
from solvers.layers import peel_layers
from trees.colored_tree import ColoredTree, EdgeLabeling, complement_labeling, edge_key
from trees.local_simulation import Decision, SimulationResult, View, run_local_simulation
from verification.verifier import verify_labeling

logger = get_simulation_logger(__name__)


class ViewLayerContext(LayerContext):
    """
    Livelli calcolati sulla palla visibile.

    Ogni porta che esce dalla vista diventa un nodo fantasma bloccato in U.
    Il livello di x è certo se la sua distanza dai fantasmi supera (c+1) volte il livello.
    """

    def __init__(self, view: View, strategy: LayeredStrategy):
        self.view = view
        self.c = strategy.c
        self._adjacency: Dict[int, List[int]] = {}
        self._colors: Dict[int, Color] = {}
        self._ghosts = set()

        next_key = view.size
        for i in range(view.size):
            self._colors[i] = view.color(i)
            ports = []
            for j in view.neighbors(i):
                if j is None:
                    j = next_key
                    next_key += 1
                    self._ghosts.add(j)
                    self._adjacency[j] = [i]
                    self._colors[j] = view.color(i).other
                ports.append(j)
            self._adjacency[i] = ports

        self._layer, _ = peel_layers(self._adjacency, self._colors, self.c, strategy.variant, pinned=self._ghosts)
        self._ghost_distance = self._distances_from_ghosts()

    def _distances_from_ghosts(self) -> Dict[int, int]:
        distance = {g: 0 for g in self._ghosts}
        queue = deque(self._ghosts)
        while queue:
            v = queue.popleft()
            for u in self._adjacency[v]:
                if u not in distance:
                    distance[u] = distance[v] + 1
                    queue.append(u)
        return distance

    def ports(self, x):
        return self._adjacency[x]

    def color(self, x):
        return self._colors[x]

    def degree(self, x):
        return self.view.degree(x)

    def layer(self, x):
        if x is None or x in self._ghosts:
            raise UntrustedLayer(x)
        value = self._layer[x]
        if value is None:
            raise UntrustedLayer(x)
        if self._ghosts and self._ghost_distance[x] <= (self.c + 1) * value:
            raise UntrustedLayer(x)
        return value


class LayeredViewAlgorithm:
    """Algoritmo bianco per una strategia a livelli"""

    def __init__(self, strategy: LayeredStrategy):
        self.strategy = strategy

    def _too_early(self, view: View) -> bool:
        # il centro dista radius+1 dai fantasmi e ha livello >= 1
        return view.radius + 1 <= self.strategy.c + 1 and not view.is_complete

    def port_labels(self, view: View) -> Optional[List[int]]:
        if self._too_early(view):
            return None
        evaluator = LayeredEvaluator(self.strategy, ViewLayerContext(view, self.strategy))
        try:
            return evaluator.port_labels(0)
        except UntrustedLayer:
            return None

    def __call__(self, view: View) -> Decision:
        labels = self.port_labels(view)
        return None if labels is None else dict(enumerate(labels))


class PrivateEdgeViewAlgorithm(LayeredViewAlgorithm):
    """Orientamento senza pozzi sulla vista, poi ogni bianco vincolato tiene il suo 0-arco minimo"""

    def __init__(self, p: BinaryProblem):
        super().__init__(ResilientStrategy(sinkless_orientation_for(p.d)))
        self.d = p.d

    def __call__(self, view: View) -> Decision:
        labels = self.port_labels(view)
        if labels is None:
            return None
        return dict(enumerate(private_edge_labels(labels, view.degree(0) == self.d)))


class ConstantViewAlgorithm:
    """Regola a 0 round: le etichette dipendono solo dal grado del bianco"""

    def __init__(self, p: BinaryProblem):
        self.p = p
        self._by_degree: Dict[int, List[int]] = {}

    def __call__(self, view: View) -> Decision:
        degree = view.degree(0)
        if degree not in self._by_degree:
            self._by_degree[degree] = white_port_labels(self.p, degree)
        return dict(enumerate(self._by_degree[degree]))


class GlobalViewAlgorithm:
    """Decide quando la vista copre l'albero intero; la soluzione globale è calcolata una volta"""

    def __init__(self, p: BinaryProblem):
        self.p = p
        self._solutions: Dict[int, EdgeLabeling] = {}

    def __call__(self, view: View) -> Decision:
        if not view.is_complete:
            return None
        tree = view.to_tree()
        key = id(tree)
        if key not in self._solutions:
            self._solutions[key] = solve_global(self.p, tree)
        labeling = self._solutions[key]
        v = view.node_id(0)
        return {port: labeling[edge_key(v, u)] for port, u in enumerate(tree.ports[v])}


def simulate_solve(p: BinaryProblem, tree: ColoredTree, max_rounds: Optional[int] = None,
                   strip_ids: Optional[bool] = None) -> SimulationResult:
    """
    Risolve p con l'algoritmo a viste adatto alla sua classe

    Args:
        p: problema risolvibile
        tree: istanza
        max_rounds: budget di round
        strip_ids: viste senza identificatori (non ammesso per i problemi globali)
    """
    classification = classify(p)
    complexity = classification.complexity
    complement = False

    if complexity is Complexity.UNSOLVABLE:
        raise NotApplicableError(f"{p} non è risolvibile ({classification.primary_family})")
    if complexity is Complexity.CONSTANT:
        if constant_side(p) is Color.BLACK:
            algorithm, target_tree = ConstantViewAlgorithm(p.swap()), tree.swap_colors()
        else:
            algorithm, target_tree = ConstantViewAlgorithm(p), tree
    elif complexity is Complexity.GLOBAL:
        if (get_simulation_config()['strip_ids'] if strip_ids is None else strip_ids):
            raise SimulationError(f"{p} è globale: servono gli identificatori nelle viste")
        algorithm, target_tree = GlobalViewAlgorithm(p), tree
    else:
        plan = plan_dispatch(p)
        target_tree = tree.swap_colors() if plan.equivalence.swaps_colors else tree
        complement = plan.equivalence.complements_labels
        if plan.strategy == PRIVATE_EDGE:
            algorithm = PrivateEdgeViewAlgorithm(plan.target)
        else:
            algorithm = LayeredViewAlgorithm(STRATEGIES[plan.strategy](plan.target))

    result = run_local_simulation(target_tree, algorithm, max_rounds=max_rounds, strip_ids=strip_ids)
    if complement:
        result.labeling = complement_labeling(result.labeling)

    violations = verify_labeling(tree, p, result.labeling)
    if violations:
        raise InvariantViolationError(
            f"La simulazione {complexity.value} per {p} viola {len(violations)} vincoli (es. nodo {violations[0].node_id})"
        )
    logger.info(f"{p}: {complexity.value} simulato in {result.rounds} round su {tree.n} nodi")
    return result
