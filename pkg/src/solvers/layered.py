"""
Solutori O(log n) basati su rake & compress.

Ogni strategia definisce una regola locale: un nodo del livello i conosce le
etichette degli archi verso livelli > i (decise dai vicini più alti) e degli archi
dello stesso livello (fissati da una regola congiunta), e sceglie le etichette dei
suoi archi verso livelli < i.

La regola è valutata da LayeredEvaluator in modo ricorsivo sulla catena dei vicini
più alti; lo stesso valutatore serve l'esecuzione centralizzata (contesto sull'albero
intero) e la variante a viste (contesto sulla palla visibile).
"""

from abc import ABC, abstractmethod
from collections import deque
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from core.binary_problem import BinaryProblem, Color, ResilienceQuery, complete_labeling, is_resilient
from core.exceptions import InvariantViolationError, NotApplicableError
from core.log import get_solver_logger, log_performance
from solvers.layers import DecompositionVariant, LayerDecomposition, rake_compress
from trees.colored_tree import ColoredTree, EdgeLabeling

logger = get_solver_logger(__name__)

Node = Hashable


def hypergraph_matching(d: int, delta: int) -> BinaryProblem:
    return BinaryProblem(d, delta, '01' + '0' * (d - 1), '01' + '0' * (delta - 1))


def special_problem(d: int, delta: int) -> BinaryProblem:
    return BinaryProblem(d, delta, '01' + '0' * (d - 1), '1' + '0' * (delta - 1) + '1')


def private_edge_problem(d: int) -> BinaryProblem:
    return BinaryProblem(d, 2, '01' + '0' * (d - 1), '110')


class UntrustedLayer(Exception):
    """Il livello di un nodo necessario non è ancora certo (solo nelle viste)"""


class LayerContext(ABC):
    """Accesso a struttura e livelli per il valutatore"""

    @abstractmethod
    def ports(self, x: Node) -> Sequence[Optional[Node]]:
        """Vicini in ordine di porta; None per vicini sconosciuti"""

    @abstractmethod
    def color(self, x: Node) -> Color:
        ...

    @abstractmethod
    def degree(self, x: Node) -> int:
        ...

    @abstractmethod
    def layer(self, x: Optional[Node]) -> int:
        """Livello certo di x, altrimenti UntrustedLayer"""


class TreeLayerContext(LayerContext):
    """Contesto centralizzato: albero intero e decomposizione esatta"""

    def __init__(self, tree: ColoredTree, decomposition: LayerDecomposition):
        self.tree = tree
        self.decomposition = decomposition

    def ports(self, x):
        return self.tree.ports[x]

    def color(self, x):
        return self.tree.colors[x]

    def degree(self, x):
        return self.tree.degree(x)

    def layer(self, x):
        return self.decomposition.layer[x]


class LayeredStrategy(ABC):
    """Regola locale di un solutore a livelli"""

    name: str = "layered"
    c: int = 1
    variant: DecompositionVariant = DecompositionVariant.STANDARD
    # la regola congiunta sugli archi dello stesso livello dipende dai neri con arco alto a 1
    forces_same_layer: bool = False

    def __init__(self, p: BinaryProblem):
        self.p = p

    def is_constrained(self, color: Color, degree: int) -> bool:
        return degree == self.p.degree(color)

    @abstractmethod
    def complete(self, node: Node, color: Color, degree: int, fixed: List[Optional[int]], higher: int) -> List[int]:
        """
        Etichette di tutte le porte del nodo

        Args:
            fixed: per porta l'etichetta già fissata, None se libera (arco verso un livello più basso)
            higher: numero di vicini a livello strettamente maggiore
        """


class ResilientStrategy(LayeredStrategy):
    """Completamento con budget: variante ristretta sul colore con budget 1, c = 1"""

    name = "resilient"

    def __init__(self, p: BinaryProblem):
        super().__init__(p)
        if is_resilient(p, ResilienceQuery(1, 2)):
            self.variant = DecompositionVariant.WHITE_RESTRICTED
            self.budget = {Color.WHITE: 1, Color.BLACK: 2}
        elif is_resilient(p, ResilienceQuery(2, 1)):
            self.variant = DecompositionVariant.BLACK_RESTRICTED
            self.budget = {Color.WHITE: 2, Color.BLACK: 1}
        else:
            raise NotApplicableError(f"{p} non è (1,2)- né (2,1)-resiliente")

    def complete(self, node, color, degree, fixed, higher):
        free = [i for i, label in enumerate(fixed) if label is None]
        labels = [0 if label is None else label for label in fixed]
        if not self.is_constrained(color, degree):
            return labels

        fixed_total = degree - len(free)
        if fixed_total > self.budget[color]:
            raise InvariantViolationError(
                f"Nodo {node} ({color.value}) con {fixed_total} porte fissate, budget {self.budget[color]}"
            )
        fixed_ones = sum(labels)
        extra = complete_labeling(self.p.constraint(color), fixed_ones, fixed_total)
        if extra is None:
            raise InvariantViolationError(f"Nodo {node}: completamento impossibile con {fixed_ones}/{fixed_total}")
        for i in free[:extra]:
            labels[i] = 1
        return labels


class HypergraphMatchingStrategy(LayeredStrategy):
    """W = 010^(d-1), B = 010^(delta-1): ogni nodo vincolato ha esattamente un 1"""

    name = "hypergraph_matching"
    c = 3

    def __init__(self, p: BinaryProblem):
        super().__init__(p)
        if p != hypergraph_matching(p.d, p.delta) or p.d < 3 or p.delta < 3:
            raise NotApplicableError(f"{p} non è un problema di hypergraph matching con d, delta >= 3")

    def complete(self, node, color, degree, fixed, higher):
        if higher > 1:
            raise InvariantViolationError(f"Nodo {node} con {higher} vicini a livello più alto")
        free = [i for i, label in enumerate(fixed) if label is None]
        labels = [0 if label is None else label for label in fixed]
        if sum(labels) == 0 and free:
            labels[free[0]] = 1
        if free and sum(labels) != 1:
            raise InvariantViolationError(f"Nodo {node} con {sum(labels)} archi a 1 invece di uno")
        return labels


class SpecialStrategy(LayeredStrategy):
    """W = 010^(d-1), B = 10^(delta-1)1: bianchi esattamente uno, neri tutto o niente"""

    name = "special"
    c = 5
    forces_same_layer = True

    def __init__(self, p: BinaryProblem):
        super().__init__(p)
        if p != special_problem(p.d, p.delta) or p.d < 3:
            raise NotApplicableError(f"{p} non è il problema speciale con d >= 3")

    def complete(self, node, color, degree, fixed, higher):
        if higher > 1:
            raise InvariantViolationError(f"Nodo {node} con {higher} vicini a livello più alto")
        free = [i for i, label in enumerate(fixed) if label is None]
        known = [label for label in fixed if label is not None]

        if color is Color.BLACK:
            value = max(known, default=0)
            if any(label != value for label in known):
                raise InvariantViolationError(f"Nero {node} con archi fissati discordi {known}")
            return [value] * degree

        labels = [0 if label is None else label for label in fixed]
        if sum(labels) > 1:
            raise InvariantViolationError(f"Bianco {node} con {sum(labels)} archi fissati a 1")
        if sum(labels) == 0 and free:
            labels[free[0]] = 1
        if self.is_constrained(color, degree) and sum(labels) != 1:
            raise InvariantViolationError(f"Bianco vincolato {node} senza arco a 1")
        return labels


class LayeredEvaluator:
    """Valuta la regola locale con memoizzazione risalendo la catena dei livelli"""

    def __init__(self, strategy: LayeredStrategy, context: LayerContext):
        self.strategy = strategy
        self.context = context
        self._decisions: Dict[Node, List[int]] = {}

    def _higher_neighbor(self, x: Node) -> Optional[Node]:
        i = self.context.layer(x)
        for u in self.context.ports(x):
            if self.context.layer(u) > i:
                return u
        return None

    def same_layer_label(self, x: Node, u: Node) -> int:
        if not self.strategy.forces_same_layer:
            return 0
        black = x if self.context.color(x) is Color.BLACK else u
        h = self._higher_neighbor(black)
        if h is None:
            return 0
        return self.edge_label(black, h)

    def edge_label(self, x: Node, u: Node) -> int:
        lx, lu = self.context.layer(x), self.context.layer(u)
        if lx == lu:
            return self.same_layer_label(x, u)
        owner, other = (x, u) if lx > lu else (u, x)
        port = list(self.context.ports(owner)).index(other)
        return self.decisions(owner)[port]

    def decisions(self, x: Node) -> List[int]:
        """Etichette di tutte le porte di x"""
        if x in self._decisions:
            return self._decisions[x]
        context = self.context
        i = context.layer(x)
        fixed: List[Optional[int]] = []
        higher = 0
        for u in context.ports(x):
            lu = context.layer(u)
            if lu > i:
                higher += 1
                fixed.append(self.edge_label(x, u))
            elif lu == i:
                fixed.append(self.same_layer_label(x, u))
            else:
                fixed.append(None)
        labels = self.strategy.complete(x, context.color(x), context.degree(x), fixed, higher)
        self._decisions[x] = labels
        return labels

    def port_labels(self, x: Node) -> List[int]:
        """Etichette viste da x su tutte le sue porte (anche quelle decise dai vicini)"""
        return [self.edge_label(x, u) for u in self.context.ports(x)]


def check_fragments(tree: ColoredTree, decomposition: LayerDecomposition, min_whites: int = 2) -> None:
    """Ogni componente dello stesso livello con almeno 3 nodi contiene almeno min_whites bianchi"""
    layer = decomposition.layer
    seen = set()
    for start in tree.nodes:
        if start in seen:
            continue
        component = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in tree.ports[v]:
                if u not in seen and layer[u] == layer[v]:
                    seen.add(u)
                    component.append(u)
                    queue.append(u)
        if len(component) >= 3:
            whites = sum(tree.colors[v] is Color.WHITE for v in component)
            if whites < min_whites:
                raise InvariantViolationError(
                    f"Cammino rimosso al livello {layer[start]} con {whites} bianchi su {len(component)} nodi"
                )


@log_performance(logger)
def layered_labeling(strategy: LayeredStrategy, tree: ColoredTree) -> Tuple[EdgeLabeling, LayerDecomposition]:
    """Esecuzione centralizzata: decomposizione esatta, poi valutazione dall'alto"""
    decomposition = rake_compress(tree, strategy.c, strategy.variant)
    if strategy.forces_same_layer:
        check_fragments(tree, decomposition)

    evaluator = LayeredEvaluator(strategy, TreeLayerContext(tree, decomposition))
    for i in range(decomposition.L, 0, -1):
        for v in decomposition.nodes_in(i):
            evaluator.decisions(v)

    labeling: EdgeLabeling = {}
    for u, v in tree.edges:
        labeling[(u, v)] = evaluator.edge_label(u, v)
    logger.debug(f"{strategy.name}: {tree.n} nodi, L={decomposition.L}")
    return labeling, decomposition


def solve_resilient(p: BinaryProblem, tree: ColoredTree) -> EdgeLabeling:
    return layered_labeling(ResilientStrategy(p), tree)[0]


def solve_hypergraph_matching(p: BinaryProblem, tree: ColoredTree) -> EdgeLabeling:
    return layered_labeling(HypergraphMatchingStrategy(p), tree)[0]


def solve_special(p: BinaryProblem, tree: ColoredTree) -> EdgeLabeling:
    return layered_labeling(SpecialStrategy(p), tree)[0]


def sinkless_orientation_for(d: int) -> BinaryProblem:
    return BinaryProblem(d, 2, '1' * d + '0', '010')


def private_edge_labels(sinkless_labels: Sequence[int], constrained: bool) -> List[int]:
    """Un bianco vincolato tiene solo il suo 0-arco di porta minima"""
    labels = [0] * len(sinkless_labels)
    if constrained:
        labels[list(sinkless_labels).index(0)] = 1
    return labels


def private_edge_labeling(p: BinaryProblem, tree: ColoredTree) -> Tuple[EdgeLabeling, LayerDecomposition]:
    """(d, 2, 010^(d-1), 110) passando per l'orientamento senza pozzi (d, 2, 1^d 0, 010)"""
    if p != private_edge_problem(p.d) or p.d < 3:
        raise NotApplicableError(f"{p} non è il problema dell'arco privato con d >= 3")
    sinkless, decomposition = layered_labeling(ResilientStrategy(sinkless_orientation_for(p.d)), tree)

    labeling: EdgeLabeling = {}
    for v in tree.nodes_of(Color.WHITE):
        edges = tree.incident_edges(v)
        labels = private_edge_labels([sinkless[e] for e in edges], tree.degree(v) == p.d)
        labeling.update(zip(edges, labels))
    return labeling, decomposition


def solve_private_edge(p: BinaryProblem, tree: ColoredTree) -> EdgeLabeling:
    return private_edge_labeling(p, tree)[0]


STRATEGIES = {
    'resilient': ResilientStrategy,
    'hypergraph_matching': HypergraphMatchingStrategy,
    'special': SpecialStrategy,
}
