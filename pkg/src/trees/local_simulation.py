"""
Simulazione del modello LOCAL per raccolta di viste.

Al round r ogni nodo bianco non ancora deciso riceve la sua vista di raggio r.
L'algoritmo restituisce None (continua) oppure una decisione porta -> etichetta;
le etichette decise sono immutabili.
"""

import json
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from core.binary_problem import Color
from core.config import get_limits_config, get_simulation_config
from core.exceptions import InputError, ResourceCapError, SimulationError
from core.log import get_simulation_logger, log_performance
from trees.colored_tree import ColoredTree, EdgeLabeling, edge_key

logger = get_simulation_logger(__name__)

Decision = Optional[Dict[int, int]]


class View:
    """
    Vista di raggio r centrata in un nodo.

    I nodi della vista hanno chiavi locali 0..m-1 assegnate in ordine BFS seguendo
    le porte (il centro è 0), quindi la codifica è canonica. I vicini fuori dalla
    vista sono None.
    """

    def __init__(self, tree: ColoredTree, order: Tuple[int, ...], distances: Tuple[int, ...],
                 radius: int, ids_visible: bool = True):
        self._tree = tree
        self._order = order
        self._distances = distances
        self._local = {g: i for i, g in enumerate(order)}
        self.radius = radius
        self.ids_visible = ids_visible

    @property
    def size(self) -> int:
        return len(self._order)

    def color(self, i: int) -> Color:
        return self._tree.colors[self._order[i]]

    def degree(self, i: int) -> int:
        return self._tree.degree(self._order[i])

    def distance(self, i: int) -> int:
        return self._distances[i]

    def node_id(self, i: int) -> Optional[int]:
        return self._order[i] if self.ids_visible else None

    def neighbor(self, i: int, port: int) -> Optional[int]:
        return self._local.get(self._tree.ports[self._order[i]][port])

    def neighbors(self, i: int) -> List[Optional[int]]:
        return [self._local.get(u) for u in self._tree.ports[self._order[i]]]

    def is_frontier(self, i: int) -> bool:
        """True se il nodo ha vicini fuori dalla vista"""
        return any(j is None for j in self.neighbors(i))

    @property
    def is_complete(self) -> bool:
        """La vista contiene l'intero albero"""
        return all(not self.is_frontier(i) for i in range(self.size))

    def to_tree(self) -> ColoredTree:
        """Albero della vista completa, con gli id originali"""
        if not self.ids_visible:
            raise SimulationError("to_tree richiede una vista con identificatori")
        if not self.is_complete:
            raise SimulationError("to_tree richiede una vista che copre l'intero albero")
        return self._tree

    def encode(self) -> str:
        """Codifica canonica: due viste isomorfe hanno la stessa stringa"""
        nodes = []
        for i in range(self.size):
            nodes.append([
                self.color(i).value,
                self.degree(i),
                self.node_id(i),
                self.neighbors(i),
            ])
        return json.dumps({'r': self.radius, 'nodes': nodes}, separators=(',', ':'))


ViewAlgorithm = Callable[[View], Decision]


class _BallState:
    """Palla BFS di un nodo, estesa di un livello per round"""

    __slots__ = ('order', 'distances', 'seen', 'frontier', 'radius')

    def __init__(self, center: int):
        self.order = [center]
        self.distances = [0]
        self.seen = {center}
        self.frontier = [center]
        self.radius = 0

    def grow(self, tree: ColoredTree) -> None:
        next_frontier = []
        for v in self.frontier:
            for u in tree.ports[v]:
                if u not in self.seen:
                    self.seen.add(u)
                    self.order.append(u)
                    self.distances.append(self.radius + 1)
                    next_frontier.append(u)
        self.frontier = next_frontier
        self.radius += 1


@dataclass
class SimulationResult:
    labeling: EdgeLabeling
    rounds: int
    per_node_round: Dict[int, int] = field(default_factory=dict)

    def summary(self) -> Dict[str, int]:
        return {'rounds': self.rounds, 'nodes': len(self.per_node_round), 'edges': len(self.labeling)}


class LocalSimulator:
    """
    Harness della simulazione.

    Args:
        tree: istanza
        algorithm: funzione View -> decisione o None
        max_rounds: budget di round (default dai limiti di configurazione)
        deciding_color: colore dei nodi che decidono (gli algoritmi neri girano
            sull'albero con colori scambiati)
        strip_ids: viste senza identificatori (modello a porte); abilita il
            controllo di coerenza tra viste isomorfe
    """

    def __init__(self, tree: ColoredTree, algorithm: ViewAlgorithm, max_rounds: Optional[int] = None,
                 deciding_color: Color = Color.WHITE, strip_ids: Optional[bool] = None):
        self.tree = tree
        self.algorithm = algorithm
        self.max_rounds = max_rounds if max_rounds is not None else get_limits_config()['max_rounds']
        if self.max_rounds < 0:
            raise InputError(f"max_rounds deve essere >= 0, trovato {self.max_rounds}")
        self.deciding_color = deciding_color
        self.strip_ids = get_simulation_config()['strip_ids'] if strip_ids is None else strip_ids

    def _apply(self, v: int, decision: Mapping[int, int], labeling: EdgeLabeling) -> None:
        degree = self.tree.degree(v)
        if set(decision) != set(range(degree)):
            raise SimulationError(f"Il nodo {v} ha deciso le porte {sorted(decision)} invece di 0..{degree - 1}")
        for port, label in decision.items():
            if label not in (0, 1):
                raise SimulationError(f"Il nodo {v} ha prodotto l'etichetta {label!r}")
            e = edge_key(v, self.tree.ports[v][port])
            if e in labeling and labeling[e] != label:
                raise SimulationError(f"Il nodo {v} tenta di rietichettare l'arco {list(e)}")
            labeling[e] = label

    @log_performance(logger)
    def run(self) -> SimulationResult:
        tree = self.tree
        balls = {v: _BallState(v) for v in tree.nodes_of(self.deciding_color)}
        undecided = sorted(balls)
        labeling: EdgeLabeling = {}
        per_node_round: Dict[int, int] = {}
        decisions_by_view: Dict[str, Dict[int, int]] = {}

        r = 0
        while undecided:
            if r > self.max_rounds:
                raise ResourceCapError(
                    f"Budget di {self.max_rounds} round esaurito con {len(undecided)} nodi indecisi",
                    cap_name='max_rounds', cap_value=self.max_rounds,
                )
            still_undecided = []
            for v in undecided:
                ball = balls[v]
                while ball.radius < r:
                    ball.grow(tree)
                view = View(tree, tuple(ball.order), tuple(ball.distances), r, not self.strip_ids)
                decision = self.algorithm(view)
                if decision is None:
                    still_undecided.append(v)
                    continue

                self._apply(v, decision, labeling)
                per_node_round[v] = r
                del balls[v]

                if self.strip_ids:
                    key = view.encode()
                    previous = decisions_by_view.setdefault(key, dict(decision))
                    if previous != dict(decision):
                        raise SimulationError(f"Decisioni diverse su viste isomorfe (nodo {v}, round {r})")

            undecided = still_undecided
            if undecided:
                r += 1

        missing = [e for e in tree.edges if e not in labeling]
        if missing:
            raise SimulationError(f"{len(missing)} archi senza etichetta a fine simulazione")

        rounds = max(per_node_round.values(), default=0)
        logger.debug(f"Simulazione terminata: {rounds} round, {len(per_node_round)} nodi decisi")
        return SimulationResult(labeling=labeling, rounds=rounds, per_node_round=per_node_round)


def run_local_simulation(tree: ColoredTree, algorithm: ViewAlgorithm, max_rounds: Optional[int] = None,
                         deciding_color: Color = Color.WHITE, strip_ids: Optional[bool] = None) -> SimulationResult:
    """Esegue l'algoritmo basato su viste fino a quando tutti i nodi hanno deciso"""
    return LocalSimulator(tree, algorithm, max_rounds, deciding_color, strip_ids).run()
