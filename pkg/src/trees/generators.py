"""
Generatori di istanze: alberi biregolari completi, casuali, caterpillar e cammini.

Tutti i generatori costruiscono prima un albero con id provvisori, poi assegnano
gli id 1..n in ordine BFS dal nodo provvisorio 0 e, se richiesto, li permutano
con un seed dentro [1, n^2].
"""

from collections import deque
from typing import Dict, List, Optional, Tuple

import numpy as np

from core.binary_problem import Color
from core.config import get_limits_config
from core.exceptions import InputError, ResourceCapError
from core.log import get_core_logger
from trees.colored_tree import ColoredTree

logger = get_core_logger(__name__)


class _TreeBuilder:
    """Accumula nodi e archi con id provvisori 0..n-1"""

    def __init__(self):
        self.colors: List[Color] = []
        self.edges: List[Tuple[int, int]] = []

    def add(self, color: Color, parent: Optional[int] = None) -> int:
        v = len(self.colors)
        self.colors.append(color)
        if parent is not None:
            self.edges.append((parent, v))
        return v

    def finalize(self, id_seed: Optional[int] = None) -> ColoredTree:
        n = len(self.colors)
        adjacency: Dict[int, List[int]] = {v: [] for v in range(n)}
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)

        order = [0]
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for u in adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    order.append(u)
                    queue.append(u)

        ids = np.arange(1, n + 1)
        if id_seed is not None:
            rng = np.random.default_rng(id_seed)
            ids = rng.choice(n * n, size=n, replace=False) + 1
        new_id = {old: int(ids[rank]) for rank, old in enumerate(order)}

        colors = {new_id[v]: self.colors[v] for v in range(n)}
        edges = [(new_id[u], new_id[v]) for u, v in self.edges]
        return ColoredTree.build(colors, edges)


def _check_node_cap(count: int, max_nodes: Optional[int]) -> None:
    cap = max_nodes if max_nodes is not None else get_limits_config()['max_nodes']
    if count > cap:
        raise ResourceCapError(f"L'albero richiesto ha {count} nodi, oltre il limite {cap}",
                               cap_name='max_nodes', cap_value=cap)


def _full_degree(color: Color, d: int, delta: int) -> int:
    return d if color is Color.WHITE else delta


def complete_biregular_size(d: int, delta: int, radius: int, center_color: Color = Color.WHITE) -> int:
    """Numero di nodi dell'albero biregolare completo"""
    total, level, color = 1, 1, center_color
    for depth in range(radius):
        children = _full_degree(color, d, delta) - (0 if depth == 0 else 1)
        level *= children
        total += level
        color = color.other
    return total


def gen_complete_biregular(d: int, delta: int, radius: int, center_color: Color = Color.WHITE,
                           id_seed: Optional[int] = None, max_nodes: Optional[int] = None) -> ColoredTree:
    """
    Albero biregolare completo di raggio dato

    Il centro e tutti i nodi a distanza < radius hanno grado pieno; i nodi a
    distanza radius sono foglie.
    """
    if d < 2 or delta < 2 or radius < 1:
        raise InputError(f"Parametri non validi: d={d}, delta={delta}, radius={radius}")
    _check_node_cap(complete_biregular_size(d, delta, radius, center_color), max_nodes)

    builder = _TreeBuilder()
    frontier = [builder.add(center_color)]
    for depth in range(radius):
        next_frontier = []
        for v in frontier:
            color = builder.colors[v]
            children = _full_degree(color, d, delta) - (0 if depth == 0 else 1)
            next_frontier.extend(builder.add(color.other, v) for _ in range(children))
        frontier = next_frontier

    tree = builder.finalize(id_seed)
    logger.debug(f"Biregolare completo ({d},{delta}) r={radius}: {tree.n} nodi")
    return tree


def gen_caterpillar(d: int, path_len: int, id_seed: Optional[int] = None,
                    max_nodes: Optional[int] = None) -> ColoredTree:
    """
    Caterpillar con neri di suddivisione

    Un cammino di path_len bianchi, archi consecutivi suddivisi da neri di grado 2.
    Ogni bianco del cammino è portato a grado d con pendenti suddivisi
    (nero di grado 2 + foglia bianca); gli estremi ricevono un pendente in più.
    """
    if d < 3 or path_len < 1:
        raise InputError(f"Parametri non validi: d={d}, path_len={path_len}")
    # path_len bianchi, path_len-1 neri interni, d-2 pendenti per bianco, 2 extra agli estremi
    pendants = path_len * (d - 2) + 2
    _check_node_cap(path_len + (path_len - 1) + 2 * pendants, max_nodes)

    builder = _TreeBuilder()
    path = [builder.add(Color.WHITE)]
    for _ in range(path_len - 1):
        black = builder.add(Color.BLACK, path[-1])
        path.append(builder.add(Color.WHITE, black))

    for v in path:
        path_degree = (v != path[0]) + (v != path[-1])
        for _ in range(d - path_degree):
            black = builder.add(Color.BLACK, v)
            builder.add(Color.WHITE, black)

    tree = builder.finalize(id_seed)
    logger.debug(f"Caterpillar d={d} lunghezza {path_len}: {tree.n} nodi")
    return tree


def gen_random_biregular(d: int, delta: int, n_target: int, seed: int = 0,
                         id_seed: Optional[int] = None, max_nodes: Optional[int] = None) -> ColoredTree:
    """
    Albero casuale in cui ogni nodo ha grado pieno oppure è una foglia.

    Si parte da una radice bianca e si espande una foglia di frontiera scelta a caso
    fino a raggiungere n_target nodi; ogni espansione porta il nodo al grado pieno.
    """
    if d < 2 or delta < 2 or n_target < 2:
        raise InputError(f"Parametri non validi: d={d}, delta={delta}, n_target={n_target}")
    _check_node_cap(n_target + max(d, delta), max_nodes)

    rng = np.random.default_rng(seed)
    builder = _TreeBuilder()
    root = builder.add(Color.WHITE)
    frontier = [root]

    while len(builder.colors) < n_target:
        pick = int(rng.integers(len(frontier)))
        frontier[pick], frontier[-1] = frontier[-1], frontier[pick]
        v = frontier.pop()
        color = builder.colors[v]
        children = _full_degree(color, d, delta) - (0 if v == root else 1)
        frontier.extend(builder.add(color.other, v) for _ in range(children))

    tree = builder.finalize(id_seed)
    logger.debug(f"Biregolare casuale ({d},{delta}) seed={seed}: {tree.n} nodi")
    return tree


def gen_path(n: int, first_color: Color = Color.WHITE, id_seed: Optional[int] = None,
             max_nodes: Optional[int] = None) -> ColoredTree:
    """Cammino di n nodi a colori alterni"""
    if n < 1:
        raise InputError(f"Un cammino richiede almeno un nodo, trovato n={n}")
    _check_node_cap(n, max_nodes)
    builder = _TreeBuilder()
    v = builder.add(first_color)
    for _ in range(n - 1):
        v = builder.add(builder.colors[v].other, v)
    return builder.finalize(id_seed)


def gen_star(center_color: Color, leaves: int) -> ColoredTree:
    """Stella: un centro e `leaves` foglie dell'altro colore"""
    builder = _TreeBuilder()
    center = builder.add(center_color)
    for _ in range(leaves):
        builder.add(center_color.other, center)
    return builder.finalize()
