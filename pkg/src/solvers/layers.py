"""
Decomposizione rake & compress in livelli V_1..V_L

A ogni iterazione si rimuovono dall'insieme residuo U i nodi con grado in U al più 1
e i nodi di grado 2 che stanno su un frammento di cammino di almeno c nodi.
Nelle varianti ristrette i nodi del colore ristretto sono rimossi solo con grado <= 1.
"""

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from math import log2
from typing import AbstractSet, Dict, List, Mapping, Optional, Sequence, Tuple

from core.binary_problem import Color
from core.config import get_decomposition_config
from core.exceptions import InputError, InvariantViolationError
from core.log import get_solver_logger, log_performance
from trees.colored_tree import ColoredTree

logger = get_solver_logger(__name__)


class DecompositionVariant(str, Enum):
    STANDARD = "standard"
    WHITE_RESTRICTED = "white_restricted"
    BLACK_RESTRICTED = "black_restricted"

    @property
    def restricted_color(self) -> Optional[Color]:
        if self is DecompositionVariant.WHITE_RESTRICTED:
            return Color.WHITE
        if self is DecompositionVariant.BLACK_RESTRICTED:
            return Color.BLACK
        return None


@dataclass
class LayerDecomposition:
    layer: Dict[int, int]
    L: int
    c: int
    variant: DecompositionVariant
    # (|U| all'inizio dell'iterazione, nodi rimossi)
    iterations: List[Tuple[int, int]] = field(default_factory=list)

    def nodes_in(self, i: int) -> List[int]:
        return sorted(v for v, layer in self.layer.items() if layer == i)

    def to_document(self) -> Dict:
        return {
            'layers': {str(v): self.layer[v] for v in sorted(self.layer)},
            'L': self.L,
            'c': self.c,
            'variant': self.variant.value,
        }


def peel_layers(adjacency: Mapping[int, Sequence[int]], colors: Mapping[int, Color], c: int,
                variant: DecompositionVariant = DecompositionVariant.STANDARD,
                pinned: AbstractSet[int] = frozenset()) -> Tuple[Dict[int, Optional[int]], List[Tuple[int, int]]]:
    """
    Nucleo della decomposizione su una lista di adiacenza.

    I nodi `pinned` restano in U per sempre e non fanno parte dei frammenti;
    i nodi mai rimossi ricevono livello None.
    """
    remaining = set(adjacency)
    degree = {v: len(adjacency[v]) for v in adjacency}
    layer: Dict[int, Optional[int]] = {v: None for v in adjacency if v not in pinned}
    restricted = variant.restricted_color
    iterations = []

    i = 0
    while len(remaining) > len(pinned):
        i += 1
        removable = [v for v in remaining if v not in pinned]

        removed = {v for v in removable if degree[v] <= 1}

        # frammenti di grado 2
        chain = {v for v in removable if degree[v] == 2}
        seen = set()
        for start in chain:
            if start in seen:
                continue
            component = []
            queue = deque([start])
            seen.add(start)
            while queue:
                v = queue.popleft()
                component.append(v)
                for u in adjacency[v]:
                    if u in chain and u not in seen and u in remaining:
                        seen.add(u)
                        queue.append(u)
            if len(component) >= c:
                removed.update(v for v in component if colors[v] is not restricted)

        if not removed:
            break

        iterations.append((len(removable), len(removed)))
        for v in removed:
            layer[v] = i
        remaining -= removed
        for v in removed:
            for u in adjacency[v]:
                if u in remaining:
                    degree[u] -= 1

    return layer, iterations


def decomposition_bound(n: int, c: int) -> float:
    config = get_decomposition_config()
    return config['bound_factor'] * c * log2(max(n, 2)) + config['bound_offset']


@log_performance(logger)
def rake_compress(tree: ColoredTree, c: int,
                  variant: DecompositionVariant = DecompositionVariant.STANDARD,
                  check_claims: Optional[bool] = None) -> LayerDecomposition:
    """
    Decomposizione completa dell'albero

    Args:
        tree: albero da decomporre
        c: lunghezza minima dei frammenti di cammino rimossi
        variant: standard o ristretta su un colore
        check_claims: verifica bound e proprietà di grado (default da configurazione)
    """
    if c < 1:
        raise InputError(f"Il parametro c deve essere >= 1, trovato {c}")
    variant = DecompositionVariant(variant)

    layer, iterations = peel_layers(tree.ports, tree.colors, c, variant)
    unassigned = [v for v, i in layer.items() if i is None]
    if unassigned:
        raise InvariantViolationError(f"{len(unassigned)} nodi mai rimossi dalla decomposizione")

    decomposition = LayerDecomposition(
        layer={v: i for v, i in layer.items()},
        L=len(iterations),
        c=c,
        variant=variant,
        iterations=iterations,
    )
    if check_claims if check_claims is not None else get_decomposition_config()['check_claims']:
        check_decomposition(tree, decomposition)

    logger.debug(f"Rake & compress c={c} {variant.value}: L={decomposition.L} su {tree.n} nodi")
    return decomposition


def higher_neighbors(tree: ColoredTree, decomposition: LayerDecomposition, v: int, strict: bool = False) -> List[int]:
    """Vicini di v con livello >= (o > se strict) del livello di v"""
    i = decomposition.layer[v]
    return [u for u in tree.ports[v]
            if decomposition.layer[u] > i or (not strict and decomposition.layer[u] == i)]


def check_decomposition(tree: ColoredTree, decomposition: LayerDecomposition) -> None:
    """Verifica bound sul numero di livelli, rimozione minima e gradi per livello"""
    bound = decomposition_bound(tree.n, decomposition.c)
    if decomposition.L > bound:
        raise InvariantViolationError(
            f"L={decomposition.L} oltre il bound {bound:.1f} (n={tree.n}, c={decomposition.c})"
        )

    if decomposition.variant is DecompositionVariant.STANDARD:
        for index, (size, removed) in enumerate(decomposition.iterations, start=1):
            if removed * 2 * decomposition.c < size:
                raise InvariantViolationError(
                    f"Iterazione {index}: rimossi {removed} nodi su {size}, meno di |U|/(2c)"
                )

    restricted = decomposition.variant.restricted_color
    for v in tree.nodes:
        count = len(higher_neighbors(tree, decomposition, v))
        limit = 1 if tree.colors[v] is restricted else 2
        if count > limit:
            raise InvariantViolationError(
                f"Il nodo {v} (livello {decomposition.layer[v]}) ha {count} vicini a livello >= del proprio"
            )
