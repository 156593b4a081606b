"""
Isomorfismo tra problemi generali.

Il problema è codificato come grafo bipartito etichette-configurazioni con
molteplicità sugli archi; un isomorfismo di questo grafo che manda etichette in
etichette e configurazioni bianche (nere) in bianche (nere) induce una
biiezione di etichette che porta le configurazioni le une sulle altre.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Optional

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from core.exceptions import InputError
from core.log import get_elimination_logger
from round_elimination.general_problem import GeneralProblem

logger = get_elimination_logger(__name__)


@dataclass(frozen=True)
class LabelBijection:
    """Biiezione totale tra due alfabeti (nome -> nome)"""
    mapping: Dict[str, str]

    def __post_init__(self):
        if len(set(self.mapping.values())) != len(self.mapping):
            raise InputError("La mappa di etichette non è iniettiva")

    def __getitem__(self, label: str) -> str:
        return self.mapping[label]

    def inverse(self) -> "LabelBijection":
        return LabelBijection({v: k for k, v in self.mapping.items()})

    def apply(self, g: GeneralProblem, target_alphabet) -> GeneralProblem:
        """Rinomina le etichette di g verso target_alphabet"""
        target = tuple(target_alphabet)
        index = {label: i for i, label in enumerate(target)}
        translate = {i: index[self.mapping[label]] for i, label in enumerate(g.alphabet)}

        def convert(configs):
            return frozenset(tuple(sorted(translate[i] for i in c)) for c in configs)

        return GeneralProblem(target, g.d, g.delta, convert(g.white), convert(g.black))

    def to_document(self) -> Dict[str, str]:
        return dict(sorted(self.mapping.items()))


def problem_graph(g: GeneralProblem) -> nx.Graph:
    graph = nx.Graph()
    for i, label in enumerate(g.alphabet):
        graph.add_node(('label', i), kind='label')
    for side, configs in (('white', g.white), ('black', g.black)):
        for config in configs:
            node = (side, config)
            graph.add_node(node, kind=side)
            for i, multiplicity in Counter(config).items():
                graph.add_edge(node, ('label', i), multiplicity=multiplicity)
    return graph


def is_isomorphic(g1: GeneralProblem, g2: GeneralProblem) -> Optional[LabelBijection]:
    """
    Cerca una biiezione alphabet(g1) -> alphabet(g2) che porta le configurazioni
    di g1 su quelle di g2 (lato per lato)

    Returns:
        LabelBijection oppure None
    """
    if (g1.d, g1.delta, len(g1.alphabet), len(g1.white), len(g1.black)) != \
            (g2.d, g2.delta, len(g2.alphabet), len(g2.white), len(g2.black)):
        return None

    if g1.white == g2.white and g1.black == g2.black:
        return LabelBijection(dict(zip(g1.alphabet, g2.alphabet)))

    matcher = GraphMatcher(
        problem_graph(g1), problem_graph(g2),
        node_match=lambda a, b: a['kind'] == b['kind'],
        edge_match=lambda a, b: a['multiplicity'] == b['multiplicity'],
    )
    if not matcher.is_isomorphic():
        return None

    mapping = {
        g1.alphabet[source[1]]: g2.alphabet[target[1]]
        for source, target in matcher.mapping.items()
        if source[0] == 'label'
    }
    logger.debug(f"Isomorfismo trovato: {mapping}")
    return LabelBijection(mapping)
