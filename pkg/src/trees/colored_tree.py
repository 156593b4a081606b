"""
Alberi 2-colorati con numerazione delle porte

Le porte di un nodo sono indicizzate da 0 e ordinate per id crescente del vicino,
salvo una mappa "ports" esplicita nel documento dell'albero.
"""

from collections import deque
from functools import cached_property
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from core.binary_problem import Color
from core.exceptions import InvalidTreeError, LabelingError

Edge = Tuple[int, int]
EdgeLabeling = Dict[Edge, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class ColoredTree:
    """
    Albero con 2-colorazione propria e porte.

    Args:
        colors: id nodo -> colore
        ports: id nodo -> vicini nell'ordine delle porte
    """

    def __init__(self, colors: Mapping[int, Color], ports: Mapping[int, Sequence[int]], validate: bool = True):
        self.colors: Dict[int, Color] = dict(colors)
        self.ports: Dict[int, Tuple[int, ...]] = {v: tuple(ports.get(v, ())) for v in self.colors}
        self._port_index: Dict[int, Dict[int, int]] = {
            v: {u: i for i, u in enumerate(neigh)} for v, neigh in self.ports.items()
        }
        if validate:
            self._validate()

    @classmethod
    def build(cls, colors: Mapping[int, Color], edges: Iterable[Edge],
              ports: Optional[Mapping[int, Sequence[int]]] = None) -> "ColoredTree":
        """Costruisce l'albero da archi; senza porte esplicite usa l'ordine per id crescente"""
        adjacency: Dict[int, List[int]] = {v: [] for v in colors}
        for u, v in edges:
            if u not in adjacency or v not in adjacency:
                raise InvalidTreeError(f"Arco ({u},{v}) con estremo sconosciuto")
            adjacency[u].append(v)
            adjacency[v].append(u)

        if ports is None:
            resolved = {v: sorted(neigh) for v, neigh in adjacency.items()}
        else:
            resolved = {}
            for v, neigh in adjacency.items():
                explicit = list(ports.get(v, sorted(neigh)))
                if sorted(explicit) != sorted(neigh):
                    raise InvalidTreeError(f"Le porte del nodo {v} non coincidono con i suoi archi")
                resolved[v] = explicit
        return cls(colors, resolved)

    def _validate(self) -> None:
        if not self.colors:
            raise InvalidTreeError("Albero vuoto")
        for v, neigh in self.ports.items():
            if len(set(neigh)) != len(neigh):
                raise InvalidTreeError(f"Archi multipli al nodo {v}")
            for u in neigh:
                if u not in self.colors:
                    raise InvalidTreeError(f"Il nodo {v} punta al nodo sconosciuto {u}")
                if v not in self._port_index[u]:
                    raise InvalidTreeError(f"Porte non simmetriche sull'arco ({v},{u})")
                if self.colors[u] == self.colors[v]:
                    raise InvalidTreeError(f"Colorazione non propria sull'arco ({v},{u})")
        if not nx.is_tree(self.to_networkx()):
            raise InvalidTreeError("Il grafo non è un albero (non connesso o con cicli)")

    # Accesso

    @property
    def n(self) -> int:
        return len(self.colors)

    def __len__(self) -> int:
        return len(self.colors)

    @cached_property
    def nodes(self) -> Tuple[int, ...]:
        return tuple(sorted(self.colors))

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        """Archi ordinati per (estremo minore, estremo maggiore)"""
        return tuple(sorted({edge_key(v, u) for v, neigh in self.ports.items() for u in neigh}))

    def color(self, v: int) -> Color:
        return self.colors[v]

    def degree(self, v: int) -> int:
        return len(self.ports[v])

    def neighbor(self, v: int, port: int) -> int:
        return self.ports[v][port]

    def port_of(self, v: int, u: int) -> int:
        """Porta di v che porta a u"""
        return self._port_index[v][u]

    def incident_edges(self, v: int) -> List[Edge]:
        return [edge_key(v, u) for u in self.ports[v]]

    def nodes_of(self, color: Color) -> List[int]:
        return [v for v in self.nodes if self.colors[v] is color]

    def leaves(self) -> List[int]:
        return [v for v in self.nodes if self.degree(v) <= 1]

    def is_constrained(self, v: int, d: int, delta: int) -> bool:
        """Un nodo è vincolato se ha il grado pieno del suo colore"""
        return self.degree(v) == (d if self.colors[v] is Color.WHITE else delta)

    def bfs(self, root: int) -> Tuple[List[int], Dict[int, Optional[int]], Dict[int, int]]:
        """Visita in ampiezza: ordine, padre e profondità"""
        parent: Dict[int, Optional[int]] = {root: None}
        depth = {root: 0}
        order = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in self.ports[v]:
                if u not in parent:
                    parent[u] = v
                    depth[u] = depth[v] + 1
                    order.append(u)
                    queue.append(u)
        return order, parent, depth

    # Trasformazioni

    def swap_colors(self) -> "ColoredTree":
        return ColoredTree({v: c.other for v, c in self.colors.items()}, self.ports, validate=False)

    @cached_property
    def _graph(self) -> nx.Graph:
        graph = nx.Graph()
        for v, c in self.colors.items():
            graph.add_node(v, color=c.value)
        graph.add_edges_from(edge_key(v, u) for v, neigh in self.ports.items() for u in neigh)
        return graph

    def to_networkx(self) -> nx.Graph:
        return self._graph.copy()

    def diameter(self) -> int:
        if self.n == 1:
            return 0
        return nx.diameter(self._graph)

    # Formato file

    def to_document(self, include_ports: bool = False) -> Dict[str, Any]:
        document: Dict[str, Any] = {
            'nodes': [{'id': v, 'color': self.colors[v].value} for v in self.nodes],
            'edges': [list(e) for e in self.edges],
        }
        if include_ports:
            document['ports'] = {str(v): list(self.ports[v]) for v in self.nodes}
        return document

    @classmethod
    def from_document(cls, document: Mapping[str, Any]) -> "ColoredTree":
        try:
            colors = {int(node['id']): Color(node['color']) for node in document['nodes']}
            edges = [(int(u), int(v)) for u, v in document.get('edges', [])]
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidTreeError(f"Documento dell'albero non valido: {e}") from e
        if len(colors) != len(document['nodes']):
            raise InvalidTreeError("Id di nodo duplicati")
        ports = document.get('ports')
        if ports is not None:
            ports = {int(v): [int(u) for u in neigh] for v, neigh in ports.items()}
        return cls.build(colors, edges, ports)


# Etichettature

def all_labeled(tree: ColoredTree, value: int) -> EdgeLabeling:
    return {e: value for e in tree.edges}


def complement_labeling(labeling: Mapping[Edge, int]) -> EdgeLabeling:
    return {e: 1 - x for e, x in labeling.items()}


def x_degree(tree: ColoredTree, labeling: Mapping[Edge, int], v: int) -> int:
    return sum(labeling[edge_key(v, u)] for u in tree.ports[v])


def labeling_to_document(tree: ColoredTree, labeling: Mapping[Edge, int]) -> Dict[str, Any]:
    return {'labels': [{'edge': list(e), 'x': int(labeling[e])} for e in tree.edges]}


def labeling_from_document(tree: ColoredTree, document: Mapping[str, Any]) -> EdgeLabeling:
    """Legge {"labels": [{"edge": [u, v], "x": 0|1}]} controllando archi e duplicati"""
    labeling: EdgeLabeling = {}
    known = set(tree.edges)
    for item in document.get('labels', []):
        try:
            u, v = item['edge']
            value = int(item['x'])
        except (KeyError, TypeError, ValueError) as e:
            raise LabelingError(f"Voce di etichettatura non valida: {item!r}") from e
        e = edge_key(int(u), int(v))
        if e not in known:
            raise LabelingError(f"Arco sconosciuto {list(e)}")
        if e in labeling:
            raise LabelingError(f"Arco {list(e)} etichettato due volte")
        if value not in (0, 1):
            raise LabelingError(f"Etichetta {value} non binaria sull'arco {list(e)}")
        labeling[e] = value
    return labeling


def orientation_digraph(tree: ColoredTree, labeling: Mapping[Edge, int]) -> nx.DiGraph:
    """
    Lettura come orientamento dei problemi con delta = 2.

    Ogni nero di grado 2 è un arco tra i suoi due bianchi; l'arco esce dal bianco
    il cui semi-arco è in X. I neri con grado-X diverso da 1 restano non orientati
    e sono registrati nell'attributo 'unoriented' del grafo.
    """
    digraph = nx.DiGraph()
    digraph.add_nodes_from(tree.nodes_of(Color.WHITE))
    unoriented = []
    for b in tree.nodes_of(Color.BLACK):
        if tree.degree(b) != 2:
            continue
        u, w = tree.ports[b]
        xu, xw = labeling[edge_key(b, u)], labeling[edge_key(b, w)]
        if xu == 1 and xw == 0:
            digraph.add_edge(u, w, black=b)
        elif xw == 1 and xu == 0:
            digraph.add_edge(w, u, black=b)
        else:
            unoriented.append(b)
    digraph.graph['unoriented'] = unoriented
    return digraph
