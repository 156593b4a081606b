"""
Famiglia FDSO (grado proibito s oppure orientamento senza pozzi), test di punto
fisso e riduzioni costruttive da soluzioni binarie a soluzioni FDSO.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional

from core.binary_problem import BinaryProblem, Color
from core.exceptions import LabelingError, NotApplicableError
from core.log import get_elimination_logger
from round_elimination.general_problem import GeneralProblem, expand_expression
from round_elimination.isomorphism import LabelBijection, is_isomorphic
from round_elimination.output_problems import black_output, white_output
from trees.colored_tree import ColoredTree, Edge, edge_key
from verification.verifier import verify_labeling

logger = get_elimination_logger(__name__)

FDSO_ALPHABET = ('A', 'H', 'T', 'X')


def make_fdso(d: int, delta: int, s: int) -> GeneralProblem:
    """
    Bianchi: A X^(d-1), H^(s+1) X^(d-s-1), T^(d-s+1) X^(s-1).
    Neri: ogni multinsieme con una X, oppure con sia H sia T.
    """
    if d < 2 or delta < 2:
        raise NotApplicableError(f"FDSO richiede d, delta >= 2 (d={d}, delta={delta})")
    if not 0 < s < d:
        raise NotApplicableError(f"FDSO richiede 0 < s < d, trovato s={s} con d={d}")

    def term(label: str, exponent: int) -> str:
        return f"{label}^{exponent}" if exponent > 0 else ''

    white = '; '.join(
        ' '.join(filter(None, parts)) for parts in (
            ('A', term('X', d - 1)),
            (term('H', s + 1), term('X', d - s - 1)),
            (term('T', d - s + 1), term('X', s - 1)),
        )
    )
    black = f"X [A H T X]^{delta - 1}; H T" + (f" [A H T X]^{delta - 2}" if delta > 2 else '')
    return GeneralProblem(
        FDSO_ALPHABET, d, delta,
        expand_expression(white, FDSO_ALPHABET, d),
        expand_expression(black, FDSO_ALPHABET, delta),
    )


@dataclass
class FixedPointResult:
    """Esito del test di punto fisso con certificato"""
    is_fixed_point: bool
    bijection: Optional[LabelBijection]
    intermediates: List[GeneralProblem] = field(default_factory=list)

    def to_document(self) -> Dict[str, Any]:
        return {
            'fixed_point': self.is_fixed_point,
            'bijection': self.bijection.to_document() if self.bijection else None,
            'intermediates': [g.to_document() for g in self.intermediates],
        }


def is_fixed_point(g: GeneralProblem, pairs: int = 1) -> FixedPointResult:
    """Applica `pairs` volte (output nero, output bianco) e confronta con g"""
    if pairs < 1:
        raise NotApplicableError(f"pairs deve essere >= 1, trovato {pairs}")
    intermediates = []
    current = g
    for step in range(pairs):
        current = black_output(current)
        intermediates.append(current)
        current = white_output(current)
        intermediates.append(current)
        logger.debug(f"Coppia {step + 1}: alfabeto di {len(current.alphabet)} etichette")

    bijection = is_isomorphic(g, current)
    return FixedPointResult(bijection is not None, bijection, intermediates)


def _constrained(tree: ColoredTree, v: int, degree: int) -> bool:
    return tree.degree(v) == degree


def reduce_solution_to_fdso(source: BinaryProblem, x: Mapping[Edge, int], tree: ColoredTree,
                            s: int) -> Dict[Edge, str]:
    """
    Trasforma una soluzione di orientamento senza pozzi o di grado proibito s in
    una soluzione FDSO(s) con una regola locale ai bianchi.

    Args:
        source: (d, delta, 1^d 0, 0 1^delta) oppure (d, delta, 1^s 0 1^(d-s), 0 1^(delta-1) 0)
        x: soluzione valida di source su tree
        s: parametro di FDSO
    """
    d, delta = source.d, source.delta
    is_sinkless = source.W == '1' * d + '0' and source.B == '0' + '1' * delta
    is_forbidden = source.W == '1' * s + '0' + '1' * (d - s) and source.B == '0' + '1' * (delta - 1) + '0'
    if not 0 < s < d:
        raise NotApplicableError(f"FDSO richiede 0 < s < d, trovato s={s} con d={d}")
    if not (is_sinkless or is_forbidden):
        raise NotApplicableError(f"{source} non è né orientamento senza pozzi né grado proibito {s}")

    violations = verify_labeling(tree, source, x)
    if violations:
        raise LabelingError(f"La soluzione di partenza viola {len(violations)} vincoli, es. nodo {violations[0].node_id}")

    y: Dict[Edge, str] = {}
    for v in tree.nodes_of(Color.WHITE):
        edges = [edge_key(v, u) for u in tree.ports[v]]
        labels = ['X'] * len(edges)
        if _constrained(tree, v, d):
            zeros = [i for i, e in enumerate(edges) if x[e] == 0]
            ones = [i for i, e in enumerate(edges) if x[e] == 1]
            if is_sinkless:
                labels[zeros[0]] = 'A'
            elif len(ones) <= s - 1:
                for i in zeros[:d - s + 1]:
                    labels[i] = 'T'
            else:
                for i in ones[:s + 1]:
                    labels[i] = 'H'
        for e, label in zip(edges, labels):
            y[e] = label
    return y


def fdso_family(max_degree: int = 4) -> List[GeneralProblem]:
    """Tutti gli FDSO(s) con d, delta in [2, max_degree]"""
    return [
        make_fdso(d, delta, s)
        for d in range(2, max_degree + 1)
        for delta in range(2, max_degree + 1)
        for s in range(1, d)
    ]
