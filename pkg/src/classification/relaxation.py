"""
Rilassamento dei problemi di tipo VII verso l'orientamento senza pozzi o un
problema a grado proibito.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, FrozenSet, Optional, Tuple

from classification.classifier import Complexity, classify
from core.binary_problem import (
    EQUIVALENCE_ORDER,
    BinaryProblem,
    Color,
    EquivalenceMap,
    is_restriction,
    restriction_flips,
)
from core.exceptions import InvariantViolationError, NotApplicableError


class TargetKind(str, Enum):
    SINKLESS_ORIENTATION = "SinklessOrientation"
    FORBIDDEN_DEGREE = "ForbiddenDegree"


@dataclass(frozen=True)
class RelaxationTarget:
    kind: TargetKind
    index: Optional[int]
    flips: FrozenSet[Tuple[Color, int]]
    equivalence_applied: EquivalenceMap
    target: BinaryProblem

    def to_document(self) -> Dict[str, Any]:
        return {
            'kind': self.kind.value,
            'index': self.index,
            'flips': [{'side': color.value, 'index': i} for color, i in sorted(self.flips)],
            'equivalence_applied': self.equivalence_applied.value,
            'target': self.target.to_document(),
        }


def sinkless_orientation(d: int, delta: int) -> BinaryProblem:
    return BinaryProblem(d, delta, '1' * d + '0', '0' + '1' * delta)


def forbidden_degree(d: int, delta: int, i: int) -> BinaryProblem:
    return BinaryProblem(d, delta, '1' * i + '0' + '1' * (d - i), '0' + '1' * (delta - 1) + '0')


def _target_for(q: BinaryProblem) -> Optional[Tuple[TargetKind, Optional[int], BinaryProblem]]:
    if q.W[q.d] == '0' and q.B[0] == '0':
        return TargetKind.SINKLESS_ORIENTATION, None, sinkless_orientation(q.d, q.delta)
    if q.W[0] == '1' and q.W[q.d] == '1' and q.B[0] == '0' and q.B[q.delta] == '0':
        interior = q.W.find('0', 1, q.d)
        if interior != -1:
            return TargetKind.FORBIDDEN_DEGREE, interior, forbidden_degree(q.d, q.delta, interior)
    return None


def relaxation_target(p: BinaryProblem) -> RelaxationTarget:
    """
    Prima mappa di equivalenza (in ordine fisso) per cui il problema si rilassa
    a SO (W = 1..10, B = 01..1) o a grado proibito i (W = 1^i 0 1^(d-i), B = 01..10)
    """
    if classify(p).complexity is not Complexity.LOGARITHMIC:
        raise NotApplicableError(f"{p} non è di tipo VII: nessun rilassamento definito")

    for equivalence in EQUIVALENCE_ORDER:
        q = equivalence.apply(p)
        found = _target_for(q)
        if found is None:
            continue
        kind, index, target = found
        if not is_restriction(q, target):
            raise InvariantViolationError(f"{q} non è una restrizione di {target}")
        return RelaxationTarget(kind, index, restriction_flips(q, target), equivalence, target)

    raise InvariantViolationError(f"Nessun rilassamento trovato per il problema di tipo VII {p}")
