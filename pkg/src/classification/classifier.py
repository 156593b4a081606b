"""
Classificazione della complessità deterministica dei problemi binari su alberi
e bound randomizzati riconoscibili sintatticamente.

Le famiglie sono valutate nell'ordine della tabella (I.a ... VI.b); un problema
che non ne soddisfa nessuna è di tipo VII (logaritmico).
"""

from dataclasses import dataclass
from enum import Enum
from math import sqrt
from typing import Any, Callable, Dict, List, Tuple

import pandas as pd

from core.binary_problem import BinaryProblem, equivalent_set, has_escape, problems_up_to
from core.exceptions import NotApplicableError
from core.log import get_core_logger

logger = get_core_logger(__name__)


class Complexity(str, Enum):
    UNSOLVABLE = "Unsolvable"
    CONSTANT = "Constant"
    LOGARITHMIC = "Logarithmic"
    GLOBAL = "Global"


class Bound(str, Enum):
    CONSTANT = "Constant"
    LOGLOG = "LogLog"
    LOG = "Log"
    LINEAR = "Linear"

    @property
    def rank(self) -> int:
        return list(Bound).index(self)


def _zeros(bits: str) -> bool:
    return '1' not in bits


def _ones(bits: str) -> bool:
    return '0' not in bits


# (famiglia, predicato su (d, delta, W, B)) nell'ordine della tabella
FAMILY_PATTERNS: List[Tuple[str, Callable[[int, int, str, str], bool]]] = [
    ('I.a', lambda d, k, W, B: W == '1' + '0' * d and B[0] == '0'),
    ('I.b', lambda d, k, W, B: W == '0' * d + '1' and B[k] == '0'),
    ('I.c', lambda d, k, W, B: W[0] == '0' and B == '1' + '0' * k),
    ('I.d', lambda d, k, W, B: W[d] == '0' and B == '0' * k + '1'),
    ('II.a', lambda d, k, W, B: _zeros(W)),
    ('II.b', lambda d, k, W, B: _zeros(B)),
    ('III.a', lambda d, k, W, B: not _zeros(W) and _ones(B)),
    ('III.b', lambda d, k, W, B: _ones(W) and not _zeros(B)),
    ('IV.a', lambda d, k, W, B: W[0] == '1' and B[0] == '1'),
    ('IV.b', lambda d, k, W, B: W[d] == '1' and B[k] == '1'),
    ('V.a', lambda d, k, W, B: W == '1' + '0' * (d - 1) + '1' and B == '010'),
    ('V.b', lambda d, k, W, B: W == '010' and B == '1' + '0' * (k - 1) + '1'),
    ('VI.a', lambda d, k, W, B: _zeros(W[:d - 1]) and W[d - 1] == '1' and B[1] == '1' and _zeros(B[2:])),
    ('VI.b', lambda d, k, W, B: W[1] == '1' and _zeros(W[2:]) and _zeros(B[:k - 1]) and B[k - 1] == '1'),
]

FAMILY_COMPLEXITY = {
    'I': Complexity.UNSOLVABLE,
    'II': Complexity.UNSOLVABLE,
    'III': Complexity.CONSTANT,
    'IV': Complexity.CONSTANT,
    'V': Complexity.GLOBAL,
    'VI': Complexity.GLOBAL,
    'VII': Complexity.LOGARITHMIC,
}


def family_complexity(tag: str) -> Complexity:
    return FAMILY_COMPLEXITY[tag.split('.')[0]]


@dataclass(frozen=True)
class Classification:
    complexity: Complexity
    matched_families: Tuple[str, ...]
    primary_family: str

    def to_document(self) -> Dict[str, Any]:
        return {
            'complexity': self.complexity.value,
            'primary_family': self.primary_family,
            'matched_families': list(self.matched_families),
        }


@dataclass(frozen=True)
class RandomizedBounds:
    lower: Bound
    upper: Bound
    justification: Tuple[str, ...]

    def to_document(self) -> Dict[str, Any]:
        return {'lower': self.lower.value, 'upper': self.upper.value, 'justification': list(self.justification)}


def matching_families(p: BinaryProblem) -> List[str]:
    return [tag for tag, pattern in FAMILY_PATTERNS if pattern(p.d, p.delta, p.W, p.B)]


def classify(p: BinaryProblem) -> Classification:
    """Famiglie soddisfatte in ordine di tabella; la prima determina la classe"""
    matched = matching_families(p) or ['VII']
    return Classification(
        complexity=family_complexity(matched[0]),
        matched_families=tuple(matched),
        primary_family=matched[0],
    )


def _independent_set_pattern(q: BinaryProblem) -> bool:
    return q.d >= 20 and q.B == '010' and q.W == '11' + '0' * (q.d - 2) + '1'


def _cut_pattern(q: BinaryProblem) -> bool:
    if q.B != '010':
        return False
    d = q.d
    r = 0
    while r < d / 4 - sqrt(d - 1) / 2 and 2 * r + 1 <= d:
        if q.W == '1' * (r + 1) + '0' * (d - 2 * r - 1) + '1' * (r + 1):
            return True
        r += 1
    return False


def randomized_bounds(p: BinaryProblem) -> RandomizedBounds:
    """
    Bound randomizzati: O(1) e Theta(n) coincidono con il deterministico; per il tipo
    VII il bound superiore è Log e l'inferiore è Log solo se uno dei pattern noti
    si applica (anche a un problema equivalente), altrimenti LogLog.
    """
    classification = classify(p)
    if classification.complexity is Complexity.UNSOLVABLE:
        raise NotApplicableError(f"{p} non è risolvibile: nessun bound randomizzato")
    if classification.complexity is Complexity.CONSTANT:
        return RandomizedBounds(Bound.CONSTANT, Bound.CONSTANT, ('same-as-deterministic',))
    if classification.complexity is Complexity.GLOBAL:
        return RandomizedBounds(Bound.LINEAR, Bound.LINEAR, ('same-as-deterministic',))

    rules = []
    if not has_escape(p.W) and not has_escape(p.B):
        rules.append('no-escape-propagation')
    members = list(equivalent_set(p))
    if any(_independent_set_pattern(q) for q in members):
        rules.append('independent-set-pattern')
    if any(_cut_pattern(q) for q in members):
        rules.append('cut-pattern')

    if rules:
        return RandomizedBounds(Bound.LOG, Bound.LOG, tuple(rules))
    return RandomizedBounds(Bound.LOGLOG, Bound.LOG, ('forbidden-degree-relaxation',))


def classification_report(p: BinaryProblem) -> Dict[str, Any]:
    """Documento di classificazione con bound randomizzati e rilassamento (se VII)"""
    from classification.relaxation import relaxation_target

    classification = classify(p)
    report: Dict[str, Any] = {'problem': p.to_document(), **classification.to_document()}
    if classification.complexity is Complexity.UNSOLVABLE:
        report['randomized'] = None
    else:
        report['randomized'] = randomized_bounds(p).to_document()
    if classification.complexity is Complexity.LOGARITHMIC:
        report['relaxation_target'] = relaxation_target(p).to_document()
    return report


def sweep_rows(d_max: int, delta_max: int) -> List[Dict[str, Any]]:
    rows = []
    for p in problems_up_to(d_max, delta_max):
        classification = classify(p)
        bounds = None if classification.complexity is Complexity.UNSOLVABLE else randomized_bounds(p)
        rows.append({
            'problem': p.serialize(),
            'd': p.d,
            'delta': p.delta,
            'W': p.W,
            'B': p.B,
            'complexity': classification.complexity.value,
            'primary_family': classification.primary_family,
            'matched_families': ' '.join(classification.matched_families),
            'randomized_lower': bounds.lower.value if bounds else None,
            'randomized_upper': bounds.upper.value if bounds else None,
        })
    logger.info(f"Sweep d<={d_max}, delta<={delta_max}: {len(rows)} problemi classificati")
    return rows


def sweep_dataframe(d_max: int, delta_max: int) -> pd.DataFrame:
    """Tabella della classificazione di tutti i problemi fino ai gradi dati"""
    return pd.DataFrame(sweep_rows(d_max, delta_max))
