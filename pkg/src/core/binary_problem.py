"""
Problemi di etichettatura binaria (d, delta, W, B) e relazioni strutturali

Fornisce:
- BinaryProblem immutabile con validazione e serializzazione canonica
- Le quattro mappe di equivalenza (scambio colori, complemento, entrambe)
- Restrizione, resilienza (t, s), completamento di etichettature parziali, escape
"""

import json
import re
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Any, Dict, FrozenSet, Iterator, List, Mapping, Optional, Tuple, Union

import yaml

from core.exceptions import MalformedProblemError

INLINE_PATTERN = re.compile(r'^\s*(\w+)\s*=\s*([^,]+?)\s*$')


class Color(str, Enum):
    """Colore di un nodo (e lato di un vincolo)"""
    WHITE = "white"
    BLACK = "black"

    @property
    def other(self) -> "Color":
        return Color.BLACK if self is Color.WHITE else Color.WHITE


@dataclass(frozen=True, order=True)
class BinaryProblem:
    """
    Problema binario: i bianchi di grado d devono avere grado-X in W,
    i neri di grado delta grado-X in B. W e B sono stringhe di '0'/'1'.
    """
    d: int
    delta: int
    W: str
    B: str

    def __post_init__(self):
        for name, value in (('d', self.d), ('delta', self.delta)):
            if isinstance(value, bool) or not isinstance(value, int):
                raise MalformedProblemError(f"{name} deve essere un intero, trovato {value!r}")
            if value < 2:
                raise MalformedProblemError(f"{name} deve essere almeno 2, trovato {value}")
        for name, bits, degree in (('W', self.W, self.d), ('B', self.B, self.delta)):
            if not isinstance(bits, str) or not bits or set(bits) - {'0', '1'}:
                raise MalformedProblemError(f"{name} deve contenere solo '0' e '1', trovato {bits!r}")
            if len(bits) != degree + 1:
                raise MalformedProblemError(
                    f"Lunghezza di {name} errata: {len(bits)} invece di {degree + 1}"
                )

    # Accesso ai vincoli

    def constraint(self, color: Color) -> str:
        return self.W if color is Color.WHITE else self.B

    def degree(self, color: Color) -> int:
        return self.d if color is Color.WHITE else self.delta

    def allows(self, color: Color, x_degree: int) -> bool:
        bits = self.constraint(color)
        return 0 <= x_degree < len(bits) and bits[x_degree] == '1'

    # Trasformazioni di equivalenza

    def swap(self) -> "BinaryProblem":
        """Scambia i colori: (delta, d, B, W)"""
        return BinaryProblem(self.delta, self.d, self.B, self.W)

    def complement(self) -> "BinaryProblem":
        """Complementa X: in notazione vettoriale W e B vengono invertiti"""
        return BinaryProblem(self.d, self.delta, self.W[::-1], self.B[::-1])

    def serialize(self) -> str:
        return f"d={self.d},delta={self.delta},W={self.W},B={self.B}"

    def to_document(self) -> Dict[str, Any]:
        return {'d': self.d, 'delta': self.delta, 'W': self.W, 'B': self.B}

    def __str__(self) -> str:
        return f"({self.d},{self.delta},{self.W},{self.B})"


class EquivalenceMap(Enum):
    """Le quattro trasformazioni che preservano la complessità"""
    IDENTITY = "identity"
    SWAP = "swap"
    COMPLEMENT = "complement"
    SWAP_COMPLEMENT = "swap+complement"

    @property
    def swaps_colors(self) -> bool:
        return self in (EquivalenceMap.SWAP, EquivalenceMap.SWAP_COMPLEMENT)

    @property
    def complements_labels(self) -> bool:
        return self in (EquivalenceMap.COMPLEMENT, EquivalenceMap.SWAP_COMPLEMENT)

    def apply(self, p: BinaryProblem) -> BinaryProblem:
        q = p.swap() if self.swaps_colors else p
        return q.complement() if self.complements_labels else q


# Ordine di prova fisso, usato da classificazione e dispatch
EQUIVALENCE_ORDER: Tuple[EquivalenceMap, ...] = (
    EquivalenceMap.IDENTITY,
    EquivalenceMap.SWAP,
    EquivalenceMap.COMPLEMENT,
    EquivalenceMap.SWAP_COMPLEMENT,
)


@dataclass(frozen=True)
class EquivClass:
    members: FrozenSet[BinaryProblem]
    canonical: BinaryProblem

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p: object) -> bool:
        return p in self.members

    def __iter__(self) -> Iterator[BinaryProblem]:
        return iter(sorted(self.members))


@dataclass(frozen=True)
class ResilienceQuery:
    """Budget di porte già fissate: t per i bianchi, s per i neri"""
    t: int
    s: int

    def validate_for(self, p: BinaryProblem) -> None:
        if not 0 <= self.t <= p.d or not 0 <= self.s <= p.delta:
            raise MalformedProblemError(
                f"Query di resilienza ({self.t},{self.s}) fuori range per d={p.d}, delta={p.delta}"
            )


# Parsing e formattazione

def parse_problem(source: Union[str, Mapping[str, Any]]) -> BinaryProblem:
    """
    Costruisce un BinaryProblem da forma inline, documento JSON/YAML o mapping

    Args:
        source: "d=3,delta=2,W=1110,B=010", un documento {d, delta, W, B} o un dict

    Returns:
        BinaryProblem validato

    Raises:
        MalformedProblemError: sintassi errata, lunghezze incoerenti, gradi < 2
    """
    if isinstance(source, Mapping):
        return _problem_from_mapping(source)

    if not isinstance(source, str) or not source.strip():
        raise MalformedProblemError("Specifica del problema vuota")

    text = source.strip()
    if text.startswith('{') or '\n' in text or ':' in text:
        try:
            document = json.loads(text) if text.startswith('{') else yaml.load(text, Loader=yaml.BaseLoader)
        except (json.JSONDecodeError, yaml.YAMLError) as e:
            raise MalformedProblemError(f"Documento del problema non valido: {e}") from e
        if not isinstance(document, Mapping):
            raise MalformedProblemError("Il documento del problema deve essere un oggetto")
        return _problem_from_mapping(document)

    fields: Dict[str, str] = {}
    for part in text.split(','):
        match = INLINE_PATTERN.match(part)
        if not match:
            raise MalformedProblemError(f"Frammento inline non valido: {part!r}")
        fields[match.group(1)] = match.group(2)
    return _problem_from_mapping(fields)


def _problem_from_mapping(document: Mapping[str, Any]) -> BinaryProblem:
    missing = [key for key in ('d', 'delta', 'W', 'B') if key not in document]
    if missing:
        raise MalformedProblemError(f"Campi mancanti nel problema: {missing}")
    try:
        d = int(document['d'])
        delta = int(document['delta'])
    except (TypeError, ValueError) as e:
        raise MalformedProblemError(f"Gradi non interi: {e}") from e
    for key in ('W', 'B'):
        if not isinstance(document[key], str):
            # 0111 senza virgolette diventa un intero (ottale in YAML 1.1)
            raise MalformedProblemError(f"{key} deve essere una stringa di bit tra virgolette, trovato {document[key]!r}")
    return BinaryProblem(d, delta, str(document['W']).strip(), str(document['B']).strip())


def format_problem(p: BinaryProblem) -> str:
    return p.serialize()


# Relazioni strutturali

def equivalent_set(p: BinaryProblem) -> EquivClass:
    members = frozenset(m.apply(p) for m in EQUIVALENCE_ORDER)
    canonical = min(members, key=lambda q: (q.d, q.delta, q.W, q.B))
    return EquivClass(members=members, canonical=canonical)


def is_restriction(sub: BinaryProblem, sup: BinaryProblem) -> bool:
    """True se sub si ottiene da sup spegnendo bit a 1 (stessi gradi)"""
    if sub.d != sup.d or sub.delta != sup.delta:
        return False
    return all(
        b == '0' or a == '1'
        for sub_bits, sup_bits in ((sub.W, sup.W), (sub.B, sup.B))
        for b, a in zip(sub_bits, sup_bits)
    )


def restriction_flips(sub: BinaryProblem, sup: BinaryProblem) -> FrozenSet[Tuple[Color, int]]:
    """Bit (lato, indice) a 1 in sup e a 0 in sub; presuppone is_restriction(sub, sup)"""
    flips = set()
    for color, sub_bits, sup_bits in ((Color.WHITE, sub.W, sup.W), (Color.BLACK, sub.B, sup.B)):
        flips.update((color, i) for i, (b, a) in enumerate(zip(sub_bits, sup_bits)) if a == '1' and b == '0')
    return frozenset(flips)


def is_resilient(p: BinaryProblem, q: ResilienceQuery) -> bool:
    q.validate_for(p)
    return ('0' * (p.d - q.t + 1)) not in p.W and ('0' * (p.delta - q.s + 1)) not in p.B


def complete_labeling(constraint: str, fixed_ones: int, fixed_total: int) -> Optional[int]:
    """
    Numero di 1 da aggiungere alle porte libere per soddisfare il vincolo

    Args:
        constraint: vettore di bit di lunghezza k+1
        fixed_ones: porte già fissate a 1
        fixed_total: porte già fissate in totale

    Returns:
        j - fixed_ones per il minimo j ammissibile, None se non esiste
    """
    k = len(constraint) - 1
    if not 0 <= fixed_ones <= fixed_total <= k:
        raise MalformedProblemError(
            f"Porte fissate incoerenti: ones={fixed_ones}, total={fixed_total}, k={k}"
        )
    upper = k - (fixed_total - fixed_ones)
    for j in range(fixed_ones, upper + 1):
        if constraint[j] == '1':
            return j - fixed_ones
    return None


def has_escape(bits: str) -> bool:
    return '11' in bits


# Enumerazioni per sweep esaustivi

def all_constraints(degree: int) -> Iterator[str]:
    for bits in product('01', repeat=degree + 1):
        yield ''.join(bits)


def all_problems(d: int, delta: int) -> Iterator[BinaryProblem]:
    for W in all_constraints(d):
        for B in all_constraints(delta):
            yield BinaryProblem(d, delta, W, B)


def problems_up_to(d_max: int, delta_max: int) -> List[BinaryProblem]:
    return [p for d in range(2, d_max + 1) for delta in range(2, delta_max + 1) for p in all_problems(d, delta)]
