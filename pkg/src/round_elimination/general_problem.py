"""
Problemi di etichettatura bipartiti su alfabeto finito

Una configurazione è un multinsieme di etichette, memorizzato come tupla ordinata
di indici nell'alfabeto. Le espressioni abbreviate ("A X^2", "[A H T X]^2")
sono espanse al parsing: la rappresentazione interna è sempre esplicita.
"""

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple, Union

from core.binary_problem import BinaryProblem, Color
from core.exceptions import InputError, MalformedProblemError

Configuration = Tuple[int, ...]

TOKEN_PATTERN = re.compile(r'(\[[^\]]*\]|[^\s\[\]\^]+)(?:\^(\d+))?')


@dataclass(frozen=True)
class GeneralProblem:
    """
    Problema (Sigma, d, delta, W, B) con configurazioni esplicite.

    alphabet: nomi delle etichette, l'indice è la posizione
    white / black: insiemi di configurazioni (tuple ordinate di indici)
    """
    alphabet: Tuple[str, ...]
    d: int
    delta: int
    white: FrozenSet[Configuration]
    black: FrozenSet[Configuration]

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise MalformedProblemError(f"Alfabeto con etichette ripetute: {list(self.alphabet)}")
        if self.d < 1 or self.delta < 1:
            raise MalformedProblemError(f"Gradi non validi: d={self.d}, delta={self.delta}")
        k = len(self.alphabet)
        for side, configs, degree in (('white', self.white, self.d), ('black', self.black, self.delta)):
            for config in configs:
                if len(config) != degree:
                    raise MalformedProblemError(
                        f"Configurazione {side} di lunghezza {len(config)} invece di {degree}"
                    )
                if any(not 0 <= i < k for i in config) or list(config) != sorted(config):
                    raise MalformedProblemError(f"Configurazione {side} non canonica: {config}")

    def degree(self, color: Color) -> int:
        return self.d if color is Color.WHITE else self.delta

    def configs(self, color: Color) -> FrozenSet[Configuration]:
        return self.white if color is Color.WHITE else self.black

    def index_of(self, label: str) -> int:
        try:
            return self.alphabet.index(label)
        except ValueError:
            raise InputError(f"Etichetta {label!r} fuori dall'alfabeto {list(self.alphabet)}") from None

    def canonical(self, labels: Iterable[str]) -> Configuration:
        return tuple(sorted(self.index_of(label) for label in labels))

    def allows(self, color: Color, labels: Iterable[str]) -> bool:
        return self.canonical(labels) in self.configs(color)

    def render(self, config: Configuration) -> List[str]:
        return [self.alphabet[i] for i in config]

    def swap(self) -> "GeneralProblem":
        """Scambia i ruoli di bianco e nero"""
        return GeneralProblem(self.alphabet, self.delta, self.d, self.black, self.white)

    def describe(self) -> Dict[str, List[str]]:
        return {
            'white': [' '.join(self.render(c)) for c in sorted(self.white)],
            'black': [' '.join(self.render(c)) for c in sorted(self.black)],
        }

    def to_document(self) -> Dict[str, Any]:
        return {
            'alphabet': list(self.alphabet),
            'd': self.d,
            'delta': self.delta,
            'white': [self.render(c) for c in sorted(self.white)],
            'black': [self.render(c) for c in sorted(self.black)],
        }


def expand_expression(expression: str, alphabet: Sequence[str], degree: int) -> FrozenSet[Configuration]:
    """
    Espande un'espressione in configurazioni esplicite

    Le alternative sono separate da ';'. Ogni termine è un'etichetta o un gruppo
    [x y z] con esponente opzionale ^k.

    Example:
        expand_expression("A X^2; [H T]^3", "AHTX", 3)
    """
    index = {label: i for i, label in enumerate(alphabet)}
    configs = set()
    for alternative in expression.split(';'):
        alternative = alternative.strip()
        if not alternative:
            continue
        position = 0
        groups: List[Tuple[List[int], int]] = []
        for match in TOKEN_PATTERN.finditer(alternative):
            if alternative[position:match.start()].strip():
                raise MalformedProblemError(f"Espressione non valida: {alternative!r}")
            position = match.end()
            token, exponent = match.group(1), int(match.group(2) or 1)
            names = token[1:-1].split() if token.startswith('[') else [token]
            try:
                groups.append(([index[name] for name in names], exponent))
            except KeyError as e:
                raise InputError(f"Etichetta {e.args[0]!r} fuori dall'alfabeto {list(alphabet)}") from None
        if alternative[position:].strip():
            raise MalformedProblemError(f"Espressione non valida: {alternative!r}")
        if sum(exponent for _, exponent in groups) != degree:
            raise MalformedProblemError(f"L'espressione {alternative!r} non ha lunghezza {degree}")

        choices = [list(combinations_with_replacement(sorted(group), exponent)) for group, exponent in groups]
        for parts in product(*choices):
            configs.add(tuple(sorted(i for part in parts for i in part)))
    return frozenset(configs)


def general_from_document(document: Mapping[str, Any]) -> GeneralProblem:
    """Legge il formato {"alphabet", "d", "delta", "white"/"white_expr", "black"/"black_expr"}"""
    try:
        alphabet = tuple(str(label) for label in document['alphabet'])
        d, delta = int(document['d']), int(document['delta'])
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedProblemError(f"Documento del problema generale non valido: {e}") from e

    sides = {}
    for side, degree in (('white', d), ('black', delta)):
        configs = set()
        index = {label: i for i, label in enumerate(alphabet)}
        for raw in document.get(side, []) or []:
            try:
                configs.add(tuple(sorted(index[str(label)] for label in raw)))
            except KeyError as e:
                raise InputError(f"Etichetta {e.args[0]!r} fuori dall'alfabeto {list(alphabet)}") from None
        expression = document.get(f'{side}_expr')
        if expression:
            configs |= expand_expression(expression, alphabet, degree)
        sides[side] = frozenset(configs)
    return GeneralProblem(alphabet, d, delta, sides['white'], sides['black'])


def from_binary(p: BinaryProblem) -> GeneralProblem:
    """W diventa {1^k 0^(d-k) : w_k = 1} sull'alfabeto ("0", "1"); idem B"""
    def configs(bits: str, degree: int) -> FrozenSet[Configuration]:
        return frozenset((0,) * (degree - k) + (1,) * k for k, bit in enumerate(bits) if bit == '1')

    return GeneralProblem(('0', '1'), p.d, p.delta, configs(p.W, p.d), configs(p.B, p.delta))


def all_configurations(alphabet_size: int, degree: int) -> List[Configuration]:
    return list(combinations_with_replacement(range(alphabet_size), degree))


def general_problem(alphabet: Sequence[str], d: int, delta: int,
                    white: Union[str, Iterable[Sequence[str]]],
                    black: Union[str, Iterable[Sequence[str]]]) -> GeneralProblem:
    """Costruttore di comodo: configurazioni come espressioni o liste di nomi"""
    def build(configs, degree):
        if isinstance(configs, str):
            return expand_expression(configs, alphabet, degree)
        index = {label: i for i, label in enumerate(alphabet)}
        return frozenset(tuple(sorted(index[label] for label in config)) for config in configs)

    return GeneralProblem(tuple(alphabet), d, delta, build(white, d), build(black, delta))
