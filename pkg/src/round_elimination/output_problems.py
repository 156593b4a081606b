"""
Problemi di output dell'eliminazione dei round.

black_output: le nuove etichette sono sottoinsiemi non vuoti dell'alfabeto; una
configurazione nera è ammessa se ogni scelta di rappresentanti sta in B, e si
tengono solo le configurazioni massimali. L'alfabeto risultante è formato dai
sottoinsiemi che compaiono in configurazioni massimali; una configurazione bianca
è ammessa se esiste una scelta in W.

white_output è lo stesso con i ruoli scambiati.
"""

from itertools import combinations_with_replacement, product
from typing import Dict, FrozenSet, List, Set, Tuple

from core.config import get_limits_config
from core.exceptions import ResourceCapError
from core.log import get_elimination_logger, log_performance
from round_elimination.general_problem import Configuration, GeneralProblem

logger = get_elimination_logger(__name__)

# Un sottoinsieme di etichette è una bitmask sugli indici dell'alfabeto
SetConfiguration = Tuple[int, ...]


def _members(mask: int, size: int) -> List[int]:
    return [i for i in range(size) if mask >> i & 1]


def subset_name(alphabet: Tuple[str, ...], mask: int) -> str:
    return '{' + ','.join(alphabet[i] for i in _members(mask, len(alphabet))) + '}'


def check_caps(g: GeneralProblem) -> None:
    limits = get_limits_config()
    if len(g.alphabet) > limits['max_alphabet']:
        raise ResourceCapError(
            f"Alfabeto di {len(g.alphabet)} etichette oltre il limite {limits['max_alphabet']}",
            cap_name='max_alphabet', cap_value=limits['max_alphabet'],
        )
    if max(g.d, g.delta) > limits['max_re_degree']:
        raise ResourceCapError(
            f"Grado {max(g.d, g.delta)} oltre il limite {limits['max_re_degree']}",
            cap_name='max_re_degree', cap_value=limits['max_re_degree'],
        )


def for_all_choices(config: SetConfiguration, allowed: FrozenSet[Configuration], size: int) -> bool:
    """Ogni scelta di un rappresentante per posizione produce una configurazione ammessa"""
    options = [_members(mask, size) for mask in config]
    return all(tuple(sorted(choice)) in allowed for choice in product(*options))


def exists_choice(config: SetConfiguration, allowed: FrozenSet[Configuration], size: int) -> bool:
    options = [_members(mask, size) for mask in config]
    return any(tuple(sorted(choice)) in allowed for choice in product(*options))


def universal_configurations(g: GeneralProblem) -> Set[SetConfiguration]:
    """Tutte le configurazioni nere su sottoinsiemi che soddisfano il per-ogni"""
    size = len(g.alphabet)
    subsets = range(1, 1 << size)
    return {
        config for config in combinations_with_replacement(subsets, g.delta)
        if for_all_choices(config, g.black, size)
    }


def maximal_configurations(valid: Set[SetConfiguration], size: int) -> List[SetConfiguration]:
    """
    Configurazioni non estendibili aggiungendo un'etichetta a una posizione.

    L'insieme delle configurazioni valide è chiuso verso il basso, quindi basta
    controllare le estensioni di un singolo elemento.
    """
    maximal = []
    for config in sorted(valid):
        extended = False
        for position, mask in enumerate(config):
            for label in range(size):
                if mask >> label & 1:
                    continue
                candidate = list(config)
                candidate[position] = mask | 1 << label
                if tuple(sorted(candidate)) in valid:
                    extended = True
                    break
            if extended:
                break
        if not extended:
            maximal.append(config)
    return maximal


@log_performance(logger)
def black_output(g: GeneralProblem) -> GeneralProblem:
    """Problema di output lato nero, con massimalità e potatura dell'alfabeto"""
    check_caps(g)
    size = len(g.alphabet)

    valid = universal_configurations(g)
    maximal = maximal_configurations(valid, size)

    surviving = sorted({mask for config in maximal for mask in config},
                       key=lambda mask: (bin(mask).count('1'), _members(mask, size)))
    new_index: Dict[int, int] = {mask: i for i, mask in enumerate(surviving)}
    alphabet = tuple(subset_name(g.alphabet, mask) for mask in surviving)

    black = frozenset(tuple(sorted(new_index[mask] for mask in config)) for config in maximal)
    white = frozenset(
        tuple(sorted(new_index[mask] for mask in config))
        for config in combinations_with_replacement(surviving, g.d)
        if exists_choice(config, g.white, size)
    )

    logger.debug(
        f"Output nero: {len(valid)} configurazioni valide, {len(maximal)} massimali, "
        f"alfabeto di {len(alphabet)} etichette"
    )
    return GeneralProblem(alphabet, g.d, g.delta, white, black)


def white_output(g: GeneralProblem) -> GeneralProblem:
    """Come black_output con i ruoli di bianco e nero scambiati"""
    return black_output(g.swap()).swap()


def speedup_step(g: GeneralProblem) -> GeneralProblem:
    """Una coppia completa: output nero seguito da output bianco"""
    return white_output(black_output(g))


