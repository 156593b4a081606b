"""
Gerarchia delle eccezioni di arbor.

Le sottoclassi di InputError sono errori dell'utente (exit code 2 nella CLI),
ResourceCapError segnala un limite configurato superato (exit code 4).
"""


class ArborError(Exception):
    """Radice di tutte le eccezioni del progetto"""


class InputError(ArborError, ValueError):
    """Input non valido: problema, albero, etichettatura o parametri"""


class MalformedProblemError(InputError):
    """Stringa o documento del problema non valido"""


class InvalidTreeError(InputError):
    """Il grafo non è un albero 2-colorato correttamente"""


class LabelingError(InputError):
    """Etichettatura incompleta, arco sconosciuto o etichetta fuori alfabeto"""


class NotApplicableError(InputError):
    """Operazione non applicabile al problema (classe sbagliata, precondizione non soddisfatta)"""


class ResourceCapError(ArborError):
    """Superato un limite di risorse configurato"""

    def __init__(self, message: str, cap_name: str = None, cap_value: int = None):
        super().__init__(message)
        self.cap_name = cap_name
        self.cap_value = cap_value


class SimulationError(ArborError):
    """Violazione del contratto della simulazione LOCAL"""


class InvariantViolationError(ArborError, AssertionError):
    """Invariante strutturale di un algoritmo violata durante l'esecuzione"""


class DispatchError(ArborError):
    """Nessuna strategia di risoluzione trovata per un problema logaritmico"""
