"""Eccezioni del motore dei momenti."""


class MomentsError(Exception):
    """Errore base del pacchetto."""


class InputValidationError(MomentsError, ValueError):
    """Input non valido (parsing, pesi, argomenti fuori dominio)."""


class InfeasibleSizeError(MomentsError, ValueError):
    """Dimensione del problema oltre i limiti configurati."""


class ConsistencyError(MomentsError, RuntimeError):
    """Due calcoli indipendenti dello stesso valore non coincidono."""


class ConfigError(MomentsError, ValueError):
    """Configurazione non valida."""
