"""
Exceptions de RepVar Calculator

Toutes dérivent de ValueError : un appelant peut continuer à attraper
ValueError comme dans le reste du code.
"""
from typing import Optional


class RepVarError(ValueError):
    """Erreur de base du calculateur"""


class ParseError(RepVarError):
    """Erreur de syntaxe, avec la position fautive dans le texte"""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (position {position})"
        super().__init__(message)


class RankMismatchError(RepVarError):
    """Rangs de groupes libres incompatibles"""


class IndexOutOfRangeError(RepVarError):
    """Indice de générateur ou de coordonnée hors bornes"""


class UnsupportedError(RepVarError):
    """Opération non prise en charge pour ce groupe ou ce rang"""


class BoundExceededError(RepVarError):
    """Une borne d'énumération ou de clôture a été dépassée"""


class DescriptorMismatchError(RepVarError):
    """Éléments appartenant à des groupes différents"""


class NotInvertibleError(RepVarError):
    """Matrice ou endomorphisme non inversible"""


class TraceReductionError(RepVarError):
    """Budget de réduction de traces épuisé (ne devrait jamais arriver)"""
