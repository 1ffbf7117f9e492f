"""
Module des systèmes de racines et de l'élément le plus long w₀

Réalisations de Bourbaki à coordonnées rationnelles exactes, matrices de
Cartan, racines positives, w₀ et critère w₀ = -1, classification de la
fidélité pour n = 1 sur X//Int(G).
"""
import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from sympy import ImmutableMatrix, Rational, eye

from modules.errors import ParseError

logger = logging.getLogger(__name__)

ROOT_TYPES = ('A', 'B', 'C', 'D', 'E', 'F', 'G')

HALF = Rational(1, 2)


def validate_type(root_type: str, rank: int):
    """Vérifie qu'un couple (type, rang) désigne un système de racines simple"""
    valid = {
        'A': rank >= 1,
        'B': rank >= 2,
        'C': rank >= 2,
        'D': rank >= 3,
        'E': rank in (6, 7, 8),
        'F': rank == 4,
        'G': rank == 2,
    }
    if root_type not in valid:
        raise ValueError(f"Type de racines inconnu : {root_type}")
    if not valid[root_type]:
        raise ValueError(f"Rang {rank} invalide pour le type {root_type}")


def _e(i: int, dim: int) -> List[Rational]:
    vector = [Rational(0)] * dim
    vector[i - 1] = Rational(1)
    return vector


def _add(*vectors: Sequence[Rational]) -> List[Rational]:
    return [sum(parts, Rational(0)) for parts in zip(*vectors)]


def _scale(c, v: Sequence[Rational]) -> List[Rational]:
    return [c * x for x in v]


def _e8_roots() -> List[List[Rational]]:
    first = _add(_scale(HALF, _add(_e(1, 8), _e(8, 8))),
                 _scale(-HALF, _add(*(_e(k, 8) for k in range(2, 8)))))
    roots = [first, _add(_e(1, 8), _e(2, 8)), _add(_e(2, 8), _scale(-1, _e(1, 8)))]
    roots.extend(_add(_e(k + 1, 8), _scale(-1, _e(k, 8))) for k in range(2, 7))
    return roots


def simple_roots(root_type: str, rank: int) -> List[List[Rational]]:
    """
    Racines simples dans la réalisation de Bourbaki

    Args:
        root_type: A..G
        rank: Rang ℓ

    Returns:
        Liste de ℓ vecteurs rationnels
    """
    validate_type(root_type, rank)
    l = rank
    if root_type == 'A':
        return [_add(_e(i, l + 1), _scale(-1, _e(i + 1, l + 1))) for i in range(1, l + 1)]
    if root_type in ('B', 'C', 'D'):
        roots = [_add(_e(i, l), _scale(-1, _e(i + 1, l))) for i in range(1, l)]
        if root_type == 'B':
            roots.append(_e(l, l))
        elif root_type == 'C':
            roots.append(_scale(2, _e(l, l)))
        else:
            roots.append(_add(_e(l - 1, l), _e(l, l)))
        return roots
    if root_type == 'E':
        return _e8_roots()[:rank]
    if root_type == 'F':
        return [
            _add(_e(2, 4), _scale(-1, _e(3, 4))),
            _add(_e(3, 4), _scale(-1, _e(4, 4))),
            _e(4, 4),
            _scale(HALF, _add(_e(1, 4), _scale(-1, _add(_e(2, 4), _e(3, 4), _e(4, 4))))),
        ]
    # G₂ dans le plan x₁ + x₂ + x₃ = 0
    return [_add(_e(1, 3), _scale(-1, _e(2, 3))),
            _add(_scale(-2, _e(1, 3)), _e(2, 3), _e(3, 3))]


@dataclass(frozen=True)
class RootSystem:
    """Système de racines simple de type root_type et de rang ℓ"""
    root_type: str
    rank: int

    def __post_init__(self):
        validate_type(self.root_type, self.rank)

    @property
    def label(self) -> str:
        return f"{self.root_type}{self.rank}"

    @cached_property
    def simple_roots(self) -> ImmutableMatrix:
        """Racines simples en lignes"""
        return ImmutableMatrix(simple_roots(self.root_type, self.rank))

    @cached_property
    def gram_matrix(self) -> ImmutableMatrix:
        A = self.simple_roots
        return ImmutableMatrix(A * A.T)

    @cached_property
    def cartan_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        """K[i][j] = 2(α_i, α_j) / (α_j, α_j)"""
        G = self.gram_matrix
        return tuple(tuple(int(2 * G[i, j] / G[j, j]) for j in range(self.rank))
                     for i in range(self.rank))


def gram_matrix(rs: RootSystem) -> ImmutableMatrix:
    return rs.gram_matrix


@dataclass(frozen=True)
class WeylElement:
    """
    Élément de W et mot réduit

    matrix agit sur les colonnes de coordonnées dans la base des racines
    simples (entières) ; la forme orthogonale dans la base canonique de la
    réalisation est donnée par ambient_matrix.
    """
    matrix: ImmutableMatrix
    word: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def to_dict(self) -> Dict:
        return {
            'word': list(self.word),
            'length': self.length,
            'matrix': [[int(x) for x in self.matrix.row(i)] for i in range(self.matrix.rows)]
        }


def _reflection_matrix(rs: RootSystem, i: int) -> ImmutableMatrix:
    K = rs.cartan_matrix
    M = eye(rs.rank)
    for j in range(rs.rank):
        M[i, j] -= K[j][i]
    return ImmutableMatrix(M)


def reflection(rs: RootSystem, i: int) -> WeylElement:
    """Réflexion simple s_i (i = 1..ℓ) : α_j ↦ α_j - K[j][i] α_i"""
    if not 1 <= i <= rs.rank:
        raise ValueError(f"Indice de réflexion {i} hors de 1..{rs.rank}")
    return WeylElement(_reflection_matrix(rs, i - 1), (i,))


def positive_roots(rs: RootSystem) -> List[Tuple[int, ...]]:
    """
    Racines positives en coordonnées des racines simples

    Clôture des racines simples par les réflexions simples.
    """
    K = rs.cartan_matrix
    l = rs.rank
    start = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    roots = set(start)
    frontier = list(start)
    while frontier:
        next_frontier = []
        for v in frontier:
            for i in range(l):
                pairing = sum(v[j] * K[j][i] for j in range(l))
                if pairing:
                    w = tuple(v[j] - pairing * (j == i) for j in range(l))
                    if w not in roots:
                        roots.add(w)
                        next_frontier.append(w)
        frontier = next_frontier
    return sorted(r for r in roots if all(c >= 0 for c in r))


def longest_element(rs: RootSystem) -> WeylElement:
    """
    Élément le plus long w₀

    On part de ρ (accouplements 1 avec toutes les coracines simples) et on
    réfléchit tant qu'un accouplement est positif ; la suite des réflexions
    est un mot réduit de w₀.
    """
    K = rs.cartan_matrix
    l = rs.rank
    pairings = [1] * l
    word = []
    while True:
        i = next((k for k in range(l) if pairings[k] > 0), None)
        if i is None:
            break
        c = pairings[i]
        pairings = [pairings[j] - c * K[i][j] for j in range(l)]
        word.append(i + 1)
    matrix = eye(l)
    for i in word:
        matrix = _reflection_matrix(rs, i - 1) * matrix
    logger.debug("w₀ de %s : longueur %d", rs.label, len(word))
    return WeylElement(ImmutableMatrix(matrix), tuple(word))


def ambient_matrix(rs: RootSystem, w: WeylElement) -> ImmutableMatrix:
    """
    Matrice orthogonale de w dans la base canonique de la réalisation

    Produit des réflexions v ↦ v - 2(v, α)/(α, α) α le long du mot réduit.
    """
    dim = rs.simple_roots.cols
    matrix = eye(dim)
    for i in w.word:
        alpha = rs.simple_roots.row(i - 1).T
        norm = (alpha.T * alpha)[0, 0]
        matrix = (eye(dim) - 2 * alpha * alpha.T / norm) * matrix
    return ImmutableMatrix(matrix)


def minus_one_in_weyl(rs: RootSystem) -> bool:
    """Vrai si w₀ = -1, i.e. -1 ∈ W"""
    return longest_element(rs).matrix == ImmutableMatrix(-eye(rs.rank))


def minus_one_table(root_type: str, rank: int) -> bool:
    """Forme close : -1 ∉ W exactement pour A_ℓ (ℓ ≥ 2), D_ℓ (ℓ impair), E₆"""
    validate_type(root_type, rank)
    if root_type == 'A':
        return rank == 1
    if root_type == 'D':
        return rank % 2 == 0
    if root_type == 'E':
        return rank != 6
    return True


def classify_faithful_n1(factors: Sequence[Tuple[str, int]], n: int = 1) -> bool:
    """
    Fidélité de l'action de Aut(F_n) sur X//Int(G)

    Pour n = 1 : fidèle si et seulement si un facteur simple a w₀ ≠ -1.
    Pour n ≥ 2 les automorphismes intérieurs de F_n agissent trivialement :
    jamais fidèle.

    Args:
        factors: Types (type, rang) des facteurs simples de G
        n: Rang du groupe libre

    Returns:
        True si l'action est fidèle
    """
    if not factors:
        raise ValueError("La liste des facteurs simples est vide")
    systems = [RootSystem(t, l) for t, l in factors]
    if n >= 2:
        return False
    return any(not minus_one_in_weyl(rs) for rs in systems)


_FACTOR = re.compile(r"\s*([A-Za-z])(\d+)\s*$")


def parse_factors(text: str) -> List[Tuple[str, int]]:
    """Lit « A2,D5,E6 »"""
    factors = []
    offset = 0
    for token in text.split(','):
        match = _FACTOR.match(token)
        if not match:
            raise ParseError(f"Facteur invalide '{token.strip()}'", offset)
        root_type, rank = match.group(1).upper(), int(match.group(2))
        try:
            validate_type(root_type, rank)
        except ValueError as e:
            raise ParseError(str(e), offset) from e
        factors.append((root_type, rank))
        offset += len(token) + 1
    return factors


def simple_types(max_rank: int = 8) -> List[Tuple[str, int]]:
    """Tous les types simples valides de rang ≤ max_rank"""
    result = []
    for root_type in ROOT_TYPES:
        for rank in range(1, max_rank + 1):
            try:
                validate_type(root_type, rank)
            except ValueError:
                continue
            result.append((root_type, rank))
    return result
