"""
Module de la variété de représentations X = Hom(F_n, G) = Gⁿ

Évaluation des mots, actions σ_X (précomposition) et γ_X (postcomposition),
action combinée de Aut(F_n)×Aut(G), orbites sous un sous-groupe fini R.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import config
from modules.automorphisms import AutElement, Endomorphism
from modules.errors import (BoundExceededError, DescriptorMismatchError,
                            ParseError, RankMismatchError, UnsupportedError)
from modules.free_group import ReducedWord
from modules.matrix_groups import (AutSubgroupR, GroupAutomorphism,
                                   GroupElement, MatrixGroup, apply_automorphism,
                                   format_matrix, parse_matrix)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Point:
    """Point x = (g_1, …, g_n) de Gⁿ"""
    group: MatrixGroup
    coords: Tuple[GroupElement, ...]

    def __post_init__(self):
        for g in self.coords:
            if g.group != self.group:
                raise DescriptorMismatchError(f"Coordonnée de {g.group} dans un point de {self.group}")

    @property
    def n(self) -> int:
        return len(self.coords)

    def order_key(self) -> Tuple:
        return tuple(g.order_key() for g in self.coords)

    def to_dict(self) -> Dict:
        return point_to_dict(self)

    def __str__(self) -> str:
        return ";".join(format_matrix(g) for g in self.coords)


def make_point(group: MatrixGroup, coords: Sequence[GroupElement]) -> Point:
    return Point(group, tuple(coords))


def point_order_key(x: Point) -> Tuple:
    """Ordre lexicographique coordonnée par coordonnée"""
    return x.order_key()


def point_to_dict(x: Point) -> Dict:
    """Sérialisation JSON : descripteur, module du corps, matrices"""
    return {
        'group': str(x.group),
        'modulus': x.group.modulus,
        'coords': [g.to_list() for g in x.coords]
    }


def point_from_text(text: str, group: MatrixGroup) -> Point:
    """
    Lit un point « [1,1;0,1];[1,0;1,1] »

    Les ';' hors crochets séparent les coordonnées.

    Args:
        text: Littéral
        group: Groupe G

    Returns:
        Le point
    """
    coords = []
    depth = 0
    start = 0
    for pos, char in enumerate(text + ';'):
        if char == '[':
            depth += 1
        elif char == ']':
            depth -= 1
            if depth < 0:
                raise ParseError("Crochet fermant sans ouvrant", pos)
        elif char == ';' and depth == 0:
            chunk = text[start:pos]
            if chunk.strip():
                coords.append(parse_matrix(chunk, group, start))
            elif pos < len(text):
                raise ParseError("Coordonnée vide", pos)
            start = pos + 1
    if depth != 0:
        raise ParseError("Crochet ouvrant non fermé", len(text))
    return make_point(group, coords)


def random_point(group: MatrixGroup, n: int, rng) -> Point:
    """Point uniforme de Gⁿ (G fini)"""
    return make_point(group, [group.random_element(rng) for _ in range(n)])


# === ÉVALUATION ET ACTIONS ===

def evaluate_word(w: ReducedWord, x: Point) -> GroupElement:
    """
    Image w(x) : substitue g_j à f_j et multiplie

    Args:
        w: Mot de rang n
        x: Point de Gⁿ

    Returns:
        L'élément w(g_1, …, g_n)
    """
    if w.rank != x.n:
        raise RankMismatchError(f"Mot de rang {w.rank} évalué en un point de Gⁿ, n={x.n}")
    inverses = {}
    result = x.group.identity()
    for letter in w.letters:
        g = x.coords[letter.index - 1]
        if letter.sign < 0:
            if letter.index not in inverses:
                inverses[letter.index] = g.inverse()
            g = inverses[letter.index]
        result = result * g
    return result


def _endomorphism(sigma: Union[Endomorphism, AutElement]) -> Endomorphism:
    return sigma.forward if isinstance(sigma, AutElement) else sigma


def sigma_X(sigma: Union[Endomorphism, AutElement], x: Point) -> Point:
    """
    Précomposition x ↦ x∘σ : la coordonnée j devient σ(f_j)(x)

    Il s'agit d'une anti-action : (σ∘τ)_X = τ_X∘σ_X.
    """
    endo = _endomorphism(sigma)
    if endo.rank != x.n:
        raise RankMismatchError(f"Endomorphisme de rang {endo.rank} sur un point de rang {x.n}")
    return make_point(x.group, [evaluate_word(image, x) for image in endo.images])


def gamma_X(gamma: GroupAutomorphism, x: Point) -> Point:
    """Postcomposition x ↦ γ∘x, coordonnée par coordonnée"""
    return make_point(x.group, [apply_automorphism(gamma, g) for g in x.coords])


def act(sigma: AutElement, gamma: GroupAutomorphism, x: Point) -> Point:
    """
    Action à gauche de (σ, γ) ∈ Aut(F_n)×Aut(G) : x ↦ γ_X(σ⁻¹_X(x))
    """
    return gamma_X(gamma, sigma_X(sigma.inverse, x))


def commutes_with_all(g: GroupElement, x: Point) -> bool:
    """Vrai si g commute avec chaque coordonnée de x"""
    return all(g * c == c * g for c in x.coords)


# === ORBITES SOUS R ===

@dataclass(frozen=True)
class OrbitRep:
    """Orbite sous R, représentée par son plus petit point"""
    canonical: Point
    orbit_size: int

    def to_dict(self) -> Dict:
        return {'canonical': point_to_dict(self.canonical), 'orbit_size': self.orbit_size}


def orbit_members(x: Point, R: AutSubgroupR) -> List[Point]:
    """Points distincts {γ_X(x) : γ ∈ R}, triés"""
    members = {gamma_X(gamma, x) for gamma in R}
    return sorted(members, key=point_order_key)


def orbit(x: Point, R: AutSubgroupR) -> OrbitRep:
    """
    Orbite de x sous R

    Args:
        x: Point
        R: Sous-groupe fini de Aut(G)

    Returns:
        OrbitRep (minimum pour point_order_key, cardinal de l'orbite)
    """
    members = orbit_members(x, R)
    return OrbitRep(members[0], len(members))


def sigma_on_quotient(sigma: AutElement, o: OrbitRep, R: AutSubgroupR) -> OrbitRep:
    """Action descendue sur X//R : orbite de σ_X(représentant)"""
    return orbit(sigma_X(sigma.forward, o.canonical), R)


# === HOMOMORPHISMES ENTRE GROUPES ===

@dataclass(frozen=True)
class Homomorphism:
    """Homomorphisme prédéfini θ : source → cible"""
    name: str
    source: MatrixGroup
    target: MatrixGroup

    def __call__(self, g: GroupElement) -> GroupElement:
        if g.group != self.source:
            raise DescriptorMismatchError(f"{self.name} s'applique à {self.source}, pas à {g.group}")
        return self.target.element(g.entries)


_HOMOMORPHISM_KINDS = {
    'sl2_to_psl2': ('sl2', 'psl2'),
    'borel_to_sl2': ('borel', 'sl2'),
    'center_to_sl2': ('center', 'sl2'),
}


def homomorphism(name: str, source: MatrixGroup) -> Homomorphism:
    """
    Construit un homomorphisme prédéfini

    Args:
        name: sl2_to_psl2 (projection), borel_to_sl2 ou center_to_sl2 (inclusions)
        source: Groupe de départ

    Returns:
        θ
    """
    if name not in _HOMOMORPHISM_KINDS:
        raise UnsupportedError(f"Homomorphisme inconnu : {name}")
    source_kind, target_kind = _HOMOMORPHISM_KINDS[name]
    if source.kind != source_kind:
        raise DescriptorMismatchError(f"{name} attend un groupe {source_kind}, reçu {source}")
    return Homomorphism(name, source, MatrixGroup(target_kind, source.field))


def pushforward(theta: Homomorphism, x: Point) -> Point:
    """θₙ(x) : applique θ à chaque coordonnée"""
    return make_point(theta.target, [theta(g) for g in x.coords])


# === ÉNUMÉRATION ===

def enumerate_X(group: MatrixGroup, n: int, bound: Optional[int] = None) -> Iterator[Point]:
    """
    Énumère Gⁿ (chaque point une seule fois)

    Args:
        group: Groupe fini
        n: Rang
        bound: Nombre maximal de points (config.MAX_ENUM par défaut)
    """
    bound = config.MAX_ENUM if bound is None else bound
    size = group.order() ** n
    if size > bound:
        raise BoundExceededError(f"|{group}|^{n} = {size} dépasse la borne {bound}")
    elements = list(group.elements())
    logger.debug("Énumération de %d points de (%s)^%d", size, group, n)
    for coords in itertools.product(elements, repeat=n):
        yield Point(group, coords)
