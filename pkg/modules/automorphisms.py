"""
Module des endomorphismes et automorphismes de F_n
(substitution, composition, générateurs de Nielsen, automorphismes
intérieurs, plongement des tresses B_n dans Aut(F_n))
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from modules.errors import (IndexOutOfRangeError, NotInvertibleError,
                            ParseError, RankMismatchError)
from modules.free_group import (ReducedWord, cyclically_reduce, format_word,
                                generator, identity, invert, multiply,
                                parse_word)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Endomorphism:
    """Endomorphisme de F_n donné par les images des générateurs"""
    rank: int
    images: Tuple[ReducedWord, ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise RankMismatchError(
                f"{len(self.images)} images fournies pour un rang {self.rank}"
            )
        for image in self.images:
            if image.rank != self.rank:
                raise RankMismatchError(
                    f"Image de rang {image.rank} pour un endomorphisme de rang {self.rank}"
                )

    def __call__(self, w: ReducedWord) -> ReducedWord:
        return apply(self, w)

    def to_dict(self) -> Dict[str, str]:
        return {f"f{j + 1}": format_word(image) for j, image in enumerate(self.images)}


def identity_endomorphism(n: int) -> Endomorphism:
    """Endomorphisme identité de F_n"""
    return Endomorphism(n, tuple(generator(j, n) for j in range(1, n + 1)))


def apply(sigma: Endomorphism, w: ReducedWord) -> ReducedWord:
    """
    Substitue σ(f_j) à chaque lettre f_j^{±1} de w, puis réduit

    Args:
        sigma: Endomorphisme
        w: Mot de même rang

    Returns:
        Le mot réduit σ(w)
    """
    if sigma.rank != w.rank:
        raise RankMismatchError(f"Rangs incompatibles : {sigma.rank} et {w.rank}")
    result = identity(w.rank)
    for letter in w.letters:
        image = sigma.images[letter.index - 1]
        result = multiply(result, image if letter.sign > 0 else invert(image))
    return result


def compose(sigma: Endomorphism, tau: Endomorphism) -> Endomorphism:
    """Composition σ∘τ : f ↦ σ(τ(f))"""
    if sigma.rank != tau.rank:
        raise RankMismatchError(f"Rangs incompatibles : {sigma.rank} et {tau.rank}")
    return Endomorphism(sigma.rank, tuple(apply(sigma, image) for image in tau.images))


def equals(alpha: Endomorphism, beta: Endomorphism) -> bool:
    """Égalité des images de tous les générateurs"""
    if alpha.rank != beta.rank:
        raise RankMismatchError(f"Rangs incompatibles : {alpha.rank} et {beta.rank}")
    return alpha.images == beta.images


@dataclass(frozen=True)
class AutElement:
    """
    Automorphisme de F_n : endomorphisme accompagné d'un inverse certifié

    L'inverse est vérifié à la construction dans les deux ordres.
    """
    forward: Endomorphism
    inverse: Endomorphism
    label: str = field(default="", compare=False)

    def __post_init__(self):
        one = identity_endomorphism(self.forward.rank)
        if not (equals(compose(self.forward, self.inverse), one)
                and equals(compose(self.inverse, self.forward), one)):
            raise NotInvertibleError(f"Inverse non certifié pour {self.label or self.forward.to_dict()}")

    @property
    def rank(self) -> int:
        return self.forward.rank

    def __mul__(self, other: "AutElement") -> "AutElement":
        return compose_aut(self, other)

    def inverted(self) -> "AutElement":
        label = f"({self.label})^-1" if self.label else ""
        return AutElement(self.inverse, self.forward, label)

    def is_identity(self) -> bool:
        return equals(self.forward, identity_endomorphism(self.rank))

    def to_dict(self) -> Dict:
        return {
            'spec': self.label,
            'rank': self.rank,
            'images': self.forward.to_dict(),
            'inverse_images': self.inverse.to_dict()
        }


def compose_aut(alpha: AutElement, beta: AutElement) -> AutElement:
    """Composition α∘β d'automorphismes (inverse β⁻¹∘α⁻¹)"""
    label = ";".join(l for l in (alpha.label, beta.label) if l)
    return AutElement(compose(alpha.forward, beta.forward),
                      compose(beta.inverse, alpha.inverse), label)


def identity_aut(n: int) -> AutElement:
    one = identity_endomorphism(n)
    return AutElement(one, one, "id")


def power_aut(sigma: AutElement, k: int) -> AutElement:
    """Puissance σ^k (k entier relatif)"""
    base = sigma if k >= 0 else sigma.inverted()
    result = identity_aut(sigma.rank)
    for _ in range(abs(k)):
        result = compose_aut(result, base)
    label = sigma.label if k == 1 else f"({sigma.label})^{k}"
    return AutElement(result.forward, result.inverse, label)


def _from_images(n: int, changes: Dict[int, ReducedWord]) -> Endomorphism:
    return Endomorphism(n, tuple(changes.get(j, generator(j, n)) for j in range(1, n + 1)))


def _check_index(i: int, n: int):
    if not 1 <= i <= n:
        raise IndexOutOfRangeError(f"Indice {i} hors de 1..{n}")


# === GÉNÉRATEURS ÉLÉMENTAIRES ===

def permutation(images: Sequence[int], n: int, label: str = "") -> AutElement:
    """
    Automorphisme de permutation f_j ↦ f_{images[j-1]}

    Args:
        images: Permutation de 1..n
        n: Rang
    """
    if sorted(images) != list(range(1, n + 1)):
        raise ValueError(f"{list(images)} n'est pas une permutation de 1..{n}")
    inverse = [0] * n
    for j, target in enumerate(images, start=1):
        inverse[target - 1] = j
    forward = Endomorphism(n, tuple(generator(t, n) for t in images))
    backward = Endomorphism(n, tuple(generator(t, n) for t in inverse))
    return AutElement(forward, backward, label)


def adjacent_transposition(i: int, n: int) -> AutElement:
    """τ_i : échange f_i et f_{i+1}"""
    _check_index(i, n - 1)
    images = list(range(1, n + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return permutation(images, n, f"nielsen:tau{i}")


def inversion(i: int, n: int) -> AutElement:
    """inv_i : f_i ↦ f_i⁻¹"""
    _check_index(i, n)
    endo = _from_images(n, {i: generator(i, n, -1)})
    return AutElement(endo, endo, f"nielsen:inv{i}")


def transvection(i: int, j: int, n: int) -> AutElement:
    """σ_ij : f_i ↦ f_i f_j (i ≠ j), d'inverse f_i ↦ f_i f_j⁻¹"""
    _check_index(i, n)
    _check_index(j, n)
    if i == j:
        raise ValueError("Une transvection exige i ≠ j")
    forward = _from_images(n, {i: multiply(generator(i, n), generator(j, n))})
    backward = _from_images(n, {i: multiply(generator(i, n), generator(j, n, -1))})
    return AutElement(forward, backward, f"nielsen:s{i}{j}" if max(i, j) < 10 else f"nielsen:s{i}_{j}")


def nielsen_generators(n: int) -> List[AutElement]:
    """
    Système générateur de Nielsen de Aut(F_n)

    Args:
        n: Rang (≥ 1)

    Returns:
        [τ_1, …, τ_{n-1}, inv_1, σ_12 (si n ≥ 2)]
    """
    if n < 1:
        raise ValueError("Le rang doit être au moins 1")
    gens = [adjacent_transposition(i, n) for i in range(1, n)]
    gens.append(inversion(1, n))
    if n >= 2:
        gens.append(transvection(1, 2, n))
    return gens


def inner(t: ReducedWord) -> AutElement:
    """
    Automorphisme intérieur int_t : f_j ↦ t f_j t⁻¹

    Son inverse est int_{t⁻¹}.
    """
    n = t.rank
    t_inv = invert(t)

    def conj(u: ReducedWord, v: ReducedWord, j: int) -> ReducedWord:
        return multiply(multiply(u, generator(j, n)), v)

    forward = Endomorphism(n, tuple(conj(t, t_inv, j) for j in range(1, n + 1)))
    backward = Endomorphism(n, tuple(conj(t_inv, t, j) for j in range(1, n + 1)))
    return AutElement(forward, backward, f"inner:{format_word(t)}")


def braid_generator(i: int, n: int) -> AutElement:
    """
    Générateur d'Artin b_i agissant sur F_n

    f_i ↦ f_i f_{i+1} f_i⁻¹, f_{i+1} ↦ f_i, autres générateurs fixes.
    """
    if n < 2:
        raise IndexOutOfRangeError("Les tresses exigent n ≥ 2")
    _check_index(i, n - 1)
    a, b = generator(i, n), generator(i + 1, n)
    forward = _from_images(n, {i: multiply(multiply(a, b), invert(a)), i + 1: a})
    backward = _from_images(n, {i: b, i + 1: multiply(multiply(invert(b), a), b)})
    return AutElement(forward, backward, f"braid:{i}")


def certifies_non_inner(sigma: AutElement) -> bool:
    """
    Vrai si une image σ(f_j) n'est pas conjuguée à f_j

    Un automorphisme intérieur envoie chaque f_j sur un conjugué de f_j ;
    une réponse True est donc une preuve que σ n'est pas intérieur.
    """
    for j, image in enumerate(sigma.forward.images, start=1):
        core, _ = cyclically_reduce(image)
        if core != generator(j, sigma.rank):
            return True
    return False


def check_braid_relations(n: int) -> List[Dict]:
    """
    Vérifie les relations de tresses entre les b_i dans Aut(F_n)

    Returns:
        Liste de dicts {relation, holds}
    """
    gens = [braid_generator(i, n) for i in range(1, n)]
    results = []
    for i in range(1, n):
        for j in range(i + 1, n):
            bi, bj = gens[i - 1], gens[j - 1]
            if j == i + 1:
                holds = (bi * bj * bi) == (bj * bi * bj)
                relation = f"b{i} b{j} b{i} = b{j} b{i} b{j}"
            else:
                holds = (bi * bj) == (bj * bi)
                relation = f"b{i} b{j} = b{j} b{i}"
            results.append({'relation': relation, 'holds': holds})
    logger.debug("Relations de tresses vérifiées pour n=%d : %d", n, len(results))
    return results


# === LECTURE DES SPÉCIFICATIONS TEXTUELLES ===

_ATOM_PATTERNS = [
    (re.compile(r"id$"), lambda m, n: identity_aut(n)),
    (re.compile(r"nielsen:tau(\d+)$"), lambda m, n: adjacent_transposition(int(m.group(1)), n)),
    (re.compile(r"nielsen:inv(\d+)$"), lambda m, n: inversion(int(m.group(1)), n)),
    (re.compile(r"nielsen:s(\d+)_(\d+)$"), lambda m, n: transvection(int(m.group(1)), int(m.group(2)), n)),
    (re.compile(r"nielsen:s(\d)(\d)$"), lambda m, n: transvection(int(m.group(1)), int(m.group(2)), n)),
    (re.compile(r"braid:(\d+)$"), lambda m, n: braid_generator(int(m.group(1)), n)),
    (re.compile(r"inner:(.*)$"), lambda m, n: inner(parse_word(m.group(1), n))),
]


def parse_automorphism(text: str, n: int) -> AutElement:
    """
    Lit une spécification textuelle d'automorphisme

    Formes : id, nielsen:tau<i>, nielsen:inv<i>, nielsen:s<i><j>,
    inner:<mot>, braid:<i>, et compositions séparées par ';'
    (appliquées de droite à gauche).

    Args:
        text: Spécification
        n: Rang

    Returns:
        L'automorphisme, étiqueté par le texte lu
    """
    parts = [p.strip() for p in text.split(';')]
    result = None
    offset = 0
    for part in parts:
        for pattern, build in _ATOM_PATTERNS:
            match = pattern.match(part)
            if match:
                atom = build(match, n)
                break
        else:
            raise ParseError(f"Automorphisme inconnu '{part}'", text.find(part, offset))
        offset += len(part) + 1
        result = atom if result is None else compose_aut(result, atom)
    return AutElement(result.forward, result.inverse, text.strip())
