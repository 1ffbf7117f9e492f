"""
Module de fidélité de l'action de Aut(F_n) sur X//R

Tests d'identités de mots, mots identités des groupes résolubles,
appartenance au noyau (échantillonnage ou énumération exhaustive)
et rapports de certificats auto-vérifiables.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from modules.automorphisms import AutElement, Endomorphism, nielsen_generators
from modules.errors import IndexOutOfRangeError, RankMismatchError
from modules.free_group import (ReducedWord, commutator, format_word,
                                generator, invert, letters_from_pairs,
                                multiply, shift)
from modules.matrix_groups import (AutSubgroupR, GroupAutomorphism,
                                   MatrixGroup, apply_automorphism)
from modules.representation_variety import (Point, enumerate_X,
                                            evaluate_word, orbit, random_point,
                                            sigma_X)

logger = logging.getLogger(__name__)


# === VERDICTS ===

@dataclass(frozen=True)
class NotIdentity:
    """w(witness) ≠ e : w n'est pas une identité de G"""
    witness: Point
    trials_used: int

    def to_dict(self) -> Dict:
        return {'verdict': 'NotIdentity', 'witness': self.witness.to_dict(), 'trials': self.trials_used}


@dataclass(frozen=True)
class ProbablyIdentity:
    trials: int

    def to_dict(self) -> Dict:
        return {'verdict': 'ProbablyIdentity', 'trials': self.trials}


@dataclass(frozen=True)
class NotInKernel:
    """σ déplace l'orbite du témoin : σ agit non trivialement sur X//R"""
    witness: Point
    trials_used: int
    exhaustive: bool = False

    def to_dict(self) -> Dict:
        return {'verdict': 'NotInKernel', 'witness': self.witness.to_dict(),
                'trials': self.trials_used, 'exhaustive': self.exhaustive}


@dataclass(frozen=True)
class InKernel:
    """Toutes les orbites sont invariantes (établi par énumération)"""
    points_checked: int

    def to_dict(self) -> Dict:
        return {'verdict': 'InKernel', 'trials': self.points_checked, 'exhaustive': True}


@dataclass(frozen=True)
class Undetermined:
    """Aucun témoin trouvé ; ce n'est pas une preuve d'appartenance au noyau"""
    trials: int

    def to_dict(self) -> Dict:
        return {'verdict': 'Undetermined', 'trials': self.trials, 'exhaustive': False}


IdentityVerdict = Union[NotIdentity, ProbablyIdentity]
KernelVerdict = Union[NotInKernel, InKernel, Undetermined]


# === PRÉDICATS PONCTUELS ===

def membership_X_w_gamma_i(x: Point, w: ReducedWord, gamma: GroupAutomorphism, i: int) -> bool:
    """
    Appartenance de x au lieu {w(x) = γ(g_i)}

    Args:
        x: Point
        w: Mot
        gamma: Automorphisme de G
        i: Indice de coordonnée (1..n)
    """
    if not 1 <= i <= x.n:
        raise IndexOutOfRangeError(f"Indice {i} hors de 1..{x.n}")
    return evaluate_word(w, x) == apply_automorphism(gamma, x.coords[i - 1])


def in_kernel_locus(x: Point, sigma: Union[Endomorphism, AutElement], gamma: GroupAutomorphism) -> bool:
    """Vrai si σ_X(x) = γ_X(x)"""
    endo = sigma.forward if isinstance(sigma, AutElement) else sigma
    if endo.rank != x.n:
        raise RankMismatchError(f"Endomorphisme de rang {endo.rank} sur un point de rang {x.n}")
    return all(membership_X_w_gamma_i(x, image, gamma, i)
               for i, image in enumerate(endo.images, start=1))


def orbit_of_sigma_equals(sigma: AutElement, x: Point, R: AutSubgroupR) -> bool:
    """Vrai si σ_X préserve l'orbite de x"""
    return orbit(sigma_X(sigma.forward, x), R).canonical == orbit(x, R).canonical


# === MOTS IDENTITÉS ===

def derived_identity_word(k: int) -> ReducedWord:
    """
    Mot δ_k de la série dérivée, identité de tout groupe résoluble de classe ≤ k

    δ_1 = x1⁻¹ x2⁻¹ x1 x2 ; δ_{k+1} = [δ_k(x_1..x_m), δ_k(x_{m+1}..x_{2m})], m = 2^k.

    Args:
        k: Longueur dérivée (≥ 1)

    Returns:
        Mot réduit non vide en 2^k variables
    """
    if k < 1:
        raise ValueError("k doit être au moins 1")
    word = commutator(generator(1, 2), generator(2, 2))
    for level in range(1, k):
        half = 2 ** level
        rank = 2 * half
        word = commutator(shift(word, 0, rank), shift(word, half, rank))
    return word


def power_substitute(w: ReducedWord, d: int) -> ReducedWord:
    """Remplace chaque lettre f_i^{±1} par f_i^{±d}"""
    if d < 1:
        raise ValueError("L'exposant de substitution doit être au moins 1")
    return letters_from_pairs(((l.index, l.sign * d) for l in w.letters), w.rank)


def kernel_word(sigma: AutElement) -> ReducedWord:
    """
    Mot non vide σ(f_j) f_j⁻¹ pour le premier j déplacé par σ

    σ agit trivialement sur X si et seulement si chacun de ces mots est une
    identité de G.
    """
    for j, image in enumerate(sigma.forward.images, start=1):
        word = multiply(image, invert(generator(j, sigma.rank)))
        if not word.is_identity():
            return word
    raise ValueError("L'identité de F_n n'a pas de mot noyau")


# === RECHERCHE DE TÉMOINS ===

def _child_generators(rng, jobs: int) -> List[np.random.Generator]:
    entropy = int(rng.integers(0, 2 ** 62))
    return [np.random.default_rng(s) for s in np.random.SeedSequence(entropy).spawn(jobs)]


def _chunks(trials: int, jobs: int) -> List[Tuple[int, int]]:
    size = math.ceil(trials / jobs)
    return [(k * size, max(0, min(size, trials - k * size))) for k in range(jobs)]


def _identity_chunk(w: ReducedWord, group: MatrixGroup, count: int, rng) -> Tuple[Optional[Point], int]:
    e = group.identity()
    for t in range(count):
        x = random_point(group, w.rank, rng)
        if evaluate_word(w, x) != e:
            return x, t + 1
    return None, count


def _kernel_chunk(sigma: AutElement, group: MatrixGroup, R: AutSubgroupR, n: int,
                  count: int, rng) -> Tuple[Optional[Point], int]:
    for t in range(count):
        x = random_point(group, n, rng)
        if not orbit_of_sigma_equals(sigma, x, R):
            return x, t + 1
    return None, count


def _run_search(worker, args: tuple, trials: int, rng, jobs: int) -> Tuple[Optional[Point], int]:
    """
    Répartit la recherche en blocs ; le témoin du plus petit bloc l'emporte

    Le résultat ne dépend que de (graine, jobs).
    """
    if jobs <= 1:
        return worker(*args, trials, rng)
    chunks = _chunks(trials, jobs)
    generators = _child_generators(rng, jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(worker, *args, count, child)
                   for (_, count), child in zip(chunks, generators)]
        results = [future.result() for future in futures]
    for (start, _), (witness, used) in zip(chunks, results):
        if witness is not None:
            return witness, start + used
    return None, trials


def word_identity_test(w: ReducedWord, group: MatrixGroup, trials: int, rng, jobs: int = 1) -> IdentityVerdict:
    """
    Réfutation aléatoire de « w est une identité de G »

    Args:
        w: Mot
        group: Groupe fini
        trials: Nombre de tirages (> 0)
        rng: numpy.random.Generator
        jobs: Nombre de processus

    Returns:
        NotIdentity avec témoin, sinon ProbablyIdentity
    """
    if trials <= 0:
        raise ValueError("Le nombre de tirages doit être strictement positif")
    witness, used = _run_search(_identity_chunk, (w, group), trials, rng, jobs)
    if witness is not None:
        logger.info("Témoin de non-identité trouvé pour %s après %d tirages", format_word(w), used)
        return NotIdentity(witness, used)
    return ProbablyIdentity(trials)


def kernel_witness_search(sigma: AutElement, group: MatrixGroup, R: AutSubgroupR, n: int,
                          trials: int, rng, jobs: int = 1) -> KernelVerdict:
    """
    Cherche x tel que σ_X déplace l'orbite R·x

    Args:
        sigma: Automorphisme de F_n
        group: Groupe fini G
        R: Sous-groupe fini de Aut(G)
        n: Rang
        trials: Nombre de tirages
        rng: numpy.random.Generator
        jobs: Nombre de processus

    Returns:
        NotInKernel avec témoin, sinon Undetermined
    """
    if sigma.rank != n:
        raise RankMismatchError(f"Automorphisme de rang {sigma.rank} pour n={n}")
    if sigma.is_identity():
        return Undetermined(trials)
    witness, used = _run_search(_kernel_chunk, (sigma, group, R, n), trials, rng, jobs)
    if witness is not None:
        logger.info("Témoin hors noyau pour %s après %d tirages", sigma.label, used)
        return NotInKernel(witness, used)
    return Undetermined(trials)


def kernel_member_exhaustive(sigma: AutElement, group: MatrixGroup, R: AutSubgroupR, n: int) -> KernelVerdict:
    """
    Décide exactement si σ agit trivialement sur X//R (G fini et petit)

    Returns:
        InKernel si toutes les orbites sont invariantes, sinon NotInKernel
        avec le premier témoin
    """
    if sigma.rank != n:
        raise RankMismatchError(f"Automorphisme de rang {sigma.rank} pour n={n}")
    checked = 0
    for x in enumerate_X(group, n):
        checked += 1
        if not orbit_of_sigma_equals(sigma, x, R):
            return NotInKernel(x, checked, exhaustive=True)
    return InKernel(checked)


def global_fixed_points(group: MatrixGroup, n: int) -> List[Point]:
    """Points de Gⁿ fixés par tous les générateurs de Nielsen"""
    gens = nielsen_generators(n)
    return [x for x in enumerate_X(group, n)
            if all(sigma_X(s.forward, x) == x for s in gens)]


# === VÉRIFICATION DES CERTIFICATS ===

def verify_identity_witness(w: ReducedWord, verdict: NotIdentity) -> bool:
    return evaluate_word(w, verdict.witness) != verdict.witness.group.identity()


def verify_kernel_witness(sigma: AutElement, R: AutSubgroupR, verdict: NotInKernel) -> bool:
    return not orbit_of_sigma_equals(sigma, verdict.witness, R)


# === RAPPORT ===

def faithfulness_report(group: MatrixGroup, R: AutSubgroupR, n: int,
                        automorphisms: Sequence[AutElement], trials: int, seed: int,
                        mode: str = 'sample', jobs: int = 1) -> Dict:
    """
    Certificats par automorphisme et verdict global

    Chaque σ reçoit son propre flux aléatoire, dérivé de (seed, position).

    Args:
        group: Groupe G
        R: Sous-groupe fini de Aut(G)
        n: Rang
        automorphisms: Automorphismes à tester (l'identité est ignorée)
        trials: Tirages par automorphisme (mode sample)
        seed: Graine
        mode: 'sample' ou 'exhaustive'
        jobs: Nombre de processus

    Returns:
        Dictionnaire sérialisable
    """
    if mode not in ('sample', 'exhaustive'):
        raise ValueError(f"Mode inconnu : {mode}")
    results = []
    streams = np.random.SeedSequence(seed).spawn(len(automorphisms))
    for index, (sigma, stream) in enumerate(zip(automorphisms, streams)):
        if sigma.is_identity():
            logger.debug("Identité ignorée : %s", sigma.label)
            continue
        if mode == 'exhaustive':
            verdict = kernel_member_exhaustive(sigma, group, R, n)
        else:
            verdict = kernel_witness_search(sigma, group, R, n, trials, np.random.default_rng(stream), jobs)
        if isinstance(verdict, NotInKernel) and not verify_kernel_witness(sigma, R, verdict):
            raise RuntimeError(f"Certificat invalide pour {sigma.label}")
        entry = {'spec': sigma.label, 'seed': seed, 'stream': index}
        entry.update(verdict.to_dict())
        results.append(entry)

    verdicts = {entry['verdict'] for entry in results}
    if 'Undetermined' in verdicts:
        summary = 'undetermined'
    elif 'InKernel' in verdicts:
        summary = 'kernel_found'
    else:
        summary = 'all_certified'
    return {
        'group': str(group),
        'modulus': group.modulus,
        'n': n,
        'quotient_order': R.order,
        'mode': mode,
        'trials': trials,
        'seed': seed,
        'jobs': jobs,
        'results': results,
        'summary': summary
    }
