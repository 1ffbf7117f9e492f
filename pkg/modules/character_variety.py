"""
Module de la variété de caractères de SL₂

Réduction de Fricke des traces de mots en polynômes entiers des
coordonnées de Horowitz (n ≤ 3), action polynomiale induite de Aut(F_n)
et recherche de témoins numériques.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

from sympy import ZZ
from sympy.polys.rings import PolyElement, ring

import config
from modules.automorphisms import AutElement, apply
from modules.errors import (RankMismatchError, TraceReductionError,
                            UnsupportedError)
from modules.faithfulness import Undetermined
from modules.free_group import ReducedWord, reduce
from modules.matrix_groups import MatrixGroup, Scalar
from modules.representation_variety import Point, evaluate_word, random_point

logger = logging.getLogger(__name__)

MAX_SYMBOLIC_RANK = 3

Letters = Tuple[Tuple[int, int], ...]


def trace_variables(n: int) -> List[Tuple[int, ...]]:
    """
    Ensembles d'indices des coordonnées de Horowitz, dans l'ordre canonique

    n=2 : (1,), (2,), (1,2) ; n=3 : (1,), (2,), (3,), (1,2), (1,3), (2,3), (1,2,3)
    """
    if not 1 <= n <= MAX_SYMBOLIC_RANK:
        raise UnsupportedError(f"Traces symboliques disponibles pour 1 ≤ n ≤ {MAX_SYMBOLIC_RANK}")
    subsets = []
    for size in range(1, n + 1):
        subsets.extend(combinations(range(1, n + 1), size))
    return subsets


def variable_name(index_set: Tuple[int, ...]) -> str:
    return "x" + "".join(str(i) for i in index_set)


@lru_cache(maxsize=None)
def trace_ring(n: int):
    """Anneau ℤ[x1, x2, x12, …] des polynômes de traces en rang n"""
    names = [variable_name(s) for s in trace_variables(n)]
    R, *gens = ring(",".join(names), ZZ)
    return R, tuple(gens)


def basis_word(index_set: Tuple[int, ...], n: int) -> ReducedWord:
    return reduce(((i, 1) for i in index_set), n)


# === RÉDUCTION DE FRICKE ===

def _free_reduce(letters: Letters) -> Letters:
    stack = []
    for letter in letters:
        if stack and stack[-1] == (letter[0], -letter[1]):
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def _normalize(letters: Letters) -> Letters:
    """Réduction libre puis cyclique"""
    w = _free_reduce(letters)
    i, j = 0, len(w) - 1
    while i < j and w[i] == (w[j][0], -w[j][1]):
        i += 1
        j -= 1
    return w[i:j + 1]


def _inverse(letters: Letters) -> Letters:
    return tuple((index, -sign) for index, sign in reversed(letters))


def _cyclic_class(letters: Letters) -> Letters:
    """Représentant minimal parmi les rotations du mot et de son inverse"""
    candidates = []
    for word in (letters, _inverse(letters)):
        candidates.extend(word[k:] + word[:k] for k in range(len(word)))
    return min(candidates)


class TraceReducer:
    """
    Réduit tr(w) en polynôme des coordonnées de Horowitz

    Le cache est propre à chaque instance, indexé par classe cyclique.
    """

    def __init__(self, n: int, step_budget: Optional[int] = None):
        self.n = n
        self.ring, gens = trace_ring(n)
        self.basis = dict(zip(trace_variables(n), gens))
        self.step_budget = config.TRACE_STEP_BUDGET if step_budget is None else step_budget
        self.steps = 0
        self.memo: Dict[Letters, PolyElement] = {}

    def trace(self, w: ReducedWord) -> PolyElement:
        if w.rank != self.n:
            raise RankMismatchError(f"Mot de rang {w.rank} pour des traces de rang {self.n}")
        return self._trace(tuple((l.index, l.sign) for l in w.letters))

    def _cached(self, letters: Letters) -> Optional[PolyElement]:
        if not letters:
            return self.ring(2)
        return self.memo.get(_cyclic_class(letters))

    def _trace(self, letters: Letters) -> PolyElement:
        """
        Réduction sur une pile explicite (profondeur indépendante de |w|)

        Un mot n'est calculé qu'une fois toutes ses parties en cache.
        """
        root = _normalize(letters)
        stack = [root]
        while stack:
            w = stack[-1]
            if self._cached(w) is not None:
                stack.pop()
                continue
            parts, combine = self._expand(w)
            parts = [_normalize(part) for part in parts]
            pending = [part for part in parts if self._cached(part) is None]
            if pending:
                stack.extend(pending)
                continue
            stack.pop()
            self.steps += 1
            if self.steps > self.step_budget:
                raise TraceReductionError(f"Budget de {self.step_budget} étapes épuisé")
            self.memo[_cyclic_class(w)] = combine(*(self._cached(part) for part in parts))
        return self._cached(root)

    def _expand(self, w: Letters) -> Tuple[List[Letters], Callable[..., PolyElement]]:
        """Parties de w et combinaison de leurs traces (mot cycliquement réduit)"""
        negative = next((k for k, (_, sign) in enumerate(w) if sign < 0), None)
        if negative is not None:
            # tr(a⁻¹B) = tr(a) tr(B) - tr(aB)
            rotated = w[negative:] + w[:negative]
            a = (rotated[0][0], 1)
            rest = rotated[1:]
            return [(a,), rest, (a,) + rest], lambda ta, tb, tab: ta * tb - tab

        indices = [index for index, _ in w]
        repeated = [i for i in set(indices) if indices.count(i) > 1]
        if repeated:
            # tr(aU aV) = tr(aU) tr(aV) - tr(U V⁻¹)
            a = max(repeated)
            start = indices.index(a)
            rotated = w[start:] + w[:start]
            second = next(k for k in range(1, len(rotated)) if rotated[k][0] == a)
            u, v = rotated[1:second], rotated[second + 1:]
            return ([rotated[:second], rotated[second:], u + _inverse(v)],
                    lambda tu, tv, tuv: tu * tv - tuv)

        if len(w) == 3 and indices not in ([1, 2, 3], [2, 3, 1], [3, 1, 2]):
            x = self.basis
            x1, x2, x3 = x[(1,)], x[(2,)], x[(3,)]
            value = (x1 * x[(2, 3)] + x2 * x[(1, 3)] + x3 * x[(1, 2)]
                     - x1 * x2 * x3 - x[(1, 2, 3)])
            return [], lambda: value
        value = self.basis[tuple(sorted(indices))]
        return [], lambda: value


def trace_polynomial(w: ReducedWord, reducer: TraceReducer = None) -> PolyElement:
    """
    Polynôme de trace de w

    Args:
        w: Mot de rang n ≤ 3
        reducer: Réducteur à réutiliser (cache partagé)

    Returns:
        P entier tel que tr(w(x)) = P(traces de base de x) pour tout x ∈ SL₂ⁿ
    """
    if w.rank > MAX_SYMBOLIC_RANK:
        raise UnsupportedError(f"Traces symboliques limitées au rang {MAX_SYMBOLIC_RANK}")
    reducer = reducer or TraceReducer(w.rank)
    return reducer.trace(w)


# === ÉVALUATION NUMÉRIQUE ===

def _check_sl2(group: MatrixGroup):
    if group.kind not in ('sl2', 'borel', 'center'):
        raise UnsupportedError(f"Traces définies pour les points de SL₂, pas de {group}")


def numeric_trace(w: ReducedWord, x: Point) -> Scalar:
    """Trace de w(x), x point de SL₂ⁿ (tout n)"""
    _check_sl2(x.group)
    return evaluate_word(w, x).trace()


def basis_traces(x: Point) -> Dict[str, Scalar]:
    """Valeurs numériques des coordonnées de Horowitz en x"""
    return {variable_name(s): numeric_trace(basis_word(s, x.n), x) for s in trace_variables(x.n)}


def evaluate_polynomial(P: PolyElement, traces: Mapping[str, Scalar], group: MatrixGroup) -> Scalar:
    """
    Évalue P en des valeurs de traces, dans le corps de G

    Args:
        P: Polynôme de traces
        traces: Valeurs par nom de variable
        group: Groupe fixant le corps
    """
    names = [str(g) for g in P.ring.gens]
    total = 0
    for monom, coeff in P.terms():
        term = int(coeff)
        for name, exponent in zip(names, monom):
            if exponent:
                term = term * traces[name] ** exponent
        total += term
    return group.field.canon(total)


# === ACTION INDUITE ===

def induced_action(sigma: AutElement, reducer: TraceReducer = None) -> Dict[str, PolyElement]:
    """
    Substitution induite par σ sur les coordonnées de traces

    La variable du mot de base u est envoyée sur le polynôme de tr(σ(u)).
    """
    n = sigma.rank
    if n > MAX_SYMBOLIC_RANK:
        raise UnsupportedError(f"Action induite limitée au rang {MAX_SYMBOLIC_RANK}")
    reducer = reducer or TraceReducer(n)
    return {variable_name(s): reducer.trace(apply(sigma.forward, basis_word(s, n)))
            for s in trace_variables(n)}


def substitute(outer: Mapping[str, PolyElement], inner: Mapping[str, PolyElement]) -> Dict[str, PolyElement]:
    """
    Composition de substitutions : chaque variable de outer[v] est remplacée
    simultanément par son image dans inner

    induced_action(σ∘τ) = substitute(induced_action(τ), induced_action(σ)).
    """
    result = {}
    for name, P in outer.items():
        replacements = [(g, inner[str(g)]) for g in P.ring.gens]
        result[name] = P.compose(replacements)
    return result


def is_identity_substitution(action: Mapping[str, PolyElement]) -> bool:
    for name, P in action.items():
        gens = {str(g): g for g in P.ring.gens}
        if P != gens[name]:
            return False
    return True


# === FORMAT TEXTE ===

def _term_order(monom: Tuple[int, ...]):
    return tuple(sorted(monom, reverse=True)), monom


def format_polynomial(P: PolyElement) -> str:
    """
    Texte canonique : termes par exposants triés décroissants, puis par
    vecteur d'exposants ; variables x1, x2, x3, x12, x13, x23, x123
    """
    names = [str(g) for g in P.ring.gens]
    terms = sorted(P.terms(), key=lambda t: _term_order(t[0]), reverse=True)
    if not terms:
        return "0"
    text = ""
    for position, (monom, coeff) in enumerate(terms):
        coeff = int(coeff)
        factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, monom) if e]
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = f"{magnitude}*" + "*".join(factors)
        if position == 0:
            text = f"-{body}" if coeff < 0 else body
        else:
            text += f" - {body}" if coeff < 0 else f" + {body}"
    return text


# === TÉMOINS NUMÉRIQUES ===

@dataclass(frozen=True)
class TraceWitness:
    """σ change la coordonnée `variable` en `witness`"""
    witness: Point
    variable: str
    before: Scalar
    after: Scalar
    trials_used: int

    def to_dict(self) -> Dict:
        return {
            'verdict': 'NotInKernel',
            'witness': self.witness.to_dict(),
            'variable': self.variable,
            'before': self.before,
            'after': self.after,
            'trials': self.trials_used
        }


def character_witness_search(sigma: AutElement, group: MatrixGroup, trials: int,
                             rng) -> Union[TraceWitness, Undetermined]:
    """
    Cherche un point où σ déplace une coordonnée de trace

    Un tel témoin prouve que σ agit non trivialement sur X//Int(SL₂).

    Args:
        sigma: Automorphisme de F_n, n ≤ 3
        group: SL₂(𝔽_p)
        trials: Nombre de tirages
        rng: numpy.random.Generator
    """
    _check_sl2(group)
    n = sigma.rank
    words = {variable_name(s): basis_word(s, n) for s in trace_variables(n)}
    images = {name: apply(sigma.forward, w) for name, w in words.items()}
    for t in range(trials):
        x = random_point(group, n, rng)
        for name, w in words.items():
            before, after = numeric_trace(w, x), numeric_trace(images[name], x)
            if before != after:
                logger.info("Témoin de trace pour %s : %s après %d tirages", sigma.label, name, t + 1)
                return TraceWitness(x, name, before, after, t + 1)
    return Undetermined(trials)
