"""
Module des groupes matriciels exacts servant de G

SL₂ et PSL₂ sur 𝔽_p ou ℚ, GL_d sur 𝔽_p, sous-groupe de Borel et centre
{±I} de SL₂(𝔽_p) ; automorphismes de G, sous-groupes finis R ⊂ Aut(G),
modèle quadrique de SL₂.
"""
import itertools
import logging
import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from sympy import Rational, isprime, primitive_root

import config
from modules.errors import (BoundExceededError, DescriptorMismatchError,
                            NotInvertibleError, ParseError, UnsupportedError)

logger = logging.getLogger(__name__)

Scalar = Union[int, Rational]
Matrix = Tuple[Tuple[Scalar, ...], ...]


# === CORPS DE BASE ===

@dataclass(frozen=True)
class PrimeField:
    """Corps premier 𝔽_p (p premier impair), représentants 0..p-1"""
    p: int

    def __post_init__(self):
        if self.p == 2 or not isprime(self.p):
            raise ValueError(f"{self.p} n'est pas un nombre premier impair")

    is_finite = True

    @property
    def label(self) -> str:
        return f"p={self.p}"

    def canon(self, value: Scalar) -> int:
        if isinstance(value, Rational):
            if value.q % self.p == 0:
                raise NotInvertibleError(f"Dénominateur {value.q} nul modulo {self.p}")
            return value.p * pow(value.q, -1, self.p) % self.p
        return int(value) % self.p

    def reduce(self, value: int) -> int:
        return value % self.p

    def inv(self, value: int) -> int:
        if value % self.p == 0:
            raise NotInvertibleError("Zéro n'est pas inversible")
        return pow(value, -1, self.p)

    def is_positive_representative(self, value: int) -> bool:
        return 1 <= value <= (self.p - 1) // 2

    def elements(self) -> range:
        return range(self.p)

    def random(self, rng, low: int = 0) -> int:
        return int(rng.integers(low, self.p))


@dataclass(frozen=True)
class RationalField:
    """Corps ℚ en arithmétique exacte (sympy Rational)"""
    is_finite = False

    @property
    def label(self) -> str:
        return "Q"

    def canon(self, value: Scalar) -> Rational:
        return Rational(value)

    def reduce(self, value: Rational) -> Rational:
        return value

    def inv(self, value: Rational) -> Rational:
        if value == 0:
            raise NotInvertibleError("Zéro n'est pas inversible")
        return 1 / Rational(value)

    def is_positive_representative(self, value: Rational) -> bool:
        return bool(value > 0)

    def elements(self):
        raise UnsupportedError("ℚ n'est pas énumérable")

    def random(self, rng, low: int = 0):
        raise UnsupportedError("Pas de tirage uniforme sur ℚ")


Field = Union[PrimeField, RationalField]


# === ALGÈBRE LINÉAIRE EXACTE ===

def _matmul(F: Field, A: Matrix, B: Matrix) -> Matrix:
    if len(A) == 2:
        (a, b), (c, d) = A
        (e, f), (g, h) = B
        return ((F.reduce(a * e + b * g), F.reduce(a * f + b * h)),
                (F.reduce(c * e + d * g), F.reduce(c * f + d * h)))
    size = len(A)
    return tuple(
        tuple(F.reduce(sum(A[i][k] * B[k][j] for k in range(size))) for j in range(size))
        for i in range(size)
    )


def _gauss_jordan(F: Field, A: Matrix) -> Tuple[Scalar, Optional[Matrix]]:
    """Déterminant et inverse (None si singulière) par Gauss-Jordan"""
    size = len(A)
    aug = [list(row) + [F.canon(1 if i == j else 0) for j in range(size)]
           for i, row in enumerate(A)]
    det = F.canon(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            return F.canon(0), None
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
            det = F.reduce(-det)
        det = F.reduce(det * aug[col][col])
        inv_pivot = F.inv(aug[col][col])
        aug[col] = [F.reduce(x * inv_pivot) for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [F.reduce(x - factor * y) for x, y in zip(aug[r], aug[col])]
    return det, tuple(tuple(row[size:]) for row in aug)


def determinant(F: Field, A: Matrix) -> Scalar:
    if len(A) == 2:
        return F.reduce(A[0][0] * A[1][1] - A[0][1] * A[1][0])
    return _gauss_jordan(F, A)[0]


def _identity_matrix(F: Field, d: int) -> Matrix:
    return tuple(tuple(F.canon(1 if i == j else 0) for j in range(d)) for i in range(d))


def _negate(F: Field, A: Matrix) -> Matrix:
    return tuple(tuple(F.reduce(-x) for x in row) for row in A)


def _transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


# === GROUPES ===

GROUP_KINDS = ('sl2', 'psl2', 'gl', 'borel', 'center')


@dataclass(frozen=True)
class MatrixGroup:
    """
    Descripteur de groupe matriciel

    kind : sl2 | psl2 | gl | borel | center ; field : 𝔽_p ou ℚ ; d : taille
    """
    kind: str
    field: Field
    d: int = 2

    def __post_init__(self):
        if self.kind not in GROUP_KINDS:
            raise ValueError(f"Type de groupe inconnu : {self.kind}")
        if self.kind != 'gl' and self.d != 2:
            raise ValueError(f"{self.kind} est un groupe de matrices 2×2")
        if self.kind in ('gl', 'borel', 'center') and not self.field.is_finite:
            raise UnsupportedError(f"{self.kind} n'est disponible que sur 𝔽_p")
        if self.d < 1:
            raise ValueError("La taille des matrices doit être au moins 1")

    def __str__(self) -> str:
        if self.kind == 'gl':
            return f"gl:d={self.d},{self.field.label}"
        return f"{self.kind}:{self.field.label}"

    @property
    def is_finite(self) -> bool:
        return self.field.is_finite

    @property
    def modulus(self) -> Optional[int]:
        return self.field.p if self.is_finite else None

    # --- construction ---

    def _wrap(self, entries: Matrix) -> "GroupElement":
        if self.kind == 'psl2':
            entries = _psl2_sign(self.field, entries)
        return GroupElement(self, entries)

    def element(self, rows: Sequence[Sequence[Scalar]]) -> "GroupElement":
        """
        Construit un élément en vérifiant l'appartenance au groupe

        Args:
            rows: Lignes de la matrice (entiers ou fractions)

        Returns:
            L'élément canonique
        """
        if len(rows) != self.d or any(len(row) != self.d for row in rows):
            raise ValueError(f"Matrice {self.d}×{self.d} attendue pour {self}")
        F = self.field
        entries = tuple(tuple(F.canon(x) for x in row) for row in rows)
        det = determinant(F, entries)
        if self.kind == 'gl':
            if det == 0:
                raise NotInvertibleError("Matrice singulière")
        elif det != F.canon(1):
            raise ValueError(f"Le déterminant doit valoir 1 dans {self}")
        if self.kind == 'borel' and entries[1][0] != 0:
            raise ValueError("Un élément de Borel est triangulaire supérieur")
        if self.kind == 'center' and entries not in (_identity_matrix(F, 2), _negate(F, _identity_matrix(F, 2))):
            raise ValueError("Le centre de SL₂ est {I, -I}")
        return self._wrap(entries)

    def identity(self) -> "GroupElement":
        return self._wrap(_identity_matrix(self.field, self.d))

    def _check(self, *elements: "GroupElement"):
        for g in elements:
            if g.group != self:
                raise DescriptorMismatchError(f"Élément de {g.group} utilisé dans {self}")

    def mul(self, g: "GroupElement", h: "GroupElement") -> "GroupElement":
        self._check(g, h)
        return self._wrap(_matmul(self.field, g.entries, h.entries))

    def inv(self, g: "GroupElement") -> "GroupElement":
        self._check(g)
        F = self.field
        if self.d == 2 and self.kind != 'gl':
            (a, b), (c, d) = g.entries
            return self._wrap(((d, F.reduce(-b)), (F.reduce(-c), a)))
        _, inverse = _gauss_jordan(F, g.entries)
        return self._wrap(inverse)

    def equals(self, g: "GroupElement", h: "GroupElement") -> bool:
        self._check(g, h)
        return g.entries == h.entries

    def order_key(self, g: "GroupElement") -> Tuple[Scalar, ...]:
        """Clé d'ordre total (lexicographique sur les entrées canoniques)"""
        return g.order_key()

    # --- finitude ---

    def order(self) -> int:
        """Cardinal du groupe fini"""
        if not self.is_finite:
            raise UnsupportedError(f"{self} est infini")
        p = self.field.p
        if self.kind == 'sl2':
            return p * (p * p - 1)
        if self.kind == 'psl2':
            return p * (p * p - 1) // 2
        if self.kind == 'borel':
            return p * (p - 1)
        if self.kind == 'center':
            return 2
        result = 1
        for i in range(self.d):
            result *= p ** self.d - p ** i
        return result

    def elements(self) -> Iterator["GroupElement"]:
        """Énumère chaque élément exactement une fois"""
        if not self.is_finite:
            raise UnsupportedError(f"{self} n'est pas énumérable")
        F = self.field
        p = F.p
        if self.kind == 'center':
            one = _identity_matrix(F, 2)
            yield GroupElement(self, one)
            yield GroupElement(self, _negate(F, one))
        elif self.kind == 'borel':
            for a in range(1, p):
                for b in range(p):
                    yield GroupElement(self, ((a, b), (0, F.inv(a))))
        elif self.kind == 'sl2':
            yield from (GroupElement(self, m) for m in _sl2_matrices(F))
        elif self.kind == 'psl2':
            seen = set()
            for m in _sl2_matrices(F):
                m = _psl2_sign(F, m)
                if m not in seen:
                    seen.add(m)
                    yield GroupElement(self, m)
        else:
            if p ** (self.d * self.d) > config.MAX_ENUM:
                raise BoundExceededError(f"Énumération de {self} trop grande")
            for flat in itertools.product(range(p), repeat=self.d * self.d):
                m = tuple(tuple(flat[i * self.d:(i + 1) * self.d]) for i in range(self.d))
                if determinant(F, m) != 0:
                    yield GroupElement(self, m)

    def random_element(self, rng) -> "GroupElement":
        """
        Tire un élément uniforme (groupes finis seulement)

        SL₂ : tirage uniforme dans GL₂ par rejet, puis première ligne
        multipliée par det⁻¹ (les fibres du déterminant ont même taille).
        """
        F = self.field
        if not self.is_finite:
            raise UnsupportedError(f"Pas de tirage uniforme dans {self}")
        p = F.p
        if self.kind == 'center':
            one = _identity_matrix(F, 2)
            return GroupElement(self, one if rng.integers(0, 2) == 0 else _negate(F, one))
        if self.kind == 'borel':
            a, b = F.random(rng, low=1), F.random(rng)
            return GroupElement(self, ((a, b), (0, F.inv(a))))
        if self.kind in ('sl2', 'psl2'):
            while True:
                a, b, c, d = (int(x) for x in rng.integers(0, p, size=4))
                det = (a * d - b * c) % p
                if det:
                    s = F.inv(det)
                    return self._wrap(((a * s % p, b * s % p), (c, d)))
        while True:
            flat = [int(x) for x in rng.integers(0, p, size=self.d * self.d)]
            m = tuple(tuple(flat[i * self.d:(i + 1) * self.d]) for i in range(self.d))
            if determinant(F, m) != 0:
                return GroupElement(self, m)

    def probe_generators(self) -> List["GroupElement"]:
        """Petit système générateur servant à comparer des automorphismes"""
        F = self.field
        if self.kind == 'center':
            return [self.element(_negate(F, _identity_matrix(F, 2)))]
        if self.kind == 'borel':
            w = int(primitive_root(F.p))
            return [self.element([[w, 0], [0, F.inv(w)]]), self.element([[1, 1], [0, 1]])]
        if self.kind in ('sl2', 'psl2'):
            probes = [self.element([[1, 1], [0, 1]]), self.element([[1, 0], [1, 1]])]
            if not self.is_finite:
                probes.append(self.element([[2, 0], [0, Rational(1, 2)]]))
            return probes
        probes = []
        for i in range(self.d):
            for j in range(self.d):
                if i != j:
                    m = [[int(r == c) for c in range(self.d)] for r in range(self.d)]
                    m[i][j] = 1
                    probes.append(self.element(m))
        diag = [[int(r == c) for c in range(self.d)] for r in range(self.d)]
        diag[0][0] = int(primitive_root(F.p))
        probes.append(self.element(diag))
        return probes


def group_order(group: MatrixGroup) -> int:
    return group.order()


def elements(group: MatrixGroup) -> Iterator["GroupElement"]:
    return group.elements()


def random_borel_element(p: int, rng) -> "GroupElement":
    """Élément uniforme du Borel triangulaire supérieur de SL₂(𝔽_p)"""
    return MatrixGroup('borel', PrimeField(p)).random_element(rng)


def _sl2_matrices(F: PrimeField) -> Iterator[Matrix]:
    p = F.p
    for a in range(p):
        for c in range(p):
            if a == 0 and c == 0:
                continue
            if a:
                a_inv = F.inv(a)
                for b in range(p):
                    yield ((a, b), (c, (1 + b * c) * a_inv % p))
            else:
                b = (-F.inv(c)) % p
                for d in range(p):
                    yield ((0, b), (c, d))


def _psl2_sign(F: Field, entries: Matrix) -> Matrix:
    """Représentant de ±M : première entrée non nulle « positive »"""
    for row in entries:
        for x in row:
            if x != 0:
                return entries if F.is_positive_representative(x) else _negate(F, entries)
    return entries


def psl2_canonicalize(matrix: Sequence[Sequence[Scalar]], field: Field) -> "GroupElement":
    """
    Classe dans PSL₂ d'une matrice de déterminant 1

    Les deux relevés ±M donnent le même résultat ; l'opération est idempotente.
    """
    return MatrixGroup('psl2', field).element(matrix)


@dataclass(frozen=True)
class GroupElement:
    """Élément exact d'un groupe matriciel (entrées canoniques)"""
    group: MatrixGroup
    entries: Matrix

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.mul(self, other)

    def inverse(self) -> "GroupElement":
        return self.group.inv(self)

    def is_identity(self) -> bool:
        return self.entries == self.group.identity().entries

    def order_key(self) -> Tuple[Scalar, ...]:
        return tuple(x for row in self.entries for x in row)

    def trace(self) -> Scalar:
        return self.group.field.reduce(sum(self.entries[i][i] for i in range(self.group.d)))

    def to_list(self) -> List[List[Union[int, str]]]:
        return [[scalar_to_json(x) for x in row] for row in self.entries]

    def __str__(self) -> str:
        return format_matrix(self)


class ExceedsCutoff:
    """Marqueur : ordre supérieur à la borne demandée"""

    def __init__(self, cutoff: int):
        self.cutoff = cutoff

    def __repr__(self) -> str:
        return f"ExceedsCutoff({self.cutoff})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ExceedsCutoff) and other.cutoff == self.cutoff


def element_order(g: GroupElement, cutoff: Optional[int] = None) -> Union[int, ExceedsCutoff]:
    """
    Ordre de g : plus petit m ≥ 1 avec g^m = e

    Args:
        g: Élément
        cutoff: Borne de recherche (config.ORDER_CUTOFF par défaut)

    Returns:
        L'ordre, ou ExceedsCutoff s'il dépasse la borne
    """
    cutoff = config.ORDER_CUTOFF if cutoff is None else cutoff
    e = g.group.identity()
    power = g
    for m in range(1, cutoff + 1):
        if power == e:
            return m
        power = power * g
    return ExceedsCutoff(cutoff)


# === AUTOMORPHISMES DE G ===

@dataclass(frozen=True)
class GroupAutomorphism:
    """
    Automorphisme de G : intérieur, transposée-inverse (GL_d) ou composé

    Un composé s'applique de droite à gauche.
    """
    kind: str
    group: MatrixGroup
    element: Optional[GroupElement] = None
    parts: Tuple["GroupAutomorphism", ...] = ()

    def __call__(self, g: GroupElement) -> GroupElement:
        return apply_automorphism(self, g)

    def inverse(self) -> "GroupAutomorphism":
        if self.kind == 'inner':
            return inner_automorphism(self.element.inverse())
        if self.kind == 'transpose_inverse':
            return self
        return GroupAutomorphism('composite', self.group,
                                 parts=tuple(part.inverse() for part in reversed(self.parts)))

    def __str__(self) -> str:
        if self.kind == 'inner':
            return f"inner:{format_matrix(self.element)}"
        if self.kind == 'transpose_inverse':
            return "transpose-inverse"
        if not self.parts:
            return "id"
        return "∘".join(str(part) for part in self.parts)


def inner_automorphism(h: GroupElement) -> GroupAutomorphism:
    """int_h : g ↦ h g h⁻¹"""
    return GroupAutomorphism('inner', h.group, element=h)


def transpose_inverse(group: MatrixGroup) -> GroupAutomorphism:
    """g ↦ (gᵀ)⁻¹ (GL_d seulement)"""
    return GroupAutomorphism('transpose_inverse', group)


def composite(parts: Sequence[GroupAutomorphism], group: MatrixGroup) -> GroupAutomorphism:
    flat = []
    for part in parts:
        flat.extend(part.parts if part.kind == 'composite' else [part])
    return GroupAutomorphism('composite', group, parts=tuple(flat))


def identity_automorphism(group: MatrixGroup) -> GroupAutomorphism:
    return GroupAutomorphism('composite', group)


def apply_automorphism(gamma: GroupAutomorphism, g: GroupElement) -> GroupElement:
    """
    Applique γ à un élément

    Args:
        gamma: Automorphisme
        g: Élément du même groupe

    Returns:
        γ(g)
    """
    if gamma.group != g.group:
        raise DescriptorMismatchError(f"Automorphisme de {gamma.group} appliqué dans {g.group}")
    if gamma.kind == 'inner':
        h = gamma.element
        return h * g * h.inverse()
    if gamma.kind == 'transpose_inverse':
        if g.group.kind != 'gl':
            raise UnsupportedError("La transposée-inverse n'est disponible que pour GL_d")
        return g.group._wrap(_transpose(g.entries)).inverse()
    for part in reversed(gamma.parts):
        g = apply_automorphism(part, g)
    return g


@dataclass(frozen=True)
class AutSubgroupR:
    """Sous-groupe fini R ⊂ Aut(G), dédoublonné par action sur les sondes"""
    group: MatrixGroup
    elements: Tuple[GroupAutomorphism, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def _action_key(gamma: GroupAutomorphism, probes: Sequence[GroupElement]):
    return tuple(apply_automorphism(gamma, s).entries for s in probes)


def close_subgroup(generators: Sequence[GroupAutomorphism], group: MatrixGroup,
                   bound: Optional[int] = None) -> AutSubgroupR:
    """
    Clôture d'un ensemble d'automorphismes en sous-groupe fini

    Deux automorphismes sont identifiés s'ils coïncident sur les sondes
    (système générateur de G).

    Args:
        generators: Générateurs de R
        group: Groupe G
        bound: Cardinal maximal admis (config.MAX_SUBGROUP_ORDER par défaut)

    Returns:
        Le sous-groupe R (l'identité en premier)
    """
    bound = config.MAX_SUBGROUP_ORDER if bound is None else bound
    probes = group.probe_generators()
    start = identity_automorphism(group)
    seen = {_action_key(start, probes): start}
    frontier = [start]
    while frontier:
        next_frontier = []
        for element in frontier:
            for gen in generators:
                candidate = composite([gen, element], group)
                key = _action_key(candidate, probes)
                if key not in seen:
                    seen[key] = candidate
                    next_frontier.append(candidate)
                    if len(seen) > bound:
                        raise BoundExceededError(f"Clôture de R au-delà de {bound} éléments")
        frontier = next_frontier
    logger.debug("Sous-groupe R de %s : %d éléments", group, len(seen))
    return AutSubgroupR(group, tuple(seen.values()))


def trivial_subgroup(group: MatrixGroup) -> AutSubgroupR:
    return AutSubgroupR(group, (identity_automorphism(group),))


def inner_automorphism_group(group: MatrixGroup,
                             bound: Optional[int] = None) -> AutSubgroupR:
    """R = Int(G) pour un groupe fini G"""
    return close_subgroup([inner_automorphism(s) for s in group.probe_generators()], group, bound)


# === MODÈLE QUADRIQUE ===

def sl2_to_quadric(g: GroupElement) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
    """
    Point (a, d, b, -c) de la quadrique x₁x₂ + x₃x₄ = 1 associé à [[a,b],[c,d]]
    """
    if g.group.kind in ('psl2', 'gl'):
        raise UnsupportedError("Le modèle quadrique concerne les éléments de SL₂")
    F = g.group.field
    (a, b), (c, d) = g.entries
    return a, d, b, F.reduce(-c)


def quadric_to_sl2(point: Sequence[Scalar], group: MatrixGroup) -> GroupElement:
    """Inverse de sl2_to_quadric"""
    F = group.field
    x1, x2, x3, x4 = (F.canon(x) for x in point)
    if F.reduce(x1 * x2 + x3 * x4) != F.canon(1):
        raise ValueError("Le point n'est pas sur la quadrique x₁x₂ + x₃x₄ = 1")
    return group.element([[x1, x3], [F.reduce(-x4), x2]])


# === LECTURE / ÉCRITURE ===

_GROUP_PATTERNS = [
    re.compile(r"(?P<kind>sl2|psl2|borel|center):p=(?P<p>\d+)$"),
    re.compile(r"(?P<kind>sl2|psl2):(?P<q>Q)$"),
    re.compile(r"(?P<kind>gl):d=(?P<d>\d+),p=(?P<p>\d+)$"),
]


def parse_group(text: str) -> MatrixGroup:
    """
    Lit un descripteur : sl2:p=5, psl2:p=7, gl:d=3,p=5, sl2:Q, borel:p=7, center:p=5
    """
    text = text.strip()
    for pattern in _GROUP_PATTERNS:
        match = pattern.match(text)
        if match:
            parts = match.groupdict()
            field = RationalField() if parts.get('q') else PrimeField(int(parts['p']))
            return MatrixGroup(parts['kind'], field, int(parts.get('d') or 2))
    raise ParseError(f"Descripteur de groupe invalide '{text}'", 0)


_ENTRY = re.compile(r"\s*(-?\d+)(?:/(\d+))?\s*")


def parse_matrix(text: str, group: MatrixGroup, offset: int = 0) -> GroupElement:
    """
    Lit une matrice « [1,1;0,1] » (lignes séparées par ';')

    Args:
        text: Littéral
        group: Groupe d'appartenance
        offset: Position du littéral dans un texte englobant (messages d'erreur)
    """
    stripped = text.strip()
    lead = offset + len(text) - len(text.lstrip())
    if not (stripped.startswith('[') and stripped.endswith(']')):
        raise ParseError("Une matrice s'écrit entre crochets", lead)
    rows = []
    pos = 1
    body_end = len(stripped) - 1
    for row_text in stripped[1:body_end].split(';'):
        row = []
        for entry_text in row_text.split(','):
            match = _ENTRY.fullmatch(entry_text)
            if not match:
                raise ParseError(f"Entrée invalide '{entry_text.strip()}'", lead + pos)
            num, den = match.groups()
            row.append(Rational(int(num), int(den)) if den else int(num))
            pos += len(entry_text) + 1
        rows.append(row)
    try:
        return group.element(rows)
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(f"Matrice refusée : {e}", lead) from e


def scalar_to_json(x: Scalar) -> Union[int, str]:
    if isinstance(x, Rational):
        return int(x) if x.q == 1 else str(x)
    return x


def format_matrix(g: GroupElement) -> str:
    """Écrit une matrice au format « [a,b;c,d] »"""
    return "[" + ";".join(",".join(str(scalar_to_json(x)) for x in row) for row in g.entries) + "]"


def parse_group_automorphism(text: str, group: MatrixGroup, offset: int = 0) -> GroupAutomorphism:
    """
    Lit un automorphisme de G : inner:<matrice>, transpose-inverse ou id
    """
    token = text.strip()
    lead = offset + len(text) - len(text.lstrip())
    if token.startswith('inner:'):
        return inner_automorphism(parse_matrix(token[len('inner:'):], group, lead + len('inner:')))
    if token == 'transpose-inverse':
        return transpose_inverse(group)
    if token in ('id', ''):
        return identity_automorphism(group)
    raise ParseError(f"Automorphisme de groupe inconnu '{token}'", lead)


def parse_group_automorphisms(text: str, group: MatrixGroup) -> AutSubgroupR:
    """
    Lit les générateurs de R séparés par '|' et clôt le sous-groupe

    Formes : celles de parse_group_automorphism, et Int (tout Int(G), G fini).
    """
    generators = []
    offset = 0
    for part in text.split('|'):
        if part.strip() == 'Int':
            generators.extend(inner_automorphism(s) for s in group.probe_generators())
        else:
            generators.append(parse_group_automorphism(part, group, offset))
        offset += len(part) + 1
    return close_subgroup(generators, group)
