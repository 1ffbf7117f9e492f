"""
Module d'arithmétique exacte dans le groupe libre F_n
"""
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple

from modules.errors import IndexOutOfRangeError, ParseError, RankMismatchError

SUGAR_MAX_RANK = 26


class Letter(NamedTuple):
    """Lettre f_i^{±1} d'un mot"""
    index: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)


@dataclass(frozen=True)
class ReducedWord:
    """Mot librement réduit en n générateurs (élément de F_n)"""
    rank: int
    letters: Tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return multiply(self, other)

    def inverse(self) -> "ReducedWord":
        return invert(self)

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        return format_word(self)


def _check_letter(letter: Letter, rank: int):
    if letter.sign not in (1, -1):
        raise ValueError(f"Exposant invalide {letter.sign} : attendu +1 ou -1")
    if not 1 <= letter.index <= rank:
        raise IndexOutOfRangeError(
            f"Générateur f{letter.index} hors du rang {rank}"
        )


def reduce(raw: Iterable[Tuple[int, int]], rank: int) -> ReducedWord:
    """
    Réduit librement une suite de lettres

    Args:
        raw: Suite de couples (indice, signe)
        rank: Rang n du groupe libre

    Returns:
        L'unique mot réduit égal à la suite dans F_n
    """
    if rank < 0:
        raise ValueError("Le rang doit être positif")
    stack = []
    for index, sign in raw:
        letter = Letter(index, sign)
        _check_letter(letter, rank)
        if stack and stack[-1].index == index and stack[-1].sign == -sign:
            stack.pop()
        else:
            stack.append(letter)
    return ReducedWord(rank, tuple(stack))


def letters_from_pairs(pairs: Iterable[Tuple[int, int]], rank: int) -> ReducedWord:
    """
    Construit un mot à partir de couples (indice, exposant) quelconques

    Args:
        pairs: Couples (i, e) représentant f_i^e, e entier relatif
        rank: Rang n

    Returns:
        Le mot réduit
    """
    raw = []
    for index, exponent in pairs:
        raw.extend([(index, 1 if exponent > 0 else -1)] * abs(exponent))
    return reduce(raw, rank)


def identity(rank: int) -> ReducedWord:
    """Mot vide de F_n"""
    return ReducedWord(rank, ())


def generator(index: int, rank: int, sign: int = 1) -> ReducedWord:
    """Générateur f_index (ou son inverse)"""
    return reduce([(index, sign)], rank)


def _check_ranks(u: ReducedWord, v: ReducedWord):
    if u.rank != v.rank:
        raise RankMismatchError(f"Rangs incompatibles : {u.rank} et {v.rank}")


def multiply(u: ReducedWord, v: ReducedWord) -> ReducedWord:
    """Produit réduit u·v"""
    _check_ranks(u, v)
    left = list(u.letters)
    right = v.letters
    k = 0
    # Annulation uniquement à la jonction : u et v sont déjà réduits
    while left and k < len(right) and left[-1] == right[k].inverse():
        left.pop()
        k += 1
    return ReducedWord(u.rank, tuple(left) + right[k:])


def invert(u: ReducedWord) -> ReducedWord:
    """Inverse : renversement avec signes opposés"""
    return ReducedWord(u.rank, tuple(l.inverse() for l in reversed(u.letters)))


def power(u: ReducedWord, k: int) -> ReducedWord:
    """Puissance u^k (k entier relatif)"""
    base = u if k >= 0 else invert(u)
    result = identity(u.rank)
    for _ in range(abs(k)):
        result = multiply(result, base)
    return result


def commutator(u: ReducedWord, v: ReducedWord) -> ReducedWord:
    """Commutateur [u, v] = u⁻¹ v⁻¹ u v"""
    return multiply(multiply(invert(u), invert(v)), multiply(u, v))


def cyclically_reduce(u: ReducedWord) -> Tuple[ReducedWord, ReducedWord]:
    """
    Réduction cyclique

    Args:
        u: Mot réduit

    Returns:
        (cœur, conjugant) avec u = conjugant · cœur · conjugant⁻¹
    """
    letters = u.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == letters[j].inverse():
        i += 1
        j -= 1
    core = ReducedWord(u.rank, letters[i:j + 1])
    conjugator = ReducedWord(u.rank, letters[:i])
    return core, conjugator


def shift(u: ReducedWord, offset: int, rank: int) -> ReducedWord:
    """Renomme f_i en f_{i+offset} dans un groupe libre de rang supérieur"""
    return reduce(((l.index + offset, l.sign) for l in u.letters), rank)


def random_word(rank: int, length: int, rng) -> ReducedWord:
    """
    Tire un mot réduit de longueur exacte donnée

    Args:
        rank: Rang n
        length: Longueur voulue
        rng: numpy.random.Generator
    """
    letters = []
    while len(letters) < length:
        letter = Letter(int(rng.integers(1, rank + 1)), int(rng.choice((-1, 1))))
        if letters and letters[-1] == letter.inverse():
            continue
        letters.append(letter)
    return ReducedWord(rank, tuple(letters))


# === LECTURE / ÉCRITURE ===

_TOKEN = re.compile(r"x(\d+)|([A-Za-z])")
_EXPONENT = re.compile(r"\^(-?\d+)")


def parse_word(text: str, rank: Optional[int] = None) -> ReducedWord:
    """
    Lit un mot : jetons x<k>[^e] ou lettres (minuscule = générateur,
    majuscule = inverse, rang ≤ 26). La chaîne vide est l'identité.

    Args:
        text: Texte du mot
        rank: Rang n (déduit du plus grand indice si absent)

    Returns:
        Le mot réduit
    """
    raw = []
    sugar_used = False
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"Caractère inattendu '{text[pos]}'", pos)
        start = pos
        if match.group(1) is not None:
            index, sign = int(match.group(1)), 1
            if index == 0:
                raise ParseError("Les générateurs sont numérotés à partir de 1", start)
        else:
            char = match.group(2)
            index, sign = ord(char.lower()) - ord('a') + 1, (1 if char.islower() else -1)
            sugar_used = True
        pos = match.end()
        exponent = 1
        exp_match = _EXPONENT.match(text, pos)
        if exp_match:
            exponent = int(exp_match.group(1))
            pos = exp_match.end()
        elif pos < len(text) and text[pos] == '^':
            raise ParseError("Exposant invalide après '^'", pos)
        if rank is not None and index > rank:
            raise ParseError(f"Générateur d'indice {index} hors du rang {rank}", start)
        raw.extend([(index, sign if exponent > 0 else -sign)] * abs(exponent))
    if rank is None:
        rank = max([i for i, _ in raw], default=1)
    if sugar_used and rank > SUGAR_MAX_RANK:
        raise ParseError(f"Notation par lettres réservée au rang ≤ {SUGAR_MAX_RANK}", 0)
    return reduce(raw, rank)


def _runs(letters: Sequence[Letter]):
    runs = []
    for letter in letters:
        if runs and runs[-1][0] == letter:
            runs[-1][1] += 1
        else:
            runs.append([letter, 1])
    return runs


def format_word(w: ReducedWord, sugar: bool = False) -> str:
    """
    Écrit un mot sous forme canonique ("x1^2 x2^-1", ou "a^2 B" avec sugar)

    La lecture du texte produit redonne le même mot.
    """
    tokens = []
    for letter, count in _runs(w.letters):
        if sugar and w.rank <= SUGAR_MAX_RANK:
            char = chr(ord('a') + letter.index - 1)
            token = char if letter.sign > 0 else char.upper()
            tokens.append(token if count == 1 else f"{token}^{count}")
        else:
            exponent = letter.sign * count
            tokens.append(f"x{letter.index}" if exponent == 1 else f"x{letter.index}^{exponent}")
    return " ".join(tokens)
