"""Freely reduced words over a finite symmetrized alphabet.

A word is a sequence of letters, each a generator together with a sign.
Every :class:`FreeWord` is stored fully reduced: no letter is adjacent to
its own inverse.  Raw letter sequences exist only transiently inside
:func:`free_reduce`; all other constructors preserve reducedness.

Text syntax: a generator prints as its lowercase name, its inverse as the
same letter uppercased, juxtaposition is concatenation, and ``"1"`` is the
empty word.  There is no whitespace or exponent syntax.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import AlphabetMismatch, EmptyWord, InvalidLetter, ParseError

_LOWERCASE = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Alphabet:
    """Ordered, pairwise distinct single-character lowercase generator names."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.names:
            raise ValueError("alphabet needs at least one generator")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names: {self.names!r}")
        for name in self.names:
            if len(name) != 1 or name not in _LOWERCASE:
                raise ValueError(
                    f"generator name must be a single lowercase ASCII letter: {name!r}"
                )

    @classmethod
    def of(cls, names: str) -> "Alphabet":
        """Alphabet from a string of generator names, e.g. ``Alphabet.of("ab")``."""
        return cls(tuple(names))

    @classmethod
    def first(cls, size: int) -> "Alphabet":
        """Alphabet on the first ``size`` letters a, b, c, ..."""
        return cls(tuple(_LOWERCASE[:size]))

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


class Letter(NamedTuple):
    """One generator occurrence: generator index plus sign (+1 or -1)."""

    gen: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


def _check_letters(alphabet: Alphabet, letters: Iterable[Letter]) -> None:
    for ell in letters:
        if not 0 <= ell.gen < alphabet.size:
            raise InvalidLetter(
                f"generator index {ell.gen} outside alphabet of size {alphabet.size}"
            )
        if ell.sign not in (1, -1):
            raise InvalidLetter(f"letter sign must be +1 or -1, got {ell.sign}")


def is_reduced(letters: Iterable[Letter]) -> bool:
    """True when no letter is immediately followed by its inverse."""
    prev: Letter | None = None
    for ell in letters:
        if prev is not None and prev.gen == ell.gen and prev.sign == -ell.sign:
            return False
        prev = ell
    return True


@dataclass(frozen=True)
class FreeWord:
    """An immutable freely reduced word.  Construct via :func:`free_reduce`,
    :func:`parse_word`, or the arithmetic on existing words."""

    alphabet: Alphabet
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        _check_letters(self.alphabet, self.letters)
        if not is_reduced(self.letters):
            raise ValueError(f"letters are not freely reduced: {self.letters!r}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        names = self.alphabet.names
        return "".join(
            names[g] if s > 0 else names[g].upper() for g, s in self.letters
        )

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return concat_reduce(self, other)

    def __invert__(self) -> "FreeWord":
        return invert(self)

    @property
    def is_identity(self) -> bool:
        return not self.letters


def empty_word(alphabet: Alphabet) -> FreeWord:
    return FreeWord(alphabet, ())


def letter_word(alphabet: Alphabet, gen: int, sign: int) -> FreeWord:
    """Single-letter word ``gen^sign``."""
    return FreeWord(alphabet, (Letter(gen, sign),))


def free_reduce(alphabet: Alphabet, raw: Iterable[Letter]) -> FreeWord:
    """Reduce a raw letter sequence to the unique reduced word for the same
    group element.  Idempotent; a stack pass cancels all adjacent inverse
    pairs, including those exposed by earlier cancellations."""
    raw = tuple(raw)
    _check_letters(alphabet, raw)
    out: list[Letter] = []
    for ell in raw:
        if out and out[-1].gen == ell.gen and out[-1].sign == -ell.sign:
            out.pop()
        else:
            out.append(ell)
    return FreeWord(alphabet, tuple(out))


def invert(w: FreeWord) -> FreeWord:
    """Reverse the word and flip every sign; the result is again reduced."""
    return FreeWord(w.alphabet, tuple(ell.inverse() for ell in reversed(w.letters)))


def concat_reduce(u: FreeWord, v: FreeWord) -> FreeWord:
    """Reduced form of the concatenation u·v."""
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(
            f"cannot concatenate words over {u.alphabet.names} and {v.alphabet.names}"
        )
    out = list(u.letters)
    for ell in v.letters:
        if out and out[-1].gen == ell.gen and out[-1].sign == -ell.sign:
            out.pop()
        else:
            out.append(ell)
    return FreeWord(u.alphabet, tuple(out))


def prefixes(w: FreeWord) -> list[FreeWord]:
    """All proper initial segments of ``w``: the empty word, then the first
    letter, the first two letters, ... up to length ``len(w) - 1``.  Every
    prefix of a reduced word is reduced, so no re-reduction is needed."""
    if not w.letters:
        raise EmptyWord("the empty word has no initial-segment list")
    return [FreeWord(w.alphabet, w.letters[:i]) for i in range(len(w.letters))]


def parse_word(text: str, alphabet: Alphabet) -> FreeWord:
    """Parse word syntax and freely reduce the result.

    ``"1"`` and the empty string parse to the empty word.  Unknown
    characters raise :class:`ParseError` carrying the offending position.
    """
    if text in ("", "1"):
        return empty_word(alphabet)
    lower = {name: i for i, name in enumerate(alphabet.names)}
    raw: list[Letter] = []
    for pos, ch in enumerate(text):
        if ch in lower:
            raw.append(Letter(lower[ch], 1))
        elif ch.lower() in lower and ch.isupper():
            raw.append(Letter(lower[ch.lower()], -1))
        else:
            raise ParseError(f"unknown character {ch!r} at position {pos}", position=pos)
    return free_reduce(alphabet, raw)
