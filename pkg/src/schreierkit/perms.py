"""Finite permutations and homomorphisms from a free group into a symmetric
group.

Permutations act on the right: ``i`` under ``p * q`` is ``q[p[i]]``, i.e.
apply ``p`` first.  This matches the coset-table convention (coset times
generator) used throughout the package.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AlphabetMismatch, ImageTooLarge, ParseError
from .words import Alphabet, FreeWord

DEFAULT_IMAGE_CEILING = 10000


@dataclass(frozen=True)
class Perm:
    """A permutation of ``[0, n)`` stored as its image list."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection on [0, {len(self.images)}): {self.images!r}")

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        # apply self first, then other
        return Perm(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Perm":
        out = [0] * len(self.images)
        for i, j in enumerate(self.images):
            out[j] = i
        return Perm(tuple(out))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))


def perm_to_text(p: Perm) -> str:
    """One-line image-list form, e.g. ``[1,0,2]``."""
    return "[" + ",".join(str(i) for i in p.images) + "]"


def perm_from_text(text: str) -> Perm:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"permutation must look like [1,0,2], got {text!r}")
    body = text[1:-1].strip()
    try:
        images = tuple(int(part) for part in body.split(",")) if body else ()
        return Perm(images)
    except ValueError as exc:
        raise ParseError(f"bad permutation {text!r}: {exc}") from exc


@dataclass(frozen=True)
class FiniteQuotientHom:
    """A homomorphism from the free group on ``alphabet`` into S_degree,
    given by one permutation per generator."""

    alphabet: Alphabet
    gen_images: tuple[Perm, ...]

    def __post_init__(self) -> None:
        if len(self.gen_images) != self.alphabet.size:
            raise ValueError(
                f"{self.alphabet.size} generators but {len(self.gen_images)} images"
            )
        degrees = {p.degree for p in self.gen_images}
        if len(degrees) != 1:
            raise ValueError(f"generator images have mixed degrees: {sorted(degrees)}")
        object.__setattr__(
            self, "_inverses", tuple(p.inverse() for p in self.gen_images)
        )

    @property
    def degree(self) -> int:
        return self.gen_images[0].degree

    def image(self, gen: int, sign: int) -> Perm:
        return self.gen_images[gen] if sign > 0 else self._inverses[gen]


def eval_word(h: FiniteQuotientHom, w: FreeWord) -> Perm:
    """Image of a word: the right-action product of its letters' images."""
    if w.alphabet != h.alphabet:
        raise AlphabetMismatch("word and homomorphism use different alphabets")
    acc = list(range(h.degree))
    for gen, sign in w.letters:
        img = h.image(gen, sign).images
        acc = [img[i] for i in acc]
    return Perm(tuple(acc))


def kills_relators(h: FiniteQuotientHom, relators: Sequence[FreeWord]) -> bool:
    """True iff every relator maps to the identity permutation, so that the
    homomorphism factors through the presented group."""
    return all(eval_word(h, rel).is_identity for rel in relators)


def _bfs_closure(
    degree: int, generators: Iterable[Perm], limit: int
) -> tuple[list[Perm], bool]:
    """Breadth-first closure from the identity, multiplying on the right by
    the generators in the given order, then by their inverses in the same
    order.  Returns (elements in discovery order, truncated flag)."""
    gens = list(generators)
    steps = [g.images for g in gens] + [g.inverse().images for g in gens]
    identity = tuple(range(degree))
    seen: dict[tuple[int, ...], None] = {identity: None}
    queue: deque[tuple[int, ...]] = deque([identity])
    while queue:
        current = queue.popleft()
        for step in steps:
            nxt = tuple(step[i] for i in current)
            if nxt not in seen:
                if len(seen) >= limit:
                    return [Perm(t) for t in seen], True
                seen[nxt] = None
                queue.append(nxt)
    return [Perm(t) for t in seen], False


def image_closure(
    h: FiniteQuotientHom, ceiling: int = DEFAULT_IMAGE_CEILING
) -> list[Perm]:
    """All elements of the image group in deterministic BFS order.

    The first element is the identity; discovery multiplies each known
    element on the right by the generator images in alphabet order, then by
    their inverses in alphabet order.  This order is part of the contract:
    certificates index cosets by it.
    """
    elements, truncated = _bfs_closure(h.degree, h.gen_images, ceiling)
    if truncated:
        raise ImageTooLarge(ceiling)
    return elements
