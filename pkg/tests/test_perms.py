import itertools
import math
import random

import pytest

from schreierkit import (
    Alphabet,
    AlphabetMismatch,
    FiniteQuotientHom,
    ImageTooLarge,
    Letter,
    Perm,
    Presentation,
    eval_word,
    free_reduce,
    image_closure,
    invert,
    kills_relators,
    parse_word,
    perm_from_text,
    perm_to_text,
)

AB = Alphabet.of("ab")


def hom(a_images, b_images):
    return FiniteQuotientHom(AB, (Perm(tuple(a_images)), Perm(tuple(b_images))))


def random_word(rng, alphabet, max_len):
    raw = [
        Letter(rng.randrange(alphabet.size), rng.choice((1, -1)))
        for _ in range(rng.randrange(max_len + 1))
    ]
    return free_reduce(alphabet, raw)


def test_perm_validation():
    with pytest.raises(ValueError):
        Perm((0, 0))
    with pytest.raises(ValueError):
        Perm((1, 2))
    assert Perm.identity(3).images == (0, 1, 2)


def test_perm_composition_is_right_action():
    p = Perm((1, 0, 2))  # swap 0,1
    q = Perm((0, 2, 1))  # swap 1,2
    # i under p*q: apply p first
    assert (p * q).images == (2, 0, 1)
    assert (p * p.inverse()).is_identity
    assert p.inverse() == p


def test_perm_text_roundtrip():
    p = Perm((1, 0, 2))
    assert perm_to_text(p) == "[1,0,2]"
    assert perm_from_text("[1,0,2]") == p
    with pytest.raises(Exception):
        perm_from_text("1,0,2")


def test_hom_shape_validation():
    with pytest.raises(ValueError):
        FiniteQuotientHom(AB, (Perm((0, 1)),))
    with pytest.raises(ValueError):
        FiniteQuotientHom(AB, (Perm((0, 1)), Perm((0, 1, 2))))


def test_eval_word_examples():
    h = hom((1, 0), (0, 1))
    assert eval_word(h, parse_word("1", AB)).is_identity
    assert eval_word(h, parse_word("aa", AB)).is_identity
    assert eval_word(h, parse_word("a", AB)) == Perm((1, 0))


def test_eval_word_alphabet_mismatch():
    h = hom((1, 0), (0, 1))
    with pytest.raises(AlphabetMismatch):
        eval_word(h, parse_word("c", Alphabet.of("abc")))


def test_eval_word_laws():
    rng = random.Random(42)
    degree = 4
    perms = list(itertools.permutations(range(degree)))
    for _ in range(100):
        h = hom(rng.choice(perms), rng.choice(perms))
        u = random_word(rng, AB, 10)
        v = random_word(rng, AB, 10)
        assert eval_word(h, invert(u)) == eval_word(h, u).inverse()
        assert eval_word(h, u * v) == eval_word(h, u) * eval_word(h, v)


def test_kills_relators():
    h = hom((1, 0), (0, 1))
    assert kills_relators(h, [])
    aa = Presentation(AB, (parse_word("aa", AB),))
    assert kills_relators(h, aa.relators)
    h3 = hom((1, 2, 0), (0, 1, 2))
    assert not kills_relators(h3, aa.relators)


def test_image_closure_examples():
    trivial = hom((0, 1), (0, 1))
    assert image_closure(trivial) == [Perm.identity(2)]
    two = image_closure(hom((1, 0), (0, 1)))
    assert len(two) == 2
    assert two[0].is_identity


def test_image_closure_s3_against_brute_force():
    h = FiniteQuotientHom(AB, (Perm((1, 0, 2)), Perm((0, 2, 1))))
    closure = image_closure(h)
    assert len(closure) == 6
    assert closure[0].is_identity
    # oracle: all 6 permutations of 3 points form the closure
    assert set(closure) == {Perm(p) for p in itertools.permutations(range(3))}


def test_image_closure_deterministic_order():
    h = FiniteQuotientHom(AB, (Perm((1, 0, 2)), Perm((0, 2, 1))))
    assert image_closure(h) == image_closure(h)
    # BFS layer 1 in neighbor order: right-multiply identity by a, then b
    closure = image_closure(h)
    assert closure[1] == Perm((1, 0, 2))
    assert closure[2] == Perm((0, 2, 1))


def test_image_closure_group_axioms_and_lagrange():
    rng = random.Random(2718)
    for _ in range(25):
        degree = rng.randrange(2, 6)
        perms = list(itertools.permutations(range(degree)))
        h = hom(rng.choice(perms), rng.choice(perms))
        closure = image_closure(h)
        assert len(set(closure)) == len(closure)
        elements = set(closure)
        for p in closure:
            assert p.inverse() in elements
        for p in closure[:8]:
            for q in closure[:8]:
                assert p * q in elements
        assert math.factorial(degree) % len(closure) == 0


def test_image_closure_ceiling():
    h = FiniteQuotientHom(AB, (Perm((1, 2, 0)), Perm((1, 0, 2))))
    with pytest.raises(ImageTooLarge):
        image_closure(h, ceiling=5)
