import random

import pytest

from schreierkit import (
    Alphabet,
    BadBound,
    BadGenus,
    CosetTable,
    FiniteQuotientHom,
    InvalidTable,
    Letter,
    Perm,
    Presentation,
    RelatorNotKilled,
    back_substitute,
    concat_reduce,
    eval_word,
    free_reduce,
    invert,
    is_reduced,
    low_index_tables,
    parse_word,
    regular_table,
    rewrite_presentation,
    surface_presentation,
    surface_report,
    surface_survey,
)

AB = Alphabet.of("ab")


def random_table(rng, alphabet, n):
    while True:
        columns = []
        for _ in range(alphabet.size):
            images = list(range(n))
            rng.shuffle(images)
            columns.append(Perm(tuple(images)))
        try:
            return CosetTable(alphabet, tuple(columns))
        except InvalidTable:
            continue


def perm_order(p):
    q, order = p, 1
    while not q.is_identity:
        q, order = q * p, order + 1
    return order


def random_killed_relator(rng, table):
    """A nonempty word acting trivially on every coset: a random word raised
    to the order of its permutation image."""
    alphabet = table.alphabet
    while True:
        raw = [
            Letter(rng.randrange(alphabet.size), rng.choice((1, -1)))
            for _ in range(rng.randrange(1, 4))
        ]
        u = free_reduce(alphabet, raw)
        if len(u) == 0:
            continue
        h = FiniteQuotientHom(alphabet, table.action)
        k = perm_order(eval_word(h, u))
        relator = u
        for _ in range(k - 1):
            relator = concat_reduce(relator, u)
        return relator


def test_surface_presentation_examples():
    torus = surface_presentation(1)
    assert torus.alphabet.names == ("a", "b")
    assert [str(rel) for rel in torus.relators] == ["abAB"]

    genus2 = surface_presentation(2)
    assert genus2.alphabet.size == 4
    assert len(genus2.relators) == 1
    assert len(genus2.relators[0]) == 8


def test_surface_presentation_cyclically_reduced():
    for g in range(1, 13):
        relator = surface_presentation(g).relators[0]
        assert len(relator) == 4 * g
        assert is_reduced(relator.letters)
        first, last = relator.letters[0], relator.letters[-1]
        assert not (first.gen == last.gen and first.sign == -last.sign)


def test_surface_presentation_bounds():
    with pytest.raises(BadGenus):
        surface_presentation(0)
    with pytest.raises(BadGenus):
        surface_presentation(13)


def test_rewrite_rank_one_power_relator():
    # F(a) realised as <a | a^4> with the index-2 table: basis [aa], and both
    # coset conjugates of the relator rewrite to x0 x0
    alphabet = Alphabet.of("a")
    pres = Presentation(alphabet, (parse_word("aaaa", alphabet),))
    table = regular_table(FiniteQuotientHom(alphabet, (Perm((1, 0)),)))
    sp = rewrite_presentation(pres, table)
    assert sp.generator_count == 1
    assert [str(u) for u in sp.basis.elements] == ["aa"]
    assert sp.relators == (((0, 1), (0, 1)), ((0, 1), (0, 1)))
    assert sp.relator_text(sp.relators[0]) == "x0 x0"


def test_rewrite_requires_relators_killed_everywhere():
    # b fixes the base coset but moves coset 1, so it is in the subgroup
    # without its conjugates being there
    table = CosetTable(AB, (Perm((1, 0, 2)), Perm((0, 2, 1))))
    pres = Presentation(AB, (parse_word("b", AB),))
    with pytest.raises(RelatorNotKilled) as info:
        rewrite_presentation(pres, table)
    assert info.value.coset in (1, 2)


def test_rewrite_counts_genus1_index2():
    pres = surface_presentation(1)
    tables = low_index_tables(pres, 2)
    assert len(tables) == 3
    for table in tables:
        sp = rewrite_presentation(pres, table)
        assert sp.generator_count == 3
        assert len(sp.relators) == 2
        assert 1 - sp.generator_count + len(sp.relators) == 2 * (1 - 2 + 1)


def test_rewrite_counts_genus2_index2():
    pres = surface_presentation(2)
    tables = low_index_tables(pres, 2)
    assert len(tables) == 15
    for table in tables:
        sp = rewrite_presentation(pres, table)
        assert sp.generator_count == 7
        assert len(sp.relators) == 2


def test_back_substitution_reduces_to_conjugates():
    pres = surface_presentation(2)
    for table in low_index_tables(pres, 2):
        sp = rewrite_presentation(pres, table)
        _, _, tr = sp.source
        i = 0
        for c in range(table.n):
            for rel in pres.relators:
                expected = concat_reduce(
                    concat_reduce(tr.reps[c], rel), invert(tr.reps[c])
                )
                assert back_substitute(sp, sp.relators[i]) == expected
                i += 1


def test_euler_characteristic_multiplies_randomized():
    rng = random.Random(60902)
    for _ in range(40):
        m = rng.randrange(1, 4)
        n = rng.randrange(1, 9)
        table = random_table(rng, Alphabet.first(m), n)
        k = rng.randrange(1, 4)
        relators = tuple(random_killed_relator(rng, table) for _ in range(k))
        pres = Presentation(table.alphabet, relators)
        sp = rewrite_presentation(pres, table)
        assert sp.generator_count == n * (m - 1) + 1
        assert len(sp.relators) == n * k
        assert 1 - sp.generator_count + len(sp.relators) == n * (1 - m + k)


def test_surface_report_genus2_index2():
    reports = surface_report(2, 2)
    assert len(reports) == 15
    for report in reports:
        assert report.rho_G1_formula == 2 * 3 + (1 - 2) == 5
        assert report.euler_G == -2
        assert report.euler_G1 == -4
        assert report.rho_G1_counts == 5
        assert report.checks_pass


def test_surface_report_torus_constant_rank_deficiency():
    for n in (1, 2, 3):
        for report in surface_report(1, n):
            assert report.rho_G1_formula == 1
            assert report.rho_G1_counts == 1
            assert report.checks_pass


def test_surface_report_bounds():
    with pytest.raises(BadBound):
        surface_report(5, 2)
    with pytest.raises(BadBound):
        surface_report(2, 7)
    # bounds are overridable; torus subgroups stay cheap at higher genus cap
    assert len(surface_report(1, 2, max_genus=1)) == 3


def test_surface_survey_shapes():
    survey = surface_survey(2, 2)
    assert len(survey) == 15
    for report, table, sp in survey:
        assert table.n == 2
        assert sp.generator_count == 7
        assert report.checks_pass
