"""Rewriting relators to presentations of finite-index subgroups, plus the
surface-group rank-deficiency checks.

For a table on which every relator acts trivially, each coset ``c`` and
each source relator ``rho`` contribute one rewritten relator: the word
``rep(c) · rho · rep(c)^-1`` expressed over the subgroup basis.  Rewritten
relators are kept raw (freely reduced over the fresh basis symbols, but
never simplified further) so the counting identities are exact:
``generators = n·(m-1) + 1`` and ``relators = n·k`` make the presentation
Euler characteristic multiply by the index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cosets import CosetTable, Presentation, low_index_tables, trace
from .errors import BadBound, BadGenus, RelatorNotKilled
from .transversal import (
    SchreierTransversal,
    SubgroupBasis,
    rewrite_in_basis,
    schreier_basis,
    schreier_transversal,
)
from .words import Alphabet, FreeWord, Letter, concat_reduce, free_reduce, invert

MAX_GENUS = 12
DEFAULT_REPORT_MAX_GENUS = 4
DEFAULT_REPORT_MAX_INDEX = 6

SignedSymbol = tuple[int, int]  # (basis symbol position, sign)
SymbolWord = tuple[SignedSymbol, ...]


@dataclass(frozen=True)
class SubgroupPresentation:
    """Raw rewritten presentation of the subgroup of a coset table.

    ``relators`` are words over fresh basis symbols, stored as signed
    position sequences; symbol ``i`` prints as ``x<i>`` and stands for
    ``basis.elements[i]``.
    """

    generator_count: int
    relators: tuple[SymbolWord, ...]
    source: tuple[Presentation, CosetTable, SchreierTransversal]
    basis: SubgroupBasis

    def symbol_name(self, position: int) -> str:
        return f"x{position}"

    def relator_text(self, relator: SymbolWord) -> str:
        if not relator:
            return "1"
        return " ".join(
            self.symbol_name(pos) if sign > 0 else self.symbol_name(pos) + "^-1"
            for pos, sign in relator
        )


@dataclass(frozen=True)
class SurfaceReport:
    """Rank-deficiency bookkeeping for one finite-index subgroup of an
    orientable surface group."""

    genus: int
    index: int
    rho_G: int
    rho_G1_formula: int
    rho_G1_counts: int
    euler_G: int
    euler_G1: int

    @property
    def checks_pass(self) -> bool:
        return (
            self.rho_G1_formula == self.index * self.rho_G + (1 - self.index)
            and self.euler_G1 == self.index * self.euler_G
            and self.rho_G1_counts == self.rho_G1_formula
        )


def surface_presentation(g: int) -> Presentation:
    """The genus-``g`` orientable surface presentation: ``2g`` generators
    and the single relator that multiplies out their ``g`` commutators."""
    if not 1 <= g <= MAX_GENUS:
        raise BadGenus(f"genus must be in 1..{MAX_GENUS}, got {g}")
    alphabet = Alphabet.first(2 * g)
    letters: list[Letter] = []
    for i in range(g):
        a, b = 2 * i, 2 * i + 1
        letters.extend([Letter(a, 1), Letter(b, 1), Letter(a, -1), Letter(b, -1)])
    relator = free_reduce(alphabet, letters)
    assert len(relator) == 4 * g
    return Presentation(alphabet, (relator,))


def _reduce_symbols(symbols: list[SignedSymbol]) -> SymbolWord:
    out: list[SignedSymbol] = []
    for pos, sign in symbols:
        if out and out[-1][0] == pos and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((pos, sign))
    return tuple(out)


def rewrite_presentation(p: Presentation, t: CosetTable) -> SubgroupPresentation:
    """Rewrite every relator through every coset of the table.

    Requires each relator to act trivially on every coset (so that all its
    conjugates lie in the subgroup); otherwise :class:`RelatorNotKilled`
    names the offending relator and coset.
    """
    for rel in p.relators:
        for c in range(t.n):
            if trace(t, c, rel) != c:
                raise RelatorNotKilled(rel, c)
    tr = schreier_transversal(t)
    basis = schreier_basis(tr)
    rewritten: list[SymbolWord] = []
    for c in range(t.n):
        rep = tr.reps[c]
        for rel in p.relators:
            conjugate = concat_reduce(concat_reduce(rep, rel), invert(rep))
            rewritten.append(tuple(_reduce_symbols(rewrite_in_basis(basis, conjugate))))
    return SubgroupPresentation(
        generator_count=len(basis.elements),
        relators=tuple(rewritten),
        source=(p, t, tr),
        basis=basis,
    )


def back_substitute(sp: SubgroupPresentation, relator: SymbolWord) -> FreeWord:
    """Replace each fresh symbol by its basis word and freely reduce."""
    acc = FreeWord(sp.basis.table.alphabet)
    for pos, sign in relator:
        factor = sp.basis.elements[pos]
        acc = concat_reduce(acc, factor if sign > 0 else invert(factor))
    return acc


def surface_survey(
    g: int,
    n: int,
    max_genus: int = DEFAULT_REPORT_MAX_GENUS,
    max_index: int = DEFAULT_REPORT_MAX_INDEX,
) -> list[tuple[SurfaceReport, CosetTable, SubgroupPresentation]]:
    """One (report, table, rewritten presentation) triple per index-``n``
    subgroup of the genus-``g`` surface group, in canonical table order."""
    if not 1 <= g <= max_genus:
        raise BadBound(f"genus {g} outside 1..{max_genus}")
    if not 1 <= n <= max_index:
        raise BadBound(f"index {n} outside 1..{max_index}")
    presentation = surface_presentation(g)
    rho_g = 2 * g - 1
    euler_g = 2 - 2 * g
    out = []
    for table in low_index_tables(presentation, n, max_index=max(n, 8)):
        sp = rewrite_presentation(presentation, table)
        euler_g1 = 1 - sp.generator_count + len(sp.relators)
        report = SurfaceReport(
            genus=g,
            index=n,
            rho_G=rho_g,
            rho_G1_formula=n * rho_g + (1 - n),
            rho_G1_counts=1 - euler_g1,
            euler_G=euler_g,
            euler_G1=euler_g1,
        )
        out.append((report, table, sp))
    return out


def surface_report(
    g: int,
    n: int,
    max_genus: int = DEFAULT_REPORT_MAX_GENUS,
    max_index: int = DEFAULT_REPORT_MAX_INDEX,
) -> list[SurfaceReport]:
    """Rank-deficiency reports for every index-``n`` subgroup of the
    genus-``g`` surface group."""
    return [report for report, _, _ in surface_survey(g, n, max_genus, max_index)]
