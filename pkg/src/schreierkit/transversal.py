"""Schreier transversals and subgroup bases.

Given a coset table, a Schreier transversal assigns each coset a reduced
representative word so that the set of representatives is prefix-closed;
their one-letter steps form a spanning tree of the coset graph.  Each
remaining (non-tree) edge contributes one basis element
``rep(c) · y · rep(c·y)^-1``, and together these freely generate the
subgroup, with exactly ``n·(m-1) + 1`` elements for index ``n`` over
``m`` generators.

An :class:`AlphabetOrientation` supports the last-letter swap: generators
in its ``flipped`` set are replaced by their inverses before the basis is
read off, and the emitted elements are respelled back over the original
alphabet for storage.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .cosets import BASE, CosetTable, contains, separates_prefixes, trace
from .errors import (
    AlphabetMismatch,
    BadSeed,
    EmptyWord,
    NotInSubgroup,
    PrefixesNotSeparated,
    SeedCollision,
)
from .words import (
    FreeWord,
    Letter,
    concat_reduce,
    empty_word,
    invert,
    letter_word,
    prefixes,
)


@dataclass(frozen=True)
class SchreierTransversal:
    """One reduced representative word per coset, prefix-closed, with the
    empty word representing the base."""

    table: CosetTable
    reps: tuple[FreeWord, ...]


@dataclass(frozen=True)
class AlphabetOrientation:
    """Generators whose basis letter has been replaced by its inverse."""

    flipped: frozenset[int]

    @classmethod
    def empty(cls) -> "AlphabetOrientation":
        return cls(frozenset())

    @classmethod
    def of(cls, *gens: int) -> "AlphabetOrientation":
        return cls(frozenset(gens))

    def sign(self, gen: int) -> int:
        return -1 if gen in self.flipped else 1


@dataclass(frozen=True)
class SubgroupBasis:
    """An ordered free basis of the subgroup of a coset table.

    ``elements`` are spelled over the original alphabet regardless of the
    orientation; ``edge_index`` maps each non-tree edge, keyed by
    ``(coset, generator)`` in the oriented forward direction, to the
    position of its element.
    """

    table: CosetTable
    transversal: SchreierTransversal
    orientation: AlphabetOrientation
    elements: tuple[FreeWord, ...]
    edge_index: dict[tuple[int, int], int]


def respell(w: FreeWord, orientation: AlphabetOrientation) -> FreeWord:
    """Rename letters between the original alphabet and the oriented one:
    flip the sign of every letter whose generator is flipped.  The renaming
    is an involution and maps prefixes to prefixes, so it preserves both
    reducedness and the Schreier property of a transversal."""
    return FreeWord(
        w.alphabet,
        tuple(Letter(g, s * orientation.sign(g)) for g, s in w.letters),
    )


def schreier_transversal(
    t: CosetTable, seed: Sequence[FreeWord] | None = None
) -> SchreierTransversal:
    """Build a Schreier transversal, optionally around a seeded prefix path.

    Every seed word becomes the representative of its coset; the seed must
    be prefix-closed and its words must trace to pairwise distinct cosets.
    Remaining cosets are filled breadth-first from the seeded cosets (in
    seed order), extending existing representatives by one letter and
    visiting letters by generator index ascending, sign +1 before -1; the
    first arrival fixes the representative.  Unseeded representatives are
    therefore of minimal length among the words reaching their coset.
    """
    n = t.n
    reps: list[FreeWord | None] = [None] * n
    queue: deque[int] = deque()
    if seed:
        words = list(seed)
        pool = set(words)
        for w in words:
            if w.alphabet != t.alphabet:
                raise AlphabetMismatch("seed word alphabet differs from table alphabet")
            if len(w) > 0 and FreeWord(w.alphabet, w.letters[:-1]) not in pool:
                raise BadSeed(f"seed is not prefix-closed: missing prefix of {w}")
        for w in words:
            c = trace(t, BASE, w)
            if reps[c] is not None:
                raise SeedCollision(f"seed words {reps[c]} and {w} both trace to coset {c}")
            reps[c] = w
            queue.append(c)
    else:
        reps[BASE] = empty_word(t.alphabet)
        queue.append(BASE)
    while queue:
        c = queue.popleft()
        rep = reps[c]
        assert rep is not None
        for g in range(t.alphabet.size):
            for s in (1, -1):
                d = t.step(c, g, s)
                if reps[d] is None:
                    reps[d] = concat_reduce(rep, letter_word(t.alphabet, g, s))
                    queue.append(d)
    return SchreierTransversal(t, tuple(reps))  # type: ignore[arg-type]


def _tree_edges(tr: SchreierTransversal, orientation: AlphabetOrientation) -> set[tuple[int, int]]:
    """Edges consumed by the representatives' final letters, keyed by
    (source coset, generator) in the oriented forward direction."""
    t = tr.table
    tree: set[tuple[int, int]] = set()
    for c in range(t.n):
        w = tr.reps[c]
        if len(w) == 0:
            continue
        g, s = w.letters[-1]
        parent = t.step(c, g, -s)
        if s * orientation.sign(g) > 0:
            tree.add((parent, g))
        else:
            tree.add((c, g))
    return tree


def schreier_basis(
    tr: SchreierTransversal, orientation: AlphabetOrientation | None = None
) -> SubgroupBasis:
    """Read off the subgroup basis from a transversal.

    Over the oriented alphabet, each non-tree edge ``(c, g)`` contributes
    the element ``rep(c) · g^e · rep(c · g^e)^-1`` with ``e`` the
    orientation sign of ``g``; enumeration order is coset ascending, then
    generator ascending.  All such elements are nonempty and pairwise
    distinct, and there are exactly ``n·(m-1) + 1`` of them.
    """
    if orientation is None:
        orientation = AlphabetOrientation.empty()
    t = tr.table
    tree = _tree_edges(tr, orientation)
    elements: list[FreeWord] = []
    edge_index: dict[tuple[int, int], int] = {}
    for c in range(t.n):
        for g in range(t.alphabet.size):
            if (c, g) in tree:
                continue
            e = orientation.sign(g)
            d = t.step(c, g, e)
            u = concat_reduce(
                concat_reduce(tr.reps[c], letter_word(t.alphabet, g, e)),
                invert(tr.reps[d]),
            )
            edge_index[(c, g)] = len(elements)
            elements.append(u)
    return SubgroupBasis(t, tr, orientation, tuple(elements), edge_index)


def rewrite_in_basis(b: SubgroupBasis, w: FreeWord) -> list[tuple[int, int]]:
    """Express a subgroup element in the basis.

    Scans ``w`` letter by letter through the coset graph and emits
    ``(element position, sign)`` whenever a non-tree edge is crossed; tree
    edges contribute nothing.  The signed product of the corresponding
    basis elements freely reduces back to ``w`` exactly.
    """
    if not contains(b.table, w):
        raise NotInSubgroup(f"{w} does not fix the base coset")
    out: list[tuple[int, int]] = []
    c = BASE
    for g, s in w.letters:
        d = b.table.step(c, g, s)
        if s * b.orientation.sign(g) > 0:
            key, sign = (c, g), 1
        else:
            key, sign = (d, g), -1
        position = b.edge_index.get(key)
        if position is not None:
            out.append((position, sign))
        c = d
    return out


def evaluate_positions(b: SubgroupBasis, positions: Sequence[tuple[int, int]]) -> FreeWord:
    """Multiply out a signed position sequence over the basis elements."""
    acc = empty_word(b.table.alphabet)
    for position, sign in positions:
        factor = b.elements[position]
        acc = concat_reduce(acc, factor if sign > 0 else invert(factor))
    return acc


def _through_details(t: CosetTable, w: FreeWord) -> tuple[SubgroupBasis, int, bool]:
    if len(w) == 0:
        raise EmptyWord("cannot build a basis through the empty word")
    if not contains(t, w):
        raise NotInSubgroup(f"{w} does not fix the base coset")
    if not separates_prefixes(t, w):
        raise PrefixesNotSeparated(
            f"the initial segments of {w} do not reach distinct cosets"
        )
    seed = prefixes(w)
    tr = schreier_transversal(t, seed)
    g_last, s_last = w.letters[-1]
    orientation = (
        AlphabetOrientation.empty() if s_last > 0 else AlphabetOrientation.of(g_last)
    )
    basis = schreier_basis(tr, orientation)
    final_coset = trace(t, BASE, FreeWord(w.alphabet, w.letters[:-1]))
    position = basis.edge_index[(final_coset, g_last)]
    raw = basis.elements[position]
    if raw == w:
        return basis, position, False
    if raw == invert(w):
        elements = list(basis.elements)
        elements[position] = w
        normalized = SubgroupBasis(
            basis.table, basis.transversal, basis.orientation,
            tuple(elements), basis.edge_index,
        )
        return normalized, position, True
    raise AssertionError(
        f"final-edge element {raw} is neither {w} nor its inverse"
    )


def basis_through_word(t: CosetTable, w: FreeWord) -> SubgroupBasis:
    """A basis of the table's subgroup containing ``w`` verbatim.

    Seeds the transversal with the initial segments of ``w`` (which must
    reach pairwise distinct cosets).  When the last letter of ``w`` is
    positive the plain Schreier basis already contains ``w``; when it is
    negative the alphabet is reoriented at that generator, and if the final
    edge emitted ``w^-1`` it is normalized back to ``w``.
    """
    basis, _, _ = _through_details(t, w)
    return basis


# ---------------------------------------------------------------------------
# independent verification by folding
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def add(self, x: int) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        self.parent[self.find(x)] = self.find(y)


def fold_verify(b: SubgroupBasis) -> bool:
    """Check, independently of the transversal, that the elements are a
    basis of exactly the table's subgroup.

    Wedges one loop per element at a base vertex, then folds: while two
    equally-labeled edges leave (or enter) the same vertex, their far
    endpoints are identified and the edges merged.  A fold whose endpoints
    already coincide merges two loops into one and witnesses a dependent
    (non-basis) list.  The fully folded graph must be isomorphic, as a
    based labeled graph, to the coset graph of the table.
    """
    t = b.table
    uf = _UnionFind()
    base = 0
    uf.add(base)
    next_vertex = 1
    edges: list[tuple[int, int, int]] = []  # (src, gen, dst), src --g--> dst
    for w in b.elements:
        if len(w) == 0:
            return False
        current = base
        for i, (g, s) in enumerate(w.letters):
            target = base if i == len(w.letters) - 1 else next_vertex
            if target == next_vertex:
                uf.add(target)
                next_vertex += 1
            if s > 0:
                edges.append((current, g, target))
            else:
                edges.append((target, g, current))
            current = target

    rank_dropped = False
    while True:
        canon = [(uf.find(u), g, uf.find(v)) for u, g, v in edges]
        out_seen: dict[tuple[int, int], int] = {}
        in_seen: dict[tuple[int, int], int] = {}
        fold_at: tuple[int, int, int, int] | None = None  # (idx_keep, idx_drop, a, b)
        for idx, (u, g, v) in enumerate(canon):
            if (u, g) in out_seen:
                other = out_seen[(u, g)]
                fold_at = (other, idx, canon[other][2], v)
                break
            out_seen[(u, g)] = idx
            if (g, v) in in_seen:
                other = in_seen[(g, v)]
                fold_at = (other, idx, canon[other][0], u)
                break
            in_seen[(g, v)] = idx
        if fold_at is None:
            break
        _, drop, a, c = fold_at
        if uf.find(a) == uf.find(c):
            rank_dropped = True
        else:
            uf.union(a, c)
        edges.pop(drop)
    if rank_dropped:
        return False

    # folded graph: deterministic partial action
    out_map: dict[tuple[int, int], int] = {}
    vertices = {uf.find(base)}
    for u, g, v in edges:
        u, v = uf.find(u), uf.find(v)
        vertices.update((u, v))
        out_map[(u, g)] = v
    if len(vertices) != t.n:
        return False
    # match against the coset graph by following generators from the base
    mapping = {uf.find(base): BASE}
    queue = deque([uf.find(base)])
    while queue:
        u = queue.popleft()
        c = mapping[u]
        for g in range(t.alphabet.size):
            v = out_map.get((u, g))
            if v is None:
                return False  # coset graph is complete; folded graph is not
            expected = t.step(c, g, 1)
            if v in mapping:
                if mapping[v] != expected:
                    return False
            else:
                mapping[v] = expected
                queue.append(v)
    if len(mapping) != t.n or len(set(mapping.values())) != t.n:
        return False
    return True


# ---------------------------------------------------------------------------
# invariant checks and text formats
# ---------------------------------------------------------------------------


def check_transversal(tr: SchreierTransversal) -> list[str]:
    """Re-validate the transversal invariants; returns failure descriptions."""
    failures: list[str] = []
    t = tr.table
    if len(tr.reps) != t.n:
        return [f"expected {t.n} representatives, found {len(tr.reps)}"]
    if len(tr.reps[BASE]) != 0:
        failures.append("base representative is not the empty word")
    pool = set(tr.reps)
    for c, w in enumerate(tr.reps):
        if w.alphabet != t.alphabet:
            failures.append(f"representative {c} uses a different alphabet")
            continue
        if trace(t, BASE, w) != c:
            failures.append(f"representative {w} does not trace to coset {c}")
        if len(w) > 0 and FreeWord(w.alphabet, w.letters[:-1]) not in pool:
            failures.append(f"representative set is not prefix-closed at {w}")
    return failures


def check_basis(b: SubgroupBasis) -> list[str]:
    """Re-validate the basis invariants; returns failure descriptions."""
    failures: list[str] = []
    t = b.table
    n, m = t.n, t.alphabet.size
    expected = n * (m - 1) + 1
    if len(b.elements) != expected:
        failures.append(
            f"basis has {len(b.elements)} elements, index-rank formula needs {expected}"
        )
    if len(set(b.elements)) != len(b.elements):
        failures.append("basis elements are not pairwise distinct")
    for u in b.elements:
        if len(u) == 0:
            failures.append("basis contains the empty word")
        elif not contains(t, u):
            failures.append(f"basis element {u} is not in the subgroup")
    positions = sorted(b.edge_index.values())
    if positions != list(range(len(b.elements))):
        failures.append("edge index does not enumerate the element positions")
    return failures


def transversal_to_text(tr: SchreierTransversal) -> str:
    """One representative word per line, in coset order."""
    return "\n".join(str(w) for w in tr.reps) + "\n"


def basis_to_text(b: SubgroupBasis) -> str:
    """Header ``index=<n> rank=<n(m-1)+1>`` then one element per line in
    emission order."""
    n, m = b.table.n, b.table.alphabet.size
    lines = [f"index={n} rank={n * (m - 1) + 1}"]
    lines.extend(str(u) for u in b.elements)
    return "\n".join(lines) + "\n"
