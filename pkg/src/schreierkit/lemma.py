"""End-to-end pipeline: search for a finite quotient separating a relator's
initial segments, build the seeded transversal and the basis through the
relator, and package everything as a machine-checkable certificate.

The search enumerates homomorphisms into symmetric groups, degree
ascending, and within one degree backtracks over generator images in
lexicographic permutation order.  The first homomorphism that kills all
relators and separates the relator's initial segments wins, which makes
the whole pipeline deterministic: equal inputs give byte-identical
certificates, and raising the degree bound never changes a successful
result.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .cosets import (
    BASE,
    CosetTable,
    Presentation,
    contains,
    regular_table,
    separates_prefixes,
    trace,
)
from .errors import (
    AlphabetMismatch,
    BadBound,
    CertificateFormatError,
    EmptyWord,
    ImageTooLarge,
)
from .perms import FiniteQuotientHom, Perm, image_closure, kills_relators
from .transversal import (
    AlphabetOrientation,
    SchreierTransversal,
    SubgroupBasis,
    _through_details,
    check_basis,
    check_transversal,
    fold_verify,
    schreier_basis,
)
from .words import Alphabet, FreeWord, invert, parse_word, prefixes

DEFAULT_MAX_DEGREE = 6

CERTIFICATE_SCHEMA = "lemma-certificate/1"


@dataclass(frozen=True)
class LemmaCertificate:
    """Full witness bundle: the separating quotient, the regular coset
    table, the seeded transversal, and a basis containing the relator."""

    presentation: Presentation
    relator: FreeWord
    hom: FiniteQuotientHom
    image_order: int
    table: CosetTable
    transversal: SchreierTransversal
    basis: SubgroupBasis
    r_position: int
    matched_inverse: bool
    generator_bound: int


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of :func:`verify_certificate`: truthy iff every check passed."""

    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def _compose(acc: tuple[int, ...], step: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(step[i] for i in acc)


def _invert_tuple(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _separates_and_kills(
    r_letters: tuple, imgs: list[tuple[int, ...]], invs: list[tuple[int, ...]], degree: int
) -> bool:
    # images of the |r| initial segments must be pairwise distinct, and the
    # full word must die (automatic when r lies in the relators' normal
    # closure, but enforced so the subgroup always contains r)
    identity = tuple(range(degree))
    acc = identity
    seen = {acc}
    for g, s in r_letters[:-1]:
        acc = _compose(acc, imgs[g] if s > 0 else invs[g])
        if acc in seen:
            return False
        seen.add(acc)
    g, s = r_letters[-1]
    return _compose(acc, imgs[g] if s > 0 else invs[g]) == identity


def find_separating_quotient(
    p: Presentation, r: FreeWord, max_degree: int = DEFAULT_MAX_DEGREE
) -> FiniteQuotientHom | None:
    """First homomorphism, in deterministic search order, that kills every
    relator, kills ``r`` itself, and maps the initial segments of ``r`` to
    pairwise distinct permutations.  Returns ``None`` when the search space
    is exhausted.

    Degrees are tried ascending; within one degree, generator images run
    through all permutations in lexicographic order.  A relator is checked
    as soon as every generator it mentions has an image, which prunes
    without disturbing the lexicographic order of complete assignments.
    """
    if max_degree < 1:
        raise BadBound(f"max_degree must be at least 1, got {max_degree}")
    if len(r) == 0:
        raise EmptyWord("the relator must be nonempty")
    if r.alphabet != p.alphabet:
        raise AlphabetMismatch("relator alphabet differs from presentation alphabet")
    m = p.alphabet.size
    by_level: list[list[tuple]] = [[] for _ in range(m + 1)]
    for rel in p.relators:
        top = max(g for g, _ in rel.letters)
        by_level[top + 1].append(rel.letters)

    for degree in range(1, max_degree + 1):
        perms = list(itertools.permutations(range(degree)))
        inverses = [_invert_tuple(p_) for p_ in perms]
        identity = tuple(range(degree))
        imgs: list[tuple[int, ...]] = []
        invs: list[tuple[int, ...]] = []

        def assign(k: int) -> bool:
            if k == m:
                return _separates_and_kills(r.letters, imgs, invs, degree)
            for cand, cand_inv in zip(perms, inverses):
                imgs.append(cand)
                invs.append(cand_inv)
                ok = True
                for rel in by_level[k + 1]:
                    acc = identity
                    for g, s in rel:
                        acc = _compose(acc, imgs[g] if s > 0 else invs[g])
                    if acc != identity:
                        ok = False
                        break
                if ok and assign(k + 1):
                    return True
                imgs.pop()
                invs.pop()
            return False

        if assign(0):
            return FiniteQuotientHom(p.alphabet, tuple(Perm(t) for t in imgs))
    return None


def run_lemma(
    p: Presentation, r: FreeWord, max_degree: int = DEFAULT_MAX_DEGREE
) -> LemmaCertificate | None:
    """Search, build, and certify.  ``None`` means no separating quotient
    exists within the degree bound."""
    hom = find_separating_quotient(p, r, max_degree)
    if hom is None:
        return None
    table = regular_table(hom)
    basis, position, matched_inverse = _through_details(table, r)
    n, m = table.n, p.alphabet.size
    certificate = LemmaCertificate(
        presentation=p,
        relator=r,
        hom=hom,
        image_order=n,
        table=table,
        transversal=basis.transversal,
        basis=basis,
        r_position=position,
        matched_inverse=matched_inverse,
        generator_bound=(m - 1) * n,
    )
    result = verify_certificate(certificate)
    if not result:
        raise AssertionError(f"freshly built certificate failed checks: {result.failures}")
    return certificate


def verify_certificate(c: LemmaCertificate) -> VerificationResult:
    """Re-derive every certificate invariant from raw data, trusting nothing
    from the producer.  Collects all failures instead of stopping early so
    the result names each broken invariant."""
    failures: list[str] = []

    def fail(name: str) -> None:
        if name not in failures:
            failures.append(name)

    p, r = c.presentation, c.relator
    alphabets = (
        [p.alphabet, r.alphabet, c.hom.alphabet, c.table.alphabet]
        + [w.alphabet for w in c.transversal.reps]
        + [u.alphabet for u in c.basis.elements]
    )
    if any(a != p.alphabet for a in alphabets):
        return VerificationResult(("alphabets_consistent",))
    n, m = c.table.n, p.alphabet.size

    if not kills_relators(c.hom, p.relators):
        fail("hom_kills_relators")
    try:
        closure_size = len(image_closure(c.hom))
    except ImageTooLarge:
        closure_size = -1
    if closure_size != c.image_order or c.image_order != n:
        fail("image_order_matches")
    try:
        if c.table != regular_table(c.hom):
            fail("table_matches_regular")
    except ImageTooLarge:
        fail("table_matches_regular")
    if not all(contains(c.table, rel) for rel in p.relators):
        fail("relators_in_subgroup")
    if len(r) == 0 or not contains(c.table, r):
        fail("relator_in_subgroup")
    if len(r) == 0 or not separates_prefixes(c.table, r):
        fail("prefixes_separated")

    if c.transversal.table != c.table:
        fail("transversal_over_table")
    if check_transversal(c.transversal):
        fail("transversal_valid")
    elif len(r) > 0:
        for prefix in prefixes(r):
            if c.transversal.reps[trace(c.table, BASE, prefix)] != prefix:
                fail("transversal_seeded")
                break

    if check_basis(c.basis):
        fail("basis_invariants")
    if not 0 <= c.r_position < len(c.basis.elements):
        fail("r_position_valid")
    elif c.basis.elements[c.r_position] != r:
        fail("r_position_valid")

    if "transversal_valid" not in failures and "transversal_over_table" not in failures:
        recomputed = schreier_basis(c.transversal, c.basis.orientation)
        raw_elements = list(recomputed.elements)
        if 0 <= c.r_position < len(raw_elements):
            raw = raw_elements[c.r_position]
            expected_raw = invert(r) if c.matched_inverse else r
            if raw != expected_raw:
                fail("matched_inverse_consistent")
            raw_elements[c.r_position] = r
        if (
            tuple(raw_elements) != c.basis.elements
            or recomputed.edge_index != c.basis.edge_index
        ):
            fail("basis_matches_schreier_method")

    if c.generator_bound != (m - 1) * n or c.generator_bound != len(c.basis.elements) - 1:
        fail("generator_bound_matches")
    if not fold_verify(c.basis):
        fail("fold_verify_passes")

    return VerificationResult(tuple(failures))


# ---------------------------------------------------------------------------
# certificate serialization (single structured-text document, JSON tree)
# ---------------------------------------------------------------------------


def certificate_to_json(c: LemmaCertificate) -> str:
    doc = {
        "schema": CERTIFICATE_SCHEMA,
        "presentation": {
            "alphabet": "".join(c.presentation.alphabet.names),
            "relators": [str(rel) for rel in c.presentation.relators],
        },
        "relator": str(c.relator),
        "hom": {
            "degree": c.hom.degree,
            "gen_images": [list(p.images) for p in c.hom.gen_images],
        },
        "image_order": c.image_order,
        "table": {
            "n": c.table.n,
            "action": [list(p.images) for p in c.table.action],
        },
        "transversal": [str(w) for w in c.transversal.reps],
        "basis": {
            "flipped": sorted(c.basis.orientation.flipped),
            "elements": [str(u) for u in c.basis.elements],
            "edge_index": sorted(
                [coset, gen, position]
                for (coset, gen), position in c.basis.edge_index.items()
            ),
        },
        "r_position": c.r_position,
        "matched_inverse": c.matched_inverse,
        "generator_bound": c.generator_bound,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _require(doc: dict, key: str, kind: type):
    if key not in doc:
        raise CertificateFormatError(f"missing field {key!r}")
    value = doc[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise CertificateFormatError(f"field {key!r} must be {kind.__name__}")
    return value


def certificate_from_json(text: str) -> LemmaCertificate:
    """Parse a certificate document.  Structural problems (bad JSON, missing
    fields, malformed words or permutations) raise
    :class:`CertificateFormatError`; semantic tampering is representable and
    left for :func:`verify_certificate` to flag."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    if doc.get("schema") != CERTIFICATE_SCHEMA:
        raise CertificateFormatError(
            f"schema must be {CERTIFICATE_SCHEMA!r}, got {doc.get('schema')!r}"
        )
    try:
        pres_doc = _require(doc, "presentation", dict)
        alphabet = Alphabet.of(_require(pres_doc, "alphabet", str))
        relators = tuple(
            parse_word(w, alphabet) for w in _require(pres_doc, "relators", list)
        )
        presentation = Presentation(alphabet, relators)
        relator = parse_word(_require(doc, "relator", str), alphabet)
        hom_doc = _require(doc, "hom", dict)
        gen_images = tuple(
            Perm(tuple(images)) for images in _require(hom_doc, "gen_images", list)
        )
        hom = FiniteQuotientHom(alphabet, gen_images)
        if hom.degree != _require(hom_doc, "degree", int):
            raise CertificateFormatError("hom degree does not match its images")
        table_doc = _require(doc, "table", dict)
        action = tuple(
            Perm(tuple(images)) for images in _require(table_doc, "action", list)
        )
        table = CosetTable(alphabet, action)
        if table.n != _require(table_doc, "n", int):
            raise CertificateFormatError("table n does not match its action")
        reps = tuple(
            parse_word(w, alphabet) for w in _require(doc, "transversal", list)
        )
        transversal = SchreierTransversal(table, reps)
        basis_doc = _require(doc, "basis", dict)
        flipped = frozenset(_require(basis_doc, "flipped", list))
        if not all(isinstance(g, int) and 0 <= g < alphabet.size for g in flipped):
            raise CertificateFormatError("flipped must list generator indices")
        elements = tuple(
            parse_word(w, alphabet) for w in _require(basis_doc, "elements", list)
        )
        edge_index: dict[tuple[int, int], int] = {}
        for entry in _require(basis_doc, "edge_index", list):
            if not (isinstance(entry, list) and len(entry) == 3):
                raise CertificateFormatError("edge_index entries must be [coset, gen, pos]")
            coset, gen, position = entry
            edge_index[(coset, gen)] = position
        basis = SubgroupBasis(
            table,
            transversal,
            AlphabetOrientation(flipped),
            elements,
            edge_index,
        )
        return LemmaCertificate(
            presentation=presentation,
            relator=relator,
            hom=hom,
            image_order=_require(doc, "image_order", int),
            table=table,
            transversal=transversal,
            basis=basis,
            r_position=_require(doc, "r_position", int),
            matched_inverse=_require(doc, "matched_inverse", bool),
            generator_bound=_require(doc, "generator_bound", int),
        )
    except CertificateFormatError:
        raise
    except Exception as exc:  # malformed words, perms, tables, ...
        raise CertificateFormatError(f"malformed certificate: {exc}") from exc
