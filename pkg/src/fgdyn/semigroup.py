"""Invariant semigroups: construction from catalogs, invariance and
positivity verification, and independent re-discovery by iteration.

Every catalogued generator is cyclically reduced and carries the family's
anchor letter (first letter a_1, or last letter c_1) exactly once.  That
makes positive factorizations unique: a product of generators splits at
the anchor occurrences and nowhere else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .actions import Endomorphism, FamilyKind, build_action, family_of, period_k
from .catalog import GeneratorCatalog, catalog_for, UncoveredParameters
from .words import Family, RankContext, Word, cyclic_reduce, pack, rotate


class SemigroupError(ValueError):
    pass


class NoFactorization(SemigroupError):
    """The word is not a positive product of generators."""


class AmbiguousSegmentation(SemigroupError):
    """More than one positive factorization exists (anchor invariant broken)."""


class ConjugatorMismatch(SemigroupError):
    """No single conjugator strips every generator image to a positive word."""


class NonClosure(SemigroupError):
    """Discovery failed to close within its budget."""


ANCHOR_START = "start-a1"
ANCHOR_END = "end-c1"


def anchor_of(kind: FamilyKind) -> str:
    if kind in (FamilyKind.F1NP1N, FamilyKind.GAP_DOWN):
        return ANCHOR_END
    return ANCHOR_START


def _anchor_code(anchor: str) -> int:
    return pack(Family.C, 1, 1) if anchor == ANCHOR_END else pack(Family.A, 1, 1)


@dataclass
class Semigroup:
    ctx: RankContext
    anchor: str
    generators: list[tuple[str, Word]]

    def __post_init__(self):
        code = _anchor_code(self.anchor)
        self._index: dict[tuple, int] = {}
        for i, (name, w) in enumerate(self.generators):
            if not w or not w.is_cyclically_reduced():
                raise SemigroupError(f"generator {name} is not cyclically reduced")
            pos = 0 if self.anchor == ANCHOR_START else len(w) - 1
            if w.codes[pos] != code:
                raise SemigroupError(f"generator {name} is not anchored ({self.anchor})")
            if w.codes in self._index:
                raise SemigroupError(f"duplicate generator word for {name}")
            self._index[w.codes] = i
        # concatenation compatibility across every ordered pair reduces to a
        # single check on junction letters given the shared anchor
        ends = {w.codes[-1] for _, w in self.generators}
        starts = {w.codes[0] for _, w in self.generators}
        if any(-e in starts for e in ends):
            raise SemigroupError("generator junction can cancel; concatenation-compatibility fails")

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> list[str]:
        return [nm for nm, _ in self.generators]

    @property
    def words(self) -> list[Word]:
        return [w for _, w in self.generators]

    def index_of_word(self, w: Word) -> int | None:
        return self._index.get(w.codes)


def build_semigroup(m: int, n: int, directory: str | None = None) -> Semigroup:
    """Instantiate the catalogued generator list for (m, n), in catalog order."""
    cat = catalog_for(m, n, directory)
    gens = cat.generators(m, n)
    ctx = RankContext(m=m, n=n)
    for name, w in gens:
        if not w.fits(ctx):
            raise SemigroupError(f"generator {name} does not fit context ({m}, {n})")
    return Semigroup(ctx=ctx, anchor=cat.anchor, generators=gens)


def _split_at_anchor(w: Word, anchor: str) -> list[tuple]:
    """Split a positive product into blocks at every anchor occurrence."""
    code = _anchor_code(anchor)
    hits = [j for j, c in enumerate(w.codes) if c == code]
    if not hits:
        raise NoFactorization("word contains no anchor letter")
    if anchor == ANCHOR_START:
        if hits[0] != 0:
            raise NoFactorization("word does not start at an anchor")
        bounds = hits + [len(w.codes)]
    else:
        if hits[-1] != len(w.codes) - 1:
            raise NoFactorization("word does not end at an anchor")
        bounds = [0] + [h + 1 for h in hits]
    return [w.codes[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1)]


def factor_positive(w: Word, sem: Semigroup) -> list[int]:
    """The unique factorization of w as a concatenation of generator words.

    Longest-match parsing with full backtracking via dynamic programming;
    a second distinct parse raises AmbiguousSegmentation.
    """
    if not w.is_cyclically_reduced():
        raise NoFactorization("input is not cyclically reduced")
    codes = w.codes
    L = len(codes)
    by_first: dict[int, list[tuple[tuple, int]]] = {}
    for word_codes, idx in sem._index.items():
        by_first.setdefault(word_codes[0], []).append((word_codes, idx))
    for lst in by_first.values():
        lst.sort(key=lambda t: -len(t[0]))
    # ways[i] = number of parses of codes[i:], capped at 2; nxt[i] = forced step
    ways = [0] * (L + 1)
    ways[L] = 1
    step: list[tuple[int, int] | None] = [None] * (L + 1)
    for i in range(L - 1, -1, -1):
        total = 0
        for word_codes, idx in by_first.get(codes[i], ()):  # longest first
            j = i + len(word_codes)
            if j <= L and codes[i:j] == word_codes and ways[j]:
                if step[i] is None:
                    step[i] = (idx, j)
                total += ways[j]
                if total >= 2:
                    break
        ways[i] = min(total, 2)
    if ways[0] == 0:
        raise NoFactorization(f"no positive factorization of {w}")
    if ways[0] >= 2:
        raise AmbiguousSegmentation(f"multiple positive factorizations of {w}")
    out = []
    i = 0
    while i < L:
        idx, j = step[i]
        out.append(idx)
        i = j
    return out


def _conjugator_candidates(img: Word, anchor: str) -> list[Word]:
    """Conjugators delta with img = delta * (anchored rotation) * delta^-1."""
    gamma, core = cyclic_reduce(img)
    code = _anchor_code(anchor)
    cands: list[Word] = []
    L = len(core.codes)
    for j in range(L):
        if anchor == ANCHOR_START:
            aligned = core.codes[j] == code
        else:
            aligned = core.codes[j - 1] == code if j > 0 else core.codes[-1] == code
        if not aligned:
            continue
        head = Word(gamma.codes + core.codes[:j])
        tail = Word(gamma.codes) * Word(core.codes[j:]).inverse()
        for cand in (head, tail):
            if cand not in cands:
                cands.append(cand)
    cands.sort(key=lambda w: (len(w), w.codes))
    return cands


def _strip(delta: Word, img: Word) -> Word:
    return delta.inverse() * img * delta


def _anchored(w: Word, anchor: str) -> bool:
    code = _anchor_code(anchor)
    if not w or not w.is_cyclically_reduced():
        return False
    return w.codes[0] == code if anchor == ANCHOR_START else w.codes[-1] == code


def extract_conjugator(
    e: Endomorphism, k: int, sem: Semigroup, hint: Word | None = None
) -> Word:
    """The common conjugator delta with e^k(g) = delta * positive * delta^-1
    for every generator g."""
    if not sem.generators:
        raise SemigroupError("empty generator list")
    fk = e.power(k)
    imgs = [fk.apply(w) for w in sem.words]
    cands = _conjugator_candidates(imgs[0], sem.anchor)
    if hint is not None:
        cands = [hint] + [c for c in cands if c != hint]
    for cand in cands:
        if all(_anchored(_strip(cand, img), sem.anchor) for img in imgs):
            return cand
    bad = _conjugator_candidates(imgs[0], sem.anchor)[:1]
    raise ConjugatorMismatch(
        f"no common conjugator; first-generator candidates start {bad}"
    )


class Status(Enum):
    VERIFIED = "verified"
    FAILED = "failed"


@dataclass
class VerificationReport:
    m: int
    n: int
    k: int
    family: FamilyKind
    semigroup: Semigroup
    conjugator: Word | None
    factorizations: list[list[int]]
    status: Status
    detail: str = ""

    @property
    def verified(self) -> bool:
        return self.status is Status.VERIFIED

    def factor_names(self, i: int) -> list[str]:
        return [self.semigroup.names[j] for j in self.factorizations[i]]

    def as_name_map(self) -> dict[str, list[str]]:
        return {self.semigroup.names[i]: self.factor_names(i) for i in range(len(self.factorizations))}


def verify_invariance(
    m: int,
    n: int,
    k_override: int | None = None,
    directory: str | None = None,
) -> VerificationReport:
    """Check that the catalogued semigroup is invariant and positively acted
    on by the k-th iterate; record every factorization."""
    kind = family_of(m, n)
    k = k_override if k_override is not None else period_k(m, n)
    e = build_action(m, n)
    sem = build_semigroup(m, n, directory)
    cat = catalog_for(m, n, directory)
    hint = cat.conjugator(m, n)
    try:
        delta = extract_conjugator(e, k, sem, hint=hint)
    except SemigroupError as exc:
        return VerificationReport(m, n, k, kind, sem, None, [], Status.FAILED, f"conjugator: {exc}")
    fk = e.power(k)
    factorizations: list[list[int]] = []
    for name, w in sem.generators:
        img = fk.apply(w)
        stripped = _strip(delta, img)
        try:
            factors = factor_positive(stripped, sem)
        except SemigroupError as exc:
            return VerificationReport(
                m, n, k, kind, sem, delta, factorizations, Status.FAILED,
                f"generator {name}: {exc}",
            )
        factorizations.append(factors)
    return VerificationReport(m, n, k, kind, sem, delta, factorizations, Status.VERIFIED)


class _SplitBlame(Exception):
    """Internal: a segmentation boundary is suspected wrong."""

    def __init__(self, pair):
        self.pair = pair


def _merged_blocks(blocks: list[tuple], forbidden: set) -> list[tuple]:
    out: list[tuple] = []
    for b in blocks:
        out.append(b)
        while len(out) >= 2 and (out[-2], out[-1]) in forbidden:
            tail = out.pop()
            out[-1] = out[-1] + tail
    # forward pass may enable earlier merges; run to fixpoint
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if (out[i], out[i + 1]) in forbidden:
                out[i] = out[i] + out[i + 1]
                del out[i + 1]
                changed = True
                break
    return out


def _closure_once(fk, anchor, seed, forbidden, max_generators, max_image_len):
    words: list[Word] = [seed]
    seen = {seed.codes: 0}
    # creation[i] = (previous block codes, next block codes) at first appearance
    creation: dict[int, tuple[tuple | None, tuple | None]] = {}
    delta: Word | None = None
    images: list[Word] = []
    cursor = 0
    while cursor < len(words):
        w = words[cursor]
        img = fk.apply(w)
        images.append(img)
        if len(img) > max_image_len:
            raise NonClosure(f"image of generator {cursor} exceeds {max_image_len} letters")
        if delta is None or not _anchored(_strip(delta, img), anchor):
            cands = _conjugator_candidates(img, anchor)
            usable = [c for c in cands if all(
                _anchored(_strip(c, prior), anchor) for prior in images
            )]
            if not usable:
                prev, nxt = creation.get(cursor, (None, None))
                if nxt is not None:
                    raise _SplitBlame((words[cursor].codes, nxt))
                if prev is not None:
                    raise _SplitBlame((prev, words[cursor].codes))
                raise ConjugatorMismatch(f"no conjugator aligns generators 0..{cursor}")
            delta = usable[0]
        stripped = _strip(delta, img)
        blocks = _merged_blocks(_split_at_anchor(stripped, anchor), forbidden)
        for pos, block in enumerate(blocks):
            if block not in seen:
                seen[block] = len(words)
                words.append(Word(block))
                creation[len(words) - 1] = (
                    blocks[pos - 1] if pos > 0 else None,
                    blocks[pos + 1] if pos + 1 < len(blocks) else None,
                )
                if len(words) > max_generators:
                    raise NonClosure(f"more than {max_generators} generators; not closing")
        cursor += 1
    return words


def discover_generators(
    m: int,
    n: int,
    seed: Word | None = None,
    k: int | None = None,
    directory: str | None = None,
    max_generators: int | None = None,
    max_image_len: int = 10**7,
    max_restarts: int = 200,
) -> Semigroup:
    """Fixed-point closure: iterate the action on a seed, strip the common
    conjugator, and split the image at anchor letters; unmatched blocks become
    new generators.  A block boundary that later breaks the closure is merged
    and the closure restarted (generators may contain interior anchors)."""
    kind = family_of(m, n)
    anchor = anchor_of(kind)
    k = k if k is not None else period_k(m, n)
    if seed is None:
        cat = catalog_for(m, n, directory)
        seed = cat.seed(m, n)
        if seed is None:
            raise SemigroupError(f"no seed for ({m}, {n})")
    ctx = RankContext(m=m, n=n)
    if max_generators is None:
        max_generators = 8 * (1 + m + n)
    if not _anchored(seed, anchor):
        raise SemigroupError("seed must be cyclically reduced and anchored")

    e = build_action(m, n)
    fk = e.power(k)
    forbidden: set[tuple[tuple, tuple]] = set()
    for _ in range(max_restarts):
        try:
            words = _closure_once(fk, anchor, seed, forbidden, max_generators, max_image_len)
            gens = [(f"g{i + 1}", w) for i, w in enumerate(words)]
            return Semigroup(ctx=ctx, anchor=anchor, generators=gens)
        except _SplitBlame as blame:
            if blame.pair in forbidden:
                raise NonClosure("segmentation backtracking loops; not closing")
            forbidden.add(blame.pair)
    raise NonClosure(f"no closure within {max_restarts} segmentation retries")
