"""The seven families of induced free-group endomorphisms and their
fixed-cyclic-word machinery.

Conventions: a parameter pair (m, n) means m letters c_1..c_m, n letters
a_1..a_n and the single b_1.  Images are total on the generators of the
ambient rank context and extend homomorphically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .words import (
    EMPTY,
    CyclicWord,
    Family,
    RankContext,
    Word,
    WordError,
    cyclic_reduce,
    pack,
    parse_word,
    unpack,
)


class FamilyKind(Enum):
    F11N = "f11n"            # m = 1, n >= 8
    F12N = "f12n"            # m = 2, n >= 7
    F1N2 = "f1n2"            # n = 2, m >= 7
    F1NNP1 = "f1nnp1"        # n = m + 1, m >= 4
    F1NP1N = "f1np1n"        # m = n + 1, n >= 4
    GAP_UP = "fgapup"        # m >= 3, n >= m + 2
    GAP_DOWN = "fgapdown"    # n >= 3, m >= n + 2


class UnsupportedOrbitData(ValueError):
    """(m, n) outside every family's valid range."""


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of its node budget."""


def family_of(m: int, n: int) -> FamilyKind:
    """The unique family containing parameters (m, n)."""
    if m < 1 or n < 1:
        raise UnsupportedOrbitData(f"parameters must be positive, got ({m}, {n})")
    if m == n:
        raise UnsupportedOrbitData(f"equal parameters ({m}, {n}) carry no action")
    if m == 1:
        if n >= 8:
            return FamilyKind.F11N
        raise UnsupportedOrbitData(f"(1, 1, {n}) needs n >= 8")
    if m == 2:
        if n >= 7:
            return FamilyKind.F12N
        raise UnsupportedOrbitData(f"(1, 2, {n}) needs n >= 7")
    if n == 2:
        if m >= 7:
            return FamilyKind.F1N2
        raise UnsupportedOrbitData(f"(1, {m}, 2) needs m >= 7")
    if n == m + 1:
        if m >= 4:
            return FamilyKind.F1NNP1
        raise UnsupportedOrbitData(f"(1, {m}, {n}) adjacent pair needs m >= 4")
    if m == n + 1:
        if n >= 4:
            return FamilyKind.F1NP1N
        raise UnsupportedOrbitData(f"(1, {m}, {n}) adjacent pair needs n >= 4")
    if n >= m + 2:
        if m >= 3:
            return FamilyKind.GAP_UP
        raise UnsupportedOrbitData(f"(1, {m}, {n}) gap pair needs m >= 3")
    if m >= n + 2:
        if n >= 3:
            return FamilyKind.GAP_DOWN
        raise UnsupportedOrbitData(f"(1, {m}, {n}) gap pair needs n >= 3")
    raise UnsupportedOrbitData(f"({m}, {n}) matches no family")


def period_k(m: int, n: int) -> int:
    """Iteration exponent under which the catalogued semigroup is invariant."""
    kind = family_of(m, n)
    if kind is FamilyKind.F11N:
        return 6
    if kind in (FamilyKind.F12N, FamilyKind.F1N2):
        return 5
    if kind is FamilyKind.F1NNP1:
        return 6
    return 8


class Endomorphism:
    """A map from each generator of a rank context to a word, applied
    homomorphically with free reduction."""

    def __init__(self, ctx: RankContext, images: dict[int, Word]):
        self.ctx = ctx
        missing = [g for g in ctx_generator_codes(ctx) if g not in images]
        if missing:
            raise WordError(f"no image for generator code(s) {missing}")
        self.images = {g: images[g] for g in ctx_generator_codes(ctx)}
        # image tuples for letters and their inverses, keyed by code
        self._table: dict[int, tuple[int, ...]] = {}
        for g, w in self.images.items():
            self._table[g] = w.codes
            self._table[-g] = w.inverse().codes

    def image(self, code: int) -> tuple[int, ...]:
        return self._table[code]

    def apply_codes(self, codes) -> tuple[int, ...]:
        stack: list[int] = []
        table = self._table
        for c in codes:
            for x in table[c]:
                if stack and stack[-1] == -x:
                    stack.pop()
                else:
                    stack.append(x)
        return tuple(stack)

    def apply(self, w: Word) -> Word:
        if not w.fits(self.ctx):
            raise WordError(f"word {w} does not fit context ({self.ctx.m}, {self.ctx.n})")
        return Word(self.apply_codes(w.codes))

    def iterate(self, w: Word, k: int) -> Word:
        if k < 0:
            raise WordError("iteration count must be >= 0")
        out = self.apply(w) if k else w
        for _ in range(k - 1):
            out = Word(self.apply_codes(out.codes))
        return out

    def power(self, k: int) -> "Endomorphism":
        """The k-fold composition, with generator images precomputed."""
        images = {g: Word((g,)) for g in ctx_generator_codes(self.ctx)}
        for _ in range(k):
            images = {g: Word(self.apply_codes(w.codes)) for g, w in images.items()}
        return Endomorphism(self.ctx, images)

    def is_identity(self) -> bool:
        return all(w.codes == (g,) for g, w in self.images.items())


def ctx_generator_codes(ctx: RankContext) -> list[int]:
    codes = [pack(Family.A, i, 1) for i in range(1, ctx.n + 1)]
    codes.append(pack(Family.B, 1, 1))
    codes += [pack(Family.C, j, 1) for j in range(1, ctx.m + 1)]
    return codes


def identity_endomorphism(ctx: RankContext) -> Endomorphism:
    return Endomorphism(ctx, {g: Word((g,)) for g in ctx_generator_codes(ctx)})


def _img(ctx: RankContext, text: str) -> Word:
    return parse_word(text, ctx)


def build_action(m: int, n: int) -> Endomorphism:
    """The induced endomorphism for parameters (m, n)."""
    kind = family_of(m, n)
    ctx = RankContext(m=m, n=n)
    img: dict[int, Word] = {}

    def set_a(i, text):
        img[pack(Family.A, i, 1)] = _img(ctx, text)

    def set_b(text):
        img[pack(Family.B, 1, 1)] = _img(ctx, text)

    def set_c(j, text):
        img[pack(Family.C, j, 1)] = _img(ctx, text)

    if kind is FamilyKind.F11N:
        set_b("a1")
        set_c(1, "b1")
        set_a(1, "a1 -a2 b1 -c1")
        set_a(2, "a1 -b1 a3 -c1")
        set_a(3, "a1 c1 -a4 b1")
        set_a(4, "a1 a5 -c1 b1")
        for k in range(5, n):
            set_a(k, f"c1 -a{k + 1} -a1 b1")
        set_a(n, "c1")

    elif kind is FamilyKind.F12N:
        set_b("a1")
        set_c(1, "a1 c2 -c1 b1")
        set_c(2, "b1")
        set_a(1, "a1 -a2 b1 -c1")
        set_a(2, "a1 -b1 a3 -c1")
        set_a(3, "a1 c1 -a4 b1")
        for i in (4, 5):
            set_a(i, f"a1 a{i + 1} -c1 b1")
        for k in range(6, n):
            set_a(k, f"c1 -a{k + 1} -a1 b1")
        set_a(n, "c1")

    elif kind is FamilyKind.F1N2:
        set_b("a1")
        set_a(1, "c1 -a1 a2 -b1")
        set_a(2, "c1")
        for i in (1, 2):
            set_c(i, f"c1 -a1 c{i + 1} -b1")
        set_c(3, "c1 c4 -b1 a1")
        for k in range(4, m):
            set_c(k, f"b1 -c{k + 1} -c1 a1")
        set_c(m, "b1")

    elif kind is FamilyKind.F1NNP1:
        # n = m + 1
        set_b("a1")
        set_c(1, "a1 -c1 b1 -c2")
        for k in range(2, m):
            set_c(k, f"a1 c{k + 1} -b1 c1")
        set_c(m, "b1")
        set_a(1, "a1 -a2 c1 -b1")
        set_a(2, "a1 -c1 b1 -a3")
        for k in range(3, m + 1):
            set_a(k, f"a1 a{k + 1} -b1 c1")
        set_a(n, "c1")

    elif kind is FamilyKind.F1NP1N:
        # m = n + 1
        set_b("a1")
        set_c(1, "a1 -c1 b1 -c2")
        for k in range(2, n):
            set_c(k, f"a1 c{k + 1} -b1 c1")
        set_c(n, f"b1 -c{n + 1} -a1 c1")
        set_c(n + 1, "b1")
        set_a(1, "a1 -c1 a2 -b1")
        set_a(2, "a1 -c1 b1 -a3")
        for k in range(3, n):
            set_a(k, f"a1 a{k + 1} -b1 c1")
        set_a(n, "c1")

    elif kind is FamilyKind.GAP_UP:
        set_b("a1")
        for k in range(1, m):
            set_c(k, f"a1 c{k + 1} -c1 b1")
        set_c(m, "b1")
        set_a(1, "a1 -a2 b1 -c1")
        set_a(2, "a1 -b1 c1 -a3")
        # the two displayed a-ranges overlap at m+2; the c1-branch keeps it
        # (the other split breaks invariance for every n >= m+3)
        for i in range(3, min(m + 1, n - 1) + 1):
            set_a(i, f"a1 a{i + 1} -c1 b1")
        for k in range(m + 2, n):
            set_a(k, f"c1 -a{k + 1} -a1 b1")
        set_a(n, "c1")

    else:  # GAP_DOWN
        set_b("a1")
        set_c(1, "a1 -c1 b1 -c2")
        # the displayed c-ranges meet at n; the b1-branch owns c_n, matching
        # the adjacent family (the other split breaks invariance throughout)
        for i in range(2, n):
            set_c(i, f"a1 c{i + 1} -b1 c1")
        for k in range(n, m):
            set_c(k, f"b1 -c{k + 1} -a1 c1")
        set_c(m, "b1")
        set_a(1, "a1 -c1 a2 -b1")
        set_a(2, "a1 -c1 b1 -a3")
        for k in range(3, n):
            set_a(k, f"a1 a{k + 1} -b1 c1")
        set_a(n, "c1")

    return Endomorphism(ctx, img)


# ---------------------------------------------------------------------------
# Boundary word: the class of the invariant curve.
# ---------------------------------------------------------------------------

def _a(i):
    return pack(Family.A, i, 1)


def _b():
    return pack(Family.B, 1, 1)


def _c(j):
    return pack(Family.C, j, 1)


def boundary_base_sequence(m: int, n: int) -> list[int]:
    """Generators in the cyclic order the invariant curve crosses them."""
    kind = family_of(m, n)
    if kind is FamilyKind.F11N:
        seq = [_a(1), _a(2), _b(), _a(3), _a(4), _c(1)]
        seq += [_a(i) for i in range(5, n + 1)]
    elif kind is FamilyKind.F12N:
        seq = [_a(1), _a(2), _b(), _a(3), _a(4), _c(1), _a(5), _c(2)]
        seq += [_a(i) for i in range(6, n + 1)]
    elif kind is FamilyKind.F1N2:
        seq = [_c(1), _a(1), _c(2), _a(2), _c(3), _b()]
        seq += [_c(j) for j in range(4, m + 1)]
    elif kind is FamilyKind.F1NNP1:
        seq = [_a(1), _a(2), _c(1), _b()]
        for j in range(2, m + 1):
            seq += [_a(j + 1), _c(j)]
    elif kind in (FamilyKind.F1NP1N, FamilyKind.GAP_DOWN):
        seq = [_a(1), _c(1), _a(2), _b()]
        for j in range(2, n):
            seq += [_c(j), _a(j + 1)]
        seq += [_c(j) for j in range(n, m + 1)]
    else:  # GAP_UP
        seq = [_a(1), _a(2), _b()]
        for j in range(1, m + 1):
            seq += [_c(j), _a(j + 2)]
        seq += [_a(i) for i in range(m + 3, n + 1)]
    assert len(seq) == 1 + m + n
    return seq


def boundary_word(m: int, n: int) -> Word:
    """Alternating-sign product over the base-point cyclic order.

    When 1+m+n is even the action fixes this as a cyclic word; when odd it
    fixes w * inverted(w) instead (letterwise inversion, not reversal).
    """
    seq = boundary_base_sequence(m, n)
    return Word(c if i % 2 == 0 else -c for i, c in enumerate(seq))


def letterwise_invert(w: Word) -> Word:
    """Invert each letter in place (no reversal)."""
    return Word(tuple(-c for c in w.codes))


def fixed_boundary_class(m: int, n: int) -> Word:
    """The word the action fixes: the boundary word itself for 1+m+n even,
    its product with the letterwise inversion for 1+m+n odd."""
    w = boundary_word(m, n)
    if (1 + m + n) % 2 == 0:
        return w
    return Word(w.codes + letterwise_invert(w).codes)


def is_cyclically_fixed(e: Endomorphism, w: Word) -> bool:
    return CyclicWord(e.apply(w)) == CyclicWord(w)


# ---------------------------------------------------------------------------
# Fixed cyclic words by search.
# ---------------------------------------------------------------------------

def _alphabet(ctx: RankContext) -> list[int]:
    pos = ctx_generator_codes(ctx)
    return pos + [-c for c in pos]


def find_fixed_cyclic_words(
    e: Endomorphism, max_len: int, node_budget: int = 10**6
) -> list[CyclicWord]:
    """All cyclic words of core length <= max_len fixed by e, by exhaustive
    enumeration of canonical rotation representatives.

    Deterministic output order (by length, then letter codes).  Raises
    BudgetExceeded when more than node_budget candidate words are visited.
    """
    if max_len < 1:
        raise WordError("max_len must be >= 1")
    letters = sorted(_alphabet(e.ctx))
    found: list[CyclicWord] = []
    visited = 0

    def extend(prefix: list[int], remaining: int):
        nonlocal visited
        if prefix:
            visited += 1
            if visited > node_budget:
                raise BudgetExceeded(f"fixed-word enumeration exceeded {node_budget} nodes")
            if prefix[0] != -prefix[-1]:
                codes = tuple(prefix)
                if codes == min(codes[j:] + codes[:j] for j in range(len(codes))):
                    w = Word(codes)
                    if is_cyclically_fixed(e, w):
                        found.append(CyclicWord(w))
        if remaining == 0:
            return
        for x in letters:
            if prefix and x == -prefix[-1]:
                continue
            prefix.append(x)
            extend(prefix, remaining - 1)
            prefix.pop()

    extend([], max_len)
    found.sort(key=lambda cw: (len(cw), cw.core.codes))
    return found


def _junction_eat_bound(e: Endomorphism) -> int:
    """Upper bound on how many letters can be cancelled off the end of an
    image stream at a junction, cascades included."""

    @lru_cache(maxsize=None)
    def eaten_into(code: int) -> int:
        # max suffix of image(code) cancelled by images of following letters
        img = e.image(code)
        best = 0
        for y in _alphabet(e.ctx):
            if y == -code:
                continue
            other = e.image(y)
            k = 0
            while k < len(img) and k < len(other) and img[-1 - k] == -other[k]:
                k += 1
            if k == len(other) and k < len(img):
                # the whole next image cancelled; the one after can keep eating
                k = min(len(img), k + eaten_into_shallow(code, k))
            best = max(best, k)
        return best

    def eaten_into_shallow(code: int, already: int) -> int:
        # conservative continuation: at most the global per-pair maximum again
        return per_pair_max

    per_pair_max = 0
    for x in _alphabet(e.ctx):
        ix = e.image(x)
        for y in _alphabet(e.ctx):
            if y == -x:
                continue
            iy = e.image(y)
            k = 0
            while k < len(ix) and k < len(iy) and ix[-1 - k] == -iy[k]:
                k += 1
            per_pair_max = max(per_pair_max, k)
    cascade = max((eaten_into(x) for x in _alphabet(e.ctx)), default=0)
    return max(per_pair_max, cascade) + 1


def search_exactly_fixed_words(
    e: Endomorphism, max_len: int, node_budget: int = 10**6, stop_after: int = 1
) -> list[Word]:
    """Depth-first search for nonempty reduced words w with e(w) == w.

    Prunes on prefix consistency: the image of a prefix, minus a bounded
    junction-cancellation margin, must itself prefix the candidate.  Returns
    up to stop_after words (shortest-first exploration per start letter).
    """
    margin = _junction_eat_bound(e)
    letters = sorted(_alphabet(e.ctx))
    table = {c: e.image(c) for c in letters}
    found: list[Word] = []
    nodes = 0

    def step(prefix: list[int], image: list[int]):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"fixed-word search exceeded {node_budget} nodes")
        if prefix and image == prefix:
            found.append(Word(tuple(prefix)))
            if len(found) >= stop_after:
                return True
        if len(prefix) >= max_len:
            return False
        stable = len(image) - margin
        if stable > len(prefix):
            choices = [image[len(prefix)]]
        else:
            choices = letters
        for x in choices:
            if prefix and x == -prefix[-1]:
                continue
            # extend the image incrementally
            img2 = list(image)
            for y in table[x]:
                if img2 and img2[-1] == -y:
                    img2.pop()
                else:
                    img2.append(y)
            # consistency of the known-stable part of the image
            keep = min(len(img2) - margin, len(prefix) + 1)
            ok = True
            for t in range(keep):
                ref = prefix[t] if t < len(prefix) else x
                if img2[t] != ref:
                    ok = False
                    break
            if not ok:
                continue
            prefix.append(x)
            if step(prefix, img2):
                return True
            prefix.pop()
        return False

    step([], [])
    return found
