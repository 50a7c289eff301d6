"""Exact words in the free group on {a_1..a_n, b_1, c_1..c_m}.

Letters are (family, index, sign) triples so a word is meaningful in any
sufficiently large rank context.  Internally a letter is packed into a
single signed integer (sign * (4*index + family_code)) which makes free
reduction and inversion cheap; the public surface exposes the triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence


class Family(Enum):
    A = 0
    B = 1
    C = 2


_FAMILY_CHARS = {Family.A: "a", Family.B: "b", Family.C: "c"}
_CHAR_FAMILIES = {"a": Family.A, "b": Family.B, "c": Family.C}


class WordError(ValueError):
    """Malformed token, out-of-range index, or invalid construction."""


@dataclass(frozen=True)
class RankContext:
    """Ambient ranks: m letters c_1..c_m, n letters a_1..a_n, plus b_1."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise WordError(f"rank context needs m, n >= 1, got ({self.m}, {self.n})")

    @property
    def rank(self) -> int:
        return 1 + self.m + self.n

    def max_index(self, family: Family) -> int:
        if family is Family.A:
            return self.n
        if family is Family.B:
            return 1
        return self.m


def pack(family: Family, index: int, sign: int) -> int:
    """Encode a letter as a nonzero signed integer."""
    if index < 1:
        raise WordError(f"letter index must be >= 1, got {index}")
    if family is Family.B and index != 1:
        raise WordError(f"b-letters only exist with index 1, got b{index}")
    if sign not in (1, -1):
        raise WordError(f"letter sign must be +1 or -1, got {sign}")
    return sign * (4 * index + family.value)


def unpack(code: int) -> tuple[Family, int, int]:
    mag = abs(code)
    return Family(mag % 4), mag // 4, (1 if code > 0 else -1)


@dataclass(frozen=True)
class Letter:
    family: Family
    index: int
    sign: int

    @property
    def code(self) -> int:
        return pack(self.family, self.index, self.sign)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        fam, idx, sign = unpack(code)
        return cls(fam, idx, sign)

    def inverse(self) -> "Letter":
        return Letter(self.family, self.index, -self.sign)

    def __str__(self) -> str:
        head = "-" if self.sign < 0 else ""
        return f"{head}{_FAMILY_CHARS[self.family]}{self.index}"


def _reduce_codes(codes: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for c in codes:
        if stack and stack[-1] == -c:
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


class Word:
    """An immutable freely reduced word.  Construction reduces its input."""

    __slots__ = ("codes", "_hash")

    def __init__(self, codes: Iterable[int] = ()):
        object.__setattr__(self, "codes", _reduce_codes(codes))
        object.__setattr__(self, "_hash", hash(self.codes))

    def __setattr__(self, *a):  # immutability guard
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.codes)

    def __bool__(self) -> bool:
        return bool(self.codes)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.codes == other.codes

    def __hash__(self) -> int:
        return self._hash

    def __iter__(self) -> Iterator[Letter]:
        return (Letter.from_code(c) for c in self.codes)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.codes + other.codes)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.codes[i])
        return Letter.from_code(self.codes[i])

    def inverse(self) -> "Word":
        return Word(tuple(-c for c in reversed(self.codes)))

    def letters(self) -> list[Letter]:
        return [Letter.from_code(c) for c in self.codes]

    def is_cyclically_reduced(self) -> bool:
        return not self.codes or self.codes[0] != -self.codes[-1]

    def max_indices(self) -> dict[Family, int]:
        """Largest index used per family (0 when a family is absent)."""
        out = {Family.A: 0, Family.B: 0, Family.C: 0}
        for c in self.codes:
            fam, idx, _ = unpack(c)
            if idx > out[fam]:
                out[fam] = idx
        return out

    def fits(self, ctx: RankContext) -> bool:
        used = self.max_indices()
        return used[Family.A] <= ctx.n and used[Family.C] <= ctx.m

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)


EMPTY = Word()


def word_from_letters(letters: Sequence[Letter]) -> Word:
    return Word(l.code for l in letters)


def reduce_word(raw: Sequence[Letter] | Sequence[int] | Word) -> Word:
    """Free reduction; idempotent, and the identity on Word inputs."""
    if isinstance(raw, Word):
        return raw
    codes = [l.code if isinstance(l, Letter) else int(l) for l in raw]
    return Word(codes)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split w = conjugator * core * conjugator^-1 with core cyclically reduced.

    The conjugator is the maximal prefix that can be stripped, so the split
    is unique and reconstructs the input exactly.
    """
    codes = w.codes
    lo, hi = 0, len(codes)
    while hi - lo >= 2 and codes[lo] == -codes[hi - 1]:
        lo += 1
        hi -= 1
    return Word(codes[:lo]), Word(codes[lo:hi])


def rotate(w: Word, j: int) -> Word:
    """Rotation of a cyclically reduced word: letters j.. then ..j."""
    if not w.codes:
        return w
    j %= len(w.codes)
    return Word(w.codes[j:] + w.codes[:j])


class CyclicWord:
    """A conjugacy class representative: cyclically reduced, stored as the
    lexicographically least rotation of its letter codes."""

    __slots__ = ("core",)

    def __init__(self, w: Word):
        _, core = cyclic_reduce(w)
        codes = core.codes
        if codes:
            best = min(codes[j:] + codes[:j] for j in range(len(codes)))
        else:
            best = codes
        object.__setattr__(self, "core", Word(best))

    def __setattr__(self, *a):
        raise AttributeError("CyclicWord is immutable")

    def __len__(self) -> int:
        return len(self.core)

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicWord) and self.core == other.core

    def __hash__(self) -> int:
        return hash(("cyc", self.core.codes))

    def __repr__(self) -> str:
        return f"CyclicWord({format_word(self.core)!r})"

    def __str__(self) -> str:
        return format_word(self.core)


def abelianize(w: Word, ctx: RankContext) -> tuple[int, ...]:
    """Signed letter counts, coordinates ordered (a_1..a_n, b_1, c_1..c_m)."""
    out = [0] * ctx.rank
    for c in w.codes:
        fam, idx, sign = unpack(c)
        if idx > ctx.max_index(fam):
            raise WordError(f"letter {Letter.from_code(c)} outside context ({ctx.m}, {ctx.n})")
        if fam is Family.A:
            k = idx - 1
        elif fam is Family.B:
            k = ctx.n
        else:
            k = ctx.n + idx
        out[k] += sign
    return tuple(out)


def parse_letter(token: str, ctx: RankContext | None = None) -> Letter:
    t = token.strip()
    sign = 1
    if t.startswith("-"):
        sign = -1
        t = t[1:]
    if len(t) < 2 or t[0] not in _CHAR_FAMILIES or not t[1:].isdigit():
        raise WordError(f"malformed letter token {token!r}")
    fam = _CHAR_FAMILIES[t[0]]
    idx = int(t[1:])
    if idx < 1:
        raise WordError(f"letter index must be positive in {token!r}")
    if fam is Family.B and idx != 1:
        raise WordError(f"b-index must be 1 in {token!r}")
    if ctx is not None and idx > ctx.max_index(fam):
        raise WordError(f"letter {token!r} out of range for context ({ctx.m}, {ctx.n})")
    return Letter(fam, idx, sign)


def parse_word(text: str, ctx: RankContext | None = None) -> Word:
    """Parse whitespace-separated tokens like "a1 -a2 b1"; '#' starts a comment."""
    body = text.split("#", 1)[0]
    return word_from_letters([parse_letter(t, ctx) for t in body.split()])


def format_word(w: Word) -> str:
    return " ".join(str(l) for l in w)


def parse_words_file(text: str, ctx: RankContext | None = None) -> list[Word]:
    """One word per line; blank lines and '#' comments ignored."""
    out = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if body:
            out.append(parse_word(body, ctx))
    return out
