"""Free products of fusion rings: reduced words, triangle dimensions, word fusion.

A word is an alternating sequence of non-unit letters, each letter living in
one factor ring. Fusion is free except at the junction of two words, where the
last letter of the left word meets the first letter of the right word.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .fusion import FusionRing, LabelError

__all__ = [
    "Letter",
    "Word",
    "WordError",
    "FormalSum",
    "Concat",
    "FormulaProfile",
    "FreeProductRing",
]


class WordError(ValueError):
    """A letter sequence is not a reduced word, or a word string cannot be parsed."""


class Letter(NamedTuple):
    factor: int  # 1-based index of the factor ring
    label: Hashable

    def __str__(self) -> str:
        return f"f{self.factor}:{_format_label(self.label)}"


def _format_label(label: Hashable) -> str:
    return f"s{label}" if isinstance(label, int) else str(label)


def _letter_key(letter: Letter) -> tuple:
    lab = letter.label
    return (letter.factor, 0, lab, "") if isinstance(lab, int) else (letter.factor, 1, 0, str(lab))


class Word:
    """An alternating letter sequence; the empty word is the unit 1.

    Alternation is checked here. Label membership (and non-unitness) needs the
    ring, so build words through :meth:`FreeProductRing.word`.
    """

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter | tuple] = ()):
        lets = tuple(Letter(*l) for l in letters)
        for a, b in zip(lets, lets[1:]):
            if a.factor == b.factor:
                raise WordError(f"adjacent letters {a} and {b} share factor {a.factor}")
        self.letters: tuple[Letter, ...] = lets
        self._hash = hash(lets)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Word(self.letters[idx])
        return self.letters[idx]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return ".".join(map(str, self.letters)) if self.letters else "1"

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    @property
    def is_unit(self) -> bool:
        return not self.letters

    def sort_key(self) -> tuple:
        return (len(self.letters), tuple(_letter_key(l) for l in self.letters))

    def free_concat(self, other: Word) -> Word:
        """xy for x || y; raises WordError when the junction interacts."""
        return Word(self.letters + other.letters)


UNIT = Word()


class FormalSum:
    """Element of Z[S1*...*Sm] with non-negative coefficients: word -> multiplicity.

    Also serves as the multiplicity function of an object. Zero entries are
    dropped and terms are kept in a canonical order (by length, then letters).
    """

    __slots__ = ("_items", "_index")

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()):
        acc: dict[Word, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            if c < 0:
                raise ValueError(f"negative multiplicity for {w}")
            if c:
                acc[w] = acc.get(w, 0) + c
        self._items = tuple(sorted(acc.items(), key=lambda kv: kv[0].sort_key()))
        self._index = dict(self._items)

    @classmethod
    def delta(cls, w: Word) -> FormalSum:
        return cls({w: 1})

    def items(self) -> tuple[tuple[Word, int], ...]:
        return self._items

    def support(self) -> list[Word]:
        return [w for w, _ in self._items]

    def __getitem__(self, w: Word) -> int:
        return self._index.get(w, 0)

    def __iter__(self) -> Iterator[Word]:
        return iter(self._index)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __add__(self, other: FormalSum) -> FormalSum:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return FormalSum(self._items + other._items)

    def scale(self, k: int) -> FormalSum:
        return FormalSum((w, c * k) for w, c in self._items)

    def total(self) -> int:
        return sum(c for _, c in self._items)

    def sum_of_squares(self) -> int:
        return sum(c * c for _, c in self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __str__(self) -> str:
        if not self._items:
            return "0"
        return " + ".join(str(w) if c == 1 else f"{c}*{w}" for w, c in self._items)

    def __repr__(self) -> str:
        return f"FormalSum({str(self)!r})"

    def to_dict(self) -> dict[str, int]:
        return {str(w): c for w, c in self._items}


class Concat(str, Enum):
    FREE = "Free"
    INTERACTING = "Interacting"


@dataclass(frozen=True)
class FormulaProfile:
    """Summands of the expanded square Hom(x (x) y (x) z, w) for x || y.

    ``junction_terms[i]`` is the contribution where the first i pairs at the
    y|z junction contract to the unit and pair i+1 fuses to a non-unit letter.
    The final summand is ``overlap * tail``: every junction pair contracted,
    followed by the triangle of x against what is left over.
    """

    junction_terms: tuple[int, ...]
    overlap: int
    tail: int
    leftover: Word

    @property
    def total(self) -> int:
        return sum(self.junction_terms) + self.overlap * self.tail

    def to_dict(self) -> dict:
        return {
            "junction_terms": list(self.junction_terms),
            "overlap": self.overlap,
            "tail": self.tail,
            "leftover": str(self.leftover),
            "total": self.total,
        }


class FreeProductRing:
    """The free product S_1 * ... * S_m of a list of fusion rings.

    Factor j (1-based) is ``factors[j-1]``. Triangle dimensions and word
    products are memoized per instance; the caches only ever grow and are
    guarded by a lock, so concurrent callers see identical values.
    """

    def __init__(self, factors: Sequence[FusionRing]):
        if not factors:
            raise ValueError("a free product needs at least one factor")
        self.factors: tuple[FusionRing, ...] = tuple(factors)
        self._tri_cache: dict[tuple[Word, Word, Word], int] = {}
        self._fuse_cache: dict[tuple[Word, Word], FormalSum] = {}
        self._lock = threading.Lock()

    @property
    def m(self) -> int:
        return len(self.factors)

    def ring(self, factor: int) -> FusionRing:
        if not 1 <= factor <= len(self.factors):
            raise WordError(f"factor index {factor} out of range 1..{len(self.factors)}")
        return self.factors[factor - 1]

    # -- construction and text form -----------------------------------------

    def letter(self, factor: int, label: Hashable) -> Letter:
        ring = self.ring(factor)
        if label not in ring:
            raise WordError(f"label {label!r} is not in factor {factor}")
        if label == ring.unit:
            raise WordError(f"the unit of factor {factor} is not a letter")
        return Letter(factor, label)

    def word(self, letters: Iterable[Letter | tuple] = ()) -> Word:
        lets = [self.letter(*l) for l in letters]
        return Word(lets)

    def parse_word(self, text: str) -> Word:
        """Read ``f<j>:<label>`` letters joined by ``.``; ``1`` is the unit."""
        text = text.strip()
        if text == "1":
            return UNIT
        if not text:
            raise WordError("empty word string (the unit is written '1')")
        letters = []
        for chunk in text.split("."):
            head, sep, lab = chunk.partition(":")
            if not sep or not head.startswith("f") or not head[1:].isdigit() or not lab:
                raise WordError(f"malformed letter {chunk!r}; expected f<j>:<label>")
            factor = int(head[1:])
            try:
                label = self.ring(factor).parse_label(lab)
            except LabelError as exc:
                raise WordError(str(exc)) from None
            letters.append((factor, label))
        return self.word(letters)

    def format_word(self, w: Word) -> str:
        if w.is_unit:
            return "1"
        return ".".join(f"f{l.factor}:{self.ring(l.factor).format_label(l.label)}" for l in w)

    def _check(self, w: Word) -> Word:
        for l in w:
            self.letter(l.factor, l.label)
        return w

    # -- elementary predicates ------------------------------------------------

    @staticmethod
    def concat_status(x: Word, y: Word) -> Concat:
        if not x.letters or not y.letters or x.letters[-1].factor != y.letters[0].factor:
            return Concat.FREE
        return Concat.INTERACTING

    def _junction(self, a: Letter, b: Letter) -> Iterator[tuple[Word, int]]:
        """Fusion of two letters of one factor, as (word, multiplicity) with unit -> 1."""
        ring = self.ring(a.factor)
        for c, n in ring.fuse(a.label, b.label).items():
            yield (UNIT if c == ring.unit else Word((Letter(a.factor, c),))), n

    def _letter_coefficient(self, a: Letter, b: Letter, c: Word) -> int:
        """dim [a b; c] for single letters a, b."""
        if a.factor != b.factor:
            return 1 if c == Word((a, b)) else 0
        ring = self.ring(a.factor)
        if c.is_unit:
            return ring.fuse(a.label, b.label)[ring.unit]
        if len(c) != 1 or c.letters[0].factor != a.factor:
            return 0
        return ring.fuse(a.label, b.label)[c.letters[0].label]

    # -- squeeze shapes -----------------------------------------------------

    def contraction(self, x: Word, y: Word) -> Word | None:
        """x (-) y: cancel junction pairs while each pair's fusion contains the unit.

        Stops at the first free junction (or an exhausted word) and returns the
        free concatenation of what remains; None if some same-factor pair on the
        way has no unit in its fusion.
        """
        i = 0
        while i < len(x) and i < len(y):
            a, b = x.letters[len(x) - 1 - i], y.letters[i]
            if a.factor != b.factor:
                break
            ring = self.ring(a.factor)
            if not ring.fuse(a.label, b.label)[ring.unit]:
                return None
            i += 1
        return Word(x.letters[: len(x) - i] + y.letters[i:])

    def squeeze_candidates(self, x: Word, y: Word) -> frozenset[Word]:
        """Every z that can carry a nonzero [x y; z].

        Depth-j candidates replace the j innermost letters of each side by one
        letter from the fusion of the j-th junction pair; earlier pairs are not
        required to contain the unit. The contraction x (-) y is added when defined.
        """
        if self.concat_status(x, y) is Concat.FREE:
            return frozenset({x.free_concat(y)})
        out: set[Word] = set()
        for j in range(min(len(x), len(y))):
            a, b = x.letters[len(x) - 1 - j], y.letters[j]
            if a.factor != b.factor:
                break
            head, tail = x.letters[: len(x) - 1 - j], y.letters[j + 1 :]
            for c, _ in self._junction(a, b):
                if not c.is_unit:
                    out.add(Word(head + c.letters + tail))
        rest = self.contraction(x, y)
        if rest is not None:
            out.add(rest)
        return frozenset(out)

    # -- triangular spaces -----------------------------------------------------

    def triangle_dim(self, x: Word, y: Word, z: Word) -> int:
        """dim [x y; z], by induction on |x| + |y| contracting at the junction."""
        key = (x, y, z)
        hit = self._tri_cache.get(key)
        if hit is not None:
            return hit
        val = self._triangle(x, y, z)
        with self._lock:
            self._tri_cache[key] = val
        return val

    def _triangle(self, x: Word, y: Word, z: Word) -> int:
        if self.concat_status(x, y) is Concat.FREE:
            return 1 if z == x.free_concat(y) else 0
        a, b = x.letters[-1], y.letters[0]
        if len(x) == 1 and len(y) == 1:
            return self._letter_coefficient(a, b, z)
        xs, ys = x.letters[:-1], y.letters[1:]
        n_x = len(xs)
        if (
            len(z) == n_x + 1 + len(ys)
            and z.letters[:n_x] == xs
            and z.letters[n_x + 1 :] == ys
        ):
            return self._letter_coefficient(a, b, Word((z.letters[n_x],)))
        unit_part = self._letter_coefficient(a, b, UNIT)
        if not unit_part:
            return 0
        return unit_part * self.triangle_dim(Word(xs), Word(ys), z)

    # -- the fusion algebra ------------------------------------------------------

    def fuse_words(self, x: Word, y: Word) -> FormalSum:
        """The product x*y in Z[S1*...*Sm], contracting at the junction."""
        key = (x, y)
        hit = self._fuse_cache.get(key)
        if hit is not None:
            return hit
        val = self._fuse(x, y)
        with self._lock:
            self._fuse_cache[key] = val
        return val

    def _fuse(self, x: Word, y: Word) -> FormalSum:
        if self.concat_status(x, y) is Concat.FREE:
            return FormalSum.delta(x.free_concat(y))
        a, b = x.letters[-1], y.letters[0]
        xs, ys = x.letters[:-1], y.letters[1:]
        terms: list[tuple[Word, int]] = []
        unit_mult = 0
        for c, n in self._junction(a, b):
            if c.is_unit:
                unit_mult = n
            else:
                terms.append((Word(xs + c.letters + ys), n))
        out = FormalSum(terms)
        if unit_mult:
            out = out + self.fuse_words(Word(xs), Word(ys)).scale(unit_mult)
        return out

    def tensor_object(self, X: FormalSum, Y: FormalSum) -> FormalSum:
        """(X (x) Y)(u) = sum_{x,y} dim[x y; u] X(x) Y(y)."""
        acc: dict[Word, int] = {}
        for x, cx in X.items():
            for y, cy in Y.items():
                for u, n in self.fuse_words(x, y).items():
                    acc[u] = acc.get(u, 0) + n * cx * cy
        return FormalSum(acc)

    def decompose_tensor_word(self, factors: Iterable[Letter | Word]) -> FormalSum:
        """Simple decomposition of a tensor product of letters (or words), folded left to right."""
        acc = FormalSum.delta(UNIT)
        for f in factors:
            w = f if isinstance(f, Word) else Word((Letter(*f),))
            acc = self.tensor_object(acc, FormalSum.delta(self._check(w)))
        return acc

    def hom_dim(self, s: Word, factors: Iterable[Letter | Word]) -> int:
        """dim Hom(s, f_1 (x) ... (x) f_k)."""
        return self.decompose_tensor_word(factors)[s]

    # -- expanded squares ------------------------------------------------------

    def explicit_formula_profile(self, x: Word, y: Word, z: Word, w: Word) -> FormulaProfile:
        """Expand dim Hom(x (x) y (x) z, w) for x || y into junction summands.

        Pairs (y_i, z_i) are read outward from the y|z junction. A cross-factor
        pair ends the contraction early: the remainder is then a free word.
        """
        if self.concat_status(x, y) is not Concat.FREE:
            raise ValueError(f"explicit formula needs x || y, got x={x} and y={y}")
        k, l = len(y), len(z)
        yl, zl = y.letters, z.letters
        terms: list[int] = []
        overlap = 1
        i = 0
        while i < min(k, l):
            a, b = yl[k - 1 - i], zl[i]
            if a.factor != b.factor:
                break
            # w = x . y(i+1) . u . z(i+1) with a single non-unit letter u
            pre = x.letters + yl[: k - 1 - i]
            post = zl[i + 1 :]
            term = 0
            if len(w) == len(pre) + 1 + len(post) and w.letters[: len(pre)] == pre and w.letters[len(pre) + 1 :] == post:
                term = overlap * self._letter_coefficient(a, b, Word((w.letters[len(pre)],)))
            terms.append(term)
            overlap *= self._letter_coefficient(a, b, UNIT)
            i += 1
        if i < min(k, l):
            leftover = Word(yl[: k - i] + zl[i:])
            tail = 1 if w == x.free_concat(leftover) else 0
        elif k < l:
            leftover = Word(zl[k:])
            tail = self.triangle_dim(x, leftover, w)
        elif k > l:
            leftover = Word(yl[: k - l])
            tail = 1 if w == x.free_concat(leftover) else 0
        else:
            leftover = UNIT
            tail = 1 if w == x else 0
        return FormulaProfile(tuple(terms), overlap, tail, leftover)

    def square_dim_left(self, x: Word, y: Word, z: Word, w: Word) -> int:
        """sum_u dim[y z; u] dim[x u; w]  (x (x) (y (x) z))."""
        return sum(n * self.triangle_dim(x, u, w) for u, n in self.fuse_words(y, z).items())

    def square_dim_right(self, x: Word, y: Word, z: Word, w: Word) -> int:
        """sum_u dim[x y; u] dim[u z; w]  ((x (x) y) (x) z)."""
        return sum(n * self.triangle_dim(u, z, w) for u, n in self.fuse_words(x, y).items())
