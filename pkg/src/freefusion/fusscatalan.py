"""Colored non-crossing diagram algebras A_n interpolating the Fuss-Catalan algebras.

Boundary points carry a color j in 1..m and a star bit. The standard boundary
w_n is the first n letters of x1 x2 .. xm xm* .. x1* x1 ..; in general the
star bit of a point is the parity of earlier occurrences of its color.

A diagram with ``nb`` bottom and ``nt`` top points is stored as a partner
array over point ids: bottom points are 0..nb-1 (left to right), top points
are nb..nb+nt-1 (left to right). Going around the rectangle means bottom left
to right, then top right to left; non-crossing refers to that circular order.

``A * B`` stacks A on top of B (so A's bottom must equal B's top). Closed
loops of color j are removed at the cost of the j-th loop value, which is the
variable a_j unless another coefficient ring is chosen.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .free_product import FormalSum, FreeProductRing, Letter, Word
from .fusion import su2_ring
from .laurent import LaurentPoly, a_names, quantum_int, t_names

log = logging.getLogger(__name__)

DEFAULT_GUARD_POINTS = 28

Point = tuple[int, bool]  # (color, starred)
Sigma = tuple[int, ...]


class GuardError(ValueError):
    """Enumeration would exceed the configured number of boundary points."""


def _guard(points: int, guard: int) -> None:
    if points > guard:
        raise GuardError(f"{points} boundary points exceed the guard of {guard}")


# -- boundary patterns ----------------------------------------------------------


@dataclass(frozen=True)
class ColorPattern:
    points: tuple[Point, ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    @property
    def colors(self) -> Sigma:
        return tuple(c for c, _ in self.points)

    def __str__(self) -> str:
        return " ".join(f"x{c}*" if s else f"x{c}" for c, s in self.points)


def pattern_of(colors: Iterable[int]) -> ColorPattern:
    """Attach star bits by the parity of earlier occurrences of each color."""
    seen: dict[int, int] = {}
    pts = []
    for c in colors:
        k = seen.get(c, 0)
        pts.append((c, k % 2 == 1))
        seen[c] = k + 1
    return ColorPattern(tuple(pts))


def boundary_word(m: int, n: int) -> ColorPattern:
    """w_n: the first n letters of the period-2m coloring."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    pts = []
    for i in range(n):
        block, pos = divmod(i, m)
        pts.append((pos + 1, False) if block % 2 == 0 else (m - pos, True))
    return ColorPattern(tuple(pts))


def parse_sigma(text: str) -> Sigma:
    """``x1x1x2`` (spaces and commas ignored); empty string or ``1`` is the empty word."""
    s = text.replace(" ", "").replace(",", "")
    if s in ("", "1", "()"):
        return ()
    if not s.startswith("x"):
        raise ValueError(f"cannot read middle pattern {text!r}")
    out = []
    for chunk in s.split("x")[1:]:
        if not chunk.isdigit() or int(chunk) < 1:
            raise ValueError(f"bad color in middle pattern {text!r}")
        out.append(int(chunk))
    return tuple(out)


def format_sigma(sigma: Sigma) -> str:
    return "".join(f"x{c}" for c in sigma)


# -- diagrams --------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarDiagram:
    bottom: ColorPattern
    top: ColorPattern
    partner: tuple[int, ...]

    @property
    def nb(self) -> int:
        return len(self.bottom)

    @property
    def nt(self) -> int:
        return len(self.top)

    def color(self, p: int) -> Point:
        return self.bottom[p] if p < self.nb else self.top[p - self.nb]

    def pairs(self) -> list[tuple[int, int]]:
        return [(p, q) for p, q in enumerate(self.partner) if p < q]

    def circular_position(self, p: int) -> int:
        return p if p < self.nb else self.nb + self.nt - 1 - (p - self.nb)

    def has_bottom_pair(self) -> bool:
        return any(q < self.nb for q in self.partner[: self.nb])

    def serialize(self, m: int | None = None) -> str:
        body = ",".join(f"{p}↔{q}" for p, q in self.pairs())
        head = f"m={m};" if m is not None else ""
        if self.bottom == self.top:
            return f"{head}n={self.nb};match={body}"
        sigma = format_sigma(self.bottom.colors) or "1"
        return f"{head}sigma={sigma};n={self.nt};match={body}"

    def __str__(self) -> str:
        return self.serialize()


def diagram_from_pairs(bottom: ColorPattern, top: ColorPattern, pairs: Iterable[tuple[int, int]]) -> PlanarDiagram:
    size = len(bottom) + len(top)
    partner = [-1] * size
    for p, q in pairs:
        if partner[p] != -1 or partner[q] != -1 or p == q:
            raise ValueError("pairs do not form a matching")
        partner[p], partner[q] = q, p
    if -1 in partner:
        raise ValueError("matching is not perfect")
    return PlanarDiagram(bottom, top, tuple(partner))


def parse_diagram(text: str) -> PlanarDiagram:
    """Inverse of :meth:`PlanarDiagram.serialize` for A_n diagrams (``m`` required)."""
    fields = dict(part.split("=", 1) for part in text.split(";"))
    m, n = int(fields["m"]), int(fields["n"])
    top = boundary_word(m, n)
    bottom = top if "sigma" not in fields else pattern_of(parse_sigma(fields["sigma"]))
    pairs = []
    if fields.get("match"):
        for chunk in fields["match"].split(","):
            p, q = chunk.split("↔")
            pairs.append((int(p), int(q)))
    d = diagram_from_pairs(bottom, top, pairs)
    problem = diagram_violation(d)
    if problem:
        raise ValueError(problem)
    return d


def _pair_allowed(a: Point, b: Point, same_side: bool) -> bool:
    if a[0] != b[0]:
        return False
    return a[1] != b[1] if same_side else a[1] == b[1]


def diagram_violation(d: PlanarDiagram, allow_bottom_pairs: bool = True) -> str | None:
    """Independent validity check: involution, colors, star parity, planarity."""
    size = d.nb + d.nt
    if len(d.partner) != size:
        return "partner array has the wrong length"
    for p, q in enumerate(d.partner):
        if not 0 <= q < size or q == p or d.partner[q] != p:
            return f"point {p} is not properly paired"
    for p, q in d.pairs():
        same = (p < d.nb) == (q < d.nb)
        if same and p < d.nb and not allow_bottom_pairs:
            return f"bottom points {p} and {q} are coupled"
        if not _pair_allowed(d.color(p), d.color(q), same):
            return f"pair {p}-{q} violates the color/star rule"
    arcs = sorted(tuple(sorted((d.circular_position(p), d.circular_position(q)))) for p, q in d.pairs())
    for i, (a, b) in enumerate(arcs):
        for c, e in arcs[i + 1 :]:
            if a < c < b < e:
                return f"arcs {a}-{b} and {c}-{e} cross"
    return None


def _enumerate(bottom: ColorPattern, top: ColorPattern, allow_bottom_pairs: bool) -> list[PlanarDiagram]:
    nb, nt = len(bottom), len(top)
    circ = list(range(nb)) + [nb + nt - 1 - i for i in range(nt)]
    col = [bottom[p] if p < nb else top[p - nb] for p in circ]
    side = [p < nb for p in circ]
    size = len(circ)
    memo: dict[tuple[int, int], list[tuple[tuple[int, int], ...]]] = {}

    def ok(i: int, k: int) -> bool:
        same = side[i] == side[k]
        if same and side[i] and not allow_bottom_pairs:
            return False
        return _pair_allowed(col[i], col[k], same)

    def rec(i: int, j: int) -> list[tuple[tuple[int, int], ...]]:
        if i >= j:
            return [()]
        if (j - i) % 2:
            return []
        key = (i, j)
        if key in memo:
            return memo[key]
        out = []
        for k in range(i + 1, j, 2):
            if not ok(i, k):
                continue
            inner = rec(i + 1, k)
            if not inner:
                continue
            outer = rec(k + 1, j)
            for a in inner:
                for b in outer:
                    out.append(((i, k),) + a + b)
        memo[key] = out
        return out

    diagrams = []
    for arcs in rec(0, size):
        partner = [0] * size
        for i, k in arcs:
            p, q = circ[i], circ[k]
            partner[p], partner[q] = q, p
        diagrams.append(PlanarDiagram(bottom, top, tuple(partner)))
    diagrams.sort(key=lambda d: d.partner)
    return diagrams


def enumerate_basis(m: int, n: int, guard_points: int = DEFAULT_GUARD_POINTS) -> list[PlanarDiagram]:
    """All diagrams of A_n (bottom = top = w_n), ordered by partner array."""
    _guard(2 * n, guard_points)
    w = boundary_word(m, n)
    return _enumerate(w, w, allow_bottom_pairs=True)


def dim_formula(m: int, n: int) -> int:
    """(l+1)/(k(m+1)+l+1) * C(k(m+1)+l+1, k) for n = km + l, 0 <= l < m."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    k, l = divmod(n, m)
    top = k * (m + 1) + l + 1
    num = (l + 1) * math.comb(top, k)
    q, r = divmod(num, top)
    if r:  # pragma: no cover - the formula always divides
        raise ArithmeticError(f"dimension formula not integral at m={m}, n={n}")
    return q


# -- algebra elements ------------------------------------------------------------


def a_loops(m: int) -> tuple[LaurentPoly, ...]:
    """Loop values a_1..a_m as independent variables."""
    return LaurentPoly.gens(a_names(m))


def t_loops(m: int) -> tuple[LaurentPoly, ...]:
    """Loop values t_j + 1/t_j."""
    names = t_names(m)
    return tuple(LaurentPoly.variable(names, j) + LaurentPoly.variable(names, j, -1) for j in range(m))


@lru_cache(maxsize=200_000)
def _compose(upper: PlanarDiagram, lower: PlanarDiagram) -> tuple[PlanarDiagram, tuple[tuple[int, int], ...]]:
    """Stack upper on lower; returns the diagram and (color, loops) counts."""
    nbL, mid, ntU = lower.nb, lower.nt, upper.nt
    L, U = lower.partner, upper.partner
    nres = nbL + ntU
    res = [-1] * nres
    seen_mid = [False] * mid

    def walk_from_lower(p: int) -> int:
        # p is a lower point whose partner we follow
        while True:
            q = L[p]
            if q < nbL:
                return q
            i = q - nbL
            seen_mid[i] = True
            r = U[i]
            if r >= mid:
                return nbL + (r - mid)
            seen_mid[r] = True
            p = nbL + r

    def walk_from_upper(p: int) -> int:
        while True:
            q = U[p]
            if q >= mid:
                return nbL + (q - mid)
            seen_mid[q] = True
            r = L[nbL + q]
            if r < nbL:
                return r
            i = r - nbL
            seen_mid[i] = True
            p = i

    for p in range(nbL):
        if res[p] == -1:
            q = walk_from_lower(p)
            res[p], res[q] = q, p
    for j in range(ntU):
        p = nbL + j
        if res[p] == -1:
            q = walk_from_upper(mid + j)
            res[p], res[q] = q, p

    loops: dict[int, int] = {}
    for start in range(mid):
        if seen_mid[start]:
            continue
        color = lower.top[start][0]
        i = start
        while not seen_mid[i]:
            seen_mid[i] = True
            j = U[i]  # upper bottom i -> upper bottom j
            seen_mid[j] = True
            i = L[nbL + j] - nbL  # lower top j -> lower top
        loops[color] = loops.get(color, 0) + 1
    return PlanarDiagram(lower.bottom, upper.top, tuple(res)), tuple(sorted(loops.items()))


def _closure_loops(d: PlanarDiagram) -> tuple[tuple[int, int], ...]:
    if d.bottom != d.top:
        raise ValueError("closure needs equal top and bottom patterns")
    n = d.nb
    seen = [False] * (2 * n)
    loops: dict[int, int] = {}
    for start in range(2 * n):
        if seen[start]:
            continue
        color = d.color(start)[0]
        p = start
        while not seen[p]:
            seen[p] = True
            q = d.partner[p]
            seen[q] = True
            # closing strand joins top i with bottom i
            p = q - n if q >= n else q + n
        loops[color] = loops.get(color, 0) + 1
    return tuple(sorted(loops.items()))


class AlgebraElement:
    """Finite linear combination of diagrams sharing bottom and top patterns."""

    __slots__ = ("bottom", "top", "loops", "terms")

    def __init__(
        self,
        bottom: ColorPattern,
        top: ColorPattern,
        loops: Sequence[LaurentPoly],
        terms: Mapping[PlanarDiagram, LaurentPoly | int] | Iterable[tuple[PlanarDiagram, LaurentPoly | int]] = (),
    ):
        self.bottom = bottom
        self.top = top
        self.loops = tuple(loops)
        names = self.loops[0].names
        acc: dict[PlanarDiagram, LaurentPoly] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for d, c in items:
            if d.bottom != bottom or d.top != top:
                raise ValueError("diagram patterns do not match the element")
            if isinstance(c, int):
                c = LaurentPoly.constant(names, c)
            acc[d] = acc[d] + c if d in acc else c
        self.terms = {d: c for d, c in acc.items() if c}

    @classmethod
    def basis_element(cls, d: PlanarDiagram, loops: Sequence[LaurentPoly]) -> AlgebraElement:
        return cls(d.bottom, d.top, loops, {d: 1})

    @property
    def names(self) -> tuple[str, ...]:
        return self.loops[0].names

    def _like(self, terms) -> AlgebraElement:
        return AlgebraElement(self.bottom, self.top, self.loops, terms)

    def _compatible(self, other: AlgebraElement) -> None:
        if self.loops != other.loops:
            raise ValueError("elements use different loop values")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._compatible(other)
        if (self.bottom, self.top) != (other.bottom, other.top):
            raise ValueError("pattern mismatch in addition")
        return self._like(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> AlgebraElement:
        return self._like({d: -c for d, c in self.terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> AlgebraElement:
        return self._like({d: v * c for d, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.bottom, self.top, self.loops, self.terms) == (other.bottom, other.top, other.loops, other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*[{d}]" for d, c in sorted(self.terms.items(), key=lambda kv: kv[0].partner))
        return f"AlgebraElement({body or '0'})"

    def substitute(self, images: Sequence[LaurentPoly], loops: Sequence[LaurentPoly]) -> AlgebraElement:
        """Map every coefficient through ``LaurentPoly.substitute`` into a new ring."""
        return AlgebraElement(
            self.bottom, self.top, loops, {d: c.substitute(images) for d, c in self.terms.items()}
        )


def _loop_factor(loops: Sequence[LaurentPoly], counts: Iterable[tuple[int, int]]) -> LaurentPoly:
    f = LaurentPoly.one(loops[0].names)
    for color, k in counts:
        f = f * loops[color - 1] ** k
    return f


def multiply(A: AlgebraElement, B: AlgebraElement) -> AlgebraElement:
    """A stacked on top of B, closed loops replaced by their loop values."""
    if A.bottom != B.top:
        raise ValueError(f"pattern mismatch: {A.bottom} below A but {B.top} on top of B")
    A._compatible(B)
    acc: dict[PlanarDiagram, LaurentPoly] = {}
    for da, ca in A.terms.items():
        for db, cb in B.terms.items():
            d, counts = _compose(da, db)
            c = ca * cb * _loop_factor(A.loops, counts)
            acc[d] = acc[d] + c if d in acc else c
    return AlgebraElement(B.bottom, A.top, A.loops, acc)


def markov_trace(A: AlgebraElement) -> LaurentPoly:
    """Close every diagram on the right (top i to bottom i) and weigh loops."""
    if A.bottom != A.top:
        raise ValueError("trace needs equal top and bottom patterns")
    total = LaurentPoly.zero(A.names)
    for d, c in A.terms.items():
        total = total + c * _loop_factor(A.loops, _closure_loops(d))
    return total


def identity_diagram(pattern: ColorPattern) -> PlanarDiagram:
    n = len(pattern)
    return PlanarDiagram(pattern, pattern, tuple(range(n, 2 * n)) + tuple(range(n)))


def cup_cap(pattern: ColorPattern, i: int) -> PlanarDiagram:
    """E_i: cup on bottom points i-1, i and cap on the same top points (i is 1-based)."""
    n = len(pattern)
    if not 1 <= i < n:
        raise ValueError(f"E_{i} needs 1 <= i < {n}")
    partner = list(range(n, 2 * n)) + list(range(n))
    partner[i - 1], partner[i] = i, i - 1
    partner[n + i - 1], partner[n + i] = n + i, n + i - 1
    d = PlanarDiagram(pattern, pattern, tuple(partner))
    problem = diagram_violation(d)
    if problem:
        raise ValueError(f"E_{i} is not a diagram on {pattern}: {problem}")
    return d


class FCAlgebra:
    """A_n for m colors with a chosen coefficient ring (loop values)."""

    def __init__(self, m: int, n: int, loops: Sequence[LaurentPoly] | None = None,
                 guard_points: int = DEFAULT_GUARD_POINTS):
        self.m, self.n = m, n
        self.pattern = boundary_word(m, n)
        self.loops = tuple(loops) if loops is not None else a_loops(m)
        if len(self.loops) != m:
            raise ValueError(f"need {m} loop values")
        self.guard_points = guard_points

    @property
    def names(self) -> tuple[str, ...]:
        return self.loops[0].names

    def basis(self) -> list[PlanarDiagram]:
        return enumerate_basis(self.m, self.n, self.guard_points)

    def element(self, terms) -> AlgebraElement:
        return AlgebraElement(self.pattern, self.pattern, self.loops, terms)

    def diagram(self, d: PlanarDiagram) -> AlgebraElement:
        return self.element({d: 1})

    def identity(self) -> AlgebraElement:
        return self.diagram(identity_diagram(self.pattern))

    def scalar(self, c: LaurentPoly | int) -> AlgebraElement:
        return self.identity().scale(c)

    def E(self, i: int) -> AlgebraElement:
        return self.diagram(cup_cap(self.pattern, i))

    def zero(self) -> AlgebraElement:
        return self.element({})


# -- middle-pattern modules --------------------------------------------------------


def enumerate_module_basis(sigma: Sequence[int], m: int, n: int,
                           guard_points: int = DEFAULT_GUARD_POINTS) -> list[PlanarDiagram]:
    """Diagrams from sigma (bottom) to w_n (top) with no couplings inside sigma."""
    sigma = tuple(sigma)
    if any(not 1 <= c <= m for c in sigma):
        raise ValueError(f"middle pattern {format_sigma(sigma)} uses colors outside 1..{m}")
    _guard(len(sigma) + n, guard_points)
    return _enumerate(pattern_of(sigma), boundary_word(m, n), allow_bottom_pairs=False)


def act(a: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Action of A_n on V_sigma: compose, then drop diagrams that couple sigma to itself."""
    prod = multiply(a, v)
    return AlgebraElement(prod.bottom, prod.top, prod.loops,
                          {d: c for d, c in prod.terms.items() if not d.has_bottom_pair()})


def module_dimensions(m: int, n: int, guard_points: int = DEFAULT_GUARD_POINTS) -> dict[Sigma, int]:
    """dim V_sigma^(n) for every sigma with a nonzero module, by counting half-diagrams.

    Top points are either through strings (read off, in order, as sigma) or
    paired among themselves; pairs cannot enclose a through string. This is an
    independent count of what :func:`enumerate_module_basis` lists.
    """
    _guard(2 * n, guard_points)
    w = boundary_word(m, n)

    @lru_cache(maxsize=None)
    def full(i: int, j: int) -> int:
        # perfect matchings of top points i..j-1
        if i >= j:
            return 1
        if (j - i) % 2:
            return 0
        return sum(
            full(i + 1, k) * full(k + 1, j)
            for k in range(i + 1, j, 2)
            if _pair_allowed(w[i], w[k], True)
        )

    @lru_cache(maxsize=None)
    def suffix(i: int) -> tuple[tuple[tuple[Point, ...], int], ...]:
        if i == n:
            return (((), 1),)
        acc: dict[tuple[Point, ...], int] = {}
        for key, cnt in suffix(i + 1):
            k2 = (w[i],) + key
            acc[k2] = acc.get(k2, 0) + cnt
        for k in range(i + 1, n, 2):
            if _pair_allowed(w[i], w[k], True):
                inner = full(i + 1, k)
                if inner:
                    for key, cnt in suffix(k + 1):
                        acc[key] = acc.get(key, 0) + inner * cnt
        return tuple(acc.items())

    dims: dict[Sigma, int] = {}
    for through, cnt in suffix(0):
        colors = tuple(c for c, _ in through)
        if pattern_of(colors).points == through:
            dims[colors] = dims.get(colors, 0) + cnt
    return dict(sorted(dims.items(), key=lambda kv: (len(kv[0]), kv[0])))


# -- dictionary between simples and middle patterns -------------------------------


@lru_cache(maxsize=None)
def fc_ring(m: int) -> FreeProductRing:
    """Free product of m copies of the SU(2) fusion ring."""
    return FreeProductRing([su2_ring()] * m)


def simple_of_sigma(sigma: Sequence[int], m: int | None = None) -> Word:
    """Run-length encode: x_j^k becomes the letter (f_j : s_k)."""
    sigma = tuple(sigma)
    if any(not isinstance(c, int) or c < 1 for c in sigma):
        raise ValueError(f"malformed middle pattern {sigma!r}")
    if m is not None and any(c > m for c in sigma):
        raise ValueError(f"color out of range 1..{m} in {format_sigma(sigma)}")
    letters: list[Letter] = []
    for c in sigma:
        if letters and letters[-1].factor == c:
            letters[-1] = Letter(c, letters[-1].label + 1)
        else:
            letters.append(Letter(c, 1))
    return Word(letters)


def sigma_of_simple(s: Word) -> Sigma:
    """Inverse of :func:`simple_of_sigma`: the letter (f_j : s_k) becomes x_j^k."""
    out: list[int] = []
    for letter in s:
        if not isinstance(letter.label, int) or letter.label < 1:
            raise ValueError(f"letter {letter} is not an SU(2) spin label")
        out.extend([letter.factor] * letter.label)
    return tuple(out)


def w_letters(m: int, n: int) -> list[Letter]:
    """W_n as a list of fundamental letters (f_j : s_1); stars are immaterial (self-dual)."""
    return [Letter(c, 1) for c in boundary_word(m, n).colors]


def decompose_w(m: int, n: int) -> FormalSum:
    return fc_ring(m).decompose_tensor_word(w_letters(m, n))


# -- reports -----------------------------------------------------------------------


@dataclass(frozen=True)
class DimMatch:
    sigma: Sigma
    n: int
    module_dim: int
    hom_dim: int

    @property
    def passed(self) -> bool:
        return self.module_dim == self.hom_dim

    def to_dict(self) -> dict:
        return {"sigma": format_sigma(self.sigma), "n": self.n, "module_dim": self.module_dim,
                "hom_dim": self.hom_dim, "pass": self.passed}


def hom_module_match(sigma: Sequence[int], m: int, n: int,
                     guard_points: int = DEFAULT_GUARD_POINTS) -> DimMatch:
    """dim V_sigma^(n) by enumeration against dim Hom(s, W_n) by free-product fusion."""
    sigma = tuple(sigma)
    v = len(enumerate_module_basis(sigma, m, n, guard_points))
    h = fc_ring(m).hom_dim(simple_of_sigma(sigma, m), w_letters(m, n))
    return DimMatch(sigma, n, v, h)


@dataclass(frozen=True)
class BranchReport:
    sigma: Sigma
    color: int
    k: int
    n: int
    upper: int  # dim V_{sigma y^k}^(n+1)
    lower_minus: int  # dim V_{sigma y^(k-1)}^(n)
    lower_plus: int  # dim V_{sigma y^(k+1)}^(n)

    @property
    def passed(self) -> bool:
        return self.upper == self.lower_minus + self.lower_plus

    def to_dict(self) -> dict:
        return {"sigma": format_sigma(self.sigma), "y": f"x{self.color}", "k": self.k, "n": self.n,
                "upper": self.upper, "lower_minus": self.lower_minus, "lower_plus": self.lower_plus,
                "pass": self.passed}


def branching_check(sigma: Sequence[int], y: int | None, k: int, m: int, n: int,
                    guard_points: int = DEFAULT_GUARD_POINTS) -> BranchReport:
    """dim V_{sigma y^k}^(n+1) = dim V_{sigma y^(k-1)}^(n) + dim V_{sigma y^(k+1)}^(n).

    ``y`` must be the color of the (n+1)-th boundary point (None picks it) and
    sigma must not end in y.
    """
    sigma = tuple(sigma)
    last = boundary_word(m, n + 1).colors[-1]
    if y is None:
        y = last
    if y != last:
        raise ValueError(f"w_{n + 1} ends in x{last}, not x{y}")
    if k < 1:
        raise ValueError("k must be >= 1")
    if sigma and sigma[-1] == y:
        raise ValueError("sigma must not end in the branching color")

    def dim(word: Sigma, size: int) -> int:
        return len(enumerate_module_basis(word, m, size, guard_points))

    return BranchReport(
        sigma, y, k, n,
        upper=dim(sigma + (y,) * k, n + 1),
        lower_minus=dim(sigma + (y,) * (k - 1), n),
        lower_plus=dim(sigma + (y,) * (k + 1), n),
    )


def all_branching_checks(m: int, n: int, guard_points: int = DEFAULT_GUARD_POINTS) -> list[BranchReport]:
    """Branching at step n -> n+1 for every sigma not ending in the new color.

    sigma runs over all color words with |sigma| + k <= n + 2, which covers
    every case where one of the three modules can be nonzero.
    """
    y = boundary_word(m, n + 1).colors[-1]
    reports = []
    for size in range(n + 2):
        for sigma in itertools.product(range(1, m + 1), repeat=size):
            if sigma and sigma[-1] == y:
                continue
            for k in range(1, n + 3 - size):
                reports.append(branching_check(sigma, y, k, m, n, guard_points))
    return reports


def trace_weight(sigma: Sequence[int], m: int) -> LaurentPoly:
    """d_sigma = product over runs x_j^k of sigma of [k+1]_{t_j}; d_empty = 1."""
    names = t_names(m)
    result = LaurentPoly.one(names)
    for letter in simple_of_sigma(sigma, m):
        result = result * quantum_int(letter.label + 1, letter.factor - 1, names)
    return result


@dataclass(frozen=True)
class PartitionReport:
    m: int
    n: int
    lhs: LaurentPoly
    rhs: LaurentPoly
    terms: tuple[tuple[Sigma, int], ...]

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "lhs": str(self.lhs), "rhs": str(self.rhs),
                "terms": [{"sigma": format_sigma(s), "dim": d} for s, d in self.terms],
                "pass": self.passed}


def partition_identity_check(m: int, n: int, guard_points: int = DEFAULT_GUARD_POINTS) -> PartitionReport:
    """prod_j (t_j + 1/t_j)^n against sum_sigma d_sigma dim V_sigma^(mn), exactly."""
    size = m * n
    _guard(2 * size, guard_points)
    names = t_names(m)
    lhs = LaurentPoly.one(names)
    for loop in t_loops(m):
        lhs = lhs * loop ** n
    rhs = LaurentPoly.zero(names)
    terms = []
    for sigma in module_dimensions(m, size, guard_points):
        dim = len(enumerate_module_basis(sigma, m, size, guard_points))
        terms.append((sigma, dim))
        rhs = rhs + trace_weight(sigma, m) * dim
    return PartitionReport(m, n, lhs, rhs, tuple(terms))


# -- Temperley-Lieb / Hecke constants (one color) ------------------------------------


@dataclass(frozen=True)
class HeckeReport:
    n: int
    checks: tuple[tuple[str, bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def to_dict(self) -> dict:
        return {"n": self.n, "checks": dict(self.checks), "pass": self.passed}


def hecke_relations_check(n: int) -> HeckeReport:
    """Check the e_i and g_i relations in A_n for one color, exactly.

    With e_i = E_i / a and a = t + 1/t, q = t^2:
      * over Z[a, 1/a]: e_i e_j e_i = a^-2 e_i for |i-j| = 1, and a^2 -> q + 1/q + 2;
      * over Z[t, 1/t], denominators cleared: (q + 1/q + 2) E_i E_j E_i = a^2 E_i;
      * g_i = q - (1+q) e_i = q - c E_i with c = (1+q)/a computed by exact division,
        then the braid relation, far commutation and (g_i - q)(g_i + 1) = 0.
    """
    checks: list[tuple[str, bool]] = []
    alg_a = FCAlgebra(1, n)
    (a,) = alg_a.loops
    a_inv = a ** -1
    e = {i: alg_a.E(i).scale(a_inv) for i in range(1, n)}
    tn = t_names(1)
    t = LaurentPoly.variable(tn, 0)
    q = t * t
    loop = t + t ** -1
    checks.append(("a^2 -> q + 1/q + 2", (a * a).substitute([loop]) == q + q ** -1 + 2))
    alg_t = FCAlgebra(1, n, loops=[loop])
    E = {i: alg_t.E(i) for i in range(1, n)}
    for i in range(1, n):
        for j in (i - 1, i + 1):
            if j in e:
                lhs = e[i] * e[j] * e[i]
                checks.append((f"e{i}e{j}e{i} = a^-2 e{i}", lhs == e[i].scale(a_inv * a_inv)))
                cleared = (E[i] * E[j] * E[i]).scale(q + q ** -1 + 2)
                checks.append((f"(q+1/q+2) E{i}E{j}E{i} = a^2 E{i}", cleared == E[i].scale(loop * loop)))
    c = (1 + q).divide_exact(loop)
    one = alg_t.identity()
    g = {i: one.scale(q) - E[i].scale(c) for i in range(1, n)}
    for i in range(1, n):
        checks.append((f"(g{i} - q)(g{i} + 1) = 0", not ((g[i] - one.scale(q)) * (g[i] + one))))
        if i + 1 in g:
            checks.append((f"g{i}g{i + 1}g{i} = g{i + 1}g{i}g{i + 1}",
                           g[i] * g[i + 1] * g[i] == g[i + 1] * g[i] * g[i + 1]))
        for j in range(i + 2, n):
            checks.append((f"g{i}g{j} = g{j}g{i}", g[i] * g[j] == g[j] * g[i]))
    return HeckeReport(n, tuple(checks))
