"""Triangulations of a convex polygon, flips, short-cuts and polygonal dimensions.

Vertices are numbered 0..n-1 around the polygon. The bottom edge joins
vertex 0 and vertex n-1; side edge i (1 <= i <= n-1) joins vertices i-1 and i
and carries the i-th peripheral label. A diagonal (i, j) with i < j is the
lower edge of the sub-polygon i..j, so every triangle (i, j, k), i < j < k,
reads as [label(i,j) label(j,k); label(i,k)].
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .free_product import FormalSum, FreeProductRing, Word

log = logging.getLogger(__name__)

MAX_ENUMERATE = 12
MAX_COHERENCE = 9

Diagonal = tuple[int, int]


class GuardError(ValueError):
    """A size guard was exceeded."""


@dataclass(frozen=True)
class Polygon:
    n_edges: int

    def __post_init__(self) -> None:
        if self.n_edges < 3:
            raise ValueError("a polygon needs at least 3 edges")

    def vertices(self) -> range:
        return range(self.n_edges)

    def is_side(self, i: int, j: int) -> bool:
        i, j = min(i, j), max(i, j)
        return j - i == 1 or (i == 0 and j == self.n_edges - 1)


@dataclass(frozen=True)
class Triangulation:
    n: int
    diagonals: frozenset[Diagonal]

    def __post_init__(self) -> None:
        norm = frozenset((min(d), max(d)) for d in self.diagonals)
        object.__setattr__(self, "diagonals", norm)

    def sorted_diagonals(self) -> list[Diagonal]:
        return sorted(self.diagonals)

    def __str__(self) -> str:
        return ",".join(f"{i}-{j}" for i, j in self.sorted_diagonals())

    @classmethod
    def parse(cls, n: int, text: str) -> Triangulation:
        text = text.strip()
        diags = []
        if text:
            for chunk in text.split(","):
                i, sep, j = chunk.strip().partition("-")
                if not sep:
                    raise ValueError(f"malformed diagonal {chunk!r}; expected i-j")
                diags.append((int(i), int(j)))
        t = cls(n, frozenset(diags))
        validate(t)
        return t

    def sort_key(self) -> tuple:
        return tuple(self.sorted_diagonals())


def crosses(d: Diagonal, e: Diagonal) -> bool:
    a, b = d
    c, f = e
    return a < c < b < f or c < a < f < b


def validate(t: Triangulation) -> None:
    n = t.n
    if n < 3:
        raise ValueError("a polygon needs at least 3 edges")
    poly = Polygon(n)
    for i, j in t.diagonals:
        if not (0 <= i < j < n) or poly.is_side(i, j):
            raise ValueError(f"{i}-{j} is not a diagonal of an {n}-gon")
    if len(t.diagonals) != n - 3:
        raise ValueError(f"a triangulation of an {n}-gon has {n - 3} diagonals, got {len(t.diagonals)}")
    ds = sorted(t.diagonals)
    for p, d in enumerate(ds):
        for e in ds[p + 1 :]:
            if crosses(d, e):
                raise ValueError(f"diagonals {d} and {e} cross")


def _check_range(n: int, limit: int = MAX_ENUMERATE) -> None:
    if not 3 <= n <= limit:
        raise GuardError(f"polygon size {n} outside the supported range 3..{limit}")


@lru_cache(maxsize=None)
def _sub_triangulations(i: int, k: int) -> tuple[frozenset[Diagonal], ...]:
    # diagonal sets strictly inside the sub-polygon i..k, apex-first recursion
    if k - i < 2:
        return (frozenset(),)
    out = []
    for j in range(i + 1, k):
        own = set()
        if j - i > 1:
            own.add((i, j))
        if k - j > 1:
            own.add((j, k))
        for left in _sub_triangulations(i, j):
            for right in _sub_triangulations(j, k):
                out.append(frozenset(own) | left | right)
    return tuple(out)


def enumerate_triangulations(n: int) -> list[Triangulation]:
    """All Catalan(n-2) triangulations of the n-gon, ordered by sorted diagonal list."""
    _check_range(n)
    ts = [Triangulation(n, d) for d in _sub_triangulations(0, n - 1)]
    return sorted(ts, key=Triangulation.sort_key)


def _edge_set(t: Triangulation) -> set[Diagonal]:
    n = t.n
    edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    return edges | set(t.diagonals)


def _apexes(t: Triangulation, d: Diagonal, edges: set[Diagonal]) -> tuple[int, int]:
    i, k = d
    inner = [v for v in range(i + 1, k) if (i, v) in edges and (v, k) in edges]
    outer = [v for v in range(t.n) if not i <= v <= k and (min(i, v), max(i, v)) in edges and (min(v, k), max(v, k)) in edges]
    if len(inner) != 1 or len(outer) != 1:
        raise ValueError(f"{t} is not a triangulation around {d}")
    return inner[0], outer[0]


def flip(t: Triangulation, d: Diagonal) -> Triangulation:
    """Replace diagonal d by the other diagonal of its surrounding quadrilateral."""
    d = (min(d), max(d))
    if d not in t.diagonals:
        raise ValueError(f"{d} is not a diagonal of {t}")
    p, q = _apexes(t, d, _edge_set(t))
    new = (min(p, q), max(p, q))
    return Triangulation(t.n, (t.diagonals - {d}) | {new})


def flips(t: Triangulation) -> list[Triangulation]:
    """Flip neighbours, in order of the removed diagonal."""
    return [flip(t, d) for d in t.sorted_diagonals()]


def fan_triangulation(poly: Polygon | int, v: int) -> Triangulation:
    n = poly.n_edges if isinstance(poly, Polygon) else poly
    if not 0 <= v < n:
        raise ValueError(f"vertex {v} out of range for an {n}-gon")
    others = [(v + k) % n for k in range(2, n - 1)]
    return Triangulation(n, frozenset((min(v, u), max(v, u)) for u in others))


def length(t: Triangulation, v: int) -> int:
    """Number of diagonals of t incident to v."""
    return sum(1 for d in t.diagonals if v in d)


def shortcut(poly: Polygon | int, v: int, t: Triangulation) -> list[Triangulation]:
    """A flip path fan(v) = T_0, ..., T_r = t along which length drops by one each step.

    Built backwards from t: while t is not the fan, some edge between two
    consecutive diagonals at v is itself a diagonal, and flipping it adds a
    diagonal at v. The lowest such diagonal is flipped first.
    """
    n = poly.n_edges if isinstance(poly, Polygon) else poly
    if t.n != n:
        raise ValueError("triangulation does not belong to this polygon")
    target = n - 3
    path = [t]
    cur = t
    while length(cur, v) < target:
        for d in cur.sorted_diagonals():
            if v in d:
                continue
            nxt = flip(cur, d)
            if length(nxt, v) == length(cur, v) + 1:
                cur = nxt
                break
        else:  # pragma: no cover - impossible for a valid triangulation
            raise RuntimeError(f"no length-increasing flip from {cur}")
        path.append(cur)
    path.reverse()
    return path


def is_shortcut(path: Sequence[Triangulation], v: int) -> bool:
    if not path:
        return False
    n = path[0].n
    if path[0] != fan_triangulation(n, v):
        return False
    for a, b in zip(path, path[1:]):
        if b not in flips(a) or length(b, v) >= length(a, v):
            return False
    return True


def flip_graph_connected(ts: Sequence[Triangulation]) -> bool:
    if not ts:
        return True
    seen = {ts[0]}
    queue = deque([ts[0]])
    while queue:
        cur = queue.popleft()
        for nb in flips(cur):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return seen == set(ts)


# -- labeled polygons ---------------------------------------------------------


@dataclass(frozen=True)
class LabeledPolygon:
    """A polygon whose side edges carry ``sides`` (left to right) over ``bottom``."""

    sides: tuple[Word, ...]
    bottom: Word

    def __post_init__(self) -> None:
        object.__setattr__(self, "sides", tuple(self.sides))
        if len(self.sides) < 2:
            raise ValueError("a labeled polygon needs at least two side edges")

    @property
    def polygon(self) -> Polygon:
        return Polygon(len(self.sides) + 1)

    @property
    def n_edges(self) -> int:
        return len(self.sides) + 1


def polygon_dim(ring: FreeProductRing, lp: LabeledPolygon, t: Triangulation) -> int:
    """Sum over internal-edge labelings of the product of triangle dimensions.

    Each diagonal (i, k) collects the multiplicities of every label it can
    carry given the triangulated region above it; candidate labels come from
    the squeeze shapes of the two upper edges.
    """
    n = lp.n_edges
    if t.n != n:
        raise ValueError(f"triangulation of a {t.n}-gon used on a {n}-gon")
    edges = _edge_set(t)
    memo: dict[Diagonal, dict[Word, int]] = {}

    def region(i: int, k: int) -> dict[Word, int]:
        if k - i == 1:
            return {lp.sides[i]: 1}
        if (i, k) in memo:
            return memo[(i, k)]
        js = [j for j in range(i + 1, k) if (i, j) in edges and (j, k) in edges]
        if len(js) != 1:
            raise ValueError(f"{t} does not triangulate the region {i}..{k}")
        j = js[0]
        acc: dict[Word, int] = {}
        for a, ca in region(i, j).items():
            for b, cb in region(j, k).items():
                for u in ring.squeeze_candidates(a, b):
                    d = ring.triangle_dim(a, b, u)
                    if d:
                        acc[u] = acc.get(u, 0) + d * ca * cb
        memo[(i, k)] = acc
        return acc

    return region(0, n - 1).get(lp.bottom, 0)


def tensor_oracle_dim(ring: FreeProductRing, lp: LabeledPolygon) -> int:
    """Multiplicity of the bottom label in the left-to-right tensor product of the sides."""
    return ring.decompose_tensor_word(lp.sides)[lp.bottom]


@dataclass
class CoherenceReport:
    n_edges: int
    vertex: int
    dims: dict[str, int]
    flip_graph_connected: bool
    shortcuts: dict[str, list[str]]
    shortcuts_valid: bool

    @property
    def common_dim(self) -> int | None:
        vals = set(self.dims.values())
        return vals.pop() if len(vals) == 1 else None

    @property
    def coherent(self) -> bool:
        return self.common_dim is not None

    @property
    def passed(self) -> bool:
        return self.coherent and self.flip_graph_connected and self.shortcuts_valid

    def to_dict(self) -> dict:
        return {
            "n_edges": self.n_edges,
            "vertex": self.vertex,
            "dims": self.dims,
            "common_dim": self.common_dim,
            "flip_graph_connected": self.flip_graph_connected,
            "shortcuts_valid": self.shortcuts_valid,
            "shortcuts": self.shortcuts,
            "pass": self.passed,
        }


def coherence_check(ring: FreeProductRing, lp: LabeledPolygon, vertex: int = 0) -> CoherenceReport:
    """polygon_dim over every triangulation, plus flip-graph and short-cut checks."""
    n = lp.n_edges
    _check_range(n, MAX_COHERENCE)
    ts = enumerate_triangulations(n)
    log.info("coherence: %d triangulations of a %d-gon", len(ts), n)
    dims = {str(t): polygon_dim(ring, lp, t) for t in ts}
    paths = {str(t): shortcut(n, vertex, t) for t in ts}
    valid = all(is_shortcut(p, vertex) and p[-1] == t for t, p in zip(ts, paths.values()))
    return CoherenceReport(
        n_edges=n,
        vertex=vertex,
        dims=dims,
        flip_graph_connected=flip_graph_connected(ts),
        shortcuts={k: [str(s) for s in p] for k, p in paths.items()},
        shortcuts_valid=valid,
    )
