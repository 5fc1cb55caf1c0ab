"""Fusion rule sets: the built-in SU(2) ring and finite user tables."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Hashable, Iterable, Iterator, Mapping

Label = Hashable


class RingError(ValueError):
    """A ring table is malformed or violates the fusion-ring axioms."""


class LabelError(KeyError):
    """A label does not belong to the ring it was used with."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown label"


def _label_key(label: Label) -> tuple:
    # ints sort before strings; both orderings are total and deterministic
    if isinstance(label, int):
        return (0, label, "")
    return (1, 0, str(label))


class FusionSum:
    """Finitely supported map label -> positive multiplicity, canonically ordered."""

    __slots__ = ("_items",)

    def __init__(self, terms: Mapping[Label, int] | Iterable[tuple[Label, int]] = ()):
        acc: dict[Label, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for label, mult in items:
            if mult < 0:
                raise ValueError(f"negative multiplicity for {label!r}")
            if mult:
                acc[label] = acc.get(label, 0) + mult
        self._items = tuple(sorted(acc.items(), key=lambda kv: _label_key(kv[0])))

    def items(self) -> tuple[tuple[Label, int], ...]:
        return self._items

    def labels(self) -> list[Label]:
        return [k for k, _ in self._items]

    def __getitem__(self, label: Label) -> int:
        for k, v in self._items:
            if k == label:
                return v
        return 0

    def __iter__(self) -> Iterator[Label]:
        return (k for k, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FusionSum):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == FusionSum(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return f"FusionSum({dict(self._items)!r})"


class FusionRing:
    """Interface shared by the SU(2) ring and table rings.

    Subclasses provide ``fuse``, membership, label parsing and formatting.
    """

    name: str
    unit: Label

    def __contains__(self, label: object) -> bool:
        raise NotImplementedError

    def fuse(self, a: Label, b: Label) -> FusionSum:
        raise NotImplementedError

    def dual(self, a: Label) -> Label | None:
        raise NotImplementedError

    def parse_label(self, text: str) -> Label:
        raise NotImplementedError

    def format_label(self, label: Label) -> str:
        raise NotImplementedError

    def check(self, label: Label) -> Label:
        if label not in self:
            raise LabelError(f"label {label!r} is not in ring {self.name!r}")
        return label

    def coefficient(self, a: Label, b: Label, c: Label) -> int:
        """N_{ab}^c = dim Hom(a (x) b, c)."""
        self.check(c)
        return self.fuse(a, b)[c]


class SU2Ring(FusionRing):
    """Fusion rules of SU(2): s_m s_n = sum_{k=0}^{min(m,n)} s_{|m-n|+2k}.

    Labels are the non-negative integers n standing for s_n; the spectrum is
    never materialized.
    """

    def __init__(self, name: str = "su2"):
        self.name = name
        self.unit = 0

    def __contains__(self, label: object) -> bool:
        return isinstance(label, int) and not isinstance(label, bool) and label >= 0

    def fuse(self, a: int, b: int) -> FusionSum:
        self.check(a)
        self.check(b)
        lo = abs(a - b)
        return FusionSum((lo + 2 * k, 1) for k in range(min(a, b) + 1))

    def dual(self, a: int) -> int:
        return self.check(a)

    def parse_label(self, text: str) -> int:
        if text.startswith("s") and text[1:].isdigit():
            return int(text[1:])
        raise LabelError(f"cannot read {text!r} as an SU(2) label s<n>")

    def format_label(self, label: int) -> str:
        return f"s{label}"

    def __repr__(self) -> str:
        return f"SU2Ring({self.name!r})"


def su2_ring() -> SU2Ring:
    return SU2Ring()


class TableRing(FusionRing):
    """A finite fusion ring given by an explicit, complete multiplication table."""

    def __init__(
        self,
        name: str,
        simples: Iterable[str],
        unit: str,
        fusion: Mapping[tuple[str, str], Mapping[str, int]],
        dual: Mapping[str, str] | None = None,
    ):
        self.name = name
        self.simples: tuple[str, ...] = tuple(simples)
        self._simple_set = frozenset(self.simples)
        self.unit = unit
        self._dual = dict(dual) if dual is not None else None
        self._table: dict[tuple[str, str], FusionSum] = {}
        self._validate(fusion)

    def _validate(self, raw: Mapping[tuple[str, str], Mapping[str, int]]) -> None:
        simples = set(self.simples)
        if len(simples) != len(self.simples):
            raise RingError("duplicate simple labels")
        if self.unit not in simples:
            raise RingError(f"unit {self.unit!r} is not among the simples")
        for (a, b), prod in raw.items():
            if a not in simples or b not in simples:
                raise RingError(f"fusion entry {a}|{b} uses an unknown label")
            for c, n in prod.items():
                if c not in simples:
                    raise RingError(f"product {a}|{b} mentions unknown label {c!r}")
                if not isinstance(n, int) or isinstance(n, bool):
                    raise RingError(f"multiplicity for {a}|{b}->{c} is not an integer")
                if n < 0:
                    raise RingError(f"negative multiplicity for {a}|{b}->{c}")
        missing = [f"{a}|{b}" for a in self.simples for b in self.simples if (a, b) not in raw]
        if missing:
            raise RingError(f"fusion table is incomplete; missing {', '.join(missing[:5])}")
        self._table = {pair: FusionSum(prod) for pair, prod in raw.items()}
        u = self.unit
        for x in self.simples:
            if self._table[(u, x)] != FusionSum({x: 1}) or self._table[(x, u)] != FusionSum({x: 1}):
                raise RingError(f"unit law fails for {x!r}")
        if self._dual is not None:
            if set(self._dual) != simples or not set(self._dual.values()) <= simples:
                raise RingError("dual map must be defined on every simple and land in the simples")
            for x in self.simples:
                if self._dual[self._dual[x]] != x:
                    raise RingError(f"dual map is not an involution at {x!r}")
                for y in self.simples:
                    want = 1 if y == self._dual[x] else 0
                    if self._table[(x, y)][u] != want:
                        raise RingError(
                            f"dual condition fails: N_{{{x},{y}}}^{u} = {self._table[(x, y)][u]}, expected {want}"
                        )

    def __contains__(self, label: object) -> bool:
        return isinstance(label, str) and label in self._simple_set

    def fuse(self, a: str, b: str) -> FusionSum:
        self.check(a)
        self.check(b)
        return self._table[(a, b)]

    def dual(self, a: str) -> str | None:
        self.check(a)
        return None if self._dual is None else self._dual[a]

    def parse_label(self, text: str) -> str:
        if text not in self.simples:
            raise LabelError(f"{text!r} is not a simple of ring {self.name!r}")
        return text

    def format_label(self, label: str) -> str:
        return label

    def to_document(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"name": self.name, "unit": self.unit, "simples": list(self.simples)}
        if self._dual is not None:
            doc["dual"] = dict(self._dual)
        doc["fusion"] = {
            f"{a}|{b}": dict(self._table[(a, b)].items()) for a in self.simples for b in self.simples
        }
        return doc

    def __repr__(self) -> str:
        return f"TableRing({self.name!r}, {len(self.simples)} simples)"


def load_ring(source: str | os.PathLike | Mapping[str, Any]) -> TableRing:
    """Build a table ring from a JSON document, a path to one, or an already-parsed dict.

    Raises :class:`RingError` on malformed documents and axiom violations.
    """
    if isinstance(source, Mapping):
        doc = source
    else:
        text = str(source)
        if isinstance(source, os.PathLike) or not text.lstrip().startswith("{"):
            try:
                text = Path(source).read_text(encoding="utf-8")
            except OSError as exc:
                raise RingError(f"cannot read ring file {source}: {exc}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise RingError(f"ring document is not valid JSON: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise RingError("ring document must be a JSON object")
    for key in ("name", "unit", "simples", "fusion"):
        if key not in doc:
            raise RingError(f"ring document lacks field {key!r}")
    simples = doc["simples"]
    if not isinstance(simples, list) or not all(isinstance(s, str) for s in simples):
        raise RingError("'simples' must be an array of strings")
    if not isinstance(doc["fusion"], Mapping):
        raise RingError("'fusion' must be an object")
    fusion: dict[tuple[str, str], dict[str, int]] = {}
    for key, prod in doc["fusion"].items():
        a, sep, b = key.partition("|")
        if not sep or "|" in b:
            raise RingError(f"fusion key {key!r} is not of the form 'a|b'")
        if not isinstance(prod, Mapping):
            raise RingError(f"fusion value for {key!r} must be an object")
        fusion[(a, b)] = dict(prod)
    dual = doc.get("dual")
    if dual is not None and not isinstance(dual, Mapping):
        raise RingError("'dual' must be an object")
    return TableRing(str(doc["name"]), simples, str(doc["unit"]), fusion, dual)


def resolve_ring(spec: str) -> FusionRing:
    """``"su2"`` gives the built-in ring; anything else is read as a ring-table path."""
    if spec == "su2":
        return su2_ring()
    return load_ring(Path(spec))
