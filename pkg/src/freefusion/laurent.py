"""Exact multivariate Laurent polynomials over the integers.

A :class:`LaurentPoly` is a finitely supported map from integer exponent
vectors to nonzero integers. Every polynomial carries the tuple of its
variable names; arithmetic is only defined between polynomials over the same
names (plain ``int`` operands are promoted to constants).

Coefficients are Python ints, so nothing ever wraps around.

The module also holds quantum integers and the genericity classifier for loop
parameters ``a = t + 1/t``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Number = Union[int, "LaurentPoly"]


def t_names(m: int) -> tuple[str, ...]:
    """Variable names for the quantum parameters t_1..t_m (bare ``t`` when m == 1)."""
    return ("t",) if m == 1 else tuple(f"t{j}" for j in range(1, m + 1))


def a_names(m: int) -> tuple[str, ...]:
    """Variable names for the loop parameters a_1..a_m (bare ``a`` when m == 1)."""
    return ("a",) if m == 1 else tuple(f"a{j}" for j in range(1, m + 1))


class LaurentPoly:
    __slots__ = ("names", "_terms", "_hash")

    def __init__(self, names: Sequence[str], terms: Mapping[Exponent, int] | None = None):
        self.names: tuple[str, ...] = tuple(names)
        nvars = len(self.names)
        clean: dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not match variables {self.names}")
            if not isinstance(c, int):
                raise TypeError(f"coefficient {c!r} is not an integer")
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if clean[exp] == 0:
                    del clean[exp]
        self._terms = clean
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, names: Sequence[str], c: int) -> LaurentPoly:
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def zero(cls, names: Sequence[str]) -> LaurentPoly:
        return cls(names)

    @classmethod
    def one(cls, names: Sequence[str]) -> LaurentPoly:
        return cls.constant(names, 1)

    @classmethod
    def monomial(cls, names: Sequence[str], exp: Sequence[int], c: int = 1) -> LaurentPoly:
        return cls(names, {tuple(exp): c})

    @classmethod
    def variable(cls, names: Sequence[str], j: int, power: int = 1) -> LaurentPoly:
        """The monomial ``names[j] ** power`` (``j`` is 0-based)."""
        exp = [0] * len(names)
        exp[j] = power
        return cls(names, {tuple(exp): 1})

    @classmethod
    def gens(cls, names: Sequence[str]) -> tuple[LaurentPoly, ...]:
        return tuple(cls.variable(names, j) for j in range(len(names)))

    # -- container protocol ------------------------------------------------

    def terms(self) -> list[tuple[Exponent, int]]:
        """Terms in canonical order: exponent vectors descending lexicographically."""
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    def coefficient(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0,) * len(self.names)}

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * len(self.names), 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.names == other.names and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.names, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: Number) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.names != self.names:
                raise ValueError(f"variable mismatch: {self.names} vs {other.names}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.names, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other: Number) -> LaurentPoly:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, 0) + c
        return LaurentPoly(self.names, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.names, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Number) -> LaurentPoly:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: Number) -> LaurentPoly:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.names, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial() or next(iter(self._terms.values())) not in (1, -1):
                raise ArithmeticError("negative powers exist only for monomials with unit coefficient")
            (exp, c), = self._terms.items()
            # c is +-1, so c**-k == c**k
            return LaurentPoly(self.names, {tuple(e * k for e in exp): c ** (-k)})
        result = LaurentPoly.one(self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divide_exact(self, other: Number) -> LaurentPoly:
        """Return ``q`` with ``q * other == self``; raise ``ArithmeticError`` if none exists.

        Both operands are shifted into honest polynomials (the divisor with no
        monomial factor) and divided in lex order. A Laurent quotient, when it
        exists, is then a polynomial, and single-divisor lex division finds it.
        """
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return self
        nv = len(self.names)
        d_shift = tuple(min(e[i] for e in other._terms) for i in range(nv))
        n_shift = tuple(min(e[i] for e in self._terms) for i in range(nv))
        den = {tuple(a - s for a, s in zip(e, d_shift)): c for e, c in other._terms.items()}
        rem = {tuple(a - s for a, s in zip(e, n_shift)): c for e, c in self._terms.items()}
        lead_e = max(den)
        lead_c = den[lead_e]
        quot: dict[Exponent, int] = {}
        while rem:
            re_ = max(rem)
            rc = rem[re_]
            qe = tuple(a - b for a, b in zip(re_, lead_e))
            if min(qe) < 0 or rc % lead_c:
                raise ArithmeticError(f"{self} is not divisible by {other}")
            qc = rc // lead_c
            quot[qe] = qc
            for e, c in den.items():
                k = tuple(a + b for a, b in zip(qe, e))
                v = rem.get(k, 0) - qc * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        shift = tuple(a - b for a, b in zip(n_shift, d_shift))
        return LaurentPoly(self.names, {tuple(a + s for a, s in zip(e, shift)): c for e, c in quot.items()})

    # -- evaluation and substitution -------------------------------------

    def eval_at(self, point: Sequence[complex]) -> complex:
        """Numerically substitute ``point[j]`` for the j-th variable."""
        if len(point) != len(self.names):
            raise ValueError(f"expected {len(self.names)} coordinates, got {len(point)}")
        total = 0j
        for exp, c in self._terms.items():
            term = complex(c)
            for x, e in zip(point, exp):
                term *= complex(x) ** e
            total += term
        return total

    def substitute(self, images: Sequence[LaurentPoly]) -> LaurentPoly:
        """Replace variable j by ``images[j]``; all images share one target ring.

        Negative exponents are only allowed where the image is an invertible monomial.
        """
        if len(images) != len(self.names):
            raise ValueError("one image per variable required")
        target = images[0].names if images else ()
        result = LaurentPoly.zero(target)
        for exp, c in self._terms.items():
            term = LaurentPoly.constant(target, c)
            for img, e in zip(images, exp):
                if e:
                    term = term * img ** e
            result = result + term
        return result

    # -- text form ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for i, (exp, c) in enumerate(self.terms()):
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, exp) if e]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.names!r}, {str(self)!r})"

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> LaurentPoly:
        """Parse the canonical text form (and anything spelled with the same grammar)."""
        names = tuple(names)
        index = {n: i for i, n in enumerate(names)}
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        result: dict[Exponent, int] = {}
        for sign, body in _split_terms(s):
            coeff = sign
            exp = [0] * len(names)
            for factor in body.split("*"):
                if not factor:
                    raise ValueError(f"malformed term {body!r} in {text!r}")
                if factor.lstrip("-").isdigit():
                    coeff *= int(factor)
                    continue
                name, _, power = factor.partition("^")
                if name not in index:
                    raise ValueError(f"unknown variable {name!r} in {text!r}")
                try:
                    exp[index[name]] += int(power) if power else 1
                except ValueError:
                    raise ValueError(f"bad exponent in {factor!r}") from None
            key = tuple(exp)
            result[key] = result.get(key, 0) + coeff
        return cls(names, result)


def _split_terms(s: str) -> Iterable[tuple[int, str]]:
    # '-' right after '^' belongs to an exponent, not a term boundary.
    sign = 1
    start = 0
    i = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = i = 1
    while i < len(s):
        ch = s[i]
        if ch in "+-" and i > start and s[i - 1] != "^":
            yield sign, s[start:i]
            sign = -1 if ch == "-" else 1
            start = i + 1
        i += 1
    if start >= len(s):
        raise ValueError(f"dangling sign in {s!r}")
    yield sign, s[start:]


def quantum_int(n: int, j: int = 0, names: Sequence[str] = ("t",)) -> LaurentPoly:
    """[n] in the j-th variable: t^(n-1) + t^(n-3) + ... + t^(1-n); [0] = 0."""
    if n < 0:
        raise ValueError("quantum integers are defined here for n >= 0")
    nv = len(names)
    terms = {}
    for i in range(n):
        exp = [0] * nv
        exp[j] = n - 1 - 2 * i
        terms[tuple(exp)] = 1
    return LaurentPoly(names, terms)


# -- genericity of loop parameters --------------------------------------------


@dataclass(frozen=True)
class RationalAngle:
    """The parameter a = 2 cos(pi * p / q)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError("denominator must be >= 1")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not in lowest terms")

    @property
    def value(self) -> float:
        return 2.0 * math.cos(math.pi * self.p / self.q)

    def __str__(self) -> str:
        return f"2cos(pi*{self.p}/{self.q})"


@dataclass(frozen=True)
class NumericParam:
    value: float
    tolerance: float = 1e-9

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    def __str__(self) -> str:
        return repr(self.value)


ParamSpec = Union[RationalAngle, NumericParam]


class Verdict(str, Enum):
    GENERIC = "Generic"
    NON_GENERIC = "NonGeneric"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Genericity:
    verdict: Verdict
    witness: int | None = None
    horizon: int | None = None
    exact: bool = False

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": self.witness,
            "horizon": self.horizon,
            "exact": self.exact,
        }


def parse_param(text: str, tolerance: float = 1e-9) -> ParamSpec:
    """``cos:p/q`` (or ``cos:p``) gives an exact angle; anything else is a float."""
    text = text.strip()
    if text.startswith("cos:"):
        body = text[4:]
        p, _, q = body.partition("/")
        p_i, q_i = int(p), int(q) if q else 1
        g = math.gcd(p_i, q_i)
        return RationalAngle(p_i // g, q_i // g)
    return NumericParam(float(text), tolerance)


def is_generic(param: ParamSpec, horizon: int = 64) -> Genericity:
    """Decide whether ``1 + t^2 + ... + t^(2n)`` avoids zero, where ``a = t + 1/t``.

    For an exact angle ``p/q`` the answer is exact: with ``t = exp(i pi p/q)``
    the sum vanishes iff ``t^(2(n+1)) == 1`` and ``t^2 != 1``, i.e. iff ``q``
    divides ``n + 1``, so the least witness is ``q - 1``.

    Numeric parameters are tested term by term up to ``horizon`` only; a
    Generic answer there means "no zero found up to horizon".
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if isinstance(param, RationalAngle):
        if param.q == 1:
            return Genericity(Verdict.GENERIC, exact=True)
        return Genericity(Verdict.NON_GENERIC, witness=param.q - 1, exact=True)

    a = complex(param.value)
    disc = cmath.sqrt(a * a - 4)
    t = (a + disc) / 2
    if abs(t) > 1:
        # t and 1/t give the same vanishing pattern; the small root avoids overflow.
        t = 1 / t
    t2 = t * t
    power = 1 + 0j
    total = 1 + 0j
    closest = math.inf
    for n in range(1, horizon + 1):
        power *= t2
        total += power
        mag = abs(total)
        if mag < param.tolerance:
            return Genericity(Verdict.NON_GENERIC, witness=n, horizon=horizon)
        closest = min(closest, mag)
    if closest < 1e3 * param.tolerance:
        return Genericity(Verdict.UNKNOWN, horizon=horizon)
    return Genericity(Verdict.GENERIC, horizon=horizon)
