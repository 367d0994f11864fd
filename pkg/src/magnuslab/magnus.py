"""Truncated Magnus expansions of free-group words.

The Magnus map sends the generator x_i of a free group to 1 + X_i in the
free associative algebra; expanding a word and truncating above degree D
gives an exact integer series.  The depth of the first nonconstant term
detects the lower central series, and its degree component is a Lie element
whenever the series is group-like, which is what ``leading_lie`` extracts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import freelie
from .freelie import AssocPoly, LieElement

__all__ = [
    "NonUnitError",
    "IdentityAtTruncationError",
    "IDENTITY_AT_TRUNCATION",
    "Word",
    "commutator",
    "left_normed_commutator",
    "TruncSeries",
    "expand",
    "mul",
    "inv",
    "lcs_depth",
    "leading_lie",
]

Monomial = tuple[int, ...]


class NonUnitError(ValueError):
    """Raised for series whose constant term is not 1 where 1 is required."""


class IdentityAtTruncationError(ValueError):
    """Raised when an operation needs a leading term but the series is 1."""


class _IdentityAtTruncation:
    """Sentinel depth: the series is 1 up to the truncation order.

    Deliberately not comparable with integers, so that a forgotten sentinel
    check fails loudly instead of computing with a fake depth.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "IDENTITY_AT_TRUNCATION"


IDENTITY_AT_TRUNCATION = _IdentityAtTruncation()


def _reduce_syllables(items: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for i, e in items:
        if i < 1:
            raise ValueError(f"letter index {i} must be >= 1")
        if not e:
            continue
        if out and out[-1][0] == i:
            out[-1][1] += e
            if not out[-1][1]:
                out.pop()
        else:
            out.append([i, e])
    return tuple((i, e) for i, e in out)


@dataclass(frozen=True)
class Word:
    """Freely reduced word in a free group, as (letter, exponent) syllables."""

    syllables: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_syllables(cls, items: Iterable[tuple[int, int]]) -> "Word":
        return cls(_reduce_syllables(items))

    @classmethod
    def from_signed(cls, letters: Iterable[int]) -> "Word":
        # letters as signed indices: +i for x_i, -i for its inverse
        return cls.from_syllables((abs(s), 1 if s > 0 else -1) for s in letters)

    @classmethod
    def gen(cls, i: int, e: int = 1) -> "Word":
        return cls.from_syllables([(i, e)])

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    def is_identity(self) -> bool:
        return not self.syllables

    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def max_letter(self) -> int:
        return max((i for i, _ in self.syllables), default=0)

    def signed(self) -> tuple[int, ...]:
        out: list[int] = []
        for i, e in self.syllables:
            out.extend([i if e > 0 else -i] * abs(e))
        return tuple(out)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word.from_syllables(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(tuple((i, -e) for i, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "Word":
        if k == 0:
            return Word.identity()
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in self.syllables)


def commutator(a: Word, b: Word) -> Word:
    """Group commutator (a, b) = a^-1 b^-1 a b."""
    return a.inverse() * b.inverse() * a * b


def left_normed_commutator(ws: Sequence[Word]) -> Word:
    """((...(w1, w2), w3), ..., wk); a single word is returned as is."""
    if not ws:
        raise ValueError("need at least one word")
    out = ws[0]
    for w in ws[1:]:
        out = commutator(out, w)
    return out


class TruncSeries:
    """Element of the free associative algebra truncated above degree D.

    ``terms`` maps monomials (tuples of letters) to integer coefficients,
    constant term included under the empty tuple.  All operations stay at a
    fixed (n, trunc); mixing parameters raises ValueError.
    """

    __slots__ = ("n", "trunc", "terms")

    def __init__(self, n: int, trunc: int, terms: Mapping[Monomial, int] | None = None):
        if n < 1:
            raise ValueError("alphabet size must be >= 1")
        if trunc < 0:
            raise ValueError("truncation order must be >= 0")
        self.n = n
        self.trunc = trunc
        clean: dict[Monomial, int] = {}
        if terms:
            for m, c in terms.items():
                if not c or len(m) > trunc:
                    continue
                if m and (max(m) > n or min(m) < 1):
                    raise ValueError(f"letter out of range in {m!r}")
                clean[m] = c
        self.terms = clean

    @classmethod
    def _make(cls, n: int, trunc: int, terms: dict[Monomial, int]) -> "TruncSeries":
        out = cls.__new__(cls)
        out.n = n
        out.trunc = trunc
        out.terms = terms
        return out

    @classmethod
    def one(cls, n: int, trunc: int) -> "TruncSeries":
        return cls(n, trunc, {(): 1})

    @classmethod
    def zero(cls, n: int, trunc: int) -> "TruncSeries":
        return cls(n, trunc, {})

    def constant(self) -> int:
        return self.terms.get((), 0)

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous_component(self, c: int) -> AssocPoly:
        if c > self.trunc:
            raise ValueError(f"degree {c} exceeds truncation {self.trunc}")
        return AssocPoly(self.n, {m: v for m, v in self.terms.items() if len(m) == c})

    def _binop(self, other: "TruncSeries", sign: int) -> "TruncSeries":
        _check_compat(self, other)
        out = dict(self.terms)
        for m, v in other.terms.items():
            nv = out.get(m, 0) + sign * v
            if nv:
                out[m] = nv
            else:
                out.pop(m, None)
        return TruncSeries._make(self.n, self.trunc, out)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self._binop(other, 1)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self._binop(other, -1)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.n, self.trunc) == (other.n, other.trunc) and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.trunc, frozenset(self.terms.items())))

    def __repr__(self):
        return f"TruncSeries(n={self.n}, trunc={self.trunc}, {len(self.terms)} terms)"


def _check_compat(s: TruncSeries, t: TruncSeries) -> None:
    if s.n != t.n or s.trunc != t.trunc:
        raise ValueError(
            f"parameter mismatch: (n={s.n}, trunc={s.trunc}) vs (n={t.n}, trunc={t.trunc})"
        )


def mul(s: TruncSeries, t: TruncSeries) -> TruncSeries:
    """Product of two series at the same (n, trunc), truncating the result."""
    _check_compat(s, t)
    trunc = s.trunc
    by_deg: list[list[tuple[Monomial, int]]] = [[] for _ in range(trunc + 1)]
    for m, v in t.terms.items():
        by_deg[len(m)].append((m, v))
    out: dict[Monomial, int] = {}
    get = out.get
    for m1, c1 in s.terms.items():
        room = trunc - len(m1)
        for d in range(room + 1):
            for m2, c2 in by_deg[d]:
                key = m1 + m2
                nv = get(key, 0) + c1 * c2
                if nv:
                    out[key] = nv
                else:
                    del out[key]
    return TruncSeries._make(s.n, trunc, out)


def _letter_series(i: int, e: int, n: int, trunc: int) -> TruncSeries:
    # (1 + X_i)^e expanded with generalized binomial coefficients; exact for
    # negative e as well, e.g. e = -1 gives 1 - X_i + X_i^2 - ...
    if not (1 <= i <= n):
        raise ValueError(f"letter {i} out of range 1..{n}")
    terms: dict[Monomial, int] = {(): 1}
    coeff = 1
    for k in range(1, trunc + 1):
        coeff = coeff * (e - k + 1) // k
        if coeff == 0:
            break
        terms[(i,) * k] = coeff
    return TruncSeries._make(n, trunc, terms)


def expand(w: Word, n: int, trunc: int) -> TruncSeries:
    """Magnus expansion of ``w`` under x_i -> 1 + X_i, truncated at ``trunc``."""
    if w.max_letter() > n:
        raise ValueError(f"word uses letter {w.max_letter()} but n = {n}")
    s = TruncSeries.one(n, trunc)
    for i, e in w.syllables:
        s = mul(s, _letter_series(i, e, n, trunc))
    return s


def inv(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse of a series with constant term 1."""
    if s.constant() != 1:
        raise NonUnitError(f"constant term is {s.constant()}, expected 1")
    # geometric series in u = 1 - s, which has no constant term
    u = TruncSeries._make(s.n, s.trunc, {m: -v for m, v in s.terms.items() if m})
    acc = TruncSeries.one(s.n, s.trunc)
    power = TruncSeries.one(s.n, s.trunc)
    for _ in range(s.trunc):
        power = mul(power, u)
        if power.is_zero():
            break
        acc = acc + power
    return acc


def lcs_depth(s: TruncSeries):
    """Least degree of a nonconstant term, or the identity sentinel.

    The name reflects what the depth measures for expanded group words: a
    word lies in the k-th lower central series term exactly when its
    expansion is 1 up to degree k - 1.
    """
    if s.constant() != 1:
        raise NonUnitError(f"constant term is {s.constant()}, expected 1")
    depth = min((len(m) for m in s.terms if m), default=None)
    if depth is None:
        return IDENTITY_AT_TRUNCATION
    return depth


def leading_lie(s: TruncSeries) -> tuple[int, LieElement]:
    """Depth and Lyndon coordinates of the lowest-degree component.

    Raises IdentityAtTruncationError on the sentinel and NotLieElementError
    if the leading component is not primitive (not a Lie element), which for
    expansions of group words signals a bug in the caller.
    """
    depth = lcs_depth(s)
    if depth is IDENTITY_AT_TRUNCATION:
        raise IdentityAtTruncationError("series is the identity at this truncation")
    comp = s.homogeneous_component(depth)
    return depth, freelie.assoc_to_lie(comp, depth)
