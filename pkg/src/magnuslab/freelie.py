"""Free Lie algebra over Z on letters 1..n, coordinatized by Lyndon words.

A Lyndon word is a nonempty word strictly smaller than all of its proper
rotations; the bracketings attached to Lyndon words by iterated standard
factorization form a Z-basis of the free Lie algebra in each degree.
Conversion to and from the free associative algebra is triangular with unit
diagonal, which is what makes exact integer round-trips possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .intlinalg import IntMatrix, QuotientInvariants, quotient_invariants

__all__ = [
    "NotLieElementError",
    "LyndonBasisElement",
    "LieElement",
    "AssocPoly",
    "is_lyndon",
    "lyndon_words",
    "lyndon_basis",
    "standard_factorization",
    "witt_rank",
    "bracket",
    "lie_to_assoc",
    "assoc_to_lie",
    "ideal_graded_span",
    "graded_quotient",
]

Monomial = tuple[int, ...]


class NotLieElementError(ValueError):
    """Raised when an associative polynomial is not a Lie element."""


def is_lyndon(word: Monomial) -> bool:
    """True if ``word`` is strictly smaller than all its proper rotations."""
    if not word:
        return False
    return all(word < word[i:] + word[:i] for i in range(1, len(word)))


def lyndon_words(n: int, c: int) -> Iterator[Monomial]:
    """Yield the Lyndon words of length exactly ``c`` over 1..n, in lex order.

    Duval's algorithm: extend the current word periodically to the length
    cap, strip trailing maximal letters, increment.  Each word is produced
    in amortized constant time.
    """
    if n < 1:
        raise ValueError("alphabet size must be >= 1")
    if c < 1:
        raise ValueError("degree must be >= 1")
    w = [1]
    while w:
        if len(w) == c:
            yield tuple(w)
        w = [w[i % len(w)] for i in range(c)]
        while w and w[-1] == n:
            w.pop()
        if w:
            w[-1] += 1


@lru_cache(maxsize=None)
def _std_fact(word: Monomial) -> tuple[Monomial, Monomial]:
    # Standard factorization w = u v with v the lexicographically smallest
    # proper suffix (equivalently the longest proper Lyndon suffix).
    best = 1
    for i in range(2, len(word)):
        if word[i:] < word[best:]:
            best = i
    return word[:best], word[best:]


def standard_factorization(word: Monomial) -> tuple[Monomial, Monomial]:
    """Split a Lyndon word of length >= 2 into its standard factors."""
    if len(word) < 2:
        raise ValueError("standard factorization needs length >= 2")
    if not is_lyndon(word):
        raise ValueError(f"{word!r} is not a Lyndon word")
    return _std_fact(word)


@dataclass(frozen=True)
class LyndonBasisElement:
    """A Lyndon word together with its bracketing, one basis vector."""

    word: Monomial

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def bracketing(self):
        """Nested-pair form of the standard bracketing, letters at leaves."""
        if len(self.word) == 1:
            return self.word[0]
        u, v = _std_fact(self.word)
        return (LyndonBasisElement(u).bracketing, LyndonBasisElement(v).bracketing)

    def __str__(self) -> str:
        return "".join(str(a) for a in self.word)


def lyndon_basis(n: int, c: int) -> list[LyndonBasisElement]:
    """Basis of degree ``c`` in the free Lie algebra on 1..n, in lex order."""
    return [LyndonBasisElement(w) for w in lyndon_words(n, c)]


def _divisors(k: int) -> list[int]:
    out = []
    i = 1
    while i * i <= k:
        if k % i == 0:
            out.append(i)
            if i != k // i:
                out.append(k // i)
        i += 1
    return sorted(out)


def _mobius(k: int) -> int:
    if k == 1:
        return 1
    mu, p = 1, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            mu = -mu
        p += 1
    if k > 1:
        mu = -mu
    return mu


def witt_rank(n: int, c: int) -> int:
    """Necklace count (1/c) sum_{d | c} mobius(d) n^(c/d)."""
    if n < 1 or c < 1:
        raise ValueError("witt_rank needs n >= 1 and c >= 1")
    total = sum(_mobius(d) * n ** (c // d) for d in _divisors(c))
    assert total % c == 0
    return total // c


def _term_str(word: Monomial, coeff: int) -> str:
    w = "".join(str(a) for a in word)
    if coeff == 1:
        return w
    if coeff == -1:
        return f"-{w}"
    return f"{coeff}*{w}"


class LieElement:
    """Z-linear combination of Lyndon basis elements, any mix of degrees."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, int] | None = None):
        self.n = n
        clean: dict[Monomial, int] = {}
        if terms:
            for w, coeff in terms.items():
                if not coeff:
                    continue
                if not is_lyndon(w):
                    raise ValueError(f"{w!r} is not a Lyndon word")
                if max(w) > n:
                    raise ValueError(f"letter out of range in {w!r}")
                clean[w] = coeff
        self.terms = clean

    @classmethod
    def _make(cls, n: int, terms: dict[Monomial, int]) -> "LieElement":
        # internal constructor, caller guarantees keys are Lyndon and clean
        out = cls.__new__(cls)
        out.n = n
        out.terms = terms
        return out

    @classmethod
    def zero(cls, n: int) -> "LieElement":
        return cls._make(n, {})

    @classmethod
    def letter(cls, n: int, i: int) -> "LieElement":
        if not (1 <= i <= n):
            raise ValueError(f"letter {i} out of range 1..{n}")
        return cls._make(n, {(i,): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def homogeneous_component(self, c: int) -> "LieElement":
        return LieElement._make(self.n, {w: v for w, v in self.terms.items() if len(w) == c})

    def _binop(self, other: "LieElement", sign: int) -> "LieElement":
        if not isinstance(other, LieElement):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("alphabet size mismatch")
        out = dict(self.terms)
        for w, v in other.terms.items():
            nv = out.get(w, 0) + sign * v
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
        return LieElement._make(self.n, out)

    def __add__(self, other):
        return self._binop(other, 1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return LieElement._make(self.n, {w: -v for w, v in self.terms.items()})

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return LieElement.zero(self.n)
        return LieElement._make(self.n, {w: k * v for w, v in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = [_term_str(w, v) for w, v in sorted(self.terms.items())]
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LieElement(n={self.n}, {{{', '.join(f'{w}: {v}' for w, v in sorted(self.terms.items()))}}})"


class AssocPoly:
    """Polynomial in the free associative algebra on 1..n, monomials as tuples."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, int] | None = None):
        self.n = n
        clean: dict[Monomial, int] = {}
        if terms:
            for m, coeff in terms.items():
                if not coeff:
                    continue
                if m and max(m) > n:
                    raise ValueError(f"letter out of range in {m!r}")
                clean[m] = coeff
        self.terms = clean

    @classmethod
    def _make(cls, n: int, terms: dict[Monomial, int]) -> "AssocPoly":
        out = cls.__new__(cls)
        out.n = n
        out.terms = terms
        return out

    @classmethod
    def zero(cls, n: int) -> "AssocPoly":
        return cls._make(n, {})

    @classmethod
    def letter(cls, n: int, i: int) -> "AssocPoly":
        if not (1 <= i <= n):
            raise ValueError(f"letter {i} out of range 1..{n}")
        return cls._make(n, {(i,): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def homogeneous_component(self, c: int) -> "AssocPoly":
        return AssocPoly._make(self.n, {m: v for m, v in self.terms.items() if len(m) == c})

    def _binop(self, other: "AssocPoly", sign: int) -> "AssocPoly":
        if not isinstance(other, AssocPoly):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("alphabet size mismatch")
        out = dict(self.terms)
        for m, v in other.terms.items():
            nv = out.get(m, 0) + sign * v
            if nv:
                out[m] = nv
            else:
                out.pop(m, None)
        return AssocPoly._make(self.n, out)

    def __add__(self, other):
        return self._binop(other, 1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return AssocPoly._make(self.n, {m: -v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.__rmul__(other)
        if not isinstance(other, AssocPoly):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("alphabet size mismatch")
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = m1 + m2
                nv = out.get(key, 0) + c1 * c2
                if nv:
                    out[key] = nv
                else:
                    del out[key]
        return AssocPoly._make(self.n, out)

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return AssocPoly.zero(self.n)
        return AssocPoly._make(self.n, {m: k * v for m, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, AssocPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"AssocPoly(n={self.n}, {len(self.terms)} terms)"


def _dict_submul(r: dict[Monomial, int], p: Mapping[Monomial, int], q: int) -> None:
    # r -= q * p, dropping zeros
    get = r.get
    for m, v in p.items():
        nv = get(m, 0) - q * v
        if nv:
            r[m] = nv
        else:
            r.pop(m, None)


@lru_cache(maxsize=None)
def _bracket_poly(word: Monomial) -> Mapping[Monomial, int]:
    """Associative expansion of the standard bracketing of a Lyndon word.

    The result is triangular: the smallest monomial is ``word`` itself with
    coefficient exactly 1.  That unit diagonal is asserted here because all
    of assoc_to_lie leans on it.
    """
    if len(word) == 1:
        return {word: 1}
    u, v = _std_fact(word)
    pu, pv = _bracket_poly(u), _bracket_poly(v)
    out: dict[Monomial, int] = {}
    for m1, c1 in pu.items():
        for m2, c2 in pv.items():
            c = c1 * c2
            key = m1 + m2
            nv = out.get(key, 0) + c
            if nv:
                out[key] = nv
            else:
                del out[key]
            key = m2 + m1
            nv = out.get(key, 0) - c
            if nv:
                out[key] = nv
            else:
                del out[key]
    assert min(out) == word and out[word] == 1
    return out


def lie_to_assoc(e: LieElement) -> AssocPoly:
    """Image of a Lie element in the free associative algebra."""
    out: dict[Monomial, int] = {}
    for w, coeff in e.terms.items():
        _dict_submul(out, _bracket_poly(w), -coeff)
    return AssocPoly._make(e.n, out)


def assoc_to_lie(p: AssocPoly, c: int) -> LieElement:
    """Lyndon coordinates of a homogeneous degree-``c`` Lie element.

    Back-substitution against the triangular expansion: repeatedly read off
    the minimal monomial, which must be Lyndon, and subtract that multiple
    of its bracketing.  Raises NotLieElementError if the input is not in the
    Lie subspace.
    """
    if p.is_zero():
        return LieElement.zero(p.n)
    if any(len(m) != c for m in p.terms):
        raise ValueError(f"polynomial is not homogeneous of degree {c}")
    rem = dict(p.terms)
    out: dict[Monomial, int] = {}
    while rem:
        m = min(rem)
        if not is_lyndon(m):
            raise NotLieElementError(f"minimal monomial {m!r} is not a Lyndon word")
        coeff = rem[m]
        out[m] = coeff
        _dict_submul(rem, _bracket_poly(m), coeff)
    return LieElement._make(p.n, out)


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """Lie bracket [a, b], computed through the associative embedding."""
    if a.n != b.n:
        raise ValueError("alphabet size mismatch")
    pa, pb = lie_to_assoc(a), lie_to_assoc(b)
    p = pa * pb - pb * pa
    comps: dict[int, dict[Monomial, int]] = {}
    for m, v in p.terms.items():
        comps.setdefault(len(m), {})[m] = v
    out = LieElement.zero(a.n)
    for d, terms in comps.items():
        out = out + assoc_to_lie(AssocPoly._make(a.n, terms), d)
    return out


def _letter_commutator(terms: Mapping[Monomial, int], i: int) -> dict[Monomial, int]:
    # associative [p, x_i] = p*x_i - x_i*p
    out: dict[Monomial, int] = {}
    for m, v in terms.items():
        key = m + (i,)
        nv = out.get(key, 0) + v
        if nv:
            out[key] = nv
        else:
            del out[key]
        key = (i,) + m
        nv = out.get(key, 0) - v
        if nv:
            out[key] = nv
        else:
            del out[key]
    return out


def ideal_graded_span(gens: list[LieElement], c: int) -> IntMatrix:
    """Degree-``c`` span of the Lie ideal generated by ``gens``.

    Rows are the Lyndon coordinates of [g, x_{i_1}, ..., x_{i_m}] for every
    generator g and every letter tuple filling the degree up to ``c``
    (left-normed, letters in lex order).  By the Jacobi identity these
    left-normed multiples span the ideal in each degree.  Generators of
    degree > c contribute nothing and are skipped.
    """
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("alphabet size mismatch among generators")
    basis = list(lyndon_words(n, c))
    col = {w: j for j, w in enumerate(basis)}
    rows: list[dict[int, int]] = []
    for g in gens:
        if g.is_zero():
            continue
        d = g.degree()
        if d > c:
            continue
        level: list[Mapping[Monomial, int]] = [lie_to_assoc(g).terms]
        for _ in range(c - d):
            level = [_letter_commutator(t, i) for t in level for i in range(1, n + 1)]
        for t in level:
            e = assoc_to_lie(AssocPoly._make(n, dict(t)), c)
            rows.append({col[w]: v for w, v in e.terms.items()})
    return IntMatrix.from_rows(rows, len(basis))


def graded_quotient(n: int, gens: list[LieElement], c: int) -> QuotientInvariants:
    """Invariants of (degree-``c`` part of free Lie algebra) / (ideal span)."""
    span = ideal_graded_span(gens, c) if gens else IntMatrix.zeros(0, witt_rank(n, c))
    return quotient_invariants(span, witt_rank(n, c))
