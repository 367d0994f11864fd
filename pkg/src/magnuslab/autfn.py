"""IA-automorphisms of a free group, truncated to finite Magnus degree.

An IA-endomorphism is stored by the expansions of its generator images,
which are series of the shape 1 + X_i + (degree >= 2).  Composition is
substitution of series into series, inversion is degree-by-degree lifting,
and the Johnson invariants read off the lowest nontrivial degree of
phi(x_i) x_i^-1.

Words in known automorphisms are much cheaper to handle exactly on the
group side, so the module also carries WordAut: an automorphism given by
image words together with the image words of its inverse.  Applying a
WordAut is free-group substitution with free reduction, and expanding the
resulting image words recovers the same truncated series as composing the
series would, at a fraction of the cost.
"""

from __future__ import annotations

from typing import Sequence

from . import freelie, magnus
from .freelie import LieElement
from .magnus import (
    IDENTITY_AT_TRUNCATION,
    IdentityAtTruncationError,
    TruncSeries,
    Word,
    expand,
    lcs_depth,
    mul,
)

__all__ = [
    "IAEndo",
    "identity_endo",
    "chi",
    "chi3",
    "inner",
    "compose",
    "invert",
    "aut_commutator",
    "apply_to_series",
    "johnson_depth",
    "johnson_image",
    "WordAut",
    "WordLengthError",
]

Monomial = tuple[int, ...]


class IAEndo:
    """Tuple of truncated generator images, constant 1 and linear part X_i."""

    __slots__ = ("n", "trunc", "images")

    def __init__(self, n: int, trunc: int, images: Sequence[TruncSeries]):
        if len(images) != n:
            raise ValueError(f"expected {n} images, got {len(images)}")
        if trunc < 1:
            raise ValueError("truncation order must be >= 1 for IA data")
        for i, s in enumerate(images, start=1):
            if s.n != n or s.trunc != trunc:
                raise ValueError(f"image {i} has parameters (n={s.n}, trunc={s.trunc})")
            if s.constant() != 1:
                raise ValueError(f"image {i} has constant term {s.constant()}")
            linear = {m: v for m, v in s.terms.items() if len(m) == 1}
            if linear != {(i,): 1}:
                raise ValueError(f"image {i} has linear part {linear}, expected X_{i}")
        self.n = n
        self.trunc = trunc
        self.images = tuple(images)

    def __eq__(self, other):
        if not isinstance(other, IAEndo):
            return NotImplemented
        return (self.n, self.trunc, self.images) == (other.n, other.trunc, other.images)

    def __hash__(self):
        return hash((self.n, self.trunc, self.images))

    def __repr__(self):
        return f"IAEndo(n={self.n}, trunc={self.trunc})"


def _gen_series(i: int, n: int, trunc: int) -> TruncSeries:
    return TruncSeries(n, trunc, {(): 1, (i,): 1})


def identity_endo(n: int, trunc: int) -> IAEndo:
    return IAEndo(n, trunc, [_gen_series(i, n, trunc) for i in range(1, n + 1)])


def _endo_from_words(words: Sequence[Word], n: int, trunc: int) -> IAEndo:
    return IAEndo(n, trunc, [expand(w, n, trunc) for w in words])


def chi(i: int, j: int, n: int, trunc: int) -> IAEndo:
    """x_i -> x_j^-1 x_i x_j, other generators fixed."""
    return WordAut.chi(i, j, n).to_endo(trunc)


def chi3(i: int, j: int, k: int, n: int, trunc: int) -> IAEndo:
    """x_i -> x_i (x_j^-1, x_k^-1), other generators fixed; needs j < k."""
    return WordAut.chi3(i, j, k, n).to_endo(trunc)


def inner(g: Word, n: int, trunc: int) -> IAEndo:
    """Conjugation x -> g x g^-1 by a fixed word g."""
    if g.max_letter() > n:
        raise ValueError(f"conjugator uses letter {g.max_letter()} but n = {n}")
    s = expand(g, n, trunc)
    si = expand(g.inverse(), n, trunc)
    images = [mul(mul(s, _gen_series(i, n, trunc)), si) for i in range(1, n + 1)]
    return IAEndo(n, trunc, images)


def _substitute(target: TruncSeries, deltas: Sequence[TruncSeries]) -> TruncSeries:
    """Apply the algebra endomorphism X_j -> deltas[j-1] to ``target``.

    Monomials are processed in lex order and the partial products of each
    prefix are kept on a stack, so shared prefixes are multiplied out once.
    Each delta must have zero constant term; then the image of a degree-d
    monomial has valuation d and the truncation cuts the work down.
    """
    n, trunc = target.n, target.trunc
    out: dict[Monomial, int] = {}
    const = target.terms.get((), 0)
    if const:
        out[()] = const
    stack = [TruncSeries.one(n, trunc)]
    prev: Monomial = ()
    for mono in sorted(m for m in target.terms if m):
        coeff = target.terms[mono]
        k = 0
        while k < len(prev) and k < len(mono) and prev[k] == mono[k]:
            k += 1
        del stack[k + 1 :]
        for pos in range(k, len(mono)):
            stack.append(mul(stack[pos], deltas[mono[pos] - 1]))
        get = out.get
        for m, v in stack[len(mono)].terms.items():
            nv = get(m, 0) + coeff * v
            if nv:
                out[m] = nv
            else:
                del out[m]
        prev = mono
    return TruncSeries._make(n, trunc, out)


def _deltas(phi: IAEndo) -> list[TruncSeries]:
    return [
        TruncSeries._make(phi.n, phi.trunc, {m: v for m, v in s.terms.items() if m})
        for s in phi.images
    ]


def apply_to_series(phi: IAEndo, s: TruncSeries) -> TruncSeries:
    """Image of a series under the algebra endomorphism induced by phi."""
    if s.n != phi.n or s.trunc != phi.trunc:
        raise ValueError("series parameters do not match the endomorphism")
    return _substitute(s, _deltas(phi))


def compose(phi: IAEndo, psi: IAEndo) -> IAEndo:
    """(phi o psi)(x_i) = phi(psi(x_i)); left-to-right is function order."""
    if (phi.n, phi.trunc) != (psi.n, psi.trunc):
        raise ValueError("endomorphism parameters do not match")
    ds = _deltas(phi)
    return IAEndo(phi.n, phi.trunc, [_substitute(s, ds) for s in psi.images])


def invert(phi: IAEndo) -> IAEndo:
    """Two-sided inverse, lifted one degree at a time.

    If rho agrees with the inverse below degree d, the degree-d error of
    phi(rho(x_i)) is removed by subtracting it from rho(x_i); substitution
    into phi cannot push the correction below degree d.
    """
    n, trunc = phi.n, phi.trunc
    images = [_gen_series(i, n, trunc) for i in range(1, n + 1)]
    for d in range(2, trunc + 1):
        ds = _deltas(phi)
        for i in range(n):
            cur = _substitute(images[i], ds)
            err = {m: v for m, v in cur.terms.items() if len(m) == d}
            if not err:
                continue
            terms = dict(images[i].terms)
            get = terms.get
            for m, v in err.items():
                nv = get(m, 0) - v
                if nv:
                    terms[m] = nv
                else:
                    terms.pop(m, None)
            images[i] = TruncSeries._make(n, trunc, terms)
    return IAEndo(n, trunc, images)


def aut_commutator(phi: IAEndo, psi: IAEndo) -> IAEndo:
    """(phi, psi) = phi^-1 psi^-1 phi psi with left-to-right composition."""
    return compose(compose(invert(phi), invert(psi)), compose(phi, psi))


def _diff_series(phi: IAEndo) -> list[TruncSeries]:
    # phi(x_i) * x_i^-1 for each i; constant 1, trivial iff phi fixes x_i
    n, trunc = phi.n, phi.trunc
    return [
        mul(phi.images[i - 1], expand(Word.gen(i, -1), n, trunc)) for i in range(1, n + 1)
    ]


def johnson_depth(phi: IAEndo):
    """min_i (depth of phi(x_i) x_i^-1), or the identity sentinel."""
    depths = [lcs_depth(t) for t in _diff_series(phi)]
    numeric = [d for d in depths if d is not IDENTITY_AT_TRUNCATION]
    if not numeric:
        return IDENTITY_AT_TRUNCATION
    return min(numeric)


def johnson_image(phi: IAEndo) -> tuple[int, tuple[LieElement, ...]]:
    """Depth k and the degree-k Lie component of each phi(x_i) x_i^-1.

    Slots with depth beyond k come out zero; raises IdentityAtTruncationError
    when the whole endomorphism is trivial at this truncation.
    """
    diffs = _diff_series(phi)
    k = johnson_depth(phi)
    if k is IDENTITY_AT_TRUNCATION:
        raise IdentityAtTruncationError("endomorphism is trivial at this truncation")
    slots = tuple(
        freelie.assoc_to_lie(t.homogeneous_component(k), k) for t in diffs
    )
    return k, slots


class WordLengthError(RuntimeError):
    """Raised when word-level evaluation exceeds the safety length cap."""


_MAX_WORD_LETTERS = 2_000_000


def _signed_reduce(seq) -> tuple[int, ...]:
    out: list[int] = []
    for s in seq:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def _signed_inverse(seq) -> tuple[int, ...]:
    return tuple(-s for s in reversed(seq))


class WordAut:
    """Automorphism given by image words for x_i and for the inverse map.

    ``images[i-1]`` is phi(x_i) and ``inv_images[i-1]`` is phi^-1(x_i), both
    as freely reduced signed-letter tuples.  Carrying the inverse alongside
    makes inversion free and composition exact on the nose.
    """

    __slots__ = ("n", "images", "inv_images")

    def __init__(self, n: int, images, inv_images):
        if len(images) != n or len(inv_images) != n:
            raise ValueError("need exactly n images and n inverse images")
        self.n = n
        self.images = tuple(tuple(w) for w in images)
        self.inv_images = tuple(tuple(w) for w in inv_images)

    @classmethod
    def identity(cls, n: int) -> "WordAut":
        gens = tuple((i,) for i in range(1, n + 1))
        return cls(n, gens, gens)

    @classmethod
    def chi(cls, i: int, j: int, n: int) -> "WordAut":
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError("indices out of range")
        if i == j:
            raise ValueError("chi needs distinct indices")
        images = [(k,) for k in range(1, n + 1)]
        invs = [(k,) for k in range(1, n + 1)]
        images[i - 1] = (-j, i, j)
        invs[i - 1] = (j, i, -j)
        return cls(n, images, invs)

    @classmethod
    def chi3(cls, i: int, j: int, k: int, n: int) -> "WordAut":
        if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
            raise ValueError("indices out of range")
        if not (j < k):
            raise ValueError("chi3 needs j < k")
        if i in (j, k):
            raise ValueError("chi3 needs i distinct from j and k")
        images = [(t,) for t in range(1, n + 1)]
        invs = [(t,) for t in range(1, n + 1)]
        # x_i (x_j^-1, x_k^-1) = x_i x_j x_k x_j^-1 x_k^-1; the commutator is
        # fixed by the map, so the inverse just multiplies by its inverse.
        images[i - 1] = (i, j, k, -j, -k)
        invs[i - 1] = (i, k, j, -k, -j)
        return cls(n, images, invs)

    @classmethod
    def inner(cls, g: Word, n: int) -> "WordAut":
        if g.max_letter() > n:
            raise ValueError(f"conjugator uses letter {g.max_letter()} but n = {n}")
        gs = g.signed()
        gi = _signed_inverse(gs)
        images = [_signed_reduce(gs + (i,) + gi) for i in range(1, n + 1)]
        invs = [_signed_reduce(gi + (i,) + gs) for i in range(1, n + 1)]
        return cls(n, images, invs)

    def apply_signed(self, seq, inverse: bool = False) -> tuple[int, ...]:
        """Image of a signed-letter sequence, freely reduced."""
        table = self.inv_images if inverse else self.images
        out: list[int] = []
        push = out.append
        pop = out.pop
        for s in seq:
            img = table[s - 1] if s > 0 else _signed_inverse(table[-s - 1])
            for t in img:
                if out and out[-1] == -t:
                    pop()
                else:
                    push(t)
            if len(out) > _MAX_WORD_LETTERS:
                raise WordLengthError(f"image word exceeded {_MAX_WORD_LETTERS} letters")
        return tuple(out)

    def apply(self, w: Word, inverse: bool = False) -> Word:
        if w.max_letter() > self.n:
            raise ValueError(f"word uses letter {w.max_letter()} but n = {self.n}")
        return Word.from_signed(self.apply_signed(w.signed(), inverse=inverse))

    def compose(self, other: "WordAut") -> "WordAut":
        """(self o other): apply other first, then self."""
        if self.n != other.n:
            raise ValueError("rank mismatch")
        images = [self.apply_signed(w) for w in other.images]
        invs = [other.apply_signed(w, inverse=True) for w in self.inv_images]
        return WordAut(self.n, images, invs)

    def inverse(self) -> "WordAut":
        return WordAut(self.n, self.inv_images, self.images)

    def image_words(self) -> tuple[Word, ...]:
        return tuple(Word.from_signed(w) for w in self.images)

    def to_endo(self, trunc: int) -> IAEndo:
        return _endo_from_words(self.image_words(), self.n, trunc)

    def __eq__(self, other):
        if not isinstance(other, WordAut):
            return NotImplemented
        return self.n == other.n and self.images == other.images

    def __repr__(self):
        return f"WordAut(n={self.n})"
