"""The McCool groups of basis-conjugating automorphisms and their gradings.

M_n is the subgroup of Aut(F_n) generated by the maps chi_ij sending x_i to
x_j^-1 x_i x_j.  Words in named automorphism generators are GenWords; a
SubgroupSpec names a generating set and realizes each name as an explicit
automorphism, which keeps everything picklable for the parallel row
computations.

The graded object attached to a spec at degree c is the image of its
weight-c commutators in I_{c+1}A / I_{c+2}A, read off through truncated
Magnus expansions and recorded as an exact integer matrix over the Lyndon
coordinates of degree c + 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import freelie
from ._util import parallel_map
from .autfn import IAEndo, WordAut, WordLengthError, compose, identity_endo, invert
from .freelie import lyndon_words, standard_factorization, witt_rank
from .intlinalg import IntMatrix, row_rank, row_space_invariants
from .magnus import Word, expand, mul

__all__ = [
    "DepthViolationError",
    "GenWord",
    "gen_commutator",
    "left_normed_gen_commutator",
    "SubgroupSpec",
    "mccool_generators",
    "mccool_spec",
    "mccool_relations",
    "m3_presentation",
    "spec_h",
    "spec_e",
    "spec_h1",
    "evaluate",
    "evaluate_word_aut",
    "weight_c_commutators",
    "johnson_rows",
    "graded_johnson_rank",
    "GradedRank",
    "direct_sum_check",
    "DirectSumReport",
    "andreadakis_check",
]


class DepthViolationError(RuntimeError):
    """A weight-c commutator failed to sit inside I_{c+1}A.

    This cannot happen for correctly realized automorphisms, so it signals a
    convention bug (composition order, inverse direction) rather than bad
    input data.
    """


def _reduce_gen_syllables(items: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[list] = []
    for name, e in items:
        if not e:
            continue
        if out and out[-1][0] == name:
            out[-1][1] += e
            if not out[-1][1]:
                out.pop()
        else:
            out.append([name, e])
    return tuple((name, e) for name, e in out)


@dataclass(frozen=True)
class GenWord:
    """Freely reduced word over named generators, as (name, exponent) pairs."""

    syllables: tuple[tuple[str, int], ...] = ()

    @classmethod
    def from_syllables(cls, items: Iterable[tuple[str, int]]) -> "GenWord":
        return cls(_reduce_gen_syllables(items))

    @classmethod
    def gen(cls, name: str, e: int = 1) -> "GenWord":
        return cls.from_syllables([(name, e)])

    @classmethod
    def identity(cls) -> "GenWord":
        return cls(())

    _TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")

    @classmethod
    def parse(cls, text: str) -> "GenWord":
        """Parse "b1 b2^-1" or "b1*b2^-1" into a GenWord."""
        items = []
        for tok in text.replace("*", " ").split():
            m = cls._TOKEN.match(tok)
            if not m:
                raise ValueError(f"cannot parse generator token {tok!r}")
            items.append((m.group(1), int(m.group(2) or 1)))
        return cls.from_syllables(items)

    def is_identity(self) -> bool:
        return not self.syllables

    def names(self) -> set[str]:
        return {name for name, _ in self.syllables}

    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __mul__(self, other: "GenWord") -> "GenWord":
        if not isinstance(other, GenWord):
            return NotImplemented
        return GenWord.from_syllables(self.syllables + other.syllables)

    def inverse(self) -> "GenWord":
        return GenWord(tuple((name, -e) for name, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "GenWord":
        if k == 0:
            return GenWord.identity()
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.syllables)


def gen_commutator(a: GenWord, b: GenWord) -> GenWord:
    """(a, b) = a^-1 b^-1 a b."""
    return a.inverse() * b.inverse() * a * b


def left_normed_gen_commutator(ws: Sequence[GenWord]) -> GenWord:
    if not ws:
        raise ValueError("need at least one word")
    out = ws[0]
    for w in ws[1:]:
        out = gen_commutator(out, w)
    return out


# Realization descriptors are plain tuples so that specs pickle cleanly:
#   ("chi", i, j)                x_i -> x_j^-1 x_i x_j
#   ("chi3", i, j, k)            x_i -> x_i (x_j^-1, x_k^-1), j < k
#   ("inner", (s1, s2, ...))     conjugation by the signed-letter word
#   ("prod", (d1, d2, ...))      composition, leftmost applied last


def _word_aut_from_desc(desc: tuple, n: int) -> WordAut:
    kind = desc[0]
    if kind == "chi":
        _, i, j = desc
        return WordAut.chi(i, j, n)
    if kind == "chi3":
        _, i, j, k = desc
        return WordAut.chi3(i, j, k, n)
    if kind == "inner":
        _, letters = desc
        return WordAut.inner(Word.from_signed(letters), n)
    if kind == "prod":
        _, parts = desc
        aut = WordAut.identity(n)
        for p in parts:
            aut = aut.compose(_word_aut_from_desc(p, n))
        return aut
    raise ValueError(f"unknown realization descriptor {desc!r}")


@dataclass(frozen=True)
class SubgroupSpec:
    """Named generating set of a subgroup of IA(F_n) with realizations."""

    name: str
    n: int
    gen_names: tuple[str, ...]
    realization: dict[str, tuple] = field(compare=False)

    def __post_init__(self):
        missing = set(self.gen_names) - set(self.realization)
        if missing:
            raise ValueError(f"no realization for generators {sorted(missing)}")

    def word_aut(self, name: str, n: int | None = None) -> WordAut:
        return _word_aut_from_desc(self.realization[name], n or self.n)

    def endo(self, name: str, trunc: int, n: int | None = None) -> IAEndo:
        return self.word_aut(name, n).to_endo(trunc)


def mccool_generators(n: int) -> list[str]:
    """Names chi{i}{j} of the n(n-1) McCool generators, i the moved letter."""
    if not (2 <= n <= 9):
        raise ValueError("supported rank range is 2..9")
    return [f"chi{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1) if j != i]


def mccool_spec(n: int) -> SubgroupSpec:
    real = {f"chi{i}{j}": ("chi", i, j) for i in range(1, n + 1) for j in range(1, n + 1) if j != i}
    return SubgroupSpec(name=f"M{n}", n=n, gen_names=tuple(mccool_generators(n)), realization=real)


def mccool_relations(n: int) -> list[GenWord]:
    """Defining relators of M_n as words over the chi names.

    Three families, subscripts pairwise distinct:
    (chi_ij, chi_kj), (chi_ij, chi_kq), (chi_ij chi_kj, chi_ik).
    """
    if not (2 <= n <= 9):
        raise ValueError("supported rank range is 2..9")

    def g(i, j):
        return GenWord.gen(f"chi{i}{j}")

    rels = []
    idx = range(1, n + 1)
    for i in idx:
        for j in idx:
            for k in idx:
                if len({i, j, k}) == 3:
                    rels.append(gen_commutator(g(i, j), g(k, j)))
    for i in idx:
        for j in idx:
            for k in idx:
                for q in idx:
                    if len({i, j, k, q}) == 4:
                        rels.append(gen_commutator(g(i, j), g(k, q)))
    for i in idx:
        for j in idx:
            for k in idx:
                if len({i, j, k}) == 3:
                    rels.append(gen_commutator(g(i, j) * g(k, j), g(i, k)))
    return rels


def _bu_realization() -> dict[str, tuple]:
    return {
        "b1": ("chi", 2, 1),
        "b2": ("chi", 1, 2),
        "b3": ("chi", 2, 3),
        "u2": ("prod", (("chi", 3, 1), ("chi", 2, 1))),
        "u4": ("prod", (("chi", 3, 2), ("chi", 1, 2))),
        "u6": ("prod", (("chi", 2, 3), ("chi", 1, 3))),
    }


def m3_presentation() -> tuple[SubgroupSpec, list[GenWord]]:
    """M_3 on the mixed generators b1, b2, b3, u2, u4, u6.

    The u generators realize the inner automorphisms by the inverse letters;
    the nine relators say that each u_i commutes with a rewritten copy of
    each b_j, and together with freeness of <b1, b2, b3> they present M_3 as
    an extension of a free group by the inner automorphisms.
    """
    spec = SubgroupSpec(
        name="M3bu",
        n=3,
        gen_names=("b1", "b2", "b3", "u2", "u4", "u6"),
        realization=_bu_realization(),
    )
    b1, b2, b3 = (GenWord.gen(s) for s in ("b1", "b2", "b3"))
    u2, u4, u6 = (GenWord.gen(s) for s in ("u2", "u4", "u6"))
    relators = [
        gen_commutator(u2, b1),
        gen_commutator(u2, u4 * b2.inverse()),
        gen_commutator(u2, b3),
        gen_commutator(u4, u2 * b1.inverse()),
        gen_commutator(u4, b2),
        gen_commutator(u4, b3.inverse() * u6),
        gen_commutator(u6, b1),
        gen_commutator(u6, b2),
        gen_commutator(u6, b3),
    ]
    return spec, relators


def spec_h() -> SubgroupSpec:
    """The free rank-3 complement H = <b1, b2, b3> inside M_3."""
    real = _bu_realization()
    return SubgroupSpec(
        name="H",
        n=3,
        gen_names=("b1", "b2", "b3"),
        realization={k: real[k] for k in ("b1", "b2", "b3")},
    )


def spec_e() -> SubgroupSpec:
    """The inner automorphisms E = <u2, u4, u6> of F_3."""
    return SubgroupSpec(
        name="E",
        n=3,
        gen_names=("u2", "u4", "u6"),
        realization={
            "u2": ("inner", (-1,)),
            "u4": ("inner", (-2,)),
            "u6": ("inner", (-3,)),
        },
    )


def spec_h1() -> SubgroupSpec:
    """The free rank-2 subgroup H1 = <chi21, chi23>."""
    return SubgroupSpec(
        name="H1",
        n=3,
        gen_names=("chi21", "chi23"),
        realization={"chi21": ("chi", 2, 1), "chi23": ("chi", 2, 3)},
    )


def evaluate_word_aut(w: GenWord, spec: SubgroupSpec, n: int | None = None) -> WordAut:
    """Evaluate a generator word to an exact automorphism, word by word."""
    n = n or spec.n
    unknown = w.names() - set(spec.gen_names)
    if unknown:
        raise ValueError(f"word uses generators {sorted(unknown)} not in spec {spec.name}")
    base = {name: spec.word_aut(name, n) for name in w.names()}
    aut = WordAut.identity(n)
    for name, e in w.syllables:
        factor = base[name] if e > 0 else base[name].inverse()
        for _ in range(abs(e)):
            aut = aut.compose(factor)
    return aut


def evaluate(w: GenWord, spec: SubgroupSpec, n: int | None = None, trunc: int | None = None) -> IAEndo:
    """Truncated expansion of the automorphism named by ``w``.

    Evaluation runs on the group side (exact words, free reduction) and only
    expands the final images; if the image words blow past the length cap it
    falls back to composing truncated series, which is slower but bounded.
    """
    n = n or spec.n
    if trunc is None:
        raise ValueError("truncation order is required")
    try:
        return evaluate_word_aut(w, spec, n).to_endo(trunc)
    except WordLengthError:
        base = {name: spec.endo(name, trunc, n) for name in w.names()}
        out = identity_endo(n, trunc)
        for name, e in w.syllables:
            factor = base[name] if e > 0 else invert(base[name])
            for _ in range(abs(e)):
                out = compose(out, factor)
        return out


def weight_c_commutators(gen_names: Sequence[str], c: int) -> list[GenWord]:
    """Basic commutators of weight ``c`` in the named generators.

    One commutator per Lyndon word of length c over the generator alphabet,
    bracketed by iterated standard factorization.  Their classes span
    gamma_c modulo gamma_{c+1} of the free group on the generators.
    """
    if c < 1:
        raise ValueError("weight must be >= 1")
    names = list(gen_names)

    def build(word: tuple[int, ...]) -> GenWord:
        if len(word) == 1:
            return GenWord.gen(names[word[0] - 1])
        u, v = standard_factorization(word)
        return gen_commutator(build(u), build(v))

    return [build(w) for w in lyndon_words(len(names), c)]


def _lyndon_index(n: int, c: int) -> dict[tuple[int, ...], int]:
    return {w: j for j, w in enumerate(lyndon_words(n, c))}


def _johnson_row_task(args) -> dict[int, int]:
    spec, gw, c, trunc = args
    n = spec.n
    endo = evaluate(gw, spec, trunc=trunc)
    index = _lyndon_index(n, c + 1)
    width = len(index)
    row: dict[int, int] = {}
    for i in range(1, n + 1):
        diff = mul(endo.images[i - 1], expand(Word.gen(i, -1), n, trunc))
        comp = {}
        for m, v in diff.terms.items():
            if not m:
                continue
            if len(m) <= c:
                raise DepthViolationError(
                    f"{gw} should lie in I_{c + 1}A but phi(x_{i}) x_{i}^-1 "
                    f"has a degree-{len(m)} term"
                )
            if len(m) == c + 1:
                comp[m] = v
        e = freelie.assoc_to_lie(freelie.AssocPoly(n, comp), c + 1)
        base = (i - 1) * width
        for w, v in e.terms.items():
            row[base + index[w]] = v
    return row


def johnson_rows(
    spec: SubgroupSpec, c: int, trunc: int | None = None, workers: int = 1
) -> IntMatrix:
    """Johnson coordinates of the weight-c commutators of a spec.

    Row order follows weight_c_commutators; columns are n blocks of Lyndon
    coordinates in degree c + 1, one block per free-group generator slot.
    """
    if c < 1:
        raise ValueError("degree must be >= 1")
    if trunc is None:
        trunc = c + 2
    if trunc < c + 1:
        raise ValueError(f"truncation {trunc} cannot see degree {c + 1}")
    comms = weight_c_commutators(spec.gen_names, c)
    width = witt_rank(spec.n, c + 1)
    rows = parallel_map(
        _johnson_row_task, [(spec, gw, c, trunc) for gw in comms], workers=workers
    )
    return IntMatrix.from_rows(rows, spec.n * width)


@dataclass(frozen=True)
class GradedRank:
    """Rank and torsion of a graded Johnson image at one degree."""

    rank: int
    torsion: tuple[int, ...]


def graded_johnson_rank(
    spec: SubgroupSpec, c: int, trunc: int | None = None, workers: int = 1
) -> GradedRank:
    """Rank report for the degree-c graded piece attached to ``spec``."""
    rows = johnson_rows(spec, c, trunc=trunc, workers=workers)
    rank, torsion = row_space_invariants(rows)
    return GradedRank(rank=rank, torsion=torsion)


@dataclass(frozen=True)
class DirectSumReport:
    """Joint rank versus the two summand ranks at one degree."""

    rank_a: int
    rank_b: int
    rank_joint: int

    @property
    def additive(self) -> bool:
        return self.rank_joint == self.rank_a + self.rank_b


def direct_sum_check(
    a: SubgroupSpec, b: SubgroupSpec, c: int, trunc: int | None = None, workers: int = 1
) -> DirectSumReport:
    """Do the degree-c images of ``a`` and ``b`` meet only in zero?

    Ranks are additive on the stacked row matrix exactly when the two spans
    intersect trivially, which is the degree-c direct-sum statement.
    """
    if a.n != b.n:
        raise ValueError("specs live in different ambient ranks")
    rows_a = johnson_rows(a, c, trunc=trunc, workers=workers)
    rows_b = johnson_rows(b, c, trunc=trunc, workers=workers)
    joint = IntMatrix.from_rows(rows_a.sparse_rows() + rows_b.sparse_rows(), rows_a.ncols)
    return DirectSumReport(
        rank_a=row_rank(rows_a),
        rank_b=row_rank(rows_b),
        rank_joint=row_rank(joint),
    )


def andreadakis_check(
    spec: SubgroupSpec, c: int, trunc: int | None = None, workers: int = 1
) -> bool:
    """Certify gamma_c of the free group on the spec generators injects.

    True when the weight-c commutators span a free lattice of full Witt rank
    in Johnson coordinates; free generating sets that satisfy this at every
    degree satisfy the Andreadakis-type equality for the subgroup.
    """
    report = graded_johnson_rank(spec, c, trunc=trunc, workers=workers)
    expected = witt_rank(len(spec.gen_names), c)
    return report.rank == expected and not report.torsion
