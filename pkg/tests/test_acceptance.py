"""End-to-end acceptance gate.

Each test certifies one headline claim on its full desk-scale range and
prints a single ``[criterion N] PASS/FAIL`` line on the real stdout so the
gate is legible straight from the pytest log.  Everything here is exact
integer arithmetic; the only tolerances are "equal" and "at most".
"""

import functools
import random
import time
from itertools import product

import pytest

from magnuslab.autfn import (
    IAEndo,
    WordAut,
    aut_commutator,
    compose,
    identity_endo,
    inner,
    invert,
    johnson_depth,
)
from magnuslab.checks import build_J_generators, check_r_terms, check_verify_mccool
from magnuslab.freelie import (
    LieElement,
    assoc_to_lie,
    bracket,
    graded_quotient,
    ideal_graded_span,
    is_lyndon,
    lie_to_assoc,
    lyndon_words,
    witt_rank,
)
from magnuslab.intlinalg import row_rank
from magnuslab.magnus import (
    IDENTITY_AT_TRUNCATION,
    Word,
    commutator,
    expand,
    lcs_depth,
    leading_lie,
)
from magnuslab.mccool import (
    GenWord,
    direct_sum_check,
    evaluate_word_aut,
    gen_commutator,
    graded_johnson_rank,
    m3_presentation,
    spec_e,
    spec_h,
    spec_h1,
)


_CAP = None


@pytest.fixture(autouse=True)
def _gate_console(capsys):
    # let the criterion lines through pytest's capture
    global _CAP
    _CAP = capsys
    yield
    _CAP = None


def criterion(num):
    """Print one [criterion num] PASS/FAIL line on the real stdout."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper():
            t0 = time.perf_counter()
            try:
                detail = fn() or ""
            except BaseException:
                _line(num, "FAIL", "", time.perf_counter() - t0)
                raise
            _line(num, "PASS", detail, time.perf_counter() - t0)

        return wrapper

    return deco


def _line(num, verdict, detail, elapsed):
    msg = f"[criterion {num}] {verdict} {detail}".rstrip()
    msg = f"{msg} ({elapsed:.1f}s)"
    if _CAP is None:
        print(msg)
    else:
        with _CAP.disabled():
            print(msg, flush=True)


@criterion(1)
def test_criterion_1_graded_quotient_splits():
    gens = build_J_generators()
    expected_free = (6, 6, 16, 36, 96)
    expected_ideal = (0, 9, 54, 279, 1458)
    for c in range(1, 6):
        inv = graded_quotient(6, gens, c)
        jrank = row_rank(ideal_graded_span(gens, c))
        assert inv.free_rank == expected_free[c - 1] == 2 * witt_rank(3, c)
        assert inv.torsion == ()
        assert jrank == expected_ideal[c - 1]
        assert witt_rank(6, c) == 2 * witt_rank(3, c) + jrank
    return "free ranks (6,6,16,36,96), ideal ranks (0,9,54,279,1458), no torsion"


@criterion(2)
def test_criterion_2_relator_leading_terms():
    report = check_r_terms()
    assert report.all_pass
    summary = report.rows[-1].computed
    assert summary == {"span_rank": 9, "hnf_equal": True, "bijection": True}
    return "nine relators open the ideal: same HNF, rank 9"


@criterion(3)
def test_criterion_3_mccool_relators_at_D8():
    report = check_verify_mccool(n=3, trunc=8)
    assert report.all_pass
    assert len(report.rows) == 12 + 9 + 3
    return "all 21 relators trivial at truncation 8, u's are inner"


@criterion(4)
def test_criterion_4_H_graded_ranks_and_spot_identity():
    h = spec_h()
    for c, want in ((1, 3), (2, 3), (3, 8), (4, 18)):
        report = graded_johnson_rank(h, c)
        assert report.rank == want == witt_rank(3, c)
        assert report.torsion == ()

    # (b3, b1) sends x2 to exactly x2 * ((x3,x1),x2)^-1 ...
    aut = evaluate_word_aut(gen_commutator(GenWord.gen("b3"), GenWord.gen("b1")), h)
    g = Word.gen
    image_x2 = Word.from_signed(aut.images[1])
    assert image_x2 == g(2) * commutator(commutator(g(3), g(1)), g(2)).inverse()

    # ... whose leading Lie term is -[[x3,x1],x2] in degree 3
    depth, lead = leading_lie(expand(image_x2 * g(2).inverse(), 3, 3))
    x1, x2, x3 = (LieElement.letter(3, i) for i in (1, 2, 3))
    assert depth == 3
    assert lead == -1 * bracket(bracket(x3, x1), x2)
    return "rank(H, c) = (3,3,8,18) torsion-free; (b3,b1) spot identity exact"


@criterion(5)
def test_criterion_5_direct_sum_with_inners():
    h, e = spec_h(), spec_e()
    for c in range(1, 5):
        report = direct_sum_check(h, e, c)
        assert report.additive
        assert report.rank_b == witt_rank(3, c)
        assert report.rank_joint == 2 * witt_rank(3, c)
    return "H-part and inner part meet in zero for c = 1..4"


@criterion(6)
def test_criterion_6_inner_depth_shift():
    rng = random.Random(6402)

    def sample(c):
        while True:
            k = rng.randrange(1, 4)
            letters = [rng.choice((1, -1)) * rng.randrange(1, 4) for _ in range(k)]
            w = Word.from_signed(letters)
            if c >= 2:
                w = commutator(w, Word.from_signed(
                    [rng.choice((1, -1)) * rng.randrange(1, 4) for _ in range(rng.randrange(1, 3))]
                ))
            if c >= 3:
                w = commutator(w, Word.gen(rng.randrange(1, 4)))
            if not w.is_identity() and lcs_depth(expand(w, 3, c + 1)) == c:
                return w

    for c in (1, 2, 3):
        for _ in range(20):
            w = sample(c)
            assert johnson_depth(inner(w, 3, c + 2)) == c + 1
    return "johnson_depth(inner(w)) = lcs_depth(w) + 1 on 60 sampled words"


@criterion(7)
def test_criterion_7_witt_lower_bounds():
    m3 = m3_presentation()[0]
    h1 = spec_h1()
    for c in range(1, 5):
        lower = witt_rank(2, c) + witt_rank(3, c)
        assert lower <= graded_johnson_rank(m3, c).rank
        report = graded_johnson_rank(h1, c)
        assert report.rank == witt_rank(2, c)
        assert report.torsion == ()
    return "witt(2,c) + witt(3,c) bounds the M3 piece; H1 ranks exact"


def _random_lie(rng, n, degree):
    words = list(lyndon_words(n, degree))
    e = LieElement.zero(n)
    for _ in range(rng.randrange(1, 4)):
        e = e + rng.randrange(-3, 4) * LieElement(n, {rng.choice(words): 1})
    return e


def _random_word(rng, n, k):
    return Word.from_signed(
        [rng.choice((1, -1)) * rng.randrange(1, n + 1) for _ in range(k)]
    )


def _random_wordaut(rng, n=3, k=3):
    a = WordAut.identity(n)
    for _ in range(k):
        kind = rng.randrange(3)
        if kind == 0:
            i, j = rng.sample(range(1, n + 1), 2)
            f = WordAut.chi(i, j, n)
        elif kind == 1:
            i = rng.randrange(1, n + 1)
            j, k2 = sorted(rng.sample(sorted(set(range(1, n + 1)) - {i}), 2))
            f = WordAut.chi3(i, j, k2, n)
        else:
            f = WordAut.inner(_random_word(rng, n, 2), n)
        if rng.random() < 0.3:
            f = f.inverse()
        a = a.compose(f)
    return a


CASES = 500


@criterion(8)
def test_criterion_8_property_suites():
    rng = random.Random(8061)
    n = 3

    for _ in range(CASES):  # Jacobi and antisymmetry
        a = _random_lie(rng, n, rng.randrange(1, 4))
        b = _random_lie(rng, n, rng.randrange(1, 4))
        c = _random_lie(rng, n, rng.randrange(1, 4))
        jac = (
            bracket(bracket(a, b), c)
            + bracket(bracket(b, c), a)
            + bracket(bracket(c, a), b)
        )
        assert jac == LieElement.zero(n)
        assert bracket(a, b) == -1 * bracket(b, a)
        assert bracket(a, a) == LieElement.zero(n)

    for _ in range(CASES):  # Magnus expansion is multiplicative
        u = _random_word(rng, n, rng.randrange(0, 5))
        v = _random_word(rng, n, rng.randrange(0, 5))
        assert expand(u * v, n, 4) == expand(u, n, 4) * expand(v, n, 4)

    checked = 0
    while checked < CASES:  # assoc <-> lie roundtrip
        deg = rng.randrange(1, 5)
        e = _random_lie(rng, n, deg)
        if e == LieElement.zero(n):
            continue
        assert assoc_to_lie(lie_to_assoc(e), deg) == e
        checked += 1

    endos = [_random_wordaut(rng, k=2).to_endo(3) for _ in range(60)]
    for _ in range(CASES):  # composition is associative
        a, b, c = (rng.choice(endos) for _ in range(3))
        assert compose(compose(a, b), c) == compose(a, compose(b, c))

    for _ in range(CASES):  # invert is a two-sided inverse
        phi = _random_wordaut(rng, k=2).to_endo(4)
        inv = invert(phi)
        assert compose(phi, inv) == identity_endo(n, 4)
        assert compose(inv, phi) == identity_endo(n, 4)

    checked = 0
    while checked < CASES:  # filtration inequality on commutators
        pa = _random_wordaut(rng, k=2).to_endo(4)
        pb = _random_wordaut(rng, k=2).to_endo(4)
        da, db = johnson_depth(pa), johnson_depth(pb)
        if da is IDENTITY_AT_TRUNCATION or db is IDENTITY_AT_TRUNCATION:
            continue
        dc = johnson_depth(aut_commutator(pa, pb))
        assert dc is IDENTITY_AT_TRUNCATION or dc >= da + db - 1
        checked += 1

    checked = 0
    while checked < CASES:  # commuting an inner past phi conjugates the word
        g = _random_word(rng, n, rng.randrange(1, 5))
        if g.is_identity():
            continue
        pw = _random_wordaut(rng)
        lhs = aut_commutator(inner(g, n, 4), pw.to_endo(4))
        moved = Word.from_signed(pw.inverse().apply_signed(g.signed()))
        assert lhs == inner(g.inverse() * moved, n, 4)
        checked += 1

    return f"seven property suites, {CASES} cases each, seed 8061"


@criterion(9)
def test_criterion_9_witt_formula_oracle():
    for n in range(1, 7):
        for c in range(1, 9):
            brute = sum(
                1 for w in product(range(1, n + 1), repeat=c) if is_lyndon(w)
            )
            assert witt_rank(n, c) == brute
            assert sum(1 for _ in lyndon_words(n, c)) == brute
    return "formula matches brute-force counts for n <= 6, c <= 8"
