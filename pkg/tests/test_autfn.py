import random

import pytest

from magnuslab.autfn import (
    IAEndo,
    WordAut,
    apply_to_series,
    aut_commutator,
    chi,
    chi3,
    compose,
    identity_endo,
    inner,
    invert,
    johnson_depth,
    johnson_image,
)
from magnuslab.freelie import LieElement, bracket
from magnuslab.magnus import (
    IDENTITY_AT_TRUNCATION,
    IdentityAtTruncationError,
    TruncSeries,
    Word,
    commutator,
    expand,
    lcs_depth,
    mul,
)


def random_endo(rng, n=3, trunc=4, factors=2):
    out = identity_endo(n, trunc)
    for _ in range(rng.randint(1, factors)):
        kind = rng.choice(["chi", "chi3", "inner"])
        if kind == "chi":
            i, j = rng.sample(range(1, n + 1), 2)
            f = chi(i, j, n, trunc)
        elif kind == "chi3":
            i, j, k = rng.sample(range(1, n + 1), 3)
            j, k = min(j, k), max(j, k)
            f = chi3(i, j, k, n, trunc)
        else:
            letters = [rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(rng.randint(1, 3))]
            f = inner(Word.from_signed(letters), n, trunc)
        out = compose(out, f)
    return out


def test_constructor_validation():
    good = identity_endo(2, 3)
    assert good.images[0].terms == {(): 1, (1,): 1}
    with pytest.raises(ValueError):
        IAEndo(2, 3, [good.images[0]])
    with pytest.raises(ValueError):
        IAEndo(2, 3, [good.images[0], TruncSeries(2, 3, {(): 1, (1,): 1})])
    with pytest.raises(ValueError):
        IAEndo(2, 3, [TruncSeries(2, 3, {(): 1}), good.images[1]])
    with pytest.raises(ValueError):
        IAEndo(2, 3, [TruncSeries(2, 3, {(): 2, (1,): 1}), good.images[1]])


def test_generator_constructors():
    n, D = 3, 4
    c = chi(2, 1, n, D)
    assert c.images[0] == expand(Word.gen(1), n, D)
    assert c.images[1] == expand(
        Word.gen(1, -1) * Word.gen(2) * Word.gen(1), n, D
    )
    t = chi3(1, 2, 3, n, D)
    g = Word.gen
    expected = g(1) * commutator(g(2, -1), g(3, -1))
    assert t.images[0] == expand(expected, n, D)
    with pytest.raises(ValueError):
        chi(1, 1, n, D)
    with pytest.raises(ValueError):
        chi3(1, 3, 2, n, D)
    with pytest.raises(ValueError):
        chi3(2, 2, 3, n, D)
    w = Word.from_signed([1, 2])
    conj = inner(w, n, D)
    for i in (1, 2, 3):
        assert conj.images[i - 1] == expand(w * Word.gen(i) * w.inverse(), n, D)


def test_compose_matches_word_substitution():
    # series substitution must agree with free-group substitution
    rng = random.Random(31)
    n, D = 3, 4
    for _ in range(30):
        i, j = rng.sample(range(1, n + 1), 2)
        a = WordAut.chi(i, j, n)
        k, l = rng.sample(range(1, n + 1), 2)
        b = WordAut.chi(k, l, n)
        assert a.compose(b).to_endo(D) == compose(a.to_endo(D), b.to_endo(D))


def test_compose_example_inner():
    lhs = compose(chi(3, 1, 3, 5), chi(2, 1, 3, 5))
    assert lhs == inner(Word.gen(1, -1), 3, 5)
    assert compose(lhs, identity_endo(3, 5)) == lhs
    with pytest.raises(ValueError):
        compose(chi(2, 1, 3, 4), chi(2, 1, 3, 5))


def test_apply_to_series_matches_word_image():
    rng = random.Random(32)
    n, D = 3, 5
    for _ in range(25):
        i, j = rng.sample(range(1, n + 1), 2)
        aut = WordAut.chi(i, j, n)
        letters = [rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(rng.randint(0, 5))]
        w = Word.from_signed(letters)
        assert apply_to_series(aut.to_endo(D), expand(w, n, D)) == expand(
            aut.apply(w), n, D
        )


def test_invert_two_sided():
    rng = random.Random(33)
    for _ in range(20):
        phi = random_endo(rng)
        rho = invert(phi)
        ident = identity_endo(phi.n, phi.trunc)
        assert compose(phi, rho) == ident
        assert compose(rho, phi) == ident


def test_invert_chi_is_word_inverse():
    assert invert(chi(2, 1, 3, 4)) == WordAut.chi(2, 1, 3).inverse().to_endo(4)


def test_aut_commutator_depth():
    c = aut_commutator(chi(2, 1, 3, 5), chi(1, 2, 3, 5))
    d = johnson_depth(c)
    assert d == 3
    # commutator with the identity is trivial
    t = aut_commutator(chi(2, 1, 3, 4), identity_endo(3, 4))
    assert johnson_depth(t) is IDENTITY_AT_TRUNCATION


def test_johnson_depth_examples():
    assert johnson_depth(chi(2, 1, 3, 4)) == 2
    assert johnson_depth(identity_endo(3, 4)) is IDENTITY_AT_TRUNCATION
    g = commutator(Word.gen(1), Word.gen(2))
    assert johnson_depth(inner(g, 3, 5)) == 3


def test_johnson_image_chi():
    k, slots = johnson_image(chi(2, 1, 3, 4))
    x1, x2 = LieElement.letter(3, 1), LieElement.letter(3, 2)
    assert k == 2
    assert slots[0].is_zero() and slots[2].is_zero()
    assert slots[1] == -1 * bracket(x1, x2)
    with pytest.raises(IdentityAtTruncationError):
        johnson_image(identity_endo(3, 4))


def test_johnson_image_of_inverse_negates():
    rng = random.Random(34)
    for _ in range(15):
        phi = random_endo(rng)
        if johnson_depth(phi) is IDENTITY_AT_TRUNCATION:
            continue
        k1, s1 = johnson_image(phi)
        k2, s2 = johnson_image(invert(phi))
        assert k1 == k2
        assert all(a == -1 * b for a, b in zip(s1, s2))


def test_johnson_additivity_at_equal_depth():
    # when phi, psi and phi o psi all have depth k, images add
    rng = random.Random(35)
    for _ in range(20):
        phi, psi = random_endo(rng, factors=1), random_endo(rng, factors=1)
        dp, dq = johnson_depth(phi), johnson_depth(psi)
        if dp is IDENTITY_AT_TRUNCATION or dq is IDENTITY_AT_TRUNCATION or dp != dq:
            continue
        comp = compose(phi, psi)
        if johnson_depth(comp) != dp:
            continue
        _, s1 = johnson_image(phi)
        _, s2 = johnson_image(psi)
        _, s3 = johnson_image(comp)
        assert all(a + b == c for a, b, c in zip(s1, s2, s3))


def test_word_aut_basics():
    n = 3
    ident = WordAut.identity(n)
    assert ident.apply(Word.gen(2)) == Word.gen(2)
    a = WordAut.chi(2, 1, n)
    assert a.to_endo(4) == chi(2, 1, n, 4)
    assert WordAut.chi3(1, 2, 3, n).to_endo(4) == chi3(1, 2, 3, n, 4)
    g = Word.from_signed([1, -2])
    assert WordAut.inner(g, n).to_endo(4) == inner(g, n, 4)
    # inverse tables really invert
    rng = random.Random(36)
    for _ in range(20):
        letters = [rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(6)]
        w = Word.from_signed(letters)
        assert a.apply(a.apply(w), inverse=True) == w
    assert a.compose(a.inverse()) == ident


def test_word_aut_compose_order():
    # (a o b)(x) applies b first
    a, b = WordAut.chi(2, 1, 3), WordAut.chi(1, 3, 3)
    lhs = a.compose(b).apply(Word.gen(1))
    assert lhs == a.apply(b.apply(Word.gen(1)))
    assert a.compose(b).to_endo(4) == compose(a.to_endo(4), b.to_endo(4))
