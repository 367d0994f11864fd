import random

import pytest

from magnuslab import autfn, mccool
from magnuslab.autfn import identity_endo, johnson_depth
from magnuslab.freelie import witt_rank
from magnuslab.magnus import IDENTITY_AT_TRUNCATION, Word
from magnuslab.mccool import (
    DepthViolationError,
    DirectSumReport,
    GenWord,
    SubgroupSpec,
    andreadakis_check,
    direct_sum_check,
    evaluate,
    evaluate_word_aut,
    gen_commutator,
    graded_johnson_rank,
    johnson_rows,
    left_normed_gen_commutator,
    m3_presentation,
    mccool_generators,
    mccool_relations,
    mccool_spec,
    spec_e,
    spec_h,
    spec_h1,
    weight_c_commutators,
)


def test_genword_basics():
    w = GenWord.parse("b1 b2^-1 b2 b1^2")
    assert w == GenWord.from_syllables([("b1", 3)])
    assert str(GenWord.parse("b1*b2^-1")) == "b1 b2^-1"
    assert GenWord.parse("").is_identity()
    a, b = GenWord.gen("a"), GenWord.gen("b")
    assert gen_commutator(a, b).syllables == (("a", -1), ("b", -1), ("a", 1), ("b", 1))
    assert (a * a.inverse()).is_identity()
    assert (a ** -2) == a.inverse() * a.inverse()
    assert left_normed_gen_commutator([a, b]) == gen_commutator(a, b)
    with pytest.raises(ValueError):
        GenWord.parse("1bad^token^")
    with pytest.raises(ValueError):
        left_normed_gen_commutator([])


def test_generator_and_relation_counts():
    assert mccool_generators(3) == ["chi12", "chi13", "chi21", "chi23", "chi31", "chi32"]
    assert len(mccool_generators(4)) == 12
    assert len(mccool_relations(2)) == 0
    assert len(mccool_relations(3)) == 12
    assert len(mccool_relations(4)) == 72
    with pytest.raises(ValueError):
        mccool_generators(1)


def test_relators_evaluate_to_identity():
    for n in (2, 3):
        spec = mccool_spec(n)
        for rel in mccool_relations(n):
            assert evaluate(rel, spec, trunc=5) == identity_endo(n, 5)
    bu, relators = m3_presentation()
    for rel in relators:
        assert evaluate(rel, bu, trunc=5) == identity_endo(3, 5)
        # exact check on the group side, no truncation involved
        aut = evaluate_word_aut(rel, bu)
        assert aut == autfn.WordAut.identity(3)


def test_u_generators_are_inner():
    bu, _ = m3_presentation()
    e = spec_e()
    for name in ("u2", "u4", "u6"):
        assert bu.word_aut(name) == e.word_aut(name)


def test_subgroup_spec_validation():
    with pytest.raises(ValueError):
        SubgroupSpec(name="bad", n=3, gen_names=("a",), realization={})
    spec = spec_h()
    with pytest.raises(ValueError):
        evaluate(GenWord.gen("nope"), spec, trunc=3)
    with pytest.raises(ValueError):
        evaluate(GenWord.gen("b1"), spec)


def test_weight_c_commutators():
    names = ("a", "b", "c")
    w1 = weight_c_commutators(names, 1)
    assert w1 == [GenWord.gen("a"), GenWord.gen("b"), GenWord.gen("c")]
    w2 = weight_c_commutators(names, 2)
    a, b, c = (GenWord.gen(s) for s in names)
    assert w2 == [gen_commutator(a, b), gen_commutator(a, c), gen_commutator(b, c)]
    # counts follow the Witt formula for every weight
    for m, cmax in ((2, 5), (3, 4), (6, 3)):
        for cc in range(1, cmax + 1):
            assert len(weight_c_commutators(tuple(f"g{i}" for i in range(m)), cc)) == witt_rank(m, cc)
    # a single generator admits no higher-weight basic commutators
    assert weight_c_commutators(("a",), 2) == []
    with pytest.raises(ValueError):
        weight_c_commutators(names, 0)


def test_evaluate_fallback_matches_word_path(monkeypatch):
    spec = mccool_spec(3)
    w = GenWord.parse("chi21 chi12^-1 chi23 chi31^2")
    fast = evaluate(w, spec, trunc=4)
    monkeypatch.setattr(autfn, "_MAX_WORD_LETTERS", 2)
    slow = evaluate(w, spec, trunc=4)
    assert fast == slow


def test_johnson_rows_shapes():
    rows = johnson_rows(spec_h(), 2)
    assert rows.nrows == witt_rank(3, 2)
    assert rows.ncols == 3 * witt_rank(3, 3)
    with pytest.raises(ValueError):
        johnson_rows(spec_h(), 2, trunc=2)
    with pytest.raises(ValueError):
        johnson_rows(spec_h(), 0)


def test_graded_ranks_small_degrees():
    for c in (1, 2, 3):
        assert graded_johnson_rank(spec_h(), c) == mccool.GradedRank(witt_rank(3, c), ())
        assert graded_johnson_rank(spec_e(), c) == mccool.GradedRank(witt_rank(3, c), ())
        assert graded_johnson_rank(spec_h1(), c) == mccool.GradedRank(witt_rank(2, c), ())


def test_m3_rank_same_in_both_coordinate_systems():
    bu = m3_presentation()[0]
    chi_spec = mccool_spec(3)
    for c in (1, 2):
        r_bu = graded_johnson_rank(bu, c)
        r_chi = graded_johnson_rank(chi_spec, c)
        assert r_bu.rank == r_chi.rank == 2 * witt_rank(3, c)
        assert r_bu.torsion == r_chi.torsion == ()


def test_direct_sum_check():
    for c in (1, 2):
        report = direct_sum_check(spec_h(), spec_e(), c)
        assert report.additive
        assert report.rank_a == report.rank_b == witt_rank(3, c)
    # the same span twice is never additive
    report = direct_sum_check(spec_e(), spec_e(), 1)
    assert report == DirectSumReport(rank_a=3, rank_b=3, rank_joint=3)
    assert not report.additive


def test_andreadakis_check_small():
    for c in (1, 2, 3):
        assert andreadakis_check(spec_h(), c)
        assert andreadakis_check(spec_h1(), c)
    assert andreadakis_check(spec_e(), 2)


def test_parallel_workers_match_serial():
    serial = johnson_rows(spec_h(), 2, workers=1)
    parallel = johnson_rows(spec_h(), 2, workers=2)
    assert serial == parallel


def test_evaluate_identity_and_inverses():
    spec = spec_h()
    assert evaluate(GenWord.identity(), spec, trunc=4) == identity_endo(3, 4)
    w = GenWord.parse("b1 b3^-1")
    prod = evaluate(w * w.inverse(), spec, trunc=4)
    assert prod == identity_endo(3, 4)


def test_depth_of_weight_c_commutators():
    # weight-c commutators land at Johnson depth exactly c + 1 for free parts
    spec = spec_h()
    for c in (1, 2, 3):
        for gw in weight_c_commutators(spec.gen_names, c)[:3]:
            endo = evaluate(gw, spec, trunc=c + 2)
            assert johnson_depth(endo) == c + 1
