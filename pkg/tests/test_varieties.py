"""Variety checkers: named-algebra classifications, witness validity, inclusions."""

from __future__ import annotations

from itertools import product as iproduct

import pytest

from dlcmi import (
    FiniteAlgebra,
    MissingBottom,
    PreconditionFailed,
    check,
    check_cwrl_incomparable,
    check_lemaprod,
    evaluate_axiom,
    leq,
    mv_chain,
    wh_as_dlcmi_roundtrip,
    wh_trivial_chain,
)
from dlcmi.varieties import VarietyTag, passes


def chain3_with_imp(imp_value: int) -> FiniteAlgebra:
    rng = range(3)
    return FiniteAlgebra(
        3,
        meet=tuple(tuple(min(i, j) for j in rng) for i in rng),
        join=tuple(tuple(max(i, j) for j in rng) for i in rng),
        prod=tuple(tuple(min(i, j) for j in rng) for i in rng),
        imp=tuple(tuple(imp_value for _ in rng) for _ in rng),
        unit=2,
        bottom=0,
    )


def test_example_classifications(mv3, wh3, ex1):
    assert check(mv3, VarietyTag.IDCRL).passed
    assert not check(mv3, VarietyTag.WH).passed
    assert check(wh3, VarietyTag.WH).passed
    assert not check(wh3, VarietyTag.IDCRL).passed
    assert check(ex1, VarietyTag.DLCMI).passed
    assert not check(ex1, VarietyTag.WH).passed
    assert not check(ex1, VarietyTag.IDCRL).passed


def test_ex1_wh_failure_witness(ex1):
    report = check(ex1, VarietyTag.WH)
    failures = dict(report.failures)
    assert "wh.fusion" in failures
    # first-found witness in lexicographic order; re-evaluation must fail
    assert failures["wh.fusion"] == (3, 3)
    assert not evaluate_axiom(ex1, "wh.fusion", (3, 3))
    # the quoted counterexample pair: (a,a)*(a,a) = (0,a) while the meet is (a,a)
    assert ex1.prod[4][4] == 1
    assert ex1.meet[4][4] == 4
    assert not evaluate_axiom(ex1, "wh.fusion", (4, 4))


def test_ex1_idcrl_failure_witness(ex1):
    report = check(ex1, VarietyTag.IDCRL)
    failures = dict(report.failures)
    assert "crl.3" in failures
    assert not evaluate_axiom(ex1, "crl.3", failures["crl.3"])
    # the quoted residuation failure: (a,a) <= (a,a)->(0,0) = (a,1) but
    # (a,a)*(a,a) = (0,a) is not below (0,0)
    assert ex1.imp[4][0] == 5
    assert leq(ex1, 4, 5)
    assert ex1.prod[4][4] == 1
    assert not leq(ex1, 1, 0)
    assert not evaluate_axiom(ex1, "crl.3", (4, 4, 0))


def test_every_witness_reevaluates_false(mv3, wh3, ex1):
    for alg in (mv3, wh3, ex1):
        for tag in VarietyTag:
            if tag in (VarietyTag.BDL, VarietyTag.WH, VarietyTag.DLFI) and alg.bottom is None:
                continue
            report = check(alg, tag)
            for axiom, witness in report.failures:
                assert not evaluate_axiom(alg, axiom, witness)


def test_check_lemaprod(mv3, wh3, singleton):
    assert check_lemaprod(mv3) is True
    assert check_lemaprod(wh3) is True
    assert check_lemaprod(singleton) is True
    with pytest.raises(PreconditionFailed):
        check_lemaprod(chain3_with_imp(0))  # x->x = 0 breaks the reflexivity axiom


def test_cwrl_incomparable_witnesses(mv3, wh3, ex1):
    assert check_cwrl_incomparable(mv3) is None
    w = check_cwrl_incomparable(wh3)
    assert w == (1, 0)
    x, y = w
    assert not leq(wh3, wh3.prod[x][wh3.imp[x][y]], y)
    w = check_cwrl_incomparable(ex1)
    assert w == (1, 0)
    x, y = w
    assert not leq(ex1, ex1.prod[x][ex1.imp[x][y]], y)
    # the quoted value: (a,a)*((a,a)->(0,0)) = (0,a), not below (0,0)
    assert ex1.prod[4][ex1.imp[4][0]] == 1
    assert not leq(ex1, 1, 0)


def test_wh_as_dlcmi_roundtrip(wh3):
    assert wh_as_dlcmi_roundtrip(wh3) is True
    two_chain = mv_chain(2)  # Boolean implication, prod = meet on the 2-chain
    assert two_chain.prod == two_chain.meet
    assert wh_as_dlcmi_roundtrip(two_chain) is True
    broken = chain3_with_imp(0)
    assert wh_as_dlcmi_roundtrip(broken) is True  # both sides fail on x->x
    assert not check(broken, VarietyTag.DLCMI).passed
    with pytest.raises(PreconditionFailed):
        wh_as_dlcmi_roundtrip(mv_chain(3))


def test_missing_bottom_raises(mv3):
    bottomless = FiniteAlgebra(
        mv3.size, mv3.meet, mv3.join, mv3.prod, mv3.imp, mv3.unit, bottom=None
    )
    for tag in (VarietyTag.BDL, VarietyTag.WH, VarietyTag.DLFI):
        with pytest.raises(MissingBottom):
            check(bottomless, tag)


def test_subvariety_inclusions(small_corpus):
    for alg in small_corpus:
        if passes(alg, VarietyTag.IDCRL):
            assert passes(alg, VarietyTag.DLCMI)
        if alg.prod == alg.meet and passes(alg, VarietyTag.WH):
            assert passes(alg, VarietyTag.DLCMI)
        if passes(alg, VarietyTag.DLCMI):
            assert passes(alg, VarietyTag.GCRL)
            if alg.bottom is not None:
                assert passes(alg, VarietyTag.DLFI)


def test_derived_monotonicity_properties(small_corpus):
    # consequences of the axioms, not axioms themselves
    for alg in small_corpus:
        if not passes(alg, VarietyTag.DLCMI):
            continue
        m = alg.size
        for a, b, c in iproduct(range(m), repeat=3):
            if leq(alg, a, b):
                assert leq(alg, alg.prod[a][c], alg.prod[b][c])
                assert leq(alg, alg.imp[b][c], alg.imp[a][c])
                assert leq(alg, alg.imp[c][a], alg.imp[c][b])
            assert leq(alg, alg.prod[a][b], alg.meet[a][b])
            assert leq(alg, alg.prod[a][b], a)
            assert leq(alg, alg.imp[alg.unit][a], alg.imp[b][alg.prod[a][b]])


def test_lattice_tag_passes_for_constructed(mv3, ex1):
    assert check(mv3, VarietyTag.LATTICE).passed
    assert check(ex1, VarietyTag.DL).passed
    assert check(ex1, VarietyTag.BDL).passed


def test_cwrl_tag_on_residuated_chain(mv3):
    assert check(mv3, VarietyTag.CWRL).passed
    assert not check(wh_trivial_chain(3), VarietyTag.CWRL).passed


def test_integral_residuated_members_are_cwrl():
    # with the unit on top, every weak-residuation axiom trivializes or
    # follows from residuation, so the whole IDCRL corpus must pass
    from dlcmi import enumerate_algebras

    for m in (2, 3, 4):
        for alg in enumerate_algebras(m, VarietyTag.IDCRL):
            assert check(alg, VarietyTag.CWRL).passed


def test_witnesses_on_near_miss_algebras(mv3):
    shuffled = FiniteAlgebra(
        mv3.size, mv3.meet, mv3.join, mv3.imp, mv3.prod, mv3.unit, mv3.bottom
    )  # prod and imp swapped: many axioms break
    for tag in (VarietyTag.DLCMI, VarietyTag.CRL, VarietyTag.GCRL, VarietyTag.CWRL):
        report = check(shuffled, tag)
        assert not report.passed
        for axiom, witness in report.failures:
            assert not evaluate_axiom(shuffled, axiom, witness)
