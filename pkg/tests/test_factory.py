"""Constructions, recipes, isomorphism and enumeration with brute cross-checks."""

from __future__ import annotations

import itertools
import random

import pytest

from dlcmi import (
    CapExceeded,
    FiniteAlgebra,
    UnsupportedTag,
    boolean_algebra,
    check,
    enumerate_algebras,
    from_recipe,
    is_isomorphic,
    mv_chain,
    parse_recipe,
    product,
    wh_trivial_chain,
)
from dlcmi.errors import InvalidAlgebra, NotALattice
from dlcmi.varieties import VarietyTag, passes

# golden class counts per size, confirmed for m <= 3 by the brute forces below
GOLDEN_COUNTS = {
    VarietyTag.DLCMI: {1: 1, 2: 2, 3: 16, 4: 314},
    VarietyTag.WH: {1: 1, 2: 2, 3: 9, 4: 74},
    VarietyTag.IDCRL: {1: 1, 2: 1, 3: 2, 4: 7},
}


def test_mv_chain_tables_match_reference():
    mv3 = mv_chain(3)
    assert mv3.prod == ((0, 0, 0), (0, 0, 1), (0, 1, 2))
    assert mv3.imp == ((2, 2, 2), (1, 2, 2), (0, 1, 2))
    assert mv3.unit == 2 and mv3.bottom == 0
    assert mv3.prod[1][1] == 0
    assert mv3.imp[2][1] == 1
    assert check(mv3, VarietyTag.IDCRL).passed


def test_mv_chain_two_is_boolean():
    two = mv_chain(2)
    assert is_isomorphic(two, boolean_algebra(1)) is not None


def test_wh_trivial_chain():
    wh3 = wh_trivial_chain(3)
    assert wh3.prod == wh3.meet
    assert wh3.imp == ((2, 2, 2), (2, 2, 2), (2, 2, 2))
    assert check(wh3, VarietyTag.WH).passed
    assert check(wh3, VarietyTag.DLCMI).passed
    assert not check(wh3, VarietyTag.IDCRL).passed
    assert wh_trivial_chain(2).imp[1][0] == 1


def test_product_ex1_values(ex1):
    assert ex1.size == 9
    # (a,a)*(a,a) = (0,a) and (a,a)->(0,0) = (a,1) in row-major encoding
    assert ex1.prod[4][4] == 1
    assert ex1.imp[4][0] == 5
    assert ex1.unit == 8 and ex1.bottom == 0


def test_product_with_singleton(singleton, mv3):
    p = product(mv3, singleton)
    assert is_isomorphic(p, mv3) is not None
    p = product(singleton, mv3)
    assert is_isomorphic(p, mv3) is not None


def test_product_commutes_up_to_iso(mv3, wh3):
    assert is_isomorphic(product(mv3, wh3), product(wh3, mv3)) is not None


def test_is_isomorphic_examples(mv3, wh3):
    iso = is_isomorphic(mv3, mv3)
    assert iso == tuple(range(3))
    assert is_isomorphic(mv3, wh3) is None


def test_is_isomorphic_random_relabelings(ex1):
    rng = random.Random(2)
    for alg in (mv_chain(4), ex1):
        m = alg.size
        perm = list(range(m))
        rng.shuffle(perm)
        inv = [0] * m
        for i, p in enumerate(perm):
            inv[p] = i

        def relabel(t):
            return tuple(
                tuple(perm[t[inv[x]][inv[y]]] for y in range(m)) for x in range(m)
            )

        scrambled = FiniteAlgebra(
            m,
            relabel(alg.meet),
            relabel(alg.join),
            relabel(alg.prod),
            relabel(alg.imp),
            unit=perm[alg.unit],
            bottom=perm[alg.bottom],
        )
        found = is_isomorphic(alg, scrambled)
        assert found is not None
        for x, y in itertools.product(range(m), repeat=2):
            assert found[alg.prod[x][y]] == scrambled.prod[found[x]][found[y]]


def test_recipe_soundness_up_to_cap():
    for n in range(2, 6):
        assert check(mv_chain(n), VarietyTag.IDCRL).passed
        wh = wh_trivial_chain(n)
        assert check(wh, VarietyTag.DLCMI).passed
        assert check(wh, VarietyTag.WH).passed
    # products of members stay in the variety
    for a, b in [(mv_chain(2), wh_trivial_chain(3)), (mv_chain(3), mv_chain(3))]:
        assert check(product(a, b), VarietyTag.DLCMI).passed


def test_recipes():
    assert parse_recipe("mv:3").build().size == 3
    assert parse_recipe("nonsense") is None
    assert parse_recipe("mv:x") is None
    assert from_recipe("ex1").name == "ex1"
    assert from_recipe("bool:2").size == 4
    with pytest.raises(ValueError):
        from_recipe("zzz:9")


def test_enumerate_golden_counts():
    for tag, by_size in GOLDEN_COUNTS.items():
        for size, expected in by_size.items():
            assert len(enumerate_algebras(size, tag)) == expected


def test_enumerate_subvariety_count_inequalities():
    for m in (1, 2, 3, 4):
        dlcmi = len(enumerate_algebras(m, VarietyTag.DLCMI))
        assert len(enumerate_algebras(m, VarietyTag.IDCRL)) <= dlcmi
        assert len(enumerate_algebras(m, VarietyTag.WH)) <= dlcmi


def test_enumerate_members_pass_and_are_distinct():
    for tag in (VarietyTag.DLCMI, VarietyTag.WH, VarietyTag.IDCRL):
        algs = enumerate_algebras(3, tag)
        for alg in algs:
            assert check(alg, tag).passed
        for i, a in enumerate(algs):
            for b in algs[i + 1 :]:
                assert is_isomorphic(a, b) is None


def test_enumerate_idcrl_members_reappear_in_dlcmi():
    dlcmi = enumerate_algebras(3, VarietyTag.DLCMI)
    for alg in enumerate_algebras(3, VarietyTag.IDCRL):
        assert any(is_isomorphic(alg, other) is not None for other in dlcmi)


def test_enumerate_completeness_spot_check():
    # a scrambled member must be recognized as isomorphic to a returned class
    rng = random.Random(9)
    algs = enumerate_algebras(3, VarietyTag.DLCMI)
    for alg in rng.sample(algs, 5):
        perm = list(range(3))
        rng.shuffle(perm)
        inv = [0] * 3
        for i, p in enumerate(perm):
            inv[p] = i

        def relabel(t):
            return tuple(tuple(perm[t[inv[x]][inv[y]]] for y in range(3)) for x in range(3))

        try:
            scrambled = FiniteAlgebra(
                3,
                relabel(alg.meet),
                relabel(alg.join),
                relabel(alg.prod),
                relabel(alg.imp),
                unit=perm[alg.unit],
                bottom=perm[alg.bottom],
            )
        except (NotALattice, InvalidAlgebra):
            continue  # relabeling need not keep 0 the least element
        assert any(is_isomorphic(scrambled, rep) is not None for rep in algs)


def test_enumerate_cap_and_tags():
    with pytest.raises(CapExceeded):
        enumerate_algebras(6, VarietyTag.DLCMI)
    with pytest.raises(UnsupportedTag):
        enumerate_algebras(2, VarietyTag.GCRL)


def test_enumerate_cap_env_override(monkeypatch):
    monkeypatch.setenv("DLCMI_ENUM_CAP", "2")
    with pytest.raises(CapExceeded):
        enumerate_algebras(3, VarietyTag.DLCMI)
    monkeypatch.delenv("DLCMI_ENUM_CAP")
    assert len(enumerate_algebras(3, VarietyTag.DLCMI)) == 16


# --- independent brute-force confirmations ---


def test_brute_force_m2_unpruned():
    from tests.brute import brute_m2_classes

    assert len(brute_m2_classes()) == 2


def test_brute_force_m3_semibrute():
    from tests.brute import brute_m3_classes

    classes = brute_m3_classes()
    assert len(classes) == GOLDEN_COUNTS[VarietyTag.DLCMI][3]
    assert (
        len([a for a in classes if passes(a, VarietyTag.WH)])
        == GOLDEN_COUNTS[VarietyTag.WH][3]
    )
    assert (
        len([a for a in classes if passes(a, VarietyTag.IDCRL)])
        == GOLDEN_COUNTS[VarietyTag.IDCRL][3]
    )
    # and class-by-class: each brute class appears in the layered enumeration
    layered = enumerate_algebras(3, VarietyTag.DLCMI)
    for rep in classes:
        assert any(is_isomorphic(rep, alg) is not None for alg in layered)
