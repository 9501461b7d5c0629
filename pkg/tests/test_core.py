"""Derived term operations: frozen example values and order-theoretic laws."""

from __future__ import annotations

from itertools import product as iproduct

import pytest

from dlcmi import (
    FiniteAlgebra,
    NotALattice,
    biimp,
    box,
    eval_qt,
    leq,
    power,
    stabilization_bounds,
    t_pow,
    t_term,
)
from dlcmi.errors import InvalidAlgebra
from dlcmi.varieties import VarietyTag, passes


def test_leq_examples(mv3):
    assert leq(mv3, 0, 1)
    assert not leq(mv3, 2, 1)
    assert all(leq(mv3, x, x) for x in range(3))


def test_power_examples(mv3, small_corpus):
    assert power(mv3, 1, 2) == 0
    for alg in small_corpus:
        for x in range(alg.size):
            assert power(alg, x, 0) == alg.unit
        for n in range(alg.size + 2):
            assert power(alg, alg.unit, n) == alg.unit


def test_box_examples(mv3, wh3, small_corpus):
    assert box(mv3, 1, 1) == 1
    assert box(wh3, 0, 1) == 2
    for alg in small_corpus:
        for x in range(alg.size):
            assert box(alg, x, 0) == x


def test_biimp_examples(mv3, wh3, small_corpus):
    assert biimp(mv3, 1, 2) == 1
    assert biimp(wh3, 0, 2) == 2
    for alg in small_corpus:
        if not passes(alg, VarietyTag.DLCMI):
            continue
        for x in range(alg.size):
            assert biimp(alg, x, x) == alg.unit


def test_t_term_examples(mv3, wh3, small_corpus):
    # box is the identity on the Lukasiewicz chain, so t_n(a, 1) stays a <-> 1
    assert t_term(mv3, 1, 2, 3) == 1
    assert t_term(wh3, 0, 1, 2) == 2
    for alg in small_corpus:
        if not passes(alg, VarietyTag.DLCMI):
            continue
        for x in range(alg.size):
            for n in range(3):
                assert t_term(alg, x, x, n) == alg.unit


def test_t_pow_examples(mv3, wh3):
    assert t_pow(mv3, 1, 2, 1, 2) == 0
    assert t_pow(wh3, 0, 1, 2, 5) == 2
    for a, b in iproduct(range(3), repeat=2):
        assert t_pow(mv3, a, b, 1, 0) == mv3.unit


def test_eval_qt_examples(mv3, wh3):
    assert eval_qt(mv3, 5, 1, 1, 1, 2, 0, 0) == (2, 2)
    assert eval_qt(wh3, 3, 1, 1, 0, 1, 0, 2) == (2, 2)
    # with x1 = x2 the first pair reduces to a pure lattice comparison
    for alg in (mv3, wh3):
        for x, y1, y2 in iproduct(range(3), repeat=3):
            u, v = eval_qt(alg, 1, 0, 1, x, x, y1, y2)
            reduced = leq(alg, alg.meet[y1][x], alg.meet[y2][x])
            assert (u == v) == reduced


def test_eval_qt_rejects_bad_index(mv3):
    with pytest.raises(ValueError):
        eval_qt(mv3, 6, 0, 0, 0, 0, 0, 0)


def test_qt_pairs_encode_membership_conditions(mv3, wh3):
    # u_i = v_i is exactly the corresponding inequality of the witness test
    from dlcmi.core import biimp as bi

    for alg in (mv3, wh3):
        mt, jn, pr = alg.meet, alg.join, alg.prod
        for x1, x2, y1, y2 in iproduct(range(3), repeat=4):
            for n, k in iproduct(range(3), repeat=2):
                t = t_pow(alg, x1, x2, n, k)
                ym1 = mt[mt[y1][x1]][x2]
                ym2 = mt[mt[y2][x1]][x2]
                yj1 = jn[jn[y1][x1]][x2]
                yj2 = jn[jn[y2][x1]][x2]
                conds = [
                    leq(alg, pr[t][ym1], ym2),
                    leq(alg, pr[t][ym2], ym1),
                    leq(alg, pr[t][yj1], yj2),
                    leq(alg, pr[t][yj2], yj1),
                    leq(alg, t, bi(alg, y1, y2)),
                ]
                for i in range(1, 6):
                    u, v = eval_qt(alg, i, n, k, x1, x2, y1, y2)
                    assert (u == v) == conds[i - 1]


def test_stabilization_examples(mv3, wh3, small_corpus):
    assert stabilization_bounds(mv3, 1, 2) == (0, 2)
    assert stabilization_bounds(wh3, 0, 1) == (0, 0)
    for alg in small_corpus:
        if not passes(alg, VarietyTag.DLCMI):
            continue
        for x in range(alg.size):
            assert stabilization_bounds(alg, x, x) == (0, 0)


def test_stabilization_bounds_capped_and_sound(small_corpus):
    for alg in small_corpus:
        m = alg.size
        for a, b in iproduct(range(m), repeat=2):
            n0, k0 = stabilization_bounds(alg, a, b)
            assert n0 <= m and k0 <= m
            stable = t_pow(alg, a, b, n0, k0)
            for extra_n in range(n0, n0 + m + 1):
                for extra_k in range(k0, k0 + m + 1):
                    assert t_pow(alg, a, b, extra_n, extra_k) == stable


def test_antitone_chain(small_corpus):
    for alg in small_corpus:
        if not passes(alg, VarietyTag.DLCMI):
            continue
        m = alg.size
        for a, b in iproduct(range(m), repeat=2):
            for n in range(m):
                assert leq(alg, t_term(alg, a, b, n + 1), t_term(alg, a, b, n))
                for k in range(m):
                    assert leq(alg, t_pow(alg, a, b, n, k + 1), t_pow(alg, a, b, n, k))


def test_product_below_meet(small_corpus):
    for alg in small_corpus:
        if not passes(alg, VarietyTag.DLCMI):
            continue
        for x, y in iproduct(range(alg.size), repeat=2):
            assert leq(alg, alg.prod[x][y], alg.meet[x][y])


def test_box_power_interchange(small_corpus):
    # (1 -> a)^n is below 1 -> a^n
    for alg in small_corpus:
        if not passes(alg, VarietyTag.DLCMI):
            continue
        for x in range(alg.size):
            for n in range(alg.size + 1):
                assert leq(alg, power(alg, box(alg, x, 1), n), box(alg, power(alg, x, n), 1))


def test_box_preserves_meets(small_corpus):
    for alg in small_corpus:
        if not passes(alg, VarietyTag.DLCMI):
            continue
        for x, y in iproduct(range(alg.size), repeat=2):
            assert box(alg, alg.meet[x][y], 1) == alg.meet[box(alg, x, 1)][box(alg, y, 1)]


def test_construction_rejects_non_lattice():
    # meet not idempotent
    with pytest.raises(NotALattice) as info:
        FiniteAlgebra(
            2,
            meet=((1, 0), (0, 1)),
            join=((0, 1), (1, 1)),
            prod=((0, 0), (0, 1)),
            imp=((1, 1), (0, 1)),
            unit=1,
        )
    assert info.value.axiom == "lat.meet.idem"
    assert info.value.witness == (0,)


def test_construction_rejects_bad_shapes():
    with pytest.raises(InvalidAlgebra):
        FiniteAlgebra(2, ((0,),), ((0, 1), (1, 1)), ((0, 0), (0, 1)), ((1, 1), (0, 1)), 1)
    with pytest.raises(InvalidAlgebra):
        FiniteAlgebra(
            2,
            ((0, 0), (0, 5)),
            ((0, 1), (1, 1)),
            ((0, 0), (0, 1)),
            ((1, 1), (0, 1)),
            1,
        )
    with pytest.raises(InvalidAlgebra):
        # designated bottom is not the least element
        FiniteAlgebra(
            2,
            ((0, 0), (0, 1)),
            ((0, 1), (1, 1)),
            ((0, 0), (0, 1)),
            ((1, 1), (0, 1)),
            unit=1,
            bottom=1,
        )


def test_degenerate_singleton(singleton):
    assert leq(singleton, 0, 0)
    assert power(singleton, 0, 5) == 0
    assert t_pow(singleton, 0, 0, 3, 3) == 0
    assert stabilization_bounds(singleton, 0, 0) == (0, 0)


def test_labels_on_three_chains(mv3, wh3, ex1):
    assert mv3.labels == ("0", "a", "1")
    assert wh3.labels == ("0", "a", "1")
    assert ex1.labels == tuple(str(i) for i in range(9))
