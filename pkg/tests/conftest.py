"""Shared fixtures and independent test oracles.

The oracles here deliberately avoid the library's own fast paths: principal
congruences are recomputed by filtering all set partitions, so the closure
and witness engines are checked against something that cannot share a bug
with them.
"""

from __future__ import annotations

import random
from itertools import product as iproduct

import pytest

from dlcmi import (
    Congruence,
    FiniteAlgebra,
    FiniteFunction,
    enumerate_algebras,
    from_recipe,
    mv_chain,
    wh_trivial_chain,
)
from dlcmi.varieties import VarietyTag


@pytest.fixture(scope="session")
def mv3() -> FiniteAlgebra:
    return mv_chain(3)


@pytest.fixture(scope="session")
def wh3() -> FiniteAlgebra:
    return wh_trivial_chain(3)


@pytest.fixture(scope="session")
def ex1() -> FiniteAlgebra:
    return from_recipe("ex1")


@pytest.fixture(scope="session")
def mv4() -> FiniteAlgebra:
    return mv_chain(4)


@pytest.fixture(scope="session")
def singleton() -> FiniteAlgebra:
    return FiniteAlgebra(1, ((0,),), ((0,),), ((0,),), ((0,),), unit=0, bottom=0)


@pytest.fixture(scope="session")
def small_corpus(mv3, wh3, mv4) -> list[FiniteAlgebra]:
    """All DLCMI algebras of size <= 3 plus the named chains."""
    algs = [mv3, wh3, mv4]
    for m in (1, 2, 3):
        algs.extend(enumerate_algebras(m, VarietyTag.DLCMI))
    return algs


def all_partitions(m: int):
    """Every set partition of 0..m-1, as a Congruence."""
    if m == 0:
        return
    assignments = [[0]]
    for x in range(1, m):
        new = []
        for a in assignments:
            top = max(a)
            for blk in range(top + 2):
                new.append(a + [blk])
        assignments = new
    for a in assignments:
        blocks: dict[int, list[int]] = {}
        for x, blk in enumerate(a):
            blocks.setdefault(blk, []).append(x)
        yield Congruence(tuple(tuple(b) for b in blocks.values()))


def brute_congruences(alg: FiniteAlgebra) -> list[Congruence]:
    """All congruences by filtering every partition; usable for size <= 6."""
    return [p for p in all_partitions(alg.size) if p.is_congruence_of(alg)]


def brute_principal(alg: FiniteAlgebra, a: int, b: int) -> Congruence:
    """Finest congruence relating (a, b): blockwise intersection of all of them."""
    containing = [c for c in brute_congruences(alg) if c.relates(a, b)]
    m = alg.size
    leaders = []
    for x in range(m):
        block = min(
            y for y in range(m) if all(c.relates(x, y) for c in containing)
        )
        leaders.append(block)
    return Congruence.from_leaders(leaders)


def random_unary_polynomial(alg: FiniteAlgebra, rng: random.Random) -> FiniteFunction:
    """A random unary polynomial: term tree over the four ops, constants and x."""
    m = alg.size
    tables = (alg.meet, alg.join, alg.prod, alg.imp)

    def build(depth: int) -> tuple[int, ...]:
        if depth == 0 or rng.random() < 0.3:
            if rng.random() < 0.5:
                return tuple(range(m))
            c = rng.randrange(m)
            return (c,) * m
        t = rng.choice(tables)
        f = build(depth - 1)
        g = build(depth - 1)
        return tuple(t[f[x]][g[x]] for x in range(m))

    return FiniteFunction.unary(build(rng.randint(1, 4)))


def all_unary_functions(m: int):
    for table in iproduct(range(m), repeat=m):
        yield FiniteFunction.unary(table)
