"""Constructions, recipes, isomorphism testing and small-model enumeration.

Enumeration works layer by layer: distributive lattice skeletons up to
isomorphism, then monoid tables determined by their values on pairs of
join-irreducibles, then implication tables determined by their values on
join-irreducible x meet-irreducible cells.  The final arbiter is always the
full axiom check, so the layered generation can only lose completeness, not
soundness; completeness is cross-checked against raw brute force in the
test suite.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations, product as iproduct

from .core import FiniteAlgebra, Table
from .errors import CapExceeded, UnsupportedTag
from .varieties import VarietyTag, check

DEFAULT_ENUM_CAP = 5


def mv_chain(n: int) -> FiniteAlgebra:
    """The n-element Lukasiewicz chain presented as a residuated lattice."""
    if n < 2:
        raise ValueError("chain needs at least 2 elements")
    top = n - 1
    rng = range(n)
    return FiniteAlgebra(
        size=n,
        meet=tuple(tuple(min(i, j) for j in rng) for i in rng),
        join=tuple(tuple(max(i, j) for j in rng) for i in rng),
        prod=tuple(tuple(max(0, i + j - top) for j in rng) for i in rng),
        imp=tuple(tuple(min(top, top - i + j) for j in rng) for i in rng),
        unit=top,
        bottom=0,
        name=f"mv:{n}",
    )


def wh_trivial_chain(n: int) -> FiniteAlgebra:
    """The n-element chain with prod = meet and implication constantly top."""
    if n < 2:
        raise ValueError("chain needs at least 2 elements")
    top = n - 1
    rng = range(n)
    return FiniteAlgebra(
        size=n,
        meet=tuple(tuple(min(i, j) for j in rng) for i in rng),
        join=tuple(tuple(max(i, j) for j in rng) for i in rng),
        prod=tuple(tuple(min(i, j) for j in rng) for i in rng),
        imp=tuple(tuple(top for _ in rng) for _ in rng),
        unit=top,
        bottom=0,
        name=f"whtriv:{n}",
    )


def boolean_algebra(k: int) -> FiniteAlgebra:
    """The powerset algebra on k atoms, elements encoded as bitmasks."""
    if k < 1:
        raise ValueError("need at least one atom")
    size = 1 << k
    full = size - 1
    rng = range(size)
    return FiniteAlgebra(
        size=size,
        meet=tuple(tuple(i & j for j in rng) for i in rng),
        join=tuple(tuple(i | j for j in rng) for i in rng),
        prod=tuple(tuple(i & j for j in rng) for i in rng),
        imp=tuple(tuple((~i | j) & full for j in rng) for i in rng),
        unit=full,
        bottom=0,
        name=f"bool:{k}",
    )


def product(a: FiniteAlgebra, b: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Direct product with row-major index encoding (i, j) -> i*|B| + j."""
    nb = b.size
    size = a.size * nb

    def table(ta: Table, tb: Table) -> Table:
        out = []
        for i in range(size):
            ia, ib = divmod(i, nb)
            row = []
            for j in range(size):
                ja, jb = divmod(j, nb)
                row.append(ta[ia][ja] * nb + tb[ib][jb])
            out.append(tuple(row))
        return tuple(out)

    bottom = None
    if a.bottom is not None and b.bottom is not None:
        bottom = a.bottom * nb + b.bottom
    return FiniteAlgebra(
        size=size,
        meet=table(a.meet, b.meet),
        join=table(a.join, b.join),
        prod=table(a.prod, b.prod),
        imp=table(a.imp, b.imp),
        unit=a.unit * nb + b.unit,
        bottom=bottom,
        name=name,
    )


@dataclass(frozen=True)
class AlgebraRecipe:
    """A named construction; ``parts`` carries the factors of a product."""

    kind: str
    n: int = 0
    parts: tuple[AlgebraRecipe, ...] = ()

    def build(self, name: str | None = None) -> FiniteAlgebra:
        if self.kind == "mv_chain":
            alg = mv_chain(self.n)
        elif self.kind == "wh_trivial_chain":
            alg = wh_trivial_chain(self.n)
        elif self.kind == "boolean":
            alg = boolean_algebra(self.n)
        elif self.kind == "product":
            left = self.parts[0].build()
            right = self.parts[1].build()
            alg = product(left, right)
        else:
            raise ValueError(f"unknown recipe kind {self.kind!r}")
        if name is not None:
            alg = FiniteAlgebra(
                alg.size, alg.meet, alg.join, alg.prod, alg.imp, alg.unit, alg.bottom, name
            )
        return alg


def parse_recipe(text: str) -> AlgebraRecipe | None:
    """Recipe strings: mv:N, whtriv:N, bool:K and the named product ex1."""
    if text == "ex1":
        return AlgebraRecipe(
            "product",
            parts=(AlgebraRecipe("mv_chain", 3), AlgebraRecipe("wh_trivial_chain", 3)),
        )
    head, sep, tail = text.partition(":")
    if not sep or not tail.isdigit():
        return None
    n = int(tail)
    kinds = {"mv": "mv_chain", "whtriv": "wh_trivial_chain", "bool": "boolean"}
    if head not in kinds:
        return None
    return AlgebraRecipe(kinds[head], n)


def from_recipe(text: str) -> FiniteAlgebra:
    recipe = parse_recipe(text)
    if recipe is None:
        raise ValueError(f"unknown recipe {text!r}")
    return recipe.build(name=text)


def _profiles(alg: FiniteAlgebra) -> list[tuple]:
    m = alg.size
    base = []
    for x in range(m):
        down = sum(alg.leq(y, x) for y in range(m))
        up = sum(alg.leq(x, y) for y in range(m))
        base.append((down, up, x == alg.unit, alg.bottom is not None and x == alg.bottom))
    refined = []
    for x in range(m):
        rows = sorted(
            (
                base[alg.meet[x][y]],
                base[alg.join[x][y]],
                base[alg.prod[x][y]],
                base[alg.prod[y][x]],
                base[alg.imp[x][y]],
                base[alg.imp[y][x]],
            )
            for y in range(m)
        )
        refined.append((base[x], tuple(rows)))
    return refined


def is_isomorphic(a: FiniteAlgebra, b: FiniteAlgebra) -> tuple[int, ...] | None:
    """A carrier bijection preserving all operations and constants, or None."""
    if a.size != b.size or (a.bottom is None) != (b.bottom is None):
        return None
    m = a.size
    pa, pb = _profiles(a), _profiles(b)
    candidates = [[y for y in range(m) if pb[y] == pa[x]] for x in range(m)]
    if any(not c for c in candidates):
        return None
    order = sorted(range(m), key=lambda x: len(candidates[x]))
    image: list[int | None] = [None] * m
    used = [False] * m

    def full_check() -> bool:
        for x, y in iproduct(range(m), repeat=2):
            if image[a.meet[x][y]] != b.meet[image[x]][image[y]]:
                return False
            if image[a.join[x][y]] != b.join[image[x]][image[y]]:
                return False
            if image[a.prod[x][y]] != b.prod[image[x]][image[y]]:
                return False
            if image[a.imp[x][y]] != b.imp[image[x]][image[y]]:
                return False
        return True

    def rec(k: int) -> tuple[int, ...] | None:
        if k == m:
            if image[a.unit] == b.unit and full_check():
                return tuple(image)  # type: ignore[arg-type]
            return None
        x = order[k]
        for y in candidates[x]:
            if used[y]:
                continue
            image[x] = y
            used[y] = True
            found = rec(k + 1)
            if found is not None:
                return found
            used[y] = False
            image[x] = None
        return None

    return rec(0)


@dataclass(frozen=True)
class _Skeleton:
    """A canonical distributive-lattice labeling with its irreducibles."""

    size: int
    meet: Table
    join: Table

    def leq(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        out = []
        for j in range(self.size):
            below = [x for x in range(self.size) if self.leq(x, j) and x != j]
            if not below:
                continue
            covers = [x for x in below if not any(self.leq(x, y) and x != y for y in below)]
            if len(covers) == 1:
                out.append(j)
        return tuple(out)

    @cached_property
    def meet_irreducibles(self) -> tuple[int, ...]:
        out = []
        for u in range(self.size):
            above = [x for x in range(self.size) if self.leq(u, x) and x != u]
            if not above:
                continue
            covers = [x for x in above if not any(self.leq(y, x) and x != y for y in above)]
            if len(covers) == 1:
                out.append(u)
        return tuple(out)

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        m = self.size
        out = []
        for perm in permutations(range(m)):
            if all(
                perm[self.meet[x][y]] == self.meet[perm[x]][perm[y]]
                for x in range(m)
                for y in range(m)
            ):
                out.append(perm)
        return tuple(out)


def _bounded_orders(m: int):
    """All partial orders on 0..m-1 where the labeling is a linear extension."""

    def rec(j: int, downs: list[frozenset[int]]):
        if j == m:
            yield list(downs)
            return
        for mask in range(1 << j):
            strict = frozenset(i for i in range(j) if mask >> i & 1)
            if all(downs[i] <= strict for i in strict):
                downs.append(strict)
                yield from rec(j + 1, downs)
                downs.pop()

    yield from rec(1, [frozenset()])


def _distributive_lattices(m: int) -> list[_Skeleton]:
    found: list[_Skeleton] = []
    for downs in _bounded_orders(m):
        le = [[x == y or x in downs[y] for y in range(m)] for x in range(m)]
        meet = [[0] * m for _ in range(m)]
        join = [[0] * m for _ in range(m)]
        is_lattice = True
        for x in range(m):
            for y in range(m):
                lower = [z for z in range(m) if le[z][x] and le[z][y]]
                glb = [z for z in lower if all(le[w][z] for w in lower)]
                upper = [z for z in range(m) if le[x][z] and le[y][z]]
                lub = [z for z in upper if all(le[z][w] for w in upper)]
                if len(glb) != 1 or len(lub) != 1:
                    is_lattice = False
                    break
                meet[x][y] = glb[0]
                join[x][y] = lub[0]
            if not is_lattice:
                break
        if not is_lattice:
            continue
        distributive = all(
            meet[a][join[b][c]] == join[meet[a][b]][meet[a][c]]
            for a, b, c in iproduct(range(m), repeat=3)
        )
        if not distributive:
            continue
        cand = _Skeleton(m, tuple(map(tuple, meet)), tuple(map(tuple, join)))
        if not any(_order_isomorphic(cand, kept) for kept in found):
            found.append(cand)
    return found


def _order_isomorphic(a: _Skeleton, b: _Skeleton) -> bool:
    m = a.size

    def counts(s: _Skeleton) -> list[tuple[int, int]]:
        return [
            (
                sum(s.leq(y, x) for y in range(m)),
                sum(s.leq(x, y) for y in range(m)),
            )
            for x in range(m)
        ]

    ca, cb = counts(a), counts(b)
    if sorted(ca) != sorted(cb):
        return False
    for perm in permutations(range(m)):
        if all(cb[perm[x]] == ca[x] for x in range(m)) and all(
            perm[a.meet[x][y]] == b.meet[perm[x]][perm[y]]
            for x in range(m)
            for y in range(m)
        ):
            return True
    return False


def _down_irreducibles(lat: _Skeleton) -> list[list[int]]:
    return [
        [j for j in lat.join_irreducibles if lat.leq(j, x)] for x in range(lat.size)
    ]


def _up_irreducibles(lat: _Skeleton) -> list[list[int]]:
    return [
        [u for u in lat.meet_irreducibles if lat.leq(x, u)] for x in range(lat.size)
    ]


def _monoid_tables(lat: _Skeleton) -> list[Table]:
    """Commutative monoid tables with unit = top that distribute over joins.

    Such a table is determined by its restriction to unordered pairs of
    join-irreducibles, which must be monotone and below the meet; the
    extension joins cell values over irreducibles under each argument.
    """
    m = lat.size
    top = m - 1
    irr = lat.join_irreducibles
    down = _down_irreducibles(lat)
    cells = [(irr[i], irr[j]) for i in range(len(irr)) for j in range(i, len(irr))]
    tables: list[Table] = []
    values: dict[tuple[int, int], int] = {}

    def comparable(p: tuple[int, int], q: tuple[int, int]) -> bool:
        return (lat.leq(p[0], q[0]) and lat.leq(p[1], q[1])) or (
            lat.leq(p[0], q[1]) and lat.leq(p[1], q[0])
        )

    def extend() -> Table | None:
        prod = [[0] * m for _ in range(m)]
        for x in range(m):
            for y in range(m):
                acc = 0
                for j1 in down[x]:
                    for j2 in down[y]:
                        key = (j1, j2) if (j1, j2) in values else (j2, j1)
                        acc = lat.join[acc][values[key]]
                prod[x][y] = acc
        for x in range(m):
            if prod[top][x] != x or prod[x][top] != x:
                return None
        for x, y, z in iproduct(range(m), repeat=3):
            if prod[prod[x][y]][z] != prod[x][prod[y][z]]:
                return None
        return tuple(map(tuple, prod))

    def rec(k: int) -> None:
        if k == len(cells):
            table = extend()
            if table is not None:
                tables.append(table)
            return
        cell = cells[k]
        bound = lat.meet[cell[0]][cell[1]]
        for v in range(m):
            if not lat.leq(v, bound):
                continue
            ok = True
            for prev, pv in values.items():
                if comparable(prev, cell) and not lat.leq(pv, v):
                    ok = False
                    break
                if comparable(cell, prev) and not lat.leq(v, pv):
                    ok = False
                    break
            if ok:
                values[cell] = v
                rec(k + 1)
                del values[cell]

    rec(0)
    return tables


def _imp_tables(lat: _Skeleton) -> list[Table]:
    """Implication tables compatible with the meet/join hemimorphism laws.

    Determined by join-irreducible x meet-irreducible cells: antitone in the
    first coordinate, monotone in the second, and forced to top on cells
    with j <= u (which is exactly reflexivity x->x = top on the extension).
    """
    m = lat.size
    top = m - 1
    jirr, mirr = lat.join_irreducibles, lat.meet_irreducibles
    down, up = _down_irreducibles(lat), _up_irreducibles(lat)
    cells = [(j, u) for j in jirr for u in mirr]
    tables: list[Table] = []
    values: dict[tuple[int, int], int] = {}

    def extend() -> Table | None:
        imp = [[0] * m for _ in range(m)]
        for x in range(m):
            for y in range(m):
                acc = top
                for j in down[x]:
                    for u in up[y]:
                        acc = lat.meet[acc][values[(j, u)]]
                imp[x][y] = acc
        for x in range(m):
            if imp[x][x] != top:
                return None
        return tuple(map(tuple, imp))

    def rec(k: int) -> None:
        if k == len(cells):
            table = extend()
            if table is not None:
                tables.append(table)
            return
        j, u = cells[k]
        if lat.leq(j, u):
            choices = [top]
        else:
            choices = list(range(m))
        for v in choices:
            ok = True
            for (pj, pu), pv in values.items():
                if lat.leq(pj, j) and lat.leq(u, pu) and not lat.leq(v, pv):
                    ok = False
                    break
                if lat.leq(j, pj) and lat.leq(pu, u) and not lat.leq(pv, v):
                    ok = False
                    break
            if ok:
                values[(j, u)] = v
                rec(k + 1)
                del values[(j, u)]

    rec(0)
    return tables


def _permute_tables(size: int, tables: tuple[Table, ...], perm) -> tuple:
    inv = [0] * size
    for i, p in enumerate(perm):
        inv[p] = i
    out = []
    for t in tables:
        out.append(
            tuple(
                tuple(perm[t[inv[x]][inv[y]]] for y in range(size)) for x in range(size)
            )
        )
    return tuple(out)


def enumeration_cap() -> int:
    env = os.environ.get("DLCMI_ENUM_CAP")
    return int(env) if env else DEFAULT_ENUM_CAP


_ENUM_TAGS = (VarietyTag.DLCMI, VarietyTag.WH, VarietyTag.IDCRL)


def _chain_and_mono_hold(lat: _Skeleton, prod_t: Table, imp_t: Table) -> bool:
    # raw prefilter for the two product/implication interaction axioms
    m = lat.size
    for a in range(m):
        ia = imp_t[a]
        for b in range(m):
            ab = ia[b]
            ib = imp_t[b]
            pa = prod_t[ab]
            for c in range(m):
                if not lat.leq(pa[ib[c]], ia[c]):
                    return False
                if not lat.leq(ab, imp_t[prod_t[a][c]][prod_t[b][c]]):
                    return False
    return True


@lru_cache(maxsize=64)
def _enumerate_cached(size: int, tag: VarietyTag) -> tuple[FiniteAlgebra, ...]:
    if tag is not VarietyTag.DLCMI:
        return tuple(
            alg for alg in _enumerate_cached(size, VarietyTag.DLCMI) if check(alg, tag).passed
        )
    out: list[FiniteAlgebra] = []
    for lat in _distributive_lattices(size):
        auts = lat.automorphisms
        keyed: list[tuple[tuple, FiniteAlgebra]] = []
        imps = _imp_tables(lat)
        for prod_t in _monoid_tables(lat):
            for imp_t in imps:
                if not _chain_and_mono_hold(lat, prod_t, imp_t):
                    continue
                key = (prod_t, imp_t)
                canon = min(_permute_tables(size, key, perm) for perm in auts)
                if key != canon:
                    continue
                alg = FiniteAlgebra(
                    size=size,
                    meet=lat.meet,
                    join=lat.join,
                    prod=prod_t,
                    imp=imp_t,
                    unit=size - 1,
                    bottom=0,
                )
                if check(alg, tag).passed:
                    keyed.append((key, alg))
        keyed.sort(key=lambda kv: kv[0])
        out.extend(alg for _, alg in keyed)
    return tuple(out)


def enumerate_algebras(
    size: int, tag: VarietyTag, cap: int | None = None
) -> tuple[FiniteAlgebra, ...]:
    """All algebras of the given size passing the tag, up to isomorphism.

    Supports the distributive monoidal-implicative tags; the generation
    strategy relies on join-prime decompositions, which the other axiom
    systems do not guarantee.
    """
    limit = cap if cap is not None else enumeration_cap()
    if size < 1:
        raise ValueError("size must be positive")
    if size > limit:
        raise CapExceeded(f"size {size} exceeds enumeration cap {limit}")
    if tag not in _ENUM_TAGS:
        raise UnsupportedTag(f"enumeration not supported for {tag.value}")
    if size == 1:
        single = FiniteAlgebra(
            1, ((0,),), ((0,),), ((0,),), ((0,),), unit=0, bottom=0
        )
        return (single,)
    return _enumerate_cached(size, tag)
