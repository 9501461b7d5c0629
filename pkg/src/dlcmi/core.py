"""Finite algebras (A, meet, join, prod, imp, unit[, bottom]) and derived term operations.

The carrier is always 0..size-1 and the partial order is derived from the
meet table (x <= y iff meet(x,y) == x); the four operation tables are the
single source of truth.  Construction validates the lattice laws eagerly;
all other axioms are checked lazily by :mod:`dlcmi.varieties` so that
near-miss algebras remain representable for negative tests.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidAlgebra

Table = tuple[tuple[int, ...], ...]


def _as_table(rows, size: int, opname: str) -> Table:
    try:
        table = tuple(tuple(int(v) for v in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise InvalidAlgebra(f"{opname} table is not a matrix of integers") from exc
    if len(table) != size or any(len(row) != size for row in table):
        raise InvalidAlgebra(f"{opname} table must be {size}x{size}")
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not 0 <= v < size:
                raise InvalidAlgebra(f"{opname}[{i}][{j}] = {v} out of carrier range")
    return table


@dataclass(frozen=True, repr=False)
class FiniteAlgebra:
    """A finite algebra with lattice, monoidal and implication tables.

    ``unit`` is the monoid identity (the constant written 1 or e depending on
    the axiom system); ``bottom`` is the optional designated least element 0.
    Instances are immutable and hashable; all derived data is cached lazily.
    """

    size: int
    meet: Table
    join: Table
    prod: Table
    imp: Table
    unit: int
    bottom: int | None = None
    name: str | None = None

    def __post_init__(self):
        if self.size < 1:
            raise InvalidAlgebra("carrier must be nonempty")
        for opname in ("meet", "join", "prod", "imp"):
            object.__setattr__(self, opname, _as_table(getattr(self, opname), self.size, opname))
        if not 0 <= self.unit < self.size:
            raise InvalidAlgebra(f"unit {self.unit} out of carrier range")
        if self.bottom is not None and not 0 <= self.bottom < self.size:
            raise InvalidAlgebra(f"bottom {self.bottom} out of carrier range")
        from .varieties import lattice_violation

        bad = lattice_violation(self)
        if bad is not None:
            from .errors import NotALattice

            raise NotALattice(*bad)
        if self.bottom is not None:
            for x in range(self.size):
                if self.meet[self.bottom][x] != self.bottom:
                    raise InvalidAlgebra(f"designated bottom {self.bottom} is not below {x}")

    def leq(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    @cached_property
    def top(self) -> int:
        """Greatest element of the lattice order (exists: the lattice is finite)."""
        t = 0
        for x in range(1, self.size):
            t = self.join[t][x]
        return t

    @cached_property
    def is_chain(self) -> bool:
        m = self.size
        return all(self.leq(x, y) or self.leq(y, x) for x in range(m) for y in range(m))

    @cached_property
    def labels(self) -> tuple[str, ...]:
        """Cosmetic element names: chains of size 3 print 0,a,1; otherwise indices."""
        if self.size == 3 and self.is_chain:
            ranked = sorted(range(3), key=lambda x: sum(self.leq(y, x) for y in range(3)))
            names = ["?"] * 3
            for name, x in zip(("0", "a", "1"), ranked):
                names[x] = name
            return tuple(names)
        return tuple(str(i) for i in range(self.size))

    @cached_property
    def flat(self) -> dict[str, array]:
        """Flattened row-major tables for the closure/scan kernels."""
        m = self.size
        out = {}
        for opname in ("meet", "join", "prod", "imp"):
            table = getattr(self, opname)
            out[opname] = array("i", (table[i][j] for i in range(m) for j in range(m)))
        out["leq"] = array(
            "i", (1 if self.meet[i][j] == i else 0 for i in range(m) for j in range(m))
        )
        return out

    @cached_property
    def biimp_table(self) -> Table:
        m = self.size
        return tuple(tuple(biimp(self, x, y) for y in range(m)) for x in range(m))

    def describe(self, x: int) -> str:
        label = self.labels[x]
        return str(x) if label == str(x) else f"{x}({label})"

    def __repr__(self) -> str:
        name = f" {self.name!r}" if self.name else ""
        return f"<FiniteAlgebra{name} size={self.size} unit={self.unit} bottom={self.bottom}>"


def leq(alg: FiniteAlgebra, x: int, y: int) -> bool:
    """Derived order: x <= y iff meet(x,y) = x."""
    return alg.meet[x][y] == x


def power(alg: FiniteAlgebra, x: int, n: int) -> int:
    """n-th monoidal power, x^0 = unit and x^n = x * x^(n-1)."""
    r = alg.unit
    for _ in range(n):
        r = alg.prod[x][r]
    return r


def box(alg: FiniteAlgebra, x: int, n: int) -> int:
    """n-fold application of y -> (unit -> y)."""
    for _ in range(n):
        x = alg.imp[alg.unit][x]
    return x


def biimp(alg: FiniteAlgebra, x: int, y: int) -> int:
    """(x -> y) meet (y -> x)."""
    return alg.meet[alg.imp[x][y]][alg.imp[y][x]]


def t_term(alg: FiniteAlgebra, a: int, b: int, n: int) -> int:
    """Meet of the first n+1 box-iterates of (a <-> b)."""
    cur = biimp(alg, a, b)
    acc = cur
    for _ in range(n):
        cur = alg.imp[alg.unit][cur]
        acc = alg.meet[acc][cur]
    return acc


def t_pow(alg: FiniteAlgebra, a: int, b: int, n: int, k: int) -> int:
    """k-th monoidal power of t_n(a,b)."""
    return power(alg, t_term(alg, a, b, n), k)


def eval_qt(
    alg: FiniteAlgebra, i: int, n: int, k: int, x1: int, x2: int, y1: int, y2: int
) -> tuple[int, int]:
    """Evaluate the i-th quaternary term pair (u_i, v_i), i in 1..5.

    Equality of the returned pair is the caller's membership test; the five
    pairs together encode the three witness conditions of the principal
    congruence characterization.
    """
    if not 1 <= i <= 5:
        raise ValueError(f"term pair index {i} not in 1..5")
    mt, jn, pr = alg.meet, alg.join, alg.prod
    t = t_pow(alg, x1, x2, n, k)
    if i == 5:
        v = biimp(alg, y1, y2)
        return jn[t][v], v
    if i in (1, 2):
        lo, hi = (y1, y2) if i == 1 else (y2, y1)
        vl = mt[mt[lo][x1]][x2]
        vh = mt[mt[hi][x1]][x2]
    else:
        lo, hi = (y1, y2) if i == 3 else (y2, y1)
        vl = jn[jn[lo][x1]][x2]
        vh = jn[jn[hi][x1]][x2]
    return jn[pr[t][vl]][vh], vh


def t_sequence(alg: FiniteAlgebra, a: int, b: int) -> list[int]:
    """t_0(a,b) .. t_{m-1}(a,b); the chain is constant from index m-1 on."""
    m = alg.size
    cur = biimp(alg, a, b)
    acc = cur
    seq = [acc]
    for _ in range(m - 1):
        cur = alg.imp[alg.unit][cur]
        acc = alg.meet[acc][cur]
        seq.append(acc)
    return seq


def stabilization_bounds(alg: FiniteAlgebra, a: int, b: int) -> tuple[int, int]:
    """Least (N, K) at which t_n(a,b) and its monoidal powers go constant.

    The box orbit of a <-> b visits at most m distinct values, so the meet
    chain t_n is constant from n = m-1 on; powers of the stabilized value
    form a descending chain and plateau within m steps.  Both coordinates
    are therefore capped by the carrier size.
    """
    m = alg.size
    seq = t_sequence(alg, a, b)
    final = seq[-1]
    n0 = seq.index(final)
    e = final
    prev = alg.unit
    for k in range(m + 1):
        nxt = alg.prod[e][prev]
        if nxt == prev:
            return n0, k
        prev = nxt
    return n0, m


