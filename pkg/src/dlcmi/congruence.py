"""Principal congruences two ways, the congruence lattice, and cross-checks.

``principal_oracle`` is the generic closure construction; ``r_congruence``
materializes the three-condition witness characterization.  ``verify_pt``
confirms that the two agree on every generator pair, which is the flagship
invariant of the whole workbench.
"""

from __future__ import annotations

import time
from array import array
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as iproduct

from . import _kernels
from .core import (
    FiniteAlgebra,
    biimp,
    leq,
    stabilization_bounds,
    t_pow,
    t_sequence,
)
from .errors import (
    InternalInconsistency,
    NotDLCMI,
    NotIDCRL,
    NotWH,
    PreconditionFailed,
)
from .varieties import VarietyTag, first_violation, passes


@dataclass(frozen=True, repr=False)
class Congruence:
    """A partition of the carrier, canonical form: blocks sorted by least element."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = sorted(x for block in self.blocks for x in block)
        if seen != list(range(len(seen))) or not seen:
            raise ValueError("blocks must partition 0..m-1")
        canonical = tuple(tuple(sorted(b)) for b in sorted(self.blocks, key=min))
        object.__setattr__(self, "blocks", canonical)

    @cached_property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    @cached_property
    def leaders(self) -> tuple[int, ...]:
        out = [0] * self.size
        for block in self.blocks:
            lead = block[0]
            for x in block:
                out[x] = lead
        return tuple(out)

    @classmethod
    def from_leaders(cls, leaders) -> Congruence:
        groups: dict[int, list[int]] = {}
        for x, lead in enumerate(leaders):
            groups.setdefault(lead, []).append(x)
        return cls(tuple(tuple(g) for g in groups.values()))

    @classmethod
    def from_pairs(cls, size: int, pairs) -> Congruence:
        parent = list(range(size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x, y in pairs:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[ry] = rx
        groups: dict[int, list[int]] = {}
        for x in range(size):
            groups.setdefault(find(x), []).append(x)
        return cls(tuple(tuple(g) for g in groups.values()))

    @classmethod
    def identity(cls, size: int) -> Congruence:
        return cls(tuple((x,) for x in range(size)))

    @classmethod
    def full(cls, size: int) -> Congruence:
        return cls((tuple(range(size)),))

    def relates(self, x: int, y: int) -> bool:
        return self.leaders[x] == self.leaders[y]

    def block_of(self, x: int) -> tuple[int, ...]:
        for block in self.blocks:
            if self.leaders[x] == block[0]:
                return block
        raise IndexError(x)

    def join(self, other: Congruence) -> Congruence:
        pairs = [(b[0], x) for b in self.blocks for x in b]
        pairs += [(b[0], x) for b in other.blocks for x in b]
        return Congruence.from_pairs(self.size, pairs)

    def refines(self, other: Congruence) -> bool:
        return all(other.relates(b[0], x) for b in self.blocks for x in b)

    def is_congruence_of(self, alg: FiniteAlgebra) -> bool:
        """Blockwise closure under the four basic operations."""
        tables = (alg.meet, alg.join, alg.prod, alg.imp)
        for block in self.blocks:
            lead = block[0]
            for x in block[1:]:
                for t in tables:
                    for c in range(alg.size):
                        if not self.relates(t[lead][c], t[x][c]):
                            return False
                        if not self.relates(t[c][lead], t[c][x]):
                            return False
        return True

    def __str__(self) -> str:
        inner = ",".join("{" + ",".join(str(x) for x in b) + "}" for b in self.blocks)
        return "{" + inner + "}"

    def __repr__(self) -> str:
        return f"Congruence({self})"


@dataclass(frozen=True)
class RWitness:
    n: int
    k: int


def _require(alg: FiniteAlgebra, tag: VarietyTag, exc: type) -> None:
    if not passes(alg, tag):
        raise exc()


@lru_cache(maxsize=32768)
def principal_oracle(alg: FiniteAlgebra, a: int, b: int) -> Congruence:
    """Least congruence containing (a, b), by closure under unary translations."""
    f = alg.flat
    leaders = _kernels.principal_closure(
        alg.size, f["meet"], f["join"], f["prod"], f["imp"], a, b
    )
    return Congruence.from_leaders(leaders)


def r_conditions_hold(alg: FiniteAlgebra, a, b, c, d, n, k) -> bool:
    """Direct evaluation of the three witness conditions at one (n, k)."""
    t = t_pow(alg, a, b, n, k)
    mt, jn, pr = alg.meet, alg.join, alg.prod
    cm = mt[mt[c][a]][b]
    dm = mt[mt[d][a]][b]
    cj = jn[jn[c][a]][b]
    dj = jn[jn[d][a]][b]
    return (
        leq(alg, pr[t][cm], dm)
        and leq(alg, pr[t][dm], cm)
        and leq(alg, pr[t][cj], dj)
        and leq(alg, pr[t][dj], cj)
        and leq(alg, t, biimp(alg, c, d))
    )


def r_membership(alg: FiniteAlgebra, a, b, c, d) -> RWitness | None:
    """Lexicographically least witness (n, k) within the stabilization bounds.

    Absence at the stabilized pair implies absence for all (n, k): the
    candidate values are antitone in both coordinates and constant beyond
    the bounds.
    """
    _require(alg, VarietyTag.DLCMI, NotDLCMI)
    bound_n, bound_k = stabilization_bounds(alg, a, b)
    for n in range(bound_n + 1):
        for k in range(bound_k + 1):
            if r_conditions_hold(alg, a, b, c, d, n, k):
                return RWitness(n, k)
    return None


def _witness_grid(alg: FiniteAlgebra, a: int, b: int) -> tuple[list[int], int]:
    """Kernel scan of all (c, d); returns (flat grid of encoded witnesses, kcnt)."""
    m = alg.size
    bound_n, bound_k = stabilization_bounds(alg, a, b)
    ncnt, kcnt = bound_n + 1, bound_k + 1
    ts = t_sequence(alg, a, b)[:ncnt]
    tp = array("i", [0]) * (ncnt * kcnt)
    for n, tn in enumerate(ts):
        val = alg.unit
        row = n * kcnt
        tp[row] = val
        for k in range(1, kcnt):
            val = alg.prod[tn][val]
            tp[row + k] = val
    mt, jn = alg.meet, alg.join
    cm = array("i", (mt[mt[c][a]][b] for c in range(m)))
    cj = array("i", (jn[jn[c][a]][b] for c in range(m)))
    bii = array("i", (alg.biimp_table[c][d] for c in range(m) for d in range(m)))
    f = alg.flat
    grid = _kernels.r_witness_grid(m, f["prod"], f["leq"], cm, cj, bii, tp, ncnt, kcnt)
    return grid, kcnt


def r_congruence(alg: FiniteAlgebra, a: int, b: int) -> Congruence:
    """The witness relation materialized as a partition, validated as an equivalence."""
    _require(alg, VarietyTag.DLCMI, NotDLCMI)
    m = alg.size
    grid, _ = _witness_grid(alg, a, b)
    related = [(c, d) for c in range(m) for d in range(m) if grid[c * m + d] >= 0]
    for c in range(m):
        if grid[c * m + c] < 0:
            raise InternalInconsistency(f"witness relation for ({a},{b}) not reflexive at {c}")
    for c, d in related:
        if grid[d * m + c] < 0:
            raise InternalInconsistency(
                f"witness relation for ({a},{b}) not symmetric at ({c},{d})"
            )
    cong = Congruence.from_pairs(m, related)
    related_set = set(related)
    for block in cong.blocks:
        for c in block:
            for d in block:
                if (c, d) not in related_set:
                    raise InternalInconsistency(
                        f"witness relation for ({a},{b}) not transitive at ({c},{d})"
                    )
    return cong


@dataclass(frozen=True)
class PTReport:
    """Per-pair comparison of the closure oracle against the witness relation."""

    size: int
    pairs_checked: int
    disagreements: tuple[tuple[int, int, int, int], ...]
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.disagreements


def verify_pt(alg: FiniteAlgebra) -> PTReport:
    """Compare principal_oracle and r_congruence on every ordered generator pair."""
    _require(alg, VarietyTag.DLCMI, NotDLCMI)
    m = alg.size
    start = time.perf_counter()
    bad: list[tuple[int, int, int, int]] = []
    for a in range(m):
        for b in range(m):
            oracle = principal_oracle(alg, a, b)
            witness = r_congruence(alg, a, b)
            if oracle != witness:
                for c in range(m):
                    for d in range(m):
                        if oracle.relates(c, d) != witness.relates(c, d):
                            bad.append((a, b, c, d))
    return PTReport(m, m * m, tuple(bad), time.perf_counter() - start)


def all_congruences(alg: FiniteAlgebra) -> list[Congruence]:
    """The congruence lattice: principal congruences closed under pairwise join.

    Sorted finest-first (refinement order extended lexicographically), with
    the identity and the full relation always present.
    """
    m = alg.size
    congs = {Congruence.identity(m)}
    for a in range(m):
        for b in range(a + 1, m):
            congs.add(principal_oracle(alg, a, b))
    changed = True
    while changed:
        changed = False
        snapshot = list(congs)
        for i, x in enumerate(snapshot):
            for y in snapshot[i + 1 :]:
                j = x.join(y)
                if j not in congs:
                    congs.add(j)
                    changed = True
    assert Congruence.full(m) in congs or m == 1
    return sorted(congs, key=lambda c: (-len(c.blocks), c.blocks))


def membership_congruence(alg: FiniteAlgebra, a: int, b: int, membership) -> Congruence:
    """Materialize a membership predicate over (c, d) as a validated partition."""
    m = alg.size
    related = {
        (c, d)
        for c in range(m)
        for d in range(m)
        if membership(alg, a, b, c, d) is not None
    }
    for c in range(m):
        if (c, c) not in related:
            raise InternalInconsistency(f"membership relation not reflexive at {c}")
    for c, d in related:
        if (d, c) not in related:
            raise InternalInconsistency(f"membership relation not symmetric at ({c},{d})")
    cong = Congruence.from_pairs(m, sorted(related))
    for block in cong.blocks:
        for c in block:
            for d in block:
                if (c, d) not in related:
                    raise InternalInconsistency(
                        f"membership relation not transitive at ({c},{d})"
                    )
    return cong


def wh_membership(alg: FiniteAlgebra, a, b, c, d) -> int | None:
    """Least n for the meet-based membership conditions of the prod = meet case."""
    _require(alg, VarietyTag.WH, NotWH)
    mt, jn = alg.meet, alg.join
    cm = mt[mt[c][a]][b]
    dm = mt[mt[d][a]][b]
    cj = jn[jn[c][a]][b]
    dj = jn[jn[d][a]][b]
    target = biimp(alg, c, d)
    for n, t in enumerate(t_sequence(alg, a, b)):
        if mt[cm][t] == mt[dm][t] and mt[cj][t] == mt[dj][t] and leq(alg, t, target):
            return n
    return None


def idcrl_membership(alg: FiniteAlgebra, a, b, c, d) -> int | None:
    """Least k with (a <-> b)^k below c <-> d in a residuated algebra."""
    _require(alg, VarietyTag.IDCRL, NotIDCRL)
    e = biimp(alg, a, b)
    target = biimp(alg, c, d)
    val = alg.unit
    for k in range(alg.size + 1):
        if leq(alg, val, target):
            return k
        val = alg.prod[e][val]
    return None


@dataclass(frozen=True)
class LemmaReport:
    cancellation_failures: tuple[tuple[int, ...], ...]
    sandwich_failures: tuple[tuple[int, ...], ...]

    @property
    def ok(self) -> bool:
        return not self.cancellation_failures and not self.sandwich_failures


def lattice_lemma_checks(alg: FiniteAlgebra) -> LemmaReport:
    """Distributive-lattice congruence facts, checked over the whole lattice.

    Cancellation: if both a^c ~ b^c and avc ~ bvc then a ~ b.  Sandwich: if
    a ~ b, c^a^b ~ d^a^b and cvavb ~ dvavb then c ~ d.
    """
    if first_violation(alg, "dl.dist") is not None:
        raise PreconditionFailed("lattice reduct is not distributive")
    m = alg.size
    mt, jn = alg.meet, alg.join
    congs = all_congruences(alg)
    bad1: list[tuple[int, ...]] = []
    bad2: list[tuple[int, ...]] = []
    for idx, theta in enumerate(congs):
        rel = theta.relates
        for a, b, c in iproduct(range(m), repeat=3):
            if rel(mt[a][c], mt[b][c]) and rel(jn[a][c], jn[b][c]) and not rel(a, b):
                bad1.append((idx, a, b, c))
        for a, b in iproduct(range(m), repeat=2):
            if not rel(a, b):
                continue
            ab_m, ab_j = mt[a][b], jn[a][b]
            for c, d in iproduct(range(m), repeat=2):
                if (
                    rel(mt[c][ab_m], mt[d][ab_m])
                    and rel(jn[c][ab_j], jn[d][ab_j])
                    and not rel(c, d)
                ):
                    bad2.append((idx, a, b, c, d))
    return LemmaReport(tuple(bad1), tuple(bad2))
