"""Axiom checkers with counterexample witnesses for every supported variety.

Each axiom has a stable identifier and a predicate over element tuples; a
check scans all tuples in lexicographic order and reports the first witness
per failed axiom.  Witnesses can be re-evaluated through
:func:`evaluate_axiom`, which is what the report-validity tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product as iproduct
from typing import TYPE_CHECKING, Callable

from .errors import MissingBottom, PreconditionFailed

if TYPE_CHECKING:
    from .core import FiniteAlgebra


class VarietyTag(Enum):
    LATTICE = "lattice"
    DL = "dl"
    BDL = "bdl"
    DLCMI = "dlcmi"
    WH = "wh"
    CRL = "crl"
    IDCRL = "idcrl"
    GCRL = "gcrl"
    CWRL = "cwrl"
    DLFI = "dlfi"


@dataclass(frozen=True)
class VarietyReport:
    tag: VarietyTag
    passed: bool
    failures: tuple[tuple[str, tuple[int, ...]], ...]

    def failed_axioms(self) -> tuple[str, ...]:
        return tuple(axiom for axiom, _ in self.failures)


def _le(A, x: int, y: int) -> bool:
    return A.meet[x][y] == x


def _top(A) -> int:
    t = 0
    for x in range(1, A.size):
        t = A.join[t][x]
    return t


def _bx(A, x: int) -> int:
    # e -> x, the box operator of the e-based axiom systems
    return A.imp[A.unit][x]


# --- axiom predicates; the positional arguments range over the carrier ---


def _p_meet_idem(A, a):
    return A.meet[a][a] == a


def _p_meet_comm(A, a, b):
    return A.meet[a][b] == A.meet[b][a]


def _p_meet_assoc(A, a, b, c):
    return A.meet[A.meet[a][b]][c] == A.meet[a][A.meet[b][c]]


def _p_join_idem(A, a):
    return A.join[a][a] == a


def _p_join_comm(A, a, b):
    return A.join[a][b] == A.join[b][a]


def _p_join_assoc(A, a, b, c):
    return A.join[A.join[a][b]][c] == A.join[a][A.join[b][c]]


def _p_absorb_meet(A, a, b):
    return A.meet[a][A.join[a][b]] == a


def _p_absorb_join(A, a, b):
    return A.join[a][A.meet[a][b]] == a


def _p_dist(A, a, b, c):
    return A.meet[a][A.join[b][c]] == A.join[A.meet[a][b]][A.meet[a][c]]


def _p_bottom_least(A, a):
    return A.meet[A.bottom][a] == A.bottom


def _p_unit_top(A, a):
    return A.meet[a][A.unit] == a


def _p_mon_unit(A, a):
    return A.prod[a][A.unit] == a and A.prod[A.unit][a] == a


def _p_mon_comm(A, a, b):
    return A.prod[a][b] == A.prod[b][a]


def _p_mon_assoc(A, a, b, c):
    return A.prod[A.prod[a][b]][c] == A.prod[a][A.prod[b][c]]


def _p_imp_meet(A, a, b, c):
    return A.meet[A.imp[a][b]][A.imp[a][c]] == A.imp[a][A.meet[b][c]]


def _p_imp_join(A, a, b, c):
    return A.meet[A.imp[a][c]][A.imp[b][c]] == A.imp[A.join[a][b]][c]


def _p_refl_unit(A, a):
    return A.imp[a][a] == A.unit


def _p_refl_top(A, a):
    return A.imp[a][a] == _top(A)


def _p_prod_join(A, a, b, c):
    return A.prod[A.join[a][b]][c] == A.join[A.prod[a][c]][A.prod[b][c]]


def _p_chain(A, a, b, c):
    return _le(A, A.prod[A.imp[a][b]][A.imp[b][c]], A.imp[a][c])


def _p_mono(A, a, b, c):
    return _le(A, A.imp[a][b], A.imp[A.prod[a][c]][A.prod[b][c]])


def _p_residuation(A, a, b, c):
    return _le(A, A.prod[a][b], c) == _le(A, a, A.imp[b][c])


def _p_wh_fusion(A, a, b):
    return A.prod[a][b] == A.meet[a][b]


def _p_gcrl_refl(A, a):
    return _le(A, A.unit, A.imp[a][a])


def _p_r1(A, a, b):
    return _le(A, A.prod[a][A.imp[a][b]], b)


def _p_r2(A, a, b, c):
    return A.join[A.prod[a][b]][A.prod[a][c]] == A.prod[a][A.join[b][c]]


def _p_r3(A, a, b):
    return _le(A, _bx(A, a), A.imp[b][A.prod[b][a]])


def _p_r4(A, a):
    return _le(A, a, A.imp[A.imp[a][A.unit]][A.unit])


def _p_r5(A, a):
    sq = A.prod[a][a]
    return _le(A, _bx(A, sq), A.prod[_bx(A, a)][_bx(A, a)])


def _p_r6(A, a):
    ba = _bx(A, a)
    lhs = A.imp[ba][A.imp[ba][A.unit]]
    rhs = A.imp[_bx(A, ba)][A.unit]
    return _le(A, lhs, rhs)


def _p_r7(A, a):
    be = A.imp[_bx(A, a)][A.unit]
    return _le(A, A.prod[be][be], A.imp[_bx(A, A.prod[a][a])][A.unit])


def _p_i3(A, a):
    t = _top(A)
    return A.imp[A.bottom][a] == t and A.imp[a][t] == t


def _p_f1(A, a, b, c):
    return A.prod[a][A.join[b][c]] == A.join[A.prod[a][b]][A.prod[a][c]]


def _p_f2(A, a, b, c):
    return A.prod[A.join[b][c]][a] == A.join[A.prod[b][a]][A.prod[c][a]]


def _p_f3(A, a):
    return A.prod[A.bottom][a] == A.bottom and A.prod[a][A.bottom] == A.bottom


@dataclass(frozen=True)
class Axiom:
    arity: int
    pred: Callable
    description: str


AXIOMS: dict[str, Axiom] = {
    "lat.meet.idem": Axiom(1, _p_meet_idem, "x^x = x"),
    "lat.meet.comm": Axiom(2, _p_meet_comm, "x^y = y^x"),
    "lat.meet.assoc": Axiom(3, _p_meet_assoc, "(x^y)^z = x^(y^z)"),
    "lat.join.idem": Axiom(1, _p_join_idem, "xvx = x"),
    "lat.join.comm": Axiom(2, _p_join_comm, "xvy = yvx"),
    "lat.join.assoc": Axiom(3, _p_join_assoc, "(xvy)vz = xv(yvz)"),
    "lat.absorb.meet": Axiom(2, _p_absorb_meet, "x^(xvy) = x"),
    "lat.absorb.join": Axiom(2, _p_absorb_join, "xv(x^y) = x"),
    "dl.dist": Axiom(3, _p_dist, "x^(yvz) = (x^y)v(x^z)"),
    "bdl.bottom": Axiom(1, _p_bottom_least, "0 <= x"),
    "dlcmi.2": Axiom(1, _p_unit_top, "x <= 1"),
    "dlcmi.3.unit": Axiom(1, _p_mon_unit, "x*1 = 1*x = x"),
    "dlcmi.3.comm": Axiom(2, _p_mon_comm, "x*y = y*x"),
    "dlcmi.3.assoc": Axiom(3, _p_mon_assoc, "(x*y)*z = x*(y*z)"),
    "dlcmi.4": Axiom(3, _p_imp_meet, "(x->y)^(x->z) = x->(y^z)"),
    "dlcmi.5": Axiom(3, _p_imp_join, "(x->z)^(y->z) = (xvy)->z"),
    "dlcmi.6": Axiom(1, _p_refl_unit, "x->x = 1"),
    "dlcmi.7": Axiom(3, _p_prod_join, "(xvy)*z = (x*z)v(y*z)"),
    "dlcmi.8": Axiom(3, _p_chain, "(x->y)*(y->z) <= x->z"),
    "dlcmi.9": Axiom(3, _p_mono, "x->y <= (x*z)->(y*z)"),
    "wh.1": Axiom(3, _p_imp_meet, "(x->y)^(x->z) = x->(y^z)"),
    "wh.2": Axiom(3, _p_imp_join, "(x->z)^(y->z) = (xvy)->z"),
    "wh.3": Axiom(
        3,
        lambda A, a, b, c: _le(A, A.meet[A.imp[a][b]][A.imp[b][c]], A.imp[a][c]),
        "(x->y)^(y->z) <= x->z",
    ),
    "wh.4": Axiom(1, _p_refl_top, "x->x = 1"),
    "wh.top": Axiom(1, _p_unit_top, "the designated unit is the top"),
    "wh.fusion": Axiom(2, _p_wh_fusion, "x*y = x^y"),
    "crl.1.unit": Axiom(1, _p_mon_unit, "x*e = e*x = x"),
    "crl.1.comm": Axiom(2, _p_mon_comm, "x*y = y*x"),
    "crl.1.assoc": Axiom(3, _p_mon_assoc, "(x*y)*z = x*(y*z)"),
    "crl.3": Axiom(3, _p_residuation, "residuation: x*y <= z iff x <= y->z"),
    "idcrl.integral": Axiom(1, _p_unit_top, "x <= e"),
    "gcrl.monoid.unit": Axiom(1, _p_mon_unit, "x*e = e*x = x"),
    "gcrl.monoid.comm": Axiom(2, _p_mon_comm, "x*y = y*x"),
    "gcrl.monoid.assoc": Axiom(3, _p_mon_assoc, "(x*y)*z = x*(y*z)"),
    "gcrl.imp_meet": Axiom(3, _p_imp_meet, "x->(y^z) = (x->y)^(x->z)"),
    "gcrl.imp_join": Axiom(3, _p_imp_join, "(xvy)->z = (x->z)^(y->z)"),
    "gcrl.chain": Axiom(3, _p_chain, "(x->y)*(y->z) <= x->z"),
    "gcrl.refl": Axiom(1, _p_gcrl_refl, "e <= x->x"),
    "R1": Axiom(2, _p_r1, "x*(x->y) <= y"),
    "R2": Axiom(3, _p_r2, "(x*y)v(x*z) = x*(yvz)"),
    "R3": Axiom(2, _p_r3, "box(x) <= y->(y*x)"),
    "R4": Axiom(1, _p_r4, "x <= (x->e)->e"),
    "R5": Axiom(1, _p_r5, "box(x^2) <= box(x)*box(x)"),
    "R6": Axiom(1, _p_r6, "box(x)->(box(x)->e) <= box^2(x)->e"),
    "R7": Axiom(1, _p_r7, "(box(x)->e)*(box(x)->e) <= box(x^2)->e"),
    "I1": Axiom(3, _p_imp_meet, "(x->y)^(x->z) = x->(y^z)"),
    "I2": Axiom(3, _p_imp_join, "(x->z)^(y->z) = (xvy)->z"),
    "I3": Axiom(1, _p_i3, "0->x = x->1 = 1"),
    "F1": Axiom(3, _p_f1, "x*(yvz) = (x*y)v(x*z)"),
    "F2": Axiom(3, _p_f2, "(yvz)*x = (y*x)v(z*x)"),
    "F3": Axiom(1, _p_f3, "0*x = x*0 = 0"),
}

_LATTICE = (
    "lat.meet.idem",
    "lat.meet.comm",
    "lat.meet.assoc",
    "lat.join.idem",
    "lat.join.comm",
    "lat.join.assoc",
    "lat.absorb.meet",
    "lat.absorb.join",
)
_DL = _LATTICE + ("dl.dist",)
_BDL = _DL + ("bdl.bottom",)

TAG_AXIOMS: dict[VarietyTag, tuple[str, ...]] = {
    VarietyTag.LATTICE: _LATTICE,
    VarietyTag.DL: _DL,
    VarietyTag.BDL: _BDL,
    VarietyTag.DLCMI: _DL
    + (
        "dlcmi.2",
        "dlcmi.3.unit",
        "dlcmi.3.comm",
        "dlcmi.3.assoc",
        "dlcmi.4",
        "dlcmi.5",
        "dlcmi.6",
        "dlcmi.7",
        "dlcmi.8",
        "dlcmi.9",
    ),
    VarietyTag.WH: _BDL + ("wh.top", "wh.1", "wh.2", "wh.3", "wh.4", "wh.fusion"),
    VarietyTag.CRL: _LATTICE + ("crl.1.unit", "crl.1.comm", "crl.1.assoc", "crl.3"),
    VarietyTag.IDCRL: _DL
    + ("crl.1.unit", "crl.1.comm", "crl.1.assoc", "crl.3", "idcrl.integral"),
    VarietyTag.GCRL: _LATTICE
    + (
        "gcrl.monoid.unit",
        "gcrl.monoid.comm",
        "gcrl.monoid.assoc",
        "gcrl.imp_meet",
        "gcrl.imp_join",
        "gcrl.chain",
        "gcrl.refl",
    ),
    VarietyTag.CWRL: _LATTICE
    + (
        "gcrl.monoid.unit",
        "gcrl.monoid.comm",
        "gcrl.monoid.assoc",
        "gcrl.imp_meet",
        "gcrl.imp_join",
        "gcrl.chain",
        "gcrl.refl",
        "R1",
        "R2",
        "R3",
        "R4",
        "R5",
        "R6",
        "R7",
    ),
    VarietyTag.DLFI: _BDL + ("I1", "I2", "I3", "F1", "F2", "F3"),
}

BOTTOM_TAGS = frozenset({VarietyTag.BDL, VarietyTag.WH, VarietyTag.DLFI})


def first_violation(alg, axiom_id: str) -> tuple[int, ...] | None:
    """First (lexicographic) element tuple violating the axiom, if any."""
    ax = AXIOMS[axiom_id]
    for xs in iproduct(range(alg.size), repeat=ax.arity):
        if not ax.pred(alg, *xs):
            return xs
    return None


def evaluate_axiom(alg, axiom_id: str, witness: tuple[int, ...]) -> bool:
    """Re-evaluate one axiom at a specific witness tuple."""
    ax = AXIOMS[axiom_id]
    if len(witness) != ax.arity:
        raise ValueError(f"{axiom_id} expects {ax.arity} elements, got {len(witness)}")
    return bool(ax.pred(alg, *witness))


def lattice_violation(alg) -> tuple[str, tuple[int, ...]] | None:
    """First failed lattice law, as (axiom id, witness); used at construction."""
    for axiom_id in _LATTICE:
        w = first_violation(alg, axiom_id)
        if w is not None:
            return axiom_id, w
    return None


def check(alg: FiniteAlgebra, tag: VarietyTag) -> VarietyReport:
    """Exhaustively check every axiom of the tag, one witness per failure."""
    if tag in BOTTOM_TAGS and alg.bottom is None:
        raise MissingBottom(f"{tag.value} requires a designated bottom element")
    failures = []
    for axiom_id in TAG_AXIOMS[tag]:
        w = first_violation(alg, axiom_id)
        if w is not None:
            failures.append((axiom_id, w))
    return VarietyReport(tag, not failures, tuple(failures))


@lru_cache(maxsize=8192)
def passes(alg: FiniteAlgebra, tag: VarietyTag) -> bool:
    """Cached pass/fail; MissingBottom counts as a failure here."""
    try:
        return check(alg, tag).passed
    except MissingBottom:
        return False


def check_lemaprod(alg: FiniteAlgebra) -> bool:
    """Test the equivalence of the monotonicity axiom with its 4-variable form.

    Requires the first eight dlcmi axioms; the two formulations are provably
    equivalent under them, so disagreement indicates a bug.
    """
    prefix = TAG_AXIOMS[VarietyTag.DLCMI][:-1]  # everything except dlcmi.9
    for axiom_id in prefix:
        if first_violation(alg, axiom_id) is not None:
            raise PreconditionFailed(f"axiom {axiom_id} fails; equivalence not applicable")
    nine = first_violation(alg, "dlcmi.9") is None
    four = all(
        _le(
            alg,
            alg.prod[alg.imp[a][b]][alg.imp[c][d]],
            alg.imp[alg.prod[a][c]][alg.prod[b][d]],
        )
        for a, b, c, d in iproduct(range(alg.size), repeat=4)
    )
    if nine != four:
        from .errors import InternalInconsistency

        raise InternalInconsistency(
            f"monotonicity axiom and its 4-variable form disagree: {nine} vs {four}"
        )
    return nine


def check_cwrl_incomparable(alg: FiniteAlgebra) -> tuple[int, int] | None:
    """First pair (x, y) with x*(x->y) not below y, or None if none exists."""
    for x in range(alg.size):
        for y in range(alg.size):
            if not _le(alg, alg.prod[x][alg.imp[x][y]], y):
                return x, y
    return None


def wh_as_dlcmi_roundtrip(alg: FiniteAlgebra) -> bool:
    """Agreement of the weak-Heyting axioms with the dlcmi axioms when prod = meet.

    The weak-Heyting side reads its 0 off the lattice order, so the test is
    independent of whether a bottom is designated.
    """
    if alg.prod != alg.meet:
        raise PreconditionFailed("roundtrip requires prod = meet")
    bottom = 0
    for x in range(alg.size):
        bottom = alg.meet[bottom][x]
    wh_ok = all(
        first_violation(alg, a) is None
        for a in ("dl.dist", "wh.top", "wh.1", "wh.2", "wh.3", "wh.4")
    ) and all(alg.meet[bottom][x] == bottom for x in range(alg.size))
    dlcmi_ok = check(alg, VarietyTag.DLCMI).passed
    return wh_ok == dlcmi_ok
