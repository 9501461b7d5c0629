"""Compatible functions: the definitional oracle, the witness-condition test,
the min-construction, and the implicit operations built from it."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable, Sequence

from .congruence import Congruence, principal_oracle, r_congruence
from .core import FiniteAlgebra, biimp, leq, power, stabilization_bounds, t_pow
from .errors import (
    InternalInconsistency,
    MissingBottom,
    NoMinimum,
    NotDLCMI,
    NotIDCRL,
)
from .varieties import VarietyTag, passes


@dataclass(frozen=True)
class FiniteFunction:
    """An n-ary function on the carrier, stored as a flat row-major table."""

    size: int
    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be at least 1")
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if len(self.table) != self.size**self.arity:
            raise ValueError(
                f"table length {len(self.table)} != {self.size}^{self.arity}"
            )
        if any(not 0 <= v < self.size for v in self.table):
            raise ValueError("table entries out of carrier range")

    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.table[idx]

    @classmethod
    def unary(cls, values: Sequence[int]) -> FiniteFunction:
        return cls(len(values), 1, tuple(values))

    @classmethod
    def from_callable(cls, size: int, arity: int, fn: Callable[..., int]) -> FiniteFunction:
        table = tuple(fn(*args) for args in iproduct(range(size), repeat=arity))
        return cls(size, arity, table)

    @classmethod
    def constant(cls, size: int, value: int, arity: int = 1) -> FiniteFunction:
        return cls(size, arity, (value,) * size**arity)

    @classmethod
    def identity(cls, size: int) -> FiniteFunction:
        return cls(size, 1, tuple(range(size)))


@dataclass(frozen=True)
class CompatReport:
    """Verdict plus, on failure, componentwise-related tuples whose images split."""

    compatible: bool
    witness: tuple[tuple[int, ...], tuple[int, ...], Congruence] | None = None


def unary_slice(f: FiniteFunction, i: int, anchor: Sequence[int | None]) -> FiniteFunction:
    """The i-th unary slice (1-based) of f at the anchor tuple.

    The anchor entry at position i is ignored and may be None.
    """
    if not 1 <= i <= f.arity:
        raise IndexError(f"slice position {i} out of range 1..{f.arity}")
    if len(anchor) != f.arity:
        raise ValueError(f"anchor length {len(anchor)} != arity {f.arity}")
    fixed = list(anchor)

    def at(x: int) -> int:
        fixed[i - 1] = x
        return f(*fixed)  # type: ignore[arg-type]

    return FiniteFunction(f.size, 1, tuple(at(x) for x in range(f.size)))


def _check_size(alg: FiniteAlgebra, f: FiniteFunction) -> None:
    if f.size != alg.size:
        raise ValueError(f"function on {f.size} elements, algebra has {alg.size}")


def is_compatible_oracle(alg: FiniteAlgebra, f: FiniteFunction) -> CompatReport:
    """Definitional test: every principal congruence must relate the images.

    An n-ary function is compatible iff all of its unary slices are.
    """
    _check_size(alg, f)
    m = alg.size
    if f.arity == 1:
        for a in range(m):
            for b in range(m):
                theta = principal_oracle(alg, a, b)
                if not theta.relates(f(a), f(b)):
                    return CompatReport(False, ((a,), (b,), theta))
        return CompatReport(True)
    for anchor in iproduct(range(m), repeat=f.arity):
        for i in range(1, f.arity + 1):
            g = unary_slice(f, i, anchor)
            sub = is_compatible_oracle(alg, g)
            if not sub.compatible:
                (a,), (b,), theta = sub.witness
                ta = list(anchor)
                tb = list(anchor)
                ta[i - 1] = a
                tb[i - 1] = b
                return CompatReport(False, (tuple(ta), tuple(tb), theta))
    return CompatReport(True)


def _pcom_pair_ok(alg: FiniteAlgebra, fa: int, fb: int, a: int, b: int) -> bool:
    mt, jn, pr = alg.meet, alg.join, alg.prod
    fam = mt[mt[fa][a]][b]
    fbm = mt[mt[fb][a]][b]
    fav = jn[jn[fa][a]][b]
    fbv = jn[jn[fb][a]][b]
    bi = biimp(alg, fa, fb)
    bound_n, bound_k = stabilization_bounds(alg, a, b)
    for n in range(bound_n + 1):
        for k in range(bound_k + 1):
            t = t_pow(alg, a, b, n, k)
            if leq(alg, pr[t][fam], fbm) and leq(alg, pr[t][fav], fbv) and leq(alg, t, bi):
                return True
    return False


def is_compatible_pcom(
    alg: FiniteAlgebra, f: FiniteFunction, *, cross_check: bool = False
) -> CompatReport:
    """Witness-condition compatibility test for a unary function.

    Searches (n, k) within the stabilization bounds for each ordered pair.
    The separating congruence in a failure witness comes from the witness
    relation, keeping this route independent of the closure oracle.  With
    ``cross_check=True`` the verdict is compared against the oracle.
    """
    _check_size(alg, f)
    if f.arity != 1:
        raise ValueError("the witness-condition test applies to unary functions")
    if not passes(alg, VarietyTag.DLCMI):
        raise NotDLCMI()
    report = CompatReport(True)
    for a in range(alg.size):
        for b in range(alg.size):
            if not _pcom_pair_ok(alg, f(a), f(b), a, b):
                report = CompatReport(False, ((a,), (b,), r_congruence(alg, a, b)))
                break
        if not report.compatible:
            break
    if cross_check and report.compatible != is_compatible_oracle(alg, f).compatible:
        raise InternalInconsistency("witness-condition test disagrees with the oracle")
    return report


def check_condition_m(alg: FiniteAlgebra, g: FiniteFunction) -> bool:
    """Antitonicity in the second argument: c >= b implies g(a,c) <= g(a,b)."""
    _check_size(alg, g)
    if g.arity != 2:
        raise ValueError("condition (M) applies to binary functions")
    m = alg.size
    for a, b, c in iproduct(range(m), repeat=3):
        if leq(alg, b, c) and not leq(alg, g(a, c), g(a, b)):
            return False
    return True


def min_fixed(alg: FiniteAlgebra, g: FiniteFunction) -> FiniteFunction:
    """For each a, the least b with g(a,b) <= b.

    Raises NoMinimum naming the offending element, distinguishing an empty
    candidate set from incomparable minimal candidates.
    """
    _check_size(alg, g)
    if g.arity != 2:
        raise ValueError("the min construction applies to binary functions")
    m = alg.size
    out = []
    for a in range(m):
        candidates = [b for b in range(m) if leq(alg, g(a, b), b)]
        if not candidates:
            raise NoMinimum(a, "empty")
        least = [x for x in candidates if all(leq(alg, x, y) for y in candidates)]
        if not least:
            raise NoMinimum(a, "incomparable")
        out.append(least[0])
    return FiniteFunction.unary(out)


def lec_h_check(alg: FiniteAlgebra, g: FiniteFunction, h: FiniteFunction) -> bool:
    """Certificate test for the min construction: g(a,h(a)) <= h(a) and h(a) <= g(a,b) v b.

    For g satisfying condition (M) this accepts exactly the table produced by
    :func:`min_fixed`.
    """
    _check_size(alg, g)
    _check_size(alg, h)
    m = alg.size
    for a in range(m):
        if not leq(alg, g(a, h(a)), h(a)):
            return False
        for b in range(m):
            if not leq(alg, h(a), alg.join[g(a, b)][b]):
                return False
    return True


def _require_dlcmi(alg: FiniteAlgebra) -> None:
    if not passes(alg, VarietyTag.DLCMI):
        raise NotDLCMI()


def _neg(alg: FiniteAlgebra, x: int) -> int:
    return alg.imp[x][alg.bottom]


def _validate(cond: bool, label: str) -> None:
    if not cond:
        raise InternalInconsistency(f"defining inequality {label} failed after construction")


def gamma(alg: FiniteAlgebra, n: int) -> FiniteFunction:
    """min{b : a v neg(b^n) <= b}; total on the supported algebras and validated.

    Validation covers the two defining inequalities, plus the closed form
    gamma(a) = a v gamma(0) and its two base facts.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    _require_dlcmi(alg)
    if alg.bottom is None:
        raise MissingBottom("gamma needs a designated bottom")
    g = FiniteFunction.from_callable(
        alg.size, 2, lambda a, b: alg.join[a][_neg(alg, power(alg, b, n))]
    )
    f = min_fixed(alg, g)
    jn = alg.join
    for a in range(alg.size):
        _validate(leq(alg, g(a, f(a)), f(a)), "(g1)")
        for b in range(alg.size):
            _validate(leq(alg, f(a), jn[g(a, b)][b]), "(g2)")
    zero = alg.bottom
    _validate(leq(alg, _neg(alg, power(alg, f(zero), n)), f(zero)), "(g3)")
    for b in range(alg.size):
        _validate(leq(alg, f(zero), jn[b][_neg(alg, power(alg, b, n))]), "(g4)")
    for a in range(alg.size):
        _validate(f(a) == jn[a][f(zero)], "(g5)")
    return f


def successor(alg: FiniteAlgebra, n: int) -> FiniteFunction:
    """min{b : (b^n -> a) <= b}, validated against its defining inequalities."""
    if n < 1:
        raise ValueError("n must be at least 1")
    _require_dlcmi(alg)
    g = FiniteFunction.from_callable(
        alg.size, 2, lambda a, b: alg.imp[power(alg, b, n)][a]
    )
    f = min_fixed(alg, g)
    for a in range(alg.size):
        _validate(leq(alg, g(a, f(a)), f(a)), "(S1)")
        for b in range(alg.size):
            _validate(leq(alg, f(a), alg.join[g(a, b)][b]), "(S2)")
    return f


def gabbay(alg: FiniteAlgebra, n: int) -> FiniteFunction:
    """min{b : (b^n -> a) ^ neg(neg(a)) <= b}, validated like the others."""
    if n < 1:
        raise ValueError("n must be at least 1")
    _require_dlcmi(alg)
    if alg.bottom is None:
        raise MissingBottom("the Gabbay operation needs a designated bottom")
    g = FiniteFunction.from_callable(
        alg.size,
        2,
        lambda a, b: alg.meet[alg.imp[power(alg, b, n)][a]][_neg(alg, _neg(alg, a))],
    )
    f = min_fixed(alg, g)
    for a in range(alg.size):
        _validate(leq(alg, g(a, f(a)), f(a)), "(G1)")
        for b in range(alg.size):
            _validate(leq(alg, f(a), alg.join[g(a, b)][b]), "(G2)")
    return f


def idcrl_compat_s(
    alg: FiniteAlgebra, f: FiniteFunction, *, cross_check: bool = False
) -> CompatReport:
    """Residuated-case test: some power of s(a,b) = (a->b)*(b->a) below s(f(a),f(b))."""
    _check_size(alg, f)
    if f.arity != 1:
        raise ValueError("the s-form test applies to unary functions")
    if not passes(alg, VarietyTag.IDCRL):
        raise NotIDCRL()

    def s(x: int, y: int) -> int:
        return alg.prod[alg.imp[x][y]][alg.imp[y][x]]

    report = CompatReport(True)
    for a in range(alg.size):
        for b in range(alg.size):
            base = s(a, b)
            target = s(f(a), f(b))
            val = alg.unit
            for _ in range(alg.size + 1):
                if leq(alg, val, target):
                    break
                val = alg.prod[base][val]
            else:
                report = CompatReport(False, ((a,), (b,), r_congruence(alg, a, b)))
                break
        if not report.compatible:
            break
    if cross_check and report.compatible != is_compatible_oracle(alg, f).compatible:
        raise InternalInconsistency("s-form test disagrees with the oracle")
    return report
