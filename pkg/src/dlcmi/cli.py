"""Command-line surface, the JSON document formats, and DOT emission.

Exit codes follow one contract everywhere: 0 success, 1 semantic failure
(with a witness when there is one), 2 malformed input.
"""

from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path

import click

from .compat import FiniteFunction, is_compatible_oracle, is_compatible_pcom, idcrl_compat_s
from .compat import gamma as gamma_op
from .compat import gabbay as gabbay_op
from .compat import successor as successor_op
from .congruence import (
    Congruence,
    all_congruences,
    idcrl_membership,
    membership_congruence,
    principal_oracle,
    r_congruence,
    verify_pt,
    wh_membership,
)
from .core import FiniteAlgebra
from .errors import (
    CapExceeded,
    DlcmiError,
    DocumentError,
    InvalidAlgebra,
    MissingBottom,
    NoMinimum,
    NotALattice,
    UnsupportedTag,
    VarietyPreconditionError,
)
from .factory import enumerate_algebras, parse_recipe
from .varieties import AXIOMS, VarietyTag, check

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


# --- document formats ---


def _field(data: dict, key: str, source: str):
    if key not in data:
        raise DocumentError(f"{source}: missing field {key!r}")
    return data[key]


def _matrix(data: dict, key: str, size: int, source: str) -> tuple[tuple[int, ...], ...]:
    raw = _field(data, key, source)
    if not isinstance(raw, list) or len(raw) != size:
        raise DocumentError(f"{source}: {key} must be a {size}x{size} matrix")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != size:
            raise DocumentError(f"{source}: {key}[{i}] must have {size} entries")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < size:
                raise DocumentError(f"{source}: {key}[{i}][{j}] = {v!r} out of range")
        rows.append(tuple(row))
    return tuple(rows)


def parse_algebra_document(text: str, source: str = "<input>") -> FiniteAlgebra:
    """Parse the JSON algebra document; positions are reported on failure."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise DocumentError(f"{source}: document must be a JSON object")
    size = _field(data, "size", source)
    if not isinstance(size, int) or size < 1:
        raise DocumentError(f"{source}: size must be a positive integer")
    tables = {key: _matrix(data, key, size, source) for key in ("meet", "join", "prod", "imp")}
    unit = _field(data, "unit", source)
    if not isinstance(unit, int) or not 0 <= unit < size:
        raise DocumentError(f"{source}: unit {unit!r} out of range")
    bottom = data.get("bottom")
    if bottom is not None and (not isinstance(bottom, int) or not 0 <= bottom < size):
        raise DocumentError(f"{source}: bottom {bottom!r} out of range")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError(f"{source}: name must be a string")
    return FiniteAlgebra(size=size, unit=unit, bottom=bottom, name=name, **tables)


def serialize_algebra(alg: FiniteAlgebra) -> str:
    doc: dict = {"size": alg.size, "unit": alg.unit}
    if alg.bottom is not None:
        doc["bottom"] = alg.bottom
    if alg.name is not None:
        doc["name"] = alg.name
    for key in ("meet", "join", "prod", "imp"):
        doc[key] = [list(row) for row in getattr(alg, key)]
    return json.dumps(doc, indent=2) + "\n"


def parse_function_document(text: str, size: int, source: str = "<input>") -> FiniteFunction:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise DocumentError(f"{source}: document must be a JSON object")
    arity = _field(data, "arity", source)
    table = _field(data, "table", source)
    if not isinstance(arity, int) or arity < 1:
        raise DocumentError(f"{source}: arity must be a positive integer")
    if not isinstance(table, list) or len(table) != size**arity:
        raise DocumentError(f"{source}: table must list {size}^{arity} entries")
    for i, v in enumerate(table):
        if not isinstance(v, int) or not 0 <= v < size:
            raise DocumentError(f"{source}: table[{i}] = {v!r} out of range")
    return FiniteFunction(size, arity, tuple(table))


def load_algebra(target: str) -> FiniteAlgebra:
    """Resolve a recipe name (mv:N, whtriv:N, bool:K, ex1) or a document path."""
    recipe = parse_recipe(target)
    if recipe is not None:
        return recipe.build(name=target)
    path = Path(target)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DocumentError(f"{target}: {exc.strerror or exc}") from exc
    return parse_algebra_document(text, source=target)


def load_function(spec: str, size: int) -> FiniteFunction:
    """Inline comma-separated unary table, or a path to a function document."""
    if "," in spec or spec.strip().isdigit():
        try:
            values = tuple(int(v) for v in spec.split(","))
        except ValueError as exc:
            raise DocumentError(f"inline table {spec!r} is not a list of integers") from exc
        if len(values) != size or any(not 0 <= v < size for v in values):
            raise DocumentError(
                f"inline table {spec!r} must list {size} carrier elements"
            )
        return FiniteFunction.unary(values)
    path = Path(spec)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DocumentError(f"{spec}: {exc.strerror or exc}") from exc
    return parse_function_document(text, size, source=spec)


# --- DOT emission ---


def conlat_dot(alg: FiniteAlgebra) -> str:
    """Hasse diagram of the congruence lattice; edges point finer -> coarser."""
    congs = all_congruences(alg)
    lines = ["digraph conlat {", "  rankdir=BT;"]
    for i, cong in enumerate(congs):
        lines.append(f'  n{i} [label="{cong}"];')
    for i, lo in enumerate(congs):
        for j, hi in enumerate(congs):
            if i == j or not lo.refines(hi):
                continue
            if any(
                k != i and k != j and lo.refines(congs[k]) and congs[k].refines(hi)
                for k in range(len(congs))
            ):
                continue
            lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quotient_dot(alg: FiniteAlgebra, cong: Congruence) -> str:
    """Hasse diagram of the quotient order induced on the blocks."""
    blocks = cong.blocks
    idx = {b: i for i, b in enumerate(blocks)}

    def blk(x: int) -> int:
        return idx[cong.block_of(x)]

    n = len(blocks)
    le = [[False] * n for _ in range(n)]
    for i, bi in enumerate(blocks):
        for j, bj in enumerate(blocks):
            le[i][j] = blk(alg.meet[bi[0]][bj[0]]) == i
    lines = ["digraph quotient {", "  rankdir=BT;"]
    for i, b in enumerate(blocks):
        label = "{" + ",".join(str(x) for x in b) + "}"
        lines.append(f'  b{i} [label="{label}"];')
    for i in range(n):
        for j in range(n):
            if i == j or not le[i][j]:
                continue
            if any(k != i and k != j and le[i][k] and le[k][j] for k in range(n)):
                continue
            lines.append(f"  b{i} -> b{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- commands ---


def _fmt_witness(alg: FiniteAlgebra, witness: tuple[int, ...]) -> str:
    return "(" + ", ".join(alg.describe(x) for x in witness) + ")"


def _load_or_exit(target: str) -> FiniteAlgebra:
    try:
        return load_algebra(target)
    except DocumentError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except NotALattice as exc:
        click.echo(f"FAIL {exc.axiom} witness={exc.witness}", err=True)
        sys.exit(EXIT_FAIL)
    except InvalidAlgebra as exc:
        click.echo(f"invalid algebra: {exc}", err=True)
        sys.exit(EXIT_FAIL)


_TAG_CHOICES = [t.value for t in VarietyTag]


@click.group()
def main() -> None:
    """Finite-algebra workbench: variety checks, principal congruences,
    compatible functions, implicit operations and small-model enumeration."""


@main.command("check")
@click.argument("target")
@click.option("--variety", "tag_name", required=True, type=click.Choice(_TAG_CHOICES))
def cmd_check(target: str, tag_name: str) -> None:
    """Check TARGET against a variety's axioms; witnesses on failure."""
    alg = _load_or_exit(target)
    tag = VarietyTag(tag_name)
    try:
        report = check(alg, tag)
    except MissingBottom as exc:
        click.echo(f"FAIL {tag.value}: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    if report.passed:
        click.echo(f"PASS {alg.name or target} in {tag.value}")
        sys.exit(EXIT_OK)
    for axiom, witness in report.failures:
        desc = AXIOMS[axiom].description
        click.echo(f"FAIL {axiom} ({desc}) witness={_fmt_witness(alg, witness)}")
    sys.exit(EXIT_FAIL)


def _congruence_by_method(alg: FiniteAlgebra, method: str, a: int, b: int) -> Congruence:
    if method == "oracle":
        return principal_oracle(alg, a, b)
    if method == "r":
        return r_congruence(alg, a, b)
    if method == "wh":
        return membership_congruence(alg, a, b, wh_membership)
    return membership_congruence(alg, a, b, idcrl_membership)


@main.command("congruence")
@click.argument("target")
@click.argument("a", type=int)
@click.argument("b", type=int)
@click.option(
    "--method",
    "methods",
    multiple=True,
    type=click.Choice(["oracle", "r", "wh", "idcrl"]),
    default=("oracle",),
)
@click.option("--dot", "dot_path", type=click.Path(), default=None)
def cmd_congruence(target: str, a: int, b: int, methods, dot_path) -> None:
    """Principal congruence generated by (A, B), elements given as indices."""
    alg = _load_or_exit(target)
    if not (0 <= a < alg.size and 0 <= b < alg.size):
        click.echo(f"input error: elements must lie in 0..{alg.size - 1}", err=True)
        sys.exit(EXIT_INPUT)
    results = []
    for method in methods:
        try:
            results.append((method, _congruence_by_method(alg, method, a, b)))
        except VarietyPreconditionError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_FAIL)
    if len(results) == 1:
        click.echo(str(results[0][1]))
    else:
        for method, cong in results:
            click.echo(f"{method}: {cong}")
        agree = all(cong == results[0][1] for _, cong in results)
        click.echo("AGREE" if agree else "DISAGREE")
        if not agree:
            sys.exit(EXIT_FAIL)
    if dot_path:
        Path(dot_path).write_text(quotient_dot(alg, results[0][1]), encoding="utf-8")
    sys.exit(EXIT_OK)


@main.command("verify-pt")
@click.argument("target")
@click.option("--all-pairs", is_flag=True, help="print one line per generator pair")
def cmd_verify_pt(target: str, all_pairs: bool) -> None:
    """Cross-check the closure oracle against the witness relation on all pairs."""
    alg = _load_or_exit(target)
    try:
        report = verify_pt(alg)
    except VarietyPreconditionError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    if all_pairs:
        bad_pairs = {(a, b) for a, b, _, _ in report.disagreements}
        for a in range(alg.size):
            for b in range(alg.size):
                status = "DISAGREE" if (a, b) in bad_pairs else "agree"
                click.echo(f"pair ({a},{b}): {status}")
    click.echo(
        f"{report.pairs_checked} pairs checked in {report.elapsed:.3f}s: "
        + ("ALL AGREE" if report.ok else f"{len(report.disagreements)} disagreements")
    )
    if not report.ok:
        for a, b, c, d in report.disagreements:
            click.echo(f"disagree at generators ({a},{b}) on ({c},{d})")
        sys.exit(EXIT_FAIL)
    sys.exit(EXIT_OK)


@main.command("conlat")
@click.argument("target")
@click.option("--dot", "dot_path", type=click.Path(), default=None)
def cmd_conlat(target: str, dot_path) -> None:
    """Emit the congruence lattice of TARGET as a DOT Hasse diagram."""
    alg = _load_or_exit(target)
    text = conlat_dot(alg)
    if dot_path:
        Path(dot_path).write_text(text, encoding="utf-8")
        click.echo(f"wrote {dot_path}")
    else:
        click.echo(text, nl=False)
    sys.exit(EXIT_OK)


@main.command("compatible")
@click.argument("target")
@click.option("--fn", "fn_spec", required=True)
@click.option(
    "--method",
    "methods",
    multiple=True,
    type=click.Choice(["oracle", "pcom", "s"]),
    default=("oracle",),
)
def cmd_compatible(target: str, fn_spec: str, methods) -> None:
    """Decide compatibility of a function (inline table or document path)."""
    alg = _load_or_exit(target)
    try:
        fn = load_function(fn_spec, alg.size)
    except DocumentError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    if fn.arity != 1 and any(m in ("pcom", "s") for m in methods):
        click.echo("input error: pcom and s methods need a unary function", err=True)
        sys.exit(EXIT_INPUT)
    engines = {"oracle": is_compatible_oracle, "pcom": is_compatible_pcom, "s": idcrl_compat_s}
    results = []
    for method in methods:
        try:
            results.append((method, engines[method](alg, fn)))
        except VarietyPreconditionError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_FAIL)
    for method, rep in results:
        line = f"{method}: {'compatible' if rep.compatible else 'NOT compatible'}"
        if rep.witness is not None:
            ta, tb, theta = rep.witness
            line += f" witness args {ta} vs {tb}, congruence {theta}"
        click.echo(line if len(results) > 1 else line.split(": ", 1)[1])
    if len(results) > 1:
        agree = all(r.compatible == results[0][1].compatible for _, r in results)
        click.echo("AGREE" if agree else "DISAGREE")
        if not agree:
            sys.exit(EXIT_FAIL)
    sys.exit(EXIT_OK if results[0][1].compatible else EXIT_FAIL)


@main.command("implicit")
@click.argument("target")
@click.option("--op", "op_name", required=True, type=click.Choice(["gamma", "successor", "gabbay"]))
@click.option("--n", "n", type=int, default=1, show_default=True)
def cmd_implicit(target: str, op_name: str, n: int) -> None:
    """Construct an implicit operation table and re-verify its inequalities."""
    alg = _load_or_exit(target)
    ops = {
        "gamma": (gamma_op, ("(g1)", "(g2)")),
        "successor": (successor_op, ("(S1)", "(S2)")),
        "gabbay": (gabbay_op, ("(G1)", "(G2)")),
    }
    build, labels = ops[op_name]
    try:
        fn = build(alg, n)
    except (MissingBottom, NoMinimum, VarietyPreconditionError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    click.echo(", ".join(f"{x}↦{fn(x)}" for x in range(alg.size)))
    click.echo(f"defining inequalities {' and '.join(labels)} re-verified")
    sys.exit(EXIT_OK)


@main.command("enumerate")
@click.option("--size", required=True, type=int)
@click.option("--variety", "tag_name", required=True, type=click.Choice(_TAG_CHOICES))
@click.option("--out", "out_dir", type=click.Path(), default=None)
def cmd_enumerate(size: int, tag_name: str, out_dir) -> None:
    """Enumerate algebras of a given size up to isomorphism."""
    try:
        algs = enumerate_algebras(size, VarietyTag(tag_name))
    except (CapExceeded, UnsupportedTag, ValueError) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    click.echo(f"count {len(algs)}")
    if out_dir:
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for alg in algs:
            text = serialize_algebra(alg)
            digest = hashlib.sha256(text.encode()).hexdigest()[:12]
            path = directory / f"{tag_name}_{size}_{digest}.json"
            path.write_text(text, encoding="utf-8")
            click.echo(f"wrote {path}")
    sys.exit(EXIT_OK)


def run() -> None:
    try:
        main(standalone_mode=True)
    except DlcmiError as exc:  # pragma: no cover - defensive fallback
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":
    run()
