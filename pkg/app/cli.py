"""Command-line front end: ``python -m app.cli <command>``."""

import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import click

from app.core.config import apply_settings, load_settings, settings
from app.core.errors import AGCodesError, InvariantViolation
from app.core.logging import configure_logging
from app.services.code_service import CodeService
from app.services.table_service import TableService
from app.services.tower_service import TowerService
from app.services.verify_service import SUITES, VerifyService

logger = logging.getLogger(__name__)

Row = Dict[str, Any]


class AGCodesGroup(click.Group):
    """Maps library errors to exit codes: 1 for a violated invariant, 2 for bad input."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except InvariantViolation as e:
            click.echo(f"invariant violated: {e.invariant}: {e.detail}", err=True)
            ctx.exit(1)
        except AGCodesError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(2)


def _render(rows: List[Row], columns: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2)
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return out.getvalue().rstrip("\n")

    cells = [[("" if row.get(col) is None else str(row.get(col))) for col in columns] for row in rows]
    widths = [max([len(col)] + [len(line[i]) for line in cells]) for i, col in enumerate(columns)]
    lines = ["  ".join(col.ljust(w) for col, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in cells]
    return "\n".join(lines)


def _emit(ctx: click.Context, rows: List[Row], columns: Sequence[str], document: Optional[Any] = None) -> None:
    """Prints rows as a table or CSV; JSON prints ``document`` when given, else the rows."""
    fmt = ctx.obj["format"]
    if fmt == "json" and document is not None:
        click.echo(json.dumps(document, indent=2))
        return
    click.echo(_render(rows, columns, fmt))


def _ints(values: Sequence[int]) -> Optional[List[int]]:
    return list(values) if values else None


@click.group(cls=AGCodesGroup)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable JSON output.")
@click.option("--csv", "as_csv", is_flag=True, help="CSV output.")
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), help="key=value settings file.")
@click.option("--log-level", default=None, help="Overrides LOG_LEVEL.")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Threads for minimum-weight search.")
@click.pass_context
def cli(ctx, as_json, as_csv, config_file, log_level, workers):
    """Algebraic-geometry codes on y^q + y = x^m and their CSS quantum codes."""
    if as_json and as_csv:
        raise click.UsageError("--json and --csv are exclusive")
    if config_file:
        apply_settings(load_settings(config_file))
    if workers:
        settings.MINWEIGHT_WORKERS = workers
    configure_logging(log_level or settings.LOG_LEVEL)
    ctx.obj = {"format": "json" if as_json else "csv" if as_csv else "text"}


@cli.command()
@click.option("--p", type=int, required=True)
@click.option("--k", type=int, default=1, show_default=True)
@click.pass_context
def field(ctx, p, k):
    """List the elements of F_{p^k} in coefficient order."""
    info = CodeService.field_elements(p, k)
    rows = [{"index": i, "element": e} for i, e in enumerate(info["elements"])]
    if ctx.obj["format"] == "text":
        click.echo(f"{info['field']} modulus {info['modulus']}")
    _emit(ctx, rows, ["index", "element"], document=info)


@cli.command()
@click.option("--q", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.pass_context
def curve(ctx, q, m):
    """Genus and rational places of y^q + y = x^m."""
    info = CodeService.curve_places(q, m)
    rows = [{"index": i, "place": P} for i, P in enumerate(info["list"])]
    if ctx.obj["format"] == "text":
        click.echo(f"{info['curve']}: genus {info['genus']}, {info['places']} rational places")
    _emit(ctx, rows, ["index", "place"], document=info)


@cli.command()
@click.option("--q", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--a", type=int, multiple=True, help="Coefficients on the tail places; repeat for t > 1.")
@click.option("--t", "t", type=int, default=None, help="Coefficient of the degree-2 place.")
@click.pass_context
def rrspace(ctx, q, m, a, t):
    """Basis of the Riemann-Roch space L(G)."""
    info = CodeService.rr_basis(q, m, _ints(a), t)
    rows = [{"index": i, "function": f} for i, f in enumerate(info["functions"])]
    if ctx.obj["format"] == "text":
        click.echo(f"L({info['divisor']}): deg {info['degree']}, dimension {info['dimension']}")
    _emit(ctx, rows, ["index", "function"], document=info)


CODE_COLUMNS = ["n", "k", "q", "designed_d", "designed_dual_d", "exact_d"]


@cli.command()
@click.option("--q", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--a", type=int, multiple=True)
@click.option("--t", "t", type=int, default=None)
@click.option("--dual", is_flag=True, help="Build C_Omega instead of C_L.")
@click.option("--generator", is_flag=True, help="Include the generator matrix in JSON output.")
@click.pass_context
def build(ctx, q, m, a, t, dual, generator):
    """Build the evaluation code C_L(D, G) or its dual."""
    summary = CodeService.build(q, m, _ints(a), t, dual, generator)
    _emit(ctx, [summary.model_dump(mode="json")], CODE_COLUMNS, document=summary.model_dump(mode="json"))


CSS_COLUMNS = ["n", "k", "d_lb", "q", "singleton_defect"]


@cli.command(name="css")
@click.option("--q", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--a", type=int, multiple=True)
@click.option("--b", type=int, multiple=True)
@click.option("--t1", type=int, default=None)
@click.option("--t2", type=int, default=None)
@click.option("--formula-only", is_flag=True, help="Skip the matrix construction.")
@click.option("--matrices", is_flag=True, help="Include H_X and H_Z in JSON output.")
@click.pass_context
def css_command(ctx, q, m, a, b, t1, t2, formula_only, matrices):
    """CSS code of a nested pair of AG codes."""
    if (t1 is None) != (t2 is None) or (t1 is None and not (a and b)):
        raise click.UsageError("give --a and --b, or --t1 and --t2")
    summary = CodeService.css(q, m, _ints(a), _ints(b), t1, t2, not formula_only, matrices)
    if ctx.obj["format"] == "text":
        click.echo(summary.params.label())
    _emit(ctx, [summary.params.model_dump(mode="json")], CSS_COLUMNS, document=summary.model_dump(mode="json"))


@cli.command()
@click.option("--q", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--a", type=int, multiple=True, required=True)
@click.option("--b", type=int, multiple=True, help="Certify the CSS code of (a, b) instead.")
@click.option("--dual", is_flag=True)
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Codewords to evaluate at most.")
@click.pass_context
def certify(ctx, q, m, a, b, dual, budget):
    """Certify a minimum distance by enumeration or information-set search."""
    result = CodeService.certify(q, m, list(a), _ints(b), dual, budget)
    columns = ["lower", "upper", "exact", "method", "designed_d"]
    _emit(ctx, [result.model_dump(mode="json")], columns, document=result.model_dump(mode="json"))


TABLE_COLUMNS = ["q", "m", "inputs", "n", "k", "d_lb", "alphabet", "singleton_defect", "published", "status", "matrix_k"]


@cli.command()
@click.option("--which", type=click.Choice(["1", "2", "3"]), required=True)
@click.option("--formula-only", is_flag=True, help="Skip the explicit matrix constructions.")
@click.pass_context
def tables(ctx, which, formula_only):
    """Reproduce a published parameter table; exits 1 on any MISMATCH."""
    results = TableService.reproduce(int(which), explicit=not formula_only)
    rows = [r.model_dump(mode="json") for r in results]
    _emit(ctx, rows, TABLE_COLUMNS)
    if any(r.status == "MISMATCH" for r in results):
        ctx.exit(1)


TOWER_COLUMNS = ["level", "g", "N", "ratio", "n", "K", "sum_b", "d_lb", "rate", "rel_dist", "length", "dimension"]


@cli.command()
@click.option("--q2", type=int, required=True, help="Order of the constant field F_{q^2}.")
@click.option("--levels", type=click.IntRange(min=1), required=True)
@click.option("--c", "c", default="1/10", show_default=True, help="Target rate as a rational.")
@click.option("--t", "t", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--prime", type=int, default=None, help="Expand the two-point schedule to F_prime.")
@click.pass_context
def tower(ctx, q2, levels, c, t, prime):
    """Garcia-Stichtenoth tower metrics and rate/distance schedules."""
    try:
        rate = Fraction(c)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{c!r} is not a rational number", param_hint="--c")
    report = TowerService.report(q2, levels, rate, t, prime)

    rows = []
    for level, schedule in zip(report.levels, report.schedules):
        row = {"level": level.index, "g": level.genus, "N": level.places, "ratio": level.ratio}
        if schedule is not None:
            row.update(
                n=schedule.n,
                K=schedule.K,
                sum_b=schedule.sum_b,
                d_lb=schedule.d_lb,
                rate=schedule.rate,
                rel_dist=schedule.relative_distance,
                length=schedule.length,
                dimension=schedule.dimension,
            )
        rows.append(row)
    if ctx.obj["format"] == "text":
        click.echo(f"window (0, {report.window}), limiting relative distance {report.limit}")
    _emit(ctx, rows, TOWER_COLUMNS, document=report.model_dump(mode="json"))
    if ctx.obj["format"] == "text":
        click.echo(f"note: {report.note}")


@cli.command()
@click.option("--q", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--a", type=int, multiple=True, required=True)
@click.option("--b", type=int, multiple=True, help="Expand the CSS code of (a, b) instead.")
@click.option("--generator", is_flag=True)
@click.pass_context
def expand(ctx, q, m, a, b, generator):
    """Expand a code (or a CSS pair) over F_{q^2} to the prime field."""
    if b:
        summary = CodeService.expand_css(q, m, list(a), list(b), generator)
        if ctx.obj["format"] == "text":
            click.echo(summary.params.label())
        _emit(ctx, [summary.params.model_dump(mode="json")], CSS_COLUMNS, document=summary.model_dump(mode="json"))
        return

    summary = CodeService.expand(q, m, list(a), generator)
    if ctx.obj["format"] == "text":
        click.echo(f"basis {summary.basis}, dual basis {summary.dual_basis}, duality holds: {summary.duality_holds}")
    _emit(ctx, [summary.code.model_dump(mode="json")], CODE_COLUMNS, document=summary.model_dump(mode="json"))
    if not summary.duality_holds:
        ctx.exit(1)


@cli.command()
@click.option("--suite", "suites", type=click.Choice(list(SUITES)), multiple=True, help="Repeatable; default all.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def verify(ctx, suites, seed):
    """Run the invariant suites; exits 1 naming any failed invariant."""
    results = VerifyService.run(suites, seed)
    rows = [r.model_dump(mode="json") for r in results]
    _emit(ctx, rows, ["suite", "invariant", "passed", "trials", "detail"])
    failed = [f"{r.suite}/{r.invariant}" for r in results if not r.passed]
    if failed:
        click.echo(f"failed invariants: {', '.join(failed)}", err=True)
        ctx.exit(1)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Start the HTTP service."""
    import uvicorn

    uvicorn.run("app.main:app", host=host, port=port)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Runs the CLI and returns its exit code instead of exiting."""
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name="agqcodes")
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 1
    return 0


if __name__ == "__main__":
    sys.exit(run())
