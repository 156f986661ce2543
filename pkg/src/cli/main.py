"""Comandi click: moments, verify, converge, tau, character."""

import functools
import io
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

try:
    from ..moments import report
    from ..moments.algebra import WeightVector
    from ..moments.config import DEPTH_PROFILES, LOG_LEVELS, load_config, setup_logging
    from ..moments.core import MomentEngine
    from ..moments.errors import (
        ConfigError,
        ConsistencyError,
        InfeasibleSizeError,
        InputValidationError,
    )
    from ..moments.partitions import parse_partition
    from ..moments.perm import parse_cycles
    from ..moments.routes import parse_routes
except ImportError:
    sys.path.insert(0, str(Path(__file__).parent.parent))
    from moments import report
    from moments.algebra import WeightVector
    from moments.config import DEPTH_PROFILES, LOG_LEVELS, load_config, setup_logging
    from moments.core import MomentEngine
    from moments.errors import (
        ConfigError,
        ConsistencyError,
        InfeasibleSizeError,
        InputValidationError,
    )
    from moments.partitions import parse_partition
    from moments.perm import parse_cycles
    from moments.routes import parse_routes

_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_VERIFICATION = 3
EXIT_INFEASIBLE = 4

FORMATS = ("text", "json", "csv")


def handle_errors(command):
    """Traduce le eccezioni del motore nei codici di uscita."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (InputValidationError, ConfigError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_VALIDATION)
        except InfeasibleSizeError as e:
            click.echo(f"Infeasible: {e}", err=True)
            sys.exit(EXIT_INFEASIBLE)
        except ConsistencyError as e:
            _LOGGER.error(f"Consistency check failed: {e}")
            click.echo(f"Consistency failure: {e}", err=True)
            sys.exit(EXIT_VERIFICATION)

    return wrapper


def _engine(ctx: click.Context) -> MomentEngine:
    return ctx.obj["engine"]


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        _LOGGER.info(f"Report written to {output}")
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _parse_ns(values: Tuple[str, ...]) -> List[int]:
    ns = []
    for value in values:
        for part in value.split(","):
            part = part.strip()
            if not part:
                continue
            try:
                ns.append(int(part))
            except ValueError:
                raise InputValidationError(f"n must be an integer, got {part!r}")
    return ns


@click.group(name="moments-cli")
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Livello di log (default da configurazione).")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="Percorso di config.yaml.")
@click.pass_context
@handle_errors
def cli(ctx: click.Context, log_level: Optional[str], config_path: Optional[str]):
    """Momenti esatti del limite centrale delle trasposizioni stellari."""
    config = load_config(Path(config_path) if config_path else None,
                         overrides={"log_level": log_level.lower() if log_level else None})
    setup_logging(config.log_level, RichHandler(console=Console(stderr=True), show_path=False))
    ctx.ensure_object(dict)
    ctx.obj["engine"] = MomentEngine(config)


@cli.command()
@click.option("--weights", required=True, help="Pesi razionali, es. 1/2,1/3,1/6.")
@click.option("--max-order", type=int, default=8, show_default=True)
@click.option("--routes", default="A,B,C,D", show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text", show_default=True)
@click.option("--threads", type=int, default=None, help="Thread per gli ordini (default da configurazione).")
@click.option("--timings", is_flag=True, help="Includi i tempi per via nei report.")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
@handle_errors
def moments(ctx, weights, max_order, routes, fmt, threads, timings, output):
    """Tabella dei momenti per k = 0..max-order con le vie selezionate."""
    w = WeightVector.parse(weights)
    result = _engine(ctx).compute_moments(w, max_order, parse_routes(routes), threads)

    if fmt == "json":
        _emit(report.to_json(report.moment_report_model(result, timings)) + "\n", output)
    elif fmt == "csv":
        _emit(report.moments_to_csv(result, timings), output)
    else:
        table = Table(title=f"Moments for w = ({w})")
        table.add_column("k", style="cyan", justify="right")
        for route in result.routes:
            table.add_column(f"Route {route.value}", justify="right")
        table.add_column("approx", justify="right")
        table.add_column("agree", justify="center")
        if timings:
            table.add_column("ms", justify="right")
        for row in result.rows:
            cells = [str(row.k)] + [str(row.values[r]) for r in result.routes]
            cells += [f"{float(row.value):.10g}", "[green]yes[/]" if row.agree else "[red]NO[/]"]
            if timings:
                cells.append(" ".join(f"{row.elapsed_ms[r]:.1f}" for r in result.routes))
            table.add_row(*cells)
        console = Console(file=io.StringIO(), width=200) if output else Console()
        console.print(table)
        if output:
            _emit(console.file.getvalue(), output)

    if not result.agree:
        click.echo("Routes disagree", err=True)
        sys.exit(EXIT_VERIFICATION)


@cli.command()
@click.option("--weights", required=True)
@click.option("--profile", type=click.Choice(list(DEPTH_PROFILES)), default=None,
              help="Profilo di profondita' (default da configurazione).")
@click.option("--gue", is_flag=True, help="Esegui il controllo di convoluzione anche per pesi non uniformi.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text", show_default=True)
@click.pass_context
@handle_errors
def verify(ctx, weights, profile, gue, seed, fmt):
    """Esegue tutte le suite di verifica e stampa l'esito per suite."""
    w = WeightVector.parse(weights)
    result = _engine(ctx).verify(w, profile, gue=gue, seed=seed)

    if fmt == "json":
        click.echo(report.to_json(report.verification_report_model(result)))
    else:
        table = Table(title=f"Verification for w = ({w}), profile {result.profile}")
        table.add_column("Suite", style="cyan")
        table.add_column("Checks", justify="right")
        table.add_column("Result", justify="center")
        table.add_column("Details")
        for suite in result.suites:
            if suite.skipped:
                status = "[yellow]skipped[/]"
            else:
                status = "[green]pass[/]" if suite.passed else "[red]FAIL[/]"
            details = "; ".join(suite.failures[:3] or suite.notes)
            table.add_row(suite.name, str(suite.checked), status, escape(details))
        console = Console()
        console.print(table)
        console.print("[bold green]All suites passed[/]" if result.passed else "[bold red]Verification failed[/]")

    if not result.passed:
        sys.exit(EXIT_VERIFICATION)


@cli.command()
@click.option("--weights", required=True)
@click.option("--k", "k", type=int, required=True, help="Ordine pari del momento.")
@click.option("--n", "ns", multiple=True, default=("8,16,32",), show_default=True,
              help="Valori di n, ripetibile o separati da virgole.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text", show_default=True)
@click.pass_context
@handle_errors
def converge(ctx, weights, k, ns, fmt):
    """tr(s_n^k) esatto contro il momento limite."""
    w = WeightVector.parse(weights)
    table_data = _engine(ctx).converge(w, k, _parse_ns(ns))

    if fmt == "json":
        click.echo(report.to_json(report.convergence_table_model(table_data)))
    elif fmt == "csv":
        click.echo(report.convergence_to_csv(table_data), nl=False)
    else:
        table = Table(title=f"Convergence of order {k} for w = ({w})")
        table.add_column("n", style="cyan", justify="right")
        table.add_column("tr(s_n^k)", justify="right")
        table.add_column("limit", justify="right")
        table.add_column("gap", justify="right")
        table.add_column("gap (approx)", justify="right")
        for row in table_data.rows:
            table.add_row(str(row.n), str(row.moment), str(row.limit), str(row.gap), f"{float(row.gap):.6e}")
        Console().print(table)


@cli.command()
@click.argument("partition")
@click.option("--weights", default=None, help="Se presente, calcola anche chi(tau_pi).")
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text", show_default=True)
@click.pass_context
@handle_errors
def tau(ctx, partition, weights, fmt):
    """tau_pi, sigma_pi, B_pi e orbite di una partizione come "{1,6}{2,5}{3}{4,7}"."""
    w = WeightVector.parse(weights) if weights else None
    info = _engine(ctx).tau_info(parse_partition(partition), w)

    if fmt == "json":
        click.echo(report.to_json(report.tau_info_model(info)))
        return
    table = Table(title=f"pi = {info.partition}", show_header=False)
    table.add_column("field", style="cyan")
    table.add_column("value")
    table.add_row("tau_pi", str(info.tau))
    table.add_row("tau_pi (induced)", str(info.tau_induced))
    table.add_row("sigma_pi", str(info.sigma))
    table.add_row(f"eta_{info.partition.k + 1} sigma_pi", str(info.eta_sigma))
    table.add_row("B_pi", "{" + ",".join(str(b) for b in info.b_set) + "}")
    table.add_row("tau orbit sizes", " ".join(str(s) for s in info.tau_orbit_sizes))
    table.add_row("|R ^ B_pi|", " ".join(str(s) for s in info.intersections))
    table.add_row("every orbit meets B_pi", "yes" if info.all_orbits_meet else "no")
    for name, (value, oracle) in info.characters.items():
        table.add_row(f"chi(tau) via sigma, eta_{name}", f"{value}" + (f" (colourings: {oracle})" if oracle is not None else ""))
    Console().print(table)


@cli.command()
@click.argument("permutation")
@click.option("--weights", required=True)
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text", show_default=True)
@click.pass_context
@handle_errors
def character(ctx, permutation, weights, fmt):
    """chi_w di una permutazione in notazione ciclica, es. "(1,3,2)(5,6)"."""
    w = WeightVector.parse(weights)
    value = _engine(ctx).character(w, parse_cycles(permutation))
    if fmt == "json":
        click.echo(report.to_json(report.character_model(w, value)))
    else:
        click.echo(f"chi({value.permutation}) = {value.value}  [cycle type {list(value.cycle_type)}]")


def main() -> None:
    cli(prog_name="moments-cli")


if __name__ == "__main__":
    main()
