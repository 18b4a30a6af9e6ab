"""Command-line front end: enumerate, degeneracy, redundancy, simulate,
verify, bell."""

from __future__ import annotations

import csv as csv_mod
import io as io_mod
import itertools
import json
import sys
import time
from pathlib import Path

import click

from . import __version__
from .enumeration import find_fts, iter_fts
from .graph import (
    GraphError,
    PhysicalNetwork,
    QuerySpec,
    ft_delay,
    ft_energy,
)
from .io import ft_to_dot, ft_to_json_dict, load_network
from .metrics import DegeneracyReport, average_redundancy, bell_number
from .oracle import (
    OracleCapExceeded,
    matrix_tree_count,
    oracle_enumerate_fts,
)
from .simulate import FailureModel, Strategy, run_simulation
from .spanning import all_spanning_trees

STRATEGY_NAMES = {
    "static": "static-single",
    "fallback": "degenerate-fallback",
    "pair": "redundant-pair",
}


def _report_envelope(config: dict, seed=None) -> dict:
    return {"version": __version__, "config": config, "seed": seed}


def _write_output(payload, out, fmt, csv_rows=None) -> None:
    """Write the canonical JSON (or a CSV view) to --out or stdout."""
    if fmt == "csv":
        buf = io_mod.StringIO()
        writer = csv_mod.writer(buf)
        writer.writerows(csv_rows or [])
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _load_query(net_path, inputs, sink, dmax) -> tuple[PhysicalNetwork, QuerySpec]:
    net = load_network(net_path)
    labels = [s for s in (inputs or "").split(",") if s]
    if not labels:
        raise GraphError("at least one input label is required (--inputs)")
    if sink is None:
        raise GraphError("a sink label is required (--sink)")
    query = QuerySpec.for_network(net, labels, sink, dmax)
    return net, query


net_option = click.option("--net", "net_path", required=True, help="Network file (JSON or edge list).")
inputs_option = click.option("--inputs", help="Comma-separated input node labels.")
sink_option = click.option("--sink", help="Sink node label.")
dmax_option = click.option("--dmax", type=int, default=None, help="Delay budget in hops (default: sink eccentricity).")
out_option = click.option("--out", default=None, help="Output path (default: stdout).")
format_option = click.option("--format", "fmt", type=click.Choice(["json", "csv", "dot"]), default="json")
threads_option = click.option("--threads", type=int, default=1, show_default=True)


@click.group()
@click.version_option(version=__version__)
def main() -> None:
    """Enumerate in-network computation trees and analyze their degeneracy."""


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


@main.command(name="enumerate")
@net_option
@inputs_option
@sink_option
@dmax_option
@out_option
@format_option
@threads_option
def enumerate_cmd(net_path, inputs, sink, dmax, out, fmt, threads):
    """Enumerate all FTs and write the catalog."""
    started = time.monotonic()
    try:
        net, query = _load_query(net_path, inputs, sink, dmax)
    except (GraphError, OSError) as exc:
        _fail(str(exc))

    config = {
        "command": "enumerate",
        "net": str(net_path),
        "inputs": sorted(query.inputs),
        "sink": query.sink,
        "d_max": query.d_max,
        "format": fmt,
    }

    if fmt == "dot":
        # one DOT file per FT, streamed as they are discovered
        out_dir = Path(out or "fts-dot")
        out_dir.mkdir(parents=True, exist_ok=True)
        count = 0
        try:
            for i, ft in enumerate(iter_fts(net, query)):
                (out_dir / f"ft_{i:05d}.dot").write_text(ft_to_dot(ft, name=f"ft_{i}"))
                count = i + 1
        except GraphError as exc:
            _fail(str(exc))
        click.echo(f"{count} FTs written to {out_dir}/")
        return

    try:
        catalog = find_fts(net, query, threads=threads)
    except GraphError as exc:
        _fail(str(exc))

    per_delay = {str(d): len(v) for d, v in catalog.delay_index.items()}
    payload = _report_envelope(config)
    payload.update(
        {
            "count": len(catalog),
            "per_delay": per_delay,
            "fts": [
                {**ft_to_json_dict(ft), "delay": ft_delay(ft), "energy": ft_energy(ft)}
                for ft in catalog
            ],
        }
    )
    _write_output(payload, out, "json")
    if out:
        click.echo(f"{len(catalog)} FTs, per-delay {per_delay}")
    click.echo(f"elapsed: {time.monotonic() - started:.3f}s", err=True)


@main.command()
@net_option
@inputs_option
@sink_option
@dmax_option
@out_option
@format_option
@threads_option
def degeneracy(net_path, inputs, sink, dmax, out, fmt, threads):
    """Per-delay FT multiplicity with the Bell bound of the input set."""
    started = time.monotonic()
    try:
        net, query = _load_query(net_path, inputs, sink, dmax)
        catalog = find_fts(net, query, threads=threads)
    except (GraphError, OSError) as exc:
        _fail(str(exc))
    report = DegeneracyReport.from_catalog(catalog)
    config = {
        "command": "degeneracy",
        "net": str(net_path),
        "inputs": sorted(query.inputs),
        "sink": query.sink,
        "d_max": query.d_max,
    }
    payload = _report_envelope(config)
    payload.update(report.to_json_dict())
    _write_output(payload, out, fmt, csv_rows=report.to_csv_rows())
    if out:
        click.echo(f"total {report.total}, bell bound {report.bell_bound}")
    click.echo(f"elapsed: {time.monotonic() - started:.3f}s", err=True)


@main.command()
@net_option
@sink_option
@dmax_option
@out_option
@format_option
@click.option("--family-file", default=None, help="JSON file: list of input-label lists.")
@click.option("--k", type=int, default=1, show_default=True, help="Subset size for the generated family.")
@click.option("--cap", type=int, default=100, show_default=True, help="Max generated input sets.")
@click.option("--strict/--no-strict", default=False, help="Require edge-disjointness as well.")
def redundancy(net_path, sink, dmax, out, fmt, family_file, k, cap, strict):
    """Average redundancy over an input-set family."""
    started = time.monotonic()
    try:
        net = load_network(net_path)
        if sink is None:
            raise GraphError("a sink label is required (--sink)")
        sink = str(sink)
        if sink not in net.nodes:
            raise GraphError(f"unknown sink {sink!r}")
        if family_file:
            family = [list(map(str, xs)) for xs in json.loads(Path(family_file).read_text())]
        else:
            pool = [v for v in net.sorted_nodes if v != sink]
            family = [list(c) for c in itertools.combinations(pool, k)][:cap]
        report = average_redundancy(net, sink, family, d_max=dmax, strict=strict)
    except (GraphError, ValueError, OSError) as exc:
        _fail(str(exc))
    config = {
        "command": "redundancy",
        "net": str(net_path),
        "sink": sink,
        "d_max": dmax,
        "k": k,
        "cap": cap,
        "strict": strict,
        "family_file": family_file,
    }
    payload = _report_envelope(config)
    payload.update(report.to_json_dict())
    _write_output(payload, out, fmt, csv_rows=report.to_csv_rows())
    if out:
        click.echo(f"average redundancy R = {report.average}")
    click.echo(f"elapsed: {time.monotonic() - started:.3f}s", err=True)


@main.command()
@net_option
@inputs_option
@sink_option
@dmax_option
@out_option
@format_option
@threads_option
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--node-fail", type=float, default=0.0, show_default=True)
@click.option("--edge-fail", type=float, default=0.0, show_default=True)
@click.option("--rounds", type=int, default=100_000, show_default=True)
@click.option("--strategy", "strategy_names", multiple=True, type=click.Choice(sorted(STRATEGY_NAMES)), default=("static", "fallback"))
@click.option("--max-delay", type=int, default=None)
@click.option("--max-energy", type=int, default=None)
def simulate(net_path, inputs, sink, dmax, out, fmt, threads, seed, node_fail, edge_fail, rounds, strategy_names, max_delay, max_energy):
    """Monte Carlo failure simulation over the enumerated catalog."""
    started = time.monotonic()
    try:
        if rounds <= 0:
            raise ValueError("rounds must be positive")
        net, query = _load_query(net_path, inputs, sink, dmax)
        catalog = find_fts(net, query, threads=threads)
        model = FailureModel(node_fail_prob=node_fail, edge_fail_prob=edge_fail, seed=seed)
        strategies = [
            Strategy(kind=STRATEGY_NAMES[name], max_delay=max_delay, max_energy=max_energy)
            for name in strategy_names
        ]
        report = run_simulation(net, catalog, model, strategies, rounds=rounds, threads=threads)
    except (GraphError, ValueError, OSError) as exc:
        _fail(str(exc))
    config = {
        "command": "simulate",
        "net": str(net_path),
        "inputs": sorted(query.inputs),
        "sink": query.sink,
        "d_max": query.d_max,
        "node_fail": node_fail,
        "edge_fail": edge_fail,
        "rounds": rounds,
        "strategies": list(strategy_names),
        "max_delay": max_delay,
        "max_energy": max_energy,
    }
    payload = _report_envelope(config, seed=seed)
    payload.update(report.to_json_dict())
    _write_output(payload, out, fmt, csv_rows=report.to_csv_rows())
    if out:
        for s in report.strategies:
            click.echo(f"{s.kind}: rate {s.success_rate:.4f} ± {s.ci_halfwidth:.4f}")
    click.echo(f"elapsed: {time.monotonic() - started:.3f}s", err=True)


@main.command()
@net_option
@inputs_option
@sink_option
@dmax_option
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--rounds", type=int, default=100_000, show_default=True)
def verify(net_path, inputs, sink, dmax, seed, rounds):
    """Cross-check enumeration, spanning-tree counts, and the simulator
    against independent brute-force references."""
    try:
        net, query = _load_query(net_path, inputs, sink, dmax)
    except (GraphError, OSError) as exc:
        _fail(str(exc))

    failed = False

    catalog = find_fts(net, query)
    try:
        reference = oracle_enumerate_fts(net, query)
    except OracleCapExceeded as exc:
        click.echo(f"SKIP enumeration check: {exc}")
        reference = None
    if reference is not None:
        ours, theirs = set(catalog.keys()), set(reference.keys())
        if ours == theirs:
            click.echo(f"PASS enumeration: {len(catalog)} FTs match the oracle")
        else:
            failed = True
            click.echo("FAIL enumeration:")
            for key in sorted(theirs - ours):
                click.echo(f"  missing: {key}")
            for key in sorted(ours - theirs):
                click.echo(f"  spurious: {key}")

    count = sum(1 for _ in all_spanning_trees(net.nodes, net.edges))
    expected = matrix_tree_count(net.nodes, net.edges)
    if count == expected:
        click.echo(f"PASS spanning trees: {count} = matrix-tree count")
    else:
        failed = True
        click.echo(f"FAIL spanning trees: enumerated {count}, matrix-tree {expected}")

    model = FailureModel(node_fail_prob=0.2, edge_fail_prob=0.1, seed=seed)
    report = run_simulation(
        net, catalog, model, [Strategy(kind="degenerate-fallback")], rounds=rounds
    )
    result = report.strategies[0]
    if result.exact_probability is None:
        click.echo("SKIP simulation check: catalog above oracle cap")
    else:
        sigma = max((result.success_rate * (1 - result.success_rate) / rounds) ** 0.5, 1e-12)
        gap = abs(result.success_rate - result.exact_probability)
        if gap <= 3 * sigma:
            click.echo(f"PASS simulation: |{result.success_rate:.5f} - {result.exact_probability:.5f}| <= 3 sigma")
        else:
            failed = True
            click.echo(f"FAIL simulation: gap {gap:.6f} exceeds 3 sigma {3 * sigma:.6f}")

    sys.exit(1 if failed else 0)


@main.command()
@click.argument("n", type=int)
def bell(n):
    """Print the Bell number B_n."""
    if n < 0:
        _fail("n must be nonnegative")
    click.echo(str(bell_number(n)))


if __name__ == "__main__":
    main()
