"""Command-line entry point.

Exit codes: 0 success, 1 diagnostics (bad input, failed checks), 2 internal
invariant violation.
"""

from __future__ import annotations

import json
import sys
import time
from typing import Optional

import click

from .config import load_property_config
from .context import Ctx
from .lang import AnalysisDiagnostic, ParseError, analyze_program, parse_program, render_report
from .objects import object_join, object_meet, reduce_object
from .oracle import Outcome
from .perfect import DEFAULT_BUDGET
from .serialize import SchemaError, dumps, format_object, object_from_json
from .words import OPEN, Alphabet


class Diagnostic(Exception):
    """User-facing error reported with exit code 1."""


def _ctx(alphabet: Optional[str], budget: int = DEFAULT_BUDGET, widen_delay: int = 3) -> Ctx:
    try:
        alpha = Alphabet(alphabet) if alphabet else OPEN
    except ValueError as exc:
        raise Diagnostic(f"--alphabet: {exc}") from None
    return Ctx(alphabet=alpha, budget=budget, widen_delay=widen_delay)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise Diagnostic(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise Diagnostic(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _load_object(path: str, ctx: Ctx):
    try:
        return object_from_json(_load_json(path), ctx)
    except SchemaError as exc:
        raise Diagnostic(f"{path}: {exc}") from None


@click.group()
def cli() -> None:
    """Static analysis of string-manipulating programs with string objects."""


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--props", "props_path", type=click.Path(dir_okay=False), help="JSON file of custom properties.")
@click.option("--alphabet", help="Restrict strings to these letters.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--widen-delay", type=click.IntRange(0), default=3, show_default=True,
              help="Loop iterations before widening kicks in.")
@click.option("--budget", type=click.IntRange(0), default=DEFAULT_BUDGET, show_default=True,
              help="Candidate budget of the exhaustive reduction step.")
def analyze(file: str, props_path: Optional[str], alphabet: Optional[str], fmt: str,
            widen_delay: int, budget: int) -> None:
    """Analyze a program and report per-line invariants and verdicts."""
    ctx = _ctx(alphabet, budget, widen_delay)
    try:
        with open(file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise Diagnostic(f"{file}: {exc.strerror}") from None
    try:
        program = parse_program(text)
    except ParseError as exc:
        raise Diagnostic(f"{file}:{exc}") from None
    props = set()
    if props_path:
        try:
            props = load_property_config(props_path, ctx)
        except OSError as exc:
            raise Diagnostic(f"{props_path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise Diagnostic(f"{props_path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        except SchemaError as exc:
            raise Diagnostic(f"{props_path}: {exc}") from None
    try:
        report = analyze_program(program, props, ctx)
    except AnalysisDiagnostic as exc:
        raise Diagnostic(f"{file}: {exc}") from None
    click.echo(render_report(report, fmt), nl=fmt == "json")


@cli.command()
@click.argument("value", type=click.Path(dir_okay=False))
@click.option("--alphabet", help="Finite alphabet for the reduction.")
@click.option("--text", "as_text", is_flag=True, help="Print the compact text form instead of JSON.")
def reduce(value: str, alphabet: Optional[str], as_text: bool) -> None:
    """Reduce a string object given as JSON."""
    ctx = _ctx(alphabet)
    o = reduce_object(_load_object(value, ctx), ctx)
    click.echo(format_object(o) if as_text else dumps(o))


@cli.command()
@click.argument("op", type=click.Choice(["join", "meet"]))
@click.argument("v1", type=click.Path(dir_okay=False))
@click.argument("v2", type=click.Path(dir_okay=False))
@click.option("--alphabet", help="Finite alphabet.")
@click.option("--text", "as_text", is_flag=True, help="Print the compact text form instead of JSON.")
def latop(op: str, v1: str, v2: str, alphabet: Optional[str], as_text: bool) -> None:
    """Join or meet two reduced string objects."""
    ctx = _ctx(alphabet)
    a = reduce_object(_load_object(v1, ctx), ctx)
    b = reduce_object(_load_object(v2, ctx), ctx)
    o = object_join(a, b, ctx) if op == "join" else object_meet(a, b, ctx)
    click.echo(format_object(o) if as_text else dumps(o))


@cli.command()
@click.option("--max-len", type=click.IntRange(1, 8), default=6, show_default=True,
              help="Concretization depth for the soundness suites.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=click.IntRange(1), default=200, show_default=True,
              help="Trials per randomized suite.")
def check(max_len: int, seed: int, trials: int) -> None:
    """Run the randomized oracle suites and print a JSON summary plus a text table."""
    from . import suites

    cfg = suites.SuiteConfig(max_len=max_len)
    runs = {name: (lambda f=f: f(trials, seed, cfg)) for name, f in suites.SOUNDNESS_SUITES.items()}
    runs["lattice_laws"] = lambda: suites.lattice_laws(trials, seed)
    runs["galois_sets"] = lambda: suites.galois_sets(trials, seed)
    runs["galois_objects"] = lambda: suites.galois_objects(trials, seed)
    runs["atoms"] = lambda: suites.atoms_exhaustive()
    # the harness must catch a wrong meet
    runs["self_test_broken_meet"] = lambda: _inverted(suites.lattice_laws(trials, seed, meet=suites.broken_meet))

    results = []
    for name, run in runs.items():
        t0 = time.perf_counter()
        out = run()
        results.append({"suite": name, "passed": out.passed, "trials": out.trials,
                        "seconds": round(time.perf_counter() - t0, 2),
                        "counterexample": None if out.passed else repr(out.counterexample)})
    summary = {"seed": seed, "max_len": max_len, "passed": all(r["passed"] for r in results), "suites": results}
    click.echo(json.dumps(summary, sort_keys=True))
    for r in results:
        click.echo(f"{'PASS' if r['passed'] else 'FAIL'}  {r['suite']:<24} {r['trials']:>6} trials  {r['seconds']:>7.2f}s")
        if not r["passed"]:
            click.echo(f"      counterexample: {r['counterexample']}")
    if not summary["passed"]:
        raise click.exceptions.Exit(1)


def _inverted(outcome: Outcome) -> Outcome:
    if outcome.passed:
        return Outcome(False, outcome.trials, None, "broken meet was not detected")
    return Outcome(True, outcome.trials)


def main(argv: Optional[list] = None) -> int:
    try:
        cli.main(args=argv, prog_name="strobj", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except Diagnostic as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except (RuntimeError, AssertionError) as exc:
        click.echo(f"internal error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
