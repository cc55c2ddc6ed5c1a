"""Command-line entry points: inspect rows, print bases, serve, benchmark."""

from __future__ import annotations

import json
from pathlib import Path

import click

from .bench import (
    SynthSpec,
    error_injection_experiment,
    gen_synthetic,
    runtime_compare,
)
from .canonical import BaseTimeout, pseudo_intents
from .context import CandidateObject, FormalContext
from .formats import read_csv, read_cxt, read_fimi, write_cxt
from .implications import support
from .service import _base_implication_view, question_view, session_view
from .session import open_session

_SUFFIX_READERS = {
    ".cxt": read_cxt,
    ".csv": read_csv,
    ".fimi": read_fimi,
    ".dat": read_fimi,
}


def _read_context_file(path: str) -> FormalContext:
    p = Path(path)
    reader = _SUFFIX_READERS.get(p.suffix.lower(), read_cxt)
    try:
        return reader(p.read_text())
    except ValueError as exc:
        raise click.ClickException(f"{path}: {exc}") from exc


def _parse_object_spec(ctx: FormalContext, spec: str) -> CandidateObject:
    if "=" not in spec:
        raise click.ClickException(
            "object spec must look like name=attr,attr,...")
    name, _, attrs = spec.partition("=")
    names = [a.strip() for a in attrs.split(",") if a.strip()]
    try:
        intent = ctx.attribute_set(names)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    return CandidateObject(name.strip(), intent)


@click.group()
def main():
    """Detect and correct erroneous rows in binary data tables."""


@main.command()
@click.option("--context", "context_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
@click.option("--budget", type=float, default=None,
              help="Abort after this many seconds.")
def base(context_path: str, fmt: str, budget):
    """Print the canonical implication base of a context."""
    ctx = _read_context_file(context_path)
    try:
        views = [_base_implication_view(ctx, p, c)
                 for p, c in pseudo_intents(ctx, budget=budget)]
    except BaseTimeout as exc:
        raise click.ClickException(str(exc)) from exc
    if fmt == "json":
        click.echo(json.dumps({"implications": views}, indent=2))
        return
    for v in views:
        left = ", ".join(v["premise"])
        right = ", ".join(v["conclusion"])
        click.echo(f"{left} -> {right}  [support {v['support']}]")


@main.command()
@click.option("--context", "context_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--object", "object_spec", required=True,
              help="Candidate row as name=attr,attr,...")
@click.option("--method", type=click.Choice(["closure", "base"]),
              default="closure", show_default=True)
@click.option("--complement", is_flag=True,
              help="Also question attribute absences (closure method only).")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
@click.option("--budget", type=float, default=None)
def inspect(context_path: str, object_spec: str, method: str,
            complement: bool, fmt: str, budget):
    """Generate correction questions for a candidate row."""
    ctx = _read_context_file(context_path)
    cand = _parse_object_spec(ctx, object_spec)
    name = cand.name
    while name in ctx.object_names:
        name += "*"
    cand = CandidateObject(name, cand.intent)
    try:
        session = open_session(ctx, cand, mode=method,
                               use_complement=complement, budget=budget)
    except BaseTimeout as exc:
        raise click.ClickException(str(exc)) from exc
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    view = session_view("", session, "")
    if fmt == "json":
        click.echo(json.dumps({"questions": view["questions"],
                               "hand_checks": view["hand_checks"]}, indent=2))
        return
    if not view["questions"] and not view["hand_checks"]:
        click.echo("no questions; the row is consistent with the context")
        return
    for q in view["questions"]:
        click.echo(q["text"])
        click.echo(f"    Support: {{{', '.join(q['support'])}}}")
    if view["hand_checks"]:
        click.echo("no supporting example - verify by hand:")
        for q in view["hand_checks"]:
            click.echo(f"    {q['text']}")


@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--store", "store_dir", required=True,
              type=click.Path(file_okay=False))
@click.option("--budget", type=float, default=10.0, show_default=True,
              help="Server-side budget for base computations, seconds.")
def serve(port: int, host: str, store_dir: str, budget: float):
    """Run the HTTP JSON API."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(store_dir, base_budget=budget),
                host=host, port=port, log_level="warning")


@main.group()
def bench():
    """Synthetic-data benchmarks."""


@bench.command()
@click.option("--objects", type=int, required=True)
@click.option("--attrs", type=int, required=True)
@click.option("--density", type=float, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the context here instead of stdout.")
def synth(objects: int, attrs: int, density: float, seed: int, out):
    """Generate a random context and emit it as .cxt."""
    ctx = gen_synthetic(SynthSpec(objects, attrs, density, seed))
    text = write_cxt(ctx)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


@bench.command()
@click.option("--context", "context_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--errors", type=click.IntRange(1, 3), required=True)
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="json", show_default=True)
def inject(context_path: str, errors: int, trials: int, seed: int, fmt: str):
    """Flip attribute bits of known rows and report how many get caught."""
    ctx = _read_context_file(context_path)
    report = error_injection_experiment(ctx, errors, trials, seed)
    click.echo(report.to_csv() if fmt == "csv" else report.to_json(),
               nl=False)


@bench.command()
@click.option("--objects", type=int, required=True)
@click.option("--attrs", type=int, required=True)
@click.option("--density", type=float, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--methods", default="closure,base", show_default=True)
@click.option("--budget", type=float, default=None,
              help="Per-repetition budget; overruns are censored.")
@click.option("--reps", type=int, default=3, show_default=True)
def runtime(objects: int, attrs: int, density: float, seed: int,
            methods: str, budget, reps: int):
    """Time hold-one-out inspection sweeps, one JSON line per method."""
    spec = SynthSpec(objects, attrs, density, seed)
    rows = runtime_compare([spec],
                           methods=[m.strip() for m in methods.split(",")],
                           budget=budget, repetitions=reps)
    for row in rows:
        click.echo(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()
