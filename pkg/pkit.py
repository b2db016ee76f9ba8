# pkit.py — command line: parse a .pk document, run one pipeline, write JSON or SVG
from __future__ import annotations

import logging
import sys
from typing import Optional

import click

from src.cli.build import Workspace
from src.cli.dsl import DslDocument, parse, print_document
from src.cli.report import corpus_report, input_digest, merged_params, run, survey_report
from src.cli.settings import settings
from src.errors import DslError, InputError, PkitError, exit_code

DOC_COMMANDS = ("invariants", "defect", "whitehead", "reduce", "decompose", "corks", "render")
DEFAULT_KIND = {"decompose": ("decomposition", "handlebody"), "corks": ("corks",)}


def _fail(err: PkitError) -> None:
    if isinstance(err, DslError):
        for d in err.diagnostics:
            click.echo(str(d), err=True)
    else:
        click.echo(str(err), err=True)
    sys.exit(exit_code(err))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
        click.echo(f"wrote {out}", err=True)
    else:
        click.echo(text, nl=False)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"cannot read {path}: {getattr(e, 'strerror', None) or e}") from None


def resolve_target(doc: DslDocument, ws: Workspace, command: str, target: Optional[str]):
    """Explicit target, else the document's first `run` of this command, else the first fitting item."""
    if target:
        return target, {}
    for r in doc.runs:
        if r.command == command:
            return r.target.name, dict(r.params)
    for kind in DEFAULT_KIND.get(command, ("handlebody",)):
        names = ws.names(kind)
        if names:
            return names[0], {}
    raise PkitError(f"nothing in the document to run {command} on", "E-REF")


@click.group()
@click.option("--config", "config_path", default="config.toml", show_default=True, help="TOML settings file.")
@click.option("--verbose", "-v", is_flag=True, help="Log search progress to stderr.")
@click.pass_context
def cli(ctx: click.Context, config_path: str, verbose: bool) -> None:
    """Legendrian fronts, handlebodies and pseudo-convex decompositions."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = settings(config_path)


def _doc_command(name: str):
    @click.argument("file", type=click.Path(dir_okay=False, allow_dash=True))
    @click.option("--target", default=None, help="Item name in the document.")
    @click.option("--handle", default=None, help="2-handle label.")
    @click.option("--n", "n", type=int, default=None)
    @click.option("--k", "k", type=int, default=None)
    @click.option("--f", "f", type=int, default=None, help="Framing for whitehead.")
    @click.option("--budget", type=int, default=None)
    @click.option("--seed", type=int, default=None)
    @click.option("--out", default=None, type=click.Path(dir_okay=False))
    @click.option("--format", "fmt", type=click.Choice(["json", "svg"]), default=None)
    @click.pass_obj
    def command(cfg, file, target, handle, n, k, f, budget, seed, out, fmt):
        fmt = fmt or ("svg" if name == "render" else "json")
        try:
            if (fmt == "svg") != (name == "render"):
                raise PkitError(f"{name} writes {'svg' if name == 'render' else 'json'} only")
            text = _read(file)
            doc = parse(text)
            ws = Workspace(doc)
            target, directive = resolve_target(doc, ws, name, target)
            flags = {"handle": handle, "n": n, "k": k, "f": f, "budget": budget, "seed": seed}
            params = merged_params(cfg, directive, flags)
            result = run(ws, name, target, params, cfg, input_digest(text, file))
        except PkitError as err:
            _fail(err)
            return
        _emit(result if name == "render" else result.to_json(cfg["report"]["indent"]), out)

    command.__doc__ = f"Run `{name}` on an item of FILE."
    return cli.command(name)(command)


for _name in DOC_COMMANDS:
    _doc_command(_name)


@cli.command("fmt")
@click.argument("file", type=click.Path(dir_okay=False, allow_dash=True))
def fmt_cmd(file: str) -> None:
    """Check FILE and print it in canonical form."""
    try:
        click.echo(print_document(parse(_read(file))), nl=False)
    except PkitError as err:
        _fail(err)


@cli.command("corpus")
@click.option("--seed", type=int, default=None)
@click.option("--fronts", type=int, default=None)
@click.option("--moves", type=int, default=None)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
@click.pass_obj
def corpus_cmd(cfg, seed, fronts, moves, out) -> None:
    """Seeded property run: move invariance, tb identity, homology parity."""
    c = cfg["corpus"]
    try:
        rep = corpus_report(c["seed"] if seed is None else seed,
                            c["fronts"] if fronts is None else fronts,
                            c["moves"] if moves is None else moves)
    except PkitError as err:
        _fail(err)
        return
    _emit(rep.to_json(cfg["report"]["indent"]), out)
    if rep.warnings:
        sys.exit(1)


@cli.command("survey")
@click.option("--max-events", type=int, default=None)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
@click.pass_obj
def survey_cmd(cfg, max_events, out) -> None:
    """Largest tb among certified unknot fronts up to a word length."""
    rep = survey_report(cfg["survey"]["max_events"] if max_events is None else max_events)
    _emit(rep.to_json(cfg["report"]["indent"]), out)


if __name__ == "__main__":
    cli()
