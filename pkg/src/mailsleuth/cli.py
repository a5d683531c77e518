"""Operator command line: one-shot identify, serve, bench, fixture checks.

The CLI is a thin client over the engine and reuses the service's
serializer, so ``identify --json`` emits exactly the bytes the HTTP API
would return for the same corpus, config, eps and time source.

Exit codes: 0 success, 2 invalid input, 3 no information found,
4 config/corpus/IO errors, 5 fixture violations.
"""
from __future__ import annotations

import socket
import sys
from pathlib import Path

import click

from .bench import (
    EngineUnavailable,
    aggregate,
    load_manifest,
    run_session,
    write_csv,
    write_summary_json,
)
from .config import ConfigError, EngineConfig, config_from_corpus, load_config
from .core import MAX_EPS, ConsolidatedIdentity, InvalidEmail
from .engine import Engine
from .fixtures import validate_corpus
from .service.schemas import identify_payload

DEFAULT_CONFIG_PATH = "config/engine.json"

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_NO_INFORMATION = 3
EXIT_ENVIRONMENT = 4
EXIT_FIXTURES_INVALID = 5


def _fail(code: int, message: str) -> "click.exceptions.Exit":
    click.echo(message, err=True)
    return click.exceptions.Exit(code)


def _load_engine_config(config_path: str, corpus: str | None = None, log: str | None = None) -> EngineConfig:
    try:
        return load_config(
            config_path,
            corpus_override=Path(corpus) if corpus else None,
            log_override=Path(log) if log else None,
        )
    except ConfigError as exc:
        raise _fail(EXIT_ENVIRONMENT, f"config error: {exc}")


def _format_field(label: str, resolution) -> str:
    if resolution is None:
        return f"  {label:<7}: -"
    sources = ", ".join(s.provider_name for s in resolution.supporting_sources)
    line = f"  {label:<7}: {resolution.value}  [confidence {resolution.confidence:.2f}; {sources}]"
    for alt in resolution.alternatives:
        alt_sources = ", ".join(s.provider_name for s in alt.sources)
        line += f"\n           also reported: {alt.value} ({alt_sources})"
    return line


def _print_human(identity: ConsolidatedIdentity) -> None:
    click.echo("Summary Information")
    click.echo(f"  e-mail : {identity.email.normalized}")
    click.echo(_format_field("name", identity.name))
    click.echo(_format_field("gender", identity.gender))
    click.echo(_format_field("place", identity.place))
    click.echo(_format_field("image", identity.image))
    click.echo("")
    click.echo("Blog Profiles")
    if not identity.blog_profiles:
        click.echo("  no blog profiles found")
    for index, blog in enumerate(identity.blog_profiles, start=1):
        headline = blog.display_name or "(unnamed)"
        if blog.location:
            headline += f" - {blog.location}"
        click.echo(f"  {index}. {headline}")
        click.echo(f"     {blog.url}")
        if blog.avatar_url:
            click.echo(f"     avatar: {blog.avatar_url}")
        if blog.about:
            click.echo(f"     about: {blog.about}")


@click.group()
@click.version_option(package_name="mailsleuth")
def main() -> None:
    """Resolve who is behind an e-mail address."""


@main.command()
@click.argument("email")
@click.option("--eps", type=int, default=None, help="Top results to keep per provider (1-100).")
@click.option("--config", "config_path", default=DEFAULT_CONFIG_PATH, show_default=True,
              envvar="MAILSLEUTH_CONFIG", help="Engine config file.")
@click.option("--json", "as_json", is_flag=True, help="Print the raw API response body.")
def identify(email: str, eps: int | None, config_path: str, as_json: bool) -> None:
    """One-shot identification of EMAIL."""
    if eps is not None and not 1 <= eps <= MAX_EPS:
        raise _fail(EXIT_INVALID_INPUT, f"invalid_eps: must be in [1, {MAX_EPS}]")
    config = _load_engine_config(config_path)
    engine = Engine(config)
    try:
        identity = engine.identify(email, eps)
    except InvalidEmail as exc:
        raise _fail(EXIT_INVALID_INPUT, f"invalid_email: {exc.reason}")

    if as_json:
        click.echo(identify_payload(identity, cached=False).model_dump_json())
    else:
        _print_human(identity)

    if identity.summary_success or identity.blog_success:
        raise click.exceptions.Exit(EXIT_OK)
    if not as_json:
        click.echo("no information found", err=True)
    raise click.exceptions.Exit(EXIT_NO_INFORMATION)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True, envvar="MAILSLEUTH_HOST")
@click.option("--port", type=int, default=8000, show_default=True, envvar="MAILSLEUTH_PORT")
@click.option("--config", "config_path", default=DEFAULT_CONFIG_PATH, show_default=True,
              envvar="MAILSLEUTH_CONFIG")
@click.option("--corpus", default=None, envvar="MAILSLEUTH_CORPUS",
              help="Override the corpus path from the config.")
@click.option("--log", "log_path", default=None, envvar="MAILSLEUTH_LOG",
              help="Session log path (JSON lines).")
@click.option("--ui-dir", default="frontend/dist", show_default=True, envvar="MAILSLEUTH_UI_DIR",
              help="Static web UI bundle directory (served at /).")
def serve(host: str, port: int, config_path: str, corpus: str | None,
          log_path: str | None, ui_dir: str) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    config = _load_engine_config(config_path, corpus=corpus, log=log_path)
    # Fail fast with a clear diagnostic instead of a uvicorn traceback.
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        raise _fail(EXIT_ENVIRONMENT, f"cannot bind {host}:{port}: {exc}")
    finally:
        probe.close()

    app = create_app(config, ui_dir=Path(ui_dir))
    uvicorn.run(app, host=host, port=port, log_level="info")


@main.command()
@click.option("--manifest", required=True, help="Session manifest JSON file.")
@click.option("--corpus", default=None, help="Corpus path (providers discovered from layout).")
@click.option("--config", "config_path", default=None,
              help="Engine config file; overrides corpus discovery.")
@click.option("--out", "out_dir", required=True, help="Output directory for CSV and JSON.")
def bench(manifest: str, corpus: str | None, config_path: str | None, out_dir: str) -> None:
    """Replay benchmark sessions and write success-rate outputs."""
    try:
        sessions = load_manifest(manifest)
    except (OSError, ValueError) as exc:
        raise _fail(EXIT_ENVIRONMENT, f"cannot read manifest: {exc}")
    if not sessions.sessions:
        raise _fail(EXIT_INVALID_INPUT, "no sessions")

    if config_path:
        config = _load_engine_config(config_path, corpus=corpus)
    elif corpus:
        try:
            config = config_from_corpus(Path(corpus), rate_limit_rps=1000.0)
        except ConfigError as exc:
            raise _fail(EXIT_ENVIRONMENT, f"corpus error: {exc}")
    else:
        raise _fail(EXIT_ENVIRONMENT, "either --config or --corpus is required")

    engine = Engine(config)
    reports = []
    for session_id, emails in sessions.sessions:
        try:
            report = run_session(session_id, list(emails), engine)
        except ValueError as exc:
            raise _fail(EXIT_INVALID_INPUT, f"session {session_id}: {exc}")
        except EngineUnavailable as exc:
            raise _fail(EXIT_ENVIRONMENT, f"engine unavailable: {exc}")
        reports.append(report)
        click.echo(
            f"session {report.session_id}: {report.total_searches} searches, "
            f"{report.summary_successes} summary, {report.blog_successes} blog"
        )

    result = aggregate(reports)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        write_csv(result, out / "sessions.csv")
        write_summary_json(result, out / "summary.json")
    except OSError as exc:
        raise _fail(EXIT_ENVIRONMENT, f"cannot write outputs: {exc}")

    click.echo(
        f"overall: summary rate {float(result.summary_rate):.3f}, "
        f"blog rate {float(result.blog_rate):.3f}"
    )


@main.command("fixtures-validate")
@click.option("--corpus", required=True, help="Corpus path to validate.")
def fixtures_validate(corpus: str) -> None:
    """Check fixture naming, JSON shape and page references."""
    corpus_path = Path(corpus)
    if not corpus_path.is_dir():
        raise _fail(EXIT_ENVIRONMENT, f"corpus path {corpus} is not a directory")
    violations = validate_corpus(corpus_path)
    if violations:
        for violation in violations:
            click.echo(violation, err=True)
        click.echo(f"{len(violations)} violation(s) found", err=True)
        raise click.exceptions.Exit(EXIT_FIXTURES_INVALID)
    click.echo("corpus ok")


if __name__ == "__main__":
    sys.exit(main())
