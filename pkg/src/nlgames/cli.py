"""Command-line client for the game toolkit.

Every command builds the same request models the HTTP service accepts and
runs them in process by default; ``--server URL`` sends them to a running
service instead.  Exit codes: 0 success, 2 usage error, 3 cap or budget
exceeded, 4 validation error.
"""

from __future__ import annotations

import json
import sys

import click

from .errors import NlgamesError
from .games import load_game
from .service import handlers, schemas

# path -> (handler, response model)
_ROUTES = {
    "/classical-value": (handlers.handle_classical_value, schemas.ClassicalValueResponse),
    "/quantum-value": (handlers.handle_quantum_value, schemas.QuantumValueResponse),
    "/sample": (handlers.handle_sample, schemas.SampleResponse),
    "/tradeoff": (handlers.handle_tradeoff, schemas.TradeoffResponse),
    "/dichotomy": (handlers.handle_dichotomy, schemas.DichotomyResponse),
    "/export-game": (handlers.handle_export_game, schemas.GameDocument),
}

EXIT_CAP_BUDGET = 3
EXIT_VALIDATION = 4


def _fail(kind: str, message: str) -> None:
    click.echo(json.dumps({"error": {"type": kind, "message": message}}), err=True)
    code = EXIT_CAP_BUDGET if kind in ("cap", "budget") else EXIT_VALIDATION
    sys.exit(code)


def _dispatch(path: str, request, server: str | None):
    """Run a request locally or against a remote service."""
    handler, response_model = _ROUTES[path]
    if server is None:
        try:
            return handler(request)
        except NlgamesError as exc:
            _fail(exc.kind, str(exc))
    import httpx

    response = httpx.post(
        server.rstrip("/") + path,
        json=request.model_dump(mode="json"),
        timeout=300.0,
    )
    if response.status_code != 200:
        try:
            payload = response.json()["error"]
            _fail(payload["type"], payload["message"])
        except (KeyError, ValueError):
            _fail("validation", f"server returned HTTP {response.status_code}")
    return response_model.model_validate(response.json())


def _game_selector(game, max_len, delta, threshold) -> schemas.GameSelector:
    """Interpret --game as a builtin name or a path to a game document."""
    from .catalog import BUILTIN_GAMES

    if game in BUILTIN_GAMES:
        return schemas.GameSelector(
            builtin=game, max_len=max_len, delta=delta, threshold=threshold
        )
    try:
        spec = load_game(game)
    except OSError as exc:
        raise click.UsageError(
            f"--game must be one of {', '.join(BUILTIN_GAMES)} or a readable "
            f"game file; {exc}"
        )
    except NlgamesError as exc:
        _fail(exc.kind, str(exc))
    from .games import game_to_document

    return schemas.GameSelector(
        game=schemas.GameDocument.model_validate(game_to_document(spec)),
        max_len=max_len,
    )


def _strategy_selector(strategy: str, theta) -> schemas.StrategySelector:
    if strategy.startswith("file:"):
        path = strategy[len("file:"):]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise click.UsageError(f"cannot read strategy file: {exc}")
        except json.JSONDecodeError as exc:
            _fail("schema", f"strategy file is not valid JSON: {exc}")
        return schemas.StrategySelector(
            custom=schemas.StrategyDocument.model_validate(doc)
        )
    return schemas.StrategySelector(name=strategy, theta=theta)


def _sig10(value: float) -> str:
    return f"{value:.10g}"


server_option = click.option(
    "--server", default=None, metavar="URL", help="Send the request to a running service."
)
format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text"
)


@click.group()
@click.version_option(package_name="nlgames")
def main():
    """Exact values, quantum strategies, and dimension witnesses for
    two-player nonlocal games."""


@main.command("classical-value")
@click.option("--game", required=True, help="Builtin name or game file.")
@click.option("--max-len", type=int, default=None, help="Truncate answers to this length.")
@click.option("--delta", type=float, default=None, help="Lifted-game delta.")
@click.option("--threshold", type=float, default=None, help="Uniform lifted threshold.")
@click.option("--parallel", type=int, default=1, show_default=True)
@format_option
@server_option
def cmd_classical_value(game, max_len, delta, threshold, parallel, fmt, server):
    """Exact classical value by exhaustive search."""
    request = schemas.ClassicalValueRequest(
        game=_game_selector(game, max_len, delta, threshold), workers=parallel
    )
    resp = _dispatch("/classical-value", request, server)
    if fmt == "json":
        click.echo(resp.model_dump_json(indent=2))
        return
    if resp.warning:
        click.echo(f"warning: {resp.warning}", err=True)
    click.echo(f"game: {resp.game}")
    click.echo(f"classical value: {resp.value}")
    click.echo(f"classical value (float): {_sig10(resp.value_float)}")
    for side, assignment in (("alpha", resp.witness.alpha), ("beta", resp.witness.beta)):
        parts = " ".join(f"{q}->{a!r}" for q, a in assignment.items())
        click.echo(f"witness {side}: {parts}")
    click.echo(
        f"strategies: {resp.search_space} total, "
        f"{resp.strategies_examined} examined, {resp.pruned} pruned"
    )


@main.command("quantum-value")
@click.option("--game", required=True)
@click.option("--max-len", type=int, default=None)
@click.option("--delta", type=float, default=None)
@click.option("--threshold", type=float, default=None)
@click.option("--strategy", required=True, help="sn:<n>, chsh-canonical, or file:PATH.")
@click.option("--theta", default=None, help="Angle in radians or 'opt'.")
@format_option
@server_option
def cmd_quantum_value(game, max_len, delta, threshold, strategy, theta, fmt, server):
    """Exact success probability of a quantum strategy."""
    request = schemas.QuantumValueRequest(
        game=_game_selector(game, max_len, delta, threshold),
        strategy=_strategy_selector(strategy, theta),
    )
    resp = _dispatch("/quantum-value", request, server)
    if fmt == "json":
        click.echo(resp.model_dump_json(indent=2))
        return
    if resp.warning:
        click.echo(f"warning: {resp.warning}", err=True)
    click.echo(f"game: {resp.game}")
    click.echo(f"strategy: {resp.strategy}")
    click.echo(f"value: {_sig10(resp.value)}")
    if resp.closed_form is not None:
        click.echo(f"closed form: {_sig10(resp.closed_form)}")
        click.echo(f"closed form delta: {resp.closed_form_delta:.3e}")
    click.echo(f"local dimensions: {resp.local_dim_a} x {resp.local_dim_b}")


@main.command("sample")
@click.option("--game", required=True)
@click.option("--max-len", type=int, default=None)
@click.option("--delta", type=float, default=None)
@click.option("--threshold", type=float, default=None)
@click.option("--strategy", required=True)
@click.option("--theta", default=None)
@click.option("--rounds", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@format_option
@server_option
def cmd_sample(game, max_len, delta, threshold, strategy, theta, rounds, seed, fmt, server):
    """Monte Carlo referee: seeded rounds against the exact verifier."""
    request = schemas.SampleRequest(
        game=_game_selector(game, max_len, delta, threshold),
        strategy=_strategy_selector(strategy, theta),
        rounds=rounds,
        seed=seed,
    )
    resp = _dispatch("/sample", request, server)
    if fmt == "json":
        click.echo(resp.model_dump_json(indent=2))
        return
    click.echo(f"game: {resp.game}  strategy: {resp.strategy}  seed: {resp.seed}")
    click.echo(f"rounds: {resp.rounds}  wins: {resp.wins}")
    click.echo(f"empirical rate: {_sig10(resp.rate)}")
    click.echo(
        f"wilson 95%: [{_sig10(resp.wilson_low)}, {_sig10(resp.wilson_high)}]"
    )
    click.echo(f"exact value: {_sig10(resp.exact_value)}")
    click.echo(f"within 3 sigma: {'yes' if resp.within_three_sigma else 'no'}")
    for pair in resp.per_pair:
        click.echo(
            f"  ({pair.x}, {pair.y}): {pair.wins}/{pair.rounds} wins"
        )


@main.command("tradeoff")
@click.option(
    "--eps",
    "epsilons",
    multiple=True,
    required=True,
    type=float,
    help="Target error; repeat for multiple rows.",
)
@click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
    show_default=True,
)
@server_option
def cmd_tradeoff(epsilons, fmt, server):
    """Achievability plan vs. dimension lower bound per target error."""
    request = schemas.TradeoffRequest(epsilons=list(epsilons))
    resp = _dispatch("/tradeoff", request, server)
    if fmt == "json":
        click.echo(resp.model_dump_json(indent=2))
        return
    click.echo("epsilon,n,local_dim,closed_form_error,dim_lower_bound")
    for row in resp.rows:
        click.echo(
            f"{_sig10(row.epsilon)},{row.n},{row.local_dim},"
            f"{_sig10(row.closed_form_error)},{row.dim_lower_bound}"
        )


@main.command("dichotomy")
@click.option("--game", required=True)
@click.option("--delta", type=float, default=None)
@click.option("--threshold", type=float, default=None)
@click.option("--max-len", type=int, required=True)
@format_option
@server_option
def cmd_dichotomy(game, delta, threshold, max_len, fmt, server):
    """Check the rejection-set dichotomy for every answer pair up to a length."""
    request = schemas.DichotomyRequest(
        game=_game_selector(game, None, delta, threshold), max_len=max_len
    )
    resp = _dispatch("/dichotomy", request, server)
    if fmt == "json":
        click.echo(resp.model_dump_json(indent=2))
        return
    if resp.warning:
        click.echo(f"warning: {resp.warning}", err=True)
    click.echo(f"game: {resp.game}  max_len: {resp.max_len}")
    for entry in resp.entries:
        click.echo(f"  s={entry.s!r} t={entry.t!r}: {entry.branch}")
    counts = " ".join(f"{k}={v}" for k, v in sorted(resp.branch_counts.items()))
    click.echo(f"pairs: {resp.pairs_checked} ({counts})")
    click.echo(f"note: {resp.note}")
    click.echo(f"overall: {'true' if resp.overall else 'false'}")


@main.command("export-game")
@click.option("--game", required=True)
@click.option("--max-len", type=int, default=None)
@click.option("--delta", type=float, default=None)
@click.option("--threshold", type=float, default=None)
@click.option("--output", type=click.Path(writable=True), default=None)
@server_option
def cmd_export_game(game, max_len, delta, threshold, output, server):
    """Emit an explicit game document (JSON) for a builtin or file game."""
    request = schemas.ExportGameRequest(
        game=_game_selector(game, max_len, delta, threshold)
    )
    resp = _dispatch("/export-game", request, server)
    text = resp.model_dump_json(indent=2)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        click.echo(f"wrote {output}")
    else:
        click.echo(text)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def cmd_serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("nlgames.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
