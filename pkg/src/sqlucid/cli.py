"""Command-line front door.

``sqlucid explain``   - explain a query against a database, optionally with
                        per-step intermediate results.
``sqlucid serve``     - run the HTTP session service.
``sqlucid fixtures``  - materialize the bundled demo databases and tasks.
``sqlucid corpus``    - self-check: explain, invert, and execute every
                        bundled task, comparing against stored expectations.

Exit codes: 0 success, 1 check failures, 2 bad input or configuration,
3 the server port is unavailable.
"""
from __future__ import annotations

import argparse
import json
import socket
import sys
from pathlib import Path

from .config import ConfigError, demo_config, load_config
from .explain import explain, plan_to_json
from .gateway import ExecLimits, execute_readonly, introspect, open_database
from .sqlcore import ParseError, ResolveError, normalize_sql, parse_sql, print_sql, validate
from .stepwise import prefix_query


def _read_sql(argument: str) -> str:
    path = Path(argument)
    try:
        is_file = path.is_file()
    except OSError:  # e.g. SQL text longer than the filename limit
        is_file = False
    if is_file:
        return path.read_text(encoding="utf-8")
    return argument


def _cmd_explain(args: argparse.Namespace) -> int:
    try:
        handle = open_database(args.db)
    except Exception as err:  # noqa: BLE001 - report and exit
        print(f"error: {err}", file=sys.stderr)
        return 2
    schema = introspect(handle)
    sql = _read_sql(args.sql)
    try:
        ast = parse_sql(sql, schema)
    except (ParseError, ResolveError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    problems = validate(ast, schema)
    if problems:
        for diagnostic in problems:
            print(f"error: {diagnostic.message}", file=sys.stderr)
        return 2

    plan = explain(ast, schema)
    if args.json:
        print(json.dumps(plan_to_json(plan), indent=2))
        return 0

    print(print_sql(ast))
    for block in plan.blocks:
        print()
        if block.header:
            print(f"{block.header}:")
        for step in block.steps:
            print(f"  {step.step_index}. {step.text}")
            if args.intermediate:
                prefix = prefix_query(plan, block.unit_index, step.step_index)
                result = execute_readonly(handle, prefix.sql, ExecLimits())
                suffix = " (capped)" if result.truncated else ""
                print(f"     -> {len(result.rows)} row(s){suffix}: {prefix.sql}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    try:
        if args.demo:
            import tempfile

            demo_dir = Path(tempfile.mkdtemp(prefix="sqlucid-demo-"))
            config = demo_config(demo_dir)
            print(f"demo databases in {demo_dir}")
        else:
            config = load_config(args.config)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    host = args.host or config.host
    port = args.port if args.port is not None else config.port
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as err:
        print(f"error: cannot listen on {host}:{port}: {err}", file=sys.stderr)
        return 3
    finally:
        probe.close()

    uvicorn.run(create_app(config), host=host, port=port)
    return 0


def _cmd_fixtures(args: argparse.Namespace) -> int:
    from .fixtures import TASKS, build_corpus

    destination = build_corpus(args.dest)
    print(f"wrote {len(TASKS)} tasks under {destination}")
    return 0


def _check(label: str, ok: bool, detail: str = "") -> bool:
    status = "ok" if ok else "FAIL"
    line = f"  {label}: {status}"
    if detail and not ok:
        line += f" ({detail})"
    print(line)
    return ok


def _cmd_corpus(args: argparse.Namespace) -> int:
    from .fixtures import build_corpus
    from .refine import apply_edits, parse_step
    from .sqlcore import ClauseKind

    root = Path(args.root) if args.root else None
    if root is None or not (root / "tasks").exists():
        import tempfile

        root = Path(tempfile.mkdtemp(prefix="sqlucid-corpus-"))
        build_corpus(root)

    failures = 0
    for task_dir in sorted((root / "tasks").iterdir()):
        if not task_dir.is_dir():
            continue
        print(task_dir.name)
        sql = (task_dir / "query.sql").read_text(encoding="utf-8").strip()
        db_path = (root / "tasks" / task_dir.name / "db").read_text(encoding="utf-8").strip()
        expected = json.loads((task_dir / "expected.json").read_text(encoding="utf-8"))
        handle = open_database(task_dir / db_path)
        schema = introspect(handle)

        try:
            ast = parse_sql(sql, schema)
            plan = explain(ast, schema)
        except Exception as err:  # noqa: BLE001
            failures += not _check("explain", False, str(err))
            continue
        _check("explain", True)

        closed = True
        detail = ""
        for block in plan.blocks:
            unit = ast.units[block.unit_index]
            for step in block.steps:
                from_clause = (
                    unit.from_
                    if step.clause_kind in (ClauseKind.FROM, ClauseKind.JOIN)
                    else None
                )
                try:
                    parsed = parse_step(
                        step.text,
                        schema,
                        kind_hint=step.clause_kind,
                        scope=unit.from_.tables,
                        original_from=from_clause,
                    )
                    if parsed.confidence != "exact":
                        closed, detail = False, f"not exact: {step.text!r}"
                except Exception as err:  # noqa: BLE001
                    closed, detail = False, f"{step.text!r}: {err}"
        failures += not _check("inverse", closed, detail)

        rebuilt_ast, _ = apply_edits(plan, (), schema)
        result = execute_readonly(handle, print_sql(rebuilt_ast), ExecLimits())
        rows = [list(row) for row in result.rows]
        if expected.get("ordered"):
            match = rows == expected["rows"]
        else:
            match = sorted(map(repr, rows)) == sorted(map(repr, expected["rows"]))
        failures += not _check("execute", match, f"{rows!r} != {expected['rows']!r}")
        printed = print_sql(rebuilt_ast)
        reprinted = print_sql(parse_sql(printed, schema))
        failures += not _check("round-trip", normalize_sql(printed) == normalize_sql(reprinted))

    print(f"{'FAIL' if failures else 'ok'}: {failures} failure(s)")
    return 1 if failures else 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqlucid",
        description="Explain, inspect, and repair machine-generated SQL step by step.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    explain_cmd = commands.add_parser("explain", help="explain a query against a database")
    explain_cmd.add_argument("sql", help="SQL text, or a path to a .sql file")
    explain_cmd.add_argument("--db", required=True, help="path to the SQLite database")
    explain_cmd.add_argument("--json", action="store_true", help="emit the plan as JSON")
    explain_cmd.add_argument(
        "--intermediate",
        action="store_true",
        help="run each step's synthesized prefix query and show row counts",
    )
    explain_cmd.set_defaults(func=_cmd_explain)

    serve_cmd = commands.add_parser("serve", help="run the HTTP session service")
    serve_cmd.add_argument("--config", help="path to a TOML/JSON config file")
    serve_cmd.add_argument("--demo", action="store_true", help="serve the bundled demo databases")
    serve_cmd.add_argument("--host", help="bind address (overrides config)")
    serve_cmd.add_argument("--port", type=int, help="port (overrides config)")
    serve_cmd.set_defaults(func=_cmd_serve)

    fixtures_cmd = commands.add_parser("fixtures", help="materialize demo databases and tasks")
    fixtures_cmd.add_argument("dest", help="output directory")
    fixtures_cmd.set_defaults(func=_cmd_fixtures)

    corpus_cmd = commands.add_parser("corpus", help="self-check against the bundled tasks")
    corpus_cmd.add_argument("--root", help="existing corpus directory (default: build a fresh one)")
    corpus_cmd.set_defaults(func=_cmd_corpus)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    return args.func(args)
