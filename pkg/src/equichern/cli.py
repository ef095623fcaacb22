"""Thin command-line client of the verification service.

By default the CLI talks to an in-process instance of the FastAPI app over an
ASGI transport (no network, fully deterministic); `--url` targets a running
server instead, and `serve` starts one.

Exit codes: 0 all checks pass; 1 usage or scenario schema error;
2 verify-core failure; 3 universal-check failure; 4 series failure;
5 anomaly failure (the first failing suite in that order wins).
"""

from __future__ import annotations

import argparse
import asyncio
import sys

import httpx

USAGE_EXIT = 1


def _post_run(payload: dict, url: str | None) -> httpx.Response:
    if url:
        with httpx.Client(base_url=url, timeout=None) as client:
            return client.post("/v1/run", json=payload)

    from .service.app import create_app

    async def call():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://service") as client:
            return await client.post("/v1/run", json=payload, timeout=None)

    return asyncio.run(call())


def _cmd_run(args) -> int:
    try:
        with open(args.scenario, "r", encoding="utf-8") as handle:
            scenario_text = handle.read()
    except OSError as err:
        print(f"error: cannot read scenario: {err}", file=sys.stderr)
        return USAGE_EXIT

    payload = {"command": args.command, "scenario_text": scenario_text}
    if args.truncation is not None:
        payload["truncation"] = args.truncation
    response = _post_run(payload, args.url)

    if response.status_code == 422:
        print("scenario error:", file=sys.stderr)
        detail = response.json().get("detail")
        if isinstance(detail, list):
            for item in detail:
                if isinstance(item, dict) and "line" in item:
                    print(f"  line {item['line']}: {item['message']}", file=sys.stderr)
                else:
                    print(f"  {item}", file=sys.stderr)
        else:
            print(f"  {detail}", file=sys.stderr)
        return USAGE_EXIT
    response.raise_for_status()

    body = response.json()
    report = body["report"]
    print(report, end="")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            handle.write(report)
    return int(body["exit_code"])


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equichern",
        description="equivariant Chern-Weil verification suites",
    )
    sub = parser.add_subparsers(dest="mode")

    run_p = sub.add_parser("run", help="run suites against a scenario file")
    run_p.add_argument("--scenario", required=True, help="path to the scenario file")
    run_p.add_argument("--command", default="all",
                       choices=["verify-core", "universal-check", "series", "anomaly", "all"])
    run_p.add_argument("--truncation", type=int, default=None,
                       help="override the scenario truncation degree")
    run_p.add_argument("--report", default=None, help="also write the report to this path")
    run_p.add_argument("--url", default=None,
                       help="send the request to a running service instead of in-process")
    run_p.set_defaults(func=_cmd_run)

    serve_p = sub.add_parser("serve", help="start the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help()
        return USAGE_EXIT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
