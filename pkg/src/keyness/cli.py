"""Command-line client for the extraction service.

Every subcommand maps to one service endpoint.  By default the app runs
in-process (no server needed); pass --server to talk to a running instance.
Exit codes: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path


def _model_dir_default() -> str | None:
    return os.environ.get("KEYNESS_MODEL_DIR")


def _resolve_model(explicit: str | None, model_dir: str | None, name: str) -> str:
    if explicit:
        return explicit
    directory = model_dir or _model_dir_default()
    if directory:
        return str(Path(directory) / f"{name}.knm")
    raise UsageError(f"no --{name} given and no model directory configured")


class UsageError(Exception):
    """Usage-level error discovered after argparse (exit code 2)."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="keyness")
    parser.add_argument("--server", help="base URL of a running service; "
                                         "default runs the service in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    def training_flags(p, epochs, batch, lr):
        p.add_argument("--epochs", type=int, default=epochs)
        p.add_argument("--batch", type=int, default=batch)
        p.add_argument("--lr", type=float, default=lr)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--clip-norm", type=float, default=0.25)

    p = sub.add_parser("build-stats", help="collect corpus frequency statistics")
    p.add_argument("--manifest", action="append", required=True, dest="manifests")
    p.add_argument("--out", required=True)

    p = sub.add_parser("train-identifier", help="train the candidate identifier")
    p.add_argument("--manifest", action="append", required=True, dest="manifests")
    p.add_argument("--out", required=True)
    p.add_argument("--log-out")
    p.add_argument("--epsilon", type=float, default=0.5)
    training_flags(p, epochs=20, batch=56, lr=1.0)

    p = sub.add_parser("train-ranker", help="train the keyness ranker")
    p.add_argument("--manifest", action="append", required=True, dest="manifests")
    p.add_argument("--identifier")
    p.add_argument("--model-dir")
    p.add_argument("--stats", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--log-out")
    p.add_argument("--theta", type=float, default=3.35)
    p.add_argument("--distance-threshold", type=float, default=0.1)
    p.add_argument("--embedding-table")
    training_flags(p, epochs=30, batch=126, lr=0.0008)

    p = sub.add_parser("extract", help="extract ranked term groups from documents")
    p.add_argument("--model-dir")
    p.add_argument("--identifier")
    p.add_argument("--ranker")
    p.add_argument("--stats", required=True)
    p.add_argument("--in", action="append", required=True, dest="inputs",
                   help="parsed document file (repeatable)")
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--sublanguage")
    p.add_argument("--in-reference", action="store_true",
                   help="documents were part of the stats corpus")
    p.add_argument("--distance-threshold", type=float, default=0.1)
    p.add_argument("--embedding-table")
    p.add_argument("--out", help="write JSON-lines here instead of stdout")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("eval", help="evaluate on datasets with gold keywords")
    p.add_argument("--manifest", action="append", required=True, dest="manifests")
    p.add_argument("--model-dir")
    p.add_argument("--identifier")
    p.add_argument("--ranker")
    p.add_argument("--stats", required=True)
    p.add_argument("--top-k", type=int, default=10, dest="k")
    p.add_argument("--sublanguage")
    p.add_argument("--zero-shot", action="store_true",
                   help="treat documents as outside the stats corpus")
    p.add_argument("--distance-threshold", type=float, default=0.1)
    p.add_argument("--embedding-table")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sweep-theta", help="train and evaluate across a theta grid")
    p.add_argument("--train-manifest", action="append", required=True,
                   dest="train_manifests")
    p.add_argument("--eval-manifest", action="append", required=True,
                   dest="eval_manifests")
    p.add_argument("--model-dir")
    p.add_argument("--identifier")
    p.add_argument("--stats", required=True)
    p.add_argument("--grid", required=True,
                   help="comma-separated theta values, e.g. 0.5,1,2,3,4")
    p.add_argument("--distance-threshold", type=float, default=0.1)
    p.add_argument("--embedding-table")
    p.add_argument("--top-k", type=int, default=10, dest="k")
    p.add_argument("--out-csv")
    p.add_argument("--jobs", type=int, default=1)
    training_flags(p, epochs=30, batch=126, lr=0.0008)

    p = sub.add_parser("export-features", help="dump per-term feature values as CSV")
    p.add_argument("--manifest", action="append", required=True, dest="manifests")
    p.add_argument("--model-dir")
    p.add_argument("--identifier")
    p.add_argument("--stats", required=True)
    p.add_argument("--out-csv", required=True)
    p.add_argument("--distance-threshold", type=float, default=0.1)
    p.add_argument("--embedding-table")

    p = sub.add_parser("pattern-coverage",
                       help="cluster gold-keyword patterns and export the coverage curve")
    p.add_argument("--manifest", action="append", required=True, dest="manifests")
    p.add_argument("--model-dir")
    p.add_argument("--identifier")
    p.add_argument("--stats", required=True)
    p.add_argument("--distance-threshold", type=float, default=0.1)
    p.add_argument("--embedding-table")
    p.add_argument("--out-csv")

    p = sub.add_parser("gradient-check", help="verify analytic gradients")
    p.add_argument("--tolerance", type=float, default=1e-4)
    p.add_argument("--step", type=float, default=1e-5)
    p.add_argument("--max-entries", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _request_for(args: argparse.Namespace) -> tuple[str, dict]:
    cmd = args.command
    if cmd == "build-stats":
        return "/stats/build", {"manifests": args.manifests, "out": args.out}
    if cmd == "train-identifier":
        return "/train/identifier", {
            "manifests": args.manifests, "out": args.out, "log_out": args.log_out,
            "params": {"epochs": args.epochs, "batch_size": args.batch,
                       "learning_rate": args.lr, "epsilon": args.epsilon,
                       "seed": args.seed, "clip_norm": args.clip_norm}}
    if cmd == "train-ranker":
        return "/train/ranker", {
            "manifests": args.manifests,
            "identifier": _resolve_model(args.identifier, args.model_dir, "identifier"),
            "stats": args.stats, "out": args.out, "log_out": args.log_out,
            "distance_threshold": args.distance_threshold,
            "embedding_table": args.embedding_table,
            "params": {"epochs": args.epochs, "batch_size": args.batch,
                       "learning_rate": args.lr, "theta": args.theta,
                       "seed": args.seed, "clip_norm": args.clip_norm}}
    if cmd == "extract":
        return "/extract", {
            "identifier": _resolve_model(args.identifier, args.model_dir, "identifier"),
            "ranker": _resolve_model(args.ranker, args.model_dir, "ranker"),
            "stats": args.stats, "inputs": args.inputs, "top_k": args.top_k,
            "sublanguage": args.sublanguage, "in_reference": args.in_reference,
            "distance_threshold": args.distance_threshold,
            "embedding_table": args.embedding_table, "out": args.out,
            "jobs": args.jobs}
    if cmd == "eval":
        return "/eval", {
            "manifests": args.manifests,
            "identifier": _resolve_model(args.identifier, args.model_dir, "identifier"),
            "ranker": _resolve_model(args.ranker, args.model_dir, "ranker"),
            "stats": args.stats, "k": args.k, "sublanguage": args.sublanguage,
            "in_reference": not args.zero_shot,
            "distance_threshold": args.distance_threshold,
            "embedding_table": args.embedding_table, "out": args.out,
            "jobs": args.jobs, "seed": args.seed}
    if cmd == "sweep-theta":
        try:
            grid = [float(x) for x in args.grid.split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"bad --grid value: {args.grid!r}")
        return "/sweep/theta", {
            "train_manifests": args.train_manifests,
            "eval_manifests": args.eval_manifests,
            "identifier": _resolve_model(args.identifier, args.model_dir, "identifier"),
            "stats": args.stats, "grid": grid,
            "params": {"epochs": args.epochs, "batch_size": args.batch,
                       "learning_rate": args.lr, "seed": args.seed,
                       "clip_norm": args.clip_norm},
            "distance_threshold": args.distance_threshold,
            "embedding_table": args.embedding_table, "k": args.k,
            "out_csv": args.out_csv, "jobs": args.jobs}
    if cmd == "export-features":
        return "/export/features", {
            "manifests": args.manifests,
            "identifier": _resolve_model(args.identifier, args.model_dir, "identifier"),
            "stats": args.stats, "out_csv": args.out_csv,
            "distance_threshold": args.distance_threshold,
            "embedding_table": args.embedding_table}
    if cmd == "pattern-coverage":
        return "/coverage/patterns", {
            "manifests": args.manifests,
            "identifier": _resolve_model(args.identifier, args.model_dir, "identifier"),
            "stats": args.stats,
            "distance_threshold": args.distance_threshold,
            "embedding_table": args.embedding_table, "out_csv": args.out_csv}
    if cmd == "gradient-check":
        return "/gradient-check", {
            "tolerance": args.tolerance, "step": args.step,
            "max_entries": args.max_entries, "seed": args.seed}
    raise UsageError(f"unknown command {cmd!r}")


def _post(args: argparse.Namespace, path: str, body: dict) -> dict:
    if args.server:
        import httpx
        response = httpx.post(args.server.rstrip("/") + path, json=body, timeout=None)
    else:
        from fastapi.testclient import TestClient
        from .service import create_app
        with TestClient(create_app(), raise_server_exceptions=False) as client:
            response = client.post(path, json=body)
    payload = response.json()
    if response.status_code != 200:
        message = payload.get("error") if isinstance(payload, dict) else None
        raise RuntimeError(message or f"service returned {response.status_code}: {payload}")
    return payload


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn
        from .service import create_app
        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0
    try:
        path, body = _request_for(args)
    except UsageError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    try:
        payload = _post(args, path, body)
    except Exception as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    if args.command == "extract" and not body.get("out"):
        for record in payload["documents"]:
            print(json.dumps(record))
    else:
        print(json.dumps(payload, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
