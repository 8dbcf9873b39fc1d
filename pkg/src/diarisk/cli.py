"""Operator command line: train, validate-model, explain, simulate, serve.

Exit codes: 0 success, 1 usage error, 2 data or model error. Failures are
reported on stderr as one JSON object ``{"code", "message"}``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .datasets import load_dataset_csv
from .errors import DiariskError
from .explain import tree_shap
from .model import load_model, save_model
from .narrate import build_knowledge_base, render_template_narrative
from .schema import default_schema
from .simulate import SimulationRequest, simulate
from .train import TrainParams, fit_gbdt
from .view import to_percentages, view_payload

USAGE_EXIT = 1
DATA_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with 2; we reserve that
        self.print_usage(sys.stderr)
        _fail_usage(message)


def _fail_usage(message: str) -> None:
    print(json.dumps({"code": "usage", "message": message}), file=sys.stderr)
    raise SystemExit(USAGE_EXIT)


def _fail_data(code: str, message: str) -> None:
    print(json.dumps({"code": code, "message": message}), file=sys.stderr)
    raise SystemExit(DATA_EXIT)


def _build_parser() -> _Parser:
    parser = _Parser(prog="diarisk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="train a model from a labeled CSV")
    train.add_argument("-i", "--input", required=True, help="training CSV")
    train.add_argument("-o", "--output", required=True, help="model file to write")
    train.add_argument("--rounds", type=int, default=50)
    train.add_argument("--max-depth", type=int, default=4)
    train.add_argument("--learning-rate", type=float, default=0.1)
    train.add_argument("--seed", type=int, required=True,
                       help="reproducibility stamp; training itself is deterministic")

    validate = sub.add_parser("validate-model", help="structurally check a model file")
    validate.add_argument("model", help="model file to check")

    explain = sub.add_parser("explain", help="batch-explain CSV rows to JSON lines")
    explain.add_argument("-m", "--model", required=True)
    explain.add_argument("-i", "--input", required=True, help="CSV of feature rows")
    explain.add_argument("-o", "--output", help="output path (default stdout)")
    explain.add_argument("--with-cards", action="store_true",
                         help="attach template narrative cards to each line")

    sim = sub.add_parser("simulate", help="what-if overrides for one record")
    sim.add_argument("-m", "--model", required=True)
    sim.add_argument("-i", "--input", required=True, help="JSON file with the base record")
    sim.add_argument("--set", dest="overrides", action="append", default=[],
                     metavar="FEATURE=VALUE", help="override, repeatable")

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("-m", "--model", required=True)
    serve.add_argument("--port", type=int, default=None,
                       help="listen port (default: env PORT, then 8000)")
    return parser


def _cmd_train(args) -> int:
    schema = default_schema()
    records, labels = load_dataset_csv(args.input, schema)
    if not labels:
        _fail_data("malformed_document", f"{args.input}: missing 'label' column")
    params = TrainParams(
        rounds=args.rounds,
        max_depth=args.max_depth,
        learning_rate=args.learning_rate,
    )
    ensemble = fit_gbdt(records, labels, params)
    save_model(ensemble, args.output)
    print(json.dumps({"status": "ok", "model": args.output, "trees": len(ensemble.trees),
                      "seed": args.seed}))
    return 0


def _cmd_validate_model(args) -> int:
    ensemble = load_model(args.model)
    print(json.dumps({
        "status": "ok",
        "trees": len(ensemble.trees),
        "base_margin": ensemble.base_margin,
        "schema_version": ensemble.schema_version,
    }))
    return 0


def _cmd_explain(args) -> int:
    schema = default_schema()
    ensemble = load_model(args.model, schema)
    records, _labels = load_dataset_csv(args.input, schema, require_label=False)
    kb = build_knowledge_base(schema, ensemble, records) if args.with_cards else None

    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        for record in records:
            view = to_percentages(tree_shap(ensemble, record))
            line = view_payload(view)
            if args.with_cards:
                cards = render_template_narrative(view, record, kb)
                line["cards"] = [card.as_dict() for card in cards]
            out.write(json.dumps(line) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _parse_overrides(pairs: list[str]) -> dict[str, float]:
    overrides: dict[str, float] = {}
    for pair in pairs:
        if "=" not in pair:
            _fail_usage(f"--set expects FEATURE=VALUE, got {pair!r}")
        key, _, raw = pair.partition("=")
        try:
            overrides[key.strip()] = float(raw)
        except ValueError:
            _fail_usage(f"--set value for {key!r} must be numeric, got {raw!r}")
    return overrides


def _cmd_simulate(args) -> int:
    overrides = _parse_overrides(args.overrides)
    schema = default_schema()
    ensemble = load_model(args.model, schema)
    from .schema import PatientRecord

    mapping = json.loads(Path(args.input).read_text(encoding="utf-8"))
    record = PatientRecord.from_mapping(schema, mapping)
    request = SimulationRequest(base_record=record, overrides=overrides)
    result = simulate(ensemble, request)
    print(json.dumps({
        "before": {"margin": result.before.margin,
                   "probability": result.before.probability,
                   "level": result.before.level.value},
        "after": {"margin": result.after.margin,
                  "probability": result.after.probability,
                  "level": result.after.level.value},
        "delta_probability": result.delta_probability,
        "after_view": view_payload(result.after_view),
    }))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    ensemble = load_model(args.model)
    app = create_app(ensemble)
    port = args.port if args.port is not None else int(os.environ.get("PORT", "8000"))
    uvicorn.run(app, host="0.0.0.0", port=port)
    return 0


_COMMANDS = {
    "train": _cmd_train,
    "validate-model": _cmd_validate_model,
    "explain": _cmd_explain,
    "simulate": _cmd_simulate,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DiariskError as exc:
        _fail_data(exc.code, str(exc))
    except FileNotFoundError as exc:
        _fail_data("file_not_found", str(exc))
    except json.JSONDecodeError as exc:
        _fail_data("malformed_document", str(exc))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
