"""Command-line interface.

Exit codes: 0 success, 2 configuration error, 3 transport error,
4 data error, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..datasets import convert_hatexplain, convert_movies_eraser, load_corpus_jsonl
from ..errors import (
    ConfigError,
    DataError,
    InvalidInputError,
    ProtocolError,
    TransportError,
    TruncationError,
    UnsupportedCapabilityError,
    XaiBenchError,
)
from ..evaluation import METRICS, HumanRationale
from ..models import resolve_model
from .config import RunConfig, SampleSpec, parse_target_policy
from .render import FORMATS, TABLE, render_report
from .runner import run_dataset, run_instance

DEFAULT_METHODS = "g,gxi,ig,igxi,lime,shap,loo"


def _split_csv(raw: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in raw.split(",") if part.strip())


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", help="builtin:lexicon or remote:<url>")
    parser.add_argument("--methods", default=DEFAULT_METHODS, help="comma-separated")
    parser.add_argument("--removal", default="delete", choices=("delete", "mask"))
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--ig-steps", type=int, default=50)
    parser.add_argument("--lime-samples", type=int, default=1000)
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--format", default=TABLE, choices=FORMATS)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xaibench",
        description="Explain text-classifier predictions and benchmark the explanations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_explain = sub.add_parser("explain", help="attribution scores for one text")
    _add_common_flags(p_explain)
    p_explain.add_argument("--text", required=True)
    p_explain.add_argument("--target", type=int, help="defaults to the predicted class")

    p_eval = sub.add_parser("evaluate", help="explain one text and score the explanations")
    _add_common_flags(p_eval)
    p_eval.add_argument("--text", required=True)
    p_eval.add_argument("--target", type=int, help="defaults to the predicted class")
    p_eval.add_argument("--metrics", default=",".join(METRICS), help="comma-separated")
    p_eval.add_argument(
        "--rationale",
        help="JSON 0/1 mask over content tokens enabling plausibility metrics",
    )

    p_bench = sub.add_parser("benchmark", help="aggregate metrics over a corpus sample")
    _add_common_flags(p_bench)
    p_bench.add_argument("--corpus", required=True, help="normalized JSONL corpus")
    p_bench.add_argument("--metrics", default=",".join(METRICS), help="comma-separated")
    p_bench.add_argument("--label", help="keep only instances with this label")
    p_bench.add_argument("--split", choices=("train", "validation", "test"))
    p_bench.add_argument("--sample", type=int, help="number of instances")
    p_bench.add_argument("--target", default="gold", help="'gold' or a class index")
    p_bench.add_argument("--workers", type=int, default=1)
    p_bench.add_argument("--html", help="also write an HTML report here")
    p_bench.add_argument(
        "--no-instances",
        action="store_true",
        help="exclude per-instance reports from the JSON output",
    )

    p_dataset = sub.add_parser("dataset", help="corpus tooling")
    dataset_sub = p_dataset.add_subparsers(dest="dataset_command", required=True)
    p_convert = dataset_sub.add_parser("convert", help="convert a public corpus format")
    convert_sub = p_convert.add_subparsers(dest="converter", required=True)

    p_hx = convert_sub.add_parser("hatexplain")
    p_hx.add_argument("--in", dest="in_path", required=True, help="release JSON dump")
    p_hx.add_argument("--out", required=True, help="normalized JSONL output")
    p_hx.add_argument("--splits", help="post-id division file for split assignment")
    p_hx.add_argument("--rationale-mode", default="majority", choices=("majority", "union"))

    p_mv = convert_sub.add_parser("movies")
    p_mv.add_argument("--in", dest="in_path", required=True, help="annotation JSONL")
    p_mv.add_argument("--docs", required=True, help="directory with document files")
    p_mv.add_argument("--out", required=True, help="normalized JSONL output")
    p_mv.add_argument("--split", choices=("train", "validation", "test"))

    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_rationale(raw: str | None) -> HumanRationale | None:
    if raw is None:
        return None
    try:
        mask = json.loads(raw)
        return HumanRationale(mask=tuple(int(b) for b in mask))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"--rationale must be a JSON 0/1 list: {exc}") from exc


def _cmd_explain(args: argparse.Namespace, with_metrics: bool) -> int:
    config = RunConfig(
        model_spec=args.model,
        methods=_split_csv(args.methods),
        metrics=_split_csv(args.metrics) if with_metrics else METRICS,
        removal=args.removal,
        seed=args.seed,
        ig_steps=args.ig_steps,
        lime_samples=args.lime_samples,
    )
    model = resolve_model(config.model_spec)
    human = _parse_rationale(getattr(args, "rationale", None))
    report = run_instance(
        model,
        config,
        text=args.text,
        target=args.target,
        human=human,
        with_metrics=with_metrics,
    )
    _emit(render_report(report, args.format), args.out)
    return 0


def _cmd_benchmark(args: argparse.Namespace) -> int:
    config = RunConfig(
        model_spec=args.model,
        methods=_split_csv(args.methods),
        metrics=_split_csv(args.metrics),
        target_policy=parse_target_policy(args.target),
        removal=args.removal,
        seed=args.seed,
        sample=SampleSpec(count=args.sample, label=args.label, split=args.split),
        workers=args.workers,
        ig_steps=args.ig_steps,
        lime_samples=args.lime_samples,
        include_instances=not args.no_instances,
    )
    model = resolve_model(config.model_spec)
    corpus = load_corpus_jsonl(args.corpus)
    report = run_dataset(model, config, corpus)
    if args.out:
        _emit(render_report(report, "json"), args.out)
        sys.stdout.write(render_report(report, TABLE))
    else:
        _emit(render_report(report, args.format), None)
    if args.html:
        _emit(render_report(report, "html"), args.html)
    return 0


def _cmd_dataset(args: argparse.Namespace) -> int:
    if args.converter == "hatexplain":
        corpus = convert_hatexplain(
            args.in_path,
            args.out,
            rationale_mode=args.rationale_mode,
            splits_path=args.splits,
        )
    else:
        corpus = convert_movies_eraser(
            args.docs, args.in_path, args.out, split=args.split
        )
    sys.stdout.write(
        f"wrote {len(corpus.instances)} instances to {args.out} "
        f"(K={corpus.avg_rationale_len})\n"
    )
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "explain":
            return _cmd_explain(args, with_metrics=False)
        if args.command == "evaluate":
            return _cmd_explain(args, with_metrics=True)
        if args.command == "benchmark":
            return _cmd_benchmark(args)
        return _cmd_dataset(args)
    except (ConfigError, UnsupportedCapabilityError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (TransportError, ProtocolError) as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return 3
    except (DataError, InvalidInputError, TruncationError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 4
    except XaiBenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
