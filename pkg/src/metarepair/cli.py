"""Command-line entry point: transform, verify, prompt, evaluate and report."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .errors import MetarepairError, SchemaError

EXIT_OK = 0
EXIT_BUG_FAILURE = 1
EXIT_CONFIG = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems are configuration errors
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="metarepair", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("transform", help="rewrite every bug's function into the transformed dataset")
    t.add_argument("--manifest", required=True)
    t.add_argument("--out", required=True)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--ops", default="T1,T2,T3,T4,T5", help="comma-separated operators; empty for none")
    t.add_argument("--max-dead-blocks", type=int, default=3)
    t.add_argument("--rename-provider", choices=("deterministic", "endpoint"), default="deterministic")
    t.add_argument("--endpoint-model")
    t.add_argument("--parallelism", type=int, default=1)

    v = sub.add_parser("verify", help="check that transformed bugs keep their test outcomes")
    v.add_argument("--manifest", required=True, help="manifest of the original bugs")
    v.add_argument("--transformed", required=True, help="output directory of 'transform'")
    v.add_argument("--out", required=True)
    v.add_argument("--parallelism", type=int, default=2)
    v.add_argument("--timeout", type=float, default=300.0)

    pr = sub.add_parser("prompt", help="render repair prompts")
    pr.add_argument("--manifest", required=True)
    pr.add_argument("--out", required=True)
    pr.add_argument("--kinds", default="TwoShot,TwoShotFL,BugReport,TriggerTest")
    pr.add_argument("--budget", type=int, default=8192)
    pr.add_argument("--chars-per-token", type=int, default=4)

    e = sub.add_parser("evaluate", help="sample patches from an endpoint and judge them")
    e.add_argument("--manifest", required=True)
    e.add_argument("--out", required=True)
    e.add_argument("--dataset", choices=("original", "transformed"), default="transformed")
    e.add_argument("--kinds", default="TwoShot")
    e.add_argument("--model", default="default")
    e.add_argument("--endpoint-url")
    e.add_argument("--samples", type=int, default=200)
    e.add_argument("--top-p", type=float, default=0.95)
    e.add_argument("--temperature", type=float, default=0.8)
    e.add_argument("--max-new-tokens", type=int, default=2048)
    e.add_argument("--window", type=int, default=8)
    e.add_argument("--parallelism", type=int, default=1)
    e.add_argument("--judge-timeout", type=float, default=300.0)
    e.add_argument("--annotations", help="JSON mapping bug_id to sample indices reviewed as correct")
    e.add_argument("--seed", type=int, default=0, help="recorded in run.json")

    r = sub.add_parser("report", help="print result tables from a ledger")
    r.add_argument("--ledger", required=True)
    r.add_argument("--out", help="directory for report.json and run.json")
    r.add_argument("--prompt-kind", default="TwoShot")
    return p


def _kinds(text: str) -> list[str]:
    from .prompts.templates import KINDS

    kinds = [k for k in text.split(",") if k]
    bad = [k for k in kinds if k not in KINDS]
    if bad or not kinds:
        raise SchemaError(f"unknown prompt kinds {bad}; choose from {', '.join(KINDS)}", field="kinds")
    return kinds


def _write_run(out: str | None, args: argparse.Namespace, extra: dict | None = None) -> None:
    if not out:
        return
    Path(out).mkdir(parents=True, exist_ok=True)
    config = {k: v for k, v in sorted(vars(args).items())}
    payload = {"version": __version__, "command": args.command, "config": config, **(extra or {})}
    (Path(out) / "run.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _positive(name: str, value) -> None:
    if value < 1:
        raise SchemaError("must be >= 1", field=name)


def cmd_transform(args) -> int:
    from .dataset import build_transformed_dataset, load_manifest
    from .transform import TransformConfig

    _positive("parallelism", args.parallelism)
    ops = tuple(o.strip() for o in args.ops.split(",") if o.strip())
    try:
        config = TransformConfig(seed=args.seed, enabled_ops=ops, max_dead_blocks=args.max_dead_blocks,
                                 rename_provider=args.rename_provider, endpoint_model=args.endpoint_model)
    except ValueError as exc:
        raise SchemaError(str(exc), field="transform config") from exc
    manifest = load_manifest(args.manifest)
    build = build_transformed_dataset(manifest, config, args.out, args.parallelism)
    _write_run(args.out, args, {"transform_config": config.to_dict(), "seed": args.seed})
    summary = build.summary()
    print(json.dumps({k: summary[k] for k in ("bugs", "transformed", "failed")}, sort_keys=True))
    return EXIT_BUG_FAILURE if build.failures else EXIT_OK


def cmd_verify(args) -> int:
    from .dataset import load_manifest
    from .verify import batch_verify

    _positive("parallelism", args.parallelism)
    manifest = load_manifest(args.manifest)
    report = batch_verify(manifest, args.transformed, args.parallelism, args.timeout)
    Path(args.out).mkdir(parents=True, exist_ok=True)
    (Path(args.out) / "verify.json").write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n",
                                                encoding="utf-8")
    _write_run(args.out, args)
    print(json.dumps({"checked": len(report.results), "excluded": report.excluded}))
    return EXIT_BUG_FAILURE if report.excluded else EXIT_OK


def cmd_prompt(args) -> int:
    from .dataset import load_manifest
    from .prompts import PromptConfig, build_prompt, write_prompts

    kinds = _kinds(args.kinds)
    cfg = PromptConfig(args.budget, args.chars_per_token)
    manifest = load_manifest(args.manifest)
    docs, skipped = [], {}
    for bug in manifest.bugs:
        for kind in kinds:
            try:
                docs.append(build_prompt(kind, bug, manifest.project_bugs(bug.project), cfg))
            except MetarepairError as exc:
                skipped[f"{bug.bug_id}/{kind}"] = f"{type(exc).__name__}: {exc}"
    write_prompts(docs, args.out, skipped)
    _write_run(args.out, args)
    print(json.dumps({"written": len(docs), "skipped": len(skipped)}))
    return EXIT_BUG_FAILURE if skipped else EXIT_OK


def cmd_evaluate(args) -> int:
    from .dataset import load_manifest
    from .evaluate import SamplingConfig, evaluate

    _positive("parallelism", args.parallelism)
    kinds = _kinds(args.kinds)
    try:
        sampling = SamplingConfig(top_p=args.top_p, temperature=args.temperature, samples_per_bug=args.samples,
                                  max_new_tokens=args.max_new_tokens, endpoint_url=args.endpoint_url,
                                  model=args.model, window=args.window)
    except ValueError as exc:
        raise SchemaError(str(exc), field="sampling") from exc
    annotations = None
    if args.annotations:
        annotations = json.loads(Path(args.annotations).read_text(encoding="utf-8"))
    manifest = load_manifest(args.manifest)
    _write_run(args.out, args, {"sampling": sampling.to_dict(), "seed": args.seed})
    run = evaluate(manifest, args.out, sampling, kinds, args.dataset, parallelism=args.parallelism,
                   judge_timeout=args.judge_timeout, annotations=annotations)
    counts = {f"{e.model}/{e.prompt_kind}/{e.dataset}": e.fixed_plausible for e in run.ledger.entries}
    print(json.dumps({"fixed_plausible": counts, "skipped": run.skipped}, sort_keys=True))
    return EXIT_BUG_FAILURE if run.skipped or run.failures else EXIT_OK


def cmd_report(args) -> int:
    from .evaluate import EvalLedger, render_report

    ledger = EvalLedger.load(args.ledger)
    text, data = render_report(ledger, args.prompt_kind)
    sys.stdout.write(text)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "report.json").write_text(json.dumps(data, indent=2, sort_keys=True) + "\n",
                                                    encoding="utf-8")
        (Path(args.out) / "report.txt").write_text(text, encoding="utf-8")
        _write_run(args.out, args)
    return EXIT_OK


COMMANDS = {"transform": cmd_transform, "verify": cmd_verify, "prompt": cmd_prompt, "evaluate": cmd_evaluate,
            "report": cmd_report}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (SchemaError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"metarepair: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MetarepairError as exc:
        print(f"metarepair: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUG_FAILURE


if __name__ == "__main__":
    sys.exit(main())
