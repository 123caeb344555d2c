"""Command line: build, verify, export, report.

Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import UnsupportedField
from .model import ConfigError, ModelConfig, build_model
from .report import CERTIFIED, SAMPLED
from .subspaces import PSUB2_TAGS, enumerate_psub
from .suites import MUTATIONS, SUITES, RunOptions, dumps, export_document, fingerprint, run_suite

OK, FAILED, BAD_CONFIG = 0, 1, 2
DEFAULT_SAMPLES = 200

KEYS = {"q", "vertex_dim", "base_dim", "quadric", "suites", "mode", "seed", "samples", "mutation"}


def parse_config(text: str) -> dict:
    """Flat key=value lines; '#' starts a comment."""
    out = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {n}: expected key=value")
        k, v = (s.strip() for s in line.split("=", 1))
        if k not in KEYS:
            raise ConfigError(f"line {n}: unknown key {k!r}")
        out[k] = v
    return out


def _int(cfg: dict, key: str, default=None):
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing key {key!r}")
        return default
    try:
        return int(cfg[key])
    except ValueError:
        raise ConfigError(f"{key} must be an integer") from None


def model_config(cfg: dict) -> ModelConfig:
    mc = ModelConfig(_int(cfg, "q"), _int(cfg, "vertex_dim"), _int(cfg, "base_dim"),
                     cfg.get("quadric", "hyperbolic"))
    mc.validate()
    return mc


def run_options(cfg: dict, args) -> tuple[list[str], RunOptions]:
    suites_txt = args.suite or cfg.get("suites", "all")
    suites = list(SUITES) if suites_txt == "all" else [s.strip() for s in suites_txt.split(",") if s.strip()]
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise ConfigError(f"unknown suite id {unknown[0]!r}")
    mode = (args.mode or cfg.get("mode", "certified")).upper()
    if mode not in (CERTIFIED, SAMPLED):
        raise ConfigError(f"mode must be certified or sampled, not {mode.lower()!r}")
    seed = args.seed if args.seed is not None else (int(cfg["seed"]) if "seed" in cfg else None)
    if mode == SAMPLED and seed is None:
        raise ConfigError("sampled mode requires an explicit seed")
    samples = int(cfg["samples"]) if "samples" in cfg else (DEFAULT_SAMPLES if mode == SAMPLED else None)
    mutation = cfg.get("mutation")
    if mutation is not None and mutation not in MUTATIONS:
        raise ConfigError(f"unknown mutation {mutation!r}")
    return suites, RunOptions(mode, seed or 0, samples, mutation)


def _load(args) -> dict:
    if not args.config:
        raise ConfigError("--config is required")
    try:
        return parse_config(Path(args.config).read_text())
    except OSError as e:
        raise ConfigError(f"cannot read config {args.config}: {e.strerror}") from None


def cmd_build(args) -> int:
    cfg = _load(args)
    model = build_model(model_config(cfg))
    p = model.params
    counts = {}
    for z in enumerate_psub(model, 2):
        counts[z.tag.nickname] = counts.get(z.tag.nickname, 0) + 1
    print(f"q={model.q} n={model.n} nu={p['nu']} t={p['t']} a={p['a']}")
    print(f"|S|={model.num_points} |A|={len(model.affine_lines)} |G|={len(model.projective_lines)} "
          f"|C|={len(model.cycles)}")
    for tag in PSUB2_TAGS:
        print(f"P2 {tag.nickname} ({tag.name}): {counts.get(tag.nickname, 0)}")
    return OK


def verify_document(args) -> dict:
    cfg = _load(args)
    mc = model_config(cfg)
    suites, opt = run_options(cfg, args)
    model = build_model(mc)
    reports = [run_suite(model, s, opt) for s in suites]
    return {
        "fingerprint": fingerprint(model),
        "config": {"q": mc.q, "vertex_dim": mc.vertex_dim, "base_dim": mc.base_dim,
                   "quadric": mc.quadric, "mode": opt.mode, "seed": opt.seed,
                   "samples": opt.samples, "mutation": opt.mutation},
        "success": all(r.success for r in reports),
        "suites": [r.to_dict() for r in reports],
        "_lines": [r.line() for r in reports],
    }


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise IOError(f"cannot write {path}: {e.strerror}") from None


def cmd_verify(args) -> int:
    doc = verify_document(args)
    for line in doc.pop("_lines"):
        print(line, file=sys.stderr if args.out is None else sys.stdout)
    _write(args.out, dumps(doc))
    return OK if doc["success"] else FAILED


def cmd_export(args) -> int:
    cfg = _load(args)
    model = build_model(model_config(cfg))
    _write(args.out, dumps(export_document(model)))
    return OK


def cmd_report(args) -> int:
    """Print a stored verification report, refusing one made for another model."""
    cfg = _load(args)
    model = build_model(model_config(cfg))
    if not args.out:
        raise ConfigError("report needs --out pointing at a verification report")
    try:
        doc = json.loads(Path(args.out).read_text())
    except OSError as e:
        raise ConfigError(f"cannot read report {args.out}: {e.strerror}") from None
    if doc.get("fingerprint") != fingerprint(model):
        raise ConfigError("report fingerprint does not match the configured model")
    for s in doc["suites"]:
        status = "PASS" if s["success"] else "FAIL"
        print(f"{status} {s['lemma']} [{s['mode']}] instantiations={s['instantiations']} "
              f"counterexamples={s['counterexample_count']}")
    return OK if doc["success"] else FAILED


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="laguerre", description="Finite Laguerre space models and checks.")
    sp = ap.add_subparsers(dest="command", required=True)
    for name, fn in (("build", cmd_build), ("verify", cmd_verify), ("export", cmd_export),
                     ("report", cmd_report)):
        p = sp.add_parser(name)
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--suite", help="comma separated suite ids or 'all'")
        p.add_argument("--mode", choices=["certified", "sampled"])
        p.add_argument("--seed", type=int)
        p.add_argument("--out", help="output file (report input for 'report')")
        p.set_defaults(func=fn)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, UnsupportedField) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_CONFIG
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_CONFIG


if __name__ == "__main__":
    sys.exit(main())
