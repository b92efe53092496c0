"""Command-line driver.

Verbs: ``tables``, ``verify --suite NAME``, ``iib-truncations`` and ``brane``.
Exit status is 0 when every check passes, 1 when any check fails and 2 on a
configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import yaml

from . import __version__
from .clifford import Signature, UnsupportedDimension
from .suites import SUITES, ConfigError, RunConfig, brane_suite, iib_report, run_suite, tables_report

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

CONFIG_KEYS = {"signature", "delta0", "seed", "samples", "suite", "out", "format", "killing", "brane"}
BRANE_KEYS = {"preset", "p", "d", "delta1", "delta2", "points"}


def _parse_signature(value) -> Signature:
    try:
        if isinstance(value, str):
            return Signature.parse(value)
        t, s = value
        return Signature(int(t), int(s))
    except (ValueError, TypeError, UnsupportedDimension) as exc:
        raise ConfigError(f"bad signature {value!r}: {exc}") from exc


def _parse_sign(value) -> int:
    table = {"+": 1, "-": -1, "+1": 1, "-1": -1, 1: 1, -1: -1}
    if value not in table:
        raise ConfigError(f"sign must be + or -, got {value!r}")
    return table[value]


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            doc = yaml.safe_load(fh) or {}
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a mapping")
    unknown = set(doc) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "brane" in doc:
        if not isinstance(doc["brane"], dict) or set(doc["brane"]) - BRANE_KEYS:
            raise ConfigError(f"brane section accepts only {sorted(BRANE_KEYS)}")
    return doc


def build_config(args, doc: dict) -> RunConfig:
    cfg = RunConfig()
    sig = args.signature if args.signature is not None else doc.get("signature")
    if sig is not None:
        cfg.signature = _parse_signature(sig)
    d0 = args.delta0 if args.delta0 is not None else doc.get("delta0")
    if d0 is not None:
        cfg.delta0 = _parse_sign(d0)
    seed = args.seed if args.seed is not None else doc.get("seed", 0)
    samples = doc.get("samples", cfg.samples)
    if not isinstance(seed, int) or not isinstance(samples, int) or samples < 1:
        raise ConfigError("seed and samples must be integers (samples >= 1)")
    cfg.seed, cfg.samples = seed, samples
    killing = doc.get("killing", {})
    if killing:
        try:
            cfg.killing_a = tuple(Fraction(str(a)) for a in killing.get("a", ()))
        except (ValueError, AttributeError) as exc:
            raise ConfigError(f"killing.a must list rationals: {exc}") from exc
    brane = dict(doc.get("brane", {}))
    for key in ("preset", "p", "d", "delta1", "delta2", "points"):
        val = getattr(args, f"brane_{key}", None)
        if val is not None:
            brane[key] = val
    if "preset" in brane:
        cfg.brane_preset = brane["preset"]
    if "p" in brane or "d" in brane:
        cfg.brane_p, cfg.brane_d = brane.get("p"), brane.get("d")
    if "delta1" in brane:
        cfg.brane_delta1 = _parse_sign(brane["delta1"])
    if "delta2" in brane:
        cfg.brane_delta2 = _parse_sign(brane["delta2"])
    if "points" in brane:
        cfg.brane_points = int(brane["points"])
    return cfg


def render(records, fmt: str, header: dict, data=None) -> str:
    counts = {s: sum(r.status == s for r in records) for s in ("pass", "fail", "skip")}
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check_id", "anchor", "status", "residual", "witness"])
        for r in records:
            w.writerow([r.check_id, r.anchor, r.status, "" if r.residual is None else repr(r.residual),
                        r.witness or ""])
        return buf.getvalue()
    lines = [json.dumps(header, sort_keys=True)]
    if data is not None:
        lines.append(json.dumps({"data": data}, sort_keys=True, default=str))
    lines.extend(json.dumps(r.as_dict(), sort_keys=True) for r in records)
    lines.append(json.dumps({"summary": counts}, sort_keys=True))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML run configuration")
    common.add_argument("--signature", help="t,s (timelike, spacelike)")
    common.add_argument("--delta0", choices=["+", "-"], help="symmetry of the charge conjugation")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "csv"])

    p = argparse.ArgumentParser(prog="spintorsion", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"spintorsion {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("tables", parents=[common], help="twist, kernel and chirality tables")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES + ("all",))
    sub.add_parser("iib-truncations", parents=[common], help="field content kept by each twisted conjugation")
    b = sub.add_parser("brane", parents=[common], help="brane background checks")
    b.add_argument("--preset", dest="brane_preset", choices=["m5", "m5-consistent"])
    b.add_argument("--p", dest="brane_p", type=int)
    b.add_argument("--d", dest="brane_d", type=int)
    b.add_argument("--delta1", dest="brane_delta1", choices=["+", "-"])
    b.add_argument("--delta2", dest="brane_delta2", choices=["+", "-"])
    b.add_argument("--points", dest="brane_points", type=int)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = load_config(args.config)
        cfg = build_config(args, doc)
        fmt = args.format or doc.get("format", "json")
        if fmt not in ("json", "csv"):
            raise ConfigError(f"unknown format {fmt!r}")
        out = args.out or doc.get("out")
        data = None
        if args.command == "tables":
            data, records = tables_report(cfg)
        elif args.command == "verify":
            suite = args.suite or doc.get("suite")
            if suite is None:
                raise ConfigError("no suite selected")
            records = run_suite(cfg, suite)
        elif args.command == "iib-truncations":
            data, records = iib_report(cfg)
        else:
            expected = 106 if cfg.brane_p is None else None
            records = sorted(brane_suite(cfg, expected), key=lambda r: r.check_id)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    header = {"tool": "spintorsion", "version": __version__, "command": args.command,
              "config": cfg.echo()}
    try:
        _emit(render(records, fmt, header, data), out)
    except OSError as exc:
        print(f"cannot write report: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    fails = sum(r.status == "fail" for r in records)
    if fmt == "csv" or out:
        print(f"{len(records)} checks, {fails} failed", file=sys.stderr)
    return EXIT_FAIL if fails else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
