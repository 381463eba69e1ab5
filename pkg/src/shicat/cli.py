"""Command-line front end.

    shicat build   --k K [--family shi|cat|both] [--format json|text] [--out PATH]
    shicat verify  --k-max K [--suite NAME ...] [--format json|text] [--no-timings]
    shicat certify (--k K [--family ...] | --basis FILE) [--format json|text]

Exit codes: 0 success, 1 a check failed, 2 invalid configuration.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .construction import ConstructionError
from .derivation import saito_check
from .serialize import (
    arrangement_from_json,
    certificate_to_json,
    derivation_from_json,
    derivation_text,
    family_section,
)
from .verify import SUITES, Record, Report, run_suites

log = logging.getLogger("shicat")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
DEFAULT_CAP = 8


class ConfigError(ValueError):
    pass


def _families(family: str) -> list[str]:
    return ["shi", "cat"] if family == "both" else [family]


def _check_k(k: int, cap: int, flag: str) -> None:
    if k < 0:
        raise ConfigError(f"{flag} must be non-negative")
    if k > cap:
        raise ConfigError(f"{flag}={k} exceeds the cap {cap} (raise it with --cap)")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(data) -> str:
    return json.dumps(data, ensure_ascii=False, separators=(",", ":")) + "\n"


def config_echo(args: argparse.Namespace) -> dict:
    keys = ("command", "k", "k_max", "family", "suite", "format", "basis")
    return {key: getattr(args, key) for key in keys if getattr(args, key, None) is not None}


# -- build -------------------------------------------------------------------

def cmd_build(args: argparse.Namespace) -> int:
    _check_k(args.k, args.cap, "--k")
    sections = {fam: family_section(fam, args.k) for fam in _families(args.family)}
    if args.format == "json":
        payload = {"tool": "shicat", "version": __version__, "config": config_echo(args), "k": args.k}
        payload.update(sections)
        _emit(_dump(payload), args.out)
        return EXIT_OK
    lines = []
    for fam, sec in sections.items():
        arr = arrangement_from_json(sec["arrangement"])
        lines.append(f"== {arr.name}: {len(arr)} hyperplanes, exponents {arr.expected_exponents}")
        for key in [k for k in sec if k != "arrangement"]:
            lines.append(f"-- {key}")
            lines.extend(derivation_text(derivation_from_json(d)) for d in sec[key])
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- verify ------------------------------------------------------------------

def _records_text(report: Report, timings: bool) -> str:
    lines = []
    for r in report.records:
        k = "-" if r.k is None else r.k
        t = f"  ({r.wall_time:.3f}s)" if timings else ""
        detail = f"  {r.detail}" if r.detail else ""
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<28} k={k}{detail}{t}")
    lines.append(f"overall: {'pass' if report.passed else 'fail'} ({len(report.records)} records)")
    return "\n".join(lines) + "\n"


def cmd_verify(args: argparse.Namespace) -> int:
    _check_k(args.k_max, args.cap, "--k-max")
    suites = args.suite or ["all"]
    bad = set(suites) - set(SUITES) - {"all"}
    if bad:
        raise ConfigError(f"unknown suite(s): {', '.join(sorted(bad))}")
    report = Report(__version__, config_echo(args), run_suites(suites, args.k_max))
    timings = not args.no_timings
    if args.format == "json":
        _emit(_dump(report.to_dict(timings)), args.out)
    else:
        _emit(_records_text(report, timings), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


# -- certify -----------------------------------------------------------------

def _certify_sections(sections: dict) -> tuple[list[Record], list[dict]]:
    records, certs = [], []
    for fam, sec in sections.items():
        arr = arrangement_from_json(sec["arrangement"])
        basis = [derivation_from_json(d) for d in sec["basis"]]
        t0 = time.perf_counter()
        cert = saito_check(basis, arr)
        ok = cert.passed and (not arr.expected_exponents or cert.degrees == arr.expected_exponents)
        records.append(Record(f"saito_{fam}", arr.k, ok, f"c={cert.quotient_constant} degrees={cert.degrees}",
                              time.perf_counter() - t0))
        certs.append(certificate_to_json(cert, arr))
    return records, certs


def cmd_certify(args: argparse.Namespace) -> int:
    if args.basis:
        try:
            data = json.loads(Path(args.basis).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read basis file: {exc}") from exc
        sections = {fam: data[fam] for fam in ("shi", "cat") if fam in data}
        if not sections:
            raise ConfigError("basis file has no 'shi' or 'cat' section")
    else:
        if args.k is None:
            raise ConfigError("certify needs --k or --basis")
        _check_k(args.k, args.cap, "--k")
        sections = {fam: family_section(fam, args.k) for fam in _families(args.family)}
    records, certs = _certify_sections(sections)
    report = Report(__version__, config_echo(args), records)
    timings = not args.no_timings
    if args.format == "json":
        payload = report.to_dict(timings)
        payload["certificates"] = certs
        payload["bases"] = sections
        _emit(_dump(payload), args.out)
    else:
        lines = [_records_text(report, timings).rstrip("\n")]
        for c in certs:
            lines.append(f"{c['arrangement']}: verdict {c['verdict']}, c = {c['c']}, degrees {tuple(c['degrees'])}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shicat", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"shicat {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", help="write to this path instead of stdout")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest accepted level (default 8)")

    p = sub.add_parser("build", help="construct bases at level k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--family", choices=("shi", "cat", "both"), default="both")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run verification suites for k = 0..k_max")
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--suite", nargs="+", choices=SUITES + ("all",))
    p.add_argument("--no-timings", action="store_true", help="omit wall times (byte-stable output)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="emit bases with Saito certificates")
    p.add_argument("--k", type=int)
    p.add_argument("--family", choices=("shi", "cat", "both"), default="both")
    p.add_argument("--basis", help="re-certify a JSON file written by 'build'")
    p.add_argument("--no-timings", action="store_true")
    common(p)
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"shicat: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConstructionError as exc:
        log.error("internal check failed: %s", exc)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
