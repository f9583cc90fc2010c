"""Command-line entry point.

    oddrep compute-f --n 4
    oddrep verify --suite all --threads 4
    oddrep chartab --group S4
    oddrep chartab --gens "(0 1 2)" --json

Exit codes: 0 all checks pass, 1 verification failure, 2 usage or parse
error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import build_catalog, compute_f
from .config import ConfigError, ManifestError, check_manifest, load_config
from .groupcore import PermGroup, ResourceError, parse_perm_list, set_element_cap

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--catalog-dir", default=None)
    p.add_argument("--precision-bits", type=int, default=None)
    p.add_argument("--config", default=None, help="JSON config file (default: $ODDREP_CONFIG)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oddrep", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("compute-f", help="minimum k(GV) over odd-order G <= GL(n,2)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--allow-partial", action="store_true", help="exit 0 even if the enumeration is incomplete")
    _common(p)
    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=["theorem1", "theorem3", "mckay", "lemmas", "orbits", "replay", "all"])
    _common(p)
    p = sub.add_parser("chartab", help="print an exact character table")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--group", help="name of a corpus group")
    g.add_argument("--gens", help='generators in cycle notation, e.g. "(0 1 2), (0 1)"')
    _common(p)
    return ap


def _config(args):
    return load_config(args.config, {
        "threads": args.threads,
        "catalog_dir": args.catalog_dir,
        "precision_bits": args.precision_bits,
    })


def cmd_compute_f(args, cfg, out) -> int:
    from .verify import sync_catalog

    cat = build_catalog(args.n, threads=cfg.threads)
    ok, msg = sync_catalog(cat, cfg.catalog_dir)
    fv = compute_f(args.n, catalog=cat)
    if args.json:
        out.write(json.dumps({**fv.to_json(), "catalog": msg, "catalog_ok": ok, "classes": len(cat.entries)}, sort_keys=True) + "\n")
    else:
        out.write(f"f({fv.n}) = {fv.value}\n")
        out.write(f"witness {fv.witness} (|G| = {fv.witness_order})\n")
        out.write(f"complete {str(fv.complete).lower()}, {len(cat.entries)} classes, {msg}\n")
    if not ok:
        return EXIT_FAIL
    if not fv.complete and not args.allow_partial:
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args, cfg, out) -> int:
    from .verify import report_json, report_text, run_suite

    check_manifest(cfg)
    checks = run_suite(args.suite, cfg)
    out.write(report_json(checks) if args.json else report_text(checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def cmd_chartab(args, cfg, out) -> int:
    from .chartab import character_table
    from .mckay import named_group

    if args.group:
        check_manifest(cfg)
        G = named_group(args.group, cfg.corpus_path)
    else:
        gens = parse_perm_list(args.gens)
        G = PermGroup(gens, max(g.degree for g in gens))
    t = character_table(G)
    out.write(t.dumps_json() + "\n" if args.json else t.dump())
    return EXIT_OK


COMMANDS = {"compute-f": cmd_compute_f, "verify": cmd_verify, "chartab": cmd_chartab}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        set_element_cap(cfg.element_cap)
        return COMMANDS[args.command](args, cfg, out)
    except ResourceError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ConfigError, ManifestError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
