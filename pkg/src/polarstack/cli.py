"""Command-line Monte Carlo harness.

Example::

    polarstack --n 1024 --rate 0.5 --decoder elscs --list-size 4 \\
        --search-width 16 --delta 12 --stack-depth 1000 \\
        --gamma-db 2.0 --blocks 10000 --out results.csv

A flat key=value config file may supply any flag (lists comma-separated);
explicit flags override the file.
"""

import argparse
import math
import sys

from .construct import design_code, export_reliability_csv
from .harness import CellSpec, RunConfig, emit_csv, run_trials

_DEFAULTS = {
    "n": 1024,
    "rate": 0.5,
    "crc": "on",
    "decoder": ["elscs"],
    "list_size": 1,
    "search_width": 16,
    "delta": "12",
    "stack_depth": 1000,
    "gamma_db": [2.0],
    "blocks": 1000,
    "max_errors": 200,
    "seed": 1,
    "boxplus": "exact",
    "metric": "exact",
    "out": None,
    "reliability_out": None,
}

_LIST_KEYS = {"decoder", "gamma_db"}


def _parse_config_file(path):
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, val = line.partition("=")
            key = key.strip().replace("-", "_")
            val = val.strip()
            if key not in _DEFAULTS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if key in _LIST_KEYS:
                items = [v.strip() for v in val.split(",") if v.strip()]
                values[key] = ([float(v) for v in items]
                               if key == "gamma_db" else items)
            else:
                values[key] = val
    return values


def _parse_delta(text):
    if str(text).lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def build_parser():
    p = argparse.ArgumentParser(
        prog="polarstack",
        description="Monte Carlo BLER / complexity harness for polar "
                    "stack decoders")
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--n", type=int, help="block length (power of two)")
    p.add_argument("--rate", type=float, help="code rate K/N")
    p.add_argument("--crc", choices=["on", "off"],
                   help="CRC-24 aided decoding on/off")
    p.add_argument("--decoder", action="append",
                   choices=["sc", "scl", "scs", "lscs", "elscs"],
                   help="decoder to run (repeatable)")
    p.add_argument("--list-size", type=int, help="list size L")
    p.add_argument("--search-width", type=int, help="search width Q")
    p.add_argument("--delta", help="LTPE threshold (number or 'inf')")
    p.add_argument("--stack-depth", type=int, help="stack capacity D")
    p.add_argument("--gamma-db", action="append", type=float,
                   help="Eb/N0 in dB (repeatable)")
    p.add_argument("--blocks", type=int, help="blocks per cell")
    p.add_argument("--max-errors", type=int,
                   help="stop a cell after this many block errors")
    p.add_argument("--seed", type=int, help="base RNG seed")
    p.add_argument("--boxplus", choices=["exact", "minsum"])
    p.add_argument("--metric", choices=["exact", "approx"])
    p.add_argument("--out", help="results CSV path")
    p.add_argument("--reliability-out",
                   help="write the construction reliability table as CSV")
    return p


def _resolve(args):
    from_file = _parse_config_file(args.config) if args.config else {}
    merged = {}
    for key, default in _DEFAULTS.items():
        cli_val = getattr(args, key)
        if cli_val is not None:
            merged[key] = cli_val
        elif key in from_file:
            merged[key] = from_file[key]
        else:
            merged[key] = default
    # normalize string-typed file values
    for key in ("n", "list_size", "search_width", "stack_depth", "blocks",
                "max_errors", "seed"):
        merged[key] = int(merged[key])
    merged["rate"] = float(merged["rate"])
    merged["delta"] = _parse_delta(merged["delta"])
    merged["gamma_db"] = [float(g) for g in merged["gamma_db"]]
    return merged


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = _resolve(args)

    cells = tuple(
        CellSpec(decoder=d, list_size=cfg["list_size"],
                 search_width=cfg["search_width"], delta=cfg["delta"],
                 stack_depth=cfg["stack_depth"])
        for d in cfg["decoder"])
    run = RunConfig(
        cells=cells,
        block_len=cfg["n"],
        rate=cfg["rate"],
        crc=cfg["crc"] == "on",
        gammas=tuple(cfg["gamma_db"]),
        blocks=cfg["blocks"],
        max_errors=cfg["max_errors"],
        seed=cfg["seed"],
        boxplus=cfg["boxplus"],
        metric=cfg["metric"],
    )

    if cfg["reliability_out"]:
        K = round(cfg["n"] * cfg["rate"])
        _, table = design_code(cfg["n"], K, cfg["gamma_db"][0])
        export_reliability_csv(table, cfg["reliability_out"])
        print(f"wrote reliability table to {cfg['reliability_out']}")

    results = run_trials(run, verbose=True)
    for r in results:
        print(f"{r.decoder} L={r.list_size} Q={r.search_width} "
              f"delta={r.delta:g} gamma={r.gamma_db:g}: "
              f"BLER={r.bler:.3e} mean_clk={r.mean_clk:.1f} "
              f"mean_ops={r.mean_ops:.1f} eta_t={r.eta_t:.3f} "
              f"eta_c={r.eta_c:.3f} max_depth={r.max_depth}")
    if cfg["out"]:
        emit_csv(results, cfg["out"])
        print(f"wrote {len(results)} rows to {cfg['out']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
