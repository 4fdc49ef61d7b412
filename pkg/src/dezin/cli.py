"""Batch experiment driver.

Subcommands: verify (identity suites), spectrum (lowest eigenvalues of a
truncation), butterfly (flux sweep), semibound (lower-bound estimate),
assemble (matrix dump).  Each run is configured by a single JSON document
and is fully deterministic for a fixed config and seed: the PRNG is
numpy's default (PCG64) seeded once per run.

Exit codes: 0 all checks passed, 1 a mathematical check failed,
2 configuration or usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import os
import sys
from fractions import Fraction

from .magnetic import preset_electric, preset_magnetic
from .spectral import assemble, dump_matrix, lowest_eigenvalues, semibound_estimate
from .verify import all_passed, run_all

log = logging.getLogger("dezin")

MAX_FLUX_DENOMINATOR = 12
MAX_BUTTERFLY_BOX = 10


class ConfigError(Exception):
    """Invalid configuration; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"config field '{field}': {message}")
        self.field = field


def _setup_logging() -> None:
    level = os.environ.get("DEZIN_LOG", "off").lower()
    if level == "off":
        logging.disable(logging.CRITICAL)
    elif level in ("info", "debug"):
        logging.basicConfig(level=getattr(logging, level.upper()),
                            format="%(levelname)s %(name)s: %(message)s")
    else:
        logging.basicConfig(level=logging.WARNING)


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError("config", "top level must be a JSON object")
    return data


def _get_int(cfg: dict, field: str, default: int | None = None,
             minimum: int | None = None, maximum: int | None = None) -> int:
    val = cfg.get(field, default)
    if val is None:
        raise ConfigError(field, "required")
    if not isinstance(val, int) or isinstance(val, bool):
        raise ConfigError(field, f"must be an integer, got {val!r}")
    if minimum is not None and val < minimum:
        raise ConfigError(field, f"must be >= {minimum}, got {val}")
    if maximum is not None and val > maximum:
        raise ConfigError(field, f"must be <= {maximum}, got {val}")
    return val


def _get_number(cfg: dict, field: str, default=None, positive=False):
    val = cfg.get(field, default)
    if val is None:
        raise ConfigError(field, "required")
    if not isinstance(val, (int, float)) or isinstance(val, bool):
        raise ConfigError(field, f"must be a number, got {val!r}")
    if positive and val <= 0:
        raise ConfigError(field, f"must be > 0, got {val}")
    return float(val)


def _build_gauge(cfg: dict, field: str = "gauge"):
    spec = cfg.get(field, {"preset": "zero"})
    if not isinstance(spec, dict) or "preset" not in spec:
        raise ConfigError(field, "must be an object with a 'preset' key")
    params = {key: val for key, val in spec.items() if key != "preset"}
    try:
        return preset_magnetic(spec["preset"], **params)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{field}.preset", str(exc))


def _build_potential(cfg: dict, field: str = "potential"):
    spec = cfg.get(field, {"preset": "zero"})
    if not isinstance(spec, dict) or "preset" not in spec:
        raise ConfigError(field, "must be an object with a 'preset' key")
    params = {key: val for key, val in spec.items() if key != "preset"}
    try:
        return preset_electric(spec["preset"], **params)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{field}.preset", str(exc))


def _format_value(val) -> str:
    if isinstance(val, float):
        return repr(val)
    return str(val)


def _emit(command: str, header: list[str], rows: list[list], fmt: str,
          out_path: str | None, extra: dict | None = None) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(_format_value(v) for v in row) + "\n")
        text = buf.getvalue()
    else:
        doc = {
            "command": command,
            "columns": header,
            "rows": [dict(zip(header, row)) for row in rows],
        }
        if extra:
            doc.update(extra)
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(cfg: dict, fmt: str, out_path: str | None) -> int:
    seed = _get_int(cfg, "seed", default=42, minimum=0)
    trials = _get_int(cfg, "trials", default=200, minimum=1)
    tolerance = _get_number(cfg, "tolerance", default=1e-12, positive=True)
    log.info("verify: seed=%d trials=%d tolerance=%g", seed, trials, tolerance)
    rows = run_all(seed=seed, trials=trials, tolerance=tolerance)
    table = [[r.name, r.residual, r.tolerance, r.status, r.note] for r in rows]
    _emit("verify", ["name", "residual", "tolerance", "status", "note"],
          table, fmt, out_path)
    return 0 if all_passed(rows) else 1


def cmd_spectrum(cfg: dict, fmt: str, out_path: str | None) -> int:
    N = _get_int(cfg, "N", default=1, minimum=0)
    count = _get_int(cfg, "count", default=3, minimum=1)
    dim = (2 * N + 1) ** 2
    if count > dim:
        raise ConfigError("count", f"exceeds matrix dimension {dim}")
    gauge = _build_gauge(cfg)
    potential = _build_potential(cfg)
    op = assemble(gauge, potential, N)
    vals = lowest_eigenvalues(op, count)
    table = [[N, idx, lam] for idx, lam in enumerate(vals)]
    _emit("spectrum", ["N", "index", "lambda"], table, fmt, out_path)
    return 0


def cmd_butterfly(cfg: dict, fmt: str, out_path: str | None) -> int:
    N = _get_int(cfg, "N", default=4, minimum=0, maximum=MAX_BUTTERFLY_BOX)
    count = _get_int(cfg, "count", default=5, minimum=1)
    dim = (2 * N + 1) ** 2
    if count > dim:
        raise ConfigError("count", f"exceeds matrix dimension {dim}")
    fluxes = cfg.get("fluxes")
    if not isinstance(fluxes, list) or not fluxes:
        raise ConfigError("fluxes", "must be a non-empty list of 'p/q' strings")
    parsed = []
    for item in fluxes:
        try:
            frac = Fraction(str(item))
        except (ValueError, ZeroDivisionError):
            raise ConfigError("fluxes", f"cannot parse flux {item!r}")
        if frac.denominator > MAX_FLUX_DENOMINATOR:
            raise ConfigError(
                "fluxes", f"denominator of {item} exceeds {MAX_FLUX_DENOMINATOR}")
        parsed.append(frac)
    potential = _build_potential(cfg)
    import math
    table = []
    for frac in parsed:
        alpha = float(frac)
        gauge = preset_magnetic("landau", alpha=2.0 * math.pi * alpha)
        vals = lowest_eigenvalues(assemble(gauge, potential, N), count)
        for idx, lam in enumerate(vals):
            table.append([alpha, idx, lam])
    note = ("additive-coupling model; not the Peierls/Harper operator, so the "
            "classical butterfly is only a qualitative reference")
    _emit("butterfly", ["alpha", "index", "lambda"], table, fmt, out_path,
          extra={"note": note})
    return 0


def cmd_semibound(cfg: dict, fmt: str, out_path: str | None) -> int:
    n_max = _get_int(cfg, "N_max", default=4, minimum=1)
    gauge = _build_gauge(cfg)
    potential = _build_potential(cfg)
    estimate = semibound_estimate(gauge, potential, n_max)
    floor = potential.floor
    margin = None if floor is None else estimate - floor
    table = [[n_max, estimate,
              "" if floor is None else floor,
              "" if margin is None else margin]]
    _emit("semibound", ["N_max", "estimate", "floor", "margin"],
          table, fmt, out_path)
    return 0


def cmd_assemble(cfg: dict, fmt: str, out_path: str | None) -> int:
    N = _get_int(cfg, "N", default=2, minimum=0)
    gauge = _build_gauge(cfg)
    potential = _build_potential(cfg)
    op = assemble(gauge, potential, N)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            dump_matrix(op, fh)
    else:
        dump_matrix(op, sys.stdout)
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "butterfly": cmd_butterfly,
    "semibound": cmd_semibound,
    "assemble": cmd_assemble,
}


def main(argv=None) -> int:
    _setup_logging()
    parser = argparse.ArgumentParser(
        prog="dezin",
        description="Discrete magnetic Schrodinger operator experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", default=None, help="JSON config file")
        cmd.add_argument("--out", default=None, help="output path (default stdout)")
        cmd.add_argument("--format", default="csv", choices=["csv", "json"])
        cmd.add_argument("--seed", type=int, default=None,
                         help="override the config seed")
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("seed", "must be nonnegative")
            cfg["seed"] = args.seed
        return COMMANDS[args.command](cfg, args.format, args.out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
