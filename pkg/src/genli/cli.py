"""Command-line front end.

    genli compute     --a 2 --n-max 10 --routes arith,zeros,xi --zeros-count 10000
    genli compare     --a 2 --n-max 10 --routes arith,zeros,xi --zeros-count 10000
    genli positivity  --a 0.75 --a 2 --n-max 50 --routes xi,zeros --zeros-count 10000
    genli cache build --mangoldt-limit 1e7
    genli cache verify
    genli mellin-check --suite pair --suite laguerre
    genli zeros-verify --zeros-file zeros.txt
    genli zeros-generate --zeros-count 10000 --out zeros.txt

Settings come from an INI file (``--config``, section ``[genli]``) and are
overridden by flags. Exit codes: 0 ok, 2 a route or check failed, 3 missing
input, 4 bad configuration, 5 i/o error, 6 corrupted input.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import itertools
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from genli.arithmetic import DEFAULT_EPS0, k_arith
from genli.errors import CacheCorruptionError, DomainError, GenliError, ZeroTableError
from genli.mangoldt import (
    LimitSchedule,
    build_mangoldt_table,
    load_table,
    save_table,
    verify_cache,
)
from genli.records import LiCoefficientRecord
from genli.specfun import BINOMIAL_MAX_N
from genli.xiroute import k_xi, ln_xi_taylor
from genli.zeros import (
    cached_zero_table,
    default_cache_dir,
    generate_zero_table,
    k_zero_sum,
    load_zero_table,
    save_zero_table,
    verify_zero_table,
)

log = logging.getLogger("genli")

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_MISSING = 3
EXIT_CONFIG = 4
EXIT_IO = 5
EXIT_CORRUPT = 6

ROUTES = ("zeros", "arith", "xi")
CSV_HEADER = ("n", "a_re", "a_im", "route", "value_re", "value_im", "uncertainty", "params_digest")
CONFIG_SECTION = "genli"
DEFAULT_LIMIT = 10**7


class CliExit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class RunConfig:
    n_min: int = 1
    n_max: int = 10
    a_values: tuple[complex, ...] = (2.0 + 0j,)
    routes: tuple[str, ...] = ("xi",)
    mangoldt_limit: int = DEFAULT_LIMIT
    zeros_path: Path | None = None
    zeros_count: int | None = None
    output: str = "csv"
    out: Path | None = None
    cache_dir: Path = field(default_factory=default_cache_dir)
    threads: int = 1
    eps0: float = DEFAULT_EPS0
    schedule_count: int | None = None
    schedule_ratio: float | None = None
    window: int | None = None
    smoothing_order: int | None = None
    pole_shift: int | None = None
    tolerance: float | None = None
    rtol: float | None = None

    def __post_init__(self):
        if not 1 <= self.n_min <= self.n_max <= BINOMIAL_MAX_N:
            raise CliExit(EXIT_CONFIG, f"need 1 <= n_min <= n_max <= {BINOMIAL_MAX_N}, got {self.n_min}..{self.n_max}")
        if not self.a_values:
            raise CliExit(EXIT_CONFIG, "no values of a given")
        if not self.routes:
            raise CliExit(EXIT_CONFIG, "no routes given")
        unknown = [r for r in self.routes if r not in ROUTES]
        if unknown:
            raise CliExit(EXIT_CONFIG, f"unknown route(s) {', '.join(unknown)}; choose from {', '.join(ROUTES)}")
        if self.output not in ("csv", "json"):
            raise CliExit(EXIT_CONFIG, f"format must be csv or json, got {self.output!r}")
        if self.mangoldt_limit < 2:
            raise CliExit(EXIT_CONFIG, "mangoldt limit must be >= 2")
        if self.threads < 1:
            raise CliExit(EXIT_CONFIG, "threads must be >= 1")
        if self.zeros_count is not None and self.zeros_count < 1:
            raise CliExit(EXIT_CONFIG, "zeros count must be >= 1")

    @property
    def n_values(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def schedule(self) -> LimitSchedule | None:
        """An explicit schedule when any schedule knob was set, else None (route defaults)."""
        knobs = (self.schedule_count, self.schedule_ratio, self.window, self.smoothing_order, self.pole_shift)
        if all(k is None for k in knobs):
            return None
        try:
            return LimitSchedule.ending_at(
                self.mangoldt_limit,
                count=self.schedule_count or 16,
                ratio=self.schedule_ratio or 2.0**0.25,
                window=self.window or 8,
                smoothing_order=2 if self.smoothing_order is None else self.smoothing_order,
                pole_shift=self.pole_shift or 0,
            )
        except DomainError as exc:
            raise CliExit(EXIT_CONFIG, f"bad schedule: {exc}") from None


def parse_complex(text: str) -> complex:
    """'re' or 're,im'."""
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) not in (1, 2) or not all(parts):
        raise ValueError(f"expected 're' or 're,im', got {text!r}")
    values = [float(p) for p in parts]
    if not all(math.isfinite(v) for v in values):
        raise ValueError(f"non-finite value in {text!r}")
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def parse_count(text: str) -> int:
    """Integer that may be written as 1e7."""
    value = float(text)
    if not math.isfinite(value) or value != int(value):
        raise ValueError(f"expected an integer, got {text!r}")
    return int(value)


def _split_list(text: str, seps: str) -> list[str]:
    out = [str(text)]
    for sep in seps:
        out = [piece for chunk in out for piece in chunk.split(sep)]
    return [p.strip() for p in out if p.strip()]


_CONVERTERS = {
    "n_min": int,
    "n_max": int,
    "mangoldt_limit": parse_count,
    "zeros_count": parse_count,
    "zeros_path": Path,
    "out": Path,
    "cache_dir": Path,
    "output": str,
    "threads": int,
    "eps0": float,
    "schedule_count": int,
    "schedule_ratio": float,
    "window": int,
    "smoothing_order": int,
    "pole_shift": int,
    "tolerance": float,
    "rtol": float,
}
_ALIASES = {"zeros_file": "zeros_path", "format": "output", "a": "a_values", "n": "n_range"}


def read_config_file(path: str | os.PathLike) -> dict:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except FileNotFoundError:
        raise CliExit(EXIT_MISSING, f"config file {path} not found") from None
    except OSError as exc:
        raise CliExit(EXIT_IO, f"cannot read config {path}: {exc}") from None
    except configparser.Error as exc:
        raise CliExit(EXIT_CONFIG, f"cannot parse config {path}: {exc}") from None
    if not parser.has_section(CONFIG_SECTION):
        raise CliExit(EXIT_CONFIG, f"config {path} has no [{CONFIG_SECTION}] section")
    raw = {}
    for key, value in parser.items(CONFIG_SECTION):
        key = key.replace("-", "_")
        raw[_ALIASES.get(key, key)] = value
    return raw


def _convert(raw: dict) -> dict:
    out = {}
    for key, value in raw.items():
        try:
            if key == "a_values":
                items = value if isinstance(value, list) else _split_list(value, ";\n")
                out[key] = tuple(parse_complex(v) for v in items)
            elif key == "routes":
                items = value if isinstance(value, list) else _split_list(value, ",;\n ")
                out[key] = tuple(dict.fromkeys(r.strip().lower() for r in items if r.strip()))
            elif key == "n_range":
                lo, _, hi = str(value).partition("..")
                out["n_min"], out["n_max"] = int(lo), int(hi or lo)
            elif key in _CONVERTERS:
                out[key] = _CONVERTERS[key](value)
            else:
                raise CliExit(EXIT_CONFIG, f"unknown setting {key!r}")
        except (TypeError, ValueError) as exc:
            raise CliExit(EXIT_CONFIG, f"bad value for {key}: {exc}") from None
    return out


def build_config(args: argparse.Namespace) -> RunConfig:
    raw = read_config_file(args.config) if getattr(args, "config", None) else {}
    for key in ("n_min", "n_max", "mangoldt_limit", "zeros_count", "zeros_path", "out", "cache_dir", "output",
                "threads", "eps0", "tolerance", "rtol", "window", "smoothing_order", "pole_shift", "schedule_count",
                "schedule_ratio"):
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    if getattr(args, "a", None):
        raw["a_values"] = list(args.a)
    if getattr(args, "routes", None) is not None:
        raw["routes"] = args.routes
    values = _convert(raw)
    return RunConfig(**values)


# ---------------------------------------------------------------------------
# inputs


def _fmt(x: float) -> str:
    return repr(float(x))


def mangoldt_cache_path(cache_dir: Path, limit: int) -> Path:
    return Path(cache_dir) / f"mangoldt_{limit}.bin"


def obtain_mangoldt(config: RunConfig):
    """Load the cached table for the configured limit, or sieve and cache it."""
    path = mangoldt_cache_path(config.cache_dir, config.mangoldt_limit)
    if path.exists():
        try:
            return load_table(path)
        except CacheCorruptionError as exc:
            raise CliExit(EXIT_CORRUPT, f"{exc}; run 'genli cache purge' or rebuild") from None
        except OSError as exc:
            raise CliExit(EXIT_IO, f"cannot read {path}: {exc}") from None
    log.info("sieving Lambda(m) up to %d", config.mangoldt_limit)
    table = build_mangoldt_table(config.mangoldt_limit, workers=config.threads)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        save_table(table, path)
    except OSError as exc:
        log.warning("could not cache the sieve at %s: %s", path, exc)
    return table


def obtain_zeros(config: RunConfig):
    if config.zeros_path is not None:
        try:
            return load_zero_table(config.zeros_path)
        except FileNotFoundError:
            raise CliExit(EXIT_MISSING, f"zeros file {config.zeros_path} not found") from None
        except ZeroTableError as exc:
            raise CliExit(EXIT_CORRUPT, str(exc)) from None
        except (OSError, UnicodeDecodeError) as exc:
            raise CliExit(EXIT_IO, f"cannot read {config.zeros_path}: {exc}") from None
    if config.zeros_count is not None:
        try:
            return cached_zero_table(config.zeros_count, config.cache_dir)
        except ZeroTableError as exc:
            raise CliExit(EXIT_CORRUPT, str(exc)) from None
        except OSError as exc:
            raise CliExit(EXIT_IO, f"zero cache in {config.cache_dir}: {exc}") from None
    raise CliExit(EXIT_MISSING, "the zeros route needs --zeros-file or --zeros-count")


class RouteRunner:
    """Computes records per route, loading each input once."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.schedule = config.schedule()
        self._table = None
        self._zeros = None
        self._series = {}
        if "zeros" in config.routes:
            self._zeros = obtain_zeros(config)
        if "arith" in config.routes:
            self._table = obtain_mangoldt(config)

    def compute(self, route: str, n: int, a: complex) -> LiCoefficientRecord:
        if route == "zeros":
            return k_zero_sum(n, a, self._zeros)
        if route == "arith":
            return k_arith(n, a, self._table, self.schedule, self.config.threads, self.config.eps0)
        if a not in self._series:
            self._series[a] = ln_xi_taylor(1.0 - a, count=self.config.n_max)
        return k_xi(n, a, self._series[a])

    def try_compute(self, route: str, n: int, a: complex) -> LiCoefficientRecord | None:
        try:
            return self.compute(route, n, a)
        except (GenliError, ArithmeticError, ValueError) as exc:
            log.error("route %s failed at n=%d, a=%s: %s", route, n, _a_text(a), exc)
            return None


def _a_text(a: complex) -> str:
    return f"{a.real!r},{a.imag!r}" if a.imag else repr(a.real)


# ---------------------------------------------------------------------------
# output


def _write_report(config: RunConfig, text: str) -> None:
    if config.out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(config.out)
    tmp = path.with_name(path.name + ".tmp")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        tmp.replace(path)
    except OSError as exc:
        raise CliExit(EXIT_IO, f"cannot write {path}: {exc}") from None


def _render(config: RunConfig, header, rows: list[list]) -> str:
    if config.output == "json":
        return json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else (_fmt(v) if isinstance(v, float) else v) for v in row])
    return buf.getvalue()


def record_row(rec: LiCoefficientRecord) -> list:
    return [rec.n, rec.a.real, rec.a.imag, rec.route.value, rec.value.real, rec.value.imag, rec.uncertainty,
            rec.params_digest]


def records_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow([_fmt(v) if isinstance(v, float) else v for v in record_row(rec)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def cmd_compute(config: RunConfig) -> int:
    runner = RouteRunner(config)
    rows, failed = [], 0
    for a, n, route in itertools.product(config.a_values, config.n_values, config.routes):
        rec = runner.try_compute(route, n, a)
        if rec is None:
            failed += 1
            continue
        rows.append(record_row(rec))
    _write_report(config, _render(config, CSV_HEADER, rows))
    return EXIT_FAILED if failed else EXIT_OK


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    a: complex
    records: dict  # route -> LiCoefficientRecord or None
    max_discrepancy: float
    combined_uncertainty: float
    passed: bool


def compare_records(n, a, records: dict, tolerance=None, rtol=None) -> ComparisonRow:
    got = [r for r in records.values() if r is not None]
    if len(got) < len(records):
        return ComparisonRow(n, a, records, math.nan, math.nan, False)
    disc = max(abs(x.value - y.value) for x, y in itertools.combinations(got, 2))
    combined = math.fsum(r.uncertainty for r in got)
    ok = disc <= combined
    if tolerance is not None:
        ok = ok and disc <= tolerance
    if rtol is not None:
        ok = ok and disc <= rtol * max(abs(r.value) for r in got)
    return ComparisonRow(n, a, records, disc, combined, ok)


def cmd_compare(config: RunConfig) -> int:
    if len(config.routes) < 2:
        raise CliExit(EXIT_CONFIG, "compare needs at least two routes")
    runner = RouteRunner(config)
    header = ["n", "a_re", "a_im"]
    for route in config.routes:
        header += [f"{route}_re", f"{route}_im", f"{route}_uncertainty"]
    header += ["max_discrepancy", "combined_uncertainty", "pass"]
    rows, all_pass = [], True
    for a, n in itertools.product(config.a_values, config.n_values):
        recs = {route: runner.try_compute(route, n, a) for route in config.routes}
        row = compare_records(n, a, recs, config.tolerance, config.rtol)
        all_pass &= row.passed
        line = [n, a.real, a.imag]
        for route in config.routes:
            r = recs[route]
            line += [r.value.real, r.value.imag, r.uncertainty] if r is not None else [None, None, None]
        line += [row.max_discrepancy, row.combined_uncertainty, "pass" if row.passed else "fail"]
        rows.append(line)
    _write_report(config, _render(config, header, rows))
    return EXIT_OK if all_pass else EXIT_FAILED


POSITIVE_SUMMARY = "consistent with RH at this scale"


def cmd_positivity(config: RunConfig) -> int:
    for a in config.a_values:
        if a.imag != 0.0:
            raise CliExit(EXIT_CONFIG, f"positivity needs real a, got {_a_text(a)}")
        if a.real == 0.5:
            raise CliExit(EXIT_CONFIG, "a = 1/2 is excluded: k_{n,1/2} vanishes identically")
    runner = RouteRunner(config)
    header = ["n", "a", "route", "value", "uncertainty", "positive"]
    rows, negatives, failed = [], [], 0
    for a, n in itertools.product(config.a_values, config.n_values):
        got = [r for r in (runner.try_compute(route, n, a) for route in config.routes) if r is not None]
        if not got:
            failed += 1
            continue
        # best available: the smallest stated uncertainty
        best = min(got, key=lambda r: r.uncertainty)
        positive = best.value.real - best.uncertainty > 0.0
        if not positive:
            negatives.append((n, a.real))
        rows.append([n, a.real, best.route.value, best.value.real, best.uncertainty, "yes" if positive else "no"])
    _write_report(config, _render(config, header, rows))
    if failed:
        summary = f"{failed} point(s) could not be computed"
    elif negatives:
        summary = "not positive at " + ", ".join(f"n={n} a={a!r}" for n, a in negatives[:10])
    else:
        summary = POSITIVE_SUMMARY
    print(summary, file=sys.stderr if config.out is None else sys.stdout)
    return EXIT_OK if not failed and not negatives else EXIT_FAILED


def cmd_cache(action: str, config: RunConfig, explicit_limit: bool) -> int:
    cache = Path(config.cache_dir)
    if action == "build":
        try:
            cache.mkdir(parents=True, exist_ok=True)
            table = build_mangoldt_table(config.mangoldt_limit, workers=config.threads)
            path = save_table(table, mangoldt_cache_path(cache, config.mangoldt_limit))
        except OSError as exc:
            raise CliExit(EXIT_IO, f"cannot write cache in {cache}: {exc}") from None
        print(f"built {path} ({len(table)} prime powers up to {table.limit})")
        return EXIT_OK
    if action == "verify":
        if explicit_limit:
            paths = [mangoldt_cache_path(cache, config.mangoldt_limit)]
            if not paths[0].exists():
                raise CliExit(EXIT_MISSING, f"no cache file {paths[0]}")
        else:
            paths = sorted(cache.glob("mangoldt_*.bin")) if cache.is_dir() else []
            if not paths:
                raise CliExit(EXIT_MISSING, f"no Mangoldt cache files in {cache}")
        for path in paths:
            try:
                table = verify_cache(path)
            except CacheCorruptionError as exc:
                raise CliExit(EXIT_CORRUPT, str(exc)) from None
            except OSError as exc:
                raise CliExit(EXIT_IO, f"cannot read {path}: {exc}") from None
            print(f"ok {path} ({len(table)} entries, limit {table.limit})")
        return EXIT_OK
    removed = 0
    if cache.is_dir():
        for path in sorted(itertools.chain(cache.glob("mangoldt_*.bin*"), cache.glob("zeros_*.txt*"))):
            try:
                path.unlink()
            except OSError as exc:
                raise CliExit(EXIT_IO, f"cannot remove {path}: {exc}") from None
            removed += 1
    print(f"removed {removed} file(s) from {cache}")
    return EXIT_OK


# mellin-check suites

MELLIN_GRID = [(n, a, s) for n in range(1, 7) for a in (1.2, 2.0) for s in (2.0, 3.0, 1 + 2j)]
PAIR_TOL = 1e-8
LAGUERRE_TOL = 1e-12
WEIL_GRID = [(n, a) for n in (1, 2, 3) for a in (2.0, 3.0)]
WEIL_TOL = 1e-4
DECAY_MIN = 0.2


def _suite_pair(config):
    from genli.mellin import TestFunctionSpec, forward_mellin

    for n, a, s in MELLIN_GRID:
        numeric, closed = forward_mellin(TestFunctionSpec(n, a), s)
        err = abs(numeric - closed)
        yield f"n={n} a={a!r} s={complex(s)!r}", err, PAIR_TOL, err <= PAIR_TOL


def _suite_laguerre(config):
    # sum forms in exact rationals, so the check sees the identity and not the
    # cancellation among the alternating terms
    from genli.mellin import (
        TestFunctionSpec,
        eval_p_laguerre,
        eval_p_tilde_laguerre,
        eval_sum_form_exact,
    )

    rng = np.random.default_rng(20240611)
    for k in range(100):
        n = int(rng.integers(1, 21))
        a = float(rng.uniform(0.55, 3.0))
        spec = TestFunctionSpec(n, a)
        tilde = k % 2 == 1
        x = float(rng.uniform(1.0, 10.0)) if tilde else float(rng.uniform(1e-6, 1.0))
        want = eval_sum_form_exact(spec, x, tilde)
        got = complex(eval_p_tilde_laguerre(spec, x) if tilde else eval_p_laguerre(spec, x)).real
        err = abs(got - want) / max(abs(want), 1e-300)
        yield f"{'P~' if tilde else 'P'} n={n} a={a!r} x={x!r}", err, LAGUERRE_TOL, err <= LAGUERRE_TOL


def _suite_breakdown(config):
    from genli.mellin import TestFunctionSpec, weil_breakdown

    table, zeros = obtain_mangoldt(config), obtain_zeros(config)
    for n, a in WEIL_GRID:
        wb = weil_breakdown(TestFunctionSpec(n, a), table, zeros, config.schedule(), workers=config.threads)
        bound = WEIL_TOL + wb.zero_side_uncertainty + wb.total_uncertainty
        yield f"n={n} a={a!r}", wb.discrepancy, bound, wb.discrepancy <= bound


def _suite_truncation(config):
    from genli.mellin import TestFunctionSpec, truncation_study

    zeros = obtain_zeros(config)
    eps = 10.0 ** -np.linspace(2.0, 6.0, 41)
    report = truncation_study(TestFunctionSpec(1, 0.75), [2.0], eps, zeros)
    yield "n=1 a=0.75 decay exponent", report.decay_exponent, DECAY_MIN, report.decay_exponent >= DECAY_MIN


MELLIN_SUITES = {
    "pair": _suite_pair,
    "laguerre": _suite_laguerre,
    "breakdown": _suite_breakdown,
    "truncation": _suite_truncation,
}


def cmd_mellin_check(config: RunConfig, suites) -> int:
    header = ["suite", "case", "value", "threshold", "pass"]
    rows, all_pass = [], True
    for name in suites:
        try:
            for case, value, threshold, ok in MELLIN_SUITES[name](config):
                rows.append([name, case, float(value), float(threshold), "pass" if ok else "fail"])
                all_pass &= bool(ok)
        except (GenliError, ArithmeticError) as exc:
            log.error("suite %s failed: %s", name, exc)
            rows.append([name, "error", None, None, "fail"])
            all_pass = False
    _write_report(config, _render(config, header, rows))
    return EXIT_OK if all_pass else EXIT_FAILED


def cmd_zeros_verify(config: RunConfig, tol: float) -> int:
    table = obtain_zeros(config)
    report = verify_zero_table(table, tol)
    print(report.summary())
    for i, g, r in report.flagged[:20]:
        print(f"  #{i + 1} gamma={g!r} |zeta|={r:.3e}")
    for i, g in report.missing_sign_change[:20]:
        print(f"  #{i + 1} gamma={g!r}: no sign change of Z around it")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_zeros_generate(config: RunConfig) -> int:
    if config.zeros_count is None:
        raise CliExit(EXIT_CONFIG, "zeros-generate needs --zeros-count")
    if config.out is None:
        raise CliExit(EXIT_CONFIG, "zeros-generate needs --out")
    table = generate_zero_table(config.zeros_count)
    try:
        save_zero_table(table, config.out, f"first {len(table)} zeta zero ordinates (Riemann-Siegel scan)")
    except OSError as exc:
        raise CliExit(EXIT_IO, f"cannot write {config.out}: {exc}") from None
    print(f"wrote {len(table)} ordinates up to {table.max_height!r} to {config.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliExit(EXIT_CONFIG, message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="INI file with a [genli] section")
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--a", action="append", help="'re' or 're,im'; repeatable")
    p.add_argument("--routes", help="comma-separated subset of zeros,arith,xi")
    p.add_argument("--mangoldt-limit", type=str)
    p.add_argument("--zeros-file", dest="zeros_path")
    p.add_argument("--zeros-count", type=str)
    p.add_argument("--out")
    p.add_argument("--cache-dir")
    p.add_argument("--format", dest="output", choices=("csv", "json"))
    p.add_argument("--threads", type=int)
    p.add_argument("--eps0", type=float)
    p.add_argument("--schedule-count", type=int, help="checkpoints in the limit schedule")
    p.add_argument("--schedule-ratio", type=float, help="ratio between checkpoints")
    p.add_argument("--window", type=int, help="checkpoints averaged at the end of the schedule")
    p.add_argument("--smoothing-order", type=int, help="smoothing kernel order (0 = sharp cutoff)")
    p.add_argument("--pole-shift", type=int, help="kernel poles removed next to s = 0 (0 = Riesz weight)")
    p.add_argument("-v", "--verbose", action="store_true")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="genli", description="Generalized Li coefficients by three independent routes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in (
        ("compute", "one row per (n, a, route)"),
        ("compare", "cross-route agreement table"),
        ("positivity", "sign of k_{n,a} for real a"),
    ):
        p = sub.add_parser(name, help=text)
        _add_common(p)
        if name == "compare":
            p.add_argument("--tolerance", type=float, help="also require discrepancy <= this absolute value")
            p.add_argument("--rtol", type=float, help="also require discrepancy <= rtol * |value|")
    p = sub.add_parser("cache", help="manage the Mangoldt sieve cache")
    p.add_argument("action", choices=("build", "verify", "purge"))
    _add_common(p)
    p = sub.add_parser("mellin-check", help="Mellin pair, Laguerre, explicit-formula and truncation checks")
    p.add_argument("--suite", action="append", choices=sorted(MELLIN_SUITES))
    _add_common(p)
    p = sub.add_parser("zeros-verify", help="check a zero table against zeta")
    p.add_argument("--tol", type=float, default=1e-9)
    _add_common(p)
    p = sub.add_parser("zeros-generate", help="compute the first zeros and write them to a file")
    _add_common(p)
    return parser


def run(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="genli: %(message)s")
    config = build_config(args)
    if args.command == "compute":
        return cmd_compute(config)
    if args.command == "compare":
        return cmd_compare(config)
    if args.command == "positivity":
        return cmd_positivity(config)
    if args.command == "cache":
        explicit = args.mangoldt_limit is not None or "mangoldt_limit" in (
            read_config_file(args.config) if args.config else {}
        )
        return cmd_cache(args.action, config, explicit)
    if args.command == "mellin-check":
        return cmd_mellin_check(config, args.suite or ["pair", "laguerre"])
    if args.command == "zeros-verify":
        return cmd_zeros_verify(config, args.tol)
    return cmd_zeros_generate(config)


def main(argv=None) -> int:
    try:
        return run(argv)
    except CliExit as exc:
        print(f"genli: {exc}", file=sys.stderr)
        return exc.code
    except CacheCorruptionError as exc:
        print(f"genli: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except OSError as exc:
        print(f"genli: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
