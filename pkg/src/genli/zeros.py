"""Zero tables and k_{n,a} as a sum over nontrivial zeros.

Zeros are taken on the critical line, rho = 1/2 + i*gamma, and every
ordinate is paired with its conjugate. The part of the sum above the
table's last ordinate T is replaced by an integral of the paired term
against the smooth zero density theta'(t)/pi, plus a boundary term that
accounts for the actual zero count at T.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from genli import zerofinder
from genli.errors import DomainError, ZeroTableError
from genli.numerics import compensated_sum, exp_sinh, expm1_complex, log1p_complex
from genli.records import LiCoefficientRecord, Route, params_digest
from genli.specfun import riemann_zeta

log = logging.getLogger(__name__)

GUARD_DISTANCE = 1e-6
MIN_TAIL_HEIGHT = 50.0
BUNDLED_FILE = "zeros100.txt"
ZERO_FORMATS = ("plain_ordinates",)


@dataclass(frozen=True)
class ZeroTable:
    ordinates: np.ndarray
    source: str = "unknown"
    beta_assumed: bool = True

    def __post_init__(self):
        arr = np.array(self.ordinates, dtype=float)
        if arr.ndim != 1:
            raise ZeroTableError("ordinates must be one-dimensional")
        if arr.size and not np.all(arr > 0):
            raise ZeroTableError("ordinates must be positive")
        if np.any(np.diff(arr) <= 0):
            raise ZeroTableError("ordinates must be strictly ascending")
        arr.setflags(write=False)
        object.__setattr__(self, "ordinates", arr)

    def __len__(self) -> int:
        return self.ordinates.size

    @property
    def max_height(self) -> float:
        return float(self.ordinates[-1]) if self.ordinates.size else 0.0

    def prefix(self, count: int) -> ZeroTable:
        return ZeroTable(self.ordinates[:count], f"{self.source}[:{count}]", self.beta_assumed)

    def digest(self) -> str:
        return params_digest({"count": len(self), "max_height": self.max_height, "sum": float(np.sum(self.ordinates))})


@dataclass(frozen=True)
class TailModel:
    """Smooth zero density above ``cutoff_height``.

    ``count`` is the number of zeros actually summed below the cutoff; when
    given, the boundary term F(T) (N_smooth(T) - count) is included.
    """

    cutoff_height: float
    count: int | None = None

    @classmethod
    def for_table(cls, table: ZeroTable) -> TailModel:
        return cls(table.max_height, len(table))

    @staticmethod
    def density(t):
        return zerofinder.theta_prime(t) / math.pi


# ---------------------------------------------------------------------------
# input / output


def parse_zero_lines(lines, source: str = "<lines>") -> ZeroTable:
    values = []
    previous = -math.inf
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            value = float(line)
        except ValueError:
            raise ZeroTableError(f"{source}:{lineno}: cannot parse ordinate {line!r}") from None
        if not math.isfinite(value) or value <= 0:
            raise ZeroTableError(f"{source}:{lineno}: ordinate must be a positive finite number, got {line!r}")
        if value <= previous:
            raise ZeroTableError(f"{source}:{lineno}: ordinates out of order ({value!r} after {previous!r})")
        previous = value
        values.append(value)
    return ZeroTable(np.array(values), source)


def load_zero_table(path: str | os.PathLike, format: str = "plain_ordinates") -> ZeroTable:
    """Read a table with one decimal ordinate per line; '#' lines are comments."""
    if format not in ZERO_FORMATS:
        raise DomainError(f"unknown zero table format {format!r}")
    path = Path(path)
    with path.open("r", encoding="ascii") as fh:
        return parse_zero_lines(fh, str(path))


def save_zero_table(table: ZeroTable, path: str | os.PathLike, comment: str | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with tmp.open("w", encoding="ascii") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        for g in table.ordinates:
            fh.write(f"{float(g)!r}\n")
    tmp.replace(path)
    return path


def bundled_zero_table() -> ZeroTable:
    """The first 100 ordinates shipped with the package."""
    ref = resources.files("genli").joinpath("data", BUNDLED_FILE)
    with ref.open("r", encoding="ascii") as fh:
        table = parse_zero_lines(fh, f"genli/data/{BUNDLED_FILE}")
    return ZeroTable(table.ordinates, "bundled:first-100")


def generate_zero_table(count: int) -> ZeroTable:
    return ZeroTable(zerofinder.find_zeros(count), f"riemann-siegel:first-{count}")


def default_cache_dir() -> Path:
    env = os.environ.get("GENLI_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "genli"


def cached_zero_table(count: int, cache_dir: str | os.PathLike | None = None) -> ZeroTable:
    """First ``count`` ordinates, generated once and kept in the cache directory."""
    if count <= 100:
        return bundled_zero_table().prefix(count)
    cache = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    path = cache / f"zeros_{count}.txt"
    if path.exists():
        try:
            table = load_zero_table(path)
        except ZeroTableError as exc:
            log.warning("regenerating unreadable zero cache %s: %s", path, exc)
        else:
            if len(table) == count:
                return ZeroTable(table.ordinates, f"cache:first-{count}")
    table = generate_zero_table(count)
    save_zero_table(table, path, f"first {count} zeta zero ordinates (Riemann-Siegel scan)")
    return table


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    count: int = 0
    tol: float = 0.0
    max_residual: float = 0.0
    residuals: np.ndarray = field(default_factory=lambda: np.empty(0))
    flagged: list[tuple[int, float, float]] = field(default_factory=list)
    missing_sign_change: list[tuple[int, float]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.flagged and not self.missing_sign_change

    def summary(self) -> str:
        status = "ok" if self.ok else "FAILED"
        return (
            f"{status}: {self.count} ordinates, max |zeta(1/2+i*gamma)| = {self.max_residual:.3e} "
            f"(tol {self.tol:g}), {len(self.flagged)} above tol, "
            f"{len(self.missing_sign_change)} without a sign change"
        )


def _z_values(t: np.ndarray, exact_below: float) -> np.ndarray:
    out = np.empty_like(t)
    low = t < exact_below
    out[low] = [zerofinder.hardy_z_exact(float(x)) for x in t[low]]
    if np.any(~low):
        out[~low] = zerofinder.riemann_siegel_z(t[~low])
    return out


def verify_zero_table(table: ZeroTable, tol: float = 1e-9, *, exact_below: float = 5000.0) -> VerificationReport:
    """Residual |zeta(1/2 + i*gamma)| per entry and a sign change of Z around it.

    Below ``exact_below`` everything uses the Euler-Maclaurin zeta; above it
    the Riemann-Siegel formula (Euler-Maclaurin cost grows linearly in t).
    """
    g = table.ordinates
    report = VerificationReport(count=g.size, tol=tol)
    if g.size == 0:
        return report
    low = g < exact_below
    res = np.empty_like(g)
    res[low] = [abs(riemann_zeta(complex(0.5, float(x)))) for x in g[low]]
    if np.any(~low):
        res[~low] = np.abs(zerofinder.riemann_siegel_z(g[~low]))
    report.residuals = res
    report.max_residual = float(res.max())
    report.flagged = [(int(i), float(g[i]), float(res[i])) for i in np.nonzero(~(res <= tol))[0]]

    # midpoints between neighbours; at the two ends, a quarter of the local
    # mean gap so that an unlisted neighbour is not stepped over
    mids = 0.5 * (g[1:] + g[:-1])
    edge = 0.25 * 2.0 * math.pi / np.log(np.maximum(g[[0, -1]], 7.0) / (2.0 * math.pi))
    left = np.concatenate(([g[0] - edge[0]], mids))
    right = np.concatenate((mids, [g[-1] + edge[1]]))
    zl = _z_values(left, exact_below)
    zr = _z_values(right, exact_below)
    no_change = np.nonzero(np.signbit(zl) == np.signbit(zr))[0]
    report.missing_sign_change = [(int(i), float(g[i])) for i in no_change]
    return report


# ---------------------------------------------------------------------------
# sums over zeros


def li_term(n: int, a: complex, rho: np.ndarray) -> np.ndarray:
    """1 - ((rho - a)/(rho + a - 1))^n, accurate when the ratio is near 1."""
    b = 2.0 * a - 1.0
    return -expm1_complex(n * log1p_complex(-b / (rho + a - 1.0)))


def paired_term(n: int, a: complex, t) -> np.ndarray:
    """term(1/2 + it) + term(1/2 - it)."""
    t = np.asarray(t, dtype=float)
    a = complex(a)
    up = li_term(n, a, 0.5 + 1j * t)
    if a.imag == 0.0:
        return 2.0 * up.real + 0j
    return up + li_term(n, a, 0.5 - 1j * t)


def density_tail(paired, T: float, count: int | None = None, *, real: bool = False) -> tuple[complex, float]:
    """Sum of a paired function over the zeros above T, from the smooth density.

    ``paired(t)`` gives F(t) = f(1/2 + it) + f(1/2 - it) on arrays. F is
    integrated against theta'(t)/pi over (T, inf). With ``count`` (zeros
    summed up to and including T) the boundary term F(T) (theta(T)/pi + 1 -
    count) is added; what remains is an integral of F' against the bounded,
    mean-zero S(t), estimated by |F(T)|.
    """
    if not T >= MIN_TAIL_HEIGHT:
        raise DomainError(f"tail correction needs T >= {MIN_TAIL_HEIGHT}, got {T}")

    def integrand(t):
        return paired(t) * TailModel.density(t)

    value, qerr = exp_sinh(integrand, T, rtol=1e-12, atol=1e-300, max_level=12, scale=T)
    f_T = complex(np.asarray(paired(np.array([T])))[0])
    scale = abs(f_T)
    if count is None:
        total, err = value, 2.0 * scale + qerr
    else:
        total, err = value + f_T * (float(zerofinder.smooth_count(T)) - count), scale + qerr
    if real:
        total = complex(total.real, 0.0)
    return total, err


def tail_correction(n: int, a: complex, T: float, count: int | None = None) -> tuple[complex, float]:
    """Contribution of the zeros above height T to k_{n,a}: (value, error estimate)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    a = complex(a)
    return density_tail(lambda t: paired_term(n, a, t), T, count, real=a.imag == 0.0)


def _guard(a: complex, g: np.ndarray) -> None:
    if g.size == 0:
        return
    rho = 0.5 + 1j * g
    for target in (a, 1.0 - a):
        d = min(np.abs(rho - target).min(), np.abs(rho.conjugate() - target).min())
        if d < GUARD_DISTANCE:
            raise DomainError(f"a = {a} lies within {d:.2e} of a zero (or its reflection)")


def zero_sum(n: int, a: complex, table: ZeroTable) -> complex:
    """Paired sum over the table without any tail, ascending ordinates."""
    a = complex(a)
    g = table.ordinates
    _guard(a, g)
    if g.size == 0:
        return 0j
    return compensated_sum(paired_term(n, a, g))


def k_zero_sum(n: int, a: complex, table: ZeroTable, tail: TailModel | None = None) -> LiCoefficientRecord:
    """k_{n,a} from the zero table plus the density tail above its last ordinate."""
    if n < 1:
        raise DomainError("n must be >= 1")
    a = complex(a)
    tail = tail if tail is not None else TailModel.for_table(table)
    body = zero_sum(n, a, table)
    if a.imag == 0.0 and body.imag != 0.0:
        raise AssertionError("paired sum over conjugates must be real for real a")
    T = max(tail.cutoff_height, MIN_TAIL_HEIGHT)
    count = tail.count if tail.cutoff_height >= MIN_TAIL_HEIGHT else None
    tail_value, err = tail_correction(n, a, T, count)
    if tail.cutoff_height < MIN_TAIL_HEIGHT and len(table):
        raise DomainError(f"zero table ends at {tail.cutoff_height}, below the tail model's {MIN_TAIL_HEIGHT}")
    params = {"n": n, "a": a, "zeros": table.digest(), "tail_T": T, "tail_count": count}
    return LiCoefficientRecord(
        n=n,
        a=a,
        route=Route.ZERO_SUM,
        value=body + tail_value,
        uncertainty=err,
        params_digest=params_digest(params),
        notes={"zeros": len(table), "tail": tail_value, "source": table.source},
    )


def zero_sum_of(func, table: ZeroTable) -> complex:
    """Sum of func(rho) + func(conj rho) over the table, for any vectorized func."""
    rho = 0.5 + 1j * table.ordinates
    return compensated_sum(func(rho) + func(rho.conjugate()))


def zero_sum_with_tail(func, table: ZeroTable, *, real: bool = False) -> tuple[complex, float]:
    """Paired sum of ``func`` over the table plus its density tail: (value, error)."""
    def paired(t):
        rho = 0.5 + 1j * np.asarray(t, dtype=float)
        return func(rho) + func(rho.conjugate())

    body = zero_sum_of(func, table) if len(table) else 0j
    if len(table) and table.max_height >= MIN_TAIL_HEIGHT:
        tail, err = density_tail(paired, table.max_height, len(table), real=real)
    else:
        tail, err = density_tail(paired, MIN_TAIL_HEIGHT, None, real=real)
    value = body + tail
    if real:
        value = complex(value.real, 0.0)
    return value, err
