"""Von Mangoldt sieve, weighted prime-power sums and their regularized limits."""

from __future__ import annotations

import cmath
import itertools
import math
import struct
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from pathlib import Path

import numpy as np

from genli.errors import (
    CacheCorruptionError,
    CapacityError,
    DomainError,
    NonConvergenceError,
)
from genli.numerics import compensated_sum

MAX_LIMIT = 2**40
SEGMENT = 1 << 22
CHUNK = 1 << 20
# a window spread may wobble upward by this factor before the limit is declared divergent
SPREAD_GROWTH_TOLERANCE = 4.0
# first-order rounding error per term of a regularized sequence: one unit roundoff
ROUNDOFF = 2.0**-53

CACHE_MAGIC = b"LIAM"
CACHE_VERSION = 1
_HEADER = struct.Struct("<4sIQQ")
_ENTRY = np.dtype([("m", "<u8"), ("log_p", "<f8")])


@dataclass(frozen=True, eq=False)
class MangoldtTable:
    """Sparse support of Lambda(m) for 2 <= m <= limit.

    ``m`` holds the prime powers in increasing order and ``log_p`` the log
    of the underlying prime, i.e. Lambda(m).
    """

    limit: int
    m: np.ndarray
    log_p: np.ndarray
    _prefix_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        self.m.setflags(write=False)
        self.log_p.setflags(write=False)

    def __len__(self) -> int:
        return len(self.m)

    @property
    def entries(self) -> list[tuple[int, float]]:
        return list(zip(self.m.tolist(), self.log_p.tolist()))

    def mangoldt(self, m: int) -> float:
        """Lambda(m), zero off the table support."""
        if m > self.limit:
            raise CapacityError(f"m = {m} exceeds table limit {self.limit}")
        i = np.searchsorted(self.m, m)
        if i < len(self.m) and self.m[i] == m:
            return float(self.log_p[i])
        return 0.0

    def count_upto(self, cutoff: int) -> int:
        return int(np.searchsorted(self.m, cutoff, side="right"))

    def chebyshev_psi(self, x: float) -> float:
        """Chebyshev's psi(x) = sum_{m <= x} Lambda(m)."""
        return math.fsum(self.log_p[: self.count_upto(math.floor(x))].tolist())


def _small_primes(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primes in [lo, hi)."""
    flags = np.ones(hi - lo, dtype=bool)
    for p in base.tolist():
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        flags[start - lo :: p] = False
    if lo <= 1:
        flags[: 2 - lo] = False
    return np.flatnonzero(flags).astype(np.int64) + lo


def build_mangoldt_table(limit: int, workers: int = 1) -> MangoldtTable:
    """Segmented sieve of Lambda up to ``limit``.

    Segments have a fixed size, so the output does not depend on ``workers``.
    """
    limit = int(limit)
    if limit < 2:
        raise DomainError("Mangoldt table needs limit >= 2")
    if limit > MAX_LIMIT:
        raise CapacityError(f"limit {limit} exceeds the supported cap 2**40")
    base = _small_primes(math.isqrt(limit))
    bounds = [(lo, min(lo + SEGMENT, limit + 1)) for lo in range(0, limit + 1, SEGMENT)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _sieve_segment(b[0], b[1], base), bounds))
    else:
        parts = [_sieve_segment(lo, hi, base) for lo, hi in bounds]
    primes = np.concatenate(parts)

    powers, bases = [], []
    for p in base.tolist():
        q = p * p
        while q <= limit:
            powers.append(q)
            bases.append(p)
            q *= p
    m = np.concatenate([primes, np.asarray(powers, dtype=np.int64)])
    b = np.concatenate([primes, np.asarray(bases, dtype=np.int64)])
    order = np.argsort(m, kind="stable")
    m = m[order]
    log_p = np.log(b[order].astype(np.float64))
    return MangoldtTable(limit=limit, m=m, log_p=log_p)


def mangoldt_bruteforce(m: int) -> float:
    """Lambda(m) by trial factorization (test oracle)."""
    if m < 2:
        return 0.0
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            return math.log(p) if m == 1 else 0.0
        p += 1
    return math.log(m)


# ---------------------------------------------------------------------------
# binary cache


def save_table(table: MangoldtTable, path: str | Path) -> Path:
    path = Path(path)
    body = np.empty(len(table), dtype=_ENTRY)
    body["m"] = table.m
    body["log_p"] = table.log_p
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, table.limit, len(table)))
        fh.write(body.tobytes())
    tmp.replace(path)
    return path


def read_header(path: str | Path) -> tuple[int, int]:
    """Return (limit, count) after checking magic, version and file size."""
    path = Path(path)
    size = path.stat().st_size
    with open(path, "rb") as fh:
        raw = fh.read(_HEADER.size)
    if len(raw) < _HEADER.size:
        raise CacheCorruptionError(f"{path}: truncated header")
    magic, version, limit, count = _HEADER.unpack(raw)
    if magic != CACHE_MAGIC:
        raise CacheCorruptionError(f"{path}: bad magic {magic!r}")
    if version != CACHE_VERSION:
        raise CacheCorruptionError(f"{path}: unsupported format version {version}")
    if size != _HEADER.size + count * _ENTRY.itemsize:
        raise CacheCorruptionError(f"{path}: size {size} does not match {count} entries")
    return limit, count


def load_table(path: str | Path) -> MangoldtTable:
    limit, count = read_header(path)
    body = np.fromfile(path, dtype=_ENTRY, count=count, offset=_HEADER.size)
    m = body["m"].astype(np.int64)
    if count and (np.any(np.diff(m) <= 0) or m[0] < 2 or m[-1] > limit):
        raise CacheCorruptionError(f"{path}: entries not strictly increasing within [2, limit]")
    return MangoldtTable(limit=int(limit), m=m, log_p=body["log_p"].astype(np.float64))


def verify_cache(path: str | Path, spot_checks: int = 1000, seed: int = 0, full: bool = True) -> MangoldtTable:
    """Re-check a cache file; raises CacheCorruptionError on the first problem.

    Header and ordering checks come from ``load_table``. Then ``spot_checks``
    random entries are refactored by trial division, and with ``full`` the
    whole table is re-sieved and compared bit for bit, which is what catches
    a flipped low-order byte in a logarithm.
    """
    table = load_table(path)
    if len(table):
        rng = np.random.default_rng(seed)
        picks = rng.choice(len(table), size=min(spot_checks, len(table)), replace=False)
        for i in np.sort(picks).tolist():
            m, lp = int(table.m[i]), float(table.log_p[i])
            want = mangoldt_bruteforce(m)
            if want == 0.0 or abs(lp - want) > 4e-16 * want:
                raise CacheCorruptionError(f"{path}: entry {i} holds Lambda({m}) = {lp!r}, expected {want!r}")
    if full:
        fresh = build_mangoldt_table(table.limit)
        if len(fresh) != len(table) or not np.array_equal(fresh.m, table.m):
            raise CacheCorruptionError(f"{path}: prime-power support differs from a fresh sieve")
        bad = np.flatnonzero(fresh.log_p.view(np.uint64) != table.log_p.view(np.uint64))
        if bad.size:
            raise CacheCorruptionError(f"{path}: {bad.size} logarithms differ from a fresh sieve, first at m = {table.m[bad[0]]}")
    return table


# ---------------------------------------------------------------------------
# sums and integrals


def _as_complex(a) -> complex:
    return complex(a)


def weighted_partial_sum(table: MangoldtTable, a: complex, j: int, cutoff: int) -> complex:
    """S_j(a, N) = sum_{m <= N} Lambda(m) ln^{j-1}(m) m^{-a}, correctly rounded."""
    if j < 1:
        raise DomainError("j must be >= 1")
    if cutoff > table.limit:
        raise CapacityError(f"cutoff {cutoff} exceeds table limit {table.limit}")
    k = table.count_upto(cutoff)
    if k == 0:
        return 0j
    a = _as_complex(a)
    lnm = np.log(table.m[:k].astype(np.float64))
    terms = table.log_p[:k] * _power(lnm, a) * lnm ** (j - 1)
    return compensated_sum(terms)


def _power(lnm: np.ndarray, a: complex) -> np.ndarray:
    """m^{-a} from ln m; real arithmetic when a is real."""
    if a.imag == 0.0:
        return np.exp(-a.real * lnm)
    return np.exp(-a * lnm)


def _kummer_series(mu: complex, L: float, j: int) -> complex:
    # int_0^L t^{j-1} e^{mu t} dt = e^{mu L} L^j sum_r (-mu L)^r / (j (j+1) ... (j+r));
    # the term ratio is |mu L| / (j + r) < 1 whenever |mu| L < j
    x = -mu * L
    term = 1.0 / j
    terms = [term]
    r = 0
    while abs(term) > 1e-18 * abs(terms[0]):
        r += 1
        term = term * x / (j + r)
        terms.append(term)
        if r > 2000:
            raise NonConvergenceError("log-power series did not converge")
    return cmath.exp(mu * L) * L**j * compensated_sum(terms)


def log_power_integral(a: complex, j: int, upper: float) -> complex:
    """Closed form of int_1^upper x^{-a} ln^{j-1}(x) dx.

    With mu = 1 - a and L = ln(upper) this is int_0^L t^{j-1} e^{mu t} dt.
    For |mu| L < j a confluent series (all ratios below one) is used; above
    that the integration-by-parts recurrence

        I_1 = (e^{mu L} - 1) / mu,
        I_j = L^{j-1} e^{mu L} / mu - (j - 1) / mu * I_{j-1},

    which is forward-stable in that regime. mu = 0 gives L^j / j.
    """
    if j < 1:
        raise DomainError("j must be >= 1")
    if upper < 1:
        raise DomainError("upper limit must be >= 1")
    a = _as_complex(a)
    L = math.log(upper)
    if L == 0.0:
        return 0j
    mu = 1.0 - a
    if mu == 0:
        return complex(L**j / j)
    if abs(mu) * L < j:
        return _kummer_series(mu, L, j)
    e = cmath.exp(mu * L)
    value = _expm1c(mu * L) / mu
    lpow = 1.0
    for jj in range(2, j + 1):
        lpow *= L
        value = lpow * e / mu - (jj - 1) / mu * value
    return value


def _expm1c(z: complex) -> complex:
    if z.imag == 0.0:
        return complex(math.expm1(z.real))
    x, y = z.real, z.imag
    return complex(math.expm1(x) * math.cos(y) - 2.0 * math.sin(0.5 * y) ** 2, math.exp(x) * math.sin(y))


# ---------------------------------------------------------------------------
# regularized limits


@cache
def smoothing_kernel(order: int, shift: int = 0) -> tuple[tuple[int, float], ...]:
    """Coefficients (p, c_p) of the cutoff weight w(u) = sum_p c_p u^p, u = m/N.

    The Mellin transform of w on [0, 1] is C / (s (s+shift+1) ... (s+shift+order)),
    normalized to residue 1 at s = 0. shift = 0 gives the Riesz weight
    (1 - u)^order. A positive shift removes the kernel poles at s = -1..-shift,
    which would otherwise leave a bias of order N^-1 in the limit.
    """
    poles = range(shift + 1, shift + order + 1)
    scale = Fraction(math.prod(poles))
    coeffs = [(0, 1.0)]
    for p in poles:
        others = math.prod(Fraction(r - p) for r in poles if r != p)
        coeffs.append((p, float(scale / (-p * others))))
    return tuple(coeffs)


@dataclass(frozen=True)
class LimitSchedule:
    """Checkpoints N_k for a sum-minus-integral limit and how to read it off.

    Both the prime sum and the integral carry the cutoff weight
    ``smoothing_kernel(smoothing_order, pole_shift)`` of m/N; order 0 is the
    plain sum-minus-integral. The estimate is the mean over the last
    ``averaging_window`` checkpoints and the uncertainty its spread plus a
    roundoff bound.
    """

    checkpoints: tuple[int, ...]
    averaging_window: int = 8
    smoothing_order: int = 2
    pole_shift: int = 0

    def __post_init__(self):
        cps = tuple(int(c) for c in self.checkpoints)
        object.__setattr__(self, "checkpoints", cps)
        if not cps:
            raise DomainError("schedule needs at least one checkpoint")
        if any(b <= a for a, b in itertools.pairwise(cps)):
            raise DomainError("checkpoints must be strictly increasing")
        if cps[0] < 2:
            raise DomainError("checkpoints must be >= 2")
        if self.averaging_window < 1:
            raise DomainError("averaging window must be >= 1")
        if self.smoothing_order < 0:
            raise DomainError("smoothing order must be >= 0")
        if self.pole_shift < 0 or (self.pole_shift and not self.smoothing_order):
            raise DomainError("pole shift must be >= 0 and needs a positive smoothing order")

    @classmethod
    def geometric(cls, n0: int, count: int, ratio: float = 2.0, window: int = 8, smoothing_order: int = 2,
                  pole_shift: int = 0):
        """N_k = n0 * ratio**k for k < count."""
        cps = sorted({round(n0 * ratio**k) for k in range(count)})
        return cls(tuple(cps), window, smoothing_order, pole_shift)

    @classmethod
    def ending_at(cls, n_max: int, count: int = 16, ratio: float = 2.0 ** 0.25, window: int = 8,
                  smoothing_order: int = 2, pole_shift: int = 0):
        """Geometric checkpoints whose last element is exactly ``n_max``."""
        cps = sorted({round(n_max / ratio ** (count - 1 - k)) for k in range(count)})
        return cls(tuple(cps), window, smoothing_order, pole_shift)

    @classmethod
    def for_limit(cls, n_max: int, a: complex, jmax: int = 1):
        """Default Riesz schedule ending at ``n_max`` for a limit at ``a`` up to ln^(jmax-1).

        The order-k weight adds a bias of order 1/N (the kernel's poles at
        s = -1..-k), so a single absolutely convergent sum with
        Re a >= 3/2, whose sharp truncation error is O(N^(1/2 - Re a)), is
        taken without smoothing.
        """
        order = 0 if jmax == 1 and complex(a).real >= 1.5 else 2
        return cls.ending_at(n_max, smoothing_order=order)

    @classmethod
    def candidates(cls, n_max: int, a: complex, jmax: int = 1) -> tuple[LimitSchedule, ...]:
        """Schedules worth trying for one limit, highest smoothing order first.

        High-order kernels damp the zero-driven oscillation by roughly
        (order+shift)!/|gamma|^(order+1) but amplify roundoff through their
        coefficients, which grow with the power of ln N in the summand; no
        single kernel is best for every (a, j, N).
        """
        base = cls.for_limit(n_max, a, jmax)
        out = [cls.ending_at(n_max, smoothing_order=k, pole_shift=1) for k in (8, 4)]
        out.append(base)
        if base.smoothing_order == 0:
            out.append(cls.ending_at(n_max, smoothing_order=2))
        return tuple(out)

    @property
    def last(self) -> int:
        return self.checkpoints[-1]

    @property
    def kernel(self) -> tuple[tuple[int, float], ...]:
        return smoothing_kernel(self.smoothing_order, self.pole_shift)

    def as_params(self) -> dict:
        return {
            "checkpoints": list(self.checkpoints),
            "window": self.averaging_window,
            "smoothing_order": self.smoothing_order,
            "pole_shift": self.pole_shift,
        }


def _chunk_bounds(table: MangoldtTable, checkpoints: tuple[int, ...]) -> list[tuple[int, int, int]]:
    """(start, stop, checkpoint index) index ranges; chunking is fixed by the data."""
    out = []
    start = 0
    for c, cp in enumerate(checkpoints):
        stop = table.count_upto(cp)
        for lo in range(start, stop, CHUNK):
            out.append((lo, min(lo + CHUNK, stop), c))
        start = stop
    return out


def _chunk_sums(table: MangoldtTable, lo: int, hi: int, a: complex, jmax: int, order: int) -> np.ndarray:
    """sum over a chunk of Lambda(m) ln^{j-1}(m) m^{i-a}, shape (order+1, jmax)."""
    out = np.zeros((order + 1, jmax), dtype=complex)
    if hi <= lo:
        return out
    m = table.m[lo:hi].astype(np.float64)
    lnm = np.log(m)
    base = table.log_p[lo:hi] * _power(lnm, a)
    for i in range(order + 1):
        cur = base * m**i if i else base
        for j in range(jmax):
            # pairwise summation inside a chunk: deterministic for a fixed
            # chunk, and chunks are combined with fsum
            out[i, j] = cur.sum()
            if j + 1 < jmax:
                cur = cur * lnm
    return out


def _prefix_sums(table: MangoldtTable, a: complex, jmax: int, schedule: LimitSchedule, workers: int = 1) -> np.ndarray:
    """P[c, i, j] = sum_{m <= N_c} Lambda(m) ln^j(m) m^{i-a}, memoized on the table.

    One entry per (a, checkpoints) holds the highest power i computed so far.
    """
    key = (a, schedule.checkpoints)
    order = schedule.smoothing_order + schedule.pole_shift
    with table._lock:
        hit = table._prefix_cache.get(key)
    if hit is not None and hit.shape[1] > order and hit.shape[2] >= jmax:
        return hit[:, : order + 1, :jmax]
    # round up so that sweeps over n reuse one pass over the table
    jmax = max(jmax, 10 * math.ceil(jmax / 10))
    prefix = _compute_prefix_sums(table, a, jmax, schedule.checkpoints, order, workers)
    with table._lock:
        if len(table._prefix_cache) > 64:
            table._prefix_cache.clear()
        table._prefix_cache[key] = prefix
    return prefix[:, : order + 1, :]


def _compute_prefix_sums(table, a, jmax, checkpoints, order, workers):
    if checkpoints[-1] > table.limit:
        raise CapacityError(f"checkpoint {checkpoints[-1]} exceeds table limit {table.limit}")
    bounds = _chunk_bounds(table, checkpoints)
    job = lambda b: _chunk_sums(table, b[0], b[1], a, jmax, order)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, bounds))
    else:
        parts = [job(b) for b in bounds]
    ncp = len(checkpoints)
    prefix = np.zeros((ncp, order + 1, jmax), dtype=complex)
    collected: list[np.ndarray] = []
    owner = [b[2] for b in bounds]
    for c in range(ncp):
        collected.extend(p for p, o in zip(parts, owner) if o == c)
        if not collected:
            continue
        stack = np.stack(collected)
        for i in range(order + 1):
            for j in range(jmax):
                prefix[c, i, j] = compensated_sum(stack[:, i, j])
    return prefix


def _sequence_with_scale(
    table: MangoldtTable,
    a: complex,
    weights: dict[int, complex],
    schedule: LimitSchedule,
    workers: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    a = _as_complex(a)
    if not weights:
        raise DomainError("weights must name at least one j")
    if min(weights) < 1:
        raise DomainError("j must be >= 1")
    jmax = max(weights)
    prefix = _prefix_sums(table, a, jmax, schedule, workers)
    ncp = len(schedule.checkpoints)
    seq = np.zeros(ncp, dtype=complex)
    scale = np.zeros(ncp)
    for c, n_c in enumerate(schedule.checkpoints):
        parts = []
        for j, w in sorted(weights.items()):
            if w == 0:
                continue
            for i, coef in schedule.kernel:
                sum_part = w * coef * n_c ** -i * prefix[c, i, j - 1]
                int_part = w * coef * n_c ** -i * log_power_integral(a - i, j, n_c)
                parts.append(sum_part - int_part)
                scale[c] += abs(sum_part) + abs(int_part)
        seq[c] = compensated_sum(parts)
    return seq, scale


def regularized_sequence(
    table: MangoldtTable,
    a: complex,
    weights: dict[int, complex],
    schedule: LimitSchedule,
    workers: int = 1,
) -> np.ndarray:
    """Weighted sum over j of the (smoothed) sum-minus-integral at each checkpoint.

    For checkpoint N and cutoff weight w(u) = sum_i c_i u^i this is

        sum_j w_j [ sum_{m<=N} Lambda(m) ln^{j-1}(m) m^{-a} w(m/N)
                    - int_1^N x^{-a} ln^{j-1}(x) w(x/N) dx ]

    assembled from the power sums of m^{i-a} and their integrals.
    """
    return _sequence_with_scale(table, a, weights, schedule, workers)[0]


def window_estimate(seq: np.ndarray, window: int) -> tuple[complex, float]:
    """Mean of the last ``window`` values and their diameter."""
    tail = np.asarray(seq[-window:], dtype=complex)
    value = compensated_sum(tail) / len(tail)
    spread = float(np.max(np.abs(tail[:, None] - tail[None, :]))) if len(tail) > 1 else 0.0
    return value, spread


def error_model(n_cut, a: complex, j: int) -> float:
    """Size of the zero-driven oscillation of D_j at cutoff N: N^(1/2 - Re a) ln^j N."""
    n_cut = np.asarray(n_cut, dtype=float)
    return n_cut ** (0.5 - a.real) * np.log(n_cut) ** j


def _check_convergence(seq: np.ndarray, schedule: LimitSchedule, a: complex, jmax: int, what: str) -> None:
    # the spread may grow only as fast as the error model allows (it grows
    # with N while ln N < j / (Re a - 1/2)), with a factor of slack
    window = schedule.averaging_window
    if len(seq) < window + 2:
        return
    first = np.abs(seq[:window, None] - seq[None, :window]).max()
    last = np.abs(seq[-window:, None] - seq[None, -window:]).max()
    cps = schedule.checkpoints
    growth = max(1.0, float(error_model(cps[-1], a, jmax) / error_model(cps[window - 1], a, jmax)))
    if not last <= SPREAD_GROWTH_TOLERANCE * growth * first:
        raise NonConvergenceError(
            f"{what}: spread grew from {first:.3g} to {last:.3g} over the schedule"
        )


def combined_regularized_limit(
    table: MangoldtTable,
    a: complex,
    weights: dict[int, complex],
    schedule: LimitSchedule,
    workers: int = 1,
) -> tuple[complex, float]:
    """Limit of ``regularized_sequence``: (value, uncertainty).

    The uncertainty is the window spread plus ROUNDOFF times the summed
    magnitude of the pieces that cancel at each checkpoint.
    """
    a = _as_complex(a)
    if a.real < 0.5:
        raise DomainError(f"regularized limits need Re a >= 1/2, got {a}")
    seq, scale = _sequence_with_scale(table, a, weights, schedule, workers)
    _check_convergence(seq, schedule, a, max(weights), f"regularized limit at a={a}")
    value, spread = window_estimate(seq, schedule.averaging_window)
    return value, spread + ROUNDOFF * float(scale[-schedule.averaging_window:].max())


def best_regularized_limit(
    table: MangoldtTable,
    a: complex,
    weights: dict[int, complex],
    schedules: tuple[LimitSchedule, ...],
    workers: int = 1,
) -> tuple[complex, float, LimitSchedule]:
    """The candidate schedule with the smallest uncertainty: (value, uncertainty, schedule).

    Candidates that fail the convergence check are skipped; if all fail the
    last failure is raised.
    """
    best = None
    failure = None
    for sched in schedules:
        try:
            value, err = combined_regularized_limit(table, a, weights, sched, workers)
        except NonConvergenceError as exc:
            failure = exc
            continue
        if best is None or err < best[1]:
            best = (value, err, sched)
    if best is None:
        raise failure
    return best


def regularized_limit(
    table: MangoldtTable, a: complex, j: int, schedule: LimitSchedule, workers: int = 1
) -> tuple[complex, float]:
    """lim_N ( sum_{m<=N} Lambda(m) ln^{j-1}(m) / m^a - int_1^N x^{-a} ln^{j-1}(x) dx )."""
    return combined_regularized_limit(table, a, {j: 1.0}, schedule, workers)
