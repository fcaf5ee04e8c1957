"""k_{n,a} from von Mangoldt sums, Hurwitz zeta values and digamma.

Three closed forms, by region of a:

* Re a > 1 (absolutely convergent):
      2 - (-1 + 1/a)^n - (-1 - 1/(a-1))^n
        + sum_j C(n,j) b^j (-1)^j/(j-1)! S_j(a)
        + (n/2) b (psi(a/2) - ln pi)
        + sum_{j>=2} C(n,j) (-1)^j 2^-j b^j zeta(j, a/2)
  with b = 2a - 1 and S_j(a) = sum_m Lambda(m) ln^{j-1}(m) m^-a.

* a = 1 + it, and 1/2 < Re a < 1 (the latter conditional on all zeros
  having real part 1/2): the leading constant becomes 1 - (-1 + 1/a)^n and
  S_j is replaced by the limit D_j of the sum minus int_1^N x^-a ln^{j-1} x dx.

Since S_j = D_j + (j-1)!/(a-1)^j for Re a > 1, both forms are evaluated
through the same regularized limits; the first keeps the integral as an
explicit analytic term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from genli.errors import DomainError, ToleranceError
from genli.mangoldt import (
    LimitSchedule,
    MangoldtTable,
    best_regularized_limit,
    combined_regularized_limit,
)
from genli.numerics import compensated_sum
from genli.records import LiCoefficientRecord, Route, params_digest
from genli.specfun import (
    BINOMIAL_MAX_N,
    EULER_GAMMA,
    LN_PI,
    binomial,
    digamma,
    hurwitz_zeta,
    riemann_zeta,
    zeta_log_derivative,
)
from genli.zeros import ZeroTable, zero_sum_with_tail

SIGMA0 = 0.5
DEFAULT_EPS0 = 0.1
CONDITIONAL_NOTE = "conditional on all nontrivial zeros having real part 1/2"
# relative accuracy credited to digamma, Hurwitz zeta and the elementary terms
SPECFUN_RTOL = 1e-14


def _check_n(n: int) -> None:
    if not 1 <= n <= BINOMIAL_MAX_N:
        raise DomainError(f"n must lie in [1, {BINOMIAL_MAX_N}], got {n}")


def _limit(table, a, weights, schedule, workers) -> tuple[complex, float, LimitSchedule]:
    """Regularized limit with the given schedule, or the best default candidate."""
    if schedule is not None:
        return (*combined_regularized_limit(table, a, weights, schedule, workers), schedule)
    candidates = LimitSchedule.candidates(table.limit, a, max(weights))
    return best_regularized_limit(table, a, weights, candidates, workers)


def prime_weights(n: int, a: complex) -> dict[int, complex]:
    """w_j = C(n,j) (2a-1)^j (-1)^j / (j-1)!, the coefficient of S_j or D_j."""
    b = 2.0 * a - 1.0
    return {j: binomial(n, j) * (-b) ** j / math.factorial(j - 1) for j in range(1, n + 1)}


def _archimedean_parts(n: int, a: complex) -> list[complex]:
    b = 2.0 * a - 1.0
    parts = [0.5 * n * b * (digamma(0.5 * a) - LN_PI)]
    for j in range(2, n + 1):
        parts.append(binomial(n, j) * (-0.5 * b) ** j * hurwitz_zeta(j, 0.5 * a))
    return parts


def archimedean_terms(n: int, a: complex) -> complex:
    """(n/2) b (psi(a/2) - ln pi) + sum_{j>=2} C(n,j) (-1)^j 2^-j b^j zeta(j, a/2)."""
    return compensated_sum(_archimedean_parts(n, a))


def _closed_form(parts: list[complex]) -> tuple[complex, float]:
    """Sum of the closed-form pieces and the error their special-function values allow."""
    return compensated_sum(parts), SPECFUN_RTOL * sum(abs(p) for p in parts)


def _regularized_part(n, a, table, schedule, workers):
    return _limit(table, a, prime_weights(n, a), schedule, workers)


def _record(n, a, route, value, uncertainty, table, schedule, conditional=False, **extra):
    a = complex(a)
    if a.imag == 0.0:
        # every term is real for real a; drop roundoff in the imaginary part
        value = complex(value.real, 0.0)
    params = {"n": n, "a": a, "route": route.value, "limit": table.limit, **schedule.as_params(), **extra}
    notes = {"hypothesis": CONDITIONAL_NOTE} if conditional else {}
    return LiCoefficientRecord(
        n=n,
        a=a,
        route=route,
        value=complex(value),
        uncertainty=float(uncertainty),
        params_digest=params_digest(params),
        conditional=conditional,
        notes=notes,
    )


def k_arith_supercritical(
    n: int,
    a: complex,
    table: MangoldtTable,
    schedule: LimitSchedule | None = None,
    workers: int = 1,
) -> LiCoefficientRecord:
    """k_{n,a} for Re a > 1 from the absolutely convergent prime sums."""
    _check_n(n)
    a = complex(a)
    if not a.real > 1.0:
        raise DomainError(f"this form needs Re a > 1, got {a}")
    d_part, spread, schedule = _regularized_part(n, a, table, schedule, workers)
    # S_j = D_j + (j-1)!/(a-1)^j; those integrals contribute
    # sum_j C(n,j) (-b/(a-1))^j = (1 - b/(a-1))^n - 1 = (-1 - 1/(a-1))^n - 1,
    # which cancels the third constant exactly and turns the 2 into 1.
    # Summing the pieces separately would lose (1 + 1/|a-1|)^n ulps.
    closed, floor = _closed_form([1.0, -((-1.0 + 1.0 / a) ** n), *_archimedean_parts(n, a)])
    value = compensated_sum([closed, d_part])
    return _record(n, a, Route.ARITH_EQ4, value, spread + floor, table, schedule)


def _strip_form(n: int, a: complex, table, schedule, workers) -> tuple[complex, float, LimitSchedule]:
    d_part, spread, schedule = _regularized_part(n, a, table, schedule, workers)
    closed, floor = _closed_form([1.0, -((-1.0 + 1.0 / a) ** n), *_archimedean_parts(n, a)])
    return compensated_sum([closed, d_part]), spread + floor, schedule


def k_arith_line(
    n: int,
    t: float,
    table: MangoldtTable,
    schedule: LimitSchedule | None = None,
    workers: int = 1,
) -> LiCoefficientRecord:
    """k_{n,a} at a = 1 + it from regularized prime sums."""
    _check_n(n)
    t = float(t)
    a = complex(1.0, t)
    value, spread, schedule = _strip_form(n, a, table, schedule, workers)
    return _record(n, a, Route.ARITH_EQ5, value, spread, table, schedule)


def _check_strip(a: complex, eps0: float) -> None:
    if eps0 <= 0:
        raise DomainError("eps0 must be positive")
    lower = 1.0 - SIGMA0 + eps0
    if not lower <= a.real < 1.0:
        raise DomainError(f"need {lower:g} <= Re a < 1, got {a}")


def k_arith_conditional(
    n: int,
    a: complex,
    table: MangoldtTable,
    schedule: LimitSchedule | None = None,
    eps0: float = DEFAULT_EPS0,
    workers: int = 1,
) -> LiCoefficientRecord:
    """k_{n,a} for 1/2 + eps0 <= Re a < 1; valid if every zero lies on Re s = 1/2."""
    _check_n(n)
    a = complex(a)
    _check_strip(a, eps0)
    value, spread, schedule = _strip_form(n, a, table, schedule, workers)
    return _record(n, a, Route.ARITH_EQ6, value, spread, table, schedule, conditional=True, eps0=eps0)


def k_arith(n: int, a: complex, table: MangoldtTable, schedule=None, workers: int = 1, eps0=DEFAULT_EPS0):
    """Dispatch to the arithmetic form that covers ``a``."""
    a = complex(a)
    if a.real > 1.0:
        return k_arith_supercritical(n, a, table, schedule, workers)
    if a.real == 1.0:
        return k_arith_line(n, a.imag, table, schedule, workers)
    return k_arith_conditional(n, a, table, schedule, eps0, workers)


@dataclass(frozen=True)
class IdentitySides:
    """Both sides of an identity with their uncertainties; unpacks as (lhs, rhs)."""

    lhs: complex
    rhs: complex
    lhs_uncertainty: float = 0.0
    rhs_uncertainty: float = 0.0

    def __iter__(self):
        yield self.lhs
        yield self.rhs

    @property
    def discrepancy(self) -> float:
        return abs(self.lhs - self.rhs)


def remark2_rhs(a: complex, s1: complex) -> complex:
    """1/a + 1/(a-1) - S_1 + (psi(a/2) - ln pi)/2 for a given S_1 = -zeta'/zeta(a)."""
    return compensated_sum([1.0 / a, 1.0 / (a - 1.0), -s1, 0.5 * (digamma(0.5 * a) - LN_PI)])


def remark2_identity(
    a: complex,
    table: MangoldtTable,
    zeros: ZeroTable,
    schedule: LimitSchedule | None = None,
    workers: int = 1,
) -> IdentitySides:
    """sum_rho 1/(a - rho) from the zeros against its arithmetic expression."""
    a = complex(a)
    if not a.real > 1.0:
        raise DomainError(f"needs Re a > 1, got {a}")
    real = a.imag == 0.0
    lhs, lhs_err = zero_sum_with_tail(lambda rho: 1.0 / (a - rho), zeros, real=real)
    d1, spread, _ = _limit(table, a, {1: 1.0}, schedule, workers)
    rhs = remark2_rhs(a, d1 + 1.0 / (a - 1.0))
    if real:
        rhs = complex(rhs.real, 0.0)
    return IdentitySides(lhs, rhs, lhs_err, spread)


def zeta_logderiv_limit(
    a: complex,
    table: MangoldtTable,
    schedule: LimitSchedule | None = None,
    eps0: float = DEFAULT_EPS0,
    workers: int = 1,
) -> IdentitySides:
    """-lim (sum_{m<=N} Lambda(m) m^-a - N^{1-a}/(1-a)) against zeta'/zeta(a).

    The regularized limit subtracts int_1^N x^-a dx = (N^{1-a} - 1)/(1-a), so
    the bracket here equals that limit minus 1/(1-a). Inside the strip the
    equality is conditional on the zero-location hypothesis; for Re a > 1 it
    is unconditional.
    """
    a = complex(a)
    if a.real <= 1.0:
        _check_strip(a, eps0)
    d1, spread, _ = _limit(table, a, {1: 1.0}, schedule, workers)
    limit_value = -(d1 - 1.0 / (1.0 - a))
    return IdentitySides(limit_value, zeta_log_derivative(a), spread, 0.0)


HURWITZ_REDUCTION_RTOL = 1e-12


def classical_li(
    n: int,
    table: MangoldtTable,
    schedule: LimitSchedule | None = None,
    workers: int = 1,
) -> LiCoefficientRecord:
    """The classical Li coefficient lambda_n = k_{n,1}."""
    _check_n(n)
    for j in range(2, n + 1):
        lhs = hurwitz_zeta(j, 0.5)
        rhs = (2.0**j - 1.0) * riemann_zeta(j)
        if abs(lhs - rhs) > HURWITZ_REDUCTION_RTOL * abs(rhs):
            raise ToleranceError(f"zeta(j, 1/2) = (2^j - 1) zeta(j) fails at j = {j}: {lhs} vs {rhs}")
    return k_arith_line(n, 0.0, table, schedule, workers)


def classical_li1_closed_form() -> float:
    """1 + gamma/2 - ln(4 pi)/2."""
    return 1.0 + 0.5 * EULER_GAMMA - 0.5 * math.log(4.0 * math.pi)


__all__ = [
    "CONDITIONAL_NOTE",
    "IdentitySides",
    "archimedean_terms",
    "classical_li",
    "classical_li1_closed_form",
    "k_arith",
    "k_arith_conditional",
    "k_arith_line",
    "k_arith_supercritical",
    "prime_weights",
    "remark2_identity",
    "remark2_rhs",
    "zeta_logderiv_limit",
]
