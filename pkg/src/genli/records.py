"""Result records shared by every route."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum


class Route(str, Enum):
    ARITH_EQ4 = "arith_eq4"
    ARITH_EQ5 = "arith_eq5"
    ARITH_EQ6 = "arith_eq6"
    ZERO_SUM = "zero_sum"
    XI_DERIV = "xi_deriv"


def _canon(value):
    if isinstance(value, complex):
        return [repr(value.real), repr(value.imag)]
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return {str(k): _canon(v) for k, v in sorted(value.items())}
    if isinstance(value, (list, tuple)):
        return [_canon(v) for v in value]
    return value


def params_digest(params: dict) -> str:
    """Stable 16-hex-digit digest of the numeric parameters behind a value."""
    blob = json.dumps(_canon(params), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class LiCoefficientRecord:
    """One computed k_{n,a}."""

    n: int
    a: complex
    route: Route
    value: complex
    uncertainty: float
    params_digest: str
    conditional: bool = False
    notes: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.uncertainty >= 0:
            raise ValueError(f"uncertainty must be >= 0, got {self.uncertainty}")

    @property
    def real(self) -> float:
        return self.value.real
