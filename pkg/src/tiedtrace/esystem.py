"""Numerical solutions of the E-system for the framing parameters.

For ``d >= 1`` the unknowns are ``x_1..x_{d-1}`` (with ``x_0 = 1``, indices
mod ``d``) subject to

    sum_s x_{k+s} x_{d-s} = x_k * sum_s x_s x_{d-s}      (1 <= k <= d-1).

Solutions are indexed by non-empty subsets ``D`` of ``Z/dZ``; the associated
value ``E_D = (1/d) sum_s x_s x_{d-s}`` equals ``1/|D|``.  This module is a
floating-point sanity harness only.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = ["ESolutionCandidate", "make_solution", "residuals", "verify", "e_value"]


@dataclass(frozen=True)
class ESolutionCandidate:
    d: int
    x: tuple[complex, ...]  # x_1 .. x_{d-1}
    kind: str = "candidate"

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if len(self.x) != self.d - 1:
            raise ValueError(f"expected {self.d - 1} values, got {len(self.x)}")

    def full(self) -> np.ndarray:
        """``x_0 .. x_{d-1}`` with ``x_0 = 1``."""
        return np.array((1.0 + 0j,) + tuple(complex(v) for v in self.x), dtype=complex)


def make_solution(d: int, kind: str, m: int | None = None,
                  subset: Iterable[int] | None = None) -> ESolutionCandidate:
    """Build the ``singleton`` (with ``m``), ``trivial`` or ``subset`` candidate."""
    if d < 1:
        raise ValueError("d must be positive")
    if kind == "singleton":
        if m is None or not 0 <= m < d:
            raise ValueError(f"singleton needs 0 <= m < {d}")
        root = cmath.exp(2j * cmath.pi * m / d)
        return ESolutionCandidate(d, tuple(root**k for k in range(1, d)), "singleton")
    if kind == "trivial":
        return ESolutionCandidate(d, (0j,) * (d - 1), "trivial")
    if kind == "subset":
        members = sorted({int(v) % d for v in (subset or ())})
        if not members:
            raise ValueError("subset must be non-empty")
        xs = tuple(
            sum(cmath.exp(2j * cmath.pi * mm * k / d) for mm in members) / len(members)
            for k in range(1, d)
        )
        return ESolutionCandidate(d, xs, "subset")
    raise ValueError(f"unknown solution kind {kind!r}")


def _pair_sum(x: np.ndarray) -> complex:
    d = len(x)
    return complex(sum(x[s] * x[(d - s) % d] for s in range(d)))


def residuals(c: ESolutionCandidate) -> np.ndarray:
    x = c.full()
    d = c.d
    total = _pair_sum(x)
    out = np.zeros(max(d - 1, 0), dtype=complex)
    for k in range(1, d):
        lhs = sum(x[(k + s) % d] * x[(d - s) % d] for s in range(d))
        out[k - 1] = lhs - x[k] * total
    return out


def verify(c: ESolutionCandidate, tol: float = 1e-9) -> bool:
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    res = residuals(c)
    return bool(np.all(np.abs(res) < tol)) if res.size else True


def e_value(c: ESolutionCandidate) -> complex:
    return _pair_sum(c.full()) / c.d
