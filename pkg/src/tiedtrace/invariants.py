"""The invariants Theta, Theta_d and P, computed three independent ways.

* ``trace``  -- normalize the Markov trace of the braid;
* ``skein``  -- recurse with the skein relation at mixed crossings only;
* ``closed`` -- sum over set partitions of the components, weighted by the
  Homflypt values of the resulting split sublinks.

All values are :class:`~tiedtrace.scalar.ScalarValue` in ``q``, ``s`` (with
``lambda = s^2``) and ``E``; ``Theta_d`` is ``Theta`` at ``E = 1/d`` and ``P``
is ``Theta`` at ``E = 1``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import algebra
from .braid import (
    BraidWord,
    components,
    crossing_layers,
    exponent_sum,
    extract_sublink,
    smooth,
    switch,
)
from .scalar import DELTA, LaurentPoly, OMEGA, ScalarValue, substitute_z

__all__ = [
    "ENGINES",
    "EngineDisagreement",
    "theta_trace",
    "homflypt",
    "theta_skein",
    "theta_closed",
    "theta",
    "theta_d",
    "two_component_decomposition_check",
    "ComparisonReport",
    "compare",
    "set_partitions",
    "stirling",
    "e_k",
    "mu",
]

ENGINES = ("trace", "skein", "closed")
DEFAULT_BOUND = 10


class EngineDisagreement(RuntimeError):
    pass


def mu() -> ScalarValue:
    return ScalarValue.mu()


def _normalize(trace_value, strands: int, writhe: int) -> ScalarValue:
    """``Lambda^(n-1) * s^writhe * trace`` with ``Lambda = omega / (delta E s)``."""
    k = strands - 1
    factor = ScalarValue((OMEGA**k).shift(0, writhe - k, -k), d_delta=k)
    return factor * substitute_z(trace_value)


@functools.lru_cache(maxsize=4096)
def theta_trace(w: BraidWord) -> ScalarValue:
    return _normalize(algebra.trace(w), w.strands, exponent_sum(w))


@functools.lru_cache(maxsize=4096)
def homflypt(w: BraidWord) -> ScalarValue:
    """Homflypt polynomial of the closure (no ``E`` in the result)."""
    return _normalize(algebra.hecke_trace(w), w.strands, exponent_sum(w)).specialize_E(1)


def _split_factor() -> ScalarValue:
    return mu() * ScalarValue.E(-1)


@functools.lru_cache(maxsize=4096)
def theta_skein(w: BraidWord) -> ScalarValue:
    structure = components(w)
    if structure.count == 1:
        return homflypt(w)
    focus = 1
    for position, (over, under, sign) in enumerate(crossing_layers(w)):
        if under == focus and over != focus:
            break
    else:
        rest = set(range(2, structure.count + 1))
        return (
            _split_factor()
            * theta_skein(extract_sublink(w, {focus}))
            * theta_skein(extract_sublink(w, rest))
        )
    lam = ScalarValue.lam(sign)
    smoothed_coeff = ScalarValue(DELTA.shift(0, sign, 0).scale(sign))
    return lam * theta_skein(switch(w, position)) + smoothed_coeff * theta_skein(smooth(w, position))


def _check_bound(n: int, bound: int) -> None:
    if n < 0:
        raise ValueError("size must be non-negative")
    if n > bound:
        raise ValueError(f"size {n} exceeds the configured bound {bound}")


def set_partitions(n: int, bound: int = DEFAULT_BOUND) -> Iterator[list[list[int]]]:
    """All set partitions of ``1..n`` (blocks in order of least element)."""
    _check_bound(n, bound)

    def grow(i: int, blocks: list[list[int]]):
        if i > n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from grow(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from grow(i + 1, blocks)
        blocks.pop()

    yield from grow(1, [])


def stirling(n: int, k: int, bound: int = DEFAULT_BOUND) -> int:
    """Stirling number of the second kind, by the usual recurrence."""
    _check_bound(n, bound)
    table = [[0] * (n + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            table[i][j] = j * table[i - 1][j] + table[i - 1][j - 1]
    return table[n][k] if 0 <= k <= n else 0


def e_k(k: int, bound: int = DEFAULT_BOUND) -> ScalarValue:
    """``(E^-1 - 1)(E^-1 - 2)...(E^-1 - k + 1)``, equal to 1 for ``k = 1``."""
    _check_bound(k, bound)
    if k < 1:
        raise ValueError("k must be at least 1")
    value = ScalarValue(1)
    for j in range(1, k):
        value = value * (ScalarValue.E(-1) - j)
    return value


@functools.lru_cache(maxsize=4096)
def theta_closed(w: BraidWord) -> ScalarValue:
    structure = components(w)
    c = structure.count
    if c == 1:
        return homflypt(w)
    sub_p: dict[tuple[int, ...], ScalarValue] = {}
    total = ScalarValue(0)
    for blocks in set_partitions(c, bound=max(c, DEFAULT_BOUND)):
        k = len(blocks)
        owner = {cid: idx for idx, block in enumerate(blocks) for cid in block}
        nu = sum(
            structure.lk(i, j)
            for i in range(1, c + 1)
            for j in range(i + 1, c + 1)
            if owner[i] != owner[j]
        )
        product = ScalarValue(1)
        for block in blocks:
            key = tuple(block)
            if key not in sub_p:
                sub_p[key] = homflypt(extract_sublink(w, block))
            product = product * sub_p[key]
        total = total + mu() ** (k - 1) * e_k(k, bound=max(k, DEFAULT_BOUND)) * ScalarValue.lam(nu) * product
    return total


_BY_ENGINE = {"trace": theta_trace, "skein": theta_skein, "closed": theta_closed}


def theta(w: BraidWord, engine: str | None = None) -> ScalarValue:
    """Theta with a chosen engine; ``None`` picks one, ``"all"`` cross-checks."""
    if engine is None:
        engine = "closed" if components(w).count > 1 else "trace"
    if engine == "all":
        values = {name: fn(w) for name, fn in _BY_ENGINE.items()}
        reference = values["trace"]
        for name, value in values.items():
            if value != reference:
                raise EngineDisagreement(f"{name} engine disagrees with trace on {w}")
        return reference
    if engine not in _BY_ENGINE:
        raise ValueError(f"unknown engine {engine!r}")
    return _BY_ENGINE[engine](w)


def theta_d(w: BraidWord, d: int, engine: str | None = None) -> ScalarValue:
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive integer")
    return theta(w, engine).specialize_E(Fraction(1, d))


def two_component_decomposition_check(w: BraidWord, engine: str = "trace") -> bool:
    structure = components(w)
    if structure.count != 2:
        raise ValueError(f"expected a 2-component closure, got {structure.count}")
    split = mu() * homflypt(extract_sublink(w, {1})) * homflypt(extract_sublink(w, {2}))
    correction = ScalarValue.lam(structure.lk(1, 2)) * (ScalarValue.E(-1) - 1) * split
    return (theta(w, engine) - homflypt(w) - correction).is_zero()


@dataclass(frozen=True)
class ComparisonReport:
    link1: str
    link2: str
    p_difference: ScalarValue
    theta_difference: ScalarValue
    specializations: dict

    @property
    def p_equal(self) -> bool:
        return self.p_difference.is_zero()

    @property
    def theta_distinguished(self) -> bool:
        return not self.theta_difference.is_zero()

    def to_json_obj(self) -> dict:
        return {
            "link1": self.link1,
            "link2": self.link2,
            "p_equal": self.p_equal,
            "theta_difference": self.theta_difference.to_json_obj(),
            "specializations": {k: v.to_json_obj() for k, v in self.specializations.items()},
        }


def compare(w1: BraidWord, w2: BraidWord, engine: str | None = None,
            name1: str | None = None, name2: str | None = None) -> ComparisonReport:
    diff = theta(w1, engine) - theta(w2, engine)
    return ComparisonReport(
        link1=name1 or w1.canonical(),
        link2=name2 or w2.canonical(),
        p_difference=homflypt(w1) - homflypt(w2),
        theta_difference=diff,
        specializations={
            "1/2": diff.specialize_E(Fraction(1, 2)),
            "1/3": diff.specialize_E(Fraction(1, 3)),
        },
    )


def clear_caches() -> None:
    algebra.clear_memo()
    for fn in (theta_trace, homflypt, theta_skein, theta_closed):
        fn.cache_clear()


def e_minus_one() -> LaurentPoly:
    return LaurentPoly({(0, 0, 1): 1, (0, 0, 0): -1})
