"""Exact Laurent polynomials and the localized scalars that invariants live in.

Three concrete value types are provided:

* :class:`LaurentPoly` -- rational Laurent polynomial in ``q``, ``s`` and ``E``,
  where ``s`` is a formal square root of ``lambda`` (so ``lambda = s^2``).
* :class:`TracePolynomial` -- Laurent in ``q``, polynomial in ``z`` and ``E``.
* :class:`ScalarValue` -- ``num / (d^a * w^b)`` with ``d = q - q^-1`` and
  ``w = 1 - s^2``, kept in a unique normal form.

Coefficients are ``int`` or :class:`fractions.Fraction`; nothing here ever
touches floating point.
"""

from __future__ import annotations

import functools
import json
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Rational = Union[int, Fraction]
Exponents = tuple[int, int, int]

__all__ = [
    "LaurentPoly",
    "TracePolynomial",
    "ScalarValue",
    "exact_divide",
    "substitute_z",
    "specialize_E",
    "equals",
    "parse_scalar",
    "DELTA",
    "OMEGA",
]


def _clean(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _as_rational(c) -> Rational:
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _clean(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def format_rational(c: Rational) -> str:
    c = _clean(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


class _TermPoly:
    """Shared machinery: a finite map from exponent triples to rationals."""

    __slots__ = ("_terms", "_hash")
    VARS: tuple[str, str, str] = ("x", "y", "t")

    def __init__(self, terms: Mapping[Exponents, Rational] | None = None):
        clean: dict[Exponents, Rational] = {}
        if terms:
            for key, c in terms.items():
                c = _as_rational(c)
                if c:
                    clean[tuple(key)] = c
        self._check(clean)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponents, Rational]):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    def _check(self, terms: dict[Exponents, Rational]) -> None:
        pass

    # construction helpers
    @classmethod
    def constant(cls, c: Rational = 1):
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, c: Rational = 1, a: int = 0, b: int = 0, e: int = 0):
        return cls({(a, b, e): c})

    @classmethod
    def _lift(cls, other):
        if isinstance(other, cls):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return cls.constant(other)
        return NotImplemented

    # inspection
    @property
    def terms(self) -> dict[Exponents, Rational]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponents, Rational]]:
        for key in sorted(self._terms):
            yield key, self._terms[key]

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, key: Exponents) -> Rational:
        return self._terms.get(tuple(key), 0)

    def degrees(self, index: int) -> tuple[int, int]:
        """Lowest and highest exponent of the variable at ``index``."""
        if not self._terms:
            return 0, 0
        exps = [k[index] for k in self._terms]
        return min(exps), max(exps)

    def involves(self, index: int) -> bool:
        return any(k[index] for k in self._terms)

    # ring operations
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for key, c in other._terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = _clean(v)
            else:
                out.pop(key, None)
        return type(self)._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Exponents, Rational] = {}
        for (a1, b1, e1), c1 in self._terms.items():
            for (a2, b2, e2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2, e1 + e2)
                v = out.get(key, 0) + c1 * c2
                if v:
                    out[key] = _clean(v)
                else:
                    del out[key]
        return type(self)._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            if k == -1 and self.is_monomial():
                ((key, c),) = self._terms.items()
                return type(self)({tuple(-x for x in key): Fraction(1) / c})
            raise ValueError("only non-negative integer powers (or inverse of a monomial)")
        result = type(self).constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Rational):
        c = _as_rational(c)
        if not c:
            return type(self)._raw({})
        return type(self)._raw({k: _clean(v * c) for k, v in self._terms.items()})

    def shift(self, a: int = 0, b: int = 0, e: int = 0):
        """Multiply by the monomial with the given exponents."""
        return type(self)._raw(
            {(k[0] + a, k[1] + b, k[2] + e): c for k, c in self._terms.items()}
        )

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return type(self) is type(other) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # rendering
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for key, c in self.items():
            factors = []
            for name, exp in zip(self.VARS, key):
                if exp == 1:
                    factors.append(name)
                elif exp:
                    factors.append(f"{name}^{exp}")
            mag = -c if c < 0 else c
            if factors:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{format_rational(mag)}*{body}"
            else:
                body = format_rational(mag)
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()!r})"


class LaurentPoly(_TermPoly):
    """Rational Laurent polynomial in ``q``, ``s`` (square root of lambda) and ``E``."""

    __slots__ = ()
    VARS = ("q", "s", "E")

    @classmethod
    def q(cls, k: int = 1) -> "LaurentPoly":
        return cls.monomial(1, k, 0, 0)

    @classmethod
    def s(cls, k: int = 1) -> "LaurentPoly":
        return cls.monomial(1, 0, k, 0)

    @classmethod
    def E(cls, k: int = 1) -> "LaurentPoly":
        return cls.monomial(1, 0, 0, k)

    def mirror(self) -> "LaurentPoly":
        """Apply ``q -> q^-1`` and ``s -> s^-1``; ``E`` is untouched."""
        return LaurentPoly._raw({(-a, -b, e): c for (a, b, e), c in self._terms.items()})

    def specialize_E(self, r: Rational) -> "LaurentPoly":
        r = _as_rational(r)
        if r == 0:
            raise ValueError("E cannot be specialized to 0")
        out: dict[Exponents, Rational] = {}
        for (a, b, e), c in self._terms.items():
            v = Fraction(r) ** e * c
            key = (a, b, 0)
            total = out.get(key, 0) + v
            if total:
                out[key] = _clean(total)
            else:
                out.pop(key, None)
        return LaurentPoly._raw(out)


class TracePolynomial(_TermPoly):
    """Laurent in ``q``, polynomial in the trace parameters ``z`` and ``E``."""

    __slots__ = ()
    VARS = ("q", "z", "E")

    def _check(self, terms):
        for _, ez, ee in terms:
            if ez < 0 or ee < 0:
                raise ValueError("z and E exponents must be non-negative")

    @classmethod
    def q(cls, k: int = 1) -> "TracePolynomial":
        return cls.monomial(1, k, 0, 0)

    @classmethod
    def z(cls, k: int = 1) -> "TracePolynomial":
        return cls.monomial(1, 0, k, 0)

    @classmethod
    def E(cls, k: int = 1) -> "TracePolynomial":
        return cls.monomial(1, 0, 0, k)


DELTA = LaurentPoly({(1, 0, 0): 1, (-1, 0, 0): -1})
OMEGA = LaurentPoly({(0, 0, 0): 1, (0, 2, 0): -1})


@functools.lru_cache(maxsize=None)
def _delta_pow(k: int) -> LaurentPoly:
    return DELTA**k


@functools.lru_cache(maxsize=None)
def _omega_pow(k: int) -> LaurentPoly:
    return OMEGA**k


def _univariate_divide(p: LaurentPoly, f: LaurentPoly, index: int) -> LaurentPoly | None:
    """Exact division by ``f`` when ``f`` only involves the variable at ``index``."""
    lo_f, hi_f = f.degrees(index)
    fcoef = {k[index] - lo_f: c for k, c in f._terms.items()}
    deg_f = hi_f - lo_f
    lead = fcoef[deg_f]
    groups: dict[tuple[int, int], dict[int, Rational]] = {}
    for key, c in p._terms.items():
        rest = key[:index] + key[index + 1 :]
        groups.setdefault(rest, {})[key[index]] = c
    out: dict[Exponents, Rational] = {}
    for rest, poly in groups.items():
        lo = min(poly)
        work = {e - lo: c for e, c in poly.items()}
        top = max(work)
        quotient: dict[int, Rational] = {}
        while work:
            top = max(work)
            if top < deg_f:
                return None
            if lead == 1:
                factor = work[top]
            elif lead == -1:
                factor = -work[top]
            else:
                factor = _clean(Fraction(work[top]) / lead)
            qexp = top - deg_f
            quotient[qexp] = factor
            for e, c in fcoef.items():
                v = work.get(qexp + e, 0) - factor * c
                if v:
                    work[qexp + e] = _clean(v)
                else:
                    work.pop(qexp + e, None)
        for e, c in quotient.items():
            exp = e + lo - lo_f
            key = list(rest)
            key.insert(index, exp)
            out[tuple(key)] = c
    return LaurentPoly._raw(out)


def exact_divide(p: LaurentPoly, f: LaurentPoly) -> LaurentPoly | None:
    """Return ``p / f`` if the division is exact, otherwise ``None``.

    ``f`` may be a monomial or any Laurent polynomial in a single variable
    (this covers ``DELTA``, ``OMEGA`` and factors such as ``E - 1``).
    """
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    if f.is_monomial():
        ((key, c),) = f._terms.items()
        inv = Fraction(1) / c
        return LaurentPoly._raw(
            {
                (k[0] - key[0], k[1] - key[1], k[2] - key[2]): _clean(v * inv)
                for k, v in p._terms.items()
            }
        )
    used = [i for i in range(3) if f.involves(i)]
    if len(used) != 1:
        raise ValueError("divisor must be a monomial or univariate")
    return _univariate_divide(p, f, used[0])


class ScalarValue:
    """An element ``num / (delta^d_delta * omega^d_omega)`` in normal form.

    Normal form means ``delta`` does not divide ``num`` when ``d_delta > 0``
    and likewise for ``omega``; this makes structural equality coincide with
    equality of the represented rational functions.
    """

    __slots__ = ("num", "d_delta", "d_omega")

    def __init__(self, num: LaurentPoly | Rational = 0, d_delta: int = 0, d_omega: int = 0):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.constant(num)
        if d_delta < 0 or d_omega < 0:
            raise ValueError("denominator exponents must be non-negative")
        if num.is_zero():
            d_delta = d_omega = 0
        while d_delta:
            quotient = exact_divide(num, DELTA)
            if quotient is None:
                break
            num, d_delta = quotient, d_delta - 1
        while d_omega:
            quotient = exact_divide(num, OMEGA)
            if quotient is None:
                break
            num, d_omega = quotient, d_omega - 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "d_delta", d_delta)
        object.__setattr__(self, "d_omega", d_omega)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarValue is immutable")

    # common constants
    @classmethod
    def q(cls, k: int = 1) -> "ScalarValue":
        return cls(LaurentPoly.q(k))

    @classmethod
    def s(cls, k: int = 1) -> "ScalarValue":
        return cls(LaurentPoly.s(k))

    @classmethod
    def lam(cls, k: int = 1) -> "ScalarValue":
        return cls(LaurentPoly.s(2 * k))

    @classmethod
    def E(cls, k: int = 1) -> "ScalarValue":
        return cls(LaurentPoly.E(k))

    @classmethod
    def delta(cls) -> "ScalarValue":
        return cls(DELTA)

    @classmethod
    def omega(cls) -> "ScalarValue":
        return cls(OMEGA)

    @classmethod
    def mu(cls) -> "ScalarValue":
        """``(s^-1 - s) / delta``, the value gained by adding a split unknot."""
        return cls(OMEGA.shift(0, -1, 0), d_delta=1)

    @classmethod
    def _lift(cls, other):
        if isinstance(other, ScalarValue):
            return other
        if isinstance(other, LaurentPoly):
            return cls(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return cls(LaurentPoly.constant(other))
        return NotImplemented

    # arithmetic
    def _raised(self, dd: int, dw: int) -> LaurentPoly:
        num = self.num
        if dd > self.d_delta:
            num = num * _delta_pow(dd - self.d_delta)
        if dw > self.d_omega:
            num = num * _omega_pow(dw - self.d_omega)
        return num

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        dd = max(self.d_delta, other.d_delta)
        dw = max(self.d_omega, other.d_omega)
        return ScalarValue(self._raised(dd, dw) + other._raised(dd, dw), dd, dw)

    __radd__ = __add__

    def __neg__(self):
        return ScalarValue(-self.num, self.d_delta, self.d_omega)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ScalarValue(
            self.num * other.num, self.d_delta + other.d_delta, self.d_omega + other.d_omega
        )

    __rmul__ = __mul__

    def unit_decomposition(self) -> tuple[LaurentPoly, int, int] | None:
        """Write ``num`` as ``monomial * delta^i * omega^j`` if possible."""
        num, i, j = self.num, 0, 0
        if num.is_zero():
            return None
        while not num.is_monomial():
            quotient = exact_divide(num, DELTA)
            if quotient is not None:
                num, i = quotient, i + 1
                continue
            quotient = exact_divide(num, OMEGA)
            if quotient is not None:
                num, j = quotient, j + 1
                continue
            return None
        return num, i, j

    def is_unit(self) -> bool:
        return self.unit_decomposition() is not None

    def inverse(self) -> "ScalarValue":
        parts = self.unit_decomposition()
        if parts is None:
            raise ZeroDivisionError(f"{self} is not invertible in the scalar ring")
        mono, i, j = parts
        return ScalarValue(
            mono ** -1 * _delta_pow(self.d_delta) * _omega_pow(self.d_omega), i, j
        )

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        if k < 0:
            return self.inverse() ** (-k)
        return ScalarValue(self.num**k, self.d_delta * k, self.d_omega * k)

    def divide_exact(self, f: LaurentPoly) -> "ScalarValue | None":
        """Divide the numerator exactly by ``f``; ``None`` if it does not divide."""
        quotient = exact_divide(self.num, f)
        if quotient is None:
            return None
        return ScalarValue(quotient, self.d_delta, self.d_omega)

    # substitutions
    def specialize_E(self, r: Rational) -> "ScalarValue":
        return ScalarValue(self.num.specialize_E(r), self.d_delta, self.d_omega)

    def mirror(self) -> "ScalarValue":
        """Image under ``q -> q^-1``, ``s -> s^-1`` with ``E`` fixed."""
        # delta -> -delta and omega -> -s^-2 omega
        sign = -1 if (self.d_delta + self.d_omega) % 2 else 1
        num = self.num.mirror().shift(0, 2 * self.d_omega, 0).scale(sign)
        return ScalarValue(num, self.d_delta, self.d_omega)

    # predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def has_E(self) -> bool:
        return self.num.involves(2)

    def is_laurent(self) -> bool:
        """True when there is no denominator and only even powers of ``s``."""
        return (
            self.d_delta == 0
            and self.d_omega == 0
            and all(k[1] % 2 == 0 for k in self.num._terms)
        )

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return (
            self.d_delta == other.d_delta
            and self.d_omega == other.d_omega
            and self.num == other.num
        )

    def __hash__(self):
        return hash((self.num, self.d_delta, self.d_omega))

    def __bool__(self):
        return not self.is_zero()

    # rendering
    def to_text(self) -> str:
        body = self.num.to_text()
        den = []
        if self.d_delta:
            den.append("d" if self.d_delta == 1 else f"d^{self.d_delta}")
        if self.d_omega:
            den.append("w" if self.d_omega == 1 else f"w^{self.d_omega}")
        if not den:
            return body
        return f"({body}) / ({' * '.join(den)})"

    def to_json_obj(self) -> dict:
        return {
            "num": [
                {"c": format_rational(c), "q": a, "s": b, "E": e}
                for (a, b, e), c in self.num.items()
            ],
            "d_delta": self.d_delta,
            "d_omega": self.d_omega,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "ScalarValue":
        terms = {}
        for term in obj["num"]:
            terms[(int(term["q"]), int(term["s"]), int(term["E"]))] = _clean(Fraction(term["c"]))
        return cls(LaurentPoly(terms), int(obj["d_delta"]), int(obj["d_omega"]))

    @classmethod
    def from_json(cls, text: str) -> "ScalarValue":
        return cls.from_json_obj(json.loads(text))

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ScalarValue({self.to_text()!r})"


def substitute_z(t: TracePolynomial) -> ScalarValue:
    """Replace ``z`` by ``delta*E/omega``."""
    if t.is_zero():
        return ScalarValue(0)
    top = max(k[1] for k in t._terms)
    by_power: dict[int, dict[Exponents, Rational]] = {}
    for (a, j, e), c in t._terms.items():
        by_power.setdefault(j, {})[(a, 0, j + e)] = c
    num = LaurentPoly()
    for j, terms in by_power.items():
        num = num + LaurentPoly._raw(terms) * _delta_pow(j) * _omega_pow(top - j)
    return ScalarValue(num, 0, top)


def specialize_E(v: ScalarValue, r: Rational) -> ScalarValue:
    return v.specialize_E(r)


def equals(a: ScalarValue, b: ScalarValue) -> bool:
    return a == b


def cross_equal(a: ScalarValue, b: ScalarValue) -> bool:
    """Equality by cross-multiplication, independent of normal forms."""
    left = a.num * _delta_pow(b.d_delta) * _omega_pow(b.d_omega)
    right = b.num * _delta_pow(a.d_delta) * _omega_pow(a.d_omega)
    return left == right


# A small expression language, used for the bundled reference values and for
# reading back text output: numbers, q, s, E, lam (= s^2), d, w, mu, + - * / ^
# and parentheses; juxtaposition means multiplication.

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(\S))")
_NAMES = {
    "q": lambda: ScalarValue.q(),
    "s": lambda: ScalarValue.s(),
    "E": lambda: ScalarValue.E(),
    "lam": lambda: ScalarValue.lam(),
    "lambda": lambda: ScalarValue.lam(),
    "d": ScalarValue.delta,
    "w": ScalarValue.omega,
    "mu": ScalarValue.mu,
}


class _Parser:
    def __init__(self, text: str):
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            if m.group(1):
                self.tokens.append(("num", m.group(1)))
            elif m.group(2):
                self.tokens.append(("name", m.group(2)))
            else:
                self.tokens.append(("op", m.group(3)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: str | None = None) -> tuple[str, str]:
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value or 'token'} at token {self.i}")
        self.i += 1
        return tok

    def parse(self) -> ScalarValue:
        value = self.expr()
        if self.peek() is not None:
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self) -> ScalarValue:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_factor(self) -> bool:
        tok = self.peek()
        return tok is not None and (tok[0] in ("num", "name") or tok == ("op", "("))

    def term(self) -> ScalarValue:
        value = self.power()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                value = value * self.power()
            elif tok == ("op", "/"):
                self.take()
                value = value / self.power()
            elif self._starts_factor():
                value = value * self.power()
            else:
                return value

    def power(self) -> ScalarValue:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            exponent = self.exponent()
            return base**exponent
        return base

    def exponent(self) -> int:
        sign = 1
        if self.peek() == ("op", "("):
            self.take()
            k = self.exponent()
            self.take(")")
            return k
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        kind, text = self.take()
        if kind != "num":
            raise ValueError("exponents must be integers")
        return sign * int(text)

    def atom(self) -> ScalarValue:
        kind, text = self.take()
        if kind == "num":
            return ScalarValue(int(text))
        if kind == "name":
            if text not in _NAMES:
                raise ValueError(f"unknown symbol {text!r}")
            return _NAMES[text]()
        if text == "(":
            value = self.expr()
            self.take(")")
            return value
        if text == "-":
            return -self.power()
        raise ValueError(f"unexpected token {text!r}")


def parse_scalar(text: str) -> ScalarValue:
    """Evaluate an arithmetic expression into a :class:`ScalarValue`.

    Division and negative powers are only allowed by units of the scalar
    ring (monomials times powers of ``d`` and ``w``).
    """
    return _Parser(text).parse()


def sum_scalars(values: Iterable[ScalarValue]) -> ScalarValue:
    total = ScalarValue(0)
    for v in values:
        total = total + v
    return total
