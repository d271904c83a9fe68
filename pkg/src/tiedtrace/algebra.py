"""The algebra of braids and ties and its Markov trace with symbolic ``E``.

Generators ``g_1..g_{n-1}`` satisfy the braid relations together with

    g_i^2 = 1 + delta * e_i * g_i,        g_i^-1 = g_i - delta * e_i,

where the ties ``e_{i,k}`` are commuting idempotents, ``e_i = e_{i,i+1}`` and
``e_{i,k} g_j = g_j e_{s_j(i), s_j(k)}``.  A product of ties only depends on
the set partition of strands it generates.

Every element is a combination of ``E_A T_w`` with ``A`` a set partition and
``w`` a permutation; ``T_w`` is the product of generators along any reduced
word of ``w``.  The trace is computed on these canonical terms, one strand at
a time:

* if ``w`` fixes the top strand, the strand is dropped (a factor ``E`` when it
  was tied to something);
* otherwise ``T_w = T_u g_{n-1} T_c`` with ``u`` and ``c`` on fewer strands, the
  piece ``T_c`` is rotated to the front, a factor ``z`` is taken out, and a
  tie of the top strand is transferred to strand ``n-1``.

Results are memoized on the canonical key ``(partition, permutation)``.
Coefficients inside this module are integer Laurent polynomials in ``q``
stored as ``{exponent: int}``; traces are :class:`TracePolynomial`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .braid import BraidWord
from .scalar import DELTA, LaurentPoly, TracePolynomial, exact_divide

__all__ = [
    "TiePartition",
    "AlgebraElement",
    "inject",
    "tie_commute",
    "reduce_square",
    "power_closed_form",
    "trace",
    "hecke_trace",
    "clear_memo",
]

QPoly = dict  # {q exponent: int}
Labels = tuple  # restricted growth string of a set partition
Perm = tuple  # 0-based one-line notation

_DELTA_Q: QPoly = {1: 1, -1: -1}


# ---------------------------------------------------------------------------
# set partitions


def _canon(labels: Iterable[int]) -> Labels:
    seen: dict[int, int] = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


def _merge(labels: Labels, a: int, b: int) -> Labels:
    la, lb = labels[a], labels[b]
    if la == lb:
        return labels
    return _canon(la if x == lb else x for x in labels)


def _act(labels: Labels, perm: Perm) -> Labels:
    """Partition ``{perm(x) : x in block}``."""
    out = [0] * len(labels)
    for x, lab in enumerate(labels):
        out[perm[x]] = lab
    return _canon(out)


@dataclass(frozen=True)
class TiePartition:
    """A set partition of strands ``1..n``; blocks sorted by least element."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks if b))
        flat = [x for b in blocks for x in b]
        if sorted(flat) != list(range(1, len(flat) + 1)):
            raise ValueError("blocks must partition 1..n")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def singletons(cls, n: int) -> "TiePartition":
        return cls(tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def from_labels(cls, labels: Labels) -> "TiePartition":
        groups: dict[int, list[int]] = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x + 1)
        return cls(tuple(tuple(g) for g in groups.values()))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "TiePartition":
        labels = tuple(range(n))
        for i, k in pairs:
            labels = _merge(labels, i - 1, k - 1)
        return cls.from_labels(labels)

    @property
    def strands(self) -> int:
        return sum(len(b) for b in self.blocks)

    def labels(self) -> Labels:
        out = [0] * self.strands
        for idx, block in enumerate(self.blocks):
            for x in block:
                out[x - 1] = idx
        return _canon(out)

    def merge(self, i: int, k: int) -> "TiePartition":
        return TiePartition.from_labels(_merge(self.labels(), i - 1, k - 1))

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


def tie_commute(P: TiePartition, i: int) -> TiePartition:
    """Partition obtained by swapping strands ``i`` and ``i+1``."""
    n = P.strands
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for {n} strands")
    swap = list(range(n))
    swap[i - 1], swap[i] = i, i - 1
    return TiePartition.from_labels(_act(P.labels(), tuple(swap)))


# ---------------------------------------------------------------------------
# integer Laurent polynomials in q


def _qadd_into(target: QPoly, poly: QPoly, factor: int = 1) -> None:
    for e, c in poly.items():
        v = target.get(e, 0) + factor * c
        if v:
            target[e] = v
        else:
            target.pop(e, None)


def _qmul(a: QPoly, b: QPoly) -> QPoly:
    out: QPoly = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def _qdelta(a: QPoly) -> QPoly:
    out: QPoly = {}
    for e, c in a.items():
        for shift, sign in ((1, 1), (-1, -1)):
            k = e + shift
            v = out.get(k, 0) + sign * c
            if v:
                out[k] = v
            else:
                del out[k]
    return out


# ---------------------------------------------------------------------------
# canonical-basis engine


def _reduced_word(perm: Perm) -> list[int]:
    """0-based generator indices ``a`` with ``perm = s_{a1} o s_{a2} o ...``."""
    w = list(perm)
    found = []
    while True:
        for a in range(len(w) - 1):
            if w[a] > w[a + 1]:
                w[a], w[a + 1] = w[a + 1], w[a]
                found.append(a)
                break
        else:
            return found[::-1]


def _swap_chain(x: int, lo: int, hi: int) -> int:
    """Image of ``x`` under ``s_{hi-1} o ... o s_lo`` (0-based generators)."""
    for a in range(lo, hi):
        if x == a:
            x = a + 1
        elif x == a + 1:
            x = a
    return x


class _Engine:
    """Right multiplication and the trace on ``E_A T_w`` terms.

    With ``ties=False`` every tie is replaced by 1, which is the
    specialization ``E = 1`` (the Hecke algebra and its Ocneanu trace).
    """

    def __init__(self, ties: bool):
        self.ties = ties
        self.memo: dict[tuple, dict] = {}

    def key(self, labels: Labels, perm: Perm) -> tuple:
        return (labels if self.ties else None, perm)

    def mul_gen(self, element: dict, a: int, inverse: bool = False) -> dict:
        """Right-multiply by ``g_{a+1}`` (or its inverse)."""
        out: dict = {}
        b = a + 1

        def add(key, poly):
            slot = out.get(key)
            if slot is None:
                out[key] = dict(poly)
            else:
                _qadd_into(slot, poly)
                if not slot:
                    del out[key]

        for (labels, w), coeff in element.items():
            u = list(w)
            u[a], u[b] = u[b], u[a]
            u = tuple(u)
            if w[a] < w[b]:
                add((labels, u), coeff)
            else:
                add((labels, u), coeff)
                tied = _merge(labels, w[a], w[b]) if self.ties else None
                add((tied, w), _qdelta(coeff))
            if inverse:
                tied = _merge(labels, w[a], w[b]) if self.ties else None
                add((tied, w), {e: -c for e, c in _qdelta(coeff).items()})
        return out

    def expand_word(self, element: dict, letters: Iterable[int]) -> dict:
        for a in letters:
            element = self.mul_gen(element, abs(a) - 1, inverse=a < 0)
        return element

    def trace_basis(self, labels: Labels, w: Perm) -> dict:
        key = (labels, w)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        result = self._trace_basis(labels, w)
        self.memo[key] = result
        return result

    def _trace_basis(self, labels: Labels, w: Perm) -> dict:
        n = len(w)
        if n <= 1:
            return {(0, 0, 0): 1}
        top = n - 1
        if w[top] == top:
            sub_labels = _canon(labels[:top]) if self.ties else None
            inner = self.trace_basis(sub_labels, w[:top])
            if self.ties and labels[top] in labels[:top]:
                return {(a, z, e + 1): c for (a, z, e), c in inner.items()}
            return inner
        k = w.index(top)
        # w = u o s_top o c  with  c = s_{top-1} o ... o s_{k+1}  (0-based names)
        c = tuple(_swap_chain(x, k, top - 1) for x in range(n))
        full_c = tuple(_swap_chain(x, k, top) for x in range(n))
        # u = w o full_c^-1
        inv = [0] * n
        for x, y in enumerate(full_c):
            inv[y] = x
        u = tuple(w[inv[x]] for x in range(n))
        assert u[top] == top
        partner = None
        if self.ties:
            moved = _act(labels, c)
            partner = next((x for x in range(top) if moved[x] == moved[top]), None)
            start_labels = _canon(moved[:top])
        else:
            start_labels = None
        start = {(start_labels, c[:top]): {0: 1}}
        expanded = start
        for a in _reduced_word(u[:top]):
            expanded = self.mul_gen(expanded, a)
        total: dict = {}
        for (sub_labels, v), coeff in expanded.items():
            if partner is not None:
                vinv = v.index(partner)
                sub_labels = _merge(sub_labels, vinv, top - 1)
            inner = self.trace_basis(sub_labels, v)
            for qe, qc in coeff.items():
                for (a, zexp, e), tc in inner.items():
                    key = (a + qe, zexp + 1, e)
                    val = total.get(key, 0) + qc * tc
                    if val:
                        total[key] = val
                    else:
                        total.pop(key, None)
        return total

    def trace_element(self, element: Mapping) -> dict:
        total: dict = {}
        for (labels, w), coeff in element.items():
            inner = self.trace_basis(labels, w)
            for qe, qc in coeff.items():
                for (a, z, e), tc in inner.items():
                    key = (a + qe, z, e)
                    val = total.get(key, 0) + qc * tc
                    if val:
                        total[key] = val
                    else:
                        total.pop(key, None)
        return total

    def identity(self, n: int) -> dict:
        labels = tuple(range(n)) if self.ties else None
        return {(labels, tuple(range(n))): {0: 1}}


_TIES = _Engine(ties=True)
_HECKE = _Engine(ties=False)


def clear_memo() -> None:
    _TIES.memo.clear()
    _HECKE.memo.clear()


def trace(w: BraidWord) -> TracePolynomial:
    """Markov trace of the braid with ``z`` and ``E`` kept symbolic."""
    element = _TIES.expand_word(_TIES.identity(w.strands), w.letters)
    return TracePolynomial(_TIES.trace_element(element))


def hecke_trace(w: BraidWord) -> TracePolynomial:
    """The ``E = 1`` specialization of :func:`trace`, computed without ties."""
    element = _HECKE.expand_word(_HECKE.identity(w.strands), w.letters)
    return TracePolynomial(_HECKE.trace_element(element))


# ---------------------------------------------------------------------------
# word-level elements


def _word_perm(n: int, word: tuple[int, ...]) -> Perm:
    perm = list(range(n))
    for i in word:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def _push_tie_left(P: TiePartition, word: tuple[int, ...], i: int, k: int) -> TiePartition:
    """Tie ``e_{i,k}`` written after ``word`` moved in front of it."""
    perm = _word_perm(P.strands, word)
    return P.merge(perm[i - 1] + 1, perm[k - 1] + 1)


def _tp_from_q(poly: QPoly) -> TracePolynomial:
    return TracePolynomial({(e, 0, 0): c for e, c in poly.items()})


class AlgebraElement:
    """Combination of terms ``e_P * g_{i1} ... g_{ik}`` with ties on the left."""

    __slots__ = ("strands", "terms")

    def __init__(self, strands: int, terms: Mapping[tuple[TiePartition, tuple[int, ...]], TracePolynomial] | None = None):
        self.strands = strands
        clean = {}
        for (P, word), c in (terms or {}).items():
            if not isinstance(c, TracePolynomial):
                c = TracePolynomial.constant(c)
            if P.strands != strands:
                raise ValueError("tie partition has the wrong number of strands")
            if any(not 1 <= i < strands for i in word):
                raise ValueError("generator index out of range")
            if not c.is_zero():
                key = (P, tuple(word))
                clean[key] = clean[key] + c if key in clean else c
                if clean[key].is_zero():
                    del clean[key]
        self.terms = clean

    @classmethod
    def one(cls, n: int) -> "AlgebraElement":
        return cls(n, {(TiePartition.singletons(n), ()): TracePolynomial.constant(1)})

    @classmethod
    def generator(cls, n: int, i: int) -> "AlgebraElement":
        return cls(n, {(TiePartition.singletons(n), (i,)): TracePolynomial.constant(1)})

    @classmethod
    def tie(cls, n: int, i: int, k: int) -> "AlgebraElement":
        return cls(n, {(TiePartition.from_pairs(n, [(i, k)]), ()): TracePolynomial.constant(1)})

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return AlgebraElement(self.strands, terms)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.strands, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c: TracePolynomial) -> "AlgebraElement":
        return AlgebraElement(self.strands, {k: v * c for k, v in self.terms.items()})

    def _same(self, other: "AlgebraElement") -> None:
        if self.strands != other.strands:
            raise ValueError("elements live on different strand counts")

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        """Product of two elements; ties of ``other`` are pushed left."""
        self._same(other)
        terms: dict = {}
        for (P1, w1), c1 in self.terms.items():
            perm = _word_perm(self.strands, w1)
            for (P2, w2), c2 in other.terms.items():
                P = P1
                for block in P2.blocks:
                    for x in block[1:]:
                        P = P.merge(perm[block[0] - 1] + 1, perm[x - 1] + 1)
                key = (P, w1 + w2)
                c = c1 * c2
                terms[key] = terms[key] + c if key in terms else c
        return AlgebraElement(self.strands, terms)

    def times_letter(self, a: int) -> "AlgebraElement":
        """Right-multiply by ``g_a`` (``a > 0``) or ``g_|a|^-1`` (``a < 0``)."""
        i = abs(a)
        terms: dict = {}
        for (P, word), c in self.terms.items():
            key = (P, word + (i,))
            terms[key] = terms[key] + c if key in terms else c
            if a < 0:
                key = (_push_tie_left(P, word, i, i + 1), word)
                d = c * TracePolynomial({(1, 0, 0): -1, (-1, 0, 0): 1})
                terms[key] = terms[key] + d if key in terms else d
        return AlgebraElement(self.strands, terms)

    def normal_form(self) -> dict:
        """Canonical ``{(partition, permutation): {q exponent: coefficient}}`` form.

        Only elements with coefficients in ``q`` alone can be normalized.
        """
        out: dict = {}
        for (P, word), c in self.terms.items():
            if any(k[1] or k[2] for k in c.terms):
                raise ValueError("normal_form needs coefficients free of z and E")
            start = {(P.labels(), tuple(range(self.strands))): {k[0]: v for k, v in c.terms.items()}}
            for key, poly in _TIES.expand_word(start, word).items():
                slot = out.setdefault(key, {})
                _qadd_into(slot, poly)
                if not slot:
                    del out[key]
        return out

    def equivalent(self, other: "AlgebraElement") -> bool:
        self._same(other)
        return (self - other).normal_form() == {}

    def trace(self) -> TracePolynomial:
        total = TracePolynomial()
        for (P, word), c in self.terms.items():
            start = {(P.labels(), tuple(range(self.strands))): {0: 1}}
            value = TracePolynomial(_TIES.trace_element(_TIES.expand_word(start, word)))
            total = total + c * value
        return total

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.strands == other.strands
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        parts = [f"({c}) {P} g{list(w)}" for (P, w), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0].blocks, kv[0][1]))]
        return f"AlgebraElement[{self.strands}](" + " + ".join(parts) + ")"


def inject(w: BraidWord) -> AlgebraElement:
    """Image of a braid, inverses rewritten as ``g_i - delta * e_i``."""
    element = AlgebraElement.one(w.strands)
    for a in w.letters:
        element = element.times_letter(a)
    return element


def reduce_square(P: TiePartition, word: tuple[int, ...], position: int,
                  coeff: TracePolynomial | int = 1) -> AlgebraElement:
    """Rewrite ``word[position] == word[position+1]`` via the quadratic relation."""
    word = tuple(word)
    if not 0 <= position < len(word) - 1 or word[position] != word[position + 1]:
        raise ValueError("no square at this position")
    if not isinstance(coeff, TracePolynomial):
        coeff = TracePolynomial.constant(coeff)
    i = word[position]
    prefix, suffix = word[:position], word[position + 2 :]
    tied = _push_tie_left(P, prefix, i, i + 1)
    delta = TracePolynomial({(1, 0, 0): 1, (-1, 0, 0): -1})
    return AlgebraElement(
        P.strands,
        {
            (P, prefix + suffix): coeff,
            (tied, prefix + (i,) + suffix): coeff * delta,
        },
    )


def _q_ratio(numer: LaurentPoly) -> TracePolynomial:
    denom = LaurentPoly({(1, 0, 0): 1, (-1, 0, 0): 1})
    quotient = exact_divide(numer, denom)
    assert quotient is not None
    return TracePolynomial({(k[0], 0, 0): c for k, c in quotient.items()})


def power_closed_form(i: int, r: int, strands: int | None = None) -> AlgebraElement:
    """``g_i^r`` as a combination of ``1``, ``e_i``, ``g_i`` and ``e_i g_i``."""
    n = strands if strands is not None else i + 1
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for {n} strands")
    q = LaurentPoly.q
    plain = TiePartition.singletons(n)
    tied = TiePartition.from_pairs(n, [(i, i + 1)])
    one = TracePolynomial.constant(1)
    if r % 2:
        a = _q_ratio(q(r) + q(-r))
        b = _q_ratio(q(r - 1) - q(1 - r))
        terms = {(plain, (i,)): one, (tied, (i,)): a - one, (tied, ()): b}
    else:
        a = _q_ratio(q(r) - q(-r))
        b = _q_ratio(q(r - 1) + q(1 - r))
        terms = {(plain, ()): one, (tied, ()): b - one, (tied, (i,)): a}
    return AlgebraElement(n, terms)
