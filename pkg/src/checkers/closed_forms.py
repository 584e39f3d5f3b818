"""Binomial closed forms for amplitudes and the Young-diagram counts.

All inner sums are done in exact arithmetic (Python integers, or
``Fraction`` for rational ``mu``); only the final normalization
``(1 + mu^2)^((1 - it)/2)`` is a float.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .lattice import AmplitudePair, ExactAmplitude

VARIANTS = ("massive", "basic", "A", "B")


def binom(n: int, k: int) -> int:
    """Binomial coefficient extended to negative ``n``.

    ``C(n, k) = 0`` for ``k < 0``; for ``n < 0`` the upper index is
    continued polynomially, ``C(n, k) = (-1)^k C(k - n - 1, k)``.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    return (-1) ** k * math.comb(k - n - 1, k)


def _in_cone(ix: int, it: int) -> None:
    if it < 1 or abs(ix) >= it or (ix + it) % 2:
        raise ValueError(f"closed form needs a black site with |x| < t, got ({ix}, {it})")


@dataclass(frozen=True)
class BinomialSumSpec:
    ix: int
    it: int
    mu: Fraction | float = Fraction(1)
    variant: str = "massive"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        _in_cone(self.ix, self.it)


def explicit_sums(ix: int, it: int, mu=Fraction(1)):
    """Inner sums of the massive closed form, before normalization.

    Returns ``(S1, S2)`` with ``a_k = (1 + mu^2)^((1-it)/2) * S_k``; exact
    when ``mu`` is an int or ``Fraction``.
    """
    _in_cone(ix, it)
    n1 = (ix + it) // 2 - 1
    n2 = (it - ix) // 2 - 1
    mu2 = mu * mu
    s1 = s2 = 0
    q = 1  # mu^(2r)
    for r in range((it - abs(ix)) // 2 + 1):
        s1 += (-1) ** r * binom(n1, r) * binom(n2, r) * q * mu
        if r >= 1:
            s2 += (-1) ** r * binom(n1, r) * binom(n2, r - 1) * q
        q = q * mu2
    return s1, s2


def explicit_amplitude(spec: BinomialSumSpec | int, it: int | None = None, mu=Fraction(1)) -> AmplitudePair:
    """Closed-form amplitude at an in-cone black site.

    Accepts either a :class:`BinomialSumSpec` or ``(ix, it, mu)``.
    """
    if not isinstance(spec, BinomialSumSpec):
        spec = BinomialSumSpec(spec, it, mu)
    if spec.variant in ("A", "B"):
        return alt_explicit_basic(spec.ix, spec.it, spec.variant).to_pair()
    mu = spec.mu if spec.variant == "massive" else Fraction(1)
    s1, s2 = explicit_sums(spec.ix, spec.it, mu)
    norm = (1.0 + float(mu) ** 2) ** ((1 - spec.it) / 2)
    return AmplitudePair(float(s1) * norm, float(s2) * norm)


def explicit_exact(ix: int, it: int) -> ExactAmplitude:
    """Basic-model closed form (``m = eps = 1``) as scaled integers."""
    s1, s2 = explicit_sums(ix, it, 1)
    return ExactAmplitude(int(s1), int(s2), it)


def alt_explicit_basic(ix: int, it: int, variant: str = "A") -> ExactAmplitude:
    """The two alternative binomial sums for ``m = eps = 1``."""
    _in_cone(ix, it)
    R = (it - abs(ix)) // 2
    A1 = A2 = 0
    if variant == "A":
        h = (ix + it - 2) // 2
        for r in range(R + 1):
            c = (-2) ** r * binom(h, r)
            A1 += c * binom(it - r - 2, h)
            A2 += c * binom(it - r - 2, h - 1)
    elif variant == "B":
        ax = abs(ix)
        g = (it - ax - 2) // 2
        theta = 1 if ix >= 0 else 0
        for r in range(R + 1):
            s = (-1) ** r
            A1 += s * binom(g, r) * binom(ax, (it + ax - 4 * r - 2) // 2)
            A2 += s * binom(g, r - theta) * binom(ax, (it + ax - 4 * r) // 2)
    else:
        raise ValueError(f"variant must be 'A' or 'B', got {variant!r}")
    return ExactAmplitude(A1, A2, it)


def particular_values_poly(k: int, t: int) -> ExactAmplitude:
    """Coefficients at ``z^(t-k-1)`` and ``z^(t-k)`` of ``(1+z)^(t-k-1) (1-z)^(k-1)``.

    Scaled by ``2^((1-t)/2)`` they are ``a1(2k-t, t)`` and ``a2(2k-t, t)``.
    """
    if not 1 <= k <= t - 1:
        raise ValueError(f"need 1 <= k <= t-1, got k={k}, t={t}")
    p = [math.comb(t - k - 1, j) for j in range(t - k)]
    q = [(-1) ** j * math.comb(k - 1, j) for j in range(k)]
    coeffs = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            coeffs[i + j] += a * b

    def at(d):
        return coeffs[d] if 0 <= d < len(coeffs) else 0

    return ExactAmplitude(at(t - k - 1), at(t - k), t)


# ---------------------------------------------------------------------------
# Young diagrams

YOUNG_MAX = 10


class YoungCount(NamedTuple):
    h: int
    w: int
    n_even: int
    n_odd: int

    @property
    def total(self) -> int:
        return self.n_even + self.n_odd

    @property
    def delta(self) -> int:
        """``n_odd - n_even``."""
        return self.n_odd - self.n_even


def _diagrams(max_first: int, min_first: int, w: int):
    """Column-height sequences ``x1 >= ... >= xw >= 1`` with ``min_first <= x1 <= max_first``."""
    for first in range(min_first, max_first + 1):
        for rest in itertools.combinations_with_replacement(range(first, 0, -1), w - 1):
            yield (first,) + rest


def _count(seqs, h, w) -> YoungCount:
    even = odd = 0
    for cols in seqs:
        if len(set(cols)) % 2:
            odd += 1
        else:
            even += 1
    return YoungCount(h, w, even, odd)


def _check_young(h: int, w: int) -> None:
    if not (1 <= h <= YOUNG_MAX and 1 <= w <= YOUNG_MAX):
        raise ValueError(f"diagram size {h}x{w} outside 1..{YOUNG_MAX}")


def young_counts(h: int, w: int) -> YoungCount:
    """Diagrams with exactly ``h`` rows and ``w`` columns, split by step parity."""
    _check_young(h, w)
    return _count(_diagrams(h, h, w), h, w)


def young_counts_below(h: int, w: int) -> YoungCount:
    """Diagrams with exactly ``w`` columns and fewer than ``h`` rows."""
    _check_young(h, w)
    return _count(_diagrams(h - 1, 1, w), h, w)


def young_delta(h: int, w: int) -> int:
    """``n_odd - n_even`` by brute-force enumeration."""
    return young_counts(h, w).delta
