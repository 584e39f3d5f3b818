"""Dynamic-programming engines for checker amplitudes.

Coordinates are integers ``ix = x/eps`` and ``it = t/eps``.  The source is
the origin and every path starts with the move ``(0,0) -> (1,1)``, so the
first non-trivial row is ``it = 1`` where ``a(1,1) = i``.  Amplitudes live
on black sites (``ix + it`` even) inside ``-it < ix <= it``.

Two engines are provided:

* an integer engine for ``m = eps = 1`` where the ``1/sqrt(2)`` factors are
  pulled out into a common scale ``2**((it-1)/2)``; it is exact and serves as
  the oracle for everything else;
* a float engine for arbitrary ``mu = m*eps`` that keeps two rows at a time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, NamedTuple

import numpy as np


@dataclass(frozen=True)
class LatticeParams:
    """Mass ``m`` (inverse length) and lattice step ``eps`` (length)."""

    m: float = 1.0
    eps: float = 1.0

    def __post_init__(self):
        if not (self.m >= 0 and math.isfinite(self.m)):
            raise ValueError(f"mass must be finite and >= 0, got {self.m}")
        if not (self.eps > 0 and math.isfinite(self.eps)):
            raise ValueError(f"lattice step must be finite and > 0, got {self.eps}")

    @property
    def mu(self) -> float:
        return self.m * self.eps

    @classmethod
    def from_mu(cls, mu: float) -> "LatticeParams":
        return cls(m=float(mu), eps=1.0)


UNIT = LatticeParams(1.0, 1.0)


class AmplitudePair(NamedTuple):
    a1: complex | float
    a2: complex | float

    @property
    def a(self) -> complex:
        """``a1 + i a2``; meaningful for real-valued components."""
        return complex(self.a1) + 1j * complex(self.a2)

    @property
    def P(self) -> float:
        return abs(self.a1) ** 2 + abs(self.a2) ** 2


class ExactAmplitude(NamedTuple):
    """Integer amplitude for ``m = eps = 1``: ``a_k = A_k * 2**(-(it-1)/2)``."""

    A1: int
    A2: int
    it: int

    @property
    def scale(self) -> float:
        return 2.0 ** ((self.it - 1) / 2)

    def to_pair(self) -> AmplitudePair:
        s = self.scale
        return AmplitudePair(self.A1 / s, self.A2 / s)

    @property
    def P(self):
        """Probability as an exact fraction."""
        from fractions import Fraction

        return Fraction(self.A1 ** 2 + self.A2 ** 2, 2 ** (self.it - 1))


def _check_time(it: int) -> None:
    if it < 1:
        raise ValueError(f"time index must be >= 1, got {it}")


# ---------------------------------------------------------------------------
# integer engine (m = eps = 1)


def exact_rows(it_max: int, absorb=None) -> Iterator[tuple[int, dict[int, int], dict[int, int]]]:
    """Yield ``(it, A1, A2)`` for ``it = 1..it_max``; dicts keyed by ``ix``.

    With an ``AbsorptionSet`` the yielded rows still hold the values at
    absorbing sites (paths may end there) but nothing passes through them.
    """
    _check_time(it_max)
    A1: dict[int, int] = {1: 0}
    A2: dict[int, int] = {1: 1}
    yield 1, A1, A2
    for it in range(1, it_max):
        if absorb:
            A1 = {ix: v for ix, v in A1.items() if (ix, it) not in absorb}
            A2 = {ix: v for ix, v in A2.items() if (ix, it) not in absorb}
        n1: dict[int, int] = {}
        n2: dict[int, int] = {}
        for ix in range(1 - it, it + 2, 2):
            # a1(x,t+1) <- (x+1,t);  a2(x,t+1) <- (x-1,t)
            n1[ix] = A2.get(ix + 1, 0) + A1.get(ix + 1, 0)
            n2[ix] = A2.get(ix - 1, 0) - A1.get(ix - 1, 0)
        A1, A2 = n1, n2
        yield it + 1, A1, A2


def exact_row(it: int, absorb=None) -> tuple[dict[int, int], dict[int, int]]:
    for _, A1, A2 in exact_rows(it, absorb):
        pass
    return A1, A2


def amplitude_exact(ix: int, it: int, absorb=None) -> ExactAmplitude:
    """Exact integer-scaled amplitude of the basic model (``m = eps = 1``),
    optionally over paths that bypass ``absorb``."""
    _check_time(it)
    if ix > it or ix <= -it or (ix + it) % 2:
        return ExactAmplitude(0, 0, it)
    A1, A2 = exact_row(it, absorb)
    return ExactAmplitude(A1.get(ix, 0), A2.get(ix, 0), it)


# ---------------------------------------------------------------------------
# absorption


@dataclass(frozen=True)
class AbsorptionSet:
    """Absorbing sites plus optional vertical barriers ``{x = n}``.

    ``sites`` holds ``(ix, it)`` pairs, ``columns`` holds ``ix`` values of
    barrier lines.  The source ``(0, 0)`` is always exempt.
    """

    sites: frozenset = frozenset()
    columns: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "sites", frozenset(tuple(s) for s in self.sites))
        object.__setattr__(self, "columns", frozenset(int(c) for c in self.columns))
        if (0, 0) in self.sites:
            raise ValueError("the source (0, 0) cannot be absorbing")

    @classmethod
    def barrier(cls, *columns: int) -> "AbsorptionSet":
        return cls(columns=frozenset(columns))

    def __bool__(self) -> bool:
        return bool(self.sites or self.columns)

    def __contains__(self, site) -> bool:
        ix, it = site
        return ix in self.columns or (ix, it) in self.sites

    def row_indices(self, it: int, offset: int, width: int) -> list[int]:
        idx = [c + offset for c in self.columns]
        idx += [ix + offset for ix, t in self.sites if t == it]
        return [j for j in idx if 0 <= j < width]


NO_ABSORPTION = AbsorptionSet()


# ---------------------------------------------------------------------------
# float engine


class Row(NamedTuple):
    """One horizontal of the float engine; ``a1[j]`` is the value at ``ix = j - offset``."""

    it: int
    a1: np.ndarray
    a2: np.ndarray
    offset: int

    def at(self, ix: int) -> AmplitudePair:
        j = ix + self.offset
        if 0 <= j < len(self.a1):
            return AmplitudePair(self.a1[j], self.a2[j])
        return AmplitudePair(0.0, 0.0)

    @property
    def ix(self) -> np.ndarray:
        return np.arange(len(self.a1)) - self.offset

    @property
    def P(self) -> np.ndarray:
        return np.abs(self.a1) ** 2 + np.abs(self.a2) ** 2


def iter_rows(it_max: int, params: LatticeParams = UNIT,
              absorb: AbsorptionSet = NO_ABSORPTION) -> Iterator[Row]:
    """Float rows ``it = 1..it_max`` of the massive model.

    Absorbing sites are zeroed after each intermediate row is produced; the
    final row is never zeroed, so paths may end in B.  Yielded rows hold the
    values *before* absorption and the engine continues from a zeroed copy.
    """
    _check_time(it_max)
    mu = params.mu
    c = 1.0 / math.sqrt(1.0 + mu * mu)
    width = 2 * it_max + 3
    offset = it_max + 1
    a1 = np.zeros(width)
    a2 = np.zeros(width)
    a2[1 + offset] = 1.0
    for it in range(1, it_max + 1):
        yield Row(it, a1, a2, offset)
        if it == it_max:
            break
        if absorb:
            idx = absorb.row_indices(it, offset, width)
            if idx:
                a1 = a1.copy()
                a2 = a2.copy()
                a1[idx] = 0.0
                a2[idx] = 0.0
        n1 = np.zeros(width)
        n2 = np.zeros(width)
        n1[:-1] = c * (a1[1:] + mu * a2[1:])
        n2[1:] = c * (a2[:-1] - mu * a1[:-1])
        a1, a2 = n1, n2


def row(it: int, params: LatticeParams = UNIT,
        absorb: AbsorptionSet = NO_ABSORPTION) -> Row:
    for r in iter_rows(it, params, absorb):
        pass
    return r


def amplitude_dp(ix: int, it: int, params: LatticeParams = UNIT) -> AmplitudePair:
    """Amplitude ``(a1, a2)`` at ``(ix*eps, it*eps)`` by forward recursion."""
    _check_time(it)
    a1, a2 = row(it, params).at(ix)
    return AmplitudePair(float(a1), float(a2))


def probability(ix: int, it: int, params: LatticeParams = UNIT) -> float:
    return amplitude_dp(ix, it, params).P


def grid(it_max: int, params: LatticeParams = UNIT) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full space-time grid: ``(ix, a1, a2)`` with ``a1[it-1, j]`` at ``ix[j]``."""
    width = 2 * it_max + 3
    g1 = np.zeros((it_max, width))
    g2 = np.zeros((it_max, width))
    for r in iter_rows(it_max, params):
        g1[r.it - 1] = r.a1
        g2[r.it - 1] = r.a2
    return np.arange(width) - (it_max + 1), g1, g2


def amplitude_bypass(ix: int, it: int, params: LatticeParams = UNIT,
                     absorb: AbsorptionSet = NO_ABSORPTION) -> AmplitudePair:
    """Amplitude over paths avoiding ``absorb`` except at the endpoints."""
    _check_time(it)
    a1, a2 = row(it, params, absorb).at(ix)
    return AmplitudePair(float(a1), float(a2))


def absorption_partial_sums(t_max: int, barrier: AbsorptionSet,
                            ix: int = 0, params: LatticeParams = UNIT) -> np.ndarray:
    """``S[k] = sum_{t=1..k+1} P(ix, t bypass barrier)``.

    One sweep suffices: the value at ``(ix, t)`` before zeroing is exactly
    the bypass amplitude with endpoint ``(ix, t)``.
    """
    probs = np.empty(t_max)
    for r in iter_rows(t_max, params, barrier):
        probs[r.it - 1] = r.P[ix + r.offset]
    return np.cumsum(probs)


def absorption_partial_sum(t_max: int, barrier: AbsorptionSet,
                           ix: int = 0, params: LatticeParams = UNIT) -> float:
    return float(absorption_partial_sums(t_max, barrier, ix, params)[-1])


def richardson_tail(partial: np.ndarray, power: float = 0.5) -> float:
    """Extrapolate partial sums whose remainder decays like ``t**-power``."""
    n = len(partial)
    n2 = n // 2
    s1, s2 = partial[n2 - 1], partial[n - 1]
    r = (n2 / n) ** power
    return float((s2 - r * s1) / (1 - r))


# ---------------------------------------------------------------------------
# external gauge field (m = eps = 1)


@dataclass(frozen=True)
class GaugeField:
    """Edge weights keyed by doubled midpoints ``(2*x_mid, 2*t_mid)``.

    ``rule`` covers fields given by a formula; explicit ``weights`` override
    it.  Unlisted edges carry weight +1.
    """

    weights: Mapping[tuple[int, int], complex] = field(default_factory=dict)
    rule: Callable[[int, int], complex] | None = None

    def __post_init__(self):
        for (x2, t2), w in self.weights.items():
            if x2 % 2 == 0 or t2 % 2 == 0:
                raise ValueError(f"edge key {(x2, t2)} is not a doubled half-integer midpoint")
            if not math.isclose(abs(w), 1.0, rel_tol=0, abs_tol=1e-12):
                raise ValueError(f"edge weight {w} is not unit-modulus")

    def __call__(self, x2: int, t2: int) -> complex:
        w = self.weights.get((x2, t2))
        if w is not None:
            return w
        return self.rule(x2, t2) if self.rule is not None else 1

    @classmethod
    def homogeneous(cls) -> "GaugeField":
        """``u(x+1/2, t+1/2) = -1`` iff ``x`` and ``t`` are both even."""

        def rule(x2, t2):
            x, t = (x2 - 1) // 2, (t2 - 1) // 2
            return -1 if x % 2 == 0 and t % 2 == 0 else 1

        return cls(rule=rule)


def iter_field_rows(it_max: int, u: GaugeField) -> Iterator[Row]:
    """Complex rows of the basic model in the field ``u``."""
    _check_time(it_max)
    c = 1.0 / math.sqrt(2.0)
    width = 2 * it_max + 3
    offset = it_max + 1
    xs = np.arange(width) - offset
    a1 = np.zeros(width, dtype=complex)
    a2 = np.zeros(width, dtype=complex)
    a2[1 + offset] = u(1, 1)
    for it in range(1, it_max + 1):
        yield Row(it, a1, a2, offset)
        if it == it_max:
            break
        t2 = 2 * it + 1
        # weight of the last edge into (x, it+1): midpoint (x +- 1/2, it + 1/2)
        w_left = np.array([u(2 * x + 1, t2) for x in xs], dtype=complex)
        w_right = np.array([u(2 * x - 1, t2) for x in xs], dtype=complex)
        n1 = np.zeros(width, dtype=complex)
        n2 = np.zeros(width, dtype=complex)
        n1[:-1] = c * w_left[:-1] * (a1[1:] + a2[1:])
        n2[1:] = c * w_right[1:] * (a2[:-1] - a1[:-1])
        a1, a2 = n1, n2


def amplitude_field(ix: int, it: int, u: GaugeField) -> AmplitudePair:
    for r in iter_field_rows(it, u):
        pass
    a1, a2 = r.at(ix)
    return AmplitudePair(complex(a1), complex(a2))


def field_chirality_series(t_max: int, u: GaugeField) -> np.ndarray:
    """``sum_x |a1(x,t,u)|^2`` for ``t = 1..t_max``."""
    return np.array([float(np.sum(np.abs(r.a1) ** 2)) for r in iter_field_rows(t_max, u)])


# ---------------------------------------------------------------------------
# spin: direction-restricted amplitudes and pairs


def restricted_amplitude(dx: int, dt: int, end_dir: str, params: LatticeParams = UNIT) -> float:
    """Sum over paths starting upwards-right and ending in ``end_dir``.

    A path ends upwards-right iff it has an even number of turns, which picks
    out the ``a2`` component; ``left`` picks out ``a1``.
    """
    if end_dir not in ("left", "right"):
        raise ValueError(f"end direction must be 'left' or 'right', got {end_dir!r}")
    _check_time(dt)
    pair = amplitude_dp(dx, dt, params)
    return pair.a2 if end_dir == "right" else pair.a1


def pair_amplitude(x0: int, x: int, x_prime: int, t: int,
                   dirs: tuple[str, str] = ("right", "right"),
                   params: LatticeParams = UNIT) -> float:
    """Two-electron amplitude for sources ``(0,0)``, ``(x0,0)``.

    Final data ``(x, dirs[0])`` and ``(x_prime, dirs[1])`` at time ``t``;
    the second source is handled by translation invariance.
    """
    if x0 == 0:
        raise ValueError("the two sources must be distinct (x0 != 0)")
    d, d_prime = dirs
    direct = restricted_amplitude(x, t, d, params) * restricted_amplitude(x_prime - x0, t, d_prime, params)
    exchanged = restricted_amplitude(x_prime, t, d_prime, params) * restricted_amplitude(x - x0, t, d, params)
    return direct - exchanged


def pair_probability(x0: int, x: int, x_prime: int, t: int,
                     dirs: tuple[str, str] = ("right", "right"),
                     params: LatticeParams = UNIT) -> float:
    return abs(pair_amplitude(x0, x, x_prime, t, dirs, params)) ** 2


def chirality_series(t_max: int, params: LatticeParams = UNIT) -> np.ndarray:
    """``S1(t) = sum_x a1(x,t)^2`` for ``t = 1..t_max``."""
    return np.array([float(np.dot(r.a1, r.a1)) for r in iter_rows(t_max, params)])


def chirality_flip_sum(t: int, params: LatticeParams = UNIT) -> float:
    return float(chirality_series(t, params)[-1])


def chirality_closed(t: int):
    """Exact ``S1(t)`` at ``m = eps = 1`` as a fraction."""
    from fractions import Fraction

    return Fraction(1, 2) * sum((Fraction(math.comb(2 * k, k), (-4) ** k)
                                 for k in range(t // 2)), Fraction(0))
