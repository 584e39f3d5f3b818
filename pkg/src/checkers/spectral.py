"""Fourier-integral amplitudes, anti-amplitudes ``b_k`` and plane waves.

In the dimensionless momentum ``q = p*eps`` the amplitude integrals read

    A1 = i mu/(2 pi)  int e^{i q ix - i W(q)(it-1)} / sqrt(mu^2 + sin^2 q) dq
    A2 = 1/(2 pi)     int (1 + sin q / sqrt(mu^2 + sin^2 q)) e^{i q (ix-1) - i W(q)(it-1)} dq

over one period, with ``W(q) = arccos(cos q / sqrt(1 + mu^2))``.  The
integrands are smooth and periodic for ``mu > 0`` so the trapezoid rule
converges geometrically; nodes are doubled until two successive estimates
agree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .lattice import AmplitudePair, LatticeParams, UNIT
from .specfun import GAUSS_G, LEMNISCATE_INV

MAX_NODES = 2 ** 20


class ConvergenceError(RuntimeError):
    pass


def omega(p, params: LatticeParams = UNIT):
    """Dispersion ``omega_p = arccos(cos(p eps) / sqrt(1 + mu^2)) / eps``."""
    mu = params.mu
    return np.arccos(np.cos(np.asarray(p) * params.eps) / math.sqrt(1 + mu * mu)) / params.eps


def _integrands(q: np.ndarray, ix: int, it: int, mu: float):
    w = np.arccos(np.cos(q) / math.sqrt(1 + mu * mu))
    root = np.sqrt(mu * mu + np.sin(q) ** 2)
    phase = np.exp(-1j * w * (it - 1))
    f1 = np.exp(1j * q * ix) * phase / root
    f2 = (1 + np.sin(q) / root) * np.exp(1j * q * (ix - 1)) * phase
    return f1, f2


def _trapezoid(ix: int, it: int, mu: float, tol: float):
    n = 64
    while n < 4 * (abs(ix) + abs(it) + 2):
        n *= 2
    q = -math.pi + 2 * math.pi * np.arange(n) / n
    f1, f2 = _integrands(q, ix, it, mu)
    s1, s2 = f1.mean(), f2.mean()
    while True:
        if 2 * n > MAX_NODES:
            raise ConvergenceError(f"trapezoid rule did not converge at ({ix}, {it}) with {n} nodes")
        mid = q + math.pi / n
        g1, g2 = _integrands(mid, ix, it, mu)
        t1, t2 = (s1 + g1.mean()) / 2, (s2 + g2.mean()) / 2
        q = np.sort(np.concatenate([q, mid]))
        n *= 2
        err = max(abs(t1 - s1) * mu, abs(t2 - s2))
        s1, s2 = t1, t2
        if err < tol:
            return 1j * mu * s1, s2, err


class AntiAmplitude(NamedTuple):
    """Values ``A_k`` at one site; ``b_k`` is the imaginary part on white sites."""

    A1: complex
    A2: complex
    odd: bool

    @property
    def b1(self) -> float:
        return self.A1.imag if self.odd else 0.0

    @property
    def b2(self) -> float:
        return self.A2.imag if self.odd else 0.0


def _massless(ix: int, it: int) -> tuple[complex, complex]:
    # 1 + sign(sin q) kills q < 0 and W(q) = |q|, so A2 = (1/pi) int_0^pi e^{i q (ix - it)} dq
    n = ix - it
    if n == 0:
        a2 = 1.0 + 0j
    elif n % 2 == 0:
        a2 = 0j
    else:
        a2 = 2j / (math.pi * n)
    return 0j, a2


def fourier_components(ix: int, it: int, params: LatticeParams = UNIT,
                       tol: float = 1e-10) -> tuple[complex, complex]:
    """Raw integrals ``(A1, A2)`` at any lattice site, before the sign rule."""
    mu = params.mu
    if mu == 0:
        return _massless(ix, it)
    a1, a2, _ = _trapezoid(ix, it, mu, tol)
    return complex(a1), complex(a2)


def anti_amplitude(ix: int, it: int, params: LatticeParams = UNIT,
                   tol: float = 1e-10, residue_tol: float = 1e-9) -> AntiAmplitude:
    """``A_k`` on any site: equals ``a_k`` on black sites with ``it >= 1`` and ``i b_k`` on white ones."""
    a1, a2 = fourier_components(ix, it, params, tol)
    odd = (ix + it) % 2 == 1
    if not odd and it <= 0:
        a1, a2 = -a1, -a2
    if odd:
        if max(abs(a1.real), abs(a2.real)) > residue_tol:
            raise ConvergenceError(f"white-site value at ({ix}, {it}) is not purely imaginary: {a1}, {a2}")
        a1, a2 = 1j * a1.imag, 1j * a2.imag
    else:
        if max(abs(a1.imag), abs(a2.imag)) > residue_tol:
            raise ConvergenceError(f"black-site value at ({ix}, {it}) is not real: {a1}, {a2}")
        a1, a2 = complex(a1.real), complex(a2.real)
    return AntiAmplitude(a1, a2, odd)


def fourier_amplitude(ix: int, it: int, params: LatticeParams = UNIT, tol: float = 1e-10) -> AmplitudePair:
    """Amplitude at a black site ``it >= 1`` from its Fourier integral."""
    if it < 1 or (ix + it) % 2:
        raise ValueError(f"({ix}, {it}) is not a black site with it >= 1")
    if params.mu == 0:
        raise ValueError("the Fourier integral needs m > 0")
    A = anti_amplitude(ix, it, params, tol)
    return AmplitudePair(A.A1.real, A.A2.real)


def b_values(ix: int, it: int, params: LatticeParams = UNIT) -> tuple[float, float]:
    A = anti_amplitude(ix, it, params)
    return A.b1, A.b2


# ---------------------------------------------------------------------------
# b-values at m = eps = 1 as combinations of G and L'

SQRT2 = math.sqrt(2)

# (k, ix, it) -> (coefficient of G, coefficient of L', power of 1/sqrt 2)
B_TABLE: dict[tuple[int, int, int], tuple[Fraction, Fraction, int]] = {
    (1, -1, 2): (Fraction(1), Fraction(-1), 1),
    (1, 1, 2): (Fraction(1), Fraction(-1), 1),
    (1, 3, 2): (Fraction(7, 3), Fraction(-5), 1),
    (1, 0, 1): (Fraction(1), Fraction(0), 0),
    (1, 2, 1): (Fraction(1), Fraction(-2), 0),
    (1, -1, 0): (Fraction(1), Fraction(-1), 1),
    (1, 1, 0): (Fraction(1), Fraction(-1), 1),
    (1, 3, 0): (Fraction(7, 3), Fraction(-5), 1),
    (1, 0, -1): (Fraction(0), Fraction(-1), 0),
    (1, 2, -1): (Fraction(2, 3), Fraction(-1), 0),
    (2, -1, 2): (Fraction(1, 3), Fraction(-1), 1),
    (2, 1, 2): (Fraction(-1), Fraction(-1), 1),
    (2, 3, 2): (Fraction(-1), Fraction(3), 1),
    (2, 0, 1): (Fraction(0), Fraction(-1), 0),
    (2, 2, 1): (Fraction(0), Fraction(1), 0),
    (2, -1, 0): (Fraction(1), Fraction(-3), 1),
    (2, 1, 0): (Fraction(1), Fraction(1), 1),
    (2, 3, 0): (Fraction(-1, 3), Fraction(1), 1),
    (2, 0, -1): (Fraction(1), Fraction(0), 0),
    (2, 2, -1): (Fraction(1, 3), Fraction(0), 0),
}


def b_table_value(k: int, ix: int, it: int) -> float:
    cg, cl, p = B_TABLE[(k, ix, it)]
    return (float(cg) * GAUSS_G + float(cl) * LEMNISCATE_INV) / SQRT2 ** p


# ---------------------------------------------------------------------------
# plane waves


@dataclass(frozen=True)
class Dispersion:
    """Plane-wave solution with wavelength ``lam`` and period ``T``."""

    lam: float
    T: float
    alpha: float
    a: complex
    b: complex
    params: LatticeParams


def dispersion_solve(lam: float, params: LatticeParams = UNIT,
                     a1_0: complex = 1.0, a2_0: complex = 0.0) -> Dispersion:
    """Solve for ``T``, ``alpha`` and the mode coefficients given the row ``t = 0``.

    ``lam = inf`` is allowed (spatially constant initial row).
    """
    if not lam > 0:
        raise ValueError("wavelength must be positive")
    eps, mu = params.eps, params.mu
    k = 0.0 if math.isinf(lam) else 2 * math.pi * eps / lam
    w = math.acos(math.cos(k) / math.sqrt(1 + mu * mu))
    T = math.inf if w == 0 else 2 * math.pi * eps / w
    # cot(alpha) = sin(k) / mu with alpha in [0, pi]
    alpha = math.atan2(mu, math.sin(k))
    c, s = math.cos(alpha / 2), math.sin(alpha / 2)
    a = a1_0 * c - 1j * a2_0 * s
    b = a1_0 * s + 1j * a2_0 * c
    return Dispersion(lam, T, alpha, complex(a), complex(b), params)


def wave_eval(d: Dispersion, x, t):
    """Shifted components ``(a1~, a2~)`` at real coordinates ``x, t`` (arrays allowed)."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    kx = 0.0 if math.isinf(d.lam) else 2 * math.pi / d.lam
    wt = 0.0 if math.isinf(d.T) else 2 * math.pi / d.T
    plus = np.exp(1j * (kx * x + wt * t))
    minus = np.exp(1j * (kx * x - wt * t))
    c, s = math.cos(d.alpha / 2), math.sin(d.alpha / 2)
    a1 = d.a * c * plus + d.b * s * minus
    a2 = 1j * d.a * s * plus - 1j * d.b * c * minus
    return a1, a2


def dirac_residual(d: Dispersion, ix: np.ndarray, it: np.ndarray) -> float:
    """Max residual of the shifted lattice Dirac system on the given sites."""
    eps, mu = d.params.eps, d.params.mu
    c = 1 / math.sqrt(1 + mu * mu)
    x = np.asarray(ix) * eps
    t = np.asarray(it) * eps
    a1, a2 = wave_eval(d, x, t)
    p1, p2 = wave_eval(d, x + eps, t - eps)
    q1, q2 = wave_eval(d, x, t - eps)
    r1, r2 = wave_eval(d, x - eps, t - eps)
    res1 = a1 - c * (p1 + mu * q2)
    res2 = a2 - c * (r2 - mu * q1)
    return float(max(np.max(np.abs(res1)), np.max(np.abs(res2))))
