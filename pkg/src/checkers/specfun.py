"""Special functions used by the asymptotic formulas.

Airy ``Ai``, Bessel ``J0, J1, Y0, Y1``, modified Bessel ``K0, K1`` and the
complete elliptic integrals, all for real arguments.  Power series are
summed in floating point where cancellation is mild and in ``decimal``
arithmetic where it is not; large arguments switch to the classical
asymptotic expansions, truncated at their smallest term.
"""
from __future__ import annotations

import math
from decimal import Decimal, localcontext
from typing import NamedTuple


class SpecfunResult(NamedTuple):
    value: float
    est_error: float


# 50-digit constants for the extended-precision series
_PI = Decimal("3.1415926535897932384626433832795028841971693993751")
_EULER = Decimal("0.57721566490153286060651209008240243104215933593992")
_AI0 = Decimal("0.35502805388781723926006318600418317639797917419918")
_AIP0 = Decimal("-0.25881940379280679840518356018920396347909113835493")

AIRY_MAX = 40.0
BESSEL_MAX = 60.0

_EPS = 2.2e-16


# ---------------------------------------------------------------------------
# Airy function


def _airy_series(x: float) -> float:
    """Maclaurin series ``Ai = Ai(0) f - |Ai'(0)| g``, summed with 60 digits."""
    with localcontext() as ctx:
        ctx.prec = 60
        X = Decimal(x)
        x3 = X ** 3
        f = tf = Decimal(1)
        g = tg = X
        k = 1
        tiny = Decimal(10) ** -40
        while True:
            tf = tf * x3 / ((3 * k - 1) * (3 * k))
            tg = tg * x3 / ((3 * k) * (3 * k + 1))
            f += tf
            g += tg
            if abs(tf) < tiny and abs(tg) < tiny:
                break
            k += 1
        return float(_AI0 * f + _AIP0 * g)


def _airy_u(kmax: int) -> list[float]:
    # u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!)
    u = [1.0]
    for k in range(1, kmax + 1):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    return u


def _airy_asymptotic(x: float) -> SpecfunResult:
    z = abs(x)
    zeta = 2.0 / 3.0 * z ** 1.5
    u = _airy_u(60)
    if x > 0:
        s, last = 0.0, math.inf
        for k, uk in enumerate(u):
            term = (-1) ** k * uk / zeta ** k
            if abs(term) > last:
                break
            s += term
            last = abs(term)
        pref = math.exp(-zeta) / (2.0 * math.sqrt(math.pi) * z ** 0.25)
        return SpecfunResult(pref * s, pref * (last + _EPS))
    even = odd = 0.0
    last = math.inf
    for k in range(len(u) // 2):
        te = (-1) ** k * u[2 * k] / zeta ** (2 * k)
        to = (-1) ** k * u[2 * k + 1] / zeta ** (2 * k + 1)
        if abs(te) > last:
            break
        even += te
        odd += to
        last = abs(to)
    phase = zeta + math.pi / 4
    pref = 1.0 / (math.sqrt(math.pi) * z ** 0.25)
    val = pref * (math.sin(phase) * even - math.cos(phase) * odd)
    return SpecfunResult(val, pref * (last + 4 * _EPS * zeta))


def airy(lam: float) -> SpecfunResult:
    """Airy function ``Ai(lam)`` for ``|lam| <= 40``."""
    lam = float(lam)
    if not abs(lam) <= AIRY_MAX:
        raise ValueError(f"Airy argument {lam} outside [-{AIRY_MAX}, {AIRY_MAX}]")
    if abs(lam) <= 8.0:
        return SpecfunResult(_airy_series(lam), 1e-15)
    return _airy_asymptotic(lam)


def airy_ai(lam: float) -> float:
    return airy(lam).value


# ---------------------------------------------------------------------------
# Bessel functions


def _series_terms(n: int, z, one, euler, alternate: bool, tol):
    """Power series of J_n/I_n (``first``) and of the second-kind companion.

    ``alternate`` selects the J/Y family (signs alternate) versus I/K.
    Returns ``first`` and ``second`` where ``second`` is the bracketed
    digamma sum of the Y_n / K_n series.
    """
    h = z / 2
    q = h * h
    sign = -1 if alternate else 1
    # k = 0 term: (z/2)^n / n!
    term = one
    for j in range(1, n + 1):
        term = term * h / j
    first = term
    # psi(k+1) + psi(n+k+1) with psi(1) = -gamma
    psi1 = -euler
    psi2 = -euler + sum(one / j for j in range(1, n + 1))
    second = term * (psi1 + psi2)
    k = 0
    while True:
        k += 1
        term = term * q / (k * (n + k)) * sign
        psi1 += one / k
        psi2 += one / (n + k)
        first += term
        second += term * (psi1 + psi2)
        if k > z and abs(term) * (1 + abs(psi1 + psi2)) <= tol * abs(first):
            break
    return first, second


def _bessel_series(kind: str, n: int, z: float, extended: bool) -> float:
    if extended:
        with localcontext() as ctx:
            ctx.prec = 60
            Z = Decimal(z)
            one = Decimal(1)
            first, second = _series_terms(n, Z, one, _EULER, kind in "JY", one / 10 ** 45)
            lnh = (Z / 2).ln()
            pi = _PI
            val = _combine(kind, n, Z, first, second, lnh, pi, one)
            return float(val)
    one = 1.0
    first, second = _series_terms(n, z, one, float(_EULER), kind in "JY", 1e-18)
    return float(_combine(kind, n, z, first, second, math.log(z / 2) if z > 0 else 0.0, math.pi, one))


def _combine(kind, n, z, first, second, lnh, pi, one):
    if kind == "J" or kind == "I":
        return first
    if kind == "Y":
        # Y_n = -(1/pi)(z/2)^-n sum_{k<n} (n-k-1)!/k! (z^2/4)^k + (2/pi) ln(z/2) J_n - (1/pi) second
        head = 0 * one
        if n == 1:
            head = -2 * one / (pi * z)
        return head + 2 * one / pi * lnh * first - second / pi
    if kind == "K":
        # K_n = (1/2)(z/2)^-n sum_{k<n} ... + (-1)^(n+1) ln(z/2) I_n + (-1)^n (1/2) second
        head = 0 * one
        if n == 1:
            head = one / z
        sgn = -1 if n % 2 == 0 else 1
        return head + sgn * lnh * first - sgn * second / 2
    raise ValueError(kind)


def _hankel(n: int, z: float):
    """Asymptotic ``P, Q`` of the Hankel expansion plus the last term size."""
    mu = 4.0 * n * n
    P = Q = 0.0
    term = 1.0
    last = math.inf
    k = 0
    while k < 200:
        # term_k = prod_{j=1..k} (mu - (2j-1)^2) / (k! (8z)^k)
        if k % 2 == 0:
            contrib = (-1) ** (k // 2) * term
            if abs(contrib) > last:
                break
            P += contrib
        else:
            contrib = (-1) ** ((k - 1) // 2) * term
            if abs(contrib) > last:
                break
            Q += contrib
        last = abs(contrib)
        k += 1
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        if term == 0.0:
            break
    return P, Q, last


def _k_asymptotic(n: int, z: float):
    mu = 4.0 * n * n
    s = 0.0
    term = 1.0
    last = math.inf
    k = 0
    while k < 200:
        if abs(term) > last:
            break
        s += term
        last = abs(term)
        k += 1
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        if term == 0.0:
            break
    pref = math.sqrt(math.pi / (2 * z)) * math.exp(-z)
    return pref * s, pref * (last + _EPS)


def _check_order(n: int) -> None:
    if n not in (0, 1):
        raise ValueError(f"only orders 0 and 1 are supported, got {n}")


def bessel_j(n: int, z: float) -> SpecfunResult:
    """Bessel function of the first kind ``J_n(z)``, ``n in {0,1}``, ``0 <= z <= 60``."""
    _check_order(n)
    z = float(z)
    if not 0 <= z <= BESSEL_MAX:
        raise ValueError(f"J argument {z} outside [0, {BESSEL_MAX}]")
    if z <= 8.0:
        return SpecfunResult(_bessel_series("J", n, z, False), 1e-13)
    if z <= 25.0:
        return SpecfunResult(_bessel_series("J", n, z, True), 1e-15)
    P, Q, last = _hankel(n, z)
    chi = z - (n / 2 + 0.25) * math.pi
    amp = math.sqrt(2 / (math.pi * z))
    return SpecfunResult(amp * (P * math.cos(chi) - Q * math.sin(chi)), amp * (last + 4 * _EPS * z))


def bessel_y(n: int, z: float) -> SpecfunResult:
    """Bessel function of the second kind ``Y_n(z)``, ``0 < z <= 60``."""
    _check_order(n)
    z = float(z)
    if not 0 < z <= BESSEL_MAX:
        raise ValueError(f"Y argument {z} outside (0, {BESSEL_MAX}]")
    if z <= 8.0:
        return SpecfunResult(_bessel_series("Y", n, z, False), 1e-13)
    if z <= 25.0:
        return SpecfunResult(_bessel_series("Y", n, z, True), 1e-15)
    P, Q, last = _hankel(n, z)
    chi = z - (n / 2 + 0.25) * math.pi
    amp = math.sqrt(2 / (math.pi * z))
    return SpecfunResult(amp * (P * math.sin(chi) + Q * math.cos(chi)), amp * (last + 4 * _EPS * z))


def bessel_k(n: int, z: float) -> SpecfunResult:
    """Modified Bessel function of the second kind ``K_n(z)``, ``0 < z <= 60``."""
    _check_order(n)
    z = float(z)
    if not 0 < z <= BESSEL_MAX:
        raise ValueError(f"K argument {z} outside (0, {BESSEL_MAX}]")
    if z <= 2.0:
        return SpecfunResult(_bessel_series("K", n, z, False), 1e-14)
    if z <= 16.0:
        return SpecfunResult(_bessel_series("K", n, z, True), 1e-15 * math.exp(-z))
    return SpecfunResult(*_k_asymptotic(n, z))


def j0(z: float) -> float:
    return bessel_j(0, z).value


def j1(z: float) -> float:
    return bessel_j(1, z).value


def y0(z: float) -> float:
    return bessel_y(0, z).value


def y1(z: float) -> float:
    return bessel_y(1, z).value


def k0(z: float) -> float:
    return bessel_k(0, z).value


def k1(z: float) -> float:
    return bessel_k(1, z).value


# ---------------------------------------------------------------------------
# elliptic integrals and constants


def agm(a: float, b: float) -> float:
    while abs(a - b) > 1e-16 * abs(a):
        a, b = (a + b) / 2, math.sqrt(a * b)
    return (a + b) / 2


def ellipk(m: float) -> float:
    """Complete elliptic integral of the first kind, parameter ``m = k^2 < 1``."""
    if m >= 1:
        raise ValueError("parameter must be < 1")
    return math.pi / (2 * agm(1.0, math.sqrt(1.0 - m)))


def ellipe(m: float) -> float:
    """Complete elliptic integral of the second kind, parameter ``m = k^2 < 1``."""
    if m >= 1:
        raise ValueError("parameter must be < 1")
    a, b = 1.0, math.sqrt(1.0 - m)
    c2 = m  # c_0^2
    s = 0.5 * c2
    p = 0.5
    while abs(c2) > 1e-32:
        c = (a - b) / 2
        a, b = (a + b) / 2, math.sqrt(a * b)
        p *= 2
        c2 = c * c
        s += p * c2
    return math.pi / (2 * a) * (1 - s)


GAUSS_G = 1.0 / agm(1.0, math.sqrt(2.0))
"""Gauss constant ``G = (2/pi) K(i) = 1/agm(1, sqrt 2)``."""

LEMNISCATE_INV = 2.0 / math.pi * (ellipe(-1.0) - ellipk(-1.0))
"""Inverse lemniscate constant ``L' = (2/pi)(E(i) - K(i)) = 1/(pi G)``."""
