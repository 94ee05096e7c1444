"""Jacobi theta and Dedekind eta functions with certified series truncation.

Everything here is a q-series in the nome q = exp(pi*i*tau), |q| < 1 for
Im tau > 0:

    theta(z; tau) = sum_{n in Z} exp(pi*i*n^2*tau + 2*pi*i*n*z)
    eta(tau)      = q^(1/12) * prod_{n>=1} (1 - q^(2n))

plus the invariant norms

    ||theta||(x + i*y; tau) = (Im tau)^(1/4) * exp(-pi*y^2 / Im tau) * |theta|
    ||eta||(tau)            = (Im tau)^(1/4) * |eta(tau)|

and the real log-magnitude sum S(tau) = sum_{n>=1} log|1 - q^(2n)|.

Each evaluation truncates its series/product at an index with a proven tail
bound below the configured tolerance, or raises NonConvergenceError.
Fractional powers of q are always taken as exp(pi*i*tau*exponent), fixing
the branch by tau itself rather than by a complex power of q.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

# Evaluations are refused below this Im tau: |q| -> 1 makes every tail bound
# explode, and the geometry of interest lives well above it.
IM_FLOOR = 1e-3


class NonConvergenceError(ArithmeticError):
    """No truncation index within max_terms meets the tolerance."""


@dataclass(frozen=True)
class Tau:
    """Torus modulus: a point re + i*im of the upper half-plane (im > 0)."""

    re: float
    im: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError(f"tau must be finite, got {self.re} + {self.im}i")
        if self.im <= 0.0:
            raise ValueError(f"tau must satisfy Im tau > 0, got Im tau = {self.im}")

    @classmethod
    def from_complex(cls, value: complex) -> "Tau":
        return cls(float(value.real), float(value.imag))

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class SeriesConfig:
    """Absolute truncation tolerance and hard cap on summation/product index."""

    tol: float = 1e-14
    max_terms: int = 100_000

    def __post_init__(self) -> None:
        if not (self.tol > 0.0 and math.isfinite(self.tol)):
            raise ValueError(f"tol must be a positive real, got {self.tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_CONFIG = SeriesConfig()


def _require_series_domain(tau: Tau) -> None:
    if tau.im < IM_FLOOR:
        raise ValueError(
            f"series evaluation requires Im tau >= {IM_FLOOR}, got {tau.im}"
        )


def nome(tau: Tau) -> complex:
    """q = exp(pi*i*tau); modulus exp(-pi*Im tau) lies strictly in (0, 1)."""
    return cmath.exp(1j * math.pi * tau.as_complex())


def _reduce_unit(x: float) -> float:
    """x mod 1 in [0, 1), exact whenever x - floor(x) is exact."""
    r = x - math.floor(x)
    return r if r < 1.0 else 0.0


def theta_truncation_index(z: complex, tau: Tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> int:
    """Smallest N whose symmetric tail sum_{|n|>N} |q|^(n^2) e^(2*pi*|n|*|Im z|)
    is certified below cfg.tol.

    Terms beyond N decay at least geometrically with ratio
    r = |q|^(2N+3) e^(2*pi*|Im z|), so the two-sided tail is bounded by
    2 * t_{N+1} / (1 - r) once r < 1.  All bookkeeping is done in logs to
    stay overflow-safe.
    """
    _require_series_domain(tau)
    log_absq = -math.pi * tau.im
    ay = abs(z.imag)
    log_tol = math.log(cfg.tol)
    n = 0
    while n <= cfg.max_terms:
        log_r = (2 * n + 3) * log_absq + TWO_PI * ay
        if log_r < 0.0:
            log_t = (n + 1) ** 2 * log_absq + TWO_PI * (n + 1) * ay
            log_bound = math.log(2.0) + log_t - math.log1p(-math.exp(log_r))
            if log_bound < log_tol:
                return n
        n += 1
    raise NonConvergenceError(
        f"theta tail bound not below {cfg.tol} within {cfg.max_terms} terms "
        f"(z={z}, tau={tau.re}+{tau.im}i)"
    )


def theta_series(z: complex, tau: Tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """theta(z; tau) by direct symmetric summation over n in [-N, N].

    Re z is reduced mod 1 first (the series is exactly 1-periodic in z), so
    equal reduced arguments give bit-identical results.  Small terms are
    accumulated first.
    """
    n_max = theta_truncation_index(z, tau, cfg)
    zr = complex(_reduce_unit(z.real), z.imag)
    tc = tau.as_complex()
    total = 0j
    for n in range(n_max, 0, -1):
        base = 1j * math.pi * n * n * tc
        swing = 2j * math.pi * n * zr
        total += cmath.exp(base + swing) + cmath.exp(base - swing)
    return total + 1.0


def theta_product(z: complex, tau: Tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """theta(z; tau) by the triple-product route through the half-period shift.

    With w = z - (1+tau)/2 the shift identity plus the Jacobi triple product
    collapse (the exp(-pi*i*tau/4) prefactor cancels q^(1/4) exactly) to

        theta(z; tau) = (1 - e^(-2*pi*i*w))
                        * prod_{n>=1} (1 - q^(2n))
                                      (1 - q^(2n) e^(2*pi*i*w))
                                      (1 - q^(2n) e^(-2*pi*i*w))

    which keeps every factor overflow-safe.  The n-th factor group deviates
    from 1 by at most beta_n = |q|^(2n) (2 e^(2*pi*|Im w|) + |q|^(2n)); the
    product stops at the first n with beta_n < cfg.tol.
    """
    _require_series_domain(tau)
    tc = tau.as_complex()
    w = z - (1.0 + tc) / 2.0
    # integer shifts of Re w leave every factor invariant; reduce for hygiene
    w = complex(w.real - round(w.real), w.imag)
    log_absq2 = -TWO_PI * tau.im
    log_big = math.log(2.0) + TWO_PI * abs(w.imag)
    log_tol = math.log(cfg.tol)

    total = 1.0 - cmath.exp(-2j * math.pi * w)
    n = 1
    while True:
        la = n * log_absq2
        log_beta = la + (log_big + math.log1p(math.exp(la - log_big)))
        if log_beta < log_tol:
            break
        if n > cfg.max_terms:
            raise NonConvergenceError(
                f"theta product factor bound not below {cfg.tol} within "
                f"{cfg.max_terms} factors (z={z}, tau={tau.re}+{tau.im}i)"
            )
        ntc = n * tc
        total *= (
            (1.0 - cmath.exp(2j * math.pi * ntc))
            * (1.0 - cmath.exp(2j * math.pi * (ntc + w)))
            * (1.0 - cmath.exp(2j * math.pi * (ntc - w)))
        )
        n += 1
    return total


def _product_cutoff(tau: Tau, cfg: SeriesConfig, pref: float = 1.0) -> int:
    """Smallest N with pref * |q|^(2N+2) / (1 - |q|^2) < cfg.tol."""
    _require_series_domain(tau)
    log_absq2 = -TWO_PI * tau.im
    log_tail0 = math.log(pref) - math.log1p(-math.exp(log_absq2))
    log_tol = math.log(cfg.tol)
    n = 0
    while n <= cfg.max_terms:
        if log_tail0 + (n + 1) * log_absq2 < log_tol:
            return n
        n += 1
    raise NonConvergenceError(
        f"q-product tail bound not below {cfg.tol} within {cfg.max_terms} "
        f"terms (tau={tau.re}+{tau.im}i)"
    )


def eta(tau: Tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """Dedekind eta(tau) = exp(pi*i*tau/12) * prod_{n>=1} (1 - q^(2n)).

    The prefactor keeps the full tau (branch rule); the product, which is
    exactly 1-periodic in Re tau, is evaluated from the reduced real part.
    Tail bound: sum_{n>N} |q|^(2n) = |q|^(2N+2) / (1 - |q|^2) < cfg.tol.
    """
    n_max = _product_cutoff(tau, cfg)
    x = _reduce_unit(tau.re)
    t = tau.im
    total = complex(1.0, 0.0)
    for n in range(1, n_max + 1):
        mag = math.exp(-TWO_PI * t * n)
        ang = TWO_PI * n * x
        total *= complex(1.0 - mag * math.cos(ang), -mag * math.sin(ang))
    return cmath.exp(1j * math.pi * tau.as_complex() / 12.0) * total


def sum_log_abs_one_minus_q2n(tau: Tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """S(tau) = sum_{n>=1} log|1 - q^(2n)|, truncated when
    2*|q|^(2N+2) / (1 - |q|^2) < cfg.tol.

    |1 - q^(2n)|^2 = 1 + p^2 - 2*p*cos(2*pi*n*Re tau) with p = |q|^(2n), so
    each term is 0.5*log1p(p*(p - 2*cos)), accurate for p near 0.
    """
    n_max = _product_cutoff(tau, cfg, pref=2.0)
    x = _reduce_unit(tau.re)
    t = tau.im
    total = 0.0
    for n in range(1, n_max + 1):
        p = math.exp(-TWO_PI * t * n)
        arg = p * (p - 2.0 * math.cos(TWO_PI * n * x))
        if arg <= -1.0:
            # impossible for Im tau >= IM_FLOOR; guard against misuse
            raise ValueError(f"factor 1 - q^(2n) vanished at n={n}, tau={tau}")
        total += 0.5 * math.log1p(arg)
    return total


def theta_norm(z: complex, tau: Tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """||theta||(z; tau) = (Im tau)^(1/4) * exp(-pi*(Im z)^2/Im tau) * |theta(z; tau)|.

    Invariant under z -> z + 1 and z -> z + tau: the Gaussian factor absorbs
    the quasi-periodicity multiplier of the bare series.
    """
    th = theta_series(z, tau, cfg)
    return tau.im ** 0.25 * math.exp(-math.pi * z.imag**2 / tau.im) * abs(th)


def eta_norm(tau: Tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """||eta||(tau) = (Im tau)^(1/4) * |eta(tau)|; 1-periodic in Re tau."""
    return tau.im ** 0.25 * abs(eta(tau, cfg))
