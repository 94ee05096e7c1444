"""Geometry and potential theory of the torus C/(Z + tau*Z).

The flat metric omega = (1/Im tau) dz (x) dzbar has unit area, so Euclidean
distances scale by (Im tau)^(-1/2).  The Arakelov-Green's function

    g(z, w) = log( ||theta||(z - w + (1+tau)/2; tau) / ||eta||(tau) )

solves Delta_omega g = -1 off the diagonal with a log singularity on it.
Its finite part at the diagonal defines the modified logarithmic capacity,
which has the closed form

    c(tau) = (Im tau)^(1/2) * 2*pi * exp(-(pi/6) Im tau) * prod |1 - q^(2n)|^2,

independent of the base point by translation invariance.  Against the
Bergman density K = 1/Im tau this gives the ratio functional

    F(tau) = log(pi*K/c^2)
           = -2 log(Im tau) - log(4*pi) + (pi/3) Im tau - 4 S(tau),

with S(tau) = sum log|1 - q^(2n)|.

The Gaussian exponent in ||theta|| uses Im(z - w + (1+tau)/2); since the
half-integer shift is real this equals Im(z - w + tau/2), so either form of
the exponent is the same number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .specfun import (
    DEFAULT_CONFIG,
    SeriesConfig,
    Tau,
    eta_norm,
    sum_log_abs_one_minus_q2n,
    theta_norm,
)


TWO_PI = 2.0 * math.pi
LOG_4PI = math.log(4.0 * math.pi)


class CoincidentPointsError(ValueError):
    """g(w, w) = -infinity: the Green's function has no finite value there."""


def _basis_coords(z: complex, tau: Tau) -> tuple[float, float]:
    """Real coordinates (a, b) with z = a + b*tau in the {1, tau} basis."""
    b = z.imag / tau.im
    a = z.real - b * tau.re
    return a, b


def canonical_rep(z: complex, tau: Tau) -> complex:
    """Representative of z in the fundamental cell {a + b*tau : a, b in [0, 1)}."""
    a, b = _basis_coords(z, tau)
    a -= math.floor(a)
    b -= math.floor(b)
    if a >= 1.0:
        a = 0.0
    if b >= 1.0:
        b = 0.0
    return complex(a + b * tau.re, b * tau.im)


def _centered_rep(z: complex, tau: Tau) -> complex:
    """Representative with both basis coordinates reduced to [-1/2, 1/2]."""
    a, b = _basis_coords(z, tau)
    a -= round(a)
    b -= round(b)
    return complex(a + b * tau.re, b * tau.im)


@dataclass(frozen=True, eq=False)
class TorusPoint:
    """A point of the torus, stored as a representative z on the lattice of tau."""

    z: complex
    tau: Tau

    @property
    def canonical(self) -> complex:
        return canonical_rep(self.z, self.tau)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorusPoint):
            return NotImplemented
        return self.tau == other.tau and _centered_rep(self.z - other.z, self.tau) == 0j

    def __hash__(self) -> int:
        return hash(self.tau)


def _same_lattice(p: TorusPoint, q: TorusPoint) -> Tau:
    if p.tau != q.tau:
        raise ValueError(f"points live on different lattices: {p.tau} vs {q.tau}")
    return p.tau


def dist_omega(p: TorusPoint, q: TorusPoint) -> float:
    """Geodesic distance in the unit-area flat metric.

    Minimizes |z_p - z_q + m + n*tau| over lattice translates with
    m, n in {-2, ..., 2} after rounding the basis coordinates, then rescales
    by (Im tau)^(-1/2).
    """
    tau = _same_lattice(p, q)
    delta = _centered_rep(p.z - q.z, tau)
    tc = tau.as_complex()
    best = min(
        abs(delta + m + n * tc) for m in range(-2, 3) for n in range(-2, 3)
    )
    return best / math.sqrt(tau.im)


def green_function(
    p: TorusPoint, q: TorusPoint, cfg: SeriesConfig = DEFAULT_CONFIG
) -> float:
    """Arakelov-Green's function g(p, q) = log(||theta||(z_p - z_q + (1+tau)/2) / ||eta||).

    Symmetric in (p, q), invariant under lattice translations of either
    argument, and finite exactly when the points are distinct.
    """
    tau = _same_lattice(p, q)
    if dist_omega(p, q) == 0.0:
        raise CoincidentPointsError("g(w, w) = -inf: points coincide on the torus")
    delta = _centered_rep(p.z - q.z, tau)
    u = delta + (1.0 + tau.as_complex()) / 2.0
    return math.log(theta_norm(u, tau, cfg) / _eta_norm_cached(tau, cfg))


@lru_cache(maxsize=128)
def _eta_norm_cached(tau: Tau, cfg: SeriesConfig) -> float:
    return eta_norm(tau, cfg)


def capacity(tau: Tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Modified logarithmic capacity of the torus (base-point independent):

    c(tau) = sqrt(Im tau) * 2*pi * exp(-(pi/6) Im tau + 2 S(tau)).
    """
    s = sum_log_abs_one_minus_q2n(tau, cfg)
    return math.sqrt(tau.im) * TWO_PI * math.exp(-math.pi / 6.0 * tau.im + 2.0 * s)


def bergman_density(tau: Tau) -> float:
    """Scalar density of the Bergman kernel on the diagonal: 1 / Im tau."""
    return 1.0 / tau.im


@dataclass(frozen=True)
class RatioComponents:
    """F(tau) split into its four summands; f is exactly their sum."""

    f: float
    log_im_term: float
    const_term: float
    linear_term: float
    qsum_term: float


def f_ratio(tau: Tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> RatioComponents:
    """F(tau) = -2 log(Im tau) - log(4 pi) + (pi/3) Im tau - 4 S(tau).

    Equals log(pi * bergman_density / capacity^2); the test suite checks the
    two routes against each other.
    """
    log_im = -2.0 * math.log(tau.im)
    const = -LOG_4PI
    linear = math.pi / 3.0 * tau.im
    qsum = -4.0 * sum_log_abs_one_minus_q2n(tau, cfg)
    return RatioComponents(
        f=log_im + const + linear + qsum,
        log_im_term=log_im,
        const_term=const,
        linear_term=linear,
        qsum_term=qsum,
    )
