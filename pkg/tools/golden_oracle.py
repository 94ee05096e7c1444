#!/usr/bin/env python3
"""Extended-precision oracle for the golden values frozen into the tests.

Run once with mpmath at 120-bit precision; every printed constant is copied
verbatim into the test suite.  theta comes from mpmath.jtheta (an
implementation independent of this package), eta and the q-sums from direct
extended-precision summation, and the minimum of F from a high-precision
stationary-point solve.

Usage:  python3 tools/golden_oracle.py
"""

import mpmath as mp

mp.mp.prec = 120


def theta(z, tau):
    """theta(z; tau) via mpmath's jtheta3: sum q^(n^2) e^(2*pi*i*n*z)."""
    q = mp.exp(1j * mp.pi * mp.mpc(tau))
    return mp.jtheta(3, mp.pi * mp.mpc(z), q)


def eta(tau, nmax=2000):
    q2 = mp.exp(2j * mp.pi * mp.mpc(tau))
    prod = mp.exp(1j * mp.pi * mp.mpc(tau) / 12)
    for n in range(1, nmax):
        f = 1 - q2**n
        prod *= f
        if abs(1 - f) < mp.mpf(10) ** -40 and n > 10:
            break
    return prod


def qsum(tau, nmax=2000):
    q2 = mp.exp(2j * mp.pi * mp.mpc(tau))
    total = mp.mpf(0)
    for n in range(1, nmax):
        term = mp.log(abs(1 - q2**n))
        total += term
        if abs(term) < mp.mpf(10) ** -45 and n > 10:
            break
    return total


def capacity(tau):
    t = mp.im(mp.mpc(tau))
    return mp.sqrt(t) * 2 * mp.pi * mp.exp(-mp.pi / 6 * t + 2 * qsum(tau))


def big_f(tau):
    t = mp.im(mp.mpc(tau))
    return -2 * mp.log(t) - mp.log(4 * mp.pi) + mp.pi / 3 * t - 4 * qsum(tau)


def green(zdiff, tau):
    t = mp.im(mp.mpc(tau))
    u = mp.mpc(zdiff) + (1 + mp.mpc(tau)) / 2
    theta_norm = t ** mp.mpf("0.25") * mp.exp(-mp.pi * mp.im(u) ** 2 / t) * abs(theta(u, tau))
    eta_norm = t ** mp.mpf("0.25") * abs(eta(tau))
    return mp.log(theta_norm / eta_norm)


def show(label, value, digits=20):
    print(f"{label:32s} = {mp.nstr(value, digits)}")


if __name__ == "__main__":
    show("theta(0; i)", theta(0, 1j))
    show("theta(0.3; 0.5+1.9192i)", theta(mp.mpf("0.3"), mp.mpc("0.5", "1.9192")))
    show("|eta(i)|", abs(eta(1j)))
    show("|eta(2i)|", abs(eta(2j)))
    show("S(2i)", qsum(2j))
    show("S(0.5+2i)", qsum(mp.mpc("0.5", "2")))
    show("capacity(2i)", capacity(2j))
    show("g(0.25, 0; 2i)", green(mp.mpf("0.25"), 2j))
    show("g(0.1+0.2i, 0; i)", green(mp.mpc("0.1", "0.2"), 1j))
    show("F(2i)", big_f(2j))
    show("F(10i)", big_f(10j))
    show("F(0.5+1.9192i)", big_f(mp.mpc("0.5", "1.9192")))

    # global minimum: F is 1-periodic and even in Re tau and, along the
    # Re = 1/2 line, minimal over Im; solve dF/dt = 0 there
    t_star = mp.findroot(
        lambda t: mp.diff(lambda s: big_f(mp.mpc("0.5", s)), t), mp.mpf("1.9096")
    )
    f_star = big_f(mp.mpc("0.5", t_star))
    show("Im tau at the minimum", t_star)
    show("F minimum", f_star)
    show("exp(F minimum)", mp.exp(f_star))
    show("alpha = exp(-F minimum)", mp.exp(-f_star))
    t_star0 = mp.findroot(
        lambda t: mp.diff(lambda s: big_f(mp.mpc(0, s)), t), mp.mpf("1.9096")
    )
    show("Im tau at Re=0 minimum", t_star0)
    show("F at Re=0 minimum", big_f(mp.mpc(0, t_star0)))
