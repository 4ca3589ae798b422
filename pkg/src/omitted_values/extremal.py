"""Extremal radii mu from harmonic measure, separating lengths and stabilization bounds.

Chain: product ``p = m n`` gives the removed-disk radius ``r = 1/(sqrt(p) + 1)``;
the harmonic measure ``omega0`` of one circle at the centre of ``Q(r)`` gives
``a = J(cos(pi omega0))`` with ``J(x) = (x + 1/x)/2``; then
``q = -a + sqrt(a^2 - 1)`` and ``mu = (-1 + sqrt(1 - q^2)) / q``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

import mpmath
from scipy.optimize import brentq

from .errors import DomainError
from .hyperbolic import acosh_stable
from .schwarz import HarmonicEstimate, SchwarzSolver

__all__ = [
    "MuChain",
    "MuResult",
    "ChocolateResult",
    "r_from_product",
    "mu_from_omega0",
    "mu",
    "mu_p",
    "separating_length",
    "t_for_length",
    "chocolate",
    "hempel_smith_tstar",
    "two_point_admissible",
    "table_a5",
    "table_a5_csv",
    "A5_ROWS",
    "MAX_NODES",
]

# Standard (m, n) rows of the extremal-radius table.
A5_ROWS = ((2, 1), (3, 1), (4, 1), (3, 2), (4, 3))

# Transfer matrices are dense; r close to 1/2 needs very fine node spacing.
MAX_NODES = 8000


class MuChain(NamedTuple):
    a: float
    q: float
    mu: float


@dataclass(frozen=True)
class MuResult:
    m: float
    n: float
    p: float
    r: float
    omega0: HarmonicEstimate
    a: float
    q: float
    mu: float

    @property
    def threshold(self) -> float:
        """Pseudo-hyperbolic distance ``2 mu / (1 + mu^2)`` of ``-mu`` and ``mu``."""
        return 2.0 * self.mu / (1.0 + self.mu**2)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "p": self.p,
            "r": self.r,
            "omega0": self.omega0.value,
            "omega0_error_bound": self.omega0.error_bound,
            "iterations": self.omega0.iterations,
            "a": self.a,
            "q": self.q,
            "mu": self.mu,
            "threshold": self.threshold,
        }


@dataclass(frozen=True)
class ChocolateResult:
    s0: float
    tstar_lower: float
    delta_star_upper: float
    hempel_smith_tstar: float
    p: float
    omega0: float

    def to_dict(self) -> dict:
        return {
            "s0": self.s0,
            "tstar_lower": self.tstar_lower,
            "delta_star_upper": self.delta_star_upper,
            "hempel_smith_tstar": self.hempel_smith_tstar,
            "p": self.p,
            "omega0": self.omega0,
        }


def r_from_product(p: float) -> float:
    """Radius ``1/(sqrt(p) + 1)`` of the removed disks for generator product ``p``."""
    if not p >= 1.0:
        raise DomainError("product p must be at least 1")
    return 1.0 / (math.sqrt(p) + 1.0)


def mu_from_omega0(omega0: float, digits: int = 30) -> MuChain:
    """Evaluate ``a``, ``q`` and ``mu`` from a harmonic measure value.

    The chain is computed with ``digits`` significant digits because for
    ``omega0`` near 1/2 the parameter ``a`` is large and ``mu ~ 1/(4a)`` is
    lost to cancellation in double precision.
    """
    if not 0.0 < omega0 < 0.5:
        raise DomainError("omega0 must lie in (0, 1/2)")
    if digits < 16:
        raise DomainError("digits must be at least 16")
    with mpmath.workdps(digits):
        w = mpmath.mpf(omega0)
        # cos(pi w) = sin(pi (1/2 - w)) avoids cancellation near w = 1/2.
        x = mpmath.sin(mpmath.pi * (mpmath.mpf(1) / 2 - w))
        a = (x + 1 / x) / 2
        q = -a + mpmath.sqrt(a * a - 1)
        m = (-1 + mpmath.sqrt(1 - q * q)) / q
        return MuChain(float(a), float(q), float(m))


def _solve_omega0(r: float, tol: float, max_iter: int) -> HarmonicEstimate:
    gap = 0.5 / r - 1.0
    nodes = 2.0 * (0.6 + 14.0 * (0.5 / r - 0.5)) * 7.0 / gap
    if nodes > MAX_NODES:
        raise DomainError(f"r = {r} is too close to 1/2 for the dense solver")
    return SchwarzSolver(r).run(tol, max_iter)


def mu_p(p: float, tol: float = 1e-10, digits: int = 30, max_iter: int = 200) -> MuResult:
    """Extremal radius for a real generator product ``p > 1``."""
    if not p > 1.0:
        raise DomainError("product p must exceed 1")
    r = r_from_product(p)
    est = _solve_omega0(r, tol, max_iter)
    chain = mu_from_omega0(est.value, digits)
    m = math.sqrt(p)
    return MuResult(m, m, p, r, est, chain.a, chain.q, chain.mu)


def mu(m: int, n: int, tol: float = 1e-10, digits: int = 30, max_iter: int = 200) -> MuResult:
    """Extremal radius ``mu_{m,n}`` of the covering with group generated by ``A^m`` and ``B^n``.

    Parameters
    ----------
    m, n : int
        Distinct positive exponents.
    tol : float
        Stopping tolerance of the Schwarz iteration.
    digits : int
        Working precision of the ``omega0 -> mu`` chain.

    Returns
    -------
    MuResult
    """
    if m < 1 or n < 1 or m == n:
        raise DomainError("need distinct positive exponents m, n")
    res = mu_p(m * n, tol, digits, max_iter)
    return MuResult(m, n, res.p, res.r, res.omega0, res.a, res.q, res.mu)


def t_for_length(ell: float, tol: float = 1e-10, digits: int = 30) -> float:
    """Radius ``t`` with ``ell(U minus {-t, t}) = ell``."""
    if not ell > 0.0:
        raise DomainError("length must be positive")
    p = (math.cosh(ell / 2.0) + 1.0) / 2.0
    return mu_p(p, tol, digits).mu


def separating_length(
    t: float, tol: float = 1e-10, digits: int = 30, xtol: float = 1e-12
) -> float:
    """Hyperbolic length of the geodesic separating ``{-t, t}`` from the unit circle.

    Solves ``mu_p(p) = t`` for the real product ``p`` by bracketing and Brent's
    method, then returns ``2 acosh(2p - 1)``.
    """
    if not 0.0 < t < 1.0:
        raise DomainError("t must lie in (0, 1)")

    def f(p: float) -> float:
        return mu_p(p, tol, digits).mu - t

    lo, hi = 2.0, 2.0
    try:
        while f(lo) > 0.0:
            lo = 1.0 + (lo - 1.0) / 2.0
        while f(hi) < 0.0:
            hi *= 2.0
            if hi > 1e8:
                raise DomainError("t is beyond the reach of the parameter family")
    except DomainError as exc:
        raise DomainError(f"no bracket for t = {t}: {exc}") from exc
    if lo == hi:
        return 2.0 * acosh_stable(2.0 * lo - 1.0)
    p = brentq(f, lo, hi, xtol=xtol, rtol=1e-15)
    return 2.0 * acosh_stable(2.0 * p - 1.0)


def hempel_smith_tstar(length: float = math.log(3.0 + 2.0 * math.sqrt(2.0))) -> float:
    """Lower bound for ``t*`` from the explicit upper bound on ``ell(U minus {0, r})``.

    With ``L = log(16 sqrt(1 - r) / r)`` the bound reads
    ``ell <= 2 pi^2 / (L - pi^2 / (4 L))``; equality at ``length`` is a quadratic
    in ``L``.  Then ``r = t^2``.
    """
    c = 2.0 * math.pi**2 / length
    big_l = 0.5 * (c + math.sqrt(c * c + math.pi**2))
    target = math.exp(big_l)
    r = brentq(lambda x: 16.0 * math.sqrt(1.0 - x) / x - target, 1e-300, 1.0 - 1e-16, xtol=1e-300, rtol=1e-15)
    return math.sqrt(r)


def chocolate(tol: float = 1e-12, digits: int = 30) -> ChocolateResult:
    """Lower bound on the critical stabilization parameter ``t*``.

    ``s0`` solves ``ell(U minus {-s0, s0}) = log(3 + 2 sqrt 2)``, which in the
    product family means ``p = (1 + sqrt 2) / 2``; then
    ``t* >= sqrt(2 s0 / (1 + s0^2))`` and ``delta* = (1 - t*^2)/(1 + t*^2)``.
    """
    tol = min(tol, 1e-9)
    p = (1.0 + math.sqrt(2.0)) / 2.0
    res = mu_p(p, tol, max(digits, 30))
    s0 = res.mu
    tstar = math.sqrt(2.0 * s0 / (1.0 + s0 * s0))
    delta = (1.0 - tstar**2) / (1.0 + tstar**2)
    return ChocolateResult(s0, tstar, delta, hempel_smith_tstar(), p, res.omega0.value)


def two_point_admissible(a: complex, b: complex, mu_value: Optional[float] = None) -> dict:
    """Pseudo-hyperbolic distance of ``a`` and ``b`` against the extremal threshold.

    Omitted values in ``{0, 1}`` at ``a``, ``b`` are attainable by a
    holomorphic map of the disk iff the distance is at least
    ``2 mu / (1 + mu^2)``, and by a rational one iff strictly greater.
    """
    if abs(a) >= 1.0 or abs(b) >= 1.0:
        raise DomainError("points must lie in the open unit disk")
    if mu_value is None:
        mu_value = mu(2, 1).mu
    threshold = 2.0 * mu_value / (1.0 + mu_value**2)
    dist = abs(b - a) / abs(1.0 - complex(a).conjugate() * b)
    # Distances within rounding of the threshold count as equal.
    slack = 8.0 * 2.2e-16 * max(threshold, 1.0)
    return {
        "pseudo_dist": dist,
        "threshold": threshold,
        "admissible_holomorphic": dist >= threshold - slack,
        "admissible_rational": dist > threshold + slack,
    }


def table_a5(
    extra: Iterable[tuple[int, int]] = (), tol: float = 1e-10, digits: int = 30
) -> list[MuResult]:
    """Extremal radii for the standard rows plus ``extra`` pairs."""
    return [mu(m, n, tol, digits) for m, n in list(A5_ROWS) + list(extra)]


def table_a5_csv(rows: Iterable[MuResult]) -> str:
    """CSV with columns ``m,n,p,r,omega0,a,mu``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["m", "n", "p", "r", "omega0", "a", "mu"])
    for res in rows:
        writer.writerow([res.m, res.n, res.p, f"{res.r:.12g}", f"{res.omega0.value:.12g}", f"{res.a:.10g}", f"{res.mu:.10g}"])
    return buf.getvalue()
