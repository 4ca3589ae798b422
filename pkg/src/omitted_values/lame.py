"""Covering map of the disk minus two points via a Lame-equation circular quadrilateral.

Pipeline for a point ``z`` of the unit disk::

    chi = -(z + mu)/(1 + mu z)           disk automorphism, -mu -> 0
    zeta = (chi + 1/chi)/2               Joukowski, onto the sphere minus [-1, 1]
    w = phi(zeta)                        Schwarz-Christoffel onto a rectangle
    s = sigma(w) = K s(w)/c(w)           ratio of Lame solutions, onto a circular quadrilateral
    Phi = b (1 + s)/(1 - s)              back to the half-plane picture
    h = lambda(Phi),  1 - h = lambda(-1/Phi)

``zeta = inf`` is the cusp ``Phi = inf`` where lambda has a double zero, so
``h`` has a double zero at ``-mu``; ``zeta = -a`` is the cusp ``Phi = 0`` and
gives the simple 1-point at ``mu``.

The rectangle has corners ``-w0, w0, w0 + i pi, -w0 + i pi`` with prevertices
``-1, 1, inf, -a``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq
from scipy.special import ellipk, elliprf

from .errors import ConvergenceError, DomainError
from .special import WeierstrassP, modular_lambda_pair

__all__ = [
    "RectangleMap",
    "rectangle_map",
    "LameSolution",
    "lame_accessory",
    "sigma",
    "CoveringEvaluator",
    "HValue",
    "build_covering",
    "verify_covering",
    "sample_csv",
    "POLE_CLEARANCE",
    "PUNCTURE_RADIUS",
]

POLE_CLEARANCE = 1e-8
PUNCTURE_RADIUS = 1e-6
_RTOL = 1e-12
_ATOL = 1e-14


@dataclass(frozen=True)
class RectangleMap:
    """Conformal map of the upper half-plane onto ``(-omega, omega) x (0, pi)``.

    ``phi(zeta) = omega + i pi - 2 i C R_F(zeta + a, zeta - 1, zeta + 1)``, i.e.
    ``phi' = C / sqrt((zeta + a)(1 - zeta^2))`` with ``phi(-1) = -omega``,
    ``phi(1) = omega``, ``phi(-a) = i pi - omega`` and ``phi(inf) = omega + i pi``.
    """

    a: float
    C: float
    omega: float

    def forward(self, zeta):
        """Image of points in the closed upper half-plane."""
        zeta = np.asarray(zeta, dtype=complex)
        if np.any(zeta.imag < 0):
            raise DomainError("forward map needs Im zeta >= 0")
        # Keep real prevertex segments on the upper side of every branch cut.
        zeta = zeta.real + 1j * np.maximum(zeta.imag, 1e-300)
        rf = elliprf(zeta + self.a, zeta - 1.0, zeta + 1.0)
        return self.omega + 1j * np.pi - 2j * self.C * rf

    def inverse(self, w):
        """Preimage of rectangle points: ``zeta = 4 p(u) - a/3`` with
        ``u = i (w - omega - i pi) / C`` on the lattice ``(pi/C, 2 i omega / C)``."""
        w = np.asarray(w, dtype=complex)
        u = 1j * (w - self.omega - 1j * np.pi) / self.C
        return 4.0 * self._lattice(u) - self.a / 3.0

    @property
    def _lattice(self) -> WeierstrassP:
        return WeierstrassP(math.pi / self.C, 2.0 * self.omega / self.C)


def rectangle_map(a: float) -> RectangleMap:
    """Schwarz-Christoffel rectangle map for prevertices ``-a, -1, 1, inf``.

    ``C`` makes the vertical side length ``pi`` and ``omega`` is half the width.
    Both come from complete elliptic integrals with parameter ``2/(a + 1)``.
    """
    if not a > 1.0:
        raise DomainError("a must exceed 1")
    m = 2.0 / (a + 1.0)
    scale = 2.0 / math.sqrt(a + 1.0)
    # int_{-1}^{1} and int_{-a}^{-1} of 1/sqrt(|(x + a)(1 - x^2)|)
    i_bottom = scale * ellipk(m)
    i_side = scale * ellipk(1.0 - m)
    c = math.pi / i_side
    return RectangleMap(a=float(a), C=float(c), omega=float(c * i_bottom / 2.0))


def _check_pole(rect: RectangleMap, z) -> None:
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z - (rect.omega + 1j * math.pi)) < POLE_CLEARANCE):
        raise DomainError("too close to the pole corner omega + i pi")


class _PFunction:
    """``P(z) = (p(z + omega + i pi) - e2) / 4`` for the lattice ``(2 omega, 2 pi i)``."""

    def __init__(self, rect: RectangleMap):
        self.rect = rect
        self.wp = WeierstrassP(rect.omega, math.pi)
        self.shift = rect.omega + 1j * math.pi

    def __call__(self, z):
        _check_pole(self.rect, z)
        return (self.wp(np.asarray(z, dtype=complex) + self.shift) - self.wp.e2) / 4.0


def weierstrass_P(z, omega: float):
    """``P(z) = (p(z + omega + i pi) - e2) / 4`` with periods ``2 omega`` and ``2 pi i``."""
    return _PFunction(RectangleMap(a=float("nan"), C=float("nan"), omega=omega))(z)


@dataclass
class LameSolution:
    """Accessory parameter and fundamental solutions of ``w'' + P w = lambda w``.

    ``c`` and ``s`` have initial data ``(1, 0)`` and ``(0, 1)`` at 0.  On the
    imaginary axis ``c(it) = C(t)``, ``s(it) = i S(t)`` with real ``C, S``.
    """

    rect: RectangleMap
    lambda0: float
    lambda1: float
    lambda2: float
    K: float
    P: _PFunction = field(repr=False)
    _real: object = field(repr=False, default=None)

    def __post_init__(self) -> None:
        lam = self.lambda1
        om = self.rect.omega
        P = self.P

        def rhs(x, y):
            p = P(x).real
            return [y[1], (lam - p) * y[0], y[3], (lam - p) * y[2]]

        self._real = solve_ivp(
            rhs, (0.0, om), [1.0, 0.0, 0.0, 1.0], method="DOP853",
            rtol=_RTOL, atol=_ATOL, dense_output=True,
        )

    def fundamental(self, z: complex, rtol: float = _RTOL) -> np.ndarray:
        """``(c, c', s, s')`` at ``z`` in the closed right half-rectangle.

        Integrates along 0 -> Re z on the real axis and then vertically.
        """
        z = complex(z)
        x, y = z.real, z.imag
        om = self.rect.omega
        if not (-1e-12 <= x <= om + 1e-12 and -1e-12 <= y <= math.pi + 1e-12):
            raise DomainError(f"{z} is outside the right half-rectangle")
        _check_pole(self.rect, z)
        x = min(max(x, 0.0), om)
        base = self._real.sol(x) if rtol == _RTOL else self._real_path(x, rtol)
        c, dc, s, ds = (complex(v) for v in base)
        if y <= 0.0:
            return np.array([c, dc, s, ds])
        lam = self.lambda1
        P = self.P

        # u(t) = w(x + i t) obeys u'' = (P(x + i t) - lambda) u.
        def rhs(t, u):
            f = P(x + 1j * t) - lam
            return [u[1], f * u[0], u[3], f * u[2]]

        sol = solve_ivp(
            rhs, (0.0, y), [c, 1j * dc, s, 1j * ds], method="DOP853", rtol=rtol, atol=_ATOL
        )
        if not sol.success:
            raise ConvergenceError(sol.message)
        uc, duc, us, dus = sol.y[:, -1]
        return np.array([uc, -1j * duc, us, -1j * dus])

    def _real_path(self, x: float, rtol: float) -> np.ndarray:
        lam = self.lambda1
        P = self.P

        def rhs(t, y):
            p = P(t).real
            return [y[1], (lam - p) * y[0], y[3], (lam - p) * y[2]]

        if x == 0.0:
            return np.array([1.0, 0.0, 0.0, 1.0])
        sol = solve_ivp(rhs, (0.0, x), [1.0, 0.0, 0.0, 1.0], method="DOP853", rtol=rtol, atol=_ATOL)
        return sol.y[:, -1]

    def at_i_pi(self, lam: Optional[float] = None) -> np.ndarray:
        """``(c, c', s, s')`` at ``i pi`` for parameter ``lam`` (default ``lambda1``).

        Integrated along the imaginary axis, where the equation is real.
        """
        lam = self.lambda1 if lam is None else float(lam)
        cc, dcc = _imag_axis(self.P, lam, [1.0, 0.0])
        ss, dss = _imag_axis(self.P, lam, [0.0, 1.0])
        # c(it) = C(t), s(it) = i S(t) and d/dz = -i d/dt.
        return np.array([cc, -1j * dcc, 1j * ss, dss], dtype=complex)

    def wronskian(self, z: complex, rtol: float = _RTOL) -> complex:
        c, dc, s, ds = self.fundamental(z, rtol)
        return c * ds - dc * s

    def sigma(self, z: complex, rtol: float = _RTOL) -> complex:
        """``K s(z) / c(z)``, extended to the left half by ``sigma(-conj w) = -conj sigma(w)``."""
        z = complex(z)
        if z.real < 0.0:
            return -self.sigma(-z.conjugate(), rtol).conjugate()
        c, _, s, _ = self.fundamental(z, rtol)
        return self.K * s / c

    def to_dict(self) -> dict:
        return {
            "a": self.rect.a,
            "C": self.rect.C,
            "omega": self.rect.omega,
            "lambda0": self.lambda0,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "K": self.K,
        }


def _imag_axis(P: _PFunction, lam: float, y0, t_end: float = math.pi) -> np.ndarray:
    """Real solution of ``W'' = (P(it) - lambda) W`` on ``[0, t_end]``, final state."""

    def rhs(t, y):
        return [y[1], (P(1j * t).real - lam) * y[0]]

    sol = solve_ivp(rhs, (0.0, t_end), y0, method="DOP853", rtol=_RTOL, atol=_ATOL)
    return sol.y[:, -1]


def _first_root(f, lo: float, hi: float, n: int = 200) -> float:
    grid = np.linspace(lo, hi, n + 1)
    prev = f(grid[0])
    for left, right in zip(grid[:-1], grid[1:]):
        cur = f(right)
        if prev == 0.0:
            return float(left)
        if np.sign(cur) != np.sign(prev):
            return brentq(f, left, right, xtol=1e-15, rtol=1e-15)
        prev = cur
    raise ConvergenceError("eigenvalue bracket not found")


def lame_accessory(rect: RectangleMap) -> LameSolution:
    """Find the accessory parameter ``lambda1`` and assemble ``sigma``.

    ``lambda0``: first ``lambda`` with ``C'(pi) = 0`` (Neumann at both ends of
    ``[0, i pi]``); ``lambda2``: first with ``C(pi) = 0``.  ``lambda1`` is the
    unique root of ``C(pi) S'(pi) = 1/2`` in ``(lambda0, lambda2)``.  ``K``
    fixes ``sigma(i pi) = i``.
    """
    P = _PFunction(rect)
    p_axis = P(1j * np.linspace(0.0, math.pi, 257)).real
    lo, hi = 0.0, float(np.max(p_axis)) + 1.0

    def c_end(lam):
        return _imag_axis(P, lam, [1.0, 0.0])

    def s_end(lam):
        return _imag_axis(P, lam, [0.0, 1.0])

    lam0 = _first_root(lambda lam: c_end(lam)[1], lo, hi)
    lam2 = _first_root(lambda lam: c_end(lam)[0], lo, hi)
    if not lam0 < lam2:
        raise ConvergenceError("eigenvalues out of order")

    def half(lam):
        return c_end(lam)[0] * s_end(lam)[1] - 0.5

    samples = np.linspace(lam0, lam2, 33)
    values = np.array([half(x) for x in samples])
    changes = int(np.sum(np.sign(values[1:]) != np.sign(values[:-1])))
    if changes != 1:
        raise ConvergenceError(f"expected one sign change on (lambda0, lambda2), found {changes}")
    k = int(np.nonzero(np.sign(values[1:]) != np.sign(values[:-1]))[0][0])
    lam1 = brentq(half, samples[k], samples[k + 1], xtol=1e-15, rtol=1e-15)
    cpi = c_end(lam1)[0]
    spi = s_end(lam1)[0]
    return LameSolution(rect, float(lam0), float(lam1), float(lam2), float(cpi / spi), P)


def sigma(sol: LameSolution, z: complex) -> complex:
    return sol.sigma(z)


@dataclass(frozen=True)
class HValue:
    value: complex
    one_minus: complex
    at_puncture: bool = False


class CoveringEvaluator:
    """Evaluate the extremal covering ``h`` of the disk minus ``{-mu, mu}``.

    Parameters
    ----------
    mu : float
        Radius of the two punctures.
    a : float
        Rectangle prevertex consistent with ``mu`` (``q = -a + sqrt(a^2 - 1)``,
        ``|q| = 2 mu/(1 + mu^2)``).
    m, n : int
        Generator exponents; ``b = sqrt(m/n)`` in the last Mobius step.
    """

    def __init__(self, mu: float, a: float, m: float = 2, n: float = 1, r: Optional[float] = None):
        if not 0.0 < mu < 1.0:
            raise DomainError("mu must lie in (0, 1)")
        self.mu = float(mu)
        self.a = float(a)
        self.m, self.n = m, n
        self.b = math.sqrt(m / n)
        self.r = 1.0 / (math.sqrt(m * n) + 1.0) if r is None else r
        self.rect = rectangle_map(a)
        self.lame = lame_accessory(self.rect)

    def chi(self, z: complex) -> complex:
        """Disk automorphism sending ``-mu`` to 0 and ``mu`` to ``q``."""
        return -(z + self.mu) / (1.0 + self.mu * z)

    def rectangle_point(self, z: complex) -> tuple[complex, bool]:
        """Rectangle image of ``z`` (or of ``conj z``) and whether conjugation was used."""
        x = self.chi(z)
        zeta = 0.5 * (x + 1.0 / x)
        flip = zeta.imag < 0.0
        if flip:
            zeta = zeta.conjugate()
        return complex(self.rect.forward(zeta)), flip

    def __call__(self, z: complex) -> HValue:
        z = complex(z)
        if abs(z) >= 1.0:
            raise DomainError("h is defined on the open unit disk")
        if abs(z + self.mu) < PUNCTURE_RADIUS:
            return HValue(0j, 1 + 0j, True)
        if abs(z - self.mu) < PUNCTURE_RADIUS:
            return HValue(1 + 0j, 0j, True)
        w, flip = self.rectangle_point(z)
        w = complex(min(max(w.real, -self.rect.omega), self.rect.omega), min(max(w.imag, 0.0), math.pi))
        s = self.lame.sigma(w)
        big = self.b * (1.0 + s) / (1.0 - s)
        big = complex(big.real, max(big.imag, 1e-300))
        h, one_minus = modular_lambda_pair(big)
        if flip:
            h, one_minus = h.conjugate(), one_minus.conjugate()
        return HValue(h, one_minus)

    def h(self, z: complex) -> complex:
        return self(z).value

    def circle_values(self, centre: float, radius: float, n: int = 64) -> tuple[np.ndarray, np.ndarray]:
        """``h`` and ``1 - h`` at ``n`` equispaced points of a circle."""
        pts = centre + radius * np.exp(2j * np.pi * np.arange(n) / n)
        vals = [self(p) for p in pts]
        return np.array([v.value for v in vals]), np.array([v.one_minus for v in vals])

    def derivative(self, centre: float, radius: float, n: int = 64) -> complex:
        """``h'(centre)`` by the trapezoid rule on the Cauchy integral."""
        hv, _ = self.circle_values(centre, radius, n)
        theta = 2 * np.pi * np.arange(n) / n
        return complex(np.mean(hv * np.exp(-1j * theta)) / radius)


def _winding(values: np.ndarray) -> int:
    """Winding number around 0 of a closed polygon through ``values``."""
    ang = np.angle(np.concatenate([values, values[:1]]))
    steps = np.diff(ang)
    steps = (steps + np.pi) % (2 * np.pi) - np.pi
    return int(round(steps.sum() / (2 * np.pi)))


def build_covering(m: int = 2, n: int = 1, tol: float = 1e-12, digits: int = 30) -> CoveringEvaluator:
    """Construct ``h_{m,n}`` from the harmonic-measure pipeline.

    The tolerance is clamped to ``1e-10``: errors in ``a`` bend the image of
    the diameter off the real axis, and near the cusps this is amplified.
    """
    from .extremal import mu as mu_pipeline

    res = mu_pipeline(m, n, tol=min(tol, 1e-10), digits=digits)
    return CoveringEvaluator(res.mu, res.a, m, n, res.r)


def verify_covering(ev: CoveringEvaluator, samples: int = 40, seed: int = 0) -> dict:
    """Numerical checks of the covering properties of ``h``.

    Returns a JSON-ready report with one entry per check, each carrying
    ``passed`` and the measured quantity.
    """
    mu_ = ev.mu
    checks: dict[str, dict] = {}
    target = 1.0 - 2.0 * ev.r
    s_om = ev.lame.sigma(complex(ev.rect.omega))
    checks["sigma_omega"] = {"value": float(s_om.real), "target": target, "passed": bool(abs(s_om - target) < 1e-3)}

    # h has a zero of order m at -mu and a 1-point of order n at mu.
    radius = mu_ / 2.0
    h_zero, _ = ev.circle_values(-mu_, radius)
    _, one_minus = ev.circle_values(mu_, radius)
    deriv = ev.derivative(-mu_, radius)
    centre_zero = complex(np.mean(h_zero))
    wind = _winding(h_zero)
    checks["zero_at_minus_mu"] = {
        "h_at_minus_mu": abs(centre_zero),
        "abs_derivative": abs(deriv),
        "winding": wind,
        "expected_winding": int(ev.m),
        "passed": bool(
            abs(centre_zero) < 1e-6 and wind == ev.m and (ev.m == 1 or abs(deriv) < 1e-5)
        ),
    }
    deriv_one = ev.derivative(mu_, radius)
    centre_one = complex(np.mean(one_minus))
    wind_one = _winding(one_minus)
    checks["one_point_at_mu"] = {
        "one_minus_h_at_mu": abs(centre_one),
        "abs_derivative": abs(deriv_one),
        "winding": wind_one,
        "expected_winding": int(ev.n),
        "passed": bool(
            abs(centre_one) < 1e-6 and wind_one == ev.n and (ev.n > 1 or abs(deriv_one) > 1e-3)
        ),
    }

    # Towards +1 the map approaches the cusp at infinity and |h| passes 1e12
    # near x = 0.6; beyond that double precision cannot resolve h.
    xs = np.linspace(-0.6, 0.6, 13)
    xs = xs[np.min(np.abs(np.abs(xs)[:, None] - mu_), axis=1) > 1e-3]
    imag = max(abs(v.imag) / max(1.0, abs(v)) for v in (ev(x).value for x in xs))
    checks["real_on_diameter"] = {"max_rel_imag": imag, "passed": bool(imag < 1e-6)}

    # Near the unit circle a covering map comes arbitrarily close to 0 and 1,
    # so the omitted-value check samples the disk of radius 0.8.
    rng = np.random.default_rng(seed)
    rad = 0.8 * np.sqrt(rng.uniform(size=samples))
    ang = rng.uniform(0, 2 * np.pi, size=samples)
    pts = rad * np.exp(1j * ang)
    pts = pts[np.minimum(np.abs(pts - mu_), np.abs(pts + mu_)) > 0.1 * mu_]
    vals = [ev(p) for p in pts]
    gap = min(min(abs(v.value), abs(v.one_minus)) for v in vals)
    finite = all(np.isfinite(v.value) for v in vals)
    checks["omits_zero_one"] = {"min_distance": gap, "samples": len(vals), "passed": bool(finite and gap > 1e-6)}

    return {
        "mu": mu_,
        "a": ev.a,
        "lame": ev.lame.to_dict(),
        "checks": checks,
        "passed": all(c["passed"] for c in checks.values()),
    }


def verify_covering_json(ev: CoveringEvaluator, samples: int = 40, seed: int = 0) -> str:
    return json.dumps(verify_covering(ev, samples, seed), indent=2, sort_keys=True, default=float)


def sample_csv(ev: CoveringEvaluator, count: int, seed: int = 0) -> str:
    """CSV rows ``re_z,im_z,re_h,im_h`` at seeded random points of the disk."""
    rng = np.random.default_rng(seed)
    rad = 0.95 * np.sqrt(rng.uniform(size=count))
    ang = rng.uniform(0, 2 * np.pi, size=count)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["re_z", "im_z", "re_h", "im_h"])
    for z in rad * np.exp(1j * ang):
        h = ev(z).value
        writer.writerow([repr(float(z.real)), repr(float(z.imag)), repr(h.real), repr(h.imag)])
    return buf.getvalue()
