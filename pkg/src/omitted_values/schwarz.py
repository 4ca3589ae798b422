"""Harmonic measure in the disk with two tangent disks removed, by alternating Schwarz.

The domain ``Q(r)`` is the unit disk minus the closed disks of radius ``r``
internally tangent at ``-1`` (circle L) and ``+1`` (circle R).  ``G_L`` is the
unit disk minus the L-disk and ``G_R`` its mirror; ``Q(r) = G_L ∩ G_R``.

Each subdomain is a crescent between two circles tangent at a point, which
``w = 1/(z + 1)`` (for ``G_L``) maps onto the vertical strip
``1/2 < Re w < 1/(2r)``.  The Dirichlet problem there has an explicit Poisson
kernel.  Boundary data are sampled at equispaced strip heights ``Im w`` and
integrated with the trapezoid rule, which converges geometrically for
analytic data.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "TangentCircleDomain",
    "BoundaryTrace",
    "HarmonicEstimate",
    "SchwarzSolver",
    "strip_poisson_kernel",
    "subdomain_dirichlet",
    "omega0",
]

Side = Literal["L", "R"]


def strip_poisson_kernel(x: np.ndarray, tau: np.ndarray, width: float) -> np.ndarray:
    """Poisson kernel of the strip ``0 < x < width`` for data on ``x = width``.

    Integrating against data ``g(t)`` in ``t`` gives the harmonic function
    at ``(x, tau)`` with boundary values ``g`` on the right edge and 0 on the left.
    """
    angle = np.pi * np.asarray(x) / width
    return np.sin(angle) / (2.0 * width * (np.cosh(np.pi * np.asarray(tau) / width) + np.cos(angle)))


@dataclass(frozen=True)
class TangentCircleDomain:
    """Geometry of ``Q(r)`` and its strip charts."""

    r: float

    def __post_init__(self) -> None:
        if not 0.0 < self.r < 0.5:
            raise DomainError("r must lie in (0, 1/2)")

    @property
    def strip_width(self) -> float:
        """Width ``d = 1/(2r) - 1/2`` of the strip image of either crescent."""
        return 0.5 / self.r - 0.5

    def to_strip(self, side: Side, z: complex | np.ndarray) -> np.ndarray:
        """Strip coordinate ``(Re w - 1/2) + i Im w`` of points in ``G_side``."""
        z = np.asarray(z, dtype=complex)
        w = 1.0 / (z + 1.0) if side == "L" else 1.0 / (1.0 - z)
        return w - 0.5

    def circle_point(self, side: Side, t: np.ndarray) -> np.ndarray:
        """Point of circle L or R at strip height ``t``."""
        w = 0.5 / self.r + 1j * np.asarray(t, dtype=float)
        return -1.0 + 1.0 / w if side == "L" else 1.0 - 1.0 / w

    def contains(self, side: Side, z: complex) -> bool:
        """True when ``z`` is interior to ``G_side``."""
        centre = -1.0 + self.r if side == "L" else 1.0 - self.r
        return abs(z) < 1.0 and abs(z - centre) > self.r


def _other(side: Side) -> Side:
    return "R" if side == "L" else "L"


@dataclass
class BoundaryTrace:
    """Samples of a function on circle L or R at equispaced strip heights ``t``.

    Values between nodes follow the Whittaker cardinal (sinc) series, which is
    exact for band-limited data and spectrally accurate for analytic data.
    """

    side: Side
    t: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        self.t = np.asarray(self.t, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.t.shape != self.values.shape:
            raise DomainError("node and value arrays differ in length")

    @property
    def h(self) -> float:
        return float(self.t[1] - self.t[0])

    def __call__(self, t: float | np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        weights = np.sinc((t[..., None] - self.t) / self.h)
        return weights @ self.values


@dataclass(frozen=True)
class HarmonicEstimate:
    """Harmonic-measure value with an alternating-series error bound."""

    value: float
    error_bound: float
    iterations: int
    terms: tuple[float, ...] = field(default=(), repr=False)

    @property
    def bracket(self) -> tuple[float, float]:
        return self.value - self.error_bound, self.value + self.error_bound

    def to_dict(self) -> dict:
        return {"value": self.value, "error_bound": self.error_bound, "iterations": self.iterations}

    def convergence_csv(self) -> str:
        """CSV rows ``iteration,partial_sum,term`` for convergence plots."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["iteration", "partial_sum", "term"])
        partial = 0.0
        for k, term in enumerate(self.terms):
            partial += (-1) ** k * term
            writer.writerow([k, repr(partial), repr(term)])
        return buf.getvalue()


def _default_nodes(domain: TangentCircleDomain, resolution: float) -> np.ndarray:
    d = domain.strip_width
    # Closest evaluation point to the data line is the centre, at distance
    # 1/(2r) - 1 in the strip; the trapezoid error is ~exp(-2 pi gap / h).
    gap = 0.5 / domain.r - 1.0
    h = gap / resolution
    # Kernel tails decay like exp(-pi |t| / d).
    half = 0.6 + 14.0 * d
    n = int(math.ceil(half / h))
    return np.arange(-n, n + 1) * h


def subdomain_dirichlet(
    domain: TangentCircleDomain,
    side: Side,
    data: BoundaryTrace,
    z: complex | np.ndarray,
) -> np.ndarray:
    """Harmonic function in ``G_side`` with ``data`` on the side circle and 0 on
    the unit circle, evaluated at ``z``.

    Parameters
    ----------
    domain : TangentCircleDomain
    side : {"L", "R"}
        Which crescent; ``data`` must be sampled on the same circle.
    data : BoundaryTrace
    z : complex or array
        Interior points of ``G_side``.

    Returns
    -------
    ndarray
        Trapezoid-rule Poisson integral in the strip chart.
    """
    if data.side != side:
        raise DomainError("boundary data lives on the other circle")
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    for p in zs.ravel():
        if not domain.contains(side, complex(p)):
            raise DomainError(f"{p} is not interior to G_{side}")
    s = domain.to_strip(side, zs)
    d = domain.strip_width
    k = strip_poisson_kernel(s.real[..., None], s.imag[..., None] - data.t, d)
    out = data.h * (k @ data.values)
    return out.reshape(np.shape(z))


class SchwarzSolver:
    """Alternating Schwarz iteration for the harmonic measure of one circle at 0.

    Parameters
    ----------
    r : float
        Radius of the removed disks, in (0, 1/2).
    resolution : float
        Nodes per unit of the centre's distance to the data line; 7 gives
        quadrature errors near machine precision.
    """

    def __init__(self, r: float, resolution: float = 7.0):
        self.domain = TangentCircleDomain(r)
        self.t = _default_nodes(self.domain, resolution)
        self.h = float(self.t[1] - self.t[0])
        self._transfer = {side: self._transfer_matrix(side) for side in ("L", "R")}
        self._centre = {side: self._centre_weights(side) for side in ("L", "R")}

    @property
    def n_nodes(self) -> int:
        return self.t.size

    def _transfer_matrix(self, side: Side) -> np.ndarray:
        """Map data on circle ``side`` to values of the G_side solution on the other circle."""
        targets = self.domain.circle_point(_other(side), self.t)
        s = self.domain.to_strip(side, targets)
        d = self.domain.strip_width
        return self.h * strip_poisson_kernel(s.real[:, None], s.imag[:, None] - self.t[None, :], d)

    def _centre_weights(self, side: Side) -> np.ndarray:
        s = self.domain.to_strip(side, 0.0)
        return self.h * strip_poisson_kernel(s.real, s.imag - self.t, self.domain.strip_width)

    def run(self, tol: float = 1e-7, max_iter: int = 200, start: Side = "L") -> HarmonicEstimate:
        """Harmonic measure of circle ``start`` at the origin.

        The k-th term is the value at 0 of the k-th subdomain solve; terms
        alternate in sign and decrease, so the first omitted term bounds the
        error.
        """
        if tol <= 0:
            raise DomainError("tol must be positive")
        side: Side = start
        trace = BoundaryTrace(side, self.t, np.ones_like(self.t))
        terms: list[float] = []
        total = 0.0
        for k in range(max_iter + 1):
            term = float(self._centre[side] @ trace.values)
            if not 0.0 <= term < 1.0:
                raise ConvergenceError(f"iterate value {term} at 0 left [0, 1)")
            if terms and term > terms[-1]:
                raise ConvergenceError("alternating terms stopped decreasing")
            if term < tol:
                return HarmonicEstimate(total, term, k, tuple(terms + [term]))
            terms.append(term)
            total += (-1) ** k * term
            values = self._transfer[side] @ trace.values
            side = _other(side)
            trace = BoundaryTrace(side, self.t, values)
        raise ConvergenceError(f"no convergence to {tol} within {max_iter} iterations")


def omega0(r: float, tol: float = 1e-7, max_iter: int = 200, resolution: float = 7.0) -> HarmonicEstimate:
    """Harmonic measure of circle L at the centre of ``Q(r)``.

    Examples
    --------
    >>> round(omega0(2 ** 0.5 - 1, 1e-9).value, 6)
    0.483903
    """
    return SchwarzSolver(r, resolution).run(tol, max_iter)
