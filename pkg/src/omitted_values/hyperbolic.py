"""Conversions among trace, geodesic length, ring modulus and rho, plus ring bounds."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import DomainError

__all__ = [
    "RingInvariants",
    "acosh_stable",
    "ring_from",
    "rho_from_trace",
    "length_from_trace",
    "trace_from_length",
    "grotzsch_lower_modulus",
    "aaa_lower_bound",
]


def acosh_stable(x: float) -> float:
    """``acosh(x)`` for ``x >= 1`` without cancellation near 1."""
    if x < 1.0:
        raise DomainError(f"acosh argument {x} < 1")
    y = x - 1.0
    return math.log1p(y + math.sqrt(y * (x + 1.0)))


def length_from_trace(t: float) -> float:
    """Hyperbolic translation length ``2 acosh(|t|/2)`` of a matrix with trace ``t``."""
    if abs(t) <= 2.0:
        raise DomainError(f"|trace| = {abs(t)} <= 2 has no closed geodesic")
    return 2.0 * acosh_stable(abs(t) / 2.0)


def trace_from_length(length: float) -> float:
    if length <= 0.0:
        raise DomainError("length must be positive")
    return 2.0 * math.cosh(length / 2.0)


def rho_from_trace(t: float) -> float:
    """``exp(-pi^2 / acosh(|t|/2))``: the rho of the ring covered by a geodesic of trace t."""
    return math.exp(-2.0 * math.pi**2 / length_from_trace(t))


@dataclass(frozen=True)
class RingInvariants:
    """Five mutually determining invariants of a hyperbolic ring.

    ``rho = exp(-2 pi modulus)``, ``length = log(multiplier)`` and
    ``length = 2 acosh(trace / 2)``; ``rho = exp(-2 pi^2 / length)``.
    """

    modulus: float
    rho: float
    multiplier: float
    length: float
    trace: float

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


def ring_from(
    *,
    modulus: float | None = None,
    rho: float | None = None,
    multiplier: float | None = None,
    length: float | None = None,
    trace: float | None = None,
) -> RingInvariants:
    """Build all ring invariants from exactly one of them.

    Examples
    --------
    >>> round(ring_from(trace=6).rho, 9)
    0.003701599
    """
    given = {
        k: v
        for k, v in dict(
            modulus=modulus, rho=rho, multiplier=multiplier, length=length, trace=trace
        ).items()
        if v is not None
    }
    if len(given) != 1:
        raise DomainError("give exactly one of modulus, rho, multiplier, length, trace")
    (name, value), = given.items()
    value = float(value)
    if name == "modulus":
        if not value > 0:
            raise DomainError("modulus must be positive")
        ell = math.pi / value
    elif name == "rho":
        if not 0.0 < value < 1.0:
            raise DomainError("rho must lie in (0, 1)")
        ell = -2.0 * math.pi**2 / math.log(value)
    elif name == "multiplier":
        if not value > 1.0:
            raise DomainError("multiplier must exceed 1")
        ell = math.log(value)
    elif name == "length":
        if not value > 0.0:
            raise DomainError("length must be positive")
        ell = value
    else:
        ell = length_from_trace(value)
        if value < 0:
            value = -value
    return RingInvariants(
        modulus=value if name == "modulus" else math.pi / ell,
        rho=value if name == "rho" else math.exp(-2.0 * math.pi**2 / ell),
        multiplier=value if name == "multiplier" else math.exp(ell),
        length=ell,
        trace=value if name == "trace" else trace_from_length(ell),
    )


def grotzsch_lower_modulus(t: float) -> float:
    """Lower bound ``(1/2pi) log((1 + sqrt(1 - t^2))^2 / t)`` on the modulus of the
    unit disk slit radially along ``[0, t]``."""
    if not 0.0 < t < 1.0:
        raise DomainError("t must lie in (0, 1)")
    return math.log((1.0 + math.sqrt(1.0 - t * t)) ** 2 / t) / (2.0 * math.pi)


def aaa_lower_bound(a0: float, q: int) -> float:
    """Improved lower bound ``(1 + sqrt(1 - 16 a0^{2q}))^{2/q} a0``.

    Parameters
    ----------
    a0 : float
        Base constant in (0, 1).
    q : int
        Number of preimages of {0, 1}; at least 1.

    Returns
    -------
    float
        The improved bound, or ``a0`` itself when ``16 a0^{2q} > 1`` and the
        radical is undefined.
    """
    if not 0.0 < a0 < 1.0:
        raise DomainError("a0 must lie in (0, 1)")
    if q < 1:
        raise DomainError("q must be at least 1")
    disc = 1.0 - 16.0 * a0 ** (2 * q)
    if disc < 0.0:
        return a0
    return (1.0 + math.sqrt(disc)) ** (2.0 / q) * a0
