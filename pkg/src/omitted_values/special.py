"""Jacobi theta functions, Weierstrass p on rectangular lattices and the modular lambda."""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = ["jacobi_thetas", "WeierstrassP", "modular_lambda", "modular_lambda_pair"]


def _terms_needed(q_abs: float, imag_v: float) -> int:
    """Series length so that ``|q|^{n^2} e^{2 n |Im v|}`` drops below 1e-20."""
    if q_abs == 0.0:
        return 2
    decay = -math.log(q_abs)
    growth = 2.0 * imag_v
    # n^2 decay - n growth >= 46
    n = (growth + math.sqrt(growth * growth + 4.0 * decay * 46.0)) / (2.0 * decay)
    return int(min(math.ceil(n) + 2, 400))


def jacobi_thetas(v, q: complex) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """``theta_1..theta_4`` at argument ``v`` with nome ``q`` (``|q| < 1``).

    Conventions follow the usual Fourier series, e.g.
    ``theta_3(v, q) = 1 + 2 sum q^{n^2} cos(2 n v)``.
    """
    q = complex(q)
    if abs(q) >= 1.0:
        raise DomainError("nome must satisfy |q| < 1")
    v = np.asarray(v, dtype=complex)
    nmax = _terms_needed(abs(q), float(np.max(np.abs(v.imag), initial=0.0)))
    n = np.arange(nmax)
    vv = v[..., None]
    half = q ** ((n + 0.5) ** 2)
    sign = (-1.0) ** n
    th1 = 2.0 * np.sum(sign * half * np.sin((2 * n + 1) * vv), axis=-1)
    th2 = 2.0 * np.sum(half * np.cos((2 * n + 1) * vv), axis=-1)
    m = n[1:]
    full = q ** (m**2)
    th3 = 1.0 + 2.0 * np.sum(full * np.cos(2 * m * vv), axis=-1)
    th4 = 1.0 + 2.0 * np.sum((-1.0) ** m * full * np.cos(2 * m * vv), axis=-1)
    return th1, th2, th3, th4


class WeierstrassP:
    """Weierstrass ``p`` for the rectangular lattice with half-periods ``w1 > 0`` and
    ``w3 = i * w3_imag``.

    Uses ``p(z) = e1 + (pi theta3 theta4 theta2(v) / (2 w1 theta1(v)))^2`` with
    ``v = pi z / (2 w1)`` and nome ``exp(i pi w3 / w1)``.  The roots satisfy
    ``e1 = p(w1) > e2 = p(w1 + w3) > e3 = p(w3)``.
    """

    def __init__(self, w1: float, w3_imag: float):
        if w1 <= 0 or w3_imag <= 0:
            raise DomainError("half-periods must be positive")
        self.w1 = float(w1)
        self.w3 = 1j * float(w3_imag)
        self.q = math.exp(-math.pi * w3_imag / w1)
        _, t2, t3, t4 = (complex(x) for x in jacobi_thetas(0.0, self.q))
        c = math.pi**2 / (12.0 * self.w1**2)
        self.e1 = (c * (t2**4 + 2 * t4**4)).real
        self.e2 = (c * (t2**4 - t4**4)).real
        self.e3 = (-c * (2 * t2**4 + t4**4)).real
        self._t3t4 = (t3 * t4).real

    def reduce(self, z) -> np.ndarray:
        """Translate ``z`` into the period cell centred at the origin."""
        z = np.asarray(z, dtype=complex)
        w3 = self.w3.imag
        z = z - 2.0 * self.w1 * np.round(z.real / (2.0 * self.w1))
        return z - 2j * w3 * np.round(z.imag / (2.0 * w3))

    def __call__(self, z) -> np.ndarray:
        z = self.reduce(z)
        v = np.pi * z / (2.0 * self.w1)
        th1, th2, _, _ = jacobi_thetas(v, self.q)
        return self.e1 + (np.pi * self._t3t4 * th2 / (2.0 * self.w1 * th1)) ** 2


# The reduction generators act on lambda by lambda(tau + 1) = lambda/(lambda - 1)
# and lambda(-1/tau) = 1 - lambda.  Carrying the pair (lambda, 1 - lambda) keeps
# both in full relative precision near the cusps: with mu = 1 - lambda the
# first map is (lambda, mu) -> (-lambda/mu, 1/mu) and the second a swap.
def _apply(op: str, pair: tuple[complex, complex]) -> tuple[complex, complex]:
    lam, mu = pair
    if op == "T":
        return -lam / mu, 1.0 / mu
    return mu, lam


def _lambda_reduced(tau: complex) -> tuple[complex, complex]:
    q = complex(np.exp(1j * np.pi * tau))
    _, t2, t3, t4 = (complex(x) for x in jacobi_thetas(0.0, q))
    return (t2 / t3) ** 4, (t4 / t3) ** 4


def _scalar_lambda(tau: complex) -> tuple[complex, complex]:
    ops: list[str] = []
    for _ in range(1000):
        n = math.floor(tau.real + 0.5)
        if n:
            tau -= n
            if n % 2:
                ops.append("T")
        if abs(tau) < 1.0 - 1e-15:
            tau = -1.0 / tau
            ops.append("S")
        else:
            break
    pair = _lambda_reduced(tau)
    for op in reversed(ops):
        pair = _apply(op, pair)
    return pair


def _lambda_pairs(tau) -> tuple[np.ndarray, bool]:
    arr = np.asarray(tau, dtype=complex)
    if np.any(arr.imag <= 0):
        raise DomainError("modular_lambda needs Im tau > 0")
    out = np.array([_scalar_lambda(complex(t)) for t in arr.ravel()], dtype=complex)
    return out.reshape(arr.shape + (2,)), arr.ndim == 0


def modular_lambda_pair(tau):
    """``(lambda(tau), 1 - lambda(tau))``, each to full relative precision."""
    out, scalar = _lambda_pairs(tau)
    if scalar:
        return complex(out[0]), complex(out[1])
    return out[..., 0], out[..., 1]


def modular_lambda(tau):
    """Classical modular lambda ``theta_2^4 / theta_3^4`` with nome ``exp(i pi tau)``.

    It covers the upper half-plane onto the sphere minus ``{0, 1, inf}`` with
    cusps ``0, 1, i inf`` going to ``1, inf, 0``.  Arguments are first moved
    into the modular fundamental domain so the series converge quickly.

    Examples
    --------
    >>> abs(modular_lambda(1j) - 0.5) < 1e-15
    True
    """
    out, scalar = _lambda_pairs(tau)
    return complex(out[0]) if scalar else out[..., 0]
