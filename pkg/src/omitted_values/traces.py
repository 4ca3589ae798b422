"""Trace lower bounds, closed-form bounds on A-constants and the trace-sign checker."""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import asdict, dataclass
from typing import Iterator, Mapping, Optional, Sequence

from .errors import DomainError
from .hyperbolic import acosh_stable
from .words import chain_monomials

__all__ = [
    "IntPoly",
    "ConjectureReport",
    "min_trace_lower_bound",
    "nstar_bound",
    "baribaud_bound",
    "max_index_bound",
    "trace_polynomial",
    "conjecture_check",
    "DEFAULT_K_MAX",
]

DEFAULT_K_MAX = 4
HARD_K_MAX = 6


class IntPoly:
    """Sparse multivariate polynomial with exact integer coefficients.

    Monomials are exponent tuples of length ``nvars``; zero coefficients are
    never stored.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[tuple[int, ...], int]] = None):
        self.nvars = nvars
        self._terms: dict[tuple[int, ...], int] = {}
        for mono, coeff in (terms or {}).items():
            if len(mono) != nvars:
                raise DomainError("monomial length does not match nvars")
            if coeff:
                self._terms[tuple(mono)] = int(coeff)

    @classmethod
    def constant(cls, nvars: int, c: int) -> "IntPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "IntPoly":
        mono = [0] * nvars
        mono[index] = 1
        return cls(nvars, {tuple(mono): 1})

    def items(self) -> Iterator[tuple[tuple[int, ...], int]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, mono: tuple[int, ...]) -> int:
        return self._terms.get(tuple(mono), 0)

    def _check(self, other: "IntPoly") -> None:
        if self.nvars != other.nvars:
            raise DomainError("polynomials live in different rings")

    def __add__(self, other: "IntPoly") -> "IntPoly":
        self._check(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, 0) + c
        return IntPoly(self.nvars, out)

    def __neg__(self) -> "IntPoly":
        return IntPoly(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(self.nvars, {m: c * other for m, c in self._terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, 0) + c1 * c2
        return IntPoly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.nvars:
            raise DomainError("point dimension does not match nvars")
        total = 0
        for mono, c in self._terms.items():
            term = c
            for x, e in zip(point, mono):
                if e:
                    term *= x**e
            total += term
        return total

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for mono, c in self.items():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e]
            parts.append("*".join([str(c)] + factors) if factors else str(c))
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"IntPoly({self.format()})"


@dataclass(frozen=True)
class ConjectureReport:
    k: int
    sign_patterns_checked: int
    verified: bool
    counterexample: Optional[dict] = None

    def to_dict(self) -> dict:
        return asdict(self)


def min_trace_lower_bound(length: int) -> int:
    """Lower bound on ``|tr w|`` for a non-peripheral word of the given length.

    ``2 length`` for odd length and ``max(2 length, 4 length - 6)`` for even length.
    """
    if length < 2:
        raise DomainError("length must be at least 2")
    if length % 2:
        return 2 * length
    return max(2 * length, 4 * length - 6)


def _check_pair(n0: int, n1: int) -> None:
    if not (n0 > n1 >= 1):
        raise DomainError(f"index pair ({n0}, {n1}) must satisfy n0 > n1 >= 1")


def nstar_bound(n0: int, n1: int) -> dict:
    """``N* = N`` for odd ``N = n0 + n1`` and ``2N - 3`` for even N, with the
    implied lower bound ``exp(-pi^2 / acosh(N*))``."""
    _check_pair(n0, n1)
    n = n0 + n1
    nstar = n if n % 2 else 2 * n - 3
    return {"nstar": nstar, "a0_lower": math.exp(-math.pi**2 / acosh_stable(nstar))}


def baribaud_bound(n0: int, n1: int) -> int:
    """Minimal-trace lower bound ``2 (2 max(n0, n1) - 1)``."""
    _check_pair(n0, n1)
    return 2 * (2 * max(n0, n1) - 1)


def max_index_bound(n0: int, n1: int) -> float:
    """``exp(-pi^2 / log(2 max(|n0|, |n1|)))``."""
    top = max(abs(n0), abs(n1))
    if n0 == n1 or top < 2:
        raise DomainError("requires distinct indices with max |index| >= 2")
    return math.exp(-math.pi**2 / math.log(2 * top))


def _check_k(k: int, k_max: int) -> None:
    if k_max > HARD_K_MAX:
        raise DomainError(f"k_max is capped at {HARD_K_MAX}")
    if not 1 <= k <= k_max:
        raise DomainError(f"k must lie in [1, {k_max}]")
    if k > DEFAULT_K_MAX:
        warnings.warn(f"k = {k}: expansion over 4^{k} sign patterns is slow", stacklevel=3)


def _trace_terms(k: int) -> dict[tuple[int, ...], int]:
    """Multilinear trace terms as {exponent vector over (m_1..m_k, n_1..n_k): coeff}."""
    nvars = 2 * k
    terms: dict[tuple[int, ...], int] = {}
    for entry in ("a", "d"):
        for chain in chain_monomials(k, entry):
            mono = [0] * nvars
            for pos in chain:
                mono[pos // 2 + (k if pos % 2 else 0)] = 1
            key = tuple(mono)
            terms[key] = terms.get(key, 0) + 2 ** len(chain)
    return terms


def trace_polynomial(k: int, k_max: int = DEFAULT_K_MAX) -> IntPoly:
    """Trace of ``A^{m_1} B^{-n_1} ... A^{m_k} B^{-n_k}`` as a polynomial.

    Variables are ordered ``(m_1, ..., m_k, n_1, ..., n_k)``.

    Examples
    --------
    >>> trace_polynomial(1).format(["m1", "n1"])
    '2 + 4*m1*n1'
    """
    _check_k(k, k_max)
    return IntPoly(2 * k, _trace_terms(k))


def conjecture_check(k: int, k_max: int = DEFAULT_K_MAX) -> ConjectureReport:
    """Check the constant-sign property of the trace polynomial for every sign pattern.

    For each pattern ``eps`` substitute ``m_i = eps_i (1 + p_i)``,
    ``n_j = eps_j (1 + q_j)``, expand exactly and require every coefficient to
    have the sign of the top monomial ``p_1 q_1 ... p_k q_k``.

    Parameters
    ----------
    k : int
        Number of ``A^m B^n`` pairs.
    k_max : int
        Upper limit on ``k``; values above the default emit a runtime warning.

    Returns
    -------
    ConjectureReport
        ``counterexample`` holds the first failing pattern, monomial and coefficient.
    """
    _check_k(k, k_max)
    nvars = 2 * k
    terms = _trace_terms(k)
    supports = [(tuple(i for i, e in enumerate(mono) if e), c) for mono, c in terms.items()]
    checked = 0
    for signs in itertools.product((1, -1), repeat=nvars):
        checked += 1
        expanded: dict[tuple[int, ...], int] = {}
        for support, c in supports:
            signed = c
            for i in support:
                signed *= signs[i]
            # prod (1 + p_v) over the support expands to every sub-monomial.
            for r in range(len(support) + 1):
                for sub in itertools.combinations(support, r):
                    expanded[sub] = expanded.get(sub, 0) + signed
        top = expanded[tuple(range(nvars))]
        for sub, c in sorted(expanded.items()):
            if c != 0 and (c > 0) != (top > 0):
                mono = [0] * nvars
                for i in sub:
                    mono[i] = 1
                return ConjectureReport(
                    k=k,
                    sign_patterns_checked=checked,
                    verified=False,
                    counterexample={"signs": list(signs), "monomial": mono, "coefficient": c},
                )
    return ConjectureReport(k=k, sign_patterns_checked=checked, verified=True)
