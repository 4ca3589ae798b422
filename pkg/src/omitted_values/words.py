"""Exact arithmetic on words in the generators A, B of the level-2 congruence group.

Words are stored as tuples of syllables ``(generator, exponent)`` with
alternating generators.  All integers are Python ints, so matrix entries and
traces never overflow.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

from .errors import DomainError

__all__ = [
    "Syllable",
    "Word",
    "CyclicWord",
    "Mat2Z",
    "WordStats",
    "parse_word",
    "canonical_cyclic",
    "to_matrix",
    "trace",
    "stats",
    "is_peripheral",
    "entry_formulas",
    "tau",
    "is_decreasing",
    "generator_power",
    "from_exponents",
    "chain_monomials",
]

_GENERATORS = ("A", "B")


class Syllable(NamedTuple):
    """A generator power ``A^k`` or ``B^k`` with ``k != 0``.

    Tuple ordering (generator first, then exponent by value) is the total
    order used to pick canonical rotations.
    """

    generator: str
    exponent: int

    def __str__(self) -> str:
        if self.exponent == 1:
            return self.generator
        return f"{self.generator}^{self.exponent}"


def _check_syllables(syllables: Sequence[Syllable], cyclic: bool) -> None:
    for s in syllables:
        if s.generator not in _GENERATORS:
            raise DomainError(f"unknown generator {s.generator!r}")
        if s.exponent == 0:
            raise DomainError("syllable exponent must be nonzero")
    for s, t in zip(syllables, syllables[1:]):
        if s.generator == t.generator:
            raise DomainError("adjacent syllables must alternate generator")
    if cyclic and len(syllables) > 1 and syllables[0].generator == syllables[-1].generator:
        raise DomainError("first and last syllables must alternate generator")


@dataclass(frozen=True)
class Word:
    """A reduced word; the empty tuple is the identity."""

    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "syllables", tuple(Syllable(*s) for s in self.syllables))
        _check_syllables(self.syllables, cyclic=False)

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.syllables) if self.syllables else "1"

    def __len__(self) -> int:
        return len(self.syllables)


@dataclass(frozen=True)
class CyclicWord:
    """Canonical representative of a conjugacy class (up to rotation).

    Construct through :func:`canonical_cyclic`; the constructor only checks
    alternation, it does not canonicalize.
    """

    syllables: tuple[Syllable, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "syllables", tuple(Syllable(*s) for s in self.syllables))
        if not self.syllables:
            raise DomainError("a cyclic word must be nonempty")
        _check_syllables(self.syllables, cyclic=True)

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.syllables)

    def __len__(self) -> int:
        return len(self.syllables)

    def rotations(self) -> Iterator[tuple[Syllable, ...]]:
        s = self.syllables
        for i in range(len(s)):
            yield s[i:] + s[:i]


@dataclass(frozen=True)
class Mat2Z:
    """Exact 2x2 integer matrix ``[[a, b], [c, d]]``."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: "Mat2Z") -> "Mat2Z":
        return Mat2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def tolist(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    @classmethod
    def identity(cls) -> "Mat2Z":
        return cls(1, 0, 0, 1)


class WordStats(NamedTuple):
    length: int
    n0: int
    n1: int
    k: int


_TOKEN = re.compile(r"^([AB])(?:\^([+-]?\d+))?$")


def _push(stack: list[Syllable], gen: str, exp: int) -> None:
    """Append a syllable with free cancellation, cascading through the stack."""
    if stack and stack[-1].generator == gen:
        total = stack.pop().exponent + exp
        if total != 0:
            stack.append(Syllable(gen, total))
    elif exp != 0:
        stack.append(Syllable(gen, exp))


def _reduce(pairs: Iterable[tuple[str, int]]) -> tuple[Syllable, ...]:
    stack: list[Syllable] = []
    for gen, exp in pairs:
        _push(stack, gen, exp)
    return tuple(stack)


def parse_word(text: str) -> Word:
    """Parse ``"A^2 B^-1 A"``-style text into a freely reduced word.

    Adjacent syllables in the same generator are merged and syllables whose
    exponent cancels to zero are dropped.
    """
    pairs = []
    for token in text.split():
        match = _TOKEN.match(token)
        if match is None:
            raise DomainError(f"malformed token {token!r}")
        exp = int(match.group(2)) if match.group(2) is not None else 1
        if exp == 0:
            raise DomainError(f"zero exponent in token {token!r}")
        pairs.append((match.group(1), exp))
    return Word(_reduce(pairs))


def _cyclic_reduce(syllables: tuple[Syllable, ...]) -> tuple[Syllable, ...]:
    s = list(syllables)
    while len(s) > 1 and s[0].generator == s[-1].generator:
        head = s.pop(0)
        tail = s.pop()
        total = head.exponent + tail.exponent
        if total != 0:
            s.insert(0, Syllable(head.generator, total))
    return tuple(s)


def canonical_cyclic(w: Union[Word, CyclicWord, str, Sequence[Syllable]]) -> CyclicWord:
    """Return the lexicographically least rotation of the cyclically reduced word."""
    if isinstance(w, str):
        w = parse_word(w)
    syllables = w.syllables if isinstance(w, (Word, CyclicWord)) else _reduce(w)
    reduced = _cyclic_reduce(tuple(syllables))
    if not reduced:
        raise DomainError("word reduces to the identity")
    n = len(reduced)
    best = min(reduced[i:] + reduced[:i] for i in range(n))
    return CyclicWord(best)


def from_exponents(ms: Sequence[int], ns: Sequence[int]) -> CyclicWord:
    """Canonical cyclic word ``A^{m_1} B^{n_1} ... A^{m_k} B^{n_k}``."""
    syllables = []
    for m, n in zip(ms, ns, strict=True):
        syllables.append(Syllable("A", m))
        syllables.append(Syllable("B", n))
    return canonical_cyclic(syllables)


def generator_power(gen: str, exp: int) -> Mat2Z:
    if gen == "A":
        return Mat2Z(1, 2 * exp, 0, 1)
    if gen == "B":
        return Mat2Z(1, 0, -2 * exp, 1)
    raise DomainError(f"unknown generator {gen!r}")


def to_matrix(w: Union[Word, CyclicWord]) -> Mat2Z:
    """Matrix image with ``A = [[1, 2], [0, 1]]`` and ``B = [[1, 0], [-2, 1]]``."""
    m = Mat2Z.identity()
    for s in w.syllables:
        m = m @ generator_power(s.generator, s.exponent)
    return m


def trace(w: Union[Word, CyclicWord]) -> int:
    return to_matrix(w).trace


def stats(w: Union[Word, CyclicWord]) -> WordStats:
    length = sum(abs(s.exponent) for s in w.syllables)
    n0 = sum(s.exponent for s in w.syllables if s.generator == "A")
    n1 = sum(s.exponent for s in w.syllables if s.generator == "B")
    k = sum(1 for s in w.syllables if s.generator == "A")
    return WordStats(length, n0, n1, k)


def is_peripheral(w: Union[Word, CyclicWord]) -> bool:
    return abs(trace(w)) == 2


# Chain-sum entry formulas.  For the product A^{m_1}B^{-n_1}...A^{m_k}B^{-n_k}
# expand prod (I + 2 m_i E12)(I + 2 n_j E21); a nonzero term is a strictly
# increasing chain of factor positions whose types alternate.  A-factors sit at
# positions 2i, B-factors at 2j + 1 (0-based).  Each factor contributes 2x.


@lru_cache(maxsize=None)
def _chains(k: int, first: str, last: str) -> tuple[tuple[int, ...], ...]:
    """Increasing alternating position chains starting with type ``first``
    and ending with type ``last``.  The empty chain is included when the
    entry is diagonal (``first != last``)."""
    out: list[tuple[int, ...]] = []
    if first != last:
        out.append(())

    def extend(chain: tuple[int, ...], kind: str) -> None:
        start = chain[-1] + 1 if chain else 0
        offset = 0 if kind == "A" else 1
        for pos in range(start, 2 * k):
            if pos % 2 != offset:
                continue
            new = chain + (pos,)
            if kind == last:
                out.append(new)
            extend(new, "B" if kind == "A" else "A")

    extend((), first)
    return tuple(out)


# Entry -> (type of first factor, type of last factor) in a contributing chain.
_ENTRY_TYPES = {"a": ("A", "B"), "b": ("A", "A"), "c": ("B", "B"), "d": ("B", "A")}


def chain_monomials(k: int, entry: str) -> tuple[tuple[int, ...], ...]:
    """Position chains contributing to one entry (``"a"``..``"d"``) of the k-pair product.

    Diagonal entries include the empty chain.  Positions ``2i`` carry ``m_{i+1}``
    and positions ``2j+1`` carry ``n_{j+1}``.
    """
    first, last = _ENTRY_TYPES[entry]
    return _chains(k, first, last)


def _chain_exponents(w: Union[Word, CyclicWord]) -> list[int]:
    """Interleaved values ``[m_1, n_1, ..., m_k, n_k]`` in the ``B^{-n}`` convention,
    padding with zero exponents so the word starts with A and ends with B."""
    values: list[int] = []
    expect = "A"
    for s in w.syllables:
        if s.generator != expect:
            values.append(0)
            expect = s.generator
        values.append(s.exponent if s.generator == "A" else -s.exponent)
        expect = "B" if expect == "A" else "A"
    if expect == "B":
        values.append(0)
    return values


def entry_formulas(w: Union[Word, CyclicWord]) -> Mat2Z:
    """Matrix of ``w`` evaluated purely from the nested chain sums.

    Independent of :func:`to_matrix`; it is used as a cross-check oracle.
    """
    values = _chain_exponents(w)
    k = len(values) // 2
    entries = []
    for entry in ("a", "b", "c", "d"):
        total = 0
        for chain in chain_monomials(k, entry):
            term = 1
            for pos in chain:
                term *= 2 * values[pos]
            total += term
        entries.append(total)
    return Mat2Z(*entries)


def tau(m: Mat2Z) -> int:
    """Matrix defect ``|a| - |b| - |c| + |d|``."""
    return abs(m.a) - abs(m.b) - abs(m.c) + abs(m.d)


def is_decreasing(m: Mat2Z) -> bool:
    """True when ``|a| > |b| > |d|`` and ``|a| > |c| > |d|``."""
    a, b, c, d = abs(m.a), abs(m.b), abs(m.c), abs(m.d)
    return a > b > d and a > c > d
