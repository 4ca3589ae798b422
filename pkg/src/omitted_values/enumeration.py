"""Exact minimal traces over words with prescribed exponent sums.

Words ``A^{m_1} B^{n_1} ... A^{m_k} B^{n_k}`` with ``sum m = n0`` and
``sum n = n1`` are enumerated by length.  The trace lower bound by length lets
the search stop once no longer word can beat the best trace found so far.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from .errors import DomainError
from .hyperbolic import rho_from_trace
from .traces import min_trace_lower_bound
from .words import CyclicWord, Syllable, canonical_cyclic, stats, to_matrix

__all__ = [
    "A0Result",
    "signed_compositions",
    "count_signed_compositions",
    "enumerate_words",
    "estimate_candidates",
    "exact_a0",
    "candidates_below_trace",
    "index_orbit",
    "orbit_representative",
    "transform_word",
    "a0_table_csv",
    "MAX_CANDIDATES",
]

MAX_CANDIDATES = 10**8


@dataclass(frozen=True)
class A0Result:
    n0: int
    n1: int
    t_min: int
    witnesses: tuple[CyclicWord, ...]
    a0: float
    words_examined: int
    seed_trace: int = field(default=0)

    def to_dict(self) -> dict:
        return {
            "n0": self.n0,
            "n1": self.n1,
            "t_min": self.t_min,
            "a0": self.a0,
            "witnesses": [str(w) for w in self.witnesses],
            "words_examined": self.words_examined,
            "seed_trace": self.seed_trace,
        }


def _validate_pair(n0: int, n1: int) -> None:
    if n0 == 0 or n1 == 0 or n0 == n1:
        raise DomainError(f"index pair ({n0}, {n1}) needs n0 != n1, both nonzero")


def signed_compositions(total: int, parts: int, abs_total: int) -> Iterator[tuple[int, ...]]:
    """Tuples of ``parts`` nonzero integers with given sum and sum of absolute values."""
    if parts == 0:
        if total == 0 and abs_total == 0:
            yield ()
        return
    if abs_total < parts or abs(total) > abs_total or (abs_total - total) % 2:
        return
    rest = parts - 1
    for first in itertools.chain(range(1, abs_total + 1), range(-1, -abs_total - 1, -1)):
        rem_abs = abs_total - abs(first)
        rem = total - first
        if rem_abs < rest or abs(rem) > rem_abs:
            continue
        if rest == 0 and (rem or rem_abs):
            continue
        for tail in signed_compositions(rem, rest, rem_abs):
            yield (first,) + tail


def count_signed_compositions(total: int, parts: int, abs_total: int) -> int:
    """Closed-form count of :func:`signed_compositions` results."""
    if (abs_total - total) % 2 or abs(total) > abs_total:
        return 0
    pos, neg = (abs_total + total) // 2, (abs_total - total) // 2

    def comps(x: int, j: int) -> int:
        if j == 0:
            return 1 if x == 0 else 0
        return math.comb(x - 1, j - 1) if x >= j else 0

    return sum(math.comb(parts, j) * comps(pos, j) * comps(neg, parts - j) for j in range(parts + 1))


def _exponent_rows(n0: int, n1: int, length: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (m, n) exponent tuples of total length exactly ``length``."""
    for k in range(1, length // 2 + 1):
        for la in range(k, length - k + 1):
            lb = length - la
            ms = list(signed_compositions(n0, k, la))
            if not ms:
                continue
            for n in signed_compositions(n1, k, lb):
                for m in ms:
                    yield m, n


def _is_least_rotation(m: tuple[int, ...], n: tuple[int, ...]) -> bool:
    pairs = list(zip(m, n))
    return all(pairs <= pairs[i:] + pairs[:i] for i in range(1, len(pairs)))


def _word(m: Iterable[int], n: Iterable[int]) -> CyclicWord:
    syllables = []
    for a, b in zip(m, n):
        syllables += [Syllable("A", a), Syllable("B", b)]
    return CyclicWord(tuple(syllables))


def _trace(m: tuple[int, ...], n: tuple[int, ...]) -> int:
    a, b, c, d = 1, 0, 0, 1
    for x, y in zip(m, n):
        # right-multiply by A^x B^y = [[1 - 4xy, 2x], [-2y, 1]]
        p, q, r, s = 1 - 4 * x * y, 2 * x, -2 * y, 1
        a, b, c, d = a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s
    return a + d


def _words_of_length(n0: int, n1: int, length: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    # A word starting with A and ending with B is a least rotation exactly when
    # its (m_j, n_j) pair sequence is the least rotation of itself, because
    # syllable A < B and the pairs compare lexicographically.
    for m, n in _exponent_rows(n0, n1, length):
        if _is_least_rotation(m, n):
            yield m, n


def enumerate_words(n0: int, n1: int, max_length: int) -> Iterator[CyclicWord]:
    """Yield every canonical cyclic word with exponent sums ``(n0, n1)`` and
    length at most ``max_length``, each exactly once, shortest first.

    Nothing is yielded when ``max_length < |n0| + |n1|``.
    """
    _validate_pair(n0, n1)
    for length in range(abs(n0) + abs(n1), max_length + 1, 2):
        for m, n in _words_of_length(n0, n1, length):
            yield _word(m, n)


def _count_length(n0: int, n1: int, length: int) -> int:
    total = 0
    for k in range(1, length // 2 + 1):
        for la in range(k, length - k + 1):
            ca = count_signed_compositions(n0, k, la)
            if ca:
                total += ca * count_signed_compositions(n1, k, length - la)
    return total


def estimate_candidates(n0: int, n1: int, max_length: int) -> int:
    """Number of exponent tuples the enumeration visits up to ``max_length``
    without pruning."""
    start = abs(n0) + abs(n1)
    return sum(_count_length(n0, n1, length) for length in range(start, max_length + 1, 2))


# Index-pair symmetries and the word maps realizing them.  Each map is
# conjugation by a (possibly orientation-reversing) Mobius map normalizing
# the group, so it preserves |trace| of conjugacy classes.
_PAIR_OPS: dict[str, Callable[[int, int], tuple[int, int]]] = {
    "swap": lambda a, b: (b, a),
    "negate": lambda a, b: (-a, -b),
    "invert": lambda a, b: (-a, b - a),
}


def _image(op: str, s: Syllable) -> list[tuple[str, int]]:
    g, e = s
    if op == "swap":
        return [("B" if g == "A" else "A", e)]
    if op == "negate":
        return [(g, -e)]
    # invert: A -> A^-1 B^-1, B -> B
    if g == "B":
        return [("B", e)]
    base = [("A", -1), ("B", -1)] if e > 0 else [("B", 1), ("A", 1)]
    return base * abs(e)


def transform_word(w: CyclicWord, op: str) -> CyclicWord:
    """Apply one of the trace-preserving symmetries ``swap``, ``negate``, ``invert``."""
    if op not in _PAIR_OPS:
        raise DomainError(f"unknown symmetry {op!r}")
    pairs: list[tuple[str, int]] = []
    for s in w.syllables:
        pairs.extend(_image(op, s))
    return canonical_cyclic([Syllable(g, e) for g, e in pairs])


def index_orbit(n0: int, n1: int) -> dict[tuple[int, int], tuple[str, ...]]:
    """Orbit of an index pair under the symmetries, with an op path from the input."""
    paths = {(n0, n1): ()}
    queue = deque([(n0, n1)])
    while queue:
        pair = queue.popleft()
        for name, op in _PAIR_OPS.items():
            nxt = op(*pair)
            if nxt not in paths:
                paths[nxt] = paths[pair] + (name,)
                queue.append(nxt)
    return paths


def orbit_representative(n0: int, n1: int) -> tuple[tuple[int, int], tuple[str, ...]]:
    """Pair ``n0 > n1 > 0`` of least product in the orbit, and the op path to it."""
    orbit = index_orbit(n0, n1)
    positive = [p for p in orbit if p[0] > p[1] > 0]
    rep = min(positive, key=lambda p: (p[0] * p[1], p))
    return rep, orbit[rep]


def exact_a0(
    n0: int,
    n1: int,
    *,
    reduce: bool = True,
    force: bool = False,
    max_candidates: int = MAX_CANDIDATES,
) -> A0Result:
    """Minimal ``|trace|`` over words with exponent sums ``(n0, n1)`` and the induced A0.

    Parameters
    ----------
    n0, n1 : int
        Exponent sums; distinct and nonzero.
    reduce : bool
        Search the orbit representative ``n0 > n1 > 0`` of least product and
        map the witnesses back.  With ``reduce=False`` the words of the given
        pair are enumerated directly (the symmetry is then only used for the
        seed trace).
    force : bool
        Skip the search-size guard.
    max_candidates : int
        Guard threshold on the number of exponent tuples implied by the seed.

    Returns
    -------
    A0Result
        ``a0 = exp(-pi^2 / acosh(t_min / 2))`` with witnesses sorted canonically.
    """
    _validate_pair(n0, n1)
    rep, path = orbit_representative(n0, n1)
    if reduce and rep != (n0, n1):
        base = exact_a0(*rep, reduce=False, force=force, max_candidates=max_candidates)
        witnesses = []
        for w in base.witnesses:
            # Every op is an involution on conjugacy classes, so walking the
            # path from the input to the representative in reverse maps back.
            for op in reversed(path):
                w = transform_word(w, op)
            witnesses.append(w)
        return A0Result(
            n0, n1, base.t_min, tuple(sorted(witnesses, key=lambda w: w.syllables)),
            base.a0, base.words_examined, base.seed_trace,
        )

    seed = 4 * rep[0] * rep[1] - 2
    max_length = seed // 2
    best = seed
    found: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    examined = 0
    budget = 0
    for length in range(abs(n0) + abs(n1), max_length + 1, 2):
        if min_trace_lower_bound(length) > best:
            break
        # The guard counts only lengths the current bound still admits.
        budget += _count_length(n0, n1, length)
        if not force and budget > max_candidates:
            raise DomainError(
                f"search for ({n0}, {n1}) exceeds {max_candidates} candidates; pass force=True"
            )
        for m, n in _words_of_length(n0, n1, length):
            examined += 1
            t = abs(_trace(m, n))
            if t == 2:
                raise AssertionError("peripheral word with distinct nonzero indices")
            if t < best:
                best, found = t, [(m, n)]
            elif t == best:
                found.append((m, n))
    if not found:
        # Only the seed class attains the bound: rebuild it from the representative.
        w = canonical_cyclic([Syllable("A", rep[0]), Syllable("B", rep[1])])
        for op in reversed(path):
            w = transform_word(w, op)
        witnesses = [w]
    else:
        witnesses = [_word(m, n) for m, n in found]
    for w in witnesses:
        assert stats(w)[1:3] == (n0, n1) and abs(to_matrix(w).trace) == best
    return A0Result(
        n0, n1, best, tuple(sorted(witnesses, key=lambda w: w.syllables)),
        rho_from_trace(best), examined, seed,
    )


def _symmetry_images(w: CyclicWord) -> list[CyclicWord]:
    images = [w]
    for op in ("swap", "negate"):
        images += [transform_word(x, op) for x in images]
    return images


def candidates_below_trace(t_max: int, *, distinct_positive_sums: bool = True) -> list[CyclicWord]:
    """Cyclic words with ``2 < |trace| <= t_max`` up to rotation, ``A <-> B`` and inversion
    of both generators.

    With ``distinct_positive_sums`` only words with exponent sums ``n0 * n1 > 0`` and
    ``n0 != n1`` are kept.  Representatives are chosen with positive
    ``n0 > n1`` where possible, then by canonical order.
    """
    if t_max < 2:
        return []
    # Odd lengths need 2L <= t_max; even lengths need max(2L, 4L - 6) <= t_max.
    max_length = t_max // 2
    seen: set[CyclicWord] = set()
    out: list[CyclicWord] = []
    for length in range(2, max_length + 1):
        if min_trace_lower_bound(length) > t_max:
            continue
        for k in range(1, length // 2 + 1):
            for la in range(k, length - k + 1):
                for m_abs in _compositions(la, k):
                    for n_abs in _compositions(length - la, k):
                        for signs in itertools.product((1, -1), repeat=2 * k):
                            m = tuple(a * s for a, s in zip(m_abs, signs[:k]))
                            n = tuple(b * s for b, s in zip(n_abs, signs[k:]))
                            if not _is_least_rotation(m, n):
                                continue
                            t = abs(_trace(m, n))
                            if not 2 < t <= t_max:
                                continue
                            n0, n1 = sum(m), sum(n)
                            if distinct_positive_sums and not (n0 * n1 > 0 and n0 != n1):
                                continue
                            w = _word(m, n)
                            if w in seen:
                                continue
                            images = _symmetry_images(w)
                            seen.update(images)
                            out.append(min(images, key=_representative_key))
    return sorted(out, key=lambda w: (abs(to_matrix(w).trace), stats(w).length, w.syllables))


def _representative_key(w: CyclicWord):
    st = stats(w)
    return (not (st.n0 > st.n1 > 0), w.syllables)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def a0_table_csv(pairs: Iterable[tuple[int, int]], *, force: bool = False) -> str:
    """CSV rows ``n0,n1,t_min,a0,witnesses`` (witnesses joined by ``;``)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n0", "n1", "t_min", "a0", "witnesses"])
    for n0, n1 in pairs:
        res = exact_a0(n0, n1, force=force)
        writer.writerow([n0, n1, res.t_min, f"{res.a0:.12g}", ";".join(str(w) for w in res.witnesses)])
    return buf.getvalue()
