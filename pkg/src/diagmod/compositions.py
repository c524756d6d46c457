"""Compositions, peak compositions, strict partitions, and their set statistics.

A composition of n is a tuple of positive integers summing to n.  Subsets of
{1, ..., n-1} travel as frozensets, with the ambient n passed explicitly
where it matters.  The canonical enumeration order everywhere is descending
lexicographic on parts, so (n) comes first; this is the total order used for
triangularity checks and for display.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import DomainError

Composition = tuple[int, ...]


def check_composition(parts: Iterable[int]) -> Composition:
    """Coerce to a tuple and validate that every part is a positive integer."""
    alpha = tuple(parts)
    for p in alpha:
        if not isinstance(p, int) or isinstance(p, bool) or p < 1:
            raise DomainError(f"composition parts must be positive integers, got {alpha!r}")
    return alpha


def composition_size(alpha: Composition) -> int:
    return sum(alpha)


def descent_set(alpha: Composition) -> frozenset[int]:
    """Partial sums of all but the last part, as a subset of {1, ..., n-1}.

    >>> sorted(descent_set((2, 3, 1, 1)))
    [2, 5, 6]
    >>> descent_set((7,))
    frozenset()
    """
    alpha = check_composition(alpha)
    if not alpha:
        raise DomainError("the empty composition has no descent set")
    out, total = [], 0
    for p in alpha[:-1]:
        total += p
        out.append(total)
    return frozenset(out)


def comp_n(xs: Iterable[int], n: int) -> Composition:
    """The unique composition of n whose descent set is ``xs``.

    >>> comp_n({1, 2, 5}, 8)
    (1, 1, 3, 3)
    >>> comp_n(set(), 5)
    (5,)
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"comp_n needs a positive integer, got {n!r}")
    xs = sorted(set(xs))
    if xs and (xs[0] < 1 or xs[-1] >= n):
        raise DomainError(f"descent set {xs} is not a subset of [{n - 1}]")
    parts, prev = [], 0
    for x in xs:
        parts.append(x - prev)
        prev = x
    parts.append(n - prev)
    return tuple(parts)


def peak_set(xs: Iterable[int]) -> frozenset[int]:
    """Elements i of the set with i > 1 and i-1 not in the set.

    >>> sorted(peak_set({1, 3, 5, 6}))
    [3, 5]
    """
    s = frozenset(xs)
    return frozenset(i for i in s if i > 1 and i - 1 not in s)


def peak_composition(alpha: Composition) -> Composition:
    """comp_n of the peak set of the descent set of ``alpha``."""
    alpha = check_composition(alpha)
    return comp_n(peak_set(descent_set(alpha)), composition_size(alpha))


def is_peak_composition(alpha: Composition) -> bool:
    """True iff every part except possibly the last is greater than 1.

    >>> is_peak_composition((3, 3, 1))
    True
    >>> is_peak_composition((1, 2, 2, 1, 3))
    False
    """
    alpha = check_composition(alpha)
    return all(p > 1 for p in alpha[:-1])


def is_strict_partition(lam: Composition) -> bool:
    """True iff parts are strictly decreasing."""
    lam = check_composition(lam)
    return all(a > b for a, b in zip(lam, lam[1:]))


def is_partition(lam: Composition) -> bool:
    """True iff parts are weakly decreasing."""
    lam = check_composition(lam)
    return all(a >= b for a, b in zip(lam, lam[1:]))


def enumerate_compositions(n: int) -> Iterator[Composition]:
    """All compositions of n, in descending lexicographic order on parts.

    >>> list(enumerate_compositions(3))
    [(3,), (2, 1), (1, 2), (1, 1, 1)]
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        if first == n:
            yield (n,)
        else:
            for rest in enumerate_compositions(n - first):
                yield (first,) + rest


def enumerate_peak_compositions(n: int) -> Iterator[Composition]:
    """All peak compositions of n, in descending lexicographic order.

    >>> list(enumerate_peak_compositions(4))
    [(4,), (3, 1), (2, 2)]
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        if first == n:
            yield (n,)
        elif first >= 2:
            for rest in enumerate_peak_compositions(n - first):
                yield (first,) + rest


def enumerate_strict_partitions(n: int) -> Iterator[Composition]:
    """All strictly decreasing partitions of n, descending lexicographically.

    >>> list(enumerate_strict_partitions(8))[:3]
    [(8,), (7, 1), (6, 2)]
    """
    if n < 0:
        raise DomainError("n must be nonnegative")

    def rec(m: int, max_part: int) -> Iterator[Composition]:
        if m == 0:
            yield ()
            return
        for first in range(min(m, max_part), 0, -1):
            for rest in rec(m - first, first - 1):
                yield (first,) + rest

    yield from rec(n, n)


def enumerate_partitions(n: int) -> Iterator[Composition]:
    """All weakly decreasing partitions of n, descending lexicographically."""
    if n < 0:
        raise DomainError("n must be nonnegative")

    def rec(m: int, max_part: int) -> Iterator[Composition]:
        if m == 0:
            yield ()
            return
        for first in range(min(m, max_part), 0, -1):
            for rest in rec(m - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def parse_composition(text: str) -> Composition:
    """Parse comma-separated parts, e.g. "3,3,1" -> (3, 3, 1)."""
    text = text.strip()
    if not text:
        raise DomainError("empty composition string")
    try:
        parts = tuple(int(field) for field in text.split(","))
    except ValueError as exc:
        raise DomainError(f"malformed composition string {text!r}") from exc
    return check_composition(parts)


def format_composition(alpha: Composition) -> str:
    return ",".join(str(p) for p in alpha)


def format_subset(xs: Iterable[int]) -> str:
    """Render a set as "{2,5,6}"."""
    return "{" + ",".join(str(x) for x in sorted(set(xs))) + "}"


if __name__ == "__main__":
    import doctest

    doctest.testmod()
