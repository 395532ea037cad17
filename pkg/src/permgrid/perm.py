"""Permutations, pattern containment and basis-defined permutation classes.

Permutations are stored in one-line notation with values ``1..n``.  Classes
are given by a basis ``Av(p1, p2, ...)`` and enumerated exhaustively, which
is the oracle every other count in the package is checked against.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

DEFAULT_EXHAUSTION_CAP = 10


class ExhaustionBoundError(ValueError):
    """Raised when an exhaustive sweep is requested beyond the configured cap."""


def check_cap(n: int, cap: int | None) -> None:
    limit = DEFAULT_EXHAUSTION_CAP if cap is None else cap
    if n > limit:
        raise ExhaustionBoundError(
            f"exhaustion bound exceeded: n={n} > cap={limit}"
        )


class Permutation(tuple):
    """A permutation of ``1..n`` in one-line notation.

    Accepts any iterable of integers or the text format: a digit string such
    as ``"1243"`` for ``n <= 9`` and a comma-separated list otherwise.
    """

    __slots__ = ()

    def __new__(cls, values: Iterable[int] | str = ()):
        if isinstance(values, str):
            values = parse_values(values)
        vals = tuple(int(v) for v in values)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise ValueError(f"not a permutation of 1..{len(vals)}: {vals}")
        return tuple.__new__(cls, vals)

    @classmethod
    def trusted(cls, values: Iterable[int]) -> "Permutation":
        # skips validation; callers guarantee a permutation of 1..n
        return tuple.__new__(cls, values)

    @property
    def n(self) -> int:
        return len(self)

    def __str__(self) -> str:
        if len(self) <= 9:
            return "".join(str(v) for v in self)
        return ",".join(str(v) for v in self)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def reverse(self) -> "Permutation":
        return Permutation.trusted(self[::-1])

    def complement(self) -> "Permutation":
        k = len(self) + 1
        return Permutation.trusted(k - v for v in self)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, v in enumerate(self):
            inv[v - 1] = i + 1
        return Permutation.trusted(inv)


def parse_values(text: str) -> list[int]:
    text = text.strip()
    if text in ("", "e", "eps", "ε"):
        return []
    if "," in text:
        return [int(tok) for tok in text.split(",")]
    if not text.isdigit():
        raise ValueError(f"malformed permutation text: {text!r}")
    return [int(ch) for ch in text]


def standardize(seq: Sequence[int]) -> Permutation:
    """Replace the values of ``seq`` by their ranks."""
    order = sorted(range(len(seq)), key=seq.__getitem__)
    ranks = [0] * len(seq)
    for r, i in enumerate(order, 1):
        ranks[i] = r
    return Permutation.trusted(ranks)


def _neighbour_bounds(pattern: Sequence[int]) -> list[tuple[int, int]]:
    """For each pattern index k, the earlier indices holding the nearest
    smaller and nearest larger values (-1 when absent)."""
    bounds = []
    for k, v in enumerate(pattern):
        lo = hi = -1
        for j in range(k):
            w = pattern[j]
            if w < v and (lo < 0 or w > pattern[lo]):
                lo = j
            elif w > v and (hi < 0 or w < pattern[hi]):
                hi = j
        bounds.append((lo, hi))
    return bounds


def contains(pattern: Sequence[int], perm: Sequence[int]) -> bool:
    """True iff ``perm`` has a subsequence order-isomorphic to ``pattern``.

    Both arguments may be arbitrary sequences of distinct integers.
    Backtracking over pattern positions left to right.
    """
    k = len(pattern)
    n = len(perm)
    if k == 0:
        return True
    if k > n:
        return False
    bounds = _neighbour_bounds(pattern)
    chosen = [0] * k

    def place(i: int, start: int) -> bool:
        lo, hi = bounds[i]
        lo_val = perm[chosen[lo]] if lo >= 0 else None
        hi_val = perm[chosen[hi]] if hi >= 0 else None
        for j in range(start, n - (k - i) + 1):
            v = perm[j]
            if lo_val is not None and v < lo_val:
                continue
            if hi_val is not None and v > hi_val:
                continue
            chosen[i] = j
            if i + 1 == k or place(i + 1, j + 1):
                return True
        return False

    return place(0, 0)


def contains_through(pattern: Sequence[int], perm: Sequence[int], pos: int) -> bool:
    """True iff ``perm`` contains ``pattern`` with ``perm[pos]`` playing the
    role of the pattern's maximum.  Only valid when ``perm[pos]`` is the
    maximum of ``perm``."""
    k = len(pattern)
    if k == 0:
        return False
    top = pattern.index(k)
    left, right = perm[:pos], perm[pos + 1:]
    if top > len(left) or k - 1 - top > len(right):
        return False
    want = standardize(list(pattern[:top]) + list(pattern[top + 1:]))
    for lc in itertools.combinations(left, top):
        for rc in itertools.combinations(right, k - 1 - top):
            if standardize(lc + rc) == want:
                return True
    return False


@dataclass(frozen=True, init=False)
class Basis:
    """A finite antichain of patterns under containment."""

    patterns: tuple[Permutation, ...]

    def __init__(self, patterns: Iterable[Sequence[int] | str] = ()):
        pats = sorted({Permutation(p) for p in patterns}, key=lambda p: (len(p), p))
        for a, b in itertools.permutations(pats, 2):
            if contains(a, b):
                raise ValueError(f"basis is not an antichain: {a} is contained in {b}")
        object.__setattr__(self, "patterns", tuple(pats))

    def __iter__(self):
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.patterns)


@dataclass(frozen=True)
class ClassSpec:
    basis: Basis

    def __str__(self) -> str:
        return f"Av({self.basis})"

    def __contains__(self, perm: Sequence[int]) -> bool:
        return avoids_all(self.basis, perm)


def Av(*patterns: Sequence[int] | str) -> ClassSpec:
    """Shorthand: ``Av("231")``, ``Av("2314", "2413", "3412")``."""
    return ClassSpec(Basis(patterns))


_AV_RE = re.compile(r"^\s*Av\((.*)\)\s*$")


def parse_class(text: str) -> ClassSpec:
    m = _AV_RE.match(text)
    body = m.group(1) if m else text
    body = body.strip()
    if not body:
        return Av()
    parts = re.split(r"[,\s]+", body)
    return Av(*parts)


def avoids_all(basis: Iterable[Sequence[int]], perm: Sequence[int]) -> bool:
    return not any(contains(b, perm) for b in basis)


def grow_class(
    n: int,
    accepts: Callable[[tuple[int, ...], int], bool],
) -> list[tuple[int, ...]]:
    """Length-``n`` members of a permutation class, by repeated insertion of
    a new maximum.

    Exact for any class closed under taking patterns: deleting the maximum
    of a member leaves a member.  ``accepts(candidate, pos)`` decides
    membership of ``candidate`` given that removing its maximum (at ``pos``)
    yields a member.  The result is sorted lexicographically.
    """
    level: list[tuple[int, ...]] = [()]
    for size in range(1, n + 1):
        nxt = []
        for parent in level:
            for pos in range(size):
                cand = parent[:pos] + (size,) + parent[pos:]
                if accepts(cand, pos):
                    nxt.append(cand)
        level = nxt
    level.sort()
    return level


def enumerate_class(
    spec: ClassSpec, n: int, cap: int | None = None, method: str = "grow"
) -> list[Permutation]:
    """All length-``n`` members of ``spec`` in lexicographic order.

    ``method="grow"`` inserts maxima into members of length ``n-1`` and only
    tests occurrences through the new entry; ``method="naive"`` filters all
    ``n!`` permutations.
    """
    check_cap(n, cap)
    if method == "naive":
        return [
            Permutation.trusted(p)
            for p in itertools.permutations(range(1, n + 1))
            if avoids_all(spec.basis, p)
        ]
    if method != "grow":
        raise ValueError(f"unknown enumeration method {method!r}")
    patterns = list(spec.basis)
    members = grow_class(
        n, lambda cand, pos: not any(contains_through(p, cand, pos) for p in patterns)
    )
    return [Permutation.trusted(p) for p in members]


def all_permutations(n: int, cap: int | None = None) -> Iterable[Permutation]:
    check_cap(n, cap)
    return (Permutation.trusted(p) for p in itertools.permutations(range(1, n + 1)))


_SYMMETRY_STEPS = {
    "identity": lambda p: p,
    "reverse": Permutation.reverse,
    "complement": Permutation.complement,
    "inverse": Permutation.inverse,
}
_SYMMETRY_ALIASES = {"id": "identity", "r": "reverse", "c": "complement", "i": "inverse"}


def symmetry(perm: Sequence[int], op: str) -> Permutation:
    """Apply a symmetry of the permutation diagram.

    ``op`` is ``reverse``, ``complement``, ``inverse``, ``identity`` or a
    composition written with ``+`` and applied left to right, e.g.
    ``"reverse+complement"``.  Single-letter aliases r/c/i are accepted.
    """
    p = perm if isinstance(perm, Permutation) else Permutation(perm)
    for step in op.split("+"):
        step = step.strip().lower()
        step = _SYMMETRY_ALIASES.get(step, step)
        try:
            p = _SYMMETRY_STEPS[step](p)
        except KeyError:
            raise ValueError(f"unknown symmetry {step!r}") from None
    return p
