"""1x2 juxtaposition classes ``Av(left | right)``: griddings and enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .perm import (
    Basis,
    ClassSpec,
    Permutation,
    avoids_all,
    check_cap,
    enumerate_class,
    grow_class,
    parse_class,
)


@dataclass(frozen=True)
class JuxtSpec:
    left: ClassSpec
    right: ClassSpec

    def __str__(self) -> str:
        return f"Av({self.left.basis}|{self.right.basis})"

    def complement(self) -> "JuxtSpec":
        """The class obtained by complementing every member."""
        return JuxtSpec(
            ClassSpec(Basis(p.complement() for p in self.left.basis)),
            ClassSpec(Basis(p.complement() for p in self.right.basis)),
        )


def juxt(text: str) -> JuxtSpec:
    """Parse ``"231|12"`` or ``"Av(231|12)"``; class labels A, B, C are
    accepted too."""
    text = text.strip()
    if text in NAMED:
        return NAMED[text]
    if text.startswith("Av(") and text.endswith(")"):
        text = text[3:-1]
    if text.count("|") != 1:
        raise ValueError(f"not a juxtaposition spec: {text!r}")
    left, right = text.split("|")
    return JuxtSpec(parse_class(left), parse_class(right))


@dataclass(frozen=True)
class GriddedPermutation:
    perm: Permutation
    split: int

    def __post_init__(self):
        if not 0 <= self.split <= len(self.perm):
            raise ValueError(f"split {self.split} out of range for {self.perm}")

    @property
    def lhs(self) -> tuple[int, ...]:
        return self.perm[: self.split]

    @property
    def rhs(self) -> tuple[int, ...]:
        return self.perm[self.split:]

    def __str__(self) -> str:
        return f"{self.perm}|{self.split}"

    @classmethod
    def parse(cls, text: str) -> "GriddedPermutation":
        perm, _, split = text.rpartition("|")
        if not _:
            raise ValueError(f"malformed gridded permutation: {text!r}")
        return cls(Permutation(perm), int(split))


class NotAMemberError(ValueError):
    pass


def max_left_split(spec: JuxtSpec, perm: Sequence[int]) -> int:
    """Length of the longest prefix of ``perm`` that lies in the left class."""
    basis = spec.left.basis.patterns
    k = 0
    while k < len(perm) and avoids_all(basis, perm[: k + 1]):
        k += 1
    return k


def min_right_split(spec: JuxtSpec, perm: Sequence[int]) -> int:
    """Smallest split whose suffix lies in the right class."""
    basis = spec.right.basis.patterns
    k = len(perm)
    while k > 0 and avoids_all(basis, perm[k - 1:]):
        k -= 1
    return k


def griddings(spec: JuxtSpec, perm: Sequence[int]) -> list[GriddedPermutation]:
    """All valid griddings in ascending split order.

    Both sides are hereditary, so the valid splits form the interval
    ``[min_right_split, max_left_split]``.
    """
    p = perm if isinstance(perm, Permutation) else Permutation(perm)
    lo, hi = min_right_split(spec, p), max_left_split(spec, p)
    return [GriddedPermutation(p, k) for k in range(lo, hi + 1)]


def is_member(spec: JuxtSpec, perm: Sequence[int]) -> bool:
    hi = max_left_split(spec, perm)
    return avoids_all(spec.right.basis.patterns, perm[hi:])


def canonical_gridding(spec: JuxtSpec, perm: Sequence[int]) -> GriddedPermutation:
    """The gridding with the gridline pushed as far right as possible."""
    p = perm if isinstance(perm, Permutation) else Permutation(perm)
    hi = max_left_split(spec, p)
    if not avoids_all(spec.right.basis.patterns, p[hi:]):
        raise NotAMemberError(f"{p} is not in {spec}")
    return GriddedPermutation(p, hi)


def is_canonical(spec: JuxtSpec, g: GriddedPermutation) -> bool:
    return is_member(spec, g.perm) and canonical_gridding(spec, g.perm).split == g.split


def enumerate_members(
    spec: JuxtSpec, n: int, cap: int | None = None, method: str = "grow"
) -> list[Permutation]:
    """Length-``n`` members in lexicographic order.

    Juxtapositions of permutation classes are themselves permutation
    classes, so ``grow`` (insert a new maximum into every member of length
    ``n-1``) is exhaustive.  ``naive`` tests all ``n!`` permutations.
    """
    check_cap(n, cap)
    if method == "naive":
        return [
            Permutation.trusted(p)
            for p in itertools.permutations(range(1, n + 1))
            if is_member(spec, p)
        ]
    if method != "grow":
        raise ValueError(f"unknown enumeration method {method!r}")
    return [
        Permutation.trusted(p)
        for p in grow_class(n, lambda cand, pos: is_member(spec, cand))
    ]


def count_by_bruteforce(
    spec: JuxtSpec, n: int, cap: int | None = None, method: str = "grow"
) -> int:
    return len(enumerate_members(spec, n, cap=cap, method=method))


def counts_by_bruteforce(
    spec: JuxtSpec, n_max: int, cap: int | None = None
) -> list[int]:
    """Counts for lengths ``0..n_max``, sharing one growth pass."""
    check_cap(n_max, cap)
    out = [1]
    level: list[tuple[int, ...]] = [()]
    for size in range(1, n_max + 1):
        level = [
            cand
            for parent in level
            for pos in range(size)
            if is_member(spec, cand := parent[:pos] + (size,) + parent[pos:])
        ]
        out.append(len(level))
    return out


def verify_basis_identity(
    spec: JuxtSpec,
    finite_basis: Basis | Iterable[Sequence[int] | str],
    n: int,
    cap: int | None = None,
    method: str = "naive",
) -> bool:
    """Juxtaposition membership agrees with ``Av(finite_basis)`` on every
    permutation of length at most ``n``."""
    check_cap(n, cap)
    basis = finite_basis if isinstance(finite_basis, Basis) else Basis(finite_basis)
    for size in range(n + 1):
        if method == "naive":
            for p in itertools.permutations(range(1, size + 1)):
                if is_member(spec, p) != avoids_all(basis.patterns, p):
                    return False
        else:
            left = enumerate_members(spec, size, cap=cap)
            right = enumerate_class(ClassSpec(basis), size, cap=cap)
            if left != right:
                return False
    return True


def _j(left: str, right: str) -> JuxtSpec:
    return JuxtSpec(parse_class(left), parse_class(right))


CLASS_A = _j("231", "12")
CLASS_B = _j("321", "21")
CLASS_C = _j("312", "21")

NAMED: dict[str, JuxtSpec] = {"A": CLASS_A, "B": CLASS_B, "C": CLASS_C}

BASES: dict[str, Basis] = {
    "A": Basis(["2314", "2413", "3412"]),
    "B": Basis(["4321", "32154", "42153", "52143", "43152", "53142"]),
    "C": Basis(["4132", "4231", "31254", "41253"]),
}

# Rows of equinumerous classes.  Each row: the left comma-pair, the right
# comma-pair and the bijection linking the second class of each pair.
EQUINUMEROUS_ROWS: list[tuple[tuple[JuxtSpec, JuxtSpec], tuple[JuxtSpec, JuxtSpec], str]] = [
    ((_j("213", "21"), _j("231", "12")), (_j("123", "21"), _j("321", "12")), "theta"),
    ((_j("123", "12"), _j("321", "21")), (_j("213", "12"), _j("231", "21")), "psi"),
    ((_j("132", "12"), _j("312", "21")), (_j("132", "21"), _j("312", "12")), "phi"),
]


def row_symmetry_pairs() -> list[tuple[JuxtSpec, JuxtSpec]]:
    """The comma-separated pairs of every equinumerous row (both columns)."""
    return [pair for left, right, _ in EQUINUMEROUS_ROWS for pair in (left, right)]


def verify_symmetry_pair(
    a: JuxtSpec, b: JuxtSpec, n: int, op: str = "complement", cap: int | None = None
) -> bool:
    """The symmetry ``op`` maps the length-``n`` members of ``a`` exactly
    onto those of ``b``."""
    from .perm import symmetry

    check_cap(n, cap)
    image = {symmetry(p, op) for p in enumerate_members(a, n, cap=cap)}
    return image == set(enumerate_members(b, n, cap=cap))
