"""Bijections between equinumerous juxtaposition classes.

* ``lam``: Av(231) -> Av(321), fixing the articulation point.
* ``theta``: Av(231|12) -> Av(321|12), ``lam`` on the left, decorations kept.
* ``psi``: Av(231|21) -> Av(321|21), the same recipe.
* ``phi``: Av(312|21) -> Av(312|12), reordering excursions of the path.

All maps act on canonically gridded permutations through their decorated
Dyck paths (see :mod:`permgrid.dyck`).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from .dyck import (
    ArticulationPoint,
    DecoratedDyckPath,
    DyckError,
    DyckPath,
    H,
    V,
    articulation_231,
    articulation_321,
    convention,
    decorated_to_gridded,
    dyck_to_perm321,
    excursions,
    gridded_to_decorated,
    perm231_to_dyck,
    perm321_to_dyck,
    dyck_to_perm231,
)
from .juxtaposition import GriddedPermutation, canonical_gridding, enumerate_members
from .perm import Permutation, check_cap, enumerate_class, parse_class


class BijectionError(ValueError):
    pass


# --------------------------------------------------------------------------
# lambda on paths


def lambda_path(path: DyckPath) -> DyckPath:
    """Rewrite the part above the 231 articulation point, ``V^a H^b V``, as
    the 321 completion ``(VH)^(b-1) V^(a-b+2) H``.  The path without an
    articulation point, ``V^m H^m``, goes to ``(VH)^m``."""
    m = path.semilength
    art = articulation_231(path)
    if art is None:
        return DyckPath((V + H) * m)
    head, tail = path.steps[: art.index], path.steps[art.index:]
    a = head.index(H)
    b = len(head) - 1 - a
    new_head = (V + H) * (b - 1) + V * (a - b + 2) + H
    return DyckPath(new_head + tail)


def lambda_inverse_path(path: DyckPath) -> DyckPath:
    """Inverse of :func:`lambda_path`: ``(VH)^c V^d H`` above the 321
    articulation point becomes ``V^(c+d-1) H^(c+1) V``."""
    m = path.semilength
    art = articulation_321(path)
    if art is None:
        return DyckPath(V * m + H * m)
    head, tail = path.steps[: art.index], path.steps[art.index:]
    c = 0
    while head.startswith(V + H, 2 * c):
        c += 1
    d = len(head) - 2 * c - 1
    new_head = V * (c + d - 1) + H * (c + 1) + V
    return DyckPath(new_head + tail)


def lam(perm: Sequence[int]) -> Permutation:
    """Av(231) -> Av(321) fixing the articulation point."""
    return dyck_to_perm321(lambda_path(perm231_to_dyck(perm)))


def lam_inverse(perm: Sequence[int]) -> Permutation:
    return dyck_to_perm231(lambda_inverse_path(perm321_to_dyck(perm)))


# --------------------------------------------------------------------------
# theta and psi


def _as_gridded(perm, cls: str) -> GriddedPermutation:
    if isinstance(perm, GriddedPermutation):
        return perm
    p = perm if isinstance(perm, Permutation) else Permutation(perm)
    try:
        return canonical_gridding(convention(cls).spec, p)
    except ValueError as exc:
        raise BijectionError(str(exc)) from None


def _transport(perm, source: str, target: str, path_map: Callable) -> GriddedPermutation:
    g = _as_gridded(perm, source)
    d = gridded_to_decorated(g, source)
    tc = convention(target)
    image = DecoratedDyckPath(path_map(d.path), d.h, tc.placement, d.gap)
    return decorated_to_gridded(image, tc)


def theta(perm) -> GriddedPermutation:
    """Av(231|12) -> Av(321|12).  Accepts a permutation (gridded
    canonically) or a gridded permutation; returns the gridded image."""
    return _transport(perm, "231|12", "321|12", lambda_path)


def theta_inverse(perm) -> GriddedPermutation:
    return _transport(perm, "321|12", "231|12", lambda_inverse_path)


def psi(perm) -> GriddedPermutation:
    """Av(231|21) -> Av(321|21)."""
    return _transport(perm, "231|21", "321|21", lambda_path)


def psi_inverse(perm) -> GriddedPermutation:
    return _transport(perm, "321|21", "231|21", lambda_inverse_path)


# --------------------------------------------------------------------------
# phi


def _excursion_blocks(d: DecoratedDyckPath) -> list[tuple[str, tuple[int, ...]]]:
    out, k = [], 0
    for e in excursions(d.path):
        m = e.semilength
        out.append((e.steps, d.h[k: k + m]))
        k += m
    return out


def _join(blocks) -> tuple[DyckPath, tuple[int, ...]]:
    return (
        DyckPath("".join(s for s, _ in blocks)),
        tuple(x for _, hh in blocks for x in hh),
    )


def phi_decorated(d: DecoratedDyckPath) -> DecoratedDyckPath:
    """Excursions ``P_1..P_k``; ``P_i`` holds the first decorated vertical
    step.  The image is ``P_(i+1)..P_k, Q_i, P_1..P_(i-1)`` where ``Q_i`` is
    ``P_i`` with its decorations read in reverse."""
    blocks = _excursion_blocks(d)
    marked = [j for j, (_, hh) in enumerate(blocks) if any(hh)]
    tc = convention("312|12")
    if not marked:
        return DecoratedDyckPath(d.path, d.h, tc.placement, d.gap)
    i = marked[0]
    steps, hh = blocks[i]
    path, h = _join(blocks[i + 1:] + [(steps, hh[::-1])] + blocks[:i])
    return DecoratedDyckPath(path, h, tc.placement, d.gap)


def phi_inverse_decorated(d: DecoratedDyckPath) -> DecoratedDyckPath:
    """``Q_i`` is the last decorated excursion of the image."""
    blocks = _excursion_blocks(d)
    marked = [j for j, (_, hh) in enumerate(blocks) if any(hh)]
    sc = convention("312|21")
    if not marked:
        return DecoratedDyckPath(d.path, d.h, sc.placement, d.gap)
    j = marked[-1]
    steps, hh = blocks[j]
    path, h = _join(blocks[j + 1:] + [(steps, hh[::-1])] + blocks[:j])
    return DecoratedDyckPath(path, h, sc.placement, d.gap)


def phi(perm) -> GriddedPermutation:
    """Av(312|21) -> Av(312|12)."""
    d = gridded_to_decorated(_as_gridded(perm, "312|21"), "312|21")
    return decorated_to_gridded(phi_decorated(d), "312|12")


def phi_inverse(perm) -> GriddedPermutation:
    d = gridded_to_decorated(_as_gridded(perm, "312|12"), "312|12")
    return decorated_to_gridded(phi_inverse_decorated(d), "312|21")


# --------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Bijection:
    name: str
    source: str
    target: str
    forward: Callable
    inverse: Callable


BIJECTIONS: dict[str, Bijection] = {
    "lambda": Bijection("lambda", "Av(231)", "Av(321)", lam, lam_inverse),
    "theta": Bijection("theta", "231|12", "321|12", theta, theta_inverse),
    "psi": Bijection("psi", "231|21", "321|21", psi, psi_inverse),
    "phi": Bijection("phi", "312|21", "312|12", phi, phi_inverse),
}


@dataclass
class BijectionReport:
    name: str
    n: int
    domain_size: int
    image_size: int
    target_size: int
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def bijective(self) -> bool:
        return (
            not self.failures
            and self.domain_size == self.image_size == self.target_size
        )

    def to_dict(self) -> dict:
        data = asdict(self)
        data["failures"] = [list(f) for f in self.failures]
        data["bijective"] = self.bijective
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _below_articulation(g: GriddedPermutation, row: int) -> int:
    """Number of right-hand points lying below grid row ``row`` of the
    left-hand side."""
    lhs = sorted(g.lhs)
    bound = lhs[row] if row < len(lhs) else len(g.perm) + 1
    return sum(1 for r in g.rhs if r < bound)


def _grid(a: ArticulationPoint | None):
    return None if a is None else a.grid


def _structure_problem(b: Bijection, src, dst) -> str | None:
    """Preservation property of each map; ``None`` when it holds."""
    if b.name == "lambda":
        a = _grid(articulation_231(perm231_to_dyck(src)))
        c = _grid(articulation_321(perm321_to_dyck(dst)))
        return None if a == c else f"articulation point moved from {a} to {c}"
    sd = gridded_to_decorated(src, b.source)
    td = gridded_to_decorated(dst, b.target)
    if b.name == "phi":
        return None if sorted(sd.h) == sorted(td.h) else "decorations are not a reshuffle"
    if sd.h != td.h or sd.gap != td.gap:
        return "decorations changed"
    a, c = articulation_231(sd.path), articulation_321(td.path)
    if _grid(a) != _grid(c):
        return f"articulation point moved from {_grid(a)} to {_grid(c)}"
    if src.split != dst.split:
        return "split changed"
    if b.name == "psi" and a is not None:
        if _below_articulation(src, a.grid[1]) != _below_articulation(dst, c.grid[1]):
            return "right-hand points below the articulation point not preserved"
    return None


def _members(spec_text: str, n: int, cap: int | None) -> list[Permutation]:
    if "|" in spec_text:
        return enumerate_members(convention(spec_text).spec, n, cap=cap)
    return enumerate_class(parse_class(spec_text), n, cap=cap)


def verify_bijection(name: str, n: int, cap: int | None = None) -> BijectionReport:
    """Exhaustive check at length ``n``: every image is re-checked against
    a brute-force enumeration of the target class, the inverse undoes the
    map, the preservation property holds, and the image is the whole
    target."""
    check_cap(n, cap)
    try:
        b = BIJECTIONS[name]
    except KeyError:
        raise BijectionError(f"unknown bijection {name!r}; choose from {sorted(BIJECTIONS)}") from None
    domain = _members(b.source, n, cap)
    target = set(_members(b.target, n, cap))
    images: set[Permutation] = set()
    failures: list[tuple[str, str]] = []
    for p in domain:
        try:
            src = p if b.name == "lambda" else canonical_gridding(convention(b.source).spec, p)
            dst = b.forward(src)
            q = dst if b.name == "lambda" else dst.perm
        except (DyckError, BijectionError) as exc:
            failures.append((str(p), str(exc)))
            continue
        images.add(q)
        if q not in target:
            failures.append((str(p), f"image {q} is not in {b.target}"))
            continue
        back = b.inverse(q)
        back = back if b.name == "lambda" else back.perm
        if back != p:
            failures.append((str(p), f"image {q} maps back to {back}"))
        if b.name != "lambda":
            canon = canonical_gridding(convention(b.target).spec, q)
            if canon.split != dst.split:
                failures.append((str(p), f"image gridding {dst} is not canonical"))
        problem = _structure_problem(b, src, dst)
        if problem:
            failures.append((str(p), problem))
    return BijectionReport(name, n, len(domain), len(images), len(target), failures)
