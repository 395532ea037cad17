"""Dyck paths, the two fixed Catalan bijections and decorated paths.

A path is stored as a word over ``V`` (vertical step) and ``H``
(horizontal step) in which every prefix has at least as many V as H.  It is
read from the top-right corner of an ``m x m`` grid towards the bottom-left,
staying below the diagonal: V is a down step, H a left step.  The i-th V
(0-based) covers grid row ``m-1-i`` and the j-th H covers column ``m-1-j``,
so a point matched to the pair sits at position ``m-j`` with value ``m-i``.

Text format: V is written ``U`` and H ``R`` (e.g. ``"URUURR"``).  The parser
also accepts the drawing order from the bottom-left corner, which starts
with ``R``; it is the reverse word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .juxtaposition import GriddedPermutation, JuxtSpec, is_canonical, juxt
from .perm import Permutation, contains, standardize

V, H = "V", "H"


class DyckError(ValueError):
    pass


@dataclass(frozen=True)
class DyckPath:
    steps: str

    def __post_init__(self):
        height = 0
        for s in self.steps:
            if s == V:
                height += 1
            elif s == H:
                height -= 1
                if height < 0:
                    raise DyckError(f"prefix with more H than V in {self.steps!r}")
            else:
                raise DyckError(f"bad step {s!r}")
        if height:
            raise DyckError(f"unbalanced path {self.steps!r}")

    @property
    def semilength(self) -> int:
        return len(self.steps) // 2

    def __len__(self) -> int:
        return len(self.steps)

    def __add__(self, other: "DyckPath") -> "DyckPath":
        return DyckPath(self.steps + other.steps)

    def to_text(self) -> str:
        return self.steps.replace(V, "U").replace(H, "R")

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def from_text(cls, text: str) -> "DyckPath":
        text = text.strip().upper()
        if text in ("", "E", "EPS"):
            return cls("")
        if set(text) - {"U", "R"}:
            raise DyckError(f"path text must use U and R: {text!r}")
        if text[0] == "R":
            text = text[::-1]
        return cls(text.replace("U", V).replace("R", H))

    def grid_point(self, index: int) -> tuple[int, int]:
        """Grid coordinates after ``index`` steps, origin bottom-left."""
        m = self.semilength
        prefix = self.steps[:index]
        return m - prefix.count(H), m - prefix.count(V)

    def points(self) -> list[tuple[int, int]]:
        return [self.grid_point(k) for k in range(len(self.steps) + 1)]

    def vertical_steps(self) -> list[int]:
        """Word indices of the V steps, in reading order."""
        return [k for k, s in enumerate(self.steps) if s == V]


def staircase(m: int) -> DyckPath:
    return DyckPath("VH" * m)


def tent(m: int) -> DyckPath:
    return DyckPath("V" * m + "H" * m)


@lru_cache(maxsize=None)
def _words(m: int) -> tuple[str, ...]:
    out: list[str] = []

    def rec(prefix: str, opened: int, closed: int) -> None:
        if closed == m:
            out.append(prefix)
            return
        if opened < m:
            rec(prefix + V, opened + 1, closed)
        if closed < opened:
            rec(prefix + H, opened, closed + 1)

    rec("", 0, 0)
    return tuple(out)


def all_paths(m: int) -> list[DyckPath]:
    """Every Dyck path of semilength ``m``."""
    return [DyckPath(w) for w in _words(m)]


def excursions(path: DyckPath) -> list[DyckPath]:
    """Split at every return to the diagonal."""
    out, start, height = [], 0, 0
    for k, s in enumerate(path.steps):
        height += 1 if s == V else -1
        if height == 0:
            out.append(DyckPath(path.steps[start: k + 1]))
            start = k + 1
    return out


# --------------------------------------------------------------------------
# Catalan bijections


def _matching(path: DyckPath) -> list[tuple[int, int]]:
    """(V ordinal, H ordinal) pairs under parenthesis matching, V opening."""
    stack, pairs = [], []
    vi = hj = 0
    for s in path.steps:
        if s == V:
            stack.append(vi)
            vi += 1
        else:
            pairs.append((stack.pop(), hj))
            hj += 1
    return pairs


def _corner_matching(path: DyckPath) -> list[tuple[int, int]]:
    """Corners (V immediately followed by H) paired directly, all other V
    and H steps paired in reading order."""
    pairs, loose_v, loose_h = [], [], []
    vi = hj = 0
    steps = path.steps
    for k, s in enumerate(steps):
        if s == V:
            if k + 1 < len(steps) and steps[k + 1] == H:
                pairs.append((vi, hj))
            else:
                loose_v.append(vi)
            vi += 1
        else:
            if not (k > 0 and steps[k - 1] == V):
                loose_h.append(hj)
            hj += 1
    pairs.extend(zip(loose_v, loose_h))
    return pairs


def _perm_from_pairs(m: int, pairs: list[tuple[int, int]]) -> Permutation:
    out = [0] * m
    for vi, hj in pairs:
        out[m - 1 - hj] = m - vi
    return Permutation.trusted(out)


def dyck_to_perm231(path: DyckPath) -> Permutation:
    return _perm_from_pairs(path.semilength, _matching(path))


def dyck_to_perm321(path: DyckPath) -> Permutation:
    return _perm_from_pairs(path.semilength, _corner_matching(path))


def _rl_minima(perm: Sequence[int]) -> list[tuple[int, int]]:
    """(0-based position, value) of right-to-left minima, left to right."""
    out, low = [], None
    for i in range(len(perm) - 1, -1, -1):
        if low is None or perm[i] < low:
            low = perm[i]
            out.append((i, perm[i]))
    return out[::-1]


def _path_from_corners(perm: Sequence[int]) -> DyckPath:
    """The unique path whose corners hold the right-to-left minima of
    ``perm``.  Built in drawing order from the bottom-left, then reversed."""
    m = len(perm)
    forward, x, y = [], 0, 0
    for pos, val in _rl_minima(perm):
        col, row = pos, val - 1
        forward.append("U" * (row - y) + "R" * (col - x) + "RU")
        x, y = col + 1, row + 1
    forward.append("U" * (m - y))
    return DyckPath.from_text("".join(forward)[::-1]) if m else DyckPath("")


def _encode(perm: Sequence[int], pattern: str, decode: Callable) -> DyckPath:
    p = perm if isinstance(perm, Permutation) else Permutation(perm)
    if contains(Permutation(pattern), p):
        raise DyckError(f"{p} contains {pattern}")
    path = _path_from_corners(p)
    if decode(path) != p:  # pragma: no cover - guards the construction
        raise DyckError(f"no {pattern}-path reproduces {p}")
    return path


def perm231_to_dyck(perm: Sequence[int]) -> DyckPath:
    return _encode(perm, "231", dyck_to_perm231)


def perm321_to_dyck(perm: Sequence[int]) -> DyckPath:
    return _encode(perm, "321", dyck_to_perm321)


def _rc(perm: Sequence[int]) -> Permutation:
    return Permutation.trusted(len(perm) + 1 - v for v in reversed(perm))


def dyck_to_perm312(path: DyckPath) -> Permutation:
    """The 231 picture turned half a turn: read from the bottom-left, the
    i-th vertical step now covers value ``i+1``."""
    return _rc(dyck_to_perm231(path))


def perm312_to_dyck(perm: Sequence[int]) -> DyckPath:
    p = perm if isinstance(perm, Permutation) else Permutation(perm)
    if contains((3, 1, 2), p):
        raise DyckError(f"{p} contains 312")
    return perm231_to_dyck(_rc(p))


ENCODINGS: dict[str, tuple[Callable, Callable]] = {
    "231": (dyck_to_perm231, perm231_to_dyck),
    "321": (dyck_to_perm321, perm321_to_dyck),
    "312": (dyck_to_perm312, perm312_to_dyck),
}


def vertical_values(path: DyckPath, encoding: str) -> list[int]:
    """Value of the permutation point in the row of each V step."""
    m = path.semilength
    if encoding == "312":
        return list(range(1, m + 1))
    return list(range(m, 0, -1))


# --------------------------------------------------------------------------
# articulation points


@dataclass(frozen=True)
class ArticulationPoint:
    index: int
    grid: tuple[int, int]

    @classmethod
    def on(cls, path: DyckPath, index: int) -> "ArticulationPoint":
        return cls(index, path.grid_point(index))


def articulation_231(path: DyckPath) -> ArticulationPoint | None:
    """End of the first V step that comes after some H step."""
    seen_h = False
    for k, s in enumerate(path.steps):
        if s == H:
            seen_h = True
        elif seen_h:
            return ArticulationPoint.on(path, k + 1)
    return None


def articulation_321(path: DyckPath) -> ArticulationPoint | None:
    """End of the first H step that does not land on the diagonal."""
    nv = nh = 0
    for k, s in enumerate(path.steps):
        if s == V:
            nv += 1
        else:
            nh += 1
            if nv != nh:
                return ArticulationPoint.on(path, k + 1)
    return None


def articulation_231_from_perm(perm: Sequence[int]) -> ArticulationPoint | None:
    """Where the path meets the gridline under the '1' of the topmost 12."""
    ones = [perm[i] for i in range(len(perm)) if any(perm[j] > perm[i] for j in range(i + 1, len(perm)))]
    if not ones:
        return None
    v = max(ones)
    path = perm231_to_dyck(perm)
    for k, (_, y) in enumerate(path.points()):
        if y == v - 1:
            return ArticulationPoint.on(path, k)
    return None  # pragma: no cover


def articulation_321_from_perm(perm: Sequence[int]) -> ArticulationPoint | None:
    """Bottom-left corner of the cell of the '1' in the topmost 21."""
    best = None
    for i in range(len(perm)):
        if any(perm[j] > perm[i] for j in range(i)):
            if best is None or perm[i] > perm[best]:
                best = i
    if best is None:
        return None
    path = perm321_to_dyck(perm)
    target = (best, perm[best] - 1)
    for k, pt in enumerate(path.points()):
        if pt == target:
            return ArticulationPoint.on(path, k)
    return None


# --------------------------------------------------------------------------
# decorated paths


BELOW, ABOVE = "below", "above"


@dataclass(frozen=True)
class DecoratedDyckPath:
    path: DyckPath
    h: tuple[int, ...]
    placement: str = BELOW
    gap: int = 0

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(self.h))
        if len(self.h) != self.path.semilength:
            raise DyckError(f"need {self.path.semilength} decorations, got {len(self.h)}")
        if any(x < 0 for x in self.h) or self.gap < 0:
            raise DyckError("decorations must be nonnegative")
        if self.placement not in (BELOW, ABOVE):
            raise DyckError(f"placement must be 'below' or 'above', not {self.placement!r}")

    @property
    def weight(self) -> int:
        return self.path.semilength + sum(self.h) + self.gap

    def to_text(self) -> str:
        return f"{self.path.to_text()};{','.join(map(str, self.h))};{self.gap}"

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def from_text(cls, text: str, placement: str = BELOW) -> "DecoratedDyckPath":
        parts = text.strip().split(";")
        if len(parts) not in (2, 3):
            raise DyckError(f"decoration text must be 'path;h1,h2,...;gap': {text!r}")
        path = DyckPath.from_text(parts[0])
        h = tuple(int(x) for x in parts[1].split(",") if x.strip()) if parts[1].strip() else ()
        gap = int(parts[2]) if len(parts) == 3 and parts[2].strip() else 0
        return cls(path, h, placement, gap)


@dataclass(frozen=True)
class Convention:
    """How a juxtaposition class is drawn as decorated paths."""

    spec: JuxtSpec
    encoding: str
    placement: str
    gap_allowed: bool

    @property
    def increasing(self) -> bool:
        return tuple(self.spec.right.basis.patterns) == ((2, 1),)


CONVENTIONS: dict[str, Convention] = {
    "A": Convention(juxt("231|12"), "231", BELOW, False),
    "B": Convention(juxt("321|21"), "321", BELOW, True),
    "C": Convention(juxt("312|21"), "312", ABOVE, False),
    "231|21": Convention(juxt("231|21"), "231", BELOW, True),
    "321|12": Convention(juxt("321|12"), "321", BELOW, False),
    "312|12": Convention(juxt("312|12"), "312", BELOW, False),
}
CONVENTIONS["231|12"] = CONVENTIONS["A"]
CONVENTIONS["321|21"] = CONVENTIONS["B"]
CONVENTIONS["312|21"] = CONVENTIONS["C"]


def convention(cls: str | Convention) -> Convention:
    if isinstance(cls, Convention):
        return cls
    key = cls.replace("Av(", "").replace(")", "").strip()
    try:
        return CONVENTIONS[key]
    except KeyError:
        raise DyckError(f"no decorated-path convention for class {cls!r}") from None


def decorated_to_gridded(d: DecoratedDyckPath, cls: str | Convention) -> GriddedPermutation:
    """Place ``h_i`` right-hand points next to the point of the i-th V step
    (immediately below or above it) and ``gap`` points beyond every
    left-hand point; the right-hand side is monotone as the class demands."""
    conv = convention(cls)
    if d.placement != conv.placement:
        raise DyckError(f"class {conv.spec} places points {conv.placement}, not {d.placement}")
    if d.gap and not conv.gap_allowed:
        raise DyckError(f"class {conv.spec} has no gap above the left-hand side")
    decode = ENCODINGS[conv.encoding][0]
    lhs = decode(d.path)
    m = len(lhs)
    attached = [0] * (m + 1)
    for v, k in zip(vertical_values(d.path, conv.encoding), d.h):
        attached[v] = k
    new_value = [0] * (m + 1)
    rhs: list[int] = []
    height = 0

    def rhs_points(k: int) -> None:
        nonlocal height
        for _ in range(k):
            height += 1
            rhs.append(height)

    if conv.placement == ABOVE:
        rhs_points(d.gap)
    for v in range(1, m + 1):
        if conv.placement == BELOW:
            rhs_points(attached[v])
        height += 1
        new_value[v] = height
        if conv.placement == ABOVE:
            rhs_points(attached[v])
    if conv.placement == BELOW:
        rhs_points(d.gap)
    if not conv.increasing:
        rhs.reverse()
    perm = Permutation.trusted([new_value[v] for v in lhs] + rhs)
    return GriddedPermutation(perm, m)


def gridded_to_decorated(g: GriddedPermutation, cls: str | Convention) -> DecoratedDyckPath:
    conv = convention(cls)
    lhs, rhs = g.lhs, g.rhs
    want = sorted(rhs) if conv.increasing else sorted(rhs, reverse=True)
    if list(rhs) != want:
        raise DyckError(f"right-hand side of {g} is not monotone as {conv.spec} requires")
    encode = ENCODINGS[conv.encoding][1]
    path = encode(standardize(lhs))
    ordered = sorted(lhs)
    rank = {v: r for r, v in enumerate(ordered, 1)}
    counts = [0] * (len(lhs) + 1)
    gap = 0
    for r in rhs:
        if conv.placement == BELOW:
            above = [v for v in ordered if v > r]
            if above:
                counts[rank[above[0]]] += 1
            else:
                gap += 1
        else:
            below = [v for v in ordered if v < r]
            if below:
                counts[rank[below[-1]]] += 1
            else:
                gap += 1
    if gap and not conv.gap_allowed:
        raise DyckError(f"{g} has right-hand points beyond the left-hand side, not allowed in {conv.spec}")
    h = tuple(counts[v] for v in vertical_values(path, conv.encoding))
    return DecoratedDyckPath(path, h, conv.placement, gap)


def is_canonical_decoration(d: DecoratedDyckPath, cls: str | Convention) -> bool:
    conv = convention(cls)
    return is_canonical(conv.spec, decorated_to_gridded(d, conv))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


def decorations(cls: str | Convention, n: int) -> Iterator[DecoratedDyckPath]:
    """All decorated paths of total weight ``n`` for the class convention."""
    conv = convention(cls)
    for m in range(n + 1):
        extra = n - m
        slots = m + (1 if conv.gap_allowed else 0)
        for path in all_paths(m):
            for comp in _compositions(extra, slots):
                h = comp[:m]
                gap = comp[m] if conv.gap_allowed else 0
                yield DecoratedDyckPath(path, h, conv.placement, gap)


def count_canonical_decorations(cls: str | Convention, n: int) -> int:
    conv = convention(cls)
    return sum(1 for d in decorations(conv, n) if is_canonical_decoration(d, conv))
