"""Reference sequences: embedded prefixes and OEIS b-file ingestion.

A b-file lists one ``n a(n)`` pair per line; blank lines and lines starting
with ``#`` are ignored.  The first index read becomes the offset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence


class BFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class ReferenceSequence:
    id: str
    offset: int
    terms: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        if not self.terms:
            raise ValueError(f"{self.id}: reference sequence has no terms")

    def __getitem__(self, n: int) -> int:
        """The term a(n), honouring the offset."""
        k = n - self.offset
        if not 0 <= k < len(self.terms):
            raise IndexError(f"{self.id} has no term a({n})")
        return self.terms[k]

    @property
    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.terms))


# The twelve published terms, for lengths 1..12.
EMBEDDED: dict[str, ReferenceSequence] = {
    "A": ReferenceSequence("A033321", 1, (
        1, 2, 6, 21, 79, 311, 1265, 5275, 22431, 96900, 424068, 1876143)),
    "B": ReferenceSequence("A278301", 1, (
        1, 2, 6, 23, 98, 434, 1949, 8803, 39888, 181201, 825201, 3767757)),
    "C": ReferenceSequence("A165538", 1, (
        1, 2, 6, 22, 88, 367, 1568, 6810, 29943, 132958, 595227, 2683373)),
}


def embedded(label: str) -> ReferenceSequence:
    try:
        return EMBEDDED[label]
    except KeyError:
        raise KeyError(f"no embedded reference sequence for class {label!r}") from None


def parse_bfile(text: str, id: str = "") -> ReferenceSequence:
    indices: list[int] = []
    terms: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileError(f"expected 'n a(n)', got {raw!r}", lineno)
        try:
            n, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileError(f"non-integer entry in {raw!r}", lineno) from None
        if indices and n != indices[-1] + 1:
            raise BFileError(f"index {n} does not follow {indices[-1]}", lineno)
        indices.append(n)
        terms.append(value)
    if not terms:
        raise BFileError("b-file contains no terms")
    return ReferenceSequence(id, indices[0], tuple(terms))


def read_bfile(path: str | Path) -> ReferenceSequence:
    path = Path(path)
    stem = path.stem
    id = "A" + stem[1:] if stem[:1] in "bB" and stem[1:].isdigit() else stem
    return parse_bfile(path.read_text(), id=id)


@dataclass
class ComparisonReport:
    id: str
    checked: int
    mismatches: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.mismatches

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "checked": self.checked,
            "ok": self.ok,
            "mismatches": [
                {"n": n, "expected": str(e), "got": str(g)} for n, e, g in self.mismatches
            ],
        }


def compare(reference: ReferenceSequence, counts: Sequence[int], n_max: int | None = None) -> ComparisonReport:
    """Compare ``counts[n]`` (counts by length, from n = 0) with a(n) for
    every index the reference covers, up to ``n_max``."""
    report = ComparisonReport(reference.id, 0)
    for n in reference.indices:
        if n_max is not None and n > n_max:
            break
        if not 0 <= n < len(counts):
            continue
        report.checked += 1
        if counts[n] != reference[n]:
            report.mismatches.append((n, reference[n], counts[n]))
    return report
