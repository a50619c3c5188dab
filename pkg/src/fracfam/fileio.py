"""Reading and writing the text family format.

    n=5
    # comments start with '#'
    1,2
    2,3,5
    {}

Elements are 1-based and listed in strictly ascending order; ``{}`` is the
empty set.  Blank lines are ignored.
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

from .core import Family, FamilyError, check_width, mask_elements


class FamilyFormatError(FamilyError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parse_family(text: str) -> Family:
    n = None
    sets: list[int] = []
    seen: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        col0 = raw.index(line[0]) + 1
        if n is None:
            if not line.startswith("n="):
                raise FamilyFormatError("expected header 'n=<N>'", lineno, col0)
            value = line[2:].strip()
            if not value.isdigit():
                raise FamilyFormatError(f"bad ground-set size {value!r}", lineno, col0 + 2)
            n = int(value)
            try:
                check_width(n)
            except FamilyError as exc:
                raise FamilyFormatError(str(exc), lineno, col0 + 2) from None
            continue
        mask = 0
        if line != "{}":
            prev = 0
            col = col0
            for token in line.split(","):
                stripped = token.strip()
                tcol = col + (len(token) - len(token.lstrip()))
                if not stripped.isdigit():
                    raise FamilyFormatError(f"bad element {stripped!r}", lineno, tcol)
                e = int(stripped)
                if not 1 <= e <= n:
                    raise FamilyFormatError(f"element {e} outside [1, {n}]", lineno, tcol)
                if e <= prev:
                    raise FamilyFormatError("elements must be strictly ascending", lineno, tcol)
                prev = e
                mask |= 1 << (e - 1)
                col += len(token) + 1
        if mask in seen:
            raise FamilyFormatError(f"duplicate set (first seen on line {seen[mask]})", lineno, col0)
        seen[mask] = lineno
        sets.append(mask)
    if n is None:
        raise FamilyFormatError("missing header 'n=<N>'", 1)
    return Family(n, tuple(sets))


def format_family(family: Family) -> str:
    lines = [f"n={family.n}"]
    for mask in family.sets:
        elems = mask_elements(mask)
        lines.append(",".join(map(str, elems)) if elems else "{}")
    return "\n".join(lines) + "\n"


def read_family(path: Union[str, Path]) -> Family:
    return parse_family(Path(path).read_text(encoding="utf-8"))


def write_family(family: Family, path: Union[str, Path]) -> None:
    Path(path).write_text(format_family(family), encoding="utf-8")
