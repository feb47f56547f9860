"""Reading and writing the one-group-per-file text format.

A group file is line oriented:

    # permutations are written 1-based on disk
    name: f20
    degree: 5
    order: 20
    (1,2,3,4,5)
    (2,3,5,4)

``degree`` is required and must precede the generators; ``name`` and
``order`` are optional.  Each remaining line is one generator, either in
disjoint-cycle notation or as a bracketed image list ``[2,3,1,5,4]``.
Blank lines and ``#`` comments are ignored.  Parse errors carry the
1-based line and column of the offending character.

Points are 1-based only here; the rest of the library is 0-based.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from pathlib import Path

from .errors import GroupFileError
from .group import GeneratedGroup
from .perm import Perm


@dataclass(frozen=True)
class GroupFile:
    degree: int
    generators: tuple[Perm, ...]
    name: str | None = None
    order: int | None = None

    def group(self) -> GeneratedGroup:
        return GeneratedGroup(self.degree, list(self.generators))


def _skip_spaces(line: str, i: int) -> int:
    while i < len(line) and line[i] in " \t":
        i += 1
    return i


def _scan_number(line: str, i: int, line_no: int) -> tuple[int, int, int]:
    """Read digits at i; return (value, start index, index after)."""
    start = _skip_spaces(line, i)
    end = start
    while end < len(line) and line[end].isdigit():
        end += 1
    if end == start:
        found = repr(line[start]) if start < len(line) else "end of line"
        raise GroupFileError(f"expected a number, found {found}", line_no, start + 1)
    return int(line[start:end]), start, end


def _checked_point(val: int, degree: int, line_no: int, col: int,
                   seen: set[int], what: str) -> int:
    if not 1 <= val <= degree:
        raise GroupFileError(f"{what} {val} outside 1..{degree}", line_no, col)
    if val - 1 in seen:
        raise GroupFileError(f"{what} {val} appears twice", line_no, col)
    seen.add(val - 1)
    return val - 1


def _scan_cycles(line: str, degree: int, line_no: int) -> Perm:
    images = list(range(degree))
    seen: set[int] = set()
    i = _skip_spaces(line, 0)
    while i < len(line):
        if line[i] == "#":
            break
        if line[i] != "(":
            raise GroupFileError(f"expected '(', found {line[i]!r}", line_no, i + 1)
        open_col = i + 1
        i = _skip_spaces(line, i + 1)
        entries: list[int] = []
        while True:
            if i < len(line) and line[i] == ")":
                i += 1
                break
            if i >= len(line):
                raise GroupFileError("unclosed cycle", line_no, open_col)
            val, start, i = _scan_number(line, i, line_no)
            entries.append(
                _checked_point(val, degree, line_no, start + 1, seen, "point")
            )
            i = _skip_spaces(line, i)
            if i < len(line) and line[i] == ",":
                i += 1
            elif i >= len(line) or line[i] != ")":
                raise GroupFileError(
                    "unclosed cycle" if i >= len(line)
                    else f"expected ',' or ')', found {line[i]!r}",
                    line_no,
                    open_col if i >= len(line) else i + 1,
                )
        for a, b in zip(entries, entries[1:] + entries[:1]):
            images[a] = b
        i = _skip_spaces(line, i)
    return Perm(images)


def _scan_images(line: str, degree: int, line_no: int) -> Perm:
    i = _skip_spaces(line, 0)
    open_col = i + 1
    i += 1
    out: list[int] = []
    seen: set[int] = set()
    while True:
        i = _skip_spaces(line, i)
        if i < len(line) and line[i] == "]":
            i += 1
            break
        if i >= len(line):
            raise GroupFileError("unclosed image list", line_no, open_col)
        val, start, i = _scan_number(line, i, line_no)
        out.append(_checked_point(val, degree, line_no, start + 1, seen, "image"))
        i = _skip_spaces(line, i)
        if i < len(line) and line[i] == ",":
            i += 1
        elif i >= len(line) or line[i] != "]":
            raise GroupFileError(
                "unclosed image list" if i >= len(line)
                else f"expected ',' or ']', found {line[i]!r}",
                line_no,
                open_col if i >= len(line) else i + 1,
            )
    if len(out) != degree:
        raise GroupFileError(
            f"image list has {len(out)} entries for degree {degree}",
            line_no,
            open_col,
        )
    i = _skip_spaces(line, i)
    if i < len(line) and line[i] != "#":
        raise GroupFileError(f"trailing text {line[i:]!r}", line_no, i + 1)
    return Perm(out)


def _header_value(raw: str, i: int, head: str) -> tuple[str, int]:
    start = _skip_spaces(raw, i + len(head) + 1)
    return raw[start:].strip(), start + 1


def parse_group_text(text: str) -> GroupFile:
    name: str | None = None
    degree: int | None = None
    order: int | None = None
    gens: list[Perm] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        i = _skip_spaces(raw, 0)
        if i >= len(raw) or raw[i] == "#":
            continue
        head, sep, _ = raw[i:].partition(":")
        key = head.strip().lower()
        if sep and key in ("name", "degree", "order"):
            value, col = _header_value(raw, i, head)
            if key == "name":
                if name is not None:
                    raise GroupFileError("name given twice", line_no, i + 1)
                if not value:
                    raise GroupFileError("empty name", line_no, col)
                name = value
                continue
            if not value.isdigit() or int(value) < 1:
                raise GroupFileError(
                    f"{key} must be a positive number, found {value!r}",
                    line_no,
                    col,
                )
            if key == "degree":
                if degree is not None:
                    raise GroupFileError("degree given twice", line_no, i + 1)
                degree = int(value)
            else:
                if order is not None:
                    raise GroupFileError("order given twice", line_no, i + 1)
                order = int(value)
            continue
        if degree is None:
            raise GroupFileError(
                "generator before the degree header", line_no, i + 1
            )
        if raw[i] == "[":
            gens.append(_scan_images(raw, degree, line_no))
        elif raw[i] == "(":
            gens.append(_scan_cycles(raw, degree, line_no))
        else:
            raise GroupFileError(
                f"expected a header, '(' or '[', found {raw[i]!r}",
                line_no,
                i + 1,
            )
    if degree is None:
        raise GroupFileError("missing degree header")
    return GroupFile(degree, tuple(gens), name, order)


def load_group_file(path: str | Path) -> GroupFile:
    return parse_group_text(Path(path).read_text(encoding="utf-8"))


def fmt_generator(p: Perm) -> str:
    """1-based disjoint cycles with fixed points omitted; identity is '()'."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycles)


def emit_group_text(gf: GroupFile) -> str:
    lines = []
    if gf.name:
        lines.append(f"name: {gf.name}")
    lines.append(f"degree: {gf.degree}")
    if gf.order is not None:
        lines.append(f"order: {gf.order}")
    lines.extend(fmt_generator(g) for g in gf.generators)
    return "\n".join(lines) + "\n"


def save_group_file(path: str | Path, gf: GroupFile) -> None:
    Path(path).write_text(emit_group_text(gf), encoding="utf-8")


def shipped_corpus_dir() -> Path:
    """The directory of group files installed with the package."""
    return Path(str(importlib.resources.files("permnorm") / "corpus"))

