"""Plain-text point files with exact digit round-trips.

Layout: a ``#bases b_1,...,b_s`` header, an optional ``#generator`` comment
carrying provenance, then one point per line with single-space separated
coordinates.  A coordinate is ``0.`` followed by its digits most significant
first, concatenated for bases up to 10 and dash-separated above that
(``0.101`` is 5/8 in base 2).  Digit strings are written verbatim from the
stored vectors, so read(write(ps)) reproduces the point set bit for bit,
trailing zeros included.
"""

from __future__ import annotations

from typing import TextIO

from .badic import DigitVector
from .sequences import PointSet

__all__ = ["format_coordinate", "parse_coordinate", "read_point_set", "write_point_set"]


def format_coordinate(x: DigitVector) -> str:
    if x.base <= 10:
        return "0." + "".join(str(d) for d in x.digits)
    return "0." + "-".join(str(d) for d in x.digits)


def parse_coordinate(text: str, base: int) -> DigitVector:
    if not text.startswith("0."):
        raise ValueError(f"coordinate {text!r} must start with '0.'")
    body = text[2:]
    if not body:
        return DigitVector(base, ())
    if base <= 10:
        digits = tuple(int(ch) for ch in body)
    else:
        digits = tuple(int(part) for part in body.split("-"))
    return DigitVector(base, digits)  # digit range re-checked by the constructor


def write_point_set(points: PointSet, fh: TextIO) -> None:
    fh.write("#bases " + ",".join(str(b) for b in points.bases) + "\n")
    if points.provenance:
        fh.write(f"#generator {points.provenance}\n")
    for pt in points.points:
        fh.write(" ".join(format_coordinate(x) for x in pt) + "\n")


def read_point_set(fh: TextIO) -> PointSet:
    bases: tuple[int, ...] | None = None
    provenance = ""
    rows = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("#bases"):
                try:
                    bases = tuple(int(p) for p in line[len("#bases") :].strip().split(","))
                except ValueError:
                    raise ValueError(f"line {lineno}: malformed #bases header {line!r}") from None
            elif line.startswith("#generator"):
                provenance = line[len("#generator") :].strip()
            continue
        if bases is None:
            raise ValueError(f"line {lineno}: points before the #bases header")
        parts = line.split(" ")
        if len(parts) != len(bases):
            raise ValueError(f"line {lineno}: {len(parts)} coordinates, expected {len(bases)}")
        try:
            rows.append(tuple(parse_coordinate(p, b) for p, b in zip(parts, bases)))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if bases is None:
        raise ValueError("missing #bases header")
    if not rows:
        raise ValueError("point file has no points")
    return PointSet(bases, tuple(rows), provenance=provenance)
