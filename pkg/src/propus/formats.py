"""Family files (parameter header + four block lines) and matrix files (+/- text, plain PBM)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .core import Block, InvalidInputError
from .family import DifferenceFamily
from .params import PropusParameterSet


class FormatError(InvalidInputError):
    """Malformed or inconsistent file content."""


_META_RE = re.compile(r"^#\s*([A-Za-z_][\w-]*)\s*:\s*(.*)$")


@dataclass
class FamilyRecord:
    family: DifferenceFamily
    meta: dict[str, list[str]] = field(default_factory=dict)

    def get(self, key: str, default: str | None = None) -> str | None:
        values = self.meta.get(key)
        return values[0] if values else default


def _parse_block(v: int, line: str, lineno: int) -> Block:
    line = line.strip()
    if not line:
        return Block(v, ())
    try:
        elements = tuple(int(tok) for tok in line.split(","))
    except ValueError:
        raise FormatError(f"line {lineno}: expected comma-separated residues, got {line!r}") from None
    try:
        return Block(v, elements)
    except InvalidInputError as exc:
        raise FormatError(f"line {lineno}: {exc}") from None


def read_families(text: str) -> list[FamilyRecord]:
    """Parse one or more family records.

    A record is optional ``# key: value`` metadata lines, a header
    ``v;k1,k2,k3,k4;lambda`` and exactly four block lines (an empty line
    is an empty block).  Metadata is the comment group directly above a
    header; other ``#`` lines and blank lines are ignored.
    """
    lines = text.replace("\r\n", "\n").split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # text after the final LF is not a line
    records = []
    meta: dict[str, list[str]] = {}
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        if not line:
            meta = {}
            i += 1
            continue
        if line.startswith("#"):
            m = _META_RE.match(line)
            if m:
                meta.setdefault(m.group(1), []).append(m.group(2).strip())
            i += 1
            continue
        try:
            params = PropusParameterSet.parse(line)
        except InvalidInputError as exc:
            raise FormatError(f"line {i + 1}: {exc}") from None
        body = lines[i + 1 : i + 5]
        if len(body) < 4:
            raise FormatError(f"line {i + 1}: a family needs four block lines after its header")
        blocks = tuple(_parse_block(params.v, b, i + 2 + n) for n, b in enumerate(body))
        try:
            family = DifferenceFamily(params, blocks)
        except InvalidInputError as exc:
            raise FormatError(f"line {i + 1}: {exc}") from None
        records.append(FamilyRecord(family, meta))
        meta = {}
        i += 5
    return records


def read_family(text: str) -> FamilyRecord:
    records = read_families(text)
    if len(records) != 1:
        raise FormatError(f"expected exactly one family, found {len(records)}")
    return records[0]


def write_family(family: DifferenceFamily, meta: dict[str, list[str]] | None = None) -> str:
    out = []
    for key, values in (meta or {}).items():
        out += [f"# {key}: {value}" for value in values]
    out.append(family.params.header)
    out += [",".join(map(str, b.elements)) for b in family.blocks]
    return "\n".join(out) + "\n"


def write_families(records: list[FamilyRecord], preamble: str = "") -> str:
    return preamble + "\n".join(write_family(r.family, r.meta) for r in records)


# ---------------------------------------------------------------------------
# matrices

def _check_pm(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise FormatError("matrix must be square")
    if not np.isin(h, (1, -1)).all():
        raise FormatError("matrix entries must be +1 or -1")
    return h


def write_matrix_text(h) -> str:
    h = _check_pm(h)
    return "".join("".join("+" if x == 1 else "-" for x in row) + "\n" for row in h)


def read_matrix_text(text: str) -> np.ndarray:
    rows = [line for line in text.replace("\r\n", "\n").split("\n") if line != ""]
    if not rows:
        raise FormatError("empty matrix file")
    table = {"+": 1, "-": -1}
    try:
        h = np.array([[table[c] for c in row] for row in rows], dtype=np.int64)
    except KeyError as exc:
        raise FormatError(f"unexpected character {exc} in matrix") from None
    except ValueError:
        raise FormatError("matrix rows have different lengths") from None
    return _check_pm(h)


def write_matrix_pbm(h) -> str:
    """Plain PBM; a 1 bit (black) encodes -1 and a 0 bit (white) encodes +1."""
    h = _check_pm(h)
    n = h.shape[0]
    body = "".join("".join("1" if x == -1 else "0" for x in row) + "\n" for row in h)
    return f"P1\n{n} {n}\n" + body


def read_matrix_pbm(text: str) -> np.ndarray:
    tokens = []
    for line in text.split("\n"):
        line = line.split("#", 1)[0]
        tokens.append(line)
    stream = " ".join(tokens).split()
    if not stream or stream[0] != "P1":
        raise FormatError("not a plain PBM (P1) file")
    try:
        width, height = int(stream[1]), int(stream[2])
    except (IndexError, ValueError):
        raise FormatError("bad PBM dimensions") from None
    if width != height:
        raise FormatError("PBM image is not square")
    bits = "".join(stream[3:])
    if len(bits) != width * height or set(bits) - {"0", "1"}:
        raise FormatError("PBM raster does not match its dimensions")
    arr = np.array([1 if b == "0" else -1 for b in bits], dtype=np.int64)
    return arr.reshape(height, width)


def read_matrix(text: str) -> np.ndarray:
    if text.lstrip().startswith("P1"):
        return read_matrix_pbm(text)
    return read_matrix_text(text)
