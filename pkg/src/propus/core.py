"""Binary sequences over Z_v, their periodic autocorrelation, and base blocks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class InvalidInputError(ValueError):
    """Raised when an argument violates an operation's precondition."""


@dataclass(frozen=True)
class BinarySequence:
    """A +-1 sequence of length v with cyclic indexing."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if not entries:
            raise InvalidInputError("a binary sequence needs v >= 1")
        if any(e not in (1, -1) for e in entries):
            raise InvalidInputError("binary sequence entries must be +1 or -1")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_array(cls, arr) -> BinarySequence:
        return cls(tuple(int(e) for e in np.asarray(arr).ravel()))

    @classmethod
    def from_string(cls, text: str) -> BinarySequence:
        """Parse a '+'/'-' string such as ``"++-"``."""
        try:
            return cls(tuple({"+": 1, "-": -1}[c] for c in text.strip()))
        except KeyError as exc:
            raise InvalidInputError(f"unexpected character {exc} in sequence") from None

    @property
    def v(self) -> int:
        return len(self.entries)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def __getitem__(self, i: int) -> int:
        return self.entries[i % self.v]

    def __str__(self) -> str:
        return "".join("+" if e == 1 else "-" for e in self.entries)


@dataclass(frozen=True)
class PafVector:
    v: int
    values: tuple[int, ...]

    @property
    def half(self) -> tuple[int, ...]:
        """Values at shifts 1..v//2, which determine the rest by symmetry."""
        return self.values[1 : self.v // 2 + 1]


@dataclass(frozen=True)
class Block:
    """A base block: a subset of Z_v stored as sorted residues."""

    v: int
    elements: tuple[int, ...] = ()

    def __post_init__(self):
        if self.v < 1:
            raise InvalidInputError("block modulus must be positive")
        elements = tuple(int(e) for e in self.elements)
        if any(b <= a for a, b in zip(elements, elements[1:])):
            raise InvalidInputError("block elements must be strictly increasing")
        if elements and (elements[0] < 0 or elements[-1] >= self.v):
            raise InvalidInputError(f"block elements must lie in 0..{self.v - 1}")
        object.__setattr__(self, "elements", elements)

    @classmethod
    def of(cls, v: int, elements: Iterable[int]) -> Block:
        """Build a block from residues in any order; duplicates are rejected."""
        elements = [int(e) for e in elements]
        if len(set(elements)) != len(elements):
            raise InvalidInputError("block elements must be distinct")
        return cls(v, tuple(sorted(elements)))

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def block_to_sequence(block: Block) -> BinarySequence:
    entries = [1] * block.v
    for i in block.elements:
        entries[i] = -1
    return BinarySequence(tuple(entries))


def sequence_to_block(seq: BinarySequence) -> Block:
    return Block(seq.v, tuple(i for i, e in enumerate(seq.entries) if e == -1))


def blocks_to_array(blocks: Sequence[Block]) -> np.ndarray:
    """Rows of +-1 entries for a list of blocks sharing one modulus."""
    v = blocks[0].v
    out = np.ones((len(blocks), v), dtype=np.int64)
    for row, block in zip(out, blocks):
        row[list(block.elements)] = -1
    return out


def _shift_index(v: int, shifts) -> np.ndarray:
    return (np.arange(v)[None, :] + np.asarray(shifts)[:, None]) % v


def paf_values(arr) -> np.ndarray:
    """PAF of a single +-1 array at every shift 0..v-1 (exact integers)."""
    a = np.asarray(arr, dtype=np.int64)
    idx = _shift_index(len(a), np.arange(len(a)))
    return (a[idx] * a[None, :]).sum(axis=1)


def paf_rows(arrs, shifts=None) -> np.ndarray:
    """Batched PAF for the rows of a 2-D array, restricted to ``shifts``.

    Defaults to shifts 1..v//2, the part used as a matching key.
    """
    a = np.asarray(arrs, dtype=np.int64)
    v = a.shape[1]
    if shifts is None:
        shifts = np.arange(1, v // 2 + 1)
    idx = _shift_index(v, shifts)
    return np.einsum("nsi,ni->ns", a[:, idx], a)


def paf(seq: BinarySequence) -> PafVector:
    return PafVector(seq.v, tuple(int(x) for x in paf_values(seq.entries)))


def is_symmetric(seq: BinarySequence) -> bool:
    v = seq.v
    return all(seq.entries[i] == seq.entries[v - i] for i in range(1, v))


def is_skew(seq: BinarySequence) -> bool:
    v = seq.v
    return all(seq.entries[i] == -seq.entries[v - i] for i in range(1, v))


def is_symmetric_block(block: Block) -> bool:
    members = set(block.elements)
    return all((-x) % block.v in members for x in members)


def paf_deficit(seqs: Sequence[BinarySequence], multiplicities: Sequence[int]) -> list[int]:
    """Weighted PAF sum at shifts 1..v-1; all zero iff the sequences complement."""
    if not seqs:
        raise InvalidInputError("need at least one sequence")
    if len(seqs) != len(multiplicities):
        raise InvalidInputError("one multiplicity per sequence is required")
    v = seqs[0].v
    if any(s.v != v for s in seqs):
        raise InvalidInputError("all sequences must share the same length")
    total = np.zeros(v, dtype=np.int64)
    for s, m in zip(seqs, multiplicities):
        total += int(m) * paf_values(s.entries)
    return [int(x) for x in total[1:]]


def difference_counts(blocks: Sequence[Block], v: int) -> Counter:
    """Multiset of nonzero within-block differences x - y (mod v)."""
    counts: Counter = Counter({a: 0 for a in range(1, v)})
    for block in blocks:
        for x in block.elements:
            for y in block.elements:
                if x != y:
                    counts[(x - y) % v] += 1
    return counts


def is_difference_family(blocks: Sequence[Block], v: int) -> int | None:
    """Return lambda if every nonzero difference occurs equally often, else None."""
    if any(b.v != v for b in blocks):
        raise InvalidInputError("all blocks must share modulus v")
    if v == 1:
        return 0
    counts = set(difference_counts(blocks, v).values())
    if len(counts) != 1:
        return None
    return counts.pop()
