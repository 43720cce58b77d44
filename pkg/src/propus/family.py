"""The difference-family solution object shared by search, catalog and CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    Block,
    InvalidInputError,
    block_to_sequence,
    is_difference_family,
    is_symmetric_block,
    paf_deficit,
)
from .params import PropusParameterSet


class PreconditionError(InvalidInputError):
    """A family does not meet the structural requirements of an operation."""


@dataclass(frozen=True)
class DifferenceFamily:
    """Four base blocks A, B, C, D of Z_v with their claimed parameter set.

    Construction checks only structure (moduli and block sizes); the
    difference property itself is checked by :meth:`lambda_by_counting`
    and friends so that broken families can still be loaded and reported on.
    """

    params: PropusParameterSet
    blocks: tuple[Block, Block, Block, Block]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if len(blocks) != 4:
            raise InvalidInputError("a family has exactly four blocks")
        v = self.params.v
        if any(b.v != v for b in blocks):
            raise InvalidInputError(f"all blocks must live in Z_{v}")
        sizes = tuple(b.size for b in blocks)
        if sizes != self.params.sizes:
            raise InvalidInputError(
                f"block sizes {sizes} do not match {self.params}"
            )
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_lists(cls, params: PropusParameterSet, lists: Sequence[Sequence[int]]):
        return cls(params, tuple(Block.of(params.v, lst) for lst in lists))

    @property
    def v(self) -> int:
        return self.params.v

    @property
    def a(self) -> Block:
        return self.blocks[0]

    @property
    def b(self) -> Block:
        return self.blocks[1]

    @property
    def c(self) -> Block:
        return self.blocks[2]

    @property
    def d(self) -> Block:
        return self.blocks[3]

    def symmetric_slots(self) -> str:
        """'A', 'D', 'AD' or '' according to which outer block is symmetric."""
        return ("A" if is_symmetric_block(self.a) else "") + (
            "D" if is_symmetric_block(self.d) else ""
        )

    def lambda_by_counting(self) -> int | None:
        return is_difference_family(self.blocks, self.v)

    def paf_deficit(self) -> list[int]:
        return paf_deficit([block_to_sequence(b) for b in self.blocks], [1, 1, 1, 1])

    def is_valid(self) -> bool:
        return self.lambda_by_counting() == self.params.lam

    def is_propus(self) -> bool:
        return self.is_valid() and self.b == self.c and bool(self.symmetric_slots())

    def canonical(self) -> str:
        """Stable text form used for naming and duplicate suppression."""
        lines = [self.params.header]
        lines += [",".join(map(str, b.elements)) for b in self.blocks]
        return "\n".join(lines) + "\n"
