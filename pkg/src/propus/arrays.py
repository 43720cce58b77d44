"""Circulant blocks, the Goethals-Seidel and Propus arrays, Hadamard checks.

Matrices are plain 2-D ``numpy`` integer arrays.  Products with the
exchange matrix R are done as row/column reversals; :func:`back_circulant_R`
builds R explicitly for tests and for the general-product slow path.
"""

from __future__ import annotations

import numpy as np

from .core import BinarySequence, InvalidInputError, block_to_sequence
from .family import DifferenceFamily, PreconditionError


def circulant(seq) -> np.ndarray:
    a = np.asarray(seq.entries if isinstance(seq, BinarySequence) else seq, dtype=np.int64)
    v = len(a)
    idx = (np.arange(v)[None, :] - np.arange(v)[:, None]) % v
    return a[idx]


def back_circulant_R(v: int) -> np.ndarray:
    if v < 1:
        raise InvalidInputError("order must be positive")
    return np.eye(v, dtype=np.int64)[::-1].copy()


def right_R(c: np.ndarray) -> np.ndarray:
    """C R, i.e. C with its columns reversed."""
    return c[:, ::-1]


def left_R(c: np.ndarray) -> np.ndarray:
    """R C, i.e. C with its rows reversed."""
    return c[::-1, :]


def _check_blocks(*cs) -> int:
    cs = [np.asarray(c) for c in cs]
    v = cs[0].shape[0]
    for c in cs:
        if c.ndim != 2 or c.shape != (v, v):
            raise InvalidInputError("all four blocks must be square of one order")
    return v


def goethals_seidel(c1, c2, c3, c4) -> np.ndarray:
    _check_blocks(c1, c2, c3, c4)
    R_ = right_R
    L_ = left_R
    return np.block(
        [
            [c1, R_(c2), R_(c3), R_(c4)],
            [-R_(c2), c1, -L_(c4), L_(c3)],
            [-R_(c3), L_(c4), c1, -L_(c2)],
            [-R_(c4), -L_(c3), L_(c2), c1],
        ]
    )


def propus(c1, c2, c3, c4) -> np.ndarray:
    _check_blocks(c1, c2, c3, c4)
    R_ = right_R
    L_ = left_R
    return np.block(
        [
            [-c1, R_(c2), R_(c3), R_(c4)],
            [R_(c3), L_(c4), c1, -L_(c2)],
            [R_(c2), c1, -L_(c4), L_(c3)],
            [R_(c4), -L_(c3), L_(c2), c1],
        ]
    )


def is_hadamard(h) -> bool:
    h = np.asarray(h, dtype=np.int64)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvalidInputError("a Hadamard candidate must be square")
    if not np.isin(h, (1, -1)).all():
        raise InvalidInputError("a Hadamard candidate must have +-1 entries")
    n = h.shape[0]
    return bool(np.array_equal(h @ h.T, n * np.eye(n, dtype=np.int64)))


def is_symmetric_matrix(h) -> bool:
    h = np.asarray(h)
    return h.shape[0] == h.shape[1] and bool(np.array_equal(h, h.T))


def is_skew_type(h) -> bool:
    """H + H^T = 2I."""
    h = np.asarray(h, dtype=np.int64)
    n = h.shape[0]
    return h.shape == (n, n) and bool(np.array_equal(h + h.T, 2 * np.eye(n, dtype=np.int64)))


def family_circulants(family: DifferenceFamily) -> list[np.ndarray]:
    return [circulant(block_to_sequence(b)) for b in family.blocks]


def propus_order(family: DifferenceFamily) -> list[np.ndarray]:
    """Circulants ordered for the Propus array; D takes the first slot if only D is symmetric.

    Raises PreconditionError unless B == C and A or D is symmetric.
    """
    if family.b != family.c:
        raise PreconditionError("not a propus family: blocks B and C differ")
    slots = family.symmetric_slots()
    if not slots:
        raise PreconditionError("not a propus family: neither A nor D is symmetric")
    ca, cb, cc, cd = family_circulants(family)
    if "A" in slots:
        return [ca, cb, cc, cd]
    return [cd, cb, cc, ca]


def build_symmetric_hadamard(family: DifferenceFamily) -> np.ndarray:
    h = propus(*propus_order(family))
    if not is_hadamard(h):
        raise PreconditionError(f"blocks do not form a difference family for {family.params}")
    if not is_symmetric_matrix(h):
        raise RuntimeError("propus array of a propus family came out non-symmetric")
    return h
