"""Randomized hash-bucketed search for periodic Golay pairs and propus families.

Candidates are matched through their PAF values at shifts 1..v//2 (the
"key").  A sign-signature hash of the key picks one of M = 2^m branches of
a crown; each branch keeps at most ``capacity`` leaves per side in a ring
buffer, and only leaves that land in the same branch are ever compared.
"""

from __future__ import annotations

import itertools
import math
import queue
import secrets
import threading
import time
from dataclasses import dataclass, fields
from typing import Callable, Iterator, Sequence

import numpy as np

from .arrays import build_symmetric_hadamard, is_hadamard, is_symmetric_matrix
from .core import Block, BinarySequence, InvalidInputError, paf_rows, paf_values
from .family import DifferenceFamily
from .params import PropusParameterSet

MASK32 = 0xFFFFFFFF
SIGN_MODES = ("binary", "ternary")
GOLAY_VARIANTS = ("brute", "table", "tree")
EXHAUSTIVE_V_CAP = 13


@dataclass
class SearchConfig:
    seed: int | None = None
    crown_m: int = 8
    capacity: int = 1024
    batch_size: int = 256
    max_candidates: int | None = None
    time_budget: float | None = None
    workers: int = 1
    sign_mode: str = "ternary"
    symmetric_slot: str = "A"
    max_results: int | None = None

    def __post_init__(self):
        if not 1 <= self.crown_m <= 31:
            raise InvalidInputError("crown exponent m must be in 1..31")
        if self.capacity < 1 or self.batch_size < 1 or self.workers < 1:
            raise InvalidInputError("capacity, batch size and workers must be positive")
        if self.sign_mode not in SIGN_MODES:
            raise InvalidInputError(f"sign mode must be one of {SIGN_MODES}")
        if self.symmetric_slot not in ("A", "D"):
            raise InvalidInputError("symmetric slot must be A or D")
        if self.seed is None:
            self.seed = secrets.randbits(63)


@dataclass
class SearchStats:
    sequences: int = 0       # sequences generated and PAF-evaluated
    candidates: int = 0      # leaves produced (a left leaf may hold two sequences)
    comparisons: int = 0     # exact key comparisons between opposite leaves
    key_matches: int = 0     # comparisons where the keys were equal
    exact_passes: int = 0    # matches that passed the full zero-sum check
    emitted: int = 0         # distinct results handed to the caller

    def add(self, other: SearchStats):
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


# ---------------------------------------------------------------------------
# random candidates

def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


def worker_rng(seed: int, worker: int) -> np.random.Generator:
    return np.random.default_rng((int(seed) ^ splitmix64(worker)) & 0xFFFFFFFFFFFFFFFF)


def _check_weight(v: int, k: int):
    if not 0 <= k <= v:
        raise InvalidInputError(f"weight {k} out of range 0..{v}")


def random_fixed_weight_sequence(v: int, k: int, rng: np.random.Generator) -> BinarySequence:
    """Uniform sequence with exactly k entries -1 (partial Fisher-Yates)."""
    _check_weight(v, k)
    pos = list(range(v))
    for i in range(k):
        j = int(rng.integers(i, v))
        pos[i], pos[j] = pos[j], pos[i]
    entries = [1] * v
    for i in pos[:k]:
        entries[i] = -1
    return BinarySequence(tuple(entries))


def random_fixed_weight_rows(v: int, k: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """n independent uniform weight-k rows (argsort of uniform keys)."""
    _check_weight(v, k)
    out = np.ones((n, v), dtype=np.int64)
    if k:
        picks = np.argsort(rng.random((n, v)), axis=1)[:, :k]
        np.put_along_axis(out, picks, -1, axis=1)
    return out


def _mirror_orbits(v: int) -> tuple[list[int], list[tuple[int, int]]]:
    singles = [i for i in range(v) if (-i) % v == i]
    pairs = [(i, v - i) for i in range(1, (v + 1) // 2) if i != v - i]
    return singles, pairs


def _symmetric_split(v: int, k: int) -> tuple[list[int], list[float]]:
    """Feasible numbers of fixed points in a symmetric weight-k set and their weights."""
    singles, pairs = _mirror_orbits(v)
    options, weights = [], []
    for s in range(len(singles) + 1):
        if (k - s) % 2 == 0 and 0 <= (k - s) // 2 <= len(pairs):
            options.append(s)
            weights.append(math.comb(len(singles), s) * math.comb(len(pairs), (k - s) // 2))
    if not options:
        raise InvalidInputError(f"no symmetric sequence of length {v} has {k} minus-ones")
    return options, weights


def check_symmetric_weight(v: int, k: int):
    _check_weight(v, k)
    _symmetric_split(v, k)


def random_symmetric_rows(v: int, k: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """n uniform symmetric rows (a_i = a_{v-i}) with exactly k entries -1."""
    _check_weight(v, k)
    singles, pairs = _mirror_orbits(v)
    options, weights = _symmetric_split(v, k)
    probs = np.array(weights, dtype=float) / sum(weights)
    which = rng.choice(len(options), size=n, p=probs) if len(options) > 1 else np.zeros(n, int)
    out = np.ones((n, v), dtype=np.int64)
    pair_arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    for idx, s in enumerate(options):
        rows = np.flatnonzero(which == idx)
        if not len(rows):
            continue
        if s:
            fixed = np.argsort(rng.random((len(rows), len(singles))), axis=1)[:, :s]
            out[rows[:, None], np.asarray(singles)[fixed]] = -1
        t = (k - s) // 2
        if t:
            chosen = np.argsort(rng.random((len(rows), len(pairs))), axis=1)[:, :t]
            cols = pair_arr[chosen].reshape(len(rows), -1)
            out[rows[:, None], cols] = -1
    return out


def random_symmetric_sequence(v: int, k: int, rng: np.random.Generator) -> BinarySequence:
    """Uniform symmetric sequence with exactly k minus-ones.

    For odd v the parity of k fixes a_0 and the rest comes in mirror pairs.
    """
    return BinarySequence.from_array(random_symmetric_rows(v, k, 1, rng)[0])


# ---------------------------------------------------------------------------
# hashing

def _signs(key, sign_mode: str) -> list[int]:
    if sign_mode == "binary":
        return [1 if x > 0 else 0 for x in key]
    return [(x > 0) - (x < 0) for x in key]


def hash_label(key: Sequence[int], m: int, sign_mode: str = "binary") -> int:
    """Branch index in [0, 2^m) from the signs of the key entries.

    With at most m entries the label is sum(sign_i * 2^(i-1)) reduced mod 2^m;
    longer keys are folded through a 32-bit rotate-left register first.
    """
    if sign_mode not in SIGN_MODES:
        raise InvalidInputError(f"sign mode must be one of {SIGN_MODES}")
    signs = _signs(key, sign_mode)
    M = 1 << m
    if len(signs) <= m:
        return sum(s << i for i, s in enumerate(signs)) % M
    F = 0
    for s in signs:
        F = ((F << 1) | (F >> 31)) & MASK32
        F = (F | s) if sign_mode == "binary" else (F + s) & MASK32
    return F % M


def hash_labels(keys: np.ndarray, m: int, sign_mode: str = "binary") -> np.ndarray:
    """Vectorized :func:`hash_label` over the rows of ``keys``."""
    keys = np.asarray(keys, dtype=np.int64)
    signs = (keys > 0).astype(np.int64) if sign_mode == "binary" else np.sign(keys)
    n, h = signs.shape
    M = 1 << m
    if h <= m:
        return (signs @ (np.int64(1) << np.arange(h, dtype=np.int64))) % M
    F = np.zeros(n, dtype=np.int64)
    for i in range(h):
        F = ((F << 1) | (F >> 31)) & MASK32
        F = (F | signs[:, i]) if sign_mode == "binary" else (F + signs[:, i]) & MASK32
    return F % M


# ---------------------------------------------------------------------------
# crown of branches

class _Side:
    """Ring buffer of leaves (key row + payload) on one side of a branch."""

    __slots__ = ("keys", "payloads", "count", "pos", "capacity")

    def __init__(self, width: int, capacity: int):
        self.capacity = capacity
        self.keys = np.empty((min(capacity, 8), width), dtype=np.int64)
        self.payloads: list = []
        self.count = 0
        self.pos = 0

    def matches(self, key: np.ndarray) -> list[int]:
        if not self.count:
            return []
        hits = np.flatnonzero((self.keys[: self.count] == key).all(axis=1))
        return hits.tolist()

    def push(self, key: np.ndarray, payload):
        if self.count < self.capacity:
            if self.count == len(self.keys):
                grown = np.empty((min(2 * len(self.keys), self.capacity), self.keys.shape[1]), np.int64)
                grown[: self.count] = self.keys[: self.count]
                self.keys = grown
            self.keys[self.count] = key
            self.payloads.append(payload)
            self.count += 1
        else:
            # full: overwrite the oldest leaf
            self.keys[self.pos] = key
            self.payloads[self.pos] = payload
            self.pos = (self.pos + 1) % self.capacity


class _Branch:
    __slots__ = ("sides", "lock")

    def __init__(self, width: int, capacity: int):
        self.sides = (_Side(width, capacity), _Side(width, capacity))
        self.lock = threading.Lock()


class Crown:
    """M = 2^m branches, allocated lazily, each holding two leaf sides."""

    def __init__(self, m: int, capacity: int, width: int, sign_mode: str = "ternary"):
        self.m = m
        self.capacity = capacity
        self.width = width
        self.sign_mode = sign_mode
        self.branches: dict[int, _Branch] = {}
        self._lock = threading.Lock()

    def _branch(self, label: int) -> _Branch:
        branch = self.branches.get(label)
        if branch is None:
            with self._lock:
                branch = self.branches.setdefault(label, _Branch(self.width, self.capacity))
        return branch

    def insert(self, side: int, label: int, key: np.ndarray, payload, stats: SearchStats) -> list:
        """Store a leaf and return the payloads of opposite leaves with an equal key."""
        branch = self._branch(int(label))
        with branch.lock:
            other = branch.sides[1 - side]
            stats.comparisons += other.count
            hits = [other.payloads[i] for i in other.matches(key)]
            branch.sides[side].push(key, payload)
        stats.key_matches += len(hits)
        return hits

    def occupancy(self) -> list[int]:
        """Leaf counts per allocated branch (both sides)."""
        return [b.sides[0].count + b.sides[1].count for b in self.branches.values()]

    def occupancy_histogram(self, bins: int = 8) -> dict:
        occ = self.occupancy()
        counts, edges = np.histogram(occ, bins=bins, range=(0, 2 * self.capacity)) if occ else ([], [])
        return {
            "branches": len(occ),
            "crown": 1 << self.m,
            "edges": [int(e) for e in edges],
            "counts": [int(c) for c in counts],
        }


# ---------------------------------------------------------------------------
# shared run loop

class _Engine:
    """Budget, worker and event handling common to both searches."""

    def __init__(self, config: SearchConfig, progress: Callable[[dict], None] | None = None,
                 progress_interval: float = 1.0):
        self.config = config
        self.stats = SearchStats()
        self.progress = progress
        self.progress_interval = progress_interval
        self._seen: set = set()
        self._certified: set = set()
        self._raw_seen: set = set()
        self._lock = threading.Lock()
        self.crown: Crown | None = None

    def _budget_left(self, started: float) -> bool:
        cfg = self.config
        if cfg.max_candidates is not None and self.stats.candidates >= cfg.max_candidates:
            return False
        if cfg.time_budget is not None and time.monotonic() - started >= cfg.time_budget:
            return False
        return True

    def _merge(self, local: SearchStats, results: list) -> list:
        fresh = []
        with self._lock:
            self.stats.add(local)
            for key, item in results:
                if key not in self._seen:
                    self._seen.add(key)
                    fresh.append(item)
        return fresh

    def _event(self, kind: str, **extra):
        if self.progress is None:
            return
        ev = {"event": kind, **self.stats.as_dict(), **extra}
        if self.crown is not None:
            ev["occupancy"] = self.crown.occupancy_histogram()
        self.progress(ev)

    def _step(self, rng: np.random.Generator, stats: SearchStats) -> list:
        raise NotImplementedError

    def run(self) -> Iterator:
        cfg = self.config
        started = time.monotonic()
        last = started
        emitted = 0
        limit = cfg.max_results
        self._event("start", seed=cfg.seed, workers=cfg.workers)
        if cfg.workers == 1:
            rng = worker_rng(cfg.seed, 0)
            while self._budget_left(started):
                local = SearchStats()
                for item in self._merge(local, self._step(rng, local)):
                    self.stats.emitted += 1
                    emitted += 1
                    self._event("found")
                    yield item
                    if limit is not None and emitted >= limit:
                        self._event("done", reason="max_results")
                        return
                if self.progress and time.monotonic() - last >= self.progress_interval:
                    last = time.monotonic()
                    self._event("progress")
            self._event("done", reason="budget")
            return

        out: queue.Queue = queue.Queue()
        stop = threading.Event()

        def work(idx: int):
            rng = worker_rng(cfg.seed, idx)
            try:
                while not stop.is_set() and self._budget_left(started):
                    local = SearchStats()
                    for item in self._merge(local, self._step(rng, local)):
                        out.put(("item", item))
            except BaseException as exc:  # surfaced in the consumer
                out.put(("error", exc))
            finally:
                out.put(("exit", idx))

        threads = [threading.Thread(target=work, args=(i,), daemon=True) for i in range(cfg.workers)]
        for t in threads:
            t.start()
        alive = len(threads)
        reason = "budget"
        try:
            while alive:
                try:
                    kind, payload = out.get(timeout=self.progress_interval)
                except queue.Empty:
                    self._event("progress")
                    continue
                if kind == "exit":
                    alive -= 1
                elif kind == "error":
                    raise payload
                else:
                    with self._lock:
                        self.stats.emitted += 1
                    emitted += 1
                    self._event("found")
                    yield payload
                    if limit is not None and emitted >= limit:
                        reason = "max_results"
                        return
        finally:
            stop.set()
            for t in threads:
                t.join()
            self._event("done", reason=reason)


# ---------------------------------------------------------------------------
# periodic Golay pairs

def _canonical_rotation(row) -> tuple[int, ...]:
    v = len(row)
    row = tuple(int(x) for x in row)
    return max(row[i:] + row[:i] for i in range(v))


class GolaySearch(_Engine):
    """Search for pairs (a, b) with paf_a(s) + paf_b(s) = 0 for s != 0.

    ``variant`` selects the matching scheme: ``brute`` (one a against a
    fresh bunch of w b's), ``table`` (w a's against w b's) or ``tree``
    (the hashed crown).  ``capacity`` plays the role of w for all three.
    """

    def __init__(self, v: int, k1: int, k2: int, config: SearchConfig,
                 variant: str = "tree", progress=None, progress_interval: float = 1.0):
        if v % 2 or v < 2:
            raise InvalidInputError("periodic Golay pairs exist only for even v")
        _check_weight(v, k1)
        _check_weight(v, k2)
        if variant not in GOLAY_VARIANTS:
            raise InvalidInputError(f"variant must be one of {GOLAY_VARIANTS}")
        super().__init__(config, progress, progress_interval)
        self.v, self.k1, self.k2, self.variant = v, k1, k2, variant
        self.h = v // 2
        if variant == "tree":
            self.crown = Crown(config.crown_m, config.capacity, self.h, config.sign_mode)

    def _accept(self, a, b, stats: SearchStats) -> list:
        a, b = np.asarray(a), np.asarray(b)
        raw = a.tobytes() + b.tobytes()
        if raw in self._raw_seen:
            return []
        self._raw_seen.add(raw)
        total = paf_values(a) + paf_values(b)
        if np.any(total[1:]):
            return []
        stats.exact_passes += 1
        key = (_canonical_rotation(a), _canonical_rotation(b))
        return [(key, (BinarySequence(key[0]), BinarySequence(key[1])))]

    # the three matching schemes, each over explicit candidate rows

    def _brute(self, a_rows, b_source, stats) -> list:
        found = []
        for a in a_rows:
            ka = paf_rows(a[None, :])[0]
            stats.sequences += 1
            stats.candidates += 1
            b_rows = b_source()
            kb = paf_rows(b_rows)
            stats.sequences += len(b_rows)
            stats.candidates += len(b_rows)
            stats.comparisons += len(b_rows)
            for j in np.flatnonzero((ka + kb == 0).all(axis=1)):
                stats.key_matches += 1
                found += self._accept(a, b_rows[j], stats)
        return found

    def _table(self, a_rows, b_rows, stats) -> list:
        ka = paf_rows(a_rows)
        kb = -paf_rows(b_rows)
        stats.sequences += len(a_rows) + len(b_rows)
        stats.candidates += len(a_rows) + len(b_rows)
        stats.comparisons += len(a_rows) * len(b_rows)
        found = []
        for i, j in zip(*np.nonzero((ka[:, None, :] == kb[None, :, :]).all(axis=2))):
            stats.key_matches += 1
            found += self._accept(a_rows[i], b_rows[j], stats)
        return found

    def _tree(self, a_rows, b_rows, stats) -> list:
        ka = paf_rows(a_rows)
        kb = -paf_rows(b_rows)
        stats.sequences += len(a_rows) + len(b_rows)
        stats.candidates += len(a_rows) + len(b_rows)
        m, mode = self.config.crown_m, self.config.sign_mode
        la, lb = hash_labels(ka, m, mode), hash_labels(kb, m, mode)
        found = []
        for i in range(max(len(a_rows), len(b_rows))):
            if i < len(a_rows):
                for b in self.crown.insert(0, la[i], ka[i], a_rows[i], stats):
                    found += self._accept(a_rows[i], b, stats)
            if i < len(b_rows):
                for a in self.crown.insert(1, lb[i], kb[i], b_rows[i], stats):
                    found += self._accept(a, b_rows[i], stats)
        return found

    def _step(self, rng, stats):
        v, w = self.v, self.config.capacity
        if self.variant == "brute":
            a = random_fixed_weight_rows(v, self.k1, 1, rng)
            return self._brute(a, lambda: random_fixed_weight_rows(v, self.k2, w, rng), stats)
        if self.variant == "table":
            return self._table(random_fixed_weight_rows(v, self.k1, w, rng),
                               random_fixed_weight_rows(v, self.k2, w, rng), stats)
        n = self.config.batch_size
        return self._tree(random_fixed_weight_rows(v, self.k1, n, rng),
                          random_fixed_weight_rows(v, self.k2, n, rng), stats)

    def run_tape(self, a_rows, b_rows) -> list[tuple[BinarySequence, BinarySequence]]:
        """Match a fixed candidate tape once; brute mode re-evaluates the b tape per a."""
        a_rows = np.asarray(a_rows, dtype=np.int64)
        b_rows = np.asarray(b_rows, dtype=np.int64)
        local = SearchStats()
        if self.variant == "brute":
            found = self._brute(a_rows, lambda: b_rows.copy(), local)
        elif self.variant == "table":
            found = self._table(a_rows, b_rows, local)
        else:
            found = self._tree(a_rows, b_rows, local)
        return self._merge(local, found)

    def pairs(self) -> Iterator[tuple[BinarySequence, BinarySequence]]:
        return self.run()


def golay_search(v: int, k1: int, k2: int, config: SearchConfig, variant: str = "tree",
                 progress=None) -> Iterator[tuple[BinarySequence, BinarySequence]]:
    return GolaySearch(v, k1, k2, config, variant, progress).pairs()


# ---------------------------------------------------------------------------
# propus families

def arrange_blocks(params: PropusParameterSet, slot: str, sym, b, other) -> tuple:
    """Place the symmetric block, B (= C) and the remaining block into A, B, C, D order."""
    if slot == "A":
        return (sym, b, b, other)
    return (other, b, b, sym)


def slot_sizes(params: PropusParameterSet, slot: str) -> tuple[int, int]:
    """(size of the symmetric block, size of the remaining outer block)."""
    return (params.x, params.z) if slot == "A" else (params.z, params.x)


def _rows_to_block(v: int, row) -> Block:
    return Block(v, tuple(int(i) for i in np.flatnonzero(np.asarray(row) == -1)))


def certify_family(family: DifferenceFamily):
    """End-to-end check of a search result; raises on any inconsistency."""
    if family.lambda_by_counting() != family.params.lam:
        raise RuntimeError(f"emitted family fails difference counting: {family.canonical()}")
    if family.b != family.c or not family.symmetric_slots():
        raise RuntimeError("emitted family is not of propus shape")
    h = build_symmetric_hadamard(family)
    if not (is_hadamard(h) and is_symmetric_matrix(h)):
        raise RuntimeError("emitted family does not give a symmetric Hadamard matrix")


class PropusSearch(_Engine):
    """Meet-in-the-middle search for propus families with parameters ``params``.

    Left leaves hold (S, B): S a random symmetric sequence for the
    designated slot and B a random sequence of size y, keyed by
    paf_S + 2 paf_B.  Right leaves hold the remaining outer block E,
    keyed by -paf_E.  Equal keys mean the four PAFs cancel.
    """

    def __init__(self, params: PropusParameterSet, config: SearchConfig,
                 progress=None, progress_interval: float = 1.0):
        super().__init__(config, progress, progress_interval)
        self.params = params
        self.slot = config.symmetric_slot
        self.sym_size, self.other_size = slot_sizes(params, self.slot)
        check_symmetric_weight(params.v, self.sym_size)
        self.h = params.v // 2
        self.crown = Crown(config.crown_m, config.capacity, self.h, config.sign_mode)

    def _accept(self, sb, e, stats: SearchStats) -> list:
        s_row, b_row = sb
        v = self.params.v
        total = paf_values(s_row) + 2 * paf_values(b_row) + paf_values(e)
        if np.any(total[1:]):
            return []
        stats.exact_passes += 1
        raw = s_row.tobytes() + b_row.tobytes() + np.asarray(e).tobytes()
        if raw in self._raw_seen:
            return []
        self._raw_seen.add(raw)
        blocks = arrange_blocks(self.params, self.slot, _rows_to_block(v, s_row),
                                _rows_to_block(v, b_row), _rows_to_block(v, e))
        family = DifferenceFamily(self.params, blocks)
        key = family.canonical()
        if key not in self._certified:
            certify_family(family)
            with self._lock:
                self._certified.add(key)
        return [(key, family)]

    def _keys(self, s_rows, b_rows, e_rows):
        left = paf_rows(s_rows) + 2 * paf_rows(b_rows)
        right = -paf_rows(e_rows)
        return left, right

    def _match(self, s_rows, b_rows, e_rows, stats) -> list:
        left, right = self._keys(s_rows, b_rows, e_rows)
        stats.sequences += len(s_rows) + len(b_rows) + len(e_rows)
        stats.candidates += len(s_rows) + len(e_rows)
        m, mode = self.config.crown_m, self.config.sign_mode
        ll, lr = hash_labels(left, m, mode), hash_labels(right, m, mode)
        found = []
        for i in range(max(len(s_rows), len(e_rows))):
            if i < len(s_rows):
                sb = (s_rows[i], b_rows[i])
                for e in self.crown.insert(0, ll[i], left[i], sb, stats):
                    found += self._accept(sb, e, stats)
            if i < len(e_rows):
                for sb in self.crown.insert(1, lr[i], right[i], e_rows[i], stats):
                    found += self._accept(sb, e_rows[i], stats)
        return found

    def _step(self, rng, stats):
        v, n = self.params.v, self.config.batch_size
        s_rows = random_symmetric_rows(v, self.sym_size, n, rng)
        b_rows = random_fixed_weight_rows(v, self.params.y, n, rng)
        e_rows = random_fixed_weight_rows(v, self.other_size, n, rng)
        return self._match(s_rows, b_rows, e_rows, stats)

    def run_tape(self, left: Sequence[tuple], right: Sequence) -> list[DifferenceFamily]:
        """Feed fixed (S, B) and E candidates through the crown once."""
        v = self.params.v
        s_rows = np.array([np.asarray(s) for s, _ in left], dtype=np.int64).reshape(-1, v)
        b_rows = np.array([np.asarray(b) for _, b in left], dtype=np.int64).reshape(-1, v)
        e_rows = np.array([np.asarray(e) for e in right], dtype=np.int64).reshape(-1, v)
        local = SearchStats()
        return self._merge(local, self._match(s_rows, b_rows, e_rows, local))

    def families(self) -> Iterator[DifferenceFamily]:
        return self.run()


def propus_search(params: PropusParameterSet, config: SearchConfig,
                  progress=None) -> Iterator[DifferenceFamily]:
    return PropusSearch(params, config, progress).families()


# ---------------------------------------------------------------------------
# exhaustive search for small v

def symmetric_subsets(v: int, k: int) -> Iterator[tuple[int, ...]]:
    """All subsets of Z_v of size k closed under x -> -x."""
    singles, pairs = _mirror_orbits(v)
    for s in range(len(singles) + 1):
        if (k - s) % 2 or not 0 <= (k - s) // 2 <= len(pairs):
            continue
        for fixed in itertools.combinations(singles, s):
            for chosen in itertools.combinations(pairs, (k - s) // 2):
                yield tuple(sorted(fixed + tuple(i for p in chosen for i in p)))


def _subset_rows(v: int, subsets) -> np.ndarray:
    subsets = list(subsets)
    rows = np.ones((len(subsets), v), dtype=np.int64)
    for r, sub in zip(rows, subsets):
        r[list(sub)] = -1
    return rows


def exhaustive_propus_search(params: PropusParameterSet, slot: str = "A",
                             v_cap: int = EXHAUSTIVE_V_CAP) -> list[DifferenceFamily]:
    """Every family (S, B, B, E) for the slot convention, by full enumeration."""
    v = params.v
    if v > v_cap:
        raise InvalidInputError(
            f"exhaustive search over Z_{v} exceeds the cap v <= {v_cap}; "
            "raise v_cap explicitly to run it anyway"
        )
    if slot not in ("A", "D"):
        raise InvalidInputError("slot must be A or D")
    sym_size, other_size = slot_sizes(params, slot)
    check_symmetric_weight(v, sym_size)
    s_rows = _subset_rows(v, symmetric_subsets(v, sym_size))
    b_rows = _subset_rows(v, itertools.combinations(range(v), params.y))
    e_rows = _subset_rows(v, itertools.combinations(range(v), other_size))
    ps, pb, pe = (paf_rows(r).astype(np.int16) for r in (s_rows, b_rows, e_rows))
    right_index: dict[bytes, list[int]] = {}
    for j, key in enumerate(-pe):
        right_index.setdefault(key.tobytes(), []).append(j)
    found = {}
    for i in range(len(s_rows)):
        for bi, key in enumerate(ps[i] + 2 * pb):
            for j in right_index.get(key.tobytes(), ()):
                blocks = arrange_blocks(params, slot, _rows_to_block(v, s_rows[i]),
                                        _rows_to_block(v, b_rows[bi]), _rows_to_block(v, e_rows[j]))
                family = DifferenceFamily(params, blocks)
                if family.lambda_by_counting() != params.lam:
                    raise RuntimeError("zero PAF sum without constant difference counts")
                found[family.canonical()] = family
    return [found[k] for k in sorted(found)]
