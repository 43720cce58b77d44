"""Bundled propus families from the literature and an end-to-end verifier."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .arrays import circulant, is_hadamard, is_symmetric_matrix, propus
from .core import block_to_sequence, is_difference_family, paf_deficit
from .family import DifferenceFamily
from .formats import FamilyRecord, read_families
from .params import PropusParameterSet

CATALOG_FILE = "catalog.txt"
CHECKSUM_FILE = "catalog.sha256"
TABLE_FILE = "parameter_table.txt"


class CatalogIntegrityError(RuntimeError):
    """The bundled data does not match its recorded checksum."""


@dataclass(frozen=True)
class CatalogEntry:
    family: DifferenceFamily
    source: str
    claimed_symmetric_slot: str
    annotations: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    source: str
    params: PropusParameterSet
    checks: list[Check] = field(default_factory=list)
    symmetric_slot: str = ""

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        return [
            f"{self.source} {self.params} {c.name}: {'pass' if c.passed else 'FAIL'}"
            + (f" ({c.detail})" if c.detail else "")
            for c in self.checks
        ]


def _data(name: str) -> bytes:
    return resources.files("propus.data").joinpath(name).read_bytes()


def catalog_bytes() -> bytes:
    """Raw bundled catalog, after the checksum has been confirmed."""
    raw = _data(CATALOG_FILE)
    expected = _data(CHECKSUM_FILE).decode().split()[0]
    if hashlib.sha256(raw).hexdigest() != expected:
        raise CatalogIntegrityError(f"{CATALOG_FILE} does not match {CHECKSUM_FILE}")
    return raw


@lru_cache(maxsize=None)
def load_parameter_table() -> dict[PropusParameterSet, tuple[str, ...]]:
    """Parameter sets with odd v < 50 mapped to their existence annotations."""
    table = {}
    for line in _data(TABLE_FILE).decode().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, symbols = line.split()
        table[PropusParameterSet.parse(head)] = tuple(symbols.split(","))
    return table


def _entry(record: FamilyRecord, table) -> CatalogEntry:
    return CatalogEntry(
        family=record.family,
        source=record.get("source", "unnamed"),
        claimed_symmetric_slot=record.get("slot", ""),
        annotations=table.get(record.family.params, ()),
        notes=tuple(record.meta.get("note", ())),
    )


@lru_cache(maxsize=None)
def _load() -> tuple[CatalogEntry, ...]:
    table = load_parameter_table()
    records = read_families(catalog_bytes().decode("utf-8"))
    return tuple(_entry(r, table) for r in records)


def load_catalog() -> list[CatalogEntry]:
    return list(_load())


def catalog_records() -> list[FamilyRecord]:
    """Catalog entries as family-file records, e.g. for export."""
    out = []
    for e in load_catalog():
        meta = {"source": [e.source], "slot": [e.claimed_symmetric_slot]}
        if e.annotations:
            meta["annotations"] = [",".join(e.annotations)]
        if e.notes:
            meta["note"] = list(e.notes)
        out.append(FamilyRecord(e.family, meta))
    return out


def verify_family(family: DifferenceFamily, claimed_slot: str = "", source: str = "") -> VerificationReport:
    """Re-derive every property a propus family should have; failures are reported, not raised."""
    ps = family.params
    report = VerificationReport(source or "family", ps)
    add = report.checks.append

    sizes = tuple(b.size for b in family.blocks)
    add(Check("sizes", sizes == ps.sizes, f"{sizes}"))

    lam = is_difference_family(family.blocks, ps.v)
    expected = sum(sizes) - ps.v
    if lam is None:
        add(Check("lambda", False, "difference counts are not constant"))
    else:
        add(Check("lambda", lam == expected == ps.lam, f"lambda={lam}, expected {expected}"))

    deficit = paf_deficit([block_to_sequence(b) for b in family.blocks], [1, 1, 1, 1])
    add(Check("paf-sum", not any(deficit), "" if not any(deficit) else f"nonzero at {sum(1 for d in deficit if d)} shifts"))

    add(Check("B=C", family.b == family.c))

    slots = family.symmetric_slots()
    report.symmetric_slot = slots
    if claimed_slot:
        add(Check("symmetric-slot", bool(slots) and set(claimed_slot) <= set(slots),
                  f"claimed {claimed_slot}, found {slots or 'none'}"))
    else:
        add(Check("symmetric-slot", bool(slots), f"found {slots or 'none'}"))

    circs = [circulant(block_to_sequence(b)) for b in family.blocks]
    if "A" not in slots and "D" in slots:
        circs = [circs[3], circs[1], circs[2], circs[0]]
    h = propus(*circs)
    n = 4 * ps.v
    add(Check("hadamard", is_hadamard(h), f"order {n}"))
    add(Check("symmetric", is_symmetric_matrix(h)))
    return report


def verify_entry(entry: CatalogEntry) -> VerificationReport:
    return verify_family(entry.family, entry.claimed_symmetric_slot, entry.source)


def verify_catalog() -> list[VerificationReport]:
    return [verify_entry(e) for e in load_catalog()]

