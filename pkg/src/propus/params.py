"""Propus parameter sets (v; x, y, y, z; lambda) and their enumeration."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .core import InvalidInputError

_PARAM_RE = re.compile(
    r"^\(?\s*(\d+)\s*;\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*;\s*(-?\d+)\s*\)?$"
)


def triangular(n: int) -> int:
    return n * (n + 1) // 2


@dataclass(frozen=True, order=True)
class PropusParameterSet:
    """Block sizes (x, y, y, z) in Z_v with lambda = x + 2y + z - v.

    Construction checks the counting identity, the squared form
    (v-2x)^2 + 2(v-2y)^2 + (v-2z)^2 = 4v and the normal form
    (sizes at most v/2, x >= z).
    """

    v: int
    x: int
    y: int
    z: int
    lam: int

    def __post_init__(self):
        v, x, y, z, lam = self.v, self.x, self.y, self.z, self.lam
        if v < 1 or min(x, y, z) < 0:
            raise InvalidInputError(f"bad parameter set {self}")
        if lam != x + 2 * y + z - v or lam < 0:
            raise InvalidInputError(f"{self}: lambda must equal x+2y+z-v >= 0")
        if x * (x - 1) + 2 * y * (y - 1) + z * (z - 1) != lam * (v - 1):
            raise InvalidInputError(f"{self}: difference count identity fails")
        if (v - 2 * x) ** 2 + 2 * (v - 2 * y) ** 2 + (v - 2 * z) ** 2 != 4 * v:
            raise InvalidInputError(f"{self}: squared-form identity fails")
        if max(x, y, z) > v // 2 or x < z:
            raise InvalidInputError(f"{self}: not in normal form (sizes <= v/2, x >= z)")

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        return (self.x, self.y, self.y, self.z)

    def __str__(self) -> str:
        return f"({self.v};{self.x},{self.y},{self.y},{self.z};{self.lam})"

    @property
    def header(self) -> str:
        """The unparenthesized form used in family files."""
        return str(self)[1:-1]

    @classmethod
    def parse(cls, text: str) -> PropusParameterSet:
        """Parse ``(v;k1,k2,k3,k4;lambda)``; the parentheses are optional."""
        m = _PARAM_RE.match(text.strip())
        if not m:
            raise InvalidInputError(f"cannot parse parameter set {text!r}")
        v, k1, k2, k3, k4, lam = map(int, m.groups())
        if k2 != k3:
            raise InvalidInputError(f"{text!r}: a propus set needs k2 == k3")
        return cls(v, k1, k2, k4, lam)


@dataclass(frozen=True, order=True)
class TriangularSolution:
    p: int
    q: int
    r: int

    def value(self) -> int:
        return triangular(self.p) + 2 * triangular(self.q) + triangular(self.r)


def lambda_for(v: int, sizes) -> int | None:
    """lambda = sum(k) - v when that value is a valid GS lambda, else None."""
    sizes = tuple(sizes)
    if len(sizes) != 4:
        raise InvalidInputError("exactly four block sizes are required")
    lam = sum(sizes) - v
    if lam < 0:
        return None
    if sum(k * (k - 1) for k in sizes) != lam * (v - 1):
        return None
    return lam


def _triangular_root(n: int) -> int:
    """Largest t with T_t <= n."""
    t = (math.isqrt(8 * n + 1) - 1) // 2
    return t


def solve_triangular(n: int) -> list[TriangularSolution]:
    """All nonnegative (p, q, r) with T_p + 2 T_q + T_r = n."""
    if n < 0:
        raise InvalidInputError("n must be nonnegative")
    t = _triangular_root(n)
    out = []
    for p in range(t + 1):
        for q in range(t + 1):
            rest = n - triangular(p) - 2 * triangular(q)
            if rest < 0:
                break
            r = _triangular_root(rest)
            if triangular(r) == rest:
                out.append(TriangularSolution(p, q, r))
    return out


def _normalized(v: int, x: int, y: int, z: int) -> PropusParameterSet | None:
    half = v // 2
    x, y, z = (s if s <= half else v - s for s in (x, y, z))
    if x < z:
        x, z = z, x
    lam = x + 2 * y + z - v
    if lam < 0:
        return None
    return PropusParameterSet(v, x, y, z, lam)


def _with_duals(sets: set[PropusParameterSet]) -> list[PropusParameterSet]:
    # (v;y,x,x,y) is listed separately whenever x == z != y
    for ps in list(sets):
        if ps.x == ps.z != ps.y:
            sets.add(PropusParameterSet(ps.v, ps.y, ps.x, ps.y, ps.lam))
    return sorted(sets, key=lambda ps: (ps.x, ps.y, ps.z))


def enumerate_propus_sets(v: int) -> list[PropusParameterSet]:
    """All normalized propus parameter sets for odd v >= 3."""
    if v < 3 or v % 2 == 0:
        raise InvalidInputError("v must be odd and at least 3")
    found = set()
    for sol in solve_triangular((v - 1) // 2):
        x, y, z = ((v - 2 * t - 1) // 2 for t in (sol.p, sol.q, sol.r))
        ps = _normalized(v, x, y, z)
        if ps is not None:
            found.add(ps)
    return _with_duals(found)


def even_v_admissible(v: int) -> bool:
    """False exactly when v = 2^(2k+1) (8m+7)."""
    if v < 2 or v % 2:
        raise InvalidInputError("v must be even and at least 2")
    while v % 4 == 0:
        v //= 4
    return not (v % 2 == 0 and (v // 2) % 8 == 7)


def representations_p2_2q2_r2(v: int) -> list[tuple[int, int, int]]:
    """Nonnegative (p, q, r) with p^2 + 2q^2 + r^2 = v, by direct search."""
    out = []
    for p in range(math.isqrt(v) + 1):
        for q in range(math.isqrt((v - p * p) // 2) + 1):
            rest = v - p * p - 2 * q * q
            r = math.isqrt(rest)
            if r * r == rest:
                out.append((p, q, r))
    return out


def enumerate_even_sets(v: int) -> list[PropusParameterSet]:
    """Normalized propus sets for even v; empty when v is inadmissible."""
    if v < 2 or v % 2:
        raise InvalidInputError("v must be even and at least 2")
    if not even_v_admissible(v):
        return []
    found = set()
    for p, q, r in representations_p2_2q2_r2(v):
        x, y, z = (v // 2 - t for t in (p, q, r))
        if min(x, y, z) < 0:
            continue
        ps = _normalized(v, x, y, z)
        if ps is not None:
            found.add(ps)
    return _with_duals(found)


def enumerate_sets(v: int) -> list[PropusParameterSet]:
    if v % 2:
        return enumerate_propus_sets(v)
    return enumerate_even_sets(v)
