"""Numerical semigroups and their single-semigroup invariants.

A numerical semigroup ``S`` is stored by its Frobenius number ``F`` and an
integer bitset of its *small elements*: bit ``i`` is set iff ``i`` is in ``S``,
for ``0 <= i <= F + 1``.  Every integer above ``F`` is implicitly a member.
The semigroup of all naturals is encoded with ``F = -1`` and bitset ``0b1``.

Apery sets are derived views (:class:`AperyTable`); pseudo-Frobenius numbers
and special gaps are read off them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd
from typing import Iterable

from .errors import (
    EmptyInput,
    FrobeniusTooLarge,
    NotAnElement,
    NotASemigroup,
    NotCoprime,
    NotMED,
    NotMinimalGenerator,
    NotSpecialGap,
    SemicovError,
    TrivialSemigroup,
)

MAX_FROBENIUS = 1 << 16

ARROW = "→"


def _ones(lo: int, hi: int) -> int:
    """Bitmask with bits lo..hi (inclusive) set; 0 if the range is empty."""
    if hi < lo:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << lo


def _normalize(bits: int, top: int) -> tuple[int, int]:
    """Canonical (frobenius, bits) for a set described exactly on [0, top].

    Everything above ``top`` is taken to be a member.
    """
    holes = ~bits & _ones(0, top)
    f = holes.bit_length() - 1
    if f > MAX_FROBENIUS:
        raise FrobeniusTooLarge(f"Frobenius number {f} exceeds {MAX_FROBENIUS}")
    return f, (bits & _ones(0, f)) | (1 << (f + 1))


def _is_closed(bits: int, top: int) -> bool:
    """Additive closure of the set ``bits`` restricted to the window [0, top]."""
    mask = _ones(0, top)
    bits &= mask
    rest = bits >> 1
    a = 1
    while rest:
        if rest & 1 and ((bits << a) & mask) & ~bits:
            return False
        rest >>= 1
        a += 1
    return True


@dataclass(frozen=True)
class NumericalSemigroup:
    frobenius: int
    bits: int

    # -- construction -----------------------------------------------------

    @classmethod
    def _from_window(cls, bits: int, top: int) -> NumericalSemigroup:
        return cls(*_normalize(bits, top))

    # -- basic views ------------------------------------------------------

    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        if x > self.frobenius:
            return True
        return bool((self.bits >> x) & 1)

    def window(self, top: int) -> int:
        """Membership bitset on [0, top]; ``top`` must be at least F + 1."""
        return self.bits | _ones(self.frobenius + 2, top)

    @cached_property
    def small_elements(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.frobenius + 2) if (self.bits >> i) & 1)

    @cached_property
    def gaps(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.frobenius + 1) if not (self.bits >> i) & 1)

    @property
    def is_naturals(self) -> bool:
        return self.frobenius == -1

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.frobenius, self.small_elements)

    def __lt__(self, other: NumericalSemigroup) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        shown = self.small_elements if self.frobenius >= 0 else (0,)
        return "{" + ",".join(map(str, shown)) + "," + ARROW + "}"

    def __repr__(self) -> str:
        return f"NumericalSemigroup{self}"

    # -- invariants -------------------------------------------------------

    @cached_property
    def genus(self) -> int:
        return self.frobenius + 2 - self.bits.bit_count()

    @cached_property
    def multiplicity(self) -> int:
        if self.frobenius < 0:
            return 1
        rest = self.bits >> 1
        return (rest & -rest).bit_length()

    @cached_property
    def msg(self) -> tuple[int, ...]:
        """Minimal system of generators, ascending."""
        m = self.multiplicity
        nonzero = sorted(w for w in self.apery(m).entries if w)
        present = set(nonzero)
        gens = [m]
        for w in nonzero:
            if not any(w - v in present for v in nonzero if v < w):
                gens.append(w)
        return tuple(sorted(gens))

    @property
    def embedding_dimension(self) -> int:
        return len(self.msg)

    @cached_property
    def pseudo_frobenius(self) -> tuple[int, ...]:
        if self.frobenius < 0:
            raise TrivialSemigroup("pseudo-Frobenius numbers of N are not defined here")
        return pseudo_frobenius_from_apery(self.apery(self.multiplicity))

    @cached_property
    def special_gaps(self) -> tuple[int, ...]:
        return special_gaps_from_pf(self.pseudo_frobenius)

    @property
    def type(self) -> int:
        return len(self.pseudo_frobenius)

    # -- derived structures -----------------------------------------------

    def apery(self, n: int) -> AperyTable:
        """Ap(S, n): the least element of S in each residue class mod n."""
        if n <= 0 or n not in self:
            raise NotAnElement(f"{n} is not a nonzero element of {self}")
        entries = []
        for i in range(n):
            x = i
            while x not in self:
                x += n
            entries.append(x)
        return AperyTable(n, tuple(entries))

    def issubset(self, other: NumericalSemigroup) -> bool:
        top = max(self.frobenius, other.frobenius) + 1
        return not (self.window(top) & ~other.window(top))

    def issuperset(self, other: NumericalSemigroup) -> bool:
        return other.issubset(self)


@dataclass(frozen=True)
class AperyTable:
    """``entries[i]`` is the least element of S congruent to ``i`` mod ``modulus``."""

    modulus: int
    entries: tuple[int, ...]

    def as_set(self) -> frozenset[int]:
        return frozenset(self.entries)

    def maximals(self) -> frozenset[int]:
        return apery_maximals(self)

    def semigroup(self) -> NumericalSemigroup:
        """Recover S: x is in S iff x >= entries[x mod n]."""
        n = self.modulus
        f = max(self.entries) - n
        bits = 0
        for x in range(f + 2):
            if x >= self.entries[x % n]:
                bits |= 1 << x
        return NumericalSemigroup(f, bits)


# -- constructors ---------------------------------------------------------

NATURALS = NumericalSemigroup(-1, 1)


def ordinary(frobenius: int) -> NumericalSemigroup:
    """{0, F+1, ->}; ``ordinary(-1)`` is N."""
    if frobenius == -1:
        return NATURALS
    if frobenius < 1:
        raise SemicovError(f"no numerical semigroup has Frobenius number {frobenius}")
    if frobenius > MAX_FROBENIUS:
        raise FrobeniusTooLarge(f"Frobenius number {frobenius} exceeds {MAX_FROBENIUS}")
    return NumericalSemigroup(frobenius, 1 | (1 << (frobenius + 1)))


def from_generators(gens: Iterable[int]) -> NumericalSemigroup:
    """The numerical semigroup <gens>.

    Membership is filled in by the coin-change recurrence until ``min(gens)``
    consecutive members appear; that run is reached before ``min * max``.
    """
    gens = sorted(set(gens))
    if not gens:
        raise EmptyInput("need at least one generator")
    if gens[0] <= 0:
        raise SemicovError("generators must be positive integers")
    if reduce(gcd, gens) != 1:
        raise NotCoprime(f"gcd{tuple(gens)} != 1; the monoid is not cofinite")
    m = gens[0]
    member = bytearray([1])
    bits = 1
    run = 1 if m == 1 else 0
    x = 0
    while run < m:
        x += 1
        if x > MAX_FROBENIUS + m + 1:
            raise FrobeniusTooLarge(f"Frobenius number of {gens} exceeds {MAX_FROBENIUS}")
        hit = any(g <= x and member[x - g] for g in gens)
        member.append(hit)
        if hit:
            bits |= 1 << x
            run += 1
        else:
            run = 0
    return NumericalSemigroup._from_window(bits, x)


def from_gaps(gaps: Iterable[int]) -> NumericalSemigroup:
    gaps = set(gaps)
    if any(g <= 0 for g in gaps):
        raise NotASemigroup("gaps must be positive integers")
    f = max(gaps, default=-1)
    if f > MAX_FROBENIUS:
        raise FrobeniusTooLarge(f"Frobenius number {f} exceeds {MAX_FROBENIUS}")
    bits = _ones(0, f + 1)
    for g in gaps:
        bits &= ~(1 << g)
    if not _is_closed(bits, f + 1):
        raise NotASemigroup(f"complement of gaps {sorted(gaps)} is not closed under addition")
    return NumericalSemigroup(f, bits)


def parse(text: str) -> NumericalSemigroup:
    """Parse ``{0,5,7,9,10,12,14,->}`` (the arrow may be ``->`` or the glyph)."""
    body = text.strip().strip("{}").replace(ARROW, "->")
    parts = [p.strip() for p in body.split(",") if p.strip()]
    if not parts or parts[-1] != "->":
        raise NotASemigroup(f"expected a trailing arrow in {text!r}")
    elements = sorted({int(p) for p in parts[:-1]})
    if not elements or elements[0] != 0:
        raise NotASemigroup(f"0 must be listed first in {text!r}")
    last = elements[-1]
    # everything from the last listed element on is a member
    listed = set(elements)
    return from_gaps(x for x in range(1, last) if x not in listed)


# -- Apery machinery ------------------------------------------------------

def apery_maximals(table: AperyTable) -> frozenset[int]:
    """Maximal elements of Ap(S, n) for the order a <=_S b iff b - a in S.

    ``w`` is maximal iff ``w + w'`` leaves the table for every nonzero ``w'``.
    """
    present = set(table.entries)
    nonzero = [w for w in table.entries if w]
    return frozenset(w for w in table.entries if not any(w + v in present for v in nonzero))


def pseudo_frobenius_from_apery(table: AperyTable) -> tuple[int, ...]:
    n = table.modulus
    return tuple(sorted(w - n for w in apery_maximals(table)))


def special_gaps_from_pf(pf: Iterable[int]) -> tuple[int, ...]:
    pf = set(pf)
    return tuple(sorted(x for x in pf if 2 * x not in pf))


def apery_swap(table: AperyTable, x: int, check: bool = True) -> AperyTable:
    """Ap(S u {x}, n) from Ap(S, n) for a special gap ``x`` of S.

    The entry ``x + n`` of residue class ``x mod n`` is replaced by ``x``.
    With ``check`` the special-gap precondition is verified against the
    semigroup recovered from the table (quadratic in n).
    """
    n = table.modulus
    r = x % n
    if x <= 0 or table.entries[r] != x + n:
        raise NotSpecialGap(f"{x} is not a special gap (Apery entry is {table.entries[r]})")
    if check:
        pf = pseudo_frobenius_from_apery(table)
        if x not in special_gaps_from_pf(pf):
            raise NotSpecialGap(f"{x} is not a special gap")
    entries = list(table.entries)
    entries[r] = x
    return AperyTable(n, tuple(entries))


# -- set operations -------------------------------------------------------

def intersect(s: NumericalSemigroup, t: NumericalSemigroup) -> NumericalSemigroup:
    top = max(s.frobenius, t.frobenius) + 1
    return NumericalSemigroup._from_window(s.window(top) & t.window(top), top)


def remove_element(s: NumericalSemigroup, x: int) -> NumericalSemigroup:
    """S minus a minimal generator."""
    if x not in s.msg:
        raise NotMinimalGenerator(f"{x} is not a minimal generator of {s}")
    top = max(s.frobenius, x) + 1
    return NumericalSemigroup._from_window(s.window(top) & ~(1 << x), top)


def add_special_gap(s: NumericalSemigroup, x: int) -> NumericalSemigroup:
    """S u {x} for a special gap ``x``."""
    if s.frobenius < 0 or x not in s.special_gaps:
        raise NotSpecialGap(f"{x} is not a special gap of {s}")
    top = s.frobenius + 1
    return NumericalSemigroup._from_window(s.bits | (1 << x), top)


def is_irreducible(s: NumericalSemigroup) -> bool:
    """Maximal among the semigroups with the same Frobenius number.

    S u {x} stays in that family exactly for special gaps x != F(S); any
    proper oversemigroup with the same Frobenius number contains such an x.
    """
    if s.frobenius < 0:
        return True
    return all(x == s.frobenius for x in s.special_gaps)


# -- maximal embedding dimension -----------------------------------------

def is_med(s: NumericalSemigroup) -> bool:
    return s.embedding_dimension == s.multiplicity


def is_med_by_shift(s: NumericalSemigroup) -> bool:
    """MED test via (S minus 0) - m(S) being a numerical semigroup."""
    if s.frobenius < 0:
        return True
    m = s.multiplicity
    top = s.frobenius + 1 - m
    return _is_closed((s.bits >> m) | 1, top)


def med_lift(s: NumericalSemigroup, m: int) -> NumericalSemigroup:
    """({m} + S) u {0}: MED, multiplicity m, Frobenius number F(S) + m."""
    if m <= 0 or m not in s:
        raise NotAnElement(f"{m} is not a nonzero element of {s}")
    if m == 1:
        return NATURALS
    return NumericalSemigroup._from_window((s.bits << m) | 1, s.frobenius + 1 + m)


def med_unlift(p: NumericalSemigroup) -> tuple[NumericalSemigroup, int]:
    """Inverse of :func:`med_lift`: returns (S, m(P))."""
    if not is_med(p):
        raise NotMED(f"{p} is not of maximal embedding dimension")
    m = p.multiplicity
    if p.frobenius < 0:
        return NATURALS, 1
    return NumericalSemigroup._from_window((p.bits >> m) | 1, p.frobenius + 1 - m), m


def med_genus(p: NumericalSemigroup) -> int:
    """Genus of a MED semigroup from its generators alone."""
    if not is_med(p):
        raise NotMED(f"{p} is not of maximal embedding dimension")
    m = p.multiplicity
    num = 2 * (sum(p.msg) - m) - m * (m - 1)
    q, r = divmod(num, 2 * m)
    if r:
        raise ArithmeticError(f"non-integral genus formula for {p}")
    return q


# -- interchange ----------------------------------------------------------

def to_record(s: NumericalSemigroup) -> dict:
    return {
        "frobenius": s.frobenius,
        "msg": list(s.msg),
        "gaps": list(s.gaps),
        "multiplicity": s.multiplicity,
        "genus": s.genus,
        "type": None if s.is_naturals else s.type,
    }


def from_record(record: dict, strict: bool = True) -> NumericalSemigroup:
    """Rebuild from a JSON record; with ``strict`` every derived field must match."""
    if "gaps" in record:
        s = from_gaps(record["gaps"])
    elif "msg" in record:
        s = from_generators(record["msg"])
    else:
        raise SemicovError("record needs 'gaps' or 'msg'")
    if strict:
        expected = to_record(s)
        for key, value in record.items():
            if key in expected and expected[key] != value:
                raise SemicovError(f"record field {key!r}={value!r} disagrees with {expected[key]!r}")
    return s
