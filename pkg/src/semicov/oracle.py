"""Brute-force reference implementations used to audit the fast paths.

Nothing here uses Apery sets, the enumeration tree or chain formulas.  The
subset scan works on all 2**(F-1) candidate masks at once with numpy; the
covariety closure works on plain gap sets.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import DeltaNotMinimum, InvalidF, TooLarge, TrivialSemigroup
from .semigroup import NumericalSemigroup, from_gaps

MAX_BRUTE_F = 22


def brute_masks(frobenius: int) -> np.ndarray:
    """Masks T over [1, F-1] (bit i-1 <-> i) with {0} u T u {F+1, ->} additively closed."""
    if frobenius < 1:
        raise InvalidF(f"F must be >= 1, got {frobenius}")
    if frobenius > MAX_BRUTE_F:
        raise TooLarge(f"brute force is limited to F <= {MAX_BRUTE_F}")
    k = frobenius - 1
    masks = np.arange(1 << k, dtype=np.uint32)
    col = [None] + [((masks >> (i - 1)) & 1).astype(bool) for i in range(1, frobenius)]
    ok = np.ones(masks.shape, dtype=bool)
    for a in range(1, frobenius):
        for b in range(a, frobenius - a + 1):
            both = col[a] & col[b]
            if a + b == frobenius:
                ok &= ~both
            else:
                ok &= ~both | col[a + b]
    return masks[ok]


def brute_enumerate(frobenius: int) -> set[NumericalSemigroup]:
    """Every numerical semigroup with Frobenius number F, by exhaustive subset scan."""
    top = 1 << (frobenius + 1)
    return {NumericalSemigroup(frobenius, 1 | (int(t) << 1) | top) for t in brute_masks(frobenius)}


def _members(s: NumericalSemigroup) -> set[int]:
    gaps = set(s.gaps)
    return {x for x in range(s.frobenius + 2) if x not in gaps}


def brute_pf(s: NumericalSemigroup) -> set[int]:
    """Gaps z with z + s in S for every nonzero s in S."""
    if s.frobenius < 0:
        raise TrivialSemigroup("N has no gaps")
    f = s.frobenius
    elems = _members(s)

    def member(x):
        return x > f or x in elems

    nonzero = [e for e in elems if e]
    return {z for z in s.gaps if all(member(z + e) for e in nonzero)}


def brute_sg(s: NumericalSemigroup) -> set[int]:
    """Gaps x for which S u {x} is still closed under addition."""
    if s.frobenius < 0:
        raise TrivialSemigroup("N has no gaps")
    f = s.frobenius
    out = set()
    for x in s.gaps:
        elems = _members(s) | {x}
        small = [e for e in elems if 0 < e <= f]
        if all(a + b > f or a + b in elems for a in small for b in small):
            out.add(x)
    return out


def brute_covariety_closure(family: Iterable[NumericalSemigroup],
                            delta: NumericalSemigroup) -> set[NumericalSemigroup]:
    """Least family containing ``family`` and ``delta`` closed under intersection and
    multiplicity removal (away from ``delta``); semigroups are handled as gap sets."""
    base = frozenset(delta.gaps)
    current = {frozenset(s.gaps) for s in family} | {base}
    if any(not g <= base for g in current):
        raise DeltaNotMinimum(f"{delta} is not contained in every member")
    while True:
        grown = set(current)
        for g, h in combinations(current, 2):
            grown.add(g | h)
        for g in current:
            if g != base:
                m = next(x for x in range(1, max(base) + 2) if x not in g)
                grown.add(g | {m})
        if grown == current:
            break
        current = grown
    return {from_gaps(g) for g in current}
