"""The covariety A(F) of numerical semigroups with Frobenius number F.

Members are produced level by level from the ordinary semigroup {0, F+1, ->}:
the children of S are S u {x} for special gaps x < m(S), x != F.  Each node
carries its Apery table with respect to F + 1, from which the special gaps are
read and which is updated in O(1) per child.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .covariety import Covariety, validate
from .errors import InvalidF, NotAnAFSet, NotMaxRank, NotRank1Form, WrongFrobenius
from .semigroup import (
    NATURALS,
    AperyTable,
    NumericalSemigroup,
    med_lift,
    ordinary,
    remove_element,
)

Node = tuple[int, tuple[int, ...]]  # (bits, Apery entries mod F+1)


@dataclass(frozen=True)
class FrontierNode:
    semigroup: NumericalSemigroup
    apery: AperyTable
    depth: int


def _check_f(frobenius: int, least: int = 1) -> None:
    if not isinstance(frobenius, int) or frobenius < least:
        raise InvalidF(f"F must be an integer >= {least}, got {frobenius!r}")


def delta(frobenius: int) -> NumericalSemigroup:
    """Minimum of A(F): {0, F+1, ->}."""
    _check_f(frobenius)
    return ordinary(frobenius)


def _root(frobenius: int) -> Node:
    n = frobenius + 1
    return 1 | (1 << n), (0,) + tuple(range(n + 1, 2 * n))


def _entries_from_bits(frobenius: int, bits: int) -> tuple[int, ...]:
    # modulus F+1: residue i is i itself when present, otherwise i + F + 1
    n = frobenius + 1
    return (0,) + tuple(i if (bits >> i) & 1 else i + n for i in range(1, n))


def _children(frobenius: int, node: Node) -> list[Node]:
    bits, entries = node
    n = frobenius + 1
    present = set(entries)
    nonzero = [w for w in entries if w]
    pf = {w - n for w in entries if not any(w + v in present for v in nonzero)}
    rest = bits >> 1
    m = (rest & -rest).bit_length()
    out = []
    for x in sorted(pf):
        if x < m and x != frobenius and 2 * x not in pf:
            # x < m <= F + 1, so x is its own residue
            e = list(entries)
            e[x] = x
            out.append((bits | (1 << x), tuple(e)))
    return out


def _expand_chunk(frobenius: int, chunk: list, low_memory: bool) -> list:
    if low_memory:
        return [[b for b, _ in _children(frobenius, (b, _entries_from_bits(frobenius, b)))]
                for b in chunk]
    return [_children(frobenius, node) for node in chunk]


def _chunks(items: list, count: int) -> list[list]:
    size = max(1, -(-len(items) // count))
    return [items[i:i + size] for i in range(0, len(items), size)]


def _levels(frobenius: int, workers: int, low_memory: bool, ordered: bool) -> Iterator[list]:
    """Yield successive BFS levels (lists of nodes, or of bitsets when low_memory)."""
    root = _root(frobenius)
    level = [root[0]] if low_memory else [root]
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while level:
            yield level
            if pool is None:
                groups = _expand_chunk(frobenius, level, low_memory)
            else:
                chunks = _chunks(level, 4 * workers)
                if ordered:
                    parts = pool.map(_expand_chunk, [frobenius] * len(chunks), chunks,
                                     [low_memory] * len(chunks))
                else:
                    futures = [pool.submit(_expand_chunk, frobenius, c, low_memory) for c in chunks]
                    parts = (f.result() for f in as_completed(futures))
                groups = [g for part in parts for g in part]
            level = [child for group in groups for child in group]
    finally:
        if pool is not None:
            pool.shutdown()


def _dfs(frobenius: int) -> Iterator[tuple[Node, int]]:
    stack = [(_root(frobenius), 0)]
    while stack:
        node, depth = stack.pop()
        yield node, depth
        stack.extend((c, depth + 1) for c in reversed(_children(frobenius, node)))


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("SEMICOV_THREADS", "1")))
    except ValueError:
        return 1


def walk(frobenius: int, workers: int = 1, order_insensitive: bool = False,
         low_memory: bool = False) -> Iterator[FrontierNode]:
    """Every member of A(F) exactly once, as :class:`FrontierNode`.

    Order is breadth-first by depth; inside a level, parents keep the order of
    the previous level and each parent's children follow by ascending adjoined
    element.  ``order_insensitive`` drops that guarantee (serial runs switch to
    depth-first, parallel runs merge chunks as they finish).
    """
    _check_f(frobenius)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if order_insensitive and workers == 1 and not low_memory:
        for (bits, entries), depth in _dfs(frobenius):
            yield FrontierNode(NumericalSemigroup(frobenius, bits),
                               AperyTable(frobenius + 1, entries), depth)
        return
    for depth, level in enumerate(_levels(frobenius, workers, low_memory, not order_insensitive)):
        for item in level:
            bits, entries = (item, _entries_from_bits(frobenius, item)) if low_memory else item
            yield FrontierNode(NumericalSemigroup(frobenius, bits),
                               AperyTable(frobenius + 1, entries), depth)


def iter_af(frobenius: int, **kwargs) -> Iterator[NumericalSemigroup]:
    for node in walk(frobenius, **kwargs):
        yield node.semigroup


def enumerate_af(frobenius: int, visitor: Callable[[NumericalSemigroup], object] | None = None,
                 **kwargs) -> int:
    """Visit every numerical semigroup with Frobenius number F; return how many."""
    count = 0
    for s in iter_af(frobenius, **kwargs):
        if visitor is not None:
            visitor(s)
        count += 1
    return count


def members(frobenius: int, **kwargs) -> list[NumericalSemigroup]:
    return list(iter_af(frobenius, **kwargs))


def af_covariety(frobenius: int) -> Covariety:
    """A(F) as a :class:`Covariety`; members are trusted, not re-validated."""
    return Covariety(tuple(sorted(iter_af(frobenius))), delta(frobenius))


# -- closures and minimal systems in A(F) -------------------------------

def _monoid_bits(gens: Iterable[int], limit: int) -> int:
    """Bitset of <gens> restricted to [0, limit].

    Adding all multiples of one generator at a time; doubling the shift covers
    multiples 0..2**k - 1 after k steps.
    """
    mask = (1 << (limit + 1)) - 1
    reach = 1
    for a in sorted(set(gens)):
        step = a
        while step <= limit:
            reach |= (reach << step) & mask
            step <<= 1
    return reach


def af_closure(frobenius: int, a: Iterable[int]) -> NumericalSemigroup:
    """<A> u {F+1, ->}, the least member of A(F) containing A."""
    _check_f(frobenius)
    a = set(a)
    if any(x < 1 or x >= frobenius for x in a):
        raise NotAnAFSet(f"elements of {sorted(a)} must lie in [1, {frobenius - 1}]")
    reach = _monoid_bits(a, frobenius)
    if (reach >> frobenius) & 1:
        raise NotAnAFSet(f"{frobenius} lies in the monoid generated by {sorted(a)}")
    return NumericalSemigroup(frobenius, reach | (1 << (frobenius + 1)))


def af_minimal_system(frobenius: int, s: NumericalSemigroup) -> tuple[int, ...]:
    """The unique A(F)-minimal generating set: minimal generators below F."""
    if s.frobenius != frobenius:
        raise WrongFrobenius(f"F({s}) = {s.frobenius}, expected {frobenius}")
    return tuple(x for x in s.msg if x < frobenius)


def af_rank(frobenius: int, s: NumericalSemigroup) -> int:
    return len(af_minimal_system(frobenius, s))


# -- rank one -----------------------------------------------------------

def rank1_classify(frobenius: int) -> list[NumericalSemigroup]:
    """All members of A(F) of rank one: <m> u {F+1, ->} with 0 < m < F, m not dividing F."""
    _check_f(frobenius, 2)
    return [af_closure(frobenius, {m}) for m in range(2, frobenius) if frobenius % m]


def divisor_count(n: int) -> int:
    """Number of positive divisors, from the prime factorization."""
    count, p = 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        count *= e + 1
        p += 1
    return count * (2 if n > 1 else 1)


def rank1_count(frobenius: int) -> int:
    _check_f(frobenius, 2)
    return frobenius - divisor_count(frobenius)


def rank1_genus(frobenius: int, m: int) -> int:
    if not (0 < m < frobenius) or frobenius % m == 0:
        raise NotRank1Form(f"need 0 < m < F with m not dividing F (F={frobenius}, m={m})")
    return frobenius - frobenius // m


# -- maximum rank -------------------------------------------------------

def max_rank_members(frobenius: int) -> list[NumericalSemigroup]:
    """Members of A(F) with rank m(S) - 1, built as P minus {F} for MED P with max(msg) = F.

    Every such P is ({m} + S) u {0} with F(S) = F - 2m and m in S; the base
    S = N appears when F = 2m - 1.
    """
    _check_f(frobenius, 2)
    found = set()
    m = 1
    while frobenius - 2 * m >= -1:
        base_f = frobenius - 2 * m
        if base_f == -1:
            bases: Iterable[NumericalSemigroup] = [NATURALS]
        elif base_f == 0:
            bases = []
        else:
            bases = iter_af(base_f)
        for s in bases:
            if m in s:
                found.add(remove_element(med_lift(s, m), frobenius))
        m += 1
    return sorted(found)


def max_rank_genus(frobenius: int, a: Iterable[int]) -> int:
    """Genus of a maximum-rank member from its A(F)-minimal system ``a``."""
    a = set(a)
    s = af_closure(frobenius, a)
    m = s.multiplicity
    if af_minimal_system(frobenius, s) != tuple(sorted(a)) or af_rank(frobenius, s) != m - 1:
        raise NotMaxRank(f"{sorted(a)} is not the minimal system of a maximum-rank member")
    total = sum(a - {m}) + frobenius
    q, r = divmod(2 * total - m * (m - 3), 2 * m)
    if r:
        raise ArithmeticError(f"non-integral genus formula for {s}")
    return q


# -- B(F) ---------------------------------------------------------------

def bf_family(frobenius: int, check: bool = True) -> Covariety:
    """All numerical semigroups with Frobenius number at most F (N included)."""
    _check_f(frobenius)
    family = [NATURALS]
    for f in range(1, frobenius + 1):
        family.extend(iter_af(f))
    if check:
        return validate(family)
    return Covariety(tuple(sorted(family)), ordinary(frobenius))
