"""Covarieties held extensionally as finite families of numerical semigroups.

A covariety has a minimum, is closed under pairwise intersection and under
removal of the multiplicity from any non-minimum member.  This module checks
those axioms, computes closures of C-sets, minimal C-systems and ranks, builds
the multiplicity-removal tree, and generates the smallest covariety containing
a finite family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable

from .errors import (
    EmptyFamily,
    FrobeniusTooSmall,
    NoMinimum,
    NotACSet,
    NotIntersectionClosed,
    NotMember,
    NotMultiplicityRemovalClosed,
)
from .semigroup import (
    NumericalSemigroup,
    intersect,
    ordinary,
    remove_element,
    to_record,
)


def _drop_multiplicity(s: NumericalSemigroup) -> NumericalSemigroup:
    return remove_element(s, s.multiplicity)


@dataclass(frozen=True)
class Covariety:
    members: tuple[NumericalSemigroup, ...]
    delta: NumericalSemigroup
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.members)})

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s: NumericalSemigroup) -> bool:
        return s in self._index

    def index(self, s: NumericalSemigroup) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise NotMember(f"{s} is not a member of the covariety") from None

    @cached_property
    def top(self) -> int:
        """A window covering every member's small elements."""
        return max(s.frobenius for s in self.members) + 1

    @cached_property
    def windows(self) -> tuple[int, ...]:
        return tuple(s.window(self.top) for s in self.members)

    @cached_property
    def maximal(self) -> tuple[int, ...]:
        """Indices of the inclusion-maximal members."""
        w = self.windows
        return tuple(
            i for i, a in enumerate(w)
            if not any(b != a and a & ~b == 0 for b in w)
        )

    def maximal_members(self) -> tuple[NumericalSemigroup, ...]:
        return tuple(self.members[i] for i in self.maximal)

    def to_json(self) -> dict:
        return {
            "delta": to_record(self.delta),
            "members": [to_record(s) for s in self.members],
            "maximal": list(self.maximal),
        }


def validate(family: Iterable[NumericalSemigroup]) -> Covariety:
    """Check the three covariety axioms, raising on the first violation."""
    members = tuple(sorted(set(family)))
    if not members:
        raise EmptyFamily("a covariety is nonempty")
    delta = max(members, key=lambda s: (s.genus, s.sort_key))
    if not all(delta.issubset(s) for s in members):
        raise NoMinimum("no member is contained in all the others")
    present = set(members)
    for s, t in combinations(members, 2):
        if intersect(s, t) not in present:
            raise NotIntersectionClosed(s, t)
    for s in members:
        if s != delta and _drop_multiplicity(s) not in present:
            raise NotMultiplicityRemovalClosed(s)
    return Covariety(members, delta)


def maximal_members(cov: Covariety) -> tuple[NumericalSemigroup, ...]:
    return cov.maximal_members()


# -- C-sets and closures --------------------------------------------------

@dataclass(frozen=True)
class CSet:
    elements: frozenset[int]
    host: int  # index into Covariety.maximal

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self) -> int:
        return len(self.elements)


def _mask(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def make_cset(cov: Covariety, elements: Iterable[int]) -> CSet:
    """A C-set: positive integers outside the minimum, inside some maximal member."""
    elements = frozenset(elements)
    if any(x <= 0 or x in cov.delta for x in elements):
        raise NotACSet(f"{sorted(elements)} meets the minimum {cov.delta}")
    a = _mask(elements)
    for host, i in enumerate(cov.maximal):
        if a & ~cov.windows[i] == 0:
            return CSet(elements, host)
    raise NotACSet(f"{sorted(elements)} lies in no maximal member")


def _closure_index(cov: Covariety, a: int) -> int:
    acc = -1
    for w in cov.windows:
        if a & ~w == 0:
            acc &= w
    acc &= (1 << (cov.top + 1)) - 1
    return cov.index(NumericalSemigroup._from_window(acc, cov.top))


def closure(cov: Covariety, a: CSet | Iterable[int]) -> NumericalSemigroup:
    """The least member containing the C-set ``a``."""
    if not isinstance(a, CSet):
        a = make_cset(cov, a)
    return cov.members[_closure_index(cov, _mask(a.elements))]


def _generating_candidates(cov: Covariety, s: NumericalSemigroup) -> list[int]:
    """Elements of S outside the minimum; every generating C-set lives here."""
    return [x for x in range(1, cov.top + 1) if x in s and x not in cov.delta]


def _minimal_systems(cov: Covariety, s: NumericalSemigroup, first_only: bool):
    target = cov.index(s)
    if s == cov.delta:
        return [frozenset()]
    m = s.multiplicity
    # every generating C-set contains m(S); search subsets of the rest
    pool = [x for x in _generating_candidates(cov, s) if x != m]
    found: list[frozenset[int]] = []
    for k in range(len(pool) + 1):
        for rest in combinations(pool, k):
            cand = frozenset((m, *rest))
            if any(f <= cand for f in found):
                continue
            try:
                c = make_cset(cov, cand)
            except NotACSet:
                continue
            if _closure_index(cov, _mask(c.elements)) == target:
                found.append(cand)
        if found and first_only:
            break
    return found


def minimal_csystems(cov: Covariety, s: NumericalSemigroup) -> list[CSet]:
    """Every inclusion-minimal C-set whose closure is ``s``.

    Subsets of S minus the minimum are scanned by size, each forced to contain
    m(S); supersets of systems already found are skipped.
    """
    return [make_cset(cov, a) for a in _minimal_systems(cov, s, first_only=False)]


def rank(cov: Covariety, s: NumericalSemigroup) -> int:
    return min(len(a) for a in _minimal_systems(cov, s, first_only=True))


# -- chains and generated covarieties ------------------------------------

@dataclass(frozen=True)
class ChainCad:
    base: NumericalSemigroup
    links: tuple[NumericalSemigroup, ...]

    @property
    def length(self) -> int:
        """Number of removals needed to reach the ordinary semigroup."""
        return len(self.links) - 1

    def __iter__(self):
        return iter(self.links)

    def __len__(self) -> int:
        return len(self.links)


def chain_cad(s: NumericalSemigroup, frobenius: int) -> ChainCad:
    """S, S minus m(S), ... down to {0, F+1, ->}."""
    if frobenius < s.frobenius:
        raise FrobeniusTooSmall(f"F={frobenius} is below F(S)={s.frobenius}")
    bottom = ordinary(frobenius)
    links = [s]
    while links[-1] != bottom:
        links.append(_drop_multiplicity(links[-1]))
    return ChainCad(s, tuple(links))


def _family(family: Iterable[NumericalSemigroup]) -> tuple[list[NumericalSemigroup], int]:
    family = list(dict.fromkeys(family))
    if not family:
        raise EmptyFamily("need at least one semigroup")
    return family, max(s.frobenius for s in family)


def generated_covariety(family: Iterable[NumericalSemigroup]) -> Covariety:
    """Smallest covariety containing ``family`` with minimum {0, F+1, ->}.

    The union of the chains Cad(S_i) is closed under pairwise intersection;
    this equals the set of intersections over every nonempty index subset of
    one chain element per index.
    """
    family, f = _family(family)
    members = set()
    for s in family:
        members.update(chain_cad(s, f).links)
    frontier = list(members)
    while frontier:
        current = sorted(members)
        fresh = set()
        for a in frontier:
            for b in current:
                c = intersect(a, b)
                if c not in members:
                    fresh.add(c)
        members |= fresh
        frontier = list(fresh)
    return validate(members)


def cad_intersections(family: Iterable[NumericalSemigroup]) -> frozenset[NumericalSemigroup]:
    """Every intersection over a nonempty index subset B of one Cad element per b in B.

    Exponential in the family size; a literal cross-check for
    :func:`generated_covariety`.
    """
    family, f = _family(family)
    chains = [chain_cad(s, f).links for s in family]
    out = set()
    for k in range(1, len(chains) + 1):
        for picked in combinations(chains, k):
            for choice in product(*picked):
                acc = choice[0]
                for t in choice[1:]:
                    acc = intersect(acc, t)
                out.add(acc)
    return frozenset(out)


# -- the tree G(C) --------------------------------------------------------

@dataclass(frozen=True)
class EnumerationTree:
    root: NumericalSemigroup
    vertices: tuple[NumericalSemigroup, ...]
    edges: tuple[tuple[NumericalSemigroup, NumericalSemigroup], ...]  # (child, parent)

    def parent(self, s: NumericalSemigroup) -> NumericalSemigroup | None:
        for child, par in self.edges:
            if child == s:
                return par
        return None

    def children(self, s: NumericalSemigroup) -> list[NumericalSemigroup]:
        return [c for c, p in self.edges if p == s]


def tree(cov: Covariety) -> EnumerationTree:
    """Edges S -> S minus m(S) for every non-minimum member."""
    edges = []
    for s in cov.members:
        if s != cov.delta:
            parent = _drop_multiplicity(s)
            if parent not in cov:
                raise NotMultiplicityRemovalClosed(s)
            edges.append((s, parent))
    return EnumerationTree(cov.delta, cov.members, tuple(edges))

