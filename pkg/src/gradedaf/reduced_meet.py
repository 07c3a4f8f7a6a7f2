"""Ultrafilters over finite index sets and reduced meets modulo them.

Every ultrafilter on a finite set is principal, so an :class:`Ultrafilter`
is stored as its generating point.  The explicit axiom checker exists to
confirm that claim on listed set systems.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .core import Aaf, ArgSet, Params
from .errors import CapExceeded, PreconditionError
from .kernel import defense, neutrality, range_of, range_plus

Index = Hashable


@dataclass(frozen=True)
class IndexSet:
    items: tuple[Index, ...]

    def __post_init__(self):
        if not self.items:
            raise PreconditionError("index set must be nonempty")
        if len(set(self.items)) != len(self.items):
            raise PreconditionError("index set has repeated tokens")

    @classmethod
    def of(cls, items: Iterable[Index]) -> "IndexSet":
        return cls(tuple(items))

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)


@dataclass(frozen=True)
class Ultrafilter:
    over: IndexSet
    point: Index

    def __post_init__(self):
        if self.point not in self.over.items:
            raise PreconditionError(f"point {self.point!r} is not an index")

    def __contains__(self, S: object) -> bool:
        return self.point in S  # type: ignore[operator]


@dataclass(frozen=True)
class IndexedFamily:
    over: IndexSet
    assign: Mapping[Index, ArgSet]

    def __post_init__(self):
        if set(self.assign) != set(self.over.items):
            raise PreconditionError("indexed family must be total on its index set")

    @classmethod
    def of(cls, sets: Sequence[ArgSet], start: int = 1) -> "IndexedFamily":
        idx = IndexSet.of(range(start, start + len(sets)))
        return cls(idx, dict(zip(idx.items, sets)))

    def hat(self, x: int) -> frozenset[Index]:
        """Indices whose set contains argument bit ``x``."""
        return frozenset(i for i in self.over if self.assign[i] >> x & 1)

    def values(self) -> list[ArgSet]:
        return [self.assign[i] for i in self.over]


@dataclass(frozen=True)
class UltrafilterVerdict:
    ok: bool
    point: Index | None = None
    violated: str | None = None
    detail: str = ""


def is_ultrafilter(I: IndexSet, D: Iterable[Iterable[Index]], cap: int = 1 << 16) -> UltrafilterVerdict:
    """Check axioms U1-U4 for an explicitly listed set system over I."""
    fam = {frozenset(S) for S in D}
    if len(fam) > cap:
        raise CapExceeded("set system too large to check")
    full = frozenset(I.items)

    def show(S):
        return sorted(S, key=str)

    for S in fam:
        if not S <= full:
            return UltrafilterVerdict(False, violated="U1", detail=f"{show(S)} is not a subset of I")
    if full not in fam or frozenset() in fam:
        return UltrafilterVerdict(False, violated="U1", detail="I must belong and the empty set must not")
    # a filter has exactly one minimal member; two minimal members meet
    # outside the system
    minimal: list[frozenset] = []
    for S in sorted(fam, key=len):
        if not any(M <= S for M in minimal):
            minimal.append(S)
    if len(minimal) > 1:
        X, Y = minimal[0], minimal[1]
        return UltrafilterVerdict(False, violated="U2", detail=f"{show(X)} & {show(Y)} = {show(X & Y)} missing")
    for X in fam:
        for i in full - X:
            if X | {i} not in fam:
                return UltrafilterVerdict(False, violated="U3", detail=f"superset {show(X | {i})} of {show(X)} missing")
    # given U1-U3, U4 reduces to: every set or its complement belongs
    items = list(I.items)
    for k in range(len(items) + 1):
        for combo in combinations(items, k):
            X = frozenset(combo)
            if X not in fam and full - X not in fam:
                return UltrafilterVerdict(False, violated="U4", detail=f"neither {show(X)} nor its complement")
    (M,) = minimal
    if len(M) != 1:
        # unreachable: U4 splits any minimal set of size > 1
        return UltrafilterVerdict(False, violated="U4", detail=f"minimal member {show(M)} is not a point")
    (point,) = tuple(M)
    return UltrafilterVerdict(True, point=point)


def principal(I: IndexSet, point: Index) -> Ultrafilter:
    return Ultrafilter(I, point)


def extend_fip(I: IndexSet, omega: Iterable[Iterable[Index]]) -> Ultrafilter:
    """Principal ultrafilter containing every set of ``omega``, generated by
    the least index in their intersection."""
    common = set(I.items)
    for S in omega:
        common &= set(S)
    for i in I.items:
        if i in common:
            return Ultrafilter(I, i)
    raise PreconditionError("no-FIP: the sets have empty intersection")


def reduced_meet(fam: IndexedFamily, D: Ultrafilter) -> ArgSet:
    """{x : hat(x) in D}; for a principal D this is the set at its point."""
    if D.over != fam.over:
        raise PreconditionError("ultrafilter and family use different index sets")
    union = 0
    for s in fam.values():
        union |= s
    out = 0
    x = 0
    while union >> x:
        if union >> x & 1 and fam.hat(x) in D:
            out |= 1 << x
        x += 1
    return out


def _directed(sets: Sequence[ArgSet]) -> bool:
    for a, b in combinations(sets, 2):
        if not any((a | b) & ~c == 0 for c in sets):
            return False
    return True


def directed_union_as_meet(fam: IndexedFamily) -> tuple[Ultrafilter, ArgSet]:
    """A principal ultrafilter whose reduced meet is the union of a directed
    family (its point indexes a largest member)."""
    vals = fam.values()
    if not _directed(vals):
        raise PreconditionError("family is not directed")
    union = 0
    for s in vals:
        union |= s
    hats = [fam.hat(x) for x in range(union.bit_length()) if union >> x & 1]
    D = extend_fip(fam.over, hats)
    return D, reduced_meet(fam, D)


def _propto(F: Aaf, eta: int, X: ArgSet, Y: ArgSet) -> bool:
    return range_of(F, eta, X) & ~range_of(F, eta, Y) == 0


@dataclass(frozen=True)
class LawResult:
    law: str
    instance: str
    passed: bool

    def as_dict(self) -> dict:
        return {"law": self.law, "instance": self.instance, "pass": self.passed}


def check_laws(F: Aaf, p: Params, fam: IndexedFamily, D: Ultrafilter,
               other: IndexedFamily | None = None) -> list[LawResult]:
    """Evaluate the reduced-meet laws on one instance.

    ``other`` is the second family for the subset law; by default the
    pointwise defense image of ``fam`` is used.
    """
    out: list[LawResult] = []
    meet = reduced_meet(fam, D)
    tag = f"point={D.point!r} sets={[F.names(s) for s in fam.values()]}"

    def image(fn) -> IndexedFamily:
        return IndexedFamily(fam.over, {i: fn(fam.assign[i]) for i in fam.over})

    lhs = reduced_meet(image(lambda E: neutrality(F, p.l, E)), D)
    out.append(LawResult("neutrality-distributes", tag, lhs == neutrality(F, p.l, meet)))
    lhs = reduced_meet(image(lambda E: defense(F, p.m, p.n, E)), D)
    out.append(LawResult("defense-distributes", tag, lhs == defense(F, p.m, p.n, meet)))

    Y = other or image(lambda E: defense(F, p.m, p.n, E))
    if Y.over != fam.over:
        raise PreconditionError("subset-law family uses a different index set")
    majority = frozenset(i for i in fam.over if fam.assign[i] & ~Y.assign[i] == 0)
    ok = majority not in D or meet & ~reduced_meet(Y, D) == 0
    out.append(LawResult("subset", tag, ok))

    rp = range_plus(F, p.eta, meet)
    ok = True
    for x in range(F.size):
        J = frozenset(i for i in fam.over if range_plus(F, p.eta, fam.assign[i]) >> x & 1)
        if J in D and not rp >> x & 1:
            ok = False
            break
    out.append(LawResult("out-of-range", tag, ok))

    vals = fam.values()
    if all(_propto(F, p.eta, a, b) or _propto(F, p.eta, b, a) for a, b in combinations(vals, 2)):
        # J_a = indices whose range covers a; on a chain these sets nest
        ranges = {i: range_of(F, p.eta, fam.assign[i]) for i in fam.over}
        cover = 0
        for r in ranges.values():
            cover |= r
        Js = [frozenset(i for i in fam.over if ranges[i] >> x & 1)
              for x in range(F.size) if cover >> x & 1]
        Dub = extend_fip(fam.over, Js)
        top = reduced_meet(fam, Dub)
        ok = all(_propto(F, p.eta, v, top) for v in vals)
        out.append(LawResult("chain-upper-bound", f"{tag} via point={Dub.point!r}", ok))
    return out


def sample_indexed(rng: random.Random, pool: Sequence[ArgSet], size: int | None = None) -> tuple[IndexedFamily, Ultrafilter]:
    """Draw an indexed family from ``pool`` and a uniformly chosen principal
    ultrafilter on its index set."""
    if not pool:
        raise PreconditionError("cannot sample from an empty family")
    k = size or rng.randint(1, 5)
    fam = IndexedFamily.of([rng.choice(pool) for _ in range(k)])
    return fam, Ultrafilter(fam.over, rng.choice(fam.over.items))


@dataclass(frozen=True)
class ClosureReport:
    closed: bool
    samples: int
    counterexample: tuple[tuple[ArgSet, ...], Index] | None = None


def check_family_closure(family: Iterable[ArgSet], rng: random.Random, samples: int = 100) -> ClosureReport:
    """Sample indexed families from ``family`` with principal ultrafilters
    and check that each reduced meet stays in the family."""
    pool = list(family)
    members_ = set(pool)
    if not pool:
        return ClosureReport(True, 0)
    for _ in range(samples):
        fam, D = sample_indexed(rng, pool)
        if reduced_meet(fam, D) not in members_:
            return ClosureReport(False, samples, (tuple(fam.values()), D.point))
    return ClosureReport(True, samples)
