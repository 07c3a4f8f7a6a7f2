"""Inverse problem for graded conflict-freeness.

Given a candidate family Omega over a universe, decide whether it is the
l-conflict-free family of some framework and, if so, build one.  The
construction picks, for every minimal set outside Omega, an argument that
the rest of the set attacks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .analysis import minimal_outside
from .core import Aaf, ArgSet, Params, canonical_sets, members
from .errors import CapExceeded, InvariantViolation, ParseError, PreconditionError
from .fixpoint import wf_on
from .semantics import Catalog

VARIANTS = ("I", "II", "III")


@dataclass(frozen=True)
class CandidateOmega:
    universe: tuple[str, ...]
    sets: frozenset[ArgSet]

    def __post_init__(self):
        if len(set(self.universe)) != len(self.universe):
            raise PreconditionError("universe has repeated names")
        full = (1 << len(self.universe)) - 1
        if any(s & ~full for s in self.sets):
            raise PreconditionError("a set of Omega leaves the universe")

    @classmethod
    def from_names(cls, universe: Iterable[str], sets: Iterable[Iterable[str]]) -> "CandidateOmega":
        universe = tuple(universe)
        index = {a: i for i, a in enumerate(universe)}
        masks = set()
        for s in sets:
            mask = 0
            for a in s:
                if a not in index:
                    raise PreconditionError(f"{a!r} is not in the universe")
                mask |= 1 << index[a]
            masks.add(mask)
        return cls(universe, frozenset(masks))

    @property
    def full(self) -> ArgSet:
        return (1 << len(self.universe)) - 1

    def names(self, mask: ArgSet) -> list[str]:
        return [self.universe[i] for i in members(mask)]

    def named(self) -> list[list[str]]:
        return [self.names(s) for s in canonical_sets(self.sets)]


def omega_from_json(doc: Mapping | str) -> CandidateOmega:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    try:
        return CandidateOmega.from_names(doc["universe"], doc["sets"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"Omega JSON needs 'universe' and 'sets': {exc}") from None


@dataclass(frozen=True)
class ChoiceFunction:
    """Maps each minimal outside set to one of its members (a bit index)."""

    pick: tuple[tuple[ArgSet, int], ...] = ()

    def __call__(self, Y: ArgSet) -> int:
        return dict(self.pick)[Y]

    def as_dict(self) -> dict[ArgSet, int]:
        return dict(self.pick)


def gamma_omega(omega: CandidateOmega) -> tuple[ArgSet, ...]:
    """Minimal subsets of the universe contained in no member of Omega."""
    return tuple(minimal_outside(len(omega.universe), omega.sets))


def _down_closed_witness(omega: CandidateOmega) -> tuple[ArgSet, ArgSet] | None:
    for E in canonical_sets(omega.sets):
        for i in members(E):
            if E & ~(1 << i) not in omega.sets:
                return E, E & ~(1 << i)
    return None


def _size_ok(Y: ArgSet, l: int, variant: str) -> bool:
    k = Y.bit_count()
    if variant == "II":
        return k == l + 1
    return l - 1 < k <= l + 1


def _group_ok(omega_sets: frozenset[ArgSet], a: int, union: ArgSet, least: int) -> bool:
    """No Z within ``union`` that contains ``a`` and has at least ``least``
    members belongs to Omega."""
    rest = union & ~(1 << a)
    sub = rest
    while True:
        Z = sub | 1 << a
        if Z.bit_count() >= least and Z in omega_sets:
            return False
        if sub == 0:
            return True
        sub = (sub - 1) & rest


def _acyclic(incoming: dict[int, ArgSet]) -> bool:
    remaining = 0
    for a in incoming:
        remaining |= 1 << a
    for mask in incoming.values():
        remaining |= mask
    while remaining:
        sources = 0
        for i in members(remaining):
            if incoming.get(i, 0) & remaining == 0:
                sources |= 1 << i
        if not sources:
            return False
        remaining &= ~sources
    return True


def find_choice(omega: CandidateOmega, l: int, variant: str = "I", cap: int = 16) -> ChoiceFunction | None:
    """First well-organized choice function in lexicographic search order,
    or None.  Variant II also demands that the induced attack graph is
    acyclic (a well-founded choice)."""
    if variant not in VARIANTS:
        raise PreconditionError(f"unknown variant {variant!r}")
    gamma = gamma_omega(omega)
    if not gamma:
        return ChoiceFunction(())
    if len(gamma) > cap:
        raise CapExceeded(f"{len(gamma)} minimal outside sets exceed the choice-search cap of {cap}")
    sets = omega.sets
    picks: list[int] = []

    def search(k: int, groups: dict[int, tuple[ArgSet, int]], incoming: dict[int, ArgSet]) -> bool:
        if k == len(gamma):
            return True
        Y = gamma[k]
        for a in members(Y):
            union, least = groups.get(a, (0, Y.bit_count()))
            union |= Y
            least = min(least, Y.bit_count())
            if not _group_ok(sets, a, union, least):
                continue
            new_in = incoming
            if variant == "II":
                new_in = dict(incoming)
                new_in[a] = new_in.get(a, 0) | (Y & ~(1 << a))
                if not _acyclic(new_in):
                    continue
            new_groups = dict(groups)
            new_groups[a] = (union, least)
            picks.append(a)
            if search(k + 1, new_groups, new_in):
                return True
            picks.pop()
        return False

    if search(0, {}, {}):
        return ChoiceFunction(tuple(zip(gamma, picks)))
    return None


def construct_f_omega(omega: CandidateOmega, l: int, ch: ChoiceFunction) -> Aaf:
    """Union over minimal outside sets Y of the edges b -> ch(Y) for b in Y,
    excluding the self-edge when |Y| = l + 1."""
    attacks = set()
    for Y in gamma_omega(omega):
        if not l - 1 < Y.bit_count() <= l + 1:
            raise PreconditionError(f"{omega.names(Y)} has size outside ({l - 1}, {l + 1}]")
        c = ch(Y)
        for b in members(Y):
            if b != c or Y.bit_count() == l:
                attacks.add((omega.universe[b], omega.universe[c]))
    return Aaf.build(omega.universe, attacks)


@dataclass
class ConditionReport:
    variant: str
    verdicts: dict[str, object] = field(default_factory=dict)
    witnesses: dict[str, object] = field(default_factory=dict)
    choice: ChoiceFunction | None = None

    @property
    def ok(self) -> bool:
        return all(v is True or v == "auto" for v in self.verdicts.values())

    def as_dict(self) -> dict:
        return {"variant": self.variant, "verdicts": self.verdicts, "witnesses": self.witnesses}


def check_conditions(omega: CandidateOmega, l: int, variant: str = "I", cap: int = 16) -> ConditionReport:
    """Evaluate the representability conditions (a)-(e), plus (f) for III.

    Closure under reduced meets (c) holds for every family on a finite
    universe and is reported as "auto"; so is closure under directed unions.
    """
    if variant not in VARIANTS:
        raise PreconditionError(f"unknown variant {variant!r}")
    rep = ConditionReport(variant)
    rep.verdicts["a"] = bool(omega.sets)
    bad = _down_closed_witness(omega)
    rep.verdicts["b"] = bad is None
    if bad is not None:
        rep.witnesses["b"] = {"member": omega.names(bad[0]), "missing": omega.names(bad[1])}
    rep.verdicts["c"] = "auto"
    rep.verdicts["directed_unions"] = "auto"
    gamma = gamma_omega(omega)
    wrong = [Y for Y in gamma if not _size_ok(Y, l, variant)]
    rep.verdicts["d"] = not wrong
    if wrong:
        rep.witnesses["d"] = [omega.names(Y) for Y in wrong]
    if wrong:
        # the choice condition only makes sense once the sizes fit
        rep.verdicts["e"] = False
        rep.witnesses["e"] = "size condition fails"
    else:
        ch = find_choice(omega, l, variant, cap=cap)
        rep.verdicts["e"] = ch is not None
        rep.choice = ch
    if variant == "III":
        counts = {a: sum(1 for Y in gamma if Y >> i & 1) for i, a in enumerate(omega.universe)}
        rep.verdicts["f"] = True
        rep.witnesses["f"] = counts
    return rep


@dataclass(frozen=True)
class Representation:
    ok: bool
    report: ConditionReport
    witness: Aaf | None = None


def representable(omega: CandidateOmega, l: int, variant: str = "I", cap: int = 16) -> Representation:
    """Decide representability; on success build the witness and re-check
    that its l-conflict-free family is exactly Omega."""
    rep = check_conditions(omega, l, variant, cap=cap)
    if not rep.ok or not omega.universe:
        return Representation(False, rep)
    assert rep.choice is not None
    F = construct_f_omega(omega, l, rep.choice)
    got = frozenset(Catalog(F, Params(l=l)).sets("cf"))
    if got != omega.sets:
        raise InvariantViolation("constructed framework does not reproduce Omega")
    if variant == "II" and not wf_on(F, F.full):
        raise InvariantViolation("well-founded choice produced a cyclic framework")
    return Representation(True, rep, F)


@dataclass(frozen=True)
class Rho:
    """Set of grades l for which Omega is representable."""

    all_positive: bool
    values: frozenset[int] = frozenset()

    def __contains__(self, l: object) -> bool:
        return self.all_positive or l in self.values

    def describe(self) -> str:
        if self.all_positive:
            return "all positive integers"
        return "{" + ", ".join(str(v) for v in sorted(self.values)) + "}"


def rho(omega: CandidateOmega, cap: int = 16) -> Rho:
    gamma = gamma_omega(omega)
    if not gamma:
        return Rho(True)
    k = min(Y.bit_count() for Y in gamma)
    found = set()
    for l in (k - 1, k):
        if l >= 1 and representable(omega, l, "I", cap=cap).ok:
            found.add(l)
    return Rho(False, frozenset(found))
