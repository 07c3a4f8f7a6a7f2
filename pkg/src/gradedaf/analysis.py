"""Extensibility, inference, anti-sets, framework comparison, safe
operators and order-structure reports over extension families."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from .core import Aaf, ArgSet, ExtensionFamily, Params, canonical_sets, members
from .errors import CapExceeded, PreconditionError
from .fixpoint import lfp_from
from .semantics import Catalog, Spec, _maximal, as_spec


def is_extensible(F: Aaf, family: ExtensionFamily, X: ArgSet) -> bool:
    return any(X & ~E == 0 for E in family)


def infers(F: Aaf, family: ExtensionFamily, X: ArgSet, a: str) -> bool:
    """Every member containing X contains ``a``; vacuously true when none does."""
    bit = 1 << F.index[a]
    return all(E & bit for E in family if X & ~E == 0)


def _down_table(size: int, sets: Iterable[ArgSet]) -> np.ndarray:
    """Boolean table over all subsets: True iff inside some given set."""
    down = np.zeros(1 << size, dtype=bool)
    idx = np.fromiter(sets, dtype=np.int64)
    if idx.size:
        down[idx] = True
    allmasks = np.arange(1 << size, dtype=np.int64)
    for i in range(size):
        with_bit = allmasks[(allmasks >> i) & 1 == 1]
        down[with_bit ^ (1 << i)] |= down[with_bit]
    return down


def minimal_outside(size: int, sets: Iterable[ArgSet]) -> list[ArgSet]:
    """Subset-minimal subsets of a ``size``-element universe that are
    contained in none of ``sets``, in canonical order."""
    down = _down_table(size, sets)
    anti = ~down
    allmasks = np.arange(1 << size, dtype=np.int64)
    for i in range(size):
        with_bit = allmasks[(allmasks >> i) & 1 == 1]
        anti[with_bit] &= down[with_bit ^ (1 << i)]
    return list(canonical_sets(np.nonzero(anti)[0].tolist()))


def anti_sets(F: Aaf, family: ExtensionFamily) -> ExtensionFamily:
    """Minimal sets contained in no member of ``family``."""
    return ExtensionFamily(F, tuple(minimal_outside(F.size, family.sets)))


@dataclass(frozen=True)
class GammaReport:
    gamma: tuple[ArgSet, ...]
    classes: tuple[tuple[ArgSet, ...], ...]

    @property
    def class_count(self) -> int:
        return len(self.classes)


def gamma_at(F: Aaf, family: ExtensionFamily, a: str) -> GammaReport:
    """Anti-sets through ``a`` and their classes under the relation that
    compares X - {a} against every maximal member."""
    bit = 1 << F.index[a]
    gamma = tuple(X for X in anti_sets(F, family) if X & bit)
    tops = _maximal(family.sets)
    groups: dict[tuple[bool, ...], list[ArgSet]] = {}
    for X in gamma:
        rest = X & ~bit
        sig = tuple(rest & ~E == 0 for E in sorted(tops))
        groups.setdefault(sig, []).append(X)
    return GammaReport(gamma, tuple(tuple(g) for g in groups.values()))


def _inference_meets(full: int, size: int, tops: list[ArgSet]) -> list[int]:
    """For every X, the meet of maximal members above X (full if none)."""
    out = []
    for X in range(1 << size):
        acc = full
        for E in tops:
            if X & ~E == 0:
                acc &= E
        out.append(acc)
    return out


def _align(F1: Aaf, F2: Aaf) -> Aaf:
    if set(F1.arguments) != set(F2.arguments):
        raise PreconditionError("frameworks have different argument sets")
    if F1.arguments == F2.arguments:
        return F2
    return Aaf.build(F1.arguments, F2.attacks)


@dataclass(frozen=True)
class ComparisonReport:
    anti_equal: bool
    approx_equal: bool
    max_equal: bool
    inference_equal: bool
    anti_nonempty: bool

    @property
    def consistent(self) -> bool:
        """Whether the four verdicts agree as the anti-set equivalence predicts."""
        first = self.anti_equal == self.approx_equal == self.max_equal
        if self.anti_nonempty:
            return first and self.inference_equal == self.anti_equal
        return first

    def as_dict(self) -> dict:
        return {
            "anti_equal": self.anti_equal,
            "approx_equal": self.approx_equal,
            "max_equal": self.max_equal,
            "inference_equal": self.inference_equal,
            "anti_nonempty": self.anti_nonempty,
        }


def _below(f1: Iterable[ArgSet], f2: list[ArgSet]) -> bool:
    return all(any(E & ~E2 == 0 for E2 in f2) for E in f1)


def compare_frameworks(F1: Aaf, F2: Aaf, spec: "Spec | str", p: Params) -> ComparisonReport:
    F2 = _align(F1, F2)
    spec = as_spec(spec)
    fam1 = Catalog(F1, p).family(spec)
    fam2 = Catalog(F2, p).family(spec)
    anti1 = anti_sets(F1, fam1).sets
    anti2 = anti_sets(F2, fam2).sets
    tops1 = sorted(_maximal(fam1.sets))
    tops2 = sorted(_maximal(fam2.sets))
    inf1 = _inference_meets(F1.full, F1.size, tops1)
    inf2 = _inference_meets(F1.full, F1.size, tops2)
    return ComparisonReport(
        anti_equal=anti1 == anti2,
        approx_equal=_below(fam1.sets, list(fam2.sets)) and _below(fam2.sets, list(fam1.sets)),
        max_equal=tops1 == tops2,
        inference_equal=inf1 == inf2,
        anti_nonempty=bool(anti1) and bool(anti2),
    )


def safe_restrict_cf(F: Aaf, l: int) -> Aaf:
    """Keep an attack only if both endpoints lie in a common minimal
    anti-conflict-free set."""
    cf = Catalog(F, Params(l=l)).family("cf")
    anti = anti_sets(F, cf).sets
    kept = []
    for x, y in F.attacks:
        both = 1 << F.index[x] | 1 << F.index[y]
        if any(both & ~X == 0 for X in anti):
            kept.append((x, y))
    return F.with_attacks(kept)


def canonical_cf(F: Aaf, l: int, choice_cap: int = 16) -> Aaf:
    """Rebuild F from its anti-conflict-free sets with a well-organized
    choice function."""
    from .representation import CandidateOmega, construct_f_omega, find_choice

    cf = Catalog(F, Params(l=l)).family("cf")
    omega = CandidateOmega(F.arguments, frozenset(cf.sets))
    ch = find_choice(omega, l, "I", cap=choice_cap)
    if ch is None:
        raise PreconditionError("no well-organized choice function exists")
    return construct_f_omega(omega, l, ch)


# ---------------------------------------------------------------- order report

@dataclass
class OrderReport:
    flags: dict[str, object] = field(default_factory=dict)
    witnesses: dict[str, object] = field(default_factory=dict)

    def __getitem__(self, key: str):
        return self.flags[key]

    def as_dict(self) -> dict:
        out: dict[str, object] = {}
        for k, v in self.flags.items():
            out[k] = {"witness": self.witnesses[k]} if v is False and k in self.witnesses else v
        return out


def _meet_closure(sets: list[ArgSet]) -> set[int]:
    seen = set(sets)
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for y in sets:
                z = x & y
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return seen


def order_report(family: ExtensionFamily, inf_basis: ExtensionFamily | None = None,
                 lattice_cap: int = 1 << 10, cap: int = 1 << 14) -> OrderReport:
    """Brute-force order-theoretic flags of a family under inclusion.

    ``inf_basis`` is the family whose members below a meet are unioned in
    the infimum formula; it defaults to ``family`` itself.
    """
    sets = list(family.sets)
    if len(sets) > cap:
        raise CapExceeded(f"family has {len(sets)} members, cap is {cap}")
    F = family.owner
    fam = set(sets)
    rep = OrderReport()
    names = F.names

    # down-closure: one-element removals suffice by induction
    rep.flags["down_closed"] = True
    for E in sets:
        for i in members(E):
            if E & ~(1 << i) not in fam:
                rep.flags["down_closed"] = False
                rep.witnesses["down_closed"] = [list(names(E)), list(names(E & ~(1 << i)))]
                break
        if rep.flags["down_closed"] is False:
            break

    rep.flags["union_closed"] = True
    for X, Y in combinations(sets, 2):
        if X | Y not in fam:
            rep.flags["union_closed"] = False
            rep.witnesses["union_closed"] = [list(names(X)), list(names(Y))]
            break

    # a finite directed subfamily contains its own union; small families
    # are swept exhaustively, mid-sized ones over subfamilies of size <= 3
    directed_ok: bool | str = True
    if len(sets) <= 12:
        widths = range(1, len(sets) + 1)
    elif len(sets) <= 128:
        widths = range(1, 4)
    else:
        widths = range(0)
        directed_ok = "skipped"
    for k in widths:
        for sub in combinations(sets, k):
            u = 0
            for s in sub:
                u |= s
            if u not in fam and all(any((a | b) & ~c == 0 for c in sub) for a, b in combinations(sub, 2)):
                directed_ok = False
                rep.witnesses["directed_union_closed"] = [list(names(s)) for s in sub]
                break
        if directed_ok is False:
            break
    rep.flags["directed_union_closed"] = directed_ok

    least = next((E for E in sets if all(E & ~X == 0 for X in sets)), None)
    rep.flags["has_least"] = least is not None
    if least is not None:
        rep.witnesses["least"] = list(names(least))
    greatest = next((E for E in sets if all(X & ~E == 0 for X in sets)), None)
    rep.flags["has_greatest"] = greatest is not None
    if greatest is not None:
        rep.witnesses["greatest"] = list(names(greatest))

    if len(sets) > lattice_cap:
        rep.flags["is_lattice"] = "skipped"
    else:
        ok = True
        for X, Y in combinations(sets, 2):
            ups = [Z for Z in sets if (X | Y) & ~Z == 0]
            lows = [Z for Z in sets if Z & ~(X & Y) == 0]
            lub = ups and any(all(U & ~V == 0 for V in ups) for U in ups)
            glb = lows and any(all(V & ~U == 0 for V in lows) for U in lows)
            if not (lub and glb):
                ok = False
                rep.witnesses["is_lattice"] = [list(names(X)), list(names(Y))]
                break
        rep.flags["is_lattice"] = ok

    tops = _maximal(sets)
    rep.flags["lindenbaum"] = all(any(E & ~T == 0 for T in tops) for E in sets)

    basis = list((inf_basis or family).sets)
    inf_ok = True
    for T in _meet_closure(sets) if sets else ():
        lows = [X for X in sets if X & ~T == 0]
        formula = 0
        for X in basis:
            if X & ~T == 0:
                formula |= X
        glb = next((U for U in lows if all(V & ~U == 0 for V in lows)), None)
        if glb is None or glb != formula:
            inf_ok = False
            rep.witnesses["inf_formula"] = {"meet": list(names(T)),
                                            "formula": list(names(formula)),
                                            "glb": None if glb is None else list(names(glb))}
            break
    rep.flags["inf_formula"] = inf_ok
    return rep


def galois_check(F: Aaf, p: Params) -> bool:
    """lfp_from(E) <= E' iff E <= E' for admissible E and complete E'."""
    if not p.n >= p.l >= p.m:
        raise PreconditionError("the adjunction needs n >= l >= m")
    cat = Catalog(F, p)
    ad = cat.sets("ad")
    co = cat.sets("co")
    for E in ad:
        closure = lfp_from(F, p.m, p.n, E)
        for E2 in co:
            if (closure & ~E2 == 0) != (E & ~E2 == 0):
                return False
    return True
