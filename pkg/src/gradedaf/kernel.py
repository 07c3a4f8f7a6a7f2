"""Graded neutrality, graded defense and the range operator.

All four operators reduce to popcounts of ``attackers[i] & E``.
"""

from __future__ import annotations

from itertools import combinations

from .core import Aaf, ArgSet, members
from .errors import PreconditionError


def _grade(value: int, name: str) -> None:
    if value < 1:
        raise PreconditionError(f"grade {name} must be >= 1, got {value}")


def attack_counts(F: Aaf, E: ArgSet) -> list[int]:
    """``|a^- & E|`` for every argument, in declaration order."""
    return [(att & E).bit_count() for att in F.attackers]


def neutrality(F: Aaf, l: int, E: ArgSet) -> ArgSet:
    """N_l(E): arguments attacked by fewer than ``l`` members of E."""
    _grade(l, "l")
    out = 0
    for i, att in enumerate(F.attackers):
        if (att & E).bit_count() < l:
            out |= 1 << i
    return out


def defense(F: Aaf, m: int, n: int, E: ArgSet) -> ArgSet:
    """D_n^m(E): no ``m`` distinct attackers of a that are each attacked by
    fewer than ``n`` members of E.  Equal to N_m(N_n(E))."""
    _grade(m, "m")
    _grade(n, "n")
    return neutrality(F, m, neutrality(F, n, E))


def range_plus(F: Aaf, eta: int, E: ArgSet) -> ArgSet:
    """E_eta^+: arguments with at least ``eta`` attackers inside E."""
    _grade(eta, "eta")
    return F.full & ~neutrality(F, eta, E)


def range_of(F: Aaf, eta: int, E: ArgSet) -> ArgSet:
    """E | E_eta^+, the set compared by range-maximality."""
    return E | range_plus(F, eta, E)


def enumerate_attacker_combinations(F: Aaf, a: str, eta: int) -> list[ArgSet]:
    """All size-``eta`` subsets of a^-, in canonical order."""
    _grade(eta, "eta")
    att = F.attackers[F.index[a]]
    out = []
    for combo in combinations(list(members(att)), eta):
        mask = 0
        for i in combo:
            mask |= 1 << i
        out.append(mask)
    return out
