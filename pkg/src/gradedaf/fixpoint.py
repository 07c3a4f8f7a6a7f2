"""Iteration of the graded defense function and related graph predicates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Aaf, ArgSet, members
from .errors import DefenseCycle, PreconditionError
from .kernel import defense


@dataclass(frozen=True)
class IterationTrace:
    """D^0(E), D^1(E), ... up to and including the first repeated value."""

    start: ArgSet
    steps: tuple[ArgSet, ...]
    stabilized_at: int

    @property
    def final(self) -> ArgSet:
        return self.steps[-1]


def iterate_defense(F: Aaf, m: int, n: int, E: ArgSet) -> IterationTrace:
    """Iterate D_n^m from E until two consecutive values coincide.

    From a post-fixpoint the sequence is increasing and stops within |A|+1
    steps.  From other starts the sequence may enter a longer cycle, which
    raises :class:`DefenseCycle`.
    """
    steps = [E]
    seen = {E: 0}
    bound = 2 * (1 << F.size)
    current = E
    while True:
        nxt = defense(F, m, n, current)
        steps.append(nxt)
        if nxt == current:
            return IterationTrace(E, tuple(steps), len(steps) - 2)
        if nxt in seen:
            raise DefenseCycle(
                f"defense iteration from {F.names(E)} cycles with period {len(steps) - 1 - seen[nxt]}"
            )
        seen[nxt] = len(steps) - 1
        if len(steps) > bound:
            raise DefenseCycle("iteration exceeded the safety bound")
        current = nxt


def is_self_defended(F: Aaf, m: int, n: int, E: ArgSet) -> bool:
    return E & ~defense(F, m, n, E) == 0


def lfp_from(F: Aaf, m: int, n: int, E: ArgSet) -> ArgSet:
    """Least fixpoint of D_n^m above a self-defended E."""
    if not is_self_defended(F, m, n, E):
        raise PreconditionError(f"{set(F.names(E)) or '{}'} is not self-defended")
    return iterate_defense(F, m, n, E).final


def gfp(F: Aaf, m: int, n: int) -> ArgSet:
    """Greatest fixpoint of D_n^m, by downward iteration from A."""
    current = F.full
    while True:
        nxt = defense(F, m, n, current)
        if nxt == current:
            return current
        current = nxt


def _reach_plus(F: Aaf) -> list[ArgSet]:
    """``reach[i]``: arguments reachable from i by one or more attacks."""
    reach = list(F.attacked)
    changed = True
    while changed:
        changed = False
        for i in range(F.size):
            acc = reach[i]
            for j in members(reach[i]):
                acc |= reach[j]
            if acc != reach[i]:
                reach[i] = acc
                changed = True
    return reach


def wf_on(F: Aaf, X: ArgSet) -> bool:
    """True iff the attack relation restricted to X has no cycle."""
    remaining = X
    # repeatedly strip arguments with no attacker left inside the remainder
    while remaining:
        sources = 0
        for i in members(remaining):
            if F.attackers[i] & remaining == 0:
                sources |= 1 << i
        if not sources:
            return False
        remaining &= ~sources
    return True


def wf_plus_on(F: Aaf, X: ArgSet) -> bool:
    """True iff no argument of X reaches itself through the whole frame."""
    reach = _reach_plus(F)
    return all(not (reach[i] >> i & 1) for i in members(X))


@dataclass(frozen=True)
class ReachabilityProfile:
    sigma: ArgSet
    dist: dict[str, int | None]
    covers_all: bool
    strictly_layered: bool

    @property
    def premise(self) -> bool:
        """Both hypotheses of the layered-reachability collapse."""
        return self.covers_all and self.strictly_layered


def reachability_profile(F: Aaf, E: ArgSet) -> ReachabilityProfile:
    """Sigma_E, shortest attack distances from E (0 on E), and whether
    d(E,a) < d(E,b) holds for every attack a -> b."""
    reach = _reach_plus(F)
    sigma = 0
    for i in members(E):
        sigma |= reach[i]
    dist: list[int | None] = [None] * F.size
    queue = deque()
    for i in members(E):
        dist[i] = 0
        queue.append(i)
    while queue:
        i = queue.popleft()
        for j in members(F.attacked[i]):
            if dist[j] is None:
                dist[j] = dist[i] + 1
                queue.append(j)
    layered = True
    for i, j in F.edge_pairs():
        if dist[i] is None or dist[j] is None or not dist[i] < dist[j]:
            layered = False
            break
    return ReachabilityProfile(
        sigma=sigma,
        dist={a: dist[i] for i, a in enumerate(F.arguments)},
        covers_all=sigma == F.full,
        strictly_layered=layered,
    )
