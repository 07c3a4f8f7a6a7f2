"""Seeded random frameworks and the small named fixtures used in examples."""

from __future__ import annotations

import random
from itertools import product
from string import ascii_lowercase
from typing import Iterator

from .core import Aaf


def arg_names(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple(ascii_lowercase[:k])
    return tuple(f"a{i}" for i in range(k))


def random_aaf(rng: random.Random, size: int, density: float | None = None,
               self_attacks: bool = True) -> Aaf:
    """Each ordered pair becomes an attack independently with probability
    ``density`` (drawn uniformly from [0.1, 0.6] when omitted)."""
    p = rng.uniform(0.1, 0.6) if density is None else density
    names = arg_names(size)
    attacks = [(x, y) for x, y in product(names, repeat=2)
               if (self_attacks or x != y) and rng.random() < p]
    return Aaf.build(names, attacks)


def random_acyclic_aaf(rng: random.Random, size: int, density: float | None = None) -> Aaf:
    """Attacks only run from a later to an earlier position of a random
    permutation, so the graph has no cycles."""
    p = rng.uniform(0.1, 0.7) if density is None else density
    names = arg_names(size)
    order = list(names)
    rng.shuffle(order)
    attacks = [(order[j], order[i]) for i in range(size) for j in range(i + 1, size) if rng.random() < p]
    return Aaf.build(names, attacks)


def all_frames(size: int) -> Iterator[Aaf]:
    """Every attack relation over ``size`` arguments (2^(size^2) frames)."""
    names = arg_names(size)
    pairs = list(product(names, repeat=2))
    for bits in range(1 << len(pairs)):
        yield Aaf.build(names, [pr for i, pr in enumerate(pairs) if bits >> i & 1])


F_CHAIN = Aaf.build("ab", [("a", "b")])
F_3CYC = Aaf.build("abc", [("a", "b"), ("b", "c"), ("c", "a")])
F_SELF = Aaf.build("a", [("a", "a")])
# a, b, c attack each other and all three attack d
F_K3D = Aaf.build("abcd", [("a", "b"), ("b", "a"), ("b", "c"), ("c", "b"), ("a", "c"), ("c", "a"),
                           ("a", "d"), ("b", "d"), ("c", "d")])
# acyclic on {a, b} although a reaches itself through c
F_WF = Aaf.build("abc", [("b", "a"), ("a", "c"), ("c", "b")])

FIXTURES = {"F_CHAIN": F_CHAIN, "F_3CYC": F_3CYC, "F_SELF": F_SELF, "F_K3D": F_K3D, "F_WF": F_WF}
