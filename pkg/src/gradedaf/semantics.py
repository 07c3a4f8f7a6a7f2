"""Enumeration of graded extension semantics and their combinators.

Base semantics are produced by one vectorized sweep over the subset lattice;
derived ones (maximal, range-maximal, interval, parameterized) only ever
filter families that were already enumerated.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import Aaf, ExtensionFamily, Params, canonical_sets
from .errors import CapExceeded, ParseError, PreconditionError
from .fixpoint import lfp_from
from .kernel import range_of

DEFAULT_CAP = 22
_HARD_LIMIT = 30


# ---------------------------------------------------------------- spec terms

@dataclass(frozen=True)
class Base:
    tag: str

    def __str__(self):
        return _TEXT_OF.get(self.tag, self.tag)


@dataclass(frozen=True)
class Max:
    inner: "Spec"

    def __str__(self):
        return f"max({self.inner})"


@dataclass(frozen=True)
class RangeMax:
    inner: "Spec"

    def __str__(self):
        return f"rr({self.inner})"


@dataclass(frozen=True)
class Interval:
    left: "Spec"
    mid: "Spec"
    right: "Spec"

    def __str__(self):
        return f"interval({self.left},{self.mid},{self.right})"


@dataclass(frozen=True)
class Param:
    mid: "Spec"
    right: "Spec"

    def __str__(self):
        return f"param({self.mid},{self.right})"


Spec = Union[Base, Max, RangeMax, Interval, Param]

BASE_TAGS = ("cf", "def", "ad", "co", "stb", "gr", "grDung", "grDunne", "na", "pr", "prDung")

# named shorthands for the derived semantics
ALIASES: dict[str, Spec] = {
    "na": Max(Base("cf")),
    "pr": Max(Base("co")),
    "prDung": Max(Base("ad")),
    "stg": RangeMax(Base("cf")),
    "ss": RangeMax(Base("co")),
    "rra": RangeMax(Base("ad")),
    "rrs": RangeMax(Base("stb")),
    "id": Max(Param(Base("ad"), Max(Base("co")))),
    "eg": Max(Param(Base("ad"), RangeMax(Base("co")))),
}

_TEXT_NAMES = {
    "cf": "cf", "def": "def", "ad": "ad", "co": "co", "stb": "stb", "gr": "gr",
    "gr-dung": "grDung", "gr-dunne": "grDunne", "na": "na", "pr": "pr",
    "pr-dung": "prDung", "stg": "stg", "ss": "ss", "rra": "rra", "rrs": "rrs",
    "id": "id", "eg": "eg",
}
# camel-case spellings are accepted too
_TEXT_NAMES.update({v: v for v in list(_TEXT_NAMES.values())})
_TEXT_OF = {"grDung": "gr-dung", "grDunne": "gr-dunne", "prDung": "pr-dung"}

_TOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z\-]*)|([(),]))")


def parse_spec(text: str) -> Spec:
    """Parse the textual grammar, e.g. ``max(param(ad,pr))``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character in spec at offset {pos}: {text[pos:]!r}")
        tokens.append(m.group(1) or m.group(2))
        pos = m.end()
    if not tokens:
        raise ParseError("empty semantics spec")
    spec, rest = _parse_term(tokens, 0)
    if rest != len(tokens):
        raise ParseError(f"trailing tokens in spec: {' '.join(tokens[rest:])}")
    return spec


_ARITY = {"max": 1, "rr": 1, "interval": 3, "param": 2}


def _parse_term(tokens: list[str], i: int) -> tuple[Spec, int]:
    if i >= len(tokens):
        raise ParseError("spec ended unexpectedly")
    head = tokens[i]
    if head in _ARITY:
        if i + 1 >= len(tokens) or tokens[i + 1] != "(":
            raise ParseError(f"{head} expects '('")
        args = []
        j = i + 2
        for k in range(_ARITY[head]):
            sub, j = _parse_term(tokens, j)
            args.append(sub)
            want = "," if k < _ARITY[head] - 1 else ")"
            if j >= len(tokens) or tokens[j] != want:
                raise ParseError(f"{head} expects {_ARITY[head]} argument(s); missing {want!r}")
            j += 1
        ctor = {"max": Max, "rr": RangeMax, "interval": Interval, "param": Param}[head]
        return ctor(*args), j
    tag = _TEXT_NAMES.get(head)
    if tag is None:
        raise ParseError(f"unknown semantics {head!r}")
    if tag in BASE_TAGS:
        return Base(tag), i + 1
    return ALIASES[tag], i + 1


def as_spec(spec: "Spec | str") -> Spec:
    return parse_spec(spec) if isinstance(spec, str) else spec


# ---------------------------------------------------------------- subset sweep

def _neutral(att: tuple[int, ...], grade: int, X: np.ndarray) -> np.ndarray:
    out = np.zeros_like(X)
    for i, a in enumerate(att):
        hit = np.bitwise_count(X & np.uint32(a)) < grade
        out |= hit.astype(np.uint32) << np.uint32(i)
    return out


def _scan_chunk(att: tuple[int, ...], p: Params, lo: int, hi: int) -> dict[str, list[int]]:
    E = np.arange(lo, hi, dtype=np.uint32)
    nl = _neutral(att, p.l, E)
    nn = _neutral(att, p.n, E)
    nm = _neutral(att, p.m, E)
    dd = _neutral(att, p.m, nn)
    cf = (E & ~nl) == 0
    dfd = (E & ~dd) == 0
    co = cf & (dd == E)
    stb = cf & (nn == E) & (nm == E)
    return {
        "cf": E[cf].tolist(),
        "def": E[dfd].tolist(),
        "ad": E[cf & dfd].tolist(),
        "co": E[co].tolist(),
        "stb": E[stb].tolist(),
    }


def _scan(F: Aaf, p: Params, jobs: int) -> dict[str, list[int]]:
    total = 1 << F.size
    att = F.attackers
    if jobs <= 1 or total < 1 << 14:
        return _scan_chunk(att, p, 0, total)
    step = -(-total // jobs)
    bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    out: dict[str, list[int]] = {k: [] for k in ("cf", "def", "ad", "co", "stb")}
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_scan_chunk, [att] * len(bounds), [p] * len(bounds),
                         [b[0] for b in bounds], [b[1] for b in bounds])
        for part in parts:
            for k, v in part.items():
                out[k].extend(v)
    return out


# ---------------------------------------------------------------- combinators

def _maximal(sets) -> list[int]:
    kept: list[int] = []
    for s in sorted(set(sets), key=lambda x: -x.bit_count()):
        if not any(s & ~k == 0 for k in kept):
            kept.append(s)
    return kept


def _range_maximal(F: Aaf, eta: int, sets) -> list[int]:
    ranges = {s: range_of(F, eta, s) for s in set(sets)}
    top = _maximal(ranges.values())
    top_set = set(top)
    return [s for s, r in ranges.items() if r in top_set]


def maximal_of(family: ExtensionFamily) -> ExtensionFamily:
    """The subset-maximal members of a family."""
    return ExtensionFamily.of(family.owner, _maximal(family.sets))


def range_maximal(F: Aaf, eta: int, family: ExtensionFamily) -> ExtensionFamily:
    """Members whose range E | E_eta^+ is not strictly inside another
    member's range.  Members with equal ranges are all kept."""
    return ExtensionFamily.of(F, _range_maximal(F, eta, family.sets))


def _meet(F: Aaf, sets) -> int:
    out = F.full
    for s in sets:
        out &= s
    return out


def interval(F: Aaf, famL: ExtensionFamily, fam: ExtensionFamily, famR: ExtensionFamily) -> ExtensionFamily:
    """Members E of ``fam`` with meet(famL) <= E <= meet(famR); the meet of
    an empty family is the full argument set."""
    lo = _meet(F, famL.sets)
    hi = _meet(F, famR.sets)
    return ExtensionFamily.of(F, [E for E in fam.sets if lo & ~E == 0 and E & ~hi == 0])


class Catalog:
    """Memoizing evaluator of semantics specs for one framework and grade set."""

    def __init__(self, F: Aaf, p: Params, cap: int = DEFAULT_CAP, jobs: int = 1):
        if F.size > min(cap, _HARD_LIMIT):
            raise CapExceeded(f"{F.size} arguments exceed the enumeration cap of {min(cap, _HARD_LIMIT)}")
        self.F = F
        self.p = p
        self.jobs = jobs
        self._base: dict[str, list[int]] | None = None
        self._memo: dict[Spec, tuple[int, ...]] = {}

    def _sweep(self) -> dict[str, list[int]]:
        if self._base is None:
            self._base = _scan(self.F, self.p, self.jobs)
        return self._base

    def sets(self, spec: "Spec | str") -> tuple[int, ...]:
        spec = as_spec(spec)
        hit = self._memo.get(spec)
        if hit is None:
            hit = canonical_sets(self._compute(spec))
            self._memo[spec] = hit
        return hit

    def family(self, spec: "Spec | str") -> ExtensionFamily:
        return ExtensionFamily(self.F, self.sets(spec))

    def _compute(self, spec: Spec):
        F, p = self.F, self.p
        if isinstance(spec, Base):
            tag = spec.tag
            if tag in ("cf", "def", "ad", "co", "stb"):
                return self._sweep()[tag]
            if tag in ALIASES:
                return self.sets(ALIASES[tag])
            if tag == "gr":
                co = self.sets(Base("co"))
                if not co:
                    return []
                low = co[0]  # canonical order puts a least member first
                return [low] if all(low & ~E == 0 for E in co) else []
            if tag == "grDung":
                return [lfp_from(F, p.m, p.n, 0)]
            if tag == "grDunne":
                return [_meet(F, self.sets(Base("co")))]
            raise PreconditionError(f"unknown base semantics {tag!r}")
        if isinstance(spec, Max):
            return _maximal(self.sets(spec.inner))
        if isinstance(spec, RangeMax):
            return _range_maximal(F, p.eta, self.sets(spec.inner))
        if isinstance(spec, Interval):
            lo = _meet(F, self.sets(spec.left))
            hi = _meet(F, self.sets(spec.right))
            return [E for E in self.sets(spec.mid) if lo & ~E == 0 and E & ~hi == 0]
        if isinstance(spec, Param):
            hi = _meet(F, self.sets(spec.right))
            return [E for E in self.sets(spec.mid) if E & ~hi == 0]
        raise PreconditionError(f"not a semantics spec: {spec!r}")


def enumerate_family(F: Aaf, p: Params, spec: "Spec | str", cap: int = DEFAULT_CAP, jobs: int = 1) -> ExtensionFamily:
    """Exhaustive, canonically ordered extension family of ``spec``."""
    return Catalog(F, p, cap=cap, jobs=jobs).family(spec)


def ideal(F: Aaf, p: Params) -> ExtensionFamily:
    """Maximal admissible sets inside every preferred extension."""
    return enumerate_family(F, p, "id")


def eager(F: Aaf, p: Params) -> ExtensionFamily:
    """Maximal admissible sets inside every semi-stable extension."""
    return enumerate_family(F, p, "eg")
