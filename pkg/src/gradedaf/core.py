"""Finite argumentation frameworks, argument sets and extension families.

Argument sets are plain ``int`` bitmasks indexed by the declaration order of
the owning framework: bit ``i`` is set iff ``F.arguments[i]`` is a member.
Every operation in the package works on these masks; names only appear at
the input/output boundary.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ParseError, PreconditionError

ArgSet = int

_NAME = re.compile(r"[A-Za-z0-9_]+\Z")


def members(mask: ArgSet) -> Iterator[int]:
    """Yield the bit indices of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: ArgSet) -> int:
    return mask.bit_count()


def is_subset(x: ArgSet, y: ArgSet) -> bool:
    return x & ~y == 0


def set_key(mask: ArgSet) -> tuple[int, tuple[int, ...]]:
    """Canonical sort key: cardinality, then the ascending index tuple."""
    return (mask.bit_count(), tuple(members(mask)))


@dataclass(frozen=True)
class Params:
    """The four grades. ``l`` bounds conflict, ``m``/``n`` shape defense,
    ``eta`` is the range grade."""

    l: int = 1
    m: int = 1
    n: int = 1
    eta: int = 1

    def __post_init__(self):
        for name in ("l", "m", "n", "eta"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise PreconditionError(f"grade {name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class Aaf:
    """A finite framework ``<A, ->``.

    ``arguments`` fixes the bit order; ``attacks`` is a set of name pairs.
    Self-attacks are allowed.
    """

    arguments: tuple[str, ...]
    attacks: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.arguments:
            raise PreconditionError("a framework needs at least one argument")
        seen = set()
        for a in self.arguments:
            if not isinstance(a, str) or not _NAME.match(a):
                raise PreconditionError(f"invalid argument name {a!r}")
            if a in seen:
                raise PreconditionError(f"duplicate argument {a!r}")
            seen.add(a)
        for x, y in self.attacks:
            for end in (x, y):
                if end not in seen:
                    raise PreconditionError(f"attack endpoint {end!r} is not a declared argument")

    @classmethod
    def build(cls, arguments: Iterable[str], attacks: Iterable[Sequence[str]] = ()) -> "Aaf":
        return cls(tuple(arguments), frozenset((x, y) for x, y in attacks))

    @cached_property
    def index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.arguments)}

    @property
    def size(self) -> int:
        return len(self.arguments)

    @cached_property
    def full(self) -> ArgSet:
        return (1 << len(self.arguments)) - 1

    @cached_property
    def attackers(self) -> tuple[ArgSet, ...]:
        """``attackers[i]`` is the mask of a^- for the i-th argument."""
        masks = [0] * len(self.arguments)
        for x, y in self.attacks:
            masks[self.index[y]] |= 1 << self.index[x]
        return tuple(masks)

    @cached_property
    def attacked(self) -> tuple[ArgSet, ...]:
        """``attacked[i]`` is the mask of a^+ for the i-th argument."""
        masks = [0] * len(self.arguments)
        for x, y in self.attacks:
            masks[self.index[x]] |= 1 << self.index[y]
        return tuple(masks)

    def edge_pairs(self) -> list[tuple[int, int]]:
        """Attacks as index pairs, sorted."""
        return sorted((self.index[x], self.index[y]) for x, y in self.attacks)

    def set_of(self, names: Iterable[str]) -> ArgSet:
        mask = 0
        for a in names:
            try:
                mask |= 1 << self.index[a]
            except KeyError:
                raise PreconditionError(f"unknown argument {a!r}") from None
        return mask

    def names(self, mask: ArgSet) -> tuple[str, ...]:
        if mask & ~self.full:
            raise PreconditionError("set has members outside the framework")
        return tuple(self.arguments[i] for i in members(mask))

    def with_attacks(self, attacks: Iterable[Sequence[str]]) -> "Aaf":
        return Aaf.build(self.arguments, attacks)

    def __repr__(self) -> str:
        edges = ", ".join(f"{x}->{y}" for x, y in sorted(self.attacks, key=lambda e: (self.index[e[0]], self.index[e[1]])))
        return f"Aaf([{', '.join(self.arguments)}]; {edges})"


def canonical_sets(sets: Iterable[ArgSet]) -> tuple[ArgSet, ...]:
    return tuple(sorted(set(sets), key=set_key))


@dataclass(frozen=True)
class ExtensionFamily:
    """A duplicate-free, canonically ordered collection of argument sets."""

    owner: Aaf
    sets: tuple[ArgSet, ...]

    @classmethod
    def of(cls, owner: Aaf, sets: Iterable[ArgSet]) -> "ExtensionFamily":
        return cls(owner, canonical_sets(sets))

    def __iter__(self) -> Iterator[ArgSet]:
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __contains__(self, mask: object) -> bool:
        return mask in self._members

    def __bool__(self) -> bool:
        return bool(self.sets)

    @cached_property
    def _members(self) -> frozenset[ArgSet]:
        return frozenset(self.sets)

    def as_set(self) -> frozenset[ArgSet]:
        return self._members

    def named(self) -> list[list[str]]:
        return [list(self.owner.names(s)) for s in self.sets]

    def intersection(self) -> ArgSet:
        """Intersection of all members; the empty family gives the full set."""
        out = self.owner.full
        for s in self.sets:
            out &= s
        return out

    def union(self) -> ArgSet:
        out = 0
        for s in self.sets:
            out |= s
        return out


def canonicalize(family: ExtensionFamily) -> ExtensionFamily:
    """Drop duplicates and sort by (cardinality, index tuple). Idempotent."""
    return ExtensionFamily.of(family.owner, family.sets)


# ---------------------------------------------------------------- APX / TGF

_APX_STMT = re.compile(r"\s*(arg|att)\s*\(\s*([^()]*?)\s*\)\s*\.")


def parse_apx(text: str) -> Aaf:
    """Parse ``arg(X).`` / ``att(X,Y).`` statements; ``%`` starts a comment."""
    args: list[str] = []
    known: set[str] = set()
    attacks: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0]
        pos = 0
        while pos < len(line):
            if not line[pos:].strip():
                break
            m = _APX_STMT.match(line, pos)
            if not m:
                raise ParseError(f"malformed statement {line[pos:].strip()!r}", lineno)
            kind, body = m.group(1), m.group(2)
            parts = [p.strip() for p in body.split(",")]
            if any(not _NAME.match(p) for p in parts):
                raise ParseError(f"bad argument token in {m.group(0).strip()!r}", lineno)
            if kind == "arg":
                if len(parts) != 1:
                    raise ParseError("arg/1 takes exactly one argument", lineno)
                if parts[0] in known:
                    raise ParseError(f"duplicate argument {parts[0]!r}", lineno)
                known.add(parts[0])
                args.append(parts[0])
            else:
                if len(parts) != 2:
                    raise ParseError("att/2 takes exactly two arguments", lineno)
                for p in parts:
                    if p not in known:
                        raise ParseError(f"argument {p!r} used before declaration", lineno)
                attacks.append((parts[0], parts[1]))
            pos = m.end()
    if not args:
        raise ParseError("no arguments declared")
    return Aaf.build(args, attacks)


def emit_apx(F: Aaf) -> str:
    lines = [f"arg({a})." for a in F.arguments]
    lines += [f"att({F.arguments[i]},{F.arguments[j]})." for i, j in F.edge_pairs()]
    return "\n".join(lines) + "\n"


def parse_tgf(text: str) -> Aaf:
    """Parse trivial graph format: node lines, a ``#`` line, edge lines."""
    lines = text.splitlines()
    sep = next((i for i, l in enumerate(lines) if l.strip() == "#"), None)
    if sep is None:
        raise ParseError("missing '#' separator line")
    args: list[str] = []
    for lineno, raw in enumerate(lines[:sep], start=1):
        tokens = raw.split()
        if not tokens:
            continue
        name = tokens[0]
        if not _NAME.match(name):
            raise ParseError(f"bad node name {name!r}", lineno)
        if name in args:
            raise ParseError(f"duplicate node {name!r}", lineno)
        args.append(name)
    known = set(args)
    attacks = []
    for lineno, raw in enumerate(lines[sep + 1:], start=sep + 2):
        tokens = raw.split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise ParseError(f"edge line needs two endpoints: {raw.strip()!r}", lineno)
        for t in tokens:
            if t not in known:
                raise ParseError(f"dangling endpoint {t!r}", lineno)
        attacks.append((tokens[0], tokens[1]))
    if not args:
        raise ParseError("no nodes declared")
    return Aaf.build(args, attacks)


def emit_tgf(F: Aaf) -> str:
    lines = list(F.arguments) + ["#"]
    lines += [f"{F.arguments[i]} {F.arguments[j]}" for i, j in F.edge_pairs()]
    return "\n".join(lines) + "\n"


def emit_dot(F: Aaf, highlight: ArgSet | None = None) -> str:
    """Deterministic DOT digraph; highlighted arguments are filled."""
    hl = 0 if highlight is None else highlight
    if hl & ~F.full:
        raise PreconditionError("highlight set is not a subset of the framework")
    out = ["digraph aaf {"]
    for a in sorted(F.arguments):
        if hl >> F.index[a] & 1:
            out.append(f'  "{a}" [style=filled, fillcolor=lightgrey];')
        else:
            out.append(f'  "{a}";')
    for x, y in sorted(F.attacks):
        out.append(f'  "{x}" -> "{y}";')
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- JSON

def to_json(F: Aaf, families: Mapping[str, ExtensionFamily] | None = None) -> dict:
    doc = {
        "arguments": list(F.arguments),
        "attacks": [[F.arguments[i], F.arguments[j]] for i, j in F.edge_pairs()],
        "families": {},
    }
    for name, fam in (families or {}).items():
        doc["families"][name] = canonicalize(fam).named()
    return doc


def from_json(doc: Mapping | str) -> Aaf:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    try:
        args = doc["arguments"]
        attacks = doc.get("attacks", [])
        return Aaf.build(args, [tuple(e) for e in attacks])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"framework JSON does not match the schema: {exc}") from None
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def family_from_names(F: Aaf, sets: Iterable[Iterable[str]]) -> ExtensionFamily:
    return ExtensionFamily.of(F, (F.set_of(s) for s in sets))
