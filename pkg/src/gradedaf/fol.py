"""Finite model checking for first-order formulas over {Att, P, =}.

A model is a framework together with a set interpreting the unary
predicate P.  Formulas are small immutable trees; evaluation compiles a
tree once into nested closures over a slot array and then runs them on
any number of models.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence, Union

from .core import Aaf, ArgSet, ExtensionFamily, Params, canonical_sets
from .errors import CapExceeded, ParseError, PreconditionError

# ---------------------------------------------------------------- syntax


@dataclass(frozen=True)
class Pred:
    var: str


@dataclass(frozen=True)
class Att:
    src: str
    dst: str


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Pred, Att, Eq, Not, And, Or, Imp, Forall, Exists]


def conj(*parts: Formula) -> Formula:
    """Conjunction that flattens nested Ands and drops the wrapper for one part."""
    flat: list[Formula] = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, And) else (p,))
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*parts: Formula) -> Formula:
    flat: list[Formula] = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, Or) else (p,))
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def forall(variables: Sequence[str], body: Formula) -> Formula:
    for v in reversed(variables):
        body = Forall(v, body)
    return body


def exists(variables: Sequence[str], body: Formula) -> Formula:
    for v in reversed(variables):
        body = Exists(v, body)
    return body


def free_vars(phi: Formula) -> frozenset[str]:
    if isinstance(phi, Pred):
        return frozenset((phi.var,))
    if isinstance(phi, Att):
        return frozenset((phi.src, phi.dst))
    if isinstance(phi, Eq):
        return frozenset((phi.left, phi.right))
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or)):
        out: frozenset[str] = frozenset()
        for p in phi.parts:
            out |= free_vars(p)
        return out
    if isinstance(phi, Imp):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (Forall, Exists)):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(f"not a formula: {phi!r}")


def _all_vars(phi: Formula, acc: dict[str, int]) -> None:
    for v in _vars_here(phi):
        acc.setdefault(v, len(acc))
    for child in _children(phi):
        _all_vars(child, acc)


def _vars_here(phi: Formula) -> tuple[str, ...]:
    if isinstance(phi, Pred):
        return (phi.var,)
    if isinstance(phi, Att):
        return (phi.src, phi.dst)
    if isinstance(phi, Eq):
        return (phi.left, phi.right)
    if isinstance(phi, (Forall, Exists)):
        return (phi.var,)
    return ()


def _children(phi: Formula) -> tuple[Formula, ...]:
    if isinstance(phi, Not):
        return (phi.body,)
    if isinstance(phi, (And, Or)):
        return phi.parts
    if isinstance(phi, Imp):
        return (phi.left, phi.right)
    if isinstance(phi, (Forall, Exists)):
        return (phi.body,)
    return ()


def to_sexpr(phi: Formula) -> str:
    if isinstance(phi, Pred):
        return f"(P {phi.var})"
    if isinstance(phi, Att):
        return f"(att {phi.src} {phi.dst})"
    if isinstance(phi, Eq):
        return f"(= {phi.left} {phi.right})"
    if isinstance(phi, Not):
        return f"(not {to_sexpr(phi.body)})"
    if isinstance(phi, And):
        return "(and " + " ".join(to_sexpr(p) for p in phi.parts) + ")" if phi.parts else "(and)"
    if isinstance(phi, Or):
        return "(or " + " ".join(to_sexpr(p) for p in phi.parts) + ")" if phi.parts else "(or)"
    if isinstance(phi, Imp):
        return f"(imp {to_sexpr(phi.left)} {to_sexpr(phi.right)})"
    if isinstance(phi, Forall):
        return f"(all {phi.var} {to_sexpr(phi.body)})"
    if isinstance(phi, Exists):
        return f"(ex {phi.var} {to_sexpr(phi.body)})"
    raise TypeError(f"not a formula: {phi!r}")


_SX_TOKEN = re.compile(r"\s*(?:([()])|([^\s()]+))")
_VAR = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def parse_formula(text: str) -> Formula:
    """Read the S-expression syntax, e.g. ``(all x (imp (P x) (ex y (att y x))))``."""
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _SX_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad character in formula at offset {pos}")
        tokens.append(m.group(1) or m.group(2))
        pos = m.end()
    if not tokens:
        raise ParseError("empty formula")
    try:
        phi, i = _read(tokens, 0)
    except IndexError:
        raise ParseError("formula ended unexpectedly") from None
    if i != len(tokens):
        raise ParseError(f"trailing tokens in formula: {' '.join(tokens[i:])}")
    return phi


def _var(tok: str) -> str:
    if tok in "()" or not _VAR.match(tok):
        raise ParseError(f"expected a variable, got {tok!r}")
    return tok


def _read(tokens: list[str], i: int) -> tuple[Formula, int]:
    if i >= len(tokens) or tokens[i] != "(":
        raise ParseError("formula must start with '('")
    if i + 1 >= len(tokens):
        raise ParseError("unterminated formula")
    head = tokens[i + 1]
    j = i + 2

    def close(k: int) -> int:
        if k >= len(tokens) or tokens[k] != ")":
            raise ParseError(f"missing ')' after {head}")
        return k + 1

    if head == "P":
        return Pred(_var(tokens[j])), close(j + 1)
    if head == "att":
        return Att(_var(tokens[j]), _var(tokens[j + 1])), close(j + 2)
    if head == "=":
        return Eq(_var(tokens[j]), _var(tokens[j + 1])), close(j + 2)
    if head in ("all", "ex"):
        v = _var(tokens[j])
        body, k = _read(tokens, j + 1)
        return (Forall if head == "all" else Exists)(v, body), close(k)
    if head in ("not", "imp", "and", "or"):
        parts = []
        while j < len(tokens) and tokens[j] != ")":
            sub, j = _read(tokens, j)
            parts.append(sub)
        j = close(j)
        if head == "not":
            if len(parts) != 1:
                raise ParseError("not takes one argument")
            return Not(parts[0]), j
        if head == "imp":
            if len(parts) != 2:
                raise ParseError("imp takes two arguments")
            return Imp(parts[0], parts[1]), j
        return (And if head == "and" else Or)(tuple(parts)), j
    raise ParseError(f"unknown connective {head!r}")


# ---------------------------------------------------------------- semantics


@dataclass(frozen=True)
class FolModel:
    frame: Aaf
    predicate: ArgSet

    def __post_init__(self):
        if self.predicate & ~self.frame.full:
            raise PreconditionError("predicate is not a subset of the frame")


_Fn = Callable[[int, tuple, list], bool]


def _compile(phi: Formula, slot: Mapping[str, int]) -> _Fn:
    # closures take (P mask, attacked masks, env slots)
    if isinstance(phi, Pred):
        s = slot[phi.var]
        return lambda P, out, env: bool(P >> env[s] & 1)
    if isinstance(phi, Att):
        s, t = slot[phi.src], slot[phi.dst]
        return lambda P, out, env: bool(out[env[s]] >> env[t] & 1)
    if isinstance(phi, Eq):
        s, t = slot[phi.left], slot[phi.right]
        return lambda P, out, env: env[s] == env[t]
    if isinstance(phi, Not):
        f = _compile(phi.body, slot)
        return lambda P, out, env: not f(P, out, env)
    if isinstance(phi, And):
        fs = tuple(_compile(p, slot) for p in phi.parts)

        def every(P, out, env):
            for f in fs:
                if not f(P, out, env):
                    return False
            return True
        return every
    if isinstance(phi, Or):
        fs = tuple(_compile(p, slot) for p in phi.parts)

        def some(P, out, env):
            for f in fs:
                if f(P, out, env):
                    return True
            return False
        return some
    if isinstance(phi, Imp):
        f, g = _compile(phi.left, slot), _compile(phi.right, slot)
        return lambda P, out, env: (not f(P, out, env)) or g(P, out, env)
    if isinstance(phi, (Forall, Exists)):
        s = slot[phi.var]
        body = _compile(phi.body, slot)
        want = isinstance(phi, Exists)

        def quant(P, out, env):
            saved = env[s]
            result = not want
            for b in range(len(out)):
                env[s] = b
                if body(P, out, env) is want:
                    result = want
                    break
            env[s] = saved
            return result
        return quant
    raise TypeError(f"not a formula: {phi!r}")


@lru_cache(maxsize=512)
def _compiled(phi: Formula) -> tuple[_Fn, dict[str, int], frozenset[str]]:
    slot: dict[str, int] = {}
    _all_vars(phi, slot)
    return _compile(phi, slot), slot, free_vars(phi)


def _run(frame: Aaf, predicate: ArgSet, phi: Formula, rho: Mapping[str, str]) -> bool:
    fn, slot, free = _compiled(phi)
    missing = free - set(rho)
    if missing:
        raise PreconditionError(f"unbound free variable(s): {', '.join(sorted(missing))}")
    env = [0] * len(slot)
    for v, a in rho.items():
        if v in slot:
            if a not in frame.index:
                raise PreconditionError(f"{a!r} is not an argument")
            env[slot[v]] = frame.index[a]
    return fn(predicate, frame.attacked, env)


def evaluate(model: FolModel, phi: Formula, rho: Mapping[str, str] | None = None) -> bool:
    """Tarskian satisfaction of ``phi`` in ``model`` under assignment ``rho``."""
    return _run(model.frame, model.predicate, phi, rho or {})


def satisfies_all(model: FolModel, sigma: Iterable[Formula]) -> bool:
    return all(evaluate(model, s) for s in sigma)


# ---------------------------------------------------------------- sentence library


def cf_macro(n: int, attacker_vars: Sequence[str], target: str) -> Formula:
    """Pairwise distinct attacker variables, all attacking ``target``."""
    attacker_vars = tuple(attacker_vars)
    if n < 1 or len(attacker_vars) != n:
        raise PreconditionError("cf_macro needs exactly n >= 1 attacker variables")
    if len(set(attacker_vars)) != n:
        raise PreconditionError("attacker variables must be distinct")
    distinct = [Not(Eq(a, b)) for i, a in enumerate(attacker_vars) for b in attacker_vars[i + 1:]]
    return conj(*distinct, *(Att(a, target) for a in attacker_vars))


def _xs(k: int) -> list[str]:
    return [f"x{i}" for i in range(1, k + 1)]


def _ys(i: int, n: int) -> list[str]:
    return [f"y{i}_{k}" for k in range(1, n + 1)]


def _backed(i: int, n: int) -> Formula:
    """x_i has n distinct attackers in P (with the y-variables free)."""
    ys = _ys(i, n)
    return conj(cf_macro(n, ys, f"x{i}"), *(Pred(y) for y in ys))


def beta1(m: int, n: int) -> Formula:
    """Self-defense, prenex: every P-member beats any m attackers."""
    xs = _xs(m)
    ys = [y for i in range(1, m + 1) for y in _ys(i, n)]
    matrix = disj(Not(Pred("x")), Not(cf_macro(m, xs, "x")),
                  *(_backed(i, n) for i in range(1, m + 1)))
    return forall(["x", *xs], exists(ys, matrix))


def beta2(m: int, n: int) -> Formula:
    """Pre-fixpoint of defense, prenex: defended arguments are in P."""
    xs = _xs(m)
    ys = [y for i in range(1, m + 1) for y in _ys(i, n)]
    unbacked = [disj(Not(cf_macro(n, _ys(i, n), f"x{i}")), *(Not(Pred(y)) for y in _ys(i, n)))
                for i in range(1, m + 1)]
    gamma4 = disj(Pred("x"), conj(cf_macro(m, xs, "x"), *unbacked))
    return Forall("x", exists(xs, forall(ys, gamma4)))


def _p_attacked(l: int) -> Formula:
    xs = _xs(l)
    return conj(*(Pred(v) for v in xs), cf_macro(l, xs, "x"))


def beta3(l: int) -> Formula:
    """l-conflict-freeness, prenex."""
    return forall(["x", *_xs(l)], disj(Not(Pred("x")), Not(_p_attacked(l))))


def beta4(l: int) -> Formula:
    """N_l(P) is inside P, prenex."""
    return Forall("x", exists(_xs(l), disj(_p_attacked(l), Pred("x"))))


def alpha1(m: int, n: int) -> Formula:
    xs = _xs(m)
    inner = conj(cf_macro(m, xs, "x"),
                 *(Not(exists(_ys(i, n), _backed(i, n))) for i in range(1, m + 1)))
    return Forall("x", Imp(Pred("x"), Not(exists(xs, inner))))


def alpha2(m: int, n: int) -> Formula:
    xs = _xs(m)
    gamma3 = conj(cf_macro(m, xs, "x"),
                  *(Not(exists(_ys(i, n), _backed(i, n))) for i in range(1, m + 1)))
    return Forall("x", Imp(Not(exists(xs, gamma3)), Pred("x")))


def alpha3(l: int) -> Formula:
    return Forall("x", Imp(Pred("x"), Not(exists(_xs(l), _p_attacked(l)))))


def alpha4(l: int) -> Formula:
    return Forall("x", Imp(Not(exists(_xs(l), _p_attacked(l))), Pred("x")))


def sentence_library(p: Params) -> dict[str, object]:
    b1, b2 = beta1(p.m, p.n), beta2(p.m, p.n)
    b3 = beta3(p.l)
    return {
        "beta1_mn": b1,
        "beta2_mn": b2,
        "beta3_l": b3,
        "beta4_l": beta4(p.l),
        "Sigma_def": (b1,),
        "Sigma_cf": (b3,),
        "Sigma_ad": (b3, b1),
        "Sigma_co": (b3, b1, b2),
        "Sigma_stb": (beta3(p.n), beta3(p.m), beta4(p.n), beta4(p.m), b3),
    }


def alpha_library(p: Params) -> dict[str, Formula]:
    """Quantifier-nested originals of the four prenex sentences."""
    return {
        "alpha1_mn": alpha1(p.m, p.n),
        "alpha2_mn": alpha2(p.m, p.n),
        "alpha3_l": alpha3(p.l),
        "alpha4_l": alpha4(p.l),
    }


SIGMA_TARGETS = {"def": "Sigma_def", "cf": "Sigma_cf", "ad": "Sigma_ad", "co": "Sigma_co", "stb": "Sigma_stb"}


# ---------------------------------------------------------------- definability


@dataclass(frozen=True)
class Definability:
    ok: bool
    counterexample: ArgSet | None = None
    satisfies: bool | None = None  # whether the counterexample satisfies sigma
    mismatches: tuple[ArgSet, ...] = ()


def models_of(F: Aaf, sigma: Sequence[Formula], cap: int = 16) -> list[ArgSet]:
    """All E (in canonical order) with <A, ->, E> satisfying every sentence."""
    if F.size > cap:
        raise CapExceeded(f"model sweep over 2^{F.size} sets exceeds cap 2^{cap}")
    for s in sigma:
        if free_vars(s):
            raise PreconditionError("definability needs sentences, found free variables")
    return [E for E in canonical_sets(range(1 << F.size))
            if all(_run(F, E, s, {}) for s in sigma)]


def verify_definability(F: Aaf, sigma: Sequence[Formula], family: ExtensionFamily | Iterable[ArgSet],
                        cap: int = 16) -> Definability:
    """Check that the models of ``sigma`` over F are exactly ``family``.

    The sweep runs in canonical order, so the reported counterexample is
    the first mismatching set in that order.
    """
    want = set(family.sets if isinstance(family, ExtensionFamily) else family)
    got = models_of(F, sigma, cap)
    got_set = set(got)
    bad = tuple(canonical_sets(got_set ^ want))
    if not bad:
        return Definability(True)
    return Definability(False, bad[0], bad[0] in got_set, bad)


def _split_exists(phi: Formula) -> Exists:
    if not isinstance(phi, Exists):
        raise PreconditionError("formula must start with an existential quantifier")
    return phi


def nua(model: FolModel, phi: Formula, rho: Mapping[str, str]) -> bool:
    """True iff ``rho`` is non-universal: the existential holds but the
    matching universal does not."""
    ex = _split_exists(phi)
    return evaluate(model, ex, rho) and not evaluate(model, Forall(ex.var, ex.body), rho)


def omega_witnesses(F: Aaf, phi: Formula, rho: Mapping[str, str], cap: int = 16) -> ArgSet:
    """Union over all E of the witnesses b for the existential, taken only
    from models where ``rho`` is non-universal."""
    ex = _split_exists(phi)
    if F.size > cap:
        raise CapExceeded(f"model sweep over 2^{F.size} sets exceeds cap 2^{cap}")
    rho = {k: v for k, v in rho.items() if k != ex.var}
    out = 0
    for E in range(1 << F.size):
        model = FolModel(F, E)
        if not nua(model, ex, rho):
            continue
        for b, name in enumerate(F.arguments):
            if not out >> b & 1 and evaluate(model, ex.body, {**rho, ex.var: name}):
                out |= 1 << b
    return out


def omega_finitary_at(F: Aaf, phi: Formula, rho: Mapping[str, str], cap: int = 16) -> int:
    return omega_witnesses(F, phi, rho, cap).bit_count()


def nua_example() -> Formula:
    """An existential whose matrix is a tautology, so no assignment is
    ever non-universal."""
    return Exists("x2", disj(Pred("x1"), Not(Pred("x1")), Att("x2", "x1")))


def assignments(F: Aaf, variables: Sequence[str]) -> Iterable[dict[str, str]]:
    """Every assignment of the given variables to arguments."""
    for combo in product(F.arguments, repeat=len(variables)):
        yield dict(zip(variables, combo))


__all__ = [
    "Pred", "Att", "Eq", "Not", "And", "Or", "Imp", "Forall", "Exists", "Formula",
    "FolModel", "evaluate", "satisfies_all", "free_vars", "parse_formula", "to_sexpr",
    "cf_macro", "beta1", "beta2", "beta3", "beta4", "alpha1", "alpha2", "alpha3", "alpha4",
    "sentence_library", "alpha_library", "verify_definability", "models_of", "Definability",
    "SIGMA_TARGETS", "nua", "omega_finitary_at", "omega_witnesses", "nua_example", "assignments",
]
