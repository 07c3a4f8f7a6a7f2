from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import frames, params
from gradedaf import Aaf, ExtensionFamily, Params, PreconditionError
from gradedaf.analysis import (anti_sets, canonical_cf, compare_frameworks, galois_check, gamma_at, infers,
                               is_extensible, minimal_outside, order_report, safe_restrict_cf)
from gradedaf.generate import F_3CYC, F_CHAIN, F_SELF, arg_names
from gradedaf.semantics import Catalog, enumerate_family

P1 = Params()


def cf(F, l=1):
    return enumerate_family(F, Params(l, 1, 1, 1), "cf")


def test_extensible_and_infers():
    assert is_extensible(F_3CYC, cf(F_3CYC), F_3CYC.set_of("a"))
    assert not is_extensible(F_3CYC, cf(F_3CYC), F_3CYC.set_of("ab"))
    every = ExtensionFamily.of(F_3CYC, [F_3CYC.full])
    assert is_extensible(F_3CYC, every, F_3CYC.set_of("bc"))
    assert infers(F_CHAIN, enumerate_family(F_CHAIN, P1, "co"), 0, "a")
    co3 = enumerate_family(F_3CYC, P1, "co")
    assert not infers(F_3CYC, co3, 0, "a")
    assert infers(F_3CYC, co3, F_3CYC.set_of("a"), "b")


def test_anti_sets_examples():
    assert sorted(map(sorted, anti_sets(F_3CYC, cf(F_3CYC)).named())) == [["a", "b"], ["a", "c"], ["b", "c"]]
    assert anti_sets(F_SELF, cf(F_SELF)).named() == [["a"]]
    assert anti_sets(F_3CYC, ExtensionFamily.of(F_3CYC, [F_3CYC.full])).named() == []


def test_gamma_examples():
    g = gamma_at(F_3CYC, cf(F_3CYC), "a")
    assert sorted(F_3CYC.names(x) for x in g.gamma) == [("a", "b"), ("a", "c")]
    assert g.class_count == 2
    g = gamma_at(F_SELF, cf(F_SELF), "a")
    assert g.class_count == 1
    F = Aaf.build("abc", [("a", "b")])
    assert gamma_at(F, cf(F), "c").gamma == ()


def test_compare_examples():
    same = compare_frameworks(F_CHAIN, Aaf.build("ab", [("a", "b")]), "cf", P1)
    assert same.anti_equal and same.approx_equal and same.max_equal and same.inference_equal
    free = compare_frameworks(F_CHAIN, Aaf.build("ab"), "cf", Params(2, 1, 1, 1))
    assert free.anti_equal and free.approx_equal and free.max_equal and free.inference_equal
    with pytest.raises(PreconditionError):
        compare_frameworks(F_CHAIN, F_SELF, "cf", P1)


def test_safe_restrict_examples():
    assert safe_restrict_cf(F_3CYC, 1) == F_3CYC
    assert safe_restrict_cf(F_CHAIN, 2).attacks == frozenset()
    assert safe_restrict_cf(F_SELF, 1) == F_SELF


def test_canonical_examples():
    assert canonical_cf(F_SELF, 1).attacks == {("a", "a")}
    assert canonical_cf(F_CHAIN, 2).attacks == frozenset()
    G = canonical_cf(F_3CYC, 1)
    assert len(G.attacks) == 3
    assert cf(G).named() == [[], ["a"], ["b"], ["c"]]


def test_order_examples():
    rep = order_report(cf(F_3CYC))
    assert rep["down_closed"] and not rep["union_closed"] and rep["directed_union_closed"] and rep["lindenbaum"]
    assert rep.witnesses["union_closed"] == [["a"], ["b"]]
    rep = order_report(enumerate_family(F_3CYC, Params(1, 2, 2, 1), "def"))
    assert rep["union_closed"] and rep["has_greatest"]
    rep = order_report(ExtensionFamily.of(F_3CYC, []))
    assert not rep["has_least"] and not rep["has_greatest"]
    assert all(v is True for k, v in rep.flags.items() if k not in ("has_least", "has_greatest"))


def test_galois_examples():
    assert galois_check(F_CHAIN, P1)
    assert galois_check(F_3CYC, P1)
    with pytest.raises(PreconditionError):
        galois_check(F_3CYC, Params(3, 2, 2, 1))


@settings(max_examples=60, deadline=None)
@given(frames(max_size=5), params, st.sampled_from(["cf", "ad", "co", "stb", "pr", "def"]))
def test_anti_sets_match_oracle(F, p, tag):
    fam = Catalog(F, p).family(tag)
    named = [frozenset(F.names(E)) for E in fam]
    assert oracles.as_names(F, anti_sets(F, fam)) == oracles.minimal_outside(F.arguments, named)
    assert set(minimal_outside(F.size, fam.sets)) == set(anti_sets(F, fam).sets)


@settings(max_examples=40, deadline=None)
@given(frames(max_size=4), params)
def test_compactness(F, p):
    fam = Catalog(F, p).family("ad")
    for X in range(F.full + 1):
        subs_ok = all(is_extensible(F, fam, Y) for Y in range(X + 1) if Y & ~X == 0)
        assert is_extensible(F, fam, X) == subs_ok


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.data(), st.integers(1, 2), st.sampled_from(["cf", "ad", "co"]))
def test_anti_equivalences(k, data, l, tag):
    names = arg_names(k)
    pairs = [(x, y) for x in names for y in names]
    F1 = Aaf.build(names, data.draw(st.lists(st.sampled_from(pairs), unique=True)))
    F2 = Aaf.build(names, data.draw(st.lists(st.sampled_from(pairs), unique=True)))
    assert compare_frameworks(F1, F2, tag, Params(l, 1, l, 1)).consistent


@settings(max_examples=60, deadline=None)
@given(frames(max_size=5), st.integers(1, 3))
def test_na_cf_anti_cf_agree(F, l):
    G = safe_restrict_cf(F, l)
    p = Params(l, 1, 1, 1)
    assert Catalog(F, p).sets("cf") == Catalog(G, p).sets("cf")
    assert Catalog(F, p).sets("na") == Catalog(G, p).sets("na")
    assert Catalog(canonical_cf(F, l), p).sets("cf") == Catalog(F, p).sets("cf")


def test_inference_cocompact_small():
    fam = enumerate_family(F_3CYC, P1, "cf")
    for X in range(F_3CYC.full + 1):
        for a in F_3CYC.arguments:
            subs = [Y for k in range(X.bit_count() + 1) for Y in _subsets_of(X, k)]
            assert infers(F_3CYC, fam, X, a) == any(infers(F_3CYC, fam, Y, a) for Y in subs)


def _subsets_of(X, k):
    bits = [1 << i for i in range(X.bit_length()) if X >> i & 1]
    for c in combinations(bits, k):
        yield sum(c)
