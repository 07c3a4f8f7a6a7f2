import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import frames
from gradedaf import CapExceeded, InvariantViolation, Params
from gradedaf.fixpoint import wf_on
from gradedaf.representation import (CandidateOmega, ChoiceFunction, check_conditions, construct_f_omega,
                                     find_choice, gamma_omega, representable, rho)
from gradedaf.semantics import Catalog, enumerate_family
from gradedaf.suites import REFERENCE_OMEGA

SMALL = CandidateOmega.from_names("ab", [[], ["a"], ["b"]])

# the 18 two-conflict-free sets and four naive sets listed for the five-argument example
REFERENCE_LIST = [[], ["a"], ["b"], ["c"], ["d"], ["e"], ["a", "d"], ["a", "e"], ["b", "c"], ["b", "d"], ["b", "e"],
             ["c", "d"], ["c", "e"], ["d", "e"], ["a", "d", "e"], ["b", "c", "e"], ["b", "d", "e"], ["c", "d", "e"]]
REFERENCE_NAIVE = [["a", "d", "e"], ["b", "c", "e"], ["b", "d", "e"], ["c", "d", "e"]]


def power_set(universe):
    return CandidateOmega(tuple(universe), frozenset(range(1 << len(universe))))


def cf_names(F, l):
    return sorted(map(sorted, enumerate_family(F, Params(l, 1, 1, 1), "cf").named()))


def test_gamma_examples():
    assert [SMALL.names(Y) for Y in gamma_omega(SMALL)] == [["a", "b"]]
    assert gamma_omega(power_set("ab")) == ()
    assert gamma_omega(CandidateOmega(("a", "b"), frozenset())) == (0,)


def test_conditions_examples():
    assert check_conditions(SMALL, 1, "I").ok
    rep = check_conditions(SMALL, 3, "I")
    assert not rep.ok and rep.verdicts["d"] is False
    gappy = CandidateOmega.from_names("ab", [[], ["a", "b"]])
    rep = check_conditions(gappy, 1, "I")
    assert rep.verdicts["b"] is False and "b" in rep.witnesses


def test_choice_examples():
    ch = find_choice(SMALL, 1)
    assert ch.as_dict() == {0b11: 0}
    assert find_choice(power_set("a"), 1).pick == ()
    # first success in argument order picks b for {b,c,d}
    ch = find_choice(REFERENCE_OMEGA, 2)
    picks = {tuple(REFERENCE_OMEGA.names(Y)): REFERENCE_OMEGA.universe[a] for Y, a in ch.pick}
    assert picks == {("a", "b"): "a", ("a", "c"): "a", ("b", "c", "d"): "b"}


def test_construct_examples():
    ch = ChoiceFunction(((0b11, 0),))
    F = construct_f_omega(SMALL, 1, ch)
    assert F.attacks == {("b", "a")}
    single = CandidateOmega.from_names("a", [[]])
    F = construct_f_omega(single, 1, find_choice(single, 1))
    assert F.attacks == {("a", "a")} and cf_names(F, 1) == [[]]


def test_reference_family_roundtrip():
    assert sorted(map(sorted, REFERENCE_OMEGA.named())) == sorted(REFERENCE_LIST)
    assert [REFERENCE_OMEGA.names(Y) for Y in gamma_omega(REFERENCE_OMEGA)] == [["a", "b"], ["a", "c"], ["b", "c", "d"]]
    res = representable(REFERENCE_OMEGA, 2, "I")
    assert res.ok
    assert cf_names(res.witness, 2) == sorted(REFERENCE_LIST)
    # the hand-picked choice a, a, d is also well organized
    hand = ChoiceFunction(((0b00011, 0), (0b00101, 0), (0b01110, 3)))
    assert check_conditions(REFERENCE_OMEGA, 2).ok
    G = construct_f_omega(REFERENCE_OMEGA, 2, hand)
    assert G.attacks == {("b", "a"), ("c", "a"), ("a", "a"), ("b", "d"), ("c", "d")}
    assert cf_names(G, 2) == sorted(REFERENCE_LIST)
    na = enumerate_family(res.witness, Params(2, 1, 3, 1), "na").named()
    assert sorted(na) == REFERENCE_NAIVE


def test_representable_variants():
    for v in ("I", "II", "III"):
        res = representable(SMALL, 1, v)
        assert res.ok and res.witness.attacks == {("b", "a")}
    assert wf_on(representable(SMALL, 1, "II").witness, 0b11)
    split = CandidateOmega.from_names("abcd", [[], ["b"], ["c"], ["d"], ["b", "c"], ["b", "d"], ["c", "d"]])
    assert sorted(len(split.names(Y)) for Y in gamma_omega(split)) == [1, 3]
    assert not any(representable(split, l).ok for l in (1, 2, 3, 4))
    assert not rho(split).values and not rho(split).all_positive


def test_rho_examples():
    assert rho(power_set("abc")).describe() == "all positive integers"
    r = rho(SMALL)
    assert r.describe() == "{1, 2}" and 1 in r and 3 not in r


def test_cap():
    with pytest.raises(CapExceeded):
        find_choice(CandidateOmega.from_names("abc", [[]]), 1, cap=2)


def test_invariant_guard(monkeypatch):
    import gradedaf.representation as rep
    monkeypatch.setattr(rep, "construct_f_omega", lambda omega, l, ch: rep.Aaf.build(omega.universe))
    with pytest.raises(InvariantViolation):
        rep.representable(SMALL, 1)


@settings(max_examples=80, deadline=None)
@given(frames(max_size=5), st.integers(1, 3))
def test_forward_roundtrip(F, l):
    fam = Catalog(F, Params(l, 1, 1, 1)).sets("cf")
    omega = CandidateOmega(F.arguments, frozenset(fam))
    res = representable(omega, l, "I")
    assert res.ok
    assert Catalog(res.witness, Params(l, 1, 1, 1)).sets("cf") == fam


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.lists(st.integers(0, 15), min_size=1, max_size=4), st.integers(1, 3), st.sampled_from("I II III".split()))
def test_backward_roundtrip(k, gens, l, variant):
    universe = tuple("abcd"[:k])
    full = (1 << k) - 1
    gens = [g & full for g in gens]
    omega = CandidateOmega(universe, frozenset(s for s in range(full + 1) if any(s & ~g == 0 for g in gens)))
    res = representable(omega, l, variant)
    if res.ok:
        assert set(Catalog(res.witness, Params(l, 1, 1, 1)).sets("cf")) == set(omega.sets)
        if variant == "II":
            assert wf_on(res.witness, full)
            assert all(Y.bit_count() == l + 1 for Y in gamma_omega(omega))
    r = rho(omega)
    for lv in range(1, max([Y.bit_count() for Y in gamma_omega(omega)] + [1]) + 2):
        assert (lv in r) == representable(omega, lv, "I").ok


def test_random_seeded_sample():
    rng = random.Random(5)
    from gradedaf.generate import random_aaf
    for _ in range(30):
        F = random_aaf(rng, rng.randint(1, 6))
        l = rng.randint(1, 3)
        fam = Catalog(F, Params(l, 1, 1, 1)).sets("cf")
        assert representable(CandidateOmega(F.arguments, frozenset(fam)), l, cap=64).ok
