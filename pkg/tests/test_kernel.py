from hypothesis import given, strategies as st

import oracles
from conftest import frame_and_set, frames, grade
from gradedaf import defense, enumerate_attacker_combinations, neutrality, range_plus
from gradedaf.generate import F_3CYC, F_CHAIN, F_K3D, F_SELF
from gradedaf.kernel import range_of


def S(F, names):
    return F.set_of(names)


def test_neutrality_examples():
    assert neutrality(F_3CYC, 2, 0) == F_3CYC.full
    assert neutrality(F_3CYC, 1, S(F_3CYC, "a")) == S(F_3CYC, "ac")
    assert neutrality(F_K3D, 3, S(F_K3D, "abc")) == S(F_K3D, "abc")


def test_defense_examples():
    assert defense(F_3CYC, 1, 1, S(F_3CYC, "a")) == S(F_3CYC, "c")
    assert defense(F_CHAIN, 1, 1, 0) == S(F_CHAIN, "a")
    assert defense(F_K3D, 2, 2, S(F_K3D, "abc")) == F_K3D.full


def test_range_examples():
    assert range_plus(F_3CYC, 2, 0) == 0
    assert range_plus(F_CHAIN, 1, S(F_CHAIN, "a")) == S(F_CHAIN, "b")
    assert range_plus(F_K3D, 2, S(F_K3D, "ab")) == S(F_K3D, "cd")
    assert range_of(F_CHAIN, 1, S(F_CHAIN, "a")) == F_CHAIN.full


def test_attacker_combinations():
    got = {frozenset(F_K3D.names(x)) for x in enumerate_attacker_combinations(F_K3D, "d", 2)}
    assert got == {frozenset("ab"), frozenset("ac"), frozenset("bc")}
    assert list(enumerate_attacker_combinations(F_CHAIN, "b", 2)) == []
    assert [F_SELF.names(x) for x in enumerate_attacker_combinations(F_SELF, "a", 1)] == [("a",)]


@given(frame_and_set(), grade, grade, grade, grade)
def test_matches_oracle(FE, l, m, n, eta):
    F, E = FE
    names = frozenset(F.names(E))
    assert set(F.names(neutrality(F, l, E))) == oracles.neutral(F, l, names)
    assert set(F.names(defense(F, m, n, E))) == oracles.defended(F, m, n, names)
    assert set(F.names(range_plus(F, eta, E))) == oracles.rng_plus(F, eta, names)


@given(frames(max_size=7), st.data(), st.integers(1, 4))
def test_antitone_and_grade_monotone(F, data, l):
    Y = data.draw(st.integers(0, F.full))
    X = Y & data.draw(st.integers(0, F.full))
    NX, NY = neutrality(F, l, X), neutrality(F, l, Y)
    assert NY & ~NX == 0
    assert NX & ~neutrality(F, l + 1, X) == 0


@given(frames(max_size=7), st.data(), grade, grade)
def test_defense_monotone_and_composition(F, data, m, n):
    Y = data.draw(st.integers(0, F.full))
    X = Y & data.draw(st.integers(0, F.full))
    assert defense(F, m, n, X) & ~defense(F, m, n, Y) == 0
    assert defense(F, m, n, X) == neutrality(F, m, neutrality(F, n, X))


@given(frames(max_size=7), st.lists(st.integers(0, 127), min_size=1, max_size=5), grade)
def test_directed_de_morgan(F, raw, l):
    chain, acc = [], 0
    for r in raw:
        acc |= r & F.full
        chain.append(acc)
    meet = F.full
    for E in chain:
        meet &= neutrality(F, l, E)
    assert neutrality(F, l, chain[-1]) == meet


@given(frame_and_set(), grade)
def test_range_complement(FE, eta):
    F, E = FE
    assert range_plus(F, eta, E) == F.full & ~neutrality(F, eta, E)
