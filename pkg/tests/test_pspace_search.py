import random

import pytest

from tsprops.core import (
    GeneratorSet,
    Transformation,
    compose,
    idempotent_power_exponent,
    power,
    word_to_transformation,
)
from tsprops.errors import EnumerationCapExceeded
from tsprops.oracle import definitional_check, enumerate_semigroup
from tsprops.pspace_search import (
    canonical_weak_inverse,
    find_inverse,
    find_regularizer,
    find_weak_inverse,
    is_inverse_semigroup,
    is_regular_semigroup,
    iter_elements,
)

SIGMA = GeneratorSet.from_maps([(2, 3, 1)])
COLLAPSE = GeneratorSet.from_maps([(1, 1, 2)])


def rand_gens(rng, n_max=5, k_max=3):
    n = rng.randint(1, n_max)
    k = rng.randint(1, k_max)
    return GeneratorSet.from_maps(
        [tuple(rng.randint(1, n) for _ in range(n)) for _ in range(k)])


def test_iter_elements_canonical_order_and_words():
    elements = list(iter_elements(SIGMA))
    assert [t.map for t, _ in elements] == [(2, 3, 1), (3, 1, 2), (1, 2, 3)]
    assert [w for _, w in elements] == [(1,), (1, 1), (1, 1, 1)]
    for t, w in elements:
        assert word_to_transformation(SIGMA, w) == t
    # word lengths never decrease along the stream
    rng = random.Random(80)
    for _ in range(50):
        gens = rand_gens(rng, n_max=4)
        lengths = [len(w) for _, w in iter_elements(gens)]
        assert lengths == sorted(lengths)


def test_iter_elements_cap():
    with pytest.raises(EnumerationCapExceeded):
        list(iter_elements(SIGMA, cap=2))


def test_find_inverse_of_sigma():
    t = SIGMA[0]
    hit = find_inverse(SIGMA, t)
    assert hit is not None
    inv, word = hit
    assert inv.map == (3, 1, 2)
    assert word == (1, 1)


def test_find_regularizer_none_case():
    s = COLLAPSE[0]
    assert find_regularizer(COLLAPSE, s) is None
    # yet a weak inverse of s exists inside <s>
    hit = find_weak_inverse(COLLAPSE, s)
    assert hit is not None
    t, _ = hit
    assert compose(compose(t, s), t) == t


def test_find_functions_replay_equations():
    rng = random.Random(81)
    for _ in range(200):
        gens = rand_gens(rng, n_max=4)
        s = gens[rng.randrange(len(gens))]
        reg = find_regularizer(gens, s)
        if reg is not None:
            t, word = reg
            assert compose(compose(s, t), s) == s
            assert word_to_transformation(gens, word) == t
        weak = find_weak_inverse(gens, s)
        assert weak is not None  # an in-semigroup target always has one
        t, word = weak
        assert compose(compose(t, s), t) == t
        assert word_to_transformation(gens, word) == t
        inv = find_inverse(gens, s)
        if inv is not None:
            t, word = inv
            assert compose(compose(s, t), s) == s
            assert compose(compose(t, s), t) == t
        # an inverse exists iff a regularizer does (take t s t for t regularizing)
        assert (inv is not None) == (reg is not None)


def test_canonical_weak_inverse_identity_and_exponent():
    # the documented small counterexample to using the plain idempotent
    # exponent minus one
    s = Transformation(3, (1, 1, 2))
    omega = idempotent_power_exponent(s)
    assert omega == 2
    assert compose(compose(s, s), s) != s          # s^(w-1)=s fails as inverse
    t, e = canonical_weak_inverse(s)
    assert e == 3
    assert t == power(s, 3)
    assert compose(compose(t, s), t) == t          # s^3 s s^3 = s^3

    rng = random.Random(82)
    for _ in range(500):
        n = rng.randint(1, 6)
        s = Transformation(n, tuple(rng.randint(1, n) for _ in range(n)))
        t, e = canonical_weak_inverse(s)
        assert e == 2 * idempotent_power_exponent(s) - 1
        assert compose(compose(t, s), t) == t


def test_is_regular_semigroup():
    assert is_regular_semigroup(SIGMA).verdict
    report = is_regular_semigroup(COLLAPSE)
    assert not report.verdict
    w = report.witness
    assert w["kind"] == "non-regular-element"
    assert w["element"]["map"] == [1, 1, 2]

    undecided = is_regular_semigroup(SIGMA, cap=2)
    assert undecided.verdict.value == "UNDECIDED"
    assert undecided.witness == {"kind": "enumeration-cap", "cap": 2}


def test_is_regular_against_oracle_random():
    rng = random.Random(83)
    for _ in range(200):
        gens = rand_gens(rng, n_max=4)
        structural = is_regular_semigroup(gens)
        oracle = definitional_check(enumerate_semigroup(gens), "regular")
        assert structural.verdict.value == oracle.verdict.value, gens


def test_is_inverse_semigroup():
    assert is_inverse_semigroup(SIGMA).verdict
    consts = GeneratorSet.from_maps([(1, 1, 1), (2, 2, 2)])
    report = is_inverse_semigroup(consts)
    assert not report.verdict  # regular, but idempotents do not commute
    assert not is_inverse_semigroup(COLLAPSE).verdict  # not even regular
    assert is_inverse_semigroup(SIGMA, cap=2).verdict.value == "UNDECIDED"

    rng = random.Random(84)
    for _ in range(200):
        gens = rand_gens(rng, n_max=4)
        structural = is_inverse_semigroup(gens)
        oracle = definitional_check(enumerate_semigroup(gens),
                                    "inverse_semigroup")
        assert structural.verdict.value == oracle.verdict.value, gens
