import random

import pytest

from anosovlab.surface import (
    ConjClass,
    FuchsianRep,
    NotHyperbolicElement,
    SurfacePresentation,
    TrivialClass,
    class_distinctness_mcduff,
    double_coset_count,
    format_word,
    free_reduce,
    geodesic_length,
    intersection_number,
    invert_word,
    mcduff_hw_generators,
    parse_word,
)

PRES = SurfacePresentation(2)
REP = FuchsianRep(PRES)
ALPHABET = [1, -1, 2, -2, 3, -3, 4, -4]


def _random_reduced(rng, maxlen):
    L = rng.randint(1, maxlen)
    w = []
    for _ in range(L):
        g = rng.choice(ALPHABET)
        while w and w[-1] == -g:
            g = rng.choice(ALPHABET)
        w.append(g)
    return tuple(w)


def test_word_parsing():
    assert parse_word("a1B2") == (1, -4)
    assert format_word((1, -4)) == "a1B2"
    assert parse_word("a1 A1") == (1, -1)
    with pytest.raises(ValueError):
        parse_word("q5")


def test_relator_reduces_to_empty():
    assert PRES.dehn_reduce(PRES.relator) == ()
    assert PRES.is_trivial(PRES.relator)
    assert PRES.dehn_reduce(parse_word("a1")) == (1,)
    assert not PRES.is_trivial(parse_word("a1"))


def test_free_reduction():
    assert free_reduce((1, -1, 2)) == (2,)
    assert free_reduce(()) == ()
    assert invert_word((1, 2)) == (-2, -1)


def test_octagon_certificates():
    assert REP.relator_residual < 1e-8
    import numpy as np

    for g in (1, 2, 3, 4):
        assert abs(np.trace(REP.matrix((g,)))) > 2


def test_dehn_matrix_agreement_battery():
    rng = random.Random(13)
    for trial in range(1500):
        w = _random_reduced(rng, 60)
        assert PRES.is_trivial(w) == REP.is_identity(w)


def test_dehn_matrix_agreement_injected_trivial():
    rng = random.Random(17)
    for trial in range(200):
        u = _random_reduced(rng, 8)
        rel = rng.choice(PRES.symmetrized)
        w = free_reduce(u + rel + invert_word(u))
        assert PRES.is_trivial(w)
        assert REP.is_identity(w)
        # a one-letter perturbation is no longer trivial
        w_bad = free_reduce(w + (1,))
        assert not PRES.is_trivial(w_bad)
        assert not REP.is_identity(w_bad)


def test_conjugacy_classes_length_one():
    classes = PRES.conjugacy_classes(1)
    assert len(classes) == 8
    keys = {c.word for c in classes}
    assert parse_word("a1") in keys and parse_word("A1") in keys
    assert PRES.conjugacy_classes(0) == []


def test_class_key_conjugation_closed():
    rng = random.Random(19)
    for base_text in ("a1", "a1b1", "b2A1"):
        base = parse_word(base_text)
        key = PRES.class_key(base)
        for _ in range(20):
            u = _random_reduced(rng, 6)
            conj = free_reduce(u + base + invert_word(u))
            assert PRES.class_key(conj) == key


def test_class_key_orientation_distinct():
    assert PRES.class_key(parse_word("a1")) != PRES.class_key(parse_word("A1"))


def test_geodesic_length_class_function():
    rng = random.Random(23)
    base = parse_word("a1b1")
    l0 = geodesic_length(REP, base)
    for _ in range(60):
        u = _random_reduced(rng, 6)
        conj = free_reduce(u + base + invert_word(u))
        assert abs(geodesic_length(REP, conj) - l0) < 1e-10
    assert abs(geodesic_length(REP, base + base) - 2 * l0) < 1e-10
    with pytest.raises(NotHyperbolicElement):
        geodesic_length(REP, ())


def test_class_distinctness():
    cls = ConjClass(PRES, PRES.class_key(parse_word("a1")))
    assert class_distinctness_mcduff(1, cls)["distinct"]
    assert class_distinctness_mcduff(-3, cls)["distinct"]
    with pytest.raises(TrivialClass):
        class_distinctness_mcduff(0, cls)


def test_intersection_numbers():
    a1, b1 = parse_word("a1"), parse_word("b1")
    a2, b2 = parse_word("a2"), parse_word("b2")
    assert intersection_number(REP, a1, a1, radius=3) == 0  # simple
    assert intersection_number(REP, a1, b1, radius=3) == 1
    assert intersection_number(REP, b1, a1, radius=3) == 1  # symmetric
    assert intersection_number(REP, a1, a2, radius=3) == 0
    assert intersection_number(REP, a1, b2, radius=3) == 0


def test_double_coset_window():
    out = double_coset_count(PRES, parse_word("a1"), parse_word("b1"), 2)
    assert out["double_cosets"] >= 1
    assert out["lower_bound"] and not out["budget_exhausted"]
    tiny = double_coset_count(PRES, parse_word("a1"), parse_word("b1"), 3,
                              budget=10)
    assert tiny["budget_exhausted"]


def test_hw_generators_cases():
    pres, rep = PRES, REP
    c_a1 = ConjClass(pres, pres.class_key(parse_word("a1")))
    c_A1 = ConjClass(pres, pres.class_key(parse_word("A1")))
    c_a2 = ConjClass(pres, pres.class_key(parse_word("a2")))
    c_b1 = ConjClass(pres, pres.class_key(parse_word("b1")))

    same = mcduff_hw_generators(c_a1, c_a1, rep, word_len=2, t_cutoff=3)
    assert same["case"] == "equal"
    assert same["morse"] == {"0": 1, "1": 1}
    assert same["intersection_points"] == 0 and same["tower_rank_total"] == 0

    disj = mcduff_hw_generators(c_a1, c_a2, rep, word_len=2, t_cutoff=3)
    assert disj["case"] == "distinct"
    assert disj["morse"] is None
    assert disj["tower_rank_total"] == 0
    assert disj["chords_window"]["double_cosets"] >= 1

    rev = mcduff_hw_generators(c_a1, c_A1, rep, word_len=2, t_cutoff=3)
    assert rev["case"] == "reverse"
    # doubled Z[t] towers against the single-tower sizing at the same cutoff
    assert rev["tower_rank_per_point"] == 2 * (3 + 1)

    crossing = mcduff_hw_generators(c_a1, c_b1, rep, word_len=2, t_cutoff=3)
    assert crossing["intersection_points"] == 1
    assert crossing["tower_rank_per_point"] == 3 + 1
    assert crossing["tower_rank_total"] == 4

    with pytest.raises(TrivialClass):
        trivial = ConjClass(pres, ())
        mcduff_hw_generators(trivial, c_a1, rep)
