import random

import pytest
from hypothesis import given, settings, strategies as st

from instanton4.field import Field
from instanton4.geometry import (
    GeometryError,
    LineConfiguration,
    LineP3,
    five_secant,
    five_secant_config,
    has_five_secant,
    meets,
    plucker_pairing,
    plucker_relation,
    quadric_through,
    random_line,
    random_skew_config,
    ruling_lines,
    standard_lines,
    tangent_config,
    transversals_of_four,
)
from instanton4.modules import Ideal
from instanton4.poly import variables

F = Field(32003)
x0, x1, x2, x3 = variables(F)
E = [tuple(int(i == j) for j in range(4)) for i in range(4)]


def test_plucker_of_coordinate_lines():
    assert LineP3.through(E[0], E[1], F).plucker == (1, 0, 0, 0, 0, 0)
    assert LineP3.through(E[2], E[3], F).plucker == (0, 0, 0, 0, 0, 1)


def test_line_ideals():
    assert Ideal.of(LineP3.through(E[0], E[1], F).linear_forms) == Ideal.of([x2, x3])
    assert Ideal.of(LineP3.through(E[2], E[3], F).linear_forms) == Ideal.of([x0, x1])
    L3 = standard_lines(F)[2]
    assert Ideal.of(L3.linear_forms) == Ideal.of([x0 + x2, x1 + x3])


def test_meets_examples():
    L = LineP3.through(E[0], E[1], F)
    assert not meets(L, LineP3.through(E[2], E[3], F))
    assert meets(L, LineP3.from_forms([x1, x2], F))
    assert meets(L, L)


def test_dependent_points_rejected():
    with pytest.raises(GeometryError):
        LineP3.through((1, 2, 3, 4), (2, 4, 6, 8), F)


def test_standard_quadric():
    Q = quadric_through(*standard_lines(F))
    q = Q.equation
    assert q.monic() == (x0 * x3 - x1 * x2).monic()
    assert Q.is_nonsingular


def test_quadric_through_meeting_lines_rejected():
    L1, L2, _ = standard_lines(F)
    with pytest.raises(GeometryError):
        quadric_through(L1, L2, LineP3.through(E[0], E[2], F))


def test_quadric_contains_random_skew_triple():
    cfg = random_skew_config(3, 11, F)
    Q = quadric_through(*cfg.lines)
    for L in cfg.lines:
        assert L.ideal.normal_form(Q.equation).is_zero()


def test_quadric_equation_is_gram_form():
    Q = quadric_through(*random_skew_config(3, 2, F).lines)
    rng = random.Random(0)
    for _ in range(20):
        P = [rng.randrange(F.p) for _ in range(4)]
        assert Q.value(P) == Q.bilinear(P, P)


def test_transversals_of_lines_on_one_quadric():
    L1, L2, L3 = standard_lines(F)
    L4 = LineP3.from_forms([x0 - x2, x1 - x3], F)
    assert transversals_of_four(L1, L2, L3, L4).kind == "infinite"


def test_generic_transversals():
    found = 0
    for seed in range(10):
        cfg = random_skew_config(4, seed, F)
        res = transversals_of_four(*cfg.lines)
        if res.kind == "finite":
            assert res.count == 2 and len(res.lines) == 2
            for T in res.lines:
                assert all(meets(T, L) for L in cfg.lines)
            found += 1
        else:
            assert res.kind == "irrational"
    assert found > 0


def test_tangent_transversal():
    cfg = tangent_config(0, F)
    res = transversals_of_four(*cfg.lines)
    assert res.tangent and res.multiplicities == [2]
    assert all(meets(res.lines[0], L) for L in cfg.lines)


def test_five_secant_witness():
    cfg = five_secant_config(F)
    res = five_secant(cfg)
    assert res.status == "witness"
    M = LineP3.from_forms([x0 - x1, x2 - x3], F)
    assert res.witness == M
    assert all(meets(M, L) for L in cfg.lines)
    assert has_five_secant(cfg) == M


def test_random_config_has_no_five_secant():
    cfg = random_skew_config(5, 42, F)
    assert cfg.is_skew
    assert five_secant(cfg).status == "none"
    assert has_five_secant(cfg) is False


def test_five_secant_needs_skew_lines():
    L1, L2, L3 = standard_lines(F)
    bad = [L1, L2, L3, LineP3.through(E[0], E[2], F), LineP3.through((1, 2, 3, 5), (0, 1, 7, 1), F)]
    with pytest.raises(GeometryError):
        five_secant(bad)


def test_config_determinism_and_single_line():
    assert random_skew_config(5, 9, F).lines == random_skew_config(5, 9, F).lines
    assert len(random_skew_config(1, 3, F)) == 1
    assert random_skew_config(5, 9, F).lines != random_skew_config(5, 10, F).lines


def test_config_json_roundtrip():
    cfg = random_skew_config(4, 1, F)
    again = LineConfiguration.from_json(cfg.to_json())
    assert again.lines == cfg.lines
    canon = cfg.to_json(canonical=True)
    assert len(canon["plucker"]) == 4 and canon["seed"] == 1
    Q = Field.rationals()
    cq = random_skew_config(5, 1, Q)
    assert LineConfiguration.from_json(cq.to_json()).lines == cq.lines


def test_ruling_lines_examples():
    L1, L2, L3 = standard_lines(F)
    Q = quadric_through(L1, L2, L3)
    assert ruling_lines(Q, "A", (1, 0, 0, 0), ref=L1) == L1
    M = ruling_lines(Q, "B", (1, 1, 0, 0), ref=L1)
    assert M == LineP3.from_forms([x0 - x1, x2 - x3], F)
    with pytest.raises(GeometryError):
        ruling_lines(Q, "B", (1, 0, 0, 1), ref=L1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 10**4))
def test_opposite_ruling_meets_all_three(seed, t):
    cfg = random_skew_config(3, seed, F)
    Q = quadric_through(*cfg.lines)
    B = ruling_lines(Q, "B", t, ref=cfg.lines[0])
    assert all(meets(B, L) for L in cfg.lines)
    A = ruling_lines(Q, "A", t, ref=cfg.lines[0])
    assert Q.contains_line(A)
    assert not any(meets(A, L) for L in cfg.lines if L != A)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_quadric_independent_of_sample_points(seed):
    rng = random.Random(seed)
    cfg = random_skew_config(3, seed, F)
    moved = []
    for L in cfg.lines:
        s, t, u, v = (rng.randrange(1, F.p) for _ in range(4))
        try:
            moved.append(LineP3.through(L.point(s, t), L.point(u, v), F))
        except GeometryError:
            return
    assert quadric_through(*moved).equation.monic() == quadric_through(*cfg.lines).equation.monic()


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_no_five_secant_means_no_transversal_meets_the_fifth(seed):
    cfg = random_skew_config(5, seed, F)
    for drop in range(5):
        four = [L for k, L in enumerate(cfg.lines) if k != drop]
        res = transversals_of_four(*four)
        assert res.kind in ("finite", "irrational")
        assert not any(meets(T, cfg.lines[drop]) for T in res.lines)


def test_plucker_and_meets_consistency_on_random_pairs():
    rng = random.Random(99)
    for _ in range(200):
        L, M = random_line(rng, F), random_line(rng, F)
        assert plucker_relation(L.plucker) % F.p == 0
        for f in L.linear_forms:
            assert f.evaluate(L.a) == 0 and f.evaluate(L.b) == 0
        assert meets(L, M) == (plucker_pairing(F, L.plucker, M.plucker) == 0)
