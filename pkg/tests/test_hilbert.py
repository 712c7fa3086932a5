import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from instanton4.field import Field
from instanton4.hilbert import HilbertData, hilbert_sum, monomial_numerator, polynomial_string, shift
from instanton4.modules import Ideal
from instanton4.poly import variables

from oracles import hf_la, random_ideal_gens

F = Field(32003)
x0, x1, x2, x3 = variables(F)


def test_line():
    assert Ideal.of([x2, x3]).hilbert_polynomial() == [1, 1]


def test_five_skew_lines(gf):
    from conftest import config5

    assert config5(0).union_ideal().hilbert_polynomial() == [5, 5]


def test_quadric_surface():
    hp = Ideal.of([x0 * x3 - x1 * x2]).hilbert_polynomial()
    assert hp == [1, 2, 1]  # (t + 1)^2


def test_zero_and_unit_ideals():
    assert Ideal.unit(F).hilbert.hilbert_function(5) == 0
    assert Ideal(F, ()).hilbert.hilbert_function(2) == 10


def test_numerator_of_pure_powers_terminates():
    num = monomial_numerator(((2, 0, 0, 0), (1, 1, 0, 0), (0, 0, 3, 0)))
    h = HilbertData(num)
    assert h.hilbert_function(0) == 1
    assert h.hilbert_function(1) == 4


def test_sum_and_shift():
    h = Ideal.of([x0]).hilbert
    assert hilbert_sum(h, shift(h, 1)).hilbert_function(3) == h.hilbert_function(3) + h.hilbert_function(4)


def test_polynomial_string():
    assert polynomial_string([Fraction(5), Fraction(1)]) == "t + 5"
    assert polynomial_string([Fraction(-1), Fraction(0), Fraction(1, 2)]) == "1/2*t^2 - 1"


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_hilbert_function_matches_linear_algebra(seed):
    rng = random.Random(seed)
    gens = random_ideal_gens(rng, F, rng.randint(1, 4), 3)
    h = Ideal.of(gens).hilbert
    for d in range(0, 9):
        assert h.hilbert_function(d) == hf_la(gens, d, F)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_polynomial_agrees_with_function_past_bound(seed):
    rng = random.Random(seed)
    h = Ideal.of(random_ideal_gens(rng, F, rng.randint(1, 4), 3)).hilbert
    start = max(h.regularity_bound, 0)
    for d in range(start, start + 4):
        assert h.hilbert_function(d) == h.hilbert_polynomial_at(d)
