import random

import pytest

from instanton4.cohomology import sheaf_cohomology_dim
from instanton4.constructions import (
    PreconditionError,
    build_G,
    check_cohomology_IY3,
    check_degeneracy,
    check_l1l4x_resolution,
    degeneracy_ideal,
    double_line_test,
    random_coefficients,
    sigma,
    sigma_is_epi,
    sigma_kernel,
    theta,
    theta_from_forms,
    theta_image_ideal,
    theta_kernel,
    thooft_instanton,
    triple_quadric,
    verify_claims,
    verify_global_generation,
    verify_instanton,
    x_divisor,
)
from instanton4.field import Field
from instanton4.geometry import (
    LineConfiguration,
    LineP3,
    five_secant_config,
    quadric_through,
    standard_lines,
    transversals_of_four,
)
from instanton4.groebner import FreeModule
from instanton4.modules import GradedModule, Ideal
from instanton4.poly import variables
from instanton4.resolution import free_resolution

from conftest import config4, config5, tangent4

F = Field(32003)
x0, x1, x2, x3 = variables(F)
H = (x2, x3, x0, x1)  # h0, h1 vanish on L1 = {x2 = x3 = 0}; h2, h3 on L2 = {x0 = x1 = 0}


@pytest.fixture(scope="module")
def sig():
    cfg = config5(0)
    return sigma(cfg, random_coefficients(random.Random(0), F))


# theta ---------------------------------------------------------------------


def test_theta_on_its_own_basis():
    th = theta_from_forms(H, F)
    h0, h1, h2, h3 = H
    assert th.value(h0, h1).is_zero()
    assert th.value(h2, h3).is_zero()
    assert th.value(h1, h3) == 2 * h1 * h3
    assert th.value(h0, h2) == 2 * h0 * h2
    assert th.value(h0 + h2, h1 + h3) == 2 * h0 * h3 - 2 * h1 * h2


def test_theta_image_is_union_of_the_two_lines():
    th = theta_from_forms(H, F)
    assert theta_image_ideal(th) == Ideal.of([x2, x3]).intersect(Ideal.of([x0, x1]))


def test_theta_kernel_is_twice_o_minus_one():
    K = theta_kernel(theta_from_forms(H, F))
    assert free_resolution(K).betti == {(0, 1): 2}


def test_third_bivector_cuts_the_quadric():
    L1, L2, L3 = standard_lines(F)
    th = theta_from_forms(H, F)
    h = Ideal.of(list(th.image_generators) + [th.value(x0 + x2, x1 + x3)]).saturate()
    assert th.value(x0 + x2, x1 + x3).monic() == quadric_through(L1, L2, L3).equation.monic()
    assert h == Ideal.of([x2, x3]).intersect(Ideal.of([x0, x1]))


def test_theta_rejects_meeting_lines():
    L1 = LineP3.through((1, 0, 0, 0), (0, 1, 0, 0), F)
    L2 = LineP3.through((1, 0, 0, 0), (0, 0, 1, 0), F)
    with pytest.raises(PreconditionError):
        theta(LineConfiguration(F, (L1, L2)), 1, 2)


# sigma ---------------------------------------------------------------------


def test_zero_coefficients_give_zero_map():
    s = sigma(config5(1), (0, 0, 0))
    assert all(c.is_zero() for c in s.cubics)
    assert s.image_ideal().is_zero()
    assert not sigma_is_epi(s).passed


@pytest.mark.parametrize("a", [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (5, -7, 11)])
def test_image_always_inside_union(a):
    cfg = config5(2)
    IY = cfg.union_ideal()
    for g in sigma(cfg, a).cubics:
        assert IY.contains(g)


def test_sigma_cubics_are_quartics(sig):
    assert {g.homogeneous_degree() for g in sig.cubics} == {4}


def test_sigma_epi_and_chern_classes(sig):
    rep = sigma_is_epi(sig)
    assert rep.passed, rep.details
    assert rep.details["chern_kernel"] == {"rank": 2, "c1": -4, "c2": 8, "c3": 0}
    assert rep.details["chern_kernel_from_hilbert_polynomial"] == rep.details["chern_kernel"]


def test_degenerate_coefficients_fail(sig):
    rep = sigma_is_epi(sigma(sig.cfg, (1, 0, 0)))
    assert not rep.passed
    assert rep.details["strictly_smaller"] is True


def test_sigma_kernel_rank(sig):
    K = sigma_kernel(sig)
    assert K.hilbert.hilbert_polynomial[-1] * 6 == 2


def test_sigma_needs_five_skew_lines():
    with pytest.raises(PreconditionError):
        sigma(config4(0), (1, 1, 1))


# degeneracy and the curve X -----------------------------------------------------


def test_duplicate_thetas_rejected():
    th = theta(config4(0), 1, 2)
    with pytest.raises(PreconditionError):
        degeneracy_ideal([th, th])


def test_x_is_residual_conic_pair():
    cfg = config4(3)
    L1, L2, L3, L4 = cfg.lines
    X = x_divisor(L1, L2, L3, L4)
    assert X.hilbert.degree == 2
    q, q2 = quadric_through(L1, L2, L3).equation, quadric_through(L2, L3, L4).equation
    assert Ideal.of([q, q2]).saturate() == L2.ideal.intersect(L3.ideal).intersect(X)


def test_tangent_x_is_double_line():
    cfg = tangent4(0)
    X = x_divisor(*cfg.lines)
    hp = X.hilbert_polynomial()
    assert hp[1] == 2
    # supported on the tangent transversal T, with multiplicity two
    T = transversals_of_four(*cfg.lines).lines[0]
    assert X.is_subset(T.ideal)
    assert X.saturate(T.ideal).is_unit()
    assert X != T.ideal


def test_x_rejects_four_lines_on_a_quadric():
    L1, L2, L3 = standard_lines(F)
    L4 = LineP3.from_forms([x0 - x2, x1 - x3], F)
    with pytest.raises(PreconditionError):
        x_divisor(L1, L2, L3, L4)


@pytest.mark.parametrize("cfg", [config4(5), tangent4(1)], ids=["generic", "tangent"])
def test_l1l4x_resolution(cfg):
    rep = check_l1l4x_resolution(cfg)
    assert rep.passed, rep.details
    assert rep.details["h0_IZ3"] == 4


def test_degeneracy_loci():
    rep = check_degeneracy(config4(6))
    assert rep.passed, rep.details


# cohomology and the triple quadric ----------------------------------------------


def test_cohomology_of_iy3():
    rep = check_cohomology_IY3(config5(3))
    assert rep.passed
    assert (rep.details["h0_IY3"], rep.details["h1_IY3"], rep.details["h0_OY3"]) == (0, 0, 20)


def test_cohomology_with_five_secant_reports_dimensions():
    rep = check_cohomology_IY3(five_secant_config(F))
    assert not rep.passed
    assert rep.details["h0_IY3"] == rep.details["h1_IY3"] == 1


def test_cohomology_needs_five_lines():
    with pytest.raises(PreconditionError):
        check_cohomology_IY3(config4(0))


@pytest.mark.parametrize("perm", [None, (3, 4, 1, 2, 5)])
def test_triple_quadric(perm):
    rep = triple_quadric(config5(4), perm)
    assert rep.passed, rep.details
    assert rep.details["curve_invariants"] == [1, 5, 1, 4]


# the module G ------------------------------------------------------------------------


def test_build_g(sig):
    G, rep = build_G(sig)
    assert rep.passed, rep.details
    assert rep.details["h0"] == 4
    assert sheaf_cohomology_dim(G, 0, 0) == 4


def test_global_generation_examples():
    assert verify_global_generation(GradedModule.free(FreeModule((-1,)), F), 0)
    assert not verify_global_generation(config5(0).union_ideal().as_module(), 3)
    two = Ideal.of([x2, x3]).intersect(Ideal.of([x0, x1]))
    assert verify_global_generation(two.as_module(), 2)
    assert not verify_global_generation(two.as_module(), 1)


# instantons -------------------------------------------------------------------------


def test_instanton_branches():
    split = GradedModule.free(FreeModule((-1, 1)), F)
    assert verify_instanton(split).details["branch"] == "O(1)+O(-1)"
    trivial = GradedModule.free(FreeModule((0, 0)), F)
    rep = verify_instanton(trivial)
    assert rep.details["branch"] == "2O" and not rep.passed


def test_split_thooft_class_fails():
    lines = config5(0).lines[:2]
    _, rep = thooft_instanton(lines, zero_class=True)
    assert not rep.passed
    assert rep.details["class_zero"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_thooft(n):
    from instanton4.geometry import random_skew_config

    E, rep = thooft_instanton(random_skew_config(n + 1, 14, F).lines, class_seed=n)
    assert rep.passed, rep.details
    assert rep.details["chern"]["c2"] == n
    assert rep.details["h_F(-2)"] == [0, 0, 0, 0]
    assert rep.details["h0_F(1)"] >= 1


# double structures ------------------------------------------------------------------


def _std():
    L1, L2, L3 = standard_lines(F)
    return quadric_through(L1, L2, L3), L1


def test_plain_line():
    Q, L = _std()
    rep = double_line_test(Ideal.of([x2, x3]), Q, L)
    assert rep.details["conclusion"] == "Z = L" and rep.details["witnesses"] == []


def test_double_line_every_ruling_line_witness():
    Q, L = _std()
    I = Ideal.of([x0 * x3 - x1 * x2, x2**2, x2 * x3, x3**2])
    rep = double_line_test(I, Q, L)
    assert rep.passed and rep.details["witnesses"] == "all"


@pytest.mark.parametrize("field", [F, Field.rationals()], ids=["gf", "qq"])
def test_double_line_isolated_witnesses(field):
    y = variables(field)
    L1, L2, L3 = standard_lines(field)
    Q = quadric_through(L1, L2, L3)
    a, b = y[0] ** 2, y[1] ** 2
    I = Ideal.of([a * y[3] - b * y[2], y[2] ** 2, y[2] * y[3], y[3] ** 2])
    rep = double_line_test(I, Q, L1)
    assert rep.passed
    params = {tuple(p) for p in rep.details["witness_params"]}
    norm = set()
    for c0, c1 in params:
        c0, c1 = field(c0), field(c1)
        norm.add((1, field.lift(field.div(c1, c0))) if c0 else (0, 1))
    assert norm == {(1, 0), (0, 1), (1, 1)}


def test_double_line_preconditions():
    Q, L = _std()
    with pytest.raises(PreconditionError):
        double_line_test(Ideal.of([x0, x1]), Q, L)


# claims ------------------------------------------------------------------------------


def test_claims_pass_on_generic_sigma(sig):
    rep = verify_claims(sig, samples=3, seed=1)
    assert rep.passed, rep.details


def test_claims_fail_for_degenerate_coefficients(sig):
    rep = verify_claims(sigma(sig.cfg, (1, 0, 0)), samples=3, seed=1)
    assert not rep.passed
