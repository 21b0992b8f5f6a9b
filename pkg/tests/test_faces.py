from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refined_tr import curve as C
from refined_tr import faces as FC
from refined_tr import jack as J
from refined_tr import maps as MP
from refined_tr.ratfun import ONE, ZERO, Rat, V
from refined_tr.rtr import RTR

w = V("w")
coef = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@st.composite
def eps_series(draw, E=3, unit=False):
    cs = [draw(coef) for _ in range(E + 1)]
    if unit and cs[0] == 0:
        cs[0] = Fraction(1)
    return FC.EpsSeries([Rat.coerce(c) * (w + k + 2) ** (k % 2) for k, c in enumerate(cs)])


@settings(max_examples=40, deadline=None)
@given(eps_series(), eps_series(), eps_series())
def test_eps_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - b) + b == a


@settings(max_examples=40, deadline=None)
@given(eps_series(unit=True), eps_series())
def test_eps_inverse(a, b):
    assert a * a.inverse() == FC.EpsSeries.const(ONE, a.E)
    assert (b / a) * a == b


@settings(max_examples=30, deadline=None)
@given(eps_series(), eps_series())
def test_eps_derivative_leibniz(a, b):
    lhs = (a * b).deps()
    rhs = a.deps() * b + a * b.deps()
    E = lhs.E
    assert all((lhs[k] - rhs[k]).is_zero() for k in range(E))


def test_eps_shift_and_pow():
    a = FC.EpsSeries([ONE, ONE, ZERO, ZERO])
    assert a ** 3 == FC.EpsSeries([1, 3, 3, 1])
    assert a.shift() == FC.EpsSeries([0, 1, 1, 0])
    assert (a ** -1) * a == FC.EpsSeries.const(ONE, 3)


def test_eps_rejects_noninvertible():
    with pytest.raises(ZeroDivisionError):
        FC.EpsSeries([0, 1]).inverse()


def test_reflected_ops_with_rat():
    a = FC.EpsSeries([w, ONE])
    assert (w + a)[0] == 2 * w
    assert (ONE - a)[1] == -ONE
    assert (w * a)[0] == w * w


PARAMS = {
    "main": dict(u1=Fraction(2, 3), u2=Fraction(5, 7), v=Fraction(3, 11), t=Fraction(1, 2)),
    "bipartite": dict(u1=Fraction(2, 3), u2=Fraction(5, 7), t=Fraction(1, 2)),
    "monotone": dict(v=Fraction(3, 11), t=Fraction(1, 2)),
    "mixed": dict(u1=Fraction(2, 3), v=Fraction(3, 11), t=Fraction(1, 2)),
    "gbe": dict(u=Fraction(3, 5), t=Fraction(1, 2)),
}


@pytest.mark.parametrize("name", FC.WEIGHTS)
def test_undeformed_curve_is_base(name):
    ec = FC.build_eps_curve(name, PARAMS[name], 1, 0, [Fraction(1)])
    base = C.catalog(name, PARAMS[name])
    assert ec.X[0] == base.x and ec.Y[0] == base.y


@pytest.mark.parametrize("name", FC.WEIGHTS)
def test_zero_potential_leaves_curve(name):
    ec = FC.build_eps_curve(name, PARAMS[name], 2, 2, [0, 0])
    assert all(ec.X[k].is_zero() and ec.Y[k].is_zero() for k in (1, 2))


@pytest.mark.parametrize("name", FC.WEIGHTS)
@pytest.mark.parametrize("D", [1, 2])
def test_deformed_curve_checks(name, D):
    ec = FC.build_eps_curve(name, PARAMS[name], D, 2, [Fraction(2, 3), Fraction(-5, 7)][:D])
    assert ec.stabilized
    assert all(FC.eps0_reduction(ec).values())
    assert FC.one_point_check(ec)["ok"]
    y2 = FC.lemma_Y2_check(ec)
    assert y2["polynomial"] and y2["degree_ok"] and y2["ok"]
    assert FC.variational_check(ec)["ok"]


def test_symbolic_potential_one_point():
    ec = FC.build_eps_curve("monotone", PARAMS["monotone"], 1, 1)
    assert "p1" in ec.X[1].variables()
    assert FC.one_point_check(ec, kmax=2)["ok"]


@pytest.mark.parametrize("name,D,degP,degL", [("main", 1, 4, 2), ("main", 2, 6, 2), ("bipartite", 2, 4, 2),
                                               ("monotone", 2, 5, 1), ("mixed", 1, 4, 2), ("gbe", 1, 2, 2),
                                               ("gbe", 3, 4, 2)])
def test_expected_square_degrees(name, D, degP, degL):
    P, M = FC.expected_square_degrees(name, D)
    assert P == degP and P - 2 * M == degL


@pytest.fixture(scope="module")
def main_setup():
    vals = PARAMS["main"]
    r = RTR(C.catalog("main", vals), K=3)
    phi = J.solve_log_tau("main", J.bind_weight("main", vals), 10, 3)
    return vals, r, phi


@pytest.mark.parametrize("g2,ks,D,E", [(0, (1,), 1, 1), (0, (2,), 2, 2), (1, (1,), 1, 2), (0, (1, 1), 2, 1),
                                       (2, (2,), 1, 1), (0, (1, 2, 3), 1, 1)])
def test_residue_route_matches_tau(main_setup, g2, ks, D, E):
    _, r, phi = main_setup
    assert FC.fgnD_via_residues(r, g2, ks, D, E) == J.extract_FD(phi, g2, ks, D, E)


@pytest.mark.parametrize("g2,ks,D,E", [(0, (1,), 1, 1), (0, (2,), 1, 2), (1, (1,), 1, 1), (0, (1, 1), 2, 1)])
def test_map_route_matches_residue_route(main_setup, g2, ks, D, E):
    vals, r, _ = main_setup
    p = J.bind_weight("main", vals)
    assert MP.boundary_refine(g2, ks, D, E, "main", p) == FC.fgnD_via_residues(r, g2, ks, D, E)


def test_residue_route_numeric_potential(main_setup):
    _, r, phi = main_setup
    pot = FC.Potential.of(2, [Fraction(1, 3), Fraction(2)])
    got = FC.fgnD_via_residues(r, 0, (1,), 2, 2, potential=pot)
    ref = J.extract_FD(phi, 0, (1,), 2, 2).subs_many({"p1": Rat.coerce(Fraction(1, 3)), "p2": Rat.coerce(2)})
    assert got == ref


@pytest.mark.parametrize("name", ["gbe", "monotone"])
def test_residue_route_other_curves(name):
    vals = PARAMS[name]
    r = RTR(C.catalog(name, vals), K=3)
    phi = J.solve_log_tau(name, J.bind_weight(name, vals), 7, 3)
    for g2, ks, D in [(0, (1,), 1), (0, (2,), 2), (1, (1,), 2), (0, (1, 1), 1), (2, (1,), 1)]:
        assert FC.fgnD_via_residues(r, g2, ks, D, 2) == J.extract_FD(phi, g2, ks, D, 2)


def test_unknown_weight():
    with pytest.raises(FC.FacesError):
        FC.build_eps_curve("jbe", {}, 1)
