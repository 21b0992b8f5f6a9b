import itertools
from fractions import Fraction

import pytest

from refined_tr import curve as C
from refined_tr.ratfun import ONE, ZERO, Q, V, residue_at
from refined_tr.rtr import RTR, ZV

VALUES = {
    "main": dict(u1=Fraction(2, 3), u2=Fraction(5, 7), v=Fraction(3, 11), t=Fraction(1, 2)),
    "bipartite": dict(u1=Fraction(2, 3), u2=Fraction(5, 7), t=Fraction(1, 2)),
    "monotone": dict(v=Fraction(3, 11), t=Fraction(1, 2)),
    "mixed": dict(u1=Fraction(2, 3), v=Fraction(3, 11), t=Fraction(1, 2)),
    "gbe": dict(u=Fraction(3, 5), t=Fraction(1, 2)),
    "jbe": dict(gamma=Fraction(2, 3), delta=Fraction(5, 7), t=1),
    "lbe": dict(gamma=Fraction(2, 3), t=1),
}


@pytest.mark.parametrize("name", C.CURVE_NAMES)
def test_curve_consistency(name):
    c = C.catalog(name, VALUES[name])
    assert c.check_involution()
    assert c.check_bergman_relation()
    assert c.check_P_plus()


@pytest.mark.parametrize("name", ["main", "gbe", "monotone"])
def test_symbolic_curve_consistency(name):
    c = C.catalog(name)
    assert c.check_involution()
    assert c.check_bergman_relation()


def test_unknown_curve_and_parameter():
    with pytest.raises(C.CurveError):
        C.catalog("nope")
    with pytest.raises(C.CurveError):
        C.catalog("gbe", {"v": 1})


def test_involution_fixes_x():
    c = C.catalog("main", VALUES["main"])
    w = V("w")
    sig = c.sigma.at("w")
    assert c.x.subs("w", sig) == c.x
    assert c.sigma.at("w").subs("w", sig) == w


# Gaussian curve at u = t = 1 and b = 0 counts gluings of polygons:
# Catalan numbers in genus 0 and the Harer-Zagier numbers 1, 10 in genus 1.


@pytest.fixture(scope="module")
def gauss():
    return RTR(C.catalog("gbe", dict(u=1, t=1)), K=6)


def test_gaussian_genus0_catalan(gauss):
    F = gauss.disc_expand(0, 1, 6)
    assert [F[(k,)] for k in (2, 4, 6)] == [ONE, Q(2), Q(5)]
    assert all(F[(k,)].is_zero() for k in (1, 3, 5))


def test_gaussian_genus1_harer_zagier(gauss):
    F = gauss.disc_expand(2, 1, 6)
    assert F[(4,)].subs("b", ZERO) == ONE
    assert F[(6,)].subs("b", ZERO) == Q(10)
    assert F[(2,)].is_zero()


def test_gaussian_total_gluings(gauss):
    # all gluings of a hexagon at b = 0: 5 + 10 = 5!! = 15
    tot = sum((gauss.disc_expand(g2, 1, 6)[(6,)].subs("b", ZERO) for g2 in (0, 2, 4)), ZERO)
    assert tot == Q(15)


def test_gaussian_cylinder(gauss):
    # planar two-boundary Gaussian counts: <tr M tr M> = 1, <tr M^2 tr M^2> = 2
    F = gauss.disc_expand(0, 2, 4)
    assert F[(1, 1)] == ONE
    assert F[(2, 2)] == Q(2)
    assert F[(1, 3)] == Q(3)


@pytest.fixture(scope="module")
def main_rtr():
    return RTR(C.catalog("main", VALUES["main"]), K=3)


@pytest.mark.parametrize("g2,n", [(0, 3), (1, 2), (2, 1), (1, 3), (2, 2), (0, 4)])
def test_structural_checks_hold(main_rtr, g2, n):
    main_rtr.table(g2, n, n)
    assert all(main_rtr.checks[(g2, n, n)].values())


def test_symmetry_of_full_correlator(main_rtr):
    W = main_rtr.omega(1, 3)
    for perm in itertools.permutations(range(3)):
        ren = {ZV[i]: ZV[p] for i, p in enumerate(perm)}
        assert W.rename(ren) == W


def test_odd_correlators_vanish_at_b0(main_rtr):
    for g2, n in [(1, 1), (1, 2), (3, 1)]:
        assert main_rtr.omega(g2, n).subs("b", ZERO).is_zero()


def test_b_degree_bounded(main_rtr):
    from refined_tr.ratfun import b_degree

    for g2, n in [(1, 2), (2, 2), (3, 1), (4, 1)]:
        assert b_degree(main_rtr.omega(g2, n)) <= g2


def test_no_residue_at_conjugate_points(main_rtr):
    c = main_rtr.curve
    W = main_rtr.omega(2, 1)
    for p in c.P_plus:
        assert residue_at(W, ZV[0], c.sigma.image(p)).is_zero()


def test_to_json_round_trip(main_rtr):
    from refined_tr.ratfun import Rat

    data = main_rtr.to_json(0, 3)
    assert Rat.from_json(data["expr"]) == main_rtr.omega(0, 3)


def test_disc_expand_rejects_large_parts(main_rtr):
    with pytest.raises(ValueError):
        main_rtr.disc_expand(0, 3, 4)
