import math
import warnings
from fractions import Fraction

import mpmath
import pytest

from refined_tr import curve as C
from refined_tr import ensembles as EN
from refined_tr import jack as J
from refined_tr.rtr import RTR

warnings.filterwarnings("ignore", module="scipy")


def test_gaussian_second_moment_one_particle():
    for beta in (Fraction(1), Fraction(2), Fraction(4)):
        spec = EN.EnsembleSpec("gbe", beta, 1)
        assert EN.exact_one_particle(spec, 2) == 2 / beta
        assert abs(EN.numeric_oracle(spec, (2,))["value"] - mpmath.mpf(2) / float(beta)) < 1e-20


def test_jacobi_first_moment_is_beta_ratio():
    spec = EN.EnsembleSpec("jbe", Fraction(1), 1)
    a, b = spec.exponents()
    # Euler Beta integral: B(a+1, b) / B(a, b) = a / (a + b)
    with mpmath.workdps(40):
        ma, mb = mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(b.numerator) / b.denominator
        beta_ratio = mpmath.beta(ma + 1, mb) / mpmath.beta(ma, mb)
    assert EN.exact_one_particle(spec, 1) == Fraction(a) / (a + b)
    assert abs(EN.numeric_oracle(spec, (1,))["value"] - beta_ratio) < 1e-20


def test_laguerre_moment_is_gamma_ratio():
    spec = EN.EnsembleSpec("lbe", Fraction(2), 1)
    (a,) = spec.exponents()
    # weight l^{a-1} e^{-l}, N beta / 2 = 1
    assert EN.exact_one_particle(spec, 2) == Fraction(math.gamma(a + 2) / math.gamma(a)).limit_denominator(10**6)


@pytest.mark.parametrize("model", EN.MODELS)
def test_zeroth_moment_is_N(model):
    spec = EN.EnsembleSpec(model, Fraction(2), 2)
    g, f = EN._moment_integrand(spec, (0,))
    Z, _ = EN._integrate(spec, g)
    M, _ = EN._integrate(spec, lambda ls: g(ls) * f(ls, (0,)))
    assert abs(M / Z - 2) < 1e-10


@pytest.mark.parametrize("beta", [Fraction(1), Fraction(2), Fraction(4), Fraction(2, 3)])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_gaussian_one_particle_series_terminates(beta, k):
    spec = EN.EnsembleSpec("gbe", beta, 1)
    pred = EN.predict(spec, (k,), 2 * k)
    assert pred.value() == EN.exact_one_particle(spec, k)


@pytest.mark.parametrize("beta", [Fraction(1), Fraction(4)])
def test_laguerre_one_particle_series_terminates(beta):
    spec = EN.EnsembleSpec("lbe", beta, 1)
    for k in (1, 2, 3):
        assert EN.predict(spec, (k,), 2 * k).value() == EN.exact_one_particle(spec, k)


def test_beta_duality_flips_b():
    # beta -> 4/beta sends b -> -b: the b-even part of every term is unchanged
    for g2 in range(0, 4):
        F = EN.correlator_terms(EN.EnsembleSpec("gbe", Fraction(1), 1), (4,), 3)[g2]
        even = sum((c * J.V("b") ** int(j) for j, c in F.coeffs_in("b").items() if int(j) % 2 == 0), J.ZERO)
        odd = F - even
        assert F.subs("b", -J.V("b")) == even - odd


def test_gaussian_prediction_matches_gbe_curve():
    spec = EN.EnsembleSpec("gbe", Fraction(2), 3)
    r = RTR(C.catalog("gbe", dict(u=1, t=1)), K=4)
    terms = EN.correlator_terms(spec, (4,), 2)
    assert all(terms[g2] == r.disc_expand(g2, 1, 4)[(4,)] for g2 in range(3))


@pytest.mark.parametrize("k", [2, 4])
def test_gaussian_eigenvalue_scaling(k):
    # t rescales the eigenvalues, so <tr M^k> picks up t^k
    t = Fraction(1, 4)
    base = EN.predict(EN.EnsembleSpec("gbe", Fraction(2), 2), (k,), 2).value()
    scaled = EN.predict(EN.EnsembleSpec("gbe", Fraction(2), 2, t=t), (k,), 2).value()
    assert scaled == base * t ** k
    oracle = EN.numeric_oracle(EN.EnsembleSpec("gbe", Fraction(2), 2, t=t), (k,))["value"]
    assert abs(oracle - float(scaled)) < 1e-12


@pytest.mark.parametrize("model", EN.MODELS)
def test_zero_t_limit(model):
    spec = EN.EnsembleSpec(model, Fraction(2), 2, t=Fraction(0))
    assert EN.predict(spec, (2,), 2).value() == 0
    assert EN.numeric_oracle(spec, (2,))["value"] == 0


@pytest.mark.parametrize("model", EN.MODELS)
def test_compare_small(model):
    spec = EN.EnsembleSpec(model, Fraction(1), 2)
    rows = EN.compare(spec, 2, 2)
    assert all(r.ok for r in rows)
    assert all(r.oracle_rel_error < 1e-10 for r in rows)


def test_compare_gaussian_exact_at_beta2():
    # at beta = 2, N = 1 the expansion for k = 4 stops at genus 2
    spec = EN.EnsembleSpec("gbe", Fraction(2), 1)
    row = EN.compare(spec, 4, 4)[-1]
    assert row.ks == (4,)
    assert row.residual < 1e-25


def test_two_point_cumulant():
    spec = EN.EnsembleSpec("gbe", Fraction(2), 2)
    rows = EN.compare(spec, 2, 2, n=2)
    assert all(r.ok for r in rows)


def test_monte_carlo_cross_check():
    spec = EN.EnsembleSpec("gbe", Fraction(1), 2)
    rep = EN.monte_carlo_check(spec, 2, samples=20000, seed=11)
    assert rep["ok"]
    assert rep["stderr"] < 0.05


def test_sampler_reproducible():
    spec = EN.EnsembleSpec("gbe", Fraction(4), 3)
    a = EN.sample_tridiagonal(spec, 10, seed=5)
    b = EN.sample_tridiagonal(spec, 10, seed=5)
    assert (a == b).all()


def test_invalid_specs():
    with pytest.raises(EN.EnsembleError):
        EN.EnsembleSpec("gue", Fraction(1), 1)
    with pytest.raises(EN.EnsembleError):
        EN.EnsembleSpec("gbe", Fraction(-1), 1)
    with pytest.raises(EN.EnsembleError):
        EN.predict(EN.EnsembleSpec("gbe", Fraction(1), 1), (0,), 2)
