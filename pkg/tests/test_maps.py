import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refined_tr import jack as J
from refined_tr import maps as MP
from refined_tr.ratfun import Rat

MAPS = list(MP.generate(3, 4)) + list(MP.generate(4, 4))
small_maps = st.sampled_from(MAPS)
weights = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=0, max_size=2)


@settings(max_examples=60, deadline=None)
@given(small_maps, st.sets(st.integers(1, 4)))
def test_faces_invariant_under_vertex_flips(m, verts):
    verts = [v for v in verts if v <= m.d]
    f = MP.flip_vertices(m, verts)
    a, b = MP.face_report(m), MP.face_report(f)
    assert a.profile == b.profile and a.g2 == b.g2
    assert MP.is_orientable(m) == MP.is_orientable(f)


@settings(max_examples=60, deadline=None)
@given(small_maps)
def test_nu_invariant_under_whole_flip(m):
    assert MP.nu(MP.flip_vertices(m, range(1, m.d + 1))) == MP.nu(m)


@settings(max_examples=60, deadline=None)
@given(small_maps)
def test_orientable_maps_have_nu_zero(m):
    if MP.is_orientable(m):
        assert MP.nu(m) == 0


@settings(max_examples=60, deadline=None)
@given(small_maps)
def test_euler_characteristic(m):
    rep = MP.face_report(m)
    assert m.d - m.r + len(rep.degrees) == 2 - rep.g2
    assert sum(rep.degrees) == m.d


@settings(max_examples=40, deadline=None)
@given(small_maps, weights, weights)
def test_coloring_sum_matches_brute_force(m, strict, weak):
    strict = [Rat.coerce(x) for x in strict]
    weak = [Rat.coerce(x) for x in weak]
    assert MP.coloring_sum(m, strict, weak) == MP.coloring_sum_brute(m, strict, weak)


@settings(max_examples=40, deadline=None)
@given(small_maps)
def test_remove_then_insert_is_identity(m):
    smaller, (ca, cb) = MP.remove_last_edge(m)
    a, b = m.edges[-1]
    assert MP.insert_edge(smaller, a, b, m.twists[-1]) == m


def test_generation_is_monotone_and_connected():
    for m in MAPS:
        bs = [b for _, b in m.edges]
        assert bs == sorted(bs)
        assert MP.components(m) == 1


def test_klein_bottle_example():
    rep = MP.klein_example_audit()
    assert rep["ok"]
    assert rep["nu_values"] == [1]
    assert all(x["faces"] == [1, 2] and x["genus2"] == 2 and x["genus"] == "1" for x in rep["matches"])


def _naive_monotone_counts(d: int, r: int) -> Counter:
    """Products of monotone transitive transposition tuples, by plain
    enumeration of all r-tuples."""
    trans = [(a, b) for b in range(d) for a in range(b)]
    out = Counter()
    for tup in itertools.product(trans, repeat=r):
        if any(tup[i][1] > tup[i + 1][1] for i in range(r - 1)):
            continue
        perm = list(range(d))
        comp = list(range(d))
        for a, b in tup:
            perm = [perm[{a: b, b: a}.get(i, i)] for i in range(d)]
            ca, cb = comp[a], comp[b]
            comp = [ca if c == cb else c for c in comp]
        if len(set(comp)) != 1:
            continue
        out[MP.cycle_type(perm)] += 1
    return out


@pytest.mark.parametrize("d,r", [(2, 1), (2, 3), (3, 2), (3, 4), (4, 3), (4, 5)])
def test_monotone_factorizations_naive(d, r):
    assert MP.monotone_factorizations(d, r) == _naive_monotone_counts(d, r)


def test_symbolic_maps_match_tau():
    p = J.bind_weight("monotone")
    phi = J.log_tau("monotone", p, 3, 4)
    for g2, mu in [(1, (1, 2)), (0, (1, 2)), (2, (3,))]:
        ref = J.extract_F(phi, g2, len(mu), [mu])[J.mono(mu)]
        assert MP.fgn_from_maps(g2, mu, "monotone", p) == ref


def test_boundary_refine_without_internal_faces():
    vals = dict(u1=Fraction(2, 3), u2=Fraction(5, 7), v=Fraction(3, 11), t=Fraction(1, 2))
    p = J.bind_weight("main", vals)
    F0 = MP.boundary_refine(0, (2,), 1, 0, "main", p)
    assert F0 == MP.fgn_from_maps(0, (2,), "main", p)
    assert "eps" not in F0.variables()


def test_monotone_brute_at_b0():
    p = J.bind_weight("monotone", dict(v=Fraction(3, 11), t=Fraction(1, 2)))
    phi = J.log_tau("monotone", p, 3, 6)
    for g2, mu in [(0, (1, 2)), (2, (3,)), (0, (1, 1, 1))]:
        ref = J.extract_F(phi, g2, len(mu), [mu])[J.mono(mu)].subs("b", Rat.coerce(0))
        assert MP.monotone_fgn_brute(g2, mu, p) == ref
