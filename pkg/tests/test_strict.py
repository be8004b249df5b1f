import random

import pytest
from hypothesis import given, settings, strategies as st

from fixtures import CATEGORIES, GF, NONASSOC, STRICT2, Y2, Y3, two_category
from weakomega.globular import COD, DOM
from weakomega.magma import Bridge, Comp, Gen, Idn, enumerate_terms, term_boundary
from weakomega.strict import (FreeStrict, NotStrictTerm, law_rewrites, nf, nf_to_term, oracle_eq, random_term,
                              strict_eq, validate_strict)

F = Gen("f", 1)
STAR = Gen("*", 0)
A = Gen("a", 2)


def c0(*ts):
    out = ts[0]
    for t in ts[1:]:
        out = Comp(0, out, t)
    return out


@pytest.mark.parametrize("name", sorted(CATEGORIES))
def test_categories_are_strict(name):
    assert validate_strict(CATEGORIES[name]).ok


@pytest.mark.parametrize("name", sorted(STRICT2))
def test_strict_two_categories(name):
    assert validate_strict(STRICT2[name]).ok


def test_associativity_violation_witness():
    r = validate_strict(NONASSOC)
    assert "associativity" in r.kinds()
    assert any(v.witness == ("a", "a", "a") for v in r.violations if v.kind == "associativity")


def test_interchange_violation_named():
    broken = two_category(["*"], {"1*": ("*", "*")}, {"*": "1*"}, {},
                          {"11*": ("1*", "1*"), "s": ("1*", "1*")}, {"1*": "11*"},
                          {("s", "s"): "11*"}, {("s", "s"): "s"})
    r = validate_strict(broken)
    assert "interchange" in r.kinds()
    assert any(v.witness == ("s", "11*", "11*", "s") for v in r.violations if v.kind == "interchange")


def test_identity_law():
    assert nf(GF, Comp(0, Idn(STAR), F)) == nf(GF, F)


def test_two_leaf_classes():
    leaves = [F, Idn(STAR)]
    values = {nf(GF, Comp(0, a, b)) for a in leaves for b in leaves}
    assert values == {nf(GF, c0(F, F)), nf(GF, F), nf(GF, Idn(STAR))}


def test_interchange_law():
    left = Comp(0, Comp(1, A, A), Comp(1, A, A))
    right = Comp(1, Comp(0, A, A), Comp(0, A, A))
    assert nf(Y2, left) == nf(Y2, right)
    assert oracle_eq(Y2, left, right, size_bound=10) is True


def test_associativity():
    assert strict_eq(GF, c0(c0(F, F), F), Comp(0, F, c0(F, F)))
    assert oracle_eq(GF, c0(c0(F, F), F), Comp(0, F, c0(F, F)), size_bound=8) is True


def test_generator_count_is_invariant():
    assert not strict_eq(GF, c0(F, F), F)
    assert oracle_eq(GF, c0(F, F), F) is False


def test_identity_interchange():
    assert strict_eq(GF, Comp(0, Idn(F), Idn(F)), Idn(c0(F, F)))


def test_bridges_are_refused():
    with pytest.raises(NotStrictTerm):
        nf(GF, Bridge(c0(c0(F, F), F), c0(F, c0(F, F))))


def test_oracle_refuses_oversized_input():
    with pytest.raises(ValueError):
        oracle_eq(GF, c0(F, F, F, F, F), F, size_bound=8)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        strict_eq(GF, F, STAR)


def test_interchange_on_distinct_generators():
    g = Gen("g", 1)
    a = Gen("a", 2)
    whisker = Comp(0, a, Idn(g))
    assert strict_eq(Y3, whisker, Comp(1, whisker, Idn(c0(g, g))))
    assert strict_eq(Y3, Comp(0, Comp(1, a, Idn(g)), Comp(1, Idn(g), Idn(g))), whisker)
    assert not strict_eq(Y3, Comp(0, a, Idn(g)), Comp(0, Idn(F), a))


FIXTURES = [("GF", GF), ("Y2", Y2), ("Y3", Y3)]


@pytest.mark.parametrize("name,g", FIXTURES)
def test_boundaries_commute(name, g):
    for ts in enumerate_terms(g, 5).values():
        for t in ts:
            n = nf(g, t)
            for k in range(t.dim):
                for side in (DOM, COD):
                    assert n.boundary(side, k) == nf(g, term_boundary(g, t, side, k))


@pytest.mark.parametrize("name,g", FIXTURES)
def test_renormalization_is_idempotent(name, g):
    for ts in enumerate_terms(g, 6).values():
        for t in ts:
            n = nf(g, t)
            assert nf(g, nf_to_term(n)) == n


@pytest.mark.parametrize("name,g", FIXTURES)
def test_oracle_agreement_small(name, g):
    terms = [t for ts in enumerate_terms(g, 5).values() for t in ts]
    decided = 0
    for t1 in terms:
        for t2 in terms:
            if t1.dim != t2.dim:
                continue
            o = oracle_eq(g, t1, t2, size_bound=8)
            if o is not None:
                decided += 1
                assert o == strict_eq(g, t1, t2), (t1, t2)
    assert decided


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(FIXTURES), st.integers(0, 2 ** 32 - 1))
def test_single_rewrites_preserve_nf(fixture, seed):
    _, g = fixture
    rng = random.Random(seed)
    t = random_term(g, rng, 7)
    for s in law_rewrites(g, t, max_size=11):
        assert nf(g, s) == nf(g, t)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIXTURES), st.integers(0, 2 ** 32 - 1), st.integers(0, 2))
def test_composition_of_normal_forms(fixture, seed, i):
    _, g = fixture
    rng = random.Random(seed)
    a, b = random_term(g, rng, 5), random_term(g, rng, 5)
    if a.dim != b.dim or i >= a.dim:
        return
    if term_boundary(g, a, COD, i) != term_boundary(g, b, DOM, i):
        return
    assert nf(g, Comp(i, a, b)) == nf(g, a).compose(i, nf(g, b))


def test_free_strict_category_cells():
    C = FreeStrict(Y3)
    f = C.cell("f")
    assert C.dim(f) == 1
    assert C.comp(0, C.idn(C.cell("*")), f) == f
    assert C.is_identity(C.idn(f))
    assert not C.is_identity(C.cell("a"))
