from itertools import product

import pytest

from fixtures import (B1, B2, BICATEGORIES, CATEGORIES, CIso, GF, MONO2, NONASSOC, STRICT2, TERMINAL2,
                      WB1, category, diagonal, strict_bicategory, two_category)
from weakomega.constructions import (BicategoryData, ExtractionError, category_of, clique_quotient,
                                     composable_1cells, extract_bicategory, extract_category, hom_category,
                                     is_skeletal, same_span, stabilize, strict_as_weak, validate_bicategory,
                                     validate_category, weakify_bicategory)
from weakomega.magma import Comp, Gen, MagmaMorphism, enumerate_terms, evaluate, leaves
from weakomega.span import (BridgeTable, Span, cells_by_dim, diagonal_relation, penon_category,
                            validate_weak_omega_category)
from weakomega.strict import nf


def _categories_equal(cat, m):
    ref = category_of(m)
    return (set(cat.objects) == set(ref.objects) and cat.arrows == ref.arrows
            and cat.comp == ref.comp and cat.ident == ref.ident)


def test_hom_of_strict_two_category():
    h = hom_category(diagonal(B2), "x", "y")
    assert validate_weak_omega_category(h).ok
    assert sorted(h.x1.cells(0)) == ["f", "f'"]
    assert sorted(h.x1.cells(1)) == ["1f", "1f'", "t", "t'"]
    assert h.x1.comp(0, "t", "t'") == "1f"
    assert is_skeletal(h.x1, 1)
    # the third leg keeps every cell from dimension one up
    assert sorted(h.x3.cells(0)) == sorted(B2.cells(1))


def test_hom_of_penon_category():
    s = penon_category(GF, 4)
    star = Gen("*", 0)
    h = hom_category(s, star, star)
    zero = cells_by_dim(h.x1, 4)[0]
    expected = [t for ts in enumerate_terms(GF, 4).values() for t in ts if t.dim == 1]
    assert sorted(map(str, zero)) == sorted(map(str, expected))
    assert validate_weak_omega_category(h, 4).ok


def test_hom_needs_parallel_cells():
    with pytest.raises(ValueError):
        hom_category(diagonal(B2), "f", "1x")


def test_stabilize_up_shifts_generator():
    up = stabilize(diagonal(MONO2), "up")
    assert validate_weak_omega_category(up).ok
    assert "s" in up.x1.cells(3)
    for d in range(3):
        assert len(up.x1.cells(d)) == 1


@pytest.mark.parametrize("name", ["terminal2", "mono2", "mono2p"])
def test_down_after_up_is_identity(name):
    s = diagonal(STRICT2[name])
    assert same_span(stabilize(stabilize(s, "up"), "down"), s)


def test_stabilize_up_needs_one_object():
    with pytest.raises(ValueError, match="dimension 0"):
        stabilize(diagonal(B2), "up")


def test_stabilize_down_needs_three():
    with pytest.raises(ValueError):
        stabilize(diagonal(MONO2), "down")


@pytest.mark.parametrize("name", ["terminal2", "mono2", "mono2p"])
def test_stabilize_is_bijective_and_keeps_verdicts(name):
    s = diagonal(STRICT2[name])
    up = stabilize(s, "up")
    assert len(up.x1.all_cells()) == len(s.x1.all_cells()) + 1
    for d in range(s.x1.trunc_dim + 1):
        assert up.x1.cells(d + 1) == s.x1.cells(d)
    assert validate_weak_omega_category(up).ok == validate_weak_omega_category(s).ok


def test_stabilize_keeps_a_failing_verdict():
    s = diagonal(MONO2)
    broken = Span(s.x1, s.x2, s.x3, s.lam, s.rho, s.kappa, BridgeTable(s.x2, []))
    assert not validate_weak_omega_category(broken).ok
    assert not validate_weak_omega_category(stabilize(broken, "up")).ok


def test_strict_as_weak_rejects_non_strict():
    with pytest.raises(ValueError):
        strict_as_weak(NONASSOC)
    assert validate_weak_omega_category(strict_as_weak(TERMINAL2)).ok


@pytest.mark.parametrize("name", sorted(CATEGORIES))
def test_extract_category_retracts(name):
    m = CATEGORIES[name]
    cat, log = extract_category(strict_as_weak(m))
    assert _categories_equal(cat, m)
    assert validate_category(cat).ok
    assert all(step[2][-1][0] == "project" for step in log)


def test_extract_category_broken_splitting():
    swap = {"x": "y", "y": "x", "1x": "1y", "1y": "1x", "f": "g", "g": "f"}
    one = MagmaMorphism(CIso, CIso, {x: x for x in CIso.all_cells()})
    s = Span(CIso, CIso, CIso, one, MagmaMorphism(CIso, CIso, swap), one, diagonal_relation(CIso))
    with pytest.raises(ExtractionError) as e:
        extract_category(s)
    assert e.value.instance


def _truncated_powers(k):
    """f^0 .. f^k with f^a f^b = f^min(a+b, k)."""
    names = ["f{}".format(n) for n in range(k + 1)]
    arrows = {x: ("*", "*") for x in names}
    comp = {(names[a], names[b]): names[min(a + b, k)] for a in range(k + 1) for b in range(k + 1)}
    comp = {key: v for key, v in comp.items() if "f0" not in key}
    return category(["*"], arrows, {"*": "f0"}, comp)


def test_extract_category_of_bounded_stretching_quotient():
    bound = 5
    terms = [t for ts in enumerate_terms(GF, bound, max_dim=1).values() for t in ts if t.dim == 1]
    classes = {nf(GF, t) for t in terms}
    k = max(len(n.generators()) for n in classes)
    m = _truncated_powers(k)
    cat, _ = extract_category(strict_as_weak(m))
    # one arrow per normal-form class met at the bound
    assert len(cat.arrows) == len(classes)

    def cls(t):
        return "f{}".format(min(len([g for g in leaves(t) if g.cell == "f"]), k))

    for t in terms:
        assert evaluate(t, m, lambda c: "f1" if c == "f" else "f0" if c == "1.*" else c) == cls(t)
    for a, b in product(terms, repeat=2):
        if a.size + b.size + 1 <= bound:
            assert cat.comp[cls(a), cls(b)] == cls(Comp(0, a, b))


def test_extract_bicategory_of_strict():
    for name, m in STRICT2.items():
        b, _ = extract_bicategory(strict_as_weak(m))
        for table in (b.assoc, b.left, b.right):
            assert all(m.is_identity(c) for c in table.values()), name


def test_extract_bicategory_of_wb1():
    b, log = extract_bicategory(WB1)
    assert validate_bicategory(b).ok
    m = WB1.x1
    assert any(not m.is_identity(c) for c in b.assoc.values())
    # every coherence cell is the λ-image of a bridge
    for kind, cells, steps in log:
        if kind in ("associator", "left unitor", "right unitor"):
            bridged = [s for s in steps if s[0] == "bridge"][0][1]
            assert WB1.bridge(m.dom(bridged), m.cod(bridged)) == bridged


def test_extract_bicategory_rejects_three_dimensional():
    up = stabilize(diagonal(MONO2), "up")
    with pytest.raises(ValueError):
        extract_bicategory(up)


@pytest.mark.parametrize("name", sorted(BICATEGORIES))
def test_weakify_round_trip(name):
    b = BICATEGORIES[name]
    assert validate_bicategory(b).ok
    w = weakify_bicategory(b, 7)
    assert validate_weak_omega_category(w, 7).ok
    back, _ = extract_bicategory(w)
    assert back.magma is b.magma
    assert back.assoc == b.assoc and back.left == b.left and back.right == b.right


def test_weakify_strict_gives_identities():
    w = weakify_bicategory(strict_bicategory(B2), 6)
    back, _ = extract_bicategory(w)
    assert all(B2.is_identity(c) for c in back.assoc.values())


def _word(t):
    return tuple(g.cell for g in leaves(t) if g.dim == 1 and g.cell != "I")


def test_weakify_bridges_follow_coherence():
    bound = 5
    w = weakify_bicategory(B1, bound)
    ones = cells_by_dim(w.x2, bound)[1]
    triples = [t for t in w.R.triples({1: ones}) if w.x2.dim(t[0]) == 1]
    # coherence: parallel 1-terms with the same generator word are bridged exactly once
    expected = sum(1 for u, v in product(ones, repeat=2) if _word(u) == _word(v))
    assert len(triples) == expected
    assert len({(a, b) for a, b, _ in triples}) == len(triples)


def test_weakify_degenerate():
    m = two_category(["*"], {"1*": ("*", "*")}, {"*": "1*"}, {}, {"11*": ("1*", "1*")}, {"1*": "11*"}, {}, {})
    w = weakify_bicategory(strict_bicategory(m), 5)
    assert validate_weak_omega_category(w, 5).ok


def test_weakify_rejects_broken_bicategory():
    b = BicategoryData(B1.magma, dict(B1.assoc), dict(B1.left), dict(B1.right))
    b.assoc["a", "a", "a"] = "1z" if B1.assoc["a", "a", "a"] == "t" else "t"
    assert not validate_bicategory(b).ok
    with pytest.raises(ValueError):
        weakify_bicategory(b)


def test_b1_associator_is_not_trivial():
    assert any(c == "t" for c in B1.assoc.values())
    assert all(c in ("1I", "1a", "1z", "t") for c in B1.assoc.values())


@pytest.mark.parametrize("name", sorted(CATEGORIES))
def test_clique_lemma(name):
    cat = category_of(CATEGORIES[name])
    quotient, functor, r = clique_quotient(cat)
    iso_counts = [sum(1 for f in cat.hom(x, y) for g in cat.hom(y, x)
                      if cat.comp[f, g] == cat.ident[x] and cat.comp[g, f] == cat.ident[y])
                  for x, y in product(cat.objects, repeat=2)]
    if max(iso_counts) > 1:
        assert r.kinds() == ["not a clique"]
        return
    assert r.ok
    assert validate_category(quotient).ok
    # full and faithful: each hom set maps bijectively
    for x, y in product(cat.objects, repeat=2):
        images = {functor(f) for f in cat.hom(x, y)}
        assert len(images) == len(cat.hom(x, y))


def test_two_cells_compose_in_bicategory_fixtures():
    for b in BICATEGORIES.values():
        m = b.magma
        for f, g in composable_1cells(m, 2):
            assert m.comp(0, f, g) is not None
