"""Pseudo-functors between spans, internal equivalences, tameness and Π."""
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from weakref import WeakKeyDictionary

from networkx.utils import UnionFind

from .constructions import (_h, _v, composable_1cells, extract_bicategory,
                            hom_category, inverse_2cell)
from .globular import COD, DOM, FormalId, boundary, check_graph_map, identity_tower, is_parallel
from .magma import MagmaMorphism, compose_morphisms, identity_morphism
from .report import Report
from .span import cells_by_dim, composable_pairs


# pseudo-functors

class PseudoFunctor:
    """Triple of globular maps between the legs of two spans."""

    def __init__(self, source, target, f1, f2, f3, name=""):
        self.source, self.target = source, target
        self.f1, self.f2, self.f3 = f1, f2, f3
        self.name = name

    def __repr__(self):
        return "PseudoFunctor({})".format(self.name or id(self))


def as_pseudo(F):
    """An omega functor seen as a pseudo-functor."""
    return PseudoFunctor(F.source, F.target, F.f1, F.f2, F.f3)


def identity_pseudo(s):
    return PseudoFunctor(s, s, identity_morphism(s.x1), identity_morphism(s.x2),
                         identity_morphism(s.x3), "id")


def diagonal_pseudo(s, t, mapping, name=""):
    """Pseudo-functor between diagonal spans given by one cell map on all legs."""
    f = MagmaMorphism(s.x1, t.x1, mapping)
    return PseudoFunctor(s, t, f, f, f, name)


def _flat(cells):
    return [x for cs in cells.values() for x in cs]


def validate_pseudo_functor(F, bound=None):
    X, Y = F.source, F.target
    r = Report(bound=None if X.finite else bound)
    c1, c2 = cells_by_dim(X.x1, bound), cells_by_dim(X.x2, bound)
    check_graph_map(F.f1, X.x1, Y.x1, _flat(c1), r, "F1: ", preserve_ids=False)
    check_graph_map(F.f2, X.x2, Y.x2, _flat(c2), r, "F2: ", preserve_ids=False)
    if getattr(X.x3, "finite", False):
        sub = check_graph_map(F.f3, X.x3, Y.x3, X.x3.all_cells(), Report(), "F3: ")
        r.extend(sub, "condition 1 ")
    if not r.ok:
        return r
    for cs in c2.values():
        for x in cs:
            if Y.lam(F.f2(x)) != F.f1(X.lam(x)):
                r.add("condition 2", "lambda square does not commute", x)
            if Y.kappa(F.f2(x)) != F.f3(X.kappa(x)):
                r.add("condition 2", "kappa square does not commute", x)
    for j in range(1, max(c2, default=0) + 1):
        for a, b in composable_pairs(X.x2, c2, j - 1, j, bound):
            ab = X.x2.comp(j - 1, a, b)
            if ab is None:
                continue
            img = Y.x2.comp(j - 1, F.f2(a), F.f2(b))
            if img is None:
                r.add("condition 3", "images are not composable", a, b)
            elif Y.kappa(img) != Y.kappa(F.f2(ab)):
                r.add("condition 3", "kappa does not equalize F2a⊙F2b and F2(a⊙b)", a, b)
    return r


def compose_pseudo(G, F):
    """G after F."""
    if F.target is not G.source:
        raise ValueError("target of {!r} is not the source of {!r}".format(F, G))
    return PseudoFunctor(F.source, G.target, compose_morphisms(G.f1, F.f1),
                         compose_morphisms(G.f2, F.f2), compose_morphisms(G.f3, F.f3),
                         "{}.{}".format(G.name or "G", F.name or "F"))


def _finite_map(f, source, target):
    if getattr(source, "finite", False):
        return MagmaMorphism(source, target, {x: f(x) for x in source.all_cells()})
    return MagmaMorphism(source, target, f)


def theta(s, h, a, side="right"):
    """Composition with the i-cell h: b -> c over its (i-1)-boundary.

    Right composition maps X(a,b) to X(a,c); left composition maps X(c,a) to X(b,a).
    """
    x1 = s.x1
    i = x1.dim(h)
    if i < 1:
        raise ValueError("h must have positive dimension")
    b, c = x1.dom(h), x1.cod(h)
    if x1.dim(a) != i - 1 or not is_parallel(x1, a, b):
        raise ValueError("{} is not parallel to the boundary {} of {}".format(a, b, h))
    if side == "right":
        src, tgt = hom_category(s, a, b), hom_category(s, a, c)
    elif side == "left":
        src, tgt = hom_category(s, c, a), hom_category(s, b, a)
    else:
        raise ValueError("side must be right or left")
    h2 = s.rho(h)
    h3 = s.kappa(h2)

    def along(m, cell, partial=False):
        def go(f):
            tower = identity_tower(m, cell, m.dim(f))
            out = m.comp(i - 1, f, tower) if side == "right" else m.comp(i - 1, tower, f)
            if out is None:
                if partial:
                    return f
                raise ValueError("{} is not composable with the identities on {}".format(f, cell))
            return out
        return go

    f1 = _finite_map(along(x1, h), src.x1, tgt.x1)
    f2 = _finite_map(along(s.x2, h2), src.x2, tgt.x2)
    # the third hom leg holds every cell; those off the boundary of h3 are fixed
    f3 = _finite_map(along(s.x3, h3, partial=True), src.x3, tgt.x3)
    return PseudoFunctor(src, tgt, f1, f2, f3, "theta({},{})".format(h, side))


def restrict_functor(F, a, b):
    """F(a,b): X(a,b) -> Y(F1 a, F1 b)."""
    X, Y = F.source, F.target
    if X.x1.dim(a) != X.x1.dim(b) or not is_parallel(X.x1, a, b):
        raise ValueError("cells {} and {} are not parallel".format(a, b))
    src, tgt = hom_category(X, a, b), hom_category(Y, F.f1(a), F.f1(b))
    return PseudoFunctor(src, tgt, _finite_map(F.f1, src.x1, tgt.x1),
                         _finite_map(F.f2, src.x2, tgt.x2), _finite_map(F.f3, src.x3, tgt.x3),
                         "{}({},{})".format(F.name or "F", a, b))


# coherence data of a pseudo-functor between 2-skeletal spans

@dataclass
class CoherenceData:
    """``comp[f, g]``: F1f ⊙ F1g => F1(fg); ``ident[a]``: F1(id a) => id(F1 a)."""
    comp: dict
    ident: dict
    report: Report


def homomorphism_coherence(F):
    X, Y = F.source, F.target
    pre = validate_pseudo_functor(F)
    if not pre.ok:
        raise ValueError("not a pseudo-functor: {}".format(pre.violations[0]))
    bx, _ = extract_bicategory(X)
    by, _ = extract_bicategory(Y)
    m, n = X.x1, Y.x1
    F1 = F.f1
    r = Report()
    comp, ident = {}, {}
    for f, g in composable_1cells(m, 2):
        u = Y.x2.comp(0, F.f2(X.rho(f)), F.f2(X.rho(g)))
        v = F.f2(X.rho(m.comp(0, f, g)))
        c = None if u is None else Y.bridge(u, v)
        if c is None:
            r.add("missing bridge", "no bridge for the composite pair", f, g)
            continue
        comp[f, g] = Y.lam(c)
    for a in m.cells(0):
        c = Y.bridge(F.f2(X.x2.idn(X.rho(a))), Y.x2.idn(F.f2(X.rho(a))))
        if c is None:
            r.add("missing bridge", "no bridge for the identity pair", a)
            continue
        ident[a] = Y.lam(c)
    if not r.ok:
        return CoherenceData(comp, ident, r)

    inv = {}
    for key, x, dom, cod in ([(k, x, _h(n, F1(k[0]), F1(k[1])), F1(m.comp(0, *k))) for k, x in comp.items()]
                             + [((a,), x, F1(m.idn(a)), n.idn(F1(a))) for a, x in ident.items()]):
        if n.dom(x) != dom or n.cod(x) != cod:
            r.add("boundary", "coherence cell has the wrong boundary", *key)
        y = inverse_2cell(n, x)
        if y is None:
            r.add("invertible", "coherence cell is not invertible", *key)
        inv[x] = y
    if not r.ok:
        return CoherenceData(comp, ident, r)

    idn = n.idn
    by_src = defaultdict(list)
    for x in m.cells(2):
        by_src[m.dom(x)].append(x)
    for f, g in composable_1cells(m, 2):
        for x, y in product(by_src[f], by_src[g]):
            f2, g2 = m.cod(x), m.cod(y)
            one = _v(n, _h(n, F1(x), F1(y)), comp[f2, g2])
            two = _v(n, comp[f, g], F1(_h(m, x, y)))
            if one != two:
                r.add("naturality", "phi is not natural", x, y)
    for f, g, h in composable_1cells(m, 3):
        Ff, Fg, Fh = F1(f), F1(g), F1(h)
        one = _v(n, _v(n, _h(n, idn(Ff), comp[g, h]), comp[f, m.comp(0, g, h)]), F1(bx.assoc[f, g, h]))
        two = _v(n, _v(n, by.assoc[Ff, Fg, Fh], _h(n, comp[f, g], idn(Fh))), comp[m.comp(0, f, g), h])
        if one != two:
            r.add("hexagon", "associativity axiom fails", f, g, h)
    for f in m.cells(1):
        s, t = m.dom(f), m.cod(f)
        one = _v(n, _v(n, _h(n, inv[ident[s]], idn(F1(f))), comp[m.idn(s), f]), F1(bx.left[f]))
        if one != by.left[F1(f)]:
            r.add("unit", "left unit axiom fails", f)
        one = _v(n, _v(n, _h(n, idn(F1(f)), inv[ident[t]]), comp[f, m.idn(t)]), F1(bx.right[f]))
        if one != by.right[F1(f)]:
            r.add("unit", "right unit axiom fails", f)

    for (f, g), x in comp.items():
        if _h(n, F1(f), F1(g)) == F1(m.comp(0, f, g)) and x != idn(F1(m.comp(0, f, g))):
            r.add("properness 1", "strictly preserved composite with non-identity phi", f, g)
    for a, x in ident.items():
        if idn(F1(a)) == F1(m.idn(a)) and x != idn(F1(m.idn(a))):
            r.add("properness 2", "strictly preserved identity with non-identity phi", a)
    groups = defaultdict(list)
    for (f, g), x in comp.items():
        groups[m.comp(0, f, g), _h(n, F1(f), F1(g))].append(((f, g), x))
    for members in groups.values():
        (k0, x0) = members[0]
        for k, x in members[1:]:
            if x != x0:
                r.add("properness 3", "equal composites with different phi", *k0, *k)
    groups = defaultdict(list)
    for a, x in ident.items():
        groups[F1(a), F1(m.idn(a))].append((a, x))
    for members in groups.values():
        for a, x in members[1:]:
            if x != members[0][1]:
                r.add("properness 4", "identified objects with different phi", members[0][0], a)
    return CoherenceData(comp, ident, r)


# elementary equivalences

class SearchBudget(Exception):
    pass


def _level_pairs(level, k):
    """Distinct pairs that the free clique bridges: all pairs at level 0, parallel ones above."""
    if k == 0:
        return [(p, q) for p in level for q in level if p != q]
    groups = defaultdict(list)
    for e in level:
        groups[e[1], e[2]].append(e)
    return [(p, q) for g in groups.values() for p in g for q in g if p != q]


class _Closure:
    """Images of the free clique on two objects, labelled by their boundary images."""

    def __init__(self, m, shift, limit):
        self.m, self.shift, self.limit = m, shift, limit

    def bnd(self, e, side, j, k):
        while k > j:
            e = e[1] if side == DOM else e[2]
            k -= 1
        return e

    def compose(self, j, a, b, k):
        cell = self.m.comp(j + self.shift, a[0], b[0])
        if cell is None:
            return None
        if j == k - 1:
            return (cell, a[1], b[2])
        d, c = self.compose(j, a[1], b[1], k - 1), self.compose(j, a[2], b[2], k - 1)
        if d is None or c is None:
            return None
        return (cell, d, c)

    def close(self, gens, k):
        out = set(gens)
        todo = list(out)
        while todo:
            a = todo.pop()
            for b in list(out):
                for j in range(k):
                    for x, y in ((a, b), (b, a)):
                        if self.bnd(x, COD, j, k) != self.bnd(y, DOM, j, k):
                            continue
                        c = self.compose(j, x, y, k)
                        if c is None:
                            raise LookupError
                        if c not in out:
                            out.add(c)
                            todo.append(c)
                            if len(out) > self.limit:
                                raise SearchBudget
        return out


def clique_witness(m, f, budget=20000, limit=4000):
    """Images of the generating bridges of the free clique on two objects with c(1,2) -> f.

    Returns a list of dicts, one per level, mapping bridged pairs to chosen
    cells, or None when no assignment exists.  Raises ``SearchBudget`` when
    the search is cut off.
    """
    i = m.dim(f)
    shift = i - 1
    top = m.trunc_dim - shift
    cl = _Closure(m, shift, limit)
    between = defaultdict(list)
    for d in range(i, m.trunc_dim + 1):
        for z in m.cells(d):
            between[m.dom(z), m.cod(z)].append(z)
    x, y = (m.dom(f), 1), (m.cod(f), 2)
    spent = [0]

    def search(level, k):
        pairs = _level_pairs(level, k)
        if k == top:
            return [] if not pairs else None
        options = []
        for p, q in pairs:
            if k == 0 and (p, q) == (x, y):
                options.append([f])
            else:
                options.append(between[p[0], q[0]])
        ids = [(m.idn(e[0]), e, e) for e in level]
        for choice in product(*options):
            spent[0] += 1
            if spent[0] > budget:
                raise SearchBudget
            gens = ids + [(z, p, q) for (p, q), z in zip(pairs, choice)]
            try:
                nxt = cl.close(gens, k + 1)
            except LookupError:
                continue
            rest = search(nxt, k + 1)
            if rest is not None:
                return [dict(zip(pairs, choice))] + rest
        return None

    return search([x, y], 0)


# internal equivalences

@dataclass
class EquivTable:
    """Graded sets of a finite magma; each member's witness says why it was admitted.

    Witnesses: ("identity",), ("clique", levels), ("composite", j, a, b) and
    ("quasi-inverse", g, h, h2).  ``strata[i]`` is S_{i+1}.
    """
    magma: object
    el: dict
    strata: list
    eq: dict
    contr: dict
    witness: dict = field(default_factory=dict)
    stratum_of: dict = field(default_factory=dict)
    fixpoint: bool = True
    cut_off: list = field(default_factory=list)

    def __contains__(self, x):
        if isinstance(x, FormalId):
            return True
        return x in self.eq.get(self.magma.dim(x), ())

    def is_el(self, x):
        return isinstance(x, FormalId) or x in self.el.get(self.magma.dim(x), ())

    def in_stratum(self, x, i):
        """Membership in S_i; beyond the last computed stratum the fixpoint is used."""
        if isinstance(x, FormalId):
            return True
        s = self.strata[min(i, len(self.strata)) - 1]
        return x in s.get(self.magma.dim(x), ())

    def report(self):
        r = Report()
        if not self.fixpoint:
            r.notes.append("stopped before a fixpoint after {} strata".format(len(self.strata)))
        for x in self.cut_off:
            r.notes.append("clique search cut off for {}; Eq is a lower bound".format(x))
        return r


def _closure(m, members, witness):
    """Close graded sets under every composition; new members get composite witnesses."""
    out = {d: set(xs) for d, xs in members.items()}
    for d in range(1, m.trunc_dim + 1):
        cur = out.setdefault(d, set())
        todo = list(cur)
        while todo:
            a = todo.pop()
            for b in list(cur):
                for j in range(d):
                    for x, y in ((a, b), (b, a)):
                        if boundary(m, x, COD, j) != boundary(m, y, DOM, j):
                            continue
                        c = m.comp(j, x, y)
                        if c is not None and c not in cur:
                            cur.add(c)
                            todo.append(c)
                            witness.setdefault(c, ("composite", j, x, y))
    return out


def _quasi_inverses(m, S):
    """T(S): cells with a quasi-inverse g and witnesses h, h' in S."""
    found = {}
    for k in range(1, m.trunc_dim + 1):
        higher = defaultdict(list)
        for h in S.get(k + 1, ()):
            higher[m.dom(h), m.cod(h)].append(h)
        for f in m.cells(k):
            for g in m.cells(k):
                if m.dom(g) != m.cod(f) or m.cod(g) != m.dom(f):
                    continue
                fg, gf = m.comp(k - 1, f, g), m.comp(k - 1, g, f)
                if fg is None or gf is None:
                    continue
                one, two = m.idn(m.dom(f)), m.idn(m.cod(f))
                if k == m.trunc_dim:
                    if fg == one and gf == two:
                        found[f] = ("quasi-inverse", g, m.idn(fg), m.idn(gf))
                        break
                    continue
                hs, hs2 = higher.get((fg, one)), higher.get((gf, two))
                if hs and hs2:
                    found[f] = ("quasi-inverse", g, hs[0], hs2[0])
                    break
    return found


_TABLES = WeakKeyDictionary()


def compute_eq(m, max_rounds=20, budget=20000):
    key = (max_rounds, budget)
    cached = _TABLES.get(m, {}).get(key)
    if cached is not None:
        return cached
    witness = {}
    el = {d: set() for d in range(m.trunc_dim + 1)}
    cut = []
    for d in range(1, m.trunc_dim + 1):
        for x in m.cells(d):
            if m.is_identity(x):
                el[d].add(x)
                witness[x] = ("identity",)
                continue
            try:
                w = clique_witness(m, x, budget)
            except SearchBudget:
                cut.append(x)
                continue
            if w is not None:
                el[d].add(x)
                witness[x] = ("clique", w)
    strata = [_closure(m, el, witness)]
    fixpoint = False
    while len(strata) < max_rounds:
        S = strata[-1]
        T = _quasi_inverses(m, S)
        grown = {d: set(xs) for d, xs in S.items()}
        for x, w in T.items():
            if x not in grown[m.dim(x)]:
                grown[m.dim(x)].add(x)
                witness[x] = w
        nxt = _closure(m, grown, witness)
        if nxt == S:
            fixpoint = True
            break
        strata.append(nxt)
    eq = strata[-1]
    stratum_of = {}
    for i, S in enumerate(strata, 1):
        for xs in S.values():
            for x in xs:
                stratum_of.setdefault(x, i)
    contr = {d: {x for x in eq.get(d, ()) if d >= 2 and (m.is_identity(m.dom(x)) or m.is_identity(m.cod(x)))}
             for d in range(m.trunc_dim + 1)}
    table = EquivTable(m, el, strata, eq, contr, witness, stratum_of, fixpoint, cut)
    _TABLES.setdefault(m, {})[key] = table
    return table


# tameness

@dataclass
class TameVerdict:
    """Both tameness criteria: images of all internal equivalences, and of
    contractions plus elementary equivalences."""
    eq_failures: list
    seed_failures: list
    notes: list

    @property
    def tame(self):
        return not self.eq_failures

    @property
    def seed_tame(self):
        return not self.seed_failures

    def report(self):
        r = Report(notes=list(self.notes))
        for x, y in self.eq_failures:
            r.add("not tame", "an internal equivalence maps outside Eq", x, y)
        for x, y in self.seed_failures:
            r.add("seed criterion", "a contraction or elementary cell maps outside Eq", x, y)
        r.notes.append("criteria {}".format("agree" if self.tame == self.seed_tame else "disagree"))
        return r


def is_tame(F):
    X, Y = F.source, F.target
    for label, m in (("source", X.x1), ("target", Y.x1)):
        if not getattr(m, "finite", False):
            raise ValueError("the {} X1 is not finite".format(label))
    ex, ey = compute_eq(X.x1), compute_eq(Y.x1)
    eq_fail, seed_fail = [], []
    for d in range(1, X.x1.trunc_dim + 1):
        for x in X.x1.cells(d):
            y = F.f1(x)
            if y in ey:
                continue
            if x in ex:
                eq_fail.append((x, y))
            if ex.is_el(x) or x in ex.contr.get(d, ()):
                seed_fail.append((x, y))
    notes = ex.report().notes + ey.report().notes
    return TameVerdict(eq_fail, seed_fail, notes)


# Π

def pi(s):
    """Classes of 0-cells of X1 joined by internal equivalence 1-cells."""
    m = s.x1
    if not getattr(m, "finite", False):
        raise ValueError("X1 must be finite")
    table = compute_eq(m)
    uf = UnionFind(m.cells(0))
    for f in table.eq.get(1, ()):
        uf.union(m.dom(f), m.cod(f))
    return sorted((frozenset(c) for c in uf.to_sets()), key=lambda c: sorted(map(str, c)))


def check_pi_relation(s):
    """The relation a ≈ b iff some f in Eq_1 goes from a to b is an equivalence relation."""
    m = s.x1
    table = compute_eq(m)
    rel = {(m.dom(f), m.cod(f)) for f in table.eq.get(1, ())}
    r = Report()
    for a in m.cells(0):
        if (a, a) not in rel:
            r.add("reflexive", "no internal equivalence a -> a", a)
    for a, b in rel:
        if (b, a) not in rel:
            r.add("symmetric", "a ≈ b but not b ≈ a", a, b)
        for c in m.cells(0):
            if (b, c) in rel and (a, c) not in rel:
                r.add("transitive", "a ≈ b ≈ c but not a ≈ c", a, b, c)
    return r


def pi_map(F):
    """The map of Π classes induced by F1; raises when it is not well defined."""
    src, tgt = pi(F.source), pi(F.target)
    where = {x: c for c in tgt for x in c}
    out = {}
    for c in src:
        images = {where[F.f1(x)] for x in c}
        if len(images) != 1:
            raise ValueError("F1 splits the class {}".format(sorted(map(str, c))))
        out[c] = images.pop()
    return out


def _is_bijection(mapping, codomain):
    return len(set(mapping.values())) == len(mapping) == len(codomain)


def _fmt(c):
    return "{" + ",".join(sorted(map(str, c))) + "}"


def _levels(F, path, r, depth):
    mapping = pi_map(F)
    tgt = pi(F.target)
    r.notes.append("level {} {}: {}".format(depth, "/".join(path) or "top", " ".join(
        "{}->{}".format(_fmt(a), _fmt(b)) for a, b in mapping.items())))
    if not _is_bijection(mapping, tgt):
        missing = [c for c in tgt if c not in set(mapping.values())]
        r.add("not bijective", "Π map at {} is not a bijection".format("/".join(path) or "top"),
              *[_fmt(c) for c in missing or list(mapping)])
    m = F.source.x1
    if m.trunc_dim == 0:
        return
    for a in m.cells(0):
        for b in m.cells(0):
            _levels(restrict_functor(F, a, b), path + ["({},{})".format(a, b)], r, depth + 1)


def _require_finite(F):
    for label, s in (("source", F.source), ("target", F.target)):
        if not getattr(s.x1, "finite", False):
            raise ValueError("the {} span has an infinite X1".format(label))


def is_weak_equivalence(F):
    """Π F and every Π F(a,b) are bijections; refuses non-tame input."""
    _require_finite(F)
    verdict = is_tame(F)
    if not verdict.tame:
        x, y = verdict.eq_failures[0]
        raise ValueError("not tame: internal equivalence {} maps to {}".format(x, y))
    r = Report()
    _levels(F, [], r, 0)
    return r


def is_omega_equivalence(F, G):
    """Π of both composites and of all their restrictions are bijections."""
    if G.source is not F.target or G.target is not F.source:
        raise ValueError("G must go from the target of F back to its source")
    r = Report()
    for label, H in (("GF ", compose_pseudo(G, F)), ("FG ", compose_pseudo(F, G))):
        r.extend(is_weak_equivalence(H), label)
    return r
