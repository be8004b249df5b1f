"""Hom spans, stabilization, strict categories as weak ones, and extraction of
categories and bicategories from skeletal spans."""
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product

from networkx.utils import UnionFind

from .globular import COD, DOM, FormalId, OmegaGraph, boundary, is_parallel
from .magma import (Comp, FiniteMagma, Gen, Idn, MagmaMorphism, cell_term,
                    enumerate_terms, term_boundary, validate_magma)
from .report import Report
from .span import BridgeFunction, BridgeTable, Span, cells_by_dim, diagonal_relation, scholium_bridge
from .strict import FreeStrict, StrictNF, check_generators, nf, nf_of_cell, validate_strict


class ExtractionError(ValueError):
    def __init__(self, message, instance=(), log=()):
        super().__init__("{}: {}".format(message, ", ".join(map(str, instance))))
        self.instance = tuple(instance)
        self.log = list(log)


# hom spans

class HomView:
    """The cells of ``base`` of dimension >= shift accepted by ``accept``, reindexed down."""
    finite = False
    trunc_dim = None

    def __init__(self, base, shift, accept=None):
        self.base, self.shift, self.accept = base, shift, accept
        self.strict = getattr(base, "strict", False)

    def dim(self, x):
        return self.base.dim(x) - self.shift

    def dom(self, x):
        return self.base.dom(x)

    def cod(self, x):
        return self.base.cod(x)

    def idn(self, x):
        return self.base.idn(x)

    def is_identity(self, x):
        return self.dim(x) > 0 and self.base.is_identity(x)

    def identity_base(self, x):
        return self.base.identity_base(x)

    def comp(self, i, a, b):
        return self.base.comp(i + self.shift, a, b)

    def __contains__(self, x):
        return (x in self.base and self.base.dim(x) >= self.shift
                and (self.accept is None or self.accept(x)))

    def cells_by_dim(self, bound):
        out = {}
        for d, cs in self.base.cells_by_dim(bound).items():
            if d >= self.shift:
                out[d - self.shift] = [x for x in cs if self.accept is None or self.accept(x)]
        return out

    def __repr__(self):
        return "HomView({!r}, {})".format(self.base, self.shift)


def hom_magma(m, shift, accept=None):
    """Hom of ``m`` at level ``shift``; finite magmas are materialized as new tables."""
    if not getattr(m, "finite", False):
        return HomView(m, shift, accept)
    n = m.trunc_dim - shift
    if n < 0:
        raise ValueError("hom above the truncation dimension")
    cells = {d: [x for x in m.cells(d + shift) if accept is None or accept(x)] for d in range(n + 1)}
    keep = {x for cs in cells.values() for x in cs}
    dom = {x: m.dom(x) for d in range(1, n + 1) for x in cells[d]}
    cod = {x: m.cod(x) for d in range(1, n + 1) for x in cells[d]}
    id_of = {x: m.idn(x) for d in range(n) for x in cells[d]}
    entries = [((k - shift, a, b), c) for (k, a, b), c in m.table.items() if k >= shift and a in keep]
    h = FiniteMagma(OmegaGraph(n, cells, dom, cod, id_of), entries)
    h.strict = getattr(m, "strict", False)
    return h


def restrict_map(f, source, target):
    if f.mapping is not None and getattr(source, "finite", False):
        return MagmaMorphism(source, target, {x: f(x) for x in source.all_cells()})
    return MagmaMorphism(source, target, f.fn if f.mapping is None else f)


def hom_category(s, a, b):
    """The span of cells between the parallel (i-1)-cells a and b of X1.

    The third leg keeps every i-cell of X3 and above, not only those between
    images of a and b.
    """
    x1 = s.x1
    if x1.dim(a) != x1.dim(b) or not is_parallel(x1, a, b):
        raise ValueError("cells {} and {} are not parallel".format(a, b))
    # one span per (a, b) so functors built separately share sources and targets
    cache = s.__dict__.setdefault("_homs", {})
    if (a, b) not in cache:
        cache[a, b] = _hom_span(s, a, b)
    return cache[a, b]


def _hom_span(s, a, b):
    x1, x2 = s.x1, s.x2
    k = x1.dim(a)
    i = k + 1

    def in1(x):
        return boundary(x1, x, DOM, k) == a and boundary(x1, x, COD, k) == b

    def in2(x):
        return s.lam(boundary(x2, x, DOM, k)) == a and s.lam(boundary(x2, x, COD, k)) == b

    h1, h2, h3 = hom_magma(x1, i, in1), hom_magma(x2, i, in2), hom_magma(s.x3, i)
    return Span(h1, h2, h3, restrict_map(s.lam, h2, h1), restrict_map(s.rho, h1, h2),
                restrict_map(s.kappa, h2, h3), s.R.restrict(h2), s.bound,
                "{}({},{})".format(s.name, a, b))


# stabilization

def _check_monoidal(m, k, label):
    for d in range(k):
        n = len(m.cells(d))
        if n != 1:
            raise ValueError("{} has {} cells in dimension {}; expected exactly one".format(label, n, d))


def _shift_up(m, star):
    g = m.graph
    x0 = g.cells(0)[0]
    cells = {0: [star]}
    for d in range(g.trunc_dim + 1):
        cells[d + 1] = g.cells(d)
    dom, cod = dict(g._dom), dict(g._cod)
    dom[x0] = cod[x0] = star
    id_of = {star: x0}
    id_of.update(g.id_of)
    entries = {(0, x0, x0): x0}
    for (i, a, b), c in m.table.items():
        entries[i + 1, a, b] = c
        if i == 0:
            entries[0, a, b] = c
    return FiniteMagma(OmegaGraph(g.trunc_dim + 1, cells, dom, cod, id_of), entries)


def _shift_down(m):
    g = m.graph
    star, x0 = g.cells(0)[0], g.cells(1)[0]
    cells = {d - 1: g.cells(d) for d in range(1, g.trunc_dim + 1)}
    dom = {x: v for x, v in g._dom.items() if x != x0}
    cod = {x: v for x, v in g._cod.items() if x != x0}
    id_of = {x: v for x, v in g.id_of.items() if x != star}
    entries = {(i - 1, a, b): c for (i, a, b), c in m.table.items() if i >= 1}
    return FiniteMagma(OmegaGraph(g.trunc_dim - 1, cells, dom, cod, id_of), entries)


def stabilize(s, direction):
    """Shift a k-tuply monoidal span up one dimension, or back down (k >= 3)."""
    legs = (("X1", s.x1), ("X2", s.x2), ("X3", s.x3))
    for label, m in legs:
        if not getattr(m, "finite", False):
            raise ValueError("{} is not a finite magma".format(label))
    if direction not in ("up", "down"):
        raise ValueError("direction must be up or down")
    k = 2 if direction == "up" else 3
    for label, m in legs:
        if direction == "down" and m.trunc_dim < 2:
            raise ValueError("{} has truncation dimension {} < 2".format(label, m.trunc_dim))
        _check_monoidal(m, k, label)
    triples = s.R.triples(cells_by_dim(s.x2))
    if direction == "up":
        taken = {c for _, m in legs for c in m.all_cells()}
        star = "*"
        while star in taken:
            star += "'"
        x1, x2, x3 = (_shift_up(m, star) for _, m in legs)
        triples = [(star, star, x2.idn(star))] + triples
    else:
        star = s.x1.cells(0)[0]
        x1, x2, x3 = (_shift_down(m) for _, m in legs)
        triples = [t for t in triples if s.x2.dim(t[0]) > 0]

    def move(f, src, tgt):
        return MagmaMorphism(src, tgt, {x: star if x == star else f(x) for x in src.all_cells()})

    return Span(x1, x2, x3, move(s.lam, x2, x1), move(s.rho, x1, x2),
                move(s.kappa, x2, x3), BridgeTable(x2, triples), s.bound, s.name)


def same_span(s, t):
    """Cell-for-cell equality of two finite spans."""
    for a, b in ((s.x1, t.x1), (s.x2, t.x2), (s.x3, t.x3)):
        if a.graph != b.graph or a.table != b.table:
            return False
    for f, g, src in ((s.lam, t.lam, s.x2), (s.rho, t.rho, s.x1), (s.kappa, t.kappa, s.x2)):
        if any(f(x) != g(x) for x in src.all_cells()):
            return False
    cs, ct = cells_by_dim(s.x2), cells_by_dim(t.x2)
    return sorted(map(str, s.R.triples(cs))) == sorted(map(str, t.R.triples(ct)))


def strict_as_weak(c):
    r = validate_magma(c)
    if r.ok:
        r = validate_strict(c)
    if not r.ok:
        raise ValueError("not a strict omega category: {}".format(r.violations[0]))
    one = MagmaMorphism(c, c, {x: x for x in c.all_cells()})
    return Span(c, c, c, one, one, one, diagonal_relation(c), name="diagonal")


# categories

@dataclass
class Category:
    """Finite category; ``comp[f, g]`` is f followed by g."""
    objects: tuple
    arrows: dict
    ident: dict
    comp: dict = field(default_factory=dict)

    def hom(self, x, y):
        return [f for f, (s, t) in self.arrows.items() if s == x and t == y]

    def out_of(self, x):
        return [f for f, (s, _) in self.arrows.items() if s == x]


def is_skeletal(m, n):
    return all(m.is_identity(x) for d in range(n + 1, m.trunc_dim + 1) for x in m.cells(d))


def category_of(m):
    """The category underlying a finite 1-skeletal magma."""
    arrows = {f: (m.dom(f), m.cod(f)) for f in m.cells(1)}
    comp = {}
    for f, (_, t) in arrows.items():
        for g, (s, _) in arrows.items():
            if t == s:
                comp[f, g] = m.comp(0, f, g)
    return Category(tuple(m.cells(0)), arrows, {x: m.idn(x) for x in m.cells(0)}, comp)


def _scholium_equal(s, kind, cells, left, right, log):
    cell, steps = scholium_bridge(s, cells, left, right)
    log.append((kind, tuple(cells), steps))
    if cell is None or s.x1.dom(cell) != s.x1.cod(cell) or not s.x1.is_identity(cell):
        raise ExtractionError("no identity bridge for the {} instance".format(kind), cells, log)
    return cell


def extract_category(s):
    """Category of 0- and 1-cells of a span with 1-skeletal X1, with a proof log."""
    x1 = s.x1
    if not getattr(x1, "finite", False):
        raise ValueError("X1 must be finite")
    if not is_skeletal(x1, 1):
        raise ValueError("X1 is not 1-skeletal")
    cat = category_of(x1)
    log = []
    for (f, g), fg in cat.comp.items():
        if fg is None:
            raise ExtractionError("composite undefined", (f, g), log)
    for (f, g) in cat.comp:
        for h in cat.out_of(cat.arrows[g][1]):
            _scholium_equal(s, "associativity", [f, g, h], (0, (0, 0, 1), 2), (0, 0, (0, 1, 2)), log)
    for f, (a, b) in cat.arrows.items():
        _scholium_equal(s, "left identity", [x1.idn(a), f], (0, 0, 1), 1, log)
        _scholium_equal(s, "right identity", [f, x1.idn(b)], (0, 0, 1), 0, log)
    return cat, log


def validate_category(cat):
    r = Report()
    for x in cat.objects:
        if cat.arrows.get(cat.ident.get(x)) != (x, x):
            r.add("identity", "identity arrow missing", x)
    for f, (a, b) in cat.arrows.items():
        for g in cat.out_of(b):
            fg = cat.comp.get((f, g))
            if fg is None or cat.arrows.get(fg) != (a, cat.arrows[g][1]):
                r.add("composition", "composite missing or misplaced", f, g)
                continue
            for h in cat.out_of(cat.arrows[g][1]):
                if cat.comp.get((fg, h)) != cat.comp.get((f, cat.comp.get((g, h)))):
                    r.add("associativity", "(fg)h != f(gh)", f, g, h)
        if cat.comp.get((cat.ident.get(a), f)) != f or cat.comp.get((f, cat.ident.get(b))) != f:
            r.add("identity", "identity is not neutral", f)
    return r


def isomorphisms(cat):
    """Pairs (f, g) of mutually inverse arrows."""
    out = []
    for f, (a, b) in cat.arrows.items():
        for g in cat.hom(b, a):
            if cat.comp[f, g] == cat.ident[a] and cat.comp[g, f] == cat.ident[b]:
                out.append((f, g))
    return out


def clique_quotient(cat):
    """Quotient identifying isomorphic objects.

    Returns ``(quotient, functor, report)``; the report records whether the
    isomorphism groupoid is a disjoint union of cliques and whether the
    quotient functor is fully faithful, compared hom set by hom set.
    """
    r = Report()
    isos = isomorphisms(cat)
    count = defaultdict(int)
    for f, _ in isos:
        count[cat.arrows[f]] += 1
    for (a, b), n in sorted(count.items(), key=str):
        if n > 1:
            r.add("not a clique", "{} isomorphisms between the two objects".format(n), a, b)
    uf = UnionFind(cat.objects)
    for f, _ in isos:
        uf.union(*cat.arrows[f])
    rep = {}
    for block in uf.to_sets():
        least = min(block, key=str)
        for x in block:
            rep[x] = least
    transport = {}
    for f, g in isos:
        a, b = cat.arrows[f]
        if a == rep[b]:
            transport[b] = (f, g)
    for x in cat.objects:
        if x == rep[x]:
            transport[x] = (cat.ident[x], cat.ident[x])
    objects = tuple(x for x in cat.objects if rep[x] == x)
    arrows = {f: st for f, st in cat.arrows.items() if rep[st[0]] == st[0] and rep[st[1]] == st[1]}
    comp = {(f, g): h for (f, g), h in cat.comp.items() if f in arrows and g in arrows}
    quotient = Category(objects, arrows, {x: cat.ident[x] for x in objects}, comp)

    def functor(f):
        a, b = cat.arrows[f]
        into, _ = transport[a]
        _, back = transport[b]
        return cat.comp[cat.comp[into, f], back]

    for x in cat.objects:
        for y in cat.objects:
            images = {functor(f) for f in cat.hom(x, y)}
            target = quotient.hom(rep[x], rep[y])
            if len(images) != len(cat.hom(x, y)) or len(images) != len(target):
                r.add("not fully faithful", "hom sets differ in size", x, y)
    return quotient, functor, r


# bicategories

@dataclass
class BicategoryData:
    """A 2-skeletal finite magma with coherence cells.

    ``assoc[f, g, h]``: f(gh) => (fg)h; ``left[f]``: I f => f; ``right[f]``: f I => f.
    Composition is written in diagrammatic order.
    """
    magma: FiniteMagma
    assoc: dict
    left: dict
    right: dict

    def objects(self):
        return self.magma.cells(0)

    def one_cells(self):
        return self.magma.cells(1)

    def two_cells(self):
        return self.magma.cells(2)


def _v(m, a, b):
    return m.comp(1, a, b)


def _h(m, a, b):
    return m.comp(0, a, b)


def inverse_2cell(m, x):
    for y in m.cells(2):
        if m.dom(y) == m.cod(x) and m.cod(y) == m.dom(x):
            if _v(m, x, y) == m.idn(m.dom(x)) and _v(m, y, x) == m.idn(m.cod(x)):
                return y
    return None


def composable_1cells(m, n):
    """All composable n-tuples of 1-cells."""
    out = [(f,) for f in m.cells(1)]
    for _ in range(n - 1):
        out = [t + (g,) for t in out for g in m.cells(1) if m.dom(g) == m.cod(t[-1])]
    return out


def validate_bicategory(b):
    m = b.magma
    r = validate_magma(m)
    if not r.ok:
        return r
    if m.trunc_dim != 2:
        r.add("dimension", "a bicategory needs truncation dimension 2", m.trunc_dim)
        return r
    idn = m.idn
    vpairs = list(m.composable_pairs(1, 2))
    after = defaultdict(list)
    for x, y in vpairs:
        after[x].append(y)
    for x, y in vpairs:
        for z in after[y]:
            if _v(m, _v(m, x, y), z) != _v(m, x, _v(m, y, z)):
                r.add("vertical associativity", "(xy)z != x(yz)", x, y, z)
    for x in m.cells(2):
        if _v(m, idn(m.dom(x)), x) != x or _v(m, x, idn(m.cod(x))) != x:
            r.add("vertical identity", "identity 2-cell is not neutral", x)
    hpairs = list(m.composable_pairs(0, 2))
    for x, y in hpairs:
        for x2 in after[x]:
            for y2 in after[y]:
                if _v(m, _h(m, x, y), _h(m, x2, y2)) != _h(m, _v(m, x, x2), _v(m, y, y2)):
                    r.add("interchange", "horizontal composition is not functorial", x, y, x2, y2)
    for f, g in composable_1cells(m, 2):
        if _h(m, idn(f), idn(g)) != idn(_h(m, f, g)):
            r.add("interchange", "id f * id g != id fg", f, g)
    if not r.ok:
        return r

    def cell_check(kind, x, key, dom, cod):
        if x is None or x not in m or m.dim(x) != 2:
            r.add(kind, "component missing", *key)
            return None
        if m.dom(x) != dom or m.cod(x) != cod:
            r.add(kind, "component has the wrong boundary", *key)
            return None
        if inverse_2cell(m, x) is None:
            r.add(kind, "component is not invertible", *key)
        return x

    by_src = defaultdict(list)
    for x in m.cells(2):
        by_src[m.dom(x)].append(x)
    for f, g, h in composable_1cells(m, 3):
        a = cell_check("associator", b.assoc.get((f, g, h)), (f, g, h), _h(m, f, _h(m, g, h)), _h(m, _h(m, f, g), h))
        if a is None:
            continue
        for x, y, z in product(by_src[f], by_src[g], by_src[h]):
            f2, g2, h2 = m.cod(x), m.cod(y), m.cod(z)
            a2 = b.assoc.get((f2, g2, h2))
            if _v(m, _h(m, x, _h(m, y, z)), a2) != _v(m, a, _h(m, _h(m, x, y), z)):
                r.add("associator naturality", "square fails", x, y, z)
    for f in m.cells(1):
        s, t = m.dom(f), m.cod(f)
        for kind, table, dom in (("left unitor", b.left, _h(m, idn(s), f)),
                                 ("right unitor", b.right, _h(m, f, idn(t)))):
            u = cell_check(kind, table.get(f), (f,), dom, f)
            if u is None:
                continue
            for x in by_src[f]:
                u2 = table.get(m.cod(x))
                whisk = _h(m, idn(idn(s)), x) if kind == "left unitor" else _h(m, x, idn(idn(t)))
                if _v(m, whisk, u2) != _v(m, u, x):
                    r.add(kind + " naturality", "square fails", x)
    if not r.ok:
        return r
    A = b.assoc
    for f, g, h, k in composable_1cells(m, 4):
        one = _v(m, A[f, g, _h(m, h, k)], A[_h(m, f, g), h, k])
        two = _v(m, _v(m, _h(m, idn(f), A[g, h, k]), A[f, _h(m, g, h), k]), _h(m, A[f, g, h], idn(k)))
        if one != two:
            r.add("pentagon", "pentagon fails", f, g, h, k)
    for f, g in composable_1cells(m, 2):
        mid = idn(m.cod(f))
        one = _v(m, A[f, mid, g], _h(m, b.right[f], idn(g)))
        if one != _h(m, idn(f), b.left[g]):
            r.add("triangle", "triangle fails", f, g)
    return r


@dataclass(frozen=True)
class Cell2:
    """2-cell of a free bicategory: source and target 1-terms and a strict 2-cell between their normal forms."""
    src: object
    tgt: object
    nf: StrictNF

    @property
    def size(self):
        return self.src.size + self.tgt.size + len(self.nf.generators())

    def __str__(self):
        from .magma import format_term
        return "[{} => {} : {}]".format(format_term(self.src), format_term(self.tgt), self.nf)


class FreeBicategory:
    """Free bicategory on the omega graph underlying a finite bicategory."""
    finite = False
    trunc_dim = 2
    strict = False

    def __init__(self, graph):
        self.graph = graph
        self._enum = {}

    def dim(self, x):
        if isinstance(x, FormalId):
            return self.dim(x.base) + 1
        return 2 if isinstance(x, Cell2) else x.dim

    def dom(self, x):
        if isinstance(x, FormalId):
            return x.base
        if isinstance(x, Cell2):
            return x.src
        return term_boundary(self.graph, x, DOM, x.dim - 1)

    def cod(self, x):
        if isinstance(x, FormalId):
            return x.base
        if isinstance(x, Cell2):
            return x.tgt
        return term_boundary(self.graph, x, COD, x.dim - 1)

    def idn(self, x):
        if isinstance(x, (FormalId, Cell2)):
            return FormalId(x)
        if x.dim == 0:
            return Idn(x)
        return Cell2(x, x, nf(self.graph, x).idn())

    def is_identity(self, x):
        if isinstance(x, FormalId):
            return True
        if isinstance(x, Cell2):
            return x.src == x.tgt and x.nf.is_identity()
        return isinstance(x, Idn)

    def identity_base(self, x):
        if isinstance(x, FormalId):
            return x.base
        if isinstance(x, Cell2):
            return x.src
        return x.body

    def comp(self, i, a, b):
        d = self.dim(a)
        if d != self.dim(b) or i >= d:
            return None
        if d == 3:
            if i == 2:
                return a if a == b else None
            c = self.comp(i, a.base, b.base)
            return None if c is None else FormalId(c)
        if d == 1:
            if self.cod(a) != self.dom(b):
                return None
            return Comp(0, a, b)
        if i == 1:
            if a.tgt != b.src:
                return None
            return Cell2(a.src, b.tgt, a.nf.compose(1, b.nf))
        if self.cod(a.src) != self.dom(b.src):
            return None
        return Cell2(Comp(0, a.src, b.src), Comp(0, a.tgt, b.tgt), a.nf.compose(0, b.nf))

    def __contains__(self, x):
        return isinstance(x, (FormalId, Cell2)) or hasattr(x, "size")

    def cells_by_dim(self, bound):
        """0-cells, 1-terms of at most ``bound`` nodes, and 2-cells of size at most ``bound``."""
        if bound in self._enum:
            return self._enum[bound]
        g = self.graph
        terms = [t for ts in enumerate_terms(g, bound, max_dim=1).values() for t in ts]
        zero = [t for t in terms if t.dim == 0]
        one = [t for t in terms if t.dim == 1]
        gens = defaultdict(list)
        for x in g.generators():
            if g.dim(x) == 2:
                gens[g.dom(x)].append(x)
        two = []
        for s in one:
            for t in one:
                budget = bound - s.size - t.size
                if budget < 0 or self.dom(s) != self.dom(t) or self.cod(s) != self.cod(t):
                    continue
                for n in _two_cells_between(g, gens, nf(g, s), nf(g, t), budget):
                    two.append(Cell2(s, t, n))
        self._enum[bound] = {0: zero, 1: one, 2: two}
        return self._enum[bound]

    def __repr__(self):
        return "FreeBicategory"


def _chains(gens, g, f, target, budget):
    """Vertical chains of 2-generators from f to target using at most budget cells."""
    out = [()] if f == target else []
    if budget == 0:
        return out
    for x in gens[f]:
        for rest in _chains(gens, g, g.cod(x), target, budget - 1):
            out.append((x,) + rest)
    return out


def _two_cells_between(graph, gens, ns, nt, budget):
    (os, ls), (_, lt) = ns.data, nt.data
    if len(ls) != len(lt):
        return []
    columns = [_chains(gens, graph, f, t, budget) for f, t in zip(ls, lt)]
    out = []
    for choice in product(*columns):
        if sum(map(len, choice)) > budget:
            continue
        parts = []
        for f, chain in zip(ls, choice):
            objs = (f,) + tuple(graph.cod(x) for x in chain)
            parts.append((objs, chain))
        out.append(StrictNF(2, (os, tuple(parts))))
    return out


class _Coherence:
    """Evaluation of free-bicategory cells in a finite bicategory through left bracketings."""

    def __init__(self, b):
        self.b, self.m = b, b.magma
        self._inv = {}

    def inv(self, x):
        if x not in self._inv:
            y = inverse_2cell(self.m, x)
            if y is None:
                raise ValueError("2-cell {} is not invertible".format(x))
            self._inv[x] = y
        return self._inv[x]

    def ev1(self, t):
        m = self.m
        if isinstance(t, Gen):
            return t.cell
        if isinstance(t, Idn):
            return m.idn(self.ev1(t.body))
        return m.comp(0, self.ev1(t.left), self.ev1(t.right))

    def canon(self, word, x):
        m = self.m
        if not word:
            return m.idn(x)
        out = word[0]
        for f in word[1:]:
            out = m.comp(0, out, f)
        return out

    def merge(self, w1, w2, x, y):
        m = self.m
        c1, c2 = self.canon(w1, x), self.canon(w2, y)
        if not w2:
            return self.b.right[c1]
        if not w1:
            return self.b.left[c2]
        if len(w2) == 1:
            return m.idn(m.comp(0, c1, c2))
        head, g = w2[:-1], w2[-1]
        a = self.b.assoc[c1, self.canon(head, y), g]
        return _v(m, a, _h(m, self.merge(w1, head, x, y), m.idn(g)))

    def to_canon(self, t):
        """(2-cell from ev1(t) to its left bracketing, generator word)."""
        m = self.m
        if isinstance(t, Gen):
            return m.idn(t.cell), (t.cell,)
        if isinstance(t, Idn):
            return m.idn(m.idn(t.body.cell)), ()
        c1, w1 = self.to_canon(t.left)
        c2, w2 = self.to_canon(t.right)
        x = self.m.dom(self.ev1(t.left))
        y = self.m.dom(self.ev1(t.right))
        return _v(m, _h(m, c1, c2), self.merge(w1, w2, x, y)), w1 + w2

    def columns(self, n):
        m = self.m
        objs, parts = n.data
        if not parts:
            return m.idn(m.idn(objs[0]))
        out = None
        for f_objs, chain in parts:
            col = m.idn(f_objs[0])
            for x in chain:
                col = _v(m, col, x)
            out = col if out is None else _h(m, out, col)
        return out

    def ev2(self, c):
        m = self.m
        into, _ = self.to_canon(c.src)
        out, _ = self.to_canon(c.tgt)
        return _v(m, _v(m, into, self.columns(c.nf)), self.inv(out))

    def __call__(self, x):
        if isinstance(x, FormalId):
            return self.m.idn(self(x.base))
        if isinstance(x, Cell2):
            return self.ev2(x)
        if x.dim == 0:
            return x.cell
        return self.ev1(x)


def weakify_bicategory(b, bound=7):
    """Weak 2-category whose X2 is the free bicategory on b and X3 the free strict 2-category."""
    r = validate_bicategory(b)
    if not r.ok:
        raise ValueError("not a bicategory: {}".format(r.violations[0]))
    m = b.magma
    g = m.graph
    bad = check_generators(g)
    if bad:
        raise ValueError("2-cells with identity boundaries are not supported: {}".format(bad))
    x2 = FreeBicategory(g)
    x3 = FreeStrict(g)
    lam = _Coherence(b)

    def rho(x):
        if isinstance(x, FormalId):
            return x2.idn(rho(x.base))
        d = m.dim(x)
        if d < 2:
            return cell_term(g, x)
        return Cell2(cell_term(g, m.dom(x)), cell_term(g, m.cod(x)), nf_of_cell(g, x))

    def kappa(x):
        if isinstance(x, FormalId):
            return kappa(x.base).idn()
        if isinstance(x, Cell2):
            return x.nf
        return nf(g, x)

    def bridge(a, c):
        d = x2.dim(a)
        if d == 1:
            if x2.dom(a) != x2.dom(c) or x2.cod(a) != x2.cod(c) or kappa(a) != kappa(c):
                return None
            return Cell2(a, c, kappa(a).idn())
        return x2.idn(a) if a == c else None

    return Span(m, x2, x3, MagmaMorphism(x2, m, lam), MagmaMorphism(m, x2, rho),
                MagmaMorphism(x2, x3, kappa), BridgeFunction(x2, bridge), bound, "weakified")


def extract_bicategory(s):
    """Bicategory structure on a span with 2-skeletal X1, with a proof log."""
    x1 = s.x1
    if not getattr(x1, "finite", False):
        raise ValueError("X1 must be finite")
    if x1.trunc_dim < 2 or not is_skeletal(x1, 2):
        raise ValueError("X1 is not 2-skeletal")
    if x1.trunc_dim > 2:
        raise ValueError("X1 has truncation dimension {} > 2".format(x1.trunc_dim))
    log = []
    for a in x1.cells(0):
        for c in x1.cells(0):
            h = hom_category(s, a, c)
            _, sub = extract_category(h)
            log.append(("hom", (a, c), len(sub)))
    for x, y in x1.composable_pairs(0, 2):
        for x2 in [z for z in x1.cells(2) if x1.dom(z) == x1.cod(x)]:
            for y2 in [z for z in x1.cells(2) if x1.dom(z) == x1.cod(y)]:
                _scholium_equal(s, "interchange", [x, y, x2, y2], (1, (0, 0, 1), (0, 2, 3)),
                                (0, (1, 0, 2), (1, 1, 3)), log)
    assoc, left, right = {}, {}, {}

    def coherence(kind, cells, l, r):
        cell, steps = scholium_bridge(s, cells, l, r)
        log.append((kind, tuple(cells), steps))
        if cell is None:
            raise ExtractionError("no bridge for the {} instance".format(kind), cells, log)
        back, steps = scholium_bridge(s, cells, r, l)
        log.append((kind + " inverse", tuple(cells), steps))
        if back is None or x1.comp(1, cell, back) != x1.idn(x1.dom(cell)):
            raise ExtractionError("{} component is not invertible".format(kind), cells, log)
        return cell

    for f, g, h in composable_1cells(x1, 3):
        assoc[f, g, h] = coherence("associator", [f, g, h], (0, 0, (0, 1, 2)), (0, (0, 0, 1), 2))
    for f in x1.cells(1):
        left[f] = coherence("left unitor", [x1.idn(x1.dom(f)), f], (0, 0, 1), 1)
        right[f] = coherence("right unitor", [f, x1.idn(x1.cod(f))], (0, 0, 1), 0)
    out = BicategoryData(x1, assoc, left, right)
    r = validate_bicategory(out)
    if not r.ok:
        v = r.violations[0]
        raise ExtractionError(v.kind, v.witness, log)
    return out, log
