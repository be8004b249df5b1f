"""Bridge relations, categorical Penon morphisms, spans and Penon stretchings."""
from collections import defaultdict

from .globular import COD, DOM, FormalId, boundary, is_parallel
from .magma import (Bridge, Comp, Gen, Idn, MagmaMorphism, enumerate_terms,
                    format_term, identity_morphism, term_boundary,
                    validate_magma)
from .report import Report
from .strict import FreeStrict, nf, validate_strict


def cells_by_dim(m, bound=None):
    """Cells of a finite magma up to its truncation, or of a virtual one up to ``bound`` nodes."""
    if getattr(m, "finite", False):
        return {d: list(m.cells(d)) for d in range(m.trunc_dim + 1)}
    return m.cells_by_dim(bound)


def composable_pairs(m, cells, i, j, bound=None):
    by_dom = defaultdict(list)
    for b in cells.get(j, ()):
        by_dom[boundary(m, b, DOM, i)].append(b)
    for a in cells.get(j, ()):
        for b in by_dom.get(boundary(m, a, COD, i), ()):
            if bound is None or _size(a) + _size(b) + 1 <= bound:
                yield a, b


def _size(x):
    return getattr(x, "size", 0)


def parallel_groups(m, cells):
    """Cells of each dimension grouped into parallel classes."""
    out = {}
    for d, cs in cells.items():
        groups = defaultdict(list)
        for c in cs:
            groups[None if d == 0 else (m.dom(c), m.cod(c))].append(c)
        out[d] = list(groups.values())
    return out


class BridgeTable:
    """Finite bridge relation; ``entries`` are (a, b, c) triples."""

    def __init__(self, base, entries=()):
        self.base = base
        self.table = {}
        self.conflicts = []
        for a, b, c in entries:
            if (a, b) in self.table and self.table[a, b] != c:
                self.conflicts.append((a, b, self.table[a, b], c))
                continue
            self.table[a, b] = c

    def bridge(self, a, b):
        c = self.table.get((a, b))
        if c is None and a == b and isinstance(a, FormalId):
            return self.base.idn(a)
        if c is None and a == b and self.base.dim(a) == self.base.trunc_dim:
            return self.base.idn(a)
        return c

    def triples(self, cells=None):
        return [(a, b, c) for (a, b), c in self.table.items()]

    def restrict(self, base):
        return BridgeTable(base, [(a, b, c) for (a, b), c in self.table.items() if a in base])

    def __repr__(self):
        return "BridgeTable({} triples)".format(len(self.table))


def diagonal_relation(m):
    return BridgeTable(m, [(a, a, m.idn(a)) for a in m.all_cells()])


class BridgeFunction:
    """Bridge relation given by a function; triples are enumerated over a cell list."""

    def __init__(self, base, fn):
        self.base = base
        self.fn = fn
        self.conflicts = []

    def bridge(self, a, b):
        return self.fn(a, b)

    def triples(self, cells):
        out = []
        for d, groups in parallel_groups(self.base, cells).items():
            for g in groups:
                for a in g:
                    for b in g:
                        c = self.fn(a, b)
                        if c is not None:
                            out.append((a, b, c))
        return out

    def restrict(self, base):
        return BridgeFunction(base, self.fn)


def validate_bridge_relation(R, bound=None):
    m = R.base
    r = Report(bound=None if getattr(m, "finite", False) else bound)
    cells = cells_by_dim(m, bound)
    for a, b, old, new in R.conflicts:
        r.add("condition 3", "two bridges for one pair", a, b, old, new)
    for a, b, c in R.triples(cells):
        try:
            if not is_parallel(m, a, b):
                r.add("condition 1", "bridged cells are not parallel", a, b)
            if m.dim(c) != m.dim(a) + 1 or m.dom(c) != a or m.cod(c) != b:
                r.add("condition 1", "bridge has the wrong boundary", a, b, c)
        except (KeyError, ValueError):
            r.add("unknown cell", "bridge triple references an unknown cell", a, b, c)
    for d, cs in cells.items():
        for a in cs:
            if R.bridge(a, a) != m.idn(a):
                r.add("condition 2", "diagonal triple (a, a, id a) missing", a)
    return r


def validate_penon_morphism(F, R, bound=None):
    """Conditions for a categorical Penon morphism from (source, R) to a strict target."""
    src, tgt = F.source, F.target
    finite = getattr(src, "finite", False)
    r = Report(bound=None if finite else bound)
    if getattr(tgt, "finite", False):
        r.extend(validate_strict(tgt), "target ")
    elif not getattr(tgt, "strict", False):
        r.add("target", "target is neither a finite strict category nor a free one")
    cells = cells_by_dim(src, bound)
    _check_morphism(F, src, tgt, cells, r, bound)
    for a, b, c in R.triples(cells):
        fa, fb = F(a), F(b)
        if fa != fb:
            r.add("condition 2", "bridge endpoints are not equalized", a, b)
        elif F(c) != tgt.idn(fa):
            r.add("condition 2", "bridge does not map to an identity", a, b, c)
    for d, groups in parallel_groups(src, cells).items():
        for g in groups:
            images = defaultdict(list)
            for a in g:
                images[F(a)].append(a)
            for same in images.values():
                for a in same:
                    for b in same:
                        if R.bridge(a, b) is None:
                            r.add("condition 3", "equalized parallel pair without a bridge", a, b)
    return r


def _check_morphism(F, src, tgt, cells, r, bound=None, label="", graph_only=False):
    for d, cs in cells.items():
        for x in cs:
            try:
                y = F(x)
            except (KeyError, ValueError) as e:
                r.add("unknown cell", "{}map undefined ({})".format(label, e), x)
                continue
            if tgt.dim(y) != d:
                r.add("dimension", "{}image has the wrong dimension".format(label), x, y)
                continue
            if d > 0:
                if F(src.dom(x)) != tgt.dom(y):
                    r.add("dom", "{}F(dom x) != dom F(x)".format(label), x)
                if F(src.cod(x)) != tgt.cod(y):
                    r.add("cod", "{}F(cod x) != cod F(x)".format(label), x)
            if src.is_identity(x) and tgt.idn(F(src.identity_base(x))) != y:
                r.add("identity", "{}F(id x) != id F(x)".format(label), x)
    if graph_only:
        return r
    top = max(cells) if cells else 0
    for j in range(1, top + 1):
        for i in range(j):
            for a, b in composable_pairs(src, cells, i, j, bound):
                c = src.comp(i, a, b)
                if c is None:
                    continue
                if tgt.comp(i, F(a), F(b)) != F(c):
                    r.add("composition", "{}F(a⊙b) != F(a)⊙F(b) along {}".format(label, i), a, b)
    return r


class Span:
    """Weak omega category datum X1 <-λ- X2 -κ-> X3 with ρ splitting λ and bridges R on X2."""

    def __init__(self, x1, x2, x3, lam, rho, kappa, R, bound=None, name=""):
        self.x1, self.x2, self.x3 = x1, x2, x3
        self.lam, self.rho, self.kappa = lam, rho, kappa
        self.R = R
        self.bound = bound
        self.name = name

    @property
    def finite(self):
        return all(getattr(x, "finite", False) for x in (self.x1, self.x2, self.x3))

    def bridge(self, a, b):
        return self.R.bridge(a, b)

    def __repr__(self):
        return "Span({})".format(self.name or id(self))


def validate_weak_omega_category(s, bound=None):
    bound = bound if bound is not None else s.bound
    r = Report(bound=None if s.finite else bound)
    for label, m in (("X1 ", s.x1), ("X2 ", s.x2)):
        if getattr(m, "finite", False):
            r.extend(validate_magma(m), label)
    if getattr(s.x3, "finite", False):
        sub = validate_magma(s.x3)
        r.extend(sub if not sub.ok else validate_strict(s.x3), "X3 ")
    c1, c2 = cells_by_dim(s.x1, bound), cells_by_dim(s.x2, bound)
    _check_morphism(s.lam, s.x2, s.x1, c2, r, bound, "lambda: ")
    _check_morphism(s.rho, s.x1, s.x2, c1, r, bound, "rho: ", graph_only=True)
    for d, cs in c1.items():
        for x in cs:
            if s.lam(s.rho(x)) != x:
                r.add("splitting", "lambda(rho(x)) != x", x)
    r.extend(validate_bridge_relation(s.R, bound))
    r.extend(validate_penon_morphism(s.kappa, s.R, bound), "kappa: ")
    return r


class OmegaFunctor:
    def __init__(self, source, target, f1, f2, f3):
        self.source, self.target = source, target
        self.f1, self.f2, self.f3 = f1, f2, f3


def identity_functor(s):
    return OmegaFunctor(s, s, identity_morphism(s.x1), identity_morphism(s.x2), identity_morphism(s.x3))


def validate_omega_functor(F, bound=None):
    X, Y = F.source, F.target
    r = Report(bound=None if X.finite else bound)
    c1, c2, c3 = (cells_by_dim(X.x1, bound), cells_by_dim(X.x2, bound),
                  cells_by_dim(X.x3, bound) if getattr(X.x3, "finite", False) else {})
    _check_morphism(F.f1, X.x1, Y.x1, c1, r, bound, "F1: ")
    _check_morphism(F.f2, X.x2, Y.x2, c2, r, bound, "F2: ")
    if c3:
        _check_morphism(F.f3, X.x3, Y.x3, c3, r, bound, "F3: ")
    for a, b, c in X.R.triples(c2):
        if Y.bridge(F.f2(a), F.f2(b)) != F.f2(c):
            r.add("condition 1", "F2 does not preserve a bridge", a, b, c)
    for d, cs in c2.items():
        for x in cs:
            if Y.lam(F.f2(x)) != F.f1(X.lam(x)):
                r.add("condition 2", "lambda square does not commute", x)
            if Y.kappa(F.f2(x)) != F.f3(X.kappa(x)):
                r.add("condition 3", "kappa square does not commute", x)
    for d, cs in c1.items():
        for x in cs:
            if F.f2(X.rho(x)) != Y.rho(F.f1(x)):
                r.add("condition 4", "F2 rho != rho F1", x)
    return r


def scholium_bridge(s, cells, left, right):
    """Bridge in X1 between two composites of X1 cells.

    ``left``/``right`` are schedules: an int indexes ``cells``; a tuple
    ``(i, l, r)`` composes two schedules along i.  Returns ``(cell, log)``;
    ``cell`` is None when a step fails, with the reason logged.
    """
    log = []

    def run(m, sched, leaf):
        if isinstance(sched, int):
            return leaf(cells[sched])
        i, l, rr = sched
        a, b = run(m, l, leaf), run(m, rr, leaf)
        if a is None or b is None:
            return None
        return m.comp(i, a, b)

    u1, v1 = run(s.x1, left, lambda x: x), run(s.x1, right, lambda x: x)
    log.append(("composite", u1, v1))
    u2, v2 = run(s.x2, left, s.rho), run(s.x2, right, s.rho)
    log.append(("lift", u2, v2))
    if None in (u1, v1, u2, v2):
        log.append(("fail", "composite undefined"))
        return None, log
    ku, kv = s.kappa(u2), s.kappa(v2)
    log.append(("equalize", ku, kv))
    if ku != kv:
        log.append(("fail", "kappa does not equalize the lifted composites"))
        return None, log
    c = s.bridge(u2, v2)
    log.append(("bridge", c))
    if c is None:
        log.append(("fail", "no bridge for the lifted pair"))
        return None, log
    out = s.lam(c)
    log.append(("project", out))
    if s.x1.dom(out) != u1 or s.x1.cod(out) != v1:
        log.append(("fail", "projected bridge has the wrong boundary"))
        return None, log
    return out, log


class StretchMagma:
    """Terms over an omega graph with bridges adjoined for equalized parallel pairs.

    ``evaluate`` is the strict-side map; a bridge is admitted between parallel,
    syntactically distinct terms with equal images.
    """
    finite = False
    trunc_dim = None

    def __init__(self, graph, evaluate, name="stretch"):
        self.graph = graph
        self._evaluate = evaluate
        self._memo = {}
        self._enum = {}
        self.name = name

    def evaluate(self, t):
        v = self._memo.get(t)
        if v is None:
            v = self._memo[t] = self._evaluate(self, t)
        return v

    def dim(self, t):
        return t.dim

    def dom(self, t):
        return term_boundary(self.graph, t, DOM, t.dim - 1)

    def cod(self, t):
        return term_boundary(self.graph, t, COD, t.dim - 1)

    def idn(self, t):
        return Idn(t)

    def is_identity(self, t):
        return isinstance(t, Idn)

    def identity_base(self, t):
        return t.body

    def comp(self, i, a, b):
        if a.dim != b.dim or a.dim <= i:
            return None
        if term_boundary(self.graph, a, COD, i) != term_boundary(self.graph, b, DOM, i):
            return None
        return Comp(i, a, b)

    def bridge(self, u, v):
        if u.dim != v.dim:
            raise ValueError("bridge endpoints of different dimensions")
        if u.dim > 0 and (self.dom(u) != self.dom(v) or self.cod(u) != self.cod(v)):
            return None
        if self.evaluate(u) != self.evaluate(v):
            return None
        return Idn(u) if u == v else Bridge(u, v)

    def cells_by_dim(self, bound):
        if bound not in self._enum:
            by_size = enumerate_terms(self.graph, bound,
                                      bridge=lambda u, v: self.evaluate(u) == self.evaluate(v))
            out = defaultdict(list)
            for ts in by_size.values():
                for t in ts:
                    out[t.dim].append(t)
            self._enum[bound] = dict(sorted(out.items()))
        return self._enum[bound]

    def cells(self, d, bound):
        return self.cells_by_dim(bound).get(d, [])

    def __contains__(self, t):
        return hasattr(t, "dim") and hasattr(t, "size")

    def __repr__(self):
        return "StretchMagma({})".format(self.name)


def _eta(m, t):
    if isinstance(t, Gen):
        return nf(m.graph, t)
    if isinstance(t, Idn):
        return m.evaluate(t.body).idn()
    if isinstance(t, Bridge):
        return m.evaluate(t.src).idn()
    c = m.evaluate(t.left).compose(t.i, m.evaluate(t.right))
    if c is None:
        raise ValueError("ill-formed composite {}".format(format_term(t)))
    return c


def stretch_eta(graph, t):
    """Image of a stretch cell in the free strict omega category: bridges become identities."""
    return _stretching(graph).evaluate(t)


def stretch_bridge(graph, u, v):
    return _stretching(graph).bridge(u, v)


_STRETCHINGS = {}


def _stretching(graph):
    if graph not in _STRETCHINGS:
        _STRETCHINGS[graph] = StretchMagma(graph, _eta, "M_P")
    return _STRETCHINGS[graph]


def penon_category(graph, bound=6):
    """Virtual span with X1 = X2 the stretching of ``graph`` and X3 the free strict category."""
    m = _stretching(graph)
    one = identity_morphism(m)
    x3 = FreeStrict(graph)
    kappa = MagmaMorphism(m, x3, m.evaluate)
    return Span(m, m, x3, one, one, kappa, BridgeFunction(m, m.bridge), bound, "penon")


def penon_over(f, A, bound=6):
    """Stretching of f's source evaluated into the finite strict category A."""
    from .globular import validate_graph_morphism
    rep = validate_graph_morphism(f)
    if not rep.ok:
        raise ValueError("graph morphism is not boundary compatible: {}".format(rep.violations[0]))
    graph = f.source

    def ev(m, t):
        if isinstance(t, Gen):
            return f(t.cell)
        if isinstance(t, Idn):
            return A.idn(m.evaluate(t.body))
        if isinstance(t, Bridge):
            return A.idn(m.evaluate(t.src))
        c = A.comp(t.i, m.evaluate(t.left), m.evaluate(t.right))
        if c is None:
            raise ValueError("composite {} undefined in the target".format(format_term(t)))
        return c

    m = StretchMagma(graph, ev, "penon_over")
    one = identity_morphism(m)
    kappa = MagmaMorphism(m, A, m.evaluate)
    return Span(m, m, A, one, one, kappa, BridgeFunction(m, m.bridge), bound, "penon_over")
