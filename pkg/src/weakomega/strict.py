"""Strict omega categories: law validation for finite tables, normal forms for
the free strict omega category on an omega graph, and a brute-force
rewriting oracle that is kept independent of the normal form.

A normal form of dimension n > 0 is a path ``x0 p1 x1 ... pk xk`` of 0-cells
``xi`` and (n-1)-dimensional normal forms ``pi`` living in the hom between
``x(i-1)`` and ``xi``.  Composition along 0 concatenates paths; composition
along i > 0 composes the pieces pointwise along i-1.  Identities never occur
as labels.
"""
from collections import Counter, defaultdict, deque
from functools import lru_cache

from .globular import COD, DOM, boundary
from .magma import Bridge, Comp, Gen, Idn, format_term, term_boundary
from .report import Report


class StrictNF:
    __slots__ = ("dim", "data", "_hash")

    def __init__(self, dim, data):
        self.dim, self.data = dim, data
        self._hash = hash((dim, data))

    def __eq__(self, other):
        return self is other or (isinstance(other, StrictNF) and self._hash == other._hash
                                 and self.dim == other.dim and self.data == other.data)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "NF{}{}".format(self.dim, _show(self.dim, self.data))

    def dom(self):
        return StrictNF(self.dim - 1, _bnd(self.dim, self.data, DOM))

    def cod(self):
        return StrictNF(self.dim - 1, _bnd(self.dim, self.data, COD))

    def boundary(self, side, k):
        if not 0 <= k < self.dim:
            raise ValueError("boundary dimension {} out of range".format(k))
        x = self
        while x.dim > k:
            x = x.dom() if side == DOM else x.cod()
        return x

    def idn(self):
        return StrictNF(self.dim + 1, _idn(self.dim, self.data))

    def compose(self, i, other):
        if self.dim != other.dim or i >= self.dim:
            return None
        c = _comp(i, self.data, other.data)
        return None if c is None else StrictNF(self.dim, c)

    def is_identity(self):
        return self.dim > 0 and _is_degenerate(self.dim, self.data)

    def generators(self):
        """Top-dimensional generator labels, left to right."""
        return _labels(self.dim, self.data)


def _show(n, data):
    if n == 0:
        return str(data)
    objs, parts = data
    out = [str(objs[0])]
    for p, x in zip(parts, objs[1:]):
        out += ["[" + _show(n - 1, p) + "]", str(x)]
    return "(" + " ".join(out) + ")"


def _bnd(n, data, side):
    objs, parts = data
    if n == 1:
        return objs[0] if side == DOM else objs[-1]
    return (objs, tuple(_bnd(n - 1, p, side) for p in parts))


def _idn(n, data):
    if n == 0:
        return ((data,), ())
    objs, parts = data
    return (objs, tuple(_idn(n - 1, p) for p in parts))


def _comp(i, a, b):
    oa, pa = a
    ob, pb = b
    if i == 0:
        if oa[-1] != ob[0]:
            return None
        return (oa + ob[1:], pa + pb)
    if oa != ob:
        return None
    parts = []
    for x, y in zip(pa, pb):
        c = _comp(i - 1, x, y)
        if c is None:
            return None
        parts.append(c)
    return (oa, tuple(parts))


def _is_degenerate(n, data):
    if n == 0:
        return False
    objs, parts = data
    return all(n - 1 > 0 and _is_degenerate(n - 1, p) for p in parts)


def _labels(n, data):
    if n == 0:
        return [data]
    out = []
    for p in data[1]:
        out += _labels(n - 1, p)
    return out


def _gen_data(graph, g, d, level=0):
    if d == level:
        return g
    s, t = boundary(graph, g, DOM, level), boundary(graph, g, COD, level)
    return ((s, t), (_gen_data(graph, g, d, level + 1),))


class NotStrictTerm(ValueError):
    pass


def check_generators(graph):
    """Generators must have non-identity boundaries in every dimension."""
    bad = []
    for g in graph.generators():
        d = graph.dim(g)
        for k in range(1, d):
            for side in (DOM, COD):
                if graph.is_identity(boundary(graph, g, side, k)):
                    bad.append(g)
    return sorted(set(bad))


@lru_cache(maxsize=None)
def _checked(graph):
    bad = check_generators(graph)
    if bad:
        raise ValueError("generators with identity boundaries are not supported: {}".format(bad))
    return True


def nf(graph, t):
    """Canonical form of a bridge-free term in the free strict omega category."""
    _checked(graph)
    return _nf(graph, t)


@lru_cache(maxsize=1 << 18)
def _nf(graph, t):
    if isinstance(t, Gen):
        if graph.is_identity(t.cell):
            return nf_of_cell(graph, t.cell)
        return StrictNF(t.dim, _gen_data(graph, t.cell, t.dim))
    if isinstance(t, Idn):
        return _nf(graph, t.body).idn()
    if isinstance(t, Bridge):
        raise NotStrictTerm("not a strict-category term: contains {}".format(format_term(t)))
    c = _nf(graph, t.left).compose(t.i, _nf(graph, t.right))
    if c is None:
        raise ValueError("ill-formed composite {}".format(format_term(t)))
    return c


def nf_of_cell(graph, c):
    if graph.is_identity(c):
        return nf_of_cell(graph, graph.identity_base(c)).idn()
    return StrictNF(graph.dim(c), _gen_data(graph, c, graph.dim(c)))


def strict_eq(graph, t1, t2):
    if t1.dim != t2.dim:
        raise ValueError("terms of different dimensions")
    return nf(graph, t1) == nf(graph, t2)


def nf_to_term(n):
    """A term whose normal form is ``n``."""
    return _to_term(0, n.dim, n.data)


def _to_term(level, n, data):
    if n == level:
        return Gen(data, level)
    objs, parts = data
    if not parts:
        t = Gen(objs[0], level)
        while t.dim < n:
            t = Idn(t)
        return t
    out = _to_term(level + 1, n, parts[0])
    for p in parts[1:]:
        out = Comp(level, out, _to_term(level + 1, n, p))
    return out


def identity_tower_term(t, j):
    while t.dim < j:
        t = Idn(t)
    return t


def _top_rewrites(graph, s):
    """Single law applications at the root of ``s``, both directions."""
    out = []
    if isinstance(s, Comp):
        i, a, b = s.i, s.left, s.right
        if isinstance(a, Comp) and a.i == i:
            out.append(Comp(i, a.left, Comp(i, a.right, b)))
        if isinstance(b, Comp) and b.i == i:
            out.append(Comp(i, Comp(i, a, b.left), b.right))
        if (isinstance(a, Comp) and isinstance(b, Comp) and a.i == b.i and a.i > i):
            j = a.i
            out.append(Comp(j, Comp(i, a.left, b.left), Comp(i, a.right, b.right)))
        if (isinstance(a, Comp) and isinstance(b, Comp) and a.i == b.i and a.i < i):
            j = a.i
            out.append(Comp(j, Comp(i, a.left, b.left), Comp(i, a.right, b.right)))
        if a == identity_tower_term(term_boundary(graph, b, DOM, i), s.dim):
            out.append(b)
        if b == identity_tower_term(term_boundary(graph, a, COD, i), s.dim):
            out.append(a)
        if isinstance(a, Idn) and isinstance(b, Idn) and i < a.body.dim:
            out.append(Idn(Comp(i, a.body, b.body)))
    if isinstance(s, Idn) and isinstance(s.body, Comp):
        c = s.body
        out.append(Comp(c.i, Idn(c.left), Idn(c.right)))
    for i in range(s.dim):
        out.append(Comp(i, identity_tower_term(term_boundary(graph, s, DOM, i), s.dim), s))
        out.append(Comp(i, s, identity_tower_term(term_boundary(graph, s, COD, i), s.dim)))
    return [x for x in out if _well_formed_deep(graph, x)]


def _well_formed_deep(graph, t):
    if isinstance(t, Idn):
        return _well_formed_deep(graph, t.body)
    if isinstance(t, Comp):
        return (_well_formed(graph, t) and _well_formed_deep(graph, t.left)
                and _well_formed_deep(graph, t.right))
    return True


def _well_formed(graph, t):
    if isinstance(t, Comp):
        return (term_boundary(graph, t.left, COD, t.i) == term_boundary(graph, t.right, DOM, t.i))
    return True


def law_rewrites(graph, t, max_size=None):
    """All terms reachable from ``t`` by one law application at any position.

    A rewrite inside a composite is kept only when the composite stays
    well-formed.
    """
    out = [s for s in _top_rewrites(graph, t) if max_size is None or s.size <= max_size]
    if isinstance(t, Idn):
        out += [Idn(s) for s in law_rewrites(graph, t.body, None if max_size is None else max_size - 1)]
    elif isinstance(t, Comp):
        room = None if max_size is None else max_size - t.right.size - 1
        for s in law_rewrites(graph, t.left, room):
            c = Comp(t.i, s, t.right)
            if _well_formed(graph, c):
                out.append(c)
        room = None if max_size is None else max_size - t.left.size - 1
        for s in law_rewrites(graph, t.right, room):
            c = Comp(t.i, t.left, s)
            if _well_formed(graph, c):
                out.append(c)
    return out


def invariant(graph, t):
    """A congruence invariant: dimension, boundary invariants, top generators.

    In dimension 1 the ordered word of generators is used; higher up only the
    multiset of top-dimensional generators.
    """
    if t.dim == 0:
        return (0, t.cell if isinstance(t, Gen) else None)
    tops = [g.cell for g in _top_leaves(t)]
    if t.dim == 1:
        return (1, tuple(tops), invariant(graph, term_boundary(graph, t, DOM, 0)),
                invariant(graph, term_boundary(graph, t, COD, 0)))
    return (t.dim, tuple(sorted(Counter(tops).items())),
            invariant(graph, term_boundary(graph, t, DOM, t.dim - 1)),
            invariant(graph, term_boundary(graph, t, COD, t.dim - 1)))


def _top_leaves(t):
    if isinstance(t, Gen):
        return [t]
    if isinstance(t, Idn):
        return []
    return _top_leaves(t.left) + _top_leaves(t.right)


class Oracle:
    """Bounded breadth-first closure under the strict laws, memoized per component."""

    def __init__(self, graph, size_bound=8):
        self.graph = graph
        self.size_bound = size_bound
        self._component = {}
        self._hit = {}

    def closure(self, t):
        if t in self._component:
            k = self._component[t]
            return k, self._hit[k]
        k = len(self._hit)
        seen = {t}
        queue = deque([t])
        hit = False
        while queue:
            s = queue.popleft()
            for r in law_rewrites(self.graph, s):
                if r.size > self.size_bound:
                    hit = True
                    continue
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        for s in seen:
            self._component[s] = k
        self._hit[k] = hit
        return k, hit

    def eq(self, t1, t2):
        """True, False, or None when the bounded closure is inconclusive."""
        for t in (t1, t2):
            if t.size > self.size_bound:
                raise ValueError("term {} exceeds the oracle bound {}".format(format_term(t), self.size_bound))
        if t1.dim != t2.dim:
            return False
        if invariant(self.graph, t1) != invariant(self.graph, t2):
            return False
        k1, hit = self.closure(t1)
        if self._component.get(t2) == k1:
            return True
        return False if not hit else None


def oracle_eq(graph, t1, t2, size_bound=8):
    return Oracle(graph, size_bound).eq(t1, t2)


def random_term(graph, rng, size, max_dim=None):
    """A random well-formed bridge-free term, built bottom-up from generators."""
    pools = _pools(graph, size, max_dim)
    sizes = [n for n in range(1, size + 1) if pools.get(n)]
    n = rng.choice(sizes)
    return rng.choice(pools[n])


@lru_cache(maxsize=16)
def _pools(graph, size, max_dim):
    from .magma import enumerate_terms
    return {n: ts for n, ts in enumerate_terms(graph, size, max_dim=max_dim).items()}


class FreeStrict:
    """The free strict omega category on an omega graph, cells as normal forms."""
    finite = False
    trunc_dim = None
    strict = True

    def __init__(self, graph):
        self.graph = graph

    def dim(self, x):
        return x.dim

    def dom(self, x):
        return x.dom()

    def cod(self, x):
        return x.cod()

    def idn(self, x):
        return x.idn()

    def comp(self, i, a, b):
        return a.compose(i, b)

    def is_identity(self, x):
        return x.is_identity()

    def identity_base(self, x):
        return x.dom()

    def cell(self, c):
        return nf_of_cell(self.graph, c)

    def __contains__(self, x):
        return isinstance(x, StrictNF)

    def __repr__(self):
        return "FreeStrict({!r})".format(self.graph)


def validate_strict(m):
    """Exhaustive check of associativity, interchange, identity and
    identity-interchange over a finite magma's tables."""
    r = Report()
    n = m.trunc_dim
    for j in range(1, n + 1):
        for i in range(j):
            by_dom = defaultdict(list)
            pairs = list(m.composable_pairs(i, j))
            for a, b in pairs:
                by_dom[a].append(b)
            for a, b in pairs:
                ab = m.comp(i, a, b)
                for c in by_dom.get(b, ()):
                    left, right = m.comp(i, ab, c), m.comp(i, a, m.comp(i, b, c))
                    if left != right:
                        r.add("associativity", "(a⊙b)⊙c != a⊙(b⊙c) along {}".format(i), a, b, c)
            for a in m.cells(j):
                ld = m.comp(i, _tower(m, boundary(m, a, DOM, i), j), a)
                rd = m.comp(i, a, _tower(m, boundary(m, a, COD, i), j))
                if ld != a or rd != a:
                    r.add("identity", "identity along {} is not neutral".format(i), a)
            if j + 1 <= n:
                for a, b in pairs:
                    if m.comp(i, m.idn(a), m.idn(b)) != m.idn(m.comp(i, a, b)):
                        r.add("identity-interchange", "id(a)⊙id(b) != id(a⊙b) along {}".format(i), a, b)
    for k in range(2, n + 1):
        for j in range(1, k):
            pairs = [(a, b, m.comp(j, a, b)) for a, b in m.composable_pairs(j, k)]
            for i in range(j):
                by_dom = defaultdict(list)
                for p in pairs:
                    by_dom[boundary(m, p[2], DOM, i)].append(p)
                for a, b, ab in pairs:
                    for c, d, cd in by_dom.get(boundary(m, ab, COD, i), ()):
                        left = m.comp(i, ab, cd)
                        ac, bd = m.comp(i, a, c), m.comp(i, b, d)
                        right = None if ac is None or bd is None else m.comp(j, ac, bd)
                        if left != right:
                            r.add("interchange", "interchange fails for i={}, j={}".format(i, j), a, b, c, d)
    return r


def _tower(m, x, j):
    while m.dim(x) < j:
        x = m.idn(x)
    return x
