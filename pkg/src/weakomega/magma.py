"""Omega magmas: free-magma terms, finite composition tables, morphisms,
equivalence relations and quotients."""
from collections import defaultdict

from networkx.utils import UnionFind

from .globular import (COD, DOM, FormalId, boundary, check_graph_map,
                       validate_omega_graph)
from .report import Report


class Term:
    __slots__ = ("dim", "size", "_hash")

    def __eq__(self, other):
        return self is other or (type(self) is type(other) and self._hash == other._hash
                                 and self._key() == other._key())

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return format_term(self)


class Gen(Term):
    __slots__ = ("cell",)

    def __init__(self, cell, dim):
        self.cell, self.dim, self.size = cell, dim, 1
        self._hash = hash(("g", cell))

    def _key(self):
        return (self.cell,)


class Idn(Term):
    __slots__ = ("body",)

    def __init__(self, body):
        self.body = body
        self.dim, self.size = body.dim + 1, body.size + 1
        self._hash = hash(("i", body._hash))

    def _key(self):
        return (self.body,)


class Comp(Term):
    __slots__ = ("i", "left", "right")

    def __init__(self, i, left, right):
        self.i, self.left, self.right = i, left, right
        self.dim, self.size = left.dim, left.size + right.size + 1
        self._hash = hash(("c", i, left._hash, right._hash))

    def _key(self):
        return (self.i, self.left, self.right)


class Bridge(Term):
    __slots__ = ("src", "tgt")

    def __init__(self, src, tgt):
        self.src, self.tgt = src, tgt
        self.dim, self.size = src.dim + 1, src.size + tgt.size + 1
        self._hash = hash(("b", src._hash, tgt._hash))

    def _key(self):
        return (self.src, self.tgt)


def cell_term(graph, c):
    """The term naming a graph cell; identity cells become Idn terms."""
    if graph.is_identity(c):
        return Idn(cell_term(graph, graph.identity_base(c)))
    return Gen(c, graph.dim(c))


def term_boundary(graph, t, side, k):
    cache = graph.__dict__.setdefault("_term_boundary_cache", {})
    key = (t, side, k)
    b = cache.get(key)
    if b is None:
        b = cache[key] = _term_boundary(graph, t, side, k)
    return b


def _term_boundary(graph, t, side, k):
    if k < 0 or k >= t.dim:
        raise ValueError("boundary dimension {} out of range for a {}-term".format(k, t.dim))
    if isinstance(t, Gen):
        return cell_term(graph, boundary(graph, t.cell, side, k))
    if isinstance(t, Idn):
        return t.body if k == t.body.dim else term_boundary(graph, t.body, side, k)
    if isinstance(t, Bridge):
        if k == t.src.dim:
            return t.src if side == DOM else t.tgt
        return term_boundary(graph, t.src, side, k)
    if k > t.i:
        return Comp(t.i, term_boundary(graph, t.left, side, k),
                    term_boundary(graph, t.right, side, k))
    if k == t.i:
        return term_boundary(graph, t.left if side == DOM else t.right, side, k)
    return term_boundary(graph, t.left, side, k)


def composable(graph, i, a, b):
    return (a.dim == b.dim and a.dim > i
            and term_boundary(graph, a, COD, i) == term_boundary(graph, b, DOM, i))


def term_compose(graph, i, a, b):
    """Free-magma composite; no simplification is performed."""
    if a.dim != b.dim or a.dim <= i:
        raise ValueError("cannot compose a {}-term with a {}-term along {}".format(a.dim, b.dim, i))
    ca, db = term_boundary(graph, a, COD, i), term_boundary(graph, b, DOM, i)
    if ca != db:
        raise ValueError("boundary mismatch along {}: cod is {} but dom is {}".format(
            i, format_term(ca), format_term(db)))
    return Comp(i, a, b)


def leaves(t):
    if isinstance(t, Gen):
        return [t]
    if isinstance(t, Idn):
        return leaves(t.body)
    if isinstance(t, Bridge):
        return leaves(t.src) + leaves(t.tgt)
    return leaves(t.left) + leaves(t.right)


def has_bridge(t):
    if isinstance(t, Bridge):
        return True
    if isinstance(t, Idn):
        return has_bridge(t.body)
    if isinstance(t, Comp):
        return has_bridge(t.left) or has_bridge(t.right)
    return False


def format_term(t):
    if isinstance(t, Gen):
        return "gen:" + str(t.cell)
    if isinstance(t, Idn):
        return "id({})".format(format_term(t.body))
    if isinstance(t, Bridge):
        return "br({},{})".format(format_term(t.src), format_term(t.tgt))
    return "comp({},{},{})".format(t.i, format_term(t.left), format_term(t.right))


class TermSyntaxError(ValueError):
    pass


def parse_term(text, graph):
    """Parse ``gen:<id>``, ``id(t)``, ``comp(i,t,t)`` and ``br(t,t)``.

    Composites and bridges are checked for boundary compatibility.
    """
    s = text.replace(" ", "")
    pos = 0

    def expect(tok):
        nonlocal pos
        if not s.startswith(tok, pos):
            raise TermSyntaxError("expected {!r} at offset {} in {!r}".format(tok, pos, text))
        pos += len(tok)

    def ident():
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos] not in "(),":
            pos += 1
        if start == pos:
            raise TermSyntaxError("expected an identifier at offset {} in {!r}".format(pos, text))
        return s[start:pos]

    def term():
        nonlocal pos
        if s.startswith("gen:", pos):
            pos += 4
            c = ident()
            if c not in graph:
                raise TermSyntaxError("unknown cell {!r}".format(c))
            return cell_term(graph, c)
        if s.startswith("id(", pos):
            pos += 3
            t = term()
            expect(")")
            return Idn(t)
        if s.startswith("comp(", pos):
            pos += 5
            i = ident()
            if not i.isdigit():
                raise TermSyntaxError("composition index must be a natural number, got {!r}".format(i))
            expect(",")
            a = term()
            expect(",")
            b = term()
            expect(")")
            return term_compose(graph, int(i), a, b)
        if s.startswith("br(", pos):
            pos += 3
            a = term()
            expect(",")
            b = term()
            expect(")")
            if a.dim != b.dim or (a.dim > 0 and (
                    term_boundary(graph, a, DOM, a.dim - 1) != term_boundary(graph, b, DOM, b.dim - 1)
                    or term_boundary(graph, a, COD, a.dim - 1) != term_boundary(graph, b, COD, b.dim - 1))):
                raise ValueError("bridge endpoints are not parallel")
            return Bridge(a, b)
        raise TermSyntaxError("unexpected input at offset {} in {!r}".format(pos, text))

    t = term()
    if pos != len(s):
        raise TermSyntaxError("trailing input at offset {} in {!r}".format(pos, text))
    return t


def enumerate_terms(graph, max_size, max_dim=None, bridge=None):
    """All well-formed terms with at most ``max_size`` nodes, grouped by size.

    ``bridge(u, v)``, when given, decides whether ``Bridge(u, v)`` is admitted
    for parallel, syntactically distinct ``u`` and ``v``.
    """
    if max_dim is None:
        max_dim = max_size + graph.trunc_dim
    by_size = defaultdict(list)
    by_dom = defaultdict(list)
    bnd = {}

    def boundaries(t):
        if t not in bnd:
            bnd[t] = [(term_boundary(graph, t, DOM, i), term_boundary(graph, t, COD, i))
                      for i in range(t.dim)]
        return bnd[t]

    def add(t, n):
        by_size[n].append(t)
        for i, (d, _) in enumerate(boundaries(t)):
            by_dom[n, t.dim, i, d].append(t)

    for c in graph.generators():
        add(Gen(c, graph.dim(c)), 1)
    for n in range(2, max_size + 1):
        for t in by_size[n - 1]:
            if t.dim < max_dim:
                add(Idn(t), n)
        for sa in range(1, n - 1):
            sb = n - 1 - sa
            for a in by_size[sa]:
                for i, (_, c) in enumerate(boundaries(a)):
                    for b in by_dom.get((sb, a.dim, i, c), ()):
                        add(Comp(i, a, b), n)
        if bridge is None:
            continue
        for su in range(1, n - 1):
            sv = n - 1 - su
            for u in by_size[su]:
                if u.dim + 1 > max_dim:
                    continue
                bu = boundaries(u)
                for v in by_size[sv]:
                    if v.dim != u.dim or u == v:
                        continue
                    if u.dim > 0 and boundaries(v)[-1] != bu[-1]:
                        continue
                    if bridge(u, v):
                        add(Bridge(u, v), n)
    return by_size


def evaluate(t, m, gen=None):
    """Evaluate a bridge-free term in a magma; ``gen`` maps generator cells."""
    if isinstance(t, Gen):
        return t.cell if gen is None else gen(t.cell)
    if isinstance(t, Idn):
        return m.idn(evaluate(t.body, m, gen))
    if isinstance(t, Bridge):
        raise ValueError("cannot evaluate a bridge term in a magma")
    a, b = evaluate(t.left, m, gen), evaluate(t.right, m, gen)
    c = m.comp(t.i, a, b)
    if c is None:
        raise ValueError("composite {} undefined in the target".format(format_term(t)))
    return c


class FiniteMagma:
    """Omega magma given by finite composition tables over an omega graph.

    ``entries`` is an iterable of ``((i, a, b), c)`` meaning a ⊙_i b = c.
    Conflicting duplicate entries are kept in ``conflicts`` for validation.
    """
    finite = True

    def __init__(self, graph, entries=()):
        self.graph = graph
        self.trunc_dim = graph.trunc_dim
        self.table = {}
        self.conflicts = []
        if isinstance(entries, dict):
            entries = entries.items()
        for key, c in entries:
            if key in self.table and self.table[key] != c:
                self.conflicts.append((key, self.table[key], c))
                continue
            self.table[key] = c

    def cells(self, d, bound=None):
        return self.graph.cells(d)

    def all_cells(self):
        return self.graph.all_cells()

    def __contains__(self, x):
        return x in self.graph

    def dim(self, x):
        return self.graph.dim(x)

    def dom(self, x):
        return self.graph.dom(x)

    def cod(self, x):
        return self.graph.cod(x)

    def idn(self, x):
        return self.graph.idn(x)

    def is_identity(self, x):
        return self.graph.is_identity(x)

    def identity_base(self, x):
        return self.graph.identity_base(x)

    def comp(self, i, a, b):
        if isinstance(a, FormalId) or isinstance(b, FormalId):
            if not (isinstance(a, FormalId) and isinstance(b, FormalId)) or self.dim(a) != self.dim(b):
                return None
            if i == self.dim(a) - 1:
                return a if a.base == b.base else None
            c = self.comp(i, a.base, b.base)
            return None if c is None else self.idn(c)
        return self.table.get((i, a, b))

    def composable_pairs(self, i, j):
        """All (a, b) in cells[j] with cod_i a = dom_i b."""
        by_dom = defaultdict(list)
        for b in self.cells(j):
            by_dom[boundary(self, b, DOM, i)].append(b)
        for a in self.cells(j):
            for b in by_dom.get(boundary(self, a, COD, i), ()):
                yield a, b

    def __repr__(self):
        return "FiniteMagma({} cells, {} entries)".format(len(self.all_cells()), len(self.table))


def validate_magma(m):
    r = validate_omega_graph(m.graph)
    if not m.graph.is_reflexive:
        r.add("not reflexive", "an omega magma needs identity cells")
    if not r.ok:
        return r
    n = m.trunc_dim
    for key, old, new in m.conflicts:
        r.add("axiom 2", "composite is not single-valued", *key, old, new)
    for (i, a, b), c in sorted(m.table.items(), key=str):
        if a not in m or b not in m or c not in m:
            r.add("unknown cell", "table entry references an unknown cell", i, a, b, c)
            continue
        j = m.dim(a)
        if not (m.dim(b) == j == m.dim(c)) or not 0 <= i < j <= n:
            r.add("dimension", "table entry has inconsistent dimensions", i, a, b, c)
            continue
        if boundary(m, a, COD, i) != boundary(m, b, DOM, i):
            r.add("axiom 1", "composite defined on an incompatible pair", i, a, b)
            continue
        if i + 1 == j:
            if m.dom(c) != m.dom(a) or m.cod(c) != m.cod(b):
                r.add("axiom 4", "boundary of a codimension-1 composite", i, a, b, c)
        else:
            for side, step in ((DOM, m.dom), (COD, m.cod)):
                if m.comp(i, step(a), step(b)) != step(c):
                    r.add("axiom 5", "{} of composite is not the composite of {}s".format(side, side),
                          i, a, b, c)
    if r.violations:
        return r
    for j in range(1, n + 1):
        for i in range(j):
            for a, b in m.composable_pairs(i, j):
                if (i, a, b) not in m.table:
                    r.add("axiom 3", "composite missing for a compatible pair", i, a, b)
    return r


class MagmaMorphism:
    """Cell map between magmas given by a dict or a function."""

    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        if callable(mapping):
            self.fn, self.mapping = mapping, None
        else:
            self.mapping = dict(mapping)
            self.fn = self.mapping.__getitem__

    def __call__(self, x):
        if isinstance(x, FormalId):
            return self.target.idn(self(x.base))
        return self.fn(x)

    def __repr__(self):
        return "MagmaMorphism({})".format(self.mapping if self.mapping is not None else self.fn)


def identity_morphism(m):
    return MagmaMorphism(m, m, lambda x: x)


def compose_morphisms(g, f):
    """g after f."""
    return MagmaMorphism(f.source, g.target, lambda x: g(f(x)))


def check_magma_map(f, source, target, r, label=""):
    """Commutation of ``f`` with every table composite of a finite source."""
    for (i, a, b), c in sorted(source.table.items(), key=str):
        try:
            fc, fab = f(c), target.comp(i, f(a), f(b))
        except (KeyError, ValueError):
            r.add("unknown cell", "{}map undefined".format(label), i, a, b)
            continue
        if fab != fc:
            r.add("composition", "{}F(a⊙b) != F(a)⊙F(b)".format(label), i, a, b)
    return r


def validate_magma_morphism(f):
    r = Report()
    s, t = f.source, f.target
    if f.mapping is not None:
        for c in s.all_cells():
            if c not in f.mapping:
                r.add("unknown cell", "map undefined", c)
        for c, v in f.mapping.items():
            if c not in s or v not in t:
                r.add("unknown cell", "map references an unknown cell", c, v)
        if r.violations:
            return r
    check_graph_map(f, s, t, s.all_cells(), r)
    return check_magma_map(f, s, t, r)


class EqRelation:
    """Graded partition of a finite magma's cells."""

    def __init__(self, base, classes):
        self.base = base
        self.classes = {d: [list(c) for c in cs] for d, cs in classes.items()}
        self._cls = {}
        for d, cs in self.classes.items():
            for k, c in enumerate(cs):
                for x in c:
                    self._cls[x] = (d, k)

    @classmethod
    def diagonal(cls, m):
        return cls(m, {d: [[x] for x in m.cells(d)] for d in range(m.trunc_dim + 1)})

    @classmethod
    def total(cls, m):
        return cls(m, {d: [list(m.cells(d))] if m.cells(d) else [] for d in range(m.trunc_dim + 1)})

    @classmethod
    def from_union_find(cls, m, uf):
        classes = {}
        for d in range(m.trunc_dim + 1):
            groups = defaultdict(list)
            for x in m.cells(d):
                groups[uf[x]].append(x)
            classes[d] = list(groups.values())
        return cls(m, classes)

    def class_id(self, x):
        if isinstance(x, FormalId):
            return ("id", self.class_id(x.base))
        return self._cls[x]

    def related(self, a, b):
        return self.class_id(a) == self.class_id(b)

    def representative(self, x):
        """Least cell of the class in id order."""
        d, k = self._cls[x]
        return min(self.classes[d][k])

    def __repr__(self):
        return "EqRelation({})".format(self.classes)


def generate_congruence(m, pairs):
    """Least equivalence relation containing ``pairs`` closed under the magma structure."""
    uf = UnionFind(m.all_cells())
    for a, b in pairs:
        uf.union(a, b)

    def merge(cells):
        if len({uf[x] for x in cells}) > 1:
            uf.union(*cells)
            return True
        return False

    changed = True
    while changed:
        changed = False
        for d in range(m.trunc_dim + 1):
            groups = defaultdict(list)
            for x in m.cells(d):
                groups[uf[x]].append(x)
            for g in groups.values():
                if d > 0:
                    changed |= merge([m.dom(x) for x in g])
                    changed |= merge([m.cod(x) for x in g])
                if d < m.trunc_dim:
                    changed |= merge([m.idn(x) for x in g])
        results = defaultdict(list)
        for (i, a, b), c in m.table.items():
            results[i, uf[a], uf[b]].append(c)
        for cs in results.values():
            changed |= merge(cs)
    return EqRelation.from_union_find(m, uf)


def _is_partition(E, m, r):
    for d in range(m.trunc_dim + 1):
        flat = [x for c in E.classes.get(d, []) for x in c]
        if sorted(map(str, flat)) != sorted(map(str, m.cells(d))) or len(set(flat)) != len(flat):
            r.add("partition", "classes do not partition the {}-cells".format(d), d)


def analyze_equivalence_relation(E, bound=7):
    """Flags ``submagma``, ``sharp`` and ``categorical`` with witnesses.

    The categorical check compares free-magma terms of at most ``bound`` nodes
    and dimension at most the truncation dimension.
    """
    from .strict import nf

    m = E.base
    r = Report(bound=bound)
    _is_partition(E, m, r)
    if r.violations:
        return {"submagma": False, "sharp": False, "categorical": False, "report": r}
    sub = Report()
    for x in m.all_cells():
        if m.dim(x) > 0:
            for y in m.all_cells():
                if m.dim(y) == m.dim(x) and E.related(x, y):
                    if not E.related(m.dom(x), m.dom(y)) or not E.related(m.cod(x), m.cod(y)):
                        sub.add("submagma", "boundaries of related cells are unrelated", x, y)
        if m.dim(x) < m.trunc_dim:
            for y in m.cells(m.dim(x)):
                if E.related(x, y) and not E.related(m.idn(x), m.idn(y)):
                    sub.add("submagma", "identities of related cells are unrelated", x, y)
    seen = {}
    for (i, a, b), c in sorted(m.table.items(), key=str):
        key = (i, E.class_id(a), E.class_id(b))
        if key in seen and not E.related(seen[key][1], c):
            sub.add("submagma", "composites of related pairs are unrelated", i, a, b, *seen[key][0])
        seen.setdefault(key, ((a, b), c))
    sharp = Report()
    for j in range(1, m.trunc_dim + 1):
        for i in range(j):
            hits = set()
            for a, b in m.composable_pairs(i, j):
                hits.add((E.class_id(a), E.class_id(b)))
            for ca in E.classes.get(j, []):
                for cb in E.classes[j]:
                    ka, kb = E.class_id(ca[0]), E.class_id(cb[0])
                    if (ka, kb) in hits:
                        continue
                    wit = _related_boundary_pair(m, E, i, ca, cb)
                    if wit is not None:
                        sharp.add("sharp", "no composable representatives", i, *wit)
    cat = Report(bound=bound)
    groups = {}
    for terms in enumerate_terms(m.graph, bound, max_dim=m.trunc_dim).values():
        for t in terms:
            try:
                v = evaluate(t, m)
            except ValueError:
                cat.add("categorical", "term does not evaluate", format_term(t))
                continue
            key = nf(m.graph, t)
            if key in groups and not E.related(groups[key][1], v):
                cat.add("categorical", "law-congruent terms evaluate to unrelated cells",
                        format_term(groups[key][0]), format_term(t))
            groups.setdefault(key, (t, v))
    r.extend(sub).extend(sharp).extend(cat)
    return {"submagma": sub.ok, "sharp": sharp.ok, "categorical": cat.ok, "report": r}


def _related_boundary_pair(m, E, i, ca, cb):
    for a in ca:
        ba = boundary(m, a, COD, i)
        for b in cb:
            if E.related(ba, boundary(m, b, DOM, i)):
                return (a, b)
    return None


def quotient_magma(m, E):
    """The quotient M//E and its projection, for a sharp submagma relation.

    Classes are named by their least member; composites use the first
    composable representative pair in id order.
    """
    flags = analyze_equivalence_relation(E, bound=1)
    if not flags["submagma"]:
        raise ValueError("relation is not a submagma: {}".format(flags["report"].violations[0]))
    if not flags["sharp"]:
        bad = [v for v in flags["report"].violations if v.kind == "sharp"][0]
        raise ValueError("relation is not sharp: {}".format(bad))
    g = m.graph
    rep = {x: E.representative(x) for x in m.all_cells()}
    cells = {d: sorted({rep[x] for x in g.cells(d)}) for d in range(g.trunc_dim + 1)}
    dom = {x: rep[g.dom(x)] for d in range(1, g.trunc_dim + 1) for x in cells[d]}
    cod = {x: rep[g.cod(x)] for d in range(1, g.trunc_dim + 1) for x in cells[d]}
    id_of = {x: rep[g.idn(x)] for d in range(g.trunc_dim) for x in cells[d]}
    from .globular import OmegaGraph
    qg = OmegaGraph(g.trunc_dim, cells, dom, cod, id_of)
    entries = {}
    for (i, a, b), c in sorted(m.table.items(), key=lambda kv: (kv[0][0], str(kv[0][1]), str(kv[0][2]))):
        key = (i, rep[a], rep[b])
        if key not in entries:
            entries[key] = rep[c]
    q = FiniteMagma(qg, entries)
    return q, MagmaMorphism(m, q, rep)
