"""Finite globular sets and omega graphs.

Cells are plain strings, unique across all dimensions.  Above the truncation
dimension every cell is a formal identity, represented by ``FormalId``.

Any object exposing ``dim``, ``dom``, ``cod`` and ``idn`` can be handed to the
helpers ``boundary``, ``is_parallel`` and ``identity_tower``; the magma, span
and construction modules rely on this.
"""
from dataclasses import dataclass

from .report import Report

DOM, COD = "dom", "cod"


@dataclass(frozen=True)
class FormalId:
    """Identity on ``base`` above the truncation; its dimension is read off the base."""
    base: object

    def __str__(self):
        return "id({})".format(self.base)


def boundary(m, x, side, k):
    """Iterated boundary dom_k or cod_k of ``x`` in ``m``."""
    d = m.dim(x)
    if k >= d or k < 0:
        raise ValueError("boundary dimension {} out of range for {}-cell {}".format(k, d, x))
    step = m.dom if side == DOM else m.cod
    while d > k:
        x = step(x)
        d -= 1
    return x


def identity_tower(m, x, j):
    while m.dim(x) < j:
        x = m.idn(x)
    return x


def is_parallel(m, a, b):
    da, db = m.dim(a), m.dim(b)
    if da != db:
        raise ValueError("cells {} and {} have dimensions {} and {}".format(a, b, da, db))
    if da == 0:
        return True
    return m.dom(a) == m.dom(b) and m.cod(a) == m.cod(b)


class OmegaGraph:
    """Truncated globular set, reflexive when ``id_of`` is given.

    ``cells[d]`` lists the d-cells for 0 <= d <= trunc_dim; ``dom``/``cod`` map
    each positive-dimensional cell to a cell one dimension down; ``id_of`` maps
    a (d-1)-cell to its materialized identity d-cell.
    """

    def __init__(self, trunc_dim, cells, dom=None, cod=None, id_of=None):
        self.trunc_dim = trunc_dim
        self._cells = {d: list(cells.get(d, ())) for d in range(trunc_dim + 1)}
        self._dom = dict(dom or {})
        self._cod = dict(cod or {})
        self.id_of = None if id_of is None else dict(id_of)
        self._dim = {}
        for d, cs in self._cells.items():
            for c in cs:
                self._dim.setdefault(c, d)
        self._id_base = {} if id_of is None else {v: k for k, v in self.id_of.items()}

    @property
    def is_reflexive(self):
        return self.id_of is not None

    def cells(self, d, bound=None):
        if d <= self.trunc_dim:
            return list(self._cells.get(d, ()))
        return [self.idn(x) for x in self.cells(d - 1)]

    def all_cells(self):
        return [c for d in range(self.trunc_dim + 1) for c in self._cells[d]]

    def __contains__(self, x):
        if isinstance(x, FormalId):
            return x.base in self
        return x in self._dim

    def dim(self, x):
        if isinstance(x, FormalId):
            return self.dim(x.base) + 1
        return self._dim[x]

    def dom(self, x):
        if isinstance(x, FormalId):
            return x.base
        return self._dom[x]

    def cod(self, x):
        if isinstance(x, FormalId):
            return x.base
        return self._cod[x]

    def idn(self, x):
        d = self.dim(x)
        if d < self.trunc_dim:
            if self.id_of is None:
                raise ValueError("bare globular set has no identities")
            return self.id_of[x]
        return FormalId(x)

    def is_identity(self, x):
        return isinstance(x, FormalId) or x in self._id_base

    def identity_base(self, x):
        if isinstance(x, FormalId):
            return x.base
        return self._id_base[x]

    def generators(self):
        """Non-identity cells, in dimension order."""
        return [c for c in self.all_cells() if not self.is_identity(c)]

    def __eq__(self, other):
        return (isinstance(other, OmegaGraph) and self.trunc_dim == other.trunc_dim
                and self._cells == other._cells and self._dom == other._dom
                and self._cod == other._cod and self.id_of == other.id_of)

    def __hash__(self):
        return hash((self.trunc_dim, tuple(self.all_cells())))

    def __repr__(self):
        return "OmegaGraph(trunc_dim={}, cells={})".format(self.trunc_dim, self._cells)


def make_graph(trunc_dim, gens, reflexive=True):
    """Build an omega graph from generators, adding identities automatically.

    ``gens`` is a list of ``(cell, dom, cod)`` triples (``dom``/``cod`` are None
    for 0-cells) in dimension order; the identity of ``x`` is named ``1.x``.
    """
    cells = {d: [] for d in range(trunc_dim + 1)}
    dom, cod, dims = {}, {}, {}
    for c, s, t in gens:
        d = 0 if s is None else dims[s] + 1
        dims[c] = d
        cells[d].append(c)
        if s is not None:
            dom[c], cod[c] = s, t
    id_of = None
    if reflexive:
        id_of = {}
        for d in range(1, trunc_dim + 1):
            for x in list(cells[d - 1]):
                i = "1." + x
                cells[d].append(i)
                dom[i] = cod[i] = x
                id_of[x] = i
    return OmegaGraph(trunc_dim, cells, dom, cod, id_of)


def validate_omega_graph(g):
    r = Report()
    seen = {}
    for d in range(g.trunc_dim + 1):
        for c in g._cells[d]:
            if c in seen:
                r.add("duplicate cell", "cell id used twice", c, seen[c], d)
            seen[c] = d
    known = set(seen)
    for key, table in (("dom", g._dom), ("cod", g._cod)):
        for c, b in table.items():
            if c not in known or b not in known:
                r.add("unknown cell", "{} table references an unknown cell".format(key), c, b)
    for d in range(1, g.trunc_dim + 1):
        for c in g._cells[d]:
            for key, table in (("dom", g._dom), ("cod", g._cod)):
                if c not in table:
                    r.add("missing boundary", "{} undefined".format(key), c)
                elif table[c] in known and seen[table[c]] != d - 1:
                    r.add("dimension", "{} of a {}-cell is not a {}-cell".format(key, d, d - 1), c, table[c])
    if any(v.kind in ("unknown cell", "missing boundary", "dimension") for v in r.violations):
        return r
    for d in range(2, g.trunc_dim + 1):
        for c in g._cells[d]:
            s, t = g._dom[c], g._cod[c]
            if g._dom[s] != g._dom[t]:
                r.add("globular relation", "dom∘dom=dom∘cod at {}".format(c), c)
            if g._cod[s] != g._cod[t]:
                r.add("globular relation", "cod∘dom=cod∘cod at {}".format(c), c)
    if g.id_of is not None:
        for x, i in g.id_of.items():
            if x not in known or i not in known:
                r.add("unknown cell", "id table references an unknown cell", x, i)
                continue
            if seen[i] != seen[x] + 1:
                r.add("dimension", "identity is not one dimension up", x, i)
            if g._dom.get(i) != x or g._cod.get(i) != x:
                r.add("identity boundary", "dom(id x)=x and cod(id x)=x fail", x, i)
        for d in range(g.trunc_dim):
            for x in g._cells[d]:
                if x not in g.id_of:
                    r.add("identity missing", "no identity cell", x)
        values = list(g.id_of.values())
        if len(set(values)) != len(values):
            r.add("identity not injective", "two cells share an identity")
    return r


class GraphMorphism:
    """Cell map between omega graphs; formal identities map to formal identities."""

    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)

    def __call__(self, x):
        if isinstance(x, FormalId):
            return self.target.idn(self(x.base))
        return self.mapping[x]

    def __repr__(self):
        return "GraphMorphism({})".format(self.mapping)


def check_graph_map(f, source, target, cells, r, label="", preserve_ids=True):
    """Record in ``r`` every failure of ``f`` to commute with dom, cod and id."""
    for x in cells:
        try:
            y = f(x)
        except (KeyError, ValueError):
            r.add("unknown cell", "{}map undefined".format(label), x)
            continue
        if hasattr(target, "__contains__") and y not in target:
            r.add("unknown cell", "{}image is not a target cell".format(label), x, y)
            continue
        d = source.dim(x)
        if target.dim(y) != d:
            r.add("dimension", "{}image has the wrong dimension".format(label), x, y)
            continue
        if d > 0:
            try:
                if f(source.dom(x)) != target.dom(y):
                    r.add("dom", "{}F(dom x) != dom F(x)".format(label), x)
                if f(source.cod(x)) != target.cod(y):
                    r.add("cod", "{}F(cod x) != cod F(x)".format(label), x)
            except (KeyError, ValueError):
                r.add("unknown cell", "{}map undefined on a boundary".format(label), x)
        if preserve_ids and getattr(source, "is_identity", None) and source.is_identity(x):
            base = source.identity_base(x)
            try:
                if target.idn(f(base)) != y:
                    r.add("identity", "{}F(id x) != id F(x)".format(label), base)
            except (KeyError, ValueError):
                r.add("unknown cell", "{}map undefined on an identity base".format(label), base)
    return r


def validate_graph_morphism(f):
    r = Report()
    s, t = f.source, f.target
    # an untruncated target (the free strict category) accepts every dimension
    top = s.trunc_dim if t.trunc_dim is None else t.trunc_dim
    cells = [c for c in s.all_cells() if s.dim(c) <= top]
    for c in s.all_cells():
        if c not in f.mapping:
            r.add("unknown cell", "map undefined", c)
    for c in f.mapping:
        if c not in s:
            r.add("unknown cell", "map defined on an unknown cell", c)
    if r.violations:
        return r
    both = s.is_reflexive and getattr(t, "is_reflexive", True)
    return check_graph_map(f, s, t, cells, r, preserve_ids=both)
