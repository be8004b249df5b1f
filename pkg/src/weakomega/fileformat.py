"""Line-based presentation documents.

A document is a sequence of sections, each opened by ``dim <N> [<name>]``::

    cell <d> <id>
    id <base> -> <idcell>
    dom <id> <id>
    cod <id> <id>
    comp <i> <a> <b> = <c>
    bridge <a> <b> <c>

followed by optional ``map <F> <id> -> <id>`` lines and
``span <name> x1=<ref> x2=<ref> x3=<ref> lambda=<F> rho=<F> kappa=<F> r=<ref>``
lines.  A map reference ``id`` is the identity; ``r=<ref>`` names the section
whose ``bridge`` lines form the bridge relation.  ``#`` starts a comment.
A section with ``comp`` lines is a magma, otherwise a graph.
"""
from dataclasses import dataclass, field

from .globular import FormalId, OmegaGraph
from .magma import FiniteMagma, MagmaMorphism
from .span import BridgeTable, Span, cells_by_dim


class PresentationError(ValueError):
    def __init__(self, line, message):
        super().__init__("line {}: {}".format(line, message) if line else message)
        self.line = line


@dataclass
class Section:
    name: str
    trunc_dim: int
    cells: dict = field(default_factory=dict)
    dom: dict = field(default_factory=dict)
    cod: dict = field(default_factory=dict)
    id_of: dict = field(default_factory=dict)
    comps: dict = field(default_factory=dict)
    bridges: list = field(default_factory=list)

    def dim(self, x):
        for d, cs in self.cells.items():
            if x in cs:
                return d
        return None


@dataclass
class Presentation:
    sections: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    spans: dict = field(default_factory=dict)
    _built: dict = field(default_factory=dict, repr=False)

    def graph(self, name):
        s = self.sections[name]
        cells = {d: list(s.cells.get(d, ())) for d in range(s.trunc_dim + 1)}
        return OmegaGraph(s.trunc_dim, cells, s.dom, s.cod, s.id_of or None)

    def magma(self, name):
        if name not in self._built:
            s = self.sections[name]
            self._built[name] = FiniteMagma(self.graph(name), dict(s.comps))
        return self._built[name]

    def is_magma(self, name):
        s = self.sections[name]
        return bool(s.comps) or s.trunc_dim == 0

    def span(self, name):
        """A declared span, or the diagonal span of a magma section."""
        key = "span:" + name
        if key in self._built:
            return self._built[key]
        if name in self.spans:
            spec = self.spans[name]
            x1, x2, x3 = (self.magma(spec[k]) for k in ("x1", "x2", "x3"))
            lam = self.morphism(spec["lambda"], x2, x1)
            rho = self.morphism(spec["rho"], x1, x2)
            kappa = self.morphism(spec["kappa"], x2, x3)
            R = BridgeTable(x2, self.sections[spec["r"]].bridges)
            out = Span(x1, x2, x3, lam, rho, kappa, R, name=name)
        elif name in self.sections:
            from .constructions import strict_as_weak
            out = strict_as_weak(self.magma(name))
            out.name = name
        else:
            raise PresentationError(0, "unknown span or section {!r}".format(name))
        self._built[key] = out
        return out

    def morphism(self, name, source, target):
        if name == "id":
            return MagmaMorphism(source, target, {x: x for x in source.all_cells()})
        if name not in self.maps:
            raise PresentationError(0, "unknown map {!r}".format(name))
        return MagmaMorphism(source, target, self.maps[name])

    def primary(self):
        """The last span if any, else the last section as a magma or graph."""
        if self.spans:
            return self.span(list(self.spans)[-1])
        if not self.sections:
            raise PresentationError(0, "empty document")
        name = list(self.sections)[-1]
        return self.magma(name) if self.is_magma(name) else self.graph(name)


SPAN_KEYS = ("x1", "x2", "x3", "lambda", "rho", "kappa", "r")


def parse_presentation(text):
    doc = Presentation()
    cur = None
    where = {}

    def need(n, tok, k):
        if len(tok) != k:
            raise PresentationError(n, "{} takes {} fields".format(tok[0], k - 1))

    def known(n, x):
        if cur is None or cur.dim(x) is None:
            raise PresentationError(n, "unknown cell {!r}".format(x))
        return cur.dim(x)

    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        if head == "dim":
            if len(tok) not in (2, 3) or not tok[1].isdigit():
                raise PresentationError(n, "expected: dim <N> [<name>]")
            name = tok[2] if len(tok) == 3 else "M"
            if name in doc.sections:
                raise PresentationError(n, "duplicate section {!r}".format(name))
            cur = doc.sections[name] = Section(name, int(tok[1]))
            where[name] = n
            continue
        if head in ("cell", "id", "dom", "cod", "comp", "bridge") and cur is None:
            raise PresentationError(n, "{} before any dim line".format(head))
        if head == "cell":
            need(n, tok, 3)
            if not tok[1].isdigit() or int(tok[1]) > cur.trunc_dim:
                raise PresentationError(n, "cell dimension out of range")
            if cur.dim(tok[2]) is not None:
                raise PresentationError(n, "duplicate cell {!r}".format(tok[2]))
            cur.cells.setdefault(int(tok[1]), []).append(tok[2])
        elif head == "id":
            if len(tok) != 4 or tok[2] != "->":
                raise PresentationError(n, "expected: id <base> -> <idcell>")
            known(n, tok[1])
            known(n, tok[3])
            cur.id_of[tok[1]] = tok[3]
        elif head in ("dom", "cod"):
            need(n, tok, 3)
            known(n, tok[1])
            known(n, tok[2])
            (cur.dom if head == "dom" else cur.cod)[tok[1]] = tok[2]
        elif head == "comp":
            if len(tok) != 6 or tok[4] != "=" or not tok[1].isdigit():
                raise PresentationError(n, "expected: comp <i> <a> <b> = <c>")
            for x in tok[2:4] + tok[5:]:
                known(n, x)
            key = (int(tok[1]), tok[2], tok[3])
            if key in cur.comps and cur.comps[key] != tok[5]:
                raise PresentationError(n, "conflicting composite for {} {} {}".format(*key))
            cur.comps[key] = tok[5]
        elif head == "bridge":
            need(n, tok, 4)
            for x in tok[1:]:
                known(n, x)
            cur.bridges.append(tuple(tok[1:]))
        elif head == "map":
            if len(tok) != 5 or tok[3] != "->":
                raise PresentationError(n, "expected: map <F> <id> -> <id>")
            doc.maps.setdefault(tok[1], {})[tok[2]] = tok[4]
        elif head == "span":
            if len(tok) != 2 + len(SPAN_KEYS):
                raise PresentationError(n, "span needs " + " ".join(k + "=" for k in SPAN_KEYS))
            spec = dict(t.split("=", 1) for t in tok[2:] if "=" in t)
            if sorted(spec) != sorted(SPAN_KEYS):
                raise PresentationError(n, "span needs " + " ".join(k + "=" for k in SPAN_KEYS))
            for k in ("x1", "x2", "x3", "r"):
                if spec[k] not in doc.sections:
                    raise PresentationError(n, "unknown section {!r}".format(spec[k]))
            for k, a, b in (("lambda", "x2", "x1"), ("rho", "x1", "x2"), ("kappa", "x2", "x3")):
                if spec[k] == "id":
                    continue
                if spec[k] not in doc.maps:
                    raise PresentationError(n, "unknown map {!r}".format(spec[k]))
                src, tgt = doc.sections[spec[a]], doc.sections[spec[b]]
                for x, y in doc.maps[spec[k]].items():
                    if src.dim(x) is None or tgt.dim(y) is None:
                        raise PresentationError(n, "map {} references an unknown cell: {} -> {}".format(spec[k], x, y))
                for cs in src.cells.values():
                    for x in cs:
                        if x not in doc.maps[spec[k]]:
                            raise PresentationError(n, "map {} is undefined on {}".format(spec[k], x))
            doc.spans[tok[1]] = spec
        else:
            raise PresentationError(n, "unknown directive {!r}".format(head))
    for name, s in doc.sections.items():
        for d in range(1, s.trunc_dim + 1):
            for x in s.cells.get(d, ()):
                if x not in s.dom or x not in s.cod:
                    raise PresentationError(where[name], "cell {!r} in section {!r} lacks dom or cod".format(x, name))
    return doc


def serialize(doc):
    out = []
    for s in doc.sections.values():
        out.append("dim {} {}".format(s.trunc_dim, s.name))
        for d in range(s.trunc_dim + 1):
            for x in s.cells.get(d, ()):
                out.append("cell {} {}".format(d, x))
        for d in range(1, s.trunc_dim + 1):
            for x in s.cells.get(d, ()):
                out.append("dom {} {}".format(x, s.dom[x]))
                out.append("cod {} {}".format(x, s.cod[x]))
        for d in range(s.trunc_dim + 1):
            for x in s.cells.get(d, ()):
                if x in s.id_of:
                    out.append("id {} -> {}".format(x, s.id_of[x]))
        for (i, a, b), c in sorted(s.comps.items(), key=lambda kv: (kv[0][0], str(kv[0][1]), str(kv[0][2]))):
            out.append("comp {} {} {} = {}".format(i, a, b, c))
        for a, b, c in sorted(set(s.bridges), key=str):
            out.append("bridge {} {} {}".format(a, b, c))
    for name in sorted(doc.maps):
        for x, y in doc.maps[name].items():
            out.append("map {} {} -> {}".format(name, x, y))
    for name, spec in doc.spans.items():
        out.append("span {} {}".format(name, " ".join("{}={}".format(k, spec[k]) for k in SPAN_KEYS)))
    return "\n".join(out) + "\n"


def section_of(m, name, bridges=()):
    g = m.graph
    cells = {d: list(g.cells(d)) for d in range(g.trunc_dim + 1)}
    return Section(name, g.trunc_dim, cells, dict(g._dom), dict(g._cod), dict(g.id_of or {}),
                   dict(m.table) if hasattr(m, "table") else {}, list(bridges))


def graph_document(g, name="M"):
    doc = Presentation()
    cells = {d: list(g.cells(d)) for d in range(g.trunc_dim + 1)}
    doc.sections[name] = Section(name, g.trunc_dim, cells, dict(g._dom), dict(g._cod), dict(g.id_of or {}))
    return doc


def magma_document(m, name="M"):
    doc = Presentation()
    doc.sections[name] = section_of(m, name)
    return doc


def _is_identity_map(f, source):
    return all(f(x) == x for x in source.all_cells())


def _same_magma(a, b):
    return a is b or (a.graph == b.graph and a.table == b.table)


def span_document(s, name="X"):
    """Document for a span of finite magmas; a diagonal span is written as its magma."""
    legs = (s.x1, s.x2, s.x3)
    # diagonal triples on top-dimensional cells are implicit
    triples = [t for t in s.R.triples(cells_by_dim(s.x2)) if not isinstance(t[2], FormalId)]
    diagonal = (_same_magma(s.x1, s.x2) and _same_magma(s.x2, s.x3)
                and all(_is_identity_map(f, src) for f, src in ((s.lam, s.x2), (s.rho, s.x1), (s.kappa, s.x2)))
                and all(c == s.x2.idn(a) and a == b for a, b, c in triples))
    if diagonal:
        return magma_document(s.x1, name)
    doc = Presentation()
    names = {}
    for leg, m in zip(("X1", "X2", "X3"), legs):
        key = next((k for k, v in names.items() if v is m), None)
        if key is None:
            names[leg] = m
    refs = {}
    for leg, m in zip(("x1", "x2", "x3"), legs):
        refs[leg] = next(k for k, v in names.items() if v is m)
    for k, m in names.items():
        doc.sections[k] = section_of(m, k, triples if m is s.x2 else ())
    spec = dict(refs, r=refs["x2"])
    for key, f, src, tgt in (("lambda", s.lam, s.x2, s.x1), ("rho", s.rho, s.x1, s.x2),
                             ("kappa", s.kappa, s.x2, s.x3)):
        if src is tgt and _is_identity_map(f, src):
            spec[key] = "id"
        else:
            doc.maps[key] = {x: f(x) for x in src.all_cells()}
            spec[key] = key
    doc.spans[name] = spec
    return doc
