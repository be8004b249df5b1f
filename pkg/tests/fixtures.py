"""Hand-built presentations shared by the test suite."""
from itertools import product

from weakomega.constructions import BicategoryData, strict_as_weak
from weakomega.globular import OmegaGraph, make_graph
from weakomega.magma import FiniteMagma, MagmaMorphism
from weakomega.span import BridgeTable, Span


# generating graphs

G2 = make_graph(1, [("1", None, None), ("2", None, None)])
GF = make_graph(1, [("*", None, None), ("f", "*", "*")])
# one 2-generator on an endomorphism
Y2 = make_graph(2, [("*", None, None), ("f", "*", "*"), ("a", "f", "f")])
# one 2-generator between distinct 1-cells
Y3 = make_graph(2, [("*", None, None), ("f", "*", "*"), ("g", "*", "*"), ("a", "f", "g")])
GRAPHS = {"G2": G2, "GF": GF, "Y2": Y2, "Y3": Y3}


def magma(trunc_dim, cells, id_of, entries):
    """``cells`` maps name -> (dim, dom, cod); entries are ((i, a, b), c)."""
    by_dim = {d: [] for d in range(trunc_dim + 1)}
    dom, cod = {}, {}
    for c, (d, s, t) in cells.items():
        by_dim[d].append(c)
        if d:
            dom[c], cod[c] = s, t
    return FiniteMagma(OmegaGraph(trunc_dim, by_dim, dom, cod, id_of), entries)


def category(objects, arrows, ident, comp):
    """1-skeletal magma; identity composites are filled in."""
    cells = {x: (0, None, None) for x in objects}
    cells.update({f: (1, s, t) for f, (s, t) in arrows.items()})
    table = dict(comp)
    for f, (s, t) in arrows.items():
        table[ident[s], f] = f
        table[f, ident[t]] = f
    return magma(1, cells, ident, [((0, f, g), h) for (f, g), h in table.items()])


def two_category(objects, one, unit, hcomp1, two, unit2, vert, hcomp2):
    """2-skeletal magma; composites with identities are filled in."""
    cells = {x: (0, None, None) for x in objects}
    cells.update({f: (1, s, t) for f, (s, t) in one.items()})
    cells.update({x: (2, f, g) for x, (f, g) in two.items()})
    id_of = dict(unit)
    id_of.update(unit2)
    c1 = dict(hcomp1)
    for f, (s, t) in one.items():
        c1[unit[s], f] = f
        c1[f, unit[t]] = f
    v = dict(vert)
    for x, (f, g) in two.items():
        v[unit2[f], x] = x
        v[x, unit2[g]] = x
    h = dict(hcomp2)
    for x, (f, g) in two.items():
        s, t = one[f]
        h[unit2[unit[s]], x] = x
        h[x, unit2[unit[t]]] = x
    entries = [((0, a, b), c) for (a, b), c in c1.items()]
    entries += [((1, a, b), c) for (a, b), c in v.items()]
    entries += [((0, a, b), c) for (a, b), c in h.items()]
    return magma(2, cells, id_of, entries)


# 1-skeletal magmas and categories

Z2M = magma(1, {"*": (0, None, None), "e": (1, "*", "*"), "a": (1, "*", "*"), "b": (1, "*", "*")},
            {"*": "e"},
            [((0, "e", x), x) for x in "eab"] + [((0, x, "e"), x) for x in "ab"]
            + [((0, "a", "a"), "b"), ((0, "a", "b"), "a"), ((0, "b", "a"), "a"), ((0, "b", "b"), "b")])

CIso = category(["x", "y"], {"1x": ("x", "x"), "1y": ("y", "y"), "f": ("x", "y"), "g": ("y", "x")},
                {"x": "1x", "y": "1y"}, {("f", "g"): "1x", ("g", "f"): "1y"})
TERMINAL1 = category(["*"], {"1*": ("*", "*")}, {"*": "1*"}, {})
ARROW = category(["x", "y"], {"1x": ("x", "x"), "1y": ("y", "y"), "u": ("x", "y")},
                 {"x": "1x", "y": "1y"}, {})
Z2GROUP = category(["*"], {"e": ("*", "*"), "s": ("*", "*")}, {"*": "e"}, {("s", "s"): "e"})
IDEMPOTENT = category(["*"], {"e": ("*", "*"), "p": ("*", "*")}, {"*": "e"}, {("p", "p"): "p"})
CHAIN = category(["x", "y", "z"],
                 {"1x": ("x", "x"), "1y": ("y", "y"), "1z": ("z", "z"),
                  "u": ("x", "y"), "v": ("y", "z"), "w": ("x", "z")},
                 {"x": "1x", "y": "1y", "z": "1z"}, {("u", "v"): "w"})
DISCRETE2 = category(["p", "q"], {"1p": ("p", "p"), "1q": ("q", "q")}, {"p": "1p", "q": "1q"}, {})
# three mutually isomorphic objects plus a non-invertible arrow out of the clique
TRIANGLE = category(
    ["x", "y", "z", "w"],
    {**{"1" + o: (o, o) for o in "xyzw"},
     **{o + p: (o, p) for o in "xyz" for p in "xyz" if o != p},
     **{o + "w": (o, "w") for o in "xyz"}},
    {o: "1" + o for o in "xyzw"},
    {**{(o + p, p + q): ("1" + o if o == q else o + q)
        for o in "xyz" for p in "xyz" for q in "xyz" if o != p and p != q},
     **{(o + p, p + "w"): o + "w" for o in "xyz" for p in "xyz" if o != p}})
CATEGORIES = {"CIso": CIso, "terminal": TERMINAL1, "arrow": ARROW, "Z2": Z2GROUP,
              "idempotent": IDEMPOTENT, "chain": CHAIN, "discrete": DISCRETE2, "triangle": TRIANGLE}

# non-associative: (aa)a = ba = a... with a(aa) = ab = b
NONASSOC = magma(1, {"*": (0, None, None), "e": (1, "*", "*"), "a": (1, "*", "*"), "b": (1, "*", "*")},
                 {"*": "e"},
                 [((0, "e", x), x) for x in "eab"] + [((0, x, "e"), x) for x in "ab"]
                 + [((0, "a", "a"), "b"), ((0, "a", "b"), "b"), ((0, "b", "a"), "a"), ((0, "b", "b"), "b")])


# strict 2-categories

TERMINAL2 = two_category(["*"], {"1*": ("*", "*")}, {"*": "1*"}, {}, {"11*": ("1*", "1*")},
                         {"1*": "11*"}, {}, {})
# one object, one 1-cell, 2-cells forming Z/2
MONO2 = two_category(["*"], {"1*": ("*", "*")}, {"*": "1*"}, {},
                     {"11*": ("1*", "1*"), "s": ("1*", "1*")}, {"1*": "11*"},
                     {("s", "s"): "11*"}, {("s", "s"): "11*"})
# one object, one 1-cell, 2-cells {1, p} with p idempotent
MONO2P = two_category(["*"], {"1*": ("*", "*")}, {"*": "1*"}, {},
                      {"11*": ("1*", "1*"), "p": ("1*", "1*")}, {"1*": "11*"},
                      {("p", "p"): "p"}, {("p", "p"): "p"})


def _b2():
    one = {"1x": ("x", "x"), "1y": ("y", "y"), "f": ("x", "y"), "f'": ("x", "y")}
    two = {"11x": ("1x", "1x"), "11y": ("1y", "1y"), "1f": ("f", "f"), "1f'": ("f'", "f'"),
           "t": ("f", "f'"), "t'": ("f'", "f")}
    unit2 = {"1x": "11x", "1y": "11y", "f": "1f", "f'": "1f'"}
    vert = {("t", "t'"): "1f", ("t'", "t"): "1f'"}
    hor = {("11x", "11x"): "11x", ("11y", "11y"): "11y"}
    return two_category(["x", "y"], one, {"x": "1x", "y": "1y"}, {}, two, unit2, vert, hor)


B2 = _b2()
STRICT2 = {"terminal2": TERMINAL2, "mono2": MONO2, "mono2p": MONO2P, "B2": B2}


def strict_bicategory(m):
    """A strict 2-category as a bicategory with identity coherence cells."""
    from weakomega.constructions import composable_1cells
    assoc = {(f, g, h): m.idn(m.comp(0, m.comp(0, f, g), h)) for f, g, h in composable_1cells(m, 3)}
    left = {f: m.idn(f) for f in m.cells(1)}
    return BicategoryData(m, assoc, left, dict(left))


def _b1():
    """One object, 1-cells {I, a, z} with aa = z absorbing, Aut(z) = {1, t}.

    The associator is the coboundary of mu(a, a) = t.
    """
    one = {"I": ("*", "*"), "a": ("*", "*"), "z": ("*", "*")}
    prod = {("a", "a"): "z", ("a", "z"): "z", ("z", "a"): "z", ("z", "z"): "z"}
    two = {"1I": ("I", "I"), "1a": ("a", "a"), "1z": ("z", "z"), "t": ("z", "z")}
    unit2 = {"I": "1I", "a": "1a", "z": "1z"}
    parity = {"1I": 0, "1a": 0, "1z": 0, "t": 1}
    cell = {("z", 0): "1z", ("z", 1): "t", ("a", 0): "1a", ("I", 0): "1I"}
    hor = {}
    for x, y in product(two, two):
        f, g = two[x][0], two[y][0]
        fg = f if g == "I" else g if f == "I" else prod[f, g]
        hor[x, y] = cell[fg, (parity[x] + parity[y]) % 2]
    m = two_category(["*"], one, {"*": "I"}, prod, two, unit2, {("t", "t"): "1z"}, hor)

    def mul(f, g):
        return m.comp(0, f, g)

    def mu(f, g):
        return 1 if (f, g) == ("a", "a") else 0

    assoc = {}
    for f, g, h in product(one, repeat=3):
        w = (mu(g, h) + mu(f, mul(g, h)) + mu(f, g) + mu(mul(f, g), h)) % 2
        assoc[f, g, h] = cell[mul(mul(f, g), h), w]
    left = {f: unit2[f] for f in one}
    return BicategoryData(m, assoc, left, dict(left))


B1 = _b1()
BICATEGORIES = {"B1": B1, "B2": strict_bicategory(B2)}


# WB1: codiscrete 2-cells over a non-associative 1-cell table

def _wb1():
    ones = ["e", "u", "v"]
    prod = {("u", "u"): "v", ("u", "v"): "u", ("v", "u"): "v", ("v", "v"): "u"}
    for x in ones:
        prod["e", x] = prod[x, "e"] = x
    cells = {"*": (0, None, None)}
    cells.update({x: (1, "*", "*") for x in ones})
    cells.update({x + ">" + y: (2, x, y) for x in ones for y in ones})
    id_of = {"*": "e"}
    id_of.update({x: x + ">" + x for x in ones})
    entries = [((0, x, y), z) for (x, y), z in prod.items()]
    for x, y, z in product(ones, repeat=3):
        entries.append(((1, x + ">" + y, y + ">" + z), x + ">" + z))
    for x, y, x2, y2 in product(ones, repeat=4):
        entries.append(((0, x + ">" + y, x2 + ">" + y2), prod[x, x2] + ">" + prod[y, y2]))
    x1 = magma(2, cells, id_of, entries)
    one = MagmaMorphism(x1, x1, {c: c for c in x1.all_cells()})
    kappa = MagmaMorphism(x1, TERMINAL2, {c: {0: "*", 1: "1*", 2: "11*"}[x1.dim(c)] for c in x1.all_cells()})
    triples = [("*", "*", "e")] + [(x, y, x + ">" + y) for x in ones for y in ones]
    return Span(x1, x1, TERMINAL2, one, one, kappa, BridgeTable(x1, triples), name="WB1")


WB1 = _wb1()


def diagonal(m):
    return strict_as_weak(m)
