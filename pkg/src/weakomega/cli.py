"""Command-line entry point.

Exit status 0 means the verdict is positive, 1 that a check failed on
well-formed input, 2 that the input could not be used.
"""
import argparse
import sys

from .constructions import (BicategoryData, ExtractionError, composable_1cells, extract_bicategory,
                            extract_category, hom_category, stabilize, weakify_bicategory)
from .equivalence import (PseudoFunctor, compute_eq, is_omega_equivalence, is_tame,
                          is_weak_equivalence, pi, theta, validate_pseudo_functor)
from .fileformat import parse_presentation, serialize, span_document
from .globular import OmegaGraph, validate_omega_graph
from .magma import FiniteMagma, parse_term, validate_magma
from .report import Report
from .span import cells_by_dim, penon_category, validate_weak_omega_category
from .strict import nf, strict_eq

COMMANDS = ("validate", "nf", "eq", "stretch", "hom", "stabilize", "extract-cat", "extract-bicat",
            "weakify", "eqtable", "pi", "tame", "weq", "oeq", "theta")


class InputError(Exception):
    pass


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_presentation(fh.read())
    except OSError as e:
        raise InputError(str(e))


def _graph(doc, args):
    obj = _section(doc, args)
    return obj if isinstance(obj, OmegaGraph) else obj.graph


def _section(doc, args):
    name = args.section or list(doc.sections)[-1]
    if name not in doc.sections:
        raise InputError("unknown section {!r}".format(name))
    return doc.magma(name) if doc.is_magma(name) else doc.graph(name)


def _span(doc, name=None):
    if name is None:
        obj = doc.primary()
        if isinstance(obj, OmegaGraph):
            raise InputError("the document has no magma or span")
        name = list(doc.spans)[-1] if doc.spans else list(doc.sections)[-1]
    return doc.span(name)


def _magma(doc, args):
    obj = _section(doc, args)
    if not isinstance(obj, FiniteMagma):
        raise InputError("section is a graph, not a magma")
    return obj


def _emit(doc, args, out):
    text = serialize(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.append("NOTE wrote " + args.out)
    else:
        out.extend("DOC " + line for line in text.splitlines())


def _functor(doc, source, target, names):
    X, Y = _span(doc, source), _span(doc, target)
    if not names:
        raise InputError("--map is required")
    if len(names) == 1:
        names = names * 3
    if len(names) != 3:
        raise InputError("give one --map for all legs or three for F1, F2, F3")
    legs = []
    for name, src, tgt in zip(names, (X.x1, X.x2, X.x3), (Y.x1, Y.x2, Y.x3)):
        legs.append(doc.morphism(name, src, tgt))
    return PseudoFunctor(X, Y, *legs, name=names[0])


# commands

def cmd_validate(doc, args, out):
    obj = doc.primary()
    if isinstance(obj, OmegaGraph):
        return validate_omega_graph(obj)
    if isinstance(obj, FiniteMagma):
        return validate_magma(obj)
    return validate_weak_omega_category(obj, args.bound)


def cmd_nf(doc, args, out):
    g = _graph(doc, args)
    for text in args.term or ():
        out.append("NF {}".format(nf(g, parse_term(text, g))))
    if not args.term:
        raise InputError("--term is required")
    return Report()


def cmd_eq(doc, args, out):
    if not args.term or len(args.term) != 2:
        raise InputError("eq takes exactly two --term options")
    g = _graph(doc, args)
    t1, t2 = (parse_term(t, g) for t in args.term)
    r = Report()
    if not strict_eq(g, t1, t2):
        r.add("not equal", "normal forms differ", nf(g, t1), nf(g, t2))
    return r


def cmd_stretch(doc, args, out):
    g = _graph(doc, args)
    bound = args.bound or 6
    s = penon_category(g, bound)
    r = validate_weak_omega_category(s, bound)
    for d, cs in sorted(cells_by_dim(s.x2, bound).items()):
        r.notes.append("dimension {}: {} terms".format(d, len(cs)))
    r.bound = bound
    return r


def cmd_hom(doc, args, out):
    if args.src is None or args.tgt is None:
        raise InputError("--src and --tgt are required")
    s = _span(doc, args.span)
    h = hom_category(s, args.src, args.tgt)
    _emit(span_document(h, s.name or "X"), args, out)
    return Report()


def cmd_stabilize(doc, args, out):
    if args.up == args.down:
        raise InputError("give exactly one of --up and --down")
    s = _span(doc, args.span)
    t = stabilize(s, "up" if args.up else "down")
    _emit(span_document(t, s.name or "X"), args, out)
    return Report()


def _extraction_failure(e):
    r = Report()
    r.add("extraction", str(e), *e.instance)
    if e.log:
        r.notes.append("last step: {}".format(e.log[-1]))
    return r


def cmd_extract_cat(doc, args, out):
    try:
        cat, log = extract_category(_span(doc, args.span))
    except ExtractionError as e:
        return _extraction_failure(e)
    for f, (a, b) in cat.arrows.items():
        out.append("ARROW {} {} {}".format(f, a, b))
    for (f, g), h in cat.comp.items():
        out.append("COMP {} {} = {}".format(f, g, h))
    r = Report()
    r.notes.append("{} scholium steps".format(len(log)))
    return r


def cmd_extract_bicat(doc, args, out):
    try:
        b, log = extract_bicategory(_span(doc, args.span))
    except ExtractionError as e:
        return _extraction_failure(e)
    for key, c in b.assoc.items():
        out.append("ASSOC {} = {}".format(" ".join(key), c))
    for f, c in b.left.items():
        out.append("LEFT {} = {}".format(f, c))
    for f, c in b.right.items():
        out.append("RIGHT {} = {}".format(f, c))
    r = Report()
    r.notes.append("{} scholium steps".format(len(log)))
    return r


def _bicategory(doc, args):
    m = _magma(doc, args)
    coh = {}
    for name in ("assoc", "left", "right"):
        table = doc.maps.get(name)
        if table is None:
            continue
        coh[name] = {tuple(k.split(",")) if name == "assoc" else k: v for k, v in table.items()}
    assoc = coh.get("assoc") or {t: m.idn(m.comp(0, m.comp(0, t[0], t[1]), t[2])) for t in composable_1cells(m, 3)}
    left = coh.get("left") or {f: m.idn(f) for f in m.cells(1)}
    right = coh.get("right") or dict(left)
    return BicategoryData(m, assoc, left, right)


def cmd_weakify(doc, args, out):
    b = _bicategory(doc, args)
    bound = args.bound or 7
    w = weakify_bicategory(b, bound)
    r = validate_weak_omega_category(w, bound)
    if r.ok:
        try:
            back, _ = extract_bicategory(w)
        except ExtractionError as e:
            return r.extend(_extraction_failure(e))
        for kind, one, two in (("associator", b.assoc, back.assoc), ("left unitor", b.left, back.left),
                               ("right unitor", b.right, back.right)):
            for k, v in one.items():
                if two.get(k) != v:
                    r.add("round trip", "{} component differs".format(kind), k, v, two.get(k))
    for d, cs in sorted(cells_by_dim(w.x2, bound).items()):
        r.notes.append("dimension {}: {} cells".format(d, len(cs)))
    r.bound = bound
    return r


def cmd_eqtable(doc, args, out):
    s = _span(doc, args.span)
    table = compute_eq(s.x1)
    m = s.x1
    for d in range(1, m.trunc_dim + 1):
        for x in m.cells(d):
            if x in table:
                w = table.witness.get(x, ("?",))
                tag = " contraction" if x in table.contr.get(d, ()) else ""
                out.append("EQ {} {} stratum {} {}{}".format(d, x, table.stratum_of.get(x), w[0], tag))
    if args.plot:
        from .plot import plot_eq_table
        plot_eq_table(table, args.plot)
        out.append("NOTE plot " + args.plot)
    return table.report()


def cmd_pi(doc, args, out):
    classes = pi(_span(doc, args.span))
    for c in classes:
        out.append("CLASS " + " ".join(sorted(map(str, c))))
    if args.plot:
        from .plot import plot_classes
        plot_classes(classes, args.plot)
        out.append("NOTE plot " + args.plot)
    return Report()


def cmd_tame(doc, args, out):
    F = _functor(doc, args.source, args.target, args.map)
    return is_tame(F).report()


def _tame_or_refuse(F):
    v = is_tame(F)
    if v.tame:
        return None
    r = Report()
    for x, y in v.eq_failures:
        r.add("not tame", "Π is only defined for tame pseudo-functors", x, y)
    return r


def cmd_weq(doc, args, out):
    F = _functor(doc, args.source, args.target, args.map)
    return _tame_or_refuse(F) or is_weak_equivalence(F)


def cmd_oeq(doc, args, out):
    F = _functor(doc, args.source, args.target, args.map)
    G = _functor(doc, args.target, args.source, args.inverse)
    return _tame_or_refuse(F) or _tame_or_refuse(G) or is_omega_equivalence(F, G)


def cmd_theta(doc, args, out):
    if args.h is None or args.src is None:
        raise InputError("--h and --src are required")
    s = _span(doc, args.span)
    F = theta(s, args.h, args.src, args.side)
    for x in F.source.x1.all_cells():
        out.append("MAP {} -> {}".format(x, F.f1(x)))
    r = validate_pseudo_functor(F)
    if r.ok:
        v = is_tame(F)
        r.notes.append("tame" if v.tame else "not tame")
    return r


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def build_parser():
    p = argparse.ArgumentParser(prog="weakomega", description="Finite presentations of weak omega categories.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file")
    p.add_argument("--bound", type=int)
    p.add_argument("--term", action="append")
    p.add_argument("--src")
    p.add_argument("--tgt")
    p.add_argument("--up", action="store_true")
    p.add_argument("--down", action="store_true")
    p.add_argument("--out")
    p.add_argument("--plot", help="write a bar chart to this file (eqtable, pi)")
    p.add_argument("--section", help="section to read as a graph or magma")
    p.add_argument("--span", help="span or section to use (default: the last one)")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--map", action="append", help="map name; once for all legs or three times")
    p.add_argument("--inverse", action="append", help="maps of the reverse pseudo-functor (oeq)")
    p.add_argument("--h", help="cell to compose with (theta)")
    p.add_argument("--side", choices=("right", "left"), default="right")
    return p


def run(argv):
    """Returns (exit code, output lines)."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return (0 if e.code == 0 else 2), []
    out = []
    try:
        doc = load(args.file)
        r = HANDLERS[args.command](doc, args, out)
    except (InputError, ValueError, KeyError) as e:
        return 2, ["ERROR {}".format(e)]
    lines = r.lines()
    return (0 if r.ok else 1), lines[:1] + out + lines[1:]


def main(argv=None):
    code, lines = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if code == 2 else sys.stdout
    for line in lines:
        print(line, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
