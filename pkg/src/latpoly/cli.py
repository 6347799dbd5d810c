"""Command-line interface: ``latpoly <command> ...``.

Exit codes: 0 success, 1 invalid input, 2 usage error, 3 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .document import LoopDocument, load_document, serialize_document
from .errors import ConsistencyError, ValidationError
from .legal_loop import LegalLoop, dual, reduce, refine, twelve_point_report
from .lattice_core import det2, vector_rotation_number
from .multi_polygon import (
    MultiPolygon,
    VanishingPolygon,
    count_sharp,
    dilate,
    ehrhart,
    from_legal_loop,
    from_unimodular,
    interior,
    make_multipolygon,
    simplify,
)
from .multi_polygon import fmt_rational
from .realizability import (
    FamilyTag,
    Feasibility,
    family_feasible,
    realize_any,
    realize_polygon,
    realize_unimodular,
)
from .svg import render_svg
from .unimodular import UnimodularSequence, rotation_by_reduction, rotation_formula

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_CONSISTENCY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _vectors(doc: LoopDocument):
    if doc.kind == "multipolygon":
        raise UsageError("this command needs a vector loop (kind unimodular or legal)")
    return doc.vertices


def _as_object(doc: LoopDocument):
    if doc.kind == "unimodular":
        return UnimodularSequence(doc.vertices)
    if doc.kind == "legal":
        return LegalLoop(doc.vertices)
    return make_multipolygon(doc.vertices, doc.signs)


def _as_multipolygon(doc: LoopDocument) -> MultiPolygon:
    obj = _as_object(doc)
    if isinstance(obj, UnimodularSequence):
        return from_unimodular(obj)
    if isinstance(obj, LegalLoop):
        return from_legal_loop(obj)
    return obj


def _mp_document(p: MultiPolygon) -> LoopDocument:
    return LoopDocument("multipolygon", p.vertices, p.signs)


def _emit_document(doc: LoopDocument, out, path=None):
    text = serialize_document(doc)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=out)


def analysis_line(p: MultiPolygon) -> str:
    t = ehrhart(p)
    sharp = count_sharp(p)
    inner = count_sharp(interior(p))
    if sharp != t(1) or inner != t.interior(1):
        raise ConsistencyError(f"lattice count {sharp}/{inner} disagrees with triple {t}")
    return (
        f"A={fmt_rational(t.a)} B={fmt_rational(2 * t.b)} C={t.c} sharp={sharp} interior={inner}; "
        f"ehrhart: {t.polynomial()}"
    )


def cmd_validate(args, out):
    doc = load_document(args.file)
    obj = _as_object(doc)
    print(f"OK {doc.kind} with {len(obj)} {'vertices' if doc.kind == 'multipolygon' else 'vectors'}", file=out)


def cmd_analyze(args, out):
    print(analysis_line(_as_multipolygon(load_document(args.file))), file=out)


def _rotation_value(vs, kind: str, method: str) -> int:
    if method == "oracle":
        return vector_rotation_number(reduce(LegalLoop(vs)).vectors if kind == "legal" else vs)
    seq = refine(reduce(LegalLoop(vs))) if kind == "legal" else UnimodularSequence(vs)
    return rotation_formula(seq) if method == "formula" else rotation_by_reduction(seq)


def cmd_rotation(args, out):
    doc = load_document(args.file)
    vs = _vectors(doc)
    methods = [args.method] if args.method else ["formula", "reduction", "oracle"]
    values = {m: _rotation_value(vs, doc.kind, m) for m in methods}
    if len(set(values.values())) != 1:
        raise ConsistencyError("rotation methods disagree: " + ", ".join(f"{m}={v}" for m, v in values.items()))
    print(next(iter(values.values())), file=out)


def cmd_dual(args, out):
    doc = load_document(args.file)
    loop = LegalLoop(_vectors(doc))
    _emit_document(LoopDocument("legal", dual(loop).vectors), out)


def cmd_twelve(args, out):
    doc = load_document(args.file)
    rep = twelve_point_report(LegalLoop(_vectors(doc)))
    print(f"B={rep.B} Bdual={rep.Bdual} r={rep.r} {'OK' if rep.holds else 'FAIL'}", file=out)
    if not rep.holds:
        raise ConsistencyError(f"B + Bdual = {rep.B + rep.Bdual} but 12r = {12 * rep.r}")


def cmd_count(args, out):
    p = _as_multipolygon(load_document(args.file))
    if args.interior:
        p = interior(p)
    print(count_sharp(dilate(p, args.dilate)), file=out)


def cmd_simplify(args, out):
    p = _as_multipolygon(load_document(args.file))
    try:
        q = simplify(p)
    except VanishingPolygon as exc:
        print(f"vanishes; triple {exc.triple}", file=out)
        return EXIT_INVALID
    _emit_document(_mp_document(q), out)


def cmd_refine(args, out):
    doc = load_document(args.file)
    seq = refine(reduce(LegalLoop(_vectors(doc))))
    _emit_document(LoopDocument("unimodular", seq.vectors), out)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not an exact rational") from None


def cmd_realize(args, out):
    a, b, c = args.a, args.b, args.c
    fam = FamilyTag(args.family)
    verdict = family_feasible(a, b, c, fam)
    if verdict is Feasibility.INFEASIBLE:
        raise ValidationError(f"({fmt_rational(a)}, {fmt_rational(b)}, {fmt_rational(c)}) is infeasible for {fam.value}", rule="infeasible")
    if fam is FamilyTag.ANY:
        p = realize_any(a, b, c)
    elif fam is FamilyTag.UNIMODULAR:
        p = realize_unimodular(a, c)
    elif fam in (FamilyTag.LATTICE_POLYGON, FamilyTag.CONVEX_POLYGON):
        p = realize_polygon(a, b)
    else:
        print(f"{fam.value}: {verdict.value} (no constructive witness for this family)", file=out)
        return EXIT_OK
    _emit_document(_mp_document(p), out, args.out)
    if args.out:
        print(analysis_line(p), file=out)


def cmd_render(args, out):
    doc = load_document(args.file)
    _as_object(doc)
    signs = doc.signs
    if doc.kind != "multipolygon":
        # vector loops: each side signed by the orientation of its endpoints
        vs = doc.vertices
        signs = [1 if det2(vs[i], vs[(i + 1) % len(vs)]) >= 0 else -1 for i in range(len(vs))]
    svg = render_svg(doc.vertices, signs, origin=doc.kind != "multipolygon")
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.svg}", file=out)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latpoly", description="Exact computations on lattice loops and multi-polygons.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, file=True):
        p = sub.add_parser(name, help=help_text)
        if file:
            p.add_argument("file", help="loop document (JSON)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check a document against the rules of its kind")
    add("analyze", cmd_analyze, "print A, B, C, lattice counts and the Ehrhart polynomial")
    p = add("rotation", cmd_rotation, "rotation number of a vector loop")
    p.add_argument("--method", choices=["formula", "reduction", "oracle"])
    add("dual", cmd_dual, "dual of a legal loop")
    add("twelve", cmd_twelve, "check B + Bdual = 12 r")
    p = add("count", cmd_count, "lattice count of a dilate")
    p.add_argument("--dilate", type=int, default=1, metavar="M")
    p.add_argument("--interior", action="store_true", help="count the interior (opposite signs)")
    add("simplify", cmd_simplify, "remove collinear middle vertices")
    add("refine", cmd_refine, "insert all side lattice points of a legal loop")
    p = add("realize", cmd_realize, "build a multi-polygon with the given triple", file=False)
    p.add_argument("a", type=_fraction)
    p.add_argument("b", type=_fraction)
    p.add_argument("c", type=_fraction)
    p.add_argument("--family", choices=[f.value for f in FamilyTag], default=FamilyTag.ANY.value)
    p.add_argument("--out", help="write the witness here instead of stdout")
    p = add("render", cmd_render, "draw the loop as SVG")
    p.add_argument("--svg", required=True, metavar="OUT")
    return parser


def _describe(exc: ValidationError) -> str:
    extra = []
    if exc.rule:
        extra.append(f"rule={exc.rule}")
    if exc.index is not None:
        extra.append(f"index={exc.index}")
    return f"{exc}" + (f" [{' '.join(extra)}]" if extra else "")


def run_command(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "count" and args.dilate < 1:
            raise UsageError("--dilate must be a positive integer")
        code = args.func(args, out)
        return EXIT_OK if code is None else code
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"invalid: {_describe(exc)}", file=err)
        return EXIT_INVALID
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=err)
        return EXIT_CONSISTENCY


def main(argv=None):
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
