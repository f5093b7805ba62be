"""``linext`` command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 a consistency check failed.
"""

from __future__ import annotations

import argparse
import re
import sys
from importlib import resources
from typing import Sequence

from .. import oracle
from ..atkinson import atkinson_spectrum, q_atkinson_spectrum
from ..counting import METHODS, count
from ..dcomplete import d_complete_violation, hook_lengths, q_hook_maj, q_inv_rooted_tree
from ..errors import ConsistencyError, LinextError, NotMobileTreeError, ParseError
from ..labeling import LabeledPoset, natural_labeling
from ..mobile import count_mobile, descent_polynomial, euler_family, euler_spec, realize, recognize_mobile_tree
from ..poset import fold, ominus
from ..qdet import q_inv_det, q_maj_det, sigma_partitioned_regular_labeling
from .dot import emit_dot
from .dsl import Document, NamedMobile, NamedPoset, format_definition, format_document, parse, parse_file

__all__ = ["main", "parse", "emit_dot", "build_parser"]


class UsageError(LinextError):
    pass


def _load(path: str) -> Document:
    try:
        return parse_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _target(doc: Document, name: str | None):
    if name is None:
        candidates = doc.names("mobile") or doc.names("poset")
        if not candidates:
            raise UsageError("document defines no posets")
        name = candidates[-1]
    try:
        value = doc[name]
    except KeyError:
        raise UsageError(f"no poset or mobile named {name!r}") from None
    if not isinstance(value, (NamedPoset, NamedMobile)):
        raise UsageError(f"{name!r} is a labeling, not a poset")
    return name, value


def _pairs(text: str | None, named) -> list[tuple[int, int]]:
    if not text:
        return []
    out = []
    for item in text.split(","):
        m = re.fullmatch(r"\s*([^<\s]+)\s*<\s*([^<\s]+)\s*", item)
        if m is None:
            raise UsageError(f"bad fold {item!r}, expected a<b")
        try:
            out.append((named.index(m.group(1)), named.index(m.group(2))))
        except KeyError as exc:
            raise UsageError(f"unknown element {exc.args[0]!r}") from None
    return out


def _check(label: str, got, want) -> None:
    if got != want:
        raise ConsistencyError(f"{label}: got {got}, oracle gives {want}")


# -- subcommands ---------------------------------------------------------------


def cmd_count(args) -> str:
    doc = _load(args.file)
    _, target = _target(doc, args.target)
    folds = _pairs(args.folds, target)
    if isinstance(target, NamedMobile) and args.method == "det" and not folds:
        value = count_mobile(target.realization)
    else:
        value = count(target.poset, args.method, folds or None, args.max_n)
    if args.check:
        _check(f"count --method {args.method}", value, oracle.count(target.poset, args.max_n))
    return str(value)


def _labeling(doc: Document, args, target_name, stat):
    if args.labeling:
        try:
            lab = doc[args.labeling]
        except KeyError:
            raise UsageError(f"no labeling named {args.labeling!r}") from None
        if target_name is not None and lab.target != target_name:
            raise UsageError(f"labeling {args.labeling} is on {lab.target}, not {target_name}")
        return lab.target, doc[lab.target], lab.labeled
    name, value = _target(doc, target_name)
    if stat == "inv" and isinstance(value, NamedMobile):
        return name, value, sigma_partitioned_regular_labeling(value.realization)
    return name, value, natural_labeling(value.poset)


def _det_realization(value, lp: LabeledPoset):
    """Realization of the target plus the labeling moved onto its elements."""
    if isinstance(value, NamedMobile):
        return value.realization, lp.omega
    found = recognize_mobile_tree(value.poset) if value.poset.is_tree() else None
    if found is None:
        raise NotMobileTreeError("the det method needs a mobile or a mobile tree poset")
    real = realize(found.spec, check=False)
    return real, tuple(lp.omega[found.element_map[t]] for t in range(real.poset.n))


def cmd_qcount(args) -> str:
    stat = args.stat_flag or args.stat
    doc = _load(args.file)
    _, value, lp = _labeling(doc, args, args.target, stat)
    if args.method == "oracle":
        poly = oracle.stat_gen_poly(lp, stat, args.max_n)
    elif args.method == "hook":
        poly = q_hook_maj(lp) if stat == "maj" else q_inv_rooted_tree(lp)
    else:
        real, omega = _det_realization(value, lp)
        poly = q_maj_det(real, omega) if stat == "maj" else q_inv_det(real, omega)
    if args.check:
        _check(f"qcount {stat}", poly, oracle.stat_gen_poly(lp, stat, args.max_n))
    return str(poly)


def cmd_spectrum(args) -> str:
    doc = _load(args.file)
    if args.labeling:
        _, value, lp = _labeling(doc, args, args.target, "inv")
    else:
        _, value = _target(doc, args.target)
        lp = None
    try:
        a = value.index(args.element)
    except KeyError:
        raise UsageError(f"unknown element {args.element!r}") from None
    if lp is None:
        spec = atkinson_spectrum(value.poset, a) if args.method == "atkinson" else oracle.spectrum(value.poset, a, args.max_n)
        if args.check:
            _check("spectrum", spec, oracle.spectrum(value.poset, a, args.max_n))
        return " ".join(map(str, spec))
    spec = q_atkinson_spectrum(lp, a) if args.method == "atkinson" else oracle.q_spectrum(lp, a, args.max_n)
    if args.check:
        _check("q-spectrum", spec, oracle.q_spectrum(lp, a, args.max_n))
    return "\n".join(f"{r}: {p}" for r, p in enumerate(spec, start=1))


def cmd_check_dcomplete(args) -> str:
    doc = _load(args.file)
    _, value = _target(doc, args.target)
    poset = value.poset
    if not poset.is_connected():
        return "not d-complete: poset is not connected"
    v = d_complete_violation(poset, limit=max(poset.n, 25))
    if v is not None:
        return f"not d-complete (clause {v.clause}): {v.message}"
    hooks = hook_lengths(poset, limit=max(poset.n, 25))
    return "d-complete\nhooks: " + " ".join(f"{value.names[x]}:{h}" for x, h in enumerate(hooks))


def cmd_recognize(args) -> str:
    doc = _load(args.file)
    _, value = _target(doc, args.target)
    found = recognize_mobile_tree(value.poset, args.max_n if args.max_n else None)
    if found is None:
        return "not a mobile tree poset"
    nm = value.names
    spec = found.spec
    lines = [
        "mobile tree poset",
        "ribbon: " + " ".join(nm[x] for x in found.ribbon),
        "descents: {" + ",".join(map(str, sorted(spec.descents))) + "}",
        "folds: " + (", ".join(f"{nm[x]}<{nm[y]}" for x, y in found.folds) or "none"),
    ]
    if spec.anchor is not None:
        lines.append(f"anchor at: {nm[found.ribbon[spec.anchor.z - 1]]}")
    lines.append(f"count: {count_mobile(spec)}")
    return "\n".join(lines)


def _range(text: str) -> range:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text)
    if m is None:
        raise UsageError(f"bad range {text!r}, expected K or K..L")
    lo = int(m.group(1))
    hi = int(m.group(2) or lo)
    if lo < 1 or hi < lo:
        raise UsageError(f"bad range {text!r}")
    return range(lo, hi + 1)


def cmd_euler(args) -> str:
    return " ".join(str(euler_family(args.kind, args.p, k, args.closed_form)[1]) for k in _range(args.k))


def cmd_descent_poly(args) -> str:
    if args.euler:
        kind, p, k = args.euler
        if kind not in ("chain", "antichain"):
            raise UsageError(f"unknown family {kind!r}")
        spec = euler_spec(kind, int(p), int(k))
    else:
        if not args.file:
            raise UsageError("descent-poly needs FILE TARGET or --euler KIND P K")
        doc = _load(args.file)
        _, value = _target(doc, args.target)
        if not isinstance(value, NamedMobile):
            raise UsageError("descent-poly needs a mobile definition")
        spec = value.spec
    return str(descent_polynomial(spec))


def _dot(doc: Document, name: str | None, folds_text: str | None) -> str:
    name, value = _target(doc, name)
    folds = _pairs(folds_text, value)
    if not folds and isinstance(value, NamedMobile):
        folds = list(value.realization.folds())
    return emit_dot(value.poset, value.names, folds, graph_name=name).rstrip("\n")


def cmd_dot(args) -> str:
    return _dot(_load(args.file), args.target, args.folds)


def cmd_show(args) -> str:
    doc = _load(args.file)
    if args.format == "dot":
        return _dot(doc, args.target, None)
    if args.target is None:
        return format_document(doc).rstrip("\n")
    for d in doc.definitions:
        if d.name == args.target:
            return format_definition(d)
    raise UsageError(f"no definition named {args.target!r}")


# -- fixture suite --------------------------------------------------------------


def _fixture(name: str) -> Document:
    return parse(resources.files("linext").joinpath("fixtures").joinpath(name).read_text(encoding="utf-8"))


def _verify_cases():
    def c(file, target, method="det", folds=None):
        def run():
            value = _fixture(file)[target]
            if isinstance(value, NamedMobile) and method == "det":
                return count_mobile(value.realization)
            return count(value.poset, method, _pairs(folds, value) or None)
        return run

    def q(file, stat):
        def run():
            doc = _fixture(file)
            lab = doc["L"]
            real = doc[lab.target].realization
            fn = q_maj_det if stat == "maj" else q_inv_det
            return str(fn(real, lab.labeled.omega))
        return run

    def split(fold_names):
        def run():
            value = _fixture("bridges.pos")["P"]
            f = _pairs(fold_names, value)
            return f"{oracle.count(ominus(value.poset, f))}-{oracle.count(fold(value.poset, f, f))}"
        return run

    return [
        ("ribbon det", c("ribbon.pos", "R"), 35),
        ("ribbon atkinson", c("ribbon.pos", "R", "atkinson"), 35),
        ("bridges det", c("bridges.pos", "P", "det", "c<e,d<g"), 77),
        ("bridges split c<e", split("c<e"), "105-28"),
        ("bridges split a<c", split("a<c"), "117-40"),
        ("diamond mobile", c("mobile_diamond.pos", "M"), 240),
        ("mobile tree", c("mobile_tree.pos", "M"), 12),
        ("x poset", c("x_poset.pos", "X"), 4),
        ("mobile tree maj", q("mobile_tree.pos", "maj"), "q^4+2q^5+q^6+q^8+3q^9+3q^10+q^11"),
        ("mobile tree inv", q("mobile_tree.pos", "inv"), "q^6+3q^7+4q^8+3q^9+q^10"),
        ("up-down chain family", lambda: [euler_family("chain", 1, k)[1] for k in range(1, 6)],
         [1, 16, 1036, 174664, 60849880]),
        ("up-down antichain family", lambda: [euler_family("antichain", 2, k)[1] for k in range(1, 6)],
         [2, 220, 163800, 445021200, 3214652032800]),
        ("up-down ribbons", lambda: [euler_family("chain", 0, k)[1] for k in range(1, 5)], [1, 5, 61, 1385]),
        ("descent poly k=2", lambda: str(descent_polynomial(euler_spec("chain", 1, 2))), "binom(N,3) - 4"),
        ("descent poly k=3", lambda: str(descent_polynomial(euler_spec("chain", 1, 3))),
         "16*binom(N,6) - 4*binom(N,3) + 28"),
        ("star not mobile", lambda: recognize_mobile_tree(_fixture("star.pos")["S"].poset), None),
    ]


def cmd_verify(args) -> tuple[str, int]:
    lines, failed = [], 0
    for name, run, want in _verify_cases():
        try:
            got = run()
        except LinextError as exc:
            got = f"error: {exc}"
        ok = got == want
        failed += not ok
        lines.append(f"{'ok  ' if ok else 'FAIL'} {name}: {got}" + ("" if ok else f" (want {want})"))
    lines.append(f"{len(lines) - failed} passed, {failed} failed")
    return "\n".join(lines), 2 if failed else 0


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linext", description="Count linear extensions of posets exactly.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, target=True):
        p.add_argument("file")
        if target:
            p.add_argument("target", nargs="?")
        p.add_argument("--max-n", type=int, default=None, help="oracle size cap")
        p.add_argument("--check", action="store_true", help="compare with the brute-force oracle")

    p = sub.add_parser("count", help="number of linear extensions")
    common(p)
    p.add_argument("--method", choices=METHODS, default="det")
    p.add_argument("--folds", help="comma-separated covers a<b to fold (det method)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("qcount", help="maj or inv generating polynomial")
    p.add_argument("stat", choices=("maj", "inv"))
    common(p)
    p.add_argument("--stat", dest="stat_flag", choices=("maj", "inv"))
    p.add_argument("--labeling")
    p.add_argument("--method", choices=("det", "oracle", "hook"), default="det")
    p.set_defaults(func=cmd_qcount)

    p = sub.add_parser("spectrum", help="positions of one element over all extensions")
    p.add_argument("file")
    p.add_argument("target")
    p.add_argument("element")
    p.add_argument("--method", choices=("atkinson", "oracle"), default="atkinson")
    p.add_argument("--labeling", help="weight by q^inv under this labeling")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("check-dcomplete", help="d-completeness and hook lengths")
    common(p)
    p.set_defaults(func=cmd_check_dcomplete)

    p = sub.add_parser("recognize-mobile", help="find a mobile tree decomposition")
    common(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("euler", help="counts for the up-down families")
    p.add_argument("kind", choices=("chain", "antichain"))
    p.add_argument("p", type=int)
    p.add_argument("k", help="K or K..L")
    p.add_argument("--closed-form", action="store_true", help="also check the closed-form determinant")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("descent-poly", help="e(P_{Z,m}) as a polynomial in N")
    p.add_argument("file", nargs="?")
    p.add_argument("target", nargs="?")
    p.add_argument("--euler", nargs=3, metavar=("KIND", "P", "K"))
    p.set_defaults(func=cmd_descent_poly)

    p = sub.add_parser("dot", help="Hasse diagram as DOT")
    p.add_argument("file")
    p.add_argument("target", nargs="?")
    p.add_argument("--folds", help="covers to highlight; mobiles default to their path folds")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("show", help="print a definition as text or DOT")
    p.add_argument("file")
    p.add_argument("target", nargs="?")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("verify", help="run the bundled fixture checks")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        result = args.func(args)
    except ConsistencyError as exc:
        print(f"consistency failure in {args.command}: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except LinextError as exc:
        print(f"error in {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    print(result)
    return code
