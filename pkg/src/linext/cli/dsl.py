"""Poset description language: parser, name resolution and pretty-printer.

A document is a sequence of definitions::

    poset R = ribbon 6 {3,5}
    poset D { elements: j, h, i, g; covers: j<h<g, j<i<g; }
    poset S = slantsum D@g under R@z2
    mobile M { ribbon 5 {1,3} names b, e, c, f, d; hang D under f; anchor A@a at c; }
    labeling L on M { a:10, b:7, ... }

Constructors: ``chain n``, ``antichain n``, ``ribbon n {S}``,
``slantsum Q@q under P@p``, ``fold P {a<b, ...}`` and ``sum P Q ...``.
``#`` starts a comment.  Newlines are whitespace.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from ..errors import LinextError, ParseError
from ..labeling import LabeledPoset
from ..mobile import Anchor, MobileSpec, Realization, realize
from ..poset import Poset, antichain, chain, disjoint_sum, fold, slant_sum
from ..mobile import ribbon as make_ribbon

_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<name>[A-Za-z0-9_][A-Za-z0-9_.']*)|(?P<sym>[{},;:<=@])")
KEYWORDS = {"poset", "mobile", "labeling"}


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "sym" or "eof"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind:
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# -- syntax tree ------------------------------------------------------------


@dataclass(frozen=True)
class Constructor:
    kind: str
    args: tuple


@dataclass(frozen=True)
class Explicit:
    elements: tuple[str, ...]
    covers: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class MobileBody:
    n: int
    descents: tuple[int, ...]
    names: tuple[str, ...] | None
    hangs: tuple[tuple[str, str], ...]
    anchors: tuple[tuple[str, str, str], ...]


@dataclass(frozen=True)
class LabelingBody:
    target: str
    labels: tuple[tuple[str, int], ...]


Body = Union[Constructor, Explicit, MobileBody, LabelingBody]


@dataclass(frozen=True)
class Definition:
    keyword: str
    name: str
    body: Body
    line: int = field(default=0, compare=False)


# -- resolved values ----------------------------------------------------------


@dataclass(frozen=True)
class NamedPoset:
    poset: Poset
    names: tuple[str, ...]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None


@dataclass(frozen=True)
class NamedMobile:
    realization: Realization
    names: tuple[str, ...]

    @property
    def spec(self) -> MobileSpec:
        return self.realization.spec

    @property
    def poset(self) -> Poset:
        return self.realization.poset

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None


@dataclass(frozen=True)
class NamedLabeling:
    target: str
    labeled: LabeledPoset


@dataclass
class Document:
    definitions: tuple[Definition, ...]
    values: dict = field(default_factory=dict, compare=False, repr=False)

    def __getitem__(self, name: str):
        return self.values[name]

    def names(self, keyword: str | None = None) -> list[str]:
        return [d.name for d in self.definitions if keyword is None or d.keyword == keyword]


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(msg, tok.line, tok.column)

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text or tok.kind == "eof":
            raise self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def accept(self, text: str) -> bool:
        if self.peek().kind != "eof" and self.peek().text == text:
            self.i += 1
            return True
        return False

    def name(self) -> Token:
        tok = self.next()
        if tok.kind != "name":
            raise self.error(f"expected a name, found {tok.text or 'end of input'!r}", tok)
        return tok

    def integer(self) -> int:
        tok = self.name()
        if not tok.text.isdigit():
            raise self.error(f"expected a number, found {tok.text!r}", tok)
        return int(tok.text)

    def int_set(self) -> tuple[int, ...]:
        self.expect("{")
        out = []
        if not self.accept("}"):
            out.append(self.integer())
            while self.accept(","):
                out.append(self.integer())
            self.expect("}")
        return tuple(out)

    def name_list(self) -> tuple[str, ...]:
        out = [self.name().text]
        while self.accept(","):
            out.append(self.name().text)
        return tuple(out)

    def end_item(self) -> None:
        # ';' separates items; it is optional right before '}'
        if not self.accept(";") and self.peek().text != "}":
            raise self.error(f"expected ';' or '}}', found {self.peek().text!r}")

    # grammar

    def document(self) -> list[tuple[Definition, Token]]:
        defs = []
        while self.peek().kind != "eof":
            start = self.peek()
            kw = self.name()
            if kw.text == "poset":
                d = self.poset_def(kw)
            elif kw.text == "mobile":
                d = self.mobile_def(kw)
            elif kw.text == "labeling":
                d = self.labeling_def(kw)
            else:
                raise self.error(f"expected 'poset', 'mobile' or 'labeling', found {kw.text!r}", kw)
            defs.append((d, start))
        return defs

    def poset_def(self, kw: Token) -> Definition:
        name = self.name().text
        if self.accept("="):
            return Definition("poset", name, self.constructor(), kw.line)
        self.expect("{")
        elements: tuple[str, ...] = ()
        covers: list[tuple[str, ...]] = []
        while not self.accept("}"):
            item = self.name()
            self.expect(":")
            if item.text == "elements":
                elements = self.name_list()
            elif item.text == "covers":
                covers.append(self.cover_chain())
                while self.accept(","):
                    covers.append(self.cover_chain())
            else:
                raise self.error(f"expected 'elements' or 'covers', found {item.text!r}", item)
            self.end_item()
        return Definition("poset", name, Explicit(elements, tuple(covers)), kw.line)

    def cover_chain(self) -> tuple[str, ...]:
        out = [self.name().text]
        self.expect("<")
        out.append(self.name().text)
        while self.accept("<"):
            out.append(self.name().text)
        return tuple(out)

    def constructor(self) -> Constructor:
        tok = self.name()
        kind = tok.text
        if kind in ("chain", "antichain"):
            return Constructor(kind, (self.integer(),))
        if kind == "ribbon":
            n = self.integer()
            return Constructor(kind, (n, self.int_set()))
        if kind == "slantsum":
            q_name = self.name().text
            self.expect("@")
            q = self.name().text
            self.expect("under")
            p_name = self.name().text
            self.expect("@")
            p = self.name().text
            return Constructor(kind, (q_name, q, p_name, p))
        if kind == "fold":
            base = self.name().text
            self.expect("{")
            pairs = []
            if not self.accept("}"):
                pairs.append(self.pair())
                while self.accept(","):
                    pairs.append(self.pair())
                self.expect("}")
            return Constructor(kind, (base, tuple(pairs)))
        if kind == "sum":
            parts = [self.name().text]
            while self.peek().kind == "name" and self.peek().text not in KEYWORDS:
                parts.append(self.name().text)
            return Constructor(kind, tuple(parts))
        raise self.error(f"unknown constructor {kind!r}", tok)

    def pair(self) -> tuple[str, str]:
        a = self.name().text
        self.expect("<")
        return a, self.name().text

    def mobile_def(self, kw: Token) -> Definition:
        name = self.name().text
        self.expect("{")
        self.expect("ribbon")
        n = self.integer()
        descents = self.int_set()
        names = None
        if self.accept("names"):
            names = self.name_list()
        self.end_item()
        hangs, anchors = [], []
        while not self.accept("}"):
            item = self.name()
            if item.text == "hang":
                part = self.name().text
                self.expect("under")
                hangs.append((part, self.name().text))
            elif item.text == "anchor":
                part = self.name().text
                self.expect("@")
                q = self.name().text
                self.expect("at")
                anchors.append((part, q, self.name().text))
            else:
                raise self.error(f"expected 'hang' or 'anchor', found {item.text!r}", item)
            self.end_item()
        return Definition("mobile", name, MobileBody(n, descents, names, tuple(hangs), tuple(anchors)), kw.line)

    def labeling_def(self, kw: Token) -> Definition:
        name = self.name().text
        self.expect("on")
        target = self.name().text
        self.expect("{")
        labels = []
        while not self.accept("}"):
            el = self.name().text
            self.expect(":")
            labels.append((el, self.integer()))
            if not self.accept(","):
                self.expect("}")
                break
        return Definition("labeling", name, LabelingBody(target, tuple(labels)), kw.line)


# -- resolution ----------------------------------------------------------------


def _fresh(name: str, taken: set[str], owner: str) -> str:
    if name not in taken:
        return name
    cand = f"{owner}.{name}"
    k = 2
    while cand in taken:
        cand = f"{owner}{k}.{name}"
        k += 1
    return cand


def _merge_names(groups: list[tuple[str, tuple[str, ...]]]) -> tuple[str, ...]:
    taken: set[str] = set()
    out = []
    for owner, names in groups:
        for nm in names:
            nm = _fresh(nm, taken, owner)
            taken.add(nm)
            out.append(nm)
    return tuple(out)


class _Resolver:
    def __init__(self, values: dict):
        self.values = values

    def poset(self, name: str) -> NamedPoset:
        v = self.values.get(name)
        if v is None:
            raise KeyError(f"unknown poset {name!r}")
        if isinstance(v, NamedMobile):
            return NamedPoset(v.poset, v.names)
        if not isinstance(v, NamedPoset):
            raise KeyError(f"{name!r} is not a poset")
        return v

    def target(self, name: str):
        v = self.values.get(name)
        if not isinstance(v, (NamedPoset, NamedMobile)):
            raise KeyError(f"unknown poset or mobile {name!r}")
        return v

    def build(self, d: Definition):
        body = d.body
        if isinstance(body, Explicit):
            return self.explicit(body)
        if isinstance(body, Constructor):
            return self.constructor(body)
        if isinstance(body, MobileBody):
            return self.mobile(body)
        return self.labeling(body)

    def explicit(self, body: Explicit) -> NamedPoset:
        names = list(body.elements)
        if len(set(names)) != len(names):
            raise ValueError("duplicate element name")
        for ch in body.covers:
            for nm in ch:
                if nm not in names:
                    if body.elements:
                        raise KeyError(f"element {nm!r} not listed in elements")
                    names.append(nm)
        idx = {nm: i for i, nm in enumerate(names)}
        pairs = [(idx[a], idx[b]) for ch in body.covers for a, b in zip(ch, ch[1:])]
        return NamedPoset(Poset(len(names), pairs), tuple(names))

    def constructor(self, c: Constructor) -> NamedPoset:
        k, a = c.kind, c.args
        if k == "chain":
            return NamedPoset(chain(a[0]), tuple(str(i) for i in range(a[0])))
        if k == "antichain":
            return NamedPoset(antichain(a[0]), tuple(str(i) for i in range(a[0])))
        if k == "ribbon":
            n, s = a
            return NamedPoset(make_ribbon(n, s), tuple(f"z{i}" for i in range(1, n + 1)))
        if k == "slantsum":
            q_name, q, p_name, p = a
            qp, pp = self.poset(q_name), self.poset(p_name)
            poset = slant_sum(pp.poset, pp.index(p), qp.poset, qp.index(q))
            return NamedPoset(poset, _merge_names([(p_name, pp.names), (q_name, qp.names)]))
        if k == "fold":
            base, pairs = a
            bp = self.poset(base)
            folds = [(bp.index(x), bp.index(y)) for x, y in pairs]
            for pr, (x, y) in zip(folds, pairs):
                if pr not in bp.poset.covers:
                    raise ValueError(f"{x}<{y} is not a cover of {base}")
            return NamedPoset(fold(bp.poset, folds, folds), bp.names)
        if k == "sum":
            parts = [self.poset(nm) for nm in a]
            poset = disjoint_sum(*(p.poset for p in parts))
            return NamedPoset(poset, _merge_names([(nm, p.names) for nm, p in zip(a, parts)]))
        raise ValueError(f"unknown constructor {k!r}")

    def mobile(self, body: MobileBody) -> NamedMobile:
        n = body.n
        bad = [s for s in body.descents if not 1 <= s <= n - 1]
        if bad:
            raise ValueError(f"descent {bad[0]} out of range 1..{n - 1}")
        names = body.names or tuple(f"z{i}" for i in range(1, n + 1))
        if len(names) != n:
            raise ValueError(f"ribbon of size {n} given {len(names)} names")

        def ref(r: str) -> int:
            if r in names:
                return names.index(r) + 1
            m = re.fullmatch(r"z_?(\d+)", r)
            if m and 1 <= int(m.group(1)) <= n:
                return int(m.group(1))
            raise KeyError(f"{r!r} is not a ribbon element")

        hangers = tuple((ref(r), self.poset(part).poset) for part, r in body.hangs)
        anchors = []
        for part, q, r in body.anchors:
            qp = self.poset(part)
            anchors.append(Anchor(ref(r), qp.poset, qp.index(q)))
        spec = MobileSpec(n, frozenset(body.descents), hangers, tuple(anchors))
        real = realize(spec)
        groups = [("", names)]
        groups += [(part, self.poset(part).names) for part, _ in body.hangs]
        groups += [(part, self.poset(part).names) for part, _, _ in body.anchors]
        return NamedMobile(real, _merge_names(groups))

    def labeling(self, body: LabelingBody) -> NamedLabeling:
        target = self.target(body.target)
        omega = [0] * target.poset.n
        for nm, label in body.labels:
            i = target.index(nm)
            if omega[i]:
                raise ValueError(f"element {nm!r} labeled twice")
            omega[i] = label
        missing = [target.names[i] for i, w in enumerate(omega) if not w]
        if missing:
            raise ValueError(f"element {missing[0]!r} has no label")
        return NamedLabeling(body.target, LabeledPoset(target.poset, tuple(omega)))


def parse(text: str) -> Document:
    """Parse and resolve a document; every failure surfaces as :class:`ParseError`."""
    parser = _Parser(text)
    pairs = parser.document()
    values: dict = {}
    resolver = _Resolver(values)
    for d, tok in pairs:
        if d.name in values:
            raise ParseError(f"{d.name!r} defined twice", tok.line, tok.column)
        try:
            values[d.name] = resolver.build(d)
        except (LinextError, KeyError, ValueError, IndexError) as exc:
            msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
            raise ParseError(f"in {d.keyword} {d.name}: {msg}", tok.line, tok.column) from exc
    return Document(tuple(d for d, _ in pairs), values)


def parse_file(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- pretty-printing -------------------------------------------------------------


def _fmt_set(values) -> str:
    return "{" + ",".join(str(v) for v in values) + "}"


def format_definition(d: Definition) -> str:
    b = d.body
    if isinstance(b, Constructor):
        a = b.args
        if b.kind in ("chain", "antichain"):
            rhs = f"{b.kind} {a[0]}"
        elif b.kind == "ribbon":
            rhs = f"ribbon {a[0]} {_fmt_set(a[1])}"
        elif b.kind == "slantsum":
            rhs = f"slantsum {a[0]}@{a[1]} under {a[2]}@{a[3]}"
        elif b.kind == "fold":
            rhs = f"fold {a[0]} {{" + ", ".join(f"{x}<{y}" for x, y in a[1]) + "}"
        else:
            rhs = "sum " + " ".join(a)
        return f"poset {d.name} = {rhs}"
    if isinstance(b, Explicit):
        items = []
        if b.elements:
            items.append("elements: " + ", ".join(b.elements) + ";")
        if b.covers:
            items.append("covers: " + ", ".join("<".join(ch) for ch in b.covers) + ";")
        return f"poset {d.name} {{ " + " ".join(items) + " }"
    if isinstance(b, MobileBody):
        head = f"ribbon {b.n} {_fmt_set(b.descents)}"
        if b.names is not None:
            head += " names " + ", ".join(b.names)
        items = [head + ";"]
        items += [f"hang {p} under {r};" for p, r in b.hangs]
        items += [f"anchor {p}@{q} at {r};" for p, q, r in b.anchors]
        return f"mobile {d.name} {{ " + " ".join(items) + " }"
    return (f"labeling {d.name} on {b.target} {{ "
            + ", ".join(f"{nm}:{w}" for nm, w in b.labels) + " }")


def format_document(doc: Document) -> str:
    return "".join(format_definition(d) + "\n" for d in doc.definitions)
