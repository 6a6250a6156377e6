"""The `.cm` input language: an LL(1) parser, a pretty-printer, and evaluation into library objects.

Example::

    ring R = poly(x,y)/(x*y) over GF(32003);
    module M = coker(R, [[x]]);
    module N = coker(R, [[x]], shifts=[(0,1)]);
    ideal I = (x);
    pair P = (M, N) wrt I;
    expect P.cd = inf [paper];
"""
from dataclasses import dataclass, field

from .errors import CmPairsError, DslError
from .expr import TokenStream, parse_poly_expr, tokenize
from .groebner import Ideal
from .homological import ext, hom_module
from .module import GradedModule, make_module

TAGS = ("paper", "derived", "trivial")
MODULE_OPS = ("coker", "free", "image", "quotient", "shift", "ext", "hom", "tensor",
              "deficiency", "over")


@dataclass(frozen=True)
class Span:
    line: int
    col: int


@dataclass(frozen=True)
class Poly:
    text: str
    span: Span = field(compare=False, default=None)


@dataclass(frozen=True)
class RingDecl:
    name: str
    variables: tuple
    relations: tuple
    characteristic: int
    weights: tuple = None
    order: str = None
    span: Span = field(compare=False, default=None)


@dataclass(frozen=True)
class IdealDecl:
    name: str
    generators: tuple
    maximal: bool = False
    ring: str = None
    span: Span = field(compare=False, default=None)


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    op: str
    args: tuple
    shifts: tuple = None
    span: Span = field(compare=False, default=None)


@dataclass(frozen=True)
class Ref:
    name: str
    span: Span = field(compare=False, default=None)


@dataclass(frozen=True)
class Matrix:
    rows: tuple
    span: Span = field(compare=False, default=None)


@dataclass(frozen=True)
class PairDecl:
    name: str
    M: Ref
    N: Ref
    I: Ref
    span: Span = field(compare=False, default=None)


@dataclass(frozen=True)
class Expectation:
    target: str
    prop: str
    value: str
    tag: str
    span: Span = field(compare=False, default=None)


@dataclass(frozen=True)
class DslDocument:
    decls: tuple

    def pretty(self):
        return "".join(pretty_decl(d) + "\n" for d in self.decls)

    def build(self):
        return Environment.from_document(self)


# -- parsing ---------------------------------------------------------------------------------

def _span(tok):
    return Span(tok.line, tok.col)


class _Parser:
    def __init__(self, text):
        self.ts = TokenStream(tokenize(text), text)

    def name(self):
        return self.ts.expect_kind("name")

    def signed_int(self):
        neg = bool(self.ts.accept("-"))
        v = int(self.ts.expect_kind("int").text)
        return -v if neg else v

    def degree(self):
        if self.ts.accept("("):
            vals = [self.signed_int()]
            while self.ts.accept(","):
                vals.append(self.signed_int())
            self.ts.expect(")")
            return tuple(vals)
        return (self.signed_int(),)

    def degree_list(self):
        self.ts.expect("[")
        out = []
        if not self.ts.at("]"):
            out.append(self.degree())
            while self.ts.accept(","):
                out.append(self.degree())
        self.ts.expect("]")
        return tuple(out)

    def poly(self):
        """Collect the tokens of one polynomial expression up to a top-level , ] or )."""
        ts = self.ts
        start = ts.peek()
        depth = 0
        parts = []
        while True:
            t = ts.peek()
            if t.kind == "eof":
                raise ts.error("unterminated expression")
            if depth == 0 and t.text in (",", "]", ")", ";"):
                break
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                depth -= 1
            parts.append(t.text)
            ts.next()
        if not parts:
            raise ts.error("expected a polynomial", start)
        return Poly("".join(parts), _span(start))

    def poly_list(self, close):
        out = []
        if not self.ts.at(close):
            out.append(self.poly())
            while self.ts.accept(","):
                out.append(self.poly())
        return tuple(out)

    def matrix(self):
        start = self.ts.expect("[")
        rows = []
        if not self.ts.at("]"):
            while True:
                self.ts.expect("[")
                rows.append(self.poly_list("]"))
                self.ts.expect("]")
                if not self.ts.accept(","):
                    break
        self.ts.expect("]")
        return Matrix(tuple(rows), _span(start))

    def ref(self):
        t = self.name()
        return Ref(t.text, _span(t))

    def document(self):
        decls = []
        while self.ts.peek().kind != "eof":
            decls.append(self.statement())
        return DslDocument(tuple(decls))

    def statement(self):
        ts = self.ts
        t = ts.peek()
        if t.kind != "name":
            raise ts.error(f"expected a declaration, found {t.text!r}")
        kw = t.text
        handler = {"ring": self.ring_decl, "ideal": self.ideal_decl, "module": self.module_decl,
                   "pair": self.pair_decl, "expect": self.expect_decl}.get(kw)
        if handler is None:
            raise ts.error(f"unknown declaration {kw!r}")
        ts.next()
        d = handler(_span(t))
        ts.expect(";")
        return d

    def ring_decl(self, span):
        ts = self.ts
        name = self.name().text
        ts.expect("=")
        ts.expect("poly")
        ts.expect("(")
        variables = [self.name().text]
        while ts.accept(","):
            variables.append(self.name().text)
        ts.expect(")")
        relations = ()
        if ts.accept("/"):
            ts.expect("(")
            relations = self.poly_list(")")
            ts.expect(")")
        ts.expect("over")
        ts.expect("GF")
        ts.expect("(")
        p = int(ts.expect_kind("int").text)
        ts.expect(")")
        weights = order = None
        while ts.at("weights") or ts.at("order"):
            if ts.accept("weights"):
                weights = self.degree()
            else:
                ts.next()
                order = self.name().text
        return RingDecl(name, tuple(variables), relations, p, weights, order, span)

    def ideal_decl(self, span):
        ts = self.ts
        name = self.name().text
        ts.expect("=")
        maximal = False
        gens = ()
        if ts.accept("maximal"):
            maximal = True
        else:
            ts.expect("(")
            gens = self.poly_list(")")
            ts.expect(")")
        ring = None
        if ts.accept("in"):
            ring = self.name().text
        return IdealDecl(name, gens, maximal, ring, span)

    def module_decl(self, span):
        ts = self.ts
        name = self.name().text
        ts.expect("=")
        opt = self.name()
        op = opt.text
        if op not in MODULE_OPS:
            raise ts.error(f"unknown module constructor {op!r}", opt)
        ts.expect("(")
        args = []
        shifts = None
        while not ts.at(")"):
            if args:
                ts.expect(",")
            if ts.at("shifts") and ts.peek(1).text == "=":
                ts.next()
                ts.next()
                shifts = self.degree_list()
            elif ts.at("["):
                args.append(self.matrix())
            elif ts.at("(") or ts.at("-") or ts.peek().kind == "int":
                d = self.degree()
                args.append(d[0] if len(d) == 1 and op in ("ext", "deficiency", "free") else d)
            else:
                args.append(self.ref())
        ts.expect(")")
        return ModuleDecl(name, op, tuple(args), shifts, span)

    def pair_decl(self, span):
        ts = self.ts
        name = self.name().text
        ts.expect("=")
        ts.expect("(")
        M = self.ref()
        ts.expect(",")
        N = self.ref()
        ts.expect(")")
        ts.expect("wrt")
        I = self.ref()
        return PairDecl(name, M, N, I, span)

    def expect_decl(self, span):
        ts = self.ts
        target = self.name().text
        ts.expect(".")
        prop = self.name().text
        ts.expect("=")
        parts = []
        while not ts.at("["):
            t = ts.next()
            if t.kind == "eof" or t.text == ";":
                raise ts.error("expected a [tag] after the expected value", t)
            parts.append(t.text)
            if t.text == ",":
                parts.append(" ")
        ts.expect("[")
        tag = self.name()
        if tag.text not in TAGS:
            raise ts.error(f"tag must be one of {', '.join(TAGS)}", tag)
        ts.expect("]")
        return Expectation(target, prop, "".join(parts), tag.text, span)


def parse(text):
    """Parse `.cm` source into a DslDocument (syntax only)."""
    return _Parser(text).document()


# -- pretty printing ---------------------------------------------------------------------------

def _deg(d):
    return str(d[0]) if len(d) == 1 else "(" + ",".join(str(x) for x in d) + ")"


def _arg(a):
    if isinstance(a, Ref):
        return a.name
    if isinstance(a, Matrix):
        return "[" + ", ".join("[" + ", ".join(p.text for p in row) + "]" for row in a.rows) + "]"
    if isinstance(a, tuple):
        return _deg(a)
    return str(a)


def pretty_decl(d):
    if isinstance(d, RingDecl):
        s = f"ring {d.name} = poly({','.join(d.variables)})"
        if d.relations:
            s += "/(" + ", ".join(p.text for p in d.relations) + ")"
        s += f" over GF({d.characteristic})"
        if d.weights:
            s += " weights " + "(" + ",".join(str(w) for w in d.weights) + ")"
        if d.order:
            s += f" order {d.order}"
        return s + ";"
    if isinstance(d, IdealDecl):
        body = "maximal" if d.maximal else "(" + ", ".join(p.text for p in d.generators) + ")"
        return f"ideal {d.name} = {body}" + (f" in {d.ring}" if d.ring else "") + ";"
    if isinstance(d, ModuleDecl):
        args = [_arg(a) for a in d.args]
        if d.shifts is not None:
            args.append("shifts=[" + ", ".join(_deg(s) for s in d.shifts) + "]")
        return f"module {d.name} = {d.op}({', '.join(args)});"
    if isinstance(d, PairDecl):
        return f"pair {d.name} = ({d.M.name}, {d.N.name}) wrt {d.I.name};"
    if isinstance(d, Expectation):
        return f"expect {d.target}.{d.prop} = {d.value} [{d.tag}];"
    raise TypeError(d)


# -- evaluation --------------------------------------------------------------------------------

@dataclass
class PairEntry:
    name: str
    ring: object
    I: Ideal
    M: GradedModule
    N: GradedModule
    names: tuple
    expectations: list = field(default_factory=list)


class Environment:
    """Objects declared by a document, by name."""

    def __init__(self):
        self.rings = {}
        self.ideals = {}
        self.modules = {}
        self.pairs = {}
        self.expectations = []
        self.module_ring = {}
        self.last_ring = None

    @classmethod
    def from_document(cls, doc):
        env = cls()
        for d in doc.decls:
            env.add(d)
        for x in env.expectations:
            if x.target in env.pairs:
                env.pairs[x.target].expectations.append(x)
            elif not (x.target in env.modules or x.target in env.ideals or x.target in env.rings):
                raise DslError(f"expectation refers to unknown name {x.target!r}", x.span.line, x.span.col)
        return env

    def _err(self, msg, span):
        return DslError(msg, span.line if span else None, span.col if span else None)

    def _names(self):
        return set(self.rings) | set(self.ideals) | set(self.modules) | set(self.pairs)

    def add(self, d):
        name = getattr(d, "name", None)
        if name is not None and name in self._names():
            raise self._err(f"name {name!r} already declared", d.span)
        try:
            if isinstance(d, RingDecl):
                self._ring(d)
            elif isinstance(d, IdealDecl):
                self._ideal(d)
            elif isinstance(d, ModuleDecl):
                self.modules[d.name] = self._module(d)
            elif isinstance(d, PairDecl):
                self._pair(d)
            elif isinstance(d, Expectation):
                self.expectations.append(d)
        except DslError:
            raise
        except CmPairsError as exc:
            raise self._err(str(exc), d.span) from exc

    def _ring(self, d):
        from .ring import make_ring
        rels = [self._poly_text(p) for p in d.relations]
        kwargs = {"characteristic": d.characteristic, "weights": d.weights}
        if d.order:
            kwargs["order"] = d.order
        self.rings[d.name] = make_ring(list(d.variables), rels, **kwargs)
        self.last_ring = d.name

    @staticmethod
    def _poly_text(p):
        return p.text

    def _parse_poly(self, ring, p):
        ts = TokenStream(tokenize(p.text))
        try:
            f = parse_poly_expr(ts, ring.variables, ring.p)
        except DslError as exc:
            raise self._err(f"bad polynomial {p.text!r}: {exc}", p.span) from exc
        if ts.peek().kind != "eof":
            raise self._err(f"bad polynomial {p.text!r}", p.span)
        return ring.nf(f)

    def _ideal(self, d):
        rname = d.ring or self.last_ring
        if rname not in self.rings:
            raise self._err("ideal declared before any ring", d.span)
        ring = self.rings[rname]
        if d.maximal:
            self.ideals[d.name] = Ideal.maximal(ring)
            return
        gens = []
        for p in d.generators:
            f = self._parse_poly(ring, p)
            if f and not ring.is_homogeneous(f):
                raise self._err(f"generator {p.text} is not homogeneous", p.span)
            gens.append(f)
        self.ideals[d.name] = Ideal(ring, gens)

    def _lookup(self, ref, kinds):
        for kind in kinds:
            table = getattr(self, kind)
            if ref.name in table:
                return kind, table[ref.name]
        raise self._err(f"unresolved name {ref.name!r}", ref.span)

    def _ring_of(self, ref):
        kind, obj = self._lookup(ref, ("rings", "modules"))
        return obj if kind == "rings" else obj.ring

    def _matrix(self, ring, mat, shifts):
        rows = []
        for row in mat.rows:
            out = []
            for p in row:
                f = self._parse_poly(ring, p)
                if f and not ring.is_homogeneous(f):
                    raise self._err(f"entry {p.text} is not homogeneous", p.span)
                out.append(f)
            rows.append(out)
        sh = [ring.as_degree(s if len(s) > 1 else s[0]) for s in shifts] if shifts else None
        try:
            return make_module(ring, sh, rows)
        except CmPairsError as exc:
            raise self._err(str(exc), mat.span) from exc

    def _module(self, d):
        a = d.args
        op = d.op

        def need(k):
            if len(a) != k:
                raise self._err(f"{op} takes {k} arguments", d.span)

        if op == "coker":
            need(2)
            return self._matrix(self._ring_of(a[0]), a[1], d.shifts)
        if op == "free":
            ring = self._ring_of(a[0])
            if d.shifts:
                return GradedModule.free(ring, [ring.as_degree(s if len(s) > 1 else s[0]) for s in d.shifts])
            return GradedModule.free(ring, rank=a[1] if len(a) > 1 else 1)
        if op == "image":
            need(2)
            ring = self._ring_of(a[0])
            T = self._matrix(ring, a[1], d.shifts)
            from .homological import subquotient
            return subquotient(ring, T.shifts, T.columns, [])
        if op == "quotient":
            need(2)
            _, I = self._lookup(a[1], ("ideals",))
            kind, X = self._lookup(a[0], ("rings", "modules"))
            if kind == "rings":
                return GradedModule.cyclic(X, I)
            return X.quotient_by_ideal(I)
        if op == "shift":
            need(2)
            _, M = self._lookup(a[0], ("modules",))
            return M.shift(a[1] if len(a[1]) > 1 else a[1][0])
        if op in ("hom", "tensor"):
            need(2)
            _, M = self._lookup(a[0], ("modules",))
            _, N = self._lookup(a[1], ("modules",))
            return hom_module(M, N) if op == "hom" else M.tensor(N)
        if op == "ext":
            need(3)
            _, M = self._lookup(a[1], ("modules",))
            _, N = self._lookup(a[2], ("modules",))
            return ext(int(a[0]), M, N)
        if op == "deficiency":
            need(2)
            from .local_cohomology import deficiency
            kind, X = self._lookup(a[1], ("rings", "modules"))
            N = GradedModule.free(X) if kind == "rings" else X
            return deficiency(int(a[0]), N).over_ring
        if op == "over":
            need(2)
            _, M = self._lookup(a[0], ("modules",))
            _, R = self._lookup(a[1], ("rings",))
            return M.over_ring(R)
        raise self._err(f"unknown constructor {op}", d.span)

    def _pair(self, d):
        _, M = self._lookup(d.M, ("modules",))
        _, N = self._lookup(d.N, ("modules",))
        _, I = self._lookup(d.I, ("ideals",))
        if not (M.ring == N.ring == I.ring):
            raise self._err("pair components live over different rings", d.span)
        self.pairs[d.name] = PairEntry(d.name, M.ring, I, M, N, (d.M.name, d.N.name, d.I.name))


def load(text):
    """Parse and evaluate; returns (document, environment)."""
    doc = parse(text)
    return doc, doc.build()
