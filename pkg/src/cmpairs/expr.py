"""Tokenizer and polynomial-expression parser shared by the ring API and the DSL."""
import re

from .errors import DslError

TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*|//[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^/(),\[\];=<>:{}]|\.\.|\.)
""", re.VERBOSE)


class Token:
    __slots__ = ("kind", "text", "line", "col", "pos")

    def __init__(self, kind, text, line, col, pos):
        self.kind, self.text, self.line, self.col, self.pos = kind, text, line, col, pos

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def tokenize(text):
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if not m:
            raise DslError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(Token(kind, m.group(), line, pos - line_start + 1, pos))
        pos = m.end()
    toks.append(Token("eof", "", line, pos - line_start + 1, pos))
    return toks


class TokenStream:
    def __init__(self, toks, source=""):
        self.toks = toks
        self.i = 0
        self.source = source

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text):
        t = self.peek()
        return t.text == text and t.kind in ("op", "name")

    def accept(self, text):
        if self.at(text):
            return self.next()
        return None

    def expect(self, text):
        t = self.peek()
        if not self.at(text):
            raise DslError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return self.next()

    def expect_kind(self, kind):
        t = self.peek()
        if t.kind != kind:
            raise DslError(f"expected {kind}, found {t.text or 'end of input'!r}", t.line, t.col)
        return self.next()

    def error(self, msg, tok=None):
        t = tok or self.peek()
        return DslError(msg, t.line, t.col)


def parse_poly_expr(ts, variables, p):
    """Parse a sum of products at the current stream position into {exp: coeff}."""
    n = len(variables)
    index = {v: i for i, v in enumerate(variables)}
    zero = (0,) * n

    def add(a, b):
        out = dict(a)
        for e, c in b.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return out

    def mul(a, b):
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return out

    def expr():
        neg = False
        if ts.accept("-"):
            neg = True
        else:
            ts.accept("+")
        acc = term()
        if neg:
            acc = {e: (-c) % p for e, c in acc.items()}
        while ts.at("+") or ts.at("-"):
            op = ts.next().text
            t = term()
            if op == "-":
                t = {e: (-c) % p for e, c in t.items()}
            acc = add(acc, t)
        return acc

    def term():
        acc = power()
        while ts.at("*"):
            ts.next()
            acc = mul(acc, power())
        return acc

    def power():
        base = atom()
        if ts.accept("^"):
            k = int(ts.expect_kind("int").text)
            out = {zero: 1}
            for _ in range(k):
                out = mul(out, base)
            return out
        return base

    def atom():
        t = ts.peek()
        if t.kind == "int":
            ts.next()
            v = int(t.text) % p
            return {zero: v} if v else {}
        if t.kind == "name":
            if t.text not in index:
                raise ts.error(f"unknown variable {t.text!r}")
            ts.next()
            e = [0] * n
            e[index[t.text]] = 1
            return {tuple(e): 1}
        if ts.accept("("):
            v = expr()
            ts.expect(")")
            return v
        if t.text == "-":
            ts.next()
            return {e: (-c) % p for e, c in atom().items()}
        raise ts.error(f"unexpected {t.text or 'end of input'!r} in polynomial")

    return expr()


def parse_poly(text, variables, p):
    ts = TokenStream(tokenize(text), text)
    f = parse_poly_expr(ts, variables, p)
    if ts.peek().kind != "eof":
        raise ts.error(f"trailing input {ts.peek().text!r}")
    return f


def format_poly(f, variables, order=None, p=None):
    """Human-readable polynomial; ``order`` (a MonomialOrder) sorts terms descending.

    With ``p`` given, coefficients above p/2 print as negatives.
    """
    if not f:
        return "0"
    exps = list(f)
    if order is not None:
        exps.sort(key=order.key, reverse=True)
    else:
        exps.sort(reverse=True)
    parts = []
    for e in exps:
        c = f[e]
        sign = "+"
        if p is not None and c > p // 2:
            c, sign = p - c, "-"
        factors = []
        for v, k in zip(variables, e):
            if k == 1:
                factors.append(v)
            elif k > 1:
                factors.append(f"{v}^{k}")
        mono = "*".join(factors)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
