"""A small expression language for composing tensor-network morphisms.

Grammar:  expr := comp ; comp := tens { "." tens } ;
          tens := atom { "*" atom } ;
          atom := IDENT [ "[" IDENT { "," IDENT } "]" ] | "(" expr ")"

"f . g" is f after g, so text reads right-to-left while the usual
pictures read bottom-to-top.  "*" is the tensor product and binds
tighter than ".".  Expressions are closed: every identifier must be
bound by the evaluation context.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (ParseError, ShapeMismatch, UnboundIdentifier,
                     UnknownToken)
from .linmap import LinMap, flip, shape_dim


@dataclass(frozen=True)
class Ident:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Compose:
    parts: tuple


@dataclass(frozen=True)
class Tensor:
    parts: tuple


_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_PUNCT = set(".*[](),")


def tokenize(src):
    tokens = []
    pos = 0
    while pos < len(src):
        ch = src[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _IDENT_RE.match(src, pos)
        if m:
            tokens.append(("ident", m.group(), pos))
            pos = m.end()
            continue
        if ch in _PUNCT:
            tokens.append((ch, ch, pos))
            pos += 1
            continue
        raise UnknownToken(f"unexpected character {ch!r}", pos)
    return tokens


class _Parser:
    def __init__(self, src):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind=None):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.src))
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        parts = [self.tens()]
        while self.peek() and self.peek()[0] == ".":
            self.take(".")
            parts.append(self.tens())
        return parts[0] if len(parts) == 1 else Compose(tuple(parts))

    def tens(self):
        parts = [self.atom()]
        while self.peek() and self.peek()[0] == "*":
            self.take("*")
            parts.append(self.atom())
        return parts[0] if len(parts) == 1 else Tensor(tuple(parts))

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.src))
        if tok[0] == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        if tok[0] == "ident":
            self.take()
            args = []
            if self.peek() and self.peek()[0] == "[":
                self.take("[")
                args.append(self.take("ident")[1])
                while self.peek() and self.peek()[0] == ",":
                    self.take(",")
                    args.append(self.take("ident")[1])
                self.take("]")
            return Ident(tok[1], tuple(args))
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse(src):
    p = _Parser(src)
    node = p.expr()
    tok = p.peek()
    if tok is not None:
        raise ParseError(f"trailing input starting with {tok[1]!r}", tok[2])
    return node


def pretty(node):
    """Print an AST back to parseable text (round-trips through parse)."""
    if isinstance(node, Ident):
        return node.name + (f"[{','.join(node.args)}]" if node.args else "")
    if isinstance(node, Tensor):
        bits = []
        for p in node.parts:
            s = pretty(p)
            bits.append(f"({s})" if isinstance(p, (Compose, Tensor)) else s)
        return " * ".join(bits)
    if isinstance(node, Compose):
        bits = []
        for p in node.parts:
            s = pretty(p)
            bits.append(f"({s})" if isinstance(p, Compose) else s)
        return " . ".join(bits)
    raise TypeError(f"not an AST node: {node!r}")


class MorphismContext:
    """Identifier table for evaluation: morphisms, objects, indexed families.

    Objects are named shapes; the indexed builtins id, tau, ev, coev,
    evt, coevt are installed for every object automatically.  Rebinding
    an existing name is a bug, hence asserted.
    """

    def __init__(self):
        self._morphisms = {}
        self._objects = {}
        self._families = {
            "id": lambda x: LinMap.identity(x),
            "tau": _tau,
            "ev": _ev,
            "coev": lambda x: _ev(x).transpose(),
            "evt": _ev,
            "coevt": lambda x: _ev(x).transpose(),
        }

    def register(self, name, morphism):
        assert name not in self._morphisms, f"shadowing {name!r}"
        assert isinstance(morphism, LinMap)
        self._morphisms[name] = morphism
        return self

    def register_object(self, name, shape):
        assert name not in self._objects, f"shadowing object {name!r}"
        self._objects[name] = tuple(shape)
        return self

    def register_family(self, name, fn):
        assert name not in self._families, f"shadowing family {name!r}"
        self._families[name] = fn
        return self

    def names(self):
        return sorted(self._morphisms)

    def resolve(self, name, args=()):
        if args:
            fam = self._families.get(name)
            if fam is None:
                raise UnboundIdentifier(f"{name!r} takes no [..] arguments")
            shapes = []
            for a in args:
                if a not in self._objects:
                    raise UnboundIdentifier(
                        f"unknown object {a!r} in {name}[{','.join(args)}]")
                shapes.append(self._objects[a])
            return fam(*shapes)
        try:
            return self._morphisms[name]
        except KeyError:
            raise UnboundIdentifier(f"unbound identifier {name!r}") from None


def _tau(xa, xb):
    return flip(shape_dim(xa), shape_dim(xb)).with_shapes(xa + xb, xb + xa)


def _ev(x):
    # plain vector-space pairing; module-aware versions live elsewhere
    d = shape_dim(x)
    from .cyclo import CycScalar
    one = CycScalar.one()
    return LinMap(x + x, (), {(0, i * d + i): one for i in range(d)})


def evaluate(expr, ctx):
    """Evaluate source text or an AST against a context, yielding a LinMap."""
    if isinstance(expr, str):
        expr = parse(expr)
    return _eval(expr, ctx)


def _eval(node, ctx):
    if isinstance(node, Ident):
        return ctx.resolve(node.name, node.args)
    if isinstance(node, Tensor):
        out = None
        for p in node.parts:
            val = _eval(p, ctx)
            out = val if out is None else out.tensor(val)
        return out
    if isinstance(node, Compose):
        out = _eval(node.parts[-1], ctx)
        for p in reversed(node.parts[:-1]):
            val = _eval(p, ctx)
            try:
                out = val @ out
            except ShapeMismatch as exc:
                raise ShapeMismatch(
                    f"{exc} in sub-expression {pretty(p)!r} of "
                    f"{pretty(node)!r}") from None
        return out
    raise TypeError(f"not an AST node: {node!r}")
