"""Text syntax for ring constructions.

    spec     := Z(n) | Poly(p, [vars], [monomials]) | TrivExt(spec, [elements], j)
              | Prod(spec, spec)
    monomial := ident(^int)? (* ident(^int)?)*   or the literal 1
    element  := integer (Z bases), monomial (Poly bases), raw index (otherwise)

``TrivExt(A, [g...], j)`` is ``A ⋉ (A/(g...))^j``.  Whitespace is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import SpecSyntaxError
from .rings import FiniteRing, is_prime, make_poly_quot, make_product, make_trivial_extension, make_zmod

Monomial = tuple[tuple[str, int], ...]  # () is the constant 1
Element = Union[int, Monomial]


@dataclass(frozen=True)
class Z:
    n: int


@dataclass(frozen=True)
class Poly:
    p: int
    variables: tuple[str, ...]
    monomials: tuple[Monomial, ...]


@dataclass(frozen=True)
class TrivExt:
    base: "RingSpec"
    gens: tuple[Element, ...]
    j: int


@dataclass(frozen=True)
class Prod:
    left: "RingSpec"
    right: "RingSpec"


RingSpec = Union[Z, Poly, TrivExt, Prod]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[()\[\],^*]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise SpecSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start))
            pos = m.end()
        self.toks.append(("end", "", len(text)))
        self.i = 0

    def error(self, msg: str, pos: int | None = None):
        if pos is None:
            pos = self.toks[self.i][2]
        raise SpecSyntaxError(msg, self.text, pos)

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.toks[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = repr(value) if value else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            self.error(f"expected {want}, found {got}")
        self.i += 1
        return tok

    def integer(self) -> int:
        return int(self.take("int")[1])

    def spec(self) -> RingSpec:
        kind, word, pos = self.take("ident")
        self.take("sym", "(")
        if word == "Z":
            n = self.integer()
            if n < 1:
                self.error("modulus must be positive", pos)
            out: RingSpec = Z(n)
        elif word == "Poly":
            ppos = self.peek()[2]
            p = self.integer()
            if not is_prime(p):
                self.error(f"coefficient modulus {p} is not prime", ppos)
            self.take("sym", ",")
            variables = self.bracketed(lambda: self.take("ident")[1], allow_empty=False)
            if len(set(variables)) != len(variables):
                self.error("repeated variable name", ppos)
            self.take("sym", ",")
            monos = self.bracketed(lambda: self.monomial(variables), allow_empty=False)
            out = Poly(p, tuple(variables), tuple(monos))
        elif word == "TrivExt":
            base = self.spec()
            self.take("sym", ",")
            gens = self.bracketed(lambda: self.element(base), allow_empty=True)
            self.take("sym", ",")
            out = TrivExt(base, tuple(gens), self.integer())
        elif word == "Prod":
            left = self.spec()
            self.take("sym", ",")
            out = Prod(left, self.spec())
        else:
            self.error(f"unknown constructor {word!r}", pos)
        self.take("sym", ")")
        return out

    def bracketed(self, item, allow_empty: bool) -> list:
        self.take("sym", "[")
        items = []
        if self.peek()[1] == "]":
            if not allow_empty:
                self.error("list must not be empty")
        else:
            items.append(item())
            while self.peek()[1] == ",":
                self.i += 1
                items.append(item())
        self.take("sym", "]")
        return items

    def monomial(self, variables) -> Monomial:
        if self.peek()[0] == "int":
            _, val, pos = self.take("int")
            if val != "1":
                self.error("a monomial is a product of variables or the constant 1", pos)
            return ()
        factors = []
        while True:
            _, var, pos = self.take("ident")
            if var not in variables:
                self.error(f"unknown variable {var!r}", pos)
            e = 1
            if self.peek()[1] == "^":
                self.i += 1
                epos = self.peek()[2]
                e = self.integer()
                if e < 1:
                    self.error("exponent must be positive", epos)
            factors.append((var, e))
            if self.peek()[1] != "*":
                return tuple(factors)
            self.i += 1

    def element(self, base: RingSpec) -> Element:
        if self.peek()[0] == "int":
            return self.integer()
        if isinstance(base, Poly):
            return self.monomial(base.variables)
        self.error("expected an integer element")


def parse_spec(text: str) -> RingSpec:
    """Parse one ring spec; errors carry the offending position."""
    parser = _Parser(text)
    out = parser.spec()
    if parser.peek()[0] != "end":
        parser.error("trailing input")
    return out


def _mono_text(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def print_spec(ast: RingSpec) -> str:
    """Canonical text; ``parse_spec(print_spec(a)) == a``."""
    if isinstance(ast, Z):
        return f"Z({ast.n})"
    if isinstance(ast, Poly):
        return (f"Poly({ast.p},[{','.join(ast.variables)}],"
                f"[{','.join(_mono_text(m) for m in ast.monomials)}])")
    if isinstance(ast, TrivExt):
        gens = ",".join(str(g) if isinstance(g, int) else _mono_text(g) for g in ast.gens)
        return f"TrivExt({print_spec(ast.base)},[{gens}],{ast.j})"
    if isinstance(ast, Prod):
        return f"Prod({print_spec(ast.left)},{print_spec(ast.right)})"
    raise TypeError(f"not a ring spec: {ast!r}")


def _element_index(A: FiniteRing, base: RingSpec, g: Element) -> int:
    if isinstance(g, tuple):
        from .rings import monomial_element
        return monomial_element(A, _mono_text(g))
    if isinstance(base, Z):
        return g % base.n
    if isinstance(base, Poly):
        # integer k in a polynomial ring means k times 1
        out = A.zero
        for _ in range(g % base.p):
            out = int(A.add[out, A.one])
        return out
    if not 0 <= g < A.size:
        raise SpecSyntaxError(f"element index {g} out of range for {print_spec(base)}")
    return g


def build_ring(ast: RingSpec | str, cap: int | None = None) -> FiniteRing:
    """Evaluate a spec (text or AST) to a ring, respecting the size cap."""
    from .ideals import ideal_generated
    from .modules import cyclic_module, direct_power

    if isinstance(ast, str):
        ast = parse_spec(ast)
    if isinstance(ast, Z):
        return make_zmod(ast.n, cap)
    if isinstance(ast, Poly):
        R = make_poly_quot(ast.p, ast.variables, [_mono_text(m) for m in ast.monomials], cap)
        object.__setattr__(R, "spec", print_spec(ast))
        return R
    if isinstance(ast, Prod):
        R = make_product(build_ring(ast.left, cap), build_ring(ast.right, cap), cap)
        object.__setattr__(R, "spec", print_spec(ast))
        return R
    if isinstance(ast, TrivExt):
        A = build_ring(ast.base, cap)
        J = ideal_generated(A, [_element_index(A, ast.base, g) for g in ast.gens])
        E = direct_power(cyclic_module(A, J), ast.j)
        R = make_trivial_extension(A, E, cap)
        quot = "R" if J.size == 1 else f"R/{J.describe()}"
        ename = "0" if ast.j == 0 or E.size == 1 else quot if ast.j == 1 else f"({quot})^{ast.j}"
        object.__setattr__(R, "spec", print_spec(ast))
        object.__setattr__(R, "name", f"{A.name} ⋉ {ename}")
        return R
    raise TypeError(f"not a ring spec: {ast!r}")


_ENTRY = re.compile(r"^\s*(?:(?P<name>[A-Za-z0-9_.\-]+)\s*:)?\s*(?P<spec>.*?)\s*"
                    r"(?:expect\s*\{(?P<expect>[^}]*)\}\s*)?$")


@dataclass(frozen=True)
class SpecLine:
    name: str | None
    spec: RingSpec
    expected: dict


def parse_spec_line(line: str) -> SpecLine:
    """``[name:] SPEC [expect{flag=true,...}]``."""
    m = _ENTRY.match(line)
    text = m.group("spec")
    offset = m.start("spec")
    try:
        ast = parse_spec(text)
    except SpecSyntaxError as exc:
        pos = None if exc.pos is None else exc.pos + offset
        raise SpecSyntaxError(exc.message, line, pos) from None
    expected = {}
    if m.group("expect"):
        for part in filter(None, (p.strip() for p in m.group("expect").split(","))):
            key, sep, val = (s.strip() for s in part.partition("="))
            if not sep:
                raise SpecSyntaxError(f"expectation {part!r} needs key=value", line, None)
            low = val.lower()
            expected[key] = True if low == "true" else False if low == "false" else val
    return SpecLine(m.group("name"), ast, expected)
