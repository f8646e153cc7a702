"""Text syntax for elements, modes, homs and level functionals.

Grammar (whitespace is ignored)::

    expr     := term {("+" | "-") term}
    term     := ["+" | "-"] factor {"*" factor}
    factor   := rational | "J[" name "]" | var ["^" int] | "d(" expr ")"
              | "d" var | "k" index | "(" expr ")"
    rational := int ["/" int]

``dx`` is the differential of the variable ``x`` and ``k<i>`` is
``x_i^-1 dx_i`` for the ``i``-th (0-based) variable.  A term may contain at
most one differential or Lie generator.  The printed form of every element
re-parses to the same element.
"""

import re
from fractions import Fraction

from .errors import ParseError
from .kaehler import KaehlerElement, universal_d
from .lie import LieElement
from .ring import RingElement, RingHom
from .toroidal import ToroidalElement

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _Value:
    """Linear combination of ring monomials, basic forms and loop generators."""

    __slots__ = ("ring", "form", "loop", "kinds")

    def __init__(self, ring=None, form=None, loop=None, kinds=frozenset()):
        self.ring = ring or {}
        self.form = form or {}
        self.loop = loop or {}
        self.kinds = frozenset(kinds)

    @staticmethod
    def _add_into(a, b, sign):
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, 0) + sign * c
        return out

    def add(self, other, sign=1):
        return _Value(
            self._add_into(self.ring, other.ring, sign),
            self._add_into(self.form, other.form, sign),
            self._add_into(self.loop, other.loop, sign),
            self.kinds | other.kinds,
        )

    def scale(self, c):
        return _Value(
            {k: v * c for k, v in self.ring.items()},
            {k: v * c for k, v in self.form.items()},
            {k: v * c for k, v in self.loop.items()},
            self.kinds,
        )


class _Parser:
    def __init__(self, text, spec, lie=None):
        self.text = text
        self.spec = spec
        self.lie = lie
        self.pos = 0
        self.n = spec.nvars

    # -- lexing -------------------------------------------------------------

    def error(self, message, pos=None):
        raise ParseError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def integer(self):
        self.skip()
        start = self.pos
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
            self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer", start)
        self.pos = m.end()
        return sign * int(m.group())

    def ident(self):
        self.skip()
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.text, self.pos)
        if not m:
            self.error("expected a name")
        self.pos = m.end()
        return m.group()

    # -- grammar ------------------------------------------------------------

    def parse_all(self):
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-") and self.peek():
            sign = 1 if self.text[self.pos] == "+" else -1
            self.pos += 1
            value = value.add(self.term(), sign)
        return value

    def term(self):
        sign = 1
        while self.peek() in ("+", "-") and self.peek():
            if self.text[self.pos] == "-":
                sign = -sign
            self.pos += 1
        start = self.pos
        value = self.factor()
        while self.peek() == "*":
            self.pos += 1
            value = self.multiply(value, self.factor(), start)
        return value.scale(sign)

    def multiply(self, a, b, pos):
        if (a.form or a.loop or "form" in a.kinds or "loop" in a.kinds) and (
            b.form or b.loop or "form" in b.kinds or "loop" in b.kinds
        ):
            self.error("a term may contain at most one differential or Lie generator", pos)
        if b.form or b.loop or "form" in b.kinds or "loop" in b.kinds:
            a, b = b, a
        # now b is a pure ring value
        out = _Value(kinds=a.kinds | b.kinds)
        for e2, c2 in b.ring.items():
            for e1, c1 in a.ring.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                out.ring[key] = out.ring.get(key, 0) + c1 * c2
            for (e1, i), c1 in a.form.items():
                key = (tuple(x + y for x, y in zip(e1, e2)), i)
                out.form[key] = out.form.get(key, 0) + c1 * c2
            for (i, e1), c1 in a.loop.items():
                key = (i, tuple(x + y for x, y in zip(e1, e2)))
                out.loop[key] = out.loop.get(key, 0) + c1 * c2
        return out

    def factor(self):
        ch = self.peek()
        start = self.pos
        if not ch:
            self.error("unexpected end of input")
        if ch.isdigit():
            num = self.integer()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    self.error("zero denominator", start)
            return _Value(ring={(0,) * self.n: Fraction(num, den)})
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if not (ch.isalpha() or ch == "_"):
            self.error(f"unexpected {ch!r}")
        name = self.ident()
        if name in self.spec.names:
            i = self.spec.index(name)
            e = 1
            if self.peek() == "^":
                self.pos += 1
                e = self.integer()
            if e < 0 and not self.spec.invertible[i]:
                self.error(f"negative exponent on polynomial variable {name!r}", start)
            return _Value(ring={tuple(e if j == i else 0 for j in range(self.n)): Fraction(1)})
        if name == "J" and self.peek() == "[":
            if self.lie is None:
                self.error("Lie generators need a Lie algebra", start)
            self.pos += 1
            self.skip()
            at = self.pos
            gname = self.ident()
            if gname not in self.lie.names:
                self.error(f"unknown Lie generator {gname!r}", at)
            self.expect("]")
            return _Value(loop={(self.lie.index(gname), (0,) * self.n): Fraction(1)}, kinds={"loop"})
        if name == "d" and self.peek() == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            if inner.form or inner.loop or inner.kinds:
                self.error("d(...) takes a ring element", start)
            r = RingElement(self.spec, inner.ring)
            w = universal_d(r)
            return _Value(form=dict(w.items()), kinds={"form"})
        m = re.fullmatch(r"k(\d+)", name)
        if m:
            i = int(m.group(1))
            if i >= self.n:
                self.error(f"k{i}: there are only {self.n} variables", start)
            if not self.spec.invertible[i]:
                self.error(f"k{i} needs {self.spec.names[i]!r} to be invertible", start)
            exps = tuple(-1 if j == i else 0 for j in range(self.n))
            return _Value(form={(exps, i): Fraction(1)}, kinds={"form"})
        if name.startswith("d") and name[1:] in self.spec.names:
            i = self.spec.index(name[1:])
            return _Value(form={((0,) * self.n, i): Fraction(1)}, kinds={"form"})
        self.error(f"unknown identifier {name!r}", start)


def _check_legal(value, spec, text):
    for e in list(value.ring) + [k[0] for k in value.form] + [k[1] for k in value.loop]:
        if not spec.is_legal(e):
            raise ParseError(f"negative exponent on a polynomial variable in {e}", text, 0)


def parse_element(text, spec, lie=None, kind=None):
    """Parse ``text`` over ``spec`` (and ``lie``).

    Returns a :class:`RingElement`, :class:`KaehlerElement` or
    :class:`ToroidalElement` depending on what occurs syntactically; ``kind``
    (``"ring"``, ``"form"`` or ``"toroidal"``) forces the type, which is how a
    bare ``0`` becomes a form or a toroidal element.
    """
    value = _Parser(text, spec, lie).parse_all()
    _check_legal(value, spec, text)
    ring = {k: c for k, c in value.ring.items() if c}
    detected = "toroidal" if "loop" in value.kinds else "form" if "form" in value.kinds else "ring"
    kind = kind or detected
    order = {"ring": 0, "form": 1, "toroidal": 2}
    if order[detected] > order[kind]:
        raise ParseError(f"expected a {kind} expression, found a {detected} expression", text, 0)
    if kind == "ring":
        return RingElement(spec, ring)
    if ring:
        raise ParseError(f"cannot add a scalar or ring element to a {kind} expression", text, 0)
    form = KaehlerElement(spec, value.form)
    if kind == "form":
        return form
    if lie is None:
        raise ParseError("toroidal expressions need a Lie algebra", text, 0)
    loop = {}
    for (i, e), c in value.loop.items():
        if c:
            loop.setdefault(i, {})[e] = c
    return ToroidalElement(lie, spec, {i: RingElement(spec, t) for i, t in loop.items()}, form)


def parse_lie_element(text, lie):
    """``e + 2*h`` style combinations of basis names."""
    p = _Parser(text, _no_vars(), None)
    total = [Fraction(0)] * lie.dim
    p.skip()
    while True:
        sign = 1
        while p.peek() in ("+", "-") and p.peek():
            sign = -sign if p.text[p.pos] == "-" else sign
            p.pos += 1
        coeff = Fraction(1)
        if p.peek().isdigit():
            num = p.integer()
            den = 1
            if p.peek() == "/":
                p.pos += 1
                den = p.integer()
            coeff = Fraction(num, den)
            p.expect("*")
        at = p.pos
        name = p.ident()
        if name not in lie.names:
            p.error(f"unknown Lie generator {name!r}", at)
        total[lie.index(name)] += sign * coeff
        if not p.peek():
            break
        if p.peek() not in "+-":
            p.error(f"unexpected {p.peek()!r}")
    return LieElement(lie, total)


def _no_vars():
    from .ring import RingSpec

    return RingSpec((), ())


# ---------------------------------------------------------------------------
# modes and fields


_FIELD = re.compile(r"\s*(J|Kdt|Kom)\s*\[")


def _bracket_body(text, pos):
    """Return the content up to the ``]`` matching the ``[`` before ``pos`` and the index after it."""
    depth = 1
    i = pos
    while i < len(text):
        if text[i] == "[":
            depth += 1
        elif text[i] == "]":
            depth -= 1
            if depth == 0:
                return text[pos:i], i + 1
        i += 1
    raise ParseError("unclosed '['", text, pos)


def _field_from_parts(family, body, lie, spec, text, pos):
    from .vacuum import FieldSpec

    A = spec.fiber()
    parts = {}
    label = None
    for chunk in _split_top(body, ";"):
        key, eq, val = chunk.partition("=")
        if eq:
            parts[key.strip()] = val.strip()
        elif label is None and chunk.strip():
            label = chunk.strip()
        else:
            raise ParseError(f"cannot read field data {chunk!r}", text, pos)
    try:
        if family == "J":
            if label is None:
                raise ParseError("J fields need a Lie element, e.g. J[e;u=1]", text, pos)
            element = parse_lie_element(label, lie)
            u = parse_element(parts.get("u", "1"), A, kind="ring")
            return FieldSpec.J(lie, spec, element, u)
        if family == "Kdt":
            u = parse_element(parts.get("u", "1"), A, kind="ring")
            return FieldSpec.Kdt(lie, spec, u)
        if "w" not in parts:
            raise ParseError("Kom fields need a one-form, e.g. Kom[w=x^-1*dx]", text, pos)
        return FieldSpec.Kom(lie, spec, parse_element(parts["w"], A, kind="form"))
    except ParseError as exc:
        raise ParseError(f"in field {text[pos:].strip()!r}: {exc}", text, pos) from None


def _split_top(text, sep):
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_field(text, lie, spec):
    """``J[e;u=x]``, ``Kdt[u=1]`` or ``Kom[w=x^-1*dx]``."""
    m = _FIELD.match(text)
    if not m:
        raise ParseError("expected J[...], Kdt[...] or Kom[...]", text, 0)
    body, end = _bracket_body(text, m.end())
    if text[end:].strip():
        raise ParseError(f"unexpected {text[end:].strip()!r}", text, end)
    return _field_from_parts(m.group(1), body, lie, spec, text, 0)


def parse_modes(text, lie, spec):
    """A product of modes such as ``J[e;u=1](-1) Kdt[u=x](0)``; returns ``[(field, n), ...]``."""
    pos = 0
    out = []
    while True:
        while pos < len(text) and (text[pos].isspace() or text[pos] in ",*"):
            pos += 1
        if pos >= len(text):
            break
        if text.startswith("|0>", pos):
            pos += 3
            continue
        m = _FIELD.match(text, pos)
        if not m:
            raise ParseError("expected a mode such as J[e;u=1](-1)", text, pos)
        body, end = _bracket_body(text, m.end())
        field = _field_from_parts(m.group(1), body, lie, spec, text, pos)
        mm = re.compile(r"\s*\(\s*([+-]?\d+)\s*\)").match(text, end)
        if not mm:
            raise ParseError("expected a mode index such as (-1)", text, end)
        out.append((field, int(mm.group(1))))
        pos = mm.end()
    if not out:
        raise ParseError("no modes given", text, 0)
    return out


def format_mode(field, n):
    return f"{field}({n})"


# ---------------------------------------------------------------------------
# homs and level functionals


def _strip_prefix(text, prefix):
    body = text.strip()
    if body.startswith(prefix):
        body = body[len(prefix):]
    return body


def parse_hom(text, source, target):
    """``hom: x -> y^2; t -> t``; unmentioned variables map to same-named ones."""
    body = _strip_prefix(text, "hom:")
    mapping = {}
    for chunk in filter(str.strip, body.split(";")):
        lhs, arrow, rhs = chunk.partition("->")
        if not arrow:
            raise ParseError(f"expected 'name -> image' in {chunk.strip()!r}", text, text.find(chunk))
        name = lhs.strip()
        if name not in source.names:
            raise ParseError(f"unknown source variable {name!r}", text, text.find(chunk))
        try:
            mapping[name] = parse_element(rhs, target, kind="ring")
        except ParseError as exc:
            raise ParseError(f"image of {name}: {exc}", text, text.find(chunk)) from None
    for name in source.names:
        if name not in mapping and name not in target.names:
            raise ParseError(f"no image given for {name!r}", text, 0)
    return RingHom.from_mapping(source, target, mapping, check=False)


def parse_chi(text, fiber):
    """``chi: 1 -> 1; x -> 0``; unmentioned monomials map to 0."""
    from .functor import LevelSpecialization

    body = _strip_prefix(text, "chi:")
    values = {}
    for chunk in filter(str.strip, body.split(";")):
        lhs, arrow, rhs = chunk.partition("->")
        if not arrow:
            raise ParseError(f"expected 'monomial -> value' in {chunk.strip()!r}", text, text.find(chunk))
        mono = parse_element(lhs, fiber, kind="ring")
        if len(mono) != 1:
            raise ParseError(f"{lhs.strip()!r} is not a monomial", text, text.find(chunk))
        ((exps, c),) = mono.items()
        val = parse_element(rhs, _no_vars(), kind="ring")
        values[exps] = values.get(exps, 0) + val.constant_term() / c
    return LevelSpecialization(fiber, values)


__all__ = [
    "format_mode",
    "parse_chi",
    "parse_element",
    "parse_field",
    "parse_hom",
    "parse_lie_element",
    "parse_modes",
]
