"""Monomial commutative algebras over the rationals.

A :class:`RingSpec` declares an ordered list of variables, each either
invertible (Laurent) or not (polynomial), and optionally marks one invertible
variable as the loop variable ``t`` so that the ring reads ``R = A[t, t^-1]``.
Elements are sparse maps from exponent vectors to nonzero ``Fraction``
coefficients.  Everything here is immutable.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .errors import InvalidHomError, SpecMismatchError
from .report import Report

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = re.compile(r"(d.*|k\d+|J)\Z")


def grlex_key(exps):
    """Graded-lexicographic sort key (total degree first, then lex)."""
    return (sum(exps), exps)


def format_rational(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(names, exps):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_linear(items):
    """Join ``(coefficient, body)`` pairs as ``a*body + b*body - ...``.

    ``body`` may be empty (a bare scalar).  Returns ``"0"`` for no items.
    """
    out = []
    for c, body in items:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not body:
            text = format_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_rational(mag)}*{body}"
        if not out:
            out.append(text if sign == "+" else "-" + text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out) if out else "0"


@dataclass(frozen=True)
class RingSpec:
    """An ordered list of variables; ``invertible[i]`` marks Laurent variables.

    ``t_index`` optionally names the loop variable, which must be invertible.
    """

    names: tuple
    invertible: tuple
    t_index: int = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "invertible", tuple(bool(b) for b in self.invertible))
        if len(self.names) != len(self.invertible):
            raise ValueError("names and invertible flags differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        for name in self.names:
            if not _IDENT.match(name):
                raise ValueError(f"illegal variable name {name!r}")
            if _RESERVED.match(name):
                raise ValueError(f"variable name {name!r} clashes with differential or generator syntax")
        if self.t_index is not None:
            if not 0 <= self.t_index < len(self.names):
                raise ValueError("t_index out of range")
            if not self.invertible[self.t_index]:
                raise ValueError("the loop variable t must be invertible")

    @classmethod
    def laurent(cls, *names, t=None):
        return cls(names, (True,) * len(names), names.index(t) if t is not None else None)

    @classmethod
    def parse(cls, text):
        """Parse ``laurent:t0,t1;poly:u;t=t0`` style descriptions.

        ``const`` (or an empty string) is the ring of rationals itself.
        """
        names, inv, t_name = [], [], None
        for chunk in text.replace(" ", "").split(";"):
            if not chunk or chunk == "const":
                continue
            kind, sep, rest = chunk.partition(":") if ":" in chunk else chunk.partition("=")
            if not sep:
                raise ValueError(f"cannot parse ring segment {chunk!r}")
            if kind == "t" and sep == "=":
                t_name = rest
                continue
            if sep != ":" or kind not in ("laurent", "poly"):
                raise ValueError(f"unknown ring segment {chunk!r}")
            for name in filter(None, rest.split(",")):
                names.append(name)
                inv.append(kind == "laurent")
        if t_name is not None and t_name not in names:
            raise ValueError(f"loop variable {t_name!r} is not declared")
        return cls(tuple(names), tuple(inv), names.index(t_name) if t_name is not None else None)

    def __str__(self):
        if not self.names:
            return "const"
        segs = []
        for name, inv in zip(self.names, self.invertible):
            kind = "laurent" if inv else "poly"
            if segs and segs[-1][0] == kind:
                segs[-1][1].append(name)
            else:
                segs.append((kind, [name]))
        text = ";".join(f"{k}:{','.join(v)}" for k, v in segs)
        if self.t_index is not None:
            text += f";t={self.names[self.t_index]}"
        return text

    @property
    def nvars(self):
        return len(self.names)

    @property
    def t_name(self):
        return None if self.t_index is None else self.names[self.t_index]

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def is_legal(self, exps):
        return all(e >= 0 or inv for e, inv in zip(exps, self.invertible))

    def unit_vector(self, i):
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    def zero(self):
        return RingElement._raw(self, {})

    def one(self):
        return RingElement._raw(self, {(0,) * self.nvars: Fraction(1)})

    def scalar(self, c):
        return RingElement(self, {(0,) * self.nvars: c})

    def var(self, name):
        return RingElement._raw(self, {self.unit_vector(self.index(name)): Fraction(1)})

    def monomial(self, exps, coeff=1):
        return RingElement(self, {tuple(exps): coeff})

    def fiber(self):
        """The coefficient algebra ``A`` obtained by deleting the loop variable."""
        if self.t_index is None:
            return self
        keep = [i for i in range(self.nvars) if i != self.t_index]
        return RingSpec(tuple(self.names[i] for i in keep), tuple(self.invertible[i] for i in keep))

    def fiber_exps(self, exps):
        return tuple(e for i, e in enumerate(exps) if i != self.t_index)

    def join_exps(self, fiber_exps, n):
        """Insert the t-exponent ``n`` into a fiber exponent vector."""
        a = list(fiber_exps)
        a.insert(self.t_index, n)
        return tuple(a)


class RingElement:
    """Sparse rational combination of monomials over a :class:`RingSpec`."""

    __slots__ = ("spec", "_terms", "_hash")

    def __init__(self, spec, terms=None):
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != spec.nvars:
                raise ValueError(f"exponent {exps} has wrong length for {spec}")
            if not spec.is_legal(exps):
                raise ValueError(f"negative exponent on a polynomial variable: {exps}")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self._init(spec, clean)

    @classmethod
    def _raw(cls, spec, terms):
        obj = cls.__new__(cls)
        obj._init(spec, terms)
        return obj

    def _init(self, spec, terms):
        self.spec = spec
        self._terms = {e: terms[e] for e in sorted(terms, key=grlex_key, reverse=True) if terms[e]}
        self._hash = None

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.spec != self.spec:
                raise SpecMismatchError(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.spec.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return RingElement._raw(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement._raw(self.spec, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingElement._raw(self.spec, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.spec.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_unit(self):
        if len(self._terms) != 1:
            return False
        (exps,) = self._terms
        return all(e == 0 or inv for e, inv in zip(exps, self.spec.invertible))

    def inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        ((exps, c),) = self._terms.items()
        return RingElement._raw(self.spec, {tuple(-e for e in exps): 1 / c})

    def partial(self, i):
        """Formal partial derivative with respect to variable ``i``."""
        out = {}
        for exps, c in self._terms.items():
            if exps[i]:
                e = list(exps)
                e[i] -= 1
                out[tuple(e)] = c * exps[i]
        return RingElement._raw(self.spec, out)

    def constant_term(self):
        return self._terms.get((0,) * self.spec.nvars, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.spec == other.spec and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.spec.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        names = self.spec.names
        return format_linear((c, format_monomial(names, e)) for e, c in self._terms.items())

    def __repr__(self):
        return f"RingElement({self})"


def ring_mul(a, b):
    """Product of two elements over the same ring."""
    if a.spec != b.spec:
        raise SpecMismatchError(f"cannot multiply over {a.spec} and {b.spec}")
    out = {}
    for ea, ca in a._terms.items():
        for eb, cb in b._terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return RingElement._raw(a.spec, out)


def _hom_violations(source, target, images):
    problems = []
    if len(images) != source.nvars:
        return [f"expected {source.nvars} images, got {len(images)}"]
    for name, inv, img in zip(source.names, source.invertible, images):
        if img.spec != target:
            problems.append(f"image of {name} does not live over {target}")
            continue
        if inv and not img.is_unit():
            problems.append(f"image of invertible {name} is not a unit: {img}")
    if source.t_index is not None and target.t_index is not None:
        img = images[source.t_index]
        if img.spec == target and img.is_unit():
            ((exps, _),) = img.items()
            t_unit = target.unit_vector(target.t_index)
            rest = tuple(e - u for e, u in zip(exps, t_unit))
            if exps[target.t_index] != 1 or not target.monomial(rest).is_unit():
                problems.append(f"t must map to a unit times t, got {img}")
        elif img.spec == target:
            problems.append(f"t must map to a unit times t, got {img}")
        for name, img in zip(source.names, images):
            if name != source.t_name and img.spec == target:
                if any(e[target.t_index] for e in img.terms):
                    problems.append(f"image of fiber variable {name} involves t: {img}")
    return problems


class RingHom:
    """Algebra homomorphism determined by the images of the source variables.

    Construction rejects homs whose invertible variables do not map to units;
    pass ``check=False`` to build one anyway (e.g. to feed :func:`validate_hom`).
    """

    def __init__(self, source, target, images, check=True):
        self.source = source
        self.target = target
        self.images = tuple(images)
        if check:
            problems = _hom_violations(source, target, self.images)
            if problems:
                raise InvalidHomError("; ".join(problems))
        self._power_cache = {}

    @classmethod
    def from_mapping(cls, source, target, mapping, check=True):
        """Build from ``{source_name: target element}``; omitted names map to same-named variables."""
        images = []
        for name in source.names:
            if name in mapping:
                img = mapping[name]
                images.append(img if isinstance(img, RingElement) else target.scalar(img))
            else:
                images.append(target.var(name))
        return cls(source, target, images, check=check)

    @classmethod
    def identity(cls, spec):
        return cls(spec, spec, [spec.var(n) for n in spec.names])

    def _power(self, i, e):
        key = (i, e)
        if key not in self._power_cache:
            self._power_cache[key] = self.images[i] ** e
        return self._power_cache[key]

    def __call__(self, a):
        return apply_hom(self, a)

    def compose(self, other):
        """``self ∘ other``: apply ``other`` first."""
        if other.target != self.source:
            raise SpecMismatchError("homs are not composable")
        return RingHom(other.source, self.target, [self(img) for img in other.images])

    def __eq__(self, other):
        return (
            isinstance(other, RingHom)
            and (self.source, self.target, self.images) == (other.source, other.target, other.images)
        )

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __str__(self):
        body = "; ".join(f"{n} -> {img}" for n, img in zip(self.source.names, self.images))
        return f"hom: {body}"


def apply_hom(h, a):
    if a.spec != h.source:
        raise SpecMismatchError(f"{a} does not live over {h.source}")
    total = {}
    for exps, c in a.items():
        term = h.target.scalar(c)
        for i, e in enumerate(exps):
            if e:
                term = term * h._power(i, e)
        for e2, c2 in term.items():
            total[e2] = total.get(e2, 0) + c2
    return RingElement._raw(h.target, total)


def validate_hom(h):
    """Report every violation of the unit-image and ``t -> unit*t`` conditions."""
    report = Report("validate_hom", {"hom": str(h)})
    for p in _hom_violations(h.source, h.target, h.images):
        report.record("hom-condition", (str(h),), p, "ok", False)
    report.n_checked = max(h.source.nvars, report.n_failed)
    return report
