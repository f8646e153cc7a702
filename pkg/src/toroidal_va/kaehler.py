"""Kähler differentials of a monomial algebra and the quotient by exact forms.

A one-form is stored in the basis ``x^a dx_i``; its homogeneous degree is
``a + e_i``, which the universal derivation preserves.  In a fixed degree
``m != 0`` the exact forms are spanned by the single vector

    d(x^m) = sum_i m_i x^(m - e_i) dx_i,

so a class in ``Omega^1 / dR`` has a canonical representative obtained by
eliminating the *pivot* coordinate: the largest ``i`` with ``m_i != 0``.
Degree zero carries no relation (the ``k_i = x_i^-1 dx_i`` are independent).
"""

import itertools
from fractions import Fraction
from types import MappingProxyType

from .errors import MissingLoopVariableError, SpecMismatchError
from .linalg import sparse_rank
from .ring import RingElement, format_linear, format_monomial, format_rational, grlex_key


def form_degree(exps, i):
    return tuple(e + (j == i) for j, e in enumerate(exps))


def _form_key(key):
    exps, i = key
    return (grlex_key(form_degree(exps, i)), i)


def format_form(spec, exps, i):
    mono = format_monomial(spec.names, exps)
    diff = "d" + spec.names[i]
    return f"{mono}*{diff}" if mono else diff


class KaehlerElement:
    """Finite sum of ``c * x^a dx_i`` over a :class:`~toroidal_va.ring.RingSpec`."""

    __slots__ = ("spec", "_terms", "_hash")

    def __init__(self, spec, terms=None):
        clean = {}
        for (exps, i), c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != spec.nvars or not 0 <= i < spec.nvars:
                raise ValueError(f"bad form index {(exps, i)} for {spec}")
            if not spec.is_legal(exps):
                raise ValueError(f"illegal coefficient monomial {exps}")
            c = Fraction(c)
            if c:
                clean[(exps, i)] = clean.get((exps, i), 0) + c
        self._init(spec, clean)

    @classmethod
    def _raw(cls, spec, terms):
        obj = cls.__new__(cls)
        obj._init(spec, terms)
        return obj

    def _init(self, spec, terms):
        self.spec = spec
        self._terms = {k: terms[k] for k in sorted(terms, key=_form_key, reverse=True) if terms[k]}
        self._hash = None

    @classmethod
    def zero(cls, spec):
        return cls._raw(spec, {})

    @classmethod
    def basic(cls, spec, exps, i, coeff=1):
        """The single form ``coeff * x^exps dx_i``."""
        return cls(spec, {(tuple(exps), i): coeff})

    @classmethod
    def log_form(cls, spec, i):
        """``k_i = x_i^-1 dx_i``; needs variable ``i`` to be invertible."""
        if not spec.invertible[i]:
            raise ValueError(f"k{i} needs {spec.names[i]} to be invertible")
        exps = tuple(-1 if j == i else 0 for j in range(spec.nvars))
        return cls._raw(spec, {(exps, i): Fraction(1)})

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

    def _check(self, other):
        if not isinstance(other, KaehlerElement):
            if other == 0:
                return KaehlerElement.zero(self.spec)
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatchError(f"{self.spec} vs {other.spec}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return KaehlerElement._raw(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return KaehlerElement._raw(self.spec, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return KaehlerElement._raw(self.spec, {k: c * other for k, c in self._terms.items()})
        if isinstance(other, RingElement):
            if other.spec != self.spec:
                raise SpecMismatchError(f"{self.spec} vs {other.spec}")
            out = {}
            for (exps, i), c in self._terms.items():
                for e2, c2 in other.items():
                    key = (tuple(a + b for a, b in zip(exps, e2)), i)
                    out[key] = out.get(key, 0) + c * c2
            return KaehlerElement._raw(self.spec, out)
        return NotImplemented

    __rmul__ = __mul__

    def degrees(self):
        return {form_degree(e, i) for e, i in self._terms}

    def coefficient(self, exps, i):
        return self._terms.get((tuple(exps), i), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, KaehlerElement):
            return self.spec == other.spec and self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_linear((c, format_form(self.spec, e, i)) for (e, i), c in self._terms.items())

    def __repr__(self):
        return f"KaehlerElement({self})"


def universal_d(r):
    """``d(x^m) = sum_i m_i x^(m - e_i) dx_i``, extended linearly."""
    out = {}
    for exps, c in r.items():
        for i, e in enumerate(exps):
            if e:
                lower = exps[:i] + (e - 1,) + exps[i + 1 :]
                out[(lower, i)] = out.get((lower, i), 0) + c * e
    return KaehlerElement._raw(r.spec, out)


def pivot_index(degree):
    """Coordinate eliminated in ``degree``; ``None`` when there is no relation."""
    for i in range(len(degree) - 1, -1, -1):
        if degree[i]:
            return i
    return None


def _reduce(spec, terms):
    by_degree = {}
    for (exps, i), c in terms.items():
        by_degree.setdefault(form_degree(exps, i), {})[(exps, i)] = c
    out = {}
    for deg, block in by_degree.items():
        p = pivot_index(deg)
        if p is not None:
            key_p = (tuple(m - (j == p) for j, m in enumerate(deg)), p)
            c_p = block.pop(key_p, 0)
            if c_p:
                scale = Fraction(c_p) / deg[p]
                for j, m in enumerate(deg):
                    if m and j != p:
                        key = (tuple(x - (k == j) for k, x in enumerate(deg)), j)
                        block[key] = block.get(key, 0) - scale * m
        out.update(block)
    return KaehlerElement._raw(spec, out)


class CentralClass:
    """Class of a one-form modulo exact forms, held by its normal form."""

    __slots__ = ("rep",)

    def __init__(self, rep):
        # callers go through normal_form; rep is trusted to be reduced
        self.rep = rep

    @property
    def spec(self):
        return self.rep.spec

    @classmethod
    def zero(cls, spec):
        return cls(KaehlerElement.zero(spec))

    def __bool__(self):
        return bool(self.rep)

    def is_zero(self):
        return not self.rep

    def __add__(self, other):
        if isinstance(other, CentralClass):
            return CentralClass(self.rep + other.rep)
        return NotImplemented

    def __neg__(self):
        return CentralClass(-self.rep)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return CentralClass(self.rep * c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, CentralClass):
            return self.rep == other.rep
        if isinstance(other, int) and other == 0:
            return not self.rep
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def __str__(self):
        return str(self.rep)

    def __repr__(self):
        return f"CentralClass({self.rep})"


def normal_form(w):
    """Canonical representative of ``w`` modulo exact forms."""
    return CentralClass(_reduce(w.spec, w._terms))


def is_exact(w):
    return normal_form(w).is_zero()


def degree_coordinates(spec, degree):
    """Legal basis forms ``x^(m - e_i) dx_i`` of homogeneous degree ``m``."""
    coords = []
    for i in range(spec.nvars):
        exps = tuple(m - (j == i) for j, m in enumerate(degree))
        if spec.is_legal(exps):
            coords.append((exps, i))
    return coords


def iter_box(lo, hi):
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def graded_dimension(spec, lo, hi):
    """Dimension of each degree piece of ``Omega^1 / dR`` over the box ``lo..hi``.

    Computed as the rank of the normal forms of the degree's basis forms.
    """
    table = []
    for deg in iter_box(lo, hi):
        vecs = [normal_form(KaehlerElement._raw(spec, {k: Fraction(1)})).rep.terms for k in degree_coordinates(spec, deg)]
        table.append((tuple(deg), sparse_rank([dict(v) for v in vecs])))
    return table


def split_nf(w):
    """Split the normal form of ``w`` into its ``t >= 0`` and ``t < 0`` parts.

    With ``S+ = A[t]`` and ``S- = A (x) t^-1 Q[t^-1]`` the exact forms split
    compatibly, and the split is read off the t-exponent of each coefficient
    monomial in the normal form.
    """
    t = w.spec.t_index
    if t is None:
        raise MissingLoopVariableError(f"{w.spec} has no loop variable")
    nf = normal_form(w).rep
    plus, minus = {}, {}
    for (exps, i), c in nf.items():
        (minus if exps[t] < 0 else plus)[(exps, i)] = c
    return CentralClass(KaehlerElement._raw(w.spec, plus)), CentralClass(KaehlerElement._raw(w.spec, minus))


def lie_derivative_t(w):
    """Lie derivative along ``-d/dt`` applied to a one-form."""
    t = w.spec.t_index
    if t is None:
        raise MissingLoopVariableError(f"{w.spec} has no loop variable")
    out = {}
    for (exps, i), c in w.items():
        if exps[t]:
            lower = exps[:t] + (exps[t] - 1,) + exps[t + 1 :]
            out[(lower, i)] = out.get((lower, i), 0) - c * exps[t]
    return KaehlerElement._raw(w.spec, out)


def pushforward(h, w, chain_rule=True):
    """``h_*(r dr') = h(r) d h(r')``.

    ``chain_rule=False`` substitutes only the coefficient and renames
    ``dx_i -> dy_i`` by position; it is deliberately wrong and exists for
    mutation tests.
    """
    if w.spec != h.source:
        raise SpecMismatchError(f"{w} does not live over {h.source}")
    total = KaehlerElement.zero(h.target)
    for (exps, i), c in w.items():
        coeff = h(RingElement._raw(h.source, {exps: c}))
        if chain_rule:
            total = total + universal_d(h.images[i]) * coeff
        else:
            total = total + KaehlerElement.basic(h.target, (0,) * h.target.nvars, i) * coeff
    return total


def residue(w):
    """Coefficient of ``t^-1 dt`` in a form over ``Q[t, t^-1]``."""
    if w.spec.nvars != 1:
        raise ValueError("residue is defined here for one Laurent variable")
    return w.coefficient((-1,), 0)


__all__ = [
    "CentralClass",
    "KaehlerElement",
    "degree_coordinates",
    "form_degree",
    "format_rational",
    "graded_dimension",
    "is_exact",
    "lie_derivative_t",
    "normal_form",
    "pivot_index",
    "pushforward",
    "residue",
    "split_nf",
    "universal_d",
]
