"""The central extension ``g_R (+) Omega^1_R / dR`` and its cocycle model.

The bracket is

    [J (x) r, J' (x) s] = [J, J'] (x) rs + class of 1/2 <J, J'> (r ds - s dr),

and the central term is modelled by the complex ``K_R = Ker(d)[2] -> R[1] -> Omega^1_R``
with the cocycle ``phi = phi0 + phi1``:

    phi1(J (x) r, J' (x) s)            = 1/2 <J, J'> (r ds - s dr)     in Omega^1_R
    phi0(J (x) r, J' (x) s, J'' (x) u) = 1/2 <[J, J'], J''> r s u      in R

Chevalley-Eilenberg convention used throughout:

    (d_CE psi)(a_1, ..., a_{p+1}) = sum_{i<j} (-1)^(i+j) psi([a_i, a_j], a_1, ..^i..^j.., a_{p+1})

and the internal differential acts on a ``p``-cochain with the Koszul sign
``(-1)^p``, so the mixed cocycle identity reads ``d_CE phi1 - d phi0 = 0``.
"""

import itertools
from fractions import Fraction

from .errors import SpecMismatchError
from .kaehler import CentralClass, KaehlerElement, normal_form, universal_d
from .report import Report
from .ring import format_linear, format_monomial

HALF = Fraction(1, 2)


def _j_label(L, i):
    return f"J[{L.names[i]}]"


class ToroidalElement:
    """``sum_i J_i (x) r_i + central class``."""

    __slots__ = ("lie", "spec", "loop", "central", "_hash")

    def __init__(self, lie, spec, loop=None, central=None):
        self.lie = lie
        self.spec = spec
        clean = {}
        for i, r in (loop or {}).items():
            if r.spec != spec:
                raise SpecMismatchError(f"loop coefficient over {r.spec}, expected {spec}")
            if r:
                clean[i] = r
        self.loop = {i: clean[i] for i in sorted(clean)}
        if central is None:
            central = CentralClass.zero(spec)
        elif isinstance(central, KaehlerElement):
            central = normal_form(central)
        if central.spec != spec:
            raise SpecMismatchError("central class over a different ring")
        self.central = central
        self._hash = None

    @classmethod
    def zero(cls, lie, spec):
        return cls(lie, spec)

    @classmethod
    def generator(cls, lie, spec, i, exps, coeff=1):
        """``coeff * J_i (x) x^exps``; ``i`` may be a basis name."""
        if isinstance(i, str):
            i = lie.index(i)
        return cls(lie, spec, {i: spec.monomial(exps, coeff)})

    @classmethod
    def loop_element(cls, lie, spec, i, r):
        if isinstance(i, str):
            i = lie.index(i)
        return cls(lie, spec, {i: r})

    @classmethod
    def from_form(cls, lie, spec, w):
        return cls(lie, spec, None, normal_form(w))

    def _check(self, other):
        if not isinstance(other, ToroidalElement):
            raise TypeError(f"cannot combine ToroidalElement with {type(other).__name__}")
        if other.lie != self.lie or other.spec != self.spec:
            raise SpecMismatchError("toroidal elements over different data")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        loop = dict(self.loop)
        for i, r in other.loop.items():
            loop[i] = loop[i] + r if i in loop else r
        return ToroidalElement(self.lie, self.spec, loop, self.central + other.central)

    __radd__ = __add__

    def __neg__(self):
        return ToroidalElement(self.lie, self.spec, {i: -r for i, r in self.loop.items()}, -self.central)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return ToroidalElement(self.lie, self.spec, {i: r * c for i, r in self.loop.items()}, self.central * c)

    __rmul__ = __mul__

    def is_zero(self):
        return not self.loop and self.central.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def loop_terms(self):
        """Yield ``(lie_index, exponent, coefficient)`` for each loop monomial."""
        for i, r in self.loop.items():
            for exps, c in r.items():
                yield i, exps, c

    def central_part(self):
        return ToroidalElement(self.lie, self.spec, None, self.central)

    def loop_part(self):
        return ToroidalElement(self.lie, self.spec, self.loop, None)

    def __eq__(self, other):
        if isinstance(other, ToroidalElement):
            return (
                self.lie == other.lie
                and self.spec == other.spec
                and self.loop == other.loop
                and self.central == other.central
            )
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.loop.items()), self.central))
        return self._hash

    def __str__(self):
        names = self.spec.names
        items = []
        for i, exps, c in self.loop_terms():
            mono = format_monomial(names, exps)
            items.append((c, _j_label(self.lie, i) + (f"*{mono}" if mono else "")))
        loop_text = format_linear(items) if items else ""
        if self.central.is_zero():
            return loop_text or "0"
        cent = str(self.central)
        if not loop_text:
            return cent
        return loop_text + (f" - {cent[1:]}" if cent.startswith("-") else f" + {cent}")

    def __repr__(self):
        return f"ToroidalElement({self})"


def _central_form(F, i, j, r, s, scale=HALF):
    """``scale * <J_i, J_j> * (r ds - s dr)`` as a raw one-form."""
    f = F[i][j]
    if not f:
        return None
    return (universal_d(s) * r - universal_d(r) * s) * (f * scale)


def bracket_hat(a, b):
    """Bracket of the centrally extended algebra; central inputs drop out."""
    a._check(b)
    L, R = a.lie, a.spec
    F = L.form
    loop = {}
    form = KaehlerElement.zero(R)
    for i, r in a.loop.items():
        for j, s in b.loop.items():
            rs = None
            for k, c in L.bracket_basis(i, j):
                if rs is None:
                    rs = r * s
                loop[k] = loop[k] + rs * c if k in loop else rs * c
            w = _central_form(F, i, j, r, s)
            if w is not None:
                form = form + w
    return ToroidalElement(L, R, loop, normal_form(form))


def bracket_rds(a, b):
    """Same bracket written with the unsymmetrised cocycle ``<J, J'> r ds``."""
    a._check(b)
    L, R = a.lie, a.spec
    loop = {}
    form = KaehlerElement.zero(R)
    for i, r in a.loop.items():
        for j, s in b.loop.items():
            for k, c in L.bracket_basis(i, j):
                loop[k] = loop.get(k, R.zero()) + r * s * c
            if L.form[i][j]:
                form = form + universal_d(s) * r * L.form[i][j]
    return ToroidalElement(L, R, loop, normal_form(form))


# --------------------------------------------------------------------------
# L-infinity model


class KComplexElement:
    """Element of ``K_R``: constants in degree -2, ``R`` in degree -1, forms in degree 0."""

    __slots__ = ("spec", "deg_m2", "deg_m1", "deg_0")

    def __init__(self, spec, deg_m2=0, deg_m1=None, deg_0=None):
        self.spec = spec
        self.deg_m2 = Fraction(deg_m2)
        self.deg_m1 = spec.zero() if deg_m1 is None else deg_m1
        self.deg_0 = KaehlerElement.zero(spec) if deg_0 is None else deg_0

    def differential(self):
        """Constants include into ``R``; ``R`` maps to forms by ``d``."""
        return KComplexElement(self.spec, 0, self.spec.scalar(self.deg_m2), universal_d(self.deg_m1))

    def __add__(self, other):
        return KComplexElement(
            self.spec, self.deg_m2 + other.deg_m2, self.deg_m1 + other.deg_m1, self.deg_0 + other.deg_0
        )

    def is_zero(self):
        return not self.deg_m2 and not self.deg_m1 and not self.deg_0

    def __eq__(self, other):
        if isinstance(other, KComplexElement):
            return (self.deg_m2, self.deg_m1, self.deg_0) == (other.deg_m2, other.deg_m1, other.deg_0)
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None

    def __str__(self):
        parts = []
        if self.deg_m2:
            parts.append(f"[-2] {self.deg_m2}")
        if self.deg_m1:
            parts.append(f"[-1] {self.deg_m1}")
        if self.deg_0:
            parts.append(f"[0] {self.deg_0}")
        return " ; ".join(parts) or "0"

    __repr__ = __str__


class TildeElement:
    """Element of ``g_R (+) K_R``: a loop part plus a ``K_R`` component."""

    __slots__ = ("lie", "spec", "loop", "k")

    def __init__(self, lie, spec, loop=None, k=None):
        self.lie = lie
        self.spec = spec
        self.loop = {i: r for i, r in (loop or {}).items() if r}
        self.k = KComplexElement(spec) if k is None else k

    @classmethod
    def from_toroidal(cls, x):
        """Lift the loop part of ``x``; its central class is placed in degree 0."""
        return cls(x.lie, x.spec, x.loop, KComplexElement(x.spec, deg_0=x.central.rep))

    def __eq__(self, other):
        return isinstance(other, TildeElement) and self.loop == other.loop and self.k == other.k

    __hash__ = None

    def __str__(self):
        loop = ToroidalElement(self.lie, self.spec, self.loop)
        return f"{loop} | {self.k}"

    __repr__ = __str__


def phi1(a, b):
    """``1/2 <J, J'> (r ds - s dr)`` extended bilinearly; lands in degree 0."""
    F = a.lie.form
    form = KaehlerElement.zero(a.spec)
    for i, r in a.loop.items():
        for j, s in b.loop.items():
            w = _central_form(F, i, j, r, s)
            if w is not None:
                form = form + w
    return KComplexElement(a.spec, deg_0=form)


def structure_pairing(L):
    """``f[i][j][k] = <[J_i, J_j], J_k>``."""
    n = L.dim
    F = L.form
    return [
        [[sum((c * F[m][k] for m, c in L.bracket_basis(i, j)), Fraction(0)) for k in range(n)] for j in range(n)]
        for i in range(n)
    ]


def phi0(a, b, c):
    """``1/2 <[J, J'], J''> r s u`` extended trilinearly; lands in degree -1."""
    f = structure_pairing(a.lie)
    total = a.spec.zero()
    for i, r in a.loop.items():
        for j, s in b.loop.items():
            for k, u in c.loop.items():
                if f[i][j][k]:
                    total = total + r * s * u * (f[i][j][k] * HALF)
    return KComplexElement(a.spec, deg_m1=total)


def ell1(x):
    return TildeElement(x.lie, x.spec, None, x.k.differential())


def ell2(x, y):
    """Loop bracket plus ``phi1``; the ``K_R`` components are central."""
    tx = ToroidalElement(x.lie, x.spec, x.loop)
    ty = ToroidalElement(y.lie, y.spec, y.loop)
    loop = bracket_hat(tx, ty).loop
    return TildeElement(x.lie, x.spec, loop, phi1(tx, ty))


def ell3(x, y, z):
    tx, ty, tz = (ToroidalElement(v.lie, v.spec, v.loop) for v in (x, y, z))
    return TildeElement(x.lie, x.spec, None, phi0(tx, ty, tz))


def ell_brackets(a, b, c):
    return ell1(a), ell2(a, b), ell3(a, b, c)


def h0_projection(x):
    """Project a degree-0 element of ``g_R (+) K_R`` to ``g_R (+) Omega^1_R / dR``."""
    return ToroidalElement(x.lie, x.spec, x.loop, normal_form(x.k.deg_0))


# --------------------------------------------------------------------------
# exhaustive suites


def generator_box(spec, bound):
    """Exponent vectors with every entry in ``[-bound, bound]`` (``[0, bound]`` for polynomial variables)."""
    ranges = [range(-bound if inv else 0, bound + 1) for inv in spec.invertible]
    return [tuple(e) for e in itertools.product(*ranges)]


def homogeneous_generators(lie, spec, bound):
    return [
        ToroidalElement.generator(lie, spec, i, exps) for i in range(lie.dim) for exps in generator_box(spec, bound)
    ]


def jacobi_suite(lie, spec, degree_bound, bracket=bracket_hat):
    """``[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0`` on homogeneous generator triples.

    Antisymmetry is checked on all ordered pairs; Jacobi on all triples up to
    order, which is enough once antisymmetry holds.
    """
    gens = homogeneous_generators(lie, spec, degree_bound)
    report = Report("jacobi", {"lie": str(lie), "ring": str(spec), "bound": degree_bound})
    cache = {}

    def br(x, y):
        key = (id(x), id(y))
        if key not in cache:
            cache[key] = bracket(x, y)
        return cache[key]

    for x, y in itertools.product(gens, repeat=2):
        lhs = br(x, y)
        rhs = -br(y, x)
        report.record("antisymmetry", (x, y), lhs, rhs, lhs == rhs)
    for x, y, z in itertools.combinations_with_replacement(gens, 3):
        jac = bracket(x, br(y, z)) + bracket(y, br(z, x)) + bracket(z, br(x, y))
        report.record("jacobi", (x, y, z), jac, 0, jac.is_zero())
    return report


def _gen_tuple_label(lie, spec, g):
    i, exps = g
    mono = format_monomial(spec.names, exps)
    return f"{lie.names[i]}*{mono}" if mono else lie.names[i]


def cocycle_check(lie, spec, degree_bound, koszul_sign=True):
    """Verify the cocycle identities for ``phi = phi0 + phi1`` on generator tuples.

    (i)   ``d phi1 = 0`` is vacuous: ``phi1`` already lands in the top slot.
    (ii)  ``d_CE phi0 = 0`` as an ``R``-valued 4-cochain.
    (iii) ``d_CE phi1 + (-1)^3 d phi0 = 0`` as a form-valued 3-cochain.

    ``koszul_sign=False`` drops the ``(-1)^3`` and is expected to fail.
    """
    n = lie.dim
    f = structure_pairing(lie)
    F = lie.form
    st = [[lie.bracket_basis(i, j) for j in range(n)] for i in range(n)]
    gens = [(i, e) for i in range(n) for e in generator_box(spec, degree_bound)]
    nv = spec.nvars
    report = Report("cocycle", {"lie": str(lie), "ring": str(spec), "bound": degree_bound, "koszul_sign": koszul_sign})
    report.notes.append("identity (i) d phi1 = 0 is vacuous: phi1 takes values in the top slot Omega^1_R")

    def add(e1, e2):
        return tuple(a + b for a, b in zip(e1, e2))

    def bracket(g1, g2):
        (i, e1), (j, e2) = g1, g2
        e = add(e1, e2)
        return [((k, e), c) for k, c in st[i][j]]

    def phi0_val(g1, g2, g3, coeff, out):
        (i, e1), (j, e2), (k, e3) = g1, g2, g3
        v = f[i][j][k]
        if v:
            e = add(add(e1, e2), e3)
            out[e] = out.get(e, 0) + coeff * v * HALF

    def phi1_val(g1, g2, coeff, out):
        (i, p), (j, q) = g1, g2
        v = F[i][j]
        if not v:
            return
        base = add(p, q)
        for var in range(nv):
            m = q[var] - p[var]
            if m:
                key = (base[:var] + (base[var] - 1,) + base[var + 1 :], var)
                out[key] = out.get(key, 0) + coeff * v * HALF * m

    def label(tup):
        return tuple(_gen_tuple_label(lie, spec, g) for g in tup)

    # (ii)
    for tup in itertools.product(gens, repeat=4):
        out = {}
        for a, b in itertools.combinations(range(4), 2):
            sign = (-1) ** (a + b + 2)
            rest = [tup[m] for m in range(4) if m not in (a, b)]
            for g, c in bracket(tup[a], tup[b]):
                phi0_val(g, rest[0], rest[1], sign * c, out)
        residual = {e: c for e, c in out.items() if c}
        report.record("(ii) d_CE phi0 = 0", label(tup), residual, {}, not residual)

    # (iii)
    sign_d = -1 if koszul_sign else 1
    for tup in itertools.product(gens, repeat=3):
        out = {}
        for a, b in itertools.combinations(range(3), 2):
            sign = (-1) ** (a + b + 2)
            (rest,) = [tup[m] for m in range(3) if m not in (a, b)]
            for g, c in bracket(tup[a], tup[b]):
                phi1_val(g, rest, sign * c, out)
        r = {}
        phi0_val(tup[0], tup[1], tup[2], 1, r)
        for e, c in r.items():
            for var in range(nv):
                if e[var]:
                    key = (e[:var] + (e[var] - 1,) + e[var + 1 :], var)
                    out[key] = out.get(key, 0) + sign_d * c * e[var]
        residual = {k: c for k, c in out.items() if c}
        report.record("(iii) d_CE phi1 - d phi0 = 0", label(tup), residual, {}, not residual)
    return report


def h0_iso_check(lie, spec, degree_bound):
    """Compare ``l2`` followed by projection to cohomology with ``bracket_hat``.

    Each pair is also compared with the ``<J, J'> r ds`` form of the bracket.
    Central arguments must give zero on both sides.
    """
    gens = homogeneous_generators(lie, spec, degree_bound)
    report = Report("h0_iso", {"lie": str(lie), "ring": str(spec), "bound": degree_bound})
    for x, y in itertools.product(gens, repeat=2):
        via_l2 = h0_projection(ell2(TildeElement.from_toroidal(x), TildeElement.from_toroidal(y)))
        direct = bracket_hat(x, y)
        report.record("H0(l2) = bracket", (x, y), via_l2, direct, via_l2 == direct)
        alt = bracket_rds(x, y)
        report.record("r ds form agrees", (x, y), alt, direct, alt == direct)
    centrals = [
        ToroidalElement.from_form(lie, spec, KaehlerElement.log_form(spec, i))
        for i in range(spec.nvars)
        if spec.invertible[i]
    ]
    for c in centrals:
        for x in gens[: max(1, len(gens))]:
            for a, b in ((c, x), (x, c)):
                via_l2 = h0_projection(ell2(TildeElement.from_toroidal(a), TildeElement.from_toroidal(b)))
                direct = bracket_hat(a, b)
                ok = via_l2.is_zero() and direct.is_zero()
                report.record("central argument", (a, b), via_l2, direct, ok)
    return report
