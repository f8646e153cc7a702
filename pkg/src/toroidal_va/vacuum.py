"""The vacuum module ``V = Ind(g_R^+ -> g_R) Q`` for ``R = A[t, t^-1]``.

States are combinations of ordered PBW monomials in the negative part

    g (x) A t^-1 Q[t^-1]  (+)  Omega^1_{S-} / dS-,

and every mode of ``g_R`` acts by straightening: a negative loop mode is
inserted and re-sorted through commutators, a non-negative one is commuted to
the right until it hits ``|0>``.  Central classes are split along
``S = S+ (+) S-``; the ``S+`` part kills the vacuum and the ``S-`` part acts by
multiplication.

Weights: a loop generator ``J (x) u t^n`` has weight ``-n``; a central form of
homogeneous t-degree ``j`` has weight ``-j`` (so ``t^-1 dt`` has weight 0).

Internally a loop generator is the tuple ``(weight, A-degree, A-exponent, lie index)``
and a central generator is ``(weight, A-degree, exponent, variable)`` for the
normal-form basis form ``x^exponent dx_variable``.  Tuple order is the PBW order.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import MissingLoopVariableError, UnsupportedConfigurationError
from .kaehler import KaehlerElement, _reduce, degree_coordinates, normal_form, pivot_index, universal_d
from .lie import LieElement, form_value, lie_bracket
from .report import Report
from .ring import RingElement, format_linear, format_monomial
from .toroidal import ToroidalElement, bracket_hat

_ONE = 1


def _num(c):
    """Keep integral coefficients as ``int``; Fraction arithmetic dominates the hot loops otherwise."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _merge(c1, c2):
    if not c1:
        return c2
    if not c2:
        return c1
    return tuple(sorted(c1 + c2))


def _accumulate(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class VacuumModule:
    """Straightening engine for one ``(g, R = A[t, t^-1])``; use :func:`vacuum_module`."""

    def __init__(self, lie, spec):
        if spec.t_index is None:
            raise MissingLoopVariableError(f"{spec} has no distinguished loop variable t")
        self.lie = lie
        self.spec = spec
        self.t = spec.t_index
        self.fiber = spec.fiber()
        self._fiber_vars = [i for i in range(spec.nvars) if i != self.t]
        self._bracket_cache = {}
        self._neg_cache = {}
        self._pos_cache = {}
        self._T_cache = {}
        self._act_cache = {}

    # -- encoding ---------------------------------------------------------

    def loop_gen(self, i, exps):
        a = self.spec.fiber_exps(exps)
        return (-exps[self.t], sum(a), a, i)

    def central_gen(self, exps, v):
        deg_t = exps[self.t] + (v == self.t)
        ad = sum(self.spec.fiber_exps(exps)) + (v != self.t)
        return (-deg_t, ad, exps, v)

    def loop_exps(self, g):
        return self.spec.join_exps(g[2], -g[0])

    def gen_element(self, g):
        """The generator as a :class:`ToroidalElement`."""
        if self._is_central(g):
            return ToroidalElement(self.lie, self.spec, None, normal_form(KaehlerElement._raw(self.spec, {(g[2], g[3]): _ONE})))
        return ToroidalElement.generator(self.lie, self.spec, g[3], self.loop_exps(g))

    def _is_central(self, g):
        # loop generators carry fiber exponents, central ones full exponents
        return len(g[2]) == self.spec.nvars

    def gen_label(self, g):
        if self._is_central(g):
            exps, v = g[2], g[3]
            mono = format_monomial(self.spec.names, exps)
            body = f"{mono}*d{self.spec.names[v]}" if mono else f"d{self.spec.names[v]}"
            return f"({body})"
        mono = format_monomial(self.spec.names, self.loop_exps(g))
        j = f"J[{self.lie.names[g[3]]}]"
        return f"({j}*{mono})" if mono else f"({j})"

    def decompose(self, x):
        """Split ``x`` into loop generators and ``S-`` central generators with coefficients."""
        loops = [(self.loop_gen(i, exps), _num(c)) for i, exps, c in x.loop_terms()]
        cents = [(self.central_gen(e, v), _num(c)) for (e, v), c in x.central.rep.items() if e[self.t] < 0]
        return loops, cents

    # -- brackets of generators -------------------------------------------

    def _bracket(self, g, h):
        key = (g, h)
        hit = self._bracket_cache.get(key)
        if hit is not None:
            return hit
        L = self.lie
        P, Q = self.loop_exps(g), self.loop_exps(h)
        i, j = g[3], h[3]
        PQ = tuple(p + q for p, q in zip(P, Q))
        loops = []
        if L.bracket_basis(i, j):
            base = self.loop_gen(0, PQ)[:3]
            loops = [(base + (k,), _num(c)) for k, c in L.bracket_basis(i, j)]
        cents = []
        f = L.form[i][j]
        if f:
            raw = {}
            for v in range(self.spec.nvars):
                m = Q[v] - P[v]
                if m:
                    raw[(PQ[:v] + (PQ[v] - 1,) + PQ[v + 1 :], v)] = f * m / 2
            nf = _reduce(self.spec, raw)
            cents = [(self.central_gen(e, v), _num(c)) for (e, v), c in nf.items() if e[self.t] < 0]
        out = (loops, cents)
        self._bracket_cache[key] = out
        return out

    # -- straightening ----------------------------------------------------

    def _mul_neg(self, g, L):
        """``g * (L |0>)`` for a negative loop generator ``g``; keys ``(new centrals, loop tuple)``."""
        if not L or g <= L[0]:
            return {((), (g,) + L): _ONE}
        key = (g, L)
        hit = self._neg_cache.get(key)
        if hit is not None:
            return hit
        h, rest = L[0], L[1:]
        out = {}
        for (c1, L1), k1 in self._mul_neg(g, rest).items():
            for (c2, L2), k2 in self._mul_neg(h, L1).items():
                _accumulate(out, (_merge(c1, c2), L2), k1 * k2)
        loops, cents = self._bracket(g, h)
        for gen, c in loops:
            for mono, k in self._mul_neg(gen, rest).items():
                _accumulate(out, mono, c * k)
        for cg, c in cents:
            _accumulate(out, ((cg,), rest), c)
        self._neg_cache[key] = out
        return out

    def _pos(self, g, L):
        """``g * (L |0>)`` for a loop generator ``g`` of non-negative mode."""
        if not L:
            return {}
        key = (g, L)
        hit = self._pos_cache.get(key)
        if hit is not None:
            return hit
        h, rest = L[0], L[1:]
        out = {}
        loops, cents = self._bracket(g, h)
        for gen, c in loops:
            sub = self._mul_neg(gen, rest) if gen[0] >= 1 else self._pos(gen, rest)
            for mono, k in sub.items():
                _accumulate(out, mono, c * k)
        for cg, c in cents:
            _accumulate(out, ((cg,), rest), c)
        for (c1, L1), k1 in self._pos(g, rest).items():
            for (c2, L2), k2 in self._mul_neg(h, L1).items():
                _accumulate(out, (_merge(c1, c2), L2), k1 * k2)
        self._pos_cache[key] = out
        return out

    def act_loop_gen(self, g, mono):
        key = (g, mono)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        C, L = mono
        sub = self._mul_neg(g, L) if g[0] >= 1 else self._pos(g, L)
        if C:
            sub = {(_merge(C, c), L2): k for (c, L2), k in sub.items()}
        self._act_cache[key] = sub
        return sub

    def act_terms(self, loops, cents, terms):
        out = {}
        for mono, k in terms.items():
            C, L = mono
            for g, c in loops:
                for m2, k2 in self.act_loop_gen(g, mono).items():
                    _accumulate(out, m2, c * k * k2)
            for cg, c in cents:
                _accumulate(out, (_merge(C, (cg,)), L), c * k)
        return out

    def act(self, x, v):
        loops, cents = self.decompose(x)
        return VacuumState(self, self.act_terms(loops, cents, v.terms))

    def apply_word(self, gens, v):
        """Apply generators right to left: ``gens[0] * (gens[1] * (... v))``."""
        terms = v.terms
        for g in reversed(gens):
            if self._is_central(g):
                terms = self.act_terms([], [(g, _ONE)], terms)
            else:
                terms = self.act_terms([(g, _ONE)], [], terms)
        return VacuumState(self, terms)

    # -- translation --------------------------------------------------------

    def _T_central(self, g):
        exps, v = g[2], g[3]
        n = exps[self.t]
        lower = exps[: self.t] + (n - 1,) + exps[self.t + 1 :]
        nf = _reduce(self.spec, {(lower, v): Fraction(-n)})
        return [(self.central_gen(e, var), _num(c)) for (e, var), c in nf.items() if e[self.t] < 0]

    def _T_loop(self, L):
        if not L:
            return {}
        hit = self._T_cache.get(L)
        if hit is not None:
            return hit
        h, rest = L[0], L[1:]
        out = {}
        # [T, J (x) u t^n] = -n J (x) u t^(n-1): weight goes up by one
        shifted = (h[0] + 1,) + h[1:]
        for mono, k in self._mul_neg(shifted, rest).items():
            _accumulate(out, mono, h[0] * k)
        for (c1, L1), k1 in self._T_loop(rest).items():
            for (c2, L2), k2 in self._mul_neg(h, L1).items():
                _accumulate(out, (_merge(c1, c2), L2), k1 * k2)
        self._T_cache[L] = out
        return out

    def apply_T(self, v):
        out = {}
        for (C, L), k in v.terms.items():
            for pos, g in enumerate(C):
                others = C[:pos] + C[pos + 1 :]
                for cg, c in self._T_central(g):
                    _accumulate(out, (_merge(others, (cg,)), L), c * k)
            for (c1, L1), k1 in self._T_loop(L).items():
                _accumulate(out, (_merge(C, c1), L1), k * k1)
        return VacuumState(self, out)

    # -- bases --------------------------------------------------------------

    def fiber_box(self, a_window):
        lo, hi = a_window
        ranges = [range(lo if inv else max(lo, 0), hi + 1) for inv in self.fiber.invertible]
        return [tuple(a) for a in itertools.product(*ranges)]

    def central_basis(self, weight, a):
        """Normal-form basis forms of ``Omega^1_{S-}/dS-`` in weight ``weight`` and A-degree ``a``."""
        degree = self.spec.join_exps(a, -weight)
        p = pivot_index(degree)
        gens = []
        for exps, v in degree_coordinates(self.spec, degree):
            if exps[self.t] >= 0 or v == p:
                continue
            gens.append(self.central_gen(exps, v))
        return sorted(gens)

    def generators(self, weight_bound, a_window, central=True):
        """Negative generators (loop and central) of weight ``<= weight_bound`` in the A-degree box."""
        box = self.fiber_box(a_window)
        out = []
        for w in range(1, weight_bound + 1):
            for a in box:
                for i in range(self.lie.dim):
                    out.append((w, sum(a), a, i))
        if central:
            for w in range(0, weight_bound + 1):
                for a in box:
                    out.extend(self.central_basis(w, a))
        return sorted(out)

    def basis(self, weight_bound, a_window=(0, 0), level_power=1, central=True):
        """PBW monomials of weight ``<= weight_bound``.

        Each factor and the total A-degree lie in ``a_window``; at most
        ``level_power`` weight-0 central factors are used (they span a
        polynomial ring, so the full weight-0 piece is infinite).
        """
        gens = self.generators(weight_bound, a_window, central)
        lo, hi = a_window
        nfib = self.fiber.nvars
        results = []

        def rec(start, chosen, weight, adeg, n0):
            if all(lo <= x <= hi for x in adeg):
                C = tuple(g for g in chosen if self._is_central(g))
                L = tuple(g for g in chosen if not self._is_central(g))
                results.append((C, L))
            for idx in range(start, len(gens)):
                g = gens[idx]
                w = g[0]
                if weight + w > weight_bound:
                    continue
                is_level = w == 0
                if is_level and n0 >= level_power:
                    continue
                gexp = self.spec.fiber_exps(self.loop_exps(g)) if not self._is_central(g) else self._central_adeg(g)
                new = tuple(x + y for x, y in zip(adeg, gexp))
                rec(idx, chosen + [g], weight + w, new, n0 + is_level)

        rec(0, [], 0, (0,) * nfib, 0)
        seen = set()
        out = []
        for m in results:
            if m not in seen:
                seen.add(m)
                out.append(VacuumState(self, {m: _ONE}))
        return out

    def _central_adeg(self, g):
        exps, v = g[2], g[3]
        a = list(self.spec.fiber_exps(exps))
        if v != self.t:
            a[self._fiber_vars.index(v)] += 1
        return tuple(a)

    def vacuum(self):
        return VacuumState(self, {((), ()): _ONE})

    def state(self, *elements):
        """``x_1 x_2 ... x_k |0>`` for toroidal elements ``x_i``."""
        v = self.vacuum()
        for x in reversed(elements):
            v = self.act(x, v)
        return v

    # -- fiber lifting ------------------------------------------------------

    def lift(self, u, n=0):
        """``u * t^n`` as an element of ``R`` for ``u`` over the fiber ``A``."""
        return RingElement._raw(self.spec, {self.spec.join_exps(e, n): c for e, c in u.items()})

    def lift_form(self, omega, n=0):
        """``t^n * omega`` for a one-form ``omega`` over ``A``."""
        terms = {}
        for (e, v), c in omega.items():
            terms[(self.spec.join_exps(e, n), self._fiber_vars[v])] = c
        return KaehlerElement._raw(self.spec, terms)

    def dt_form(self, u, n):
        """``u t^n dt``."""
        return KaehlerElement._raw(self.spec, {(self.spec.join_exps(e, n), self.t): c for e, c in u.items()})


@lru_cache(maxsize=32)
def vacuum_module(lie, spec):
    return VacuumModule(lie, spec)


class VacuumState:
    """Finite combination of PBW monomials applied to the vacuum."""

    __slots__ = ("module", "terms")

    def __init__(self, module, terms):
        self.module = module
        self.terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def vacuum(cls, lie, spec):
        return vacuum_module(lie, spec).vacuum()

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return VacuumState(self.module, out)

    def __neg__(self):
        return VacuumState(self.module, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return VacuumState(self.module, {m: k * c for m, k in self.terms.items()})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, VacuumState):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def weights(self):
        return {sum(g[0] for g in C) + sum(g[0] for g in L) for C, L in self.terms}

    def monomial_labels(self, mono):
        C, L = mono
        return [self.module.gen_label(g) for g in C + L]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(g[0] for g in kv[0][0] + kv[0][1]), kv[0]))

    def __str__(self):
        items = [(c, "".join(self.monomial_labels(m)) + "|0>") for m, c in self.sorted_terms()]
        return format_linear(items)

    __repr__ = __str__

    def to_json(self):
        from .ring import format_rational

        return [{"coeff": format_rational(c), "monomial": self.monomial_labels(m)} for m, c in self.sorted_terms()]


def monomial_weight(mono):
    C, L = mono
    return sum(g[0] for g in C) + sum(g[0] for g in L)


# ---------------------------------------------------------------------------
# operations


def act_mode(x, v):
    """Left action of ``x`` in ``g_R`` on a state."""
    if x.spec.t_index is None:
        raise MissingLoopVariableError(f"{x.spec} has no distinguished loop variable t")
    return v.module.act(x, v)


def apply_T(v):
    return v.module.apply_T(v)


@dataclass(frozen=True, repr=False)
class FieldSpec:
    """A generating field.

    ``family`` is ``"J"`` (``J_u(z) = sum (J u t^n) z^(-n-1)``), ``"Kdt"``
    (``K_{u dt/t}(z) = sum (u t^(n-1) dt) z^(-n)``) or ``"Kom"``
    (``K_{t^-1 omega}(z) = sum (t^n omega) z^(-n-1)``).  ``u`` lives over the
    fiber ``A``; ``omega`` is a one-form over ``A``.
    """

    family: str
    lie: object
    spec: object
    element: LieElement = None
    u: RingElement = None
    omega: KaehlerElement = None

    def __post_init__(self):
        if self.family not in ("J", "Kdt", "Kom"):
            raise ValueError(f"unknown field family {self.family!r}")
        if self.spec.t_index is None:
            raise MissingLoopVariableError(f"{self.spec} has no distinguished loop variable t")
        A = self.spec.fiber()
        if self.family in ("J", "Kdt") and (self.u is None or self.u.spec != A):
            raise ValueError("J and Kdt fields need u over the fiber algebra")
        if self.family == "J" and self.element is None:
            raise ValueError("J fields need a Lie element")
        if self.family == "Kom" and (self.omega is None or self.omega.spec != A):
            raise ValueError("Kom fields need a one-form over the fiber algebra")

    @classmethod
    def J(cls, lie, spec, element, u=None):
        if isinstance(element, (str, int)):
            element = lie.basis(element)
        A = spec.fiber()
        return cls("J", lie, spec, element=element, u=A.one() if u is None else u)

    @classmethod
    def Kdt(cls, lie, spec, u=None):
        A = spec.fiber()
        return cls("Kdt", lie, spec, u=A.one() if u is None else u)

    @classmethod
    def Kom(cls, lie, spec, omega):
        return cls("Kom", lie, spec, omega=omega)

    @property
    def module(self):
        return vacuum_module(self.lie, self.spec)

    @property
    def is_central(self):
        return self.family != "J"

    @property
    def creation_index(self):
        """Mode whose action on ``|0>`` creates the field's label state."""
        return 0 if self.family == "Kdt" else -1

    def __str__(self):
        if self.family == "J":
            names = self.lie.names
            j = format_linear((c, names[i]) for i, c in self.element.items())
            return f"J[{j};u={self.u}]"
        if self.family == "Kdt":
            return f"Kdt[u={self.u}]"
        return f"Kom[w={self.omega}]"

    def __repr__(self):
        return f"FieldSpec({self})"


def field_mode(f, n):
    """The coefficient element of the field ``f`` at mode ``n``."""
    M = f.module
    if f.family == "J":
        r = M.lift(f.u, n)
        loop = {i: r * c for i, c in f.element.items()}
        return ToroidalElement(f.lie, f.spec, loop)
    if f.family == "Kdt":
        return ToroidalElement(f.lie, f.spec, None, normal_form(M.dt_form(f.u, n - 1)))
    return ToroidalElement(f.lie, f.spec, None, normal_form(M.lift_form(f.omega, n)))


def _op(f, n, v):
    return v.module.act(field_mode(f, n), v)


def ope_terms(f, g, convention="bracket"):
    """Coefficients of ``delta(z-w)`` and ``d/dw delta(z-w)`` in ``[f(z), g(w)]``.

    Returns ``(delta, ddelta)``, each a list of ``(coefficient, FieldSpec)``.
    For two current fields ``J1_u``, ``J2_v`` with ``c = <J1, J2>``:

    ``"bracket"`` (default, matches ``bracket_hat``)
        ``delta = [J1,J2]_{uv} - c K_{t^-1 v du}``, ``ddelta = -c K_{uv dt/t}``.
    ``"opposite"``
        ``delta = [J1,J2]_{uv} + c K_{t^-1 u dv}``, ``ddelta = +c K_{uv dt/t}``;
        the opposite sign of the cocycle.
    ``"no_derivative"``
        the ``"bracket"`` terms without ``ddelta`` (a deliberately wrong mutation).

    Any pair involving a K field commutes.
    """
    if convention not in ("bracket", "opposite", "no_derivative"):
        raise ValueError(f"unknown convention {convention!r}")
    if f.is_central or g.is_central:
        return [], []
    lie, spec = f.lie, f.spec
    c = form_value(f.element, g.element)
    uv = f.u * g.u
    delta, ddelta = [], []
    br = lie_bracket(f.element, g.element)
    if br != 0 and uv:
        delta.append((Fraction(1), FieldSpec.J(lie, spec, br, uv)))
    if c:
        if convention == "opposite":
            one_form, sign = universal_d(g.u) * f.u, 1
        else:
            one_form, sign = universal_d(f.u) * g.u, -1
        if one_form:
            delta.append((sign * c, FieldSpec.Kom(lie, spec, one_form)))
        if convention != "no_derivative" and uv:
            ddelta.append((sign * c, FieldSpec.Kdt(lie, spec, uv)))
    return delta, ddelta


def predicted_commutator(f, g, m, n, convention="bracket"):
    """``[f_m, g_n]`` read off :func:`ope_terms`.

    ``delta`` contributes its mode ``m+n``; ``ddelta`` contributes ``m`` times
    its mode ``m+n``.
    """
    delta, ddelta = ope_terms(f, g, convention)
    total = ToroidalElement(f.lie, f.spec)
    for c, F in delta:
        total = total + field_mode(F, m + n) * c
    for c, F in ddelta:
        total = total + field_mode(F, m + n) * (c * m)
    return total


def format_ope(terms):
    return format_linear((c, str(F)) for c, F in terms)


def _sub(a, b):
    out = dict(a)
    for k, c in b.items():
        _accumulate(out, k, -c)
    return out


class _Operator:
    """An element of ``g_R`` prepared for repeated action on raw term dictionaries."""

    __slots__ = ("module", "loops", "cents", "_cache")

    def __init__(self, module, x):
        self.module = module
        self.loops, self.cents = module.decompose(x)
        self._cache = {}

    def on_monomial(self, mono):
        hit = self._cache.get(mono)
        if hit is None:
            if not self.cents and len(self.loops) == 1 and self.loops[0][1] == 1:
                hit = self.module.act_loop_gen(self.loops[0][0], mono)
            else:
                hit = self.module.act_terms(self.loops, self.cents, {mono: _ONE})
            self._cache[mono] = hit
        return hit

    def __call__(self, terms):
        if len(terms) == 1:
            (mono, c), = terms.items()
            base = self.on_monomial(mono)
            return base if c == 1 else {k: v * c for k, v in base.items()}
        out = {}
        on = self.on_monomial
        for mono, c in terms.items():
            for k, v in on(mono).items():
                v = out.get(k, 0) + v * c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return out


def _commutator(x, y, terms):
    return _sub(x(y(terms)), y(x(terms)))


def field_window(*fields):
    """Smallest A-degree window ``(lo, hi)`` containing 0 and the A-degrees of the fields' data."""
    lo = hi = 0
    for f in fields:
        exps = []
        if f.u is not None:
            exps += [e for e, _ in f.u.items()]
        if f.omega is not None:
            exps += [tuple(x + (j == v) for j, x in enumerate(e)) for (e, v), _ in f.omega.items()]
        for e in exps:
            lo = min([lo, *e])
            hi = max([hi, *e])
    return (lo, hi)


def _basis_monomials(module, weight_bound, a_window):
    return [next(iter(v.terms)) for v in module.basis(weight_bound, a_window)]


def commutator_check(f, g, weight_bound, a_window=None, convention="bracket"):
    """``[f_m, g_n] = predicted`` as operators on PBW states of weight ``<= weight_bound``.

    Modes run over ``|m|, |n| <= weight_bound``; states are all basis monomials
    of weight ``<= weight_bound`` in the A-degree window (default: spanned by
    the fields' own A-degrees).  See :func:`predicted_commutator` for
    ``convention``.
    """
    M = f.module
    a_window = field_window(f, g) if a_window is None else a_window
    monos = _basis_monomials(M, weight_bound, a_window)
    report = Report(
        "commutator",
        {"f": str(f), "g": str(g), "weight_bound": weight_bound, "a_window": list(a_window), "convention": convention},
    )
    W = weight_bound
    fops = {m: _Operator(M, field_mode(f, m)) for m in range(-W, W + 1)}
    gops = {n: _Operator(M, field_mode(g, n)) for n in range(-W, W + 1)}
    for m in range(-W, W + 1):
        for n in range(-W, W + 1):
            rhs_op = _Operator(M, predicted_commutator(f, g, m, n, convention))
            for mono in monos:
                v = {mono: _ONE}
                lhs = _commutator(fops[m], gops[n], v)
                rhs = rhs_op(v)
                if lhs == rhs:
                    report.record("[f_m, g_n]", None, None, None, True)
                else:
                    report.record("[f_m, g_n]", (m, n, VacuumState(M, v)), VacuumState(M, lhs), VacuumState(M, rhs), False)
    return report


def locality_check(f, g, weight_bound, N=2, a_window=None):
    """``sum_j binom(N,j) (-1)^j [f_(m-j), g_(n-N+j)] = 0`` on bounded states, ``|m|, |n| <= weight_bound``."""
    M = f.module
    a_window = field_window(f, g) if a_window is None else a_window
    monos = _basis_monomials(M, weight_bound, a_window)
    report = Report("locality", {"f": str(f), "g": str(g), "N": N, "weight_bound": weight_bound, "a_window": list(a_window)})
    W = weight_bound
    fops = {p: _Operator(M, field_mode(f, p)) for p in range(-W - N, W + 1)}
    gops = {q: _Operator(M, field_mode(g, q)) for q in range(-W - N, W + 1)}
    comms = {}

    def comm(p, q, mono):
        key = (p, q, mono)
        hit = comms.get(key)
        if hit is None:
            hit = comms[key] = _commutator(fops[p], gops[q], {mono: _ONE})
        return hit

    for m in range(-W, W + 1):
        for n in range(-W, W + 1):
            for mono in monos:
                total = {}
                for j in range(N + 1):
                    coeff = math.comb(N, j) * (-1) ** j
                    for k, c in comm(m - j, n - N + j, mono).items():
                        _accumulate(total, k, coeff * c)
                if not total:
                    report.record(f"(z-w)^{N}[f,g]", None, None, None, True)
                else:
                    report.record(f"(z-w)^{N}[f,g]", (m, n, VacuumState(M, {mono: _ONE})), VacuumState(M, total), 0, False)
    return report


def vacuum_axiom_check(f, window=3, degree_box=3, t_window=5):
    """Vacuum axiom for ``f`` plus the well-definedness identity for ``d(t^-1 u)``.

    (a) ``f_n |0> = 0`` for every mode in ``[-window, window]`` whose
        coefficient lies in the non-negative subalgebra;
    (b) the creation mode reproduces the field's label state;
    (c) for every A-monomial ``u`` with ``|exponent| <= degree_box`` and
        ``n`` in ``[-t_window, t_window]``, ``K_{t^-1 du}`` minus the
        z-derivative of ``K_{u dt/t}`` has vanishing mode ``n``.
    """
    M = f.module
    vac = M.vacuum()
    report = Report("vacuum_axiom", {"f": str(f), "window": window})
    first_annihilating = 1 if f.family == "Kdt" else 0
    for n in range(first_annihilating, window + 1):
        out = _op(f, n, vac)
        report.record("(a) f_n|0> = 0", (n,), out, 0, out.is_zero())
    create = _op(f, f.creation_index, vac)
    if f.family == "J":
        label = M.lift(f.u, -1)
        expected = VacuumState(M, {})
        for i, c in f.element.items():
            for e, k in label.items():
                g = M.loop_gen(i, e)
                expected = expected + VacuumState(M, {((), (g,)): c * k})
    else:
        form = M.dt_form(f.u, -1) if f.family == "Kdt" else M.lift_form(f.omega, -1)
        nf = normal_form(form).rep
        expected = VacuumState(
            M, {((M.central_gen(e, v),), ()): c for (e, v), c in nf.items() if e[M.t] < 0}
        )
    report.record("(b) creation", (f.creation_index,), create, expected, create == expected)

    # (c) well-definedness of the field assignment
    from .kaehler import universal_d

    A = M.fiber
    lie, spec = f.lie, f.spec
    boxes = [range(-degree_box if inv else 0, degree_box + 1) for inv in A.invertible]
    for a in itertools.product(*boxes):
        u = A.monomial(a)
        du = universal_d(u)
        for n in range(-t_window, t_window + 1):
            combo = field_mode(FieldSpec.Kdt(lie, spec, u), n) * n
            if du:
                combo = combo + field_mode(FieldSpec.Kom(lie, spec, du), n)
            report.record("(c) Y(d(t^-1 u)|0>) mode n", (a, n), combo, 0, combo.is_zero())
    return report


def translation_axiom_check(f, weight_bound, a_window=None):
    """``[T, f_n] = -n f_(n-1)`` (``-(n-1) f_(n-1)`` for ``Kdt``) on bounded states, and ``T|0> = 0``."""
    M = f.module
    a_window = field_window(f) if a_window is None else a_window
    states = M.basis(weight_bound, a_window)
    report = Report("translation", {"f": str(f), "weight_bound": weight_bound, "a_window": list(a_window)})
    vac = M.vacuum()
    tv = M.apply_T(vac)
    report.record("T|0> = 0", (), tv, 0, tv.is_zero())
    shift = 1 if f.family == "Kdt" else 0
    W = weight_bound
    for n in range(-W, W + 1):
        fn = field_mode(f, n)
        pred = field_mode(f, n - 1) * (-(n - shift))
        for v in states:
            lhs = M.apply_T(M.act(fn, v)) - M.act(fn, M.apply_T(v))
            rhs = M.act(pred, v)
            report.record("[T, f_n]", (n, v), lhs, rhs, lhs == rhs)
    return report


def module_generators(lie, spec, a_window=(-1, 1), mode_window=1):
    """Right-hand factors for :func:`module_axiom_check`.

    ``J_i (x) a t^n`` for A-monomials ``a`` in ``a_window`` and
    ``|n| <= mode_window``, the weight-0 central basis forms in that window,
    and ``dx`` for every variable (an ``S+`` form, acting as 0).
    """
    M = vacuum_module(lie, spec)
    gens = []
    for a in M.fiber_box(a_window):
        for n in range(-mode_window, mode_window + 1):
            for i in range(lie.dim):
                gens.append(ToroidalElement.generator(lie, spec, i, spec.join_exps(a, n)))
        for cg in M.central_basis(0, a):
            gens.append(M.gen_element(cg))
    zero = (0,) * spec.nvars
    for v in range(spec.nvars):
        gens.append(ToroidalElement.from_form(lie, spec, KaehlerElement._raw(spec, {(zero, v): _ONE})))
    return gens


def lie_generators(lie, spec):
    """``J_i (x) 1`` for all ``i`` together with ``J_0 (x) x^(+-1)`` for every variable.

    For simple ``g`` these generate ``g (x) R`` as a Lie algebra: the adjoint
    action of ``g (x) 1`` on ``J_0 (x) x^k`` fills out ``g (x) x^k``.
    """
    zero = (0,) * spec.nvars
    gens = [ToroidalElement.generator(lie, spec, i, zero) for i in range(lie.dim)]
    for v in range(spec.nvars):
        for s in ((1, -1) if spec.invertible[v] else (1,)):
            e = tuple(s if j == v else 0 for j in range(spec.nvars))
            gens.append(ToroidalElement.generator(lie, spec, 0, e))
    return gens


def module_axiom_check(lie, spec, weight_bound, a_window=(0, 0), left=None, right=None, gen_window=(-1, 1), mode_window=1):
    """``x(y v) - y(x v) = [x, y] v`` on every PBW basis state of weight ``<= weight_bound``.

    States range over the A-degree window ``a_window``.  ``x`` runs over
    ``left`` (default :func:`lie_generators`) and ``y`` over ``right``
    (default :func:`module_generators` with ``gen_window`` and
    ``mode_window``).  If the identity holds for ``x`` and ``x'`` against
    every ``y`` it holds for ``[x, x']`` by the Jacobi identity, which is why a
    generating set on the left is enough.
    """
    M = vacuum_module(lie, spec)
    monos = _basis_monomials(M, weight_bound, a_window)
    left = lie_generators(lie, spec) if left is None else left
    right = module_generators(lie, spec, gen_window, mode_window) if right is None else right
    report = Report(
        "module_axiom",
        {"lie": str(lie), "ring": str(spec), "weight_bound": weight_bound, "a_window": list(a_window),
         "left": len(left), "right": len(right), "states": len(monos)},
    )
    ops = {}

    def op(x):
        if x not in ops:
            ops[x] = _Operator(M, x)
        return ops[x]

    done = set()
    for x in left:
        for y in right:
            if x == y or (y, x) in done:
                continue
            done.add((x, y))
            X, Y, XY = op(x), op(y), _Operator(M, bracket_hat(x, y))
            for mono in monos:
                v = {mono: _ONE}
                lhs = _commutator(X, Y, v)
                rhs = XY(v)
                if lhs == rhs:
                    report.record("[x,y]v", None, None, None, True)
                else:
                    report.record("[x,y]v", (x, y, VacuumState(M, v)), VacuumState(M, lhs), VacuumState(M, rhs), False)
    return report


def character(lie, weight_bound, spec=None):
    """Rank of each weight piece of ``V`` over ``Q[k]`` for ``A = Q``.

    The weight-0 central class ``k = t^-1 dt`` is free, so the rank equals the
    number of PBW monomials without ``k`` factors.
    """
    from .ring import RingSpec

    spec = RingSpec.laurent("t", t="t") if spec is None else spec
    if spec.t_index is None:
        raise MissingLoopVariableError(f"{spec} has no distinguished loop variable t")
    if spec.nvars != 1:
        raise UnsupportedConfigurationError("character is only available for trivial fiber algebra A = Q")
    M = vacuum_module(lie, spec)
    counts = [0] * (weight_bound + 1)
    for v in M.basis(weight_bound, (0, 0), level_power=0):
        for mono in v.terms:
            counts[monomial_weight(mono)] += 1
    return list(enumerate(counts))
