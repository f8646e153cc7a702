"""Functoriality in the fiber algebra, level specialization and the Sugawara check.

A homomorphism ``psi: A -> B`` extended by ``t -> t`` induces

    J (x) u t^n + omega  |->  J (x) psi(u) t^n + psi_* omega,
    psi_*(r dr') = psi(r) d psi(r'),

on ``g_R`` and hence a map of vacuum modules, computed on PBW monomials by
applying the images of the factors to ``|0>`` in order.
"""

from fractions import Fraction

from .errors import CriticalLevelError, InvalidHomError, SpecMismatchError
from .kaehler import normal_form, pushforward
from .linalg import sparse_rank
from .report import Report
from .ring import RingHom, RingSpec, format_monomial, format_rational, validate_hom
from .toroidal import ToroidalElement
from .vacuum import (
    VacuumState,
    _accumulate,
    _basis_monomials,
    _Operator,
    module_generators,
    monomial_weight,
    vacuum_module,
)


class InducedHom:
    """The map ``V(g_{A[t^+-1]}) -> V(g_{B[t^+-1]})`` induced by a ring hom fixing ``t``.

    ``chain_rule=False`` pushes forms forward without differentiating the
    images (``x^a dx_i -> psi(x^a) dy_i``); it is wrong on purpose and exists
    for mutation tests.
    """

    def __init__(self, base, lie, chain_rule=True):
        report = validate_hom(base)
        if not report.passed:
            raise InvalidHomError("; ".join(f["lhs"] for f in report.failures))
        src, tgt = base.source, base.target
        if src.t_index is None or tgt.t_index is None:
            raise InvalidHomError("both rings need a distinguished loop variable t")
        if base.images[src.t_index] != tgt.var(tgt.t_name):
            raise InvalidHomError(f"t must map to t, got {base.images[src.t_index]}")
        self.base = base
        self.lie = lie
        self.chain_rule = chain_rule
        self.source_module = vacuum_module(lie, src)
        self.target_module = vacuum_module(lie, tgt)
        self._gen_cache = {}
        self._mono_cache = {}

    @property
    def source(self):
        return self.base.source

    @property
    def target(self):
        return self.base.target

    def __str__(self):
        return str(self.base)

    def apply_element(self, x):
        """``psi-bar`` on a toroidal element."""
        if x.spec != self.source or x.lie != self.lie:
            raise SpecMismatchError("element does not live over the source of the hom")
        loop = {i: self.base(r) for i, r in x.loop.items()}
        central = normal_form(pushforward(self.base, x.central.rep, chain_rule=self.chain_rule))
        return ToroidalElement(self.lie, self.target, loop, central)

    def _generator_op(self, g):
        op = self._gen_cache.get(g)
        if op is None:
            image = self.apply_element(self.source_module.gen_element(g))
            op = self._gen_cache[g] = _Operator(self.target_module, image)
        return op

    def _on_monomial(self, mono):
        hit = self._mono_cache.get(mono)
        if hit is None:
            C, L = mono
            terms = {((), ()): 1}
            for g in reversed(C + L):
                terms = self._generator_op(g)(terms)
            hit = self._mono_cache[mono] = terms
        return hit

    def apply_terms(self, terms):
        out = {}
        for mono, c in terms.items():
            for k, v in self._on_monomial(mono).items():
                _accumulate(out, k, v * c)
        return out

    def __call__(self, v):
        """Image of a state."""
        if v.module is not self.source_module:
            raise SpecMismatchError("state does not live in the source vacuum module")
        return VacuumState(self.target_module, self.apply_terms(v.terms))

    def compose(self, other):
        """``self ∘ other``."""
        return InducedHom(self.base.compose(other.base), self.lie, self.chain_rule and other.chain_rule)


def induce_hom(psi, lie, chain_rule=True):
    return InducedHom(psi, lie, chain_rule)


def intertwining_generators(lie, spec, a_window=(-1, 1), mode_window=1):
    """Modes used by :func:`hom_intertwines_check`.

    The generators of :func:`~toroidal_va.vacuum.module_generators` together
    with the weight-1 central basis forms, so that forms in the fiber
    directions (where the chain rule matters) act nontrivially.
    """
    M = vacuum_module(lie, spec)
    gens = module_generators(lie, spec, a_window, mode_window)
    for a in M.fiber_box(a_window):
        for cg in M.central_basis(1, a):
            gens.append(M.gen_element(cg))
    return gens


def hom_intertwines_check(psi, lie, weight_bound, a_window=(-1, 1), mode_window=1, chain_rule=True):
    """``psi~(x v) = psi-bar(x) psi~(v)`` for generator modes ``x`` and basis states ``v``."""
    F = psi if isinstance(psi, InducedHom) else InducedHom(psi, lie, chain_rule)
    S, T = F.source_module, F.target_module
    monos = _basis_monomials(S, weight_bound, a_window)
    gens = intertwining_generators(F.lie, F.source, a_window, mode_window)
    report = Report(
        "hom_intertwines",
        {"hom": str(F), "weight_bound": weight_bound, "a_window": list(a_window), "chain_rule": F.chain_rule,
         "generators": len(gens), "states": len(monos)},
    )
    for x in gens:
        X = _Operator(S, x)
        Y = _Operator(T, F.apply_element(x))
        for mono in monos:
            lhs = F.apply_terms(X({mono: 1}))
            rhs = Y(F.apply_terms({mono: 1}))
            if lhs == rhs:
                report.record("psi(x v) = psi(x) psi(v)", None, None, None, True)
            else:
                report.record(
                    "psi(x v) = psi(x) psi(v)",
                    (x, VacuumState(S, {mono: 1})),
                    VacuumState(T, lhs),
                    VacuumState(T, rhs),
                    False,
                )
    return report


def functoriality_check(phi, psi, lie, weight_bound, a_window=(-1, 1)):
    """``induce(psi ∘ phi) = induce(psi) ∘ induce(phi)`` on basis states."""
    F, G = InducedHom(phi, lie), InducedHom(psi, lie)
    GF = InducedHom(psi.compose(phi), lie)
    monos = _basis_monomials(F.source_module, weight_bound, a_window)
    report = Report("functoriality", {"phi": str(phi), "psi": str(psi), "weight_bound": weight_bound})
    for mono in monos:
        lhs = GF.apply_terms({mono: 1})
        rhs = G.apply_terms(F.apply_terms({mono: 1}))
        report.record(
            "(psi phi)~ = psi~ phi~",
            VacuumState(F.source_module, {mono: 1}),
            VacuumState(GF.target_module, lhs),
            VacuumState(GF.target_module, rhs),
            lhs == rhs,
        )
    return report


def structure_map(target):
    """``Q[t^+-1] -> A[t^+-1]`` with ``t -> t``."""
    if target.t_index is None:
        raise InvalidHomError(f"{target} has no distinguished loop variable t")
    source = RingSpec.laurent(target.t_name, t=target.t_name)
    return RingHom(source, target, [target.var(target.t_name)])


def embedding_check(lie, target, weight_bound, level_power=2):
    """Injectivity of ``V(g_{Q[t^+-1]}) -> V(g_{A[t^+-1]})`` on each weight piece.

    The source weight pieces are infinite over ``Q`` (powers of ``k``); the
    check takes every PBW monomial with at most ``level_power`` factors of
    ``k`` and compares the rank of their images with their number.
    """
    F = InducedHom(structure_map(target), lie)
    S = F.source_module
    by_weight = {}
    for v in S.basis(weight_bound, (0, 0), level_power):
        (mono,) = v.terms
        by_weight.setdefault(monomial_weight(mono), []).append(mono)
    report = Report("embedding", {"target": str(target), "weight_bound": weight_bound, "level_power": level_power})
    ranks = {}
    for w in sorted(by_weight):
        images = [F.apply_terms({m: 1}) for m in by_weight[w]]
        r = sparse_rank(images)
        ranks[w] = [len(images), r]
        report.record("rank = number of states", (w,), r, len(images), r == len(images))
    report.extra["ranks"] = ranks
    return report


# ---------------------------------------------------------------------------
# level


class LevelSpecialization:
    """Linear functional ``chi`` on the weight-0 central classes ``u t^-1 dt``.

    ``values`` maps A-exponent tuples to rationals; unlisted monomials map to 0.
    """

    def __init__(self, fiber, values):
        self.fiber = fiber
        self.values = {}
        for key, c in values.items():
            exps = tuple(key)
            if len(exps) != fiber.nvars:
                raise ValueError(f"exponent {exps} does not match {fiber}")
            if Fraction(c):
                self.values[exps] = Fraction(c)

    @classmethod
    def level(cls, fiber, K):
        """``chi(1) = K`` and ``chi(u) = 0`` for every other monomial."""
        return cls(fiber, {(0,) * fiber.nvars: K})

    @property
    def K(self):
        return self.values.get((0,) * self.fiber.nvars, Fraction(0))

    def __call__(self, exps):
        return self.values.get(tuple(exps), Fraction(0))

    def __str__(self):
        items = sorted(self.values.items())
        body = "; ".join(f"{format_monomial(self.fiber.names, e) or '1'} -> {format_rational(c)}" for e, c in items)
        return f"chi: {body}" if body else "chi:"


def _specialize_terms(module, chi, terms):
    out = {}
    for (C, L), c in terms.items():
        keep = []
        for g in C:
            if g[0] == 0:
                c = c * chi(module.spec.fiber_exps(g[2]))
                if not c:
                    break
            else:
                keep.append(g)
        if c:
            _accumulate(out, (tuple(keep), L), c)
    return out


def specialize_level(chi, v):
    """Replace every weight-0 central factor ``u t^-1 dt`` by the scalar ``chi(u)``."""
    return VacuumState(v.module, _specialize_terms(v.module, chi, v.terms))


class Sugawara:
    """Modes ``L_m`` of the Segal-Sugawara field at level ``K`` acting on ``V_K``.

    ``L_m = 1/(2(K + h)) sum_i sum_n :J_i(n) J^i(m - n):`` with ``J^i`` the
    dual basis for the invariant form; normal ordering puts the non-negative
    mode on the right.

    ``K`` is the level in the usual normalization
    ``[J(m), J'(n)] = [J, J'](m+n) + m <J, J'> K delta_(m+n,0)``.  The bracket
    used here, with central term ``1/2 <J, J'> (r ds - s dr)``, gives
    ``[e (x) t, f (x) t^-1] = h - k`` for ``k = t^-1 dt``, so level ``K``
    means ``k -> -K``.  ``literal=True`` specializes ``k -> K`` instead; the
    Virasoro identities then fail, which the tests record.
    """

    def __init__(self, lie, K, spec=None, literal=False):
        if lie.dual_coxeter is None:
            raise ValueError(f"{lie} has no dual Coxeter number")
        K = Fraction(K)
        if K + lie.dual_coxeter == 0:
            raise CriticalLevelError(f"K = {K} is the critical level for {lie}")
        self.lie = lie
        self.K = K
        self.spec = RingSpec.laurent("t", t="t") if spec is None else spec
        self.module = vacuum_module(lie, self.spec)
        self.literal = literal
        self.chi = LevelSpecialization.level(self.spec.fiber(), K if literal else -K)
        self.scale = 1 / (2 * (K + lie.dual_coxeter))
        self._ops = {}

    def _op(self, i, n, dual):
        key = (i, n, dual)
        op = self._ops.get(key)
        if op is None:
            L, R = self.lie, self.spec
            e = R.join_exps((0,) * (R.nvars - 1), n)
            if dual:
                row = L.dual_basis()[i]
                loop = {j: R.monomial(e, c) for j, c in enumerate(row) if c}
                x = ToroidalElement(L, R, loop)
            else:
                x = ToroidalElement.generator(L, R, i, e)
            op = self._ops[key] = _Operator(self.module, x)
        return op

    def mode_terms(self, m, terms):
        if not terms:
            return {}
        w = max(monomial_weight(mono) for mono in terms)
        out = {}
        for i in range(self.lie.dim):
            for n in range(min(m - w, 0) - 1, w + 2):
                if n <= -1:
                    part = self._op(i, n, False)(self._op(i, m - n, True)(terms))
                else:
                    part = self._op(i, m - n, True)(self._op(i, n, False)(terms))
                for k, c in part.items():
                    _accumulate(out, k, c)
        out = _specialize_terms(self.module, self.chi, out)
        return {k: c * self.scale for k, c in out.items()}

    def mode(self, m, v):
        return VacuumState(self.module, self.mode_terms(m, v.terms))


def sugawara_check(lie, K, weight_bound, central_charge=True, literal=False):
    """``L_-1 = T``, ``L_0 = weight`` and ``[L_1, L_-1] = 2 L_0`` on ``V_K`` states of weight ``<= weight_bound``.

    With ``central_charge`` the report also compares ``L_2 L_-2 |0>`` with
    ``c/2 |0>`` for ``c = K dim g / (K + h)``.
    """
    S = Sugawara(lie, K, literal=literal)
    M = S.module
    report = Report(
        "sugawara", {"lie": str(lie), "K": format_rational(S.K), "weight_bound": weight_bound, "literal": literal}
    )
    for v in M.basis(weight_bound, (0, 0), level_power=0):
        (mono,) = v.terms
        w = monomial_weight(mono)
        lm1 = S.mode(-1, v)
        tv = specialize_level(S.chi, M.apply_T(v))
        report.record("(a) L_-1 = T", v, lm1, tv, lm1 == tv)
        l0 = S.mode(0, v)
        report.record("(b) L_0 = weight", v, l0, v * w, l0 == v * w)
        lhs = S.mode(1, S.mode(-1, v)) - S.mode(-1, S.mode(1, v))
        report.record("(c) [L_1, L_-1] = 2 L_0", v, lhs, l0 * 2, lhs == l0 * 2)
    if central_charge:
        vac = M.vacuum()
        out = S.mode(2, S.mode(-2, vac))
        c = out.terms.get(((), ()), Fraction(0)) * 2
        predicted = S.K * lie.dim / (S.K + lie.dual_coxeter)
        report.extra["central_charge"] = format_rational(Fraction(c))
        report.record("L_2 L_-2 |0> = c/2 |0>", (), c, predicted, Fraction(c) == predicted and len(out.terms) <= 1)
    return report


__all__ = [
    "InducedHom",
    "LevelSpecialization",
    "Sugawara",
    "embedding_check",
    "functoriality_check",
    "hom_intertwines_check",
    "induce_hom",
    "intertwining_generators",
    "specialize_level",
    "structure_map",
    "sugawara_check",
]
