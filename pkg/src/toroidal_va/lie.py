"""Finite-dimensional Lie algebras given by rational structure constants."""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import SpecMismatchError
from .linalg import inverse
from .report import Report


@dataclass(frozen=True, eq=False, repr=False)
class LieAlgebra:
    """``[J_i, J_j] = sum_k structure[i][j][k] J_k`` with invariant form ``form``."""

    names: tuple
    structure: tuple
    form: tuple
    dual_coxeter: Fraction = None
    label: str = ""

    def __post_init__(self):
        n = len(self.names)
        st = tuple(tuple(tuple(Fraction(c) for c in row) for row in plane) for plane in self.structure)
        fm = tuple(tuple(Fraction(c) for c in row) for row in self.form)
        if len(st) != n or any(len(p) != n or any(len(r) != n for r in p) for p in st):
            raise ValueError("structure constants must be dim x dim x dim")
        if len(fm) != n or any(len(r) != n for r in fm):
            raise ValueError("form must be dim x dim")
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "structure", st)
        object.__setattr__(self, "form", fm)
        if self.dual_coxeter is not None:
            object.__setattr__(self, "dual_coxeter", Fraction(self.dual_coxeter))
        # sparse views for the hot loops
        sparse = tuple(
            tuple(tuple((k, c) for k, c in enumerate(st[i][j]) if c) for j in range(n)) for i in range(n)
        )
        object.__setattr__(self, "_sparse", sparse)

    def _key(self):
        return (self.names, self.structure, self.form, self.dual_coxeter)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def dim(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown Lie basis element {name!r}") from None

    def bracket_basis(self, i, j):
        """Sparse ``[J_i, J_j]`` as a tuple of ``(k, coefficient)``."""
        return self._sparse[i][j]

    def basis(self, name_or_index):
        i = self.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return LieElement(self, tuple(Fraction(int(k == i)) for k in range(self.dim)))

    def pairing(self, i, j):
        return self.form[i][j]

    def dual_basis(self):
        """Rows ``d[i]`` with ``<J^i, J_j> = delta_ij``, where ``J^i = sum_k d[i][k] J_k``."""
        return _dual_basis(self)

    def __str__(self):
        return self.label or f"LieAlgebra({', '.join(self.names)})"

    def __repr__(self):
        return f"LieAlgebra({self.label or ', '.join(self.names)})"

    @classmethod
    def from_dict(cls, data):
        """Build from ``{"basis": [...], "brackets": {"a,b": {"c": coeff}}, "form": [[...]]}``.

        Only brackets for one ordering of each pair need to be given;
        antisymmetry fills in the rest.  Coefficients may be strings like ``"1/2"``.
        """
        names = tuple(data["basis"])
        n = len(names)
        idx = {name: i for i, name in enumerate(names)}
        st = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for pair, value in data.get("brackets", {}).items():
            a, b = (s.strip() for s in pair.split(","))
            for target, c in value.items():
                c = Fraction(c)
                st[idx[a]][idx[b]][idx[target]] += c
                if a != b:
                    st[idx[b]][idx[a]][idx[target]] -= c
        form = [[Fraction(x) for x in row] for row in data["form"]]
        hv = data.get("dual_coxeter")
        return cls(names, st, form, None if hv is None else Fraction(hv), data.get("name", ""))

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@lru_cache(maxsize=None)
def _dual_basis(L):
    return tuple(tuple(row) for row in _transpose(inverse(L.form)))


def _transpose(m):
    return [list(col) for col in zip(*m)]


class LieElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != algebra.dim:
            raise ValueError("coefficient vector has the wrong length")
        self.algebra = algebra
        self.coeffs = coeffs

    def __add__(self, other):
        _same(self, other)
        return LieElement(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        _same(self, other)
        return LieElement(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, c):
        return LieElement(self.algebra, [a * c for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LieElement):
            return self.algebra == other.algebra and self.coeffs == other.coeffs
        if other == 0:
            return not any(self.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def items(self):
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def __str__(self):
        from .ring import format_linear

        return format_linear((c, self.algebra.names[i]) for i, c in self.items())

    __repr__ = __str__


def _same(x, y):
    if x.algebra != y.algebra:
        raise SpecMismatchError("elements of different Lie algebras")


def lie_bracket(x, y):
    _same(x, y)
    L = x.algebra
    out = [Fraction(0)] * L.dim
    for i, a in x.items():
        for j, b in y.items():
            for k, c in L.bracket_basis(i, j):
                out[k] += a * b * c
    return LieElement(L, out)


def form_value(x, y):
    _same(x, y)
    F = x.algebra.form
    return sum((a * b * F[i][j] for i, a in x.items() for j, b in y.items()), Fraction(0))


def validate_lie(L):
    """Exact check of antisymmetry, Jacobi, form symmetry and invariance on basis triples."""
    n = L.dim
    st, F = L.structure, L.form
    report = Report("validate_lie", {"algebra": str(L)})
    for i in range(n):
        for j in range(n):
            lhs = st[i][j]
            rhs = tuple(-c for c in st[j][i])
            report.record("antisymmetry", (L.names[i], L.names[j]), lhs, rhs, lhs == rhs)
            report.record("form symmetry", (L.names[i], L.names[j]), F[i][j], F[j][i], F[i][j] == F[j][i])
    for i in range(n):
        for j in range(n):
            for k in range(n):
                # [a,[b,c]] + [b,[c,a]] + [c,[a,b]] in coordinates
                jac = [Fraction(0)] * n
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, c1 in L.bracket_basis(b, c):
                        for p, c2 in L.bracket_basis(a, m):
                            jac[p] += c1 * c2
                names = (L.names[i], L.names[j], L.names[k])
                report.record("jacobi", names, tuple(jac), 0, not any(jac))
                # <[a,b],c> = <a,[b,c]>
                left = sum((c * F[m][k] for m, c in L.bracket_basis(i, j)), Fraction(0))
                right = sum((c * F[i][m] for m, c in L.bracket_basis(j, k)), Fraction(0))
                report.record("invariance", names, left, right, left == right)
    return report


def killing_form(L):
    """``K(x, y) = tr(ad x ad y)`` from the structure constants."""
    n = L.dim
    st = L.structure
    return tuple(
        tuple(sum((st[a][c][d] * st[b][d][c] for c in range(n) for d in range(n)), Fraction(0)) for b in range(n))
        for a in range(n)
    )


def proportionality(form_a, form_b):
    """Return ``lam`` with ``form_a == lam * form_b`` entrywise, or ``None``."""
    lam = None
    for ra, rb in zip(form_a, form_b):
        for a, b in zip(ra, rb):
            if b == 0:
                if a != 0:
                    return None
                continue
            q = Fraction(a) / b
            if lam is None:
                lam = q
            elif q != lam:
                return None
    return lam


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _sl_coordinates(n, mat, order):
    """Coordinates of a traceless ``n x n`` matrix in the Chevalley basis ``order``."""
    out = []
    for kind, a, b in order:
        if kind == "h":
            # h_a = E_aa - E_(a+1)(a+1); coefficient is the partial trace
            out.append(sum((mat[i][i] for i in range(a + 1)), Fraction(0)))
        else:
            out.append(mat[a][b])
    return out


def sl_n(n):
    """``sl_n`` in the Chevalley basis with the trace form of the defining representation.

    Basis order: raising ``E_ij`` (i<j), Cartan ``h_i``, lowering ``E_ji``.  For
    ``n = 2`` the names are ``e, h, f``.
    """
    pos = [("e", i, j) for d in range(1, n) for i in range(n - d) for j in [i + d]]
    cartan = [("h", i, i + 1) for i in range(n - 1)]
    neg = [("f", j, i) for (_, i, j) in pos]
    order = pos + cartan + neg

    def matrix(kind, a, b):
        m = [[Fraction(0)] * n for _ in range(n)]
        if kind == "h":
            m[a][a], m[a + 1][a + 1] = Fraction(1), Fraction(-1)
        else:
            m[a][b] = Fraction(1)
        return m

    if n == 2:
        names = ("e", "h", "f")
    else:
        names = tuple(
            f"h{a + 1}" if kind == "h" else f"{kind}{min(a, b) + 1}{max(a, b) + 1}" for kind, a, b in order
        )
    mats = [matrix(*o) for o in order]
    dim = len(order)
    st = []
    for x in mats:
        plane = []
        for y in mats:
            xy, yx = _matmul(x, y), _matmul(y, x)
            comm = [[xy[i][j] - yx[i][j] for j in range(n)] for i in range(n)]
            plane.append(_sl_coordinates(n, comm, order))
        st.append(plane)
    form = [[sum((_matmul(x, y)[i][i] for i in range(n)), Fraction(0)) for y in mats] for x in mats]
    assert len(form) == dim
    return LieAlgebra(names, st, form, Fraction(n), f"sl{n}")


def abelian(dim=1, form=None):
    names = tuple(f"a{i}" for i in range(dim)) if dim > 1 else ("a",)
    zero = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    if form is None:
        form = [[int(i == j) for j in range(dim)] for i in range(dim)]
    return LieAlgebra(names, zero, form, None, f"abelian{dim}")


PRESETS = {"sl2": lambda: sl_n(2), "sl3": lambda: sl_n(3)}


def preset(name):
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def perturbed(L, i, j, k, value):
    """Copy of ``L`` with ``c_ij^k := value`` (and ``c_ji^k := -value``)."""
    st = [[list(r) for r in plane] for plane in L.structure]
    st[i][j][k] = Fraction(value)
    st[j][i][k] = -Fraction(value)
    return LieAlgebra(L.names, st, L.form, L.dual_coxeter, L.label + "*")


def with_form(L, form):
    return LieAlgebra(L.names, L.structure, form, L.dual_coxeter, L.label + "'")
