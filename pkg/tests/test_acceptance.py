"""Acceptance criteria, each at its stated bounds and runtime limit.

Every criterion prints one ``criterion N: PASS|FAIL`` line (also collected in
the terminal summary by ``conftest.py``).
"""

import functools
import itertools
import subprocess
import sys
import time

import pytest
import sympy

from conftest import ACCEPTANCE_LINES
from corpus import CORPUS, round_trip
from toroidal_va import (
    CriticalLevelError,
    RingSpec,
    character,
    cocycle_check,
    commutator_check,
    embedding_check,
    graded_dimension,
    h0_iso_check,
    hom_intertwines_check,
    is_exact,
    jacobi_suite,
    killing_form,
    locality_check,
    module_axiom_check,
    sugawara_check,
    translation_axiom_check,
    universal_d,
    validate_lie,
    vacuum_axiom_check,
)
from toroidal_va.kaehler import degree_coordinates
from toroidal_va.lie import preset, proportionality
from toroidal_va.parse import parse_field, parse_hom
from toroidal_va.vacuum import ope_terms

SL2 = preset("sl2")
SL3 = preset("sl3")
QT = RingSpec.parse("laurent:t;t=t")
QXT = RingSpec.parse("laurent:x,t;t=t")
QYT = RingSpec.parse("laurent:y,t;t=t")


def criterion(number, title, limit):
    """Run the body, then require it to finish within ``limit`` seconds."""

    def wrap(body):
        @functools.wraps(body)
        def run():
            start = time.perf_counter()
            status, detail = "FAIL", ""
            try:
                body()
                elapsed = time.perf_counter() - start
                if elapsed >= limit:
                    detail = f" (too slow: {elapsed:.1f}s >= {limit}s)"
                    raise AssertionError(f"criterion {number} took {elapsed:.2f}s, limit {limit}s")
                status = "PASS"
            except Exception as exc:
                if not detail:
                    detail = f" ({type(exc).__name__})"
                raise
            finally:
                elapsed = time.perf_counter() - start
                line = f"criterion {number}: {status} {title} [{elapsed:.2f}s / limit {limit}s]{detail}"
                ACCEPTANCE_LINES.append(line)
                print(line)

        return run

    return wrap


def sympy_relation_dimension(spec, degree):
    """Dimension of the degree piece of ``Omega^1/dR`` from a sympy rank computation."""
    coords = degree_coordinates(spec, degree)
    relation = [[degree[i] for _, i in coords]] if spec.is_legal(degree) else [[0] * len(coords)]
    return len(coords) - sympy.Matrix(relation).rank()


def partition_product(dim, W):
    """Coefficients of ``prod_{k>=1} (1 - q^k)^(-dim)`` via sympy series."""
    q = sympy.symbols("q")
    prod = sympy.Integer(1)
    for k in range(1, W + 1):
        prod *= (1 - q**k) ** (-dim)
    series = sympy.series(prod, q, 0, W + 1).removeO()
    return [int(series.coeff(q, w)) for w in range(W + 1)]


def cli(*args):
    return subprocess.run([sys.executable, "-m", "toroidal_va", *args], capture_output=True)


# 8 and 9 share the generating fields for sl2 over A = Q[x^+-1]
FIELD_TEXTS = ["J[e;u=x]", "J[f;u=x^-1]", "J[h;u=1]", "Kdt[u=x]", "Kom[w=x^-1*dx]"]


def fields():
    return [parse_field(t, SL2, QXT) for t in FIELD_TEXTS]


@criterion(1, "Lie presets validate; Killing(sl2) = 4 * trace form", 1)
def test_criterion_01_lie_presets():
    for L in (SL2, SL3):
        report = validate_lie(L)
        assert report.passed and report.n_failed == 0 and report.n_checked > 0
    K = killing_form(SL2)
    assert proportionality(K, SL2.form) == 4
    assert all(K[i][j] == 4 * SL2.form[i][j] for i in range(3) for j in range(3))


@criterion(2, "residue case: dim of Omega^1/dR over Q[t^+-1], degrees -10..10", 1)
def test_criterion_02_residue_case():
    table = graded_dimension(QT, (-10,), (10,))
    assert [d for _, d in table] == [int(m == 0) for m in range(-10, 11)]


@criterion(3, "toroidal dimensions over [-3,3]^(n+1), n+1 = 2, 3, against a relation-rank oracle", 5)
def test_criterion_03_toroidal_dimensions():
    for names in ("t0,t1", "t0,t1,t2"):
        spec = RingSpec.parse(f"laurent:{names}")
        n1 = spec.nvars
        table = graded_dimension(spec, (-3,) * n1, (3,) * n1)
        assert len(table) == 7**n1
        for m, d in table:
            expected = n1 if not any(m) else n1 - 1
            assert d == expected, (m, d)
            assert d == sympy_relation_dimension(spec, m), m


@criterion(4, "Jacobi for sl2 over Q[t^+-1] (bound 2) and Q[t0^+-1,t1^+-1] (bound 1)", 30)
def test_criterion_04_jacobi():
    for spec, bound in ((QT, 2), (RingSpec.parse("laurent:t0,t1"), 1)):
        report = jacobi_suite(SL2, spec, bound)
        assert report.passed and report.n_checked > 0


@criterion(5, "cocycle identities (ii), (iii) for sl2 over Q[t^+-1], bound 2; sign mutation fails", 60)
def test_criterion_05_cocycle():
    report = cocycle_check(SL2, QT, 2)
    assert report.passed and report.n_checked > 0
    mutated = cocycle_check(SL2, QT, 2, koszul_sign=False)
    assert not mutated.passed
    assert {f["identity"] for f in mutated.failures} == {"(iii) d_CE phi1 - d phi0 = 0"}


@criterion(6, "H0 of the L-infinity model reproduces the bracket, bound 2", 10)
def test_criterion_06_h0():
    report = h0_iso_check(SL2, QT, 2)
    assert report.passed and report.n_checked > 0


@criterion(7, "module axiom, sl2, weight <= 3, A in {Q, Q[x^+-1]}, A-degrees [-2,2]", 60)
def test_criterion_07_module_axiom():
    r_q = module_axiom_check(SL2, QT, 3)
    r_x = module_axiom_check(SL2, QXT, 3, a_window=(-2, 2))
    assert r_q.passed and r_q.n_checked > 0
    assert r_x.passed and r_x.n_checked > 0


@criterion(8, "commutator formula for all field-family pairs, sl2, A = Q[x^+-1], W = 3", 60)
def test_criterion_08_commutators():
    fs = fields()
    for f, g in itertools.combinations_with_replacement(fs, 2):
        report = commutator_check(f, g, 3)
        assert report.passed and report.n_checked > 0, (str(f), str(g))
        if f.is_central or g.is_central:
            assert ope_terms(f, g) == ([], [])


@criterion(9, "locality with N = 2 on the same configuration", 60)
def test_criterion_09_locality():
    fs = fields()
    for f, g in itertools.combinations_with_replacement(fs, 2):
        report = locality_check(f, g, 3, N=2)
        assert report.passed and report.n_checked > 0, (str(f), str(g))


@criterion(10, "well-definedness: nf(d(t^n u)) = 0, |deg u| <= 3, n in [-5,5]", 1)
def test_criterion_10_well_defined():
    for spec in (QXT, RingSpec.parse("laurent:x,y,t;t=t")):
        A = spec.fiber()
        for a in itertools.product(range(-3, 4), repeat=A.nvars):
            for n in range(-5, 6):
                u = spec.monomial(spec.join_exps(a, n))
                assert is_exact(universal_d(u)), (a, n)
    assert vacuum_axiom_check(parse_field("J[e;u=x]", SL2, QXT), degree_box=3, t_window=5).passed


@criterion(11, "translation axioms for all three families at weight 3", 30)
def test_criterion_11_translation():
    for text in ("J[e;u=x]", "J[h;u=1]", "Kdt[u=1]", "Kdt[u=x^-1]", "Kom[w=x^-1*dx]"):
        report = translation_axiom_check(parse_field(text, SL2, QXT), 3)
        assert report.passed and report.n_checked > 0, text


@criterion(12, "character of V(sl2) over Q[k] at weights 0..4 is [1,3,9,22,51]", 5)
def test_criterion_12_character():
    ranks = [r for _, r in character(SL2, 4)]
    assert ranks == [1, 3, 9, 22, 51]
    assert ranks == partition_product(SL2.dim, 4)


@criterion(13, "x -> y^2 intertwines at W = 3; Q -> Q[x^+-1] injective up to weight 4", 60)
def test_criterion_13_functor():
    psi = parse_hom("hom: x -> y^2; t -> t", QXT, QYT)
    report = hom_intertwines_check(psi, SL2, 3)
    assert report.passed and report.n_checked > 0
    emb = embedding_check(SL2, QXT, 4)
    assert emb.passed
    assert sorted(emb.extra["ranks"]) == [0, 1, 2, 3, 4]


@criterion(14, "Sugawara at K = 1 on weight <= 2; K = -2 is critical", 60)
def test_criterion_14_sugawara():
    report = sugawara_check(SL2, 1, 2)
    assert report.passed and report.n_checked > 0
    with pytest.raises(CriticalLevelError):
        sugawara_check(SL2, -2, 2)


@criterion(15, "CLI: 50-expression round trip, byte-stable JSON, exit codes", 5)
def test_criterion_15_cli_contract():
    assert len(CORPUS) == 50
    assert all(round_trip(*entry) for entry in CORPUS)
    argv = ("verify", "jacobi", "--bound", "1", "--json")
    first, second = cli(*argv), cli(*argv)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout and first.stdout
    assert cli("ope", "--f1", "J[e]", "--f2", "J[f]", "--max-weight", "1", "--convention", "opposite").returncode == 1
    assert cli("verify", "--bogus").returncode == 2
    assert cli("nf", "--expr", "t^^3").returncode == 2
