"""Change of fiber algebra, level specialization and the Sugawara vector."""

from fractions import Fraction

import pytest

from toroidal_va import (
    CriticalLevelError,
    InvalidHomError,
    LevelSpecialization,
    RingHom,
    RingSpec,
    ToroidalElement,
    embedding_check,
    functoriality_check,
    hom_intertwines_check,
    induce_hom,
    specialize_level,
    sugawara_check,
    vacuum_module,
)
from toroidal_va.functor import Sugawara, structure_map
from toroidal_va.lie import preset
from toroidal_va.parse import parse_chi, parse_element, parse_hom

SL2 = preset("sl2")
R = RingSpec.parse("laurent:t;t=t")
RX = RingSpec.parse("laurent:x,t;t=t")
RY = RingSpec.parse("laurent:y,t;t=t")
RZ = RingSpec.parse("laurent:z,t;t=t")


def tor(text, spec):
    return parse_element(text, spec, SL2, kind="toroidal")


def test_identity_hom_is_identity():
    H = induce_hom(RingHom.identity(RX), SL2)
    M = vacuum_module(SL2, RX)
    for v in M.basis(2, (-1, 1))[:60]:
        assert H(v) == v


def test_hom_examples():
    H = induce_hom(parse_hom("x -> y^2; t -> t", RX, RY), SL2)
    MX, MY = vacuum_module(SL2, RX), vacuum_module(SL2, RY)
    assert H(MX.state(tor("J[e]*x*t^-1", RX))) == MY.state(tor("J[e]*y^2*t^-1", RY))
    assert H(MX.state(tor("x^-1*t^-1*dx", RX))) == MY.state(tor("2*y^-1*t^-1*dy", RY))


def test_invalid_homs_rejected():
    with pytest.raises(InvalidHomError):
        induce_hom(parse_hom("x -> y; t -> y*t", RX, RY), SL2)
    with pytest.raises(InvalidHomError):
        induce_hom(RingHom.from_mapping(RX, RY, {"x": parse_element("y + 1", RY, kind="ring")}, check=False), SL2)


def test_intertwining_and_chain_rule_mutation():
    psi = parse_hom("x -> y^2; t -> t", RX, RY)
    assert hom_intertwines_check(psi, SL2, 2).passed
    assert not hom_intertwines_check(psi, SL2, 2, chain_rule=False).passed
    scaled = parse_hom("x -> 3*y^-1; t -> t", RX, RY)
    assert hom_intertwines_check(scaled, SL2, 2).passed


def test_functoriality():
    phi = parse_hom("x -> y^2; t -> t", RX, RY)
    psi = parse_hom("y -> -z^3; t -> t", RY, RZ)
    assert functoriality_check(phi, psi, SL2, 2).passed


def test_embedding():
    report = embedding_check(SL2, RX, 3)
    assert report.passed
    assert [report.extra["ranks"][w][0] for w in range(4)] == [3, 9, 27, 66]
    assert str(structure_map(RX)) == "hom: t -> t"


def test_specialize_level_examples():
    M = vacuum_module(SL2, R)
    kbar = tor("t^-1*dt", R)
    chi = LevelSpecialization.level(R.fiber(), 4)
    assert specialize_level(chi, M.state(kbar)) == M.vacuum() * 4
    assert specialize_level(chi, M.vacuum()) == M.vacuum()
    MX = vacuum_module(SL2, RX)
    chi_x = parse_chi("chi: 1 -> 1; x -> 0", RX.fiber())
    v = MX.state(tor("x*t^-1*dt", RX), tor("J[e]*t^-1", RX))
    assert specialize_level(chi_x, v).is_zero()
    assert specialize_level(chi_x, MX.state(tor("t^-1*dt", RX), tor("J[e]*t^-1", RX))) == MX.state(
        tor("J[e]*t^-1", RX)
    )


def test_specialization_commutes_with_modes():
    M = vacuum_module(SL2, RX)
    chi = parse_chi("chi: 1 -> 2; x -> -1; x^-1 -> 1/2", RX.fiber())
    xs = [tor(s, RX) for s in ("J[e]*x*t", "J[f]*t^-2", "J[h]*x^-1", "x*t^-2*dt", "t^-1*dx")]
    for v in M.basis(2, (-1, 1), level_power=1):
        for x in xs:
            assert specialize_level(chi, M.act(x, v)) == specialize_level(chi, M.act(x, specialize_level(chi, v)))


def test_sugawara_vector_matches_quadratic_formula():
    K = Fraction(1)
    S = Sugawara(SL2, K)
    M = S.module
    d = SL2.dual_basis()
    total = M.vacuum() * 0
    for i in range(SL2.dim):
        dual = ToroidalElement(SL2, R, {j: R.monomial((-1,), c) for j, c in enumerate(d[i]) if c})
        total = total + M.state(ToroidalElement.generator(SL2, R, i, (-1,)), dual)
    assert S.mode(-2, M.vacuum()) == total * (1 / (2 * (K + 2)))
    assert S.mode(0, M.vacuum()).is_zero()


def test_sugawara_check():
    report = sugawara_check(SL2, 1, 2)
    assert report.passed
    assert report.extra["central_charge"] == "1"
    assert sugawara_check(SL2, 3, 1).extra["central_charge"] == "9/5"
    assert sugawara_check(preset("sl3"), 1, 1).extra["central_charge"] == "2"


def test_sugawara_literal_level_sign_fails():
    report = sugawara_check(SL2, 1, 2, literal=True)
    assert not report.passed
    assert report.extra["central_charge"] == "-1/3"


def test_critical_level():
    with pytest.raises(CriticalLevelError):
        sugawara_check(SL2, -2, 1)
    with pytest.raises(CriticalLevelError):
        Sugawara(preset("sl3"), -3)
