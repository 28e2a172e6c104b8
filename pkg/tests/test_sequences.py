"""Point generators: van der Corput, Halton, digital nets, hybrids."""

import random
from fractions import Fraction

import pytest

from etkbound.badic import DigitVector, radical_inverse
from etkbound.sequences import (
    DigitalConfig,
    GeneratorMatrix,
    HaltonConfig,
    PointSet,
    VdcConfig,
    config_from_string,
    digital_point,
    generate_points,
    halton,
    hybrid_points,
    van_der_corput,
)
from etkbound.systems import BADIC, WALSH, HybridSystemSpec


def test_van_der_corput_values():
    for n in range(32):
        assert van_der_corput(2, n).value == radical_inverse(n, 2)
        assert van_der_corput(3, n).value == radical_inverse(n, 3)


def test_halton_coordinates_are_independent_radical_inverses():
    for n in range(20):
        pt = halton((2, 3, 5), n)
        assert [c.value for c in pt] == [radical_inverse(n, b) for b in (2, 3, 5)]


def test_generator_matrix_identity_reproduces_vdc():
    m = 6
    mats = (GeneratorMatrix.identity(2, m),)
    for n in range(2**m):
        (y,) = digital_point(mats, 2, n, m)
        assert y == van_der_corput(2, n).with_precision(m)


def test_generator_matrix_entries_reduced_mod_base():
    gm = GeneratorMatrix(3, ((4, 1), (2, 5)))
    assert gm.rows == ((1, 1), (2, 2))


def test_digital_point_frozen_case():
    # C = [[1,1],[0,1]] over F_2, n=2 -> digits (0,1) -> y digits (1,1) -> 3/4
    gm = GeneratorMatrix(2, ((1, 1), (0, 1)))
    (y,) = digital_point((gm,), 2, 2, 2)
    assert y.value == Fraction(3, 4)


def test_digital_point_rejects_large_n():
    gm = GeneratorMatrix.identity(2, 3)
    with pytest.raises(ValueError):
        digital_point((gm,), 2, 8, 3)


def test_digital_net_is_linear_over_base():
    """y(n1) digitwise-plus y(n2) equals y(n1 xor-carry-free n2)."""
    from etkbound.badic import add_without_carry, int_digits

    rng = random.Random(5)
    base, m = 3, 5
    mats = tuple(GeneratorMatrix.random(base, m, rng) for _ in range(2))
    cfg = DigitalConfig(base, mats)
    for n1 in (1, 4, 17):
        for n2 in (2, 9, 33):
            d1 = int_digits(n1, base, length=m)
            d2 = int_digits(n2, base, length=m)
            n3 = sum((a + b) % base * base**j for j, (a, b) in enumerate(zip(d1, d2)))
            p1, p2, p3 = (cfg.point(n) for n in (n1, n2, n3))
            for c1, c2, c3 in zip(p1, p2, p3):
                assert add_without_carry(c1, c2) == c3


def test_point_set_from_values_round_trip():
    ps = PointSet.from_values((2, 3), [(Fraction(1, 2), Fraction(2, 9))])
    assert ps.values()[0] == (Fraction(1, 2), Fraction(2, 9))
    assert ps.s == 2 and ps.n_points == 1


def test_point_set_validates_bases():
    with pytest.raises(ValueError):
        PointSet((2,), ((DigitVector(3, (1,)),),))


def test_generate_points_provenance():
    ps = generate_points(VdcConfig(2), 4)
    assert ps.provenance == "vdc:2"
    assert ps.n_points == 4
    ps = generate_points(HaltonConfig((2, 3)), 4)
    assert ps.bases == (2, 3)


def test_hybrid_points_frozen_case():
    spec = HybridSystemSpec(((2, WALSH), (3, BADIC)))
    ps = hybrid_points(spec, VdcConfig(2), HaltonConfig((3,)), 6)
    # n=5: vdc base 2 -> 5/8, halton base 3 -> 7/9... check both directly
    assert ps.values()[5] == (radical_inverse(5, 2), radical_inverse(5, 3))


def test_hybrid_points_tag_interleaving():
    spec = HybridSystemSpec(((3, BADIC), (2, WALSH), (5, BADIC)))
    ps = hybrid_points(spec, VdcConfig(2), HaltonConfig((3, 5)), 4)
    assert ps.bases == (3, 2, 5)
    for n in range(4):
        b3, w2, b5 = ps.values()[n]
        assert w2 == radical_inverse(n, 2)
        assert b3 == radical_inverse(n, 3)
        assert b5 == radical_inverse(n, 5)


def test_hybrid_points_dimension_mismatch():
    spec = HybridSystemSpec(((2, WALSH), (3, BADIC)))
    with pytest.raises(ValueError):
        hybrid_points(spec, VdcConfig(2), HaltonConfig((3, 5)), 4)
    with pytest.raises(ValueError):
        hybrid_points(spec, None, HaltonConfig((3,)), 4)


def test_hybrid_all_one_tag_allows_empty_part():
    spec = HybridSystemSpec(((2, WALSH), (2, WALSH)))
    rng = random.Random(0)
    mats = tuple(GeneratorMatrix.random(2, 8, rng) for _ in range(2))
    ps = hybrid_points(spec, DigitalConfig(2, mats), None, 5)
    assert ps.n_points == 5


def test_config_from_string_forms():
    assert isinstance(config_from_string("vdc:2"), VdcConfig)
    h = config_from_string("halton:2,3,5")
    assert h.bases == (2, 3, 5)
    d = config_from_string("digital:3,s=2,m=6,seed=9")
    assert isinstance(d, DigitalConfig) and len(d.matrices) == 2
    ident = config_from_string("digital:2,s=1,m=4")
    assert ident.matrices[0] == GeneratorMatrix.identity(2, 4)


def test_config_from_string_rejects_garbage():
    for text in ("sobol:2", "vdc:", "vdc:1", "digital:2,s=0", "halton:2;3"):
        with pytest.raises(ValueError):
            config_from_string(text)
