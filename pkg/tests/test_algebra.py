import random

import pytest

from cdgalab import (Algebra, AlgebraMap, Differential, apply_d, apply_map,
                     check_d_squared, make_field, wedge)
from cdgalab.algebra import GradedElement, format_element

from conftest import random_element, random_homogeneous


def test_basis_dimensions(model):
    alg = model.algebra
    assert [alg.dim(k) for k in range(9)] == [1, 8, 28, 56, 70, 56, 28, 8, 1]
    assert alg.total_dim() == 256


def test_wedge_examples(model):
    g = model.gens
    munu = g["mu"] * g["nu"]
    assert g["nu"] * g["mu"] == -munu
    assert (g["theta"] * g["theta"]).is_zero()
    i = model.field.imaginary_unit()
    lhs = wedge((g["mu"] * g["mubar"]).scale(i), (g["eta"] * g["etabar"]).scale(i))
    assert lhs == -(g["mu"] * g["mubar"] * g["eta"] * g["etabar"])


def test_apply_d_examples(model):
    d = model.differential
    g = model.gens
    assert apply_d(d, g["theta"]) == g["mu"] * g["nu"]
    assert apply_d(d, g["theta"] * g["mubar"]) == g["mu"] * g["nu"] * g["mubar"]
    assert apply_d(d, model.omega).is_zero()


def test_check_d_squared_valid_cases(model):
    assert check_d_squared(model.differential).ok
    zero_d = Differential(model.algebra, {})
    assert check_d_squared(zero_d).ok


def test_check_d_squared_flags_failures():
    # brute-force search over small random differentials for a d*d != 0 case
    field = make_field(12)
    alg = Algebra(field, [(n, 1) for n in "abcuv"])
    rng = random.Random(2)
    words2 = alg.basis(2)
    found = 0
    for _ in range(200):
        assignments = {}
        for g in range(5):
            if rng.random() < 0.5:
                w = rng.choice(words2)
                c = field.rational(rng.choice([-1, 1]))
                assignments[g] = GradedElement(alg, {w: c})
        d = Differential(alg, assignments, check=False)
        verdict = check_d_squared(d)
        if not verdict.ok:
            found += 1
            assert verdict.failing_generator is not None
            assert not verdict.residue.is_zero()
            with pytest.raises(ValueError, match="d\\*d != 0"):
                Differential(alg, assignments, check=True)
    assert found > 0, "the randomized search must hit failing differentials"


def test_explicit_failing_differential():
    field = make_field(12)
    alg = Algebra(field, [(n, 1) for n in "abcuv"])
    a, b, c, u, v = (alg.generator(n) for n in "abcuv")
    d = Differential(alg, {"a": b * c, "b": u * v}, check=False)
    verdict = check_d_squared(d)
    assert not verdict.ok
    assert verdict.failing_generator == "a"
    assert verdict.residue == c * u * v


def test_apply_map_examples(model):
    g = model.gens
    z = model.field.zeta(4)
    assert apply_map(model.rho, g["theta"]) == g["theta"].scale(z * z)
    assert apply_map(model.rho, g["mu"] * g["nu"]) == (g["mu"] * g["nu"]).scale(z * z)
    assert apply_map(model.rho, model.omega) == model.omega


def test_rho_has_order_three(model):
    assert model.rho.power(3).is_identity()
    assert not model.rho.power(1).is_identity()
    assert not model.rho.power(2).is_identity()


def test_graded_commutativity_randomized(model):
    rng = random.Random(3)
    alg = model.algebra
    for _ in range(300):
        p = rng.randint(0, 4)
        q = rng.randint(0, 4)
        x = random_homogeneous(alg, p, rng)
        y = random_homogeneous(alg, q, rng)
        sign = -1 if (p * q) % 2 else 1
        assert wedge(x, y) == wedge(y, x).scale(sign)


def test_associativity_randomized(model):
    rng = random.Random(4)
    alg = model.algebra
    for _ in range(200):
        x = random_element(alg, rng)
        y = random_element(alg, rng)
        z = random_element(alg, rng)
        assert wedge(wedge(x, y), z) == wedge(x, wedge(y, z))


def test_leibniz_randomized(model):
    rng = random.Random(5)
    alg = model.algebra
    d = model.differential
    for _ in range(300):
        p = rng.randint(0, 5)
        x = random_homogeneous(alg, p, rng)
        y = random_element(alg, rng)
        lhs = apply_d(d, wedge(x, y))
        sign = -1 if p % 2 else 1
        rhs = wedge(apply_d(d, x), y) + wedge(x, apply_d(d, y)).scale(sign)
        assert lhs == rhs


def test_d_squared_on_random_elements(model):
    rng = random.Random(6)
    for _ in range(300):
        x = random_element(model.algebra, rng)
        assert apply_d(model.differential, apply_d(model.differential, x)).is_zero()


def test_rho_is_a_chain_map_on_basis_words(model):
    alg = model.algebra
    d = model.differential
    for k in range(alg.top + 1):
        for w in alg.basis(k):
            e = alg.word_element(w)
            assert apply_map(model.rho, apply_d(d, e)) == apply_d(d, apply_map(model.rho, e))


def test_rho_cubed_on_basis_words(model):
    alg = model.algebra
    rho3 = model.rho.power(3)
    for k in range(alg.top + 1):
        for w in alg.basis(k):
            e = alg.word_element(w)
            assert apply_map(rho3, e) == e


def test_truncated_even_generator_algebra():
    field = make_field(12)
    # one degree-2 polynomial generator truncated above degree 6: dims 1,0,1,0,1,0,1
    alg = Algebra(field, [("t", 2)], top=6)
    assert [alg.dim(k) for k in range(7)] == [1, 0, 1, 0, 1, 0, 1]
    t = alg.generator("t")
    t2 = t * t
    assert not t2.is_zero()
    assert (t2 * t2).is_zero()  # degree 8 exceeds the truncation
    assert t * t2 == t2 * t


def test_even_generators_require_top():
    field = make_field(12)
    with pytest.raises(ValueError, match="top degree"):
        Algebra(field, [("t", 2)])


def test_differential_degree_validation(model):
    g = model.gens
    with pytest.raises(ValueError, match="degree"):
        Differential(model.algebra, {"theta": g["mu"] * g["nu"] * g["eta"]})


def test_conjugation_is_involutive(model):
    rng = random.Random(7)
    for _ in range(100):
        x = random_element(model.algebra, rng)
        assert model.conjugation(model.conjugation(x)) == x


def test_format_element_basics(model):
    g = model.gens
    assert format_element(model.algebra.zero()) == "0"
    assert format_element(g["mu"] * g["nu"]) == "mu*nu"
    assert format_element(-(g["mu"] * g["nu"])) == "-mu*nu"
    assert format_element(g["mu"].scale(2) - g["nu"]) == "{2}*mu - nu"
