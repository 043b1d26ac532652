import random
from dataclasses import dataclass
from pathlib import Path

import pytest

from cdgalab import (Algebra, AlgebraMap, Conjugation, DGA, Differential,
                     GroupAction, make_field)
from cdgalab.algebra import GradedElement
from cdgalab.action import invariant_complex
from cdgalab.homology import CochainComplex, cohomology

ROOT = Path(__file__).resolve().parent.parent

GEN_NAMES = ["mu", "nu", "theta", "eta", "mubar", "nubar", "thetabar", "etabar"]


@dataclass
class HeisenbergModel:
    """The Heisenberg-times-line nilmanifold model with its Z3 action."""
    field: object
    algebra: Algebra
    gens: dict
    differential: Differential
    dga: DGA
    conjugation: Conjugation
    rho: AlgebraMap
    action: GroupAction
    omega: GradedElement
    alpha: GradedElement
    betas: tuple
    volume: GradedElement
    complex: CochainComplex
    table: object
    invariant: CochainComplex
    invariant_table: object


def build_heisenberg_model() -> HeisenbergModel:
    field = make_field(12)
    algebra = Algebra(field, [(n, 1) for n in GEN_NAMES])
    gens = {n: algebra.generator(n) for n in GEN_NAMES}
    differential = Differential(algebra, {
        "theta": gens["mu"] * gens["nu"],
        "thetabar": gens["mubar"] * gens["nubar"],
    })
    dga = DGA(algebra, differential)
    conjugation = Conjugation(algebra, [("mu", "mubar"), ("nu", "nubar"),
                                        ("theta", "thetabar"), ("eta", "etabar")])
    z = field.zeta(4)
    z2 = z * z
    weights = {"mu": z, "nu": z, "theta": z2, "eta": z,
               "mubar": z2, "nubar": z2, "thetabar": z, "etabar": z2}
    rho = AlgebraMap(algebra, algebra,
                     {n: gens[n].scale(w) for n, w in weights.items()})
    action = GroupAction(rho, 3)
    i = field.imaginary_unit()
    omega = (gens["mu"] * gens["mubar"]).scale(i) + gens["nu"] * gens["theta"] \
        + gens["nubar"] * gens["thetabar"] + (gens["eta"] * gens["etabar"]).scale(i)
    alpha = gens["mu"] * gens["mubar"]
    betas = (gens["nu"] * gens["nubar"],
             gens["nu"] * gens["etabar"],
             gens["nubar"] * gens["eta"])
    volume = gens["theta"] * gens["mu"] * gens["nu"] * gens["eta"] \
        * gens["thetabar"] * gens["mubar"] * gens["nubar"] * gens["etabar"]
    cx = CochainComplex(dga)
    table = cohomology(cx)
    inv = invariant_complex(dga, action)
    inv_table = cohomology(inv)
    return HeisenbergModel(field, algebra, gens, differential, dga, conjugation,
                      rho, action, omega, alpha, betas, volume, cx, table,
                      inv, inv_table)


@pytest.fixture(scope="session")
def model() -> HeisenbergModel:
    return build_heisenberg_model()


@pytest.fixture(scope="session")
def torus2():
    """Two-generator exterior algebra with zero differential."""
    field = make_field(12)
    algebra = Algebra(field, [("x", 1), ("y", 1)])
    d = Differential(algebra, {})
    return DGA(algebra, d)


def random_field_element(field, rng: random.Random, span: int = 4):
    return field.from_coords([rng.randint(-span, span) for _ in range(field.phi)])


def random_homogeneous(algebra, degree: int, rng: random.Random, nterms: int = 3,
                       span: int = 3):
    words = algebra.basis(degree)
    terms = {}
    for w in rng.sample(words, k=min(nterms, len(words))):
        c = random_field_element(algebra.field, rng, span)
        if not c.is_zero():
            terms[w] = c
    return GradedElement(algebra, terms)


def random_element(algebra, rng: random.Random, nterms: int = 4, span: int = 3):
    terms = {}
    for _ in range(nterms):
        k = rng.randint(0, algebra.top)
        words = algebra.basis(k)
        w = rng.choice(words)
        c = random_field_element(algebra.field, rng, span)
        if not c.is_zero():
            terms[w] = c
    return GradedElement(algebra, terms)
