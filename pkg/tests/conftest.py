from fractions import Fraction

import pytest

from lefdefect.exactmath import RealNumberField
from lefdefect.torus import elliptic, product


@pytest.fixture(scope="session")
def sqrt2_field():
    return RealNumberField([-2, 0, 1], (Fraction(1), Fraction(2)))


@pytest.fixture(scope="session")
def quartic_field():
    # alpha^4 = 2, alpha the positive real fourth root
    return RealNumberField([-2, 0, 0, 0, 1], (Fraction(1), Fraction(3, 2)))


@pytest.fixture(scope="session")
def corpus(quartic_field):
    """The explicit product tori the acceptance suite runs on.

    Rational complex structures where possible (fast kernel path), the
    quartic field where a non-CM curve or a second CM field is needed.
    """
    G = quartic_field
    alpha = G.alpha()
    ei = elliptic(0, 1, label="E_i")
    e2i = elliptic(0, 2, label="E_2i")
    ei_g = elliptic(0, 1, field=G, label="E_i")
    e_alpha = elliptic(0, alpha, label="E_ia")
    e_alpha2 = elliptic(0, alpha * alpha, label="E_ia2")
    return {
        "ei2": product([ei, elliptic(0, 1, label="E_i'")]),
        "ei3": product([ei, elliptic(0, 1, label="E_i'"), elliptic(0, 1, label="E_i''")]),
        "ei_x_e2i": product([ei, e2i]),
        "eia2": product([e_alpha, elliptic(0, alpha, label="E_ia'")]),
        "triple": product([ei_g, e_alpha, e_alpha2]),
        "ei2_x_nocm": product(
            [ei_g, elliptic(0, 1, field=G, label="E_i'"), e_alpha]
        ),
    }


@pytest.fixture(scope="session")
def corpus_expected():
    """Classifier values for the corpus (CM formula and its mixtures)."""
    return {
        "ei2": 3,          # E_cm^2: 2k-1, k=2
        "ei3": 5,          # E_cm^3: 2k-1, k=3
        "ei_x_e2i": 3,     # isogenous CM pair: multiplicity 2
        "eia2": 2,         # E_rm^2: k = 2
        "triple": 1,       # three pairwise non-isogenous curves
        "ei2_x_nocm": 3,   # E_cm^2 x E_rm: max(3, 1)
    }
