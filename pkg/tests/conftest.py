import random

import pytest

from planegerm.arith import BiPoly


@pytest.fixture
def xy():
    return BiPoly.x(), BiPoly.y()


def random_bipoly(rng: random.Random, max_deg=5, n_terms=4, coeffs=(-3, -2, -1, 1, 2, 3)):
    terms = {}
    for _ in range(n_terms):
        i, j = rng.randint(0, max_deg), rng.randint(0, max_deg)
        if i + j >= 1:
            terms[(i, j)] = rng.choice(coeffs)
    return BiPoly(terms)
