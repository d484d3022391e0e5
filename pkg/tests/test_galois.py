"""Galois rings GR(p^n, a): arithmetic, Teichmuller lifts, sigma, Hensel."""

import random

import pytest

from wittcoh.galois import galois_ring, hensel_root, hensel_root_zpn


RINGS = [galois_ring(2, 2, 1), galois_ring(2, 3, 2), galois_ring(3, 2, 2),
         galois_ring(5, 2, 1), galois_ring(2, 4, 1)]


def _ids(R):
    return "GR(%d^%d,%d)" % (R.p, R.n, R.a)


@pytest.mark.parametrize("R", RINGS, ids=_ids)
def test_ring_axioms_random(R):
    rng = random.Random(11)
    for _ in range(40):
        x = R.random_element(rng)
        y = R.random_element(rng)
        z = R.random_element(rng)
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + (-x) == R.zero
        if x.is_unit():
            assert x * x.inverse() == R.one


@pytest.mark.parametrize("R", RINGS, ids=_ids)
def test_teichmuller(R):
    K = R.residue
    for x0 in K.elements():
        t = R.teichmuller(x0)
        assert R.residue_of(t) == x0
        assert t ** (K.q) == t
        for y0 in K.elements():
            assert R.teichmuller(K.mul(x0, y0)) == t * R.teichmuller(y0)


@pytest.mark.parametrize("R", RINGS, ids=_ids)
def test_sigma(R):
    rng = random.Random(3)
    for _ in range(25):
        x = R.random_element(rng)
        y = R.random_element(rng)
        assert R.sigma(x + y) == R.sigma(x) + R.sigma(y)
        assert R.sigma(x * y) == R.sigma(x) * R.sigma(y)
        assert R.sigma_iter(x, R.a) == x
        assert R.sigma_inv(R.sigma(x)) == x
        # sigma lifts the p-power Frobenius of the residue field
        assert R.residue_of(R.sigma(x)) == R.residue.frob(R.residue_of(x))


def test_valuation_and_exact_division():
    R = galois_ring(2, 4, 1)
    assert R.zero.valuation() == R.n
    assert R.from_int(12).valuation() == 2
    assert R.divide_exact_p(R.from_int(12), 2) == R.from_int(3)


def test_hensel_root_quadratic():
    # unit root of T^2 + T + 2 (= T^2 - a T + q for a = -1, q = 2);
    # the mod-16 root congruent to a is 5: 25 + 5 + 2 = 32
    u = hensel_root_zpn([2, 1, 1], 1, 2, 4)
    assert (u * u + u + 2) % 16 == 0
    assert u == 5


def test_hensel_root_in_extension():
    R = galois_ring(2, 3, 2)
    # lift a primitive cube root of unity from F_4: root of T^3 - 1
    g = R.residue.generator()
    root = hensel_root([-R.one, R.zero, R.zero, R.one], R.teichmuller(g))
    assert root ** 3 == R.one
    assert R.residue_of(root) == g
    assert root == R.teichmuller(g)


def test_reduce_to_shorter_ring():
    R = galois_ring(3, 3, 2)
    rng = random.Random(5)
    for _ in range(10):
        x = R.random_element(rng)
        y = R.random_element(rng)
        xr, yr = R.reduce_to(x, 2), R.reduce_to(y, 2)
        S = xr.ring
        assert S.n == 2
        assert R.reduce_to(x + y, 2) == xr + yr
        assert R.reduce_to(x * y, 2) == xr * yr
