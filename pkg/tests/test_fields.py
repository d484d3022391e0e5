"""Finite field arithmetic: axioms, Frobenius, embeddings."""

import random

import pytest

from wittcoh.fields import embed_field, fq, is_irreducible, lowest_irreducible


FIELDS = [fq(2, 1), fq(2, 2), fq(2, 3), fq(3, 1), fq(3, 2), fq(5, 1)]


@pytest.mark.parametrize("K", FIELDS, ids=lambda K: "F%d" % K.q)
def test_field_axioms_random(K):
    rng = random.Random(7)
    els = list(K.elements())
    for _ in range(40):
        x, y, z = (rng.choice(els) for _ in range(3))
        assert K.add(x, y) == K.add(y, x)
        assert K.mul(x, y) == K.mul(y, x)
        assert K.add(K.add(x, y), z) == K.add(x, K.add(y, z))
        assert K.mul(K.mul(x, y), z) == K.mul(x, K.mul(y, z))
        assert K.mul(x, K.add(y, z)) == K.add(K.mul(x, y), K.mul(x, z))
        assert K.add(x, K.neg(x)) == 0
        if x:
            assert K.mul(x, K.inv(x)) == 1


@pytest.mark.parametrize("K", FIELDS, ids=lambda K: "F%d" % K.q)
def test_frobenius(K):
    for x in K.elements():
        assert K.frob(x) == K.pow(x, K.p)
        assert K.frob_iter(x, K.a) == x
        assert K.frob_inv(K.frob(x)) == x
        for y in K.elements():
            assert K.frob(K.add(x, y)) == K.add(K.frob(x), K.frob(y))
            assert K.frob(K.mul(x, y)) == K.mul(K.frob(x), K.frob(y))


def test_lowest_irreducible():
    for p, a in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        m = lowest_irreducible(p, a)
        assert len(m) == a + 1 and m[a] == 1
        assert is_irreducible(m, p)


def test_embedding_is_homomorphism():
    small, big = fq(2, 2), fq(2, 4)
    phi = embed_field(small, big)
    for x in small.elements():
        for y in small.elements():
            assert phi(small.add(x, y)) == big.add(phi(x), phi(y))
            assert phi(small.mul(x, y)) == big.mul(phi(x), phi(y))
    assert phi(1) == 1
    images = {phi(x) for x in small.elements()}
    assert len(images) == small.q


def test_algebra_generator_spans():
    # powers 1, t, ..., t^{a-1} of the structural generator are a basis
    for K in FIELDS:
        if K.a == 1:
            continue
        t = K.generator()
        powers = [K.pow(t, i) for i in range(K.a)]
        spanned = {0}
        for b in powers:
            spanned |= {K.add(x, K.mul(b, K.scalar(c)))
                        for x in spanned for c in range(K.p)}
        assert len(spanned) == K.q


def test_element_str():
    K = fq(2, 2)
    assert K.element_str(0) == "0"
    assert K.element_str(1) == "1"
    assert K.element_str(K.generator()) == "t"
    K3 = fq(3, 1)
    assert K3.element_str(2) == "2"
