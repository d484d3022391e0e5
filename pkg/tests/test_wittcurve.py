"""Witt-level Cech cohomology of smooth plane curves: the function-field
engine, the digit-peeling expression of cocycles, and the resulting
Frobenius modules."""

import random

import pytest

from util import ORDINARY_CUBIC_F2, SUPERSINGULAR_CUBIC_F2
from wittcoh.cohomology import ProjectiveHypersurface, hypersurface_coherent
from wittcoh.corpus import elliptic_corpus, random_smooth_quartics
from wittcoh.fields import fq
from wittcoh.pointcount import unit_root
from wittcoh.polys import poly_eval
from wittcoh.semilinear import (mat_trace, semilinear_power,
                                stable_nil_decompose)
from wittcoh.wittcurve import (CurveRing, FracFn, frac_basis, frac_const,
                               genus_basis, monic_in_z, witt_cech_curve)


def test_monic_in_z_normalization():
    for datum in elliptic_corpus()[:6]:
        K = datum.field
        g = monic_in_z(K, datum.f)
        d = 3
        # coefficient of z^d is 1 after the coordinate change
        assert g.get((0, 0, d), 0) == 1
        # i.e. (0:0:1) is off the new model
        assert poly_eval(K, g, (0, 0, 1)) == 1


def test_genus_basis_size():
    assert genus_basis(3) == [(1, 1)]
    assert len(genus_basis(4)) == 3
    assert len(genus_basis(5)) == 6


def test_function_ring_arithmetic():
    K = fq(2, 1)
    rng = random.Random(8)
    (quartic,) = random_smooth_quartics(K, 1, rng)
    R = CurveRing(K, monic_in_z(K, quartic))

    def rand_fn():
        t = frac_const(R, 0)
        for (a, b) in [(1, 1), (1, 2), (2, 1)]:
            if rng.randrange(2):
                t = t.add(frac_basis(R, a, b))
        if rng.randrange(2):
            t = t.add(frac_const(R, 1))
        return t

    for _ in range(12):
        u, v, w = rand_fn(), rand_fn(), rand_fn()
        assert u.add(v).eq(v.add(u))
        assert u.mul(v).eq(v.mul(u))
        assert u.mul(v.add(w)).eq(u.mul(v).add(u.mul(w)))
        assert u.sub(u).is_zero()
        # Frobenius is multiplicative and additive in characteristic 2
        assert u.ppow().add(v.ppow()).eq(u.add(v).ppow())
        assert u.ppow().mul(v.ppow()).eq(u.mul(v).ppow())


def test_level_one_agrees_with_coherent_model():
    # the Cech computation at length 1 must reproduce the standard
    # coherent cohomology: same invariant factors, stable parts, traces
    data = list(elliptic_corpus())
    rng = random.Random(10)
    quartics = [ProjectiveHypersurface(fq(2, 1), 2, f, "quartic")
                for f in random_smooth_quartics(fq(2, 1), 2, rng)]
    subjects = [(d.field, d.f) for d in data] + \
        [(X.field, X.f) for X in quartics]
    for K, f in subjects:
        cech = witt_cech_curve(K, f, 1)
        coh = hypersurface_coherent(ProjectiveHypersurface(K, 2, f))
        for i in (0, 1):
            assert cech.module(i).factors == coh.module(i).factors
            assert cech.stable_factors(i) == coh.stable_factors(i)
            Fa = semilinear_power(cech.frobenius(i), K.a)
            Fb = semilinear_power(coh.frobenius(i), K.a)
            if cech.module(i).rank:
                assert mat_trace(Fa.matrix) == mat_trace(Fb.matrix)


def test_module_lengths():
    # H^1(W_n O) has length n * genus
    K = fq(2, 1)
    for n in (1, 2, 3):
        coh = witt_cech_curve(K, ORDINARY_CUBIC_F2, n)
        assert coh.module(1).length == n * 1
        assert coh.module(0).factors == (n,)
    rng = random.Random(4)
    (f,) = random_smooth_quartics(K, 1, rng)
    assert witt_cech_curve(K, f, 2).module(1).length == 2 * 3


def test_ordinary_unit_roots():
    # the H^1 Frobenius of an ordinary curve is multiplication by the
    # p-adic unit root of T^2 - a_q T + q, to every Witt length
    for datum in elliptic_corpus():
        if not datum.ordinary:
            continue
        K = datum.field
        for n in (1, 2, 3):
            coh = witt_cech_curve(K, datum.f, n)
            M, F_s, _ = coh.stable()[1]
            assert M.factors == (n,)
            R = coh.ring
            entry = semilinear_power(F_s, K.a).matrix[0][0]
            assert R.sigma(entry) == entry
            assert entry == R.from_int(unit_root(datum.a_q, K.q, n))


def test_supersingular_nilpotence():
    K = fq(2, 1)
    for n in (1, 2, 3, 4):
        coh = witt_cech_curve(K, SUPERSINGULAR_CUBIC_F2, n)
        M, F = coh.groups[1]
        assert stable_nil_decompose(M, F)[0].module.factors == ()
        # F^2 is divisible by p (slope 1/2), so F is nilpotent here
        sq = semilinear_power(F, 2).matrix
        assert all(x.valuation() >= 1 for row in sq for x in row)
        assert semilinear_power(F, 2 * n).is_zero_map()


def test_work_guard():
    K = fq(2, 1)
    with pytest.raises(RuntimeError):
        witt_cech_curve(K, ORDINARY_CUBIC_F2, 3, B=1)


def test_rejects_singular_curve():
    K = fq(2, 1)
    with pytest.raises(ValueError):
        witt_cech_curve(K, {(0, 2, 1): 1, (3, 0, 0): 1}, 2)
