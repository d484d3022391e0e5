"""Curve corpora for the congruence checks.

Smooth plane cubics are enumerated exhaustively over small prime fields
with a vectorized rational-singular-point prefilter followed by the exact
Macaulay rank test; elliptic test curves over F_2, F_3, F_4 are a fixed
Weierstrass list classified by their point counts.
"""

import numpy as np

from .fields import fq, embed_field
from . import polys
from .cohomology import is_smooth_plane_curve
from .pointcount import VarietySystem, count_points, elliptic_aq


CUBIC_MONOS = tuple(polys.monomials_of_degree(3, 3))


def _partial_matrices(field, monos):
    """For each variable, the linear map coeff(f) -> coeff(partial)."""
    p = field.p
    deg = sum(monos[0])
    sub = tuple(polys.monomials_of_degree(3, deg - 1))
    sub_idx = {m: i for i, m in enumerate(sub)}
    mats = []
    for v in range(3):
        D = np.zeros((len(sub), len(monos)), dtype=np.int64)
        for j, e in enumerate(monos):
            k = e[v]
            if k % p:
                ee = e[:v] + (k - 1,) + e[v + 1:]
                D[sub_idx[ee], j] = k % p
        mats.append(D)
    return sub, mats


def _proj_points(K):
    pts = []
    for lead in range(3):
        tails = [()]
        for _ in range(2 - lead):
            tails = [t + (x,) for t in tails for x in range(K.q)]
        pts.extend((0,) * lead + (1,) + t for t in tails)
    return pts


def _monomial_value_columns(field, monos, e):
    """Columns: per point of P^2(F_{q^e}), per monomial, the value's
    coordinate vector over F_p -- so batch evaluation of forms with
    coefficients in F_p is an integer matmul mod p."""
    K = fq(field.p, field.a * e) if e > 1 else field
    phi = embed_field(field, K) if e > 1 else (lambda x: x)
    pts = _proj_points(K)
    a = K.a
    out = np.zeros((len(monos), len(pts), a), dtype=np.int64)
    for pi, pt in enumerate(pts):
        for mi, m in enumerate(monos):
            val = 1
            for xi, k in zip(pt, m):
                if k:
                    val = K.mul(val, K.pow(xi, k))
            out[mi, pi, :] = K.coords(val)
    return out.reshape(len(monos), len(pts) * a), len(pts), a


def _batch_rational_singular(field, coeffs, e):
    """Boolean mask: curve has a singular F_{q^e}-point.  coeffs is an
    integer array (num_curves, #monomials) over a prime field."""
    p = field.p
    monos = CUBIC_MONOS
    sub, dmats = _partial_matrices(field, monos)
    vals3, npts3, a3 = _monomial_value_columns(field, monos, e)
    vals2, npts2, a2 = _monomial_value_columns(field, sub, e)
    f_vals = (coeffs @ vals3) % p
    blocks = [f_vals.reshape(-1, npts3, a3)]
    for D in dmats:
        pc = (coeffs @ D.T) % p
        blocks.append(((pc @ vals2) % p).reshape(-1, npts2, a2))
    allzero = ~np.any(blocks[0], axis=2)
    for b in blocks[1:]:
        allzero &= ~np.any(b, axis=2)
    return np.any(allzero, axis=1)


def smooth_cubics(field, dedupe_scalars=True):
    """All smooth plane cubics over a prime field, as coefficient arrays.

    Returns (coeff_matrix, monomials): one row per smooth cubic.  Scalar
    multiples define the same curve (and the same Hasse-Witt entry over a
    prime field), so only one representative per line is kept unless
    dedupe_scalars is False.
    """
    if field.a != 1:
        raise ValueError("exhaustive enumeration is for prime fields")
    p = field.p
    nm = len(CUBIC_MONOS)
    total = p ** nm
    codes = np.arange(1, total, dtype=np.int64)
    coeffs = np.zeros((len(codes), nm), dtype=np.int64)
    rem = codes.copy()
    for j in range(nm):
        coeffs[:, j] = rem % p
        rem //= p
    if dedupe_scalars and p > 2:
        # keep vectors whose first nonzero coefficient is 1
        lead = np.full(len(codes), -1, dtype=np.int64)
        for j in range(nm - 1, -1, -1):
            nz = coeffs[:, j] != 0
            lead[nz] = coeffs[nz, j]
        keep = lead == 1
        coeffs = coeffs[keep]
    # vectorized prefilter: rational singular points over F_q and F_{q^2}
    sing = _batch_rational_singular(field, coeffs, 1)
    sing |= _batch_rational_singular(field, coeffs, 2)
    survivors = coeffs[~sing]
    out = []
    for row in survivors:
        f = {m: int(c) for m, c in zip(CUBIC_MONOS, row) if c}
        if is_smooth_plane_curve(field, f):
            out.append(row)
    return (np.array(out, dtype=np.int64).reshape(-1, nm), CUBIC_MONOS)


def batch_cubic_counts(field, coeffs):
    """#V(f)(F_q) for each coefficient row, vectorized."""
    vals, npts, a = _monomial_value_columns(field, CUBIC_MONOS, 1)
    fv = (coeffs @ vals) % field.p
    fv = fv.reshape(-1, npts, a)
    return np.sum(~np.any(fv, axis=2), axis=1)


def batch_hasse_witt(field, coeffs):
    """Hasse-Witt entries (coefficient of (xyz)^{p-1} in f^{p-1}) for
    cubic coefficient rows over a prime field."""
    p = field.p
    out = np.zeros(len(coeffs), dtype=np.int64)
    target = (p - 1, p - 1, p - 1)
    for i, row in enumerate(coeffs):
        f = {m: int(c) for m, c in zip(CUBIC_MONOS, row) if c}
        w = polys.poly_pow(field, f, p - 1)
        out[i] = w.get(target, 0)
    return out


def random_smooth_quartics(field, count, rng):
    """Random smooth plane quartics (poly dicts)."""
    monos = polys.monomials_of_degree(3, 4)
    found = []
    attempts = 0
    while len(found) < count:
        attempts += 1
        if attempts > 200 * count:
            raise RuntimeError("could not find enough smooth quartics")
        f = {m: rng.randrange(field.q) for m in monos}
        f = {m: c for m, c in f.items() if c}
        if not f or polys.poly_degree(f) != 4:
            continue
        if is_smooth_plane_curve(field, f):
            found.append(f)
    return found


# ---------------------------------------------------------------------------
# elliptic corpus


def _weierstrass(field, a1, a2, a3, a4, a6):
    """y^2 z + a1 xyz + a3 y z^2 - x^3 - a2 x^2 z - a4 x z^2 - a6 z^3,
    with coefficients given as field codes."""
    F = field
    f = {}
    terms = [((0, 2, 1), 1), ((1, 1, 1), a1), ((0, 1, 2), a3),
             ((3, 0, 0), F.neg(1)), ((2, 0, 1), F.neg(a2)),
             ((1, 0, 2), F.neg(a4)), ((0, 0, 3), F.neg(a6))]
    for e, c in terms:
        if c:
            s = F.add(f.get(e, 0), c)
            if s:
                f[e] = s
            else:
                f.pop(e, None)
    return f


class EllipticCurveDatum:
    def __init__(self, field, f, name):
        self.field = field
        self.f = f
        self.name = name
        self.variety = VarietySystem(field, "projective", [f], 3, name)
        self.a_q = elliptic_aq(self.variety)

    @property
    def ordinary(self):
        return self.a_q % self.field.p != 0


def elliptic_corpus(ordinary_per_field=4, supersingular_per_field=1):
    """Smooth Weierstrass cubics over F_2, F_3, F_4.

    Scans coefficient tuples (a1, a2, a3, a4, a6) in lexicographic order,
    keeps distinct smooth curves until each field has the requested number
    of ordinary curves and supersingular controls.  Deterministic.
    """
    out = []
    for field in (fq(2, 1), fq(3, 1), fq(2, 2)):
        label = "f%d" % field.q
        seen = set()
        n_ord = n_ss = 0
        for code in range(field.q ** 5):
            cs = []
            c = code
            for _ in range(5):
                cs.append(c % field.q)
                c //= field.q
            f = _weierstrass(field, *cs)
            key = tuple(sorted(f.items()))
            if key in seen:
                continue
            seen.add(key)
            if not is_smooth_plane_curve(field, f):
                continue
            datum = EllipticCurveDatum(
                field, f, "%s-%s" % ("tmp", label))
            if datum.ordinary and n_ord < ordinary_per_field:
                n_ord += 1
                datum.name = datum.variety.name = \
                    "ord-%s-%d" % (label, n_ord)
                out.append(datum)
            elif not datum.ordinary and n_ss < supersingular_per_field:
                n_ss += 1
                datum.name = datum.variety.name = \
                    "ss-%s-%d" % (label, n_ss)
                out.append(datum)
            if n_ord >= ordinary_per_field and n_ss >= supersingular_per_field:
                break
        if n_ord < ordinary_per_field:
            raise AssertionError("found only %d ordinary curves over F_%d"
                                 % (n_ord, field.q))
    ordinary = [c for c in out if c.ordinary]
    if len(ordinary) < 10:
        raise AssertionError("corpus has only %d ordinary curves"
                             % len(ordinary))
    return out
