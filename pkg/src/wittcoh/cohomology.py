"""Cech cohomology of projective space with Frobenius action.

H^N(P^N, O(-m)) has the Laurent-monomial basis {x^{-b} : b_i >= 1,
sum b_i = m}; Frobenius on ideal-sheaf twists is "p-th power, then
multiply by w = g^{p-1}", which is a single matrix in that basis
(Hasse-Witt / Cartier-Manin).  Coherent cohomology of hypersurfaces and
of affine complements reduces to these matrices by the twisting sequence.
"""

import numpy as np

from .fields import FqField, fq
from .galois import galois_ring
from .gflin import GFLinear
from . import polys
from .semilinear import (FiniteWnModule, SemilinearMap, stable_nil_decompose,
                         maps_equal, mat_inverse)


# ---------------------------------------------------------------------------
# bases and Frobenius matrices


def serre_basis(N, m):
    """Exponent vectors of the monomial basis of H^N(P^N, O(-m)):
    all b with b_i >= 1 and sum b_i = m, graded-lex descending."""
    if m <= N:
        return []
    return [tuple(e_i + 1 for e_i in e)
            for e in polys.monomials_of_degree(N + 1, m - N - 1)]


def _module_over(field, n, rank):
    R = galois_ring(field.p, n, field.a)
    return R, FiniteWnModule(R, (n,) * rank)


def twisted_frobenius_matrix(field, N, m, w):
    """sigma-linear Frobenius on H^N(P^N, O(-m)) twisted by w.

    deg w must be m(p-1); the map is e_b |-> sum_c coeff(w, p*b - c) e_c.
    Returns a SemilinearMap over GR(p, a) (n = 1).
    """
    p = field.p
    if w and polys.poly_degree(w) != m * (p - 1):
        raise ValueError("twist polynomial must have degree m(p-1)")
    basis = serre_basis(N, m)
    R, M = _module_over(field, 1, len(basis))
    idx = {b: i for i, b in enumerate(basis)}
    rows = [[R.zero] * len(basis) for _ in range(len(basis))]
    for j, b in enumerate(basis):
        pb = tuple(p * bi for bi in b)
        for c, i in idx.items():
            e = tuple(x - y for x, y in zip(pb, c))
            if any(x < 0 for x in e):
                continue
            coeff = w.get(e, 0)
            if coeff:
                rows[i][j] = R.element_from_residue(coeff)
    return SemilinearMap(M, M, rows, 1, check=False)


# ---------------------------------------------------------------------------
# smoothness of plane curves


def singular_point_search(field, f, max_ext=4):
    """Brute search for a singular point over F_{q^e}, e <= max_ext.

    Returns (e, point) or None.  Exact but slow; used as an oracle and
    for small fields.
    """
    from .fields import embed_field
    partials = [polys.poly_partial(field, f, v) for v in range(3)]
    for e in range(1, max_ext + 1):
        K = fq(field.p, field.a * e) if e > 1 else field
        phi = embed_field(field, K) if e > 1 else (lambda x: x)
        polys_k = [polys.poly_map_coeffs(g, phi) for g in [f] + partials]
        for lead in range(3):
            tails = _affine_points(K, 2 - lead)
            for tail in tails:
                pt = (0,) * lead + (1,) + tail
                if all(polys.poly_eval(K, g, pt) == 0 for g in polys_k):
                    return e, pt
    return None


def _affine_points(K, nvars):
    if nvars == 0:
        return [()]
    pts = [()]
    for _ in range(nvars):
        pts = [t + (x,) for t in pts for x in range(K.q)]
    return pts


def is_smooth_plane_curve(field, f):
    """Jacobian criterion via a Macaulay-type rank test.

    The curve V(f) in P^2 is smooth iff (f, f_x, f_y, f_z) has no
    projective zero, iff the ideal contains every monomial of degree
    M = d + 2(d-1) - 2 (the Lazard saturation bound for empty
    intersections in P^2, from the three largest generator degrees).
    The containment is a rank condition over F_q.
    """
    if not f:
        return False
    if not polys.poly_is_homogeneous(f):
        raise ValueError("input must be homogeneous")
    d = polys.poly_degree(f)
    if d == 1:
        return True  # a line; some partial is a nonzero constant
    gens = [(f, d)]
    for v in range(3):
        df = polys.poly_partial(field, f, v)
        if df:
            gens.append((df, d - 1))
    M = 3 * d - 4
    target = polys.monomials_of_degree(3, M)
    tindex = {e: i for i, e in enumerate(target)}
    cols = []
    for g, dg in gens:
        for mono in polys.monomials_of_degree(3, M - dg):
            col = np.zeros(len(target), dtype=np.int16)
            for e, c in g.items():
                ee = tuple(a + b for a, b in zip(e, mono))
                col[tindex[ee]] = c
            cols.append(col)
    A = np.stack(cols, axis=1)
    lin = _lin_for(field)
    return lin.rank(A) == len(target)


_LIN_CACHE = {}


def _lin_for(field):
    key = (field.p, field.a)
    if key not in _LIN_CACHE:
        _LIN_CACHE[key] = GFLinear(field)
    return _LIN_CACHE[key]


# ---------------------------------------------------------------------------
# cohomology containers


class ProjectiveHypersurface:
    def __init__(self, field, N, f, name=""):
        f = polys.poly_clean(field, f)
        if not f:
            raise ValueError("zero polynomial")
        if not polys.poly_is_homogeneous(f):
            raise ValueError("defining polynomial must be homogeneous")
        self.field = field
        self.N = N
        self.f = f
        self.degree = polys.poly_degree(f)
        self.name = name
        self._smooth = None

    def is_smooth_curve(self):
        if self.N != 2:
            raise ValueError("smoothness test implemented for plane curves")
        if self._smooth is None:
            self._smooth = is_smooth_plane_curve(self.field, self.f)
        return self._smooth


class ComplementDatum:
    """X = P^N minus V(g); boundary ideal I = (g)."""

    def __init__(self, field, N, g, name=""):
        g = polys.poly_clean(field, g)
        if not g:
            raise ValueError("zero boundary polynomial")
        if not polys.poly_is_homogeneous(g):
            raise ValueError("boundary must be homogeneous")
        self.field = field
        self.N = N
        self.g = g
        self.degree = polys.poly_degree(g)
        self.name = name


class CohomologyWithFrobenius:
    """Per-degree modules with sigma-linear F, plus provenance."""

    def __init__(self, ring, groups, provenance=""):
        self.ring = ring
        self.groups = dict(groups)  # degree -> (FiniteWnModule, SemilinearMap)
        self.provenance = provenance

    def degrees(self):
        return sorted(self.groups)

    def module(self, i):
        return self.groups[i][0]

    def frobenius(self, i):
        return self.groups[i][1]

    def stable(self):
        """Stable parts per degree: degree -> (module, F_s, V_s)."""
        out = {}
        for i, (M, F) in self.groups.items():
            sub_s, F_s, V_s, _, _ = stable_nil_decompose(M, F)
            out[i] = (sub_s.module, F_s, V_s)
        return out

    def stable_factors(self, i):
        M, F = self.groups[i]
        return stable_nil_decompose(M, F)[0].module.factors

    def serialize(self):
        lines = ["cohomology: %s" % self.provenance]
        for i in self.degrees():
            M, F = self.groups[i]
            lines.append("degree %d factors: %s" % (i, list(M.factors)))
            for row in F.matrix:
                lines.append("  F-row: " + ", ".join(x.to_str() for x in row))
            lines.append("degree %d stable factors: %s"
                         % (i, list(self.stable_factors(i))))
        return "\n".join(lines) + "\n"


def hypersurface_coherent(X: ProjectiveHypersurface):
    """H^*(X, O_X) with Frobenius, at Witt level 1.

    Degree 0 is rank one with F = sigma; degree N-1 is the twisted
    Frobenius with w = f^{p-1}; everything between vanishes.
    """
    field = X.field
    p = field.p
    R, M0 = _module_over(field, 1, 1)
    F0 = SemilinearMap(M0, M0, ((R.one,),), 1, check=False)
    groups = {0: (M0, F0)}
    if X.degree >= 1 and X.N >= 2:
        w = polys.poly_pow(field, X.f, p - 1) if p > 1 else X.f
        Ftop = twisted_frobenius_matrix(field, X.N, X.degree, w)
        if X.N == 2:
            g = (X.degree - 1) * (X.degree - 2) // 2
            if Ftop.source.rank != g:
                raise AssertionError("genus count mismatch")
        groups[X.N - 1] = (Ftop.source, Ftop)
        for i in range(1, X.N - 1):
            _, Z = _module_over(field, 1, 0)
            groups[i] = (Z, SemilinearMap(Z, Z, (), 1, check=False))
    return CohomologyWithFrobenius(
        R, groups, "hypersurface d=%d N=%d over F_%d" % (
            X.degree, X.N, field.q))


def complement_cohomology(datum: ComplementDatum, power=1):
    """H^*(P^N, ideal sheaf (g^power)) with Frobenius, Witt level 1."""
    field = datum.field
    p = field.p
    m = datum.degree * power
    gp = polys.poly_pow(field, datum.g, power) if power > 1 else datum.g
    w = polys.poly_pow(field, gp, p - 1)
    Ftop = twisted_frobenius_matrix(field, datum.N, m, w)
    R = Ftop.ring
    groups = {}
    for i in range(datum.N):
        _, Z = _module_over(field, 1, 0)
        groups[i] = (Z, SemilinearMap(Z, Z, (), 1, check=False))
    groups[datum.N] = (Ftop.source, Ftop)
    return CohomologyWithFrobenius(
        R, groups, "complement of V(g), deg g = %d, power %d, N=%d, F_%d"
        % (datum.degree, power, datum.N, field.q))


def compact_support_stable(datum: ComplementDatum, power=1):
    """Stable compactly supported cohomology of the complement."""
    return complement_cohomology(datum, power).stable()


def ideal_power_intertwiner(datum: ComplementDatum, e):
    """The map H^N(P^N, (g^e)~) -> H^N(P^N, (g)~) induced by the
    inclusion I^e in I: multiplication by g^{e-1} in the Cech model."""
    field = datum.field
    m = datum.degree
    basis_src = serre_basis(datum.N, m * e)
    basis_dst = serre_basis(datum.N, m)
    ge = polys.poly_pow(field, datum.g, e - 1) if e > 1 else \
        {(0,) * (datum.N + 1): 1}
    R, Msrc = _module_over(field, 1, len(basis_src))
    _, Mdst = _module_over(field, 1, len(basis_dst))
    idx = {b: i for i, b in enumerate(basis_dst)}
    rows = [[R.zero] * len(basis_src) for _ in range(len(basis_dst))]
    for j, b in enumerate(basis_src):
        for c, i in idx.items():
            ee = tuple(x - y for x, y in zip(b, c))
            if any(x < 0 for x in ee):
                continue
            coeff = ge.get(ee, 0)
            if coeff:
                rows[i][j] = R.element_from_residue(coeff)
    return SemilinearMap(Msrc, Mdst, rows, 0, check=False)


def verify_ideal_power_independence(datum: ComplementDatum, e):
    """Check the stable parts for boundary g and g^e are isomorphic with
    intertwining Frobenius.  Returns (ok, detail-string)."""
    c1 = complement_cohomology(datum, 1)
    ce = complement_cohomology(datum, e)
    N = datum.N
    M1, F1 = c1.groups[N]
    Me, Fe = ce.groups[N]
    T = ideal_power_intertwiner(datum, e)
    # F_1 o T = T o F_e as maps H^N(g^e) -> H^N(g)
    lhs = F1.compose(T)
    rhs = T.compose(Fe)
    if not maps_equal(lhs, rhs):
        return False, "intertwiner does not commute with Frobenius"
    s1 = stable_nil_decompose(M1, F1)[0]
    se = stable_nil_decompose(Me, Fe)[0]
    if s1.module.factors != se.module.factors:
        return False, "stable invariant factors differ: %s vs %s" % (
            list(s1.module.factors), list(se.module.factors))
    if s1.module.rank == 0:
        return True, "both stable parts zero"
    # T restricted to stable parts must be bijective: express T(gens of
    # stable_e) in the stable_1 generators and check unit determinant
    from .semilinear import solve_in_module, mat_from_cols
    cols = []
    for g in se.inclusion_cols:
        img = T.apply(g)
        lam = solve_in_module(M1, s1.inclusion_cols, img)
        if lam is None:
            return False, "intertwiner does not map stable into stable"
        cols.append(lam)
    mat = mat_from_cols(M1.ring, cols, s1.module.rank)
    try:
        mat_inverse(M1.ring, mat)
    except ValueError:
        return False, "intertwiner not bijective on stable parts"
    return True, "stable factors %s, intertwiner bijective" % (
        list(s1.module.factors),)


# ---------------------------------------------------------------------------
# glued planes


def glued_planes_stable(p, a, n=1):
    """H^*_c(X, O)_s for X = two affine planes glued at a point.

    Compactify as Y = two copies of P^2 identified at a rational point P
    away from the two lines at infinity, I = ideal of the lines.  The
    skyscraper sequence 0 -> I_Y -> I_1 (+) I_2 -> k_P -> 0 and
    H^*(P^2, O(-1)) = 0 give H^1(Y, I_Y) = k_P with F = sigma and all
    other degrees zero; the connecting map is computed, not assumed.
    """
    if n != 1:
        raise ValueError("glued-planes computation is level 1 only")
    field = fq(p, a)
    R, _ = _module_over(field, n, 0)
    # H^i(P^2, O(-1)) for the two planes, all degrees
    piece = {i: len(serre_basis(2, 1)) if i == 2 else 0 for i in range(3)}
    assert all(v == 0 for v in piece.values())
    groups = {}
    # degree 0: ker(H^0(I_1)+H^0(I_2) -> k) with H^0(O(-1)) = 0
    Z = FiniteWnModule(R, ())
    zmap = SemilinearMap(Z, Z, (), 1, check=False)
    groups[0] = (Z, zmap)
    # degree 1: coker(0 -> k_P) (+) ker into H^1(I_i) = 0: the skyscraper
    # k_P survives whole; F on residue field k is sigma
    Mk = FiniteWnModule(R, (n,))
    Fk = SemilinearMap(Mk, Mk, ((R.one,),), 1, check=False)
    groups[1] = (Mk, Fk)
    # degree 2: H^2(I_1) (+) H^2(I_2) = 0
    groups[2] = (Z, zmap)
    coh = CohomologyWithFrobenius(
        R, groups, "glued planes over F_%d" % field.q)
    return coh.stable()
