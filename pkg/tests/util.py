"""Shared helpers for the test suite.

Two independent oracles live here: a symbolic check that the frozen Witt
law tables satisfy the ghost-component identities (done with sympy from
scratch, not via the solver that produced the tables), and a random
builder for short exact sequences of sigma-linear modules together with a
checker that the bijective-part functor keeps them exact.
"""

import sympy as sp

from wittcoh.witt import witt_tables
from wittcoh.semilinear import (
    induced_on_quotient, quotient_by_generators, random_endo, random_module,
    random_stable_submodule, restrict_endo, solve_in_module,
    stable_nil_decompose, submodule_from_generators)


# ---------------------------------------------------------------------------
# symbolic ghost-component oracle for the Witt law tables


def _law_expr(terms, syms):
    total = sp.Integer(0)
    for mono, coeff in terms:
        t = sp.Integer(coeff)
        for s, e in zip(syms, mono):
            if e:
                t *= s ** e
        total += t
    return total


def _ghost(coords, p, i):
    return sum(p ** k * coords[k] ** (p ** (i - k)) for k in range(i + 1))


def check_witt_ghost_identities(p, n):
    """Assert the law tables for W_n in characteristic-p carry ghost
    components to sums / products / shifted ghosts, as polynomial
    identities over the integers."""
    tbl = witt_tables(p, n)
    a = sp.symbols("a0:%d" % n)
    b = sp.symbols("b0:%d" % n)
    syms = list(a) + list(b)
    S = [_law_expr(t, syms) for t in tbl.sum_polys]
    P = [_law_expr(t, syms) for t in tbl.prod_polys]
    F = [_law_expr(t, syms) for t in tbl.frob_polys]
    for i in range(n):
        ga, gb = _ghost(a, p, i), _ghost(b, p, i)
        assert sp.expand(_ghost(S, p, i) - ga - gb) == 0, (p, n, "S", i)
        assert sp.expand(_ghost(P, p, i) - ga * gb) == 0, (p, n, "P", i)
    for i in range(n - 1):
        assert sp.expand(_ghost(F, p, i) - _ghost(a, p, i + 1)) == 0, \
            (p, n, "F", i)


# ---------------------------------------------------------------------------
# random short exact sequences of sigma-linear modules


def random_ses(R, rng):
    """A random module with endomorphism, a random F-stable submodule, and
    the induced quotient: returns (M, F, sub, F_sub, Q, proj, F_Q)."""
    M = random_module(R, rng)
    F = random_endo(M, rng)
    sub = random_stable_submodule(M, F, rng)
    F_sub = restrict_endo(F, sub)
    Q, proj, sect = quotient_by_generators(M, sub.inclusion_cols)
    F_Q = induced_on_quotient(F, Q, proj, sect)
    return M, F, sub, F_sub, Q, proj, F_Q


def stable_parts_exact(M, F, sub, F_sub, Q, proj, F_Q):
    """Check 0 -> sub_s -> M_s -> Q_s -> 0 stays exact: lengths add up,
    the submodule's bijective part lands inside M's, and M's projects
    onto exactly the quotient's."""
    s_sub = stable_nil_decompose(sub.module, F_sub)[0]
    s_M = stable_nil_decompose(M, F)[0]
    s_Q = stable_nil_decompose(Q, F_Q)[0]
    if s_sub.module.length + s_Q.module.length != s_M.module.length:
        return False
    incl = sub.inclusion_map()
    for c in s_sub.inclusion_cols:
        v = M.reduce_vec(incl.apply(c))
        if solve_in_module(M, s_M.inclusion_cols, v) is None:
            return False
    proj_cols = [Q.reduce_vec(proj.apply(c)) for c in s_M.inclusion_cols]
    for v in proj_cols:
        if solve_in_module(Q, s_Q.inclusion_cols, v) is None:
            return False
    image = submodule_from_generators(Q, proj_cols)
    return image.module.factors == s_Q.module.factors


# ---------------------------------------------------------------------------
# fixture polynomials (plane cubics over F_2, exponents over x, y, z)

# y^2 z + x y z + x^3 + z^3: ordinary, trace of Frobenius -1 over F_2
ORDINARY_CUBIC_F2 = {(0, 2, 1): 1, (1, 1, 1): 1, (3, 0, 0): 1, (0, 0, 3): 1}

# y^2 z + y z^2 + x^3: supersingular over F_2
SUPERSINGULAR_CUBIC_F2 = {(0, 2, 1): 1, (0, 1, 2): 1, (3, 0, 0): 1}
