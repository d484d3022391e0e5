"""Sparse multivariate polynomials over an FqField.

Representation: dict {exponent tuple: nonzero coefficient code}.  Used for
variety input, Hasse-Witt matrix extraction and smoothness testing; the
heavy curve computations use a dense representation instead.
"""

from .fields import FqField, embed_field


def poly_clean(field, d):
    return {e: c for e, c in d.items() if c != 0}


def poly_add(field, f, g):
    out = dict(f)
    for e, c in g.items():
        s = field.add(out.get(e, 0), c)
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def poly_scale(field, f, c):
    if c == 0:
        return {}
    return {e: field.mul(v, c) for e, v in f.items()}


def poly_neg(field, f):
    return {e: field.neg(c) for e, c in f.items()}


def poly_mul(field, f, g):
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = field.add(out.get(e, 0), field.mul(c1, c2))
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def poly_pow(field, f, k):
    nv = len(next(iter(f))) if f else 0
    out = {(0,) * nv: 1} if f else {}
    base = f
    if k == 0:
        raise ValueError("poly_pow with k = 0 needs variable count")
    while k:
        if k & 1:
            out = poly_mul(field, out, base)
        base = poly_mul(field, base, base)
        k >>= 1
    return out


def poly_partial(field, f, var):
    """Formal partial derivative."""
    out = {}
    for e, c in f.items():
        k = e[var]
        if k % field.p == 0:
            continue
        ee = e[:var] + (k - 1,) + e[var + 1:]
        s = field.add(out.get(ee, 0), field.mul(k % field.p, c))
        if s:
            out[ee] = s
        else:
            out.pop(ee, None)
    return out


def poly_degree(f):
    return max((sum(e) for e in f), default=-1)


def poly_is_homogeneous(f):
    degs = {sum(e) for e in f}
    return len(degs) <= 1


def poly_eval(field, f, point):
    """Evaluate at a point with coordinates in `field` (codes)."""
    acc = 0
    for e, c in f.items():
        term = c
        for xi, k in zip(point, e):
            if k:
                term = field.mul(term, field.pow(xi, k))
        acc = field.add(acc, term)
    return acc


def poly_map_coeffs(f, phi):
    """Apply a field embedding to every coefficient."""
    return {e: phi(c) for e, c in f.items()}


def poly_coefficient(f, e):
    return f.get(tuple(e), 0)


def monomials_of_degree(nvars, d):
    """All exponent tuples of total degree d, graded-lex descending."""
    out = []

    def rec(prefix, rem, left):
        if left == 1:
            out.append(prefix + (rem,))
            return
        for k in range(rem, -1, -1):
            rec(prefix + (k,), rem - k, left - 1)
    if nvars == 0:
        return [()] if d == 0 else []
    rec((), d, nvars)
    return out


def poly_to_str(field, f, names):
    if not f:
        return "0"
    parts = []
    for e in sorted(f, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = f[e]
        factors = []
        if c != 1 or not any(e):
            factors.append(field.element_str(c) if field.a > 1 else str(c))
        for nm, k in zip(names, e):
            if k == 1:
                factors.append(nm)
            elif k > 1:
                factors.append("%s^%d" % (nm, k))
        parts.append("*".join(factors))
    return " + ".join(parts)
