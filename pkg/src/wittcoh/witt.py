"""Universal p-typical Witt vector arithmetic of length n.

The sum/product/Frobenius law tables are integer polynomials computed once
per (p, n) by solving the ghost identities over Q (with an exactness check
on every division by p) and cached.  Witt vectors take coordinates in any
coefficient ring supplied as an operation bundle.
"""

from __future__ import annotations

from functools import lru_cache

from sympy.polys.rings import ring as _sym_ring
from sympy import ZZ, QQ

from .galois import GaloisRing, GRElement, galois_ring


# ---------------------------------------------------------------------------
# law tables


class WittLawTable:
    """Integer polynomial tables for W_n: sums S_0..S_{n-1}, products
    P_0..P_{n-1}, generic Frobenius F_0..F_{n-2}.

    Polynomials are stored as tuples of (exponent_tuple, int_coeff) terms in
    the variables a_0..a_{n-1}, b_0..b_{n-1}, sorted graded-lex for
    deterministic serialization."""

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        names = [f"a{i}" for i in range(n)] + [f"b{i}" for i in range(n)]
        R, *gens = _sym_ring(",".join(names), QQ)
        self._R = R
        avars = gens[:n]
        bvars = gens[n:]

        def ghost(vs, i):
            return sum(p ** j * vs[j] ** (p ** (i - j)) for j in range(i + 1))

        def solve(target_ghosts):
            """Witt coordinates whose ghost vector equals target_ghosts."""
            out = []
            for i in range(len(target_ghosts)):
                rhs = target_ghosts[i]
                acc = rhs - sum(p ** j * out[j] ** (p ** (i - j))
                                for j in range(i))
                poly = acc.mul_ground(QQ(1, p ** i))
                for mono, c in poly.to_dict().items():
                    if QQ.denom(c) != 1:
                        raise AssertionError(
                            "Witt law integrality failure at (p=%d, n=%d, "
                            "i=%d): this is an implementation bug" % (p, n, i))
                out.append(poly)
            return out

        sum_ghosts = [ghost(avars, i) + ghost(bvars, i) for i in range(n)]
        prod_ghosts = [ghost(avars, i) * ghost(bvars, i) for i in range(n)]
        frob_ghosts = [ghost(avars, i + 1) for i in range(n - 1)]

        self.sum_polys = [self._freeze(f) for f in solve(sum_ghosts)]
        self.prod_polys = [self._freeze(f) for f in solve(prod_ghosts)]
        self.frob_polys = [self._freeze(f) for f in solve(frob_ghosts)] \
            if n > 1 else []

    def _freeze(self, poly):
        terms = []
        for mono, c in poly.to_dict().items():
            num, den = QQ.numer(c), QQ.denom(c)
            if den != 1:
                raise AssertionError("non-integer Witt law coefficient")
            terms.append((tuple(int(e) for e in mono), int(num)))
        # graded-lex, deterministic
        terms.sort(key=lambda t: (sum(t[0]), tuple(-e for e in t[0])))
        return tuple(terms)

    def serialize(self) -> str:
        """Deterministic textual form for golden-file tests."""
        names = [f"a{i}" for i in range(self.n)] + \
                [f"b{i}" for i in range(self.n)]

        def poly_str(terms):
            if not terms:
                return "0"
            parts = []
            for mono, c in terms:
                factors = [str(c)] if c != 1 or not any(mono) else []
                if c == 1 and any(mono):
                    factors = []
                elif c != 1:
                    factors = [str(c)]
                for name, e in zip(names, mono):
                    if e == 1:
                        factors.append(name)
                    elif e > 1:
                        factors.append(f"{name}^{e}")
                parts.append("*".join(factors) if factors else str(c))
            return " + ".join(parts)

        lines = [f"witt-laws p={self.p} n={self.n}"]
        for label, polys in (("S", self.sum_polys), ("P", self.prod_polys),
                             ("F", self.frob_polys)):
            for i, terms in enumerate(polys):
                lines.append(f"{label}{i} = {poly_str(terms)}")
        return "\n".join(lines) + "\n"


_CORRUPT_LAWS = False  # test-only negative control, set via CLI flag


@lru_cache(maxsize=None)
def _witt_tables_cached(p: int, n: int) -> WittLawTable:
    return WittLawTable(p, n)


def witt_tables(p: int, n: int) -> WittLawTable:
    if n < 1:
        raise ValueError("Witt length must be >= 1")
    tbl = _witt_tables_cached(p, n)
    if _CORRUPT_LAWS and n >= 2:
        import copy
        bad = copy.copy(tbl)
        # drop the carry term of S_1: breaks the ghost identity
        bad.sum_polys = list(tbl.sum_polys)
        bad.sum_polys[1] = tuple(t for t in tbl.sum_polys[1]
                                 if sum(t[0]) <= 1)
        return bad
    return tbl


# ---------------------------------------------------------------------------
# coefficient ring bundles


class CoefficientRing:
    """Operation bundle for Witt coordinates.

    Subclasses supply zero/one/add/mul/neg/eq; ppow (p-th power) is needed
    for char-p Frobenius, p_torsion_free enables the ghost map."""

    p_torsion_free = False
    char_p = False

    def add(self, x, y):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def scalar_mul(self, c, x):
        """c*x for an integer c."""
        out = None
        acc = x if c >= 0 else self.neg(x)
        c = abs(c)
        while c:
            if c & 1:
                out = acc if out is None else self.add(out, acc)
            acc = self.add(acc, acc)
            c >>= 1
        return self.zero if out is None else out

    def ppow(self, x):
        raise NotImplementedError

    def eq(self, x, y):
        raise NotImplementedError


class IntegerRing(CoefficientRing):
    p_torsion_free = True

    def __init__(self, p):
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def scalar_mul(self, c, x):
        return c * x

    def ppow(self, x):
        return x ** self.p

    def eq(self, x, y):
        return x == y


class FqRing(CoefficientRing):
    char_p = True

    def __init__(self, field):
        self.field = field
        self.p = field.p
        self.zero = 0
        self.one = 1

    def add(self, x, y):
        return self.field.add(x, y)

    def mul(self, x, y):
        return self.field.mul(x, y)

    def neg(self, x):
        return self.field.neg(x)

    def ppow(self, x):
        return self.field.frob(x)

    def eq(self, x, y):
        return x == y


class PolyRing(CoefficientRing):
    """Multivariate polynomials over an FqField (dict exponent -> coeff).

    Used for symbolic char-p checks (Teichmuller multiplicativity, ideal
    closure); an optional reduction hook is applied after every product."""

    char_p = True

    def __init__(self, field, nvars, reduce_hook=None):
        self.field = field
        self.p = field.p
        self.nvars = nvars
        self.reduce_hook = reduce_hook
        self.zero = {}
        self.one = {(0,) * nvars: 1}

    def var(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return {tuple(e): 1}

    def const(self, c):
        return {(0,) * self.nvars: c} if c else {}

    def add(self, x, y):
        out = dict(x)
        for e, c in y.items():
            s = self.field.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return out

    def neg(self, x):
        return {e: self.field.neg(c) for e, c in x.items()}

    def mul(self, x, y):
        out = {}
        for e1, c1 in x.items():
            for e2, c2 in y.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                s = self.field.add(out.get(e, 0), self.field.mul(c1, c2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        if self.reduce_hook is not None:
            out = self.reduce_hook(out)
        return out

    def ppow(self, x):
        out = {tuple(i * self.p for i in e): self.field.frob(c)
               for e, c in x.items()}
        if self.reduce_hook is not None:
            out = self.reduce_hook(out)
        return out

    def eq(self, x, y):
        return x == y


# ---------------------------------------------------------------------------
# Witt vectors


class WittVector:
    __slots__ = ("ring", "coords")

    def __init__(self, ring: CoefficientRing, coords):
        self.ring = ring
        self.coords = tuple(coords)

    def __len__(self):
        return len(self.coords)

    def __eq__(self, other):
        return (len(self.coords) == len(other.coords)
                and all(self.ring.eq(a, b)
                        for a, b in zip(self.coords, other.coords)))

    def __hash__(self):
        return hash(self.coords) if all(
            isinstance(c, (int, tuple)) for c in self.coords) else id(self)

    def __repr__(self):
        return f"W{len(self.coords)}{self.coords!r}"


def _eval_law(terms, ring: CoefficientRing, values):
    """Evaluate a frozen law polynomial over the coefficient ring, caching
    powers of each variable."""
    pow_cache = {}

    def power(idx, e):
        key = (idx, e)
        got = pow_cache.get(key)
        if got is not None:
            return got
        if e == 1:
            r = values[idx]
        elif e % 2 == 0:
            h = power(idx, e // 2)
            r = ring.mul(h, h)
        else:
            r = ring.mul(power(idx, e - 1), values[idx])
        pow_cache[key] = r
        return r

    acc = ring.zero
    for mono, c in terms:
        term = None
        for idx, e in enumerate(mono):
            if e:
                f = power(idx, e)
                term = f if term is None else ring.mul(term, f)
        if term is None:
            term = ring.one
        acc = ring.add(acc, ring.scalar_mul(c, term))
    return acc


def witt_add(u: WittVector, v: WittVector) -> WittVector:
    if len(u) != len(v):
        raise ValueError("Witt length mismatch")
    n = len(u)
    tbl = witt_tables(u.ring.p, n)
    values = u.coords + v.coords
    return WittVector(u.ring, [_eval_law(tbl.sum_polys[i], u.ring, values)
                               for i in range(n)])


def witt_mul(u: WittVector, v: WittVector) -> WittVector:
    if len(u) != len(v):
        raise ValueError("Witt length mismatch")
    n = len(u)
    tbl = witt_tables(u.ring.p, n)
    values = u.coords + v.coords
    return WittVector(u.ring, [_eval_law(tbl.prod_polys[i], u.ring, values)
                               for i in range(n)])


def witt_neg(u: WittVector) -> WittVector:
    """-u = (-1)*u.  For p = 2 the coordinates of -1 are not (1,0,...);
    they are solved once per (p, n) over Z and reduced into the ring."""
    ring = u.ring
    minus_one = _minus_one_coords(ring.p, len(u))
    mo = WittVector(ring, [_int_into_ring(ring, c) for c in minus_one])
    return witt_mul(mo, u)


def witt_sub(u: WittVector, v: WittVector) -> WittVector:
    return witt_add(u, witt_neg(v))


def _int_into_ring(ring: CoefficientRing, c: int):
    return ring.scalar_mul(c, ring.one)


@lru_cache(maxsize=None)
def _minus_one_coords(p: int, n: int):
    """Witt coordinates of -1 in W_n(Z): solve ghost(x) = (-1,...,-1)
    greedily over Z.  Coordinatewise reduction Z -> A is a ring
    homomorphism on Witt vectors, so the same integer coordinates give -1
    in W_n(A) for every coefficient ring."""
    neg = []
    for i in range(n):
        s = -1 - sum(p ** j * neg[j] ** (p ** (i - j)) for j in range(i))
        q, r = divmod(s, p ** i)
        assert r == 0
        neg.append(q)
    return tuple(neg)


def ghost(u: WittVector):
    if not u.ring.p_torsion_free:
        raise ValueError("ghost undefined: coefficient ring has p-torsion")
    p = u.ring.p
    n = len(u)
    out = []
    for i in range(n):
        acc = u.ring.zero
        for j in range(i + 1):
            term = _pow(u.ring, u.coords[j], p ** (i - j))
            acc = u.ring.add(acc, u.ring.scalar_mul(p ** j, term))
        out.append(acc)
    return out


def _pow(ring, x, e):
    r = ring.one
    b = x
    while e:
        if e & 1:
            r = ring.mul(r, b)
        b = ring.mul(b, b)
        e >>= 1
    return r


def witt_frobenius(u: WittVector) -> WittVector:
    """Frobenius.  Over an F_p-algebra: coordinatewise p-th power (length
    preserved).  Generically: the ghost-shift law (length n-1)."""
    ring = u.ring
    if ring.char_p:
        return WittVector(ring, [ring.ppow(c) for c in u.coords])
    n = len(u)
    if n == 1:
        raise ValueError("generic Frobenius needs length >= 2")
    tbl = witt_tables(ring.p, n)
    values = u.coords + tuple(ring.zero for _ in range(n))
    return WittVector(ring, [_eval_law(tbl.frob_polys[i], ring, values)
                             for i in range(n - 1)])


def witt_verschiebung(u: WittVector) -> WittVector:
    """Length-raising V: W_{n-1} -> W_n, prepend a zero."""
    return WittVector(u.ring, (u.ring.zero,) + u.coords)


def witt_verschiebung_fixed(u: WittVector) -> WittVector:
    """Fixed-length V: prepend zero, drop the last coordinate."""
    return WittVector(u.ring, (u.ring.zero,) + u.coords[:-1])


def witt_restrict(u: WittVector, m: int) -> WittVector:
    if m > len(u):
        raise ValueError("restriction target longer than source")
    return WittVector(u.ring, u.coords[:m])


def witt_teichmuller(ring: CoefficientRing, x, n: int) -> WittVector:
    return WittVector(ring, (x,) + (ring.zero,) * (n - 1))


def witt_zero(ring: CoefficientRing, n: int) -> WittVector:
    return WittVector(ring, (ring.zero,) * n)


def witt_one(ring: CoefficientRing, n: int) -> WittVector:
    return WittVector(ring, (ring.one,) + (ring.zero,) * (n - 1))


def witt_scalar_int(ring: CoefficientRing, c: int, n: int) -> WittVector:
    """The Witt vector of the integer c (image of c under Z -> W_n)."""
    neg = c < 0
    c = abs(c)
    acc = witt_zero(ring, n)
    base = witt_one(ring, n)
    while c:
        if c & 1:
            acc = witt_add(acc, base)
        base = witt_add(base, base)
        c >>= 1
    if neg:
        acc = witt_neg(acc)
    return acc


# ---------------------------------------------------------------------------
# coordinate model <-> Galois ring model for W_n(F_q)


def witt_to_galois(u: WittVector, R: GaloisRing) -> GRElement:
    """(u_0,...,u_{n-1}) |-> sum_i p^i [u_i^(p^-i)], the canonical ring
    isomorphism W_n(F_q) -> GR(p^n, a)."""
    if len(u) != R.n:
        raise ValueError("Witt length does not match ring length")
    if not isinstance(u.ring, FqRing) or u.ring.field != R.residue:
        raise ValueError("coefficient field does not match the ring")
    Fqf = R.residue
    acc = R.zero
    for i, ui in enumerate(u.coords):
        if ui:
            twisted = Fqf.frob_iter(ui, (-i) % Fqf.a) if Fqf.a > 1 else ui
            acc = acc + R.teichmuller(twisted) * (R.p ** i)
    return acc


def galois_to_witt(x: GRElement) -> WittVector:
    """Inverse of witt_to_galois: Teichmuller digit expansion."""
    R = x.ring
    Fqf = R.residue
    ring = FqRing(Fqf)
    digits = []
    r = x
    for i in range(R.n):
        d = R.residue_of(r)
        digits.append(Fqf.frob_iter(d, i) if Fqf.a > 1 else d)
        r = R.divide_exact_p(r - R.teichmuller(d))
    return WittVector(ring, digits)
