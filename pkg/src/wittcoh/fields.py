"""Finite field arithmetic F_{p^a} with a deterministic modulus choice.

Elements are encoded as integers in [0, p^a): the base-p digits of the
integer are the coefficients of the residue polynomial in the generator t,
least significant digit first.  For the small fields this tool works with
(q <= a few hundred) full multiplication tables are precomputed.
"""

from __future__ import annotations

from functools import lru_cache

_TABLE_LIMIT = 1024  # build q x q mul tables below this size


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


# -- univariate polynomial helpers over Z/p (coefficient lists, low degree first)

def _poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mulmod(f, g, m, p):
    res = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                res[i + j] = (res[i + j] + a * b) % p
    return _poly_modred(res, m, p)


def _poly_modred(f, m, p):
    # m monic
    f = list(f)
    dm = len(m) - 1
    for i in range(len(f) - 1, dm - 1, -1):
        c = f[i] % p
        if c:
            for j in range(dm + 1):
                f[i - dm + j] = (f[i - dm + j] - c * m[j]) % p
    del f[dm:]
    return _poly_trim(f)


def _poly_gcd(f, g, p):
    f, g = list(f), list(g)
    _poly_trim(f)
    _poly_trim(g)
    while g:
        inv = pow(g[-1], p - 2, p)
        # reduce f mod g
        while len(f) >= len(g) and f:
            c = (f[-1] * inv) % p
            shift = len(f) - len(g)
            for j in range(len(g)):
                f[shift + j] = (f[shift + j] - c * g[j]) % p
            _poly_trim(f)
        f, g = g, f
    return f


def _poly_powmod_x(e, m, p):
    """x^e mod m over Z/p."""
    result = [1]
    base = _poly_modred([0, 1], m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible(modulus, p: int) -> bool:
    """Monic degree-a polynomial over F_p: gcd(x^{p^i} - x, m) = 1 for
    0 < i < a, and m | x^{p^a} - x."""
    a = len(modulus) - 1
    if a < 1:
        return False
    for i in range(1, a):
        h = _poly_powmod_x(p ** i, modulus, p)
        # h - x
        hx = list(h) + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % p
        g = _poly_gcd(hx, list(modulus), p)
        if len(g) != 1:
            return False
    h = _poly_powmod_x(p ** a, modulus, p)
    hx = list(h) + [0] * max(0, 2 - len(h))
    hx[1] = (hx[1] - 1) % p
    return not _poly_trim(hx)


def lowest_irreducible(p: int, a: int):
    """Lexicographically lowest monic irreducible of degree a over F_p
    (coefficient tuples ordered as base-p integers, constant term first)."""
    if a == 1:
        return (0, 1)
    for code in range(p ** a):
        coeffs = []
        c = code
        for _ in range(a):
            coeffs.append(c % p)
            c //= p
        modulus = tuple(coeffs) + (1,)
        if is_irreducible(modulus, p):
            return modulus
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FqField:
    """The field F_{p^a} with the deterministic lowest-lex modulus."""

    def __init__(self, p: int, a: int, modulus=None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if a < 1:
            raise ValueError(f"extension degree a = {a} must be >= 1")
        self.p = p
        self.a = a
        self.q = p ** a
        if modulus is None:
            modulus = lowest_irreducible(p, a)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != a + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree a")
            if not is_irreducible(modulus, p):
                raise ValueError("modulus is reducible over F_p")
        self.modulus = modulus
        self._mul_table = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    # encoding helpers -------------------------------------------------

    def coords(self, x: int):
        """Base-p digits of x, length a."""
        out = []
        for _ in range(self.a):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def from_coords(self, cs) -> int:
        x = 0
        for c in reversed(list(cs)):
            x = x * self.p + (c % self.p)
        return x

    def elements(self):
        return range(self.q)

    # arithmetic -------------------------------------------------------

    def add(self, x: int, y: int) -> int:
        p = self.p
        out, mult = 0, 1
        for _ in range(self.a):
            out += ((x + y) % p) * mult
            x //= p
            y //= p
            mult *= p
        return out

    def neg(self, x: int) -> int:
        p = self.p
        out, mult = 0, 1
        for _ in range(self.a):
            out += (-x % p) * mult
            x //= p
            mult *= p
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def _mul_slow(self, x: int, y: int) -> int:
        f = _poly_mulmod(list(self.coords(x)), list(self.coords(y)),
                         list(self.modulus), self.p)
        return self.from_coords(f + [0] * (self.a - len(f)))

    def _build_tables(self):
        q = self.q
        t = [[0] * q for _ in range(q)]
        for x in range(q):
            for y in range(x, q):
                v = self._mul_slow(x, y)
                t[x][y] = v
                t[y][x] = v
        self._mul_table = t
        self._inv_table = [0] * q
        for x in range(1, q):
            self._inv_table[x] = self.pow(x, q - 2)

    def mul(self, x: int, y: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[x][y]
        return self._mul_slow(x, y)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x = self.inv(x)
            e = -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self._mul_table is not None:
            return self._inv_table[x]
        return self.pow(x, self.q - 2)

    def frob(self, x: int) -> int:
        return self.pow(x, self.p)

    def frob_inv(self, x: int) -> int:
        return self.pow(x, self.p ** (self.a - 1))

    def frob_iter(self, x: int, k: int) -> int:
        k %= self.a
        return self.pow(x, self.p ** k)

    def scalar(self, c: int) -> int:
        """Image of the integer c under Z -> F_q."""
        return c % self.p

    def generator(self) -> int:
        """The class of t (= p as an encoded integer) when a > 1, else 1."""
        return self.p if self.a > 1 else 1

    def element_str(self, x: int) -> str:
        """Textual form: polynomial in t for a > 1, plain integer else."""
        if self.a == 1:
            return str(x % self.p)
        cs = self.coords(x)
        parts = []
        for i in range(self.a - 1, -1, -1):
            c = cs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "t" if i == 1 else "t^%d" % i
                parts.append(var if c == 1 else "%d*%s" % (c, var))
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other):
        return (isinstance(other, FqField)
                and (self.p, self.a, self.modulus) == (other.p, other.a, other.modulus))

    def __hash__(self):
        return hash((self.p, self.a, self.modulus))

    def __repr__(self):
        return f"FqField(p={self.p}, a={self.a})"


@lru_cache(maxsize=None)
def fq(p: int, a: int) -> FqField:
    return FqField(p, a)


def embed_field(small: FqField, big: FqField):
    """Embedding F_{p^a} -> F_{p^(a s)}: returns a callable.

    Found by scanning for a root of the small modulus in the big field and
    taking the lowest-encoded root (deterministic).
    """
    if small.p != big.p or big.a % small.a != 0:
        raise ValueError("no embedding: degree mismatch")
    if small.a == 1:
        return lambda x: x % small.p
    root = None
    for c in range(big.q):
        acc = 0
        # evaluate small.modulus at c in big field
        for coef in reversed(small.modulus):
            acc = big.add(big.mul(acc, c), coef % big.p)
        if acc == 0:
            root = c
            break
    if root is None:
        raise AssertionError("modulus has no root in the extension")

    powers = [1]
    for _ in range(1, small.a):
        powers.append(big.mul(powers[-1], root))

    def phi(x: int) -> int:
        out = 0
        for i, d in enumerate(small.coords(x)):
            if d:
                out = big.add(out, big.mul(d % big.p, powers[i]))
        return out

    return phi
