"""Galois rings GR(p^n, a) = (Z/p^n)[t]/(lift of irreducible modulus).

This is the concrete model used for W_n(F_{p^a}).  The Frobenius lift sigma
is computed once at construction by Hensel-lifting the seed t^p; all later
applications are matrix-vector products over Z/p^n.
"""

from __future__ import annotations

from functools import lru_cache

from .fields import FqField, fq, is_prime

_COORD_LIMIT = 2 ** 63


class GRElement:
    """Element of a GaloisRing; coords are canonical representatives in
    [0, p^n), coefficient of t^i at index i."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: "GaloisRing", coords):
        self.ring = ring
        pn = ring.pn
        self.coords = tuple(c % pn for c in coords)

    def __add__(self, other):
        pn = self.ring.pn
        return GRElement(self.ring,
                         [(a + b) % pn for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        pn = self.ring.pn
        return GRElement(self.ring,
                         [(a - b) % pn for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        pn = self.ring.pn
        return GRElement(self.ring, [(-a) % pn for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, int):
            pn = self.ring.pn
            return GRElement(self.ring, [(a * other) % pn for a in self.coords])
        return self.ring._mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = self.ring.one
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, other):
        return (isinstance(other, GRElement) and self.ring is other.ring
                and self.coords == other.coords)

    def __hash__(self):
        return hash((id(self.ring), self.coords))

    def __bool__(self):
        return any(self.coords)

    def inverse(self):
        return self.ring.inv(self)

    def valuation(self) -> int:
        """Largest v with x in p^v R; valuation(0) = n by convention."""
        ring = self.ring
        if not any(self.coords):
            return ring.n
        v = ring.n
        for c in self.coords:
            if c:
                w = 0
                while c % ring.p == 0:
                    c //= ring.p
                    w += 1
                v = min(v, w)
        return v

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def sigma(self):
        return self.ring.sigma(self)

    def __repr__(self):
        return f"GR({self.ring.p}^{self.ring.n},{self.ring.a})<{self.to_str()}>"

    def to_str(self) -> str:
        """Polynomial string, descending degree, e.g. '3*t + 3'."""
        parts = []
        for i in range(self.ring.a - 1, -1, -1):
            c = self.coords[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else f"{c}*t")
            else:
                parts.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
        return " + ".join(parts) if parts else "0"


class GaloisRing:
    """GR(p^n, a) with Frobenius lift sigma."""

    def __init__(self, p: int, n: int, a: int):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if n < 1 or a < 1:
            raise ValueError("require n >= 1 and a >= 1")
        if p ** n > _COORD_LIMIT:
            raise ValueError(f"p^n = {p**n} exceeds the supported coordinate "
                             f"range (p^n <= 2^63)")
        self.p = p
        self.n = n
        self.a = a
        self.pn = p ** n
        self.residue = fq(p, a)
        self.modulus = self.residue.modulus
        # lift coefficients verbatim: lifted_modulus mod p = modulus
        self.lifted_modulus = tuple(int(c) for c in self.modulus)
        self.zero = GRElement(self, (0,) * a)
        self.one = GRElement(self, (1,) + (0,) * (a - 1))
        self._tpow = self._gen_power_table()
        self._teich_cache = {}
        self._sigma_matrix = None
        self.sigma_image = self._compute_sigma_image()

    # -- construction internals -----------------------------------------

    def _gen_power_table(self):
        """t^a .. t^(2a-2) reduced, as coordinate tuples."""
        a, pn = self.a, self.pn
        table = []
        # t^a = -(lower coefficients)
        cur = [(-self.lifted_modulus[i]) % pn for i in range(a)]
        table.append(tuple(cur))
        for _ in range(a - 2):
            nxt = [0] * a
            carry = cur[a - 1]
            for i in range(a - 1, 0, -1):
                nxt[i] = cur[i - 1]
            if carry:
                for i in range(a):
                    nxt[i] = (nxt[i] - carry * self.lifted_modulus[i]) % pn
            cur = nxt
            table.append(tuple(cur))
        return table

    def _mul(self, x: GRElement, y: GRElement) -> GRElement:
        a, pn = self.a, self.pn
        if a == 1:
            return GRElement(self, ((x.coords[0] * y.coords[0]) % pn,))
        prod = [0] * (2 * a - 1)
        xc, yc = x.coords, y.coords
        for i in range(a):
            if xc[i]:
                for j in range(a):
                    prod[i + j] += xc[i] * yc[j]
        out = [c % pn for c in prod[:a]]
        for k in range(a, 2 * a - 1):
            c = prod[k] % pn
            if c:
                red = self._tpow[k - a]
                for i in range(a):
                    out[i] = (out[i] + c * red[i]) % pn
        return GRElement(self, out)

    def _compute_sigma_image(self):
        """sigma(t) via Hensel lift of the seed t^p."""
        if self.a == 1:
            return self.one.coords
        seed = self.gen() ** self.p
        root = hensel_root(self.lifted_poly_ring_coeffs(), seed)
        # build sigma matrix: columns are sigma(t^i) = root^i
        cols = [self.one]
        for _ in range(1, self.a):
            cols.append(cols[-1] * root)
        self._sigma_matrix = [c.coords for c in cols]
        return root.coords

    def lifted_poly_ring_coeffs(self):
        """The lifted modulus as GRElement coefficients (for hensel_root)."""
        return [self.from_int(c) for c in self.lifted_modulus]

    # -- public api -------------------------------------------------------

    def gen(self) -> GRElement:
        coords = [0] * self.a
        if self.a == 1:
            coords[0] = 1
        else:
            coords[1] = 1
        return GRElement(self, coords)

    def from_int(self, c: int) -> GRElement:
        return GRElement(self, (c % self.pn,) + (0,) * (self.a - 1))

    def from_coords(self, coords) -> GRElement:
        coords = list(coords)
        if len(coords) != self.a:
            raise ValueError("coordinate length mismatch")
        return GRElement(self, coords)

    def element_from_residue(self, x0: int) -> GRElement:
        """Naive (non-Teichmuller) lift of a residue-field element."""
        return GRElement(self, self.residue.coords(x0))

    def residue_of(self, x: GRElement) -> int:
        return self.residue.from_coords(c % self.p for c in x.coords)

    def sigma(self, x: GRElement) -> GRElement:
        if self.a == 1:
            return x
        out = [0] * self.a
        for i, c in enumerate(x.coords):
            if c:
                col = self._sigma_matrix[i]
                for j in range(self.a):
                    out[j] = (out[j] + c * col[j]) % self.pn
        return GRElement(self, out)

    def sigma_iter(self, x: GRElement, k: int) -> GRElement:
        for _ in range(k % self.a):
            x = self.sigma(x)
        return x

    def sigma_inv(self, x: GRElement) -> GRElement:
        return self.sigma_iter(x, self.a - 1)

    def inv(self, x: GRElement) -> GRElement:
        if not x.is_unit():
            raise ZeroDivisionError(f"{x!r} is not a unit (valuation > 0)")
        y = self.teichmuller_section_inv(x)
        # Newton: y <- y(2 - x y), doubles p-adic precision
        for _ in range(max(1, self.n).bit_length() + 1):
            y = y * (self.from_int(2) - x * y)
        return y

    def teichmuller_section_inv(self, x: GRElement) -> GRElement:
        """A lift of the residue inverse, seed for unit inversion."""
        r = self.residue_of(x)
        return self.element_from_residue(self.residue.inv(r))

    def teichmuller(self, x0: int) -> GRElement:
        """The unique omega with omega^q = omega lifting x0 in F_q."""
        cached = self._teich_cache.get(x0)
        if cached is not None:
            return cached
        x = self.element_from_residue(x0)
        q = self.residue.q
        for _ in range(self.n + 1):
            nxt = x ** q
            if nxt == x:
                break
            x = nxt
        assert x ** q == x
        self._teich_cache[x0] = x
        return x

    def divide_exact_p(self, x: GRElement, e: int = 1) -> "GRElement":
        """Divide by p^e; raises if not exactly divisible.  The result is
        only well-defined modulo p^(n-e); it is returned in full GR(p^n)
        with the high digits set to zero."""
        pe = self.p ** e
        if any(c % pe for c in x.coords):
            raise ValueError("not divisible by p^%d" % e)
        return GRElement(self, [c // pe for c in x.coords])

    def reduce_to(self, x: GRElement, m: int):
        """Image of x under GR(p^n, a) -> GR(p^m, a), m <= n."""
        if m > self.n:
            raise ValueError("can only reduce to smaller length")
        target = galois_ring(self.p, m, self.a)
        pm = self.p ** m
        return GRElement(target, [c % pm for c in x.coords])

    def elements(self):
        total = self.pn ** self.a
        for code in range(total):
            coords = []
            c = code
            for _ in range(self.a):
                coords.append(c % self.pn)
                c //= self.pn
            yield GRElement(self, coords)

    def random_element(self, rng) -> GRElement:
        return GRElement(self, [rng.randrange(self.pn) for _ in range(self.a)])

    def __repr__(self):
        return f"GaloisRing(p={self.p}, n={self.n}, a={self.a})"


@lru_cache(maxsize=None)
def galois_ring(p: int, n: int, a: int) -> GaloisRing:
    return GaloisRing(p, n, a)


def hensel_root(f_coeffs, seed: GRElement) -> GRElement:
    """Newton iteration for a monic polynomial with GRElement coefficients.

    Requires f(seed) = 0 mod p and f'(seed) a unit; precision doubles per
    step, so ceil(log2 n) + 1 iterations suffice.
    """
    ring = seed.ring

    def ev(cs, x):
        acc = ring.zero
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    deriv = [f_coeffs[i] * i for i in range(1, len(f_coeffs))]
    if ev(f_coeffs, seed).valuation() < 1:
        raise ValueError("seed is not a root mod p")
    if not ev(deriv, seed).is_unit():
        raise ValueError("not a simple root: f'(seed) is not a unit mod p")
    x = seed
    for _ in range(max(1, ring.n).bit_length() + 1):
        fx = ev(f_coeffs, x)
        if not fx:
            break
        x = x - fx * ev(deriv, x).inverse()
    assert not ev(f_coeffs, x), "Newton iteration failed to converge"
    return x


def hensel_root_zpn(f_int_coeffs, seed: int, p: int, n: int) -> int:
    """Convenience wrapper over Z/p^n (a = 1)."""
    ring = galois_ring(p, n, 1)
    root = hensel_root([ring.from_int(c) for c in f_int_coeffs],
                       ring.from_int(seed))
    return root.coords[0]


def embed_ring(small: GaloisRing, big: GaloisRing):
    """Ring embedding GR(p^n, a) -> GR(p^n, a*s): returns a callable.

    The generator is sent to the Hensel lift of a root of the small modulus
    in the big residue field (lowest-encoded root; deterministic)."""
    if (small.p, small.n) != (big.p, big.n) or big.a % small.a != 0:
        raise ValueError("no embedding between these rings")
    if small.a == 1:
        return lambda x: big.from_int(x.coords[0])
    from .fields import embed_field
    phi0 = embed_field(small.residue, big.residue)
    seed = big.teichmuller(phi0(small.residue.generator()))
    # seed is a root of modulus mod p; refine to a root of the lifted modulus
    root = hensel_root([big.from_int(c) for c in small.lifted_modulus], seed)
    powers = [big.one]
    for _ in range(1, small.a):
        powers.append(powers[-1] * root)

    def phi(x: GRElement) -> GRElement:
        out = big.zero
        for i, c in enumerate(x.coords):
            if c:
                out = out + powers[i] * c
        return out

    return phi
