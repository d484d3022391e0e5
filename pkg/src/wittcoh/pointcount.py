"""Brute-force point counting over F_{q^r} and elliptic unit roots."""

import math

from .fields import fq, embed_field
from .galois import galois_ring, hensel_root_zpn
from . import polys


DEFAULT_BUDGET = 1 << 26


class BudgetExceeded(Exception):
    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            "enumeration needs %d candidate evaluations, budget is %d"
            % (required, budget))


class VarietySystem:
    """A list of polynomial equations over F_q in affine, projective or
    glued-planes mode."""

    def __init__(self, field, mode, equations, nvars, name=""):
        if mode not in ("affine", "projective", "glued-planes"):
            raise ValueError("unknown mode %r" % mode)
        if mode == "projective":
            for f in equations:
                if not polys.poly_is_homogeneous(f):
                    raise ValueError("projective mode needs homogeneous "
                                     "equations")
        self.field = field
        self.mode = mode
        self.equations = [polys.poly_clean(field, f) for f in equations]
        self.nvars = nvars
        self.name = name


def _point_iter_affine(K, nvars):
    point = [0] * nvars
    while True:
        yield tuple(point)
        i = 0
        while i < nvars:
            point[i] += 1
            if point[i] < K.q:
                break
            point[i] = 0
            i += 1
        if i == nvars:
            return


def _point_iter_projective(K, nvars):
    """Representatives with first nonzero coordinate 1."""
    for lead in range(nvars):
        for tail in _point_iter_affine(K, nvars - lead - 1):
            yield (0,) * lead + (1,) + tail


def count_points(V: VarietySystem, r=1, budget=DEFAULT_BUDGET):
    """Exact #V(F_{q^r}) by exhaustive enumeration."""
    F = V.field
    if V.mode == "glued-planes":
        # two affine planes sharing a single point
        Q = F.q ** r
        return 2 * Q * Q - 1
    K = fq(F.p, F.a * r) if r > 1 else F
    phi = embed_field(F, K) if r > 1 else (lambda x: x)
    eqs = [polys.poly_map_coeffs(f, phi) for f in V.equations]
    if V.mode == "affine":
        required = K.q ** V.nvars
    else:
        required = (K.q ** V.nvars - 1) // (K.q - 1)
    if required > budget:
        raise BudgetExceeded(required, budget)
    it = (_point_iter_affine(K, V.nvars) if V.mode == "affine"
          else _point_iter_projective(K, V.nvars))
    count = 0
    for pt in it:
        for f in eqs:
            if polys.poly_eval(K, f, pt):
                break
        else:
            count += 1
    return count


def elliptic_aq(E: VarietySystem, budget=DEFAULT_BUDGET):
    """a_q = q + 1 - #E(F_q) for a smooth plane cubic; checks Hasse."""
    q = E.field.q
    a_q = q + 1 - count_points(E, 1, budget)
    if a_q * a_q > 4 * q:
        raise ValueError(
            "Hasse bound violated (a_q = %d, q = %d): input is not a "
            "smooth genus-1 curve" % (a_q, q))
    return a_q


def unit_root(a_q, q, n):
    """The p-adic unit root of T^2 - a_q T + q in Z/p^n, or None.

    Ordinary case (p does not divide a_q): the root congruent to a_q
    mod p, Hensel-lifted.  Supersingular case: None.
    """
    # recover p from q
    p = None
    for cand in range(2, q + 1):
        if q % cand == 0:
            p = cand
            break
    if a_q % p == 0:
        return None
    root = hensel_root_zpn([q % p ** n, (-a_q) % p ** n, 1], a_q % p, p, n)
    return root


def frobenius_trace_r(a_q, q, r):
    """a_{q^r} from a_q via the recursion t_{i+1} = a_q t_i - q t_{i-1}."""
    t0, t1 = 2, a_q
    for _ in range(r - 1):
        t0, t1 = t1, a_q * t1 - q * t0
    return t1


def count_from_aq(a_q, q, r):
    """#E(F_{q^r}) = q^r + 1 - a_{q^r} (integer identity)."""
    return q ** r + 1 - frobenius_trace_r(a_q, q, r)
