"""Dense linear algebra over small finite fields with numpy.

Elements are stored as integer codes (see fields.FqField); row operations
go through precomputed q x q add/mul tables with fancy indexing, so
everything vectorizes along matrix rows.  Intended for q <= 81 or so.
"""

import numpy as np

from .fields import FqField


class GFLinear:
    """Row-reduction toolkit bound to one field."""

    def __init__(self, field: FqField):
        self.field = field
        q = field.q
        self.q = q
        add = np.zeros((q, q), dtype=np.int16)
        mul = np.zeros((q, q), dtype=np.int16)
        for x in range(q):
            for y in range(q):
                add[x, y] = field.add(x, y)
                mul[x, y] = field.mul(x, y)
        self.add_table = add
        self.mul_table = mul
        self.neg_table = np.array([field.neg(x) for x in range(q)],
                                  dtype=np.int16)
        self.inv_table = np.array([0] + [field.inv(x) for x in range(1, q)],
                                  dtype=np.int16)

    def asarray(self, rows):
        A = np.array(rows, dtype=np.int16)
        if A.ndim == 1:
            A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
        return A

    def row_addmul(self, target, scalar, source):
        """target + scalar * source, elementwise."""
        return self.add_table[target, self.mul_table[scalar, source]]

    def rref(self, A):
        """(R, pivots, transform) with R = transform * A in reduced row
        echelon form; transform is invertible."""
        A = A.astype(np.int16, copy=True)
        m, ncols = A.shape
        T = np.eye(m, dtype=np.int16)
        pivots = []
        r = 0
        for c in range(ncols):
            if r >= m:
                break
            nz = np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                A[[r, i]] = A[[i, r]]
                T[[r, i]] = T[[i, r]]
            s = self.inv_table[A[r, c]]
            if s != 1:
                A[r] = self.mul_table[s, A[r]]
                T[r] = self.mul_table[s, T[r]]
            col = A[:, c].copy()
            col[r] = 0
            rows = np.nonzero(col)[0]
            if rows.size:
                factors = self.neg_table[col[rows]]
                A[rows] = self.add_table[A[rows],
                                         self.mul_table[factors[:, None],
                                                        A[r][None, :]]]
                T[rows] = self.add_table[T[rows],
                                         self.mul_table[factors[:, None],
                                                        T[r][None, :]]]
            pivots.append(c)
            r += 1
        return A, pivots, T

    def rank(self, A):
        """Rank by forward elimination only (no transform tracking)."""
        A = np.asarray(A, dtype=np.int16)
        if A.size == 0:
            return 0
        A = A.copy()
        m, ncols = A.shape
        r = 0
        for c in range(ncols):
            if r >= m:
                break
            nz = np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                A[[r, i]] = A[[i, r]]
            s = self.inv_table[A[r, c]]
            if s != 1:
                A[r, c:] = self.mul_table[s, A[r, c:]]
            col = A[r + 1:, c]
            rows = np.nonzero(col)[0]
            if rows.size:
                factors = self.neg_table[col[rows]]
                block = A[r + 1:, c:]
                block[rows] = self.add_table[
                    block[rows], self.mul_table[factors[:, None],
                                                A[r, c:][None, :]]]
            r += 1
        return r

    def solve(self, A, b):
        """One solution of A x = b, or None.  b may be a matrix of
        stacked right-hand-side columns; returns stacked solutions."""
        return self.factorize(A).solve(b)

    class Factorized:
        """Cached factorization for repeated solves against one matrix."""

        def __init__(self, lin, A):
            self.lin = lin
            A = lin.asarray(A)
            self.A = A
            self.R, self.pivots, self.T = lin.rref(A) if A.size else \
                (A, [], np.eye(A.shape[0] if A.ndim == 2 else 0,
                               dtype=np.int16))
            self.rank = len(self.pivots)

        def solve(self, b):
            lin = self.lin
            b = np.asarray(b, dtype=np.int16)
            single = b.ndim == 1
            if single:
                b = b[:, None]
            tb = lin._matmul(self.T, b) if self.A.size else b
            r = self.rank
            if np.any(tb[r:]):
                return None
            ncols = self.A.shape[1] if self.A.size else 0
            x = np.zeros((ncols, b.shape[1]), dtype=np.int16)
            for k in range(r - 1, -1, -1):
                c = self.pivots[k]
                row = self.R[k]
                acc = tb[k].copy()
                after = np.nonzero(row[c + 1:])[0]
                for j in after:
                    cc = c + 1 + int(j)
                    acc = lin.add_table[
                        acc, lin.neg_table[lin.mul_table[row[cc], x[cc]]]]
                x[c] = acc
            return x[:, 0] if single else x

    def factorize(self, A):
        return GFLinear.Factorized(self, A)

    def _matmul(self, A, B):
        """Matrix product over the field (small sizes)."""
        A = np.asarray(A, dtype=np.int16)
        B = np.asarray(B, dtype=np.int16)
        if self.field.a == 1:
            return (A.astype(np.int64) @ B.astype(np.int64)) % self.field.p
        m, k = A.shape
        k2, n = B.shape
        out = np.zeros((m, n), dtype=np.int16)
        for j in range(k):
            col = A[:, j]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            prod = self.mul_table[col[nz][:, None], B[j][None, :]]
            out[nz] = self.add_table[out[nz], prod]
        return out

    def nullspace(self, A):
        """Basis of the right kernel, as columns of a matrix."""
        A = self.asarray(A)
        if A.size == 0:
            n = A.shape[1] if A.ndim == 2 else 0
            return np.eye(n, dtype=np.int16)
        m, n = A.shape
        R, pivots, _ = self.rref(A)
        free = [c for c in range(n) if c not in pivots]
        basis = np.zeros((n, len(free)), dtype=np.int16)
        for idx, fc in enumerate(free):
            basis[fc, idx] = 1
            for k, c in enumerate(pivots):
                basis[c, idx] = self.neg_table[R[k, fc]]
        return basis
