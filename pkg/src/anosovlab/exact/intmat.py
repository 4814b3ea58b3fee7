"""Integer matrices over Python big ints, and Smith normal form.

The SNF routine keeps full unimodular transforms so callers can solve
congruences (periodic-point enumeration) as well as read off cokernels
(homology).  Everything is total on integer matrices; no pivoting decision
involves floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _xgcd(a, b):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


class IntMatrix:
    """Immutable m x n integer matrix."""

    __slots__ = ("rows", "m", "n")

    def __init__(self, rows):
        self.rows = tuple(tuple(int(x) for x in r) for r in rows)
        self.m = len(self.rows)
        self.n = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, m, n):
        return cls([[0] * n for _ in range(m)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "IntMatrix(%r)" % (list(map(list, self.rows)),)

    def __add__(self, other):
        return IntMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        return IntMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix([[a * other for a in r] for r in self.rows])
        if isinstance(other, IntMatrix):
            if self.n != other.m:
                raise ValueError("shape mismatch")
            ot = other.transpose().rows
            return IntMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.rows]
            )
        return NotImplemented

    __rmul__ = lambda self, other: self * other if isinstance(other, int) else NotImplemented

    def transpose(self):
        return IntMatrix(list(zip(*self.rows))) if self.rows else IntMatrix([])

    def trace(self):
        return sum(self.rows[i][i] for i in range(min(self.m, self.n)))

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.m != self.n:
            raise ValueError("det of non-square matrix")
        n = self.m
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def pow(self, k):
        if self.m != self.n:
            raise ValueError("pow of non-square matrix")
        if k < 0:
            raise ValueError("negative power not supported on IntMatrix")
        result = IntMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, vec):
        """Matrix times a vector of ints or Fractions."""
        return tuple(sum(a * v for a, v in zip(row, vec)) for row in self.rows)

    def inverse_rational(self):
        """Exact inverse with Fraction entries (2x2 fast path, else Gauss)."""
        if self.m != self.n:
            raise ValueError("inverse of non-square matrix")
        if self.m == 2:
            (a, b), (c, d) = self.rows
            det = a * d - b * c
            if det == 0:
                raise ZeroDivisionError("singular matrix")
            return [
                [Fraction(d, det), Fraction(-b, det)],
                [Fraction(-c, det), Fraction(a, det)],
            ]
        n = self.n
        aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return [row[n:] for row in aug]


@dataclass(frozen=True)
class SmithForm:
    """U * M * V = S with U, V unimodular and S = diag(d1 | d2 | ...)."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self):
        return tuple(
            self.S.rows[i][i] for i in range(min(self.S.m, self.S.n))
        )

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(M):
    """Smith normal form with transforms, nonnegative divisibility chain."""
    m, n = M.m, M.n
    a = [list(r) for r in M.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i1, i2, x, y, z, w):
        # (row i1, row i2) <- (x*r1 + y*r2, z*r1 + w*r2), det = xw - yz = +-1
        for arr in (a, U):
            r1, r2 = arr[i1], arr[i2]
            for j in range(len(r1)):
                r1[j], r2[j] = x * r1[j] + y * r2[j], z * r1[j] + w * r2[j]

    def col_op(j1, j2, x, y, z, w):
        for arr in (a, V):
            for r in arr:
                r[j1], r[j2] = x * r[j1] + y * r[j2], z * r[j1] + w * r[j2]

    def clear_position(t):
        while True:
            # pick pivot: smallest nonzero |entry| in the remaining block
            piv = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(a[i][j])
                    if v and (best is None or v < best):
                        best, piv = v, (i, j)
            if piv is None:
                return False
            pi, pj = piv
            if pi != t:
                row_op(t, pi, 0, 1, 1, 0)
            if pj != t:
                col_op(t, pj, 0, 1, 1, 0)
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    if a[i][t] % a[t][t] == 0:
                        # plain elimination keeps row t intact: no re-dirtying
                        row_op(t, i, 1, 0, -(a[i][t] // a[t][t]), 1)
                    else:
                        # gcd transform strictly shrinks the pivot
                        g, x, y = _xgcd(a[t][t], a[i][t])
                        p, q = a[t][t] // g, a[i][t] // g
                        row_op(t, i, x, y, -q, p)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    if a[t][j] % a[t][t] == 0:
                        col_op(t, j, 1, 0, -(a[t][j] // a[t][t]), 1)
                    else:
                        g, x, y = _xgcd(a[t][t], a[t][j])
                        p, q = a[t][t] // g, a[t][j] // g
                        col_op(t, j, x, y, -q, p)
                        dirty = True
            if not dirty:
                return True

    r = min(m, n)
    for t in range(r):
        if not clear_position(t):
            break

    # normalize signs
    for t in range(r):
        if a[t][t] < 0:
            for row in (a[t], U[t]):
                for j in range(len(row)):
                    row[j] = -row[j]

    # enforce divisibility d_t | d_{t+1} by gcd/lcm absorption
    changed = True
    while changed:
        changed = False
        for t in range(r - 1):
            d1, d2 = a[t][t], a[t + 1][t + 1]
            if d1 and d2 % d1 == 0:
                continue
            if d1 == 0 and d2 == 0:
                continue
            if d1 == 0:  # move the zero to the end
                row_op(t, t + 1, 0, 1, 1, 0)
                col_op(t, t + 1, 0, 1, 1, 0)
                changed = True
                continue
            # add column t+1 to column t, then re-clear the 2x2 block
            col_op(t, t + 1, 1, 0, 1, 1)
            g, x, y = _xgcd(a[t][t], a[t + 1][t])
            p, q = a[t][t] // g, a[t + 1][t] // g
            row_op(t, t + 1, x, y, -q, p)
            if a[t][t + 1]:
                gg, xx, yy = _xgcd(a[t][t], a[t][t + 1])
                pp, qq = a[t][t] // gg, a[t][t + 1] // gg
                col_op(t, t + 1, xx, yy, -qq, pp)
            if a[t][t] < 0:
                for row in (a[t], U[t]):
                    for j in range(len(row)):
                        row[j] = -row[j]
            if a[t + 1][t + 1] < 0:
                for row in (a[t + 1], U[t + 1]):
                    for j in range(len(row)):
                        row[j] = -row[j]
            changed = True

    return SmithForm(IntMatrix(U), IntMatrix(a), IntMatrix(V))


def inverse_unimodular(M):
    """Integer inverse of a unimodular matrix."""
    inv = M.inverse_rational()
    rows = []
    for r in inv:
        row = []
        for x in r:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(x.numerator)
        rows.append(row)
    return IntMatrix(rows)


def chain_homology(d_out, d_in):
    """Homology ker(d_out)/im(d_in) at the middle of Z^m' <- Z^n <- Z^m.

    d_out is p x n, d_in is n x m, with d_out * d_in = 0.  Returns
    (free_rank, torsion tuple).  The kernel lattice of d_out is read off
    the SNF column transform (a saturated direct summand), and the image
    is expressed in that basis; the quotient is then a cokernel.
    """
    if d_out.n != d_in.m:
        raise ValueError("middle dimensions disagree")
    n = d_out.n
    snf = smith_normal_form(d_out)
    r = snf.rank
    # coordinates of d_in in the column basis V: kernel = last n-r coords
    Vinv = inverse_unimodular(snf.V)
    y = Vinv * d_in
    for i in range(r):
        if any(y.rows[i][j] != 0 for j in range(y.n)):
            raise ValueError("d_out * d_in != 0: not a chain complex")
    X = IntMatrix([y.rows[i] for i in range(r, n)]) if r < n else None
    if X is None:
        return 0, ()
    return cokernel(X)


def cokernel(M):
    """Cokernel of M: Z^m -> Z^m / M(Z^n), as (free_rank, torsion tuple).

    Convention: M acts on column vectors, so the ambient group is Z^(rows).
    Torsion lists the diagonal entries > 1, already a divisibility chain.
    """
    snf = smith_normal_form(M)
    diag = snf.diagonal
    rank = sum(1 for d in diag if d != 0)
    free = M.m - rank
    torsion = tuple(d for d in diag if d > 1)
    return free, torsion
