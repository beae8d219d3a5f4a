"""Deterministic exact linear algebra over the rationals.

Everything here is plain dense Gaussian elimination on ``fractions.Fraction``
entries: no pivoting heuristics beyond leftmost pivot, no floating point,
no randomness.  All higher layers of the toolkit reduce to these routines,
so determinism here makes every downstream report reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

QQ = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class ExactMatrix:
    """Dense matrix of rationals, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[Sequence[Sequence]] = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[ZERO] * cols for _ in range(rows)]
        else:
            if len(data) != rows:
                raise ValueError("row count mismatch")
            self.data = [[_frac(x) for x in row] for row in data]
            for row in self.data:
                if len(row) != cols:
                    raise ValueError("column count mismatch")

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        m = ExactMatrix(n, n)
        for i in range(n):
            m.data[i][i] = ONE
        return m

    @staticmethod
    def zero(rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix(rows, cols)

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        return ExactMatrix(r, c, rows)

    @staticmethod
    def column(entries: Sequence) -> "ExactMatrix":
        return ExactMatrix(len(entries), 1, [[x] for x in entries])

    def copy(self) -> "ExactMatrix":
        m = ExactMatrix(self.rows, self.cols)
        m.data = [row[:] for row in self.data]
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.data[i][j] = _frac(value)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def transpose(self) -> "ExactMatrix":
        m = ExactMatrix(self.cols, self.rows)
        for i in range(self.rows):
            row = self.data[i]
            for j in range(self.cols):
                m.data[j][i] = row[j]
        return m

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in addition")
        m = ExactMatrix(self.rows, self.cols)
        m.data = [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)
        ]
        return m

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in subtraction")
        m = ExactMatrix(self.rows, self.cols)
        m.data = [
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)
        ]
        return m

    def __neg__(self) -> "ExactMatrix":
        m = ExactMatrix(self.rows, self.cols)
        m.data = [[-a for a in row] for row in self.data]
        return m

    def scale(self, c) -> "ExactMatrix":
        c = _frac(c)
        m = ExactMatrix(self.rows, self.cols)
        m.data = [[c * a for a in row] for row in self.data]
        return m

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in product: {self.rows}x{self.cols} * {other.rows}x{other.cols}"
            )
        out = ExactMatrix(self.rows, other.cols)
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return out
        bt = other.transpose().data
        for i in range(self.rows):
            arow = self.data[i]
            orow = out.data[i]
            for j in range(other.cols):
                bcol = bt[j]
                s = ZERO
                for k in range(self.cols):
                    a = arow[k]
                    if a:
                        s += a * bcol[k]
                orow[j] = s
        return out

    def apply(self, vec: Sequence) -> list:
        """Matrix times column vector, returned as a flat list."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.data:
            s = ZERO
            for a, x in zip(row, vec):
                if a and x:
                    s += a * x
            out.append(s)
        return out

    def col(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        m = ExactMatrix(self.rows, self.cols + other.cols)
        m.data = [ra + rb for ra, rb in zip(self.data, other.data)]
        return m

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        m = ExactMatrix(self.rows + other.rows, self.cols)
        m.data = [row[:] for row in self.data] + [row[:] for row in other.data]
        return m


def rref(m: ExactMatrix):
    """Reduced row echelon form.

    Returns ``(reduced, pivot_columns, rank)``.  Pivots are chosen leftmost,
    first nonzero row from the top, so the result is the unique RREF.
    """
    a = [row[:] for row in m.data]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if a[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        if pv != 1:
            inv = ONE / pv
            a[r] = [x * inv for x in a[r]]
        arow = a[r]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], arow)]
        pivots.append(c)
        r += 1
    out = ExactMatrix(nrows, ncols)
    out.data = a
    return out, pivots, len(pivots)


def rank(m: ExactMatrix) -> int:
    return rref(m)[2]


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Basis of the null space, as columns.

    Free variables are taken in increasing column order; basis vector for
    free column f has entry 1 at f and minus the reduced-row entries at the
    pivot positions.
    """
    red, pivots, rk = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    out = ExactMatrix(m.cols, len(free))
    for k, f in enumerate(free):
        out.data[f][k] = ONE
        for r, p in enumerate(pivots):
            v = red.data[r][f]
            if v:
                out.data[p][k] = -v
    return out


def solve(m: ExactMatrix, b: Sequence) -> Optional[list]:
    """Particular solution of ``m x = b`` with all free variables zero.

    Returns ``None`` when the system is inconsistent.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    aug = ExactMatrix(m.rows, m.cols + 1)
    aug.data = [row[:] + [_frac(x)] for row, x in zip(m.data, b)]
    red, pivots, rk = rref(aug)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for r, p in enumerate(pivots):
        x[p] = red.data[r][m.cols]
    return x


def solve_matrix(m: ExactMatrix, b: ExactMatrix) -> Optional[ExactMatrix]:
    """Columnwise :func:`solve`; None if any column is inconsistent."""
    cols = []
    for j in range(b.cols):
        x = solve(m, b.col(j))
        if x is None:
            return None
        cols.append(x)
    out = ExactMatrix(m.cols, b.cols)
    for j, x in enumerate(cols):
        for i, v in enumerate(x):
            out.data[i][j] = v
    return out


def column_space_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns of ``m`` at the pivot positions of its RREF."""
    _, pivots, _ = rref(m)
    out = ExactMatrix(m.rows, len(pivots))
    for k, p in enumerate(pivots):
        for i in range(m.rows):
            out.data[i][k] = m.data[i][p]
    return out


def is_invertible(m: ExactMatrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def inverse(m: ExactMatrix) -> ExactMatrix:
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    aug = m.hstack(ExactMatrix.identity(m.rows))
    red, pivots, rk = rref(aug)
    if rk != m.rows or pivots != list(range(m.rows)):
        raise ValueError("matrix is singular")
    out = ExactMatrix(m.rows, m.rows)
    out.data = [row[m.rows:] for row in red.data]
    return out


# ---------------------------------------------------------------------------
# polynomial helpers (coefficient lists, low degree first)


def _poly_normalize(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return _poly_normalize(out)


def _poly_divmod(p: list, q: list):
    p = p[:]
    dq = len(q) - 1
    lead = q[-1]
    quo = [ZERO] * max(len(p) - dq, 0)
    while len(p) - 1 >= dq and p:
        f = p[-1] / lead
        d = len(p) - 1 - dq
        quo[d] = f
        for i in range(len(q)):
            p[d + i] -= f * q[i]
        _poly_normalize(p)
        if not p:
            break
    return _poly_normalize(quo), p


def _poly_gcd(p: list, q: list) -> list:
    p, q = _poly_normalize(p[:]), _poly_normalize(q[:])
    while q:
        _, r = _poly_divmod(p, q)
        p, q = q, r
    if p:
        lead = p[-1]
        p = [x / lead for x in p]
    return p


def _poly_derivative(p: list) -> list:
    return _poly_normalize([p[i] * i for i in range(1, len(p))])


def _poly_eval(p: list, x: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def minimal_polynomial(m: ExactMatrix) -> list:
    """Monic minimal polynomial via Krylov iteration, low degree first.

    For each standard basis vector, the minimal relation among its Krylov
    iterates is found by elimination; the lcm over all vectors is the
    minimal polynomial of the matrix.
    """
    if m.rows != m.cols:
        raise ValueError("minimal polynomial of non-square matrix")
    n = m.rows
    if n == 0:
        return [ONE]
    result = [ONE]
    for i in range(n):
        v = [ZERO] * n
        v[i] = ONE
        krylov = [v]
        while True:
            v = m.apply(krylov[-1])
            sys = ExactMatrix(n, len(krylov))
            for r in range(n):
                for c, w in enumerate(krylov):
                    sys.data[r][c] = w[r]
            coeffs = solve(sys, v)
            if coeffs is not None and _consistent(sys, coeffs, v):
                local = [-c for c in coeffs] + [ONE]
                break
            krylov.append(v)
        # result = lcm(result, local)
        g = _poly_gcd(result, local)
        quo, rem = _poly_divmod(local, g)
        assert not rem
        result = _poly_mul(result, quo)
        if len(result) == n + 1:
            break
    lead = result[-1]
    return [c / lead for c in result]


def _consistent(sys: ExactMatrix, x: list, b: list) -> bool:
    return sys.apply(x) == [_frac(v) for v in b]


def _rational_roots(p: list) -> Optional[list]:
    """All rational roots of ``p``; None when roots are missing over Q.

    Works on the primitive integer scaling of ``p`` and searches divisors of
    the trailing/leading coefficients.  Returns the full root list exactly
    when ``p`` splits into distinct linear factors over Q (the only case the
    caller accepts), otherwise None.
    """
    p = _poly_normalize(p[:])
    if not p:
        raise ValueError("zero polynomial")
    deg = len(p) - 1
    roots = []
    # strip roots at zero
    while p[0] == 0:
        roots.append(ZERO)
        p = p[1:]
    if len(p) == 1:
        return roots if len(roots) == deg else None
    denom_lcm = 1
    for c in p:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ip = [int(c * denom_lcm) for c in p]
    content = 0
    for c in ip:
        content = gcd(content, abs(c))
    ip = [c // content for c in ip]
    a0, an = abs(ip[0]), abs(ip[-1])

    def divisors(x: int) -> list:
        out = []
        d = 1
        while d * d <= x:
            if x % d == 0:
                out.append(d)
                if d != x // d:
                    out.append(x // d)
            d += 1
        return sorted(out)

    candidates = set()
    for num in divisors(a0):
        for den in divisors(an):
            candidates.add(Fraction(num, den))
            candidates.add(Fraction(-num, den))
    for cand in sorted(candidates):
        if _poly_eval(p, cand) == 0:
            roots.append(cand)
    if len(roots) == deg:
        return sorted(roots)
    return None


def split_spectrum(m: ExactMatrix):
    """Spectral projectors of a matrix with squarefree split minimal polynomial.

    Returns a list of ``(eigenvalue, projector)`` sorted by eigenvalue, or
    ``None`` when the minimal polynomial is not squarefree or has irrational
    roots.  Projectors are the Lagrange interpolation idempotents.
    """
    if m.rows != m.cols:
        raise ValueError("split_spectrum of non-square matrix")
    if m.rows == 0:
        return []
    minpoly = minimal_polynomial(m)
    der = _poly_derivative(minpoly)
    if len(_poly_gcd(minpoly, der)) > 1:
        return None
    roots = _rational_roots(minpoly)
    if roots is None:
        return None
    out = []
    n = m.rows
    for lam in roots:
        proj = ExactMatrix.identity(n)
        denom = ONE
        for mu in roots:
            if mu == lam:
                continue
            shifted = m.copy()
            for i in range(n):
                shifted.data[i][i] -= mu
            proj = proj * shifted
            denom *= lam - mu
        out.append((lam, proj.scale(ONE / denom)))
    return out
