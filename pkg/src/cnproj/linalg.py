"""Dense exact linear algebra over the scalar fields.

Matrices are plain lists of row lists; vectors are lists.  Everything is
deterministic: pivots are chosen first-nonzero in column order, and nullspace
bases follow the reduced-echelon free-column convention, so basis orders are
reproducible across runs.
"""

from __future__ import annotations


def mat_copy(rows):
    return [list(r) for r in rows]


def zero_vector(field, n):
    return [field.zero] * n


def identity_matrix(field, n):
    rows = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = field.one
    return rows


def matmul(field, a, b, inner: int, out_cols: int):
    """a (m x inner) times b (inner x out_cols)."""
    out = []
    for row in a:
        acc = [field.zero] * out_cols
        for k in range(inner):
            x = row[k]
            if not x:
                continue
            brow = b[k]
            for j in range(out_cols):
                y = brow[j]
                if y:
                    acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def mat_vec(field, a, v):
    out = []
    for row in a:
        s = field.zero
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def rref(field, rows, ncols: int):
    """Reduced row echelon form in place; returns the pivot column list."""
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(field, rows, ncols: int) -> int:
    work = mat_copy(rows)
    return len(rref(field, work, ncols))


def nullspace(field, rows, ncols: int):
    """Basis of the right nullspace, one vector per free column."""
    work = mat_copy(rows)
    pivots = rref(field, work, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, p in enumerate(pivots):
            v[p] = -work[r][f]
        basis.append(v)
    return basis


def solve(field, rows, ncols: int, rhs):
    """One solution of A x = b, or None if inconsistent."""
    work = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = rref(field, work, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for r, p in enumerate(pivots):
        x[p] = work[r][ncols]
    return x


class SpanBasis:
    """Incremental echelon span of vectors of fixed length."""

    def __init__(self, field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def _reduce(self, vec):
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        v = self._reduce(vec)
        for c in range(self.ncols):
            if v[c]:
                inv = self.field.inv(v[c])
                v = [x * inv for x in v]
                # keep reduced form: eliminate the new pivot from old rows
                for i, row in enumerate(self.rows):
                    if row[c]:
                        f = row[c]
                        self.rows[i] = [a - f * b for a, b in zip(row, v)]
                self.rows.append(v)
                self.pivots.append(c)
                return True
        return False

    def contains(self, vec) -> bool:
        return not any(self._reduce(vec))

    @property
    def dim(self) -> int:
        return len(self.rows)


# -- univariate polynomials (coefficient lists, low degree first) -------------


def poly_trim(field, p):
    while p and not p[-1]:
        p.pop()
    return p


def poly_mul(field, a, b):
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return poly_trim(field, out)


def poly_divmod(field, a, b):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    inv = field.inv(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] = a[i + j] - c * y
    return poly_trim(field, q), poly_trim(field, a)


def poly_gcd(field, a, b):
    a, b = list(a), list(b)
    while b:
        _, r = poly_divmod(field, a, b)
        a, b = b, r
    if a:
        inv = field.inv(a[-1])
        a = [x * inv for x in a]
    return a


def poly_xgcd(field, a, b):
    """(g, u, v) with u a + v b = g, g monic."""
    r0, r1 = list(a), list(b)
    u0, u1 = [field.one], []
    v0, v1 = [], [field.one]
    while r1:
        q, r = poly_divmod(field, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, poly_trim(field, [x - y for x, y in _zip_pad(field, u0, poly_mul(field, q, u1))])
        v0, v1 = v1, poly_trim(field, [x - y for x, y in _zip_pad(field, v0, poly_mul(field, q, v1))])
    if r0:
        inv = field.inv(r0[-1])
        r0 = [x * inv for x in r0]
        u0 = [x * inv for x in u0]
        v0 = [x * inv for x in v0]
    return r0, u0, v0


def _zip_pad(field, a, b):
    n = max(len(a), len(b))
    a = list(a) + [field.zero] * (n - len(a))
    b = list(b) + [field.zero] * (n - len(b))
    return zip(a, b)


def poly_derivative(field, p):
    return poly_trim(field, [field.of(i) * p[i] for i in range(1, len(p))])


def poly_eval(field, p, x):
    acc = field.zero if field is not None else 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


def minimal_polynomial(field, mat, n: int):
    """Monic minimal polynomial of an n x n matrix, via Krylov on the flattened powers."""
    if n == 0:
        return [field.one]
    span = SpanBasis(field, n * n)
    powers = [identity_matrix(field, n)]
    span.add([x for row in powers[0] for x in row])
    while True:
        nxt = matmul(field, powers[-1], mat, n, n)
        flat = [x for row in nxt for x in row]
        if not span.add(flat):
            # express nxt in the span of previous powers
            k = len(powers)
            cols = [[x for row in p for x in row] for p in powers]
            rows = [[cols[j][i] for j in range(k)] for i in range(n * n)]
            sol = solve(field, rows, k, flat)
            assert sol is not None
            poly = [-c for c in sol] + [field.one]
            return poly_trim(field, poly)
        powers.append(nxt)


def rational_roots(poly):
    """All rational roots of a polynomial with Fraction coefficients.

    Clears denominators and tries divisor quotients p/q; refuses (returns
    None) when the constant or leading integer is too large to factor at desk
    scale.
    """
    from fractions import Fraction

    if not poly:
        return []
    roots = set()
    lcm = 1
    for c in poly:
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in poly]
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints = ints[1:]  # factor out t
    if not ints:
        return sorted(roots)
    a0, ad = abs(ints[0]), abs(ints[-1])
    if a0 > 10**9 or ad > 10**9:
        return None
    frac_poly = [Fraction(c) for c in poly]
    for p in _divisors(a0):
        for q in _divisors(ad):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if not poly_eval(None, frac_poly, r):
                    roots.add(r)
    return sorted(roots)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int):
    n = abs(n)
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)
