"""Exact linear algebra over the rationals and the integers.

Everything here works on plain lists/tuples of scalars; matrices are
row-major sequences of rows.  No floating point anywhere.
"""

from .rationals import Q, ZERO


def identity(n, one=1):
    return [[one if i == j else one * 0 for j in range(n)] for i in range(n)]


def mat_vec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_mul(a, b):
    nc = len(b[0])
    return [
        [sum(arow[k] * b[k][j] for k in range(len(b))) for j in range(nc)]
        for arow in a
    ]


def solve(mat, rhs):
    """Solve mat * x = rhs exactly.  Raises ValueError on a singular system."""
    n = len(mat)
    a = [[Q(x) for x in row] + [Q(rhs[i])] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] for i in range(n))


def inverse(mat):
    """Exact inverse of a square rational matrix."""
    n = len(mat)
    a = [[Q(x) for x in row] + [Q(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def rank(mat):
    """Rank over the rationals."""
    if not mat:
        return 0
    a = [[Q(x) for x in row] for row in mat]
    nr, nc = len(a), len(a[0])
    r = 0
    for col in range(nc):
        piv = next((i for i in range(r, nr) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nr:
            break
    return r


def charpoly(mat):
    """Characteristic polynomial det(T*I - M) of an integer matrix.

    Returns integer coefficients [c0, c1, ..., cn] with cn = 1
    (Faddeev-LeVerrier, exact).
    """
    n = len(mat)
    m = [[Q(x) for x in row] for row in mat]
    coeffs = [Q(1)]  # leading coefficient
    a = [row[:] for row in m]
    for k in range(1, n + 1):
        if k > 1:
            for i in range(n):
                a[i][i] += coeffs[-1]
            a = mat_mul(m, a)
        ck = -sum(a[i][i] for i in range(n)) / k
        coeffs.append(ck)
    out = []
    for c in reversed(coeffs):  # constant term first
        assert c.denominator == 1
        out.append(int(c))
    return out


# ---------------------------------------------------------------------------
# Integer normal forms


def smith_normal_form(mat):
    """Smith normal form of an integer matrix.

    Returns (d, u, v) with u*mat*v = d, u and v unimodular, and the
    diagonal of d a divisibility chain d1 | d2 | ... of nonnegative ints.
    """
    m = [list(map(int, row)) for row in mat]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    u = identity(nr)
    v = identity(nc)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, f):
        m[dst] = [a + f * b for a, b in zip(m[dst], m[src])]
        u[dst] = [a + f * b for a, b in zip(u[dst], u[src])]

    def addmul_col(dst, src, f):
        for row in m:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(nr, nc):
        # locate the nonzero entry of least magnitude in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                if m[i][t] != 0:
                    addmul_row(i, t, -(m[i][t] // m[t][t]))
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if m[t][j] != 0:
                    addmul_col(j, t, -(m[t][j] // m[t][t]))
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        # every remaining entry must be divisible by the pivot
        fixed = True
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if m[i][j] % m[t][t] != 0:
                    addmul_row(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1
    for i in range(min(nr, nc)):
        if m[i][i] < 0:
            m[i] = [-x for x in m[i]]
            u[i] = [-x for x in u[i]]
    return m, u, v


def integer_kernel(mat):
    """Z-basis of the saturated lattice {x in Z^nc : mat @ x = 0}."""
    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    d, _u, v = smith_normal_form(mat)
    r = sum(1 for i in range(min(nr, nc)) if d[i][i] != 0)
    return [tuple(v[i][j] for i in range(nc)) for j in range(r, nc)]


def unimodular_inverse(v):
    """Inverse of a unimodular integer matrix, returned with int entries."""
    inv = inverse(v)
    out = []
    for row in inv:
        assert all(x.denominator == 1 for x in row)
        out.append([int(x) for x in row])
    return out


# ---------------------------------------------------------------------------
# Integer polynomial helpers (coefficient lists, constant term first)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divmod(a, b):
    """Exact division of integer polynomials with monic-ish divisor."""
    a = list(a)
    q = [0] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        if a[-1] % b[-1] != 0:
            break
        f = a[-1] // b[-1]
        shift = len(a) - len(b)
        q[shift] = f
        for i, y in enumerate(b):
            a[shift + i] -= f * y
        a.pop()
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


def divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


_CYCLO_CACHE = {1: [-1, 1]}


def cyclotomic(d):
    """d-th cyclotomic polynomial over Z, constant term first."""
    if d in _CYCLO_CACHE:
        return _CYCLO_CACHE[d]
    num = [0] * d + [1]
    num[0] = -1  # x^d - 1
    for e in divisors(d)[:-1]:
        num, rem = poly_divmod(num, cyclotomic(e))
        assert rem == [0]
    _CYCLO_CACHE[d] = num
    return num


def euler_phi(d):
    return len(cyclotomic(d)) - 1
