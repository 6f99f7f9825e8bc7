"""Dense exact linear algebra over Q(i) on lists of lists."""

from __future__ import annotations

from .scalar import ONE, ZERO, GaussianRational, as_gaussian, field_inverse

Matrix = list


def to_matrix(rows) -> Matrix:
    return [[as_gaussian(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def shape(m: Matrix):
    return (len(m), len(m[0]) if m else 0)


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out_row = []
        for col in bt:
            s = ZERO
            for k, x in nz:
                y = col[k]
                if y:
                    s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return out


def matvec(a: Matrix, v) -> list:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def scale(m: Matrix, c) -> Matrix:
    c = as_gaussian(c)
    return [[x * c for x in row] for row in m]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def rref(m: Matrix):
    """Reduced row echelon form. Returns (rows, pivot columns)."""
    a = [list(row) for row in m]
    rows, cols = shape(a)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = field_inverse(a[r][c])
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Matrix) -> list:
    """Basis of {x : m x = 0}, one vector per free column."""
    rows, cols = shape(m)
    if rows == 0:
        return [[ONE if i == j else ZERO for i in range(cols)] for j in range(cols)]
    red, pivots = rref(m)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def solve(m: Matrix, b: Matrix) -> Matrix:
    """Solve m x = b for square invertible m (b may have several columns)."""
    n = len(m)
    k = len(b[0])
    aug = [list(row) + list(bs) for row, bs in zip(m, b)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:n + k] for row in red]


def det(m: Matrix) -> GaussianRational:
    a = [list(row) for row in m]
    n = len(a)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d = d * a[c][c]
        inv = field_inverse(a[c][c])
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def is_identity(m: Matrix) -> bool:
    return all(x == (ONE if i == j else ZERO) for i, row in enumerate(m) for j, x in enumerate(row))


def equal(a: Matrix, b: Matrix) -> bool:
    return shape(a) == shape(b) and all(x == y for r, s in zip(a, b) for x, y in zip(r, s))


def render(m: Matrix) -> list:
    return [[str(x) for x in row] for row in m]
