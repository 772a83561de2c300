"""Binary quadratic forms [a, b, c] = aX^2 + bXY + cY^2 and the GL2 action.

Conventions.  For A in GL2(Z) write f.A for f((X, Y) A); this is a right
action, (f.D).W = f.(W D).  On a homogeneous quadratic polynomial
p = v0 X^2 + v1 XY + v2 Y^2 the same substitution gives rho(A) p, and the
quadratic form of f.A is rho(A) applied to f itself.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

Matrix = tuple[tuple[int, int], tuple[int, int]]
BQF = tuple[int, int, int]

IDENTITY: Matrix = ((1, 0), (0, 1))


def disc(f: BQF) -> int:
    """4ac - b^2, nonnegative on semidefinite forms."""
    a, b, c = f
    return 4 * a * c - b * b


def is_semidefinite(f: BQF) -> bool:
    a, b, c = f
    return a >= 0 and c >= 0 and 4 * a * c - b * b >= 0


def is_reduced(f: BQF) -> bool:
    a, b, c = f
    if 4 * a * c - b * b == 0:
        return a == 0 and b == 0 and c >= 0
    return 0 <= b <= a <= c


def matmul(A: Matrix, B: Matrix) -> Matrix:
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def det(A: Matrix) -> int:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def adjugate(A: Matrix) -> Matrix:
    return ((A[1][1], -A[0][1]), (-A[1][0], A[0][0]))


def inverse_unimodular(A: Matrix) -> Matrix:
    d = det(A)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    (p, q), (r, s) = adjugate(A)
    return ((p * d, q * d), (r * d, s * d))


def transpose(A: Matrix) -> Matrix:
    return ((A[0][0], A[1][0]), (A[0][1], A[1][1]))


def act_on_poly(A: Matrix, v):
    """rho(A) v: substitute (X, Y) <- (X, Y) A in v0 X^2 + v1 XY + v2 Y^2.

    Scalars (j = 0) pass through unchanged.
    """
    if not isinstance(v, tuple):
        return v
    (p, q), (r, s) = A
    v0, v1, v2 = v
    # X -> pX + rY, Y -> qX + sY
    return (
        v0 * p * p + v1 * p * q + v2 * q * q,
        2 * v0 * p * r + v1 * (p * s + q * r) + 2 * v2 * q * s,
        v0 * r * r + v1 * r * s + v2 * s * s,
    )


def transform(f: BQF, A: Matrix) -> BQF:
    """f.A = f((X, Y) A)."""
    return act_on_poly(A, f)


def rho_matrix(A: Matrix) -> tuple[tuple[int, int, int], ...]:
    """3x3 matrix R with rho(A) v = R v on (v0, v1, v2)."""
    cols = [act_on_poly(A, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def _reduce_singular(f: BQF) -> tuple[BQF, Matrix]:
    a, b, c = f
    m = gcd(gcd(a, b), c)
    if m == 0:
        return (0, 0, 0), IDENTITY
    # f = m (uX + vY)^2 with gcd(u, v) = 1 and u >= 0
    u, v = isqrt(a // m), isqrt(c // m)
    if b < 0:
        v = -v
    # choose x, y with u x + v y = 1; A = [[-v, u], [x, y]] kills X
    g, x, y = _ext_gcd(u, v)
    if g != 1:
        raise ArithmeticError(f"unexpected content in {f}")
    A = ((-v, u), (x, y))
    # f(X', Y') with (X', Y') = (X, Y) A = (-vX + xY, uX + yY)
    out = transform(f, A)
    assert out == (0, 0, m), (f, out)
    return out, A


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@lru_cache(maxsize=1 << 20)
def reduce_bqf(f: BQF) -> tuple[BQF, Matrix]:
    """Reduced representative g = f.A together with A.

    Positive definite forms reduce to 0 <= b <= a <= c; semidefinite
    singular forms reduce to [0, 0, m].
    """
    a, b, c = f
    D = 4 * a * c - b * b
    if D < 0 or a < 0 or c < 0:
        raise ValueError(f"{list(f)} is not positive semidefinite")
    if D == 0:
        return _reduce_singular(f)
    A = IDENTITY
    while True:
        # shear (a, b, c) -> (a, b + 2an, an^2 + bn + c) bringing -a <= b <= a
        n = (a - b) // (2 * a) if abs(b) > a else 0
        if n:
            b, c = b + 2 * a * n, a * n * n + b * n + c
            A = matmul(((1, 0), (n, 1)), A)
        if a > c:
            a, c = c, a
            A = matmul(((0, 1), (1, 0)), A)
            continue
        break
    if b < 0:
        b = -b
        A = matmul(((1, 0), (0, -1)), A)
    return (a, b, c), A


def reduced_forms(D: int, S: int = 0) -> list[BQF]:
    """Reduced positive definite forms with 0 < disc <= D, then [0, 0, c] for c <= S.

    Sorted in the canonical key order (disc, a, b), then singular by c.
    """
    out = []
    amax = isqrt(D // 3)
    for a in range(1, amax + 1):
        for b in range(0, a + 1):
            c = a
            while 4 * a * c - b * b <= D:
                out.append((a, b, c))
                c += 1
    out.sort(key=lambda f: (disc(f), f[0], f[1]))
    out.extend((0, 0, c) for c in range(S + 1))
    return out


def canonical_key(f: BQF) -> tuple:
    if disc(f) == 0:
        return (1, f[2], 0, 0)
    return (0, disc(f), f[0], f[1])
