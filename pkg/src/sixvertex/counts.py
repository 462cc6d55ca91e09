"""Closed-form exact enumerations: ASMs, lozenge tilings, directed paths,
triangoloid counts, and the Lambda_{N,L} convolution.

Everything here is exact arbitrary-precision arithmetic (int / Fraction).
Binomials follow the vanishing convention: C(n, k) = 0 unless 0 <= k <= n.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import DimensionMismatch, NotStrictlyIncreasing, OutOfRange
from .params import ModelParams
from .poly import Polynomial


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# ---------------------------------------------------------------- ASMs


def asm_count(n: int) -> int:
    """Number of n x n alternating sign matrices,
    A_n = prod_{j=0}^{n-1} (3j+1)!/(n+j)!."""
    if n < 1:
        raise OutOfRange(f"n must be >= 1, got {n}")
    num = 1
    den = 1
    for j in range(n):
        num *= math.factorial(3 * j + 1)
        den *= math.factorial(n + j)
    q, r = divmod(num, den)
    assert r == 0
    return q


def asm_refined(n: int, r: int) -> int:
    """Number of size-n ASMs whose unique bottom-row 1 sits in column r.

    A_n(r) = A_n * C(2n-r-1, n-1) * C(n+r-2, n-1) / C(3n-2, n-1).
    Returns 0 for r outside 1..n (vanishing binomials).
    """
    if n < 1:
        raise OutOfRange(f"n must be >= 1, got {n}")
    num = asm_count(n) * binomial(2 * n - r - 1, n - 1) * binomial(n + r - 2, n - 1)
    q, rem = divmod(num, binomial(3 * n - 2, n - 1))
    assert rem == 0, "refined ASM count must be an integer"
    return q


def asm_refined_probability(n: int, r: int) -> Fraction:
    """H_n^(r) at the ice point: A_n(r) / A_n."""
    return Fraction(asm_refined(n, r), asm_count(n))


# ------------------------------------------------- directed lattice paths


def path_corner_count(x: int, y: int, l: int) -> int:
    """Directed paths (0,0)->(x,y) with exactly l north-east corners:
    C(x, l) * C(y, l)."""
    if x < 0 or y < 0 or l < 0:
        raise OutOfRange("x, y, l must be nonnegative")
    return binomial(x, l) * binomial(y, l)


def path_weight_poly(x: int, y: int) -> Polynomial:
    """Corner generating polynomial sum_l C(x,l) C(y,l) w^l."""
    return Polynomial(path_corner_count(x, y, l) for l in range(min(x, y) + 1))


def path_weight_abc(x: int, y: int, params: ModelParams) -> Fraction:
    """Weighted count of augmented directed paths in the y-by-x box,
    with weight (wb/wa) per straight and (wc/wa) per turn:

        (wb/wa)^{x+y+1} * sum_l C(x,l) C(y,l) (wc/wb)^{2l+1}
    """
    tb = params.wb / params.wa
    cb = params.wc / params.wb
    s = Fraction(0)
    for l in range(min(x, y) + 1):
        s += path_corner_count(x, y, l) * cb ** (2 * l + 1)
    return tb ** (x + y + 1) * s


# ------------------------------------------------------- lozenge tilings


def macmahon(a: int, b: int, c: int) -> int:
    """MacMahon's count of lozenge tilings of the (a,b,c)-hexagon,
    via the single-product form prod_{j<b} j!(j+a+c)!/((j+a)!(j+c)!)."""
    if a < 0 or b < 0 or c < 0:
        raise OutOfRange("a, b, c must be nonnegative")
    num = 1
    den = 1
    for j in range(b):
        num *= math.factorial(j) * math.factorial(j + a + c)
        den *= math.factorial(j + a) * math.factorial(j + c)
    q, r = divmod(num, den)
    assert r == 0
    return q


def gelfand_tsetlin(x: Sequence[int]) -> int:
    """Number of trapezoid tilings with triangle positions x_1 < ... < x_n:
    prod_{i<j} (x_j - x_i)/(j - i).

    Evaluated as a running exact-rational product; the final value is
    asserted integral, which catches transcription errors immediately.
    """
    n = len(x)
    if any(x[i] >= x[i + 1] for i in range(n - 1)):
        raise NotStrictlyIncreasing(f"positions must strictly increase: {x}")
    prod = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            prod *= Fraction(x[j] - x[i], j - i)
    assert prod.denominator == 1
    return prod.numerator


def hex_refined_M_ratio(a: int, b: int, c: int, r: int) -> Fraction:
    """M_{a,b,c}(r) / M_{a,b,c} = C(a, r-1) C(b+c-1, c) / C(a+b+c-r, c),
    the first boundary refinement of the hexagon (r in 1..a+1)."""
    if not 1 <= r <= a + 1:
        raise OutOfRange(f"r must be in 1..a+1, got {r}")
    den = binomial(a + b + c - r, c)
    if den == 0:
        # only in fully degenerate hexagons (b+c == 0): single tiling
        return Fraction(1)
    return Fraction(binomial(a, r - 1) * binomial(b + c - 1, c), den)


def hex_refined_N_ratio(a: int, b: int, c: int, r: int) -> Fraction:
    """N_{a,b,c}(r) / M_{a,b,c}, the top-boundary refinement (r in 0..b):

        C(a+r-1, a-1) C(b+c-r-1, c-1) / C(a+b+c-1, b)

    The closed form assumes a, c >= 1; the degenerate slots are fixed by
    the extremal identities N(0) = M_{a,b,c-1} and N(b) = M_{a-1,b,c}:
    for a == 0 the refinement is concentrated at r = 0, for c == 0 at r = b.
    """
    if not 0 <= r <= b:
        raise OutOfRange(f"r must be in 0..b, got {r}")
    M = macmahon(a, b, c)
    if a == 0:
        return Fraction(macmahon(0, b, c - 1) if r == 0 and c >= 1 else (1 if r == 0 else 0), M)
    if c == 0:
        return Fraction(macmahon(a - 1, b, 0) if r == b else 0, M)
    return Fraction(
        binomial(a + r - 1, a - 1) * binomial(b + c - r - 1, c - 1),
        binomial(a + b + c - 1, b),
    )


def hex_refined_N(a: int, b: int, c: int, r: int) -> int:
    """Refined count N_{a,b,c}(r) as an integer.

    Out-of-range r returns 0 (the convention used in the triangoloid
    convolution, where the factors just vanish out of range).
    """
    if r < 0 or r > b:
        return 0
    v = hex_refined_N_ratio(a, b, c, r) * macmahon(a, b, c)
    assert v.denominator == 1
    return v.numerator


def identity_hex_check(a: int, b: int, c: int, r: int) -> bool:
    """Check the hexagon decomposition identity

    sum_{s=0}^{r-1} C(a-s, a-r+1) C(c+s-1, c-1) C(a+b-s-1, b-1)
        = C(a, r-1) C(b+c-1, c) C(a+b+c-1, a) / C(a+b+c-r, c)
    """
    if not 1 <= r <= a + 1:
        raise OutOfRange(f"r must be in 1..a+1, got {r}")
    lhs = sum(
        binomial(a - s, a - r + 1) * binomial(c + s - 1, c - 1) * binomial(a + b - s - 1, b - 1)
        for s in range(r)
    )
    rhs = Fraction(
        binomial(a, r - 1) * binomial(b + c - 1, c) * binomial(a + b + c - 1, a),
        binomial(a + b + c - r, c),
    )
    return lhs == rhs


# ------------------------------------------------------------ triangoloid


def triangoloid_count(a: int, b: int, c: int) -> int:
    """Configurations of the ice-point model on the (a,b,c)-triangoloid:
    A_{a+b+c} * M_{a,b,c}."""
    n = a + b + c
    if n < 1:
        raise OutOfRange("a + b + c must be >= 1")
    return asm_count(n) * macmahon(a, b, c)


def triangoloid_refined(a: int, b: int, c: int, r: int) -> int:
    """Refined triangoloid count, convolution of the square and hexagon
    refinements: A(r) = sum_s A_n(s) N_{c,b,a}(r-s), n = a+b+c.

    Factors vanish outside their proper ranges.
    """
    n = a + b + c
    if not 1 <= r <= a + 2 * b + c:
        raise OutOfRange(f"r must be in 1..a+2b+c, got {r}")
    return sum(asm_refined(n, s) * hex_refined_N(c, b, a, r - s) for s in range(1, r + 1))


def triangoloid_refined_probability(a: int, b: int, c: int, r: int) -> Fraction:
    """Ice-point boundary correlation H_{a,b,c}^(r) in closed form:

    C(3N-2,N-1)^-1 C(a+b+c-1,b)^-1 *
      sum_{s=1}^{r} C(2N-s-1,N-1) C(N+s-2,N-1) C(c+r-s-1,c-1) C(a+b-r+s-1,a-1)

    with N = a+b+c.  Valid for a, b, c >= 1 (the closed form inherits the
    nondegeneracy assumptions of the hexagon refinement).
    """
    n = a + b + c
    if not 1 <= r <= a + 2 * b + c:
        raise OutOfRange(f"r must be in 1..a+2b+c, got {r}")
    s_sum = 0
    for s in range(1, r + 1):
        s_sum += (
            binomial(2 * n - s - 1, n - 1)
            * binomial(n + s - 2, n - 1)
            * binomial(c + r - s - 1, c - 1)
            * binomial(a + b - r + s - 1, a - 1)
        )
    return Fraction(s_sum, binomial(3 * n - 2, n - 1) * binomial(n - 1, b))


# ------------------------------------------------------- Lambda_{N,L}


class LambdaPartition(NamedTuple):
    ratio: Fraction      # Z / (wa^{NL} Z_N)
    absolute: Fraction   # Z itself (requires Z_N)


def lambda_NL_partition(
    N: int,
    L: int,
    params: ModelParams,
    H: Sequence[Fraction],
    Z_N: Fraction,
) -> LambdaPartition:
    """Exact partition function of the model on Lambda_{N,L}:

        Z = wa^{NL} Z_N sum_{k,l} C(k-1,l) C(L,l) t^{L-2l} (t^2-2*delta*t+1)^l H_N^(k)

    ``H`` is the exactboundary-correlation vector H_N^(k) of the N x N
    square at the same weights (index k-1), ``Z_N`` the square partition
    function.  Both come from the enumeration oracle for small N.
    """
    if len(H) != N:
        raise DimensionMismatch(f"H must have length N={N}, got {len(H)}")
    t = params.t
    combo = params.weight_combo  # t^2 - 2 delta t + 1 == (wc/wa)^2
    ratio = Fraction(0)
    for k in range(1, N + 1):
        hk = H[k - 1]
        if hk == 0:
            continue
        for l in range(0, min(k - 1, L) + 1):
            ratio += binomial(k - 1, l) * binomial(L, l) * t ** (L - 2 * l) * combo**l * hk
    absolute = params.wa ** (N * L) * Z_N * ratio
    return LambdaPartition(ratio=ratio, absolute=absolute)
