"""Generalized Reed-Solomon codes over GF(q^2) and their quantum parameters.

A GRS code is given by distinct locators a_1..a_n (zero allowed once),
nonzero column multipliers v_1..v_n and a dimension k; its generator
matrix in the monomial basis has entry (i, j) = v_j * a_j^i with the
convention 0^0 = 1.

Two independent containment checks are provided and cross-asserted by the
test suite: the power-sum criterion (sum of a_l^(qi+j) v_l^(q+1) vanishes
for all 0 <= i, j <= k-1) and the Gram check G * conj(G)^T = 0.  Keeping
both paths separate catches sign and exponent bugs in either one.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .gf import ZERO, FieldContext
from .linalg import Matrix, conjugate, mat_mul, matrix, transpose

EXHAUSTIVE_SUBSET_BUDGET = 2_000_000
DEFAULT_SAMPLED_TRIALS = 100_000


class NotSelfOrthogonal(ValueError):
    pass


class DimensionTooLarge(ValueError):
    pass


class NotMds(ValueError):
    pass


class DistanceTooSmall(ValueError):
    pass


class MdsBudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class GrsCode:
    ctx: FieldContext
    locators: tuple
    multipliers: tuple
    k: int

    def __post_init__(self):
        n = len(self.locators)
        if len(self.multipliers) != n:
            raise ValueError("locators and multipliers must have equal length")
        if len(set(self.locators)) != n:
            raise ValueError("locators must be pairwise distinct")
        if any(v == ZERO for v in self.multipliers):
            raise ValueError("multipliers must be nonzero")
        if not 1 <= self.k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={n}")
        if n > self.ctx.order:
            raise ValueError("more locators than field elements")

    @property
    def n(self) -> int:
        return len(self.locators)


@dataclass(frozen=True)
class QuantumParams:
    """Parameters [[n, k, d]]_q of a quantum code."""

    n: int
    k: int
    d: int
    q: int

    def __post_init__(self):
        if self.n < 1 or self.d < 1 or self.k < 0:
            raise ValueError(f"invalid quantum parameters [[{self.n},{self.k},{self.d}]]")

    @property
    def is_mds(self) -> bool:
        return 2 * self.d == self.n - self.k + 2

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d, "q": self.q}

    def __str__(self) -> str:
        return f"[[{self.n},{self.k},{self.d}]]_{self.q}"


@dataclass(frozen=True)
class MdsResult:
    mode: str  # "exhaustive" | "sampled"
    passed: bool
    checked: int
    trials: int | None = None
    failing_columns: tuple | None = None


def generator_matrix(code: GrsCode) -> Matrix:
    """k x n matrix with entry (i, j) = v_j * a_j^i, 0^0 = 1."""
    ctx = code.ctx
    rows = []
    for i in range(code.k):
        rows.append([ctx.mul(v, ctx.pow(a, i)) for a, v in zip(code.locators, code.multipliers)])
    return matrix(ctx, rows)


def hermitian_power_sum(code: GrsCode, i: int, j: int) -> int:
    """Sum over positions of a^(qi+j) * v^(q+1)."""
    ctx = code.ctx
    exp = ctx.q * i + j
    acc = ZERO
    for a, v in zip(code.locators, code.multipliers):
        acc = ctx.add(acc, ctx.mul(ctx.pow(a, exp), ctx.norm(v)))
    return acc


def is_hermitian_self_orthogonal(code: GrsCode) -> tuple[bool, tuple | None]:
    """Power-sum criterion; on failure returns the first failing (i, j)."""
    for i in range(code.k):
        for j in range(code.k):
            if hermitian_power_sum(code, i, j) != ZERO:
                return False, (i, j)
    return True, None


def gram_check(code: GrsCode) -> tuple[bool, tuple | None]:
    """Containment via G * conj(G)^T = 0; independent of the power sums."""
    g = generator_matrix(code)
    prod = mat_mul(g, transpose(conjugate(g)))
    for i in range(prod.rows):
        for j in range(prod.cols):
            if prod.entry(i, j) != ZERO:
                return False, (i, j)
    return True, None


def _columns_nonsingular(ctx: FieldContext, cols: list[tuple], k: int) -> bool:
    # Gauss elimination specialized for square nonsingularity, kept tight
    # because the exhaustive subset check calls it millions of times.
    n1 = ctx.n1
    zech = ctx.zech
    half = ctx.half
    m = [list(row) for row in zip(*cols)]
    for c in range(k):
        pr = -1
        for i in range(c, k):
            if m[i][c] >= 0:
                pr = i
                break
        if pr < 0:
            return False
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
        row_c = m[c]
        inv_p = (n1 - row_c[c]) % n1
        for i in range(c + 1, k):
            row_i = m[i]
            x = row_i[c]
            if x < 0:
                continue
            f = (x + inv_p) % n1
            row_i[c] = -1
            for j in range(c + 1, k):
                y = row_c[j]
                if y < 0:
                    continue
                t = (f + y + half) % n1  # -f*y
                z = row_i[j]
                if z < 0:
                    row_i[j] = t
                else:
                    s = zech[(t - z) % n1]
                    row_i[j] = -1 if s < 0 else (z + s) % n1
    return True


def mds_check(
    code: GrsCode,
    mode: str = "exhaustive",
    trials: int = DEFAULT_SAMPLED_TRIALS,
    seed: int = 0,
) -> MdsResult:
    """Check that every k-subset of generator columns is nonsingular.

    Exhaustive mode walks all C(n, k) subsets in lexicographic order and is
    refused above the subset budget; sampled mode draws seeded random
    subsets.  Either way the first singular subset is reported.
    """
    ctx = code.ctx
    g = generator_matrix(code)
    cols = [tuple(g.entry(i, j) for i in range(code.k)) for j in range(code.n)]
    k = code.k
    if mode == "exhaustive":
        total = math.comb(code.n, k)
        if total > EXHAUSTIVE_SUBSET_BUDGET:
            raise MdsBudgetExceeded(
                f"C({code.n},{k}) = {total} exceeds the exhaustive budget {EXHAUSTIVE_SUBSET_BUDGET}"
            )
        for subset in itertools.combinations(range(code.n), k):
            if not _columns_nonsingular(ctx, [cols[j] for j in subset], k):
                return MdsResult("exhaustive", False, total, failing_columns=subset)
        return MdsResult("exhaustive", True, total)
    if mode == "sampled":
        rng = random.Random(seed)
        for _ in range(trials):
            subset = tuple(sorted(rng.sample(range(code.n), k)))
            if not _columns_nonsingular(ctx, [cols[j] for j in subset], k):
                return MdsResult("sampled", False, trials, trials=trials, failing_columns=subset)
        return MdsResult("sampled", True, trials, trials=trials)
    raise ValueError(f"unknown mode {mode!r}")


def quantum_params(code: GrsCode, skip_check: bool = False) -> QuantumParams:
    """Parameters [[n, n-2k, k+1]]_q of the derived quantum code."""
    if code.n < 2 * code.k:
        raise DimensionTooLarge(f"need n >= 2k, got n={code.n}, k={code.k}")
    if not skip_check:
        ok, witness = is_hermitian_self_orthogonal(code)
        if not ok:
            raise NotSelfOrthogonal(f"power sum (i,j)={witness} is nonzero")
    return QuantumParams(n=code.n, k=code.n - 2 * code.k, d=code.k + 1, q=code.ctx.q)


def propagate(params: QuantumParams) -> QuantumParams:
    """Shorten [[n, k, d]] to [[n-1, k+1, d-1]], preserving MDS-ness."""
    if not params.is_mds:
        raise NotMds(f"{params} does not meet the quantum Singleton equality")
    if params.d < 2:
        raise DistanceTooSmall("need d >= 2 to shorten")
    return QuantumParams(n=params.n - 1, k=params.k + 1, d=params.d - 1, q=params.q)
