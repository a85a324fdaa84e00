"""Exact linear algebra over GF(q^2) and its subfield GF(q).

Matrices are immutable row-major grids of log-represented field elements
(see gf).  Reduction uses plain Gauss-Jordan with first-nonzero pivoting;
the field has no ordering, so there are no magnitude heuristics and the
reduced form is exact and unique.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .gf import ZERO, ONE, FieldContext


class DimensionMismatch(ValueError):
    pass


class BadShape(ValueError):
    pass


class NonzeroSolutionNotFound(RuntimeError):
    """No all-nonzero vector was found in the searched span."""

    def __init__(self, attempts: int):
        super().__init__(f"no all-nonzero combination found after {attempts} attempts")
        self.attempts = attempts


@dataclass(frozen=True)
class Matrix:
    ctx: FieldContext
    rows: int
    cols: int
    data: tuple  # rows*cols exponents, row-major

    def __post_init__(self):
        if len(self.data) != self.rows * self.cols:
            raise BadShape(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")

    def row(self, i: int) -> tuple:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def entry(self, i: int, j: int) -> int:
        return self.data[i * self.cols + j]

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_strings(self) -> list[list[str]]:
        s = self.ctx.element_to_str
        return [[s(x) for x in self.row(i)] for i in range(self.rows)]


def matrix(ctx: FieldContext, rows: list[list[int]]) -> Matrix:
    r = len(rows)
    c = len(rows[0]) if rows else 0
    if any(len(row) != c for row in rows):
        raise BadShape("ragged rows")
    return Matrix(ctx, r, c, tuple(x for row in rows for x in row))


def _rref(a: Matrix) -> tuple[list[list[int]], list[int]]:
    ctx = a.ctx
    m = a.to_lists()
    pivots: list[int] = []
    r = 0
    for c in range(a.cols):
        pr = next((i for i in range(r, a.rows) if m[i][c] != ZERO), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, x) for x in m[r]]
        for i in range(a.rows):
            if i != r and m[i][c] != ZERO:
                f = m[i][c]
                row_r = m[r]
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == a.rows:
            break
    return m, pivots


def rref(a: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank."""
    m, pivots = _rref(a)
    return matrix(a.ctx, m), len(pivots)


def rank(a: Matrix) -> int:
    return len(_rref(a)[1])


def nullspace_basis(a: Matrix) -> list[tuple]:
    """Basis of the right kernel {u : A u^T = 0}, one vector per free column."""
    ctx = a.ctx
    m, pivots = _rref(a)
    pivot_set = set(pivots)
    free = [j for j in range(a.cols) if j not in pivot_set]
    basis = []
    for f in free:
        u = [ZERO] * a.cols
        u[f] = ONE
        for row_idx, pc in enumerate(pivots):
            u[pc] = ctx.neg(m[row_idx][f])
        basis.append(tuple(u))
    return basis


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} times {b.rows}x{b.cols}")
    ctx = a.ctx
    out = []
    bt = [b.row(i) for i in range(b.rows)]
    for i in range(a.rows):
        ra = a.row(i)
        row = []
        for j in range(b.cols):
            acc = ZERO
            for l in range(a.cols):
                acc = ctx.add(acc, ctx.mul(ra[l], bt[l][j]))
            row.append(acc)
        out.append(row)
    return matrix(ctx, out)


def transpose(a: Matrix) -> Matrix:
    return matrix(a.ctx, [[a.entry(i, j) for i in range(a.rows)] for j in range(a.cols)])


def conjugate(a: Matrix) -> Matrix:
    """Entrywise q-th power."""
    fr = a.ctx.frobenius
    return Matrix(a.ctx, a.rows, a.cols, tuple(fr(x) for x in a.data))


def is_zero_matrix(a: Matrix) -> bool:
    return all(x == ZERO for x in a.data)


def mat_vec(a: Matrix, u: tuple) -> tuple:
    if a.cols != len(u):
        raise DimensionMismatch(f"{a.rows}x{a.cols} times vector of length {len(u)}")
    ctx = a.ctx
    out = []
    for i in range(a.rows):
        acc = ZERO
        for x, y in zip(a.row(i), u):
            acc = ctx.add(acc, ctx.mul(x, y))
        out.append(acc)
    return tuple(out)


def row_equivalent(a: Matrix, b: Matrix) -> bool:
    """True iff the two matrices have the same row space (equal RREF)."""
    if a.rows != b.rows or a.cols != b.cols or a.ctx is not b.ctx:
        raise DimensionMismatch("row equivalence needs equal shapes over one context")
    ra, _ = rref(a)
    rb, _ = rref(b)
    return ra.data == rb.data


def delete_column(a: Matrix, j: int) -> Matrix:
    return matrix(
        a.ctx,
        [[a.entry(i, c) for c in range(a.cols) if c != j] for i in range(a.rows)],
    )


def column_removal_preserves_rank(a: Matrix) -> bool:
    """True iff removing any single column leaves the rank unchanged.

    This is the solvability certificate used by the construction route: a
    wide matrix with this property has an all-nonzero kernel vector over
    the entry field.
    """
    if not 1 <= a.rows < a.cols:
        raise BadShape(f"need 1 <= rows < cols, got {a.rows}x{a.cols}")
    r = rank(a)
    return all(rank(delete_column(a, j)) == r for j in range(a.cols))


def subfield_kernel_basis(a: Matrix) -> list[tuple]:
    """Basis of {u in GF(q)^cols : A u^T = 0} for A over GF(q^2).

    Splits every entry x as x0 + x1*theta with x0, x1 in GF(q) (solving the
    2x2 system given by x and x^q) and stacks the two coordinate matrices;
    the kernel of the stack over GF(q) is exactly the rational kernel.
    """
    ctx = a.ctx
    theta = 1  # exponent of theta itself
    theta_q = ctx.frobenius(theta)
    inv_diff = ctx.inv(ctx.sub(theta, theta_q))
    rows0 = []
    rows1 = []
    for i in range(a.rows):
        r0 = []
        r1 = []
        for x in a.row(i):
            x1 = ctx.mul(ctx.sub(x, ctx.frobenius(x)), inv_diff)
            x0 = ctx.sub(x, ctx.mul(x1, theta))
            r0.append(x0)
            r1.append(x1)
        rows0.append(r0)
        rows1.append(r1)
    stacked = matrix(ctx, rows0 + rows1)
    basis = nullspace_basis(stacked)
    for u in basis:
        assert all(ctx.in_base_field(x) for x in u)
    return basis


def combine(ctx: FieldContext, basis: list[tuple], coeffs: tuple) -> tuple:
    n = len(basis[0])
    out = [ZERO] * n
    for c, vec in zip(coeffs, basis):
        if c == ZERO:
            continue
        for j in range(n):
            out[j] = ctx.add(out[j], ctx.mul(c, vec[j]))
    return tuple(out)


def all_nonzero_kernel_vector(
    ctx: FieldContext,
    basis: list[tuple],
    seed: int = 0,
    exhaustive_budget: int = 10**6,
    random_attempts: int = 10**5,
) -> tuple:
    """A vector in the GF(q)-span of basis with every coordinate nonzero.

    Coefficient tuples are scanned in a fixed order (nonzero field elements
    by ascending exponent, then zero) so the result is deterministic when
    the exhaustive budget (q-1)^dim <= 10^6 allows a full scan; beyond it,
    seeded random sampling with a hard attempt cap takes over.
    """
    if not basis:
        raise NonzeroSolutionNotFound(0)
    q = ctx.q
    dim = len(basis)
    coeff_order = list(ctx.base_field_nonzero()) + [ZERO]
    if (q - 1) ** dim <= exhaustive_budget and q**dim <= 4 * exhaustive_budget:
        attempts = 0
        for coeffs in itertools.product(coeff_order, repeat=dim):
            if all(c == ZERO for c in coeffs):
                continue
            attempts += 1
            u = combine(ctx, basis, coeffs)
            if ZERO not in u:
                return u
        raise NonzeroSolutionNotFound(attempts)
    rng = random.Random(seed)
    for attempt in range(random_attempts):
        coeffs = tuple(rng.choice(coeff_order) for _ in range(dim))
        if all(c == ZERO for c in coeffs):
            continue
        u = combine(ctx, basis, coeffs)
        if ZERO not in u:
            return u
    raise NonzeroSolutionNotFound(random_attempts)
