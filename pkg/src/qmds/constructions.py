"""Four families of Hermitian self-orthogonal GRS codes over GF(q^2).

Setup: q odd prime power, h even with q^2 - 1 = 2hm, and (q-1)/h odd for
families 1-2 or (q+1)/h odd for families 3-4 (quotient 2*tau + 1, tau >= 1).
Derived elements of GF(q^2): gamma = theta^(2h) of order m, alpha = theta^m
of order 2h, beta = theta^(2m) of order h, and xi = theta^(-(q+1)/2) with
xi^q = -xi.

Families 1 and 3 use locators {0} followed by r cosets theta^(i_l)<gamma>
with a constant multiplier per coset (length rm + 1); families 2 and 4 drop
the zero locator and give position nu of each coset the multiplier
v_l * theta^(nu*h) (length rm).  Orthogonality of all power sums reduces to
a small linear system: the only exponents qi + j (families 1/3) or
qi + j + (q+1)/2 (families 2/4) whose coset sums survive are the multiples
s*m of a residue s in a closed-form set, and one matrix row per surviving
residue forces those sums to vanish.  A kernel vector with all coordinates
in GF(q)* then exists whenever deleting any single column of the system
(or of a larger reference matrix containing its rows) preserves the rank,
plus, for matrices not fixed entrywise by Frobenius, row equivalence with
the conjugate matrix.

Everything here is pure and deterministic for fixed inputs and seed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .gf import ZERO, ONE, FieldContext, make_context
from .linalg import (
    Matrix,
    NonzeroSolutionNotFound,
    all_nonzero_kernel_vector,
    column_removal_preserves_rank,
    conjugate,
    matrix,
    nullspace_basis,
    row_equivalent,
    subfield_kernel_basis,
)
from .grs import GrsCode, is_hermitian_self_orthogonal, propagate, quantum_params


class HypothesisViolated(ValueError):
    """A parameter set falls outside a construction's stated ranges."""


class SolvabilityRouteFailed(RuntimeError):
    """A rank or row-equivalence precondition failed for an assembled matrix."""

    def __init__(self, message: str, mat: Matrix | None = None):
        if mat is not None:
            message += "; matrix rows: " + repr(mat.to_strings())
        super().__init__(message)
        self.matrix = mat


FAMILIES = (1, 2, 3, 4)
CASES = {1: (1, 2), 2: (1,), 3: (1, 2), 4: (1, 2, 3)}

# Lemma variant per (family, case): each family's index-set lemma comes in
# one or two versions, distinguished by their t-range and middle block.
VARIANT_FOR_CASE = {
    (1, 1): "A",
    (1, 2): "A",
    (2, 1): "A",
    (3, 1): "B",
    (3, 2): "A",
    (4, 1): "A",
    (4, 2): "A",
    (4, 3): "B",
}


def _ap(a: int, b: int) -> list[int]:
    """Arithmetic progression a, a+2, ..., b; empty when a > b."""
    return list(range(a, b + 1, 2)) if a <= b else []


def is_odd_prime_power(q: int) -> tuple[int, int] | None:
    """(p, e) if q = p^e for an odd prime p, else None."""
    if q < 3 or q % 2 == 0:
        return None
    p = 3
    while p * p <= q:
        if q % p == 0:
            e = 0
            v = q
            while v % p == 0:
                v //= p
                e += 1
            return (p, e) if v == 1 else None
        p += 2
    return (q, 1)


def odd_prime_powers(limit: int) -> list[tuple[int, int, int]]:
    """All (q, p, e) with q = p^e odd, 3 <= q <= limit."""
    out = []
    for q in range(3, limit + 1, 2):
        pe = is_odd_prime_power(q)
        if pe is not None:
            out.append((q, pe[0], pe[1]))
    return out


def admissible_h_values(q: int, family: int) -> list[int]:
    """Even h dividing q-1 (families 1-2) or q+1 (families 3-4) with odd
    quotient at least 3."""
    side = q - 1 if family in (1, 2) else q + 1
    return [
        h
        for h in range(2, side + 1, 2)
        if side % h == 0 and (side // h) % 2 == 1 and side // h >= 3
    ]


def shift_for(family: int, q: int) -> int:
    return (q + 1) // 2 if family in (2, 4) else 0


def lemma_t_range(family: int, variant: str, h: int) -> range:
    if variant == "A" and family in (1, 3, 4):
        return range(0, h // 2)
    if variant == "A" and family == 2:
        return range(1, h // 2 + 1)
    if variant == "B" and family in (3, 4):
        return range(1, h // 2 + 1)
    raise ValueError(f"family {family} has no lemma variant {variant!r}")


def residue_pattern(family: int, variant: str, h: int, t: int) -> set[int]:
    """The closed-form residue set of the (family, variant) lemma."""
    if t not in lemma_t_range(family, variant, h):
        raise HypothesisViolated(f"t={t} outside the lemma range for family {family}{variant}")
    if family == 1:
        return {0} | set(_ap(1, 2 * t - 1)) | set(_ap(h + 1, h + 2 * t - 1)) | set(_ap(2, h + 2 * t))
    if family == 2:
        return set(_ap(2, 2 * t - 2)) | set(_ap(h + 2, h + 2 * t - 2)) | set(_ap(1, h + 2 * t - 1))
    if family == 3:
        base = {0} | set(_ap(1, h - 1)) | set(_ap(2 * h - 2 * t + 1, h + 2 * t - 1))
        if variant == "A":
            return base | set(_ap(h - 2 * t, h + 2 * t))
        return base | set(_ap(h - 2 * t + 2, h + 2 * t - 2))
    if family == 4:
        base = set(_ap(2, h - 2)) | set(_ap(h - 2 * t + 1, h + 2 * t - 1))
        if variant == "A":
            return base | set(_ap(2 * h - 2 * t, h + 2 * t))
        return base | set(_ap(2 * h - 2 * t + 2, h + 2 * t - 2))
    raise ValueError(f"unknown family {family}")


def lemma_k_bound(family: int, variant: str, q: int, h: int, t: int) -> int:
    """Largest k covered by the (family, variant) lemma at parameter t."""
    if family == 1:
        bound = Fraction((h + 2 * t + 1) * (q - 1), 2 * h) + Fraction(1, 2)
    elif family == 2:
        bound = Fraction((h + 2 * t) * (q - 1), 2 * h)
    elif family == 3 and variant == "A":
        bound = Fraction((h + 2 * t + 1) * (q + 1), 2 * h) - Fraction(3, 2)
    elif family == 3 and variant == "B":
        bound = Fraction((h + 2 * t) * (q + 1), 2 * h) - 1
    elif family == 4 and variant == "A":
        bound = Fraction((h + 2 * t + 1) * (q + 1), 2 * h) - Fraction(3, 2)
    elif family == 4 and variant == "B":
        bound = Fraction((h + 2 * t) * (q + 1), 2 * h) - 2
    else:
        raise ValueError(f"unknown family/variant {family}{variant}")
    if bound.denominator != 1:
        raise HypothesisViolated(
            f"k bound {bound} is not an integer for family {family}{variant}, q={q}, h={h}, t={t}"
        )
    return int(bound)


@dataclass(frozen=True)
class ResidueSet:
    """Residues s with q*i + j + shift = s*m for some 0 <= i, j <= k-1."""

    shift: int
    values: tuple
    witnesses: dict  # s -> (i, j)


def residue_set(family: int, variant: str, q: int, h: int, t: int, k: int) -> ResidueSet:
    """Closed-form residue set at dimension k, with one witness pair per s.

    A residue s of the lemma pattern is realized at dimension k exactly
    when the base-q digits (i, j) of s*m - shift both lie below k; the
    digit pair is the unique witness.
    """
    if (q * q - 1) % (2 * h) != 0:
        raise HypothesisViolated(f"2h = {2*h} does not divide q^2-1 = {q*q-1}")
    m = (q * q - 1) // (2 * h)
    shift = shift_for(family, q)
    if not 1 <= k <= q - 1:
        raise HypothesisViolated(f"need 1 <= k <= q-1, got k={k}")
    witnesses = {}
    for s in sorted(residue_pattern(family, variant, h, t)):
        v = s * m - shift
        if v < 0:
            continue
        i, j = divmod(v, q)
        if i <= k - 1 and j <= k - 1:
            witnesses[s] = (i, j)
    return ResidueSet(shift=shift, values=tuple(sorted(witnesses)), witnesses=witnesses)


# -- theorem-level parameter handling ---------------------------------------


@dataclass(frozen=True)
class ConstructionParams:
    ctx: FieldContext
    family: int
    case: int
    h: int
    tau: int
    m: int
    r: int
    t: int
    k: int
    coset_exponents: tuple

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def n(self) -> int:
        return self.r * self.m + (1 if self.family in (1, 3) else 0)

    @property
    def variant(self) -> str:
        return VARIANT_FOR_CASE[(self.family, self.case)]

    # derived elements, as exponents of theta
    def gamma(self) -> int:
        return (2 * self.h) % self.ctx.n1

    def alpha(self) -> int:
        return self.m % self.ctx.n1

    def beta(self) -> int:
        return (2 * self.m) % self.ctx.n1

    def xi(self) -> int:
        return self.ctx.xi_exponent


def _r_range_check(family: int, case: int, h: int, r: int) -> str | None:
    """None if r is admissible, else the violated bound as text."""
    if family == 1 and case == 1:
        return None if h // 2 + 1 <= r <= h else "h/2+1 <= r <= h"
    if family == 1 and case == 2:
        return None if (h < r < 2 * h and r % 2 == 1) else "odd r with h < r < 2h"
    if family == 2:
        return None if h // 2 + 1 < r <= h else "h/2+1 < r <= h"
    if family == 3 and case == 1:
        return None if (h < r and 2 * r < 3 * h and r % 2 == 1) else "odd r with h < r < 3h/2"
    if family == 3 and case == 2:
        return None if (2 * r > 3 * h and r < 2 * h and r % 2 == 1) else "odd r with 3h/2 < r < 2h"
    if family == 4 and case == 1:
        return None if h // 2 <= r <= h else "h/2 <= r <= h"
    if family == 4 and case == 2:
        return None if (h < r and 2 * r < 3 * h and r % 2 == 1) else "odd r with h < r < 3h/2"
    if family == 4 and case == 3:
        return None if (2 * r >= 3 * h and r < 2 * h and r % 2 == 1) else "odd r with 3h/2 <= r < 2h"
    raise ValueError(f"unknown (family, case) = ({family}, {case})")


def theorem_t(family: int, case: int, h: int, r: int) -> int:
    if (family, case) in ((1, 1), (4, 1)):
        return 0
    if family == 2:
        return 1
    if (family, case) in ((1, 2), (3, 2)):
        return (r - h - 1) // 2
    if (family, case) in ((3, 1), (4, 2), (4, 3)):
        return (r - h + 1) // 2
    raise ValueError(f"unknown (family, case) = ({family}, {case})")


def kmax(family: int, case: int, q: int, h: int, r: int) -> int:
    """Largest admissible dimension for the (family, case) construction."""
    bad = _r_range_check(family, case, h, r)
    if bad is not None:
        raise HypothesisViolated(f"r={r} violates {bad} (family {family}, case {case}, h={h})")
    t = theorem_t(family, case, h, r)
    variant = VARIANT_FOR_CASE[(family, case)]
    return min(lemma_k_bound(family, variant, q, h, t), q - 1)


def make_params(
    ctx: FieldContext,
    family: int,
    case: int,
    h: int,
    r: int,
    k: int | None = None,
    coset_exponents: tuple | None = None,
) -> ConstructionParams:
    """Validate a parameter set and fill in derived values.

    With k omitted the maximal admissible dimension is used; with
    coset_exponents omitted the canonical choice 0..r-1 is used.
    """
    q = ctx.q
    if family not in FAMILIES:
        raise HypothesisViolated(f"family must be one of {FAMILIES}, got {family}")
    if case not in CASES[family]:
        raise HypothesisViolated(f"family {family} has cases {CASES[family]}, got {case}")
    if h < 2 or h % 2 != 0:
        raise HypothesisViolated(f"h must be a positive even integer, got {h}")
    side = q - 1 if family in (1, 2) else q + 1
    side_name = "q-1" if family in (1, 2) else "q+1"
    if side % h != 0 or (side // h) % 2 == 0:
        raise HypothesisViolated(f"({side_name})/h = {side}/{h} must be an odd integer")
    tau = (side // h - 1) // 2
    if tau < 1:
        raise HypothesisViolated(f"({side_name})/h = 2*tau+1 needs tau >= 1, got tau={tau}")
    if (q * q - 1) % (2 * h) != 0:  # pragma: no cover - implied by h | side
        raise HypothesisViolated(f"2h = {2*h} must divide q^2-1 = {q*q-1}")
    m = (q * q - 1) // (2 * h)
    bad = _r_range_check(family, case, h, r)
    if bad is not None:
        raise HypothesisViolated(f"r={r} violates {bad} (family {family}, case {case}, h={h})")
    km = kmax(family, case, q, h, r)
    if k is None:
        k = km
    if not 1 <= k <= km:
        raise HypothesisViolated(f"k={k} violates 1 <= k <= kmax = {km}")
    # smallest lemma parameter whose k-range covers the requested k; at
    # k = kmax this is exactly the theorem's t
    variant = VARIANT_FOR_CASE[(family, case)]
    t = next(
        tt
        for tt in lemma_t_range(family, variant, h)
        if k <= lemma_k_bound(family, variant, q, h, tt)
    )
    if coset_exponents is None:
        coset_exponents = tuple(range(r))
    else:
        coset_exponents = tuple(int(x) for x in coset_exponents)
    if len(coset_exponents) != r:
        raise HypothesisViolated(f"need {r} coset exponents, got {len(coset_exponents)}")
    if len({x % (2 * h) for x in coset_exponents}) != r:
        raise HypothesisViolated("coset exponents must be distinct modulo 2h")
    if r <= h and len({x % h for x in coset_exponents}) != r:
        raise HypothesisViolated("coset exponents must be distinct modulo h when r <= h")
    # shape bounds of the nonzero-solution machinery (provably satisfied
    # for tau >= 1 since 2h < q+1, checked anyway)
    cols = r + 1 if family in (1, 3) else r
    field_cap = q + 1 if (family, case) in ((1, 1), (2, 1)) else q * q + 1
    if cols >= field_cap:
        raise HypothesisViolated(
            f"system has {cols} columns, breaking the bound cols < {field_cap}"
        )
    return ConstructionParams(
        ctx=ctx,
        family=family,
        case=case,
        h=h,
        tau=tau,
        m=m,
        r=r,
        t=t,
        k=k,
        coset_exponents=coset_exponents,
    )


def params_residue_set(params: ConstructionParams) -> ResidueSet:
    return residue_set(params.family, params.variant, params.q, params.h, params.t, params.k)


def build_locators(params: ConstructionParams) -> tuple:
    """The n code locators: r cosets of <gamma>, preceded by 0 for families 1/3."""
    ctx = params.ctx
    n1 = ctx.n1
    g = 2 * params.h
    out = [ZERO] if params.family in (1, 3) else []
    for i_l in params.coset_exponents:
        for nu in range(params.m):
            out.append((i_l + g * nu) % n1)
    assert len(set(out)) == len(out)
    return tuple(out)


def _matrix_rows(params: ConstructionParams) -> list[int]:
    """Sorted surviving residues that need a matrix row (s = 0 excluded)."""
    realized = params_residue_set(params).values
    return sorted(set(realized) - {0})


def build_coefficient_matrix(params: ConstructionParams) -> Matrix:
    """The linear system whose all-nonzero kernel vector fixes the multipliers.

    Row for residue s has entries alpha^(s*i_l) (families 1/3, with an
    extra leading column and an all-ones first row tying the zero-locator
    multiplier to the coset sums) or alpha^(s*i_l) * xi^(i_l) (families
    2/4).
    """
    ctx = params.ctx
    n1 = ctx.n1
    m = params.m
    xi = ctx.xi_exponent
    rows = []
    if params.family in (1, 3):
        rows.append([ONE] * (params.r + 1))
        for s in _matrix_rows(params):
            rows.append([ZERO] + [(m * s * i_l) % n1 for i_l in params.coset_exponents])
    else:
        for s in _matrix_rows(params):
            rows.append([(m * s * i_l + xi * i_l) % n1 for i_l in params.coset_exponents])
    if not rows:
        return Matrix(ctx, 0, params.r, ())
    return matrix(ctx, rows)


def _reference_matrix(params: ConstructionParams) -> tuple[Matrix, set[int]] | None:
    """The larger consecutive-residue matrix whose kernel certifies
    solvability for the conjugate-descent route, with its residue cover."""
    ctx = params.ctx
    n1 = ctx.n1
    m = params.m
    if (params.family, params.case) in ((1, 2), (3, 1), (3, 2)):
        rows = [[ONE] * (params.r + 1)]
        for s in range(1, params.r):
            rows.append([ZERO] + [(m * s * i_l) % n1 for i_l in params.coset_exponents])
        return matrix(ctx, rows), set(range(params.r))
    if (params.family, params.case) in ((4, 2), (4, 3)):
        xi = ctx.xi_exponent
        rows = [
            [(m * s * i_l + xi * i_l) % n1 for i_l in params.coset_exponents]
            for s in range(2, params.r + 1)
        ]
        return matrix(ctx, rows), set(range(2, params.r + 1))
    return None


def construct(params: ConstructionParams, seed: int = 0) -> GrsCode:
    """Build the GRS code of a validated parameter set and verify it.

    Families 1(1) and 2 assemble a matrix over GF(q) and use the
    column-deletion rank certificate directly; the remaining cases work
    over GF(q^2), check row equivalence with the conjugate matrix, and
    descend the kernel to GF(q).  The all-nonzero kernel search is
    deterministic for a fixed seed.
    """
    ctx = params.ctx
    a = build_coefficient_matrix(params)
    subfield_route = (params.family, params.case) in ((1, 1), (2, 1))
    if a.rows == 0:
        kernel = [
            tuple(ONE if j == i else ZERO for j in range(params.r)) for i in range(params.r)
        ]
    elif subfield_route:
        if not all(ctx.in_base_field(x) for x in a.data):
            raise SolvabilityRouteFailed("system matrix is not fixed by Frobenius", a)
        if not column_removal_preserves_rank(a):
            raise SolvabilityRouteFailed("column deletion changes the rank", a)
        kernel = nullspace_basis(a)
        assert all(ctx.in_base_field(x) for u in kernel for x in u)
    else:
        if not row_equivalent(a, conjugate(a)):
            raise SolvabilityRouteFailed("matrix is not row equivalent to its conjugate", a)
        ref = _reference_matrix(params)
        if ref is not None and set(_matrix_rows(params)) <= ref[1]:
            cert = ref[0]  # kernel(reference) sits inside kernel(a)
        else:
            cert = a
        if not column_removal_preserves_rank(cert):
            raise SolvabilityRouteFailed("column deletion changes the rank", cert)
        kernel = subfield_kernel_basis(a)
    u = all_nonzero_kernel_vector(ctx, kernel, seed=seed)

    locators = build_locators(params)
    n1 = ctx.n1
    if params.family in (1, 3):
        v0 = ctx.solve_norm(ctx.mul(u[0], ctx.from_int(params.m)))
        multipliers = [v0]
        for l in range(params.r):
            vl = ctx.solve_norm(u[l + 1])
            multipliers.extend([vl] * params.m)
    else:
        multipliers = []
        for l in range(params.r):
            vl = ctx.solve_norm(u[l])
            multipliers.extend((vl + nu * params.h) % n1 for nu in range(params.m))
    code = GrsCode(ctx=ctx, locators=locators, multipliers=tuple(multipliers), k=params.k)
    ok, witness = is_hermitian_self_orthogonal(code)
    if not ok:
        raise SolvabilityRouteFailed(
            f"constructed code fails the power-sum check at (i,j)={witness}", a
        )
    return code


# -- length classification and the catalog -----------------------------------


@dataclass(frozen=True)
class CongruenceClass:
    label: str
    matches: tuple  # all (modulus, target) divisibility facts


def congruence_class(n: int, q: int) -> CongruenceClass:
    """Finest n = 0, 1 classification against q+-1 and their halves."""
    checks = [
        (q + 1, "q+1"),
        (q - 1, "q-1"),
        ((q + 1) // 2, "(q+1)/2"),
        ((q - 1) // 2, "(q-1)/2"),
    ]
    matches = []
    for mod, name in checks:
        if (n - 1) % mod == 0:
            matches.append(f"{name} | (n-1)")
        if n % mod == 0:
            matches.append(f"{name} | n")
    label = "other"
    for full, half in (("q+1", "(q+1)/2"), ("q-1", "(q-1)/2")):
        for target in ("(n-1)", "n"):
            if f"{full} | {target}" in matches:
                label = f"({full}) | {target}"
                break
        if label != "other":
            break
    if label == "other":
        for full, half in (("q+1", "(q+1)/2"), ("q-1", "(q-1)/2")):
            for target in ("(n-1)", "n"):
                if f"{half} | {target}" in matches:
                    label = f"({full})∤{target}, {half} | {target}"
                    break
            if label != "other":
                break
    return CongruenceClass(label=label, matches=tuple(matches))


@dataclass(frozen=True)
class CatalogEntry:
    q: int
    family: int
    case: int
    h: int
    r: int
    k: int
    n: int
    nq_k: int
    d: int
    congruence: str
    provenance: str
    propagated: bool
    verified: bool
    d_exceeds_half_q: bool

    def csv_row(self) -> list:
        return [
            self.q,
            self.family,
            self.case,
            self.h,
            self.r,
            self.k,
            self.n,
            self.nq_k,
            self.d,
            self.congruence,
            self.provenance,
        ]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "family": self.family,
            "case": self.case,
            "h": self.h,
            "r": self.r,
            "k": self.k,
            "n": self.n,
            "nq_k": self.nq_k,
            "d": self.d,
            "congruence_class": self.congruence,
            "provenance": self.provenance,
            "propagated": self.propagated,
            "verified": self.verified,
            "d_exceeds_half_q": self.d_exceeds_half_q,
        }


CATALOG_CSV_HEADER = "q,family,case,h,r,k,n,nq_k,d,congruence_class,provenance"


def theorem_instances(q: int) -> list[tuple[int, int, int, int]]:
    """All admissible (family, case, h, r) tuples for one field size."""
    out = []
    for family in FAMILIES:
        for h in admissible_h_values(q, family):
            for case in CASES[family]:
                if family == 1 and case == 1:
                    rs = range(h // 2 + 1, h + 1)
                elif family == 1 and case == 2:
                    rs = [r for r in range(h + 1, 2 * h) if r % 2 == 1]
                elif family == 2:
                    rs = range(h // 2 + 2, h + 1)
                elif family == 3 and case == 1:
                    rs = [r for r in range(h + 1, 2 * h) if r % 2 == 1 and 2 * r < 3 * h]
                elif family == 3 and case == 2:
                    rs = [r for r in range(h + 1, 2 * h) if r % 2 == 1 and 2 * r > 3 * h]
                elif family == 4 and case == 1:
                    rs = range(h // 2, h + 1)
                elif family == 4 and case == 2:
                    rs = [r for r in range(h + 1, 2 * h) if r % 2 == 1 and 2 * r < 3 * h]
                else:  # family 4, case 3
                    rs = [r for r in range(h + 1, 2 * h) if r % 2 == 1 and 2 * r >= 3 * h]
                out.extend((family, case, h, r) for r in rs)
    return out


class CatalogVerificationError(RuntimeError):
    pass


def build_catalog(
    q_max: int,
    seed: int = 0,
    verify: bool = True,
    mds_trials: int = 1000,
    table_budget: int | None = None,
) -> list[CatalogEntry]:
    """One verified entry per admissible (q, family, case, h, r) at maximal k,
    plus a flagged shortened entry derived from each, deduplicated on the
    quantum parameter triple."""
    from . import oracle  # local import; the oracle must stay independent
    from .gf import DEFAULT_TABLE_BUDGET

    budget = DEFAULT_TABLE_BUDGET if table_budget is None else table_budget
    raw: list[CatalogEntry] = []
    for q, p, e in odd_prime_powers(q_max):
        instances = theorem_instances(q)
        if not instances:
            continue
        ctx = make_context(p, e, budget)
        for family, case, h, r in instances:
            params = make_params(ctx, family, case, h, r)
            note = ""
            code = None
            while params.k >= 1:
                try:
                    code = construct(params, seed=seed)
                    break
                except (SolvabilityRouteFailed, NonzeroSolutionNotFound):
                    note = f" k reduced from {kmax(family, case, q, h, r)}"
                    params = replace(params, k=params.k - 1)
            if code is None:
                continue
            qp = quantum_params(code, skip_check=True)
            verified = False
            if verify:
                report = oracle.full_verify(code, qp, mds_trials=mds_trials, seed=seed)
                if not report.all_pass:
                    raise CatalogVerificationError(
                        f"catalog entry T{family}({case}) q={q} h={h} r={r} failed: "
                        + report.to_json()
                    )
                verified = True
            prov = f"T{family}({case}) q={q} h={h} r={r} k={params.k}{note}"
            raw.append(
                CatalogEntry(
                    q=q,
                    family=family,
                    case=case,
                    h=h,
                    r=r,
                    k=params.k,
                    n=qp.n,
                    nq_k=qp.k,
                    d=qp.d,
                    congruence=congruence_class(qp.n, q).label,
                    provenance=prov,
                    propagated=False,
                    verified=verified,
                    d_exceeds_half_q=2 * qp.d > q + 2,
                )
            )
            if qp.d >= 2:
                sp = propagate(qp)
                raw.append(
                    CatalogEntry(
                        q=q,
                        family=family,
                        case=case,
                        h=h,
                        r=r,
                        k=params.k - 1,
                        n=sp.n,
                        nq_k=sp.k,
                        d=sp.d,
                        congruence=congruence_class(sp.n, q).label,
                        provenance=f"propagated[{prov}]",
                        propagated=True,
                        verified=verified,
                        d_exceeds_half_q=2 * sp.d > q + 2,
                    )
                )
    merged: dict[tuple, CatalogEntry] = {}
    for entry in raw:
        key = (entry.q, entry.n, entry.nq_k)
        kept = merged.get(key)
        if kept is None:
            merged[key] = entry
        else:
            direct, other = (kept, entry) if entry.propagated >= kept.propagated else (entry, kept)
            merged[key] = replace(
                direct, provenance=direct.provenance + "; " + other.provenance
            )
    return sorted(
        merged.values(), key=lambda x: (x.q, x.n, x.d, x.family, x.case, x.h, x.r)
    )
