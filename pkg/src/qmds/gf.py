"""Exact arithmetic in GF(q^2), q = p^e an odd prime power.

Elements are stored as discrete logarithms: the integer d in [0, q^2-2]
means theta^d for a fixed primitive element theta, and the sentinel ZERO
(-1) is the additive identity.  Multiplication, inversion, powering,
Frobenius and norm are O(1) exponent arithmetic; addition goes through a
Zech-logarithm table built once per context.

The defining modulus is chosen deterministically: monic degree-2e
polynomials are scanned in ascending order of their coefficient encoding
(constant term least significant, base p) and the first one for which x
has multiplicative order exactly q^2-1 wins.  That order forces the
polynomial to be irreducible and makes theta = x primitive, so contexts
are byte-identical across runs and machines.

A FieldContext is immutable after construction; every method is pure and
safe to share between threads.
"""

from __future__ import annotations

from typing import Iterator

ZERO = -1
ONE = 0

DEFAULT_TABLE_BUDGET = 65536


class NonPrimeError(ValueError):
    """Raised when the requested characteristic is not an odd prime."""


class TableBudgetExceeded(ValueError):
    """Raised when q^2 is too large for full log/antilog tables."""


class NotInBaseField(ValueError):
    """Raised when an argument must lie in GF(q) but does not."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _mul_by_x(coeffs: list[int], tail: list[int], p: int) -> list[int]:
    # x * sum(c_i x^i) reduced by x^deg = -tail(x)
    top = coeffs[-1]
    out = [0] * len(coeffs)
    out[0] = (-top * tail[0]) % p
    for i in range(1, len(coeffs)):
        out[i] = (coeffs[i - 1] - top * tail[i]) % p
    return out


def _encode(coeffs: list[int], p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


class FieldContext:
    """The tower GF(p) <= GF(q) <= GF(q^2) with full exponent tables."""

    def __init__(self, p: int, e: int = 1, table_budget: int = DEFAULT_TABLE_BUDGET):
        if p == 2 or not _is_prime(p):
            raise NonPrimeError(f"p must be an odd prime, got {p}")
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got {e}")
        q = p**e
        order = q * q
        if order > table_budget:
            raise TableBudgetExceeded(
                f"q^2 = {order} exceeds the table budget {table_budget}"
            )
        self.p = p
        self.e = e
        self.q = q
        self.order = order
        self.n1 = order - 1  # size of the multiplicative group
        self.half = self.n1 // 2  # log of -1 (q odd)

        deg = 2 * e
        antilog: list[int] | None = None
        tail: list[int] | None = None
        for enc in range(1, order):
            cand = [0] * deg
            v = enc
            for i in range(deg):
                cand[i] = v % p
                v //= p
            if cand[0] == 0:
                continue  # x would divide the modulus
            antilog = self._powers_of_x(cand, deg)
            if antilog is not None:
                tail = cand
                break
        if antilog is None or tail is None:  # pragma: no cover - cannot happen
            raise RuntimeError(f"no primitive modulus found for p={p}, e={e}")

        self.modulus = tuple(tail) + (1,)  # ascending coefficients, monic
        self._antilog = antilog  # exponent -> encoded polynomial
        log = [ZERO] * order  # encoded polynomial -> exponent
        for d, enc in enumerate(antilog):
            log[enc] = d
        self._log = log

        # zech[d] = log(1 + theta^d), ZERO when the sum vanishes
        zech = [ZERO] * self.n1
        for d, enc in enumerate(antilog):
            c0 = enc % p
            bumped = enc - c0 + (c0 + 1) % p
            zech[d] = log[bumped]
        self.zech = zech

        # log of the small integers 1..p-1 (the prime subfield)
        self.int_log = [ZERO] + [log[c] for c in range(1, p)]

        self.xi_exponent = (-(q + 1) // 2) % self.n1
        assert (self.xi_exponent * q) % self.n1 == (self.xi_exponent + self.half) % self.n1

    def _powers_of_x(self, tail: list[int], deg: int) -> list[int] | None:
        # Walk x, x^2, ... ; succeed iff we first return to 1 at step q^2-1.
        p = self.p
        one = [1] + [0] * (deg - 1)
        v = [0, 1] + [0] * (deg - 2) if deg > 1 else None
        assert v is not None  # deg = 2e >= 2
        powers = [1]  # x^0 = 1
        for _ in range(self.n1 - 1):
            powers.append(_encode(v, p))
            v = _mul_by_x(v, tail, p)
            if v == one:
                return powers if len(powers) == self.n1 else None
        return None

    # -- element helpers -------------------------------------------------

    def from_int(self, c: int) -> int:
        """Embed an integer via the prime subfield (c mod p)."""
        return self.int_log[c % self.p]

    def element_to_str(self, x: int) -> str:
        return "0" if x == ZERO else f"t^{x}"

    def element_to_json(self, x: int):
        """The string "0" for zero, otherwise the bare exponent."""
        return "0" if x == ZERO else x

    def element_from_json(self, v) -> int:
        if v == "0":
            return ZERO
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValueError(f"element must be the string \"0\" or an integer exponent, got {v!r}")
        if not 0 <= v < self.n1:
            raise ValueError(f"exponent {v} out of range for q^2-1 = {self.n1}")
        return v

    def elements(self) -> Iterator[int]:
        yield ZERO
        yield from range(self.n1)

    def nonzero_elements(self) -> Iterator[int]:
        yield from range(self.n1)

    def base_field_nonzero(self) -> Iterator[int]:
        """The q-1 elements of GF(q)*, ascending exponent."""
        step = self.q + 1
        yield from range(0, self.n1, step)

    def base_field_elements(self) -> Iterator[int]:
        yield ZERO
        yield from self.base_field_nonzero()

    # -- arithmetic -------------------------------------------------------

    def add(self, x: int, y: int) -> int:
        if x == ZERO:
            return y
        if y == ZERO:
            return x
        z = self.zech[(y - x) % self.n1]
        return ZERO if z == ZERO else (x + z) % self.n1

    def neg(self, x: int) -> int:
        return ZERO if x == ZERO else (x + self.half) % self.n1

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == ZERO or y == ZERO:
            return ZERO
        return (x + y) % self.n1

    def inv(self, x: int) -> int:
        if x == ZERO:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return (-x) % self.n1

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, n: int) -> int:
        if x == ZERO:
            if n == 0:
                return ONE  # 0^0 = 1 by the evaluation convention
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return ZERO
        return (x * n) % self.n1

    def frobenius(self, x: int) -> int:
        """x^q, the conjugation underlying the Hermitian inner product."""
        return ZERO if x == ZERO else (x * self.q) % self.n1

    def norm(self, x: int) -> int:
        """x^(q+1), a member of GF(q)."""
        return ZERO if x == ZERO else (x * (self.q + 1)) % self.n1

    def in_base_field(self, x: int) -> bool:
        return self.frobenius(x) == x

    def solve_norm(self, u: int) -> int:
        """The minimal-exponent v with v^(q+1) = u, for u in GF(q)*."""
        if u == ZERO:
            raise ValueError("norm equation has no solution for u = 0")
        if not self.in_base_field(u):
            raise NotInBaseField(f"theta^{u} is not fixed by Frobenius")
        assert u % (self.q + 1) == 0
        return (u // (self.q + 1)) % (self.q - 1)

    def __repr__(self) -> str:
        return f"FieldContext(p={self.p}, e={self.e}, q={self.q})"


_CACHE: dict[tuple[int, int, int], FieldContext] = {}


def make_context(p: int, e: int = 1, table_budget: int = DEFAULT_TABLE_BUDGET) -> FieldContext:
    """Build (or fetch the cached) GF(q^2) context for q = p^e."""
    key = (p, e, table_budget)
    ctx = _CACHE.get(key)
    if ctx is None:
        ctx = FieldContext(p, e, table_budget)
        _CACHE[key] = ctx
    return ctx
