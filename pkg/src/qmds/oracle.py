"""Independent brute-force verifiers.

Everything here works from raw definitions: residue sets by enumerating
all (i, j) pairs, minimum distance by enumerating all messages, and code
verification by running both containment checks plus the subset tests.
Nothing is shared with the construction path beyond the field and matrix
primitives, so agreement between the two sides is meaningful evidence.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .gf import ZERO
from .grs import (
    DEFAULT_SAMPLED_TRIALS,
    EXHAUSTIVE_SUBSET_BUDGET,
    GrsCode,
    QuantumParams,
    gram_check,
    is_hermitian_self_orthogonal,
    mds_check,
    quantum_params,
)

DISTANCE_BUDGET = 10**6


class BudgetExceeded(ValueError):
    pass


def brute_force_residue_set(q: int, h: int, k: int, shift: int = 0) -> dict:
    """All s with q*i + j + shift = s*m for some 0 <= i, j <= k-1.

    Exact by construction: plain integer enumeration of every pair.
    Returns {s: (i, j)}; the witness pair for each s is unique because
    (i, j) are the base-q digits of s*m - shift.
    """
    if (q * q - 1) % (2 * h) != 0:
        raise ValueError(f"2h = {2*h} does not divide q^2-1 = {q*q-1}")
    if not 1 <= k <= q - 1:
        raise ValueError(f"need 1 <= k <= q-1, got k={k}")
    m = (q * q - 1) // (2 * h)
    hits: dict[int, tuple[int, int]] = {}
    for i in range(k):
        base = q * i + shift
        for j in range(k):
            v = base + j
            if v % m == 0:
                s = v // m
                assert s not in hits
                hits[s] = (i, j)
    return hits


def exhaustive_min_distance(code: GrsCode, budget: int = DISTANCE_BUDGET) -> int:
    """Minimum Hamming weight over all nonzero messages, by full enumeration.

    Evaluates v_l * f(a_l) directly from the code definition for every
    message polynomial f; refuses when the message space (q^2)^k exceeds
    the budget.
    """
    import itertools

    ctx = code.ctx
    k = code.k
    space = ctx.order**k
    if space > budget:
        raise BudgetExceeded(f"(q^2)^k = {space} exceeds the enumeration budget {budget}")
    powers = [[ctx.pow(a, i) for i in range(k)] for a in code.locators]
    best = code.n + 1
    add = ctx.add
    mul = ctx.mul
    for msg in itertools.product(list(ctx.elements()), repeat=k):
        if all(c == ZERO for c in msg):
            continue
        weight = 0
        for pw, v in zip(powers, code.multipliers):
            acc = ZERO
            for c, p in zip(msg, pw):
                acc = add(acc, mul(c, p))
            if acc != ZERO:
                weight += 1
        if weight < best:
            best = weight
    return best


@dataclass
class VerificationReport:
    """Outcome of every oracle check on one code, with failure witnesses."""

    lemma1_pass: bool
    lemma1_witness: tuple | None
    gram_pass: bool
    gram_witness: tuple | None
    oracles_agree: bool
    mds_mode: str  # "exhaustive" | "sampled" | "skipped"
    mds_pass: bool | None
    mds_checked: int | None
    mds_witness: tuple | None
    min_distance: int | None
    min_distance_expected: int | None
    singleton_pass: bool | None
    derived_params: dict | None
    claimed_params: dict | None
    params_match: bool | None
    notes: list = field(default_factory=list)

    @property
    def min_distance_pass(self) -> bool | None:
        if self.min_distance is None:
            return None
        return self.min_distance == self.min_distance_expected

    @property
    def all_pass(self) -> bool:
        checks = [
            self.lemma1_pass,
            self.gram_pass,
            self.oracles_agree,
            self.mds_pass,
            self.min_distance_pass,
            self.singleton_pass,
            self.params_match,
        ]
        return all(c is not False for c in checks)

    def to_dict(self) -> dict:
        return {
            "lemma1_pass": self.lemma1_pass,
            "lemma1_witness": self.lemma1_witness,
            "gram_pass": self.gram_pass,
            "gram_witness": self.gram_witness,
            "oracles_agree": self.oracles_agree,
            "mds_mode": self.mds_mode,
            "mds_pass": self.mds_pass,
            "mds_checked": self.mds_checked,
            "mds_witness": self.mds_witness,
            "min_distance": self.min_distance,
            "min_distance_expected": self.min_distance_expected,
            "min_distance_pass": self.min_distance_pass,
            "singleton_pass": self.singleton_pass,
            "derived_params": self.derived_params,
            "claimed_params": self.claimed_params,
            "params_match": self.params_match,
            "all_pass": self.all_pass,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def full_verify(
    code: GrsCode,
    claimed: QuantumParams | None = None,
    mds_trials: int = DEFAULT_SAMPLED_TRIALS,
    seed: int = 0,
    subset_budget: int = EXHAUSTIVE_SUBSET_BUDGET,
    distance_budget: int = DISTANCE_BUDGET,
) -> VerificationReport:
    """Run every check that fits its budget and collect the outcomes."""
    notes = []
    l_ok, l_wit = is_hermitian_self_orthogonal(code)
    g_ok, g_wit = gram_check(code)
    agree = l_ok == g_ok
    if not agree:
        notes.append("containment oracles disagree")

    if math.comb(code.n, code.k) <= subset_budget:
        mds = mds_check(code, mode="exhaustive")
    else:
        mds = mds_check(code, mode="sampled", trials=mds_trials, seed=seed)
        notes.append(f"subset space too large, sampled {mds_trials} subsets")

    min_dist = None
    expected = code.n - code.k + 1
    if code.ctx.order**code.k <= distance_budget:
        min_dist = exhaustive_min_distance(code, budget=distance_budget)
        if min_dist != expected:
            notes.append(f"minimum distance {min_dist}, expected {expected}")
    else:
        notes.append("message space too large for the distance enumeration")

    derived = None
    singleton = None
    match = None
    if l_ok and code.n >= 2 * code.k:
        qp = quantum_params(code, skip_check=True)
        derived = qp.to_dict()
        singleton = qp.is_mds
        if claimed is not None:
            match = qp == claimed
            if not match:
                notes.append(f"claimed {claimed}, derived {qp}")
    elif claimed is not None:
        match = False
        notes.append("cannot derive quantum parameters from a non-orthogonal code")

    return VerificationReport(
        lemma1_pass=l_ok,
        lemma1_witness=l_wit,
        gram_pass=g_ok,
        gram_witness=g_wit,
        oracles_agree=agree,
        mds_mode=mds.mode,
        mds_pass=mds.passed,
        mds_checked=mds.checked,
        mds_witness=mds.failing_columns,
        min_distance=min_dist,
        min_distance_expected=expected if min_dist is not None else None,
        singleton_pass=singleton,
        derived_params=derived,
        claimed_params=claimed.to_dict() if claimed is not None else None,
        params_match=match,
        notes=notes,
    )
