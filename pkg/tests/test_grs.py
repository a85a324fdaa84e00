"""GRS code objects, containment checks, MDS tests, quantum parameter maps."""

import math
import random

import pytest

from qmds import (
    ONE,
    ZERO,
    GrsCode,
    QuantumParams,
    generator_matrix,
    gram_check,
    hermitian_power_sum,
    is_hermitian_self_orthogonal,
    make_context,
    make_params,
    construct,
    mds_check,
    propagate,
    quantum_params,
    rank,
)
from qmds.grs import (
    DimensionTooLarge,
    DistanceTooSmall,
    MdsBudgetExceeded,
    NotMds,
    NotSelfOrthogonal,
)


@pytest.fixture(scope="module")
def f49():
    return make_context(7, 1)


@pytest.fixture(scope="module")
def t1_code(f49):
    return construct(make_params(f49, 1, 1, 2, 2, 5))


def random_code(ctx, rng, n, k):
    locators = tuple(rng.sample(list(ctx.elements()), n))
    multipliers = tuple(rng.choice(list(ctx.nonzero_elements())) for _ in range(n))
    return GrsCode(ctx=ctx, locators=locators, multipliers=multipliers, k=k)


def corrupt_multiplier(code):
    vs = list(code.multipliers)
    vs[0] = code.ctx.mul(vs[0], 1)  # times theta, leaves the norm class
    bad = GrsCode(ctx=code.ctx, locators=code.locators, multipliers=tuple(vs), k=code.k)
    ok, _ = is_hermitian_self_orthogonal(bad)
    if ok:  # try a different twist
        vs[0] = code.ctx.mul(vs[0], 2)
        bad = GrsCode(ctx=code.ctx, locators=code.locators, multipliers=tuple(vs), k=code.k)
    return bad


def test_code_validation(f49):
    with pytest.raises(ValueError):
        GrsCode(ctx=f49, locators=(ONE, ONE), multipliers=(ONE, ONE), k=1)
    with pytest.raises(ValueError):
        GrsCode(ctx=f49, locators=(ZERO, ONE), multipliers=(ONE, ZERO), k=1)
    with pytest.raises(ValueError):
        GrsCode(ctx=f49, locators=(ZERO, ONE), multipliers=(ONE, ONE), k=3)


def test_generator_matrix_examples(f49):
    code = GrsCode(ctx=f49, locators=(ZERO, ONE), multipliers=(ONE, ONE), k=2)
    g = generator_matrix(code)
    assert g.to_lists() == [[ONE, ONE], [ZERO, ONE]]
    one_row = GrsCode(ctx=f49, locators=(ZERO, ONE, 5), multipliers=(3, 9, 11), k=1)
    assert generator_matrix(one_row).row(0) == (3, 9, 11)
    rng = random.Random(2)
    square = random_code(f49, rng, 4, 4)
    assert rank(generator_matrix(square)) == 4


def test_power_sum_basics(f49):
    rng = random.Random(4)
    code = random_code(f49, rng, 6, 2)
    s = hermitian_power_sum(code, 0, 0)
    assert s == ZERO or f49.in_base_field(s)
    # n = 0 mod p with all multipliers of norm one
    locators = tuple(range(7))
    mults = (ONE,) * 7
    code7 = GrsCode(ctx=f49, locators=locators, multipliers=mults, k=1)
    assert hermitian_power_sum(code7, 0, 0) == ZERO


def test_power_sum_cancellation_pair(f49):
    # exhaustive search over GF(49) pairs for cancelling norms
    found = None
    for x in f49.nonzero_elements():
        for y in f49.nonzero_elements():
            if f49.add(f49.norm(x), f49.norm(y)) == ZERO:
                found = (x, y)
                break
        if found:
            break
    assert found is not None
    x, y = found
    c = f49.from_int(2)
    code = GrsCode(ctx=f49, locators=(c, f49.neg(c)), multipliers=(x, y), k=1)
    assert hermitian_power_sum(code, 0, 0) == ZERO
    ok, _ = is_hermitian_self_orthogonal(code)
    assert ok


def test_self_orthogonality_and_witness(f49, t1_code):
    ok, witness = is_hermitian_self_orthogonal(t1_code)
    assert ok and witness is None
    bad = corrupt_multiplier(t1_code)
    ok, witness = is_hermitian_self_orthogonal(bad)
    assert not ok
    assert hermitian_power_sum(bad, *witness) != ZERO
    # k=1 with nonzero norm sum fails at (0, 0)
    code = GrsCode(ctx=f49, locators=(ZERO, ONE), multipliers=(ONE, ONE), k=1)
    ok, witness = is_hermitian_self_orthogonal(code)
    assert not ok and witness == (0, 0)


def test_gram_agrees_with_power_sums(f49, t1_code):
    assert gram_check(t1_code) == (True, None)
    bad = corrupt_multiplier(t1_code)
    g_ok, g_wit = gram_check(bad)
    assert not g_ok
    # the Gram entry (i, j) is the (j, i) power sum
    assert hermitian_power_sum(bad, g_wit[1], g_wit[0]) != ZERO
    rng = random.Random(8)
    for _ in range(40):
        code = random_code(f49, rng, rng.randint(2, 8), rng.randint(1, 3))
        assert is_hermitian_self_orthogonal(code)[0] == gram_check(code)[0]


def test_mds_check(f49, t1_code):
    rng = random.Random(6)
    square = random_code(f49, rng, 5, 5)
    res = mds_check(square, mode="exhaustive")
    assert res.passed and res.checked == 1
    res = mds_check(t1_code, mode="exhaustive")
    assert res.passed and res.checked == math.comb(25, 5)
    res = mds_check(t1_code, mode="sampled", trials=500, seed=3)
    assert res.passed and res.trials == 500
    # structural guarantee: any distinct-locator nonzero-multiplier code is MDS
    for _ in range(20):
        n = rng.randint(2, 8)
        code = random_code(f49, rng, n, rng.randint(1, min(4, n)))
        assert mds_check(code, mode="exhaustive").passed


def test_mds_check_detects_repeated_locator(f49):
    rng = random.Random(9)
    code = random_code(f49, rng, 6, 3)
    locs = list(code.locators)
    locs[1] = locs[0]  # force two proportional columns behind validation
    object.__setattr__(code, "locators", tuple(locs))
    res = mds_check(code, mode="exhaustive")
    assert not res.passed
    assert res.failing_columns is not None
    assert set(res.failing_columns) >= {0, 1}


def test_mds_budget(f49):
    rng = random.Random(10)
    code = random_code(make_context(11, 1), rng, 60, 6)
    with pytest.raises(MdsBudgetExceeded):
        mds_check(code, mode="exhaustive")


def test_quantum_params(f49, t1_code):
    qp = quantum_params(t1_code)
    assert qp == QuantumParams(n=25, k=15, d=6, q=7)
    assert qp.is_mds
    # k = 1 case
    code = GrsCode(ctx=f49, locators=(ZERO, ONE, 5, 44), multipliers=(ONE,) * 4, k=1)
    if is_hermitian_self_orthogonal(code)[0]:
        qp1 = quantum_params(code)
        assert (qp1.n, qp1.k, qp1.d) == (4, 2, 2)
    rng = random.Random(12)
    bad = random_code(f49, rng, 8, 2)
    if not is_hermitian_self_orthogonal(bad)[0]:
        with pytest.raises(NotSelfOrthogonal):
            quantum_params(bad)
    small = random_code(f49, rng, 3, 2)
    with pytest.raises(DimensionTooLarge):
        quantum_params(small)


def test_propagate(t1_code):
    qp = quantum_params(t1_code)
    shortened = propagate(qp)
    assert shortened == QuantumParams(n=24, k=16, d=5, q=7)
    assert shortened.is_mds
    boundary = propagate(QuantumParams(n=10, k=8, d=2, q=7))
    assert boundary == QuantumParams(n=9, k=9, d=1, q=7)
    with pytest.raises(NotMds):
        propagate(QuantumParams(n=10, k=8, d=3, q=7))
    with pytest.raises(DistanceTooSmall):
        propagate(QuantumParams(n=9, k=9, d=1, q=7))


def test_propagate_chain_keeps_singleton(t1_code):
    qp = quantum_params(t1_code)
    while qp.d >= 2:
        qp = propagate(qp)
        assert qp.is_mds
