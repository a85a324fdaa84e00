"""Construction-family tests: validation, residue sets, matrices, codes,
length classification and the catalog."""

import pytest

from qmds import (
    ONE,
    ZERO,
    HypothesisViolated,
    SolvabilityRouteFailed,
    admissible_h_values,
    brute_force_residue_set,
    build_catalog,
    build_coefficient_matrix,
    build_locators,
    congruence_class,
    conjugate,
    construct,
    gram_check,
    is_hermitian_self_orthogonal,
    kmax,
    make_context,
    make_params,
    odd_prime_powers,
    quantum_params,
    residue_set,
    row_equivalent,
    theorem_instances,
)
from qmds.constructions import _matrix_rows, lemma_k_bound, lemma_t_range, shift_for


@pytest.fixture(scope="module")
def f49():
    return make_context(7, 1)


@pytest.fixture(scope="module")
def f121():
    return make_context(11, 1)


@pytest.fixture(scope="module")
def f169():
    return make_context(13, 1)


def test_odd_prime_powers():
    qs = [q for q, _, _ in odd_prime_powers(30)]
    assert qs == [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]


def test_admissible_h():
    assert admissible_h_values(7, 1) == [2]   # (q-1)/2 = 3
    assert admissible_h_values(7, 3) == []    # 8/h is never an odd integer >= 3
    assert admissible_h_values(11, 3) == [4]  # (q+1)/4 = 3
    assert admissible_h_values(13, 1) == [4]
    assert admissible_h_values(13, 3) == [2]
    assert admissible_h_values(49, 1) == [16]
    assert admissible_h_values(49, 3) == [2, 10]


def test_make_params_examples(f49, f121):
    params = make_params(f49, 1, 1, 2, 2, 5)
    assert params.k == 5 and params.m == 12 and params.tau == 1 and params.n == 25
    with pytest.raises(HypothesisViolated, match="h/2\\+1 <= r <= h"):
        make_params(f49, 1, 1, 2, 1)
    params = make_params(f121, 4, 3, 4, 7, 10)
    assert params.k == 10 and kmax(4, 3, 11, 4, 7) == 10
    with pytest.raises(HypothesisViolated):
        make_params(f49, 1, 1, 2, 2, 0)  # k >= 1
    with pytest.raises(HypothesisViolated):
        make_params(f49, 1, 1, 3, 2)  # odd h
    with pytest.raises(HypothesisViolated):
        make_params(f49, 1, 1, 6, 4)  # (q-1)/6 = 1, tau = 0
    with pytest.raises(HypothesisViolated):
        make_params(f121, 3, 1, 4, 6)  # r must be odd
    with pytest.raises(HypothesisViolated):
        make_params(f49, 1, 1, 2, 2, 5, coset_exponents=(0, 4))  # equal mod 2h
    with pytest.raises(HypothesisViolated):
        make_params(f49, 1, 1, 2, 2, 5, coset_exponents=(0, 2))  # equal mod h


def test_kmax_values(f49):
    assert kmax(1, 1, 7, 2, 2) == 5
    assert kmax(2, 1, 13, 4, 4) == 9
    assert kmax(3, 1, 11, 4, 5) == 8
    assert kmax(4, 1, 11, 4, 4) == 6
    assert kmax(4, 3, 11, 4, 7) == 10
    assert kmax(1, 2, 7, 2, 3) == 5
    assert kmax(4, 3, 13, 2, 3) == 12  # capped at q-1


def test_kmax_matches_residue_sweep(f49):
    # at kmax the realized set stays inside the pattern rows; at kmax+1 a
    # new residue appears that the coefficient matrix does not cover
    for ctx, family, case, h, r in (
        (f49, 1, 1, 2, 2),
        (make_context(13, 1), 2, 1, 4, 4),
        (make_context(11, 1), 3, 1, 4, 5),
        (make_context(11, 1), 4, 1, 4, 4),
    ):
        q = ctx.q
        km = kmax(family, case, q, h, r)
        params = make_params(ctx, family, case, h, r, km)
        rows = set(_matrix_rows(params)) | ({0} if family in (1, 3) else set())
        shift = shift_for(family, q)
        at_kmax = set(brute_force_residue_set(q, h, km, shift))
        assert at_kmax <= rows
        if km + 1 <= q - 1:
            beyond = set(brute_force_residue_set(q, h, km + 1, shift))
            assert not beyond <= rows


def test_residue_set_spec_examples(f169):
    rs = residue_set(1, "A", 7, 2, 0, 5)
    assert rs.values == (0, 2) and rs.witnesses[2] == (3, 3) and rs.shift == 0
    rs = residue_set(2, "A", 13, 4, 1, 9)
    assert rs.values == (1, 3, 5) and rs.shift == 7
    for q, h in ((13, 4), (7, 2), (11, 2)):
        assert residue_set(2, "A", q, h, 1, 1).values == ()


def test_residue_set_matches_oracle_small():
    for q, p, e in odd_prime_powers(13):
        for family in (1, 2, 3, 4):
            for h in admissible_h_values(q, family):
                for variant in ("A",) if family in (1, 2) else ("A", "B"):
                    for t in lemma_t_range(family, variant, h):
                        bound = min(lemma_k_bound(family, variant, q, h, t), q - 1)
                        for k in range(1, bound + 1):
                            closed = residue_set(family, variant, q, h, t, k)
                            brute = brute_force_residue_set(q, h, k, closed.shift)
                            assert closed.witnesses == brute


def test_build_locators(f49):
    params = make_params(f49, 1, 1, 2, 2, 5)
    locs = build_locators(params)
    assert len(locs) == 25 and len(set(locs)) == 25
    assert locs[0] == ZERO
    gamma_orbit = {(4 * nu) % 48 for nu in range(12)}
    assert set(locs[1:13]) == gamma_orbit
    assert set(locs[13:]) == {(1 + 4 * nu) % 48 for nu in range(12)}
    # family 2: single coset, no zero
    ctx13 = make_context(13, 1)
    p2 = make_params(ctx13, 2, 1, 4, 4, 1)
    locs2 = build_locators(p2)
    assert len(locs2) == 4 * p2.m and ZERO not in locs2


def test_coefficient_matrix_theorem1(f49):
    params = make_params(f49, 1, 1, 2, 2, 5)
    a = build_coefficient_matrix(params)
    neg1 = f49.neg(ONE)
    assert a.to_lists() == [[ONE, ONE, ONE], [ZERO, ONE, neg1]]


def test_coefficient_matrix_family2_is_subfield(f169):
    params = make_params(f169, 2, 1, 4, 4, 9)
    a = build_coefficient_matrix(params)
    assert all(f169.in_base_field(x) for x in a.data)
    assert a.rows == 3 and a.cols == 4


def test_coefficient_matrix_family4(f121):
    params = make_params(f121, 4, 1, 4, 4, 6)
    a = build_coefficient_matrix(params)
    # single surviving residue s=2: entries beta^i xi^i = theta^(24 i)
    assert a.to_lists() == [[0, 24, 48, 72]]
    assert row_equivalent(a, conjugate(a))


def test_conjugate_row_equivalence_for_descent_cases(f121):
    for family, case, h, r in ((3, 1, 4, 5), (3, 2, 4, 7), (4, 2, 4, 5), (4, 3, 4, 7)):
        params = make_params(f121, family, case, h, r)
        a = build_coefficient_matrix(params)
        if a.rows:
            assert row_equivalent(a, conjugate(a))


def test_construct_theorem1_known_solution(f49):
    code = construct(make_params(f49, 1, 1, 2, 2, 5))
    assert code.n == 25 and code.k == 5
    # kernel vector (5, 1, 1): v_0^(q+1) = 5*12 = 4 in GF(7), v_l = 1
    assert code.multipliers[0] == f49.solve_norm(f49.from_int(4))
    assert set(code.multipliers[1:]) == {ONE}
    assert is_hermitian_self_orthogonal(code) == (True, None)
    assert gram_check(code) == (True, None)


def test_construct_family2_multiplier_pattern(f169):
    params = make_params(f169, 2, 1, 4, 4, 9)
    code = construct(params)
    m, h = params.m, params.h
    n1 = f169.n1
    for l in range(params.r):
        base = code.multipliers[l * m]
        for nu in range(m):
            assert code.multipliers[l * m + nu] == (base + nu * h) % n1


def test_construct_all_instances_small():
    for q, p, e in odd_prime_powers(13):
        instances = theorem_instances(q)
        if not instances:
            continue
        ctx = make_context(p, e)
        for family, case, h, r in instances:
            params = make_params(ctx, family, case, h, r)
            if family == 4 and case == 3 and r == 2 * h - 1:
                # at r = 2h-1 every dimension with both residues 1 and 2h-1
                # realized (k >= q - tau) is unsolvable: that conjugate row
                # pair forces a zero coordinate for every exponent choice
                for k in range(q - params.tau, params.k + 1):
                    with pytest.raises(SolvabilityRouteFailed):
                        construct(make_params(ctx, family, case, h, r, k))
                params = make_params(ctx, family, case, h, r, q - params.tau - 1)
            code = construct(params)
            ok, _ = is_hermitian_self_orthogonal(code)
            g_ok, _ = gram_check(code)
            assert ok and g_ok, (q, family, case, h, r)
            qp = quantum_params(code, skip_check=True)
            assert qp.is_mds


def test_construct_is_deterministic(f121):
    a = construct(make_params(f121, 4, 1, 4, 4, 6), seed=0)
    b = construct(make_params(f121, 4, 1, 4, 4, 6), seed=0)
    assert a.locators == b.locators and a.multipliers == b.multipliers


def test_congruence_class_examples():
    assert congruence_class(25, 7).label == "(q+1) | (n-1)"
    assert congruence_class(76, 11).label == "(q-1)∤(n-1), (q-1)/2 | (n-1)"
    for q in (7, 11, 13):
        assert congruence_class(q + 1, q).label == "(q+1) | n"
    got = congruence_class(76, 11).matches
    assert "(q-1)/2 | (n-1)" in got and "q-1 | (n-1)" not in got


def test_catalog_small():
    entries = build_catalog(7, verify=True, mds_trials=300)
    by_params = {(e.q, e.n, e.nq_k, e.d): e for e in entries}
    star = by_params[(7, 25, 15, 6)]
    assert star.congruence == "(q+1) | (n-1)"
    assert not star.propagated and star.verified
    assert star.d_exceeds_half_q
    # its shortened companion is present and flagged
    shortened = by_params[(7, 24, 16, 5)]
    assert shortened.propagated
    assert shortened.provenance.startswith("propagated[")
    # every length obeys the half-modulus classification
    for e in entries:
        assert (
            e.n % ((e.q + 1) // 2) in (0, 1)
            or e.n % ((e.q - 1) // 2) in (0, 1)
        )
        assert 2 * e.d == e.n - e.nq_k + 2  # quantum Singleton equality


def test_catalog_qmax5_near_empty():
    entries = build_catalog(5, verify=False)
    assert all(e.q == 5 for e in entries)  # nothing admissible at q = 3
    assert all(e.family == 4 for e in entries)
    assert entries  # a handful of small family-4 codes exist


def test_catalog_deterministic():
    a = build_catalog(7, verify=False)
    b = build_catalog(7, verify=False)
    assert a == b
