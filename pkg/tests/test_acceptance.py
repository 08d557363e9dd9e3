"""Acceptance suite: one test per criterion, exact arithmetic throughout.

Run with `pytest tests/test_acceptance.py -v -s` to see one line per
criterion.  Everything is deterministic: random corpora use fixed seeds.
"""

import random
from fractions import Fraction as F
from math import factorial

from nseries import (
    ExponentAut,
    FactorAut,
    FreeSeries,
    HahnPoly,
    MonoidCtx,
    OpTable,
    bch_product,
    compose_factors,
    convolution_pairs,
    decompose_vaut,
    dynkin_bch,
    find_good_pair,
    fractional_iterate,
    fs_geometric_inverse,
    fs_mul,
    fs_substitute,
    gder_table,
    gexp_table,
    is_lie_slice,
    oaut_table,
    one_aut_check,
    op_apply,
    op_compose,
    op_evaluate,
    op_exp,
    op_is_derivation,
    op_is_unital_endomorphism,
    op_log,
    series_E0,
    series_L0,
    star,
)
from nseries.samples import (
    nonzero_fraction,
    random_additive_char,
    random_character,
    random_contracting_derivation,
    random_contracting_table,
    random_free_series,
)
from nseries.support_order import vec_add

LEX1 = MonoidCtx.lex(1)
PROD2 = MonoidCtx.product(2)


def _report(number, name):
    print(f"ACCEPTANCE {number:>2} PASS  {name}")


def comm(a, b):
    return a * b - b * a


def test_criterion_01_exp_log_inversion():
    for order in range(1, 11):
        E, L = series_E0(order), series_L0(order)
        var = FreeSeries.variable(0, 1, order)
        assert fs_substitute(E, {0: L}) == FreeSeries.one(1, order) + var
        assert fs_substitute(L, {0: E - FreeSeries.one(1, order)}) == var
    _report(1, "exp/log inversion in one variable, orders 1..10")


def test_criterion_02_bch_low_order_coefficients():
    x0, x1 = FreeSeries.variable(0, 2, 6), FreeSeries.variable(1, 2, 6)
    S = bch_product(6)
    assert S.grade_slice(2) == comm(x0, x1).scale(F(1, 2)).grade_slice(2)
    expected3 = (comm(x0, comm(x0, x1)) - comm(x1, comm(x0, x1))).scale(F(1, 12))
    assert S.grade_slice(3) == expected3.grade_slice(3)
    oracle = dynkin_bch(6)
    for degree in (4, 5, 6):
        assert S.grade_slice(degree) == oracle.grade_slice(degree)
    _report(2, "BCH coefficients: degrees 2-3 closed form, 4-6 vs oracle")


def test_criterion_03_bch_exponential_identity():
    for order in range(1, 9):
        E = series_E0(order)
        lhs = fs_substitute(E, {0: bch_product(order)})
        x0 = FreeSeries.variable(0, 2, order)
        x1 = FreeSeries.variable(1, 2, order)
        rhs = fs_substitute(E, {0: x0}) * fs_substitute(E, {0: x1})
        assert lhs == rhs
    _report(3, "exp(X0 * X1) = exp(X0) exp(X1), orders 1..8")


def test_criterion_04_lie_slices():
    S = bch_product(6)
    for degree in range(2, 7):
        assert is_lie_slice(S, degree)
    _report(4, "group-law slices 2..6 pass the bracketing criterion")


def test_criterion_05_geometric_inverse():
    rng = random.Random(503)
    one = FreeSeries.one(2, 6)
    for _ in range(50):
        P = random_free_series(rng, 2, 6, constant=nonzero_fraction(rng))
        assert fs_mul(P, fs_geometric_inverse(P)) == one
    _report(5, "geometric inverse roundtrip, 50 seeded series at grade 6")


def _derivation_corpus(count, bound, seed):
    rng = random.Random(seed)
    return [random_contracting_derivation(rng, LEX1, bound) for _ in range(count)]


def test_criterion_06_der_to_aut():
    bound = 8
    basis = OpTable.identity(LEX1, bound).basis()
    for d in _derivation_corpus(20, bound, seed=601):
        assert op_is_unital_endomorphism(op_exp(d))
        iterates = {}
        for m in basis:
            row = [HahnPoly.monomial(LEX1, bound, m)]
            for _ in range(bound):
                row.append(op_apply(d, row[-1]))
            iterates[m] = row
        for i, m1 in enumerate(basis):
            for m2 in basis[i:]:
                prod_row = [iterates[m1][0] * iterates[m2][0]]
                for _ in range(bound):
                    prod_row.append(op_apply(d, prod_row[-1]))
                for n in range(bound + 1):
                    rhs = HahnPoly.zero(LEX1, bound)
                    for k in range(n + 1):
                        rhs = rhs + (iterates[m1][k] * iterates[m2][n - k]).scale(
                            F(factorial(n), factorial(k) * factorial(n - k))
                        )
                    assert prod_row[n] == rhs
    _report(6, "exp of 20 seeded derivations is an endomorphism; binomial Leibniz, n <= 8")


def _hand_built_substitutions(bound):
    from nseries.samples import substitution_endomorphism

    out = []
    for k in range(1, 11):
        gen = HahnPoly(
            LEX1,
            bound,
            {(1,): 1, (2,): F(k, 2), (3,): F((-1) ** k * k, 3)},
        )
        out.append(substitution_endomorphism(LEX1, bound, {0: gen}))
    return out


def test_criterion_07_roundtrips():
    bound = 8
    for d in _derivation_corpus(20, bound, seed=601):
        assert op_log(op_exp(d)) == d
    for sigma in _hand_built_substitutions(bound):
        assert op_exp(op_log(sigma)) == sigma
        assert op_is_derivation(op_log(sigma))
    _report(7, "log(exp d) = d and exp(log s) = s on the full corpus")


def test_criterion_08_group_law():
    rng = random.Random(801)
    for _ in range(20):
        d1 = random_contracting_derivation(rng, LEX1, 6)
        d2 = random_contracting_derivation(rng, LEX1, 6)
        assert op_exp(star(d1, d2)) == op_compose(op_exp(d1), op_exp(d2))
    _report(8, "exp(d1 * d2) = exp(d1) o exp(d2), 20 seeded pairs at bound 6")


def test_criterion_09_divisibility_torsion():
    rng = random.Random(901)
    ident = OpTable.identity(LEX1, 6)
    for _ in range(5):
        sigma = op_exp(random_contracting_derivation(rng, LEX1, 6))
        half = fractional_iterate(sigma, F(1, 2))
        assert op_compose(half, half) == sigma
        third = fractional_iterate(sigma, F(1, 3))
        assert op_compose(op_compose(third, third), third) == sigma
        if sigma != ident:
            power = sigma
            for _ in range(5):
                assert power != ident
                power = op_compose(power, sigma)
    _report(9, "halves square back, thirds cube back, no torsion up to 5")


def test_criterion_10_explicit_flow():
    bound = 10

    def image(m):
        if m[0] + 1 > bound:
            return HahnPoly.zero(LEX1, bound)
        return HahnPoly.monomial(LEX1, bound, (m[0] + 1,), m[0])

    d = OpTable.from_function(LEX1, bound, image)
    # independent route: iterating the table on t gives n! t^(n+1)
    acc = HahnPoly.monomial(LEX1, bound, (1,))
    for n in range(1, bound):
        acc = op_apply(d, acc)
        assert acc == HahnPoly.monomial(LEX1, bound, (n + 1,), factorial(n))
    flowed = op_apply(op_exp(d), HahnPoly.monomial(LEX1, bound, (1,)))
    assert flowed == HahnPoly(LEX1, bound, {(k,): 1 for k in range(1, bound + 1)})
    _report(10, "exp(t^2 d/dt) sends t to t + t^2 + ... + t^10")


def test_criterion_11_vaut_decomposition_roundtrip():
    rng = random.Random(1101)
    bound = 6
    swap = ExponentAut(PROD2, ((0, 1), (1, 0)))
    for i in range(10):
        if i % 2 == 0:
            ctx, mu = LEX1, ExponentAut.identity(LEX1)
        else:
            ctx, mu = PROD2, (swap if i % 4 == 1 else ExponentAut.identity(PROD2))
        factors = FactorAut(
            mu,
            random_character(rng, ctx),
            op_exp(random_contracting_derivation(rng, ctx, bound)),
        )
        sigma = compose_factors(factors)
        assert compose_factors(decompose_vaut(sigma)) == sigma
    _report(11, "three-factor decomposition round-trips, 10 cases at d in {1,2}")


def test_criterion_12_factor_algebra():
    rng = random.Random(1201)
    bound = 6
    swap = ExponentAut(PROD2, ((0, 1), (1, 0)))
    for ctx in (LEX1, PROD2):
        for _ in range(10):
            x, y = random_character(rng, ctx), random_character(rng, ctx)
            assert op_compose(gexp_table(x, bound), gexp_table(y, bound)) == gexp_table(
                x * y, bound
            )
            a, b = random_additive_char(rng, ctx), random_additive_char(rng, ctx)
            assert gder_table(a, bound) + gder_table(b, bound) == gder_table(a + b, bound)
    for _ in range(5):
        residual = op_exp(random_contracting_derivation(rng, PROD2, bound))
        conj = op_compose(
            op_compose(oaut_table(swap, bound), residual),
            oaut_table(swap.inverse(), bound),
        )
        assert one_aut_check(conj)
    _report(12, "factor group laws and conjugation stability on the seeded corpus")


def test_criterion_13_evaluation_morphism_laws():
    rng = random.Random(1301)
    bound = 5
    for _ in range(20):
        P = random_free_series(rng, 2, bound)
        Q = random_free_series(rng, 2, bound)
        f = (
            random_contracting_table(rng, LEX1, bound),
            random_contracting_table(rng, LEX1, bound),
        )
        assert op_evaluate(P * Q, f) == op_compose(op_evaluate(P, f), op_evaluate(Q, f))
        Qs = {i: random_free_series(rng, 2, bound, constant=F(0)) for i in range(2)}
        lhs = op_evaluate(fs_substitute(P, Qs), f)
        rhs = op_evaluate(P, tuple(op_evaluate(Qs[i], f) for i in range(2)))
        assert lhs == rhs
    _report(13, "evaluation is multiplicative and associative, 20 seeded instances")


def test_criterion_14_order_utilities():
    rng = random.Random(1401)
    for _ in range(30):
        A = {(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(6)}
        B = {(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(6)}
        m = (rng.randint(0, 6), rng.randint(0, 6))
        brute = sorted((a, b) for a in A for b in B if vec_add(a, b) == m)
        assert sorted(convolution_pairs(PROD2, m, A, B)) == brute
    for n in range(2, 7):
        bad = [(k, n - k) for k in range(n + 1)]
        assert find_good_pair(PROD2, bad) is None
    frag = [(0, 1), (1, 0), (2, 2)]
    for _ in range(20):
        seq = [rng.choice(frag) for _ in range(len(frag) + 1)]
        assert find_good_pair(PROD2, seq) is not None
    _report(14, "convolution pairs match brute force; bad/good sequences classified")
