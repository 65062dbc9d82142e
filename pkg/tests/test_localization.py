import random
from fractions import Fraction
from math import gcd

import pytest

from cohnloc.errors import (
    ContextMismatch,
    NotAUnit,
    NotCoprimeOrders,
    NotInvertibleOverZ,
    NotPerfect,
    NotPrime,
    NotSquare,
    ParseError,
    TheoremViolation,
)
from cohnloc.groupring import GroupRingElement, GroupRingMatrix
from cohnloc.localization import (
    LambdaContext,
    LambdaElement,
    LambdaMatrix,
    build_context,
    canonical_map,
    coprime_vanishing_check,
    factor_lifts,
    format_lambda,
    lambda_invert,
    lambda_is_unit,
    lambda_matrix_invert,
    mod_p_localization_descriptor,
    parse_lambda,
    perfect_subgroup_kill_check,
    sublemma_check,
    theorem_b_report,
    theoremB_report,
    wh_membership,
    ws_membership,
)
from cohnloc.groups import is_nilpotent
from cohnloc.suites import LEMMA32_BATTERY, builtin_group, coprime_pairs, random_wh_matrix

S3 = builtin_group("S3")
CTX = LambdaContext(S3)
X = 1  # a transposition
Y = 2  # a 3-cycle


def el(G, coeffs):
    return GroupRingElement(G, coeffs)


def test_canonical_elements_of_s3():
    assert S3.element_orders[X] == 2 and S3.element_orders[Y] == 3


def test_build_context():
    assert build_context(S3).primes == (2,)
    assert CTX.quotients[0].order == 2
    assert build_context(builtin_group("A5")).primes == ()
    assert build_context(builtin_group("Z6")).primes == (2, 3)


def test_describe():
    assert CTX.describe() == "Z_(2)[C2] ×_{Z_(2)} Z"
    assert build_context(builtin_group("A5")).describe() == "Z"
    assert build_context(builtin_group("Z6")).describe() == \
        "(Z_(2)[C2] × Z_(3)[C3]) ×_{Z_(2)×Z_(3)} Z"


def test_canonical_map_examples():
    y = canonical_map(CTX, GroupRingElement.basis(S3, Y))
    assert y == CTX.one()
    assert canonical_map(CTX, el(S3, {0: 1, Y: -1})).is_zero()
    x = canonical_map(CTX, GroupRingElement.basis(S3, X))
    assert x.z == 1 and x.components[0] == GroupRingElement.basis(CTX.quotients[0], 1,
                                                                  CTX.rings[0])


def test_canonical_map_context_mismatch():
    with pytest.raises(ContextMismatch):
        canonical_map(CTX, GroupRingElement.one(builtin_group("Z2")))


@pytest.mark.parametrize("name", ["S3", "Z6", "A4", "D5", "Q8", "S4"])
def test_canonical_map_is_ring_homomorphism(name):
    G = builtin_group(name)
    ctx = LambdaContext(G)
    rng = random.Random(11)
    for _ in range(8):
        a = el(G, {g: rng.randint(-3, 3) for g in range(G.order)})
        b = el(G, {g: rng.randint(-3, 3) for g in range(G.order)})
        fa, fb = canonical_map(ctx, a), canonical_map(ctx, b)
        assert canonical_map(ctx, a * b) == fa * fb
        assert canonical_map(ctx, a + b) == fa + fb
        prod = fa * fb
        for u in prod.components:
            assert u.augmentation() == prod.z
    assert canonical_map(ctx, GroupRingElement.one(G)) == ctx.one()


def test_pullback_condition_enforced():
    comp = GroupRingElement.one(CTX.quotients[0], CTX.rings[0])
    with pytest.raises(TheoremViolation):
        LambdaElement(CTX, 2, (comp,))


def test_unit_examples():
    two_minus_x = canonical_map(CTX, el(S3, {0: 2, X: -1}))
    assert lambda_is_unit(two_minus_x)
    assert not lambda_is_unit(canonical_map(CTX, el(S3, {0: 1, X: -1})))
    assert lambda_is_unit(canonical_map(CTX, el(S3, {0: -1})))


def test_lambda_invert_examples():
    inv = lambda_invert(canonical_map(CTX, el(S3, {0: 2, X: -1})))
    assert inv.z == 1
    assert {g: c.value for g, c in inv.components[0].terms} == {0: Fraction(2, 3),
                                                                 1: Fraction(1, 3)}
    assert lambda_invert(CTX.one()) == CTX.one()
    with pytest.raises(NotAUnit):
        lambda_invert(canonical_map(CTX, el(S3, {0: 1, X: -1})))


@pytest.mark.parametrize("name", ["S3", "Z6", "A4", "Q8", "D5"])
def test_unit_group_characterization(name):
    G = builtin_group(name)
    ctx = LambdaContext(G)
    rng = random.Random(5)
    for _ in range(15):
        a = el(G, {g: rng.randint(-3, 3) for g in range(G.order)})
        # shift the identity coefficient so that the augmentation is +-1 half the time
        if rng.random() < 0.5:
            a = a + el(G, {0: rng.choice([1, -1]) - a.augmentation()})
        e = canonical_map(ctx, a)
        unit = lambda_is_unit(e)
        assert unit == (e.z in (1, -1))
        if unit:
            inv = lambda_invert(e)
            assert e * inv == ctx.one() and inv * e == ctx.one()
        else:
            with pytest.raises(NotAUnit):
                lambda_invert(e)


def test_membership_examples():
    two_minus_x = GroupRingMatrix(S3, [[el(S3, {0: 2, X: -1})]])
    one_minus_x = GroupRingMatrix(S3, [[el(S3, {0: 1, X: -1})]])
    unipotent = GroupRingMatrix(S3, [[1, el(S3, {0: 1, Y: -1})], [0, 1]])
    assert wh_membership(two_minus_x) and ws_membership(two_minus_x)
    assert not wh_membership(one_minus_x) and not ws_membership(one_minus_x)
    assert wh_membership(unipotent)
    minus_one = GroupRingMatrix(S3, [[-1]])
    assert wh_membership(minus_one) and not ws_membership(minus_one)
    with pytest.raises(NotSquare):
        wh_membership(GroupRingMatrix(S3, [[1, 0]]))


def test_ws_subset_of_wh():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 3)
        M = GroupRingMatrix(S3, [[el(S3, {g: rng.randint(-1, 1) for g in range(3)})
                                  for _ in range(n)] for _ in range(n)])
        if ws_membership(M):
            assert wh_membership(M)
    # the random W^h generator really lands in W^h
    for _ in range(10):
        assert wh_membership(random_wh_matrix(S3, 3, rng))


def test_matrix_invert_examples():
    one_minus_x = el(S3, {0: 1, X: -1})
    U = GroupRingMatrix(S3, [[1, one_minus_x], [0, 1]])
    inv = lambda_matrix_invert(LambdaMatrix.from_group_ring(CTX, U))
    expected = LambdaMatrix.from_group_ring(CTX, GroupRingMatrix(S3, [[1, -one_minus_x], [0, 1]]))
    assert inv == expected
    M = LambdaMatrix.from_group_ring(CTX, GroupRingMatrix(S3, [[el(S3, {0: 2, X: -1})]]))
    assert lambda_matrix_invert(M)[0, 0] == lambda_invert(M[0, 0])
    with pytest.raises(NotInvertibleOverZ):
        lambda_matrix_invert(LambdaMatrix.from_group_ring(
            CTX, GroupRingMatrix(S3, [[one_minus_x]])))


def test_unipotent_plus_kernel_is_invertible():
    # identity integer corner, arbitrary augmentation-zero perturbation
    rng = random.Random(9)
    G = builtin_group("A4")
    ctx = LambdaContext(G)
    for _ in range(5):
        rows = []
        for i in range(2):
            row = []
            for j in range(2):
                c = {g: rng.randint(-2, 2) for g in range(1, G.order)}
                c[0] = int(i == j) - sum(c.values())
                row.append(el(G, c))
            rows.append(row)
        L = LambdaMatrix.from_group_ring(ctx, GroupRingMatrix(G, rows))
        inv = lambda_matrix_invert(L)
        assert L @ inv == LambdaMatrix.identity(ctx, 2)


def test_coprime_vanishing_examples():
    assert coprime_vanishing_check(CTX, X, Y)
    A4 = builtin_group("A4")
    x = A4.element_orders.index(2)
    y = A4.element_orders.index(3)
    assert coprime_vanishing_check(LambdaContext(A4), x, y)
    Z6 = builtin_group("Z6")
    assert coprime_vanishing_check(LambdaContext(Z6), Z6.element_orders.index(2),
                                   Z6.element_orders.index(3))
    with pytest.raises(NotCoprimeOrders):
        coprime_vanishing_check(CTX, X, X)


@pytest.mark.parametrize("name", LEMMA32_BATTERY)
def test_coprime_vanishing_exhaustive(name):
    G = builtin_group(name)
    ctx = LambdaContext(G)
    pairs = coprime_pairs(G)
    assert all(coprime_vanishing_check(ctx, x, y) for x, y in pairs)
    if not is_nilpotent(G) or len(ctx.primes) > 1:
        # the battery is not vacuous: the elements involved are nontrivial in Lambda
        assert pairs


def test_coprime_vanishing_not_vacuous():
    # in Z6 neither factor vanishes on its own, only the product does
    Z6 = builtin_group("Z6")
    ctx = LambdaContext(Z6)
    x, y = Z6.element_orders.index(2), Z6.element_orders.index(3)
    a = ctx.one() - ctx.group_element(x)
    b = ctx.one() - ctx.group_element(y)
    assert not a.is_zero() and not b.is_zero() and (a * b).is_zero()


def test_sublemma_examples():
    Z6 = builtin_group("Z6")
    ctx = LambdaContext(Z6)
    gen = Z6.element_orders.index(6)
    assert sublemma_check(ctx, gen)
    assert sublemma_check(CTX, 0)
    assert sublemma_check(CTX, Y)


@pytest.mark.parametrize("name", LEMMA32_BATTERY)
def test_sublemma_all_elements(name):
    G = builtin_group(name)
    ctx = LambdaContext(G)
    assert all(sublemma_check(ctx, x) for x in range(G.order))


def test_factor_lifts_are_correct():
    Z6 = builtin_group("Z6")
    ctx = LambdaContext(Z6)
    for x in range(6):
        for k, p in enumerate(ctx.primes):
            for lift in factor_lifts(ctx, x, p):
                img = [h(lift) for h in ctx.projections]
                assert img[k] == ctx.projections[k](x)
                assert all(v == 0 for i, v in enumerate(img) if i != k)
                # the lift has p-power order
                o = Z6.element_orders[lift]
                assert o == 1 or all(q == p for q in _prime_factors(o))


def _prime_factors(n):
    out, d = set(), 2
    while n > 1:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    return out


def test_perfect_subgroup_kill():
    A5 = builtin_group("A5")
    assert perfect_subgroup_kill_check(LambdaContext(A5), range(60))
    S5 = builtin_group("S5")
    even = [g for g in range(S5.order) if _is_even(S5, g)]
    assert perfect_subgroup_kill_check(LambdaContext(S5), even)
    assert perfect_subgroup_kill_check(CTX, [0])
    with pytest.raises(NotPerfect):
        perfect_subgroup_kill_check(CTX, [0, 2, 5])


def _is_even(G, g):
    # an element of S5 is even iff it is a product of elements of odd order
    return G.element_orders[g] % 2 == 1 or _cycle_parity(G.element_names[g]) == 0


def _cycle_parity(name):
    parity = 0
    for part in name.strip("()").split(")("):
        if part:
            parity += len(part.split()) - 1
    return parity % 2


@pytest.mark.parametrize("name", ["Z6", "S3", "A5", "Q8", "D4", "A4", "S4", "D5", "Z9"])
def test_theorem_b(name):
    G = builtin_group(name)
    rep = theorem_b_report(G)
    assert rep.nilpotent == (rep.lower_central_series_orders[-1] == 1)
    assert all(v == rep.nilpotent for v in rep.conditions.values())
    if rep.nilpotent:
        assert rep.kernel_of_nilpotentization.order == 1
        ctx = LambdaContext(G)
        assert tuple(sorted(rep.omegas)) == ctx.primes
        for p, w in rep.omegas.items():
            n_p = ctx.quotients[ctx.primes.index(p)].order
            assert w * w == w * n_p
            assert all(GroupRingElement.basis(G, g) * w == w * GroupRingElement.basis(G, g)
                       for g in range(G.order))
    else:
        assert rep.omegas == {}


def test_theorem_b_examples():
    assert theoremB_report is theorem_b_report
    r = theorem_b_report(builtin_group("Z6"))
    assert r.nilpotent and r.kernel_of_nilpotentization.order == 1 and sorted(r.omegas) == [2, 3]
    r = theorem_b_report(S3)
    assert not r.nilpotent and r.kernel_of_nilpotentization.order == 3
    r = theorem_b_report(builtin_group("A5"))
    assert not r.nilpotent and r.kernel_of_nilpotentization.order == 60


def test_omega_transfer_z2():
    Z2 = builtin_group("Z2")
    ctx = LambdaContext(Z2)
    w = canonical_map(ctx, el(Z2, {0: 1, 1: -1}))
    assert w * w == w + w


def test_mod_p_descriptor():
    assert str(mod_p_localization_descriptor(S3, 2)) == "Z_(2)[C2]"
    assert str(mod_p_localization_descriptor(S3, 3)) == "Z_(3)"
    assert str(mod_p_localization_descriptor(builtin_group("A5"), 5)) == "Z_(5)"
    with pytest.raises(NotPrime):
        mod_p_localization_descriptor(S3, 9)


def test_lambda_format_round_trip():
    Z6 = builtin_group("Z6")
    ctx = LambdaContext(Z6)
    rng = random.Random(2)
    for _ in range(10):
        e = canonical_map(ctx, el(Z6, {g: rng.randint(-4, 4) for g in range(6)}))
        if lambda_is_unit(e):
            e = lambda_invert(e)
        assert parse_lambda(format_lambda(e), ctx) == e
    assert format_lambda(canonical_map(CTX, el(S3, {0: 2, X: -1}))) == \
        "z=1; p=2:(2)*g0 + (-1)*g1"
    with pytest.raises(ParseError):
        parse_lambda("p=2:(1)*g0", CTX)
    with pytest.raises(ParseError):
        parse_lambda("z=1", CTX)


def test_coprime_orders_gcd_helper():
    for x, y in coprime_pairs(builtin_group("D5")):
        assert gcd(builtin_group("D5").element_orders[x], builtin_group("D5").element_orders[y]) == 1
