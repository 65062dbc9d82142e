"""Bundled verification suites behind ``cohnloc verify <suite>``.

Every suite returns a list of :class:`Check` records; a suite passes when
all of them do.  Random inputs come from fixed seeds so reruns agree.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cex2 import cex2_products
from .complexes import (
    ChainMap,
    FreeComplex,
    direct_sum,
    is_w_acyclic,
    make_w0_complex,
    mapping_cone,
)
from .errors import NotAUnit, UnknownSuite
from .groupring import GroupRingElement, GroupRingMatrix, pgroup_local_invert
from .groups import (
    alternating_group,
    binary_icosahedral_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    is_perfect,
    quaternion_group,
    symmetric_group,
)
from .homology import DEFAULT_BUDGET_MB, first_gap_lambda, group_homology, quillen_scan
from .localization import (
    LambdaContext,
    LambdaMatrix,
    coprime_vanishing_check,
    lambda_matrix_invert,
    perfect_subgroup_kill_check,
    sublemma_check,
    wh_membership,
)
from .rings.plocal import LocalRing

BUILTIN_GROUPS = {
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "Z6": lambda: cyclic_group(6),
    "Z9": lambda: cyclic_group(9),
    "Z2xZ2": lambda: direct_product(cyclic_group(2), cyclic_group(2)),
    "S3": lambda: symmetric_group(3),
    "S4": lambda: symmetric_group(4),
    "S5": lambda: symmetric_group(5),
    "A4": lambda: alternating_group(4),
    "A5": lambda: alternating_group(5),
    "D4": lambda: dihedral_group(4),
    "D5": lambda: dihedral_group(5),
    "Q8": quaternion_group,
    "A5xZ2": lambda: direct_product(alternating_group(5), cyclic_group(2)),
    "SL25": binary_icosahedral_group,
}

_CACHE = {}


def builtin_group(name):
    if name not in _CACHE:
        _CACHE[name] = BUILTIN_GROUPS[name]()
    return _CACHE[name]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


LEMMA32_BATTERY = ("Z6", "S3", "D4", "D5", "A4", "S4")
PGROUP_BATTERY = (("Z2", 2), ("Z4", 2), ("Z2xZ2", 2), ("Z3", 3), ("Z9", 3), ("Q8", 2), ("D4", 2))
QUILLEN_POSITIVE = (("Z2", 2), ("Z4", 2), ("S3", 2), ("S3", 3), ("A4", 2), ("A4", 3))
QUILLEN_NEGATIVE = (("Z3", 2), ("Z2", 3))


def coprime_pairs(G):
    orders = G.element_orders
    return [(x, y) for x in range(1, G.order) for y in range(1, G.order)
            if gcd(orders[x], orders[y]) == 1]


def suite_lemma32(groups=LEMMA32_BATTERY):
    out = []
    for name in groups:
        G = builtin_group(name)
        ctx = LambdaContext(G)
        pairs = coprime_pairs(G)
        bad = [(x, y) for x, y in pairs if not coprime_vanishing_check(ctx, x, y)]
        out.append(Check(f"{name}: (1-x)(1-y) = 0 for {len(pairs)} coprime pairs",
                         not bad, f"failures {bad[:3]}" if bad else ""))
    return out


def suite_sublemma(groups=LEMMA32_BATTERY):
    out = []
    for name in groups:
        G = builtin_group(name)
        ctx = LambdaContext(G)
        bad = [x for x in range(G.order) if not sublemma_check(ctx, x)]
        out.append(Check(f"{name}: 1-x = sum_p (1-x_p) for all {G.order} elements",
                         not bad, f"failures {bad[:3]}" if bad else ""))
    for name, members in (("A5", None), ("A5xZ2", "factor")):
        G = builtin_group(name)
        ctx = LambdaContext(G)
        if members is None:
            members = range(G.order)
        else:
            # the A5 factor: elements whose Z2 coordinate is trivial
            members = [g for g in range(G.order) if ctx.projections[0](g) == 0]
        out.append(Check(f"{name}: perfect subgroup of order {len(members)} maps to 1",
                         perfect_subgroup_kill_check(ctx, members)))
    return out


def random_local_element(G, p, rng, unit=True):
    """Random element of Z_(p)[G] whose augmentation is (or is not) a unit."""
    R = LocalRing(p)
    dens = [d for d in range(1, 8) if d % p]
    coeffs = {g: Fraction(rng.randint(-5, 5), rng.choice(dens)) for g in range(G.order)}
    aug = sum(coeffs.values())
    if unit:
        if aug.numerator % p == 0:
            coeffs[0] += 1
    else:
        coeffs[0] += p * rng.randint(-3, 3) - aug
    return GroupRingElement(G, {g: R(c) for g, c in coeffs.items() if c}, R)


def suite_prop110(count=50, seed=110):
    rng = random.Random(seed)
    out = []
    for name, p in PGROUP_BATTERY:
        G = builtin_group(name)
        one = GroupRingElement.one(G, LocalRing(p))
        ok = 0
        for _ in range(count):
            e = random_local_element(G, p, rng, unit=True)
            inv = pgroup_local_invert(e)
            ok += e * inv == one and inv * e == one
        refused = 0
        for _ in range(count):
            e = random_local_element(G, p, rng, unit=False)
            try:
                pgroup_local_invert(e)
            except NotAUnit:
                refused += 1
        out.append(Check(f"{name} (p={p}): {ok}/{count} units inverted", ok == count))
        out.append(Check(f"{name} (p={p}): {refused}/{count} non-units refused",
                         refused == count))
    return out


def random_unimodular(n, rng, steps=4):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    for i in range(n):
        if rng.random() < 0.5:
            M[i] = [-a for a in M[i]]
    return M


def random_augmentation_zero(G, rng, terms=2):
    coeffs = {}
    for _ in range(terms):
        g = rng.randrange(1, G.order) if G.order > 1 else 0
        c = rng.randint(-2, 2)
        coeffs[g] = coeffs.get(g, 0) + c
        coeffs[0] = coeffs.get(0, 0) - c
    return GroupRingElement(G, coeffs)


def random_wh_matrix(G, n, rng):
    """Integer unimodular matrix perturbed by augmentation-zero entries."""
    U = random_unimodular(n, rng)
    rows = [[GroupRingElement(G, {0: U[i][j]} if U[i][j] else {}) + random_augmentation_zero(G, rng)
             for j in range(n)] for i in range(n)]
    return GroupRingMatrix(G, rows)


def two_minus_x_check():
    """Inverse of the 1x1 matrix ``[[2 - x]]`` over S3 with ``x`` a transposition."""
    G = builtin_group("S3")
    ctx = LambdaContext(G)
    x = next(g for g in range(G.order) if G.element_orders[g] == 2)
    M = GroupRingMatrix(G, [[GroupRingElement(G, {0: 2, x: -1})]])
    inv = lambda_matrix_invert(LambdaMatrix.from_group_ring(ctx, M))
    u = inv.components[0].entries[0][0]
    xbar = ctx.projections[0](x)
    got = {g: c.value for g, c in u.terms}
    return got == {0: Fraction(2, 3), xbar: Fraction(1, 3)}, f"{got}"


def suite_matrices(count=100, seed=4, n=3):
    rng = random.Random(seed)
    G = builtin_group("S3")
    ctx = LambdaContext(G)
    good = 0
    for _ in range(count):
        M = random_wh_matrix(G, n, rng)
        if not wh_membership(M):
            continue
        L = LambdaMatrix.from_group_ring(ctx, M)
        inv = lambda_matrix_invert(L)
        ident = LambdaMatrix.identity(ctx, n)
        good += L @ inv == ident and inv @ L == ident
    ok, detail = two_minus_x_check()
    return [Check(f"S3: {good}/{count} perturbed unimodular {n}x{n} matrices inverted over Lambda",
                  good == count),
            Check("S3: [[2-x]]^-1 has G_2 component 2/3 + (1/3)x", ok, detail)]


def suite_example2(budget_mb=DEFAULT_BUDGET_MB, stretch=False):
    G = builtin_group("A5")
    out = [Check("A5 is perfect", is_perfect(G))]
    H1 = group_homology(G, 1, budget_mb=budget_mb)
    out.append(Check("H_1(A5) = 0", H1.is_zero(), str(H1)))
    L1 = first_gap_lambda(G, 1, normalized=True, budget_mb=budget_mb)
    out.append(Check("H_2(A5) = Z/2, so Lambda_1 = Z/2", str(L1) == "Z/2", str(L1)))
    if stretch:
        B = builtin_group("SL25")
        H3 = group_homology(B, 3, normalized=True, budget_mb=budget_mb)
        out.append(Check("H_3(SL(2,5)) = Z/120", str(H3) == "Z/120", str(H3)))
    return out


def suite_quillen(bound=4, budget_mb=DEFAULT_BUDGET_MB):
    out = []
    for name, p in QUILLEN_POSITIVE:
        i = quillen_scan(builtin_group(name), p, bound, budget_mb=budget_mb)
        out.append(Check(f"{name}, p={p}: nonzero H_i(G, Z_({p})) with i <= {bound}",
                         i is not None, f"first i = {i}"))
    for name, p in QUILLEN_NEGATIVE:
        i = quillen_scan(builtin_group(name), p, bound, budget_mb=budget_mb)
        out.append(Check(f"{name}, p={p}: H_i(G, Z_({p})) = 0 for 1 <= i <= {bound}",
                         i is None, f"first i = {i}"))
    return out


def suite_cex2():
    labels = ("(1-x)(1-y)", "(1-y)(1-x)", "xy-yx")
    mats = cex2_products()
    return [Check(f"phi({lab}) = {m}", not m.is_zero()) for lab, m in zip(labels, mats)]


def _acyclic_count_ok(*flags):
    # in a cofiber sequence exactly two acyclic terms is impossible
    return sum(flags) != 2


def suite_complexes(count=20, seed=8):
    rng = random.Random(seed)
    out = []
    for name in ("S3", "A4"):
        G = builtin_group(name)
        ctx = LambdaContext(G)
        good = 0
        for _ in range(count):
            k = rng.randint(1, 2)
            good += is_w_acyclic(make_w0_complex(random_wh_matrix(G, k, rng)), ctx)
        out.append(Check(f"{name}: {good}/{count} W_0 complexes are W-acyclic", good == count))
        bad = 0
        for _ in range(count // 4):
            k = rng.randint(1, 2)
            rows = [[random_augmentation_zero(G, rng) for _ in range(k)] for _ in range(k)]
            C = FreeComplex(G, 0, (k, k), {1: GroupRingMatrix(G, rows)})
            bad += not is_w_acyclic(C, ctx)
        out.append(Check(f"{name}: {bad}/{count // 4} augmentation-zero two-term complexes "
                         "are not W-acyclic", bad == count // 4))
    G = builtin_group("S3")
    ctx = LambdaContext(G)
    consistent = 0
    for t in range(count):
        k = rng.randint(1, 2)
        alpha = random_wh_matrix(G, k, rng)
        if t % 3 == 2:
            # replace by an augmentation-zero differential
            alpha = GroupRingMatrix(G, [[random_augmentation_zero(G, rng) for _ in range(k)]
                                        for _ in range(k)])
        beta = (random_wh_matrix(G, k, rng) if t % 2 else
                GroupRingMatrix(G, [[random_augmentation_zero(G, rng) for _ in range(k)]
                                    for _ in range(k)]))
        C = FreeComplex(G, 0, (k, k), {1: alpha})
        D = FreeComplex(G, 0, (k, k), {1: beta @ alpha})
        f = ChainMap(C, D, {1: GroupRingMatrix.identity(G, k), 0: beta})
        a, b, c = (is_w_acyclic(X, ctx) for X in (C, D, mapping_cone(f)))
        s = is_w_acyclic(direct_sum(C, D), ctx)
        consistent += _acyclic_count_ok(a, b, c) and s == (a and b)
    out.append(Check(f"S3: two-out-of-three holds on {consistent}/{count} cone and sum triples",
                     consistent == count))
    return out


SUITES = {
    "lemma32": suite_lemma32,
    "sublemma": suite_sublemma,
    "prop110": suite_prop110,
    "matrices": suite_matrices,
    "example2": suite_example2,
    "quillen": suite_quillen,
    "cex2": suite_cex2,
    "complexes": suite_complexes,
}


def run_suite(name, **kwargs):
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(**kwargs)
