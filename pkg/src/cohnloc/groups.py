"""Finite groups given by multiplication tables.

Elements are the integers ``0 .. order-1`` with ``0`` the identity.  Every
constructor routes through :func:`closure`, which enumerates elements
breadth-first from a list of generators, so the numbering of a group only
depends on its generators (and their order), never on hashing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod

from sympy.ntheory import factorint, isprime

from .errors import (
    IndexOutOfRange,
    InputError,
    NotABijection,
    NotPrime,
    OrderCapExceeded,
    TheoremViolation,
)

DEFAULT_ORDER_CAP = 2 ** 14


def closure(identity, generators, mul, cap=DEFAULT_ORDER_CAP):
    """Enumerate the group generated by ``generators`` under ``mul``.

    Layer by layer: the next layer consists of the products ``f * g`` for
    ``g`` running over the generators (outer loop) and ``f`` over the
    current layer (inner loop), keeping the first occurrence.

    Returns the list of elements in canonical order (identity first).
    """
    elements = [identity]
    seen = {identity: 0}
    layer = [identity]
    while layer:
        nxt = []
        for g in generators:
            for f in layer:
                h = mul(f, g)
                if h not in seen:
                    seen[h] = len(elements)
                    elements.append(h)
                    nxt.append(h)
                    if len(elements) > cap:
                        raise OrderCapExceeded(f"group order exceeds cap {cap}")
        layer = nxt
    return elements


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: tuple
    generators: tuple = ()
    element_names: tuple | None = None
    inverses: tuple = field(init=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise InputError("a group has at least one element")
        inv = [None] * n
        for a, row in enumerate(self.table):
            if len(row) != n:
                raise InputError("multiplication table is not square")
            for b, c in enumerate(row):
                if c == 0:
                    inv[a] = b
        if any(i is None for i in inv):
            raise InputError("element without inverse; identity must be index 0")
        object.__setattr__(self, "inverses", tuple(inv))

    @property
    def order(self):
        return len(self.table)

    def same_as(self, other):
        """Equal table, generators and names (``==`` is identity)."""
        return (isinstance(other, FiniteGroup) and self.table == other.table
                and self.generators == other.generators
                and self.element_names == other.element_names)

    def __len__(self):
        return len(self.table)

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, generators={list(self.generators)})"

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverses[a]

    def power(self, a, k):
        if k < 0:
            a, k = self.inverses[a], -k
        result = 0
        while k:
            if k & 1:
                result = self.table[result][a]
            a = self.table[a][a]
            k >>= 1
        return result

    def conj(self, a, g):
        """``g a g^-1``."""
        return self.table[self.table[g][a]][self.inverses[g]]

    def commutator(self, a, b):
        """``a^-1 b^-1 a b``."""
        t = self.table
        return t[t[t[self.inverses[a]][self.inverses[b]]][a]][b]

    def name(self, a):
        if self.element_names is None:
            return f"g{a}"
        return self.element_names[a]

    @cached_property
    def element_orders(self):
        return tuple(_order_of(self, g) for g in range(self.order))

    @cached_property
    def order_factorization(self):
        return dict(sorted(factorint(self.order).items()))

    @property
    def primes(self):
        return list(self.order_factorization)

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple

    def __post_init__(self):
        s, t, im = self.source, self.target, self.images
        if len(im) != s.order or (im and im[0] != 0):
            raise InputError("images must list one target index per source element, 0 -> 0")
        for a in range(s.order):
            ia = im[a]
            row = s.table[a]
            trow = t.table[ia]
            for b in range(s.order):
                if im[row[b]] != trow[im[b]]:
                    raise TheoremViolation("map is not a homomorphism")

    def __call__(self, g):
        return self.images[g]

    def kernel(self):
        return tuple(g for g, h in enumerate(self.images) if h == 0)

    def is_surjective(self):
        return len(set(self.images)) == self.target.order

    def is_bijective(self):
        return self.is_surjective() and self.source.order == self.target.order

    def preimages(self, h):
        return [g for g, x in enumerate(self.images) if x == h]


@dataclass(frozen=True, eq=False)
class NormalSubgroup:
    parent: FiniteGroup
    members: tuple

    def __post_init__(self):
        G = self.parent
        mem = set(self.members)
        if 0 not in mem or tuple(sorted(mem)) != tuple(self.members):
            raise InputError("members must be a sorted index set containing 0")
        for a in self.members:
            if G.inv(a) not in mem:
                raise TheoremViolation("subgroup not closed under inversion")
            for b in self.members:
                if G.mul(a, b) not in mem:
                    raise TheoremViolation("subgroup not closed under multiplication")
            for g in G.generators or range(G.order):
                if G.conj(a, g) not in mem:
                    raise TheoremViolation("subgroup is not normal")

    @property
    def order(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self._set

    @cached_property
    def _set(self):
        return frozenset(self.members)


def _order_of(G, g):
    k, x = 1, g
    while x != 0:
        x = G.table[x][g]
        k += 1
    return k


def _check_prime(p):
    if not isinstance(p, int) or not isprime(p):
        raise NotPrime(f"{p!r} is not prime")


# ---------------------------------------------------------------- constructors

def _compose(a, b):
    # (a*b)(i) = a(b(i)): apply b first
    return tuple(a[i] for i in b)


def cycle_notation(perm):
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def _from_elements(identity, gens, mul, cap, names=None):
    elements = closure(identity, gens, mul, cap)
    index = {e: i for i, e in enumerate(elements)}
    table = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
    gen_idx = tuple(dict.fromkeys(index[g] for g in gens if index[g] != 0))
    element_names = tuple(names(e) for e in elements) if names else None
    return FiniteGroup(table, gen_idx, element_names), elements


def group_from_permutations(degree, generators, cap=DEFAULT_ORDER_CAP):
    """Closure of permutations of ``{0..degree-1}`` given in image form.

    >>> group_from_permutations(3, [(1, 0, 2), (1, 2, 0)]).order
    6
    """
    if degree < 1:
        raise InputError("degree must be positive")
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise NotABijection(f"{g} is not a bijection on 0..{degree - 1}")
        gens.append(g)
    identity = tuple(range(degree))
    G, _ = _from_elements(identity, gens, _compose, cap, cycle_notation)
    return G


def group_from_table(table, cap=DEFAULT_ORDER_CAP):
    """Group from a multiplication table with arbitrary labelling.

    The table is validated (Latin square, identity, associativity) and then
    relabelled canonically from a greedily chosen generating set.
    """
    table = [list(map(int, row)) for row in table]
    e = validate_table(table, cap)
    n = len(table)
    mul = lambda a, b: table[a][b]  # noqa: E731
    gens, span = [], {e}
    for g in range(n):
        if g not in span:
            gens.append(g)
            span = set(closure(e, gens, mul, cap))
    G, _ = _from_elements(e, gens, mul, cap)
    return G


def validate_table(table, cap=DEFAULT_ORDER_CAP):
    """Check Latin square, identity and associativity; return the identity index."""
    n = len(table)
    if n == 0:
        raise InputError("a group has at least one element")
    if n > cap:
        raise OrderCapExceeded(f"group order exceeds cap {cap}")
    full = list(range(n))
    if any(len(row) != n for row in table):
        raise InputError("multiplication table is not square")
    for row in table:
        if sorted(row) != full:
            raise InputError("multiplication table is not a Latin square")
    for c in range(n):
        if sorted(table[r][c] for r in range(n)) != full:
            raise InputError("multiplication table is not a Latin square")
    ids = [e for e in range(n) if table[e] == full]
    if len(ids) != 1:
        raise InputError("no two-sided identity in table")
    e = ids[0]
    if any(table[a][e] != a for a in range(n)):
        raise InputError("no two-sided identity in table")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise InputError("multiplication table is not associative")
    return e


def cyclic_group(n):
    return group_from_permutations(n, [tuple((i + 1) % n for i in range(n))]) if n > 1 \
        else group_from_permutations(1, [])


def dihedral_group(n):
    """Symmetries of the regular ``n``-gon, order ``2n``."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return group_from_permutations(n, [ref, rot])


def symmetric_group(n):
    if n == 1:
        return group_from_permutations(1, [])
    swap = (1, 0) + tuple(range(2, n))
    cyc = tuple((i + 1) % n for i in range(n))
    return group_from_permutations(n, [swap, cyc])


def alternating_group(n):
    if n < 3:
        return group_from_permutations(max(n, 1), [])
    gens = []
    for k in range(2, n):
        # 3-cycle (0 1 k)
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return group_from_permutations(n, gens)


def quaternion_group():
    """Q8 acting on itself (regular permutation representation)."""
    # elements: +-1, +-i, +-j, +-k encoded 0..7 as (sign, unit)
    units = "1ijk"
    mult = {("1", u): (1, u) for u in units}
    mult.update({(u, "1"): (1, u) for u in units})
    mult.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for s in (1, -1) for u in units]
    code = {e: i for i, e in enumerate(elems)}

    def left(x):
        s0, u0 = x
        perm = []
        for s1, u1 in elems:
            s, u = mult[(u0, u1)]
            perm.append(code[(s * s0 * s1, u)])
        return tuple(perm)

    return group_from_permutations(8, [left((1, "i")), left((1, "j"))])


def direct_product(*groups):
    """Direct product; generators are the factor generators in factor order."""
    if not groups:
        return group_from_permutations(1, [])
    identity = tuple(0 for _ in groups)
    gens = []
    for k, H in enumerate(groups):
        for g in H.generators:
            gens.append(tuple(g if i == k else 0 for i in range(len(groups))))

    def mul(a, b):
        return tuple(H.table[x][y] for H, x, y in zip(groups, a, b))

    G, _ = _from_elements(identity, gens, mul, DEFAULT_ORDER_CAP)
    return G


def _sl2_mul(p):
    def mul(a, b):
        return ((a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p,
                (a[2] * b[0] + a[3] * b[2]) % p, (a[2] * b[1] + a[3] * b[3]) % p)
    return mul


def binary_icosahedral_group():
    """SL(2, 5), the universal central extension of A5 (order 120)."""
    G, _ = _from_elements((1, 0, 0, 1), [(1, 1, 0, 1), (0, 4, 1, 0)], _sl2_mul(5),
                          DEFAULT_ORDER_CAP)
    return G


# ------------------------------------------------------------------ subgroups

def element_order(G, g):
    if not 0 <= g < G.order:
        raise IndexOutOfRange(f"element index {g} outside 0..{G.order - 1}")
    return G.element_orders[g]


def subgroup_generated(G, elements):
    """Sorted member tuple of the subgroup generated by ``elements``."""
    gens = [g for g in dict.fromkeys(elements) if g != 0]
    return tuple(sorted(closure(0, gens, G.mul, G.order)))


def is_normal(G, members):
    mem = set(members)
    return all(G.conj(a, g) in mem for a in members for g in range(G.order))


def normal_closure(G, elements):
    conj = {G.conj(a, g) for a in elements for g in range(G.order)}
    return subgroup_generated(G, sorted(conj))


def commutator_subgroup(G, A=None, B=None):
    """``[A, B]`` for subgroups given as member tuples (default ``G``)."""
    A = range(G.order) if A is None else A
    B = range(G.order) if B is None else B
    comms = {G.commutator(a, b) for a in A for b in B}
    return subgroup_generated(G, sorted(comms))


def is_perfect(G, members=None):
    members = tuple(range(G.order)) if members is None else tuple(sorted(members))
    return commutator_subgroup(G, members, members) == members


def coprime_generated_subgroup(G, p):
    """Subgroup generated by the elements of order prime to ``p``.

    The generating set is closed under conjugation, so the result is normal;
    :class:`NormalSubgroup` re-checks this on construction.
    """
    _check_prime(p)
    gens = [g for g, k in enumerate(G.element_orders) if gcd(k, p) == 1]
    return NormalSubgroup(G, subgroup_generated(G, gens))


def quotient(G, N):
    """``G / N`` with canonical numbering and the projection."""
    members = N.members if isinstance(N, NormalSubgroup) else tuple(sorted(N))
    rep = [None] * G.order
    for g in range(G.order):
        if rep[g] is None:
            coset = [G.mul(g, n) for n in members]
            r = min(coset)
            for x in coset:
                rep[x] = r
    gens = [rep[g] for g in G.generators]
    mul = lambda a, b: rep[G.mul(a, b)]  # noqa: E731
    Q, elements = _from_elements(0, gens, mul, G.order)
    index = {e: i for i, e in enumerate(elements)}
    return Q, GroupHom(G, Q, tuple(index[rep[g]] for g in range(G.order)))


def p_quotient(G, p):
    """Largest ``p``-group quotient ``G_p`` and the projection onto it."""
    Q, hom = quotient(G, coprime_generated_subgroup(G, p))
    f = factorint(Q.order)
    if Q.order > 1 and list(f) != [p]:
        raise TheoremViolation(f"quotient of order {Q.order} is not a {p}-group")
    return Q, hom


def nontrivial_p_quotients(G):
    """``[(p, G_p, G -> G_p)]`` for the primes with ``|G_p| > 1``, sorted by ``p``."""
    out = []
    for p in G.primes:
        Q, hom = p_quotient(G, p)
        if Q.order > 1:
            out.append((p, Q, hom))
    return out


def lower_central_series(G):
    series = [tuple(range(G.order))]
    while True:
        nxt = commutator_subgroup(G, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def universal_nilpotent_quotient(G, factors=None):
    """The product of the nontrivial ``G_p`` with the induced surjection."""
    factors = nontrivial_p_quotients(G) if factors is None else factors
    if not factors:
        T = group_from_permutations(1, [])
        return T, GroupHom(G, T, (0,) * G.order)
    homs = [h for _, _, h in factors]
    groups = [Q for _, Q, _ in factors]

    def image(g):
        return tuple(h(g) for h in homs)

    def mul(a, b):
        return tuple(Q.table[x][y] for Q, x, y in zip(groups, a, b))

    gens = [image(g) for g in G.generators]
    P, elements = _from_elements(tuple(0 for _ in homs), gens, mul, DEFAULT_ORDER_CAP)
    index = {e: i for i, e in enumerate(elements)}
    if P.order != prod(Q.order for Q in groups):
        raise TheoremViolation("projection onto the product of the G_p is not onto")
    return P, GroupHom(G, P, tuple(index[image(g)] for g in range(G.order)))


def is_nilpotent(G):
    """Lower central series test, cross-checked against ``|G| == prod |G_p|``."""
    by_series = len(lower_central_series(G)[-1]) == 1
    by_order = prod(Q.order for _, Q, _ in nontrivial_p_quotients(G)) == G.order
    if by_series != by_order:
        raise TheoremViolation("nilpotency tests disagree")
    return by_series


def abelian_invariants(G):
    """Invariant factors ``d1 | d2 | ...`` (each >= 2) of an abelian group.

    Read off from how many elements are killed by each prime power, so it is
    independent of any matrix reduction.
    """
    if not G.is_abelian():
        raise InputError("group is not abelian")
    orders = G.element_orders
    per_prime = {}
    for p in G.primes:
        # log_p #{x : x^(p^k) = 1} = sum_i min(k, e_i)
        counts, k = [0], 1
        while True:
            c = sum(1 for o in orders if (p ** k) % o == 0)
            counts.append(round(_log(c, p)))
            if counts[-1] == counts[-2]:
                break
            k += 1
        # number of cyclic factors of exponent >= k is counts[k] - counts[k-1]
        ge = [counts[j] - counts[j - 1] for j in range(1, len(counts))]
        exps = []
        for j, m in enumerate(ge):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            exps += [j + 1] * (m - nxt)
        per_prime[p] = sorted(exps)
    width = max((len(v) for v in per_prime.values()), default=0)
    factors = [1] * width
    for p, exps in per_prime.items():
        padded = [0] * (width - len(exps)) + exps
        for i, e in enumerate(padded):
            factors[i] *= p ** e
    return [d for d in factors if d > 1]


def _log(n, p):
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def abelianization(G):
    return quotient(G, NormalSubgroup(G, commutator_subgroup(G)))
