"""The localization of the augmentation Z[G] -> Z for a finite group G.

An element is stored as a pullback tuple: an integer ``z`` together with one
element ``u_p`` of Z_(p)[G_p] for every prime with nontrivial ``G_p``,
subject to ``augmentation(u_p) == z``.  Arithmetic is componentwise.  The map
to Z is local, so an element is a unit exactly when ``z = +-1``, and the
inverse is computed prime by prime in the p-group rings.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .errors import (
    ContextMismatch,
    InputError,
    NotAUnit,
    NotCoprimeOrders,
    NotInvertibleOverZ,
    NotPerfect,
    NotSquare,
    ParseError,
    TheoremViolation,
)
from .groupring import (
    GroupRingElement,
    GroupRingMatrix,
    augmentation,
    format_element,
    parse_element,
    pgroup_local_invert,
)
from .groups import (
    NormalSubgroup,
    _check_prime,
    abelian_invariants,
    commutator_subgroup,
    is_nilpotent,
    lower_central_series,
    nontrivial_p_quotients,
    p_quotient,
    universal_nilpotent_quotient,
)
from .rings.linalg import det, integer_inverse, rref_solve
from .rings.plocal import ZZ, LocalRing


def group_label(P):
    """Short name for a p-group: ``C4``, ``C2xC2``, or ``P8`` if nonabelian."""
    if P.order == 1:
        return "1"
    if P.is_abelian():
        return "x".join(f"C{d}" for d in abelian_invariants(P))
    return f"P{P.order}"


class LambdaContext:
    """Everything needed to compute in the localization for one group."""

    def __init__(self, G):
        self.group = G
        factors = nontrivial_p_quotients(G)
        self.primes = tuple(p for p, _, _ in factors)
        self.quotients = tuple(Q for _, Q, _ in factors)
        self.projections = tuple(h for _, _, h in factors)
        self.rings = tuple(LocalRing(p) for p in self.primes)
        self.nilpotent_quotient, self.nilpotent_projection = \
            universal_nilpotent_quotient(G, factors)
        if G.order % prod(Q.order for Q in self.quotients):
            raise TheoremViolation("product of the G_p does not divide |G|")

    def __repr__(self):
        return f"LambdaContext(order={self.group.order}, primes={list(self.primes)})"

    def describe(self):
        if not self.primes:
            return "Z"
        tops = [f"Z_({p})[{group_label(Q)}]" for p, Q in zip(self.primes, self.quotients)]
        bottoms = [f"Z_({p})" for p in self.primes]
        if len(tops) == 1:
            return f"{tops[0]} ×_{{{bottoms[0]}}} Z"
        return f"({' × '.join(tops)}) ×_{{{'×'.join(bottoms)}}} Z"

    # convenience constructors
    def element(self, z, components):
        return LambdaElement(self, z, components)

    def scalar(self, n):
        return LambdaElement(self, n, tuple(GroupRingElement(Q, {0: n}, R)
                                            for Q, R in zip(self.quotients, self.rings)))

    def one(self):
        return self.scalar(1)

    def zero(self):
        return self.scalar(0)

    def group_element(self, g):
        return canonical_map(self, GroupRingElement.basis(self.group, g))


def build_context(G):
    return LambdaContext(G)


class LambdaElement:
    __slots__ = ("ctx", "z", "components")

    def __init__(self, ctx, z, components):
        self.ctx = ctx
        self.z = int(z)
        components = tuple(components)
        if len(components) != len(ctx.primes):
            raise InputError("one component per context prime is required")
        for u, Q, R in zip(components, ctx.quotients, ctx.rings):
            if u.group is not Q or u.ring != R:
                raise ContextMismatch("component over the wrong group ring")
            if augmentation(u) != self.z:
                raise TheoremViolation(
                    f"pullback condition fails: augmentation {augmentation(u)} != {self.z}")
        self.components = components

    @classmethod
    def _raw(cls, ctx, z, components):
        obj = cls.__new__(cls)
        obj.ctx, obj.z, obj.components = ctx, z, components
        return obj

    def _lift(self, other):
        if isinstance(other, LambdaElement):
            if other.ctx is not self.ctx:
                raise ContextMismatch("elements of different localizations")
            return other
        if isinstance(other, int):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return LambdaElement._raw(self.ctx, self.z + o.z,
                                  tuple(a + b for a, b in zip(self.components, o.components)))

    __radd__ = __add__

    def __neg__(self):
        return LambdaElement._raw(self.ctx, -self.z, tuple(-a for a in self.components))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return LambdaElement._raw(self.ctx, self.z * o.z,
                                  tuple(a * b for a, b in zip(self.components, o.components)))

    def __rmul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        if not isinstance(other, LambdaElement):
            return NotImplemented
        return other.ctx is self.ctx and self.z == other.z and self.components == other.components

    def __hash__(self):
        return hash((self.z, tuple(hash(c) for c in self.components)))

    def is_zero(self):
        return self.z == 0 and not any(self.components)

    def __bool__(self):
        return not self.is_zero()

    def check(self):
        """Re-assert the pullback condition."""
        for u in self.components:
            if augmentation(u) != self.z:
                raise TheoremViolation("pullback condition fails")
        return True

    def __repr__(self):
        return f"LambdaElement({format_lambda(self)})"

    def __str__(self):
        return format_lambda(self)


def canonical_map(ctx, e):
    """Image of ``e`` in Z[G] under Z[G] -> Lambda."""
    if e.group is not ctx.group or e.ring != ZZ:
        raise ContextMismatch("element is not in Z[G] for this context")
    comps = tuple(e.push_forward(h, R) for h, R in zip(ctx.projections, ctx.rings))
    return LambdaElement(ctx, augmentation(e), comps)


def lambda_is_unit(e):
    return e.z in (1, -1)


def lambda_invert(e):
    if not lambda_is_unit(e):
        raise NotAUnit(f"corner z = {e.z} is not a unit of Z")
    inv = LambdaElement(e.ctx, e.z, tuple(pgroup_local_invert(u) for u in e.components))
    if e * inv != 1 or inv * e != 1:
        raise TheoremViolation("inverse fails e * e^-1 = 1")
    return inv


# ------------------------------------------------------------------ matrices

class LambdaMatrix:
    """Matrix over Lambda, stored corner by corner.

    ``z`` is an integer matrix and ``components[k]`` a matrix over
    Z_(p)[G_p] for the k-th context prime; entrywise they satisfy the
    pullback condition.
    """

    def __init__(self, ctx, z, components):
        self.ctx = ctx
        self.z = [list(map(int, r)) for r in z]
        self.components = tuple(components)
        self.rows = len(self.z)
        self.cols = len(self.z[0]) if self.z else 0
        if len(self.components) != len(ctx.primes):
            raise InputError("one component per context prime is required")
        for M in self.components:
            if M.shape != (self.rows, self.cols):
                raise InputError("corner shapes disagree")
            for zi, row in zip(self.z, M.entries):
                for zij, u in zip(zi, row):
                    if augmentation(u) != zij:
                        raise TheoremViolation("pullback condition fails in a matrix entry")

    @classmethod
    def from_entries(cls, ctx, entries):
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        z = [[e.z for e in r] for r in entries]
        comps = tuple(GroupRingMatrix(Q, [[e.components[k] for e in r] for r in entries], R,
                                      cols=cols)
                      for k, (Q, R) in enumerate(zip(ctx.quotients, ctx.rings)))
        return cls(ctx, z, comps)

    @classmethod
    def from_group_ring(cls, ctx, M):
        """Entrywise canonical image of a matrix over Z[G]."""
        if M.group is not ctx.group or M.ring != ZZ:
            raise ContextMismatch("matrix is not over Z[G] for this context")
        comps = tuple(M.push_forward(h, R) for h, R in zip(ctx.projections, ctx.rings))
        return cls(ctx, M.augmentation(), comps)

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, [[int(i == j) for j in range(n)] for i in range(n)],
                   tuple(GroupRingMatrix.identity(Q, n, R)
                         for Q, R in zip(ctx.quotients, ctx.rings)))

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return LambdaElement(self.ctx, self.z[i][j], tuple(M.entries[i][j] for M in self.components))

    @property
    def entries(self):
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def __matmul__(self, other):
        if other.ctx is not self.ctx:
            raise ContextMismatch("matrices over different localizations")
        if self.cols != other.rows:
            raise InputError("shape mismatch")
        z = [[sum(self.z[i][k] * other.z[k][j] for k in range(self.cols))
              for j in range(other.cols)] for i in range(self.rows)]
        return LambdaMatrix(self.ctx, z, tuple(a @ b for a, b in zip(self.components,
                                                                     other.components)))

    def __eq__(self, other):
        if not isinstance(other, LambdaMatrix):
            return NotImplemented
        return (other.ctx is self.ctx and self.z == other.z
                and all(a == b for a, b in zip(self.components, other.components)))

    def __hash__(self):
        return hash(tuple(map(tuple, self.z)))

    def __repr__(self):
        return f"LambdaMatrix({self.rows}x{self.cols}, primes={list(self.ctx.primes)})"


def _invert_local_corner(M, p):
    """Inverse of a square matrix over Z_(p)[P] via its regular representation."""
    n = M.rows
    k = M.group.order
    big = [[x.value for x in row] for row in M.blow_up()]
    ident = [[int(i == j) for j in range(n * k)] for i in range(n * k)]
    try:
        X = rref_solve(big, ident)
    except NotAUnit as exc:
        raise TheoremViolation("augmentation-invertible matrix is singular over Q[G_p]") from exc
    for row in X:
        for x in row:
            if Fraction(x).denominator % p == 0:
                raise TheoremViolation(f"inverse entry {x} is not {p}-local")
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            # column 0 of block (i, j) holds the coefficients of entry (i, j)
            coeffs = {g: X[i * k + g][j * k] for g in range(k) if X[i * k + g][j * k]}
            row.append(GroupRingElement(M.group, coeffs, M.ring))
        entries.append(row)
    return GroupRingMatrix(M.group, entries, M.ring, cols=n)


def lambda_matrix_invert(M):
    """Inverse over Lambda of a square matrix whose integer corner has det +-1."""
    if M.rows != M.cols:
        raise NotSquare("only square matrices can be inverted")
    d = det(M.z)
    if d not in (1, -1):
        raise NotInvertibleOverZ(f"integer corner has determinant {d}")
    z_inv = integer_inverse(M.z)
    comps = tuple(_invert_local_corner(C, p) for C, p in zip(M.components, M.ctx.primes))
    inv = LambdaMatrix(M.ctx, z_inv, comps)
    ident = LambdaMatrix.identity(M.ctx, M.rows)
    if M @ inv != ident or inv @ M != ident:
        raise TheoremViolation("matrix inverse fails M M^-1 = 1")
    return inv


def wh_membership(M):
    """Does the square matrix over Z[G] become invertible over Z?"""
    if M.rows != M.cols:
        raise NotSquare("W^h membership is defined for square matrices")
    return det(M.augmentation()) in (1, -1)


def ws_membership(M):
    """Invertible over Z with trivial class in K_1(Z) = {+-1}, i.e. det = 1."""
    if M.rows != M.cols:
        raise NotSquare("W^s membership is defined for square matrices")
    return det(M.augmentation()) == 1


# ------------------------------------------------------------ identity checks

def _one_minus(ctx, g):
    return ctx.one() - ctx.group_element(g)


def coprime_vanishing_check(ctx, x, y):
    """Both products ``(1-x)(1-y)`` and ``(1-y)(1-x)`` vanish in Lambda."""
    G = ctx.group
    if gcd(G.element_orders[x], G.element_orders[y]) != 1:
        raise NotCoprimeOrders(f"orders {G.element_orders[x]} and {G.element_orders[y]}")
    a, b = _one_minus(ctx, x), _one_minus(ctx, y)
    return (a * b).is_zero() and (b * a).is_zero()


def factor_lifts(ctx, x, p):
    """Elements of G mapping to the p-coordinate of ``x`` in the product of the G_p.

    All other coordinates of the image are trivial.
    """
    k = ctx.primes.index(p)
    target = tuple(h(x) if i == k else 0 for i, h in enumerate(ctx.projections))
    return [g for g in range(ctx.group.order)
            if tuple(h(g) for h in ctx.projections) == target]


def sublemma_check(ctx, x):
    """``1 - x`` equals ``sum_p (1 - x_p)`` in Lambda.

    ``x_p`` is a lift of the p-coordinate of ``x`` (the smallest index among
    the lifts); when a second lift exists the sum is recomputed with it and
    must agree.
    """
    lhs = _one_minus(ctx, x)
    lifts = [factor_lifts(ctx, x, p) for p in ctx.primes]
    rhs = ctx.zero()
    for ls in lifts:
        rhs = rhs + _one_minus(ctx, ls[0])
    if any(len(ls) > 1 for ls in lifts):
        alt = ctx.zero()
        for ls in lifts:
            alt = alt + _one_minus(ctx, ls[1] if len(ls) > 1 else ls[0])
        if alt != rhs:
            raise TheoremViolation("sub-lemma sum depends on the chosen lifts")
    return lhs == rhs


def perfect_subgroup_kill_check(ctx, members):
    """Every element of the perfect subgroup ``members`` maps to 1."""
    G = ctx.group
    members = tuple(sorted(members))
    if commutator_subgroup(G, members, members) != members:
        raise NotPerfect("subgroup is not perfect")
    one = ctx.one()
    return all(ctx.group_element(h) == one for h in members)


@dataclass(frozen=True)
class TheoremBReport:
    order: int
    nilpotent: bool
    lower_central_series_orders: tuple
    kernel_of_nilpotentization: NormalSubgroup
    conditions: dict
    omegas: dict

    def summary(self):
        verdict = "nilpotent" if self.nilpotent else "not nilpotent"
        return (f"{verdict}; kernel of G -> G' has order {self.kernel_of_nilpotentization.order}; "
                f"central/Ore/flat/stably flat/nilpotent all {self.nilpotent}")


def theorem_b_report(G, ctx=None):
    """Nilpotency classification, with the central elements when nilpotent."""
    ctx = ctx or LambdaContext(G)
    nil = is_nilpotent(G)
    kernel = NormalSubgroup(G, ctx.nilpotent_projection.kernel())
    names = ("central_localization", "ore_localization", "flat", "stably_flat", "nilpotent")
    omegas = {}
    if nil:
        for k, (p, Q) in enumerate(zip(ctx.primes, ctx.quotients)):
            # the factor G_p sits in G as the elements trivial in every other G_q
            factor = [g for g in range(G.order)
                      if all(h(g) == 0 for i, h in enumerate(ctx.projections) if i != k)]
            coeffs = {g: -1 for g in factor}
            coeffs[0] = Q.order - 1
            w = GroupRingElement(G, coeffs)
            if w * w != w * Q.order:
                raise TheoremViolation("omega_p^2 != n_p omega_p")
            for g in G.generators:
                b = GroupRingElement.basis(G, g)
                if b * w != w * b:
                    raise TheoremViolation("omega_p is not central")
            omegas[p] = w
    return TheoremBReport(
        order=G.order,
        nilpotent=nil,
        lower_central_series_orders=tuple(len(s) for s in lower_central_series(G)),
        kernel_of_nilpotentization=kernel,
        conditions={n: nil for n in names},
        omegas=omegas,
    )


theoremB_report = theorem_b_report


@dataclass(frozen=True)
class RingDescriptor:
    prime: int
    quotient_order: int
    name: str

    def __str__(self):
        return self.name


def mod_p_localization_descriptor(G, p):
    """The localization of Z[G] -> Z/p, identified with Z_(p)[G_p]."""
    _check_prime(p)
    Q, _ = p_quotient(G, p)
    name = f"Z_({p})" if Q.order == 1 else f"Z_({p})[{group_label(Q)}]"
    return RingDescriptor(p, Q.order, name)


# ------------------------------------------------------------------ text format

def format_lambda(e):
    parts = [f"z={e.z}"]
    for p, u in zip(e.ctx.primes, e.components):
        parts.append(f"p={p}:{format_element(u)}")
    return "; ".join(parts)


def parse_lambda(text, ctx):
    segs = [s.strip() for s in text.strip().split(";") if s.strip()]
    if not segs or not segs[0].startswith("z="):
        raise ParseError("Lambda element must start with z=<int>")
    try:
        z = int(segs[0][2:])
    except ValueError as exc:
        raise ParseError(f"bad integer corner in {segs[0]!r}") from exc
    comps = {}
    for seg in segs[1:]:
        if not seg.startswith("p=") or ":" not in seg:
            raise ParseError(f"bad segment {seg!r}")
        head, body = seg[2:].split(":", 1)
        p = int(head)
        if p not in ctx.primes:
            raise ParseError(f"prime {p} is not a context prime")
        k = ctx.primes.index(p)
        comps[p] = parse_element(body, ctx.quotients[k], ctx.rings[k])
    if sorted(comps) != list(ctx.primes):
        raise ParseError("one segment per context prime is required")
    try:
        return LambdaElement(ctx, z, tuple(comps[p] for p in ctx.primes))
    except TheoremViolation as exc:
        raise ParseError(str(exc)) from exc
