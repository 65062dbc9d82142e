"""Bounded complexes of finitely generated free Z[G]-modules.

Chains are column vectors; the boundary ``d_n : C_n -> C_{n-1}`` is an
``r_{n-1} x r_n`` matrix over Z[G] acting by left multiplication, so
``d_n d_{n+1} = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass

from sympy.ntheory import primefactors

from .errors import InputError, NotInWh, TheoremViolation
from .groupring import GroupRingMatrix
from .homology import AbelianGroupDescriptor
from .localization import LambdaContext, wh_membership
from .rings.linalg import elementary_divisors, rank_mod_p
from .rings.plocal import ZZ


class FreeComplex:
    def __init__(self, group, lo, ranks, boundaries=None):
        """``ranks[k]`` is the rank in degree ``lo + k``; ``boundaries[n]`` is ``d_n``."""
        self.group = group
        self.lo = lo
        self.ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in self.ranks):
            raise InputError("ranks must be nonnegative")
        self.hi = lo + len(self.ranks) - 1
        self.boundaries = {}
        for n in range(lo + 1, self.hi + 1):
            M = (boundaries or {}).get(n)
            if M is None:
                M = GroupRingMatrix.zeros(group, self.rank(n - 1), self.rank(n))
            if M.group is not group or M.ring != ZZ:
                raise InputError(f"d_{n} is not a matrix over Z[G]")
            if M.shape != (self.rank(n - 1), self.rank(n)):
                raise InputError(f"d_{n} has shape {M.shape}, expected "
                                 f"{(self.rank(n - 1), self.rank(n))}")
            self.boundaries[n] = M
        extra = set(boundaries or {}) - set(self.boundaries)
        if extra:
            raise InputError(f"boundaries given outside the degree range: {sorted(extra)}")
        for n in range(lo + 1, self.hi):
            if not (self.boundaries[n] @ self.boundaries[n + 1]).is_zero():
                raise TheoremViolation(f"d_{n} d_{n + 1} != 0")

    def rank(self, n):
        if self.lo <= n <= self.hi:
            return self.ranks[n - self.lo]
        return 0

    def boundary(self, n):
        if n in self.boundaries:
            return self.boundaries[n]
        return GroupRingMatrix.zeros(self.group, self.rank(n - 1), self.rank(n))

    @property
    def degrees(self):
        return range(self.lo, self.hi + 1)

    def __eq__(self, other):
        if not isinstance(other, FreeComplex):
            return NotImplemented
        return (other.group is self.group and (self.lo, self.ranks) == (other.lo, other.ranks)
                and self.boundaries == other.boundaries)

    def __hash__(self):
        return hash((self.lo, self.ranks))

    def __repr__(self):
        return f"FreeComplex(degrees {self.lo}..{self.hi}, ranks {list(self.ranks)})"


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: FreeComplex
    target: FreeComplex
    maps: dict

    def __post_init__(self):
        S, T = self.source, self.target
        G = S.group
        if T.group is not G:
            raise InputError("chain map between complexes over different groups")
        full = {}
        for n in range(min(S.lo, T.lo), max(S.hi, T.hi) + 1):
            f = self.maps.get(n)
            if f is None:
                f = GroupRingMatrix.zeros(G, T.rank(n), S.rank(n))
            if f.shape != (T.rank(n), S.rank(n)):
                raise InputError(f"f_{n} has shape {f.shape}")
            full[n] = f
        object.__setattr__(self, "maps", full)
        for n in full:
            if n - 1 not in full:
                continue
            left = T.boundary(n) @ full[n]
            right = full[n - 1] @ S.boundary(n)
            if left != right:
                raise TheoremViolation(f"chain map does not commute with d_{n}")

    def component(self, n):
        return self.maps.get(n) or GroupRingMatrix.zeros(
            self.source.group, self.target.rank(n), self.source.rank(n))


def _block(group, blocks, row_sizes, col_sizes):
    """Assemble a GroupRingMatrix from a grid of blocks (None = zero)."""
    rows = []
    for bi, rs in enumerate(row_sizes):
        for i in range(rs):
            row = []
            for bj, cs in enumerate(col_sizes):
                B = blocks[bi][bj]
                for j in range(cs):
                    row.append(B.entries[i][j] if B is not None else 0)
            rows.append(row)
    return GroupRingMatrix(group, rows, cols=sum(col_sizes))


def make_w0_complex(alpha, n=0):
    """Two-term complex ``Z[G]^k --alpha--> Z[G]^k`` in degrees ``n+1 -> n``."""
    if alpha.rows != alpha.cols or not wh_membership(alpha):
        raise NotInWh("differential must be a square matrix in W^h")
    return FreeComplex(alpha.group, n, (alpha.rows, alpha.rows), {n + 1: alpha})


def concentrated(group, n, rank):
    return FreeComplex(group, n, (rank,))


def mapping_cone(f):
    """``cone_n = S_{n-1} + T_n`` with ``d(x, y) = (-d x, f(x) + d y)``."""
    S, T = f.source, f.target
    G = S.group
    lo = min(S.lo + 1, T.lo)
    hi = max(S.hi + 1, T.hi)
    ranks = [S.rank(n - 1) + T.rank(n) for n in range(lo, hi + 1)]
    bds = {}
    for n in range(lo + 1, hi + 1):
        blocks = [[-S.boundary(n - 1), None],
                  [f.component(n - 1), T.boundary(n)]]
        bds[n] = _block(G, blocks, [S.rank(n - 2), T.rank(n - 1)], [S.rank(n - 1), T.rank(n)])
    C = FreeComplex(G, lo, ranks, bds)
    return C


def direct_sum(C, D):
    G = C.group
    lo, hi = min(C.lo, D.lo), max(C.hi, D.hi)
    ranks = [C.rank(n) + D.rank(n) for n in range(lo, hi + 1)]
    bds = {n: _block(G, [[C.boundary(n), None], [None, D.boundary(n)]],
                     [C.rank(n - 1), D.rank(n - 1)], [C.rank(n), D.rank(n)])
           for n in range(lo + 1, hi + 1)}
    return FreeComplex(G, lo, ranks, bds)


def identity_map(C):
    return ChainMap(C, C, {n: GroupRingMatrix.identity(C.group, C.rank(n)) for n in C.degrees})


def zero_map(C, D):
    return ChainMap(C, D, {})


# ------------------------------------------------------------ scalar complexes

def _integer_boundaries(C, coefficients, ctx=None):
    """Scalar matrices of ``C (x) coefficients``.

    ``coefficients`` is ``"Z"``, ``("Z_(p)", p)`` or ``("Z_(p)[G_p]", p)``;
    the local cases return integer matrices to be localized afterwards.
    """
    if coefficients == "Z" or coefficients[0] == "Z_(p)":
        return {n: C.boundary(n).augmentation() for n in range(C.lo, C.hi + 2)}, \
            {n: C.rank(n) for n in range(C.lo - 1, C.hi + 2)}
    _, p = coefficients
    ctx = ctx or LambdaContext(C.group)
    if p in ctx.primes:
        k = ctx.primes.index(p)
        hom, size = ctx.projections[k], ctx.quotients[k].order
    else:
        # trivial G_p: the coefficient ring is Z_(p) itself
        from .groups import p_quotient
        Q, hom = p_quotient(C.group, p)
        size = Q.order
    mats = {n: C.boundary(n).push_forward(hom).blow_up() for n in range(C.lo, C.hi + 2)}
    return mats, {n: C.rank(n) * size for n in range(C.lo - 1, C.hi + 2)}


def _homology_of(mats, dims, degrees, localize=None):
    inv = {}
    for n, M in mats.items():
        inv[n] = elementary_divisors(M) if M and M[0] else (0, [])
    out = {}
    for n in degrees:
        r_in = inv.get(n, (0, []))[0]
        r_out, divs = inv.get(n + 1, (0, []))
        H = AbelianGroupDescriptor.from_divisors(dims.get(n, 0) - r_in - r_out, divs)
        out[n] = H.localize(localize) if localize else H
    return out


def coefficient_homology(C, coefficients="Z", ctx=None):
    """``H_n(C (x)_{Z[G]} R)`` for every degree of ``C``.

    ``R`` is Z, ``("Z_(p)", p)``, or ``("Z_(p)[G_p]", p)``; over Z_(p)[G_p]
    the result is the Z_(p)-module structure.
    """
    if coefficients != "Z" and coefficients[0] not in ("Z_(p)", "Z_(p)[G_p]"):
        raise InputError(f"unknown coefficients {coefficients!r}")
    mats, dims = _integer_boundaries(C, coefficients, ctx)
    p = None if coefficients == "Z" else coefficients[1]
    return _homology_of(mats, dims, C.degrees, p)


# ------------------------------------------------------------ W-acyclicity

def _block_diag(blocks):
    rows = sum(len(b) for b in blocks)
    cols = sum(len(b[0]) if b else 0 for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[r0 + i][c0:c0 + len(row)] = row
        r0 += len(b)
        c0 += len(b[0]) if b else 0
    return out


@dataclass(frozen=True)
class _SquareComplex:
    """Cone of the square map for one choice of residue field (Q or F_l)."""

    dims: dict
    mats: dict

    def homology_dims(self, field):
        def rank(M):
            if not M or not M[0]:
                return 0
            if field == 0:
                return elementary_divisors(M)[0]
            return rank_mod_p(M, field)

        ranks = {n: rank(M) for n, M in self.mats.items()}
        return {n: d - ranks.get(n, 0) - ranks.get(n + 1, 0) for n, d in self.dims.items()}


def _square_cone(C, ctx, primes):
    """Cone of ``(z, u) -> (eps_p(u_p) - z)_p`` restricted to ``primes``.

    Source in degree n: ``Z^r`` plus ``Z^(r |G_p|)`` per prime; target:
    ``Z^r`` per prime.  All matrices are integral.
    """
    lo, hi = C.lo, C.hi
    idx = [ctx.primes.index(p) for p in primes]
    sizes = [ctx.quotients[k].order for k in idx]

    def d_src(n):
        blocks = [C.boundary(n).augmentation()]
        for k in idx:
            blocks.append(C.boundary(n).push_forward(ctx.projections[k]).blow_up())
        return _fix(_block_diag(blocks), src_dim(n - 1), src_dim(n))

    def d_tgt(n):
        return _fix(_block_diag([C.boundary(n).augmentation() for _ in idx]),
                    tgt_dim(n - 1), tgt_dim(n))

    def src_dim(n):
        return C.rank(n) * (1 + sum(sizes))

    def tgt_dim(n):
        return C.rank(n) * len(idx)

    def psi(n):
        r = C.rank(n)
        M = [[0] * src_dim(n) for _ in range(tgt_dim(n))]
        offset = r
        for b, s in enumerate(sizes):
            for i in range(r):
                M[b * r + i][i] = -1
                for g in range(s):
                    M[b * r + i][offset + i * s + g] = 1
            offset += r * s
        return M

    dims, mats = {}, {}
    for n in range(lo, hi + 2):
        dims[n] = src_dim(n - 1) + tgt_dim(n)
    for n in range(lo + 1, hi + 2):
        top = [[-x for x in row] + [0] * tgt_dim(n) for row in d_src(n - 1)]
        bottom = [a + b for a, b in zip(psi(n - 1), d_tgt(n))]
        M = top + bottom
        mats[n] = _fix(M, dims[n - 1], dims[n])
    return _SquareComplex(dims, mats)


def _fix(M, rows, cols):
    """Normalize empty shapes so every matrix is ``rows x cols``."""
    if rows == 0:
        return []
    if cols == 0:
        return [[] for _ in range(rows)]
    return M


@dataclass(frozen=True)
class AcyclicityReport:
    acyclic: bool
    rational: dict
    modular: dict
    integral: dict
    generic_ok: bool

    def failures(self):
        out = []
        if any(self.rational.values()):
            out.append("rational")
        out += [f"F_{p}" for p, dims in self.modular.items() if any(dims.values())]
        if not self.generic_ok:
            out.append("generic primes")
        return out


def square_test(C, ctx=None):
    """Decide whether ``H_*(C (x) Lambda)`` vanishes, with the evidence.

    Tensoring ``0 -> Lambda -> Z + prod Z_(p)[G_p] -> prod Z_(p) -> 0`` with
    ``C`` shows this happens exactly when the right-hand map induces an
    isomorphism on homology in every degree, i.e. when its cone ``K`` is
    acyclic.  ``K`` consists of torsion-free groups, so it is acyclic iff
    ``K (x) Q`` and every ``K (x) F_l`` are.  For ``l`` a context prime only
    the ``l``-summands survive mod ``l``; for every other ``l``, ``K (x) F_l``
    is ``C (x) F_l`` and its vanishing is read off the Smith forms of
    ``C (x) Z``.
    """
    ctx = ctx or LambdaContext(C.group)
    rational = _square_cone(C, ctx, ctx.primes).homology_dims(0)
    modular = {p: _square_cone(C, ctx, (p,)).homology_dims(p) for p in ctx.primes}
    integral = coefficient_homology(C, "Z", ctx)
    allowed = set(ctx.primes)
    generic_ok = True
    for H in integral.values():
        if H.free_rank:
            generic_ok = False
        for d in H.torsion:
            if set(primefactors(d)) - allowed:
                generic_ok = False
    acyclic = (not any(rational.values())
               and not any(v for dims in modular.values() for v in dims.values())
               and generic_ok)
    return AcyclicityReport(acyclic, rational, modular, integral, generic_ok)


def is_w_acyclic(C, ctx=None):
    return square_test(C, ctx).acyclic


def is_w_equivalence(f, ctx=None):
    return is_w_acyclic(mapping_cone(f), ctx)
