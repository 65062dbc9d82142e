"""Integral homology of finite groups from the bar resolution.

Chains of ``Z (x)_{Z[G]} B_n`` have basis the ``n``-tuples ``[g1|...|gn]``
(with no ``gi`` equal to the identity in the normalized variant).  The
boundary with trivial coefficients is

    d[g1|...|gn] = [g2|...|gn] + sum_i (-1)^i [..|g_i g_{i+1}|..] + (-1)^n [g1|...|g_{n-1}]

Boundary matrices are produced column by column and fed straight into the
sparse elimination of :mod:`cohnloc.rings.linalg`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import BudgetExceeded, GapHypothesisFails, InputError, NotPerfect
from .groups import is_perfect
from .rings.linalg import sparse_elementary_divisors
from .rings.plocal import p_part

DEFAULT_BUDGET_MB = 2048
# bytes charged per stored nonzero of a boundary matrix (row, column, value)
TRIPLET_BYTES = 24
NORMALIZED_ABOVE = 24


@dataclass(frozen=True)
class AbelianGroupDescriptor:
    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(sorted(int(d) for d in self.torsion))
        if any(d < 2 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise InputError(f"torsion {t} is not a divisibility chain of integers >= 2")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_divisors(cls, free_rank, divisors):
        """Invariant-factor form of ``Z^r + sum Z/d`` for arbitrary ``d``."""
        return cls(free_rank, tuple(invariant_factors(divisors)))

    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self):
        """Cardinality, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def localize(self, p):
        """Tensor with Z_(p): keep only the p-parts of the torsion."""
        return AbelianGroupDescriptor.from_divisors(
            self.free_rank, [p_part(d, p) for d in self.torsion])

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def invariant_factors(divisors):
    """Regroup cyclic orders into a divisibility chain (primary decomposition)."""
    from sympy.ntheory import factorint

    per_prime = {}
    for d in divisors:
        if d > 1:
            for p, e in factorint(d).items():
                per_prime.setdefault(p, []).append(e)
    width = max((len(v) for v in per_prime.values()), default=0)
    out = [1] * width
    for p, exps in per_prime.items():
        exps = sorted(exps)
        exps = [0] * (width - len(exps)) + exps
        for i, e in enumerate(exps):
            out[i] *= p ** e
    return [d for d in out if d > 1]


@dataclass(frozen=True)
class BarComplexSlice:
    """The boundary ``d_n : C_n -> C_{n-1}`` of the bar complex, by columns."""

    group: object
    degree: int
    normalized: bool
    basis_size: tuple = field(init=False)

    def __post_init__(self):
        k = self.group.order - 1 if self.normalized else self.group.order
        object.__setattr__(self, "basis_size", (k ** (self.degree - 1), k ** self.degree))

    @property
    def nnz_bound(self):
        return self.basis_size[1] * (self.degree + 1)

    def cells(self, n=None):
        n = self.degree if n is None else n
        start = 1 if self.normalized else 0
        return product(range(start, self.group.order), repeat=n)

    def _index(self, cell):
        k = self.group.order
        idx = 0
        if self.normalized:
            for g in cell:
                idx = idx * (k - 1) + g - 1
        else:
            for g in cell:
                idx = idx * k + g
        return idx

    def boundary_of(self, cell):
        """Sparse column ``{row index: coefficient}`` of a basis cell."""
        t = self.group.table
        n = len(cell)
        col = {}

        def add(face, sign):
            if self.normalized and 0 in face:
                return
            r = self._index(face)
            c = col.get(r, 0) + sign
            if c:
                col[r] = c
            else:
                del col[r]

        add(cell[1:], 1)
        for i in range(n - 1):
            face = cell[:i] + (t[cell[i]][cell[i + 1]],) + cell[i + 2:]
            add(face, -1 if i % 2 == 0 else 1)
        add(cell[:-1], -1 if n % 2 else 1)
        return col

    def columns(self):
        for cell in self.cells():
            yield self.boundary_of(cell)

    def dense(self):
        rows, cols = self.basis_size
        M = [[0] * cols for _ in range(rows)]
        for j, col in enumerate(self.columns()):
            for i, x in col.items():
                M[i][j] = x
        return M


def bar_boundary(G, n, normalized=None, budget_mb=DEFAULT_BUDGET_MB):
    if n < 1:
        raise InputError("bar boundary degree must be >= 1")
    if normalized is None:
        normalized = G.order > NORMALIZED_ABOVE
    s = BarComplexSlice(G, n, normalized)
    if s.nnz_bound * TRIPLET_BYTES > budget_mb * 2 ** 20:
        raise BudgetExceeded(
            f"boundary d_{n} of a group of order {G.order} has up to {s.nnz_bound} "
            f"nonzeros, over the {budget_mb} MB budget")
    return s


@lru_cache(maxsize=256)
def _boundary_invariants(G, n, normalized):
    """``(rank, nontrivial elementary divisors)`` of ``d_n``, cached per group."""
    if n == 0:
        return 0, []
    s = BarComplexSlice(G, n, normalized)
    return sparse_elementary_divisors(s.columns())


def _resolve_mode(G, normalized):
    return G.order > NORMALIZED_ABOVE if normalized is None else normalized


def group_homology(G, i, coefficients=None, normalized=None, budget_mb=DEFAULT_BUDGET_MB):
    """``H_i(G, Z)``, or ``H_i(G, Z_(p))`` when ``coefficients`` is a prime ``p``."""
    if i < 0:
        raise InputError("homological degree must be >= 0")
    normalized = _resolve_mode(G, normalized)
    bar_boundary(G, i + 1, normalized, budget_mb)
    dim = BarComplexSlice(G, max(i, 1), normalized).basis_size[1] if i else 1
    rank_in, _ = _boundary_invariants(G, i, normalized)
    rank_out, divs = _boundary_invariants(G, i + 1, normalized)
    H = AbelianGroupDescriptor.from_divisors(dim - rank_in - rank_out, divs)
    if coefficients is not None:
        H = H.localize(coefficients)
    return H


def first_gap_lambda(G, i, normalized=None, budget_mb=DEFAULT_BUDGET_MB):
    """Degree-``i`` graded localization group of a perfect group at its first gap.

    For perfect ``G`` the localization is Z, Tor over Z[G] is group homology,
    and when the graded pieces vanish strictly between 0 and ``i`` the
    degree-``i`` piece equals ``H_{i+1}(G, Z)``.  The gap hypothesis is
    checked by requiring ``H_2 .. H_i`` to vanish.
    """
    if not is_perfect(G):
        raise NotPerfect("first-gap computation needs a perfect group")
    if i < 1:
        raise InputError("gap index must be >= 1")
    for k in range(2, i + 1):
        if not group_homology(G, k, normalized=normalized, budget_mb=budget_mb).is_zero():
            raise GapHypothesisFails(f"H_{k}(G, Z) is nonzero below degree {i + 1}")
    return group_homology(G, i + 1, normalized=normalized, budget_mb=budget_mb)


def quillen_scan(G, p, bound, normalized=None, budget_mb=DEFAULT_BUDGET_MB):
    """First ``1 <= i <= bound`` with ``H_i(G, Z_(p)) != 0``, else None."""
    if bound < 1:
        raise InputError("bound must be >= 1")
    for i in range(1, bound + 1):
        if not group_homology(G, i, p, normalized, budget_mb).is_zero():
            return i
    return None
