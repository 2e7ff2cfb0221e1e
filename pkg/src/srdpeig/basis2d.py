"""Tensor-product and serendipity bases on the reference square [-1, 1]^2.

Bases live in square arrays indexed by (i, j), 1-based, where i tracks the
x-functional and j the y-functional of the underlying univariate families:
index 1 is the value at -1, index 2 the value at the midpoint, indices
3..p the midpoint derivatives of orders 1..p-2, and index p+1 the value at
+1.  A zero polynomial marks an empty slot.

The tensor-product basis of order p fills the whole (p+1) x (p+1) array
with products phi_i(x) * phi_j(y).  The serendipity basis arises from
signed sums of smaller product arrays, re-indexed into a common array size
so that endpoint functionals stay attached to the last row/column.  The
serendipity space of order p spans every polynomial of total degree <= p
plus the two monomials x^p y and x y^p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .basis1d import generate_phi
from .polynomial import Polynomial, rational_rank, try_solve_rational_system

TENSOR = "tensor"
SERENDIPITY = "serendipity"
FAMILIES = (TENSOR, SERENDIPITY)


class InvalidTarget(ValueError):
    """Requested array size cannot hold the source array."""


class UnsupportedOrder(ValueError):
    """Serendipity combination table does not cover the requested order."""


@dataclass(frozen=True)
class BasisArray:
    """Square array of basis polynomials; zero entries are empty slots.

    `px` and `py` are the univariate orders of the two factors; for the
    public bases both equal `p` and the array is (p+1) x (p+1).
    """

    family: str
    p: int
    px: int
    py: int
    entries: tuple[tuple[Polynomial, ...], ...]

    @property
    def size(self) -> int:
        """Array order M: entries form an (M+1) x (M+1) grid (or rectangular
        (px+1) x (py+1) for raw product tables)."""
        return len(self.entries) - 1

    def entry(self, i: int, j: int) -> Polynomial:
        """Entry at 1-based slot (i, j)."""
        return self.entries[i - 1][j - 1]

    def nonzero_slots(self) -> list[tuple[int, int]]:
        """1-based slots of nonzero entries, in grid order (i outer, j inner)."""
        return [
            (i + 1, j + 1)
            for i, row in enumerate(self.entries)
            for j, poly in enumerate(row)
            if not poly.is_zero
        ]

    def functions(self) -> list[Polynomial]:
        """Nonzero entries in grid order."""
        return [self.entry(i, j) for i, j in self.nonzero_slots()]

    @property
    def count_nonzero(self) -> int:
        return len(self.nonzero_slots())


def product_table(px: int, py: int) -> BasisArray:
    """Raw (px+1) x (py+1) array of products phi_i(x) * phi_j(y)."""
    fx = generate_phi(px).functions
    fy = generate_phi(py).functions
    ys = [f.swap_xy() for f in fy]
    entries = tuple(tuple(a * b for b in ys) for a in fx)
    return BasisArray(TENSOR, max(px, py), px, py, entries)


def tensor_basis(p: int) -> BasisArray:
    """Order-p tensor-product basis: all (p+1)^2 products are present."""
    if p < 1:
        raise ValueError("order must be >= 1")
    return product_table(p, p)


def reindex(source: BasisArray, size: int) -> BasisArray:
    """Embed a product array into an (size+1) x (size+1) array.

    Slots keep their indices except that the last source row (x-endpoint +1)
    moves to row size+1 and the last source column to column size+1; the
    freed rows/columns are zero.
    """
    px, py = source.px, source.py
    if size < max(px, py):
        raise InvalidTarget(f"target order {size} < source orders ({px}, {py})")
    zero = Polynomial.zero()
    grid = [[zero] * (size + 1) for _ in range(size + 1)]
    for i in range(1, px + 2):
        for j in range(1, py + 2):
            ti = size + 1 if i == px + 1 else i
            tj = size + 1 if j == py + 1 else j
            grid[ti - 1][tj - 1] = source.entry(i, j)
    return BasisArray(source.family, size, size, size, tuple(map(tuple, grid)))


def array_sum(terms: list[tuple[int, BasisArray]], size: int) -> BasisArray:
    """Slotwise signed sum of product arrays, re-indexed to a common size."""
    zero = Polynomial.zero()
    grid = [[zero] * (size + 1) for _ in range(size + 1)]
    for sign, term in terms:
        embedded = reindex(term, size)
        for i in range(size + 1):
            for j in range(size + 1):
                entry = embedded.entries[i][j]
                if not entry.is_zero:
                    grid[i][j] = grid[i][j] + sign * entry
    return BasisArray(SERENDIPITY, size, size, size, tuple(map(tuple, grid)))


# Signed combinations of product tables that produce the serendipity basis,
# per order.  Each term is (sign, (px, py)); the target array size is p.
_SERENDIPITY_COMBINATIONS: dict[int, list[tuple[int, tuple[int, int]]]] = {
    1: [(+1, (1, 1))],
    2: [(+1, (2, 1)), (+1, (1, 2)), (-1, (1, 1))],
    3: [(+1, (3, 1)), (+1, (1, 3)), (-1, (1, 1))],
    4: [(+1, (4, 1)), (+1, (1, 4)), (+1, (2, 2)), (-1, (2, 1)), (-1, (1, 2))],
    5: [
        (+1, (5, 1)),
        (+1, (1, 5)),
        (+1, (3, 2)),
        (+1, (2, 3)),
        (-1, (3, 1)),
        (-1, (1, 3)),
        (-1, (2, 2)),
    ],
    6: [
        (+1, (6, 1)),
        (+1, (1, 6)),
        (+1, (4, 2)),
        (+1, (2, 4)),
        (+1, (3, 3)),
        (-1, (4, 1)),
        (-1, (1, 4)),
        (-1, (2, 3)),
        (-1, (3, 2)),
    ],
}


@lru_cache(maxsize=None)
def serendipity_basis(p: int) -> BasisArray:
    """Order-p serendipity basis as a (p+1) x (p+1) array with empty slots.

    Nonzero count is (p^2 + 3p + 6) / 2 for p >= 2 and 4 for p = 1 (where
    the two extra monomials x^p y and x y^p coincide).
    """
    try:
        combo = _SERENDIPITY_COMBINATIONS[p]
    except KeyError:
        raise UnsupportedOrder(
            f"serendipity combinations are tabulated for orders 1..6, got {p}"
        ) from None
    return array_sum([(sign, product_table(px, py)) for sign, (px, py) in combo], p)


def serendipity_dimension(p: int) -> int:
    """Number of serendipity basis functions of order p."""
    if p < 1:
        raise ValueError("order must be >= 1")
    if p == 1:
        return 4
    return (p * p + 3 * p + 6) // 2


def serendipity_interior_count(p: int) -> int:
    """Interior functions of the order-p serendipity element."""
    if p < 2:
        return 0
    return (p - 3) * (p - 2) // 2


# -- DOF classification ------------------------------------------------------

VERTEX = "vertex"
EDGE = "edge"
INTERIOR = "interior"

SIDES = ("left", "right", "bottom", "top")


@dataclass(frozen=True)
class DofKind:
    """Geometric role of a basis slot on the reference square.

    vertex:   corner = (sx, sy) with each component -1 or +1.
    edge:     side in SIDES; k = functional order along the edge
              (0 = midpoint value, k >= 1 = k-th tangential derivative).
    interior: neither; identified by its slot.
    """

    kind: str
    corner: tuple[int, int] | None = None
    side: str | None = None
    k: int | None = None


def classify_slot(slot: tuple[int, int], p: int) -> DofKind:
    """Classification of a 1-based slot of an order-p array."""
    i, j = slot
    ends = (1, p + 1)
    if i in ends and j in ends:
        return DofKind(VERTEX, corner=(-1 if i == 1 else 1, -1 if j == 1 else 1))
    if i in ends:
        return DofKind(EDGE, side="left" if i == 1 else "right", k=j - 2)
    if j in ends:
        return DofKind(EDGE, side="bottom" if j == 1 else "top", k=i - 2)
    return DofKind(INTERIOR)


def classify_dofs(basis: BasisArray) -> list[tuple[tuple[int, int], DofKind]]:
    """Classify every nonzero slot of a basis array, in grid order."""
    return [(slot, classify_slot(slot, basis.p)) for slot in basis.nonzero_slots()]


# -- span checking ------------------------------------------------------------


@dataclass(frozen=True)
class SpanReport:
    """Per-monomial result of expressing target monomials in a basis."""

    family: str
    p: int
    results: tuple[tuple[tuple[int, int], bool], ...]

    @property
    def all_ok(self) -> bool:
        return all(ok for _, ok in self.results)

    def failures(self) -> list[tuple[int, int]]:
        return [mono for mono, ok in self.results if not ok]


def target_monomials(family: str, p: int) -> list[tuple[int, int]]:
    """Monomial exponents the order-p space of the family must span."""
    if family == TENSOR:
        return [(i, j) for i in range(p + 1) for j in range(p + 1)]
    monos = [(i, j) for i in range(p + 1) for j in range(p + 1 - i)]
    for extra in ((p, 1), (1, p)):
        if extra not in monos:
            monos.append(extra)
    return monos


def coordinates_in_basis(
    basis: BasisArray, target: Polynomial
) -> list[Fraction] | None:
    """Exact coordinates of `target` in the basis functions (grid order).

    Returns None when the target is not in the span.
    """
    funcs = basis.functions()
    support = sorted({e for f in funcs for e in f.terms} | set(target.terms))
    matrix = [[f.coefficient(*e) for f in funcs] for e in support]
    rhs = [target.coefficient(*e) for e in support]
    return try_solve_rational_system(matrix, rhs)


def span_check(basis: BasisArray) -> SpanReport:
    """Check every target monomial for exact representability in the basis."""
    results = []
    for i, j in target_monomials(basis.family, basis.p):
        coords = coordinates_in_basis(basis, Polynomial.monomial(i, j))
        results.append(((i, j), coords is not None))
    return SpanReport(basis.family, basis.p, tuple(results))


def basis_rank(basis: BasisArray) -> int:
    """Exact rank of the coefficient matrix of the nonzero entries."""
    funcs = basis.functions()
    support = sorted({e for f in funcs for e in f.terms})
    return rational_rank([[f.coefficient(*e) for e in support] for f in funcs])
