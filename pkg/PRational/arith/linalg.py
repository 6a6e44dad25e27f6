from fractions import Fraction
from typing import List, Sequence, Tuple

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

import config


class MatrixModP:
    """Dense matrix over F_p, entries reduced to [0, p)."""

    __slots__ = ("p", "rows")

    def __init__(self, p: int, rows: Sequence[Sequence[int]]):
        self.p = p
        self.rows = tuple(tuple(int(x) % p for x in row) for row in rows)
        if len({len(r) for r in self.rows}) > 1:
            raise ValueError("ragged matrix")

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def to_domain(self) -> DomainMatrix:
        K = GF(self.p)
        return DomainMatrix([[K(x) for x in row] for row in self.rows], self.shape, K)

    def __repr__(self) -> str:
        return f"MatrixModP({self.p}, {list(map(list, self.rows))})"


def rank_mod_p(M: MatrixModP) -> int:
    nrows, ncols = M.shape
    if nrows == 0 or ncols == 0:
        return 0
    return int(M.to_domain().rank())


class IntegerLattice:
    """Lattice spanned by the rows of an integer basis."""

    __slots__ = ("basis",)

    def __init__(self, basis: Sequence[Sequence[int]]):
        self.basis = tuple(tuple(int(x) for x in v) for v in basis)
        if len({len(v) for v in self.basis}) > 1:
            raise ValueError("basis vectors have different dimensions")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def to_domain(self) -> DomainMatrix:
        return DomainMatrix.from_list([list(v) for v in self.basis], ZZ)

    def gram_det(self) -> int:
        A = self.to_domain()
        return int((A * A.transpose()).det())

    def hnf(self) -> Tuple[Tuple[int, ...], ...]:
        return row_hnf(self.basis)


def default_delta() -> Fraction:
    num, den = config.LLL_DELTA.split("/")
    return Fraction(int(num), int(den))


def lll_reduce(L: IntegerLattice, delta: Fraction = None) -> IntegerLattice:
    delta = default_delta() if delta is None else Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError(f"LLL parameter {delta} outside (1/4, 1)")
    if L.rank == 0:
        return L
    reduced = L.to_domain().lll(delta=QQ(delta.numerator, delta.denominator))
    return IntegerLattice(reduced.to_list())


def lll_transform(
    L: IntegerLattice, delta: Fraction = None
) -> Tuple[IntegerLattice, List[List[int]]]:
    """Reduced basis B and the unimodular T with T * L = B."""
    delta = default_delta() if delta is None else Fraction(delta)
    B, T = L.to_domain().lll_transform(delta=QQ(delta.numerator, delta.denominator))
    return IntegerLattice(B.to_list()), [[int(x) for x in row] for row in T.to_list()]


def row_hnf(rows: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    """Canonical basis of the Z-span of rows, upper triangular by columns."""
    if not rows:
        return ()
    cols = DomainMatrix.from_list([list(r) for r in rows], ZZ).transpose()
    W = hermite_normal_form(cols)
    return tuple(tuple(int(x) for x in row) for row in W.transpose().to_list())


def det_int(rows: Sequence[Sequence[int]]) -> int:
    return int(DomainMatrix.from_list([list(r) for r in rows], ZZ).det())


def _qq_matrix(rows: Sequence[Sequence[Fraction]]) -> DomainMatrix:
    return DomainMatrix.from_list(
        [[(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in rows],
        QQ,
    )


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def det_rational(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    return _to_fraction(_qq_matrix(rows).det())


def solve_rational(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> List[Fraction]:
    """Solve rows * x = rhs exactly over Q."""
    b = _qq_matrix([[v] for v in rhs])
    x = _qq_matrix(rows).lu_solve(b)
    return [_to_fraction(row[0]) for row in x.to_list()]


def charpoly_rational(rows: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    """Characteristic polynomial, highest degree first."""
    return [_to_fraction(c) for c in _qq_matrix(rows).charpoly()]
