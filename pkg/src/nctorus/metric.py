"""Hermitian metrics on the free module of one-forms with dual basis.

A metric is stored as the pair of N x N matrices h^ij (upper) and h_ij
(lower), where the lower matrix is a verified two-sided inverse of the
upper one.  The dual basis theta^i(d_a) = delta^i_a makes every lowered
quantity an explicit matrix entry: theta_i(d_a) = h_ia.

The symmetry two-form rho(d_a, d_b) = h_ab - (h_ab)* and its exterior
derivative measure how far the metric is from admitting a torsion-free
compatible connection; d(rho) = 0 is the exact existence criterion.
"""

from __future__ import annotations

from .algebra import AlgebraElement
from .errors import NotHermitian, NotInverse, NotInvertibleByElimination
from .forms import Calculus, KForm


def _as_matrix(calculus: Calculus, rows, size=None):
    matrix = tuple(tuple(entry for entry in row) for row in rows)
    size = size if size is not None else len(matrix)
    if len(matrix) != size or any(len(row) != size for row in matrix):
        raise ValueError("expected a %d x %d matrix" % (size, size))
    for row in matrix:
        for entry in row:
            if not isinstance(entry, AlgebraElement):
                raise TypeError("matrix entries must be algebra elements")
            if entry.algebra != calculus.algebra:
                raise ValueError("matrix entry over a different algebra")
    return matrix


def invert_metric(calculus: Calculus, upper):
    """Invert a hermitian matrix by Gaussian elimination with row swaps.

    Every pivot must be an invertible monomial; when a column offers no
    monomial pivot the procedure raises NotInvertibleByElimination and the
    caller has to supply the lower matrix explicitly.
    """
    upper = _as_matrix(calculus, upper)
    n = len(upper)
    _check_hermitian_matrix(upper)
    alg = calculus.algebra
    work = [list(row) for row in upper]
    aug = [
        [alg.one() if r == c else alg.zero() for c in range(n)] for r in range(n)
    ]
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if work[r][col].is_monomial():
                pivot_row = r
                break
        if pivot_row is None:
            raise NotInvertibleByElimination(
                "no invertible monomial pivot in column %d" % (col + 1)
            )
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = work[col][col].invert()
        work[col] = [inv * entry for entry in work[col]]
        aug[col] = [inv * entry for entry in aug[col]]
        for r in range(n):
            if r == col:
                continue
            factor = work[r][col]
            if factor.is_zero():
                continue
            work[r] = [
                work[r][c] - factor * work[col][c] for c in range(n)
            ]
            aug[r] = [aug[r][c] - factor * aug[col][c] for c in range(n)]
    return tuple(tuple(row) for row in aug)


def _check_hermitian_matrix(matrix):
    n = len(matrix)
    for i in range(n):
        for j in range(n):
            if matrix[i][j].star() != matrix[j][i]:
                raise NotHermitian(
                    "entry (%d, %d) is not the star of entry (%d, %d)"
                    % (i + 1, j + 1, j + 1, i + 1)
                )


class HermitianMetric:
    """A validated metric: hermitian upper matrix with two-sided inverse."""

    __slots__ = ("calculus", "rank", "upper", "lower")

    def __init__(self, calculus: Calculus, upper, lower=None):
        upper = _as_matrix(calculus, upper)
        if lower is None:
            lower = invert_metric(calculus, upper)
        else:
            lower = _as_matrix(calculus, lower, len(upper))
        self.calculus = calculus
        self.rank = len(upper)
        self.upper = upper
        self.lower = lower
        validate(self)

    def __eq__(self, other):
        if not isinstance(other, HermitianMetric):
            return NotImplemented
        return (
            self.calculus == other.calculus
            and self.upper == other.upper
            and self.lower == other.lower
        )

    def __repr__(self):
        return "HermitianMetric(rank=%d)" % self.rank


def validate(metric: HermitianMetric) -> None:
    """Check hermitian symmetry of both matrices and both inverse identities.

    Raises NotHermitian or NotInverse naming the first failing entry.
    """
    calc = metric.calculus
    n = metric.rank
    alg = calc.algebra
    _check_hermitian_matrix(metric.upper)
    _check_hermitian_matrix(metric.lower)
    for first, second, label in (
        (metric.upper, metric.lower, "h^ij h_jk"),
        (metric.lower, metric.upper, "h_ij h^jk"),
    ):
        for i in range(n):
            for k in range(n):
                total = alg.zero()
                for j in range(n):
                    total = total + first[i][j] * second[j][k]
                expected = alg.one() if i == k else alg.zero()
                if total != expected:
                    raise NotInverse(
                        "%s fails at (%d, %d): got %r" % (label, i + 1, k + 1, total)
                    )


def lowered_evaluation(metric: HermitianMetric):
    """The array theta_ia = theta_i(d_a); on the dual basis this is h_ia."""
    if metric.rank != metric.calculus.n:
        raise ValueError("lowered evaluation needs the dual-basis calculus (N = n)")
    return metric.lower


def pair(metric: HermitianMetric, left, right) -> AlgebraElement:
    """h(f_i theta^i, g_j theta^j) = sum f_i h^ij (g_j)*."""
    alg = metric.calculus.algebra
    total = alg.zero()
    for i in range(metric.rank):
        for j in range(metric.rank):
            total = total + left[i] * metric.upper[i][j] * right[j].star()
    return total


def symmetry_form(metric: HermitianMetric) -> KForm:
    """The two-form rho with rho(d_a, d_b) = h_ab - (h_ab)*."""
    calc = metric.calculus
    if metric.rank != calc.n:
        raise ValueError("symmetry form needs the dual-basis calculus (N = n)")
    comps = {}
    for a in range(1, calc.n + 1):
        for b in range(a + 1, calc.n + 1):
            value = metric.lower[a - 1][b - 1] - metric.lower[a - 1][b - 1].star()
            if not value.is_zero():
                comps[(a, b)] = value
    return KForm(calc, 2, comps)


def weak_symmetry_defect(metric: HermitianMetric) -> KForm:
    """d(rho) as a three-form; the metric is weakly symmetric iff it vanishes."""
    return symmetry_form(metric).d()


def is_weakly_symmetric(metric: HermitianMetric) -> bool:
    return weak_symmetry_defect(metric).is_zero()
