"""Connections on the free module of one-forms, stored as Christoffel arrays.

A connection is the array gamma[a][i][j] of algebra elements with

    nabla_{d_a} theta^i = gamma[a][i][j] theta^j   (sum over j),

extended to arbitrary module elements by the Leibniz rule.  On the
dual-basis module every operator needed here (index swap in the two
derivation slots, symmetrization, antisymmetrization, pairing against the
metric) acts on such finite component arrays.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraElement
from .errors import AntihermitianViolation, DescriptorMismatch
from .forms import Calculus, KForm
from .metric import HermitianMetric

HALF = Fraction(1, 2)


def _as_gamma(calculus: Calculus, gamma, rank=None):
    arr = tuple(tuple(tuple(entry for entry in row) for row in plane) for plane in gamma)
    n = calculus.n
    if len(arr) != n:
        raise ValueError("first index must run over the %d derivations" % n)
    rank = rank if rank is not None else (len(arr[0]) if arr else 0)
    for plane in arr:
        if len(plane) != rank or any(len(row) != rank for row in plane):
            raise ValueError("expected %d x %d x %d array" % (n, rank, rank))
        for row in plane:
            for entry in row:
                if not isinstance(entry, AlgebraElement):
                    raise TypeError("Christoffel entries must be algebra elements")
                if entry.algebra != calculus.algebra:
                    raise DescriptorMismatch("entry over a different algebra")
    return arr, rank


class Connection:
    """Christoffel data gamma[a][i][j] over a calculus, module rank N."""

    __slots__ = ("calculus", "rank", "gamma")

    def __init__(self, calculus: Calculus, gamma):
        self.calculus = calculus
        self.gamma, self.rank = _as_gamma(calculus, gamma)

    @classmethod
    def zero(cls, calculus: Calculus, rank=None) -> "Connection":
        rank = rank if rank is not None else calculus.n
        z = calculus.algebra.zero()
        return cls(
            calculus,
            tuple(
                tuple(tuple(z for _ in range(rank)) for _ in range(rank))
                for _ in range(calculus.n)
            ),
        )

    def __eq__(self, other):
        if not isinstance(other, Connection):
            return NotImplemented
        return self.calculus == other.calculus and self.gamma == other.gamma

    def __repr__(self):
        from .expr import render_element

        nonzero = []
        for a in range(self.calculus.n):
            for i in range(self.rank):
                for j in range(self.rank):
                    entry = self.gamma[a][i][j]
                    if not entry.is_zero():
                        nonzero.append(
                            "gamma[%d,%d,%d]=%s"
                            % (a + 1, i + 1, j + 1, render_element(entry))
                        )
        return "Connection(%s)" % ("; ".join(nonzero) if nonzero else "0")


def apply_connection(conn: Connection, a: int, coeffs):
    """Coefficients of nabla_{d_a}(f_i theta^i) in the theta basis."""
    calc = conn.calculus
    if not 1 <= a <= calc.n:
        raise IndexError("derivation index out of range: %d" % a)
    coeffs = tuple(coeffs)
    if len(coeffs) != conn.rank:
        raise ValueError("expected %d coefficients" % conn.rank)
    out = []
    for k in range(conn.rank):
        total = coeffs[k].derive(a)
        for i in range(conn.rank):
            total = total + coeffs[i] * conn.gamma[a - 1][i][k]
        out.append(total)
    return tuple(out)


def torsion(conn: Connection):
    """Torsion on the basis: a two-form per basis index i.

    T^i(d_a, d_b) = gamma[a][i][b] - gamma[b][i][a] + c^i_{ab}; left
    linearity extends this to the whole module.
    """
    calc = conn.calculus
    if conn.rank != calc.n:
        raise ValueError("torsion needs the dual-basis calculus (N = n)")
    alg = calc.algebra
    forms = []
    for i in range(1, conn.rank + 1):
        comps = {}
        for a in range(1, calc.n + 1):
            for b in range(a + 1, calc.n + 1):
                value = conn.gamma[a - 1][i - 1][b - 1] - conn.gamma[b - 1][i - 1][a - 1]
                c = calc.lie.bracket(i, a, b)
                if c:
                    value = value + alg.scalar(c)
                if not value.is_zero():
                    comps[(a, b)] = value
        forms.append(KForm(calc, 2, comps))
    return tuple(forms)


def is_torsion_free(conn: Connection) -> bool:
    return all(form.is_zero() for form in torsion(conn))


def compat_defect(conn: Connection, metric: HermitianMetric):
    """C^ij_a = d_a h^ij - gamma^i_ak h^kj - (gamma^j_ak h^ki)*."""
    calc = conn.calculus
    n = calc.n
    rank = conn.rank
    if metric.rank != rank:
        raise ValueError("metric rank does not match the connection")
    out = []
    for a in range(1, n + 1):
        plane = []
        for i in range(rank):
            row = []
            for j in range(rank):
                value = metric.upper[i][j].derive(a)
                for k in range(rank):
                    value = value - conn.gamma[a - 1][i][k] * metric.upper[k][j]
                mirror = calc.algebra.zero()
                for k in range(rank):
                    mirror = mirror + conn.gamma[a - 1][j][k] * metric.upper[k][i]
                value = value - mirror.star()
                row.append(value)
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


def is_compatible(conn: Connection, metric: HermitianMetric) -> bool:
    return all(
        entry.is_zero()
        for plane in compat_defect(conn, metric)
        for row in plane
        for entry in row
    )


def grassmann(metric: HermitianMetric) -> Connection:
    """The base-point connection gamma^i_ak = d_a(h^ij h_jk).

    With an exact two-sided inverse the product h^ij h_jk is the constant
    identity, so this is the zero connection; it is still computed from
    the matrices rather than assumed.
    """
    calc = metric.calculus
    rank = metric.rank
    alg = calc.algebra
    gamma = []
    for a in range(1, calc.n + 1):
        plane = []
        for i in range(rank):
            row = []
            for k in range(rank):
                total = alg.zero()
                for j in range(rank):
                    total = total + metric.upper[i][j] * metric.lower[j][k]
                row.append(total.derive(a))
            plane.append(tuple(row))
        gamma.append(tuple(plane))
    return Connection(calc, gamma)


def check_antihermitian(array, rank, n) -> None:
    """(A^ij_a)* = -A^ji_a for all a, i, j; raises AntihermitianViolation."""
    for a in range(n):
        for i in range(rank):
            for j in range(rank):
                if array[a][i][j].star() != -array[a][j][i]:
                    raise AntihermitianViolation(
                        "entry (a=%d, i=%d, j=%d) violates (A^ij_a)* = -A^ji_a"
                        % (a + 1, i + 1, j + 1)
                    )


def compatible_connection(metric: HermitianMetric, antiherm=None) -> Connection:
    """A metric-compatible connection gamma^i_ak = (1/2 d_a h^ij + A^ij_a) h_jk.

    The optional array A must satisfy (A^ij_a)* = -A^ji_a; every such
    choice yields zero compatibility defect.
    """
    calc = metric.calculus
    rank = metric.rank
    alg = calc.algebra
    if antiherm is not None:
        antiherm, _ = _as_gamma(calc, antiherm, rank)
        check_antihermitian(antiherm, rank, calc.n)
    gamma = []
    for a in range(1, calc.n + 1):
        plane = []
        for i in range(rank):
            row = []
            for k in range(rank):
                total = alg.zero()
                for j in range(rank):
                    half_dh = metric.upper[i][j].derive(a) * HALF
                    if antiherm is not None:
                        half_dh = half_dh + antiherm[a - 1][i][j]
                    total = total + half_dh * metric.lower[j][k]
                row.append(total)
            plane.append(tuple(row))
        gamma.append(tuple(plane))
    return Connection(calc, gamma)


def torsion_free_from(base: Connection, symmetric_part=None) -> Connection:
    """The torsion-free connection (d + symmetrization of base) / 2 + beta.

    The optional ``symmetric_part`` beta must be symmetric in its two
    derivation slots (equivalently, its antisymmetrization vanishes);
    every such choice keeps the result torsion free.
    """
    calc = base.calculus
    if base.rank != calc.n:
        raise ValueError("torsion-free construction needs N = n")
    if symmetric_part is not None:
        symmetric_part, _ = _as_gamma(calc, symmetric_part, base.rank)
        for a in range(calc.n):
            for i in range(base.rank):
                for b in range(calc.n):
                    if symmetric_part[a][i][b] != symmetric_part[b][i][a]:
                        raise ValueError(
                            "symmetric_part must be symmetric in the derivation "
                            "slots; entry (a=%d, i=%d, b=%d) is not"
                            % (a + 1, i + 1, b + 1)
                        )
    alg = calc.algebra
    gamma = []
    for a in range(1, calc.n + 1):
        plane = []
        for i in range(1, base.rank + 1):
            row = []
            for b in range(1, base.rank + 1):
                value = (
                    base.gamma[a - 1][i - 1][b - 1] + base.gamma[b - 1][i - 1][a - 1]
                )
                c = calc.lie.bracket(i, a, b)
                if c:
                    value = value - alg.scalar(c)
                value = value * HALF
                if symmetric_part is not None:
                    value = value + symmetric_part[a - 1][i - 1][b - 1]
                row.append(value)
            plane.append(tuple(row))
        gamma.append(tuple(plane))
    return Connection(calc, gamma)


# -- operators on component arrays gamma[a][i][b] (dual basis, N = n) ----------


def sigma_swap(array):
    """sigma(alpha)^i_ab = alpha^i_ba: transpose the two derivation slots."""
    n = len(array)
    return tuple(
        tuple(
            tuple(array[b][i][a] for b in range(n)) for i in range(len(array[0]))
        )
        for a in range(n)
    )


def symmetrize(array):
    """s(alpha) = alpha + sigma(alpha)."""
    swapped = sigma_swap(array)
    return tuple(
        tuple(
            tuple(array[a][i][b] + swapped[a][i][b] for b in range(len(row)))
            for i, row in enumerate(plane)
        )
        for a, plane in enumerate(array)
    )


def antisymmetrize(array):
    """wedge(alpha) = alpha - sigma(alpha)."""
    swapped = sigma_swap(array)
    return tuple(
        tuple(
            tuple(array[a][i][b] - swapped[a][i][b] for b in range(len(row)))
            for i, row in enumerate(plane)
        )
        for a, plane in enumerate(array)
    )


def d_array(calculus: Calculus):
    """The exterior derivative as a component array: d^i_ab = d theta^i (d_a, d_b)."""
    n = calculus.n
    alg = calculus.algebra
    out = []
    for a in range(1, n + 1):
        plane = []
        for i in range(1, n + 1):
            row = []
            for b in range(1, n + 1):
                c = calculus.lie.bracket(i, a, b)
                row.append(alg.scalar(-c) if c else alg.zero())
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


def metric_pairing_operator(array, metric: HermitianMetric):
    """T_h(alpha)^ij_a = alpha^i_ak h^kj + (alpha^j_ak h^ki)*."""
    n = len(array)
    rank = metric.rank
    alg = metric.calculus.algebra
    out = []
    for a in range(n):
        plane = []
        for i in range(rank):
            row = []
            for j in range(rank):
                direct = alg.zero()
                mirror = alg.zero()
                for k in range(rank):
                    direct = direct + array[a][i][k] * metric.upper[k][j]
                    mirror = mirror + array[a][j][k] * metric.upper[k][i]
                row.append(direct + mirror.star())
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


def lc_characterization_check(conn: Connection, metric: HermitianMetric) -> bool:
    """Both component identities a Levi-Civita connection must satisfy.

    First, the pairing of the symmetrized connection equals
    2 dh - T_h(d).  Second, the fixed-point identity: the torsion-free
    projection (d + s(conn)) / 2 returns conn itself.  The conjunction
    holds exactly when conn is torsion free and compatible.
    """
    calc = conn.calculus
    n = calc.n
    if conn.rank != n or metric.rank != n:
        raise ValueError("characterization needs the dual-basis calculus (N = n)")
    sym = symmetrize(conn.gamma)
    dop = d_array(calc)
    lhs = metric_pairing_operator(sym, metric)
    t_of_d = metric_pairing_operator(dop, metric)
    for a in range(n):
        for i in range(n):
            for j in range(n):
                rhs = metric.upper[i][j].derive(a + 1) * 2 - t_of_d[a][i][j]
                if lhs[a][i][j] != rhs:
                    return False
    for a in range(n):
        for i in range(n):
            for b in range(n):
                projected = (dop[a][i][b] + sym[a][i][b]) * HALF
                if projected != conn.gamma[a][i][b]:
                    return False
    return True
