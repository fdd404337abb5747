"""Construction and verification of Levi-Civita connections.

Pipeline: from a validated metric build the antisymmetric F tensor, check
the cyclic solvability condition (equivalent to d(rho) = 0), solve the
hermitian matrix equations (R_a)_cb - (R_b)_ca = F_cab, conjugate by the
metric to obtain the U array, and assemble the Christoffel entries

    gamma^i_ak = (1/2 d_a h^ij + i U^ij_a + A^ij_a) h_jk.

The free data of the construction is exactly: the hermitian diagonal
parameters X_ab = (R_a)_bb, one hermitian parameter per strictly
increasing index triple, and an optional antihermitian array A.  Every
constructed connection is re-verified (torsion, compatibility, and the
characterization identities) before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement
from .connections import (
    Connection,
    check_antihermitian,
    compat_defect,
    lc_characterization_check,
    torsion,
)
from .errors import (
    InternalVerificationFailure,
    NotWeaklySymmetric,
    ParamViolation,
    SolvabilityViolated,
)
from .forms import Calculus
from .metric import HermitianMetric, weak_symmetry_defect

HALF = Fraction(1, 2)


class FTensor:
    """The n x n x n array F_cab, antisymmetric in its last two indices."""

    __slots__ = ("calculus", "entries")

    def __init__(self, calculus: Calculus, entries):
        entries = tuple(
            tuple(tuple(entry for entry in row) for row in plane) for plane in entries
        )
        n = calculus.n
        if len(entries) != n or any(
            len(plane) != n or any(len(row) != n for row in plane)
            for plane in entries
        ):
            raise ValueError("expected an n x n x n array")
        for c in range(n):
            for a in range(n):
                for b in range(n):
                    if entries[c][a][b] != -entries[c][b][a]:
                        raise ValueError(
                            "F is not antisymmetric at (%d, %d, %d)"
                            % (c + 1, a + 1, b + 1)
                        )
        self.calculus = calculus
        self.entries = entries

    def __getitem__(self, key):
        c, a, b = key
        return self.entries[c - 1][a - 1][b - 1]

    @property
    def n(self) -> int:
        return self.calculus.n


@dataclass
class SolverParams:
    """Free parameters of the construction.

    ``X[a][b]`` (0-based) is the hermitian diagonal entry (R_{a+1})_{b+1,b+1};
    ``triples`` maps each strictly increasing index triple (a, b, c)
    (1-based) to a hermitian element; ``antiherm``, when present, is the
    n x N x N antihermitian compatibility freedom.
    """

    X: tuple
    triples: dict
    antiherm: tuple | None = None

    @classmethod
    def zeros(cls, calculus: Calculus) -> "SolverParams":
        n = calculus.n
        z = calculus.algebra.zero()
        return cls(tuple(tuple(z for _ in range(n)) for _ in range(n)), {})

    def validated(self, calculus: Calculus, rank: int) -> "SolverParams":
        n = calculus.n
        X = tuple(tuple(entry for entry in row) for row in self.X)
        if len(X) != n or any(len(row) != n for row in X):
            raise ParamViolation("X must be an n x n array")
        for a in range(n):
            for b in range(n):
                if not X[a][b].is_hermitian():
                    raise ParamViolation(
                        "X[%d][%d] is not hermitian" % (a + 1, b + 1)
                    )
        triples = {}
        for key, value in self.triples.items():
            a, b, c = key
            if not (1 <= a < b < c <= n):
                raise ParamViolation(
                    "triple key %s must be strictly increasing in 1..%d" % (key, n)
                )
            if not value.is_hermitian():
                raise ParamViolation("triple parameter %s is not hermitian" % (key,))
            triples[(a, b, c)] = value
        antiherm = self.antiherm
        if antiherm is not None:
            antiherm = tuple(
                tuple(tuple(entry for entry in row) for row in plane)
                for plane in antiherm
            )
            if len(antiherm) != n or any(
                len(plane) != rank or any(len(row) != rank for row in plane)
                for plane in antiherm
            ):
                raise ParamViolation("antihermitian array must be n x N x N")
            try:
                check_antihermitian(antiherm, rank, n)
            except Exception as exc:
                raise ParamViolation(str(exc)) from exc
        return SolverParams(X, triples, antiherm)


class RSet:
    """n hermitian n x n matrices over the algebra."""

    __slots__ = ("calculus", "matrices")

    def __init__(self, calculus: Calculus, matrices):
        matrices = tuple(
            tuple(tuple(entry for entry in row) for row in m) for m in matrices
        )
        n = calculus.n
        if len(matrices) != n or any(
            len(m) != n or any(len(row) != n for row in m) for m in matrices
        ):
            raise ValueError("expected n matrices of size n x n")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if matrices[a][b][c].star() != matrices[a][c][b]:
                        raise ValueError(
                            "R_%d is not hermitian at (%d, %d)" % (a + 1, b + 1, c + 1)
                        )
        self.calculus = calculus
        self.matrices = matrices

    def __getitem__(self, a: int):
        return self.matrices[a - 1]

    def entry(self, a: int, b: int, c: int) -> AlgebraElement:
        return self.matrices[a - 1][b - 1][c - 1]


def compute_F(metric: HermitianMetric) -> FTensor:
    """F_cab = -(i/2) d_a h_cb + (i/2) d_b h_ca + i c^e_ab h_ce.

    The bracket correction vanishes for an abelian Lie algebra.  The
    cyclic defect of this tensor reproduces i d(rho) componentwise.
    """
    calc = metric.calculus
    n = calc.n
    if metric.rank != n:
        raise ValueError("F tensor needs the dual-basis calculus (N = n)")
    alg = calc.algebra
    half_i = alg.scalar(0, Fraction(1, 2))
    unit_i = alg.scalar(0, 1)
    abelian = calc.lie.is_abelian()
    entries = []
    for c in range(1, n + 1):
        plane = []
        for a in range(1, n + 1):
            row = []
            for b in range(1, n + 1):
                value = (
                    half_i * metric.lower[c - 1][b - 1].derive(a) * (-1)
                    + half_i * metric.lower[c - 1][a - 1].derive(b)
                )
                if not abelian:
                    for e in range(1, n + 1):
                        const = calc.lie.bracket(e, a, b)
                        if const:
                            value = value + unit_i * metric.lower[c - 1][e - 1] * const
                row.append(value)
            plane.append(tuple(row))
        entries.append(tuple(plane))
    return FTensor(calc, entries)


def solvability_check(tensor: FTensor):
    """None when solvable; otherwise ((a, b, c), defect) for the first
    strictly increasing triple where the cyclic hermitian condition fails."""
    n = tensor.n
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            for c in range(b + 1, n + 1):
                cyclic = tensor[a, b, c] + tensor[b, c, a] + tensor[c, a, b]
                defect = cyclic + cyclic.star()
                if not defect.is_zero():
                    return (a, b, c), defect
    return None


def solve_R(tensor: FTensor, params: SolverParams) -> RSet:
    """General hermitian solution of (R_a)_cb - (R_b)_ca = F_cab.

    Diagonals are the free X parameters; entries (R_a)_ab are forced;
    for each strictly increasing triple the three remaining entries follow
    the closed-form solution with one free hermitian parameter.  The
    transposed entries are filled by hermitian conjugation.
    """
    calc = tensor.calculus
    n = tensor.n
    violation = solvability_check(tensor)
    if violation is not None:
        raise SolvabilityViolated(*violation)
    params = params.validated(calc, n)
    R = [[[None] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            R[a][b][b] = params.X[a][b]
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            if x == y:
                continue
            value = params.X[y - 1][x - 1] + tensor[x, x, y]
            R[x - 1][x - 1][y - 1] = value
            R[x - 1][y - 1][x - 1] = value.star()
    zero = calc.algebra.zero()
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            for c in range(b + 1, n + 1):
                h = params.triples.get((a, b, c), zero)
                f_abc = tensor[a, b, c]
                f_bca = tensor[b, c, a]
                f_cab = tensor[c, a, b]
                r_a = (f_abc - f_bca + f_cab.star()) * HALF + h
                r_b = (f_abc.star() - f_bca.star() - f_cab) * HALF + h
                r_c = -((f_abc + f_bca + f_cab.star()) * HALF) + h
                R[a - 1][b - 1][c - 1] = r_a
                R[a - 1][c - 1][b - 1] = r_a.star()
                R[b - 1][c - 1][a - 1] = r_b
                R[b - 1][a - 1][c - 1] = r_b.star()
                R[c - 1][a - 1][b - 1] = r_c
                R[c - 1][b - 1][a - 1] = r_c.star()
    result = RSet(calc, R)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            for c in range(1, n + 1):
                lhs = result.entry(a, c, b) - result.entry(b, c, a)
                if lhs != tensor[c, a, b]:
                    raise InternalVerificationFailure(
                        "R equation fails at (a=%d, b=%d, c=%d)" % (a, b, c)
                    )
    return result


def assemble_U(metric: HermitianMetric, rset: RSet):
    """U^ij_a = h^ib (R_a)_bc h^cj; satisfies (U^ij_a)* = U^ji_a."""
    calc = metric.calculus
    n = calc.n
    alg = calc.algebra
    out = []
    for a in range(1, n + 1):
        plane = []
        for i in range(n):
            row = []
            for j in range(n):
                total = alg.zero()
                for b in range(n):
                    for c in range(n):
                        total = total + (
                            metric.upper[i][b]
                            * rset.matrices[a - 1][b][c]
                            * metric.upper[c][j]
                        )
                row.append(total)
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


@dataclass
class LCVerification:
    """Outcome of checking a connection against a metric."""

    torsion_forms: tuple
    compat: tuple
    torsion_zero: bool
    compat_zero: bool
    characterization: bool

    @property
    def passed(self) -> bool:
        return self.torsion_zero and self.compat_zero and self.characterization


def verify_levi_civita(conn: Connection, metric: HermitianMetric) -> LCVerification:
    """Full report: torsion forms, compatibility defect, both identities."""
    torsion_forms = torsion(conn)
    defect = compat_defect(conn, metric)
    return LCVerification(
        torsion_forms=torsion_forms,
        compat=defect,
        torsion_zero=all(form.is_zero() for form in torsion_forms),
        compat_zero=all(
            entry.is_zero() for plane in defect for row in plane for entry in row
        ),
        characterization=lc_characterization_check(conn, metric),
    )


def build_levi_civita(metric: HermitianMetric, params: SolverParams | None = None) -> Connection:
    """Construct a torsion-free metric-compatible connection.

    Raises NotWeaklySymmetric when d(rho) != 0 (no such connection
    exists).  The default parameters are all zero.  A nonzero
    antihermitian array keeps compatibility but in general breaks torsion
    freeness; the unconditional re-verification turns any such failure,
    or any internal convention bug, into an immediate error.
    """
    calc = metric.calculus
    n = calc.n
    if metric.rank != n:
        raise ValueError("construction needs the dual-basis calculus (N = n)")
    if params is None:
        params = SolverParams.zeros(calc)
    params = params.validated(calc, metric.rank)
    defect = weak_symmetry_defect(metric)
    if not defect.is_zero():
        key = sorted(defect.comps)[0]
        raise NotWeaklySymmetric(key, defect.comps[key])
    tensor = compute_F(metric)
    violation = solvability_check(tensor)
    if violation is not None:
        raise SolvabilityViolated(*violation)
    rset = solve_R(tensor, params)
    u_array = assemble_U(metric, rset)
    alg = calc.algebra
    unit_i = alg.scalar(0, 1)
    gamma = []
    for a in range(1, n + 1):
        plane = []
        for i in range(n):
            row = []
            for k in range(n):
                total = alg.zero()
                for j in range(n):
                    coeff = (
                        metric.upper[i][j].derive(a) * HALF
                        + unit_i * u_array[a - 1][i][j]
                    )
                    if params.antiherm is not None:
                        coeff = coeff + params.antiherm[a - 1][i][j]
                    total = total + coeff * metric.lower[j][k]
                row.append(total)
            plane.append(tuple(row))
        gamma.append(tuple(plane))
    conn = Connection(calc, gamma)
    report = verify_levi_civita(conn, metric)
    if not report.passed:
        raise InternalVerificationFailure(
            "constructed connection failed re-verification: torsion_zero=%s "
            "compat_zero=%s characterization=%s"
            % (report.torsion_zero, report.compat_zero, report.characterization)
        )
    return conn
