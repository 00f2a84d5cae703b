"""Exact linear algebra over Z and Q.

Matrices are dense lists of rows holding Python ints (ring "Z") or
fractions.Fraction (ring "Q"); there is no floating point anywhere.  The
column convention is used throughout: a matrix M sends the column vector x to
M @ x, the columns of a "generators" matrix span a subgroup of the ambient
Z^rows, and composition is ordinary matrix product.

The Smith normal form drives everything over Z: kernels, integer solves,
cokernel presentations and subquotients.  Pivoting picks the smallest nonzero
absolute value to keep intermediate entries tame.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import ContainmentViolation, DimensionMismatch

INFINITE = "infinite"

ZZ = "Z"
QQ = "Q"


class IntMatrix:
    """Dense exact matrix; entries are ints (or Fractions when used over Q)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        if rows is None:
            rows = len(data)
            cols = len(data[0]) if rows else 0
        self.rows = rows
        self.cols = cols
        self.data = [list(r) for r in data]
        for r in self.data:
            if len(r) != cols:
                raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def from_columns(cls, cols, rows=None):
        """Build a matrix whose columns are the given vectors."""
        if not cols:
            if rows is None:
                raise DimensionMismatch("empty column list needs explicit row count")
            return cls.zeros(rows, 0)
        rows = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(rows)], rows, len(cols))

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def copy(self):
        return IntMatrix(self.data, self.rows, self.cols)

    def transpose(self):
        return IntMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.cols,
            self.rows,
        )

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"IntMatrix({self.data!r})"

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.rows}x{self.cols} times {other.rows}x{other.cols}")
            out = IntMatrix.zeros(self.rows, other.cols)
            for i in range(self.rows):
                row = self.data[i]
                orow = out.data[i]
                for k in range(self.cols):
                    a = row[k]
                    if a:
                        brow = other.data[k]
                        for j in range(other.cols):
                            if brow[j]:
                                orow[j] += a * brow[j]
            return out
        raise TypeError(other)

    def apply(self, vec):
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector length {len(vec)} vs {self.cols} columns")
        return [sum(self.data[i][j] * vec[j] for j in range(self.cols) if vec[j]) for i in range(self.rows)]

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return IntMatrix([self.data[i] + other.data[i] for i in range(self.rows)], self.rows, self.cols + other.cols)

    def is_zero(self):
        return all(not e for row in self.data for e in row)


def _swap_rows(m, i, j):
    m.data[i], m.data[j] = m.data[j], m.data[i]


def _swap_cols(m, i, j):
    for row in m.data:
        row[i], row[j] = row[j], row[i]


def _addmul_row(m, dst, src, c):
    if c:
        drow, srow = m.data[dst], m.data[src]
        for j in range(m.cols):
            drow[j] += c * srow[j]


def _addmul_col(m, dst, src, c):
    if c:
        for row in m.data:
            row[dst] += c * row[src]


def _negate_row(m, i):
    m.data[i] = [-x for x in m.data[i]]


def _negate_col(m, j):
    for row in m.data:
        row[j] = -row[j]


def smith(M: IntMatrix):
    """Smith normal form with transforms: returns (U, D, V) with D = U*M*V.

    U and V are unimodular, D is diagonal with nonnegative entries in a
    divisibility chain d_1 | d_2 | ... .  Total function; empty matrices work.
    """
    D = M.copy()
    U = IntMatrix.identity(M.rows)
    V = IntMatrix.identity(M.cols)
    n = min(M.rows, M.cols)

    def find_pivot(t):
        best = None
        for i in range(t, D.rows):
            row = D.data[i]
            for j in range(t, D.cols):
                e = row[j]
                if e:
                    a = abs(e)
                    if best is None or a < best[0]:
                        best = (a, i, j)
                        if a == 1:
                            return best
        return best

    t = 0
    while t < n:
        piv = find_pivot(t)
        if piv is None:
            break
        _, pi, pj = piv
        if pi != t:
            _swap_rows(D, t, pi)
            _swap_rows(U, t, pi)
        if pj != t:
            _swap_cols(D, t, pj)
            _swap_cols(V, t, pj)
        # Clear row and column t; restart when a division leaves a remainder
        # (the remainder becomes the new, smaller pivot).
        while True:
            restart = False
            for i in range(t + 1, D.rows):
                e = D.data[i][t]
                if e:
                    q = e // D.data[t][t]
                    _addmul_row(D, i, t, -q)
                    _addmul_row(U, i, t, -q)
                    if D.data[i][t]:
                        _swap_rows(D, t, i)
                        _swap_rows(U, t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, D.cols):
                e = D.data[t][j]
                if e:
                    q = e // D.data[t][t]
                    _addmul_col(D, j, t, -q)
                    _addmul_col(V, j, t, -q)
                    if D.data[t][j]:
                        _swap_cols(D, t, j)
                        _swap_cols(V, t, j)
                        restart = True
                        break
            if not restart:
                break
        # Pivot must divide the rest of the submatrix for the chain property.
        d = D.data[t][t]
        fixed = True
        for i in range(t + 1, D.rows):
            for j in range(t + 1, D.cols):
                if D.data[i][j] % d:
                    _addmul_row(D, t, i, 1)
                    _addmul_row(U, t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1

    for i in range(n):
        if D.data[i][i] < 0:
            _negate_row(D, i)
            _negate_row(U, i)
    return U, D, V


def _diag(D):
    return [D.data[i][i] for i in range(min(D.rows, D.cols))]


@dataclass
class SNF:
    """Cached SNF package with the inverse transforms used by solvers."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diag: list

    @property
    def rank(self):
        return sum(1 for d in self.diag if d)


def snf(M: IntMatrix) -> SNF:
    U, D, V = smith(M)
    return SNF(U, D, V, _diag(D))


def kernel(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel of M."""
    s = snf(M)
    cols = []
    for j in range(M.cols):
        if j >= len(s.diag) or s.diag[j] == 0:
            cols.append(s.V.column(j))
    return IntMatrix.from_columns(cols, rows=M.cols)


def solve(M: IntMatrix, b) -> list | None:
    """One integer solution x of M x = b, or None."""
    s = snf(M)
    ub = s.U.apply(b)
    y = [0] * M.cols
    for i in range(M.rows):
        d = s.diag[i] if i < len(s.diag) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
    return s.V.apply(y)


def solve_matrix(M: IntMatrix, B: IntMatrix) -> IntMatrix | None:
    """X with M X = B, or None if some column has no integer solution."""
    s = snf(M)
    cols = []
    for j in range(B.cols):
        ub = s.U.apply(B.column(j))
        y = [0] * M.cols
        ok = True
        for i in range(M.rows):
            d = s.diag[i] if i < len(s.diag) else 0
            if d == 0:
                if ub[i] != 0:
                    ok = False
                    break
            else:
                if ub[i] % d:
                    ok = False
                    break
                y[i] = ub[i] // d
        if not ok:
            return None
        cols.append(s.V.apply(y))
    return IntMatrix.from_columns(cols, rows=M.cols)


@dataclass
class FGAbelian:
    """Finitely generated abelian group in invariant-factor normal form.

    Coordinates are (torsion..., free...) with torsion entries reduced to
    [0, d_i).  ``lift`` sends normal-form coordinates to the ambient module,
    ``project`` sends ambient vectors (lying in the presented subgroup) back;
    project(lift(c)) == c.  Over Q the torsion list is empty and free_rank is
    the dimension.
    """

    free_rank: int
    torsion: tuple = ()
    lift: IntMatrix | None = None
    project_mat: IntMatrix | None = field(default=None, repr=False)
    ring: str = ZZ

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise DimensionMismatch(f"torsion {self.torsion} violates the divisibility chain")

    @property
    def ngens(self):
        return len(self.torsion) + self.free_rank

    def is_trivial(self):
        return self.ngens == 0

    def order(self):
        if self.free_rank:
            return INFINITE
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def invariants(self):
        return (self.free_rank, tuple(self.torsion))

    def reduce(self, coords):
        """Normal form of a coordinate vector."""
        if len(coords) != self.ngens:
            raise DimensionMismatch(f"{len(coords)} coords for {self.ngens} generators")
        out = list(coords)
        for i, d in enumerate(self.torsion):
            out[i] %= d
        return out

    def zero(self):
        return [0] * self.ngens

    def is_zero(self, coords):
        return all(c == 0 for c in self.reduce(coords))

    def coords_equal(self, a, b):
        return self.reduce(a) == self.reduce(b)

    def element_order(self, coords):
        """Least n >= 1 with n*x == 0, or INFINITE."""
        x = self.reduce(coords)
        k = len(self.torsion)
        if any(x[k:]):
            return INFINITE
        n = 1
        for i, d in enumerate(self.torsion):
            if x[i]:
                n = n * (d // gcd(d, x[i])) // gcd(n, d // gcd(d, x[i]))
        return n

    def project(self, ambient_vec):
        """Normal-form coordinates of an ambient vector in the presented span."""
        if self.project_mat is None:
            raise DimensionMismatch("presentation has no projection data")
        return self.reduce(self.project_mat.apply(ambient_vec))

    def lift_coords(self, coords):
        if self.lift is None:
            raise DimensionMismatch("presentation has no lift data")
        return self.lift.apply(self.reduce(coords))

    def elements(self):
        """All elements (finite groups only)."""
        if self.free_rank:
            raise DimensionMismatch("infinite group")
        coords = [[]]
        for d in self.torsion:
            coords = [c + [i] for c in coords for i in range(d)]
        return coords

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def element_order(x, G: FGAbelian):
    return G.element_order(x)


def _presentation_from_relations(ambient_gens: IntMatrix, relations: IntMatrix, ring=ZZ) -> FGAbelian:
    """Present span(columns of ambient_gens) modulo ambient_gens * relations.

    relations is a matrix in generator coordinates (a x m): each column is a
    relation among the a generators.
    """
    a = ambient_gens.cols
    s = snf(relations)
    # Z^a / im(relations): coordinates c = U*y; invariant factor d_i on c_i.
    tors_idx, tors = [], []
    free_idx = []
    for i in range(a):
        d = s.diag[i] if i < len(s.diag) else 0
        if d == 0:
            free_idx.append(i)
        elif d > 1:
            tors_idx.append(i)
            tors.append(d)
    order = tors_idx + free_idx
    # lift: normal coords -> generator coords (columns of U^{-1}) -> ambient.
    uinv = solve_matrix(s.U, IntMatrix.identity(a))
    lift_gen = IntMatrix.from_columns([uinv.column(i) for i in order], rows=a)
    lift = ambient_gens * lift_gen
    proj_rows = [s.U.data[i] for i in order]
    proj_gen = IntMatrix(proj_rows, len(order), a) if order else IntMatrix.zeros(0, a)
    return FGAbelian(
        free_rank=len(free_idx),
        torsion=tuple(tors),
        lift=lift,
        project_mat=proj_gen,  # generator coords -> normal form; see Subquotient.project
        ring=ring,
    )


class Presentation(FGAbelian):
    pass


def cokernel(M: IntMatrix) -> FGAbelian:
    """Presentation of Z^rows / image(M) with lift/project populated."""
    pres = _presentation_from_relations(IntMatrix.identity(M.rows), M)
    # ambient coords equal generator coords here, so project works directly.
    return pres


def subquotient(ambient_rank: int, Z_gens: IntMatrix, B_gens: IntMatrix) -> FGAbelian:
    """Present span(Z_gens)/span(B_gens) inside Z^ambient_rank.

    Raises ContainmentViolation unless span(B) is contained in span(Z).  The
    returned lift/project maps go through the ambient module: lift() produces
    ambient vectors, project() accepts ambient vectors lying in span(Z).
    """
    if Z_gens.rows != ambient_rank or B_gens.rows != ambient_rank:
        raise DimensionMismatch("generator matrices must live in the ambient module")
    T = solve_matrix(Z_gens, B_gens)
    if T is None:
        raise ContainmentViolation("B-generators not contained in span of Z-generators")
    K = kernel(Z_gens)
    rel = T.hstack(K)
    pres = _presentation_from_relations(Z_gens, rel)
    proj_gen = pres.project_mat

    class _Sub(FGAbelian):
        __hash__ = None

        def project(self, ambient_vec):
            y = solve(Z_gens, ambient_vec)
            if y is None:
                raise ContainmentViolation("vector not in the presented subgroup")
            return self.reduce(proj_gen.apply(y)) if self.ngens else []

    return _Sub(
        free_rank=pres.free_rank,
        torsion=pres.torsion,
        lift=pres.lift,
        project_mat=proj_gen,
        ring=ZZ,
    )


# ---------------------------------------------------------------------------
# Rational (field) versions, used by the Lie-algebra side.


def q_rref(rows):
    """Reduced row echelon form over Q; returns (rref_rows, pivot_columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def q_kernel(M: IntMatrix) -> IntMatrix:
    """Columns span the Q-nullspace of M (entries are Fractions)."""
    rr, pivots = q_rref(M.data if M.rows else [])
    free = [j for j in range(M.cols) if j not in pivots]
    cols = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rr[i][f]
        cols.append(v)
    return IntMatrix.from_columns(cols, rows=M.cols)


def q_solve(M: IntMatrix, b):
    """One Q-solution of M x = b, or None."""
    aug = [list(M.data[i]) + [b[i]] for i in range(M.rows)]
    rr, pivots = q_rref(aug) if M.rows else ([], [])
    if M.cols in pivots:
        return None
    x = [Fraction(0)] * M.cols
    for i, p in enumerate(pivots):
        x[p] = rr[i][M.cols]
    return x


def q_solve_matrix(M: IntMatrix, B: IntMatrix):
    cols = []
    for j in range(B.cols):
        x = q_solve(M, B.column(j))
        if x is None:
            return None
        cols.append(x)
    return IntMatrix.from_columns(cols, rows=M.cols)


def q_subquotient(ambient_rank: int, Z_gens: IntMatrix, B_gens: IntMatrix) -> FGAbelian:
    """Q-version of subquotient: a vector space quotient with lift/project."""
    if q_solve_matrix(Z_gens, B_gens) is None:
        raise ContainmentViolation("B-generators not in the span of Z-generators")
    # Reduce Z to an independent spanning set.
    rrz, pivz = q_rref([[Z_gens.data[i][j] for j in range(Z_gens.cols)] for i in range(Z_gens.rows)] or [])
    zbasis = [Z_gens.column(j) for j in pivz]
    # Extend a basis of span(B) to span(Z); quotient basis = the added vectors.
    rrb, pivb = q_rref([[B_gens.data[i][j] for j in range(B_gens.cols)] for i in range(B_gens.rows)] or [])
    bbasis = [B_gens.column(j) for j in pivb]
    chosen = list(bbasis)
    quot = []
    for v in zbasis:
        cand = IntMatrix.from_columns(chosen + [v], rows=ambient_rank)
        _, piv = q_rref(cand.data)
        if len(piv) == cand.cols:
            chosen.append(v)
            quot.append(v)
    lift = IntMatrix.from_columns(quot, rows=ambient_rank)
    basis_mat = IntMatrix.from_columns(bbasis + quot, rows=ambient_rank)
    nb = len(bbasis)

    class _QSub(FGAbelian):
        __hash__ = None

        def project(self, ambient_vec):
            y = q_solve(basis_mat, ambient_vec)
            if y is None:
                raise ContainmentViolation("vector not in the presented subspace")
            return y[nb:]

    return _QSub(free_rank=len(quot), torsion=(), lift=lift, project_mat=None, ring=QQ)
