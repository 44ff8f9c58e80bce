"""Exact linear algebra over the integers and the rationals.

Matrices are sparse (one dict per row) and hold Python ``int`` or
``fractions.Fraction`` entries, so no computation ever rounds.  The module
also implements finitely presented abelian groups, which are cokernels of
integer matrices, together with their tensor product and internal hom.

>>> U, D, V = smith_normal_form(Matrix.from_rows([[2, 4], [6, 8]]))
>>> D.to_rows()
[[2, 0], [0, 4]]
>>> fp_canonical(FPAbGroup(Matrix.from_rows([[2, 0], [0, 3]])))
(0, (6,))
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property
from math import gcd, prod


def _clean(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class Matrix:
    """Immutable sparse matrix with exact entries."""

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        cleaned = []
        for row in rows:
            r = {}
            for j, v in row.items():
                if v:
                    if not 0 <= j < ncols:
                        raise ValueError(f"column index {j} out of range")
                    r[j] = _clean(v)
            cleaned.append(r)
        self._rows = tuple(cleaned)
        self._hash = None

    @classmethod
    def _raw(cls, nrows, ncols, rows):
        m = object.__new__(cls)
        m.nrows, m.ncols, m._rows, m._hash = nrows, ncols, tuple(rows), None
        return m

    # construction

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(len(rows), ncols, [{j: v for j, v in enumerate(r) if v} for r in rows])

    @classmethod
    def from_columns(cls, columns, nrows):
        columns = [list(c) for c in columns]
        rows = [{} for _ in range(nrows)]
        for j, c in enumerate(columns):
            if len(c) != nrows:
                raise ValueError("column has wrong length")
            for i, v in enumerate(c):
                if v:
                    rows[i][j] = v
        return cls(nrows, len(columns), rows)

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        rows = [{} for _ in range(nrows)]
        for (i, j), v in entries.items():
            if v:
                rows[i][j] = rows[i].get(j, 0) + v
        return cls(nrows, ncols, rows)

    @classmethod
    def zero(cls, nrows, ncols):
        return cls._raw(nrows, ncols, [{} for _ in range(nrows)])

    @classmethod
    def identity(cls, n):
        return cls._raw(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def diagonal(cls, values, nrows=None, ncols=None):
        values = list(values)
        nrows = len(values) if nrows is None else nrows
        ncols = len(values) if ncols is None else ncols
        return cls(nrows, ncols, [{i: values[i]} if i < len(values) else {} for i in range(nrows)])

    @classmethod
    def permutation(cls, perm):
        """Matrix sending basis vector ``j`` to basis vector ``perm[j]``."""
        n = len(perm)
        rows = [{} for _ in range(n)]
        for j, i in enumerate(perm):
            rows[i][j] = 1
        return cls._raw(n, n, rows)

    # access

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, key):
        i, j = key
        return self._rows[i].get(j, 0)

    def row(self, i):
        return dict(self._rows[i])

    def row_items(self):
        return enumerate(self._rows)

    def column(self, j):
        return [r.get(j, 0) for r in self._rows]

    def to_rows(self):
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self._rows]

    def nonzero(self):
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                yield i, j, v

    def is_zero(self):
        return not any(self._rows)

    def is_integral(self):
        return all(isinstance(v, int) for _, _, v in self.nonzero())

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, tuple(tuple(sorted(r.items())) for r in self._rows)))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.to_rows()})"

    # arithmetic

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other._rows
        out = []
        for r in self._rows:
            acc = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append({j: _clean(v) for j, v in acc.items() if v})
        return Matrix._raw(self.nrows, other.ncols, out)

    def apply(self, vector):
        return [sum(v * vector[j] for j, v in r.items()) for r in self._rows]

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        out = []
        for r, s in zip(self._rows, other._rows):
            acc = dict(r)
            for j, v in s.items():
                acc[j] = acc.get(j, 0) + v
            out.append({j: _clean(v) for j, v in acc.items() if v})
        return Matrix._raw(self.nrows, self.ncols, out)

    def __neg__(self):
        return Matrix._raw(self.nrows, self.ncols, [{j: -v for j, v in r.items()} for r in self._rows])

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        if not c:
            return Matrix.zero(self.nrows, self.ncols)
        return Matrix._raw(self.nrows, self.ncols, [{j: _clean(c * v) for j, v in r.items()} for r in self._rows])

    @property
    def T(self):
        rows = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                rows[j][i] = v
        return Matrix._raw(self.ncols, self.nrows, rows)

    def map_entries(self, fn):
        return Matrix(self.nrows, self.ncols, [{j: fn(v) for j, v in r.items()} for r in self._rows])

    def to_fractions(self):
        return Matrix._raw(self.nrows, self.ncols, [{j: Fraction(v) for j, v in r.items()} for r in self._rows])

    def select_rows(self, indices):
        return Matrix._raw(len(indices), self.ncols, [self._rows[i] for i in indices])

    def select_columns(self, indices):
        pos = {j: k for k, j in enumerate(indices)}
        if len(pos) != len(indices):
            return self.T.select_rows(indices).T
        return Matrix._raw(self.nrows, len(indices), [{pos[j]: v for j, v in r.items() if j in pos} for r in self._rows])

    def block(self, row_start, row_stop, col_start, col_stop):
        out = []
        for r in self._rows[row_start:row_stop]:
            out.append({j - col_start: v for j, v in r.items() if col_start <= j < col_stop})
        return Matrix._raw(row_stop - row_start, col_stop - col_start, out)

    def place(self, nrows, ncols, row_offset, col_offset):
        """Embed this matrix in a larger zero matrix."""
        rows = [{} for _ in range(nrows)]
        for i, r in enumerate(self._rows):
            rows[i + row_offset] = {j + col_offset: v for j, v in r.items()}
        return Matrix._raw(nrows, ncols, rows)

    # JSON

    def to_json(self):
        def enc(v):
            if isinstance(v, Fraction):
                return f"{v.numerator}/{v.denominator}"
            return v

        return [[enc(v) for v in row] for row in self.to_rows()]

    @classmethod
    def from_json(cls, data, nrows=None, ncols=None):
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix must be a list of lists")
        rows = [[parse_number(v) for v in r] for r in data]
        if nrows is not None and len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls.from_rows(rows, ncols)


def parse_number(value):
    """Parse an integer literal or a ``"p/q"`` rational literal."""
    if isinstance(value, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return _clean(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {value!r}") from exc
    raise ValueError(f"bad matrix entry {value!r}")


def hstack(mats, nrows=None):
    mats = list(mats)
    if not mats:
        return Matrix.zero(nrows or 0, 0)
    nrows = mats[0].nrows
    rows = [{} for _ in range(nrows)]
    off = 0
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("hstack row mismatch")
        for i, r in m.row_items():
            for j, v in r.items():
                rows[i][j + off] = v
        off += m.ncols
    return Matrix._raw(nrows, off, rows)


def vstack(mats, ncols=None):
    mats = list(mats)
    if not mats:
        return Matrix.zero(0, ncols or 0)
    ncols = mats[0].ncols
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("vstack column mismatch")
        rows.extend(m._rows)
    return Matrix._raw(len(rows), ncols, rows)


def block_diag(mats):
    mats = list(mats)
    nrows = sum(m.nrows for m in mats)
    ncols = sum(m.ncols for m in mats)
    rows = []
    off = 0
    for m in mats:
        for r in m._rows:
            rows.append({j + off: v for j, v in r.items()})
        off += m.ncols
    return Matrix._raw(nrows, ncols, rows)


def kron(a, b):
    """Kronecker product; basis pair (i, k) sits at index i * b.nrows + k."""
    rows = []
    for ra in a._rows:
        for rb in b._rows:
            rows.append({ja * b.ncols + jb: _clean(va * vb) for ja, va in ra.items() for jb, vb in rb.items()})
    return Matrix._raw(a.nrows * b.nrows, a.ncols * b.ncols, rows)


# Smith normal form


class _Smith:
    """Unimodular bookkeeping P·A·Q = D, with inverses kept alongside."""

    def __init__(self, a):
        m, n = a.shape
        self.m, self.n = m, n
        self.D = [[a[i, j] for j in range(n)] for i in range(m)]
        self.P = [[int(i == j) for j in range(m)] for i in range(m)]
        self.Pinv = [[int(i == j) for j in range(m)] for i in range(m)]
        self.Q = [[int(i == j) for j in range(n)] for i in range(n)]
        self.Qinv = [[int(i == j) for j in range(n)] for i in range(n)]

    # row i += c * row j
    def add_row(self, i, j, c):
        D, P, Pinv = self.D, self.P, self.Pinv
        D[i] = [x + c * y for x, y in zip(D[i], D[j])]
        P[i] = [x + c * y for x, y in zip(P[i], P[j])]
        for r in Pinv:
            r[j] -= c * r[i]

    def swap_rows(self, i, j):
        if i == j:
            return
        for M in (self.D, self.P):
            M[i], M[j] = M[j], M[i]
        for r in self.Pinv:
            r[i], r[j] = r[j], r[i]

    def negate_row(self, i):
        self.D[i] = [-x for x in self.D[i]]
        self.P[i] = [-x for x in self.P[i]]
        for r in self.Pinv:
            r[i] = -r[i]

    # column i += c * column j
    def add_col(self, i, j, c):
        for M in (self.D, self.Q):
            for r in M:
                r[i] += c * r[j]
        Qi, Qj = self.Qinv[i], self.Qinv[j]
        self.Qinv[j] = [y - c * x for x, y in zip(Qi, Qj)]

    def swap_cols(self, i, j):
        if i == j:
            return
        for M in (self.D, self.Q):
            for r in M:
                r[i], r[j] = r[j], r[i]
        self.Qinv[i], self.Qinv[j] = self.Qinv[j], self.Qinv[i]

    def run(self):
        D = self.D
        m, n = self.m, self.n
        t = 0
        while t < min(m, n):
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            self.swap_rows(t, best[1])
            self.swap_cols(t, best[2])
            while True:
                p = D[t][t]
                done = True
                for i in range(t + 1, m):
                    if D[i][t]:
                        q = D[i][t] // p
                        if q:
                            self.add_row(i, t, -q)
                        if D[i][t]:
                            done = False
                for j in range(t + 1, n):
                    if D[t][j]:
                        q = D[t][j] // p
                        if q:
                            self.add_col(j, t, -q)
                        if D[t][j]:
                            done = False
                if not done:
                    best = None
                    for i in range(t, m):
                        v = D[i][t]
                        if v and (best is None or abs(v) < best[0]):
                            best = (abs(v), i, t)
                    for j in range(t, n):
                        v = D[t][j]
                        if v and (best is None or abs(v) < best[0]):
                            best = (abs(v), t, j)
                    self.swap_rows(t, best[1])
                    self.swap_cols(t, best[2])
                    continue
                bad = None
                for i in range(t + 1, m) if abs(p) != 1 else ():
                    for j in range(t + 1, n):
                        if D[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if D[t][t] < 0:
                self.negate_row(t)
            t += 1
        return self


class SmithForm:
    """Result of a Smith decomposition ``A = U·D·V``."""

    def __init__(self, a):
        if not a.is_integral():
            raise ValueError("Smith normal form needs an integer matrix")
        s = _Smith(a).run()
        m, n = a.shape
        self.D = Matrix.from_rows(s.D, n)
        self.U = Matrix.from_rows(s.Pinv, m)
        self.U_inv = Matrix.from_rows(s.P, m)
        self.V = Matrix.from_rows(s.Qinv, n)
        self.V_inv = Matrix.from_rows(s.Q, n)
        self.diagonal = [s.D[i][i] for i in range(min(m, n)) if s.D[i][i]]
        self.rank = len(self.diagonal)


def smith_normal_form(a):
    """Return ``(U, D, V)`` with ``a == U @ D @ V``, ``U`` and ``V`` unimodular."""
    s = SmithForm(a)
    return s.U, s.D, s.V


def clear_denominators(a):
    """Scale each column to an integer column with the same rational span."""
    if a.is_integral():
        return a
    cols = a.T
    rows = []
    for _, col in cols.row_items():
        den = 1
        for v in col.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        rows.append({i: _clean(v * den) for i, v in col.items()})
    return Matrix(a.ncols, a.nrows, rows).T


# Rational elimination


def rref(a):
    """Reduced row echelon form over the rationals: ``(rows, pivot columns)``."""
    rows = [{j: Fraction(v) for j, v in r.items()} for _, r in a.row_items()]
    pivots = []
    r = 0
    for c in range(a.ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i].get(c):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        pr = {j: v * inv for j, v in pr.items()}
        rows[r] = pr
        for i in range(len(rows)):
            if i != r:
                f = rows[i].get(c)
                if f:
                    ri = rows[i]
                    for j, v in pr.items():
                        nv = ri.get(j, 0) - f * v
                        if nv:
                            ri[j] = nv
                        else:
                            ri.pop(j, None)
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(a):
    """Rank over the rationals."""
    if a.nrows > a.ncols:
        a = a.T
    return len(rref(a)[1])


def rat_kernel(a):
    """Columns form a basis of the rational null space of ``a``."""
    rows, pivots = rref(a)
    free = [j for j in range(a.ncols) if j not in set(pivots)]
    cols = []
    for f in free:
        v = [Fraction(0)] * a.ncols
        v[f] = Fraction(1)
        for r, p in zip(rows, pivots):
            v[p] = -r.get(f, 0)
        cols.append(v)
    return Matrix.from_columns(cols, a.ncols)


def rat_solve(a, b):
    """Some rational ``x`` with ``a @ x == b``, or ``None``."""
    aug = hstack([a, b])
    rows, pivots = rref(aug)
    if any(p >= a.ncols for p in pivots):
        return None
    x = [{} for _ in range(a.ncols)]
    for r, p in zip(rows, pivots):
        x[p] = {j - a.ncols: v for j, v in r.items() if j >= a.ncols}
    return Matrix(a.ncols, b.ncols, x)


def det(a):
    """Exact determinant of a square matrix."""
    if a.nrows != a.ncols:
        raise ValueError("determinant of a non-square matrix")
    m = [[Fraction(v) for v in r] for r in a.to_rows()]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return _clean(result)


# Integer lattices


def int_kernel(a):
    """Columns form a basis of the integer kernel of ``a``."""
    s = SmithForm(a)
    return s.V_inv.select_columns(list(range(s.rank, a.ncols)))


def int_image(a):
    """Columns form a basis of the lattice spanned by the columns of ``a``."""
    s = SmithForm(a)
    return s.U.select_columns(list(range(s.rank))) @ Matrix.diagonal(s.diagonal)


def int_solve(a, b):
    """Integer ``x`` with ``a @ x == b``, or ``None``."""
    s = SmithForm(a)
    c = s.U_inv @ b
    y = [{} for _ in range(a.ncols)]
    for i, r in c.row_items():
        if i < s.rank:
            d = s.diagonal[i]
            for j, v in r.items():
                if v % d:
                    return None
                y[i][j] = v // d
        elif r:
            return None
    return s.V_inv @ Matrix(a.ncols, b.ncols, y)


def solve(a, b, ground):
    return int_solve(a, b) if ground == "Z" else rat_solve(a, b)


def in_span(a, b, ground):
    """Whether every column of ``b`` lies in the column span of ``a``."""
    if b.is_zero():
        return True
    if a.ncols == 0:
        return False
    return solve(a, b, ground) is not None


def lattice_basis(a):
    """Columns forming a basis of the integer span of the (integral) columns of ``a``."""
    basis = {}
    for _, col in a.T.row_items():
        v = dict(col)
        while v:
            p = min(v)
            b = basis.get(p)
            if b is None:
                basis[p] = v if v[p] > 0 else {i: -x for i, x in v.items()}
                break
            bp, vp = b[p], v[p]
            if vp % bp == 0:
                q = vp // bp
                v = _combine(v, 1, b, -q)
                continue
            g, x, y = _xgcd(bp, vp)
            basis[p] = _combine(b, x, v, y)
            v = _combine(v, bp // g, b, -(vp // g))
    cols = [basis[p] for p in sorted(basis)]
    return Matrix.from_entries(a.nrows, len(cols), {(i, j): x for j, c in enumerate(cols) for i, x in c.items()})


def _combine(u, a, v, b):
    out = {}
    for i, x in u.items():
        out[i] = a * x
    for i, x in v.items():
        y = out.get(i, 0) + b * x
        if y:
            out[i] = y
        else:
            out.pop(i, None)
    return {i: x for i, x in out.items() if x}


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class Complement:
    """Coordinates on the quotient of ``ground^n`` by the span of some columns.

    ``proj`` kills the span and ``section`` splits ``proj``.  Over the
    integers the quotient must be free; otherwise ``ValueError`` is raised.
    """

    def __init__(self, a, ground):
        n = a.nrows
        if a.ncols == 0 or a.is_zero():
            self.proj, self.section, self.dim = Matrix.identity(n), Matrix.identity(n), n
            return
        if ground == "Q":
            rows, pivots = rref(a.T)
            pset = set(pivots)
            keep = [j for j in range(n) if j not in pset]
            entries = {}
            for k, j in enumerate(keep):
                entries[(k, j)] = 1
                for r, p in zip(rows, pivots):
                    v = r.get(j)
                    if v:
                        entries[(k, p)] = -v
            self.proj = Matrix.from_entries(len(keep), n, entries)
            self.section = Matrix.from_entries(n, len(keep), {(j, k): 1 for k, j in enumerate(keep)})
            self.dim = len(keep)
            return
        a = lattice_basis(clear_denominators(a))
        s = SmithForm(a)
        if any(d != 1 for d in s.diagonal):
            raise ValueError("quotient has torsion")
        keep = list(range(s.rank, n))
        self.proj = s.U_inv.select_rows(keep)
        self.section = s.U.select_columns(keep)
        self.dim = len(keep)


def image_basis(a, ground):
    """Independent columns spanning the same module as the columns of ``a``."""
    if a.ncols == 0:
        return a
    if ground == "Z":
        return int_image(a)
    rows, pivots = rref(a.T)
    return Matrix.from_rows([[r.get(j, 0) for j in range(a.nrows)] for r in rows], a.nrows).T if rows else Matrix.zero(a.nrows, 0)


def kernel(a, ground):
    return int_kernel(a) if ground == "Z" else rat_kernel(a)


# Finitely presented abelian groups


class FPAbGroup:
    """The cokernel of an integer relation matrix ``Z^m -> Z^n``."""

    def __init__(self, relations, generators=None):
        if not isinstance(relations, Matrix):
            relations = Matrix.from_rows(relations, 0 if generators is None else None)
        if generators is not None and relations.nrows != generators:
            if relations.nrows == 0 and relations.ncols == 0:
                relations = Matrix.zero(generators, 0)
            else:
                raise ValueError("relation matrix has the wrong number of rows")
        if not relations.is_integral():
            raise ValueError("relations must be integral")
        if relations.ncols > relations.nrows:
            relations = lattice_basis(relations)
        self.relations = relations

    @classmethod
    def free(cls, n):
        return cls(Matrix.zero(n, 0))

    @classmethod
    def cyclic(cls, d):
        return cls(Matrix.from_rows([[d]]))

    @classmethod
    def from_canonical(cls, rank, factors):
        n = len(factors) + rank
        return cls(Matrix.diagonal(list(factors), n, len(factors)))

    @property
    def ngens(self):
        return self.relations.nrows

    @cached_property
    def _smith(self):
        return SmithForm(self.relations)

    @cached_property
    def canonical(self):
        s = self._smith
        factors = tuple(d for d in s.diagonal if d != 1)
        return (self.ngens - s.rank, factors)

    def order(self):
        rank, factors = self.canonical
        return None if rank else prod(factors)

    def is_trivial(self):
        return self.canonical == (0, ())

    def is_free(self):
        return not self.canonical[1]

    def is_zero_element(self, vector):
        return in_span(self.relations, Matrix.from_columns([vector], self.ngens), "Z")

    def elements(self):
        """All elements of a finite group, as generator coordinate vectors."""
        if self.canonical[0]:
            raise ValueError("infinite group")
        s = self._smith
        ranges = []
        for i in range(self.ngens):
            d = s.diagonal[i] if i < s.rank else 0
            ranges.append(range(d) if d else range(1))
        for ys in itertools.product(*ranges):
            yield s.U.apply(list(ys))

    def __eq__(self, other):
        return isinstance(other, FPAbGroup) and self.relations == other.relations

    def __hash__(self):
        return hash(self.relations)

    def __repr__(self):
        rank, factors = self.canonical
        parts = [f"Z/{d}" for d in factors] + ["Z"] * rank
        return "FPAbGroup(" + (" + ".join(parts) or "0") + ")"

    def to_json(self):
        return {"generators": self.ngens, "relations": self.relations.to_json()}


def fp_canonical(group):
    """Free rank and ascending invariant factors (each at least 2)."""
    return group.canonical


class FPMorphism:
    """A homomorphism given by images of generators (columns of ``matrix``)."""

    def __init__(self, source, target, matrix, check=True):
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError(f"matrix shape {matrix.shape} does not fit {target.ngens}x{source.ngens}")
        if not matrix.is_integral():
            raise ValueError("morphism matrix must be integral")
        self.source, self.target, self.matrix = source, target, matrix
        if check and not in_span(target.relations, matrix @ source.relations, "Z"):
            raise ValueError("morphism does not respect the source relations")

    @classmethod
    def identity(cls, group):
        return cls(group, group, Matrix.identity(group.ngens), check=False)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, Matrix.zero(target.ngens, source.ngens), check=False)

    def __matmul__(self, other):
        if other.target.ngens != self.source.ngens:
            raise ValueError("composing incompatible morphisms")
        return FPMorphism(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other):
        return FPMorphism(self.source, self.target, self.matrix + other.matrix, check=False)

    def __neg__(self):
        return FPMorphism(self.source, self.target, -self.matrix, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        return FPMorphism(self.source, self.target, self.matrix.scaled(c), check=False)

    def equals(self, other):
        """Equality as homomorphisms: images agree modulo target relations."""
        if self.matrix.shape != other.matrix.shape:
            return False
        return in_span(self.target.relations, self.matrix - other.matrix, "Z")

    def is_zero(self):
        return in_span(self.target.relations, self.matrix, "Z")

    def cokernel(self):
        return FPAbGroup(hstack([self.target.relations, self.matrix], self.target.ngens))

    def kernel(self):
        """Kernel as a group, with the generator inclusion matrix."""
        n = self.source.ngens
        constraint = hstack([self.matrix, -self.target.relations], self.target.ngens)
        sol = int_kernel(constraint)
        lattice = image_basis(sol.block(0, n, 0, sol.ncols), "Z") if sol.ncols else Matrix.zero(n, 0)
        rels = int_solve(lattice, self.source.relations) if self.source.relations.ncols else Matrix.zero(lattice.ncols, 0)
        return FPAbGroup(rels, lattice.ncols), lattice

    def is_surjective(self):
        return self.cokernel().is_trivial()

    def is_injective(self):
        return self.kernel()[0].is_trivial()

    def is_iso(self):
        return self.is_surjective() and self.is_injective()

    def __repr__(self):
        return f"FPMorphism({self.source!r} -> {self.target!r}, {self.matrix.to_rows()})"


def fp_is_iso(f):
    """Whether a well-defined homomorphism is bijective."""
    FPMorphism(f.source, f.target, f.matrix, check=True)
    return f.is_iso()


def subquotient(generators, relations):
    """Present ``span(generators) / span(relations)`` inside ``Z^n``.

    Returns the group and a basis matrix whose columns are the chosen
    generators as vectors in ``Z^n``.
    """
    basis = int_image(generators) if generators.ncols else generators
    if relations.ncols == 0 or relations.is_zero():
        rel = Matrix.zero(basis.ncols, 0)
    else:
        rel = int_solve(basis, relations)
        if rel is None:
            raise ValueError("relations do not lie in the generated lattice")
    return FPAbGroup(rel, basis.ncols), basis


def fp_direct_sum(groups):
    groups = list(groups)
    return FPAbGroup(block_diag([g.relations for g in groups]), sum(g.ngens for g in groups))


def fp_tensor(g, h):
    """Tensor product; generator ``(i, j)`` sits at index ``i * h.ngens + j``."""
    rels = hstack(
        [kron(g.relations, Matrix.identity(h.ngens)), kron(Matrix.identity(g.ngens), h.relations)],
        g.ngens * h.ngens,
    )
    return FPAbGroup(rels, g.ngens * h.ngens)


def fp_tensor_map(f, g, source=None, target=None):
    source = source or fp_tensor(f.source, g.source)
    target = target or fp_tensor(f.target, g.target)
    return FPMorphism(source, target, kron(f.matrix, g.matrix), check=False)


class HomGroup(FPAbGroup):
    """Hom(source, target) with generators given by explicit homomorphisms."""

    def __init__(self, relations, source, target, basis):
        super().__init__(relations, basis.ncols)
        self.source, self.target, self.basis = source, target, basis

    def morphism(self, coords):
        """The homomorphism with the given coordinates in this presentation."""
        vec = self.basis.apply(list(coords))
        n, m = self.target.ngens, self.source.ngens
        mat = Matrix.from_rows([vec[a * m:(a + 1) * m] for a in range(n)], m)
        return FPMorphism(self.source, self.target, mat, check=False)

    def coordinates(self, f):
        vec = [f.matrix[a, b] for a in range(self.target.ngens) for b in range(self.source.ngens)]
        sol = int_solve(self.basis, Matrix.from_columns([vec], self.basis.nrows))
        if sol is None:
            raise ValueError("not a homomorphism between these groups")
        return sol.column(0)

    def __eq__(self, other):
        return isinstance(other, HomGroup) and self.relations == other.relations and self.basis == other.basis

    def __hash__(self):
        return hash((self.relations, self.basis))


def hom_lattice(source, target, intertwiners=()):
    """Generator matrices of homomorphisms, modulo those landing in relations.

    ``intertwiners`` is a list of pairs ``(A, B)`` of endomorphism matrices of
    the source and target; solutions satisfy ``f A = B f`` modulo the target
    relations.
    """
    n, m = target.ngens, source.ngens
    rg, rh = source.relations, target.relations
    nvars = n * m + rh.ncols * rg.ncols
    rows = []
    for a in range(n):
        for c in range(rg.ncols):
            row = {}
            for b in range(m):
                v = rg[b, c]
                if v:
                    row[a * m + b] = v
            for e in range(rh.ncols):
                v = rh[a, e]
                if v:
                    row[n * m + e * rg.ncols + c] = -v
            rows.append(row)
    for A, B in intertwiners:
        base = nvars
        nvars += rh.ncols * m
        for a in range(n):
            for b in range(m):
                row = {}
                for c in range(m):
                    v = A[c, b]
                    if v:
                        row[a * m + c] = row.get(a * m + c, 0) + v
                for c in range(n):
                    v = B[a, c]
                    if v:
                        row[c * m + b] = row.get(c * m + b, 0) - v
                for e in range(rh.ncols):
                    v = rh[a, e]
                    if v:
                        row[base + e * m + b] = -v
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    constraint = Matrix(len(rows), nvars, rows)
    sol = int_kernel(constraint) if rows else Matrix.identity(nvars)
    gens = sol.block(0, n * m, 0, sol.ncols)
    null = []
    for e in range(rh.ncols):
        for b in range(m):
            null.append([rh[a, e] if bb == b else 0 for a in range(n) for bb in range(m)])
    return gens, Matrix.from_columns(null, n * m)


def fp_hom(source, target, intertwiners=()):
    """Presentation of Hom(source, target), optionally restricted to intertwiners."""
    gens, null = hom_lattice(source, target, intertwiners)
    group, basis = subquotient(gens, null)
    return HomGroup(group.relations, source, target, basis)


def fp_eval(source, target, hom=None):
    """Evaluation Hom(source, target) ⊗ source -> target."""
    hom = hom or fp_hom(source, target)
    dom = fp_tensor(hom, source)
    cols = []
    for k in range(hom.ngens):
        f = hom.morphism([int(i == k) for i in range(hom.ngens)])
        for j in range(source.ngens):
            cols.append(f.matrix.column(j))
    return FPMorphism(dom, target, Matrix.from_columns(cols, target.ngens), check=False)


def fp_coeval(x, a, hom=None):
    """Coevaluation x -> Hom(a, x ⊗ a)."""
    xa = fp_tensor(x, a)
    hom = hom or fp_hom(a, xa)
    cols = []
    for i in range(x.ngens):
        mat = Matrix.from_columns(
            [[int(k == i * a.ngens + j) for k in range(xa.ngens)] for j in range(a.ngens)], xa.ngens
        )
        cols.append(hom.coordinates(FPMorphism(a, xa, mat, check=False)))
    return FPMorphism(x, hom, Matrix.from_columns(cols, hom.ngens), check=False)
