"""Brute-force validators: exact dense linear algebra over the rationals
and prime fields, explicit root-element matrices on the natural modules of
the classical groups, and functorial power constructions.

No floating point anywhere; entries are Fractions (or integers reduced mod
p when a characteristic is set).
"""

import itertools
from fractions import Fraction

DIM_CAP = 5000


class ExactMatrix:
    """Dense exact matrix over the rationals (p=None) or the p-element
    field."""

    def __init__(self, entries, p=None):
        self.p = p
        if p is None:
            self.entries = [[Fraction(x) for x in row] for row in entries]
        else:
            self.entries = [[int(x) % p for x in row] for row in entries]
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.nrows else 0

    @classmethod
    def identity(cls, n, p=None):
        return cls(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], p
        )

    @classmethod
    def zero(cls, nrows, ncols, p=None):
        return cls([[0] * ncols for _ in range(nrows)], p)

    def copy(self):
        return ExactMatrix(self.entries, self.p)

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __sub__(self, other):
        assert self.p == other.p
        return ExactMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
            self.p,
        )

    def __add__(self, other):
        assert self.p == other.p
        return ExactMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
            self.p,
        )

    def __matmul__(self, other):
        assert self.ncols == other.nrows and self.p == other.p
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                s = sum(
                    self.entries[i][k] * other.entries[k][j]
                    for k in range(self.ncols)
                )
                row.append(s)
            out.append(row)
        return ExactMatrix(out, self.p)

    def rank(self):
        m = [row[:] for row in self.entries]
        rows, cols = self.nrows, self.ncols
        p = self.p
        r = 0
        for c in range(cols):
            piv = None
            for i in range(r, rows):
                if m[i][c] != 0:
                    piv = i
                    break
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            if p is None:
                inv = Fraction(1) / m[r][c]
                m[r] = [x * inv for x in m[r]]
            else:
                inv = pow(m[r][c], p - 2, p)
                m[r] = [(x * inv) % p for x in m[r]]
            for i in range(r + 1, rows):
                if m[i][c] != 0:
                    f = m[i][c]
                    if p is None:
                        m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                    else:
                        m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
            r += 1
            if r == rows:
                break
        return r

    def nullity(self):
        return self.ncols - self.rank()

    def fixed_space_dim(self):
        if self.nrows != self.ncols:
            raise ValueError("fixed_space_dim requires a square matrix")
        return (self - ExactMatrix.identity(self.nrows, self.p)).nullity()

    def determinant(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant requires a square matrix")
        m = [row[:] for row in self.entries]
        n = self.nrows
        p = self.p
        det = Fraction(1) if p is None else 1
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                return 0 if p is not None else Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det = det * m[c][c] if p is None else (det * m[c][c]) % p
            if p is None:
                inv = Fraction(1) / m[c][c]
            else:
                inv = pow(m[c][c], p - 2, p)
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    if p is None:
                        m[i] = [a - f * b for a, b in zip(m[i], m[c])]
                    else:
                        m[i] = [(a - f * b) % p for a, b in zip(m[i], m[c])]
        return det if p is None else det % p


def rank(mat):
    return mat.rank()


def nullity(mat):
    return mat.nullity()


def fixed_space_dim(mat):
    return mat.fixed_space_dim()


def kron(m1, m2):
    """Kronecker product of two exact matrices."""
    assert m1.p == m2.p
    out = []
    for i1 in range(m1.nrows):
        for i2 in range(m2.nrows):
            row = []
            for j1 in range(m1.ncols):
                for j2 in range(m2.ncols):
                    row.append(m1.entries[i1][j1] * m2.entries[i2][j2])
            out.append(row)
    return ExactMatrix(out, m1.p)


# -- natural modules -------------------------------------------------------


def _epsilon_form(family, rank, root_coords):
    """Express a root given in simple-root coordinates as a vector of
    epsilon coefficients."""
    n = rank + 1 if family == "A" else rank
    eps = [0] * n
    for k, c in enumerate(root_coords):
        if family == "A" or k < rank - 1:
            eps[k] += c
            eps[k + 1] -= c
        elif family == "B":
            eps[k] += c
        elif family == "C":
            eps[k] += 2 * c
        elif family == "D":
            eps[k - 1] += c
            eps[k] += c
        else:
            raise ValueError("natural_action supports classical families")
    return eps


def natural_action(family, rank, root_coords, t, p=None):
    """The exact matrix of the root element x_alpha(t) on the natural
    module, on the standard ordered basis.

    Bases: A: v_1..v_{l+1}; C: e_1, f_1, ..., e_l, f_l; D: v_1, v_{-1},
    ..., v_l, v_{-l}; B: the D basis followed by v_0.
    """
    if family not in ("A", "B", "C", "D"):
        raise ValueError("natural_action supports classical families only")
    eps = _epsilon_form(family, rank, root_coords)
    if family == "A":
        dim = rank + 1
        M = ExactMatrix.identity(dim, p)
        i = eps.index(1)
        j = eps.index(-1)
        # x_{eps_i - eps_j}(t): v_j -> v_j + t v_i
        M.entries[i][j] += t
        return ExactMatrix(M.entries, p)

    def e(i):
        return 2 * i

    def f(i):
        return 2 * i + 1

    if family == "C":
        dim = 2 * rank
        M = ExactMatrix.identity(dim, p)
        if 2 in eps:
            i = eps.index(2)
            M.entries[e(i)][f(i)] += t
        elif -2 in eps:
            i = eps.index(-2)
            M.entries[f(i)][e(i)] += t
        else:
            nz = [(k, v) for k, v in enumerate(eps) if v]
            (i, vi), (j, vj) = nz
            if vi == 1 and vj == -1:
                M.entries[e(i)][e(j)] += t
                M.entries[f(j)][f(i)] -= t
            elif vi == -1 and vj == 1:
                M.entries[e(j)][e(i)] += t
                M.entries[f(i)][f(j)] -= t
            elif vi == 1 and vj == 1:
                M.entries[e(i)][f(j)] += t
                M.entries[e(j)][f(i)] += t
            else:
                M.entries[f(i)][e(j)] += t
                M.entries[f(j)][e(i)] += t
        return ExactMatrix(M.entries, p)

    def v(i):
        return 2 * i

    def w(i):  # v_{-i}
        return 2 * i + 1

    dim = 2 * rank + (1 if family == "B" else 0)
    M = ExactMatrix.identity(dim, p)
    nz = [(k, val) for k, val in enumerate(eps) if val]
    if family == "B" and len(nz) == 1:
        i, vi = nz[0]
        z = 2 * rank  # v_0
        if vi == 1:
            # x_{eps_i}(t): v_0 -> v_0 + 2t v_i; v_{-i} -> v_{-i} - t v_0 - t^2 v_i
            M.entries[v(i)][z] += 2 * t
            M.entries[z][w(i)] -= t
            M.entries[v(i)][w(i)] -= t * t
        else:
            M.entries[w(i)][z] -= 2 * t
            M.entries[z][v(i)] += t
            M.entries[w(i)][v(i)] -= t * t
        return ExactMatrix(M.entries, p)
    (i, vi), (j, vj) = nz
    if vi == 1 and vj == -1:
        M.entries[v(i)][v(j)] += t
        M.entries[w(j)][w(i)] -= t
    elif vi == -1 and vj == 1:
        M.entries[v(j)][v(i)] += t
        M.entries[w(i)][w(j)] -= t
    elif vi == 1 and vj == 1:
        M.entries[v(i)][w(j)] += t
        M.entries[v(j)][w(i)] -= t
    else:
        M.entries[w(i)][v(j)] -= t
        M.entries[w(j)][v(i)] += t
    return ExactMatrix(M.entries, p)


# -- power constructions ---------------------------------------------------


def _basis_indices(n, k, kind):
    if kind == "ext":
        return list(itertools.combinations(range(n), k))
    return list(itertools.combinations_with_replacement(range(n), k))


def power_construction(mat, kind):
    """Functorial power of a square matrix on the standard monomial basis.

    kind is one of tensor2, ext2, ext3, sym2, sym3.
    """
    n = mat.nrows
    if mat.nrows != mat.ncols:
        raise ValueError("power_construction requires a square matrix")
    if kind == "tensor2":
        if n * n > DIM_CAP:
            raise ValueError("dimension cap exceeded")
        return kron(mat, mat)
    if kind.startswith("ext"):
        k, sym = int(kind[3:]), False
    elif kind.startswith("sym"):
        k, sym = int(kind[3:]), True
    else:
        raise ValueError("unknown power construction %r" % kind)
    basis = _basis_indices(n, k, "sym" if sym else "ext")
    if len(basis) > DIM_CAP:
        raise ValueError("dimension cap exceeded")
    index = {b: i for i, b in enumerate(basis)}
    zero = Fraction(0) if mat.p is None else 0
    out = [[zero] * len(basis) for _ in range(len(basis))]
    for col, cols_tuple in enumerate(basis):
        # expand the product of columns
        terms = {(): (Fraction(1) if mat.p is None else 1)}
        for j in cols_tuple:
            new = {}
            for key, coeff in terms.items():
                for i in range(n):
                    a = mat.entries[i][j]
                    if a == 0:
                        continue
                    nk = key + (i,)
                    new[nk] = new.get(nk, zero) + coeff * a
            terms = new
        for key, coeff in terms.items():
            if sym:
                out[index[tuple(sorted(key))]][col] += coeff
            else:
                if len(set(key)) != k:
                    continue
                sorted_key = tuple(sorted(key))
                sign = _perm_sign(key)
                out[index[sorted_key]][col] += sign * coeff
    return ExactMatrix(out, mat.p)


def _perm_sign(seq):
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# -- the 8x8 annihilator block from the quadruple-system construction ------


def quadruple_block_matrix(a, p=None):
    """The 8x8 block of the annihilator system attached to a quadruple of
    basis lines; a is a sequence of four pairs (a_{i1}, a_{i2}).

    Its determinant equals the fourth power of the sum of the products in
    characteristic 2.
    """
    (a11, a12), (a21, a22), (a31, a32), (a41, a42) = a
    z = 0
    rows = [
        [z, a11, a21, z, a31, z, a42, z],
        [a12, z, z, a22, z, a32, z, a41],
        [a21, z, z, a11, a41, z, a32, z],
        [z, a22, a12, z, z, a42, z, a31],
        [a31, z, a41, z, z, a11, a22, z],
        [z, a32, z, a42, a12, z, z, a21],
        [a42, z, a32, z, a22, z, z, a11],
        [z, a41, z, a31, z, a21, a12, z],
    ]
    return ExactMatrix(rows, p)
