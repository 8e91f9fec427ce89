"""Char-p sl2 representation calculus and Jordan block arithmetic.

Jordan types are descending tuples of block sizes.  Irreducible sl2
modules in characteristic p are built from their p-adic digits as tensor
products of Frobenius twists of restricted modules; the Jordan type of the
standard unipotent element is read off an explicit Kronecker matrix by its
rank sequence over the p-element field.
"""

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

DIM_CAP = 2 ** 20


class NotACharacterError(ValueError):
    """Greedy decomposition produced a negative remainder."""


def tensor_fixed_dim(r1, r2):
    """Fixed space dimension of u1 (x) u2 for single Jordan blocks of sizes
    r1 and r2, in any characteristic."""
    if r1 < 1 or r2 < 1:
        raise ValueError("block sizes must be positive")
    return min(r1, r2)


def square_fixed_dims(r, p=None):
    """Fixed space dimensions (ext^2, sym^2) of a single Jordan block of
    size r; the symmetric square requires p >= 3 (or characteristic 0)."""
    if r < 1:
        raise ValueError("block size must be positive")
    ext = r // 2
    if p == 2:
        raise ValueError("symmetric square is not supported for p = 2")
    return ext, (r + 1) // 2


def _unipotent_block(r, p):
    """The r x r unipotent Jordan block (ones on the superdiagonal)."""
    U = np.eye(r, dtype=np.int64)
    for i in range(r - 1):
        U[i, i + 1] = 1
    return U


def _rank_mod_p(mat, p):
    m = [[int(x) % p for x in row] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def jordan_type_from_unipotent(U, p):
    """Jordan type of a unipotent matrix over the p-element field, via the
    rank sequence of powers of U - I."""
    n = len(U)
    N = (np.array(U, dtype=np.int64) - np.eye(n, dtype=np.int64)) % p
    ranks = [n]
    P = np.eye(n, dtype=np.int64)
    while True:
        P = (P @ N) % p
        r = _rank_mod_p(P, p)
        ranks.append(r)
        if r == 0:
            break
    # number of blocks of size >= k is ranks[k-1] - ranks[k]
    blocks = []
    for k in range(1, len(ranks)):
        geq_k = ranks[k - 1] - ranks[k]
        geq_k1 = ranks[k] - ranks[k + 1] if k + 1 < len(ranks) else 0
        blocks.extend([k] * (geq_k - geq_k1))
    blocks.sort(reverse=True)
    assert sum(blocks) == n
    return tuple(blocks)


@lru_cache(maxsize=None)
def _tensor_block_type(a, b, p):
    """Jordan type of J_a (x) J_b over the p-element field."""
    U = np.kron(_unipotent_block(a, p), _unipotent_block(b, p)) % p
    return jordan_type_from_unipotent(U, p)


class Sl2Irreducible:
    """Irreducible sl2 module of highest weight m in characteristic p."""

    def __init__(self, m, p, dim, unipotent_jordan, digits):
        self.m = m
        self.p = p
        self.dim = dim
        self.unipotent_jordan = unipotent_jordan
        self.digits = digits

    @property
    def fixed_dim(self):
        return len(self.unipotent_jordan)

    def weights(self):
        """The full weight multiset (list of integers, length dim)."""
        out = [0]
        for i, d in enumerate(self.digits):
            layer = [(d - 2 * t) * self.p ** i for t in range(d + 1)]
            out = [w + x for w in out for x in layer]
        return sorted(out, reverse=True)

    def __repr__(self):
        return "Sl2Irreducible(m=%d, p=%s, dim=%d, jordan=%s)" % (
            self.m, self.p, self.dim, self.unipotent_jordan
        )


@lru_cache(maxsize=None)
def sl2_irreducible(m, p):
    """The irreducible sl2 module L(m) in characteristic p, with the Jordan
    type of x(1) computed over the p-element field."""
    if m < 0:
        raise ValueError("highest weight must be nonnegative")
    if p == float("inf"):
        return Sl2Irreducible(m, p, m + 1, (m + 1,), (m,))
    digits = []
    mm = m
    while True:
        digits.append(mm % p)
        mm //= p
        if mm == 0:
            break
    dim = 1
    for d in digits:
        dim *= d + 1
    if dim > DIM_CAP:
        raise ValueError("dimension %d exceeds cap %d" % (dim, DIM_CAP))
    blocks = (1,)
    for d in digits:
        if d == 0:
            continue
        new = []
        for a in blocks:
            new.extend(_tensor_block_type(a, d + 1, p))
        blocks = tuple(sorted(new, reverse=True))
    return Sl2Irreducible(m, p, dim, blocks, tuple(digits))


def decompose_character(weight_multiset, p, factor_count=None):
    """Greedy decomposition of a symmetric sl2 weight multiset into
    characteristic-p irreducibles.

    Returns a list of Sl2Irreducible factors (with repetition).  Raises
    NotACharacterError when the multiset is not a nonnegative combination.
    """
    remaining = {}
    for w in weight_multiset:
        remaining[w] = remaining.get(w, 0) + 1
    for w, c in remaining.items():
        if remaining.get(-w, 0) != c:
            raise NotACharacterError("multiset not symmetric under negation")
    factors = []
    while any(remaining.values()):
        m = max(w for w, c in remaining.items() if c)
        if m < 0:
            raise NotACharacterError("no nonnegative highest weight left")
        irr = sl2_irreducible(m, p)
        for w in irr.weights():
            remaining[w] = remaining.get(w, 0) - 1
            if remaining[w] < 0:
                raise NotACharacterError(
                    "remainder negative at weight %d" % w
                )
        factors.append(irr)
    if factor_count is not None and len(factors) != factor_count:
        raise NotACharacterError(
            "expected %d factors, found %d" % (factor_count, len(factors))
        )
    return factors


def codim_of_character(weight_multiset, p):
    """Sum of (dim - fixed dim) over the greedy char-p factors: a lower
    bound on the codimension of the fixed space of x(1)."""
    return sum(
        f.dim - f.fixed_dim for f in decompose_character(weight_multiset, p)
    )


# -- tensor codimension and classical centralizers -------------------------


def tensor_codim_bound(c1, dim2):
    """codim of the fixed space on V1 (x) V2 is at least c1 * dim2 when c1
    bounds the codimension on V1."""
    return c1 * dim2


def exact_tensor_codim(type1, type2):
    """Exact codimension of the fixed space of u1 (x) u2 from the Jordan
    types on the two factors."""
    return sum(a * b - min(a, b) for a in type1 for b in type2)


def symmetric_tensor_codim(blocks):
    """d^2 + d - 2 sum(i * m_i) for a single descending Jordan type; equals
    exact_tensor_codim(T, T)."""
    blocks = sorted(blocks, reverse=True)
    d = sum(blocks)
    return d * d + d - 2 * sum(
        (i + 1) * m for i, m in enumerate(blocks)
    )


def _chi_upper(family, m, p):
    if family == "C":
        return Fraction(m, 2)
    if family == "D":
        return Fraction(m + 2, 2)
    if family == "B":
        if p is not None and p != float("inf") and p < 3:
            raise ValueError("B-type bound requires p >= 3")
        return Fraction((m + 1) // 2)
    raise ValueError("family must be B, C or D")


def natural_dim(family, rank):
    return 2 * rank + 1 if family == "B" else 2 * rank


def _group_dim(family, rank):
    if family == "B":
        return rank * (2 * rank + 1)
    if family == "C":
        return rank * (2 * rank + 1)
    if family == "D":
        return rank * (2 * rank - 1)
    raise ValueError("family must be B, C or D")


def is_admissible_type(family, rank, blocks, p=None):
    """Whether a Jordan type occurs for a unipotent element of the classical
    group on its natural module."""
    blocks = sorted(blocks, reverse=True)
    if sum(blocks) != natural_dim(family, rank):
        return False
    mult = {}
    for b in blocks:
        mult[b] = mult.get(b, 0) + 1
    if family == "C" or (family == "B" and p == 2):
        return all(c % 2 == 0 for b, c in mult.items() if b % 2 == 1)
    return all(c % 2 == 0 for b, c in mult.items() if b % 2 == 0)


def classical_centralizer_excess(family, rank, blocks, p=None):
    """Lower bound on codim C_V(u) - dim u^G for V the tensor product of
    the natural module with a Frobenius twist of itself."""
    blocks = tuple(sorted(blocks, reverse=True))
    if not is_admissible_type(family, rank, blocks, p):
        raise ValueError("inadmissible Jordan type %s" % (blocks,))
    codim = symmetric_tensor_codim(blocks)
    cent_lb = sum(
        Fraction((i + 1) * m) - _chi_upper(family, m, p)
        for i, m in enumerate(blocks)
    )
    val = codim - _group_dim(family, rank) + cent_lb
    return math.ceil(val)


def _partitions(n, cap=None):
    if cap is None:
        cap = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def min_classical_centralizer_excess(family, rank, p=None):
    """Minimum excess bound over all admissible nontrivial Jordan types."""
    d = natural_dim(family, rank)
    best = None
    for blocks in _partitions(d):
        if blocks[0] == 1:
            continue  # trivial type
        if not is_admissible_type(family, rank, blocks, p):
            continue
        v = classical_centralizer_excess(family, rank, blocks, p)
        if best is None or v < best:
            best = v
    return best
