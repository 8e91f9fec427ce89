"""Weyl group actions: reflections, orbits, bounded enumeration, and the
subgroups acting as scalars on the Cartan subalgebra modulo its center over
a prime field.

Elements are represented by their matrices on Dynkin-label coordinates:
``(s_i mu)_k = mu_k - mu_i * cartan[k][i]``.
"""

import numpy as np

from .rootsys import build_root_system, classify_subsystem, weyl_order

DEFAULT_CAP = 10 ** 7


class CapacityError(RuntimeError):
    pass


class WeylAction:
    """Simple reflection matrices of W acting on Dynkin labels."""

    def __init__(self, rs):
        self.rs = rs
        n = rs.rank
        A = np.array(rs.cartan, dtype=np.int64)
        gens = []
        for i in range(n):
            S = np.eye(n, dtype=np.int64)
            S[:, i] -= A[:, i]
            gens.append(S)
        self.generators = gens
        self.order = weyl_order(rs.family, rs.rank)


def reflect(rs, weight, i):
    """Apply the simple reflection s_i to a weight in Dynkin labels."""
    if not 0 <= i < rs.rank:
        raise IndexError("simple root index %d out of range" % i)
    mi = weight[i]
    A = rs.cartan
    return tuple(weight[k] - mi * A[k][i] for k in range(rs.rank))


def dominant_representative(rs, weight):
    """The dominant W-conjugate of a weight."""
    w = tuple(weight)
    while True:
        for i in range(rs.rank):
            if w[i] < 0:
                w = reflect(rs, w, i)
                break
        else:
            return w


def orbit_size(rs, mu):
    """|W.mu| for a dominant weight, via the stabilizer subsystem."""
    if any(x < 0 for x in mu):
        raise ValueError("orbit_size requires a dominant weight")
    zeros = [i for i in range(rs.rank) if mu[i] == 0]
    if not zeros:
        return weyl_order(rs.family, rs.rank)
    stab = classify_subsystem(rs, zeros)
    return weyl_order(rs.family, rs.rank) // stab.weyl_group_order()


def orbit(rs, mu):
    """The full W-orbit of a weight (set of label tuples)."""
    seen = {tuple(mu)}
    frontier = [tuple(mu)]
    while frontier:
        new = []
        for w in frontier:
            for i in range(rs.rank):
                img = reflect(rs, w, i)
                if img not in seen:
                    seen.add(img)
                    new.append(img)
        frontier = new
    return seen


def enumerate_weyl(action, cap=DEFAULT_CAP):
    """Yield every element of W exactly once as a matrix on Dynkin labels.

    Breadth-first over reduced words, deduplicating by the image of the
    regular vector rho = (1, ..., 1).
    """
    if action.order > cap:
        raise CapacityError(
            "Weyl group order %d exceeds cap %d" % (action.order, cap)
        )
    n = action.rs.rank
    rho = np.ones(n, dtype=np.int64)
    gens = np.stack(action.generators)
    seen = {rho.tobytes()}
    frontier = np.eye(n, dtype=np.int64)[None, :, :]
    yield frontier[0]
    while len(frontier):
        batch = np.einsum("gij,fjk->gfik", gens, frontier).reshape(-1, n, n)
        keys = batch @ rho
        fresh = []
        for mat, key in zip(batch, keys):
            kb = key.tobytes()
            if kb not in seen:
                seen.add(kb)
                fresh.append(mat)
                yield mat
        frontier = np.stack(fresh) if fresh else np.empty((0, n, n), dtype=np.int64)


class ScalarSubgroupsReport:
    def __init__(self, family, rank, p, center_dim, ddagger_order, dagger_order):
        self.family = family
        self.rank = rank
        self.p = p
        self.center_dim = center_dim
        self.ddagger_order = ddagger_order
        self.dagger_order = dagger_order

    def as_dict(self):
        return {
            "family": self.family,
            "rank": self.rank,
            "p": self.p,
            "centerDim": self.center_dim,
            "ddaggerOrder": self.ddagger_order,
            "daggerOrder": self.dagger_order,
        }

    def __repr__(self):
        return "ScalarSubgroupsReport(%s%d, p=%d, ddag=%d, dag=%d)" % (
            self.family,
            self.rank,
            self.p,
            self.ddagger_order,
            self.dagger_order,
        )


def _rref_mod_p(mat, p):
    """Row echelon form over F_p; returns (nonzero rows, rank)."""
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] % p != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c] % p, p - 2, p) if p > 2 else m[r][c] % p
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p != 0:
                f = m[i][c] % p
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return m[:r], r


def scalar_action_subgroups(family, rank, p, cap=DEFAULT_CAP, batch_hook=None):
    """Count Weyl group elements acting as a scalar (and as the identity) on
    the Cartan subalgebra modulo its central part, over the p-element field.

    The central part is the kernel of the transposed Cartan matrix mod p.
    Returns a ScalarSubgroupsReport.
    """
    reports = scalar_action_subgroups_multi(family, rank, [p], cap=cap)
    return reports[p]


def scalar_action_subgroups_multi(family, rank, primes, cap=DEFAULT_CAP):
    """As scalar_action_subgroups, for several primes in one enumeration."""
    rs = build_root_system(family, rank)
    action = WeylAction(rs)
    if action.order > cap:
        raise CapacityError(
            "Weyl group order %d exceeds cap %d" % (action.order, cap)
        )
    n = rs.rank
    At = [[rs.cartan[j][i] for j in range(n)] for i in range(n)]

    # For each p: quotient test matrix K (columns span a complement test):
    # C = rref(A^T mod p) has kernel = central part; the element w (with
    # label matrix V) acts as the scalar c on the quotient iff V K = c K
    # where K = C^T.
    Ks, center_dims = {}, {}
    for p in primes:
        C, r = _rref_mod_p(At, p)
        center_dims[p] = n - r
        K = np.array([[C[row][col] for row in range(r)] for col in range(n)],
                     dtype=np.int64)
        Ks[p] = K

    counts = {p: [0, 0] for p in primes}  # ddagger, dagger

    rho = np.ones(n, dtype=np.int16)
    gens = np.stack(action.generators).astype(np.int16)
    seen = {rho.tobytes()}
    frontier = np.eye(n, dtype=np.int16)[None, :, :]

    def tally(mats):
        for p in primes:
            K = Ks[p]
            WK = (mats.astype(np.int64) @ K) % p
            matched = np.zeros(len(mats), dtype=bool)
            for c in range(1, p):
                hit = (WK == (c * K) % p).all(axis=(1, 2))
                counts[p][0] += int(np.count_nonzero(hit & ~matched))
                if c == 1:
                    counts[p][1] += int(np.count_nonzero(hit))
                matched |= hit

    tally(frontier)
    while len(frontier):
        batch = np.einsum("gij,fjk->gfik", gens, frontier)
        batch = batch.reshape(-1, n, n)
        keys = batch @ rho
        kb = keys.tobytes()
        fresh_idx = []
        itemsize = n * 2
        for idx in range(len(batch)):
            key = kb[idx * itemsize:(idx + 1) * itemsize]
            if key not in seen:
                seen.add(key)
                fresh_idx.append(idx)
        if fresh_idx:
            frontier = batch[fresh_idx]
            tally(frontier)
        else:
            frontier = np.empty((0, n, n), dtype=np.int16)
    assert len(seen) == action.order, (len(seen), action.order)
    return {
        p: ScalarSubgroupsReport(
            family, rank, p, center_dims[p], counts[p][0], counts[p][1]
        )
        for p in primes
    }
