"""Root systems of the simple types A-G and their numerical constants.

Roots are stored as integer coefficient vectors over the simple-root basis.
The Cartan matrix convention used throughout is

    cartan[i][j] = <alpha_j, alpha_i^vee>,

so that the Dynkin labels of a root with simple-root coordinates c are
``cartan @ c``.  Simple roots are numbered as in Bourbaki.
"""

from fractions import Fraction
from functools import lru_cache

FAMILIES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")

# minimal admissible rank per family (D3/C2 allowed behind relax=True)
_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_MIN_RANK_RELAXED = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}


def _cartan_and_lengths(family, rank):
    """Cartan matrix (convention above) and squared-length data d_i (short=1)."""
    n = rank
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2

    def bond(i, j, aij=-1, aji=-1):
        A[i][j] = aij
        A[j][i] = aji

    if family == "A":
        for i in range(n - 1):
            bond(i, i + 1)
        d = [1] * n
    elif family == "B":
        # alpha_n short, the rest long
        for i in range(n - 2):
            bond(i, i + 1)
        if n >= 2:
            # <alpha_{n-1}, alpha_n^vee> = -2, <alpha_n, alpha_{n-1}^vee> = -1
            bond(n - 2, n - 1, aij=-1, aji=-2)
        d = [2] * (n - 1) + [1]
    elif family == "C":
        # alpha_n long, the rest short
        for i in range(n - 2):
            bond(i, i + 1)
        if n >= 2:
            bond(n - 2, n - 1, aij=-2, aji=-1)
        d = [1] * (n - 1) + [2]
    elif family == "D":
        for i in range(n - 3):
            bond(i, i + 1)
        if n >= 3:
            bond(n - 3, n - 2)
            bond(n - 3, n - 1)
        d = [1] * n
    elif family in ("E6", "E7", "E8"):
        # Bourbaki: chain 1-3-4-5-...-n, node 2 attached to node 4
        chain = [0] + list(range(2, n))
        for a, b in zip(chain, chain[1:]):
            bond(a, b)
        bond(1, 3)
        d = [1] * n
    elif family == "F4":
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        bond(0, 1)
        bond(1, 2, aij=-1, aji=-2)
        bond(2, 3)
        d = [2, 2, 1, 1]
    elif family == "G2":
        # alpha_1 short, alpha_2 long
        bond(0, 1, aij=-3, aji=-1)
        d = [1, 3]
    else:
        raise ValueError("unknown family %r" % (family,))
    return A, d


class RootSystem:
    """Immutable root datum for one simple type.

    Attributes
    ----------
    family, rank : the type.
    cartan : tuple of tuples, cartan[i][j] = <alpha_j, alpha_i^vee>.
    d : per-simple-root squared length relative to short roots.
    roots : tuple of coefficient vectors (tuples) over the simple roots.
    positive_roots : the roots with all coefficients >= 0.
    """

    def __init__(self, family, rank, relax=False):
        if family in _FIXED_RANK:
            if rank != _FIXED_RANK[family]:
                raise ValueError(
                    "family %s has fixed rank %d" % (family, _FIXED_RANK[family])
                )
        elif family in _MIN_RANK:
            lo = (_MIN_RANK_RELAXED if relax else _MIN_RANK)[family]
            if rank < lo:
                raise ValueError(
                    "rank %d out of range for %s (minimum %d)" % (rank, family, lo)
                )
        else:
            raise ValueError("unknown family %r" % (family,))
        self.family = family
        self.rank = rank
        A, d = _cartan_and_lengths(family, rank)
        self.cartan = tuple(tuple(row) for row in A)
        self.d = tuple(d)
        self._build_roots()
        self._inv_cartan = None

    # -- construction -----------------------------------------------------

    def _build_roots(self):
        n = self.rank
        A = self.cartan
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for c in frontier:
                labels = self.labels_of_root(c)
                for i in range(n):
                    if labels[i] == 0:
                        continue
                    img = list(c)
                    img[i] -= labels[i]
                    img = tuple(img)
                    if img not in seen:
                        seen.add(img)
                        new.append(img)
            frontier = new
        pos = sorted(
            (c for c in seen if all(x >= 0 for x in c)),
            key=lambda c: (sum(c), c),
        )
        self.positive_roots = tuple(pos)
        self.roots = tuple(pos) + tuple(
            tuple(-x for x in c) for c in pos
        )

    # -- basic linear algebra --------------------------------------------

    def labels_of_root(self, coords):
        """Dynkin labels of a vector given in simple-root coordinates."""
        A = self.cartan
        n = self.rank
        return tuple(sum(A[i][j] * coords[j] for j in range(n)) for i in range(n))

    def root_norm(self, coords):
        """Squared length relative to short roots (1 for short, e for long)."""
        # (alpha, alpha) in units where short roots have norm 1:
        # 2(alpha_j, beta) = d_j * labels(beta)_j
        labels = self.labels_of_root(coords)
        two_norm = sum(coords[j] * self.d[j] * labels[j] for j in range(self.rank))
        assert two_norm % 2 == 0
        return two_norm // 2

    def is_short(self, coords):
        return self.root_norm(coords) == 1

    def short_roots(self):
        return tuple(c for c in self.roots if self.is_short(c))

    def long_roots(self):
        if self.e_ratio == 1:
            return ()
        return tuple(c for c in self.roots if not self.is_short(c))

    def pairing(self, weight, root_coords):
        """<weight, alpha^vee> for a weight in Dynkin labels and a root."""
        num = sum(
            root_coords[i] * self.d[i] * weight[i] for i in range(self.rank)
        )
        norm = self.root_norm(root_coords)
        assert num % norm == 0
        return num // norm

    def inv_cartan(self):
        """Exact inverse of the Cartan matrix (Fractions)."""
        if self._inv_cartan is None:
            n = self.rank
            aug = [
                [Fraction(self.cartan[i][j]) for j in range(n)]
                + [Fraction(1 if j == i else 0) for j in range(n)]
                for i in range(n)
            ]
            for col in range(n):
                piv = next(r for r in range(col, n) if aug[r][col] != 0)
                aug[col], aug[piv] = aug[piv], aug[col]
                pv = aug[col][col]
                aug[col] = [x / pv for x in aug[col]]
                for r in range(n):
                    if r != col and aug[r][col] != 0:
                        f = aug[r][col]
                        aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
            self._inv_cartan = tuple(tuple(row[n:]) for row in aug)
        return self._inv_cartan

    def root_coords_of_weight(self, weight):
        """Simple-root coordinates (Fractions) of a weight in Dynkin labels."""
        inv = self.inv_cartan()
        n = self.rank
        return tuple(
            sum(inv[i][j] * weight[j] for j in range(n)) for i in range(n)
        )

    # -- constants --------------------------------------------------------

    @property
    def num_roots(self):
        return len(self.roots)

    @property
    def M(self):
        """Number of roots: dim G - rank G."""
        return len(self.roots)

    @property
    def dim_g(self):
        return len(self.roots) + self.rank

    @property
    def e_ratio(self):
        """Maximum ratio of squared root lengths: 1 (ADE), 2 (BCF), 3 (G2)."""
        if self.family in ("B", "C", "F4"):
            return 2
        if self.family == "G2":
            return 3
        return 1

    @property
    def coxeter_number(self):
        return self.num_roots // self.rank

    def m_r(self, r):
        """Upper bound M_r on the dimension of the variety of elements of
        prime order r modulo the center.  Closed forms exist for r in {2, 3};
        any other r falls back to the always-valid bound M (flagged).

        Returns (value, conservative_flag).
        """
        l = self.rank
        fam = self.family
        if r == 2:
            table = {
                "A": ((l + 1) ** 2) // 2,
                "B": l * (l + 1),
                "C": l * (l + 1),
                "D": 2 * (l * l // 2),
                "E6": 40,
                "E7": 70,
                "E8": 128,
                "F4": 28,
                "G2": 8,
            }
            return table[fam], False
        if r == 3:
            table = {
                "A": 2 * (((l + 1) ** 2) // 3),
                "B": 2 * ((l * (2 * l + 1)) // 3),
                "C": 2 * ((l * (2 * l + 1)) // 3),
                "D": 2 * ((l * (2 * l - 1)) // 3),
                "E6": 54,
                "E7": 90,
                "E8": 168,
                "F4": 36,
                "G2": 10,
            }
            return table[fam], False
        return self.M, True

    # -- identity ---------------------------------------------------------

    def __repr__(self):
        return "RootSystem(%s%d)" % (self.family.rstrip("0123456789"), self.rank)

    def __eq__(self, other):
        return (
            isinstance(other, RootSystem)
            and self.family == other.family
            and self.rank == other.rank
        )

    def __hash__(self):
        return hash((self.family, self.rank))

    def to_json_dict(self):
        return {
            "family": self.family,
            "rank": self.rank,
            "roots": sorted(list(c) for c in self.roots),
        }


@lru_cache(maxsize=None)
def build_root_system(family, rank=None, relax=False):
    """Construct the root system of the given simple type.

    ``family`` is one of A, B, C, D, E6, E7, E8, F4, G2; for the exceptional
    types the rank may be omitted.
    """
    if rank is None:
        if family not in _FIXED_RANK:
            raise ValueError("rank required for family %s" % family)
        rank = _FIXED_RANK[family]
    return RootSystem(family, rank, relax=relax)


def e_ratio(rs):
    return rs.e_ratio


def m_r(rs, r):
    return rs.m_r(r)


# -- subsystems -----------------------------------------------------------

_WEYL_ORDER_FACT = [1]
for _k in range(1, 16):
    _WEYL_ORDER_FACT.append(_WEYL_ORDER_FACT[-1] * _k)


def weyl_order(family, rank):
    """Order of the Weyl group of the given simple type."""
    l = rank
    f = _WEYL_ORDER_FACT
    fact = lambda k: f[k] if k < len(f) else __import__("math").factorial(k)
    if family == "A":
        return fact(l + 1)
    if family in ("B", "C"):
        return (2 ** l) * fact(l)
    if family == "D":
        return (2 ** (l - 1)) * fact(l)
    return {
        "E6": 51840,
        "E7": 2903040,
        "E8": 696729600,
        "F4": 1152,
        "G2": 12,
    }[family]


class Subsystem:
    """A subsystem of a root system generated by a simple system.

    ``components`` is a list of (label, indices) pairs where label is a type
    string such as "A3", "B2", "~A1", "D2" and indices are positions into the
    generating simple system.  ``simple_roots`` are the generators in
    simple-root coordinates of the parent.
    """

    def __init__(self, parent, simple_roots, components):
        self.parent = parent
        self.simple_roots = tuple(tuple(c) for c in simple_roots)
        self.components = tuple(components)

    @property
    def component_labels(self):
        return tuple(sorted(lab for lab, _ in self.components))

    @property
    def name(self):
        return "".join(self.component_labels) if self.components else "0"

    @property
    def rank(self):
        return len(self.simple_roots)

    def weyl_group_order(self):
        order = 1
        for lab, _ in self.components:
            order *= _component_weyl_order(lab)
        return order

    def roots(self):
        """All parent roots lying in the span of the subsystem generators.

        Only valid when the generators are simple roots of the parent
        (standard subsystem); then membership is a support condition.
        """
        idx = set()
        for c in self.simple_roots:
            nz = [i for i, x in enumerate(c) if x != 0]
            if len(nz) != 1 or c[nz[0]] != 1:
                raise ValueError("roots() requires a standard subsystem")
            idx.add(nz[0])
        return tuple(
            r
            for r in self.parent.roots
            if all(i in idx for i, x in enumerate(r) if x != 0)
        )

    def __repr__(self):
        return "Subsystem(%s in %r)" % (self.name, self.parent)


def _component_weyl_order(lab):
    base = lab.lstrip("~")
    fam, k = base[0], int(base[1:])
    if fam == "D" and k == 2:
        return 4
    if fam == "D" and k == 3:
        return 24
    if fam == "B" and k == 1:
        return 2
    if fam == "C" and k == 1:
        return 2
    if fam == "C" and k == 2:
        return 8
    if fam == "B":
        return weyl_order("B", k)
    if fam == "C":
        return weyl_order("C", k)
    if fam == "G":
        return 12
    if fam == "F":
        return 1152
    if fam == "E":
        return weyl_order("E%d" % k, k)
    return weyl_order(fam, k)


def classify_subsystem(rs, root_subset):
    """Classify the subsystem generated by a simple system of roots.

    ``root_subset`` is either a collection of simple-root indices (ints) or a
    collection of root coefficient vectors.  The roots must form a simple
    system: pairwise Cartan integers <= 0.  Returns a Subsystem whose
    component labels follow the parent's conventions: short components in
    two-length systems are marked (B1/C1 for the short/long A1 at the end of
    B/C chains, ~A1/~A2 for short components of F4/G2), and in type D the
    fork is reflected in the naming (D_k, and the detached fork pair D2).
    """
    gens = []
    for item in root_subset:
        if isinstance(item, int):
            c = tuple(1 if j == item else 0 for j in range(rs.rank))
        else:
            c = tuple(item)
        gens.append(c)
    n = len(gens)
    # pairwise Cartan integers a[i][j] = <gens[j], gens[i]^vee>
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        labels_i = rs.labels_of_root(gens[i])
        weighted = [rs.d[k] * labels_i[k] for k in range(rs.rank)]
        norm = rs.root_norm(gens[i])
        for j in range(n):
            num = sum(
                gens[j][k] * weighted[k] for k in range(rs.rank)
            )
            if num % norm != 0:
                raise ValueError("not a simple system: bad pairing")
            a[i][j] = num // norm
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] > 0:
                raise ValueError(
                    "not a simple system: roots %d and %d have positive pairing"
                    % (i, j)
                )
    # connected components of the diagram
    adj = [
        [j for j in range(n) if j != i and a[i][j] != 0] for i in range(n)
    ]
    unvisited = set(range(n))
    comps = []
    while unvisited:
        start = min(unvisited)
        stack, comp = [start], []
        unvisited.discard(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w in unvisited:
                    unvisited.discard(w)
                    stack.append(w)
        comps.append(sorted(comp))
    norms = [rs.root_norm(g) for g in gens]
    components = []
    for comp in comps:
        lab = _component_type(rs, comp, a, adj, norms, gens)
        components.append((lab, tuple(comp)))
    # type D convention: a detached fork pair {alpha_{l-1}, alpha_l} is D2
    if rs.family == "D":
        components = _merge_d2(rs, gens, components)
    components.sort(key=lambda t: t[0])
    return Subsystem(rs, gens, components)


def _component_type(rs, comp, a, adj, norms, gens):
    k = len(comp)
    deg = {v: len([w for w in adj[v] if w in comp]) for v in comp}
    comp_norms = [norms[v] for v in comp]
    short_ct = sum(1 for x in comp_norms if x == 1)
    long_ct = k - short_ct
    all_short = long_ct == 0
    # edge multiplicities within the component
    multi = []
    for i in comp:
        for j in comp:
            if i < j and a[i][j] != 0:
                multi.append(a[i][j] * a[j][i])
    maxmult = max(multi) if multi else 1
    tilde = rs.e_ratio > 1 and all_short and rs.family in ("F4", "G2")

    if maxmult == 3:
        return "G2"
    if maxmult == 2:
        # one short end -> B_k, one long end -> C_k; rank 2 by parent family
        if k == 2:
            return "C2" if rs.family == "C" else "B2"
        return "B%d" % k if long_ct > short_ct else "C%d" % k
    # simply-laced component
    if k == 1:
        if rs.family == "B" and comp_norms[0] == 1:
            return "B1"
        if rs.family == "C" and comp_norms[0] == 2:
            return "C1"
        return ("~" if tilde else "") + "A1"
    branch = [v for v in comp if deg[v] == 3]
    if not branch:
        # a path: A_k, except that in type D a path containing both fork
        # legs alpha_{l-1}, alpha_l (e.g. {alpha_{l-2}, alpha_{l-1},
        # alpha_l}) is conventionally named D_k.
        if rs.family == "D":
            std = set()
            for v in comp:
                nz = [i for i, x in enumerate(gens[v]) if x != 0]
                if len(nz) == 1 and gens[v][nz[0]] == 1:
                    std.add(nz[0])
            if rs.rank - 2 in std and rs.rank - 1 in std:
                return "D%d" % k
        return ("~" if tilde else "") + "A%d" % k
    # branched: D or E
    b = branch[0]
    tails = []
    for w in adj[b]:
        if w not in comp:
            continue
        ln, prev, cur = 1, b, w
        while True:
            nxt = [x for x in adj[cur] if x in comp and x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            ln += 1
        tails.append(ln)
    tails.sort()
    if tails[0] == 1 and tails[1] == 1:
        return "D%d" % k
    return "E%d" % k


def _merge_d2(rs, gens, components):
    l = rs.rank
    fork_pair = set()
    for pos, c in enumerate(gens):
        nz = [i for i, x in enumerate(c) if x != 0]
        if len(nz) == 1 and c[nz[0]] == 1 and nz[0] in (l - 2, l - 1):
            fork_pair.add(pos)
    if len(fork_pair) != 2:
        return components
    singles = [
        (lab, idx)
        for lab, idx in components
        if lab == "A1" and len(idx) == 1 and idx[0] in fork_pair
    ]
    if len(singles) != 2:
        return components
    rest = [c for c in components if c not in singles]
    merged = ("D2", tuple(sorted(singles[0][1] + singles[1][1])))
    return rest + [merged]
