"""String and net decompositions of weight systems with the c(s)/c(u)
lower-bound calculus.

A root direction alpha cuts the weight set of a module into maximal
alpha-lines (strings, gaps allowed); a subsystem Psi cuts it into
equivalence classes modulo the root lattice of Psi (nets); a semisimple
centralizer system Phi(s) cuts it into clusters.  Each unit yields lower
bounds c(s) on the codimension of an eigenspace of a semisimple element of
prime order r, and c(u) on the codimension of the fixed space of a
unipotent element of order p; totals are compared against the thresholds
M, M_r and M_p.
"""

import itertools
from functools import lru_cache

from . import sl2jordan
from .datafiles import match_pattern_rows
from .oracle import ExactMatrix
from .rootsys import build_root_system, classify_subsystem
from .weights import INFINITY, irreducible_character
from .weyl import dominant_representative


class NetCapacityError(ValueError):
    """A net or cluster graph is too large for exhaustive search."""


class ExplicitMatrixCaseError(ValueError):
    """c(u) for a higher-rank net factor below the Coxeter number needs
    explicit matrices and none are on file."""


class UnsupportedPsiError(ValueError):
    """No closed form for the requested subsystem count."""


# -- alpha-strings ---------------------------------------------------------


class AlphaString:
    """A maximal alpha-line of weights: base weight mu, positions t with
    mu - t*alpha in the support (offsets may have gaps), multiplicities
    from the character, and the dominant representative of each position's
    Weyl orbit."""

    def __init__(self, rs, direction, base, positions, orbit_tags):
        self.rs = rs
        self.direction = tuple(direction)
        self.base = tuple(base)
        self.positions = dict(positions)
        self.orbit_tags = dict(orbit_tags)
        if not self.positions:
            raise ValueError("empty string")

    @property
    def total(self):
        return sum(self.positions.values())

    @property
    def offsets(self):
        return tuple(sorted(self.positions))

    @property
    def span(self):
        offs = self.offsets
        return offs[-1] - offs[0]

    def sl2_weights(self):
        """Weight multiset under <., alpha^vee> along the string."""
        top = self.rs.pairing(self.base, self.direction)
        out = []
        for t, m in self.positions.items():
            out.extend([top - 2 * t] * m)
        return out

    def __repr__(self):
        return "AlphaString(base=%s, positions=%s)" % (
            self.base, dict(sorted(self.positions.items()))
        )


def alpha_strings(character, alpha):
    """Partition the expanded character into maximal alpha-lines.

    Two weights lie on the same string when their difference is an integer
    multiple of alpha; the base of each string is the end with the largest
    pairing against alpha^vee, so offsets are >= 0.
    """
    rs = character.rs
    alpha = tuple(alpha)
    alpha_labels = rs.labels_of_root(alpha)
    j = next(i for i, x in enumerate(alpha_labels) if x)
    a = alpha_labels[j]
    lines = {}
    for w, m in character.expand().items():
        k = w[j] // a
        key = tuple(x - k * y for x, y in zip(w, alpha_labels))
        lines.setdefault(key, []).append((w, m))
    out = []
    for members in lines.values():
        base = max(members, key=lambda wm: rs.pairing(wm[0], alpha))[0]
        top = rs.pairing(base, alpha)
        positions = {}
        tags = {}
        for w, m in members:
            diff = rs.pairing(w, alpha)
            assert (top - diff) % 2 == 0
            t = (top - diff) // 2
            positions[t] = m
            tags[t] = dominant_representative(rs, w)
        out.append(AlphaString(rs, alpha, base, positions, tags))
    out.sort(key=lambda s: (-s.total, s.base))
    return out


def c_s_string(string, r):
    """Eigenspace-codimension bound for a semisimple element of order r
    acting along the string: two positions can share an eigenspace only
    when their offsets agree mod r."""
    classes = {}
    for t, m in string.positions.items():
        classes[t % r] = classes.get(t % r, 0) + m
    return string.total - max(classes.values())


def c_u_string(string, p):
    """Fixed-space-codimension bound for a unipotent element of order p
    acting along the string, via the char-p sl2 decomposition of the
    string's weight multiset."""
    if p == INFINITY:
        raise ValueError("c_u_string requires a prime characteristic")
    return sl2jordan.codim_of_character(string.sl2_weights(), p)


# -- Psi-nets --------------------------------------------------------------


def _hnf_rows(gens):
    """Row echelon form over the integers of the lattice generated by the
    rows; returns a list of (pivot column, row) with each later pivot row
    vanishing on earlier pivot columns."""
    rows = [list(g) for g in gens if any(g)]
    if not rows:
        return []
    n = len(rows[0])
    out = []
    col = 0
    while rows and col < n:
        pivs = [i for i in range(len(rows)) if rows[i][col] != 0]
        if not pivs:
            col += 1
            continue
        while len(pivs) > 1:
            pivs.sort(key=lambda i: abs(rows[i][col]))
            i0 = pivs[0]
            for i in pivs[1:]:
                t = rows[i][col] // rows[i0][col]
                rows[i] = [a - t * b for a, b in zip(rows[i], rows[i0])]
            pivs = [i for i in pivs if rows[i][col] != 0]
        row = rows.pop(pivs[0])
        if row[col] < 0:
            row = [-x for x in row]
        out.append((col, row))
        rows = [r for r in rows if any(r)]
        col += 1
    return out


def _coset_key(w, hnf):
    v = list(w)
    for col, row in hnf:
        t = v[col] // row[col]
        if t:
            v = [a - t * b for a, b in zip(v, row)]
    return tuple(v)


def _psi_positive_roots(psi):
    rs = psi.parent
    pos = set(rs.positive_roots)
    return tuple(r for r in psi.roots() if r in pos)


class PsiNet:
    """One equivalence class of the weight set under differences in the
    root lattice of Psi."""

    def __init__(self, rs, psi, weights, levels):
        self.rs = rs
        self.psi = psi
        self.weights = dict(weights)
        self._levels = levels  # dominant reps, lowest level first
        self._psi_pos = _psi_positive_roots(psi)

    @property
    def total(self):
        return sum(self.weights.values())

    def psi_labels(self, w):
        return tuple(
            self.rs.pairing(w, alpha) for alpha in self.psi.simple_roots
        )

    @property
    def high_weight(self):
        """The G_Psi-dominant extreme weight, in Psi fundamental-weight
        coordinates."""
        best = None
        best_ht = None
        for w in self.weights:
            lab = self.psi_labels(w)
            if any(x < 0 for x in lab):
                continue
            ht = sum(self.rs.pairing(w, g) for g in self._psi_pos)
            if best is None or ht > best_ht or (ht == best_ht and lab > best):
                best, best_ht = lab, ht
        assert best is not None, "net without a Psi-dominant weight"
        return best

    @property
    def level_counts(self):
        """Number of weights of the net in each orbit level of the parent
        weight table, lowest level first."""
        idx = {mu: i for i, mu in enumerate(self._levels)}
        counts = [0] * len(self._levels)
        for w, m in self.weights.items():
            counts[idx[dominant_representative(self.rs, w)]] += 1
        return tuple(counts)

    def signature(self):
        """Canonical key identifying the net's type (nets with equal
        signatures contribute identical bounds)."""
        items = sorted(
            (self.psi_labels(w), dominant_representative(self.rs, w), m)
            for w, m in self.weights.items()
        )
        return tuple(items)

    def __repr__(self):
        return "PsiNet(%s, high=%s, size=%d)" % (
            self.psi.name, self.high_weight, self.total
        )


def psi_nets(character, psi):
    """Partition the expanded character into Psi-nets."""
    rs = character.rs
    gens = [rs.labels_of_root(a) for a in psi.simple_roots]
    hnf = _hnf_rows(gens)
    levels = [mu for mu, _ in character.dominant_items_sorted()]
    levels.reverse()
    nets = {}
    for w, m in character.expand().items():
        nets.setdefault(_coset_key(w, hnf), {})[w] = m
    return [PsiNet(rs, psi, ws, levels) for ws in nets.values()]


NET_CAPACITY = 24


def _max_mass_independent_set(masses, neighbors):
    n = len(masses)
    best = 0

    def rec(avail, acc):
        nonlocal best
        if acc + sum(masses[i] for i in avail) <= best:
            return
        if not avail:
            best = max(best, acc)
            return
        v = max(avail, key=lambda i: masses[i])
        rec(avail - neighbors[v] - {v}, acc + masses[v])
        rec(avail - {v}, acc)

    rec(frozenset(range(n)), 0)
    return best


def c_s_net(net, r):
    """Eigenspace-codimension bound over the net: total mass minus the
    largest mass of a set of weights no two of which differ by t*alpha
    with alpha a root of Psi and r not dividing t."""
    ws = list(net.weights)
    if len(ws) > NET_CAPACITY:
        raise NetCapacityError(
            "net with %d weights exceeds exhaustive-search capacity %d"
            % (len(ws), NET_CAPACITY)
        )
    rs = net.rs
    psi_root_labels = [rs.labels_of_root(a) for a in net._psi_pos]
    masses = [net.weights[w] for w in ws]
    neighbors = [set() for _ in ws]
    for i, j in itertools.combinations(range(len(ws)), 2):
        diff = tuple(a - b for a, b in zip(ws[i], ws[j]))
        for lab in psi_root_labels:
            t = _multiple_of(diff, lab)
            if t is not None and t % r != 0:
                neighbors[i].add(j)
                neighbors[j].add(i)
                break
    neighbors = [frozenset(s) for s in neighbors]
    return net.total - _max_mass_independent_set(masses, neighbors)


def _multiple_of(diff, lab):
    """The integer t with diff = t * lab, or None."""
    t = None
    for d, x in zip(diff, lab):
        if x == 0:
            if d != 0:
                return None
        else:
            if d % x != 0:
                return None
            q = d // x
            if t is None:
                t = q
            elif q != t:
                return None
    if t == 0:
        return None
    return t


_COXETER_BY_LABEL = {"D2": 2, "D3": 4, "B1": 2, "C1": 2, "C2": 4}


def _component_coxeter(label):
    base = label.lstrip("~")
    if base in _COXETER_BY_LABEL:
        return _COXETER_BY_LABEL[base]
    fam, k = base[0], int(base[1:])
    if fam == "A":
        return k + 1
    if fam in ("B", "C"):
        return 2 * k
    if fam == "D":
        return 2 * k - 2
    if fam == "G":
        return 6
    if fam == "F":
        return 12
    return {6: 12, 7: 18, 8: 30}[k]


def c_u_net(net, p):
    """Fixed-space-codimension bound for a regular unipotent element of
    G_Psi of order p on the net.

    Routes, in order: the explicit-matrix fixture store; restriction to
    the product of principal A1 subgroups (valid when every factor of Psi
    has rank 1 or p at least its Coxeter number); otherwise an
    ExplicitMatrixCaseError.
    """
    fixture = _fixture_value(net, p)
    if fixture is not None:
        return fixture
    rs = net.rs
    psi = net.psi
    factors = []
    for label, idx in psi.components:
        gens = [psi.simple_roots[i] for i in idx]
        sub = classify_subsystem(rs, gens)
        if len(idx) > 1 and p != INFINITY and p < _component_coxeter(label):
            raise ExplicitMatrixCaseError(
                "factor %s of %s needs explicit matrices at p=%s"
                % (label, psi.name, p)
            )
        factors.append(_psi_positive_roots(sub))
    if not factors:
        return 0
    # weight -> tuple of pairings against 2*rho^vee of each factor
    remaining = {}
    for w, m in net.weights.items():
        key = tuple(
            sum(rs.pairing(w, g) for g in pos) for pos in factors
        )
        remaining[key] = remaining.get(key, 0) + m
    bound = 0
    while any(remaining.values()):
        hw = max(
            (k for k, c in remaining.items() if c),
            key=lambda k: (sum(k), k),
        )
        if any(x < 0 for x in hw):
            raise ValueError("net restriction is not a character")
        irrs = [sl2jordan.sl2_irreducible(m_i, p) for m_i in hw]
        weight_lists = [irr.weights() for irr in irrs]
        for combo in itertools.product(*weight_lists):
            remaining[combo] = remaining.get(combo, 0) - 1
            if remaining[combo] < 0:
                raise ValueError("net restriction is not a character")
        dim = 1
        for irr in irrs:
            dim *= irr.dim
        bound += max(
            (dim // irr.dim) * (irr.dim - irr.fixed_dim) for irr in irrs
        )
    return bound


# -- explicit-matrix fixtures ---------------------------------------------


def _from_units(n, units):
    """Identity plus given (i, j, value) entries, 1-indexed."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, v in units:
        rows[i - 1][j - 1] += v
    return rows


def _fixture_store():
    x1 = [
        [1, 2, 1, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 1, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]
    x2 = [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 1, 0, 0],
        [0, 0, 1, 0, 2, 1],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, 1],
    ]
    a7 = [
        [1, 2, 1, 2, 1, 0, 0],
        [0, 1, 0, 1, 2, 0, 0],
        [0, 0, 1, 1, 1, 2, 1],
        [0, 0, 0, 1, 1, 1, 2],
        [0, 0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 0, 1, 2],
        [0, 0, 0, 0, 0, 0, 1],
    ]
    b2 = [[1, 1], [0, 1]]
    ab = [
        [a7[i][j] * b2[k][l] for j in range(7) for l in range(2)]
        for i in range(7)
        for k in range(2)
    ]
    m1 = _from_units(12, [
        (1, 2, 1), (3, 4, 4), (3, 5, 1), (4, 5, 3), (6, 7, 1),
        (8, 9, 1), (8, 10, 4), (9, 10, 3), (11, 12, 4),
    ])
    m2 = _from_units(12, [
        (1, 3, 1), (2, 4, 2), (2, 6, 2), (2, 8, 4), (4, 6, 2),
        (4, 8, 1), (5, 7, 3), (5, 9, 2), (5, 11, 1), (6, 8, 1),
        (7, 9, 3), (7, 11, 1), (9, 11, 4), (10, 12, 4),
    ])
    return {
        ("C", 4, 3, "A2C1", (2, 0, 0)): [x1, x2],
        ("C", 4, 3, "A2C1", (0, 2, 0)): [x1, x2],
        ("C", 4, 3, "A2C1", (1, 1, 1)): [ab],
        ("B", 2, 5, "B2", (1, 1)): [m1, m2],
    }


_FIXTURES = _fixture_store()


def _fixture_value(net, p):
    if p == INFINITY:
        return None
    rs = net.rs
    key = (rs.family, rs.rank, p, net.psi.name, net.high_weight)
    mats = _FIXTURES.get(key)
    if mats is None:
        return None
    prod = ExactMatrix(mats[0], p)
    for m in mats[1:]:
        prod = prod @ ExactMatrix(m, p)
    return (prod - ExactMatrix.identity(prod.nrows, p)).rank()


# -- clusters --------------------------------------------------------------


class ClusterDiagram:
    """Partition of the weight set modulo the root lattice of Phi(s), with
    exclusion edges between classes containing weights differing by a
    root."""

    def __init__(self, phi_s, clusters, edges):
        self.phi_s = phi_s
        self.clusters = clusters  # list of weight -> mult dicts
        self.edges = edges  # set of (i, j), i < j

    @property
    def masses(self):
        return tuple(sum(c.values()) for c in self.clusters)


def cluster_bound(character, phi_s):
    """Lower bound on the codimension of any eigenspace of a semisimple
    element s whose root-lattice centralizer system is Phi(s): total mass
    minus the largest mass of an independent set of clusters."""
    rs = character.rs
    gens = [rs.labels_of_root(a) for a in phi_s.simple_roots]
    hnf = _hnf_rows(gens)
    groups = {}
    for w, m in character.expand().items():
        groups.setdefault(_coset_key(w, hnf), {})[w] = m
    clusters = list(groups.values())
    if len(clusters) > NET_CAPACITY:
        raise NetCapacityError(
            "%d clusters exceed exhaustive-search capacity %d"
            % (len(clusters), NET_CAPACITY)
        )
    root_labels = set(rs.labels_of_root(a) for a in rs.roots)
    edges = set()
    neighbors = [set() for _ in clusters]
    for i, j in itertools.combinations(range(len(clusters)), 2):
        if _clusters_exclude(clusters[i], clusters[j], root_labels):
            edges.add((i, j))
            neighbors[i].add(j)
            neighbors[j].add(i)
    neighbors = [frozenset(s) for s in neighbors]
    masses = [sum(c.values()) for c in clusters]
    bound = sum(masses) - _max_mass_independent_set(masses, neighbors)
    return ClusterDiagram(phi_s, clusters, edges), bound


def _clusters_exclude(c1, c2, root_labels):
    for w1 in c1:
        for w2 in c2:
            if tuple(a - b for a, b in zip(w1, w2)) in root_labels:
                return True
    return False


# -- subsystem counts in type A -------------------------------------------


def m_psi(rs, psi_type):
    """Number of subsystems of the given type disjoint from a generic
    point's centralizer system; closed forms for type A only."""
    if rs.family != "A":
        raise UnsupportedPsiError(
            "no closed form outside type A (got %s)" % rs.family
        )
    l = rs.rank
    if psi_type == "A1^2" and l >= 3:
        return l * (l - 1)
    if psi_type == "A1^3" and l >= 5:
        return (l - 1) * (l - 2)
    if psi_type == "A2" and l >= 2:
        return (l * l) // 2
    if psi_type == "A2A1^2" and l >= 9:
        return (l * l) // 2
    raise UnsupportedPsiError(
        "no closed form for Psi=%s at rank %d" % (psi_type, l)
    )


# -- reports ---------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _r_values(max_span, p):
    """Primes r != p to tabulate: 2..7 plus one past the largest string
    span, after which c(s) is constant."""
    out = [r for r in _SMALL_PRIMES if r <= 7 and r != p]
    stable = next(r for r in _SMALL_PRIMES if r > max_span)
    if stable != p and stable not in out:
        out.append(stable)
    elif stable == p:
        nxt = next(r for r in _SMALL_PRIMES if r > stable)
        if nxt not in out:
            out.append(nxt)
    return tuple(out)


class BoundReport:
    """Per-unit c(s)/c(u) rows with totals, thresholds, and verdict
    flags."""

    def __init__(self, triple, kind, unit_label, rows, cs_totals, cu_total):
        self.triple = triple
        self.kind = kind  # "string" or "net"
        self.unit_label = unit_label  # root direction or Psi name
        self.rows = rows
        self.cs_totals = dict(cs_totals)
        self.cu_total = cu_total
        rs = triple.rs
        self.thresholds = {
            "M": rs.M,
            "M_2": rs.m_r(2)[0],
            "M_3": rs.m_r(3)[0],
            "M_p": rs.M if triple.p == INFINITY else rs.m_r(triple.p)[0],
        }

    @property
    def flags(self):
        M = self.thresholds["M"]
        rs = self.triple.rs
        cs = self.cs_totals
        return {
            "ss_ddag": all(v > M for v in cs.values()),
            "ss_dag": all(v > rs.m_r(r)[0] for r, v in cs.items()),
            "u_ddag": self.cu_total is not None and self.cu_total > M,
            "u_dag": self.cu_total is not None
            and self.cu_total > self.thresholds["M_p"],
        }

    def to_rows(self):
        """Table rows for display: header, unit rows, totals."""
        rvals = sorted(self.cs_totals)
        head = ["unit", "m"] + ["c(s) r=%d" % r for r in rvals]
        if self.cu_total is not None:
            head.append("c(u) p=%s" % self.triple.p)
        out = [head]
        for row in self.rows:
            line = [row["unit"], str(row["m"])]
            line += [str(row["cs"][r]) for r in rvals]
            if self.cu_total is not None:
                line.append(str(row["cu"]))
            out.append(line)
        tot = ["total", str(sum(r["m"] for r in self.rows))]
        tot += [str(self.cs_totals[r]) for r in rvals]
        if self.cu_total is not None:
            tot.append(str(self.cu_total))
        out.append(tot)
        return out

    def as_dict(self):
        return {
            "triple": self.triple.label(),
            "kind": self.kind,
            "unit": self.unit_label,
            "rows": self.rows,
            "cs_totals": {str(k): v for k, v in self.cs_totals.items()},
            "cu_total": self.cu_total,
            "thresholds": self.thresholds,
            "flags": self.flags,
        }


def _direction_root(rs, root_kind):
    for i in range(rs.rank):
        simple = tuple(1 if j == i else 0 for j in range(rs.rank))
        if rs.is_short(simple) == (root_kind == "short"):
            return simple
    raise ValueError("no %s simple root in %r" % (root_kind, rs))


def string_table(triple, root="short", alpha=None, character=None):
    """Bound report over the alpha-strings of the triple's module for a
    root of the given length class."""
    rs = triple.rs
    if alpha is None:
        alpha = _direction_root(rs, root)
    if character is None:
        character = irreducible_character(triple)
    strings = alpha_strings(character, alpha)
    levels = [mu for mu, _ in character.dominant_items_sorted()]
    levels.reverse()
    level_of = {mu: i + 1 for i, mu in enumerate(levels)}
    max_span = max(s.span for s in strings)
    rvals = _r_values(max_span, triple.p)
    groups = {}
    for s in strings:
        offs = s.offsets
        sig = tuple(
            (t - offs[0], s.positions[t], s.orbit_tags[t]) for t in offs
        )
        groups.setdefault(sig, []).append(s)
    rows = []
    cs_totals = {r: 0 for r in rvals}
    cu_total = 0 if triple.p != INFINITY else None
    for sig, members in sorted(
        groups.items(), key=lambda kv: (-len(kv[0]), kv[0])
    ):
        s = members[0]
        m = len(members)
        label = _string_label(s, level_of)
        cs = {r: c_s_string(s, r) for r in rvals}
        row = {"unit": label, "m": m, "cs": cs}
        for r in rvals:
            cs_totals[r] += m * cs[r]
        if cu_total is not None:
            cu = c_u_string(s, triple.p)
            row["cu"] = cu
            cu_total += m * cu
        rows.append(row)
    return BoundReport(triple, "string", root, rows, cs_totals, cu_total)


def _string_label(s, level_of):
    offs = s.offsets
    parts = []
    for t in range(offs[0], offs[-1] + 1):
        if t in s.positions:
            parts.append("mu%d" % level_of[s.orbit_tags[t]])
        else:
            parts.append("_")
    return " ".join(parts)


def net_report(triple, psi_indices, character=None):
    """Bound report over the Psi-nets for the standard subsystem generated
    by the given 0-based simple-root indices."""
    rs = triple.rs
    psi = classify_subsystem(rs, sorted(psi_indices))
    if character is None:
        character = irreducible_character(triple)
    nets = psi_nets(character, psi)
    groups = {}
    for net in nets:
        groups.setdefault(net.signature(), []).append(net)
    max_span = 0
    for net in nets:
        for w in net.weights:
            lab = net.psi_labels(w)
            max_span = max(max_span, sum(abs(x) for x in lab))
    rvals = _r_values(max_span, triple.p)
    positions = [
        next(i for i, x in enumerate(c) if x) + 1 for c in psi.simple_roots
    ]
    rows = []
    cs_totals = {r: 0 for r in rvals}
    cu_total = 0 if triple.p != INFINITY else None
    for sig, members in sorted(
        groups.items(),
        key=lambda kv: (-max(sum(lab) for lab, _, _ in kv[0]), kv[0]),
    ):
        net = members[0]
        m = len(members)
        label = _net_label(net.high_weight, positions)
        cs = {r: c_s_net(net, r) for r in rvals}
        row = {
            "unit": label,
            "n": list(net.level_counts),
            "m": m,
            "cs": cs,
        }
        for r in rvals:
            cs_totals[r] += m * cs[r]
        if cu_total is not None:
            try:
                cu = c_u_net(net, triple.p)
            except ExplicitMatrixCaseError:
                cu = None
            row["cu"] = cu
            cu_total = None if cu is None else cu_total + m * cu
        rows.append(row)
    return BoundReport(triple, "net", psi.name, rows, cs_totals, cu_total)


def _net_label(high_weight, positions):
    parts = []
    for c, j in zip(high_weight, positions):
        if c == 0:
            continue
        parts.append(("%db%d" % (c, j)) if c > 1 else ("b%d" % j))
    return "+".join(parts) if parts else "0"


# -- mechanical discharge --------------------------------------------------


def min_unipotent_class_dim(rs):
    """Dimension of the minimal nontrivial unipotent class."""
    l = rs.rank
    return {
        "A": 2 * l,
        "B": 4 * l - 4,
        "C": 2 * l,
        "D": 4 * l - 6,
        "E6": 22,
        "E7": 34,
        "E8": 58,
        "F4": 16,
        "G2": 6,
    }[rs.family]


def u_arms_ok(rs, p, c_short, c_long):
    """Unipotent-side verdict from short/long codim totals: the long total
    beats M outright; both totals beat the order-p bound M_p; or the short
    total beats M (or M_p) while the long total still beats the minimal
    class dimension."""
    if c_short is None or c_long is None:
        return False
    M = rs.M
    m_p = M if p == INFINITY else rs.m_r(p)[0]
    min_class = min_unipotent_class_dim(rs)
    return (
        c_long > M
        or (c_short > m_p and c_long > m_p)
        or (c_short > M and c_long > min_class)
        or (c_short > m_p and c_long > min_class)
    )


def string_discharge(triple, character=None):
    """Apply the string bounds in every root direction and compare against
    the thresholds; returns a verdict dict with the reports.

    Only triples covered by a row of the tabulated bound scope
    (string_props.tsv) are eligible; anything else is passed through to
    the finer net and cluster analysis, even if the raw totals would
    clear the thresholds.

    The semisimple side holds when, for every prime r != p, the best
    direction's c(s) total beats M (strict form) or each r's total beats
    M_r (order-r form).  The unipotent side holds when the long-direction
    total beats M, or both directions beat M_p, or the short direction
    beats M (or M_p) while the long direction beats the minimal class
    dimension.
    """
    rs = triple.rs
    if not match_pattern_rows(
        "string_props", triple.family, triple.rank, triple.lam, triple.p
    ):
        return {
            "ok": False,
            "ss_ok": False,
            "ss_ddag": False,
            "ss_dag": False,
            "u_ok": False,
            "t_r": {},
            "cu": {"short": None, "long": None},
            "reports": {},
        }
    if character is None:
        character = irreducible_character(triple)
    directions = ["short"] if rs.e_ratio == 1 else ["short", "long"]
    reports = {
        kind: string_table(triple, root=kind, character=character)
        for kind in directions
    }
    rvals = sorted(
        set().union(*(set(rep.cs_totals) for rep in reports.values()))
    )
    t_r = {}
    for r in rvals:
        vals = [
            rep.cs_totals[r]
            for rep in reports.values()
            if r in rep.cs_totals
        ]
        t_r[r] = max(vals)
    M = rs.M
    ss_ddag = all(v > M for v in t_r.values())
    ss_dag = all(v > rs.m_r(r)[0] for r, v in t_r.items())
    ss_ok = ss_ddag or ss_dag
    c_short = reports["short"].cu_total
    c_long = reports.get("long", reports["short"]).cu_total
    u_ok = u_arms_ok(rs, triple.p, c_short, c_long)
    return {
        "ok": ss_ok and u_ok,
        "ss_ok": ss_ok,
        "ss_ddag": ss_ddag,
        "ss_dag": ss_dag,
        "u_ok": u_ok,
        "t_r": t_r,
        "cu": {"short": c_short, "long": c_long},
        "reports": reports,
    }
