"""Dominant weight posets, Weyl-module characters via Freudenthal's
recursion, modular multiplicity data, generalized height slicing, and
vanishing-linear-combination tests.

Weights are integer tuples of Dynkin labels.  Characters map dominant
representatives to multiplicities; full expansion is done on demand.
"""

import itertools
from fractions import Fraction

from . import datafiles
from .rootsys import build_root_system
from .weyl import dominant_representative, orbit, orbit_size

INFINITY = float("inf")


class MultiplicityUnavailableError(LookupError):
    """Raised when modular multiplicity data for a triple is not embedded."""


class Triple:
    """(group type, rank, highest weight, characteristic)."""

    def __init__(self, family, rank, lam, p):
        self.family = family
        self.rank = rank
        self.lam = tuple(lam)
        self.p = p
        if all(x == 0 for x in self.lam):
            raise ValueError("highest weight must be nonzero")
        if any(x < 0 for x in self.lam):
            raise ValueError("highest weight must be dominant")

    @property
    def rs(self):
        return build_root_system(self.family, self.rank)

    def is_p_restricted(self):
        if self.p == INFINITY:
            return True
        return all(x < self.p for x in self.lam)

    def label(self):
        lam = "+".join(
            ("%dw%d" % (c, i + 1) if c > 1 else "w%d" % (i + 1))
            for i, c in enumerate(self.lam)
            if c
        )
        pstr = "inf" if self.p == INFINITY else str(self.p)
        fam = self.family.rstrip("0123456789")
        return "%s%d:%s:p%s" % (fam, self.rank, lam, pstr)

    def as_dict(self):
        return {
            "family": self.family,
            "rank": self.rank,
            "lambda": list(self.lam),
            "p": None if self.p == INFINITY else self.p,
        }

    def __repr__(self):
        return "Triple(%s)" % self.label()

    def __eq__(self, other):
        return isinstance(other, Triple) and (
            self.family,
            self.rank,
            self.lam,
            self.p,
        ) == (other.family, other.rank, other.lam, other.p)

    def __hash__(self):
        return hash((self.family, self.rank, self.lam, self.p))


class Character:
    """Finitely supported weight -> multiplicity map, stored on dominant
    orbit representatives."""

    def __init__(self, rs, dominant_mults):
        self.rs = rs
        self.dominant_mults = {
            tuple(k): v for k, v in dominant_mults.items() if v
        }
        for k, v in self.dominant_mults.items():
            if v < 0:
                raise ValueError("negative multiplicity at %r" % (k,))

    @property
    def total(self):
        return sum(
            m * orbit_size(self.rs, mu) for mu, m in self.dominant_mults.items()
        )

    def expand(self):
        """Full weight -> multiplicity map."""
        out = {}
        for mu, m in self.dominant_mults.items():
            for w in orbit(self.rs, mu):
                out[w] = m
        return out

    def dominant_items_sorted(self):
        """Dominant support sorted from the highest weight downwards."""
        items = list(self.dominant_mults.items())
        items.sort(key=lambda kv: (_depth_key(self.rs, kv[0]), kv[0]))
        return items

    def to_json(self):
        return sorted([list(k), v] for k, v in self.expand().items())


def _depth_key(rs, mu):
    # sum of root coordinates, negated: highest weight first
    coords = rs.root_coords_of_weight(mu)
    return -sum(coords)


def _diff_root_coords(rs, lam, mu):
    """Root coordinates of lam - mu, or None if not a nonnegative integer
    combination of simple roots."""
    diff = tuple(a - b for a, b in zip(lam, mu))
    coords = rs.root_coords_of_weight(diff)
    out = []
    for c in coords:
        if c.denominator != 1 or c < 0:
            return None
        out.append(int(c))
    return tuple(out)


def dominant_below(rs, lam):
    """All dominant mu <= lam (lam - mu a nonnegative sum of simple roots),
    sorted from lam downwards by the height of lam - mu.

    Consecutive dominant weights in the dominance order differ by a positive
    root, so a breadth-first search subtracting positive roots is complete.
    """
    lam = tuple(lam)
    if any(x < 0 for x in lam):
        raise ValueError("dominant_below requires a dominant weight")
    pos_labels = [
        (rs.labels_of_root(a), sum(a)) for a in rs.positive_roots
    ]
    # track the height of lam - mu alongside mu, so no matrix inversion is
    # needed for the dominance test or the final sort
    found = {lam: 0}
    frontier = [lam]
    while frontier:
        new = []
        for mu in frontier:
            ht = found[mu]
            for labels, aht in pos_labels:
                cand = tuple(a - b for a, b in zip(mu, labels))
                if cand in found or any(x < 0 for x in cand):
                    continue
                found[cand] = ht + aht
                new.append(cand)
        frontier = new
    out = list(found)
    out.sort(key=lambda mu: (found[mu], mu))
    return out


# -- Freudenthal ----------------------------------------------------------


def _ip2(rs, labels, root_coords):
    """2 * (mu, alpha) for mu in Dynkin labels, alpha in root coordinates,
    in units where short roots have squared length 1."""
    return sum(
        root_coords[i] * rs.d[i] * labels[i] for i in range(rs.rank)
    )


def weyl_module_character(rs, lam):
    """Characteristic-zero Weyl module character via Freudenthal's formula.

    Returns a dict dominant mu -> multiplicity.
    """
    lam = tuple(lam)
    doms = dominant_below(rs, lam)
    mults = {lam: 1}
    rho = (1,) * rs.rank
    for mu in doms:
        if mu == lam:
            continue
        num = 0
        for alpha in rs.positive_roots:
            alpha_labels = rs.labels_of_root(alpha)
            k = 1
            while True:
                nu = tuple(m + k * a for m, a in zip(mu, alpha_labels))
                nu_dom = dominant_representative(rs, nu)
                m_nu = mults.get(nu_dom, 0) if nu_dom in mults else 0
                if _diff_root_coords(rs, lam, nu_dom) is None:
                    break
                if m_nu:
                    num += m_nu * _ip2(rs, nu, alpha)
                k += 1
        lam_rho = tuple(a + b for a, b in zip(lam, rho))
        mu_rho = tuple(a + b for a, b in zip(mu, rho))
        diff = _diff_root_coords(rs, lam, mu)
        both = tuple(a + b for a, b in zip(lam_rho, mu_rho))
        den = _ip2(rs, both, diff)
        assert den > 0 and (2 * num) % den == 0, (lam, mu, num, den)
        mults[mu] = 2 * num // den
    return mults


def weyl_module_multiplicity(rs, lam, mu):
    """Characteristic-zero multiplicity of mu in the Weyl module of highest
    weight lam (0 when mu is not below lam)."""
    mu = dominant_representative(rs, tuple(mu))
    if _diff_root_coords(rs, lam, mu) is None:
        return 0
    return weyl_module_character(rs, lam).get(mu, 0)


def weyl_dimension(rs, lam):
    """Weyl dimension formula, exact."""
    rho = (1,) * rs.rank
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    num = den = 1
    for alpha in rs.positive_roots:
        num *= _ip2(rs, lam_rho, alpha)
        den *= _ip2(rs, rho, alpha)
    val = Fraction(num, den)
    assert val.denominator == 1
    return int(val)


# -- modular characters ---------------------------------------------------


def is_minuscule(rs, lam):
    """True when every weight of the module is W-conjugate to lam."""
    return dominant_below(rs, lam) == [tuple(lam)]


def irreducible_character(triple):
    """Character of the irreducible module of the triple.

    Sources, in order: minuscule weights (single orbit, any p);
    characteristic zero / infinity (Freudenthal); the embedded modular
    multiplicity dataset.  Anything else raises
    MultiplicityUnavailableError - never a silent characteristic-zero
    fallback.
    """
    rs = triple.rs
    lam = triple.lam
    if is_minuscule(rs, lam):
        return Character(rs, {lam: 1})
    if triple.p == INFINITY:
        return Character(rs, weyl_module_character(rs, lam))
    row = datafiles.lookup_multiplicities(
        triple.family, triple.rank, lam, triple.p
    )
    if row is None:
        raise MultiplicityUnavailableError(
            "no modular multiplicity data for %s" % triple.label()
        )
    return Character(rs, row)


# -- generalized heights and vanishing combinations -----------------------


class GeneralizedHeightFn:
    """A nonnegative integer value per simple root, extended linearly."""

    def __init__(self, values):
        self.values = tuple(values)
        if any(v < 0 for v in self.values):
            raise ValueError("generalized height values must be >= 0")

    @property
    def strictly_positive(self):
        return all(v > 0 for v in self.values)

    def of(self, rs, weight):
        coords = rs.root_coords_of_weight(weight)
        val = sum(Fraction(v) * c for v, c in zip(self.values, coords))
        return val


def gh_slice(character, gh, i):
    """The sub-character of weights at generalized height i."""
    rs = character.rs
    out = {}
    for w, m in character.expand().items():
        val = gh.of(rs, w)
        if val.denominator != 1:
            raise ValueError(
                "generalized height non-integral on weight %r" % (w,)
            )
        if val == i:
            out[w] = m
    return out


def gh_slices(character, gh):
    """Partition of the expanded character by generalized height."""
    rs = character.rs
    out = {}
    for w, m in character.expand().items():
        val = gh.of(rs, w)
        if val.denominator != 1:
            raise ValueError(
                "generalized height non-integral on weight %r" % (w,)
            )
        out.setdefault(int(val), {})[w] = m
    return out


def has_zlc(rs, weight_set):
    """Whether a strictly positive integer combination of the weights
    vanishes; returns (bool, witness dict or None).

    Solved as exact rational feasibility: sum c_nu * nu = 0 with c_nu >= 1,
    by searching integer coefficient vectors up to a small bound first and
    falling back to a rational feasibility certificate via vertex
    enumeration on the simplex of solutions.
    """
    ws = [tuple(w) for w in weight_set]
    if not ws:
        return False, None
    n = len(ws)
    # quick exact search over small integer coefficients
    bound = 4 if n <= 6 else 2
    for combo in itertools.product(range(1, bound + 1), repeat=n):
        tot = [0] * rs.rank
        for c, w in zip(combo, ws):
            for k in range(rs.rank):
                tot[k] += c * w[k]
        if all(x == 0 for x in tot):
            return True, dict(zip(ws, combo))
    # rational feasibility: minimize nothing, find c >= 1 with A c = 0.
    # Use iterative scaling: solve A c = 0 over the rationals restricted to
    # the affine slice sum(c) = n, via kernel basis + search on kernel
    # coefficients.
    kernel = _rational_kernel([[Fraction(w[k]) for w in ws] for k in range(rs.rank)])
    if not kernel:
        return False, None
    for combo in itertools.product(range(-6, 7), repeat=len(kernel)):
        if all(x == 0 for x in combo):
            continue
        vec = [sum(c * b[i] for c, b in zip(combo, kernel)) for i in range(n)]
        if all(v > 0 for v in vec):
            denom = 1
            for v in vec:
                denom = denom * v.denominator // _gcd(denom, v.denominator)
            ints = [int(v * denom) for v in vec]
            g = 0
            for x in ints:
                g = _gcd(g, x)
            ints = [x // g for x in ints]
            return True, dict(zip(ws, ints))
    return False, None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _rational_kernel(rows):
    """Kernel basis of a matrix given as list of rows of Fractions."""
    if not rows:
        return []
    m = [row[:] for row in rows]
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -m[ri][fc]
        basis.append(vec)
    return basis


def has_zlce(rs, weight_set, ambient):
    """ZLC plus the same for every one-element extension within ambient."""
    ok, witness = has_zlc(rs, weight_set)
    if not ok:
        return False, None
    base = set(tuple(w) for w in weight_set)
    for w in ambient:
        w = tuple(w)
        if w in base:
            continue
        ok2, _ = has_zlc(rs, list(base | {w}))
        if not ok2:
            return False, None
    return True, witness
