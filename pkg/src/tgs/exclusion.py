"""Relevance constants and the exclusion pipeline: r_psi, r_mu, r_{mu,p},
s_lambda sums, the large-triple test, and excluded/unexcluded verdicts for
p-restricted triples.
"""

from fractions import Fraction

from . import datafiles
from .rootsys import build_root_system, classify_subsystem, weyl_order
from .weights import (
    INFINITY,
    Triple,
    dominant_below,
    irreducible_character,
    weyl_dimension,
)
from .weyl import orbit_size


class RelevanceRecord:
    def __init__(self, subsystem, r_short, r_long, relevant):
        self.subsystem = subsystem
        self.r_short = r_short
        self.r_long = r_long
        self.relevant = relevant
        self.name = subsystem.name

    def __repr__(self):
        return "RelevanceRecord(%s, r=%s, r'=%s, %s)" % (
            self.subsystem.name,
            self.r_short,
            self.r_long,
            "relevant" if self.relevant else "irrelevant",
        )


def _as_int(x):
    return int(x) if isinstance(x, Fraction) and x.denominator == 1 else x


def subsystem_roots(rs, indices):
    """Roots of the standard subsystem spanned by the given simple roots."""
    idx = set(indices)
    return [
        r
        for r in rs.roots
        if all(c == 0 for k, c in enumerate(r) if k not in idx)
    ]


def r_psi(rs, indices):
    """(r_short, r_long or None) for a standard subsystem given by simple
    root indices."""
    indices = sorted(set(indices))
    if len(indices) >= rs.rank:
        raise ValueError("subsystem must be proper")
    sub = classify_subsystem(rs, indices)
    index = weyl_order(rs.family, rs.rank) // sub.weyl_group_order()
    short = rs.short_roots()
    psi_roots = subsystem_roots(rs, indices)
    psi_short = sum(1 for r in psi_roots if rs.is_short(r))
    r_s = _as_int(Fraction(index * (len(short) - psi_short), 2 * len(short)))
    if rs.e_ratio == 1:
        return r_s, None
    long_ = [r for r in rs.roots if not rs.is_short(r)]
    psi_long = len(psi_roots) - psi_short
    r_l = _as_int(Fraction(index * (len(long_) - psi_long), 2 * len(long_)))
    return r_s, r_l


from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _pairing_matrices(family, rank):
    """(short, long) integer matrices whose rows give <mu, alpha^vee> for
    the positive roots of each length, as a function of Dynkin labels."""
    rs = build_root_system(family, rank)
    short, long_ = [], []
    for a in rs.positive_roots:
        row = [a[i] * rs.d[i] for i in range(rs.rank)]
        norm = rs.root_norm(a)
        row = [x // norm for x in row]
        (short if norm == 1 else long_).append(row)
    to = lambda rows: np.array(rows, dtype=np.int64).reshape(-1, rs.rank)
    return to(short), to(long_)


@lru_cache(maxsize=None)
def _orbit_size_by_zeros(family, rank, zeros):
    rs = build_root_system(family, rank)
    if not zeros:
        return weyl_order(family, rank)
    sub = classify_subsystem(rs, list(zeros))
    return weyl_order(family, rank) // sub.weyl_group_order()


def _orbit_size(rs, mu):
    zeros = tuple(i for i in range(rs.rank) if mu[i] == 0)
    return _orbit_size_by_zeros(rs.family, rs.rank, zeros)


def r_mu(rs, mu, long_roots=False):
    """r attached to a dominant weight: orbit size times the fraction of
    short (resp. long) roots not orthogonal to mu."""
    mu = tuple(mu)
    if all(x == 0 for x in mu):
        return 0
    S, L = _pairing_matrices(rs.family, rs.rank)
    P = L if long_roots else S
    count = int(np.count_nonzero(P @ np.array(mu, dtype=np.int64)))
    return _as_int(Fraction(_orbit_size(rs, mu) * count, 2 * len(P)))


def r_mu_p(rs, mu, p):
    """Orbit size scaled by the number of short roots pairing with mu to a
    power of p (including 1)."""
    mu = tuple(mu)
    S, _ = _pairing_matrices(rs.family, rs.rank)
    vals = S @ np.array(mu, dtype=np.int64)
    count = 0
    for v in vals:
        v = abs(int(v))
        if v == 0:
            continue
        while v % p == 0:
            v //= p
        if v == 1:
            count += 1
    return _as_int(Fraction(_orbit_size(rs, mu) * count, 2 * len(S)))


def relevant_subsystems(rs):
    """RelevanceRecords for the relevant proper standard subsystems, one
    per subsystem type, sorted by r."""
    records = {}
    # prune by monotonicity: supersets of an irrelevant support of zeros
    # correspond to smaller subsystems with larger r
    frontier = [tuple(range(rs.rank))]
    seen = set()
    while frontier:
        new = []
        for idx in frontier:
            for drop in idx:
                child = tuple(i for i in idx if i != drop)
                if child in seen:
                    continue
                seen.add(child)
                rec = _relevance_of(rs, child)
                if rec.relevant:
                    rec.name = canonical_subsystem_name(rs, child)
                    if rec.name not in records:
                        records[rec.name] = rec
                    new.append(child)
        frontier = new
    out = list(records.values())
    out.sort(key=lambda r: (r.r_short, r.name))
    return out


def canonical_subsystem_name(rs, indices):
    """Subsystem type name, canonical under diagram automorphisms of the
    parent (so triality images of D-type subsystems share a name)."""
    best = None
    for perm in datafiles.automorphism_maps(rs.family, rs.rank):
        image = sorted(perm[i] for i in indices)
        name = classify_subsystem(rs, image).name
        key = (name.count("A"), name)
        if best is None or key < best:
            best = key
    return best[1]


def _relevance_of(rs, indices):
    if indices:
        r_s, r_l = r_psi(rs, indices)
        sub = classify_subsystem(rs, indices)
    else:
        r_s, r_l = r_psi(rs, indices) if rs.rank == 0 else _r_empty(rs)
        sub = classify_subsystem(rs, [])
    rel = r_s <= rs.M or (r_l is not None and r_l <= rs.M)
    return RelevanceRecord(sub, r_s, r_l, rel)


def _r_empty(rs):
    index = weyl_order(rs.family, rs.rank)
    short = rs.short_roots()
    r_s = _as_int(Fraction(index * len(short), 2 * len(short)))
    if rs.e_ratio == 1:
        return r_s, None
    return r_s, _as_int(Fraction(index, 2))


def relevant_supports(rs):
    """All supports S of dominant weights whose zero set spans a relevant
    subsystem, as frozensets of 1-based positions."""
    out = set()
    frontier = [frozenset()]
    tried = {frozenset()}
    while frontier:
        new = []
        for sup in frontier:
            if sup:
                zeros = [i for i in range(rs.rank) if (i + 1) not in sup]
                rec = _relevance_of(rs, zeros)
                if not rec.relevant:
                    continue
                out.add(sup)
            for i in range(1, rs.rank + 1):
                child = sup | {i}
                if child not in tried:
                    tried.add(child)
                    new.append(child)
        frontier = new
    return out


def is_relevant_weight(rs, mu):
    """Whether a dominant weight's zero set spans a relevant subsystem."""
    mu = tuple(mu)
    if all(x == 0 for x in mu):
        return True
    zeros = [i for i in range(rs.rank) if mu[i] == 0]
    return _relevance_of(rs, zeros).relevant


def s_lambda(rs, lam):
    """(s, s') summed over all dominant weights below lam, without
    multiplicities."""
    s = sp = 0
    two_lengths = rs.e_ratio > 1
    for mu in dominant_below(rs, lam):
        s += r_mu(rs, mu)
        if two_lengths:
            sp += r_mu(rs, mu, long_roots=True)
    return s, (sp if two_lengths else s)


def s_lambda_p(triple):
    """(s_{lambda,p}, s'_{lambda,p}) using char-p multiplicities."""
    rs = triple.rs
    ch = irreducible_character(triple)
    s = sp = 0
    for mu, m in ch.dominant_mults.items():
        s += m * r_mu_p(rs, mu, triple.p)
        sp += m * r_mu(rs, mu, long_roots=rs.e_ratio > 1)
    return s, sp


def dim_g(rs):
    return rs.dim_g


def is_large(triple):
    """dim L(lambda) > dim G, decided by the Weyl dimension bound together
    with the embedded small-module dimension table."""
    rs = triple.rs
    wd = weyl_dimension(rs, triple.lam)
    if wd <= rs.dim_g:
        return False
    rows = datafiles.match_pattern_rows(
        "small_modules", triple.family, triple.rank, triple.lam, triple.p
    )
    if rows:
        dims = {
            datafiles.eval_expr(r["dim"], l=triple.rank, p=triple.p)
            for r in rows
        }
        assert len(dims) == 1, rows
        return dims.pop() > rs.dim_g
    return True


class ExclusionVerdict:
    def __init__(self, triple, excluded, route, values, witness=None):
        self.triple = triple
        self.excluded = excluded
        self.route = route
        self.values = values
        self.witness = witness

    def __repr__(self):
        return "ExclusionVerdict(%s, %s via %s)" % (
            self.triple.label(),
            "excluded" if self.excluded else "unexcluded",
            self.route,
        )

    def as_dict(self):
        return {
            "triple": self.triple.as_dict(),
            "excluded": self.excluded,
            "route": self.route,
            "values": self.values,
            "witness": self.witness,
        }


def exclusion_verdict(triple):
    """Excluded/unexcluded decision for a p-restricted large triple."""
    rs = triple.rs
    M = rs.M
    if not triple.is_p_restricted():
        raise ValueError("exclusion_verdict requires a p-restricted weight")
    two = rs.e_ratio > 1
    if triple.p > rs.e_ratio:
        # single irrelevant dominant weight below lambda already suffices
        doms = dominant_below(rs, triple.lam)
        for mu in doms:
            r_s = r_mu(rs, mu)
            if r_s <= M:
                continue
            r_l = r_mu(rs, mu, long_roots=True) if two else r_s
            if r_l > M:
                return ExclusionVerdict(
                    triple,
                    True,
                    "irrelevant-weight",
                    {"rShort": r_s, "rLong": r_l},
                    witness={"mu": list(mu)},
                )
        s, sp = s_lambda(rs, triple.lam)
        excluded = s > M and sp > M
        return ExclusionVerdict(
            triple,
            excluded,
            "sum-threshold",
            {"sLambda": s, "sLambdaPrime": sp, "M": M},
            witness={"comparison": "s > M and s' > M"} if excluded else None,
        )
    # p <= e branch: p-relevance plus certified multiplicity witnesses
    if not datafiles.match_pattern_rows(
        "p_relevant_weights", triple.family, triple.rank, triple.lam, triple.p
    ):
        return ExclusionVerdict(
            triple,
            True,
            "not-p-relevant",
            {"M": M},
            witness={"mu": list(triple.lam)},
        )
    rows = datafiles.match_pattern_rows(
        "exclusion_witnesses", triple.family, triple.rank, triple.lam, triple.p
    )
    if rows:
        s = sp = 0
        used = []
        for part in rows[0]["witnesses"].split(";"):
            pat, mult = part.split(":")
            mu = datafiles.parse_weight_pattern(
                pat, triple.family, triple.rank
            )
            m = int(mult)
            s += m * r_mu_p(rs, mu, triple.p)
            sp += m * r_mu(rs, mu, long_roots=True)
            used.append({"mu": list(mu), "mult": m})
        excluded = s > M and sp > M
        return ExclusionVerdict(
            triple,
            excluded,
            "p-sum-threshold",
            {"sLambdaP": s, "sLambdaPrimeP": sp, "M": M},
            witness={"terms": used} if excluded else None,
        )
    return ExclusionVerdict(triple, False, "p-relevant", {"M": M})


# -- the scan --------------------------------------------------------------

SCAN_PRIMES = (2, 3, 5, 7, 11, 13, 97)


def scan_candidates(max_rank=12, primes=SCAN_PRIMES, coeff_cap=7):
    """Canonicalized p-restricted candidate triples with relevant support
    (p > e) or p-relevant highest weight (p <= e)."""
    import itertools

    for family, ranks in _family_ranks(max_rank):
        for rank in ranks:
            rs = build_root_system(family, rank)
            sups = sorted(relevant_supports(rs), key=sorted)
            for p in primes:
                seen = set()
                if p > rs.e_ratio:
                    cap = min(coeff_cap, p - 1)
                    for sup in sups:
                        pos = sorted(sup)
                        for coeffs in itertools.product(
                            range(1, cap + 1), repeat=len(pos)
                        ):
                            lam = [0] * rank
                            for i, c in zip(pos, coeffs):
                                lam[i - 1] = c
                            lam = datafiles.canonical_labels(
                                family, rank, tuple(lam)
                            )
                            if lam not in seen:
                                seen.add(lam)
                                yield Triple(family, rank, lam, p)
                else:
                    for row in datafiles.load_rows("p_relevant_weights"):
                        if row["family"] != family:
                            continue
                        if not datafiles.rank_matches(row["rank"], rank):
                            continue
                        if not datafiles.p_matches(row["p"], p):
                            continue
                        lam = datafiles.parse_weight_pattern(
                            row["lambda"], family, rank
                        )
                        if lam is None:
                            continue
                        lam = datafiles.canonical_labels(family, rank, lam)
                        if lam not in seen and all(x < p for x in lam):
                            seen.add(lam)
                            yield Triple(family, rank, lam, p)


def _family_ranks(max_rank):
    yield "A", range(1, max_rank + 1)
    yield "B", range(2, max_rank + 1)
    yield "C", range(3, max_rank + 1)
    yield "D", range(4, max_rank + 1)
    yield "E6", [6]
    yield "E7", [7]
    yield "E8", [8]
    yield "F4", [4]
    yield "G2", [2]


def scan_unexcluded(max_rank=12, primes=SCAN_PRIMES, coeff_cap=7):
    """All unexcluded p-restricted large triples in the scan range."""
    out = []
    for t in scan_candidates(max_rank, primes, coeff_cap):
        if not is_large(t):
            continue
        if not exclusion_verdict(t).excluded:
            out.append(t)
    return out
