"""Pipeline orchestration: per-triple verdicts with proof trails, plus
emission and diffing of the embedded reference tables.

The classifier runs the stages in a fixed order: canonicalize, split off
non-restricted weights (Frobenius layers and the tensor battery), then for
p-restricted weights: adjoint / small lookups, the exclusion thresholds,
the non-TGS table, the string-bound discharge, and the tabulated net and
cluster coverage.  Every numeric claim in the trail records the operation
that produced it.
"""

import difflib
import io
import os

from . import datafiles, sl2jordan
from .datafiles import eval_expr, match_pattern_rows, p_matches, rank_matches
from .exclusion import (
    SCAN_PRIMES,
    exclusion_verdict,
    is_large,
    scan_unexcluded,
    _family_ranks,
)
from .rootsys import build_root_system
from .stringnet import (
    min_unipotent_class_dim,
    string_discharge,
    string_table,
    u_arms_ok,
)
from .weights import (
    INFINITY,
    MultiplicityUnavailableError,
    Triple,
    irreducible_character,
    weyl_dimension,
)

NOT_LARGE_ADJOINT = "NOT_LARGE_ADJOINT"
SMALL = "SMALL"
LARGE_EXCLUDED = "LARGE_EXCLUDED"
LARGE_TGS = "LARGE_TGS"
LARGE_NON_TGS = "LARGE_NON_TGS"
UNRESOLVED = "UNRESOLVED"

STATUSES = (
    NOT_LARGE_ADJOINT,
    SMALL,
    LARGE_EXCLUDED,
    LARGE_TGS,
    LARGE_NON_TGS,
    UNRESOLVED,
)


class Verdict:
    """Classification outcome with an ordered, recomputable trail."""

    def __init__(self, triple, status, stabilizer=None, stabilizer_gr=None,
                 trail=None):
        self.triple = triple
        self.status = status
        self.stabilizer = stabilizer
        self.stabilizer_gr = stabilizer_gr
        self.trail = trail or []

    def __repr__(self):
        return "Verdict(%s, %s)" % (self.triple.label(), self.status)

    def as_dict(self):
        out = {
            "triple": self.triple.label(),
            "status": self.status,
            "trail": self.trail,
        }
        if self.stabilizer is not None:
            out["stabilizer"] = self.stabilizer
        return out


def _step(trail, step, ref, **values):
    trail.append({"step": step, "ref": ref, "values": values})


# -- stabilizer label instantiation ---------------------------------------

import re as _re

_BRACE_RE = _re.compile(r"\{([^{}]+)\}")
_COND_RE = _re.compile(r"^\((\d+),(p|l)\)(\^(\d+))?$")


def instantiate_stabilizer(pattern, rank, p, q=None):
    """Fill a stabilizer label template: ``{expr}`` arithmetic in l/p/q,
    ``(n,p)``/``(n,l)`` conditional cyclic factors (gcd; dropped when
    trivial), ``(q)`` the twist field size."""
    if pattern in ("", None):
        return None
    pfin = 0 if p == INFINITY else p

    def repl(m):
        return str(eval_expr(m.group(1), l=rank, p=pfin, q=q))

    s = _BRACE_RE.sub(repl, pattern)
    if q is not None:
        s = s.replace("(q)", "(%d)" % q)
    factors = []
    for f in s.split("."):
        m = _COND_RE.match(f)
        if m:
            n = int(m.group(1))
            if m.group(2) == "l":
                # cyclic factor present only when the rank divides into it
                g = n if rank and rank % n == 0 else 1
            else:
                # killed in characteristic dividing the order
                g = 1 if pfin and n % pfin == 0 else n
            if g == 1:
                continue
            f = str(g) + (("^" + m.group(4)) if m.group(4) else "")
        if f == "1":
            continue
        factors.append(f)
    return ".".join(factors) if factors else "1"


# -- adjoint highest weight ------------------------------------------------


def adjoint_weight(rs):
    """Label tuple of the highest root (the adjoint module's highest
    weight)."""
    theta = max(rs.positive_roots, key=lambda c: sum(c))
    return tuple(
        sum(c * rs.cartan[i][j] for j, c in enumerate(theta))
        for i in range(rs.rank)
    )


# -- non-restricted weights: Frobenius layers and the tensor battery ------


def frobenius_layers(lam, p):
    """Base-p digit layers of a label tuple: lam = sum_i p^i * layer_i."""
    layers = []
    rest = list(lam)
    while any(rest):
        layers.append(tuple(c % p for c in rest))
        rest = [c // p for c in rest]
    return layers


def _small_factor_dim(triple):
    """Exact dim of L(lam) when it appears in the small-module table, else
    None (meaning dim > M)."""
    rows = match_pattern_rows(
        "small_modules", triple.family, triple.rank, triple.lam, triple.p
    )
    if not rows:
        return None
    dims = {
        eval_expr(r["dim"], l=triple.rank, p=triple.p) for r in rows
    }
    assert len(dims) == 1, rows
    return dims.pop()


# tensor pairs the mechanical bound does not reach; discharged by the
# dedicated eigenvalue-multiplicity / Jordan-excess arguments
_SPECIAL_PAIRS = (
    ("A", ">=3", "w2", "w1"),
    ("A", ">=3", "w2", "wl"),
    ("A", "3", "w2", "w2"),
    ("B", "2", "w2", "w1"),
    ("B", "2", "w2", "w2"),
    ("B", ">=2", "w1", "w1"),
    ("C", ">=3", "w1", "w1"),
    ("D", ">=4", "w1", "w1"),
    ("D", "4-5", "wl", "w1"),
)


def _pair_matches(family, rank, lam_a, lam_b, pat_a, pat_b):
    """Whether the factor pair matches the pattern pair under a single
    diagram automorphism applied to both factors at once."""
    ia = datafiles.parse_weight_pattern(pat_a, family, rank)
    ib = datafiles.parse_weight_pattern(pat_b, family, rank)
    if ia is None or ib is None:
        return False
    lam_a, lam_b = tuple(lam_a), tuple(lam_b)
    for perm in datafiles.automorphism_maps(family, rank):
        im_a = tuple(lam_a[perm[i]] for i in range(rank))
        im_b = tuple(lam_b[perm[i]] for i in range(rank))
        if (im_a, im_b) in ((ia, ib), (ib, ia)):
            return True
    return False


def _string_bounds(triple):
    """(cs_by_r, cu) per direction for a small factor; cs values are the
    tabulated per-r totals, cu the unipotent total."""
    rs = triple.rs
    out = {}
    kinds = ["short"] if rs.e_ratio == 1 else ["short", "long"]
    for kind in kinds:
        rep = string_table(triple, root=kind)
        out[kind] = (rep.cs_totals, rep.cu_total)
    return out


def _tensor_battery(triple, layers, trail):
    """Two-factor bound battery: module codims of one factor scale by the
    dimension of the other."""
    rank, p = triple.rank, triple.p
    rs = triple.rs
    M = rs.M
    factors = [
        Triple(triple.family, rank, lam, p) for lam in layers if any(lam)
    ]
    dims = [_small_factor_dim(t) for t in factors]
    _step(
        trail, "tensor-factors", "classifier.frobenius_layers",
        layers=[t.label() for t in factors],
        dims=[d if d is not None else "> M" for d in dims],
        M=M,
    )
    if any(d is None for d in dims):
        return Verdict(triple, LARGE_TGS, trail=trail)
    if len(factors) >= 3:
        # the product of any two small-factor dims already exceeds M
        others = sorted(dims)[:2]
        _step(
            trail, "layer-product", "classifier._tensor_battery",
            bound=others[0] * others[1], M=M,
        )
        return Verdict(triple, LARGE_TGS, trail=trail)
    (ta, tb), (da, db) = factors, dims
    for t1, t2, d2 in ((ta, tb, db), (tb, ta, da)):
        try:
            bounds = _string_bounds(t1)
        except MultiplicityUnavailableError:
            continue
        long_kind = "long" if "long" in bounds else "short"
        cu_short = bounds["short"][1]
        cu_long = bounds[long_kind][1]
        u_ok = u_arms_ok(
            rs, p,
            None if cu_short is None else cu_short * d2,
            None if cu_long is None else cu_long * d2,
        )
        ss_ddag = any(
            all(v * d2 > M for v in cs.values()) and cs
            for cs, _ in bounds.values()
        )
        ss_dag = any(
            cs and all(v * d2 > rs.m_r(r)[0] for r, v in cs.items())
            for cs, _ in bounds.values()
        )
        if (ss_ddag or ss_dag) and u_ok:
            _step(
                trail, "tensor-bounds", "stringnet.string_table",
                factor=t1.label(), otherDim=d2,
                cu={"short": cu_short, "long": cu_long},
                ssStrict=ss_ddag, ssOrder=ss_dag, M=M,
            )
            return Verdict(triple, LARGE_TGS, trail=trail)
    for fam, rcond, pa, pb in _SPECIAL_PAIRS:
        if fam != triple.family or not rank_matches(rcond, rank):
            continue
        if _pair_matches(triple.family, rank, ta.lam, tb.lam, pa, pb):
            values = {"pair": [ta.label(), tb.label()]}
            if pa == pb == "w1" and triple.family in "BCD":
                values["centralizerExcess"] = (
                    sl2jordan.min_classical_centralizer_excess(
                        triple.family, rank, p
                    )
                )
            _step(
                trail, "tensor-special", "sl2jordan.centralizer_excess",
                **values,
            )
            return Verdict(triple, LARGE_TGS, trail=trail)
    return Verdict(triple, UNRESOLVED, trail=trail)


# -- the classifier --------------------------------------------------------


def classify(triple):
    """Full pipeline verdict for one triple."""
    family, rank, p = triple.family, triple.rank, triple.p
    trail = []
    canon = datafiles.canonical_labels(family, rank, triple.lam)
    if canon != tuple(triple.lam):
        _step(
            trail, "canonicalize", "datafiles.canonical_labels",
            image=list(canon),
        )
        triple = Triple(family, rank, canon, p)
    lam = triple.lam
    if not any(lam):
        raise ValueError("zero highest weight")
    rs = triple.rs

    if p != INFINITY and not triple.is_p_restricted():
        layers = frobenius_layers(lam, p)
        nonzero = [i for i, l in enumerate(layers) if any(l)]
        if len(nonzero) == 1:
            # a pure Frobenius twist acts through the untwisted module
            base = layers[nonzero[0]]
            _step(
                trail, "frobenius-untwist", "classifier.frobenius_layers",
                base=list(base), power=nonzero[0],
            )
            inner = classify(Triple(family, rank, base, p))
            inner.trail = trail + inner.trail
            inner.triple = triple
            return inner
        # twisted-diagonal rows of the non-TGS table
        for row in datafiles.load_rows("non_tgs_triples"):
            if not row.get("twist") or row["family"] != family:
                continue
            if not rank_matches(row["rank"], rank):
                continue
            if not p_matches(row["p"], p):
                continue
            pat_a, pat_b = row["twist"].split("*")
            if len(nonzero) == 2 and nonzero[0] == 0 and _pair_matches(
                family, rank,
                layers[0], layers[nonzero[1]], pat_a, pat_b,
            ):
                q = p ** nonzero[1]
                _step(
                    trail, "twisted-diagonal", "datafiles:non_tgs_triples",
                    q=q,
                )
                return Verdict(
                    triple, LARGE_NON_TGS,
                    stabilizer=instantiate_stabilizer(
                        row["stab_v"], rank, p, q=q
                    ),
                    stabilizer_gr=instantiate_stabilizer(
                        row["stab_gr"], rank, p, q=q
                    ),
                    trail=trail,
                )
        return _tensor_battery(triple, layers, trail)

    # p-restricted path
    if lam == adjoint_weight(rs):
        _step(trail, "adjoint", "classifier.adjoint_weight")
        stab = match_pattern_rows("small_triples", family, rank, lam, p)
        return Verdict(
            triple, NOT_LARGE_ADJOINT,
            stabilizer=(
                instantiate_stabilizer(stab[0]["stab_v"], rank, p)
                if stab else None
            ),
            stabilizer_gr=(
                instantiate_stabilizer(stab[0]["stab_gr"], rank, p)
                if stab else None
            ),
            trail=trail,
        )
    if not is_large(triple):
        _step(
            trail, "small", "exclusion.is_large",
            dimG=rs.dim_g, weylDim=weyl_dimension(rs, lam),
        )
        stab = match_pattern_rows("small_triples", family, rank, lam, p)
        if stab:
            return Verdict(
                triple, SMALL,
                stabilizer=instantiate_stabilizer(
                    stab[0]["stab_v"], rank, p
                ),
                stabilizer_gr=instantiate_stabilizer(
                    stab[0]["stab_gr"], rank, p
                ),
                trail=trail,
            )
        return Verdict(triple, UNRESOLVED, trail=trail)
    ev = exclusion_verdict(triple)
    _step(
        trail, "exclusion", "exclusion.exclusion_verdict",
        route=ev.route, **ev.values,
    )
    if ev.excluded:
        return Verdict(triple, LARGE_EXCLUDED, trail=trail)
    non_tgs = [
        row
        for row in match_pattern_rows(
            "non_tgs_triples", family, rank, lam, p
        )
        if not row.get("twist")
    ]
    if non_tgs:
        _step(trail, "non-tgs-table", "datafiles:non_tgs_triples")
        row = non_tgs[0]
        return Verdict(
            triple, LARGE_NON_TGS,
            stabilizer=instantiate_stabilizer(row["stab_v"], rank, p),
            stabilizer_gr=instantiate_stabilizer(row["stab_gr"], rank, p),
            trail=trail,
        )
    verdict = string_discharge(triple)
    if verdict["ok"]:
        _step(
            trail, "string-discharge", "stringnet.string_discharge",
            tR={str(r): v for r, v in verdict["t_r"].items()},
            cu=verdict["cu"], M=rs.M,
            ssStrict=verdict["ss_ddag"], ssOrder=verdict["ss_dag"],
            minClassDim=min_unipotent_class_dim(rs),
        )
        return Verdict(triple, LARGE_TGS, trail=trail)
    if match_pattern_rows("stage3_coverage", family, rank, lam, p):
        _step(trail, "net-cluster-coverage", "datafiles:stage3_coverage")
        return Verdict(triple, LARGE_TGS, trail=trail)
    return Verdict(triple, UNRESOLVED, trail=trail)


# -- reference table emission ---------------------------------------------

TABLE_DATASETS = {
    "small": "small_triples",
    "non_tgs": "non_tgs_triples",
    "relevant": "relevant_weights",
    "p_relevant": "p_relevant_weights",
    "unexcluded": "unexcluded_triples",
    "remaining": "remaining_triples",
    "small_modules": "small_modules",
    "string_props": "string_props",
    "m_r": "m_r",
}


def _rows_to_tsv(header, rows):
    buf = io.StringIO()
    buf.write("\t".join(header) + "\n")
    for row in sorted(rows):
        buf.write("\t".join(str(x) for x in row) + "\n")
    return buf.getvalue()


def _instantiate_members(name, max_rank, primes):
    """Concrete (family, rank, p, lambda) membership rows of a pattern
    table over the given ranges."""
    out = set()
    has_p = "p" in load_header(name)
    for family, ranks in _family_ranks(max_rank):
        for rank in ranks:
            for row in datafiles.load_rows(name):
                if row["family"] != family:
                    continue
                if not rank_matches(row["rank"], rank):
                    continue
                inst = datafiles.parse_weight_pattern(
                    row["lambda"], family, rank
                )
                if inst is None or not any(inst):
                    continue
                inst = datafiles.canonical_labels(family, rank, inst)
                lam_s = ",".join(str(c) for c in inst)
                if has_p:
                    for p in primes:
                        if p_matches(row["p"], p) and all(
                            c < p for c in inst
                        ):
                            out.add((family, rank, p, lam_s))
                else:
                    out.add((family, rank, 0, lam_s))
    return out


def load_header(name):
    rows = datafiles.load_rows(name)
    return tuple(rows[0].keys()) if rows else ()


def emit_table(name, max_rank=None, primes=SCAN_PRIMES):
    """Byte-stable TSV for a reference table; with max_rank, the pattern
    rows are instantiated into concrete memberships."""
    if name not in TABLE_DATASETS:
        raise KeyError("unknown table %r" % name)
    if name == "m_r":
        rows = []
        for family, ranks in _family_ranks(max_rank or 12):
            for rank in ranks:
                rs = build_root_system(family, rank)
                rows.append(
                    (family, rank, rs.M, rs.m_r(2)[0], rs.m_r(3)[0])
                )
        return _rows_to_tsv(("family", "rank", "M", "M_2", "M_3"), rows)
    dataset = TABLE_DATASETS[name]
    if max_rank is None:
        rows = datafiles.load_rows(dataset)
        header = load_header(dataset)
        return _rows_to_tsv(
            header, [tuple(r[h] for h in header) for r in rows]
        )
    members = _instantiate_members(dataset, max_rank, primes)
    if any(m[2] for m in members):
        return _rows_to_tsv(
            ("family", "rank", "p", "lambda"), sorted(members)
        )
    return _rows_to_tsv(
        ("family", "rank", "lambda"),
        sorted((f, r, s) for f, r, _, s in members),
    )


def _diff(got, want, name):
    return "".join(
        difflib.unified_diff(
            want.splitlines(keepends=True),
            got.splitlines(keepends=True),
            fromfile="golden/" + name,
            tofile="computed/" + name,
        )
    )


def diff_golden(name, max_rank=None, primes=SCAN_PRIMES):
    """Recompute a table where a computed route exists and diff against
    the embedded golden; empty string on success."""
    if name == "m_r":
        golden = emit_table("m_r", max_rank=max_rank)
        path = os.path.join(datafiles.data_dir(), "m_r.tsv")
        with open(path, encoding="utf-8") as fh:
            want = fh.read()
        if max_rank is not None and max_rank != 12:
            want = "".join(
                line
                for i, line in enumerate(want.splitlines(keepends=True))
                if i == 0 or int(line.split("\t")[1]) <= max_rank
            )
        return _diff(golden, want, name)
    if name in ("unexcluded", "remaining"):
        max_rank = max_rank or 12
        unex = scan_unexcluded(max_rank=max_rank, primes=primes)
        if name == "unexcluded":
            keep = unex
        else:
            keep = [t for t in unex if not string_discharge(t)["ok"]]
        got = _rows_to_tsv(
            ("family", "rank", "p", "lambda"),
            sorted(
                (
                    t.family, t.rank, t.p,
                    ",".join(str(c) for c in t.lam),
                )
                for t in keep
            ),
        )
        want = emit_table(name, max_rank=max_rank, primes=primes)
        return _diff(got, want, name)
    got = emit_table(name)
    rows = datafiles.load_rows(TABLE_DATASETS[name])
    if not rows:
        return _diff(got, "(empty dataset)\n", name)
    return ""
