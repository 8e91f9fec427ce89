"""Embedded reference datasets (TSV) and the pattern language used to key
them.

Rank conditions: ``"5"``, ``">=3"``, ``"4-8"``, optionally with a parity
tag (``">=3,odd"``).  Characteristic conditions: ``any``, ``p=2``,
``p>=3``, ``p!=5``.  Weight patterns are sums of terms ``[coeff]w<idx>``
where ``<idx>`` is a digit string or one of ``l``, ``l-1``, ``l-2``
(instantiated at the given rank).  Multiplicity and dimension expressions
are arithmetic in ``l`` and ``p`` with the divisibility indicator
``z(a, b)`` (1 iff a divides b).
"""

import csv
import os
import re
from functools import lru_cache

_DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def data_dir():
    return os.environ.get("TGS_DATA_DIR", _DATA_DIR)


@lru_cache(maxsize=None)
def load_rows(name):
    """Rows of data/<name>.tsv as a tuple of dicts."""
    path = os.path.join(data_dir(), name + ".tsv")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh, delimiter="\t")
        return tuple(dict(r) for r in reader)


def zeta(a, b):
    """1 iff a divides b."""
    if a == float("inf") or b == float("inf"):
        return 0
    return 1 if b % a == 0 else 0


def eval_expr(expr, l=None, p=None, q=None):
    """Evaluate an arithmetic expression in l, p, q and z(a, b)."""
    ns = {"z": zeta, "gcd": _gcd}
    if l is not None:
        ns["l"] = l
    if p is not None:
        ns["p"] = p
    if q is not None:
        ns["q"] = q
    return eval(expr, {"__builtins__": {}}, ns)  # noqa: S307 - trusted data


def _gcd(a, b):
    if a == float("inf"):
        return b
    if b == float("inf"):
        return a
    while b:
        a, b = b, a % b
    return a


def rank_matches(cond, rank):
    cond = cond.strip()
    parity = None
    if "," in cond:
        cond, parity = (x.strip() for x in cond.split(","))
    if parity == "odd" and rank % 2 == 0:
        return False
    if parity == "even" and rank % 2 == 1:
        return False
    if cond in ("", "*", "any"):
        return True
    if cond.startswith(">="):
        return rank >= int(cond[2:])
    if cond.startswith("<="):
        return rank <= int(cond[2:])
    if "-" in cond:
        lo, hi = cond.split("-")
        return int(lo) <= rank <= int(hi)
    return rank == int(cond)


def p_matches(cond, p):
    cond = cond.strip()
    if cond in ("", "any", "*"):
        return True
    inf = p == float("inf")
    if cond.startswith("p>="):
        return inf or p >= int(cond[3:])
    if cond.startswith("p<="):
        return (not inf) and p <= int(cond[3:])
    if cond.startswith("p!="):
        return inf or p != int(cond[3:])
    if cond.startswith("p="):
        return (not inf) and p == int(cond[2:])
    raise ValueError("bad characteristic condition %r" % cond)


_TERM_RE = re.compile(r"^(\d*)w(l-2|l-1|l|\d+)$")


def parse_weight_pattern(pattern, family, rank):
    """Instantiate a weight pattern as a label tuple, or None if it does not
    fit the rank (index out of range or clashing terms)."""
    pattern = pattern.strip()
    labels = [0] * rank
    if pattern == "0":
        return tuple(labels)
    for term in pattern.split("+"):
        m = _TERM_RE.match(term.strip())
        if not m:
            raise ValueError("bad weight term %r" % term)
        coeff = int(m.group(1)) if m.group(1) else 1
        idx_tok = m.group(2)
        if idx_tok == "l":
            idx = rank
        elif idx_tok == "l-1":
            idx = rank - 1
        elif idx_tok == "l-2":
            idx = rank - 2
        else:
            idx = int(idx_tok)
        if not 1 <= idx <= rank:
            return None
        if labels[idx - 1]:
            return None
        labels[idx - 1] = coeff
    return tuple(labels)


def weight_pattern_support(pattern, family, rank):
    """Support positions (1-based set) of a pattern, or None."""
    inst = parse_weight_pattern(pattern, family, rank)
    if inst is None:
        return None
    return frozenset(i + 1 for i, c in enumerate(inst) if c)


# -- diagram automorphisms ------------------------------------------------


def automorphism_images(family, rank, labels):
    """All images of a label tuple under diagram automorphisms (incl. id)."""
    labels = tuple(labels)
    out = {labels}
    if family == "A":
        out.add(labels[::-1])
    elif family == "D":
        swapped = labels[: rank - 2] + (labels[rank - 1], labels[rank - 2])
        out.add(swapped)
        if rank == 4:
            a, b, c, d = labels
            for x, y, zz in (
                (a, c, d), (a, d, c), (c, a, d), (c, d, a), (d, a, c), (d, c, a)
            ):
                out.add((x, b, y, zz))
    elif family == "E6":
        a1, a2, a3, a4, a5, a6 = labels
        out.add((a6, a2, a5, a4, a3, a1))
    return out


def automorphism_maps(family, rank):
    """The permutations (as index tuples) realizing the automorphisms."""
    ident = tuple(range(rank))
    maps = {ident}
    if family == "A":
        maps.add(tuple(reversed(range(rank))))
    elif family == "D":
        maps.add(tuple(range(rank - 2)) + (rank - 1, rank - 2))
        if rank == 4:
            for perm in (
                (0, 2, 3), (0, 3, 2), (2, 0, 3), (2, 3, 0), (3, 0, 2), (3, 2, 0)
            ):
                m = [0, 1, 0, 0]
                m[0], m[2], m[3] = perm
                maps.add(tuple(m))
    elif family == "E6":
        maps.add((5, 1, 4, 3, 2, 0))
    return maps


def canonical_labels(family, rank, labels):
    """Lexicographically minimal automorphism image (scan deduplication)."""
    return min(automorphism_images(family, rank, labels))


# -- modular multiplicity lookup ------------------------------------------


def lookup_multiplicities(family, rank, lam, p):
    """Dominant multiplicity dict for (family, rank, lam, p) from the
    embedded dataset, matching modulo diagram automorphisms.  None if the
    triple is not covered."""
    lam = tuple(lam)
    rows = load_rows("multiplicities")
    for perm in automorphism_maps(family, rank):
        image = tuple(lam[perm[i]] for i in range(rank))
        found = {}
        hit = False
        for row in rows:
            if row["family"] != family:
                continue
            if not rank_matches(row["rank"], rank):
                continue
            if not p_matches(row["p"], p):
                continue
            inst = parse_weight_pattern(row["lambda"], family, rank)
            if inst != image:
                continue
            hit = True
            mu = parse_weight_pattern(row["mu"], family, rank)
            if mu is None:
                raise ValueError("bad mu pattern %r" % row["mu"])
            mult = eval_expr(row["mult"], l=rank, p=p)
            if mult < 0:
                raise ValueError(
                    "negative multiplicity from %r" % row
                )
            if mult:
                found[mu] = found.get(mu, 0) + mult
        if hit:
            # map back through the (involutive) permutation
            inv = [0] * rank
            for i, j in enumerate(perm):
                inv[j] = i
            return {
                tuple(mu[inv[i]] for i in range(rank)): m
                for mu, m in found.items()
            }
    return None


def match_pattern_rows(name, family, rank, lam, p):
    """All rows of a pattern table matching (family, rank, lam, p) modulo
    diagram automorphisms."""
    lam = tuple(lam)
    images = automorphism_images(family, rank, lam)
    out = []
    for row in load_rows(name):
        if row["family"] != family:
            continue
        if not rank_matches(row["rank"], rank):
            continue
        if "p" in row and not p_matches(row["p"], p):
            continue
        inst = parse_weight_pattern(row["lambda"], family, rank)
        if inst is not None and inst in images:
            out.append(row)
    return out


def support_matches(name, family, rank, lam, p=None):
    """Whether the support of lam matches a support-pattern table row
    (modulo diagram automorphisms)."""
    images = automorphism_images(family, rank, tuple(lam))
    supports = {
        frozenset(i + 1 for i, c in enumerate(img) if c) for img in images
    }
    for row in load_rows(name):
        if row["family"] != family:
            continue
        if not rank_matches(row["rank"], rank):
            continue
        if p is not None and "p" in row and not p_matches(row["p"], p):
            continue
        sup = weight_pattern_support(row["lambda"], family, rank)
        if sup is not None and sup in supports:
            return True
    return False
