"""Command line interface: per-triple classification, reference table
emission, string/net bound reports, and the verification suites."""

import json
import re
import sys

import click

from .classifier import (
    SCAN_PRIMES,
    TABLE_DATASETS,
    classify,
    diff_golden,
    emit_table,
)
from .datafiles import parse_weight_pattern
from .stringnet import net_report, string_table
from .verify import SUITES, run_suite
from .weights import INFINITY, Triple

_TRIPLE_RE = re.compile(r"^([A-G])(\d+):([^:]+)(?::p(\d+))?$")


def parse_triple(text):
    """Parse a compact triple label such as ``A2:4w1:p5`` or ``A9:w5``
    (no characteristic means characteristic zero)."""
    m = _TRIPLE_RE.match(text.strip())
    if not m:
        raise click.BadParameter("bad triple %r" % text)
    letter, rank, lam_tok, p_tok = m.groups()
    rank = int(rank)
    family = letter if letter in "ABCD" else letter + str(rank)
    if "," in lam_tok:
        lam = tuple(int(c) for c in lam_tok.split(","))
        if len(lam) != rank:
            raise click.BadParameter("expected %d labels" % rank)
    else:
        lam = parse_weight_pattern(lam_tok, family, rank)
        if lam is None:
            raise click.BadParameter("weight %r does not fit rank %d"
                                     % (lam_tok, rank))
    p = int(p_tok) if p_tok else INFINITY
    return Triple(family, rank, lam, p)


def _render_report(rep):
    rows = rep.to_rows()
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        click.echo("  ".join(c.ljust(w) for c, w in zip(r, widths)))
    click.echo("thresholds: %s" % rep.thresholds)
    click.echo("flags: %s" % rep.flags)


@click.group()
def main():
    """Combinatorial screening of irreducible module triples."""


@main.command("classify")
@click.option("--family", required=True,
              type=click.Choice(["A", "B", "C", "D", "E6", "E7", "E8",
                                 "F4", "G2"]))
@click.option("--rank", required=True, type=int)
@click.option("--lambda", "lam", required=True,
              help="comma separated Dynkin labels")
@click.option("--p", "p", default="0",
              help="characteristic (0 for characteristic zero)")
@click.option("--json", "as_json", is_flag=True)
def classify_cmd(family, rank, lam, p, as_json):
    """Classify one triple and print the verdict with its trail."""
    labels = tuple(int(c) for c in lam.split(","))
    if len(labels) != rank:
        raise click.BadParameter("expected %d labels" % rank)
    pval = INFINITY if p in ("0", "inf") else int(p)
    verdict = classify(Triple(family, rank, labels, pval))
    if as_json:
        click.echo(json.dumps(verdict.as_dict(), indent=2))
        return
    click.echo("%s: %s" % (verdict.triple.label(), verdict.status))
    if verdict.stabilizer is not None:
        click.echo("stabilizer: %s" % verdict.stabilizer)
    if verdict.stabilizer_gr is not None:
        click.echo("stabilizer (lifted): %s" % verdict.stabilizer_gr)
    for stepd in verdict.trail:
        click.echo("  %-20s %-32s %s"
                   % (stepd["step"], stepd["ref"], stepd["values"]))


@main.command("table")
@click.argument("name", type=click.Choice(sorted(TABLE_DATASETS)))
@click.option("--max-rank", type=int, default=None)
@click.option("--primes", default=None,
              help="comma separated characteristics for instantiation")
@click.option("--diff", "do_diff", is_flag=True,
              help="recompute and diff against the embedded golden")
def table_cmd(name, max_rank, primes, do_diff):
    """Emit a reference table, or diff it against its recomputation."""
    pr = (
        tuple(int(x) for x in primes.split(","))
        if primes else SCAN_PRIMES
    )
    if do_diff:
        d = diff_golden(name, max_rank=max_rank, primes=pr)
        if d:
            click.echo(d, nl=False)
            sys.exit(1)
        click.echo("ok: %s matches golden" % name)
        return
    click.echo(emit_table(name, max_rank=max_rank, primes=pr), nl=False)


@main.command("string-table")
@click.option("--triple", "triple_s", required=True,
              help="e.g. A2:4w1:p5")
@click.option("--root", type=click.Choice(["short", "long"]),
              default="short")
@click.option("--json", "as_json", is_flag=True)
def string_table_cmd(triple_s, root, as_json):
    """Bound report over the root-direction strings of a module."""
    triple = parse_triple(triple_s)
    rep = string_table(triple, root=root)
    if as_json:
        click.echo(json.dumps(rep.as_dict(), indent=2, default=str))
        return
    click.echo("%s, %s-root strings" % (triple.label(), root))
    _render_report(rep)


@main.command("net-report")
@click.option("--triple", "triple_s", required=True,
              help="e.g. A9:w5:p3")
@click.option("--psi", required=True,
              help="subsystem simple roots, e.g. a1,a3")
@click.option("--json", "as_json", is_flag=True)
def net_report_cmd(triple_s, psi, as_json):
    """Bound report over the subsystem nets of a module."""
    triple = parse_triple(triple_s)
    try:
        indices = [int(tok.strip().lstrip("a")) - 1
                   for tok in psi.split(",")]
    except ValueError:
        raise click.BadParameter("bad subsystem %r" % psi)
    if any(i < 0 or i >= triple.rank for i in indices):
        raise click.BadParameter("root index out of range")
    rep = net_report(triple, indices)
    if as_json:
        click.echo(json.dumps(rep.as_dict(), indent=2, default=str))
        return
    click.echo("%s, %s-nets" % (triple.label(), rep.unit_label))
    _render_report(rep)


@main.command("verify")
@click.option("--suite", type=click.Choice(SUITES), default="all")
def verify_cmd(suite):
    """Run a cross-check suite; nonzero exit on any failure."""
    results = run_suite(suite)
    failed = 0
    for name, ok, detail in results:
        click.echo("%-36s %s" % (name, "PASS" if ok else "FAIL"))
        if not ok and detail:
            click.echo("    " + detail)
        failed += not ok
    click.echo("%d/%d checks passed" % (len(results) - failed,
                                        len(results)))
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
