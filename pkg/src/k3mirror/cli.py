"""Command line interface: ``k3mirror <command> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input.
"""

from __future__ import annotations

import json
import sys

import click

from . import diaggrp, lattices, pipeline
from .errors import K3MirrorError
from .invpoly import InvertiblePolynomial, enumerate_form_p
from .weights import PRIMES, admissible_families, normalize

PRIME = click.Choice([str(p) for p in PRIMES])


def _fail(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(2)


def _emit(obj):
    click.echo(json.dumps(obj, indent=2))


def _poly(text: str) -> InvertiblePolynomial:
    return InvertiblePolynomial.parse(text)


@click.group()
def cli():
    """Invariant lattices and BHCR mirrors of p-cyclic K3 surfaces."""


@cli.command("enumerate")
@click.option("--prime", "p", type=PRIME, required=True)
@click.option("--weights", help="w1,w2,w3,w4,d; default: every admissible weight system")
def enumerate_cmd(p, weights):
    """List the invertible polynomials v^p + f for one or all weight systems."""
    p = int(p)
    if weights:
        try:
            *w, d = [int(s) for s in weights.split(",")]
        except ValueError:
            _fail(f"bad weights {weights!r}")
        if len(w) != 4:
            _fail("expected w1,w2,w3,w4,d")
        systems = [normalize(w, d)]
    else:
        systems = [f.weight_system for f in admissible_families(p)]
    catalog = pipeline.Catalog(pipeline.load_golden(), p)
    out = []
    for ws in systems:
        for W in enumerate_form_p(ws, p):
            entry = catalog.lookup(W)
            out.append({"weight_system": str(ws), "polynomial": str(W),
                        "yonemura_no": entry.no if entry else None})
    _emit(out)


@cli.command()
@click.option("--poly", required=True, help='e.g. "x^2+y^3+z^8+w^24"')
@click.option("--prime", "p", type=PRIME, required=True)
@click.option("--group", "group", help="generators added to J_W, e.g. 0,1/3,0,2/3;...")
@click.option("--group-index", type=int, help="pick the unique G with this |G/J_W|")
def analyze(poly, p, group, group_index):
    """Analyze one pair (W, G) and its BHCR dual."""
    W = _poly(poly)
    if group is not None and group_index is not None:
        _fail("use only one of --group and --group-index")
    if group_index is not None:
        G = pipeline.group_by_index(W, group_index)
    else:
        G = pipeline.group_from_literal(W, group)
    _emit(pipeline.analyze(W, G, int(p)).to_dict())


@cli.command()
@click.option("--poly", required=True)
@click.option("--group", default="", help="generators added to J_W")
def dual(poly, group):
    """Print the transpose polynomial and the dual group."""
    W = _poly(poly)
    G = pipeline.group_from_literal(W, group)
    Wt = W.transpose()
    Gt = diaggrp.dual_group(G)
    J, Jt = diaggrp.j_group(W), diaggrp.j_group(Wt)
    _emit({
        "polynomial": str(W),
        "group_generators": diaggrp.format_group_literal(G.reporting_generators(J)),
        "index": G.order // J.order,
        "dual_polynomial": str(Wt),
        "dual_group_generators": diaggrp.format_group_literal(Gt.reporting_generators(Jt)),
        "dual_group_index": Gt.order // Jt.order if Jt <= Gt else None,
    })


@cli.command()
@click.option("--expr", required=True, help='e.g. "U+U(3)+A2^2+E8"')
def lattice(expr):
    """Rank, signature and discriminant group of a lattice expression."""
    L = lattices.make(expr)
    disc = lattices.discriminant(L)
    _emit({"expr": expr, "rank": L.rank, "signature": list(lattices.signature(L)),
           "det": L.det, "even": L.is_even, "invariant_factors": list(disc.invariant_factors),
           "length": disc.length, "p_elementary_for": disc.p_elementary_for})


@cli.command()
@click.option("--prime", "p", type=PRIME, required=True)
@click.option("--r", "r", type=int, required=True)
@click.option("--a", "a", type=int, required=True)
def mirror(p, r, a):
    """Mirror invariants (20-r, a) with a check of T = U + S(mirror)."""
    p = int(p)
    row = lattices.classify(p, r, a)
    r2, a2 = lattices.mirror_invariants(p, r, a)
    _emit({"p": p, "r": r, "a": a, "S": row.S_name, "T": row.T_name,
           "mirror_r": r2, "mirror_a": a2,
           "decomposition_ok": lattices.verify_mirror_decomposition(p, r, a)})


@cli.command("verify-tables")
@click.option("--prime", "p", type=PRIME, required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "md"]), default="md")
@click.option("--golden", type=click.Path(exists=True, dir_okay=False),
              help="override the embedded golden tables")
@click.option("--jobs", type=int, default=1, show_default=True)
def verify_tables(p, fmt, golden, jobs):
    """Regenerate every (W, G) pair for a prime and diff against the golden table."""
    report = pipeline.verify_tables(int(p), golden, jobs=jobs)
    click.echo(report.render(fmt), nl=False)
    if fmt == "csv":
        for m in report.mismatches:
            click.echo(f"MISMATCH: {m}", err=True)
    sys.exit(0 if report.ok else 1)


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="k3mirror", standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(2)
    except click.Abort:
        sys.exit(2)
    except (K3MirrorError, ValueError) as exc:
        _fail(str(exc))
    sys.exit(0)


if __name__ == "__main__":
    main()
