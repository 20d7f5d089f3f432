"""Command line interface.

Exit codes: 0 success, 1 a reproduced claim failed, 2 usage or input error,
3 search budget exceeded.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from .budget import BudgetExceeded
from .codes import build_clique_cover_code, to_json, verify_code
from .experiments import (
    emit_report,
    enumerate_all_subproblems,
    report_violations,
    run_converse_demos,
    subproblem_report,
)
from .graphs import DirectedGraph, induced_subgraph, underlying_undirected
from .invariants import (
    clique_cover_number,
    independence_number,
    independent_directed_cycles,
    is_perfect,
    mais,
)
from .io import FormatError, parse_graph, parse_problem
from .lp import fractional_clique_cover_number
from .problem import (
    BSTAR_MESSAGES,
    InvalidProblem,
    build_bstar_sub,
    conflict_graph,
    esup,
    gstar,
    identify_bstar_subset,
    side_info_graph,
)
from .search import bruteforce_feasible, check_access_disjointness, linear_feasible


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except BudgetExceeded as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(3)
        except (FormatError, InvalidProblem, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(2)


def _subset(text: str | None) -> tuple[int, ...]:
    if text is None:
        return BSTAR_MESSAGES
    try:
        s = tuple(sorted({int(tok) for tok in text.split(",") if tok.strip()}))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None
    if not set(s) <= set(BSTAR_MESSAGES):
        raise click.BadParameter("subset entries must lie in 1..12")
    return s


def _pair(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        q, m = (int(tok) for tok in text.split(","))
    except ValueError:
        raise click.BadParameter(f"expected 'q,m', got {text!r}") from None
    return q, m


def _fmt(s) -> str:
    return "{" + ",".join(str(v) for v in sorted(s)) + "}"


def _load_problem(path, bstar, subset):
    if path is not None:
        return parse_problem(path)
    if bstar or subset is not None:
        return build_bstar_sub(_subset(subset))
    raise click.UsageError("give a problem file, --bstar or --subset")


@click.group(cls=_Group)
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def main(verbose: bool) -> None:
    """Minimum-locality index codes for unicast problems with up to three receivers."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(message)s")


@main.command()
@click.argument("path", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--bstar", is_flag=True, help="Use the canonical 12-message problem.")
@click.option("--subset", help="Use the subproblem of B* on these messages, e.g. 2,7,10.")
@click.option("--json", "as_json", is_flag=True, help="Print a JSON object instead of text.")
def analyze(path, bstar, subset, as_json):
    """Graph invariants and the locality-1 rate of a problem."""
    p = _load_problem(path, bstar, subset)
    single, _ = esup(p)
    g = side_info_graph(single)
    gu = underlying_undirected(g)
    alpha, alpha_set = independence_number(gu)
    chi, partition = clique_cover_number(gu)
    chi_f, _ = fractional_clique_cover_number(gu)
    size, acyclic = mais(g)
    perfect, _ = is_perfect(gu)
    types = identify_bstar_subset(p)
    out = {
        "N": p.N,
        "receivers": p.n,
        "esup_receivers": single.n,
        "mais": size,
        "mais_witness": sorted(acyclic),
        "alpha": alpha,
        "alpha_witness": sorted(alpha_set),
        "clique_cover": chi,
        "clique_partition": [sorted(c) for c in partition.cliques],
        "fractional_clique_cover": str(chi_f),
        "perfect": perfect,
        "bstar_types": {str(k): v for k, v in types.items()} if types is not None else None,
        # exact for three-receiver problems; otherwise only bounds are known here
        "beta_locality1": chi if types is not None else None,
        "beta_locality1_bounds": [size, str(chi_f)],
    }
    if as_json:
        click.echo(json.dumps(out, indent=2))
        return
    click.echo(f"messages N={p.N}, receivers n={p.n}, ESUP receivers {single.n}")
    click.echo(f"MAIS(G)      = {size}  witness {_fmt(acyclic)}")
    click.echo(f"alpha(G_u)   = {alpha}  witness {_fmt(alpha_set)}")
    click.echo(f"cliquecover  = {chi}  partition " + " ".join(_fmt(c) for c in partition.cliques))
    click.echo(f"fractional   = {chi_f}")
    click.echo(f"G_u perfect  = {perfect}")
    if types is not None:
        click.echo(f"three-receiver problem, B* subset {_fmt(types.values())}: beta*(1) = {chi}")
    else:
        click.echo(f"locality-1 rate bounds: {size} <= beta*(1) <= {chi_f}")


@main.command()
@click.option("--subset", help="Restrict B* to these messages, e.g. 2,7,10.")
@click.option("--q", "q", default=2, show_default=True)
@click.option("--m", "m", default=1, show_default=True)
def bstar(subset, q, m):
    """Reproduce the invariants and the verified clique cover code for B*_S."""
    s = _subset(subset)
    report = subproblem_report(s, verify_at=(q, m))
    g = induced_subgraph(gstar(), s)
    click.echo(emit_report([report], "table"), nl=False)
    click.echo(f"MAIS witness: {_fmt(mais(g)[1])}")
    _, partition = clique_cover_number(underlying_undirected(g))
    click.echo("clique partition: " + " ".join(_fmt(c) for c in partition.cliques))
    cycles = independent_directed_cycles(g)
    click.echo("directed cycles on independent sets: " + (" ".join(_fmt(c) for c in cycles) or "none"))
    bad = report_violations([report])
    for line in bad:
        click.echo(f"VIOLATION {line}", err=True)
    sys.exit(1 if bad else 0)


@main.command("enumerate")
@click.option("--verify", "verify", help="Build and exhaustively verify each clique cover code at 'q,m'.")
@click.option("--certify", is_flag=True, help="Exhaustive converse search where it fits (q=2, m=1).")
@click.option("--certify-budget", default=2**20, show_default=True,
              help="Largest search space attempted per subset with --certify.")
@click.option("--out", type=click.Path(dir_okay=False), help="Write the report here instead of stdout.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "table"]), default="csv", show_default=True)
def enumerate_cmd(verify, certify, certify_budget, out, fmt):
    """Report every subproblem B*_S, S a subset of [12]."""
    reports = enumerate_all_subproblems(_pair(verify), certify_budget if certify else None)
    text = emit_report(reports, fmt)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)
    bad = report_violations(reports)
    for line in bad:
        click.echo(f"VIOLATION {line}", err=True)
    click.echo(f"{len(reports)} subproblems, {len(bad)} violations", err=True)
    sys.exit(1 if bad else 0)


@main.command()
@click.argument("path", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--clique-cover", "clique_cover", is_flag=True, required=True,
              help="Build the clique cover code (the only construction offered).")
@click.option("--bstar", is_flag=True)
@click.option("--subset")
@click.option("--q", "q", default=2, show_default=True)
@click.option("--m", "m", default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Write the code JSON here.")
def code(path, clique_cover, bstar, subset, q, m, out):
    """Build an optimal clique cover code, verify it and print it as JSON."""
    p = _load_problem(path, bstar, subset)
    _, partition = clique_cover_number(conflict_graph(p))
    c = build_clique_cover_code(p, partition, q, m)
    v = verify_code(p, c)
    text = json.dumps(to_json(c, p), indent=1)
    if out:
        Path(out).write_text(text + "\n")
    else:
        click.echo(text)
    click.echo(f"rate {v.rate}, locality {v.locality}, valid {v.valid}", err=True)
    sys.exit(0 if v.valid else 1)


@main.command()
@click.option("--subset", required=True, help="Subproblem of B*, e.g. 2,7,10.")
@click.option("--q", "q", default=2, show_default=True)
@click.option("--m", "m", default=1, show_default=True)
@click.option("--ell", "ell", type=int, required=True, help="Codeword length to search.")
@click.option("--locality", default="1", show_default=True, help="Largest locality allowed.")
@click.option("--check-disjoint", is_flag=True, help="Also check every locality-1 code for disjoint access sets.")
@click.option("--linear-only", is_flag=True, help="Search only linear encoders (not a converse).")
def converse(subset, q, m, ell, locality, check_disjoint, linear_only):
    """Exhaustive search for codes of a given length; prints a JSON certificate."""
    from fractions import Fraction

    p = build_bstar_sub(_subset(subset))
    if linear_only:
        res = linear_feasible(p, q, m, ell)
    else:
        res = bruteforce_feasible(p, q, m, ell, Fraction(locality))
    out = {"S": list(p.messages), "search": res.certificate(), "linear_only": linear_only}
    if res.witness is not None:
        out["witness"] = to_json(res.witness, p)
    if check_disjoint:
        out["disjointness"] = check_access_disjointness(p, q, m, ell).certificate()
    click.echo(json.dumps(out, indent=1))


@main.command()
def demos():
    """Run the exhaustive converse checks on {2,7,10} and {3,6,11}."""
    bundle = run_converse_demos()
    click.echo(json.dumps(bundle, indent=1))
    sys.exit(0 if bundle["passed"] else 1)


def _undirected(path):
    g = parse_graph(path)
    if isinstance(g, DirectedGraph):
        g = underlying_undirected(g)
    return g


@main.command()
@click.argument("graphfile", type=click.Path(exists=True, dir_okay=False))
def perfect(graphfile):
    """Decide perfectness by odd hole / odd antihole search."""
    ok, cert = is_perfect(_undirected(graphfile))
    if ok:
        click.echo("perfect")
    else:
        click.echo(f"not perfect: odd hole or antihole on {_fmt(cert)}")


@main.command()
@click.argument("graphfile", type=click.Path(exists=True, dir_okay=False))
@click.option("--chif", is_flag=True, required=True, help="Fractional clique cover number.")
def lp(graphfile, chif):
    """Exact fractional clique cover number with an optimal weighting."""
    value, weights = fractional_clique_cover_number(_undirected(graphfile))
    click.echo(f"fractional clique cover number = {value}")
    for c, w in weights.items():
        if w:
            click.echo(f"  {_fmt(c)}: {w}")


if __name__ == "__main__":
    main()
