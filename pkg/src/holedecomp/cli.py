"""Command line shell.

Exit codes: 0 success, 1 negative or failed answer (non-member, unverifiable,
unsatisfiable parameters), 2 a work cap was hit, 64 malformed input or usage,
70 an internal assertion fired (the trace is printed as JSON).

Every option can also come from ``HOLEDECOMP_<OPTION>`` (global options) or
``HOLEDECOMP_<COMMAND>_<OPTION>`` environment variables, or from a key=value
config file given with ``--config``.  Command line beats environment beats
config file beats built-in defaults.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from . import formats
from .detect import DEFAULT_CAP, CapExceeded, is_c4free_odd_signable
from .graph import GraphError
from .laminar import LaminarityError, TreeConstructionError, build_tree_decomposition
from .oracle import (
    GenerationTimeout,
    OracleCapExceeded,
    balanced_separator_exact,
    generate_class_member,
    sep_star_exact,
    treewidth_exact,
)
from .pipeline import (
    BudgetExhausted,
    NotInClass,
    PipelineAssertionError,
    UnsatisfiableParameters,
    big_delta,
    compute_balanced_separator,
    params_for,
)
from .separation import f_bound
from .twojoin import TwoJoinTreeError, build_2join_tree, find_2join, width_bounds
from .wheels import enumerate_forcers, forcer_cutset

EXIT_OK, EXIT_NO, EXIT_CAPPED, EXIT_INPUT, EXIT_ASSERT = 0, 1, 2, 64, 70


class Outcome(Exception):
    """Carries an exit code and an optional JSON payload out of a command."""

    def __init__(self, code: int, payload=None, message: str = ""):
        super().__init__(message)
        self.code = code
        self.payload = payload
        self.message = message


class RationalType(click.ParamType):
    name = "p/q"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return formats.parse_rational(value)
        except formats.FormatError as exc:
            self.fail(str(exc), param, ctx)


RATIONAL = RationalType()


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise formats.FormatError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def load_graph(source: str) -> formats.GraphDocument:
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise formats.FormatError(f"cannot read {source}: {exc.strerror}") from exc
    return formats.parse_graph(text)


def emit(payload) -> None:
    click.echo(formats.dumps(payload), nl=False)


@click.group(context_settings={"auto_envvar_prefix": "HOLEDECOMP", "help_option_names": ["-h", "--help"]})
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="key=value file supplying option defaults.")
@click.option("--cap", type=int, default=DEFAULT_CAP, show_default=True,
              help="Work budget for detector searches; 0 disables the cap.")
@click.option("--oracle-max-n", type=int, default=13, show_default=True, help="Vertex cap for exact oracles.")
@click.pass_context
def main(ctx, config_path, cap, oracle_max_n):
    """Decomposition engine for C4-free odd-signable graphs of bounded degree."""
    if config_path:
        cfg = read_config(config_path)
        ctx.default_map = {name: dict(cfg) for name in main.commands}
        src = ctx.get_parameter_source
        if "cap" in cfg and src("cap") == click.core.ParameterSource.DEFAULT:
            cap = int(cfg["cap"])
        if "oracle_max_n" in cfg and src("oracle_max_n") == click.core.ParameterSource.DEFAULT:
            oracle_max_n = int(cfg["oracle_max_n"])
    ctx.obj = {"cap": cap or None, "oracle_max_n": oracle_max_n}


@main.command()
@click.argument("graph")
@click.pass_obj
def check(obj, graph):
    """Class membership with a forbidden-structure witness."""
    g = load_graph(graph).graph
    res = is_c4free_odd_signable(g, obj["cap"])
    payload = {"member": res.member, "witness_kind": res.witness_kind,
               "witness": formats.witness_json(res.witness_kind, res.witness)}
    raise Outcome(EXIT_OK if res.member else EXIT_NO, payload)


@main.command()
@click.argument("graph")
@click.option("--kind", type=click.Choice(["strong", "twin", "all"]), default="all", show_default=True)
@click.pass_obj
def forcers(obj, graph, kind):
    """Forcers with their cutset certificates."""
    g = load_graph(graph).graph
    kinds = ["strong", "twin"] if kind == "all" else [kind]
    out = []
    for k in kinds:
        for f in enumerate_forcers(g, k, obj["cap"]):
            out.append(formats.forcer_json(g, f, forcer_cutset(g, f)))
    raise Outcome(EXIT_OK, {"forcers": out})


@main.command()
@click.argument("graph")
@click.option("--c", "c", type=RATIONAL, default=None, help="Balance fraction in [1/2, 1).")
@click.option("--d", "d", type=int, default=None, help="Boundedness budget.")
@click.option("--paper-params", is_flag=True, help="Take c and d from the parameter calculator.")
@click.option("--delta", type=int, default=None, help="Degree bound (defaults to the maximum degree).")
@click.option("--tight", is_flag=True, help="Report the least d that verifies instead of a fixed d.")
@click.option("--no-shortcircuit", is_flag=True, help="Always run the full stage sequence.")
@click.option("--seed", type=int, default=0, show_default=True, help="Recorded in the output metadata.")
@click.pass_obj
def separator(obj, graph, c, d, paper_params, delta, tight, no_shortcircuit, seed):
    """Certified balanced separator with the full stage trace."""
    doc = load_graph(graph)
    g, w = doc.graph, doc.weights_or_uniform()
    delta = g.max_degree() if delta is None else delta
    meta = {"seed": seed, "cap": obj["cap"], "delta": delta}
    if paper_params:
        if c is not None or d is not None:
            raise click.UsageError("--paper-params excludes --c and --d")
        try:
            params = params_for(delta, w.max)
        except UnsatisfiableParameters as exc:
            raise Outcome(EXIT_NO, {"error": str(exc), "wmax_ceiling": formats.rational(exc.wmax_ceiling)})
        c, d = params.c, params.d
        meta["params"] = {"c": formats.rational(c), "d": d, "f2": params.f2}
    c = Fraction(1, 2) if c is None else c
    if tight:
        d = None
    meta.update({"c": formats.rational(c), "d": d, "tight": d is None})
    try:
        result = compute_balanced_separator(g, w, c, d, delta=delta, shortcircuit=not no_shortcircuit,
                                            cap=obj["cap"])
    except NotInClass as exc:
        raise Outcome(EXIT_NO, {"error": str(exc)})
    except BudgetExhausted as exc:
        raise Outcome(EXIT_NO, {"error": str(exc), "stages": len(exc.trace.stages)})
    raise Outcome(EXIT_OK, formats.certificate_document(g, w, result, meta))


@main.command()
@click.argument("document")
def verify(document):
    """Re-check a certificate document offline."""
    try:
        with open(document, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise formats.FormatError(f"cannot read certificate: {exc}") from exc
    flags = formats.verify_certificate_document(doc)
    raise Outcome(EXIT_OK if all(flags.values()) else EXIT_NO, {"checks": flags, "ok": all(flags.values())})


@main.command()
@click.argument("graph")
@click.option("--from-laminar", "laminar", type=click.Path(dir_okay=False), default=None,
              help="JSON list of separations {a,c,b} to turn into a tree decomposition.")
@click.pass_obj
def treedec(obj, graph, laminar):
    """Exact tree decomposition, or the one induced by a laminar collection.

    Tree nodes are numbered from 0; bags hold one-based vertex ids.
    """
    g = load_graph(graph).graph
    if laminar is None:
        res = treewidth_exact(g, max_n=obj["oracle_max_n"])
        raise Outcome(EXIT_OK, {"width": res.width, "bags": [formats.vset(b) for b in res.bags],
                                "edges": [list(e) for e in res.edges]})
    with open(laminar, encoding="utf-8") as fh:
        try:
            seps = [formats.separation_from_json(s) for s in json.load(fh)]
        except json.JSONDecodeError as exc:
            raise formats.FormatError(f"invalid separation list: {exc}") from exc
    try:
        td = build_tree_decomposition(g, range(g.n), seps)
    except LaminarityError as exc:
        raise Outcome(EXIT_NO, {"error": "collection is not laminar",
                                "pair": [formats.separation_json(s) for s in exc.pair]})
    except TreeConstructionError as exc:
        raise Outcome(EXIT_NO, {"error": str(exc)})
    raise Outcome(EXIT_OK, {"width": td.width(), "bags": [formats.vset(b) for b in td.bags],
                            "parent": list(td.parent)})


@main.command()
@click.argument("graph")
@click.option("--tree", is_flag=True, help="Build the whole decomposition tree.")
@click.pass_obj
def twojoin(obj, graph, tree):
    """A 2-join split, or the full 2-join decomposition tree."""
    g = load_graph(graph).graph
    if not tree:
        s = find_2join(g)
        raise Outcome(EXIT_OK, {"split": None if s is None else formats.split_json(s)})
    try:
        root = build_2join_tree(g, obj["cap"])
    except TwoJoinTreeError as exc:
        raise Outcome(EXIT_NO, {"error": str(exc),
                                "graph": formats.graph_to_json(formats.GraphDocument(exc.graph))})
    raise Outcome(EXIT_OK, formats.twojoin_tree_json(root))


@main.command()
@click.argument("task", type=click.Choice(["treewidth", "sep-star", "balanced-separator"]))
@click.argument("graph")
@click.option("--c", "c", type=RATIONAL, default=Fraction(1, 2), show_default=True)
@click.option("--d", "d", type=int, default=1, show_default=True)
@click.pass_obj
def oracle(obj, task, graph, c, d):
    """Brute-force ground truth."""
    doc = load_graph(graph)
    g, cap_n = doc.graph, obj["oracle_max_n"]
    if task == "treewidth":
        raise Outcome(EXIT_OK, {"treewidth": treewidth_exact(g, max_n=cap_n).width})
    if task == "sep-star":
        raise Outcome(EXIT_OK, {"sep_star": sep_star_exact(g, c, max_n=cap_n), "c": formats.rational(c)})
    found = balanced_separator_exact(g, doc.weights_or_uniform(), c, d, max_n=cap_n)
    if found is None:
        raise Outcome(EXIT_NO, {"separator": None})
    ys, audit = found
    raise Outcome(EXIT_OK, {"separator": formats.vset(ys), "centers": formats.vseq(audit.centers or ())})


@main.command()
@click.option("--delta", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--strategy", type=click.Choice(["constructive", "rejection", "twojoin", "glue"]),
              default="constructive", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def gen(delta, n, seed, strategy, fmt):
    """Generate a class member."""
    try:
        g = generate_class_member(delta, n, seed, strategy)
    except GenerationTimeout as exc:
        raise Outcome(EXIT_NO, {"error": str(exc)})
    doc = formats.GraphDocument(g)
    if fmt == "text":
        click.echo(f"c seed={seed} delta={delta} strategy={strategy}")
        click.echo(formats.emit_edge_list(doc), nl=False)
    else:
        click.echo(formats.emit_json_graph(doc), nl=False)
    raise Outcome(EXIT_OK)


@main.command()
@click.option("--delta", type=int, required=True)
@click.option("--wmax", type=RATIONAL, default=Fraction(0), show_default=True)
@click.option("--json", "as_json", is_flag=True)
def params(delta, wmax, as_json):
    """Parameter table for a degree bound."""
    try:
        p = params_for(delta, wmax)
    except UnsatisfiableParameters as exc:
        raise Outcome(EXIT_NO, {"error": str(exc), "wmax_ceiling": formats.rational(exc.wmax_ceiling)})
    wb = width_bounds(delta)
    big = p.big_delta
    rows = {
        f"f(2,{delta})": p.f2,
        f"f(1,{delta})": f_bound(1, delta),
        "c": formats.rational(p.c),
        "d": p.d,
        "d_clean": p.d_clean,
        "Delta(3)": big_delta(3, delta),
        "Delta(d) digits": len(str(big)),
        f"45*{delta}-1": wb.no_star_cutset_tw,
        "tw+1 bound at r=2, rw=3": wb.rankwidth_tw_plus_one,
        "wmax < 1/Delta(d)": p.wmax_below_inverse_delta,
    }
    if as_json:
        raise Outcome(EXIT_OK, rows)
    for k, v in rows.items():
        click.echo(f"{k} = {v}")
    raise Outcome(EXIT_OK)


def run(argv=None) -> int:
    """Entry point; returns the exit code instead of raising SystemExit."""
    try:
        main.main(args=argv, prog_name="holedecomp", standalone_mode=False)
        return EXIT_OK
    except Outcome as out:
        if out.payload is not None:
            emit(out.payload)
        return out.code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EXIT_INPUT
    except click.Abort:
        return EXIT_INPUT
    except (formats.FormatError, GraphError) as exc:
        click.echo(f"input error: {exc}", err=True)
        return EXIT_INPUT
    except (CapExceeded, OracleCapExceeded) as exc:
        click.echo(f"cap exceeded: {exc}", err=True)
        return EXIT_CAPPED
    except PipelineAssertionError as exc:
        emit({"assertion": str(exc), "notes": exc.trace.notes,
              "stages": [{"kind": s.kind, "bag": formats.vset(s.bag)} for s in exc.trace.stages]})
        return EXIT_ASSERT
    except AssertionError as exc:
        click.echo(f"assertion failed: {exc}", err=True)
        return EXIT_ASSERT


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
