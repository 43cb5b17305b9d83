"""Graph documents (edge-list text and JSON) and self-contained certificate documents.

Vertex ids are one-based in every external document and zero-based in memory.
Rationals are always written as ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from .balance import verify_balanced_separator
from .graph import Graph, GraphError, WeightAssignment
from .separation import Separation

GRAPH_FORMAT = "holedecomp-graph"
CERTIFICATE_FORMAT = "holedecomp-certificate"


class FormatError(ValueError):
    """Malformed or inconsistent input document."""


def rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {text!r}") from exc
    return value


@dataclass(frozen=True)
class GraphDocument:
    graph: Graph
    weights: WeightAssignment | None = None

    def weights_or_uniform(self) -> WeightAssignment:
        return self.weights if self.weights is not None else WeightAssignment.uniform(range(self.graph.n))


# ---------------------------------------------------------------------------
# edge-list text


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError as exc:
        raise FormatError(f"line {lineno}: expected an integer, got {tok!r}") from exc


def parse_edge_list(text: str) -> GraphDocument:
    n = m = None
    edges: list[tuple[int, int]] = []
    weights: dict[int, Fraction] = {}
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(("c", "#")):
            continue
        tok = line.split()
        kind = tok[0]
        if kind == "p":
            if n is not None or len(tok) != 3:
                raise FormatError(f"line {lineno}: expected a single header 'p <n> <m>'")
            n, m = _int(tok[1], lineno), _int(tok[2], lineno)
            if n < 0 or m < 0:
                raise FormatError(f"line {lineno}: negative counts")
            continue
        if n is None:
            raise FormatError(f"line {lineno}: data before the 'p' header")
        if kind == "e" and len(tok) == 3:
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise FormatError(f"line {lineno}: vertex {x} outside 1..{n}")
            edges.append((u - 1, v - 1))
        elif kind == "w" and len(tok) == 3:
            u = _int(tok[1], lineno)
            if not 1 <= u <= n:
                raise FormatError(f"line {lineno}: vertex {u} outside 1..{n}")
            weights[u - 1] = parse_rational(tok[2])
        elif kind == "l" and len(tok) >= 3:
            labels[_int(tok[1], lineno) - 1] = " ".join(tok[2:])
        else:
            raise FormatError(f"line {lineno}: unrecognised line {line!r}")
    if n is None:
        raise FormatError("missing 'p <n> <m>' header")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    return _assemble(n, edges, weights, labels)


def emit_edge_list(doc: GraphDocument) -> str:
    g = doc.graph
    out = [f"p {g.n} {g.m}"]
    if g.labels is not None:
        out += [f"l {v + 1} {lab}" for v, lab in enumerate(g.labels)]
    out += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    if doc.weights is not None:
        out += [f"w {v + 1} {rational(doc.weights[v])}" for v in sorted(doc.weights.domain)]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# JSON


def parse_json_graph(text: str | dict) -> GraphDocument:
    try:
        obj = json.loads(text) if isinstance(text, str) else text
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise FormatError("graph object needs 'n' and 'edges'")
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise FormatError("'n' must be a nonnegative integer")
    edges = []
    for e in obj["edges"]:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and 1 <= x <= n for x in e)):
            raise FormatError(f"bad edge {e!r}")
        edges.append((e[0] - 1, e[1] - 1))
    weights = {}
    for k, v in (obj.get("weights") or {}).items():
        u = _int(k, 0)
        if not 1 <= u <= n:
            raise FormatError(f"weight for unknown vertex {k}")
        weights[u - 1] = parse_rational(v)
    labels = {i: str(lab) for i, lab in enumerate(obj.get("labels") or [])}
    return _assemble(n, edges, weights, labels)


def graph_to_json(doc: GraphDocument) -> dict:
    g = doc.graph
    out: dict[str, Any] = {"format": GRAPH_FORMAT, "n": g.n, "edges": [[u + 1, v + 1] for u, v in g.edges()]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    if doc.weights is not None:
        out["weights"] = {str(v + 1): rational(doc.weights[v]) for v in sorted(doc.weights.domain)}
    return out


def emit_json_graph(doc: GraphDocument) -> str:
    return json.dumps(graph_to_json(doc), sort_keys=True) + "\n"


def _assemble(n, edges, weights, labels) -> GraphDocument:
    if len({frozenset(e) for e in edges}) != len(edges):
        raise FormatError("duplicate edge")
    if labels and set(labels) != set(range(n)):
        raise FormatError("labels must be given for every vertex or none")
    try:
        g = Graph(n, edges, [labels[i] for i in range(n)] if labels else None)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc
    if not weights:
        return GraphDocument(g)
    if set(weights) != set(range(n)):
        raise FormatError("weights must be given for every vertex or none")
    try:
        return GraphDocument(g, WeightAssignment(weights))
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def parse_graph(text: str) -> GraphDocument:
    """Sniff the format: JSON objects start with ``{``."""
    return parse_json_graph(text) if text.lstrip().startswith("{") else parse_edge_list(text)


# ---------------------------------------------------------------------------
# encoding of results (one-based)


def vset(xs: Iterable[int]) -> list[int]:
    return sorted(v + 1 for v in xs)


def vseq(xs: Iterable[int]) -> list[int]:
    return [v + 1 for v in xs]


def weights_json(w: WeightAssignment) -> dict[str, str]:
    return {str(v + 1): rational(w[v]) for v in sorted(w.domain)}


def weights_from_json(obj: dict[str, str]) -> WeightAssignment:
    return WeightAssignment({int(k) - 1: parse_rational(v) for k, v in obj.items()})


def separation_json(s: Separation) -> dict:
    return {"a": vset(s.a), "c": vset(s.c), "b": vset(s.b)}


def separation_from_json(obj: dict) -> Separation:
    try:
        return Separation(*(frozenset(v - 1 for v in obj[k]) for k in ("a", "c", "b")))
    except (KeyError, TypeError, GraphError) as exc:
        raise FormatError(f"bad separation {obj!r}") from exc


def witness_json(kind: str | None, witness) -> Any:
    if witness is None:
        return None
    if isinstance(witness, frozenset):
        return {"vertices": vset(witness)}
    if hasattr(witness, "paths"):
        return {"anchors": vseq(witness.anchors), "paths": [vseq(p.vertices) for p in witness.paths]}
    if hasattr(witness, "hub"):
        return {"hole": vseq(witness.hole.vertices), "hub": witness.hub + 1, "spokes": vset(witness.spokes)}
    return repr(witness)


def forcer_json(g: Graph, f, cert) -> dict:
    out = {"kind": f.kind, "hole": vseq(f.hole.vertices), "center": vseq(f.center), "hub": f.hub + 1}
    if f.clone is not None:
        out["clone"] = f.clone + 1
    out["cutset"] = {"cutset": vset(cert.cutset), "side_a": vset(cert.side_a), "side_b": vset(cert.side_b),
                     "holds": cert.holds(g)}
    return out


def split_json(s) -> dict:
    return {k: vset(getattr(s, k)) for k in ("x1", "x2", "a1", "b1", "a2", "b2")}


def twojoin_tree_json(node) -> dict:
    """Block vertices are local to each node; ids are one-based within that node's graph."""
    out: dict[str, Any] = {
        "graph": graph_to_json(GraphDocument(node.graph)),
        "flat_paths": [vseq(p) for p in node.flat_paths],
    }
    if node.tag is not None:
        out["tag"] = node.tag.kind
    if node.split is not None:
        out["split"] = split_json(node.split)
    if node.children:
        out["children"] = [twojoin_tree_json(ch) for ch in node.children]
    return out


# ---------------------------------------------------------------------------
# certificate documents


def certificate_document(g: Graph, w: WeightAssignment, result, meta: dict) -> dict:
    """Everything needed to re-check the run without recomputing it."""
    cert, trace = result.certificate, result.trace
    stages = []
    for st in trace.stages:
        stages.append({
            "kind": st.kind,
            "bag": vset(st.bag),
            "weights": weights_json(st.weights),
            "collection": [separation_json(s) for s in st.collection],
            "centers": [vseq(k) for k in st.centers],
            "cost": st.cost,
            "weights_total_is_one": st.weights.of(st.weights.domain) == 1,
        })
    return {
        "format": CERTIFICATE_FORMAT,
        "meta": meta,
        "graph": graph_to_json(GraphDocument(g, w)),
        "stages": stages,
        "lifts": [{"level": s.level, "separator": vset(s.separator), "boundedness": s.boundedness,
                   "fallback": s.fallback} for s in trace.lifts],
        "notes": list(trace.notes),
        "found_by": trace.found_by,
        "certificate": {
            "separator": vset(cert.separator),
            "centers": vseq(cert.centers),
            "c": rational(cert.c),
            "d": cert.d,
            "component_weights": [rational(x) for x in cert.component_weights],
        },
        "tight_d": result.tight_d,
    }


def verify_certificate_document(doc: dict) -> dict[str, bool]:
    """Offline re-check of a certificate document; returns one flag per check."""
    if doc.get("format") != CERTIFICATE_FORMAT:
        raise FormatError("not a certificate document")
    gd = parse_json_graph(doc["graph"])
    g, w = gd.graph, gd.weights_or_uniform()
    cert = doc["certificate"]
    ys = [v - 1 for v in cert["separator"]]
    c, d = parse_rational(cert["c"]), int(cert["d"])
    audit = verify_balanced_separator(g, w, ys, c, d)
    flags = {"separator": audit.ok}
    for i, st in enumerate(doc["stages"]):
        sw = weights_from_json(st["weights"])
        bag = frozenset(v - 1 for v in st["bag"])
        flags[f"stage{i}_weights"] = sw.domain == bag and sw.of(bag) == 1
        seps = [separation_from_json(s) for s in st["collection"]]
        flags[f"stage{i}_collection"] = all(s.is_valid_in(g, s.mask) for s in seps)
    centers = [v - 1 for v in cert["centers"]]
    flags["centers"] = all(0 <= v < g.n for v in centers) and len(centers) <= d
    return flags


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
