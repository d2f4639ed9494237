"""Command-line front end.

Every command prints one JSON report (sorted keys, sorted families) that
embeds the tool version and the SHA-256 of each input file.  Exit status:
0 success, 2 the inputs violate the hypotheses of the requested check,
1 any other error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from . import bridges as BR
from . import checks
from . import corpus
from . import decompose as D
from . import graph as G
from . import planar as P
from .errors import GraphFormatError, HypothesisError, SignetError
from .frame import FrameMatroid, auxiliary_graph, balance_status, bonds, circuits, separators, structural_is_binary
from .graph import fmt_family, fmt_set, nsorted
from .oracle import OracleMatroid

EXIT_OK, EXIT_ERROR, EXIT_HYPOTHESIS = 0, 1, 2


class Context:
    def __init__(self, args):
        self.args = args
        self.hashes = {}

    def read(self, path) -> str:
        with open(path, "rb") as fh:
            raw = fh.read()
        self.hashes[os.path.basename(path)] = hashlib.sha256(raw).hexdigest()
        return raw.decode("utf-8")

    def load_json(self, path):
        text = self.read(path)
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")

    def matroid(self):
        """FrameMatroid for a signed-graph file, OracleMatroid for a tabulated one."""
        if not self.args.input:
            raise GraphFormatError("--input is required for this command")
        d = self.load_json(self.args.input)
        if isinstance(d, dict) and "rank_hex" in d:
            return OracleMatroid.from_dict(d)
        try:
            return FrameMatroid(G.SignedGraph.from_dict(d))
        except GraphFormatError as exc:
            raise GraphFormatError(f"{self.args.input}: {exc}")

    def graph(self) -> G.SignedGraph:
        m = self.matroid()
        if not isinstance(m, FrameMatroid):
            raise GraphFormatError(f"command {self.args.command!r} needs a signed-graph input, "
                                   "not a tabulated matroid")
        return m.graph

    def edge_set(self, spec, what):
        """Comma list, or a JSON file holding a list (or {"edges": [...]})."""
        if spec is None:
            raise GraphFormatError(f"--{what} is required for this command")
        if spec.endswith(".json") and os.path.exists(spec):
            d = self.load_json(spec)
            if isinstance(d, dict):
                d = d.get("edges", d.get(what))
            if not isinstance(d, list):
                raise GraphFormatError(f"{spec}: expected a list of edge ids")
            return frozenset(str(x) for x in d)
        return frozenset(x.strip() for x in spec.split(",") if x.strip())

    def cocircuit(self):
        return self.edge_set(self.args.cocircuit, "cocircuit")

    def bridge(self, m, Y, spec):
        """A bridge given as B<k> (report order), an edge set, or one member edge."""
        brs = BR.bridges(m, Y)
        if spec and spec[0] in "Bb" and spec[1:].isdigit():
            k = int(spec[1:])
            if not 1 <= k <= len(brs):
                raise GraphFormatError(f"--bridge {spec}: there are {len(brs)} bridges")
            return brs[k - 1]
        S = self.edge_set(spec, "bridge")
        for b in brs:
            if S == b or (len(S) == 1 and S <= b):
                return b
        raise HypothesisError(f"{nsorted(S)} is not a bridge of {nsorted(Y)} (nor a member of one)")


def _oracle(m):
    return m.oracle() if isinstance(m, FrameMatroid) else m


# ---------------------------------------------------------------- commands

def cmd_info(ctx):
    m = ctx.matroid()
    om = _oracle(m)
    out = {"elements": len(om.ground), "rank": om.full_rank(), "connected": om.is_connected()}
    if isinstance(m, FrameMatroid):
        g = m.graph
        kinds = {}
        for e in g.edges.values():
            kinds[e.kind] = kinds.get(e.kind, 0) + 1
        out.update({"vertices": len(g.vertices), "edge_kinds": kinds, "joints": fmt_set(g.joints()),
                    "graph_connected": G.is_connected(g), "balanced": G.balanced(g),
                    "binary": structural_is_binary(g)})
    else:
        out["binary"] = om.is_binary()
    return out


def cmd_balance(ctx):
    return balance_status(ctx.graph())


def cmd_circuits(ctx):
    m = ctx.matroid()
    if isinstance(m, FrameMatroid):
        return {"circuits": [c.to_dict() for c in circuits(m)]}
    return {"circuits": fmt_family(m.circuits())}


def cmd_cocircuits(ctx):
    return {"cocircuits": fmt_family(_oracle(ctx.matroid()).cocircuits())}


def cmd_bonds(ctx):
    return {"bonds": [b.to_dict() for b in bonds(FrameMatroid(ctx.graph()))]}


def cmd_separators(ctx):
    m = ctx.matroid()
    if isinstance(m, FrameMatroid):
        return {"separators": fmt_family(separators(m))}
    return {"separators": fmt_family(m.components())}


def cmd_bridges(ctx):
    m = ctx.matroid()
    Y = ctx.cocircuit()
    return {"Y": fmt_set(Y), "bridges": [fmt_set(b) for b in BR.bridges(m, Y)]}


def cmd_pi(ctx):
    m = ctx.matroid()
    Y = ctx.cocircuit()
    b = ctx.bridge(m, Y, ctx.args.bridge[0] if ctx.args.bridge else None)
    fam = BR.pi(m, b, Y)
    cy = BR.cocircuits_on_Y(m, b, Y)
    return {"Y": fmt_set(Y), "bridge": fmt_set(b), "pi": fmt_family(fam),
            "cocircuits_on_Y": fmt_family(cy), "pi_equals_cocircuits_on_Y": set(fam) == set(cy)}


def cmd_avoid(ctx):
    m = ctx.matroid()
    Y = ctx.cocircuit()
    if not ctx.args.bridge or len(ctx.args.bridge) != 2:
        raise GraphFormatError("avoid needs exactly two --bridge arguments")
    b1, b2 = (ctx.bridge(m, Y, s) for s in ctx.args.bridge)
    return {"Y": fmt_set(Y), "bridges": [fmt_set(b1), fmt_set(b2)], "avoiding": BR.avoiding(m, Y, b1, b2)}


def cmd_separable(ctx):
    return BR.bridge_separable(ctx.matroid(), ctx.cocircuit()).to_dict()


def cmd_classify_cocircuit(ctx):
    return BR.classify_cocircuit(ctx.matroid(), ctx.cocircuit()).to_dict()


def _embedding(ctx, g):
    if ctx.args.embedding:
        return P.embedding_from_dict(g, ctx.load_json(ctx.args.embedding))
    return P.embed(g)


def cmd_faces(ctx):
    g = ctx.graph()
    emb = _embedding(ctx, g)
    if isinstance(emb, P.NotPlanar):
        raise HypothesisError(f"graph is not planar; Kuratowski edges {fmt_set(emb.witness)}")
    return {"faces": [{"edges": fmt_set(emb.face_edges(i)), "sign": emb.face_signs[i]}
                      for i in range(len(emb.faces))],
            "outer_face": emb.outer_face, "negative_faces": emb.negative_faces(),
            "embedding": emb.to_dict()}


def cmd_cylindrical(ctx):
    g = ctx.graph()
    ok, emb = P.is_cylindrical(g)
    out = {"cylindrical": ok}
    if ok:
        out["negative_faces"] = [fmt_set(emb.face_edges(i)) for i in emb.negative_faces()]
        out["embedding"] = emb.to_dict()
    return out


def cmd_graphic(ctx):
    m = ctx.matroid()
    om = _oracle(m)
    out = {"oracle_graphic": om.is_graphic(ctx.args.max_bits or 16)}
    if isinstance(m, FrameMatroid):
        g = m.graph
        aux = auxiliary_graph(g)
        out["structural_route"] = aux is not None
        if aux is not None:
            out["auxiliary_graph"] = aux.to_dict()
        if G.is_2_connected(P._strip(g)):
            try:
                emb = P.embedding_from_dict(g, ctx.load_json(ctx.args.embedding)) if ctx.args.embedding else None
                out["face_verdict"] = P.cylindrical_graphicness(g, emb)
            except HypothesisError as exc:
                out["face_verdict"] = {"skipped": str(exc)}
    return out


def cmd_classify(ctx):
    return D.classify_quaternary(ctx.graph()).to_dict()


def cmd_verify_main(ctx):
    rep = D.verify_main_theorem(ctx.matroid(), ctx.cocircuit())
    rep["holds"] = D.main_theorem_holds(rep)
    return rep


def cmd_verify_t6(ctx):
    g = ctx.graph() if ctx.args.input else None
    return D.verify_t6_lemma(g)


def cmd_oracle_compare(ctx):
    a = ctx.args
    ex = corpus.exhaustive(a.max_vertices, a.max_edges)
    rep = {"exhaustive": checks.oracle_compare(ex),
           "random": checks.oracle_compare(checks.random_small_graphs(a.seed, a.count))}
    rep["mismatches"] = rep["exhaustive"]["violations"] + rep["random"]["violations"]
    return rep


def cmd_invariants(ctx):
    rep = checks.run_invariants(ctx.args.seed, ctx.args.count)
    rep["violations"] = sum(v["violations"] for v in rep.values())
    return rep


COMMANDS = {
    "info": cmd_info, "balance": cmd_balance, "circuits": cmd_circuits, "cocircuits": cmd_cocircuits,
    "bonds": cmd_bonds, "separators": cmd_separators, "bridges": cmd_bridges, "pi": cmd_pi,
    "avoid": cmd_avoid, "separable": cmd_separable, "classify-cocircuit": cmd_classify_cocircuit,
    "faces": cmd_faces, "cylindrical": cmd_cylindrical, "graphic": cmd_graphic, "classify": cmd_classify,
    "verify-main": cmd_verify_main, "verify-t6": cmd_verify_t6, "oracle-compare": cmd_oracle_compare,
    "invariants": cmd_invariants,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signet", description="Signed graphs and frame-matroid cocircuit bridges.")
    p.add_argument("--version", action="version", version=f"signet {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--input", "-i", help="signed-graph JSON, or tabulated matroid JSON")
        s.add_argument("--output", "-o", help="write the report here instead of stdout")
        s.add_argument("--cocircuit", "-Y", help="comma list of edge ids or a JSON file with a list")
        s.add_argument("--bridge", "-B", action="append",
                       help="B<k> (order of the bridges report), comma list, JSON file or one member edge")
        s.add_argument("--embedding", help="rotation-system JSON (as emitted by 'faces')")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--count", type=int, default=200, help="random graphs for corpus commands")
        s.add_argument("--max-edges", type=int, default=6)
        s.add_argument("--max-vertices", type=int, default=5)
        s.add_argument("--max-bits", type=int, help="size guard for exhaustive scans")
    return p


def run(argv=None):
    """(exit code, report dict, output path or None)."""
    args = build_parser().parse_args(argv)
    if args.max_bits is not None and args.max_bits <= 0:
        return EXIT_ERROR, {"error": "--max-bits must be positive"}, args.output
    saved = os.environ.get("SIGNET_MAX_SUBSET_BITS")
    if args.max_bits is not None:
        os.environ["SIGNET_MAX_SUBSET_BITS"] = str(args.max_bits)
    try:
        return _run(args)
    finally:
        if saved is None:
            os.environ.pop("SIGNET_MAX_SUBSET_BITS", None)
        else:
            os.environ["SIGNET_MAX_SUBSET_BITS"] = saved


def _run(args):
    ctx = Context(args)
    code = EXIT_OK
    try:
        result = COMMANDS[args.command](ctx)
        if result.get("hypotheses_unmet"):
            code = EXIT_HYPOTHESIS
        elif result.get("holds") is False or result.get("mismatches") or result.get("violations"):
            code = EXIT_ERROR
        body = {"result": result}
    except HypothesisError as exc:
        code, body = EXIT_HYPOTHESIS, {"hypothesis_violation": str(exc)}
    except (SignetError, OSError, KeyError) as exc:
        code, body = EXIT_ERROR, {"error": str(exc)}
    report = {"tool": "signet", "version": __version__, "command": args.command,
              "inputs": dict(sorted(ctx.hashes.items())), "exit_code": code}
    report.update(body)
    return code, report, args.output


def main(argv=None) -> int:
    code, report, out = run(argv)
    text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code
