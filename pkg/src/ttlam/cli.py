"""Command line front end.

Subcommands operate on map files (see `mapfile`) and print either a readable
text report or, with --json, a canonical JSON document: keys sorted, floats
rounded to 12 significant digits, no whitespace padding, schema version
embedded.  Identical inputs and flags therefore produce byte-identical
output.

Exit codes: 0 = pass / result produced, 1 = property violation,
2 = inconclusive (budget exhausted), 3 = input error.
"""

import argparse
import json
import sys

from .errors import (
    BudgetExceededError,
    ConvergenceError,
    GraphError,
    IncompatibleGraphsError,
    MapError,
    NotExpandingError,
    NotPrimitiveError,
    NotTrainTrackError,
    ParseError,
    SubdivisionError,
    TtError,
)
from .graph import all_turns, validate_graph
from .lamination import (
    dual_language,
    eigenray_equivalence,
    illegality_profile,
    ilt_contraction,
    leaf_language,
    leaf_window,
    singular_leaves,
)
from .mapfile import MapFile, parse_map_path
from .nielsen import detect_inps, eigenray_prefix, periodic_structures, stability_check
from .spectral import charpoly_coefficients, is_primitive, pf_data, transition_matrix
from .train_track import gates, is_train_track, turn_table, two_gates_everywhere, used_turns

OK, VIOLATION, INCONCLUSIVE, INPUT_ERROR = 0, 1, 2, 3


class _CliParser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); route to input error
        raise ParseError(message)


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, frozenset):
        return sorted(_round_floats(v) for v in obj)
    return obj


def _render_text(data: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in data.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render_text(value, indent + 1))
        elif isinstance(value, (list, tuple)):
            if all(not isinstance(v, (dict, list, tuple)) for v in value):
                lines.append(f"{pad}{key}: {' '.join(str(v) for v in value) if value else '(none)'}")
            else:
                lines.append(f"{pad}{key}:")
                for v in value:
                    if isinstance(v, dict):
                        lines.append(_render_text(v, indent + 1))
                        lines.append(f"{pad}  -")
                    elif isinstance(v, (list, tuple)):
                        lines.append(f"{pad}  {' '.join(str(x) for x in v)}")
                    else:
                        lines.append(f"{pad}  {v}")
                if lines[-1] == f"{pad}  -":
                    lines.pop()
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)


def _emit(data: dict, as_json: bool) -> str:
    data = _round_floats(data)
    if as_json:
        return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"
    return _render_text(data) + "\n"


def _envelope(command: str, mf: MapFile, extra_assumptions: list[str] | None = None) -> dict:
    assumptions = list(mf.assertions)
    if extra_assumptions:
        assumptions.extend(extra_assumptions)
    return {
        "schema": 1,
        "command": command,
        "map": mf.name,
        "assumptions": assumptions,
    }


def _turn_names(g, t):
    return [g.dart_name(t[0]), g.dart_name(t[1])]


# -- handlers (each returns (exit_code, data)) ---------------------------------

def _cmd_check(mf: MapFile, args) -> tuple[int, dict]:
    f = mf.map
    g = f.graph
    data = _envelope("check", mf)
    problems = validate_graph(g)
    data["graph_valid"] = not problems
    data["graph_problems"] = problems
    data["expanding"] = f.is_expanding
    data["non_expanding_witness"] = f.non_expanding_witness()
    tt = is_train_track(f)
    data["train_track"] = tt
    gt = gates(f)
    data["num_gates"] = len(gt.members)
    data["used_illegal"] = sorted(
        _turn_names(g, t) for t in used_turns(f) if gt.same_gate(t[0], t[1])
    )
    data["two_gates"] = two_gates_everywhere(f)
    prim = is_primitive(transition_matrix(f))
    data["primitive"] = prim
    eq = eigenray_equivalence(f)
    data["equivalence_classes"] = eq.num_classes
    data["classes"] = [[g.dart_name(d) for d in cls] for cls in eq.dart_classes]
    if eq.num_classes > 1:
        data["not_iwip_certificate"] = (
            f"{eq.num_classes} eigenray equivalence classes at periodic vertices; "
            "an irreducible map with irreducible powers admits exactly one"
        )
    else:
        data["not_iwip_certificate"] = None
    ok = (
        data["graph_valid"]
        and data["expanding"]
        and tt
        and data["two_gates"]
        and prim
        and eq.num_classes == 1
    )
    data["pass"] = ok
    return (OK if ok else VIOLATION), data


def _cmd_gates(mf: MapFile, args) -> tuple[int, dict]:
    f = mf.map
    g = f.graph
    data = _envelope("gates", mf)
    gt = gates(f)
    pd = periodic_structures(f)
    out = []
    for v in range(g.num_vertices):
        out.append(
            {
                "vertex": g.vertex_names[v],
                "periodic": pd.vertex_period_of(v) is not None,
                "period": pd.vertex_period_of(v),
                "gates": [
                    [g.dart_name(d) for d in gt.members[gid]] for gid in gt.gates_at(v)
                ],
            }
        )
    data["vertices"] = out
    data["eigen_darts"] = [
        {"dart": g.dart_name(d), "period": p} for d, p in pd.dart_period
    ]
    return OK, data


def _cmd_turns(mf: MapFile, args) -> tuple[int, dict]:
    f = mf.map
    g = f.graph
    data = _envelope("turns", mf)
    tt = turn_table(f)
    rows = []
    for t in tt.turns:
        rows.append(
            {
                "turn": _turn_names(g, t),
                "legal": tt.legal[t],
                "used": t in tt.used,
            }
        )
    data["turns"] = rows
    data["counts"] = {
        "total": len(tt.turns),
        "legal": sum(1 for t in tt.turns if tt.legal[t]),
        "illegal": sum(1 for t in tt.turns if not tt.legal[t]),
        "used": len(tt.used),
        "used_illegal": len(tt.used_illegal()),
    }
    return OK, data


def _cmd_pf(mf: MapFile, args) -> tuple[int, dict]:
    f = mf.map
    g = f.graph
    data = _envelope("pf", mf)
    m = transition_matrix(f)
    data["matrix"] = [[int(x) for x in row] for row in m]
    prim = is_primitive(m)
    data["primitive"] = prim
    if not prim:
        data["error"] = "transition matrix is not primitive"
        return VIOLATION, data
    pf = pf_data(f, tol=args.tol)
    data["lambda"] = pf.lam
    if g.num_edges <= 6:
        data["charpoly"] = charpoly_coefficients(m)
    data["lengths"] = {g.edge_names[i]: pf.pf_lengths[i] for i in range(g.num_edges)}
    data["volume"] = pf.vol_pf
    data["bbt_bound"] = pf.bbt_bound
    data["min_length"] = pf.min_pf_length
    data["c_illegal"] = pf.c_illegal
    data["residual"] = pf.residual
    data["iterations"] = pf.iterations
    return OK, data


def _cmd_inps(mf: MapFile, args) -> tuple[int, dict]:
    f = mf.map
    g = f.graph
    data = _envelope("inps", mf)
    rep = detect_inps(f, max_period=args.max_period, max_pf_len=args.max_pf_len)

    def describe(inp, graph):
        return {
            "path": graph.path_str(inp.path),
            "period": inp.period,
            "tip_index": inp.tip_index,
            "closed": inp.closed,
        }

    data["inps"] = [describe(p, g) for p in rep.inps]
    data["conclusive"] = rep.conclusive
    data["window"] = rep.window
    data["notes"] = list(rep.notes)
    if rep.subdivision is not None:
        data["subdivision"] = {
            "orbit": [
                {"edge": g.edge_names[p.edge], "exponent": p.exponent, "index": p.index, "period": p.period}
                for p in rep.subdivision.orbit
            ],
            "new_vertices": list(rep.subdivision.new_vertices),
            "edge_split": {k: list(v) for k, v in rep.subdivision.edge_split.items()},
        }
        data["subdivided_inps"] = [
            describe(p, rep.subdivision.map.graph) for p in rep.subdivided_inps
        ]
    else:
        data["subdivision"] = None
        data["subdivided_inps"] = []
    stab = stability_check(f, max_period=args.max_period, max_pf_len=args.max_pf_len)
    data["stability"] = {"status": stab.status, "reason": stab.reason}
    return (OK if rep.conclusive else INCONCLUSIVE), data


def _cmd_eigenrays(mf: MapFile, args) -> tuple[int, dict]:
    f = mf.map
    g = f.graph
    data = _envelope("eigenrays", mf)
    pd = periodic_structures(f)
    rays = []
    for d, p in pd.dart_period:
        rays.append(
            {
                "dart": g.dart_name(d),
                "period": p,
                "prefix": g.path_str(eigenray_prefix(f, d, args.length)),
            }
        )
    data["length"] = args.length
    data["rays"] = rays
    return OK, data


def _cmd_bfh(mf: MapFile, args) -> tuple[int, dict]:
    f = mf.map
    g = f.graph
    data = _envelope("bfh", mf)
    lang = leaf_language(f, args.window, max_iter=args.max_iter)
    data["window"] = args.window
    data["count"] = len(lang)
    data["words"] = sorted(g.path_str(w) for w in lang)
    return OK, data


def _cmd_singular(mf: MapFile, args) -> tuple[int, dict]:
    f = mf.map
    g = f.graph
    data = _envelope("singular", mf)
    rep = detect_inps(f)
    sing = singular_leaves(f, rep)
    data["turn_pairs"] = [_turn_names(g, t) for t in sing.turn_pairs]
    data["inp_triples"] = [
        {"entry": g.dart_name(a), "path": g.path_str(p), "exit": g.dart_name(b)}
        for a, p, b in sing.inp_triples
    ]
    data["windows"] = [
        g.path_str(leaf_window(f, item, args.window))
        for item in list(sing.turn_pairs) + list(sing.inp_triples)
    ]
    data["conclusive"] = sing.conclusive
    return (OK if sing.conclusive else INCONCLUSIVE), data


def _cmd_dual(mf: MapFile, args) -> tuple[int, dict]:
    f = mf.map
    g = f.graph
    extra = []
    if mf.asserts_inverse_of() is None:
        if not args.assume_inverse:
            data = _envelope("dual", mf)
            data["error"] = (
                "map file does not assert inverse-of; pass --assume-inverse to proceed"
            )
            return INPUT_ERROR, data
        extra.append("inverse-of (assumed by flag)")
    data = _envelope("dual", mf, extra)
    words = dual_language(f, args.window)
    base = leaf_language(f, args.window)
    data["window"] = args.window
    data["count"] = len(words)
    data["words"] = sorted(g.path_str(w) for w in words)
    data["equals_leaf_language"] = words == base
    return OK, data


def _cmd_illegality(mf: MapFile, args) -> tuple[int, dict]:
    against = parse_map_path(args.against)
    data = _envelope("illegality", mf)
    data["against"] = against.name
    data["assumptions_against"] = list(against.assertions)
    f_src = mf.map
    f_ref = against.map
    if (
        f_ref.graph.edge_names != f_src.graph.edge_names
        or f_ref.graph.vertex_names != f_src.graph.vertex_names
        or f_ref.graph.dart_origin != f_src.graph.dart_origin
    ):
        raise IncompatibleGraphsError("maps live on different graphs")
    use_dual = mf.asserts_inverse_of() is not None
    words = dual_language(f_src, args.window) if use_dual else leaf_language(f_src, args.window)
    prof = illegality_profile(f_ref, sorted(words))
    data["language"] = "dual" if use_dual else "leaf"
    data["window"] = args.window
    data["words"] = prof.words
    data["max_run"] = prof.max_run
    data["histogram"] = [list(h) for h in prof.histogram]
    data["c_illegal"] = prof.c_illegal
    data["all_below"] = prof.all_below
    return OK, data


def _cmd_contract(mf: MapFile, args) -> tuple[int, dict]:
    f = mf.map
    g = f.graph
    data = _envelope("contract", mf)
    word = g.parse_path(args.word)
    rep = ilt_contraction(f, word, steps=args.steps, chop=args.chop)
    data["word"] = g.path_str(word)
    data["series"] = list(rep.series)
    data["chop"] = rep.chop
    data["block"] = rep.block
    data["reached_le_one"] = rep.reached_le_one
    data["step_reached"] = rep.step_reached
    return OK, data


_HANDLERS = {
    "check": _cmd_check,
    "gates": _cmd_gates,
    "turns": _cmd_turns,
    "pf": _cmd_pf,
    "inps": _cmd_inps,
    "eigenrays": _cmd_eigenrays,
    "bfh": _cmd_bfh,
    "singular": _cmd_singular,
    "dual": _cmd_dual,
    "illegality": _cmd_illegality,
    "contract": _cmd_contract,
}


def _build_parser() -> _CliParser:
    p = _CliParser(prog="ttlam", description="Train track map analysis")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("mapfile", help="path to a .tt map file")
        sp.add_argument("--json", action="store_true", help="canonical JSON output")
        return sp

    add("check", "validate graph, expansion, train track, gates, primitivity")
    add("gates", "gate partition, periodic vertices, eigen darts")
    add("turns", "legal/used table over all turns")
    sp = add("pf", "dominant eigenvalue and edge lengths")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp = add("inps", "detect periodic indivisible Nielsen paths")
    sp.add_argument("--max-period", type=int, default=6)
    sp.add_argument("--max-pf-len", type=float, default=None)
    sp = add("eigenrays", "prefixes of the invariant rays")
    sp.add_argument("--length", type=int, default=32)
    sp = add("bfh", "leaf language of iterated edge images")
    sp.add_argument("--window", type=int, required=True)
    sp.add_argument("--max-iter", type=int, default=400)
    sp = add("singular", "singular leaves beyond the leaf language")
    sp.add_argument("--window", type=int, default=16)
    sp = add("dual", "dual lamination language (inverse-direction map)")
    sp.add_argument("--window", type=int, required=True)
    sp.add_argument("--assume-inverse", action="store_true")
    sp = add("illegality", "legal-run profile of one map's language in another's gates")
    sp.add_argument("--against", required=True, help="reference map file")
    sp.add_argument("--window", type=int, required=True)
    sp = add("contract", "chopped illegal-turn series under iteration")
    sp.add_argument("--word", required=True, help="path literal, e.g. 'a b~ c'")
    sp.add_argument("--steps", type=int, default=None)
    sp.add_argument("--chop", type=int, default=None)
    return p


def run_command(argv: list[str]) -> tuple[int, str]:
    """Execute one CLI invocation; returns (exit code, report text)."""
    try:
        args = _build_parser().parse_args(argv)
        mf = parse_map_path(args.mapfile)
        code, data = _HANDLERS[args.command](mf, args)
        return code, _emit(data, args.json)
    except (ParseError, GraphError, MapError, IncompatibleGraphsError, OSError) as exc:
        payload = {"schema": 1, "error": str(exc), "kind": "input"}
        as_json = "--json" in argv
        return INPUT_ERROR, _emit(payload, as_json)
    except (NotExpandingError, NotTrainTrackError, NotPrimitiveError, SubdivisionError) as exc:
        payload = {"schema": 1, "error": str(exc), "kind": "property"}
        return VIOLATION, _emit(payload, "--json" in argv)
    except (BudgetExceededError, ConvergenceError) as exc:
        payload = {"schema": 1, "error": str(exc), "kind": "inconclusive"}
        return INCONCLUSIVE, _emit(payload, "--json" in argv)
    except TtError as exc:
        payload = {"schema": 1, "error": str(exc), "kind": "input"}
        return INPUT_ERROR, _emit(payload, "--json" in argv)


def main() -> None:
    code, text = run_command(sys.argv[1:])
    sys.stdout.write(text)
    sys.exit(code)


if __name__ == "__main__":
    main()
