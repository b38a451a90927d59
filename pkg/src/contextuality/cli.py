"""`ctx`: command-line front end with stable JSON file formats.

Exit codes: 0 = computed (or positive decision), 1 = negative decision,
2 = usage/input error, 3 = inconclusive or budget exhausted.  Every report
carries ``tool_version``, ``inputs_hash``, ``result`` and ``certificate``;
re-running a command on the same inputs yields byte-identical JSON.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .catalog import catalog_get, catalog_list
from .equivalence import completion_check
from .errors import BudgetExceeded, ContextualityError
from .graphs import WeightedGraph, alpha, alpha_star, capacity_bounds, lovasz_theta
from .hierarchy import ce_infinity, ce_level, ece_membership, q1_membership_theta, q_membership
from .models import validate_model
from .polytope import (
    Certificate,
    allows_classical,
    allows_general,
    check_certificate,
    extremal_models,
    is_classical,
)
from .products import direct_product, fr_product, max_product, min_product
from .rational import format_rational
from .scenario import Scenario, non_orthogonality_graph

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2
EXIT_INCONCLUSIVE = 3


def _scaled(args, default_cap: int) -> int:
    return max(1, int(default_cap * args.budget))


def _read_json(path: str) -> tuple[dict, bytes]:
    with open(path, "rb") as fh:
        raw = fh.read()
    return json.loads(raw.decode("utf-8")), raw


def _load_scenario(path: str):
    data, raw = _read_json(path)
    return Scenario.from_jsonable(data), data, raw


def _load_model(scenario: Scenario, path: str):
    data, raw = _read_json(path)
    return validate_model(scenario, data["weights"], name=data.get("scenario", "")), data, raw


def _load_graph(path: str):
    data, raw = _read_json(path)
    return WeightedGraph.from_jsonable(data), data, raw


def _hash(*blobs: bytes) -> str:
    h = hashlib.sha256()
    for b in blobs:
        h.update(b)
    return h.hexdigest()


def _emit(command: str, inputs_hash: str, result, certificate=None, inputs=None) -> None:
    def conv(x):
        if isinstance(x, Fraction):
            return format_rational(x)
        if isinstance(x, Certificate):
            return x.to_jsonable()
        if isinstance(x, dict):
            return {str(k): conv(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [conv(v) for v in x]
        return x

    report = {
        "tool_version": __version__,
        "command": command,
        "inputs_hash": inputs_hash,
        "result": conv(result),
        "certificate": conv(certificate) if certificate is not None else None,
    }
    if inputs is not None:
        report["inputs"] = conv(inputs)
    print(json.dumps(report, sort_keys=True, indent=2))


def _write_scenario(s: Scenario, path: str | None):
    text = json.dumps(s.to_jsonable(), sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")


# -- subcommand implementations ---------------------------------------------


def _cmd_validate(args) -> int:
    s, sdata, raw = _load_scenario(args.scenario)
    blobs = [raw]
    result = {"scenario": s.name, "vertices": len(s.vertices), "edges": len(s.edges),
              "antichain": s.is_antichain}
    if args.model:
        _, mdata, mraw = _load_model(s, args.model)
        blobs.append(mraw)
        result["model"] = "valid"
    _emit("validate", _hash(*blobs), result)
    return EXIT_OK


def _cmd_no_graph(args) -> int:
    s, _, raw = _load_scenario(args.scenario)
    g = non_orthogonality_graph(s)
    if args.dot:
        lines = ["graph no {"]
        for v in g.vertices:
            lines.append(f'  "{v}";')
        for u, v in g.edge_list():
            lines.append(f'  "{u}" -- "{v}";')
        lines.append("}")
        text = "\n".join(lines) + "\n"
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            print(text, end="")
        return EXIT_OK
    payload = json.dumps(g.to_jsonable(), sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload)
    else:
        print(payload, end="")
    return EXIT_OK


def _cmd_product(args) -> int:
    loaded = [_load_scenario(p) for p in args.scenarios]
    factors = [s for s, _, _ in loaded]
    if args.kind == "direct":
        out = factors[0]
        for f in factors[1:]:
            out = direct_product(out, f)
    elif args.kind == "fr":
        out = factors[0]
        for f in factors[1:]:
            out = fr_product(out, f)
    elif args.kind == "min":
        out = min_product(factors)
    else:
        out = max_product(factors)
    _write_scenario(out, args.output)
    return EXIT_OK


def _cmd_catalog(args) -> int:
    if args.action == "list":
        print(json.dumps(catalog_list(), indent=2))
        return EXIT_OK
    entry = catalog_get(args.key)
    _write_scenario(entry.scenario, args.output)
    if args.models:
        base = args.output or f"{entry.key}.json"
        for name, model in sorted(entry.models.items()):
            path = base.replace(".json", f".{name}.json")
            with open(path, "w") as fh:
                json.dump(model.to_jsonable(), fh, sort_keys=True, indent=2)
                fh.write("\n")
    return EXIT_OK


def _cmd_decide(args) -> int:
    s, sdata, raw = _load_scenario(args.scenario)
    if args.question == "allows-general":
        ok, cert = allows_general(s)
    else:
        ok, cert = allows_classical(s, node_cap=_scaled(args, 1_000_000))
    _emit("decide", _hash(raw), {"question": args.question, "answer": ok},
          certificate=cert, inputs={"scenario": sdata})
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_membership(args) -> int:
    s, sdata, raw = _load_scenario(args.scenario)
    model, mdata, mraw = _load_model(s, args.model)
    inputs = {"scenario": sdata, "model": mdata}
    h = _hash(raw, mraw)
    which = args.set
    if which == "C":
        ok, cert = is_classical(model)
        _emit("membership", h, {"set": which, "answer": ok}, cert, inputs)
        return EXIT_OK if ok else EXIT_NEGATIVE
    if which in ("Q1", "ECE"):
        tol = args.tol if args.tol is not None else 1e-5
        verdict, value, report = (
            q1_membership_theta(s, model, tol=tol)
            if which == "Q1"
            else ece_membership(s, model, tol=tol)
        )
        cert = Certificate("sdp_report", {"theta": value, "residuals": report.residuals})
        _emit("membership", h, {"set": which, "answer": verdict}, cert, inputs)
        return {"in": EXIT_OK, "out": EXIT_NEGATIVE}.get(verdict, EXIT_INCONCLUSIVE)
    if which == "Qn":
        verdict, report = q_membership(s, model, args.level,
                                       tol=args.tol if args.tol is not None else 1e-7)
        cert = Certificate("sdp_report", {"level": args.level, "residuals": report.residuals})
        _emit("membership", h, {"set": which, "level": args.level, "answer": verdict}, cert, inputs)
        return {"in": EXIT_OK, "out": EXIT_NEGATIVE}.get(verdict, EXIT_INCONCLUSIVE)
    if which in ("CE1", "CEn"):
        level = 1 if which == "CE1" else args.level
        ok, cert = ce_level(s, model, level, alpha_node_cap=_scaled(args, 5_000_000))
        _emit("membership", h, {"set": which, "level": level, "answer": ok}, cert, inputs)
        return EXIT_OK if ok else EXIT_NEGATIVE
    # CEinf
    verdict, cert = ce_infinity(s, model, max_power=max(2, args.level),
                                tol=args.tol if args.tol is not None else 1e-5)
    _emit("membership", h, {"set": which, "answer": verdict}, cert, inputs)
    return {"in": EXIT_OK, "out": EXIT_NEGATIVE}.get(verdict, EXIT_INCONCLUSIVE)


def _cmd_extremals(args) -> int:
    s, sdata, raw = _load_scenario(args.scenario)
    ems = extremal_models(s, support_cap=_scaled(args, 100_000))
    result = {
        "count": len(ems),
        "deterministic": sum(1 for e in ems if e.is_deterministic),
        "models": [
            {
                "support": list(e.support),
                "deterministic": e.is_deterministic,
                "weights": {v: e.model.weights[v] for v in e.support},
            }
            for e in ems
        ],
    }
    _emit("extremals", _hash(raw), result, inputs={"scenario": sdata})
    return EXIT_OK


def _cmd_invariant(args) -> int:
    g, gdata, raw = _load_graph(args.graph)
    blobs = [raw]
    if args.weights:
        wdata, wraw = _read_json(args.weights)
        g = g.with_weights(wdata["weights"] if "weights" in wdata else wdata)
        blobs.append(wraw)
    h = _hash(*blobs)
    ginputs = {"graph": g.to_jsonable()}
    if args.which == "alpha":
        value, witness = alpha(g)
        _emit("invariant", h, {"invariant": "alpha", "value": value},
              Certificate("independent_set", {"vertices": list(witness), "weight": value}),
              inputs=ginputs)
    elif args.which == "alphastar":
        value = alpha_star(g)
        _emit("invariant", h, {"invariant": "alphastar", "value": value}, inputs=ginputs)
    elif args.which == "theta":
        report = lovasz_theta(g, tol=args.tol if args.tol is not None else 1e-7)
        _emit("invariant", h, {"invariant": "theta", "value": report.value},
              Certificate("sdp_report", {"residuals": report.residuals}),
              inputs=ginputs)
        if report.status == "inconclusive":
            return EXIT_INCONCLUSIVE
    else:
        bounds = capacity_bounds(g, max_power=args.power)
        _emit("invariant", h, {
            "invariant": "capacity",
            "lower": bounds["lower"],
            "lower_pair": [bounds["lower_pair"][0], bounds["lower_pair"][1]],
            "upper": bounds["upper"],
            "single_shot": bounds["single_shot"],
        })
    return EXIT_OK


def _cmd_equivalence(args) -> int:
    s1, d1, raw1 = _load_scenario(args.first)
    s2, d2, raw2 = _load_scenario(args.second)
    verdict = completion_check(s1, s2, depth=args.depth, max_subset_size=args.size)
    _emit("equivalence", _hash(raw1, raw2), {"verdict": verdict},
          inputs={"first": d1, "second": d2})
    return EXIT_OK if verdict == "equivalent" else EXIT_INCONCLUSIVE


def _cmd_verify(args) -> int:
    report, _ = _read_json(args.report)
    cert = report.get("certificate")
    inputs = report.get("inputs") or {}
    if cert is None:
        print("nothing to verify: report carries no certificate", file=sys.stderr)
        return EXIT_ERROR
    if "graph" in inputs and cert["kind"] == "independent_set":
        graph = WeightedGraph.from_jsonable(inputs["graph"])
        verts = cert["payload"]["vertices"]
        from .rational import parse_rational

        independent = all(
            not graph.adjacent(u, v)
            for i, u in enumerate(verts)
            for v in verts[i + 1 :]
        )
        total = sum((graph.weights[v] for v in verts), Fraction(0))
        ok = independent and total == parse_rational(cert["payload"]["weight"])
        _emit("verify", report.get("inputs_hash", ""),
              {"certificate_kind": cert["kind"], "verified": ok})
        return EXIT_OK if ok else EXIT_NEGATIVE
    if "scenario" not in inputs:
        print("report does not embed its inputs", file=sys.stderr)
        return EXIT_ERROR
    scenario = Scenario.from_jsonable(inputs["scenario"])
    model = None
    if "model" in inputs:
        model = validate_model(scenario, inputs["model"]["weights"])
    ok = check_certificate(Certificate(cert["kind"], cert["payload"]), scenario, model)
    _emit("verify", report.get("inputs_hash", ""), {"certificate_kind": cert["kind"], "verified": ok})
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    # the global flags are also accepted after the subcommand; SUPPRESS keeps
    # the root-level defaults when a subcommand leaves them unset
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="numeric tolerance for SDP verdicts")
    common.add_argument("--budget", type=float, default=argparse.SUPPRESS,
                        help="budget multiplier (overridden by CTX_BUDGET_OVERRIDE)")

    ap = argparse.ArgumentParser(prog="ctx", description=__doc__)
    ap.add_argument("--tol", type=float, default=None,
                    help="numeric tolerance override (module defaults when omitted)")
    ap.add_argument("--budget", type=float, default=1.0,
                    help="budget multiplier (overridden by CTX_BUDGET_OVERRIDE)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a scenario (and optionally a model)")
    p.add_argument("scenario")
    p.add_argument("model", nargs="?", default=None)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("no-graph", parents=[common], help="non-orthogonality graph of a scenario")
    p.add_argument("scenario")
    p.add_argument("-o", "--output")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=_cmd_no_graph)

    p = sub.add_parser("product", parents=[common], help="product of scenarios")
    p.add_argument("--kind", choices=["direct", "fr", "min", "max"], required=True)
    p.add_argument("scenarios", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("catalog", parents=[common], help="named scenario corpus")
    p.add_argument("action", choices=["list", "get"])
    p.add_argument("key", nargs="?")
    p.add_argument("-o", "--output")
    p.add_argument("--models", action="store_true")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("decide", parents=[common], help="existence decisions")
    p.add_argument("question", choices=["allows-general", "allows-classical"])
    p.add_argument("scenario")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("membership", parents=[common], help="model-set membership decisions")
    p.add_argument("--set", required=True,
                   choices=["C", "Q1", "Qn", "CE1", "CEn", "CEinf", "ECE"])
    p.add_argument("--level", type=int, default=1)
    p.add_argument("scenario")
    p.add_argument("model")
    p.set_defaults(func=_cmd_membership)

    p = sub.add_parser("extremals", parents=[common], help="extreme points of the model polytope")
    p.add_argument("scenario")
    p.set_defaults(func=_cmd_extremals)

    p = sub.add_parser("invariant", parents=[common], help="weighted graph invariants")
    p.add_argument("which", choices=["alpha", "alphastar", "theta", "capacity"])
    p.add_argument("graph")
    p.add_argument("--weights")
    p.add_argument("--power", type=int, default=2)
    p.set_defaults(func=_cmd_invariant)

    p = sub.add_parser("equivalence", parents=[common], help="completion equivalence of two scenarios")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--size", type=int, default=8)
    p.set_defaults(func=_cmd_equivalence)

    p = sub.add_parser("verify", parents=[common], help="re-check a report's certificate")
    p.add_argument("report")
    p.set_defaults(func=_cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    override = os.environ.get("CTX_BUDGET_OVERRIDE")
    if override:
        args.budget = float(override)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (ContextualityError, OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
