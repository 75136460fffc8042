"""
Command-line interface for pfrees.
Construction commands over the matrix families, the claim registry and
certificate replay, with text or newline-delimited JSON output.
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from .budget import Budget
from .certificates import CertificateManager
from .claims import PASS, ClaimRegistry, family_matrix, replay_certificate, run_claims
from .covergraph import (
    LabeledGraph,
    build_G,
    cover_census,
    cover_ideal,
    is_unmixed,
    minimal_vertex_covers,
)
from .data_manager import Settings, load_settings
from .diagonal import diagonal_dimension_check, diagonal_presentation_11, diagonal_reduce
from .error_handler import (
    EXIT_BUDGET,
    EXIT_CLAIM_FAILED,
    EXIT_PASS,
    EXIT_USAGE,
    BudgetExceededError,
    PfreesError,
    ValidationError,
    error_handler,
)
from .koszulcheck import koszul_certify, koszul_refute_via_powers
from .matalg import SkewMatrix, parse_skew_text
from .pfideal import (
    PfaffianIdeal,
    pf_ideal_general,
    pf_ideal_maximal,
    pfaffian_ideal_summary,
    tridiagonal_generators_closed_form,
)
from .polyring import MonomialOrder
from .rees import (
    ReesPresentation,
    blockx4_order,
    blockx4_relations,
    d_sequence_check,
    explicit_generic_relations,
    linear_type_verdict,
    m_sequence_check,
    rees_by_elimination,
    tridiagonal_taylor_relations,
)
from .resolution import betti_table

logger = logging.getLogger("pfrees.cli")


class Output:
    """Collects report objects and writes them as text or JSON lines."""

    def __init__(self, fmt: str, path: Optional[str]):
        self.fmt = fmt
        self.path = path
        self.lines: List[str] = []

    def emit(self, payload: Dict[str, Any], text: str) -> None:
        if self.fmt == "json":
            self.lines.append(json.dumps({"schema": 1, **payload}, sort_keys=True))
        else:
            self.lines.append(text)

    def flush(self) -> None:
        body = "\n".join(self.lines)
        if self.path:
            with open(self.path, 'w') as f:
                f.write(body + "\n")
        elif body:
            print(body)
        self.lines = []


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--order", help="monomial order, e.g. grevlex or grlex:x1_2>x2_3")
    parser.add_argument("--budget-seconds", type=float, help="wall-clock budget in seconds")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--out", help="write the report to this file")


def _add_family(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--generic", type=int, metavar="N", help="generic skew matrix of odd order N")
    group.add_argument("--tridiagonal", type=int, metavar="N", help="tridiagonal skew matrix of odd order N")
    group.add_argument("--blockx4", type=int, metavar="R", help="block matrix of order 2R+1")
    group.add_argument("--sparse7", action="store_true", help="the sparse 7x7 pattern")
    group.add_argument("--alternate5", action="store_true", help="the alternative 5x5 pattern")
    group.add_argument("--custom", metavar="FILE", help="skew matrix, one row per line, entries separated by ;")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfrees", description="Exact computations with Pfaffian ideals, "
                                     "their Rees algebras, resolutions and diagonals.")
    parser.add_argument("--config", help="settings file (TOML)")
    parser.add_argument("--log-level", help="logging level")
    parser.add_argument("--log-file", help="log file path")
    sub = parser.add_subparsers(dest="command", required=True)

    pf = sub.add_parser("pf", help="Pfaffian ideal generators")
    _add_family(pf)
    pf.add_argument("--t", type=int, help="order of the principal sub-Pfaffians (default: maximal)")
    pf.add_argument("--closed-form", action="store_true", help="closed-form tridiagonal generators")
    _add_common(pf)

    rees = sub.add_parser("rees", help="Rees algebra presentation")
    _add_family(rees)
    rees.add_argument("--method", choices=["elimination", "explicit", "taylor", "blockx4"], default="elimination")
    rees.add_argument("--verdict", action="store_true", help="decide (Groebner) linear type")
    _add_common(rees)

    betti = sub.add_parser("betti", help="Betti table of B/I for a Pfaffian ideal")
    _add_family(betti)
    betti.add_argument("--t", type=int)
    _add_common(betti)

    diag = sub.add_parser("diag", help="(1,1) diagonal presentation")
    _add_family(diag)
    diag.add_argument("--reduce", action="store_true", help="eliminate identified variables")
    diag.add_argument("--minimal", action="store_true", help="also report a minimal generating subset")
    diag.add_argument("--dimension", type=int, metavar="EXPECTED", help="check the (d+1,1) diagonal dimension")
    diag.add_argument("--method", choices=["auto", "presentation", "jacobian"], default="auto")
    _add_common(diag)

    graph = sub.add_parser("graph", help="cover graph of the tridiagonal family")
    source = graph.add_mutually_exclusive_group(required=True)
    source.add_argument("--n", type=int, help="odd order of the tridiagonal matrix")
    source.add_argument("--edges", metavar="FILE", help="edge list '(i j) -- (k l)' per line")
    _add_common(graph)

    koszul = sub.add_parser("koszul", help="Koszul certificates and refutations")
    _add_family(koszul)
    koszul.add_argument("--method", choices=["elimination", "explicit", "taylor", "blockx4"], default="elimination")
    koszul.add_argument("--refute", type=int, metavar="J_MAX", help="test powers up to J_MAX instead")
    _add_common(koszul)

    seq = sub.add_parser("seq", help="d-sequence and monomial sequence checks of the Pfaffian generators")
    _add_family(seq)
    seq.add_argument("--kind", choices=["d", "unconditioned", "m"], default="d")
    seq.add_argument("--closed-form", action="store_true")
    _add_common(seq)

    verify = sub.add_parser("verify", help="run registry claims")
    verify.add_argument("ids", nargs="*", help="claim ids")
    verify.add_argument("--all", action="store_true")
    verify.add_argument("--skip", choices=["heavy"], help="skip tagged claims")
    verify.add_argument("--replay", metavar="FILE", help="replay a stored certificate")
    verify.add_argument("--list", action="store_true", help="list claim ids")
    verify.add_argument("--jobs", type=int)
    verify.add_argument("--certificate-dir")
    verify.add_argument("--budget-seconds", type=float)
    verify.add_argument("--format", choices=["text", "json"], default="text")
    verify.add_argument("--out")
    return parser


def _matrix(args) -> SkewMatrix:
    if args.custom:
        with open(args.custom, 'r') as f:
            return parse_skew_text(f.read())
    if args.sparse7:
        return family_matrix("sparse7")
    if args.alternate5:
        return family_matrix("alternate5")
    for family in ("generic", "tridiagonal", "blockx4"):
        size = getattr(args, family)
        if size is not None:
            return family_matrix(family, size)
    raise ValidationError("no matrix family given")


def _pf_ideal(args) -> PfaffianIdeal:
    X = _matrix(args)
    t = getattr(args, "t", None)
    if t is not None:
        return pf_ideal_general(X, t)
    if X.n == 0:
        return PfaffianIdeal(X, 0, [], [])
    return pf_ideal_maximal(X)


def _budget(args, settings: Settings) -> Budget:
    seconds = args.budget_seconds if args.budget_seconds is not None else settings.budget_seconds
    return Budget(seconds)


def _presentation(args, budget: Budget) -> ReesPresentation:
    method = args.method
    if method == "explicit":
        if args.generic is None:
            raise ValidationError("--method explicit needs --generic")
        return explicit_generic_relations(args.generic)
    if method == "taylor":
        if args.tridiagonal is None:
            raise ValidationError("--method taylor needs --tridiagonal")
        return tridiagonal_taylor_relations((args.tridiagonal - 1) // 2)
    if method == "blockx4":
        if args.blockx4 is None:
            raise ValidationError("--method blockx4 needs --blockx4")
        return blockx4_relations(args.blockx4)
    return rees_by_elimination(_pf_ideal(args).ideal(), budget)


def _orders(args, ring) -> List[MonomialOrder]:
    return [MonomialOrder.parse(args.order, ring)] if args.order else []


def cmd_pf(args, settings: Settings, out: Output) -> int:
    if args.closed_form:
        if args.tridiagonal is None:
            raise ValidationError("--closed-form needs --tridiagonal")
        gens = tridiagonal_generators_closed_form((args.tridiagonal - 1) // 2)
        out.emit({"command": "pf", "closed_form": True, "gens": [g.to_json() for g in gens]},
                 "\n".join(str(g) for g in gens))
        return EXIT_PASS
    P = _pf_ideal(args)
    summary = pfaffian_ideal_summary(P) if P.source.n else {"generators": 0}
    out.emit({"command": "pf", "summary": summary, "gens": [g.to_json() for g in P.gens]},
             "\n".join(str(g) for g in P.gens))
    return EXIT_PASS


def cmd_rees(args, settings: Settings, out: Output) -> int:
    budget = _budget(args, settings)
    R = _presentation(args, budget)
    payload: Dict[str, Any] = {"command": "rees", "presentation": R.to_json()}
    lines = [str(g) for g in R.defining_gens]
    if args.verdict:
        verdict = linear_type_verdict(R, _orders(args, R.ring), budget)
        payload["verdict"] = verdict.to_json(R.ring)
        lines.append(verdict.status.value)
    out.emit(payload, "\n".join(lines))
    return EXIT_PASS


def cmd_betti(args, settings: Settings, out: Output) -> int:
    I = _pf_ideal(args).ideal()
    order = MonomialOrder.parse(args.order, I.ring) if args.order else None
    table = betti_table(I, budget=_budget(args, settings), order=order)
    out.emit({"command": "betti", "table": table.to_json()}, table.render())
    return EXIT_PASS


def cmd_diag(args, settings: Settings, out: Output) -> int:
    budget = _budget(args, settings)
    R = rees_by_elimination(_pf_ideal(args).ideal(), budget)
    D = diagonal_presentation_11(R)
    payload: Dict[str, Any] = {"command": "diag", "presentation": D.to_json()}
    lines = ["extra: " + str(g) for g in D.extra_gens]
    if args.reduce:
        reduced = diagonal_reduce(D)
        payload["reduced"] = reduced.to_json()
        lines += ["reduced: " + str(g) for g in reduced.gens]
    if args.minimal:
        minimal = D.minimal_ideal(budget)
        payload["minimal"] = minimal.to_json()
        lines += ["minimal: " + str(g) for g in minimal.gens]
    status = EXIT_PASS
    if args.dimension is not None:
        ok = diagonal_dimension_check(R, args.dimension, method=args.method, budget=budget)
        payload["dimension_check"] = ok
        lines.append(f"dimension {args.dimension}: {'PASS' if ok else 'FAIL'}")
        status = EXIT_PASS if ok else EXIT_CLAIM_FAILED
    out.emit(payload, "\n".join(lines))
    return status


def cmd_graph(args, settings: Settings, out: Output) -> int:
    if args.edges:
        with open(args.edges, 'r') as f:
            G = LabeledGraph.from_text(f.read())
    else:
        G = build_G(args.n)
    covers = minimal_vertex_covers(G)
    payload: Dict[str, Any] = {"command": "graph", "graph": G.to_json(),
                               "covers": [[list(v) for v in c] for c in covers],
                               "census": {str(k): v for k, v in cover_census(covers).items()},
                               "unmixed": is_unmixed(covers)}
    lines = [G.to_text(), ""]
    lines += ["{" + ", ".join(f"({a} {b})" for a, b in c) + "}" for c in covers]
    lines.append(f"unmixed: {is_unmixed(covers)}")
    if args.n is not None:
        ideal = cover_ideal(G)
        payload["cover_ideal"] = ideal.to_json()
        lines.append("cover ideal: " + ", ".join(str(g) for g in ideal.gens))
    out.emit(payload, "\n".join(lines))
    return EXIT_PASS


def cmd_koszul(args, settings: Settings, out: Output) -> int:
    budget = _budget(args, settings)
    if args.refute is not None:
        verdict = koszul_refute_via_powers(_pf_ideal(args).ideal(), args.refute, budget)
    else:
        R = _presentation(args, budget)
        orders = _orders(args, R.ring)
        if not orders and args.method == "blockx4":
            orders = [blockx4_order(R)]
        verdict = koszul_certify(R, orders, budget, settings.order_pool_sample, settings.order_pool_seed)
    out.emit({"command": "koszul", "verdict": verdict.to_json()},
             f"{verdict.status.value} ({verdict.kind.value})")
    return EXIT_PASS


def cmd_seq(args, settings: Settings, out: Output) -> int:
    budget = _budget(args, settings)
    if args.closed_form:
        if args.tridiagonal is None:
            raise ValidationError("--closed-form needs --tridiagonal")
        gens = tridiagonal_generators_closed_form((args.tridiagonal - 1) // 2)
    else:
        gens = _pf_ideal(args).gens
    if args.kind == "m":
        verdict = m_sequence_check(gens)
    else:
        verdict = d_sequence_check(gens, args.kind == "unconditioned", budget)
    out.emit({"command": "seq", "verdict": verdict.to_json()}, f"{verdict.kind.value}: {verdict.status.value}")
    return EXIT_PASS if verdict.holds else EXIT_CLAIM_FAILED


def cmd_verify(args, settings: Settings, out: Output) -> int:
    if args.replay:
        data = CertificateManager(settings.certificate_dir).load(args.replay)
        ok = replay_certificate(data, args.budget_seconds)
        out.emit({"command": "verify", "replay": args.replay, "claim": data["claim"],
                  "status": PASS if ok else "FAIL"}, f"{data['claim']}: {'PASS' if ok else 'FAIL'}")
        return EXIT_PASS if ok else EXIT_CLAIM_FAILED
    registry = ClaimRegistry()
    if args.list:
        for claim_id in registry.ids():
            record = registry.get(claim_id)
            out.emit(record.to_json(), f"{claim_id}{' [heavy]' if record.heavy else ''}: {record.description}")
        return EXIT_PASS
    if args.all:
        ids = registry.ids(skip_heavy=args.skip == "heavy")
    elif args.ids:
        ids = args.ids
    else:
        raise ValidationError("give claim ids, --all, --list or --replay")
    records = [registry.get(i) for i in ids]
    jobs = args.jobs if args.jobs is not None else settings.jobs
    results = run_claims(records, jobs, args.budget_seconds, settings.certificate_dir)
    for result in results:
        out.emit(result.to_json(), f"{result.id}: {result.status} ({result.wall_ms} ms)")
    if any(r.status == "BUDGET" for r in results) and all(r.status in (PASS, "BUDGET") for r in results):
        return EXIT_BUDGET
    return EXIT_PASS if all(r.status == PASS for r in results) else EXIT_CLAIM_FAILED


COMMANDS = {
    "pf": cmd_pf,
    "rees": cmd_rees,
    "betti": cmd_betti,
    "diag": cmd_diag,
    "graph": cmd_graph,
    "koszul": cmd_koszul,
    "seq": cmd_seq,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    out = Output(args.format, args.out)
    try:
        settings = load_settings(args.config).override(log_level=args.log_level, log_file=args.log_file)
        error_handler.configure(settings.log_file, settings.log_level)
        status = COMMANDS[args.command](args, settings, out)
        out.flush()
        return status
    except BudgetExceededError as e:
        message = error_handler.handle_error(e, {"command": args.command})
        out.emit({"command": args.command, "status": "BUDGET", "elapsed_s": e.elapsed_s,
                  "partial": _partial_json(e.partial)}, message)
        out.flush()
        return EXIT_BUDGET
    except PfreesError as e:
        message = error_handler.handle_error(e, {"command": args.command})
        print(message, file=sys.stderr)
        return error_handler.exit_code(e)
    except OSError as e:
        print(error_handler.handle_error(e, {"command": args.command}), file=sys.stderr)
        return EXIT_USAGE


def _partial_json(partial: Any) -> Any:
    if partial is None:
        return None
    if isinstance(partial, (list, tuple)):
        return [p.to_json() if hasattr(p, "to_json") else str(p) for p in partial]
    return partial.to_json() if hasattr(partial, "to_json") else str(partial)


if __name__ == "__main__":
    sys.exit(main())
