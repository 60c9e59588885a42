"""Command-line interface.

Exit codes: 0 success, 1 oracle mismatch, 2 validation failure,
3 I/O failure, 4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Sequence

from . import render
from .core import (
    DEFAULT_CAP,
    CaseBase,
    Side,
    dumps_case_base,
    format_names,
    inconsistencies,
    load_case_base,
)
from .dsa import build_framework
from .errors import CapExceededError, InternalConsistencyError, UnknownFactorError, ValidationError
from .explain import build_dispute_tree, explain_decision, is_admissible_tree
from .oracle import run_oracle
from .reason import decide

EXIT_OK = 0
EXIT_ORACLE_MISMATCH = 1
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_CAP = 4


@dataclass(frozen=True)
class RunConfiguration:
    casebase_path: str
    facts: tuple[str, ...] | None = None
    side: Side | None = None
    cap: int = DEFAULT_CAP
    output_mode: str = "text"
    all_defenses: bool = False
    annotate: bool = False
    trials: int = 0
    seed: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfiguration:
        mode = "dot" if getattr(args, "dot", False) else "text"
        if getattr(args, "structured", False):
            mode = "structured"
        facts = getattr(args, "facts", None)
        side = getattr(args, "side", None)
        return cls(
            casebase_path=args.casebase,
            facts=None if facts is None else tuple(f.strip() for f in facts.split(",") if f.strip()),
            side=Side(side) if side else None,
            cap=args.cap,
            output_mode=mode,
            all_defenses=getattr(args, "all_defenses", False),
            annotate=getattr(args, "annotate", False),
            trials=getattr(args, "trials", 0),
            seed=getattr(args, "seed", 0),
        )


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="precedent-dsa",
        description="Precedential constraint with inconsistent case bases, explained by dispute trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("casebase", help="case-base JSON file")
    common.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="enumeration cap (factors)")

    def command(name, help, facts=None, dot=False):
        p = sub.add_parser(name, parents=[common], help=help)
        if facts is not None:
            p.add_argument("--facts", required=facts, help="comma-separated factor names")
        output = p.add_mutually_exclusive_group()
        output.add_argument("--structured", action="store_true", help="emit a JSON document")
        if dot:
            output.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
        return p

    command("validate", "check a case-base file")
    command("inc", "list the inconsistencies of a case base")
    p = command("diagram", "DOT diagram of induced priorities", facts=False)
    p.add_argument("--side", choices=[s.value for s in Side], help="overlay only this side")
    command("decide", "decide a fact situation", facts=True)
    p = command("framework", "derivation-state framework", facts=True, dot=True)
    p.add_argument("--annotate", action="store_true", help="add remarks about sub-bases")
    p = command("explain", "explanations as dispute trees", facts=True, dot=True)
    p.add_argument("--side", choices=[s.value for s in Side])
    p.add_argument("--all-defenses", action="store_true", help="every admissible defence per root")
    p.add_argument("--annotate", action="store_true", help="also show rejected trees")
    p = command("oracle", "cross-check against brute-force oracles", facts=False)
    p.add_argument("--trials", type=int, default=0, help="extra random instances over the universe")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _facts(cb: CaseBase, cfg: RunConfiguration):
    return cb.situation(cfg.facts or ())


def cmd_validate(cb: CaseBase, cfg: RunConfiguration) -> int:
    if cfg.output_mode == "structured":
        _emit(render.dumps({"valid": True, "cases": len(cb), "factors": len(cb.universe)}))
    else:
        _emit(f"ok: {len(cb)} cases, {len(cb.universe)} factors\n")
    return EXIT_OK


def cmd_inc(cb: CaseBase, cfg: RunConfiguration) -> int:
    pairs = inconsistencies(cb, cap=cfg.cap)
    if cfg.output_mode == "structured":
        _emit(render.dumps(render.inconsistencies_document(pairs)))
    else:
        _emit(render.inconsistencies_text(pairs))
    return EXIT_OK


def cmd_diagram(cb: CaseBase, cfg: RunConfiguration) -> int:
    x = None if cfg.facts is None else _facts(cb, cfg)
    sides = (cfg.side,) if cfg.side else tuple(Side)
    _emit(render.priority_diagram(cb, x, sides))
    return EXIT_OK


def cmd_decide(cb: CaseBase, cfg: RunConfiguration) -> int:
    x = _facts(cb, cfg)
    outcome = decide(cb, x)
    if cfg.output_mode == "structured":
        _emit(render.dumps(render.decision_document(outcome, x)))
    else:
        _emit(render.decision_text(outcome, x))
    return EXIT_OK


def cmd_framework(cb: CaseBase, cfg: RunConfiguration) -> int:
    fw = build_framework(_facts(cb, cfg), cb, cfg.cap)
    if cfg.output_mode == "dot":
        _emit(render.framework_dot(fw))
    elif cfg.output_mode == "structured":
        _emit(render.dumps(render.framework_document(fw, cfg.annotate)))
    else:
        _emit(render.framework_text(fw, cfg.annotate))
    return EXIT_OK


def cmd_explain(cb: CaseBase, cfg: RunConfiguration) -> int:
    x = _facts(cb, cfg)
    report = explain_decision(x, cb, cfg.cap, cfg.all_defenses, strict=False)
    if report.mismatch:
        print(f"warning: {report.mismatch}", file=sys.stderr)
    if cfg.side:
        sides = [cfg.side]
    elif report.outcome.obligated:
        sides = [report.outcome.obligated]
    else:
        sides = list(Side)
    fw = report.framework
    rejected = {s: [] for s in sides}
    for s in sides:
        for root in fw.with_state(s):
            tree = build_dispute_tree(fw, root)
            if not fw.attacked_by(root) and not is_admissible_tree(tree, fw):
                rejected[s].append(tree)
    if cfg.output_mode == "dot":
        trees = [e.tree for s in sides for e in report.explanations[s]]
        _emit(render.trees_dot(trees))
    elif cfg.output_mode == "structured":
        doc = {
            "decision": render.decision_document(report.outcome, x),
            "explanations": {
                s.value: [render.tree_document(e.tree) for e in report.explanations[s]]
                for s in sides
            },
        }
        if cfg.annotate:
            doc["rejected"] = {s.value: [render.tree_document(t) for t in rejected[s]] for s in sides}
        if report.mismatch:
            doc["warning"] = report.mismatch
        _emit(render.dumps(doc))
    else:
        out = [f"decision: {report.outcome}\n"]
        for s in sides:
            out.append(render.explanations_text(s, report.explanations[s]))
            if cfg.annotate:
                for tree in rejected[s]:
                    out.append(f"rejected (not admissible), root {tree.argument}\n")
                    out.append(render.tree_text(tree))
        _emit("".join(out))
    return EXIT_OK


def cmd_oracle(cb: CaseBase, cfg: RunConfiguration) -> int:
    report = run_oracle(cb, cfg.facts or (), cfg.trials, cfg.seed)
    if report.ok:
        _emit(f"ok: all checks agree on {report.instances} instance(s)\n")
        return EXIT_OK
    out = [f"mismatch: {len(report.failures)} check(s) failed over {report.instances} instance(s)\n"]
    for finding, small_cb, small_x in report.failures:
        out.append(f"check {finding.check}: {finding.detail}\n")
        out.append(f"minimized facts: {format_names(small_x)}\n")
        out.append("minimized case base:\n")
        out.append(dumps_case_base(small_cb))
    _emit("".join(out))
    return EXIT_ORACLE_MISMATCH


COMMANDS = {
    "validate": cmd_validate,
    "inc": cmd_inc,
    "diagram": cmd_diagram,
    "decide": cmd_decide,
    "framework": cmd_framework,
    "explain": cmd_explain,
    "oracle": cmd_oracle,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfiguration.from_args(args)
    try:
        cb = load_case_base(cfg.casebase_path)
    except OSError as exc:
        print(f"error: cannot read {cfg.casebase_path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    except ValidationError as exc:
        for problem in exc.violations:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        if cfg.facts is not None:
            cb.universe.check(cfg.facts)
        return COMMANDS[args.command](cb, cfg)
    except UnknownFactorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_ORACLE_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
