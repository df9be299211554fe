"""Command line front end: ``python3 -m whitney_tau <command> ...``.

Exit status: 0 success, 1 validation failure, 2 assertion failure,
64 usage error.
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
from dataclasses import replace

from . import moves as mv
from .corpus import paper4_diagram, single_sphere_corpus
from .diagram import (DiagramError, InteriorPoint, WhitneyDiagram, compute_tau, raw_tau, self_intersection_mu,
                      validate_diagram)
from .group import GroupError, GroupSpec, parse_word
from .manifest import (ManifestError, emit_manifest, load_manifest, parse_element_file,
                       parse_pi2_file)
from .multi import (MultiDiagram, MultiError, compute_tau_n, compute_triple_lambda,
                    from_single, parallel_copies, raw_triple_lambda, select_action_convention,
                    symmetrize, validate_multi)
from .relations import RelationError, reduce_modulo, reduce_to_km, signed_class_closure
from .ring import Component, Pair, RingError, Triple, format_element, format_term, parse_element

EXIT_OK, EXIT_INVALID, EXIT_ASSERT, EXIT_USAGE = 0, 1, 2, 64


class Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--unframed", action="store_true", help="use the unframed relation (a,1) = 0")
    common.add_argument("--int-bound", type=int, metavar="L", default=None,
                        help="word-length horizon for global relation instances")
    common.add_argument("--action", choices=("signed", "unsigned", "auto"), default="auto",
                        help="S_3 action convention for the parallel-copies check")
    common.add_argument("--no-assert", action="store_true", help="report but do not enforce checks")
    common.add_argument("--json-out", metavar="PATH", help="also write a JSON result envelope")

    p = _Parser(prog="whitney_tau", description="Secondary intersection invariants from Whitney-disk diagrams.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("tau", parents=[common], help="tau(f) of a single-sphere manifest")
    s.add_argument("manifest")
    s = sub.add_parser("mu", parents=[common], help="Wall self-intersection of a manifest")
    s.add_argument("manifest")
    s = sub.add_parser("triple", parents=[common],
                       help="lambda(f1,f2,f3) of a 3-sphere manifest, or of parallel copies")
    s.add_argument("manifest")
    s = sub.add_parser("tau-n", parents=[common], help="tau(f1,...,fn) of a manifest")
    s.add_argument("manifest")
    s = sub.add_parser("orbit", parents=[common], help="signed relation class of one term")
    s.add_argument("term")
    s.add_argument("--group", default="free:a,b", help="group, e.g. free:a,b or cyclic:t:0")
    s = sub.add_parser("move", parents=[common], help="apply a move script to a manifest")
    s.add_argument("manifest")
    s.add_argument("script")
    s.add_argument("--output", metavar="PATH", help="write the final manifest here")
    s = sub.add_parser("reduce", parents=[common], help="reduce an element modulo pi_2 relations")
    s.add_argument("element_file")
    s.add_argument("pi2_file")
    s = sub.add_parser("examples", parents=[common], help="reproduce a built-in example family")
    s.add_argument("family", choices=("paper4",))
    s.add_argument("--l", type=int, default=2)
    s.add_argument("--m", type=int, default=4)
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--output", metavar="PATH", help="write the example manifest here")
    return p


# ---------------------------------------------------------------- helpers

def _load(path: str):
    try:
        return load_manifest(path)
    except OSError as exc:
        raise Failure(EXIT_INVALID, f"cannot read {path}: {exc.strerror}") from None
    except ManifestError as exc:
        raise Failure(EXIT_INVALID, f"{path}: {exc}") from None


def _single(path: str, args) -> WhitneyDiagram:
    d = _load(path)
    if isinstance(d, MultiDiagram):
        raise Failure(EXIT_INVALID, f"{path}: expected a single-sphere manifest")
    if args.unframed:
        d = replace(d, unframed=True)
    return d


def _tau_or_fail(d: WhitneyDiagram, radius):
    report = validate_diagram(d)
    if not report.ok:
        raise Failure(EXIT_INVALID, f"invalid diagram:\n{report}")
    try:
        return compute_tau(d, radius)
    except DiagramError as exc:
        raise Failure(EXIT_INVALID, str(exc)) from None


def _check_multi(d: MultiDiagram):
    problems = validate_multi(d)
    if problems:
        raise Failure(EXIT_INVALID, "invalid diagram:\n" + "\n".join(f"{c}: {m}" for c, m in problems))


def _km_text(value) -> str:
    return value if isinstance(value, str) else f"{value} (mod 2)"


# --------------------------------------------------------------- commands

def cmd_tau(args, out):
    d = _single(args.manifest, args)
    q = _tau_or_fail(d, args.int_bound)
    km = reduce_to_km(q, d.pi2)
    out.append(f"tau(f) over {d.spec}")
    out.append(q.report())
    out.append(f"km:         {_km_text(km)}")
    result = q.to_json()
    result["km"] = km
    return result


def cmd_mu(args, out):
    d = _load(args.manifest)
    if isinstance(d, MultiDiagram):
        raise Failure(EXIT_INVALID, "mu needs a single-sphere manifest")
    report = validate_diagram(d)
    if not report.ok:
        raise Failure(EXIT_INVALID, f"invalid diagram:\n{report}")
    mu = self_intersection_mu(d.double_points, d.spec)
    out.append(f"mu(f) = {mu}")
    out.append("vanishes" if not mu else "does not vanish")
    return {"mu": str(mu), "vanishes": not mu}


def _select_action(args) -> str:
    if args.action != "auto":
        return args.action
    return select_action_convention(single_sphere_corpus(seed=0, size=12))


def cmd_triple(args, out):
    d = _load(args.manifest)
    if isinstance(d, MultiDiagram):
        _check_multi(d)
        try:
            q = compute_triple_lambda(d, args.int_bound)
        except MultiError as exc:
            raise Failure(EXIT_INVALID, str(exc)) from None
        out.append(f"lambda(f1,f2,f3) over {d.spec}")
        out.append(q.report())
        return q.to_json()
    if args.unframed:
        d = replace(d, unframed=True)
    _tau_or_fail(d, args.int_bound)
    if not d.normal_bundle_trivial:
        raise Failure(EXIT_INVALID, "parallel copies need normal_bundle_trivial: true")
    action = _select_action(args)
    copies = parallel_copies(d)
    q = compute_triple_lambda(copies, args.int_bound)
    expected = symmetrize(raw_tau(d), action)
    ok = raw_triple_lambda(copies) == expected
    out.append(f"lambda(f,f,f) from parallel copies over {d.spec}")
    out.append(q.report())
    out.append(f"sum over S_3 of tau(f)^sigma ({action}): {format_element(expected)}")
    out.append(f"parallel-copies identity: {'holds' if ok else 'FAILS'}")
    result = q.to_json()
    result.update({"action": action, "symmetrized_tau": str(expected), "identity_holds": ok})
    if not ok and not args.no_assert:
        raise Failure(EXIT_ASSERT, "parallel-copies identity fails")
    return result


def cmd_tau_n(args, out):
    d = _load(args.manifest)
    if isinstance(d, WhitneyDiagram):
        _tau_or_fail(d, args.int_bound)
        d = from_single(d)
    _check_multi(d)
    q = compute_tau_n(d, args.int_bound)
    names = ",".join(f"f{i}" for i in range(1, d.n + 1))
    out.append(f"tau({names}) over {d.spec}")
    out.append(q.report())
    return q.to_json()


def cmd_orbit(args, out):
    try:
        spec = GroupSpec.parse(args.group)
        x = parse_element(args.term, spec)
    except (GroupError, RingError, ValueError) as exc:
        raise Failure(EXIT_INVALID, str(exc)) from None
    if len(x.terms) != 1:
        raise Failure(EXIT_INVALID, "orbit needs exactly one basis term")
    (t,) = x.terms
    if isinstance(t, Pair):
        mode = "unframed" if args.unframed else "framed"
    elif isinstance(t, Component):
        mode = "local"
    else:
        raise Failure(EXIT_INVALID, "orbit needs a pair or a component term")
    cls = signed_class_closure(t, mode)
    members = sorted(cls.members, key=lambda m: (format_term(m[1]), m[0]))
    out.append(f"class of {format_term(t)} ({mode} relations)")
    out.append(f"representative: {format_term(cls.representative)}")
    out.append(f"members ({len(members)}):")
    for s, u in members:
        out.append(f"  {'+' if s > 0 else '-'}{format_term(u)}")
    out.append(f"torsion2={str(cls.torsion2).lower()}")
    if cls.vanishes:
        out.append("vanishes in the unframed quotient")
    return {"representative": format_term(cls.representative),
            "members": [[s, format_term(u)] for s, u in members],
            "torsion2": cls.torsion2, "vanishes": cls.vanishes}


# move scripts ------------------------------------------------------------

def _kv(tokens: list[str], lineno: int) -> dict:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise Failure(EXIT_INVALID, f"script line {lineno}: expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _bool_arg(text: str) -> bool:
    if text.lower() in ("true", "yes", "1"):
        return True
    if text.lower() in ("false", "no", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _point_list(text: str, spec):
    pts = []
    for item in filter(None, text.split(",")):
        sign, h = item.split(":", 1)
        pts.append(InteriorPoint(1 if sign.strip() in ("+", "+1", "1") else -1, parse_word(h, spec)))
    return pts


def apply_step(d: WhitneyDiagram, name: str, kw: dict) -> WhitneyDiagram:
    spec = d.spec
    w = lambda key: parse_word(kw[key], spec)
    if name == "sheet_change":
        return mv.sheet_change(d, kw["disk"])
    if name == "reframe":
        return mv.reframe(d, kw["disk"], int(kw.get("n", 0)), int(kw.get("m", 0)), int(kw.get("interior", 0)))
    if name == "tube_into_class":
        return mv.tube_into_class(d, kw["disk"], kw["class"])
    if name == "resolve_crossing":
        return mv.resolve_crossing(d, int(kw["index"]), kw.get("onto", "a"))
    if name == "push_across_double_point":
        return mv.push_across_double_point(d, kw["disk"], kw["target"], int(kw.get("arc", 1)),
                                           int(kw.get("target_arc", 1)), _bool_arg(kw.get("agree", "true")))
    if name == "finger_move":
        return mv.finger_move(d, w("a"), kw.get("disk"))
    if name == "whitney_move":
        transfers = []
        for item in filter(None, kw.get("transfers", "").split(",")):
            other, h = item.split(":", 1)
            transfers.append((other, parse_word(h, spec)))
        return mv.whitney_move(d, kw["disk"], transfers)
    if name == "cancel_pair":
        return mv.cancel_pair(d, kw["disk"], w("h"))
    if name == "repair_swap":
        sel = [int(k) for k in filter(None, kw.get("select", "").split(","))]
        return mv.repair_swap(d, kw["disk_i"], kw["disk_j"], sel, _point_list(kw.get("extra", ""), spec))
    if name == "trade_intersection":
        return mv.trade_intersection(d, kw["source"], kw["target"], int(kw["point"]),
                                     kw.get("through", "positive"))
    raise KeyError(name)


def parse_script(text: str) -> list[tuple[int, str, dict]]:
    steps = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = shlex.split(line)
        if tokens[0] != "move" or len(tokens) < 2:
            raise Failure(EXIT_INVALID, f"script line {lineno}: expected 'move <name> key=value ...'")
        if tokens[1] not in mv.MOVES:
            raise Failure(EXIT_INVALID, f"script line {lineno}: unknown move {tokens[1]!r}")
        steps.append((lineno, tokens[1], _kv(tokens[2:], lineno)))
    return steps


def cmd_move(args, out):
    d = _single(args.manifest, args)
    try:
        with open(args.script, encoding="utf-8") as fh:
            steps = parse_script(fh.read())
    except OSError as exc:
        raise Failure(EXIT_INVALID, f"cannot read {args.script}: {exc.strerror}") from None
    start = _tau_or_fail(d, args.int_bound)
    out.append(f"start:      {start.canonical}")
    log = []
    for lineno, name, kw in steps:
        try:
            nxt = apply_step(d, name, kw)
        except KeyError as exc:
            raise Failure(EXIT_INVALID, f"script line {lineno}: missing argument {exc}") from None
        except (ValueError, GroupError) as exc:
            raise Failure(EXIT_INVALID, f"script line {lineno}: {exc}") from None
        q = _tau_or_fail(nxt, args.int_bound)
        same = mv.same_tau(d, nxt, args.int_bound)
        out.append(f"step {lineno} {name}: canonical {q.canonical} [{'invariant' if same else 'CHANGED'}]")
        log.append({"line": lineno, "move": name, "canonical": str(q.canonical), "invariant": same})
        if not same and not args.no_assert:
            raise Failure(EXIT_ASSERT, f"tau changed at script line {lineno} ({name})")
        d = nxt
    final = _tau_or_fail(d, args.int_bound)
    out.append(final.report())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(emit_manifest(d))
    result = final.to_json()
    result["steps"] = log
    return result


def cmd_reduce(args, out):
    try:
        with open(args.element_file, encoding="utf-8") as fh:
            elem = parse_element_file(fh.read())
        with open(args.pi2_file, encoding="utf-8") as fh:
            pi2 = parse_pi2_file(fh.read(), elem["spec"])
    except OSError as exc:
        raise Failure(EXIT_INVALID, f"cannot read input: {exc.strerror}") from None
    except ManifestError as exc:
        raise Failure(EXIT_INVALID, str(exc)) from None
    x = elem["element"]
    variant = x.variant
    if variant is None or variant is Pair:
        context = "single"
    elif variant is Triple:
        context = "triple"
    elif variant is Component:
        context = "nsphere"
    else:
        raise Failure(EXIT_INVALID, "cannot reduce elements of Z[pi]")
    unframed = elem["unframed"] or args.unframed
    try:
        q = reduce_modulo(x, pi2, context, n=elem["n"], unframed=unframed, radius=args.int_bound)
    except RelationError as exc:
        raise Failure(EXIT_INVALID, str(exc)) from None
    out.append(f"reduction over {elem['spec']} ({context})")
    out.append(q.report())
    return q.to_json()


def cmd_examples(args, out):
    d = paper4_diagram(args.l, args.m, args.n)
    if args.unframed:
        d = replace(d, unframed=True)
    text = emit_manifest(d)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.append(text.rstrip())
    q = _tau_or_fail(d, args.int_bound)
    out.append(f"tau(f) for (l,m,n) = ({args.l},{args.m},{args.n}) over {d.spec}")
    out.append(q.report())
    result = q.to_json()
    result["manifest"] = json.loads(text)
    return result


COMMANDS = {
    "tau": cmd_tau, "mu": cmd_mu, "triple": cmd_triple, "tau-n": cmd_tau_n,
    "orbit": cmd_orbit, "move": cmd_move, "reduce": cmd_reduce, "examples": cmd_examples,
}


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out: list[str] = []
    code, result, error = EXIT_OK, None, None
    try:
        result = COMMANDS[args.command](args, out)
    except Failure as exc:
        code, error = exc.code, str(exc)
    except (DiagramError, RelationError, RingError, GroupError) as exc:
        code, error = EXIT_INVALID, str(exc)
    if out:
        print("\n".join(out), file=stdout)
    if error:
        print(f"error: {error}", file=stderr)
    if args.json_out:
        envelope = {"command": args.command, "exit_code": code, "ok": code == EXIT_OK,
                    "result": result, "error": error}
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump(envelope, fh, indent=2)
            fh.write("\n")
    return code


def main():
    sys.exit(run_cli())
