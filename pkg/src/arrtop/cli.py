"""Command-line front end: ``arrtop <command> [options]``.

Exit codes: 0 on success, 1 when a computation refutes what was asked for
(a failed expectation, a non-rigid combinatorics, ...), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import aitest, alexander, combinatorics, realization, resonance, wiring

BUILTINS = ("g91", "a91-1", "a91-2", "a91-3", "a91-4", "xi1", "xi2", "xi1-mirror")


class InputError(ValueError):
    pass


class Refuted(Exception):
    """The computation finished but contradicts the requested expectation."""


def _load(source: str):
    """Return ``(kind, object)`` with kind in {combinatorics, lines, wiring}."""
    if source.startswith("builtin:"):
        name = source[len("builtin:") :]
        if name == "g91":
            return "combinatorics", combinatorics.builtin_g91()
        if name.startswith("a91-") and name[4:] in ("1", "2", "3", "4"):
            return "lines", realization.builtin_a91(int(name[4:]))
        if name in ("xi1", "xi2", "xi1-mirror"):
            return "wiring", wiring.builtin_wiring(name)
        raise InputError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
    try:
        data = json.loads(Path(source).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{source} is not valid JSON: {exc}") from None
    try:
        if isinstance(data, dict) and "points" in data:
            return "combinatorics", combinatorics.LineCombinatorics.from_json(data)
        if isinstance(data, dict) and "crossings" in data:
            return "wiring", wiring.WiringDiagram.from_json(data)
        if isinstance(data, list):
            return "lines", realization.lines_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{source}: malformed input ({exc})") from None
    raise InputError(f"{source}: not a combinatorics, lines or wiring document")


def _input_source(args) -> str:
    if getattr(args, "builtin", None):
        return "builtin:" + args.builtin
    if getattr(args, "input", None):
        return args.input
    raise InputError("an input is required (--input PATH|builtin:NAME or --builtin NAME)")


def _combinatorics(args) -> combinatorics.LineCombinatorics:
    kind, obj = _load(_input_source(args))
    if kind == "lines":
        return realization.incidence_combinatorics(obj)
    if kind == "wiring":
        raise InputError("expected a combinatorics or lines document, got a wiring diagram")
    combinatorics.validate(obj)
    return obj


def _wiring(source: str) -> wiring.WiringDiagram:
    kind, obj = _load(source)
    if kind != "wiring":
        raise InputError(f"expected a wiring diagram, got {kind}")
    return obj


# ---------------------------------------------------------------------------
# commands; each returns (json payload, text lines)


def cmd_validate(args):
    c = _combinatorics(args)
    census = combinatorics.multiplicity_census(c)
    payload = {
        "valid": True,
        "n_lines": c.n_lines,
        "n_points": len(c.points),
        "census": {str(k): v for k, v in census.items()},
    }
    text = [f"valid combinatorics: {c.n_lines} lines, {len(c.points)} points"]
    text += [f"  multiplicity {k}: {v}" for k, v in census.items()]
    return payload, text


def cmd_automorphisms(args):
    c = _combinatorics(args)
    if args.remove_line:
        c = c.remove_line(args.remove_line)
    auts = combinatorics.automorphisms(c)
    payload = {
        "order": len(auts),
        "automorphisms": [list(p) for p in auts],
        "cycles": [[list(cy) for cy in combinatorics.cycles_of(p)] for p in auts],
    }
    text = [f"automorphism group of order {len(auts)}"]
    for p in auts:
        cyc = combinatorics.cycles_of(p)
        text.append("  " + ("".join("(" + " ".join(map(str, cy)) + ")" for cy in cyc) or "id"))
    return payload, text


def cmd_pencils(args):
    c = _combinatorics(args)
    table = resonance.triangle_table(c, jobs=args.jobs)
    payload = {"pencils": [r.to_json() for r in table.rows], "triangle_count": len(table.triangles)}
    text = [f"{len(table.rows)} pencils, {len(table.triangles)} triangles"]
    text.append(f"{'i':>3}  {'lines':<22}{'kind':<16}{'dim':>4}{'tri':>6}{'tri+P':>7}")
    for k, r in enumerate(table.rows, start=1):
        lines = ", ".join(map(str, r.pencil.lines))
        text.append(
            f"{k:>3}  {lines:<22}{r.pencil.kind.value:<16}{r.dim:>4}"
            f"{r.triangles:>6}{r.triangles_through_quintuple:>7}"
        )
    return payload, text


def cmd_rigidity(args):
    c = _combinatorics(args)
    table = resonance.triangle_table(c, jobs=args.jobs)
    try:
        rep = resonance.rigidity_check(c, table)
    except resonance.FingerprintCollision as exc:
        raise Refuted(f"FingerprintCollision: {exc}") from None
    except resonance.NonDiagonalSolution as exc:
        raise Refuted(f"NonDiagonalSolution: {exc}") from None
    text = ["homologically rigid", f"admissible automorphisms: {', '.join(rep.admissible)}"]
    text += [f"  {list(k)}: {fp}" for k, fp in rep.fingerprints.items()]
    return rep.to_json(), text


def cmd_realize(args):
    kind, lines = _load(_input_source(args))
    if kind != "lines":
        raise InputError(f"expected a lines document, got {kind}")
    if args.galois:
        lines = realization.galois_lines(lines, args.galois)
    c = realization.incidence_combinatorics(lines)
    payload = {"combinatorics": c.to_json()}
    text = [f"{c.n_lines} lines, {len(c.points)} points"]
    text += ["  " + " ".join(map(str, sorted(p))) for p in sorted(c.points, key=lambda p: (-len(p), sorted(p)))]
    if args.compare:
        ref = _combinatorics(argparse.Namespace(input=args.compare, builtin=None))
        same = ref.point_sets() == c.point_sets() and ref.n_lines == c.n_lines
        payload["matches"] = same
        text.append(f"matches {args.compare}: {same}")
        if not same:
            return payload, text, 1
    return payload, text


def cmd_present(args):
    w = _wiring(_input_source(args))
    p = wiring.relations(w)
    payload = p.to_json()
    payload["module_relations"] = sum(len(r.lines) - 1 for r in p.relations)
    payload["abelianization_rank"] = wiring.abelianization_rank(p)
    text = [
        f"{p.n_generators} generators, {len(p.relations)} relations, "
        f"{payload['module_relations']} commutator relations, "
        f"abelianization rank {payload['abelianization_rank']}"
    ]
    for r in p.relations:
        parts = [f"x{i}^{list(c)}" if c else f"x{i}" for i, c in zip(r.lines, r.conjugators)]
        text.append("  [" + " ".join(parts) + "]")
    return payload, text


def cmd_alexander(args):
    w = _wiring(_input_source(args))
    d = alexander.alexander_invariant(w)
    payload = {
        "m1_rank": str(d.m1_rank),
        "gr1_rank": str(d.gr1_rank),
        "jacobi_rank": str(d.jacobi_rank),
        "torsion_free": d.torsion_free,
        "basis": [list(b) for b in d.combinatorial_basis],
    }
    text = [
        f"rank M_1 = {d.m1_rank}",
        f"rank gr^1 M_2 = {d.gr1_rank} (Jacobi rank {d.jacobi_rank}, "
        f"{'torsion-free' if d.torsion_free else 'torsion'})",
    ]
    return payload, text


def cmd_ai_test(args):
    rep = aitest.run_test(_wiring(args.source), _wiring(args.target), jobs=args.jobs)
    text = [
        f"verdict: {rep.verdict}",
        f"equations: {rep.raw_equation_count} raw, {rep.distinct_equation_count} distinct, "
        f"{rep.unknown_count} unknowns",
        f"rank {rep.rank}, augmented rank {rep.augmented_rank}, "
        f"rational solution dimension {rep.q_solution_dim}",
        f"denominator primes: {rep.denominator_primes}",
    ]
    code = 0
    if args.expect and args.expect.lower() != rep.verdict.lower():
        text.append(f"expected {args.expect}")
        code = 1
    return rep.to_json(), text, code


def cmd_zariski(args):
    rep = aitest.theorem_pipeline(jobs=args.jobs)
    text = [
        f"homologically rigid: {rep.rigid}",
        f"trivial automorphism group: {rep.automorphism_group_trivial}",
        f"test +1 (xi1 -> xi2): {rep.plus_test.verdict}, primes {rep.plus_test.denominator_primes}",
        f"test -1 (mirror xi1 -> xi2): {rep.minus_test.verdict}, primes {rep.minus_test.denominator_primes}",
        f"conclusion: groups not isomorphic = {rep.conclusion}",
    ]
    text += [f"  reason: {r}" for r in rep.reasons]
    return rep.to_json(), text, 0 if rep.conclusion else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--output", help="write the report here instead of standard output")

    single = argparse.ArgumentParser(add_help=False)
    single.add_argument("--input", help="JSON file or builtin:NAME")
    single.add_argument("--builtin", choices=BUILTINS)

    parser = argparse.ArgumentParser(prog="arrtop", description="Topology of line arrangements")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common, single]).set_defaults(func=cmd_validate)
    p = sub.add_parser("automorphisms", parents=[common, single])
    p.add_argument("--remove-line", type=int)
    p.set_defaults(func=cmd_automorphisms)
    sub.add_parser("pencils", parents=[common, single]).set_defaults(func=cmd_pencils)
    sub.add_parser("rigidity", parents=[common, single]).set_defaults(func=cmd_rigidity)
    p = sub.add_parser("realize", parents=[common, single])
    p.add_argument("--galois", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--compare", help="combinatorics to compare with")
    p.set_defaults(func=cmd_realize)
    sub.add_parser("present", parents=[common, single]).set_defaults(func=cmd_present)
    sub.add_parser("alexander", parents=[common, single]).set_defaults(func=cmd_alexander)
    p = sub.add_parser("ai-test", parents=[common])
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--expect", choices=("pass", "fail", "Pass", "Fail"))
    p.set_defaults(func=cmd_ai_test)
    sub.add_parser("zariski", parents=[common]).set_defaults(func=cmd_zariski)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        result = args.func(args)
    except Refuted as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (InputError, combinatorics.CombinatoricsError, wiring.MalformedWiring) as exc:
        print(f"arrtop: error: {exc}", file=sys.stderr)
        return 2
    except (realization.BadExponent, realization.DuplicateLine) as exc:
        print(f"arrtop: error: {exc}", file=sys.stderr)
        return 2
    payload, text, *rest = result
    code = rest[0] if rest else 0
    out = json.dumps(payload, indent=2, sort_keys=True) if args.format == "json" else "\n".join(text)
    if args.output:
        Path(args.output).write_text(out + "\n")
    else:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
