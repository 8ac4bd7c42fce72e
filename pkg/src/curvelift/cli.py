"""Command-line front end.

Exit-code protocol (shared by all subcommands):
  0  success / affirmative verdict
  1  invalid input or negative boolean verdict
  2  I/O, parse, or usage error
  3  equivalence search: distinguished
  4  equivalence search: budget exhausted (unknown)

All commands are deterministic given identical inputs and flags; --seed is
accepted globally so batch harnesses can thread one seed through, and is
reserved for randomized tooling built on top of this CLI.
"""

from __future__ import annotations

import argparse
import json
import sys

from .diagrams import Diagram, parse, serialize, shadow_word, validate
from .errors import CurveLiftError, DiagramSyntaxError, InapplicableMove, ModeMismatch
from .hnn import HNNExtension, HNNWord, britton_reduce, is_trivial_hnn
from .homology import bundle_h1, exponent_vector
from .lifting import (
    canonicalize,
    lift_class,
    parse_twisted_shadow,
    raw_turning,
    turning_delta,
)
from .moves import (
    EquivalenceVerdict,
    SearchBudget,
    equivalent_bounded,
    move_from_json,
    move_to_json,
    replay,
    transvection,
)
from .snf import filling_quotient
from .surfaces import BundleKind, CircleBundle, Surface, bundle_pi1_presentation
from .words import (
    CONSISTENT,
    GroupElementExpr,
    conjugate_classes_equal,
    dehn_reduce,
    exponent_sum,
    is_trivial,
    powersum_check,
)


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_json(path: str):
    return json.loads(_read_text(path))


def _emit(args, payload: dict, text_lines) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _surface_from_args(args) -> Surface:
    return Surface(args.genus, args.boundary)


def _bundle_from_args(args, surface: Surface) -> CircleBundle:
    token = args.bundle.upper()
    if token == "UT":
        return CircleBundle.unit_tangent(surface)
    if token == "PT":
        return CircleBundle.projective_tangent(surface)
    if token == "TRIVIAL":
        return CircleBundle.trivial(surface)
    if token == "CUSTOM":
        return CircleBundle.custom(surface, args.euler)
    raise ValueError(f"unknown bundle kind {args.bundle!r}")


# ----------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    diagram, _ = parse(_read_text(args.path))
    violations = validate(diagram)
    payload = {
        "valid": not violations,
        "violations": [
            {"rule": v.rule, "component": v.component, "detail": v.detail}
            for v in violations
        ],
    }
    _emit(args, payload, ["valid"] if not violations else [str(v) for v in violations])
    return 0 if not violations else 1


def cmd_invariants(args) -> int:
    diagram, bundle = parse(_read_text(args.path))
    violations = validate(diagram)
    if violations:
        _emit(
            args,
            {"error": "invalid diagram", "violations": [str(v) for v in violations]},
            [str(v) for v in violations],
        )
        return 1
    h1 = bundle_h1(bundle)
    components = []
    lines = [f"bundle {bundle}  H1 = {h1}"]
    for ci in range(len(diagram.components)):
        lc = lift_class(diagram, bundle, ci)
        word = shadow_word(diagram, ci)
        turning = raw_turning(diagram, ci)
        fiber = 2 * turning if diagram.mode == "cusp" else turning
        components.append(
            {
                "shadow": word,
                "turning": str(turning),
                "fiber": int(fiber),
                "fiber_mod_e": lc.fiber_part,
                "base": list(lc.base_part),
            }
        )
        lines.append(
            f"component {ci}: shadow={word or '1'} turning={turning} "
            f"fiber={int(fiber)} fiber_mod_e={lc.fiber_part} base={list(lc.base_part)}"
        )
    payload = {"components": components, "H1": str(h1), "H1_invariants": h1.to_json()}
    _emit(args, payload, lines)
    return 0


def cmd_canonicalize(args) -> int:
    shadow, bundle = parse_twisted_shadow(_read_text(args.path))
    result = canonicalize(shadow, bundle)
    delta = turning_delta(shadow)
    text = serialize(result, bundle)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(
            args,
            {"output": args.output, "turning_delta": delta},
            [f"wrote {args.output}", f"turning delta {delta:+d}"],
        )
    else:
        if args.format == "json":
            print(json.dumps({"diagram": text, "turning_delta": delta}, indent=2))
        else:
            sys.stdout.write(text)
            print(f"turning delta {delta:+d}", file=sys.stderr)
    return 0


def _load_transvections(path: str):
    return tuple(
        transvection(
            [(c["word"], c["weight"], [tuple(s) for s in c["sites"]])]
        )
        for c in _read_json(path)
    )


def _relabel(diagram: Diagram, table: dict[str, str]) -> Diagram:
    """Generator substitution on edge letters; values may carry a prime for
    an orientation-reversed image."""
    surface = diagram.surface
    char_map: dict[str, str] = {}
    for src, dst in table.items():
        s = surface.char_of(src)
        d = surface.char_of(dst)
        char_map[s] = d
        char_map[s.swapcase()] = d.swapcase()
    comps = []
    for comp in diagram.components:
        events = []
        for ev in comp:
            if ev[0] == "edge":
                ch = char_map.get(surface.char_of(ev[1]), surface.char_of(ev[1]))
                events.append(("edge", surface.name_of(ch)))
            else:
                events.append(ev)
        comps.append(events)
    return diagram.with_components(comps)


def cmd_equiv(args) -> int:
    d1, b1 = parse(_read_text(args.path1))
    d2, b2 = parse(_read_text(args.path2))
    if b1 != b2:
        raise ModeMismatch(f"bundle mismatch: {b1} vs {b2}")
    if args.relabel:
        d2 = _relabel(d2, _read_json(args.relabel))
    generators = _load_transvections(args.transvections) if args.transvections else ()
    budget = SearchBudget(
        max_moves=args.budget_moves,
        max_states=args.budget_states,
        transvection_generators=generators,
    )
    verdict = equivalent_bounded(d1, d2, b1, budget)
    payload: dict = {"status": verdict.status}
    lines = [verdict.status]
    if verdict.certificate is not None:
        payload["certificate"] = [move_to_json(m) for m in verdict.certificate]
        lines.append(f"certificate: {len(verdict.certificate)} moves")
    if verdict.invariant is not None:
        name, v1, v2 = verdict.invariant
        payload["invariant"] = {"name": name, "first": str(v1), "second": str(v2)}
        lines.append(f"distinguished by {name}: {v1} vs {v2}")
    _emit(args, payload, lines)
    return {"equivalent": 0, "distinguished": 3, "unknown": 4}[verdict.status]


def cmd_h1(args) -> int:
    surface = _surface_from_args(args)
    bundle = _bundle_from_args(args, surface)
    group = bundle_h1(bundle)
    if args.sigma:
        try:
            sigma = [int(x) for x in args.sigma.replace(",", " ").split()]
            pres = bundle_pi1_presentation(bundle)
            rows = [exponent_vector(rel, pres.generators) for rel in pres.relators]
            group = filling_quotient(rows, len(pres.generators), sigma)
        except ValueError as exc:
            print(f"error: malformed sigma: {exc}", file=sys.stderr)
            return 2
    _emit(args, {"group": str(group), **group.to_json()}, [str(group)])
    return 0


def cmd_group(args) -> int:
    if args.group_command != "britton":
        surface = _surface_from_args(args)
    if args.group_command == "reduce":
        reduced = dehn_reduce(args.word, surface)
        _emit(args, {"reduced": reduced}, [reduced or "1"])
        return 0
    if args.group_command == "trivial":
        verdict = is_trivial(args.word, surface)
        _emit(args, {"trivial": verdict}, ["trivial" if verdict else "nontrivial"])
        return 0 if verdict else 1
    if args.group_command == "conj":
        verdict = conjugate_classes_equal(args.word, args.word2, surface)
        _emit(args, {"conjugate": verdict}, ["conjugate" if verdict else "not conjugate"])
        return 0 if verdict else 1
    if args.group_command == "powersum":
        factors = []
        for item in args.factor:
            g, _, eps = item.rpartition(":")
            factors.append((g, int(eps)))
        expr = GroupElementExpr(args.word, tuple(factors))
        result = powersum_check(expr, surface)
        payload = {"result": result, "exponent_sum": exponent_sum(expr)}
        _emit(args, payload, [result])
        return 0 if result == CONSISTENT else 1
    # britton
    spec = _read_json(args.spec)
    ext = HNNExtension(
        generators=tuple(spec["generators"]),
        a_letters=frozenset(spec["a_letters"]),
        b_letters=frozenset(spec["b_letters"]),
        phi=tuple(sorted(spec["phi"].items())),
    )
    hw = HNNWord.from_items(ext, spec["word"])
    reduced = britton_reduce(hw)
    trivial = is_trivial_hnn(hw)
    payload = {
        "trivial": trivial,
        "t_length": reduced.t_length,
        "base_words": list(reduced.base_words),
        "signs": list(reduced.signs),
    }
    _emit(
        args,
        payload,
        [
            "trivial" if trivial else "nontrivial",
            f"reduced t-length {reduced.t_length}",
        ],
    )
    return 0 if trivial else 1


def cmd_replay(args) -> int:
    diagram, bundle = parse(_read_text(args.path))
    certificate = [move_from_json(obj) for obj in _read_json(args.certificate)]
    result = replay(diagram, certificate)
    text = serialize(result, bundle)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return 0


# ----------------------------------------------------------------------
# argument parsing


def _add_surface_flags(p, bundle_flags=False):
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--boundary", type=int, default=0)
    if bundle_flags:
        p.add_argument("--bundle", default="UT", help="UT | PT | TRIVIAL | CUSTOM")
        p.add_argument("--euler", type=int, default=0, help="Euler number for CUSTOM")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvelift",
        description="Diagrams of curve lifts in circle bundles over surfaces.",
    )
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--seed", type=int, default=0, help="reserved; default 0")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check diagram invariants")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="per-component lift invariants and bundle H1")
    p.add_argument("path")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("canonicalize", help="resolve twisted-shadow annotations")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_canonicalize)

    p = sub.add_parser("equiv", help="bounded equivalence search")
    p.add_argument("path1")
    p.add_argument("path2")
    p.add_argument("--budget-moves", type=int, default=6)
    p.add_argument("--budget-states", type=int, default=100000)
    p.add_argument("--transvections", help="JSON file of transvection generators")
    p.add_argument("--relabel", help="JSON generator substitution for the second diagram")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("h1", help="circle-bundle homology and filling quotients")
    _add_surface_flags(p, bundle_flags=True)
    p.add_argument("--sigma", help="filling class, comma/space separated integers")
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("group", help="surface-group word problems")
    gsub = p.add_subparsers(dest="group_command", required=True)
    for name, extra in (
        ("reduce", ("word",)),
        ("trivial", ("word",)),
        ("conj", ("word", "word2")),
    ):
        gp = gsub.add_parser(name)
        _add_surface_flags(gp)
        for arg in extra:
            gp.add_argument(arg)
        gp.set_defaults(func=cmd_group)
    gp = gsub.add_parser("powersum")
    _add_surface_flags(gp)
    gp.add_argument("word", help="the conjugated word w")
    gp.add_argument(
        "--factor",
        action="append",
        default=[],
        metavar="G:EPS",
        help="conjugator and exponent, e.g. ab:1 (repeatable)",
    )
    gp.set_defaults(func=cmd_group)
    gp = gsub.add_parser("britton")
    gp.add_argument("spec", help="JSON HNN datum with generators/a_letters/b_letters/phi/word")
    gp.set_defaults(func=cmd_group)

    p = sub.add_parser("replay", help="apply a JSON move certificate to a diagram")
    p.add_argument("path")
    p.add_argument("certificate")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, DiagramSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ModeMismatch, InapplicableMove, CurveLiftError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
