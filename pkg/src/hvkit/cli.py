"""Command-line front end and the bit-exact model file format.

Model files are UTF-8 JSON: a "spaces" object mapping the fixed
coordinate names (xa, xb, ya, yb, and optionally lam) to atom label
lists, and a "weights" array of {"atom": {coord: label, ...}, "p": "n/d"}
entries.  Omitted atoms weigh zero, weights must sum to exactly one, and
a file without "lam" is an empirical model.  Serialization is
deterministic (canonical atom order), so parse/serialize round-trips are
bit-exact.

Exit codes: 0 success / all selected properties hold / feasible;
1 a property fails, a precondition fails, or the model is infeasible;
2 bad input (parse error, domain error, resource cap).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .determinize import determinize_empirical, determinize_local
from .errors import HVKitError, ModelFormatError, PreconditionError
from .measure import FiniteMeasure, FiniteSpace, ProductLayout, marginal, measures_equal
from .models import EmpiricalModel, HV_COORDS, HVModel, PSI_COORDS, named_marginals, realizes
from .properties import (
    HVProperty,
    PropertyReport,
    check_all,
    check_property,
    check_strong_determinism,
)
from .quantumgen import singlet_model
from .realizability import chsh_value, local_hvm_exists
from .rationals import rational_from_string, rational_to_string

Model = EmpiricalModel | HVModel


# ---------------------------------------------------------------------------
# file format


def parse_model_text(text: str) -> Model:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise ModelFormatError("top level must be an object")
    spaces = document.get("spaces")
    entries = document.get("weights")
    if not isinstance(spaces, dict) or not isinstance(entries, list):
        raise ModelFormatError('expected "spaces" object and "weights" array')

    has_lam = "lam" in spaces
    coords = HV_COORDS if has_lam else PSI_COORDS
    if set(spaces) != set(coords):
        raise ModelFormatError(f'"spaces" must have exactly the keys {list(coords)}')

    factors = []
    for name in coords:
        atoms = spaces[name]
        if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
            raise ModelFormatError(f'"spaces.{name}" must be a list of strings')
        try:
            factors.append(FiniteSpace(name, tuple(atoms)))
        except HVKitError as exc:
            raise ModelFormatError(f"bad atom list for {name!r}: {exc}") from None
    layout = ProductLayout(tuple(factors))

    weights: dict[tuple[str, ...], Fraction] = {}
    for position, entry in enumerate(entries):
        where = f"weights[{position}]"
        if not isinstance(entry, dict) or set(entry) != {"atom", "p"}:
            raise ModelFormatError(f'{where}: expected an object with "atom" and "p"')
        atom_map = entry["atom"]
        if not isinstance(atom_map, dict) or set(atom_map) != set(coords):
            raise ModelFormatError(f"{where}: atom must assign exactly {list(coords)}")
        atom = tuple(atom_map[name] for name in coords)
        try:
            layout.validate_atom(atom)
        except HVKitError as exc:
            raise ModelFormatError(f"{where}: {exc}") from None
        if atom in weights:
            raise ModelFormatError(f"{where}: duplicate atom {atom_map}")
        if not isinstance(entry["p"], str):
            raise ModelFormatError(f'{where}: "p" must be a string rational')
        try:
            weights[atom] = rational_from_string(entry["p"])
        except ValueError as exc:
            raise ModelFormatError(f"{where}: {exc}") from None

    try:
        measure = FiniteMeasure(layout, weights)
        return HVModel(measure) if has_lam else EmpiricalModel(measure)
    except HVKitError as exc:
        raise ModelFormatError(str(exc)) from None


def serialize_model(model: Model) -> str:
    measure = model.measure
    coords = measure.layout.names
    document = {
        "spaces": {name: list(measure.layout.space(name).atoms) for name in coords},
        "weights": [
            {"atom": dict(zip(coords, atom)), "p": rational_to_string(w)}
            for atom, w in measure.weights.items()
        ],
    }
    return json.dumps(document, indent=2) + "\n"


def load_model_file(path: str) -> Model:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ModelFormatError(f"cannot read {path}: {exc}") from None
    return parse_model_text(text)


def save_model_file(model: Model, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_model(model))


# ---------------------------------------------------------------------------
# report rendering


def _witness_json(report: PropertyReport):
    if report.witness is None:
        return None
    return {
        "atom": report.witness.as_dict(),
        "lhs": rational_to_string(report.witness.lhs),
        "rhs": rational_to_string(report.witness.rhs),
    }


def _print_report(report: PropertyReport) -> None:
    if report.holds:
        print(f"{report.property.value}: HOLDS")
    else:
        w = report.witness
        atom = ", ".join(f"{k}={v}" for k, v in w.assignment)
        print(
            f"{report.property.value}: FAILS at ({atom}): "
            f"lhs={rational_to_string(w.lhs)} rhs={rational_to_string(w.rhs)}"
        )


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2))


# ---------------------------------------------------------------------------
# commands


def _require_hv(model: Model) -> HVModel:
    if not isinstance(model, HVModel):
        raise ModelFormatError("this command needs a hidden-variable model (a 'lam' space)")
    return model


def _require_empirical(model: Model) -> EmpiricalModel:
    if not isinstance(model, EmpiricalModel):
        raise ModelFormatError("this command needs an empirical model (no 'lam' space)")
    return model


def cmd_check(args) -> int:
    model = _require_hv(load_model_file(args.file))
    if args.property == "all":
        reports = check_all(model)
    else:
        reports = (check_property(model, HVProperty(args.property)),)
    if args.json:
        _emit_json(
            {
                "command": "check",
                "reports": [
                    {"property": r.property.value, "holds": r.holds, "witness": _witness_json(r)}
                    for r in reports
                ],
            }
        )
    else:
        for report in reports:
            _print_report(report)
    return 0 if all(r.holds for r in reports) else 1


def cmd_determinize(args) -> int:
    model = load_model_file(args.file)
    if args.method == "empirical":
        result = determinize_empirical(_require_empirical(model))
    else:
        try:
            result = determinize_local(_require_hv(model))
        except PreconditionError as exc:
            print(f"precondition failed: {exc}")
            if exc.report is not None:
                _print_report(exc.report)
            return 1
    save_model_file(result, args.out)

    checks = check_all(result)
    summary = {r.property.value: r.holds for r in checks}
    if args.json:
        _emit_json({"command": "determinize", "out": args.out, "verification": summary})
    else:
        print(f"wrote {args.out}")
        print("verification: " + ", ".join(f"{k}={'ok' if v else 'no'}" for k, v in summary.items()))
    return 0


def cmd_realizability(args) -> int:
    model = _require_empirical(load_model_file(args.file))
    feasible, certificate = local_hvm_exists(model)
    if args.json:
        if feasible:
            payload = {
                "command": "realizability",
                "feasible": True,
                "weights": [
                    {
                        "strategy": {"a": list(s.outcomes_a), "b": list(s.outcomes_b)},
                        "w": rational_to_string(w),
                    }
                    for s, w in certificate.weights.items()
                ],
            }
        else:
            payload = {
                "command": "realizability",
                "feasible": False,
                "bell_functional": [
                    {"atom": dict(zip(PSI_COORDS, atom)), "coefficient": rational_to_string(c)}
                    for atom, c in certificate.bell_functional.items()
                ],
                "classical_bound": rational_to_string(certificate.classical_bound),
                "achieved_value": rational_to_string(certificate.achieved_value),
            }
        _emit_json(payload)
    else:
        settings_a = model.space("ya").atoms
        settings_b = model.space("yb").atoms
        if feasible:
            print("FEASIBLE")
            for strategy, w in certificate.weights.items():
                print(f"  {rational_to_string(w)}  {strategy.describe(settings_a, settings_b)}")
        else:
            print("INFEASIBLE")
            print(f"  classical bound: {rational_to_string(certificate.classical_bound)}")
            print(f"  achieved value:  {rational_to_string(certificate.achieved_value)}")
            for atom, coefficient in certificate.bell_functional.items():
                if coefficient != 0:
                    assignment = ", ".join(f"{k}={v}" for k, v in zip(PSI_COORDS, atom))
                    print(f"  coefficient ({assignment}): {rational_to_string(coefficient)}")
    return 0 if feasible else 1


def cmd_chsh(args) -> int:
    model = _require_empirical(load_model_file(args.file))
    value = chsh_value(model)
    if args.json:
        _emit_json({"command": "chsh", "value": rational_to_string(value), "float": float(value)})
    else:
        print(f"chsh = {rational_to_string(value)} ({float(value):+.9f})")
    return 0


def cmd_generate(args) -> int:
    if args.kind != "singlet":
        raise ModelFormatError(f"unknown generator {args.kind!r}")
    try:
        angles_a = [float(x) for x in args.angles_a.split(",") if x.strip()]
        angles_b = [float(x) for x in args.angles_b.split(",") if x.strip()]
    except ValueError:
        raise ModelFormatError("angles must be comma-separated numbers") from None
    model = singlet_model(angles_a, angles_b, max_denominator=args.max_denominator)
    save_model_file(model, args.out)
    lines = [f"wrote {args.out}"]
    if len(angles_a) == 2 and len(angles_b) == 2:
        value = chsh_value(model)
        lines.append(f"chsh = {rational_to_string(value)} ({float(value):+.9f})")
    if args.json:
        _emit_json({"command": "generate", "out": args.out, "log": lines})
    else:
        for line in lines:
            print(line)
    return 0


def cmd_verify(args) -> int:
    """Run every internal cross-check the model supports and report."""
    model = load_model_file(args.file)
    lines = []
    ok = True
    round_trip = parse_model_text(serialize_model(model))
    if round_trip.measure.weights != model.measure.weights:
        ok = False
    lines.append(f"cross-check serialization round-trip: {'consistent' if ok else 'INCONSISTENT'}")
    if isinstance(model, HVModel):
        # each checker internally compares its defining equation against
        # its fiber-product characterization and raises on disagreement
        for report in check_all(model):
            lines.append(f"cross-check {report.property.value}: consistent (holds={report.holds})")
        family = named_marginals(model)
        nested = measures_equal(marginal(family.q_a, ("lam",)), family.p_lam)
        lines.append(f"cross-check nested marginals: {'consistent' if nested else 'INCONSISTENT'}")
        ok = ok and nested
    else:
        deterministic = determinize_empirical(model)
        realized = realizes(deterministic, model)
        determined = check_strong_determinism(deterministic).holds
        good = realized and determined
        lines.append(f"cross-check deterministic realization: {'consistent' if good else 'INCONSISTENT'}")
        ok = ok and good
    if args.json:
        _emit_json({"command": "verify", "ok": ok, "log": lines})
    else:
        for line in lines:
            print(line)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hvkit",
        description="Exact analysis of hidden-variable models on finite spaces.",
    )
    parser.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="check hidden-variable properties")
    check.add_argument("file")
    check.add_argument(
        "--property",
        default="all",
        choices=["all"] + [p.value for p in HVProperty],
        help="which property to check (default: all six)",
    )
    check.set_defaults(handler=cmd_check)

    determinize = commands.add_parser("determinize", help="build a deterministic realization")
    determinize.add_argument("file")
    determinize.add_argument("--method", required=True, choices=["empirical", "local"])
    determinize.add_argument("--out", required=True)
    determinize.set_defaults(handler=cmd_determinize)

    realizability = commands.add_parser(
        "realizability", help="decide local realizability with a certificate"
    )
    realizability.add_argument("file")
    realizability.set_defaults(handler=cmd_realizability)

    chsh = commands.add_parser("chsh", help="evaluate the correlator combination")
    chsh.add_argument("file")
    chsh.set_defaults(handler=cmd_chsh)

    generate = commands.add_parser("generate", help="generate an empirical model")
    generate.add_argument("kind", choices=["singlet"])
    generate.add_argument("--angles-a", required=True, help="comma-separated degrees")
    generate.add_argument("--angles-b", required=True, help="comma-separated degrees")
    generate.add_argument("--max-denominator", type=int, default=10**6)
    generate.add_argument("--out", required=True)
    generate.set_defaults(handler=cmd_generate)

    verify = commands.add_parser("verify", help="run the internal cross-check suite")
    verify.add_argument("file")
    verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ModelFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HVKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
