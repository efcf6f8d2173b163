"""Batch front end: parse a JSON spec file, run one computation, emit JSON.

Exit codes: 0 on success, 2 on validation failure (parse errors, unresolved
names, broken axioms in the input), 3 on a computation-level verdict failure
(a reconstruction that is NotGenerated, a failed equivalence check).
Output is deterministic: identical input bytes yield identical output bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cohom import AxiomError
from .coend import (
    MissingControlData,
    MissingDual,
    NaturalityFailure,
    WellDefinednessFailure,
    antipode_on_coend,
    bialgebra_on_coend,
    c_coend,
    coend_of_functor,
    comodule_on,
    diagram_of_functor,
    epi_to_c_coend,
    factor_through_coend,
    unit_control,
    verify_cowedge,
)
from .cohom import cohom as cohom_op
from .exactlinalg import ScalarError
from .fincat import check_monoidal, validate_category, validate_functor
from .padic_banach import PrimeMismatch, bounded_coend
from .reconstruct import equivalence_check, reconstruct_coalgebra
from .specfile import (
    SpecError,
    load_spec,
    matrix_json,
    resolve_control,
    resolve_transformation,
)

VALIDATION_ERRORS = (
    SpecError,
    ScalarError,
    AxiomError,
    WellDefinednessFailure,
    NaturalityFailure,
    MissingControlData,
    MissingDual,
    PrimeMismatch,
    ValueError,
    KeyError,
)


def _emit(payload, out_path=None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _validate_spec(spec):
    problems = []
    for name, cat in spec.categories.items():
        rep = validate_category(cat)
        problems.extend(f"category {name}: {p}" for p in rep.problems)
    for name, F in spec.functors.items():
        rep = validate_functor(F)
        problems.extend(f"functor {name}: {p}" for p in rep.problems)
        if F.monoidal is not None and not rep.problems:
            rep = check_monoidal(F)
            problems.extend(f"functor {name}: {p}" for p in rep.problems)
    for name, c in spec.coalgebras.items():
        problems.extend(f"coalgebra {name}: {p}" for p in c.check())
    for name, com in spec.comodules.items():
        problems.extend(f"comodule {name}: {p}" for p in com.check())
    return problems


def _require_functor(spec, name):
    if name is None:
        raise SpecError("this command needs --functor")
    F = spec.functors.get(name)
    if F is None:
        raise SpecError(f"unknown functor {name!r}")
    rep = validate_functor(F)
    if not rep.ok:
        raise SpecError([f"functor {name}: {p}" for p in rep.problems])
    return F


def _coend_payload(r, verification=True):
    payload = {
        "carrier_dim": r.carrier.dim,
        "objects": list(r.diagram.objects),
        "pi": matrix_json(r.pi),
        "section": matrix_json(r.section),
        "injections": {x: matrix_json(m) for x, m in r.injections.items()},
        "comultiplication": matrix_json(r.coalgebra.delta),
        "counit": matrix_json(r.coalgebra.counit),
        "delta": {x: matrix_json(m) for x, m in r.delta.items()},
    }
    if verification:
        comodule_problems = {}
        for x in r.diagram.objects:
            try:
                comodule_on(r, x)
                comodule_problems[x] = []
            except WellDefinednessFailure as exc:
                comodule_problems[x] = [str(exc)]
        payload["verification"] = {
            "cowedge": verify_cowedge(r),
            "coalgebra": r.coalgebra.check(),
            "comodules": comodule_problems,
        }
    return payload


def cmd_validate(spec, args):
    problems = _validate_spec(spec)
    _emit({"ok": not problems, "problems": problems}, args.out)
    return 0 if not problems else 2


def cmd_cohom(spec, args):
    if args.x is None or args.y is None:
        raise SpecError("cohom needs --x and --y")
    for name in (args.x, args.y):
        if name not in spec.spaces:
            raise SpecError(f"unknown space {name!r}")
    ch = cohom_op(spec.spaces[args.x], spec.spaces[args.y], spec.field)
    _emit(
        {
            "carrier_dim": ch.carrier.dim,
            "carrier_labels": list(ch.carrier.labels),
            "coev": matrix_json(ch.coev),
        },
        args.out,
    )
    return 0


def cmd_coend(spec, args):
    F = _require_functor(spec, args.functor)
    r = coend_of_functor(F)
    _emit(_coend_payload(r), args.out)
    return 0


def cmd_ccoend(spec, args):
    F = _require_functor(spec, args.functor)
    d = diagram_of_functor(F)
    controls = []
    for name in (args.controls.split(",") if args.controls else []):
        name = name.strip()
        if name == "unit":
            controls.append(unit_control(d))
        else:
            controls.append(resolve_control(spec, F, name))
    r_plain = coend_of_functor(F)
    r = c_coend(F, controls)
    h = epi_to_c_coend(r_plain, r)
    payload = _coend_payload(r)
    payload["controls"] = [c.name for c in controls]
    payload["plain_carrier_dim"] = r_plain.carrier.dim
    payload["epi_from_plain"] = matrix_json(h)
    _emit(payload, args.out)
    return 0


def cmd_bialgebra(spec, args):
    F = _require_functor(spec, args.functor)
    r = coend_of_functor(F)
    b = bialgebra_on_coend(F, r)
    payload = _coend_payload(r)
    payload["multiplication"] = matrix_json(b.mult)
    payload["unit"] = matrix_json(b.unit)
    payload["verification"]["bialgebra"] = b.check()
    _emit(payload, args.out)
    return 0


def cmd_hopf(spec, args):
    F = _require_functor(spec, args.functor)
    r = coend_of_functor(F)
    b = bialgebra_on_coend(F, r)
    h = antipode_on_coend(F, r)
    payload = _coend_payload(r)
    payload["multiplication"] = matrix_json(b.mult)
    payload["unit"] = matrix_json(b.unit)
    payload["antipode"] = matrix_json(h.antipode)
    payload["verification"]["hopf"] = h.check()
    _emit(payload, args.out)
    return 0


def _named_comodules(spec, names, what):
    out = {}
    for name in names:
        name = name.strip()
        if name not in spec.comodules:
            raise SpecError(f"unknown comodule {name!r} in --{what}")
        out[name] = spec.comodules[name]
    return out


def cmd_reconstruct(spec, args):
    if args.coalgebra is None or not args.seeds:
        raise SpecError("reconstruct needs --coalgebra and --seeds")
    c = spec.coalgebras.get(args.coalgebra)
    if c is None:
        raise SpecError(f"unknown coalgebra {args.coalgebra!r}")
    bad = c.check()
    if bad:
        raise SpecError([f"coalgebra {args.coalgebra}: {p}" for p in bad])
    seeds = _named_comodules(spec, args.seeds.split(","), "seeds")
    res = reconstruct_coalgebra(c, seeds)
    payload = {
        "verdict": res.verdict,
        "iso": res.iso,
        "generated": res.generated,
        "injective": res.injective,
        "carrier_dim": res.coend.carrier.dim,
        "base_dim": c.carrier.dim,
        "h": matrix_json(res.h),
        "problems": res.problems,
    }
    _emit(payload, args.out)
    return 0 if res.iso else 3


def cmd_equiv(spec, args):
    if args.coalgebra is None or not args.seeds:
        raise SpecError("equiv needs --coalgebra and --seeds")
    c = spec.coalgebras.get(args.coalgebra)
    if c is None:
        raise SpecError(f"unknown coalgebra {args.coalgebra!r}")
    seeds = _named_comodules(spec, args.seeds.split(","), "seeds")
    probes = _named_comodules(
        spec, args.probes.split(",") if args.probes else [], "probes"
    )
    verdict = equivalence_check(c, seeds, probes)
    payload = {
        "ok": verdict.ok,
        "reconstruction": verdict.reconstruction.verdict,
        "probes": verdict.probe_status,
        "hom_dims_base": verdict.hom_dims_base,
        "hom_dims_coend": verdict.hom_dims_coend,
        "hom_tables_match": verdict.hom_tables_match,
        "problems": verdict.problems,
    }
    _emit(payload, args.out)
    return 0 if verdict.ok else 3


def cmd_bcoend(spec, args):
    F = _require_functor(spec, args.functor)
    b = bounded_coend(F)
    payload = _coend_payload(b.result)
    payload["norms"] = {
        "pi": b.pi_norm.to_json(),
        "injections": {x: n.to_json() for x, n in b.injection_norms.items()},
        "comultiplication": b.comultiplication_norm.to_json(),
        "counit": b.counit_norm.to_json(),
        "delta_bound": b.delta_bound.to_json(),
        "class_norms": [n.to_json() for n in b.class_norms],
        "carrier_weights": list(b.normed_carrier.weights),
    }
    payload["closure_is_identity"] = b.closure_is_identity
    _emit(payload, args.out)
    return 0


def cmd_factor(spec, args):
    if args.transformation is None:
        raise SpecError("factor needs --transformation")
    F, t, target = resolve_transformation(spec, args.transformation)
    if args.functor and spec.functors.get(args.functor) is not F:
        raise SpecError("--functor disagrees with the transformation's functor")
    r = coend_of_functor(F)
    psi = factor_through_coend(r, t, target)
    _emit(
        {
            "psi": matrix_json(psi),
            "carrier_dim": r.carrier.dim,
            "target_dim": target.dim,
        },
        args.out,
    )
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "cohom": cmd_cohom,
    "coend": cmd_coend,
    "ccoend": cmd_ccoend,
    "bialgebra": cmd_bialgebra,
    "hopf": cmd_hopf,
    "reconstruct": cmd_reconstruct,
    "equiv": cmd_equiv,
    "bcoend": cmd_bcoend,
    "factor": cmd_factor,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coendforge",
        description="Exact cohom/coend computations and reconstruction checks "
                    "driven by JSON spec files.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("specfile", help="path to the JSON spec file")
    parser.add_argument("--functor", help="functor name for coend-family commands")
    parser.add_argument("--controls", help="comma-separated control names ('unit' is built in)")
    parser.add_argument("--seeds", help="comma-separated comodule names")
    parser.add_argument("--probes", help="comma-separated comodule names")
    parser.add_argument("--coalgebra", help="coalgebra name for reconstruction")
    parser.add_argument("--transformation", help="transformation name for 'factor'")
    parser.add_argument("--x", help="space name (cohom)")
    parser.add_argument("--y", help="space name (cohom)")
    parser.add_argument("--field", help="override the file's field: q | fp:<p> | padic:<p>")
    parser.add_argument("--out", help="write the JSON result to this path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            with open(args.specfile, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SpecError(f"cannot read {args.specfile}: {exc}") from None
        spec = load_spec(text, field_override=args.field)
        if args.command != "validate":
            problems = _validate_spec(spec)
            if problems:
                _emit({"ok": False, "problems": problems}, args.out)
                return 2
        return COMMANDS[args.command](spec, args)
    except VALIDATION_ERRORS as exc:
        problems = getattr(exc, "problems", None) or [str(exc)]
        _emit({"ok": False, "problems": problems}, args.out)
        return 2


if __name__ == "__main__":
    sys.exit(main())
