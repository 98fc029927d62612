"""Batch front end: model construction, verification suites, pairing
evaluation and witness dumps, all through the JSON formats of serialize.

Exit codes: 0 all checks pass, 1 a verification failed, 2 bad input.
Reports are written even when verification fails.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import dga, models
from .algebra import matrix_units_algebra, pointwise_algebra, upper_triangular_algebra
from .chern import (
    PerturbationChain,
    curvature,
    run_verification_suite,
    verify_perturbation_invariance,
    witness_cochain,
)
from .errors import BudgetError, InputError
from .pairing import chern_pairing, antisym_cycle, mult_char_exponentials, lattice_reduce
from .serialize import (
    array_from_json,
    array_to_json,
    dump_json,
    jsonable,
    load_json,
    module_from_json,
    module_to_json,
)

MAX_N = 64
MAX_M = 6


def _check_run_budget(module, budget_n):
    cap = budget_n or MAX_N
    if module.n > cap:
        raise BudgetError(f"Hilbert dimension {module.n} exceeds the budget {cap}")
    if module.m > MAX_M:
        raise BudgetError(f"summability degree {module.m} exceeds the budget {MAX_M}")


def _algebra_by_name(name: str):
    if name == "ut2":
        return upper_triangular_algebra()
    kind, _, arg = name.partition(":")
    if kind == "pointwise":
        return pointwise_algebra(int(arg))
    if kind == "matrix":
        return matrix_units_algebra(int(arg))
    raise InputError(f"unknown algebra spec '{name}' (use ut2, pointwise:<d>, matrix:<k>)")


def cmd_make_model(args) -> int:
    if args.kind == "hardy":
        _, module = models.discrete_hardy(args.N)
    elif args.kind == "hardy-graded":
        _, module = models.discrete_hardy_graded(args.N, seed=args.seed)
    elif args.kind == "even":
        _, module = models.toy_even_module(args.n, seed=args.seed, m=args.m or 3,
                                           base_dim=args.base_dim)
    elif args.kind == "reflection":
        module = models.random_reflection_module(args.n, _algebra_by_name(args.algebra),
                                                 seed=args.seed, m=args.m or 2)
    else:
        raise InputError(f"unknown model kind '{args.kind}'")
    dump_json(module_to_json(module), args.output)
    print(f"wrote {args.kind} module (n={module.n}, m={module.m}) to {args.output}")
    return 0


def cmd_make_perturbation(args) -> int:
    module = module_from_json(load_json(args.module))
    T = models.conjugation_perturbation(module, seed=args.seed, strength=args.eps)
    dump_json({"T": array_to_json(T)}, args.output)
    print(f"wrote conjugation perturbation (eps={args.eps}, seed={args.seed}) to {args.output}")
    return 0


def _load_perturbation(args, module):
    if args.perturbation:
        return array_from_json(load_json(args.perturbation)["T"])
    return np.zeros((module.n, module.n), dtype=complex)


def cmd_verify(args) -> int:
    module = module_from_json(load_json(args.module))
    _check_run_budget(module, args.budget_n)
    if args.m and args.m != module.m:
        raise InputError(f"--m {args.m} disagrees with the module file (m={module.m})")
    T = _load_perturbation(args, module)
    report = run_verification_suite(module, T, tol_witness=args.tol, seed=args.seed)
    if args.dump_witness:
        report["witness_dump"] = _witness_dump(module, T)
    if args.report:
        dump_json(report, args.report)
    for key, sub in report.items():
        if isinstance(sub, dict) and "pass" in sub:
            print(f"{key}: {'PASS' if sub['pass'] else 'FAIL'}")
    print(f"overall: {'PASS' if report['pass'] else 'FAIL'}")
    return 0 if report["pass"] else 1


def _witness_dump(module, T) -> dict:
    chain = PerturbationChain(module, T)
    theta = curvature(chain)
    dump = {
        "curvature_terms": [
            f"t^{k}{' dt' if e else ''} (x) {dga.word_str(w, c)}"
            for (k, e, w), c in sorted(theta.terms.items(), key=str)
        ],
        "connection_on_generators": {},
    }
    for i in range(chain.at.dim):
        nab = chain.nabla_rho_basis(i)
        dump["connection_on_generators"][chain.at.labels[i]] = [
            f"t^{k}{' dt' if e else ''} (x) {dga.word_str(w, c)}"
            for (k, e, w), c in sorted(nab.terms.items(), key=str)
        ]
    psi = witness_cochain(module, T)
    dump["witness_components"] = (
        [] if psi is None else [array_to_json(c) for c in psi.components]
    )
    return dump


def cmd_witness(args) -> int:
    module = module_from_json(load_json(args.module))
    _check_run_budget(module, args.budget_n)
    T = _load_perturbation(args, module)
    report = verify_perturbation_invariance(module, T, tol=args.tol)
    psi = report.pop("witness", None)
    out = {
        "pass": report["pass"],
        "max_residual": report["max_residual"],
        "worst_tuple": report["worst_tuple"],
        "reduced": report["reduced"],
        "witness_degrees": report["witness_degrees"],
        "components": [] if psi is None else [array_to_json(c) for c in psi.components],
    }
    if args.dump_witness:
        out["witness_dump"] = _witness_dump(module, T)
    if args.report:
        dump_json(out, args.report)
    print(f"witness residual {report['max_residual']:.3e} "
          f"({'PASS' if report['pass'] else 'FAIL'})")
    return 0 if report["pass"] else 1


def cmd_pair(args) -> int:
    module = module_from_json(load_json(args.module))
    _check_run_budget(module, args.budget_n)
    if args.m and args.m != module.m:
        raise InputError(f"--m {args.m} disagrees with the module file (m={module.m})")
    data = load_json(args.logs)
    logs = [array_from_json(v) for v in data["logs"]]
    exponents = [array_from_json(v) for v in data.get("exponents", data["logs"])]
    value = mult_char_exponentials(module, exponents, logs, tol=args.tol or 1e-9)
    reduced = lattice_reduce(value.representative, module.m)
    raw_pairing = chern_pairing(module, antisym_cycle(module.algebra, logs))
    out = {
        "representative": [value.representative.real, value.representative.imag],
        "reduced_representative": [reduced.representative.real, reduced.representative.imag],
        "modulus_exponent": value.modulus_exponent,
        "raw_pairing": [raw_pairing.real, raw_pairing.imag],
    }
    if args.perturbation:
        T = array_from_json(load_json(args.perturbation)["T"])
        from .fredholm import perturb

        perturbed = perturb(module, T)
        post = mult_char_exponentials(perturbed, exponents, logs, tol=args.tol or 1e-9)
        out["representative_after_perturbation"] = [
            post.representative.real, post.representative.imag,
        ]
    if args.report:
        dump_json(out, args.report)
    print(json.dumps(jsonable(out)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cycfred")
    sub = parser.add_subparsers(dest="command", required=True)

    mk = sub.add_parser("make-model", help="construct a built-in module and write it to JSON")
    mk.add_argument("kind", choices=["hardy", "hardy-graded", "even", "reflection"])
    mk.add_argument("--N", type=int, default=16)
    mk.add_argument("--n", type=int, default=4)
    mk.add_argument("--m", type=int, default=0)
    mk.add_argument("--seed", type=int, default=0)
    mk.add_argument("--base-dim", type=int, default=2)
    mk.add_argument("--algebra", default="ut2")
    mk.add_argument("-o", "--output", required=True)
    mk.set_defaults(func=cmd_make_model)

    mp = sub.add_parser("make-perturbation", help="seeded conjugation perturbation of a module")
    mp.add_argument("--module", required=True)
    mp.add_argument("--eps", type=float, default=0.1)
    mp.add_argument("--seed", type=int, default=0)
    mp.add_argument("-o", "--output", required=True)
    mp.set_defaults(func=cmd_make_perturbation)

    for name, fn in (("verify-invariance", cmd_verify), ("witness", cmd_witness)):
        p = sub.add_parser(name)
        p.add_argument("--module", required=True)
        p.add_argument("--perturbation")
        p.add_argument("--m", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--report")
        p.add_argument("--budget-n", type=int, default=0)
        p.add_argument("--dump-witness", action="store_true")
        p.set_defaults(func=fn)

    pp = sub.add_parser("pair")
    pp.add_argument("--module", required=True)
    pp.add_argument("--logs", required=True)
    pp.add_argument("--perturbation")
    pp.add_argument("--m", type=int, default=0)
    pp.add_argument("--tol", type=float, default=0.0)
    pp.add_argument("--report")
    pp.add_argument("--budget-n", type=int, default=0)
    pp.set_defaults(func=cmd_pair)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (InputError, BudgetError, FileNotFoundError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
