"""Command line front end: ``weyl-reduce {reduce,verify,sweep,classify}``.

Exit codes: 0 verified / all checks pass, 1 Kottwitz mismatch or failed
check, 2 bad input or unmet hypotheses.
"""

from __future__ import annotations

import argparse
import json
import sys

from weylreduce.affine import (
    GROUP_MODES,
    AffineElement,
    GroupMode,
    KottwitzPoint,
    PreconditionError,
    affine_length,
    decompose,
    group_mode,
    is_additive,
    is_dominant,
    is_regular,
    is_reuman_type,
    kottwitz_point,
    parse_affine,
    parse_cocharacter,
    reuman_criterion,
)
from weylreduce.coxeter import parse_element
from weylreduce.reduction import (
    ReductionCertificate,
    ReductionError,
    nonemptiness,
    verify_certificate,
)
from weylreduce.sweeps import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _mode(args) -> GroupMode:
    if args.group in ("GL", "SL") and args.rank is None:
        raise UsageError(f"--group {args.group} needs --rank")
    try:
        return group_mode(args.group, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _element(args, mode: GroupMode) -> AffineElement:
    """Build x from --x, from --lambda/--w, or from --mu with optional --v."""
    system = mode.system
    if args.x:
        return parse_affine(mode, args.x)
    w = parse_element(system, args.w or "e")
    if args.lam and args.mu:
        raise UsageError("give either --lambda or --mu, not both")
    if args.lam:
        return AffineElement.make(mode, parse_cocharacter(args.lam), w)
    if not args.mu:
        raise UsageError("need --x, --lambda or --mu")
    mu = parse_cocharacter(args.mu)
    if not is_dominant(system, mu):
        raise UsageError(f"--mu {list(mu)} is not dominant")
    v = parse_element(system, args.v or "e")
    x = AffineElement.from_parts(mode, v, mu, w)
    v2, mu2 = decompose(system, x.translation)
    if mu2 != tuple(mu) or (is_regular(system, mu) and v2 != v):
        raise UsageError(f"v(mu) = {list(x.translation)} decomposes as {v2!r}, {list(mu2)}")
    return x


def _kappa(args, mode: GroupMode, x: AffineElement) -> KottwitzPoint:
    if args.kappa is None:
        return kottwitz_point(x)
    return KottwitzPoint.of(mode, args.kappa)


def cmd_reduce(args) -> int:
    mode = _mode(args)
    x = _element(args, mode)
    kappa = _kappa(args, mode, x)
    try:
        verdict, cert = nonemptiness(x, kappa)
    except ReductionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    check = verify_certificate(cert)
    if not check:
        raise AssertionError(f"engine produced an invalid certificate: {check}")
    if args.format == "json":
        sys.stdout.write(cert.dumps())
    else:
        print(f"x = {x!r}   kappa(x) = {cert.kappa.value}")
        for k, st in enumerate(cert.steps):
            print(f"  {k}: s_{st.generator} case {st.case.value:<2} {st.case.implication:<11}"
                  f" lengths {list(st.lengths)} -> {st.after!r}")
        print(f"terminal {cert.terminal!r} elliptic={cert.terminal_elliptic}")
    if verdict:
        print(f"non-empty: kappa(x) = kappa(b) = {kappa.value}", file=sys.stderr)
        return EXIT_OK
    print(f"Kottwitz mismatch: kappa(x) = {cert.kappa.value}, kappa(b) = {kappa.value}", file=sys.stderr)
    return EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        text = sys.stdin.read() if args.certificate == "-" else open(args.certificate).read()
        cert = ReductionCertificate.from_json(json.loads(text))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: malformed certificate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    check = verify_certificate(cert)
    if check:
        print(f"ok: {len(cert.steps)} steps verified, terminal elliptic")
        return EXIT_OK
    print(f"invalid at step {check.failed_step}: {check.reason}")
    return EXIT_FAIL


def cmd_sweep(args) -> int:
    mode = _mode(args)
    mus = [parse_cocharacter(m) for m in args.mu] if args.mu else None
    reports = run_suite(mode, args.suite, samples=args.samples, seed=args.seed, mus=mus)
    out = {"group": mode.label, "suite": args.suite, "reports": [r.to_json() for r in reports]}
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK if all(not r.counterexamples for r in reports) else EXIT_FAIL


def cmd_classify(args) -> int:
    mode = _mode(args)
    x = _element(args, mode)
    system = mode.system
    regular = is_regular(system, x.mu)
    flags = {
        "element": repr(x),
        "v": list(x.v.reduced_word()),
        "mu": list(x.mu),
        "regular": regular,
        "additive": is_additive(x),
        "reuman_type": is_reuman_type(x),
        "reuman_criterion": reuman_criterion(x) if regular else None,
        "elliptic": x.finite.is_elliptic(),
        "coxeter": x.finite.is_coxeter(),
        "length": affine_length(x) if regular else None,
        "kappa": kottwitz_point(x).value,
    }
    if args.format == "json":
        json.dump(flags, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for k, v in flags.items():
            print(f"{k:17} {v}")
    return EXIT_OK


def _add_group(p):
    p.add_argument("--group", choices=GROUP_MODES, default="GL")
    p.add_argument("--rank", type=int, help="n for GL_n / SL_n (ignored for C2, G2)")


def _add_element(p):
    p.add_argument("--x", help='affine element, e.g. "t[2,1,0,-1,-2] * w[4321234]"')
    p.add_argument("--lambda", dest="lam", help="translation part lambda, comma separated")
    p.add_argument("--mu", help="dominant cocharacter mu, comma separated")
    p.add_argument("--v", help="Weyl element v with lambda = v(mu)")
    p.add_argument("--w", help="finite part: word or [one-line permutation]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weyl-reduce", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="build and print a reduction certificate")
    _add_group(p)
    _add_element(p)
    p.add_argument("--kappa", type=int, help="Kottwitz point of b (default: that of x)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="re-check a certificate file ('-' for stdin)")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run an exhaustive verification suite")
    _add_group(p)
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--samples", type=int, default=20, help="random mu per length check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mu", action="append", help="mu for the reduction suite (repeatable)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("classify", help="print the flags of one element")
    _add_group(p)
    _add_element(p)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
