"""Batch command-line front end.

Exit status: 0 success, 1 validation or verification failure, 2 enumeration
bound exceeded, 3 malformed input.  Reports go to stdout as JSON (default)
or as a text rendering of the same data.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from mvhom import affine, engine, fixedset, simplicial
from mvhom.chain import ChainError
from mvhom.corr import Corr, CorrespondenceError, box, compose, mpath, validate
from mvhom.finspace import SpaceError
from mvhom.io import (
    FormatError,
    chain_from_json,
    chain_to_json,
    corr_parts_from_json,
    corr_to_json,
    decode_point,
    dumps,
    encode_point,
    load_json,
    space_from_json,
)

EXIT_OK, EXIT_INVALID, EXIT_BOUND, EXIT_MALFORMED = 0, 1, 2, 3
SNF_DEFAULT_LIMIT = 5000


class Failure(Exception):
    def __init__(self, code: int, kind: str, message: str, witness=None):
        super().__init__(message)
        self.code = code
        self.kind = kind
        self.witness = witness


@dataclass
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    max_n: int = 2
    bound: int = engine.DEFAULT_BOUND
    seed: int = 0
    output: str = "json"
    options: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.bound <= 0 or self.max_n < 0:
            raise Failure(EXIT_MALFORMED, "config", "bounds must be positive")


def _load_corr(path: str) -> Corr:
    p = Path(path)
    obj = load_json(p)
    source, target, graph = corr_parts_from_json(obj, p.parent)
    v = validate(graph, source, target)
    if not v.is_valid:
        raise Failure(EXIT_INVALID, "invalid-correspondence", f"{path} is not valid", _witness(v.failures))
    return Corr(source, target, graph)


def _witness(failures) -> list:
    return [[crit, encode_point(w)] for crit, w in failures]


def _points(arg: str) -> list:
    return [decode_point(p) for p in arg.split(",") if p]


def cmd_validate(cfg: RunConfig) -> tuple[int, dict]:
    p = Path(cfg.inputs["corr"])
    source, target, graph = corr_parts_from_json(load_json(p), p.parent)
    v = validate(graph, source, target)
    report = {"valid": v.is_valid, "failures": _witness(v.failures)}
    return (EXIT_OK if v.is_valid else EXIT_INVALID), report


def cmd_compose(cfg: RunConfig) -> tuple[int, dict]:
    r = _load_corr(cfg.inputs["first"])
    s = _load_corr(cfg.inputs["second"])
    return EXIT_OK, corr_to_json(compose(r, s))


def cmd_box(cfg: RunConfig) -> tuple[int, dict]:
    r = _load_corr(cfg.inputs["left"])
    s = _load_corr(cfg.inputs["right"])
    return EXIT_OK, corr_to_json(box(r, s))


def cmd_verify(cfg: RunConfig) -> tuple[int, list]:
    if cfg.options.get("suite") == "finite":
        report = simplicial.verify_fin_identities(cfg.max_n)
    else:
        report = affine.verify_prism_identities(cfg.max_n)
    ok = all(r["status"] == "pass" for r in report)
    return (EXIT_OK if ok else EXIT_INVALID), report


def cmd_homology(cfg: RunConfig) -> tuple[int, dict]:
    p = Path(cfg.inputs["space"])
    space = space_from_json(load_json(p), p.parent)
    high = None if cfg.options.get("attempt_high") else min(cfg.bound, SNF_DEFAULT_LIMIT)
    report = engine.homology_report(space, cfg.max_n, cfg.bound, high)
    code = EXIT_BOUND if report["status"] == "bound-exceeded" else EXIT_OK
    return code, report


def cmd_certify(cfg: RunConfig) -> tuple[int, dict]:
    x0 = decode_point(cfg.options["basepoint"])
    if cfg.inputs.get("cycle"):
        p = Path(cfg.inputs["cycle"])
        obj = load_json(p)
        z = chain_from_json(obj, p.parent)
        if "space" in obj:
            space = space_from_json(obj["space"], p.parent)
        elif z.terms:
            space = next(iter(z.terms)).target
        else:
            raise Failure(EXIT_MALFORMED, "malformed-input", "empty cycle needs a 'space' entry")
        cycles = [z]
    else:
        p = Path(cfg.inputs["space"])
        space = space_from_json(load_json(p), p.parent)
        rng = random.Random(cfg.seed)
        cycles = engine.random_cycles(space, cfg.options["degree"], cfg.options["count"], rng, cfg.bound)
    certs = []
    for z in cycles:
        try:
            cert = engine.nullhomotopy_certificate(z, space, x0)
        except ChainError as exc:
            raise Failure(EXIT_INVALID, "not-a-cycle", str(exc)) from None
        verified = cert.verified and engine.verify_certificate(cert)
        if not verified:
            raise Failure(EXIT_INVALID, "certificate-failed", "filling does not bound the cycle")
        certs.append({
            "cycle": chain_to_json(cert.cycle),
            "filling": chain_to_json(cert.filling),
            "steps": cert.steps,
            "verified": verified,
            "model": "finite",
        })
    return EXIT_OK, certs[0] if len(certs) == 1 and cfg.inputs.get("cycle") else {"certificates": certs}


def cmd_fixedset(cfg: RunConfig) -> tuple[int, dict]:
    t = _load_corr(cfg.inputs["corr"])
    return EXIT_OK, fixedset.greatest_fixed_subset(t).to_json()


def cmd_mpath(cfg: RunConfig) -> tuple[int, dict]:
    p = Path(cfg.inputs["space"])
    space = space_from_json(load_json(p), p.parent)
    path = mpath(space, _points(cfg.options["start"]), _points(cfg.options["end"]))
    return EXIT_OK, corr_to_json(path)


COMMANDS = {
    "validate": cmd_validate,
    "compose": cmd_compose,
    "box": cmd_box,
    "verify-identities": cmd_verify,
    "homology": cmd_homology,
    "certify": cmd_certify,
    "fixedset": cmd_fixedset,
    "mpath": cmd_mpath,
}


def run(cfg: RunConfig) -> tuple[int, object]:
    try:
        return COMMANDS[cfg.command](cfg)
    except Failure as exc:
        return exc.code, _error(exc.kind, str(exc), exc.witness)
    except engine.EnumerationBoundExceeded as exc:
        return EXIT_BOUND, _error("bound-exceeded", str(exc), {"degree": exc.degree})
    except CorrespondenceError as exc:
        return EXIT_INVALID, _error("invalid-correspondence", str(exc), _witness(exc.failures))
    except (FormatError, SpaceError, ChainError, KeyError, TypeError, ValueError, OSError) as exc:
        return EXIT_MALFORMED, _error("malformed-input", str(exc))


def _error(kind: str, message: str, witness=None) -> dict:
    return {"error": kind, "message": message, "witness": witness}


def render_text(command: str, report) -> str:
    if isinstance(report, dict) and "error" in report:
        return f"error ({report['error']}): {report['message']}\nwitness: {report['witness']}"
    if command == "verify-identities":
        counts: dict = {}
        for r in report:
            row = counts.setdefault(r["identity"], [0, 0])
            row[0 if r["status"] == "pass" else 1] += 1
        lines = [f"{'identity':<10}{'pass':>8}{'fail':>8}"]
        lines += [f"{k:<10}{v[0]:>8}{v[1]:>8}" for k, v in counts.items()]
        return "\n".join(lines)
    if command == "homology":
        lines = [f"finite-model homology ({report['status']})"]
        for g in report["groups"]:
            tors = "".join(f" + Z/{t}" for t in g["torsion"])
            lines.append(f"H_{g['n']} = Z^{g['rank']}{tors}")
        if report["reason"]:
            lines.append(report["reason"])
        return "\n".join(lines)
    if command == "fixedset":
        its = " -> ".join("{" + ",".join(map(str, a)) + "}" for a in report["iterations"])
        return f"fixed set: {report['fixed_set']} (stabilized at {report['stabilized_at']})\n{its}"
    if command == "validate":
        if report["valid"]:
            return "valid"
        return "invalid\n" + "\n".join(f"  {c}: {w}" for c, w in report["failures"])
    return dumps(report)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stdout.write(dumps(_error("malformed-input", message)) + "\n")
        sys.exit(EXIT_MALFORMED)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mvhom", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--bound", type=int, default=engine.DEFAULT_BOUND,
                        help="maximum basis size per degree")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a correspondence, with failure witnesses")
    p.add_argument("--corr", required=True)

    p = sub.add_parser("compose", help="second o first")
    p.add_argument("--first", required=True)
    p.add_argument("--second", required=True)

    p = sub.add_parser("box", help="box product of two correspondences")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = sub.add_parser("verify-identities", help="prism and simplicial identities")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--affine", dest="suite", action="store_const", const="affine")
    g.add_argument("--finite", dest="suite", action="store_const", const="finite")
    p.add_argument("--max-n", type=int, default=4)

    p = sub.add_parser("homology", help="finite-model multivalued homology")
    p.add_argument("--space", required=True)
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--attempt-snf-high-degrees", action="store_true")

    p = sub.add_parser("certify", help="nullhomotopy certificates over a discrete space")
    p.add_argument("--cycle")
    p.add_argument("--basepoint", required=True)
    p.add_argument("--space", help="space for seeded random cycles (used without --cycle)")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--count", type=int, default=10)

    p = sub.add_parser("fixedset", help="greatest fixed subset of a self-correspondence")
    p.add_argument("--corr", required=True)

    p = sub.add_parser("mpath", help="multivalued path between two finite subsets")
    p.add_argument("--space", required=True)
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--to", dest="end", required=True)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    inputs = {k: getattr(args, k) for k in ("corr", "first", "second", "left", "right", "space", "cycle")
              if getattr(args, k, None)}
    options = {
        "suite": getattr(args, "suite", None) or "affine",
        "attempt_high": getattr(args, "attempt_snf_high_degrees", False),
        "basepoint": getattr(args, "basepoint", None),
        "degree": getattr(args, "degree", 1),
        "count": getattr(args, "count", 10),
        "start": getattr(args, "start", None),
        "end": getattr(args, "end", None),
    }
    if args.command == "certify" and not inputs.get("cycle") and not inputs.get("space"):
        raise Failure(EXIT_MALFORMED, "malformed-input", "certify needs --cycle or --space")
    return RunConfig(args.command, inputs, getattr(args, "max_n", 2), args.bound, args.seed, args.format, options)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        code, report = run(cfg)
    except Failure as exc:
        code, report = exc.code, _error(exc.kind, str(exc), exc.witness)
    out = dumps(report) if args.format == "json" else render_text(args.command, report)
    sys.stdout.write(out + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
