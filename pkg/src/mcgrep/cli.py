"""Command-line front end.

Every command reads JSON (``-i``, ``-`` for stdin) and writes JSON (``-o``,
default stdout).  Exit codes: 0 pass or feasible, 1 checked and failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .cocycles import (
    CocycleRelationError,
    CrossedHomData,
    GeneratorRep,
    build_phi_c,
    check_rep_relations,
    cohomologous_mod_scalar,
    rho0_plus_trivial,
)
from .exact import Matrix
from .normal_form import (
    DerivationError,
    assert_eigen_theorem,
    classify_dichotomy,
    condition_check,
    extra_gen_solve,
    key_lemma_solve,
    normalize_chain,
    normalize_chain_2g,
)
from .surface import SurfaceSig, generator_set, relation_catalog
from .symplectic import intersection_form, rho0, rotation_G

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _sig(args) -> SurfaceSig:
    if args.genus is None:
        raise InputError("--genus is required for this command")
    return SurfaceSig(args.genus, args.boundary, args.punctures)


def _read_json(path):
    if path is None:
        raise InputError("--input is required for this command")
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write_json(path, obj):
    text = json.dumps(obj, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_rep(args) -> GeneratorRep:
    rep = GeneratorRep.from_json(_read_json(args.input))
    if args.genus is not None and rep.sig.g != args.genus:
        raise InputError(f"--genus {args.genus} disagrees with the file's genus {rep.sig.g}")
    return rep


def cmd_gen(args) -> int:
    sig = _sig(args)
    bundle = {str(g): rho0(sig, g).to_json() for g in generator_set(sig)}
    bundle["G"] = rotation_G(sig.g).to_json()
    bundle["J"] = intersection_form(sig.g).to_json()
    _write_json(args.output, bundle)
    return EXIT_PASS


def cmd_relcheck(args) -> int:
    if args.input is None:
        sig = _sig(args)
        rep = GeneratorRep(sig, 2 * sig.g, {g: rho0(sig, g) for g in generator_set(sig)})
    else:
        rep = _read_rep(args)
    failures = check_rep_relations(rep)
    checked = sum(1 for _ in _braid_and_commute(rep.sig))
    report = {
        "verdict": "fail" if failures else "pass",
        "sig": rep.sig.to_json(),
        "dim": rep.dim,
        "checked": checked,
        "failures": [{"relation": str(v.relation), "kind": v.relation.kind} for v in failures],
    }
    _write_json(args.output, report)
    return EXIT_FAIL if failures else EXIT_PASS


def _braid_and_commute(sig):
    return (r for r in relation_catalog(sig) if r.kind in ("braid", "commute"))


def cmd_build_rep(args) -> int:
    c = CrossedHomData.from_json(_read_json(args.input))
    try:
        rep = build_phi_c(c)
    except CocycleRelationError as exc:
        _write_json(args.output, {
            "verdict": "fail",
            "stage": "relations",
            "message": str(exc),
            "failures": [v.to_json() for v in exc.violations],
        })
        return EXIT_FAIL
    _write_json(args.output, rep.to_json())
    return EXIT_PASS


def cmd_analyze(args) -> int:
    rep = rho0_plus_trivial(_sig(args)) if args.input is None else _read_rep(args)
    results = {str(g): assert_eigen_theorem(rep, g) for g in rep.images}
    ok = all(r.passed for r in results.values())
    _write_json(args.output, {
        "verdict": "pass" if ok else "fail",
        "generators": {k: r.to_json() for k, r in results.items()},
    })
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    res = classify_dichotomy(_read_rep(args))
    _write_json(args.output, res.to_json())
    return EXIT_FAIL if res.verdict == "NotBlockForm" else EXIT_PASS


_MODES = ("chain", "chain-2g", "key-lemma", "extra", "check")


def cmd_normalize(args) -> int:
    problem = _read_json(args.input)
    if not isinstance(problem, dict):
        raise InputError("normalize input must be a JSON object")
    mode = problem.get("mode", "chain")
    if mode not in _MODES:
        raise InputError(f"unknown mode {mode!r}; expected one of {', '.join(_MODES)}")
    g = problem.get("g", args.genus)
    if not isinstance(g, int) or g < 2:
        raise InputError(f"genus must be an integer >= 2, got {g!r}")
    mats = problem.get("matrices")
    if not isinstance(mats, list) or not mats:
        raise InputError("'matrices' must be a non-empty list of matrices")
    mats = [Matrix.from_json(m) for m in mats]
    m = problem.get("m", 1)
    try:
        if mode == "chain":
            out = normalize_chain(mats, g).to_json()
        elif mode == "chain-2g":
            out = normalize_chain_2g(mats, g).to_json()
        elif mode == "key-lemma":
            out = key_lemma_solve(mats[0], g, m).to_json()
        elif mode == "extra":
            out = extra_gen_solve(mats[0], g, m).to_json()
        else:
            res = condition_check(mats[0], problem.get("role", "chain-1"), g, m)
            _write_json(args.output, res.to_json())
            return EXIT_PASS if res.passed else EXIT_FAIL
    except DerivationError as exc:
        _write_json(args.output, exc.to_json())
        return EXIT_FAIL
    _write_json(args.output, out)
    return EXIT_PASS


def cmd_equiv(args) -> int:
    data = _read_json(args.input)
    if isinstance(data, dict) and "c1" in data and "c2" in data:
        c1, c2 = data["c1"], data["c2"]
    elif isinstance(data, list) and len(data) == 2:
        c1, c2 = data
    else:
        raise InputError("equiv input must be {\"c1\": ..., \"c2\": ...} or a list of two cocycles")
    c1, c2 = CrossedHomData.from_json(c1), CrossedHomData.from_json(c2)
    cert = cohomologous_mod_scalar(c1, c2)
    if cert is None:
        _write_json(args.output, {"verdict": "infeasible"})
        return EXIT_FAIL
    mu, w = cert
    _write_json(args.output, {"verdict": "feasible", "mu": mu.to_json(), "w": [x.to_json() for x in w]})
    return EXIT_PASS


def cmd_selftest(args) -> int:
    seed = acceptance.DEFAULT_SEED if args.seed is None else args.seed
    wanted = args.criteria or [n for n, _, _ in acceptance.CRITERIA]
    results = []
    for n in wanted:
        res = acceptance.run_criterion(n, seed)
        results.append(res)
        # the table shares stdout only when the JSON summary goes to a file
        print(res.line(), file=sys.stderr if args.output == "-" else sys.stdout, flush=True)
    ok = all(r.passed for r in results)
    summary = {
        "verdict": "pass" if ok else "fail",
        "seed": seed,
        "criteria": [r.to_json() for r in results],
    }
    if args.output is not None:
        _write_json(args.output, summary)
    return EXIT_PASS if ok else EXIT_FAIL


COMMANDS = {
    "gen": (cmd_gen, "print the symplectic generator matrices plus G and J"),
    "relcheck": (cmd_relcheck, "check braid/commute relations for rho0 or a representation file"),
    "build-rep": (cmd_build_rep, "build the (2g+1)-dimensional representation of a cocycle"),
    "analyze": (cmd_analyze, "eigen-structure of every generator image"),
    "classify": (cmd_classify, "type A / type B block-form dichotomy"),
    "normalize": (cmd_normalize, "run a normal-form solver on a JSON problem"),
    "equiv": (cmd_equiv, "decide c1 = mu c2 + coboundary"),
    "selftest": (cmd_selftest, "run the seeded acceptance suite"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-g", "--genus", type=int)
    common.add_argument("-p", "--boundary", type=int, default=0, help="boundary components")
    common.add_argument("-r", "--punctures", type=int, default=0)
    common.add_argument("-i", "--input", help="input JSON file, '-' for stdin")
    common.add_argument("-o", "--output", help="output JSON file, '-' or omitted for stdout")
    common.add_argument("--seed", type=int)

    parser = argparse.ArgumentParser(prog="mcgrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "selftest":
            p.add_argument("--criteria", type=int, nargs="+", choices=range(1, 10), metavar="N")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except (InputError, ValueError, KeyError, TypeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"mcgrep {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
