"""Command-line front end: ``committee-dp solve | recognize | gen | bench``.

Machine-readable output goes to stdout, a one-line summary to stderr.
Exit codes: 0 success, 1 usage or input error, 2 no applicable method or
oracle budget exceeded, 3 structure not recognized within the budget.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import cc_solvers, monroe_nearly, monroe_sc
from .generators import MODELS, generate
from .oracle import OracleBudgetError, oracle
from .profile import (Kind, Objective, Profile, ProfileError, Rule, Solution, dump_profile,
                      format_solution, load_profile, validate_solution)
from .recognition import (DeletionCertificate, DeletionKind, Structure, detect, find_deletion_set,
                          load_certificate)

EXIT_OK, EXIT_USAGE, EXIT_NO_METHOD, EXIT_UNRECOGNIZED = 0, 1, 2, 3
METHODS = ("auto", "sp-dp", "sc-dp", "near-sp", "near-sc", "xp-alts", "brute")
CSV_COLUMNS = ("seed", "n", "m", "k", "t", "rule", "objective", "method", "score", "elapsed_ms",
               "oracle_agreement")


class UsageError(Exception):
    pass


class NoMethod(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- dispatch

def _certificate(profile: Profile, kind: DeletionKind, structures, path, max_t):
    """Certificate from ``path`` or by search; ``None`` if nothing fits."""
    for structure in structures:
        if path is not None:
            try:
                cert = load_certificate(path, profile, structure)
            except ProfileError:
                continue
            if cert.kind is kind:
                return cert
        else:
            cert = find_deletion_set(profile, kind, structure, max_t)
            if cert is not None:
                return cert
    return None


def _monroe(profile, k, objective, method, cert_path, max_t) -> Solution:
    # Borda ballots only reach the structured solvers through the max objective
    threshold = profile.kind is Kind.LINEAR and objective is Objective.MAX
    if method == "sp-dp":
        found = detect(profile, Structure.SP) if profile.kind is Kind.APPROVAL or threshold else None
        if found is None:
            raise NoMethod("sp-dp needs a single-peaked approval profile (or linear with max)")
        return monroe_nearly.solve_monroe_sp(profile, k, objective, axis=found.order)
    if method == "near-sp" and threshold:
        cert = _certificate(profile, DeletionKind.VOTERS, (Structure.SP,), cert_path, max_t)
        if cert is None:
            raise NoMethod(f"no voter deletion set of size <= {max_t} for sp")
        return monroe_nearly.solve_monroe_nearsp(profile, cert, k, objective)
    if method == "sc-dp":
        found = detect(profile, Structure.SC) if profile.kind is Kind.APPROVAL else None
        if found is None:
            raise NoMethod("sc-dp needs a single-crossing approval profile")
        solve = monroe_sc.solve_monroe_sc_sum if objective is Objective.SUM else monroe_sc.solve_monroe_sc_max
        return solve(profile, found.order, k)
    if profile.kind is not Kind.APPROVAL:
        raise NoMethod(f"{method} needs approval ballots for Monroe")
    if method in ("near-sp", "near-sc"):
        structure = Structure.SP if method == "near-sp" else Structure.SC
        cert = _certificate(profile, DeletionKind.VOTERS, (structure,), cert_path, max_t)
        if cert is None:
            raise NoMethod(f"no voter deletion set of size <= {max_t} for {structure.value}")
        solve = monroe_nearly.solve_monroe_nearsp if structure is Structure.SP else monroe_nearly.solve_monroe_nearsc
        return solve(profile, cert, k, objective)
    cert = _certificate(profile, DeletionKind.ALTERNATIVES, (Structure.SC, Structure.SP), cert_path, max_t)
    if cert is None:
        raise NoMethod(f"no alternative deletion set of size <= {max_t}")
    try:
        return monroe_nearly.solve_monroe_xp_alts(profile, cert, k, objective, cap=max(max_t, cert.t))
    except monroe_nearly.NearlyError as exc:
        raise NoMethod(str(exc)) from None


def _cc(profile, k, objective, method, cert_path, max_t) -> Solution:
    if method in ("sp-dp", "sc-dp"):
        structure = Structure.SP if method == "sp-dp" else Structure.SC
        found = detect(profile, structure)
        if found is None:
            raise NoMethod(f"{method} needs a {structure.value} profile")
        solve = cc_solvers.solve_cc_sp if structure is Structure.SP else cc_solvers.solve_cc_sc
        return solve(profile, found.order, k, objective)
    if method == "xp-alts":
        raise NoMethod("alternative deletion is implemented for Monroe only")
    structure = Structure.SP if method == "near-sp" else Structure.SC
    cert = _certificate(profile, DeletionKind.VOTERS, (structure,), cert_path, max_t)
    if cert is None:
        raise NoMethod(f"no voter deletion set of size <= {max_t} for {structure.value}")
    if objective is Objective.MAX:
        return cc_solvers.solve_cc_near_max(profile, cert, k)
    approval = profile.kind is Kind.APPROVAL
    if structure is Structure.SP:
        solve = cc_solvers.solve_cc_nearsp_approval if approval else cc_solvers.solve_cc_nearsp_linear
    else:
        solve = cc_solvers.solve_cc_nearsc_approval if approval else cc_solvers.solve_cc_nearsc_linear
    return solve(profile, cert, k)


def _auto_chain(profile: Profile, rule: Rule, objective: Objective) -> list:
    if rule is Rule.MONROE and profile.kind is not Kind.APPROVAL:
        return ["sp-dp", "near-sp", "brute"] if objective is Objective.MAX else ["brute"]
    chain = ["sp-dp", "sc-dp", "near-sp", "near-sc"]
    if rule is Rule.MONROE:
        chain.append("xp-alts")
    return chain + ["brute"]


def run_method(profile: Profile, rule: Rule, objective: Objective, k: int, method: str,
               cert_path: str | None = None, max_t: int = 2) -> Solution:
    """Solve with ``method``; ``auto`` tries structured solvers before brute force.

    Raises :class:`NoMethod` when nothing applies.
    """
    if not 1 <= k <= profile.m:
        raise UsageError(f"k must lie in 1..{profile.m}")
    if method == "auto":
        reasons = []
        for name in _auto_chain(profile, rule, objective):
            try:
                return run_method(profile, rule, objective, k, name, cert_path, max_t)
            except NoMethod as exc:
                reasons.append(f"{name}: {exc}")
        raise NoMethod("; ".join(reasons))
    start = time.perf_counter()
    if method == "brute":
        try:
            sol = oracle(profile, rule, k, objective)
        except OracleBudgetError as exc:
            raise NoMethod(str(exc)) from None
        sol = dataclasses.replace(sol, method_used="brute")
    else:
        fn = _monroe if rule is Rule.MONROE else _cc
        sol = fn(profile, k, objective, method, cert_path, max_t)
    elapsed = (time.perf_counter() - start) * 1000.0
    sol = dataclasses.replace(sol, elapsed_ms=elapsed)
    check = validate_solution(profile, profile.default_model(), k, rule, objective, sol)
    assert check == sol.score, f"invalid solution from {method}: {check}"
    return sol


# ---------------------------------------------------------------- commands

def cmd_solve(args) -> int:
    if args.k < 1:
        raise UsageError("--k must be positive")
    if args.max_t < 0:
        raise UsageError("--max-t must be non-negative")
    profile = load_profile(args.profile)
    try:
        sol = run_method(profile, Rule(args.rule), Objective(args.objective), args.k, args.method,
                         args.deletions, args.max_t)
    except NoMethod as exc:
        print(f"no applicable method: {exc}", file=sys.stderr)
        return EXIT_NO_METHOD
    sys.stdout.write(format_solution(sol))
    print(f"{sol.method_used}: score {sol.score} in {sol.elapsed_ms:.1f} ms", file=sys.stderr)
    return EXIT_OK


def format_certificate(cert: DeletionCertificate) -> str:
    return (f"{cert.kind.value}\n{' '.join(map(str, cert.deleted))}\n"
            f"# witness {cert.structure.value}: {' '.join(map(str, cert.witness))}\n")


def cmd_recognize(args) -> int:
    if args.max_t < 0:
        raise UsageError("--max-t must be non-negative")
    profile = load_profile(args.profile)
    structure = Structure(args.structure)
    if args.deletions is None:
        found = detect(profile, structure)
        if found is None:
            print("none")
            return EXIT_UNRECOGNIZED
        print(" ".join(map(str, found.order)))
        return EXIT_OK
    cert = find_deletion_set(profile, DeletionKind(args.deletions), structure, args.max_t)
    if cert is None:
        print("none")
        return EXIT_UNRECOGNIZED
    sys.stdout.write(format_certificate(cert))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        profile = generate(args.model, args.n, args.m, args.seed, args.noise_voters, args.noise_alts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(dump_profile(profile))
    return EXIT_OK


@dataclasses.dataclass(frozen=True)
class Suite:
    """Benchmark descriptor: ``sizes`` x ``seeds`` instances, each run with every method."""

    model: str
    sizes: tuple
    seeds: tuple
    methods: tuple
    rule: str = "monroe"
    objective: str = "sum"
    noise_voters: int = 0
    noise_alts: int = 0
    oracle: bool = True
    max_t: int = 2


def parse_suite(text: str) -> Suite:
    """Read a JSON descriptor; ``seeds`` may be a list or a count."""
    try:
        raw = json.loads(text)
        seeds = raw.get("seeds", 5)
        seeds = tuple(range(seeds)) if isinstance(seeds, int) else tuple(int(s) for s in seeds)
        suite = Suite(model=raw["model"], sizes=tuple(tuple(int(x) for x in s) for s in raw["sizes"]),
                      seeds=seeds, methods=tuple(raw.get("methods", ["auto"])),
                      rule=raw.get("rule", "monroe"), objective=raw.get("objective", "sum"),
                      noise_voters=int(raw.get("noise_voters", 0)), noise_alts=int(raw.get("noise_alts", 0)),
                      oracle=bool(raw.get("oracle", True)), max_t=int(raw.get("max_t", 2)))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad suite descriptor: {exc}") from None
    if suite.model not in MODELS:
        raise UsageError(f"unknown model {suite.model!r}")
    if any(len(s) != 3 for s in suite.sizes):
        raise UsageError("each size is [n, m, k]")
    bad = [m for m in suite.methods if m not in METHODS]
    if bad:
        raise UsageError(f"unknown methods {bad}")
    Rule(suite.rule), Objective(suite.objective)
    return suite


def _bench_instance(job) -> list:
    suite, (n, m, k), seed = job
    rule, objective = Rule(suite.rule), Objective(suite.objective)
    profile = generate(suite.model, n, m, seed, suite.noise_voters, suite.noise_alts)
    t = suite.noise_voters + suite.noise_alts
    reference = None
    if suite.oracle:
        try:
            reference = oracle(profile, rule, k, objective).score
        except OracleBudgetError:
            reference = None
    rows = []
    scores = {}
    for method in suite.methods:
        try:
            sol = run_method(profile, rule, objective, k, method, None, suite.max_t)
            score, elapsed = sol.score, f"{sol.elapsed_ms:.3f}"
            scores[method] = score
        except NoMethod:
            score, elapsed = "", ""
        agree = "" if reference is None or score == "" else str(score == reference).lower()
        rows.append([seed, n, m, k, t, rule.value, objective.value, method, score, elapsed, agree])
    if "auto" in scores and "brute" in scores:
        assert scores["auto"] <= scores["brute"], "auto is worse than brute force"
    return rows


def bench_rows(suite: Suite, jobs: int = 1) -> list:
    work = [(suite, size, seed) for size, seed in itertools.product(suite.sizes, suite.seeds)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_bench_instance, work))
    else:
        chunks = [_bench_instance(w) for w in work]
    return [row for chunk in chunks for row in chunk]


def cmd_bench(args) -> int:
    with open(args.suite, encoding="utf-8") as fh:
        suite = parse_suite(fh.read())
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    rows = bench_rows(suite, args.jobs)
    writer.writerows(rows)
    agreed = sum(1 for r in rows if r[-1] == "true")
    checked = sum(1 for r in rows if r[-1])
    print(f"{len(rows)} rows, oracle agreement {agreed}/{checked}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="committee-dp", description="Monroe and CC winner determination on structured profiles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one profile file")
    p.add_argument("--rule", choices=[r.value for r in Rule], required=True)
    p.add_argument("--objective", choices=[o.value for o in Objective], default="sum")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--deletions", metavar="FILE", help="certificate file: kind line, then ids")
    p.add_argument("--max-t", type=int, default=2, help="largest deletion set searched (default 2)")
    p.add_argument("profile")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("recognize", help="detect an SP/SC order or a small deletion set")
    p.add_argument("--structure", choices=[s.value for s in Structure], required=True)
    p.add_argument("--deletions", choices=[d.value for d in DeletionKind])
    p.add_argument("--max-t", type=int, default=1)
    p.add_argument("profile")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("gen", help="write a random structured profile")
    p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    noise = p.add_mutually_exclusive_group()
    noise.add_argument("--noise-voters", type=int, default=0)
    noise.add_argument("--noise-alts", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a JSON suite and print CSV")
    p.add_argument("suite")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # keep main() returning codes; --help lands here with 0
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"committee-dp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ProfileError, OSError) as exc:
        print(f"committee-dp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
