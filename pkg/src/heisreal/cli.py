"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from gmpy2 import mpq

from . import __version__
from .exactnum import bernoulli, format_rational, psi_coeff, psi_inv_coeff, to_rational
from .gamma import gamma_canonical, gamma_epsilon, gamma_transport, structure_constants_product
from .ncalgebra import EUCLIDEAN, MINKOWSKI, make_metric
from .opmatrix import (closed_form_k_power, exp_partial, k_matrix, ktilde, ktilde_power,
                       partial_matrix, psi_inv_of, psi_of)
from .presentations import (constants_presentation, extended_poincare_presentation,
                            extended_presentation, kappa_presentation, lorentz_presentation,
                            poincare_presentation, so_presentation)
from .realize import (realize_extended, realize_extended_poincare, realize_kappa_closed,
                      realize_lorentz, realize_poincare, realize_so, realize_weyl_series)
from .verify import (check_bracket, jacobi_check, lambda_group_check, mutation_trials,
                     k_power_closed_form_check, partial_commutator_check, weyl_property_check)

ALGEBRAS = ("so", "lorentz", "extended-so", "extended-lorentz", "poincare",
            "extended-poincare", "kappa", "weyl-generic")
_IMPLIED_METRIC = {"so": EUCLIDEAN, "extended-so": EUCLIDEAN, "lorentz": MINKOWSKI,
                   "extended-lorentz": MINKOWSKI, "poincare": MINKOWSKI,
                   "extended-poincare": MINKOWSKI}
ORACLES = ("k-power", "partial-commutator", "gamma", "kappa", "weyl", "lambda-group", "jacobi",
           "block-power", "psi-inverse", "mutation")
MATRICES = ("k", "k-power", "k-closed", "partial", "psi", "psi-inv", "exp", "ktilde",
            "ktilde-power")


class UsageError(Exception):
    pass


def _kappa_vector(text, n):
    if text is None:
        return [mpq(0)] * (n - 1) + [mpq(1)]
    try:
        vec = [to_rational(part) for part in text.split(",")]
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad --kappa vector: {exc}") from None
    if len(vec) != n:
        raise UsageError(f"--kappa needs {n} components, got {len(vec)}")
    return vec


def _load_constants(path):
    with open(path) as fh:
        data = json.load(fh)
    return {(int(a), int(b), int(c)): v for a, b, c, v in data}


def build(algebra: str, n: int, D: int, kappa=None, constants=None):
    """Realization and target presentation for a named algebra."""
    if algebra == "so":
        return realize_so(n, D), so_presentation(n)
    if algebra == "lorentz":
        return realize_lorentz(n, D), lorentz_presentation(n)
    if algebra == "extended-so":
        return realize_extended(n, EUCLIDEAN, D), extended_presentation(n, EUCLIDEAN)
    if algebra == "extended-lorentz":
        return realize_extended(n, MINKOWSKI, D), extended_presentation(n, MINKOWSKI)
    if algebra == "poincare":
        return realize_poincare(n, D), poincare_presentation(n)
    if algebra == "extended-poincare":
        return realize_extended_poincare(n, D), extended_poincare_presentation(n)
    if algebra == "kappa":
        vec = _kappa_vector(kappa, n)
        return realize_kappa_closed(n, vec, D), kappa_presentation(vec)
    if algebra == "weyl-generic":
        if constants is not None:
            table = _load_constants(constants)
            return realize_weyl_series(table, D), constants_presentation(table)
        table = structure_constants_product(gamma_canonical(n))
        return (realize_weyl_series(table, D, "Ma"),
                constants_presentation(table, "Ma", "weyl-generic"))
    raise UsageError(f"unknown algebra {algebra!r}")


def _validate(args):
    if getattr(args, "n", 2) < 2:
        raise UsageError("--n must be at least 2")
    if getattr(args, "degree", 0) < 0:
        raise UsageError("--degree must be non-negative")
    algebra = getattr(args, "algebra", None)
    metric = getattr(args, "metric", None)
    if algebra and metric:
        implied = _IMPLIED_METRIC.get(algebra)
        if implied is None or implied != metric:
            raise UsageError(f"--metric {metric} does not apply to algebra {algebra}")
    if getattr(args, "kappa", None) is not None and algebra != "kappa":
        raise UsageError("--kappa only applies to --algebra kappa")


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _report_line(rep):
    status = "PASS" if rep.passed else "FAIL"
    return (f"{status} {rep.suite} n={rep.n} metric={rep.metric} D={rep.degree} "
            f"cmp={rep.cmp_degree} pairs={len(rep.pairs)} maxResidualTerms={rep.max_residual_terms}")


def cmd_verify(args) -> int:
    algebras = ALGEBRAS if args.all else (args.algebra,)
    reports = []
    for name in algebras:
        r, p = build(name, args.n, args.degree, args.kappa if name == "kappa" else None,
                     args.constants if name == "weyl-generic" else None)
        reports.append(check_bracket(r, p, jobs=args.jobs, suite=name))
    oracle_results = []
    if args.all:
        for name in ORACLES:
            oracle_results.append(run_oracle(name, args.n, args.degree, args.seed, args.metric))
    ok = all(r.passed for r in reports) and all(o["pass"] for o in oracle_results)
    if args.all:
        payload = {"reports": [r.to_json(not args.no_timing) for r in reports],
                   "oracles": oracle_results, "pass": ok}
    else:
        payload = reports[0].to_json(not args.no_timing)
    lines = [_report_line(r) for r in reports]
    lines += [f"{'PASS' if o['pass'] else 'FAIL'} oracle {o['oracle']} n={o['n']}" for o in oracle_results]
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_realize(args) -> int:
    r, _ = build(args.algebra, args.n, args.degree, args.kappa, args.constants)
    payload = r.to_json()
    lines = [f"# {r.algebra} n={r.n} degree={r.degree}"]
    lines += [f"{lab} = {r.values[lab]}" for lab in r.labels]
    _emit(args, payload, lines)
    return 0


def build_matrix(kind: str, n: int, metric: str, degree: int):
    g = make_metric(n, metric)
    if kind == "k":
        return k_matrix(n, g)
    if kind == "k-power":
        return k_matrix(n, g).power(degree)
    if kind == "k-closed":
        return closed_form_k_power(n, g, degree)
    if kind == "partial":
        return partial_matrix(n, g).power(degree)
    if kind == "psi":
        return psi_of(k_matrix(n, g), degree)
    if kind == "psi-inv":
        return psi_inv_of(k_matrix(n, g), degree)
    if kind == "exp":
        return exp_partial(n, g, degree)
    if kind == "ktilde":
        return ktilde(n, g)
    if kind == "ktilde-power":
        return ktilde_power(ktilde(n, g), degree)
    raise UsageError(f"unknown matrix kind {kind!r}")


def cmd_matrix(args) -> int:
    m = build_matrix(args.kind, args.n, args.metric or EUCLIDEAN, args.degree)
    payload = m.to_json()
    blocks = payload.items() if "A" in payload else [("matrix", payload)]
    lines = []
    for name, block in blocks:
        lines.append(f"# {name}: {block['rowSpace']} x {block['colSpace']} {block['metric']}")
        for e in block["entries"]:
            poly = " + ".join(f"{t['coeff']}*{t['mono']}" for t in e["poly"]) or "0"
            lines.append(f"{e['row']} {e['col']}: {poly}")
    _emit(args, payload, lines)
    return 0


def cmd_bernoulli(args) -> int:
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    fn = {"bernoulli": bernoulli, "psi": psi_coeff, "psi-inv": psi_inv_coeff}[args.series]
    value = format_rational(fn(args.k))
    _emit(args, {"series": args.series, "k": args.k, "value": value}, [value])
    return 0


def _random_rationals(rng, count):
    return [mpq(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(count)]


def run_oracle(name: str, n: int, degree: int, seed: int | None, metric: str | None) -> dict:
    rng = random.Random(seed if seed is not None else 0)
    metric = metric or EUCLIDEAN
    info: dict = {"oracle": name, "n": n}
    if name == "k-power":
        info["mMax"] = max(degree, 1)
        info["metric"] = metric
        ok = k_power_closed_form_check(n, info["mMax"], metric)
        if metric == MINKOWSKI:
            info["status"] = "conjectured extension"
    elif name == "partial-commutator":
        info["mMax"] = max(degree, 1)
        ok = partial_commutator_check(n, info["mMax"])
    elif name == "gamma":
        ok = gamma_transport(gamma_canonical(n), degree).values == realize_so(n, degree).values
        if n == 3:
            ok = ok and gamma_transport(gamma_epsilon(), degree).values == realize_so(3, degree).values
    elif name == "kappa":
        vec = [mpq(0)] * (n - 1) + [mpq(1, 5)]
        from .presentations import kappa_constants
        ok = realize_kappa_closed(n, vec, degree).values == \
            realize_weyl_series(kappa_constants(vec), degree, dim=n).values
    elif name == "weyl":
        g = gamma_epsilon() if n == 3 else gamma_canonical(n)
        k = _random_rationals(rng, g.N)
        info["k"] = [format_rational(v) for v in k]
        info["mMax"] = min(max(degree, 1), 3)
        ok = weyl_property_check(g, k, info["mMax"])
    elif name == "lambda-group":
        info["metric"] = metric
        ok = lambda_group_check(n, metric, degree)
    elif name == "jacobi":
        pres = [so_presentation(n), lorentz_presentation(n), extended_presentation(n, EUCLIDEAN),
                extended_presentation(n, MINKOWSKI), poincare_presentation(n),
                extended_poincare_presentation(n),
                kappa_presentation([mpq(0)] * (n - 1) + [mpq(1, 5)])]
        ok = all(jacobi_check(p) for p in pres)
    elif name == "block-power":
        kt = ktilde(n, metric if metric else MINKOWSKI)
        ok = all(ktilde_power(kt, m) == ktilde_power(kt, m - 1) @ kt for m in range(1, degree + 1))
    elif name == "psi-inverse":
        K = k_matrix(n, metric)
        prod = (psi_of(K, degree) @ psi_inv_of(K, degree)).truncate(degree)
        ok = prod == K.identity()
    elif name == "mutation":
        cases = [build(a, n, max(degree, 1)) for a in ("so", "extended-lorentz")]
        trials = mutation_trials(cases, 20, seed if seed is not None else 0)
        info["trials"] = len(trials)
        info["detected"] = sum(1 for *_, d in trials if d)
        ok = info["detected"] == info["trials"]
    else:
        raise UsageError(f"unknown oracle {name!r}")
    info["pass"] = bool(ok)
    return info


def cmd_oracle(args) -> int:
    info = run_oracle(args.name, args.n, args.degree, args.seed, args.metric)
    line = f"{'PASS' if info['pass'] else 'FAIL'} oracle {info['oracle']} n={info['n']}"
    _emit(args, info, [line])
    return 0 if info["pass"] else 1


def make_parser() -> argparse.ArgumentParser:
    # reports default to JSON; the series coefficient prints as a bare fraction
    parser = argparse.ArgumentParser(prog="heisreal", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, algebra=True):
        p.add_argument("--n", type=int, default=3)
        p.add_argument("--degree", type=int, default=4)
        p.add_argument("--metric", choices=(EUCLIDEAN, MINKOWSKI))
        p.add_argument("--format", choices=("text", "json"), default="json")
        p.add_argument("--seed", type=int)
        if algebra:
            p.add_argument("--algebra", choices=ALGEBRAS, default="so")
            p.add_argument("--kappa", help="comma-separated rationals, e.g. 0,0,1/5")
            p.add_argument("--constants", help="JSON list of [a, b, c, \"coeff\"] entries")

    p = sub.add_parser("verify", help="check the brackets of a realization")
    common(p)
    p.add_argument("--all", action="store_true", help="run every suite and oracle")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="omit elapsedMs for byte-stable output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("realize", help="print a truncated realization")
    common(p)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("matrix", help="print an operator matrix")
    common(p, algebra=False)
    p.add_argument("--kind", choices=MATRICES, default="k")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("bernoulli", help="print a series coefficient")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--series", choices=("bernoulli", "psi", "psi-inv"), default="bernoulli")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_bernoulli)

    p = sub.add_parser("oracle", help="run one independent identity check")
    common(p, algebra=False)
    p.add_argument("--name", choices=ORACLES, required=True)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"heisreal: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
