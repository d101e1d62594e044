"""Command-line interface: build families, verify claims, emit certificates.

Commands: primes, build, verify {pn|zs|leinert|qi}, norms, report,
witness-weak-sidon.  Exit codes: 0 all claims verified, 2 claim violated
(with witness), 3 budget refusal, 4 I/O or format error.  Verification always
recomputes from the stored exponents; cached construction data is ignored.
"""

from __future__ import annotations

import argparse
import datetime
import math
import sys
from typing import Optional, Sequence

from . import __version__
from .builder import (
    FactorSubset,
    PROFILES,
    build_family,
    verify_pn_bruteforce,
)
from .certificates import (
    CertificateFile,
    CertificateFormatError,
    RunConfig,
    family_from_payload,
    family_to_payload,
    fmt_complex,
    fmt_float,
    make_provenance,
    read_certificate,
    write_certificate,
)
from .counting import (
    STRATEGY_MITM,
    STRATEGY_NAIVE,
    extract_quasi_independent,
    leinert_violation,
    z_value,
    zs_paper_target,
)
from .errors import BudgetExceeded
from .primes import FactorTable, smallest_admissible_prime
from .spectral import (
    density_lower_bound,
    fejer_coefficient,
    fejer_kernel,
    kernel_norm_check,
    leinert_lower_bound,
    transform,
    weak_sidon_witness,
)
from .words import canonical_key

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_BUDGET = 3
EXIT_IO = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit(2); keep 2 for violations
        raise _UsageError(message)


def _provenance(args, parameters: dict, seed: Optional[int] = None) -> dict:
    timestamp = None
    if getattr(args, "stamp", False):
        timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return make_provenance(__version__, parameters, seed=seed, timestamp=timestamp)


def _write_if_requested(args, cert: CertificateFile) -> None:
    if getattr(args, "out", None):
        write_certificate(args.out, cert)
        print(f"certificate written: {args.out}")


def _load_family(path: str):
    cert = read_certificate(path)
    if cert.kind != "family":
        raise CertificateFormatError(f"expected a family certificate, got kind {cert.kind!r}")
    return family_from_payload(cert.payload)


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        s=args.s,
        n_min=getattr(args, "n_min", None),
        n_max=getattr(args, "n_max", None),
        profile=getattr(args, "profile", "desk"),
        seed=getattr(args, "seed", None),
        tuple_budget=getattr(args, "budget_tuples", 2_000_000),
        subset_budget_bits=getattr(args, "budget_subsets", 22),
        tolerance=getattr(args, "tolerance", 1e-9),
    )


# ---------------------------------------------------------------- primes


def cmd_primes(args) -> int:
    print(f"{'n':>3} {'2^(n+1)':>20} {'p_n':>20}")
    for n in range(1, args.n_max + 1):
        p = smallest_admissible_prime(n)
        print(f"{n:>3} {2 ** (n + 1):>20} {p:>20}")
    return EXIT_OK


# ---------------------------------------------------------------- build


def cmd_build(args) -> int:
    config = _config_from_args(args)
    n_range = config.resolved_range()
    family = build_family(config.s, n_range, config.profile, seed=config.seed)
    feasible = [r for r in family.results if r.feasible]
    for result in family.results:
        cert = result.certificate
        status = "ok" if result.feasible else "INFEASIBLE"
        print(
            f"n={cert.n:>3} p={cert.p:>8} target={cert.target_size:>3} "
            f"achieved={cert.achieved_size:>3} pool=[1,{cert.pool_bound}] {status}"
        )
    print(
        f"built {len(feasible)}/{len(family.results)} targets; "
        f"n_feasible={family.n_feasible}"
    )
    cert = CertificateFile(
        kind="family",
        payload=family_to_payload(family),
        provenance=_provenance(args, config.provenance_parameters(), seed=config.seed),
    )
    out = args.out or "family.json"
    write_certificate(out, cert)
    print(f"family written: {out}")
    if not family.results or len(feasible) < len(family.results):
        return EXIT_VIOLATION
    return EXIT_OK


# ---------------------------------------------------------------- verify


def _verify_pn(family, args) -> tuple[int, dict]:
    claims = []
    holds = True
    for result in family.results:
        ok, witness = verify_pn_bruteforce(result.subset, family.s, args.budget_tuples)
        record = {
            "exponents": list(result.subset.exponents),
            "holds": ok,
            "n": result.certificate.n,
            "p": result.certificate.p,
        }
        if witness is not None:
            record["violating_epsilon"] = list(witness.entries)
            holds = False
        claims.append(record)
        state = "ok" if ok else f"VIOLATED by epsilon={list(witness.entries)}"
        print(f"pn n={result.certificate.n}: {state}")
    return (EXIT_OK if holds else EXIT_VIOLATION), {
        "claims": claims,
        "holds": holds,
        "s": family.s,
    }


def _verify_zs(family, args) -> tuple[int, dict]:
    elements = family.union_words()
    s = family.s
    bound_half, bound_factorial = zs_paper_target(s)
    strategy = args.strategy
    if strategy == "auto":
        naive_cost = math.perm(len(elements), s)
        strategy = STRATEGY_NAIVE if naive_cost <= min(args.budget_tuples, 250_000) else STRATEGY_MITM
    cert = z_value(elements, s, budget=args.budget_tuples, strategy=strategy)
    holds = cert.value <= bound_half
    print(
        f"zs: Z_{s} = {cert.value} over {cert.ground_size} elements "
        f"({cert.strategy}, {cert.tuples_examined} tuples examined); "
        f"bounds ((s/2)!)^2 = {bound_half}, s! = {bound_factorial}: "
        f"{'ok' if holds else 'VIOLATED'}"
    )
    payload = {
        "bound_factorial": bound_factorial,
        "bound_half_square": bound_half,
        "ground_size": cert.ground_size,
        "holds": holds,
        "s": s,
        "strategy": cert.strategy,
        "tuples_examined": cert.tuples_examined,
        "value": cert.value,
        "witness_key": canonical_key(cert.witness).hex() if cert.witness else None,
    }
    return (EXIT_OK if holds else EXIT_VIOLATION), payload


def _witness_payload(witness) -> list[list[int]]:
    out = []
    for word in witness.elements:
        out.append([[l.factor, l.exp] for l in word.letters])
    return out


def _verify_leinert(family, args, adhoc_subset: Optional[FactorSubset]) -> tuple[int, dict]:
    s = args.s if adhoc_subset is not None else family.s
    searched = []
    first_witness = None
    if adhoc_subset is not None:
        table = FactorTable.explicit([adhoc_subset.order])
        words = adhoc_subset.words(table)
        first_witness = leinert_violation(words, s, budget=args.budget_tuples)
        searched.append({"exponents": list(adhoc_subset.exponents), "n": 1})
    else:
        for result in family.results:
            words = result.subset.words(family.table)
            witness = leinert_violation(words, s, budget=args.budget_tuples)
            searched.append(
                {"exponents": list(result.subset.exponents), "n": result.certificate.n}
            )
            if witness is not None:
                first_witness = witness
                break
    holds = first_witness is None
    if holds:
        print(f"leinert: no 2s={2 * s} violation found (exhaustive)")
    else:
        exps = [
            "*".join(f"a_{l.factor}^{l.exp}" for l in w.letters) for w in first_witness.elements
        ]
        print(f"leinert: VIOLATION ({', '.join(exps)})")
    payload = {
        "holds": holds,
        "s": s,
        "searched": searched,
        "witness": _witness_payload(first_witness) if first_witness else None,
    }
    return (EXIT_OK if holds else EXIT_VIOLATION), payload


def _verify_qi(family, args) -> tuple[int, dict]:
    rows = []
    holds = True
    for result in family.results:
        if not result.subset.exponents:
            continue
        witness = extract_quasi_independent(result.subset, args.budget_subsets)
        parent_size = len(result.subset.exponents)
        floor_bound = math.ceil(math.log(parent_size, 3)) if parent_size > 1 else 0
        ok = witness.maximal and len(witness.subset) >= floor_bound
        holds = holds and ok
        rows.append(
            {
                "extracted": list(witness.subset),
                "floor_bound": floor_bound,
                "maximal": witness.maximal,
                "n": result.certificate.n,
                "ok": ok,
                "parent_size": parent_size,
                "table_digest": witness.table_digest,
            }
        )
        print(
            f"qi n={result.certificate.n}: |F|={len(witness.subset)} >= {floor_bound} "
            f"maximal={witness.maximal} {'ok' if ok else 'VIOLATED'}"
        )
    return (EXIT_OK if holds else EXIT_VIOLATION), {"factors": rows, "holds": holds}


def cmd_verify(args) -> int:
    adhoc_subset = None
    family = None
    if args.exponents is not None or args.order is not None:
        if args.kind != "leinert":
            raise _UsageError("--exponents/--order are only supported for `verify leinert`")
        if args.exponents is None or args.order is None:
            raise _UsageError("--exponents and --order must be given together")
        exponents = tuple(sorted(int(x) for x in args.exponents.split(",")))
        adhoc_subset = FactorSubset(factor=1, order=args.order, exponents=exponents)
    else:
        if args.family is None:
            raise _UsageError("a family file is required (or --exponents/--order for leinert)")
        family = _load_family(args.family)

    if args.kind == "pn":
        code, payload = _verify_pn(family, args)
    elif args.kind == "zs":
        code, payload = _verify_zs(family, args)
    elif args.kind == "leinert":
        code, payload = _verify_leinert(family, args, adhoc_subset)
    elif args.kind == "qi":
        code, payload = _verify_qi(family, args)
    else:  # pragma: no cover - argparse restricts choices
        raise _UsageError(f"unknown verify kind {args.kind!r}")

    parameters = {
        "budget_subsets": args.budget_subsets,
        "budget_tuples": args.budget_tuples,
        "kind": args.kind,
        "source": args.family or "adhoc",
    }
    cert = CertificateFile(
        kind=args.kind,
        payload=payload,
        provenance=_provenance(args, parameters),
    )
    _write_if_requested(args, cert)
    return code


# ---------------------------------------------------------------- norms


def kernel_order(scale: int) -> int:
    """Smallest order from the default prime rule exceeding 4 * scale."""
    i = 1
    while True:
        p = smallest_admissible_prime(i)
        if p > 4 * scale:
            return p
        i += 1


def cmd_norms(args) -> int:
    q_grid = [float(q) for q in args.q.split(",")] if args.q else [3.0, 4.0, 6.0, 10.0]
    scales = [args.scale] if args.scale else list(range(1, args.n_max + 1))
    all_ok = True
    kernels = []
    for n in scales:
        p = kernel_order(n)
        checks = []
        qs = sorted(set(q_grid + [float(2 * n)]))
        for q in qs:
            check = kernel_norm_check(n, p, q, tolerance=args.tolerance)
            checks.append(check)
            all_ok = all_ok and check.passed
        floor_ok = all(fejer_coefficient(n, j) >= 0.5 for j in range(1, n + 1))
        all_ok = all_ok and floor_ok
        head = checks[0]
        spectrum_values = None
        if p <= 1024:
            report = transform(fejer_kernel(n, p))
            spectrum_values = [fmt_complex(z) for z in report.spectrum]
        print(
            f"scale n={n:>2} p={p:>5} ||K||_A={head.norm_a:.17g} "
            f"||K||_VN={head.norm_vn:.17g} floor>=1/2 on 1..n: {floor_ok}"
        )
        for check in checks:
            print(
                f"    q={check.q:<6g} ||K||_q' = {check.norm_lq_prime:.17g} <= "
                f"{check.interpolation_bound:.17g} <= (4n+1)^(1/q) = "
                f"{check.kernel_bound:.17g}  "
                f"{'ok' if check.passed else 'FAILED'}"
            )
        kernels.append(
            {
                "checks": [
                    {
                        "interpolation_bound": fmt_float(c.interpolation_bound),
                        "interpolation_holds": c.interpolation_holds,
                        "kernel_bound": fmt_float(c.kernel_bound),
                        "kernel_bound_holds": c.kernel_bound_holds,
                        "norm_lq_prime": fmt_float(c.norm_lq_prime),
                        "q": fmt_float(c.q),
                        "q_prime": fmt_float(c.q_prime),
                    }
                    for c in checks
                ],
                "floor_half_holds": floor_ok,
                "n": n,
                "norm_a": fmt_float(head.norm_a),
                "norm_vn": fmt_float(head.norm_vn),
                "p": p,
                "spectrum": spectrum_values,
            }
        )
    payload = {"kernels": kernels, "tolerance": fmt_float(args.tolerance)}
    cert = CertificateFile(
        kind="spectrum",
        payload=payload,
        provenance=_provenance(args, {"q": args.q or "3,4,6,10", "scales": scales}),
    )
    _write_if_requested(args, cert)
    return EXIT_OK if all_ok else EXIT_VIOLATION


# ---------------------------------------------------------------- report


def cmd_report(args) -> int:
    family = _load_family(args.family)
    sections: dict[str, dict] = {}
    violated = False
    empty = not family.results

    print(f"=== family report: s={family.s} profile={family.profile} ===")

    rows = []
    for result in family.results:
        cert = result.certificate
        rows.append(
            {
                "achieved": cert.achieved_size,
                "feasible": result.feasible,
                "n": cert.n,
                "p": cert.p,
                "target": cert.target_size,
            }
        )
        print(
            f"  n={cert.n:>3} p={cert.p:>8} |E_n|={cert.achieved_size:>3}"
            f"/{cert.target_size:<3} {'ok' if result.feasible else 'infeasible'}"
        )
    sections["construction"] = {
        "n_feasible": family.n_feasible,
        "rows": rows,
        "status": "unverified (empty family)" if empty else "recorded",
    }

    # tuple-count bound, recomputed fresh
    if empty:
        sections["zs"] = {"status": "unverified (empty family)"}
        print("  zs: unverified (empty family)")
    else:
        try:
            elements = family.union_words()
            bound_half, bound_factorial = zs_paper_target(family.s)
            naive_cost = math.perm(len(elements), family.s)
            strategy = (
                STRATEGY_NAIVE
                if naive_cost <= min(args.budget_tuples, 250_000)
                else STRATEGY_MITM
            )
            zcert = z_value(elements, family.s, budget=args.budget_tuples, strategy=strategy)
            ok = zcert.value <= bound_half
            violated = violated or not ok
            sections["zs"] = {
                "bound_factorial": bound_factorial,
                "bound_half_square": bound_half,
                "holds": ok,
                "status": "verified",
                "strategy": zcert.strategy,
                "value": zcert.value,
            }
            print(
                f"  zs: Z_{family.s} = {zcert.value} <= {bound_half} "
                f"[verified, {zcert.strategy}]"
            )
        except BudgetExceeded as exc:
            sections["zs"] = {"status": f"unverified (budget: {exc})"}
            print(f"  zs: unverified (budget: {exc})")

    # quasi-independent extraction and operator-norm lower bounds
    if empty:
        sections["qi"] = {"status": "unverified (empty family)"}
        sections["density"] = {"status": "unverified (empty family)"}
        print("  qi: unverified (empty family)")
        print("  density: unverified (empty family)")
    else:
        qi_rows = []
        density_rows = []
        for result in family.results:
            if not result.subset.exponents:
                continue
            n = result.certificate.n
            witness = extract_quasi_independent(result.subset, args.budget_subsets)
            qi_subset = FactorSubset(
                factor=result.subset.factor,
                order=result.subset.order,
                exponents=witness.subset,
            )
            lower = leinert_lower_bound(qi_subset)
            parent_size = len(result.subset.exponents)
            floor_bound = math.ceil(math.log(parent_size, 3)) if parent_size > 1 else 0
            ok = witness.maximal and len(witness.subset) >= floor_bound
            violated = violated or not ok
            qi_rows.append(
                {
                    "extracted_size": len(witness.subset),
                    "floor_bound": floor_bound,
                    "leinert_lower_bound": fmt_float(lower),
                    "maximal": witness.maximal,
                    "n": n,
                    "parent_size": parent_size,
                }
            )
            q = float(2 * n)
            dens = density_lower_bound(result.subset, n, q)
            density_rows.append({"n": n, "q": fmt_float(q), "window": n, "bound": fmt_float(dens)})
            print(
                f"  qi n={n}: |F|={len(witness.subset)} >= {floor_bound}, "
                f"leinert constant >= {lower:.17g} [verified]"
            )
        sections["qi"] = {"rows": qi_rows, "status": "verified"}
        sections["density"] = {"rows": density_rows, "status": "verified"}
        for row in density_rows:
            print(
                f"  density n={row['n']}: Lambda({row['q']}) constant >= {row['bound']} "
                f"[verified]"
            )

    ws_rows = []
    for c in (1, 2, 4):
        witness = weak_sidon_witness(c)
        violated = violated or not witness.holds
        ws_rows.append(
            {
                "c": c,
                "holds": witness.holds,
                "lhs_n_squared": witness.lhs,
                "n": witness.n,
                "rhs": str(witness.rhs),
            }
        )
        print(
            f"  weak-sidon C={c}: first failing scale n={witness.n}, "
            f"{witness.lhs} > {witness.rhs} [verified]"
        )
    sections["weak_sidon"] = {"rows": ws_rows, "status": "verified"}

    sections["conclusions"] = {
        "status": "asserted-by-theory",
        "statements": [
            "a finite tuple-count bound at every even order makes the union a "
            "completely bounded Lambda(p) set for all finite p (standard criterion)",
            "unbounded quasi-independent subsets are incompatible with a finite "
            "Leinert constant, so the full family is not a Leinert set",
            "the density lower bound grows without bound along the family, so no "
            "single weak-Sidon constant can serve the whole family",
        ],
    }
    for statement in sections["conclusions"]["statements"]:
        print(f"  theory: {statement}")

    cert = CertificateFile(
        kind="report",
        payload={"sections": sections},
        provenance=_provenance(args, {"source": args.family}),
    )
    _write_if_requested(args, cert)
    return EXIT_VIOLATION if violated else EXIT_OK


# ---------------------------------------------------------------- weak sidon


def cmd_witness_weak_sidon(args) -> int:
    rows = []
    for raw in args.constants:
        witness = weak_sidon_witness(raw)
        rows.append(
            {
                "c": str(witness.c),
                "holds": witness.holds,
                "lhs_n_squared": witness.lhs,
                "n": witness.n,
                "rhs_40c2n": str(witness.rhs),
            }
        )
        print(
            f"C={witness.c}: n={witness.n}, n^2 = {witness.lhs} > 40 C^2 n = {witness.rhs} "
            f"{'ok' if witness.holds else 'FAILED'}"
        )
    cert = CertificateFile(
        kind="report",
        payload={"weak_sidon": rows},
        provenance=_provenance(args, {"constants": list(args.constants)}),
    )
    _write_if_requested(args, cert)
    return EXIT_OK if all(r["holds"] for r in rows) else EXIT_VIOLATION


# ---------------------------------------------------------------- parser


def build_parser() -> _Parser:
    parser = _Parser(prog="freelac", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_primes = sub.add_parser("primes", help="print the factor-order prime table")
    p_primes.add_argument("n_max", type=int)
    p_primes.set_defaults(func=cmd_primes)

    p_build = sub.add_parser("build", help="build a family and write its certificate")
    p_build.add_argument("--s", type=int, default=2)
    p_build.add_argument("--n-min", type=int, default=None)
    p_build.add_argument("--n-max", type=int, default=None)
    p_build.add_argument("--profile", choices=sorted(PROFILES), default="desk")
    p_build.add_argument("--seed", type=int, default=None)
    p_build.add_argument("--out", default=None)
    p_build.add_argument("--stamp", action="store_true", help="record a wall-clock timestamp")
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="re-verify a claim from a family file")
    p_verify.add_argument("kind", choices=("pn", "zs", "leinert", "qi"))
    p_verify.add_argument("family", nargs="?", default=None)
    p_verify.add_argument("--s", type=int, default=2)
    p_verify.add_argument("--exponents", default=None, help="ad-hoc set, e.g. 1,2,3,4 (leinert)")
    p_verify.add_argument("--order", type=int, default=None, help="cyclic order for --exponents")
    p_verify.add_argument("--strategy", choices=("auto", STRATEGY_NAIVE, STRATEGY_MITM), default="auto")
    p_verify.add_argument("--budget-tuples", type=int, default=2_000_000)
    p_verify.add_argument("--budget-subsets", type=int, default=22)
    p_verify.add_argument("--out", default=None)
    p_verify.add_argument("--stamp", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_norms = sub.add_parser("norms", help="kernel norms and interpolation checks")
    p_norms.add_argument("--scale", type=int, default=None)
    p_norms.add_argument("--n-max", type=int, default=8)
    p_norms.add_argument("--q", default=None, help="comma-separated q grid (default 3,4,6,10)")
    p_norms.add_argument("--tolerance", type=float, default=1e-9)
    p_norms.add_argument("--out", default=None)
    p_norms.add_argument("--stamp", action="store_true")
    p_norms.set_defaults(func=cmd_norms)

    p_report = sub.add_parser("report", help="end-to-end narrative for a family file")
    p_report.add_argument("family")
    p_report.add_argument("--budget-tuples", type=int, default=2_000_000)
    p_report.add_argument("--budget-subsets", type=int, default=22)
    p_report.add_argument("--out", default=None)
    p_report.add_argument("--stamp", action="store_true")
    p_report.set_defaults(func=cmd_report)

    p_ws = sub.add_parser("witness-weak-sidon", help="integer witnesses against weak-Sidon constants")
    p_ws.add_argument("constants", nargs="+", help="constants C (decimal strings stay exact)")
    p_ws.add_argument("--out", default=None)
    p_ws.add_argument("--stamp", action="store_true")
    p_ws.set_defaults(func=cmd_witness_weak_sidon)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BudgetExceeded as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CertificateFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, OverflowError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_IO


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
