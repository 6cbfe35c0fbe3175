"""Command-line front end.

    ruellezeta verify --input systems.json [--report out.json] [--format json|md]
    ruellezeta regdet-suite [--tolerance 1e-9]

Exit codes: 0 when every requested check passes, 1 when a clause or numeric
check fails, 2 on unreadable or inadmissible input.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from .documents import dump_json, load_document, parse_document
from .errors import RuelleZetaError
from .regdet import (
    Spectrum,
    check_theta_delta_identity,
    check_theta_delta_lattice,
    regdet,
    spectral_zeta_prime_at_zero,
    zeta_from_regdets,
)
from .report import CLAUSES, build_report, render_markdown, system_passes, verify_system

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

CORPUS_FILES = ("circle.json", "j_rotation.json", "anosov.json", "order5_symplectic.json",
                "seeded_random.json", "unipotent.json")


def corpus_documents() -> list[dict]:
    base = resources.files("ruellezeta") / "data" / "corpus"
    return [json.loads((base / name).read_text(encoding="utf-8")) for name in CORPUS_FILES]


def _verify_one(args):
    desc, max_period, series_order = args
    return verify_system(desc, max_period=max_period, series_order=series_order)


def run_verify(systems, *, max_period=None, series_order=None, clauses=CLAUSES,
               jobs: int = 1) -> tuple[dict, int]:
    for s in systems:
        s.build()  # surfaces ValidationError before any work
    work = [(s, max_period, series_order) for s in systems]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_one, work))
    else:
        results = [_verify_one(w) for w in work]
    report = build_report(results, clauses)
    ok = all(system_passes(r, clauses) for r in results)
    return report, EXIT_OK if ok else EXIT_FAIL


def _row(name, value, expected, bound, tolerance):
    diff = abs(complex(value) - complex(expected))
    return {
        "check": name,
        "value": _fmt(value),
        "expected": _fmt(expected),
        "error_bound": f"{bound:.3e}",
        "difference": f"{diff:.3e}",
        "tolerance": f"{tolerance:.0e}",
        "status": "pass" if diff <= tolerance else "fail",
    }


def _fmt(x) -> str:
    z = complex(x)
    if z.imag == 0:
        return f"{z.real:.15f}"
    return f"{z.real:.15f}{z.imag:+.15f}i"


def regdet_suite(tolerance: float = 1e-9, seed: int = 20240601) -> list[dict]:
    rows = []
    fine = min(tolerance, 1e-12)
    # finite spectra, closed forms
    for name, spec, expected in (
        ("finite {1}: zeta'(0)", Spectrum.finite([1]), 0.0),
        ("finite {e}: zeta'(0)", Spectrum.finite([math.e]), -1.0),
        ("finite {+-2 pi i}: zeta'(0)", Spectrum.finite([2j * math.pi, -2j * math.pi]),
         -2 * math.log(2 * math.pi)),
    ):
        v = spectral_zeta_prime_at_zero(spec)
        rows.append(_row(name, v.value, expected, v.error_bound, fine))
    v = regdet(Spectrum.finite([2]))
    rows.append(_row("finite {2}: regdet", v.value, 2.0, v.error_bound, fine))
    v = regdet(Spectrum.finite([-2, 3j, -1j]))
    rows.append(_row("finite {-2, 3i, -i}: regdet", v.value, -2 * 3j * -1j, v.error_bound, fine))

    # lattice identity det(s - theta) = 1 - exp(-s ell)
    for ell_name, ell in (("log 2", math.log(2)), ("log 3", math.log(3)), ("1", 1.0)):
        for s in (0.5, 1.0, 2.0, 3.7):
            v = regdet(Spectrum.lattice(ell), s)
            rows.append(_row(f"lattice l={ell_name}, s={s}: regdet",
                             v.value, -math.expm1(-s * ell), v.error_bound, tolerance))
    v = regdet(Spectrum.lattice(1.0), 0.3 + 40j)
    rows.append(_row("lattice l=1, s=0.3+40i: regdet", v.value,
                     1 - cmath.exp(-(0.3 + 40j)), v.error_bound, tolerance))

    # theta / Delta_0 identity
    for mu in ([2 * math.pi], [1.0], [1.0, 2.0, 3.0]):
        chk = check_theta_delta_identity(mu)
        rows.append(_row(f"theta/Delta_0 mu={_mu(mu)}", chk.lhs.value, chk.rhs.value,
                         chk.lhs.error_bound + chk.rhs.error_bound, min(tolerance, 1e-10)))
    rng = random.Random(seed)
    worst = None
    for _ in range(50):
        mu = [rng.uniform(0.05, 20.0) for _ in range(rng.randint(1, 10))]
        chk = check_theta_delta_identity(mu)
        if worst is None or chk.difference > worst.difference:
            worst = chk
    rows.append(_row("theta/Delta_0, worst of 50 random mu", worst.lhs.value, worst.rhs.value,
                     worst.lhs.error_bound + worst.rhs.error_bound, min(tolerance, 1e-10)))
    for ell in (math.log(2), 1.0, 5.0):
        chk = check_theta_delta_lattice(ell)
        rows.append(_row(f"theta/Delta_0 lattice l={ell:.6f}", chk.lhs.value, chk.rhs.value,
                         chk.lhs.error_bound + chk.rhs.error_bound, min(tolerance, 1e-10)))
        rows.append(_row(f"lattice l={ell:.6f}: zeta'(0) = -log l", chk.lhs.value,
                         -math.log(ell), chk.lhs.error_bound, tolerance))

    # zeta of the J-rotation suspension rebuilt from regularized determinants
    t = 0.5  # s = 1, ell = log 2
    v = zeta_from_regdets([[1], [1j, -1j], [1]], math.log(2), 1.0)
    rows.append(_row("J-rotation zeta(1) from regdets", v.value,
                     (1 + t * t) / (1 - t) ** 2, v.error_bound, tolerance))
    return rows


def _mu(mu) -> str:
    return "{" + ", ".join(f"{m:g}" for m in mu) + "}"


def render_suite(rows: list[dict]) -> str:
    cols = ("check", "value", "expected", "error_bound", "difference", "status")
    widths = [max(len(c), *(len(r[c]) for r in rows)) for c in cols]
    out = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    out.append("  ".join("-" * w for w in widths))
    for r in rows:
        out.append("  ".join(r[c].ljust(w) for c, w in zip(cols, widths)).rstrip())
    failed = sum(r["status"] != "pass" for r in rows)
    out.append(f"{len(rows) - failed}/{len(rows)} checks passed")
    return "\n".join(out) + "\n"


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _clauses(text: str) -> tuple[str, ...]:
    picked = tuple(c for c in CLAUSES if c in text.lower())
    if not picked or set(text.lower()) - set(CLAUSES) - {",", " "}:
        raise argparse.ArgumentTypeError("clauses are a subset of 'abc'")
    return picked


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ruellezeta", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="exact verification of order and leading coefficient")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="system description JSON (single or {'systems': [...]})")
    src.add_argument("--corpus", action="store_true", help="verify the bundled example corpus")
    v.add_argument("--max-period", type=_positive_int, default=None,
                   help="periods for the orbit census (default 12)")
    v.add_argument("--series-order", type=_positive_int, default=None,
                   help="order of the series comparisons (default 20)")
    v.add_argument("--report", help="write the report here instead of stdout")
    v.add_argument("--format", choices=("json", "md"), default="json")
    v.add_argument("--clauses", type=_clauses, default=CLAUSES,
                   help="clauses that decide the exit code (default abc)")
    v.add_argument("--jobs", type=_positive_int, default=1,
                   help="verify independent systems in parallel processes")

    r = sub.add_parser("regdet-suite", help="numeric checks of regularized determinants")
    r.add_argument("--tolerance", type=float, default=1e-9)
    r.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "regdet-suite":
        if not (args.tolerance > 0 and math.isfinite(args.tolerance)):
            print("error: tolerance must be positive", file=sys.stderr)
            return EXIT_INPUT
        rows = regdet_suite(args.tolerance)
        text = dump_json({"checks": rows}) if args.format == "json" else render_suite(rows)
        sys.stdout.write(text)
        return EXIT_OK if all(r["status"] == "pass" for r in rows) else EXIT_FAIL

    try:
        if args.corpus:
            systems = [s for d in corpus_documents() for s in parse_document(d)]
        else:
            systems = load_document(args.input)
        report, code = run_verify(systems, max_period=args.max_period,
                                  series_order=args.series_order, clauses=args.clauses,
                                  jobs=args.jobs)
    except RuelleZetaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dump_json(report) if args.format == "json" else render_markdown(report)
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
