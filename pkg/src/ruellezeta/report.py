"""Verification reports for suspension systems, as JSON-ready dicts or Markdown."""

from __future__ import annotations

from fractions import Fraction

from . import __version__
from .complex_det import LogMonomial
from .documents import SystemDescription, encode_int, encode_log_monomial, encode_rational
from .errors import DegenerateOrbits, SignInstability
from .mapping_torus import GradedEndo, check_semisimple_at_one, period_group, suspension_cohomology
from .ruelle_zeta import (
    euler_product_series,
    lefschetz_series,
    order_and_leading,
    orbit_census,
    verify_zeta_identity,
    zeta_det_form,
)

CLAUSES = ("a", "b", "c")
DEFAULT_MAX_PERIOD = 12
DEFAULT_SERIES_ORDER = 20


def _compare_series(name: str, got, expected) -> dict:
    n = min(len(got), len(expected)) - 1
    first = next((k for k in range(n + 1) if Fraction(got[k]) != expected[k]), None)
    return {
        "method": name,
        "status": "agree" if first is None else "mismatch",
        "agree_to_order": n if first is None else first - 1,
        "compared_to_order": n,
        "comparison": "exact",
    }


def _euler_check(e: GradedEndo, max_period: int, expected) -> dict:
    if e.torus_matrix is None:
        return {"method": "euler_product", "status": "not_applicable",
                "reason": "orbit census needs a torus matrix"}
    order = min(max_period, len(expected) - 1)
    try:
        census = orbit_census(e.torus_matrix, order)
        series = euler_product_series(census, order)
    except DegenerateOrbits as exc:
        return {"method": "euler_product", "status": "skipped",
                "reason": f"degenerate orbits at period {exc.period}"}
    except SignInstability as exc:
        return {"method": "euler_product", "status": "skipped",
                "reason": f"orbit sign changes between periods {exc.period} and {exc.multiple}"}
    out = _compare_series("euler_product", series, expected)
    out["primitive_orbits"] = [encode_int(c) for c in census.primitive_counts]
    return out


def _clause(status: str, **fields) -> dict:
    return {"status": status, **fields, "comparison": "exact"}


def verify_system(desc: SystemDescription, *, max_period: int | None = None,
                  series_order: int | None = None) -> dict:
    """Run the whole pipeline on one system.

    Explicit arguments win over the document's options, which win over the
    defaults.
    """
    max_period = max_period or desc.options.get("max_period", DEFAULT_MAX_PERIOD)
    series_order = series_order or desc.options.get("series_order", DEFAULT_SERIES_ORDER)
    e = desc.build()
    ell = e.ell
    coh = suspension_cohomology(e)
    zeta = zeta_det_form(e)
    det_series = zeta.series(series_order)
    rep = verify_zeta_identity(e, allow_cyclic=True)
    lead = order_and_leading(zeta)
    rank, gen = period_group(coh)

    cohomology = [
        {
            "degree": d.degree,
            "rank": d.rank,
            "torsion": [encode_int(t) for t in d.torsion],
            "group": str(d.group),
        }
        for d in coh.degrees
    ]
    if rep.acyclic:
        a = _clause("pass", acyclic=True)
        b = _clause("pass" if rep.b_pass else "fail", lhs=rep.order_lhs, rhs=rep.order_rhs)
        c = _clause(
            "pass" if rep.c_pass else "fail",
            lhs=encode_log_monomial(abs(rep.leading_lhs), ell),
            rhs=encode_log_monomial(rep.leading_rhs, ell),
            sign=rep.sign,
        )
    else:
        a = _clause("fail", acyclic=False,
                    reason="the psi-cup complex is not acyclic; A is not semisimple at 1")
        b = _clause("skipped", lhs=rep.order_lhs, rhs=rep.order_rhs)
        c = _clause("skipped", lhs=encode_log_monomial(abs(lead.value), ell), rhs=None,
                    sign=rep.sign)
    return {
        "name": desc.name,
        "mode": e.mode,
        "ell": ell.to_json(),
        "betti": list(e.betti),
        "semisimple_at_one": check_semisimple_at_one(e),
        "cohomology": cohomology,
        "period_group": {"rank": rank, "generator": encode_log_monomial(gen, ell)},
        "zeta": {
            "variable": "t = exp(-s*ell)",
            "numerator": [encode_int(x) for x in zeta.numerator.coeffs],
            "denominator": [encode_int(x) for x in zeta.denominator.coeffs],
            "display": str(zeta),
            "order_at_zero": lead.order,
            "leading": encode_log_monomial(lead.value, ell),
        },
        "series": {
            "order": series_order,
            "det_form": [encode_rational(x) for x in det_series],
            "checks": [
                _compare_series("lefschetz", lefschetz_series(e, series_order), det_series),
                _euler_check(e, max_period, det_series),
            ],
        },
        "clauses": {"a": a, "b": b, "c": c},
    }


def system_passes(sys_report: dict, clauses=CLAUSES) -> bool:
    return all(sys_report["clauses"][k]["status"] == "pass" for k in clauses)


def build_report(systems: list[dict], clauses=CLAUSES) -> dict:
    passed = [s["name"] for s in systems if system_passes(s, clauses)]
    return {
        "tool": "ruellezeta",
        "version": __version__,
        "requested_clauses": list(clauses),
        "systems": systems,
        "summary": {
            "systems": len(systems),
            "passed": len(passed),
            "failed": [s["name"] for s in systems if s["name"] not in passed],
        },
    }


def _lm(x: dict | None) -> str:
    if x is None:
        return "n/a"
    c = x["coeff"]
    coeff = c["num"] if c["den"] == "1" else f"{c['num']}/{c['den']}"
    p = x["ell_pow"]
    return coeff if p == 0 else f"{coeff}*l^{p}"


def _ell_name(e: dict) -> str:
    return f"log {e['log_of']}" if "log_of" in e else e["value"]


def render_markdown(report: dict) -> str:
    lines = [f"# ruellezeta verification report (v{report['version']})", ""]
    s = report["summary"]
    lines += [f"Systems: {s['systems']}, passed: {s['passed']}", ""]
    for sys in report["systems"]:
        lines += [f"## {sys['name']}", "",
                  f"- mode: {sys['mode']}, l = {_ell_name(sys['ell'])}, Betti numbers {sys['betti']}",
                  f"- semisimple at 1: {'yes' if sys['semisimple_at_one'] else 'no'}",
                  f"- zeta function in t = exp(-s l): `{sys['zeta']['display']}`",
                  f"- order at s = 0: {sys['zeta']['order_at_zero']}, "
                  f"leading coefficient {_lm(sys['zeta']['leading'])}",
                  f"- period group: rank {sys['period_group']['rank']}, "
                  f"generator {_lm(sys['period_group']['generator'])}", "",
                  "| degree | rank | torsion | group |", "|---|---|---|---|"]
        for d in sys["cohomology"]:
            tors = ", ".join(d["torsion"]) or "-"
            lines.append(f"| {d['degree']} | {d['rank']} | {tors} | {d['group']} |")
        lines += ["", "| series check | status | agrees to order |", "|---|---|---|"]
        for chk in sys["series"]["checks"]:
            agree = chk.get("agree_to_order", "-")
            why = f" ({chk['reason']})" if "reason" in chk else ""
            lines.append(f"| {chk['method']} | {chk['status']}{why} | {agree} |")
        cl = sys["clauses"]
        lines += ["", "| clause | lhs | rhs | status | comparison |", "|---|---|---|---|---|",
                  f"| a (acyclic) | {str(cl['a']['acyclic']).lower()} | true | "
                  f"{cl['a']['status']} | exact |",
                  f"| b (order) | {cl['b']['lhs']} | {cl['b']['rhs']} | {cl['b']['status']} | exact |",
                  f"| c (leading) | {_lm(cl['c']['lhs'])} | {_lm(cl['c']['rhs'])} | "
                  f"{cl['c']['status']} (sign {cl['c']['sign']:+d}) | exact |", ""]
    return "\n".join(lines).rstrip("\n") + "\n"


def leading_from_json(x: dict) -> LogMonomial:
    c = x["coeff"]
    return LogMonomial(Fraction(int(c["num"]), int(c["den"])), x["ell_pow"])
