"""Verification campaigns: ``qagt run`` and ``qagt show``.

A campaign draws seeded generic points ``(q, t, sigma)``, runs the selected
suites up to ``max_level`` and writes one record per check. Records are
sorted canonically, so equal configurations give byte-identical reports.
Wall-clock timings break that and are only added with ``--timings``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__, dvir, integral, nekrasov
from .exact import Polynomial, RationalFunction
from .params import NonGenericError, ParamPoint, sample_points
from .partitions import partition_pairs

log = logging.getLogger(__name__)

SUITES = ("recursion", "duality", "poles", "residues", "integral", "kac", "gaiotto", "agt")
CSV_COLUMNS = ("suite", "check", "level", "point", "inputs", "expected", "actual", "pass", "gated")
MAX_SEED = 2**64 - 1


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CampaignConfig:
    suites: tuple
    max_level: int
    num_param_points: int = 3
    rng_seed: int = 0
    output_path: str | None = None
    fmt: str = "json"
    timings: bool = False

    def validate(self) -> None:
        if not self.suites:
            raise ConfigError("at least one suite is required")
        unknown = sorted(set(self.suites) - set(SUITES))
        if unknown:
            raise ConfigError(f"unknown suites: {', '.join(unknown)} (choose from {', '.join(SUITES)})")
        if self.max_level < 0:
            raise ConfigError(f"max_level must be >= 0, got {self.max_level}")
        if self.num_param_points < 1:
            raise ConfigError(f"points must be >= 1, got {self.num_param_points}")
        if not 0 <= self.rng_seed <= MAX_SEED:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.fmt}")

    def echo(self) -> dict:
        d = asdict(self)
        d["suites"] = list(self.suites)
        d.pop("output_path")
        return d


# serialisation


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def poly_json(p: Polynomial) -> list:
    return [rat(c) for c in p.coeffs]


def ratfun_json(f: RationalFunction) -> dict:
    return {"num": poly_json(f.num), "den": poly_json(f.den)}


def part(lam) -> list:
    return list(lam)


def _record(check, level, point, inputs, expected, actual, ok, gated=True) -> dict:
    return {
        "check": check,
        "level": level,
        "point": point,
        "inputs": inputs,
        "expected": expected,
        "actual": actual,
        "pass": bool(ok),
        "gated": gated,
    }


def _guard(fn, check, level, point, inputs):
    """Run one check; an exception becomes a failed record carrying the message."""
    try:
        return fn()
    except (ArithmeticError, ValueError) as exc:
        return _record(check, level, point, inputs, None, {"error": f"{type(exc).__name__}: {exc}"}, False)


# suites; each takes (point index, point, max_level, context) and returns records


def suite_recursion(i, pt, n_max, ctx):
    out = []
    for n in range(1, n_max + 1):
        def one(n=n):
            res = nekrasov.recursion_residual(n, ParamPoint(pt.q, pt.t))
            return _record("recursion-residual", n, i, {}, ratfun_json(RationalFunction(0)), ratfun_json(res), res.is_zero())
        out.append(_guard(one, "recursion-residual", n, i, {}))
    return out


def suite_duality(i, pt, n_max, ctx):
    out = []
    for n in range(1, n_max + 1):
        for lam, mu in partition_pairs(n):
            inputs = {"lam": part(lam), "mu": part(mu), "Q": rat(pt.Q)}

            def one(lam=lam, mu=mu, n=n, inputs=inputs):
                a, b = nekrasov.duality_check(lam, mu, pt.Q, pt)
                return _record("duality", n, i, inputs, rat(a), rat(b), a == b)
            out.append(_guard(one, "duality", n, i, inputs))
    return out


def suite_poles(i, pt, n_max, ctx):
    out = []
    for n in range(1, n_max + 1):
        def one(n=n):
            rep = nekrasov.pole_report(n, ParamPoint(pt.q, pt.t))
            actual = {
                "squarefree": rep["squarefree"],
                "off_grid_degree": rep["off_grid_degree"],
                "poles": [[r, s, m] for (r, s), m in sorted(rep["poles"].items())],
                "numerator_degree": rep["numerator_degree"],
                "denominator_degree": rep["denominator_degree"],
            }
            expected = {"squarefree": True, "off_grid_degree": 0}
            return _record("simple-poles", n, i, {}, expected, actual, rep["ok"])
        out.append(_guard(one, "simple-poles", n, i, {}))
    return out


def suite_residues(i, pt, n_max, ctx):
    base = ParamPoint(pt.q, pt.t)
    out = []
    for n in range(1, n_max + 1):
        for r, s in nekrasov.pole_pairs(n):
            inputs = {"r": r, "s": s}

            def one(r=r, s=s, n=n, inputs=inputs):
                lhs, rhs = nekrasov.residue_check(r, s, n, base)
                return _record("residue", n, i, inputs, rat(rhs), rat(lhs), lhs == rhs)
            out.append(_guard(one, "residue", n, i, inputs))
            if r * s == n:
                def rect(r=r, s=s, n=n, inputs=inputs):
                    got = nekrasov.rectangle_residue(r, s, base)
                    want = nekrasov.g_kernel(r, s, base)
                    return _record("rectangle-residue", n, i, inputs, rat(want), rat(got), got == want)
                out.append(_guard(rect, "rectangle-residue", n, i, inputs))
    return out


def suite_integral(i, pt, n_max, ctx):
    out = []
    for n in range(1, n_max + 1):
        for lam, mu in partition_pairs(n):
            inputs = {"lam": part(lam), "mu": part(mu), "sigma": rat(pt.sigma)}

            def one(lam=lam, mu=mu, n=n, inputs=inputs):
                got = integral.iterated_residue(lam, mu, pt)
                want = nekrasov.z_pair(lam, mu, pt.Q, pt)
                return _record("iterated-residue", n, i, inputs, rat(want), rat(got), got == want)
            out.append(_guard(one, "iterated-residue", n, i, inputs))

        def level(n=n):
            got, want = integral.level_check(n, pt)
            return _record("residue-level-sum", n, i, {"sigma": rat(pt.sigma)}, rat(want), rat(got), got == want)
        out.append(_guard(level, "residue-level-sum", n, i, {"sigma": rat(pt.sigma)}))
    return out


def kac_sigmas(pt: ParamPoint, n: int) -> list:
    """``pt.sigma`` plus two more values keeping ``h`` off every ``h_{r,s}``."""
    banned = {dvir.h_rs_squared(r, s, pt) for r, s in nekrasov.pole_pairs(n) if r > 0}
    out = []
    for cand in (pt.sigma, pt.sigma + 1, 1 / pt.sigma + 2, pt.sigma + 3, pt.sigma * 5, Fraction(7, 2)):
        if cand in (0, 1, -1):
            continue
        h = cand + 1 / cand
        if h * h in banned or any(h == c + 1 / c for c in out):
            continue
        out.append(cand)
        if len(out) == 3:
            return out
    raise NonGenericError(f"no three admissible sigma values near {pt.sigma}")


def suite_kac(i, pt, n_max, ctx):
    out = []
    for n in range(1, n_max + 1):
        def one(n=n):
            sig = kac_sigmas(pt, n)
            rep = dvir.kac_check(n, pt, sig)
            inputs = {"h": [rat(h) for h in rep["h_values"]]}
            return _record("kac-h-independence", n, i, inputs, rat(rep["constant"]), [rat(r) for r in rep["ratios"]], rep["ok"])
        out.append(_guard(one, "kac-h-independence", n, i, {}))
    return out


def suite_gaiotto(i, pt, n_max, ctx):
    out = []
    for n in range(1, n_max + 1):
        def one(n=n):
            g = dvir.gaiotto_coeffs(n, pt)
            residual = [d for m, _, d in dvir.whittaker_residuals(g, pt) if m == n and d]
            a = dvir.gaiotto_norm_direct(n, pt)
            b = dvir.gaiotto_norm_level(n, pt)
            actual = {
                "coefficients": [[part(lam), rat(c)] for lam, c in sorted(g.level(n).items(), reverse=True)],
                "whittaker_residual_terms": len(residual),
                "norm_direct": rat(a),
                "norm_inverse_gram": rat(b),
            }
            return _record("whittaker-unique", n, i, {}, {"whittaker_residual_terms": 0}, actual, not residual and a == b)
        out.append(_guard(one, "whittaker-unique", n, i, {}))
    return out


def suite_agt(i, pt, n_max, ctx):
    e = ctx["agt_exponent"]
    out = []
    for n in range(1, n_max + 1):
        def one(n=n):
            rep = dvir.agt_check(n, pt, e)
            inputs = {"sigma": rat(pt.sigma), "prefactor": rep["prefactor"]}
            actual = {"inverse_gram_entry": rat(rep["inverse_gram_entry"]), "normalized": rat(rep["normalized"])}
            return _record("agt-conjecture", n, i, inputs, rat(rep["nekrasov"]), actual, rep["ok"])
        out.append(_guard(one, "agt-conjecture", n, i, {}))
        if n <= ctx["f_recursion_max"]:
            def rec(n=n):
                res = dvir.f_recursion_residual(n, pt.q, pt.t, e)
                return _record("f-recursion-conjecture", n, i, {"prefactor": dvir.PREFACTOR_LABELS[e]},
                               ratfun_json(RationalFunction(0)), ratfun_json(res), res.is_zero())
            out.append(_guard(rec, "f-recursion-conjecture", n, i, {}))
    return out


SUITE_FUNCS = {
    "recursion": suite_recursion,
    "duality": suite_duality,
    "poles": suite_poles,
    "residues": suite_residues,
    "integral": suite_integral,
    "kac": suite_kac,
    "gaiotto": suite_gaiotto,
    "agt": suite_agt,
}


def _run_task(task):
    suite, i, pt, n_max, ctx, timings = task
    start = time.perf_counter()
    recs = SUITE_FUNCS[suite](i, pt, n_max, ctx)
    if timings:
        ms = round((time.perf_counter() - start) * 1000 / max(len(recs), 1), 3)
        for r in recs:
            r["runtime_ms"] = ms
    return suite, recs


def _sort_key(rec):
    return (rec["level"], -1 if rec["point"] is None else rec["point"], rec["check"], json.dumps(rec["inputs"], sort_keys=True))


def worker_count(tasks: int) -> int:
    cap = os.environ.get("QAGT_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ConfigError(f"QAGT_THREADS must be a positive integer, got {cap!r}") from None
    return max(1, min(n, tasks))


def _diagnostics(cfg: CampaignConfig, points: list) -> tuple:
    """Non-gating records and the frozen AGT exponent."""
    diag = {}
    ctx = {"agt_exponent": 1, "f_recursion_max": min(cfg.max_level, 3)}
    if "agt" in cfg.suites:
        try:
            e = dvir.determine_prefactor(points[0])
            ok = True
        except ValueError as exc:
            e, ok = 1, False
            log.warning("prefactor determination failed: %s", exc)
        ctx["agt_exponent"] = e
        diag["agt"] = [_record("agt-prefactor", 1, 0, {"candidates": list(dvir.PREFACTOR_LABELS.values())},
                               None, dvir.PREFACTOR_LABELS[e] if ok else None, ok, gated=False)]
    if "kac" in cfg.suites:
        recs = []
        for n in range(1, cfg.max_level + 1):
            consts, fits = [], []
            for pt in points:
                fits.append(rat(dvir.kac_constant_fit(n, pt.t)))
                try:
                    consts.append(rat(dvir.kac_check(n, pt, kac_sigmas(pt, n))["constant"]))
                except (ArithmeticError, ValueError) as exc:
                    consts.append(f"error: {exc}")
            recs.append(_record("kac-constant-fit", n, None, {"form": "(-1)^L t^(n p(n))"}, fits, consts,
                                consts == fits, gated=False))
        diag["kac"] = recs
    return diag, ctx


def run_campaign(cfg: CampaignConfig) -> dict:
    """Run every selected suite and return the report dictionary."""
    cfg.validate()
    points = sample_points(cfg.num_param_points, max(cfg.max_level, 1), cfg.rng_seed)
    suites = [s for s in SUITES if s in cfg.suites]
    diag, ctx = _diagnostics(cfg, points)
    tasks = [(s, i, pt, cfg.max_level, ctx, cfg.timings) for s in suites for i, pt in enumerate(points)]
    workers = worker_count(len(tasks))
    results = {s: list(diag.get(s, [])) for s in suites}
    if workers == 1:
        done = map(_run_task, tasks)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        done = pool.map(_run_task, tasks)
    try:
        for s, recs in done:
            results[s].extend(recs)
    finally:
        if workers > 1:
            pool.shutdown()
    for s in suites:
        results[s].sort(key=_sort_key)
    gated = [r for recs in results.values() for r in recs if r["gated"]]
    failed = [r for r in gated if not r["pass"]]
    return {
        "artifact": "qagt",
        "version": __version__,
        "environment": {"seed": cfg.rng_seed, "config": cfg.echo()},
        "points": [{"q": rat(pt.q), "t": rat(pt.t), "sigma": rat(pt.sigma)} for pt in points],
        "suites": results,
        "summary": {
            "gated_checks": len(gated),
            "gated_failures": len(failed),
            "diagnostics": sum(1 for recs in results.values() for r in recs if not r["gated"]),
            "passed": not failed,
        },
    }


def emit(report: dict, fmt: str, path: str | None) -> str:
    """Serialise deterministically; write to ``path`` when given and return the text."""
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        timed = any("runtime_ms" in r for recs in report["suites"].values() for r in recs)
        cols = CSV_COLUMNS + (("runtime_ms",) if timed else ())
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for suite, recs in report["suites"].items():
            for r in recs:
                row = {"suite": suite, **r}
                w.writerow([
                    json.dumps(row[c], sort_keys=True, ensure_ascii=False) if c in ("inputs", "expected", "actual") else row.get(c, "")
                    for c in cols
                ])
        text = buf.getvalue()
    else:
        raise ConfigError(f"unknown format {fmt}")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def summary_table(report: dict) -> str:
    rows = [("suite", "gated", "passed", "failed", "diagnostic")]
    for suite, recs in report["suites"].items():
        g = [r for r in recs if r["gated"]]
        ok = sum(r["pass"] for r in g)
        rows.append((suite, str(len(g)), str(ok), str(len(g) - ok), str(len(recs) - len(g))))
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    env = report["environment"]
    head = f"qagt {report['version']}  seed={env['seed']}  max_level={env['config']['max_level']}  points={len(report['points'])}"
    notes = []
    for recs in report["suites"].values():
        for r in recs:
            if r["check"] == "agt-prefactor":
                notes.append(f"AGT prefactor: {r['actual']}")
            elif r["gated"] and not r["pass"]:
                notes.append(f"FAIL {r['check']} level={r['level']} point={r['point']} inputs={json.dumps(r['inputs'])}")
    status = "PASS" if report["summary"]["passed"] else "FAIL"
    return "\n".join([head, *lines, *notes, f"overall: {status}"]) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qagt", description="Exact verification campaigns for the 5D pure SU(2) AGT relation.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run verification suites and write a report")
    run.add_argument("--suites", default=",".join(SUITES), help=f"comma-separated subset of {','.join(SUITES)}")
    run.add_argument("--max-level", type=int, default=3)
    run.add_argument("--points", type=int, default=3)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", default=None, help="report path (stdout when omitted)")
    run.add_argument("--format", choices=("json", "csv"), default="json")
    run.add_argument("--timings", action="store_true", help="add per-record runtime_ms (breaks byte-identity)")
    run.add_argument("-v", "--verbose", action="store_true")
    show = sub.add_parser("show", help="summarise a JSON report")
    show.add_argument("report")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "show":
        try:
            with open(args.report, encoding="utf-8") as fh:
                report = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"qagt show: {exc}", file=sys.stderr)
            return 1
        sys.stdout.write(summary_table(report))
        return 0 if report["summary"]["passed"] else 1
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    suites = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    cfg = CampaignConfig(suites, args.max_level, args.points, args.seed, args.out, args.format, args.timings)
    try:
        cfg.validate()
        report = run_campaign(cfg)
    except ConfigError as exc:
        ap.error(str(exc))
    except NonGenericError as exc:
        print(f"qagt run: {exc}", file=sys.stderr)
        return 2
    try:
        text = emit(report, cfg.fmt, cfg.output_path)
    except OSError as exc:
        print(f"qagt run: {exc}", file=sys.stderr)
        return 1
    if not cfg.output_path:
        sys.stdout.write(text)
    else:
        sys.stderr.write(summary_table(report))
    return 0 if report["summary"]["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
