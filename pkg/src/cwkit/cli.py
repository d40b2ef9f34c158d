"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from cwkit import catalog
from cwkit.asymptotics import AsymptoticModel, emit_csv, t_grid
from cwkit.conway import CrossingBudgetError, conway, sato_levine_oracle
from cwkit.gauss import FramedLink, GaussCodeError, is_planar, parse_records, serialize_many
from cwkit.surgery import InvariantReport, report

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


def q(x: Fraction | None) -> str:
    return "null" if x is None else f"{x.numerator}/{x.denominator}"


def _threads() -> int:
    env = os.environ.get("CWKIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _map(func, items: list) -> list:
    """Evaluate concurrently when worthwhile; results keep input order."""
    workers = min(_threads(), len(items))
    if workers <= 1 or len(items) < 8:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * workers))))


def _read(paths: list[str]) -> list[tuple[str, int, FramedLink | GaussCodeError]]:
    out = []
    for p in paths:
        text = sys.stdin.read() if p == "-" else open(p, encoding="utf-8").read()
        out += [(p, line, rec) for line, rec in parse_records(text)]
    return out


def _records(args) -> tuple[list[FramedLink], int]:
    try:
        recs = _read(args.files)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return [], EXIT_INPUT
    links, status = [], EXIT_OK
    for path, line, rec in recs:
        if isinstance(rec, GaussCodeError):
            where = f"{path}:{rec.line}" if rec.line is not None else f"{path}:{line}"
            msg = str(rec).split(": ", 1)[1] if rec.line is not None else str(rec)
            print(f"error: {where}: {msg}", file=sys.stderr)
            status = EXIT_INPUT
        else:
            links.append(rec)
            if not is_planar(rec.diagram):
                print(f"warning: {rec.name or path}: code is not planar (virtual diagram); "
                      "values are formal", file=sys.stderr)
    return links, status


def format_report(r: InvariantReport) -> str:
    lines = [f"name: {r.name or '-'}"]
    if r.b is None:
        lines.append(f"a = {r.a}, D = {r.D}, sigma = {r.sigma if r.sigma is not None else 'null'}")
        lines.append(f"v2 = {r.v2_1}")
    else:
        lines.append(f"a = {r.a}, b = {r.b}, n = {r.n}, D = {r.D}, "
                     f"sigma = {r.sigma if r.sigma is not None else 'null'}")
        lines.append(f"v2_1 = {r.v2_1}, v2_2 = {r.v2_2}, U = {r.U}, U' = {q(r.U_prime)}")
        lines.append(f"mu' = {q(r.mu_prime)}")
    lines.append(f"mu = {q(r.mu)}")
    if r.lambda_w is None:
        lines.append("lambda_w = undefined (D = 0: not a rational homology sphere)")
    else:
        lines.append(f"lambda_w = {q(r.lambda_w)}")
        lines.append(f"lambda_w/2 = {q(r.lambda_w / 2)}")
        lines.append(f"lescop = {q(r.lescop)}")
    return "\n".join(lines)


def _emit_reports(reports: list[InvariantReport], as_json: bool) -> None:
    for r in reports:
        if r.lambda_w is None:
            print(f"warning: {r.name or '-'}: D = 0, lambda_w not defined", file=sys.stderr)
    if as_json:
        data = [r.as_json() for r in reports]
        print(json.dumps(data[0] if len(data) == 1 else data, indent=2))
    else:
        print("\n\n".join(format_report(r) for r in reports))


def cmd_compute(args) -> int:
    links, status = _records(args)
    if links:
        _emit_reports(_map(report, links), args.json)
    return status


def _conway_line(L: FramedLink) -> str:
    try:
        C = conway(L.diagram)
    except CrossingBudgetError as exc:
        return f"{L.name or '-'}: {exc}"
    line = f"{L.name or '-'}: {C}"
    if L.n_components == 2:
        line += f"    sato-levine = {sato_levine_oracle(L.diagram)}"
    return line


def cmd_conway(args) -> int:
    links, status = _records(args)
    for L in links:
        print(_conway_line(L))
    return status


def cmd_hopf(args) -> int:
    if args.n == 0:
        print("warning: n = 0 gives the split unlink", file=sys.stderr)
    L = (catalog.hopf_bar if args.bar else catalog.hopf)(args.n, args.a, args.b)
    if args.emit:
        sys.stdout.write(serialize_many([L]))
        return EXIT_OK
    _emit_reports([report(L)], args.json)
    return EXIT_OK


def hopf_grid(bound: int) -> list[FramedLink]:
    r = range(-bound, bound + 1)
    return [catalog.hopf(n, a, b) for n in r if n for a in r for b in r]


def cmd_catalog(args) -> int:
    links = catalog.named_links()
    if args.hopf_grid is not None:
        links = hopf_grid(args.hopf_grid)
    if args.random is not None:
        links = [catalog.random_link(args.random + i, args.crossings, args.components)
                 for i in range(args.count)]
    if args.emit:
        sys.stdout.write(serialize_many(links))
    else:
        for L in links:
            print(f"{L.name}: {L.n_components} component(s), {L.diagram.n_crossings} crossings,"
                  f" framings {' '.join(map(str, L.framings))}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from cwkit.verify import run_suite
    results = run_suite(args.suite, seed=args.seed, grid=args.grid, count=args.count)
    for r in results:
        print("\n".join(r.lines()))
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


def _load_model(path: str) -> AsymptoticModel:
    text = open(path, encoding="utf-8").read()
    keys = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if ":" in line:
            k, v = (s.strip() for s in line.split(":", 1))
            keys[k.lower()] = v
    if "a0" in keys:
        try:
            return AsymptoticModel(int(keys["a0"]), int(keys["b0"]), int(keys["n"]),
                                   int(keys.get("v2_1", 0)), int(keys.get("v2_2", 0)),
                                   int(keys.get("u", 0)), keys.get("name"))
        except (KeyError, ValueError) as exc:
            raise GaussCodeError(f"bad model file: {exc}") from None
    recs = parse_records(text)
    if len(recs) != 1:
        raise GaussCodeError(f"model file must hold one link record, found {len(recs)}")
    _, rec = recs[0]
    if isinstance(rec, GaussCodeError):
        raise rec
    return AsymptoticModel.from_link(rec)


def cmd_asympt(args) -> int:
    try:
        model = _load_model(args.model_file)
        ts = t_grid(args.t_min, args.t_max, args.step)
    except (OSError, GaussCodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(emit_csv(model, ts, args.kmax, exact=args.exact))
    return EXIT_OK


def _abs_lambda(L: FramedLink):
    r = report(L)
    return None if r.lambda_w is None else abs(r.lambda_w)


def histogram(values: list[Fraction | None]) -> tuple[list[tuple[Fraction, int]], int]:
    c = Counter(v for v in values if v is not None)
    return sorted(c.items()), sum(1 for v in values if v is None)


def format_histogram(values: list[Fraction | None]) -> str:
    rows, singular = histogram(values)
    out = ["|lambda_w| , count"]
    out += [f"{q(v)} , {n}" for v, n in rows]
    out.append(f"distinct values: {len(rows)}")
    out.append(f"records with D = 0: {singular}")
    return "\n".join(out) + "\n"


def cmd_batch(args) -> int:
    links, status = _records(args)
    values = _map(_abs_lambda, links)
    if args.histogram:
        sys.stdout.write(format_histogram(values))
    else:
        for L, v in zip(links, values):
            print(f"{L.name or '-'} , {q(v) if v is not None else 'undefined'}")
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cwkit", description=(
        "Casson-Walker and Lescop invariants of surgery on framed links from Gauss codes."))
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="invariant report for each record of link files")
    c.add_argument("files", nargs="+", help="link files ('-' for stdin)")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_compute)

    c = sub.add_parser("conway", help="Conway polynomial by skein resolution")
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_conway)

    c = sub.add_parser("hopf", help="report for the generalized Hopf link H(n,a,b)")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("-a", type=int, default=0)
    c.add_argument("-b", type=int, default=0)
    c.add_argument("--bar", action="store_true", help="reverse the second component")
    c.add_argument("--json", action="store_true")
    c.add_argument("--emit", action="store_true", help="print the link record instead")
    c.set_defaults(func=cmd_hopf)

    c = sub.add_parser("catalog", help="list or export catalog links")
    c.add_argument("--emit", action="store_true", help="write link-file records")
    c.add_argument("--hopf-grid", type=int, metavar="N", help="all H(n,a,b), 0<|n|<=N, |a|,|b|<=N")
    c.add_argument("--random", type=int, metavar="SEED", help="random braid-closure links")
    c.add_argument("--crossings", type=int, default=12)
    c.add_argument("--components", type=int, default=2, choices=(1, 2))
    c.add_argument("--count", type=int, default=1)
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("verify", help="run verification suites")
    c.add_argument("--suite", default="all",
                   choices=("patterns", "skein", "seifert", "asymptotics", "all"))
    c.add_argument("--seed", type=int, default=7)
    c.add_argument("--grid", type=int, default=5)
    c.add_argument("--count", type=int, default=50)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("asympt", help="lambda_w under framing scaling (a0 t, b0 t)")
    c.add_argument("--model-file", required=True,
                   help="a link record with framings a0 b0, or 'key: value' lines")
    c.add_argument("--t-min", default="1")
    c.add_argument("--t-max", default="10")
    c.add_argument("--step", default="0.5")
    c.add_argument("--kmax", type=int, default=12)
    c.add_argument("--emit", choices=("csv",), default="csv")
    c.add_argument("--exact", action="store_true", help="write p/q instead of decimals")
    c.set_defaults(func=cmd_asympt)

    c = sub.add_parser("batch", help="|lambda_w| for many records")
    c.add_argument("files", nargs="+")
    c.add_argument("--histogram", action="store_true")
    c.set_defaults(func=cmd_batch)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
