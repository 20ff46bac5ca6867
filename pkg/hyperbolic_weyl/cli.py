# SPDX-License-Identifier: MIT
import argparse, logging, os, sys

from .core import *
from .cartan import Catalog, catalog_entry, symmetrize_and_normalize
from .config import Config, load_config, parse_methods
from .names import parse_name
from .shape import shape_matrix, classify_hyperbolicity, embed_domain
from .octavian import compare_printed_e10
from .volume import (volume_adaptive, volume_series, volume_montecarlo, closed_form_volume)
from .lobachevsky import evaluate_closed_form
from .atlas import (run_single, run_atlas, dumps_json, dumps_csv, loads_json,
                    read_reference, compare_reference)
from .checks import run_checks
from .util import *

log = logging.getLogger("hyperbolic_weyl.cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2
EXIT_COMPARE = 3

class UsageError(Exception):
    pass

class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)

_handlers = []

def setup_logging(logfile, verbose=False):
    root = logging.getLogger('')
    # handlers of an earlier main() in this process go first
    for h in _handlers:
        root.removeHandler(h)
        h.close()
    _handlers.clear()

    logfile_handler = logging.FileHandler(logfile, mode='w')
    logfile_handler.setFormatter(logging.Formatter(
        '%(asctime)s %(name)-12s %(levelname)-8s %(message)s', datefmt='%m-%d %H:%M'))

    console = logging.StreamHandler()
    console.setLevel(logging.INFO if verbose else logging.ERROR)
    formatter = logging.Formatter('%(name)-12s: %(levelname)-8s %(message)s')
    console.setFormatter(formatter)

    root.setLevel(logging.DEBUG)
    for h in (logfile_handler, console):
        root.addHandler(h)
        _handlers.append(h)
    logging.info("Startup")

def build_parser():
    parser = ArgumentParser(prog="hyperweyl",
                            description="Fundamental domains of hyperbolic Weyl groups")
    parser.add_argument("--config", help="key=value configuration file")
    parser.add_argument("--catalog", help="plain-text catalog override file")
    parser.add_argument("--log", default="hyperweyl.log", help="log file (default: %(default)s)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log INFO to the console")

    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    def numeric(p):
        p.add_argument("--method", help="adaptive, series, mc, all or a comma list")
        p.add_argument("--tol", type=float)
        p.add_argument("--budget", type=int, help="adaptive cell budget")
        p.add_argument("--samples", type=int, help="Monte Carlo samples")
        p.add_argument("--seed", type=int)
        p.add_argument("--workers", type=int)

    for verb, text in (("shape", "print the exact shape matrix"),
                       ("classify", "hyperbolicity verdict"),
                       ("vertices", "vertices on the upper half plane")):
        p = sub.add_parser(verb, help=text)
        p.add_argument("name", help="algebra name, e.g. E8++, B4(2)++, E10, AE3")

    p = sub.add_parser("volume", help="volume of the fundamental domain")
    p.add_argument("name")
    numeric(p)

    p = sub.add_parser("atlas", help="all hyperbolic over-extensions")
    numeric(p)
    p.add_argument("--max-rank", type=int, dest="max_rank", help="largest over-extended rank")
    p.add_argument("--no-twisted", action="store_true", help="skip twisted aliases")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    sub.add_parser("check", help="run the identity suite")

    p = sub.add_parser("compare", help="compare against a reference volume table")
    numeric(p)
    p.add_argument("--reference", required=True, help="CSV with header name,volume,source")
    p.add_argument("--atlas", help="previous atlas JSON instead of recomputing")
    p.add_argument("--rel-tol", type=float, dest="rel_tol")
    return parser

def make_config(args):
    cfg = Config()
    if args.config:
        cfg = load_config(args.config, cfg)
    changes = {}
    for key in ("tol", "budget", "samples", "seed", "workers", "max_rank", "rel_tol"):
        changes[key] = getattr(args, key, None)
    if getattr(args, "method", None):
        changes["methods"] = parse_methods(args.method)
    if getattr(args, "no_twisted", False):
        changes["include_twisted"] = False
    if args.catalog:
        changes["catalog"] = args.catalog
    return cfg.replace(**changes)

def _shape_for(name, cfg):
    id = parse_name(name)
    catalog = Catalog(cfg.catalog) if cfg.catalog else None
    datum = catalog_entry(id, catalog)
    return id, datum, shape_matrix(symmetrize_and_normalize(datum))

def cmd_shape(args, cfg):
    id, datum, s = _shape_for(args.name, cfg)
    p_info(f"{id.name}: shape matrix ({datum.node_order_note})")
    p_table(format_matrix(s.S))
    p_plain(f"  det S = {format_fraction(s.detS)}")

def cmd_classify(args, cfg):
    id, datum, s = _shape_for(args.name, cfg)
    report = classify_hyperbolicity(s)
    p_info(f"{id.name}: {report.verdict}")
    p_table([[f"S{j + 1}{j + 1}", format_fraction(x), c]
             for j, (x, c) in enumerate(zip(s.diagonal, report.per_index))])

def cmd_vertices(args, cfg):
    id, datum, s = _shape_for(args.name, cfg)
    geom = embed_domain(s)
    p_info(f"{id.name}: {s.n} vertices, Gram residual {geom.gram_residual:.2e}")
    p_plain("  v0: cusp at infinity; base vertex (v=1, u=0)")
    for j, x in enumerate(geom.vertices):
        tag = " (cusp)" if x.is_cusp else ""
        p_plain(f"  v{j + 1} = {x.v:.15f}{tag}  u = [{', '.join(f'{c:.12f}' for c in x.u)}]")
    if id.family == "E" and id.rank == 8 and not id.twisted:
        p_message("Comparison with the printed E10 vertex list:")
        for line in compare_printed_e10(s).lines():
            p_plain("  " + line)

def cmd_volume(args, cfg):
    id, datum, s = _shape_for(args.name, cfg)
    p_progress(f"{id.name}: computing volume ({', '.join(cfg.methods)})")
    for method in cfg.methods:
        if method == "adaptive":
            est = volume_adaptive(s, cfg.tol, cfg.cell_budget(s.n), cfg.rule_index(s.n),
                                  cfg.adaptive_rel_tol)
        elif method == "series":
            try:
                est = volume_series(s, cfg.series_order, cfg.series_tol, cfg.series_cap)
            except BudgetExhausted as e:
                p_warning(str(e))
                est = e.estimate
        else:
            est = volume_montecarlo(s, cfg.samples, cfg.seed, cfg.chunk, cfg.workers)
        flag = "" if est.converged else "  (not converged)"
        if not est.rigorous:
            flag += "  (statistical)" if est.method == "montecarlo" else "  (heuristic bound)"
        p_plain(f"  {est.method:<11} {est.value!r} +- {est.error_bound:.3e}  work {est.work}{flag}")
    cf = closed_form_volume(id)
    if cf is not None:
        p_plain(f"  {'closed form':<11} {evaluate_closed_form(cf)!r}  ({cf.expression})")

def _emit(text, out):
    if out:
        with open(out, "w") as fd:
            fd.write(text)
        p_success(f"Wrote {out}")
    else:
        sys.stdout.write(text)

def cmd_atlas(args, cfg):
    records = run_atlas(cfg)
    failed = [r for r in records if r.error]
    for r in failed:
        p_warning(f"{r.name}: {r.error}")
    _emit(dumps_json(records) if args.format == "json" else dumps_csv(records), args.out)
    return EXIT_COMPUTE if failed else EXIT_OK

def cmd_check(args, cfg):
    results = run_checks()
    for name, passed, detail in results:
        if passed:
            p_success(f"PASS {name}")
        else:
            p_error(f"FAIL {name} {detail}")
    failed = sum(not ok for _, ok, _ in results)
    p_message(f"{len(results) - failed} passed, {failed} failed")
    return EXIT_COMPUTE if failed else EXIT_OK

def cmd_compare(args, cfg):
    table = read_reference(args.reference)
    if args.atlas:
        with open(args.atlas, "r") as fd:
            records = loads_json(fd.read())
    else:
        records = [run_single(row.algebra, cfg) for row in table.rows]
    report = compare_reference(records, table, cfg.rel_tol)
    for row in report.rows:
        line = (f"{row.name:<10} ref {row.reference!r} computed {row.computed!r} "
                f"rel dev {row.deviation:.2e}")
        if row.passed:
            p_success("PASS " + line)
        else:
            p_error("FAIL " + line)
    for name in report.unmatched:
        p_warning(f"UNMATCHED {name}")
    p_message(f"{len(report.rows) - len(report.failures)} passed, {len(report.failures)} failed, "
              f"{len(report.unmatched)} unmatched")
    return report.exit_status

COMMANDS = {
    "shape": cmd_shape,
    "classify": cmd_classify,
    "vertices": cmd_vertices,
    "volume": cmd_volume,
    "atlas": cmd_atlas,
    "check": cmd_check,
    "compare": cmd_compare,
}

def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"hyperweyl: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(args.log, args.verbose)
    logging.info(f"Arguments: {argv if argv is not None else sys.argv[1:]}")

    try:
        cfg = make_config(args)
        return COMMANDS[args.verb](args, cfg) or EXIT_OK
    except (ParseError, UnknownAlias, UnknownAlgebra, TwistUnavailable, ConfigError,
            CatalogFormatError, ReferenceFormatError) as e:
        logging.info(f"Usage error: {e}")
        p_error(str(e))
        return EXIT_USAGE
    except HyperbolicWeylError as e:
        # traceback to the log file only
        logging.debug("Computation failed", exc_info=True)
        p_error(f"{type(e).__name__}: {e}")
        return EXIT_COMPUTE
    except KeyboardInterrupt:
        print()
        logging.info("KeyboardInterrupt")
        p_error("Interrupted")
        return EXIT_COMPUTE
    except Exception:
        logging.exception("Exception caught")
        p_warning("If you need to file a bug report, please attach the log file:")
        p_warning(f"  {os.path.abspath(args.log)}")
        return EXIT_COMPUTE

if __name__ == "__main__":
    sys.exit(main())
