#!/usr/bin/env python3
"""
utfw: command-line front end

Usage:
    utfw bounds --lambda 1/5 [--table] [--plot FILE]     Atomic critical charges
    utfw molecular-bound --lambda 0.185                   Per-nucleus bound for molecules
    utfw certify molecule.json                            Stability certificate
    utfw search --z 80 --lambda 0.2 [--seed 0]            Search for negative energy
    utfw verify [--suite NAME ...]                        Run the property suites
    utfw energy density.txt --z 50 --lambda 0.2           Energy of a radial density

Every command prints a JSON report with the keys command, inputs,
outputs and provenance. Exit statuses:

    0  success (for certify: stable)
    1  negative verdict: configuration not certified, or a suite failed
    2  usage error, including arguments rejected by the library
    3  input file could not be parsed
    4  a nuclear charge exceeds the range of the certificate
"""

import argparse
import csv
import json
import logging
import sys
from .util import ALPHA_PHYSICAL, Struct, to_jsonable, from_jsonable, parse_number
from .utfw import Utfw
from .configurations import lambdas
from .critical_charge import bounds_table
from .verify import TABLE_LAMBDAS
from .radial_grid import RadialGrid, DEFAULT_N, DEFAULT_R_MAX, load_density
from .geometry import ConfigError, load_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_RANGE = 4

def positive_number(text):
    """
    argparse type for lambda and alpha: a positive decimal, a fraction
    such as 1/9, or (for lambda) one of the named presets.
    """
    if text in lambdas:
        return lambdas[text]
    try:
        value = parse_number(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    if not value > 0:
        raise argparse.ArgumentTypeError('must be positive, got {}'.format(text))
    return value

def nonnegative_number(text):
    try:
        value = parse_number(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    if not value >= 0:
        raise argparse.ArgumentTypeError('must be nonnegative, got {}'.format(text))
    return value

def make_report(command, inputs, outputs, seed=None, grid=None):
    from . import __version__
    return {'command': command,
            'inputs': to_jsonable(inputs),
            'outputs': to_jsonable(outputs),
            'provenance': {'version': __version__, 'seed': seed, 'grid': grid}}

def dump_report(report):
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True)

def load_report(text):
    """
    Parse a report written by :func:`dump_report`. Nested objects become
    Structs and "unbounded" becomes infinity.
    """
    return {key: from_jsonable(value) if isinstance(value, (dict, list)) else value
            for key, value in json.loads(text).items()}

def write_csv(filename, rows):
    """
    Write a list of Structs or dicts with the same keys as a CSV table.
    """
    rows = [to_jsonable(row) for row in rows]
    with open(filename, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
    logger.info('Wrote {} rows to {}'.format(len(rows), filename))

def grid_from_args(args):
    return RadialGrid(args.grid_points, args.rmax)

def cmd_bounds(args):
    """Atomic bounds and the comparison with the quoted integers."""
    model = Utfw(args.lam, args.alpha)
    outputs = {'atomic': model.atomic_bounds(), 'comparison': model.compare_to_quoted()}
    rows = [outputs['comparison']]
    if args.table:
        outputs['table'] = bounds_table(TABLE_LAMBDAS, args.alpha)
        rows = outputs['table']
    if args.plot:
        from .plot import plot_bounds
        plot_bounds(alpha=args.alpha, savefig=args.plot, show=False)
    if args.csv:
        write_csv(args.csv, rows)
    inputs = {'lambda': args.lam, 'alpha': args.alpha, 'table': args.table}
    return make_report('bounds', inputs, outputs), EXIT_OK

def cmd_molecular_bound(args):
    """Root of the transcendental equation and the per-nucleus bound."""
    model = Utfw(args.lam, args.alpha)
    comparison = model.compare_to_quoted()
    outputs = {'molecular': model.molecular_x_root(),
               'quoted_molecular': comparison.quoted_molecular,
               'molecular_difference': comparison.molecular_difference,
               'flagged': comparison.flagged}
    if args.csv:
        write_csv(args.csv, [comparison])
    inputs = {'lambda': args.lam, 'alpha': args.alpha}
    return make_report('molecular-bound', inputs, outputs), EXIT_OK

def cmd_certify(args):
    """Stability certificate for a molecule file."""
    lam, alpha, config = load_config(args.config)
    if args.alpha is not None:
        alpha = args.alpha
    if alpha is None:
        alpha = ALPHA_PHYSICAL
    model = Utfw(lam, alpha)
    report = model.certify(config)
    if args.csv:
        rows = [Struct(j=j, z=n.z, position=n.R, D=report.D[j],
                       ball=None if report.per_cell_ball is None else report.per_cell_ball[j],
                       exterior=None if report.per_cell_exterior is None else report.per_cell_exterior[j])
                for j, n in enumerate(config.nuclei)]
        write_csv(args.csv, rows)
    inputs = {'config': args.config, 'lambda': lam, 'alpha': alpha, 'molecule': config.to_dict()}
    status = {'stable': EXIT_OK, 'not-certified': EXIT_NEGATIVE,
              'charge-exceeds-range': EXIT_RANGE}[report.verdict]
    return make_report('certify', inputs, report), status

def cmd_search(args):
    """Search for a trial density with negative atomic energy."""
    model = Utfw(args.lam, args.alpha)
    grid = grid_from_args(args)
    result = model.search_negative(args.z, budget=args.budget, restarts=args.restarts,
                                   seed=args.seed, grid=grid)
    if args.csv:
        write_csv(args.csv, [Struct(verdict=result.verdict, best_energy=result.best_energy,
                                    confirmed_energy=result.confirmed_energy,
                                    extended_energy=result.extended_energy, **result.best_params.to_dict())])
    inputs = {'z': args.z, 'lambda': args.lam, 'alpha': args.alpha,
              'budget': args.budget, 'restarts': args.restarts}
    return make_report('search', inputs, result, seed=args.seed, grid=grid.to_dict()), EXIT_OK

def cmd_verify(args):
    """Run the property suites."""
    from .verify import run_suites
    results = run_suites(args.suite, seed=args.seed)
    passed = all(r.passed for r in results)
    if args.csv:
        write_csv(args.csv, [Struct(name=r.name, passed=r.passed, worst=r.worst, checks=r.checks)
                             for r in results])
    outputs = {'passed': passed, 'suites': results}
    return make_report('verify', {'suites': args.suite}, outputs, seed=args.seed), \
        EXIT_OK if passed else EXIT_NEGATIVE

def cmd_energy(args):
    """Energy of a radial density read from a file."""
    try:
        rho = load_density(args.density)
    except (OSError, ValueError) as e:
        raise ConfigError(['{}: {}'.format(args.density, e)])
    if rho.grid.n < 3:
        raise ConfigError(['{}: need at least 3 radial nodes, got {}'.format(args.density, rho.grid.n)])
    model = Utfw(args.lam, args.alpha)
    terms = Struct(weizsacker=model.weizsacker_term(rho),
                   thomas_fermi=model.tf_term(rho),
                   attraction=model.attraction_term_atomic(rho, args.z),
                   hartree=model.hartree_radial(rho))
    energy = terms.weizsacker + terms.thomas_fermi - terms.attraction + terms.hartree
    if args.csv:
        write_csv(args.csv, [Struct(energy=energy, **terms.to_dict())])
    outputs = {'terms': terms, 'energy': energy, 'total_charge': rho.total_charge()}
    inputs = {'density': args.density, 'z': args.z, 'lambda': args.lam, 'alpha': args.alpha}
    return make_report('energy', inputs, outputs, grid=rho.grid.to_dict()), EXIT_OK

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', '-o', help='Also write the JSON report to this file')
    common.add_argument('--csv', help='Write the main table of the command to this CSV file')
    common.add_argument('--grid-points', type=int, default=DEFAULT_N, help='Number of radial grid nodes (default: %(default)s)')
    common.add_argument('--rmax', type=float, default=DEFAULT_R_MAX, help='Outer radius of the radial grid (default: %(default)s)')
    common.add_argument('--verbose', '-v', action='count', default=0, help='-v for info, -vv for debug messages')

    def model_arguments(p, lam_required=True):
        p.add_argument('--lambda', dest='lam', type=positive_number, required=lam_required,
                       help='Weizsacker coefficient, e.g. 0.2, 1/9 or one of {}'.format(', '.join(lambdas)))
        p.add_argument('--alpha', type=positive_number, default=ALPHA_PHYSICAL,
                       help='Fine structure constant (default: 1/137)')

    parser = argparse.ArgumentParser(
        prog='utfw',
        description='Stability bounds for the ultrarelativistic Thomas-Fermi-Weizsacker model',
    )
    subparsers = parser.add_subparsers(dest='command', required=True, help='Available commands')

    p = subparsers.add_parser('bounds', parents=[common], help='Atomic critical charges')
    model_arguments(p)
    p.add_argument('--table', action='store_true', help='Add the rows for lambda = 1/9, 1/5, 0.185')
    p.add_argument('--plot', metavar='FILE', help='Save a figure of the bounds versus lambda')
    p.set_defaults(func=cmd_bounds)

    p = subparsers.add_parser('molecular-bound', parents=[common], help='Per-nucleus bound for molecules')
    model_arguments(p)
    p.set_defaults(func=cmd_molecular_bound)

    p = subparsers.add_parser('certify', parents=[common], help='Stability certificate for a molecule file')
    p.add_argument('config', help='JSON file with lambda, optional alpha, and the nuclei')
    p.add_argument('--alpha', type=positive_number, default=None, help='Override alpha from the file')
    p.set_defaults(func=cmd_certify)

    p = subparsers.add_parser('search', parents=[common], help='Search for a density with negative energy')
    model_arguments(p)
    p.add_argument('--z', type=nonnegative_number, required=True, help='Nuclear charge')
    p.add_argument('--budget', type=int, default=5000, help='Energy evaluations (default: %(default)s)')
    p.add_argument('--restarts', type=int, default=20, help='Nelder-Mead restarts (default: %(default)s)')
    p.add_argument('--seed', type=int, default=0, help='Random seed (default: %(default)s)')
    p.set_defaults(func=cmd_search)

    p = subparsers.add_parser('verify', parents=[common], help='Run the property suites')
    p.add_argument('--suite', action='append', default=None, help='Run only this suite (repeatable)')
    p.add_argument('--seed', type=int, default=0, help='Random seed (default: %(default)s)')
    p.set_defaults(func=cmd_verify)

    p = subparsers.add_parser('energy', parents=[common], help='Energy of a radial density file')
    p.add_argument('density', help='Two-column text file: radius, density')
    model_arguments(p)
    p.add_argument('--z', type=nonnegative_number, required=True, help='Nuclear charge at the origin')
    p.set_defaults(func=cmd_energy)

    return parser

def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')

    if args.command == 'search' and args.budget < 100:
        parser.error('--budget must be at least 100')
    if args.command == 'search' and args.restarts < 1:
        parser.error('--restarts must be at least 1')
    if args.command == 'verify' and args.suite is not None:
        from .verify import suites
        unknown = [name for name in args.suite if name not in suites]
        if unknown:
            parser.error('unknown suite(s) {}; available: {}'.format(unknown, ', '.join(suites)))
    if args.grid_points < 3 or not args.rmax > 0:
        parser.error('--grid-points must be at least 3 and --rmax positive')

    try:
        report, status = args.func(args)
    except ConfigError as e:
        print(json.dumps({'command': args.command, 'error': 'parse', 'problems': e.problems},
                         indent=2, sort_keys=True), file=sys.stderr)
        return EXIT_PARSE
    except ValueError as e:
        # Inputs that pass argparse but are rejected by the library
        tb = e.__traceback__
        while tb.tb_next is not None:
            tb = tb.tb_next
        where = tb.tb_frame.f_globals.get('__name__')
        print(json.dumps({'command': args.command, 'error': 'usage', 'module': where,
                          'problems': [str(e)]}, indent=2, sort_keys=True), file=sys.stderr)
        return EXIT_USAGE

    text = dump_report(report)
    print(text)
    if args.out:
        with open(args.out, 'w') as f:
            f.write(text + '\n')
    return status

if __name__ == '__main__':
    sys.exit(main())
