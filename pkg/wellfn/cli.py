# Copyright 2024 The wellfn Authors.
"""``wellfn`` command line: every computation as a subcommand emitting CSV.

Data goes to standard output (or ``--out``); logs, run metadata and errors go to standard error. Exit status is 0 on
success, 2 on usage errors and 1 when a computation rejects its inputs.
"""
import argparse
import collections
import csv
import enum
import logging
import sys

import ujson

from . import approx, bounds, config, fit, kernel, reference, series
from ._version import __version__
from .dispatchers import MethodDispatcher
from .exceptions import UsageError, WellFunctionError
from .grid import DEFAULT_GRID, SPACINGS, GridSpec

log = logging.getLogger(__name__)
run_log = logging.getLogger('wellfn.run')

ORACLE = kernel.ORACLE
EVAL_METHODS = (ORACLE,) + tuple(k.value for k in approx.ApproxKind)
CONVERGE_POINTS = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0)
CONVERGE_REL_TARGET = 1e-6

# Options consumed by main() rather than by a subcommand.
_GLOBAL_OPTIONS = ('command', 'out', 'verbose', 'quiet')

Table = collections.namedtuple('Table', ['header', 'rows'])


def _format(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return '%.17g' % value
    if isinstance(value, enum.Enum):
        return value.value
    return str(value)


def write_csv(stream, table):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([_format(v) for v in row])


def _write_table(path, table):
    if path is None:
        write_csv(sys.stdout, table)
        return
    with open(path, 'w', newline='') as out:
        write_csv(out, table)


def _grid(u_min, u_max, points, spacing, include_min=True):
    return GridSpec(u_min, u_max, points, spacing, include_min)


class WellFunctionCommands(MethodDispatcher):
    """One ``m_<command>`` per subcommand; each returns a :class:`Table`."""

    def m_eval(self, method, u, derivative=False):
        rows = []
        for point in u:
            if approx.outside_validated_range(point):
                log.warning("u=%r is below the validated range of the closed forms", point)
            if method == ORACLE:
                value = reference.e1_derivative_exact(point) if derivative else reference.e1(point)
            elif derivative:
                value = approx.dw_du(method, point)
            else:
                value = approx.evaluate(method, point)
            rows.append((float(point), float(value)))
        return Table(['u', 'dw_du' if derivative else 'value'], rows)

    def m_converge(self, u, rel_target):
        rows = series.convergence_table([float(p) for p in u], rel_target)
        return Table(['u', 'classical_terms', 'ramanujan_terms'], rows)

    def m_bounds(self, u_min, u_max, points, spacing):
        rows = bounds.bound_table(_grid(u_min, u_max, points, spacing).points())
        return Table(['u', 'lower', 'oracle', 'upper', 'log_scale'], rows)

    def m_sweep(self, method, target, u_min, u_max, points, spacing, workers):
        report = approx.sweep(method, _grid(u_min, u_max, points, spacing), target, workers)
        if target == approx.VALUE:
            header = ['u', 'w_ref', 'w_approx', 'pe_percent']
        else:
            header = ['u', 'dw_ref', 'dw_approx', 'pe_percent']
        rows = [(s.u, s.w_ref, s.w_approx, s.pe_percent) for s in report.samples]
        rows.append(('max_abs_pe', report.max_abs_pe, 'argmax_u', report.argmax_u))
        return Table(header, rows)

    def m_kernel(self, method, workers, config_path=None, **case_flags):
        case = config.load_case(config_path, **case_flags)
        report = kernel.kernel_report(case, method, workers)
        rows = [(s.r, s.t, s.u_on, s.u_off, s.U_ref, s.U, s.pe_percent) for s in report.samples]
        return Table(['r', 't', 'u_on', 'u_off', 'U_ref', 'U_approx', 'pe_percent'], rows)

    def m_fit(self, u_min, u_max, points, spacing, init, max_iter, tol, trace_out=None):
        grid = _grid(u_min, u_max, points, spacing, include_min=False)
        result = fit.fit_eq9(grid, approx.Eq10Coefficients.from_sequence(init), max_iter, tol)
        if trace_out is not None:
            _write_table(trace_out, Table(['iteration', 'residual_norm', 'damping'], result.trace))
        row = result.coefficients.as_tuple() + (
            result.iterations, result.final_residual_norm, result.max_pe_over_fit_domain, result.converged)
        header = ['a1', 'a2', 'a3', 'a4', 'a5', 'iterations', 'final_residual_norm', 'max_pe', 'converged']
        return Table(header, [row])

    def m_table1(self, u_min, u_max, points, spacing, workers):
        rows = approx.table1(_grid(u_min, u_max, points, spacing), workers)
        return Table(['source', 'max_pe_w', 'max_pe_dw'], rows)


def _method_name(text):
    return text.strip().lower().replace('-', '_')


def _init_coefficients(text):
    """``published``, ``neutral`` or five comma-separated numbers."""
    name = text.strip().lower()
    if name == 'published':
        return approx.PUBLISHED.as_tuple()
    if name == 'neutral':
        return fit.NEUTRAL_INIT.as_tuple()
    values = tuple(float(v) for v in text.split(','))
    if len(values) != fit.N_PARAMETERS:
        raise argparse.ArgumentTypeError('expected {} coefficients, got {}'.format(fit.N_PARAMETERS, len(values)))
    return values


def _add_grid_arguments(parser, grid):
    parser.add_argument('--u-min', type=float, default=grid.u_min)
    parser.add_argument('--u-max', type=float, default=grid.u_max)
    parser.add_argument('--points', type=int, default=grid.n_points)
    parser.add_argument('--spacing', choices=SPACINGS, default=grid.spacing)


def _add_workers_argument(parser):
    parser.add_argument('--workers', type=int, default=approx.DEFAULT_MAX_WORKERS,
                        help='threads used to evaluate the grid (output does not depend on it)')


def build_parser():
    parser = argparse.ArgumentParser(prog='wellfn', description='Theis well function W(u) = E1(u) toolkit.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('--out', help='write CSV here instead of standard output')
    parser.add_argument('-v', '--verbose', action='store_true', help='log at DEBUG')
    parser.add_argument('-q', '--quiet', action='store_true', help='log errors only')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    closed_forms = [k.value for k in approx.CLOSED_FORMS]

    p = subparsers.add_parser('eval', help='W(u) or dW/du at given points')
    p.add_argument('--method', type=_method_name, choices=EVAL_METHODS, default=approx.ApproxKind.proposed.value)
    p.add_argument('--u', type=float, nargs='+', required=True)
    p.add_argument('--derivative', action='store_true')

    p = subparsers.add_parser('converge', help='terms needed by the classical and Ramanujan series')
    p.add_argument('--u', type=float, nargs='+', default=list(CONVERGE_POINTS))
    p.add_argument('--rel-target', type=float, default=CONVERGE_REL_TARGET)

    p = subparsers.add_parser('bounds', help='Gautschi bounds around the oracle')
    _add_grid_arguments(p, DEFAULT_GRID)

    p = subparsers.add_parser('sweep', help='percentage errors of one approximation over a grid')
    p.add_argument('--method', type=_method_name, choices=[k.value for k in approx.ApproxKind],
                   default=approx.ApproxKind.proposed.value)
    p.add_argument('--target', choices=approx.TARGETS, default=approx.VALUE)
    _add_grid_arguments(p, DEFAULT_GRID)
    _add_workers_argument(p)

    p = subparsers.add_parser('kernel', help='discrete pumping kernel over radii and times')
    p.add_argument('--method', type=_method_name, choices=(ORACLE,) + tuple(closed_forms),
                   default=approx.ApproxKind.proposed.value)
    p.add_argument('--config', dest='config_path', help='key = value case file')
    p.add_argument('--T', dest='transmissivity', type=float)
    p.add_argument('--S', dest='storativity', type=float)
    p.add_argument('--tau', type=float)
    p.add_argument('--radii', type=config.parse_radii)
    p.add_argument('--t-start', type=float)
    p.add_argument('--t-end', type=float)
    p.add_argument('--t-step', type=float)
    p.add_argument('--Q', dest='pumping_rate', type=float)
    _add_workers_argument(p)

    p = subparsers.add_parser('fit', help='refit the large-argument coefficients')
    _add_grid_arguments(p, fit.DEFAULT_FIT_GRID)
    p.add_argument('--init', type=_init_coefficients, default=approx.PUBLISHED.as_tuple(),
                   help="'published', 'neutral' or a1,a2,a3,a4,a5")
    p.add_argument('--max-iter', type=int, default=fit.DEFAULT_MAX_ITER)
    p.add_argument('--tol', type=float, default=fit.DEFAULT_TOL)
    p.add_argument('--trace-out', help='write the iteration trace CSV here')

    p = subparsers.add_parser('table1', help='max |PE| of W and dW/du for the four closed forms')
    _add_grid_arguments(p, DEFAULT_GRID)
    _add_workers_argument(p)

    return parser


def _configure_logging(verbose, quiet):
    level = logging.WARNING
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.ERROR
    logging.basicConfig(stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger('wellfn').setLevel(level)
    # Run metadata is shown unless -q is given.
    run_log.setLevel(min(level, logging.INFO) if not quiet else logging.ERROR)


def _report_error(error):
    sys.stderr.write(ujson.dumps(error.to_dict()) + '\n')
    return error.EXIT_STATUS


def main(argv=None):
    """Run one subcommand and return the process exit status."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code

    _configure_logging(args.verbose, args.quiet)
    params = {k: v for k, v in vars(args).items() if k not in _GLOBAL_OPTIONS}
    commands = WellFunctionCommands()

    try:
        table = commands[args.command](params)
        _write_table(args.out, table)
    except WellFunctionError as e:
        log.debug("%s failed", args.command, exc_info=True)
        return _report_error(e)
    except OSError as e:
        return _report_error(UsageError('Cannot write output: {}'.format(e), data={'path': e.filename}))

    run_log.info(ujson.dumps({
        'command': args.command,
        'version': __version__,
        'parameters': params,
        'rows': len(table.rows),
    }))
    return 0


if __name__ == '__main__':
    sys.exit(main())
