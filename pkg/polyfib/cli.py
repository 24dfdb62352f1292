# polyfib/cli.py

import argparse
import json
import logging
import sys
from importlib.metadata import PackageNotFoundError, requires, version
from typing import List, Optional

from mpmath import mp

from . import config, writers
from .bernoulli import bernoulli_number, bernoulli_poly
from .fibseries import METHODS, Family, Part, SeriesSpec, Weight, evaluate
from .harness import audit_independence, registry, verify_all
from .logging_utils import errors_logged, failed_identities, setup_logging
from .polylog import PolylogQuery, Side
from .seqcore import fib, lucas
from .utils import PolyfibError, check_prec, format_value, parse_complex, parse_real, working_precision

logger = logging.getLogger(__name__)

REPORT_FORMATS = ('table', 'json', 'csv')
CSV_COLUMNS = ['id', 'prec', 'abs_error', 'rel_error', 'status', 'elapsed']
TABLE_COLUMNS = ['id', 'status', 'rel_error', 'elapsed', 'reason']
_CORE_DEPENDENCIES = ('PyYAML', 'mpmath')


def _prec(value: Optional[int]) -> int:
    return check_prec(value if value is not None else config.get_default_prec())


def _package_version(name: str) -> str:
    try:
        return version(name)
    except PackageNotFoundError:
        return '-'


def _dependencies() -> List[str]:
    """Runtime requirements of polyfib, or the core list when it is not installed."""
    try:
        reqs = requires('polyfib') or []
    except PackageNotFoundError:
        return list(_CORE_DEPENDENCIES)
    deps = []
    for req in reqs:
        if 'extra ==' in req:
            continue
        name = req.split(';')[0].strip()
        for sep in ('>=', '==', '<', '~=', '>'):
            name = name.split(sep)[0]
        deps.append(name.strip())
    return deps or list(_CORE_DEPENDENCIES)


def checkup() -> int:
    """Print dependency status, config health and the registry audit."""
    rows = []
    for dep in _dependencies():
        found = _package_version(dep)
        rows.append({'Package': dep, 'Status': '✗' if found == '-' else '✓', 'Version': found})
    writers.to_table(rows, sys.stdout)

    print("\nConfig Health")
    print("-" * 40)
    failed = False
    for status, msg in config.diagnose_config():
        print(f"{status} {msg}")
        failed = failed or status == '✗'

    print("\nIdentity Registry")
    print("-" * 40)
    try:
        records = registry()
    except (ValueError, OSError) as e:
        print(f"✗ Registry failed to load: {e}")
        return 1
    print(f"✓ {len(records)} identities from {len(set(r.source for r in records))} file(s)")
    shared = audit_independence(records)
    if shared:
        print(f"✗ Shared method tags: {', '.join(shared)}")
        failed = True
    else:
        print("✓ Independence audit passed")
    return 1 if failed else 0


def cmd_fib(args) -> int:
    print(fib(args.n) if args.command == 'fib' else lucas(args.n))
    return 0


def cmd_bernoulli(args) -> int:
    print(bernoulli_number(args.k))
    return 0


def cmd_bpoly(args) -> int:
    prec = _prec(args.prec)
    with working_precision(prec):
        x = parse_real(args.re)
        if args.im is not None:
            x = parse_complex(f"{args.re},{args.im}")
        value = bernoulli_poly(args.k, x)
    print(format_value(value, prec))
    return 0


def cmd_li(args) -> int:
    prec = _prec(args.prec)
    with working_precision(prec):
        z = parse_complex(args.z)
    query = PolylogQuery(args.k, z, prec)
    result = query.evaluate(args.side)
    if args.format == 'json':
        print(json.dumps(query.to_dict(result), indent=2))
    else:
        print(format_value(result.value, prec))
        print(f"path: {result.path}")
        print(f"tail bound: {mp.nstr(result.tail_bound, 5)}")
    return 0


def cmd_series(args) -> int:
    prec = _prec(args.prec)
    spec = SeriesSpec(args.family, args.r, args.s, args.k, z=args.z, weight=args.weight, x=args.x,
                      part=args.part, start=args.start, side=args.side)
    result = evaluate(spec, args.method, prec=prec)
    if args.format == 'text':
        print(format_value(result.value, prec))
    elif args.format == 'json':
        print(json.dumps(result.to_dict(prec), indent=2))
    else:
        writers.to_table([result.to_dict(prec)], sys.stdout, max_width=200)
    return 0


def cmd_list(args) -> int:
    rows = [{'id': r.id, 'lhs': r.lhs.method, 'rhs': r.rhs.method, 'statement': r.statement}
            for r in registry()]
    writers.to_table(rows, sys.stdout, max_width=args.width)
    return 0


def cmd_verify(args) -> int:
    setup_logging('polyfib_verify', log_dir=args.log_dir, level=args.log_level)
    prec = _prec(args.prec)
    ids = None if args.all else args.id
    reports, summary = verify_all(prec, workers=args.workers, ids=ids)

    output = args.output or sys.stdout
    if args.format == 'json':
        writers.to_json(reports, output)
    elif args.format == 'csv':
        writers.to_csv(reports, output, columns=CSV_COLUMNS)
    else:
        writers.to_table(reports, output, columns=TABLE_COLUMNS)

    print(str(summary), file=sys.stderr)
    error_log = errors_logged()
    if error_log:
        print(f"Errors logged to {error_log}", file=sys.stderr)
    failed = failed_identities()
    if failed:
        print(f"Failed: {', '.join(failed)}", file=sys.stderr)
    return 0 if summary.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='polyfib',
                                     description='Fibonacci/Lucas series, polylogarithms and identity checks')
    parser.add_argument('--config', help='Config file (default: search polyfib.yml)')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    # checkup
    subparsers.add_parser('checkup', help='Check dependencies, configuration and the identity registry')

    # fib / lucas
    for name, what in (('fib', 'Fibonacci'), ('lucas', 'Lucas')):
        p = subparsers.add_parser(name, help=f'Exact {what} number')
        p.add_argument('n', type=int)
        p.set_defaults(handler=cmd_fib)

    # bernoulli
    p = subparsers.add_parser('bernoulli', help='Exact Bernoulli number B_k')
    p.add_argument('k', type=int)
    p.set_defaults(handler=cmd_bernoulli)

    # bpoly
    p = subparsers.add_parser('bpoly', help='Bernoulli polynomial B_k(x) at a real or complex x')
    p.add_argument('k', type=int)
    p.add_argument('re', help='Real part (rational, decimal or multiple of pi)')
    p.add_argument('im', nargs='?', default=None, help='Imaginary part')
    p.add_argument('--prec', type=int, help='Precision in bits')
    p.set_defaults(handler=cmd_bpoly)

    # li
    p = subparsers.add_parser('li', help='Polylogarithm Li_k(z)')
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--z', required=True, help='RE[,IM]')
    p.add_argument('--prec', type=int, help='Precision in bits')
    p.add_argument('--side', choices=Side.ALL, default=Side.UPPER, help='Side of the cut for real z > 1')
    p.add_argument('--format', choices=('text', 'json'), default='text')
    p.set_defaults(handler=cmd_li)

    # series
    p = subparsers.add_parser('series', help='Weighted Fibonacci/Lucas series')
    p.add_argument('--family', required=True, choices=Family.ALL)
    p.add_argument('--r', type=int, required=True)
    p.add_argument('--s', type=int, default=0)
    p.add_argument('--k', type=int, default=1)
    p.add_argument('--z', help='Ratio of the plain/trig weight: RE[,IM]')
    p.add_argument('--weight', default=Weight.PLAIN, choices=Weight.ALL)
    p.add_argument('--x', help='Angle of the trig weight, e.g. pi/3')
    p.add_argument('--part', choices=Part.ALL)
    p.add_argument('--start', type=int, default=1, choices=(0, 1))
    p.add_argument('--side', choices=Side.ALL, default=Side.UPPER)
    p.add_argument('--method', choices=METHODS, default='auto')
    p.add_argument('--prec', type=int, help='Precision in bits')
    p.add_argument('--format', choices=('text', 'json', 'table'), default='text')
    p.set_defaults(handler=cmd_series)

    # list
    p = subparsers.add_parser('list', help='List registry identities')
    p.add_argument('--width', type=int, default=80, help='Maximum column width')
    p.set_defaults(handler=cmd_list)

    # verify
    p = subparsers.add_parser('verify', help='Verify registry identities')
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument('--id', action='append', help='Identity id (repeatable)')
    which.add_argument('--all', action='store_true', help='Every identity in the registry')
    p.add_argument('--prec', type=int, help='Precision in bits (default: POLYFIB_PREC or config)')
    p.add_argument('--workers', type=int, help='Worker processes (default: config)')
    p.add_argument('--format', choices=REPORT_FORMATS, default='table')
    p.add_argument('--output', help='Write the report to this file instead of stdout')
    p.add_argument('--log-dir', help='Directory for log files')
    p.add_argument('--log-level', default=None, help='DEBUG, INFO, WARNING or ERROR')
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        config.set_config_file(args.config)

    if args.command == 'checkup':
        return checkup()
    try:
        return args.handler(args)
    except (PolyfibError, ValueError, KeyError) as e:
        print(f"polyfib {args.command}: {e}", file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
