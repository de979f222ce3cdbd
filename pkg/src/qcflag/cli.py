"""
Command-line interface.

Subcommands: schubert, relations, qproduct, gw, verify.  Every subcommand
takes --format text|json; JSON output is a single document with the shape
{"command", "inputs", "result", "meta"} and deterministic key order.

Exit codes: 0 on success, 1 on usage or input errors, 2 when an internal
consistency check fails (including any failing check under `verify`).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import CacheFormatError, ConsistencyError
from .permutations import length, parse_perm
from .quantum import (
    CACHE_DIR_ENV,
    flag_ring,
    gromov_witten,
    quantum_product,
    quantum_relation_determinant,
    quantum_relation_fulton,
    quantum_relation_recursive,
)
from .schubert import schubert_polynomial
from .verify import DEFAULT_SEED, run_checks

__all__ = ['main']

_METHODS = {
    'recursion': quantum_relation_recursive,
    'determinant': quantum_relation_determinant,
    'fulton': quantum_relation_fulton,
}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage by default; this interface reserves 2
    for consistency failures, so usage errors are remapped to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f'{self.prog}: error: {message}\n')
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog='qcflag', description=__doc__.strip().splitlines()[0])
    parser.add_argument('--version', action='version', version=f'qcflag {__version__}')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    schubert = sub.add_parser('schubert', help='print a Schubert polynomial')
    schubert.add_argument('--perm', required=True,
                          help="one-line notation, e.g. '3 1 2' or '3,1,2'")
    schubert.add_argument('--n', type=int, default=None,
                          help='number of variables (default: size of the permutation)')
    _common_flags(schubert)

    relations = sub.add_parser('relations', help='print the quantum ideal generators')
    relations.add_argument('--n', type=int, required=True, help='rank of the flag variety')
    relations.add_argument('--method', choices=[*_METHODS, 'all'], default='all',
                           help="construction route; 'all' cross-checks every route")
    _common_flags(relations)

    qproduct = sub.add_parser('qproduct', help='quantum product of two Schubert classes')
    qproduct.add_argument('--n', type=int, required=True, help='rank of the flag variety')
    qproduct.add_argument('--u', required=True, help='first permutation, one-line notation')
    qproduct.add_argument('--v', required=True, help='second permutation, one-line notation')
    _cache_flag(qproduct)
    _common_flags(qproduct)

    gw = sub.add_parser('gw', help='a genus-zero Gromov-Witten invariant')
    gw.add_argument('--n', type=int, required=True, help='rank of the flag variety')
    gw.add_argument('--perms', required=True,
                    help="semicolon-separated permutations, e.g. '2 1 3; 1 3 2; 3 2 1'")
    gw.add_argument('--deg', required=True,
                    help="curve multidegree, e.g. '1 0' (one entry per q variable)")
    _cache_flag(gw)
    _common_flags(gw)

    verify = sub.add_parser('verify', help='run the named self-consistency checks')
    verify.add_argument('--n', type=int, required=True, help='rank of the flag variety')
    verify.add_argument('--level', choices=['smoke', 'full'], default='smoke',
                        help='sample size for randomised checks')
    verify.add_argument('--seed', type=int, default=DEFAULT_SEED,
                        help='seed for randomised checks')
    _cache_flag(verify)
    _common_flags(verify)

    return parser


def _common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument('--format', choices=['text', 'json'], default='text',
                     help='output format')


def _cache_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument('--cache-dir', default=None,
                     help=f'directory for ring caches (default: ${CACHE_DIR_ENV})')


def _document(command: str, inputs: dict, result) -> dict:
    return {
        'command': command,
        'inputs': inputs,
        'result': result,
        'meta': {'package': 'qcflag', 'version': __version__},
    }


def _emit(args, document: dict, text: str) -> None:
    if args.format == 'json':
        print(json.dumps(document, indent=1))
    else:
        print(text)


def _perm_json(w) -> list[int]:
    return [int(i) for i in w]


def _cmd_schubert(args) -> int:
    w = parse_perm(args.perm)
    n = args.n if args.n is not None else len(w)
    poly = schubert_polynomial(w, n)
    document = _document(
        'schubert',
        {'perm': _perm_json(w), 'n': n},
        {'polynomial': poly.to_json_terms(), 'text': str(poly)},
    )
    _emit(args, document, str(poly))
    return 0


def _cmd_relations(args) -> int:
    n = args.n
    if n < 1:
        raise ValueError(f'rank must be at least 1, got {n}')
    if args.method == 'all':
        routes = {name: [fn(k, n) for k in range(1, n + 1)] for name, fn in _METHODS.items()}
        first = routes['recursion']
        for name, polys in routes.items():
            if polys != first:
                raise ConsistencyError(f'route {name} disagrees with recursion')
        relations = first
        checked = sorted(_METHODS)
    else:
        relations = [_METHODS[args.method](k, n) for k in range(1, n + 1)]
        checked = [args.method]
    lines = [f'R[{k}] = {poly}' for k, poly in enumerate(relations, start=1)]
    document = _document(
        'relations',
        {'n': n, 'method': args.method},
        {
            'routes_checked': checked,
            'relations': [poly.to_json_terms() for poly in relations],
            'text': lines,
        },
    )
    _emit(args, document, '\n'.join(lines))
    return 0


def _expansion_lines(expansion) -> list[str]:
    lines = []
    for w in sorted(expansion, key=lambda v: (length(v), v)):
        lines.append(f"{' '.join(str(i) for i in w)}: {expansion[w]}")
    return lines


def _cmd_qproduct(args) -> int:
    u, v = parse_perm(args.u), parse_perm(args.v)
    ring = flag_ring(args.n, cache_dir=args.cache_dir)
    expansion = quantum_product(u, v, ring)
    lines = _expansion_lines(expansion)
    document = _document(
        'qproduct',
        {'n': args.n, 'u': _perm_json(u), 'v': _perm_json(v)},
        {
            'terms': [
                {
                    'perm': _perm_json(w),
                    'coefficient': expansion[w].to_json_terms(),
                    'text': str(expansion[w]),
                }
                for w in sorted(expansion, key=lambda z: (length(z), z))
            ],
            'text': lines,
        },
    )
    _emit(args, document, '\n'.join(lines) if lines else '0')
    return 0


def _cmd_gw(args) -> int:
    ws = [parse_perm(part) for part in args.perms.split(';')]
    try:
        degrees = tuple(int(part) for part in args.deg.replace(',', ' ').split())
    except ValueError:
        raise ValueError(f'could not parse degrees from {args.deg!r}') from None
    ring = flag_ring(args.n, cache_dir=args.cache_dir)
    value = gromov_witten(ws, degrees, ring)
    document = _document(
        'gw',
        {
            'n': args.n,
            'perms': [_perm_json(w) for w in ws],
            'degrees': list(degrees),
        },
        {'value': value},
    )
    _emit(args, document, str(value))
    return 0


def _cmd_verify(args) -> int:
    flag_ring(args.n, cache_dir=args.cache_dir)
    results = run_checks(args.n, level=args.level, seed=args.seed)
    failed = [r for r in results if not r.passed]
    lines = [
        f"{'ok  ' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results
    ]
    lines.append(
        f'{len(results) - len(failed)}/{len(results)} checks passed '
        f'(n={args.n}, level={args.level})'
    )
    document = _document(
        'verify',
        {'n': args.n, 'level': args.level, 'seed': args.seed},
        {
            'passed': not failed,
            'checks': [
                {'name': r.name, 'passed': r.passed, 'detail': r.detail} for r in results
            ],
            'text': lines,
        },
    )
    _emit(args, document, '\n'.join(lines))
    return 2 if failed else 0


_HANDLERS = {
    'schubert': _cmd_schubert,
    'relations': _cmd_relations,
    'qproduct': _cmd_qproduct,
    'gw': _cmd_gw,
    'verify': _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, CacheFormatError) as exc:
        print(f'qcflag: error: {exc}', file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f'qcflag: consistency failure: {exc}', file=sys.stderr)
        return 2


if __name__ == '__main__':
    raise SystemExit(main())
