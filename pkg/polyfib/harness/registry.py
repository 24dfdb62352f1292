# polyfib/harness/registry.py
"""
Identity registry.

Identities live in YAML data files: the packaged ``identities.yml`` plus any
files listed under ``identities`` in the polyfib config. Each record names two
evaluation plans and the plain-text statement it verifies::

    - id: alt_lucas_2j_dilog
      statement: "sum (-1)^(j-1) L_{2j} / j^2 = pi^2/6 + 2 log^2 alpha"
      regularized: true
      lhs: {constant: alt_lucas_2j_dilog}
      rhs: {series: {family: L, r: 2, k: 2, weight: alternating}, method: bernoulli_form}

Plan kinds
----------
series    SeriesSpec fields plus ``method`` (direct, polylog_form, bernoulli_form,
          rational_gf, log_form, trig_form, abel_oracle)
constant  named constant id plus optional ``params``
special   golden-ratio polylog special value, closed-form side
li_sum    list of [coef, k, argument] terms with optional forced ``path``
"""

import logging
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import yaml

from ..fibseries import (SeriesSpec, abel_regularized_sum, bernoulli_form, direct_sum, generating_function,
                         get_constant, log_series_form, named_constant, polylog_form, quarter_series_form,
                         trig_series_form)
from ..fibseries.spec import Method, Weight
from ..polylog import get_special, li_sum, special_value
from ..utils import UnknownIdentityError

logger = logging.getLogger(__name__)

PACKAGED_REGISTRY = Path(__file__).with_name('identities.yml')

SPECIAL_VALUE = 'special_value'
LI_PREFIX = 'li:'

_SPEC_FIELDS = ('family', 'r', 's', 'k', 'z', 'weight', 'x', 'part', 'start', 'side')


# method tag -> callable(spec, prec) returning SeriesValue
_SERIES_METHODS: Dict[str, Callable] = {
    Method.DIRECT: lambda spec, prec: direct_sum(spec, prec=prec),
    Method.POLYLOG_FORM: lambda spec, prec: polylog_form(spec, prec=prec),
    Method.BERNOULLI_FORM: lambda spec, prec: _bernoulli(spec, prec),
    Method.RATIONAL_GF: lambda spec, prec: generating_function(spec.family, spec.r, spec.s, spec.z,
                                                               spec.start, prec=prec),
    Method.LOG_FORM: lambda spec, prec: log_series_form(spec.family, spec.r, spec.s, spec.z, prec=prec),
    Method.TRIG_FORM: lambda spec, prec: trig_series_form(spec.family, spec.r, spec.s, spec.z, spec.x,
                                                          spec.part, prec=prec),
    Method.ABEL_ORACLE: lambda spec, prec: abel_regularized_sum(spec),
}


def _bernoulli(spec: SeriesSpec, prec: int):
    if spec.weight == Weight.QUARTER:
        return quarter_series_form(spec.family, spec.r, spec.k, prec=prec)
    return bernoulli_form(spec, prec=prec)


class PlanResult:
    """Value of one plan with the error estimate its method reports."""

    __slots__ = ('value', 'error_estimate')

    def __init__(self, value, error_estimate=0):
        self.value = value
        self.error_estimate = error_estimate


class Plan:
    """
    One side of an identity.

    Attributes
    ----------
    kind : str
        series, constant, special or li_sum.
    method : str
        Method tag used by the independence audit.
    """

    __slots__ = ('kind', 'method', 'params')

    KINDS = ('series', 'constant', 'special', 'li_sum')

    def __init__(self, kind: str, method: str, params: Dict[str, Any]):
        self.kind = kind
        self.method = method
        self.params = params

    @classmethod
    def from_dict(cls, data: Dict[str, Any], where: str = '') -> 'Plan':
        if not isinstance(data, dict):
            raise ValueError(f"{where}: plan must be a mapping, got {data!r}")
        kinds = [k for k in cls.KINDS if k in data]
        if len(kinds) != 1:
            raise ValueError(f"{where}: plan needs exactly one of {', '.join(cls.KINDS)}")
        kind = kinds[0]

        if kind == 'series':
            fields = data['series']
            unknown = set(fields) - set(_SPEC_FIELDS)
            if unknown:
                raise ValueError(f"{where}: unknown series fields {sorted(unknown)}")
            method = data.get('method')
            if method not in _SERIES_METHODS:
                raise ValueError(f"{where}: series plans need a method in {', '.join(_SERIES_METHODS)}, "
                                 f"got {method!r}")
            SeriesSpec(**fields)
            return cls(kind, method, dict(fields))
        if kind == 'constant':
            params = dict(data.get('params') or {})
            get_constant(data['constant']).bind(**params)
            return cls(kind, Method.NAMED_CONSTANT, {'name': data['constant'], 'params': params})
        if kind == 'special':
            get_special(data['special'])
            return cls(kind, SPECIAL_VALUE, {'name': data['special']})

        terms = [(Fraction(str(c)), int(k), str(arg)) for c, k, arg in data['li_sum']]
        path = data.get('path')
        return cls(kind, LI_PREFIX + (path or 'auto'), {'terms': terms, 'path': path})

    def spec(self) -> Optional[SeriesSpec]:
        if self.kind == 'series':
            return SeriesSpec(**self.params)
        if self.kind == 'constant':
            return get_constant(self.params['name']).series(**self.params['params'])
        return None

    def evaluate(self, prec: int) -> PlanResult:
        """Evaluate at ``prec`` bits (abel_oracle plans use the configured oracle precision)."""
        if self.kind == 'series':
            result = _SERIES_METHODS[self.method](self.spec(), prec)
            return PlanResult(result.value, result.error_estimate)
        if self.kind == 'constant':
            result = named_constant(self.params['name'], prec=prec, **self.params['params'])
            return PlanResult(result.value)
        if self.kind == 'special':
            return PlanResult(special_value(self.params['name'], prec=prec))
        result = li_sum(self.params['terms'], path=self.params['path'], prec=prec)
        return PlanResult(result.value, result.tail_bound)

    def describe(self) -> str:
        if self.kind == 'series':
            return f"{self.method}({self.spec().label()})"
        if self.kind == 'constant':
            params = ', '.join(f"{k}={v}" for k, v in self.params['params'].items())
            return f"named_constant({self.params['name']}{', ' + params if params else ''})"
        if self.kind == 'special':
            return f"special_value({self.params['name']})"
        terms = ' + '.join(f"{c} Li_{k}({arg})" for c, k, arg in self.params['terms'])
        return f"{self.method}[{terms}]"


class IdentityRecord:
    """
    One registry entry.

    Attributes
    ----------
    id : str
    statement : str
        The identity in plain text.
    quote : str
        The printed source formula the record checks; empty for records
        that have no printed counterpart.
    aliases : tuple of str
        Extra ids :func:`get_record` resolves to this record.
    lhs, rhs : Plan
    domain : dict
        ``undefined`` (reason string: always skipped) and ``min_prec`` (bits).
    regularized : bool
        The defining series diverges classically; the value is its continuation.
    derivation_check : bool
        Both sides legitimately share a method tag.
    oracle : Plan or None
        Extra low-precision check of the rhs value, folded into the status.
    """

    __slots__ = ('id', 'statement', 'lhs', 'rhs', 'domain', 'regularized', 'derivation_check',
                 'oracle', 'source', 'quote', 'aliases')

    def __init__(self, id: str, statement: str, lhs: Plan, rhs: Plan, domain: Optional[Dict] = None,
                 regularized: bool = False, derivation_check: bool = False, oracle: Optional[Plan] = None,
                 source: Optional[Path] = None, quote: str = '', aliases: Sequence[str] = ()):
        self.id = id
        self.statement = statement
        self.lhs = lhs
        self.rhs = rhs
        self.domain = dict(domain or {})
        self.regularized = regularized
        self.derivation_check = derivation_check
        self.oracle = oracle
        self.source = source
        self.quote = quote
        self.aliases = tuple(aliases)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], source: Optional[Path] = None) -> 'IdentityRecord':
        record_id = data.get('id')
        if not record_id:
            raise ValueError(f"{source}: record without id: {data!r}")
        for field in ('statement', 'lhs', 'rhs'):
            if field not in data:
                raise ValueError(f"{source}: record {record_id} is missing '{field}'")
        domain = data.get('domain') or {}
        unknown = set(domain) - {'undefined', 'min_prec'}
        if unknown:
            raise ValueError(f"{source}: record {record_id} has unknown domain keys {sorted(unknown)}")
        aliases = data.get('aliases') or []
        if isinstance(aliases, str) or not all(isinstance(a, str) and a for a in aliases):
            raise ValueError(f"{source}: record {record_id} needs aliases as a list of strings, got {aliases!r}")
        oracle = data.get('oracle')
        return cls(
            id=str(record_id),
            statement=str(data['statement']),
            lhs=Plan.from_dict(data['lhs'], f"{record_id}.lhs"),
            rhs=Plan.from_dict(data['rhs'], f"{record_id}.rhs"),
            domain=domain,
            regularized=bool(data.get('regularized', False)),
            derivation_check=bool(data.get('derivation_check', False)),
            oracle=Plan.from_dict(oracle, f"{record_id}.oracle") if oracle else None,
            source=source,
            quote=str(data.get('quote') or ''),
            aliases=aliases,
        )

    def skip_reason(self, prec: int) -> Optional[str]:
        """Why this record is skipped at ``prec``, or None."""
        if self.domain.get('undefined'):
            return str(self.domain['undefined'])
        min_prec = self.domain.get('min_prec')
        if min_prec and prec < int(min_prec):
            return f"needs prec >= {min_prec}"
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'statement': self.statement,
            'quote': self.quote,
            'aliases': ', '.join(self.aliases),
            'lhs': self.lhs.describe(),
            'rhs': self.rhs.describe(),
            'regularized': self.regularized,
            'derivation_check': self.derivation_check,
            'oracle': self.oracle.describe() if self.oracle else '',
        }

    def __repr__(self):
        return f"IdentityRecord({self.id!r}, {self.lhs.method} vs {self.rhs.method})"


def load_records(path: Union[str, Path]) -> List[IdentityRecord]:
    """Parse one registry file."""
    path = Path(path)
    with open(path, 'r', encoding='utf-8') as f:
        data = yaml.safe_load(f) or []
    if isinstance(data, dict):
        data = data.get('identities') or []
    if not isinstance(data, list):
        raise ValueError(f"Registry file {path} must hold a list of records")
    records = [IdentityRecord.from_dict(item, path) for item in data]
    logger.debug(f"Loaded {len(records)} identities from {path}")
    return records


def _merge_records(files: Sequence[Path]) -> Tuple[IdentityRecord, ...]:
    records: Dict[str, IdentityRecord] = {}
    names: Dict[str, IdentityRecord] = {}
    for path in files:
        for record in load_records(path):
            for name in (record.id, *record.aliases):
                if name in names:
                    raise ValueError(f"Duplicate identity id {name!r} in {path} "
                                     f"(first defined by {names[name].id} in {names[name].source})")
                names[name] = record
            records[record.id] = record
    return tuple(records.values())


@lru_cache(maxsize=8)
def _cached_registry(files: Tuple[Path, ...]) -> Tuple[IdentityRecord, ...]:
    return _merge_records(files)


def registry_files() -> Tuple[Path, ...]:
    from ..config import get_identity_files
    return (PACKAGED_REGISTRY, *get_identity_files())


def registry() -> List[IdentityRecord]:
    """
    All identity records, packaged ones first, in file order.

    Example
    -------
    ::

        for record in registry():
            print(record.id, record.statement)
    """
    return list(_cached_registry(registry_files()))


def get_record(record_id: str) -> IdentityRecord:
    """Look up a record by id or by one of its aliases."""
    for record in registry():
        if record.id == record_id or record_id in record.aliases:
            return record
    raise UnknownIdentityError(f"Unknown identity id {record_id!r}")


def audit_independence(records: Optional[Sequence[IdentityRecord]] = None) -> List[str]:
    """
    Ids of verification records whose two sides share a method tag.

    Records flagged ``derivation_check`` are exempt. An empty list means the
    audit passes.
    """
    records = registry() if records is None else records
    return [r.id for r in records if not r.derivation_check and r.lhs.method == r.rhs.method]
