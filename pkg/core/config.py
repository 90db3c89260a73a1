from __future__ import annotations
from dataclasses import dataclass, field
from collections.abc import MutableMapping
from cerberus import Validator
from utils.utils import print_rank, parse_range
import os
import yaml


# TODO: K_range is checked against the manifold's first chain only inside
# the commands; move that check into RunConfig.from_dict.

PRECISION_ENV = 'POLYA_PRECISION_BITS'


def from_dict(cls, config):
    """
    Helper function to convert a dict to a class
    """
    return cls(**config)


class Config(MutableMapping):
    """Base class for configuration classes."""
    def get(self, k: str, default=None):
        result = getattr(self, k, default)
        if result is None:
            return default
        return result

    def lookup(self, s: str, default=None):
        toks = s.split('.')
        child = getattr(self, toks[0], default)
        if len(toks) == 1:
            return child if child is not None else default
        elif isinstance(child, Config):
            return child.lookup('.'.join(toks[1:]), default)
        else:
            return default

    def __getitem__(self, k):
        return getattr(self, k)

    def __setitem__(self, k, v):
        setattr(self, k, v)

    def __delitem__(self, k):
        delattr(self, k)

    def __iter__(self):
        return iter(self.__dict__)

    def __len__(self):
        return len(self.__dict__)

    def __contains__(self, k):
        return getattr(self, k, None) is not None

    def pop(self, k, default=None):
        result = self.get(k, default)
        if k in self:
            delattr(self, k)
        return result


@dataclass
class ManifoldConfig(Config):
    """Manifold selection.

Attributes:
    kind (str): sphere, hemisphere or wedge.

    n (int): dimension, at least 2.

    p (int): number of wedges tiling the hemisphere, only read for wedges.

Example:
    .. code-block:: yaml

        manifold:
            kind: hemisphere
            n: 3
"""
    kind: str = 'hemisphere'
    n: int = None
    p: int = 1

    @staticmethod
    def from_dict(config) -> ManifoldConfig:
        return from_dict(ManifoldConfig, config)

    def build(self):
        from core.spectrum import select_manifold
        return select_manifold(self.kind, self.n, self.p)


@dataclass
class RunConfig(Config):
    """Configuration of one verifier run.

Every subcommand reads the same structure; fields that a command does not
use are ignored by it.

Attributes:
    command (str): spectrum, check-polya, bounds, certify, averages, scan-theta, wedge,
        remainders or functional.

    manifold (ManifoldConfig): manifold selector.

    k_range (str): inclusive order range ``A..B``.

    K_range (str): inclusive chain range ``A..B``.

    bits (int): mantissa bits of the real context, at least 53.

    tol (float): absolute comparison tolerance before scaling; defaults to ``2**-(bits/2)``.

    format (str): csv or json.

    out (str): output file, stdout when empty.

    jobs (int): worker processes for range scans.

    names (list): bound names for the bounds command.

    certificate (str): qn, qtheta or mr for the certify command.

    order (int): odd Taylor order of the mr certificate.

    mode (str): chain, total or min-chain for the averages command.

    K_bound (int): scan bound for constants and thresholds.

    sharpness (str): k_minus, k_plus or all; turns the bounds command into a
        normalized gap scan along that subsequence.

    remainder (str): tilde_minus or hat_minus on the hemisphere, minus or plus
        on the sphere; defaults to the first one of the manifold.

    functional (str): R, Phi, Theta, Omega, Psi or PolJ for the functional command.

    offset (int): chain offset j of PolJ; every offset when empty.

Example:
    .. code-block:: yaml

        command: bounds
        manifold:
            kind: sphere
            n: 2
        k_range: 0..20
        names: [sphere_upper]
        bits: 192
        format: csv
"""
    command: str = None
    manifold: ManifoldConfig = None
    k_range: str = None
    K_range: str = None
    bits: int = 192
    tol: float = None
    format: str = 'csv'
    out: str = None
    jobs: int = 1
    names: list = field(default_factory=list)
    certificate: str = 'qtheta'
    order: int = 3
    mode: str = 'chain'
    K_bound: int = 300
    sharpness: str = None
    remainder: str = None
    functional: str = 'Theta'
    offset: int = None

    @property
    def k_bounds(self):
        return parse_range(self.k_range) if self.k_range else None

    @property
    def K_bounds(self):
        return parse_range(self.K_range) if self.K_range else None

    @staticmethod
    def from_dict(config) -> RunConfig:

        # Validate schema in config file
        schema = eval(open(os.path.join(os.path.dirname(__file__), 'schema.py'), 'r').read())
        v = Validator(schema)
        if not v.validate(config, schema):
            raise ValueError('Missing {} argument in config file '.format(v.errors))

        # Normalize default values
        original_config = config
        config = v.normalized(config)
        diff = config.keys() - original_config.keys()
        if len(diff) > 0:
            print_rank("Assigning default values for: {}".format(sorted(diff)))

        # Empty ranges fail here rather than deep inside a scan
        for key in ('k_range', 'K_range'):
            if config.get(key):
                parse_range(config[key])

        config = dict(config)
        config['manifold'] = ManifoldConfig.from_dict(config['manifold'])
        return from_dict(RunConfig, config)


def _merge(base, override):
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_run_config(flags, config_path=None, environ=None):
    """Resolve a RunConfig from its sources.

    Precedence, strongest first: explicit flags (entries that are not None),
    the YAML file at ``config_path``, the ``POLYA_PRECISION_BITS`` environment
    variable (precision only), the schema defaults.

    Raises:
        ValueError: malformed environment value, YAML that is not a mapping,
            or a config that fails validation.
    """
    environ = os.environ if environ is None else environ
    config = {}
    if environ.get(PRECISION_ENV):
        try:
            config['bits'] = int(environ[PRECISION_ENV])
        except ValueError:
            raise ValueError(f'{PRECISION_ENV} must be an integer, got {environ[PRECISION_ENV]!r}')

    if config_path is not None:
        with open(config_path, 'r', encoding='utf8') as fid:
            loaded = yaml.safe_load(fid) or {}
        if not isinstance(loaded, dict):
            raise ValueError(f'{config_path} does not hold a mapping')
        config = _merge(config, loaded)

    def _prune(d):
        out = {}
        for key, value in d.items():
            if isinstance(value, dict):
                value = _prune(value)
                if value:
                    out[key] = value
            elif value is not None:
                out[key] = value
        return out

    config = _merge(config, _prune(flags))
    return RunConfig.from_dict(config)
