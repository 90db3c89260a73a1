# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import os
import re
import sys
import io
import json
import logging
import time
import yaml
import pandas as pd
from fractions import Fraction
from multiprocessing import Pool


def init_logging(log_dir=None, loglevel=logging.DEBUG, stream=sys.stderr):
    """Initialize logging

    A ``log.out`` file is written inside ``log_dir`` when one is given. The
    stream handler goes to stderr so that tables printed on stdout stay clean.
    """

    root = logging.getLogger()
    root.setLevel(loglevel)
    if log_dir is not None:
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, "log.out")
        root.addHandler(logging.FileHandler(log_file))
    handler = logging.StreamHandler(stream=stream)
    root.addHandler(handler)


def print_rank(str, loglevel=logging.INFO):

    str = "{} : {}".format(time.ctime(), str)
    logging.log(loglevel, str)


def write_yaml(save_path, config):
    with open(save_path, 'w', encoding='utf8') as yaml_file:
        yaml.dump(config, yaml_file, default_flow_style=False)


def try_except_save(save_fn, **kwargs):
    """ Try to write it out 3 times."""

    max_attempts = 3
    for attempt in range(1, max_attempts+1):
        try:
            save_fn(**kwargs)
        except IOError:
            print_rank("Write operation failed on {} attempt".format(attempt), loglevel=logging.WARNING)
        else:
            print_rank("Write operation succeeded in {} attempts".format(attempt), loglevel=logging.DEBUG)
            return True
    return False


_RANGE = re.compile(r'^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$')


def parse_range(text):
    """Parse an inclusive ``A..B`` range into a pair of integers.

    Raises:
        ValueError: malformed text or B < A (empty range).
    """
    match = _RANGE.match(str(text))
    if match is None:
        raise ValueError(f'cannot parse range {text!r}, expected A..B')
    lo, hi = int(match.group(1)), int(match.group(2))
    if hi < lo:
        raise ValueError(f'empty range {text!r}')
    return lo, hi


def split_range(lo, hi, parts):
    """Split ``[lo, hi]`` into at most ``parts`` contiguous inclusive pieces, in order."""
    total = hi - lo + 1
    parts = max(1, min(parts, total))
    size, extra = divmod(total, parts)
    pieces, start = [], lo
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0) - 1
        pieces.append((start, stop))
        start = stop + 1
    return pieces


def ordered_map(fn, items, jobs=1):
    """Map ``fn`` over ``items`` with a worker pool; results come back in item order.

    ``fn`` must be picklable (module level function or ``functools.partial`` of one).
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with Pool(processes=min(jobs, len(items))) as pool:
        return list(pool.imap(fn, items))


class RealText(str):
    """A real already rendered by :func:`format_real`; pickles across worker processes."""


def format_real(value, bits):
    """Scientific notation with bits/3 significant digits."""
    if isinstance(value, RealText):
        return str(value)
    digits = max(1, bits // 3)
    mp = getattr(value, 'context', None)
    if mp is None:
        import mpmath
        mp = mpmath.mp
        value = mpmath.mpf(value)
    return mp.nstr(value, digits, strip_zeros=False, min_fixed=0, max_fixed=0,
                   show_zero_exponent=True)


def _cell_kind(value):
    if value is None:
        return 'empty'
    if isinstance(value, RealText):
        return 'real'
    if isinstance(value, bool):
        return 'bool'
    if isinstance(value, (int, Fraction)):
        return 'exact'
    if isinstance(value, str):
        return 'text'
    return 'real'


def freeze_row(row, bits):
    """Replace real cells of a row by their rendered text."""
    return {k: RealText(format_real(v, bits)) if _cell_kind(v) == 'real' else v for k, v in row.items()}


def render_cell(value, bits):
    """Render one cell for CSV output."""
    kind = _cell_kind(value)
    if kind == 'empty':
        return ''
    if kind == 'bool':
        return 'true' if value else 'false'
    if kind == 'exact' or kind == 'text':
        return str(value)
    return format_real(value, bits)


def json_cell(value, bits):
    """Exact numbers become decimal strings, reals carry their precision."""
    kind = _cell_kind(value)
    if kind == 'empty':
        return None
    if kind == 'bool':
        return value
    if kind == 'exact' or kind == 'text':
        return str(value)
    return {'value': format_real(value, bits), 'bits': bits}


def render_table(rows, columns, fmt='csv', bits=192, summary=None, title=None):
    """Render rows (dicts keyed by column) as CSV or JSON text."""
    if fmt == 'csv':
        frame = pd.DataFrame([[render_cell(row.get(c), bits) for c in columns] for row in rows],
                             columns=columns, dtype=str)
        buf = io.StringIO()
        frame.to_csv(buf, index=False)
        return buf.getvalue()
    elif fmt == 'json':
        document = {
            'command': title,
            'bits': bits,
            'columns': list(columns),
            'rows': [{c: json_cell(row.get(c), bits) for c in columns} for row in rows],
            'summary': {k: json_cell(v, bits) for k, v in (summary or {}).items()},
        }
        return json.dumps(document, indent=2) + '\n'
    else:
        raise ValueError(f'cannot use output format {fmt}')


def write_table(text, out=None):
    """Write rendered text to ``out`` (UTF-8) or stdout."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return True

    def _save(path, payload):
        folder = os.path.dirname(path)
        if folder:
            os.makedirs(folder, exist_ok=True)
        with open(path, 'w', encoding='utf8', newline='') as fid:
            fid.write(payload)

    return try_except_save(_save, path=out, payload=text)
