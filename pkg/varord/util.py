#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# util.py

# --- import -----------------------------------
# import from standard lib
import json
import logging
import math
from pathlib import Path

# import from other lib
import numpy as np

# import from my project

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

# largest seed accepted (64-bit unsigned)
SEED_MAX = 2**64 - 1


# ----------------------------------------------
def check_seed(seed_):
    """check seed is a non-negative 64-bit integer

    >>> check_seed(42)
    42
    >>> check_seed(-1)
    Traceback (most recent call last):
    ...
    ValueError: Invalid seed -(-1)-, must be an integer in [0, 2**64)
    """
    if isinstance(seed_, bool) or not isinstance(seed_, (int, np.integer)) or not 0 <= seed_ <= SEED_MAX:
        raise ValueError(f"Invalid seed -({seed_})-, must be an integer in [0, 2**64)")
    return int(seed_)


def rng(seed_, *keys):
    """independent random generator derived from (seed, keys...)

    Generators derived from the same seed and keys produce the same stream,
    whatever the order they are created in.

    >>> int(rng(1, 2).integers(1000)) == int(rng(1, 2).integers(1000))
    True
    """
    return np.random.default_rng([check_seed(seed_), *(int(k) for k in keys)])


def chunks(lst, n):
    """Yield successive n-sized chunks from lst."""
    for i in range(0, len(lst), n):
        yield lst[i : i + n]


# ----------------------------------------------
def json_default(obj_):
    """JSON encoding of numpy scalars and arrays"""
    if isinstance(obj_, np.integer):
        return int(obj_)
    if isinstance(obj_, np.floating):
        return float(obj_)
    if isinstance(obj_, np.ndarray):
        return obj_.tolist()
    raise TypeError(f"Object of type {type(obj_).__name__} is not JSON serializable")


def dumps(obj_, indent=2):
    """canonical JSON text (sorted keys, fixed separators)

    >>> dumps({"b": 1, "a": [1.5, None]}, indent=None)
    '{"a": [1.5, null], "b": 1}'
    """
    return json.dumps(
        obj_, sort_keys=True, indent=indent, ensure_ascii=False, default=json_default
    )


def write_text(text_, path_):
    """write UTF-8 text with '\\n' line endings, creating parent directories"""
    path = Path(path_)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(text_)
    _logger.debug(f"write -{path}-")
    return path


def write_json(obj_, path_):
    return write_text(dumps(obj_) + "\n", path_)


def read_json(path_):
    with open(path_, "r", encoding="utf-8") as file:
        return json.load(file)


# ----------------------------------------------
def float_to_text(x_):
    """text of a float, 'inf' for +infinity

    >>> float_to_text(2.0), float_to_text(float("inf")), float_to_text(0.1)
    ('2.0', 'inf', '0.1')
    """
    x = float(x_)
    if math.isinf(x) and x > 0:
        return "inf"
    return repr(x)


def text_to_float(s_):
    """read a float written by float_to_text"""
    s = str(s_).strip()
    if s.lower() in ("inf", "+inf", "infinity"):
        return math.inf
    return float(s)


def fmt(x_, digits=4):
    """fixed-point text used in reports

    >>> fmt(1 / 6)
    '0.1667'
    """
    return f"{x_:.{digits}f}"


if __name__ == "__main__":

    import doctest

    doctest.testmod(optionflags=doctest.ELLIPSIS | doctest.NORMALIZE_WHITESPACE)
