#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# timing.py

"""
    Wall clock of a command, and of its long steps, written to the log.

    >>> with timed("nothing") as clock:
    ...     pass
    >>> clock.seconds >= 0
    True
"""

# --- import -----------------------------------
# import from standard lib
import atexit
import logging
from contextlib import contextmanager
from datetime import timedelta
from time import localtime, perf_counter, strftime

# import from other lib
# import from my project

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

_session = None


def _now():
    return strftime("%Y-%m-%d %H:%M:%S", localtime())


def _duration(seconds_):
    return str(timedelta(seconds=round(seconds_, 3)))


class Clock(object):
    """seconds elapsed since creation, frozen by stop()"""

    def __init__(self, name):
        self.name = name
        self._t0 = perf_counter()
        self._t1 = None

    @property
    def seconds(self):
        end = self._t1 if self._t1 is not None else perf_counter()
        return end - self._t0

    def stop(self):
        if self._t1 is None:
            self._t1 = perf_counter()
        return self.seconds

    def __repr__(self):
        return f"Clock({self.name!r}, {_duration(self.seconds)})"


@contextmanager
def timed(name_):
    """log the duration of the enclosed block, at debug level"""
    clock = Clock(name_)
    try:
        yield clock
    finally:
        clock.stop()
        _logger.debug(f"{name_}: {_duration(clock.seconds)}")


def _banner(text_, duration_=None):
    line = "-" * 40
    _logger.info(line)
    _logger.info(f"{_now()} - {text_}")
    if duration_ is not None:
        _logger.info(f"Elapsed time: {duration_}")
    _logger.info(line)


def _end():
    if _session is not None:
        _banner(f"End {_session.name}", _duration(_session.stop()))


def start(name_="Program"):
    """log start banner, and the end banner with elapsed time at exit"""
    global _session

    if _session is None:
        atexit.register(_end)
    _session = Clock(name_)
    _banner(f"Start {name_}")
    return _session


def elapsed():
    """seconds since start(), None if never started"""
    if _session is None:
        return None
    return _session.seconds
