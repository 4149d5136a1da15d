#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# errors.py

"""
    Exceptions raised by varord.

    Every exception derives from VarordError, and from the built-in exception a
    caller would naturally expect (ValueError, IndexError, ...), so that both

        except VarordError:
        except ValueError:

    catch a malformed polynomial system. The command line maps VarordError to exit
    code 2.
"""


class VarordError(Exception):
    """base class of every validation error raised by varord"""


# --- polynomial systems -----------------------
class SystemSyntaxError(VarordError, ValueError):
    """polynomial system text does not follow the grammar

    >>> str(SystemSyntaxError("expected ';'", line=1, column=8))
    "line 1, column 8: expected ';'"
    """

    def __init__(self, msg, line=None, column=None):
        self.msg = msg
        self.line = line
        self.column = column
        if line is not None:
            msg = f"line {line}, column {column}: {msg}"
        super().__init__(msg)


class VariableIndexError(SystemSyntaxError):
    """variable index outside x1..xn"""


class ZeroPolynomialError(VarordError, ValueError):
    """zero polynomial inside a system"""


class PermutationError(VarordError, ValueError):
    """sequence is not a permutation, or has the wrong length"""


class LabelError(VarordError, ValueError):
    """ordering label out of range"""


# --- projection -------------------------------
class DegreeError(VarordError, ArithmeticError):
    """polynomial degree too small for a resultant or discriminant"""


class OrderingLimitError(VarordError, ValueError):
    """too many variables to enumerate every ordering"""


# --- datasets ---------------------------------
class TimingsError(VarordError, ValueError):
    """timings cannot produce a label (every entry infinite, negative, NaN, ...)"""


class SchemaError(VarordError, ValueError):
    """dataset file does not follow the expected schema

    >>> str(SchemaError("missing column", column="label"))
    "missing column [column 'label']"
    >>> str(SchemaError("invalid value -x-", row=4, column="f1"))
    "invalid value -x- [row 4, column 'f1']"
    """

    def __init__(self, msg, row=None, column=None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column '{column}'")
        if where:
            msg = f"{msg} [{', '.join(where)}]"
        super().__init__(msg)


class SplitError(VarordError, ValueError):
    """dataset cannot be split as requested"""


class SampleError(VarordError, ValueError):
    """not enough records to draw the requested sample"""


class AugmentError(VarordError, ValueError):
    """record cannot be expanded into its orbit"""


# --- models -----------------------------------
class HyperparamError(VarordError, ValueError):
    """invalid hyperparameters"""


class ModelError(VarordError, ValueError):
    """model cannot be trained, used, or read back"""


class ModelVersionError(ModelError):
    """model file written with another schema version"""


# --- configuration / pipeline -----------------
class ConfigError(VarordError, ValueError):
    """invalid configuration or parameter file"""


class ExperimentError(VarordError, ValueError):
    """experiment cannot run on the given datasets"""
