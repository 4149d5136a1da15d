#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# polysys.py

"""
    Exact sparse multivariate polynomials over Q, polynomial systems, variable
    permutations and ordering labels.

    Variables are 0-based internally: index i is the variable x{i+1} of the text
    format. A monomial is a tuple of non-negative exponents, one per variable.

    Example usage:

    from varord.polysys import parse_system, apply_permutation, VarPermutation

    s = parse_system("vars 3; x1^2 + x2")
    apply_permutation(s, VarPermutation((1, 0, 2)))   # vars 3; x2^2 + x1
"""

# --- import -----------------------------------
# import from standard lib
import itertools
import logging
import math
import re
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

# import from other lib
# import from my project
from varord.errors import (
    LabelError,
    PermutationError,
    SystemSyntaxError,
    VariableIndexError,
    ZeroPolynomialError,
)

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)


# ----------------------------------------------
def _norm(c_):
    """store integral rationals as int, others as Fraction"""
    if type(c_) is int:
        return c_
    if c_.denominator == 1:
        return c_.numerator
    return c_


def _check_coeff(c_):
    """validate a user supplied coefficient"""
    if isinstance(c_, bool) or not isinstance(c_, (int, Fraction)):
        raise TypeError(
            f"Invalid coefficient type -{c_!r}-, coefficient must be int or Fraction"
        )
    return _norm(c_)


def _div(a_, b_):
    """exact rational quotient"""
    if type(a_) is int and type(b_) is int:
        q, r = divmod(a_, b_)
        if r == 0:
            return q
    return _norm(Fraction(a_) / b_)


def _grlex(mono_):
    """graded lexicographic key, x1 > x2 > ... > xn"""
    return (sum(mono_), mono_)


def _canonical_terms(acc_):
    """drop zero coefficients and sort terms by descending graded lex order"""
    return tuple(
        sorted(
            ((m, _norm(c)) for m, c in acc_.items() if c != 0),
            key=lambda t: _grlex(t[0]),
            reverse=True,
        )
    )


def _add_mono(m1_, m2_):
    return tuple(a + b for a, b in zip(m1_, m2_))


# ----------------------------------------------
class Polynomial(object):
    """immutable sparse polynomial with exact rational coefficients

    Terms are kept in canonical form: no zero coefficient, no duplicate monomial,
    sorted by descending graded lexicographic order.

    >>> p = Polynomial({(2, 1, 0): 1, (0, 0, 0): -1}, nvars=3)
    >>> str(p)
    'x1^2*x2 - 1'
    >>> p.total_degree(), p.degree_in(0), p.degree_in(2)
    (3, 2, 0)
    >>> str(p * p - p ** 2)
    '0'
    """

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms, nvars):
        """
        :param terms: mapping (or iterable of pairs) monomial -> coefficient
        :param nvars: number of variables
        """
        if isinstance(nvars, bool) or not isinstance(nvars, int) or nvars < 1:
            raise ValueError(f"Invalid number of variables -{nvars}-")

        items = terms.items() if hasattr(terms, "items") else terms
        acc = {}
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ValueError(
                    f"Invalid monomial -{mono}-, expected {nvars} exponents"
                )
            if any(isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in mono):
                raise ValueError(f"Invalid monomial -{mono}-, exponents must be >= 0")
            acc[mono] = acc.get(mono, 0) + _check_coeff(c)

        self._nvars = nvars
        self._terms = _canonical_terms(acc)
        self._hash = None

    @classmethod
    def _from_dict(cls, acc_, nvars_):
        """build from trusted data (monomials already validated)"""
        p = cls.__new__(cls)
        p._nvars = nvars_
        p._terms = _canonical_terms(acc_)
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars):
        return cls._from_dict({}, nvars)

    @classmethod
    def constant(cls, c, nvars):
        return cls._from_dict({(0,) * nvars: _check_coeff(c)}, nvars)

    @classmethod
    def variable(cls, v, nvars):
        """the polynomial x{v+1}"""
        _check_var(v, nvars)
        mono = tuple(1 if i == v else 0 for i in range(nvars))
        return cls._from_dict({mono: 1}, nvars)

    # --- attributes ---------------------------
    @property
    def nvars(self):
        return self._nvars

    @property
    def terms(self):
        """canonical tuple of (monomial, coefficient)"""
        return self._terms

    def __len__(self):
        return len(self._terms)

    @property
    def is_zero(self):
        return not self._terms

    @property
    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(self._terms[0][0]))

    def leading_term(self):
        """(monomial, coefficient) of the largest monomial"""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self._terms[0]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def total_degree(self):
        """largest total degree of a term, 0 for constants (and for zero)"""
        return max((sum(m) for m, _ in self._terms), default=0)

    def degree_in(self, v):
        """largest exponent of x{v+1}"""
        _check_var(v, self._nvars)
        return max((m[v] for m, _ in self._terms), default=0)

    def variables(self):
        """indices of the variables occurring with positive degree"""
        return tuple(
            i for i in range(self._nvars) if any(m[i] for m, _ in self._terms)
        )

    def sort_key(self):
        """total order used to emit polynomial sets deterministically"""
        return (
            self.total_degree(),
            len(self._terms),
            tuple((_grlex(m), Fraction(c)) for m, c in self._terms),
        )

    # --- comparison ---------------------------
    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._nvars, self._terms))
        return self._hash

    def __repr__(self):
        return f"Polynomial('{self}', nvars={self._nvars})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self._terms):
            a = -c if c < 0 else c
            body = _format_monomial(m)
            if not body:
                text = str(a)
            elif a == 1:
                text = body
            else:
                text = f"{a}*{body}"
            if k == 0:
                out.append(f"-{text}" if c < 0 else text)
            else:
                out.append(f" - {text}" if c < 0 else f" + {text}")
        return "".join(out)

    # --- arithmetic ---------------------------
    def _coerce(self, other_):
        if isinstance(other_, Polynomial):
            if other_._nvars != self._nvars:
                raise ValueError(
                    f"Number of variables differ -{self._nvars}- and -{other_._nvars}-"
                )
            return other_
        if isinstance(other_, (int, Fraction)) and not isinstance(other_, bool):
            return Polynomial.constant(other_, self._nvars)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms:
            acc[m] = acc.get(m, 0) + c
        return Polynomial._from_dict(acc, self._nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_dict({m: -c for m, c in self._terms}, self._nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = {}
        for m1, c1 in self._terms:
            for m2, c2 in other._terms:
                m = _add_mono(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial._from_dict(acc, self._nvars)

    __rmul__ = __mul__

    def __pow__(self, k):
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise ValueError(f"Invalid exponent -{k}-")
        result = Polynomial.constant(1, self._nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        """multiply every coefficient by the rational c"""
        c = _check_coeff(c)
        return Polynomial._from_dict({m: cc * c for m, cc in self._terms}, self._nvars)

    def exact_div(self, other):
        """quotient of an exact division

        :raise ZeroDivisionError: if other is zero
        :raise ArithmeticError: if other does not divide self

        >>> x = Polynomial.variable(0, 2)
        >>> y = Polynomial.variable(1, 2)
        >>> str(((x + y) * (x - 2 * y)).exact_div(x - 2 * y))
        'x1 + x2'
        """
        other = self._coerce(other)
        if other is None:
            raise TypeError(f"Invalid divisor -{other!r}-")
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")

        lm, lc = other._terms[0]
        rest = other._terms[1:]
        rem = dict(self._terms)
        quo = {}
        while rem:
            m = max(rem, key=_grlex)
            c = rem.pop(m)
            qm = tuple(a - b for a, b in zip(m, lm))
            if min(qm) < 0:
                raise ArithmeticError(f"-{other}- does not divide -{self}-")
            qc = _div(c, lc)
            quo[qm] = qc
            for m2, c2 in rest:
                t = _add_mono(qm, m2)
                value = rem.get(t, 0) - qc * c2
                if value:
                    rem[t] = value
                else:
                    rem.pop(t, None)
        return Polynomial._from_dict(quo, self._nvars)

    # --- calculus and structure ---------------
    def derivative(self, v):
        """partial derivative with respect to x{v+1}"""
        _check_var(v, self._nvars)
        acc = {}
        for m, c in self._terms:
            if m[v]:
                mm = m[:v] + (m[v] - 1,) + m[v + 1 :]
                acc[mm] = acc.get(mm, 0) + c * m[v]
        return Polynomial._from_dict(acc, self._nvars)

    def coefficients_in(self, v):
        """coefficients of self viewed as a polynomial in x{v+1}

        :return: dictionary {exponent: Polynomial free of x{v+1}}

        >>> p = parse_system("vars 2; 3*x1^2*x2 + x1^2 - x2").polys[0]
        >>> {k: str(c) for k, c in sorted(p.coefficients_in(0).items())}
        {0: '-x2', 2: '3*x2 + 1'}
        """
        _check_var(v, self._nvars)
        grouped = {}
        for m, c in self._terms:
            mm = m[:v] + (0,) + m[v + 1 :]
            grouped.setdefault(m[v], {})[mm] = c
        return {k: Polynomial._from_dict(t, self._nvars) for k, t in grouped.items()}

    def content(self):
        """positive rational gcd of the coefficients (0 for the zero polynomial)"""
        if not self._terms:
            return 0
        coeffs = [Fraction(c) for _, c in self._terms]
        num = reduce(math.gcd, (abs(c.numerator) for c in coeffs))
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in coeffs))
        return _norm(Fraction(num, den))

    def primitive(self):
        """primitive part: coprime integer coefficients, positive leading coefficient

        >>> str(Polynomial({(1, 0): Fraction(-2, 3), (0, 1): 4}, nvars=2).primitive())
        'x1 - 6*x2'
        """
        if not self._terms:
            return self
        g = Fraction(self.content())
        if self._terms[0][1] < 0:
            g = -g
        return Polynomial._from_dict({m: Fraction(c) / g for m, c in self._terms}, self._nvars)

    def permuted(self, perm):
        """rename variables: the exponent of x{perm(i)+1} in the image is the exponent
        of x{i+1} in self"""
        if len(perm) != self._nvars:
            raise PermutationError(
                f"Invalid permutation length -{len(perm)}-, expected {self._nvars}"
            )
        image = perm.image
        acc = {}
        for m, c in self._terms:
            mm = [0] * self._nvars
            for i, e in enumerate(m):
                mm[image[i]] = e
            acc[tuple(mm)] = c
        return Polynomial._from_dict(acc, self._nvars)


def _check_var(v_, nvars_):
    if isinstance(v_, bool) or not isinstance(v_, int) or not 0 <= v_ < nvars_:
        raise IndexError(f"Invalid variable index -{v_}-, expected 0..{nvars_ - 1}")


def _format_monomial(mono_):
    parts = []
    for i, e in enumerate(mono_):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def canonicalize(p):
    """rebuild p from its terms (identity on canonical polynomials)"""
    return Polynomial(dict(p.terms), p.nvars)


def total_degree(p):
    return p.total_degree()


def degree_in(p, v):
    return p.degree_in(v)


# ----------------------------------------------
@dataclass(frozen=True)
class VarPermutation(object):
    """bijection on variable indices: x{i+1} -> x{image[i]+1}

    >>> s = VarPermutation((1, 0, 2))
    >>> s.inverse() == s, s.compose(s).is_identity
    (True, True)
    >>> VarPermutation((2, 0, 1)).index
    4
    """

    image: tuple

    def __post_init__(self):
        image = tuple(self.image)
        if not image or sorted(image) != list(range(len(image))):
            raise PermutationError(f"Invalid permutation -{self.image}-")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def from_text(cls, text_):
        """read the space separated form used in CSV files ('1 0 2')"""
        try:
            return cls(tuple(int(t) for t in str(text_).split()))
        except ValueError:
            raise PermutationError(f"Invalid permutation -{text_}-") from None

    def to_text(self):
        return " ".join(str(i) for i in self.image)

    def __len__(self):
        return len(self.image)

    def __call__(self, i):
        return self.image[i]

    @property
    def is_identity(self):
        return self.image == tuple(range(len(self.image)))

    @property
    def index(self):
        """position in the lexicographic enumeration of all_permutations"""
        return ordering_to_label(self.image)

    def inverse(self):
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return VarPermutation(tuple(inv))

    def compose(self, other):
        """self o other: apply other first"""
        if len(other) != len(self):
            raise PermutationError("Permutations of different length")
        return VarPermutation(tuple(self.image[j] for j in other.image))


def all_permutations(n):
    """every permutation of n variables, in lexicographic order"""
    return tuple(VarPermutation(p) for p in itertools.permutations(range(n)))


# ----------------------------------------------
@dataclass(frozen=True)
class PolySystem(object):
    """non-empty conjunction of non-zero polynomials sharing nvars"""

    polys: tuple
    nvars: int

    def __post_init__(self):
        polys = tuple(self.polys)
        if not polys:
            raise ValueError("Invalid polynomial system, no polynomial")
        for k, p in enumerate(polys):
            if not isinstance(p, Polynomial):
                raise TypeError(f"Invalid polynomial -{p!r}-")
            if p.nvars != self.nvars:
                raise ValueError(
                    f"Invalid polynomial {k + 1}: {p.nvars} variables, expected {self.nvars}"
                )
            if p.is_zero:
                raise ZeroPolynomialError(f"polynomial {k + 1} is zero")
        object.__setattr__(self, "polys", polys)

    def __str__(self):
        return print_system(self)

    def __len__(self):
        return len(self.polys)


def print_system(s_):
    """canonical text of a system

    >>> print_system(parse_system("vars 3; -12*x3*x2 + 68*x1^2; x1"))
    'vars 3; 68*x1^2 - 12*x2*x3; x1'
    """
    return f"vars {s_.nvars}; " + "; ".join(str(p) for p in s_.polys)


def apply_permutation(s_, perm_):
    """rename the variables of every polynomial of the system"""
    if len(perm_) != s_.nvars:
        raise PermutationError(
            f"Invalid permutation length -{len(perm_)}-, expected {s_.nvars}"
        )
    return PolySystem(tuple(p.permuted(perm_) for p in s_.polys), s_.nvars)


# --- text format ------------------------------
_Token = namedtuple("_Token", ["kind", "text", "line", "column"])

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<kw>vars)|(?P<var>x)|(?P<op>[;+\-*/^])"
)


def _tokenize(text_):
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text_):
        match = _TOKEN_RE.match(text_, pos)
        column = pos - line_start + 1
        if match is None:
            raise SystemSyntaxError(
                f"unexpected character -{text_[pos]}-", line=line, column=column
            )
        kind = match.lastgroup
        value = match.group()
        if kind == "ws":
            newlines = value.count("\n")
            if newlines:
                line += newlines
                line_start = pos + value.rindex("\n") + 1
        else:
            tokens.append(_Token(kind, value, line, column))
        pos = match.end()
    tokens.append(_Token("end", "end of input", line, pos - line_start + 1))
    return tokens


class _Parser(object):
    """recursive descent parser of the system grammar

    system := "vars" INT ";" poly (";" poly)* [";"]
    poly   := ["+"|"-"] term (("+"|"-") term)*
    term   := coeff ["*" factor ("*" factor)*] | factor ("*" factor)*
    factor := "x" INT ["^" INT]
    coeff  := INT ["/" INT]
    """

    def __init__(self, text_):
        self._tokens = _tokenize(text_)
        self._pos = 0

    def _peek(self):
        return self._tokens[self._pos]

    def _next(self):
        tok = self._tokens[self._pos]
        if tok.kind != "end":
            self._pos += 1
        return tok

    def _is_op(self, ops_):
        tok = self._peek()
        return tok.kind == "op" and tok.text in ops_

    def _expect(self, kind_, what_, text_=None):
        tok = self._next()
        if tok.kind != kind_ or (text_ is not None and tok.text != text_):
            raise SystemSyntaxError(
                f"expected {what_}, found -{tok.text}-", line=tok.line, column=tok.column
            )
        return tok

    def _int(self, what_):
        return int(self._expect("int", what_).text)

    def system(self):
        self._expect("kw", "'vars'")
        tok = self._peek()
        nvars = self._int("number of variables")
        if nvars < 1:
            raise SystemSyntaxError(
                "number of variables must be positive", line=tok.line, column=tok.column
            )
        self._expect("op", "';'", ";")

        polys = []
        while True:
            start = self._peek()
            p = self.poly(nvars)
            if p.is_zero:
                raise ZeroPolynomialError(
                    f"line {start.line}, column {start.column}: "
                    f"polynomial {len(polys) + 1} is zero"
                )
            polys.append(p)
            if self._peek().kind == "end":
                break
            self._expect("op", "';'", ";")
            if self._peek().kind == "end":
                break
        return PolySystem(tuple(polys), nvars)

    def poly(self, nvars_):
        acc = {}
        sign = 1
        if self._is_op("+-"):
            sign = -1 if self._next().text == "-" else 1
        self.term(nvars_, sign, acc)
        while self._is_op("+-"):
            sign = -1 if self._next().text == "-" else 1
            self.term(nvars_, sign, acc)
        return Polynomial._from_dict(acc, nvars_)

    def term(self, nvars_, sign_, acc_):
        mono = [0] * nvars_
        coeff = 1
        if self._peek().kind == "int":
            coeff = self.coeff()
            if self._is_op("*"):
                self._next()
                self.factor(nvars_, mono)
        else:
            self.factor(nvars_, mono)
        while self._is_op("*"):
            self._next()
            self.factor(nvars_, mono)
        mono = tuple(mono)
        acc_[mono] = acc_.get(mono, 0) + sign_ * coeff

    def coeff(self):
        num = self._int("coefficient")
        if not self._is_op("/"):
            return num
        self._next()
        tok = self._peek()
        den = self._int("denominator")
        if den == 0:
            raise SystemSyntaxError("zero denominator", line=tok.line, column=tok.column)
        return _norm(Fraction(num, den))

    def factor(self, nvars_, mono_):
        self._expect("var", "variable 'x'")
        tok = self._peek()
        index = self._int("variable index")
        if not 1 <= index <= nvars_:
            raise VariableIndexError(
                f"variable x{index} outside x1..x{nvars_}", line=tok.line, column=tok.column
            )
        exponent = 1
        if self._is_op("^"):
            self._next()
            exponent = self._int("exponent")
        mono_[index - 1] += exponent


def parse_system(text):
    """read a polynomial system

    :raise SystemSyntaxError: grammar violation (with line and column)
    :raise VariableIndexError: variable index above the declared number of variables
    :raise ZeroPolynomialError: polynomial cancelling to zero

    >>> s = parse_system("vars 3; 68*x1^2 - 12*x3*x2 + 46*x3 - 126; x1")
    >>> len(s.polys), s.nvars
    (2, 3)
    >>> parse_system("vars 3; x1 - x1")
    Traceback (most recent call last):
    ...
    varord.errors.ZeroPolynomialError: line 1, column 9: polynomial 1 is zero
    """
    if not isinstance(text, str):
        raise TypeError(f"Invalid type value, text -{text!r}- must be string")
    return _Parser(text).system()


# --- ordering labels --------------------------
def n_orderings(n):
    return math.factorial(n)


def ordering_to_label(ordering):
    """rank of an elimination ordering in the lexicographic enumeration

    >>> ordering_to_label((0, 1, 2)), ordering_to_label((1, 0, 2)), ordering_to_label((2, 1, 0))
    (0, 2, 5)
    """
    o = tuple(ordering)
    n = len(o)
    if not n or sorted(o) != list(range(n)):
        raise PermutationError(f"Invalid ordering -{ordering}-, must be a permutation")
    label = 0
    remaining = list(range(n))
    for k, v in enumerate(o):
        pos = remaining.index(v)
        label += pos * math.factorial(n - 1 - k)
        remaining.pop(pos)
    return label


def label_to_ordering(label, n=3):
    """elimination ordering (first eliminated first) of a label

    >>> [label_to_ordering(k) for k in range(6)]
    [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    """
    if isinstance(label, bool) or not isinstance(label, int) or not 0 <= label < math.factorial(n):
        raise LabelError(f"Invalid label -{label}- for {n} variables")
    remaining = list(range(n))
    ordering = []
    for k in range(n):
        pos, label = divmod(label, math.factorial(n - 1 - k))
        ordering.append(remaining.pop(pos))
    return tuple(ordering)


def permute_label(label, perm):
    """label of the ordering obtained by renaming its variables with perm

    >>> permute_label(0, VarPermutation((1, 0, 2))), permute_label(5, VarPermutation((2, 1, 0)))
    (2, 0)
    """
    ordering = label_to_ordering(label, len(perm))
    return ordering_to_label(tuple(perm(v) for v in ordering))
