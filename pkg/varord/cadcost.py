#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# cadcost.py

"""
    Projection-phase cost of a cylindrical algebraic decomposition.

    For an elimination ordering, the polynomial set of a system is projected one
    variable at a time (first listed variable eliminated first). A projection step
    collects every coefficient of each polynomial, the discriminant of each
    polynomial of degree >= 2 and the resultant of every pair of polynomials
    involving the eliminated variable. The cost of an ordering is the sum of total
    degrees (sotd) of the polynomials produced, with their count as tie-break.

    Resultants are Sylvester determinants computed exactly, by fraction-free
    (Bareiss) elimination over polynomial entries.
"""

# --- import -----------------------------------
# import from standard lib
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

# import from other lib
# import from my project
from varord.errors import DegreeError, OrderingLimitError, VarordError
from varord.polysys import Polynomial, label_to_ordering, n_orderings

# --- module's variable ------------------------
# load logger
_logger = logging.getLogger(__name__)

# largest number of variables rank_orderings accepts
MAX_RANK_VARS = 5


# --- determinants -----------------------------
def _is_zero(x_):
    if isinstance(x_, Polynomial):
        return x_.is_zero
    return x_ == 0


def _exact_div(a_, b_):
    if isinstance(a_, Polynomial):
        return a_.exact_div(b_)
    if isinstance(a_, int) and isinstance(b_, int):
        return a_ // b_
    return a_ / b_


def bareiss_determinant(matrix):
    """determinant by fraction-free elimination

    Entries may be int, Fraction or Polynomial: every division performed is exact.

    >>> bareiss_determinant([[2, 1, 3], [0, 0, 1], [1, 4, 2]])
    -7
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError(f"Invalid matrix, must be square -{n}x?-")

    sign = 1
    prev = 1
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            swap = next((i for i in range(k + 1, n) if not _is_zero(m[i][k])), None)
            if swap is None:
                # whole column is zero
                return m[k][k] - m[k][k]
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            if _is_zero(lead):
                for j in range(k + 1, n):
                    row_i[j] = _exact_div(row_i[j] * pivot, prev)
            else:
                for j in range(k + 1, n):
                    row_i[j] = _exact_div(row_i[j] * pivot - lead * row_k[j], prev)
        prev = pivot

    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def cofactor_determinant(matrix):
    """determinant by cofactor expansion along the first row

    >>> cofactor_determinant([[2, 1, 3], [0, 0, 1], [1, 4, 2]])
    -7
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]

    total = None
    for j, a in enumerate(m[0]):
        if _is_zero(a):
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = a * cofactor_determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return m[0][0]
    return total


# --- resultants -------------------------------
def sylvester_matrix(p, q, v):
    """Sylvester matrix of p and q seen as polynomials in x{v+1}

    deg_v(q) rows of p coefficients followed by deg_v(p) rows of q coefficients,
    highest degree first. Entries are polynomials free of x{v+1}.
    """
    dp, dq = p.degree_in(v), q.degree_in(v)
    size = dp + dq
    zero = Polynomial.zero(p.nvars)
    cp, cq = p.coefficients_in(v), q.coefficients_in(v)
    row_p = [cp.get(dp - k, zero) for k in range(dp + 1)]
    row_q = [cq.get(dq - k, zero) for k in range(dq + 1)]

    rows = []
    for shift in range(dq):
        rows.append([zero] * shift + row_p + [zero] * (size - shift - dp - 1))
    for shift in range(dp):
        rows.append([zero] * shift + row_q + [zero] * (size - shift - dq - 1))
    return rows


@lru_cache(maxsize=65536)
def resultant(p, q, v):
    """resultant of p and q with respect to x{v+1}

    :raise DegreeError: if p or q does not involve x{v+1}

    >>> from varord.polysys import parse_system
    >>> p, q = parse_system("vars 2; x1^2 + x2; 2*x1").polys
    >>> str(resultant(p, q, 0))
    '4*x2'
    """
    if p.nvars != q.nvars:
        raise ValueError(f"Number of variables differ -{p.nvars}- and -{q.nvars}-")
    if p.degree_in(v) == 0 or q.degree_in(v) == 0:
        raise DegreeError(
            f"resultant in x{v + 1} needs positive degrees, got -{p}- and -{q}-"
        )
    return bareiss_determinant(sylvester_matrix(p, q, v))


def discriminant(p, v):
    """raw discriminant: resultant of p and its derivative in x{v+1}

    :raise DegreeError: if the degree of p in x{v+1} is lower than 2

    >>> from varord.polysys import parse_system
    >>> str(discriminant(parse_system("vars 3; x1^2 + x2*x1 + x3").polys[0], 0))
    '-x2^2 + 4*x3'
    """
    if p.degree_in(v) < 2:
        raise DegreeError(f"discriminant in x{v + 1} needs degree >= 2, got -{p}-")
    return resultant(p, p.derivative(v), v)


# --- projection -------------------------------
def normalize(p):
    """primitive part with positive leading coefficient, None for constants"""
    if p.is_constant:
        return None
    return p.primitive()


def _sorted_set(polys_):
    return tuple(sorted(set(polys_), key=Polynomial.sort_key))


def projection_step(polys, v):
    """eliminate x{v+1} from a set of polynomials

    :return: normalized, deduplicated projection polynomials, sorted

    >>> from varord.polysys import parse_system
    >>> [str(r) for r in projection_step(parse_system("vars 2; x1 - x2; x1 + x2").polys, 0)]
    ['x2']
    """
    out = set()

    def _keep(r_):
        r = normalize(r_)
        if r is not None:
            out.add(r)

    active = []
    for p in _sorted_set(polys):
        for c in p.coefficients_in(v).values():
            _keep(c)
        d = p.degree_in(v)
        if d >= 2:
            _keep(discriminant(p, v))
        if d >= 1:
            active.append(p)

    for p, q in itertools.combinations(active, 2):
        _keep(resultant(p, q, v))

    return _sorted_set(out)


@lru_cache(maxsize=8192)
def _projection_chain(polys_, prefix_):
    """projection sets after eliminating each variable of prefix_ in turn"""
    if not prefix_:
        return ()
    head = _projection_chain(polys_, prefix_[:-1])
    base = head[-1] if head else polys_
    return head + (projection_step(base, prefix_[-1]),)


def clear_caches():
    """release memoized resultants and projection sets"""
    resultant.cache_clear()
    _projection_chain.cache_clear()


# --- cost reports -----------------------------
@dataclass(frozen=True)
class LevelCost(object):
    num_polys: int
    sotd: int

    def to_dict(self):
        return {"num_polys": self.num_polys, "sotd": self.sotd}


@dataclass(frozen=True)
class CostReport(object):
    """per projection level counts, and their totals"""

    per_level: tuple
    total_polys: int
    total_sotd: int

    def __post_init__(self):
        object.__setattr__(self, "per_level", tuple(self.per_level))
        if self.total_polys != sum(lc.num_polys for lc in self.per_level) or (
            self.total_sotd != sum(lc.sotd for lc in self.per_level)
        ):
            raise ValueError("Invalid cost report, totals differ from level sums")

    @classmethod
    def from_levels(cls, levels_):
        levels = tuple(levels_)
        return cls(
            per_level=levels,
            total_polys=sum(lc.num_polys for lc in levels),
            total_sotd=sum(lc.sotd for lc in levels),
        )

    def to_dict(self):
        return {
            "per_level": [lc.to_dict() for lc in self.per_level],
            "total_polys": self.total_polys,
            "total_sotd": self.total_sotd,
        }

    @classmethod
    def from_dict(cls, dict_):
        try:
            return cls(
                per_level=tuple(
                    LevelCost(int(lc["num_polys"]), int(lc["sotd"]))
                    for lc in dict_["per_level"]
                ),
                total_polys=int(dict_["total_polys"]),
                total_sotd=int(dict_["total_sotd"]),
            )
        except (KeyError, TypeError) as exc:
            raise VarordError(f"Invalid cost report -{dict_}-") from exc


@dataclass(frozen=True)
class OrderingCostTable(object):
    """cost of every ordering, indexed by label"""

    costs: tuple
    argmin_label: int
    tie: bool

    def sotd_timings(self):
        """per-label total_sotd, as timings for labelling"""
        return tuple(float(c.total_sotd) for c in self.costs)

    def to_dict(self):
        return {
            "costs": [c.to_dict() for c in self.costs],
            "argmin_label": self.argmin_label,
            "tie": self.tie,
        }

    @classmethod
    def from_dict(cls, dict_):
        try:
            return cls(
                costs=tuple(CostReport.from_dict(c) for c in dict_["costs"]),
                argmin_label=int(dict_["argmin_label"]),
                tie=bool(dict_["tie"]),
            )
        except (KeyError, TypeError) as exc:
            raise VarordError(f"Invalid cost table -{dict_}-") from exc


def projection_cost(s, label):
    """cost of projecting s along the ordering named by label

    The first n-1 variables of the ordering are eliminated, first listed first.
    Orderings sharing a prefix share the memoized projection sets.

    >>> from varord.polysys import parse_system
    >>> projection_cost(parse_system("vars 2; x1^2 + x2"), 0).to_dict()
    {'per_level': [{'num_polys': 1, 'sotd': 1}], 'total_polys': 1, 'total_sotd': 1}
    """
    ordering = label_to_ordering(label, s.nvars)
    polys = _sorted_set(r for r in (normalize(p) for p in s.polys) if r is not None)
    chain = _projection_chain(polys, ordering[: s.nvars - 1])
    return CostReport.from_levels(
        LevelCost(len(level), sum(p.total_degree() for p in level)) for level in chain
    )


def rank_orderings(s):
    """cost of every ordering, and the cheapest one

    cheapest minimises (total_sotd, total_polys, label); tie is set when at least
    two orderings share the minimal (total_sotd, total_polys).

    :raise OrderingLimitError: if s has more than MAX_RANK_VARS variables
    """
    if s.nvars > MAX_RANK_VARS:
        raise OrderingLimitError(
            f"Invalid number of variables -{s.nvars}-, at most {MAX_RANK_VARS} variables"
        )
    try:
        costs = tuple(projection_cost(s, label) for label in range(n_orderings(s.nvars)))
    except Exception:
        _logger.exception(f"Something goes wrong when ranking orderings of -{s}-")
        raise  # Throw exception again so calling code knows it happened

    keys = [(c.total_sotd, c.total_polys) for c in costs]
    best = min(range(len(costs)), key=lambda label: (keys[label], label))
    tie = keys.count(keys[best]) >= 2
    _logger.debug(f"rank orderings: argmin {best}, tie {tie}")
    return OrderingCostTable(costs=costs, argmin_label=best, tie=tie)
