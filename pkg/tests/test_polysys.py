"""Tests of polynomial arithmetic, system parsing, permutations and labels."""
import itertools
from fractions import Fraction

import pytest
from conftest import PERMUTATIONS_3, labels_3, permutations_3, polynomials, systems
from hypothesis import given, settings
from hypothesis import strategies as st

from varord.errors import (
    LabelError,
    PermutationError,
    SystemSyntaxError,
    VariableIndexError,
    ZeroPolynomialError,
)
from varord.polysys import (
    Polynomial,
    PolySystem,
    VarPermutation,
    all_permutations,
    apply_permutation,
    canonicalize,
    degree_in,
    label_to_ordering,
    n_orderings,
    ordering_to_label,
    parse_system,
    permute_label,
    print_system,
    total_degree,
)

SWAP_12 = VarPermutation((1, 0, 2))
SWAP_13 = VarPermutation((2, 1, 0))


def poly(text, nvars=3):
    return parse_system(f"vars {nvars}; {text}").polys[0]


# --- parsing ----------------------------------
def test_parse_two_polynomial_system():
    s = parse_system(
        "vars 3; 68*x1^2 - 12*x3*x2 + 46*x3 - 126; -54*x2*x1 + 11*x1 + 92*x2 - 42*x3*x2*x1 - 35"
    )
    assert s.nvars == 3
    assert len(s.polys) == 2
    assert dict(s.polys[0].terms) == {(2, 0, 0): 68, (0, 1, 1): -12, (0, 0, 1): 46, (0, 0, 0): -126}


def test_parse_single_variable():
    s = parse_system("vars 3; x1")
    assert s.polys == (Polynomial.variable(0, 3),)


def test_parse_zero_polynomial():
    with pytest.raises(ZeroPolynomialError):
        parse_system("vars 3; x1 - x1")


def test_parse_syntax_error_position():
    with pytest.raises(SystemSyntaxError) as exc:
        parse_system("vars 3;\nx1 + * x2")
    assert exc.value.line == 2
    assert exc.value.column is not None


def test_parse_variable_out_of_range():
    with pytest.raises(VariableIndexError):
        parse_system("vars 2; x1 + x3")


def test_parse_rational_coefficient():
    p = poly("3/6*x1 + 2")
    assert dict(p.terms)[(1, 0, 0)] == Fraction(1, 2)


def test_parse_leading_sign_and_trailing_separator():
    assert parse_system("vars 2; -x1 + x2;") == parse_system("vars 2; x2 - x1")


@settings(max_examples=100, deadline=None)
@given(systems())
def test_print_then_parse_is_identity(s):
    assert parse_system(print_system(s)) == s


# --- degrees ----------------------------------
def test_total_degree():
    assert total_degree(poly("x1^2*x2 - 1")) == 3
    assert total_degree(Polynomial.constant(5, 3)) == 0
    assert total_degree(poly("x1 + x3")) == 1


def test_degree_in():
    p = poly("x1^2*x2 - 1")
    assert degree_in(p, 0) == 2
    assert degree_in(p, 2) == 0
    assert degree_in(poly("x2 + x2^3"), 1) == 3


def test_degree_in_out_of_range():
    with pytest.raises(IndexError):
        degree_in(poly("x1"), 3)


# --- arithmetic -------------------------------
def test_arithmetic():
    x = Polynomial.variable(0, 2)
    y = Polynomial.variable(1, 2)
    p = (x + y) ** 2
    assert p == x * x + 2 * x * y + y * y
    assert (p - p).is_zero
    assert p.exact_div(x + y) == x + y
    assert str(p.derivative(0)) == "2*x1 + 2*x2"
    assert (3 - x) == -(x - 3)


def test_exact_div_not_exact():
    x = Polynomial.variable(0, 2)
    with pytest.raises(ArithmeticError):
        (x * x + 1).exact_div(x)


def test_primitive_has_positive_leading_coefficient():
    p = poly("-6*x1^2 + 4*x2")
    assert p.content() == 2
    assert p.primitive() == poly("3*x1^2 - 2*x2")


def test_coefficient_must_be_exact():
    with pytest.raises(TypeError):
        Polynomial({(1,): 0.5}, 1)


@given(polynomials())
def test_canonicalize_idempotent(p):
    assert canonicalize(canonicalize(p)) == canonicalize(p)


# --- permutations -----------------------------
def test_apply_identity():
    s = parse_system("vars 3; x1^2 + x2")
    assert apply_permutation(s, VarPermutation.identity(3)) == s


def test_apply_swap():
    s = parse_system("vars 3; x1^2 + x2")
    assert apply_permutation(s, SWAP_12) == parse_system("vars 3; x2^2 + x1")


def test_apply_length_mismatch():
    with pytest.raises(PermutationError):
        apply_permutation(parse_system("vars 3; x1"), VarPermutation((1, 0)))


@given(systems(), permutations_3)
def test_apply_then_inverse(s, sigma):
    assert apply_permutation(apply_permutation(s, sigma), sigma.inverse()) == s


@settings(max_examples=200, deadline=None)
@given(systems(), permutations_3, permutations_3)
def test_group_action(s, sigma, tau):
    assert apply_permutation(apply_permutation(s, sigma), tau) == apply_permutation(
        s, tau.compose(sigma)
    )


@given(systems(), permutations_3)
def test_degrees_follow_permutation(s, sigma):
    image = apply_permutation(s, sigma)
    for p, q in zip(s.polys, image.polys):
        assert total_degree(q) == total_degree(p)
        for v in range(3):
            assert degree_in(q, sigma(v)) == degree_in(p, v)


def test_all_permutations_lexicographic():
    assert [p.image for p in all_permutations(3)] == list(itertools.permutations(range(3)))
    assert [p.index for p in all_permutations(3)] == list(range(6))


def test_invalid_permutation():
    with pytest.raises(PermutationError):
        VarPermutation((0, 0, 1))


# --- labels -----------------------------------
def test_ordering_label_endpoints():
    assert ordering_to_label((0, 1, 2)) == 0
    assert ordering_to_label((2, 1, 0)) == 5
    assert ordering_to_label((1, 0, 2)) == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_label_ordering_bijection(n):
    labels = [ordering_to_label(label_to_ordering(k, n)) for k in range(n_orderings(n))]
    assert labels == list(range(n_orderings(n)))


def test_label_errors():
    with pytest.raises(LabelError):
        label_to_ordering(6)
    with pytest.raises(PermutationError):
        ordering_to_label((0, 0, 2))


def test_permute_label_examples():
    assert permute_label(0, SWAP_12) == 2
    assert label_to_ordering(permute_label(0, SWAP_12)) == (1, 0, 2)
    assert permute_label(5, SWAP_13) == 0


@given(labels_3)
def test_permute_label_identity(label):
    assert permute_label(label, VarPermutation.identity(3)) == label


@pytest.mark.parametrize("sigma", PERMUTATIONS_3, ids=lambda p: p.to_text())
def test_permute_label_bijection(sigma):
    assert sorted(permute_label(k, sigma) for k in range(6)) == list(range(6))


@given(labels_3, permutations_3)
def test_permute_label_renames_ordering(label, sigma):
    ordering = label_to_ordering(label)
    assert label_to_ordering(permute_label(label, sigma)) == tuple(sigma(v) for v in ordering)


def test_system_invariants():
    x = Polynomial.variable(0, 2)
    with pytest.raises(ValueError):
        PolySystem((), 2)
    with pytest.raises(ZeroPolynomialError):
        PolySystem((x, x - x), 2)
    with pytest.raises(ValueError):
        PolySystem((x,), 3)


@given(st.integers(1, 5))
def test_n_orderings(n):
    assert n_orderings(n) == len(all_permutations(n))
