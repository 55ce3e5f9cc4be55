import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from findim.corpus import random_document
from findim.errors import DSLSyntaxError, InvalidExponentMatrix, NonParallelElement, ResolutionError
from findim.formats import (
    parse_algebra,
    parse_exponent_matrix,
    parse_module_expr,
    print_algebra,
    print_exponent_matrix,
)
from findim.terms import Ideal, Quotient, Simple
from findim.tiled import ExponentMatrix

from conftest import TILED5


def test_two_loop_document(two_loops_doc, two_loops):
    d = two_loops_doc
    assert d.name == "two_loops"
    assert d.vertices == ("1", "2", "3", "4")
    assert len(d.arrows) == 6
    assert len(d.relations) == 11
    assert d.presentation() == two_loops.presentation
    assert [name for name, _ in d.modules] == ["W", "T"]


def test_module_declarations(two_loops_doc):
    w = two_loops_doc.module("W")
    assert len(w) == 1 and isinstance(w[0], Quotient)
    assert w[0].vertex == "1"
    assert [(c, str(p)) for c, p in w[0].element] == [(1, "alpha"), (1, "beta")]
    t = two_loops_doc.module("T")
    assert isinstance(t[0], Simple) and t[0].vertex == "3"
    assert isinstance(t[1], Ideal) and str(t[1].path) == "eps"


def test_one_loop_document():
    d = parse_algebra("vertices 1\narrow a 1 1\nrelations\na*a")
    assert d.vertices == ("1",)
    assert [str(r) for r in d.relations] == ["a*a"]
    assert print_algebra(d) == "vertices 1\narrow a 1 1\nrelations\na*a\n"


def test_round_trip_two_loops(two_loops_doc):
    assert parse_algebra(print_algebra(two_loops_doc)) == two_loops_doc


def test_comments_and_whitespace_are_dropped():
    text = "# header\n  vertices   1  2 # two\narrow a 1 2   \n\nrelations\nmodule  M=S(1)+P( 2 )\n"
    d = parse_algebra(text)
    assert print_algebra(d) == "vertices 1 2\narrow a 1 2\nmodule M = S(1) + P(2)\n"


def test_module_expression_coefficients(two_loops_doc):
    terms = parse_module_expr("Q(1; 1/2 alpha - 3*beta) + P(2) + I(e(3))", two_loops_doc.quiver)
    q = terms[0]
    assert [(c, str(p)) for c, p in q.element] == [(Fraction(1, 2), "alpha"), (Fraction(-3), "beta")]
    assert str(terms[1]) == "P(2)"
    assert str(terms[2]) == "P(3)"


@pytest.mark.parametrize("text, exc, line, column", [
    ("vertices 1 2\narrow a 1 2\nrelations\na*zz\n", ResolutionError, 4, 3),
    ("vertices 1 2\narrow a 1 2\narrow b 1 2\nrelations\na*b\n", NonParallelElement, 5, 3),
    ("vertices 1 2\narrow a 1 2\nrelations\na\n", DSLSyntaxError, 4, 1),
    ("vertices 1 2 1\n", DSLSyntaxError, 1, 14),
    ("vertices 1\narrow S 1 1\n", DSLSyntaxError, 2, 7),
    ("vertices 1\nfoo bar\n", DSLSyntaxError, 2, 1),
    ("algebra x\n", DSLSyntaxError, 1, 1),
    ("vertices 1 2\narrow a 1 2\narrow b 1 1\nrelations\nb*b\nmodule M = Q(1; a + b)\n", NonParallelElement, 6, 21),
    ("vertices 1 2\narrow a 1 2\nmodule M = Q(2; a)\n", NonParallelElement, 3, 17),
    ("vertices 1\nmodule M = S(7)\n", ResolutionError, 2, 14),
    ("vertices 1\narrow a 1 1\nrelations\na*a\na*a*a\n", DSLSyntaxError, 5, 1),
    ("vertices 1\nmodule M = S(1) +\n", DSLSyntaxError, 2, 18),
    ("arrow a 1 2\n", ResolutionError, 1, 9),
])
def test_parse_errors_carry_positions(text, exc, line, column):
    with pytest.raises(exc) as info:
        parse_algebra(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


def test_non_parallel_is_a_type_error():
    with pytest.raises(TypeError):
        parse_algebra("vertices 1 2\narrow a 1 2\narrow b 1 1\nrelations\nb*b\nmodule M = Q(1; a + b)\n")


# --- exponent matrices --------------------------------------------------------


def test_exponent_matrix_with_and_without_header(data_dir):
    m = parse_exponent_matrix((data_dir / "tiled5.tord").read_text())
    assert m == ExponentMatrix(TILED5)
    bare = "\n".join(" ".join(map(str, row)) for row in TILED5)
    assert parse_exponent_matrix(bare) == m
    assert parse_exponent_matrix("0\n") == ExponentMatrix([[0]])
    assert parse_exponent_matrix("1\n0\n") == ExponentMatrix([[0]])


def test_exponent_matrix_round_trip():
    m = ExponentMatrix(TILED5)
    assert parse_exponent_matrix(print_exponent_matrix(m)) == m


@pytest.mark.parametrize("text, line, column", [
    ("1 x\n", 1, 3),
    ("0 1\n1\n", 2, 1),
    ("", 1, 1),
])
def test_exponent_matrix_syntax_errors(text, line, column):
    with pytest.raises(DSLSyntaxError) as info:
        parse_exponent_matrix(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_exponent_matrix_invariants_checked():
    with pytest.raises(InvalidExponentMatrix):
        parse_exponent_matrix("0 -1\n1 0\n")
    with pytest.raises(InvalidExponentMatrix):
        parse_exponent_matrix("0 0 3\n1 0 0\n1 1 0\n")


# --- property: print then parse is the identity --------------------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_generated_documents_round_trip(seed):
    doc = random_document(random.Random(seed))
    text = print_algebra(doc)
    again = parse_algebra(text)
    assert again == doc
    assert print_algebra(again) == text


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_exponent_matrix_print_parse(rows):
    try:
        m = ExponentMatrix(rows)
    except InvalidExponentMatrix:
        return
    assert parse_exponent_matrix(print_exponent_matrix(m)) == m
