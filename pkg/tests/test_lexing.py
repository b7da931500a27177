import random

import pytest
from hypothesis import given, settings, strategies as st

from locallex.examples import grammar_H, traditional
from locallex.lexing import (ALL, IdentityLexer, Lexer, OrderError, Selector, Token,
                             format_path, path_sort_key, select, token_sort_key,
                             traditional_selector)


def tok(t, c):
    return Token(t, c)


@pytest.fixture
def lx():
    return grammar_H(3).lexer


def test_lex_terminal_symbol_at_0(lx):
    assert lx.lex_terminal("symbol", "a-b+c", 0) == {tok("symbol", "a-b")}


def test_lex_terminal_plus_at_3(lx):
    assert lx.lex_terminal("plus", "a-b+c", 3) == {tok("plus", "+")}


def test_lex_terminal_id_at_1_is_empty(lx):
    assert lx.lex_terminal("id", "a-b+c", 1) == frozenset()


def test_tokens_at_0_and_1(lx):
    assert lx.tokens_at("a-b+c", 0) == {tok("id", "a"), tok("symbol", "a-b")}
    assert lx.tokens_at("a-b+c", 1) == {tok("minus", "-"), tok("symbol", "-b")}


def test_tokens_at_end_without_nullable_terminals(lx):
    assert lx.tokens_at("a-b+c", 5) == frozenset()


def test_position_out_of_range(lx):
    with pytest.raises(IndexError):
        lx.lex_terminal("id", "a", 2)


def test_all_matches_mode():
    lx = Lexer.from_patterns({"t": ("a+", ALL)}, "a")
    assert lx.lex_terminal("t", "aaa", 0) == {tok("t", "a"), tok("t", "aa"), tok("t", "aaa")}


def test_identity_lexer():
    lx = IdentityLexer(frozenset("ab"))
    assert lx.tokens_at(("a", "b"), 1) == {Token("b", ("b",))}
    assert lx.tokens_at(("a",), 1) == frozenset()


def test_select_mode_none_returns_B():
    sel = Selector.build("none")
    B = {tok("a", "x"), tok("b", "xy")}
    assert select(sel, set(), B) == B


def test_order_selector_H():
    sel = grammar_H(4).selector
    B = {tok("id", "a"), tok("symbol", "a")}
    assert select(sel, set(), B) == {tok("id", "a")}


def test_order_ignores_length():
    sel = grammar_H(4).selector
    assert select(sel, set(), {tok("id", "a"), tok("symbol", "a-b")}) == {tok("id", "a")}


def test_longest_selector_H():
    sel = grammar_H(5).selector
    assert select(sel, set(), {tok("id", "a"), tok("symbol", "a-b")}) == {tok("symbol", "a-b")}


def test_select_keeps_A():
    sel = grammar_H(5).selector
    A = {tok("id", "a")}
    assert select(sel, A, A | {tok("symbol", "a-b")}) == {tok("id", "a"), tok("symbol", "a-b")}


def test_select_precondition():
    with pytest.raises(ValueError):
        select(Selector.build("none"), {tok("a", "x")}, set())


def test_traditional_selector():
    sel = traditional_selector(["ident", "kw"])
    assert select(sel, set(), {tok("ident", "if"), tok("kw", "if")}) == {tok("kw", "if")}
    assert select(sel, set(), {tok("kw", "if")}) == {tok("kw", "if")}
    assert select(sel, set(), {tok("kw", "if"), tok("ident", "iff")}) == {tok("ident", "iff")}


def test_cyclic_order_rejected():
    with pytest.raises(OrderError):
        Selector.build("order", [("a", "b"), ("b", "a")], "ab")
    with pytest.raises(OrderError):
        Selector.build("order", [("a", "a")], "a")


def test_wildcard_expansion():
    sel = Selector.build("order", [("e", "*"), ("f", "*"), ("x", "y")], ["e", "f", "x", "y"])
    assert sel.order_below("e", "x") and sel.order_below("e", "y")
    assert not sel.order_below("e", "f") and not sel.order_below("f", "e")
    assert not sel.order_below("y", "e")


def test_display_orders():
    xs = [tok("id", "a"), tok("symbol", "a-b"), tok("minus", "-")]
    assert [str(x) for x in sorted(xs, key=token_sort_key)] == ["a-b/symbol", "a/id", "-/minus"]
    assert format_path(()) == "ε"
    assert str(tok("t1", "")) == "ε/t1"
    assert path_sort_key((tok("id", "a"),)) < path_sort_key((tok("symbol", "a-b"),))


def test_traditional_builds_S_T_grammar():
    s = traditional([("[a-z]+", "ident"), ("if", "kw")], "abcdefghijklmnopqrstuvwxyz")
    assert s.grammar.start == "S"


# contract fuzzing (the acceptance module runs the 10,000-call version)
TERMS = ["p", "q", "r", "s"]
tokens = st.builds(Token, st.sampled_from(TERMS), st.text("xy", max_size=3))


@settings(max_examples=200)
@given(st.sampled_from(["none", "order", "longest", "longest-then-order"]),
       st.lists(st.tuples(st.sampled_from(TERMS), st.sampled_from(TERMS + ["*"])), max_size=4),
       st.frozensets(tokens, max_size=6), st.data())
def test_selector_contract(mode, edges, B, data):
    try:
        sel = Selector.build(mode, edges, TERMS)
    except OrderError:
        return
    A = data.draw(st.frozensets(st.sampled_from(sorted(B, key=token_sort_key)))) if B else frozenset()
    out = select(sel, A, B)
    assert A <= out <= B
    # monotone use: Z ⊆ select(Z, W) when Z ⊆ W
    W2 = B | data.draw(st.frozensets(tokens, max_size=3))
    assert out <= select(sel, out, W2)


@settings(max_examples=200)
@given(st.text("+-abc", max_size=8), st.data())
def test_lex_slice_contract(D, data):
    lx = grammar_H(3).lexer
    k = data.draw(st.integers(0, len(D)))
    for x in lx.tokens_at(D, k):
        assert D[k:k + len(x.chars)] == x.chars
