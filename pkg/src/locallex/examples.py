"""Constructors for the worked local-lexing examples.

Each returns a :class:`Setup` (grammar, lexer, selector) triple.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .grammar import Grammar
from .lexing import (SEL_LONGEST, SEL_LONGEST_ORDER, SEL_NONE, SEL_ORDER, WILDCARD,
                     Lexer, Selector, traditional_selector)
from .patterns import Pattern, nullable, parse_pattern


class Setup(NamedTuple):
    grammar: Grammar
    lexer: Lexer
    selector: Selector


def _rules(text: str) -> list[tuple[str, list[str]]]:
    out = []
    for line in text.strip().splitlines():
        lhs, rhs = line.split("->")
        for alt in rhs.split("|"):
            syms = alt.split()
            out.append((lhs.strip(), [] if syms == ["ε"] else syms))
    return out


def traditional(pairs: Sequence[tuple[Pattern | str, str]], alphabet) -> Setup:
    """A classic (pattern, terminal) lexer spec; later pairs take priority on ties."""
    alphabet = frozenset(alphabet)
    names = [t for _, t in pairs]
    patterns = {}
    for pat, t in pairs:
        p = parse_pattern(pat, alphabet) if isinstance(pat, str) else pat
        if nullable(p):
            raise ValueError(f"pattern for {t} matches the empty string")
        patterns[t] = p
    rules = [("S", ["S", "T"]), ("S", [])] + [("T", [t]) for t in names]
    g = Grammar.build("S", rules, names)
    return Setup(g, Lexer.from_patterns(patterns, alphabet), traditional_selector(names))


def infinite_example() -> Setup:
    rules = [("S", ["S", "T"]), ("S", []), ("T", ["t1"])]
    g = Grammar.build("S", rules, ["t1"])
    lx = Lexer.from_patterns({"t1": "a*"}, "a")
    return Setup(g, lx, Selector.build(SEL_NONE, (), ["t1"]))


H_RULES = """
S -> S plus A | S minus A | A
A -> A E | E
E -> id | symbol
"""
H_TERMINALS = ("plus", "minus", "id", "symbol")
H_ALPHABET = frozenset("+-abc")
H_PATTERNS = {"plus": r"\+", "minus": "-", "id": "[a-c]+", "symbol": "[a-c-]+"}


def grammar_H(selector_variant: int = 3) -> Setup:
    g = Grammar.build("S", _rules(H_RULES), H_TERMINALS)
    lx = Lexer.from_patterns(H_PATTERNS, H_ALPHABET)
    if selector_variant == 3:
        sel = Selector.build(SEL_NONE, (), H_TERMINALS)
    elif selector_variant == 4:
        sel = Selector.build(SEL_ORDER, [("symbol", "id"), ("symbol", "minus")], H_TERMINALS)
    elif selector_variant == 5:
        sel = Selector.build(SEL_LONGEST, (), H_TERMINALS)
    elif selector_variant == 6:
        sel = Selector.build(SEL_LONGEST_ORDER, [("symbol", "id")], H_TERMINALS)
    else:
        raise ValueError(f"no selector variant {selector_variant}")
    return Setup(g, lx, sel)


C_RULES = """
Expr -> Mul | Cast | Deref | id | left Expr right
Mul -> Expr asterisk Expr
Cast -> left Type right Expr
Deref -> asterisk Expr
Type -> typeid
"""
C_TERMINALS = ("typeid", "id", "asterisk", "left", "right")
C_ALPHABET = frozenset("()*abcdefghijklmnopqrstuvwxyz")
C_PATTERNS = {"typeid": "[a-z]+", "id": "[a-z]+", "asterisk": r"\*",
              "left": r"\(", "right": r"\)"}


def lexer_hack() -> Setup:
    g = Grammar.build("Expr", _rules(C_RULES), C_TERMINALS)
    lx = Lexer.from_patterns(C_PATTERNS, C_ALPHABET)
    return Setup(g, lx, Selector.build(SEL_NONE, (), C_TERMINALS))


ERR_RULES = """
Expr -> Sum
Sum -> Sum plus Mul | Mul
Mul -> Mul mul Atom | Atom | Mul Atom | Mul e-superfluous
Atom -> left Sum right | id | num | left Sum e-right | e-atom
"""
ERR_TERMINALS = ("plus", "mul", "id", "num", "left", "right",
                 "e-atom", "e-right", "e-superfluous")
ERR_ALPHABET = frozenset("+*()0123456789abcdefghijklmnopqrstuvwxyz")
ERR_PATTERNS = {"plus": r"\+", "mul": r"\*", "left": r"\(", "right": r"\)",
                "id": "[a-z][a-z0-9]*", "num": "[0-9]+",
                "e-atom": "", "e-right": "", "e-superfluous": r"\)"}
ERROR_TERMINALS = ("e-atom", "e-right", "e-superfluous")


def error_recovery() -> Setup:
    g = Grammar.build("Expr", _rules(ERR_RULES), ERR_TERMINALS)
    lx = Lexer.from_patterns(ERR_PATTERNS, ERR_ALPHABET)
    sel = Selector.build(SEL_ORDER, [(t, WILDCARD) for t in ERROR_TERMINALS], ERR_TERMINALS)
    return Setup(g, lx, sel)
