"""Seeded random grammars and local lexings for differential experiments."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .examples import Setup
from .grammar import Grammar
from .lexing import SELECTOR_MODES, Lexer, Selector, literal_lexer

NONTERMINALS = ("S", "A", "B", "C")

PATTERN_POOL = ("a", "b", "ab", "ba", "a+", "b+", "a|ab", "(ab)+", "a?b", "[ab]", "[ab]+", "b?")
NULLABLE_POOL = ("", "a*", "b?")


def random_grammar(rng: random.Random, terminals=("a", "b"), max_nonterminals: int = 4,
                   max_rules: int = 8, max_rhs: int = 3) -> Grammar:
    nts = NONTERMINALS[:rng.randint(1, max_nonterminals)]
    n_rules = rng.randint(len(nts), max(len(nts), max_rules))
    symbols = list(nts) + list(terminals)
    rules = []
    for k in range(n_rules):
        lhs = nts[k] if k < len(nts) else rng.choice(nts)
        rhs = [rng.choice(symbols) for _ in range(rng.randint(0, max_rhs))]
        rules.append((lhs, rhs))
    return Grammar.build("S", rules, terminals, nts)


def identity_setup(g: Grammar) -> Setup:
    """Every terminal is a one-character name lexed as itself; empty order."""
    return Setup(g, literal_lexer(g.terminals), Selector.build("none", (), g.terminals))


def random_local_lexing(rng: random.Random, n_terminals: int = 3, alphabet: str = "ab",
                        allow_empty: bool = True, **grammar_kw) -> Setup:
    names = tuple(f"t{i}" for i in range(n_terminals))
    pool = PATTERN_POOL + (NULLABLE_POOL if allow_empty else ())
    patterns = {t: (rng.choice(pool), "all" if rng.random() < 0.15 else "longest") for t in names}
    lx = Lexer.from_patterns(patterns, alphabet)
    g = random_grammar(rng, names, **grammar_kw)
    mode = rng.choice(SELECTOR_MODES)
    order = list(names)
    rng.shuffle(order)
    edges = [(a, b) for a, b in itertools.combinations(order, 2) if rng.random() < 0.4]
    return Setup(g, lx, Selector.build(mode, edges, names))


def words(alphabet, max_len: int) -> Iterator[str]:
    for n in range(max_len + 1):
        for t in itertools.product(alphabet, repeat=n):
            yield "".join(t)
