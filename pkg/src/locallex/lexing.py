"""Tokens, lexers and selectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .patterns import DFA, Pattern, compile_dfa, literal, parse_pattern

LONGEST = "longest"
ALL = "all"

SEL_NONE = "none"
SEL_ORDER = "order"
SEL_LONGEST = "longest"
SEL_LONGEST_ORDER = "longest-then-order"
SELECTOR_MODES = (SEL_NONE, SEL_ORDER, SEL_LONGEST, SEL_LONGEST_ORDER)

WILDCARD = "*"


@dataclass(frozen=True)
class Token:
    terminal: str
    chars: Sequence[str]  # a str for character input, a tuple for identity lexing

    @property
    def empty(self) -> bool:
        return len(self.chars) == 0

    def __len__(self):
        return len(self.chars)

    def __str__(self):
        text = "".join(self.chars) if not isinstance(self.chars, str) else self.chars
        return f"{text or 'ε'}/{self.terminal}"


def token_sort_key(x: Token):
    """Display order for token sets: longest first, then terminal name."""
    return (-len(x.chars), x.terminal, tuple(x.chars))


def path_sort_key(p: Sequence[Token]):
    """Canonical path order: token-wise by (length, terminal name, chars)."""
    return tuple((len(x.chars), x.terminal, tuple(x.chars)) for x in p)


def terminals_of(p: Iterable[Token]) -> tuple[str, ...]:
    return tuple(x.terminal for x in p)


def chars_len(p: Iterable[Token]) -> int:
    return sum(len(x.chars) for x in p)


def format_path(p: Sequence[Token]) -> str:
    return " ".join(str(x) for x in p) if p else "ε"


@dataclass(frozen=True)
class TerminalRecognizer:
    dfa: DFA
    mode: str = LONGEST

    def __post_init__(self):
        if self.mode not in (LONGEST, ALL):
            raise ValueError(f"unknown match mode {self.mode!r}")

    def match_lengths(self, D: Sequence[str], k: int) -> list[int]:
        lengths = self.dfa.match_lengths(D, k)
        if self.mode == LONGEST:
            return lengths[-1:]
        return lengths


def compile_pattern(p: Pattern | str, alphabet: Iterable[str], mode: str = LONGEST) -> TerminalRecognizer:
    alphabet = frozenset(alphabet)
    if isinstance(p, str):
        p = parse_pattern(p, alphabet)
    return TerminalRecognizer(compile_dfa(p, alphabet), mode)


@dataclass(frozen=True)
class Lexer:
    recognizers: Mapping[str, TerminalRecognizer]
    alphabet: frozenset[str]

    @classmethod
    def from_patterns(cls, patterns: Mapping[str, Pattern | str | tuple], alphabet: Iterable[str]) -> Lexer:
        """``patterns`` maps terminal -> pattern, or -> (pattern, mode)."""
        alphabet = frozenset(alphabet)
        recs = {}
        for t, spec in patterns.items():
            pat, mode = spec if isinstance(spec, tuple) else (spec, LONGEST)
            recs[t] = compile_pattern(pat, alphabet, mode)
        return cls(recs, alphabet)

    @property
    def terminals(self) -> frozenset[str]:
        return frozenset(self.recognizers)

    def lex_terminal(self, t: str, D: Sequence[str], k: int) -> frozenset[Token]:
        if not 0 <= k <= len(D):
            raise IndexError(f"position {k} outside 0..{len(D)}")
        rec = self.recognizers[t]
        return frozenset(Token(t, D[k:k + n]) for n in rec.match_lengths(D, k))

    def tokens_at(self, D: Sequence[str], k: int) -> frozenset[Token]:
        if not 0 <= k <= len(D):
            raise IndexError(f"position {k} outside 0..{len(D)}")
        out: set[Token] = set()
        for t in self.recognizers:
            out |= self.lex_terminal(t, D, k)
        return frozenset(out)


def literal_lexer(terminals: Iterable[str]) -> Lexer:
    """Character lexing for one-character terminal names: each matches itself."""
    terminals = sorted(terminals)
    if any(len(t) != 1 for t in terminals):
        raise ValueError("literal lexing needs one-character terminal names")
    return Lexer.from_patterns({t: literal(t) for t in terminals}, terminals)


@dataclass(frozen=True)
class IdentityLexer:
    """Lexing where characters are terminals and each token is one character."""

    terminals: frozenset[str]

    @property
    def alphabet(self) -> frozenset[str]:
        return self.terminals

    def lex_terminal(self, t: str, D: Sequence[str], k: int) -> frozenset[Token]:
        if not 0 <= k <= len(D):
            raise IndexError(f"position {k} outside 0..{len(D)}")
        if t not in self.terminals:
            raise KeyError(t)
        if k < len(D) and D[k] == t:
            return frozenset({Token(t, D[k:k + 1])})
        return frozenset()

    def tokens_at(self, D: Sequence[str], k: int) -> frozenset[Token]:
        if k < len(D) and D[k] in self.terminals:
            return self.lex_terminal(D[k], D, k)
        if not 0 <= k <= len(D):
            raise IndexError(f"position {k} outside 0..{len(D)}")
        return frozenset()


class OrderError(ValueError):
    pass


@dataclass(frozen=True)
class Selector:
    """A selector induced by a strict partial order on tokens.

    ``above[t]`` is the set of terminals strictly above ``t`` in the
    transitive closure of the priority edges.
    """

    mode: str = SEL_NONE
    above: Mapping[str, frozenset[str]] = field(default_factory=dict)

    @classmethod
    def build(cls, mode: str, edges: Iterable[tuple[str, str]] = (),
              terminals: Iterable[str] = ()) -> Selector:
        if mode not in SELECTOR_MODES:
            raise ValueError(f"unknown selector mode {mode!r}")
        terminals = set(terminals)
        edges = list(edges)
        plain = {(lo, hi) for lo, hi in edges if hi != WILDCARD}
        lowered = {lo for lo, hi in edges if hi == WILDCARD}
        for lo, hi in plain:
            if lo == hi:
                raise OrderError(f"priority {lo} < {hi} is reflexive")
        below_closure = _closure(plain)
        for t in sorted(lowered):
            # lower t beneath every terminal that is not itself wildcard-lowered
            # and not already below t
            for u in sorted(terminals):
                if u != t and u not in lowered and (u, t) not in below_closure:
                    plain.add((t, u))
        closure = _closure(plain)
        for lo, hi in closure:
            if lo == hi:
                raise OrderError(f"priority order is cyclic through {lo!r}")
        above: dict[str, set[str]] = {}
        for lo, hi in closure:
            above.setdefault(lo, set()).add(hi)
        return cls(mode, {t: frozenset(v) for t, v in above.items()})

    def order_below(self, t: str, u: str) -> bool:
        return u in self.above.get(t, ())

    def less(self, x: Token, y: Token) -> bool:
        if self.mode == SEL_NONE:
            return False
        if self.mode == SEL_ORDER:
            return self.order_below(x.terminal, y.terminal)
        if self.mode == SEL_LONGEST:
            return len(x.chars) < len(y.chars)
        return len(x.chars) < len(y.chars) or (
            len(x.chars) == len(y.chars) and self.order_below(x.terminal, y.terminal))

    def __call__(self, A: Iterable[Token], B: Iterable[Token]) -> frozenset[Token]:
        return select(self, A, B)


def _closure(edges: set[tuple[str, str]]) -> set[tuple[str, str]]:
    succ: dict[str, set[str]] = {}
    for lo, hi in edges:
        succ.setdefault(lo, set()).add(hi)
    out = set()
    for start in list(succ):
        todo = list(succ[start])
        seen = set()
        while todo:
            n = todo.pop()
            if n in seen:
                continue
            seen.add(n)
            todo.extend(succ.get(n, ()))
        out.update((start, n) for n in seen)
    return out


def select(sel: Selector, A: Iterable[Token], B: Iterable[Token]) -> frozenset[Token]:
    A, B = frozenset(A), frozenset(B)
    if not A <= B:
        raise ValueError("selector precondition violated: A is not a subset of B")
    if sel.mode == SEL_NONE:
        return B
    return A | {x for x in B if not any(sel.less(x, y) for y in B)}


def traditional_selector(terminal_priority: Sequence[str]) -> Selector:
    """Longest match first; among equal lengths, later-listed terminals win."""
    if len(set(terminal_priority)) != len(terminal_priority):
        raise ValueError("duplicate terminal in priority list")
    edges = [(t, u) for i, t in enumerate(terminal_priority) for u in terminal_priority[i + 1:]]
    return Selector.build(SEL_LONGEST_ORDER, edges, terminal_priority)


def lex_terminal(lx, t: str, D: Sequence[str], k: int) -> frozenset[Token]:
    return lx.lex_terminal(t, D, k)


def tokens_at(lx, D: Sequence[str], k: int) -> frozenset[Token]:
    return lx.tokens_at(D, k)
