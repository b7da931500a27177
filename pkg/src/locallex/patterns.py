"""A small regular-expression engine for terminal recognizers.

Patterns are parsed into a tiny AST, compiled Thompson-style into an NFA and
then determinized over the declared alphabet.  ``interpret`` evaluates the
AST directly and is kept as an independent check on the compiler.

Concrete syntax: literals, ``\\x`` escapes, ``[...]`` classes with ranges and
leading ``^`` (complement within the alphabet), ``|``, ``*``, ``+``, ``?``,
grouping parentheses, and the empty pattern for the empty string.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

SPECIAL = set("|*+?()[]\\")


class PatternError(ValueError):
    pass


class AlphabetError(PatternError):
    pass


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Chars:
    chars: frozenset[str]


@dataclass(frozen=True)
class Concat:
    parts: tuple


@dataclass(frozen=True)
class Alt:
    options: tuple


@dataclass(frozen=True)
class Repeat:
    inner: object
    kind: str  # "*", "+" or "?"


Pattern = Empty | Chars | Concat | Alt | Repeat


def literal(text: str) -> Pattern:
    if not text:
        return Empty()
    if len(text) == 1:
        return Chars(frozenset(text))
    return Concat(tuple(Chars(frozenset(c)) for c in text))


def pattern_chars(p: Pattern) -> frozenset[str]:
    if isinstance(p, Chars):
        return p.chars
    if isinstance(p, Concat):
        return frozenset().union(*(pattern_chars(q) for q in p.parts))
    if isinstance(p, Alt):
        return frozenset().union(*(pattern_chars(q) for q in p.options))
    if isinstance(p, Repeat):
        return pattern_chars(p.inner)
    return frozenset()


def nullable(p: Pattern) -> bool:
    if isinstance(p, Empty):
        return True
    if isinstance(p, Chars):
        return False
    if isinstance(p, Concat):
        return all(nullable(q) for q in p.parts)
    if isinstance(p, Alt):
        return any(nullable(q) for q in p.options)
    return p.kind != "+" or nullable(p.inner)


# -- parsing -----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, alphabet: frozenset[str] | None):
        self.text = text
        self.pos = 0
        self.alphabet = alphabet

    def error(self, msg):
        raise PatternError(f"{msg} at offset {self.pos} in pattern {self.text!r}")

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self):
        c = self.peek()
        if c is None:
            self.error("unexpected end of pattern")
        self.pos += 1
        return c

    def parse(self) -> Pattern:
        p = self.alt()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.peek()!r}")
        return p

    def alt(self):
        options = [self.concat()]
        while self.peek() == "|":
            self.pos += 1
            options.append(self.concat())
        return options[0] if len(options) == 1 else Alt(tuple(options))

    def concat(self):
        parts = []
        while self.peek() is not None and self.peek() not in "|)":
            parts.append(self.repeat())
        if not parts:
            return Empty()
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def repeat(self):
        p = self.atom()
        while self.peek() in ("*", "+", "?"):
            p = Repeat(p, self.take())
        return p

    def atom(self):
        c = self.take()
        if c == "(":
            p = self.alt()
            if self.peek() != ")":
                self.error("missing ')'")
            self.pos += 1
            return p
        if c == "[":
            return self.char_class()
        if c == "\\":
            return Chars(frozenset(self.take()))
        if c in SPECIAL:
            self.error(f"unexpected {c!r}")
        return Chars(frozenset(c))

    def class_char(self):
        c = self.take()
        return self.take() if c == "\\" else c

    def char_class(self):
        negate = False
        if self.peek() == "^":
            negate = True
            self.pos += 1
        chars: set[str] = set()
        while self.peek() != "]":
            if self.peek() is None:
                self.error("unterminated character class")
            lo = self.class_char()
            if self.peek() == "-" and self.pos + 1 < len(self.text) and self.text[self.pos + 1] != "]":
                self.pos += 1
                hi = self.class_char()
                if ord(hi) < ord(lo):
                    self.error(f"bad range {lo}-{hi}")
                chars.update(chr(o) for o in range(ord(lo), ord(hi) + 1))
            else:
                chars.add(lo)
        self.pos += 1
        if negate:
            if self.alphabet is None:
                self.error("negated class needs a declared alphabet")
            chars = set(self.alphabet) - chars
        if not chars:
            self.error("empty character class")
        return Chars(frozenset(chars))


def parse_pattern(text: str, alphabet: Iterable[str] | None = None) -> Pattern:
    return _Parser(text, frozenset(alphabet) if alphabet is not None else None).parse()


def parse_class(text: str) -> frozenset[str]:
    """Parse a bare ``[...]`` class (used for alphabet declarations)."""
    p = _Parser(text, None)
    if p.take() != "[":
        p.error("expected '['")
    cls = p.char_class()
    if p.pos != len(text):
        p.error("trailing input after class")
    return cls.chars


# -- direct interpretation ---------------------------------------------------

def _ends(p: Pattern, s: Sequence[str], i: int) -> frozenset[int]:
    if isinstance(p, Empty):
        return frozenset({i})
    if isinstance(p, Chars):
        return frozenset({i + 1}) if i < len(s) and s[i] in p.chars else frozenset()
    if isinstance(p, Concat):
        cur = {i}
        for q in p.parts:
            cur = {e for j in cur for e in _ends(q, s, j)}
        return frozenset(cur)
    if isinstance(p, Alt):
        return frozenset().union(*(_ends(q, s, i) for q in p.options))
    once = _ends(p.inner, s, i)
    if p.kind == "?":
        return once | {i}
    reach = set(once)
    todo = list(once)
    while todo:
        j = todo.pop()
        for e in _ends(p.inner, s, j):
            if e not in reach:
                reach.add(e)
                todo.append(e)
    if p.kind == "*":
        reach.add(i)
    return frozenset(reach)


def interpret(p: Pattern, s: Sequence[str]) -> bool:
    """Whether ``p`` matches all of ``s``, by direct recursion on the AST."""
    return len(s) in _ends(p, s, 0)


# -- compilation ---------------------------------------------------------------

@dataclass
class _NFA:
    eps: list[list[int]] = field(default_factory=list)
    edges: list[list[tuple[frozenset[str], int]]] = field(default_factory=list)

    def state(self):
        self.eps.append([])
        self.edges.append([])
        return len(self.eps) - 1


def _thompson(nfa: _NFA, p: Pattern) -> tuple[int, int]:
    start, end = nfa.state(), nfa.state()
    if isinstance(p, Empty):
        nfa.eps[start].append(end)
    elif isinstance(p, Chars):
        nfa.edges[start].append((p.chars, end))
    elif isinstance(p, Concat):
        cur = start
        for q in p.parts:
            s, e = _thompson(nfa, q)
            nfa.eps[cur].append(s)
            cur = e
        nfa.eps[cur].append(end)
    elif isinstance(p, Alt):
        for q in p.options:
            s, e = _thompson(nfa, q)
            nfa.eps[start].append(s)
            nfa.eps[e].append(end)
    else:
        s, e = _thompson(nfa, p.inner)
        nfa.eps[start].append(s)
        nfa.eps[e].append(end)
        if p.kind in ("*", "?"):
            nfa.eps[start].append(end)
        if p.kind in ("*", "+"):
            nfa.eps[e].append(s)
    return start, end


@dataclass(frozen=True)
class DFA:
    transitions: tuple[dict[str, int], ...]
    accepting: frozenset[int]
    alphabet: frozenset[str]

    def accepts(self, s: Sequence[str]) -> bool:
        state = 0
        for c in s:
            state = self.transitions[state].get(c)
            if state is None:
                return False
        return state in self.accepting

    def match_lengths(self, s: Sequence[str], k: int) -> list[int]:
        """Lengths n such that s[k:k+n] is accepted, ascending."""
        out = [0] if 0 in self.accepting else []
        state = 0
        for n in range(k, len(s)):
            state = self.transitions[state].get(s[n])
            if state is None:
                break
            if state in self.accepting:
                out.append(n - k + 1)
        return out


def compile_dfa(p: Pattern, alphabet: Iterable[str]) -> DFA:
    alphabet = frozenset(alphabet)
    stray = pattern_chars(p) - alphabet
    if stray:
        raise AlphabetError(f"pattern uses characters outside the alphabet: {''.join(sorted(stray))!r}")
    nfa = _NFA()
    start, end = _thompson(nfa, p)

    def closure(states):
        seen = set(states)
        todo = list(states)
        while todo:
            for t in nfa.eps[todo.pop()]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return frozenset(seen)

    first = closure([start])
    index = {first: 0}
    order = [first]
    transitions: list[dict[str, int]] = []
    while len(transitions) < len(order):
        current = order[len(transitions)]
        row = {}
        for c in sorted(alphabet):
            moved = {t for s in current for chars, t in nfa.edges[s] if c in chars}
            if not moved:
                continue
            target = closure(moved)
            if target not in index:
                index[target] = len(order)
                order.append(target)
            row[c] = index[target]
        transitions.append(row)
    accepting = frozenset(i for i, states in enumerate(order) if end in states)
    return DFA(tuple(transitions), accepting, alphabet)
