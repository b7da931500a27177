"""Context-free grammars and brute-force language oracles.

The oracles here are deliberately naive bottom-up fixpoints over bounded
string sets.  They exist so that the Earley engine can be checked against
something that shares none of its machinery, and they are only usable for
small grammars and short strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Word = tuple[str, ...]

DEFAULT_NODE_BUDGET = 10**6


class ResourceLimitError(RuntimeError):
    """Raised when an exhaustive oracle exceeds its node budget."""


@dataclass(frozen=True, order=True)
class Symbol:
    kind: str  # "nonterminal" | "terminal"
    name: str

    def __post_init__(self):
        if self.kind not in ("nonterminal", "terminal"):
            raise ValueError(f"bad symbol kind {self.kind!r}")
        if not self.name:
            raise ValueError("symbol name must be nonempty")


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]

    def __str__(self):
        return f"{self.lhs} -> {' '.join(self.rhs) if self.rhs else 'ε'}"


@dataclass(frozen=True)
class Grammar:
    """A grammar over symbol names; nonterminals and terminals must be disjoint.

    Construction does not validate; call :func:`validate` for a report.
    """

    nonterminals: frozenset[str]
    terminals: frozenset[str]
    rules: tuple[Rule, ...]
    start: str

    @classmethod
    def build(cls, start: str, rules: Iterable[tuple[str, Sequence[str]]],
              terminals: Iterable[str], nonterminals: Iterable[str] = ()) -> Grammar:
        rules = tuple(Rule(lhs, tuple(rhs)) for lhs, rhs in rules)
        nts = frozenset(nonterminals) | {r.lhs for r in rules} | {start}
        return cls(nts, frozenset(terminals), rules, start)

    def is_terminal(self, name: str) -> bool:
        return name in self.terminals

    def symbol(self, name: str) -> Symbol:
        kind = "terminal" if name in self.terminals else "nonterminal"
        return Symbol(kind, name)

    @cached_property
    def rules_by_lhs(self) -> dict[str, tuple[int, ...]]:
        out: dict[str, list[int]] = {n: [] for n in self.nonterminals}
        for idx, r in enumerate(self.rules):
            out.setdefault(r.lhs, []).append(idx)
        return {n: tuple(v) for n, v in out.items()}

    @cached_property
    def nullable(self) -> frozenset[str]:
        nullable: set[str] = set()
        changed = True
        while changed:
            changed = False
            for r in self.rules:
                if r.lhs not in nullable and all(s in nullable for s in r.rhs):
                    nullable.add(r.lhs)
                    changed = True
        return frozenset(nullable)

    @cached_property
    def rule_size(self) -> int:
        """Sum over rules of 1 + |rhs|, the per-span item capacity."""
        return sum(1 + len(r.rhs) for r in self.rules)

    def __str__(self):
        return "\n".join(str(r) for r in self.rules)


def validate(g: Grammar) -> list[str]:
    violations = []
    for name in sorted(g.nonterminals & g.terminals):
        violations.append(f"symbol {name!r} is both a terminal and a nonterminal")
    for name in sorted(g.nonterminals | g.terminals):
        if not name:
            violations.append("empty symbol name")
    if g.start not in g.nonterminals or g.start in g.terminals:
        violations.append(f"start symbol {g.start!r} is not a nonterminal")
    declared = g.nonterminals | g.terminals
    for idx, r in enumerate(g.rules):
        if r.lhs not in g.nonterminals or r.lhs in g.terminals:
            violations.append(f"rule {idx} ({r}): left-hand side {r.lhs!r} is not a nonterminal")
        for s in r.rhs:
            if s not in declared:
                violations.append(f"rule {idx} ({r}): undeclared symbol {s!r}")
    return violations


def unproductive_nonterminals(g: Grammar) -> frozenset[str]:
    productive = set(g.terminals)
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            if r.lhs not in productive and all(s in productive for s in r.rhs):
                productive.add(r.lhs)
                changed = True
    return frozenset(g.nonterminals - productive)


def canonical(words: Iterable[Word]) -> list[Word]:
    return sorted(words, key=lambda w: (len(w), w))


# A derivation is (nonterminal, rule index, children) where each child is a
# terminal name or a nested derivation.
Derivation = tuple


class LanguageOracle:
    """Bounded language tables for every nonterminal of ``g``.

    ``lang[X]`` maps each terminal word of length <= ``bound`` derivable
    from ``X`` to one recorded witness (rule index, child words).  Witnesses
    only refer to entries that existed before them, so :meth:`derivation`
    always terminates.
    """

    def __init__(self, g: Grammar, bound: int, budget: int = DEFAULT_NODE_BUDGET):
        if bound < 0:
            raise ValueError("bound must be >= 0")
        self.g = g
        self.bound = bound
        self.budget = budget
        self._size = 0
        self.lang: dict[str, dict[Word, tuple[int, tuple[Word, ...]]]] = {
            n: {} for n in g.nonterminals}
        self._fill_language()

    def _charge(self, n=1):
        self._size += n
        if self._size > self.budget:
            raise ResourceLimitError(f"oracle exceeded node budget of {self.budget}")

    def words(self, sym: str) -> Iterable[Word]:
        if sym in self.g.terminals:
            return ((sym,),) if self.bound >= 1 else ()
        return self.lang.get(sym, {}).keys()

    def _concat(self, symbols: Sequence[str], limit: int) -> dict[Word, tuple[Word, ...]]:
        """All words of ``symbols`` with length <= limit, each with one split."""
        partial: dict[Word, tuple[Word, ...]] = {(): ()}
        for s in symbols:
            nxt: dict[Word, tuple[Word, ...]] = {}
            for pre, parts in partial.items():
                for w in list(self.words(s)):
                    if len(pre) + len(w) <= limit:
                        key = pre + w
                        if key not in nxt:
                            nxt[key] = parts + (w,)
                            self._charge()
            partial = nxt
            if not partial:
                break
        return partial

    def _fill_language(self):
        g = self.g
        changed = True
        while changed:
            changed = False
            for idx, r in enumerate(g.rules):
                table = self.lang.setdefault(r.lhs, {})
                for w, parts in self._concat(r.rhs, self.bound).items():
                    if w not in table:
                        table[w] = (idx, parts)
                        self._charge()
                        changed = True

    def derives(self, symbols: Sequence[str], word: Sequence[str]) -> bool:
        """Whether the sentential form ``symbols`` derives exactly ``word``."""
        word = tuple(word)
        if len(word) > self.bound:
            raise ValueError("word longer than oracle bound")
        reach = {0}
        for s in symbols:
            nxt = set()
            for start in reach:
                for w in self.words(s):
                    if word[start:start + len(w)] == w:
                        nxt.add(start + len(w))
            reach = nxt
            if not reach:
                return False
        return len(word) in reach

    def derivation(self, sym: str, word: Word) -> Derivation | str:
        if sym in self.g.terminals:
            assert word == (sym,)
            return sym
        idx, parts = self.lang[sym][word]
        rule = self.g.rules[idx]
        return (sym, idx, tuple(self.derivation(s, w) for s, w in zip(rule.rhs, parts)))

    def prefix_words(self) -> frozenset[Word]:
        """Words w, |w| <= bound, with start =>* w alpha for some alpha."""
        g = self.g
        pre: dict[str, set[Word]] = {n: {()} for n in g.nonterminals}

        def prefixes(s):
            if s in g.terminals:
                return {(), (s,)} if self.bound >= 1 else {()}
            return pre.get(s, {()})

        changed = True
        while changed:
            changed = False
            for r in g.rules:
                target = pre.setdefault(r.lhs, {()})
                for i, s in enumerate(r.rhs):
                    for head in self._concat(r.rhs[:i], self.bound):
                        for tail in list(prefixes(s)):
                            w = head + tail
                            if len(w) <= self.bound and w not in target:
                                target.add(w)
                                self._charge()
                                changed = True
        return frozenset(pre.get(g.start, {()}))

    def left_contexts(self) -> frozenset[tuple[Word, str]]:
        """Pairs (w, N) with start =>* w N gamma and |w| <= bound."""
        g = self.g
        seen = {((), g.start)}
        todo = [((), g.start)]
        while todo:
            w, x = todo.pop()
            for idx in g.rules_by_lhs.get(x, ()):
                rhs = g.rules[idx].rhs
                for i, s in enumerate(rhs):
                    if s in g.terminals:
                        continue
                    for head in self._concat(rhs[:i], self.bound - len(w)):
                        pair = (w + head, s)
                        if pair not in seen:
                            seen.add(pair)
                            self._charge()
                            todo.append(pair)
        return frozenset(seen)


def derivation_yield(g: Grammar, d: Derivation | str) -> Word:
    """Replay a recorded derivation, checking every step against ``g``."""
    if isinstance(d, str):
        if d not in g.terminals:
            raise ValueError(f"leaf {d!r} is not a terminal")
        return (d,)
    sym, idx, children = d
    rule = g.rules[idx]
    if rule.lhs != sym or len(rule.rhs) != len(children):
        raise ValueError(f"derivation step does not match rule {rule}")
    out: Word = ()
    for s, c in zip(rule.rhs, children):
        head = c if isinstance(c, str) else c[0]
        if head != s:
            raise ValueError(f"child {head!r} does not match {s!r} in {rule}")
        out += derivation_yield(g, c)
    return out


def enumerate_language(g: Grammar, max_terminal_length: int,
                       budget: int = DEFAULT_NODE_BUDGET) -> frozenset[Word]:
    oracle = LanguageOracle(g, max_terminal_length, budget)
    return frozenset(oracle.words(g.start))


def enumerate_prefix_language(g: Grammar, max_terminal_length: int,
                              budget: int = DEFAULT_NODE_BUDGET) -> frozenset[Word]:
    return LanguageOracle(g, max_terminal_length, budget).prefix_words()
