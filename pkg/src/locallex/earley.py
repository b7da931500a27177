"""Earley recognition with local lexing.

Items are integer quadruples ``(rule index, dot, origin, bin)``.  The
module-level operators (``init``, ``predict``, ``complete``, ``scan``,
``tokens_op``, ``pi``) are literal set comprehensions over whole item sets;
they are the executable definition.  ``compute_chart`` computes the same
fixpoints with per-bin worklists and is checked against the literal
operators in the test suite.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .grammar import Grammar
from .lexing import IdentityLexer, Selector, Token, select, token_sort_key

Item = tuple[int, int, int, int]

_chart_observers: list = []


@contextmanager
def observe_charts(callback):
    """Call ``callback(chart)`` for every chart computed inside the block."""
    _chart_observers.append(callback)
    try:
        yield
    finally:
        _chart_observers.remove(callback)


def item_str(g: Grammar, item: Item) -> str:
    r, d, i, j = item
    rule = g.rules[r]
    rhs = list(rule.rhs)
    rhs.insert(d, "•")
    return f"({rule.lhs} -> {' '.join(rhs)}, {i}, {j})"


def next_symbol(g: Grammar, item: Item) -> str | None:
    rhs = g.rules[item[0]].rhs
    return rhs[item[1]] if item[1] < len(rhs) else None


def item_bound(g: Grammar, n: int) -> int:
    return (comb(n + 1, 2) + n + 1) * g.rule_size


# -- literal operators ------------------------------------------------------

def init(g: Grammar) -> frozenset[Item]:
    return frozenset((r, 0, 0, 0) for r in g.rules_by_lhs.get(g.start, ()))


def predict(k: int, I: Iterable[Item], g: Grammar) -> frozenset[Item]:
    I = frozenset(I)
    new = {(r, 0, k, k)
           for item in I if item[3] == k
           for m in [next_symbol(g, item)] if m is not None and m in g.nonterminals
           for r in g.rules_by_lhs.get(m, ())}
    return I | new


def complete(k: int, I: Iterable[Item], g: Grammar) -> frozenset[Item]:
    I = frozenset(I)
    done = [(g.rules[r].lhs, i) for r, d, i, j in I if j == k and d == len(g.rules[r].rhs)]
    new = {(r, d + 1, i, k)
           for (r, d, i, j) in I
           for m, origin in done
           if origin == j and next_symbol(g, (r, d, i, j)) == m}
    return I | new


def scan(T: Iterable[Token], k: int, I: Iterable[Item], g: Grammar) -> frozenset[Item]:
    I = frozenset(I)
    new = {(r, d + 1, i, k + len(x.chars))
           for x in T
           for (r, d, i, j) in I
           if j == k and next_symbol(g, (r, d, i, j)) == x.terminal}
    return I | new


def tokens_op(sel: Selector, lx, T: Iterable[Token], k: int, I: Iterable[Item],
              D: Sequence[str], g: Grammar) -> frozenset[Token]:
    candidates = {next_symbol(g, item) for item in I if item[3] == k}
    found: set[Token] = set()
    for X in candidates:
        if X is not None and X in g.terminals:
            found |= lx.lex_terminal(X, D, k)
    return select(sel, T, set(T) | found)


def pi(k: int, T: Iterable[Token], I: Iterable[Item], g: Grammar) -> frozenset[Item]:
    T = frozenset(T)
    current = frozenset(I)
    while True:
        nxt = scan(T, k, complete(k, predict(k, current, g), g), g)
        if nxt == current:
            return current
        current = nxt


# -- worklist engine --------------------------------------------------------

class _Bin:
    __slots__ = ("items", "waiting", "nulled")

    def __init__(self):
        self.items: dict[Item, None] = {}
        self.waiting: dict[str, list[Item]] = {}
        self.nulled: set[str] = set()


def _close(g: Grammar, bins: list[_Bin], k: int, tokens: dict[str, list[Token]],
           n: int) -> int:
    """Close bin ``k`` under Predict k, Complete k and Scan T k.

    Returns the number of items added to any bin.
    """
    added = 0
    here = bins[k]
    agenda = list(here.items)

    def add(item):
        nonlocal added
        j = item[3]
        assert j <= n, "scan moved past the end of the input"
        b = bins[j]
        if item in b.items:
            return
        b.items[item] = None
        added += 1
        sym = next_symbol(g, item)
        if sym is not None:
            b.waiting.setdefault(sym, []).append(item)
        if j == k:
            agenda.append(item)

    while agenda:
        item = agenda.pop()
        r, d, i, _ = item
        rhs = g.rules[r].rhs
        if d < len(rhs):
            sym = rhs[d]
            if sym in g.terminals:
                for x in tokens.get(sym, ()):
                    add((r, d + 1, i, k + len(x.chars)))
            else:
                for r2 in g.rules_by_lhs.get(sym, ()):
                    add((r2, 0, k, k))
                if sym in here.nulled:
                    add((r, d + 1, i, k))
        else:
            lhs = g.rules[r].lhs
            if i == k:
                here.nulled.add(lhs)
            for w in list(bins[i].waiting.get(lhs, ())):
                add((w[0], w[1] + 1, w[2], k))
    return added


@dataclass
class Chart:
    g: Grammar
    D: Sequence[str]
    bins: tuple[frozenset[Item], ...]
    tokens: tuple[frozenset[Token], ...]
    trace: list | None = field(default=None, repr=False)

    @property
    def items(self) -> frozenset[Item]:
        return frozenset().union(*self.bins)

    def __len__(self):
        return sum(len(b) for b in self.bins)

    def accepted(self) -> bool:
        n = len(self.D)
        g = self.g
        return any(i == 0 and d == len(g.rules[r].rhs) and g.rules[r].lhs == g.start
                   for (r, d, i, _) in self.bins[n])

    def dump(self) -> str:
        g = self.g
        lines = []
        for j, b in enumerate(self.bins):
            for r, d, i, _ in sorted(b, key=lambda it: (it[0], it[1], it[2])):
                rhs = list(g.rules[r].rhs)
                alpha = " ".join(rhs[:d])
                beta = " ".join(rhs[d:])
                body = " ".join(s for s in (alpha, "•", beta) if s)
                lines.append(f"{j}\t{g.rules[r].lhs} -> {body}\t{i}")
        for k, toks in enumerate(self.tokens):
            for x in sorted(toks, key=token_sort_key):
                text = "".join(x.chars)
                lines.append(f'{k}\t{x.terminal}\t"{text}"')
        return "\n".join(lines) + "\n"


def compute_chart(g: Grammar, lx, sel: Selector, D: Sequence[str], trace: bool = False) -> Chart:
    n = len(D)
    bins = [_Bin() for _ in range(n + 1)]
    for item in sorted(init(g)):
        bins[0].items[item] = None
        sym = next_symbol(g, item)
        if sym is not None:
            bins[0].waiting.setdefault(sym, []).append(item)
    lexed: dict[tuple[str, int], frozenset[Token]] = {}
    selected: list[frozenset[Token]] = []
    steps = [] if trace else None

    def snapshot():
        return frozenset(it for b in bins for it in b.items)

    for k in range(n + 1):
        _close(g, bins, k, {}, n)  # J_k^0
        T: frozenset[Token] = frozenset()
        if trace:
            steps.append((k, 0, snapshot(), T))
        u = 0
        while True:
            terminals = {s for s in bins[k].waiting if s in g.terminals}
            found: set[Token] = set()
            for X in terminals:
                key = (X, k)
                if key not in lexed:
                    lexed[key] = lx.lex_terminal(X, D, k)
                found |= lexed[key]
            T_next = select(sel, T, T | found)
            by_terminal: dict[str, list[Token]] = {}
            for x in T_next:
                by_terminal.setdefault(x.terminal, []).append(x)
            added = _close(g, bins, k, by_terminal, n)
            u += 1
            if trace:
                steps.append((k, u, snapshot(), T_next))
            T = T_next
            if not added:
                break
        selected.append(T)
    chart = Chart(g, tuple(D), tuple(frozenset(b.items) for b in bins), tuple(selected), steps)
    assert len(chart) <= item_bound(g, n), "item count exceeds the finite bound"
    for callback in _chart_observers:
        callback(chart)
    return chart


def recognize(g: Grammar, lx, sel: Selector, D: Sequence[str]) -> bool:
    return compute_chart(g, lx, sel, D).accepted()


def viable_prefix(g: Grammar, w: Sequence[str]) -> bool:
    """Whether ``w`` is a prefix of some sentence, via identity lexing."""
    chart = compute_chart(g, IdentityLexer(g.terminals), Selector(), tuple(w))
    return bool(chart.bins[len(w)])


class PrefixRecognizer:
    """Incremental identity-lexing recognizer over terminal words.

    States are tuples of closed bins shared between words with a common
    prefix; ``None`` marks a word that is not a viable prefix.
    """

    def __init__(self, g: Grammar):
        self.g = g
        start = _Bin()
        for item in sorted(init(g)):
            start.items[item] = None
            sym = next_symbol(g, item)
            if sym is not None:
                start.waiting.setdefault(sym, []).append(item)
        _close(g, [start], 0, {}, 0)
        self._states: dict[tuple[str, ...], tuple[_Bin, ...] | None] = {(): (start,)}

    def state(self, w: Sequence[str]) -> tuple[_Bin, ...] | None:
        w = tuple(w)
        if w in self._states:
            return self._states[w]
        prev = self.state(w[:-1])
        result = None
        if prev is not None:
            t = w[-1]
            k = len(prev) - 1
            nb = _Bin()
            for item in prev[k].waiting.get(t, ()):
                adv = (item[0], item[1] + 1, item[2], k + 1)
                nb.items[adv] = None
                sym = next_symbol(self.g, adv)
                if sym is not None:
                    nb.waiting.setdefault(sym, []).append(adv)
            if nb.items:
                bins = list(prev) + [nb]
                _close(self.g, bins, k + 1, {}, k + 1)
                result = tuple(bins)
        self._states[w] = result
        return result

    def is_prefix(self, w: Sequence[str]) -> bool:
        return self.state(w) is not None

    def accepts(self, w: Sequence[str]) -> bool:
        st = self.state(w)
        if st is None:
            return False
        g = self.g
        return any(i == 0 and d == len(g.rules[r].rhs) and g.rules[r].lhs == g.start
                   for (r, d, i, _) in st[-1].items)


@dataclass(frozen=True)
class Extraction:
    paths: frozenset[tuple[Token, ...]]
    truncated: bool


def extract_ll(chart: Chart, g: Grammar, D: Sequence[str] | None = None, caps=None,
               prefixes: PrefixRecognizer | None = None) -> Extraction:
    """Token sequences of the character input, rebuilt from the selected tokens.

    Depth-first over the per-position selected sets, pruned by the viable-prefix
    test.  At most ``caps.max_epsilon_iterations`` consecutive empty tokens
    are emitted; hitting that or ``caps.max_paths`` marks the result truncated.
    """
    if caps is None:
        from .oracle import OracleConfig
        caps = OracleConfig()
    D = chart.D if D is None else tuple(D)
    n = len(D)
    prefixes = prefixes or PrefixRecognizer(g)
    ordered = [sorted(ts, key=token_sort_key) for ts in chart.tokens]
    found: set[tuple[Token, ...]] = set()
    truncated = False
    stack: list[tuple[tuple[Token, ...], tuple[str, ...], int, int]] = [((), (), 0, 0)]
    while stack:
        path, terms, k, eps_run = stack.pop()
        if k == n and prefixes.accepts(terms):
            found.add(path)
            if len(found) > caps.max_paths:
                truncated = True
                break
        for x in ordered[k]:
            ext = terms + (x.terminal,)
            if not prefixes.is_prefix(ext):
                continue
            if x.empty:
                if eps_run >= caps.max_epsilon_iterations:
                    truncated = True
                    continue
                stack.append((path + (x,), ext, k, eps_run + 1))
            else:
                stack.append((path + (x,), ext, k + len(x.chars), 0))
    return Extraction(frozenset(found), truncated)
