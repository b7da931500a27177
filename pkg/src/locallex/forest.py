"""Parse forests over completed charts, tree enumeration and DOT/JSON output.

Nodes are keyed by span: symbol nodes by ``(symbol, i, j)`` and token leaves
by ``(token, i)``.  A symbol node's families are found by walking each
completed item backwards through the chart, one right-hand-side symbol at a
time, so every family is backed by chart items and selected tokens.
Empty-token pumping produces cyclic forests; those are reported and cannot
be enumerated.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator

from .earley import Chart
from .grammar import Grammar
from .lexing import Token


class ForestError(ValueError):
    pass


class ForestCycleError(ForestError):
    pass


@dataclass(frozen=True)
class SymbolNode:
    symbol: str
    i: int
    j: int


@dataclass(frozen=True)
class TokenLeaf:
    token: Token
    i: int

    @property
    def j(self) -> int:
        return self.i + len(self.token.chars)


@dataclass(frozen=True)
class Family:
    rule: int
    children: tuple  # of SymbolNode | TokenLeaf


@dataclass
class ParseForest:
    g: Grammar
    root: SymbolNode
    families: dict[SymbolNode, list[Family]] = field(default_factory=dict)

    def nodes(self) -> list[SymbolNode | TokenLeaf]:
        """All nodes reachable from the root, in breadth-first discovery order."""
        order = [self.root]
        seen = {self.root}
        for node in order:
            if isinstance(node, SymbolNode):
                for fam in self.families[node]:
                    for c in fam.children:
                        if c not in seen:
                            seen.add(c)
                            order.append(c)
        return order

    def ambiguous(self, node: SymbolNode) -> bool:
        return len(self.families[node]) >= 2

    @property
    def cyclic(self) -> bool:
        return self._find_cycle() is not None

    def _find_cycle(self):
        WHITE, GREY, BLACK = 0, 1, 2
        colour: dict[SymbolNode, int] = {}
        stack = [(self.root, iter(self._succ(self.root)))]
        colour[self.root] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = BLACK
                stack.pop()
                continue
            c = colour.get(nxt, WHITE)
            if c == GREY:
                return nxt
            if c == WHITE:
                colour[nxt] = GREY
                stack.append((nxt, iter(self._succ(nxt))))
        return None

    def _succ(self, node):
        return [c for fam in self.families[node] for c in fam.children
                if isinstance(c, SymbolNode)]

    def count_trees(self) -> int:
        if self.cyclic:
            raise ForestCycleError("forest is cyclic; it has infinitely many trees")
        memo: dict[SymbolNode, int] = {}

        def count(node):
            if isinstance(node, TokenLeaf):
                return 1
            if node not in memo:
                total = 0
                for fam in self.families[node]:
                    n = 1
                    for c in fam.children:
                        n *= count(c)
                    total += n
                memo[node] = total
            return memo[node]

        return count(self.root)


def build_forest(chart: Chart, g: Grammar | None = None) -> ParseForest:
    g = g or chart.g
    n = len(chart.D)
    items = chart.items
    completed: dict[tuple[str, int, int], list[int]] = {}
    for r, d, i, j in items:
        if d == len(g.rules[r].rhs):
            completed.setdefault((g.rules[r].lhs, i, j), []).append(r)
    if not completed.get((g.start, 0, n)):
        raise ForestError("chart has no finished start item; the input was rejected")
    tokens: dict[tuple[str, int], list[Token]] = {}
    for k, ts in enumerate(chart.tokens):
        for x in ts:
            tokens.setdefault((x.terminal, k), []).append(x)
    for v in tokens.values():
        v.sort(key=lambda x: (len(x.chars), tuple(x.chars)))

    memo: dict[tuple[int, int, int, int], list[tuple]] = {}

    def splits(r: int, d: int, i: int, j: int) -> list[tuple]:
        """Child sequences for rhs[:d] of rule r spanning [i, j)."""
        key = (r, d, i, j)
        if key in memo:
            return memo[key]
        memo[key] = []
        if d == 0:
            out = [()] if i == j else []
        else:
            out = []
            X = g.rules[r].rhs[d - 1]
            for s in range(i, j + 1):
                if (r, d - 1, i, s) not in items:
                    continue
                if X in g.terminals:
                    last = [TokenLeaf(x, s) for x in tokens.get((X, s), ()) if s + len(x.chars) == j]
                else:
                    last = [SymbolNode(X, s, j)] if completed.get((X, s, j)) else []
                if not last:
                    continue
                for head in splits(r, d - 1, i, s):
                    out.extend(head + (c,) for c in last)
        memo[key] = out
        return out

    forest = ParseForest(g, SymbolNode(g.start, 0, n))
    todo = [forest.root]
    while todo:
        node = todo.pop()
        if node in forest.families:
            continue
        fams = []
        for r in sorted(completed[(node.symbol, node.i, node.j)]):
            for children in splits(r, len(g.rules[r].rhs), node.i, node.j):
                fams.append(Family(r, children))
        fams.sort(key=lambda f: (f.rule, tuple(c.i for c in f.children)))
        forest.families[node] = fams
        todo.extend(c for f in fams for c in f.children
                    if isinstance(c, SymbolNode) and c not in forest.families)
    return forest


@dataclass(frozen=True)
class Tree:
    symbol: str
    i: int
    j: int
    rule: int
    children: tuple  # of Tree | TokenLeaf

    def leaves(self) -> tuple[Token, ...]:
        out: list[Token] = []
        for c in self.children:
            if isinstance(c, TokenLeaf):
                out.append(c.token)
            else:
                out.extend(c.leaves())
        return tuple(out)

    def pretty(self, g: Grammar, indent: int = 0) -> str:
        pad = "  " * indent
        lines = [f"{pad}{self.symbol} [{self.i},{self.j})"]
        for c in self.children:
            if isinstance(c, TokenLeaf):
                lines.append(f"{pad}  {c.token}")
            else:
                lines.append(c.pretty(g, indent + 1))
        return "\n".join(lines)


def _trees(f: ParseForest, node) -> Iterator:
    if isinstance(node, TokenLeaf):
        yield node
        return
    for fam in f.families[node]:
        for combo in itertools.product(*[list(_trees(f, c)) for c in fam.children]):
            yield Tree(node.symbol, node.i, node.j, fam.rule, tuple(combo))


def enumerate_trees(f: ParseForest, max: int = 1000) -> list[Tree]:
    """Up to ``max`` derivation trees, leftmost split first, families in rule order."""
    if max < 1:
        raise ValueError("max must be >= 1")
    if f.cyclic:
        raise ForestCycleError("forest is cyclic; it has infinitely many trees")
    return list(itertools.islice(_trees(f, f.root), max))


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(f: ParseForest) -> str:
    ids = {node: f"n{k}" for k, node in enumerate(f.nodes())}
    lines = ["digraph forest {", "  ordering=out;", "  node [fontname=Helvetica];"]
    edges = []
    fam_count = 0
    for node, nid in ids.items():
        if isinstance(node, TokenLeaf):
            text = "".join(node.token.chars) or "ε"
            label = f"{_dot_escape(text)}\\n―\\n{_dot_escape(node.token.terminal)}"
            lines.append(f'  {nid} [shape=plaintext, label="{label}"];')
            continue
        lines.append(f'  {nid} [shape=ellipse, label="{_dot_escape(node.symbol)}", '
                     f'tooltip="{_dot_escape(node.symbol)} [{node.i},{node.j})"];')
        fams = f.families[node]
        if len(fams) == 1:
            edges.extend(f"  {nid} -> {ids[c]};" for c in fams[0].children)
            continue
        for fam in fams:
            fid = f"f{fam_count}"
            fam_count += 1
            lines.append(f'  {fid} [shape=point, tooltip="{_dot_escape(str(f.g.rules[fam.rule]))}"];')
            edges.append(f"  {nid} -> {fid} [style=dashed, arrowhead=none];")
            edges.extend(f"  {fid} -> {ids[c]};" for c in fam.children)
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(f: ParseForest) -> str:
    nodes = f.nodes()
    index = {node: k for k, node in enumerate(nodes)}
    out = []
    fam_entries = []
    for node in nodes:
        if isinstance(node, TokenLeaf):
            out.append({"kind": "token", "terminal": node.token.terminal,
                        "chars": "".join(node.token.chars), "span": [node.i, node.j]})
        else:
            fam_ids = []
            for fam in f.families[node]:
                fam_ids.append(len(nodes) + len(fam_entries))
                fam_entries.append({"kind": "family", "rule": fam.rule,
                                    "rule_text": str(f.g.rules[fam.rule]),
                                    "span": [node.i, node.j],
                                    "children": [index[c] for c in fam.children]})
            out.append({"kind": "symbol", "symbol": node.symbol,
                        "span": [node.i, node.j], "families": fam_ids})
    return json.dumps({"v": 1, "root": 0, "nodes": out + fam_entries},
                      indent=1, ensure_ascii=False) + "\n"
