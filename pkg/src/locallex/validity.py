"""Executable checks of the correctness argument on small cases.

* ``p_valid_items`` decides, for every possible item, whether some oracle
  path justifies it, using only the brute-force derivation oracles.
* ``crossover_violations`` and ``disentanglement_violations`` test the two
  path crossover and disentanglement properties on a traced oracle run.

All of these are exponential and meant for desk-scale inputs.
"""

from __future__ import annotations

from typing import Iterable

from .earley import Item, PrefixRecognizer
from .grammar import Grammar, LanguageOracle
from .lexing import Token, chars_len, terminals_of
from .oracle import Path, SemanticsResult


def p_valid_items(g: Grammar, paths: Iterable[Path], budget: int = 10**6) -> frozenset[Item]:
    """Items (r, d, i, j) that are p-valid for some path p in ``paths``.

    p-valid: for some split u of p, |p| covers [0, j), p[:u] covers [0, i),
    start =>* [p[:u]] N gamma, and rhs[:d] =>* [p[u:]].
    """
    paths = list(paths)
    if not paths:
        return frozenset()
    bound = max(len(p) for p in paths)
    oracle = LanguageOracle(g, bound, budget)
    contexts: dict[tuple[str, ...], set[str]] = {}
    for w, nt in oracle.left_contexts():
        contexts.setdefault(w, set()).add(nt)
    out = set()
    for p in paths:
        w = terminals_of(p)
        j = chars_len(p)
        offsets = [0]
        for x in p:
            offsets.append(offsets[-1] + len(x.chars))
        for u in range(len(p) + 1):
            i = offsets[u]
            for nt in contexts.get(w[:u], ()):
                for r in g.rules_by_lhs.get(nt, ()):
                    rhs = g.rules[r].rhs
                    for d in range(len(rhs) + 1):
                        if oracle.derives(rhs[:d], w[u:]):
                            out.add((r, d, i, j))
    return frozenset(out)


def crossover_violations(result: SemanticsResult, prefixes: PrefixRecognizer,
                         limit: int = 10) -> list[tuple]:
    """Splices p + q[n:] that the path-crossover property requires but are missing."""
    found = []
    for step in result.trace:
        P = step.paths
        by_len: dict[int, list[Path]] = {}
        for p in P:
            by_len.setdefault(chars_len(p), []).append(p)
        for q in P:
            prefix_len = 0
            for n in range(len(q) + 1):
                if n:
                    prefix_len += len(q[n - 1].chars)
                if prefix_len > step.k:
                    break
                tail = q[n:]
                tail_terms = terminals_of(tail)
                for p in by_len.get(prefix_len, ()):
                    if prefixes.is_prefix(terminals_of(p) + tail_terms) and p + tail not in P:
                        found.append((step.k, step.u, p, q, n))
                        if len(found) >= limit:
                            return found
    return found


def paths_from_selected(selected, prefixes: PrefixRecognizer, max_epsilon_run: int) -> set[Path]:
    """All paths whose tokens come from the per-position selected sets and
    whose terminals form a viable prefix (empty-token runs bounded)."""
    out = set()
    stack: list[tuple[Path, int, int]] = [((), 0, 0)]
    while stack:
        p, k, run = stack.pop()
        out.add(p)
        if k >= len(selected):
            continue
        for x in selected[k]:
            if x.empty and run >= max_epsilon_run:
                continue
            if prefixes.is_prefix(terminals_of(p) + (x.terminal,)):
                stack.append((p + (x,), k + len(x.chars), run + 1 if x.empty else 0))
    return out


def disentanglement_violations(result: SemanticsResult, prefixes: PrefixRecognizer,
                               max_epsilon_run: int) -> tuple[set[Path], set[Path]]:
    """(paths missing from P, paths in P not explained by the selected sets)."""
    rebuilt = paths_from_selected(result.selected, prefixes, max_epsilon_run + 1)
    return rebuilt - result.paths, result.paths - rebuilt


def token_list(p: Iterable[Token]) -> str:
    return " ".join(str(x) for x in p)
