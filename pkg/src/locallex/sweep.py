"""Exhaustive sweeps of |ℓℓ(D)| over all short inputs.

Characters that every terminal DFA treats identically (same transition from
every state) are interchangeable: swapping one for the other maps token
sequences one-to-one.  The sweep therefore evaluates one representative
input per class word and attributes its result to every input in the class.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .earley import PrefixRecognizer, compute_chart, extract_ll
from .oracle import OracleConfig


def character_classes(lexer) -> list[frozenset[str]]:
    signature: dict[str, tuple] = {}
    for c in sorted(lexer.alphabet):
        sig = []
        for t in sorted(lexer.recognizers):
            dfa = lexer.recognizers[t].dfa
            sig.append(tuple(row.get(c) for row in dfa.transitions))
        signature[c] = tuple(sig)
    groups: dict[tuple, set[str]] = {}
    for c, sig in signature.items():
        groups.setdefault(sig, set()).add(c)
    return sorted((frozenset(v) for v in groups.values()), key=lambda s: min(s))


@dataclass(frozen=True)
class Count:
    """Number of token sequences found; ``exact`` is False when the true
    count is only known to be at least ``n`` (extraction was capped)."""

    n: int
    exact: bool


def ll_count(setup, D: str, caps: OracleConfig, prefixes: PrefixRecognizer,
             settle_above: int = 1) -> Count:
    """Count sequences, doubling the empty-token cap (up to ``caps``) while the
    result is capped and still no larger than ``settle_above``."""
    g, lx, sel = setup
    chart = compute_chart(g, lx, sel, D)
    eps = min(1, caps.max_epsilon_iterations)
    while True:
        ex = extract_ll(chart, g, D, OracleConfig(eps, caps.max_paths), prefixes)
        cnt = Count(len(ex.paths), not ex.truncated)
        if cnt.exact or cnt.n > settle_above or eps >= caps.max_epsilon_iterations:
            return cnt
        eps = min(2 * eps, caps.max_epsilon_iterations)


@dataclass
class SweepReport:
    inputs: int = 0
    representatives: int = 0
    histogram: Counter = field(default_factory=Counter)
    failures: list[tuple[str, Count]] = field(default_factory=list)


def sweep_counts(setup, max_len: int, caps: OracleConfig | None = None,
                 expect: int = 1, keep_failures: int = 50) -> SweepReport:
    """Count token sequences for every input of length <= max_len."""
    caps = caps or OracleConfig()
    classes = character_classes(setup.lexer)
    rep_of = {c: min(cls) for cls in classes for c in cls}
    prefixes = PrefixRecognizer(setup.grammar)
    memo: dict[str, Count] = {}
    report = SweepReport()
    alphabet = sorted(setup.lexer.alphabet)
    for n in range(max_len + 1):
        for chars in itertools.product(alphabet, repeat=n):
            D = "".join(chars)
            key = "".join(rep_of[c] for c in D)
            if key not in memo:
                memo[key] = ll_count(setup, key, caps, prefixes, expect)
            cnt = memo[key]
            report.inputs += 1
            report.histogram[(cnt.n, cnt.exact)] += 1
            if not (cnt.exact and cnt.n == expect) and len(report.failures) < keep_failures:
                report.failures.append((D, cnt))
    report.representatives = len(memo)
    return report
