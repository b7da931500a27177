"""Reference semantics of local lexing, evaluated directly on path sets.

This is the slow, literal route: it builds the path sets position by
position and is used to cross-check the Earley recognizer.  Empty tokens can
make the path sets infinite, so extension by an empty token is refused once a
path already ends in ``max_epsilon_iterations`` empty tokens; whenever that
refusal (or ``max_paths``) actually removes something the result is marked
truncated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .earley import PrefixRecognizer
from .grammar import Grammar
from .lexing import Selector, Token, chars_len, select, terminals_of

Path = tuple[Token, ...]


@dataclass(frozen=True)
class OracleConfig:
    max_epsilon_iterations: int = 8
    max_paths: int = 10**5

    def __post_init__(self):
        if self.max_epsilon_iterations < 0 or self.max_paths <= 0:
            raise ValueError("caps must be non-negative (epsilon) and positive (paths)")


@dataclass
class Step:
    """One (k, u) snapshot of the semantics: P_k^u, Z_k^u and W_k^u."""

    k: int
    u: int
    paths: frozenset[Path]
    selected: frozenset[Token]
    admissible: frozenset[Token]


@dataclass
class SemanticsResult:
    paths: frozenset[Path]
    selected: tuple[frozenset[Token], ...]
    truncated: bool
    D: Sequence[str]
    trace: list[Step] = field(default_factory=list, repr=False)


def epsilon_run(p: Path) -> int:
    n = 0
    for x in reversed(p):
        if not x.empty:
            break
        n += 1
    return n


def limit(f: Callable[[frozenset], frozenset], X: Iterable, max_steps: int | None = None):
    """Iterate an inflationary ``f`` from ``X`` until it is stable.

    Returns ``(Y, truncated)``; ``truncated`` is set when ``max_steps``
    applications did not reach a fixpoint.
    """
    current = frozenset(X)
    steps = 0
    while True:
        if max_steps is not None and steps >= max_steps:
            return current, f(current) != current
        nxt = f(current)
        steps += 1
        if nxt == current:
            return current, False
        current = nxt


def admissible(g: Grammar, lx, D: Sequence[str], k: int, P: Iterable[Path],
               prefixes: PrefixRecognizer | None = None) -> frozenset[Token]:
    prefixes = prefixes or PrefixRecognizer(g)
    ends = [p for p in P if chars_len(p) == k]
    if not ends:
        return frozenset()
    out = set()
    for x in lx.tokens_at(D, k):
        for p in ends:
            if prefixes.is_prefix(terminals_of(p) + (x.terminal,)):
                out.add(x)
                break
    return frozenset(out)


def append_tokens(k: int, T: Iterable[Token], P: Iterable[Path], g: Grammar,
                  prefixes: PrefixRecognizer | None = None,
                  epsilon_cap: int | None = None) -> frozenset[Path]:
    prefixes = prefixes or PrefixRecognizer(g)
    P = frozenset(P)
    T = list(T)
    new = set(P)
    for p in P:
        if chars_len(p) != k:
            continue
        run = epsilon_run(p)
        terms = terminals_of(p)
        for x in T:
            if x.empty and epsilon_cap is not None and run >= epsilon_cap:
                continue
            if prefixes.is_prefix(terms + (x.terminal,)):
                new.add(p + (x,))
    return frozenset(new)


def _cap_binds(k, T, P, prefixes, cap) -> bool:
    empties = [x for x in T if x.empty]
    if not empties:
        return False
    for p in P:
        if chars_len(p) == k and epsilon_run(p) >= cap:
            terms = terminals_of(p)
            if any(prefixes.is_prefix(terms + (x.terminal,)) for x in empties):
                return True
    return False


def run_semantics(g: Grammar, lx, sel: Selector, D: Sequence[str],
                  cfg: OracleConfig | None = None, trace: bool = False,
                  prefixes: PrefixRecognizer | None = None) -> SemanticsResult:
    cfg = cfg or OracleConfig()
    prefixes = prefixes or PrefixRecognizer(g)
    P: frozenset[Path] = frozenset({()})
    selected: list[frozenset[Token]] = []
    steps: list[Step] = []
    truncated = False
    for k in range(len(D) + 1):
        Z: frozenset[Token] = frozenset()
        u = 0
        while True:
            W = admissible(g, lx, D, k, P, prefixes)
            if trace:
                steps.append(Step(k, u, P, Z, W))
            # W is taken from the current paths, then the selector runs
            Z_next = select(sel, Z, W)

            def step(Q, Z_next=Z_next):
                return append_tokens(k, Z_next, Q, g, prefixes, cfg.max_epsilon_iterations)

            P_next, _ = limit(step, P)
            if _cap_binds(k, Z_next, P_next, prefixes, cfg.max_epsilon_iterations):
                truncated = True
            if len(P_next) > cfg.max_paths:
                selected.append(Z_next)
                return SemanticsResult(P_next, tuple(selected), True, tuple(D), steps)
            if Z_next == Z and P_next == P:
                break
            Z, P = Z_next, P_next
            u += 1
        selected.append(Z)
    return SemanticsResult(P, tuple(selected), truncated, tuple(D), steps)


def ll_of(result: SemanticsResult, g: Grammar, D: Sequence[str] | None = None,
          prefixes: PrefixRecognizer | None = None) -> frozenset[Path]:
    prefixes = prefixes or PrefixRecognizer(g)
    n = len(result.D if D is None else D)
    return frozenset(p for p in result.paths
                     if chars_len(p) == n and prefixes.accepts(terminals_of(p)))
