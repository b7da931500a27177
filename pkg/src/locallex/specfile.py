"""Line-oriented grammar spec files (``*.ll``).

::

    alphabet [+\\-a-c]
    terminal id /[a-c]+/ longest
    selector order
    priority symbol < id
    rule S -> S plus A | A
    start S
"""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from .examples import Setup
from .grammar import Grammar, validate
from .lexing import ALL, LONGEST, SEL_NONE, SELECTOR_MODES, WILDCARD, Lexer, OrderError, Selector, compile_pattern
from .patterns import PatternError, parse_class, parse_pattern

NAME = r"[A-Za-z_][A-Za-z0-9_\-']*"
_name = re.compile(rf"^{NAME}$")


class SpecError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _check_name(name, lineno):
    if not _name.match(name):
        raise SpecError(f"bad symbol name {name!r}", lineno)
    return name


def _split_pattern(rest: str, lineno: int) -> tuple[str, str]:
    if not rest.startswith("/"):
        raise SpecError("terminal pattern must be written /.../", lineno)
    i = 1
    while i < len(rest):
        if rest[i] == "\\":
            i += 2
            continue
        if rest[i] == "/":
            return rest[1:i], rest[i + 1:].strip()
        i += 1
    raise SpecError("unterminated pattern", lineno)


def parse_spec(text: str) -> Setup:
    alphabet: set[str] = set()
    terminals: dict[str, tuple[str, str, int]] = {}
    rules: list[tuple[str, list[str], int]] = []
    priorities: list[tuple[str, str, int]] = []
    mode = SEL_NONE
    start = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "alphabet":
            try:
                alphabet |= parse_class(rest)
            except PatternError as e:
                raise SpecError(str(e), lineno) from None
        elif keyword == "terminal":
            name, _, rest = rest.partition(" ")
            _check_name(name, lineno)
            if name in terminals:
                raise SpecError(f"terminal {name!r} declared twice", lineno)
            pattern, tail = _split_pattern(rest.strip(), lineno)
            match_mode = tail or LONGEST
            if match_mode not in (LONGEST, ALL):
                raise SpecError(f"unknown match mode {match_mode!r}", lineno)
            terminals[name] = (pattern, match_mode, lineno)
        elif keyword == "selector":
            if rest not in SELECTOR_MODES:
                raise SpecError(f"unknown selector mode {rest!r}", lineno)
            mode = rest
        elif keyword == "priority":
            m = re.fullmatch(rf"({NAME})\s*<\s*({NAME}|\*)", rest)
            if not m:
                raise SpecError("expected 'priority <name> < <name|*>'", lineno)
            priorities.append((m.group(1), m.group(2), lineno))
        elif keyword == "rule":
            lhs, arrow, body = rest.partition("->")
            if not arrow:
                raise SpecError("expected 'rule <N> -> ...'", lineno)
            lhs = _check_name(lhs.strip(), lineno)
            for alt in body.split("|"):
                syms = alt.split()
                if syms == ["ε"]:
                    syms = []
                elif not syms:
                    raise SpecError("empty alternative; write ε for the empty rule", lineno)
                for s in syms:
                    _check_name(s, lineno)
                rules.append((lhs, syms, lineno))
        elif keyword == "start":
            start = _check_name(rest, lineno)
        else:
            raise SpecError(f"unknown declaration {keyword!r}", lineno)

    if start is None:
        raise SpecError("missing 'start' declaration")
    if not alphabet:
        raise SpecError("missing 'alphabet' declaration")
    nonterminals = {lhs for lhs, _, _ in rules}
    for lhs, _, lineno in rules:
        if lhs in terminals:
            raise SpecError(f"{lhs!r} is declared as a terminal but has rules", lineno)
    for _, rhs, lineno in rules:
        for s in rhs:
            if s not in terminals and s not in nonterminals:
                raise SpecError(f"undeclared symbol {s!r}", lineno)
    for lo, hi, lineno in priorities:
        for s in (lo, hi):
            if s != WILDCARD and s not in terminals:
                raise SpecError(f"priority names undeclared terminal {s!r}", lineno)
    g = Grammar.build(start, [(lhs, rhs) for lhs, rhs, _ in rules], terminals, nonterminals)
    problems = validate(g)
    if problems:
        raise SpecError("; ".join(problems))
    recognizers = {}
    for name, (pattern, match_mode, lineno) in terminals.items():
        try:
            recognizers[name] = compile_pattern(parse_pattern(pattern, alphabet), alphabet, match_mode)
        except PatternError as e:
            raise SpecError(f"terminal {name}: {e}", lineno) from None
    try:
        sel = Selector.build(mode, [(lo, hi) for lo, hi, _ in priorities], terminals)
    except OrderError as e:
        raise SpecError(str(e), priorities[-1][2] if priorities else None) from None
    return Setup(g, Lexer(recognizers, frozenset(alphabet)), sel)


def bundled_specs() -> list[str]:
    root = resources.files("locallex") / "specs"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".ll"))


def read_spec_text(name_or_path: str) -> str:
    """Read a spec from a file path, falling back to the bundled specs by name."""
    path = Path(name_or_path)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    bundled = resources.files("locallex") / "specs" / path.name
    if bundled.is_file():
        return bundled.read_text(encoding="utf-8")
    raise FileNotFoundError(name_or_path)


def load_spec(name_or_path: str) -> Setup:
    return parse_spec(read_spec_text(name_or_path))
