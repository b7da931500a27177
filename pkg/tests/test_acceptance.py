"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run alone with ``python3 -m pytest tests/test_acceptance.py -v`` (or execute
this file); the lines are repeated in the terminal summary.
"""

import io
import itertools
import random
import sys
import time

import pytest

from acceptance_report import report
from expected import H_ORDER_LEXINGS, H_LONGEST_LEXINGS, H_LONGEST_ORDER_LEXINGS, LEXER_HACK_LEXINGS, RECOVERY_INPUT, RECOVERY_PATH, H_NONE_LEXINGS, pumped
from locallex.cli import compare, main
from locallex.earley import PrefixRecognizer, compute_chart, extract_ll, item_bound, observe_charts
from locallex.examples import error_recovery, grammar_H, infinite_example, lexer_hack
from locallex.forest import build_forest, enumerate_trees
from locallex.grammar import enumerate_language
from locallex.lexing import (ALL, LONGEST, SELECTOR_MODES, Lexer, OrderError, Selector, Token,
                             select)
from locallex.oracle import OracleConfig, ll_of, run_semantics
from locallex.randgen import PATTERN_POOL, NULLABLE_POOL, identity_setup, random_grammar, \
    random_local_lexing, words
from locallex.specfile import load_spec
from locallex.sweep import sweep_counts
from locallex.validity import crossover_violations, disentanglement_violations, p_valid_items

N_GRAMMARS = 200
MAX_LEN = 5
N_LOCAL = 120           # extra random local lexings (with empty tokens) for 7 and 10
LOCAL_MAX_LEN = 4
CAPS = OracleConfig(max_epsilon_iterations=3, max_paths=5000)
FUZZ_CALLS = 10_000

# sizes and bounds of every chart computed by criteria 1-7
CHART_LOG: list[tuple[int, int]] = []


@pytest.fixture(autouse=True)
def _log_charts():
    def record(chart):
        CHART_LOG.append((len(chart), item_bound(chart.g, len(chart.D))))
    with observe_charts(record):
        yield


def fmt(paths):
    return sorted(" ".join(map(str, p)) for p in paths)


def identity_corpus():
    return [identity_setup(random_grammar(random.Random(seed))) for seed in range(N_GRAMMARS)]


def local_corpus():
    return [random_local_lexing(random.Random(10_000 + seed)) for seed in range(N_LOCAL)]


BUNDLED_INPUTS = {
    "H-none.ll": ["a-b+c", "a", "+", "a+b-c", "ab"],
    "H-order.ll": ["a-b+c", "ab-c"],
    "H-longest.ll": ["a-b+c", "a--b"],
    "H-longest-order.ll": ["a-b+c", "c-a"],
    "traditional.ll": ["if x1 22", "", "ifx", "iff"],
    "infinite.ll": ["aa", "", "a"],
    "lexerhack.ll": ["(a)*b", "*b", "()", "a*b"],
    "err.ll": ["1+2*3", RECOVERY_INPUT, ")", "", "(1"],
}


def test_criterion_01_H_none_cli():
    out = io.StringIO()
    t0 = time.perf_counter()
    code = main(["tokens", "H-none.ll", "a-b+c"], out, io.StringIO())
    elapsed = time.perf_counter() - t0
    lines = out.getvalue().splitlines()
    ok = code == 0 and sorted(lines) == fmt(H_NONE_LEXINGS) and elapsed < 1.0
    report(1, ok, f"{len(lines)} sequences, set equal to the eight published lexings: {sorted(lines) == fmt(H_NONE_LEXINGS)}, "
                  f"{elapsed:.3f}s")


def test_criterion_02_H_selectors():
    got, counts = [], []
    for variant, expected in [(4, H_ORDER_LEXINGS), (5, H_LONGEST_LEXINGS), (6, H_LONGEST_ORDER_LEXINGS)]:
        s = grammar_H(variant)
        chart = compute_chart(*s, "a-b+c")
        got.append(extract_ll(chart, s.grammar).paths == expected)
        counts.append(len(enumerate_trees(build_forest(chart, s.grammar))))
    ok = all(got) and counts == [1, 2, 1]
    report(2, ok, f"sets match {got}, tree counts {counts} (want [1, 2, 1])")


def test_criterion_03_lexer_hack():
    s = lexer_hack()
    chart = compute_chart(*s, "(a)*b")
    paths = extract_ll(chart, s.grammar).paths
    f = build_forest(chart, s.grammar)
    rhs = {s.grammar.rules[fam.rule].rhs for fams in f.families.values() for fam in fams}
    has = ("Mul",) in rhs and ("Cast",) in rhs
    report(3, paths == LEXER_HACK_LEXINGS and has, f"{len(paths)} sequences equal displayed set: {paths == LEXER_HACK_LEXINGS}, "
                                    f"Mul and Cast families: {has}")


def test_criterion_04_error_recovery():
    s = error_recovery()
    chart = compute_chart(*s, RECOVERY_INPUT)
    accepted = chart.accepted()
    contains = RECOVERY_PATH in extract_ll(chart, s.grammar, caps=OracleConfig(2)).paths
    t0 = time.perf_counter()
    rep = sweep_counts(s, 4, OracleConfig(max_epsilon_iterations=8, max_paths=100))
    elapsed = time.perf_counter() - t0
    unique = rep.histogram.get((1, True), 0)
    parsed = sum(v for (n, _), v in rep.histogram.items() if n > 0)
    smallest = min(n for n, _ in rep.histogram)
    example = rep.failures[0] if rep.failures else None
    ok = accepted and contains and unique == rep.inputs and elapsed < 300
    report(4, ok, f"accept={accepted}, displayed path found={contains}; sweep |D|<=4: "
                  f"{unique}/{rep.inputs} inputs with |ll|=1, {parsed} with |ll|>=1, "
                  f"min |ll|>={smallest}, e.g. {example[0]!r} -> >={example[1].n} "
                  f"({rep.representatives} class representatives, {elapsed:.1f}s)"
           if example else f"accept={accepted}, path={contains}, all {rep.inputs} unique")


def test_criterion_05_empty_token_caps():
    s = infinite_example()
    results = []
    for cap in range(4):
        caps = OracleConfig(max_epsilon_iterations=cap)
        ex = extract_ll(compute_chart(*s, "aa"), s.grammar, caps=caps)
        orc = ll_of(run_semantics(*s, "aa", caps), s.grammar)
        results.append(ex.paths == pumped(cap) and orc == pumped(cap))
    report(5, all(results), f"caps 0..3 equal the first u+1 elements: {results}")


def test_criterion_06_recognizer_vs_language():
    bad = runs = 0
    for s in identity_corpus():
        lang = enumerate_language(s.grammar, MAX_LEN)
        for D in words("ab", MAX_LEN):
            runs += 1
            if compute_chart(*s, D).accepted() != (tuple(D) in lang):
                bad += 1
    report(6, bad == 0, f"{N_GRAMMARS} grammars x {runs // N_GRAMMARS} inputs: {bad} disagreements")


def test_criterion_07_differential():
    bad, compared, truncated, runs = [], 0, 0, 0
    cases = [(s, MAX_LEN) for s in identity_corpus()] + [(s, LOCAL_MAX_LEN) for s in local_corpus()]
    for s, n in cases:
        for D in words(sorted(s.lexer.alphabet), n):
            rep = compare(*s, D, CAPS)
            runs += 1
            compared += rep.compared_sets
            truncated += not rep.compared_sets
            if not rep.agree:
                bad.append((D, rep.lines))
    for spec, inputs in BUNDLED_INPUTS.items():
        s = load_spec(spec)
        for D in inputs:
            rep = compare(*s, D, CAPS)
            runs += 1
            compared += rep.compared_sets
            truncated += not rep.compared_sets
            if not rep.agree:
                bad.append((spec, D, rep.lines))
    report(7, not bad, f"{runs} runs ({compared} fully compared, {truncated} truncated): "
                       f"{len(bad)} disagreements {bad[:2] if bad else ''}")


def test_criterion_08_item_bound():
    if not CHART_LOG:  # run in isolation: regenerate a workload
        for s in identity_corpus()[:20]:
            for D in words("ab", MAX_LEN):
                compute_chart(*s, D)
    over = [(n, b) for n, b in CHART_LOG if n > b]
    worst = max(n / b for n, b in CHART_LOG)
    report(8, not over, f"{len(CHART_LOG)} charts, {len(over)} over the bound, "
                        f"max |I|/bound = {worst:.3f}")


def test_criterion_09_p_validity():
    rng = random.Random(9)
    done = mismatched = skipped = 0
    while done < 50:
        s = random_local_lexing(rng, max_nonterminals=3, max_rules=6)
        D = "".join(rng.choice("ab") for _ in range(rng.randint(0, 3)))
        res = run_semantics(*s, D, OracleConfig(4, 2000))
        if res.truncated:
            skipped += 1
            continue
        chart = compute_chart(*s, D)
        if p_valid_items(s.grammar, res.paths) != chart.items:
            mismatched += 1
        done += 1
    report(9, mismatched == 0, f"50 cases ({skipped} truncated cases skipped): "
                               f"{mismatched} with chart != generated items")


def test_criterion_10_crossover_and_disentanglement():
    checked = truncated = cross = dis = 0
    cases = [(s, MAX_LEN) for s in identity_corpus()[:60]] + [(s, LOCAL_MAX_LEN) for s in local_corpus()]
    for s, n in cases:
        prefixes = PrefixRecognizer(s.grammar)
        for D in words(sorted(s.lexer.alphabet), n):
            res = run_semantics(*s, D, CAPS, trace=True, prefixes=prefixes)
            if res.truncated:
                truncated += 1
                continue
            checked += 1
            cross += bool(crossover_violations(res, prefixes, limit=1))
            missing, unexplained = disentanglement_violations(res, prefixes, CAPS.max_epsilon_iterations)
            dis += bool(missing or unexplained)
    report(10, cross == 0 and dis == 0,
           f"{checked} non-truncated runs ({truncated} truncated skipped): "
           f"{cross} crossover and {dis} disentanglement violations")


def test_criterion_11_contract_fuzz():
    rng = random.Random(11)
    terms = ["p", "q", "r", "s", "t"]
    sel_bad = sel_calls = 0
    while sel_calls < FUZZ_CALLS:
        mode = rng.choice(SELECTOR_MODES)
        edges = [(rng.choice(terms), rng.choice(terms + ["*"])) for _ in range(rng.randint(0, 5))]
        try:
            sel = Selector.build(mode, edges, terms)
        except OrderError:
            continue
        B = {Token(rng.choice(terms), "x" * rng.randint(0, 3)) for _ in range(rng.randint(0, 7))}
        A = {x for x in B if rng.random() < 0.3}
        out = select(sel, A, B)
        sel_calls += 1
        sel_bad += not (A <= out <= B)
    lex_bad = lex_calls = 0
    alphabet = "ab"
    while lex_calls < FUZZ_CALLS:
        pats = {f"t{i}": (rng.choice(PATTERN_POOL + NULLABLE_POOL), rng.choice([LONGEST, ALL]))
                for i in range(3)}
        lx = Lexer.from_patterns(pats, alphabet)
        D = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 8)))
        k = rng.randint(0, len(D))
        t = rng.choice(sorted(pats))
        for x in lx.lex_terminal(t, D, k):
            lex_bad += x.terminal != t or D[k:k + len(x.chars)] != x.chars
        lex_calls += 1
    report(11, sel_bad == 0 and lex_bad == 0,
           f"{sel_calls} selector calls, {sel_bad} violations; {lex_calls} lexer calls, {lex_bad} violations")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
