"""Write DOT parse forests for the worked examples as DOT files."""

from dataclasses import dataclass
from pathlib import Path

from _config import parse_config
from locallex.earley import compute_chart
from locallex.examples import error_recovery, grammar_H, lexer_hack
from locallex.forest import build_forest, to_dot

CASES = [
    ("H_none", lambda: grammar_H(3), "a-b+c"),
    ("H_order", lambda: grammar_H(4), "a-b+c"),
    ("H_longest", lambda: grammar_H(5), "a-b+c"),
    ("H_longest_order", lambda: grammar_H(6), "a-b+c"),
    ("lexer_hack", lexer_hack, "(a)*b"),
    ("error_recovery", error_recovery, "2(a*+))+(1"),
]


@dataclass
class RenderConfig:
    out_dir: str = "results/forests"


def main(cfg: RenderConfig):
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, ctor, D in CASES:
        s = ctor()
        f = build_forest(compute_chart(*s, D), s.grammar)
        trees = "cyclic" if f.cyclic else f"{f.count_trees()} tree(s)"
        (out / f"{name}.dot").write_text(to_dot(f))
        print(f"{name}: {D!r}, {len(f.nodes())} nodes, {trees}")


if __name__ == "__main__":
    main(parse_config(RenderConfig))
