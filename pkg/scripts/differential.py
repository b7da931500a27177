"""Compare the Earley recognizer with the reference semantics on random corpora."""

import random
import time
from dataclasses import dataclass

from _config import parse_config
from locallex.cli import compare
from locallex.grammar import enumerate_language
from locallex.oracle import OracleConfig
from locallex.randgen import identity_setup, random_grammar, random_local_lexing, words


@dataclass
class DifferentialConfig:
    seed: int = 0
    grammars: int = 200
    identity_max_len: int = 5
    local_lexings: int = 200
    local_max_len: int = 4
    max_epsilon: int = 3
    max_paths: int = 5000


def main(cfg: DifferentialConfig):
    caps = OracleConfig(cfg.max_epsilon, cfg.max_paths)
    t0 = time.perf_counter()
    stats = {"runs": 0, "compared": 0, "truncated": 0, "membership_errors": 0, "disagreements": 0}
    for i in range(cfg.grammars):
        s = identity_setup(random_grammar(random.Random(cfg.seed + i)))
        lang = enumerate_language(s.grammar, cfg.identity_max_len)
        for D in words("ab", cfg.identity_max_len):
            rep = compare(*s, D, caps)
            stats["runs"] += 1
            stats["compared"] += rep.compared_sets
            stats["disagreements"] += not rep.agree
            accepted = rep.lines[0].startswith("AGREE ACCEPT") if rep.agree else None
            stats["membership_errors"] += accepted is not None and accepted != (tuple(D) in lang)
    for i in range(cfg.local_lexings):
        s = random_local_lexing(random.Random(cfg.seed + 10**6 + i))
        for D in words("ab", cfg.local_max_len):
            rep = compare(*s, D, caps)
            stats["runs"] += 1
            stats["compared"] += rep.compared_sets
            stats["truncated"] += not rep.compared_sets
            stats["disagreements"] += not rep.agree
    for k, v in stats.items():
        print(f"{k:>18}: {v}")
    print(f"{time.perf_counter() - t0:.1f}s")
    return stats["disagreements"] + stats["membership_errors"]


if __name__ == "__main__":
    raise SystemExit(1 if main(parse_config(DifferentialConfig)) else 0)
