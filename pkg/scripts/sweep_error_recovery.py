"""Count token sequences for every short input of the error-recovery grammar.

Prints a histogram of |ll(D)| and writes it as JSON.  A count marked '>='
means extraction hit the empty-token cap, so more sequences exist.
"""

import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from _config import parse_config
from locallex.examples import error_recovery
from locallex.lexing import format_path
from locallex.earley import compute_chart, extract_ll
from locallex.oracle import OracleConfig
from locallex.sweep import sweep_counts


@dataclass
class SweepConfig:
    max_len: int = 4
    max_epsilon: int = 8
    max_paths: int = 100
    out: str = "results/sweep_error_recovery.json"


def main(cfg: SweepConfig):
    s = error_recovery()
    t0 = time.perf_counter()
    rep = sweep_counts(s, cfg.max_len, OracleConfig(cfg.max_epsilon, cfg.max_paths))
    elapsed = time.perf_counter() - t0
    print(f"{rep.inputs} inputs, {rep.representatives} representatives, {elapsed:.1f}s")
    for (n, exact), count in sorted(rep.histogram.items()):
        print(f"  |ll| {'=' if exact else '>='} {n:>3}: {count}")
    D = rep.failures[0][0] if rep.failures else ""
    print(f"sample sequences for {D!r} (empty-token cap 2):")
    ex = extract_ll(compute_chart(*s, D), s.grammar, D, OracleConfig(2))
    for p in sorted(ex.paths, key=len)[:5]:
        print("  " + format_path(p))
    out = Path(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({
        "config": asdict(cfg), "inputs": rep.inputs, "representatives": rep.representatives,
        "seconds": round(elapsed, 2),
        "histogram": [{"n": n, "exact": e, "inputs": c} for (n, e), c in sorted(rep.histogram.items())],
    }, indent=1) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main(parse_config(SweepConfig))
