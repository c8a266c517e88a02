"""Time parsing, fingerprinting, theme search and strip rendering for one score.

    python scripts/benchmark.py [SCORE] [--repeat N]
"""

import argparse
import time
from pathlib import Path

from harmonic_fingerprint import find_themes, fingerprints, load_score, render_strip

DEFAULT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "synthetic_311.mxl"


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return result, best


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("score", nargs="?", type=Path, default=DEFAULT)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--threshold", type=float, default=0.95)
    ap.add_argument("--min-len", type=int, default=2)
    args = ap.parse_args()

    score, t_parse = timed(lambda: load_score(args.score), args.repeat)
    fps, t_fp = timed(lambda: fingerprints(score.measures), args.repeat)
    themes, t_themes = timed(lambda: find_themes(fps, args.threshold, args.min_len), args.repeat)
    svg, t_strip = timed(lambda: render_strip(fps), args.repeat)

    print(f"score        {args.score.name}: {len(score)} measures, {len(themes)} theme matches")
    print(f"parse        {t_parse * 1000:8.1f} ms")
    print(f"fingerprints {t_fp * 1000:8.1f} ms")
    print(f"find_themes  {t_themes * 1000:8.1f} ms")
    print(f"render_strip {t_strip * 1000:8.1f} ms  ({len(svg) / 1024:.0f} KiB)")
    print(f"total        {(t_parse + t_fp + t_themes + t_strip) * 1000:8.1f} ms")


if __name__ == "__main__":
    main()
