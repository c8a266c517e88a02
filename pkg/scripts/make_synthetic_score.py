"""Write the 311-bar synthetic stand-in score used by the scale tests.

Random piano bars with planted repeats (rhythm-varied restatements and an
octave-shifted passage at bars 119-124 -> 127-132). Output is deterministic.
"""

import argparse
import json
from pathlib import Path

from harmonic_fingerprint.synth import build_musicxml, build_mxl, planted_score

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bars", type=int, default=311)
    ap.add_argument("--seed", type=int, default=18)
    ap.add_argument("--out-dir", type=Path, default=FIXTURES)
    args = ap.parse_args()

    bars, layout = planted_score(args.bars, args.seed)
    doc = build_musicxml({"P1": bars}, title="Synthetic planted waltz", divisions=2, fifths=-3)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    (args.out_dir / "synthetic_311.mxl").write_bytes(build_mxl(doc, "synthetic_311.musicxml"))
    meta = {"bars": args.bars, "seed": args.seed, **layout}
    (args.out_dir / "synthetic_311.json").write_text(json.dumps(meta, indent=2) + "\n")
    print(f"wrote {args.bars} bars to {args.out_dir}")


if __name__ == "__main__":
    main()
