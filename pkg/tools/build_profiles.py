#!/usr/bin/env python3
"""Regenerate the bundled language profiles from the corpora directory."""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from amused.langid import build_profile  # noqa: E402

PROFILES_DIR = Path(__file__).resolve().parents[1] / "src" / "amused" / "profiles"


def main():
    for corpus_path in sorted((PROFILES_DIR / "corpora").glob("*.txt")):
        iso = corpus_path.stem
        profile = build_profile(iso, corpus_path.read_text(encoding="utf-8"))
        out = PROFILES_DIR / f"{iso}.json"
        out.write_text(json.dumps(profile.to_dict(), ensure_ascii=False) + "\n",
                       encoding="utf-8")
        print(f"{iso}: {len(profile.ngram_ranks)} ngrams -> {out.name}")


if __name__ == "__main__":
    main()
