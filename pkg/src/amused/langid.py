"""Character n-gram language identification (rank-order profiles).

A profile is the rank-ordered list of a corpus's most frequent character
1-3-grams. Detection computes the same profile for the input text and sums
out-of-place rank distances against each candidate; the nearest profile wins.
Ships with profiles built from bundled corpora; ``build_profile`` grows the
set to new languages.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import CorpusTooSmall, NoProfiles, TextTooShort

PROFILE_SIZE = 400          # K: ngrams kept per profile (and max allowed)
MIN_CORPUS_CHARS = 2000
MIN_TEXT_CHARS = 40
NGRAM_RANGE = (1, 2, 3)


def _normalize(text: str) -> str:
    return re.sub(r"\s+", " ", text).lower().strip()


def _ranked_ngrams(text: str, limit: int = PROFILE_SIZE) -> list[str]:
    counts: dict[str, int] = {}
    for n in NGRAM_RANGE:
        for i in range(len(text) - n + 1):
            g = text[i:i + n]
            counts[g] = counts.get(g, 0) + 1
    ordered = sorted(counts, key=lambda g: (-counts[g], g))
    return ordered[:limit]


@dataclass
class LanguageProfile:
    iso_code: str
    ngram_ranks: list[str]

    def validate(self):
        if len(set(self.ngram_ranks)) != len(self.ngram_ranks):
            raise ValueError(f"profile {self.iso_code}: duplicate ngrams")
        if len(self.ngram_ranks) > PROFILE_SIZE:
            raise ValueError(f"profile {self.iso_code}: more than {PROFILE_SIZE} ngrams")

    def to_dict(self) -> dict:
        return {"iso_code": self.iso_code, "ngram_ranks": self.ngram_ranks}

    @classmethod
    def from_dict(cls, d: dict) -> "LanguageProfile":
        profile = cls(iso_code=d["iso_code"], ngram_ranks=list(d["ngram_ranks"]))
        profile.validate()
        return profile


def build_profile(iso_code: str, corpus: str) -> LanguageProfile:
    """Rank the corpus's top n-grams; ties break lexicographically."""
    normalized = _normalize(corpus)
    if len(normalized) < MIN_CORPUS_CHARS:
        raise CorpusTooSmall(
            f"{iso_code}: {len(normalized)} chars after normalization, "
            f"need {MIN_CORPUS_CHARS}")
    return LanguageProfile(iso_code=iso_code, ngram_ranks=_ranked_ngrams(normalized))


def _distance(text_ranks: list[str], profile: LanguageProfile) -> int:
    """Sum of out-of-place rank distances; absent ngrams cost the maximum."""
    ranks = {g: i for i, g in enumerate(profile.ngram_ranks)}
    total = 0
    for i, g in enumerate(text_ranks):
        j = ranks.get(g)
        total += abs(i - j) if j is not None else PROFILE_SIZE
    return total


def detect_language(text: str, profiles: list[LanguageProfile]) -> dict:
    """Pick the closest profile; returns {"iso_code", "confidence"}.

    Confidence is 1 - best/worst distance over the candidate set; ties break
    by iso_code ascending.
    """
    if not profiles:
        raise NoProfiles("no language profiles supplied")
    normalized = _normalize(text)
    if len(normalized) < MIN_TEXT_CHARS:
        raise TextTooShort(f"{len(normalized)} chars after whitespace collapse, "
                           f"need {MIN_TEXT_CHARS}")
    text_ranks = _ranked_ngrams(normalized)
    scored = sorted((_distance(text_ranks, p), p.iso_code) for p in profiles)
    best, worst = scored[0][0], scored[-1][0]
    confidence = 1.0 - (best / worst) if worst > 0 else 1.0
    return {"iso_code": scored[0][1], "confidence": confidence}


def load_profiles(directory: str | Path | None = None) -> list[LanguageProfile]:
    """Load profile JSON files from a directory (default: the bundled set)."""
    if directory is None:
        pkg_dir = resources.files(__package__) / "profiles"
        paths = sorted(p for p in pkg_dir.iterdir() if p.name.endswith(".json"))
    else:
        paths = sorted(Path(directory).glob("*.json"))
    profiles = []
    for p in paths:
        profiles.append(LanguageProfile.from_dict(json.loads(p.read_text(encoding="utf-8"))))
    if not profiles:
        raise NoProfiles(f"no *.json profiles under {directory}")
    return profiles


def detect_store_languages(store, profiles: list[LanguageProfile] | None = None) -> dict:
    """Fill ``language`` for every stored article lacking it.

    Articles whose body is too short keep language unset and are flagged in
    the report instead of being dropped.
    """
    if profiles is None:
        profiles = load_profiles()
    detected = 0
    skipped: list[str] = []
    confidences: dict[str, float] = {}
    for article in store.articles():
        if article.language is not None:
            continue
        try:
            result = detect_language(article.body_text, profiles)
        except TextTooShort:
            skipped.append(article.news_id)
            continue
        article.language = result["iso_code"]
        store.upsert(article)
        confidences[article.news_id] = round(result["confidence"], 4)
        detected += 1
    return {"detected": detected, "too_short": skipped, "confidence": confidences}
