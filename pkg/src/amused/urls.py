"""Platform classification, post-id extraction, and URL canonicalization.

Every supported platform is described by one :class:`PlatformPattern`: a set
of hostname keywords plus an ordered list of path rules. A rule's ``match``
regex decides classification; its ``uid`` regex pulls the post identifier out
of the path/query. The built-in table can be replaced wholesale from a JSON
file (same schema) via ``load_patterns``.
"""

from __future__ import annotations

import json
import re
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from enum import Enum
from urllib.parse import parse_qsl, urlencode, urljoin, urlparse, urlunparse

from .errors import NoPostId, UrlUnparseable


class Platform(str, Enum):
    TWITTER = "Twitter"
    YOUTUBE = "YouTube"
    REDDIT = "Reddit"
    FACEBOOK = "Facebook"
    INSTAGRAM = "Instagram"
    WIKIPEDIA = "Wikipedia"
    PINTEREST = "Pinterest"
    TIKTOK = "TikTok"
    GAB = "Gab"
    WHATSAPP = "WhatsApp"
    OTHER = "Other"

    def __str__(self) -> str:  # "Twitter", not "Platform.TWITTER"
        return self.value


@dataclass
class PathRule:
    """One way a platform lays out post URLs.

    ``match`` classifies (searched against path+query); ``uid`` must expose a
    ``uid`` group. ``on_host`` narrows the rule to hosts containing the
    substring. ``uid_fallback="path"`` uses the whole path when the uid regex
    misses (Facebook's non-numeric permalinks).
    """

    match: str
    uid: str = ""
    on_host: str = ""
    uid_fallback: str = ""

    def to_dict(self) -> dict:
        d = {"match": self.match}
        if self.uid:
            d["uid"] = self.uid
        if self.on_host:
            d["on_host"] = self.on_host
        if self.uid_fallback:
            d["uid_fallback"] = self.uid_fallback
        return d


@dataclass
class PlatformPattern:
    platform: Platform
    host_keywords: list[str]
    path_rule: list[PathRule] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "platform": self.platform.value,
            "host_keywords": list(self.host_keywords),
            "path_rule": [r.to_dict() for r in self.path_rule],
        }


# The three worked rules (tweet status, watch?v=, /r/ subreddit) extended to
# the other platforms the pipeline records. Order matters: first match wins.
DEFAULT_PATTERNS: list[PlatformPattern] = [
    PlatformPattern(Platform.TWITTER, ["twitter.com"], [
        PathRule(match=r"/status/", uid=r"/status/(?P<uid>[0-9]+)(?:[/?#]|$)"),
    ]),
    PlatformPattern(Platform.YOUTUBE, ["youtube.com", "youtu.be"], [
        PathRule(on_host="youtu.be", match=r"^/[^/?#]+", uid=r"^/(?P<uid>[^/?#]+)"),
        PathRule(on_host="youtube.com", match=r"[?&]v=", uid=r"[?&]v=(?P<uid>[^&#]+)"),
    ]),
    PlatformPattern(Platform.REDDIT, ["reddit.com"], [
        PathRule(match=r"/r/[^/?#]+", uid=r"/r/(?P<uid>[^/?#]+)"),
    ]),
    PlatformPattern(Platform.FACEBOOK, ["facebook.com"], [
        PathRule(match=r"permalink\.php|story\.php",
                 uid=r"[?&](?:story_fbid|fbid|id)=(?P<uid>[0-9]+)",
                 uid_fallback="path"),
        PathRule(match=r"/posts/|/photos/|/videos/",
                 uid=r"/(?P<uid>[0-9]+)(?:[/?#]|$)",
                 uid_fallback="path"),
    ]),
    PlatformPattern(Platform.INSTAGRAM, ["instagram.com"], [
        PathRule(match=r"/(?:p|tv|reel)/", uid=r"/(?:p|tv|reel)/(?P<uid>[^/?#]+)"),
    ]),
    PlatformPattern(Platform.WIKIPEDIA, ["wikipedia.org"], [
        PathRule(match=r"/wiki/", uid=r"/wiki/(?P<uid>[^?#]+)"),
    ]),
    PlatformPattern(Platform.PINTEREST, ["pinterest."], [
        PathRule(match=r"/pin/", uid=r"/pin/(?P<uid>[^/?#]+)"),
    ]),
    PlatformPattern(Platform.TIKTOK, ["tiktok.com"], [
        PathRule(match=r"/video/", uid=r"/video/(?P<uid>[0-9]+)"),
    ]),
    PlatformPattern(Platform.GAB, ["gab.com"], [
        PathRule(match=r"/status(?:es)?/|/posts/",
                 uid=r"/(?:status(?:es)?|posts)/(?P<uid>[^/?#]+)"),
    ]),
    PlatformPattern(Platform.WHATSAPP, ["whatsapp.com"], [
        PathRule(on_host="chat.whatsapp.com", match=r"^/[^/?#]+",
                 uid=r"^/(?:invite/)?(?P<uid>[^/?#]+)"),
        PathRule(match=r"/(?:chat|joinchat|invite)/",
                 uid=r"/(?:chat|joinchat|invite)/(?P<uid>[^/?#]+)"),
    ]),
]

# Query parameters that only track the click, never identify the post.
TRACKING_PARAMS = {"s", "t", "ref_src", "igshid", "fbclid"}


def load_patterns(path: str) -> list[PlatformPattern]:
    """Read a pattern table from a JSON file (list of PlatformPattern dicts)."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    patterns = []
    for entry in raw:
        rules = [PathRule(**r) for r in entry.get("path_rule", [])]
        patterns.append(PlatformPattern(
            platform=Platform(entry["platform"]),
            host_keywords=list(entry["host_keywords"]),
            path_rule=rules,
        ))
    return patterns


def _parse(url: str):
    try:
        parts = urlparse(url)
    except ValueError as exc:
        raise UrlUnparseable(f"{url!r}: {exc}") from exc
    if parts.scheme not in ("http", "https") or not parts.netloc:
        raise UrlUnparseable(f"not an absolute http(s) URL: {url!r}")
    return parts


def _target(parts) -> str:
    """Path plus query, the string the path rules are searched against."""
    return parts.path + ("?" + parts.query if parts.query else "")


def _match_rule(pattern: PlatformPattern, host: str, target: str) -> PathRule | None:
    for rule in pattern.path_rule:
        if rule.on_host and rule.on_host not in host:
            continue
        if re.search(rule.match, target):
            return rule
    return None


def classify_platform(url: str, patterns: list[PlatformPattern] | None = None) -> Platform:
    """Classify a URL's platform by hostname keyword plus path shape."""
    parts = _parse(url)
    host = parts.hostname or ""
    target = _target(parts)
    for pattern in patterns or DEFAULT_PATTERNS:
        if any(kw in host for kw in pattern.host_keywords):
            if _match_rule(pattern, host, target) is not None:
                return pattern.platform
    return Platform.OTHER


def extract_post_uid(platform: Platform, url: str,
                     patterns: list[PlatformPattern] | None = None) -> str:
    """Extract the platform-scoped post identifier from a classified URL.

    Trailing slashes and the fragment are stripped before matching; the uid
    itself is kept verbatim (ids are case-sensitive).
    """
    if platform == Platform.OTHER:
        raise NoPostId("platform Other carries no post id")
    parts = _parse(url)
    host = parts.hostname or ""
    path = parts.path.rstrip("/") or "/"
    target = path + ("?" + parts.query if parts.query else "")
    for pattern in patterns or DEFAULT_PATTERNS:
        if pattern.platform != platform:
            continue
        rule = _match_rule(pattern, host, target)
        if rule is None:
            raise NoPostId(f"no {platform} rule matches {url!r}")
        if rule.uid:
            m = re.search(rule.uid, target)
            if m and m.group("uid"):
                return m.group("uid")
        if rule.uid_fallback == "path":
            return path
        raise NoPostId(f"{platform} URL without an id: {url!r}")
    raise NoPostId(f"no pattern registered for {platform}")


class _StopRedirects(urllib.request.HTTPRedirectHandler):
    def redirect_request(self, *args, **kwargs):
        return None


def resolve_redirects(url: str, max_hops: int = 3, opener=None, timeout: float = 10.0) -> str:
    """Follow shortener redirects (HEAD only, up to ``max_hops``); live mode only.

    Returns the final URL, or the input unchanged when nothing redirects.
    """
    if opener is None:
        opener = urllib.request.build_opener(_StopRedirects())
    current = url
    for _ in range(max_hops):
        request = urllib.request.Request(current, method="HEAD",
                                         headers={"User-Agent": "amused/0.1"})
        try:
            response = opener.open(request, timeout=timeout)
        except urllib.error.HTTPError as err:
            response = err
        except OSError:
            break
        location = response.headers.get("Location")
        if response.status in (301, 302, 303, 307, 308) and location:
            current = urljoin(current, location)
            continue
        break
    return current


def canonicalize(url: str, patterns: list[PlatformPattern] | None = None) -> str:
    """Normalize a URL to its canonical comparison form.

    Lowercases scheme and host, forces https on known platform hosts, drops
    the fragment and tracking query parameters (utm_*, s, t, ref_src, igshid,
    fbclid), strips the trailing slash except at the root, and preserves path
    case.
    """
    parts = _parse(url)
    scheme = parts.scheme.lower()
    host = (parts.hostname or "").lower()
    if parts.port is not None and parts.port not in (80, 443):
        host = f"{host}:{parts.port}"
    for pattern in patterns or DEFAULT_PATTERNS:
        if any(kw in host for kw in pattern.host_keywords):
            scheme = "https"
            break
    path = parts.path
    if path.endswith("/") and path != "/":
        path = path.rstrip("/")
    if not path:
        path = "/"
    kept = [(k, v) for k, v in parse_qsl(parts.query, keep_blank_values=True)
            if not k.startswith("utm_") and k not in TRACKING_PARAMS]
    query = urlencode(kept)
    return urlunparse((scheme, host, path, "", query, ""))
