"""Single source of wall-clock time so tests can pin it."""

from datetime import datetime, timezone


def now_utc() -> datetime:
    return datetime.now(timezone.utc)


def now_rfc3339() -> str:
    """Current time as an RFC 3339 UTC string with second precision."""
    return now_utc().replace(microsecond=0).isoformat().replace("+00:00", "Z")
