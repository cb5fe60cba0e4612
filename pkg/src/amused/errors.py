"""Exception hierarchy shared by all pipeline stages."""


class AmusedError(Exception):
    """Base class for every error raised by this package."""


# -- store --------------------------------------------------------------

class StorageCorrupt(AmusedError):
    """The store directory exists but cannot be read as a valid store."""


class PermissionDenied(AmusedError):
    pass


class InvariantViolation(AmusedError):
    """A record failed a type invariant; message names the invariant."""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


# -- ingest -------------------------------------------------------------

class ManifestInvalid(AmusedError):
    pass


class FixtureMissing(AmusedError):
    pass


class FieldMissing(AmusedError):
    def __init__(self, field: str):
        self.field = field
        super().__init__(f"mandatory field not found: {field}")


class UnparseableDate(AmusedError):
    pass


class BadAcronym(AmusedError):
    pass


# -- language id --------------------------------------------------------

class CorpusTooSmall(AmusedError):
    pass


class TextTooShort(AmusedError):
    pass


class NoProfiles(AmusedError):
    pass


# -- link extraction ----------------------------------------------------

class UrlUnparseable(AmusedError):
    pass


class NoPostId(AmusedError):
    """URL matched a platform pattern but carries no extractable post id."""


# -- fetchers -----------------------------------------------------------

class RateLimited(AmusedError):
    """Retryable fetch failure; ``retry_after`` advises the delay in seconds."""

    def __init__(self, retry_after: float = 1.0):
        self.retry_after = retry_after
        super().__init__(f"rate limited, retry after {retry_after}s")


class FetcherMissing(AmusedError):
    pass


# -- labeling -----------------------------------------------------------

class MissingPost(AmusedError):
    pass


class MissingArticle(AmusedError):
    pass


# -- verification -------------------------------------------------------

class NothingToSample(AmusedError):
    pass


class QueueEmpty(AmusedError):
    pass


class TaskNotFound(AmusedError):
    pass


class AlreadyDecided(AmusedError):
    pass


class LeaseHeldByOther(AmusedError):
    pass


class PortInUse(AmusedError):
    pass


# -- cli / reporting ----------------------------------------------------

class ConfigInvalid(AmusedError):
    pass


class WritePermission(AmusedError):
    pass
