class LangsegError(Exception):
    """Base class for all library errors."""


class SentinelInInput(LangsegError, ValueError):
    pass


class EmptyCorpus(LangsegError, ValueError):
    pass


class EmptyModel(LangsegError, ValueError):
    pass


class EmptyModelSet(LangsegError, ValueError):
    pass


class NoCommonUnigrams(LangsegError, ValueError):
    pass


class WidthMismatch(LangsegError, ValueError):
    pass


class TooFewPoints(LangsegError, ValueError):
    pass


class DomainMismatch(LangsegError, ValueError):
    pass


class FormatError(LangsegError, ValueError):
    """A model, profile, clustering or config file could not be parsed."""
